//! Little-endian bit-vector hex: byte `k` holds bits `8k..8k+7` (bit `8k`
//! in the least significant position) and bytes are printed in order.

use crate::error::{Error, Result};

pub fn bytes_to_hex(bytes: &[u8]) -> String {
    hex::encode(bytes)
}

pub fn hex_to_bytes(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    let s = s.strip_prefix("0x").unwrap_or(s);
    if s.len() % 2 == 1 {
        return hex::decode(format!("0{s}")).map_err(|e| Error::Parse(format!("bad hex {s:?}: {e}")));
    }
    hex::decode(s).map_err(|e| Error::Parse(format!("bad hex {s:?}: {e}")))
}

pub fn u64_to_hex(v: u64, bytes: usize) -> String {
    bytes_to_hex(&v.to_le_bytes()[..bytes.clamp(1, 8)])
}

pub fn hex_to_u64(s: &str) -> Result<u64> {
    let bytes = hex_to_bytes(s)?;
    if bytes.len() > 8 && bytes[8..].iter().any(|&b| b != 0) {
        return Err(Error::Parse(format!("hex value {s:?} wider than 64 bits")));
    }
    Ok(bytes.iter().take(8).enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << (8 * i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn little_endian_bytes() {
        assert_eq!(u64_to_hex(0x1234, 2), "3412");
        assert_eq!(u64_to_hex(1, 1), "01");
        assert_eq!(hex_to_u64("3412").unwrap(), 0x1234);
        assert_eq!(hex_to_u64("01").unwrap(), 1);
        assert_eq!(hex_to_u64("1").unwrap(), 1);
        assert!(hex_to_u64("zz").is_err());
    }
}
