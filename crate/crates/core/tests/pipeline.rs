use niho_bent::boolfun::*;
use niho_bent::bridge::*;
use niho_bent::gf2::{FieldElement, FieldTower};
use niho_bent::niho::*;
use niho_bent::opoly::*;

fn tower(m: u32) -> FieldTower {
    FieldTower::new(m).unwrap()
}

fn unit_primitive(t: &FieldTower) -> FieldElement {
    t.find_primitive_unit_trace().unwrap()
}

fn bent(t: &FieldTower, p: &TracePolynomial) -> bool {
    is_bent(&evaluate(t, p).unwrap(), Pairing::Trace(t)).unwrap().bent
}

#[test]
fn catalog_entries_give_bent_functions() {
    for m in 3..=7 {
        let t = tower(m);
        let sub = Subfield::new(&t);
        let a = t.find_unit_relative_trace(true).unwrap();
        for e in catalog(m) {
            let p = opoly_to_univariate(&t, &e.map(&sub), a).unwrap();
            assert!(bent(&t, &p), "{} at m = {m}", e.name);
        }
    }
}

#[test]
fn non_opolynomials_are_not_bent() {
    for m in 3..=7 {
        let t = tower(m);
        let sub = Subfield::new(&t);
        let a = t.find_unit_relative_trace(true).unwrap();
        let mut rejected = 0;
        for e in (2..(1u64 << m) - 1).step_by(2) {
            let f = OPolyMap::monomial(&sub, e);
            if is_opolynomial(&sub, &f).is_opoly {
                continue;
            }
            let p = opoly_to_univariate(&t, &f, a).unwrap();
            assert!(!bent(&t, &p), "z^{e} at m = {m}");
            rejected += 1;
        }
        assert!(rejected >= 3 || m == 3, "m = {m}: only {rejected} non-o-monomials");
    }
}

#[test]
fn degree_bound_per_monomial() {
    for m in 3..=6 {
        let t = tower(m);
        let a = t.find_unit_relative_trace(true).unwrap();
        for d in (2..(1u64 << m) - 1).step_by(2) {
            let l = d.trailing_zeros();
            let res = lemma1_expand(&t, d, FieldElement::ONE, a).unwrap();
            let deg = algebraic_degree(&evaluate(&t, &res.to_polynomial(&t, false)).unwrap());
            assert!(deg <= m - l + 1, "m = {m}, d = {d}: degree {deg}");
        }
    }
}

#[test]
fn frobenius_pipeline_matches_lk() {
    for m in 3..=6 {
        let t = tower(m);
        let sub = Subfield::new(&t);
        let Some(a) = t.find_primitive_unit_trace() else { continue };
        for r in (2..m).filter(|&r| lk_r_is_valid(m, r)) {
            let f = OPolyMap::monomial(&sub, 1 << (m - r));
            let p = evaluate(&t, &opoly_to_univariate(&t, &f, a).unwrap()).unwrap();
            let lk = evaluate(&t, &build_lk(&t, a, r).unwrap()).unwrap();
            assert!(is_affine_difference(&p, &lk).unwrap(), "m = {m}, r = {r}");
        }
    }
}

#[test]
fn z6_pipeline_matches_segre_family() {
    for m in [5, 7] {
        let t = tower(m);
        let sub = Subfield::new(&t);
        let z6 = OPolyMap::monomial(&sub, 6);
        let a = t
            .elements()
            .find(|&a| t.rel_trace_nm(a) == FieldElement::ONE && t.is_primitive(a + FieldElement::ONE))
            .unwrap();
        let p = evaluate(&t, &opoly_to_univariate(&t, &z6, a + FieldElement::ONE).unwrap()).unwrap();
        let q = evaluate(&t, &build_qu_family(&t, QuParams::segre(m), a).unwrap()).unwrap();
        assert!(is_affine_difference(&p, &q).unwrap(), "m = {m}");
    }
}

#[test]
fn bivariate_form_agrees_with_pipeline() {
    let t = tower(5);
    let sub = Subfield::new(&t);
    let a = unit_primitive(&t);
    for e in catalog(5) {
        let g = e.map(&sub);
        let biv = bivariate_truth_table(&sub, &BivariateSpec { g: &g, mu: FieldElement::ZERO, basis: a }).unwrap();
        assert!(is_bent(&biv, Pairing::Trace(&t)).unwrap().bent, "{}", e.name);
        let uni = evaluate(&t, &opoly_to_univariate(&t, &g, a).unwrap()).unwrap();
        assert_eq!(algebraic_degree(&biv), algebraic_degree(&uni), "{}", e.name);
    }
}

#[test]
fn monomials_keep_a_quadratic_coset_term() {
    for m in [3, 5, 7] {
        let t = tower(m);
        let sub = Subfield::new(&t);
        let a = t.find_unit_relative_trace(true).unwrap();
        for e in catalog(m).iter().filter(|e| e.exponents.len() == 1) {
            let p = opoly_to_univariate(&t, &e.map(&sub), a).unwrap();
            assert!(has_quadratic_coset_term(&t, &p), "{} at m = {m}", e.name);
        }
    }
}

#[test]
fn odd_exponents_rejected_unless_unchecked() {
    let t = tower(4);
    let sub = Subfield::new(&t);
    let a = t.find_unit_relative_trace(true).unwrap();
    let f = OPolyMap::monomial(&sub, 3);
    assert!(opoly_to_univariate(&t, &f, a).is_err());
    let p = opoly_to_univariate_unchecked(&t, &f, a).unwrap();
    assert!(!bent(&t, &p));
}

#[test]
fn g_lk2_bent_only_for_translated_frobenius() {
    for m in 3..=7 {
        let t = tower(m);
        let a = t.find_unit_relative_trace(false).unwrap();
        for j in 0..m - 1 {
            let p = build_g_lk2(&t, j, a).unwrap();
            assert_eq!(bent(&t, &p), j == m - 2 && m % 2 == 1, "m = {m}, J = {j}");
        }
    }
}

#[test]
fn table_degrees_at_m9() {
    let t = tower(9);
    let sub = Subfield::new(&t);
    let a = t.find_unit_relative_trace(true).unwrap();
    for row in table1_report(9).iter().filter(|r| r.family != "trinomial") {
        let got = row_degrees(&sub, row, a).unwrap();
        for (c, d) in row.cells.iter().zip(got) {
            if c.applies == Some(true) || c.condition.is_none() {
                assert_eq!(d, c.expected_degree, "{} G{}", row.family, c.column);
            }
        }
    }
}
