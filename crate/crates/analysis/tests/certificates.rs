use galcov_analysis::*;
use galcov_core::degeneration::IncidenceComplex;
use galcov_core::presentation::{
    add_projective_relation, braid_presentation, pi_tilde, quotient_squares, GroupPresentation,
};
use galcov_core::schreier::{galois_presentation, kernel_presentation, reduced_kernel_presentation};

fn ptilde_proj(n: usize, depth: usize) -> GroupPresentation {
    add_projective_relation(&pi_tilde(&IncidenceComplex::build(n).unwrap(), depth))
}

fn snf(p: &GroupPresentation) -> SnfResult {
    smith_normal_form(&abelianize(p))
}

#[test]
fn galois_abelianization_is_free_of_rank_4n_minus_2() {
    for n in 2..=5 {
        let r = snf(&galois_presentation(n, 2));
        assert!(r.is_free(), "n={n}: {:?}", r.torsion());
        assert_eq!(r.free_rank, 4 * n - 2, "n={n}");
    }
}

#[test]
fn raw_and_reduced_kernel_share_invariants() {
    let p = ptilde_proj(2, 0);
    let raw = kernel_presentation(&p, 2, 1000).unwrap();
    let reduced = reduced_kernel_presentation(&raw).unwrap();
    let (a, b) = (snf(&raw), snf(&reduced));
    assert_eq!(a.torsion(), b.torsion());
    assert_eq!(a.free_rank, b.free_rank);
    assert_eq!(a.free_rank, 6);
    assert!(a.is_free());
}

#[test]
fn schema_and_braid_presentations_agree() {
    for n in 2..=4 {
        let c = IncidenceComplex::build(n).unwrap();
        let schema = snf(&pi_tilde(&c, 0));
        let braid = snf(&quotient_squares(&braid_presentation(&c)));
        assert_eq!(schema, braid, "n={n}");
    }
    // both finite quotients mod 2 have the same order at n = 2
    let c = IncidenceComplex::build(2).unwrap();
    let schema = finite_quotient_presentation(&add_projective_relation(&pi_tilde(&c, 0)), 2, 2);
    let braid =
        finite_quotient_presentation(&add_projective_relation(&quotient_squares(&braid_presentation(&c))), 2, 2);
    let a = todd_coxeter(&schema, &[], TcConfig::default()).unwrap();
    let b = todd_coxeter(&braid, &[], TcConfig::default()).unwrap();
    assert!(a.is_complete() && b.is_complete());
    assert_eq!(a.index, b.index);
}

#[test]
fn finite_quotient_orders_match_model() {
    for (n, m) in [(2, 2), (2, 3)] {
        let q = finite_quotient_presentation(&ptilde_proj(n, 0), m, n);
        let model = ModelGroup::new(n, m).unwrap();
        for strategy in [Strategy::Hlt, Strategy::Felsch] {
            let t = todd_coxeter(&q, &[], TcConfig { strategy, ..TcConfig::default() }).unwrap();
            assert!(t.is_complete());
            assert_eq!(t.index as u128, model.order(), "n={n} m={m} {strategy:?}");
        }
        assert!(model_hom_check(&q, &model).unwrap().passed());
    }
}

#[test]
fn quotient_is_stable_under_depth() {
    let q0 = finite_quotient_presentation(&ptilde_proj(2, 0), 2, 2);
    let q1 = finite_quotient_presentation(&ptilde_proj(2, 1), 2, 2);
    assert!(q1.relators.len() > q0.relators.len());
    let a = todd_coxeter(&q0, &[], TcConfig::default()).unwrap();
    let b = todd_coxeter(&q1, &[], TcConfig::default()).unwrap();
    assert_eq!(a.index, b.index);
}

#[test]
fn coset_table_respects_relators() {
    let q = finite_quotient_presentation(&ptilde_proj(2, 0), 2, 2);
    let t = todd_coxeter(&q, &[], TcConfig { strategy: Strategy::Felsch, ..TcConfig::default() }).unwrap();
    for r in &q.relators {
        for c in (0..t.index).step_by(97) {
            assert_eq!(t.act(c, r), Some(c));
        }
    }
    // the square class of the generators stays nontrivial
    assert_ne!(t.act(0, &galcov_core::GeneratorId::surface(1, false).word()), Some(0));
}
