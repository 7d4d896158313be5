//! The full certificate: degenerate → monodromy → presentations → kernel →
//! analysis, with one named check per verifiable claim.

use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::json;

use galcov_analysis::{
    abelianize, finite_quotient_presentation, model_hom_check, smith_normal_form, todd_coxeter, ModelGroup, SnfResult,
    TcConfig, TcStatus,
};
use galcov_core::braid::{braids_equal, full_twist};
use galcov_core::degeneration::IncidenceComplex;
use galcov_core::monodromy::{census, factorization_product, full_factorization};
use galcov_core::perm_monodromy::{psi_images, verify_homomorphism, Symmetric};
use galcov_core::permutation::factorial;
use galcov_core::presentation::{add_projective_relation, pi_tilde, GroupPresentation};
use galcov_core::schreier::{galois_presentation, kernel_presentation, reduced_kernel_presentation};

use crate::cache::Cache;
use crate::report::{Check, Report};
use crate::{CliError, RunConfig};

/// Largest `n` for which the factorization product is compared with `Δ²`.
pub const FULL_TWIST_MAX_N: usize = 4;
/// Largest index `(2n)!` for which the raw kernel presentation is built.
pub const RAW_KERNEL_MAX_COSETS: u64 = 24;

/// `Π̃₁` with the projective relation, through the cache.
pub fn ptilde_projective(cfg: &RunConfig, cache: &Cache) -> Result<GroupPresentation, CliError> {
    cache.presentation(&format!("ptilde-n{}-d{}-proj", cfg.n, cfg.depth), || {
        let c = IncidenceComplex::build(cfg.n)?;
        Ok(add_projective_relation(&pi_tilde(&c, cfg.depth)))
    })
}

pub fn galois(cfg: &RunConfig, cache: &Cache) -> Result<GroupPresentation, CliError> {
    cache.presentation(&format!("galois-n{}-w{}", cfg.n, cfg.window), || Ok(galois_presentation(cfg.n, cfg.window)))
}

fn snf_json(r: &SnfResult) -> serde_json::Value {
    json!({
        "free_rank": r.free_rank,
        "torsion": r.torsion().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

pub fn run_pipeline(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let n = cfg.n;
    let cache = Cache::new(&cfg.cache_dir);
    let mut report = Report::new(cfg.clone());
    let mut clock = Instant::now();
    let mut lap = |report: &mut Report, name: &str| {
        report.timings.insert(name.into(), clock.elapsed().as_secs_f64());
        clock = Instant::now();
    };

    let complex = IncidenceComplex::build(n)?;
    let vertices: BTreeSet<usize> = complex.lines.iter().flat_map(|l| [l.endpoints.0, l.endpoints.1]).collect();
    report.push(Check::equal(
        "complex-census",
        [2 * n, 2 * n, 2 * n, 2 * n, 2 * n * n - 3 * n],
        [
            complex.lines.len(),
            vertices.len(),
            complex.planes.len(),
            complex.three_points.len(),
            complex.incidental_pairs.len(),
        ],
    ));
    lap(&mut report, "degenerate");

    log::info!("regenerating monodromy for n={n}");
    let factors = full_factorization(&complex);
    let cen = census(&factors);
    report.push(Check::equal(
        "monodromy-census",
        json!({"branch": 2 * n, "cusp": 6 * n, "node": 8 * n * n - 12 * n, "exponent_sum": 16 * n * n - 4 * n}),
        json!({"branch": cen.branch, "cusp": cen.cusp, "node": cen.node, "exponent_sum": cen.exponent_sum}),
    ));
    let product = factorization_product(&factors, 4 * n);
    report.push(Check::holds(
        "factor-permutations-compose-to-identity",
        product.permutation().is_identity(),
        json!(product.permutation().to_string()),
    ));
    if n <= FULL_TWIST_MAX_N {
        let ok = braids_equal(&product, &full_twist(4 * n));
        report.push(Check::holds("factorization-is-full-twist", ok, json!(ok)));
    } else {
        report.data.insert("factorization-is-full-twist".into(), json!("skipped"));
    }
    lap(&mut report, "monodromy");

    let ptilde = ptilde_projective(cfg, &cache)?;
    let psi = verify_homomorphism(&ptilde, &psi_images(n), &Symmetric(2 * n))?;
    report.push(Check::holds(
        "psi-well-defined",
        psi.passed(),
        json!({"checked": psi.checked, "failures": psi.failures}),
    ));
    report.data.insert("ptilde_relators".into(), json!(ptilde.relators.len()));
    lap(&mut report, "presentation");

    let model = ModelGroup::new(n, cfg.modulus)?;
    let mc = model_hom_check(&ptilde, &model)?;
    report.push(Check::holds("model-homomorphism", mc.passed(), serde_json::to_value(&mc).unwrap_or_default()));
    lap(&mut report, "model-check");

    log::info!("enumerating cosets, model order {}", model.order());
    let quotient = finite_quotient_presentation(&ptilde, cfg.modulus, n);
    let table = todd_coxeter(&quotient, &[], TcConfig { max_cosets: cfg.max_cosets, ..TcConfig::default() })?;
    report.data.insert("expected_order".into(), json!(model.order().to_string()));
    report.data.insert("enumerated_order".into(), json!(table.index));
    report.data.insert("cosets_defined".into(), json!(table.total_defined));
    lap(&mut report, "todd-coxeter");
    if table.status == TcStatus::BudgetExceeded {
        report.push(Check::equal(
            "quotient-order",
            model.order().to_string(),
            format!("incomplete ({} live)", table.index),
        ));
        report.aborted = Some(format!("coset enumeration exceeded {} cosets", cfg.max_cosets));
        return Ok(report);
    }
    report.push(Check::equal("quotient-order", model.order().to_string(), table.index.to_string()));

    let gal = galois(cfg, &cache)?;
    let snf = smith_normal_form(&abelianize(&gal));
    report.push(Check::equal(
        "galois-abelianization",
        json!({"free_rank": 4 * n - 2, "torsion": Vec::<String>::new()}),
        snf_json(&snf),
    ));
    lap(&mut report, "abelianization");

    if factorial(2 * n) <= RAW_KERNEL_MAX_COSETS {
        let raw = kernel_presentation(&ptilde, n, RAW_KERNEL_MAX_COSETS)?;
        let reduced = reduced_kernel_presentation(&raw)?;
        let a = smith_normal_form(&abelianize(&raw));
        let b = smith_normal_form(&abelianize(&reduced));
        report.push(Check::equal("raw-kernel-abelianization", snf_json(&b), snf_json(&a)));
        report.data.insert("raw_kernel_relators".into(), json!(raw.relators.len()));
        lap(&mut report, "raw-kernel");
    }
    Ok(report)
}
