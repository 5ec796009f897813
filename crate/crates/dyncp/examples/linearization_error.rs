//! How far the linear-in-amplitude coupling can be trusted: exact versus
//! linearized drive at increasing a/z0, next to the a-priori bound.

use dyncp::atom::make_transition;
use dyncp::coupling::perturbation_coefficient;
use dyncp::excitation::{amplitude_time_domain_with, CouplingModel};
use dyncp::mirror::{MirrorMotion, Shape};
use std::f64::consts::TAU;

fn main() -> dyncp::Result<()> {
    let tr = make_transition(50, 52)?;
    let z0 = 2e-3;
    let t = 24.0 * TAU / tr.omega0;

    println!(
        "{:>8}  {:>12}  {:>12}  {:>12}  {:>12}",
        "a/z0", "P(linear)", "P(exact)", "rel dev", "3a/z0"
    );
    for &eps in &[0.01, 0.05, 0.1, 0.2, 0.3, 0.45] {
        let motion = MirrorMotion::new(z0, eps * z0, Shape::harmonic(tr.omega0, 0.0)?)?;
        let lin =
            amplitude_time_domain_with(&tr, &motion, t, CouplingModel::Linearized)?;
        let exact = amplitude_time_domain_with(&tr, &motion, t, CouplingModel::Exact)?;
        let dev = (lin.amplitude - exact.amplitude).norm() / exact.amplitude.norm();
        let scale = perturbation_coefficient(z0, eps * z0)?.linearization_quality;
        println!(
            "{eps:>8.2}  {:>12.6e}  {:>12.6e}  {dev:>12.3e}  {scale:>12.3e}",
            lin.probability, exact.probability
        );
    }
    println!(
        "\nthe a-priori scale 3 a/z0 bounds the dropped terms pointwise, but the\n\
         quadratic ones oscillate at 0 and 2 omega0 and miss the resonance, so\n\
         the observed deviation grows only as (a/z0)^2."
    );
    Ok(())
}
