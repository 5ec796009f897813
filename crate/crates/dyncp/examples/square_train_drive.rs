//! Square pulse trains at the transition frequency: excitation versus
//! duty cycle, against the fundamental-line weight 2 sin(pi d)/(pi * 1).

use dyncp::atom::make_transition;
use dyncp::excitation::{amplitude_time_domain, probability_resonant};
use dyncp::mirror::{MirrorMotion, Shape};
use std::f64::consts::{PI, TAU};

fn main() -> dyncp::Result<()> {
    let tr = make_transition(75, 77)?;
    let z0 = 2e-3;
    let a = 2e-4;
    let t = 256.0 * TAU / tr.omega0; // 256 repetition periods

    let harmonic = MirrorMotion::new(z0, a, Shape::harmonic(tr.omega0, 0.0)?)?;
    let p_harm = probability_resonant(&tr, &harmonic, t)?.probability;
    println!("resonant harmonic reference over 256 periods: P = {p_harm:.6e}\n");

    println!(
        "{:>6}  {:>12}  {:>12}  {:>12}  {:>9}",
        "duty", "P(square)", "P/P_harm", "line weight^2", "rel diff"
    );
    for &duty in &[0.1, 0.25, 0.5, 0.75, 0.9] {
        let train = MirrorMotion::new(z0, a, Shape::square_train(tr.omega0, duty)?)?;
        let p = amplitude_time_domain(&tr, &train, t)?.probability;
        let ratio = p / p_harm;
        // only the k = 1 line is resonant; its amplitude is 2 sin(pi d)/pi
        let weight = (2.0 * (PI * duty).sin() / PI).powi(2);
        println!(
            "{duty:>6.2}  {p:>12.6e}  {ratio:>12.6e}  {weight:>12.6e}  {:>9.2e}",
            (ratio - weight).abs() / weight
        );
    }
    println!(
        "\nP scales with the squared fundamental Fourier weight of the train;\n\
         duty 0.5 gives (2/pi)^2 = {:.6} of the pure harmonic.",
        (2.0 / PI).powi(2)
    );
    Ok(())
}
