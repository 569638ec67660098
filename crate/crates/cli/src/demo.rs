use qss_core::catalog::qutrit_6_2_3;
use qss_core::{
    pauli_mul, plan_reconstruction, random_secret, synthesize_reconstruction, verify_reconstruction,
    EncodingConvention, PhasedPauli, ShareIndexSet, SimLimits, StabilizerCodeSpec,
};

use crate::io::CliError;
use crate::synthesize::summary;

const DEMO_SEED: u64 = 2024;

fn check(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn run() -> Result<(), CliError> {
    print!("{}", report()?);
    Ok(())
}

pub fn report() -> Result<String, CliError> {
    let code = qutrit_6_2_3();
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line("[[6, 2, 3]]_3 code, shares 1..6, reconstruction from J = {3,4,5,6}".to_string());
    let h = code.stabilizer().basis();
    for (i, row) in h.iter().enumerate() {
        line(format!("h{} = {row}", i + 1));
    }
    line(format!(
        "dim C = {}, dim C_m = {}, dim C_perp = {}",
        code.stabilizer().dim(),
        code.self_dual().dim(),
        code.dual().dim()
    ));
    for &(i, c) in code.rescaled_pairs() {
        line(format!("listed z{} rescaled by {c} so that <x_i, z_i> = 1", i + 1));
    }
    for (i, pair) in code.logical_pairs().iter().enumerate() {
        line(format!("x{0} = {1}  z{0} = {2}", i + 1, pair.x, pair.z));
    }
    let erased = ShareIndexSet::new(6, [1, 2]).map_err(CliError::from)?;
    line(format!(
        "C and C_perp restricted to shares {{1,2}}: dims {} and {}, erasure correctable: {}",
        code.stabilizer().coordinate_section(&erased).dim(),
        code.dual().coordinate_section(&erased).dim(),
        code.erasure_correctable(&erased)
    ));

    let prod = pauli_mul(
        &PhasedPauli::from_vector(h[2].clone()),
        &PhasedPauli::from_vector(h[3].clone()),
    )?;
    line(format!("M(h3) M(h4) = {prod}"));

    let conv = EncodingConvention::standard(&code)?;
    let j = erased.complement();
    let plan = plan_reconstruction(&code, &conv, &j)?;
    for (i, l) in plan.logicals().iter().enumerate() {
        let n = i + 1;
        line(format!("w{n} = {}  u{n} = {}", l.w, l.u));
        line(format!(
            "  w in C_perp on J: {}, x - w in C: {}",
            check(code.dual().contains(&l.w) && l.w.supported_on(&j)),
            check(code.stabilizer().contains(&l.x.sub(&l.w)?) && l.u == l.x.sub(&l.w)?)
        ));
        line(format!("y{n} = {}  v{n} = {}", l.y, l.v));
        line(format!(
            "  y in C_m on J: {}, z - y in C: {}",
            check(code.self_dual().contains(&l.y) && l.y.supported_on(&j)),
            check(code.stabilizer().contains(&l.z.sub(&l.y)?) && l.v == l.z.sub(&l.y)?)
        ));
        line(format!(
            "i={n}: beta = {}, gamma = {}, eta(M(u)) = {}, eta(M(v)) = {}",
            l.beta, l.gamma, l.eta_u, l.eta_v
        ));
    }
    for (name, v) in [
        ("h3", h[2].clone()),
        ("h4", h[3].clone()),
        ("-h3", h[2].neg()),
        ("-h4", h[3].neg()),
    ] {
        line(format!("eta(M({name})) = {}", conv.eta(&v)?));
    }

    let circuit = synthesize_reconstruction(&plan)?;
    let untouched = circuit.touched_qudits().iter().all(|&q| q >= 2);
    line(format!(
        "circuit on {} qudits, shares 1-2 untouched: {}",
        circuit.num_qudits(),
        check(untouched)
    ));
    out.push_str(&summary(&circuit, code.k(), j.len()));
    let (fidelity, purity) = verify(&code, &conv, &j)?;
    out.push_str(&format!(
        "secret seed {DEMO_SEED}: fidelity {fidelity:.9}, ancilla purity {purity:.9}\n"
    ));
    Ok(out)
}

fn verify(code: &StabilizerCodeSpec, conv: &EncodingConvention, j: &ShareIndexSet) -> Result<(f64, f64), CliError> {
    let limits = SimLimits::from_env();
    let secret = random_secret(code.field(), code.k(), DEMO_SEED, &limits)?;
    let r = verify_reconstruction(code, conv, j, &secret, &limits)?;
    Ok((r.fidelity, r.purity))
}
