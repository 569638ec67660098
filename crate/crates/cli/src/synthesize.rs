use std::path::Path;

use qss_core::{emit_circuit, plan_reconstruction, synthesize_reconstruction, Circuit, EncodingConvention, Error};

use crate::io::{load_spec, share_set, write_atomically, CliError};

pub fn run(spec: &Path, set: &[usize], output: Option<&Path>) -> Result<(), CliError> {
    let code = load_spec(spec)?;
    let available = share_set(code.n(), set)?;
    let conv = EncodingConvention::standard(&code)?;
    let plan = match plan_reconstruction(&code, &conv, &available) {
        Err(Error::NotCorrectable { .. }) => return Err(CliError::NotCorrectable(available)),
        other => other?,
    };
    let circuit = synthesize_reconstruction(&plan)?;
    let text = emit_circuit(&circuit);
    match output {
        Some(path) => {
            write_atomically(path, &text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    // keep stdout parseable when the circuit itself goes there
    let summary = summary(&circuit, code.k(), available.len());
    if output.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(())
}

pub fn summary(c: &Circuit, k: usize, shares: usize) -> String {
    format!(
        "two-qudit gates: {} (bound 2k|J| = {})\nphase gates: {}\nfourier gates: {}\nsingle-qudit gates: {}\n",
        c.two_qudit_count(),
        2 * k * shares,
        c.phase_pow_count(),
        c.fourier_count(),
        c.single_qudit_count()
    )
}
