use std::path::Path;

use qss_core::code::ENUMERATION_LIMIT;
use qss_core::{ShareIndexSet, StabilizerCodeSpec};

use crate::io::{load_spec, CliError};

pub fn run(spec: &Path, max_size: Option<usize>) -> Result<(), CliError> {
    let code = load_spec(spec)?;
    print!("{}", report(&code, max_size)?);
    Ok(())
}

/// Text report for `analyze`. Deterministic for a given code.
pub fn report(code: &StabilizerCodeSpec, max_size: Option<usize>) -> Result<String, CliError> {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("code [[{}, {}]]_{}", code.n(), code.k(), code.p()));
    line(format!("dim C = {}", code.stabilizer().dim()));
    line(format!("dim C_perp = {}", code.dual().dim()));
    line(format!("dim C_m = {}", code.self_dual().dim()));
    if code.logical_pairs().is_empty() {
        line("logical pairs: none".into());
    } else {
        line("logical pairs:".into());
        for (i, pair) in code.logical_pairs().iter().enumerate() {
            line(format!("  x{} = {}  z{} = {}", i + 1, pair.x, i + 1, pair.z));
        }
    }
    for &(i, c) in code.rescaled_pairs() {
        line(format!("  note: z{} rescaled by {c}", i + 1));
    }
    let n = code.n();
    if n > ENUMERATION_LIMIT {
        line(format!("qualified sets: skipped (n > {ENUMERATION_LIMIT})"));
        return Ok(out);
    }
    let max = max_size.unwrap_or(n).min(n);
    let minimal = code.qualified_sets(max)?;
    line(format!("minimal qualified sets (size <= {max}): {}", minimal.len()));
    for j in &minimal {
        line(format!("  {j}"));
    }
    let mut counts = vec![(0usize, 0usize); n + 1];
    for mask in 0u64..1 << n {
        let j = ShareIndexSet::from_mask(n, mask);
        let c = &mut counts[j.len()];
        c.1 += 1;
        if code.is_qualified(&j) {
            c.0 += 1;
        }
    }
    for (s, (q, total)) in counts.iter().enumerate().skip(1).take(max) {
        line(format!("size {s}: {q} of {total} qualified"));
    }
    Ok(out)
}
