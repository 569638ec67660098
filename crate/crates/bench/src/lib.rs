//! Shared fixtures for the benchmarks.

use qss_core::catalog::qutrit_6_2_3;
use qss_core::{
    plan_reconstruction, random_self_orthogonal_code, synthesize_reconstruction, Circuit, EncodingConvention,
    ShareIndexSet, StabilizerCodeSpec,
};

/// The bundled qutrit code with its convention and the circuit for shares
/// {3, 4, 5, 6}.
pub fn example() -> (StabilizerCodeSpec, EncodingConvention, ShareIndexSet, Circuit) {
    let code = qutrit_6_2_3();
    let conv = EncodingConvention::standard(&code).expect("example convention");
    let j = ShareIndexSet::new(6, [3, 4, 5, 6]).expect("valid set");
    let plan = plan_reconstruction(&code, &conv, &j).expect("qualified");
    let circuit = synthesize_reconstruction(&plan).expect("synthesis");
    (code, conv, j, circuit)
}

/// Random codes used by the linear-algebra benchmarks, one per `(p, n, k)`.
pub fn random_codes() -> Vec<(String, StabilizerCodeSpec)> {
    [(2, 8, 2), (3, 8, 2), (5, 10, 3), (7, 12, 4)]
        .into_iter()
        .map(|(p, n, k)| {
            let code = random_self_orthogonal_code(p, n, k, 7).expect("random code");
            (format!("p{p}_n{n}_k{k}"), code)
        })
        .collect()
}
