//! Bundled example codes.

use crate::code::StabilizerCodeSpec;
use crate::codefile::parse_code_spec;

/// The `[[6, 2, 3]]_3` code with its self-dual extension and logical pairs,
/// in code-spec text form.
pub const QUTRIT_6_2_3: &str = include_str!("../data/qutrit_6_2_3.qss");

/// [`QUTRIT_6_2_3`], parsed. Loading rescales the listed `z_i` so that
/// `⟨x_i, z_i⟩ = 1`.
pub fn qutrit_6_2_3() -> StabilizerCodeSpec {
    parse_code_spec(QUTRIT_6_2_3).expect("bundled example is valid")
}
