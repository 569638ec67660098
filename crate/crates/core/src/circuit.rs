//! Gate-level circuits over a register of prime-dimensional qudits, and the
//! `QSSCIRC` text format.
//!
//! Qudit indices are zero-based in memory and one-based in text.
//!
//! ```text
//! QSSCIRC 1
//! p 3
//! qudits 8
//! role 1 share 1
//! role 7 ancilla 1
//! gate F 7
//! gate CPAULIINV 7 3 2 0      # control target a b
//! gate PPOW 7 2               # exponent of the phase unit
//! ```
//!
//! Gate mnemonics: `F q`, `FINV q`, `PPOW q e`, `CPAULI c t a b`,
//! `CPAULIINV c t a b`, `PAULI q a b`. Text after `#` is ignored.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::pauli::phase_order;

pub const FORMAT_HEADER: &str = "QSSCIRC 1";

/// One- and two-qudit gates.
///
/// * `Fourier`: `|a⟩ ↦ p^{-1/2} Σ_b ω_p^{ab} |b⟩`; `FourierInv` is its adjoint.
/// * `PhasePow`: `P^e` with `P = Z` for odd `p` and `P = √Z = diag(1, i)` for
///   `p = 2`, so `|j⟩ ↦ ω^{e·j} |j⟩`.
/// * `ControlledPauli`: `Σ_j |j⟩⟨j|_c ⊗ (X^a Z^b)^j_t`; the `Inv` variant
///   applies `(X^a Z^b)^{−j}`.
/// * `Pauli`: `X^a Z^b` on one qudit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Fourier(usize),
    FourierInv(usize),
    PhasePow {
        qudit: usize,
        exponent: u32,
    },
    ControlledPauli {
        control: usize,
        target: usize,
        x: u32,
        z: u32,
    },
    ControlledPauliInv {
        control: usize,
        target: usize,
        x: u32,
        z: u32,
    },
    Pauli {
        qudit: usize,
        x: u32,
        z: u32,
    },
}

impl Gate {
    pub fn qudits(&self) -> Vec<usize> {
        match *self {
            Gate::Fourier(q) | Gate::FourierInv(q) => vec![q],
            Gate::PhasePow { qudit, .. } | Gate::Pauli { qudit, .. } => vec![qudit],
            Gate::ControlledPauli { control, target, .. } | Gate::ControlledPauliInv { control, target, .. } => {
                vec![control, target]
            }
        }
    }

    pub fn is_two_qudit(&self) -> bool {
        matches!(self, Gate::ControlledPauli { .. } | Gate::ControlledPauliInv { .. })
    }

    fn mnemonic(&self) -> &'static str {
        match self {
            Gate::Fourier(_) => "F",
            Gate::FourierInv(_) => "FINV",
            Gate::PhasePow { .. } => "PPOW",
            Gate::ControlledPauli { .. } => "CPAULI",
            Gate::ControlledPauliInv { .. } => "CPAULIINV",
            Gate::Pauli { .. } => "PAULI",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mnemonic())?;
        match *self {
            Gate::Fourier(q) | Gate::FourierInv(q) => write!(f, " {}", q + 1),
            Gate::PhasePow { qudit, exponent } => write!(f, " {} {exponent}", qudit + 1),
            Gate::ControlledPauli { control, target, x, z } | Gate::ControlledPauliInv { control, target, x, z } => {
                write!(f, " {} {} {x} {z}", control + 1, target + 1)
            }
            Gate::Pauli { qudit, x, z } => write!(f, " {} {x} {z}", qudit + 1),
        }
    }
}

/// What a register position holds. Labels are one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Share(usize),
    Ancilla(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Share(i) => write!(f, "share {i}"),
            Role::Ancilla(i) => write!(f, "ancilla {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    field: PrimeField,
    roles: Vec<Role>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(field: PrimeField, roles: Vec<Role>) -> Self {
        Self {
            field,
            roles,
            gates: Vec::new(),
        }
    }

    /// `n` shares followed by `k` ancillas.
    pub fn shares_then_ancillas(field: PrimeField, n: usize, k: usize) -> Self {
        let roles = (1..=n).map(Role::Share).chain((1..=k).map(Role::Ancilla)).collect();
        Self::new(field, roles)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn num_qudits(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    fn check(&self, gate: &Gate) -> Result<()> {
        let m = self.num_qudits();
        for q in gate.qudits() {
            if q >= m {
                return Err(Error::IndexOutOfRange { index: q, qudits: m });
            }
        }
        let p = self.p();
        match *gate {
            Gate::ControlledPauli { control, target, x, z } | Gate::ControlledPauliInv { control, target, x, z } => {
                if control == target {
                    return Err(Error::InvalidCode(format!(
                        "gate {gate} uses qudit {} twice",
                        control + 1
                    )));
                }
                if x >= p || z >= p {
                    return Err(Error::InvalidCode(format!("gate {gate} has a power outside F_{p}")));
                }
            }
            Gate::Pauli { x, z, .. } if x >= p || z >= p => {
                return Err(Error::InvalidCode(format!("gate {gate} has a power outside F_{p}")));
            }
            Gate::PhasePow { exponent, .. } if exponent >= phase_order(self.field) => {
                return Err(Error::InvalidCode(format!(
                    "gate {gate} has an exponent outside the phase ring"
                )));
            }
            _ => {}
        }
        Ok(())
    }

    pub fn two_qudit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qudit()).count()
    }

    pub fn single_qudit_count(&self) -> usize {
        self.gates.len() - self.two_qudit_count()
    }

    pub fn phase_pow_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::PhasePow { .. })).count()
    }

    pub fn fourier_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Fourier(_) | Gate::FourierInv(_)))
            .count()
    }

    /// Sorted zero-based indices of every qudit some gate acts on.
    pub fn touched_qudits(&self) -> Vec<usize> {
        let mut qs: Vec<usize> = self.gates.iter().flat_map(|g| g.qudits()).collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }

    /// The circuit read backwards with every gate inverted. Single-qudit
    /// `PAULI` gates have no phase-exact inverse in the gate set and are
    /// rejected.
    pub fn inverse(&self) -> Result<Self> {
        if let Some(g) = self.gates.iter().find(|g| matches!(g, Gate::Pauli { .. })) {
            return Err(Error::InvalidCode(format!("cannot invert {g} exactly")));
        }
        let order = phase_order(self.field);
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| match *g {
                Gate::Fourier(q) => Gate::FourierInv(q),
                Gate::FourierInv(q) => Gate::Fourier(q),
                Gate::PhasePow { qudit, exponent } => Gate::PhasePow {
                    qudit,
                    exponent: (order - exponent) % order,
                },
                Gate::ControlledPauli { control, target, x, z } => Gate::ControlledPauliInv { control, target, x, z },
                Gate::ControlledPauliInv { control, target, x, z } => Gate::ControlledPauli { control, target, x, z },
                Gate::Pauli { .. } => unreachable!(),
            })
            .collect();
        Ok(Self {
            field: self.field,
            roles: self.roles.clone(),
            gates,
        })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{FORMAT_HEADER}").unwrap();
        writeln!(out, "p {}", self.p()).unwrap();
        writeln!(out, "qudits {}", self.num_qudits()).unwrap();
        for (i, r) in self.roles.iter().enumerate() {
            writeln!(out, "role {} {r}", i + 1).unwrap();
        }
        for g in &self.gates {
            writeln!(out, "gate {g}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, m: String| Error::Parse { line, message: m };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (l, header) = lines.next().ok_or_else(|| err(0, "empty document".into()))?;
        if header.split_whitespace().collect::<Vec<_>>() != ["QSSCIRC", "1"] {
            return Err(err(l, format!("expected header {FORMAT_HEADER:?}, found {header:?}")));
        }
        let mut field = None;
        let mut roles: Vec<Option<Role>> = Vec::new();
        let mut sized = false;
        let mut gates = Vec::new();
        for (l, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let num = |i: usize| -> Result<u64> {
                let t = tokens
                    .get(i)
                    .ok_or_else(|| err(l, format!("missing field {i} in {line:?}")))?;
                t.parse::<u64>()
                    .map_err(|_| err(l, format!("expected an integer, found {t:?}")))
            };
            let arity = |n: usize| -> Result<()> {
                if tokens.len() != n {
                    return Err(err(l, format!("expected {} fields, found {}", n, tokens.len())));
                }
                Ok(())
            };
            let qudit = |i: usize| -> Result<usize> {
                let q = num(i)? as usize;
                if q == 0 || q > roles.len() {
                    return Err(err(l, format!("qudit {q} out of range 1..={}", roles.len())));
                }
                Ok(q - 1)
            };
            match tokens[0] {
                "p" => {
                    arity(2)?;
                    field = Some(PrimeField::new(num(1)? as u32).map_err(|e| err(l, e.to_string()))?);
                }
                "qudits" => {
                    arity(2)?;
                    if sized {
                        return Err(err(l, "duplicate 'qudits' line".into()));
                    }
                    roles = vec![None; num(1)? as usize];
                    sized = true;
                }
                "role" => {
                    arity(4)?;
                    let q = qudit(1)?;
                    let label = num(3)? as usize;
                    let role = match tokens[2] {
                        "share" => Role::Share(label),
                        "ancilla" => Role::Ancilla(label),
                        other => return Err(err(l, format!("unknown role {other:?}"))),
                    };
                    if roles[q].replace(role).is_some() {
                        return Err(err(l, format!("qudit {} has two roles", q + 1)));
                    }
                }
                "gate" => {
                    let f = field.ok_or_else(|| err(l, "gate before 'p'".into()))?;
                    let kind = *tokens.get(1).ok_or_else(|| err(l, "missing gate name".into()))?;
                    let gate = match kind {
                        "F" | "FINV" => {
                            arity(3)?;
                            let q = qudit(2)?;
                            if kind == "F" {
                                Gate::Fourier(q)
                            } else {
                                Gate::FourierInv(q)
                            }
                        }
                        "PPOW" => {
                            arity(4)?;
                            Gate::PhasePow {
                                qudit: qudit(2)?,
                                exponent: num(3)? as u32,
                            }
                        }
                        "CPAULI" | "CPAULIINV" => {
                            arity(6)?;
                            let (control, target) = (qudit(2)?, qudit(3)?);
                            let (x, z) = (num(4)? as u32, num(5)? as u32);
                            if kind == "CPAULI" {
                                Gate::ControlledPauli { control, target, x, z }
                            } else {
                                Gate::ControlledPauliInv { control, target, x, z }
                            }
                        }
                        "PAULI" => {
                            arity(5)?;
                            Gate::Pauli {
                                qudit: qudit(2)?,
                                x: num(3)? as u32,
                                z: num(4)? as u32,
                            }
                        }
                        other => return Err(err(l, format!("unknown gate {other:?}"))),
                    };
                    let probe = Circuit::new(f, vec![Role::Share(0); roles.len()]);
                    probe.check(&gate).map_err(|e| err(l, e.to_string()))?;
                    gates.push(gate);
                }
                other => return Err(err(l, format!("unknown keyword {other:?}"))),
            }
        }
        let field = field.ok_or_else(|| err(0, "missing 'p'".into()))?;
        if !sized {
            return Err(err(0, "missing 'qudits'".into()));
        }
        let roles = roles
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| err(0, format!("qudit {} has no role", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field, roles, gates })
    }
}

/// `emit_circuit`.
pub fn emit_circuit(c: &Circuit) -> String {
    c.emit()
}

/// `parse_circuit`.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    Circuit::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn empty_circuit_is_header_only() {
        let c = Circuit::new(f3(), vec![]);
        let text = c.emit();
        assert_eq!(text, "QSSCIRC 1\np 3\nqudits 0\n");
        assert_eq!(Circuit::parse(&text).unwrap(), c);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# leading comment\nQSSCIRC 1\n\np 3 # the prime\nqudits 2\nrole 1 share 1\nrole 2 ancilla 1\ngate CPAULIINV 2 1 2 0   # control target a b\n";
        let c = Circuit::parse(text).unwrap();
        assert_eq!(
            c.gates(),
            &[Gate::ControlledPauliInv {
                control: 1,
                target: 0,
                x: 2,
                z: 0
            }]
        );
    }

    #[test]
    fn malformed_gate_lines() {
        let base = "QSSCIRC 1\np 3\nqudits 2\nrole 1 share 1\nrole 2 ancilla 1\n";
        for (bad, line) in [
            ("gate CPAULI 2 2 1 0\n", 6),
            ("gate PPOW 2\n", 6),
            ("gate PPOW 3 1\n", 6),
            ("gate PPOW 2 3\n", 6),
            ("gate FOO 1\n", 6),
            ("gate CPAULI 2 1 3 0\n", 6),
        ] {
            let err = Circuit::parse(&format!("{base}{bad}")).unwrap_err();
            assert!(
                matches!(err, Error::Parse { line: l, .. } if l == line),
                "{bad}: {err:?}"
            );
        }
        assert!(matches!(
            Circuit::parse("QSSCIRC 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(Circuit::parse("QSSCIRC 1\np 3\nqudits 2\nrole 1 share 1\n").is_err());
    }

    #[test]
    fn push_validates() {
        let mut c = Circuit::shares_then_ancillas(f3(), 2, 1);
        assert!(c.push(Gate::Fourier(3)).is_err());
        assert!(c
            .push(Gate::ControlledPauli {
                control: 0,
                target: 0,
                x: 1,
                z: 0
            })
            .is_err());
        assert!(c.push(Gate::PhasePow { qudit: 2, exponent: 2 }).is_ok());
    }

    fn gate_strategy(m: usize, p: u32) -> impl Strategy<Value = Gate> {
        let order = if p == 2 { 4 } else { p };
        prop_oneof![
            (0..m).prop_map(Gate::Fourier),
            (0..m).prop_map(Gate::FourierInv),
            (0..m, 0..order).prop_map(|(qudit, exponent)| Gate::PhasePow { qudit, exponent }),
            (0..m, 1..m, 0..p, 0..p).prop_map(move |(c, d, x, z)| Gate::ControlledPauli {
                control: c,
                target: (c + d) % m,
                x,
                z
            }),
            (0..m, 1..m, 0..p, 0..p).prop_map(move |(c, d, x, z)| Gate::ControlledPauliInv {
                control: c,
                target: (c + d) % m,
                x,
                z
            }),
            (0..m, 0..p, 0..p).prop_map(|(qudit, x, z)| Gate::Pauli { qudit, x, z }),
        ]
    }

    fn circuit_strategy() -> impl Strategy<Value = Circuit> {
        (prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]), 0usize..3).prop_flat_map(|(p, ancillas)| {
            prop::collection::vec(gate_strategy(5, p), 0..30).prop_map(move |gates| {
                let mut c = Circuit::shares_then_ancillas(PrimeField::new(p).unwrap(), 5 - ancillas, ancillas);
                c.extend(gates).unwrap();
                c
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(c in circuit_strategy()) {
            prop_assert_eq!(Circuit::parse(&c.emit()).unwrap(), c);
        }
    }
}
