//! The Verlinde representation of SL(2, ℤ), toric matrices and the modular
//! invariant partition function.
//!
//! Storage is 0-based; reports and rendered characters use 1-based indices
//! m ∈ [1, N−1].

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AdeError, Result};
use crate::essential::{EssentialSet, ReducedEssentialSet};
use crate::matrix::{linear_combination, IntMatrix};
use crate::ocneanu::QuantumSymmetryAlgebra;

pub type CMatrix = DMatrix<Complex64>;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ModularRep {
    pub n: u32,
    pub s: CMatrix,
    pub t: CMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    /// ‖S⁴ − I‖∞
    pub s4: f64,
    /// ‖S² + I‖∞
    pub s2: f64,
    /// ‖(ST)³ − I‖∞
    pub st3: f64,
    /// Smallest k with T^k = I, if found up to 8N.
    pub t_order: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricSet {
    pub names: Vec<String>,
    pub matrices: Vec<IntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub element: String,
    pub s_commutator: f64,
    pub t_commutator: f64,
    pub invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFunction {
    /// Groups of 1-based character indices.
    pub blocks: Vec<Vec<usize>>,
    pub display: String,
    pub warnings: Vec<String>,
}

/// S[m,n] = (−2i/(√2·√N)) sin(πmn/N), m, n ∈ [1, N−1].
pub fn verlinde_s(n: u32) -> CMatrix {
    let size = n as usize - 1;
    let pref = Complex64::new(0.0, -2.0 / (2f64.sqrt() * (n as f64).sqrt()));
    CMatrix::from_fn(size, size, |i, j| {
        let (m, k) = ((i + 1) as f64, (j + 1) as f64);
        pref * (PI * (m * k) / n as f64).sin()
    })
}

/// T[m,m] = exp(iπ(m²/(2N) + 1/4)).
pub fn verlinde_t(n: u32) -> CMatrix {
    let size = n as usize - 1;
    let mut t = CMatrix::zeros(size, size);
    for i in 0..size {
        let m = (i + 1) as f64;
        t[(i, i)] = Complex64::from_polar(1.0, PI * (m * m / (2.0 * n as f64) + 0.25));
    }
    t
}

pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn to_complex(m: &IntMatrix) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| Complex64::new(m[(i, j)] as f64, 0.0))
}

impl ModularRep {
    pub fn new(n: u32) -> Self {
        assert!(n >= 3, "N must be at least 3");
        Self {
            n,
            s: verlinde_s(n),
            t: verlinde_t(n),
        }
    }

    pub fn size(&self) -> usize {
        self.n as usize - 1
    }

    /// Smallest k ≤ `max` with ‖T^k − I‖∞ < tol.
    pub fn t_order(&self, max: u32, tol: f64) -> Option<u32> {
        let id = CMatrix::identity(self.size(), self.size());
        let mut p = id.clone();
        for k in 1..=max {
            p = &p * &self.t;
            if max_norm(&(&p - &id)) < tol {
                return Some(k);
            }
        }
        None
    }

    pub fn relations(&self, tol: f64) -> RelationReport {
        let id = CMatrix::identity(self.size(), self.size());
        let s2 = &self.s * &self.s;
        let st = &self.s * &self.t;
        RelationReport {
            s4: max_norm(&(&s2 * &s2 - &id)),
            s2: max_norm(&(&s2 + &id)),
            st3: max_norm(&(&st * &st * &st - &id)),
            t_order: self.t_order(8 * self.n, tol),
        }
    }
}

/// W_x = E_a Ẽʳ_b for each canonical x = a⊗b, checked against every raw
/// pair through its normal form.
pub fn toric_matrices(
    es: &EssentialSet,
    rs: &ReducedEssentialSet,
    qsa: &QuantumSymmetryAlgebra,
) -> Result<ToricSet> {
    let w = |a: usize, b: usize| es.matrix(a) * &rs.matrices[b].transpose();
    let matrices: Vec<IntMatrix> = qsa.basis().iter().map(|&(a, b)| w(a, b)).collect();
    let size = es.rows();
    let r = es.diagram().rank();
    for c in 0..r {
        for d in 0..r {
            let expected = linear_combination((size, size), qsa.normal_form(c, d).into_iter().zip(&matrices));
            if w(c, d) != expected {
                let dl = es.diagram();
                return Err(AdeError::Structure(format!(
                    "toric matrix of {}⊗{} depends on the representative",
                    dl.label(c),
                    dl.label(d)
                )));
            }
        }
    }
    if let Some(x) = matrices.iter().position(|m| !m.is_nonnegative()) {
        return Err(AdeError::Consistency(format!(
            "toric matrix of {} has a negative entry",
            qsa.element_name(x)
        )));
    }
    Ok(ToricSet {
        names: qsa.element_names(),
        matrices,
    })
}

impl ToricSet {
    pub fn get(&self, name: &str) -> Option<&IntMatrix> {
        self.names.iter().position(|n| n == name).map(|i| &self.matrices[i])
    }
}

pub fn commutator_norm(w: &IntMatrix, m: &CMatrix) -> f64 {
    let wc = to_complex(w);
    max_norm(&(&wc * m - m * &wc))
}

pub fn modular_invariance_check(ts: &ToricSet, rep: &ModularRep, tol: f64) -> Vec<InvarianceReport> {
    ts.names
        .iter()
        .zip(&ts.matrices)
        .map(|(name, w)| {
            let s_commutator = commutator_norm(w, &rep.s);
            let t_commutator = commutator_norm(w, &rep.t);
            InvarianceReport {
                element: name.clone(),
                s_commutator,
                t_commutator,
                invariant: s_commutator < tol && t_commutator < tol,
            }
        })
        .collect()
}

/// Z = Σ W[i,j] χ_i χ̄_j, grouped into connected blocks of the support of W.
/// A block on which W is identically 1 prints as |χ_i + χ_j + …|².
pub fn partition_function(w: &IntMatrix) -> PartitionFunction {
    let n = w.nrows();
    let mut warnings = Vec::new();
    if !w.is_symmetric() {
        warnings.push("matrix is not symmetric".to_string());
    }
    if w.entries().any(|(_, v)| v != 0 && v != 1) {
        warnings.push("matrix has entries other than 0 and 1".to_string());
    }
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] || (0..n).all(|j| w[(start, j)] == 0 && w[(j, start)] == 0) {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && (w[(i, j)] != 0 || w[(j, i)] != 0) {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        blocks.push(comp);
    }

    let chi = |i: usize| format!("χ{}", i + 1);
    let terms: Vec<String> = blocks
        .iter()
        .map(|b| {
            if b.iter().all(|&i| b.iter().all(|&j| w[(i, j)] == 1)) {
                let sum: Vec<String> = b.iter().map(|&i| chi(i)).collect();
                format!("|{}|²", sum.join("+"))
            } else {
                let mut parts = Vec::new();
                for &i in b {
                    for &j in b {
                        let c = w[(i, j)];
                        if c == 0 {
                            continue;
                        }
                        let coeff = if c == 1 { String::new() } else { c.to_string() };
                        if i == j {
                            parts.push(format!("{coeff}|{}|²", chi(i)));
                        } else {
                            parts.push(format!("{coeff}{}χ̄{}", chi(i), j + 1));
                        }
                    }
                }
                parts.join(" + ")
            }
        })
        .collect();
    let display = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    };
    PartitionFunction {
        blocks: blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect(),
        display,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_for_small_n() {
        for n in 3..=30 {
            let rep = ModularRep::new(n);
            let rel = rep.relations(DEFAULT_TOL);
            assert!(rel.s4 < 1e-9 && rel.s2 < 1e-9 && rel.st3 < 1e-9, "N={n}: {rel:?}");
            let expected = if n % 2 == 0 { 4 * n } else { 8 * n };
            assert_eq!(rel.t_order, Some(expected), "N={n}");
        }
    }

    #[test]
    fn s_is_symmetric_and_t_unitary() {
        let rep = ModularRep::new(12);
        assert!(max_norm(&(&rep.s - rep.s.transpose())) < 1e-15);
        for i in 0..11 {
            assert!((rep.t[(i, i)].norm() - 1.0).abs() < 1e-12);
        }
        let t = |m: usize| rep.t[(m - 1, m - 1)];
        for (a, b) in [(1, 7), (4, 8), (5, 11)] {
            assert!((t(a) - t(b)).norm() < 1e-12);
        }
    }

    #[test]
    fn partition_function_shapes() {
        let id = IntMatrix::identity(3);
        assert_eq!(partition_function(&id).display, "|χ1|² + |χ2|² + |χ3|²");
        let z = partition_function(&IntMatrix::zeros(4, 4));
        assert_eq!(z.display, "0");
        assert!(z.blocks.is_empty());
        let odd = IntMatrix::from_dotted(&["2.", ".1"]);
        let p = partition_function(&odd);
        assert_eq!(p.display, "2|χ1|² + |χ2|²");
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn identity_commutes() {
        let rep = ModularRep::new(12);
        assert_eq!(commutator_norm(&IntMatrix::identity(11), &rep.s), 0.0);
    }
}
