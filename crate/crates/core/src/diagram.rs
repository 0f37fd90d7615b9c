//! ADE Dynkin diagrams and their spectral data.
//!
//! Vertex order conventions (index → label):
//!
//! * `A_n`: a path `0 - 1 - … - (n−1)`, labels equal indices.
//! * `D_n`: a chain `0 - … - (n−3)` with the two fork vertices `n−2` and
//!   `n−1` both attached to `n−3`.
//! * `E6`: indices 0..5 carry labels 0, 1, 2, 5, 4, 3. The main chain is
//!   0-1-2-5-4 and vertex 3 hangs off 2.
//! * `E7`: chain 0..5, vertex 6 attached to 3.
//! * `E8`: chain 0..6, vertex 7 attached to 4.
//!
//! The origin (unit of the fusion algebra) is always index 0.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{AdeError, Result};
use crate::exact;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
    /// Reserved. Building an affine diagram is an error.
    Affine,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
            Family::Affine => "~",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    labels: Vec<u32>,
    adjacency: IntMatrix,
    coxeter_number: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub norm: f64,
    pub perron_frobenius: Vec<f64>,
    pub exponents: Vec<u32>,
}

/// Serialized form of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub family: String,
    pub rank: usize,
    pub labels: Vec<String>,
    pub adjacency: IntMatrix,
    pub coxeter_number: u32,
}

pub fn build_diagram(family: Family, rank: usize) -> Result<DynkinDiagram> {
    DynkinDiagram::new(family, rank)
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let unsupported = || AdeError::UnsupportedDiagram(format!("{family}{rank}"));
        let (edges, labels, coxeter): (Vec<(usize, usize)>, Vec<u32>, u32) = match (family, rank) {
            (Family::A, n) if n >= 1 => (
                chain(n),
                (0..n as u32).collect(),
                n as u32 + 1,
            ),
            (Family::D, n) if n >= 4 => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                (e, (0..n as u32).collect(), 2 * n as u32 - 2)
            }
            (Family::E, 6) => (
                vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)],
                vec![0, 1, 2, 5, 4, 3],
                12,
            ),
            (Family::E, 7) => {
                let mut e = chain(6);
                e.push((3, 6));
                (e, (0..7).collect(), 18)
            }
            (Family::E, 8) => {
                let mut e = chain(7);
                e.push((4, 7));
                (e, (0..8).collect(), 30)
            }
            _ => return Err(unsupported()),
        };
        let mut adjacency = IntMatrix::zeros(rank, rank);
        for (i, j) in edges {
            adjacency[(i, j)] = 1;
            adjacency[(j, i)] = 1;
        }
        Ok(Self {
            family,
            rank,
            labels,
            adjacency,
            coxeter_number: coxeter,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn is(&self, family: Family, rank: usize) -> bool {
        self.family == family && self.rank == rank
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn coxeter_number(&self) -> u32 {
        self.coxeter_number
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> u32 {
        self.labels[index]
    }

    pub fn index_of_label(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Indices sorted by label.
    pub fn indices_by_label(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rank).collect();
        idx.sort_by_key(|&i| self.labels[i]);
        idx
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&w| self.adjacency[(v, w)] != 0)
    }

    pub fn check_vertex(&self, index: usize) -> Result<()> {
        if index < self.rank {
            Ok(())
        } else {
            Err(AdeError::InvalidVertex {
                graph: self.name(),
                index,
                rank: self.rank,
            })
        }
    }

    /// β = 2cos(π/N).
    pub fn norm(&self) -> f64 {
        2.0 * (PI / self.coxeter_number as f64).cos()
    }

    /// Coxeter exponents m; the adjacency eigenvalues are 2cos(πm/N).
    pub fn exponents(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match (self.family, self.rank) {
            (Family::A, _) => (1..=n).collect(),
            (Family::D, _) => {
                let mut e: Vec<u32> = (1..=2 * n - 3).step_by(2).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            (Family::E, 6) => vec![1, 4, 5, 7, 8, 11],
            (Family::E, 7) => vec![1, 5, 7, 9, 11, 13, 17],
            (Family::E, 8) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            _ => unreachable!("diagram constructed with unsupported family"),
        }
    }

    /// Closed-form eigenvalues 2cos(πm/N), descending.
    pub fn exponent_eigenvalues(&self) -> Vec<f64> {
        let n = self.coxeter_number as f64;
        self.exponents()
            .iter()
            .map(|&m| 2.0 * (PI * m as f64 / n).cos())
            .collect()
    }

    /// Numerically computed adjacency eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.adjacency.to_f64());
        let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn largest_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Perron–Frobenius eigenvector, normalized to 1 at the origin.
    pub fn perron_frobenius(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.adjacency.to_f64());
        let (k, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty diagram");
        let v = eig.eigenvectors.column(k);
        let v0 = v[0];
        v.iter().map(|x| x / v0).collect()
    }

    pub fn spectral_data(&self) -> SpectralData {
        SpectralData {
            norm: self.norm(),
            perron_frobenius: self.perron_frobenius(),
            exponents: self.exponents(),
        }
    }

    /// det(X·I − G), ascending coefficients.
    pub fn characteristic_polynomial(&self) -> Vec<i64> {
        exact::charpoly(&self.adjacency)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            family: self.family.to_string(),
            rank: self.rank,
            labels: self.labels.iter().map(u32::to_string).collect(),
            adjacency: self.adjacency.clone(),
            coxeter_number: self.coxeter_number,
        }
    }

    /// The longest simple path starting at the origin, ties broken by
    /// smallest vertex index.
    fn main_chain(&self) -> Vec<usize> {
        fn walk(d: &DynkinDiagram, v: usize, from: Option<usize>) -> Vec<usize> {
            let mut best: Vec<usize> = Vec::new();
            for w in d.neighbors(v) {
                if Some(w) == from {
                    continue;
                }
                let p = walk(d, w, Some(v));
                if p.len() > best.len() {
                    best = p;
                }
            }
            let mut out = vec![v];
            out.extend(best);
            out
        }
        walk(self, 0, None)
    }

    /// ASCII picture: the main chain on one line, the remaining vertex (if
    /// any) drawn above its attachment point.
    pub fn ascii_picture(&self) -> String {
        let chain = self.main_chain();
        let mut line = String::new();
        let mut column = vec![0usize; self.rank];
        for (k, &v) in chain.iter().enumerate() {
            if k > 0 {
                line.push_str(" - ");
            }
            column[v] = line.len();
            line.push_str(&self.labels[v].to_string());
        }
        let mut out = String::new();
        for v in (0..self.rank).filter(|v| !chain.contains(v)) {
            let anchor = self
                .neighbors(v)
                .find(|w| chain.contains(w))
                .expect("off-chain vertex attached to chain");
            let pad = " ".repeat(column[anchor]);
            out.push_str(&format!("{pad}{}\n{pad}|\n", self.labels[v]));
        }
        out.push_str(&line);
        out.push('\n');
        out
    }
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

impl FromStr for DynkinDiagram {
    type Err = AdeError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = || AdeError::ParseDiagram(s.to_string());
        let (family, rest) = if let Some(r) = t.strip_prefix('~') {
            (Family::Affine, r.get(1..).ok_or_else(err)?)
        } else {
            let mut chars = t.chars();
            let f = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Family::A,
                Some('D') => Family::D,
                Some('E') => Family::E,
                _ => return Err(err()),
            };
            (f, chars.as_str())
        };
        let rank: usize = rest.parse().map_err(|_| err())?;
        Self::new(family, rank)
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// [n] = sin(nπ/N)/sin(π/N).
pub fn q_number(n: i64, coxeter: u32) -> f64 {
    let h = coxeter as f64;
    (n as f64 * PI / h).sin() / (PI / h).sin()
}

/// Power iteration on G + I (the shift makes the matrix primitive on a
/// bipartite graph). Returns β and the vector normalized at index 0.
pub fn power_iteration(g: &IntMatrix, max_iter: usize, tol: f64) -> (f64, Vec<f64>) {
    let n = g.nrows();
    let m = g.to_f64() + DMatrix::<f64>::identity(n, n);
    let mut v = DVector::from_element(n, 1.0);
    let mut lambda = 0.0;
    for _ in 0..max_iter {
        let w = &m * &v;
        let next = w.norm() / v.norm();
        let w = w.normalize();
        let done = (next - lambda).abs() < tol && (&w - &v.normalize()).amax() < tol;
        v = w;
        lambda = next;
        if done {
            break;
        }
    }
    let v0 = v[0];
    (lambda - 1.0, v.iter().map(|x| x / v0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> DynkinDiagram {
        "E6".parse().unwrap()
    }

    #[test]
    fn e6_adjacency() {
        let g = IntMatrix::from_dotted(&[".1....", "1.1...", ".1.1.1", "..1.1.", "...1..", "..1..."]);
        assert_eq!(e6().adjacency(), &g);
        assert_eq!(e6().labels(), &[0, 1, 2, 5, 4, 3]);
    }

    #[test]
    fn small_cases() {
        let a1 = build_diagram(Family::A, 1).unwrap();
        assert!(a1.adjacency().is_zero());
        assert!(a1.norm().abs() < 1e-12);
        assert_eq!(a1.perron_frobenius(), vec![1.0]);
        let a3 = build_diagram(Family::A, 3).unwrap();
        assert!((a3.norm() - 2f64.sqrt()).abs() < 1e-12);
        let d = a3.perron_frobenius();
        assert!((d[1] - 2f64.sqrt()).abs() < 1e-9 && (d[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_pairs() {
        for (f, r) in [(Family::A, 0), (Family::D, 3), (Family::E, 5), (Family::E, 9), (Family::Affine, 3)] {
            assert!(matches!(build_diagram(f, r), Err(AdeError::UnsupportedDiagram(_))));
        }
        assert!(matches!("X3".parse::<DynkinDiagram>(), Err(AdeError::ParseDiagram(_))));
        assert!(matches!("~A3".parse::<DynkinDiagram>(), Err(AdeError::UnsupportedDiagram(_))));
    }

    #[test]
    fn spectrum_matches_exponents() {
        for name in ["A1", "A2", "A7", "A11", "D4", "D5", "D6", "D9", "E6", "E7", "E8"] {
            let d: DynkinDiagram = name.parse().unwrap();
            let num = d.eigenvalues();
            let mut closed = d.exponent_eigenvalues();
            closed.sort_by(|a, b| b.total_cmp(a));
            for (x, y) in num.iter().zip(&closed) {
                assert!((x - y).abs() < 1e-9, "{name}: {x} vs {y}");
            }
            assert!((d.largest_eigenvalue() - d.norm()).abs() < 1e-9, "{name}");
        }
    }

    #[test]
    fn perron_frobenius_is_positive_and_minimal_at_origin() {
        for name in ["A5", "D6", "E6", "E7", "E8"] {
            let d: DynkinDiagram = name.parse().unwrap();
            let pf = d.perron_frobenius();
            assert!(pf.iter().all(|&x| x >= 1.0 - 1e-9), "{name}: {pf:?}");
            let (beta, pi) = power_iteration(d.adjacency(), 10_000, 1e-14);
            assert!((beta - d.norm()).abs() < 1e-9);
            for (x, y) in pf.iter().zip(&pi) {
                assert!((x - y).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn e6_charpoly() {
        // (X^2 - 1)(X^4 - 4X^2 + 1)
        assert_eq!(e6().characteristic_polynomial(), vec![-1, 0, 5, 0, -5, 0, 1]);
    }

    #[test]
    fn q_numbers() {
        assert!((q_number(2, 12) - 1.9318516525).abs() < 1e-9);
        assert!((q_number(3, 12) - (1.0 + 3f64.sqrt())).abs() < 1e-9);
        assert!((q_number(1, 7) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pictures() {
        assert_eq!(e6().ascii_picture(), "        3\n        |\n0 - 1 - 2 - 5 - 4\n");
        let a3: DynkinDiagram = "A3".parse().unwrap();
        assert_eq!(a3.ascii_picture(), "0 - 1 - 2\n");
    }
}
