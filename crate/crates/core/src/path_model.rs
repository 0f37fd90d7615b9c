//! Explicit path model.
//!
//! Elementary paths are vertex sequences `[v0 v1 … vp]` with consecutive
//! vertices adjacent. The annihilation operator `C_k` chops the round trip
//! `v_{k−1} → v_k → v_{k+1} = v_{k−1}` with weight `√(D_{v_k}/D_{v_{k−1}})`,
//! and `C†_k` is its transpose. Essential paths are the common kernel of all
//! `C_k`; their per-endpoint dimensions are an independent check on the
//! essential matrices.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::diagram::DynkinDiagram;
use crate::error::{AdeError, Result};

pub const DEFAULT_LENGTH_CAP: usize = 8;

/// Relative singular-value threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSpace {
    pub origin: Option<usize>,
    pub length: usize,
    pub basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// Sparse linear map between two path spaces, stored by source column.
#[derive(Debug, Clone, PartialEq)]
pub struct PathOperator {
    pub source_length: usize,
    pub target_length: usize,
    rows: usize,
    columns: Vec<Vec<(usize, f64)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EssentialSubspace {
    pub origin: usize,
    pub length: usize,
    /// Kernel dimension per endpoint vertex.
    pub endpoint_dims: Vec<usize>,
    pub dimension: usize,
    /// Kernel vectors as (path, coefficient) lists.
    pub spanning_set: Vec<Vec<(Vec<usize>, f64)>>,
}

/// The diagram together with its Perron–Frobenius data.
#[derive(Debug, Clone)]
pub struct PathModel {
    diagram: DynkinDiagram,
    pf: Vec<f64>,
    beta: f64,
    cap: usize,
}

pub fn enumerate_paths(d: &DynkinDiagram, origin: Option<usize>, length: usize) -> Result<PathSpace> {
    PathModel::new(d).space(origin, length)
}

pub fn annihilation_operator(d: &DynkinDiagram, k: usize, length: usize) -> Result<PathOperator> {
    PathModel::new(d).annihilation(None, k, length)
}

pub fn creation_operator(d: &DynkinDiagram, k: usize, length: usize) -> Result<PathOperator> {
    PathModel::new(d).creation(None, k, length)
}

pub fn jones_projector(d: &DynkinDiagram, k: usize, length: usize) -> Result<PathOperator> {
    PathModel::new(d).jones(None, k, length)
}

pub fn essential_subspace(d: &DynkinDiagram, origin: usize, length: usize) -> Result<EssentialSubspace> {
    PathModel::new(d).essential_subspace(origin, length)
}

impl PathSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, path: &[usize]) -> Option<usize> {
        self.index.get(path).copied()
    }

    fn from_basis(origin: Option<usize>, length: usize, basis: Vec<Vec<usize>>) -> Self {
        let index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Self {
            origin,
            length,
            basis,
            index,
        }
    }
}

impl PathModel {
    pub fn new(d: &DynkinDiagram) -> Self {
        Self {
            diagram: d.clone(),
            pf: d.perron_frobenius(),
            beta: d.norm(),
            cap: DEFAULT_LENGTH_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// τ = 1/β².
    pub fn tau(&self) -> f64 {
        1.0 / (self.beta * self.beta)
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    /// All paths of the given length, from `origin` or from every vertex,
    /// in lexicographic order of vertex indices.
    pub fn space(&self, origin: Option<usize>, length: usize) -> Result<PathSpace> {
        if length > self.cap {
            return Err(AdeError::LengthCap { length, cap: self.cap });
        }
        if let Some(o) = origin {
            self.diagram.check_vertex(o)?;
        }
        let starts: Vec<usize> = match origin {
            Some(o) => vec![o],
            None => (0..self.diagram.rank()).collect(),
        };
        let mut basis = Vec::new();
        for s in starts {
            let mut stack = vec![s];
            self.extend(&mut stack, length, &mut basis);
        }
        Ok(PathSpace::from_basis(origin, length, basis))
    }

    fn extend(&self, path: &mut Vec<usize>, length: usize, out: &mut Vec<Vec<usize>>) {
        if path.len() == length + 1 {
            out.push(path.clone());
            return;
        }
        let last = *path.last().expect("nonempty path");
        for w in self.diagram.neighbors(last).collect::<Vec<_>>() {
            path.push(w);
            self.extend(path, length, out);
            path.pop();
        }
    }

    /// C_k: length p → p − 2. Zero unless 1 ≤ k ≤ p − 1.
    pub fn annihilation(&self, origin: Option<usize>, k: usize, p: usize) -> Result<PathOperator> {
        let source = self.space(origin, p)?;
        let target = self.space(origin, p.saturating_sub(2))?;
        let mut columns = vec![Vec::new(); source.dim()];
        if p >= 2 && (1..p).contains(&k) {
            for (j, v) in source.basis.iter().enumerate() {
                if v[k + 1] != v[k - 1] {
                    continue;
                }
                let mut w = v[..k].to_vec();
                w.extend_from_slice(&v[k + 2..]);
                let i = target.position(&w).expect("shortened path is a path");
                columns[j].push((i, (self.pf[v[k]] / self.pf[v[k - 1]]).sqrt()));
            }
        }
        Ok(PathOperator {
            source_length: p,
            target_length: p.saturating_sub(2),
            rows: target.dim(),
            columns,
        })
    }

    /// C†_k: length p → p + 2, inserting a round trip j → k → j after the
    /// vertex at position k − 1. Zero when k > p + 1.
    pub fn creation(&self, origin: Option<usize>, k: usize, p: usize) -> Result<PathOperator> {
        let source = self.space(origin, p)?;
        let target = self.space(origin, p + 2)?;
        let mut columns = vec![Vec::new(); source.dim()];
        if (1..=p + 1).contains(&k) {
            for (j, v) in source.basis.iter().enumerate() {
                let from = v[k - 1];
                for to in self.diagram.neighbors(from) {
                    let mut w = v[..k].to_vec();
                    w.push(to);
                    w.extend_from_slice(&v[k - 1..]);
                    let i = target.position(&w).expect("lengthened path is a path");
                    columns[j].push((i, (self.pf[to] / self.pf[from]).sqrt()));
                }
                columns[j].sort_by_key(|e| e.0);
            }
        }
        Ok(PathOperator {
            source_length: p,
            target_length: p + 2,
            rows: target.dim(),
            columns,
        })
    }

    /// e_k = (1/β) C†_k C_k on length-p paths.
    pub fn jones(&self, origin: Option<usize>, k: usize, p: usize) -> Result<PathOperator> {
        let c = self.annihilation(origin, k, p)?;
        Ok(c.transpose().compose(&c).scale(1.0 / self.beta))
    }

    /// Common kernel of all C_k on paths of length p starting at `origin`.
    pub fn essential_subspace(&self, origin: usize, p: usize) -> Result<EssentialSubspace> {
        let source = self.space(Some(origin), p)?;
        let ops: Vec<PathOperator> = (1..p)
            .map(|k| self.annihilation(Some(origin), k, p))
            .collect::<Result<_>>()?;
        let target = self.space(Some(origin), p.saturating_sub(2))?;
        let r = self.diagram.rank();
        let mut endpoint_dims = vec![0; r];
        let mut spanning_set = Vec::new();
        for (end, slot) in endpoint_dims.iter_mut().enumerate() {
            let cols: Vec<usize> = (0..source.dim()).filter(|&j| source.basis[j][p] == end).collect();
            if cols.is_empty() {
                continue;
            }
            let target_rows: Vec<usize> = (0..target.dim())
                .filter(|&i| target.basis[i][target.length] == end)
                .collect();
            let row_pos: HashMap<usize, usize> = target_rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let nrows = ops.len() * target_rows.len();
            let mut m = DMatrix::<f64>::zeros(nrows, cols.len());
            for (block, op) in ops.iter().enumerate() {
                for (c, &j) in cols.iter().enumerate() {
                    for &(i, v) in &op.columns[j] {
                        m[(block * target_rows.len() + row_pos[&i], c)] = v;
                    }
                }
            }
            let kernel = null_space(&m);
            *slot = kernel.len();
            for v in kernel {
                spanning_set.push(
                    cols.iter()
                        .zip(v.iter())
                        .filter(|(_, x)| x.abs() > RANK_TOL)
                        .map(|(&j, &x)| (source.basis[j].clone(), x))
                        .collect(),
                );
            }
        }
        Ok(EssentialSubspace {
            origin,
            length: p,
            dimension: endpoint_dims.iter().sum(),
            endpoint_dims,
            spanning_set,
        })
    }
}

/// Orthonormal basis of the null space of `m`, by SVD with a relative
/// threshold.
pub fn null_space(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Vec::new();
    }
    // pad to at least square so that V is complete
    let padded = if rows < cols {
        let mut p = DMatrix::<f64>::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("V requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let thresh = RANK_TOL * smax.max(1.0);
    (0..cols)
        .filter(|&i| svd.singular_values[i] <= thresh)
        .map(|i| v_t.row(i).iter().copied().collect())
        .collect()
}

/// Numeric rank with the same threshold as [`null_space`].
pub fn numeric_rank(m: &DMatrix<f64>) -> usize {
    m.ncols() - null_space(m).len()
}

impl PathOperator {
    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, f64)] {
        &self.columns[j]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                out[i] += x * v[j];
            }
        }
        out
    }

    pub fn transpose(&self) -> PathOperator {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                columns[i].push((j, x));
            }
        }
        PathOperator {
            source_length: self.target_length,
            target_length: self.source_length,
            rows: self.columns.len(),
            columns,
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &PathOperator) -> PathOperator {
        assert_eq!(other.rows, self.ncols(), "incompatible composition");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
                for &(k, y) in col {
                    for &(i, x) in &self.columns[k] {
                        *acc.entry(i).or_insert(0.0) += x * y;
                    }
                }
                acc.into_iter().filter(|(_, v)| *v != 0.0).collect()
            })
            .collect();
        PathOperator {
            source_length: other.source_length,
            target_length: self.target_length,
            rows: self.rows,
            columns,
        }
    }

    pub fn scale(&self, f: f64) -> PathOperator {
        PathOperator {
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|&(i, x)| (i, x * f)).collect())
                .collect(),
            ..self.clone()
        }
    }

    /// ‖self − other‖∞ over entries.
    pub fn max_diff(&self, other: &PathOperator) -> f64 {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        self.columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
                for &(i, x) in a {
                    *acc.entry(i).or_insert(0.0) += x;
                }
                for &(i, x) in b {
                    *acc.entry(i).or_insert(0.0) -= x;
                }
                acc.values().fold(0.0f64, |m, v| m.max(v.abs()))
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.ncols());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                m[(i, j)] += x;
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::q_number;

    fn e6() -> DynkinDiagram {
        "E6".parse().unwrap()
    }

    #[test]
    fn enumeration() {
        let m = PathModel::new(&e6());
        let s2 = m.space(Some(0), 2).unwrap();
        assert_eq!(s2.basis, vec![vec![0, 1, 0], vec![0, 1, 2]]);
        assert_eq!(m.space(Some(0), 7).unwrap().dim(), 56);
        assert_eq!(m.space(None, 0).unwrap().dim(), 6);
        assert!(matches!(m.space(Some(0), 9), Err(AdeError::LengthCap { .. })));
    }

    #[test]
    fn first_annihilation() {
        let m = PathModel::new(&e6());
        let c = m.annihilation(Some(0), 1, 2).unwrap();
        let v = c.apply(&[1.0, 0.0]);
        assert!((v[0] - q_number(2, 12).sqrt()).abs() < 1e-12);
        assert_eq!(c.apply(&[0.0, 1.0]), vec![0.0]);
        assert!(m.annihilation(Some(0), 2, 2).unwrap().is_zero());
    }

    #[test]
    fn creation_is_transpose() {
        let m = PathModel::new(&e6());
        for p in 0..5 {
            for k in 1..=p + 1 {
                let cd = m.creation(None, k, p).unwrap();
                let c = m.annihilation(None, k, p + 2).unwrap();
                assert!(cd.max_diff(&c.transpose()) < 1e-15, "p={p} k={k}");
            }
            assert!(m.creation(None, p + 2, p).unwrap().is_zero());
        }
    }

    #[test]
    fn creation_on_single_vertices() {
        let m = PathModel::new(&e6());
        // σ4 has display index 4, its only neighbour σ5 index 3
        let c = m.creation(Some(4), 1, 0).unwrap();
        assert_eq!(c.column(0).len(), 1);
        assert!((c.column(0)[0].1 - q_number(2, 12).sqrt()).abs() < 1e-12);
        assert_eq!(m.creation(Some(2), 1, 0).unwrap().column(0).len(), 3);
    }

    #[test]
    fn small_essential_dims() {
        let m = PathModel::new(&e6());
        assert_eq!(m.essential_subspace(0, 0).unwrap().dimension, 1);
        assert_eq!(m.essential_subspace(0, 4).unwrap().endpoint_dims, vec![0, 0, 1, 0, 1, 0]);
        assert_eq!(m.essential_subspace(0, 6).unwrap().endpoint_dims, vec![1, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn null_space_padding() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        assert_eq!(null_space(&m).len(), 2);
        assert_eq!(numeric_rank(&m), 1);
    }
}
