//! Essential matrices and everything read off them.
//!
//! `E_a(0) = e_a`, `E_a(1) = e_a G`, `E_a(n) = E_a(n−1) G − E_a(n−2)`, kept
//! for `0 ≤ n ≤ N−2`. Row `n` of `E_a` counts essential paths of length `n`
//! from `a`. The fused adjacency matrices are the transposed reading
//! `F_n[a, b] = E_a[n, b]`.

use serde::{Deserialize, Serialize};

use crate::diagram::{DynkinDiagram, Family};
use crate::error::{AdeError, Result};
use crate::fusion::FusionAlgebra;
use crate::matrix::{linear_combination, IntMatrix};
use crate::ocneanu::QuantumSymmetryAlgebra;
use crate::render;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialSet {
    algebra: FusionAlgebra,
    essential: Vec<IntMatrix>,
    fused: Vec<IntMatrix>,
    /// Fusion algebra of A_{N−1}.
    level: FusionAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedEssentialSet {
    pub ambichiral: Vec<usize>,
    pub matrices: Vec<IntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerReport {
    pub holds: bool,
    /// E_0 · G
    pub lhs: IntMatrix,
    /// G^{A_{N−1}} · E_0
    pub rhs: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCount {
    pub length: usize,
    pub counts: Vec<i64>,
    /// Nonzero components of `counts`, i.e. the matrix-block sizes of the
    /// Temperley–Lieb algebra at this length.
    pub blocks: Vec<i64>,
    pub dimension: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssPathDims {
    pub dims: Vec<i64>,
    pub sum: i64,
    pub sum_of_squares: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParaInvariants {
    /// `table[a][n] = E_a[n, a]`.
    pub table: Vec<Vec<i64>>,
    pub totals: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialJson {
    pub labels: Vec<u32>,
    pub essential: Vec<IntMatrix>,
    pub fused: Vec<IntMatrix>,
    pub reduced: Option<Vec<IntMatrix>>,
}

pub fn essential_matrices(fa: &FusionAlgebra) -> Result<EssentialSet> {
    EssentialSet::new(fa)
}

/// P_n = G P_{n−1} starting from the indicator of `origin`.
pub fn path_counts(d: &DynkinDiagram, origin: usize, max_length: usize) -> Result<Vec<PathCount>> {
    d.check_vertex(origin)?;
    let g = d.adjacency();
    let mut p: Vec<i64> = (0..d.rank()).map(|i| i64::from(i == origin)).collect();
    let mut out = Vec::with_capacity(max_length + 1);
    for length in 0..=max_length {
        if length > 0 {
            p = g.mul_vec(&p);
        }
        let blocks: Vec<i64> = p.iter().copied().filter(|&v| v != 0).collect();
        out.push(PathCount {
            length,
            dimension: blocks.iter().map(|b| b * b).sum(),
            blocks,
            counts: p.clone(),
        });
    }
    Ok(out)
}

impl EssentialSet {
    pub fn new(fa: &FusionAlgebra) -> Result<Self> {
        let d = fa.diagram();
        let r = d.rank();
        let rows = d.coxeter_number() as usize - 1;
        let mut essential = Vec::with_capacity(r);
        for a in 0..r {
            let m = IntMatrix::from_rows(&recurrence_rows(d.adjacency(), a, rows));
            if let Some(((n, b), v)) = m.entries().find(|(_, v)| *v < 0) {
                return Err(AdeError::Consistency(format!(
                    "essential matrix E_{} has entry {v} at row {n}, column {b}",
                    d.label(a)
                )));
            }
            essential.push(m);
        }
        let fused = (0..rows)
            .map(|n| IntMatrix::from_fn(r, r, |a, b| essential[a][(n, b)]))
            .collect();
        let level_diagram = DynkinDiagram::new(Family::A, rows)?;
        let level = if d.is(Family::A, rows) {
            fa.clone()
        } else {
            FusionAlgebra::new(&level_diagram)?
        };
        Ok(Self {
            algebra: fa.clone(),
            essential,
            fused,
            level,
        })
    }

    pub fn algebra(&self) -> &FusionAlgebra {
        &self.algebra
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        self.algebra.diagram()
    }

    /// Fusion algebra of A_{N−1}.
    pub fn level_algebra(&self) -> &FusionAlgebra {
        &self.level
    }

    /// Number of rows, N − 1.
    pub fn rows(&self) -> usize {
        self.fused.len()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.essential
    }

    pub fn matrix(&self, a: usize) -> &IntMatrix {
        &self.essential[a]
    }

    /// The recurrence continued past the truncation point, `count` rows.
    pub fn unrestricted_rows(&self, a: usize, count: usize) -> Vec<Vec<i64>> {
        recurrence_rows(self.diagram().adjacency(), a, count)
    }

    pub fn fused_adjacency(&self) -> &[IntMatrix] {
        &self.fused
    }

    /// Coefficients c with F_n = Σ_c c N_c, read from column 0 and checked.
    pub fn fused_decomposition(&self, n: usize) -> Result<Vec<i64>> {
        let f = &self.fused[n];
        let coeffs = f.column(0);
        if self.algebra.combine(&coeffs) != *f {
            return Err(AdeError::Consistency(format!(
                "F_{n} is not Σ_c (F_{n})_{{c,0}} N_c"
            )));
        }
        Ok(coeffs)
    }

    pub fn intertwiner_check(&self) -> IntertwinerReport {
        let e0 = &self.essential[0];
        let lhs = e0 * self.diagram().adjacency();
        let rhs = self.level.diagram().adjacency() * e0;
        IntertwinerReport {
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }

    /// d_n = Σ_{a,b} E_a[n, b].
    pub fn esspath_dims(&self) -> EssPathDims {
        let dims: Vec<i64> = self.fused.iter().map(IntMatrix::sum).collect();
        EssPathDims {
            sum: dims.iter().sum(),
            sum_of_squares: dims.iter().map(|d| d * d).sum(),
            dims,
        }
    }

    pub fn para_invariants(&self) -> ParaInvariants {
        let r = self.diagram().rank();
        let table: Vec<Vec<i64>> = (0..r)
            .map(|a| (0..self.rows()).map(|n| self.essential[a][(n, a)]).collect())
            .collect();
        let totals = (0..self.rows())
            .map(|n| table.iter().map(|row| row[n]).sum())
            .collect();
        ParaInvariants { table, totals }
    }

    /// E_a Ẽ_b = Σ_p (F_p)_{ab} N_p over A_{N−1}; returns the coefficients
    /// after checking the reconstruction.
    pub fn decompose_left(&self, a: usize, b: usize) -> Result<Vec<i64>> {
        let coeffs: Vec<i64> = self.fused.iter().map(|f| f[(a, b)]).collect();
        let product = &self.essential[a] * &self.essential[b].transpose();
        if self.level.combine(&coeffs) != product {
            return Err(AdeError::Consistency(format!(
                "E_{a} Ẽ_{b} does not decompose over A_{}",
                self.rows()
            )));
        }
        Ok(coeffs)
    }

    /// Ẽ_a E_b = Σ_x (S_x)_{ab} S_x over the quantum symmetries.
    pub fn decompose_right(&self, qsa: &QuantumSymmetryAlgebra, a: usize, b: usize) -> Result<Vec<i64>> {
        let s = qsa.s_matrices()?;
        let coeffs: Vec<i64> = s.matrices.iter().map(|m| m[(a, b)]).collect();
        let r = self.diagram().rank();
        let product = &self.essential[a].transpose() * &self.essential[b];
        if linear_combination((r, r), coeffs.iter().copied().zip(&s.matrices)) != product {
            return Err(AdeError::Consistency(format!(
                "Ẽ_{a} E_{b} does not decompose over the quantum symmetries"
            )));
        }
        Ok(coeffs)
    }

    pub fn reduced_essential(&self, ambichiral: &[usize]) -> Result<ReducedEssentialSet> {
        if !self.algebra.is_closed(ambichiral) || !ambichiral.contains(&0) {
            return Err(AdeError::Structure(
                "reduced essential matrices need a fusion-closed subset containing the origin".into(),
            ));
        }
        let matrices: Vec<IntMatrix> = self
            .essential
            .iter()
            .map(|e| e.mask_columns(ambichiral))
            .collect();
        for (a, ea) in self.essential.iter().enumerate() {
            for (b, erb) in matrices.iter().enumerate() {
                if ea * &erb.transpose() != &matrices[a] * &erb.transpose() {
                    return Err(AdeError::Consistency(format!(
                        "E_{a} Ẽʳ_{b} differs from Eʳ_{a} Ẽʳ_{b}"
                    )));
                }
            }
        }
        Ok(ReducedEssentialSet {
            ambichiral: ambichiral.to_vec(),
            matrices,
        })
    }

    /// For each vertex a, the A_{N−1} vertices n with (F_n)_{a,0} ≠ 0.
    pub fn induction_table(&self) -> Vec<Vec<usize>> {
        (0..self.diagram().rank())
            .map(|a| (0..self.rows()).filter(|&n| self.fused[n][(a, 0)] != 0).collect())
            .collect()
    }

    /// E_a Ẽ_b decomposition table in block order.
    pub fn render_left_table(&self) -> Result<String> {
        let order = self.algebra.block_order();
        let d = self.diagram();
        let mut grid = vec![header(d, &order, format!("{}xA{}", d.name(), self.rows()))];
        for &a in &order {
            let mut row = vec![d.label(a).to_string()];
            for &b in &order {
                let c = self.decompose_left(a, b)?;
                row.push(render::with_multiplicities(c.iter().enumerate().map(|(p, &m)| (p, m))));
            }
            grid.push(row);
        }
        Ok(render::grid(&grid, block_len(&self.algebra)))
    }

    /// Ẽ_a E_b decomposition table in block order.
    pub fn render_right_table(&self, qsa: &QuantumSymmetryAlgebra) -> Result<String> {
        let order = self.algebra.block_order();
        let d = self.diagram();
        let mut grid = vec![header(d, &order, format!("{}xS", d.name()))];
        for &a in &order {
            let mut row = vec![d.label(a).to_string()];
            for &b in &order {
                let c = self.decompose_right(qsa, a, b)?;
                row.push(render::with_multiplicities(
                    c.iter().enumerate().map(|(x, &m)| (qsa.element_name(x), m)),
                ));
            }
            grid.push(row);
        }
        Ok(render::grid(&grid, block_len(&self.algebra)))
    }

    pub fn to_json(&self, reduced: Option<&ReducedEssentialSet>) -> EssentialJson {
        EssentialJson {
            labels: self.diagram().labels().to_vec(),
            essential: self.essential.clone(),
            fused: self.fused.clone(),
            reduced: reduced.map(|r| r.matrices.clone()),
        }
    }
}

fn header(d: &DynkinDiagram, order: &[usize], corner: String) -> Vec<String> {
    std::iter::once(corner)
        .chain(order.iter().map(|&i| d.label(i).to_string()))
        .collect()
}

fn block_len(fa: &FusionAlgebra) -> usize {
    match fa.ambichiral_subalgebra() {
        Ok(j) if j.len() < fa.rank() => j.len(),
        _ => 0,
    }
}

fn recurrence_rows(g: &IntMatrix, a: usize, count: usize) -> Vec<Vec<i64>> {
    let r = g.nrows();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(count);
    for n in 0..count {
        let row = match n {
            0 => (0..r).map(|i| i64::from(i == a)).collect(),
            1 => g.left_mul_vec(&rows[0]),
            _ => g
                .left_mul_vec(&rows[n - 1])
                .iter()
                .zip(&rows[n - 2])
                .map(|(x, y)| x - y)
                .collect(),
        };
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::fusion_matrices;

    fn set(name: &str) -> EssentialSet {
        let d: DynkinDiagram = name.parse().unwrap();
        essential_matrices(&fusion_matrices(&d).unwrap()).unwrap()
    }

    #[test]
    fn e6_shape_and_rows() {
        let es = set("E6");
        assert_eq!(es.rows(), 11);
        let e0 = es.matrix(0);
        assert_eq!(e0.row(4), &[0, 0, 1, 0, 1, 0]);
        assert_eq!(e0.row(3), &[0, 0, 0, 1, 0, 1]);
        let rows = es.unrestricted_rows(0, 13);
        assert_eq!(rows[11], vec![0; 6]);
        assert_eq!(rows[12], vec![0, 0, 0, 0, -1, 0]);
    }

    #[test]
    fn e_is_e0_times_n() {
        for name in ["E6", "E8", "A7", "D6"] {
            let es = set(name);
            for a in 0..es.diagram().rank() {
                assert_eq!(es.matrix(a), &(es.matrix(0) * es.algebra().matrix(a)), "{name} {a}");
            }
        }
    }

    #[test]
    fn fused_recurrence_and_representation() {
        for name in ["E6", "E8", "D6", "A5"] {
            let es = set(name);
            let f = es.fused_adjacency();
            assert_eq!(f[0], IntMatrix::identity(es.diagram().rank()));
            for n in 1..f.len() - 1 {
                assert_eq!(&f[n] * &f[1], &f[n - 1] + &f[n + 1], "{name} n={n}");
                es.fused_decomposition(n).unwrap();
            }
            let lvl = es.level_algebra();
            for m in 0..f.len() {
                for n in 0..f.len() {
                    let rhs = linear_combination(
                        (f[0].nrows(), f[0].ncols()),
                        lvl.multiply(m, n).into_iter().zip(f),
                    );
                    assert_eq!(&f[m] * &f[n], rhs);
                }
            }
        }
    }

    #[test]
    fn a_family_has_e_equal_n() {
        let es = set("A11");
        for a in 0..11 {
            assert_eq!(es.matrix(a), es.algebra().matrix(a));
        }
        assert!(es.intertwiner_check().holds);
    }

    #[test]
    fn intertwiners() {
        for name in ["E6", "E8", "D8"] {
            assert!(set(name).intertwiner_check().holds, "{name}");
        }
    }

    #[test]
    fn dimension_formula_for_a() {
        for n in 1..=12usize {
            let es = set(&format!("A{n}"));
            let big_n = n as i64 + 1;
            let dims = es.esspath_dims().dims;
            for (k, d) in dims.iter().enumerate() {
                assert_eq!(*d, (big_n - 1 - k as i64) * (k as i64 + 1));
            }
        }
    }

    #[test]
    fn left_decomposition_is_symmetric() {
        let es = set("E6");
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(es.decompose_left(a, b).unwrap(), es.decompose_left(b, a).unwrap());
            }
        }
    }

    #[test]
    fn path_counts_e6() {
        let d: DynkinDiagram = "E6".parse().unwrap();
        let pc = path_counts(&d, 0, 7).unwrap();
        assert_eq!(pc[0].counts, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(pc[7].counts, vec![0, 21, 0, 20, 0, 15]);
        assert_eq!(pc[7].dimension, 21 * 21 + 20 * 20 + 15 * 15);
        assert!(path_counts(&d, 6, 1).is_err());
    }

    #[test]
    fn reduced_for_full_subset_is_identity_map() {
        let es = set("A6");
        let r = es.reduced_essential(&(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(r.matrices, es.matrices());
    }
}
