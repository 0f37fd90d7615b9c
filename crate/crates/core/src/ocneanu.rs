//! The algebra of quantum symmetries `S = E ⊗_J E`.
//!
//! The tensor square of the fusion algebra is quotiented by the relations
//! `(σ_a σ_x) ⊗ σ_b = σ_a ⊗ (σ_x σ_b)` for `x` in the ambichiral subset `J`.
//! Canonical representatives are picked greedily from the raw pairs ordered
//! by the total of `N_a N_b`, then chiral pairs (`a⊗0` or `0⊗b`) before mixed
//! ones, then by the labels of `(b, a)`. The resulting basis is listed in
//! A, L, R, C order.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{AdeError, Result};
use crate::exact::{self, q, Q};
use crate::fusion::FusionAlgebra;
use crate::matrix::{linear_combination, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    /// Ambichiral: a⊗0 with a ∈ J.
    A,
    /// Left chiral: a⊗0 with a ∉ J.
    L,
    /// Right chiral: 0⊗b.
    R,
    /// Neither.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumSymmetryAlgebra {
    fusion: FusionAlgebra,
    ambichiral: Vec<usize>,
    basis: Vec<(usize, usize)>,
    chirality: Vec<Chirality>,
    /// Normal form of the raw pair (a, b), stored at index a·r + b.
    reduction: Vec<Vec<i64>>,
    structure: Vec<i64>,
    left_generator: Vec<i64>,
    right_generator: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub a: Vec<usize>,
    pub l: Vec<usize>,
    pub r: Vec<usize>,
    pub c: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OcneanuGraph {
    pub nodes: Vec<String>,
    /// `solid[x][y]`: coefficient of y in x·(1⊗0).
    pub solid: IntMatrix,
    /// `dashed[x][y]`: coefficient of y in x·(0⊗1).
    pub dashed: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SxSet {
    pub names: Vec<String>,
    pub matrices: Vec<IntMatrix>,
    pub dims: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OcneanuJson {
    pub basis: Vec<String>,
    pub ambichiral: Vec<u32>,
    /// `structure[x][y]` is the coefficient vector of x·y.
    pub structure: Vec<Vec<Vec<i64>>>,
    pub partition: Partition,
    pub left_generator: Vec<i64>,
    pub right_generator: Vec<i64>,
}

pub fn quantum_symmetry_algebra(fa: &FusionAlgebra, ambichiral: &[usize]) -> Result<QuantumSymmetryAlgebra> {
    QuantumSymmetryAlgebra::new(fa, ambichiral)
}

impl QuantumSymmetryAlgebra {
    /// Builds the quotient over the family's ambichiral subalgebra.
    pub fn from_fusion(fa: &FusionAlgebra) -> Result<Self> {
        Self::new(fa, &fa.ambichiral_subalgebra()?)
    }

    pub fn new(fa: &FusionAlgebra, ambichiral: &[usize]) -> Result<Self> {
        let d = fa.diagram();
        let r = fa.rank();
        if !ambichiral.contains(&0) || !fa.is_closed(ambichiral) {
            return Err(AdeError::Structure(
                "the ambichiral subset must be fusion closed and contain the origin".into(),
            ));
        }
        let pair = |a: usize, b: usize| a * r + b;

        let mut relations: Vec<Vec<Q>> = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for &x in ambichiral {
                    let mut v = vec![Q::zero(); r * r];
                    for c in 0..r {
                        let left = fa.structure_constant(a, x, c);
                        if left != 0 {
                            v[pair(c, b)] += q(left);
                        }
                        let right = fa.structure_constant(x, b, c);
                        if right != 0 {
                            v[pair(a, c)] -= q(right);
                        }
                    }
                    if v.iter().any(|t| !t.is_zero()) {
                        relations.push(v);
                    }
                }
            }
        }

        // greedy choice of representatives
        let label = |i: usize| d.label(i);
        let mut candidates: Vec<(usize, usize)> = (0..r).flat_map(|a| (0..r).map(move |b| (a, b))).collect();
        // Sorting by the total of N_a N_b first keeps sums of other elements
        // (e.g. 2⊗2 = 1⊗1 + 5⊗1 in E6) out of the basis.
        let weight = |a: usize, b: usize| (fa.matrix(a) * fa.matrix(b)).sum();
        candidates.sort_by_key(|&(a, b)| (weight(a, b), a != 0 && b != 0, label(b), label(a)));
        let mut span = IncrementalSpan::new(r * r);
        for v in &relations {
            span.insert(v.clone());
        }
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in &candidates {
            let mut e = vec![Q::zero(); r * r];
            e[pair(a, b)] = q(1);
            if span.insert(e) {
                chosen.push((a, b));
            }
        }

        let expected = r * r / ambichiral.len();
        if chosen.len() != expected || !(r * r).is_multiple_of(ambichiral.len()) {
            return Err(AdeError::Structure(format!(
                "quotient has dimension {}, expected r²/|J| = {}",
                chosen.len(),
                expected
            )));
        }

        let classify = |&(a, b): &(usize, usize)| match (a, b) {
            (a, 0) if ambichiral.contains(&a) => Chirality::A,
            (_, 0) => Chirality::L,
            (0, _) => Chirality::R,
            _ => Chirality::C,
        };
        let group = |c: Chirality| match c {
            Chirality::A => 0,
            Chirality::L => 1,
            Chirality::R => 2,
            Chirality::C => 3,
        };
        chosen.sort_by_key(|p| (group(classify(p)), label(p.0), label(p.1)));
        let chirality: Vec<Chirality> = chosen.iter().map(classify).collect();

        // normal forms: eliminate non-canonical columns first
        let canonical_cols: Vec<usize> = chosen.iter().map(|&(a, b)| pair(a, b)).collect();
        let mut order: Vec<usize> = (0..r * r).filter(|c| !canonical_cols.contains(c)).collect();
        order.extend(&canonical_cols);
        let mut m = relations;
        let pivots = exact::rref_with_order(&mut m, Some(&order));
        if pivots.iter().any(|p| canonical_cols.contains(p)) || pivots.len() != r * r - expected {
            return Err(AdeError::Structure("canonical representatives are not independent".into()));
        }
        let dim = chosen.len();
        let mut reduction = vec![vec![0i64; dim]; r * r];
        for (k, &col) in canonical_cols.iter().enumerate() {
            reduction[col][k] = 1;
        }
        for (row, &p) in m.iter().zip(&pivots) {
            for (k, &col) in canonical_cols.iter().enumerate() {
                let coeff = -row[col].clone();
                reduction[p][k] = exact::to_i64(&coeff).ok_or_else(|| {
                    AdeError::Structure(format!(
                        "normal form of {}⊗{} has non-integer coefficients",
                        label(p / r),
                        label(p % r)
                    ))
                })?;
            }
        }

        let mut qsa = Self {
            fusion: fa.clone(),
            ambichiral: ambichiral.to_vec(),
            basis: chosen,
            chirality,
            reduction,
            structure: Vec::new(),
            left_generator: Vec::new(),
            right_generator: Vec::new(),
        };

        let mut structure = vec![0; dim * dim * dim];
        for x in 0..dim {
            for y in 0..dim {
                let prod = qsa.raw_product(qsa.basis[x], qsa.basis[y]);
                for (z, v) in prod.into_iter().enumerate() {
                    if v < 0 {
                        return Err(AdeError::Structure(format!(
                            "negative structure constant in {}·{}",
                            qsa.element_name(x),
                            qsa.element_name(y)
                        )));
                    }
                    structure[(x * dim + y) * dim + z] = v;
                }
            }
        }
        qsa.structure = structure;
        qsa.check_products_descend()?;

        let one = if r > 1 { 1 } else { 0 };
        qsa.left_generator = qsa.normal_form(one, 0);
        qsa.right_generator = qsa.normal_form(0, one);
        Ok(qsa)
    }

    /// Σ_{c,d} C_{a a' c} C_{b b' d} nf(c⊗d).
    fn raw_product(&self, (a, b): (usize, usize), (a2, b2): (usize, usize)) -> Vec<i64> {
        let fa = &self.fusion;
        let mut out = vec![0; self.dim()];
        let left = fa.multiply(a, a2);
        let right = fa.multiply(b, b2);
        for (c, &lc) in left.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (d, &rd) in right.iter().enumerate().filter(|(_, v)| **v != 0) {
                for (o, &n) in out.iter_mut().zip(self.normal_form(c, d).iter()) {
                    *o += lc * rd * n;
                }
            }
        }
        out
    }

    /// Multiplying a relation generator by a basis element must land in the
    /// relation space, i.e. reduce to zero.
    fn check_products_descend(&self) -> Result<()> {
        let fa = &self.fusion;
        let r = fa.rank();
        for a in 0..r {
            for b in 0..r {
                for &x in &self.ambichiral {
                    for (y, &(c, d)) in self.basis.iter().enumerate() {
                        let mut acc = vec![0i64; self.dim()];
                        for (k, &m) in fa.multiply(a, x).iter().enumerate().filter(|(_, v)| **v != 0) {
                            for (s, v) in acc.iter_mut().zip(self.raw_product((k, b), (c, d))) {
                                *s += m * v;
                            }
                        }
                        for (k, &m) in fa.multiply(x, b).iter().enumerate().filter(|(_, v)| **v != 0) {
                            for (s, v) in acc.iter_mut().zip(self.raw_product((a, k), (c, d))) {
                                *s -= m * v;
                            }
                        }
                        if acc.iter().any(|&v| v != 0) {
                            return Err(AdeError::Structure(format!(
                                "product with {} is not well defined on the quotient",
                                self.element_name(y)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn fusion(&self) -> &FusionAlgebra {
        &self.fusion
    }

    pub fn ambichiral(&self) -> &[usize] {
        &self.ambichiral
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical representatives as vertex-index pairs.
    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn chirality(&self, x: usize) -> Chirality {
        self.chirality[x]
    }

    /// "a⊗b" with vertex labels.
    pub fn element_name(&self, x: usize) -> String {
        let d = self.fusion.diagram();
        let (a, b) = self.basis[x];
        format!("{}⊗{}", d.label(a), d.label(b))
    }

    pub fn element_names(&self) -> Vec<String> {
        (0..self.dim()).map(|x| self.element_name(x)).collect()
    }

    /// Index of the canonical element a⊗b given by vertex labels, if a⊗b is
    /// itself a canonical representative.
    pub fn find(&self, a_label: u32, b_label: u32) -> Option<usize> {
        let d = self.fusion.diagram();
        let a = d.index_of_label(a_label)?;
        let b = d.index_of_label(b_label)?;
        self.basis.iter().position(|&p| p == (a, b))
    }

    pub fn normal_form(&self, a: usize, b: usize) -> Vec<i64> {
        self.reduction[a * self.fusion.rank() + b].clone()
    }

    pub fn structure_constant(&self, x: usize, y: usize, z: usize) -> i64 {
        let n = self.dim();
        self.structure[(x * n + y) * n + z]
    }

    pub fn multiply_qs(&self, x: usize, y: usize) -> Vec<i64> {
        (0..self.dim()).map(|z| self.structure_constant(x, y, z)).collect()
    }

    /// Product of two elements given as coefficient vectors.
    pub fn multiply_vectors(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.dim();
        let mut out = vec![0; n];
        for (x, &ux) in u.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (y, &vy) in v.iter().enumerate().filter(|(_, c)| **c != 0) {
                for (z, o) in out.iter_mut().enumerate() {
                    *o += ux * vy * self.structure_constant(x, y, z);
                }
            }
        }
        out
    }

    pub fn left_generator(&self) -> &[i64] {
        &self.left_generator
    }

    pub fn right_generator(&self) -> &[i64] {
        &self.right_generator
    }

    pub fn partition(&self) -> Partition {
        let pick = |c: Chirality| -> Vec<usize> {
            (0..self.dim()).filter(|&x| self.chirality[x] == c).collect()
        };
        Partition {
            a: pick(Chirality::A),
            l: pick(Chirality::L),
            r: pick(Chirality::R),
            c: pick(Chirality::C),
        }
    }

    pub fn cayley_graph(&self) -> OcneanuGraph {
        let n = self.dim();
        let unit = |x: usize| -> Vec<i64> { (0..n).map(|i| i64::from(i == x)).collect() };
        let edges = |g: &[i64]| {
            IntMatrix::from_fn(n, n, |x, y| self.multiply_vectors(&unit(x), g)[y])
        };
        OcneanuGraph {
            nodes: self.element_names(),
            solid: edges(&self.left_generator),
            dashed: edges(&self.right_generator),
        }
    }

    /// S_x = N_a N_b for x = a⊗b, checked against every raw pair.
    pub fn s_matrices(&self) -> Result<SxSet> {
        let fa = &self.fusion;
        let r = fa.rank();
        let matrices: Vec<IntMatrix> = self
            .basis
            .iter()
            .map(|&(a, b)| fa.matrix(a) * fa.matrix(b))
            .collect();
        for c in 0..r {
            for d in 0..r {
                let nf = self.normal_form(c, d);
                let lhs = fa.matrix(c) * fa.matrix(d);
                if linear_combination((r, r), nf.iter().copied().zip(&matrices)) != lhs {
                    let dl = fa.diagram();
                    return Err(AdeError::Structure(format!(
                        "S matrix of {}⊗{} depends on the representative",
                        dl.label(c),
                        dl.label(d)
                    )));
                }
            }
        }
        Ok(SxSet {
            names: self.element_names(),
            dims: matrices.iter().map(IntMatrix::sum).collect(),
            matrices,
        })
    }

    pub fn to_json(&self) -> OcneanuJson {
        let n = self.dim();
        let d = self.fusion.diagram();
        OcneanuJson {
            basis: self.element_names(),
            ambichiral: self.ambichiral.iter().map(|&i| d.label(i)).collect(),
            structure: (0..n).map(|x| (0..n).map(|y| self.multiply_qs(x, y)).collect()).collect(),
            partition: self.partition(),
            left_generator: self.left_generator.clone(),
            right_generator: self.right_generator.clone(),
        }
    }
}

impl OcneanuGraph {
    /// Graphviz rendering. Solid edges come from the left generator, dashed
    /// ones from the right generator; weights above 1 become edge labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph ocneanu {\n");
        for (i, name) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{name}\"];");
        }
        for (m, style) in [(&self.solid, None), (&self.dashed, Some("dashed"))] {
            for x in 0..m.nrows() {
                for y in x..m.ncols() {
                    let w = m[(x, y)];
                    if w == 0 {
                        continue;
                    }
                    let mut attrs = Vec::new();
                    if let Some(s) = style {
                        attrs.push(format!("style={s}"));
                    }
                    if w > 1 {
                        attrs.push(format!("label=\"{w}\""));
                    }
                    let attrs = if attrs.is_empty() {
                        String::new()
                    } else {
                        format!(" [{}]", attrs.join(", "))
                    };
                    let _ = writeln!(out, "  n{x} -- n{y}{attrs};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A row space kept in reduced form, used to test membership incrementally.
struct IncrementalSpan {
    rows: Vec<(usize, Vec<Q>)>,
}

impl IncrementalSpan {
    fn new(_width: usize) -> Self {
        Self { rows: Vec::new() }
    }

    /// Adds `v`; returns whether it enlarged the span.
    fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DynkinDiagram;
    use crate::fusion::fusion_matrices;

    fn qsa(name: &str) -> QuantumSymmetryAlgebra {
        let d: DynkinDiagram = name.parse().unwrap();
        QuantumSymmetryAlgebra::from_fusion(&fusion_matrices(&d).unwrap()).unwrap()
    }

    fn vec_of(s: &QuantumSymmetryAlgebra, terms: &[((u32, u32), i64)]) -> Vec<i64> {
        let mut v = vec![0; s.dim()];
        for &((a, b), m) in terms {
            v[s.find(a, b).unwrap_or_else(|| panic!("{a}⊗{b} not canonical"))] += m;
        }
        v
    }

    fn nf(s: &QuantumSymmetryAlgebra, a: u32, b: u32) -> Vec<i64> {
        let d = s.fusion().diagram();
        s.normal_form(d.index_of_label(a).unwrap(), d.index_of_label(b).unwrap())
    }

    #[test]
    fn e6_basis_and_identities() {
        let s = qsa("E6");
        assert_eq!(s.dim(), 12);
        assert_eq!(
            s.element_names(),
            ["0⊗0", "3⊗0", "4⊗0", "1⊗0", "2⊗0", "5⊗0", "0⊗1", "0⊗2", "0⊗5", "1⊗1", "2⊗1", "5⊗1"]
        );
        assert_eq!(nf(&s, 3, 1), vec_of(&s, &[((0, 2), 1)]));
        assert_eq!(nf(&s, 4, 1), vec_of(&s, &[((0, 5), 1)]));
        assert_eq!(nf(&s, 5, 5), vec_of(&s, &[((1, 1), 1)]));
        assert_eq!(nf(&s, 2, 2), vec_of(&s, &[((1, 1), 1), ((5, 1), 1)]));
        assert_eq!(nf(&s, 0, 0), vec_of(&s, &[((0, 0), 1)]));
    }

    #[test]
    fn e6_products() {
        let s = qsa("E6");
        let x = |a, b| s.find(a, b).unwrap();
        assert_eq!(
            s.multiply_qs(x(2, 1), x(0, 1)),
            vec_of(&s, &[((1, 1), 1), ((2, 0), 1), ((5, 1), 1)])
        );
        assert_eq!(s.multiply_qs(x(5, 1), x(1, 0)), vec_of(&s, &[((2, 1), 1), ((0, 5), 1)]));
    }

    #[test]
    fn partition_and_chiral_subalgebras() {
        let s = qsa("E6");
        let p = s.partition();
        assert_eq!((p.a.len(), p.l.len(), p.r.len(), p.c.len()), (3, 3, 3, 3));
        for side in [&p.l, &p.r] {
            let span: Vec<usize> = p.a.iter().chain(side.iter()).copied().collect();
            for &x in &span {
                for &y in &span {
                    let prod = s.multiply_qs(x, y);
                    assert!(prod.iter().enumerate().all(|(z, &v)| v == 0 || span.contains(&z)));
                }
            }
        }
        // C is not closed
        let closed = p.c.iter().all(|&x| {
            p.c.iter().all(|&y| s.multiply_qs(x, y).iter().enumerate().all(|(z, &v)| v == 0 || p.c.contains(&z)))
        });
        assert!(!closed);
    }

    #[test]
    fn other_families() {
        let a = qsa("A11");
        assert_eq!(a.dim(), 11);
        let g = a.cayley_graph();
        assert_eq!(g.solid, g.dashed);
        assert_eq!(&g.solid, fusion_matrices(&"A11".parse().unwrap()).unwrap().diagram().adjacency());
        assert_eq!(qsa("E8").dim(), 32);
    }

    #[test]
    fn s_matrices_and_dims() {
        let s = qsa("E6");
        let sx = s.s_matrices().unwrap();
        assert_eq!(sx.dims, vec![6, 8, 6, 10, 14, 10, 10, 14, 10, 20, 28, 20]);
        assert_eq!(sx.matrices[0], IntMatrix::identity(6));
        assert_eq!(sx.dims.iter().map(|d| d * d).sum::<i64>(), 2512);
    }

    #[test]
    fn dot_output() {
        let dot = qsa("E6").cayley_graph().to_dot();
        assert!(dot.starts_with("graph ocneanu {"));
        assert!(dot.contains("label=\"2⊗1\""));
        assert!(dot.contains("style=dashed"));
    }
}
