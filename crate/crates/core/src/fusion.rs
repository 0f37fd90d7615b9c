//! Graph fusion algebras.
//!
//! For a diagram with adjacency `G` and origin `0`, the fusion matrix of
//! vertex `a` is the polynomial `p_a(G)` characterised by `p_a(G) e_0 = e_a`.
//! When the origin is a cyclic vector for `G` (A, E6, E7, E8) this determines
//! `p_a(G)` uniquely and it is obtained by an exact Krylov solve. For `D_n`
//! the zero eigenvalue is degenerate; the chain vertices are still
//! polynomials, and the fork pair is split off the zero eigenspace (see
//! [`split_fork`]).
//!
//! With `L_a = p_a(G)` acting on column vectors, `L_a e_b = Σ_c C_abc e_c`
//! and the fusion matrix is `N_a = L_aᵀ`, so `(N_a)_{bc} = C_abc`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{DynkinDiagram, Family};
use crate::error::{AdeError, Result};
use crate::exact::{self, q, QMatrix, Q};
use crate::matrix::{linear_combination, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionAlgebra {
    diagram: DynkinDiagram,
    matrices: Vec<IntMatrix>,
    structure: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraSet {
    pub subsets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionJson {
    pub labels: Vec<u32>,
    pub matrices: Vec<IntMatrix>,
    /// `table[a][b]` is the coefficient vector of σ_a σ_b (vertex order).
    pub table: Vec<Vec<Vec<i64>>>,
}

/// Why a candidate set of fusion matrices was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Rejection {
    Missing(usize),
    NonInteger(usize),
    Negative { a: usize, b: usize, c: usize, value: i64 },
    NotCommutative(usize, usize),
    NotAssociative(usize, usize),
    NoSymmetricNullVector,
}

impl Rejection {
    fn describe(&self, d: &DynkinDiagram) -> String {
        let l = |i: usize| d.label(i);
        match *self {
            Rejection::Missing(a) => format!("vertex {} is not reached from the origin", l(a)),
            Rejection::NonInteger(a) => format!("N_{} has non-integer entries", l(a)),
            Rejection::Negative { a, b, c, value } => format!(
                "lack of positivity, structure constant C_{{{},{},{}}} = {value}",
                l(a),
                l(b),
                l(c)
            ),
            Rejection::NotCommutative(a, b) => format!("N_{} and N_{} do not commute", l(a), l(b)),
            Rejection::NoSymmetricNullVector => {
                "the fork pair cannot be split: no symmetric null vector of G".to_string()
            }
            Rejection::NotAssociative(a, b) => {
                format!("N_{} N_{} is not Σ_c C_abc N_c", l(a), l(b))
            }
        }
    }
}

pub fn fusion_matrices(d: &DynkinDiagram) -> Result<FusionAlgebra> {
    FusionAlgebra::new(d)
}

impl FusionAlgebra {
    pub fn new(d: &DynkinDiagram) -> Result<Self> {
        let r = d.rank();
        if d.family() == Family::A {
            // on a path the recursion σ_{k+1} = σ_k σ_1 − σ_{k−1} is the whole story
            let g = d.adjacency();
            let mut ls = vec![IntMatrix::identity(r)];
            for k in 1..r {
                let next = if k == 1 { g.clone() } else { &(g * &ls[k - 1]) - &ls[k - 2] };
                ls.push(next);
            }
            return check_integral(d, ls)
                .map(|m| Self::from_matrices(d.clone(), m))
                .map_err(|rej| AdeError::Consistency(rej.describe(d)));
        }
        let g = exact::to_qmatrix(d.adjacency());
        let powers = matrix_powers(&g, r);
        let krylov = krylov_matrix(&powers);

        let mut lmats: Vec<Option<QMatrix>> = (0..r)
            .map(|a| polynomial_hitting(&krylov, &powers, &unit(r, a)))
            .collect();

        let no_hypergroup = |reason: String| AdeError::NoPositiveHypergroup {
            graph: d.name(),
            reason,
        };

        if d.family() == Family::D && lmats.iter().any(Option::is_none) {
            let (p, qv) = (r - 2, r - 1);
            let outcome = split_fork(d, &g, &krylov, &powers, &mut lmats, p, qv);
            return outcome.map_err(|rej| no_hypergroup(rej.describe(d)));
        }

        match validate(d, &lmats) {
            Ok(matrices) => Ok(Self::from_matrices(d.clone(), matrices)),
            Err(rej) if d.is(Family::E, 7) || d.family() == Family::D => {
                Err(no_hypergroup(rej.describe(d)))
            }
            Err(rej) => Err(AdeError::Consistency(rej.describe(d))),
        }
    }

    fn from_matrices(diagram: DynkinDiagram, matrices: Vec<IntMatrix>) -> Self {
        let r = diagram.rank();
        let mut structure = vec![0; r * r * r];
        for (a, m) in matrices.iter().enumerate() {
            for ((b, c), v) in m.entries() {
                structure[(a * r + b) * r + c] = v;
            }
        }
        Self {
            diagram,
            matrices,
            structure,
        }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, a: usize) -> &IntMatrix {
        &self.matrices[a]
    }

    /// C_abc, the coefficient of σ_c in σ_a σ_b.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> i64 {
        let r = self.rank();
        self.structure[(a * r + b) * r + c]
    }

    /// σ_a σ_b as a coefficient vector over vertices.
    pub fn multiply(&self, a: usize, b: usize) -> Vec<i64> {
        (0..self.rank())
            .map(|c| self.structure_constant(a, b, c))
            .collect()
    }

    /// Product of two elements given as coefficient vectors.
    pub fn multiply_vectors(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let r = self.rank();
        let mut out = vec![0; r];
        for (a, &xa) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (b, &yb) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                for (c, o) in out.iter_mut().enumerate() {
                    *o += xa * yb * self.structure_constant(a, b, c);
                }
            }
        }
        out
    }

    /// Σ_c coeffs[c] N_c.
    pub fn combine(&self, coeffs: &[i64]) -> IntMatrix {
        let r = self.rank();
        linear_combination((r, r), coeffs.iter().copied().zip(&self.matrices))
    }

    /// Dimension of span{I, G, G², …}.
    pub fn polynomial_span_dim(&self) -> usize {
        let r = self.rank();
        let g = self.diagram.adjacency();
        let rows: QMatrix = (0..r as u32)
            .map(|k| {
                g.pow(k)
                    .entries()
                    .map(|(_, v)| q(v))
                    .collect()
            })
            .collect();
        exact::rank(&rows)
    }

    pub fn fusion_closed_subsets(&self) -> SubalgebraSet {
        let r = self.rank();
        let mut subsets: Vec<Vec<usize>> = (0u32..1 << r)
            .filter(|mask| mask & 1 == 1)
            .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| self.is_closed(s))
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        SubalgebraSet { subsets }
    }

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        subset.iter().all(|&a| {
            subset.iter().all(|&b| {
                self.multiply(a, b)
                    .iter()
                    .enumerate()
                    .all(|(c, &v)| v == 0 || subset.contains(&c))
            })
        })
    }

    /// The subalgebra over which the tensor square is quotiented.
    pub fn ambichiral_subalgebra(&self) -> Result<Vec<usize>> {
        let d = &self.diagram;
        let undefined = || AdeError::AmbichiralUndefined(d.name());
        match d.family() {
            Family::A => Ok((0..d.rank()).collect()),
            Family::E if d.rank() == 6 => {
                let mut j: Vec<usize> = [0, 3, 4]
                    .iter()
                    .map(|&l| d.index_of_label(l).expect("E6 label"))
                    .collect();
                j.sort_unstable();
                if !self.is_closed(&j) {
                    return Err(AdeError::Consistency("{0,3,4} is not fusion closed".into()));
                }
                Ok(j)
            }
            Family::E if d.rank() == 8 => {
                let pairs: Vec<Vec<usize>> = self
                    .fusion_closed_subsets()
                    .subsets
                    .into_iter()
                    .filter(|s| s.len() == 2)
                    .collect();
                match pairs.as_slice() {
                    [one] => Ok(one.clone()),
                    _ => Err(AdeError::Consistency(format!(
                        "expected one 2-element closed subset of E8, found {}",
                        pairs.len()
                    ))),
                }
            }
            _ => Err(undefined()),
        }
    }

    /// Vertex order used for tables: ambichiral block first, then the rest,
    /// each sorted by label.
    pub fn block_order(&self) -> Vec<usize> {
        let d = &self.diagram;
        let by_label = d.indices_by_label();
        match self.ambichiral_subalgebra() {
            Ok(j) if j.len() < d.rank() => {
                let mut out: Vec<usize> = by_label.iter().copied().filter(|i| j.contains(i)).collect();
                out.extend(by_label.iter().copied().filter(|i| !j.contains(i)));
                out
            }
            _ => by_label,
        }
    }

    /// The multiplication table with cells listing labels with repetition,
    /// e.g. `0 2 2 4` for σ0 + 2σ2 + σ4.
    pub fn render_table(&self) -> String {
        let d = &self.diagram;
        let order = self.block_order();
        let block = self
            .ambichiral_subalgebra()
            .ok()
            .filter(|j| j.len() < d.rank())
            .map_or(0, |j| j.len());
        let cell = |a: usize, b: usize| -> String {
            let prod = self.multiply(a, b);
            let mut parts = Vec::new();
            for &c in &d.indices_by_label() {
                for _ in 0..prod[c] {
                    parts.push(d.label(c).to_string());
                }
            }
            parts.join(" ")
        };
        let mut grid: Vec<Vec<String>> = vec![std::iter::once(d.name())
            .chain(order.iter().map(|&i| d.label(i).to_string()))
            .collect()];
        for &a in &order {
            grid.push(
                std::iter::once(d.label(a).to_string())
                    .chain(order.iter().map(|&b| cell(a, b)))
                    .collect(),
            );
        }
        crate::render::grid(&grid, block)
    }

    pub fn to_json(&self) -> FusionJson {
        let r = self.rank();
        FusionJson {
            labels: self.diagram.labels().to_vec(),
            matrices: self.matrices.clone(),
            table: (0..r)
                .map(|a| (0..r).map(|b| self.multiply(a, b)).collect())
                .collect(),
        }
    }
}

fn unit(r: usize, a: usize) -> Vec<Q> {
    (0..r).map(|i| if i == a { Q::one() } else { Q::zero() }).collect()
}

fn matrix_powers(g: &QMatrix, count: usize) -> Vec<QMatrix> {
    let r = g.len();
    let mut out = vec![(0..r).map(|a| unit(r, a)).collect::<QMatrix>()];
    for k in 1..count {
        out.push(exact::qmul(&out[k - 1], g));
    }
    out
}

/// Columns G^k e_0.
fn krylov_matrix(powers: &[QMatrix]) -> QMatrix {
    let r = powers.len();
    (0..r)
        .map(|i| powers.iter().map(|p| p[i][0].clone()).collect())
        .collect()
}

/// A polynomial p(G) with p(G) e_0 = target, if the target lies in the
/// Krylov space of the origin.
fn polynomial_hitting(krylov: &QMatrix, powers: &[QMatrix], target: &[Q]) -> Option<QMatrix> {
    let coeffs = exact::solve(krylov, target)?;
    let r = krylov.len();
    let mut m = vec![vec![Q::zero(); r]; r];
    for (c, p) in coeffs.iter().zip(powers) {
        if c.is_zero() {
            continue;
        }
        for (mrow, prow) in m.iter_mut().zip(p) {
            for (x, y) in mrow.iter_mut().zip(prow) {
                *x += c * y;
            }
        }
    }
    Some(m)
}

/// Splits the fork pair `p, q` of `D_n`.
///
/// `M = p(G)` with `M e_0 = e_p + e_q` is known. The difference
/// `X = L_p − L_q` must map `e_0` to `u = e_p − e_q`, commute with `G` and
/// vanish off the zero eigenspace, which is spanned by `u` and the symmetric
/// null vector `ψ` (ψ_0 = 1). This leaves `X = uψᵀ + s ψuᵀ + c uuᵀ`; the
/// candidates are tried in a fixed order and the first one producing a
/// positive integral commutative associative algebra is kept.
fn split_fork(
    d: &DynkinDiagram,
    g: &QMatrix,
    krylov: &QMatrix,
    powers: &[QMatrix],
    lmats: &mut [Option<QMatrix>],
    p: usize,
    qv: usize,
) -> std::result::Result<FusionAlgebra, Rejection> {
    let r = d.rank();
    if let Some(a) = (0..r).find(|&a| a != p && a != qv && lmats[a].is_none()) {
        return Err(Rejection::Missing(a));
    }
    let target: Vec<Q> = (0..r)
        .map(|i| if i == p || i == qv { Q::one() } else { Q::zero() })
        .collect();
    let m = polynomial_hitting(krylov, powers, &target).ok_or(Rejection::Missing(p))?;

    let mut constraint = g.clone();
    constraint.push((0..r).map(|i| if i == p { q(1) } else if i == qv { q(-1) } else { q(0) }).collect());
    let psi = exact::nullspace(&constraint, r)
        .into_iter()
        .find(|v| !v[0].is_zero())
        .map(|v| {
            let v0 = v[0].clone();
            v.into_iter().map(|x| x / &v0).collect::<Vec<Q>>()
        })
        .ok_or(Rejection::NoSymmetricNullVector)?;
    let u: Vec<Q> = (0..r)
        .map(|i| if i == p { q(1) } else if i == qv { q(-1) } else { q(0) })
        .collect();

    let half = Q::new(BigInt::from(1), BigInt::from(2));
    let mut last = Rejection::Missing(p);
    for s in [-1i64, 1] {
        for c in [q(-1), -half.clone(), q(0), half.clone(), q(1)] {
            let x: QMatrix = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| &u[i] * &psi[j] + q(s) * &psi[i] * &u[j] + &c * &u[i] * &u[j])
                        .collect()
                })
                .collect();
            let lp = combine2(&m, &x, &half, &half);
            let lq = combine2(&m, &x, &half, &-half.clone());
            let mut cand = lmats.to_vec();
            cand[p] = Some(lp);
            cand[qv] = Some(lq);
            match validate(d, &cand) {
                Ok(matrices) => return Ok(FusionAlgebra::from_matrices(d.clone(), matrices)),
                Err(rej) => last = rej,
            }
        }
    }
    Err(last)
}

fn combine2(a: &QMatrix, b: &QMatrix, x: &Q, y: &Q) -> QMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(u, v)| x * u + y * v).collect())
        .collect()
}

/// Checks integrality, positivity, commutativity and associativity, and
/// returns the fusion matrices `N_a = L_aᵀ`.
fn validate(d: &DynkinDiagram, lmats: &[Option<QMatrix>]) -> std::result::Result<Vec<IntMatrix>, Rejection> {
    let mut ls = Vec::with_capacity(lmats.len());
    for (a, l) in lmats.iter().enumerate() {
        let l = l.as_ref().ok_or(Rejection::Missing(a))?;
        ls.push(exact::to_intmatrix(l).ok_or(Rejection::NonInteger(a))?);
    }
    check_integral(d, ls)
}

/// Checks positivity, commutativity and associativity of integral `L_a`.
fn check_integral(d: &DynkinDiagram, ls: Vec<IntMatrix>) -> std::result::Result<Vec<IntMatrix>, Rejection> {
    let r = d.rank();
    let ns: Vec<IntMatrix> = ls.iter().map(IntMatrix::transpose).collect();
    for (a, n) in ns.iter().enumerate() {
        if let Some(((b, c), value)) = n.entries().find(|(_, v)| *v < 0) {
            return Err(Rejection::Negative { a, b, c, value });
        }
    }
    for a in 0..r {
        for b in 0..a {
            if ns[a].row(b) != ns[b].row(a) || &ns[a] * &ns[b] != &ns[b] * &ns[a] {
                return Err(Rejection::NotCommutative(a, b));
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            let rhs = linear_combination((r, r), ns[a].row(b).iter().copied().zip(&ns));
            if &ns[a] * &ns[b] != rhs {
                return Err(Rejection::NotAssociative(a, b));
            }
        }
    }
    debug_assert!(ns[0] == IntMatrix::identity(r) && ns.get(1).is_none_or(|n1| n1 == d.adjacency()));
    Ok(ns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn algebra(name: &str) -> Result<FusionAlgebra> {
        fusion_matrices(&name.parse::<DynkinDiagram>().unwrap())
    }

    fn idx(fa: &FusionAlgebra, label: u32) -> usize {
        fa.diagram().index_of_label(label).unwrap()
    }

    #[test]
    fn e6_worked_products() {
        let fa = algebra("E6").unwrap();
        let by = |l| idx(&fa, l);
        let mut expect = vec![0; 6];
        expect[by(0)] = 1;
        expect[by(2)] = 2;
        expect[by(4)] = 1;
        assert_eq!(fa.multiply(by(2), by(2)), expect);
        let mut expect = vec![0; 6];
        for l in [1, 3, 5] {
            expect[by(l)] = 1;
        }
        assert_eq!(fa.multiply(by(1), by(2)), expect);
        assert_eq!(fa.polynomial_span_dim(), 6);
    }

    #[test]
    fn e6_polynomials() {
        // σ2 = σ1² − 1, σ4 = σ1⁴ − 4σ1² + 2, σ5 = σ1σ4, σ3 = −σ1(σ4 − σ1² + 2)
        let fa = algebra("E6").unwrap();
        let n = |l| fa.matrix(idx(&fa, l)).clone();
        let g = fa.diagram().adjacency().clone();
        let i = IntMatrix::identity(6);
        let g2 = &g * &g;
        assert_eq!(n(2), &g2 - &i);
        let n4 = &(&g2 * &g2 - g2.scale(4)) + &i.scale(2);
        assert_eq!(n(4), n4);
        assert_eq!(n(5), &g * &n4);
        assert_eq!(n(3), (&g * &(&(&n4 - &g2) + &i.scale(2))).scale(-1));
    }

    #[test]
    fn a3_relation() {
        let fa = algebra("A3").unwrap();
        let s = fa.matrix(1);
        assert_eq!(s * s, fa.matrix(0) + fa.matrix(2));
    }

    #[test]
    fn rejected_families() {
        for name in ["E7", "D5", "D7"] {
            match algebra(name) {
                Err(AdeError::NoPositiveHypergroup { reason, .. }) => assert!(!reason.is_empty()),
                other => panic!("{name}: {other:?}"),
            }
        }
        let err = algebra("E7").unwrap_err().to_string();
        assert!(err.contains("positiv"), "{err}");
    }

    #[test]
    fn supported_families_build() {
        for name in ["A1", "A2", "A11", "D4", "D6", "D8", "D10", "E6", "E8"] {
            let fa = algebra(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(fa.matrix(0), &IntMatrix::identity(fa.rank()));
            if fa.rank() > 1 {
                assert_eq!(fa.matrix(1), fa.diagram().adjacency());
            }
        }
    }

    #[test]
    fn closed_subsets() {
        let fa = algebra("E6").unwrap();
        let subs = fa.fusion_closed_subsets().subsets;
        let j = fa.ambichiral_subalgebra().unwrap();
        assert!(subs.contains(&j));
        assert!(subs.contains(&vec![0]));
        assert!(subs.contains(&(0..6).collect()));
        let labels: Vec<u32> = j.iter().map(|&i| fa.diagram().label(i)).collect();
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 3, 4]);

        let e8 = algebra("E8").unwrap();
        let pairs = e8.fusion_closed_subsets().subsets.into_iter().filter(|s| s.len() == 2).count();
        assert_eq!(pairs, 1);
        assert_eq!(e8.ambichiral_subalgebra().unwrap().len(), 2);
        assert!(matches!(algebra("D6").unwrap().ambichiral_subalgebra(), Err(AdeError::AmbichiralUndefined(_))));
    }

    #[test]
    fn block_split() {
        // products of {0,3,4} with {1,2,5} stay in {1,2,5}
        let fa = algebra("E6").unwrap();
        let j = fa.ambichiral_subalgebra().unwrap();
        for &a in &j {
            for b in (0..6).filter(|b| !j.contains(b)) {
                let p = fa.multiply(a, b);
                assert!(j.iter().all(|&c| p[c] == 0));
            }
        }
    }
}
