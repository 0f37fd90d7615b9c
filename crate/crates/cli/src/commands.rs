use std::fmt::Write;

use ade_core::essential::{essential_matrices, path_counts};
use ade_core::fusion::fusion_matrices;
use ade_core::modular::{self, ModularRep};
use ade_core::ocneanu::QuantumSymmetryAlgebra;
use ade_core::path_model::{PathModel, DEFAULT_LENGTH_CAP};
use ade_core::verify::verify_e6;
use ade_core::{AdeError, DynkinDiagram, Family, IntMatrix};
use serde_json::{json, Value};

use crate::{Cli, Failure};

pub struct Report {
    pub payload: Value,
    pub table: String,
    pub dot: Option<String>,
    /// False when the command ran but reported a failed check.
    pub success: bool,
}

impl Report {
    fn ok(payload: Value, table: String) -> Self {
        Self {
            payload,
            table,
            dot: None,
            success: true,
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn vertex(d: &DynkinDiagram, text: &str) -> Result<usize, Failure> {
    let label: u32 = text
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{text:?} is not a vertex label")))?;
    d.index_of_label(label)
        .ok_or_else(|| Failure::Usage(format!("{} has no vertex labelled {label}", d.name())))
}

/// "0x1", "0⊗1" or "0 x 1".
fn pair(d: &DynkinDiagram, text: &str) -> Result<(usize, usize), Failure> {
    let parts: Vec<&str> = text.split(['x', 'X', '⊗']).collect();
    match parts.as_slice() {
        [a, b] => Ok((vertex(d, a)?, vertex(d, b)?)),
        _ => Err(Failure::Usage(format!("--element expects \"a x b\", got {text:?}"))),
    }
}

fn titled(out: &mut String, title: &str, m: &IntMatrix) {
    let _ = writeln!(out, "{title}");
    out.push_str(&m.render_dotted());
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out.push('\n');
}

fn by_label<T: ToString>(d: &DynkinDiagram, values: &[T]) -> String {
    d.indices_by_label()
        .iter()
        .map(|&i| values[i].to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Vertex labels in storage order, which is the column order of every matrix.
fn columns(d: &DynkinDiagram) -> String {
    d.labels().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn label_list(d: &DynkinDiagram, indices: &[usize]) -> Vec<u32> {
    let mut labels: Vec<u32> = indices.iter().map(|&i| d.label(i)).collect();
    labels.sort_unstable();
    labels
}

pub fn fusion(d: &DynkinDiagram, cli: &Cli) -> Result<Report, Failure> {
    let fa = fusion_matrices(d)?;
    if let Some(e) = &cli.element {
        let a = vertex(d, e)?;
        let mut table = String::new();
        titled(&mut table, &format!("N_{} (rows and columns: {})", d.label(a), columns(d)), fa.matrix(a));
        let payload = json!({ "label": d.label(a), "matrix": fa.matrix(a) });
        return Ok(Report::ok(payload, table));
    }
    let ambichiral = fa.ambichiral_subalgebra().ok().map(|j| label_list(d, &j));
    let subsets: Vec<Vec<u32>> = fa.fusion_closed_subsets().subsets.iter().map(|s| label_list(d, s)).collect();
    let payload = json!({
        "diagram": d.to_json(),
        "fusion": fa.to_json(),
        "closed_subsets": subsets,
        "ambichiral": ambichiral,
    });
    Ok(Report::ok(payload, fa.render_table()))
}

pub fn essential(d: &DynkinDiagram, cli: &Cli) -> Result<Report, Failure> {
    let fa = fusion_matrices(d)?;
    let es = essential_matrices(&fa)?;
    if let Some(e) = &cli.element {
        let a = vertex(d, e)?;
        let mut table = String::new();
        titled(
            &mut table,
            &format!("E_{} (rows n = 0..{}, columns: {})", d.label(a), es.rows() - 1, columns(d)),
            es.matrix(a),
        );
        let payload = json!({ "label": d.label(a), "matrix": es.matrix(a) });
        return Ok(Report::ok(payload, table));
    }
    let reduced = match fa.ambichiral_subalgebra() {
        Ok(j) => Some(es.reduced_essential(&j)?),
        Err(_) => None,
    };
    let dims = es.esspath_dims();
    let para = es.para_invariants();
    let mut table = format!("columns: {}\n\n", columns(d));
    for a in d.indices_by_label() {
        titled(&mut table, &format!("E_{}", d.label(a)), es.matrix(a));
    }
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let _ = writeln!(table, "d_n: {}", join(&dims.dims));
    let _ = writeln!(table, "sum d_n = {}, sum d_n^2 = {}", dims.sum, dims.sum_of_squares);
    let _ = writeln!(table, "I(n): {}\n", join(&para.totals));
    table.push_str(&es.render_left_table()?);
    let payload = json!({
        "essential": es.to_json(reduced.as_ref()),
        "dimensions": dims,
        "para_invariants": para,
        "left_decompositions": es.induction_table(),
    });
    Ok(Report::ok(payload, table))
}

pub fn paths(d: &DynkinDiagram, cli: &Cli) -> Result<Report, Failure> {
    let origin = match cli.origin {
        Some(l) => vertex(d, &l.to_string())?,
        None => 0,
    };
    let default_len = (d.coxeter_number() as usize).saturating_sub(2).min(DEFAULT_LENGTH_CAP);
    let length = cli.length.unwrap_or(default_len);
    let counts = path_counts(d, origin, length)?;
    let model = PathModel::new(d);
    let essential: Vec<_> = (0..=length)
        .map(|p| model.essential_subspace(origin, p))
        .collect::<ade_core::Result<_>>()?;

    let mut table = d.ascii_picture();
    let _ = writeln!(table, "\npaths from {} (columns by vertex label {})", d.label(origin), by_label(d, d.labels()));
    let _ = writeln!(table, "n  | all paths | essential");
    for (c, e) in counts.iter().zip(&essential) {
        let _ = writeln!(
            table,
            "{:<2} | {} ({}) | {} ({})",
            c.length,
            by_label(d, &c.counts),
            c.dimension,
            by_label(d, &e.endpoint_dims),
            e.dimension
        );
    }
    let payload = json!({
        "diagram": d.to_json(),
        "origin": d.label(origin),
        "counts": counts,
        "essential": essential,
    });
    Ok(Report::ok(payload, table))
}

fn qsa_for(d: &DynkinDiagram) -> Result<(QuantumSymmetryAlgebra, ade_core::FusionAlgebra), Failure> {
    let fa = fusion_matrices(d)?;
    let qsa = QuantumSymmetryAlgebra::from_fusion(&fa)?;
    Ok((qsa, fa))
}

fn element_index(qsa: &QuantumSymmetryAlgebra, d: &DynkinDiagram, text: &str) -> Result<usize, Failure> {
    let (a, b) = pair(d, text)?;
    let nf = qsa.normal_form(a, b);
    let single = nf.iter().filter(|&&c| c != 0).count() == 1 && nf.iter().all(|&c| c == 0 || c == 1);
    match nf.iter().position(|&c| c == 1) {
        Some(x) if single => Ok(x),
        _ => Err(Failure::Usage(format!(
            "{}⊗{} is not a single quantum symmetry; it equals {}",
            d.label(a),
            d.label(b),
            combination(qsa, &nf)
        ))),
    }
}

fn combination(qsa: &QuantumSymmetryAlgebra, v: &[i64]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(x, &c)| if c == 1 { qsa.element_name(x) } else { format!("{c}·{}", qsa.element_name(x)) })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn ocneanu(d: &DynkinDiagram, cli: &Cli) -> Result<Report, Failure> {
    let (qsa, fa) = qsa_for(d)?;
    let sx = qsa.s_matrices()?;
    let graph = qsa.cayley_graph();
    if let Some(e) = &cli.element {
        let x = element_index(&qsa, d, e)?;
        let mut table = String::new();
        titled(&mut table, &format!("S_{}", qsa.element_name(x)), &sx.matrices[x]);
        let left = qsa.multiply_vectors(&unit(qsa.dim(), x), qsa.left_generator());
        let right = qsa.multiply_vectors(&unit(qsa.dim(), x), qsa.right_generator());
        let _ = writeln!(table, "{} · left generator = {}", qsa.element_name(x), combination(&qsa, &left));
        let _ = writeln!(table, "{} · right generator = {}", qsa.element_name(x), combination(&qsa, &right));
        let payload = json!({
            "element": qsa.element_name(x),
            "chirality": format!("{:?}", qsa.chirality(x)),
            "s_matrix": sx.matrices[x],
            "dimension": sx.dims[x],
            "times_left": left,
            "times_right": right,
        });
        let mut report = Report::ok(payload, table);
        report.dot = Some(graph.to_dot());
        return Ok(report);
    }
    let mut table = String::new();
    let _ = writeln!(
        table,
        "{name} ⊗_J {name}, J = {:?}, dimension {}",
        label_list(d, qsa.ambichiral()),
        qsa.dim(),
        name = d.name()
    );
    let _ = writeln!(table, "x   element  part  d_x");
    for x in 0..qsa.dim() {
        let _ = writeln!(table, "{x:<3} {:<8} {:<5} {}", qsa.element_name(x), format!("{:?}", qsa.chirality(x)), sx.dims[x]);
    }
    for (title, m) in [("solid edges (left generator)", &graph.solid), ("dashed edges (right generator)", &graph.dashed)] {
        let _ = writeln!(table, "\n{title}");
        for x in 0..qsa.dim() {
            for y in x..qsa.dim() {
                let w = m[(x, y)].max(m[(y, x)]);
                if w > 0 {
                    let weight = if w > 1 { format!(" ({w})") } else { String::new() };
                    let _ = writeln!(table, "  {} - {}{weight}", graph.nodes[x], graph.nodes[y]);
                }
            }
        }
    }
    let payload = json!({
        "diagram": d.name(),
        "ambichiral": label_list(d, fa.ambichiral_subalgebra()?.as_slice()),
        "algebra": qsa.to_json(),
        "graph": graph,
        "s_matrices": sx,
    });
    Ok(Report {
        payload,
        table,
        dot: Some(graph.to_dot()),
        success: true,
    })
}

pub fn toric(d: &DynkinDiagram, cli: &Cli) -> Result<Report, Failure> {
    let (qsa, fa) = qsa_for(d)?;
    let es = essential_matrices(&fa)?;
    let reduced = es.reduced_essential(qsa.ambichiral())?;
    let ts = modular::toric_matrices(&es, &reduced, &qsa)?;
    if let Some(e) = &cli.element {
        let (a, b) = pair(d, e)?;
        let w = es.matrix(a) * &reduced.matrices[b].transpose();
        let name = format!("{}⊗{}", d.label(a), d.label(b));
        let nf = qsa.normal_form(a, b);
        let mut table = String::new();
        let canonical = combination(&qsa, &nf);
        let title = if canonical == name { format!("W_{name}") } else { format!("W_{name} = W of {canonical}") };
        titled(&mut table, &title, &w);
        let payload = json!({ "element": name, "normal_form": nf, "matrix": w });
        return Ok(Report::ok(payload, table));
    }
    let mut table = String::new();
    for (name, m) in ts.names.iter().zip(&ts.matrices) {
        titled(&mut table, &format!("W_{name}"), m);
    }
    Ok(Report::ok(to_value(&ts), table))
}

pub fn modular_check(d: &DynkinDiagram, cli: &Cli) -> Result<Report, Failure> {
    let n = d.coxeter_number();
    let rep = ModularRep::new(n);
    let rel = rep.relations(cli.tol);
    let relations_hold = rel.s2 < cli.tol && rel.s4 < cli.tol && rel.st3 < cli.tol && rel.t_order.is_some();
    let mut table = String::new();
    let _ = writeln!(table, "N = {n}, characters χ1..χ{}", n - 1);
    let _ = writeln!(table, "|S^2 + 1|   = {:.3e}", rel.s2);
    let _ = writeln!(table, "|S^4 - 1|   = {:.3e}", rel.s4);
    let _ = writeln!(table, "|(ST)^3 - 1| = {:.3e}", rel.st3);
    match rel.t_order {
        Some(k) => _ = writeln!(table, "T has order {k}"),
        None => _ = writeln!(table, "T has no order up to {}", 8 * n),
    }

    let mut payload = json!({ "n": n, "tolerance": cli.tol, "relations": rel, "relations_hold": relations_hold });
    match toric_for_modular(d) {
        Ok(ts) => {
            let report = modular::modular_invariance_check(&ts, &rep, cli.tol);
            let _ = writeln!(table, "\nelement  |[W,S]|     |[W,T]|     invariant");
            for r in &report {
                let _ = writeln!(
                    table,
                    "{:<8} {:<11.3e} {:<11.3e} {}",
                    r.element,
                    r.s_commutator,
                    r.t_commutator,
                    if r.invariant { "yes" } else { "no" }
                );
            }
            let z = modular::partition_function(&ts.matrices[0]);
            let _ = writeln!(table, "\nZ = {}", z.display);
            for w in &z.warnings {
                let _ = writeln!(table, "warning: {w}");
            }
            payload["invariance"] = to_value(&report);
            payload["partition_function"] = to_value(&z);
        }
        Err(e @ AdeError::AmbichiralUndefined(_)) => {
            let _ = writeln!(table, "\nno toric matrices: {e}");
            payload["invariance"] = Value::Null;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Report {
        payload,
        table,
        dot: None,
        success: relations_hold,
    })
}

fn toric_for_modular(d: &DynkinDiagram) -> ade_core::Result<ade_core::ToricSet> {
    let fa = fusion_matrices(d)?;
    let qsa = QuantumSymmetryAlgebra::from_fusion(&fa)?;
    let es = essential_matrices(&fa)?;
    let reduced = es.reduced_essential(qsa.ambichiral())?;
    modular::toric_matrices(&es, &reduced, &qsa)
}

pub fn verify_paper(d: &DynkinDiagram) -> Result<Report, Failure> {
    if !d.is(Family::E, 6) {
        return Err(Failure::Domain(AdeError::UnsupportedDiagram(format!(
            "golden data exist only for E6, not {}",
            d.name()
        ))));
    }
    let checks = verify_e6()?;
    let passed = checks.iter().filter(|c| c.passed).count();
    let mut table = String::new();
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.passed || c.detail.is_empty() {
            let _ = writeln!(table, "{status} {}", c.name);
        } else {
            let _ = writeln!(table, "{status} {}: {}", c.name, c.detail);
        }
    }
    let _ = writeln!(table, "\n{passed}/{} checks passed", checks.len());
    let success = passed == checks.len();
    Ok(Report {
        payload: json!({ "checks": checks, "passed": passed, "total": checks.len() }),
        table,
        dot: None,
        success,
    })
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> DynkinDiagram {
        "E6".parse().unwrap()
    }

    #[test]
    fn pair_spellings() {
        let d = e6();
        let want = (d.index_of_label(2).unwrap(), d.index_of_label(1).unwrap());
        for text in ["2x1", "2⊗1", "2 x 1", "2X1"] {
            assert_eq!(pair(&d, text).ok(), Some(want), "{text}");
        }
        assert!(matches!(pair(&d, "2x1x0"), Err(Failure::Usage(_))));
        assert!(matches!(pair(&d, "2x9"), Err(Failure::Usage(_))));
    }

    #[test]
    fn combination_names() {
        let fa = fusion_matrices(&e6()).unwrap();
        let qsa = QuantumSymmetryAlgebra::from_fusion(&fa).unwrap();
        let d = e6();
        let i = |l| d.index_of_label(l).unwrap();
        assert_eq!(combination(&qsa, &qsa.normal_form(i(2), i(2))), "1⊗1 + 5⊗1");
        assert_eq!(combination(&qsa, &vec![0; qsa.dim()]), "0");
        assert_eq!(element_index(&qsa, &d, "3x1").ok(), qsa.find(0, 2));
    }
}
