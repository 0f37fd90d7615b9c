//! Plain-text tables.

/// Renders a grid of cells. The first row and column are headers. When
/// `block > 0`, an extra rule separates the first `block` data rows and
/// columns from the rest.
pub fn grid(cells: &[Vec<String>], block: usize) -> String {
    let ncols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| {
            cells
                .iter()
                .filter_map(|r| r.get(j))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let sep = |j: usize| -> &str {
        if j == 0 || (block > 0 && j == block) {
            " | "
        } else {
            "   "
        }
    };
    let mut lines = Vec::new();
    let mut total = 0;
    for (i, row) in cells.iter().enumerate() {
        let mut line = String::new();
        for (j, w) in widths.iter().enumerate() {
            let c = row.get(j).map_or("", String::as_str);
            line.push_str(&format!("{c:<w$}"));
            if j + 1 < ncols {
                line.push_str(sep(j));
            }
        }
        let line = line.trim_end().to_string();
        total = total.max(line.chars().count());
        lines.push(line);
        if i == 0 || (block > 0 && i == block) {
            lines.push(String::new());
        }
    }
    let rule = "-".repeat(total);
    lines
        .into_iter()
        .map(|l| if l.is_empty() { rule.clone() } else { l })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Renders `(label, multiplicity)` pairs as `a b_2 c`.
pub fn with_multiplicities<I, S>(terms: I) -> String
where
    I: IntoIterator<Item = (S, i64)>,
    S: std::fmt::Display,
{
    terms
        .into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|(l, m)| if m == 1 { l.to_string() } else { format!("{l}_{m}") })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_rendering() {
        assert_eq!(with_multiplicities([(1, 1), (3, 2), (5, 0), (7, 1)]), "1 3_2 7");
    }

    #[test]
    fn grid_rules() {
        let cells = vec![
            vec!["x".to_string(), "a".into(), "b".into()],
            vec!["a".to_string(), "1".into(), "2".into()],
            vec!["b".to_string(), "3".into(), "4".into()],
        ];
        let out = grid(&cells, 1);
        assert_eq!(out.lines().count(), 5);
        assert!(out.starts_with("x | a | b\n"));
    }
}
