//! Published E6 tables, transcribed in vertex (display) order.
//!
//! Matrix rows use `.` for zero. Vertex labels in display order are
//! 0, 1, 2, 5, 4, 3. Table cells list labels (or `ab` for a⊗b) separated by
//! spaces, with `_m` marking multiplicity `m`.

use crate::matrix::IntMatrix;

/// Label order used by the printed fusion and decomposition tables.
pub const TABLE_ORDER: [u32; 6] = [0, 3, 4, 1, 2, 5];

pub const GRAPH: [&str; 6] = [".1....", "1.1...", ".1.1.1", "..1.1.", "...1..", "..1..."];

/// (label, rows)
pub const FUSION: [(u32, [&str; 6]); 6] = [
    (0, ["1.....", ".1....", "..1...", "...1..", "....1.", ".....1"]),
    (1, [".1....", "1.1...", ".1.1.1", "..1.1.", "...1..", "..1..."]),
    (2, ["..1...", ".1.1.1", "1.2.1.", ".1.1.1", "..1...", ".1.1.."]),
    (5, ["...1..", "..1.1.", ".1.1.1", "1.1...", ".1....", "..1..."]),
    (4, ["....1.", "...1..", "..1...", ".1....", "1.....", ".....1"]),
    (3, [".....1", "..1...", ".1.1..", "..1...", ".....1", "1...1."]),
];

/// Rows and columns in [`TABLE_ORDER`]; each cell lists product labels with
/// repetition.
pub const FUSION_TABLE: [[&str; 6]; 6] = [
    ["0", "3", "4", "1", "2", "5"],
    ["3", "04", "3", "2", "15", "2"],
    ["4", "3", "0", "5", "2", "1"],
    ["1", "2", "5", "02", "135", "24"],
    ["2", "15", "2", "135", "0224", "135"],
    ["5", "2", "1", "24", "135", "02"],
];

pub const ESSENTIAL: [(u32, [&str; 11]); 6] = [
    (0, ["1.....", ".1....", "..1...", "...1.1", "..1.1.", ".1.1..", "1.1...", ".1...1", "..1...", "...1..", "....1."]),
    (1, [".1....", "1.1...", ".1.1.1", "..2.1.", ".1.2.1", "1.2.1.", ".2.1.1", "1.2...", ".1.1.1", "..1.1.", "...1.."]),
    (2, ["..1...", ".1.1.1", "1.2.1.", ".2.2.1", "1.3.1.", ".2.2.2", "1.3.1.", ".2.2.1", "1.2.1.", ".1.1.1", "..1..."]),
    (5, ["...1..", "..1.1.", ".1.1.1", "1.2...", ".2.1.1", "1.2.1.", ".1.2.1", "..2.1.", ".1.1.1", "1.1...", ".1...."]),
    (4, ["....1.", "...1..", "..1...", ".1...1", "1.1...", ".1.1..", "..1.1.", "...1.1", "..1...", ".1....", "1....."]),
    (3, [".....1", "..1...", ".1.1..", "1.1.1.", ".1.1.1", "..2...", ".1.1.1", "1.1.1.", ".1.1..", "..1...", ".....1"]),
];

pub const REDUCED_ESSENTIAL: [(u32, [&str; 11]); 6] = [
    (0, ["1.....", "......", "......", ".....1", "....1.", "......", "1.....", ".....1", "......", "......", "....1."]),
    (1, ["......", "1.....", ".....1", "....1.", ".....1", "1...1.", ".....1", "1.....", ".....1", "....1.", "......"]),
    (2, ["......", ".....1", "1...1.", ".....1", "1...1.", ".....2", "1...1.", ".....1", "1...1.", ".....1", "......"]),
    (5, ["......", "....1.", ".....1", "1.....", ".....1", "1...1.", ".....1", "....1.", ".....1", "1.....", "......"]),
    (4, ["....1.", "......", "......", ".....1", "1.....", "......", "....1.", ".....1", "......", "......", "1....."]),
    (3, [".....1", "......", "......", "1...1.", ".....1", "......", ".....1", "1...1.", "......", "......", ".....1"]),
];

pub const S51: [&str; 6] = ["..1.1.", ".1.2.1", "1.3.1.", ".2.1.1", "1.1...", ".1.1.1"];

/// Toric matrices keyed by the pair of labels (a, b) used in their caption.
pub const TORIC: [((u32, u32), [&str; 11]); 14] = [
    ((0, 0), ["1.....1....", "...........", "...........", "...1...1...", "....1.....1", "...........", "1.....1....", "...1...1...", "...........", "...........", "....1.....1"]),
    ((1, 1), ["...........", ".1...1.1...", "..1.1.1.1..", "...1.1...1.", "..1.1.1.1..", ".1.1.2.1.1.", "..1.1.1.1..", ".1...1.1...", "..1.1.1.1..", "...1.1...1.", "..........."]),
    ((3, 0), ["...1...1...", "...........", "...........", "1...1.1...1", "...1...1...", "...........", "...1...1...", "1...1.1...1", "...........", "...........", "...1...1..."]),
    ((2, 1), ["...........", "..1.1.1.1..", ".1.1.2.1.1.", "..1.1.1.1..", ".1.1.2.1.1.", "..2.2.2.2..", ".1.1.2.1.1.", "..1.1.1.1..", ".1.1.2.1.1.", "..1.1.1.1..", "..........."]),
    ((4, 0), ["....1.....1", "...........", "...........", "...1...1...", "1.....1....", "...........", "....1.....1", "...1...1...", "...........", "...........", "1.....1...."]),
    ((5, 1), ["...........", "...1.1...1.", "..1.1.1.1..", ".1...1.1...", "..1.1.1.1..", ".1.1.2.1.1.", "..1.1.1.1..", "...1.1...1.", "..1.1.1.1..", ".1...1.1...", "..........."]),
    ((1, 0), ["...........", "1.....1....", "...1...1...", "....1.....1", "...1...1...", "1...1.1...1", "...1...1...", "1.....1....", "...1...1...", "....1.....1", "..........."]),
    ((0, 1), [".1...1.1...", "...........", "...........", "..1.1.1.1..", "...1.1...1.", "...........", ".1...1.1...", "..1.1.1.1..", "...........", "...........", "...1.1...1."]),
    ((2, 0), ["...........", "...1...1...", "1...1.1...1", "...1...1...", "1...1.1...1", "...2...2...", "1...1.1...1", "...1...1...", "1...1.1...1", "...1...1...", "..........."]),
    ((0, 2), ["..1.1.1.1..", "...........", "...........", ".1.1.2.1.1.", "..1.1.1.1..", "...........", "..1.1.1.1..", ".1.1.2.1.1.", "...........", "...........", "..1.1.1.1.."]),
    ((3, 1), ["..1.1.1.1..", "...........", "...........", ".1.1.2.1.1.", "..1.1.1.1..", "...........", "..1.1.1.1..", ".1.1.2.1.1.", "...........", "...........", "..1.1.1.1.."]),
    ((5, 0), ["...........", "....1.....1", "...1...1...", "1.....1....", "...1...1...", "1...1.1...1", "...1...1...", "....1.....1", "...1...1...", "1.....1....", "..........."]),
    ((0, 5), ["...1.1...1.", "...........", "...........", "..1.1.1.1..", ".1...1.1...", "...........", "...1.1...1.", "..1.1.1.1..", "...........", "...........", ".1...1.1..."]),
    ((4, 1), ["...1.1...1.", "...........", "...........", "..1.1.1.1..", ".1...1.1...", "...........", "...1.1...1.", "..1.1.1.1..", "...........", "...........", ".1...1.1..."]),
];

/// E_a Ẽ_b over A11, rows/columns in [`TABLE_ORDER`]. The printed cell at
/// (3, 2) reads `1 3 5 7_2 9`; the transposed cell and the E matrices give
/// `1 3 5_2 7 9`, which is what is stored here.
pub const LEFT_TABLE: [[&str; 6]; 6] = [
    ["0 6", "3 7", "4 10", "1 5 7", "2 4 6 8", "3 5 9"],
    ["3 7", "0 4 6 10", "3 7", "2 4 6 8", "1 3 5_2 7 9", "2 4 6 8"],
    ["4 10", "3 7", "0 6", "3 5 9", "2 4 6 8", "1 5 7"],
    ["1 5 7", "2 4 6 8", "3 5 9", "0 2 4 6_2 8", "1 3_2 5_2 7_2 9", "2 4_2 6 8 10"],
    ["2 4 6 8", "1 3 5_2 7 9", "2 4 6 8", "1 3_2 5_2 7_2 9", "0 2_2 4_3 6_3 8_2 10", "1 3_2 5_2 7_2 9"],
    ["3 5 9", "2 4 6 8", "1 5 7", "2 4_2 6 8 10", "1 3_2 5_2 7_2 9", "0 2 4 6_2 8"],
];

/// The cell as printed at (row 3, column 2).
pub const LEFT_TABLE_PRINTED_3_2: &str = "1 3 5 7_2 9";

/// Ẽ_a E_b over the quantum symmetries; tokens `ab` stand for a⊗b.
pub const RIGHT_TABLE: [[&str; 6]; 6] = [
    ["00 11", "30 21", "40 51", "10 01 21", "20 11 31 51", "50 21 41"],
    ["30 21", "00 40 11 51", "30 21", "20 11 31 51", "10 50 01 21_2 41", "20 11 31 51"],
    ["40 51", "30 21", "00 11", "50 21 41", "20 11 31 51", "10 01 21"],
    ["10 01 21", "20 11 31 51", "50 21 41", "00 20 11_2 31 51", "10 30 50 01 21_3 41", "20 40 11 31 51_2"],
    ["20 11 31 51", "10 50 01 21_2 41", "20 11 31 51", "10 30 50 01 21_3 41", "00 20_2 40 11_3 31_2 51_3", "10 30 50 01 21_3 41"],
    ["50 21 41", "20 11 31 51", "10 01 21", "20 40 11 31 51_2", "10 30 50 01 21_3 41", "00 20 11_2 31 51"],
];

/// E_{a,a}^{(n)} for n = 0..10, by label.
pub const PARA_INVARIANTS: [(u32, [i64; 11]); 6] = [
    (0, [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0]),
    (1, [1, 0, 1, 0, 1, 0, 2, 0, 1, 0, 0]),
    (2, [1, 0, 2, 0, 3, 0, 3, 0, 2, 0, 1]),
    (5, [1, 0, 1, 0, 1, 0, 2, 0, 1, 0, 0]),
    (4, [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0]),
    (3, [1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1]),
];

pub const PARA_INVARIANT_TOTALS: [i64; 11] = [6, 0, 4, 0, 6, 0, 10, 0, 4, 0, 2];

pub const ESSPATH_DIMS: [i64; 11] = [6, 10, 14, 18, 20, 20, 20, 18, 14, 10, 6];
pub const A11_ESSPATH_DIMS: [i64; 11] = [11, 20, 27, 32, 35, 36, 35, 32, 27, 20, 11];

/// F_n = Σ N_c, listed as the labels c for n = 0..10.
pub const FUSED_ADJACENCY: [&[u32]; 11] = [
    &[0],
    &[1],
    &[2],
    &[3, 5],
    &[2, 4],
    &[1, 5],
    &[0, 2],
    &[1, 3],
    &[2],
    &[5],
    &[4],
];

/// Canonical basis of the quantum symmetries, in A, L, R, C order.
pub const QS_BASIS: [(u32, u32); 12] = [
    (0, 0), (3, 0), (4, 0),
    (1, 0), (2, 0), (5, 0),
    (0, 1), (0, 2), (0, 5),
    (1, 1), (2, 1), (5, 1),
];

/// d_{a⊗b} over [`QS_BASIS`].
pub const QS_DIMS: [i64; 12] = [6, 8, 6, 10, 14, 10, 10, 14, 10, 20, 28, 20];

/// P_7 from σ0, by label order 0, 1, 2, 5, 4, 3 (display order).
pub const PATHS_7: [i64; 6] = [0, 21, 0, 20, 0, 15];

pub const PARTITION_FUNCTION: &str = "|χ1+χ7|² + |χ4+χ8|² + |χ5+χ11|²";

pub fn matrix(rows: &[&str]) -> IntMatrix {
    IntMatrix::from_dotted(rows)
}

/// Parses a table cell into `(token, multiplicity)` pairs.
pub fn parse_cell(cell: &str) -> Vec<(String, i64)> {
    cell.split_whitespace()
        .map(|t| match t.split_once('_') {
            Some((tok, m)) => (tok.to_string(), m.parse().expect("multiplicity")),
            None => (t.to_string(), 1),
        })
        .collect()
}

/// Parses a fusion-table cell (one digit per label, repeated for
/// multiplicity) into a count per label.
pub fn parse_fusion_cell(cell: &str) -> Vec<(u32, i64)> {
    let mut counts: Vec<(u32, i64)> = Vec::new();
    for c in cell.chars().filter(char::is_ascii_digit) {
        let l = c.to_digit(10).unwrap();
        match counts.iter_mut().find(|(k, _)| *k == l) {
            Some((_, m)) => *m += 1,
            None => counts.push((l, 1)),
        }
    }
    counts
}
