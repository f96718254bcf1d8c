//! Published classification data: generator matrices and table rows for
//! three-weight codes with `d⊥ >= 3` over `Z_4` and `F_2 + uF_2`.
//!
//! `F_2 + uF_2` entries use the dense encoding `a + 2b` for `a + ub`
//! (printed `0, 1, X, X+1`).

use crate::algebra::Elem;

/// A row of an attainability table: one weight distribution with the shapes
/// realizing it and a generator matrix name for each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedRow {
    pub n: u32,
    pub w: [u32; 3],
    pub a: [u64; 3],
    pub witnesses: &'static [((u32, u32), &'static str)],
}

/// A row of a classification table: the distribution for one class
/// `2k1 + k2`, with the shapes the table reports as realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictRow {
    pub n: u32,
    pub class: u32,
    pub w: [u32; 3],
    pub a: [u64; 3],
    pub realized: Vec<(u32, u32)>,
}

impl VerdictRow {
    /// Every shape `(k1, k2)` with `k1 >= 1` in this class.
    pub fn shapes(&self) -> Vec<(u32, u32)> {
        (1..=self.class / 2).rev().map(|k1| (k1, self.class - 2 * k1)).collect()
    }
    pub fn weight_sum(&self) -> u32 {
        self.w.iter().sum()
    }
}

pub const TABLE1: &[RealizedRow] = &[
    RealizedRow { n: 6, w: [4, 6, 8], a: [6, 16, 9], witnesses: &[((2, 1), "G6_1")] },
    RealizedRow { n: 6, w: [4, 6, 8], a: [18, 24, 21], witnesses: &[((3, 0), "G6_2"), ((2, 2), "G6_3")] },
    RealizedRow { n: 8, w: [4, 8, 12], a: [1, 27, 3], witnesses: &[((2, 1), "G8_1")] },
    RealizedRow { n: 8, w: [4, 8, 12], a: [5, 51, 7], witnesses: &[((3, 0), "G8_2"), ((2, 2), "G8_3")] },
    RealizedRow { n: 3, w: [2, 4, 6], a: [15, 15, 1], witnesses: &[((2, 1), "G3_1")] },
    RealizedRow { n: 5, w: [4, 6, 8], a: [16, 12, 3], witnesses: &[((2, 1), "G5_1")] },
    RealizedRow { n: 7, w: [6, 8, 10], a: [42, 7, 14], witnesses: &[((3, 0), "G7_1")] },
    RealizedRow { n: 9, w: [8, 10, 12], a: [15, 12, 4], witnesses: &[((2, 1), "G9_1")] },
    RealizedRow { n: 10, w: [8, 12, 16], a: [62, 64, 1], witnesses: &[((3, 1), "G10_1")] },
    RealizedRow { n: 10, w: [8, 12, 16], a: [130, 120, 5], witnesses: &[((4, 0), "G10_2")] },
];

/// `Z_4` generator matrices of the attainable parameters.
pub fn table1_matrix(name: &str) -> Option<Vec<Vec<Elem>>> {
    let text: &str = match name {
        "G6_1" => "1 0 1 1 1 2; 0 1 0 3 3 1; 0 0 2 2 0 0",
        "G6_2" => "1 0 0 1 2 2; 0 1 0 2 1 2; 0 0 1 3 3 1",
        "G6_3" => "1 0 1 1 1 2; 0 1 1 1 2 1; 0 0 2 0 0 2; 0 0 0 2 2 0",
        "G8_1" => "1 0 1 0 1 1 2 2; 0 1 1 1 2 3 1 1; 0 0 2 2 0 2 0 2",
        "G8_2" => "1 0 0 0 1 2 2 2; 0 1 0 2 2 1 1 1; 0 0 1 1 0 0 1 3",
        "G8_3" => "1 0 1 1 1 1 1 2; 0 1 1 1 2 3 3 1; 0 0 2 0 0 0 2 0; 0 0 0 2 0 0 2 0",
        "G3_1" => "1 0 1; 0 1 1; 0 0 2",
        "G5_1" => "1 0 1 2 2; 0 1 1 1 1; 0 0 2 0 2",
        "G7_1" => "1 0 0 1 1 1 2; 0 1 0 1 2 3 1; 0 0 1 2 1 3 3",
        "G9_1" => "1 0 1 1 1 1 1 2 2; 0 1 1 2 2 3 3 1 1; 0 0 2 0 2 0 2 0 2",
        "G10_1" => "1 0 0 0 2 1 1 1 1 1; 0 1 0 1 2 2 3 0 1 0; 0 0 1 0 1 1 1 2 3 3; 0 0 0 2 2 2 0 2 2 2",
        "G10_2" => "1 0 0 0 2 1 2 1 1 0; 0 1 0 0 0 3 1 2 3 2; 0 0 1 0 1 3 2 0 1 2; 0 0 0 1 2 1 0 2 3 1",
        _ => return None,
    };
    Some(parse_digits(text))
}

/// Names of all `Z_4` generator matrices, in table order.
pub const TABLE1_MATRICES: &[&str] =
    &["G6_1", "G6_2", "G6_3", "G8_1", "G8_2", "G8_3", "G3_1", "G5_1", "G7_1", "G9_1", "G10_1", "G10_2"];

fn parse_digits(text: &str) -> Vec<Vec<Elem>> {
    text.split(';').map(|r| r.split_whitespace().map(|t| t.parse().unwrap()).collect()).collect()
}

fn parse_f2u(text: &str) -> Vec<Vec<Elem>> {
    text.split(';')
        .map(|r| {
            r.split_whitespace()
                .map(|t| match t {
                    "0" => 0,
                    "1" => 1,
                    "X" => 2,
                    "X+1" => 3,
                    _ => panic!("bad literal {t}"),
                })
                .collect()
        })
        .collect()
}

/// `F_2 + uF_2` generator matrix with its length, weights, frequencies and shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2uExample {
    pub n: u32,
    pub w: [u32; 3],
    pub a: [u64; 3],
    pub shape: (u32, u32),
    pub rows: Vec<Vec<Elem>>,
}

pub fn table5() -> Vec<F2uExample> {
    let data: &[(u32, [u32; 3], [u64; 3], (u32, u32), &str)] = &[
        (3, [2, 4, 6], [15, 15, 1], (2, 1), "1 0 1; 0 1 1; 0 0 X"),
        (5, [4, 6, 8], [16, 12, 3], (2, 1), "1 0 1 0 X; 0 1 1 1 1; 0 0 0 X X"),
        (6, [4, 6, 8], [6, 16, 9], (2, 1), "1 0 X X+1 1 1; 0 1 1 1 1 X; 0 0 0 0 X X"),
        (6, [4, 6, 8], [18, 24, 21], (3, 0), "1 0 0 1 1 X+1; 0 1 0 1 X 0; 0 0 1 1 1 1"),
        (6, [4, 6, 8], [18, 24, 21], (2, 2), "1 0 1 1 0 1; 0 1 1 X 1 X+1; 0 0 X X 0 0; 0 0 0 0 X X"),
        (8, [4, 8, 12], [1, 27, 3], (2, 1), "1 0 X 1 0 1 X 1; 0 1 1 X 1 1 1 X+1; 0 0 0 0 X X X X"),
        (8, [4, 8, 12], [5, 51, 7], (3, 0), "1 0 0 X X 0 1 X; 0 1 0 0 1 1 0 1; 0 0 1 1 1 X X X+1"),
        (
            8,
            [4, 8, 12],
            [5, 51, 7],
            (2, 2),
            "1 0 X 1 1 1 1 X+1; 0 1 1 1 0 0 0 1; 0 0 0 X X 0 X X; 0 0 0 0 0 X X 0",
        ),
        (9, [8, 10, 12], [15, 12, 4], (2, 1), "1 0 1 X 0 1 1 1 X+1; 0 1 1 1 1 X 1 0 1; 0 0 0 0 X X X X 0"),
        (
            10,
            [8, 12, 16],
            [62, 64, 1],
            (3, 1),
            "1 0 0 1 X 1 X 0 1 0; 0 1 0 1 X 0 1 1 X+1 X+1; 0 0 1 1 1 0 1 X 1 1; 0 0 0 X X X X X 0 X",
        ),
        (
            10,
            [8, 12, 16],
            [130, 120, 5],
            (4, 0),
            "1 0 0 0 1 0 X X X+1 1; 0 1 0 0 X X 0 1 X+1 1; 0 0 1 0 0 X 1 X 1 1; 0 0 0 1 X 1 X 0 1 1",
        ),
    ];
    data.iter()
        .map(|&(n, w, a, shape, text)| F2uExample { n, w, a, shape, rows: parse_f2u(text) })
        .collect()
}

fn row(n: u32, class: u32, w: [u32; 3], a: [u64; 3], realized: &[(u32, u32)]) -> VerdictRow {
    VerdictRow { n, class, w, a, realized: realized.to_vec() }
}

/// Shapes of the class not listed as excluded; these are the Table-1 shapes.
fn complement(class: u32, excluded: &[(u32, u32)]) -> Vec<(u32, u32)> {
    (1..=class / 2).rev().map(|k1| (k1, class - 2 * k1)).filter(|s| !excluded.contains(s)).collect()
}

fn excluded_row(n: u32, class: u32, w: [u32; 3], a: [u64; 3], excluded: &[(u32, u32)]) -> VerdictRow {
    row(n, class, w, a, &complement(class, excluded))
}

/// `Z_4`, `S = 3n`: rows list the excluded shapes; any other shape of the
/// class is realized (by a Table-1 code).
pub fn table2() -> Vec<VerdictRow> {
    vec![
        excluded_row(2, 3, [1, 2, 3], [1, 3, 3], &[(1, 1)]),
        excluded_row(4, 4, [2, 4, 6], [1, 11, 3], &[(2, 0), (1, 2)]),
        excluded_row(4, 5, [2, 4, 6], [5, 19, 7], &[(2, 1), (1, 3)]),
        excluded_row(4, 6, [2, 4, 6], [13, 35, 15], &[(3, 0), (2, 2), (1, 4)]),
        excluded_row(6, 5, [4, 6, 8], [6, 16, 9], &[(1, 3)]),
        excluded_row(6, 6, [4, 6, 8], [18, 24, 21], &[(1, 4)]),
        excluded_row(8, 5, [6, 8, 10], [6, 15, 10], &[(2, 1), (1, 3)]),
        excluded_row(8, 6, [6, 8, 10], [22, 15, 26], &[(3, 0), (2, 2), (1, 4)]),
        excluded_row(8, 7, [6, 8, 10], [54, 15, 58], &[(3, 1), (2, 3), (1, 5)]),
        excluded_row(8, 5, [4, 8, 12], [1, 27, 3], &[(1, 3)]),
        excluded_row(8, 6, [4, 8, 12], [5, 51, 7], &[(1, 4)]),
        excluded_row(8, 7, [4, 8, 12], [13, 99, 15], &[(3, 1), (2, 3), (1, 5)]),
        excluded_row(10, 5, [8, 10, 12], [5, 16, 10], &[(2, 1), (1, 3)]),
        excluded_row(10, 6, [8, 10, 12], [25, 8, 30], &[(3, 0), (2, 2), (1, 4)]),
    ]
}

/// `Z_4`, `S > 3n`, `3 | S`.
pub fn table3() -> Vec<VerdictRow> {
    vec![
        excluded_row(3, 5, [2, 4, 6], [15, 15, 1], &[(1, 3)]),
        excluded_row(5, 5, [4, 6, 8], [16, 12, 3], &[(1, 3)]),
        excluded_row(7, 5, [6, 8, 10], [16, 11, 4], &[(2, 1), (1, 3)]),
        excluded_row(7, 6, [6, 8, 10], [42, 7, 14], &[(2, 2), (1, 4)]),
        excluded_row(7, 7, [4, 8, 12], [31, 95, 1], &[(3, 1), (2, 3), (1, 5)]),
        excluded_row(7, 8, [4, 8, 12], [65, 187, 3], &[(4, 0), (3, 2), (2, 4), (1, 6)]),
        excluded_row(9, 5, [8, 10, 12], [15, 12, 4], &[(1, 3)]),
        excluded_row(9, 6, [8, 11, 14], [43, 16, 4], &[(3, 0), (2, 2), (1, 4)]),
        excluded_row(10, 7, [8, 12, 16], [62, 64, 1], &[(2, 3), (1, 5)]),
        excluded_row(10, 8, [8, 12, 16], [130, 120, 5], &[(3, 2), (2, 4), (1, 6)]),
    ]
}

/// `F_2 + uF_2`, `S >= 3n`: rows list the realized shapes (empty for "−").
pub fn table4() -> Vec<VerdictRow> {
    vec![
        row(2, 3, [1, 2, 3], [1, 3, 3], &[]),
        row(4, 4, [2, 4, 6], [1, 11, 3], &[]),
        row(4, 5, [2, 4, 6], [5, 19, 7], &[]),
        row(4, 6, [2, 4, 6], [13, 35, 15], &[]),
        row(6, 5, [4, 6, 8], [6, 16, 9], &[(2, 1)]),
        row(6, 6, [4, 6, 8], [18, 24, 21], &[(3, 0), (2, 2)]),
        row(8, 5, [6, 8, 10], [6, 15, 10], &[]),
        row(8, 6, [6, 8, 10], [22, 15, 26], &[]),
        row(8, 7, [6, 8, 10], [54, 15, 58], &[]),
        row(8, 5, [4, 8, 12], [1, 27, 3], &[(2, 1)]),
        row(8, 6, [4, 8, 12], [5, 51, 7], &[(3, 0), (2, 2)]),
        row(8, 7, [4, 8, 12], [13, 99, 15], &[]),
        row(10, 5, [8, 10, 12], [5, 16, 10], &[]),
        row(10, 6, [8, 10, 12], [25, 8, 30], &[]),
        row(3, 5, [2, 4, 6], [15, 15, 1], &[(2, 1)]),
        row(5, 5, [4, 6, 8], [16, 12, 3], &[(2, 1)]),
        row(7, 5, [6, 8, 10], [16, 11, 4], &[]),
        row(7, 6, [6, 8, 10], [42, 7, 14], &[]),
        row(7, 7, [4, 8, 12], [31, 95, 1], &[]),
        row(7, 8, [4, 8, 12], [65, 187, 3], &[]),
        row(9, 5, [8, 10, 12], [15, 12, 4], &[(2, 1)]),
        row(9, 6, [8, 11, 14], [43, 16, 4], &[]),
        row(10, 7, [8, 12, 16], [62, 64, 1], &[(3, 1)]),
        row(10, 8, [8, 12, 16], [130, 120, 5], &[(4, 0)]),
    ]
}

/// Published exceptional tuples `(n, w1, w2, w3, y, A1, A2, A3, B3)`.
pub const EXCEPTIONAL: &[[u64; 9]] = &[
    [29, 24, 31, 32, 64, 76, 128, 51, 164],
    [33, 29, 32, 38, 64, 64, 111, 80, 157],
    [34, 30, 32, 40, 128, 64, 299, 148, 36],
    [50, 46, 48, 56, 64, 32, 145, 78, 580],
];
