//! Reference renderings used for golden comparisons.

/// Levels 1 through 5 of the tree, left to right.
pub const TREE_ROWS: [&str; 5] = [
    "1/1",
    "1/2 2/1",
    "1/3 3/2 2/3 3/1",
    "1/4 4/3 3/5 5/2 2/5 5/3 3/4 4/1",
    "1/5 5/4 4/7 7/3 3/8 8/5 5/7 7/2 2/7 7/5 5/8 8/3 3/7 7/4 4/5 5/1",
];

/// Left diagonals `L1..=L10` as `(a, b, c, d)`. The sixth entry is the
/// diagonal-tree value `(3j+2)/(2j+1)`.
pub const DIAGONAL_LIST: [[u64; 4]; 10] = [
    [0, 1, 1, 0],
    [1, 1, 1, 0],
    [1, 1, 2, 1],
    [2, 1, 1, 0],
    [1, 1, 3, 2],
    [3, 2, 2, 1],
    [2, 1, 3, 1],
    [3, 1, 1, 0],
    [1, 1, 4, 3],
    [4, 3, 3, 2],
];

/// Labels of the diagonal tree, `L1..=L16`.
pub const DIAGONAL_LABELS: [&str; 16] = [
    "1/j",
    "(j+1)/j",
    "(j+1)/(2j+1)",
    "(2j+1)/j",
    "(j+1)/(3j+2)",
    "(3j+2)/(2j+1)",
    "(2j+1)/(3j+1)",
    "(3j+1)/j",
    "(j+1)/(4j+3)",
    "(4j+3)/(3j+2)",
    "(3j+2)/(5j+3)",
    "(5j+3)/(2j+1)",
    "(2j+1)/(5j+2)",
    "(5j+2)/(3j+1)",
    "(3j+1)/(4j+1)",
    "(4j+1)/j",
];

/// `?` applied to the diagonal tree: entry `i - 1` is the map for `L_i`,
/// `i = 1..=32`, as `(offset numerator, offset denominator, 2^shift)`.
/// An offset of `0/1` is the bare `x` of `L1`.
pub const QMARK_DIAGONAL_MAPS: [(u64, u64, u64); 32] = [
    (0, 1, 1),
    (1, 1, 1),
    (1, 2, 4),
    (2, 1, 1),
    (1, 4, 8),
    (3, 2, 4),
    (3, 4, 8),
    (3, 1, 1),
    (1, 8, 16),
    (5, 4, 8),
    (5, 8, 16),
    (5, 2, 4),
    (3, 8, 16),
    (7, 4, 8),
    (7, 8, 16),
    (4, 1, 1),
    (1, 16, 32),
    (9, 8, 16),
    (9, 16, 32),
    (9, 4, 8),
    (5, 16, 32),
    (13, 8, 16),
    (13, 16, 32),
    (7, 2, 4),
    (3, 16, 32),
    (11, 8, 16),
    (11, 16, 32),
    (11, 4, 8),
    (7, 16, 32),
    (15, 8, 16),
    (15, 16, 32),
    (5, 1, 1),
];

/// Labels for [`QMARK_DIAGONAL_MAPS`], in the CLI's `offset+x/2^k` form.
pub fn qmark_diagonal_label(i: usize) -> String {
    let (p, q, scale) = QMARK_DIAGONAL_MAPS[i - 1];
    let x = if scale == 1 {
        "x".to_string()
    } else {
        format!("x/{scale}")
    };
    match (p, q) {
        (0, _) => x,
        (p, 1) => format!("{p}+{x}"),
        (p, q) => format!("{p}/{q}+{x}"),
    }
}
