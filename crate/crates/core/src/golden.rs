//! Reference expansions shipped with the crate.

/// Expanded determinants det(f(k+i−j, x, q^j s)^k) for k = 1, 2, …, one per line.
pub const DET_TABLE: &str = include_str!("../golden/det_table.txt");

/// Rows of the fibonomial triangle ⟨n, k⟩(x, s), entries separated by " | ".
pub const FIBONOMIAL_TRIANGLE: &str = include_str!("../golden/fibonomial_triangle.txt");

/// The golden expansion for the k-th determinant, if one is stored.
pub fn det_table_entry(k: usize) -> Option<&'static str> {
    k.checked_sub(1).and_then(|i| DET_TABLE.lines().nth(i))
}

/// The golden entries of row n of the fibonomial triangle, if stored.
pub fn fibonomial_row(n: usize) -> Option<Vec<&'static str>> {
    FIBONOMIAL_TRIANGLE
        .lines()
        .nth(n)
        .map(|l| l.split(" | ").collect())
}
