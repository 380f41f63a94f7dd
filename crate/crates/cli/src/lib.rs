//! Helpers shared by the `fedlab` binary and its tests.

use std::fmt::Write;

use fedlab::Rat;

/// Known domination numbers of `Q_d`, as `(d, low, high)`; `low == high`
/// when the value is known exactly.
pub const HYPERCUBE_GAMMA: [(usize, u64, u64); 10] = [
    (1, 1, 1),
    (2, 2, 2),
    (3, 2, 2),
    (4, 4, 4),
    (5, 7, 7),
    (6, 12, 12),
    (7, 16, 16),
    (8, 32, 32),
    (9, 62, 62),
    (10, 107, 120),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeRow {
    pub d: usize,
    /// `None` past the last known value.
    pub gamma: Option<(u64, u64)>,
    pub fed_lower: Rat,
    pub fed_upper: Rat,
}

impl HypercubeRow {
    pub fn fed_exact(&self) -> Option<&Rat> {
        (self.fed_lower == self.fed_upper).then_some(&self.fed_lower)
    }
}

/// Rows `d = 1..=max_d`: the fed interval `[2^d/(d+1), (2^d+d)/(d+1)]`,
/// collapsing to `2^d/(d+1)` when `d + 1` is a power of two (an efficient
/// dominating set exists).
pub fn hypercube_rows(max_d: usize) -> Vec<HypercubeRow> {
    (1..=max_d.min(62))
        .map(|d| {
            let two_d = 1i64 << d;
            let lower = Rat::new(two_d, d as i64 + 1);
            let upper = if (d + 1).is_power_of_two() { lower.clone() } else { Rat::new(two_d + d as i64, d as i64 + 1) };
            let gamma = HYPERCUBE_GAMMA.iter().find(|r| r.0 == d).map(|&(_, lo, hi)| (lo, hi));
            HypercubeRow { d, gamma, fed_lower: lower, fed_upper: upper }
        })
        .collect()
}

fn bracket(lo: impl std::fmt::Display, hi: impl std::fmt::Display, same: bool) -> String {
    if same {
        lo.to_string()
    } else {
        format!("[{lo},{hi}]")
    }
}

pub fn hypercube_table(max_d: usize) -> String {
    let mut out = String::from("d\tgamma\tfed\n");
    for r in hypercube_rows(max_d) {
        let gamma = match r.gamma {
            Some((lo, hi)) => bracket(lo, hi, lo == hi),
            None => "?".into(),
        };
        let fed = bracket(&r.fed_lower, &r.fed_upper, r.fed_exact().is_some());
        writeln!(out, "{}\t{gamma}\t{fed}", r.d).expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows() {
        assert_eq!(hypercube_table(3), "d\tgamma\tfed\n1\t1\t1\n2\t2\t[4/3,2]\n3\t2\t2\n");
    }

    #[test]
    fn last_row() {
        let t = hypercube_table(10);
        assert!(t.ends_with("10\t[107,120]\t[1024/11,94]\n"), "{t}");
    }
}
