//! Known 3-regular maps of `RP^m`, as a table of families.

use serde::Serialize;

use crate::digits::{digit_sum_base_p, is_power_of};

/// One family: a side condition on `m` and the smallest `N` it provides.
pub struct TableRow {
    pub condition: &'static str,
    pub dimension: &'static str,
    applies: fn(u64) -> bool,
    min_n: fn(u64) -> u64,
}

impl TableRow {
    pub fn applies(&self, m: u64) -> bool {
        (self.applies)(m)
    }

    pub fn min_dimension(&self, m: u64) -> u64 {
        (self.min_n)(m)
    }
}

fn alpha(q: u64) -> u64 {
    digit_sum_base_p(q, 2).unwrap_or(0)
}

fn is_two_power_plus(m: u64, offset: u64, min_exp: u32) -> bool {
    m > offset && is_power_of(m - offset, 2) && (m - offset) >= 1 << min_exp
}

pub static TABLE: [TableRow; 9] = [
    TableRow {
        condition: "m = 8q+3 or 8q+5, q > 0",
        dimension: "2m - min(5, alpha(q))",
        applies: |m| (m % 8 == 3 || m % 8 == 5) && m / 8 > 0,
        min_n: |m| 2 * m - alpha(m / 8).min(5),
    },
    TableRow {
        condition: "m = 8q+1, q > 0",
        dimension: "2m - min(7, alpha(q)) + 2",
        applies: |m| m % 8 == 1 && m / 8 > 0,
        min_n: |m| 2 * m - alpha(m / 8).min(7) + 2,
    },
    TableRow {
        condition: "m = 32q+7, q > 0",
        dimension: "2m - 6",
        applies: |m| m % 32 == 7 && m / 32 > 0,
        min_n: |m| 2 * m - 6,
    },
    TableRow {
        condition: "m = 8q+7, q > 1",
        dimension: "2m - 5",
        applies: |m| m % 8 == 7 && m / 8 > 1,
        min_n: |m| 2 * m - 5,
    },
    TableRow {
        condition: "m = 3 mod 8, m >= 19",
        dimension: "2m - 4",
        applies: |m| m % 8 == 3 && m >= 19,
        min_n: |m| 2 * m - 4,
    },
    TableRow {
        condition: "m = 1 mod 4, m != 2^i+1",
        dimension: "2m - 2",
        applies: |m| m % 4 == 1 && !is_two_power_plus(m, 1, 0),
        min_n: |m| 2 * m - 2,
    },
    TableRow {
        condition: "m = 4q or 4q+2, q not 0 and not a power of 2",
        dimension: "2m - 1",
        applies: |m| (m % 4 == 0 || m % 4 == 2) && m / 4 != 0 && !is_power_of(m / 4, 2),
        min_n: |m| 2 * m - 1,
    },
    TableRow {
        condition: "m = 2^j+1, j >= 2",
        dimension: "2m - 1",
        applies: |m| is_two_power_plus(m, 1, 2),
        min_n: |m| 2 * m - 1,
    },
    TableRow {
        condition: "m = 2^j+2, j >= 3",
        dimension: "2m",
        applies: |m| is_two_power_plus(m, 2, 3),
        min_n: |m| 2 * m,
    },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableHit {
    pub row: usize,
    pub condition: &'static str,
    pub dimension: u64,
}

/// Every row whose side condition holds for `m`.
pub fn matching_rows(m: u64) -> Vec<TableHit> {
    TABLE
        .iter()
        .enumerate()
        .filter(|(_, r)| r.applies(m))
        .map(|(i, r)| TableHit { row: i + 1, condition: r.condition, dimension: r.min_dimension(m) })
        .collect()
}

/// The smallest `N` asserted for `m`; ties go to the earlier row.
pub fn lookup(m: u64) -> Option<TableHit> {
    matching_rows(m).into_iter().min_by_key(|h| (h.dimension, h.row))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_from_the_table() {
        let hit = lookup(9).unwrap();
        assert_eq!((hit.row, hit.dimension), (8, 17));
        assert_eq!(lookup(23).unwrap().dimension, 2 * 23 - 5);
        // 39 = 32 + 7 matches rows 3 and 4; the smaller N wins
        assert_eq!(lookup(39).unwrap().dimension, 78 - 6);
        assert_eq!(lookup(18).unwrap().dimension, 36);
        assert_eq!(lookup(12).unwrap().dimension, 23);
        assert!(lookup(8).is_none());
        assert!(lookup(2).is_none());
    }

    #[test]
    fn side_conditions() {
        // 8q+7 with q = 1 is excluded
        assert!(!matching_rows(15).iter().any(|h| h.row == 4));
        // 2^i + 1 is excluded from the m = 1 mod 4 row
        assert!(!matching_rows(17).iter().any(|h| h.row == 6));
        assert!(matching_rows(13).iter().any(|h| h.row == 6));
        // 2^j + 2 needs j >= 3
        assert!(!matching_rows(6).iter().any(|h| h.row == 9));
        assert!(matching_rows(10).iter().any(|h| h.row == 9));
    }

    #[test]
    fn two_power_plus_one_rows_give_2m_minus_1() {
        for i in 2..=5 {
            let m = (1u64 << i) + 1;
            assert_eq!(lookup(m).unwrap().dimension, 2 * m - 1, "m = {m}");
        }
    }
}
