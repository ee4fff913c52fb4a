//! Small built-in knot table: each knot as a PD code and as a 2-bridge
//! fraction, with its determinant.

use crate::spin::Knot;

/// `(name, notation, determinant)`.
pub const KNOT_TABLE: &[(&str, &str, u64)] = &[
    ("0_1", "PD[]", 1),
    ("0_1/tb", "TB[1/1]", 1),
    ("3_1", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", 3),
    ("3_1/tb", "TB[3/1]", 3),
    ("4_1", "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]", 5),
    ("4_1/tb", "TB[5/3]", 5),
    ("5_2", "PD[X(1,4,2,5),X(3,8,4,9),X(5,10,6,1),X(9,6,10,7),X(7,2,8,3)]", 7),
    ("5_2/tb", "TB[7/3]", 7),
    (
        "6_1",
        "PD[X(1,4,2,5),X(7,10,8,11),X(3,9,4,8),X(9,3,10,2),X(5,12,6,1),X(11,6,12,7)]",
        9,
    ),
    ("6_1/tb", "TB[9/7]", 9),
];

/// Every entry of [`KNOT_TABLE`], parsed.
pub fn knots() -> Vec<Knot> {
    KNOT_TABLE
        .iter()
        .map(|&(name, text, det)| {
            Knot::parse(name, text)
                .expect("built-in table parses")
                .with_determinant(Some(det))
        })
        .collect()
}

/// Only the 2-bridge entries.
pub fn two_bridge_knots() -> Vec<Knot> {
    knots().into_iter().filter(Knot::is_two_bridge).collect()
}
