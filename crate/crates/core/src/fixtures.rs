//! The systems shipped with the crate, as `.cox` text.

use crate::coxeter::CoxeterMatrix;

/// `I₂(4)`, the dihedral group of order 8.
pub const SYS_A: &str = include_str!("../fixtures/sysa.cox");
/// Even system whose nerve is a 4-cycle with labels 4, 2, 4, 2.
pub const SYS_B: &str = include_str!("../fixtures/sysb.cox");
/// Right-angled pentagon.
pub const SYS_C: &str = include_str!("../fixtures/sysc.cox");
/// Join of two copies of `SYS_B`; the nerve is a flag 3-sphere.
pub const SYS_D: &str = include_str!("../fixtures/sysd.cox");
/// Right-angled system on the boundary of the 16-cell.
pub const SYS_E: &str = include_str!("../fixtures/syse.cox");
/// Join of `SYS_B` with a right-angled square.
pub const SYS_F: &str = include_str!("../fixtures/sysf.cox");
/// `I₂(6)`.
pub const I2_6: &str = include_str!("../fixtures/i2_6.cox");
/// Pairwise spherical triple whose nerve is a hollow triangle.
pub const HOLLOW: &str = include_str!("../fixtures/hollow.cox");

pub const ALL: &[(&str, &str)] = &[
    ("sysa", SYS_A),
    ("sysb", SYS_B),
    ("sysc", SYS_C),
    ("sysd", SYS_D),
    ("syse", SYS_E),
    ("sysf", SYS_F),
    ("i2_6", I2_6),
    ("hollow", HOLLOW),
];

pub fn load(text: &str) -> CoxeterMatrix {
    CoxeterMatrix::parse(text).expect("shipped fixture parses")
}
