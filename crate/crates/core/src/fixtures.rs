//! Canonical graph fixtures shipped with the crate.

pub const THETA: &str = include_str!("../fixtures/theta.json");
pub const Y: &str = include_str!("../fixtures/y.json");
pub const PATH: &str = include_str!("../fixtures/path.json");
pub const LASSO: &str = include_str!("../fixtures/lasso.json");
/// Two vertices joined by three parallel edges.
pub const RAW_THETA: &str = include_str!("../fixtures/raw_theta.json");

pub const THETA_LOOPS_N2: &str = include_str!("../fixtures/theta_loops_n2.json");
pub const THETA_LOOPS_N4: &str = include_str!("../fixtures/theta_loops_n4.json");
