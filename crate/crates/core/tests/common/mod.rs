#![allow(dead_code)]

/// The (q, n) instances every suite covers.
pub const INSTANCES: [(usize, usize); 9] = [(2, 3), (2, 5), (2, 7), (3, 3), (3, 5), (4, 3), (5, 3), (6, 3), (6, 5)];

/// Instances small enough for dense q^n × q^n matrix oracles.
pub const TINY: [(usize, usize); 3] = [(2, 3), (3, 3), (2, 5)];
