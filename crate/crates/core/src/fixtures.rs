//! Polytopes shared by the unit tests.

use crate::polytope::VPolytope;

pub fn poly(points: &[&[i64]]) -> VPolytope {
    VPolytope::from_int_vertices(points).unwrap()
}

pub fn d6() -> VPolytope {
    poly(&[
        &[-1, -1, -1, -1],
        &[-1, -1, -1, 1],
        &[-1, -1, 0, -1],
        &[-1, -1, 2, 1],
        &[-1, 1, -1, -1],
        &[-1, 1, 0, -1],
        &[-1, 3, -1, 1],
        &[-1, 3, 2, 1],
        &[1, -1, -1, -1],
        &[1, -1, 0, -1],
        &[3, -1, -1, 1],
        &[3, -1, 2, 1],
    ])
}

pub fn square() -> VPolytope {
    poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])
}

pub fn p2() -> VPolytope {
    poly(&[&[2, -1], &[-1, 2], &[-1, -1]])
}
