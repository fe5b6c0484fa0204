//! Small standard presentations used throughout the test suites and the
//! documentation.
//!
//! All of them are internally graded, so every bigraded piece is finite
//! without degree caps.

use crate::arcs::ArcPresentation;
use crate::gradedalg::{Polynomial, Presentation, PresentationBuilder};
use crate::rat;

/// The fat point `z^2 = 0`: one even coordinate `x` (weight 1) and one odd
/// generator `zeta` (weight 2) with `d zeta = x^2`.
pub fn fat_point() -> Presentation {
    fat_point_power(2)
}

/// The order-`k` fat point `z^k = 0`: `d zeta = x^k`, internal weights
/// `(1, k)`.
pub fn fat_point_power(k: u32) -> Presentation {
    let mut b = PresentationBuilder::new();
    b.generator("x", 0, Some(1));
    b.generator("zeta", -1, Some(k as i64));
    let free: Presentation = b.free().unwrap();
    let x = free.find("x", None).unwrap();
    let zeta = free.find("zeta", None).unwrap();
    let xk = free.monomial(rat(1), &[(x, k)]).unwrap();
    free.with_differentials(vec![(zeta, xk)]).unwrap()
}

/// The affine line: a single even coordinate, zero differential.
pub fn smooth_line() -> Presentation {
    let mut b = PresentationBuilder::new();
    b.generator("x", 0, Some(1));
    b.free().unwrap()
}

/// The nodal quadric `xy = z^2`: three weight-1 coordinates and one odd
/// generator with `d zeta = xy - z^2`.
pub fn node() -> Presentation {
    let mut b = PresentationBuilder::new();
    b.generator("x", 0, Some(1));
    b.generator("y", 0, Some(1));
    b.generator("z", 0, Some(1));
    b.generator("zeta", -1, Some(2));
    let free: Presentation = b.free().unwrap();
    let x = free.find("x", None).unwrap();
    let y = free.find("y", None).unwrap();
    let z = free.find("z", None).unwrap();
    let zeta = free.find("zeta", None).unwrap();
    let f = &free.monomial(rat(1), &[(x, 1), (y, 1)]).unwrap()
        - &free.monomial(rat(1), &[(z, 2)]).unwrap();
    free.with_differentials(vec![(zeta, f)]).unwrap()
}

/// The quadric cone `x^2 + y^2 + z^2 = 0` in three-space.
pub fn quadric_cone() -> Presentation {
    let mut b = PresentationBuilder::new();
    b.generator("x", 0, Some(1));
    b.generator("y", 0, Some(1));
    b.generator("z", 0, Some(1));
    b.generator("zeta", -1, Some(2));
    let free: Presentation = b.free().unwrap();
    let x = free.find("x", None).unwrap();
    let y = free.find("y", None).unwrap();
    let z = free.find("z", None).unwrap();
    let zeta = free.find("zeta", None).unwrap();
    let f = &(&free.monomial(rat(1), &[(x, 2)]).unwrap()
        + &free.monomial(rat(1), &[(y, 2)]).unwrap())
        + &free.monomial(rat(1), &[(z, 2)]).unwrap();
    free.with_differentials(vec![(zeta, f)]).unwrap()
}

/// The smooth hypersurface `y = x^2`.
pub fn parabola() -> Presentation {
    let mut b = PresentationBuilder::new();
    b.generator("x", 0, Some(1));
    b.generator("y", 0, Some(2));
    b.generator("zeta", -1, Some(2));
    let free: Presentation = b.free().unwrap();
    let x = free.find("x", None).unwrap();
    let y = free.find("y", None).unwrap();
    let zeta = free.find("zeta", None).unwrap();
    let f = &free.gen_poly(y) - &free.monomial(rat(1), &[(x, 2)]).unwrap();
    free.with_differentials(vec![(zeta, f)]).unwrap()
}

/// A presentation with a generator in degree -2:
/// `d zeta1 = d zeta2 = x^2` and `d xi = zeta1 - zeta2`.
pub fn depth_two() -> Presentation {
    let mut b = PresentationBuilder::new();
    b.generator("x", 0, Some(1));
    b.generator("zeta1", -1, Some(2));
    b.generator("zeta2", -1, Some(2));
    b.generator("xi", -2, Some(2));
    let free: Presentation = b.free().unwrap();
    let x = free.find("x", None).unwrap();
    let z1 = free.find("zeta1", None).unwrap();
    let z2 = free.find("zeta2", None).unwrap();
    let xi = free.find("xi", None).unwrap();
    let x2 = free.monomial(rat(1), &[(x, 2)]).unwrap();
    let dxi = &free.gen_poly(z1) - &free.gen_poly(z2);
    free.with_differentials(vec![(z1, x2.clone()), (z2, x2), (xi, dxi)])
        .unwrap()
}

/// The weight-(1,3) cycle `2 x_1 zeta_0 - x_0 zeta_1` of the level-1 fat
/// point arcs, a cycle that bounds nothing.
pub fn eta(arc: &ArcPresentation) -> Polynomial {
    let p = arc.presentation();
    let x0 = p.find("x", Some(0)).unwrap();
    let x1 = p.find("x", Some(1)).unwrap();
    let z0 = p.find("zeta", Some(0)).unwrap();
    let z1 = p.find("zeta", Some(1)).unwrap();
    &p.monomial(rat(2), &[(x1, 1), (z0, 1)]).unwrap()
        - &p.monomial(rat(1), &[(x0, 1), (z1, 1)]).unwrap()
}
