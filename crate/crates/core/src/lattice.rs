//! Small exact integer linear algebra on ℤ²: vectors, 2×2 matrices,
//! extended gcd, Hermite normal form of a generated sublattice and
//! unimodular completion.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// An integer vector. Used both for dart translation labels and for
/// free homotopy classes `(m, n)` of closed curves on the torus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: i64,
    pub y: i64,
}

/// Free homotopy class of a closed curve, in normalized coordinates.
pub type HomotopyClass = Vec2;

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Vec2 { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// gcd(|x|, |y|) == 1.
    pub fn is_primitive(self) -> bool {
        self.x.gcd(&self.y) == 1
    }

    /// 2×2 determinant `self.x * other.y - self.y * other.x`.
    pub fn det(self, other: Vec2) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Vec2) -> i64 {
        self.x * other.x + self.y * other.y
    }

    pub fn linf(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    /// Rotation `(x, y) -> (y, -x)`; maps a class `(m, n)` to the
    /// direction `(n, -m)` used by the disjoint-cycle criterion.
    pub fn perp(self) -> Vec2 {
        Vec2::new(self.y, -self.x)
    }

    /// Word length with respect to the steps ±(1,0), ±(0,1), ±(1,1)
    /// of the triangular lattice.
    pub fn hex_norm(self) -> i64 {
        if (self.x >= 0) == (self.y >= 0) {
            self.x.abs().max(self.y.abs())
        } else {
            self.x.abs() + self.y.abs()
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<Vec2> for i64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(self * v.x, self * v.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Row-major 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// Matrix whose rows are `r0` and `r1`.
    pub fn from_rows(r0: Vec2, r1: Vec2) -> Self {
        Mat2::new(r0.x, r0.y, r1.x, r1.y)
    }

    /// Matrix whose columns are `c0` and `c1`.
    pub fn from_cols(c0: Vec2, c1: Vec2) -> Self {
        Mat2::new(c0.x, c1.x, c0.y, c1.y)
    }

    pub fn row(&self, i: usize) -> Vec2 {
        match i {
            0 => Vec2::new(self.a, self.b),
            _ => Vec2::new(self.c, self.d),
        }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<Mat2> {
        let det = self.det();
        if det.abs() != 1 {
            return None;
        }
        Some(Mat2::new(self.d * det, -self.b * det, -self.c * det, self.a * det))
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Extends a primitive vector `h` to a vector `k` with `det(h, k) = 1`.
pub fn unimodular_complement(h: Vec2) -> Option<Vec2> {
    let (g, s, t) = ext_gcd(h.x, h.y);
    if g != 1 {
        return None;
    }
    // h.x * s + h.y * t = 1, so k = (-t, s) gives det(h, k) = h.x*s + h.y*t.
    Some(Vec2::new(-t, s))
}

/// Hermite normal form basis of the sublattice of ℤ² generated by
/// `gens`: rows `(d1, 0)` and `(a, d2)` with `d1, d2 > 0` and
/// `0 <= a < d1`. Returns `None` when the generated lattice has rank < 2.
pub fn hnf_basis<I: IntoIterator<Item = Vec2>>(gens: I) -> Option<Mat2> {
    // Invariant: `top` has the gcd of all y-coordinates seen so far in
    // its y slot; `d1` generates the x-axis part of the lattice.
    let mut top: Option<Vec2> = None;
    let mut d1: i64 = 0;
    for mut v in gens {
        if v.is_zero() {
            continue;
        }
        if let Some(t) = top {
            if v.y != 0 {
                let (g, s, u) = ext_gcd(t.y, v.y);
                let new_top = Vec2::new(s * t.x + u * v.x, g);
                // Both t and v reduce to multiples of new_top plus an x-axis vector.
                let rt = t - (t.y / g) * new_top;
                let rv = v - (v.y / g) * new_top;
                d1 = d1.gcd(&rt.x).gcd(&rv.x);
                top = Some(new_top);
            } else {
                d1 = d1.gcd(&v.x);
            }
        } else if v.y != 0 {
            if v.y < 0 {
                v = -v;
            }
            top = Some(v);
        } else {
            d1 = d1.gcd(&v.x);
        }
    }
    let t = top?;
    if d1 == 0 {
        return None;
    }
    let a = t.x.rem_euclid(d1);
    Some(Mat2::new(d1, 0, a, t.y))
}

/// Index of the lattice spanned by the rows of `basis`.
pub fn lattice_index(basis: &Mat2) -> i64 {
    basis.det().abs()
}

/// Coordinates of `v` with respect to the rows of `basis`
/// (`v = α·row0 + β·row1`), if `v` lies in the lattice.
pub fn coords_in_basis(basis: &Mat2, v: Vec2) -> Option<Vec2> {
    let det = basis.det();
    if det == 0 {
        return None;
    }
    // Solve [α β] · B = v, i.e. Bᵀ [α β]ᵀ = v.
    let alpha_num = v.x * basis.d - v.y * basis.c;
    let beta_num = basis.a * v.y - basis.b * v.x;
    if alpha_num % det != 0 || beta_num % det != 0 {
        return None;
    }
    Some(Vec2::new(alpha_num / det, beta_num / det))
}

/// All unimodular matrices with entries in `[-bound, bound]`.
pub fn unimodular_matrices(bound: i64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    let m = Mat2::new(a, b, c, d);
                    if m.is_unimodular() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_bezout() {
        for a in -20..20 {
            for b in -20..20 {
                let (g, s, t) = ext_gcd(a, b);
                assert_eq!(g, a.gcd(&b));
                assert_eq!(s * a + t * b, g);
            }
        }
    }

    #[test]
    fn complement_has_det_one() {
        for (x, y) in [(1, 0), (0, 1), (3, 5), (-2, 7), (4, -9), (1, -1)] {
            let h = Vec2::new(x, y);
            let k = unimodular_complement(h).unwrap();
            assert_eq!(h.det(k), 1);
        }
        assert!(unimodular_complement(Vec2::new(2, 4)).is_none());
    }

    #[test]
    fn hnf_of_circulant_lattice() {
        // {(a,b) : a + 10 b ≡ 0 (mod 37)}
        let gens = [Vec2::new(37, 0), Vec2::new(-10, 1), Vec2::new(7, 3)];
        let b = hnf_basis(gens).unwrap();
        assert_eq!(b, Mat2::new(37, 0, 27, 1));
        assert_eq!(coords_in_basis(&b, Vec2::new(7, 3)), Some(Vec2::new(-2, 3)));
    }

    #[test]
    fn hnf_rank_deficient() {
        assert!(hnf_basis([Vec2::new(2, 4), Vec2::new(-1, -2)]).is_none());
        assert!(hnf_basis([Vec2::new(3, 0)]).is_none());
        assert_eq!(hnf_basis([Vec2::new(1, 0), Vec2::new(0, 1)]), Some(Mat2::IDENTITY));
    }

    #[test]
    fn hex_norm_small() {
        assert_eq!(Vec2::new(1, 1).hex_norm(), 1);
        assert_eq!(Vec2::new(1, -1).hex_norm(), 2);
        assert_eq!(Vec2::new(7, 3).hex_norm(), 7);
        assert_eq!(Vec2::new(-3, 4).hex_norm(), 7);
    }

    #[test]
    fn unimodular_inverse() {
        let u = Mat2::new(2, 1, 1, 1);
        let inv = u.inverse_unimodular().unwrap();
        assert_eq!(u.mul(&inv), Mat2::IDENTITY);
        assert!(Mat2::new(2, 0, 0, 1).inverse_unimodular().is_none());
    }
}
