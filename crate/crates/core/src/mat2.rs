//! 2×2 matrices over a chain ring, nilpotency, and the four-class nilpotent taxonomy.

use alloc::vec::Vec;

use crate::chain_ring::{Elem, Ring};
use crate::error::MatError;
use crate::gf::FieldElem;

/// Default bound on `q^{4n}` for anything that sweeps all of `M₂(R)`.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// Row-major 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Mat2 {
    pub a11: Elem,
    pub a12: Elem,
    pub a21: Elem,
    pub a22: Elem,
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2::new(Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ZERO);
    pub const IDENTITY: Mat2 = Mat2::new(Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE);
    /// `((0,1),(0,0))`
    pub const E12: Mat2 = Mat2::new(Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO);
    /// `((0,0),(1,0))`
    pub const E21: Mat2 = Mat2::new(Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO);
    /// `((0,1),(1,0))`
    pub const SWAP: Mat2 = Mat2::new(Elem::ZERO, Elem::ONE, Elem::ONE, Elem::ZERO);

    pub const fn new(a11: Elem, a12: Elem, a21: Elem, a22: Elem) -> Mat2 {
        Mat2 { a11, a12, a21, a22 }
    }

    /// `M(a, b) = ((a, b), (0, 0))`.
    pub const fn m(a: Elem, b: Elem) -> Mat2 {
        Mat2::new(a, b, Elem::ZERO, Elem::ZERO)
    }

    pub fn entries(&self) -> [Elem; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn is_zero(&self) -> bool {
        *self == Mat2::ZERO
    }
}

/// Which nilpotent class a matrix falls in, modulo `M₂(J(R))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilKind {
    /// All entries in `J(R)`.
    Radical,
    /// `((0,u),(0,0)) + M₂(J)`.
    UpperUnit { u: Elem },
    /// `((0,0),(u,0)) + M₂(J)`.
    LowerUnit { u: Elem },
    /// `((u,-v),(v⁻¹u²,-u)) + M₂(J)`.
    UnitTrace { u: Elem, v: Elem },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilClass {
    pub kind: NilKind,
    /// Classified matrix minus the representative; every entry lies in `J(R)`.
    pub perturbation: Mat2,
}

impl NilClass {
    /// 1 to 4, in the order of [`NilKind`]'s variants.
    pub fn class_number(&self) -> u8 {
        match self.kind {
            NilKind::Radical => 1,
            NilKind::UpperUnit { .. } => 2,
            NilKind::LowerUnit { .. } => 3,
            NilKind::UnitTrace { .. } => 4,
        }
    }

    pub fn representative(&self, ring: &Ring) -> Mat2 {
        match self.kind {
            NilKind::Radical => Mat2::ZERO,
            NilKind::UpperUnit { u } => Mat2::new(Elem::ZERO, u, Elem::ZERO, Elem::ZERO),
            NilKind::LowerUnit { u } => Mat2::new(Elem::ZERO, Elem::ZERO, u, Elem::ZERO),
            NilKind::UnitTrace { u, v } => unit_trace_representative(ring, u, v),
        }
    }

    pub fn reconstruct(&self, ring: &Ring) -> Mat2 {
        ring.mat_add(&self.representative(ring), &self.perturbation)
    }
}

/// `((u, -v), (v⁻¹u², -u))` for units `u`, `v`.
pub fn unit_trace_representative(ring: &Ring, u: Elem, v: Elem) -> Mat2 {
    let v_inv = ring.inverse(v).expect("v must be a unit");
    Mat2::new(
        u,
        ring.neg(v),
        ring.mul(v_inv, ring.mul(u, u)),
        ring.neg(u),
    )
}

impl Ring {
    /// `q^{4n}`, if it fits in a `u64`.
    pub fn matrix_count(&self) -> Option<u64> {
        self.cardinality().checked_pow(4)
    }

    /// Fails unless all of `M₂(R)` fits under `cap`.
    pub fn check_cap(&self, cap: u64) -> Result<u64, MatError> {
        match self.matrix_count() {
            Some(c) if c <= cap => Ok(c),
            Some(c) => Err(MatError::CapExceeded { required: c, cap }),
            None => Err(MatError::CapExceeded {
                required: u64::MAX,
                cap,
            }),
        }
    }

    /// `a11 + a12·q^n + a21·q^{2n} + a22·q^{3n}`.
    #[inline]
    pub fn pack(&self, m: &Mat2) -> u64 {
        let s = self.cardinality();
        m.a11.index() as u64
            + s * (m.a12.index() as u64 + s * (m.a21.index() as u64 + s * m.a22.index() as u64))
    }

    #[inline]
    pub fn unpack(&self, mut idx: u64) -> Mat2 {
        let s = self.cardinality();
        let mut next = || {
            let e = Elem::from_index((idx % s) as u32);
            idx /= s;
            e
        };
        let a11 = next();
        let a12 = next();
        let a21 = next();
        let a22 = next();
        Mat2::new(a11, a12, a21, a22)
    }

    pub fn mat_add(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        Mat2::new(
            self.add(x.a11, y.a11),
            self.add(x.a12, y.a12),
            self.add(x.a21, y.a21),
            self.add(x.a22, y.a22),
        )
    }

    pub fn mat_neg(&self, x: &Mat2) -> Mat2 {
        Mat2::new(self.neg(x.a11), self.neg(x.a12), self.neg(x.a21), self.neg(x.a22))
    }

    pub fn mat_sub(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        self.mat_add(x, &self.mat_neg(y))
    }

    pub fn mat_scale(&self, c: Elem, x: &Mat2) -> Mat2 {
        Mat2::new(
            self.mul(c, x.a11),
            self.mul(c, x.a12),
            self.mul(c, x.a21),
            self.mul(c, x.a22),
        )
    }

    #[inline]
    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        Mat2::new(
            self.add(self.mul(x.a11, y.a11), self.mul(x.a12, y.a21)),
            self.add(self.mul(x.a11, y.a12), self.mul(x.a12, y.a22)),
            self.add(self.mul(x.a21, y.a11), self.mul(x.a22, y.a21)),
            self.add(self.mul(x.a21, y.a12), self.mul(x.a22, y.a22)),
        )
    }

    /// Ordered product; the identity for an empty slice.
    pub fn mat_product(&self, factors: &[Mat2]) -> Mat2 {
        factors
            .iter()
            .fold(Mat2::IDENTITY, |acc, f| self.mat_mul(&acc, f))
    }

    pub fn mat_pow(&self, x: &Mat2, mut e: u64) -> Mat2 {
        let mut base = *x;
        let mut acc = Mat2::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            base = self.mat_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self, x: &Mat2) -> Elem {
        self.sub(self.mul(x.a11, x.a22), self.mul(x.a12, x.a21))
    }

    pub fn trace(&self, x: &Mat2) -> Elem {
        self.add(x.a11, x.a22)
    }

    /// Over a local ring, `A ∈ GL₂(R)` iff `det A` is a unit.
    pub fn is_invertible(&self, x: &Mat2) -> bool {
        self.is_unit(self.det(x))
    }

    /// Adjugate divided by the determinant.
    pub fn mat_inverse(&self, x: &Mat2) -> Result<Mat2, MatError> {
        let d = self.inverse(self.det(x)).map_err(|_| MatError::NotInvertible)?;
        let adj = Mat2::new(x.a22, self.neg(x.a12), self.neg(x.a21), x.a11);
        Ok(self.mat_scale(d, &adj))
    }

    /// All four entries in `J(R)`.
    pub fn in_radical_matrix(&self, x: &Mat2) -> bool {
        x.entries().iter().all(|&e| self.in_radical(e))
    }

    pub fn residue_matrix(&self, x: &Mat2) -> [FieldElem; 4] {
        x.entries().map(|e| self.residue(e))
    }

    /// `tr A ∈ J` and `det A ∈ J`.
    ///
    /// By Cayley-Hamilton `A² = tr(A)·A - det(A)·I` then lies in `M₂(J)`, which is nil;
    /// conversely the residue image of a nilpotent is nilpotent over GF(q).
    #[inline]
    pub fn is_nilpotent(&self, x: &Mat2) -> bool {
        self.in_radical(self.trace(x)) && self.in_radical(self.det(x))
    }

    pub fn classify_nilpotent(&self, x: &Mat2) -> Result<NilClass, MatError> {
        if !self.is_nilpotent(x) {
            return Err(MatError::NotNilpotent);
        }
        let [r11, r12, r21, r22] = self.residue_matrix(x);
        let kind = match (r11.is_zero(), r12.is_zero(), r21.is_zero(), r22.is_zero()) {
            (true, true, true, true) => NilKind::Radical,
            (true, false, true, true) => NilKind::UpperUnit { u: self.lift(r12) },
            (true, true, false, true) => NilKind::LowerUnit { u: self.lift(r21) },
            _ => {
                // a nonzero rank-one nilpotent residue with a nonzero diagonal has all four
                // entries nonzero
                assert!(
                    !r11.is_zero() && !r12.is_zero() && !r21.is_zero() && !r22.is_zero(),
                    "unexpected nilpotent residue pattern"
                );
                NilKind::UnitTrace {
                    u: self.lift(r11),
                    v: self.neg(self.lift(r12)),
                }
            }
        };
        let mut class = NilClass {
            kind,
            perturbation: Mat2::ZERO,
        };
        class.perturbation = self.mat_sub(x, &class.representative(self));
        assert!(
            self.in_radical_matrix(&class.perturbation),
            "perturbation escaped M₂(J)"
        );
        Ok(class)
    }

    /// Every matrix in packed-index order, subject to `cap`.
    pub fn enumerate_matrices(&self, cap: u64) -> Result<impl Iterator<Item = Mat2> + '_, MatError> {
        let count = self.check_cap(cap)?;
        Ok((0..count).map(move |i| self.unpack(i)))
    }

    pub fn enumerate_nilpotents(&self, cap: u64) -> Result<Vec<Mat2>, MatError> {
        Ok(self
            .enumerate_matrices(cap)?
            .filter(|m| self.is_nilpotent(m))
            .collect())
    }

    pub fn enumerate_invertibles(&self, cap: u64) -> Result<Vec<Mat2>, MatError> {
        Ok(self
            .enumerate_matrices(cap)?
            .filter(|m| self.is_invertible(m))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_ring::RingSpec;

    fn ring(s: &str) -> Ring {
        Ring::new(s.parse().unwrap()).unwrap()
    }

    fn mat(r: &Ring, e: [i64; 4]) -> Mat2 {
        Mat2::new(r.from_int(e[0]), r.from_int(e[1]), r.from_int(e[2]), r.from_int(e[3]))
    }

    #[test]
    fn arithmetic_examples() {
        let z9 = ring("zmod:3^2");
        assert_eq!(z9.det(&mat(&z9, [3, 3, 0, 3])), Elem::ZERO);
        let a = z9.from_int(4);
        let b = z9.from_int(7);
        assert_eq!(z9.trace(&Mat2::m(a, b)), a);
        let x = mat(&z9, [1, 2, 5, 8]);
        assert_eq!(z9.mat_mul(&Mat2::IDENTITY, &x), x);
    }

    #[test]
    fn invertibility_examples() {
        let z9 = ring("zmod:3^2");
        assert!(z9.is_invertible(&Mat2::IDENTITY));
        let x = mat(&z9, [3, 1, 3, 0]);
        assert!(!z9.is_invertible(&x));
        assert_eq!(z9.det(&x), z9.from_int(-3));
        assert_eq!(z9.mat_inverse(&x), Err(MatError::NotInvertible));
        let y = mat(&z9, [2, 1, 1, 1]);
        let yi = z9.mat_inverse(&y).unwrap();
        assert_eq!(z9.mat_mul(&y, &yi), Mat2::IDENTITY);
    }

    #[test]
    fn nilpotent_examples() {
        let z9 = ring("zmod:3^2");
        assert!(z9.is_nilpotent(&mat(&z9, [3, 1, 3, 0])));
        assert!(!z9.is_nilpotent(&Mat2::IDENTITY));
    }

    #[test]
    fn enumeration_counts() {
        let gf3 = ring("zmod:3^1");
        assert_eq!(gf3.enumerate_nilpotents(DEFAULT_CAP).unwrap().len(), 9);
        assert_eq!(gf3.enumerate_invertibles(DEFAULT_CAP).unwrap().len(), 48);
        let gf5 = ring("zmod:5^1");
        assert_eq!(gf5.enumerate_nilpotents(DEFAULT_CAP).unwrap().len(), 25);
        assert_eq!(gf5.enumerate_invertibles(DEFAULT_CAP).unwrap().len(), 480);
        let z9 = ring("zmod:3^2");
        assert_eq!(z9.enumerate_nilpotents(DEFAULT_CAP).unwrap().len(), 729);
        assert_eq!(z9.enumerate_invertibles(DEFAULT_CAP).unwrap().len(), 3888);
    }

    #[test]
    fn cap_is_enforced() {
        let z9 = ring("zmod:3^2");
        assert_eq!(
            z9.enumerate_nilpotents(1000).unwrap_err(),
            MatError::CapExceeded { required: 6561, cap: 1000 }
        );
    }

    #[test]
    fn classify_examples() {
        let gf3 = ring("zmod:3^1");
        let c = gf3.classify_nilpotent(&mat(&gf3, [1, -1, 1, -1])).unwrap();
        assert_eq!(c.kind, NilKind::UnitTrace { u: Elem::ONE, v: Elem::ONE });
        assert_eq!(c.perturbation, Mat2::ZERO);
        let z9 = ring("zmod:3^2");
        let c = z9.classify_nilpotent(&mat(&z9, [3, 6, 0, 3])).unwrap();
        assert_eq!(c.class_number(), 1);
        let c = gf3.classify_nilpotent(&mat(&gf3, [0, 2, 0, 0])).unwrap();
        assert_eq!(c.kind, NilKind::UpperUnit { u: gf3.from_int(2) });
        assert_eq!(gf3.classify_nilpotent(&Mat2::IDENTITY), Err(MatError::NotNilpotent));
    }

    #[test]
    fn classification_partitions_and_reconstructs() {
        for s in ["zmod:3^2", "polyq:3^1^2", "polyq:3^2^1", "zmod:5^1"] {
            let r = Ring::new(s.parse::<RingSpec>().unwrap()).unwrap();
            for x in r.enumerate_nilpotents(DEFAULT_CAP).unwrap() {
                let c = r.classify_nilpotent(&x).unwrap();
                assert_eq!(c.reconstruct(&r), x);
            }
        }
    }

    #[test]
    fn pack_round_trip() {
        let z9 = ring("zmod:3^2");
        for i in (0..6561).step_by(7) {
            assert_eq!(z9.pack(&z9.unpack(i)), i);
        }
    }
}
