//! The quaternion ring `H(R) = R ⊕ Ri ⊕ Rj ⊕ Rk` and an explicit isomorphism onto `M₂(R)`.
//!
//! With `a² + b² = -1` the assignment
//!
//! ```text
//! 1 ↦ I,  i ↦ ((a, b), (b, -a)),  j ↦ ((0, 1), (-1, 0)),  k ↦ i·j = ((-b, a), (a, b))
//! ```
//!
//! respects `i² = j² = k² = ijk = -1`, and the four images form an `R`-basis of `M₂(R)`
//! (the coordinate matrix has determinant `4(a² + b²) = -4`, a unit for odd `p`).

use thiserror::Error;

use crate::chain_ring::{Elem, Ring};
use crate::mat2::Mat2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub r1: Elem,
    pub r2: Elem,
    pub r3: Elem,
    pub r4: Elem,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ZERO);
    pub const ONE: Quaternion = Quaternion::new(Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO);
    pub const I: Quaternion = Quaternion::new(Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO);
    pub const J: Quaternion = Quaternion::new(Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO);
    pub const K: Quaternion = Quaternion::new(Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE);

    pub const fn new(r1: Elem, r2: Elem, r3: Elem, r4: Elem) -> Quaternion {
        Quaternion { r1, r2, r3, r4 }
    }

    pub fn coefficients(&self) -> [Elem; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }
}

impl Ring {
    pub fn q_add(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        Quaternion::new(
            self.add(x.r1, y.r1),
            self.add(x.r2, y.r2),
            self.add(x.r3, y.r3),
            self.add(x.r4, y.r4),
        )
    }

    pub fn q_neg(&self, x: &Quaternion) -> Quaternion {
        Quaternion::new(self.neg(x.r1), self.neg(x.r2), self.neg(x.r3), self.neg(x.r4))
    }

    pub fn q_sub(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        self.q_add(x, &self.q_neg(y))
    }

    /// Hamilton product.
    pub fn q_mul(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        let m = |a, b| self.mul(a, b);
        let sum = |terms: [Elem; 4]| terms.iter().fold(Elem::ZERO, |acc, &t| self.add(acc, t));
        let n = |a| self.neg(a);
        Quaternion::new(
            sum([m(x.r1, y.r1), n(m(x.r2, y.r2)), n(m(x.r3, y.r3)), n(m(x.r4, y.r4))]),
            sum([m(x.r1, y.r2), m(x.r2, y.r1), m(x.r3, y.r4), n(m(x.r4, y.r3))]),
            sum([m(x.r1, y.r3), n(m(x.r2, y.r4)), m(x.r3, y.r1), m(x.r4, y.r2)]),
            sum([m(x.r1, y.r4), m(x.r2, y.r3), n(m(x.r3, y.r2)), m(x.r4, y.r1)]),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("a² + b² != -1")]
    NotSumOfSquares,
    #[error("images of i, j, k violate the quaternion relations")]
    RelationsFailed,
    #[error("basis images are not an R-basis of M₂(R)")]
    Singular,
}

/// Explicit isomorphism `H(R) → M₂(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionIso {
    a: Elem,
    b: Elem,
    /// Images of 1, i, j, k.
    basis: [Mat2; 4],
    /// Row `c` maps `(A11, A12, A21, A22)` to the coefficient of basis element `c`.
    functionals: [[Elem; 4]; 4],
    /// Determinant of the coordinate matrix of `basis`.
    det: Elem,
}

impl QuaternionIso {
    /// Builds the isomorphism from [`Ring::solve_sum_of_squares`].
    pub fn build(ring: &Ring) -> QuaternionIso {
        let (a, b) = ring.solve_sum_of_squares();
        Self::with_pair(ring, a, b).expect("sum-of-squares solution yields an isomorphism")
    }

    pub fn with_pair(ring: &Ring, a: Elem, b: Elem) -> Result<QuaternionIso, IsoError> {
        let lhs = ring.add(ring.add(ring.mul(a, a), ring.mul(b, b)), Elem::ONE);
        if !lhs.is_zero() {
            return Err(IsoError::NotSumOfSquares);
        }
        let phi_i = Mat2::new(a, b, b, ring.neg(a));
        let phi_j = Mat2::new(Elem::ZERO, Elem::ONE, ring.neg(Elem::ONE), Elem::ZERO);
        let phi_k = ring.mat_mul(&phi_i, &phi_j);
        let minus_i = ring.mat_neg(&Mat2::IDENTITY);
        let relations = ring.mat_mul(&phi_i, &phi_i) == minus_i
            && ring.mat_mul(&phi_j, &phi_j) == minus_i
            && ring.mat_mul(&phi_k, &phi_k) == minus_i
            && ring.mat_mul(&phi_j, &phi_i) == ring.mat_neg(&phi_k)
            && ring.mat_mul(&phi_k, &phi_k) == ring.mat_product(&[phi_i, phi_j, phi_k]);
        if !relations {
            return Err(IsoError::RelationsFailed);
        }
        let basis = [Mat2::IDENTITY, phi_i, phi_j, phi_k];
        let mut coords = [[Elem::ZERO; 4]; 4];
        for (col, m) in basis.iter().enumerate() {
            for (row, e) in m.entries().iter().enumerate() {
                coords[row][col] = *e;
            }
        }
        let (functionals, det) = invert4(ring, coords).ok_or(IsoError::Singular)?;
        Ok(QuaternionIso {
            a,
            b,
            basis,
            functionals,
            det,
        })
    }

    pub fn pair(&self) -> (Elem, Elem) {
        (self.a, self.b)
    }

    /// Images of `1, i, j, k`.
    pub fn basis(&self) -> &[Mat2; 4] {
        &self.basis
    }

    /// Determinant of the coordinate matrix; always a unit.
    pub fn coordinate_det(&self) -> Elem {
        self.det
    }

    pub fn to_mat(&self, ring: &Ring, x: &Quaternion) -> Mat2 {
        x.coefficients()
            .iter()
            .zip(&self.basis)
            .fold(Mat2::ZERO, |acc, (&c, m)| {
                ring.mat_add(&acc, &ring.mat_scale(c, m))
            })
    }

    pub fn from_mat(&self, ring: &Ring, m: &Mat2) -> Quaternion {
        let v = m.entries();
        let coord = |row: &[Elem; 4]| {
            row.iter()
                .zip(v.iter())
                .fold(Elem::ZERO, |acc, (&f, &e)| ring.add(acc, ring.mul(f, e)))
        };
        Quaternion::new(
            coord(&self.functionals[0]),
            coord(&self.functionals[1]),
            coord(&self.functionals[2]),
            coord(&self.functionals[3]),
        )
    }

    pub fn is_nilpotent(&self, ring: &Ring, x: &Quaternion) -> bool {
        ring.is_nilpotent(&self.to_mat(ring, x))
    }
}

/// Gauss-Jordan over a local ring: any unit in the pivot column will do. Returns the inverse
/// and the determinant, or `None` when the determinant is not a unit.
fn invert4(ring: &Ring, mut m: [[Elem; 4]; 4]) -> Option<([[Elem; 4]; 4], Elem)> {
    let mut inv = [[Elem::ZERO; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Elem::ONE;
    }
    let mut det = Elem::ONE;
    for col in 0..4 {
        let pivot = (col..4).find(|&r| ring.is_unit(m[r][col]))?;
        if pivot != col {
            m.swap(pivot, col);
            inv.swap(pivot, col);
            det = ring.neg(det);
        }
        let p = m[col][col];
        det = ring.mul(det, p);
        let p_inv = ring.inverse(p).ok()?;
        for c in 0..4 {
            m[col][c] = ring.mul(m[col][c], p_inv);
            inv[col][c] = ring.mul(inv[col][c], p_inv);
        }
        for r in 0..4 {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col];
            for c in 0..4 {
                m[r][c] = ring.sub(m[r][c], ring.mul(f, m[col][c]));
                inv[r][c] = ring.sub(inv[r][c], ring.mul(f, inv[col][c]));
            }
        }
    }
    Some((inv, det))
}
