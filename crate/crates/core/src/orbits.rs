//! Conjugation orbits under `GL₂(R)` and the union of the orbits of all `M(a, b)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::chain_ring::{Elem, Ring};
use crate::error::MatError;
use crate::mat2::Mat2;

/// The special conjugators `T_t = ((1,t),(0,1))` and `V_α = ((1,0),(0,α))`, or any
/// invertible matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugator {
    Tt(Elem),
    Valpha(Elem),
    General(Mat2),
}

impl Conjugator {
    pub fn matrix(&self, ring: &Ring) -> Result<Mat2, MatError> {
        match *self {
            Conjugator::Tt(t) => Ok(Mat2::new(Elem::ONE, t, Elem::ZERO, Elem::ONE)),
            Conjugator::Valpha(alpha) if ring.is_unit(alpha) => {
                Ok(Mat2::new(Elem::ONE, Elem::ZERO, Elem::ZERO, alpha))
            }
            Conjugator::Valpha(_) => Err(MatError::NotInvertible),
            Conjugator::General(p) if ring.is_invertible(&p) => Ok(p),
            Conjugator::General(_) => Err(MatError::NotInvertible),
        }
    }
}

impl Ring {
    /// `P⁻¹ · A · P`.
    pub fn conjugate(&self, a: &Mat2, p: &Mat2) -> Result<Mat2, MatError> {
        let p_inv = self.mat_inverse(p)?;
        Ok(self.mat_mul(&self.mat_mul(&p_inv, a), p))
    }

    pub fn conjugate_by(&self, a: &Mat2, c: &Conjugator) -> Result<Mat2, MatError> {
        self.conjugate(a, &c.matrix(self)?)
    }
}

/// `GL₂(R)` in packed-index order, each element paired with its inverse.
#[derive(Clone, Debug)]
pub struct Gl2 {
    elems: Vec<(Mat2, Mat2)>,
}

impl Gl2 {
    pub fn new(ring: &Ring, cap: u64) -> Result<Gl2, MatError> {
        let elems = ring
            .enumerate_invertibles(cap)?
            .into_iter()
            .map(|p| {
                let inv = ring.mat_inverse(&p).expect("filtered on invertibility");
                (p, inv)
            })
            .collect();
        Ok(Gl2 { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `(P, P⁻¹)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = &(Mat2, Mat2)> {
        self.elems.iter()
    }

    pub fn get(&self, i: usize) -> Option<&(Mat2, Mat2)> {
        self.elems.get(i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Mat2,
    /// Sorted, deduplicated packed indices.
    pub members: Vec<u64>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, ring: &Ring, m: &Mat2) -> bool {
        self.members.binary_search(&ring.pack(m)).is_ok()
    }

    /// Smallest `P` with `P⁻¹ · representative · P = m`.
    pub fn certify(&self, ring: &Ring, gl2: &Gl2, m: &Mat2) -> Option<Mat2> {
        gl2.iter()
            .find(|(p, p_inv)| ring.mat_mul(&ring.mat_mul(p_inv, &self.representative), p) == *m)
            .map(|(p, _)| *p)
    }
}

/// Full sweep of `{P⁻¹ A P : P ∈ GL₂(R)}`.
pub fn orbit_of(ring: &Ring, gl2: &Gl2, a: &Mat2) -> Orbit {
    let mut members: Vec<u64> = gl2
        .iter()
        .map(|(p, p_inv)| ring.pack(&ring.mat_mul(&ring.mat_mul(p_inv, a), p)))
        .collect();
    members.sort_unstable();
    members.dedup();
    Orbit {
        representative: *a,
        members,
    }
}

/// Certificate that `P⁻¹ · M(a, b) · P` equals the queried matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MCertificate {
    pub a: Elem,
    pub b: Elem,
    pub conjugator: Mat2,
}

impl MCertificate {
    pub fn verify(&self, ring: &Ring, target: &Mat2) -> bool {
        ring.conjugate(&Mat2::m(self.a, self.b), &self.conjugator)
            .map(|m| m == *target)
            .unwrap_or(false)
    }
}

/// The union of all orbits `O_{M(a,b)}`, with a canonical witness for each member.
///
/// Witnesses are the smallest `M(a, b)` in packed order whose orbit contains the member, then
/// the smallest conjugator `P` in packed order.
#[derive(Clone, Debug)]
pub struct MOrbitAtlas {
    union: BitSet,
    witnesses: BTreeMap<u64, (Mat2, Mat2)>,
    /// One `M(a, b)` per distinct orbit, in packed order, with the orbit size.
    orbits: Vec<(Mat2, usize)>,
}

impl MOrbitAtlas {
    pub fn build(ring: &Ring, gl2: &Gl2) -> MOrbitAtlas {
        let count = ring.matrix_count().expect("Gl2 exists, so M₂(R) is enumerable");
        let mut union = BitSet::new(count);
        let mut witnesses = BTreeMap::new();
        let mut orbits = Vec::new();
        // M(a, b) has packed index a + b·q^n, so iterate b outer, a inner
        for b in ring.elements() {
            for a in ring.elements() {
                let m = Mat2::m(a, b);
                if union.contains(ring.pack(&m)) {
                    // orbits are equal or disjoint
                    continue;
                }
                let mut size = 0;
                for (p, p_inv) in gl2.iter() {
                    let image = ring.mat_mul(&ring.mat_mul(p_inv, &m), p);
                    let idx = ring.pack(&image);
                    if union.insert(idx) {
                        witnesses.insert(idx, (m, *p));
                        size += 1;
                    }
                }
                orbits.push((m, size));
            }
        }
        MOrbitAtlas {
            union,
            witnesses,
            orbits,
        }
    }

    pub fn union(&self) -> &BitSet {
        &self.union
    }

    pub fn size(&self) -> u64 {
        self.union.count()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Distinct orbit representatives `M(a, b)` and their orbit sizes.
    pub fn orbits(&self) -> &[(Mat2, usize)] {
        &self.orbits
    }

    pub fn contains(&self, ring: &Ring, m: &Mat2) -> bool {
        self.union.contains(ring.pack(m))
    }

    pub fn certificate(&self, ring: &Ring, m: &Mat2) -> Option<MCertificate> {
        self.witnesses.get(&ring.pack(m)).map(|(rep, p)| MCertificate {
            a: rep.a11,
            b: rep.a12,
            conjugator: *p,
        })
    }
}
