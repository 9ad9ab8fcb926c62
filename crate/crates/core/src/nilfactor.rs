//! Products of nilpotent matrices: exhaustive censuses, the closed-form count, constructive
//! factorizations of orbit-union members, the sharpness example, and the determinant
//! valuation scan.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::chain_ring::{Elem, Ring};
use crate::error::MatError;
use crate::gf::is_prime;
use crate::mat2::Mat2;
use crate::orbits::MOrbitAtlas;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("s = {s} is outside the theorem's range s >= 2n - 1 = {min}")]
    OutsideRange { s: u32, min: u32 },
    #[error("{0} is not a power of an odd prime")]
    NotOddPrimePower(u64),
    #[error("factor count must be at least 1")]
    ZeroFactors,
    #[error("example inapplicable: {0}")]
    ExampleInapplicable(&'static str),
    #[error("the orbit union characterizes products of s >= {min} nilpotents only (s = {s})")]
    MethodInapplicable { s: u32, min: u32 },
    #[error(transparent)]
    Mat(#[from] MatError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("impossible: trace obstruction (nonzero residue with zero trace is not a product of two nilpotents)")]
    TraceObstruction,
    #[error("not in orbit union")]
    NotInOrbitUnion,
    #[error("not nilpotent")]
    NotNilpotent,
    #[error("factor count must be at least 1")]
    ZeroFactors,
}

fn odd_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 3 || q.is_multiple_of(2) {
        return None;
    }
    let p = (3..=q).find(|d| q.is_multiple_of(*d))?;
    if !is_prime(p) {
        return None;
    }
    let (mut rest, mut r) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

/// Smallest `s` covered by the closed-form count: `2n - 1`.
pub fn formula_min_s(n: u32) -> u32 {
    2 * n - 1
}

/// Smallest `s` for which the products of `s` nilpotents are exactly the orbit union.
pub fn union_min_s(n: u32) -> u32 {
    if n == 1 {
        3
    } else {
        2 * n - 1
    }
}

/// `(q + 2)·q^{3n+1} + q³ + q² + 1`.
fn formula_numerator(q: &BigUint, n: u32) -> BigUint {
    let q2 = q * q;
    let q3 = &q2 * q;
    (q + 2u32) * q.pow(3 * n + 1) + q3 + q2 + 1u32
}

/// Whether `q² + q + 1` divides `(q + 2)·q^{3n+1} + q³ + q² + 1`.
pub fn formula_divisible(q: u64, n: u32) -> bool {
    let q = BigUint::from(q);
    let d = &q * &q + &q + 1u32;
    (formula_numerator(&q, n) % d).is_zero()
}

/// Number of elements of `H(R)` that are products of `s` nilpotents, for `|R| = q^n`.
///
/// `q²` for `n = 1, s = 1`; `q³ - q + 1` for `n = 1, s = 2`; otherwise
/// `q^{2n} - q^{n+1} + ((q+2)q^{3n+1} + q³ + q² + 1)/(q² + q + 1) - 1`.
pub fn formula_count(q: u64, n: u32, s: u32) -> Result<BigUint, NilError> {
    odd_prime_power(q).ok_or(NilError::NotOddPrimePower(q))?;
    if n == 0 || s == 0 {
        return Err(NilError::ZeroFactors);
    }
    if s < formula_min_s(n) {
        return Err(NilError::OutsideRange {
            s,
            min: formula_min_s(n),
        });
    }
    let qb = BigUint::from(q);
    if n == 1 && s == 1 {
        return Ok(&qb * &qb);
    }
    if n == 1 && s == 2 {
        return Ok(qb.pow(3) - &qb + 1u32);
    }
    let denom = &qb * &qb + &qb + 1u32;
    let numer = formula_numerator(&qb, n);
    assert!((&numer % &denom).is_zero(), "closed form is not an integer");
    Ok(qb.pow(2 * n) - qb.pow(n + 1) + numer / denom - BigUint::one())
}

/// `S_{k+1} ∩ rows` for the rows of `prev` whose packed index lies in `[start, end)`:
/// every `X·N` with `X ∈ prev`, `N ∈ factors`.
pub fn product_step(ring: &Ring, prev: &BitSet, factors: &[Mat2], start: u64, end: u64) -> BitSet {
    let mut next = BitSet::new(prev.len());
    for idx in prev.iter_range(start, end) {
        let x = ring.unpack(idx);
        for f in factors {
            next.insert(ring.pack(&ring.mat_mul(&x, f)));
        }
    }
    next
}

/// `S_s`, the set of ordered products of `s` nilpotents, with a caller-supplied step so the
/// product can be sharded. Each round is a full product, since `S_s` need not be monotone in `s`.
pub fn census_sets_with<F>(ring: &Ring, s: u32, cap: u64, mut step: F) -> Result<BitSet, NilError>
where
    F: FnMut(&BitSet, &[Mat2]) -> BitSet,
{
    if s == 0 {
        return Err(NilError::ZeroFactors);
    }
    let count = ring.check_cap(cap)?;
    let nilpotents = ring.enumerate_nilpotents(cap)?;
    let mut current = BitSet::new(count);
    for m in &nilpotents {
        current.insert(ring.pack(m));
    }
    for _ in 1..s {
        current = step(&current, &nilpotents);
    }
    Ok(current)
}

pub fn census_set_product(ring: &Ring, s: u32, cap: u64) -> Result<BitSet, NilError> {
    census_sets_with(ring, s, cap, |prev, nil| {
        product_step(ring, prev, nil, 0, prev.len())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusMethod {
    SetProduct,
    OrbitUnion,
    FormulaOnly,
}

impl CensusMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CensusMethod::SetProduct => "set-product",
            CensusMethod::OrbitUnion => "orbit-union",
            CensusMethod::FormulaOnly => "formula",
        }
    }
}

impl fmt::Display for CensusMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub ring: String,
    pub q: u32,
    pub n: u32,
    pub s: u32,
    pub brute_count: Option<u64>,
    /// Absent where the closed form makes no claim (`n >= 2`, `s < 2n - 1`).
    pub formula_count: Option<BigUint>,
    pub method: CensusMethod,
}

impl CensusReport {
    /// Fills in the closed form wherever it applies.
    pub fn new(ring: &Ring, s: u32, brute_count: Option<u64>, method: CensusMethod) -> CensusReport {
        let formula_count = formula_count(ring.q() as u64, ring.n(), s).ok();
        CensusReport {
            ring: ring.spec().to_string(),
            q: ring.q(),
            n: ring.n(),
            s,
            brute_count,
            formula_count,
            method,
        }
    }

    /// `Some(equal)` when both counts are present.
    pub fn matches(&self) -> Option<bool> {
        match (&self.brute_count, &self.formula_count) {
            (Some(b), Some(f)) => Some(BigUint::from(*b) == *f),
            _ => None,
        }
    }
}

pub fn census_report_set_product(ring: &Ring, s: u32, cap: u64) -> Result<CensusReport, NilError> {
    let set = census_set_product(ring, s, cap)?;
    Ok(CensusReport::new(ring, s, Some(set.count()), CensusMethod::SetProduct))
}

/// Counts products of `s` nilpotents as the size of the orbit union, valid for
/// `s >= union_min_s(n)`.
pub fn census_orbit_union(ring: &Ring, atlas: &MOrbitAtlas, s: u32) -> Result<CensusReport, NilError> {
    let min = union_min_s(ring.n());
    if s < min {
        return Err(NilError::MethodInapplicable { s, min });
    }
    Ok(CensusReport::new(ring, s, Some(atlas.size()), CensusMethod::OrbitUnion))
}

pub fn census_formula_only(ring: &Ring, s: u32) -> Result<CensusReport, NilError> {
    formula_count(ring.q() as u64, ring.n(), s)?;
    Ok(CensusReport::new(ring, s, None, CensusMethod::FormulaOnly))
}

/// `|N(M₂(R))|` by enumeration against `q^{2(2n-1)}`.
pub fn nilpotent_count_check(ring: &Ring, cap: u64) -> Result<(u64, BigUint, bool), NilError> {
    let enumerated = ring.enumerate_nilpotents(cap)?.len() as u64;
    let expected = BigUint::from(ring.q()).pow(2 * (2 * ring.n() - 1));
    let ok = BigUint::from(enumerated) == expected;
    Ok((enumerated, expected, ok))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilFactorization {
    pub target: Mat2,
    pub factors: Vec<Mat2>,
    /// `P` with `P⁻¹ · M(a, b) · P = target`; the identity when no orbit certificate was used.
    pub conjugator: Mat2,
}

impl NilFactorization {
    /// Every factor nilpotent and the ordered product equal to the target.
    pub fn verify(&self, ring: &Ring) -> bool {
        !self.factors.is_empty()
            && self.factors.iter().all(|f| ring.is_nilpotent(f))
            && ring.mat_product(&self.factors) == self.target
    }
}

/// `((-1, 1), (-1, 1))`, with `E12 · K · E21 = E12 · E21`.
fn k_matrix(ring: &Ring) -> Mat2 {
    let m1 = ring.neg(Elem::ONE);
    Mat2::new(m1, Elem::ONE, m1, Elem::ONE)
}

/// Factors `M(a, b)` into exactly `s` nilpotents using fixed identities.
///
/// For `s >= 3` a short base factorization of the right parity is padded on the left with
/// pairs `E12, E21`, whose product `E11` fixes `M(a, b)`. For `s = 2` only the cases free of
/// the trace obstruction are handled. Returns `None` when no identity applies.
pub fn factor_m(ring: &Ring, a: Elem, b: Elem, s: u32) -> Option<Vec<Mat2>> {
    let m = Mat2::m(a, b);
    let lower_row = Mat2::new(Elem::ZERO, Elem::ZERO, a, b);
    match s {
        0 => None,
        1 => ring.is_nilpotent(&m).then(|| vec![m]),
        2 if ring.is_unit(a) => {
            // ((-b, -a⁻¹b²), (a, b)) has trace 0 and determinant 0
            let a_inv = ring.inverse(a).ok()?;
            let top = Mat2::new(
                ring.neg(b),
                ring.neg(ring.mul(a_inv, ring.mul(b, b))),
                a,
                b,
            );
            Some(vec![Mat2::E12, top])
        }
        2 if ring.in_radical(b) => Some(vec![Mat2::E12, lower_row]),
        2 => None,
        _ => {
            let odd = s % 2 == 1;
            let k = k_matrix(ring);
            let base = if ring.in_radical(a) {
                if odd {
                    vec![m]
                } else {
                    vec![Mat2::E12, k, Mat2::E21, m]
                }
            } else if ring.in_radical(b) {
                if odd {
                    vec![Mat2::E12, k, lower_row]
                } else {
                    vec![Mat2::E12, Mat2::E21, k, lower_row]
                }
            } else {
                let a_inv = ring.inverse(a).ok()?;
                let b_inv = ring.inverse(b).ok()?;
                let q = Mat2::new(
                    Elem::ONE,
                    ring.mul(a_inv, b),
                    ring.neg(ring.mul(b_inv, a)),
                    ring.neg(Elem::ONE),
                );
                if odd {
                    vec![Mat2::E12, Mat2::new(Elem::ZERO, Elem::ZERO, a, Elem::ZERO), q]
                } else {
                    let minus_b = Mat2::new(Elem::ZERO, Elem::ZERO, ring.neg(b), Elem::ZERO);
                    vec![Mat2::E12, minus_b, Mat2::E12, q]
                }
            };
            let pairs = (s as usize - base.len()) / 2;
            let mut factors = Vec::with_capacity(s as usize);
            for _ in 0..pairs {
                factors.push(Mat2::E12);
                factors.push(Mat2::E21);
            }
            factors.extend(base);
            Some(factors)
        }
    }
}

/// Builds certified factorizations into a prescribed number of nilpotents.
pub struct Decomposer<'a> {
    ring: &'a Ring,
    atlas: &'a MOrbitAtlas,
    pair_search: Option<&'a [Mat2]>,
}

impl<'a> Decomposer<'a> {
    pub fn new(ring: &'a Ring, atlas: &'a MOrbitAtlas) -> Self {
        Decomposer {
            ring,
            atlas,
            pair_search: None,
        }
    }

    /// Enables an exhaustive search over pairs of `nilpotents` for two-factor requests
    /// outside the orbit union.
    pub fn with_pair_search(mut self, nilpotents: &'a [Mat2]) -> Self {
        self.pair_search = Some(nilpotents);
        self
    }

    pub fn decompose(&self, target: &Mat2, s: u32) -> Result<NilFactorization, DecomposeError> {
        let ring = self.ring;
        let plain = |factors: Vec<Mat2>| NilFactorization {
            target: *target,
            factors,
            conjugator: Mat2::IDENTITY,
        };
        let result = match s {
            0 => return Err(DecomposeError::ZeroFactors),
            1 if ring.is_nilpotent(target) => plain(vec![*target]),
            1 => return Err(DecomposeError::NotNilpotent),
            _ if target.is_zero() => plain(vec![Mat2::E12; s as usize]),
            _ => {
                if s == 2 && self.trace_obstructed(target) {
                    return Err(DecomposeError::TraceObstruction);
                }
                match self.atlas.certificate(ring, target) {
                    Some(cert) => {
                        let base = factor_m(ring, cert.a, cert.b, s)
                            .ok_or(DecomposeError::TraceObstruction)?;
                        let p = cert.conjugator;
                        let p_inv = ring.mat_inverse(&p).expect("certificate conjugator is invertible");
                        let factors = base
                            .iter()
                            .map(|f| ring.mat_mul(&ring.mat_mul(&p_inv, f), &p))
                            .collect();
                        NilFactorization {
                            target: *target,
                            factors,
                            conjugator: p,
                        }
                    }
                    None if s == 2 => self
                        .search_pair(target)
                        .map(plain)
                        .ok_or(DecomposeError::NotInOrbitUnion)?,
                    None => return Err(DecomposeError::NotInOrbitUnion),
                }
            }
        };
        assert!(result.verify(ring), "constructed factorization failed verification");
        Ok(result)
    }

    /// A product of two nilpotents reduces to one over GF(q), where a nonzero such product
    /// has nonzero trace.
    fn trace_obstructed(&self, target: &Mat2) -> bool {
        let ring = self.ring;
        let res = ring.residue_matrix(target);
        let field = ring.field();
        res.iter().any(|e| !e.is_zero()) && field.add(res[0], res[3]).is_zero()
    }

    fn search_pair(&self, target: &Mat2) -> Option<Vec<Mat2>> {
        let nil = self.pair_search?;
        nil.iter().find_map(|x| {
            nil.iter()
                .find(|y| self.ring.mat_mul(x, y) == *target)
                .map(|y| vec![*x, *y])
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessCertificate {
    /// `((π^{n-1}, π^{n-1}), (0, π^{n-1}))`.
    pub target: Mat2,
    /// `2n - 2` factors alternating `((π, 1), ((n-1)π, 0))` and `((0, (n-1)⁻¹), (π, 0))`.
    pub factorization: NilFactorization,
    pub in_orbit_union: bool,
}

/// A product of `2n - 2` nilpotents lying outside every orbit `O_{M(a,b)}`.
pub fn sharpness_example(ring: &Ring, atlas: &MOrbitAtlas) -> Result<SharpnessCertificate, NilError> {
    let n = ring.n();
    if n < 2 {
        return Err(NilError::ExampleInapplicable("needs n >= 2"));
    }
    let n_minus_1 = ring.from_int(n as i64 - 1);
    let inv = ring
        .inverse(n_minus_1)
        .map_err(|_| NilError::ExampleInapplicable("n - 1 is not a unit"))?;
    let x = ring.uniformizer();
    let n1 = Mat2::new(x, Elem::ONE, ring.mul(n_minus_1, x), Elem::ZERO);
    let n2 = Mat2::new(Elem::ZERO, inv, x, Elem::ZERO);
    let xp = ring.pi_pow(n - 1);
    let target = Mat2::new(xp, xp, Elem::ZERO, xp);
    let mut factors = Vec::with_capacity(2 * (n as usize - 1));
    for _ in 0..n - 1 {
        factors.push(n1);
        factors.push(n2);
    }
    let factorization = NilFactorization {
        target,
        factors,
        conjugator: Mat2::IDENTITY,
    };
    assert!(factorization.verify(ring), "sharpness factorization failed verification");
    Ok(SharpnessCertificate {
        target,
        in_orbit_union: atlas.contains(ring, &target),
        factorization,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub samples: u64,
    /// Samples whose product met the valuation hypothesis.
    pub hypothesis_hits: u64,
    /// Products that met the hypothesis with a nonzero `(2,2)` entry.
    pub violations: Vec<Mat2>,
    /// The hypothesis cannot be met for this chain length.
    pub vacuous: bool,
}

/// Samples products `X` of `2n - 3` nilpotents. Whenever `X₂₁, X₂₂ ∈ J^{n-1}`,
/// `val(X₁₁) = l < val(X₁₂) = k <= n - 2`, the entry `X₂₂` must vanish.
pub fn deter_obstruction_scan<R: Rng + ?Sized>(
    ring: &Ring,
    nilpotents: &[Mat2],
    samples: u64,
    rng: &mut R,
) -> ScanReport {
    let n = ring.n();
    // l < k <= n - 2 needs n >= 3
    if n < 3 {
        return ScanReport {
            vacuous: true,
            ..ScanReport::default()
        };
    }
    let mut report = ScanReport::default();
    if nilpotents.is_empty() {
        return report;
    }
    let len = (2 * n - 3) as usize;
    for _ in 0..samples {
        let mut x = Mat2::IDENTITY;
        for _ in 0..len {
            let f = &nilpotents[rng.random_range(0..nilpotents.len())];
            x = ring.mat_mul(&x, f);
        }
        report.samples += 1;
        let l = ring.valuation(x.a11);
        let k = ring.valuation(x.a12);
        let hyp = ring.valuation(x.a21) >= n - 1
            && ring.valuation(x.a22) >= n - 1
            && l < k
            && k <= n - 2;
        if hyp {
            report.hypothesis_hits += 1;
            if !x.a22.is_zero() {
                report.violations.push(x);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_ring::RingSpec;
    use crate::mat2::DEFAULT_CAP;
    use crate::orbits::Gl2;

    fn ring(s: &str) -> Ring {
        Ring::new(s.parse::<RingSpec>().unwrap()).unwrap()
    }

    fn atlas(r: &Ring) -> MOrbitAtlas {
        MOrbitAtlas::build(r, &Gl2::new(r, DEFAULT_CAP).unwrap())
    }

    fn mat(r: &Ring, e: [i64; 4]) -> Mat2 {
        Mat2::new(r.from_int(e[0]), r.from_int(e[1]), r.from_int(e[2]), r.from_int(e[3]))
    }

    #[test]
    fn formula_examples() {
        assert_eq!(formula_count(3, 2, 3).unwrap(), BigUint::from(897u32));
        assert_eq!(formula_count(3, 1, 2).unwrap(), BigUint::from(25u32));
        assert_eq!(formula_count(3, 1, 1).unwrap(), BigUint::from(9u32));
        assert_eq!(formula_count(3, 3, 5).unwrap(), BigUint::from(23361u32));
        assert_eq!(formula_count(3, 2, 2), Err(NilError::OutsideRange { s: 2, min: 3 }));
        assert_eq!(formula_count(4, 1, 1), Err(NilError::NotOddPrimePower(4)));
        assert_eq!(formula_count(15, 1, 1), Err(NilError::NotOddPrimePower(15)));
        assert!(formula_count(9, 1, 3).is_ok());
    }

    #[test]
    fn odd_prime_powers() {
        assert_eq!(odd_prime_power(27), Some((3, 3)));
        assert_eq!(odd_prime_power(2197), Some((13, 3)));
        assert_eq!(odd_prime_power(45), None);
        assert_eq!(odd_prime_power(1), None);
    }

    #[test]
    fn census_examples() {
        let gf3 = ring("zmod:3^1");
        let counts: Vec<u64> = (1..=4)
            .map(|s| census_set_product(&gf3, s, DEFAULT_CAP).unwrap().count())
            .collect();
        assert_eq!(counts, vec![9, 25, 33, 33]);
        let z9 = ring("zmod:3^2");
        let report = census_report_set_product(&z9, 3, DEFAULT_CAP).unwrap();
        assert_eq!(report.brute_count, Some(897));
        assert_eq!(report.matches(), Some(true));
        let report = census_report_set_product(&z9, 2, DEFAULT_CAP).unwrap();
        assert_eq!(report.formula_count, None);
        assert_eq!(report.matches(), None);
    }

    #[test]
    fn orbit_union_census() {
        let z9 = ring("zmod:3^2");
        let at = atlas(&z9);
        assert_eq!(census_orbit_union(&z9, &at, 3).unwrap().brute_count, Some(897));
        let gf3 = ring("zmod:3^1");
        let at = atlas(&gf3);
        assert_eq!(census_orbit_union(&gf3, &at, 3).unwrap().brute_count, Some(33));
        assert_eq!(
            census_orbit_union(&gf3, &at, 2),
            Err(NilError::MethodInapplicable { s: 2, min: 3 })
        );
    }

    #[test]
    fn decompose_examples() {
        let gf3 = ring("zmod:3^1");
        let at = atlas(&gf3);
        let d = Decomposer::new(&gf3, &at);
        let f = d.decompose(&Mat2::m(Elem::ONE, Elem::ONE), 2).unwrap();
        assert_eq!(f.factors, vec![Mat2::E12, mat(&gf3, [-1, -1, 1, 1])]);
        assert_eq!(
            d.decompose(&Mat2::m(Elem::ZERO, Elem::ONE), 2),
            Err(DecomposeError::TraceObstruction)
        );
        let zero = d.decompose(&Mat2::ZERO, 2).unwrap();
        assert_eq!(zero.factors, vec![Mat2::E12, Mat2::E12]);
        assert_eq!(d.decompose(&Mat2::IDENTITY, 1), Err(DecomposeError::NotNilpotent));
        assert_eq!(d.decompose(&Mat2::IDENTITY, 3), Err(DecomposeError::NotInOrbitUnion));

        let z9 = ring("zmod:3^2");
        let at = atlas(&z9);
        let d = Decomposer::new(&z9, &at);
        let f = d.decompose(&Mat2::m(Elem::ONE, Elem::ONE), 3).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(f.verify(&z9));
        assert_eq!(
            d.decompose(&mat(&z9, [3, 3, 0, 3]), 3),
            Err(DecomposeError::NotInOrbitUnion)
        );
    }

    #[test]
    fn factor_m_identities_all_lengths() {
        let z9 = ring("zmod:3^2");
        for a in z9.elements() {
            for b in z9.elements() {
                for s in 3..=8 {
                    let f = factor_m(&z9, a, b, s).unwrap();
                    assert_eq!(f.len(), s as usize);
                    assert!(f.iter().all(|m| z9.is_nilpotent(m)));
                    assert_eq!(z9.mat_product(&f), Mat2::m(a, b));
                }
            }
        }
    }

    #[test]
    fn pair_search_finds_sharpness_target() {
        let z9 = ring("zmod:3^2");
        let at = atlas(&z9);
        let nil = z9.enumerate_nilpotents(DEFAULT_CAP).unwrap();
        let target = mat(&z9, [3, 3, 0, 3]);
        let d = Decomposer::new(&z9, &at).with_pair_search(&nil);
        let f = d.decompose(&target, 2).unwrap();
        assert!(f.verify(&z9));
    }

    #[test]
    fn sharpness_examples() {
        let z9 = ring("zmod:3^2");
        let cert = sharpness_example(&z9, &atlas(&z9)).unwrap();
        assert_eq!(cert.target, mat(&z9, [3, 3, 0, 3]));
        assert_eq!(
            cert.factorization.factors,
            vec![mat(&z9, [3, 1, 3, 0]), mat(&z9, [0, 1, 3, 0])]
        );
        assert!(!cert.in_orbit_union);

        let gf3 = ring("zmod:3^1");
        assert!(matches!(
            sharpness_example(&gf3, &atlas(&gf3)),
            Err(NilError::ExampleInapplicable(_))
        ));
        // n - 1 = 3 is not a unit mod 3
        let r = ring("polyq:3^1^4");
        assert_eq!(
            sharpness_example(&r, &atlas(&ring("zmod:3^1"))),
            Err(NilError::ExampleInapplicable("n - 1 is not a unit"))
        );
    }

    #[test]
    fn scan_vacuous_and_empty() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let z9 = ring("zmod:3^2");
        let nil = z9.enumerate_nilpotents(DEFAULT_CAP).unwrap();
        let rep = deter_obstruction_scan(&z9, &nil, 100, &mut rng);
        assert!(rep.vacuous && rep.violations.is_empty());
        let r = ring("polyq:3^1^3");
        let nil = r.enumerate_nilpotents(DEFAULT_CAP).unwrap();
        let rep = deter_obstruction_scan(&r, &nil, 0, &mut rng);
        assert_eq!(rep.samples, 0);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn nilpotent_counts() {
        for (s, expected) in [("zmod:3^1", 9u64), ("zmod:3^2", 729), ("polyq:3^1^2", 729)] {
            let (e, f, ok) = nilpotent_count_check(&ring(s), DEFAULT_CAP).unwrap();
            assert_eq!(e, expected);
            assert_eq!(f, BigUint::from(expected));
            assert!(ok);
        }
    }
}
