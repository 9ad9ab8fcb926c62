//! Finite commutative chain rings with residue field GF(q), q = p^r odd.
//!
//! Two families are supported: `Z/p^n` and `GF(q)[t]/(t^n)`. Both encode an element by its
//! little-endian digit vector in powers of the uniformizer π (`p` resp. `t`), each digit a
//! residue-field index in `[0, q)`. The packed index `Σ d_i q^i` is the canonical bijection
//! `R ↔ [0, q^n)`; for `Z/p^n` it coincides with the usual representative in `[0, p^n)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::RingError;
use crate::gf::{is_prime, FieldElem, ResidueField};

/// Maximal chain length; `3^20` is the largest power of the smallest odd prime below `2^32`.
pub const MAX_CHAIN_LENGTH: u32 = 20;

/// Rings with at most this many elements get precomputed addition and multiplication tables.
const TABLE_LIMIT: u32 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Z/p^n`; only valid with `r = 1`.
    IntegersModPn,
    /// `GF(p^r)[t]/(t^n)`.
    PolyQuotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub p: u32,
    pub r: u32,
    pub n: u32,
    pub family: Family,
    /// Monic irreducible defining GF(p^r), little-endian. `None` picks the smallest one.
    pub modulus_poly: Option<Vec<u32>>,
}

impl RingSpec {
    pub fn zmod(p: u32, n: u32) -> Self {
        RingSpec {
            p,
            r: 1,
            n,
            family: Family::IntegersModPn,
            modulus_poly: None,
        }
    }

    pub fn polyq(p: u32, r: u32, n: u32) -> Self {
        RingSpec {
            p,
            r,
            n,
            family: Family::PolyQuotient,
            modulus_poly: None,
        }
    }

    /// `q = p^r`, if it fits in a `u64`.
    pub fn q(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.r)
    }
}

/// Parses `zmod:p^n` or `polyq:p^r^n`.
impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RingError::SpecGrammar(s.to_string());
        let (family, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums: Vec<u32> = rest
            .split('^')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match (family.trim(), nums.as_slice()) {
            ("zmod", &[p, n]) => Ok(RingSpec::zmod(p, n)),
            ("polyq", &[p, r, n]) => Ok(RingSpec::polyq(p, r, n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::IntegersModPn => write!(f, "zmod:{}^{}", self.p, self.n),
            Family::PolyQuotient => write!(f, "polyq:{}^{}^{}", self.p, self.r, self.n),
        }
    }
}

/// A ring element, stored as its packed index.
///
/// Index 0 is the zero digit vector and index 1 is `(1, 0, ..., 0)`, so [`Elem::ZERO`] and
/// [`Elem::ONE`] are valid in every ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) const fn from_index(i: u32) -> Elem {
        Elem(i)
    }
}

#[derive(Clone, Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

/// A finite chain ring. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Ring {
    spec: RingSpec,
    field: ResidueField,
    q: u32,
    n: u32,
    size: u32,
    /// `q^i` for `i in 0..=n`.
    q_pows: Vec<u64>,
    tables: Option<Tables>,
}

type Digits = [u32; MAX_CHAIN_LENGTH as usize];

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring, RingError> {
        if spec.p == 2 {
            return Err(RingError::EvenCharacteristic);
        }
        if !is_prime(spec.p as u64) {
            return Err(RingError::NotPrime(spec.p));
        }
        if spec.n == 0 {
            return Err(RingError::BadParameter("chain length n must be >= 1"));
        }
        if spec.family == Family::IntegersModPn && spec.r != 1 {
            return Err(RingError::ZmodNeedsPrimeField);
        }
        if spec.family == Family::IntegersModPn && spec.modulus_poly.is_some() {
            return Err(RingError::BadModulus("integers mod p^n take no modulus polynomial"));
        }
        let field = ResidueField::new(spec.p, spec.r, spec.modulus_poly.as_deref())?;
        let q = field.order();
        if spec.n > MAX_CHAIN_LENGTH {
            return Err(RingError::TooLarge);
        }
        let size = (q as u64)
            .checked_pow(spec.n)
            .filter(|&s| s <= u32::MAX as u64)
            .ok_or(RingError::TooLarge)? as u32;
        let q_pows = (0..=spec.n).map(|i| (q as u64).pow(i)).collect();
        let mut ring = Ring {
            n: spec.n,
            spec,
            field,
            q,
            size,
            q_pows,
            tables: None,
        };
        if size <= TABLE_LIMIT {
            ring.tables = Some(ring.build_tables());
        }
        Ok(ring)
    }

    fn build_tables(&self) -> Tables {
        let s = self.size as usize;
        let mut add = Vec::with_capacity(s * s);
        let mut mul = Vec::with_capacity(s * s);
        for a in 0..self.size {
            for b in 0..self.size {
                add.push(self.slow_add(Elem(a), Elem(b)).0 as u16);
                mul.push(self.slow_mul(Elem(a), Elem(b)).0 as u16);
            }
        }
        let neg = (0..self.size).map(|a| self.slow_neg(Elem(a)).0 as u16).collect();
        Tables { add, mul, neg }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn r(&self) -> u32 {
        self.spec.r
    }

    /// Order of the residue field.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Chain length: `J(R)^n = 0` and `J(R)^{n-1} != 0`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `q^n`.
    pub fn cardinality(&self) -> u64 {
        self.size as u64
    }

    /// A generator of `J(R)`: `p` for `Z/p^n`, `t` for `GF(q)[t]/(t^n)`; zero when `n = 1`.
    pub fn uniformizer(&self) -> Elem {
        if self.n == 1 {
            Elem::ZERO
        } else {
            Elem(self.q)
        }
    }

    pub fn elem(&self, index: u64) -> Result<Elem, RingError> {
        if index < self.size as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(RingError::OutOfRange(index))
        }
    }

    fn decode(&self, a: Elem) -> Digits {
        let mut d = [0u32; MAX_CHAIN_LENGTH as usize];
        let mut x = a.0;
        for slot in d.iter_mut().take(self.n as usize) {
            *slot = x % self.q;
            x /= self.q;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> Elem {
        Elem(
            d.iter()
                .take(self.n as usize)
                .rev()
                .fold(0u32, |acc, &x| acc * self.q + x),
        )
    }

    /// Digit vector in powers of π, least significant first.
    pub fn digits(&self, a: Elem) -> Vec<FieldElem> {
        self.decode(a)[..self.n as usize]
            .iter()
            .map(|&d| FieldElem(d))
            .collect()
    }

    /// Inverse of [`Ring::digits`]; missing high digits are zero.
    pub fn from_digits(&self, digits: &[FieldElem]) -> Result<Elem, RingError> {
        if digits.len() > self.n as usize {
            return Err(RingError::BadParameter("more digits than the chain length"));
        }
        if let Some(d) = digits.iter().find(|d| d.0 >= self.q) {
            return Err(RingError::OutOfRange(d.0 as u64));
        }
        let raw: Vec<u32> = digits.iter().map(|d| d.0).collect();
        Ok(self.encode(&raw))
    }

    fn slow_add(&self, a: Elem, b: Elem) -> Elem {
        match self.spec.family {
            Family::IntegersModPn => Elem(((a.0 as u64 + b.0 as u64) % self.size as u64) as u32),
            Family::PolyQuotient => {
                let (da, db) = (self.decode(a), self.decode(b));
                let mut out = [0u32; MAX_CHAIN_LENGTH as usize];
                for i in 0..self.n as usize {
                    out[i] = self.field.add(FieldElem(da[i]), FieldElem(db[i])).0;
                }
                self.encode(&out)
            }
        }
    }

    fn slow_neg(&self, a: Elem) -> Elem {
        match self.spec.family {
            Family::IntegersModPn => Elem(((self.size as u64 - a.0 as u64) % self.size as u64) as u32),
            Family::PolyQuotient => {
                let da = self.decode(a);
                let mut out = [0u32; MAX_CHAIN_LENGTH as usize];
                for i in 0..self.n as usize {
                    out[i] = self.field.neg(FieldElem(da[i])).0;
                }
                self.encode(&out)
            }
        }
    }

    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        match self.spec.family {
            Family::IntegersModPn => Elem(((a.0 as u64 * b.0 as u64) % self.size as u64) as u32),
            Family::PolyQuotient => {
                let n = self.n as usize;
                let (da, db) = (self.decode(a), self.decode(b));
                let mut out = [0u32; MAX_CHAIN_LENGTH as usize];
                for i in 0..n {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..n - i {
                        let term = self.field.mul(FieldElem(da[i]), FieldElem(db[j]));
                        out[i + j] = self.field.add(FieldElem(out[i + j]), term).0;
                    }
                }
                self.encode(&out)
            }
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.add[a.0 as usize * self.size as usize + b.0 as usize] as u32),
            None => self.slow_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.mul[a.0 as usize * self.size as usize + b.0 as usize] as u32),
            None => self.slow_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.neg[a.0 as usize] as u32),
            None => self.slow_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of the integer `k` under `Z -> R`.
    pub fn from_int(&self, k: i64) -> Elem {
        match self.spec.family {
            Family::IntegersModPn => Elem(k.rem_euclid(self.size as i64) as u32),
            Family::PolyQuotient => self.lift(self.field.from_int(k)),
        }
    }

    /// Largest `k` with `a ∈ J(R)^k`; `n` for zero.
    pub fn valuation(&self, a: Elem) -> u32 {
        if a.0 == 0 {
            return self.n;
        }
        let mut x = a.0;
        let mut k = 0;
        while x.is_multiple_of(self.q) {
            x /= self.q;
            k += 1;
        }
        k
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        !a.0.is_multiple_of(self.q)
    }

    /// Membership in `J(R)`, i.e. non-units.
    pub fn in_radical(&self, a: Elem) -> bool {
        !self.is_unit(a)
    }

    /// Newton iteration `x <- x (2 - a x)` from the residue-field inverse.
    pub fn inverse(&self, a: Elem) -> Result<Elem, RingError> {
        let f = self.field.inv(self.residue(a)).ok_or(RingError::NonUnit)?;
        let mut x = self.lift(f);
        // each step squares the defect 1 - a x, which starts in J(R)
        for _ in 0..=self.n {
            let defect = self.sub(Elem::ONE, self.mul(a, x));
            if defect.is_zero() {
                return Ok(x);
            }
            x = self.mul(x, self.add(Elem::ONE, defect));
        }
        unreachable!("Newton inverse did not converge")
    }

    pub fn residue(&self, a: Elem) -> FieldElem {
        FieldElem(a.0 % self.q)
    }

    pub fn lift(&self, f: FieldElem) -> Elem {
        debug_assert!(f.0 < self.q);
        Elem(f.0)
    }

    /// `π^k`, zero for `k >= n`.
    pub fn pi_pow(&self, k: u32) -> Elem {
        if k >= self.n {
            Elem::ZERO
        } else {
            Elem(self.q_pows[k as usize] as u32)
        }
    }

    /// The canonical `w` with `π^k · w = a`, obtained by shifting digits down. Requires
    /// `valuation(a) >= k`.
    pub fn div_pi_pow(&self, a: Elem, k: u32) -> Elem {
        debug_assert!(self.valuation(a) >= k);
        Elem((a.0 as u64 / self.q_pows[k.min(self.n) as usize]) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size).map(Elem)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&a| self.is_unit(a))
    }

    /// All of `J(R)^k` in canonical order: exactly the indices divisible by `q^k`.
    pub fn ideal(&self, k: u32) -> Result<Vec<Elem>, RingError> {
        if k > self.n {
            return Err(RingError::IdealOutOfRange { k, n: self.n });
        }
        let step = self.q_pows[k as usize];
        let count = self.q_pows[(self.n - k) as usize];
        Ok((0..count).map(|i| Elem((i * step) as u32)).collect())
    }

    /// A pair `(a, b)` with `a² + b² + 1 = 0` and `a` a unit.
    ///
    /// Searches GF(q)² for a residue solution with nonzero first coordinate, then runs
    /// Newton-Hensel on `a` with `b` fixed; the derivative `2a` is a unit since `p` is odd.
    pub fn solve_sum_of_squares(&self) -> (Elem, Elem) {
        let f = &self.field;
        let minus_one = f.neg(FieldElem::ONE);
        let (a0, b0) = f
            .elements()
            .filter(|a| !a.is_zero())
            .flat_map(|a| f.elements().map(move |b| (a, b)))
            .find(|&(a, b)| f.add(f.mul(a, a), f.mul(b, b)) == minus_one)
            .expect("-1 is a sum of two squares in every finite field");
        let (mut a, b) = (self.lift(a0), self.lift(b0));
        let b_sq_plus_one = self.add(self.mul(b, b), Elem::ONE);
        for _ in 0..=self.n {
            let defect = self.add(self.mul(a, a), b_sq_plus_one);
            if defect.is_zero() {
                return (a, b);
            }
            let deriv = self.add(a, a);
            let step = self.mul(defect, self.inverse(deriv).expect("2a is a unit"));
            a = self.sub(a, step);
        }
        unreachable!("Hensel iteration did not converge")
    }

    /// Renders an element as its digit tuple, e.g. `(2,1)` for `2 + π`.
    pub fn render(&self, a: Elem) -> String {
        let parts: Vec<String> = self.digits(a).iter().map(|d| format!("{}", d.0)).collect();
        format!("({})", parts.join(","))
    }
}
