//! The residue field GF(q), q = p^r.
//!
//! Elements are indices in `[0, q)`: the polynomial `c_0 + c_1 t + ... + c_{r-1} t^{r-1}`
//! over GF(p) is stored as `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`. For `r > 1` the field is
//! GF(p)[t] modulo a fixed monic irreducible polynomial and multiplication goes through
//! discrete log tables.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::RingError;

/// Largest residue field for which log tables are built.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// A residue-field element, as an index in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
pub struct ResidueField {
    p: u32,
    r: u32,
    q: u32,
    /// Monic modulus, little-endian, `r + 1` coefficients. `[0, 1]` when `r = 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive element `g`; empty when `r = 1`.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`; empty when `r = 1`.
    log: Vec<u32>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Remainder of `f` modulo `g` over GF(p); `g` must be nonzero.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut rem = f.to_vec();
    let dg = poly_degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod_p(g[dg], p) as u64;
    while let Some(dr) = poly_degree(&rem) {
        if dr < dg {
            break;
        }
        let factor = rem[dr] as u64 * lead_inv % p as u64;
        let shift = dr - dg;
        for (i, &gc) in g.iter().enumerate().take(dg + 1) {
            let sub = factor * gc as u64 % p as u64;
            let cur = rem[i + shift] as u64;
            rem[i + shift] = ((cur + p as u64 - sub) % p as u64) as u32;
        }
    }
    rem
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(deg) = poly_degree(f) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut x = low;
            for c in g.iter_mut().take(d) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            g[d] = 1;
            if poly_degree(&poly_rem(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of degree `r` over GF(p) whose coefficient vector,
/// read from `t^{r-1}` down to `t^0`, is lexicographically smallest.
pub fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let count = (p as u64).pow(r);
    for low in 0..count {
        let mut f = vec![0u32; r as usize + 1];
        let mut x = low;
        for c in f.iter_mut().take(r as usize) {
            *c = (x % p as u64) as u32;
            x /= p as u64;
        }
        f[r as usize] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl ResidueField {
    /// Builds GF(p^r). `modulus` defaults to [`smallest_irreducible`].
    pub fn new(p: u32, r: u32, modulus: Option<&[u32]>) -> Result<Self, RingError> {
        if !is_prime(p as u64) {
            return Err(RingError::NotPrime(p));
        }
        if r == 0 {
            return Err(RingError::BadParameter("extension degree r must be >= 1"));
        }
        let q = (p as u64)
            .checked_pow(r)
            .filter(|&q| q <= MAX_FIELD_ORDER as u64)
            .ok_or(RingError::TooLarge)? as u32;
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u32> = m.iter().map(|&c| c % p).collect();
                if poly_degree(&m) != Some(r as usize) || m[r as usize] != 1 {
                    return Err(RingError::BadModulus("modulus must be monic of degree r"));
                }
                if !is_irreducible(&m, p) {
                    return Err(RingError::BadModulus("modulus polynomial is reducible"));
                }
                m
            }
            None if r == 1 => vec![0, 1],
            None => smallest_irreducible(p, r),
        };
        let mut field = ResidueField {
            p,
            r,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if r > 1 {
            field.build_log_tables();
        }
        Ok(field)
    }

    fn decode(&self, x: u32) -> [u32; 32] {
        let mut c = [0u32; 32];
        let mut x = x;
        for slot in c.iter_mut().take(self.r as usize) {
            *slot = x % self.p;
            x /= self.p;
        }
        c
    }

    fn encode(&self, c: &[u32]) -> u32 {
        c.iter()
            .take(self.r as usize)
            .rev()
            .fold(0u32, |acc, &d| acc * self.p + d)
    }

    /// Schoolbook product reduced modulo the defining polynomial.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let r = self.r as usize;
        let p = self.p as u64;
        let (ca, cb) = (self.decode(a), self.decode(b));
        let mut prod = [0u64; 64];
        for i in 0..r {
            for j in 0..r {
                prod[i + j] = (prod[i + j] + ca[i] as u64 * cb[j] as u64) % p;
            }
        }
        for d in (r..2 * r - 1).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mc) in self.modulus.iter().enumerate().take(r) {
                let pos = d - r + i;
                prod[pos] = (prod[pos] + p - lead * mc as u64 % p) % p;
            }
        }
        let reduced: Vec<u32> = prod[..r].iter().map(|&c| c as u32).collect();
        self.encode(&reduced)
    }

    fn build_log_tables(&mut self) {
        let order = self.q - 1;
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = self.poly_mul(x, g);
            }
            if primitive && x == 1 {
                let mut log = vec![0u32; self.q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.r == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (ca, cb) = (self.decode(a.0), self.decode(b.0));
        let mut out = [0u32; 32];
        for i in 0..self.r as usize {
            out[i] = (ca[i] + cb[i]) % self.p;
        }
        FieldElem(self.encode(&out))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.r == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let ca = self.decode(a.0);
        let mut out = [0u32; 32];
        for i in 0..self.r as usize {
            out[i] = (self.p - ca[i]) % self.p;
        }
        FieldElem(self.encode(&out))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        if self.r == 1 {
            return FieldElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let order = self.q - 1;
        let l = (self.log[a.0 as usize] + self.log[b.0 as usize]) % order;
        FieldElem(self.exp[l as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        if self.r == 1 {
            return Some(FieldElem(inv_mod_p(a.0, self.p)));
        }
        let order = self.q - 1;
        let l = (order - self.log[a.0 as usize]) % order;
        Some(FieldElem(self.exp[l as usize]))
    }

    /// Image of the integer `k` under the prime-field embedding.
    pub fn from_int(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }
}
