#![allow(dead_code)]

use nilprod_core::{Ring, RingSpec};

pub fn ring(spec: &str) -> Ring {
    Ring::new(spec.parse::<RingSpec>().unwrap()).unwrap()
}

/// Plain integer arithmetic mod `m` on row-major 2×2 matrices, sharing nothing with the
/// library beyond the packed-index convention.
#[derive(Clone, Copy)]
pub struct Zn {
    pub m: u64,
}

pub type M = [u64; 4];

impl Zn {
    pub fn mul(&self, x: &M, y: &M) -> M {
        let m = self.m;
        [
            (x[0] * y[0] + x[1] * y[2]) % m,
            (x[0] * y[1] + x[1] * y[3]) % m,
            (x[2] * y[0] + x[3] * y[2]) % m,
            (x[2] * y[1] + x[3] * y[3]) % m,
        ]
    }

    pub fn pow(&self, x: &M, e: u32) -> M {
        (0..e).fold([1, 0, 0, 1], |acc, _| self.mul(&acc, x))
    }

    pub fn det(&self, x: &M) -> u64 {
        (x[0] * x[3] % self.m + self.m - x[1] * x[2] % self.m) % self.m
    }

    pub fn inv_scalar(&self, a: u64) -> Option<u64> {
        (1..self.m).find(|&b| a * b % self.m == 1)
    }

    pub fn inverse(&self, x: &M) -> Option<M> {
        let d = self.inv_scalar(self.det(x))?;
        let m = self.m;
        Some([
            x[3] * d % m,
            (m - x[1]) % m * d % m,
            (m - x[2]) % m * d % m,
            x[0] * d % m,
        ])
    }

    pub fn all(&self) -> impl Iterator<Item = M> + '_ {
        let m = self.m;
        (0..m.pow(4)).map(move |i| [i % m, i / m % m, i / (m * m) % m, i / (m * m * m)])
    }

    pub fn pack(&self, x: &M) -> u64 {
        let m = self.m;
        x[0] + x[1] * m + x[2] * m * m + x[3] * m * m * m
    }
}
