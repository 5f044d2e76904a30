//! Exact arithmetic in Z[zeta_p] for prime p.
//!
//! An element is stored as p integer coefficients c_0..c_{p-1} of
//! sum c_j zeta^j, kept in the canonical form c_{p-1} = 0 via the relation
//! 1 + zeta + ... + zeta^{p-1} = 0. For prime p this relation generates
//! all relations among the p-th roots of unity, so canonical forms are
//! unique and equality is coefficient-wise.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> CyclotomicInt {
        CyclotomicInt { p, coeffs: vec![BigInt::zero(); p as usize] }
    }

    pub fn from_int(p: u32, v: impl Into<BigInt>) -> CyclotomicInt {
        let mut z = Self::zero(p);
        z.coeffs[0] = v.into();
        z
    }

    /// zeta_p^exp.
    pub fn root(p: u32, exp: u32) -> CyclotomicInt {
        let mut z = Self::zero(p);
        z.coeffs[(exp % p) as usize] = BigInt::from(1);
        z.canonicalize();
        z
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn canonicalize(&mut self) {
        let last = self.coeffs[self.p as usize - 1].clone();
        if !last.is_zero() {
            for c in self.coeffs.iter_mut() {
                *c -= &last;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True iff the value lies in Z, i.e. all non-constant canonical
    /// coefficients vanish.
    pub fn is_rational_integer(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_rational_integer() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add_assign(&mut self, other: &CyclotomicInt) {
        assert_eq!(self.p, other.p);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.canonicalize();
    }

    pub fn add(&self, other: &CyclotomicInt) -> CyclotomicInt {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &CyclotomicInt) -> CyclotomicInt {
        let mut out = self.clone();
        assert_eq!(out.p, other.p);
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        out.canonicalize();
        out
    }

    pub fn neg(&self) -> CyclotomicInt {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, s: impl Into<BigInt>) -> CyclotomicInt {
        let s = s.into();
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= &s;
        }
        out
    }

    pub fn mul(&self, other: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        let mut out = CyclotomicInt::zero(self.p);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = (i + j) % p;
                out.coeffs[idx] += a * b;
            }
        }
        out.canonicalize();
        out
    }

    /// Complex conjugate: zeta^j -> zeta^{-j}.
    pub fn conj(&self) -> CyclotomicInt {
        let p = self.p as usize;
        let mut out = CyclotomicInt::zero(self.p);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(p - j) % p] += c;
        }
        out.canonicalize();
        out
    }

    /// |z|^2 = z * conj(z); always a non-negative algebraic integer, and a
    /// rational integer whenever z arises as a full character sum.
    pub fn norm_sq(&self) -> CyclotomicInt {
        self.mul(&self.conj())
    }

    /// Evaluate at zeta_p = e^{2 pi i / p}.
    pub fn eval_complex(&self) -> Complex64 {
        let p = self.p as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / p;
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::new(theta.cos(), theta.sin()) * cf;
        }
        acc
    }
}
