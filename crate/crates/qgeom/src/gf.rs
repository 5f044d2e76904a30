//! Exact arithmetic in GF(p^e), the absolute trace, and the canonical
//! additive character used by every transform in this crate.
//!
//! Elements are stored as integers in `[0, q)` via the positional base-p
//! encoding of the residue polynomial: `rep = sum c_i p^i` represents
//! `sum c_i t^i` modulo the field's irreducible polynomial.

use thiserror::Error;

/// Largest supported field order.
pub const MAX_Q: u64 = 1 << 20;

/// Full multiplication/inverse tables are precomputed up to this order.
const TABLE_Q: u64 = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field order {0}^{1} exceeds 2^20")]
    TooLarge(u64, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} does not belong to a field of order {1}")]
    FieldMismatch(u64, u64),
}

/// An element of GF(p^e), identified by its base-p integer encoding.
///
/// The owning [`FieldSpec`] is carried by context: all arithmetic goes
/// through the field, which validates that `rep < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn rep(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Description of GF(p^e): prime, degree, canonical irreducible modulus,
/// and (for small q) dense arithmetic tables.
///
/// The modulus is the lexicographically smallest monic irreducible of
/// degree e over F_p, coefficients compared low-degree-first, so two
/// `FieldSpec`s with equal `(p, e)` are identical. Immutable after
/// construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible of degree e, coefficients low-degree-first (length e+1).
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
    /// Absolute trace of every element, values in [0, p).
    trace_table: Vec<u32>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial remainder of `a` by monic `m`, coefficients in F_p, low-degree-first.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let da = a.len() - 1;
        if lead != 0 {
            for i in 0..=dm {
                let idx = da - dm + i;
                a[idx] = (a[idx] + (p - lead % p) * m[i] % p) % p;
            }
        }
        a.pop();
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }
    a
}

fn poly_is_zero(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Trial division against every monic polynomial of degree 1..=e/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    if e == 1 {
        return true;
    }
    for d in 1..=(e / 2) {
        // all monic divisor candidates of degree d
        let mut count = (p as u64).pow(d as u32);
        let mut c = vec![0u32; d];
        loop {
            let mut div: Vec<u32> = c.clone();
            div.push(1);
            let r = poly_rem(m.to_vec(), &div, p);
            if poly_is_zero(&r) {
                return false;
            }
            count -= 1;
            if count == 0 {
                break;
            }
            // odometer, low coefficient fastest
            for ci in c.iter_mut() {
                *ci += 1;
                if *ci < p {
                    break;
                }
                *ci = 0;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Construct the canonical GF(p^e). Deterministic across runs.
    pub fn new(p: u64, e: u32) -> Result<FieldSpec, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if e < 1 {
            return Err(GfError::TooLarge(p, e));
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.saturating_mul(p);
            if q > MAX_Q {
                return Err(GfError::TooLarge(p, e));
            }
        }
        let p = p as u32;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            Self::smallest_irreducible(p, e)
        };
        let mut spec = FieldSpec {
            p,
            e,
            q: q as u32,
            modulus,
            mul_table: None,
            inv_table: None,
            trace_table: Vec::new(),
        };
        if q <= TABLE_Q {
            let mut mul = vec![0u32; (q * q) as usize];
            for a in 0..q as u32 {
                for b in a..q as u32 {
                    let v = spec.mul_raw(a, b);
                    mul[(a as u64 * q + b as u64) as usize] = v;
                    mul[(b as u64 * q + a as u64) as usize] = v;
                }
            }
            spec.mul_table = Some(mul);
            let mut inv = vec![0u32; q as usize];
            for a in 1..q as u32 {
                inv[a as usize] = spec.pow_raw(a, (q - 2) as u64);
            }
            spec.inv_table = Some(inv);
        }
        let mut tr = vec![0u32; q as usize];
        for a in 0..q as u32 {
            tr[a as usize] = spec.trace_raw(a);
        }
        spec.trace_table = tr;
        Ok(spec)
    }

    /// Lexicographically smallest monic irreducible of degree e over F_p,
    /// coefficients compared low-degree-first.
    fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
        let e = e as usize;
        let mut c = vec![0u32; e];
        loop {
            let mut m = c.clone();
            m.push(1);
            if is_irreducible(&m, p) {
                return m;
            }
            // lex order on (c_0, .., c_{e-1}): highest index changes fastest
            let mut i = e;
            loop {
                debug_assert!(i > 0, "irreducible of every degree exists");
                i -= 1;
                c[i] += 1;
                if c[i] < p {
                    break;
                }
                c[i] = 0;
            }
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients of the irreducible modulus, low-degree-first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, rep: u32) -> Result<FieldElement, GfError> {
        if rep < self.q {
            Ok(FieldElement(rep))
        } else {
            Err(GfError::FieldMismatch(rep as u64, self.q as u64))
        }
    }

    /// Iterator over all field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    fn check(&self, a: FieldElement) -> u32 {
        debug_assert!(a.0 < self.q, "element {} outside field of order {}", a.0, self.q);
        a.0
    }

    fn to_coeffs(&self, rep: u32) -> Vec<u32> {
        let mut c = vec![0u32; self.e as usize];
        let mut r = rep;
        for ci in c.iter_mut() {
            *ci = r % self.p;
            r /= self.p;
        }
        c
    }

    fn from_coeffs(&self, c: &[u32]) -> u32 {
        let mut rep = 0u32;
        for &ci in c.iter().rev() {
            rep = rep * self.p + ci;
        }
        rep
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b) = (self.check(a), self.check(b));
        let (ca, cb) = (self.to_coeffs(a), self.to_coeffs(b));
        let c: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % self.p).collect();
        FieldElement(self.from_coeffs(&c))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let a = self.check(a);
        let c: Vec<u32> = self
            .to_coeffs(a)
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FieldElement(self.from_coeffs(&c))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.to_coeffs(a), self.to_coeffs(b));
        let e = self.e as usize;
        let mut prod = vec![0u32; 2 * e - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(prod, &self.modulus, self.p);
        let mut c = vec![0u32; e];
        c[..r.len()].copy_from_slice(&r);
        self.from_coeffs(&c)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b) = (self.check(a), self.check(b));
        if let Some(t) = &self.mul_table {
            FieldElement(t[(a as u64 * self.q as u64 + b as u64) as usize])
        } else {
            FieldElement(self.mul_raw(a, b))
        }
    }

    fn pow_raw(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        self.check(a);
        let mut acc = FieldElement::ONE;
        let mut b = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        let r = self.check(a);
        if r == 0 {
            return Err(GfError::DivisionByZero);
        }
        if let Some(t) = &self.inv_table {
            Ok(FieldElement(t[r as usize]))
        } else {
            Ok(FieldElement(self.pow_raw(r, (self.q - 2) as u64)))
        }
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.to_coeffs(a), self.to_coeffs(b));
        let c: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % self.p).collect();
        self.from_coeffs(&c)
    }

    fn trace_raw(&self, a: u32) -> u32 {
        // Tr(a) = sum_{i<e} a^{p^i}; the result lies in the prime subfield,
        // whose elements are encoded by their own value.
        let mut term = a;
        let mut sum = 0u32;
        for _ in 0..self.e {
            sum = self.add_raw(sum, term);
            term = self.pow_raw(term, self.p as u64);
        }
        debug_assert!(sum < self.p, "trace must land in the prime subfield");
        sum
    }

    /// Absolute trace Tr(a) = sum_{i<e} a^{p^i}, as an element of F_p.
    pub fn trace(&self, a: FieldElement) -> u32 {
        self.trace_table[self.check(a) as usize]
    }

    /// Exponent of the canonical additive character: chi(a) = zeta_p^{trace(a)}.
    #[inline]
    pub fn char_exponent(&self, a: FieldElement) -> u32 {
        self.trace_table[a.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_t() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn f4_modulus_is_unique_irreducible_quadratic() {
        // exhaust the 4 monic quadratics over F_2: only t^2+t+1 is irreducible
        let mut irreducible = Vec::new();
        for c0 in 0..2 {
            for c1 in 0..2 {
                let m = vec![c0, c1, 1];
                if is_irreducible(&m, 2) {
                    irreducible.push(m);
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn f9_modulus_is_lex_smallest() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]); // t^2 + 1
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), GfError::NonPrime(4));
        assert_eq!(FieldSpec::new(2, 21).unwrap_err(), GfError::TooLarge(2, 21));
    }

    #[test]
    fn f4_t_times_t() {
        let f = FieldSpec::new(2, 2).unwrap();
        // t * t = t + 1 (rep 2 * 2 -> 3)
        assert_eq!(f.mul(FieldElement(2), FieldElement(2)), FieldElement(3));
    }

    #[test]
    fn f3_add() {
        let f = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f.add(FieldElement(2), FieldElement(2)), FieldElement(1));
    }

    #[test]
    fn inverse_axiom() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1)] {
            let f = FieldSpec::new(p, e).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn division_by_zero() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO).unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    fn field_axioms_exhaustive() {
        // pairs for every q <= 64, triples for q <= 16
        for (p, e) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (2, 4), (3, 2),
                       (2, 5), (2, 6), (3, 3), (7, 2), (61, 1)] {
            let f = FieldSpec::new(p, e).unwrap();
            if f.q() > 64 {
                continue;
            }
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            if f.q() <= 16 {
                for a in f.elements() {
                    for b in f.elements() {
                        for c in f.elements() {
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(
                                f.mul(a, f.add(b, c)),
                                f.add(f.mul(a, b), f.mul(a, c))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.trace(FieldElement(2)), 1); // t + t^2 = 1
        let f5 = FieldSpec::new(5, 1).unwrap();
        for a in f5.elements() {
            assert_eq!(f5.trace(a), a.rep());
        }
    }

    #[test]
    fn trace_is_additive_and_balanced() {
        for (p, e) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (5, 2)] {
            let f = FieldSpec::new(p, e).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.trace(f.add(a, b)),
                        (f.trace(a) + f.trace(b)) % f.p()
                    );
                }
            }
            // each trace class has q/p members
            let mut counts = vec![0u32; f.p() as usize];
            for a in f.elements() {
                counts[f.trace(a) as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == f.q() / f.p()));
        }
    }

    #[test]
    fn character_is_nontrivial_and_frobenius_fixed() {
        for (p, e) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
            let f = FieldSpec::new(p, e).unwrap();
            assert_eq!(f.char_exponent(FieldElement::ZERO), 0);
            assert!(f.elements().any(|a| f.char_exponent(a) != 0));
            for a in f.elements() {
                assert_eq!(f.char_exponent(f.pow(a, p)), f.char_exponent(a));
            }
        }
    }

    #[test]
    fn character_orthogonality() {
        // for a != 0, {char_exponent(a*x) : x} hits each residue q/p times
        for (p, e) in [(2, 2), (3, 2), (2, 3), (2, 4)] {
            let f = FieldSpec::new(p, e).unwrap();
            for a in f.elements().skip(1) {
                let mut counts = vec![0u32; f.p() as usize];
                for x in f.elements() {
                    counts[f.char_exponent(f.mul(a, x)) as usize] += 1;
                }
                assert!(counts.iter().all(|&c| c == f.q() / f.p()));
            }
        }
    }

    #[test]
    fn f4_char_exponent_of_t() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.char_exponent(FieldElement(2)), 1);
    }
}
