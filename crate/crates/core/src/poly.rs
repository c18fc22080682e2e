//! Dense univariate polynomials over a finite field, with factorization.
//!
//! Factorization is squarefree split + distinct-degree + equal-degree
//! splitting. Equal-degree splitting draws candidates from a generator with
//! a fixed seed, so the factor list (and everything downstream that picks
//! canonical representatives) is identical from run to run.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Embedding, FieldElem, FieldSpec};

/// Coefficients lowest degree first; no trailing zeros; zero = empty list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: Arc<FieldSpec>,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_string_with_var("x"))
    }
}

impl Poly {
    pub fn new(spec: &Arc<FieldSpec>, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Poly {
        Poly {
            spec: spec.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Poly {
        Poly::constant(FieldElem::one(spec))
    }

    pub fn constant(c: FieldElem) -> Poly {
        let spec = c.spec().clone();
        if c.is_zero() {
            Poly::zero(&spec)
        } else {
            Poly {
                spec,
                coeffs: vec![c],
            }
        }
    }

    /// The monomial x.
    pub fn x(spec: &Arc<FieldSpec>) -> Poly {
        Poly::new(
            spec,
            vec![FieldElem::zero(spec), FieldElem::one(spec)],
        )
    }

    /// c * x^k.
    pub fn monomial(c: FieldElem, k: usize) -> Poly {
        let spec = c.spec().clone();
        if c.is_zero() {
            return Poly::zero(&spec);
        }
        let mut coeffs = vec![FieldElem::zero(&spec); k + 1];
        coeffs[k] = c;
        Poly { spec, coeffs }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(&self.spec))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(&self.spec))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::new(&self.spec, out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.spec, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.spec);
        }
        let mut out =
            vec![FieldElem::zero(&self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.spec, out)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(&self.spec, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (Poly::zero(&self.spec), self.clone());
        }
        let lead_inv = divisor.leading().inv();
        let mut rem = self.coeffs.clone();
        let dq = rem.len() - 1 - dd;
        let mut quot = vec![FieldElem::zero(&self.spec); dq + 1];
        for i in (0..=dq).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
        }
        (Poly::new(&self.spec, quot), Poly::new(&self.spec, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Exact division; panics if not divisible.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.spec);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&FieldElem::from_prime(&self.spec, i as u64)))
            .collect();
        Poly::new(&self.spec, out)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero(x.spec());
        debug_assert!(x.spec() == &self.spec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Evaluation at a point of an extension field, coefficients embedded.
    pub fn eval_embedded(&self, emb: &Embedding, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero(x.spec());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&emb.apply(c));
        }
        acc
    }

    /// Coefficients of f(x0 + X) over the extension field of x0.
    pub fn taylor_shift(&self, emb: &Embedding, x0: &FieldElem) -> Vec<FieldElem> {
        let ext = x0.spec().clone();
        if self.is_zero() {
            return vec![FieldElem::zero(&ext)];
        }
        // repeated synthetic division by (X - x0) collects the coefficients
        let mut work: Vec<FieldElem> = self.coeffs.iter().map(|c| emb.apply(c)).collect();
        let n = work.len();
        let mut shifted = Vec::with_capacity(n);
        for k in 0..n {
            // divide work by (X - x0): remainder is the next coefficient
            let mut rem = FieldElem::zero(&ext);
            for i in (k..n).rev() {
                let cur = work[i].add(&rem.mul(x0));
                rem = cur.clone();
                work[i] = cur;
            }
            // after the pass, work[k] holds the remainder; entries above are the quotient
            shifted.push(work[k].clone());
        }
        shifted
    }

    /// Exact square root in characteristic two (all exponents even).
    pub fn sqrt(&self) -> Option<Poly> {
        assert_eq!(self.spec.characteristic(), 2);
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut out = Vec::with_capacity(self.coeffs.len() / 2 + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 1 {
                if !c.is_zero() {
                    return None;
                }
            } else {
                out.push(c.inv_frobenius());
            }
        }
        Some(Poly::new(&self.spec, out))
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Poly {
        let p = self.spec.characteristic() as usize;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(c.inv_frobenius());
            } else {
                debug_assert!(c.is_zero());
            }
        }
        Poly::new(&self.spec, out)
    }

    /// x^(q^j) mod self, computed by iterating the q-power map.
    fn frobenius_power_mod(&self, j: usize) -> Poly {
        let q = self.spec.cardinality();
        let mut acc = Poly::x(&self.spec).rem(self);
        for _ in 0..j {
            acc = acc.pow_mod(q, self);
        }
        acc
    }

    /// Irreducibility over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(m) = self.degree() else {
            return false;
        };
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        let x = Poly::x(&self.spec);
        let xqm = self.frobenius_power_mod(m);
        if !xqm.sub(&x).rem(self).is_zero() {
            return false;
        }
        for l in prime_divisors(m) {
            let e = self.frobenius_power_mod(m / l);
            if !self.gcd(&e.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }

    /// Full factorization into monic irreducibles with multiplicities,
    /// sorted canonically. The leading unit multiplies back to the input.
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut primes = Vec::new();
        distinct_prime_factors(&self.monic(), &mut primes);
        primes.sort_by(cmp_poly);
        primes.dedup();
        let mut out = Vec::new();
        for prime in primes {
            let mut mult = 0;
            let mut rest = self.monic();
            while prime.divides(&rest) {
                rest = rest.div_exact(&prime);
                mult += 1;
            }
            debug_assert!(mult > 0);
            out.push((prime, mult));
        }
        Ok(out)
    }

    /// Distinct roots in the coefficient field.
    pub fn roots(&self) -> Vec<FieldElem> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots: Vec<FieldElem> = self
            .factor()
            .expect("nonzero")
            .into_iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, _)| f.coeff(0).neg())
            .collect();
        roots.sort_by(|a, b| a.cmp_lex(b));
        roots
    }

    pub fn to_string_with_var(&self, var: &str) -> String {
        crate::text::poly_to_string(self, var)
    }
}

/// Canonical polynomial order: by degree, then coefficient vectors from the
/// constant term up (each coefficient by its index).
pub fn cmp_poly(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| {
            for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                let o = x.cmp_lex(y);
                if o.is_ne() {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn distinct_prime_factors(f: &Poly, out: &mut Vec<Poly>) {
    if f.degree().map_or(true, |d| d == 0) {
        return;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        distinct_prime_factors(&f.pth_root(), out);
        return;
    }
    let g = f.gcd(&fp);
    let squarefree = f.div_exact(&g);
    for (d, block) in distinct_degree_split(&squarefree) {
        equal_degree_split(&block, d, out);
    }
    distinct_prime_factors(&g, out);
}

/// Distinct-degree factorization of a squarefree monic polynomial.
fn distinct_degree_split(f: &Poly) -> Vec<(usize, Poly)> {
    let q = f.spec().cardinality();
    let x = Poly::x(f.spec());
    let mut h = f.monic();
    let mut out = Vec::new();
    let mut xq = x.rem(&h);
    let mut d = 0;
    while h.degree().map_or(false, |deg| deg > 0) {
        d += 1;
        if h.degree().unwrap() < 2 * d {
            out.push((h.degree().unwrap(), h.clone()));
            break;
        }
        xq = xq.pow_mod(q, &h);
        let g = h.gcd(&xq.sub(&x));
        if g.degree().map_or(false, |deg| deg > 0) {
            out.push((d, g.clone()));
            h = h.div_exact(&g);
            xq = xq.rem(&h);
        }
    }
    out
}

/// Equal-degree splitting with a fixed-seed generator, so results are
/// deterministic across runs.
fn equal_degree_split(f: &Poly, d: usize, out: &mut Vec<Poly>) {
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.monic());
        return;
    }
    let spec = f.spec().clone();
    let q = spec.cardinality();
    let p = spec.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe ^ (deg as u64) << 8 ^ d as u64);
    loop {
        let mut coeffs = Vec::with_capacity(deg);
        for _ in 0..deg {
            coeffs.push(FieldElem::from_index(&spec, rng.gen_range(0..q)));
        }
        let r = Poly::new(&spec, coeffs);
        if r.degree().map_or(true, |dr| dr == 0) {
            continue;
        }
        let g1 = f.gcd(&r);
        if g1.degree().map_or(false, |dg| dg > 0 && dg < deg) {
            equal_degree_split(&g1, d, out);
            equal_degree_split(&f.div_exact(&g1), d, out);
            return;
        }
        let split_candidate = if p == 2 {
            // trace map over F_2 of the random element mod f
            let e = spec.extension_degree() * d;
            let mut term = r.rem(f);
            let mut tr = term.clone();
            for _ in 1..e {
                term = term.mul(&term).rem(f);
                tr = tr.add(&term);
            }
            tr
        } else {
            // r^((q^d - 1)/2) - 1 = prod_j (r^(q^j))^((q-1)/2) - 1
            let mut acc = Poly::one(&spec);
            let mut rq = r.rem(f);
            for _ in 0..d {
                acc = acc.mul(&rq.pow_mod((q - 1) / 2, f)).rem(f);
                rq = rq.pow_mod(q, f);
            }
            acc.sub(&Poly::one(&spec))
        };
        let g = f.gcd(&split_candidate);
        if g.degree().map_or(false, |dg| dg > 0 && dg < deg) {
            equal_degree_split(&g, d, out);
            equal_degree_split(&f.div_exact(&g), d, out);
            return;
        }
    }
}

/// All monic irreducible polynomials of exact degree d, sorted canonically.
pub fn monic_irreducibles(spec: &Arc<FieldSpec>, d: usize) -> Vec<Poly> {
    assert!(d >= 1);
    let q = spec.cardinality();
    let total = q
        .checked_pow(d as u32)
        .expect("degree bound keeps enumeration in range");
    let mut out = Vec::new();
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut k = idx;
        for _ in 0..d {
            coeffs.push(FieldElem::from_index(spec, k % q));
            k /= q;
        }
        coeffs.push(FieldElem::one(spec));
        let f = Poly::new(spec, coeffs);
        if f.is_irreducible() {
            out.push(f);
        }
    }
    out.sort_by(cmp_poly);
    out
}

/// Minimal polynomial over the base field of an element of the extension:
/// the product of (T - conjugate) over the distinct Frobenius conjugates,
/// with coefficients pulled back along the embedding.
pub fn minpoly_over_base(emb: &Embedding, mu: &FieldElem) -> Poly {
    let ext = emb.ext().clone();
    let base = emb.base().clone();
    let qb = base.cardinality();
    let mut conjugates = vec![mu.clone()];
    let mut next = mu.pow(qb);
    while next != *mu {
        conjugates.push(next.clone());
        next = next.pow(qb);
    }
    let mut prod = Poly::one(&ext);
    for c in &conjugates {
        let lin = Poly::new(&ext, vec![c.neg(), FieldElem::one(&ext)]);
        prod = prod.mul(&lin);
    }
    let coeffs = prod
        .coeffs()
        .iter()
        .map(|c| {
            emb.invert(c)
                .expect("symmetric functions of conjugates lie in the base field")
        })
        .collect();
    Poly::new(&base, coeffs)
}

/// Canonical embedding GF(p^a) -> GF(p^b) for a | b: the generator maps to
/// the smallest root (in enumeration order) of the base modulus.
pub fn make_embedding(base: &Arc<FieldSpec>, ext: &Arc<FieldSpec>) -> Embedding {
    assert_eq!(base.characteristic(), ext.characteristic());
    assert_eq!(ext.extension_degree() % base.extension_degree(), 0);
    if base == ext {
        return Embedding::identity(base);
    }
    let modulus = Poly::new(
        ext,
        base.modulus_coeffs()
            .iter()
            .map(|&c| FieldElem::from_prime(ext, c))
            .collect(),
    );
    let roots = modulus.roots();
    let root = roots
        .into_iter()
        .next()
        .expect("base modulus splits in the extension");
    Embedding::from_gen_image(base.clone(), ext.clone(), root)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: usize) -> Arc<FieldSpec> {
        FieldSpec::with_default_modulus(p, m, "w").unwrap()
    }

    fn poly_from_ints(spec: &Arc<FieldSpec>, cs: &[u64]) -> Poly {
        Poly::new(
            spec,
            cs.iter().map(|&c| FieldElem::from_prime(spec, c)).collect(),
        )
    }

    #[test]
    fn factor_spec_examples() {
        let f2 = gf(2, 1);
        // x^2 + 1 = (x+1)^2
        let f = poly_from_ints(&f2, &[1, 0, 1]);
        let factors = f.factor().unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0, poly_from_ints(&f2, &[1, 1]));
        assert_eq!(factors[0].1, 2);
        // x^2 + x + 1 irreducible
        let f = poly_from_ints(&f2, &[1, 1, 1]);
        let factors = f.factor().unwrap();
        assert_eq!(factors, vec![(poly_from_ints(&f2, &[1, 1, 1]), 1)]);
        // GF(3): x^3 - x = x(x+1)(x+2)
        let f3 = gf(3, 1);
        let f = poly_from_ints(&f3, &[0, 2, 0, 1]); // x^3 + 2x = x^3 - x
        let factors = f.factor().unwrap();
        assert_eq!(factors.len(), 3);
        for (fac, mult) in &factors {
            assert_eq!(fac.degree(), Some(1));
            assert_eq!(*mult, 1);
        }
        assert!(poly_from_ints(&f3, &[]).factor().is_err());
    }

    #[test]
    fn factor_reconstructs_seeded_inputs() {
        let f8 = gf(2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let deg = rng.gen_range(1..9usize);
            let mut coeffs: Vec<FieldElem> = (0..=deg)
                .map(|_| FieldElem::from_index(&f8, rng.gen_range(0..8)))
                .collect();
            if coeffs[deg].is_zero() {
                coeffs[deg] = FieldElem::one(&f8);
            }
            let f = Poly::new(&f8, coeffs);
            let factors = f.factor().unwrap();
            let mut rebuilt = Poly::constant(f.leading());
            for (fac, mult) in &factors {
                assert!(fac.is_monic());
                assert!(fac.is_irreducible());
                rebuilt = rebuilt.mul(&fac.pow(*mult as u64));
            }
            assert_eq!(rebuilt, f);
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // #monic irreducibles of degree d over GF(q) = (1/d) sum mu(d/e) q^e
        let f2 = gf(2, 1);
        assert_eq!(monic_irreducibles(&f2, 1).len(), 2);
        assert_eq!(monic_irreducibles(&f2, 2).len(), 1);
        assert_eq!(monic_irreducibles(&f2, 3).len(), 2);
        assert_eq!(monic_irreducibles(&f2, 4).len(), 3);
        let f3 = gf(3, 1);
        assert_eq!(monic_irreducibles(&f3, 2).len(), 3);
        let f4 = gf(2, 2);
        assert_eq!(monic_irreducibles(&f4, 2).len(), 6);
    }

    #[test]
    fn sqrt_char2() {
        let f2 = gf(2, 1);
        // x^4 + x^2 = (x^2+x)^2
        let f = poly_from_ints(&f2, &[0, 0, 1, 0, 1]);
        let r = f.sqrt().unwrap();
        assert_eq!(r, poly_from_ints(&f2, &[0, 1, 1]));
        assert!(poly_from_ints(&f2, &[0, 1]).sqrt().is_none());
    }

    #[test]
    fn embedding_roundtrip() {
        let f2 = gf(2, 1);
        let f4 = gf(2, 2);
        let f16 = gf(2, 4);
        let e24 = make_embedding(&f2, &f4);
        let e416 = make_embedding(&f4, &f16);
        for c in crate::field::all_elements(&f4) {
            let up = e416.apply(&c);
            assert_eq!(e416.invert(&up), Some(c.clone()));
            // embeddings are ring maps
            for d in crate::field::all_elements(&f4) {
                assert_eq!(
                    e416.apply(&c.mul(&d)),
                    e416.apply(&c).mul(&e416.apply(&d))
                );
            }
        }
        let comp = Embedding::compose(&e24, &e416);
        assert_eq!(comp.apply(&FieldElem::one(&f2)), FieldElem::one(&f16));
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let f4 = gf(2, 2);
        let f = poly_from_ints(&f4, &[1, 0, 1, 1]);
        let emb = Embedding::identity(&f4);
        let x0 = FieldElem::generator(&f4);
        let shifted = f.taylor_shift(&emb, &x0);
        // f(x0 + t) as polynomial in t must agree with direct evaluation
        for t in crate::field::all_elements(&f4) {
            let direct = f.eval(&x0.add(&t));
            let mut acc = FieldElem::zero(&f4);
            for c in shifted.iter().rev() {
                acc = acc.mul(&t).add(c);
            }
            assert_eq!(acc, direct);
        }
    }
}
