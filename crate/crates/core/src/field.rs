//! Exact arithmetic in finite fields GF(p^m).
//!
//! Elements are coefficient vectors over the prime field with respect to a
//! monic irreducible modulus in the generator symbol. The modulus is either
//! supplied explicitly or drawn deterministically from a canonical rule (the
//! lexicographically first monic irreducible *primitive* polynomial of the
//! requested degree), so printing and cross-run behaviour never depend on a
//! random choice.
//!
//! Everything here is total and exact: Frobenius is bijective, so inverse
//! Frobenius, square roots in characteristic two and fourth roots all exist
//! unconditionally.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest cardinality we accept for a field; keeps every index in `u64`
/// and makes exhaustive scans over small fields viable.
pub const MAX_CARDINALITY: u64 = 1 << 32;

/// A finite field GF(p^m), pinned to a concrete modulus and generator symbol.
#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Monic irreducible modulus over GF(p), lowest degree first, length m+1.
    modulus: Vec<u64>,
    gen_symbol: String,
}

impl FieldSpec {
    /// Field with an explicit modulus. The modulus must be monic of degree
    /// `m` and irreducible over GF(p); both are verified here.
    pub fn new(p: u64, m: usize, modulus: Vec<u64>, gen_symbol: &str) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if p >= (1 << 16) {
            return Err(Error::Invalid(format!("characteristic {p} exceeds the machine bound")));
        }
        if m == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let q = checked_pow(p, m as u32)
            .filter(|&q| q <= MAX_CARDINALITY)
            .ok_or_else(|| Error::Invalid(format!("{p}^{m} exceeds the machine bound")))?;
        let _ = q;
        if modulus.len() != m + 1 || modulus[m] != 1 {
            return Err(Error::Invalid("modulus must be monic of degree m".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid("modulus coefficients must be reduced mod p".into()));
        }
        if !pp_is_irreducible(&modulus, p) {
            return Err(Error::Invalid("modulus is not irreducible over GF(p)".into()));
        }
        Ok(Arc::new(FieldSpec {
            p,
            m,
            modulus,
            gen_symbol: gen_symbol.to_string(),
        }))
    }

    /// Field with the canonical default modulus for GF(p^m).
    pub fn with_default_modulus(p: u64, m: usize, gen_symbol: &str) -> Result<Arc<FieldSpec>> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        checked_pow(p, m as u32)
            .filter(|&q| q <= MAX_CARDINALITY)
            .ok_or_else(|| Error::Invalid(format!("{p}^{m} exceeds the machine bound")))?;
        let modulus = default_modulus(p, m);
        FieldSpec::new(p, m, modulus, gen_symbol)
    }

    /// The prime field GF(p) with its canonical representation.
    pub fn prime_field(p: u64) -> Result<Arc<FieldSpec>> {
        FieldSpec::with_default_modulus(p, 1, "w")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> usize {
        self.m
    }

    /// Cardinality q = p^m.
    pub fn cardinality(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    pub fn gen_symbol(&self) -> &str {
        &self.gen_symbol
    }
}

/// An element of a finite field: a reduced coefficient vector tied to its spec.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    spec: Arc<FieldSpec>,
    /// Length m, entries reduced mod p, lowest degree first.
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({})", self)
    }
}

impl fmt::Display for FieldElem {
    /// Prints as a polynomial in the generator symbol, highest degree first,
    /// zero coefficients omitted, e.g. `w+1` or `w^2+2*w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sym = self.spec.gen_symbol();
        let mut first = true;
        for i in (0..self.spec.m).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{sym}")?,
                (1, c) => write!(f, "{c}*{sym}")?,
                (i, 1) => write!(f, "{sym}^{i}")?,
                (i, c) => write!(f, "{c}*{sym}^{i}")?,
            }
        }
        Ok(())
    }
}

impl FieldElem {
    pub fn zero(spec: &Arc<FieldSpec>) -> FieldElem {
        FieldElem {
            spec: spec.clone(),
            coeffs: vec![0; spec.m],
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> FieldElem {
        FieldElem::from_prime(spec, 1)
    }

    /// The image of an integer under GF(p) -> GF(p^m).
    pub fn from_prime(spec: &Arc<FieldSpec>, n: u64) -> FieldElem {
        let mut coeffs = vec![0; spec.m];
        coeffs[0] = n % spec.p;
        FieldElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// The generator (class of the generator symbol). For m = 1 this is the
    /// residue of the modulus root, i.e. `-modulus[0]`.
    pub fn generator(spec: &Arc<FieldSpec>) -> FieldElem {
        if spec.m == 1 {
            let r = (spec.p - spec.modulus[0] % spec.p) % spec.p;
            return FieldElem::from_prime(spec, r);
        }
        let mut coeffs = vec![0; spec.m];
        coeffs[1] = 1;
        FieldElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(spec: &Arc<FieldSpec>, mut coeffs: Vec<u64>) -> FieldElem {
        assert!(coeffs.len() <= spec.m, "coefficient vector too long");
        coeffs.resize(spec.m, 0);
        for c in coeffs.iter_mut() {
            *c %= spec.p;
        }
        FieldElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    /// Element with enumeration index `idx` (base-p digits, constant term
    /// least significant). Indexing is the canonical order used for
    /// deterministic tie-breaks.
    pub fn from_index(spec: &Arc<FieldSpec>, mut idx: u64) -> FieldElem {
        let mut coeffs = vec![0; spec.m];
        for c in coeffs.iter_mut() {
            *c = idx % spec.p;
            idx /= spec.p;
        }
        FieldElem {
            spec: spec.clone(),
            coeffs,
        }
    }

    pub fn index(&self) -> u64 {
        let mut idx = 0u64;
        for &c in self.coeffs.iter().rev() {
            idx = idx * self.spec.p + c;
        }
        idx
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_spec(&self, other: &FieldElem) {
        debug_assert!(
            Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec,
            "field elements from different fields"
        );
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.same_spec(other);
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> FieldElem {
        let p = self.spec.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElem {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.same_spec(other);
        let p = self.spec.p;
        let m = self.spec.m;
        if m == 1 {
            return FieldElem {
                spec: self.spec.clone(),
                coeffs: vec![(self.coeffs[0] * other.coeffs[0]) % p],
            };
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        // reduce by the monic modulus
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in self.spec.modulus.iter().enumerate().take(m) {
                let k = i - m + j;
                prod[k] = (prod[k] + c * (p - mj)) % p;
            }
        }
        prod.truncate(m);
        FieldElem {
            spec: self.spec.clone(),
            coeffs: prod,
        }
    }

    pub fn square(&self) -> FieldElem {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = FieldElem::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero");
        let q = self.spec.cardinality();
        self.pow(q - 2)
    }

    pub fn div(&self, other: &FieldElem) -> FieldElem {
        self.mul(&other.inv())
    }

    /// Frobenius c -> c^p.
    pub fn frobenius(&self) -> FieldElem {
        self.pow(self.spec.p)
    }

    /// Inverse Frobenius: the unique d with d^p = c. Applying it twice in
    /// characteristic two extracts the fourth root.
    pub fn inv_frobenius(&self) -> FieldElem {
        // c^(p^(m-1)) works because c^(p^m) = c.
        let mut acc = self.clone();
        for _ in 0..self.spec.m.saturating_sub(1) {
            acc = acc.frobenius();
        }
        acc
    }

    /// Square root. In characteristic two this always exists (inverse
    /// Frobenius); in odd characteristic returns the lexicographically
    /// smaller root of a quadratic residue, `None` otherwise.
    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.spec.p == 2 {
            return Some(self.inv_frobenius());
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let q = self.spec.cardinality();
        if !self.pow((q - 1) / 2).is_one() {
            return None;
        }
        // small fields only: deterministic scan, smallest index wins
        for idx in 0..q {
            let cand = FieldElem::from_index(&self.spec, idx);
            if cand.square() == *self {
                return Some(cand);
            }
        }
        unreachable!("quadratic residue without a root");
    }

    /// Fourth root in characteristic two.
    pub fn fourth_root(&self) -> FieldElem {
        assert_eq!(self.spec.p, 2, "fourth roots are the char-2 shortcut");
        self.inv_frobenius().inv_frobenius()
    }

    /// Absolute trace down to GF(p): c + c^p + ... + c^(p^(m-1)).
    pub fn trace_to_prime(&self) -> FieldElem {
        let mut acc = self.clone();
        let mut term = self.clone();
        for _ in 1..self.spec.m {
            term = term.frobenius();
            acc = acc.add(&term);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        let prime = FieldSpec::prime_field(self.spec.p).expect("prime field");
        FieldElem::from_prime(&prime, acc.coeffs[0])
    }

    /// Absolute trace as a bare residue mod p.
    pub fn trace_residue(&self) -> u64 {
        self.trace_to_prime().coeffs[0]
    }

    /// Canonical total order: lexicographic on the coefficient vector,
    /// constant term first.
    pub fn cmp_lex(&self, other: &FieldElem) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

/// Solves u^2 + u = c in GF(2^m). Returns the solution with the
/// lexicographically smaller coefficient vector among {u, u+1} when the
/// absolute trace of c vanishes, `None` otherwise.
pub fn artin_schreier_solve(c: &FieldElem) -> Result<Option<FieldElem>> {
    let spec = c.spec();
    if spec.characteristic() != 2 {
        return Err(Error::CharacteristicMismatch {
            expected: 2,
            found: spec.characteristic(),
        });
    }
    if c.trace_residue() != 0 {
        return Ok(None);
    }
    // u -> u^2 + u is F_2-linear; solve the m x m bit system directly.
    let m = spec.extension_degree();
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut e = vec![0u64; m];
        e[i] = 1;
        let b = FieldElem::from_coeffs(spec, e);
        cols.push(b.square().add(&b).coeffs().to_vec());
    }
    // Gaussian elimination over F_2 on the augmented system.
    let mut aug: Vec<(Vec<u64>, u64)> = (0..m)
        .map(|row| (cols.iter().map(|c| c[row]).collect(), c.coeffs()[row]))
        .collect();
    let mut pivot_of_col = vec![usize::MAX; m];
    let mut r = 0;
    for col in 0..m {
        if let Some(pr) = (r..m).find(|&i| aug[i].0[col] == 1) {
            aug.swap(r, pr);
            for i in 0..m {
                if i != r && aug[i].0[col] == 1 {
                    let (head, tail) = if i < r {
                        let (a, b) = aug.split_at_mut(r);
                        (&mut a[i], &mut b[0])
                    } else {
                        let (a, b) = aug.split_at_mut(i);
                        (&mut b[0], &mut a[r])
                    };
                    for k in 0..m {
                        head.0[k] ^= tail.0[k];
                    }
                    head.1 ^= tail.1;
                }
            }
            pivot_of_col[col] = r;
            r += 1;
        }
    }
    // rows beyond rank must have zero rhs (guaranteed by the trace test)
    for row in aug.iter().skip(r) {
        if row.1 != 0 {
            return Ok(None);
        }
    }
    let mut sol = vec![0u64; m];
    for col in 0..m {
        if pivot_of_col[col] != usize::MAX {
            sol[col] = aug[pivot_of_col[col]].1;
        }
    }
    let u = FieldElem::from_coeffs(spec, sol);
    debug_assert_eq!(u.square().add(&u), *c);
    let u1 = u.add(&FieldElem::one(spec));
    Ok(Some(if u.cmp_lex(&u1).is_le() { u } else { u1 }))
}

/// Enumerates every element of the field in index order.
pub fn all_elements(spec: &Arc<FieldSpec>) -> impl Iterator<Item = FieldElem> + '_ {
    (0..spec.cardinality()).map(move |i| FieldElem::from_index(spec, i))
}

/// An embedding GF(p^a) -> GF(p^b) (a | b), given by the image of the
/// generator. Built by `poly::make_embedding`, which picks the canonical
/// root of the base modulus in the extension.
#[derive(Debug, Clone)]
pub struct Embedding {
    base: Arc<FieldSpec>,
    ext: Arc<FieldSpec>,
    gen_image: FieldElem,
}

impl Embedding {
    pub fn identity(spec: &Arc<FieldSpec>) -> Embedding {
        Embedding {
            base: spec.clone(),
            ext: spec.clone(),
            gen_image: FieldElem::generator(spec),
        }
    }

    pub(crate) fn from_gen_image(
        base: Arc<FieldSpec>,
        ext: Arc<FieldSpec>,
        gen_image: FieldElem,
    ) -> Embedding {
        Embedding {
            base,
            ext,
            gen_image,
        }
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldSpec> {
        &self.ext
    }

    /// Applies the embedding (Horner evaluation at the generator image).
    pub fn apply(&self, c: &FieldElem) -> FieldElem {
        debug_assert!(c.spec() == &self.base);
        if Arc::ptr_eq(&self.base, &self.ext) {
            return c.clone();
        }
        let mut acc = FieldElem::zero(&self.ext);
        for &digit in c.coeffs().iter().rev() {
            acc = acc.mul(&self.gen_image);
            acc = acc.add(&FieldElem::from_prime(&self.ext, digit));
        }
        acc
    }

    /// Pulls an element back along the embedding if it lies in the image.
    pub fn invert(&self, c: &FieldElem) -> Option<FieldElem> {
        debug_assert!(c.spec() == &self.ext);
        if Arc::ptr_eq(&self.base, &self.ext) {
            return Some(c.clone());
        }
        // Scan the base field; base cardinalities in play are small.
        for idx in 0..self.base.cardinality() {
            let cand = FieldElem::from_index(&self.base, idx);
            if self.apply(&cand) == *c {
                return Some(cand);
            }
        }
        None
    }

    /// Composes two embeddings base -> mid -> ext.
    pub fn compose(first: &Embedding, second: &Embedding) -> Embedding {
        debug_assert!(first.ext == second.base);
        Embedding {
            base: first.base.clone(),
            ext: second.ext.clone(),
            gen_image: second.apply(&first.gen_image),
        }
    }

    /// Relative trace from the extension down to the base field, composed
    /// with the inverse embedding. Panics if the trace escapes the image
    /// (it never does).
    pub fn relative_trace(&self, c: &FieldElem) -> FieldElem {
        debug_assert!(c.spec() == &self.ext);
        let qb = self.base.cardinality();
        let steps = self.ext.extension_degree() / self.base.extension_degree();
        let mut acc = c.clone();
        let mut term = c.clone();
        for _ in 1..steps {
            term = term.pow(qb);
            acc = acc.add(&term);
        }
        self.invert(&acc).expect("relative trace lies in the base field")
    }
}

// ---------------------------------------------------------------------------
// prime-field polynomial helpers (raw u64 vectors, lowest degree first)
// ---------------------------------------------------------------------------

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    p.checked_pow(m)
}

fn pp_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn pp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    pp_trim(&mut out);
    out
}

fn pp_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    pp_trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = mod_inv(f[df], p);
    while r.len() > df {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        if c != 0 {
            for (j, &fj) in f.iter().enumerate() {
                let k = dr - df + j;
                r[k] = (r[k] + c * (p - fj) % p) % p;
            }
        }
        r.pop();
        pp_trim(&mut r);
    }
    if r.is_empty() {
        r.push(0);
    }
    r
}

fn pp_powmod_x(mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    // x^e mod f
    let mut base = pp_rem(&[0, 1], f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = pp_rem(&pp_mul(&acc, &base, p), f, p);
        }
        base = pp_rem(&pp_mul(&base, &base, p), f, p);
        e >>= 1;
    }
    acc
}

fn pp_powmod(g: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = pp_rem(g, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = pp_rem(&pp_mul(&acc, &base, p), f, p);
        }
        base = pp_rem(&pp_mul(&base, &base, p), f, p);
        e >>= 1;
    }
    acc
}

fn pp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    pp_trim(&mut a);
    pp_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = pp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial over GF(p), by the Frobenius
/// fixed-field criterion.
fn pp_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u64;
    if m == 1 {
        return true;
    }
    // x^(p^m) = x mod f
    let mut xq = pp_rem(&[0, 1], f, p);
    for _ in 0..m {
        xq = pp_powmod(&xq, p, f, p);
    }
    let mut diff = xq.clone();
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    pp_trim(&mut diff);
    if !(diff.len() == 1 && diff[0] == 0) {
        return false;
    }
    // gcd(x^(p^(m/l)) - x, f) = 1 for every prime l | m
    for l in prime_factors(m) {
        let mut xe = pp_rem(&[0, 1], f, p);
        for _ in 0..(m / l) {
            xe = pp_powmod(&xe, p, f, p);
        }
        let mut diff = xe;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        pp_trim(&mut diff);
        let g = pp_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// True if the class of x generates the multiplicative group of
/// GF(p)[x]/(f), f irreducible of degree m.
fn pp_is_primitive(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u32;
    let q1 = p.pow(m) - 1;
    if m == 1 {
        // root of x + f[0] is -f[0]
        let r = (p - f[0] % p) % p;
        if r == 0 {
            return false;
        }
        for l in prime_factors(q1) {
            if pow_mod_u64(r, q1 / l, p) == 1 {
                return false;
            }
        }
        return true;
    }
    for l in prime_factors(q1) {
        let e = pp_powmod_x(q1 / l, f, p);
        if e.len() == 1 && e[0] == 1 {
            return false;
        }
    }
    true
}

fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Canonical default modulus: the first monic irreducible primitive
/// polynomial of degree m over GF(p) in enumeration order of the
/// non-leading coefficient vector (constant term least significant).
pub fn default_modulus(p: u64, m: usize) -> Vec<u64> {
    let total = p.pow(m as u32);
    for idx in 0..total {
        let mut f = Vec::with_capacity(m + 1);
        let mut k = idx;
        for _ in 0..m {
            f.push(k % p);
            k /= p;
        }
        f.push(1);
        if pp_is_irreducible(&f, p) && pp_is_primitive(&f, p) {
            return f;
        }
    }
    unreachable!("no primitive polynomial of degree {m} over GF({p})")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(pm: (u64, usize)) -> Arc<FieldSpec> {
        FieldSpec::with_default_modulus(pm.0, pm.1, "w").unwrap()
    }

    #[test]
    fn default_moduli_match_known_small_fields() {
        assert_eq!(default_modulus(2, 1), vec![1, 1]); // w + 1
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]); // w^2 + w + 1
        assert_eq!(default_modulus(2, 3), vec![1, 1, 0, 1]); // w^3 + w + 1
        assert_eq!(default_modulus(2, 4), vec![1, 1, 0, 0, 1]); // w^4 + w + 1
    }

    #[test]
    fn inv_frobenius_is_pth_root_exhaustive() {
        for spec in [gf((2, 1)), gf((2, 2)), gf((2, 3)), gf((2, 4)), gf((3, 2)), gf((5, 2))] {
            let p = spec.characteristic();
            for c in all_elements(&spec) {
                let r = c.inv_frobenius();
                assert_eq!(r.pow(p), c);
            }
        }
    }

    #[test]
    fn inv_frobenius_spec_examples() {
        // GF(2): fixed point
        let f2 = gf((2, 1));
        assert_eq!(FieldElem::one(&f2).inv_frobenius(), FieldElem::one(&f2));
        // GF(4): w -> w+1 since (w+1)^2 = w
        let f4 = gf((2, 2));
        let w = FieldElem::generator(&f4);
        let w1 = w.add(&FieldElem::one(&f4));
        assert_eq!(w.inv_frobenius(), w1);
        assert_eq!(w1.square(), w);
        // GF(3): 2^3 = 2
        let f3 = gf((3, 1));
        let two = FieldElem::from_prime(&f3, 2);
        assert_eq!(two.inv_frobenius(), two);
    }

    #[test]
    fn trace_spec_examples() {
        let f4 = gf((2, 2));
        let w = FieldElem::generator(&f4);
        assert_eq!(w.trace_residue(), 1);
        assert_eq!(FieldElem::zero(&f4).trace_residue(), 0);
        let f8 = FieldSpec::new(2, 3, vec![1, 1, 0, 1], "w").unwrap();
        let w = FieldElem::generator(&f8);
        assert_eq!(w.trace_residue(), 0);
    }

    #[test]
    fn trace_is_additive() {
        for spec in [gf((2, 3)), gf((3, 2))] {
            for a in all_elements(&spec) {
                for b in all_elements(&spec) {
                    assert_eq!(
                        a.trace_to_prime().add(&b.trace_to_prime()),
                        a.add(&b).trace_to_prime()
                    );
                }
            }
        }
    }

    #[test]
    fn artin_schreier_exhaustive() {
        for spec in [gf((2, 1)), gf((2, 2)), gf((2, 3)), gf((2, 4))] {
            for c in all_elements(&spec) {
                let sol = artin_schreier_solve(&c).unwrap();
                match sol {
                    Some(u) => {
                        assert_eq!(c.trace_residue(), 0);
                        assert_eq!(u.square().add(&u), c);
                        // canonical pick: smaller than its mate
                        let mate = u.add(&FieldElem::one(&spec));
                        assert!(u.cmp_lex(&mate).is_le());
                    }
                    None => assert_eq!(c.trace_residue(), 1),
                }
            }
        }
    }

    #[test]
    fn artin_schreier_spec_examples() {
        let f2 = gf((2, 1));
        assert_eq!(
            artin_schreier_solve(&FieldElem::zero(&f2)).unwrap(),
            Some(FieldElem::zero(&f2))
        );
        assert_eq!(artin_schreier_solve(&FieldElem::one(&f2)).unwrap(), None);
        let f4 = gf((2, 2));
        let w = FieldElem::generator(&f4);
        assert_eq!(
            artin_schreier_solve(&FieldElem::one(&f4)).unwrap(),
            Some(w.clone())
        );
        assert_eq!(w.square().add(&w), FieldElem::one(&f4));
        // odd characteristic refuses
        let f3 = gf((3, 1));
        assert!(matches!(
            artin_schreier_solve(&FieldElem::one(&f3)),
            Err(Error::CharacteristicMismatch { .. })
        ));
    }

    #[test]
    fn field_inverse_and_pow() {
        for spec in [gf((2, 4)), gf((3, 2)), gf((5, 1)), gf((7, 1))] {
            let q = spec.cardinality();
            for c in all_elements(&spec).skip(1) {
                let i = c.inv();
                assert!(c.mul(&i).is_one());
                assert!(c.pow(q - 1).is_one());
            }
        }
    }

    #[test]
    fn odd_sqrt_roundtrip() {
        let spec = gf((5, 2));
        let mut residues = 0;
        for c in all_elements(&spec) {
            if let Some(r) = c.sqrt() {
                assert_eq!(r.square(), c);
                residues += 1;
            }
        }
        // 0 plus (q-1)/2 nonzero squares
        assert_eq!(residues, 1 + (25 - 1) / 2);
    }

    #[test]
    fn display_highest_degree_first() {
        let f4 = gf((2, 2));
        let w = FieldElem::generator(&f4);
        assert_eq!(w.add(&FieldElem::one(&f4)).to_string(), "w+1");
        let f8 = gf((2, 3));
        let w = FieldElem::generator(&f8);
        assert_eq!(w.square().add(&w).to_string(), "w^2+w");
        assert_eq!(FieldElem::zero(&f8).to_string(), "0");
    }
}
