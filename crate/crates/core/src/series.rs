//! Truncated Laurent series with explicit precision bookkeeping.
//!
//! A series knows its coefficients on the window `[lead, prec)`; `prec` is
//! the exponent of the first *unknown* term. Arithmetic propagates the
//! window honestly, so a consumer can always tell whether the coefficient
//! it needs is certified. Exact inputs (constants, monomials) carry a huge
//! sentinel precision.

use std::fmt;
use std::sync::Arc;

use crate::field::{FieldElem, FieldSpec};

/// Sentinel precision for exactly-known series.
pub const EXACT_PREC: i64 = i64::MAX / 4;

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    spec: Arc<FieldSpec>,
    /// Exponent of the first stored coefficient; nonzero unless empty.
    lead: i64,
    coeffs: Vec<FieldElem>,
    /// Exponent of the first unknown coefficient.
    prec: i64,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(")?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})t^{}", c, self.lead + i as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{}))", self.prec)
    }
}

impl PowerSeries {
    pub fn new(spec: &Arc<FieldSpec>, lead: i64, coeffs: Vec<FieldElem>, prec: i64) -> PowerSeries {
        let mut s = PowerSeries {
            spec: spec.clone(),
            lead,
            coeffs,
            prec: prec.min(EXACT_PREC),
        };
        s.normalize();
        s
    }

    /// The zero series known up to `prec`.
    pub fn zero_to(spec: &Arc<FieldSpec>, prec: i64) -> PowerSeries {
        PowerSeries {
            spec: spec.clone(),
            lead: prec.min(EXACT_PREC),
            coeffs: Vec::new(),
            prec: prec.min(EXACT_PREC),
        }
    }

    pub fn constant(c: FieldElem) -> PowerSeries {
        PowerSeries::monomial(c, 0)
    }

    /// c * t^k, exactly known.
    pub fn monomial(c: FieldElem, k: i64) -> PowerSeries {
        let spec = c.spec().clone();
        if c.is_zero() {
            PowerSeries::zero_to(&spec, EXACT_PREC)
        } else {
            PowerSeries {
                spec,
                lead: k,
                coeffs: vec![c],
                prec: EXACT_PREC,
            }
        }
    }

    fn normalize(&mut self) {
        // drop unknown tail
        let window = (self.prec - self.lead).max(0) as usize;
        self.coeffs.truncate(window);
        // strip leading zeros
        let lz = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lz > 0 {
            self.coeffs.drain(..lz);
            self.lead += lz as i64;
        }
        if self.coeffs.is_empty() {
            self.lead = self.prec;
        }
        // trailing zeros are fine to keep implicit
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// True if no nonzero coefficient is known.
    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first known nonzero term.
    pub fn lead_exponent(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lead)
        }
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.first()
    }

    /// Coefficient of t^e; `None` when e is beyond the certified window.
    pub fn coeff(&self, e: i64) -> Option<FieldElem> {
        if e >= self.prec {
            return None;
        }
        if e < self.lead {
            return Some(FieldElem::zero(&self.spec));
        }
        let i = (e - self.lead) as usize;
        Some(
            self.coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(|| FieldElem::zero(&self.spec)),
        )
    }

    /// Nonzero exponents in the certified window, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.lead + i as i64)
            .collect()
    }

    pub fn truncate(&self, prec: i64) -> PowerSeries {
        PowerSeries::new(&self.spec, self.lead, self.coeffs.clone(), self.prec.min(prec))
    }

    pub fn shift(&self, k: i64) -> PowerSeries {
        PowerSeries {
            spec: self.spec.clone(),
            lead: self.lead + k,
            coeffs: self.coeffs.clone(),
            prec: (self.prec + k).min(EXACT_PREC),
        }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let prec = self.prec.min(other.prec);
        // allocate only up to the last stored coefficient; the tail up to
        // prec is implicitly zero (empty series contribute nothing)
        let occupied = |s: &PowerSeries| {
            if s.coeffs.is_empty() {
                None
            } else {
                Some((s.lead, s.lead + s.coeffs.len() as i64))
            }
        };
        let (lead, top) = match (occupied(self), occupied(other)) {
            (None, None) => (prec, prec),
            (Some((l, t)), None) | (None, Some((l, t))) => (l.min(prec), t.min(prec)),
            (Some((l1, t1)), Some((l2, t2))) => (l1.min(l2).min(prec), t1.max(t2).min(prec)),
        };
        let len = (top - lead).max(0) as usize;
        let mut out = vec![FieldElem::zero(&self.spec); len];
        for s in [self, other] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.lead + i as i64;
                if e < prec {
                    let k = (e - lead) as usize;
                    out[k] = out[k].add(c);
                }
            }
        }
        PowerSeries::new(&self.spec, lead, out, prec)
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            spec: self.spec.clone(),
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let a_lead_eff = self.lead;
        let b_lead_eff = other.lead;
        let prec = (a_lead_eff + other.prec)
            .min(b_lead_eff + self.prec)
            .min(EXACT_PREC);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return PowerSeries::zero_to(&self.spec, prec);
        }
        let lead = self.lead + other.lead;
        let top = (lead + (self.coeffs.len() + other.coeffs.len()) as i64 - 1).min(prec);
        let len = (top - lead).max(0) as usize;
        let mut out = vec![FieldElem::zero(&self.spec); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k < len {
                    out[k] = out[k].add(&a.mul(b));
                }
            }
        }
        PowerSeries::new(&self.spec, lead, out, prec)
    }

    pub fn mul_scalar(&self, c: &FieldElem) -> PowerSeries {
        if c.is_zero() {
            return PowerSeries::zero_to(&self.spec, self.prec);
        }
        PowerSeries {
            spec: self.spec.clone(),
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplicative inverse; panics when no nonzero term is certified.
    pub fn inv(&self) -> PowerSeries {
        let a0 = self
            .leading_coeff()
            .expect("inverse of a series with no certified leading term")
            .clone();
        let n = self.coeffs.len();
        let inv0 = a0.inv();
        let mut out = vec![FieldElem::zero(&self.spec); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = FieldElem::zero(&self.spec);
            for j in 1..=k.min(n - 1) {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = acc.neg().mul(&inv0);
        }
        // window: inverse is certified on as many terms as the input
        let prec = -self.lead + (self.prec - self.lead);
        PowerSeries::new(&self.spec, -self.lead, out, prec.min(EXACT_PREC))
    }

    pub fn div(&self, other: &PowerSeries) -> PowerSeries {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u64) -> PowerSeries {
        let mut acc = PowerSeries::constant(FieldElem::one(&self.spec));
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Termwise derivative d/dt.
    pub fn derivative(&self) -> PowerSeries {
        let out: Vec<FieldElem> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.lead + i as i64;
                let scalar = FieldElem::from_prime(
                    &self.spec,
                    (e.rem_euclid(self.spec.characteristic() as i64)) as u64,
                );
                c.mul(&scalar)
            })
            .collect();
        PowerSeries::new(&self.spec, self.lead - 1, out, self.prec - 1)
    }

    /// Square root in characteristic two: exponents halve, coefficients take
    /// their unique square root. `None` when an odd-exponent term obstructs.
    pub fn sqrt(&self) -> Option<PowerSeries> {
        assert_eq!(self.spec.characteristic(), 2);
        if self.coeffs.is_empty() {
            return Some(PowerSeries::zero_to(&self.spec, self.prec.div_euclid(2)));
        }
        if self.lead % 2 != 0 {
            return None;
        }
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.lead + i as i64;
            if e % 2 != 0 {
                if !c.is_zero() {
                    return None;
                }
            } else {
                out.push(c.inv_frobenius());
            }
        }
        // known up to exponent prec-1; halved: floor((prec-1)/2) known, so
        // first unknown is floor((prec-1)/2) + 1 = floor((prec+1)/2)
        let prec = (self.prec + 1).div_euclid(2);
        Some(PowerSeries::new(&self.spec, self.lead / 2, out, prec))
    }

    /// Applies a coefficient map (e.g. a field embedding).
    pub fn map_coeffs(
        &self,
        target: &Arc<FieldSpec>,
        f: impl Fn(&FieldElem) -> FieldElem,
    ) -> PowerSeries {
        PowerSeries::new(
            target,
            self.lead,
            self.coeffs.iter().map(f).collect(),
            self.prec,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn gf4() -> Arc<FieldSpec> {
        FieldSpec::with_default_modulus(2, 2, "w").unwrap()
    }

    fn series_from(spec: &Arc<FieldSpec>, lead: i64, ints: &[u64], prec: i64) -> PowerSeries {
        PowerSeries::new(
            spec,
            lead,
            ints.iter().map(|&c| FieldElem::from_prime(spec, c)).collect(),
            prec,
        )
    }

    #[test]
    fn mul_and_inv_roundtrip() {
        let f4 = gf4();
        let s = series_from(&f4, -2, &[1, 1, 0, 1, 1, 0, 1], 5);
        let i = s.inv();
        let prod = s.mul(&i);
        assert_eq!(prod.lead_exponent(), Some(0));
        for e in 0..prod.precision() {
            let c = prod.coeff(e).unwrap();
            if e == 0 {
                assert!(c.is_one());
            } else {
                assert!(c.is_zero(), "t^{e} of s * s^-1 should vanish");
            }
        }
        assert!(prod.precision() >= 5);
    }

    #[test]
    fn precision_tracks_through_mul() {
        let f4 = gf4();
        let a = series_from(&f4, -1, &[1], 3); // t^-1 + O(t^3)
        let b = series_from(&f4, 2, &[1], 4); // t^2 + O(t^4)
        let p = a.mul(&b);
        // window: min(-1+4, 2+3) = 3
        assert_eq!(p.precision(), 3);
        assert_eq!(p.lead_exponent(), Some(1));
    }

    #[test]
    fn sqrt_char2() {
        let f4 = gf4();
        let w = FieldElem::generator(&f4);
        // (w t^-1 + t^2)^2 = w^2 t^-2 + t^4
        let mut coeffs = vec![FieldElem::zero(&f4); 7];
        coeffs[0] = w.square();
        coeffs[6] = FieldElem::one(&f4);
        let sq = PowerSeries::new(&f4, -2, coeffs, 8);
        let r = sq.sqrt().unwrap();
        assert_eq!(r.coeff(-1).unwrap(), w);
        assert_eq!(r.coeff(2).unwrap(), FieldElem::one(&f4));
        // odd-exponent obstruction
        let bad = series_from(&f4, 1, &[1], 5);
        assert!(bad.sqrt().is_none());
    }

    #[test]
    fn derivative_kills_even_exponents_in_char2() {
        let f4 = gf4();
        let s = series_from(&f4, -2, &[1, 1, 1, 1, 1], 4);
        let d = s.derivative();
        // only odd exponents of s survive: -1 and 1 -> exponents -2 and 0
        assert_eq!(d.support(), vec![-2, 0]);
    }
}
