//! Rational functions in one variable, kept in reduced canonical form.
//!
//! The denominator is monic and coprime to the numerator after every
//! operation, so equality of values is equality of representations.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", crate::text::ratfunc_to_string(self, "x"))
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead_inv = den.leading().inv();
        num = num.scale(&lead_inv);
        den = den.scale(&lead_inv);
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let one = Poly::one(p.spec());
        RatFunc { num: p, den: one }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> RatFunc {
        RatFunc::from_poly(Poly::zero(spec))
    }

    pub fn one(spec: &Arc<FieldSpec>) -> RatFunc {
        RatFunc::from_poly(Poly::one(spec))
    }

    pub fn constant(c: FieldElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn x(spec: &Arc<FieldSpec>) -> RatFunc {
        RatFunc::from_poly(Poly::x(spec))
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.num.spec()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().map_or(true, |d| d == 0)
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = RatFunc::one(self.spec());
        let mut k = e.unsigned_abs();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        acc
    }

    /// Formal derivative d/dx via the quotient rule.
    pub fn derivative(&self) -> RatFunc {
        let n = self.num.derivative().mul(&self.den);
        let m = self.num.mul(&self.den.derivative());
        RatFunc::new(n.sub(&m), self.den.mul(&self.den))
    }

    /// Exact square root in characteristic two. A reduced fraction is a
    /// square iff numerator and denominator are squares, equivalently iff
    /// the derivative vanishes.
    pub fn sqrt(&self) -> Result<RatFunc> {
        let spec = self.spec();
        if spec.characteristic() != 2 {
            return Err(Error::CharacteristicMismatch {
                expected: 2,
                found: spec.characteristic(),
            });
        }
        let num = self.num.sqrt();
        let den = self.den.sqrt();
        match (num, den) {
            (Some(n), Some(d)) => Ok(RatFunc::new(n, d)),
            _ => Err(Error::NotASquare(format!(
                "{}",
                crate::text::ratfunc_to_string(self, "x")
            ))),
        }
    }

    /// Order of vanishing at the monic irreducible `pi` (negative at poles).
    pub fn valuation_at_irreducible(&self, pi: &Poly) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(multiplicity(&self.num, pi) - multiplicity(&self.den, pi))
    }

    /// Order of vanishing at infinity: deg(den) - deg(num).
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64)
    }

    /// Evaluation at a base-field point; `None` at a pole.
    pub fn eval(&self, x: &FieldElem) -> Option<FieldElem> {
        let d = self.den.eval(x);
        if d.is_zero() {
            let n = self.num.eval(x);
            assert!(!n.is_zero(), "reduced fraction with common zero");
            return None;
        }
        Some(self.num.eval(x).div(&d))
    }

    /// Substitutes another rational function for the variable.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        let eval_poly = |p: &Poly| -> RatFunc {
            let mut acc = RatFunc::zero(self.spec());
            for c in p.coeffs().iter().rev() {
                acc = acc.mul(inner).add(&RatFunc::constant(c.clone()));
            }
            acc
        };
        eval_poly(&self.num).div(&eval_poly(&self.den))
    }
}

fn multiplicity(f: &Poly, pi: &Poly) -> i64 {
    let mut count = 0;
    let mut rest = f.clone();
    loop {
        let (q, r) = rest.divrem(pi);
        if r.is_zero() {
            count += 1;
            rest = q;
        } else {
            return count;
        }
    }
}
