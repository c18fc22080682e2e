//! Elements of the function field k(X), written u + v y (v = 0 on P^1),
//! and differentials in the normal form h dx.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

use super::model::{CurveModel, ModelKind};

#[derive(Clone)]
pub struct FuncElem {
    curve: Arc<CurveModel>,
    u: RatFunc,
    v: RatFunc,
}

impl PartialEq for FuncElem {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.curve == other.curve, "elements of different curves");
        self.u == other.u && self.v == other.v
    }
}

impl Eq for FuncElem {}

impl fmt::Debug for FuncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FuncElem({})", crate::text::func_to_string(self))
    }
}

impl fmt::Display for FuncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::func_to_string(self))
    }
}

impl FuncElem {
    pub fn new(curve: &Arc<CurveModel>, u: RatFunc, v: RatFunc) -> FuncElem {
        if curve.is_p1() {
            assert!(v.is_zero(), "P^1 function with a y part");
        }
        FuncElem {
            curve: curve.clone(),
            u,
            v,
        }
    }

    pub fn from_ratfunc(curve: &Arc<CurveModel>, u: RatFunc) -> FuncElem {
        let v = RatFunc::zero(curve.base());
        FuncElem {
            curve: curve.clone(),
            u,
            v,
        }
    }

    pub fn from_poly(curve: &Arc<CurveModel>, p: Poly) -> FuncElem {
        FuncElem::from_ratfunc(curve, RatFunc::from_poly(p))
    }

    pub fn zero(curve: &Arc<CurveModel>) -> FuncElem {
        FuncElem::from_ratfunc(curve, RatFunc::zero(curve.base()))
    }

    pub fn one(curve: &Arc<CurveModel>) -> FuncElem {
        FuncElem::from_ratfunc(curve, RatFunc::one(curve.base()))
    }

    pub fn constant(curve: &Arc<CurveModel>, c: FieldElem) -> FuncElem {
        FuncElem::from_ratfunc(curve, RatFunc::constant(c))
    }

    pub fn x(curve: &Arc<CurveModel>) -> FuncElem {
        FuncElem::from_ratfunc(curve, RatFunc::x(curve.base()))
    }

    pub fn y(curve: &Arc<CurveModel>) -> FuncElem {
        assert!(curve.is_elliptic(), "P^1 has no y coordinate");
        FuncElem::new(
            curve,
            RatFunc::zero(curve.base()),
            RatFunc::one(curve.base()),
        )
    }

    pub fn curve(&self) -> &Arc<CurveModel> {
        &self.curve
    }

    pub fn u(&self) -> &RatFunc {
        &self.u
    }

    pub fn v(&self) -> &RatFunc {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.v.is_zero() && self.u.is_constant()
    }

    pub fn add(&self, other: &FuncElem) -> FuncElem {
        FuncElem::new(&self.curve, self.u.add(&other.u), self.v.add(&other.v))
    }

    pub fn neg(&self) -> FuncElem {
        FuncElem::new(&self.curve, self.u.neg(), self.v.neg())
    }

    pub fn sub(&self, other: &FuncElem) -> FuncElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FuncElem) -> FuncElem {
        if self.v.is_zero() && other.v.is_zero() {
            return FuncElem::new(
                &self.curve,
                self.u.mul(&other.u),
                RatFunc::zero(self.curve.base()),
            );
        }
        // (u1 + v1 y)(u2 + v2 y) with y^2 = c - h y
        let h = RatFunc::from_poly(self.curve.h_poly());
        let c = RatFunc::from_poly(self.curve.c_poly());
        let vv = self.v.mul(&other.v);
        let u = self.u.mul(&other.u).add(&vv.mul(&c));
        let v = self
            .u
            .mul(&other.v)
            .add(&other.u.mul(&self.v))
            .sub(&vv.mul(&h));
        FuncElem::new(&self.curve, u, v)
    }

    /// Galois conjugate over k(x): y -> -y - h.
    pub fn conj(&self) -> FuncElem {
        let h = RatFunc::from_poly(self.curve.h_poly());
        FuncElem::new(&self.curve, self.u.sub(&self.v.mul(&h)), self.v.neg())
    }

    /// Norm to k(x): self * conj(self) = u^2 - uvh - v^2 c.
    pub fn norm(&self) -> RatFunc {
        let h = RatFunc::from_poly(self.curve.h_poly());
        let c = RatFunc::from_poly(self.curve.c_poly());
        self.u
            .mul(&self.u)
            .sub(&self.u.mul(&self.v).mul(&h))
            .sub(&self.v.mul(&self.v).mul(&c))
    }

    pub fn inv(&self) -> FuncElem {
        assert!(!self.is_zero(), "inverse of zero");
        if self.v.is_zero() {
            return FuncElem::from_ratfunc(&self.curve, self.u.inv());
        }
        let n = self.norm();
        assert!(!n.is_zero(), "norm of a nonzero element vanished");
        let conj = self.conj();
        FuncElem::new(&self.curve, conj.u.mul(&n.inv()), conj.v.mul(&n.inv()))
    }

    pub fn div(&self, other: &FuncElem) -> FuncElem {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> FuncElem {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = FuncElem::one(&self.curve);
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

    /// dy/dx as a function-field element: (c' - h' y)/(2y + h).
    pub fn dy_dx(curve: &Arc<CurveModel>) -> FuncElem {
        assert!(curve.is_elliptic());
        let hp = RatFunc::from_poly(curve.h_poly().derivative());
        let cp = RatFunc::from_poly(curve.c_poly().derivative());
        let y = FuncElem::y(curve);
        let two = FuncElem::constant(curve, FieldElem::from_prime(curve.base(), 2));
        let h = FuncElem::from_poly(curve, curve.h_poly());
        let num = FuncElem::from_ratfunc(curve, cp).sub(&FuncElem::from_ratfunc(curve, hp).mul(&y));
        let den = two.mul(&y).add(&h);
        num.div(&den)
    }

    /// Formal derivative with respect to the coordinate x:
    /// d(u + v y)/dx = u' + v' y + v dy/dx.
    pub fn derivative_x(&self) -> FuncElem {
        let du = FuncElem::from_ratfunc(&self.curve, self.u.derivative());
        if self.v.is_zero() {
            return du;
        }
        let dv = FuncElem::from_ratfunc(&self.curve, self.v.derivative());
        let y = FuncElem::y(&self.curve);
        let v_elem = FuncElem::from_ratfunc(&self.curve, self.v.clone());
        du.add(&dv.mul(&y))
            .add(&v_elem.mul(&FuncElem::dy_dx(&self.curve)))
    }

    /// True when the element generates a separable extension of k(x-image),
    /// i.e. lies outside constants and p-th powers.
    pub fn is_separating(&self) -> bool {
        !self.is_constant() && !self.derivative_x().is_zero()
    }

    /// Exact square root in characteristic two:
    /// (s + t y)^2 = (s^2 + t^2 c) + (t^2 h) y.
    pub fn sqrt(&self) -> Result<FuncElem> {
        let base = self.curve.base();
        if base.characteristic() != 2 {
            return Err(Error::CharacteristicMismatch {
                expected: 2,
                found: base.characteristic(),
            });
        }
        if self.v.is_zero() {
            return Ok(FuncElem::from_ratfunc(&self.curve, self.u.sqrt()?));
        }
        let h = RatFunc::from_poly(self.curve.h_poly());
        if h.is_zero() {
            return Err(Error::NotASquare(format!("{self}")));
        }
        let t2 = self.v.div(&h);
        let t = t2.sqrt().map_err(|_| Error::NotASquare(format!("{self}")))?;
        let c = RatFunc::from_poly(self.curve.c_poly());
        let s = self
            .u
            .add(&t2.mul(&c))
            .sqrt()
            .map_err(|_| Error::NotASquare(format!("{self}")))?;
        Ok(FuncElem::new(&self.curve, s, t))
    }

    /// Fourth power, the basic building block of the projective action.
    pub fn pow4(&self) -> FuncElem {
        self.pow(4)
    }

    /// Writes self as (p + r y)/s with polynomial p, r and s.
    pub fn clear_denominators(&self) -> (Poly, Poly, Poly) {
        let s = self.u.den().mul(self.v.den());
        let p = self.u.num().mul(self.v.den());
        let r = self.v.num().mul(self.u.den());
        (p, r, s)
    }
}

/// A differential in normal form (h) dx.
#[derive(Clone, PartialEq, Eq)]
pub struct Differential {
    h: FuncElem,
}

impl fmt::Debug for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Differential(({}) dx)", self.h)
    }
}

impl fmt::Display for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx", self.h)
    }
}

impl Differential {
    pub fn new(h: FuncElem) -> Differential {
        Differential { h }
    }

    pub fn zero(curve: &Arc<CurveModel>) -> Differential {
        Differential {
            h: FuncElem::zero(curve),
        }
    }

    /// d(f) = f'(x) dx.
    pub fn of(f: &FuncElem) -> Differential {
        Differential {
            h: f.derivative_x(),
        }
    }

    pub fn h(&self) -> &FuncElem {
        &self.h
    }

    pub fn curve(&self) -> &Arc<CurveModel> {
        self.h.curve()
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero()
    }

    pub fn add(&self, other: &Differential) -> Differential {
        Differential {
            h: self.h.add(&other.h),
        }
    }

    pub fn sub(&self, other: &Differential) -> Differential {
        Differential {
            h: self.h.sub(&other.h),
        }
    }

    pub fn mul_func(&self, f: &FuncElem) -> Differential {
        Differential {
            h: self.h.mul(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn gf2_curves() -> (Arc<CurveModel>, Arc<CurveModel>) {
        let f2 = FieldSpec::with_default_modulus(2, 1, "w").unwrap();
        let one = FieldElem::one(&f2);
        let zero = FieldElem::zero(&f2);
        let eo = CurveModel::elliptic_ordinary(zero.clone(), one.clone()).unwrap();
        let es = CurveModel::elliptic_supersingular(zero, one).unwrap();
        (eo, es)
    }

    #[test]
    fn curve_relation_holds_in_arithmetic() {
        let (eo, es) = gf2_curves();
        for curve in [eo, es] {
            let y = FuncElem::y(&curve);
            let h = FuncElem::from_poly(&curve, curve.h_poly());
            let c = FuncElem::from_poly(&curve, curve.c_poly());
            // y^2 + h y = c
            assert_eq!(y.mul(&y).add(&h.mul(&y)), c);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let (eo, _) = gf2_curves();
        let x = FuncElem::x(&eo);
        let y = FuncElem::y(&eo);
        let f = x.add(&y.mul(&x)).add(&FuncElem::one(&eo));
        let g = f.inv();
        assert!(f.mul(&g).is_one());
    }

    #[test]
    fn dy_dx_matches_models() {
        let (eo, es) = gf2_curves();
        // ordinary: dy/dx = (y + x^2)/x
        let x = FuncElem::x(&eo);
        let y = FuncElem::y(&eo);
        let expect = y.add(&x.mul(&x)).div(&x);
        assert_eq!(FuncElem::dy_dx(&eo), expect);
        // supersingular: dy/dx = x^2 + a
        let x = FuncElem::x(&es);
        assert_eq!(FuncElem::dy_dx(&es), x.mul(&x));
    }

    #[test]
    fn is_separating_spec_examples() {
        let f2 = FieldSpec::with_default_modulus(2, 1, "w").unwrap();
        let p1 = CurveModel::p1(&f2);
        let x = FuncElem::x(&p1);
        assert!(x.is_separating());
        assert!(!x.mul(&x).is_separating());
        let (eo, _) = gf2_curves();
        assert!(FuncElem::y(&eo).is_separating());
    }

    #[test]
    fn sqrt_on_elliptic() {
        let (eo, es) = gf2_curves();
        for curve in [eo, es] {
            let x = FuncElem::x(&curve);
            let y = FuncElem::y(&curve);
            let f = y.add(&x.mul(&y)).add(&x.mul(&x).mul(&x));
            let sq = f.mul(&f);
            let r = sq.sqrt().unwrap();
            assert_eq!(r, f);
            assert_eq!(r.mul(&r), sq);
        }
    }

    #[test]
    fn derivative_of_square_vanishes() {
        let (eo, _) = gf2_curves();
        let x = FuncElem::x(&eo);
        let y = FuncElem::y(&eo);
        let f = y.add(&x.pow(2)).add(&x.mul(&y));
        assert!(f.mul(&f).derivative_x().is_zero());
        assert!(!f.derivative_x().is_zero());
    }
}
