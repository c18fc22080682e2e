//! Local analysis at a place: power-series expansions in the stored
//! uniformizer, residues, and values in the residue field.
//!
//! Each place kind gets explicit local coordinates x(t), y(t) in the
//! completed local ring, produced by Newton (or contraction) iteration on
//! the curve equation. Expansion of an arbitrary function is then Horner
//! evaluation of its cleared form (p + r y)/s. A driver escalates the
//! working precision (doubling, hard cap 2^12) until the requested window
//! is certified.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::Poly;
use crate::series::PowerSeries;

use super::func::{Differential, FuncElem};
use super::model::ModelKind;
use super::place::{FiberKind, Place, PlaceInner};

/// Hard cap on working precision, per the escalation policy.
pub const PRECISION_CAP: i64 = 1 << 12;

pub struct LocalCoords {
    pub x: PowerSeries,
    pub y: Option<PowerSeries>,
}

fn newton_iters(prec: i64) -> usize {
    (64 - (prec.max(2) as u64).leading_zeros() as usize) + 4
}

impl Place {
    /// Series for the coordinates x (and y on elliptic models) in the
    /// stored uniformizer, to the requested working precision.
    pub fn local_coords(&self, work: i64) -> LocalCoords {
        let curve = self.curve().clone();
        let kappa = self.residue_field();
        let one = FieldElem::one(&kappa);

        match self.inner() {
            PlaceInner::Infinity { .. } => match curve.kind() {
                ModelKind::P1 => LocalCoords {
                    x: PowerSeries::monomial(one, -1),
                    y: None,
                },
                ModelKind::EllipticOrdinary { a, b } => {
                    // t = x/(y + b^(1/2)); x solves x^2 + w x + b^(1/2)^2 = 0
                    // with w = t^-2 + t^-1 + a, pole branch x ~ t^-2.
                    let b4 = b.sqrt().expect("char 2");
                    let w = PowerSeries::monomial(one.clone(), -2)
                        .add(&PowerSeries::monomial(one.clone(), -1))
                        .add(&PowerSeries::constant(a.clone()))
                        .truncate(work);
                    let csq = PowerSeries::constant(b4.square());
                    let mut x = w.clone();
                    for _ in 0..newton_iters(work + 4) {
                        // G(x) = x^2 + w x + b; G' = w (char 2)
                        let g = x.mul(&x).add(&w.mul(&x)).add(&csq);
                        if g.is_zero_to_prec() {
                            break;
                        }
                        x = x.add(&g.div(&w)).truncate(work);
                    }
                    // y = b^(1/2) + x/t
                    let y = PowerSeries::constant(b4)
                        .add(&x.shift(-1))
                        .truncate(work);
                    LocalCoords { x, y: Some(y) }
                }
                ModelKind::EllipticSupersingular { a, b } => {
                    // t = x/y, x = u t^-2, y = u t^-3 with
                    // u^3 + u^2 + u t^3 + a u t^4 + b t^6 = 0, u(0) = 1.
                    let t3 = PowerSeries::monomial(one.clone(), 3);
                    let t4 = PowerSeries::monomial(one.clone(), 4);
                    let t6 = PowerSeries::monomial(one.clone(), 6);
                    let a_s = PowerSeries::constant(a.clone());
                    let b_s = PowerSeries::constant(b.clone());
                    let mut u = PowerSeries::constant(one.clone()).truncate(work + 8);
                    for _ in 0..newton_iters(work + 8) {
                        let u2 = u.mul(&u);
                        let f = u2
                            .mul(&u)
                            .add(&u2)
                            .add(&t3.mul(&u))
                            .add(&a_s.mul(&t4).mul(&u))
                            .add(&b_s.mul(&t6));
                        if f.is_zero_to_prec() {
                            break;
                        }
                        let fu = u2.add(&t3).add(&a_s.mul(&t4));
                        u = u.add(&f.div(&fu)).truncate(work + 8);
                    }
                    LocalCoords {
                        x: u.shift(-2).truncate(work),
                        y: Some(u.shift(-3).truncate(work)),
                    }
                }
                ModelKind::EllipticShortW { a, b } => {
                    // t = x/y, x = v t^-2, y = v t^-3 with
                    // v^3 - v^2 + a v t^4 + b t^6 = 0, v(0) = 1.
                    let t4 = PowerSeries::monomial(one.clone(), 4);
                    let t6 = PowerSeries::monomial(one.clone(), 6);
                    let a_s = PowerSeries::constant(a.clone());
                    let b_s = PowerSeries::constant(b.clone());
                    let two = PowerSeries::constant(FieldElem::from_prime(&kappa, 2));
                    let three = PowerSeries::constant(FieldElem::from_prime(&kappa, 3));
                    let mut v = PowerSeries::constant(one.clone()).truncate(work + 8);
                    for _ in 0..newton_iters(work + 8) {
                        let v2 = v.mul(&v);
                        let f = v2
                            .mul(&v)
                            .sub(&v2)
                            .add(&a_s.mul(&t4).mul(&v))
                            .add(&b_s.mul(&t6));
                        if f.is_zero_to_prec() {
                            break;
                        }
                        let fv = three.mul(&v2).sub(&two.mul(&v)).add(&a_s.mul(&t4));
                        v = v.sub(&f.div(&fv)).truncate(work + 8);
                    }
                    LocalCoords {
                        x: v.shift(-2).truncate(work),
                        y: Some(v.shift(-3).truncate(work)),
                    }
                }
            },
            PlaceInner::Finite(fp) => {
                let emb = &fp.embed;
                match (&fp.kind, curve.kind()) {
                    (FiberKind::RamifiedOverX, ModelKind::EllipticOrdinary { a, b }) => {
                        // t = y - y0 with y0 = b^(1/2); solve for x:
                        // x^3 + a x^2 + x (t + y0) + t^2 = 0, root near 0.
                        let y0 = emb.apply(&b.sqrt().expect("char 2"));
                        let a0 = emb.apply(a);
                        let t = PowerSeries::monomial(one.clone(), 1);
                        let t2 = PowerSeries::monomial(one.clone(), 2);
                        let lin = t.add(&PowerSeries::constant(y0.clone()));
                        let a_s = PowerSeries::constant(a0.clone());
                        let mut x = PowerSeries::zero_to(&kappa, work + 4);
                        for _ in 0..newton_iters(work + 4) {
                            let x2 = x.mul(&x);
                            let g = x2
                                .mul(&x)
                                .add(&a_s.mul(&x2))
                                .add(&lin.mul(&x))
                                .add(&t2)
                                .truncate(work + 4);
                            if g.is_zero_to_prec() {
                                break;
                            }
                            // G' = x^2 + t + y0 in characteristic two
                            let gp = x2.add(&lin);
                            x = x.add(&g.div(&gp)).truncate(work + 4);
                        }
                        let y = PowerSeries::constant(y0).add(&t).truncate(work);
                        LocalCoords {
                            x: x.truncate(work),
                            y: Some(y),
                        }
                    }
                    (FiberKind::RamifiedOverX, ModelKind::EllipticShortW { .. }) => {
                        // t = y; solve c(x) = t^2 near x0 (c'(x0) != 0).
                        let c_shift = curve.c_poly().taylor_shift(emb, &fp.x0);
                        let t2 = PowerSeries::monomial(one.clone(), 2);
                        let mut dx = PowerSeries::zero_to(&kappa, work + 4);
                        for _ in 0..newton_iters(work + 4) {
                            let g = eval_shifted(&c_shift, &dx, &kappa).sub(&t2);
                            if g.is_zero_to_prec() {
                                break;
                            }
                            let gp = eval_shifted(&shift_derivative(&c_shift, &kappa), &dx, &kappa);
                            dx = dx.sub(&g.div(&gp)).truncate(work + 4);
                        }
                        let x = PowerSeries::constant(fp.x0.clone()).add(&dx).truncate(work);
                        let y = PowerSeries::monomial(one.clone(), 1);
                        LocalCoords { x, y: Some(y) }
                    }
                    _ => {
                        // unramified over x, uniformizer pi(x): invert the
                        // shifted minimal polynomial, then Hensel-lift y.
                        let pi_shift = fp.minpoly.taylor_shift(emb, &fp.x0);
                        debug_assert!(pi_shift[0].is_zero());
                        let c1_inv = pi_shift[1].inv();
                        let t = PowerSeries::monomial(one.clone(), 1);
                        let mut dx = t.mul_scalar(&c1_inv).truncate(work + 4);
                        let dpi = shift_derivative(&pi_shift, &kappa);
                        for _ in 0..newton_iters(work + 4) {
                            let g = eval_shifted(&pi_shift, &dx, &kappa).sub(&t);
                            if g.is_zero_to_prec() {
                                break;
                            }
                            let gp = eval_shifted(&dpi, &dx, &kappa);
                            dx = dx.sub(&g.div(&gp)).truncate(work + 4);
                        }
                        let x = PowerSeries::constant(fp.x0.clone()).add(&dx).truncate(work);
                        if curve.is_p1() {
                            return LocalCoords { x, y: None };
                        }
                        // Hensel: y^2 + H y - C = 0 with E_y = 2y + H a unit
                        let h_series = eval_poly(&curve.h_poly(), emb, &x);
                        let c_series = eval_poly(&curve.c_poly(), emb, &x);
                        let y0 = fp.y0.clone().expect("elliptic place has y0");
                        let two = PowerSeries::constant(FieldElem::from_prime(&kappa, 2));
                        let mut y = PowerSeries::constant(y0).truncate(work + 4);
                        for _ in 0..newton_iters(work + 4) {
                            let e = y.mul(&y).add(&h_series.mul(&y)).sub(&c_series);
                            if e.is_zero_to_prec() {
                                break;
                            }
                            let ey = two.mul(&y).add(&h_series);
                            y = y.sub(&e.div(&ey)).truncate(work + 4);
                        }
                        LocalCoords {
                            x,
                            y: Some(y.truncate(work)),
                        }
                    }
                }
            }
        }
    }

    /// Laurent expansion of f in the stored uniformizer, certified to the
    /// requested precision (exponent of the first unknown term).
    pub fn expand(&self, f: &FuncElem, precision: i64) -> Result<PowerSeries> {
        debug_assert!(f.curve() == self.curve());
        if f.is_zero() {
            return Ok(PowerSeries::zero_to(&self.residue_field(), precision));
        }
        let mut work = precision.abs().max(4) * 2 + 8;
        loop {
            let coords = self.local_coords(work);
            let emb = self.embedding();
            let (p, r, s) = f.clear_denominators();
            let mut num = eval_poly(&p, &emb, &coords.x);
            if !r.is_zero() {
                let y = coords.y.as_ref().expect("y part needs an elliptic model");
                num = num.add(&eval_poly(&r, &emb, &coords.x).mul(y));
            }
            let den = eval_poly(&s, &emb, &coords.x);
            if !den.is_zero_to_prec() {
                let out = num.div(&den);
                if out.precision() >= precision {
                    return Ok(out.truncate(precision));
                }
            }
            work *= 2;
            if work > PRECISION_CAP {
                return Err(Error::PrecisionExhausted { cap: PRECISION_CAP });
            }
        }
    }

    /// Value in the residue field; `None` at a pole.
    pub fn value(&self, f: &FuncElem) -> Result<Option<FieldElem>> {
        let kappa = self.residue_field();
        match self.valuation(f) {
            None => return Ok(Some(FieldElem::zero(&kappa))),
            Some(v) if v > 0 => return Ok(Some(FieldElem::zero(&kappa))),
            Some(v) if v < 0 => return Ok(None),
            _ => {}
        }
        // fast path: representation evaluates cleanly
        if let PlaceInner::Finite(fp) = self.inner() {
            let (p, r, s) = f.clear_denominators();
            let sv = s.eval_embedded(&fp.embed, &fp.x0);
            if !sv.is_zero() {
                let mut num = p.eval_embedded(&fp.embed, &fp.x0);
                if let Some(y0) = &fp.y0 {
                    num = num.add(&r.eval_embedded(&fp.embed, &fp.x0).mul(y0));
                }
                return Ok(Some(num.div(&sv)));
            }
        }
        let series = self.expand(f, 1)?;
        Ok(Some(series.coeff(0).expect("precision covers the constant")))
    }

    /// Valuation of dx at this place (exact, by model and place shape).
    pub fn dx_valuation(&self) -> i64 {
        match (self.curve().kind(), self.inner()) {
            (ModelKind::P1, PlaceInner::Infinity { .. }) => -2,
            (ModelKind::P1, PlaceInner::Finite(_)) => 0,
            (ModelKind::EllipticOrdinary { .. }, PlaceInner::Infinity { .. }) => -2,
            (ModelKind::EllipticSupersingular { .. }, PlaceInner::Infinity { .. }) => 0,
            (ModelKind::EllipticShortW { .. }, PlaceInner::Infinity { .. }) => -3,
            (_, PlaceInner::Finite(fp)) => match fp.kind {
                FiberKind::RamifiedOverX => {
                    if self.curve().base().characteristic() == 2 {
                        2
                    } else {
                        1
                    }
                }
                _ => 0,
            },
        }
    }

    /// Valuation of a differential h dx; `None` for the zero differential.
    pub fn differential_valuation(&self, omega: &Differential) -> Option<i64> {
        Some(self.valuation(omega.h())? + self.dx_valuation())
    }

    /// Residue of a differential: the t^-1 coefficient of h(t) x'(t),
    /// followed by the residue-field trace down to the base field.
    pub fn residue(&self, omega: &Differential) -> Result<FieldElem> {
        let base = self.curve().base().clone();
        if omega.is_zero() {
            return Ok(FieldElem::zero(&base));
        }
        let v = self.differential_valuation(omega).expect("nonzero");
        if v >= 0 {
            return Ok(FieldElem::zero(&base));
        }
        // the t^-1 coefficient of h(t) x'(t) needs h past -1 - v(dx)
        let h_prec = (-self.dx_valuation()).max(0) + 1;
        let h_series = self.expand(omega.h(), h_prec)?;
        let mut work = 8i64;
        loop {
            let coords = self.local_coords(work);
            let xprime = coords.x.derivative();
            let prod = h_series.mul(&xprime);
            if prod.precision() >= 0 {
                let c = prod.coeff(-1).expect("certified window");
                let emb = self.embedding();
                return Ok(emb.relative_trace(&c));
            }
            work *= 2;
            if work > PRECISION_CAP {
                return Err(Error::PrecisionExhausted { cap: PRECISION_CAP });
            }
        }
    }
}

/// Horner evaluation of a polynomial (coefficients embedded) at a series.
pub fn eval_poly(p: &Poly, emb: &crate::field::Embedding, x: &PowerSeries) -> PowerSeries {
    let kappa = x.spec().clone();
    let mut acc = PowerSeries::zero_to(&kappa, crate::series::EXACT_PREC);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&PowerSeries::constant(emb.apply(c)));
    }
    acc
}

/// Horner evaluation of shifted coefficients (already in the residue field).
fn eval_shifted(
    coeffs: &[FieldElem],
    x: &PowerSeries,
    kappa: &std::sync::Arc<crate::field::FieldSpec>,
) -> PowerSeries {
    let mut acc = PowerSeries::zero_to(kappa, crate::series::EXACT_PREC);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&PowerSeries::constant(c.clone()));
    }
    acc
}

fn shift_derivative(
    coeffs: &[FieldElem],
    kappa: &std::sync::Arc<crate::field::FieldSpec>,
) -> Vec<FieldElem> {
    if coeffs.len() <= 1 {
        return vec![FieldElem::zero(kappa)];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&FieldElem::from_prime(kappa, i as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::model::CurveModel;
    use crate::field::FieldSpec;
    use crate::ratfunc::RatFunc;
    use std::sync::Arc;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::with_default_modulus(2, 1, "w").unwrap()
    }

    #[test]
    fn p1_expansions_spec_examples() {
        let base = f2();
        let p1 = CurveModel::p1(&base);
        // f = x^2 + x^3 at (x): a2 = 1, a3 = 1
        let x_place = &p1.places_of_degree(1)[1];
        let f = FuncElem::from_poly(
            &p1,
            Poly::new(
                &base,
                vec![
                    FieldElem::zero(&base),
                    FieldElem::zero(&base),
                    FieldElem::one(&base),
                    FieldElem::one(&base),
                ],
            ),
        );
        let s = x_place.expand(&f, 6).unwrap();
        assert_eq!(s.lead_exponent(), Some(2));
        assert!(s.coeff(2).unwrap().is_one());
        assert!(s.coeff(3).unwrap().is_one());
        assert!(s.coeff(4).unwrap().is_zero());
        // x at infinity: t^-1
        let inf = p1.infinity();
        let s = inf.expand(&FuncElem::x(&p1), 3).unwrap();
        assert_eq!(s.lead_exponent(), Some(-1));
        assert!(s.coeff(-1).unwrap().is_one());
        assert!(s.coeff(0).unwrap().is_zero());
    }

    #[test]
    fn supersingular_x_at_infinity_has_double_pole() {
        let base = f2();
        let es = CurveModel::elliptic_supersingular(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        let inf = es.infinity();
        let s = inf.expand(&FuncElem::x(&es), 3).unwrap();
        assert_eq!(s.lead_exponent(), Some(-2));
        // curve relation must hold for the coordinate series
        let coords = inf.local_coords(12);
        let y = coords.y.unwrap();
        let x = coords.x;
        let lhs = y.mul(&y).add(&y);
        let rhs = x.mul(&x).mul(&x).add(&PowerSeries::constant(FieldElem::one(
            &inf.residue_field(),
        )));
        let diff = lhs.sub(&rhs);
        assert!(diff.is_zero_to_prec(), "curve relation in series: {diff:?}");
    }

    #[test]
    fn expansions_match_valuations() {
        let base = f2();
        let eo = CurveModel::elliptic_ordinary(FieldElem::zero(&base), FieldElem::one(&base))
            .unwrap();
        let mut places = eo.places_of_degree(1);
        places.extend(eo.places_of_degree(2));
        let x = FuncElem::x(&eo);
        let y = FuncElem::y(&eo);
        let candidates = [
            x.clone(),
            y.clone(),
            y.add(&x.pow(2)),
            x.add(&FuncElem::one(&eo)),
            y.div(&x),
            x.pow(3).add(&y.mul(&x)),
        ];
        for f in &candidates {
            for place in &places {
                let v = place.valuation(f).unwrap();
                let s = place.expand(f, v + 4).unwrap();
                assert_eq!(s.lead_exponent(), Some(v), "at {place}: {f:?}");
            }
        }
    }

    #[test]
    fn expansion_of_product_is_product_of_expansions() {
        let base = f2();
        let es = CurveModel::elliptic_supersingular(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        let x = FuncElem::x(&es);
        let y = FuncElem::y(&es);
        let f = y.add(&x.pow(2));
        let g = x.add(&FuncElem::one(&es));
        for place in es.places_of_degree(1) {
            let sf = place.expand(&f, 5).unwrap();
            let sg = place.expand(&g, 5).unwrap();
            let sfg = place.expand(&f.mul(&g), 5).unwrap();
            let prod = sf.mul(&sg);
            let window = prod.precision().min(sfg.precision()).min(5);
            for e in -6..window {
                assert_eq!(prod.coeff(e), sfg.coeff(e));
            }
        }
    }

    #[test]
    fn residue_spec_examples() {
        let base = f2();
        let p1 = CurveModel::p1(&base);
        // dx/x at (x) has residue 1
        let omega = Differential::new(FuncElem::from_ratfunc(&p1, RatFunc::x(&base).inv()));
        let at_zero = &p1.places_of_degree(1)[1];
        assert!(at_zero.residue(&omega).unwrap().is_one());
        // x dx/(x^2+x): residue 1 at (x+1) and 1 at infinity
        let num = RatFunc::x(&base);
        let den = RatFunc::x(&base).mul(&RatFunc::x(&base)).add(&RatFunc::x(&base));
        let omega = Differential::new(FuncElem::from_ratfunc(&p1, num.div(&den)));
        let places = p1.places_of_degree(1);
        let at_one = &places[2];
        assert!(at_one.residue(&omega).unwrap().is_one());
        assert!(places[0].residue(&omega).unwrap().is_one());
        // regular differential has residue 0
        assert!(at_zero.residue(&omega).unwrap().is_zero());
    }

    #[test]
    fn dx_valuation_matches_series() {
        let base = f2();
        let eo = CurveModel::elliptic_ordinary(FieldElem::zero(&base), FieldElem::one(&base))
            .unwrap();
        let es = CurveModel::elliptic_supersingular(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        for curve in [eo, es] {
            let mut places = curve.places_of_degree(1);
            places.extend(curve.places_of_degree(2));
            for place in places {
                let coords = place.local_coords(16);
                let xp = coords.x.derivative();
                assert_eq!(
                    xp.lead_exponent(),
                    Some(place.dx_valuation()),
                    "dx valuation at {place}"
                );
            }
        }
    }
}
