//! Divisors: finite formal sums of places with integer coefficients,
//! plus exact divisor computation for functions and pole sets for
//! differentials.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::poly::Poly;

use super::func::{Differential, FuncElem};
use super::model::{CurveModel, ModelKind};
use super::place::Place;

#[derive(Clone, PartialEq, Eq)]
pub struct Divisor {
    curve: Arc<CurveModel>,
    coeffs: BTreeMap<Place, i64>,
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor(")?;
        let mut first = true;
        for (place, n) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{n}*{place}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl Divisor {
    pub fn zero(curve: &Arc<CurveModel>) -> Divisor {
        Divisor {
            curve: curve.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(place: &Place, n: i64) -> Divisor {
        let mut d = Divisor::zero(place.curve());
        d.add_place(place, n);
        d
    }

    pub fn curve(&self) -> &Arc<CurveModel> {
        &self.curve
    }

    pub fn add_place(&mut self, place: &Place, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.coeffs.entry(place.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.remove(place);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> Vec<Place> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&n| n >= 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, n) in other.iter() {
            out.add_place(p, n);
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            curve: self.curve.clone(),
            coeffs: self.coeffs.iter().map(|(p, &n)| (p.clone(), -n)).collect(),
        }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    /// deg = sum of coefficient * residue degree.
    pub fn degree(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|(p, &n)| n * p.degree() as i64)
            .sum()
    }

    /// Positive part.
    pub fn zeros(&self) -> Divisor {
        Divisor {
            curve: self.curve.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, &n)| n > 0)
                .map(|(p, &n)| (p.clone(), n))
                .collect(),
        }
    }

    /// Negative part, with positive coefficients.
    pub fn poles(&self) -> Divisor {
        Divisor {
            curve: self.curve.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, &n)| n < 0)
                .map(|(p, &n)| (p.clone(), -n))
                .collect(),
        }
    }

    /// self >= other coefficientwise.
    pub fn dominates(&self, other: &Divisor) -> bool {
        other
            .coeffs
            .iter()
            .all(|(p, &n)| self.coeff(p) >= n)
            && self
                .coeffs
                .iter()
                .all(|(p, &n)| n >= other.coeff(p) || other.coeffs.contains_key(p))
    }
}

impl CurveModel {
    /// The exact principal divisor of a nonzero function.
    pub fn divisor_of(self: &Arc<Self>, f: &FuncElem) -> Divisor {
        assert!(!f.is_zero(), "divisor of zero");
        let mut out = Divisor::zero(self);
        for place in self.divisor_candidate_places(f) {
            if let Some(v) = place.valuation(f) {
                out.add_place(&place, v);
            }
        }
        debug_assert_eq!(out.degree(), 0, "principal divisors have degree zero");
        out
    }

    /// Finitely many places that can carry a zero or pole of f: the fibers
    /// of the irreducible factors of its cleared numerator norm and
    /// denominator, plus infinity.
    pub fn divisor_candidate_places(self: &Arc<Self>, f: &FuncElem) -> Vec<Place> {
        let mut pis: Vec<Poly> = Vec::new();
        if self.is_p1() {
            for part in [f.u().num(), f.u().den()] {
                if let Ok(factors) = part.factor() {
                    pis.extend(factors.into_iter().map(|(p, _)| p));
                }
            }
        } else {
            let (p, r, s) = f.clear_denominators();
            let w = FuncElem::new(
                self,
                crate::ratfunc::RatFunc::from_poly(p),
                crate::ratfunc::RatFunc::from_poly(r),
            );
            let norm = w.norm();
            for part in [norm.num(), &s] {
                if !part.is_zero() {
                    if let Ok(factors) = part.factor() {
                        pis.extend(factors.into_iter().map(|(p, _)| p));
                    }
                }
            }
        }
        pis.sort_by(crate::poly::cmp_poly);
        pis.dedup();
        let mut places = vec![self.infinity()];
        for pi in pis {
            if pi.degree() == Some(0) {
                continue;
            }
            places.extend(self.places_over(&pi));
        }
        places
    }

    /// Places where dx is not a unit (its zero and pole locus).
    pub fn dx_special_places(self: &Arc<Self>) -> Vec<Place> {
        let mut out = vec![self.infinity()];
        match self.kind() {
            ModelKind::P1 | ModelKind::EllipticSupersingular { .. } => {}
            ModelKind::EllipticOrdinary { .. } => {
                // the ramified fiber over x = 0
                out.extend(
                    self.places_over(&Poly::x(self.base()))
                        .into_iter()
                        .filter(|p| p.ram_over_x() == 2),
                );
            }
            ModelKind::EllipticShortW { .. } => {
                for (pi, _) in self.c_poly().factor().expect("nonzero cubic") {
                    out.extend(
                        self.places_over(&pi)
                            .into_iter()
                            .filter(|p| p.ram_over_x() == 2),
                    );
                }
            }
        }
        out
    }

    /// Pole places of a differential h dx, exactly.
    pub fn differential_poles(self: &Arc<Self>, omega: &Differential) -> Vec<Place> {
        if omega.is_zero() {
            return Vec::new();
        }
        let mut candidates = self.divisor_candidate_places(omega.h());
        candidates.extend(self.dx_special_places());
        candidates.sort();
        candidates.dedup();
        candidates
            .into_iter()
            .filter(|p| p.differential_valuation(omega).map_or(false, |v| v < 0))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldElem, FieldSpec};

    #[test]
    fn divisor_of_x_on_ordinary_curve() {
        let base = FieldSpec::with_default_modulus(2, 1, "w").unwrap();
        let eo = CurveModel::elliptic_ordinary(FieldElem::zero(&base), FieldElem::one(&base))
            .unwrap();
        let x = super::super::func::FuncElem::x(&eo);
        let d = eo.divisor_of(&x);
        // div(x) = 2Q - 2*infinity on this model
        assert_eq!(d.degree(), 0);
        let inf = eo.infinity();
        assert_eq!(d.coeff(&inf), -2);
        let zeros = d.zeros();
        assert_eq!(zeros.degree(), 2);
        let support = zeros.support();
        assert_eq!(support.len(), 1);
        assert_eq!(support[0].degree(), 1);
    }

    #[test]
    fn divisor_degree_zero_for_mixed_elements() {
        let base = FieldSpec::with_default_modulus(2, 2, "w").unwrap();
        let es = CurveModel::elliptic_supersingular(
            FieldElem::generator(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        let x = super::super::func::FuncElem::x(&es);
        let y = super::super::func::FuncElem::y(&es);
        for f in [
            y.add(&x.pow(2)),
            y.mul(&x).add(&FuncElem::one(&es)),
            y.div(&x.pow(2)).add(&x),
        ] {
            let d = es.divisor_of(&f);
            assert_eq!(d.degree(), 0);
            assert!(!d.is_zero());
        }
    }

    use super::super::func::FuncElem;
}
