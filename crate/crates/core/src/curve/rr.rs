//! Riemann-Roch spaces and jet interpolation.
//!
//! `L(n*infinity)` has an explicit monomial basis on every supported model.
//! General `L(D)` is realized by clearing the finite part of D with a
//! product of minimal polynomials and cutting the resulting overshoot with
//! jet-vanishing conditions. Jet systems are solved over the prime field,
//! which uniformly handles residue fields of any degree.

use std::sync::Arc;

use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

use super::divisor::Divisor;
use super::func::FuncElem;
use super::model::CurveModel;
use super::place::Place;

impl CurveModel {
    /// Basis of L(n * infinity) = { f : div(f) + n*infinity >= 0 }.
    ///
    /// P^1: 1, x, ..., x^n. Elliptic: monomials x^i y^j with j <= 1 and
    /// 2i + 3j <= n, ordered by pole order.
    pub fn riemann_roch_basis(self: &Arc<Self>, n: i64) -> Vec<FuncElem> {
        assert!(n >= 0);
        let mut out = Vec::new();
        if self.is_p1() {
            for i in 0..=n {
                out.push(FuncElem::from_poly(
                    self,
                    Poly::monomial(FieldElem::one(self.base()), i as usize),
                ));
            }
            return out;
        }
        let mut monomials = Vec::new();
        for i in 0..=(n / 2) {
            monomials.push((2 * i, i, 0u8));
        }
        for i in 0..=((n - 3).max(-1) / 2) {
            if 2 * i + 3 <= n {
                monomials.push((2 * i + 3, i, 1u8));
            }
        }
        monomials.sort();
        for (_, i, j) in monomials {
            let xi = Poly::monomial(FieldElem::one(self.base()), i as usize);
            let f = if j == 0 {
                FuncElem::from_poly(self, xi)
            } else {
                FuncElem::new(
                    self,
                    RatFunc::zero(self.base()),
                    RatFunc::from_poly(xi),
                )
            };
            out.push(f);
        }
        out
    }
}

/// A window of prescribed expansion coefficients at one place: the series
/// of the solution must equal `coeffs[i]` at exponent `from + i`.
#[derive(Clone, Debug)]
pub struct JetCondition {
    pub place: Place,
    pub from: i64,
    pub coeffs: Vec<FieldElem>,
}

/// Flattens a residue-field element to prime-field coordinates.
fn flatten(c: &FieldElem, prime: &Arc<FieldSpec>) -> Vec<FieldElem> {
    c.coeffs()
        .iter()
        .map(|&d| FieldElem::from_prime(prime, d))
        .collect()
}

/// Finds an element of span(basis) whose expansions match every jet
/// condition; `None` when the linear system is inconsistent.
///
/// Unknowns are prime-field coordinates of base-field coefficients, so the
/// same solver covers GF(2) and odd characteristic alike.
pub fn solve_jets(
    curve: &Arc<CurveModel>,
    basis: &[FuncElem],
    conds: &[JetCondition],
) -> Option<FuncElem> {
    let base = curve.base();
    let p = base.characteristic();
    let prime = FieldSpec::prime_field(p).expect("prime field");
    let m = base.extension_degree();
    let scalars: Vec<FieldElem> = (0..m as u64)
        .map(|j| {
            let mut coeffs = vec![0u64; m];
            coeffs[j as usize] = 1;
            FieldElem::from_coeffs(base, coeffs)
        })
        .collect();

    // rows: for each condition, len * deg(kappa) * m_prime coordinates
    let mut rows = 0usize;
    for cond in conds {
        rows += cond.coeffs.len() * cond.place.residue_field().extension_degree();
    }
    let cols = basis.len() * m;
    let mut a = Matrix::zero(&prime, rows, cols);
    let mut b = vec![FieldElem::zero(&prime); rows];

    let mut row0 = 0usize;
    for cond in conds {
        let kappa_deg = cond.place.residue_field().extension_degree();
        let emb = cond.place.embedding();
        let want_prec = cond.from + cond.coeffs.len() as i64;
        // rhs
        for (i, target) in cond.coeffs.iter().enumerate() {
            for (l, v) in flatten(target, &prime).into_iter().enumerate() {
                b[row0 + i * kappa_deg + l] = v;
            }
        }
        // columns
        for (bi, e) in basis.iter().enumerate() {
            let series = cond
                .place
                .expand(e, want_prec)
                .expect("basis expansion within precision cap");
            for (sj, scalar) in scalars.iter().enumerate() {
                let col = bi * m + sj;
                let scal = emb.apply(scalar);
                for i in 0..cond.coeffs.len() {
                    let c = series
                        .coeff(cond.from + i as i64)
                        .expect("certified window")
                        .mul(&scal);
                    for (l, v) in flatten(&c, &prime).into_iter().enumerate() {
                        a.set(row0 + i * kappa_deg + l, col, v);
                    }
                }
            }
        }
        row0 += cond.coeffs.len() * kappa_deg;
    }

    let sol = linalg::solve(&a, &b)?;
    let mut out = FuncElem::zero(curve);
    for (bi, e) in basis.iter().enumerate() {
        let mut coeff = FieldElem::zero(base);
        for (sj, scalar) in scalars.iter().enumerate() {
            let c = &sol[bi * m + sj];
            if !c.is_zero() {
                coeff = coeff.add(&scalar.mul(&FieldElem::from_prime(base, c.coeffs()[0])));
            }
        }
        if !coeff.is_zero() {
            out = out.add(&e.mul(&FuncElem::constant(curve, coeff)));
        }
    }
    Some(out)
}

/// Basis of L(D) for an arbitrary divisor: clear the finite poles of D with
/// a product of minimal polynomials, then impose jet-vanishing conditions
/// for the overshoot at conjugate places.
pub fn basis_of_space(curve: &Arc<CurveModel>, d: &Divisor) -> Vec<FuncElem> {
    let inf = curve.infinity();
    let n_inf = d.coeff(&inf);

    // sigma = product of pi_P^{n_P} over finite support
    let mut sigma = FuncElem::one(curve);
    for (place, n) in d.iter() {
        if place.is_infinity() {
            continue;
        }
        let pi = &place.finite().expect("finite place").minpoly;
        let pi_f = FuncElem::from_poly(curve, pi.clone());
        sigma = sigma.mul(&pi_f.pow(n));
    }

    let v_inf_sigma = inf.valuation(&sigma).unwrap_or(0);
    let n_cap = n_inf - v_inf_sigma;
    if n_cap < 0 {
        return Vec::new();
    }
    let ambient = curve.riemann_roch_basis(n_cap);

    // vanishing conditions: v_P(g) >= v_P(sigma) - n_P at every finite place
    // over the support polynomials (conjugate places included)
    let mut cond_places: Vec<Place> = Vec::new();
    for (place, _) in d.iter() {
        if place.is_infinity() {
            continue;
        }
        let pi = &place.finite().expect("finite").minpoly;
        cond_places.extend(curve.places_over(pi));
    }
    cond_places.sort();
    cond_places.dedup();

    let mut conds = Vec::new();
    for place in cond_places {
        let need = place.valuation(&sigma).unwrap_or(0) - d.coeff(&place);
        if need > 0 {
            conds.push(JetCondition {
                place,
                from: 0,
                coeffs: vec![FieldElem::zero(&curve.base()); 0],
            });
            // replaced below: vanish to order `need`
            let last = conds.last_mut().unwrap();
            last.coeffs = vec![FieldElem::zero(&last.place.residue_field()); need as usize];
        }
    }

    if conds.is_empty() {
        return ambient
            .into_iter()
            .map(|e| e.div(&sigma))
            .collect();
    }

    // nullspace of the jet system, mapped back through sigma
    let base = curve.base();
    let p = base.characteristic();
    let prime = FieldSpec::prime_field(p).expect("prime field");
    let m = base.extension_degree();
    let scalars: Vec<FieldElem> = (0..m as u64)
        .map(|j| {
            let mut coeffs = vec![0u64; m];
            coeffs[j as usize] = 1;
            FieldElem::from_coeffs(base, coeffs)
        })
        .collect();
    let mut rows = 0usize;
    for cond in &conds {
        rows += cond.coeffs.len() * cond.place.residue_field().extension_degree();
    }
    let cols = ambient.len() * m;
    let mut a = Matrix::zero(&prime, rows, cols);
    let mut row0 = 0usize;
    for cond in &conds {
        let kappa_deg = cond.place.residue_field().extension_degree();
        let emb = cond.place.embedding();
        let want_prec = cond.from + cond.coeffs.len() as i64;
        for (bi, e) in ambient.iter().enumerate() {
            let series = cond
                .place
                .expand(e, want_prec)
                .expect("basis expansion within precision cap");
            for (sj, scalar) in scalars.iter().enumerate() {
                let col = bi * m + sj;
                let scal = emb.apply(scalar);
                for i in 0..cond.coeffs.len() {
                    let c = series
                        .coeff(cond.from + i as i64)
                        .expect("certified window")
                        .mul(&scal);
                    for (l, v) in flatten(&c, &prime).into_iter().enumerate() {
                        a.set(row0 + i * kappa_deg + l, col, v);
                    }
                }
            }
        }
        row0 += cond.coeffs.len() * kappa_deg;
    }

    let null = linalg::nullspace(&a);
    let mut out = Vec::new();
    for vec in null {
        let mut g = FuncElem::zero(curve);
        for (bi, e) in ambient.iter().enumerate() {
            let mut coeff = FieldElem::zero(base);
            for (sj, scalar) in scalars.iter().enumerate() {
                let c = &vec[bi * m + sj];
                if !c.is_zero() {
                    coeff = coeff.add(&scalar.mul(&FieldElem::from_prime(base, c.coeffs()[0])));
                }
            }
            if !coeff.is_zero() {
                g = g.add(&e.mul(&FuncElem::constant(curve, coeff)));
            }
        }
        if !g.is_zero() {
            out.push(g.div(&sigma));
        }
    }
    out
}

/// Expresses f as a base-field combination of the given elements, verified
/// exactly; `None` when f is not in the span.
pub fn express_in_basis(
    curve: &Arc<CurveModel>,
    f: &FuncElem,
    basis: &[FuncElem],
) -> Option<Vec<FieldElem>> {
    if basis.is_empty() {
        return if f.is_zero() { Some(Vec::new()) } else { None };
    }
    let inf = curve.infinity();
    let mut max_pole = 0i64;
    for e in basis.iter().chain(std::iter::once(f)) {
        if let Some(v) = inf.valuation(e) {
            max_pole = max_pole.max(-v);
        }
        // finite pole degrees bound the needed window as well
        let d = curve.divisor_of(e);
        max_pole = max_pole.max(d.poles().degree());
    }
    let mut window = max_pole + curve.genus() + 2;
    loop {
        let base = curve.base();
        let p = base.characteristic();
        let prime = FieldSpec::prime_field(p).expect("prime field");
        let m = base.extension_degree();
        let scalars: Vec<FieldElem> = (0..m as u64)
            .map(|j| {
                let mut coeffs = vec![0u64; m];
                coeffs[j as usize] = 1;
                FieldElem::from_coeffs(base, coeffs)
            })
            .collect();
        let from = -max_pole;
        let len = (window + max_pole) as usize;
        let rows = len * m;
        let cols = basis.len() * m;
        let mut a = Matrix::zero(&prime, rows, cols);
        let mut b = vec![FieldElem::zero(&prime); rows];
        let f_series = inf.expand(f, from + len as i64).ok()?;
        for i in 0..len {
            let c = f_series.coeff(from + i as i64).expect("window");
            for (l, v) in flatten(&c, &prime).into_iter().enumerate() {
                b[i * m + l] = v;
            }
        }
        for (bi, e) in basis.iter().enumerate() {
            let series = inf.expand(e, from + len as i64).ok()?;
            for (sj, scalar) in scalars.iter().enumerate() {
                let col = bi * m + sj;
                for i in 0..len {
                    let c = series.coeff(from + i as i64).expect("window").mul(scalar);
                    for (l, v) in flatten(&c, &prime).into_iter().enumerate() {
                        a.set(i * m + l, col, v);
                    }
                }
            }
        }
        let sol = linalg::solve(&a, &b)?;
        let mut coeffs_out = Vec::with_capacity(basis.len());
        let mut rebuilt = FuncElem::zero(curve);
        for (bi, e) in basis.iter().enumerate() {
            let mut coeff = FieldElem::zero(base);
            for (sj, scalar) in scalars.iter().enumerate() {
                let c = &sol[bi * m + sj];
                if !c.is_zero() {
                    coeff = coeff.add(&scalar.mul(&FieldElem::from_prime(base, c.coeffs()[0])));
                }
            }
            rebuilt = rebuilt.add(&e.mul(&FuncElem::constant(curve, coeff.clone())));
            coeffs_out.push(coeff);
        }
        if rebuilt == *f {
            return Some(coeffs_out);
        }
        window *= 2;
        if window > 1 << 12 {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::with_default_modulus(2, 1, "w").unwrap()
    }

    #[test]
    fn rr_dimensions_spec_examples() {
        let base = f2();
        let p1 = CurveModel::p1(&base);
        assert_eq!(p1.riemann_roch_basis(3).len(), 4);
        let es = CurveModel::elliptic_supersingular(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        assert_eq!(es.riemann_roch_basis(0).len(), 1);
        assert_eq!(es.riemann_roch_basis(1).len(), 1);
        assert_eq!(es.riemann_roch_basis(2).len(), 2); // 1, x
        assert_eq!(es.riemann_roch_basis(3).len(), 3); // 1, x, y
        assert_eq!(es.riemann_roch_basis(7).len(), 7);
        // every basis element lies in L(n*infinity)
        let inf = es.infinity();
        for e in es.riemann_roch_basis(7) {
            assert!(inf.valuation(&e).unwrap() >= -7);
        }
    }

    #[test]
    fn jet_solving_prescribes_expansions() {
        let base = f2();
        let p1 = CurveModel::p1(&base);
        let basis = p1.riemann_roch_basis(3);
        let place = &p1.places_of_degree(1)[1]; // (x)
        // ask for f = 1 + t + t^3 pattern at (x)
        let kappa = place.residue_field();
        let cond = JetCondition {
            place: place.clone(),
            from: 0,
            coeffs: vec![
                FieldElem::one(&kappa),
                FieldElem::one(&kappa),
                FieldElem::zero(&kappa),
                FieldElem::one(&kappa),
            ],
        };
        let f = solve_jets(&p1, &basis, &[cond.clone()]).unwrap();
        let s = place.expand(&f, 4).unwrap();
        assert!(s.coeff(0).unwrap().is_one());
        assert!(s.coeff(1).unwrap().is_one());
        assert!(s.coeff(2).unwrap().is_zero());
        assert!(s.coeff(3).unwrap().is_one());
    }

    #[test]
    fn general_space_dimension() {
        let base = f2();
        let eo = CurveModel::elliptic_ordinary(FieldElem::zero(&base), FieldElem::one(&base))
            .unwrap();
        // D = Q + infinity on the ordinary curve: dim = deg = 2
        let places = eo.places_of_degree(1);
        let q = places[1].clone();
        assert_eq!(q.ram_over_x(), 2);
        let mut d = Divisor::single(&eo.infinity(), 1);
        d.add_place(&q, 1);
        let basis = basis_of_space(&eo, &d);
        assert_eq!(basis.len(), 2);
        for g in &basis {
            for (place, n) in eo.divisor_of(g).iter() {
                assert!(n + d.coeff(place) >= 0, "pole beyond D at {place}");
            }
        }
    }

    #[test]
    fn express_in_basis_roundtrip() {
        let base = f2();
        let p1 = CurveModel::p1(&base);
        let basis = p1.riemann_roch_basis(4);
        let f = basis[0].add(&basis[3]);
        let coeffs = express_in_basis(&p1, &f, &basis).unwrap();
        assert!(coeffs[0].is_one());
        assert!(coeffs[3].is_one());
        assert!(coeffs[1].is_zero());
        // something outside the span
        let g = FuncElem::from_poly(
            &p1,
            Poly::monomial(FieldElem::one(&base), 6),
        );
        assert!(express_in_basis(&p1, &g, &basis).is_none());
    }
}
