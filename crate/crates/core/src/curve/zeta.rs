//! Point counts over small extension fields and the exact value of
//! zeta_X(2)^(-2) from the L-polynomial.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::field::all_elements;

use super::model::{CurveModel, ModelKind};

impl CurveModel {
    /// Number of points of X over the degree-r extension of the base field
    /// (projective: includes the point at infinity on elliptic models).
    pub fn count_points(self: &Arc<Self>, r: usize) -> u64 {
        let (ext, emb) = self.extension(r);
        if self.is_p1() {
            return ext.cardinality() + 1;
        }
        let h = self.h_poly();
        let c = self.c_poly();
        let mut count = 1u64; // infinity
        let odd = self.base().characteristic() != 2;
        let q_ext = ext.cardinality();
        for x0 in all_elements(&ext) {
            let h0 = h.eval_embedded(&emb, &x0);
            let c0 = c.eval_embedded(&emb, &x0);
            if odd {
                // y^2 = c0
                if c0.is_zero() {
                    count += 1;
                } else if c0.pow((q_ext - 1) / 2).is_one() {
                    count += 2;
                }
            } else if h0.is_zero() {
                count += 1; // unique square root
            } else if c0.div(&h0.square()).trace_residue() == 0 {
                count += 2;
            }
        }
        count
    }

    /// zeta_X(2)^(-2), exactly.
    ///
    /// For P^1 the closed form is ((1 - q^-2)(1 - q^-1))^2; for genus one the
    /// L-polynomial 1 - a T + q T^2 comes from the point count over GF(q),
    /// cross-checked against the count over GF(q^2).
    pub fn zeta_inv_sq(self: &Arc<Self>) -> BigRational {
        let q = BigInt::from(self.base().cardinality());
        let one = BigRational::one();
        let qr = BigRational::from(q.clone());
        let euler = (one.clone() - (&one / (&qr * &qr))) * (one.clone() - (&one / &qr));
        if self.is_p1() {
            return &euler * &euler;
        }
        let n1 = self.count_points(1) as i64;
        let a = self.base().cardinality() as i64 + 1 - n1;
        // consistency: #X(GF(q^2)) = q^2 + 1 - (a^2 - 2q)
        let n2 = self.count_points(2) as i64;
        let q_i = self.base().cardinality() as i64;
        debug_assert_eq!(n2, q_i * q_i + 1 - (a * a - 2 * q_i));
        // L(T) = 1 - a T + q T^2 evaluated at T = q^-2
        let t = &one / (&qr * &qr);
        let l_val = one.clone() - BigRational::from(BigInt::from(a)) * &t + &qr * &t * &t;
        let inv = &euler / &l_val;
        &inv * &inv
    }
}

/// Supersingularity / ordinariness bookkeeping for tests.
impl CurveModel {
    pub fn trace_of_frobenius(self: &Arc<Self>) -> i64 {
        assert!(self.is_elliptic());
        self.base().cardinality() as i64 + 1 - self.count_points(1) as i64
    }

    pub fn is_supersingular_model(&self) -> bool {
        matches!(self.kind(), ModelKind::EllipticSupersingular { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldElem, FieldSpec};
    use num_bigint::BigInt;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zeta_p1_spec_examples() {
        let f3 = FieldSpec::with_default_modulus(3, 1, "w").unwrap();
        let p1 = CurveModel::p1(&f3);
        assert_eq!(p1.zeta_inv_sq(), ratio(256, 729));
        let f2 = FieldSpec::with_default_modulus(2, 1, "w").unwrap();
        let p1 = CurveModel::p1(&f2);
        assert_eq!(p1.zeta_inv_sq(), ratio(9, 64));
    }

    #[test]
    fn ordinary_counts_feed_l_polynomial() {
        let f2 = FieldSpec::with_default_modulus(2, 1, "w").unwrap();
        let eo = CurveModel::elliptic_ordinary(FieldElem::zero(&f2), FieldElem::one(&f2))
            .unwrap();
        assert_eq!(eo.count_points(1), 4);
        assert_eq!(eo.count_points(2), 8);
        // a = -1, L(1/4) = 1 + 1/4 + 2/16 = 11/8
        // zeta^-1(2) = (3/4)(1/2)/(11/8) = 3/11; squared 9/121
        assert_eq!(eo.zeta_inv_sq(), ratio(9, 121));
        // point counts match the place enumeration: degree-1 places
        assert_eq!(eo.places_of_degree(1).len(), 4);
    }

    #[test]
    fn place_counts_match_galois_orbits_of_points() {
        // sum over d | r of d * #places(d) = #X(GF(q^r)), checked for r <= 4
        let f2 = FieldSpec::with_default_modulus(2, 1, "w").unwrap();
        let es = CurveModel::elliptic_supersingular(FieldElem::zero(&f2), FieldElem::one(&f2))
            .unwrap();
        let p1 = CurveModel::p1(&f2);
        let f4 = FieldSpec::with_default_modulus(2, 2, "w").unwrap();
        let eo4 = CurveModel::elliptic_ordinary(FieldElem::generator(&f4), FieldElem::one(&f4))
            .unwrap();
        for curve in [es, p1, eo4] {
            for r in 1..=4usize {
                let mut total = 0u64;
                for d in 1..=r {
                    if r % d == 0 {
                        total += d as u64 * curve.places_of_degree(d).len() as u64;
                    }
                }
                assert_eq!(total, curve.count_points(r), "r = {r} on {curve:?}");
            }
        }
    }
}
