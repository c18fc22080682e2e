//! Closed points of a curve model: Galois orbits with one explicit
//! representative over the residue field, a stored uniformizer, and exact
//! valuations.
//!
//! Valuations never touch power series. Finite places split into three
//! shapes over the x-line (split, inert, ramified-over-x) and each shape has
//! an exact norm- or division-based valuation rule; the infinite place uses
//! the norm down to k(x) as well.

use std::fmt;
use std::sync::Arc;

use crate::field::{Embedding, FieldElem, FieldSpec};
use crate::poly::{cmp_poly, monic_irreducibles, Poly};
use crate::ratfunc::RatFunc;

use super::func::FuncElem;
use super::model::{CurveModel, ModelKind};

/// Shape of a finite place relative to the degree-2 cover X -> P^1 (the
/// x-coordinate), or the tautological shape on P^1 itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberKind {
    /// A place of P^1 itself.
    P1Finite,
    /// Two places over the minimal polynomial; `other_y` is the conjugate
    /// representative sharing x0.
    Split { other_y: FieldElem },
    /// One place with residue degree twice the minimal polynomial degree.
    Inert,
    /// One place with ramification index two over the x-line.
    RamifiedOverX,
}

#[derive(Debug)]
pub struct FinitePlace {
    /// Minimal polynomial of the x-coordinate over the base field.
    pub minpoly: Poly,
    /// Residue field GF(q^degree) with the embedding used for evaluation.
    pub residue_field: Arc<FieldSpec>,
    pub embed: Embedding,
    /// Representative point over the residue field.
    pub x0: FieldElem,
    pub y0: Option<FieldElem>,
    /// Residue degree over the base field.
    pub degree: usize,
    pub kind: FiberKind,
    pub uniformizer: FuncElem,
}

#[derive(Debug)]
pub enum PlaceInner {
    Infinity { uniformizer: FuncElem },
    Finite(FinitePlace),
}

/// A closed point; cheap to clone and ordered canonically (infinity first,
/// then by minimal polynomial, then by representative).
#[derive(Clone)]
pub struct Place {
    curve: Arc<CurveModel>,
    inner: Arc<PlaceInner>,
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({})", self)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::place_to_string(self))
    }
}

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_key() == other.cmp_key()
    }
}

impl Eq for Place {}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert!(self.curve == other.curve, "places on different curves");
        match (&*self.inner, &*other.inner) {
            (PlaceInner::Infinity { .. }, PlaceInner::Infinity { .. }) => std::cmp::Ordering::Equal,
            (PlaceInner::Infinity { .. }, _) => std::cmp::Ordering::Less,
            (_, PlaceInner::Infinity { .. }) => std::cmp::Ordering::Greater,
            (PlaceInner::Finite(a), PlaceInner::Finite(b)) => cmp_poly(&a.minpoly, &b.minpoly)
                .then_with(|| {
                    let ia = a.y0.as_ref().map(|y| y.index()).unwrap_or(0);
                    let ib = b.y0.as_ref().map(|y| y.index()).unwrap_or(0);
                    ia.cmp(&ib)
                }),
        }
    }
}

impl std::hash::Hash for Place {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.cmp_key().hash(state)
    }
}

impl Place {
    fn cmp_key(&self) -> (bool, Vec<u64>, u64) {
        match &*self.inner {
            PlaceInner::Infinity { .. } => (false, Vec::new(), 0),
            PlaceInner::Finite(fp) => (
                true,
                fp.minpoly.coeffs().iter().map(|c| c.index()).collect(),
                fp.y0.as_ref().map(|y| y.index()).unwrap_or(0),
            ),
        }
    }

    pub fn curve(&self) -> &Arc<CurveModel> {
        &self.curve
    }

    pub fn inner(&self) -> &PlaceInner {
        &self.inner
    }

    pub fn is_infinity(&self) -> bool {
        matches!(&*self.inner, PlaceInner::Infinity { .. })
    }

    pub fn finite(&self) -> Option<&FinitePlace> {
        match &*self.inner {
            PlaceInner::Finite(fp) => Some(fp),
            PlaceInner::Infinity { .. } => None,
        }
    }

    /// Residue degree over the base field.
    pub fn degree(&self) -> usize {
        match &*self.inner {
            PlaceInner::Infinity { .. } => 1,
            PlaceInner::Finite(fp) => fp.degree,
        }
    }

    pub fn residue_field(&self) -> Arc<FieldSpec> {
        match &*self.inner {
            PlaceInner::Infinity { .. } => self.curve.base().clone(),
            PlaceInner::Finite(fp) => fp.residue_field.clone(),
        }
    }

    pub fn embedding(&self) -> Embedding {
        match &*self.inner {
            PlaceInner::Infinity { .. } => Embedding::identity(self.curve.base()),
            PlaceInner::Finite(fp) => fp.embed.clone(),
        }
    }

    pub fn uniformizer(&self) -> &FuncElem {
        match &*self.inner {
            PlaceInner::Infinity { uniformizer } => uniformizer,
            PlaceInner::Finite(fp) => &fp.uniformizer,
        }
    }

    /// Ramification index of the place over the x-line.
    pub fn ram_over_x(&self) -> i64 {
        match &*self.inner {
            PlaceInner::Infinity { .. } => {
                if self.curve.is_p1() {
                    1
                } else {
                    2
                }
            }
            PlaceInner::Finite(fp) => match fp.kind {
                FiberKind::RamifiedOverX => 2,
                _ => 1,
            },
        }
    }

    /// Exact valuation; `None` for the zero function.
    pub fn valuation(&self, f: &FuncElem) -> Option<i64> {
        debug_assert!(f.curve() == &self.curve);
        if f.is_zero() {
            return None;
        }
        match &*self.inner {
            PlaceInner::Infinity { .. } => {
                if self.curve.is_p1() {
                    f.u().valuation_at_infinity()
                } else {
                    f.norm().valuation_at_infinity()
                }
            }
            PlaceInner::Finite(fp) => {
                if self.curve.is_p1() {
                    return f.u().valuation_at_irreducible(&fp.minpoly);
                }
                let (p, r, s) = f.clear_denominators();
                let vs = poly_multiplicity(&s, &fp.minpoly);
                let vw = self.integral_valuation(fp, &p, &r);
                Some(vw - self.ram_over_x() * vs)
            }
        }
    }

    /// Valuation of p + r y, which is integral at every finite place.
    fn integral_valuation(&self, fp: &FinitePlace, p: &Poly, r: &Poly) -> i64 {
        let w = FuncElem::new(
            &self.curve,
            RatFunc::from_poly(p.clone()),
            RatFunc::from_poly(r.clone()),
        );
        match &fp.kind {
            FiberKind::P1Finite => unreachable!("handled by the P^1 branch"),
            FiberKind::RamifiedOverX => {
                let n = w.norm();
                n.valuation_at_irreducible(&fp.minpoly).expect("nonzero")
            }
            FiberKind::Inert => {
                let n = w.norm();
                let v = n.valuation_at_irreducible(&fp.minpoly).expect("nonzero");
                debug_assert!(v % 2 == 0, "inert norm valuation must be even");
                v / 2
            }
            FiberKind::Split { other_y } => {
                let y0 = fp.y0.as_ref().expect("split place has a representative");
                let mut p = p.clone();
                let mut r = r.clone();
                let mut v = 0i64;
                loop {
                    let at_p = p
                        .eval_embedded(&fp.embed, &fp.x0)
                        .add(&r.eval_embedded(&fp.embed, &fp.x0).mul(y0));
                    if !at_p.is_zero() {
                        return v;
                    }
                    let at_conj = p
                        .eval_embedded(&fp.embed, &fp.x0)
                        .add(&r.eval_embedded(&fp.embed, &fp.x0).mul(other_y));
                    if !at_conj.is_zero() {
                        // vanishes at this place only: all remaining norm
                        // valuation concentrates here
                        let w = FuncElem::new(
                            &self.curve,
                            RatFunc::from_poly(p),
                            RatFunc::from_poly(r),
                        );
                        let n = w.norm();
                        return v
                            + n.valuation_at_irreducible(&fp.minpoly)
                                .expect("nonzero");
                    }
                    // vanishes at both conjugates: both coordinates divide
                    p = p.div_exact(&fp.minpoly);
                    r = r.div_exact(&fp.minpoly);
                    v += 1;
                }
            }
        }
    }
}

fn poly_multiplicity(f: &Poly, pi: &Poly) -> i64 {
    if f.is_zero() {
        return 0;
    }
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

impl CurveModel {
    /// The unique place at infinity.
    pub fn infinity(self: &Arc<Self>) -> Place {
        let uniformizer = match self.kind() {
            ModelKind::P1 => FuncElem::from_ratfunc(self, RatFunc::x(self.base()).inv()),
            ModelKind::EllipticOrdinary { b, .. } => {
                // x/(y + b^(1/2)); also uniformizes the 2-torsion point Q
                let b4 = b.sqrt().expect("char 2 square root");
                let x = FuncElem::x(self);
                let y = FuncElem::y(self);
                x.div(&y.add(&FuncElem::constant(self, b4)))
            }
            ModelKind::EllipticSupersingular { .. } | ModelKind::EllipticShortW { .. } => {
                FuncElem::x(self).div(&FuncElem::y(self))
            }
        };
        Place {
            curve: self.clone(),
            inner: Arc::new(PlaceInner::Infinity { uniformizer }),
        }
    }

    /// The places over a monic irreducible polynomial of the x-line,
    /// sorted canonically.
    pub fn places_over(self: &Arc<Self>, pi: &Poly) -> Vec<Place> {
        assert!(pi.is_monic() && pi.is_irreducible());
        let d = pi.degree().unwrap();
        let (ext, emb) = self.extension(d);
        let pi_ext = Poly::new(
            &ext,
            pi.coeffs().iter().map(|c| emb.apply(c)).collect(),
        );
        let x0 = pi_ext
            .roots()
            .into_iter()
            .next()
            .expect("irreducible polynomial splits in its own degree");

        if self.is_p1() {
            let uniformizer = FuncElem::from_poly(self, pi.clone());
            return vec![Place {
                curve: self.clone(),
                inner: Arc::new(PlaceInner::Finite(FinitePlace {
                    minpoly: pi.clone(),
                    residue_field: ext,
                    embed: emb,
                    x0,
                    y0: None,
                    degree: d,
                    kind: FiberKind::P1Finite,
                    uniformizer,
                })),
            }];
        }

        let h0 = self.h_poly().eval_embedded(&emb, &x0);
        let c0 = self.c_poly().eval_embedded(&emb, &x0);
        let p = self.base().characteristic();

        let mk = |fp: FinitePlace| Place {
            curve: self.clone(),
            inner: Arc::new(PlaceInner::Finite(fp)),
        };

        if p == 2 {
            if h0.is_zero() {
                // ordinary curve over pi = x: the ramified 2-torsion point
                let y0 = c0.sqrt().expect("char 2 square root");
                let y0_base = emb.invert(&y0).expect("degree-1 fiber");
                let unif = FuncElem::y(self).sub(&FuncElem::constant(self, y0_base));
                return vec![mk(FinitePlace {
                    minpoly: pi.clone(),
                    residue_field: ext,
                    embed: emb,
                    x0,
                    y0: Some(y0),
                    degree: d,
                    kind: FiberKind::RamifiedOverX,
                    uniformizer: unif,
                })];
            }
            // substitute y = h0 z: z^2 + z = c0/h0^2
            let w = c0.div(&h0.square());
            if w.trace_residue() == 0 {
                let z = crate::field::artin_schreier_solve(&w)
                    .expect("char 2")
                    .expect("trace zero");
                let ya = h0.mul(&z);
                let yb = ya.add(&h0);
                let (y_small, y_big) = if ya.cmp_lex(&yb).is_le() {
                    (ya, yb)
                } else {
                    (yb, ya)
                };
                let unif = FuncElem::from_poly(self, pi.clone());
                let mut out = vec![
                    mk(FinitePlace {
                        minpoly: pi.clone(),
                        residue_field: ext.clone(),
                        embed: emb.clone(),
                        x0: x0.clone(),
                        y0: Some(y_small.clone()),
                        degree: d,
                        kind: FiberKind::Split {
                            other_y: y_big.clone(),
                        },
                        uniformizer: unif.clone(),
                    }),
                    mk(FinitePlace {
                        minpoly: pi.clone(),
                        residue_field: ext,
                        embed: emb,
                        x0,
                        y0: Some(y_big),
                        degree: d,
                        kind: FiberKind::Split { other_y: y_small },
                        uniformizer: unif,
                    }),
                ];
                out.sort();
                return out;
            }
            // inert: solve over the quadratic extension of the residue field
            let (ext2, _) = self.extension(2 * d);
            let up = crate::poly::make_embedding(&ext, &ext2);
            let emb2 = Embedding::compose(&emb, &up);
            let x0_up = up.apply(&x0);
            let h0_up = up.apply(&h0);
            let w_up = up.apply(&w);
            let z = crate::field::artin_schreier_solve(&w_up)
                .expect("char 2")
                .expect("trace vanishes after a quadratic extension");
            let ya = h0_up.mul(&z);
            let yb = ya.add(&h0_up);
            let y0 = if ya.cmp_lex(&yb).is_le() { ya } else { yb };
            return vec![mk(FinitePlace {
                minpoly: pi.clone(),
                residue_field: ext2,
                embed: emb2,
                x0: x0_up,
                y0: Some(y0),
                degree: 2 * d,
                kind: FiberKind::Inert,
                uniformizer: FuncElem::from_poly(self, pi.clone()),
            })];
        }

        // odd characteristic short Weierstrass: y^2 = c0
        if c0.is_zero() {
            let unif = FuncElem::y(self);
            return vec![mk(FinitePlace {
                minpoly: pi.clone(),
                residue_field: ext.clone(),
                embed: emb,
                x0,
                y0: Some(FieldElem::zero(&ext)),
                degree: d,
                kind: FiberKind::RamifiedOverX,
                uniformizer: unif,
            })];
        }
        if let Some(y0) = c0.sqrt() {
            let y1 = y0.neg();
            let (y_small, y_big) = if y0.cmp_lex(&y1).is_le() {
                (y0, y1)
            } else {
                (y1, y0)
            };
            let unif = FuncElem::from_poly(self, pi.clone());
            let mut out = vec![
                mk(FinitePlace {
                    minpoly: pi.clone(),
                    residue_field: ext.clone(),
                    embed: emb.clone(),
                    x0: x0.clone(),
                    y0: Some(y_small.clone()),
                    degree: d,
                    kind: FiberKind::Split {
                        other_y: y_big.clone(),
                    },
                    uniformizer: unif.clone(),
                }),
                mk(FinitePlace {
                    minpoly: pi.clone(),
                    residue_field: ext,
                    embed: emb,
                    x0,
                    y0: Some(y_big),
                    degree: d,
                    kind: FiberKind::Split { other_y: y_small },
                    uniformizer: unif,
                }),
            ];
            out.sort();
            return out;
        }
        let (ext2, _) = self.extension(2 * d);
        let up = crate::poly::make_embedding(&ext, &ext2);
        let emb2 = Embedding::compose(&emb, &up);
        let x0_up = up.apply(&x0);
        let c0_up = up.apply(&c0);
        let y0 = c0_up
            .sqrt()
            .expect("nonresidue becomes a square in the quadratic extension");
        let y1 = y0.neg();
        let y0 = if y0.cmp_lex(&y1).is_le() { y0 } else { y1 };
        vec![mk(FinitePlace {
            minpoly: pi.clone(),
            residue_field: ext2,
            embed: emb2,
            x0: x0_up,
            y0: Some(y0),
            degree: 2 * d,
            kind: FiberKind::Inert,
            uniformizer: FuncElem::from_poly(self, pi.clone()),
        })]
    }

    /// All places of exact residue degree d, deterministic order with the
    /// infinite place (degree 1) first.
    pub fn places_of_degree(self: &Arc<Self>, d: usize) -> Vec<Place> {
        assert!(d >= 1 && d <= 12, "place degree out of the supported range");
        self.places_cached(d, || {
            let mut out = Vec::new();
            if d == 1 {
                out.push(self.infinity());
            }
            for pi in monic_irreducibles(self.base(), d) {
                for place in self.places_over(&pi) {
                    if place.degree() == d {
                        out.push(place);
                    }
                }
            }
            if self.is_elliptic() && d % 2 == 0 {
                for pi in monic_irreducibles(self.base(), d / 2) {
                    for place in self.places_over(&pi) {
                        if place.degree() == d {
                            out.push(place);
                        }
                    }
                }
            }
            out.sort();
            out
        })
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
    fn p1_places_of_degree() {
        let p1 = CurveModel::p1(&f2());
        let d1 = p1.places_of_degree(1);
        assert_eq!(d1.len(), 3); // infinity, (x), (x+1)
        assert!(d1[0].is_infinity());
        let d2 = p1.places_of_degree(2);
        assert_eq!(d2.len(), 1); // (x^2+x+1)
        assert_eq!(d2[0].degree(), 2);
    }

    #[test]
    fn ordinary_curve_rational_places() {
        let base = f2();
        let eo = CurveModel::elliptic_ordinary(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        let d1 = eo.places_of_degree(1);
        // infinity, Q = (0,1), (1,0), (1,1)
        assert_eq!(d1.len(), 4);
        assert!(d1[0].is_infinity());
        let q = &d1[1];
        let fp = q.finite().unwrap();
        assert_eq!(fp.kind, FiberKind::RamifiedOverX);
        // v_Q(x) = 2 at the ramified 2-torsion point
        let x = FuncElem::x(&eo);
        assert_eq!(q.valuation(&x), Some(2));
        // the stored uniformizer has valuation 1 everywhere
        for place in &d1 {
            assert_eq!(place.valuation(place.uniformizer()), Some(1));
        }
    }

    #[test]
    fn infinite_place_valuations() {
        let base = f2();
        let eo = CurveModel::elliptic_ordinary(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        let es = CurveModel::elliptic_supersingular(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        for curve in [eo, es] {
            let inf = curve.infinity();
            assert_eq!(inf.valuation(&FuncElem::x(&curve)), Some(-2));
            assert_eq!(inf.valuation(&FuncElem::y(&curve)), Some(-3));
            assert_eq!(inf.valuation(inf.uniformizer()), Some(1));
        }
    }

    #[test]
    fn valuation_axioms_sampled() {
        use rand::{Rng, SeedableRng};
        let base = f2();
        let es = CurveModel::elliptic_supersingular(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        let mut places = es.places_of_degree(1);
        places.extend(es.places_of_degree(2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let random_elem = |rng: &mut rand_chacha::ChaCha8Rng| {
            let coeffs = |rng: &mut rand_chacha::ChaCha8Rng| {
                let d = rng.gen_range(0..3usize);
                Poly::new(
                    &base,
                    (0..=d)
                        .map(|_| FieldElem::from_index(&base, rng.gen_range(0..2)))
                        .collect(),
                )
            };
            FuncElem::new(
                &es,
                RatFunc::from_poly(coeffs(rng)),
                RatFunc::from_poly(coeffs(rng)),
            )
        };
        for _ in 0..60 {
            let f = random_elem(&mut rng);
            let g = random_elem(&mut rng);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            for place in &places {
                let vf = place.valuation(&f).unwrap();
                let vg = place.valuation(&g).unwrap();
                assert_eq!(place.valuation(&f.mul(&g)), Some(vf + vg));
                let sum = f.add(&g);
                if !sum.is_zero() {
                    assert!(place.valuation(&sum).unwrap() >= vf.min(vg));
                }
            }
        }
    }

    #[test]
    fn degree_of_principal_divisor_is_zero() {
        // deg div(f) = 0 for a few handmade elements on the ordinary curve:
        // sum of v_P(f) deg(P) over places of degree <= 4 plus infinity.
        let base = f2();
        let eo = CurveModel::elliptic_ordinary(
            FieldElem::zero(&base),
            FieldElem::one(&base),
        )
        .unwrap();
        let x = FuncElem::x(&eo);
        let y = FuncElem::y(&eo);
        for f in [x.clone(), y.clone(), y.add(&x.pow(2)), x.add(&FuncElem::one(&eo))] {
            let mut total = 0i64;
            for d in 1..=4 {
                for place in eo.places_of_degree(d) {
                    if let Some(v) = place.valuation(&f) {
                        total += v * place.degree() as i64;
                    }
                }
            }
            assert_eq!(total, 0, "deg div({f:?})");
        }
    }
}
