//! Curve models and their function-field presentation.
//!
//! Every supported model is P^1 or a plane elliptic model whose function
//! field is k(x) + k(x)y with a single relation y^2 + h(x) y = c(x):
//!
//! * ordinary, char 2:       y^2 + x y = x^3 + a x^2 + b   (b != 0)
//! * supersingular, char 2:  y^2 + y   = x^3 + a x + b
//! * short Weierstrass:      y^2       = x^3 + a x + b     (char >= 5)
//!
//! The uniform (h, c) presentation drives conjugation, norms, the y^2
//! reduction in products and the derivative dy/dx = (c' - h'y)/(2y + h).

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::{Embedding, FieldElem, FieldSpec};
use crate::poly::Poly;

use super::place::Place;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelKind {
    P1,
    EllipticOrdinary { a: FieldElem, b: FieldElem },
    EllipticSupersingular { a: FieldElem, b: FieldElem },
    EllipticShortW { a: FieldElem, b: FieldElem },
}

pub struct CurveModel {
    base: Arc<FieldSpec>,
    kind: ModelKind,
    caches: Mutex<Caches>,
}

#[derive(Default)]
struct Caches {
    /// degree -> (extension field, embedding of the base field)
    extensions: std::collections::BTreeMap<usize, (Arc<FieldSpec>, Embedding)>,
    /// residue degree -> all places of that degree
    places: std::collections::BTreeMap<usize, Vec<Place>>,
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveModel({:?} over GF({}))", self.kind, self.base.cardinality())
    }
}

impl PartialEq for CurveModel {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.kind == other.kind
    }
}

impl Eq for CurveModel {}

impl CurveModel {
    pub fn p1(base: &Arc<FieldSpec>) -> Arc<CurveModel> {
        Arc::new(CurveModel {
            base: base.clone(),
            kind: ModelKind::P1,
            caches: Mutex::new(Caches::default()),
        })
    }

    /// Ordinary elliptic curve y^2 + xy = x^3 + ax^2 + b over char 2, b != 0.
    pub fn elliptic_ordinary(a: FieldElem, b: FieldElem) -> Result<Arc<CurveModel>> {
        let base = a.spec().clone();
        if base.characteristic() != 2 {
            return Err(Error::CharacteristicMismatch {
                expected: 2,
                found: base.characteristic(),
            });
        }
        if b.is_zero() {
            return Err(Error::Invalid("ordinary model needs b != 0".into()));
        }
        Ok(Arc::new(CurveModel {
            base,
            kind: ModelKind::EllipticOrdinary { a, b },
            caches: Mutex::new(Caches::default()),
        }))
    }

    /// Supersingular elliptic curve y^2 + y = x^3 + ax + b over char 2.
    pub fn elliptic_supersingular(a: FieldElem, b: FieldElem) -> Result<Arc<CurveModel>> {
        let base = a.spec().clone();
        if base.characteristic() != 2 {
            return Err(Error::CharacteristicMismatch {
                expected: 2,
                found: base.characteristic(),
            });
        }
        Ok(Arc::new(CurveModel {
            base,
            kind: ModelKind::EllipticSupersingular { a, b },
        caches: Mutex::new(Caches::default()),
        }))
    }

    /// Short Weierstrass y^2 = x^3 + ax + b, characteristic at least 5 and
    /// nonzero discriminant.
    pub fn elliptic_short_w(a: FieldElem, b: FieldElem) -> Result<Arc<CurveModel>> {
        let base = a.spec().clone();
        if base.characteristic() < 5 {
            return Err(Error::Invalid(
                "short Weierstrass model needs characteristic >= 5".into(),
            ));
        }
        // 4a^3 + 27b^2 != 0
        let four = FieldElem::from_prime(&base, 4);
        let twenty_seven = FieldElem::from_prime(&base, 27);
        let disc = four
            .mul(&a.pow(3))
            .add(&twenty_seven.mul(&b.square()));
        if disc.is_zero() {
            return Err(Error::Invalid("singular short Weierstrass model".into()));
        }
        Ok(Arc::new(CurveModel {
            base,
            kind: ModelKind::EllipticShortW { a, b },
            caches: Mutex::new(Caches::default()),
        }))
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn is_p1(&self) -> bool {
        matches!(self.kind, ModelKind::P1)
    }

    pub fn is_elliptic(&self) -> bool {
        !self.is_p1()
    }

    pub fn genus(&self) -> i64 {
        if self.is_p1() {
            0
        } else {
            1
        }
    }

    /// Coefficient h(x) of y in the curve relation y^2 + h y = c.
    pub fn h_poly(&self) -> Poly {
        match &self.kind {
            ModelKind::P1 => Poly::zero(&self.base),
            ModelKind::EllipticOrdinary { .. } => Poly::x(&self.base),
            ModelKind::EllipticSupersingular { .. } => Poly::one(&self.base),
            ModelKind::EllipticShortW { .. } => Poly::zero(&self.base),
        }
    }

    /// Right-hand cubic c(x) of the curve relation.
    pub fn c_poly(&self) -> Poly {
        let x = Poly::x(&self.base);
        match &self.kind {
            ModelKind::P1 => Poly::zero(&self.base),
            ModelKind::EllipticOrdinary { a, b } => x
                .pow(3)
                .add(&x.pow(2).scale(a))
                .add(&Poly::constant(b.clone())),
            ModelKind::EllipticSupersingular { a, b }
            | ModelKind::EllipticShortW { a, b } => x
                .pow(3)
                .add(&x.scale(a))
                .add(&Poly::constant(b.clone())),
        }
    }

    /// Extension field of relative degree d over the base, with the
    /// canonical embedding. Cached per model.
    pub fn extension(self: &Arc<Self>, d: usize) -> (Arc<FieldSpec>, Embedding) {
        if d == 1 {
            return (self.base.clone(), Embedding::identity(&self.base));
        }
        let mut caches = self.caches.lock().unwrap();
        if let Some(hit) = caches.extensions.get(&d) {
            return hit.clone();
        }
        let ext = FieldSpec::with_default_modulus(
            self.base.characteristic(),
            self.base.extension_degree() * d,
            "t",
        )
        .expect("extension field within machine bounds");
        let emb = crate::poly::make_embedding(&self.base, &ext);
        caches.extensions.insert(d, (ext.clone(), emb.clone()));
        (ext, emb)
    }

    pub(super) fn places_cached(
        self: &Arc<Self>,
        d: usize,
        build: impl FnOnce() -> Vec<Place>,
    ) -> Vec<Place> {
        {
            let caches = self.caches.lock().unwrap();
            if let Some(hit) = caches.places.get(&d) {
                return hit.clone();
            }
        }
        let built = build();
        let mut caches = self.caches.lock().unwrap();
        caches.places.entry(d).or_insert_with(|| built).clone()
    }
}
