//! Model-agnostic additive layer: objects, morphisms, hom-set arithmetic,
//! biproducts and verified isomorphism certificates.
//!
//! Morphisms act on column vectors, so `compose(g, f)` multiplies
//! `matrix(g) * matrix(f)`. Equality of morphisms is syntactic equality of
//! canonically reduced data over equal objects.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::models::cyclicmod::CyclicModObject;
use crate::models::linrep::LinRepObject;
use crate::models::Model;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Payload {
    LinRep(LinRepObject),
    CyclicMod(CyclicModObject),
}

/// An object of a concrete model: the model tag plus a model-owned payload.
/// Two objects are equal iff both parts are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Object {
    model: Model,
    payload: Payload,
}

impl Object {
    pub fn new(model: Model, payload: Payload) -> Result<Object> {
        model.validate_payload(&payload)?;
        Ok(Object { model, payload })
    }

    /// Constructor for payloads produced by the kernel's own algorithms.
    pub(crate) fn raw(model: Model, payload: Payload) -> Object {
        debug_assert!(
            model.validate_payload(&payload).is_ok(),
            "invalid internal payload"
        );
        Object { model, payload }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    /// Total size measure: summed vertex dimensions or summed exponents.
    pub fn size(&self) -> usize {
        match &self.payload {
            Payload::LinRep(o) => o.dims().iter().sum(),
            Payload::CyclicMod(o) => o.exponents().iter().map(|&e| e as usize).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 0
    }

    pub fn describe(&self) -> String {
        match &self.payload {
            Payload::LinRep(o) => format!("{} dims {:?}", self.model.name(), o.dims()),
            Payload::CyclicMod(o) => format!("{} exponents {:?}", self.model.name(), o.exponents()),
        }
    }

    pub(crate) fn linrep(&self) -> &LinRepObject {
        match &self.payload {
            Payload::LinRep(o) => o,
            Payload::CyclicMod(_) => panic!("expected a quiver representation payload"),
        }
    }

    pub(crate) fn cyclic(&self) -> &CyclicModObject {
        match &self.payload {
            Payload::CyclicMod(o) => o,
            Payload::LinRep(_) => panic!("expected a cyclic module payload"),
        }
    }

    /// Canonical direct sum payload: blockwise concatenation. Associative on
    /// the nose, which downstream certificate bookkeeping relies on.
    pub fn direct_sum(&self, other: &Object) -> Result<Object> {
        if self.model != other.model {
            return Err(Error::ModelMismatch(format!(
                "direct sum of {} and {}",
                self.model.name(),
                other.model.name()
            )));
        }
        let payload = match (&self.payload, &other.payload) {
            (Payload::LinRep(a), Payload::LinRep(b)) => {
                let dims = a.dims().iter().zip(b.dims()).map(|(x, y)| x + y).collect();
                let maps = a
                    .maps()
                    .iter()
                    .zip(b.maps())
                    .map(|(x, y)| x.block_diag(y))
                    .collect();
                Payload::LinRep(LinRepObject::new(dims, maps))
            }
            (Payload::CyclicMod(a), Payload::CyclicMod(b)) => {
                let mut exps = a.exponents().to_vec();
                exps.extend_from_slice(b.exponents());
                Payload::CyclicMod(CyclicModObject::new(exps))
            }
            _ => unreachable!("equal models share payload kind"),
        };
        Ok(Object::raw(self.model.clone(), payload))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum MorphData {
    LinRep(Vec<Mat>),
    CyclicMod(Mat),
}

/// An arrow between two objects of one model, carrying exact matrix data in
/// canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Morphism {
    domain: Object,
    codomain: Object,
    data: MorphData,
}

impl Morphism {
    pub fn new(domain: Object, codomain: Object, data: MorphData) -> Result<Morphism> {
        if domain.model != codomain.model {
            return Err(Error::ModelMismatch(format!(
                "morphism from {} to {}",
                domain.model.name(),
                codomain.model.name()
            )));
        }
        let data = domain.model.canonicalize_data(&codomain, data);
        domain.model.validate_morphism(&domain, &codomain, &data)?;
        Ok(Morphism {
            domain,
            codomain,
            data,
        })
    }

    /// Constructor for data produced by the kernel's own algorithms, which
    /// preserve validity; canonical reduction still applies.
    pub(crate) fn raw(domain: Object, codomain: Object, data: MorphData) -> Morphism {
        let data = domain.model.canonicalize_data(&codomain, data);
        debug_assert!(
            domain
                .model
                .validate_morphism(&domain, &codomain, &data)
                .is_ok(),
            "invalid internal morphism data"
        );
        Morphism {
            domain,
            codomain,
            data,
        }
    }

    pub fn domain(&self) -> &Object {
        &self.domain
    }

    pub fn codomain(&self) -> &Object {
        &self.codomain
    }

    pub fn model(&self) -> &Model {
        &self.domain.model
    }

    pub fn data(&self) -> &MorphData {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            MorphData::LinRep(mats) => mats.iter().all(Mat::is_zero),
            MorphData::CyclicMod(m) => m.is_zero(),
        }
    }

    pub(crate) fn mats(&self) -> &[Mat] {
        match &self.data {
            MorphData::LinRep(mats) => mats,
            MorphData::CyclicMod(_) => panic!("expected quiver representation data"),
        }
    }

    pub(crate) fn mat(&self) -> &Mat {
        match &self.data {
            MorphData::CyclicMod(m) => m,
            MorphData::LinRep(_) => panic!("expected cyclic module data"),
        }
    }
}

pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.codomain != g.domain {
        return Err(Error::DomainMismatch(format!(
            "cannot compose: middle objects differ ({} vs {})",
            f.codomain.describe(),
            g.domain.describe()
        )));
    }
    let data = match (&g.data, &f.data) {
        (MorphData::LinRep(gm), MorphData::LinRep(fm)) => {
            MorphData::LinRep(gm.iter().zip(fm).map(|(a, b)| a.mul(b)).collect())
        }
        (MorphData::CyclicMod(a), MorphData::CyclicMod(b)) => MorphData::CyclicMod(a.mul(b)),
        _ => unreachable!("equal models share data kind"),
    };
    Ok(Morphism::raw(f.domain.clone(), g.codomain.clone(), data))
}

pub fn identity(x: &Object) -> Morphism {
    let (p, k) = x.model.mat_params();
    let data = match &x.payload {
        Payload::LinRep(o) => {
            MorphData::LinRep(o.dims().iter().map(|&d| Mat::identity(d, p, k)).collect())
        }
        Payload::CyclicMod(o) => MorphData::CyclicMod(Mat::identity(o.exponents().len(), p, k)),
    };
    Morphism::raw(x.clone(), x.clone(), data)
}

pub fn zero_morphism(x: &Object, y: &Object) -> Result<Morphism> {
    if x.model != y.model {
        return Err(Error::ModelMismatch("zero morphism across models".into()));
    }
    let (p, k) = x.model.mat_params();
    let data = match (&x.payload, &y.payload) {
        (Payload::LinRep(a), Payload::LinRep(b)) => MorphData::LinRep(
            a.dims()
                .iter()
                .zip(b.dims())
                .map(|(&dx, &dy)| Mat::zeros(dy, dx, p, k))
                .collect(),
        ),
        (Payload::CyclicMod(a), Payload::CyclicMod(b)) => {
            MorphData::CyclicMod(Mat::zeros(b.exponents().len(), a.exponents().len(), p, k))
        }
        _ => unreachable!(),
    };
    Ok(Morphism::raw(x.clone(), y.clone(), data))
}

fn check_parallel(f: &Morphism, g: &Morphism, op: &str) -> Result<()> {
    if f.domain != g.domain || f.codomain != g.codomain {
        return Err(Error::ShapeMismatch(format!(
            "{op} needs parallel morphisms ({} -> {} vs {} -> {})",
            f.domain.describe(),
            f.codomain.describe(),
            g.domain.describe(),
            g.codomain.describe()
        )));
    }
    Ok(())
}

pub fn add(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    check_parallel(f, g, "add")?;
    let data = match (&f.data, &g.data) {
        (MorphData::LinRep(a), MorphData::LinRep(b)) => {
            MorphData::LinRep(a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
        }
        (MorphData::CyclicMod(a), MorphData::CyclicMod(b)) => MorphData::CyclicMod(a.add(b)),
        _ => unreachable!(),
    };
    Ok(Morphism::raw(f.domain.clone(), f.codomain.clone(), data))
}

pub fn negate(f: &Morphism) -> Morphism {
    let data = match &f.data {
        MorphData::LinRep(a) => MorphData::LinRep(a.iter().map(Mat::neg).collect()),
        MorphData::CyclicMod(a) => MorphData::CyclicMod(a.neg()),
    };
    Morphism::raw(f.domain.clone(), f.codomain.clone(), data)
}

pub fn sub(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    add(f, &negate(g))
}

pub fn equal(f: &Morphism, g: &Morphism) -> bool {
    f == g
}

/// Five structural morphisms exhibiting `middle` as a biproduct of `left`
/// and `right`; every constructor path verifies all five identities.
#[derive(Clone, Debug)]
pub struct BiproductWitness {
    left: Object,
    middle: Object,
    right: Object,
    mu: Morphism,
    pi: Morphism,
    mu_tilde: Morphism,
    pi_tilde: Morphism,
}

impl BiproductWitness {
    pub fn new(mu: Morphism, pi: Morphism, mu_tilde: Morphism, pi_tilde: Morphism) -> Result<Self> {
        let left = mu.domain().clone();
        let middle = mu.codomain().clone();
        let right = pi.codomain().clone();
        let bad = |what: &str| Error::CertificateInvalid(format!("biproduct witness: {what}"));
        if pi.domain() != &middle || mu_tilde.domain() != &middle || mu_tilde.codomain() != &left {
            return Err(bad("arrows do not share the middle object"));
        }
        if pi_tilde.domain() != &right || pi_tilde.codomain() != &middle {
            return Err(bad("section shapes are wrong"));
        }
        if compose(&mu_tilde, &mu)? != identity(&left) {
            return Err(bad("mu_tilde . mu is not the identity"));
        }
        if compose(&pi, &pi_tilde)? != identity(&right) {
            return Err(bad("pi . pi_tilde is not the identity"));
        }
        let recomposed = add(&compose(&mu, &mu_tilde)?, &compose(&pi_tilde, &pi)?)?;
        if recomposed != identity(&middle) {
            return Err(bad("mu.mu_tilde + pi_tilde.pi is not the identity"));
        }
        if !compose(&pi, &mu)?.is_zero() {
            return Err(bad("pi . mu is not zero"));
        }
        if !compose(&mu_tilde, &pi_tilde)?.is_zero() {
            return Err(bad("mu_tilde . pi_tilde is not zero"));
        }
        Ok(BiproductWitness {
            left,
            middle,
            right,
            mu,
            pi,
            mu_tilde,
            pi_tilde,
        })
    }

    pub fn left(&self) -> &Object {
        &self.left
    }

    pub fn middle(&self) -> &Object {
        &self.middle
    }

    pub fn right(&self) -> &Object {
        &self.right
    }

    pub fn mu(&self) -> &Morphism {
        &self.mu
    }

    pub fn pi(&self) -> &Morphism {
        &self.pi
    }

    pub fn mu_tilde(&self) -> &Morphism {
        &self.mu_tilde
    }

    pub fn pi_tilde(&self) -> &Morphism {
        &self.pi_tilde
    }
}

/// Canonical biproduct witness on the blockwise direct sum.
pub fn biproduct(e: &Object, g: &Object) -> Result<BiproductWitness> {
    if e.model != g.model {
        return Err(Error::ModelMismatch("biproduct across models".into()));
    }
    let middle = e.direct_sum(g)?;
    let (p, k) = e.model.mat_params();
    let blocks = |a: usize, b: usize| {
        let inc1 = Mat::identity(a, p, k).vstack(&Mat::zeros(b, a, p, k));
        let proj2 = Mat::zeros(b, a, p, k).hstack(&Mat::identity(b, p, k));
        let proj1 = Mat::identity(a, p, k).hstack(&Mat::zeros(a, b, p, k));
        let inc2 = Mat::zeros(a, b, p, k).vstack(&Mat::identity(b, p, k));
        (inc1, proj2, proj1, inc2)
    };
    let (mu_d, pi_d, mu_tilde_d, pi_tilde_d) = match (&e.payload, &g.payload) {
        (Payload::LinRep(a), Payload::LinRep(b)) => {
            let mut mu = Vec::new();
            let mut pi = Vec::new();
            let mut mu_t = Vec::new();
            let mut pi_t = Vec::new();
            for (&da, &db) in a.dims().iter().zip(b.dims()) {
                let (m, q, mt, qt) = blocks(da, db);
                mu.push(m);
                pi.push(q);
                mu_t.push(mt);
                pi_t.push(qt);
            }
            (
                MorphData::LinRep(mu),
                MorphData::LinRep(pi),
                MorphData::LinRep(mu_t),
                MorphData::LinRep(pi_t),
            )
        }
        (Payload::CyclicMod(a), Payload::CyclicMod(b)) => {
            let (m, q, mt, qt) = blocks(a.exponents().len(), b.exponents().len());
            (
                MorphData::CyclicMod(m),
                MorphData::CyclicMod(q),
                MorphData::CyclicMod(mt),
                MorphData::CyclicMod(qt),
            )
        }
        _ => unreachable!(),
    };
    BiproductWitness::new(
        Morphism::raw(e.clone(), middle.clone(), mu_d),
        Morphism::raw(middle.clone(), g.clone(), pi_d),
        Morphism::raw(middle.clone(), e.clone(), mu_tilde_d),
        Morphism::raw(g.clone(), middle, pi_tilde_d),
    )
}

/// Blockwise sum of two morphisms between the canonical direct sums.
pub fn direct_sum_morphism(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let domain = f.domain().direct_sum(g.domain())?;
    let codomain = f.codomain().direct_sum(g.codomain())?;
    let data = match (&f.data, &g.data) {
        (MorphData::LinRep(a), MorphData::LinRep(b)) => {
            MorphData::LinRep(a.iter().zip(b).map(|(x, y)| x.block_diag(y)).collect())
        }
        (MorphData::CyclicMod(a), MorphData::CyclicMod(b)) => MorphData::CyclicMod(a.block_diag(b)),
        _ => unreachable!(),
    };
    Ok(Morphism::raw(domain, codomain, data))
}

/// Forward and backward morphisms whose two composites are verified to be
/// identities; checkable later without trusting the constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    forward: Morphism,
    backward: Morphism,
}

impl IsoCertificate {
    pub fn new(forward: Morphism, backward: Morphism) -> Result<Self> {
        if backward.domain() != forward.codomain() || backward.codomain() != forward.domain() {
            return Err(Error::CertificateInvalid(
                "forward and backward endpoints do not match".into(),
            ));
        }
        if compose(&backward, &forward)? != identity(forward.domain()) {
            return Err(Error::CertificateInvalid(
                "backward . forward is not the identity".into(),
            ));
        }
        if compose(&forward, &backward)? != identity(forward.codomain()) {
            return Err(Error::CertificateInvalid(
                "forward . backward is not the identity".into(),
            ));
        }
        Ok(IsoCertificate { forward, backward })
    }

    pub fn identity_certificate(x: &Object) -> IsoCertificate {
        IsoCertificate {
            forward: identity(x),
            backward: identity(x),
        }
    }

    pub fn forward(&self) -> &Morphism {
        &self.forward
    }

    pub fn backward(&self) -> &Morphism {
        &self.backward
    }

    pub fn inverse(&self) -> IsoCertificate {
        IsoCertificate {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// Certificate for `then.forward . self.forward`.
    pub fn and_then(&self, then: &IsoCertificate) -> Result<IsoCertificate> {
        IsoCertificate::new(
            compose(&then.forward, &self.forward)?,
            compose(&self.backward, &then.backward)?,
        )
    }
}

/// Independent re-check of a claimed inverse pair using only composition and
/// canonical equality. Any shape problem counts as failure.
pub fn verify_iso_pair(forward: &Morphism, backward: &Morphism) -> bool {
    if backward.domain() != forward.codomain() || backward.codomain() != forward.domain() {
        return false;
    }
    let Ok(bf) = compose(backward, forward) else {
        return false;
    };
    let Ok(fb) = compose(forward, backward) else {
        return false;
    };
    bf == identity(forward.domain()) && fb == identity(forward.codomain())
}

/// The coordinate-swap isomorphism between the two concatenation orders of a
/// direct sum.
pub fn swap_iso(a: &Object, b: &Object) -> Result<IsoCertificate> {
    let ab = a.direct_sum(b)?;
    let ba = b.direct_sum(a)?;
    let (p, k) = a.model.mat_params();
    let swap = |da: usize, db: usize| {
        // sends (x_a, x_b) to (x_b, x_a)
        let top = Mat::zeros(db, da, p, k).hstack(&Mat::identity(db, p, k));
        let bottom = Mat::identity(da, p, k).hstack(&Mat::zeros(da, db, p, k));
        top.vstack(&bottom)
    };
    let (fwd, bwd) = match (&a.payload, &b.payload) {
        (Payload::LinRep(x), Payload::LinRep(y)) => {
            let f: Vec<Mat> = x
                .dims()
                .iter()
                .zip(y.dims())
                .map(|(&da, &db)| swap(da, db))
                .collect();
            let g: Vec<Mat> = x
                .dims()
                .iter()
                .zip(y.dims())
                .map(|(&da, &db)| swap(db, da))
                .collect();
            (MorphData::LinRep(f), MorphData::LinRep(g))
        }
        (Payload::CyclicMod(x), Payload::CyclicMod(y)) => {
            let (da, db) = (x.exponents().len(), y.exponents().len());
            (
                MorphData::CyclicMod(swap(da, db)),
                MorphData::CyclicMod(swap(db, da)),
            )
        }
        _ => unreachable!(),
    };
    IsoCertificate::new(
        Morphism::raw(ab.clone(), ba.clone(), fwd),
        Morphism::raw(ba, ab, bwd),
    )
}

/// Exact two-sided inverse, when one exists, as a verified certificate.
pub fn is_isomorphism(f: &Morphism) -> Option<IsoCertificate> {
    match &f.data {
        MorphData::LinRep(mats) => {
            let mut inv = Vec::with_capacity(mats.len());
            for m in mats {
                inv.push(m.inverse()?);
            }
            let backward =
                Morphism::raw(f.codomain.clone(), f.domain.clone(), MorphData::LinRep(inv));
            Some(
                IsoCertificate::new(f.clone(), backward)
                    .expect("per-vertex inverses assemble to an inverse"),
            )
        }
        MorphData::CyclicMod(_) => {
            let id_cod = identity(&f.codomain);
            let g = f.model().factor_left(f, &id_cod)?;
            if compose(&g, f).ok()? != identity(&f.domain) {
                return None;
            }
            Some(IsoCertificate {
                forward: f.clone(),
                backward: g,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Model;

    fn z9() -> Model {
        Model::cyclicmod(3, 2).unwrap()
    }

    fn z4() -> Model {
        Model::cyclicmod(2, 2).unwrap()
    }

    fn cyc(model: &Model, exps: &[u32]) -> Object {
        Object::new(
            model.clone(),
            Payload::CyclicMod(CyclicModObject::new(exps.to_vec())),
        )
        .unwrap()
    }

    fn cmor(x: &Object, y: &Object, rows: &[Vec<u64>]) -> Morphism {
        let (p, k) = x.model().mat_params();
        Morphism::new(
            x.clone(),
            y.clone(),
            MorphData::CyclicMod(Mat::from_rows(p, k, rows)),
        )
        .unwrap()
    }

    #[test]
    fn add_reduces_mod_nine() {
        let m = z9();
        let x = cyc(&m, &[2]);
        let f = cmor(&x, &x, &[vec![4]]);
        let g = cmor(&x, &x, &[vec![5]]);
        assert!(add(&f, &g).unwrap().is_zero());
    }

    #[test]
    fn equality_after_canonical_reduction() {
        let m = z4();
        let x = cyc(&m, &[2]);
        let f = cmor(&x, &x, &[vec![1]]);
        let g = cmor(&x, &x, &[vec![5]]);
        assert!(equal(&f, &g));
    }

    #[test]
    fn row_canonicalization_uses_codomain_exponent() {
        let m = z4();
        let x = cyc(&m, &[2]);
        let y = cyc(&m, &[1]);
        let f = cmor(&x, &y, &[vec![3]]);
        assert_eq!(f.mat().get(0, 0), 1);
    }

    #[test]
    fn identity_and_zero_laws() {
        let m = z4();
        let x = cyc(&m, &[2, 1]);
        let y = cyc(&m, &[2]);
        let f = cmor(&x, &y, &[vec![1, 2]]);
        assert!(equal(&compose(&identity(&y), &f).unwrap(), &f));
        assert!(equal(&compose(&f, &identity(&x)).unwrap(), &f));
        let z = zero_morphism(&y, &x).unwrap();
        assert!(compose(&z, &f).unwrap().is_zero());
        assert!(add(&f, &negate(&f)).unwrap().is_zero());
    }

    #[test]
    fn compose_rejects_broken_chain() {
        let m = z4();
        let x = cyc(&m, &[2]);
        let y = cyc(&m, &[1]);
        let f = cmor(&x, &y, &[vec![1]]);
        assert!(matches!(compose(&f, &f), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn biproduct_concatenates_exponents() {
        let m = z4();
        let e = cyc(&m, &[1]);
        let g = cyc(&m, &[2]);
        let w = biproduct(&e, &g).unwrap();
        assert_eq!(w.middle().cyclic().exponents(), &[1, 2]);
        assert!(equal(
            &compose(w.mu_tilde(), w.mu()).unwrap(),
            &identity(&e)
        ));
    }

    #[test]
    fn biproduct_with_zero_is_the_object_itself() {
        let m = z4();
        let e = cyc(&m, &[2, 1]);
        let zero = cyc(&m, &[]);
        let w = biproduct(&e, &zero).unwrap();
        assert_eq!(w.middle(), &e);
        assert!(equal(w.mu(), &identity(&e)));
    }

    #[test]
    fn divisibility_is_enforced() {
        let m = z4();
        let x = cyc(&m, &[1]);
        let y = cyc(&m, &[2]);
        let r = Morphism::new(
            x.clone(),
            y.clone(),
            MorphData::CyclicMod(Mat::from_rows(2, 2, &[vec![1]])),
        );
        assert!(matches!(r, Err(Error::InvalidMorphism(_))));
        assert!(cmor(&x, &y, &[vec![2]]).mat().get(0, 0) == 2);
    }

    #[test]
    fn zero_divisor_is_not_invertible() {
        let m = z4();
        let x = cyc(&m, &[2]);
        let f = cmor(&x, &x, &[vec![2]]);
        assert!(is_isomorphism(&f).is_none());
        assert!(is_isomorphism(&identity(&x)).is_some());
    }

    #[test]
    fn swap_iso_roundtrips() {
        let m = z4();
        let a = cyc(&m, &[2]);
        let b = cyc(&m, &[1, 1]);
        let s = swap_iso(&a, &b).unwrap();
        assert_eq!(s.forward().domain().cyclic().exponents(), &[2, 1, 1]);
        assert_eq!(s.forward().codomain().cyclic().exponents(), &[1, 1, 2]);
    }
}
