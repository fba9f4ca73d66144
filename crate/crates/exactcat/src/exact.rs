//! The exact structure: admissible monos and epis, kernel-cokernel pairs
//! that carry their own verification, pushouts and pullbacks along
//! admissible maps, image factorizations, splittings and the injectivity
//! toolkit.
//!
//! Nothing in this module trusts its inputs. Every constructor re-derives
//! the identities it claims from matrix arithmetic and fails loudly when a
//! diagram does not commute.

use crate::category::{
    add, biproduct, compose, equal, identity, sub, zero_morphism, BiproductWitness, Morphism,
    Object,
};
use crate::error::{Error, Result};
use crate::models::SampleRng;

pub fn is_admissible_mono(f: &Morphism) -> bool {
    f.model().is_admissible_mono(f)
}

pub fn is_admissible_epi(f: &Morphism) -> bool {
    f.model().is_admissible_epi(f)
}

/// A short exact sequence left -> middle -> right in the admissible
/// structure of its model. Construction verifies admissibility of both ends
/// and that each end is exactly the kernel respectively cokernel of the
/// other, via explicit comparison isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCokernelPair {
    mono: Morphism,
    epi: Morphism,
}

impl KernelCokernelPair {
    pub fn new(mono: Morphism, epi: Morphism) -> Result<Self> {
        if mono.codomain() != epi.domain() {
            return Err(Error::DomainMismatch(format!(
                "mono lands in {} but epi starts at {}",
                mono.codomain().describe(),
                epi.domain().describe()
            )));
        }
        if !is_admissible_mono(&mono) {
            return Err(Error::NotAdmissibleMono(format!(
                "{} -> {} is not an admissible mono",
                mono.domain().describe(),
                mono.codomain().describe()
            )));
        }
        if !is_admissible_epi(&epi) {
            return Err(Error::NotAdmissibleEpi(format!(
                "{} -> {} is not an admissible epi",
                epi.domain().describe(),
                epi.codomain().describe()
            )));
        }
        verify_kernel_cokernel(&mono, &epi)?;
        Ok(KernelCokernelPair { mono, epi })
    }

    /// Completes an admissible mono by its cokernel.
    pub fn from_mono(mono: Morphism) -> Result<Self> {
        if !is_admissible_mono(&mono) {
            return Err(Error::NotAdmissibleMono(format!(
                "{} -> {} is not an admissible mono",
                mono.domain().describe(),
                mono.codomain().describe()
            )));
        }
        let (_, epi) = mono.model().cokernel_of(&mono);
        KernelCokernelPair::new(mono, epi)
    }

    /// Completes an admissible epi by its kernel.
    pub fn from_epi(epi: Morphism) -> Result<Self> {
        if !is_admissible_epi(&epi) {
            return Err(Error::NotAdmissibleEpi(format!(
                "{} -> {} is not an admissible epi",
                epi.domain().describe(),
                epi.codomain().describe()
            )));
        }
        let (_, mono) = epi.model().kernel_of(&epi);
        KernelCokernelPair::new(mono, epi)
    }

    pub fn mono(&self) -> &Morphism {
        &self.mono
    }

    pub fn epi(&self) -> &Morphism {
        &self.epi
    }

    pub fn left(&self) -> &Object {
        self.mono.domain()
    }

    pub fn middle(&self) -> &Object {
        self.mono.codomain()
    }

    pub fn right(&self) -> &Object {
        self.epi.codomain()
    }
}

/// Exactness check shared with the axiom auditor: the mono must compare
/// invertibly against the kernel of the epi, and the epi against the
/// cokernel of the mono. Admissibility is the caller's concern.
pub(crate) fn verify_kernel_cokernel(mono: &Morphism, epi: &Morphism) -> Result<()> {
    let zero = zero_morphism(mono.domain(), epi.codomain())?;
    if !equal(&compose(epi, mono)?, &zero) {
        return Err(Error::NotAnnihilating(
            "the epi does not annihilate the mono".into(),
        ));
    }
    let model = mono.model();
    let (_, kmono) = model.kernel_of(epi);
    let u = model.factor_left(&kmono, mono).ok_or_else(|| {
        Error::CertificateInvalid("the mono does not factor through the kernel of the epi".into())
    })?;
    let v = model.factor_left(mono, &kmono).ok_or_else(|| {
        Error::CertificateInvalid("the kernel of the epi does not factor through the mono".into())
    })?;
    if !equal(&compose(&u, &v)?, &identity(kmono.domain()))
        || !equal(&compose(&v, &u)?, &identity(mono.domain()))
    {
        return Err(Error::CertificateInvalid(
            "comparison between the mono and the kernel is not invertible".into(),
        ));
    }
    let (_, cepi) = model.cokernel_of(mono);
    let w = model.factor_right(&cepi, epi).ok_or_else(|| {
        Error::CertificateInvalid("the epi does not factor through the cokernel of the mono".into())
    })?;
    let w_inv = model.factor_right(epi, &cepi).ok_or_else(|| {
        Error::CertificateInvalid("the cokernel of the mono does not factor through the epi".into())
    })?;
    if !equal(&compose(&w, &w_inv)?, &identity(epi.codomain()))
        || !equal(&compose(&w_inv, &w)?, &identity(cepi.codomain()))
    {
        return Err(Error::CertificateInvalid(
            "comparison between the epi and the cokernel is not invertible".into(),
        ));
    }
    Ok(())
}

/// Kernel of an admissible epi, as object plus inclusion.
pub fn kernel(f: &Morphism) -> Result<(Object, Morphism)> {
    if !is_admissible_epi(f) {
        return Err(Error::NotAdmissibleEpi(format!(
            "kernel wants an admissible epi, got {} -> {}",
            f.domain().describe(),
            f.codomain().describe()
        )));
    }
    Ok(f.model().kernel_of(f))
}

/// Cokernel of an admissible mono, as object plus projection.
pub fn cokernel(f: &Morphism) -> Result<(Object, Morphism)> {
    if !is_admissible_mono(f) {
        return Err(Error::NotAdmissibleMono(format!(
            "cokernel wants an admissible mono, got {} -> {}",
            f.domain().describe(),
            f.codomain().describe()
        )));
    }
    Ok(f.model().cokernel_of(f))
}

/// For q out of the middle with q mono = 0, the unique t with t epi = q.
pub fn factor_through_cokernel(q: &Morphism, pair: &KernelCokernelPair) -> Result<Morphism> {
    if q.domain() != pair.middle() {
        return Err(Error::DomainMismatch(format!(
            "morphism starts at {} but the pair's middle is {}",
            q.domain().describe(),
            pair.middle().describe()
        )));
    }
    let zero = zero_morphism(pair.left(), q.codomain())?;
    if !equal(&compose(q, pair.mono())?, &zero) {
        return Err(Error::NotAnnihilating(
            "morphism does not annihilate the mono, so it cannot descend".into(),
        ));
    }
    q.model()
        .factor_right(pair.epi(), q)
        .ok_or_else(|| Error::NoSolution("no factorization through the cokernel".into()))
}

/// For q into the middle with epi q = 0, the unique t with mono t = q.
pub fn factor_through_kernel(q: &Morphism, pair: &KernelCokernelPair) -> Result<Morphism> {
    if q.codomain() != pair.middle() {
        return Err(Error::DomainMismatch(format!(
            "morphism lands in {} but the pair's middle is {}",
            q.codomain().describe(),
            pair.middle().describe()
        )));
    }
    let zero = zero_morphism(q.domain(), pair.right())?;
    if !equal(&compose(pair.epi(), q)?, &zero) {
        return Err(Error::NotAnnihilating(
            "the epi does not annihilate the morphism, so it cannot restrict".into(),
        ));
    }
    q.model()
        .factor_left(pair.mono(), q)
        .ok_or_else(|| Error::NoSolution("no factorization through the kernel".into()))
}

/// Pushout of an admissible mono mu along an arbitrary f with the same
/// domain, presented as the cokernel of the difference map into the
/// biproduct. h closes the square under mu's codomain, h_prime under f's.
#[derive(Clone, Debug)]
pub struct PushoutSquare {
    mu: Morphism,
    f: Morphism,
    h: Morphism,
    h_prime: Morphism,
    witness: BiproductWitness,
    pair_d: KernelCokernelPair,
}

pub fn pushout(mu: &Morphism, f: &Morphism) -> Result<PushoutSquare> {
    if mu.domain() != f.domain() {
        return Err(Error::DomainMismatch(format!(
            "pushout legs start at {} and {}",
            mu.domain().describe(),
            f.domain().describe()
        )));
    }
    if !is_admissible_mono(mu) {
        return Err(Error::NotAdmissibleMono(
            "pushout is taken along an admissible mono only".into(),
        ));
    }
    let witness = biproduct(mu.codomain(), f.codomain())?;
    let d = sub(
        &compose(witness.mu(), mu)?,
        &compose(witness.pi_tilde(), f)?,
    )?;
    let pair_d = KernelCokernelPair::from_mono(d)?;
    let h = compose(pair_d.epi(), witness.mu())?;
    let h_prime = compose(pair_d.epi(), witness.pi_tilde())?;
    debug_assert!(equal(&compose(&h, mu)?, &compose(&h_prime, f)?));
    Ok(PushoutSquare {
        mu: mu.clone(),
        f: f.clone(),
        h,
        h_prime,
        witness,
        pair_d,
    })
}

impl PushoutSquare {
    pub fn corner(&self) -> &Object {
        self.pair_d.right()
    }

    pub fn mu(&self) -> &Morphism {
        &self.mu
    }

    pub fn f(&self) -> &Morphism {
        &self.f
    }

    /// The leg under mu's codomain.
    pub fn h(&self) -> &Morphism {
        &self.h
    }

    /// The leg under f's codomain; this is the pushout of mu itself.
    pub fn h_prime(&self) -> &Morphism {
        &self.h_prime
    }

    /// The difference map and its cokernel presentation of the corner.
    pub fn pair(&self) -> &KernelCokernelPair {
        &self.pair_d
    }

    /// Unique mediator to a commuting cone (t under mu's codomain, t_prime
    /// under f's).
    pub fn mediator(&self, t: &Morphism, t_prime: &Morphism) -> Result<Morphism> {
        if t.domain() != self.mu.codomain()
            || t_prime.domain() != self.f.codomain()
            || t.codomain() != t_prime.codomain()
        {
            return Err(Error::DomainMismatch(
                "cone legs do not match the pushout span".into(),
            ));
        }
        if !equal(&compose(t, &self.mu)?, &compose(t_prime, &self.f)?) {
            return Err(Error::NotAnnihilating("the cone does not commute".into()));
        }
        let q = add(
            &compose(t, self.witness.mu_tilde())?,
            &compose(t_prime, self.witness.pi())?,
        )?;
        let u = factor_through_cokernel(&q, &self.pair_d)?;
        debug_assert!(equal(&compose(&u, &self.h)?, t));
        debug_assert!(equal(&compose(&u, &self.h_prime)?, t_prime));
        Ok(u)
    }
}

/// Pullback of an admissible epi pi along an arbitrary f with the same
/// codomain, presented as the kernel of the difference map out of the
/// biproduct. p projects over pi's domain, p_prime over f's.
#[derive(Clone, Debug)]
pub struct PullbackSquare {
    pi: Morphism,
    f: Morphism,
    p: Morphism,
    p_prime: Morphism,
    witness: BiproductWitness,
    pair_d: KernelCokernelPair,
}

pub fn pullback(pi: &Morphism, f: &Morphism) -> Result<PullbackSquare> {
    if pi.codomain() != f.codomain() {
        return Err(Error::DomainMismatch(format!(
            "pullback legs land in {} and {}",
            pi.codomain().describe(),
            f.codomain().describe()
        )));
    }
    if !is_admissible_epi(pi) {
        return Err(Error::NotAdmissibleEpi(
            "pullback is taken along an admissible epi only".into(),
        ));
    }
    let witness = biproduct(pi.domain(), f.domain())?;
    let d = sub(
        &compose(pi, witness.mu_tilde())?,
        &compose(f, witness.pi())?,
    )?;
    let pair_d = KernelCokernelPair::from_epi(d)?;
    let p = compose(witness.mu_tilde(), pair_d.mono())?;
    let p_prime = compose(witness.pi(), pair_d.mono())?;
    debug_assert!(equal(&compose(pi, &p)?, &compose(f, &p_prime)?));
    Ok(PullbackSquare {
        pi: pi.clone(),
        f: f.clone(),
        p,
        p_prime,
        witness,
        pair_d,
    })
}

impl PullbackSquare {
    pub fn corner(&self) -> &Object {
        self.pair_d.left()
    }

    pub fn pi(&self) -> &Morphism {
        &self.pi
    }

    pub fn f(&self) -> &Morphism {
        &self.f
    }

    /// The projection over pi's domain.
    pub fn p(&self) -> &Morphism {
        &self.p
    }

    /// The projection over f's domain; this is the pullback of pi itself.
    pub fn p_prime(&self) -> &Morphism {
        &self.p_prime
    }

    /// The difference map and its kernel presentation of the corner.
    pub fn pair(&self) -> &KernelCokernelPair {
        &self.pair_d
    }

    /// Unique mediator from a commuting cone (t over pi's domain, t_prime
    /// over f's).
    pub fn mediator(&self, t: &Morphism, t_prime: &Morphism) -> Result<Morphism> {
        if t.codomain() != self.pi.domain()
            || t_prime.codomain() != self.f.domain()
            || t.domain() != t_prime.domain()
        {
            return Err(Error::DomainMismatch(
                "cone legs do not match the pullback cospan".into(),
            ));
        }
        if !equal(&compose(&self.pi, t)?, &compose(&self.f, t_prime)?) {
            return Err(Error::NotAnnihilating("the cone does not commute".into()));
        }
        let q = add(
            &compose(self.witness.mu(), t)?,
            &compose(self.witness.pi_tilde(), t_prime)?,
        )?;
        let u = factor_through_kernel(&q, &self.pair_d)?;
        debug_assert!(equal(&compose(&self.p, &u)?, t));
        debug_assert!(equal(&compose(&self.p_prime, &u)?, t_prime));
        Ok(u)
    }
}

/// Admissible epi-mono factorization through the image, verified to
/// recompose exactly. Fails for morphisms whose image inclusion or
/// coimage projection falls outside the admissible classes.
pub fn admissible_factorization(f: &Morphism) -> Result<(Object, Morphism, Morphism)> {
    let (mid, epi, mono) = f.model().image_of(f);
    if !is_admissible_epi(&epi) || !is_admissible_mono(&mono) {
        return Err(Error::NotAdmissibleMorphism(format!(
            "image factorization of {} -> {} leaves the admissible classes",
            f.domain().describe(),
            f.codomain().describe()
        )));
    }
    if !equal(&compose(&mono, &epi)?, f) {
        return Err(Error::CertificateInvalid(
            "image factorization does not recompose to the morphism".into(),
        ));
    }
    Ok((mid, epi, mono))
}

/// Splitting lemma, constructive direction: a retraction r of the pair's
/// mono induces a full biproduct witness on the pair.
pub fn split_from_retraction(pair: &KernelCokernelPair, r: &Morphism) -> Result<BiproductWitness> {
    if r.domain() != pair.middle() || r.codomain() != pair.left() {
        return Err(Error::DomainMismatch(
            "retraction endpoints do not match the pair".into(),
        ));
    }
    if !equal(&compose(r, pair.mono())?, &identity(pair.left())) {
        return Err(Error::NotASection(
            "the mono is not split by the given morphism".into(),
        ));
    }
    let q = sub(&identity(pair.middle()), &compose(pair.mono(), r)?)?;
    let pi_tilde = factor_through_cokernel(&q, pair)?;
    BiproductWitness::new(pair.mono().clone(), pair.epi().clone(), r.clone(), pi_tilde)
}

/// The pair left + a -> middle + a -> right, with the canonical block
/// inclusion and the projection extended by zero on a.
pub fn sum_with_object(pair: &KernelCokernelPair, a: &Object) -> Result<KernelCokernelPair> {
    let w1 = biproduct(pair.left(), a)?;
    let w2 = biproduct(pair.middle(), a)?;
    let phi = add(
        &compose(w2.mu(), &compose(pair.mono(), w1.mu_tilde())?)?,
        &compose(w2.pi_tilde(), w1.pi())?,
    )?;
    let epi = compose(pair.epi(), w2.mu_tilde())?;
    KernelCokernelPair::new(phi, epi)
}

/// Extends f through an admissible mono mu when f's target is injective:
/// some g with g mu = f, verified before it is returned.
pub fn lift(f: &Morphism, mu: &Morphism) -> Result<Morphism> {
    if f.model() != mu.model() {
        return Err(Error::ModelMismatch(
            "lift needs both morphisms in one model".into(),
        ));
    }
    if f.domain() != mu.domain() {
        return Err(Error::DomainMismatch(format!(
            "morphism starts at {} but the mono starts at {}",
            f.domain().describe(),
            mu.domain().describe()
        )));
    }
    if !f.model().is_injective(f.codomain()) {
        return Err(Error::NotInjectiveTarget(format!(
            "{} is not injective",
            f.codomain().describe()
        )));
    }
    if !is_admissible_mono(mu) {
        return Err(Error::NotAdmissibleMono(
            "lift extends along admissible monos only".into(),
        ));
    }
    let g = f
        .model()
        .lift_along_mono(f, mu)
        .ok_or_else(|| Error::NoSolution("no extension along the mono".into()))?;
    if !equal(&compose(&g, mu)?, f) {
        return Err(Error::CertificateInvalid(
            "extension does not restrict back to the morphism".into(),
        ));
    }
    Ok(g)
}

/// A retraction of mu whenever mu's domain is injective; None signals a
/// non-injective domain, not a failure.
pub fn left_inverse_if_injective(mu: &Morphism) -> Result<Option<Morphism>> {
    if !is_admissible_mono(mu) {
        return Err(Error::NotAdmissibleMono(
            "only admissible monos can be split off".into(),
        ));
    }
    if !mu.model().is_injective(mu.domain()) {
        return Ok(None);
    }
    lift(&identity(mu.domain()), mu).map(Some)
}

/// Assembles a retraction of test_mono on a biproduct middle from
/// retraction data of the two summands, then verifies it. This is the
/// computational content of "a biproduct of injectives is injective": when
/// both summands are injective, g_left and g_right exist by lifting the
/// witness projections through test_mono.
pub fn injective_of_summands(
    w: &BiproductWitness,
    test_mono: &Morphism,
    g_left: &Morphism,
    g_right: &Morphism,
) -> Result<Morphism> {
    if test_mono.domain() != w.middle() {
        return Err(Error::DomainMismatch(
            "the test mono must start at the biproduct middle".into(),
        ));
    }
    if !equal(&compose(g_left, test_mono)?, w.mu_tilde()) {
        return Err(Error::BadComponentLift(
            "left component does not restrict to the witness projection".into(),
        ));
    }
    if !equal(&compose(g_right, test_mono)?, w.pi()) {
        return Err(Error::BadComponentLift(
            "right component does not restrict to the witness projection".into(),
        ));
    }
    let g = add(&compose(w.mu(), g_left)?, &compose(w.pi_tilde(), g_right)?)?;
    if !equal(&compose(&g, test_mono)?, &identity(w.middle())) {
        return Err(Error::CertificateInvalid(
            "assembled morphism does not retract the test mono".into(),
        ));
    }
    Ok(g)
}

/// Random verified pair x -> I -> I/x with injective middle.
pub fn random_presentation_pair(rng: &mut SampleRng, x: &Object) -> Result<KernelCokernelPair> {
    let mu = x.model().random_injective_embedding(rng, x)?;
    KernelCokernelPair::from_mono(mu)
}
