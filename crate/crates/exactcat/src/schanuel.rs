//! Comparison of injective presentations: two short exact sequences with a
//! common left object and injective middles have isomorphic mixed sums, and
//! the isomorphism is assembled here as an explicit verified certificate.
//! Iterating the construction along resolutions yields the alternating-sum
//! comparison and, from it, a resolution-independent notion of dimension.

use rand::SeedableRng;

use crate::category::{
    add, biproduct, compose, direct_sum_morphism, swap_iso, verify_iso_pair, zero_morphism,
    IsoCertificate, Morphism, Object,
};
use crate::error::{Error, Result};
use crate::exact::{
    left_inverse_if_injective, pushout, split_from_retraction, sum_with_object, KernelCokernelPair,
    PushoutSquare,
};
use crate::models::{Model, SampleRng};

/// The pushout of two presentation monos with a common source, completed by
/// the two projections it induces on the corner. Both completed sequences
/// are returned as verified pairs: the corner is simultaneously an
/// extension of each middle by the other quotient.
#[derive(Clone, Debug)]
pub struct PushoutCompletion {
    square: PushoutSquare,
    p: Morphism,
    p_prime: Morphism,
    pair_p: KernelCokernelPair,
    pair_p_prime: KernelCokernelPair,
}

pub fn pushout_completion(
    pair1: &KernelCokernelPair,
    pair2: &KernelCokernelPair,
) -> Result<PushoutCompletion> {
    if pair1.left() != pair2.left() {
        return Err(Error::BaseMismatch(format!(
            "presentations start at {} and {}",
            pair1.left().describe(),
            pair2.left().describe()
        )));
    }
    let square = pushout(pair1.mono(), pair2.mono())?;
    let p = square.mediator(pair1.epi(), &zero_morphism(pair2.middle(), pair1.right())?)?;
    let p_prime = square.mediator(&zero_morphism(pair1.middle(), pair2.right())?, pair2.epi())?;
    let pair_p = KernelCokernelPair::new(square.h_prime().clone(), p.clone())?;
    let pair_p_prime = KernelCokernelPair::new(square.h().clone(), p_prime.clone())?;
    Ok(PushoutCompletion {
        square,
        p,
        p_prime,
        pair_p,
        pair_p_prime,
    })
}

impl PushoutCompletion {
    pub fn corner(&self) -> &Object {
        self.square.corner()
    }

    /// The corner leg under the first middle.
    pub fn h(&self) -> &Morphism {
        self.square.h()
    }

    /// The corner leg under the second middle.
    pub fn h_prime(&self) -> &Morphism {
        self.square.h_prime()
    }

    /// Projection onto the first quotient, annihilating h_prime.
    pub fn p(&self) -> &Morphism {
        &self.p
    }

    /// Projection onto the second quotient, annihilating h.
    pub fn p_prime(&self) -> &Morphism {
        &self.p_prime
    }

    /// h_prime -> corner -> right of the first pair.
    pub fn pair_p(&self) -> &KernelCokernelPair {
        &self.pair_p
    }

    /// h -> corner -> right of the second pair.
    pub fn pair_p_prime(&self) -> &KernelCokernelPair {
        &self.pair_p_prime
    }

    pub fn square(&self) -> &PushoutSquare {
        &self.square
    }
}

/// The comparison isomorphism middle1 + right2 = middle2 + right1 for two
/// presentations of the same object with injective middles, as a verified
/// certificate. Both middles being injective makes the corner legs split,
/// and the two splittings are spliced through the corner.
pub fn schanuel_isomorphism(
    pair1: &KernelCokernelPair,
    pair2: &KernelCokernelPair,
) -> Result<IsoCertificate> {
    let model = pair1.middle().model();
    if !model.is_injective(pair1.middle()) {
        return Err(Error::NotInjectiveMiddle(format!(
            "first middle {} is not injective",
            pair1.middle().describe()
        )));
    }
    if !model.is_injective(pair2.middle()) {
        return Err(Error::NotInjectiveMiddle(format!(
            "second middle {} is not injective",
            pair2.middle().describe()
        )));
    }
    let comp = pushout_completion(pair1, pair2)?;
    let s =
        left_inverse_if_injective(comp.h())?.expect("the first middle was checked to be injective");
    let s_prime = left_inverse_if_injective(comp.h_prime())?
        .expect("the second middle was checked to be injective");
    let w1 = split_from_retraction(comp.pair_p_prime(), &s)?;
    let w2 = split_from_retraction(comp.pair_p(), &s_prime)?;

    let b1 = biproduct(pair1.middle(), pair2.right())?;
    let b2 = biproduct(pair2.middle(), pair1.right())?;
    // b1 -> corner: include the middle along h, the quotient along the
    // splitting of p_prime
    let a1 = add(
        &compose(comp.h(), b1.mu_tilde())?,
        &compose(w1.pi_tilde(), b1.pi())?,
    )?;
    let a1_inv = add(
        &compose(b1.mu(), &s)?,
        &compose(b1.pi_tilde(), comp.p_prime())?,
    )?;
    // corner -> b2: retract onto the middle, project onto the quotient
    let a2 = add(
        &compose(b2.mu(), &s_prime)?,
        &compose(b2.pi_tilde(), comp.p())?,
    )?;
    let a2_inv = add(
        &compose(comp.h_prime(), b2.mu_tilde())?,
        &compose(w2.pi_tilde(), b2.pi())?,
    )?;
    IsoCertificate::new(compose(&a2, &a1)?, compose(&a1_inv, &a2_inv)?)
}

/// Comparison across different left objects related by an isomorphism:
/// the second pair is rebased along the iso and compared as usual.
pub fn schanuel_with_base_iso(
    pair1: &KernelCokernelPair,
    pair2: &KernelCokernelPair,
    base: &IsoCertificate,
) -> Result<IsoCertificate> {
    if base.forward().domain() != pair1.left() || base.forward().codomain() != pair2.left() {
        return Err(Error::BaseMismatch(format!(
            "base iso connects {} to {}, pairs start at {} and {}",
            base.forward().domain().describe(),
            base.forward().codomain().describe(),
            pair1.left().describe(),
            pair2.left().describe()
        )));
    }
    if !verify_iso_pair(base.forward(), base.backward()) {
        return Err(Error::BadBaseIso("base certificate does not verify".into()));
    }
    let mono2 = compose(pair2.mono(), base.forward())?;
    let rebased = KernelCokernelPair::new(mono2, pair2.epi().clone())?;
    schanuel_isomorphism(pair1, &rebased)
}

/// Certificate between direct sums, componentwise.
pub fn direct_sum_certificate(c1: &IsoCertificate, c2: &IsoCertificate) -> Result<IsoCertificate> {
    IsoCertificate::new(
        direct_sum_morphism(c1.forward(), c2.forward())?,
        direct_sum_morphism(c1.backward(), c2.backward())?,
    )
}

/// An injective resolution tower: pair m is the verified sequence
/// syzygy(m) -> injective(m) -> syzygy(m+1), with syzygy(0) the base.
#[derive(Clone, Debug)]
pub struct Resolution {
    base: Object,
    base_iso: IsoCertificate,
    pairs: Vec<KernelCokernelPair>,
}

impl Resolution {
    /// Builds a tower of the given depth, choosing each injective
    /// embedding through the closure.
    pub fn build_with(
        e: &Object,
        depth: usize,
        mut embed: impl FnMut(&Object) -> Result<Morphism>,
    ) -> Result<Resolution> {
        let mut pairs = Vec::with_capacity(depth);
        let mut current = e.clone();
        for _ in 0..depth {
            let mu = embed(&current)?;
            if mu.domain() != &current {
                return Err(Error::DomainMismatch(
                    "embedding does not start at the current syzygy".into(),
                ));
            }
            if !mu.model().is_injective(mu.codomain()) {
                return Err(Error::NotInjectiveTarget(
                    "embedding does not land in an injective object".into(),
                ));
            }
            let pair = KernelCokernelPair::from_mono(mu)?;
            current = pair.right().clone();
            pairs.push(pair);
        }
        Ok(Resolution {
            base: e.clone(),
            base_iso: IsoCertificate::identity_certificate(e),
            pairs,
        })
    }

    /// The canonical tower built from the model's deterministic embeddings.
    pub fn canonical(e: &Object, depth: usize) -> Result<Resolution> {
        let model = e.model().clone();
        Resolution::build_with(e, depth, |x| Ok(model.embed_into_injective(x)))
    }

    /// A tower over randomly twisted embeddings.
    pub fn random(e: &Object, depth: usize, rng: &mut SampleRng) -> Result<Resolution> {
        let model = e.model().clone();
        Resolution::build_with(e, depth, |x| model.random_injective_embedding(rng, x))
    }

    pub fn base(&self) -> &Object {
        &self.base
    }

    /// Identification of the base with the zeroth syzygy.
    pub fn base_iso(&self) -> &IsoCertificate {
        &self.base_iso
    }

    pub fn depth(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair(&self, m: usize) -> &KernelCokernelPair {
        &self.pairs[m]
    }

    pub fn pairs(&self) -> &[KernelCokernelPair] {
        &self.pairs
    }

    /// Syzygy m, for m up to and including the depth.
    pub fn syzygy(&self, m: usize) -> &Object {
        if m == 0 {
            if self.pairs.is_empty() {
                &self.base
            } else {
                self.pairs[0].left()
            }
        } else {
            self.pairs[m - 1].right()
        }
    }

    pub fn injective(&self, m: usize) -> &Object {
        self.pairs[m].middle()
    }
}

/// Iterates the comparison isomorphism n full rounds along two resolutions
/// of one object, keeping the accumulated injective summands in resolution
/// order. Returns the certificates after 2n and 2n+1 steps: both relate an
/// alternating sum of injectives padded by a syzygy of one resolution to
/// the mirrored sum padded by the matching syzygy of the other.
pub fn resolution_schanuel(
    res1: &Resolution,
    res2: &Resolution,
    n: usize,
) -> Result<(IsoCertificate, IsoCertificate)> {
    if res1.base() != res2.base() {
        return Err(Error::BaseMismatch(format!(
            "resolutions start at {} and {}",
            res1.base().describe(),
            res2.base().describe()
        )));
    }
    let need = 2 * n + 1;
    if res1.depth() < need || res2.depth() < need {
        return Err(Error::DepthTooShallow(format!(
            "{n} rounds need depth {need}, towers have {} and {}",
            res1.depth(),
            res2.depth()
        )));
    }
    let cert0 = res1.base_iso().inverse().and_then(res2.base_iso())?;
    let mut cert = schanuel_with_base_iso(res1.pair(0), res2.pair(0), &cert0)?;
    let mut even = cert0;
    let mut a_obj = res1.pair(0).middle().clone();
    let mut b_obj = res2.pair(0).middle().clone();
    // which resolution owns the syzygy tail on the left-hand side
    let mut s_from_res2 = true;
    for m in 1..=2 * n {
        let (s_res, t_res) = if s_from_res2 {
            (res2, res1)
        } else {
            (res1, res2)
        };
        let s_obj = s_res.pair(m).left();
        let t_obj = t_res.pair(m).left();
        let pair_s = sum_with_object(s_res.pair(m), &a_obj)?;
        let pair_t = sum_with_object(t_res.pair(m), &b_obj)?;
        let base = swap_iso(s_obj, &a_obj)?
            .and_then(&cert)?
            .and_then(&swap_iso(&b_obj, t_obj)?)?;
        let raw = schanuel_with_base_iso(&pair_s, &pair_t, &base)?;
        let m_s = s_res.pair(m).middle();
        let m_t = t_res.pair(m).middle();
        let left_fix = direct_sum_certificate(
            &swap_iso(&a_obj, m_s)?,
            &IsoCertificate::identity_certificate(pair_t.right()),
        )?;
        let right_fix = direct_sum_certificate(
            &swap_iso(m_t, &b_obj)?,
            &IsoCertificate::identity_certificate(pair_s.right()),
        )?;
        cert = left_fix.and_then(&raw)?.and_then(&right_fix)?;
        a_obj = a_obj.direct_sum(m_s)?;
        b_obj = b_obj.direct_sum(m_t)?;
        s_from_res2 = !s_from_res2;
        if m + 1 == 2 * n {
            even = cert.clone();
        }
    }
    Ok((even, cert))
}

/// Re-runs the arithmetic behind a certificate: endpoints line up and both
/// composites are identities.
pub fn verify_certificate(cert: &IsoCertificate) -> bool {
    verify_iso_pair(cert.forward(), cert.backward())
}

/// Injective dimension probe outcome. Finite values order below every
/// exhausted budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimensionResult {
    Finite(usize),
    ExceedsBudget(usize),
}

impl PartialOrd for DimensionResult {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DimensionResult {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use DimensionResult::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), ExceedsBudget(_)) => std::cmp::Ordering::Less,
            (ExceedsBudget(_), Finite(_)) => std::cmp::Ordering::Greater,
            (ExceedsBudget(a), ExceedsBudget(b)) => a.cmp(b),
        }
    }
}

impl std::fmt::Display for DimensionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimensionResult::Finite(n) => write!(f, "{n}"),
            DimensionResult::ExceedsBudget(b) => write!(f, "exceeds {b}"),
        }
    }
}

/// Smallest m with the m-th cosyzygy injective, walking the canonical
/// tower; the budget caps how far the walk goes.
pub fn injective_dimension(x: &Object, budget: usize) -> Result<DimensionResult> {
    let model = x.model().clone();
    let mut current = x.clone();
    for n in 0..=budget {
        if model.is_injective(&current) {
            return Ok(DimensionResult::Finite(n));
        }
        if n == budget {
            break;
        }
        let pair = KernelCokernelPair::from_mono(model.embed_into_injective(&current))?;
        current = pair.right().clone();
    }
    Ok(DimensionResult::ExceedsBudget(budget))
}

/// The same probe read off an already-built tower.
pub fn injective_dimension_of_resolution(res: &Resolution) -> DimensionResult {
    let model = res.base().model();
    for m in 0..=res.depth() {
        if model.is_injective(res.syzygy(m)) {
            return DimensionResult::Finite(m);
        }
    }
    DimensionResult::ExceedsBudget(res.depth())
}

/// Seeded sample maximum of injective dimensions over random objects.
#[derive(Clone, Debug)]
pub struct GlobalDimensionReport {
    pub max: DimensionResult,
    pub witness: Object,
    pub sample_size: usize,
    pub budget: usize,
    pub seed: u64,
}

pub fn global_dimension_sample(
    model: &Model,
    sample_size: usize,
    budget: usize,
    seed: u64,
) -> Result<GlobalDimensionReport> {
    let mut rng = SampleRng::seed_from_u64(seed);
    let mut objects: Vec<Object> = (0..sample_size)
        .map(|_| model.random_object(&mut rng, 4))
        .collect();
    objects.sort();
    let mut max = DimensionResult::Finite(0);
    let mut witness = model.zero_object();
    for x in &objects {
        let d = injective_dimension(x, budget)?;
        if d > max {
            max = d;
            witness = x.clone();
        }
    }
    Ok(GlobalDimensionReport {
        max,
        witness,
        sample_size,
        budget,
        seed,
    })
}
