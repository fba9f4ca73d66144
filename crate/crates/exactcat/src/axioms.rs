//! Runtime audit of the exact-structure axioms on a model: identities are
//! admissible, admissible classes compose, admissible monos and epis pair
//! into exact sequences, pushouts and pullbacks preserve admissibility, and
//! the classes are invariant under isomorphism.
//!
//! A mutation deliberately miswires one aspect of the structure under test
//! so the audit's failure paths stay honest: every mutation must be caught
//! by at least one check, with a replayable counterexample.

use rand::SeedableRng;

use crate::category::{biproduct, compose, identity, sub, zero_morphism, Morphism, Object};
use crate::error::{Error, Result};
use crate::exact::verify_kernel_cokernel;
use crate::models::{Model, SampleRng};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MutationId {
    /// Caps the size gap of admissible monos at one, so composites of
    /// admissible monos fall out of the class.
    DropCompositionClosure,
    /// Keeps every underlying mono admissible while shrinking the epis to
    /// the split ones, leaving monos that pair with no admissible epi.
    AdmitNonkernelMono,
    /// Reports the zero morphism as the pushout leg, which is no mono.
    BreakPushoutAdmissibility,
}

impl MutationId {
    pub fn parse(s: &str) -> Result<MutationId> {
        match s {
            "drop-composition-closure" => Ok(MutationId::DropCompositionClosure),
            "admit-nonkernel-mono" => Ok(MutationId::AdmitNonkernelMono),
            "break-pushout-admissibility" => Ok(MutationId::BreakPushoutAdmissibility),
            other => Err(Error::UnknownMutation(format!(
                "unknown mutation {other:?}"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MutationId::DropCompositionClosure => "drop-composition-closure",
            MutationId::AdmitNonkernelMono => "admit-nonkernel-mono",
            MutationId::BreakPushoutAdmissibility => "break-pushout-admissibility",
        }
    }

    pub fn all() -> [MutationId; 3] {
        [
            MutationId::DropCompositionClosure,
            MutationId::AdmitNonkernelMono,
            MutationId::BreakPushoutAdmissibility,
        ]
    }
}

#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub model: Model,
    pub mutation: Option<MutationId>,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The structure under audit: the model's admissible classes and square
/// constructions, possibly miswired by a mutation.
struct CheckedStructure {
    model: Model,
    mutation: Option<MutationId>,
}

impl CheckedStructure {
    fn is_mono(&self, f: &Morphism) -> bool {
        match self.mutation {
            Some(MutationId::DropCompositionClosure) => {
                self.model.is_admissible_mono(f) && f.codomain().size() <= f.domain().size() + 1
            }
            Some(MutationId::AdmitNonkernelMono) => self.model.is_underlying_mono(f),
            _ => self.model.is_admissible_mono(f),
        }
    }

    fn is_epi(&self, f: &Morphism) -> bool {
        match self.mutation {
            Some(MutationId::AdmitNonkernelMono) => {
                self.model.factor_left(f, &identity(f.codomain())).is_some()
            }
            _ => self.model.is_admissible_epi(f),
        }
    }

    fn pushout_corner(&self, mu: &Morphism, f: &Morphism) -> Result<(Morphism, Morphism)> {
        let w = biproduct(mu.codomain(), f.codomain())?;
        let d = sub(&compose(w.mu(), mu)?, &compose(w.pi_tilde(), f)?)?;
        let (corner, pres) = self.model.cokernel_of(&d);
        let h = compose(&pres, w.mu())?;
        let h_prime = if self.mutation == Some(MutationId::BreakPushoutAdmissibility) {
            zero_morphism(f.codomain(), &corner)?
        } else {
            compose(&pres, w.pi_tilde())?
        };
        Ok((h, h_prime))
    }

    fn pullback_corner(&self, pi: &Morphism, f: &Morphism) -> Result<(Morphism, Morphism)> {
        let w = biproduct(pi.domain(), f.domain())?;
        let d = sub(&compose(pi, w.mu_tilde())?, &compose(f, w.pi())?)?;
        let (_, mono) = self.model.kernel_of(&d);
        let p = compose(w.mu_tilde(), &mono)?;
        let p_prime = compose(w.pi(), &mono)?;
        Ok((p, p_prime))
    }

    fn rng(&self, seed: u64, stream: u64) -> SampleRng {
        let mut rng = SampleRng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng
    }

    fn check_identities(&self, samples: usize, seed: u64) -> Result<AxiomCheck> {
        let name = "identity-admissibility";
        let mut rng = self.rng(seed, 0);
        let mut targets = self.model.probe_objects();
        for _ in 0..samples {
            targets.push(self.model.random_object(&mut rng, 3));
        }
        for (j, x) in targets.iter().enumerate() {
            let id = identity(x);
            if !self.is_mono(&id) || !self.is_epi(&id) {
                return Ok(fail(
                    name,
                    format!(
                        "seed={seed} stream=0 case={j}: identity of {} is not admissible",
                        x.describe()
                    ),
                ));
            }
        }
        Ok(pass(name))
    }

    fn check_closure(&self, samples: usize, seed: u64) -> Result<AxiomCheck> {
        let name = "composition-closure";
        let mut rng = self.rng(seed, 1);
        // deterministic corank-one pair through the smallest nonzero probe
        if let Some(small) = self
            .model
            .probe_objects()
            .into_iter()
            .find(|o| o.size() == 1)
        {
            let zero = self.model.zero_object();
            let f1 = zero_morphism(&zero, &small)?;
            let w = biproduct(&small, &small)?;
            let f2 = w.mu().clone();
            if self.is_mono(&f1) && self.is_mono(&f2) {
                let g = compose(&f2, &f1)?;
                if !self.is_mono(&g) {
                    return Ok(fail(
                        name,
                        format!(
                            "seed={seed} stream=1 probe: composite of admissible monos 0 -> {} -> {} left the class: {:?}",
                            small.describe(),
                            w.middle().describe(),
                            g
                        ),
                    ));
                }
            }
        }
        for j in 0..samples {
            let x = self.model.random_object(&mut rng, 3);
            let mu1 = self.model.random_injective_embedding(&mut rng, &x)?;
            let mu2 = self
                .model
                .random_injective_embedding(&mut rng, mu1.codomain())?;
            if self.is_mono(&mu1) && self.is_mono(&mu2) {
                let g = compose(&mu2, &mu1)?;
                if !self.is_mono(&g) {
                    return Ok(fail(
                        name,
                        format!(
                            "seed={seed} stream=1 sample={j}: composite of admissible monos left the class: {:?}",
                            g
                        ),
                    ));
                }
            }
            let y = self.model.random_object(&mut rng, 2);
            let z = self.model.random_object(&mut rng, 2);
            let inner = biproduct(&y, &z)?;
            let outer = biproduct(&x, inner.middle())?;
            let a = self.model.random_iso(&mut rng, outer.middle())?;
            let c = self.model.random_iso(&mut rng, &z)?;
            let e1 = compose(outer.pi(), a.forward())?;
            let e2 = compose(c.forward(), inner.pi())?;
            if self.is_epi(&e1) && self.is_epi(&e2) {
                let g = compose(&e2, &e1)?;
                if !self.is_epi(&g) {
                    return Ok(fail(
                        name,
                        format!(
                            "seed={seed} stream=1 sample={j}: composite of admissible epis left the class: {:?}",
                            g
                        ),
                    ));
                }
            }
        }
        Ok(pass(name))
    }

    fn pairing_of_mono(&self, f: &Morphism, context: &str) -> Result<Option<String>> {
        if !self.is_mono(f) {
            return Ok(None);
        }
        let (_, coker) = self.model.cokernel_of(f);
        if !self.is_epi(&coker) {
            return Ok(Some(format!(
                "{context}: admissible mono has no admissible cokernel: {f:?}"
            )));
        }
        if let Err(e) = verify_kernel_cokernel(f, &coker) {
            return Ok(Some(format!(
                "{context}: mono does not pair with its cokernel ({e}): {f:?}"
            )));
        }
        Ok(None)
    }

    fn pairing_of_epi(&self, f: &Morphism, context: &str) -> Result<Option<String>> {
        if !self.is_epi(f) {
            return Ok(None);
        }
        let (_, ker) = self.model.kernel_of(f);
        if !self.is_mono(&ker) {
            return Ok(Some(format!(
                "{context}: admissible epi has no admissible kernel: {f:?}"
            )));
        }
        if let Err(e) = verify_kernel_cokernel(&ker, f) {
            return Ok(Some(format!(
                "{context}: epi does not pair with its kernel ({e}): {f:?}"
            )));
        }
        Ok(None)
    }

    fn check_pairing(&self, samples: usize, seed: u64) -> Result<AxiomCheck> {
        let name = "kernel-cokernel-pairing";
        let mut rng = self.rng(seed, 2);
        for (j, x) in self.model.probe_objects().iter().enumerate() {
            let mu = self.model.embed_into_injective(x);
            let ctx = format!("seed={seed} stream=2 probe={j}");
            if let Some(ce) = self.pairing_of_mono(&mu, &ctx)? {
                return Ok(fail(name, ce));
            }
            let (_, coker) = self.model.cokernel_of(&mu);
            if let Some(ce) = self.pairing_of_epi(&coker, &ctx)? {
                return Ok(fail(name, ce));
            }
        }
        for j in 0..samples {
            let x = self.model.random_object(&mut rng, 3);
            let mu = self.model.random_injective_embedding(&mut rng, &x)?;
            let ctx = format!("seed={seed} stream=2 sample={j}");
            if let Some(ce) = self.pairing_of_mono(&mu, &ctx)? {
                return Ok(fail(name, ce));
            }
            let (_, coker) = self.model.cokernel_of(&mu);
            if let Some(ce) = self.pairing_of_epi(&coker, &ctx)? {
                return Ok(fail(name, ce));
            }
        }
        Ok(pass(name))
    }

    fn check_squares(&self, samples: usize, seed: u64) -> Result<AxiomCheck> {
        let name = "pushout-pullback-admissibility";
        let mut rng = self.rng(seed, 3);
        let probes: Vec<Object> = self
            .model
            .probe_objects()
            .into_iter()
            .filter(|o| !o.is_zero())
            .collect();
        for (j, x) in probes.iter().enumerate() {
            let mu = self.model.embed_into_injective(x);
            if !self.is_mono(&mu) {
                continue;
            }
            let (_, h_prime) = self.pushout_corner(&mu, &identity(x))?;
            if !self.is_mono(&h_prime) {
                return Ok(fail(
                    name,
                    format!(
                        "seed={seed} stream=3 probe={j}: pushout of an admissible mono is not one: {h_prime:?}"
                    ),
                ));
            }
            let (_, coker) = self.model.cokernel_of(&mu);
            if self.is_epi(&coker) {
                let (_, p_prime) = self.pullback_corner(&coker, &identity(coker.codomain()))?;
                if !self.is_epi(&p_prime) {
                    return Ok(fail(
                        name,
                        format!(
                            "seed={seed} stream=3 probe={j}: pullback of an admissible epi is not one: {p_prime:?}"
                        ),
                    ));
                }
            }
        }
        for j in 0..samples {
            let x = self.model.random_object(&mut rng, 3);
            let y = self.model.random_object(&mut rng, 3);
            let mu = self.model.random_injective_embedding(&mut rng, &x)?;
            if self.is_mono(&mu) {
                let f = self.model.random_morphism(&mut rng, &x, &y);
                let (_, h_prime) = self.pushout_corner(&mu, &f)?;
                if !self.is_mono(&h_prime) {
                    return Ok(fail(
                        name,
                        format!(
                            "seed={seed} stream=3 sample={j}: pushout of an admissible mono is not one: {h_prime:?}"
                        ),
                    ));
                }
            }
            let (_, coker) = self.model.cokernel_of(&mu);
            if self.is_epi(&coker) {
                let f = self.model.random_morphism(&mut rng, &y, coker.codomain());
                let (_, p_prime) = self.pullback_corner(&coker, &f)?;
                if !self.is_epi(&p_prime) {
                    return Ok(fail(
                        name,
                        format!(
                            "seed={seed} stream=3 sample={j}: pullback of an admissible epi is not one: {p_prime:?}"
                        ),
                    ));
                }
            }
        }
        Ok(pass(name))
    }

    fn check_invariance(&self, samples: usize, seed: u64) -> Result<AxiomCheck> {
        let name = "isomorphism-invariance";
        let mut rng = self.rng(seed, 4);
        for j in 0..samples {
            let x = self.model.random_object(&mut rng, 3);
            let mu = self.model.random_injective_embedding(&mut rng, &x)?;
            let a = self.model.random_iso(&mut rng, &x)?;
            let b = self.model.random_iso(&mut rng, mu.codomain())?;
            if self.is_mono(&mu) {
                let twisted = compose(b.forward(), &compose(&mu, a.forward())?)?;
                if !self.is_mono(&twisted) {
                    return Ok(fail(
                        name,
                        format!(
                            "seed={seed} stream=4 sample={j}: iso twist of an admissible mono left the class: {twisted:?}"
                        ),
                    ));
                }
            }
            let (_, coker) = self.model.cokernel_of(&mu);
            if self.is_epi(&coker) {
                let c = self.model.random_iso(&mut rng, coker.codomain())?;
                let twisted = compose(c.forward(), &compose(&coker, b.forward())?)?;
                if !self.is_epi(&twisted) {
                    return Ok(fail(
                        name,
                        format!(
                            "seed={seed} stream=4 sample={j}: iso twist of an admissible epi left the class: {twisted:?}"
                        ),
                    ));
                }
            }
        }
        Ok(pass(name))
    }
}

fn pass(name: &'static str) -> AxiomCheck {
    AxiomCheck {
        name,
        passed: true,
        counterexample: None,
    }
}

fn fail(name: &'static str, counterexample: String) -> AxiomCheck {
    AxiomCheck {
        name,
        passed: false,
        counterexample: Some(counterexample),
    }
}

/// Audits the model's exact structure: deterministic probes first, then
/// seeded sampling, each check on its own random stream.
pub fn check_exact_axioms(
    model: &Model,
    samples: usize,
    seed: u64,
    mutation: Option<MutationId>,
) -> Result<AxiomReport> {
    let st = CheckedStructure {
        model: model.clone(),
        mutation,
    };
    let checks = vec![
        st.check_identities(samples, seed)?,
        st.check_closure(samples, seed)?,
        st.check_pairing(samples, seed)?,
        st.check_squares(samples, seed)?,
        st.check_invariance(samples, seed)?,
    ];
    Ok(AxiomReport {
        model: model.clone(),
        mutation,
        samples,
        seed,
        checks,
    })
}
