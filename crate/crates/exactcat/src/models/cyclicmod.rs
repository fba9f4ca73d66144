//! Finite modules over the chain ring Z/p^k, presented by exponent lists.
//!
//! The object with exponents (e_1, ..., e_r) is the direct sum of the cyclic
//! modules Z/p^{e_i}. Morphism data is a matrix acting on column vectors of
//! generators; the entry sending the generator of Z/p^{e_j} into Z/p^{d_i}
//! must be divisible by p^{max(0, d_i - e_j)}, and row i is canonically
//! reduced mod p^{d_i}.
//!
//! Every computation lifts presentations to the full ring Z/p^k (scaling row
//! i by p^{k - d_i}, which turns "zero in the quotient" into "zero mod p^k")
//! and reuses the valuation-pivot diagonalization from `mat`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::mat::{pow_exact, valuation, Mat};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CyclicModObject {
    exponents: Vec<u32>,
}

impl CyclicModObject {
    pub fn new(exponents: Vec<u32>) -> CyclicModObject {
        CyclicModObject { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn summands(&self) -> usize {
        self.exponents.len()
    }
}

pub(crate) fn validate_object(k: u32, x: &CyclicModObject) -> Result<()> {
    for &e in x.exponents() {
        if e == 0 || e > k {
            return Err(Error::InvalidObject(format!(
                "cyclic exponent {e} outside 1..={k}"
            )));
        }
    }
    Ok(())
}

fn required_val(d: u32, e: u32) -> u32 {
    d.saturating_sub(e)
}

pub(crate) fn validate_matrix(p: u64, k: u32, dom: &[u32], cod: &[u32], a: &Mat) -> Result<()> {
    if a.p() != p || a.k() != k {
        return Err(Error::InvalidMorphism(format!(
            "matrix ring Z/{}^{} does not match model ring Z/{}^{}",
            a.p(),
            a.k(),
            p,
            k
        )));
    }
    if a.rows() != cod.len() || a.cols() != dom.len() {
        return Err(Error::InvalidMorphism(format!(
            "matrix shape {}x{} does not fit {} -> {} summands",
            a.rows(),
            a.cols(),
            dom.len(),
            cod.len()
        )));
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let need = required_val(cod[i], dom[j]);
            if valuation(a.get(i, j), p, k) < need {
                return Err(Error::InvalidMorphism(format!(
                    "entry ({i}, {j}) = {} is not divisible by {p}^{need}",
                    a.get(i, j)
                )));
            }
        }
    }
    Ok(())
}

/// Rows reduced modulo the codomain exponents.
pub(crate) fn canonicalize(p: u64, k: u32, cod: &[u32], a: &Mat) -> Mat {
    Mat::from_fn(a.rows(), a.cols(), p, k, |i, j| {
        a.get(i, j) % pow_exact(p, cod[i])
    })
}

/// The presentation of a over the full ring: row i scaled by p^{k - d_i}, so
/// that a x = 0 in the codomain iff lifted(a) x = 0 mod p^k.
fn lifted(p: u64, k: u32, cod: &[u32], a: &Mat) -> Mat {
    Mat::from_fn(a.rows(), a.cols(), p, k, |i, j| {
        a.get(i, j) * pow_exact(p, k - cod[i])
    })
}

/// Diagonal matrix of the relation generators p^{e_i}.
fn relations(p: u64, k: u32, exps: &[u32]) -> Mat {
    Mat::from_fn(exps.len(), exps.len(), p, k, |i, j| {
        if i == j {
            pow_exact(p, exps[i])
        } else {
            0
        }
    })
}

struct Quotient {
    exps: Vec<u32>,
    proj: Mat,
    sect: Mat,
}

/// Quotient of the free module (Z/p^k)^s by the column span of rel, in
/// canonical form: descending exponents, projection read off the rows of the
/// diagonalizing row operation, section off the matching columns of its
/// inverse. Coordinates whose pivot is a unit are dropped entirely.
fn quotient_by(k: u32, rel: &Mat) -> Quotient {
    let red = rel.diagonalize();
    let s = rel.rows();
    let mut kept = Vec::new();
    let mut exps = Vec::new();
    for t in (0..s).rev() {
        let vl = if t < red.vals.len() { red.vals[t] } else { k };
        if vl >= 1 {
            kept.push(t);
            exps.push(vl);
        }
    }
    Quotient {
        exps,
        proj: red.u.select_rows(&kept),
        sect: red.u_inv.select_cols(&kept),
    }
}

/// Canonical image factorization: exponents of the middle object, the epi
/// out of the domain and the mono into the codomain, with
/// canonicalize(mono * epi) = a.
pub(crate) fn image(p: u64, k: u32, cod: &[u32], a: &Mat) -> (Vec<u32>, Mat, Mat) {
    let w = lifted(p, k, cod, a).kernel_gens();
    let q = quotient_by(k, &w);
    let epi = canonicalize(p, k, &q.exps, &q.proj);
    let mono = canonicalize(p, k, cod, &a.mul(&q.sect));
    (q.exps, epi, mono)
}

/// Kernel submodule, returned as its canonical mono into the domain.
pub(crate) fn kernel(p: u64, k: u32, dom: &[u32], cod: &[u32], a: &Mat) -> (Vec<u32>, Mat) {
    let w = lifted(p, k, cod, a).kernel_gens();
    // the kernel is the image of the generator matrix
    let (exps, _, mono) = image(p, k, dom, &canonicalize(p, k, dom, &w));
    (exps, mono)
}

/// Cokernel presentation: quotient of the codomain by the image and the
/// intrinsic relations together.
pub(crate) fn cokernel(p: u64, k: u32, cod: &[u32], a: &Mat) -> (Vec<u32>, Mat) {
    let rel = a.hstack(&relations(p, k, cod));
    let q = quotient_by(k, &rel);
    let epi = canonicalize(p, k, &q.exps, &q.proj);
    (q.exps, epi)
}

/// Canonical g with a g = b, if any exists. Column j of g is parametrized as
/// g[t][j] = p^{max(0, d_t - e_j)} u_t, which ranges over exactly the valid
/// entries, and the congruence mod each p^{f_i} is lifted to one mod p^k.
pub(crate) fn solve_post(
    p: u64,
    k: u32,
    a_dom: &[u32],
    a_cod: &[u32],
    a: &Mat,
    b_dom: &[u32],
    b: &Mat,
) -> Option<Mat> {
    let m = pow_exact(p, k);
    let mut g = Mat::zeros(a_dom.len(), b_dom.len(), p, k);
    for j in 0..b_dom.len() {
        let sys = Mat::from_fn(a_cod.len(), a_dom.len(), p, k, |i, t| {
            let lift = pow_exact(p, k - a_cod[i]);
            let dv = pow_exact(p, required_val(a_dom[t], b_dom[j]));
            lift * a.get(i, t) % m * dv
        });
        let rhs = Mat::from_fn(a_cod.len(), 1, p, k, |i, _| {
            pow_exact(p, k - a_cod[i]) * b.get(i, j)
        });
        let u = sys.solve(&rhs)?;
        for t in 0..a_dom.len() {
            g.set(
                t,
                j,
                pow_exact(p, required_val(a_dom[t], b_dom[j])) * u.get(t, 0) % m,
            );
        }
    }
    Some(canonicalize(p, k, a_dom, &g))
}

/// Canonical g with g a = b, if any exists; row-by-row dual of solve_post.
pub(crate) fn solve_pre(
    p: u64,
    k: u32,
    a_dom: &[u32],
    a_cod: &[u32],
    a: &Mat,
    b_cod: &[u32],
    b: &Mat,
) -> Option<Mat> {
    let m = pow_exact(p, k);
    let mut g = Mat::zeros(b_cod.len(), a_cod.len(), p, k);
    for i in 0..b_cod.len() {
        let sys = Mat::from_fn(a_dom.len(), a_cod.len(), p, k, |l, j| {
            let e = (k - b_cod[i]) + required_val(b_cod[i], a_cod[j]);
            pow_exact(p, e) * a.get(j, l) % m
        });
        let rhs = Mat::from_fn(a_dom.len(), 1, p, k, |l, _| {
            pow_exact(p, k - b_cod[i]) * b.get(i, l)
        });
        let w = sys.solve(&rhs)?;
        for j in 0..a_cod.len() {
            g.set(
                i,
                j,
                pow_exact(p, required_val(b_cod[i], a_cod[j])) * w.get(j, 0) % m,
            );
        }
    }
    Some(canonicalize(p, k, b_cod, &g))
}

pub(crate) fn is_underlying_mono(p: u64, k: u32, dom: &[u32], cod: &[u32], a: &Mat) -> bool {
    kernel(p, k, dom, cod, a).0.is_empty()
}

/// Surjective over the local ring iff surjective mod p.
pub(crate) fn is_underlying_epi(p: u64, a: &Mat) -> bool {
    let modp = Mat::from_fn(a.rows(), a.cols(), p, 1, |i, j| a.get(i, j) % p);
    modp.rank() == a.rows()
}

pub(crate) fn is_injective_object(k: u32, x: &CyclicModObject) -> bool {
    x.exponents().iter().all(|&e| e == k)
}

/// Blockwise multiplication by p^{k - e_i} into the free module with one
/// summand per generator.
pub(crate) fn injective_embedding(p: u64, k: u32, exps: &[u32]) -> (Vec<u32>, Mat) {
    let mat = Mat::from_fn(exps.len(), exps.len(), p, k, |i, j| {
        if i == j {
            pow_exact(p, k - exps[i])
        } else {
            0
        }
    });
    (vec![k; exps.len()], mat)
}

pub(crate) fn random_object<R: Rng>(rng: &mut R, k: u32, max_summands: usize) -> CyclicModObject {
    let r = rng.gen_range(0..=max_summands);
    CyclicModObject::new((0..r).map(|_| rng.gen_range(1..=k)).collect())
}

/// Uniform over the valid matrices: entry (i, j) is p^{max(0, d_i - e_j)}
/// times a uniform residue mod p^{min(d_i, e_j)}.
pub(crate) fn random_matrix<R: Rng>(rng: &mut R, p: u64, k: u32, dom: &[u32], cod: &[u32]) -> Mat {
    Mat::from_fn(cod.len(), dom.len(), p, k, |i, j| {
        let span = pow_exact(p, cod[i].min(dom[j]));
        pow_exact(p, required_val(cod[i], dom[j])) * rng.gen_range(0..span)
    })
}

/// Invertible matrix over Z/p^k by rejection; falls back to the identity if
/// the try budget runs out.
pub(crate) fn random_unit_matrix<R: Rng>(
    rng: &mut R,
    p: u64,
    k: u32,
    s: usize,
    tries: usize,
) -> Mat {
    let m = pow_exact(p, k);
    for _ in 0..tries {
        let cand = Mat::from_fn(s, s, p, k, |_, _| rng.gen_range(0..m));
        // square and surjective forces bijective
        if is_underlying_epi(p, &cand) {
            return cand;
        }
    }
    Mat::identity(s, p, k)
}

/// Random admissible mono into a free module: the canonical embedding widened
/// by a few extra free summands, then twisted by a random automorphism.
pub(crate) fn random_embedding<R: Rng>(
    rng: &mut R,
    p: u64,
    k: u32,
    exps: &[u32],
) -> (Vec<u32>, Mat) {
    let extra = rng.gen_range(0..=2usize);
    let r = exps.len();
    let base = Mat::from_fn(r + extra, r, p, k, |i, j| {
        if i == j {
            pow_exact(p, k - exps[j])
        } else {
            0
        }
    });
    let aut = random_unit_matrix(rng, p, k, r + extra, 64);
    (vec![k; r + extra], aut.mul(&base))
}
