//! Representations of the equioriented A_n quiver over F_p.
//!
//! An object is a dimension vector (d_0, ..., d_{n-1}) together with
//! structure maps b_v: V_v -> V_{v+1}; morphisms are per-vertex matrices
//! intertwining the structure maps. Indecomposables are interval
//! representations [a, b], and the injective ones are exactly the intervals
//! starting at vertex 0. That fact drives everything here: the evaluation
//! embedding into sums of initial intervals, the flag-based decomposition of
//! injective objects, and the functional-extension lift.

use rand::Rng;

use crate::error::{Error, Result};
use crate::mat::{Echelon, Mat};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinRepObject {
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl LinRepObject {
    pub fn new(dims: Vec<usize>, maps: Vec<Mat>) -> LinRepObject {
        LinRepObject { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn vertices(&self) -> usize {
        self.dims.len()
    }
}

pub(crate) fn validate_object(p: u64, n: usize, o: &LinRepObject) -> Result<()> {
    if o.dims.len() != n {
        return Err(Error::InvalidObject(format!(
            "expected {n} vertex dimensions, got {}",
            o.dims.len()
        )));
    }
    if o.maps.len() + 1 != n {
        return Err(Error::InvalidObject(format!(
            "expected {} structure maps, got {}",
            n - 1,
            o.maps.len()
        )));
    }
    for (v, m) in o.maps.iter().enumerate() {
        if m.p() != p || m.k() != 1 {
            return Err(Error::InvalidObject(format!(
                "structure map {v} is not over F_{p}"
            )));
        }
        if m.rows() != o.dims[v + 1] || m.cols() != o.dims[v] {
            return Err(Error::InvalidObject(format!(
                "structure map {v} has shape {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                o.dims[v + 1],
                o.dims[v]
            )));
        }
    }
    Ok(())
}

pub(crate) fn validate_morphism(
    p: u64,
    dom: &LinRepObject,
    cod: &LinRepObject,
    mats: &[Mat],
) -> Result<()> {
    let n = dom.vertices();
    if mats.len() != n {
        return Err(Error::InvalidMorphism(format!(
            "expected {n} vertex matrices, got {}",
            mats.len()
        )));
    }
    for (v, m) in mats.iter().enumerate() {
        if m.p() != p || m.k() != 1 {
            return Err(Error::InvalidMorphism(format!(
                "vertex matrix {v} is not over F_{p}"
            )));
        }
        if m.rows() != cod.dims[v] || m.cols() != dom.dims[v] {
            return Err(Error::InvalidMorphism(format!(
                "vertex matrix {v} has shape {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                cod.dims[v],
                dom.dims[v]
            )));
        }
    }
    for v in 0..n - 1 {
        if cod.maps[v].mul(&mats[v]) != mats[v + 1].mul(&dom.maps[v]) {
            return Err(Error::InvalidMorphism(format!(
                "vertex matrices do not intertwine the structure maps at edge {v}"
            )));
        }
    }
    Ok(())
}

/// Composite structure map V_a -> V_b (identity when a = b).
pub(crate) fn composite(p: u64, o: &LinRepObject, a: usize, b: usize) -> Mat {
    let mut m = Mat::identity(o.dims[a], p, 1);
    for v in a..b {
        m = o.maps[v].mul(&m);
    }
    m
}

/// The interval representation [a, b] (vertices 0-based, inclusive).
pub fn interval(p: u64, n: usize, a: usize, b: usize) -> LinRepObject {
    let dims: Vec<usize> = (0..n).map(|v| usize::from(v >= a && v <= b)).collect();
    let maps = (0..n - 1)
        .map(|v| Mat::from_fn(dims[v + 1], dims[v], p, 1, |_, _| 1))
        .collect();
    LinRepObject::new(dims, maps)
}

/// Multiplicity of each interval indecomposable [a, b], by rank
/// inclusion-exclusion over the composite structure maps.
pub fn interval_multiplicities(p: u64, o: &LinRepObject) -> Vec<Vec<usize>> {
    let n = o.vertices();
    let mut rank = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in a..n {
            rank[a][b] = composite(p, o, a, b).rank();
        }
    }
    let r = |a: isize, b: isize| -> isize {
        if a < 0 || b >= n as isize {
            0
        } else {
            rank[a as usize][b as usize] as isize
        }
    };
    let mut mult = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in a..n {
            let (ai, bi) = (a as isize, b as isize);
            let m = r(ai, bi) - r(ai - 1, bi) - r(ai, bi + 1) + r(ai - 1, bi + 1);
            debug_assert!(m >= 0, "interval multiplicities are nonnegative");
            mult[a][b] = m as usize;
        }
    }
    mult
}

/// Injective iff no interval summand starts after vertex 0, which happens
/// iff every structure map is surjective.
pub(crate) fn is_injective(o: &LinRepObject) -> bool {
    o.maps
        .iter()
        .enumerate()
        .all(|(v, m)| m.rank() == o.dims[v + 1])
}

/// Per-vertex kernel with the restricted structure maps.
pub(crate) fn kernel(p: u64, dom: &LinRepObject, mats: &[Mat]) -> (LinRepObject, Vec<Mat>) {
    let n = dom.vertices();
    let monos: Vec<Mat> = mats.iter().map(Mat::kernel_gens).collect();
    let dims: Vec<usize> = monos.iter().map(Mat::cols).collect();
    let mut kmaps = Vec::new();
    for v in 0..n - 1 {
        let pushed = dom.maps[v].mul(&monos[v]);
        kmaps.push(
            monos[v + 1]
                .solve(&pushed)
                .expect("structure maps restrict to kernels"),
        );
    }
    let _ = p;
    (LinRepObject::new(dims, kmaps), monos)
}

/// Per-vertex cokernel: the projection is the lower part of the row
/// operation diagonalizing each vertex matrix, so its kernel is exactly the
/// vertex image and the induced maps come from the matching section columns.
pub(crate) fn cokernel(p: u64, cod: &LinRepObject, mats: &[Mat]) -> (LinRepObject, Vec<Mat>) {
    let n = cod.vertices();
    let mut projs = Vec::new();
    let mut sects = Vec::new();
    for m in mats {
        let red = m.diagonalize();
        let idx: Vec<usize> = (red.nonzero_rank()..m.rows()).collect();
        projs.push(red.u.select_rows(&idx));
        sects.push(red.u_inv.select_cols(&idx));
    }
    let dims: Vec<usize> = projs.iter().map(Mat::rows).collect();
    let mut cmaps = Vec::new();
    for v in 0..n - 1 {
        cmaps.push(projs[v + 1].mul(&cod.maps[v]).mul(&sects[v]));
    }
    let _ = p;
    (LinRepObject::new(dims, cmaps), projs)
}

/// Per-vertex image factorization with mono * epi equal to the input on the
/// nose, plus the structure maps restricted to the image.
pub(crate) fn image(
    p: u64,
    cod: &LinRepObject,
    mats: &[Mat],
) -> (LinRepObject, Vec<Mat>, Vec<Mat>) {
    let n = cod.vertices();
    let mut epis = Vec::new();
    let mut monos = Vec::new();
    for m in mats {
        let red = m.diagonalize();
        let idx: Vec<usize> = (0..red.nonzero_rank()).collect();
        monos.push(red.u_inv.select_cols(&idx));
        epis.push(red.v_inv.select_rows(&idx));
    }
    let dims: Vec<usize> = monos.iter().map(Mat::cols).collect();
    let mut imaps = Vec::new();
    for v in 0..n - 1 {
        let pushed = cod.maps[v].mul(&monos[v]);
        imaps.push(
            monos[v + 1]
                .solve(&pushed)
                .expect("structure maps restrict to images"),
        );
    }
    let _ = p;
    (LinRepObject::new(dims, imaps), epis, monos)
}

/// Canonical injective with mult[j] copies of the interval [0, j]: vertex
/// dimensions are suffix sums and each structure map drops the leading block.
pub(crate) fn canonical_injective(p: u64, mult: &[usize]) -> LinRepObject {
    let n = mult.len();
    let dims: Vec<usize> = (0..n).map(|v| mult[v..].iter().sum()).collect();
    let maps: Vec<Mat> = (0..n - 1)
        .map(|v| {
            Mat::from_fn(dims[v + 1], dims[v], p, 1, |i, j| {
                u64::from(j == i + mult[v])
            })
        })
        .collect();
    LinRepObject::new(dims, maps)
}

/// The evaluation embedding into the canonical injective with the given
/// multiplicities (at least the vertex dimensions): the block of the [0, j]
/// copies at vertex v is the composite structure map into V_j, padded with
/// zero rows for any extra copies. The j = v block starts with an identity,
/// so the embedding is injective at every vertex.
pub(crate) fn eval_embedding(p: u64, o: &LinRepObject, mult: &[usize]) -> (LinRepObject, Vec<Mat>) {
    let n = o.vertices();
    let container = canonical_injective(p, mult);
    let mut mats = Vec::new();
    for v in 0..n {
        let mut block = Mat::zeros(0, o.dims[v], p, 1);
        for j in v..n {
            assert!(mult[j] >= o.dims[j], "container multiplicities too small");
            block = block.vstack(&composite(p, o, v, j));
            block = block.vstack(&Mat::zeros(mult[j] - o.dims[j], o.dims[v], p, 1));
        }
        mats.push(block);
    }
    (container, mats)
}

pub(crate) struct InjectiveDecomposition {
    pub mult: Vec<usize>,
    pub u: Vec<Mat>,
    pub u_inv: Vec<Mat>,
}

/// Splits an injective object as a sum of initial intervals. The kernels
/// K_j of the composites out of vertex 0 form a flag; a flag-adapted
/// complement W_j (K_{j-1} + W_j = K_j) collects the copies of [0, j], and
/// transporting the W_j forward gives the change of basis at every vertex.
pub(crate) fn decompose_injective(p: u64, o: &LinRepObject) -> InjectiveDecomposition {
    let n = o.vertices();
    let d0 = o.dims[0];
    let mut ech = Echelon::new(d0, p);
    let mut w: Vec<Mat> = Vec::new();
    for j in 0..n {
        let kj = if j + 1 < n {
            composite(p, o, 0, j + 1).kernel_gens()
        } else {
            Mat::identity(d0, p, 1)
        };
        let mut fresh = Vec::new();
        for c in 0..kj.cols() {
            let col: Vec<u64> = (0..d0).map(|r| kj.get(r, c)).collect();
            if ech.insert(&col) {
                fresh.push(c);
            }
        }
        w.push(kj.select_cols(&fresh));
    }
    let mult: Vec<usize> = w.iter().map(Mat::cols).collect();
    let canonical = canonical_injective(p, &mult);
    let mut u = Vec::new();
    for v in 0..n {
        let beta = composite(p, o, 0, v);
        let mut uv = Mat::zeros(o.dims[v], 0, p, 1);
        for wj in w.iter().skip(v) {
            uv = uv.hstack(&beta.mul(wj));
        }
        u.push(uv);
    }
    let u_inv: Vec<Mat> = u
        .iter()
        .map(|m| {
            m.inverse()
                .expect("transported flag complements form a basis")
        })
        .collect();
    // u intertwines the canonical structure maps with o's
    debug_assert!(validate_morphism(p, &canonical, o, &u).is_ok());
    InjectiveDecomposition { mult, u, u_inv }
}

/// Lift f: E -> I along a pointwise injective mu: E -> F, where I has the
/// given decomposition: in canonical coordinates the [0, j] components of
/// any morphism are determined by one functional block at vertex j, so it
/// suffices to extend those blocks along mu_j and transport back.
pub(crate) fn lift_through_decomposition(
    p: u64,
    dec: &InjectiveDecomposition,
    dom_f: &LinRepObject,
    f: &[Mat],
    mu: &[Mat],
) -> Option<Vec<Mat>> {
    let n = dec.mult.len();
    let fc: Vec<Mat> = (0..n).map(|v| dec.u_inv[v].mul(&f[v])).collect();
    let mut xi = Vec::new();
    for j in 0..n {
        let rows: Vec<usize> = (0..dec.mult[j]).collect();
        let psi = fc[j].select_rows(&rows);
        xi.push(mu[j].solve_left(&psi)?);
    }
    let mut out = Vec::new();
    for v in 0..n {
        let mut gv = Mat::zeros(0, dom_f.dims[v], p, 1);
        for (j, xij) in xi.iter().enumerate().skip(v) {
            gv = gv.vstack(&xij.mul(&composite(p, dom_f, v, j)));
        }
        out.push(dec.u[v].mul(&gv));
    }
    Some(out)
}

/// Column-major offsets for the per-vertex blocks of an unknown morphism
/// dom -> cod, entry (v, r, c) at off[v] + c * cod.dims[v] + r.
fn offsets(dom: &LinRepObject, cod: &LinRepObject) -> (Vec<usize>, usize) {
    let mut off = Vec::new();
    let mut total = 0;
    for v in 0..dom.vertices() {
        off.push(total);
        total += dom.dims[v] * cod.dims[v];
    }
    (off, total)
}

/// Rows of the linear system expressing that an unknown dom -> cod morphism
/// intertwines the structure maps.
fn intertwining_rows(
    p: u64,
    dom: &LinRepObject,
    cod: &LinRepObject,
    off: &[usize],
    total: usize,
) -> Mat {
    let n = dom.vertices();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for v in 0..n - 1 {
        let cv = &cod.maps[v];
        let dv = &dom.maps[v];
        for r in 0..cod.dims[v + 1] {
            for c in 0..dom.dims[v] {
                let mut row = vec![0u64; total];
                for s in 0..cod.dims[v] {
                    row[off[v] + c * cod.dims[v] + s] = cv.get(r, s);
                }
                for t in 0..dom.dims[v + 1] {
                    let cell = off[v + 1] + t * cod.dims[v + 1] + r;
                    row[cell] = (row[cell] + p - dv.get(t, c)) % p;
                }
                rows.push(row);
            }
        }
    }
    let count = rows.len();
    Mat::new(count, total, p, 1, rows.concat())
}

fn unflatten(
    p: u64,
    dom: &LinRepObject,
    cod: &LinRepObject,
    off: &[usize],
    flat: &Mat,
    col: usize,
) -> Vec<Mat> {
    (0..dom.vertices())
        .map(|v| {
            Mat::from_fn(cod.dims[v], dom.dims[v], p, 1, |r, c| {
                flat.get(off[v] + c * cod.dims[v] + r, col)
            })
        })
        .collect()
}

/// Basis of the hom space as per-vertex matrix tuples.
pub(crate) fn hom_basis(p: u64, x: &LinRepObject, y: &LinRepObject) -> Vec<Vec<Mat>> {
    let (off, total) = offsets(x, y);
    let sys = intertwining_rows(p, x, y, &off, total);
    let gens = sys.kernel_gens();
    (0..gens.cols())
        .map(|c| unflatten(p, x, y, &off, &gens, c))
        .collect()
}

/// Canonical h with a h = b for a: X -> Y, b: W -> Y. When a is injective
/// at every vertex the pointwise solutions intertwine automatically;
/// otherwise solve the coupled system with the intertwining rows included.
pub(crate) fn solve_post(
    p: u64,
    w: &LinRepObject,
    x: &LinRepObject,
    y: &LinRepObject,
    a: &[Mat],
    b: &[Mat],
) -> Option<Vec<Mat>> {
    if a.iter().all(|m| m.rank() == m.cols()) {
        let mut out = Vec::new();
        for (av, bv) in a.iter().zip(b) {
            out.push(av.solve(bv)?);
        }
        return Some(out);
    }
    let (off, total) = offsets(w, x);
    let inter = intertwining_rows(p, w, x, &off, total);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut rhs: Vec<u64> = vec![0; inter.rows()];
    for v in 0..w.vertices() {
        for r in 0..y.dims[v] {
            for c in 0..w.dims[v] {
                let mut row = vec![0u64; total];
                for s in 0..x.dims[v] {
                    row[off[v] + c * x.dims[v] + s] = a[v].get(r, s);
                }
                rows.push(row);
                rhs.push(b[v].get(r, c));
            }
        }
    }
    let count = rows.len();
    let sys = inter.vstack(&Mat::new(count, total, p, 1, rows.concat()));
    let rhs = Mat::new(sys.rows(), 1, p, 1, rhs);
    let sol = sys.solve(&rhs)?;
    Some(unflatten(p, w, x, &off, &sol, 0))
}

/// Canonical h with h a = b for a: X -> Y, b: X -> Z; dual fast path when a
/// is surjective at every vertex.
pub(crate) fn solve_pre(
    p: u64,
    x: &LinRepObject,
    y: &LinRepObject,
    z: &LinRepObject,
    a: &[Mat],
    b: &[Mat],
) -> Option<Vec<Mat>> {
    if a.iter().all(|m| m.rank() == m.rows()) {
        let mut out = Vec::new();
        for (av, bv) in a.iter().zip(b) {
            out.push(av.solve_left(bv)?);
        }
        return Some(out);
    }
    let (off, total) = offsets(y, z);
    let inter = intertwining_rows(p, y, z, &off, total);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut rhs: Vec<u64> = vec![0; inter.rows()];
    for v in 0..x.vertices() {
        for r in 0..z.dims[v] {
            for c in 0..x.dims[v] {
                let mut row = vec![0u64; total];
                for s in 0..y.dims[v] {
                    row[off[v] + s * z.dims[v] + r] = a[v].get(s, c);
                }
                rows.push(row);
                rhs.push(b[v].get(r, c));
            }
        }
    }
    let count = rows.len();
    let sys = inter.vstack(&Mat::new(count, total, p, 1, rows.concat()));
    let rhs = Mat::new(sys.rows(), 1, p, 1, rhs);
    let sol = sys.solve(&rhs)?;
    Some(unflatten(p, y, z, &off, &sol, 0))
}

pub(crate) fn random_object<R: Rng>(rng: &mut R, p: u64, n: usize, max_dim: usize) -> LinRepObject {
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps: Vec<Mat> = (0..n - 1)
        .map(|v| Mat::from_fn(dims[v + 1], dims[v], p, 1, |_, _| rng.gen_range(0..p)))
        .collect();
    LinRepObject::new(dims, maps)
}

pub(crate) fn random_morphism_mats<R: Rng>(
    rng: &mut R,
    p: u64,
    x: &LinRepObject,
    y: &LinRepObject,
) -> Vec<Mat> {
    let basis = hom_basis(p, x, y);
    let mut mats: Vec<Mat> = (0..x.vertices())
        .map(|v| Mat::zeros(y.dims[v], x.dims[v], p, 1))
        .collect();
    for b in &basis {
        let c = rng.gen_range(0..p);
        for (m, add) in mats.iter_mut().zip(b) {
            *m = m.add(&add.scale(c));
        }
    }
    mats
}

/// Invertible matrix over F_p by rejection; identity fallback.
pub(crate) fn random_invertible<R: Rng>(rng: &mut R, p: u64, s: usize, tries: usize) -> Mat {
    for _ in 0..tries {
        let cand = Mat::from_fn(s, s, p, 1, |_, _| rng.gen_range(0..p));
        if cand.rank() == s {
            return cand;
        }
    }
    Mat::identity(s, p, 1)
}

/// Random automorphism of the canonical injective: one block-triangular
/// matrix over the interval families (maps [0, a] -> [0, b] exist only for
/// b <= a), with invertible diagonal blocks, restricted at each vertex to
/// the families still alive there.
pub(crate) fn random_canonical_aut<R: Rng>(rng: &mut R, p: u64, mult: &[usize]) -> Vec<Mat> {
    let n = mult.len();
    let mut grid: Vec<Vec<Mat>> = Vec::new();
    for b in 0..n {
        let mut row = Vec::new();
        for a in 0..n {
            row.push(if b < a {
                Mat::from_fn(mult[b], mult[a], p, 1, |_, _| rng.gen_range(0..p))
            } else if b == a {
                random_invertible(rng, p, mult[a], 64)
            } else {
                Mat::zeros(mult[b], mult[a], p, 1)
            });
        }
        grid.push(row);
    }
    (0..n)
        .map(|v| {
            let width: usize = mult[v..].iter().sum();
            let mut out = Mat::zeros(0, width, p, 1);
            for b in v..n {
                let mut band = Mat::zeros(mult[b], 0, p, 1);
                for cell in &grid[b][v..] {
                    band = band.hstack(cell);
                }
                out = out.vstack(&band);
            }
            out
        })
        .collect()
}

/// Random admissible mono into an injective: the evaluation embedding with
/// optional extra interval copies, twisted by a random automorphism of the
/// container.
pub(crate) fn random_embedding<R: Rng>(
    rng: &mut R,
    p: u64,
    o: &LinRepObject,
) -> (LinRepObject, Vec<Mat>) {
    let n = o.vertices();
    let mut mult = o.dims().to_vec();
    if rng.gen_bool(0.5) {
        mult[rng.gen_range(0..n)] += rng.gen_range(1..=2);
    }
    let (container, embed) = eval_embedding(p, o, &mult);
    let aut = random_canonical_aut(rng, p, &mult);
    let mats = aut.iter().zip(&embed).map(|(a, e)| a.mul(e)).collect();
    (container, mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(p: u64, dims: &[usize], maps: Vec<Mat>) -> LinRepObject {
        let o = LinRepObject::new(dims.to_vec(), maps);
        validate_object(p, dims.len(), &o).unwrap();
        o
    }

    #[test]
    fn interval_multiplicities_match_hand_counts() {
        // identity on (1, 1): one copy of [0, 1]
        let id = obj(2, &[1, 1], vec![Mat::identity(1, 2, 1)]);
        assert_eq!(
            interval_multiplicities(2, &id),
            vec![vec![0, 1], vec![0, 0]]
        );
        // zero map on (1, 1): [0, 0] + [1, 1]
        let zero = obj(2, &[1, 1], vec![Mat::zeros(1, 1, 2, 1)]);
        assert_eq!(
            interval_multiplicities(2, &zero),
            vec![vec![1, 0], vec![0, 1]]
        );
        // full-rank (2, 1): [0, 0] + [0, 1]
        let wide = obj(2, &[2, 1], vec![Mat::new(1, 2, 2, 1, vec![1, 0])]);
        assert_eq!(
            interval_multiplicities(2, &wide),
            vec![vec![1, 1], vec![0, 0]]
        );
    }

    #[test]
    fn conservation_of_multiplicities() {
        let o = obj(
            3,
            &[2, 3, 1],
            vec![
                Mat::new(3, 2, 3, 1, vec![1, 2, 0, 1, 0, 0]),
                Mat::new(1, 3, 3, 1, vec![1, 1, 2]),
            ],
        );
        let mult = interval_multiplicities(3, &o);
        for v in 0..3 {
            let covering: usize = (0..=v)
                .map(|a| (v..3).map(|b| mult[a][b]).sum::<usize>())
                .sum();
            assert_eq!(covering, o.dims()[v]);
        }
    }

    #[test]
    fn injectivity_is_surjectivity_of_structure_maps() {
        assert!(is_injective(&interval(2, 3, 0, 1)));
        assert!(!is_injective(&interval(2, 3, 1, 2)));
        let zero = obj(2, &[1, 1], vec![Mat::zeros(1, 1, 2, 1)]);
        assert!(!is_injective(&zero));
    }

    #[test]
    fn eval_embedding_of_a_late_interval() {
        // [1, 1] in A_2 embeds into the full interval [0, 1]
        let o = interval(2, 2, 1, 1);
        let (container, mats) = eval_embedding(2, &o, o.dims());
        assert_eq!(container.dims(), &[1, 1]);
        validate_morphism(2, &o, &container, &mats).unwrap();
        assert!(is_injective(&container));
        let (coker, _) = cokernel(2, &container, &mats);
        assert_eq!(coker.dims(), &[1, 0]);
    }

    #[test]
    fn decompose_recovers_interval_content() {
        // dims (2, 1) with surjective structure map: one [0, 0] and one [0, 1]
        let o = obj(2, &[2, 1], vec![Mat::new(1, 2, 2, 1, vec![1, 1])]);
        let dec = decompose_injective(2, &o);
        assert_eq!(dec.mult, vec![1, 1]);
        assert_eq!(dec.u[0], Mat::new(2, 2, 2, 1, vec![1, 1, 1, 0]));
        assert_eq!(dec.u[1], Mat::identity(1, 2, 1));
        validate_morphism(2, &canonical_injective(2, &dec.mult), &o, &dec.u).unwrap();
        for v in 0..2 {
            assert!(dec.u[v].mul(&dec.u_inv[v]).is_identity());
        }
    }

    #[test]
    fn lift_extends_along_embeddings() {
        let e = interval(2, 2, 1, 1);
        let (container, mu) = eval_embedding(2, &e, e.dims());
        let dec = decompose_injective(2, &container);
        let g = lift_through_decomposition(2, &dec, &container, &mu, &mu).unwrap();
        validate_morphism(2, &container, &container, &g).unwrap();
        for v in 0..2 {
            assert_eq!(g[v].mul(&mu[v]), mu[v]);
        }
    }

    #[test]
    fn coupled_solver_respects_intertwining() {
        // no retraction of [1, 1] -> [0, 1]: pointwise solvable, globally not
        let e = interval(2, 2, 1, 1);
        let (container, mu) = eval_embedding(2, &e, e.dims());
        let idmats: Vec<Mat> = e.dims().iter().map(|&d| Mat::identity(d, 2, 1)).collect();
        assert!(solve_pre(2, &e, &container, &e, &mu, &idmats).is_none());

        // the diagonal into a doubled object does retract
        let x = interval(2, 2, 0, 1);
        let doubled = obj(2, &[2, 2], vec![Mat::identity(2, 2, 1)]);
        let diag: Vec<Mat> = (0..2).map(|_| Mat::new(2, 1, 2, 1, vec![1, 1])).collect();
        validate_morphism(2, &x, &doubled, &diag).unwrap();
        let idx: Vec<Mat> = x.dims().iter().map(|&d| Mat::identity(d, 2, 1)).collect();
        let h = solve_pre(2, &x, &doubled, &x, &diag, &idx).unwrap();
        validate_morphism(2, &doubled, &x, &h).unwrap();
        for v in 0..2 {
            assert!(h[v].mul(&diag[v]).is_identity());
        }
    }

    #[test]
    fn image_recomposes_and_kernel_dims_complement() {
        let b = Mat::new(2, 2, 2, 1, vec![1, 1, 0, 0]);
        let o = obj(2, &[2, 2], vec![b.clone()]);
        // the structure map commutes with itself, so (b, b) is an endomorphism
        let f: Vec<Mat> = vec![b.clone(), b];
        validate_morphism(2, &o, &o, &f).unwrap();
        let (mid, epis, monos) = image(2, &o, &f);
        for v in 0..2 {
            assert_eq!(monos[v].mul(&epis[v]), f[v]);
        }
        let (ker, kmonos) = kernel(2, &o, &f);
        for v in 0..2 {
            assert_eq!(ker.dims()[v] + mid.dims()[v], o.dims()[v]);
            assert!(f[v].mul(&kmonos[v]).is_zero());
        }
    }

    #[test]
    fn random_embedding_is_valid_and_injective() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let o = random_object(&mut rng, 3, 3, 3);
            let (container, mats) = random_embedding(&mut rng, 3, &o);
            validate_morphism(3, &o, &container, &mats).unwrap();
            assert!(is_injective(&container));
            assert!(mats.iter().all(|m| m.rank() == m.cols()));
        }
    }

    #[test]
    fn hom_basis_spans_valid_morphisms() {
        let x = interval(2, 2, 0, 1);
        let y = obj(2, &[2, 2], vec![Mat::identity(2, 2, 1)]);
        let basis = hom_basis(2, &x, &y);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            validate_morphism(2, &x, &y, b).unwrap();
        }
    }
}
