//! Sphere reduction: a seeded heuristic taking 3-spheres to `∂Δ⁴`, the
//! canonical complexity-descent reduction `κ` of labeled 2-spheres, and the
//! relabeling chain `ζ` between two labeled tetrahedron boundaries.
//!
//! Chains are represented as sequences of complexes, consecutive entries
//! differing by one bistellar move; [`MoveChain::from_complexes`] recovers
//! the moves.
//!
//! [`MoveChain::from_complexes`]: crate::bistellar::MoveChain::from_complexes

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::bistellar::{apply_move, enumerate_moves, enumerate_reducing_moves, sphere_complexity, BistellarMove};
use crate::complex::{OrientedComplex, Simplex, Vertex};
use crate::error::{Error, Result};

/// Configuration of the 3-sphere reduction heuristic.
#[derive(Clone, Copy, Debug)]
pub struct ReducerConfig {
    /// User seed mixed into the per-sphere RNG seed.
    pub seed: u64,
    /// Maximum number of moves per attempt.
    pub budget: usize,
    /// Number of attempts (each with a fresh RNG stream) before giving up.
    pub restarts: usize,
}

impl Default for ReducerConfig {
    fn default() -> Self {
        ReducerConfig {
            seed: 0,
            budget: 100_000,
            restarts: 8,
        }
    }
}

/// Smallest positive label not in `used`.
pub fn smallest_unused(used: &BTreeSet<Vertex>) -> Vertex {
    let mut x = 1;
    for &u in used {
        if u == x {
            x += 1;
        } else if u > x {
            break;
        }
    }
    x
}

/// RNG seed derived from the user seed and the labeled signed facet list.
pub fn sphere_seed(z: &OrientedComplex, seed: u64) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    for (f, &s) in z.facets() {
        for v in f.vertices() {
            h.update(v.to_le_bytes());
        }
        h.update([s as u8]);
    }
    h.finalize().into()
}

/// Reduces a 3-sphere to a boundary of the 4-simplex.
///
/// Energy: vertex removals are taken first (lowest `σ`), then edge moves
/// (the first one with probability 4/5, otherwise a random one), and only
/// when neither exists a random triangle flip or, rarely, a vertex insertion.
/// New vertices get the smallest label never used in the chain so far.
pub fn reduce_3sphere(z: &OrientedComplex, cfg: &ReducerConfig) -> Result<Vec<OrientedComplex>> {
    if z.facet_size() != 4 {
        return Err(Error::Consistency(
            "reduce_3sphere needs a 3-dimensional complex".into(),
        ));
    }
    let mut rng = ChaCha8Rng::from_seed(sphere_seed(z, cfg.seed));
    let mut total = 0;
    for attempt in 0..cfg.restarts.max(1) {
        rng.set_stream(attempt as u64);
        match reduce_attempt(z, cfg.budget, &mut rng) {
            Some(chain) => return Ok(chain),
            None => total += cfg.budget,
        }
    }
    Err(Error::ReductionStalled { moves: total })
}

fn reduce_attempt(z: &OrientedComplex, budget: usize, rng: &mut ChaCha8Rng) -> Option<Vec<OrientedComplex>> {
    let mut used: BTreeSet<Vertex> = z.vertices().into_iter().collect();
    let mut cur = z.clone();
    let mut chain = vec![cur.clone()];
    let mut steps = 0;
    while cur.num_facets() > 5 {
        if steps >= budget {
            return None;
        }
        let label = smallest_unused(&used);
        let moves = enumerate_moves(&cur, label);
        let mut by: [Vec<&BistellarMove>; 4] = Default::default();
        for m in &moves {
            by[m.sigma.len() - 1].push(m);
        }
        let m = if let Some(m) = by[0].first() {
            *m
        } else if !by[1].is_empty() {
            if rng.gen_bool(0.8) {
                by[1][0]
            } else {
                by[1][rng.gen_range(0..by[1].len())]
            }
        } else if !by[2].is_empty() && rng.gen_bool(0.9) {
            by[2][rng.gen_range(0..by[2].len())]
        } else {
            let pool: Vec<&BistellarMove> = by[3].iter().chain(by[2].iter()).copied().collect();
            pool[rng.gen_range(0..pool.len())]
        };
        cur = apply_move(&cur, m).ok()?;
        used.extend(m.tau.vertices());
        chain.push(cur.clone());
        steps += 1;
    }
    Some(chain)
}

/// The canonical reduction of a labeled 2-sphere: repeatedly apply the
/// first complexity-decreasing move in the order (vertex removals before
/// edge flips, then by `σ`), ending at a tetrahedron boundary.
pub fn canonical_kappa(z: &OrientedComplex) -> Result<Vec<OrientedComplex>> {
    let mut cur = z.clone();
    let mut path = vec![cur.clone()];
    while cur.num_vertices() > 4 {
        let a = sphere_complexity(&cur);
        let mut next = None;
        for m in enumerate_reducing_moves(&cur) {
            let y = apply_move(&cur, &m)?;
            if sphere_complexity(&y) < a {
                next = Some(y);
                break;
            }
        }
        cur = next.ok_or_else(|| Error::DecompositionFailed("no complexity-decreasing move on a 2-sphere".into()))?;
        path.push(cur.clone());
    }
    Ok(path)
}

fn vertex_move(z: &OrientedComplex, v: Vertex) -> BistellarMove {
    let tau = Simplex::from_sorted(&z.neighbours(v));
    BistellarMove::new(Simplex::from_sorted(&[v]), tau)
}

/// Replaces label `u1` by `u2` with three moves: insert `u2` into the first
/// triangle at `u1`, flip an edge at `u1` so that `u1` has degree three,
/// remove `u1`.
pub fn replace_label(z: &OrientedComplex, u1: Vertex, u2: Vertex) -> Result<Vec<OrientedComplex>> {
    let tri = z
        .facets()
        .keys()
        .find(|f| f.contains(u1))
        .ok_or(Error::UnknownVertex(u1))?
        .clone();
    let mut cur = apply_move(z, &BistellarMove::new(tri, Simplex::from_sorted(&[u2])))?;
    let mut path = vec![z.clone(), cur.clone()];
    if cur.facet_degree(u1) == 4 {
        let mut done = false;
        for m in enumerate_reducing_moves(&cur) {
            if m.sigma.len() == 2 && m.sigma.contains(u1) && !m.sigma.contains(u2) {
                let y = apply_move(&cur, &m)?;
                if y.facet_degree(u1) == 3 {
                    cur = y;
                    path.push(cur.clone());
                    done = true;
                    break;
                }
            }
        }
        if !done {
            return Err(Error::Consistency("relabeling gadget found no flip".into()));
        }
    }
    let m = vertex_move(&cur, u1);
    cur = apply_move(&cur, &m)?;
    path.push(cur);
    Ok(path)
}

/// Chain between two labeled tetrahedron boundaries, changing one label at
/// a time; a final three-label rotation fixes the orientation if needed.
pub fn relabel_chain(d1: &OrientedComplex, d2: &OrientedComplex) -> Result<Vec<OrientedComplex>> {
    let mut path = vec![d1.clone()];
    let target: BTreeSet<Vertex> = d2.vertices().into_iter().collect();
    let mut cur = d1.clone();
    loop {
        let have: BTreeSet<Vertex> = cur.vertices().into_iter().collect();
        if have == target {
            break;
        }
        let u1 = *have.difference(&target).next().expect("sets differ");
        let u2 = *target.difference(&have).next().expect("same size");
        let p = replace_label(&cur, u1, u2)?;
        cur = p.last().expect("nonempty").clone();
        path.extend(p.into_iter().skip(1));
    }
    if cur != *d2 {
        let v = cur.vertices();
        let (a, b) = (v[0], v[1]);
        let t = v[v.len() - 1] + 1;
        for (x, y) in [(a, t), (b, a), (t, b)] {
            let p = replace_label(&cur, x, y)?;
            cur = p.last().expect("nonempty").clone();
            path.extend(p.into_iter().skip(1));
        }
    }
    if cur != *d2 {
        return Err(Error::Consistency("relabeling chain missed its target".into()));
    }
    Ok(path)
}

/// Concatenates paths sharing endpoints into a closed cycle, returned
/// without repeating the base point.
pub fn close_paths(paths: &[&[OrientedComplex]]) -> Result<Vec<OrientedComplex>> {
    let mut out: Vec<OrientedComplex> = paths.first().ok_or(Error::EmptyInput)?.to_vec();
    for p in &paths[1..] {
        if out.last() != p.first() {
            return Err(Error::Consistency("paths do not share endpoints".into()));
        }
        out.extend(p.iter().skip(1).cloned());
    }
    if out.first() != out.last() {
        return Err(Error::Consistency("concatenated path is not closed".into()));
    }
    out.pop();
    Ok(out)
}
