//! Shared helpers for the integration tests: random spheres built by
//! random bistellar walks from the boundary of a simplex.
#![allow(dead_code)]

use std::collections::HashMap;

use localp1::bistellar::{apply_move, enumerate_reducing_moves, BistellarMove};
use localp1::complex::{OrientedComplex, Simplex, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Oriented boundary of the simplex on `1..=d+2`, a `d`-sphere.
pub fn simplex_sphere(d: usize) -> OrientedComplex {
    let vs: Vec<Vertex> = (1..=(d as Vertex + 2)).collect();
    OrientedComplex::boundary_of_simplex(&vs).unwrap()
}

/// A random `d`-sphere: `steps` random moves from `∂Δ^{d+1}`, inserting a
/// vertex with probability `grow` and otherwise applying a random
/// applicable non-inserting move.
pub fn random_sphere(d: usize, steps: usize, grow: f64, r: &mut ChaCha8Rng) -> OrientedComplex {
    let mut z = simplex_sphere(d);
    for _ in 0..steps {
        z = random_step(&z, grow, r);
    }
    z
}

pub fn random_move(z: &OrientedComplex, grow: f64, r: &mut ChaCha8Rng) -> BistellarMove {
    let moves = enumerate_reducing_moves(z);
    if moves.is_empty() || r.gen_bool(grow) {
        let facets: Vec<&Simplex> = z.facets().keys().collect();
        let f = (*facets.choose(r).unwrap()).clone();
        let label = z.vertices().last().copied().unwrap_or(0) + 1;
        BistellarMove::new(f, Simplex::from_sorted(&[label]))
    } else {
        moves.choose(r).unwrap().clone()
    }
}

pub fn random_step(z: &OrientedComplex, grow: f64, r: &mut ChaCha8Rng) -> OrientedComplex {
    let m = random_move(z, grow, r);
    apply_move(z, &m).unwrap()
}

/// A random relabeling of the vertices into `1..=2n`.
pub fn random_relabeling(z: &OrientedComplex, r: &mut ChaCha8Rng) -> OrientedComplex {
    let vs = z.vertices();
    let mut pool: Vec<Vertex> = (1..=(2 * vs.len() as Vertex)).collect();
    pool.shuffle(r);
    let map: HashMap<Vertex, Vertex> = vs.iter().copied().zip(pool).collect();
    z.relabel(&map)
}

pub mod checks;
pub mod snf_oracle;
