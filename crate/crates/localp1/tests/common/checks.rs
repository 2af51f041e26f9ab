//! Property checks shared by the property suites and the acceptance run.
//! Each returns a one-line summary on success and a description of the
//! first counterexample on failure.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use localp1::bistellar::{apply_move, enumerate_moves, induced_move, sphere_complexity, InducedMove, MoveChain};
use localp1::complex::{OrientedComplex, Simplex, Vertex};
use localp1::cycles::{
    certificate_holds, decompose, evaluate_cycle, omega, relabel_cycle, reverse_cycle, rho, DecomposeOptions,
};
use localp1::reducer::{canonical_kappa, close_paths, relabel_chain, smallest_unused};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{random_move, random_sphere, rng, simplex_sphere};

pub type Check = Result<String, String>;

/// Apply a random move, then its inverse; the original must come back.
pub fn move_round_trips(cases: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    for i in 0..cases {
        let d = if i % 2 == 0 { 2 } else { 3 };
        let z = random_sphere(d, r.gen_range(0..14), 0.55, &mut r);
        let m = random_move(&z, 0.3, &mut r);
        let y = apply_move(&z, &m).map_err(|e| format!("case {i}: {e}"))?;
        if !y.is_consistent() {
            return Err(format!("case {i}: {m} gives an inconsistent orientation"));
        }
        let back = apply_move(&y, &m.inverse()).map_err(|e| format!("case {i}: inverse: {e}"))?;
        if back != z {
            return Err(format!("case {i}: {m} followed by its inverse changes the sphere"));
        }
    }
    Ok(format!("{cases} round trips on 2- and 3-spheres"))
}

/// All labeled 3-spheres with vertices in `1..=max_label`, reachable from
/// `∂Δ⁴` by bistellar moves.
pub fn small_3spheres(max_label: Vertex) -> Vec<OrientedComplex> {
    let s = simplex_sphere(3);
    let mut seen = HashSet::from([s.clone()]);
    let mut order = vec![s.clone()];
    let mut queue = VecDeque::from([s]);
    while let Some(z) = queue.pop_front() {
        let used: BTreeSet<Vertex> = z.vertices().into_iter().collect();
        let label = smallest_unused(&used);
        for m in enumerate_moves(&z, label) {
            if label > max_label && m.tau.len() == 1 {
                continue;
            }
            let y = apply_move(&z, &m).expect("enumerated moves apply");
            if seen.insert(y.clone()) {
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    order
}

fn link_of(z: &OrientedComplex, v: Vertex) -> OrientedComplex {
    z.induced_link(&Simplex::from_sorted(&[v]))
        .expect("vertex of the complex")
}

/// For every sphere, move and vertex: the link after the move equals the
/// induced move applied to the link before it.
pub fn induced_move_commutation(max_label: Vertex) -> Check {
    let spheres = small_3spheres(max_label);
    let mut checks = 0usize;
    for z in &spheres {
        let used: BTreeSet<Vertex> = z.vertices().into_iter().collect();
        let label = smallest_unused(&used);
        for m in enumerate_moves(z, label) {
            let y = apply_move(z, &m).map_err(|e| e.to_string())?;
            let mut vs: BTreeSet<Vertex> = used.clone();
            vs.extend(m.tau.vertices());
            for v in vs {
                checks += 1;
                let ok = match induced_move(&m, v) {
                    InducedMove::Identity => link_of(z, v) == link_of(&y, v),
                    InducedMove::Move(lm) => apply_move(&link_of(z, v), &lm).ok() == Some(link_of(&y, v)),
                    InducedMove::Created => {
                        let l = link_of(&y, v);
                        l.vertices() == m.sigma.vertices() && l.num_facets() == m.sigma.len()
                    }
                    InducedMove::Removed => {
                        let l = link_of(z, v);
                        l.vertices() == m.tau.vertices() && l.num_facets() == m.tau.len() && !y.has_vertex(v)
                    }
                };
                if !ok {
                    return Err(format!("move {m} and vertex {v} do not commute with taking links"));
                }
            }
        }
    }
    Ok(format!("{} spheres, {checks} (move, vertex) pairs", spheres.len()))
}

/// `κ` is deterministic, strictly decreasing, ends at a tetrahedron, and
/// commutes with order-preserving relabelings.
pub fn kappa_determinism(cases: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    for i in 0..cases {
        let z = random_sphere(2, r.gen_range(0..16), 0.6, &mut r);
        let a = canonical_kappa(&z).map_err(|e| format!("case {i}: {e}"))?;
        let b = canonical_kappa(&z.clone()).map_err(|e| format!("case {i}: {e}"))?;
        let ta = MoveChain::from_complexes(&a).map_err(|e| e.to_string())?.trace();
        let tb = MoveChain::from_complexes(&b).map_err(|e| e.to_string())?.trace();
        if ta != tb {
            return Err(format!("case {i}: two runs of the canonical reduction differ"));
        }
        if a.last().map(|x| x.num_vertices()) != Some(4) {
            return Err(format!("case {i}: reduction does not end at a tetrahedron"));
        }
        if a.windows(2)
            .any(|w| sphere_complexity(&w[1]) >= sphere_complexity(&w[0]))
        {
            return Err(format!("case {i}: reduction is not strictly decreasing"));
        }
        // Shifting all labels by a constant preserves their order.
        let shift: HashMap<Vertex, Vertex> = z.vertices().into_iter().map(|v| (v, v + 100)).collect();
        let shifted = canonical_kappa(&z.relabel(&shift)).map_err(|e| e.to_string())?;
        if shifted != relabel_cycle(&a, &shift) {
            return Err(format!(
                "case {i}: reduction not equivariant under an order-preserving relabeling"
            ));
        }
    }
    Ok(format!("{cases} spheres replayed bit-exactly"))
}

/// A random closed walk in the graph of labeled 2-spheres: random moves
/// from a random sphere, then back through the canonical reductions.
pub fn random_cycle(r: &mut ChaCha8Rng) -> Vec<OrientedComplex> {
    let s = random_sphere(2, r.gen_range(0..8), 0.6, r);
    random_cycle_at(&s, r)
}

pub fn random_cycle_at(s: &OrientedComplex, r: &mut ChaCha8Rng) -> Vec<OrientedComplex> {
    let mut walk = vec![s.clone()];
    for _ in 0..r.gen_range(1..9) {
        let z = walk.last().unwrap();
        let m = random_move(z, 0.35, r);
        walk.push(apply_move(z, &m).unwrap());
    }
    let k_end = canonical_kappa(walk.last().unwrap()).unwrap();
    let mut k_start = canonical_kappa(s).unwrap();
    let bridge = relabel_chain(k_end.last().unwrap(), k_start.last().unwrap()).unwrap();
    k_start.reverse();
    close_paths(&[&walk, &k_end, &bridge, &k_start]).unwrap()
}

/// Decompositions of random cycles satisfy the edge-multiset certificate.
pub fn decomposition_certificates(cases: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let opts = DecomposeOptions::default();
    let mut entries = 0;
    for i in 0..cases {
        let c = random_cycle(&mut r);
        let dec = decompose(&c, &opts).map_err(|e| format!("case {i}: {e}"))?;
        if !certificate_holds(&c, &dec) {
            return Err(format!("case {i}: certificate fails"));
        }
        entries += dec.entries.len();
    }
    Ok(format!(
        "{cases} cycles, {entries} elementary terms, all certificates hold"
    ))
}

/// Evaluation is additive under concatenation at a common base point, odd
/// under reversal, and invariant under rotation and relabeling.
pub fn additivity_and_reversal(cases: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let opts = DecomposeOptions::default();
    let ev = |c: &[OrientedComplex]| evaluate_cycle(c, &opts).map_err(|e| e.to_string());
    let mut nonzero = 0;
    for i in 0..cases {
        let s = random_sphere(2, r.gen_range(0..8), 0.6, &mut r);
        let c1 = random_cycle_at(&s, &mut r);
        let c2 = random_cycle_at(&s, &mut r);
        let (v1, v2) = (ev(&c1)?, ev(&c2)?);
        let mut joined = c1.clone();
        joined.extend(c2.iter().cloned());
        if ev(&joined)? != &v1 + &v2 {
            return Err(format!("case {i}: not additive"));
        }
        if ev(&reverse_cycle(&c1))? != -v1.clone() {
            return Err(format!("case {i}: reversal does not negate"));
        }
        let k = r.gen_range(0..c1.len());
        let mut rotated = c1[k..].to_vec();
        rotated.extend_from_slice(&c1[..k]);
        if ev(&rotated)? != v1 {
            return Err(format!("case {i}: rotation changes the value"));
        }
        let mut labels: BTreeSet<Vertex> = BTreeSet::new();
        for z in &c1 {
            labels.extend(z.vertices());
        }
        let mut pool: Vec<Vertex> = (1..=(2 * labels.len() as Vertex + 2)).collect();
        pool.shuffle(&mut r);
        let map: HashMap<Vertex, Vertex> = labels.into_iter().zip(pool).collect();
        if ev(&relabel_cycle(&c1, &map))? != v1 {
            return Err(format!("case {i}: relabeling changes the value"));
        }
        if v1 != BigRational::from_integer(BigInt::from(0)) {
            nonzero += 1;
        }
    }
    Ok(format!("{cases} cycle pairs ({nonzero} with nonzero value)"))
}

/// `ρ` and `ω` match the closed forms, computed independently in `i128`,
/// for all parameters up to 20.
pub fn table_values() -> Check {
    let q = |n: i128, d: i128| BigRational::new(BigInt::from(n), BigInt::from(d));
    for p in 0..=20i64 {
        let pi = p as i128;
        if omega(p) != q(1, (pi + 2) * (pi + 3)) {
            return Err(format!("omega({p})"));
        }
        if p > 0 && omega(p) >= omega(p - 1) {
            return Err(format!("omega not decreasing at {p}"));
        }
        for qq in 0..=20i64 {
            let (a, b) = (p as i128, qq as i128);
            let s = a + b;
            if rho(p, qq) != q(b - a, (s + 2) * (s + 3) * (s + 4)) {
                return Err(format!("rho({p}, {qq})"));
            }
            if rho(qq, p) != -rho(p, qq) {
                return Err(format!("rho antisymmetry at ({p}, {qq})"));
            }
        }
        if rho(-1, p) != omega(p) || rho(p, -1) != -omega(p) {
            return Err(format!("rho(-1, {p}) != omega({p})"));
        }
    }
    if rho(0, 1) != q(1, 60) || omega(0) != q(1, 6) || omega(1) != q(1, 12) {
        return Err("spot values".into());
    }
    Ok("rho and omega exact for all parameters 0..=20".into())
}
