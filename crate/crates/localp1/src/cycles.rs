//! Cycles of labeled 2-spheres: per-vertex walk analysis, decomposition
//! into elementary cycles by induction on complexity, and evaluation of the
//! cocycle through the `ρ`/`ω` table.
//!
//! A cycle is a cyclic sequence of labeled oriented 2-spheres, consecutive
//! spheres (and the last and first) differing by one bistellar move.
//!
//! # Evaluation through vertex walks
//!
//! Every elementary cycle is evaluated from its realization. For each vertex
//! `u` we follow its oriented link polygon around the cycle. After removing
//! repetitions and back-tracks the walk is either empty (no contribution),
//! a *square* `Q → Q∖x → Q∖{x,y} → Q∖y → Q` contributing `ρ(s₁−1, s₂−1)`
//! where `s₁`, `s₂` count the polygon vertices strictly between `x` and `y`
//! on either side, or it passes through a vertex insertion/removal
//! (*unresolved*). Type 1 cycles have no unresolved vertices; type 2a has two
//! and carries the constant `−1/12`; type 2b has one and no constant. The
//! identity `ρ(−1, q) = ω(q)` turns the vertex terms into the `ω` entries of
//! the table.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bistellar::{
    apply_move, diff_move, enumerate_reducing_moves, is_applicable, move_complexity, sphere_complexity, BistellarMove,
    Complexity,
};
use crate::complex::{OrientedComplex, Simplex, Vertex};
use crate::error::{Error, Result};

/// `ρ(p, q) = (q − p) / ((p+q+2)(p+q+3)(p+q+4))`.
pub fn rho(p: i64, q: i64) -> BigRational {
    let s = p + q;
    BigRational::new(BigInt::from(q - p), BigInt::from((s + 2) * (s + 3) * (s + 4)))
}

/// `ω(p) = 1 / ((p+2)(p+3))`.
pub fn omega(p: i64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from((p + 2) * (p + 3)))
}

fn twelfth() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(12))
}

/// The twelve catalogued elementary cycle kinds, plus the base case of
/// cycles through spheres with at most five vertices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ElementaryKind {
    T1a,
    T1b,
    T1c,
    T1d,
    T1e,
    T1f,
    T1g,
    T1h,
    T1i,
    T2a,
    T2b,
    T2c,
    /// A residual cycle of complexity at most `5 1/6`; its value is zero.
    Base,
}

impl ElementaryKind {
    pub const ALL: [ElementaryKind; 13] = [
        ElementaryKind::T1a,
        ElementaryKind::T1b,
        ElementaryKind::T1c,
        ElementaryKind::T1d,
        ElementaryKind::T1e,
        ElementaryKind::T1f,
        ElementaryKind::T1g,
        ElementaryKind::T1h,
        ElementaryKind::T1i,
        ElementaryKind::T2a,
        ElementaryKind::T2b,
        ElementaryKind::T2c,
        ElementaryKind::Base,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElementaryKind::T1a => "1a",
            ElementaryKind::T1b => "1b",
            ElementaryKind::T1c => "1c",
            ElementaryKind::T1d => "1d",
            ElementaryKind::T1e => "1e",
            ElementaryKind::T1f => "1f",
            ElementaryKind::T1g => "1g",
            ElementaryKind::T1h => "1h",
            ElementaryKind::T1i => "1i",
            ElementaryKind::T2a => "2a",
            ElementaryKind::T2b => "2b",
            ElementaryKind::T2c => "2c",
            ElementaryKind::Base => "base",
        }
    }

    /// Names of the angle parameters, in table order.
    pub fn param_names(self) -> &'static [char] {
        match self {
            ElementaryKind::T1b
            | ElementaryKind::T1c
            | ElementaryKind::T1e
            | ElementaryKind::T1f
            | ElementaryKind::T1h
            | ElementaryKind::T1i => &['p', 'q'],
            ElementaryKind::T2a => &['p', 'q', 'r'],
            ElementaryKind::T2b => &['p', 'q', 'r', 'k'],
            ElementaryKind::T2c => &['p', 'q', 'r', 'k', 'l'],
            _ => &[],
        }
    }
}

impl fmt::Display for ElementaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ElementaryKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ElementaryKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// Table value of an elementary cycle with the given parameters (in the
/// order of [`ElementaryKind::param_names`]).
pub fn evaluate_elementary(kind: ElementaryKind, params: &[i64]) -> Result<BigRational> {
    if params.len() != kind.param_names().len() {
        return Err(Error::DecompositionFailed(format!(
            "kind {kind} takes {} parameters, got {}",
            kind.param_names().len(),
            params.len()
        )));
    }
    let p = |i: usize| params[i];
    Ok(match kind {
        ElementaryKind::T1a | ElementaryKind::T1d | ElementaryKind::T1g | ElementaryKind::Base => BigRational::zero(),
        ElementaryKind::T1b | ElementaryKind::T1e | ElementaryKind::T1h => rho(p(0), p(1)),
        ElementaryKind::T1c | ElementaryKind::T1i => rho(0, p(1)) - rho(0, p(0)),
        ElementaryKind::T1f => rho(0, p(1)) + rho(0, p(0)),
        ElementaryKind::T2a => omega(p(0)) - omega(p(1)) + omega(p(2)) - twelfth(),
        ElementaryKind::T2b => omega(p(0)) - omega(p(1)) - omega(p(2)) + omega(p(3)),
        ElementaryKind::T2c => omega(p(0)) + omega(p(1)) + omega(p(2)) + omega(p(3)) + omega(p(4)) - twelfth(),
    })
}

/// An elementary cycle: its kind, angle parameters and realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryCycle {
    pub kind: ElementaryKind,
    pub params: Vec<i64>,
    pub realization: Vec<OrientedComplex>,
}

/// One term of a decomposition: the realization traversed once equals
/// `multiplicity` times the table cycle of `kind(params)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionEntry {
    pub cycle: ElementaryCycle,
    pub multiplicity: i64,
    pub value: BigRational,
}

/// An audit row of a decomposition (the realization dropped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionRow {
    pub kind: ElementaryKind,
    pub params: Vec<i64>,
    pub multiplicity: i64,
    pub value: BigRational,
}

impl DecompositionEntry {
    pub fn row(&self) -> DecompositionRow {
        DecompositionRow {
            kind: self.cycle.kind,
            params: self.cycle.params.clone(),
            multiplicity: self.multiplicity,
            value: self.value.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Vertex walks

fn canon(p: &[Vertex]) -> Vec<Vertex> {
    let i = p
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    p[i..].iter().chain(p[..i].iter()).copied().collect()
}

fn polygon_delete(p: &[Vertex], x: Vertex) -> Vec<Vertex> {
    let q: Vec<Vertex> = p.iter().copied().filter(|&v| v != x).collect();
    canon(&q)
}

/// `(s₁, s₂)`: polygon vertices strictly between `x` and `y` going forward
/// from `x`, and going forward from `y`.
fn gaps(p: &[Vertex], x: Vertex, y: Vertex) -> (i64, i64) {
    let n = p.len() as i64;
    let i = p.iter().position(|&v| v == x).expect("x on polygon") as i64;
    let j = p.iter().position(|&v| v == y).expect("y on polygon") as i64;
    let s1 = (j - i).rem_euclid(n) - 1;
    (s1, n - 2 - s1)
}

type Poly = Option<Vec<Vertex>>;

/// Removes repetitions and back-tracks cyclically.
fn reduce_cyclic(mut w: Vec<Poly>) -> Vec<Poly> {
    loop {
        let mut changed = false;
        let mut out: Vec<Poly> = Vec::with_capacity(w.len());
        for p in w {
            if out.last() == Some(&p) {
                changed = true;
                continue;
            }
            out.push(p);
        }
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
            changed = true;
        }
        w = out;
        let n = w.len();
        if n >= 3 {
            for i in 0..n {
                if w[i] == w[(i + 2) % n] {
                    let j = (i + 1) % n;
                    let k = (i + 2) % n;
                    w = if n > 3 {
                        w.iter()
                            .enumerate()
                            .filter(|(t, _)| *t != j && *t != k)
                            .map(|(_, p)| p.clone())
                            .collect()
                    } else {
                        vec![w[i].clone()]
                    };
                    changed = true;
                    break;
                }
            }
        } else if n == 2 {
            w = vec![w[0].clone()];
            changed = true;
        }
        if !changed {
            return if w.len() > 1 { w } else { Vec::new() };
        }
    }
}

/// What one vertex contributes to a cycle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WalkTerm {
    /// The reduced walk is empty.
    Trivial,
    /// A square walk; the term is `ρ(g₁, g₂)`.
    Square { g1: i64, g2: i64 },
    /// The walk passes through a vertex insertion or removal.
    Unresolved,
}

impl WalkTerm {
    pub fn value(self) -> BigRational {
        match self {
            WalkTerm::Square { g1, g2 } => rho(g1, g2),
            _ => BigRational::zero(),
        }
    }

    /// Writes the term as `±ω(p)` when one gap is `−1`.
    fn as_omega(self) -> Option<(i64, i64)> {
        match self {
            WalkTerm::Square { g1: -1, g2 } => Some((1, g2)),
            WalkTerm::Square { g1, g2: -1 } => Some((-1, g1)),
            _ => None,
        }
    }

    /// Writes the term as `±ρ(0, x)` when one gap is `0`.
    fn as_rho0(self) -> Option<(i64, i64)> {
        match self {
            WalkTerm::Square { g1: 0, g2 } => Some((1, g2)),
            WalkTerm::Square { g1, g2: 0 } => Some((-1, g1)),
            _ => None,
        }
    }
}

fn walk_term(w: Vec<Poly>) -> WalkTerm {
    let w = reduce_cyclic(w);
    if w.is_empty() {
        return WalkTerm::Trivial;
    }
    if w.len() == 4 && w.iter().all(|p| p.is_some()) {
        let polys: Vec<&Vec<Vertex>> = w.iter().map(|p| p.as_ref().expect("checked")).collect();
        let sizes: Vec<usize> = polys.iter().map(|p| p.len()).collect();
        let max = *sizes.iter().max().expect("nonempty");
        let i = sizes.iter().position(|&s| s == max).expect("max exists");
        let q = polys[i];
        let n1 = polys[(i + 1) % 4];
        let n2 = polys[(i + 2) % 4];
        let n3 = polys[(i + 3) % 4];
        if n1.len() + 1 == q.len() && n3.len() + 1 == q.len() {
            let xs: Vec<Vertex> = q.iter().copied().filter(|a| !n1.contains(a)).collect();
            let ys: Vec<Vertex> = q.iter().copied().filter(|a| !n3.contains(a)).collect();
            if xs.len() == 1 && ys.len() == 1 {
                let (x, y) = (xs[0], ys[0]);
                if x != y && polygon_delete(q, x) == *n1 && polygon_delete(q, y) == *n3 && polygon_delete(n1, y) == *n2
                {
                    let (s1, s2) = gaps(q, x, y);
                    return WalkTerm::Square { g1: s1 - 1, g2: s2 - 1 };
                }
            }
        }
    }
    WalkTerm::Unresolved
}

/// Per-vertex terms of a cycle of 2-spheres.
pub fn vertex_terms(cycle: &[OrientedComplex]) -> BTreeMap<Vertex, WalkTerm> {
    let vs: BTreeSet<Vertex> = cycle.iter().flat_map(|z| z.vertices()).collect();
    vs.into_iter()
        .map(|u| {
            let w: Vec<Poly> = cycle
                .iter()
                .map(|z| if z.has_vertex(u) { z.polygon(u) } else { None })
                .collect();
            (u, walk_term(w))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Decomposition

const BASE_COMPLEXITY: Complexity = Complexity(31);

/// Raw decomposition step: a realization found by the inductive procedure.
#[derive(Clone, Debug)]
enum Instance {
    /// Commuting square `Za → Zb → Zbe → Zae → Za` (or a peak square).
    Square([usize; 4]),
    /// `Za → Zb → L2' → L0 → L1' → Za`; `b`, `x`, `d` as in the template.
    TwoA {
        spheres: [usize; 5],
        b: Vertex,
        x: Vertex,
        d: Vertex,
    },
    /// `Zp → L → Zn → B → A → Zp` around the degree-4 vertex `v`.
    TwoB { spheres: [usize; 5] },
}

type Resolution = (Vec<usize>, Vec<Instance>);

/// Interns spheres and caches their complexities and moves while one cycle
/// is decomposed.
#[derive(Default)]
struct Arena {
    spheres: Vec<OrientedComplex>,
    index: HashMap<OrientedComplex, usize>,
    cplx: Vec<Complexity>,
    moves: Vec<Option<Rc<Vec<BistellarMove>>>>,
    verts: Vec<usize>,
}

impl Arena {
    fn intern(&mut self, z: OrientedComplex) -> usize {
        if let Some(&i) = self.index.get(&z) {
            return i;
        }
        let i = self.spheres.len();
        self.cplx.push(sphere_complexity(&z));
        self.verts.push(z.num_vertices());
        self.moves.push(None);
        self.index.insert(z.clone(), i);
        self.spheres.push(z);
        i
    }

    fn c(&self, i: usize) -> Complexity {
        self.cplx[i]
    }

    fn mc(&self, a: usize, b: usize) -> Complexity {
        move_complexity(self.cplx[a], self.cplx[b])
    }

    fn deg(&self, i: usize, v: Vertex) -> usize {
        self.spheres[i].facet_degree(v)
    }

    fn all_moves(&mut self, i: usize) -> Rc<Vec<BistellarMove>> {
        if self.moves[i].is_none() {
            self.moves[i] = Some(Rc::new(enumerate_reducing_moves(&self.spheres[i])));
        }
        self.moves[i].clone().expect("filled")
    }

    fn try_apply(&mut self, i: usize, m: &BistellarMove) -> Option<usize> {
        if !is_applicable(&self.spheres[i], m) {
            return None;
        }
        let z = apply_move(&self.spheres[i], m).ok()?;
        Some(self.intern(z))
    }

    fn diff(&self, a: usize, b: usize) -> Result<BistellarMove> {
        diff_move(&self.spheres[a], &self.spheres[b])
            .ok_or_else(|| Error::DecompositionFailed("consecutive spheres are not one move apart".into()))
    }

    fn remove(&mut self, i: usize, v: Vertex) -> Option<usize> {
        let z = &self.spheres[i];
        if self.verts[i] <= 4 || !z.has_vertex(v) || z.facet_degree(v) != 3 {
            return None;
        }
        let m = BistellarMove::new(Simplex::from_sorted(&[v]), Simplex::from_sorted(&z.neighbours(v)));
        self.try_apply(i, &m)
    }

    fn square(&mut self, l: usize, m1: &BistellarMove, m2: &BistellarMove) -> Option<(usize, usize, usize)> {
        let l1 = self.try_apply(l, m1)?;
        let l2 = self.try_apply(l, m2)?;
        let a = self.try_apply(l1, m2)?;
        let b = self.try_apply(l2, m1)?;
        (a == b).then_some((l1, a, l2))
    }

    fn peak_direct(&mut self, zp: usize, l: usize, zn: usize, amax: Complexity) -> Result<Option<Resolution>> {
        let m1 = self.diff(l, zp)?;
        let m2 = self.diff(l, zn)?;
        if let Some((_, l12, _)) = self.square(l, &m1, &m2) {
            if self.mc(zp, l12) < amax && self.mc(l12, zn) < amax {
                return Ok(Some((vec![zp, l12, zn], vec![Instance::Square([zp, l, zn, l12])])));
            }
        }
        if m1.sigma.len() == 2 && m2.sigma.len() == 2 {
            for &v in m1.sigma.vertices() {
                if !m2.sigma.contains(v) {
                    continue;
                }
                if self.deg(l, v) != 4 || self.deg(zp, v) != 3 || self.deg(zn, v) != 3 {
                    continue;
                }
                let (Some(a), Some(b)) = (self.remove(zp, v), self.remove(zn, v)) else {
                    continue;
                };
                let Ok(mab) = self.diff(a, b) else { continue };
                if mab.sigma.len() != 2 || self.try_apply(a, &mab) != Some(b) {
                    continue;
                }
                if self.mc(zp, a) < amax && self.mc(a, b) < amax && self.mc(b, zn) < amax {
                    return Ok(Some((
                        vec![zp, a, b, zn],
                        vec![Instance::TwoB {
                            spheres: [zp, l, zn, b, a],
                        }],
                    )));
                }
            }
        }
        Ok(None)
    }

    fn resolve_peak(
        &mut self,
        zp: usize,
        l: usize,
        zn: usize,
        amax: Complexity,
        depth: usize,
    ) -> Result<Option<Resolution>> {
        if let Some(r) = self.peak_direct(zp, l, zn, amax)? {
            return Ok(Some(r));
        }
        if depth == 0 {
            return Ok(None);
        }
        let moves = self.all_moves(l);
        for m3 in moves.iter() {
            let Some(l3) = self.try_apply(l, m3) else { continue };
            if self.c(l3) >= self.c(l) || l3 == zp || l3 == zn {
                continue;
            }
            let Some(r1) = self.resolve_peak(zp, l, l3, amax, depth - 1)? else {
                continue;
            };
            let Some(r2) = self.resolve_peak(l3, l, zn, amax, depth - 1)? else {
                continue;
            };
            let mut path = r1.0;
            path.extend(r2.0.into_iter().skip(1));
            let mut insts = r1.1;
            insts.extend(r2.1);
            return Ok(Some((path, insts)));
        }
        Ok(None)
    }

    fn edge_direct(&mut self, za: usize, zb: usize, amax: Complexity) -> Result<Option<Resolution>> {
        let m = self.diff(za, zb)?;
        let moves = self.all_moves(za);
        for e in moves.iter() {
            let Some((_, zbe, zae)) = self.square(za, &m, e) else {
                continue;
            };
            if self.mc(za, zae) < amax && self.mc(zae, zbe) < amax && self.mc(zbe, zb) < amax {
                return Ok(Some((
                    vec![za, zae, zbe, zb],
                    vec![Instance::Square([za, zb, zbe, zae])],
                )));
            }
        }
        Ok(None)
    }

    fn edge_2a(&mut self, za: usize, zb: usize, amax: Complexity) -> Result<Option<Resolution>> {
        let m = self.diff(za, zb)?;
        if m.sigma.len() != 2 {
            return Ok(None);
        }
        for &v1 in m.tau.vertices() {
            if self.deg(za, v1) != 3 {
                continue;
            }
            for &v2 in m.sigma.vertices() {
                if self.deg(zb, v2) != 3 {
                    continue;
                }
                let Some(l1p) = self.remove(za, v1) else { continue };
                let Some(l0) = self.remove(l1p, v2) else { continue };
                let Some(l2p) = self.remove(zb, v2) else { continue };
                if self.remove(l2p, v1) != Some(l0) {
                    continue;
                }
                let worst = self
                    .mc(za, l1p)
                    .max(self.mc(l1p, l0))
                    .max(self.mc(l0, l2p))
                    .max(self.mc(l2p, zb));
                if worst >= amax {
                    continue;
                }
                let d = *m.tau.vertices().iter().find(|&&t| t != v1).expect("edge");
                let b = *m.sigma.vertices().iter().find(|&&s| s != v2).expect("edge");
                let x = self.spheres[za]
                    .neighbours(v1)
                    .into_iter()
                    .find(|w| !m.sigma.contains(*w))
                    .ok_or_else(|| Error::DecompositionFailed("degenerate 2a configuration".into()))?;
                return Ok(Some((
                    vec![za, l1p, l0, l2p, zb],
                    vec![Instance::TwoA {
                        spheres: [za, zb, l2p, l0, l1p],
                        b,
                        x,
                        d,
                    }],
                )));
            }
        }
        Ok(None)
    }

    fn resolve_edge(&mut self, za: usize, zb: usize, amax: Complexity, depth: usize) -> Result<Option<Resolution>> {
        if let Some(r) = self.edge_direct(za, zb, amax)? {
            return Ok(Some(r));
        }
        if let Some(r) = self.edge_2a(za, zb, amax)? {
            return Ok(Some(r));
        }
        if depth == 0 {
            return Ok(None);
        }
        let m = self.diff(za, zb)?;
        let moves = self.all_moves(za);
        'outer: for e in moves.iter() {
            let Some((_, zbe, zae)) = self.square(za, &m, e) else {
                continue;
            };
            let path = [za, zae, zbe, zb];
            let mut insts = vec![Instance::Square([za, zb, zbe, zae])];
            let mut newpath = vec![za];
            for w in path.windows(2) {
                let c = self.mc(w[0], w[1]);
                if c < amax {
                    newpath.push(w[1]);
                    continue;
                }
                if c > amax {
                    continue 'outer;
                }
                let Some(r) = self.resolve_edge(w[0], w[1], amax, depth - 1)? else {
                    continue 'outer;
                };
                newpath.extend(r.0.into_iter().skip(1));
                insts.extend(r.1);
            }
            return Ok(Some((newpath, insts)));
        }
        Ok(None)
    }
}

/// Removes repeated spheres and back-tracks, cyclically.
fn cancel(mut cyc: Vec<usize>) -> Vec<usize> {
    loop {
        let n = cyc.len();
        if n <= 2 {
            return Vec::new();
        }
        let mut changed = false;
        for i in 0..n {
            if cyc[i] == cyc[(i + 1) % n] {
                cyc.remove((i + 1) % n);
                changed = true;
                break;
            }
            if cyc[i] == cyc[(i + 2) % n] {
                let j = (i + 1) % n;
                let k = (i + 2) % n;
                let (hi, lo) = if j > k { (j, k) } else { (k, j) };
                cyc.remove(hi);
                cyc.remove(lo);
                changed = true;
                break;
            }
        }
        if !changed {
            return cyc;
        }
    }
}

/// Options of the decomposition procedure.
#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    /// Recursion depth for auxiliary squares.
    pub max_depth: usize,
    /// Safety cap on the number of reduction steps.
    pub max_steps: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            max_depth: 2,
            max_steps: 1_000_000,
        }
    }
}

/// Result of decomposing a cycle.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub entries: Vec<DecompositionEntry>,
}

impl Decomposition {
    /// Σ multiplicity × table value.
    pub fn value(&self) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |acc, e| acc + &e.value)
    }

    pub fn rows(&self) -> Vec<DecompositionRow> {
        self.entries.iter().map(DecompositionEntry::row).collect()
    }
}

/// Checks that a cycle has consecutive spheres one move apart.
pub fn validate_cycle(cycle: &[OrientedComplex]) -> Result<()> {
    let n = cycle.len();
    for i in 0..n {
        let (a, b) = (&cycle[i], &cycle[(i + 1) % n]);
        if a == b {
            continue;
        }
        let m =
            diff_move(a, b).ok_or_else(|| Error::DecompositionFailed(format!("step {i} is not a bistellar move")))?;
        if apply_move(a, &m).ok().as_ref() != Some(b) {
            return Err(Error::DecompositionFailed(format!("step {i} is not a bistellar move")));
        }
    }
    Ok(())
}

/// Decomposes a cycle into elementary cycles by induction on the maximal
/// move complexity.
///
/// The certificate property holds: the signed edge multiset of `cycle`
/// equals the sum of those of the realizations (see
/// [`certificate_holds`]).
pub fn decompose(cycle: &[OrientedComplex], opts: &DecomposeOptions) -> Result<Decomposition> {
    let mut arena = Arena::default();
    let mut cyc: Vec<usize> = cycle.iter().map(|z| arena.intern(z.clone())).collect();
    let mut insts: Vec<Instance> = Vec::new();
    let mut residual: Vec<usize> = Vec::new();
    let mut steps = 0;
    loop {
        cyc = cancel(cyc);
        if cyc.is_empty() {
            break;
        }
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::DecompositionFailed("step limit exceeded".into()));
        }
        let n = cyc.len();
        let cs: Vec<Complexity> = (0..n).map(|i| arena.mc(cyc[i], cyc[(i + 1) % n])).collect();
        let amax = *cs.iter().max().expect("nonempty");
        if amax <= BASE_COMPLEXITY {
            residual = cyc;
            break;
        }
        if amax.b() % 2 == 1 {
            let i = cs.iter().position(|&c| c == amax).expect("max");
            let (za, zb) = (cyc[i], cyc[(i + 1) % n]);
            let mut found = None;
            for d in 0..=opts.max_depth {
                if let Some(r) = arena.resolve_edge(za, zb, amax, d)? {
                    found = Some(r);
                    break;
                }
            }
            let (path, ins) = found.ok_or_else(|| {
                Error::DecompositionFailed(format!(
                    "no resolution of a move of complexity {amax}: {:?} -> {:?}",
                    arena.spheres[za], arena.spheres[zb]
                ))
            })?;
            let mut next = cyc[..=i].to_vec();
            next.extend_from_slice(&path[1..path.len() - 1]);
            next.extend_from_slice(&cyc[i + 1..]);
            cyc = next;
            insts.extend(ins);
        } else {
            let i = (0..n)
                .find(|&k| arena.c(cyc[k]) == amax)
                .ok_or_else(|| Error::DecompositionFailed(format!("no peak sphere at complexity {amax}")))?;
            let zp = cyc[(i + n - 1) % n];
            let l = cyc[i];
            let zn = cyc[(i + 1) % n];
            let mut found = None;
            for d in 0..=opts.max_depth {
                if let Some(r) = arena.resolve_peak(zp, l, zn, amax, d)? {
                    found = Some(r);
                    break;
                }
            }
            let (path, ins) = found.ok_or_else(|| {
                Error::DecompositionFailed(format!(
                    "no resolution of a peak of complexity {amax} at {:?}",
                    arena.spheres[l]
                ))
            })?;
            let inner = &path[1..path.len() - 1];
            cyc = if i == 0 {
                let mut next = inner.to_vec();
                next.extend_from_slice(&cyc[1..]);
                next
            } else {
                let mut next = cyc[..i].to_vec();
                next.extend_from_slice(inner);
                next.extend_from_slice(&cyc[i + 1..]);
                next
            };
            insts.extend(ins);
        }
    }
    let mut entries = Vec::with_capacity(insts.len() + 1);
    for inst in &insts {
        entries.push(classify_instance(&arena, inst)?);
    }
    if !residual.is_empty() {
        entries.push(DecompositionEntry {
            cycle: ElementaryCycle {
                kind: ElementaryKind::Base,
                params: Vec::new(),
                realization: residual.iter().map(|&i| arena.spheres[i].clone()).collect(),
            },
            multiplicity: 1,
            value: BigRational::zero(),
        });
    }
    Ok(Decomposition { entries })
}

/// Value of the cocycle on a cycle: Σ over its decomposition.
pub fn evaluate_cycle(cycle: &[OrientedComplex], opts: &DecomposeOptions) -> Result<BigRational> {
    Ok(decompose(cycle, opts)?.value())
}

fn fail(msg: impl Into<String>) -> Error {
    Error::DecompositionFailed(msg.into())
}

fn classify_instance(arena: &Arena, inst: &Instance) -> Result<DecompositionEntry> {
    let spheres: Vec<OrientedComplex> = match inst {
        Instance::Square(ids) => ids.iter().map(|&i| arena.spheres[i].clone()).collect(),
        Instance::TwoA { spheres, .. } | Instance::TwoB { spheres } => {
            spheres.iter().map(|&i| arena.spheres[i].clone()).collect()
        }
    };
    let hint = match inst {
        Instance::Square(_) => RealizationHint::Square,
        Instance::TwoA { b, x, d, .. } => RealizationHint::TwoA { b: *b, x: *x, d: *d },
        Instance::TwoB { .. } => RealizationHint::TwoB,
    };
    classify(spheres, hint)
}

/// Which template a realization follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationHint {
    /// A commuting square of two moves.
    Square,
    /// The modified 2a cycle, with its marked vertices.
    TwoA { b: Vertex, x: Vertex, d: Vertex },
    /// The 2b cycle around a degree-4 vertex.
    TwoB,
    /// The pentagon of flips around a degree-5 vertex.
    TwoC,
}

fn family(m: &BistellarMove) -> usize {
    usize::from(m.sigma.len() != 2)
}

/// Determines kind, parameters and multiplicity of a realization from its
/// own vertex walks and checks the table value against the walk sum.
pub fn classify(realization: Vec<OrientedComplex>, hint: RealizationHint) -> Result<DecompositionEntry> {
    let terms = vertex_terms(&realization);
    let walk_sum = terms.values().fold(BigRational::zero(), |acc, t| acc + t.value());
    let squares: Vec<(Vertex, WalkTerm)> = terms
        .iter()
        .filter(|(_, t)| matches!(t, WalkTerm::Square { .. }))
        .map(|(v, t)| (*v, *t))
        .collect();
    let unresolved: Vec<Vertex> = terms
        .iter()
        .filter(|(_, t)| matches!(t, WalkTerm::Unresolved))
        .map(|(v, _)| *v)
        .collect();
    let (kind, params, mult, constant): (ElementaryKind, Vec<i64>, i64, BigRational) = match hint {
        RealizationHint::Square => {
            if !unresolved.is_empty() {
                return Err(fail(format!("square with unresolved vertices {unresolved:?}")));
            }
            let m1 = diff_move(&realization[0], &realization[1]).ok_or_else(|| fail("bad square"))?;
            let m2 = diff_move(&realization[0], &realization[3]).ok_or_else(|| fail("bad square"))?;
            let fam = family(&m1) + family(&m2);
            use ElementaryKind::*;
            let kinds = [[T1a, T1b, T1c], [T1d, T1e, T1f], [T1g, T1h, T1i]];
            if squares.len() > 2 {
                return Err(fail(format!("square with {} changed vertices", squares.len())));
            }
            let kind = kinds[fam][squares.len()];
            match squares.len() {
                0 => (kind, Vec::new(), 1, BigRational::zero()),
                1 => {
                    let WalkTerm::Square { g1, g2 } = squares[0].1 else {
                        unreachable!()
                    };
                    (kind, vec![g1, g2], 1, BigRational::zero())
                }
                _ => {
                    let a = squares[0].1;
                    let b = squares[1].1;
                    let (sa, xa) = a.as_rho0().ok_or_else(|| fail(format!("term {a:?} is not ±ρ(0,·)")))?;
                    let (sb, xb) = b.as_rho0().ok_or_else(|| fail(format!("term {b:?} is not ±ρ(0,·)")))?;
                    // ρ(0,0) = 0 carries no sign; let it take whichever sign
                    // the template needs.
                    let free_a = xa == 0;
                    let free_b = xb == 0;
                    if kind == T1f {
                        let s = if !free_a {
                            sa
                        } else if !free_b {
                            sb
                        } else {
                            1
                        };
                        if (!free_a && sa != s) || (!free_b && sb != s) {
                            return Err(fail("1f terms of opposite sign"));
                        }
                        (kind, vec![xa, xb], s, BigRational::zero())
                    } else {
                        let (sa, sb) = match (free_a, free_b) {
                            (true, true) => (1, -1),
                            (true, false) => (-sb, sb),
                            (false, true) => (sa, -sa),
                            (false, false) => (sa, sb),
                        };
                        if sa == sb {
                            return Err(fail(format!("{kind} terms of equal sign")));
                        }
                        let (p, q) = if sa > 0 { (xb, xa) } else { (xa, xb) };
                        (kind, vec![p, q], 1, BigRational::zero())
                    }
                }
            }
        }
        RealizationHint::TwoA { b, x, d } => {
            if unresolved.len() != 2 {
                return Err(fail(format!("2a with unresolved vertices {unresolved:?}")));
            }
            let get = |v: Vertex| {
                terms
                    .get(&v)
                    .and_then(|t| t.as_omega())
                    .ok_or_else(|| fail(format!("2a vertex {v} has no ω term")))
            };
            let (sb, pb) = get(b)?;
            let (sx, px) = get(x)?;
            let (sd, pd) = get(d)?;
            if squares.len() != 3 || sb != sd || sx != -sd {
                return Err(fail("2a sign pattern mismatch"));
            }
            (
                ElementaryKind::T2a,
                vec![pb, px, pd],
                sd,
                -BigRational::from_integer(sd.into()) * twelfth(),
            )
        }
        RealizationHint::TwoB => {
            if unresolved.len() != 1 || squares.len() != 4 {
                return Err(fail(format!(
                    "2b with {} unresolved and {} changed vertices",
                    unresolved.len(),
                    squares.len()
                )));
            }
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for (v, t) in &squares {
                let (s, p) = t
                    .as_omega()
                    .ok_or_else(|| fail(format!("2b vertex {v} has no ω term")))?;
                if s > 0 {
                    pos.push(p)
                } else {
                    neg.push(p)
                }
            }
            if pos.len() != 2 || neg.len() != 2 {
                return Err(fail("2b sign pattern mismatch"));
            }
            (
                ElementaryKind::T2b,
                vec![pos[0], neg[0], neg[1], pos[1]],
                1,
                BigRational::zero(),
            )
        }
        RealizationHint::TwoC => {
            if !unresolved.is_empty() || squares.len() != 5 {
                return Err(fail("2c needs five changed vertices"));
            }
            let mut sign = 0;
            let mut ps = Vec::new();
            for (v, t) in &squares {
                let (s, p) = t
                    .as_omega()
                    .ok_or_else(|| fail(format!("2c vertex {v} has no ω term")))?;
                if sign != 0 && s != sign {
                    return Err(fail("2c sign pattern mismatch"));
                }
                sign = s;
                ps.push(p);
            }
            (
                ElementaryKind::T2c,
                ps,
                sign,
                -BigRational::from_integer(sign.into()) * twelfth(),
            )
        }
    };
    if params.iter().any(|&p| p < 0) {
        return Err(fail(format!(
            "{kind} realization with negative angle parameter {params:?}"
        )));
    }
    let value = evaluate_elementary(kind, &params)? * BigRational::from_integer(mult.into());
    if value != &walk_sum + &constant {
        return Err(fail(format!(
            "{kind} table value {value} disagrees with walk sum {walk_sum} + {constant}"
        )));
    }
    Ok(DecompositionEntry {
        cycle: ElementaryCycle {
            kind,
            params,
            realization,
        },
        multiplicity: mult,
        value,
    })
}

/// Signed edge multiset of a cycle: `(X, Y)` with `X < Y` counts `+1` for a
/// step `X → Y` and `−1` for `Y → X`.
pub fn edge_multiset(cycle: &[OrientedComplex]) -> HashMap<(OrientedComplex, OrientedComplex), i64> {
    let mut out: HashMap<(OrientedComplex, OrientedComplex), i64> = HashMap::new();
    let n = cycle.len();
    for i in 0..n {
        let (a, b) = (&cycle[i], &cycle[(i + 1) % n]);
        if a == b {
            continue;
        }
        let (key, s) = if a < b {
            ((a.clone(), b.clone()), 1)
        } else {
            ((b.clone(), a.clone()), -1)
        };
        *out.entry(key).or_default() += s;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// True iff the cycle's signed edge multiset equals the sum over the
/// decomposition's realizations.
pub fn certificate_holds(cycle: &[OrientedComplex], dec: &Decomposition) -> bool {
    let mut acc = edge_multiset(cycle);
    for e in &dec.entries {
        for (k, v) in edge_multiset(&e.cycle.realization) {
            *acc.entry(k).or_default() -= v;
        }
    }
    acc.values().all(|v| *v == 0)
}

/// Induces a chain of 3-spheres onto the link of `v`: the sequence of links
/// of `v` over the complexes containing it, with repetitions removed.
pub fn induce_chain(chain: &[OrientedComplex], v: Vertex) -> Result<Vec<OrientedComplex>> {
    let vs = Simplex::from_sorted(&[v]);
    let mut out: Vec<OrientedComplex> = Vec::new();
    for z in chain {
        if !z.has_vertex(v) {
            continue;
        }
        let l = z.induced_link(&vs)?;
        if out.last() != Some(&l) {
            out.push(l);
        }
    }
    if out.is_empty() {
        return Err(Error::VertexNeverPresent(v));
    }
    Ok(out)
}

/// Vertices occurring in facets changed by some move of the chain.
pub fn chain_vertices(chain: &[OrientedComplex]) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::new();
    for w in chain.windows(2) {
        for f in w[0].facets().keys() {
            if !w[1].facets().contains_key(f) {
                out.extend(f.vertices());
            }
        }
        for f in w[1].facets().keys() {
            if !w[0].facets().contains_key(f) {
                out.extend(f.vertices());
            }
        }
    }
    out
}

/// Reverses a cycle (traversal in the opposite direction).
pub fn reverse_cycle(cycle: &[OrientedComplex]) -> Vec<OrientedComplex> {
    let mut out: Vec<OrientedComplex> = cycle.to_vec();
    out.reverse();
    out
}

/// Applies a vertex relabeling to every sphere of a cycle.
pub fn relabel_cycle(cycle: &[OrientedComplex], map: &HashMap<Vertex, Vertex>) -> Vec<OrientedComplex> {
    cycle.iter().map(|z| z.relabel(map)).collect()
}
