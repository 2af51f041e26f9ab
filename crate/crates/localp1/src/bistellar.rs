//! Bistellar (Pachner) moves: applicability, application with orientation
//! transport, inversion, induced moves on vertex links, complexities and the
//! essentiality test.
//!
//! A move `(σ, τ)` on an `n`-dimensional complex replaces `σ ∗ ∂τ` by
//! `τ ∗ ∂σ`, where `|σ| + |τ| = n + 2`. Its *kind* is `dim τ`: in dimension
//! two a 0-move inserts a vertex into a triangle, a 1-move flips an edge and
//! a 2-move removes a vertex of degree three.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::Ratio;

use crate::complex::{OrientedComplex, Sign, Simplex, Vertex};
use crate::error::{Error, Result};

/// A bistellar move `(σ, τ)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BistellarMove {
    pub sigma: Simplex,
    pub tau: Simplex,
}

impl BistellarMove {
    pub fn new(sigma: Simplex, tau: Simplex) -> Self {
        BistellarMove { sigma, tau }
    }

    /// `dim τ`.
    pub fn kind(&self) -> usize {
        self.tau.len() - 1
    }

    /// The move undoing this one.
    pub fn inverse(&self) -> Self {
        BistellarMove {
            sigma: self.tau.clone(),
            tau: self.sigma.clone(),
        }
    }

    /// One line of the chain trace format.
    pub fn trace_line(&self) -> String {
        format!(
            "move {} sigma={} tau={}",
            self.kind(),
            join(&self.sigma),
            join(&self.tau)
        )
    }

    /// Parses one line of the chain trace format.
    pub fn parse_trace_line(line: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            line: 0,
            message: format!("{m} in trace line `{line}`"),
        };
        let mut parts = line.split_whitespace();
        if parts.next() != Some("move") {
            return Err(bad("missing `move`"));
        }
        let kind: usize = parts
            .next()
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| bad("missing kind"))?;
        let mut field = |name: &str| -> Result<Simplex> {
            let tok = parts.next().ok_or_else(|| bad("missing field"))?;
            let list = tok
                .strip_prefix(name)
                .and_then(|t| t.strip_prefix('='))
                .ok_or_else(|| bad("malformed field"))?;
            let vs = list
                .split(',')
                .map(|x| x.parse::<Vertex>().map_err(|_| bad("bad vertex")))
                .collect::<Result<Vec<_>>>()?;
            Simplex::new(vs)
        };
        let sigma = field("sigma")?;
        let tau = field("tau")?;
        let m = BistellarMove { sigma, tau };
        if m.kind() != kind {
            return Err(bad("kind does not match tau"));
        }
        Ok(m)
    }
}

impl fmt::Display for BistellarMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.trace_line())
    }
}

fn join(s: &Simplex) -> String {
    s.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn parity(i: usize) -> Sign {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Checks applicability, returning the reason on failure.
pub fn check_applicable(z: &OrientedComplex, m: &BistellarMove) -> Result<()> {
    let fail = |reason: &'static str| {
        Err(Error::NotApplicable {
            sigma: m.sigma.vertices().to_vec(),
            tau: m.tau.vertices().to_vec(),
            reason,
        })
    };
    if m.sigma.is_empty() || m.tau.is_empty() {
        return fail("sigma and tau must be nonempty");
    }
    if !m.sigma.is_disjoint(&m.tau) {
        return fail("sigma and tau intersect");
    }
    if m.sigma.len() + m.tau.len() != z.facet_size() + 1 {
        return fail("dimensions of sigma and tau do not add up");
    }
    let delta = m.sigma.union(&m.tau);
    for &t in m.tau.vertices() {
        if z.sign(&delta.without(t)).is_none() {
            return fail("sigma * boundary(tau) is not in the complex");
        }
    }
    if z.star_count(&m.sigma) != m.tau.len() {
        return fail("link of sigma is not the boundary of tau");
    }
    if m.tau.len() == 1 {
        if z.has_vertex(m.tau.vertices()[0]) {
            return fail("new vertex label already in use");
        }
    } else if z.contains_face(&m.tau) {
        return fail("tau is already a face");
    }
    Ok(())
}

pub fn is_applicable(z: &OrientedComplex, m: &BistellarMove) -> bool {
    check_applicable(z, m).is_ok()
}

/// Applies a move, transporting the orientation to the new facets.
pub fn apply_move(z: &OrientedComplex, m: &BistellarMove) -> Result<OrientedComplex> {
    check_applicable(z, m)?;
    let delta = m.sigma.union(&m.tau);
    let mut eps: Option<Sign> = None;
    for &t in m.tau.vertices() {
        let i = delta.index_of(t).expect("vertex of delta");
        let e = z.sign(&delta.without(t)).expect("checked") * parity(i);
        match eps {
            None => eps = Some(e),
            Some(x) if x != e => {
                return Err(Error::NotApplicable {
                    sigma: m.sigma.vertices().to_vec(),
                    tau: m.tau.vertices().to_vec(),
                    reason: "inconsistent orientation around sigma",
                })
            }
            _ => {}
        }
    }
    let eps = eps.expect("tau nonempty");
    let mut facets: BTreeMap<Simplex, Sign> = z.facets().clone();
    for &t in m.tau.vertices() {
        facets.remove(&delta.without(t));
    }
    for &s in m.sigma.vertices() {
        let i = delta.index_of(s).expect("vertex of delta");
        facets.insert(delta.without(s), -eps * parity(i));
    }
    Ok(OrientedComplex::from_map(z.facet_size(), facets))
}

/// Recovers the move taking `a` to `b`, if they differ by one move.
pub fn diff_move(a: &OrientedComplex, b: &OrientedComplex) -> Option<BistellarMove> {
    let old: Vec<&Simplex> = a.facets().keys().filter(|f| !b.facets().contains_key(*f)).collect();
    let new: Vec<&Simplex> = b.facets().keys().filter(|f| !a.facets().contains_key(*f)).collect();
    if old.is_empty() || new.is_empty() {
        return None;
    }
    let delta: BTreeSet<Vertex> = old
        .iter()
        .chain(new.iter())
        .flat_map(|f| f.vertices().iter().copied())
        .collect();
    let delta = Simplex::from_sorted(&delta.into_iter().collect::<Vec<_>>());
    let old: BTreeSet<&Simplex> = old.into_iter().collect();
    let new: BTreeSet<&Simplex> = new.into_iter().collect();
    let tau: Vec<Vertex> = delta
        .vertices()
        .iter()
        .copied()
        .filter(|&x| old.contains(&delta.without(x)))
        .collect();
    let sigma: Vec<Vertex> = delta
        .vertices()
        .iter()
        .copied()
        .filter(|&x| new.contains(&delta.without(x)))
        .collect();
    if tau.is_empty() || sigma.is_empty() {
        return None;
    }
    Some(BistellarMove::new(
        Simplex::from_sorted(&sigma),
        Simplex::from_sorted(&tau),
    ))
}

/// All applicable moves other than vertex insertions, ordered by
/// `(|σ|, σ)`: in dimension two, vertex removals come before edge flips.
pub fn enumerate_reducing_moves(z: &OrientedComplex) -> Vec<BistellarMove> {
    let n1 = z.facet_size();
    let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
    for f in z.facets().keys() {
        for k in 0..n1 - 1 {
            for s in f.faces(k) {
                *counts.entry(s).or_default() += 1;
            }
        }
    }
    let mut out = Vec::new();
    for (s, &c) in &counts {
        if s.len() + c != n1 + 1 {
            continue;
        }
        let link_vertices: BTreeSet<Vertex> = z
            .facets()
            .keys()
            .filter(|f| s.is_subset_of(f))
            .flat_map(|f| f.vertices().iter().copied())
            .filter(|v| !s.contains(*v))
            .collect();
        if link_vertices.len() != c {
            continue;
        }
        let tau = Simplex::from_sorted(&link_vertices.into_iter().collect::<Vec<_>>());
        let m = BistellarMove::new(s.clone(), tau);
        if is_applicable(z, &m) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| (a.sigma.len(), &a.sigma).cmp(&(b.sigma.len(), &b.sigma)));
    out
}

/// All applicable moves: the reducing moves followed by one vertex
/// insertion per facet, each using `new_label` as the new vertex.
pub fn enumerate_moves(z: &OrientedComplex, new_label: Vertex) -> Vec<BistellarMove> {
    let mut out = enumerate_reducing_moves(z);
    if !z.has_vertex(new_label) {
        let tau = Simplex::from_sorted(&[new_label]);
        for f in z.facets().keys() {
            out.push(BistellarMove::new(f.clone(), tau.clone()));
        }
    }
    out
}

/// Complexity, stored as an integer number of sixths.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Complexity(pub u32);

impl Complexity {
    pub fn from_sixths(s: u32) -> Self {
        Complexity(s)
    }

    pub fn sixths(self) -> u32 {
        self.0
    }

    /// `6 · a mod 6`.
    pub fn b(self) -> u32 {
        self.0 % 6
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.0 as i64, 6)
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratio())
    }
}

/// `a(L)` of a 2-sphere: the number of vertices, plus 1/3 if the minimal
/// degree is 4 and plus 2/3 if it is at least 5.
pub fn sphere_complexity(z: &OrientedComplex) -> Complexity {
    let mut deg: BTreeMap<Vertex, u32> = BTreeMap::new();
    for f in z.facets().keys() {
        for &v in f.vertices() {
            *deg.entry(v).or_default() += 1;
        }
    }
    let n = deg.len() as u32;
    let min = deg.values().copied().min().unwrap_or(0);
    let extra = match min {
        0..=3 => 0,
        4 => 2,
        _ => 4,
    };
    Complexity(6 * n + extra)
}

/// Complexity of a move between spheres of complexities `a1`, `a2`.
pub fn move_complexity(a1: Complexity, a2: Complexity) -> Complexity {
    if a1 == a2 {
        Complexity(a1.0 + 1)
    } else {
        a1.max(a2)
    }
}

/// What a move does to the link of one vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum InducedMove {
    /// The vertex is not in `σ ∪ τ`; its link is unchanged.
    Identity,
    /// The link changes by this move.
    Move(BistellarMove),
    /// The vertex is created; its link is `∂σ`.
    Created,
    /// The vertex is removed; its link was `∂τ`.
    Removed,
}

/// The move induced by `m` on the link of `v`.
pub fn induced_move(m: &BistellarMove, v: Vertex) -> InducedMove {
    if m.sigma.contains(v) {
        if m.sigma.len() == 1 {
            InducedMove::Removed
        } else {
            InducedMove::Move(BistellarMove::new(m.sigma.without(v), m.tau.clone()))
        }
    } else if m.tau.contains(v) {
        if m.tau.len() == 1 {
            InducedMove::Created
        } else {
            InducedMove::Move(BistellarMove::new(m.sigma.clone(), m.tau.without(v)))
        }
    } else {
        InducedMove::Identity
    }
}

/// Whether `m : L1 → L2` is essential, i.e. not equivalent to its inverse.
///
/// Equivalence is read as label-forgetting isomorphism of triples: the move
/// is inessential iff some isomorphism `f : L1 → L2` of unoriented complexes
/// maps `σ` onto `τ` and `τ` onto `σ`.
pub fn is_essential(before: &OrientedComplex, m: &BistellarMove) -> Result<bool> {
    let after = apply_move(before, m)?;
    if m.sigma.len() != m.tau.len() || before.num_vertices() != after.num_vertices() {
        return Ok(true);
    }
    Ok(!isomorphic_swapping(before, &after, &m.sigma, &m.tau))
}

fn isomorphic_swapping(a: &OrientedComplex, b: &OrientedComplex, sigma: &Simplex, tau: &Simplex) -> bool {
    let va = a.vertices();
    let vb = b.vertices();
    let deg_a: HashMap<Vertex, usize> = va.iter().map(|&v| (v, a.facet_degree(v))).collect();
    let deg_b: HashMap<Vertex, usize> = vb.iter().map(|&v| (v, b.facet_degree(v))).collect();
    let mut da: Vec<usize> = deg_a.values().copied().collect();
    let mut db: Vec<usize> = deg_b.values().copied().collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db || a.num_facets() != b.num_facets() {
        return false;
    }
    // Assign σ and τ first so the constraints prune early.
    let mut order: Vec<Vertex> = sigma.vertices().to_vec();
    order.extend(tau.vertices());
    order.extend(va.iter().copied().filter(|v| !sigma.contains(*v) && !tau.contains(*v)));
    let facets_b: BTreeSet<&Simplex> = b.facets().keys().collect();
    let mut map: HashMap<Vertex, Vertex> = HashMap::new();
    let mut used: BTreeSet<Vertex> = BTreeSet::new();

    #[allow(clippy::too_many_arguments)]
    fn search(
        i: usize,
        order: &[Vertex],
        a: &OrientedComplex,
        vb: &[Vertex],
        deg_a: &HashMap<Vertex, usize>,
        deg_b: &HashMap<Vertex, usize>,
        facets_b: &BTreeSet<&Simplex>,
        sigma: &Simplex,
        tau: &Simplex,
        map: &mut HashMap<Vertex, Vertex>,
        used: &mut BTreeSet<Vertex>,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for &w in vb {
            if used.contains(&w) || deg_a[&v] != deg_b[&w] {
                continue;
            }
            if sigma.contains(v) && !tau.contains(w) {
                continue;
            }
            if tau.contains(v) && !sigma.contains(w) {
                continue;
            }
            map.insert(v, w);
            used.insert(w);
            let ok = a.facets().keys().filter(|f| f.contains(v)).all(|f| {
                if f.vertices().iter().all(|x| map.contains_key(x)) {
                    let img = Simplex::new(f.vertices().iter().map(|x| map[x])).expect("injective");
                    facets_b.contains(&img)
                } else {
                    true
                }
            });
            if ok && search(i + 1, order, a, vb, deg_a, deg_b, facets_b, sigma, tau, map, used) {
                return true;
            }
            map.remove(&v);
            used.remove(&w);
        }
        false
    }

    search(
        0, &order, a, &vb, &deg_a, &deg_b, &facets_b, sigma, tau, &mut map, &mut used,
    )
}

/// A chain of moves starting at a given complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MoveChain {
    pub start: OrientedComplex,
    pub moves: Vec<BistellarMove>,
}

impl MoveChain {
    pub fn empty(start: OrientedComplex) -> Self {
        MoveChain {
            start,
            moves: Vec::new(),
        }
    }

    /// Builds the chain through a sequence of complexes, each one move from
    /// the previous one.
    pub fn from_complexes(seq: &[OrientedComplex]) -> Result<Self> {
        let start = seq.first().ok_or(Error::EmptyInput)?.clone();
        let mut moves = Vec::with_capacity(seq.len().saturating_sub(1));
        for w in seq.windows(2) {
            let m = diff_move(&w[0], &w[1])
                .ok_or_else(|| Error::Consistency("consecutive complexes are not one move apart".into()))?;
            moves.push(m);
        }
        Ok(MoveChain { start, moves })
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the chain, validating each move; returns every complex.
    pub fn complexes(&self) -> Result<Vec<OrientedComplex>> {
        let mut out = vec![self.start.clone()];
        for m in &self.moves {
            let next = apply_move(out.last().expect("nonempty"), m)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<OrientedComplex> {
        Ok(self.complexes()?.pop().expect("nonempty"))
    }

    /// The trace text, one move per line.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for m in &self.moves {
            out.push_str(&m.trace_line());
            out.push('\n');
        }
        out
    }
}
