//! Pure simplicial complexes, oriented complexes, links and face queries.
//!
//! Simplices are stored with their vertices in strictly increasing order;
//! complexes store only their facets and enumerate lower faces on demand.
//! Vertex labels are arbitrary natural numbers and are never re-indexed,
//! because the labeled move machinery downstream depends on stable labels.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A vertex label.
pub type Vertex = u32;

/// Orientation sign of a facet, always `+1` or `-1`.
pub type Sign = i8;

/// A simplex: strictly increasing list of vertex labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Simplex(SmallVec<[Vertex; 10]>);

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Simplex {
    /// Builds a simplex from arbitrary-order vertices, rejecting repeats.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Self> {
        let mut v: SmallVec<[Vertex; 10]> = vertices.into_iter().collect();
        v.sort_unstable();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::RepeatedVertex(w[0]));
            }
        }
        Ok(Simplex(v))
    }

    /// Builds a simplex from a slice that is already strictly increasing.
    pub fn from_sorted(vertices: &[Vertex]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(SmallVec::from_slice(vertices))
    }

    /// The empty simplex (dimension −1).
    pub fn empty() -> Self {
        Simplex(SmallVec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, i.e. number of vertices minus one.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Position of `v` in the sorted vertex list.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// Copy with vertex `v` removed (no-op if absent).
    pub fn without(&self, v: Vertex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Copy with the vertex at position `i` removed.
    pub fn without_index(&self, i: usize) -> Simplex {
        let mut s = self.0.clone();
        s.remove(i);
        Simplex(s)
    }

    /// Copy with vertex `v` inserted (no-op if present).
    pub fn with(&self, v: Vertex) -> Simplex {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(i) => {
                let mut s = self.0.clone();
                s.insert(i, v);
                Simplex(s)
            }
        }
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut s: SmallVec<[Vertex; 10]> = self.0.iter().chain(other.0.iter()).copied().collect();
        s.sort_unstable();
        s.dedup();
        Simplex(s)
    }

    pub fn minus(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    /// Sign of the permutation sorting the concatenation `self ⧺ other`
    /// (the two simplices must be disjoint).
    pub fn concat_sign(&self, other: &Simplex) -> Sign {
        let mut inversions = 0usize;
        for a in &self.0 {
            inversions += other.0.iter().filter(|b| *b < a).count();
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All faces with `k + 1` vertices, in lexicographic order.
    pub fn faces(&self, k: usize) -> Vec<Simplex> {
        let n = self.0.len();
        let m = k + 1;
        let mut out = Vec::new();
        if m > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..m).collect();
        loop {
            out.push(Simplex(idx.iter().map(|&i| self.0[i]).collect()));
            let mut i = m;
            while i > 0 && idx[i - 1] == n - m + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..m {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }

    /// Codimension-one faces with their incidence signs `(-1)^i`.
    pub fn boundary(&self) -> Vec<(Simplex, Sign)> {
        (0..self.0.len())
            .map(|i| (self.without_index(i), if i % 2 == 0 { 1 } else { -1 }))
            .collect()
    }

    /// Applies a relabeling; returns the image simplex and the sign of the
    /// permutation that sorts the relabeled vertex sequence.
    pub fn relabel(&self, map: &HashMap<Vertex, Vertex>) -> (Simplex, Sign) {
        let seq: SmallVec<[Vertex; 10]> = self.0.iter().map(|v| *map.get(v).unwrap_or(v)).collect();
        let mut inv = 0usize;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    inv += 1;
                }
            }
        }
        let mut sorted = seq;
        sorted.sort_unstable();
        (Simplex(sorted), if inv.is_multiple_of(2) { 1 } else { -1 })
    }
}

/// A pure simplicial complex given by its facets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    facet_size: usize,
    facets: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// Builds a complex from facet vertex lists; duplicates collapse.
    pub fn build(facets: &[Vec<Vertex>]) -> Result<Self> {
        let simplices = facets
            .iter()
            .map(|f| Simplex::new(f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_simplices(simplices)
    }

    /// Builds a complex from simplices; duplicates collapse.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(facets: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut size = None;
        for f in facets {
            match size {
                None => size = Some(f.len()),
                Some(s) if s != f.len() => {
                    return Err(Error::MixedDimension {
                        expected: s,
                        found: f.len(),
                    })
                }
                _ => {}
            }
            set.insert(f);
        }
        let facet_size = size.ok_or(Error::EmptyInput)?;
        Ok(SimplicialComplex {
            facet_size,
            facets: set,
        })
    }

    /// Dimension of the facets (−1 for the complex whose only facet is ∅).
    pub fn dim(&self) -> isize {
        self.facet_size as isize - 1
    }

    /// Number of vertices per facet.
    pub fn facet_size(&self) -> usize {
        self.facet_size
    }

    pub fn facets(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Sorted list of vertices.
    pub fn vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.facets.iter().flat_map(|f| f.0.iter().copied()).collect();
        set.into_iter().collect()
    }

    pub fn contains_face(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_subset_of(f))
    }

    /// All faces with `k + 1` vertices, sorted.
    pub fn faces(&self, k: usize) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for s in f.faces(k) {
                out.insert(s);
            }
        }
        out
    }

    /// Face counts `f_0, …, f_n`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.facet_size).map(|k| self.faces(k).len()).collect()
    }

    /// Alternating sum of the f-vector.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Link of a face: `{ t : t ∩ s = ∅, t ∪ s ∈ K }`.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        let faces: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| s.is_subset_of(f))
            .map(|f| f.minus(s))
            .collect();
        if faces.is_empty() {
            return Err(Error::NotAFace(s.vertices().to_vec()));
        }
        SimplicialComplex::from_simplices(faces)
    }

    /// Number of edges containing `v`.
    pub fn vertex_degree(&self, v: Vertex) -> Result<usize> {
        let nbrs: BTreeSet<Vertex> = self
            .facets
            .iter()
            .filter(|f| f.contains(v))
            .flat_map(|f| f.0.iter().copied())
            .filter(|&w| w != v)
            .collect();
        if nbrs.is_empty() && !self.facets.iter().any(|f| f.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(nbrs.len())
    }

    /// Map from every ridge (codimension-one face) to the facets containing it.
    fn ridge_map(&self) -> BTreeMap<Simplex, Vec<&Simplex>> {
        let mut map: BTreeMap<Simplex, Vec<&Simplex>> = BTreeMap::new();
        for f in &self.facets {
            for i in 0..f.len() {
                map.entry(f.without_index(i)).or_default().push(f);
            }
        }
        map
    }

    /// Checks that every ridge lies in exactly two facets.
    pub fn check_closed_pseudomanifold(&self) -> Result<()> {
        for (ridge, fs) in self.ridge_map() {
            if fs.len() != 2 {
                return Err(Error::NotPseudomanifold {
                    ridge: ridge.vertices().to_vec(),
                    count: fs.len(),
                });
            }
        }
        Ok(())
    }

    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.check_closed_pseudomanifold().is_ok()
    }

    /// Coherent orientation by facet-adjacency propagation; the
    /// lexicographically least facet of each connected component gets `+1`.
    pub fn orient(&self) -> Result<OrientedComplex> {
        self.check_closed_pseudomanifold()?;
        let ridges = self.ridge_map();
        let mut signs: BTreeMap<Simplex, Sign> = BTreeMap::new();
        for seed in &self.facets {
            if signs.contains_key(seed) {
                continue;
            }
            signs.insert(seed.clone(), 1);
            let mut queue = VecDeque::from([seed.clone()]);
            while let Some(f) = queue.pop_front() {
                let ef = signs[&f];
                for i in 0..f.len() {
                    let ridge = f.without_index(i);
                    let induced = ef * if i % 2 == 0 { 1 } else { -1 };
                    for h in &ridges[&ridge] {
                        if **h == f {
                            continue;
                        }
                        let missing = h.minus(&ridge).0[0];
                        let j = h.index_of(missing).expect("vertex of facet");
                        let want = -induced * if j % 2 == 0 { 1 } else { -1 };
                        match signs.get(*h) {
                            Some(&s) if s != want => return Err(Error::NonOrientable(h.vertices().to_vec())),
                            Some(_) => {}
                            None => {
                                signs.insert((*h).clone(), want);
                                queue.push_back((*h).clone());
                            }
                        }
                    }
                }
            }
        }
        Ok(OrientedComplex {
            facet_size: self.facet_size,
            facets: signs,
        })
    }
}

/// A complex with a sign attached to every facet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct OrientedComplex {
    facet_size: usize,
    facets: BTreeMap<Simplex, Sign>,
}

impl OrientedComplex {
    /// Builds an oriented complex from signed facets (signs must be ±1).
    pub fn new<I: IntoIterator<Item = (Simplex, Sign)>>(facets: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut size = None;
        for (f, s) in facets {
            match size {
                None => size = Some(f.len()),
                Some(n) if n != f.len() => {
                    return Err(Error::MixedDimension {
                        expected: n,
                        found: f.len(),
                    })
                }
                _ => {}
            }
            if s != 1 && s != -1 {
                return Err(Error::Consistency(format!("facet sign {s} is not ±1")));
            }
            map.insert(f, s);
        }
        let facet_size = size.ok_or(Error::EmptyInput)?;
        Ok(OrientedComplex {
            facet_size,
            facets: map,
        })
    }

    pub(crate) fn from_map(facet_size: usize, facets: BTreeMap<Simplex, Sign>) -> Self {
        OrientedComplex { facet_size, facets }
    }

    /// Boundary of the simplex on `vertices`, oriented as ∂[v0,…,vn].
    pub fn boundary_of_simplex(vertices: &[Vertex]) -> Result<Self> {
        let s = Simplex::new(vertices.iter().copied())?;
        Self::new(s.boundary())
    }

    pub fn dim(&self) -> isize {
        self.facet_size as isize - 1
    }

    pub fn facet_size(&self) -> usize {
        self.facet_size
    }

    pub fn facets(&self) -> &BTreeMap<Simplex, Sign> {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn sign(&self, f: &Simplex) -> Option<Sign> {
        self.facets.get(f).copied()
    }

    /// The underlying unoriented complex.
    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex {
            facet_size: self.facet_size,
            facets: self.facets.keys().cloned().collect(),
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.facets.keys().flat_map(|f| f.0.iter().copied()).collect();
        set.into_iter().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.facets.keys().any(|f| f.contains(v))
    }

    pub fn contains_face(&self, s: &Simplex) -> bool {
        self.facets.keys().any(|f| s.is_subset_of(f))
    }

    /// Number of facets containing `s`.
    pub fn star_count(&self, s: &Simplex) -> usize {
        self.facets.keys().filter(|f| s.is_subset_of(f)).count()
    }

    /// The same complex with every sign flipped.
    pub fn reversed(&self) -> Self {
        OrientedComplex {
            facet_size: self.facet_size,
            facets: self.facets.iter().map(|(f, s)| (f.clone(), -s)).collect(),
        }
    }

    /// Link of `s` with the induced orientation: each link facet `t`
    /// gets `sign(s ∪ t) · sign(sort(s ⧺ t))`.
    pub fn induced_link(&self, s: &Simplex) -> Result<OrientedComplex> {
        let mut map = BTreeMap::new();
        for (f, &e) in &self.facets {
            if s.is_subset_of(f) {
                let t = f.minus(s);
                let sign = e * s.concat_sign(&t);
                map.insert(t, sign);
            }
        }
        if map.is_empty() {
            return Err(Error::NotAFace(s.vertices().to_vec()));
        }
        Ok(OrientedComplex {
            facet_size: self.facet_size - s.len(),
            facets: map,
        })
    }

    /// True iff adjacent facets induce opposite orientations on every ridge
    /// and every ridge lies in exactly two facets.
    pub fn is_consistent(&self) -> bool {
        let mut acc: HashMap<Simplex, (u8, i32)> = HashMap::new();
        for (f, &e) in &self.facets {
            for (r, s) in f.boundary() {
                let entry = acc.entry(r).or_insert((0, 0));
                entry.0 += 1;
                entry.1 += (e * s) as i32;
            }
        }
        acc.values().all(|&(c, s)| c == 2 && s == 0)
    }

    /// Image under a vertex relabeling (orientation transported).
    pub fn relabel(&self, map: &HashMap<Vertex, Vertex>) -> OrientedComplex {
        let facets = self
            .facets
            .iter()
            .map(|(f, &e)| {
                let (g, s) = f.relabel(map);
                (g, e * s)
            })
            .collect();
        OrientedComplex {
            facet_size: self.facet_size,
            facets,
        }
    }

    /// Fast in-process fingerprint of the signed facet list.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    /// Number of facets containing `v` (equals the vertex degree on a 2-sphere).
    pub fn facet_degree(&self, v: Vertex) -> usize {
        self.facets.keys().filter(|f| f.contains(v)).count()
    }

    /// Vertices adjacent to `v` (sorted).
    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self
            .facets
            .keys()
            .filter(|f| f.contains(v))
            .flat_map(|f| f.0.iter().copied())
            .filter(|&w| w != v)
            .collect();
        set.into_iter().collect()
    }

    /// True iff `a` and `b` span an edge.
    pub fn is_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.facets.keys().any(|f| f.contains(a) && f.contains(b))
    }

    /// Oriented link polygon of a vertex of an oriented 2-manifold, as the
    /// cyclic vertex sequence starting at its least label.
    pub fn polygon(&self, v: Vertex) -> Option<Vec<Vertex>> {
        let mut next: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for (f, &e) in &self.facets {
            if let Some(i) = f.index_of(v) {
                let rest = f.without_index(i);
                let sign = e * Simplex::from_sorted(&[v]).concat_sign(&rest);
                let (a, b) = (rest.0[0], rest.0[1]);
                if sign == 1 {
                    next.insert(a, b);
                } else {
                    next.insert(b, a);
                }
            }
        }
        let (&start, _) = next.iter().next()?;
        let mut cyc = vec![start];
        let mut x = next[&start];
        while x != start {
            cyc.push(x);
            x = *next.get(&x)?;
            if cyc.len() > next.len() {
                return None;
            }
        }
        Some(cyc)
    }
}
