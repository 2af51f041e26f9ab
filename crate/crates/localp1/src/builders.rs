//! Permutation groups, orbits and the built-in complexes.
//!
//! The 15-vertex 8-dimensional complexes are assembled from permutation data
//! entered in cycle notation and from seed facets whose orbits make up the
//! facet list. The seed data carries a checksum so that transcription drift
//! is detected at build time.

use std::collections::{BTreeSet, HashSet, VecDeque};

use sha2::{Digest, Sha256};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Size of the ground set `{1, …, 15}` of the built-in permutations.
pub const GROUND: usize = 15;

/// A permutation of `{1, …, n}`; `images[i - 1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<Vertex>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as Vertex).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<Vertex>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Reads cycle notation such as `(1 2 3)(4 5)` or `(1~2~3)` on `{1..n}`.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<Vertex> = (1..=n as Vertex).collect();
        let mut seen = vec![false; n + 1];
        let cleaned = text.replace('~', " ");
        let mut rest = cleaned.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in `{text}`")))?;
            let cycle: Vec<Vertex> = open[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<Vertex>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point `{t}`")))
                })
                .collect::<Result<_>>()?;
            for &x in &cycle {
                if x == 0 || x as usize > n || seen[x as usize] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} repeated or out of range in `{text}`"
                    )));
                }
                seen[x as usize] = true;
            }
            for i in 0..cycle.len() {
                images[cycle[i] as usize - 1] = cycle[(i + 1) % cycle.len()];
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: Vertex) -> Vertex {
        self.images[x as usize - 1]
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = i as Vertex + 1;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: i32) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut r = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            r = base.compose(&r);
        }
        r
    }

    /// Image of a simplex.
    pub fn apply_simplex(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|&v| self.apply(v))).expect("bijection")
    }

    /// Product of a word read as function composition (rightmost first).
    pub fn product(word: &[&Permutation]) -> Permutation {
        let n = word.first().map(|p| p.degree()).unwrap_or(0);
        word.iter().fold(Permutation::identity(n), |acc, p| acc.compose(p))
    }
}

/// A permutation group given by generators, with its elements enumerated.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Closure of the generators by breadth-first multiplication.
pub fn group_closure(generators: &[Permutation], degree: usize) -> PermutationGroup {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in generators {
            let x = h.compose(&g);
            if seen.insert(x.clone()) {
                elements.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    elements.sort();
    PermutationGroup {
        generators: generators.to_vec(),
        elements,
    }
}

/// Orbit of a simplex under a group, as sorted canonical simplices.
pub fn orbit(group: &PermutationGroup, s: &Simplex) -> BTreeSet<Simplex> {
    group.elements.iter().map(|g| g.apply_simplex(s)).collect()
}

/// Which of the three 15-vertex complexes to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Tilde,
    DoubleTilde,
}

/// Cycle notation of the generating permutations, verbatim.
pub const P_CYCLES: &str = "(1 2 3 4 5)(6 7 8 9 10)(11 12 13 14 15)";
pub const T_CYCLES: &str = "(3 10)(4 14)(5 8)(6 11)(7 12)(13 15)";
pub const S_CYCLES: &str = "(1 6 11)(2 15 14)(3 13 8)(4 7 5)(9 12 10)";
pub const R_CYCLES: &str = "(2 5)(3 4)(7 10)(8 9)(12 15)(13 14)";

/// The twelve seed facets whose orbits under ⟨P, S⟩ form the common part.
pub const COMMON_SEEDS: [(&str, [Vertex; 9]); 12] = [
    ("A", [1, 2, 3, 6, 8, 11, 13, 14, 15]),
    ("B", [1, 3, 6, 8, 9, 10, 11, 12, 13]),
    ("C", [1, 2, 6, 9, 10, 11, 12, 14, 15]),
    ("D", [1, 2, 3, 4, 7, 9, 12, 14, 15]),
    ("E", [1, 2, 4, 7, 9, 10, 12, 13, 14]),
    ("F", [1, 2, 6, 8, 9, 10, 11, 14, 15]),
    ("G", [1, 2, 3, 4, 5, 6, 9, 11, 13]),
    ("H", [1, 3, 5, 6, 8, 9, 10, 11, 12]),
    ("I", [1, 3, 5, 6, 7, 8, 9, 10, 11]),
    ("J", [1, 2, 3, 4, 5, 7, 10, 12, 15]),
    ("K", [1, 2, 3, 7, 8, 10, 12, 13, 14]),
    ("M", [2, 5, 6, 7, 8, 9, 10, 13, 14]),
];

/// The two seed facets of the variable part.
pub const L1_SEED: [Vertex; 9] = [3, 4, 6, 7, 11, 12, 13, 14, 15];
pub const N1_SEED: [Vertex; 9] = [3, 4, 6, 7, 10, 12, 13, 14, 15];

/// SHA-256 of the seed data rendered by [`seed_data_text`].
pub const SEED_CHECKSUM: &str = "ab638713e26ee3ceec2aee81593bb3d93755a6ee1b9cb93ea0d358d64b44c794";

/// Canonical text rendering of all seed data, used for the checksum.
pub fn seed_data_text() -> String {
    let mut out = String::new();
    for (name, f) in COMMON_SEEDS.iter() {
        out.push_str(&format!("{name}:{f:?}\n"));
    }
    out.push_str(&format!("L1:{L1_SEED:?}\nN1:{N1_SEED:?}\n"));
    for c in [P_CYCLES, T_CYCLES, S_CYCLES, R_CYCLES] {
        out.push_str(c);
        out.push('\n');
    }
    out
}

/// Hex SHA-256 of a string.
pub fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The named permutations `P, T, S, R` on `{1..15}`.
pub struct Generators {
    pub p: Permutation,
    pub t: Permutation,
    pub s: Permutation,
    pub r: Permutation,
}

pub fn generators() -> Generators {
    let parse = |c| Permutation::parse_cycles(c, GROUND).expect("built-in cycle notation");
    Generators {
        p: parse(P_CYCLES),
        t: parse(T_CYCLES),
        s: parse(S_CYCLES),
        r: parse(R_CYCLES),
    }
}

/// The symmetry group ⟨P, S⟩ of the plain complex.
pub fn group_g1() -> PermutationGroup {
    let g = generators();
    group_closure(&[g.p, g.s], GROUND)
}

/// The group ⟨R, S⟩ whose orbits of the two extra seeds make up one block.
pub fn group_g0() -> PermutationGroup {
    let g = generators();
    group_closure(&[g.r, g.s], GROUND)
}

/// Orbit sizes of the twelve common seeds under ⟨P, S⟩, in seed order.
pub fn common_orbit_sizes() -> Vec<(&'static str, usize)> {
    let g1 = group_g1();
    COMMON_SEEDS
        .iter()
        .map(|(name, f)| (*name, orbit(&g1, &Simplex::from_sorted(f)).len()))
        .collect()
}

/// The common 415-facet part.
pub fn common_part() -> BTreeSet<Simplex> {
    let g1 = group_g1();
    let mut out = BTreeSet::new();
    for (_, f) in COMMON_SEEDS.iter() {
        out.extend(orbit(&g1, &Simplex::from_sorted(f)));
    }
    out
}

/// Block number `n ∈ 1..=5` of the variable part; `tilde` applies `T` to the
/// seeds first. A block is the ⟨R, S⟩-orbit of the two seeds, moved by
/// `P^(n-1)`.
pub fn variable_block(n: i32, tilde: bool) -> BTreeSet<Simplex> {
    let g = generators();
    let g0 = group_g0();
    let shift = g.p.pow(n - 1);
    let mut out = BTreeSet::new();
    for seed in [L1_SEED, N1_SEED] {
        let mut s = Simplex::from_sorted(&seed);
        if tilde {
            s = g.t.apply_simplex(&s);
        }
        for x in orbit(&g0, &s) {
            out.insert(shift.apply_simplex(&x));
        }
    }
    out
}

/// Builds one of the three 15-vertex complexes (490 facets each).
pub fn build_m8_15(variant: Variant) -> Result<SimplicialComplex> {
    let text = seed_data_text();
    if sha256_hex(&text) != SEED_CHECKSUM {
        return Err(Error::Consistency("seed data checksum mismatch".into()));
    }
    let mut facets = common_part();
    let tilde_blocks: &[i32] = match variant {
        Variant::Plain => &[],
        Variant::Tilde => &[1],
        Variant::DoubleTilde => &[1, 3],
    };
    for n in 1..=5 {
        facets.extend(variable_block(n, tilde_blocks.contains(&n)));
    }
    if facets.len() != 490 {
        return Err(Error::Consistency(format!(
            "expected 490 facets, generated {}",
            facets.len()
        )));
    }
    SimplicialComplex::from_simplices(facets)
}

/// Boundary of the `n`-simplex on `{1, …, n+1}`: all `n`-element subsets,
/// an `(n−1)`-sphere.
pub fn build_boundary_simplex(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let full = Simplex::new(1..=(n as Vertex + 1))?;
    SimplicialComplex::from_simplices(full.faces(n - 1))
}

/// True iff every `k`-subset of the vertex set spans a face.
pub fn verify_neighbourliness(k: &SimplicialComplex, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    let all = Simplex::from_sorted(&k.vertices());
    let faces = k.faces(size - 1);
    all.faces(size - 1).iter().all(|s| faces.contains(s))
}

/// Checks the complementarity condition: a subset of size `m` spans a facet
/// iff its complement does not span a face.
pub fn verify_complementarity(k: &SimplicialComplex) -> bool {
    let all = Simplex::from_sorted(&k.vertices());
    let m = k.facet_size();
    if m == 0 || m >= all.len() {
        return false;
    }
    let comp_faces = k.faces(all.len() - m - 1);
    all.faces(m - 1).iter().all(|s| {
        let is_facet = k.facets().contains(s);
        let comp = all.minus(s);
        is_facet != comp_faces.contains(&comp)
    })
}

/// Resolves a built-in name: `M8_15`, `M8_15_tilde`, `M8_15_double_tilde`,
/// or `boundary_simplex:n`.
pub fn builtin(name: &str) -> Result<SimplicialComplex> {
    match name {
        "M8_15" => build_m8_15(Variant::Plain),
        "M8_15_tilde" => build_m8_15(Variant::Tilde),
        "M8_15_double_tilde" => build_m8_15(Variant::DoubleTilde),
        _ => {
            if let Some(n) = name.strip_prefix("boundary_simplex:") {
                let n: usize = n.parse().map_err(|_| Error::UnknownBuiltin(name.to_string()))?;
                build_boundary_simplex(n)
            } else {
                Err(Error::UnknownBuiltin(name.to_string()))
            }
        }
    }
}
