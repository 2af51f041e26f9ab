//! The local formula end to end: for every codimension-4 simplex `σ`,
//! reduce its link to `∂Δ⁴`, induce the reduction on every participating
//! vertex link, close each induced chain into a cycle of 2-spheres, evaluate
//! the cocycle, and assemble the rational cycle dual to `p₁`.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::bistellar::MoveChain;
use crate::chain::RationalChain;
use crate::complex::{OrientedComplex, Simplex, SimplicialComplex, Vertex};
use crate::cycles::{chain_vertices, decompose, induce_chain, DecomposeOptions, DecompositionRow};
use crate::error::{Error, Result};
use crate::format::write_facet_list;
use crate::homology::class_coefficient;
use crate::reducer::{canonical_kappa, close_paths, reduce_3sphere, relabel_chain, ReducerConfig};

/// Configuration of one run.
#[derive(Clone, Debug, Default)]
pub struct PipelineConfig {
    pub reducer: ReducerConfig,
    pub decompose: DecomposeOptions,
    /// Worker threads; `0` means the rayon default.
    pub jobs: usize,
    /// Keep each link's reduction chain.
    pub keep_chains: bool,
    /// Keep each cycle's decomposition rows.
    pub keep_decompositions: bool,
}

/// The closed cycle of one vertex and its decomposition.
#[derive(Clone, Debug)]
pub struct VertexCycleReport {
    pub vertex: Vertex,
    pub value: BigRational,
    pub rows: Vec<DecompositionRow>,
}

/// Everything computed for one 3-sphere.
#[derive(Clone, Debug)]
pub struct LinkReport {
    pub value: BigRational,
    pub chain: Option<MoveChain>,
    pub cycles: Vec<VertexCycleReport>,
}

/// The closed cycle `η_v`: the induced chain on `link v`, the relabeling
/// bridge from its end to the end of `κ(start)`, and `κ(start)` backwards.
pub fn vertex_cycle(chain: &[OrientedComplex], v: Vertex) -> Result<Vec<OrientedComplex>> {
    let walk = induce_chain(chain, v)?;
    let start = &walk[0];
    let end = walk.last().expect("nonempty");
    if end.num_vertices() != 4 {
        return Err(Error::Consistency(format!(
            "link of vertex {v} does not end at a tetrahedron boundary"
        )));
    }
    let mut kappa = canonical_kappa(start)?;
    let bridge = relabel_chain(end, kappa.last().expect("nonempty"))?;
    kappa.reverse();
    close_paths(&[&walk, &bridge, &kappa])
}

/// `f(L)` for an oriented 3-sphere, with the supporting data.
pub fn local_formula_report(l: &OrientedComplex, cfg: &PipelineConfig) -> Result<LinkReport> {
    let chain = reduce_3sphere(l, &cfg.reducer)?;
    let mut value = BigRational::zero();
    let mut cycles = Vec::new();
    for v in chain_vertices(&chain) {
        let cyc = vertex_cycle(&chain, v)?;
        let dec = decompose(&cyc, &cfg.decompose)?;
        let val = dec.value();
        value += &val;
        if cfg.keep_decompositions {
            cycles.push(VertexCycleReport {
                vertex: v,
                value: val,
                rows: dec.rows(),
            });
        }
    }
    let chain = if cfg.keep_chains {
        Some(MoveChain::from_complexes(&chain)?)
    } else {
        None
    };
    Ok(LinkReport { value, chain, cycles })
}

/// `f(L)`: Σ over participating vertices of the cocycle on `η_v`.
pub fn local_formula_value(l: &OrientedComplex, cfg: &PipelineConfig) -> Result<BigRational> {
    Ok(local_formula_report(l, cfg)?.value)
}

/// Result of the pipeline on a whole manifold.
#[derive(Clone, Debug)]
pub struct PontryaginResult {
    pub chain: RationalChain,
    /// Per-simplex reports, sorted by simplex.
    pub links: Vec<(Simplex, LinkReport)>,
}

/// `f♯(K) = Σ_σ f(link σ) · σ` over the `(n−4)`-simplices of `K`.
pub fn pontryagin_cycle(k: &OrientedComplex, cfg: &PipelineConfig) -> Result<PontryaginResult> {
    let n = k.dim();
    if n < 4 {
        return Err(Error::DimensionOutOfRange {
            k: 4,
            dim: n.max(0) as usize,
        });
    }
    let simplices: Vec<Simplex> = k.complex().faces((n - 4) as usize).into_iter().collect();
    let work = |s: &Simplex| -> (Simplex, Result<LinkReport>) {
        let r = k.induced_link(s).and_then(|l| local_formula_report(&l, cfg));
        (s.clone(), r)
    };
    let mut results: Vec<(Simplex, Result<LinkReport>)> = if cfg.jobs == 1 {
        simplices.iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?;
        pool.install(|| simplices.par_iter().map(work).collect())
    };
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let mut failures = Vec::new();
    let mut chain = RationalChain::new();
    let mut links = Vec::with_capacity(results.len());
    for (s, r) in results {
        match r {
            Ok(rep) => {
                chain.add_term(s.clone(), rep.value.clone());
                links.push((s, rep));
            }
            Err(e) => failures.push((s.vertices().to_vec(), e.to_string())),
        }
    }
    if !failures.is_empty() {
        return Err(Error::LinkFailures(failures));
    }
    Ok(PontryaginResult { chain, links })
}

/// True iff the chain is a cycle.
pub fn verify_is_cycle(ch: &RationalChain) -> bool {
    ch.is_cycle()
}

/// Hex SHA-256 of the canonical facet-list text of a complex.
pub fn input_hash(k: &SimplicialComplex) -> String {
    crate::builders::sha256_hex(&write_facet_list(k))
}

/// The output document of a run.
#[derive(Clone, Debug, Serialize)]
pub struct OutputDocument {
    pub input_hash: String,
    pub dimension: isize,
    /// Rows `[simplex, numerator, denominator]`.
    pub chain: Vec<(Vec<Vertex>, Value, Value)>,
    pub is_cycle: bool,
    /// Exact rational as text, or `null` if the homology step failed.
    pub class_coefficient: Option<String>,
    /// Why the coefficient is missing, if it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_error: Option<String>,
    /// Wall-clock seconds.
    pub elapsed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<DecompositionDump>>,
}

/// Decomposition rows of one vertex cycle of one simplex.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionDump {
    pub simplex: Vec<Vertex>,
    pub vertex: Vertex,
    pub value: String,
    pub rows: Vec<(String, Vec<i64>, i64, String)>,
}

fn int_value(x: &num_bigint::BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

impl OutputDocument {
    /// Runs the pipeline on `k` and fills in the document.
    pub fn compute(k: &SimplicialComplex, cfg: &PipelineConfig) -> Result<(Self, PontryaginResult)> {
        let t0 = Instant::now();
        let oriented = k.orient()?;
        let res = pontryagin_cycle(&oriented, cfg)?;
        let is_cycle = verify_is_cycle(&res.chain);
        let dim = (k.dim() - 4).max(0) as usize;
        let (class_coefficient, class_error) = if res.chain.is_zero() {
            (Some("0".to_string()), None)
        } else if !is_cycle {
            (None, Some(Error::NotACycle.to_string()))
        } else {
            match class_coefficient(&res.chain, k, dim) {
                Ok(c) => (Some(c.to_string()), None),
                Err(e) => (None, Some(e.to_string())),
            }
        };
        let chain = res
            .chain
            .terms()
            .iter()
            .map(|(s, c)| (s.vertices().to_vec(), int_value(c.numer()), int_value(c.denom())))
            .collect();
        let decomposition = cfg.keep_decompositions.then(|| {
            res.links
                .iter()
                .flat_map(|(s, rep)| {
                    rep.cycles.iter().map(move |c| DecompositionDump {
                        simplex: s.vertices().to_vec(),
                        vertex: c.vertex,
                        value: c.value.to_string(),
                        rows: c
                            .rows
                            .iter()
                            .map(|r| {
                                (
                                    r.kind.to_string(),
                                    r.params.clone(),
                                    r.multiplicity,
                                    r.value.to_string(),
                                )
                            })
                            .collect(),
                    })
                })
                .collect()
        });
        let doc = OutputDocument {
            input_hash: input_hash(k),
            dimension: k.dim(),
            chain,
            is_cycle,
            class_coefficient,
            class_error,
            elapsed: t0.elapsed().as_secs_f64(),
            decomposition,
        };
        Ok((doc, res))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// File name for a dumped chain: the sorted vertices of `σ` joined by `_`.
pub fn chain_file_name(s: &Simplex) -> String {
    let parts: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
    format!("{}.trace", parts.join("_"))
}

/// Text of a dumped chain: comment header with the start complex, then
/// one move per line.
pub fn chain_file_text(s: &Simplex, chain: &MoveChain) -> String {
    let mut out = format!("# sigma {s}\n");
    for (f, sign) in chain.start.facets() {
        out.push_str(&format!("# start {} {f}\n", if *sign > 0 { '+' } else { '-' }));
    }
    out.push_str(&chain.trace());
    out
}
