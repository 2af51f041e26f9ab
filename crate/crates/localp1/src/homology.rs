//! Integral simplicial homology: boundary matrices, Smith normal form,
//! Betti numbers and torsion, and coordinates of cycles in an integral
//! basis of homology modulo torsion.
//!
//! Large boundary matrices are handled sparsely: unit pivots are eliminated
//! first (which does not change the Smith form) and only the remaining block
//! goes through the dense big-integer Smith normal form.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chain::RationalChain;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Sparse integer matrix stored by columns; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                out[i][j] = BigInt::from(x);
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                cols[i].push((j, x));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            cols,
        }
    }
}

/// The `k`-simplices of a complex, sorted, with their index.
pub fn simplex_index(k: &SimplicialComplex, dim: usize) -> (Vec<Simplex>, HashMap<Simplex, usize>) {
    let list: Vec<Simplex> = k.faces(dim).into_iter().collect();
    let index = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    (list, index)
}

/// Matrix of `∂_dim` from `dim`-simplices (columns) to `(dim−1)`-simplices
/// (rows), both in canonical sorted order.
pub fn boundary_matrix(k: &SimplicialComplex, dim: usize) -> Result<SparseMatrix> {
    let top = k.dim().max(0) as usize;
    if dim == 0 || dim > top {
        return Err(Error::DimensionOutOfRange { k: dim, dim: top });
    }
    let (cols, _) = simplex_index(k, dim);
    let (rows, row_index) = simplex_index(k, dim - 1);
    let cols = cols
        .iter()
        .map(|s| {
            let mut col: Vec<(usize, i64)> = s
                .boundary()
                .into_iter()
                .map(|(f, sign)| (row_index[&f], sign as i64))
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(SparseMatrix {
        nrows: rows.len(),
        ncols: k.faces(dim).len(),
        cols,
    })
}

// ---------------------------------------------------------------------------
// Dense Smith normal form

/// Smith normal form `U · M · V = S` with `S` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Matrix product of dense big-integer matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let inner = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..inner {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    // row dst -= q * row src
    let (d, s) = if dst < src {
        let (a, b) = m.split_at_mut(src);
        (&mut a[dst], &b[0])
    } else {
        let (a, b) = m.split_at_mut(dst);
        (&mut b[0], &a[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// Dense Smith normal form with transforms, pivoting on the entry of least
/// absolute value to limit coefficient growth.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SmithDecomposition {
    let nr = m.len();
    let nc = m.first().map(|r| r.len()).unwrap_or(0);
    let mut s: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity(nr);
    let mut v = identity(nc);
    let mut t = 0;
    while t < nr.min(nc) {
        // Least nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !s[i][j].is_zero() && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut s, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..nr {
                if !s[i][t].is_zero() {
                    let q = s[i][t].div_floor(&s[t][t]);
                    row_axpy(&mut s, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    if !s[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..nc {
                if !s[t][j].is_zero() {
                    let q = s[t][j].div_floor(&s[t][t]);
                    col_axpy(&mut s, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    if !s[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // Move the least remaining entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..nr {
                    if !s[i][t].is_zero() && s[i][t].abs() < s[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..nc {
                    if !s[t][j].is_zero() && s[t][j].abs() < s[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut s, t, best.1);
                    swap_cols(&mut v, t, best.1);
                }
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            let mut bad = None;
            'scan: for i in t + 1..nr {
                for j in t + 1..nc {
                    if !(&s[i][j] % &s[t][t]).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut s, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let diagonal = (0..nr.min(nc))
        .map(|i| s[i][i].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    SmithDecomposition { diagonal, u, v }
}

// ---------------------------------------------------------------------------
// Sparse elimination for rank and torsion

fn checked(x: Option<i64>) -> Result<i64> {
    x.ok_or_else(|| Error::Consistency("integer overflow in sparse elimination".into()))
}

/// `a - q b` on sorted sparse vectors.
fn axpy(a: &[(usize, i64)], q: i64, b: &[(usize, i64)]) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, checked(b[j].1.checked_mul(q).and_then(|x| x.checked_neg()))?));
            j += 1;
        } else {
            let x = checked(a[i].1.checked_sub(checked(b[j].1.checked_mul(q))?))?;
            if x != 0 {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Rank and the Smith diagonal entries greater than one.
pub fn rank_and_torsion(m: &SparseMatrix) -> Result<(usize, Vec<BigInt>)> {
    // Work on rows; eliminate unit pivots, choosing short rows first.
    let t = m.transpose();
    let mut rows: Vec<Option<Vec<(usize, i64)>>> = t.cols.into_iter().map(Some).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.ncols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row.as_ref().expect("fresh") {
            col_rows[c].insert(r);
        }
    }
    let mut rank = 0;
    loop {
        // Shortest row with a unit entry; in it, the unit entry whose
        // column is shortest.
        let mut best: Option<(usize, usize, usize)> = None; // (row, col, row length)
        for (r, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            if row.is_empty() || best.is_some_and(|(_, _, len)| len <= row.len()) {
                continue;
            }
            let pick = row
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| col_rows[e.0].len())
                .map(|e| e.0);
            if let Some(c) = pick {
                best = Some((r, c, row.len()));
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let prow = rows[pr].take().expect("live row");
        let pval = prow.iter().find(|e| e.0 == pc).expect("pivot").1;
        rank += 1;
        for &(c, _) in &prow {
            col_rows[c].remove(&pr);
        }
        let targets: Vec<usize> = std::mem::take(&mut col_rows[pc]).into_iter().collect();
        for r in targets {
            let Some(row) = rows[r].as_ref() else { continue };
            let Some(&(_, x)) = row.iter().find(|e| e.0 == pc) else {
                continue;
            };
            // pval = ±1, so x / pval = x * pval.
            let new = axpy(row, x * pval, &prow)?;
            for &(c, _) in &new {
                col_rows[c].insert(r);
            }
            rows[r] = Some(new);
        }
        col_rows[pc].clear();
    }
    // Remaining nonzero block, densely.
    let live: Vec<&Vec<(usize, i64)>> = rows.iter().flatten().filter(|r| !r.is_empty()).collect();
    if live.is_empty() {
        return Ok((rank, Vec::new()));
    }
    let mut used_cols: Vec<usize> = live.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    used_cols.sort_unstable();
    used_cols.dedup();
    let col_pos: HashMap<usize, usize> = used_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); used_cols.len()]; live.len()];
    for (i, row) in live.iter().enumerate() {
        for &(c, x) in row.iter() {
            dense[i][col_pos[&c]] = BigInt::from(x);
        }
    }
    let snf = smith_normal_form(&dense);
    rank += snf.diagonal.len();
    let torsion = snf.diagonal.into_iter().filter(|d| !d.is_one()).collect();
    Ok((rank, torsion))
}

/// Rank and torsion coefficients of `H_k(K; ℤ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// `H_k(K; ℤ)` from the Smith forms of `∂_k` and `∂_{k+1}`.
pub fn homology(k: &SimplicialComplex, dim: usize) -> Result<HomologyGroup> {
    let top = k.dim().max(0) as usize;
    if dim > top {
        return Err(Error::DimensionOutOfRange { k: dim, dim: top });
    }
    let ck = k.faces(dim).len();
    let rank_k = if dim == 0 {
        0
    } else {
        rank_and_torsion(&boundary_matrix(k, dim)?)?.0
    };
    let (rank_k1, torsion) = if dim == top {
        (0, Vec::new())
    } else {
        rank_and_torsion(&boundary_matrix(k, dim + 1)?)?
    };
    Ok(HomologyGroup {
        betti: ck - rank_k - rank_k1,
        torsion,
    })
}

/// All homology groups `H_0 … H_n`.
pub fn all_homology(k: &SimplicialComplex) -> Result<Vec<HomologyGroup>> {
    let top = k.dim().max(0) as usize;
    (0..=top).map(|d| homology(k, d)).collect()
}

// ---------------------------------------------------------------------------
// Integral basis of homology modulo torsion

/// Column reduction by lowest row (each column reduced against earlier
/// reduced columns with the same lowest row), tracking the column operations.
struct Reduction {
    /// Reduced columns.
    r: Vec<Vec<(usize, i64)>>,
    /// Accumulated operations: column `j` of the original matrix times `v`.
    v: Vec<Vec<(usize, i64)>>,
}

fn reduce_by_low(m: &SparseMatrix, track: bool) -> Result<Reduction> {
    let mut r: Vec<Vec<(usize, i64)>> = m.cols.clone();
    let mut v: Vec<Vec<(usize, i64)>> = (0..m.ncols)
        .map(|j| if track { vec![(j, 1)] } else { Vec::new() })
        .collect();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for j in 0..m.ncols {
        while let Some(&(low, x)) = r[j].last() {
            let Some(&i) = owner.get(&low) else { break };
            let p = r[i].last().expect("pivot column").1;
            if x % p != 0 {
                return Err(Error::NonUnitPivot(format!(
                    "column {j} has entry {x} over pivot {p} in row {low}"
                )));
            }
            let q = x / p;
            let (ri, rj) = (r[i].clone(), r[j].clone());
            r[j] = axpy(&rj, q, &ri)?;
            if track {
                let (vi, vj) = (v[i].clone(), v[j].clone());
                v[j] = axpy(&vj, q, &vi)?;
            }
        }
        if let Some(&(low, _)) = r[j].last() {
            owner.insert(low, j);
        }
    }
    Ok(Reduction { r, v })
}

/// An integral basis of `H_k` modulo torsion together with the dual
/// functionals used to read off coordinates.
///
/// Let `F` be the `k`-simplices whose columns of `∂_k` reduce to zero. The
/// corresponding reduction vectors form a ℤ-basis of the cycles, and the
/// coordinates of a cycle in that basis are its coefficients on `F`. The
/// functionals are a ℤ-basis of the integer vectors on `F` annihilating
/// all boundaries; each has a unit entry at its own generator simplex and
/// vanishes on the other generators, so the generators and functionals are
/// dual bases.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub dim: usize,
    pub simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    /// Functionals, as sparse vectors over simplex indices (supported on `F`).
    pub functionals: Vec<Vec<(usize, i64)>>,
    /// Generator cycles, as sparse integer vectors over simplex indices.
    pub generators: Vec<Vec<(usize, i64)>>,
}

impl HomologyBasis {
    pub fn compute(k: &SimplicialComplex, dim: usize) -> Result<Self> {
        let top = k.dim().max(0) as usize;
        if dim > top {
            return Err(Error::DimensionOutOfRange { k: dim, dim: top });
        }
        let (simplices, index) = simplex_index(k, dim);
        let n = simplices.len();
        let kernel_red = if dim == 0 {
            Reduction {
                r: vec![Vec::new(); n],
                v: (0..n).map(|j| vec![(j, 1)]).collect(),
            }
        } else {
            reduce_by_low(&boundary_matrix(k, dim)?, true)?
        };
        let free: Vec<usize> = (0..n).filter(|&j| kernel_red.r[j].is_empty()).collect();
        // A = ∂_{k+1} restricted to rows F; reduce Aᵀ.
        let upper_cols = if dim == top {
            vec![Vec::new(); free.len()]
        } else {
            let b = boundary_matrix(k, dim + 1)?.transpose();
            free.iter().map(|&j| b.cols[j].clone()).collect()
        };
        let at = SparseMatrix {
            nrows: if dim == top { 0 } else { k.faces(dim + 1).len() },
            ncols: free.len(),
            cols: upper_cols,
        };
        let red = reduce_by_low(&at, true)?;
        let mut functionals = Vec::new();
        let mut generators = Vec::new();
        for (c, col) in red.r.iter().enumerate() {
            if !col.is_empty() {
                continue;
            }
            let mut psi: Vec<(usize, i64)> = red.v[c].iter().map(|&(i, x)| (free[i], x)).collect();
            psi.sort_unstable();
            functionals.push(psi);
            generators.push(kernel_red.v[free[c]].clone());
        }
        Ok(HomologyBasis {
            dim,
            simplices,
            index,
            functionals,
            generators,
        })
    }

    pub fn rank(&self) -> usize {
        self.functionals.len()
    }

    /// Coordinates of a rational cycle with respect to the generators.
    pub fn express(&self, chain: &RationalChain) -> Result<Vec<BigRational>> {
        if !chain.is_cycle() {
            return Err(Error::NotACycle);
        }
        for s in chain.terms().keys() {
            if s.len() != self.dim + 1 || !self.index.contains_key(s) {
                return Err(Error::NotAFace(s.vertices().to_vec()));
            }
        }
        Ok(self
            .functionals
            .iter()
            .map(|psi| {
                psi.iter().fold(BigRational::zero(), |acc, &(i, x)| {
                    acc + chain.coefficient(&self.simplices[i]) * BigRational::from_integer(x.into())
                })
            })
            .collect())
    }

    /// The `i`-th generator as a chain.
    pub fn generator_chain(&self, i: usize) -> RationalChain {
        self.generators[i]
            .iter()
            .map(|&(j, x)| (self.simplices[j].clone(), BigRational::from_integer(x.into())))
            .collect()
    }
}

/// Coordinates of a rational `k`-cycle in an integral basis of `H_k`
/// modulo torsion.
pub fn express_in_basis(chain: &RationalChain, k: &SimplicialComplex, dim: usize) -> Result<Vec<BigRational>> {
    HomologyBasis::compute(k, dim)?.express(chain)
}

/// Coefficient `λ` with `[chain] = λ · g` for a generator `g` of a rank-one
/// homology group modulo torsion.
pub fn class_coefficient(chain: &RationalChain, k: &SimplicialComplex, dim: usize) -> Result<BigRational> {
    let basis = HomologyBasis::compute(k, dim)?;
    if basis.rank() != 1 {
        return Err(Error::RankMismatch(basis.rank()));
    }
    Ok(basis.express(chain)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn snf_examples() {
        let d = smith_normal_form(&big(&[&[2, 4], &[6, 8]]));
        assert_eq!(d.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
        let d = smith_normal_form(&big(&[&[1, 0], &[0, 1]]));
        assert_eq!(d.diagonal, vec![BigInt::one(), BigInt::one()]);
        let d = smith_normal_form(&big(&[&[0, 0], &[0, 0]]));
        assert!(d.diagonal.is_empty());
    }

    #[test]
    fn snf_reconstructs() {
        let m = big(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5], &[3, 5, 8]]);
        let d = smith_normal_form(&m);
        let s = mat_mul(&mat_mul(&d.u, &m), &d.v);
        for (i, row) in s.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j && i < d.diagonal.len() {
                    assert_eq!(*x, d.diagonal[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn edge_boundary_column() {
        let k = SimplicialComplex::build(&[vec![1, 2]]).unwrap();
        let m = boundary_matrix(&k, 1).unwrap();
        assert_eq!(m.cols, vec![vec![(0, -1), (1, 1)]]);
    }

    #[test]
    fn sphere_homology() {
        let k = crate::builders::build_boundary_simplex(3).unwrap();
        let h: Vec<usize> = all_homology(&k).unwrap().iter().map(|g| g.betti).collect();
        assert_eq!(h, vec![1, 0, 1]);
    }
}
