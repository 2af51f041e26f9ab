//! Rational simplicial chains.
//!
//! A chain maps canonically ordered simplices to nonzero exact rationals;
//! zero coefficients are never stored.

use std::collections::BTreeMap;
use std::ops::{Add, Neg};

use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::Simplex;

/// A formal sum of oriented simplices with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalChain {
    coefficients: BTreeMap<Simplex, BigRational>,
}

impl RationalChain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c · s`.
    pub fn add_term(&mut self, s: Simplex, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coefficients.entry(s);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn coefficient(&self, s: &Simplex) -> BigRational {
        self.coefficients.get(s).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Simplex, BigRational> {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Sum of all coefficients (for 0-chains: the total weight).
    pub fn total_weight(&self) -> BigRational {
        self.coefficients.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Simplicial boundary `∂ [v0,…,vk] = Σ (−1)^i [v0,…,v̂i,…,vk]`.
    pub fn boundary(&self) -> RationalChain {
        let mut out = RationalChain::new();
        for (s, c) in &self.coefficients {
            if s.len() <= 1 {
                continue;
            }
            for (face, sign) in s.boundary() {
                let term = if sign > 0 { c.clone() } else { -c.clone() };
                out.add_term(face, term);
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigRational) -> RationalChain {
        let mut out = RationalChain::new();
        for (s, x) in &self.coefficients {
            out.add_term(s.clone(), x * c);
        }
        out
    }
}

impl FromIterator<(Simplex, BigRational)> for RationalChain {
    fn from_iter<I: IntoIterator<Item = (Simplex, BigRational)>>(iter: I) -> Self {
        let mut out = RationalChain::new();
        for (s, c) in iter {
            out.add_term(s, c);
        }
        out
    }
}

impl Add for &RationalChain {
    type Output = RationalChain;
    fn add(self, other: &RationalChain) -> RationalChain {
        let mut out = self.clone();
        for (s, c) in &other.coefficients {
            out.add_term(s.clone(), c.clone());
        }
        out
    }
}

impl Neg for &RationalChain {
    type Output = RationalChain;
    fn neg(self) -> RationalChain {
        RationalChain {
            coefficients: self.coefficients.iter().map(|(s, c)| (s.clone(), -c.clone())).collect(),
        }
    }
}
