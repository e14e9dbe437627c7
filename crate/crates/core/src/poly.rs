//! Sparse mixed polynomials: finite sums `c · z^mu · zbar^nu` with exact
//! complex-rational coefficients, and maps built from them.
//!
//! Canonical form is the invariant everything else leans on: terms are
//! sorted lexicographically by `(mu, nu)`, duplicate keys merged, exact-zero
//! coefficients dropped. Equality of canonical polynomials is structural.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::ComplexRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("variable index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("restriction subset must be nonempty")]
    EmptySubset,
    #[error("a map needs at least one component")]
    EmptyMap,
}

/// One term `coeff · z^mu · zbar^nu`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedMonomial {
    #[serde(rename = "c")]
    pub coeff: ComplexRational,
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
}

impl MixedMonomial {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.mu
            .cmp(&other.mu)
            .then_with(|| self.nu.cmp(&other.nu))
    }

    /// Radial exponent `mu + nu`.
    pub fn radial(&self) -> Vec<u32> {
        self.mu
            .iter()
            .zip(&self.nu)
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.mu.iter().sum::<u32>() + self.nu.iter().sum::<u32>()
    }
}

impl fmt::Debug for MixedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} z^{:?} zb^{:?}", self.coeff, self.mu, self.nu)
    }
}

/// A mixed polynomial in `nvars` complex variables and their conjugates.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedPolynomial {
    pub nvars: usize,
    pub terms: Vec<MixedMonomial>,
}

impl MixedPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: ComplexRational) -> Self {
        Self::from_terms(
            nvars,
            vec![MixedMonomial {
                coeff: c,
                mu: vec![0; nvars],
                nu: vec![0; nvars],
            }],
        )
    }

    /// Monomial `c · z^mu · zbar^nu`; panics if exponent lengths disagree
    /// with `nvars` (builder misuse, not user input).
    pub fn monomial(nvars: usize, c: ComplexRational, mu: Vec<u32>, nu: Vec<u32>) -> Self {
        assert_eq!(mu.len(), nvars);
        assert_eq!(nu.len(), nvars);
        Self::from_terms(
            nvars,
            vec![MixedMonomial {
                coeff: c,
                mu,
                nu,
            }],
        )
    }

    /// The variable `z_j` (1-based).
    pub fn var(nvars: usize, j: usize) -> Self {
        let mut mu = vec![0; nvars];
        mu[j - 1] = 1;
        Self::monomial(nvars, ComplexRational::one(), mu, vec![0; nvars])
    }

    /// The conjugated variable `zbar_j` (1-based).
    pub fn var_conj(nvars: usize, j: usize) -> Self {
        let mut nu = vec![0; nvars];
        nu[j - 1] = 1;
        Self::monomial(nvars, ComplexRational::one(), vec![0; nvars], nu)
    }

    /// Canonicalize an arbitrary term list: sort, merge, drop zeros.
    pub fn from_terms(nvars: usize, mut terms: Vec<MixedMonomial>) -> Self {
        terms.sort_by(|a, b| a.key_cmp(b));
        let mut out: Vec<MixedMonomial> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.key_cmp(&t) == Ordering::Equal => {
                    last.coeff += &t.coeff;
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Self { nvars, terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch(self.nvars, other.nvars));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self::from_terms(self.nvars, terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch(self.nvars, other.nvars));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(MixedMonomial {
                    coeff: &a.coeff * &b.coeff,
                    mu: a.mu.iter().zip(&b.mu).map(|(x, y)| x + y).collect(),
                    nu: a.nu.iter().zip(&b.nu).map(|(x, y)| x + y).collect(),
                });
            }
        }
        Ok(Self::from_terms(self.nvars, terms))
    }

    pub fn negate(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| MixedMonomial {
                    coeff: t.coeff.clone().neg_owned(),
                    mu: t.mu.clone(),
                    nu: t.nu.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| MixedMonomial {
                    coeff: &t.coeff * c,
                    mu: t.mu.clone(),
                    nu: t.nu.clone(),
                })
                .collect(),
        }
    }

    /// Complex conjugate: swaps `(mu, nu)` and conjugates coefficients.
    pub fn conjugate(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| MixedMonomial {
                coeff: t.coeff.conj(),
                mu: t.nu.clone(),
                nu: t.mu.clone(),
            })
            .collect();
        Self::from_terms(self.nvars, terms)
    }

    /// Natural power by repeated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, ComplexRational::one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same nvars");
        }
        acc
    }

    /// Restriction `f^I`: drop every term supported outside `I` (1-based
    /// indices). The ambient variable count is kept.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self, PolyError> {
        if subset.is_empty() {
            return Err(PolyError::EmptySubset);
        }
        for &i in subset {
            if i == 0 || i > self.nvars {
                return Err(PolyError::IndexOutOfRange(i, self.nvars));
            }
        }
        let mut inside = vec![false; self.nvars];
        for &i in subset {
            inside[i - 1] = true;
        }
        let terms = self
            .terms
            .iter()
            .filter(|t| {
                t.mu
                    .iter()
                    .zip(&t.nu)
                    .enumerate()
                    .all(|(j, (m, n))| inside[j] || m + n == 0)
            })
            .cloned()
            .collect();
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Indices (1-based) of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for t in &self.terms {
            for (j, (m, n)) in t.mu.iter().zip(&t.nu).enumerate() {
                if m + n > 0 {
                    seen[j] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(j, &s)| s.then_some(j + 1))
            .collect()
    }

    /// Re-express a polynomial supported inside `I` over `|I|` variables.
    pub fn compress_to(&self, subset: &[usize]) -> Result<Self, PolyError> {
        let restricted = self.restrict(subset)?;
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let terms = restricted
            .terms
            .iter()
            .map(|t| MixedMonomial {
                coeff: t.coeff.clone(),
                mu: sorted.iter().map(|&i| t.mu[i - 1]).collect(),
                nu: sorted.iter().map(|&i| t.nu[i - 1]).collect(),
            })
            .collect();
        Ok(Self::from_terms(sorted.len(), terms))
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.total_degree()).max().unwrap_or(0)
    }
}

impl ComplexRational {
    fn neg_owned(self) -> Self {
        -self
    }
}

impl fmt::Debug for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parser::format_polynomial(self).text)
    }
}

/// An ordered list of mixed polynomials over shared variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedMap {
    pub nvars: usize,
    pub components: Vec<MixedPolynomial>,
}

impl MixedMap {
    pub fn new(components: Vec<MixedPolynomial>) -> Result<Self, PolyError> {
        let first = components.first().ok_or(PolyError::EmptyMap)?;
        let nvars = first.nvars;
        for c in &components {
            if c.nvars != nvars {
                return Err(PolyError::NvarsMismatch(nvars, c.nvars));
            }
        }
        Ok(Self { nvars, components })
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn conjugate(&self) -> Self {
        Self {
            nvars: self.nvars,
            components: self.components.iter().map(|f| f.conjugate()).collect(),
        }
    }

    pub fn restrict(&self, subset: &[usize]) -> Result<Self, PolyError> {
        let components = self
            .components
            .iter()
            .map(|f| f.restrict(subset))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            nvars: self.nvars,
            components,
        })
    }

    pub fn is_holomorphic(&self) -> bool {
        self.components
            .iter()
            .all(|f| f.terms.iter().all(|t| t.nu.iter().all(|&n| n == 0)))
    }
}

/// An evaluation point in `C^n`.
pub type PointC = Vec<Complex64>;

/// Dense real matrix used for differentials; row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, j: usize) -> MixedPolynomial {
        MixedPolynomial::var(n, j)
    }

    fn zb(n: usize, j: usize) -> MixedPolynomial {
        MixedPolynomial::var_conj(n, j)
    }

    #[test]
    fn conjugate_swaps_exponents() {
        let f = z(1, 1).pow(2);
        assert_eq!(f.conjugate(), zb(1, 1).pow(2));
        let g = z(2, 1).mul(&zb(2, 2)).unwrap();
        assert_eq!(g.conjugate().conjugate(), g);
    }

    #[test]
    fn difference_of_squares() {
        let n = 1;
        let sum = z(n, 1).add(&zb(n, 1)).unwrap();
        let diff = z(n, 1).sub(&zb(n, 1)).unwrap();
        let prod = sum.mul(&diff).unwrap();
        let expected = z(n, 1).pow(2).sub(&zb(n, 1).pow(2)).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn canonicalization_merges_and_drops() {
        let n = 2;
        let t = MixedMonomial {
            coeff: ComplexRational::from_int(1),
            mu: vec![1, 0],
            nu: vec![0, 0],
        };
        let tneg = MixedMonomial {
            coeff: ComplexRational::from_int(-1),
            mu: vec![1, 0],
            nu: vec![0, 0],
        };
        let f = MixedPolynomial::from_terms(n, vec![t.clone(), t, tneg]);
        assert_eq!(f, z(n, 1));
    }

    #[test]
    fn restrict_drops_outside_terms() {
        let n = 2;
        let f = z(n, 1).add(&z(n, 2).pow(2)).unwrap();
        let r = f.restrict(&[2]).unwrap();
        assert_eq!(r, z(n, 2).pow(2));
        assert_eq!(f.restrict(&[1, 2]).unwrap(), f);
        let g = z(n, 1).mul(&zb(n, 2)).unwrap();
        assert!(g.restrict(&[1]).unwrap().is_zero());
        assert_eq!(f.restrict(&[]), Err(PolyError::EmptySubset));
    }

    #[test]
    fn map_requires_shared_nvars() {
        assert_eq!(MixedMap::new(vec![]).unwrap_err(), PolyError::EmptyMap);
        let err = MixedMap::new(vec![z(1, 1), z(2, 1)]).unwrap_err();
        assert_eq!(err, PolyError::NvarsMismatch(1, 2));
    }
}
