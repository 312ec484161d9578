//! Sparse multivariate polynomials with integer coefficients.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

pub type Exponents = Vec<u8>;

/// `sum(coefficient * x^exponents)` over `vars` variables. Zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    vars: usize,
    terms: BTreeMap<Exponents, i64>,
}

impl SparsePolynomial {
    pub fn zero(vars: usize) -> Self {
        SparsePolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; vars], 1);
        SparsePolynomial { vars, terms }
    }

    /// The linear polynomial `sum(c * x_var)`; repeated variables are merged.
    pub fn linear(vars: usize, terms: &[(usize, i64)]) -> Self {
        let mut out = SparsePolynomial::zero(vars);
        for (var, c) in merge_linear(terms) {
            let mut e = vec![0; vars];
            e[var] = 1;
            out.terms.insert(e, c);
        }
        out
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coefficient(&self, exponents: &[u8]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// True when every stored monomial has the same total degree.
    pub fn is_uniform(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| total_degree(e));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// Multiplies by a linear form, dropping monomials whose exponents exceed
    /// `caps` (exponents only grow, so pruned terms never come back).
    pub fn mul_linear(
        &self,
        factor: &[(usize, i64)],
        caps: Option<&[u8]>,
        max_terms: usize,
    ) -> Result<Self> {
        let factor = merge_linear(factor);
        let mut acc: HashMap<Exponents, i64> = HashMap::with_capacity(self.terms.len() * 2);
        for (e, &c) in &self.terms {
            for &(var, fc) in &factor {
                if caps.is_some_and(|caps| e[var] >= caps[var]) {
                    continue;
                }
                let mut next = e.clone();
                next[var] = next[var]
                    .checked_add(1)
                    .ok_or(Error::Overflow("exponent"))?;
                let prod = c.checked_mul(fc).ok_or(Error::Overflow("coefficient"))?;
                let slot = acc.entry(next).or_insert(0);
                *slot = slot
                    .checked_add(prod)
                    .ok_or(Error::Overflow("coefficient"))?;
            }
            if acc.len() > max_terms {
                return Err(Error::BudgetExceeded {
                    required: acc.len() as u128,
                    budget: max_terms as u128,
                });
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(SparsePolynomial {
            vars: self.vars,
            terms: acc.into_iter().collect(),
        })
    }

    /// Exact evaluation at an integer point.
    pub fn eval(&self, point: &[i64]) -> i128 {
        assert_eq!(point.len(), self.vars, "point dimension");
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter()
                    .zip(point)
                    .fold(c as i128, |acc, (&k, &x)| acc * (x as i128).pow(k as u32))
            })
            .sum()
    }
}

pub fn total_degree(e: &[u8]) -> u32 {
    e.iter().map(|&k| k as u32).sum()
}

fn merge_linear(terms: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
    for &(var, c) in terms {
        *merged.entry(var).or_insert(0) += c;
    }
    merged.into_iter().filter(|&(_, c)| c != 0).collect()
}
