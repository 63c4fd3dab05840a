//! Complex linear combinations of named basis elements, used for the
//! right-hand sides of commutation relations.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

const SNAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Combination<B> {
    terms: Vec<(B, C64)>,
}

impl<B: Copy + PartialEq> Combination<B> {
    pub fn zero() -> Self {
        Combination { terms: Vec::new() }
    }

    pub fn term(basis: B, coefficient: C64) -> Self {
        Combination::zero().plus(basis, coefficient)
    }

    /// Adds `coefficient * basis`, merging with an existing term; exact zeros
    /// are dropped.
    pub fn plus(mut self, basis: B, coefficient: C64) -> Self {
        match self.terms.iter_mut().find(|(b, _)| *b == basis) {
            Some((_, c)) => *c += coefficient,
            None => self.terms.push((basis, coefficient)),
        }
        self.terms.retain(|(_, c)| c.norm() != 0.0);
        self
    }

    pub fn scaled(mut self, factor: C64) -> Self {
        for (_, c) in &mut self.terms {
            *c *= factor;
        }
        self.terms.retain(|(_, c)| c.norm() != 0.0);
        self
    }

    /// Drops terms whose coefficient is below `tol` in magnitude.
    pub fn pruned(mut self, tol: f64) -> Self {
        self.terms.retain(|(_, c)| c.norm() > tol);
        self
    }

    pub fn terms(&self) -> &[(B, C64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, basis: B) -> C64 {
        self.terms
            .iter()
            .find(|(b, _)| *b == basis)
            .map(|(_, c)| *c)
            .unwrap_or_default()
    }

    pub fn map_basis<B2: Copy + PartialEq>(&self, f: impl Fn(B) -> B2) -> Combination<B2> {
        self.terms
            .iter()
            .fold(Combination::zero(), |acc, &(b, c)| acc.plus(f(b), c))
    }

    /// `Σ c_b M(b)` for a square matrix representation of the basis.
    pub fn evaluate<'a>(&self, dim: usize, matrix: impl Fn(B) -> &'a DMatrix<C64>) -> DMatrix<C64> {
        let mut out = DMatrix::zeros(dim, dim);
        for &(b, c) in &self.terms {
            out += matrix(b) * c;
        }
        out
    }
}

fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < SNAP {
        r + 0.0
    } else {
        x
    }
}

fn magnitude(x: f64) -> String {
    if x == 1.0 {
        String::new()
    } else {
        format!("{x}*")
    }
}

impl<B: fmt::Display> fmt::Display for Combination<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let (re, im) = (snap(c.re), snap(c.im));
            let (negative, body) = if im == 0.0 {
                (re < 0.0, magnitude(re.abs()))
            } else if re == 0.0 {
                let m = im.abs();
                let body = if m == 1.0 { "i*".to_string() } else { format!("{m}i*") };
                (im < 0.0, body)
            } else {
                (false, format!("({re}{:+}i)*", im))
            };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{body}{b}")?;
        }
        Ok(())
    }
}
