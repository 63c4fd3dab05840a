//! Names of the ten O(3,2) generators and their structure constants.
//!
//! With `ε` the Levi-Civita symbol and `δ` the Kronecker delta:
//!
//! ```text
//! [J_i, J_j] = iε_ijk J_k     [J_i, K_j] = iε_ijk K_k     [K_i, K_j] = -iε_ijk J_k
//! [J_i, Q_j] = iε_ijk Q_k     [Q_i, Q_j] = -iε_ijk J_k
//! [K_i, Q_j] = -iδ_ij S0      [J_i, S0] = 0
//! [K_i, S0] = -iQ_i           [Q_i, S0] = iK_i
//! ```
//!
//! These three families cover all 45 unordered pairs of generators.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combination::Combination;
use crate::{Error, C64, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    J1,
    J2,
    J3,
    K1,
    K2,
    K3,
    Q1,
    Q2,
    Q3,
    S0,
}

/// Generator type with its spatial axis (0-based) where one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Rotation(usize),
    Boost(usize),
    Q(usize),
    S0,
}

use Generator::*;

impl Generator {
    pub const ALL: [Generator; 10] = [J1, J2, J3, K1, K2, K3, Q1, Q2, Q3, S0];

    pub fn j(axis: usize) -> Generator {
        [J1, J2, J3][axis]
    }

    pub fn k(axis: usize) -> Generator {
        [K1, K2, K3][axis]
    }

    pub fn q(axis: usize) -> Generator {
        [Q1, Q2, Q3][axis]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn kind(self) -> Kind {
        match self {
            J1 => Kind::Rotation(0),
            J2 => Kind::Rotation(1),
            J3 => Kind::Rotation(2),
            K1 => Kind::Boost(0),
            K2 => Kind::Boost(1),
            K3 => Kind::Boost(2),
            Q1 => Kind::Q(0),
            Q2 => Kind::Q(1),
            Q3 => Kind::Q(2),
            S0 => Kind::S0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            J1 => "J1",
            J2 => "J2",
            J3 => "J3",
            K1 => "K1",
            K2 => "K2",
            K3 => "K3",
            Q1 => "Q1",
            Q2 => "Q2",
            Q3 => "Q3",
            S0 => "S0",
        }
    }

    /// Whether the generator acts only on (x, y, z, t).
    pub fn is_lorentz(self) -> bool {
        matches!(self.kind(), Kind::Rotation(_) | Kind::Boost(_))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// Levi-Civita symbol on 0-based axes.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// `Σ_k c ε_ijk X_k`.
fn epsilon_sum(i: usize, j: usize, c: C64, x: fn(usize) -> Generator) -> Combination<Generator> {
    (0..3).fold(Combination::zero(), |acc, k| {
        acc.plus(x(k), c * levi_civita(i, j, k))
    })
}

/// Expected right-hand side of `[a, b]`.
pub fn commutator_rhs(a: Generator, b: Generator) -> Combination<Generator> {
    use Kind::*;
    match (a.kind(), b.kind()) {
        (Rotation(i), Rotation(j)) => epsilon_sum(i, j, I, Generator::j),
        (Rotation(i), Boost(j)) => epsilon_sum(i, j, I, Generator::k),
        (Boost(i), Boost(j)) => epsilon_sum(i, j, -I, Generator::j),
        (Rotation(i), Q(j)) => epsilon_sum(i, j, I, Generator::q),
        (Q(i), Q(j)) => epsilon_sum(i, j, -I, Generator::j),
        (Boost(i), Q(j)) if i == j => Combination::term(Generator::S0, -I),
        (Boost(_), Q(_)) => Combination::zero(),
        (Rotation(_), S0) => Combination::zero(),
        (Boost(i), S0) => Combination::term(Generator::q(i), -I),
        (Q(i), S0) => Combination::term(Generator::k(i), I),
        (S0, S0) => Combination::zero(),
        _ => commutator_rhs(b, a).scaled(C64::new(-1.0, 0.0)),
    }
}

/// Relation families of the O(3,2) algebra plus the sub-algebras and the
/// Poincaré algebra checked in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// J–J, J–K, K–K.
    Lie11,
    /// J–Q, Q–Q.
    Lie22,
    /// K–Q and everything involving S0.
    Lie33,
    /// The (K3, Q3, S0) triple.
    Su11,
    /// The (J1, J2, J3) triple.
    Su2,
    /// Rotations, boosts and translations.
    Poincare,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lie11 => "lie11",
            Family::Lie22 => "lie22",
            Family::Lie33 => "lie33",
            Family::Su11 => "su11",
            Family::Su2 => "su2",
            Family::Poincare => "poincare",
        }
    }

    /// Which of the three O(3,2) families an unordered pair belongs to.
    pub fn of_pair(a: Generator, b: Generator) -> Family {
        use Kind::*;
        match (a.kind(), b.kind()) {
            (S0, _) | (_, S0) => Family::Lie33,
            (Boost(_), Q(_)) | (Q(_), Boost(_)) => Family::Lie33,
            (Q(_), _) | (_, Q(_)) => Family::Lie22,
            _ => Family::Lie11,
        }
    }

    /// Ordered pairs checked for this family; each unordered pair once.
    pub fn pairs(self) -> Vec<(Generator, Generator)> {
        match self {
            Family::Lie11 | Family::Lie22 | Family::Lie33 => all_pairs()
                .into_iter()
                .filter(|&(a, b)| Family::of_pair(a, b) == self)
                .collect(),
            Family::Su11 => vec![(K3, Q3), (Q3, S0), (S0, K3)],
            Family::Su2 => vec![(J1, J2), (J2, J3), (J3, J1)],
            Family::Poincare => Vec::new(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All 45 unordered pairs `(a, b)` with `a` before `b` in [`Generator::ALL`].
pub fn all_pairs() -> Vec<(Generator, Generator)> {
    let mut out = Vec::with_capacity(45);
    for (n, &a) in Generator::ALL.iter().enumerate() {
        for &b in &Generator::ALL[n + 1..] {
            out.push((a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_partition_all_pairs() {
        let l11 = Family::Lie11.pairs();
        let l22 = Family::Lie22.pairs();
        let l33 = Family::Lie33.pairs();
        assert_eq!((l11.len(), l22.len(), l33.len()), (15, 12, 18));
        let mut all: Vec<_> = l11.iter().chain(&l22).chain(&l33).cloned().collect();
        all.sort();
        assert_eq!(all, all_pairs());
    }

    #[test]
    fn tabulated_relations() {
        assert_eq!(commutator_rhs(J1, J2), Combination::term(J3, I));
        assert_eq!(commutator_rhs(K1, K2), Combination::term(J3, -I));
        assert_eq!(commutator_rhs(Q1, Q2), Combination::term(J3, -I));
        assert_eq!(commutator_rhs(J1, Q2), Combination::term(Q3, I));
        assert_eq!(commutator_rhs(K3, Q3), Combination::term(S0, -I));
        assert_eq!(commutator_rhs(Q3, S0), Combination::term(K3, I));
        assert_eq!(commutator_rhs(S0, K3), Combination::term(Q3, I));
        assert!(commutator_rhs(J1, K1).is_zero());
        assert!(commutator_rhs(K1, Q2).is_zero());
        assert!(commutator_rhs(J2, S0).is_zero());
    }

    #[test]
    fn antisymmetry() {
        for a in Generator::ALL {
            assert!(commutator_rhs(a, a).is_zero(), "{a}");
            for b in Generator::ALL {
                assert_eq!(commutator_rhs(a, b), commutator_rhs(b, a).scaled(C64::new(-1.0, 0.0)));
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("q2".parse::<Generator>(), Ok(Q2));
        assert!("P1".parse::<Generator>().is_err());
    }
}
