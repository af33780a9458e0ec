use super::SatError;
use crate::exactnum::Rational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    /// `3` is `x3`, `-3` is `not x3`. Zero is not a literal.
    pub fn from_dimacs(x: i64) -> Option<Self> {
        match x {
            0 => None,
            x if x > 0 => Some(Literal::pos(x as usize)),
            x => Some(Literal::neg(x.unsigned_abs() as usize)),
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    /// Whether the literal is true under `a` (indexed by variable - 1).
    pub fn eval(self, a: &[bool]) -> bool {
        a[self.var - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "~x{}", self.var)
        }
    }
}

/// A disjunction of literals over distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: Vec<Literal>) -> Result<Self, SatError> {
        if lits.is_empty() {
            return Err(SatError::InvalidClause("empty clause".into()));
        }
        for (i, a) in lits.iter().enumerate() {
            if a.var == 0 {
                return Err(SatError::InvalidClause("variable index 0".into()));
            }
            if lits[..i].iter().any(|b| b.var == a.var) {
                let c = Clause { lits: lits.clone() };
                return Err(SatError::InvalidClause(format!("variable x{} repeats in {c}", a.var)));
            }
        }
        Ok(Clause { lits })
    }

    pub fn from_dimacs(xs: &[i64]) -> Result<Self, SatError> {
        let lits = xs
            .iter()
            .map(|&x| Literal::from_dimacs(x).ok_or_else(|| SatError::InvalidClause("literal 0".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(lits)
    }

    pub fn lits(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn max_var(&self) -> usize {
        self.lits.iter().map(|l| l.var).max().unwrap_or(0)
    }

    /// Positions `s` (0-based) holding positive literals.
    pub fn positive_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.lits[s].positive).collect()
    }

    /// Positions `s` (0-based) holding negated literals.
    pub fn negative_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| !self.lits[s].positive).collect()
    }

    pub fn num_negative(&self) -> usize {
        self.lits.iter().filter(|l| !l.positive).count()
    }

    pub fn is_satisfied(&self, a: &[bool]) -> bool {
        self.lits.iter().any(|l| l.eval(a))
    }

    /// The clause with its literals sorted by variable.
    pub fn normalized(&self) -> Clause {
        let mut lits = self.lits.clone();
        lits.sort_by_key(|l| l.var);
        Clause { lits }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Truth values for `x_1..x_n`; `a[j-1]` is `x_j`.
pub type Assignment = Vec<bool>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, SatError> {
        if let Some(c) = clauses.iter().find(|c| c.max_var() > num_vars) {
            return Err(SatError::InvalidClause(format!("{c} uses a variable beyond n = {num_vars}")));
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMaxSatInstance {
    pub cnf: Cnf,
    pub weights: Vec<u64>,
    pub threshold: u64,
    pub width: usize,
}

impl WeightedMaxSatInstance {
    pub fn new(cnf: Cnf, weights: Vec<u64>, threshold: u64, width: usize) -> Result<Self, SatError> {
        if weights.len() != cnf.clauses.len() {
            return Err(SatError::Parameter(format!(
                "{} weights for {} clauses",
                weights.len(),
                cnf.clauses.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(SatError::Parameter("clause weights must be positive".into()));
        }
        if let Some((i, c)) = cnf.clauses.iter().enumerate().find(|(_, c)| c.len() > width) {
            return Err(SatError::Width { clause: i, len: c.len(), width });
        }
        let total: u64 = weights.iter().sum();
        if threshold > total {
            return Err(SatError::Parameter(format!("threshold W = {threshold} exceeds total weight {total}")));
        }
        Ok(WeightedMaxSatInstance { cnf, weights, threshold, width })
    }

    /// Unit weights, `W = m`, width = longest clause.
    pub fn unweighted(cnf: Cnf) -> Self {
        let m = cnf.clauses.len();
        let width = cnf.max_width();
        WeightedMaxSatInstance { cnf, weights: vec![1; m], threshold: m as u64, width }
    }

    pub fn with_threshold(mut self, w: u64) -> Result<Self, SatError> {
        if w > self.total_weight() {
            return Err(SatError::Parameter(format!(
                "threshold W = {w} exceeds total weight {}",
                self.total_weight()
            )));
        }
        self.threshold = w;
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.cnf.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.cnf.clauses
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
}

/// Promise problem: `val >= eps` (YES) versus `val < delta` (NO).
#[derive(Debug, Clone, PartialEq)]
pub struct GapSatInstance {
    pub cnf: Cnf,
    pub delta: Rational,
    pub eps: Rational,
}

impl GapSatInstance {
    pub fn new(cnf: Cnf, delta: Rational, eps: Rational) -> Result<Self, SatError> {
        if delta < Rational::zero() || eps > Rational::one() || delta >= eps {
            return Err(SatError::Parameter(format!("need 0 <= delta < eps <= 1, got delta = {delta}, eps = {eps}")));
        }
        Ok(GapSatInstance { cnf, delta, eps })
    }
}
