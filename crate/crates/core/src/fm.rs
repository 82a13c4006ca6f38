//! Exact Fourier–Motzkin elimination over the rationals with strict and
//! non-strict inequalities.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::rational::Q;

/// `Σ coeffs[j]·x_j < rhs` when `strict`, `≤` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<Q>,
    pub rhs: Q,
    pub strict: bool,
}

impl Inequality {
    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn constant_holds(&self) -> bool {
        if self.strict {
            self.rhs.is_positive()
        } else {
            !self.rhs.is_negative()
        }
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(Q::zero(), |s, (a, v)| s + a * v);
        if self.strict {
            lhs < self.rhs
        } else {
            lhs <= self.rhs
        }
    }

    /// Scale so that the last nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Self {
        if let Some(c) = self.coeffs.iter().rev().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for a in &mut self.coeffs {
                *a /= &c;
            }
            self.rhs /= &c;
        }
        self
    }
}

/// A conjunction of linear inequalities in `nvars` unknowns.
#[derive(Debug, Clone, Default)]
pub struct System {
    nvars: usize,
    rows: Vec<Inequality>,
}

impl System {
    pub fn new(nvars: usize) -> Self {
        System {
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[Inequality] {
        &self.rows
    }

    fn push(&mut self, terms: &[(usize, Q)], rhs: Q, strict: bool) {
        let mut coeffs = vec![Q::zero(); self.nvars];
        for (j, a) in terms {
            coeffs[*j] += a;
        }
        self.rows.push(Inequality { coeffs, rhs, strict });
    }

    /// `Σ a·x ≤ rhs`
    pub fn le(&mut self, terms: &[(usize, Q)], rhs: Q) {
        self.push(terms, rhs, false);
    }

    /// `Σ a·x < rhs`
    pub fn lt(&mut self, terms: &[(usize, Q)], rhs: Q) {
        self.push(terms, rhs, true);
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        x.len() == self.nvars && self.rows.iter().all(|r| r.holds(x))
    }

    /// A rational solution, or `None` when the system is infeasible.
    ///
    /// Variables are eliminated from the last to the first; the solution is
    /// rebuilt front to back, taking the midpoint of each variable's
    /// admissible interval (or its bound when the interval is a point or
    /// one-sided).
    pub fn solve(&self) -> Option<Vec<Q>> {
        let mut levels: Vec<Vec<Inequality>> = Vec::with_capacity(self.nvars + 1);
        let mut cur: Vec<Inequality> = self.rows.clone();
        for j in (0..self.nvars).rev() {
            cur = prune(cur)?;
            levels.push(cur.clone());
            cur = eliminate(&cur, j);
        }
        prune(cur)?;
        levels.reverse();

        let mut x: Vec<Q> = Vec::with_capacity(self.nvars);
        for (j, rows) in levels.iter().enumerate() {
            let mut lower: Option<(Q, bool)> = None;
            let mut upper: Option<(Q, bool)> = None;
            for r in rows {
                let a = &r.coeffs[j];
                if a.is_zero() {
                    continue;
                }
                let rest = r.coeffs[..j]
                    .iter()
                    .zip(&x)
                    .fold(Q::zero(), |s, (c, v)| s + c * v);
                let bound = (&r.rhs - rest) / a;
                if a.is_positive() {
                    tighten(&mut upper, bound, r.strict, |new, old| new < old);
                } else {
                    tighten(&mut lower, bound, r.strict, |new, old| new > old);
                }
            }
            let one = Q::from_integer(1.into());
            let v = match (lower, upper) {
                (None, None) => Q::zero(),
                (Some((l, s)), None) => if s { l + one } else { l },
                (None, Some((u, s))) => if s { u - one } else { u },
                (Some((l, _)), Some((u, _))) if l == u => l,
                (Some((l, _)), Some((u, _))) => (l + u) / Q::from_integer(2.into()),
            };
            x.push(v);
        }
        debug_assert!(self.holds(&x));
        Some(x)
    }
}

fn tighten(slot: &mut Option<(Q, bool)>, bound: Q, strict: bool, better: impl Fn(&Q, &Q) -> bool) {
    match slot {
        Some((old, s)) if *old == bound => *s |= strict,
        Some((old, _)) if !better(&bound, old) => {}
        _ => *slot = Some((bound, strict)),
    }
}

/// Drop satisfied constant rows and duplicates; `None` on a violated one.
fn prune(rows: Vec<Inequality>) -> Option<Vec<Inequality>> {
    let mut seen = BTreeSet::new();
    for r in rows {
        if r.is_constant() {
            if !r.constant_holds() {
                return None;
            }
            continue;
        }
        seen.insert(r.normalized());
    }
    Some(seen.into_iter().collect())
}

fn eliminate(rows: &[Inequality], j: usize) -> Vec<Inequality> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[j].is_positive() {
            pos.push(r);
        } else if r.coeffs[j].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let (ap, aq) = (p.coeffs[j].clone(), -q.coeffs[j].clone());
            let coeffs = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(x, y)| x * &aq + y * &ap)
                .collect();
            out.push(Inequality {
                coeffs,
                rhs: &p.rhs * &aq + &q.rhs * &ap,
                strict: p.strict || q.strict,
            });
        }
    }
    out
}
