//! Piecewise-linear morphisms of the reparametrization category: nondecreasing
//! surjections `[0, ℓ1] → [0, ℓ2]` with rational breakpoints.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{format_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReparamError {
    #[error("lengths must be positive, got {0}")]
    NonPositiveLength(String),
    #[error("a reparametrization needs at least two breakpoints")]
    TooFewPoints,
    #[error("breakpoint times must start at 0 and increase strictly")]
    BadTimes,
    #[error("values must start at 0 and be nondecreasing")]
    NotNondecreasing,
    #[error("{0} lies outside the domain [0, {1}]")]
    OutOfRange(String, String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(String, String),
}

/// A PL map in canonical form: no three consecutive collinear breakpoints.
/// Equality is equality of canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reparam {
    points: Vec<(Q, Q)>,
}

fn collinear(a: &(Q, Q), b: &(Q, Q), c: &(Q, Q)) -> bool {
    (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0)
}

fn merge_collinear(points: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    let mut out: Vec<(Q, Q)> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    out
}

impl Reparam {
    /// Build from breakpoints `(t, v)`; the lengths are read off the last one.
    pub fn new(points: Vec<(Q, Q)>) -> Result<Self, ReparamError> {
        if points.len() < 2 {
            return Err(ReparamError::TooFewPoints);
        }
        if !points[0].0.is_zero() || points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(ReparamError::BadTimes);
        }
        if !points[0].1.is_zero() || points.windows(2).any(|w| w[0].1 > w[1].1) {
            return Err(ReparamError::NotNondecreasing);
        }
        let last = points.last().unwrap();
        if !last.1.is_positive() {
            return Err(ReparamError::NonPositiveLength(format_q(&last.1)));
        }
        Ok(Reparam {
            points: merge_collinear(points),
        })
    }

    pub fn identity(len: &Q) -> Result<Self, ReparamError> {
        Self::linear(len, len)
    }

    /// The linear map `t ↦ t · dst / src`.
    pub fn linear(src: &Q, dst: &Q) -> Result<Self, ReparamError> {
        for l in [src, dst] {
            if !l.is_positive() {
                return Err(ReparamError::NonPositiveLength(format_q(l)));
            }
        }
        Ok(Reparam {
            points: vec![(Q::zero(), Q::zero()), (src.clone(), dst.clone())],
        })
    }

    pub fn src_len(&self) -> &Q {
        &self.points.last().unwrap().0
    }

    pub fn dst_len(&self) -> &Q {
        &self.points.last().unwrap().1
    }

    pub fn breakpoints(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn eval(&self, t: &Q) -> Result<Q, ReparamError> {
        if t.is_negative() || t > self.src_len() {
            return Err(ReparamError::OutOfRange(format_q(t), format_q(self.src_len())));
        }
        let i = self.points.partition_point(|p| p.0 <= *t);
        if i == self.points.len() {
            return Ok(self.dst_len().clone());
        }
        let (t0, v0) = &self.points[i - 1];
        let (t1, v1) = &self.points[i];
        Ok(v0 + (v1 - v0) * (t - t0) / (t1 - t0))
    }

    /// `(min, max)` of `{t : φ(t) = v}`, for `v` in `[0, dst_len]`.
    pub fn preimage(&self, v: &Q) -> Option<(Q, Q)> {
        if v.is_negative() || v > self.dst_len() {
            return None;
        }
        let p = &self.points;
        let i = p.partition_point(|x| x.1 < *v);
        let lo = if p[i].1 == *v {
            p[i].0.clone()
        } else {
            let ((t0, v0), (t1, v1)) = (&p[i - 1], &p[i]);
            t0 + (t1 - t0) * (v - v0) / (v1 - v0)
        };
        let j = p.partition_point(|x| x.1 <= *v) - 1;
        let hi = if p[j].1 == *v {
            p[j].0.clone()
        } else {
            let ((t0, v0), (t1, v1)) = (&p[j], &p[j + 1]);
            t0 + (t1 - t0) * (v - v0) / (v1 - v0)
        };
        Some((lo, hi))
    }

    /// Sorted breakpoint times of `self` together with the extreme preimages
    /// of `values`. Between two consecutive returned times `self` is linear
    /// and never crosses a member of `values`.
    pub(crate) fn refine_times<'a>(&self, values: impl IntoIterator<Item = &'a Q>) -> Vec<Q> {
        let mut times: Vec<Q> = self.points.iter().map(|p| p.0.clone()).collect();
        for v in values {
            if let Some((lo, hi)) = self.preimage(v) {
                times.push(lo);
                times.push(hi);
            }
        }
        times.sort();
        times.dedup();
        times
    }

    /// The composite `ψ ∘ φ` of `φ = self ∈ M(ℓ1, ℓ2)` and `ψ ∈ M(ℓ2, ℓ3)`.
    pub fn compose(&self, psi: &Reparam) -> Result<Reparam, ReparamError> {
        if self.dst_len() != psi.src_len() {
            return Err(ReparamError::LengthMismatch(
                format_q(self.dst_len()),
                format_q(psi.src_len()),
            ));
        }
        let times = self.refine_times(psi.points.iter().map(|p| &p.0));
        let points = times
            .into_iter()
            .map(|t| {
                let v = psi.eval(&self.eval(&t).expect("in range")).expect("in range");
                (t, v)
            })
            .collect();
        Reparam::new(points)
    }

    /// Concatenation: `self` on `[0, ℓ1]`, then `other` shifted by `(ℓ1, ℓ1')`.
    pub fn tensor(&self, other: &Reparam) -> Reparam {
        let (dt, dv) = (self.src_len().clone(), self.dst_len().clone());
        let mut points = self.points.clone();
        points.extend(other.points.iter().skip(1).map(|(t, v)| (t + &dt, v + &dv)));
        Reparam {
            points: merge_collinear(points),
        }
    }

    /// No flat piece.
    pub fn is_regular(&self) -> bool {
        self.points.windows(2).all(|w| w[0].1 < w[1].1)
    }
}

impl fmt::Display for Reparam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (t, v)) in self.points.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", format_q(t), format_q(v))?;
        }
        f.write_str("]")
    }
}
