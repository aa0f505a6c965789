//! Absolute irreducibility of affine plane curves.
//!
//! If `f` is irreducible over `F_q` but splits over the algebraic closure,
//! its geometric components are `r` conjugates defined over `F_{q^r}`, with
//! `r` dividing the total degree; splitting over `F_{q^r}` then also happens
//! over `F_{q^r'}` for every prime `r' | r`. An `F_q`-irreducible curve with a
//! smooth `F_q`-point is absolutely irreducible.

use super::bifactor::bi_factor;
use super::bivar::BiPoly;
use super::PolyError;
use crate::ff::{prime_factors, Elem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsoluteIrreducibility {
    /// Splits into this many factors (with multiplicity) over the extension
    /// of the given degree.
    Reducible { degree: usize, factors: usize },
    /// Irreducible over the base and smooth at this rational point.
    SmoothPoint { t: Elem, y: Elem },
    /// Irreducible over every extension of prime degree dividing the total
    /// degree.
    PrimeExtensions(Vec<usize>),
}

impl AbsoluteIrreducibility {
    pub fn holds(&self) -> bool {
        !matches!(self, AbsoluteIrreducibility::Reducible { .. })
    }
}

pub fn absolutely_irreducible(f: &BiPoly) -> Result<bool, PolyError> {
    Ok(absolute_irreducibility(f, 0)?.holds())
}

pub fn absolute_irreducibility(f: &BiPoly, seed: u64) -> Result<AbsoluteIrreducibility, PolyError> {
    if f.is_constant() {
        return Err(PolyError::Constant);
    }
    let n = bi_factor(f, seed)?.count_with_multiplicity();
    if n > 1 {
        return Ok(AbsoluteIrreducibility::Reducible {
            degree: 1,
            factors: n,
        });
    }
    if let Some((t, y)) = smooth_point(f, 4096) {
        return Ok(AbsoluteIrreducibility::SmoothPoint { t, y });
    }
    let base = f.field();
    let primes: Vec<usize> = prime_factors(f.total_degree() as u64)
        .into_iter()
        .map(|r| r as usize)
        .collect();
    for &r in &primes {
        let ext = base.tower().field(base.degree() * r)?;
        let n = bi_factor(&f.embed(&ext)?, seed)?.count_with_multiplicity();
        if n > 1 {
            return Ok(AbsoluteIrreducibility::Reducible {
                degree: r,
                factors: n,
            });
        }
    }
    Ok(AbsoluteIrreducibility::PrimeExtensions(primes))
}

/// A rational point with a nonvanishing gradient, scanning at most `limit`
/// values of `t`.
pub(crate) fn smooth_point(f: &BiPoly, limit: usize) -> Option<(Elem, Elem)> {
    let ft = f.derivative_t();
    let fy = f.derivative_y();
    for t0 in f.field().elements().take(limit) {
        let u = f.eval_t(t0);
        if u.is_zero() {
            // the whole line t = t0 lies on the curve
            let a = ft.eval_t(t0);
            let b = fy.eval_t(t0);
            if let Some(y0) = f
                .field()
                .elements()
                .take(limit)
                .find(|&y0| !a.eval(y0).is_zero() || !b.eval(y0).is_zero())
            {
                return Some((t0, y0));
            }
            continue;
        }
        for y0 in u.roots() {
            if !ft.eval(t0, y0).is_zero() || !fy.eval(t0, y0).is_zero() {
                return Some((t0, y0));
            }
        }
    }
    None
}
