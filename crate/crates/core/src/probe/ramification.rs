//! Riemann–Hurwitz for a Galois projection: over each branch point all
//! indices agree, so one index `e` per fiber determines its contribution.

use super::screen::branch_points;
use super::{degree_cap, profile, BasePoint, FiberProfile, ProbeError, ProjectionModel};
use crate::ff::{common_field, embedding};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenusValue {
    Exact(i64),
    AtLeast(i64),
}

impl GenusValue {
    pub fn value(&self) -> i64 {
        match self {
            GenusValue::Exact(g) | GenusValue::AtLeast(g) => *g,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BranchFiber {
    pub profile: FiberProfile,
    /// Number of conjugate branch points this fiber stands for.
    pub conjugates: usize,
    /// The common index, when pinned down.
    pub index: Option<usize>,
    pub wild: bool,
    /// Lower bound (exact when tame and pinned down) for the sum of
    /// different exponents over the fiber.
    pub contribution: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct RamificationReport {
    pub degree: usize,
    pub fibers: Vec<BranchFiber>,
    pub tame: bool,
    pub genus: GenusValue,
    /// No ramification at all (only possible for `n = 1` on a plane curve).
    pub unramified: bool,
}

/// Indices `e` compatible with equal ramification over the fiber: `e | n`,
/// `e` equals each smooth contact order, and at a singular point of
/// multiplicity `m` with contact `I`, `e | I` and `I / e <= m` branches.
fn feasible_indices(model: &ProjectionModel, pr: &FiberProfile) -> Result<Vec<usize>, ProbeError> {
    let n = model.degree();
    if let Some(e) = &pr.ramification {
        return Ok(if e.iter().all(|&x| x == e[0]) {
            vec![e[0]]
        } else {
            Vec::new()
        });
    }
    let u = model.fiber_polynomial(&pr.base)?;
    let mut smooth = pr.multiplicities.clone();
    let mut sing = Vec::new();
    for (s, w, x) in model.singular_on(&pr.base)? {
        let c = common_field(u.field(), &w)?;
        let i = u.embed(&c)?.root_multiplicity(embedding(&w, &c)?.apply(x));
        if let Some(pos) = smooth.iter().position(|&m| m == i) {
            smooth.remove(pos);
        }
        sing.push((i, s.cone.multiplicity));
    }
    Ok((1..=n)
        .filter(|&e| n.is_multiple_of(e))
        .filter(|&e| smooth.iter().all(|&m| m == e))
        .filter(|&e| sing.iter().all(|&(i, m)| i % e == 0 && i / e <= m))
        .collect())
}

/// Ramification of a projection known to be Galois.
pub fn ramification_report(model: &ProjectionModel) -> Result<RamificationReport, ProbeError> {
    let n = model.degree();
    let p = model.field().characteristic() as usize;
    let (points, missing) = branch_points(model)?;
    if let Some(required) = missing {
        return Err(ProbeError::IncompleteBranchLocus {
            required,
            limit: degree_cap(p as u64),
        });
    }
    let mut fibers = Vec::new();
    let all: Vec<(BasePoint, usize)> = std::iter::once((BasePoint::Infinity, 1))
        .chain(points)
        .collect();
    for (b, conj) in all {
        let pr = profile(model, &b, false)?;
        let feas = feasible_indices(model, &pr)?;
        if feas.is_empty() {
            return Err(ProbeError::Inconsistent(format!(
                "no common ramification index over {}",
                b.describe()
            )));
        }
        // d >= e - 1, with d >= e when p | e
        let cost = |e: usize| (n / e) * (e - 1 + usize::from(e.is_multiple_of(p)));
        let best = *feas.iter().min_by_key(|&&e| cost(e)).expect("nonempty");
        let index = (feas.len() == 1).then_some(best);
        let wild = feas.iter().any(|e| e % p == 0);
        let exact = index.is_some() && !wild;
        if best == 1 && exact {
            continue;
        }
        fibers.push(BranchFiber {
            profile: pr,
            conjugates: conj,
            index,
            wild,
            contribution: cost(best),
            exact,
        });
    }
    let total: i64 = fibers
        .iter()
        .map(|f| (f.conjugates * f.contribution) as i64)
        .sum();
    let exact = fibers.iter().all(|f| f.exact);
    // 2g - 2 = -2n + total
    let two_g = total - 2 * n as i64 + 2;
    if exact && two_g % 2 != 0 {
        return Err(ProbeError::Inconsistent("odd Riemann-Hurwitz sum".into()));
    }
    let g = two_g.div_euclid(2) + two_g.rem_euclid(2);
    Ok(RamificationReport {
        degree: n,
        tame: fibers.iter().all(|f| !f.wild),
        unramified: fibers.is_empty(),
        genus: if exact {
            GenusValue::Exact(g)
        } else {
            GenusValue::AtLeast(g)
        },
        fibers,
    })
}
