//! Cocycle weights, the invariants `Phi_f` and `Phi_f^shift`, and
//! Reidemeister-II lower bounds built from colorings and cocycles.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::cocycle::{check_cocycle, is_shiftable, CocycleTable, Violation};
use crate::coloring::{count_colorings, maxord, verify_coloring, Coloring, ColoringError, ColoringSpec, Colorings};
use crate::diagram::{CrossingId, CrossingSites, Diagram, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),

    #[error("not an up-down cocycle: {0}")]
    NotACocycle(#[from] Violation),

    #[error("cocycle is not shiftable")]
    NotShiftable,

    #[error("expected a virtual-knot diagram, got {components} components")]
    NotAKnot { components: usize },

    #[error("expected a 2-component diagram, got {components} components")]
    NotTwoComponents { components: usize },

    #[error("component counts differ ({left} vs {right})")]
    ComponentCountMismatch { left: usize, right: usize },

    #[error("coloring is mod {coloring} but the cocycle is defined on Z_{cocycle}")]
    ModulusMismatch { coloring: u32, cocycle: u32 },

    #[error("weights need an up-down coloring (P = N = 1)")]
    NotUpDown,

    #[error("the coloring does not satisfy the crossing conditions")]
    InvalidColoring,

    #[error("no crossing {0}")]
    UnknownCrossing(CrossingId),
}

/// Sorted multiset of residues mod m.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightMultiset(Vec<u32>);

impl WeightMultiset {
    pub fn new(mut values: Vec<u32>) -> Self {
        values.sort_unstable();
        Self(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

fn weight_at(sites: &CrossingSites, c: &Coloring, f: &CocycleTable) -> u32 {
    let (u, o) = (sites.under, sites.over);
    match sites.sign {
        Sign::Positive => {
            f.get(c.incoming(u.component, u.position), c.outgoing(o.component, o.position), Sign::Positive)
        }
        Sign::Negative => {
            f.get(c.outgoing(u.component, u.position), c.incoming(o.component, o.position), Sign::Negative)
        }
    }
}

fn sum_weights<'a>(crossings: impl Iterator<Item = &'a CrossingSites>, c: &Coloring, f: &CocycleTable) -> u32 {
    let m = f.m() as u64;
    (crossings.map(|s| weight_at(s, c, f) as u64).sum::<u64>() % m) as u32
}

fn check_pairing(d: &Diagram, c: &Coloring, f: &CocycleTable) -> Result<(), InvariantError> {
    let spec = c.spec();
    if spec.modulus() != f.n() {
        return Err(InvariantError::ModulusMismatch { coloring: spec.modulus(), cocycle: f.n() });
    }
    if spec.positive_shift() != 1 || spec.negative_shift() != 1 {
        return Err(InvariantError::NotUpDown);
    }
    if !verify_coloring(d, c)? {
        return Err(InvariantError::InvalidColoring);
    }
    Ok(())
}

/// Weight of crossing `x`: `f(u1, o2, +)` at a positive crossing and
/// `f(u2, o1, -)` at a negative one, where `u1 -> u2` and `o1 -> o2` are the
/// under and over semi-arcs in the direction of travel.
pub fn crossing_weight(d: &Diagram, c: &Coloring, x: CrossingId, f: &CocycleTable) -> Result<u32, InvariantError> {
    check_pairing(d, c, f)?;
    let sites = d.crossings().get(&x).copied().ok_or(InvariantError::UnknownCrossing(x))?;
    Ok(weight_at(&sites, c, f))
}

/// `W_f(D, C)`: the sum of all crossing weights.
pub fn weight_sum(d: &Diagram, c: &Coloring, f: &CocycleTable) -> Result<u32, InvariantError> {
    check_pairing(d, c, f)?;
    Ok(sum_weights(d.crossings().values(), c, f))
}

fn all_weight_sums(d: &Diagram, f: &CocycleTable) -> Result<WeightMultiset, InvariantError> {
    let spec = ColoringSpec::up_down(f.n())?;
    let crossings = d.crossings();
    let sums = Colorings::new(d, spec).map(|c| sum_weights(crossings.values(), &c, f)).collect();
    Ok(WeightMultiset::new(sums))
}

/// `Phi_f(D)`, the multiset of weight sums over all `n`-up-down colorings
/// of a virtual-knot diagram.
pub fn phi_multiset(d: &Diagram, f: &CocycleTable) -> Result<WeightMultiset, InvariantError> {
    if !d.is_knot() {
        return Err(InvariantError::NotAKnot { components: d.component_count() });
    }
    check_cocycle(f)?;
    all_weight_sums(d, f)
}

/// [`phi_multiset`] without the single-component restriction. Invariance
/// under the non-RII moves is only established for knots.
pub fn phi_multiset_unchecked_links(d: &Diagram, f: &CocycleTable) -> Result<WeightMultiset, InvariantError> {
    check_cocycle(f)?;
    all_weight_sums(d, f)
}

/// `Phi_f^shift(D)` for a shiftable cocycle: the weight sum of the coloring
/// whose base semi-arc has colour 0. Every other coloring gives the same sum.
pub fn phi_shift(d: &Diagram, f: &CocycleTable) -> Result<u32, InvariantError> {
    if !d.is_knot() {
        return Err(InvariantError::NotAKnot { components: d.component_count() });
    }
    check_cocycle(f)?;
    if !is_shiftable(f) {
        return Err(InvariantError::NotShiftable);
    }
    let all = all_weight_sums(d, f)?;
    let value = all.values()[0];
    assert!(all.values().iter().all(|&v| v == value), "shiftable cocycle gave different weight sums {all} on {d}");
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    MaxordDifference { left: u64, right: u64 },
    ColoringCountWitness { n: u32, left: u128, right: u128 },
    PhiMultisetDifference { left: WeightMultiset, right: WeightMultiset },
    NonselfCrossingCount { left: usize, right: usize },
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::MaxordDifference { .. } => "maxord-difference",
            Certificate::ColoringCountWitness { .. } => "coloring-count-witness",
            Certificate::PhiMultisetDifference { .. } => "phi-multiset-difference",
            Certificate::NonselfCrossingCount { .. } => "nonself-crossing-count",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Certificate::MaxordDifference { left, right } => format!("|{left}-{right}|/2"),
            Certificate::NonselfCrossingCount { left, right } => format!("|{left}-{right}|/2"),
            Certificate::ColoringCountWitness { n, left, right } => format!("n={n} counts={left},{right}"),
            Certificate::PhiMultisetDifference { left, right } => {
                let rel = if left == right { "==" } else { "!=" };
                format!("{left}{rel}{right}")
            }
        }
    }
}

/// A certified lower bound on the number of RII moves between two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiiBound {
    pub bound: u64,
    pub certificate: Certificate,
}

impl fmt::Display for RiiBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bound={} certificate={} detail={}", self.bound, self.certificate.name(), self.certificate.detail())
    }
}

fn same_component_count(d1: &Diagram, d2: &Diagram) -> Result<usize, InvariantError> {
    let (left, right) = (d1.component_count(), d2.component_count());
    if left != right {
        return Err(InvariantError::ComponentCountMismatch { left, right });
    }
    Ok(left)
}

fn half_gap(a: u64, b: u64) -> u64 {
    a.abs_diff(b).div_ceil(2)
}

/// `|maxord(D) - maxord(D')| / 2` for two 2-component diagrams.
pub fn rii_bound_maxord(d1: &Diagram, d2: &Diagram) -> Result<RiiBound, InvariantError> {
    for d in [d1, d2] {
        if d.component_count() != 2 {
            return Err(InvariantError::NotTwoComponents { components: d.component_count() });
        }
    }
    let (left, right) = (maxord(d1), maxord(d2));
    Ok(RiiBound { bound: half_gap(left, right), certificate: Certificate::MaxordDifference { left, right } })
}

/// Least `n` whose `n`-up-down coloring counts differ, if any.
///
/// With equal component counts the counts differ exactly when `n` divides one
/// of the two maxord values but not the other (0 is divisible by every `n`).
pub fn rii_necessity_colcount(d1: &Diagram, d2: &Diagram) -> Result<Option<u32>, InvariantError> {
    same_component_count(d1, d2)?;
    let (g1, g2) = (maxord(d1), maxord(d2));
    if g1 == g2 {
        return Ok(None);
    }
    let divides = |g: u64, n: u64| g.is_multiple_of(n);
    let witness = (1..=g1.max(g2) + 1)
        .find(|&n| divides(g1, n) != divides(g2, n))
        .expect("n = max + 1 divides only a zero maxord, and g1 != g2");
    Ok(Some(u32::try_from(witness).expect("witness fits in u32")))
}

/// Whether `Phi_f` separates two knot diagrams.
pub fn rii_necessity_phi(d1: &Diagram, d2: &Diagram, f: &CocycleTable) -> Result<bool, InvariantError> {
    Ok(phi_multiset(d1, f)? != phi_multiset(d2, f)?)
}

/// Half the difference in the number of crossings between distinct components.
pub fn rii_bound_nonself(d1: &Diagram, d2: &Diagram) -> Result<RiiBound, InvariantError> {
    same_component_count(d1, d2)?;
    let (left, right) = (d1.nonself_crossing_count(), d2.nonself_crossing_count());
    Ok(RiiBound {
        bound: half_gap(left as u64, right as u64),
        certificate: Certificate::NonselfCrossingCount { left, right },
    })
}

/// The strongest bound available from all of the above. Necessity-only
/// certificates count as bound 1. Ties go to the earlier of maxord,
/// non-self crossings, coloring counts, `Phi_f`.
pub fn rii_report(d1: &Diagram, d2: &Diagram, f: Option<&CocycleTable>) -> Result<RiiBound, InvariantError> {
    let components = same_component_count(d1, d2)?;
    let mut candidates = Vec::new();

    if components == 2 {
        candidates.push(rii_bound_maxord(d1, d2)?);
    }
    candidates.push(rii_bound_nonself(d1, d2)?);
    if let Some(n) = rii_necessity_colcount(d1, d2)? {
        let spec = ColoringSpec::up_down(n)?;
        candidates.push(RiiBound {
            bound: 1,
            certificate: Certificate::ColoringCountWitness {
                n,
                left: count_colorings(d1, spec)?,
                right: count_colorings(d2, spec)?,
            },
        });
    }
    if let Some(f) = f {
        check_cocycle(f)?;
        if components == 1 {
            let (left, right) = (phi_multiset(d1, f)?, phi_multiset(d2, f)?);
            if left != right {
                candidates.push(RiiBound { bound: 1, certificate: Certificate::PhiMultisetDifference { left, right } });
            }
        }
    }

    Ok(candidates
        .into_iter()
        .reduce(|best, c| match c.bound.cmp(&best.bound) {
            Ordering::Greater => c,
            _ => best,
        })
        .expect("the non-self bound always applies"))
}
