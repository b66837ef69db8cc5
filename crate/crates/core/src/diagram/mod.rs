//! Virtual-link diagrams stored as signed Gauss codes.
//!
//! Only real crossings are recorded. A component is the cyclic sequence of
//! passes met while travelling along it; the semi-arc at position `p` is the
//! edge that starts right after pass `p`. A component with no passes is a
//! single closed semi-arc.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("crossing {crossing} has no {role} pass")]
    MissingPass { crossing: CrossingId, role: Role },

    #[error("crossing {crossing} has more than one {role} pass")]
    DuplicateRole { crossing: CrossingId, role: Role },

    #[error("crossing {crossing} carries different signs on its two passes")]
    SignMismatch { crossing: CrossingId },

    #[error("a diagram needs at least one component")]
    NoComponents,

    #[error("component index {index} out of range (diagram has {count})")]
    ComponentOutOfRange { index: usize, count: usize },

    #[error("semi-arc {site} does not exist")]
    NoSuchSemiArc { site: SemiArcId },

    #[error("connected sum needs single-component diagrams, got {components} components")]
    NotAKnot { components: usize },
}

/// Positive integer naming a real crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingId(u32);

impl CrossingId {
    /// Returns `None` for zero.
    pub fn new(id: u32) -> Option<Self> {
        (id >= 1).then_some(Self(id))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Over => "over",
            Role::Under => "under",
        })
    }
}

/// Crossing sign. Also used as the `{+, -}` argument of cocycle tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Positive, Sign::Negative];

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One strand's traversal of a real crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pass {
    pub crossing: CrossingId,
    pub role: Role,
    pub sign: Sign,
}

impl Pass {
    pub fn new(crossing: CrossingId, role: Role, sign: Sign) -> Self {
        Self { crossing, role, sign }
    }
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.role.letter(), self.crossing, self.sign)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Component {
    passes: Vec<Pass>,
}

impl Component {
    pub fn new(passes: Vec<Pass>) -> Self {
        Self { passes }
    }

    pub fn passes(&self) -> &[Pass] {
        &self.passes
    }

    pub fn len(&self) -> usize {
        self.passes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passes.is_empty()
    }

    /// Number of semi-arcs: one per pass, or one for a crossing-free circle.
    pub fn arc_count(&self) -> usize {
        self.passes.len().max(1)
    }

    /// Pass at a cyclic position. Panics on an empty component.
    pub fn pass_at(&self, position: usize) -> Pass {
        self.passes[position % self.passes.len()]
    }
}

/// A semi-arc: the edge following pass `position` on `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemiArcId {
    pub component: usize,
    pub position: usize,
}

impl SemiArcId {
    pub fn new(component: usize, position: usize) -> Self {
        Self { component, position }
    }
}

/// Accepts `"c:p"`, or a bare `"p"` for component 0.
impl std::str::FromStr for SemiArcId {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad =
            || DiagramError::Syntax { position: 0, message: format!("expected <component>:<position>, got {s:?}") };
        let (k, p) = s.trim().split_once(':').unwrap_or(("0", s.trim()));
        Ok(Self::new(k.parse().map_err(|_| bad())?, p.parse().map_err(|_| bad())?))
    }
}

impl fmt::Display for SemiArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.position)
    }
}

/// Where the two passes of a crossing sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingSites {
    pub sign: Sign,
    pub over: SemiArcId,
    pub under: SemiArcId,
}

impl CrossingSites {
    pub fn is_self_crossing(&self) -> bool {
        self.over.component == self.under.component
    }
}

/// A validated signed Gauss code.
///
/// Every crossing id occurs exactly twice, once over and once under, with the
/// same sign on both passes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    components: Vec<Component>,
}

impl Diagram {
    pub fn new(components: Vec<Component>) -> Result<Self, DiagramError> {
        if components.is_empty() {
            return Err(DiagramError::NoComponents);
        }

        // (over count, under count, signs seen)
        let mut seen: BTreeMap<CrossingId, (u32, u32, Vec<Sign>)> = BTreeMap::new();
        for pass in components.iter().flat_map(|c| c.passes.iter()) {
            let entry = seen.entry(pass.crossing).or_default();
            match pass.role {
                Role::Over => entry.0 += 1,
                Role::Under => entry.1 += 1,
            }
            entry.2.push(pass.sign);
        }

        for (&crossing, (overs, unders, signs)) in &seen {
            if *overs > 1 {
                return Err(DiagramError::DuplicateRole { crossing, role: Role::Over });
            }
            if *unders > 1 {
                return Err(DiagramError::DuplicateRole { crossing, role: Role::Under });
            }
            if *overs == 0 {
                return Err(DiagramError::MissingPass { crossing, role: Role::Over });
            }
            if *unders == 0 {
                return Err(DiagramError::MissingPass { crossing, role: Role::Under });
            }
            if signs[0] != signs[1] {
                return Err(DiagramError::SignMismatch { crossing });
            }
        }

        Ok(Self { components })
    }

    /// The crossing-free one-component diagram.
    pub fn unknot() -> Self {
        Self { components: vec![Component::default()] }
    }

    /// `r` crossing-free circles.
    pub fn trivial(r: usize) -> Self {
        assert!(r >= 1);
        Self { components: vec![Component::default(); r] }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Component::len).sum::<usize>() / 2
    }

    pub fn max_crossing_id(&self) -> u32 {
        self.components.iter().flat_map(|c| c.passes.iter()).map(|p| p.crossing.get()).max().unwrap_or(0)
    }

    /// Locations of both passes of every crossing, keyed by id.
    pub fn crossings(&self) -> BTreeMap<CrossingId, CrossingSites> {
        let mut over = BTreeMap::new();
        let mut under = BTreeMap::new();
        for (k, comp) in self.components.iter().enumerate() {
            for (p, pass) in comp.passes.iter().enumerate() {
                let site = SemiArcId::new(k, p);
                match pass.role {
                    Role::Over => over.insert(pass.crossing, (pass.sign, site)),
                    Role::Under => under.insert(pass.crossing, (pass.sign, site)),
                };
            }
        }
        over.into_iter().map(|(id, (sign, o))| (id, CrossingSites { sign, over: o, under: under[&id].1 })).collect()
    }

    /// Number of crossings between two different components.
    pub fn nonself_crossing_count(&self) -> usize {
        self.crossings().values().filter(|c| !c.is_self_crossing()).count()
    }

    /// All semi-arcs, component by component.
    pub fn semi_arcs(&self) -> Vec<SemiArcId> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(k, c)| (0..c.arc_count()).map(move |p| SemiArcId::new(k, p)))
            .collect()
    }

    pub fn contains_arc(&self, arc: SemiArcId) -> bool {
        self.components.get(arc.component).is_some_and(|c| arc.position < c.arc_count())
    }

    /// Net shift picked up when travelling once around component `k`:
    /// `+w` per non-self over pass and `-w` per non-self under pass, with
    /// `w = positive` at positive crossings and `w = negative` at negative ones.
    pub fn component_shift(&self, k: usize, positive: i64, negative: i64) -> Result<i64, DiagramError> {
        let count = self.components.len();
        let comp = self.components.get(k).ok_or(DiagramError::ComponentOutOfRange { index: k, count })?;

        let mut membership: BTreeMap<CrossingId, u8> = BTreeMap::new();
        for pass in &comp.passes {
            *membership.entry(pass.crossing).or_default() += 1;
        }

        Ok(comp
            .passes
            .iter()
            .filter(|p| membership[&p.crossing] == 1)
            .map(|p| {
                let w = match p.sign {
                    Sign::Positive => positive,
                    Sign::Negative => negative,
                };
                match p.role {
                    Role::Over => w,
                    Role::Under => -w,
                }
            })
            .sum())
    }

    /// Reverses every component. Roles and signs are kept.
    pub fn reverse_orientation(&self) -> Self {
        let components =
            self.components.iter().map(|c| Component::new(c.passes.iter().rev().copied().collect())).collect();
        Self { components }
    }

    /// Splices `other` into `self`: `self` is cut open on semi-arc `site`,
    /// `other` on semi-arc `other_site`, and the two arcs are joined. The
    /// crossings of `other` are renumbered by adding `self.max_crossing_id()`.
    pub fn connected_sum(&self, other: &Diagram, site: SemiArcId, other_site: SemiArcId) -> Result<Self, DiagramError> {
        for d in [self, other] {
            if !d.is_knot() {
                return Err(DiagramError::NotAKnot { components: d.component_count() });
            }
        }
        for (d, s) in [(self, site), (other, other_site)] {
            if !d.contains_arc(s) {
                return Err(DiagramError::NoSuchSemiArc { site: s });
            }
        }

        let offset = self.max_crossing_id();
        let relabel = |p: &Pass| Pass { crossing: CrossingId(p.crossing.0 + offset), ..*p };

        let outer = &self.components[0].passes;
        let inner = &other.components[0].passes;

        let cut = (site.position + 1).min(outer.len());
        let inner_cut = (other_site.position + 1).min(inner.len());

        let mut passes = Vec::with_capacity(outer.len() + inner.len());
        passes.extend_from_slice(&outer[..cut]);
        passes.extend(inner[inner_cut..].iter().map(relabel));
        passes.extend(inner[..inner_cut].iter().map(relabel));
        passes.extend_from_slice(&outer[cut..]);

        Ok(Self { components: vec![Component::new(passes)] })
    }

    /// Replaces the components without re-validating. Callers must preserve
    /// the crossing invariants.
    pub(crate) fn from_components_unchecked(components: Vec<Component>) -> Self {
        debug_assert!(Self::new(components.clone()).is_ok());
        Self { components }
    }

    /// Canonical Gauss-code text.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, comp) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(" ; ")?;
            }
            if comp.is_empty() {
                f.write_str("()")?;
            }
            for (p, pass) in comp.passes.iter().enumerate() {
                if p > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{pass}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
