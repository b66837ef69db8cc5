//! Reidemeister moves on signed Gauss codes and seeded random walks.
//!
//! Every move is anchored on semi-arcs. For insertions the anchor is the arc
//! that receives the new passes; for removals and RIII the anchor of a pair of
//! adjacent passes is the semi-arc running between them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Component, CrossingId, Diagram, Pass, Role, SemiArcId, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    RiAdd,
    RiRemove,
    RiiAdd,
    RiiRemove,
    Riii,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] =
        [MoveKind::RiAdd, MoveKind::RiRemove, MoveKind::RiiAdd, MoveKind::RiiRemove, MoveKind::Riii];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::RiAdd => "RI-add",
            MoveKind::RiRemove => "RI-remove",
            MoveKind::RiiAdd => "RII-add",
            MoveKind::RiiRemove => "RII-remove",
            MoveKind::Riii => "RIII",
        }
    }

    fn site_count(self) -> usize {
        match self {
            MoveKind::RiAdd | MoveKind::RiRemove => 1,
            MoveKind::RiiAdd | MoveKind::RiiRemove => 2,
            MoveKind::Riii => 3,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown move kind {0:?} (expected RI-add, RI-remove, RII-add, RII-remove or RIII)")]
pub struct UnknownMoveKind(pub String);

impl FromStr for MoveKind {
    type Err = UnknownMoveKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownMoveKind(s.to_string()))
    }
}

/// How the two under passes of an RII bigon are ordered relative to the
/// over passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrandPattern {
    /// `O_x O_y ... U_x U_y`
    Parallel,
    /// `O_x O_y ... U_y U_x`
    Antiparallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveVariant {
    /// RI: which pass of the kink comes first, and its sign.
    Kink { first: Role, sign: Sign },
    /// RII: strand pattern and the sign of the first over pass.
    Bigon { pattern: StrandPattern, sign: Sign },
    /// RIII: one of the eight oriented triangle types, `1..=8`.
    Triangle(u8),
}

impl fmt::Display for MoveVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveVariant::Kink { first, sign } => {
                write!(f, "{}{}{}", first.letter(), first.opposite().letter(), sign.symbol())
            }
            MoveVariant::Bigon { pattern, sign } => {
                let p = match pattern {
                    StrandPattern::Parallel => "parallel",
                    StrandPattern::Antiparallel => "antiparallel",
                };
                write!(f, "{p}{}", sign.symbol())
            }
            MoveVariant::Triangle(i) => write!(f, "{i}"),
        }
    }
}

/// A move together with where it applies. Ordered by kind, then sites, then
/// variant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveDescriptor {
    pub kind: MoveKind,
    pub sites: Vec<SemiArcId>,
    pub variant: MoveVariant,
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}@", self.kind, self.variant)?;
        for (i, s) in self.sites.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("{descriptor} does not apply: {reason}")]
    NotApplicable { descriptor: String, reason: &'static str },
}

fn not_applicable(mv: &MoveDescriptor, reason: &'static str) -> MoveError {
    MoveError::NotApplicable { descriptor: mv.to_string(), reason }
}

/// Signs of the (top-middle, top-bottom, middle-bottom) crossings together
/// with the pass order on each strand, indexed by triangle variant. The top
/// strand passes over both others, the bottom strand under both.
///
/// Entries list the top-bottom crossing first on the top strand. A pattern
/// whose top strand starts with top-middle is legal iff the pattern with all
/// three orders reversed is listed.
struct TrianglePattern {
    mid_under_first: bool,
    bot_tb_first: bool,
    signs: [Sign; 3],
}

const fn tri(mid_under_first: bool, bot_tb_first: bool, signs: [Sign; 3]) -> TrianglePattern {
    TrianglePattern { mid_under_first, bot_tb_first, signs }
}

const POS: Sign = Sign::Positive;
const NEG: Sign = Sign::Negative;

const RIII_TABLE: [TrianglePattern; 8] = [
    tri(false, false, [POS, POS, POS]),
    tri(false, false, [NEG, NEG, NEG]),
    tri(false, true, [POS, NEG, NEG]),
    tri(false, true, [NEG, POS, POS]),
    tri(true, false, [POS, NEG, POS]),
    tri(true, false, [NEG, POS, NEG]),
    tri(true, true, [POS, POS, NEG]),
    tri(true, true, [NEG, NEG, POS]),
];

/// Variant number of a triangle, or `None` if the crossing signs are not
/// consistent with a classical RIII configuration.
fn triangle_variant(top_tm_first: bool, mid_under_first: bool, bot_tb_first: bool, signs: [Sign; 3]) -> Option<u8> {
    // flip all orders so the top strand meets top-bottom first
    let (b, c) = if top_tm_first { (!mid_under_first, !bot_tb_first) } else { (mid_under_first, bot_tb_first) };
    RIII_TABLE
        .iter()
        .position(|t| t.mid_under_first == b && t.bot_tb_first == c && t.signs == signs)
        .map(|i| i as u8 + 1)
}

fn next_pos(d: &Diagram, k: usize, p: usize) -> usize {
    (p + 1) % d.components()[k].len()
}

fn prev_pos(d: &Diagram, k: usize, p: usize) -> usize {
    let len = d.components()[k].len();
    (p + len - 1) % len
}

/// The two passes on either side of semi-arc `a`, if they are distinct.
fn pair_at(d: &Diagram, a: SemiArcId) -> Option<(Pass, Pass)> {
    let comp = d.components().get(a.component)?;
    if comp.len() < 2 || a.position >= comp.len() {
        return None;
    }
    Some((comp.pass_at(a.position), comp.pass_at((a.position + 1) % comp.len())))
}

fn classify_triangle(d: &Diagram, sites: &[SemiArcId]) -> Option<u8> {
    let [top, mid, bot] = sites else { return None };
    let (t1, t2) = pair_at(d, *top)?;
    let (m1, m2) = pair_at(d, *mid)?;
    let (b1, b2) = pair_at(d, *bot)?;
    if t1.role != Role::Over || t2.role != Role::Over || b1.role != Role::Under || b2.role != Role::Under {
        return None;
    }
    let (mid_under, mid_over) = match (m1.role, m2.role) {
        (Role::Under, Role::Over) => (m1, m2),
        (Role::Over, Role::Under) => (m2, m1),
        _ => return None,
    };
    let tm = mid_under.crossing;
    let tb = if t1.crossing == tm {
        t2.crossing
    } else if t2.crossing == tm {
        t1.crossing
    } else {
        return None;
    };
    let mb = mid_over.crossing;
    if mb == tm || mb == tb {
        return None;
    }
    let bottom = [b1.crossing, b2.crossing];
    if !(bottom == [tb, mb] || bottom == [mb, tb]) {
        return None;
    }
    let sign_of = |x: CrossingId| [t1, t2, m1, m2].into_iter().find(|p| p.crossing == x).map(|p| p.sign);
    let signs = [sign_of(tm)?, sign_of(tb)?, sign_of(mb)?];
    triangle_variant(t1.crossing == tm, m1.role == Role::Under, b1.crossing == tb, signs)
}

fn ri_add_moves(d: &Diagram, out: &mut Vec<MoveDescriptor>) {
    for arc in d.semi_arcs() {
        for first in [Role::Over, Role::Under] {
            for sign in Sign::BOTH {
                out.push(MoveDescriptor {
                    kind: MoveKind::RiAdd,
                    sites: vec![arc],
                    variant: MoveVariant::Kink { first, sign },
                });
            }
        }
    }
}

fn ri_remove_moves(d: &Diagram, out: &mut Vec<MoveDescriptor>) {
    for (k, comp) in d.components().iter().enumerate() {
        for p in 0..comp.len() {
            let arc = SemiArcId::new(k, p);
            if let Some((a, b)) = pair_at(d, arc) {
                if a.crossing == b.crossing {
                    out.push(MoveDescriptor {
                        kind: MoveKind::RiRemove,
                        sites: vec![arc],
                        variant: MoveVariant::Kink { first: a.role, sign: a.sign },
                    });
                }
            }
        }
    }
}

fn rii_add_moves(d: &Diagram, out: &mut Vec<MoveDescriptor>) {
    let arcs = d.semi_arcs();
    for &over in &arcs {
        for &under in &arcs {
            for pattern in [StrandPattern::Parallel, StrandPattern::Antiparallel] {
                for sign in Sign::BOTH {
                    out.push(MoveDescriptor {
                        kind: MoveKind::RiiAdd,
                        sites: vec![over, under],
                        variant: MoveVariant::Bigon { pattern, sign },
                    });
                }
            }
        }
    }
}

fn rii_remove_moves(d: &Diagram, out: &mut Vec<MoveDescriptor>) {
    let crossings = d.crossings();
    for (k, comp) in d.components().iter().enumerate() {
        for p in 0..comp.len() {
            let over_arc = SemiArcId::new(k, p);
            let Some((a, b)) = pair_at(d, over_arc) else { continue };
            if a.role != Role::Over || b.role != Role::Over || a.sign == b.sign {
                continue;
            }
            let ux = crossings[&a.crossing].under;
            let uy = crossings[&b.crossing].under;
            if ux.component != uy.component {
                continue;
            }
            let mut push = |pattern, under_arc| {
                out.push(MoveDescriptor {
                    kind: MoveKind::RiiRemove,
                    sites: vec![over_arc, under_arc],
                    variant: MoveVariant::Bigon { pattern, sign: a.sign },
                });
            };
            if next_pos(d, ux.component, ux.position) == uy.position {
                push(StrandPattern::Parallel, ux);
            }
            if next_pos(d, uy.component, uy.position) == ux.position {
                push(StrandPattern::Antiparallel, uy);
            }
        }
    }
}

fn riii_moves(d: &Diagram, out: &mut Vec<MoveDescriptor>) {
    let crossings = d.crossings();
    let mut candidates = Vec::new();
    for (k, comp) in d.components().iter().enumerate() {
        for p in 0..comp.len() {
            let top = SemiArcId::new(k, p);
            let Some((t1, t2)) = pair_at(d, top) else { continue };
            if t1.role != Role::Over || t2.role != Role::Over {
                continue;
            }
            for (tm, tb) in [(t1.crossing, t2.crossing), (t2.crossing, t1.crossing)] {
                let u = crossings[&tm].under;
                let v = crossings[&tb].under;
                // the middle strand runs through U_tm; the bottom strand through U_tb
                let mids = [u, SemiArcId::new(u.component, prev_pos(d, u.component, u.position))];
                let bots = [v, SemiArcId::new(v.component, prev_pos(d, v.component, v.position))];
                for mid in mids {
                    for bot in bots {
                        candidates.push([top, mid, bot]);
                    }
                }
            }
        }
    }
    for sites in candidates {
        if let Some(i) = classify_triangle(d, &sites) {
            out.push(MoveDescriptor { kind: MoveKind::Riii, sites: sites.to_vec(), variant: MoveVariant::Triangle(i) });
        }
    }
}

/// All applicable moves of the given kinds, sorted and without duplicates.
pub fn enumerate_moves(d: &Diagram, kinds: &[MoveKind]) -> Vec<MoveDescriptor> {
    let mut out = Vec::new();
    let mut kinds = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    for kind in kinds {
        match kind {
            MoveKind::RiAdd => ri_add_moves(d, &mut out),
            MoveKind::RiRemove => ri_remove_moves(d, &mut out),
            MoveKind::RiiAdd => rii_add_moves(d, &mut out),
            MoveKind::RiiRemove => rii_remove_moves(d, &mut out),
            MoveKind::Riii => riii_moves(d, &mut out),
        }
    }
    out.sort();
    out.dedup();
    out
}

fn fresh_id(d: &Diagram, offset: u32) -> CrossingId {
    d.max_crossing_id().checked_add(offset).and_then(CrossingId::new).expect("crossing ids exhausted")
}

fn passes_of(d: &Diagram) -> Vec<Vec<Pass>> {
    d.components().iter().map(|c| c.passes().to_vec()).collect()
}

fn rebuild(passes: Vec<Vec<Pass>>) -> Diagram {
    Diagram::from_components_unchecked(passes.into_iter().map(Component::new).collect())
}

/// Removes the passes at the given (component, position) slots.
fn remove_slots(d: &Diagram, mut slots: Vec<(usize, usize)>) -> Diagram {
    let mut passes = passes_of(d);
    slots.sort_unstable();
    for &(k, p) in slots.iter().rev() {
        passes[k].remove(p);
    }
    rebuild(passes)
}

/// Applies `mv` to `d`. Fails if `mv` is not among `enumerate_moves(d, [mv.kind])`.
pub fn apply_move(d: &Diagram, mv: &MoveDescriptor) -> Result<Diagram, MoveError> {
    if mv.sites.len() != mv.kind.site_count() {
        return Err(not_applicable(mv, "wrong number of sites"));
    }
    if !mv.sites.iter().all(|&s| d.contains_arc(s)) {
        return Err(not_applicable(mv, "site is not a semi-arc of the diagram"));
    }
    match (mv.kind, mv.variant) {
        (MoveKind::RiAdd, MoveVariant::Kink { first, sign }) => {
            let x = fresh_id(d, 1);
            let s = mv.sites[0];
            let mut passes = passes_of(d);
            let at = if passes[s.component].is_empty() { 0 } else { s.position + 1 };
            let pair = [Pass::new(x, first, sign), Pass::new(x, first.opposite(), sign)];
            passes[s.component].splice(at..at, pair);
            Ok(rebuild(passes))
        }
        (MoveKind::RiRemove, MoveVariant::Kink { first, sign }) => {
            let s = mv.sites[0];
            match pair_at(d, s) {
                Some((a, b)) if a.crossing == b.crossing && a.role == first && a.sign == sign => {
                    let len = d.components()[s.component].len();
                    Ok(remove_slots(d, vec![(s.component, s.position), (s.component, (s.position + 1) % len)]))
                }
                _ => Err(not_applicable(mv, "no kink of this type at the site")),
            }
        }
        (MoveKind::RiiAdd, MoveVariant::Bigon { pattern, sign }) => {
            let (x, y) = (fresh_id(d, 1), fresh_id(d, 2));
            let over = [Pass::new(x, Role::Over, sign), Pass::new(y, Role::Over, sign.flip())];
            let ux = Pass::new(x, Role::Under, sign);
            let uy = Pass::new(y, Role::Under, sign.flip());
            let under = match pattern {
                StrandPattern::Parallel => [ux, uy],
                StrandPattern::Antiparallel => [uy, ux],
            };
            let (so, su) = (mv.sites[0], mv.sites[1]);
            let mut passes = passes_of(d);
            let slot = |s: SemiArcId, passes: &Vec<Vec<Pass>>| {
                if passes[s.component].is_empty() {
                    0
                } else {
                    s.position + 1
                }
            };
            let (io, iu) = (slot(so, &passes), slot(su, &passes));
            if so == su {
                let block = [over[0], over[1], under[0], under[1]];
                passes[so.component].splice(io..io, block);
            } else if so.component == su.component && io > iu {
                passes[so.component].splice(io..io, over);
                passes[su.component].splice(iu..iu, under);
            } else {
                passes[su.component].splice(iu..iu, under);
                passes[so.component].splice(io..io, over);
            }
            Ok(rebuild(passes))
        }
        (MoveKind::RiiRemove, MoveVariant::Bigon { .. }) => {
            let mut found = Vec::new();
            rii_remove_moves(d, &mut found);
            if !found.contains(mv) {
                return Err(not_applicable(mv, "no removable bigon of this type at the sites"));
            }
            let (so, su) = (mv.sites[0], mv.sites[1]);
            let lo = d.components()[so.component].len();
            let lu = d.components()[su.component].len();
            Ok(remove_slots(
                d,
                vec![
                    (so.component, so.position),
                    (so.component, (so.position + 1) % lo),
                    (su.component, su.position),
                    (su.component, (su.position + 1) % lu),
                ],
            ))
        }
        (MoveKind::Riii, MoveVariant::Triangle(i)) => {
            if classify_triangle(d, &mv.sites) != Some(i) {
                return Err(not_applicable(mv, "no triangle of this type at the sites"));
            }
            let mut passes = passes_of(d);
            for s in &mv.sites {
                let len = passes[s.component].len();
                passes[s.component].swap(s.position, (s.position + 1) % len);
            }
            Ok(rebuild(passes))
        }
        _ => Err(not_applicable(mv, "variant does not match the move kind")),
    }
}

/// One step of a random walk. `applied` is `None` when no move of the
/// requested kinds was available and the diagram stayed put.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkStep {
    /// 1-based.
    pub step: usize,
    pub applied: Option<MoveDescriptor>,
    pub diagram: Diagram,
}

impl fmt::Display for WalkStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step={} move=", self.step)?;
        match &self.applied {
            Some(mv) => write!(f, "{mv}")?,
            None => f.write_str("stall")?,
        }
        write!(f, " code={}", self.diagram)
    }
}

/// Applies `steps` moves drawn uniformly from `enumerate_moves` with a
/// ChaCha8 generator seeded from `seed`.
pub fn random_walk(d: &Diagram, steps: usize, kinds: &[MoveKind], seed: u64) -> Vec<WalkStep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    let mut out = Vec::with_capacity(steps);
    for step in 1..=steps {
        let moves = enumerate_moves(&current, kinds);
        let applied = if moves.is_empty() {
            None
        } else {
            let mv = moves[rng.gen_range(0..moves.len())].clone();
            current = apply_move(&current, &mv).expect("enumerated moves apply");
            Some(mv)
        };
        out.push(WalkStep { step, applied, diagram: current.clone() });
    }
    out
}

/// Virtual and mixed moves only rearrange virtual crossings, which a Gauss
/// code does not record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VirtualMove {
    VirtualRi,
    VirtualRii,
    VirtualRiii,
    Mixed,
}

/// Every virtual move leaves the Gauss code unchanged.
pub const VIRTUAL_MOVES_ACT_AS_IDENTITY: bool = true;

pub fn apply_virtual_move(d: &Diagram, _mv: VirtualMove) -> Diagram {
    d.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn arc(k: usize, p: usize) -> SemiArcId {
        SemiArcId::new(k, p)
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("RII-add".parse::<MoveKind>(), Ok(MoveKind::RiiAdd));
        assert_eq!("riii".parse::<MoveKind>(), Ok(MoveKind::Riii));
        assert!("RIV".parse::<MoveKind>().is_err());
    }

    #[test]
    fn ri_add_and_remove() {
        let u = Diagram::unknot();
        let moves = enumerate_moves(&u, &[MoveKind::RiAdd]);
        assert_eq!(moves.len(), 4);
        assert_eq!(moves[0].to_string(), "RI-add/OU+@0:0");
        let k = apply_move(&u, &moves[0]).unwrap();
        assert_eq!(k.serialize(), "O1+ U1+");

        let removals = enumerate_moves(&k, &[MoveKind::RiRemove]);
        // both arcs of the kink lie between the two passes
        assert_eq!(removals.len(), 2);
        for r in &removals {
            assert_eq!(apply_move(&k, r).unwrap(), u);
        }

        let delta = d("O1- O2+ U1- U2+");
        let mv = MoveDescriptor {
            kind: MoveKind::RiAdd,
            sites: vec![arc(0, 1)],
            variant: MoveVariant::Kink { first: Role::Under, sign: Sign::Negative },
        };
        let grown = apply_move(&delta, &mv).unwrap();
        assert_eq!(grown.serialize(), "O1- O2+ U3- O3- U1- U2+");
        assert!(enumerate_moves(&grown, &[MoveKind::RiRemove]).iter().any(|r| r.sites == vec![arc(0, 2)]));
        assert!(enumerate_moves(&delta, &[MoveKind::RiRemove]).is_empty());
    }

    #[test]
    fn rii_round_trip() {
        let oo = d("() ; ()");
        let mv = MoveDescriptor {
            kind: MoveKind::RiiAdd,
            sites: vec![arc(0, 0), arc(1, 0)],
            variant: MoveVariant::Bigon { pattern: StrandPattern::Parallel, sign: Sign::Positive },
        };
        let t = apply_move(&oo, &mv).unwrap();
        assert_eq!(t.serialize(), "O1+ O2- ; U1+ U2-");
        let removals = enumerate_moves(&t, &[MoveKind::RiiRemove]);
        // 2-pass strands can be read from either pass, giving 2 x 2 anchors
        assert_eq!(removals.len(), 4);
        for r in &removals {
            assert_eq!(apply_move(&t, r).unwrap(), oo);
        }

        let anti = MoveDescriptor {
            variant: MoveVariant::Bigon { pattern: StrandPattern::Antiparallel, sign: Sign::Negative },
            ..mv.clone()
        };
        assert_eq!(apply_move(&oo, &anti).unwrap().serialize(), "O1- O2+ ; U2+ U1-");

        let same_arc = MoveDescriptor { sites: vec![arc(0, 0), arc(0, 0)], ..mv };
        let u = apply_move(&Diagram::unknot(), &same_arc).unwrap();
        assert_eq!(u.serialize(), "O1+ O2- U1+ U2-");
    }

    #[test]
    fn rii_same_component_insertion_order() {
        let k = d("O1+ U1+");
        for (so, su) in [(0, 1), (1, 0)] {
            let mv = MoveDescriptor {
                kind: MoveKind::RiiAdd,
                sites: vec![arc(0, so), arc(0, su)],
                variant: MoveVariant::Bigon { pattern: StrandPattern::Parallel, sign: Sign::Negative },
            };
            let out = apply_move(&k, &mv).unwrap();
            let back: Vec<_> = enumerate_moves(&out, &[MoveKind::RiiRemove])
                .into_iter()
                .filter_map(|r| apply_move(&out, &r).ok())
                .collect();
            assert!(back.contains(&k), "{out}");
        }
        let mv = MoveDescriptor {
            kind: MoveKind::RiiAdd,
            sites: vec![arc(0, 0), arc(0, 1)],
            variant: MoveVariant::Bigon { pattern: StrandPattern::Parallel, sign: Sign::Negative },
        };
        assert_eq!(apply_move(&k, &mv).unwrap().serialize(), "O1+ O2- O3+ U1+ U2- U3+");
    }

    #[test]
    fn riii_on_braid_triangle() {
        // three strands, all crossings positive: top over middle and bottom,
        // middle over bottom
        let t = d("O1+ O2+ ; U1+ O3+ ; U2+ U3+");
        let moves = enumerate_moves(&t, &[MoveKind::Riii]);
        assert!(!moves.is_empty());
        for mv in &moves {
            let after = apply_move(&t, mv).unwrap();
            // the move is its own inverse at the same sites
            assert_eq!(apply_move(&after, mv).unwrap(), t);
        }
        let mv = moves.iter().find(|m| m.sites == vec![arc(0, 0), arc(1, 0), arc(2, 0)]).unwrap();
        assert_eq!(apply_move(&t, mv).unwrap().serialize(), "O2+ O1+ ; O3+ U1+ ; U3+ U2+");
    }

    #[test]
    fn riii_rejects_inconsistent_signs() {
        // flipping just the middle-bottom sign breaks the triangle
        let t = d("O1+ O2+ ; U1+ O3- ; U2+ U3-");
        let bad = MoveDescriptor {
            kind: MoveKind::Riii,
            sites: vec![arc(0, 0), arc(1, 0), arc(2, 0)],
            variant: MoveVariant::Triangle(1),
        };
        assert!(apply_move(&t, &bad).is_err());
        assert!(enumerate_moves(&t, &[MoveKind::Riii])
            .iter()
            .all(|m| m.sites != vec![arc(0, 0), arc(1, 0), arc(2, 0)]));
    }

    #[test]
    fn stale_descriptors_are_rejected() {
        let k = d("O1+ U1+");
        let mv = enumerate_moves(&k, &[MoveKind::RiRemove]).remove(0);
        assert!(apply_move(&Diagram::unknot(), &mv).is_err());
        let wrong = MoveDescriptor { variant: MoveVariant::Triangle(1), ..mv.clone() };
        assert!(apply_move(&k, &wrong).is_err());
        let far = MoveDescriptor { sites: vec![arc(3, 0)], ..mv };
        assert!(apply_move(&k, &far).is_err());
    }

    #[test]
    fn walks_are_reproducible() {
        let delta = d("O1- O2+ U1- U2+");
        let kinds = [MoveKind::RiAdd, MoveKind::RiRemove, MoveKind::Riii];
        let a = random_walk(&delta, 25, &kinds, 7);
        let b = random_walk(&delta, 25, &kinds, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 25);
        assert_eq!(a[0].step, 1);
        assert!(random_walk(&delta, 0, &kinds, 7).is_empty());

        let stalled = random_walk(&delta, 3, &[MoveKind::RiRemove], 1);
        assert!(stalled.iter().all(|s| s.applied.is_none() && s.diagram == delta));
        assert_eq!(stalled[2].to_string(), "step=3 move=stall code=O1- O2+ U1- U2+");
    }

    #[test]
    fn virtual_moves_do_nothing() {
        let delta = d("O1- O2+ U1- U2+");
        for mv in [VirtualMove::VirtualRi, VirtualMove::VirtualRii, VirtualMove::VirtualRiii, VirtualMove::Mixed] {
            assert_eq!(apply_virtual_move(&delta, mv), delta);
        }
    }
}
