//! Named diagrams used by the tests, the acceptance suite and the CLI docs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Component, CrossingId, Diagram, Pass, Role, Sign};

/// Two components where the first passes over the second `over` times and
/// then under it `under` times, all crossings positive. Component shifts are
/// `+-(over - under)`, so the maxord is `|over - under|`.
pub fn crossing_pair(over: u32, under: u32) -> Diagram {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for x in 1..=over + under {
        let id = CrossingId::new(x).expect("ids start at 1");
        let (a, b) = if x <= over { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
        first.push(Pass::new(id, a, Sign::Positive));
        second.push(Pass::new(id, b, Sign::Positive));
    }
    Diagram::new(vec![Component::new(first), Component::new(second)]).expect("valid by construction")
}

/// The 2-component link with `2i` crossings, first component always over.
/// Its maxord is `2i`.
pub fn t(i: u32) -> Diagram {
    crossing_pair(2 * i, 0)
}

/// A 2-component link with 8 crossings and maxord 6.
pub fn maxord_six() -> Diagram {
    crossing_pair(7, 1)
}

/// A 2-component link with 10 crossings and maxord 2.
pub fn maxord_two_ten_crossings() -> Diagram {
    crossing_pair(6, 4)
}

/// Two-crossing knot with `Phi_f^shift = 1` for `f = example-f`.
pub fn delta() -> Diagram {
    "O1- O2+ U1- U2+".parse().expect("valid code")
}

/// Ten knot diagrams, starting with the unknot and `delta`.
pub const KNOTS: [&str; 10] = [
    "()",
    "O1- O2+ U1- U2+",
    "O1+ U1+",
    "O1+ U2+ O3+ U1+ O2+ U3+",
    "O1- U2+ O3- U4+ O2+ U1- O4+ U3-",
    "O1+ O2+ U1+ U2+",
    "O1- U2- O2- U1-",
    "O1+ O2- U1+ U2-",
    "O1- O2- O3+ U1- U2- U3+",
    "U1+ O2- U3+ O1+ U2- O3+ O4- U4-",
];

/// Knot diagrams that contain RIII triangles, for move walks.
pub const TRIANGLE_KNOTS: [&str; 3] =
    ["U3- O1- O2+ O3- U1- U2+", "U3+ O1- O2+ O3+ O4- U2+ U1- U4-", "U2+ U5- U4- O2+ U3- O4- U1+ O3- O5- O1+"];

pub fn knots() -> Vec<Diagram> {
    KNOTS.iter().map(|s| s.parse().expect("valid code")).collect()
}

/// A knot diagram with `crossings` crossings: a seeded random ordering of the
/// `2 * crossings` passes with random signs.
pub fn random_knot(crossings: u32, seed: u64) -> Diagram {
    random_link(1, crossings, seed)
}

/// Like [`random_knot`], with the shuffled passes cut into `components`
/// (possibly empty) pieces.
pub fn random_link(components: usize, crossings: u32, seed: u64) -> Diagram {
    assert!(components >= 1, "need at least one component");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passes = Vec::with_capacity(2 * crossings as usize);
    for x in 1..=crossings {
        let id = CrossingId::new(x).expect("ids start at 1");
        let sign = if rng.gen() { Sign::Positive } else { Sign::Negative };
        passes.push(Pass::new(id, Role::Over, sign));
        passes.push(Pass::new(id, Role::Under, sign));
    }
    passes.shuffle(&mut rng);
    let mut cuts: Vec<usize> = (1..components).map(|_| rng.gen_range(0..=passes.len())).collect();
    cuts.sort_unstable();
    let mut pieces = Vec::with_capacity(components);
    for cut in cuts.into_iter().rev() {
        pieces.push(Component::new(passes.split_off(cut)));
    }
    pieces.push(Component::new(passes));
    pieces.reverse();
    Diagram::new(pieces).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::maxord;

    #[test]
    fn family_codes() {
        assert_eq!(t(0).serialize(), "() ; ()");
        assert_eq!(t(1).serialize(), "O1+ O2+ ; U1+ U2+");
        assert_eq!(maxord_six().serialize(), "O1+ O2+ O3+ O4+ O5+ O6+ O7+ U8+ ; U1+ U2+ U3+ U4+ U5+ U6+ U7+ O8+");
        assert_eq!(maxord(&maxord_six()), 6);
        assert_eq!(maxord(&maxord_two_ten_crossings()), 2);
        assert_eq!(maxord_two_ten_crossings().nonself_crossing_count(), 10);
        for i in 0..=6 {
            assert_eq!(maxord(&t(i)), 2 * i as u64);
        }
    }

    #[test]
    fn knot_set_parses() {
        let ks = knots();
        assert_eq!(ks.len(), 10);
        assert!(ks.iter().all(Diagram::is_knot));
        assert_eq!(ks[1], delta());
        for code in TRIANGLE_KNOTS {
            let d: Diagram = code.parse().unwrap();
            assert!(!crate::moves::enumerate_moves(&d, &[crate::moves::MoveKind::Riii]).is_empty());
        }
    }

    #[test]
    fn random_knots_are_seeded() {
        assert_eq!(random_knot(7, 3), random_knot(7, 3));
        assert_eq!(random_knot(7, 3).crossing_count(), 7);
        assert_eq!(random_knot(0, 1), Diagram::unknot());
        let l = random_link(3, 6, 9);
        assert_eq!(l.component_count(), 3);
        assert_eq!(l.crossing_count(), 6);
    }
}
