//! `(n; P, N)`-up-down colorings.
//!
//! A coloring assigns a residue mod `n` to every semi-arc so that, at each
//! crossing, the colour drops by `w` across the under pass and rises by `w`
//! across the over pass, with `w = P` at positive and `w = N` at negative
//! crossings. Plain up-down colorings are the case `P = N = 1`.
//!
//! The conditions on different components never interact, so a component's
//! colours are fixed by the colour of its base semi-arc (position 0), and a
//! base colour extends around the component iff `n` divides the component
//! shift.

use std::fmt;

use thiserror::Error;

use crate::diagram::{Diagram, Pass, Role, SemiArcId, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("coloring does not cover the diagram: {0}")]
    Shape(String),

    #[error("colour {color} on semi-arc {arc} is not a residue mod {modulus}")]
    OutOfRange { arc: SemiArcId, color: u32, modulus: u32 },

    #[error("number of colorings {modulus}^{components} does not fit in 128 bits")]
    CountOverflow { modulus: u32, components: usize },
}

/// Modulus and the two crossing shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoringSpec {
    modulus: u32,
    positive: i64,
    negative: i64,
}

impl ColoringSpec {
    /// The plain `n`-up-down coloring.
    pub fn up_down(n: u32) -> Result<Self, ColoringError> {
        Self::new(n, 1, 1)
    }

    pub fn new(n: u32, positive: i64, negative: i64) -> Result<Self, ColoringError> {
        if n == 0 {
            return Err(ColoringError::ZeroModulus);
        }
        Ok(Self { modulus: n, positive, negative })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn positive_shift(&self) -> i64 {
        self.positive
    }

    pub fn negative_shift(&self) -> i64 {
        self.negative
    }

    fn weight(&self, sign: Sign) -> i64 {
        match sign {
            Sign::Positive => self.positive,
            Sign::Negative => self.negative,
        }
    }

    /// Colour change across a pass, as a residue.
    fn step(&self, pass: &Pass) -> u32 {
        let w = self.weight(pass.sign);
        let delta = match pass.role {
            Role::Over => w,
            Role::Under => -w,
        };
        delta.rem_euclid(self.modulus as i64) as u32
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.modulus as u64) as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    spec: ColoringSpec,
    colors: Vec<Vec<u32>>,
}

impl Coloring {
    /// Wraps raw colours, one vector per component indexed by arc position.
    /// Nothing is checked here; see [`verify_coloring`].
    pub fn from_colors(spec: ColoringSpec, colors: Vec<Vec<u32>>) -> Self {
        Self { spec, colors }
    }

    pub fn spec(&self) -> ColoringSpec {
        self.spec
    }

    pub fn colors(&self) -> &[Vec<u32>] {
        &self.colors
    }

    pub fn color(&self, arc: SemiArcId) -> u32 {
        self.colors[arc.component][arc.position]
    }

    /// Colour of the arc entering pass `position` of `component`.
    pub fn incoming(&self, component: usize, position: usize) -> u32 {
        let arcs = &self.colors[component];
        arcs[(position + arcs.len() - 1) % arcs.len()]
    }

    /// Colour of the arc leaving pass `position` of `component`.
    pub fn outgoing(&self, component: usize, position: usize) -> u32 {
        self.colors[component][position]
    }

    /// Adds `i` to every colour.
    pub fn shifted(&self, i: u32) -> Self {
        let spec = self.spec;
        let i = i % spec.modulus;
        let colors = self.colors.iter().map(|arcs| arcs.iter().map(|&c| spec.add(c, i)).collect()).collect();
        Self { spec, colors }
    }

    /// Colours flattened in (component, arc) order.
    pub fn flat(&self) -> impl Iterator<Item = u32> + '_ {
        self.colors.iter().flatten().copied()
    }

    /// `component=<k> arc=<p> color=<v>` lines.
    pub fn to_lines(&self) -> Vec<String> {
        self.colors
            .iter()
            .enumerate()
            .flat_map(|(k, arcs)| arcs.iter().enumerate().map(move |(p, c)| format!("component={k} arc={p} color={c}")))
            .collect()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.to_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Checks every crossing condition of `c` on `d`.
pub fn verify_coloring(d: &Diagram, c: &Coloring) -> Result<bool, ColoringError> {
    if c.colors.len() != d.component_count() {
        return Err(ColoringError::Shape(format!(
            "{} component colourings for {} components",
            c.colors.len(),
            d.component_count()
        )));
    }
    let n = c.spec.modulus;
    for (k, (comp, arcs)) in d.components().iter().zip(&c.colors).enumerate() {
        if arcs.len() != comp.arc_count() {
            return Err(ColoringError::Shape(format!(
                "component {k} has {} semi-arcs, coloring gives {}",
                comp.arc_count(),
                arcs.len()
            )));
        }
        if let Some(p) = arcs.iter().position(|&x| x >= n) {
            return Err(ColoringError::OutOfRange { arc: SemiArcId::new(k, p), color: arcs[p], modulus: n });
        }
    }

    for (k, comp) in d.components().iter().enumerate() {
        for (p, pass) in comp.passes().iter().enumerate() {
            let expected = c.spec.add(c.incoming(k, p), c.spec.step(pass));
            if c.outgoing(k, p) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `n` divides every component shift.
fn admits_colorings(d: &Diagram, spec: ColoringSpec) -> bool {
    let n = spec.modulus as i64;
    (0..d.component_count()).all(|k| {
        let shift = d.component_shift(k, spec.positive, spec.negative).expect("component index in range");
        shift.rem_euclid(n) == 0
    })
}

/// Propagates `base` along component `k`.
fn propagate(d: &Diagram, spec: ColoringSpec, k: usize, base: u32) -> Vec<u32> {
    let comp = &d.components()[k];
    let mut arcs = Vec::with_capacity(comp.arc_count());
    arcs.push(base);
    for pass in comp.passes().iter().skip(1) {
        let prev = *arcs.last().unwrap();
        arcs.push(spec.add(prev, spec.step(pass)));
    }
    arcs
}

/// Lazily yields every coloring in lexicographic order of colour tuples.
pub struct Colorings<'a> {
    diagram: &'a Diagram,
    spec: ColoringSpec,
    // per-component propagation from base colour 0; other bases are shifts of it
    templates: Vec<Vec<u32>>,
    bases: Option<Vec<u32>>,
}

impl<'a> Colorings<'a> {
    pub fn new(diagram: &'a Diagram, spec: ColoringSpec) -> Self {
        let admissible = admits_colorings(diagram, spec);
        let templates = if admissible {
            (0..diagram.component_count()).map(|k| propagate(diagram, spec, k, 0)).collect()
        } else {
            Vec::new()
        };
        let bases = admissible.then(|| vec![0; diagram.component_count()]);
        Self { diagram, spec, templates, bases }
    }

    pub fn diagram(&self) -> &'a Diagram {
        self.diagram
    }
}

impl Iterator for Colorings<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        let bases = self.bases.as_mut()?;
        let spec = self.spec;
        let colors = self
            .templates
            .iter()
            .zip(bases.iter())
            .map(|(t, &b)| t.iter().map(|&c| spec.add(c, b)).collect())
            .collect();

        // odometer, last component fastest
        let mut carry = true;
        for b in bases.iter_mut().rev() {
            *b += 1;
            if *b < spec.modulus {
                carry = false;
                break;
            }
            *b = 0;
        }
        if carry {
            self.bases = None;
        }

        Some(Coloring { spec, colors })
    }
}

/// All colorings of `d`, sorted lexicographically by colour tuple.
pub fn solve_colorings(d: &Diagram, spec: ColoringSpec) -> Vec<Coloring> {
    Colorings::new(d, spec).collect()
}

/// `n^r` when `n` divides every component shift, otherwise 0.
pub fn count_colorings(d: &Diagram, spec: ColoringSpec) -> Result<u128, ColoringError> {
    if !admits_colorings(d, spec) {
        return Ok(0);
    }
    let r = d.component_count();
    u32::try_from(r)
        .ok()
        .and_then(|r| (spec.modulus as u128).checked_pow(r))
        .ok_or(ColoringError::CountOverflow { modulus: spec.modulus, components: r })
}

pub fn is_colorable(d: &Diagram, spec: ColoringSpec) -> bool {
    admits_colorings(d, spec)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest `n` for which `d` is `n`-up-down colorable, or 0 if every `n` works.
///
/// This is the gcd of the absolute component shifts; for a two-component
/// diagram it is `|o - u|` of either component.
pub fn maxord(d: &Diagram) -> u64 {
    (0..d.component_count())
        .map(|k| d.component_shift(k, 1, 1).expect("component index in range").unsigned_abs())
        .fold(0, gcd)
}

/// `c + i`.
pub fn shift_coloring(c: &Coloring, i: u32) -> Coloring {
    c.shifted(i)
}
