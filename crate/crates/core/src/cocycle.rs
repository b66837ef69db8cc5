//! Up-down cocycles `f : Z_n x Z_n x {+,-} -> Z_m`.
//!
//! Conditions (1)-(8) are the weight-sum identities for the eight oriented
//! Reidemeister III moves and condition (0) the one for Reidemeister I. A
//! shiftable cocycle depends only on `a - b`, so it is determined by its
//! difference rows `h(d, e) = f(d, 0, e)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::Sign;

/// Largest candidate space `enumerate_shiftable` will walk.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("moduli must be at least 1 (got n={n}, m={m})")]
    ZeroModulus { n: u32, m: u32 },

    #[error("expected {expected} table entries, got {got}")]
    WrongSize { expected: usize, got: usize },

    #[error("value {value} is not a residue mod {m}")]
    ValueOutOfRange { value: u32, m: u32 },

    #[error("unknown builtin cocycle {0:?} (expected example-f, example-g or zero(n,m))")]
    UnknownBuiltin(String),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("missing entry f({a},{b},{sign})")]
    MissingEntry { a: u32, b: u32, sign: Sign },

    #[error("search space of {candidates} difference tables exceeds the budget of {ENUMERATION_BUDGET}")]
    BudgetExceeded { candidates: u128 },

    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Diagonal { a: u32, sign: Sign },
    Triple { a: u32, b: u32, c: u32 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Diagonal { a, sign } => write!(f, "a={a},sign={sign}"),
            Witness::Triple { a, b, c } => write!(f, "a={a},b={b},c={c}"),
        }
    }
}

/// First failing cocycle condition with its lexicographically least witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("condition ({condition}) fails at {witness}")]
pub struct Violation {
    pub condition: u8,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CocycleTable {
    n: u32,
    m: u32,
    values: Vec<u32>,
    // wrap[x + 2] = x mod n for x in -2..n+3
    wrap: Vec<u32>,
}

fn sign_index(sign: Sign) -> usize {
    match sign {
        Sign::Positive => 0,
        Sign::Negative => 1,
    }
}

impl CocycleTable {
    /// Builds a table from values stored in `(a, b, sign)` order with `+`
    /// before `-`.
    pub fn from_values(n: u32, m: u32, values: Vec<u32>) -> Result<Self, CocycleError> {
        if n == 0 || m == 0 {
            return Err(CocycleError::ZeroModulus { n, m });
        }
        let expected = 2 * (n as usize) * (n as usize);
        if values.len() != expected {
            return Err(CocycleError::WrongSize { expected, got: values.len() });
        }
        if let Some(&value) = values.iter().find(|&&v| v >= m) {
            return Err(CocycleError::ValueOutOfRange { value, m });
        }
        let wrap = (-2..n as i64 + 3).map(|x| x.rem_euclid(n as i64) as u32).collect();
        Ok(Self { n, m, values, wrap })
    }

    pub fn zero(n: u32, m: u32) -> Result<Self, CocycleError> {
        Self::from_values(n, m, vec![0; 2 * (n as usize) * (n as usize)])
    }

    pub fn from_fn(n: u32, m: u32, f: impl Fn(u32, u32, Sign) -> u32) -> Result<Self, CocycleError> {
        let mut values = Vec::with_capacity(2 * (n as usize) * (n as usize));
        for a in 0..n {
            for b in 0..n {
                for sign in Sign::BOTH {
                    values.push(f(a, b, sign));
                }
            }
        }
        Self::from_values(n, m, values)
    }

    /// The shiftable table with `f(a, b, e) = h_e(a - b)`.
    pub fn from_differences(n: u32, m: u32, plus: &[u32], minus: &[u32]) -> Result<Self, CocycleError> {
        if plus.len() != n as usize || minus.len() != n as usize {
            return Err(CocycleError::WrongSize { expected: n as usize, got: plus.len().min(minus.len()) });
        }
        Self::from_fn(n, m, |a, b, sign| {
            let d = ((a + n - b) % n) as usize;
            match sign {
                Sign::Positive => plus[d],
                Sign::Negative => minus[d],
            }
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    fn index(&self, a: u32, b: u32, sign: Sign) -> usize {
        ((a as usize * self.n as usize) + b as usize) * 2 + sign_index(sign)
    }

    pub fn get(&self, a: u32, b: u32, sign: Sign) -> u32 {
        self.values[self.index(a % self.n, b % self.n, sign)]
    }

    pub fn set(&mut self, a: u32, b: u32, sign: Sign, value: u32) {
        assert!(value < self.m, "value {value} out of range mod {}", self.m);
        let i = self.index(a % self.n, b % self.n, sign);
        self.values[i] = value;
    }

    /// Raw entry at storage index (see [`CocycleTable::from_values`]).
    pub fn set_raw(&mut self, index: usize, value: u32) {
        assert!(value < self.m);
        self.values[index] = value;
    }

    /// Lookup with arguments in `-2..n+3`, reduced mod n.
    #[inline]
    fn at(&self, a: i64, b: i64, sign: Sign) -> u64 {
        let a = self.wrap[(a + 2) as usize];
        let b = self.wrap[(b + 2) as usize];
        self.values[self.index(a, b, sign)] as u64
    }

    /// `h_e(d) = f(d, 0, e)` for `d` in `0..n`.
    pub fn differences(&self, sign: Sign) -> Vec<u32> {
        (0..self.n).map(|d| self.get(d, 0, sign)).collect()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.m), (other.n, other.m));
        let values = self.values.iter().zip(&other.values).map(|(x, y)| (x + y) % self.m).collect();
        Self { values, ..self.clone() }
    }

    pub fn negate(&self) -> Self {
        let values = self.values.iter().map(|x| (self.m - x) % self.m).collect();
        Self { values, ..self.clone() }
    }

    /// Cocycle file text: a header line then one line per entry.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("n={} m={}\n", self.n, self.m);
        for a in 0..self.n {
            for b in 0..self.n {
                for sign in Sign::BOTH {
                    s.push_str(&format!("{a} {b} {sign} {}\n", self.get(a, b, sign)));
                }
            }
        }
        s
    }

    /// Parses the cocycle file format.
    pub fn parse_file(text: &str) -> Result<Self, CocycleError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());

        let fmt_err = |line, message: &str| CocycleError::Format { line, message: message.into() };

        let (hline, header) = lines.next().ok_or_else(|| fmt_err(1, "empty cocycle file"))?;
        let (n, m) = parse_header(header).ok_or_else(|| fmt_err(hline, "expected \"n=<n> m=<m>\""))?;
        if n == 0 || m == 0 {
            return Err(CocycleError::ZeroModulus { n, m });
        }

        let size = 2 * (n as usize) * (n as usize);
        let mut seen: Vec<Option<u32>> = vec![None; size];
        let mut table = Self::zero(n, m)?;

        for (line, text) in lines {
            let fields: Vec<&str> = text.split_whitespace().collect();
            let [a, b, sign, value] = fields[..] else {
                return Err(fmt_err(line, "expected \"<a> <b> <+|-> <value>\""));
            };
            let residue = |s: &str, bound: u32, what: &str| {
                s.parse::<u32>()
                    .ok()
                    .filter(|&v| v < bound)
                    .ok_or_else(|| fmt_err(line, &format!("{what} must be an integer in 0..{bound}")))
            };
            let a = residue(a, n, "a")?;
            let b = residue(b, n, "b")?;
            let sign = match sign {
                "+" => Sign::Positive,
                "-" => Sign::Negative,
                _ => return Err(fmt_err(line, "sign must be '+' or '-'")),
            };
            let value = residue(value, m, "value")?;
            let i = table.index(a, b, sign);
            if seen[i].is_some() {
                return Err(fmt_err(line, "duplicate entry"));
            }
            seen[i] = Some(value);
            table.values[i] = value;
        }

        for a in 0..n {
            for b in 0..n {
                for sign in Sign::BOTH {
                    if seen[table.index(a, b, sign)].is_none() {
                        return Err(CocycleError::MissingEntry { a, b, sign });
                    }
                }
            }
        }
        Ok(table)
    }
}

fn parse_header(line: &str) -> Option<(u32, u32)> {
    let mut parts = line.split_whitespace();
    let n = parts.next()?.strip_prefix("n=")?.parse().ok()?;
    let m = parts.next()?.strip_prefix("m=")?.parse().ok()?;
    parts.next().is_none().then_some((n, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Builtin {
    /// The shiftable 4-cocycle into Z_4 with `h_+ = (0,2,2,0)`, `h_- = (0,1,2,3)`.
    ExampleF,
    /// The shiftable 4-cocycle into Z_4 equal to 1 exactly when `a = b +- 1`
    /// and the sign is negative.
    ExampleG,
    Zero {
        n: u32,
        m: u32,
    },
}

impl FromStr for Builtin {
    type Err = CocycleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "example-f" => Ok(Builtin::ExampleF),
            "example-g" => Ok(Builtin::ExampleG),
            _ => {
                let unknown = || CocycleError::UnknownBuiltin(s.to_string());
                let args = s.strip_prefix("zero(").and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?;
                let (n, m) = args.split_once(',').ok_or_else(unknown)?;
                let n = n.trim().parse().map_err(|_| unknown())?;
                let m = m.trim().parse().map_err(|_| unknown())?;
                Ok(Builtin::Zero { n, m })
            }
        }
    }
}

pub fn builtin(which: Builtin) -> Result<CocycleTable, CocycleError> {
    match which {
        Builtin::ExampleF => CocycleTable::from_differences(4, 4, &[0, 2, 2, 0], &[0, 1, 2, 3]),
        Builtin::ExampleG => CocycleTable::from_differences(4, 4, &[0, 0, 0, 0], &[0, 1, 0, 1]),
        Builtin::Zero { n, m } => CocycleTable::zero(n, m),
    }
}

/// Looks up a builtin by name.
pub fn builtin_by_name(name: &str) -> Result<CocycleTable, CocycleError> {
    builtin(name.parse()?)
}

#[derive(Clone, Copy)]
enum Var {
    A,
    B,
    C,
}

/// `f(x + dx, y + dy, sign)`.
#[derive(Clone, Copy)]
struct Term(Var, i64, Var, i64, Sign);

use Sign::{Negative as M, Positive as P};
use Var::{A, B, C};

/// Conditions (1)-(8): left-hand terms, right-hand terms.
#[rustfmt::skip]
const CONDITIONS: [([Term; 3], [Term; 3]); 8] = [
    // (1)
    ([Term(A, -1, B, 0, M), Term(B, 1, C, 1, P), Term(A, -1, C, 2, P)],
     [Term(A, -2, B, -1, M), Term(B, 0, C, 2, P), Term(A, 0, C, 1, P)]),
    // (2)
    ([Term(A, -1, B, 0, M), Term(B, 0, C, 1, M), Term(A, -2, C, 0, M)],
     [Term(A, -2, B, -1, M), Term(B, -1, C, 0, M), Term(A, -1, C, 1, M)]),
    // (3)
    ([Term(A, -1, B, 1, P), Term(B, 1, C, 1, P), Term(A, -1, C, 1, M)],
     [Term(A, 0, B, 0, P), Term(B, 0, C, 2, P), Term(A, -2, C, 0, M)]),
    // (4)
    ([Term(A, -1, B, 1, P), Term(B, 0, C, 1, M), Term(A, 0, C, 1, P)],
     [Term(A, 0, B, 0, P), Term(B, -1, C, 0, M), Term(A, -1, C, 2, P)]),
    // (5)
    ([Term(A, 0, B, 1, P), Term(B, 1, C, 2, P), Term(A, -1, C, 1, P)],
     [Term(A, -1, B, 0, P), Term(B, 0, C, 1, P), Term(A, 0, C, 2, P)]),
    // (6)
    ([Term(A, 0, B, 1, P), Term(B, 0, C, 0, M), Term(A, -2, C, 1, M)],
     [Term(A, -1, B, 0, P), Term(B, -1, C, 1, M), Term(A, -1, C, 0, M)]),
    // (7)
    ([Term(A, -2, B, 0, M), Term(B, 1, C, 2, P), Term(A, -1, C, 0, M)],
     [Term(A, -1, B, -1, M), Term(B, 0, C, 1, P), Term(A, -2, C, 1, M)]),
    // (8)
    ([Term(A, -2, B, 0, M), Term(B, 0, C, 0, M), Term(A, 0, C, 2, P)],
     [Term(A, -1, B, -1, M), Term(B, -1, C, 1, M), Term(A, -1, C, 1, P)]),
];

/// Three identities that, for shift-invariant tables, replace conditions
/// (1)-(8). The sign slot is replaced by the quantified sign.
#[rustfmt::skip]
const SHIFT_SYSTEM: [([Term; 2], [Term; 2]); 3] = [
    ([Term(B, 1, C, 1, P), Term(A, -1, C, 2, P)], [Term(B, 0, C, 2, P), Term(A, 0, C, 1, P)]),
    ([Term(A, -1, B, 1, P), Term(B, 1, C, 1, P)], [Term(A, 0, B, 0, P), Term(B, 0, C, 2, P)]),
    ([Term(A, -1, B, 1, P), Term(A, 0, C, 1, P)], [Term(A, 0, B, 0, P), Term(A, -1, C, 2, P)]),
];

impl CocycleTable {
    #[inline]
    fn eval(&self, terms: &[Term], abc: [i64; 3], sign: Option<Sign>) -> u64 {
        terms
            .iter()
            .map(|&Term(x, dx, y, dy, s)| {
                let pick = |v: Var| abc[v as usize];
                self.at(pick(x) + dx, pick(y) + dy, sign.unwrap_or(s))
            })
            .sum()
    }

    #[inline]
    fn balanced(&self, lhs: &[Term], rhs: &[Term], abc: [i64; 3], sign: Option<Sign>) -> bool {
        let m = self.m as u64;
        self.eval(lhs, abc, sign) % m == self.eval(rhs, abc, sign) % m
    }

    fn diagonal_vanishes(&self) -> Option<Witness> {
        for a in 0..self.n {
            for sign in Sign::BOTH {
                if self.get(a, a, sign) != 0 {
                    return Some(Witness::Diagonal { a, sign });
                }
            }
        }
        None
    }
}

fn triples(n: u32) -> impl Iterator<Item = [u32; 3]> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
}

/// Checks conditions (0)-(8). On failure reports the first violated
/// condition in order, with the lexicographically least witness.
pub fn check_cocycle(t: &CocycleTable) -> Result<(), Violation> {
    if let Some(witness) = t.diagonal_vanishes() {
        return Err(Violation { condition: 0, witness });
    }
    for (i, (lhs, rhs)) in CONDITIONS.iter().enumerate() {
        for [a, b, c] in triples(t.n) {
            if !t.balanced(lhs, rhs, [a as i64, b as i64, c as i64], None) {
                return Err(Violation { condition: i as u8 + 1, witness: Witness::Triple { a, b, c } });
            }
        }
    }
    Ok(())
}

pub fn is_cocycle(t: &CocycleTable) -> bool {
    check_cocycle(t).is_ok()
}

/// `f(a+1, b+1, e) = f(a, b, e)` everywhere.
pub fn is_shiftable(t: &CocycleTable) -> bool {
    let n = t.n;
    (0..n).all(|a| (0..n).all(|b| Sign::BOTH.iter().all(|&s| t.get(a + 1, b + 1, s) == t.get(a, b, s))))
}

/// The reduced system for shiftable cocycles: vanishing diagonal, shift
/// invariance and the identities in `SHIFT_SYSTEM`. Holds exactly when the
/// table is a shiftable cocycle.
pub fn check_shiftable_system(t: &CocycleTable) -> bool {
    if t.diagonal_vanishes().is_some() {
        return false;
    }
    if !is_shiftable(t) {
        return false;
    }
    triples(t.n).all(|[a, b, c]| {
        let abc = [a as i64, b as i64, c as i64];
        Sign::BOTH.iter().all(|&s| SHIFT_SYSTEM.iter().all(|(lhs, rhs)| t.balanced(lhs, rhs, abc, Some(s))))
    })
}

fn candidate_count(n: u32, m: u32) -> Option<u128> {
    (m as u128).checked_pow(2 * (n - 1))
}

/// Every shiftable `n`-up-down cocycle into `Z_m`, in lexicographic order of
/// table values. Runs on the global rayon pool.
pub fn enumerate_shiftable(n: u32, m: u32) -> Result<Vec<CocycleTable>, CocycleError> {
    if n == 0 || m == 0 {
        return Err(CocycleError::ZeroModulus { n, m });
    }
    let candidates = candidate_count(n, m).unwrap_or(u128::MAX);
    if candidates > ENUMERATION_BUDGET {
        return Err(CocycleError::BudgetExceeded { candidates });
    }

    let width = (n - 1) as usize;
    let decode = |mut index: u64| {
        // index digits, most significant first: h_+(1..n), then h_-(1..n)
        let mut digits = vec![0u32; 2 * width];
        for d in digits.iter_mut().rev() {
            *d = (index % m as u64) as u32;
            index /= m as u64;
        }
        let mut plus = vec![0];
        plus.extend_from_slice(&digits[..width]);
        let mut minus = vec![0];
        minus.extend_from_slice(&digits[width..]);
        CocycleTable::from_differences(n, m, &plus, &minus).expect("residues in range")
    };

    let mut found: Vec<CocycleTable> =
        (0..candidates as u64).into_par_iter().map(decode).filter(check_shiftable_system).collect();
    found.sort_by(|x, y| x.values.cmp(&y.values));
    Ok(found)
}

/// [`enumerate_shiftable`] on a dedicated pool of `threads` workers.
pub fn enumerate_shiftable_with_threads(n: u32, m: u32, threads: usize) -> Result<Vec<CocycleTable>, CocycleError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CocycleError::ThreadPool(e.to_string()))?;
    pool.install(|| enumerate_shiftable(n, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> CocycleTable {
        builtin(Builtin::ExampleF).unwrap()
    }

    fn g() -> CocycleTable {
        builtin(Builtin::ExampleG).unwrap()
    }

    #[test]
    fn example_f_entries() {
        let f = f();
        assert_eq!(f.get(1, 0, Sign::Negative), 1);
        assert_eq!(f.get(1, 2, Sign::Positive), 0);
        assert_eq!(f.get(3, 1, Sign::Positive), 2);
        assert_eq!(f.get(2, 1, Sign::Positive), 2);
        assert_eq!(f.get(0, 1, Sign::Positive), 0);
        assert_eq!(f.get(0, 1, Sign::Negative), 3);
        for a in 0..4 {
            assert_eq!(f.get(a, a, Sign::Positive), 0);
            assert_eq!(f.get(a, a, Sign::Negative), 0);
        }
    }

    #[test]
    fn example_g_entries() {
        let g = g();
        assert_eq!(g.get(2, 1, Sign::Negative), 1);
        assert_eq!(g.get(1, 2, Sign::Negative), 1);
        assert_eq!(g.get(2, 1, Sign::Positive), 0);
        assert_eq!(g.get(3, 1, Sign::Negative), 0);
    }

    #[test]
    fn builtins_are_shiftable_cocycles() {
        for t in [f(), g(), CocycleTable::zero(3, 5).unwrap()] {
            assert_eq!(check_cocycle(&t), Ok(()));
            assert!(is_shiftable(&t));
            assert!(check_shiftable_system(&t));
        }
    }

    #[test]
    fn diagonal_violation() {
        let mut t = CocycleTable::zero(3, 2).unwrap();
        t.set(0, 0, Sign::Positive, 1);
        assert_eq!(
            check_cocycle(&t),
            Err(Violation { condition: 0, witness: Witness::Diagonal { a: 0, sign: Sign::Positive } })
        );
        assert!(!check_shiftable_system(&t));
    }

    #[test]
    fn non_shiftable() {
        let mut t = CocycleTable::zero(2, 2).unwrap();
        t.set(1, 1, Sign::Positive, 1);
        assert!(!is_shiftable(&t));
    }

    #[test]
    fn perturbed_f_reports_a_condition() {
        let mut t = f();
        t.set(1, 0, Sign::Positive, 3);
        let v = check_cocycle(&t).unwrap_err();
        assert!(v.condition >= 1);
        assert!(matches!(v.witness, Witness::Triple { .. }));
    }

    #[test]
    fn builtin_names() {
        assert_eq!("example-f".parse::<Builtin>().unwrap(), Builtin::ExampleF);
        assert_eq!("zero(4, 3)".parse::<Builtin>().unwrap(), Builtin::Zero { n: 4, m: 3 });
        assert!(matches!(builtin_by_name("example-h"), Err(CocycleError::UnknownBuiltin(_))));
        assert!(matches!(builtin_by_name("zero(0,3)"), Err(CocycleError::ZeroModulus { .. })));
    }

    #[test]
    fn file_round_trip() {
        let text = f().to_file_string();
        assert!(text.starts_with("n=4 m=4\n0 0 + 0\n0 0 - 0\n0 1 + 0\n0 1 - 3\n"));
        assert_eq!(CocycleTable::parse_file(&text).unwrap(), f());
    }

    #[test]
    fn file_errors() {
        let missing = "n=1 m=2\n0 0 + 0\n";
        assert_eq!(
            CocycleTable::parse_file(missing),
            Err(CocycleError::MissingEntry { a: 0, b: 0, sign: Sign::Negative })
        );
        let dup = "n=1 m=2\n0 0 + 0\n0 0 + 1\n0 0 - 0\n";
        assert!(matches!(CocycleTable::parse_file(dup), Err(CocycleError::Format { line: 3, .. })));
        let range = "n=1 m=2\n0 0 + 2\n0 0 - 0\n";
        assert!(matches!(CocycleTable::parse_file(range), Err(CocycleError::Format { line: 2, .. })));
        assert!(matches!(CocycleTable::parse_file("n=2\n"), Err(CocycleError::Format { line: 1, .. })));
        assert!(matches!(CocycleTable::parse_file("n=1 m=1\n0 0 * 0\n"), Err(CocycleError::Format { line: 2, .. })));
    }

    #[test]
    fn enumeration_small() {
        for m in 1..=4 {
            let all = enumerate_shiftable(1, m).unwrap();
            assert_eq!(all, vec![CocycleTable::zero(1, m).unwrap()]);
        }
        assert_eq!(enumerate_shiftable(2, 2).unwrap().len(), 4);
        assert!(matches!(enumerate_shiftable(9, 4), Err(CocycleError::BudgetExceeded { .. })));
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let all = enumerate_shiftable_with_threads(3, 3, 2).unwrap();
        assert_eq!(all.len(), 9);
        assert!(all.windows(2).all(|w| w[0].values() < w[1].values()));
        for t in &all {
            assert!(is_cocycle(t) && is_shiftable(t));
        }
    }

    #[test]
    fn differences_round_trip() {
        assert_eq!(f().differences(Sign::Positive), vec![0, 2, 2, 0]);
        assert_eq!(f().differences(Sign::Negative), vec![0, 1, 2, 3]);
    }
}
