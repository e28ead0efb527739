//! Finite binary words over `{a, b}` and finite descriptions of infinite ones.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{rational_string, Rational};
use crate::sturmian::{self, CharacteristicCf, Convention, IntervalSpec, SlopeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over `{a, b}`; the empty word is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<Letter>);

impl BinaryWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BinaryWord(letters)
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &[Letter]) -> BinaryWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(other);
        BinaryWord(letters)
    }

    pub fn hamming_weight(&self) -> usize {
        hamming_weight(&self.0)
    }

    pub fn transpose(&self) -> BinaryWord {
        transpose(&self.0)
    }
}

impl std::ops::Deref for BinaryWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<&[Letter]> for BinaryWord {
    fn from(letters: &[Letter]) -> Self {
        BinaryWord(letters.to_vec())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(Error::Parse(format!("`{other}` is not a letter of {{a, b}}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of occurrences of `b`.
pub fn hamming_weight(w: &[Letter]) -> usize {
    w.iter().filter(|&&l| l == Letter::B).count()
}

pub fn transpose(w: &[Letter]) -> BinaryWord {
    BinaryWord(w.iter().rev().copied().collect())
}

/// Start positions of `pattern` in `w`, overlaps included.
///
/// The empty pattern occurs at every boundary `0..=w.len()`.
pub fn occurrences(pattern: &[Letter], w: &[Letter]) -> Vec<usize> {
    if pattern.len() > w.len() {
        return Vec::new();
    }
    (0..=w.len() - pattern.len()).filter(|&i| &w[i..i + pattern.len()] == pattern).collect()
}

/// Number of distinct length-`n` subwords; zero when `n > w.len()`.
pub fn complexity(w: &[Letter], n: usize) -> usize {
    if n == 0 || n > w.len() {
        return 0;
    }
    w.windows(n).collect::<HashSet<_>>().len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    Balanced,
    /// Two subwords of length `length` whose weights differ by at least two.
    Unbalanced {
        length: usize,
        lighter: BinaryWord,
        heavier: BinaryWord,
    },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced)
    }
}

/// Decides balance. The witness uses the least violating length, then the
/// lexicographically first pair of start positions.
pub fn is_balanced(w: &[Letter]) -> Balance {
    let mut prefix = Vec::with_capacity(w.len() + 1);
    prefix.push(0usize);
    for &l in w {
        prefix.push(prefix.last().unwrap() + usize::from(l == Letter::B));
    }
    let weight = |i: usize, n: usize| prefix[i + n] - prefix[i];
    for n in 1..=w.len() {
        let starts = w.len() - n + 1;
        let weights: Vec<usize> = (0..starts).map(|i| weight(i, n)).collect();
        let (lo, hi) = (weights.iter().min().unwrap(), weights.iter().max().unwrap());
        if hi - lo < 2 {
            continue;
        }
        for i in 0..starts {
            for j in i + 1..starts {
                if weights[i].abs_diff(weights[j]) >= 2 {
                    let (light, heavy) = if weights[i] < weights[j] { (i, j) } else { (j, i) };
                    return Balance::Unbalanced {
                        length: n,
                        lighter: BinaryWord::from(&w[light..light + n]),
                        heavier: BinaryWord::from(&w[heavy..heavy + n]),
                    };
                }
            }
        }
    }
    Balance::Balanced
}

/// Smallest `u` with `w = u^k`.
pub fn primitive_root(w: &[Letter]) -> &[Letter] {
    let n = w.len();
    (1..=n).filter(|d| n % d == 0).find(|&d| (d..n).all(|i| w[i] == w[i - d])).map_or(w, |d| &w[..d])
}

/// Lexicographically least rotation.
pub fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    (0..w.len().max(1))
        .map(|r| {
            let mut v = w.to_vec();
            v.rotate_left(r.min(w.len()));
            v
        })
        .min()
        .unwrap_or_default()
}

/// A finite piece of a word, with flags recording which ends are true ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordWindow {
    pub word: BinaryWord,
    pub left_closed: bool,
    pub right_closed: bool,
}

impl WordWindow {
    pub fn closed(word: BinaryWord) -> Self {
        WordWindow { word, left_closed: true, right_closed: true }
    }

    pub fn new(word: BinaryWord, left_closed: bool, right_closed: bool) -> Self {
        WordWindow { word, left_closed, right_closed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Right,
    Left,
    Double,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Periodicity {
    Periodic,
    EventuallyRightPeriodic,
    EventuallyLeftPeriodic,
    Aperiodic,
}

/// A finite description of an infinite binary word.
///
/// Right-infinite words are indexed from `0`, left-infinite ones from `-1`
/// downwards and double-infinite ones by all integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InfiniteWordSpec {
    /// `head · period · period · …`
    EventuallyPeriodicRight { head: BinaryWord, period: BinaryWord },
    /// `… · period · period · tail`
    EventuallyPeriodicLeft { period: BinaryWord, tail: BinaryWord },
    /// `… period · period …`, with position `0` at the start of a period.
    BiPeriodic { period: BinaryWord },
    /// Cutting word of `y = slope·x + intercept` over an infinite domain.
    CuttingLine {
        slope: SlopeSpec,
        #[serde(with = "rational_string")]
        intercept: Rational,
        domain: IntervalSpec,
        convention: Convention,
    },
    /// Characteristic word of slope `[0; cf_head…, cf_period, cf_period, …]`.
    #[serde(rename = "characteristic-cf")]
    CharacteristicCf { cf_head: Vec<u64>, cf_period: Vec<u64> },
}

impl InfiniteWordSpec {
    pub fn eventually_periodic_right(head: &str, period: &str) -> Result<Self> {
        InfiniteWordSpec::EventuallyPeriodicRight { head: head.parse()?, period: period.parse()? }.canonical()
    }

    pub fn eventually_periodic_left(period: &str, tail: &str) -> Result<Self> {
        InfiniteWordSpec::EventuallyPeriodicLeft { period: period.parse()?, tail: tail.parse()? }.canonical()
    }

    pub fn bi_periodic(period: &str) -> Result<Self> {
        InfiniteWordSpec::BiPeriodic { period: period.parse()? }.canonical()
    }

    pub fn cutting_line(
        slope: SlopeSpec,
        intercept: Rational,
        domain: IntervalSpec,
        convention: Convention,
    ) -> Result<Self> {
        InfiniteWordSpec::CuttingLine { slope, intercept, domain, convention }.canonical()
    }

    pub fn characteristic(cf: &CharacteristicCf) -> Self {
        InfiniteWordSpec::CharacteristicCf { cf_head: cf.head.clone(), cf_period: cf.period.clone() }
    }

    /// Validates the description and brings periods into canonical form:
    /// primitive, with the shortest possible head (or tail). Double-infinite
    /// periods are also rotated to their least rotation.
    pub fn canonical(self) -> Result<Self> {
        use InfiniteWordSpec::*;
        match self {
            EventuallyPeriodicRight { head, period } => {
                if period.is_empty() {
                    return Err(Error::InvalidSpec("empty period".into()));
                }
                let mut head = head.into_letters();
                let mut period = primitive_root(&period).to_vec();
                while head.last().is_some() && head.last() == period.last() {
                    head.pop();
                    period.rotate_right(1);
                }
                Ok(EventuallyPeriodicRight { head: BinaryWord(head), period: BinaryWord(period) })
            }
            EventuallyPeriodicLeft { period, tail } => {
                if period.is_empty() {
                    return Err(Error::InvalidSpec("empty period".into()));
                }
                let mut tail = tail.into_letters();
                let mut period = primitive_root(&period).to_vec();
                while !tail.is_empty() && tail.first() == period.first() {
                    tail.remove(0);
                    period.rotate_left(1);
                }
                Ok(EventuallyPeriodicLeft { period: BinaryWord(period), tail: BinaryWord(tail) })
            }
            BiPeriodic { period } => {
                if period.is_empty() {
                    return Err(Error::InvalidSpec("empty period".into()));
                }
                Ok(BiPeriodic { period: BinaryWord(least_rotation(primitive_root(&period))) })
            }
            CuttingLine { slope, intercept, domain, convention } => {
                if domain.lo.is_some() && domain.hi.is_some() {
                    return Err(Error::InvalidSpec(format!(
                        "cutting line over the bounded domain {domain} is a finite word"
                    )));
                }
                Ok(CuttingLine { slope, intercept, domain, convention })
            }
            CharacteristicCf { cf_head, cf_period } => {
                let cf = sturmian::CharacteristicCf::new(cf_head, cf_period)?;
                Ok(InfiniteWordSpec::characteristic(&cf))
            }
        }
    }

    pub fn side(&self) -> Side {
        use InfiniteWordSpec::*;
        match self {
            EventuallyPeriodicRight { .. } | CharacteristicCf { .. } => Side::Right,
            EventuallyPeriodicLeft { .. } => Side::Left,
            BiPeriodic { .. } => Side::Double,
            CuttingLine { domain, .. } => match (domain.lo.is_some(), domain.hi.is_some()) {
                (true, false) => Side::Right,
                (false, true) => Side::Left,
                _ => Side::Double,
            },
        }
    }

    pub fn as_cf(&self) -> Option<CharacteristicCf> {
        match self {
            InfiniteWordSpec::CharacteristicCf { cf_head, cf_period } => {
                Some(sturmian::CharacteristicCf { head: cf_head.clone(), period: cf_period.clone() })
            }
            _ => None,
        }
    }

    /// Letters at positions `offset .. offset + length`.
    pub fn window(&self, offset: i64, length: usize) -> Result<WordWindow> {
        window(self, offset, length)
    }
}

impl fmt::Display for InfiniteWordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InfiniteWordSpec::*;
        match self {
            EventuallyPeriodicRight { head, period } => write!(f, "{head}({period})^∞"),
            EventuallyPeriodicLeft { period, tail } => write!(f, "^∞({period}){tail}"),
            BiPeriodic { period } => write!(f, "^∞({period})^∞"),
            CuttingLine { slope, intercept, domain, convention } => write!(
                f,
                "{convention:?} cutting word of y = {slope}·x + {} over {domain}",
                crate::exact::format_rational(intercept)
            ),
            CharacteristicCf { cf_head, cf_period } => {
                let cf = sturmian::CharacteristicCf { head: cf_head.clone(), period: cf_period.clone() };
                write!(f, "characteristic word of slope {cf}")
            }
        }
    }
}

/// Decides the periodicity class from the description alone.
pub fn classify_periodicity(spec: &InfiniteWordSpec) -> Result<Periodicity> {
    use InfiniteWordSpec::*;
    Ok(match spec.clone().canonical()? {
        EventuallyPeriodicRight { head, .. } if head.is_empty() => Periodicity::Periodic,
        EventuallyPeriodicRight { .. } => Periodicity::EventuallyRightPeriodic,
        EventuallyPeriodicLeft { tail, .. } if tail.is_empty() => Periodicity::Periodic,
        EventuallyPeriodicLeft { .. } => Periodicity::EventuallyLeftPeriodic,
        BiPeriodic { .. } => Periodicity::Periodic,
        other => match sturmian::eventually_periodic_form(&other)? {
            Some(form) => classify_periodicity(&form)?,
            None => Periodicity::Aperiodic,
        },
    })
}

/// The transposed word, described within the same family of specs.
pub fn transpose_spec(spec: &InfiniteWordSpec) -> Result<InfiniteWordSpec> {
    use InfiniteWordSpec::*;
    match spec {
        EventuallyPeriodicRight { head, period } => {
            EventuallyPeriodicLeft { period: period.transpose(), tail: head.transpose() }.canonical()
        }
        EventuallyPeriodicLeft { period, tail } => {
            EventuallyPeriodicRight { head: tail.transpose(), period: period.transpose() }.canonical()
        }
        BiPeriodic { period } => BiPeriodic { period: period.transpose() }.canonical(),
        CuttingLine { slope, intercept, domain, convention } => CuttingLine {
            slope: *slope,
            intercept: -*intercept,
            domain: domain.reflect(),
            convention: convention.flip(),
        }
        .canonical(),
        CharacteristicCf { .. } => {
            let cf = spec.as_cf().expect("characteristic spec");
            transpose_spec(&sturmian::characteristic_as_cutting_line(&cf)?)
        }
    }
}

pub fn window(spec: &InfiniteWordSpec, offset: i64, length: usize) -> Result<WordWindow> {
    use InfiniteWordSpec::*;
    let spec = spec.clone().canonical()?;
    let end = offset + length as i64;
    let side = spec.side();
    match side {
        Side::Right if offset < 0 => {
            return Err(Error::OutOfRange(format!("right-infinite word has no position {offset}")))
        }
        Side::Left if end > 0 => {
            return Err(Error::OutOfRange(format!("left-infinite word has no position {}", end - 1)))
        }
        _ => {}
    }
    let letters: Vec<Letter> = match &spec {
        EventuallyPeriodicRight { head, period } => (offset..end)
            .map(|i| {
                let i = i as usize;
                if i < head.len() {
                    head[i]
                } else {
                    period[(i - head.len()) % period.len()]
                }
            })
            .collect(),
        EventuallyPeriodicLeft { period, tail } => (offset..end)
            .map(|i| {
                let back = (-1 - i) as usize;
                if back < tail.len() {
                    tail[tail.len() - 1 - back]
                } else {
                    period[period.len() - 1 - (back - tail.len()) % period.len()]
                }
            })
            .collect(),
        BiPeriodic { period } => (offset..end).map(|i| period[i.rem_euclid(period.len() as i64) as usize]).collect(),
        CuttingLine { .. } | CharacteristicCf { .. } => sturmian::spec_letters(&spec, offset, length)?,
    };
    let (left_closed, right_closed) = match side {
        Side::Right => (offset == 0, false),
        Side::Left => (false, end == 0),
        Side::Double => (false, false),
    };
    Ok(WordWindow { word: BinaryWord(letters), left_closed, right_closed })
}
