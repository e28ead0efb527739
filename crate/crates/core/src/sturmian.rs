//! Cutting words, characteristic words and Christoffel words, generated with
//! exact arithmetic.
//!
//! A cutting word records how the line `y = m·x + c` crosses the integer grid
//! while `x` runs through a domain `D`: a vertical grid line gives `b`, a
//! horizontal one gives `a`. A lattice point gives `ba` in the lower
//! convention and `ab` in the upper one. Crossings at a closed endpoint of
//! `D` are recorded, crossings at an open endpoint are not.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, square_free_split, FieldElem, QuadValue, Rational};
use crate::word::{BinaryWord, InfiniteWordSpec, Letter, WordWindow};

/// A positive slope: a reduced fraction `p/q` or a quadratic irrational
/// `(a + b·√d) / c` with `d` square-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlopeSpec {
    Rational { p: i64, q: i64 },
    QuadraticSurd { a: i64, b: i64, c: i64, d: i64 },
}

impl SlopeSpec {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 || p == 0 || (p < 0) != (q < 0) {
            return Err(Error::InvalidSlope(format!("{p}/{q} is not a positive slope")));
        }
        let g = p.gcd(&q);
        Ok(SlopeSpec::Rational { p: p.abs() / g, q: q.abs() / g })
    }

    /// `(a + b·√d) / c`, normalized; collapses to a rational when `d` is a square.
    pub fn surd(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if c == 0 || d < 0 {
            return Err(Error::InvalidSlope(format!("({a}+{b}*sqrt({d}))/{c} is not a real number")));
        }
        let (k, f) = if d == 0 { (0, 1) } else { square_free_split(d as i128) };
        let elem = FieldElem { p: a as i128, q: b as i128 * k, r: c as i128 };
        SlopeSpec::from_field(elem, f)
    }

    fn from_field(elem: FieldElem, d: i128) -> Result<Self> {
        let elem = elem.normalized();
        if elem.q == 0 || d == 1 {
            let num = elem.p + elem.q;
            return SlopeSpec::rational(narrow(num)?, narrow(elem.r)?);
        }
        let value = QuadValue::new(elem.p, elem.q, elem.r, d);
        if !value.is_positive() {
            return Err(Error::InvalidSlope("slope must be positive".into()));
        }
        Ok(SlopeSpec::QuadraticSurd { a: narrow(elem.p)?, b: narrow(elem.q)?, c: narrow(elem.r)?, d: narrow(d)? })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, SlopeSpec::Rational { .. })
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match *self {
            SlopeSpec::Rational { p, q } => Some(Rational::new(p, q)),
            _ => None,
        }
    }

    /// `m·x + c` as an exact value.
    pub(crate) fn eval(&self, x: Rational, c: Rational) -> QuadValue {
        let (xn, xd) = (*x.numer() as i128, *x.denom() as i128);
        let (cn, cd) = (*c.numer() as i128, *c.denom() as i128);
        match *self {
            SlopeSpec::Rational { p, q } => {
                let (p, q) = (p as i128, q as i128);
                QuadValue::new(p * xn * cd + cn * q * xd, 0, q * xd * cd, 0)
            }
            SlopeSpec::QuadraticSurd { a, b, c: den, d } => {
                let (a, b, den, d) = (a as i128, b as i128, den as i128, d as i128);
                QuadValue::new(a * xn * cd + cn * den * xd, b * xn * cd, den * xd * cd, d)
            }
        }
    }
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::InvalidSlope("coefficient overflow".into()))
}

impl fmt::Display for SlopeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SlopeSpec::Rational { p, q } if q == 1 => write!(f, "{p}"),
            SlopeSpec::Rational { p, q } => write!(f, "{p}/{q}"),
            SlopeSpec::QuadraticSurd { a, b, c, d } => {
                let root = match b {
                    1 => format!("sqrt({d})"),
                    -1 => format!("-sqrt({d})"),
                    _ => format!("{b}*sqrt({d})"),
                };
                let num = match (a, b > 0) {
                    (0, _) => root,
                    (_, true) => format!("{a}+{root}"),
                    (_, false) => format!("{a}{root}"),
                };
                if c == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "({num})/{c}")
                }
            }
        }
    }
}

impl FromStr for SlopeSpec {
    type Err = Error;

    /// Accepts arithmetic in integers and `sqrt(n)`, e.g. `5/8`,
    /// `(-1+sqrt(5))/2`, `2/(1+sqrt(5))`, `sqrt(2)-1`.
    fn from_str(text: &str) -> Result<Self> {
        let mut parser = ExprParser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, d: None };
        let value = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(parser.error());
        }
        SlopeSpec::from_field(value, parser.d.unwrap_or(1))
    }
}

struct ExprParser {
    chars: Vec<char>,
    pos: usize,
    d: Option<i128>,
}

impl ExprParser {
    fn error(&self) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("invalid slope `{text}` at position {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn d(&self) -> i128 {
        self.d.unwrap_or(0)
    }

    fn expr(&mut self) -> Result<FieldElem> {
        let mut value = self.term()?;
        loop {
            if self.eat('+') {
                value = value.add(self.term()?);
            } else if self.eat('-') {
                value = value.add(self.term()?.neg());
            } else {
                return Ok(value);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElem> {
        let mut value = self.factor()?;
        loop {
            if self.eat('*') {
                value = value.mul(self.factor()?, self.d());
            } else if self.eat('/') {
                let rhs = self.factor()?;
                value = value.div(rhs, self.d()).ok_or_else(|| self.error())?;
            } else {
                return Ok(value);
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElem> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat('(') {
            let value = self.expr()?;
            return if self.eat(')') { Ok(value) } else { Err(self.error()) };
        }
        if self.chars[self.pos..].starts_with(&['s', 'q', 'r', 't', '(']) {
            self.pos += 5;
            let n = self.integer()?;
            if !self.eat(')') || n <= 0 {
                return Err(self.error());
            }
            let (k, f) = square_free_split(n);
            if f == 1 {
                return Ok(FieldElem::int(k));
            }
            match self.d {
                Some(d) if d != f => return Err(self.error()),
                _ => self.d = Some(f),
            }
            return Ok(FieldElem::surd(k));
        }
        Ok(FieldElem::int(self.integer()?))
    }

    fn integer(&mut self) -> Result<i128> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error())
    }
}

impl Serialize for SlopeSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SlopeSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An interval of the real line with rational or infinite endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSpec {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl IntervalSpec {
    pub fn new(lo: Option<Rational>, lo_open: bool, hi: Option<Rational>, hi_open: bool) -> Result<Self> {
        let interval = IntervalSpec { lo, hi, lo_open: lo_open || lo.is_none(), hi_open: hi_open || hi.is_none() };
        if let (Some(l), Some(h)) = (lo, hi) {
            if l >= h {
                return Err(Error::InvalidInterval(format!("{interval} is empty or degenerate")));
            }
        }
        if (lo.is_none() && !lo_open) || (hi.is_none() && !hi_open) {
            return Err(Error::InvalidInterval("infinite endpoints must be open".into()));
        }
        Ok(interval)
    }

    /// `(0, ∞)`
    pub fn positive() -> Self {
        IntervalSpec { lo: Some(Rational::from_integer(0)), hi: None, lo_open: true, hi_open: true }
    }

    /// `(-∞, ∞)`
    pub fn real_line() -> Self {
        IntervalSpec { lo: None, hi: None, lo_open: true, hi_open: true }
    }

    /// Image under `x ↦ -x`.
    pub fn reflect(&self) -> Self {
        IntervalSpec { lo: self.hi.map(|h| -h), hi: self.lo.map(|l| -l), lo_open: self.hi_open, hi_open: self.lo_open }
    }
}

impl fmt::Display for IntervalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.map_or("-inf".to_string(), |v| format_rational(&v));
        let hi = self.hi.map_or("inf".to_string(), |v| format_rational(&v));
        let open = if self.lo_open { '(' } else { '[' };
        let close = if self.hi_open { ')' } else { ']' };
        write!(f, "{open}{lo},{hi}{close}")
    }
}

impl FromStr for IntervalSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid interval `{text}`"));
        let t = text.trim();
        let lo_open = match t.chars().next() {
            Some('(') => true,
            Some('[') => false,
            _ => return Err(bad()),
        };
        let hi_open = match t.chars().last() {
            Some(')') => true,
            Some(']') => false,
            _ => return Err(bad()),
        };
        let (l, h) = t[1..t.len() - 1].split_once(',').ok_or_else(bad)?;
        let endpoint = |s: &str, sign: &str| -> Result<Option<Rational>> {
            let s = s.trim();
            let bare =
                s.strip_prefix(sign).or_else(|| if sign == "" { s.strip_prefix('+') } else { None }).unwrap_or(s);
            if (s.starts_with(sign) || sign.is_empty()) && matches!(bare, "inf" | "∞" | "infinity") {
                Ok(None)
            } else {
                parse_rational(s).map(Some)
            }
        };
        let lo = endpoint(l, "-")?;
        let hi = endpoint(h, "")?;
        IntervalSpec::new(lo, lo_open, hi, hi_open)
    }
}

impl Serialize for IntervalSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntervalSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Lattice points give `ba`.
    Lower,
    /// Lattice points give `ab`.
    Upper,
}

impl Convention {
    pub fn flip(self) -> Self {
        match self {
            Convention::Lower => Convention::Upper,
            Convention::Upper => Convention::Lower,
        }
    }
}

/// `⌊m·x + c⌋`, exactly.
pub fn floor_line(slope: &SlopeSpec, intercept: Rational, x: i64) -> i64 {
    slope.eval(Rational::from_integer(x), intercept).floor() as i64
}

/// Letters of the cutting word over `⟨lo, hi⟩` with a finite left end, up to
/// `max` of them. The flag reports whether the word ended before the bound.
fn forward_letters(
    slope: &SlopeSpec,
    c: Rational,
    lo: (Rational, bool),
    hi: Option<(Rational, bool)>,
    convention: Convention,
    max: usize,
) -> (Vec<Letter>, bool) {
    let (lo, lo_open) = lo;
    let y_lo = slope.eval(lo, c);
    let mut x = if lo_open { lo.floor().to_integer() + 1 } else { lo.ceil().to_integer() };
    let mut k = if lo_open { y_lo.strict_ceil() } else { y_lo.ceil() };
    let k_max = hi.map(|(h, open)| {
        let y = slope.eval(h, c);
        if open {
            y.strict_floor()
        } else {
            y.floor()
        }
    });
    let x_in = |x: i64| match hi {
        None => true,
        Some((h, open)) => {
            let x = Rational::from_integer(x);
            x < h || (!open && x == h)
        }
    };
    let lattice = match convention {
        Convention::Lower => [Letter::B, Letter::A],
        Convention::Upper => [Letter::A, Letter::B],
    };
    let mut out = Vec::new();
    while out.len() < max {
        if !x_in(x) {
            let k_max = k_max.expect("bounded domain");
            while k <= k_max && out.len() < max {
                out.push(Letter::A);
                k += 1;
            }
            return (out, k > k_max);
        }
        let y = slope.eval(Rational::from_integer(x), c);
        let below = y.strict_floor();
        while k <= below && out.len() < max {
            out.push(Letter::A);
            k += 1;
        }
        if out.len() >= max {
            break;
        }
        if y.is_integer() && y.floor() == k {
            out.extend_from_slice(&lattice);
            k += 1;
        } else {
            out.push(Letter::B);
        }
        x += 1;
    }
    out.truncate(max);
    (out, false)
}

/// The last `count` letters of the cutting word over `(-∞, hi⟩`.
fn backward_letters(
    slope: &SlopeSpec,
    c: Rational,
    hi: (Rational, bool),
    convention: Convention,
    count: usize,
) -> Vec<Letter> {
    let start = hi.0.floor().to_integer() - count as i64 - 2;
    let (letters, _) =
        forward_letters(slope, c, (Rational::from_integer(start), true), Some(hi), convention, usize::MAX);
    letters[letters.len() - count..].to_vec()
}

/// Cutting word of `y = slope·x + intercept` over `domain`.
///
/// With a finite left end the window holds the first `max_letters` letters.
/// Over `(-∞, h⟩` it holds the last `max_letters` letters, and over the whole
/// line the letters of `x > 0`. An unbounded domain needs a letter bound.
pub fn cutting_word(
    slope: &SlopeSpec,
    intercept: Rational,
    domain: &IntervalSpec,
    convention: Convention,
    max_letters: Option<usize>,
) -> Result<WordWindow> {
    let need_bound = || Error::InvalidInterval(format!("the word over {domain} is infinite; give a length"));
    match (domain.lo, domain.hi) {
        (Some(lo), hi) => {
            let hi = hi.map(|h| (h, domain.hi_open));
            let max = match (hi, max_letters) {
                (_, Some(m)) => m,
                (Some(_), None) => usize::MAX,
                (None, None) => return Err(need_bound()),
            };
            let (letters, done) = forward_letters(slope, intercept, (lo, domain.lo_open), hi, convention, max);
            Ok(WordWindow::new(BinaryWord::new(letters), true, done))
        }
        (None, Some(hi)) => {
            let count = max_letters.ok_or_else(need_bound)?;
            let letters = backward_letters(slope, intercept, (hi, domain.hi_open), convention, count);
            Ok(WordWindow::new(BinaryWord::new(letters), false, true))
        }
        (None, None) => {
            let count = max_letters.ok_or_else(need_bound)?;
            let zero = Rational::from_integer(0);
            let (letters, _) = forward_letters(slope, intercept, (zero, true), None, convention, count);
            Ok(WordWindow::new(BinaryWord::new(letters), false, false))
        }
    }
}

pub fn lower_cutting_word(
    slope: &SlopeSpec,
    intercept: Rational,
    domain: &IntervalSpec,
    max_letters: Option<usize>,
) -> Result<WordWindow> {
    cutting_word(slope, intercept, domain, Convention::Lower, max_letters)
}

pub fn upper_cutting_word(
    slope: &SlopeSpec,
    intercept: Rational,
    domain: &IntervalSpec,
    max_letters: Option<usize>,
) -> Result<WordWindow> {
    cutting_word(slope, intercept, domain, Convention::Upper, max_letters)
}

/// The continued fraction `[0; head…, period, period, …]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacteristicCf {
    pub head: Vec<u64>,
    pub period: Vec<u64>,
}

impl CharacteristicCf {
    pub fn new(head: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if head.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::InvalidSpec("continued fraction coefficients must be positive".into()));
        }
        if head.is_empty() && period.is_empty() {
            return Err(Error::InvalidSpec("[0;] is not a positive slope".into()));
        }
        Ok(CharacteristicCf { head, period })
    }

    pub fn golden() -> Self {
        CharacteristicCf { head: vec![], period: vec![1] }
    }

    pub fn is_irrational(&self) -> bool {
        !self.period.is_empty()
    }

    /// Coefficient `a_i` for `i ≥ 1`; `None` past the end of a finite expansion.
    pub fn coefficient(&self, i: usize) -> Option<u64> {
        assert!(i >= 1);
        let i = i - 1;
        if i < self.head.len() {
            Some(self.head[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.head.len()) % self.period.len()])
        }
    }

    /// Convergents `p_n / q_n` for `n = 1..=count` (fewer for a finite expansion).
    pub fn convergents(&self, count: usize) -> Vec<(i64, i64)> {
        let (mut a0, mut b0, mut a1, mut b1) = (1i64, 0i64, 0i64, 1i64);
        let mut out = Vec::new();
        for n in 1..=count {
            let Some(c) = self.coefficient(n) else { break };
            let c = c as i64;
            (a0, b0, a1, b1) = (a1, b1, c * a1 + a0, c * b1 + b0);
            out.push((a1, b1));
        }
        out
    }

    /// The slope denoted by the expansion.
    pub fn slope(&self) -> Result<SlopeSpec> {
        if !self.is_irrational() {
            let &(p, q) = self.convergents(self.head.len()).last().expect("non-empty expansion");
            return SlopeSpec::rational(p, q);
        }
        // y = [p1; p2, …, pr, y] solves Q·y² + (Q' − P)·y − P' = 0.
        let (mut pp, mut qp, mut p, mut q) = (1i128, 0i128, 0i128, 1i128);
        for (i, &c) in self.period.iter().enumerate() {
            let c = c as i128;
            if i == 0 {
                (pp, qp, p, q) = (1, 0, c, 1);
            } else {
                (pp, qp, p, q) = (p, q, c * p + pp, c * q + qp);
            }
        }
        let disc = (qp - p) * (qp - p) + 4 * q * pp;
        let (k, d) = square_free_split(disc);
        let y = FieldElem { p: p - qp, q: k, r: 2 * q };
        // x = (A·y + A') / (B·y + B') over the head convergents.
        let (mut a0, mut b0, mut a1, mut b1) = (1i128, 0i128, 0i128, 1i128);
        for &c in &self.head {
            let c = c as i128;
            (a0, b0, a1, b1) = (a1, b1, c * a1 + a0, c * b1 + b0);
        }
        let num = FieldElem::int(a1).mul(y, d).add(FieldElem::int(a0));
        let den = FieldElem::int(b1).mul(y, d).add(FieldElem::int(b0));
        let x = num.div(den, d).expect("positive denominator");
        SlopeSpec::from_field(x, d)
    }
}

impl fmt::Display for CharacteristicCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let mut parts = Vec::new();
        if !self.head.is_empty() {
            parts.push(join(&self.head));
        }
        if !self.period.is_empty() {
            parts.push(format!("({})", join(&self.period)));
        }
        write!(f, "[0; {}]", parts.join(", "))
    }
}

impl FromStr for CharacteristicCf {
    type Err = Error;

    /// `[0; 2, (2)]`: the parenthesized group repeats forever.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid continued fraction `{text}`"));
        let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let (zero, rest) = inner.split_once(';').ok_or_else(bad)?;
        if zero.trim() != "0" {
            return Err(bad());
        }
        let numbers = |s: &str| -> Result<Vec<u64>> {
            s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| t.parse().map_err(|_| bad())).collect()
        };
        let (head, period) = match rest.split_once('(') {
            Some((head, tail)) => {
                let period = tail.trim().strip_suffix(')').ok_or_else(bad)?;
                let head = head.trim().trim_end_matches(',');
                (numbers(head)?, numbers(period)?)
            }
            None => (numbers(rest)?, Vec::new()),
        };
        CharacteristicCf::new(head, period)
    }
}

/// Prefix of length `n` of the characteristic word of the slope `[0; a₁, a₂, …]`.
///
/// Irrational slopes use the standard words `s₋₁ = a`, `s₀ = b`,
/// `sₙ = sₙ₋₁^{aₙ} sₙ₋₂`; rational ones use the cutting line over `(0, ∞)`.
pub fn characteristic_word(cf: &CharacteristicCf, n: usize) -> Result<WordWindow> {
    let cf = CharacteristicCf::new(cf.head.clone(), cf.period.clone())?;
    if !cf.is_irrational() {
        let slope = cf.slope()?;
        return lower_cutting_word(&slope, Rational::from_integer(0), &IntervalSpec::positive(), Some(n));
    }
    let mut older = vec![Letter::A];
    let mut current = vec![Letter::B];
    let mut i = 1;
    while current.len() < n || i == 1 {
        let mut next = Vec::new();
        for _ in 0..cf.coefficient(i).expect("infinite expansion") {
            next.extend_from_slice(&current);
        }
        next.extend_from_slice(&older);
        older = std::mem::replace(&mut current, next);
        i += 1;
    }
    current.truncate(n);
    Ok(WordWindow::new(BinaryWord::new(current), true, false))
}

/// The characteristic word as a cutting line of the same slope.
pub fn characteristic_as_cutting_line(cf: &CharacteristicCf) -> Result<InfiniteWordSpec> {
    InfiniteWordSpec::cutting_line(cf.slope()?, Rational::from_integer(0), IntervalSpec::positive(), Convention::Lower)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChristoffelWord {
    pub word: BinaryWord,
    pub slope: SlopeSpec,
}

/// `b · r(p/q, 0, (0, q)) · a`.
pub fn christoffel(p: u64, q: u64) -> Result<ChristoffelWord> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let slope = SlopeSpec::rational(p as i64, q as i64)?;
    let domain =
        IntervalSpec::new(Some(Rational::from_integer(0)), true, Some(Rational::from_integer(q as i64)), true)?;
    let interior = lower_cutting_word(&slope, Rational::from_integer(0), &domain, None)?;
    let word = BinaryWord::new(vec![Letter::B]).concat(&interior.word).concat(&[Letter::A]);
    Ok(ChristoffelWord { word, slope })
}

/// `Some((p, q))` when `w` is the Christoffel word of slope `p/q`.
pub fn is_christoffel(w: &[Letter]) -> Option<(u64, u64)> {
    let q = crate::word::hamming_weight(w) as u64;
    let p = w.len() as u64 - q;
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return None;
    }
    (christoffel(p, q).ok()?.word.letters() == w).then_some((p, q))
}

/// A word `x` such that both `axa` and `bxb` occur, if any.
///
/// The shortest such `x` is returned; among those, the one whose pair of
/// occurrences is complete earliest when reading from the left.
pub fn sturmian_window_witness(window: &WordWindow) -> Option<BinaryWord> {
    let w = window.word.letters();
    for n in 0..w.len().saturating_sub(1) {
        let mut first_a = std::collections::HashMap::new();
        let mut first_b = std::collections::HashMap::new();
        for i in 0..w.len() - n - 1 {
            let (l, r) = (w[i], w[i + n + 1]);
            if l != r {
                continue;
            }
            let map = if l == Letter::A { &mut first_a } else { &mut first_b };
            map.entry(&w[i + 1..i + n + 1]).or_insert(i);
        }
        let best = first_a.iter().filter_map(|(x, &i)| first_b.get(x).map(|&j| ((i.max(j), i.min(j)), *x))).min();
        if let Some((_, x)) = best {
            return Some(BinaryWord::from(x));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SturmianVerdict {
    Sturmian,
    NotSturmian(String),
}

impl SturmianVerdict {
    pub fn is_sturmian(&self) -> bool {
        matches!(self, SturmianVerdict::Sturmian)
    }
}

/// Decides Sturmian-ness from the description alone.
pub fn is_sturmian_spec(spec: &InfiniteWordSpec) -> SturmianVerdict {
    use InfiniteWordSpec::*;
    match spec {
        EventuallyPeriodicRight { .. } | EventuallyPeriodicLeft { .. } | BiPeriodic { .. } => {
            SturmianVerdict::NotSturmian("periodic".into())
        }
        CuttingLine { slope, .. } if slope.is_rational() => SturmianVerdict::NotSturmian("rational slope".into()),
        CuttingLine { .. } => SturmianVerdict::Sturmian,
        CharacteristicCf { cf_period, .. } if cf_period.is_empty() => {
            SturmianVerdict::NotSturmian("rational slope".into())
        }
        CharacteristicCf { .. } => SturmianVerdict::Sturmian,
    }
}

/// Whether `spec` denotes a characteristic word of irrational slope.
///
/// Cutting lines qualify over `(0, ∞)` with an integer intercept, since
/// shifting the line by a whole unit leaves the word unchanged.
pub fn is_characteristic_spec(spec: &InfiniteWordSpec) -> bool {
    match spec {
        InfiniteWordSpec::CharacteristicCf { cf_period, .. } => !cf_period.is_empty(),
        InfiniteWordSpec::CuttingLine { slope, intercept, domain, .. } => {
            !slope.is_rational() && intercept.is_integer() && *domain == IntervalSpec::positive()
        }
        _ => false,
    }
}

/// Christoffel words from the first `k` convergents of an irrational slope.
/// Their interiors are prefixes of the characteristic word.
pub fn christoffel_prefix_tower(cf: &CharacteristicCf, k: usize) -> Result<Vec<ChristoffelWord>> {
    if !cf.is_irrational() {
        return Err(Error::InvalidSpec(format!("{cf} is rational")));
    }
    cf.convergents(k).into_iter().map(|(p, q)| christoffel(p as u64, q as u64)).collect()
}

/// Letters `offset .. offset + length` of a cutting-line or characteristic spec.
pub(crate) fn spec_letters(spec: &InfiniteWordSpec, offset: i64, length: usize) -> Result<Vec<Letter>> {
    let end = offset + length as i64;
    match spec {
        InfiniteWordSpec::CharacteristicCf { .. } => {
            let cf = spec.as_cf().expect("characteristic spec");
            let prefix = characteristic_word(&cf, end as usize)?;
            Ok(prefix.word[offset as usize..].to_vec())
        }
        InfiniteWordSpec::CuttingLine { slope, intercept, domain, convention } => {
            let c = *intercept;
            match (domain.lo, domain.hi) {
                (Some(lo), None) => {
                    let (letters, _) = forward_letters(slope, c, (lo, domain.lo_open), None, *convention, end as usize);
                    Ok(letters[offset as usize..].to_vec())
                }
                (None, Some(hi)) => {
                    let letters = backward_letters(slope, c, (hi, domain.hi_open), *convention, (-offset) as usize);
                    Ok(letters[..length].to_vec())
                }
                (None, None) => {
                    let zero = Rational::from_integer(0);
                    let mut out = Vec::with_capacity(length);
                    if offset < 0 {
                        let left = backward_letters(slope, c, (zero, false), *convention, (-offset) as usize);
                        out.extend_from_slice(&left[..length.min(left.len())]);
                    }
                    if end > 0 {
                        let (right, _) = forward_letters(slope, c, (zero, true), None, *convention, end as usize);
                        out.extend_from_slice(&right[offset.max(0) as usize..]);
                    }
                    Ok(out)
                }
                (Some(_), Some(_)) => Err(Error::InvalidSpec("bounded cutting line".into())),
            }
        }
        _ => Err(Error::InvalidSpec("not a cutting-line spec".into())),
    }
}

/// An equivalent eventually periodic description, when the slope is rational.
pub(crate) fn eventually_periodic_form(spec: &InfiniteWordSpec) -> Result<Option<InfiniteWordSpec>> {
    match spec {
        InfiniteWordSpec::CharacteristicCf { cf_period, .. } if cf_period.is_empty() => {
            let cf = spec.as_cf().expect("characteristic spec");
            eventually_periodic_form(&characteristic_as_cutting_line(&cf)?)
        }
        InfiniteWordSpec::CuttingLine {
            slope: slope @ SlopeSpec::Rational { q, .. },
            intercept,
            domain,
            convention,
        } => {
            let c = *intercept;
            let int = Rational::from_integer;
            let piece = |lo: Rational, lo_open: bool, hi: Rational, hi_open: bool| {
                BinaryWord::new(
                    forward_letters(slope, c, (lo, lo_open), Some((hi, hi_open)), *convention, usize::MAX).0,
                )
            };
            let form = match (domain.lo, domain.hi) {
                (Some(lo), None) => {
                    let n = lo.floor().to_integer() + 1;
                    InfiniteWordSpec::EventuallyPeriodicRight {
                        head: piece(lo, domain.lo_open, int(n), false),
                        period: piece(int(n), true, int(n + q), false),
                    }
                }
                (None, Some(hi)) => {
                    let n = hi.ceil().to_integer() - 1;
                    InfiniteWordSpec::EventuallyPeriodicLeft {
                        period: piece(int(n - q), true, int(n), false),
                        tail: piece(int(n), true, hi, domain.hi_open),
                    }
                }
                _ => InfiniteWordSpec::BiPeriodic { period: piece(int(0), true, int(*q), false) },
            };
            form.canonical().map(Some)
        }
        _ => Ok(None),
    }
}
