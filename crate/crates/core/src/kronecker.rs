//! The double-Kronecker algebra, strings written in its bands `a` and `b`,
//! and the classification of infinite string bricks.
//!
//! Quiver `1 ⇉ 2 ⇉ 3` with arrows `α1, α2: 1 → 2` and `β1, β2: 2 → 3`,
//! relations `α1β1` and `α2β2`, and bands `a = α1⁻¹α2`, `b = β1β2⁻¹` at
//! vertex `2`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gentle::{ArrowStep, GentleAlgebra, StringWord};
use crate::graph_map::{self, Ends, GraphMap};
use crate::representation::band_module_end_dim;
use crate::sturmian::{is_characteristic_spec, is_christoffel, is_sturmian_spec};
use crate::word::{
    classify_periodicity, transpose_spec, BinaryWord, InfiniteWordSpec, Letter, Periodicity, Side, WordWindow,
};

/// Two bands at a common vertex, used to write strings as words in `a`, `b`.
pub trait AbEncoding {
    fn algebra(&self) -> &GentleAlgebra;
    fn base_vertex(&self) -> usize;
    fn band_a(&self) -> &StringWord;
    fn band_b(&self) -> &StringWord;
}

#[derive(Clone, Debug)]
pub struct DKAlgebra {
    algebra: GentleAlgebra,
    a: StringWord,
    b: StringWord,
    two: usize,
}

impl DKAlgebra {
    pub fn algebra(&self) -> &GentleAlgebra {
        &self.algebra
    }

    pub fn a(&self) -> &StringWord {
        &self.a
    }

    pub fn b(&self) -> &StringWord {
        &self.b
    }

    fn step(&self, name: &str, direct: bool) -> ArrowStep {
        ArrowStep { arrow: self.algebra.arrow(name).expect("double-Kronecker arrow"), direct }
    }
}

impl AbEncoding for DKAlgebra {
    fn algebra(&self) -> &GentleAlgebra {
        &self.algebra
    }

    fn base_vertex(&self) -> usize {
        self.two
    }

    fn band_a(&self) -> &StringWord {
        &self.a
    }

    fn band_b(&self) -> &StringWord {
        &self.b
    }
}

pub fn double_kronecker() -> DKAlgebra {
    let algebra = GentleAlgebra::from_json(include_str!("../fixtures/double_kronecker.json"))
        .expect("double-Kronecker fixture is gentle");
    let a = algebra.parse_string("α1- α2").expect("a is a string");
    let b = algebra.parse_string("β1 β2-").expect("b is a string");
    let two = algebra.vertex("2").expect("vertex 2");
    DKAlgebra { algebra, a, b, two }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Letters `a`, `b`.
    #[default]
    Forward,
    /// Letters `a⁻¹`, `b⁻¹`.
    Inverted,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverted,
            Direction::Inverted => Direction::Forward,
        }
    }
}

/// A word in `a, b` or in `a⁻¹, b⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ABWord {
    pub word: BinaryWord,
    pub direction: Direction,
}

impl ABWord {
    pub fn forward(word: BinaryWord) -> Self {
        ABWord { word, direction: Direction::Forward }
    }

    pub fn inverted(word: BinaryWord) -> Self {
        ABWord { word, direction: Direction::Inverted }
    }
}

impl fmt::Display for ABWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Forward => write!(f, "{}", self.word),
            Direction::Inverted => {
                let parts: Vec<String> = self.word.iter().map(|l| format!("{}-", l.as_char())).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

fn letter_steps(enc: &impl AbEncoding, letter: Letter, direction: Direction) -> StringWord {
    let band = match letter {
        Letter::A => enc.band_a(),
        Letter::B => enc.band_b(),
    };
    match direction {
        Direction::Forward => band.clone(),
        Direction::Inverted => band.inverse(),
    }
}

fn encode_letters(enc: &impl AbEncoding, letters: &[Letter], direction: Direction) -> Vec<ArrowStep> {
    letters.iter().flat_map(|&l| letter_steps(enc, l, direction).steps().to_vec()).collect()
}

/// Letter-by-letter substitution; the empty word is the lazy string at the
/// base vertex.
pub fn encode_ab(enc: &impl AbEncoding, w: &ABWord) -> StringWord {
    if w.word.is_empty() {
        return StringWord::Lazy(enc.base_vertex());
    }
    StringWord::Steps(encode_letters(enc, &w.word, w.direction))
}

/// Inverse of [`encode_ab`]; `None` outside `Str(a,b)` and `Str(a⁻¹,b⁻¹)`.
pub fn decode_ab(enc: &impl AbEncoding, s: &StringWord) -> Option<ABWord> {
    match s {
        StringWord::Lazy(v) => (*v == enc.base_vertex()).then(|| ABWord::forward(BinaryWord::empty())),
        StringWord::Steps(steps) => [Direction::Forward, Direction::Inverted]
            .into_iter()
            .find_map(|d| decode_in(enc, steps, d).map(|word| ABWord { word, direction: d })),
    }
}

fn decode_in(enc: &impl AbEncoding, mut steps: &[ArrowStep], direction: Direction) -> Option<BinaryWord> {
    let pieces = [Letter::A, Letter::B].map(|l| (l, letter_steps(enc, l, direction)));
    let mut out = Vec::new();
    while !steps.is_empty() {
        let (letter, piece) = pieces.iter().find(|(_, p)| steps.starts_with(p.steps()))?;
        out.push(*letter);
        steps = &steps[piece.len()..];
    }
    Some(BinaryWord::new(out))
}

/// Letters next to an occurrence of a pattern in an `a,b`-word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbShape {
    Both(Letter, Letter),
    /// At the right end of the host.
    LeftOnly(Letter),
    /// At the left end of the host.
    RightOnly(Letter),
    Bare,
}

impl AbShape {
    fn only(self, letter: Letter) -> bool {
        match self {
            AbShape::Both(l, r) => l == letter && r == letter,
            AbShape::LeftOnly(l) | AbShape::RightOnly(l) => l == letter,
            AbShape::Bare => false,
        }
    }

    /// One of `axa`, `ax`, `xa`.
    pub fn is_a_side(self) -> bool {
        self.only(Letter::A)
    }

    /// One of `bxb`, `bx`, `xb`.
    pub fn is_b_side(self) -> bool {
        self.only(Letter::B)
    }
}

impl fmt::Display for AbShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbShape::Both(l, r) => write!(f, "{}x{}", l.as_char(), r.as_char()),
            AbShape::LeftOnly(l) => write!(f, "{}x", l.as_char()),
            AbShape::RightOnly(r) => write!(f, "x{}", r.as_char()),
            AbShape::Bare => write!(f, "x"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbEnvelope {
    pub position: usize,
    pub shape: AbShape,
}

/// Shape of `host[p .. p + len]`, or `None` when it touches an open end.
fn shape_at(host: &WordWindow, p: usize, len: usize) -> Option<AbShape> {
    let n = host.word.len();
    let left = if p == 0 {
        if !host.left_closed {
            return None;
        }
        None
    } else {
        Some(host.word[p - 1])
    };
    let right = if p + len == n {
        if !host.right_closed {
            return None;
        }
        None
    } else {
        Some(host.word[p + len])
    };
    Some(match (left, right) {
        (Some(l), Some(r)) => AbShape::Both(l, r),
        (Some(l), None) => AbShape::LeftOnly(l),
        (None, Some(r)) => AbShape::RightOnly(r),
        (None, None) => AbShape::Bare,
    })
}

/// Envelope shapes of every occurrence of `pattern` in the window.
pub fn ab_envelopes(host: &WordWindow, pattern: &[Letter]) -> Vec<AbEnvelope> {
    let n = host.word.len();
    if pattern.len() > n {
        return Vec::new();
    }
    (0..=n - pattern.len())
        .filter(|&p| host.word[p..p + pattern.len()] == *pattern)
        .filter_map(|p| shape_at(host, p, pattern.len()).map(|shape| AbEnvelope { position: p, shape }))
        .collect()
}

/// Shortest pattern (then first to occur) with a qualifying a-side and
/// b-side occurrence.
fn ab_witness(
    host: &WordWindow,
    a_side: impl Fn(AbShape) -> bool,
    b_side: impl Fn(AbShape) -> bool,
) -> Option<BinaryWord> {
    let w = &host.word;
    let n = w.len();
    for len in 0..=n {
        let mut order: Vec<&[Letter]> = Vec::new();
        let mut seen: HashMap<&[Letter], (bool, bool)> = HashMap::new();
        for p in 0..=n - len {
            let x = &w[p..p + len];
            let entry = seen.entry(x).or_insert_with(|| {
                order.push(x);
                (false, false)
            });
            if let Some(shape) = shape_at(host, p, len) {
                entry.0 |= a_side(shape);
                entry.1 |= b_side(shape);
            }
        }
        if let Some(x) = order.into_iter().find(|x| seen[x] == (true, true)) {
            return Some(BinaryWord::from(x));
        }
    }
    None
}

/// A pattern with an envelope in `{axa, ax, xa}` and one in `{bxb, bx, xb}`.
pub fn strong_inner_witness_ab(host: &WordWindow) -> Option<BinaryWord> {
    ab_witness(host, AbShape::is_a_side, AbShape::is_b_side)
}

/// A pattern occurring both as `axa` and as `bxb`.
pub fn inner_witness_ab(host: &WordWindow) -> Option<BinaryWord> {
    ab_witness(host, |s| s == AbShape::Both(Letter::A, Letter::A), |s| s == AbShape::Both(Letter::B, Letter::B))
}

/// Shortest `s` such that `s·follow` starts the window and `s·follow'`
/// occurs in it, `follow'` being the other letter.
pub fn prefix_condition_witness(window: &WordWindow, follow: Letter) -> Option<BinaryWord> {
    let w = &window.word;
    (0..w.len()).filter(|&len| w[len] == follow).find_map(|len| {
        let mut target = w[..len].to_vec();
        target.push(follow.other());
        crate::word::occurrences(&target, w).first().map(|_| BinaryWord::from(&w[..len]))
    })
}

/// The single arrow before the forced letter in start cases `1` and `3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DkPrefix {
    #[default]
    None,
    /// `α2 · b · …`
    Alpha2,
    /// `α1 · b⁻¹ · …`
    Alpha1,
    /// `β2⁻¹ · a · …`
    Beta2Inv,
    /// `β1⁻¹ · a⁻¹ · …`
    Beta1Inv,
}

impl DkPrefix {
    fn parts(self) -> Option<(&'static str, bool, Letter, Direction)> {
        match self {
            DkPrefix::None => None,
            DkPrefix::Alpha2 => Some(("α2", true, Letter::B, Direction::Forward)),
            DkPrefix::Alpha1 => Some(("α1", true, Letter::B, Direction::Inverted)),
            DkPrefix::Beta2Inv => Some(("β2", false, Letter::A, Direction::Forward)),
            DkPrefix::Beta1Inv => Some(("β1", false, Letter::A, Direction::Inverted)),
        }
    }

    /// Letter forced right after the arrow.
    pub fn forced_letter(self) -> Option<Letter> {
        self.parts().map(|p| p.2)
    }

    /// Direction the body must be read in.
    pub fn direction(self) -> Option<Direction> {
        self.parts().map(|p| p.3)
    }

    /// Start vertex of the string.
    fn start_case(self) -> u8 {
        match self {
            DkPrefix::None => 2,
            DkPrefix::Alpha2 | DkPrefix::Alpha1 => 1,
            DkPrefix::Beta2Inv | DkPrefix::Beta1Inv => 3,
        }
    }
}

/// An infinite string over the double-Kronecker algebra.
///
/// Right-infinite: `prefix · forced · enc(body)`. Left-infinite: the inverse
/// of the right-infinite string with the same prefix, transposed body and
/// flipped direction, i.e. `enc(body · forced) · prefix⁻¹`. Double-infinite:
/// `enc(body)` with no prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfiniteDKSpec {
    pub side: Side,
    #[serde(default)]
    pub prefix: DkPrefix,
    pub body: InfiniteWordSpec,
    #[serde(default)]
    pub direction: Direction,
}

impl InfiniteDKSpec {
    pub fn right(prefix: DkPrefix, body: InfiniteWordSpec, direction: Direction) -> Self {
        InfiniteDKSpec { side: Side::Right, prefix, body, direction }
    }

    pub fn left(prefix: DkPrefix, body: InfiniteWordSpec, direction: Direction) -> Self {
        InfiniteDKSpec { side: Side::Left, prefix, body, direction }
    }

    pub fn double(body: InfiniteWordSpec, direction: Direction) -> Self {
        InfiniteDKSpec { side: Side::Double, prefix: DkPrefix::None, body, direction }
    }
}

impl fmt::Display for InfiniteDKSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {:?} prefix {:?}: {}", self.side, self.direction, self.prefix, self.body)
    }
}

/// A right-infinite string `prefix · forced · enc(body)`.
#[derive(Clone, Debug)]
struct RightForm {
    prefix: DkPrefix,
    body: InfiniteWordSpec,
    direction: Direction,
}

enum Normal {
    Right(RightForm),
    Double(InfiniteWordSpec, Direction),
}

fn normalize(spec: &InfiniteDKSpec) -> Result<Normal> {
    let body = spec.body.clone().canonical()?;
    if body.side() != spec.side {
        return Err(Error::MalformedDkSpec(format!("body is {:?}-infinite but side is {:?}", body.side(), spec.side)));
    }
    let (body, direction) = match spec.side {
        Side::Double => {
            if spec.prefix != DkPrefix::None {
                return Err(Error::MalformedDkSpec("double-infinite strings take no prefix".into()));
            }
            return Ok(Normal::Double(body, spec.direction));
        }
        Side::Right => (body, spec.direction),
        Side::Left => (transpose_spec(&body)?, spec.direction.flip()),
    };
    if let Some(needed) = spec.prefix.direction() {
        if needed != direction {
            return Err(Error::MalformedDkSpec(format!(
                "prefix {:?} needs the body read {:?} from the prefix",
                spec.prefix, needed
            )));
        }
    }
    Ok(Normal::Right(RightForm { prefix: spec.prefix, body, direction }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotBrickReason {
    Periodic,
    EventuallyPeriodic,
    NotCharacteristic,
    NotSturmian,
}

impl NotBrickReason {
    pub fn is_periodic(self) -> bool {
        matches!(self, NotBrickReason::Periodic | NotBrickReason::EventuallyPeriodic)
    }
}

impl fmt::Display for NotBrickReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotBrickReason::Periodic => "not aperiodic: periodic",
            NotBrickReason::EventuallyPeriodic => "not aperiodic: eventually periodic",
            NotBrickReason::NotCharacteristic => "not characteristic",
            NotBrickReason::NotSturmian => "not Sturmian",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DkVerdict {
    /// Case `1`–`5` by start vertex and side; left-infinite strings also
    /// record the case of their inverse.
    Brick {
        case: u8,
        inverse_case: Option<u8>,
    },
    NotBrick {
        reason: NotBrickReason,
    },
}

impl DkVerdict {
    pub fn is_brick(&self) -> bool {
        matches!(self, DkVerdict::Brick { .. })
    }
}

impl fmt::Display for DkVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DkVerdict::Brick { case, inverse_case: None } => write!(f, "brick (case {case})"),
            DkVerdict::Brick { case, inverse_case: Some(c) } => write!(f, "brick (case {case}, inverse in case {c})"),
            DkVerdict::NotBrick { reason } => write!(f, "not a brick ({reason})"),
        }
    }
}

/// Decides brick-ness from the description alone.
pub fn classify_infinite(spec: &InfiniteDKSpec) -> Result<DkVerdict> {
    match normalize(spec)? {
        Normal::Double(body, _) => {
            if is_sturmian_spec(&body).is_sturmian() {
                return Ok(DkVerdict::Brick { case: 5, inverse_case: None });
            }
            let reason = match classify_periodicity(&body)? {
                Periodicity::Aperiodic => NotBrickReason::NotSturmian,
                _ => NotBrickReason::Periodic,
            };
            Ok(DkVerdict::NotBrick { reason })
        }
        Normal::Right(form) => {
            let start = form.prefix.start_case();
            if is_characteristic_spec(&form.body) {
                return Ok(match spec.side {
                    Side::Left => DkVerdict::Brick { case: 4, inverse_case: Some(start) },
                    _ => DkVerdict::Brick { case: start, inverse_case: None },
                });
            }
            let reason = match classify_periodicity(&form.body)? {
                Periodicity::Aperiodic => NotBrickReason::NotCharacteristic,
                Periodicity::Periodic if form.prefix == DkPrefix::None => NotBrickReason::Periodic,
                _ => NotBrickReason::EventuallyPeriodic,
            };
            Ok(DkVerdict::NotBrick { reason })
        }
    }
}

fn prefix_steps(dk: &DKAlgebra, prefix: DkPrefix) -> Vec<ArrowStep> {
    match prefix.parts() {
        None => Vec::new(),
        Some((name, direct, letter, direction)) => {
            let mut steps = vec![dk.step(name, direct)];
            steps.extend(encode_letters(dk, &[letter], direction));
            steps
        }
    }
}

fn steps_word(dk: &DKAlgebra, steps: Vec<ArrowStep>) -> StringWord {
    if steps.is_empty() {
        StringWord::Lazy(dk.two)
    } else {
        StringWord::Steps(steps)
    }
}

/// The letters after the forced one, `0 .. letters` (or centred for
/// double-infinite bodies), as an `a,b` window.
fn body_window(body: &InfiniteWordSpec, letters: usize) -> Result<WordWindow> {
    match body.side() {
        Side::Double => body.window(-((letters / 2) as i64), letters),
        _ => body.window(0, letters),
    }
}

/// The encoded string of the first `letters` body letters, with its ends.
pub fn encoded_window(spec: &InfiniteDKSpec, letters: usize) -> Result<(StringWord, Ends)> {
    let dk = double_kronecker();
    match normalize(spec)? {
        Normal::Double(body, direction) => {
            let w = body_window(&body, letters)?;
            let steps = encode_letters(&dk, &w.word, direction);
            Ok((steps_word(&dk, steps), Ends { left_open: true, right_open: true }))
        }
        Normal::Right(form) => {
            let w = body_window(&form.body, letters)?;
            let mut steps = prefix_steps(&dk, form.prefix);
            steps.extend(encode_letters(&dk, &w.word, form.direction));
            Ok((steps_word(&dk, steps), Ends { left_open: false, right_open: true }))
        }
    }
}

/// One falsification attempt on a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCheck {
    pub name: &'static str,
    pub witness: Option<String>,
}

/// Window-level checks that a brick verdict must survive.
pub fn brick_window_checks(spec: &InfiniteDKSpec, letters: usize) -> Result<Vec<WindowCheck>> {
    let dk = double_kronecker();
    let (encoded, ends) = encoded_window(spec, letters)?;
    let generic = graph_map::strong_inner_witness(dk.algebra(), &encoded, ends).map(|m| describe_map(&dk, &m));
    let mut checks = vec![WindowCheck { name: "graph map", witness: generic }];
    let text = |x: Option<BinaryWord>| x.map(|w| format!("x = \"{w}\""));
    match normalize(spec)? {
        Normal::Double(body, _) => {
            let w = body_window(&body, letters)?;
            checks.push(WindowCheck { name: "inner (a,b)", witness: text(inner_witness_ab(&w)) });
            checks.push(WindowCheck { name: "strong inner (a,b)", witness: text(strong_inner_witness_ab(&w)) });
        }
        Normal::Right(form) => {
            let w = body_window(&form.body, letters)?;
            match form.prefix.forced_letter() {
                None => {
                    checks.push(WindowCheck { name: "strong inner (a,b)", witness: text(strong_inner_witness_ab(&w)) });
                }
                Some(forced) => {
                    let tail = WordWindow::new(BinaryWord::new(vec![forced]).concat(&w.word), true, false);
                    let follow = forced.other();
                    let extended = WordWindow::new(BinaryWord::new(vec![follow]).concat(&tail.word), true, false);
                    checks.push(WindowCheck {
                        name: "prefix condition",
                        witness: prefix_condition_witness(&tail, follow).map(|s| format!("s = \"{s}\"")),
                    });
                    checks.push(WindowCheck { name: "inner (a,b)", witness: text(inner_witness_ab(&extended)) });
                }
            }
        }
    }
    Ok(checks)
}

fn describe_map(dk: &DKAlgebra, m: &GraphMap) -> String {
    format!(
        "{} from step {} to step {}{}",
        dk.algebra().format_string(&m.pattern),
        m.source.position,
        m.target.position,
        if m.target.orientation == graph_map::Orientation::Inverted { " (inverted)" } else { "" }
    )
}

/// An endomorphism of a non-brick string module found from a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The infinite suffix starting at step `source` is a quotient, the equal
    /// suffix starting at `target` is a submodule.
    Shift { source: usize, target: usize, window: StringWord },
    /// Translation of a bi-periodic string by `shift` steps.
    Translation { shift: usize, window: StringWord },
    /// A finite graph map inside the window.
    Finite { map: GraphMap, window: StringWord, ends: Ends },
}

impl Evidence {
    pub fn window(&self) -> &StringWord {
        match self {
            Evidence::Shift { window, .. } | Evidence::Translation { window, .. } | Evidence::Finite { window, .. } => {
                window
            }
        }
    }

    /// Rechecks the evidence against its own window.
    pub fn holds(&self) -> bool {
        let dk = double_kronecker();
        match self {
            Evidence::Shift { source, target, window } => {
                let s = window.steps();
                let (lo, hi) = (*source.min(target), *source.max(target));
                let period = hi - lo;
                let agree = period > 0 && s.len() >= hi + period && (hi..s.len()).all(|i| s[i] == s[i - period]);
                let mu = |p: usize| p.checked_sub(1).map(|i| s[i]);
                let quotient = mu(*source).is_none_or(|st| !st.direct);
                let submodule = mu(*target).is_none_or(|st| st.direct);
                agree && quotient && submodule
            }
            Evidence::Translation { shift, window } => {
                let s = window.steps();
                *shift > 0 && s.len() >= 2 * shift && (*shift..s.len()).all(|i| s[i] == s[i - shift])
            }
            Evidence::Finite { map, window, ends } => {
                graph_map::graph_maps_with_ends(dk.algebra(), window, *ends, window, *ends).contains(map)
                    && !map.is_identity_of(window)
            }
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Shift { source, target, window } => write!(
                f,
                "infinite graph map: suffix at step {source} onto suffix at step {target} ({} steps checked)",
                window.len()
            ),
            Evidence::Translation { shift, window } => {
                write!(f, "translation by {shift} steps ({} steps checked)", window.len())
            }
            Evidence::Finite { map, .. } => write!(f, "finite graph map {}", describe_map(&double_kronecker(), map)),
        }
    }
}

/// Head and period letters of an eventually periodic one-sided body.
fn head_period(body: &InfiniteWordSpec) -> Result<Option<(BinaryWord, BinaryWord)>> {
    let form = match body {
        InfiniteWordSpec::EventuallyPeriodicRight { .. } | InfiniteWordSpec::BiPeriodic { .. } => Some(body.clone()),
        _ => crate::sturmian::eventually_periodic_form(body)?,
    };
    Ok(match form {
        Some(InfiniteWordSpec::EventuallyPeriodicRight { head, period }) => Some((head, period)),
        Some(InfiniteWordSpec::BiPeriodic { period }) => Some((BinaryWord::empty(), period)),
        _ => None,
    })
}

/// Number of `a,b` letters (forced letter included) in the head and period
/// of an eventually periodic string.
pub fn head_and_period_letters(spec: &InfiniteDKSpec) -> Result<Option<(usize, usize)>> {
    Ok(match normalize(spec)? {
        Normal::Double(body, _) => head_period(&body)?.map(|(_, p)| (0, p.len())),
        Normal::Right(form) => {
            head_period(&form.body)?.map(|(h, p)| (h.len() + usize::from(form.prefix != DkPrefix::None), p.len()))
        }
    })
}

/// A concrete endomorphism other than the identity, for strings that are not
/// bricks. Periodic strings get an infinite map checked on a window of
/// `head + 2·period` letters; others get the first finite graph map on windows
/// of up to `max_letters` letters.
pub fn not_brick_evidence(spec: &InfiniteDKSpec, max_letters: usize) -> Result<Option<Evidence>> {
    let dk = double_kronecker();
    match normalize(spec)? {
        Normal::Double(body, direction) => {
            if let Some((_, period)) = head_period(&body)? {
                let mut letters = period.to_vec();
                letters.extend_from_slice(&period);
                letters.extend_from_slice(&period);
                let window = steps_word(&dk, encode_letters(&dk, &letters, direction));
                let shift = encode_letters(&dk, &period, direction).len();
                return Ok(Some(Evidence::Translation { shift, window }));
            }
        }
        Normal::Right(form) => {
            if let Some((head, period)) = head_period(&form.body)? {
                let mut h = prefix_steps(&dk, form.prefix);
                h.extend(encode_letters(&dk, &head, form.direction));
                let mut p = encode_letters(&dk, &period, form.direction);
                while let (Some(x), Some(y)) = (h.last(), p.last()) {
                    if x != y {
                        break;
                    }
                    h.pop();
                    p.rotate_right(1);
                }
                let (source, target) = match h.last() {
                    None if p.last().is_some_and(|s| s.direct) => (0, p.len()),
                    None => (p.len(), 0),
                    Some(s) if !s.direct => (h.len(), h.len() + p.len()),
                    Some(_) => (h.len() + p.len(), h.len()),
                };
                let mut steps = prefix_steps(&dk, form.prefix);
                let mut letters = head.to_vec();
                for _ in 0..2 {
                    letters.extend_from_slice(&period);
                }
                steps.extend(encode_letters(&dk, &letters, form.direction));
                return Ok(Some(Evidence::Shift { source, target, window: steps_word(&dk, steps) }));
            }
        }
    }
    let mut letters = 8;
    loop {
        let letters_now = letters.min(max_letters);
        let (window, ends) = encoded_window(spec, letters_now)?;
        if let Some(map) = graph_map::strong_inner_witness(dk.algebra(), &window, ends) {
            return Ok(Some(Evidence::Finite { map, window, ends }));
        }
        if letters_now == max_letters {
            return Ok(None);
        }
        letters *= 2;
    }
}

/// Lyndon words over `a < b` of length `1 ..= max_len`, by length and then
/// lexicographically.
pub fn lyndon_words(max_len: usize) -> Vec<BinaryWord> {
    let mut out = Vec::new();
    // Duval's generation in lexicographic order
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        out.push(BinaryWord::new(w.iter().map(|&x| if x == 0 { Letter::A } else { Letter::B }).collect()));
        let n = w.len();
        while w.len() < max_len {
            let c = w[w.len() - n];
            w.push(c);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last = 1;
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

/// One band in the Christoffel sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandRecord {
    /// Least rotation of the band's cyclic `a,b`-word.
    pub word: BinaryWord,
    pub end_dim: usize,
    /// Rotation of the band equal to a Christoffel word `b·w·a`; single
    /// letters stand for the degenerate slopes `0` and `∞`.
    pub christoffel: Option<BinaryWord>,
    /// Whether `b·r·a` is Christoffel for some rotation `r` of the band.
    pub padded_christoffel: bool,
}

impl BandRecord {
    pub fn is_brick_band(&self) -> bool {
        self.end_dim == 1
    }

    pub fn consistent(&self) -> bool {
        self.is_brick_band() == self.christoffel.is_some()
    }
}

impl fmt::Display for BandRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match &self.christoffel {
            Some(c) if c.len() == 1 => format!("christoffel {c} (degenerate)"),
            Some(c) => format!("christoffel {c}"),
            None => "christoffel none".into(),
        };
        let status = if self.consistent() { "ok" } else { "MISMATCH" };
        write!(f, "band {} end {} {} {}", self.word, self.end_dim, verdict, status)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChristoffelReport {
    pub bands: Vec<BandRecord>,
}

impl ChristoffelReport {
    pub fn mismatches(&self) -> usize {
        self.bands.iter().filter(|b| !b.consistent()).count()
    }

    /// Disagreements when the band's own word is padded as `b·w·a`.
    pub fn padded_mismatches(&self) -> usize {
        self.bands.iter().filter(|b| b.is_brick_band() != b.padded_christoffel).count()
    }
}

impl fmt::Display for ChristoffelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bands {
            writeln!(f, "{b}")?;
        }
        writeln!(f, "bands {}", self.bands.len())?;
        writeln!(f, "brick bands {}", self.bands.iter().filter(|b| b.is_brick_band()).count())?;
        writeln!(f, "padded reading mismatches {}", self.padded_mismatches())?;
        write!(f, "mismatches {}", self.mismatches())
    }
}

fn rotations(w: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..w.len()).map(move |r| {
        let mut x = w.to_vec();
        x.rotate_left(r);
        x
    })
}

/// Compares End dimensions of the bands in `Str(a,b)` with Christoffel words.
pub fn verify_brick_band_christoffel(max_total: usize) -> ChristoffelReport {
    let dk = double_kronecker();
    let bands = lyndon_words(max_total)
        .into_iter()
        .map(|word| {
            let encoded = encode_ab(&dk, &ABWord::forward(word.clone()));
            let band = dk.algebra().band(&encoded).expect("words in a, b are bands");
            let end_dim = band_module_end_dim(dk.algebra(), &band);
            let christoffel = if word.len() == 1 {
                Some(word.clone())
            } else {
                rotations(&word).find(|r| is_christoffel(r).is_some()).map(BinaryWord::new)
            };
            let padded_christoffel = rotations(&word).any(|r| {
                let padded = BinaryWord::new(vec![Letter::B]).concat(&r).concat(&[Letter::A]);
                is_christoffel(&padded).is_some()
            });
            BandRecord { word, end_dim, christoffel, padded_christoffel }
        })
        .collect();
    ChristoffelReport { bands }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sturmian::{CharacteristicCf, Convention, IntervalSpec, SlopeSpec};
    use crate::word::WordWindow;

    fn ab(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn closed(s: &str) -> WordWindow {
        WordWindow::closed(ab(s))
    }

    fn golden() -> InfiniteWordSpec {
        InfiniteWordSpec::characteristic(&CharacteristicCf::golden())
    }

    #[test]
    fn algebra_and_encoding() {
        let dk = double_kronecker();
        assert_eq!((dk.algebra().vertex_count(), dk.algebra().arrow_count()), (3, 4));
        assert_eq!(dk.algebra().relations().count(), 2);
        let e = encode_ab(&dk, &ABWord::forward(ab("ab")));
        assert_eq!(dk.algebra().format_string(&e), "α1- α2 β1 β2-");
        assert_eq!(encode_ab(&dk, &ABWord::forward(BinaryWord::empty())), StringWord::Lazy(dk.two));
        let inv = encode_ab(&dk, &ABWord::inverted(ab("ab")));
        assert_eq!(dk.algebra().format_string(&inv), "α2- α1 β2 β1-");
        assert_eq!(decode_ab(&dk, &inv), Some(ABWord::inverted(ab("ab"))));
        assert_eq!(decode_ab(&dk, &e), Some(ABWord::forward(ab("ab"))));
        assert_eq!(decode_ab(&dk, &dk.algebra().parse_string("α1- α2 α1-").unwrap()), None);
        for s in ["ab", "ba"] {
            let w = encode_ab(&dk, &ABWord::forward(ab(s)));
            assert!(dk.algebra().is_string(w.steps()).is_ok());
        }
    }

    #[test]
    fn envelope_shapes() {
        let shapes = |h: &WordWindow, p: &str| -> Vec<String> {
            ab_envelopes(h, &ab(p)).iter().map(|e| e.shape.to_string()).collect()
        };
        assert_eq!(shapes(&closed("bab"), "a"), vec!["bxb"]);
        assert_eq!(shapes(&closed("ba"), ""), vec!["xb", "bxa", "ax"]);
        let g = WordWindow::new(golden().window(0, 20).unwrap().word, true, false);
        assert_eq!(ab_envelopes(&g, &ab("b"))[0], AbEnvelope { position: 0, shape: AbShape::RightOnly(Letter::A) });
    }

    #[test]
    fn ab_witnesses() {
        assert_eq!(strong_inner_witness_ab(&closed("ba")), Some(BinaryWord::empty()));
        assert_eq!(strong_inner_witness_ab(&closed("bab")), None);
        assert_eq!(strong_inner_witness_ab(&closed("aabb")), Some(BinaryWord::empty()));
        assert_eq!(inner_witness_ab(&closed("aabb")), Some(BinaryWord::empty()));
        assert_eq!(inner_witness_ab(&closed("ba")), None);
        assert_eq!(inner_witness_ab(&golden().window(0, 60).unwrap()), None);
    }

    #[test]
    fn prefix_condition() {
        assert_eq!(prefix_condition_witness(&closed("babbb"), Letter::A), Some(ab("b")));
        let g = golden().window(0, 40).unwrap().word;
        let w = WordWindow::new(ab("b").concat(&g), true, false);
        assert_eq!(prefix_condition_witness(&w, Letter::A), None);
        assert_eq!(prefix_condition_witness(&closed("bbbb"), Letter::A), None);
    }

    #[test]
    fn main_cases() {
        use Direction::*;
        let brick = |case| DkVerdict::Brick { case, inverse_case: None };
        let c = |s: &InfiniteDKSpec| classify_infinite(s).unwrap();
        assert_eq!(c(&InfiniteDKSpec::right(DkPrefix::None, golden(), Forward)), brick(2));
        assert_eq!(c(&InfiniteDKSpec::right(DkPrefix::None, golden(), Inverted)), brick(2));
        assert_eq!(c(&InfiniteDKSpec::right(DkPrefix::Alpha2, golden(), Forward)), brick(1));
        assert_eq!(c(&InfiniteDKSpec::right(DkPrefix::Alpha1, golden(), Inverted)), brick(1));
        assert_eq!(c(&InfiniteDKSpec::right(DkPrefix::Beta2Inv, golden(), Forward)), brick(3));
        assert_eq!(c(&InfiniteDKSpec::right(DkPrefix::Beta1Inv, golden(), Inverted)), brick(3));
        let line = InfiniteWordSpec::cutting_line(
            "(-1+sqrt(5))/2".parse::<SlopeSpec>().unwrap(),
            0.into(),
            IntervalSpec::real_line(),
            Convention::Lower,
        )
        .unwrap();
        assert_eq!(c(&InfiniteDKSpec::double(line, Forward)), brick(5));
        let periodic = InfiniteWordSpec::eventually_periodic_right("bb", "aab").unwrap();
        let v = c(&InfiniteDKSpec::right(DkPrefix::None, periodic, Forward));
        assert_eq!(v, DkVerdict::NotBrick { reason: NotBrickReason::EventuallyPeriodic });
        assert!(v.to_string().contains("not aperiodic"));
        assert!(matches!(
            classify_infinite(&InfiniteDKSpec::right(DkPrefix::Alpha2, golden(), Inverted)),
            Err(Error::MalformedDkSpec(_))
        ));
    }

    #[test]
    fn left_infinite_reduces_to_inverse() {
        let line = InfiniteWordSpec::cutting_line(
            "(-1+sqrt(5))/2".parse::<SlopeSpec>().unwrap(),
            0.into(),
            "(-inf,0)".parse().unwrap(),
            Convention::Upper,
        )
        .unwrap();
        let spec = InfiniteDKSpec::left(DkPrefix::None, line, Direction::Forward);
        assert_eq!(classify_infinite(&spec).unwrap(), DkVerdict::Brick { case: 4, inverse_case: Some(2) });
    }

    #[test]
    fn periodic_evidence() {
        for (head, period) in [("", "ab"), ("ab", "aab"), ("b", "a"), ("", "b"), ("aab", "ab")] {
            for prefix in [DkPrefix::None, DkPrefix::Alpha2, DkPrefix::Beta2Inv] {
                let body = InfiniteWordSpec::eventually_periodic_right(head, period).unwrap();
                let spec = InfiniteDKSpec::right(prefix, body, Direction::Forward);
                let ev = not_brick_evidence(&spec, 64).unwrap().unwrap();
                assert!(ev.holds(), "{spec}: {ev}");
            }
        }
        let bi = InfiniteDKSpec::double(InfiniteWordSpec::bi_periodic("ab").unwrap(), Direction::Forward);
        assert!(not_brick_evidence(&bi, 64).unwrap().unwrap().holds());
    }

    #[test]
    fn brick_windows_are_clean() {
        let spec = InfiniteDKSpec::right(DkPrefix::Alpha2, golden(), Direction::Forward);
        for check in brick_window_checks(&spec, 60).unwrap() {
            assert_eq!(check.witness, None, "{}", check.name);
        }
    }

    #[test]
    fn lyndon_counts() {
        let words = lyndon_words(10);
        assert_eq!(words.len(), 2 + 1 + 2 + 3 + 6 + 9 + 18 + 30 + 56 + 99);
        assert_eq!(words[0].to_string(), "a");
        assert_eq!(words[2].to_string(), "ab");
    }

    #[test]
    fn small_christoffel_sweep() {
        let report = verify_brick_band_christoffel(6);
        assert_eq!(report.mismatches(), 0, "{report}");
        let ab_band = report.bands.iter().find(|b| b.word.to_string() == "ab").unwrap();
        assert_eq!(ab_band.end_dim, 1);
        assert!(!ab_band.padded_christoffel);
    }
}
