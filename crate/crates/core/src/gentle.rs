//! Gentle algebras given by a quiver and quadratic monomial relations, and
//! their strings and bands.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// The JSON layout of an algebra file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

/// One failed gentleness condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub clause: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.clause)
    }
}

/// An arrow or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowStep {
    pub arrow: usize,
    pub direct: bool,
}

impl ArrowStep {
    pub fn direct(arrow: usize) -> Self {
        ArrowStep { arrow, direct: true }
    }

    pub fn inverse(arrow: usize) -> Self {
        ArrowStep { arrow, direct: false }
    }

    pub fn inverted(self) -> Self {
        ArrowStep { arrow: self.arrow, direct: !self.direct }
    }
}

/// A string: a lazy path at a vertex or a non-empty walk of arrow steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StringWord {
    Lazy(usize),
    Steps(Vec<ArrowStep>),
}

impl StringWord {
    pub fn len(&self) -> usize {
        match self {
            StringWord::Lazy(_) => 0,
            StringWord::Steps(s) => s.len(),
        }
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self, StringWord::Lazy(_))
    }

    pub fn steps(&self) -> &[ArrowStep] {
        match self {
            StringWord::Lazy(_) => &[],
            StringWord::Steps(s) => s,
        }
    }

    /// `w⁻¹`: reversed, every sign flipped.
    pub fn inverse(&self) -> StringWord {
        match self {
            StringWord::Lazy(v) => StringWord::Lazy(*v),
            StringWord::Steps(s) => StringWord::Steps(s.iter().rev().map(|st| st.inverted()).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringViolation {
    /// Index of the first step of the offending pair.
    pub index: usize,
    pub clause: &'static str,
}

impl fmt::Display for StringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "steps {} and {}: {}", self.index, self.index + 1, self.clause)
    }
}

/// A band, stored as its canonical rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Band {
    pub representative: StringWord,
}

/// `kQ/I` with `Q` finite and `I` generated by paths of length two.
#[derive(Clone, Debug)]
pub struct GentleAlgebra {
    quiver: Quiver,
    relations: BTreeSet<(usize, usize)>,
    source: Vec<usize>,
    target: Vec<usize>,
    arrow_index: HashMap<String, usize>,
    vertex_index: HashMap<String, usize>,
}

impl PartialEq for GentleAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations
    }
}

/// Checks the quiver's well-formedness and the gentleness conditions.
///
/// Structural defects (unknown names, duplicates) are errors; failed
/// conditions are returned as data.
pub fn validate_gentle(quiver: &Quiver, relations: &[[String; 2]]) -> Result<Vec<Violation>> {
    let raw = RawAlgebra::new(quiver, relations)?;
    Ok(raw.violations())
}

struct RawAlgebra<'a> {
    quiver: &'a Quiver,
    source: Vec<usize>,
    target: Vec<usize>,
    relations: BTreeSet<(usize, usize)>,
    arrow_index: HashMap<String, usize>,
    vertex_index: HashMap<String, usize>,
}

impl<'a> RawAlgebra<'a> {
    fn new(quiver: &'a Quiver, relations: &[[String; 2]]) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in quiver.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut arrow_index = HashMap::new();
        let (mut source, mut target) = (Vec::new(), Vec::new());
        for (i, a) in quiver.arrows.iter().enumerate() {
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{}`", a.name)));
            }
            let lookup = |v: &String| vertex_index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.clone()));
            source.push(lookup(&a.source)?);
            target.push(lookup(&a.target)?);
        }
        let mut rels = BTreeSet::new();
        for [x, y] in relations {
            let lookup = |n: &String| arrow_index.get(n).copied().ok_or_else(|| Error::UnknownArrow(n.clone()));
            rels.insert((lookup(x)?, lookup(y)?));
        }
        Ok(RawAlgebra { quiver, source, target, relations: rels, arrow_index, vertex_index })
    }

    fn name(&self, arrow: usize) -> &str {
        &self.quiver.arrows[arrow].name
    }

    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n_arrows = self.quiver.arrows.len();
        let mut push = |location: String, clause: &str| out.push(Violation { location, clause: clause.to_string() });

        for &(x, y) in &self.relations {
            if self.target[x] != self.source[y] {
                push(
                    format!("relation {}{}", self.name(x), self.name(y)),
                    "relation is not a composable path of length two",
                );
            }
        }
        for (v, name) in self.quiver.vertices.iter().enumerate() {
            let incoming = (0..n_arrows).filter(|&a| self.target[a] == v).count();
            let outgoing = (0..n_arrows).filter(|&a| self.source[a] == v).count();
            if incoming > 2 {
                push(format!("vertex {name}"), "more than two incoming arrows");
            }
            if outgoing > 2 {
                push(format!("vertex {name}"), "more than two outgoing arrows");
            }
        }
        for a in 0..n_arrows {
            let after: Vec<usize> = (0..n_arrows).filter(|&b| self.source[b] == self.target[a]).collect();
            let before: Vec<usize> = (0..n_arrows).filter(|&b| self.target[b] == self.source[a]).collect();
            let in_i = |x: usize, y: usize| self.relations.contains(&(x, y));
            let loc = format!("arrow {}", self.name(a));
            if after.iter().filter(|&&b| in_i(a, b)).count() > 1 {
                push(loc.clone(), "more than one arrow β with αβ ∈ I");
            }
            if after.iter().filter(|&&b| !in_i(a, b)).count() > 1 {
                push(loc.clone(), "more than one arrow β with αβ ∉ I");
            }
            if before.iter().filter(|&&b| in_i(b, a)).count() > 1 {
                push(loc.clone(), "more than one arrow γ with γα ∈ I");
            }
            if before.iter().filter(|&&b| !in_i(b, a)).count() > 1 {
                push(loc.clone(), "more than one arrow γ with γα ∉ I");
            }
            if self.source[a] == self.target[a] && !in_i(a, a) {
                push(loc.clone(), "loop α without α² ∈ I");
            }
        }
        if let Some(cycle) = self.free_cycle() {
            let names: Vec<&str> = cycle.iter().map(|&a| self.name(a)).collect();
            push(format!("cycle {}", names.join(" ")), "oriented cycle avoiding I (infinite dimension)");
        }
        if !self.connected() {
            push("quiver".into(), "underlying graph is not connected");
        }
        out
    }

    /// An oriented cycle of arrows none of whose consecutive pairs lie in `I`.
    fn free_cycle(&self) -> Option<Vec<usize>> {
        let n = self.quiver.arrows.len();
        let next: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n).filter(|&b| self.source[b] == self.target[a] && !self.relations.contains(&(a, b))).collect()
            })
            .collect();
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; n];
        let mut stack = Vec::new();
        fn dfs(a: usize, next: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
            state[a] = 1;
            stack.push(a);
            for &b in &next[a] {
                if state[b] == 1 {
                    let start = stack.iter().position(|&x| x == b).unwrap();
                    return Some(stack[start..].to_vec());
                }
                if state[b] == 0 {
                    if let Some(c) = dfs(b, next, state, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
            state[a] = 2;
            None
        }
        (0..n).find_map(|a| if state[a] == 0 { dfs(a, &next, &mut state, &mut stack) } else { None })
    }

    fn connected(&self) -> bool {
        let n = self.quiver.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut todo = vec![0];
        seen[0] = true;
        while let Some(v) = todo.pop() {
            for a in 0..self.quiver.arrows.len() {
                for (x, y) in [(self.source[a], self.target[a]), (self.target[a], self.source[a])] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        todo.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl GentleAlgebra {
    /// Builds the algebra, rejecting it unless every gentleness condition holds.
    pub fn new(quiver: Quiver, relations: &[[String; 2]]) -> Result<Self> {
        let raw = RawAlgebra::new(&quiver, relations)?;
        let violations = raw.violations();
        if !violations.is_empty() {
            let text: Vec<String> = violations.iter().map(Violation::to_string).collect();
            return Err(Error::NotGentle(text.join("; ")));
        }
        let RawAlgebra { source, target, relations, arrow_index, vertex_index, .. } = raw;
        Ok(GentleAlgebra { quiver, relations, source, target, arrow_index, vertex_index })
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let quiver = Quiver { vertices: file.vertices.clone(), arrows: file.arrows.clone() };
        GentleAlgebra::new(quiver, &file.relations)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        GentleAlgebra::from_file(&file)
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            vertices: self.quiver.vertices.clone(),
            arrows: self.quiver.arrows.clone(),
            relations: self
                .relations
                .iter()
                .map(|&(x, y)| [self.arrow_name(x).to_string(), self.arrow_name(y).to_string()])
                .collect(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn arrow_name(&self, arrow: usize) -> &str {
        &self.quiver.arrows[arrow].name
    }

    pub fn vertex_name(&self, vertex: usize) -> &str {
        &self.quiver.vertices[vertex]
    }

    pub fn arrow(&self, name: &str) -> Result<usize> {
        self.arrow_index.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_source(&self, arrow: usize) -> usize {
        self.source[arrow]
    }

    pub fn arrow_target(&self, arrow: usize) -> usize {
        self.target[arrow]
    }

    pub fn is_relation(&self, first: usize, second: usize) -> bool {
        self.relations.contains(&(first, second))
    }

    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.relations.iter().copied()
    }

    pub fn step_source(&self, step: ArrowStep) -> usize {
        if step.direct {
            self.source[step.arrow]
        } else {
            self.target[step.arrow]
        }
    }

    pub fn step_target(&self, step: ArrowStep) -> usize {
        if step.direct {
            self.target[step.arrow]
        } else {
            self.source[step.arrow]
        }
    }

    /// Why `next` may not follow `prev`, if it may not.
    fn pair_violation(&self, prev: ArrowStep, next: ArrowStep) -> Option<&'static str> {
        if self.step_target(prev) != self.step_source(next) {
            return Some("P1: steps are not composable");
        }
        if prev.arrow == next.arrow && prev.direct != next.direct {
            return Some("P1: step is followed by its own inverse");
        }
        match (prev.direct, next.direct) {
            (true, true) if self.is_relation(prev.arrow, next.arrow) => Some("P2: the word contains a relation"),
            (false, false) if self.is_relation(next.arrow, prev.arrow) => {
                Some("P2: the inverse word contains a relation")
            }
            _ => None,
        }
    }

    pub fn can_follow(&self, prev: ArrowStep, next: ArrowStep) -> bool {
        self.pair_violation(prev, next).is_none()
    }

    /// Accepts a non-empty step sequence iff it satisfies P1 and P2.
    pub fn is_string(&self, steps: &[ArrowStep]) -> std::result::Result<StringWord, StringViolation> {
        if steps.is_empty() {
            return Err(StringViolation { index: 0, clause: "empty walk (use a lazy string)" });
        }
        for (i, pair) in steps.windows(2).enumerate() {
            if let Some(clause) = self.pair_violation(pair[0], pair[1]) {
                return Err(StringViolation { index: i, clause });
            }
        }
        Ok(StringWord::Steps(steps.to_vec()))
    }

    pub fn lazy(&self, vertex: &str) -> Result<StringWord> {
        Ok(StringWord::Lazy(self.vertex(vertex)?))
    }

    pub fn start(&self, w: &StringWord) -> usize {
        match w {
            StringWord::Lazy(v) => *v,
            StringWord::Steps(s) => self.step_source(s[0]),
        }
    }

    pub fn end(&self, w: &StringWord) -> usize {
        match w {
            StringWord::Lazy(v) => *v,
            StringWord::Steps(s) => self.step_target(*s.last().unwrap()),
        }
    }

    /// The vertices visited by the walk, `len + 1` of them.
    pub fn walk(&self, w: &StringWord) -> Vec<usize> {
        let mut out = vec![self.start(w)];
        out.extend(w.steps().iter().map(|&s| self.step_target(s)));
        out
    }

    /// `uv`, when it is a string.
    pub fn concat(&self, u: &StringWord, v: &StringWord) -> Option<StringWord> {
        if self.end(u) != self.start(v) {
            return None;
        }
        match (u, v) {
            (StringWord::Lazy(_), _) => Some(v.clone()),
            (_, StringWord::Lazy(_)) => Some(u.clone()),
            (StringWord::Steps(a), StringWord::Steps(b)) => {
                if !self.can_follow(*a.last().unwrap(), b[0]) {
                    return None;
                }
                let mut steps = a.clone();
                steps.extend_from_slice(b);
                Some(StringWord::Steps(steps))
            }
        }
    }

    /// The steps `range` of `w`, or the lazy string at the right vertex.
    pub fn substring(&self, w: &StringWord, start: usize, len: usize) -> StringWord {
        if len == 0 {
            StringWord::Lazy(self.walk(w)[start])
        } else {
            StringWord::Steps(w.steps()[start..start + len].to_vec())
        }
    }

    pub fn parse_string(&self, text: &str) -> Result<StringWord> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let [single] = tokens.as_slice() {
            if let Some(v) = single.strip_prefix("e:") {
                return self.lazy(v);
            }
        }
        if tokens.is_empty() {
            return Err(Error::Parse("empty string literal".into()));
        }
        let steps = tokens
            .iter()
            .map(|t| match t.strip_suffix('-') {
                Some(name) => self.arrow(name).map(ArrowStep::inverse),
                None => self.arrow(t).map(ArrowStep::direct),
            })
            .collect::<Result<Vec<_>>>()?;
        self.is_string(&steps).map_err(|v| Error::NotAString(format!("`{text}`: {v}")))
    }

    pub fn format_step(&self, step: ArrowStep) -> String {
        let name = self.arrow_name(step.arrow);
        if step.direct {
            name.to_string()
        } else {
            format!("{name}-")
        }
    }

    pub fn format_string(&self, w: &StringWord) -> String {
        match w {
            StringWord::Lazy(v) => format!("e:{}", self.vertex_name(*v)),
            StringWord::Steps(s) => s.iter().map(|&st| self.format_step(st)).collect::<Vec<_>>().join(" "),
        }
    }

    fn step_key(&self, step: ArrowStep) -> (&str, bool) {
        (self.arrow_name(step.arrow), !step.direct)
    }

    /// All strings of length at most `max_len`: by length, then start vertex,
    /// then steps in arrow order with direct before inverse.
    pub fn enumerate_strings(&self, max_len: usize) -> Vec<StringWord> {
        let mut out: Vec<StringWord> = (0..self.vertex_count()).map(StringWord::Lazy).collect();
        let mut layer: Vec<Vec<ArrowStep>> = Vec::new();
        for len in 1..=max_len {
            let next: Vec<Vec<ArrowStep>> = if len == 1 {
                (0..self.arrow_count())
                    .flat_map(|a| [vec![ArrowStep::direct(a)], vec![ArrowStep::inverse(a)]])
                    .collect()
            } else {
                layer
                    .iter()
                    .flat_map(|w| {
                        let last = *w.last().unwrap();
                        (0..self.arrow_count())
                            .flat_map(|a| [ArrowStep::direct(a), ArrowStep::inverse(a)])
                            .filter(move |&s| self.can_follow(last, s))
                            .map(move |s| {
                                let mut v = w.clone();
                                v.push(s);
                                v
                            })
                    })
                    .collect()
            };
            if next.is_empty() {
                break;
            }
            let mut sorted: Vec<StringWord> = next.iter().cloned().map(StringWord::Steps).collect();
            sorted.sort_by_key(|w| (self.start(w), w.steps().iter().map(|s| (s.arrow, !s.direct)).collect::<Vec<_>>()));
            out.extend(sorted);
            layer = next;
        }
        out
    }

    /// A cap on string length past which no new strings appear when the
    /// algebra has no band: `2·|Q₁|·|Q₀|`.
    pub fn no_band_length_cap(&self) -> usize {
        2 * self.arrow_count() * self.vertex_count()
    }

    /// Canonical rotation of a cyclic string: the least among all rotations of
    /// it and of its inverse, comparing arrow names, then `+` before `-`.
    pub fn canonical_cyclic(&self, steps: &[ArrowStep]) -> Vec<ArrowStep> {
        let inv: Vec<ArrowStep> = steps.iter().rev().map(|s| s.inverted()).collect();
        let mut best: Option<Vec<ArrowStep>> = None;
        for base in [steps, &inv[..]] {
            for r in 0..base.len() {
                let mut cand = base.to_vec();
                cand.rotate_left(r);
                let better = match &best {
                    None => true,
                    Some(b) => cand.iter().map(|&s| self.step_key(s)).lt(b.iter().map(|&s| self.step_key(s))),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Whether the closed walk `steps` is a band.
    pub fn is_band(&self, steps: &[ArrowStep]) -> bool {
        let n = steps.len();
        if n == 0 || self.is_string(steps).is_err() {
            return false;
        }
        if self.step_target(steps[n - 1]) != self.step_source(steps[0]) {
            return false;
        }
        if !self.can_follow(steps[n - 1], steps[0]) {
            return false;
        }
        let primitive = (1..n).filter(|d| n % d == 0).all(|d| (d..n).any(|i| steps[i] != steps[i - d]));
        let mixed = steps.iter().any(|s| s.direct) && steps.iter().any(|s| !s.direct);
        primitive && mixed
    }

    pub fn band(&self, w: &StringWord) -> Result<Band> {
        if !self.is_band(w.steps()) {
            return Err(Error::NotABand(self.format_string(w)));
        }
        Ok(Band { representative: StringWord::Steps(self.canonical_cyclic(w.steps())) })
    }

    /// One canonical representative per band of length at most `max_len`,
    /// ordered by length then canonical key.
    pub fn enumerate_bands(&self, max_len: usize) -> Vec<Band> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for w in self.enumerate_strings(max_len) {
            if w.is_lazy() || !self.is_band(w.steps()) {
                continue;
            }
            let canon = self.canonical_cyclic(w.steps());
            if seen.insert(canon.clone()) {
                out.push(Band { representative: StringWord::Steps(canon) });
            }
        }
        out.sort_by(|x, y| {
            let kx: Vec<_> = x.representative.steps().iter().map(|&s| self.step_key(s)).collect();
            let ky: Vec<_> = y.representative.steps().iter().map(|&s| self.step_key(s)).collect();
            (kx.len(), kx).cmp(&(ky.len(), ky))
        });
        out
    }

    /// All non-lazy strings made of direct steps only, each with a flag that
    /// is set when it extends on neither side.
    pub fn direct_strings(&self) -> Vec<(StringWord, bool)> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<ArrowStep>> = (0..self.arrow_count()).map(|a| vec![ArrowStep::direct(a)]).collect();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for w in &layer {
                let last = *w.last().unwrap();
                for a in 0..self.arrow_count() {
                    if self.can_follow(last, ArrowStep::direct(a)) {
                        let mut v = w.clone();
                        v.push(ArrowStep::direct(a));
                        next.push(v);
                    }
                }
            }
            out.extend(layer);
            layer = next;
        }
        out.into_iter()
            .map(|steps| {
                let first = steps[0];
                let last = *steps.last().unwrap();
                let extends = (0..self.arrow_count()).any(|a| {
                    self.can_follow(last, ArrowStep::direct(a)) || self.can_follow(ArrowStep::direct(a), first)
                });
                (StringWord::Steps(steps), !extends)
            })
            .collect()
    }

    /// Inverses of [`Self::direct_strings`].
    pub fn inverse_strings(&self) -> Vec<(StringWord, bool)> {
        self.direct_strings().into_iter().map(|(w, m)| (w.inverse(), m)).collect()
    }

    /// Number of visits of the walk of `w` to `vertex`.
    pub fn x_count(&self, w: &StringWord, vertex: usize) -> usize {
        self.walk(w).into_iter().filter(|&v| v == vertex).count()
    }
}
