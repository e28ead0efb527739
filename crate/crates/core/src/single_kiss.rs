//! Pairs of brick bands `a = z·a′`, `b = z·b′` at a vertex `x` with a single
//! kiss along `z`, and infinite strings written in them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gentle::{validate_gentle, AlgebraFile, ArrowStep, GentleAlgebra, Quiver, StringWord};
use crate::graph_map::{self, envelope_at, Ends, GraphMap};
use crate::kronecker::{decode_ab, encode_ab, ABWord, AbEncoding, Direction, NotBrickReason};
use crate::representation::band_module_end_dim;
use crate::sturmian::{is_characteristic_spec, is_sturmian_spec};
use crate::word::{classify_periodicity, transpose_spec, InfiniteWordSpec, Periodicity, Side, WordWindow};

/// A verified configuration; only [`verify_single_kissing`] builds one.
#[derive(Clone, Debug)]
pub struct SingleKissConfig {
    algebra: GentleAlgebra,
    x: usize,
    a: StringWord,
    b: StringWord,
    z: StringWord,
    /// `α1, α2, β1, β2`.
    boundary: [usize; 4],
}

impl SingleKissConfig {
    pub fn algebra(&self) -> &GentleAlgebra {
        &self.algebra
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn a(&self) -> &StringWord {
        &self.a
    }

    pub fn b(&self) -> &StringWord {
        &self.b
    }

    pub fn z(&self) -> &StringWord {
        &self.z
    }

    /// Arrows `α1, α2, β1, β2`.
    pub fn boundary_arrows(&self) -> [usize; 4] {
        self.boundary
    }
}

impl AbEncoding for SingleKissConfig {
    fn algebra(&self) -> &GentleAlgebra {
        &self.algebra
    }

    fn base_vertex(&self) -> usize {
        self.x
    }

    fn band_a(&self) -> &StringWord {
        &self.a
    }

    fn band_b(&self) -> &StringWord {
        &self.b
    }
}

impl fmt::Display for SingleKissConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alg = &self.algebra;
        let [a1, a2, b1, b2] = self.boundary.map(|i| alg.arrow_name(i).to_string());
        writeln!(f, "x {}", alg.vertex_name(self.x))?;
        writeln!(f, "a {}", alg.format_string(&self.a))?;
        writeln!(f, "b {}", alg.format_string(&self.b))?;
        writeln!(f, "z {}", alg.format_string(&self.z))?;
        write!(f, "alpha1 {a1}\nalpha2 {a2}\nbeta1 {b1}\nbeta2 {b2}")
    }
}

fn steps_of(steps: &[ArrowStep], vertex: usize) -> StringWord {
    if steps.is_empty() {
        StringWord::Lazy(vertex)
    } else {
        StringWord::Steps(steps.to_vec())
    }
}

/// Checks a quiver file for gentleness, parses `a` and `b` and verifies the
/// configuration.
pub fn verify_single_kissing_file(file: &AlgebraFile, a: &str, b: &str) -> Result<SingleKissConfig, Vec<String>> {
    let quiver = Quiver { vertices: file.vertices.clone(), arrows: file.arrows.clone() };
    let violations = validate_gentle(&quiver, &file.relations).map_err(|e| vec![e.to_string()])?;
    if !violations.is_empty() {
        return Err(violations.iter().map(|v| format!("not gentle: {v}")).collect());
    }
    let algebra = GentleAlgebra::from_file(file).map_err(|e| vec![e.to_string()])?;
    let a = algebra.parse_string(a).map_err(|e| vec![format!("a: {e}")])?;
    let b = algebra.parse_string(b).map_err(|e| vec![format!("b: {e}")])?;
    verify_single_kissing(&algebra, &a, &b)
}

/// Checks every hypothesis on `a` and `b`; each failure is reported.
pub fn verify_single_kissing(
    algebra: &GentleAlgebra,
    a: &StringWord,
    b: &StringWord,
) -> Result<SingleKissConfig, Vec<String>> {
    let alg = algebra;
    let mut v = Vec::new();
    for (name, w) in [("a", a), ("b", b)] {
        if !alg.is_band(w.steps()) {
            v.push(format!("{name} is not a band"));
        } else {
            let band = alg.band(w).expect("checked band");
            let d = band_module_end_dim(alg, &band);
            if d != 1 {
                v.push(format!("{name} is not a brick band (End has dimension {d})"));
            }
        }
    }
    if !v.is_empty() {
        return Err(v);
    }
    if alg.band(a).ok() == alg.band(b).ok() {
        return Err(vec!["a and b are the same band".into()]);
    }
    let x = alg.start(a);
    if alg.start(b) != x {
        v.push("a and b start at different vertices".into());
    }
    for (name, w) in [("a", a), ("b", b)] {
        if alg.x_count(w, x) != 2 {
            v.push(format!("{name} passes through {} in between", alg.vertex_name(x)));
        }
    }
    if alg.concat(a, b).is_none() {
        v.push("ab is not a string".into());
    }
    if alg.concat(b, a).is_none() {
        v.push("ba is not a string".into());
    }
    if !v.is_empty() {
        return Err(v);
    }
    let (sa, sb) = (a.steps(), b.steps());
    let k = sa.iter().zip(sb).take_while(|(p, q)| p == q).count();
    let z = steps_of(&sa[..k], x);
    let (a_rest, b_rest) = (&sa[k..], &sb[k..]);
    if a_rest.is_empty() || b_rest.is_empty() {
        return Err(vec!["one of a, b is a prefix of the other".into()]);
    }
    let ends = [
        ("α1", a_rest[0], false, "first step of a′"),
        ("α2", a_rest[a_rest.len() - 1], true, "last step of a′"),
        ("β1", b_rest[0], true, "first step of b′"),
        ("β2", b_rest[b_rest.len() - 1], false, "last step of b′"),
    ];
    for (name, step, direct, place) in ends {
        if step.direct != direct {
            let kind = if direct { "a direct arrow" } else { "an inverse arrow" };
            v.push(format!("{place} ({name}) is not {kind}"));
        }
    }
    let boundary = ends.map(|e| e.1.arrow);
    let [a1, a2, b1, b2] = boundary;
    if !alg.is_relation(a2, b2) {
        v.push("α2β2 is not a relation".into());
    }
    if !alg.is_relation(a1, b1) {
        v.push("α1β1 is not a relation".into());
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if boundary[i] == boundary[j] {
                v.push(format!("{} and {} coincide", ends[i].0, ends[j].0));
            }
        }
        let uses = sa.iter().chain(sb).filter(|s| s.arrow == boundary[i]).count();
        if uses != 1 {
            v.push(format!("{} appears {uses} times in a and b", ends[i].0));
        }
    }
    if !v.is_empty() {
        return Err(v);
    }
    let kisses = rotation_kisses(alg, a, b);
    let along_z = (0, 0, z.len());
    match kisses.as_slice() {
        [only] if *only == along_z => {}
        [_] => v.push("the only kiss from a rotation of b to a rotation of a is not along z".into()),
        [] => v.push("no kiss from a rotation of b to a rotation of a".into()),
        many => v.push(format!("{} kisses from rotations of b to rotations of a", many.len())),
    }
    if !v.is_empty() {
        return Err(v);
    }
    Ok(SingleKissConfig { algebra: alg.clone(), x, a: a.clone(), b: b.clone(), z, boundary })
}

/// Substring class up to inversion.
fn class_key(steps: &[ArrowStep], vertex: usize) -> (Vec<ArrowStep>, usize) {
    if steps.is_empty() {
        return (Vec::new(), vertex);
    }
    let inv: Vec<ArrowStep> = steps.iter().rev().map(|s| s.inverted()).collect();
    (if steps <= inv.as_slice() { steps.to_vec() } else { inv }, usize::MAX)
}

/// Kisses between substrings of `b^∞` and `a^∞` whose envelopes fit in one
/// period, as `(start mod |b|, start mod |a|, length)`.
fn rotation_kisses(alg: &GentleAlgebra, a: &StringWord, b: &StringWord) -> Vec<(usize, usize, usize)> {
    let cube = |w: &StringWord| -> StringWord {
        let s = w.steps();
        StringWord::Steps([s, s, s].concat())
    };
    let (a3, b3) = (cube(a), cube(b));
    let (wa, wb) = (alg.walk(&a3), alg.walk(&b3));
    let (la, lb) = (a.len(), b.len());
    let mut subs: HashMap<(Vec<ArrowStep>, usize), Vec<usize>> = HashMap::new();
    for q in 0..la {
        for len in 0..=la.saturating_sub(2) {
            let p = la + q;
            let env = envelope_at(&a3, p, len, graph_map::Orientation::AsIs);
            if env.mu.is_some() && env.nu.is_some() && env.submodule {
                subs.entry(class_key(&a3.steps()[p..p + len], wa[p])).or_default().push(q);
            }
        }
    }
    let mut out = Vec::new();
    for r in 0..lb {
        for len in 0..=lb.saturating_sub(2) {
            let p = lb + r;
            let env = envelope_at(&b3, p, len, graph_map::Orientation::AsIs);
            if env.mu.is_some() && env.nu.is_some() && env.quotient {
                if let Some(qs) = subs.get(&class_key(&b3.steps()[p..p + len], wb[p])) {
                    out.extend(qs.iter().map(|&q| (r, q, len)));
                }
            }
        }
    }
    out.sort();
    out
}

/// A substring of the host that is both a quotient and a submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleRole {
    pub s: StringWord,
    pub ends_with_z: bool,
    /// `s′` with `s = s′·z`, when it lies in `Str(a,b)`.
    pub residue: Option<ABWord>,
}

impl DoubleRole {
    pub fn holds(&self) -> bool {
        self.ends_with_z
            && self.residue.as_ref().is_some_and(|r| r.direction == Direction::Forward || r.word.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedSuffixReport {
    pub host: ABWord,
    pub double_roles: Vec<DoubleRole>,
}

impl SharedSuffixReport {
    pub fn violations(&self) -> usize {
        self.double_roles.iter().filter(|d| !d.holds()).count()
    }
}

/// Lists the proper substrings of `encode(host)` that occur both as a
/// quotient and as a submodule, and checks each has the form `s′·z`.
/// Occurrences touching an open end are skipped.
pub fn shared_suffix_check(config: &SingleKissConfig, host: &ABWord, ends: Ends) -> SharedSuffixReport {
    let alg = &config.algebra;
    let w = encode_ab(config, host);
    let walk = alg.walk(&w);
    let n = w.len();
    let mut roles: HashMap<StringWord, (bool, bool)> = HashMap::new();
    let mut order = Vec::new();
    for len in 0..n {
        for p in 0..=n - len {
            let env = envelope_at(&w, p, len, graph_map::Orientation::AsIs);
            let touches_open = (ends.left_open && p == 0) || (ends.right_open && p + len == n);
            if touches_open || (!env.quotient && !env.submodule) {
                continue;
            }
            let s = steps_of(&w.steps()[p..p + len], walk[p]);
            let entry = roles.entry(s.clone()).or_insert_with(|| {
                order.push(s);
                (false, false)
            });
            entry.0 |= env.quotient;
            entry.1 |= env.submodule;
        }
    }
    let zs = config.z.steps();
    let double_roles = order
        .into_iter()
        .filter(|s| roles[s] == (true, true))
        .map(|s| {
            let steps = s.steps();
            let ends_with_z = steps.ends_with(zs) && alg.end(&s) == alg.end(&config.z);
            let residue = ends_with_z
                .then(|| steps_of(&steps[..steps.len() - zs.len()], config.x))
                .and_then(|r| decode_ab(config, &r));
            DoubleRole { s, ends_with_z, residue }
        })
        .collect();
    SharedSuffixReport { host: host.clone(), double_roles }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneralVerdict {
    Brick,
    NotBrick { reason: NotBrickReason },
}

impl GeneralVerdict {
    pub fn is_brick(&self) -> bool {
        matches!(self, GeneralVerdict::Brick)
    }
}

impl fmt::Display for GeneralVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralVerdict::Brick => write!(f, "brick"),
            GeneralVerdict::NotBrick { reason } => write!(f, "not a brick ({reason})"),
        }
    }
}

/// Brick-ness of `M(w)` for an infinite `w ∈ Str(a,b)`: one-sided words must
/// be characteristic (after transposing left-infinite ones), double-infinite
/// words Sturmian.
///
/// The configuration argument certifies the hypotheses; the verdict depends
/// only on the word.
pub fn generalized_classify(_config: &SingleKissConfig, spec: &InfiniteWordSpec) -> Result<GeneralVerdict> {
    let spec = spec.clone().canonical()?;
    let periodic = |s: &InfiniteWordSpec| -> Result<NotBrickReason> {
        Ok(match classify_periodicity(s)? {
            Periodicity::Periodic => NotBrickReason::Periodic,
            Periodicity::Aperiodic => NotBrickReason::NotCharacteristic,
            _ => NotBrickReason::EventuallyPeriodic,
        })
    };
    match spec.side() {
        Side::Double => {
            if is_sturmian_spec(&spec).is_sturmian() {
                return Ok(GeneralVerdict::Brick);
            }
            let reason = match periodic(&spec)? {
                NotBrickReason::NotCharacteristic => NotBrickReason::NotSturmian,
                r => r,
            };
            Ok(GeneralVerdict::NotBrick { reason })
        }
        side => {
            let oriented = if side == Side::Left { transpose_spec(&spec)? } else { spec.clone() };
            if is_characteristic_spec(&oriented) {
                Ok(GeneralVerdict::Brick)
            } else {
                Ok(GeneralVerdict::NotBrick { reason: periodic(&oriented)? })
            }
        }
    }
}

/// Verifies the configuration first; a failure is an error.
pub fn generalized_classify_unchecked(
    algebra: &GentleAlgebra,
    a: &StringWord,
    b: &StringWord,
    spec: &InfiniteWordSpec,
) -> Result<GeneralVerdict> {
    let config = verify_single_kissing(algebra, a, b).map_err(|v| Error::UnverifiedConfig(v.join("; ")))?;
    generalized_classify(&config, spec)
}

/// First non-identity finite graph map on the encoding of an `a,b` window.
pub fn config_window_witness(config: &SingleKissConfig, window: &WordWindow) -> Option<GraphMap> {
    let w = encode_ab(config, &ABWord::forward(window.word.clone()));
    let ends = Ends { left_open: !window.left_closed, right_open: !window.right_closed };
    graph_map::strong_inner_witness(&config.algebra, &w, ends)
}
