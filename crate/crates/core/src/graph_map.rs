//! Envelopes, kisses and graph maps between string modules.
//!
//! An occurrence of a substring inside a host string is a submodule of the
//! host's module when the steps around it point inwards, and a quotient when
//! they point outwards. A graph map pairs a quotient occurrence in the source
//! with a submodule occurrence of the same string (or its inverse) in the
//! target; for finite strings these pairs form a basis of Hom.

use std::collections::HashMap;

use crate::gentle::{ArrowStep, GentleAlgebra, StringWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    AsIs,
    Inverted,
}

/// The substring of a host covering steps `position .. position + length`
/// (a lazy substring at walk vertex `position` when `length = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub position: usize,
    pub length: usize,
    pub orientation: Orientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnvelopeKind {
    Submodule,
    Quotient,
    Both,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub occurrence: Occurrence,
    /// Step just before the occurrence.
    pub mu: Option<ArrowStep>,
    /// Step just after the occurrence.
    pub nu: Option<ArrowStep>,
    pub submodule: bool,
    pub quotient: bool,
}

impl Envelope {
    pub fn kind(&self) -> EnvelopeKind {
        match (self.submodule, self.quotient) {
            (true, true) => EnvelopeKind::Both,
            (true, false) => EnvelopeKind::Submodule,
            (false, true) => EnvelopeKind::Quotient,
            (false, false) => EnvelopeKind::Neither,
        }
    }

    fn full(&self) -> bool {
        self.mu.is_some() && self.nu.is_some()
    }
}

/// Which ends of a host are open, i.e. not true ends of the underlying string.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Ends {
    pub left_open: bool,
    pub right_open: bool,
}

impl Ends {
    pub const CLOSED: Ends = Ends { left_open: false, right_open: false };
}

/// Envelope of the occurrence of `host[position .. position + length]`.
pub fn envelope_at(host: &StringWord, position: usize, length: usize, orientation: Orientation) -> Envelope {
    let steps = host.steps();
    let mu = position.checked_sub(1).map(|i| steps[i]);
    let nu = steps.get(position + length).copied();
    Envelope {
        occurrence: Occurrence { position, length, orientation },
        mu,
        nu,
        submodule: mu.is_none_or(|s| s.direct) && nu.is_none_or(|s| !s.direct),
        quotient: mu.is_none_or(|s| !s.direct) && nu.is_none_or(|s| s.direct),
    }
}

/// One envelope per as-is occurrence of `pattern` in `host`.
pub fn envelopes(algebra: &GentleAlgebra, host: &StringWord, pattern: &StringWord) -> Vec<Envelope> {
    let walk = algebra.walk(host);
    let d = host.len();
    match pattern {
        StringWord::Lazy(v) => {
            (0..=d).filter(|&p| walk[p] == *v).map(|p| envelope_at(host, p, 0, Orientation::AsIs)).collect()
        }
        StringWord::Steps(s) => {
            if s.len() > d {
                return Vec::new();
            }
            (0..=d - s.len())
                .filter(|&p| &host.steps()[p..p + s.len()] == s.as_slice())
                .map(|p| envelope_at(host, p, s.len(), Orientation::AsIs))
                .collect()
        }
    }
}

/// A graph map: a quotient occurrence in the source string and a submodule
/// occurrence of the same pattern in the target. The target orientation says
/// whether the pattern appears there inverted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphMap {
    pub pattern: StringWord,
    pub source: Occurrence,
    pub target: Occurrence,
}

impl GraphMap {
    pub fn is_identity_of(&self, w: &StringWord) -> bool {
        let whole = Occurrence { position: 0, length: w.len(), orientation: Orientation::AsIs };
        self.source == whole && self.target == whole
    }
}

/// Key identifying a substring up to inversion, plus whether the substring is
/// the stored representative or its inverse.
fn class_key(host: &StringWord, walk: &[usize], p: usize, len: usize) -> (StringWord, Orientation) {
    if len == 0 {
        return (StringWord::Lazy(walk[p]), Orientation::AsIs);
    }
    let s = &host.steps()[p..p + len];
    let inv: Vec<ArrowStep> = s.iter().rev().map(|x| x.inverted()).collect();
    if s <= inv.as_slice() {
        (StringWord::Steps(s.to_vec()), Orientation::AsIs)
    } else {
        (StringWord::Steps(inv), Orientation::Inverted)
    }
}

fn allowed(env: &Envelope, ends: Ends, host_len: usize) -> bool {
    let o = env.occurrence;
    !(ends.left_open && o.position == 0) && !(ends.right_open && o.position + o.length == host_len)
}

/// Submodule occurrences of `v` grouped by substring class.
fn submodule_index(
    algebra: &GentleAlgebra,
    v: &StringWord,
    ends: Ends,
    full_only: bool,
) -> HashMap<(StringWord, usize), Vec<(usize, Orientation)>> {
    let walk = algebra.walk(v);
    let d = v.len();
    let mut map: HashMap<_, Vec<_>> = HashMap::new();
    for len in 0..=d {
        for p in 0..=d - len {
            let env = envelope_at(v, p, len, Orientation::AsIs);
            if !env.submodule || !allowed(&env, ends, d) || (full_only && !env.full()) {
                continue;
            }
            let (key, o) = class_key(v, &walk, p, len);
            map.entry((key, len)).or_default().push((p, o));
        }
    }
    map
}

fn maps_between(
    algebra: &GentleAlgebra,
    u: &StringWord,
    u_ends: Ends,
    v: &StringWord,
    v_ends: Ends,
    full_only: bool,
) -> Vec<GraphMap> {
    let index = submodule_index(algebra, v, v_ends, full_only);
    let walk = algebra.walk(u);
    let d = u.len();
    let mut out = Vec::new();
    for len in 0..=d {
        for p in 0..=d - len {
            let env = envelope_at(u, p, len, Orientation::AsIs);
            if !env.quotient || !allowed(&env, u_ends, d) || (full_only && !env.full()) {
                continue;
            }
            let (key, o) = class_key(u, &walk, p, len);
            let Some(targets) = index.get(&(key, len)) else { continue };
            let pattern = algebra.substring(u, p, len);
            for &(q, o2) in targets {
                let orientation = if o == o2 { Orientation::AsIs } else { Orientation::Inverted };
                out.push(GraphMap {
                    pattern: pattern.clone(),
                    source: Occurrence { position: p, length: len, orientation: Orientation::AsIs },
                    target: Occurrence { position: q, length: len, orientation },
                });
            }
        }
    }
    out.sort_by_key(|m| (m.pattern.len(), m.source, m.target));
    out
}

/// All graph maps `M(u) → M(v)`, shortest pattern first.
pub fn graph_maps(algebra: &GentleAlgebra, u: &StringWord, v: &StringWord) -> Vec<GraphMap> {
    maps_between(algebra, u, Ends::CLOSED, v, Ends::CLOSED, false)
}

/// Graph maps between windows; occurrences touching an open end are skipped.
pub fn graph_maps_with_ends(
    algebra: &GentleAlgebra,
    u: &StringWord,
    u_ends: Ends,
    v: &StringWord,
    v_ends: Ends,
) -> Vec<GraphMap> {
    maps_between(algebra, u, u_ends, v, v_ends, false)
}

/// Kisses from `w` to `v`: graph maps whose two envelopes both have letters
/// on each side.
pub fn kisses(algebra: &GentleAlgebra, w: &StringWord, v: &StringWord) -> Vec<GraphMap> {
    maps_between(algebra, w, Ends::CLOSED, v, Ends::CLOSED, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BrickVerdict {
    Brick,
    NotBrick(GraphMap),
}

impl BrickVerdict {
    pub fn is_brick(&self) -> bool {
        matches!(self, BrickVerdict::Brick)
    }
}

/// Least non-identity graph map `M(w) → M(w)` respecting open ends: shortest
/// pattern, then leftmost source, then leftmost target.
pub fn strong_inner_witness(algebra: &GentleAlgebra, w: &StringWord, ends: Ends) -> Option<GraphMap> {
    maps_between(algebra, w, ends, w, ends, false).into_iter().find(|m| !m.is_identity_of(w))
}

pub fn is_strong_inner_brick(algebra: &GentleAlgebra, w: &StringWord, ends: Ends) -> bool {
    strong_inner_witness(algebra, w, ends).is_none()
}

/// A finite string gives a brick iff its only self graph map is the identity.
pub fn is_brick_finite(algebra: &GentleAlgebra, w: &StringWord) -> BrickVerdict {
    match strong_inner_witness(algebra, w, Ends::CLOSED) {
        None => BrickVerdict::Brick,
        Some(m) => BrickVerdict::NotBrick(m),
    }
}

/// No self-kiss.
pub fn is_inner_brick(algebra: &GentleAlgebra, w: &StringWord) -> bool {
    kisses(algebra, w, w).is_empty()
}
