//! Finite monoids given by multiplication tables.
//!
//! Elements are `usize` indices into the table. Every builder fixes a
//! documented element order so downstream enumerations are reproducible.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::act::FiniteAct;
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// Largest table any builder will produce.
pub const MAX_BUILDER_ORDER: usize = 256;

/// A finite monoid: an associative multiplication table with an identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    size: usize,
    identity: usize,
    table: Vec<usize>,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMonoid")
            .field("size", &self.size)
            .field("identity", &self.identity)
            .field("table", &self.rows())
            .finish()
    }
}

impl FiniteMonoid {
    /// Validates a row-major table: `table[s][t] = s*t`.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::IndexOutOfRange { index: 0, size: 0 });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), expected: n });
            }
            if let Some(&bad) = r.iter().find(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange { index: bad, size: n });
            }
        }
        if identity >= n {
            return Err(Error::IndexOutOfRange { index: identity, size: n });
        }
        Self::from_flat(n, table.into_iter().flatten().collect(), identity)
    }

    pub(crate) fn from_flat(size: usize, table: Vec<usize>, identity: usize) -> Result<Self> {
        let m = FiniteMonoid { size, identity, table };
        for s in 0..size {
            if m.mul(identity, s) != s || m.mul(s, identity) != s {
                return Err(Error::NotIdentity { identity, witness: s });
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab = m.mul(a, b);
                for c in 0..size {
                    if m.mul(ab, c) != m.mul(a, m.mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn trivial() -> Self {
        FiniteMonoid { size: 1, identity: 0, table: vec![0] }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.size + t]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// Same carrier with `s*t` replaced by `t*s`. Left acts over a monoid are
    /// right acts over its opposite.
    pub fn opposite(&self) -> FiniteMonoid {
        let n = self.size;
        let mut table = vec![0; n * n];
        for s in 0..n {
            for t in 0..n {
                table[s * n + t] = self.mul(t, s);
            }
        }
        FiniteMonoid { size: n, identity: self.identity, table }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|s| self.elements().all(|t| self.mul(s, t) == self.mul(t, s)))
    }

    /// Idempotents `e = e*e`, ascending.
    pub fn idempotents(&self) -> IdempotentSet {
        IdempotentSet { elements: self.elements().filter(|&e| self.mul(e, e) == e).collect() }
    }

    /// Elements `y` with `x y x = x` and `y x y = y`.
    pub fn inverses_of(&self, x: usize) -> Vec<usize> {
        self.elements().filter(|&y| self.mul(self.mul(x, y), x) == x && self.mul(self.mul(y, x), y) == y).collect()
    }

    /// `Ok(())` when every element has exactly one inverse; otherwise the
    /// least element with zero or several, together with its inverse count.
    pub fn is_inverse_monoid(&self) -> std::result::Result<(), (usize, usize)> {
        for x in self.elements() {
            let k = self.inverses_of(x).len();
            if k != 1 {
                return Err((x, k));
            }
        }
        Ok(())
    }

    pub fn is_group(&self) -> bool {
        self.elements()
            .all(|x| self.elements().any(|y| self.mul(x, y) == self.identity && self.mul(y, x) == self.identity))
    }

    /// Quotient by a two-sided congruence given as a class map (classes
    /// numbered by least member). Fails if the relation is not compatible on
    /// both sides.
    pub fn quotient(&self, class_of: &[usize]) -> Result<FiniteMonoid> {
        let k = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (x, &c) in class_of.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = x;
            }
        }
        let mut table = vec![0; k * k];
        for s in self.elements() {
            for t in self.elements() {
                let c = class_of[self.mul(s, t)];
                let via_reps = class_of[self.mul(rep[class_of[s]], rep[class_of[t]])];
                if c != via_reps {
                    return Err(Error::NotACongruence);
                }
                table[class_of[s] * k + class_of[t]] = c;
            }
        }
        FiniteMonoid::from_flat(k, table, class_of[self.identity])
    }

    /// `σ = {(s,t) : es = et for some idempotent e}` on the regular act.
    pub fn min_group_congruence(self: &Arc<Self>) -> Result<Congruence> {
        if let Err((x, k)) = self.is_inverse_monoid() {
            return Err(Error::NotInverse(x, k));
        }
        let idem = self.idempotents();
        let mut uf = UnionFind::new(self.size);
        for s in self.elements() {
            for t in (s + 1)..self.size {
                if idem.elements.iter().any(|&e| self.mul(e, s) == self.mul(e, t)) {
                    uf.union(s, t);
                }
            }
        }
        let regular = Arc::new(FiniteAct::regular(self));
        Congruence::from_class_map(&regular, uf.canonical_labels())
    }

    pub(crate) fn table_flat(&self) -> &[usize] {
        &self.table
    }
}

/// The idempotents of a monoid, sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSet {
    pub elements: Vec<usize>,
}

/// The named families `standard_monoid` knows how to build.
///
/// Element orders:
/// * `trivial`: `[1]`.
/// * `cyclic_group(n)`: index `k` is `g^k`; identity `0`.
/// * `semilattice_chain(n)`: index `0` is the identity `1`, index `k` is
///   `e_k`, with `e_j e_k = e_max(j,k)` (a descending chain of idempotents).
/// * `max_chain(n)`: `{0,..,n-1}` under `max`, identity `0`. Same table as
///   `semilattice_chain(n)`, named for the `(N_<n, max)` presentation.
/// * `rectangular_band_1(p,q)`: identity `0`, then `(i,j)` at `1 + i*q + j`
///   with `(i,j)(k,l) = (i,l)`.
/// * `right_zero_1(n)`: identity `0`, then `n` right zeros `xy = y`.
/// * `symmetric_inverse(n)`: partial injections of `{0..n-1}` written as
///   image tuples (`n` = undefined), lexicographic; composition left to
///   right, so `x(st) = (xs)t`.
/// * `full_transformation(n)`: all self-maps as image tuples, lexicographic,
///   composition left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builder {
    Trivial,
    CyclicGroup(usize),
    SemilatticeChain(usize),
    MaxChain(usize),
    RectangularBand1(usize, usize),
    RightZero1(usize),
    SymmetricInverse(usize),
    FullTransformation(usize),
}

impl Builder {
    pub fn from_parts(name: &str, params: &[usize]) -> Result<Self> {
        let bad = |reason: &str| Error::BadParams { builder: name.to_string(), reason: reason.to_string() };
        let one = || match params {
            [n] => Ok(*n),
            _ => Err(bad("expected one parameter")),
        };
        Ok(match name {
            "trivial" => {
                if !params.is_empty() {
                    return Err(bad("expected no parameters"));
                }
                Builder::Trivial
            }
            "cyclic_group" => Builder::CyclicGroup(one()?),
            "semilattice_chain" => Builder::SemilatticeChain(one()?),
            "max_chain" => Builder::MaxChain(one()?),
            "rectangular_band_1" => match params {
                [p, q] => Builder::RectangularBand1(*p, *q),
                _ => return Err(bad("expected two parameters")),
            },
            "right_zero_1" => Builder::RightZero1(one()?),
            "symmetric_inverse" => Builder::SymmetricInverse(one()?),
            "full_transformation" => Builder::FullTransformation(one()?),
            _ => return Err(Error::UnknownBuilder(name.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Builder::Trivial => "trivial",
            Builder::CyclicGroup(_) => "cyclic_group",
            Builder::SemilatticeChain(_) => "semilattice_chain",
            Builder::MaxChain(_) => "max_chain",
            Builder::RectangularBand1(..) => "rectangular_band_1",
            Builder::RightZero1(_) => "right_zero_1",
            Builder::SymmetricInverse(_) => "symmetric_inverse",
            Builder::FullTransformation(_) => "full_transformation",
        }
    }

    pub fn build(&self) -> Result<FiniteMonoid> {
        let too_large =
            |value: usize, max: usize| Error::ParamTooLarge { builder: self.name().to_string(), value, max };
        let positive = |n: usize| {
            if n == 0 {
                Err(Error::BadParams { builder: self.name().to_string(), reason: "parameter must be positive".into() })
            } else {
                Ok(())
            }
        };
        let from_fn = |n: usize, f: &dyn Fn(usize, usize) -> usize, id: usize| {
            let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
            FiniteMonoid::from_flat(n, table, id)
        };
        match *self {
            Builder::Trivial => Ok(FiniteMonoid::trivial()),
            Builder::CyclicGroup(n) => {
                positive(n)?;
                if n > MAX_BUILDER_ORDER {
                    return Err(too_large(n, MAX_BUILDER_ORDER));
                }
                from_fn(n, &|a, b| (a + b) % n, 0)
            }
            Builder::SemilatticeChain(n) | Builder::MaxChain(n) => {
                positive(n)?;
                if n > MAX_BUILDER_ORDER {
                    return Err(too_large(n, MAX_BUILDER_ORDER));
                }
                from_fn(n, &|a, b| a.max(b), 0)
            }
            Builder::RectangularBand1(p, q) => {
                positive(p)?;
                positive(q)?;
                if p * q + 1 > MAX_BUILDER_ORDER {
                    return Err(too_large(p * q + 1, MAX_BUILDER_ORDER));
                }
                from_fn(
                    p * q + 1,
                    &|a, b| match (a, b) {
                        (0, x) | (x, 0) => x,
                        (x, y) => {
                            let i = (x - 1) / q;
                            let l = (y - 1) % q;
                            1 + i * q + l
                        }
                    },
                    0,
                )
            }
            Builder::RightZero1(n) => {
                positive(n)?;
                if n + 1 > MAX_BUILDER_ORDER {
                    return Err(too_large(n + 1, MAX_BUILDER_ORDER));
                }
                from_fn(n + 1, &|a, b| if b == 0 { a } else { b }, 0)
            }
            Builder::SymmetricInverse(n) => {
                if n > 4 {
                    return Err(too_large(n, 4));
                }
                let maps = partial_injections(n);
                transformation_monoid(n, maps)
            }
            Builder::FullTransformation(n) => {
                if n > 4 {
                    return Err(too_large(n, 4));
                }
                let maps = all_tuples(n, n);
                transformation_monoid(n, maps)
            }
        }
    }
}

impl FromStr for Builder {
    type Err = Error;

    /// Parses `name` or `name(p1,p2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = match s.find('(') {
            Some(open) => {
                let close =
                    s.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{s}`")))?;
                let inner = &close[open + 1..];
                let params = inner
                    .split(',')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("`{p}`: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                (&s[..open], params)
            }
            None => (s, Vec::new()),
        };
        Builder::from_parts(name, &params)
    }
}

impl fmt::Display for Builder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Builder::Trivial => write!(f, "trivial"),
            Builder::CyclicGroup(n)
            | Builder::SemilatticeChain(n)
            | Builder::MaxChain(n)
            | Builder::RightZero1(n)
            | Builder::SymmetricInverse(n)
            | Builder::FullTransformation(n) => write!(f, "{}({n})", self.name()),
            Builder::RectangularBand1(p, q) => write!(f, "{}({p},{q})", self.name()),
        }
    }
}

pub fn standard_monoid(name: &str, params: &[usize]) -> Result<FiniteMonoid> {
    Builder::from_parts(name, params)?.build()
}

/// All tuples in `{0..base}^len`, lexicographic.
fn all_tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Partial injections on `n` points as image tuples, `n` meaning undefined.
fn partial_injections(n: usize) -> Vec<Vec<usize>> {
    all_tuples(n, n + 1)
        .into_iter()
        .filter(|t| {
            let mut seen = vec![false; n];
            t.iter().all(|&v| v == n || !std::mem::replace(&mut seen[v], true))
        })
        .collect()
}

/// Monoid of (partial) maps under left-to-right composition.
fn transformation_monoid(n: usize, maps: Vec<Vec<usize>>) -> Result<FiniteMonoid> {
    let index: std::collections::HashMap<&[usize], usize> =
        maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let compose =
        |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&x| if x == n { n } else { b[x] }).collect() };
    let k = maps.len();
    let mut table = vec![0; k * k];
    for (i, a) in maps.iter().enumerate() {
        for (j, b) in maps.iter().enumerate() {
            table[i * k + j] = index[compose(a, b).as_slice()];
        }
    }
    let id: Vec<usize> = (0..n).collect();
    FiniteMonoid::from_flat(k, table, index[id.as_slice()])
}
