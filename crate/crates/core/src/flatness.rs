//! Decision procedures for the act classes: condition (P), condition (E),
//! strongly flat, locally cyclic and projective, plus the inductive solver
//! for chains of (P)-equations and the P-/E-unitary tests for monomorphisms.
//!
//! Every procedure is an exhaustive scan and reports the first failing
//! configuration in canonical (lexicographic) order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::{decompose_indecomposable, ActMap, FiniteAct};
use crate::error::{Error, Result};
use crate::hom::find_iso;

/// Outcome of a decision procedure: either it holds or a witness refutes it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassId {
    /// Projective.
    Pr,
    /// Strongly flat: (P) and (E).
    SF,
    /// Condition (P).
    CP,
    /// Condition (E).
    E,
    /// Locally cyclic.
    LC,
}

impl ClassId {
    pub const ALL: [ClassId; 5] = [ClassId::Pr, ClassId::SF, ClassId::CP, ClassId::E, ClassId::LC];
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassId::Pr => "Pr",
            ClassId::SF => "SF",
            ClassId::CP => "CP",
            ClassId::E => "E",
            ClassId::LC => "LC",
        })
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Pr" | "PR" | "pr" => Ok(ClassId::Pr),
            "SF" | "sf" => Ok(ClassId::SF),
            "CP" | "cp" | "P" => Ok(ClassId::CP),
            "E" | "e" => Ok(ClassId::E),
            "LC" | "lc" => Ok(ClassId::LC),
            _ => Err(Error::Parse(format!("unknown class `{s}`"))),
        }
    }
}

/// `a.u = a2.u2` with no `z, s, s2` such that `a = z.s`, `a2 = z.s2`,
/// `s u = s2 u2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PFailure {
    pub a: usize,
    pub a2: usize,
    pub u: usize,
    pub u2: usize,
}

/// `a.u = a.u2` with no `z, s` such that `a = z.s`, `s u = s u2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EFailure {
    pub a: usize,
    pub u: usize,
    pub u2: usize,
}

/// Interpolant for a (P)-equation `a.u = a2.u2`: `a = z.s`, `a2 = z.s2`,
/// `s u = s2 u2`. Least `(z, s, s2)` lexicographically.
pub fn p_witness(act: &FiniteAct, a: usize, a2: usize, u: usize, u2: usize) -> Option<(usize, usize, usize)> {
    let m = act.monoid();
    for z in act.elements() {
        for s in m.elements() {
            if act.act(z, s) != a {
                continue;
            }
            let su = m.mul(s, u);
            for s2 in m.elements() {
                if act.act(z, s2) == a2 && m.mul(s2, u2) == su {
                    return Some((z, s, s2));
                }
            }
        }
    }
    None
}

pub fn satisfies_p(act: &FiniteAct) -> Verdict<PFailure> {
    let m = act.monoid();
    for a in act.elements() {
        for a2 in act.elements() {
            for u in m.elements() {
                let au = act.act(a, u);
                for u2 in m.elements() {
                    if act.act(a2, u2) == au && p_witness(act, a, a2, u, u2).is_none() {
                        return Verdict::Fails(PFailure { a, a2, u, u2 });
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// Interpolant for an (E)-equation `a.u = a.u2`.
pub fn e_witness(act: &FiniteAct, a: usize, u: usize, u2: usize) -> Option<(usize, usize)> {
    let m = act.monoid();
    act.elements()
        .flat_map(|z| m.elements().map(move |s| (z, s)))
        .find(|&(z, s)| act.act(z, s) == a && m.mul(s, u) == m.mul(s, u2))
}

pub fn satisfies_e(act: &FiniteAct) -> Verdict<EFailure> {
    let m = act.monoid();
    for a in act.elements() {
        for u in m.elements() {
            let au = act.act(a, u);
            for u2 in m.elements() {
                if act.act(a, u2) == au && e_witness(act, a, u, u2).is_none() {
                    return Verdict::Fails(EFailure { a, u, u2 });
                }
            }
        }
    }
    Verdict::Holds
}

/// First pair `(x, y)` lying in no common cyclic subact.
pub fn locally_cyclic(act: &FiniteAct) -> Verdict<(usize, usize)> {
    let orbits: Vec<_> = act.elements().map(|z| act.orbit(z)).collect();
    for x in act.elements() {
        for y in act.elements() {
            if !orbits.iter().any(|o| o.contains(x) && o.contains(y)) {
                return Verdict::Fails((x, y));
            }
        }
    }
    Verdict::Holds
}

/// The cyclic right ideals `eS` for idempotent `e`, as acts, keyed by `e`.
pub fn idempotent_ideals(monoid: &Arc<crate::FiniteMonoid>) -> Vec<(usize, Arc<FiniteAct>)> {
    let regular = Arc::new(FiniteAct::regular(monoid));
    monoid
        .idempotents()
        .elements
        .into_iter()
        .map(|e| {
            let elems: Vec<usize> = regular.orbit(e).ones().collect();
            let (sub, _) = regular.subact(&elems).expect("eS is a subact");
            (e, sub)
        })
        .collect()
}

/// Each component must be isomorphic to some `eS`; the first component
/// that is not is reported.
pub fn projective(act: &Arc<FiniteAct>) -> Verdict<Vec<usize>> {
    let ideals = idempotent_ideals(act.monoid());
    for comp in decompose_indecomposable(act).components {
        let (sub, _) = act.subact(&comp).expect("components are subacts");
        if !ideals.iter().any(|(_, ideal)| find_iso(&sub, ideal).is_some()) {
            return Verdict::Fails(comp);
        }
    }
    Verdict::Holds
}

/// Why an act is outside a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassWitness {
    ConditionP(PFailure),
    ConditionE(EFailure),
    NotLocallyCyclic { x: usize, y: usize },
    NonProjectiveComponent { elements: Vec<usize> },
}

pub fn check_class(act: &Arc<FiniteAct>, class: ClassId) -> Verdict<ClassWitness> {
    match class {
        ClassId::CP => satisfies_p(act).map(ClassWitness::ConditionP),
        ClassId::E => satisfies_e(act).map(ClassWitness::ConditionE),
        ClassId::SF => match satisfies_p(act) {
            Verdict::Fails(w) => Verdict::Fails(ClassWitness::ConditionP(w)),
            Verdict::Holds => satisfies_e(act).map(ClassWitness::ConditionE),
        },
        ClassId::LC => locally_cyclic(act).map(|(x, y)| ClassWitness::NotLocallyCyclic { x, y }),
        ClassId::Pr => projective(act).map(|elements| ClassWitness::NonProjectiveComponent { elements }),
    }
}

pub fn in_class(act: &Arc<FiniteAct>, class: ClassId) -> bool {
    check_class(act, class).holds()
}

/// A chain of equations `xs[i].ss[i] = xs[i+1].ts[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSystem {
    pub xs: Vec<usize>,
    pub ss: Vec<usize>,
    pub ts: Vec<usize>,
}

impl PSystem {
    pub fn validate(&self, act: &FiniteAct) -> Result<()> {
        let n = self.xs.len();
        if n == 0 || self.ss.len() + 1 != n || self.ts.len() + 1 != n {
            return Err(Error::PreconditionViolated("system lengths inconsistent".into()));
        }
        let k = act.monoid().size();
        if self.xs.iter().any(|&x| x >= act.size()) || self.ss.iter().chain(&self.ts).any(|&s| s >= k) {
            return Err(Error::PreconditionViolated("index out of range".into()));
        }
        for i in 0..n - 1 {
            if act.act(self.xs[i], self.ss[i]) != act.act(self.xs[i + 1], self.ts[i]) {
                return Err(Error::PreconditionViolated(format!("equation {i} does not hold")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PSolution {
    pub y: usize,
    pub us: Vec<usize>,
}

impl PSolution {
    /// `xs[i] = y.us[i]` and `us[i] ss[i] = us[i+1] ts[i]`.
    pub fn solves(&self, act: &FiniteAct, sys: &PSystem) -> bool {
        let m = act.monoid();
        self.us.len() == sys.xs.len()
            && sys.xs.iter().zip(&self.us).all(|(&x, &u)| act.act(self.y, u) == x)
            && (0..sys.ss.len()).all(|i| m.mul(self.us[i], sys.ss[i]) == m.mul(self.us[i + 1], sys.ts[i]))
    }
}

/// Finds one `y` over which the whole chain factors, merging one equation at
/// a time: a (P)-interpolant for the new equation is glued to the current
/// solution through a second interpolant for `y.u_i = y'.u'_i`.
pub fn solve_p_system(act: &FiniteAct, sys: &PSystem) -> Result<PSolution> {
    sys.validate(act)?;
    if let Verdict::Fails(w) = satisfies_p(act) {
        return Err(Error::PreconditionViolated(format!("act fails condition (P) at {w:?}")));
    }
    let m = act.monoid();
    let mut y = sys.xs[0];
    let mut us = vec![m.identity()];
    for i in 0..sys.ss.len() {
        let (xi, xn) = (sys.xs[i], sys.xs[i + 1]);
        let (y2, u2, v2) = p_witness(act, xi, xn, sys.ss[i], sys.ts[i]).expect("condition (P) holds");
        // y.us[i] = xi = y2.u2
        let (z, p, q) = p_witness(act, y, y2, us[i], u2).expect("condition (P) holds");
        us.iter_mut().for_each(|u| *u = m.mul(p, *u));
        us.push(m.mul(q, v2));
        y = z;
    }
    let sol = PSolution { y, us };
    debug_assert!(sol.solves(act, sys));
    Ok(sol)
}

/// `y, y2` outside the image with `y.s`, `y2.t` inside but different.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitaryFailure {
    pub y: usize,
    pub y2: usize,
    pub s: usize,
    pub t: usize,
}

fn image_mask(f: &ActMap) -> Result<Vec<bool>> {
    if let Some((a, b)) = f.injectivity_witness() {
        return Err(Error::NotMono(a, b));
    }
    let mut mask = vec![false; f.codomain().size()];
    for &v in f.values() {
        mask[v] = true;
    }
    Ok(mask)
}

pub fn is_p_unitary(f: &ActMap) -> Result<Verdict<UnitaryFailure>> {
    let inside = image_mask(f)?;
    let y_act = f.codomain();
    let m = y_act.monoid();
    let outside: Vec<usize> = y_act.elements().filter(|&y| !inside[y]).collect();
    for &y in &outside {
        for &y2 in &outside {
            for s in m.elements() {
                let ys = y_act.act(y, s);
                if !inside[ys] {
                    continue;
                }
                for t in m.elements() {
                    let yt = y_act.act(y2, t);
                    if inside[yt] && ys != yt {
                        return Ok(Verdict::Fails(UnitaryFailure { y, y2, s, t }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

pub fn is_e_unitary(f: &ActMap) -> Result<Verdict<UnitaryFailure>> {
    let inside = image_mask(f)?;
    let y_act = f.codomain();
    let m = y_act.monoid();
    for y in y_act.elements().filter(|&y| !inside[y]) {
        for s in m.elements() {
            let ys = y_act.act(y, s);
            if !inside[ys] {
                continue;
            }
            for t in m.elements() {
                let yt = y_act.act(y, t);
                if inside[yt] && ys != yt {
                    return Ok(Verdict::Fails(UnitaryFailure { y, y2: y, s, t }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}
