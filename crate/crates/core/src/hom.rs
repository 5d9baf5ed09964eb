//! Enumeration of equivariant maps.
//!
//! A map out of `X` is fixed by where it sends a minimal generating set, so
//! the search branches only on generator images and propagates
//! `f(g.s) = f(g).s` for everything else. Output is lexicographic in the
//! generator-image tuple.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::act::{decompose_indecomposable, ActMap, FiniteAct};
use crate::error::{Error, Result};

/// Default node budget for one hom search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Node budget, overridable through `ACTKIT_BUDGET`.
pub fn search_budget() -> u64 {
    std::env::var("ACTKIT_BUDGET").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Least element of every strongly connected class of the reachability
/// preorder `x -> x.s` that no outside element reaches.
pub fn generators(act: &FiniteAct) -> Vec<usize> {
    let orbits: Vec<_> = act.elements().map(|x| act.orbit(x)).collect();
    act.elements()
        .filter(|&x| {
            act.elements().all(|y| {
                let y_reaches_x = orbits[y].contains(x);
                let x_reaches_y = orbits[x].contains(y);
                // no outside element reaches x, and x is least in its class
                !y_reaches_x || (x_reaches_y && y >= x)
            })
        })
        .collect()
}

type Allowed<'a> = &'a (dyn Fn(usize, usize) -> bool + Sync);

/// Restrictions on a hom search.
#[derive(Clone, Copy)]
pub struct HomQuery<'a> {
    /// Only maps with `allowed(x, f(x))` for every `x`.
    pub allowed: Option<Allowed<'a>>,
    /// Only injective maps.
    pub injective: bool,
    pub budget: u64,
}

impl Default for HomQuery<'_> {
    fn default() -> Self {
        HomQuery { allowed: None, injective: false, budget: search_budget() }
    }
}

impl<'a> HomQuery<'a> {
    pub fn allowed(f: Allowed<'a>) -> Self {
        HomQuery { allowed: Some(f), ..Default::default() }
    }
}

struct Search<'q, 'v> {
    src: &'q FiniteAct,
    dst: &'q FiniteAct,
    gens: Vec<usize>,
    query: HomQuery<'q>,
    values: Vec<usize>,
    used: Vec<usize>,
    nodes: u64,
    visit: &'v mut dyn FnMut(&[usize]) -> ControlFlow<()>,
}

const UNSET: usize = usize::MAX;

impl Search<'_, '_> {
    fn run(&mut self, depth: usize) -> Result<ControlFlow<()>> {
        if depth == self.gens.len() {
            return Ok((self.visit)(&self.values));
        }
        let g = self.gens[depth];
        for a in self.dst.elements() {
            self.nodes += 1;
            if self.nodes > self.query.budget {
                return Err(Error::SearchBudgetExceeded(self.query.budget));
            }
            let mut trail = Vec::new();
            let ok = self.assign(g, a, &mut trail);
            if ok && self.run(depth + 1)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
            for x in trail {
                if self.query.injective {
                    self.used[self.values[x]] = UNSET;
                }
                self.values[x] = UNSET;
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Sets `f(g.s) = a.s` for all `s`; false on conflict. Newly set
    /// elements are pushed to `trail` either way.
    fn assign(&mut self, g: usize, a: usize, trail: &mut Vec<usize>) -> bool {
        for s in self.src.monoid().elements() {
            let (x, y) = (self.src.act(g, s), self.dst.act(a, s));
            match self.values[x] {
                UNSET => {
                    if let Some(allowed) = self.query.allowed {
                        if !allowed(x, y) {
                            return false;
                        }
                    }
                    if self.query.injective {
                        if self.used[y] != UNSET {
                            return false;
                        }
                        self.used[y] = x;
                    }
                    self.values[x] = y;
                    trail.push(x);
                }
                v if v != y => return false,
                _ => {}
            }
        }
        true
    }
}

/// Calls `visit` on the values of every map `src -> dst` matching `query`,
/// in canonical order, until it breaks.
pub fn for_each_hom(
    src: &FiniteAct,
    dst: &FiniteAct,
    query: HomQuery<'_>,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    if !src.same_monoid(dst) {
        return Err(Error::MixedMonoids);
    }
    if query.injective && src.size() > dst.size() {
        return Ok(());
    }
    let mut search = Search {
        src,
        dst,
        gens: generators(src),
        query,
        values: vec![UNSET; src.size()],
        used: vec![UNSET; if query.injective { dst.size() } else { 0 }],
        nodes: 0,
        visit,
    };
    let _ = search.run(0)?;
    Ok(())
}

pub fn homs_matching(x: &Arc<FiniteAct>, a: &Arc<FiniteAct>, query: HomQuery<'_>) -> Result<Vec<ActMap>> {
    let mut out = Vec::new();
    for_each_hom(x, a, query, &mut |v| {
        out.push(ActMap::new_unchecked(x, a, v.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn first_hom_matching(x: &Arc<FiniteAct>, a: &Arc<FiniteAct>, query: HomQuery<'_>) -> Result<Option<ActMap>> {
    let mut out = None;
    for_each_hom(x, a, query, &mut |v| {
        out = Some(ActMap::new_unchecked(x, a, v.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(out)
}

/// All equivariant maps `x -> a`.
pub fn homs(x: &Arc<FiniteAct>, a: &Arc<FiniteAct>) -> Result<Vec<ActMap>> {
    homs_matching(x, a, HomQuery::default())
}

/// Per-element isomorphism invariants.
fn signatures(act: &FiniteAct) -> Vec<(usize, usize, Vec<usize>)> {
    let comps = decompose_indecomposable(act);
    let labels = comps.labels(act.size());
    act.elements()
        .map(|x| (act.orbit(x).count_ones(..), comps.components[labels[x]].len(), act.annihilator(x).ones().collect()))
        .collect()
}

fn iso_search(x: &Arc<FiniteAct>, y: &Arc<FiniteAct>, extra: &(dyn Fn(usize, usize) -> bool + Sync)) -> Option<ActMap> {
    if x.size() != y.size() || !x.same_monoid(y) || x.fixed_points().len() != y.fixed_points().len() {
        return None;
    }
    let comp_sizes = |a: &FiniteAct| {
        let mut v: Vec<usize> = decompose_indecomposable(a).components.iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    };
    if comp_sizes(x) != comp_sizes(y) {
        return None;
    }
    let (sx, sy) = (signatures(x), signatures(y));
    let allowed = |a: usize, b: usize| sx[a] == sy[b] && extra(a, b);
    let query = HomQuery { allowed: Some(&allowed), injective: true, budget: u64::MAX };
    first_hom_matching(x, y, query).ok().flatten()
}

/// The lexicographically least isomorphism `x -> y`, if any.
pub fn find_iso(x: &Arc<FiniteAct>, y: &Arc<FiniteAct>) -> Option<ActMap> {
    iso_search(x, y, &|_, _| true)
}

/// An isomorphism `h: dom(f) -> dom(g)` with `g ∘ h = f`.
pub fn find_iso_over(f: &ActMap, g: &ActMap) -> Option<ActMap> {
    if f.codomain() != g.codomain() {
        return None;
    }
    iso_search(f.domain(), g.domain(), &|a, b| f.apply(a) == g.apply(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MapProperties {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
    pub split_epi: bool,
    pub split_mono: bool,
}

/// A section `h` of `f` (`f ∘ h = id`), if `f` splits.
pub fn section(f: &ActMap) -> Result<Option<ActMap>> {
    if !f.is_epi() {
        return Ok(None);
    }
    let allowed = |y: usize, x: usize| f.apply(x) == y;
    first_hom_matching(f.codomain(), f.domain(), HomQuery::allowed(&allowed))
}

/// A retraction `r` of `f` (`r ∘ f = id`), if `f` is a split mono.
pub fn retraction(f: &ActMap) -> Result<Option<ActMap>> {
    if !f.is_mono() {
        return Ok(None);
    }
    let mut preimage = vec![UNSET; f.codomain().size()];
    for (x, &y) in f.values().iter().enumerate() {
        preimage[y] = x;
    }
    let allowed = |y: usize, x: usize| preimage[y] == UNSET || preimage[y] == x;
    first_hom_matching(f.codomain(), f.domain(), HomQuery::allowed(&allowed))
}

pub fn map_properties(f: &ActMap) -> Result<MapProperties> {
    let mono = f.is_mono();
    let epi = f.is_epi();
    Ok(MapProperties {
        mono,
        epi,
        iso: mono && epi,
        split_epi: section(f)?.is_some(),
        split_mono: retraction(f)?.is_some(),
    })
}

/// All `f: C -> C` with `g ∘ f = g`.
pub fn endos_over(g: &ActMap) -> Result<Vec<ActMap>> {
    let allowed = |x: usize, y: usize| g.apply(x) == g.apply(y);
    homs_matching(g.domain(), g.domain(), HomQuery::allowed(&allowed))
}

/// Whether some epimorphism `act -> S` onto the regular act exists.
pub fn is_generator(act: &Arc<FiniteAct>) -> Result<bool> {
    let regular = Arc::new(FiniteAct::regular(act.monoid()));
    let mut found = false;
    for_each_hom(act, &regular, HomQuery::default(), &mut |v| {
        let mut hit = vec![false; regular.size()];
        for &y in v {
            hit[y] = true;
        }
        if hit.iter().all(|&h| h) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::act::coproduct;
    use crate::monoid::{standard_monoid, FiniteMonoid};

    fn m(name: &str, n: usize) -> Arc<FiniteMonoid> {
        Arc::new(standard_monoid(name, &[n]).unwrap())
    }

    #[test]
    fn regular_act_is_free_on_one_generator() {
        let t2 = m("full_transformation", 2);
        let reg = Arc::new(FiniteAct::regular(&t2));
        assert_eq!(generators(&reg), vec![t2.identity()]);
        let hs = homs(&reg, &reg).unwrap();
        assert_eq!(hs.len(), reg.size());
        let images: Vec<usize> = hs.iter().map(|h| h.apply(t2.identity())).collect();
        assert_eq!(images, (0..reg.size()).collect::<Vec<_>>());
    }

    #[test]
    fn homs_from_theta_are_fixed_points() {
        let u = m("semilattice_chain", 3);
        let reg = Arc::new(FiniteAct::regular(&u));
        let theta = Arc::new(FiniteAct::theta(&u));
        let hs = homs(&theta, &reg).unwrap();
        assert_eq!(hs.len(), reg.fixed_points().len());
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        let theta = Arc::new(FiniteAct::theta(&z2));
        assert_eq!(homs(&reg, &theta).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let triv = Arc::new(FiniteMonoid::trivial());
        let set = Arc::new(FiniteAct::from_flat(&triv, 8, (0..8).collect()).unwrap());
        let query = HomQuery { budget: 100, ..Default::default() };
        assert_eq!(homs_matching(&set, &set, query).unwrap_err(), Error::SearchBudgetExceeded(100));
    }

    #[test]
    fn map_property_examples() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        let id = map_properties(&ActMap::identity(&reg)).unwrap();
        assert!(id.mono && id.epi && id.iso && id.split_epi && id.split_mono);
        let to_theta = map_properties(&ActMap::to_theta(&reg)).unwrap();
        assert!(to_theta.epi && !to_theta.split_epi && !to_theta.mono);

        let u = m("semilattice_chain", 2);
        let reg = Arc::new(FiniteAct::regular(&u));
        let g = ActMap::to_theta(&reg);
        let props = map_properties(&g).unwrap();
        assert!(props.epi && props.split_epi);
        assert_eq!(section(&g).unwrap().unwrap().values(), &[1]);
    }

    #[test]
    fn iso_examples() {
        let t2 = m("full_transformation", 2);
        let reg = Arc::new(FiniteAct::regular(&t2));
        assert_eq!(find_iso(&reg, &reg).unwrap(), ActMap::identity(&reg));
        let theta = Arc::new(FiniteAct::theta(&t2));
        let (tt, _) = coproduct(&[theta.clone(), theta.clone()]).unwrap();
        assert!(find_iso(&tt, &theta).is_none());
        let relabeled = Arc::new(reg.relabel(&[3, 1, 0, 2]));
        let h = find_iso(&reg, &relabeled).unwrap();
        let back = find_iso(&relabeled, &reg).unwrap();
        assert_eq!(h.then(&back).unwrap(), ActMap::identity(&reg));
    }

    #[test]
    fn endos_over_examples() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        assert_eq!(endos_over(&ActMap::identity(&reg)).unwrap().len(), 1);
        let endos = endos_over(&ActMap::to_theta(&reg)).unwrap();
        assert_eq!(endos.len(), 2);
        assert!(endos.iter().all(ActMap::is_iso));
        let theta = Arc::new(FiniteAct::theta(&z2));
        let (tt, _) = coproduct(&[theta.clone(), theta]).unwrap();
        assert_eq!(endos_over(&ActMap::to_theta(&tt)).unwrap().len(), 4);
    }

    #[test]
    fn generator_examples() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        let theta = Arc::new(FiniteAct::theta(&z2));
        assert!(is_generator(&reg).unwrap());
        assert!(!is_generator(&theta).unwrap());
        // Z2 has no fixed point, so nothing with a fixed point maps into it
        let (sum, _) = coproduct(&[reg.clone(), theta]).unwrap();
        assert!(!is_generator(&sum).unwrap());
        let (twice, _) = coproduct(&[reg.clone(), reg]).unwrap();
        assert!(is_generator(&twice).unwrap());
        let chain = m("semilattice_chain", 2);
        let (sum, _) = coproduct(&[Arc::new(FiniteAct::regular(&chain)), Arc::new(FiniteAct::theta(&chain))]).unwrap();
        assert!(is_generator(&sum).unwrap());
    }
}
