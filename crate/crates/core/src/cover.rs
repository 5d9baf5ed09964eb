//! Precovers and covers for the classes Pr, SF and CP.
//!
//! Over a finite monoid every indecomposable act in these classes is cyclic,
//! so a skeleton of indecomposable class members is a finite list of cyclic
//! acts `S/ρ` (or `eS` for Pr). A precover of `A` is the coproduct of one copy
//! of `K` for every skeleton member `K` and every map `K -> A`; any map from a
//! class member into `A` factors through it componentwise.
//!
//! A cover is a retract of every precover, so it is found by repeatedly
//! replacing the carrier with the image of a non-identity idempotent
//! endomorphism over `A` until none is left.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::{coproduct, decompose_indecomposable, is_indecomposable, ActMap, FiniteAct};
use crate::congruence::all_congruences;
use crate::corpus::acts_up_to_iso;
use crate::error::{Error, Result};
use crate::flatness::{idempotent_ideals, in_class, projective, ClassId, Verdict};
use crate::hom::{find_iso, first_hom_matching, for_each_hom, homs, HomQuery};
use crate::monoid::FiniteMonoid;

/// Pairwise non-isomorphic indecomposable members of a class.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub class: ClassId,
    pub members: Vec<Arc<FiniteAct>>,
    /// False when the member list is only known to be complete up to a size
    /// bound.
    pub complete: bool,
}

fn dedup_by_iso(acts: impl IntoIterator<Item = Arc<FiniteAct>>) -> Vec<Arc<FiniteAct>> {
    let mut out: Vec<Arc<FiniteAct>> = Vec::new();
    for a in acts {
        if !out.iter().any(|b| find_iso(&a, b).is_some()) {
            out.push(a);
        }
    }
    out
}

/// Complete skeleton for Pr, SF and CP: the cyclic acts `eS` for Pr, and the
/// quotients `S/ρ` lying in the class for SF and CP.
pub fn build_skeleton(monoid: &Arc<FiniteMonoid>, class: ClassId) -> Result<Skeleton> {
    let members = match class {
        ClassId::Pr => dedup_by_iso(idempotent_ideals(monoid).into_iter().map(|(_, a)| a)),
        ClassId::SF | ClassId::CP => {
            let regular = Arc::new(FiniteAct::regular(monoid));
            let quotients =
                all_congruences(&regular)?.into_iter().map(|rho| rho.quotient_act().0).filter(|q| in_class(q, class));
            dedup_by_iso(quotients)
        }
        ClassId::E | ClassId::LC => return Err(Error::UnsupportedClass(class.to_string())),
    };
    Ok(Skeleton { class, members, complete: true })
}

/// Indecomposable class members with at most `max_size` elements. Used for
/// classes without a completeness argument.
pub fn bounded_skeleton(monoid: &Arc<FiniteMonoid>, class: ClassId, max_size: usize) -> Result<Skeleton> {
    let mut members = Vec::new();
    for size in 1..=max_size {
        members
            .extend(acts_up_to_iso(monoid, size)?.into_iter().filter(|a| is_indecomposable(a) && in_class(a, class)));
    }
    Ok(Skeleton { class, members, complete: false })
}

/// Size bound used by [`is_precover`] and [`is_cover`] for E and LC.
pub const BOUNDED_SKELETON_SIZE: usize = 4;

fn skeleton_for(monoid: &Arc<FiniteMonoid>, class: ClassId) -> Result<Skeleton> {
    match class {
        ClassId::E | ClassId::LC => bounded_skeleton(monoid, class, BOUNDED_SKELETON_SIZE),
        _ => build_skeleton(monoid, class),
    }
}

/// `hom` from skeleton member `member` factors as `map ∘ factor`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub member: usize,
    pub hom: ActMap,
    pub factor: ActMap,
}

#[derive(Debug, Clone)]
pub struct PrecoverCertificate {
    pub skeleton: Skeleton,
    pub target: Arc<FiniteAct>,
    pub carrier: Arc<FiniteAct>,
    pub map: ActMap,
    pub factorizations: Vec<Factorization>,
}

impl PrecoverCertificate {
    /// Rechecks every recorded factorization and that every map from a
    /// skeleton member is recorded.
    pub fn validate(&self) -> Result<()> {
        for f in &self.factorizations {
            let composite = f.factor.then(&self.map)?;
            if composite.values() != f.hom.values() {
                return Err(Error::Inconsistent(format!(
                    "recorded factorization for member {} does not compose",
                    f.member
                )));
            }
        }
        let expected: usize =
            self.skeleton.members.iter().map(|k| homs(k, &self.target).map(|v| v.len())).sum::<Result<usize>>()?;
        if expected != self.factorizations.len() {
            return Err(Error::Inconsistent("certificate misses some maps".into()));
        }
        Ok(())
    }
}

fn factor_through(h: &ActMap, g: &ActMap) -> Result<Option<ActMap>> {
    let allowed = |x: usize, y: usize| g.apply(y) == h.apply(x);
    first_hom_matching(h.domain(), g.domain(), HomQuery::allowed(&allowed))
}

fn certify(skeleton: Skeleton, map: ActMap) -> Result<std::result::Result<PrecoverCertificate, (usize, ActMap)>> {
    let target = map.codomain().clone();
    let mut factorizations = Vec::new();
    for (member, k) in skeleton.members.iter().enumerate() {
        for hom in homs(k, &target)? {
            match factor_through(&hom, &map)? {
                Some(factor) => factorizations.push(Factorization { member, hom, factor }),
                None => return Ok(Err((member, hom))),
            }
        }
    }
    Ok(Ok(PrecoverCertificate { skeleton, target, carrier: map.domain().clone(), map, factorizations }))
}

/// The canonical precover: one copy of `K` per skeleton member `K` and map
/// `h: K -> A`, mapped by `h`.
pub fn build_precover(a: &Arc<FiniteAct>, class: ClassId) -> Result<PrecoverCertificate> {
    let skeleton = build_skeleton(a.monoid(), class)?;
    let mut copies = Vec::new();
    let mut maps = Vec::new();
    for (member, k) in skeleton.members.iter().enumerate() {
        for h in homs(k, a)? {
            copies.push(k.clone());
            maps.push((member, h));
        }
    }
    if copies.is_empty() {
        return Err(Error::EmptyPrecover);
    }
    let (carrier, injections) = coproduct(&copies)?;
    let mut values = vec![0; carrier.size()];
    for (inj, (_, h)) in injections.iter().zip(&maps) {
        for x in 0..h.domain().size() {
            values[inj.apply(x)] = h.apply(x);
        }
    }
    let map = ActMap::new(&carrier, a, values)?;
    let factorizations =
        injections.into_iter().zip(maps).map(|(factor, (member, hom))| Factorization { member, hom, factor }).collect();
    Ok(PrecoverCertificate { skeleton, target: a.clone(), carrier, map, factorizations })
}

/// Why a map is not a precover or not a cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverWitness {
    /// The map `hom` from skeleton member `member` does not factor.
    Unfactorable { member: usize, member_act: Vec<Vec<usize>>, hom: Vec<usize> },
    /// An endomorphism over the map that is not an automorphism.
    NonIsoEndo { endo: Vec<usize> },
}

fn check_domain(g: &ActMap, class: ClassId) -> Result<()> {
    if !in_class(g.domain(), class) {
        return Err(Error::DomainNotInClass(class.to_string()));
    }
    Ok(())
}

/// Every map from a skeleton member into the codomain factors through `g`.
/// For E and LC the skeleton is bounded by [`BOUNDED_SKELETON_SIZE`].
pub fn is_precover(g: &ActMap, class: ClassId) -> Result<Verdict<CoverWitness>> {
    check_domain(g, class)?;
    let skeleton = skeleton_for(g.domain().monoid(), class)?;
    Ok(match certify(skeleton.clone(), g.clone())? {
        Ok(_) => Verdict::Holds,
        Err((member, hom)) => Verdict::Fails(CoverWitness::Unfactorable {
            member,
            member_act: skeleton.members[member].rows(),
            hom: hom.values().to_vec(),
        }),
    })
}

/// First endomorphism `f` with `g ∘ f = g` that is not bijective, by full
/// enumeration.
pub fn non_iso_endo_over(g: &ActMap) -> Result<Option<ActMap>> {
    let allowed = |x: usize, y: usize| g.apply(x) == g.apply(y);
    let domain = g.domain();
    let mut found = None;
    for_each_hom(domain, domain, HomQuery::allowed(&allowed), &mut |v| {
        let mut hit = vec![false; v.len()];
        for &y in v {
            hit[y] = true;
        }
        if hit.iter().all(|&h| h) {
            ControlFlow::Continue(())
        } else {
            found = Some(ActMap::new_unchecked(domain, domain, v.to_vec()));
            ControlFlow::Break(())
        }
    })?;
    Ok(found)
}

pub fn is_cover(g: &ActMap, class: ClassId) -> Result<Verdict<CoverWitness>> {
    let precover = is_precover(g, class)?;
    if !precover.holds() {
        return Ok(precover);
    }
    Ok(match non_iso_endo_over(g)? {
        None => Verdict::Holds,
        Some(f) => Verdict::Fails(CoverWitness::NonIsoEndo { endo: f.values().to_vec() }),
    })
}

/// A non-bijective endomorphism over `g` that moves a single component and
/// fixes every other element. One exists whenever `g` has any non-bijective
/// endomorphism over it.
fn local_non_iso_endo(g: &ActMap) -> Result<Option<Vec<usize>>> {
    let carrier = g.domain();
    for comp in decompose_indecomposable(carrier).components {
        let (sub, inc) = carrier.subact(&comp)?;
        let restricted = inc.then(g)?;
        let allowed = |x: usize, y: usize| restricted.apply(x) == g.apply(y);
        let inside = |y: usize| comp.binary_search(&y).is_ok();
        let mut found = None;
        for_each_hom(&sub, carrier, HomQuery::allowed(&allowed), &mut |v| {
            let leaves = v.iter().any(|&y| !inside(y));
            let mut image: Vec<usize> = v.to_vec();
            image.sort_unstable();
            image.dedup();
            if leaves || image.len() < v.len() {
                found = Some(v.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if let Some(v) = found {
            let mut f: Vec<usize> = (0..carrier.size()).collect();
            for (i, &x) in comp.iter().enumerate() {
                f[x] = v[i];
            }
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn idempotent_power(f: &[usize]) -> Vec<usize> {
    let mut p = f.to_vec();
    loop {
        let pp: Vec<usize> = p.iter().map(|&x| p[x]).collect();
        if pp == p {
            return p;
        }
        p = p.iter().map(|&x| f[x]).collect();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverStats {
    pub skeleton_size: usize,
    pub precover_size: usize,
    pub reductions: usize,
    pub cover_size: usize,
}

#[derive(Debug, Clone)]
pub struct CoverResult {
    pub map: ActMap,
    pub certificate: PrecoverCertificate,
    pub stats: CoverStats,
}

/// Cut a precover down to a cover by retractions over the target.
pub fn reduce_to_cover(g: &ActMap) -> Result<(ActMap, usize)> {
    let mut current = g.clone();
    let mut steps = 0;
    while let Some(f) = local_non_iso_endo(&current)? {
        let e = idempotent_power(&f);
        let mut image = e.clone();
        image.sort_unstable();
        image.dedup();
        let (_, inc) = current.domain().subact(&image)?;
        current = inc.then(&current)?;
        steps += 1;
    }
    Ok((current, steps))
}

pub fn find_cover(a: &Arc<FiniteAct>, class: ClassId) -> Result<CoverResult> {
    let precover = build_precover(a, class)?;
    let (map, reductions) = reduce_to_cover(&precover.map)?;
    if let Verdict::Fails(w) = is_cover(&map, class)? {
        return Err(Error::CoverNotFound(format!("reduced precover is not a cover: {w:?}")));
    }
    let stats = CoverStats {
        skeleton_size: precover.skeleton.members.len(),
        precover_size: precover.carrier.size(),
        reductions,
        cover_size: map.domain().size(),
    };
    let certificate = match certify(precover.skeleton, map.clone())? {
        Ok(c) => c,
        Err(_) => return Err(Error::Inconsistent("cover lost the precover property".into())),
    };
    Ok(CoverResult { map, certificate, stats })
}

/// `g` is onto and no maximal proper subact `{y : x ∉ yS}` still maps onto
/// the codomain; every proper subact lies inside one of these.
pub fn is_projective_cover(g: &ActMap) -> Result<bool> {
    let c = g.domain();
    if !projective(c).holds() {
        return Err(Error::DomainNotProjective);
    }
    if let Some(y) = g.surjectivity_witness() {
        return Err(Error::NotEpi(y));
    }
    let orbits: Vec<_> = c.elements().map(|y| c.orbit(y)).collect();
    let target = g.codomain().size();
    for x in c.elements() {
        let mut hit = vec![false; target];
        for y in c.elements().filter(|&y| !orbits[y].contains(x)) {
            hit[g.apply(y)] = true;
        }
        if hit.iter().all(|&h| h) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::find_iso_over;
    use crate::monoid::standard_monoid;

    fn m(name: &str, n: usize) -> Arc<FiniteMonoid> {
        Arc::new(standard_monoid(name, &[n]).unwrap())
    }

    #[test]
    fn skeletons() {
        let z2 = m("cyclic_group", 2);
        let theta = Arc::new(FiniteAct::theta(&z2));
        let sf = build_skeleton(&z2, ClassId::SF).unwrap();
        assert_eq!(sf.members.len(), 1);
        assert_eq!(sf.members[0].size(), 2);
        let cp = build_skeleton(&z2, ClassId::CP).unwrap();
        assert_eq!(cp.members.len(), 2);
        assert!(cp.members.iter().any(|k| **k == *theta));
        let chain = m("semilattice_chain", 2);
        let pr = build_skeleton(&chain, ClassId::Pr).unwrap();
        let mut sizes: Vec<usize> = pr.members.iter().map(|k| k.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        assert!(matches!(build_skeleton(&z2, ClassId::E), Err(Error::UnsupportedClass(_))));
    }

    #[test]
    fn precovers_of_theta() {
        let z2 = m("cyclic_group", 2);
        let theta = Arc::new(FiniteAct::theta(&z2));
        let sf = build_precover(&theta, ClassId::SF).unwrap();
        assert_eq!(sf.carrier.size(), 2);
        sf.validate().unwrap();
        let cp = build_precover(&theta, ClassId::CP).unwrap();
        assert_eq!(cp.carrier.size(), 3);
        assert!(is_precover(&cp.map, ClassId::CP).unwrap().holds());
        assert!(!is_cover(&cp.map, ClassId::CP).unwrap().holds());

        let reg = Arc::new(FiniteAct::regular(&z2));
        let to_theta = ActMap::to_theta(&reg);
        assert!(matches!(
            is_precover(&to_theta, ClassId::CP).unwrap(),
            Verdict::Fails(CoverWitness::Unfactorable { .. })
        ));
        assert!(is_cover(&to_theta, ClassId::SF).unwrap().holds());
        let id = ActMap::identity(&theta);
        assert!(is_cover(&id, ClassId::CP).unwrap().holds());
        assert!(matches!(is_cover(&id, ClassId::SF), Err(Error::DomainNotInClass(_))));
    }

    #[test]
    fn covers_found() {
        let z2 = m("cyclic_group", 2);
        let theta = Arc::new(FiniteAct::theta(&z2));
        let sf = find_cover(&theta, ClassId::SF).unwrap();
        assert_eq!(sf.map.domain().size(), 2);
        let cp = find_cover(&theta, ClassId::CP).unwrap();
        assert_eq!(cp.map.domain().size(), 1);
        let chain = m("semilattice_chain", 2);
        let theta = Arc::new(FiniteAct::theta(&chain));
        let c = find_cover(&theta, ClassId::SF).unwrap();
        assert!(c.map.is_iso());
    }

    #[test]
    fn cover_is_independent_of_reduction_order() {
        let i2 = m("symmetric_inverse", 2);
        for a in crate::corpus::acts_up_to_iso(&i2, 2).unwrap() {
            for class in [ClassId::Pr, ClassId::SF, ClassId::CP] {
                let c = find_cover(&a, class).unwrap();
                // the whole precover, reduced from the other end
                let pre = build_precover(&a, class).unwrap();
                let n = pre.carrier.size();
                let rev: Vec<usize> = (0..n).rev().collect();
                let flipped = Arc::new(pre.carrier.relabel(&rev));
                let g = ActMap::new(&flipped, &a, rev.iter().map(|&x| pre.map.apply(x)).collect()).unwrap();
                let (other, _) = reduce_to_cover(&g).unwrap();
                assert!(find_iso_over(&c.map, &other).is_some());
            }
        }
    }

    #[test]
    fn projective_covers() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        assert!(is_projective_cover(&ActMap::identity(&reg)).unwrap());
        let (sum, _) = coproduct(&[reg.clone(), reg.clone()]).unwrap();
        let fold = ActMap::new(&sum, &reg, (0..4).map(|x| x % 2).collect()).unwrap();
        assert!(!is_projective_cover(&fold).unwrap());
        let theta = Arc::new(FiniteAct::theta(&z2));
        assert!(matches!(is_projective_cover(&ActMap::identity(&theta)), Err(Error::DomainNotProjective)));
    }
}
