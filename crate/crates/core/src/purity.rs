//! Purity of epimorphisms via the equational lifting criterion.
//!
//! An epimorphism `g: X -> Y` is n-pure when every family of `n` elements
//! of `Y`, together with every relation `y_j.s = y_k.t` among them, lifts to
//! `X`. Two reductions make this finite:
//!
//! * only the maximal relation family of a tuple needs lifting, since a lift
//!   of the full family is a lift of every sub-family;
//! * only tuples of distinct elements matter, and their order is irrelevant,
//!   so it is enough to lift every `n`-subset of `Y` (all of `Y` when
//!   `n >= |Y|`). A tuple with repeats lifts by reusing the lift of its
//!   support, and relations between equal entries are annihilator relations
//!   already included in the support's family.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::act::{tensor, ActMap, FiniteAct};
use crate::congruence::Congruence;
use crate::corpus::acts_up_to_iso;
use crate::error::{Error, Result};
use crate::flatness::Verdict;

/// Relations `tuple[j].s = tuple[k].t`, stored as `(j, k, s, t)` with
/// zero-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFamily {
    pub arity: usize,
    pub relations: Vec<(usize, usize, usize, usize)>,
}

impl RelationFamily {
    pub fn holds_for(&self, act: &FiniteAct, tuple: &[usize]) -> bool {
        tuple.len() == self.arity
            && self.relations.iter().all(|&(j, k, s, t)| act.act(tuple[j], s) == act.act(tuple[k], t))
    }
}

/// The maximal relation family satisfied by `tuple`, lexicographic.
pub fn satisfied_relations(act: &FiniteAct, tuple: &[usize]) -> RelationFamily {
    let m = act.monoid();
    let mut relations = Vec::new();
    for (j, &a) in tuple.iter().enumerate() {
        for (k, &b) in tuple.iter().enumerate() {
            for s in m.elements() {
                let as_ = act.act(a, s);
                for t in m.elements() {
                    if as_ == act.act(b, t) {
                        relations.push((j, k, s, t));
                    }
                }
            }
        }
    }
    RelationFamily { arity: tuple.len(), relations }
}

/// `meeting_pairs` for every ordered pair of elements.
struct MeetingTable {
    size: usize,
    sets: Vec<FixedBitSet>,
}

impl MeetingTable {
    fn new(act: &FiniteAct) -> Self {
        let n = act.size();
        let mut sets = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                sets.push(act.meeting_pairs(a, b));
            }
        }
        MeetingTable { size: n, sets }
    }

    fn get(&self, a: usize, b: usize) -> &FixedBitSet {
        &self.sets[a * self.size + b]
    }
}

/// Lifts a tuple of distinct codomain elements with its full relation
/// family, or returns `None`.
struct Lifter {
    fibers: Vec<Vec<usize>>,
    down: MeetingTable,
    up: MeetingTable,
}

impl Lifter {
    fn new(g: &ActMap) -> Self {
        let y = g.codomain();
        Lifter {
            fibers: y.elements().map(|b| g.fiber(b)).collect(),
            down: MeetingTable::new(g.codomain()),
            up: MeetingTable::new(g.domain()),
        }
    }

    fn lift(&self, tuple: &[usize]) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(tuple.len());
        self.extend(tuple, &mut chosen).then_some(chosen)
    }

    fn extend(&self, tuple: &[usize], chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == tuple.len() {
            return true;
        }
        let yi = tuple[i];
        for &x in &self.fibers[yi] {
            let fits = self.down.get(yi, yi).is_subset(self.up.get(x, x))
                && chosen.iter().zip(tuple).all(|(&xj, &yj)| {
                    self.down.get(yj, yi).is_subset(self.up.get(xj, x))
                        && self.down.get(yi, yj).is_subset(self.up.get(x, xj))
                });
            if fits {
                chosen.push(x);
                if self.extend(tuple, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

fn require_epi(g: &ActMap) -> Result<()> {
    match g.surjectivity_witness() {
        Some(y) => Err(Error::NotEpi(y)),
        None => Ok(()),
    }
}

/// Next `k`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// n-purity; the witness is the least subset of the codomain (as a sorted
/// tuple) that does not lift.
pub fn is_n_pure(g: &ActMap, n: usize) -> Result<Verdict<Vec<usize>>> {
    require_epi(g)?;
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be positive".into()));
    }
    let size = g.codomain().size();
    let k = n.min(size);
    let lifter = Lifter::new(g);
    let mut comb: Vec<usize> = (0..k).collect();
    loop {
        if lifter.lift(&comb).is_none() {
            return Ok(Verdict::Fails(comb));
        }
        if !next_combination(&mut comb, size) {
            return Ok(Verdict::Holds);
        }
    }
}

/// Lifts of one tuple, for callers that want the preimages themselves.
pub fn lift_tuple(g: &ActMap, tuple: &[usize]) -> Result<Option<Vec<usize>>> {
    require_epi(g)?;
    let mut distinct = tuple.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let lifter = Lifter::new(g);
    Ok(lifter
        .lift(&distinct)
        .map(|lift| tuple.iter().map(|y| lift[distinct.binary_search(y).expect("present")]).collect()))
}

/// Purity is `|Y|`-purity.
pub fn is_pure_epi(g: &ActMap) -> Result<Verdict<Vec<usize>>> {
    is_n_pure(g, g.codomain().size())
}

/// Purity of a congruence phrased directly on the act: with one
/// representative per class and every relation `x_j.s ρ x_k.t`, some
/// `ρ`-related replacements satisfy the relations on the nose.
pub fn pure_congruence_direct(rho: &Congruence) -> bool {
    let act = rho.act();
    let classes = rho.classes();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let m = act.monoid();
    let mut relations = Vec::new();
    for (j, &a) in reps.iter().enumerate() {
        for (k, &b) in reps.iter().enumerate() {
            for s in m.elements() {
                for t in m.elements() {
                    if rho.contains(act.act(a, s), act.act(b, t)) {
                        relations.push((j, k, s, t));
                    }
                }
            }
        }
    }
    fn search(
        act: &FiniteAct,
        classes: &[Vec<usize>],
        relations: &[(usize, usize, usize, usize)],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let i = chosen.len();
        if i == classes.len() {
            return true;
        }
        for &y in &classes[i] {
            chosen.push(y);
            let ok =
                relations.iter().all(|&(j, k, s, t)| j.max(k) != i || act.act(chosen[j], s) == act.act(chosen[k], t));
            if ok && search(act, classes, relations, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    search(act, &classes, &relations, &mut Vec::new())
}

/// Whether `A -> A/ρ` is pure. Both the quotient-map criterion and the
/// direct phrasing are evaluated and must agree.
pub fn is_pure_congruence(rho: &Congruence) -> Result<bool> {
    let (_, nat) = rho.quotient_act();
    let via_map = is_pure_epi(&nat)?.holds();
    let direct = pure_congruence_direct(rho);
    if via_map != direct {
        return Err(Error::Inconsistent(format!(
            "pure congruence: quotient map says {via_map}, direct check says {direct}"
        )));
    }
    Ok(via_map)
}

/// Bounded certificate for purity of a monomorphism: `f ⊗ X` must stay
/// injective for every left act `X` (a right act over the opposite monoid)
/// with at most `bound` elements, up to isomorphism. Returns the first left
/// act that breaks injectivity.
pub fn is_pure_mono_bounded(f: &ActMap, bound: usize) -> Result<Verdict<Arc<FiniteAct>>> {
    if let Some((a, b)) = f.injectivity_witness() {
        return Err(Error::NotMono(a, b));
    }
    let op = Arc::new(f.domain().monoid().opposite());
    for size in 1..=bound {
        for left in acts_up_to_iso(&op, size)? {
            if !tensor_map_injective(f, &left)? {
                return Ok(Verdict::Fails(left));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Whether `f ⊗ 1: dom(f) ⊗ X -> cod(f) ⊗ X` is injective on classes.
pub fn tensor_map_injective(f: &ActMap, left: &FiniteAct) -> Result<bool> {
    let src = tensor(f.domain(), left)?;
    let dst = tensor(f.codomain(), left)?;
    let mut image = vec![usize::MAX; src.classes];
    let mut used = vec![false; dst.classes];
    for a in f.domain().elements() {
        for b in left.elements() {
            let c = src.class(a, b);
            let d = dst.class(f.apply(a), b);
            if image[c] == usize::MAX {
                if std::mem::replace(&mut used[d], true) {
                    return Ok(false);
                }
                image[c] = d;
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::act::coproduct;
    use crate::hom::section;
    use crate::monoid::{standard_monoid, FiniteMonoid};

    fn m(name: &str, n: usize) -> Arc<FiniteMonoid> {
        Arc::new(standard_monoid(name, &[n]).unwrap())
    }

    #[test]
    fn satisfied_relation_examples() {
        let z3 = m("cyclic_group", 3);
        let reg = FiniteAct::regular(&z3);
        let fam = satisfied_relations(&reg, &[1]);
        assert_eq!(fam.relations, vec![(0, 0, 0, 0), (0, 0, 1, 1), (0, 0, 2, 2)]);
        let theta = FiniteAct::theta(&z3);
        assert_eq!(satisfied_relations(&theta, &[0]).relations.len(), 9);
        let two = FiniteAct::new(&z3, vec![vec![0, 0, 0], vec![1, 1, 1]]).unwrap();
        let fam = satisfied_relations(&two, &[0, 1]);
        assert!(fam.relations.iter().all(|&(j, k, _, _)| j == k));
        assert!(fam.holds_for(&two, &[0, 1]));
    }

    #[test]
    fn n_purity_examples() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        let g = ActMap::to_theta(&reg);
        assert_eq!(is_n_pure(&g, 1).unwrap(), Verdict::Fails(vec![0]));
        assert!(!is_pure_epi(&g).unwrap().holds());

        let u = m("semilattice_chain", 2);
        let reg = Arc::new(FiniteAct::regular(&u));
        let g = ActMap::to_theta(&reg);
        for n in 1..=2 {
            assert!(is_n_pure(&g, n).unwrap().holds());
        }
        assert_eq!(lift_tuple(&g, &[0, 0]).unwrap(), Some(vec![1, 1]));

        assert!(is_pure_epi(&ActMap::identity(&reg)).unwrap().holds());
        let theta = Arc::new(FiniteAct::theta(&u));
        let not_epi = ActMap::new(&theta, &reg, vec![1]).unwrap();
        assert!(matches!(is_n_pure(&not_epi, 1), Err(Error::NotEpi(0))));
    }

    #[test]
    fn split_epis_are_pure() {
        let t2 = m("full_transformation", 2);
        let reg = Arc::new(FiniteAct::regular(&t2));
        let (ss, _) = coproduct(&[reg.clone(), reg.clone()]).unwrap();
        let fold = ActMap::new(&ss, &reg, [0, 1, 2, 3, 0, 1, 2, 3].to_vec()).unwrap();
        assert!(section(&fold).unwrap().is_some());
        for n in 1..=4 {
            assert!(is_n_pure(&fold, n).unwrap().holds());
        }
    }

    #[test]
    fn pure_congruence_examples() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        assert!(is_pure_congruence(&Congruence::identity(&reg)).unwrap());
        assert!(!is_pure_congruence(&Congruence::universal(&reg)).unwrap());
        let i2 = m("symmetric_inverse", 2);
        let sigma = i2.min_group_congruence().unwrap();
        assert!(is_pure_congruence(&sigma).unwrap());
    }

    #[test]
    fn pure_mono_examples() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        assert!(is_pure_mono_bounded(&ActMap::identity(&reg), 3).unwrap().holds());

        let theta = Arc::new(FiniteAct::theta(&z2));
        let (tt, inj) = coproduct(&[theta.clone(), theta.clone()]).unwrap();
        // a coproduct injection is split
        assert!(is_pure_mono_bounded(&inj[1], 3).unwrap().holds());
        // direct class count: Θ⊗X and (Θ⊔Θ)⊗X have c and 2c classes
        let op = Arc::new(z2.opposite());
        for left in acts_up_to_iso(&op, 3).unwrap() {
            let c = tensor(&theta, &left).unwrap().classes;
            assert_eq!(tensor(&tt, &left).unwrap().classes, 2 * c);
        }
        assert!(matches!(is_pure_mono_bounded(&ActMap::to_theta(&reg), 2), Err(Error::NotMono(0, 1))));
    }
}
