//! Right congruences on finite acts.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::act::{ActMap, FiniteAct};
use crate::error::{Error, Result};
use crate::flatness::{in_class, ClassId};
use crate::union_find::UnionFind;

/// Largest act `all_congruences` will enumerate.
pub const MAX_ENUMERATION_SIZE: usize = 9;

/// A stable equivalence on an act, stored as a class map with classes
/// numbered by least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    act: Arc<FiniteAct>,
    class_of: Vec<usize>,
}

fn canonicalize(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

/// Unions `pairs` and closes under `(a,b) => (a.s, b.s)`.
fn close(act: &FiniteAct, uf: &mut UnionFind, pairs: impl IntoIterator<Item = (usize, usize)>) {
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for (a, b) in pairs {
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    while let Some((a, b)) = queue.pop_front() {
        for s in act.monoid().elements() {
            let (x, y) = (act.act(a, s), act.act(b, s));
            if uf.union(x, y) {
                queue.push_back((x, y));
            }
        }
    }
}

impl Congruence {
    /// Least congruence containing `pairs`.
    pub fn generated(act: &Arc<FiniteAct>, pairs: &[(usize, usize)]) -> Result<Self> {
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= act.size() {
                    return Err(Error::IndexOutOfRange { index: x, size: act.size() });
                }
            }
        }
        let mut uf = UnionFind::new(act.size());
        close(act, &mut uf, pairs.iter().copied());
        Ok(Congruence { act: Arc::clone(act), class_of: uf.canonical_labels() })
    }

    /// From arbitrary labels; fails unless the partition is stable.
    pub fn from_class_map(act: &Arc<FiniteAct>, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != act.size() {
            return Err(Error::NotACongruence);
        }
        let class_of = canonicalize(&labels);
        let c = Congruence { act: Arc::clone(act), class_of };
        if !c.is_stable() {
            return Err(Error::NotACongruence);
        }
        Ok(c)
    }

    pub fn from_classes(act: &Arc<FiniteAct>, classes: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; act.size()];
        for (i, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= act.size() {
                    return Err(Error::IndexOutOfRange { index: x, size: act.size() });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::NotACongruence);
                }
                labels[x] = i;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::NotACongruence);
        }
        Self::from_class_map(act, labels)
    }

    pub fn identity(act: &Arc<FiniteAct>) -> Self {
        Congruence { act: Arc::clone(act), class_of: act.elements().collect() }
    }

    pub fn universal(act: &Arc<FiniteAct>) -> Self {
        Congruence { act: Arc::clone(act), class_of: vec![0; act.size()] }
    }

    fn is_stable(&self) -> bool {
        let act = &self.act;
        let mut rep = vec![usize::MAX; self.num_classes()];
        for x in act.elements() {
            let c = self.class_of[x];
            if rep[c] == usize::MAX {
                rep[c] = x;
                continue;
            }
            let r = rep[c];
            if act.monoid().elements().any(|s| self.class_of[act.act(x, s)] != self.class_of[act.act(r, s)]) {
                return false;
            }
        }
        true
    }

    pub fn act(&self) -> &Arc<FiniteAct> {
        &self.act
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.act.size()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes() == 1
    }

    /// `self ⊆ other` as relations.
    pub fn is_subset_of(&self, other: &Congruence) -> bool {
        let mut image = vec![usize::MAX; self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            let o = other.class_of[x];
            if image[c] == usize::MAX {
                image[c] = o;
            } else if image[c] != o {
                return false;
            }
        }
        true
    }

    /// Quotient act, classes ordered by least member, with the natural map.
    pub fn quotient_act(&self) -> (Arc<FiniteAct>, ActMap) {
        let k = self.num_classes();
        let mut rep = vec![usize::MAX; k];
        for (x, &c) in self.class_of.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = x;
            }
        }
        let monoid = self.act.monoid();
        let mut action = Vec::with_capacity(k * monoid.size());
        for &r in &rep {
            for s in monoid.elements() {
                action.push(self.class_of[self.act.act(r, s)]);
            }
        }
        let q = Arc::new(FiniteAct::from_flat_unchecked(monoid, k, action));
        let nat = ActMap::new_unchecked(&self.act, &q, self.class_of.clone());
        (q, nat)
    }

    /// `self / inner` as a congruence on `act/inner`, for `inner ⊆ self`.
    pub fn over(&self, inner: &Congruence) -> Result<(Arc<FiniteAct>, Congruence)> {
        if !inner.is_subset_of(self) {
            return Err(Error::PreconditionViolated("inner congruence not contained".into()));
        }
        let (q, nat) = inner.quotient_act();
        let mut labels = vec![0; q.size()];
        for x in self.act.elements() {
            labels[nat.apply(x)] = self.class_of[x];
        }
        let rel = Congruence::from_class_map(&q, labels)?;
        Ok((q, rel))
    }
}

/// Kernel of a map: `a ~ b` iff `f(a) = f(b)`.
pub fn kernel(f: &ActMap) -> Congruence {
    Congruence { act: Arc::clone(f.domain()), class_of: canonicalize(f.values()) }
}

/// Union of an ascending chain; the first position where containment fails
/// is reported.
pub fn union_of_chain(chain: &[Congruence]) -> Result<Congruence> {
    let last = chain.last().ok_or(Error::NotAChain(0))?;
    for (i, w) in chain.windows(2).enumerate() {
        if *w[0].act != *w[1].act || !w[0].is_subset_of(&w[1]) {
            return Err(Error::NotAChain(i));
        }
    }
    Ok(last.clone())
}

/// Every congruence on `act`, finest first, then by class map.
///
/// Breadth-first over joins with principal congruences: every congruence is
/// reached from the identity by adding one generating pair at a time.
pub fn all_congruences(act: &Arc<FiniteAct>) -> Result<Vec<Congruence>> {
    let n = act.size();
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::TooLarge { size: n, cap: MAX_ENUMERATION_SIZE });
    }
    enumerate(act, |_, _| true, usize::MAX)
}

/// Every congruence contained in `bound`, in the order of
/// [`all_congruences`]. There is no size cap; instead the enumeration stops
/// with `TooLarge` once more than `limit` congruences have been found.
pub fn congruences_within(bound: &Congruence, limit: usize) -> Result<Vec<Congruence>> {
    enumerate(bound.act(), |a, b| bound.contains(a, b), limit)
}

fn enumerate(act: &Arc<FiniteAct>, allowed: impl Fn(usize, usize) -> bool, limit: usize) -> Result<Vec<Congruence>> {
    let n = act.size();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| allowed(a, b)).collect();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for labels in &frontier {
            let mut first = vec![usize::MAX; n];
            for (x, &l) in labels.iter().enumerate() {
                if first[l] == usize::MAX {
                    first[l] = x;
                }
            }
            for &(a, b) in &pairs {
                if labels[a] == labels[b] {
                    continue;
                }
                let mut uf = UnionFind::new(n);
                for (x, &l) in labels.iter().enumerate() {
                    uf.union(first[l], x);
                }
                close(act, &mut uf, [(a, b)]);
                let joined = uf.canonical_labels();
                if seen.insert(joined.clone()) {
                    if seen.len() > limit {
                        return Err(Error::TooLarge { size: seen.len(), cap: limit });
                    }
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    let classes = |l: &Vec<usize>| l.iter().max().map_or(0, |m| m + 1);
    out.sort_by(|x, y| classes(y).cmp(&classes(x)).then_with(|| x.cmp(y)));
    Ok(out.into_iter().map(|class_of| Congruence { act: Arc::clone(act), class_of }).collect())
}

/// Whether `act/rho` belongs to the class.
pub fn is_class_pure_congruence(rho: &Congruence, class: ClassId) -> bool {
    let (q, _) = rho.quotient_act();
    in_class(&q, class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::act::coproduct;
    use crate::monoid::standard_monoid;
    use crate::FiniteMonoid;

    fn regular(name: &str, n: usize) -> Arc<FiniteAct> {
        let m = Arc::new(standard_monoid(name, &[n]).unwrap());
        Arc::new(FiniteAct::regular(&m))
    }

    #[test]
    fn generated_examples() {
        let reg = regular("semilattice_chain", 2);
        assert!(Congruence::generated(&reg, &[]).unwrap().is_identity());
        assert!(Congruence::generated(&reg, &[(0, 1)]).unwrap().is_universal());
        let m = reg.monoid().clone();
        let theta = Arc::new(FiniteAct::theta(&m));
        let (tt, _) = coproduct(&[theta.clone(), theta]).unwrap();
        assert!(Congruence::generated(&tt, &[(0, 1)]).unwrap().is_universal());
        assert!(Congruence::generated(&tt, &[(0, 2)]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let m = Arc::new(FiniteMonoid::trivial());
        let theta = Arc::new(FiniteAct::theta(&m));
        assert_eq!(all_congruences(&theta).unwrap().len(), 1);
        for name in ["cyclic_group", "semilattice_chain"] {
            let all = all_congruences(&regular(name, 2)).unwrap();
            assert_eq!(all.len(), 2);
            assert!(all[0].is_identity());
            assert!(all[1].is_universal());
        }
        // Over the trivial monoid every partition is stable: Bell(5) = 52.
        let five = Arc::new(FiniteAct::from_flat(&m, 5, (0..5).collect()).unwrap());
        assert_eq!(all_congruences(&five).unwrap().len(), 52);
        let ten = Arc::new(FiniteAct::from_flat(&m, 10, (0..10).collect()).unwrap());
        assert!(matches!(all_congruences(&ten), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn kernel_examples() {
        let reg = regular("cyclic_group", 3);
        assert!(kernel(&ActMap::identity(&reg)).is_identity());
        assert!(kernel(&ActMap::to_theta(&reg)).is_universal());
        let reg = regular("semilattice_chain", 3);
        for rho in all_congruences(&reg).unwrap() {
            let (_, nat) = rho.quotient_act();
            assert_eq!(kernel(&nat), rho);
        }
    }

    #[test]
    fn chain_union_examples() {
        let reg = regular("semilattice_chain", 3);
        let id = Congruence::identity(&reg);
        let all = Congruence::universal(&reg);
        assert_eq!(union_of_chain(std::slice::from_ref(&id)).unwrap(), id);
        assert_eq!(union_of_chain(&[id.clone(), all.clone()]).unwrap(), all);
        assert_eq!(union_of_chain(&[all, id]).unwrap_err(), Error::NotAChain(0));
    }

    #[test]
    fn quotient_examples() {
        let reg = regular("full_transformation", 2);
        let (q, nat) = Congruence::identity(&reg).quotient_act();
        assert_eq!(*q, *reg);
        assert!(nat.is_iso());
        let (q, _) = Congruence::universal(&reg).quotient_act();
        assert_eq!(*q, FiniteAct::theta(reg.monoid()));
    }

    #[test]
    fn from_class_map_rejects_unstable() {
        let reg = regular("semilattice_chain", 3);
        assert!(Congruence::from_class_map(&reg, vec![0, 0, 1]).is_ok());
        // {0,2},{1}: 0.1 = 1 but 2.1 = 2.
        assert_eq!(Congruence::from_class_map(&reg, vec![0, 1, 0]), Err(Error::NotACongruence));
    }

    #[test]
    fn class_pure_examples() {
        let z2 = regular("cyclic_group", 2);
        assert!(is_class_pure_congruence(&Congruence::identity(&z2), ClassId::SF));
        assert!(!is_class_pure_congruence(&Congruence::universal(&z2), ClassId::SF));
        let u = regular("semilattice_chain", 2);
        assert!(is_class_pure_congruence(&Congruence::universal(&u), ClassId::SF));
    }
}
