//! Finite right acts, equivariant maps, and the constructions built from
//! them: coproducts, components, Rees quotients, pullbacks, tensor products
//! and induced acts.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::union_find::UnionFind;

/// A non-empty finite set with a right action `a.s` of a finite monoid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAct {
    monoid: Arc<FiniteMonoid>,
    size: usize,
    action: Vec<usize>,
}

impl fmt::Debug for FiniteAct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAct").field("size", &self.size).field("action", &self.rows()).finish()
    }
}

impl FiniteAct {
    /// Validates `action[a][s] = a.s`.
    pub fn new(monoid: &Arc<FiniteMonoid>, action: Vec<Vec<usize>>) -> Result<Self> {
        let k = monoid.size();
        for (row, r) in action.iter().enumerate() {
            if r.len() != k {
                return Err(Error::NotSquare { row, len: r.len(), expected: k });
            }
        }
        let size = action.len();
        Self::from_flat(monoid, size, action.into_iter().flatten().collect())
    }

    pub fn from_flat(monoid: &Arc<FiniteMonoid>, size: usize, action: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAct);
        }
        if let Some(&bad) = action.iter().find(|&&x| x >= size) {
            return Err(Error::IndexOutOfRange { index: bad, size });
        }
        let act = FiniteAct { monoid: Arc::clone(monoid), size, action };
        act.validate()?;
        Ok(act)
    }

    pub(crate) fn from_flat_unchecked(monoid: &Arc<FiniteMonoid>, size: usize, action: Vec<usize>) -> Self {
        debug_assert_eq!(action.len(), size * monoid.size());
        FiniteAct { monoid: Arc::clone(monoid), size, action }
    }

    fn validate(&self) -> Result<()> {
        let m = &self.monoid;
        for a in 0..self.size {
            if self.act(a, m.identity()) != a {
                return Err(Error::IdentityAxiomFails(a));
            }
        }
        for a in 0..self.size {
            for s in m.elements() {
                let as_ = self.act(a, s);
                for t in m.elements() {
                    if self.act(as_, t) != self.act(a, m.mul(s, t)) {
                        return Err(Error::AssociativityAxiomFails { a, s, t });
                    }
                }
            }
        }
        Ok(())
    }

    /// The monoid acting on itself by right multiplication.
    pub fn regular(monoid: &Arc<FiniteMonoid>) -> Self {
        FiniteAct { monoid: Arc::clone(monoid), size: monoid.size(), action: monoid.table_flat().to_vec() }
    }

    /// The one-element act, terminal among acts.
    pub fn theta(monoid: &Arc<FiniteMonoid>) -> Self {
        FiniteAct { monoid: Arc::clone(monoid), size: 1, action: vec![0; monoid.size()] }
    }

    #[inline]
    pub fn act(&self, a: usize, s: usize) -> usize {
        self.action[a * self.monoid.size() + s]
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.action.chunks(self.monoid.size()).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn flat(&self) -> &[usize] {
        &self.action
    }

    pub fn same_monoid(&self, other: &FiniteAct) -> bool {
        Arc::ptr_eq(&self.monoid, &other.monoid) || self.monoid == other.monoid
    }

    pub fn is_fixed_point(&self, a: usize) -> bool {
        self.monoid.elements().all(|s| self.act(a, s) == a)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.is_fixed_point(a)).collect()
    }

    /// The cyclic subact `aS` as a bitset over elements.
    pub fn orbit(&self, a: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size);
        for s in self.monoid.elements() {
            set.insert(self.act(a, s));
        }
        set
    }

    /// Pairs `(s,t)` with `a.s = b.t`, indexed `s*|S| + t`.
    pub fn meeting_pairs(&self, a: usize, b: usize) -> FixedBitSet {
        let k = self.monoid.size();
        let mut set = FixedBitSet::with_capacity(k * k);
        for s in 0..k {
            let as_ = self.act(a, s);
            for t in 0..k {
                if as_ == self.act(b, t) {
                    set.insert(s * k + t);
                }
            }
        }
        set
    }

    /// The kernel of `s -> a.s`, i.e. `meeting_pairs(a, a)`.
    pub fn annihilator(&self, a: usize) -> FixedBitSet {
        self.meeting_pairs(a, a)
    }

    pub fn is_subact(&self, elements: &[usize]) -> std::result::Result<(), (usize, usize)> {
        let mut member = vec![false; self.size];
        for &x in elements {
            member[x] = true;
        }
        for &a in elements {
            for s in self.monoid.elements() {
                if !member[self.act(a, s)] {
                    return Err((a, s));
                }
            }
        }
        Ok(())
    }

    /// The subact on `elements` (which must be action-closed), renumbered in
    /// ascending order, with its inclusion map.
    pub fn subact(self: &Arc<Self>, elements: &[usize]) -> Result<(Arc<FiniteAct>, ActMap)> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::EmptyAct);
        }
        if let Some(&bad) = elems.iter().find(|&&x| x >= self.size) {
            return Err(Error::IndexOutOfRange { index: bad, size: self.size });
        }
        if let Err((a, s)) = self.is_subact(&elems) {
            return Err(Error::NotASubact { a, s });
        }
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let k = self.monoid.size();
        let mut action = Vec::with_capacity(elems.len() * k);
        for &x in &elems {
            for s in 0..k {
                action.push(pos[self.act(x, s)]);
            }
        }
        let sub = Arc::new(FiniteAct::from_flat_unchecked(&self.monoid, elems.len(), action));
        let inc = ActMap::new_unchecked(&sub, self, elems);
        Ok((sub, inc))
    }

    /// The same act with elements renamed: new element `i` is old `order[i]`.
    pub fn relabel(&self, order: &[usize]) -> FiniteAct {
        let mut pos = vec![0; self.size];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let k = self.monoid.size();
        let mut action = Vec::with_capacity(self.action.len());
        for &x in order {
            for s in 0..k {
                action.push(pos[self.act(x, s)]);
            }
        }
        FiniteAct::from_flat_unchecked(&self.monoid, self.size, action)
    }
}

/// An equivariant map between acts over the same monoid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ActMap {
    domain: Arc<FiniteAct>,
    codomain: Arc<FiniteAct>,
    values: Vec<usize>,
}

impl fmt::Debug for ActMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ActMap({:?})", self.values)
    }
}

impl ActMap {
    pub fn new(domain: &Arc<FiniteAct>, codomain: &Arc<FiniteAct>, values: Vec<usize>) -> Result<Self> {
        if !domain.same_monoid(codomain) {
            return Err(Error::MixedMonoids);
        }
        if values.len() != domain.size() {
            return Err(Error::MapMismatch);
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= codomain.size()) {
            return Err(Error::IndexOutOfRange { index: bad, size: codomain.size() });
        }
        for a in domain.elements() {
            for s in domain.monoid().elements() {
                if values[domain.act(a, s)] != codomain.act(values[a], s) {
                    return Err(Error::NotEquivariant { a, s });
                }
            }
        }
        Ok(Self::new_unchecked(domain, codomain, values))
    }

    pub(crate) fn new_unchecked(domain: &Arc<FiniteAct>, codomain: &Arc<FiniteAct>, values: Vec<usize>) -> Self {
        ActMap { domain: Arc::clone(domain), codomain: Arc::clone(codomain), values }
    }

    pub fn identity(act: &Arc<FiniteAct>) -> Self {
        Self::new_unchecked(act, act, act.elements().collect())
    }

    /// The unique map to the one-element act.
    pub fn to_theta(act: &Arc<FiniteAct>) -> Self {
        let theta = Arc::new(FiniteAct::theta(act.monoid()));
        Self::new_unchecked(act, &theta, vec![0; act.size()])
    }

    pub fn domain(&self) -> &Arc<FiniteAct> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteAct> {
        &self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ActMap) -> Result<ActMap> {
        if self.codomain.size() != next.domain.size() || !self.codomain.same_monoid(&next.domain) {
            return Err(Error::MapMismatch);
        }
        let values = self.values.iter().map(|&x| next.values[x]).collect();
        Ok(Self::new_unchecked(&self.domain, &next.codomain, values))
    }

    pub fn is_mono(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    pub fn injectivity_witness(&self) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.codomain.size()];
        for (x, &y) in self.values.iter().enumerate() {
            if seen[y] != usize::MAX {
                return Some((seen[y], x));
            }
            seen[y] = x;
        }
        None
    }

    pub fn is_epi(&self) -> bool {
        self.surjectivity_witness().is_none()
    }

    pub fn surjectivity_witness(&self) -> Option<usize> {
        let mut hit = vec![false; self.codomain.size()];
        for &y in &self.values {
            hit[y] = true;
        }
        hit.iter().position(|h| !h)
    }

    pub fn is_iso(&self) -> bool {
        self.domain.size() == self.codomain.size() && self.is_mono()
    }

    /// Sorted, duplicate-free image.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.values.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    /// `x` with `f(x) = y`, ascending.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        self.values.iter().enumerate().filter(|&(_, &v)| v == y).map(|(x, _)| x).collect()
    }
}

/// Partition of an act into indecomposable subacts, each sorted, ordered by
/// least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Component index of every element.
    pub fn labels(&self, size: usize) -> Vec<usize> {
        let mut out = vec![0; size];
        for (i, c) in self.components.iter().enumerate() {
            for &x in c {
                out[x] = i;
            }
        }
        out
    }
}

/// Disjoint union, blocks laid out in input order, with the injections.
pub fn coproduct(acts: &[Arc<FiniteAct>]) -> Result<(Arc<FiniteAct>, Vec<ActMap>)> {
    let first = acts.first().ok_or(Error::EmptyAct)?;
    if acts.iter().any(|a| !a.same_monoid(first)) {
        return Err(Error::MixedMonoids);
    }
    let monoid = first.monoid();
    let total: usize = acts.iter().map(|a| a.size()).sum();
    let mut action = Vec::with_capacity(total * monoid.size());
    let mut offset = 0;
    let mut offsets = Vec::with_capacity(acts.len());
    for a in acts {
        offsets.push(offset);
        action.extend(a.flat().iter().map(|&x| x + offset));
        offset += a.size();
    }
    let sum = Arc::new(FiniteAct::from_flat_unchecked(monoid, total, action));
    let injections = acts
        .iter()
        .zip(offsets)
        .map(|(a, off)| ActMap::new_unchecked(a, &sum, (off..off + a.size()).collect()))
        .collect();
    Ok((sum, injections))
}

/// Connected components of the graph with edges `a -- a.s`.
pub fn decompose_indecomposable(act: &FiniteAct) -> Decomposition {
    let mut uf = UnionFind::new(act.size());
    for a in act.elements() {
        for s in act.monoid().elements() {
            uf.union(a, act.act(a, s));
        }
    }
    let labels = uf.canonical_labels();
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut components = vec![Vec::new(); count];
    for (x, &l) in labels.iter().enumerate() {
        components[l].push(x);
    }
    Decomposition { components }
}

pub fn is_indecomposable(act: &FiniteAct) -> bool {
    decompose_indecomposable(act).components.len() == 1
}

/// `Y/B`: collapse the subact `B` to a single point.
pub fn rees_quotient(y: &Arc<FiniteAct>, b: &[usize]) -> Result<(Arc<FiniteAct>, ActMap)> {
    if b.is_empty() {
        return Err(Error::EmptyAct);
    }
    if let Some(&bad) = b.iter().find(|&&x| x >= y.size()) {
        return Err(Error::IndexOutOfRange { index: bad, size: y.size() });
    }
    if let Err((a, s)) = y.is_subact(b) {
        return Err(Error::NotASubact { a, s });
    }
    let pairs: Vec<(usize, usize)> = b.windows(2).map(|w| (w[0], w[1])).collect();
    let rho = Congruence::generated(y, &pairs)?;
    Ok(rho.quotient_act())
}

/// Result of a pullback: either an act with its two projections, or nothing
/// when no pair `(b, c)` with `f(b) = g(c)` exists.
#[derive(Debug, Clone)]
pub enum Pullback {
    Empty,
    Object {
        act: Arc<FiniteAct>,
        /// Underlying pairs `(b, c)`, lexicographic.
        pairs: Vec<(usize, usize)>,
        left: ActMap,
        right: ActMap,
    },
}

pub fn pullback(f: &ActMap, g: &ActMap) -> Result<Pullback> {
    let d = f.codomain();
    if d.size() != g.codomain().size() || !d.same_monoid(g.codomain()) || **d != **g.codomain() {
        return Err(Error::MapMismatch);
    }
    let (b_act, c_act) = (f.domain(), g.domain());
    let pairs: Vec<(usize, usize)> = b_act
        .elements()
        .flat_map(|b| c_act.elements().map(move |c| (b, c)))
        .filter(|&(b, c)| f.apply(b) == g.apply(c))
        .collect();
    if pairs.is_empty() {
        return Ok(Pullback::Empty);
    }
    let index: std::collections::HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let monoid = b_act.monoid();
    let mut action = Vec::with_capacity(pairs.len() * monoid.size());
    for &(b, c) in &pairs {
        for s in monoid.elements() {
            action.push(index[&(b_act.act(b, s), c_act.act(c, s))]);
        }
    }
    let act = Arc::new(FiniteAct::from_flat_unchecked(monoid, pairs.len(), action));
    let left = ActMap::new_unchecked(&act, b_act, pairs.iter().map(|p| p.0).collect());
    let right = ActMap::new_unchecked(&act, c_act, pairs.iter().map(|p| p.1).collect());
    Ok(Pullback::Object { act, pairs, left, right })
}

/// `A ⊗_S B` as a set: classes of `A × B` under `(a.s, b) ~ (a, s.b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    pub classes: usize,
    right_size: usize,
    class_of: Vec<usize>,
}

impl Tensor {
    /// Class of `a ⊗ b`.
    pub fn class(&self, a: usize, b: usize) -> usize {
        self.class_of[a * self.right_size + b]
    }
}

/// Tensor product of a right act `a` over `S` with a left `S`-act given as a
/// right act `b` over the opposite of `S`.
pub fn tensor(a: &FiniteAct, b: &FiniteAct) -> Result<Tensor> {
    if **b.monoid() != a.monoid().opposite() {
        return Err(Error::MixedMonoids);
    }
    let nb = b.size();
    let mut uf = UnionFind::new(a.size() * nb);
    for x in a.elements() {
        for s in a.monoid().elements() {
            let xs = a.act(x, s);
            for y in b.elements() {
                // s.y for the left action is y.s over the opposite monoid
                uf.union(xs * nb + y, x * nb + b.act(y, s));
            }
        }
    }
    let class_of = uf.canonical_labels();
    let classes = class_of.iter().max().map_or(0, |m| m + 1);
    Ok(Tensor { classes, right_size: nb, class_of })
}

/// Checks that `embed` is an injective, identity-preserving homomorphism
/// from `source` into `target`.
pub fn check_embedding(source: &FiniteMonoid, target: &FiniteMonoid, embed: &[usize]) -> Result<()> {
    if embed.len() != source.size() {
        return Err(Error::NotAnEmbedding(format!("expected {} images, got {}", source.size(), embed.len())));
    }
    if let Some(&bad) = embed.iter().find(|&&x| x >= target.size()) {
        return Err(Error::NotAnEmbedding(format!("image {bad} out of range")));
    }
    if embed[source.identity()] != target.identity() {
        return Err(Error::NotAnEmbedding("identity not preserved".into()));
    }
    let mut seen = vec![false; target.size()];
    for &x in embed {
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::NotAnEmbedding(format!("image {x} hit twice")));
        }
    }
    for s in source.elements() {
        for t in source.elements() {
            if embed[source.mul(s, t)] != target.mul(embed[s], embed[t]) {
                return Err(Error::NotAnEmbedding(format!("not multiplicative at ({s},{t})")));
            }
        }
    }
    Ok(())
}

/// `X ⊗_S T` as a right `T`-act, together with the canonical map
/// `x -> [x ⊗ 1]` (given as values, since it changes the acting monoid).
pub fn induced_act(x: &FiniteAct, target: &Arc<FiniteMonoid>, embed: &[usize]) -> Result<(Arc<FiniteAct>, Vec<usize>)> {
    let source = x.monoid();
    check_embedding(source, target, embed)?;
    let nt = target.size();
    let mut uf = UnionFind::new(x.size() * nt);
    for a in x.elements() {
        for s in source.elements() {
            let as_ = x.act(a, s);
            for t in target.elements() {
                uf.union(as_ * nt + t, a * nt + target.mul(embed[s], t));
            }
        }
    }
    let class_of = uf.canonical_labels();
    let classes = class_of.iter().max().map_or(0, |m| m + 1);
    let mut rep = vec![usize::MAX; classes];
    for (i, &c) in class_of.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = i;
        }
    }
    let mut action = Vec::with_capacity(classes * nt);
    for &r in &rep {
        let (a, t) = (r / nt, r % nt);
        for u in target.elements() {
            action.push(class_of[a * nt + target.mul(t, u)]);
        }
    }
    let induced = Arc::new(FiniteAct::from_flat_unchecked(target, classes, action));
    let unit = x.elements().map(|a| class_of[a * nt + target.identity()]).collect();
    Ok((induced, unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{find_iso, homs};
    use crate::monoid::standard_monoid;

    fn z2() -> Arc<FiniteMonoid> {
        Arc::new(standard_monoid("cyclic_group", &[2]).unwrap())
    }

    fn chain2() -> Arc<FiniteMonoid> {
        Arc::new(standard_monoid("semilattice_chain", &[2]).unwrap())
    }

    #[test]
    fn make_act_examples() {
        let m = chain2();
        let reg = FiniteAct::new(&m, m.rows()).unwrap();
        assert_eq!(reg, FiniteAct::regular(&m));
        assert_eq!(FiniteAct::new(&m, vec![vec![0, 0]]).unwrap(), FiniteAct::theta(&m));
        assert_eq!(FiniteAct::new(&m, vec![vec![1, 1], vec![1, 1]]), Err(Error::IdentityAxiomFails(0)));
        assert_eq!(FiniteAct::new(&m, vec![]), Err(Error::EmptyAct));
    }

    #[test]
    fn theta_is_terminal() {
        let m = z2();
        let theta = Arc::new(FiniteAct::theta(&m));
        let two = Arc::new(FiniteAct::new(&m, vec![vec![0, 0], vec![1, 1]]).unwrap());
        let reg = Arc::new(FiniteAct::regular(&m));
        assert_eq!(homs(&two, &theta).unwrap().len(), 1);
        assert_eq!(homs(&theta, &two).unwrap().len(), two.fixed_points().len());
        assert_eq!(homs(&theta, &reg).unwrap().len(), 0);
        assert!(ActMap::new(&reg, &theta, vec![0, 0]).is_ok());
    }

    #[test]
    fn coproduct_examples() {
        let m = z2();
        let reg = Arc::new(FiniteAct::regular(&m));
        let (single, inj) = coproduct(&[reg.clone()]).unwrap();
        assert_eq!(*single, *reg);
        assert!(inj[0].is_iso());
        let (double, inj) = coproduct(&[reg.clone(), reg.clone()]).unwrap();
        assert_eq!(double.size(), 4);
        assert_eq!(decompose_indecomposable(&double).components, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(inj[1].values(), &[2, 3]);
        let other = Arc::new(FiniteAct::regular(&chain2()));
        assert_eq!(coproduct(&[reg, other]).unwrap_err(), Error::MixedMonoids);
    }

    #[test]
    fn decomposition_examples() {
        let m = z2();
        let theta = Arc::new(FiniteAct::theta(&m));
        assert_eq!(decompose_indecomposable(&theta).components.len(), 1);
        let (tt, _) = coproduct(&[theta.clone(), theta]).unwrap();
        assert_eq!(decompose_indecomposable(&tt).components.len(), 2);
        assert!(is_indecomposable(&FiniteAct::regular(&m)));
    }

    #[test]
    fn rees_quotient_examples() {
        let m = z2();
        let reg = Arc::new(FiniteAct::regular(&m));
        let (q, nat) = rees_quotient(&reg, &[0, 1]).unwrap();
        assert_eq!(*q, FiniteAct::theta(&m));
        assert!(nat.is_epi());
        let two = Arc::new(FiniteAct::new(&m, vec![vec![0, 0], vec![1, 1]]).unwrap());
        let (q, nat) = rees_quotient(&two, &[0]).unwrap();
        assert_eq!(*q, *two);
        assert!(nat.is_iso());
        assert!(matches!(rees_quotient(&reg, &[0]), Err(Error::NotASubact { .. })));
    }

    #[test]
    fn pullback_examples() {
        let m = chain2();
        let reg = Arc::new(FiniteAct::regular(&m));
        let id = ActMap::identity(&reg);
        match pullback(&id, &id).unwrap() {
            Pullback::Object { act, pairs, .. } => {
                assert_eq!(pairs, vec![(0, 0), (1, 1)]);
                assert!(find_iso(&act, &reg).is_some());
            }
            Pullback::Empty => panic!("diagonal is non-empty"),
        }
        // Fold S ⊔ S -> S against itself: sum over d of |fiber(d)|^2.
        let (ss, _) = coproduct(&[reg.clone(), reg.clone()]).unwrap();
        let fold = ActMap::new(&ss, &reg, vec![0, 1, 0, 1]).unwrap();
        match pullback(&fold, &fold).unwrap() {
            Pullback::Object { act, .. } => assert_eq!(act.size(), 2 * 2 + 2 * 2),
            Pullback::Empty => panic!(),
        }
        // Two different fixed points have nothing over a common point.
        let z = z2();
        let two = Arc::new(FiniteAct::new(&z, vec![vec![0, 0], vec![1, 1]]).unwrap());
        let theta = Arc::new(FiniteAct::theta(&z));
        let p0 = ActMap::new(&theta, &two, vec![0]).unwrap();
        let p1 = ActMap::new(&theta, &two, vec![1]).unwrap();
        assert!(matches!(pullback(&p0, &p1).unwrap(), Pullback::Empty));
    }

    #[test]
    fn tensor_unit_laws() {
        let m = Arc::new(standard_monoid("full_transformation", &[2]).unwrap());
        let op = Arc::new(m.opposite());
        let a = Arc::new(FiniteAct::regular(&m));
        let left_regular = FiniteAct::regular(&op);
        let t = tensor(&a, &left_regular).unwrap();
        assert_eq!(t.classes, a.size());
        for x in a.elements() {
            for s in m.elements() {
                assert_eq!(t.class(x, s), t.class(a.act(x, s), m.identity()));
            }
        }
        let theta = FiniteAct::theta(&m);
        let t = tensor(&theta, &left_regular).unwrap();
        assert_eq!(t.classes, 1);
        assert_eq!(tensor(&a, &a).unwrap_err(), Error::MixedMonoids);
    }

    #[test]
    fn tensor_with_theta_counts_components() {
        let m = z2();
        let op = Arc::new(m.opposite());
        let theta = FiniteAct::theta(&m);
        let b = FiniteAct::new(&op, vec![vec![0, 0], vec![1, 1], vec![2, 3], vec![3, 2]]).unwrap();
        assert_eq!(tensor(&theta, &b).unwrap().classes, decompose_indecomposable(&b).components.len());
    }

    #[test]
    fn induced_act_examples() {
        let u = chain2();
        let x = Arc::new(FiniteAct::new(&u, vec![vec![0, 1], vec![1, 1], vec![2, 2]]).unwrap());
        let (same, unit) = induced_act(&x, &u, &[0, 1]).unwrap();
        assert!(find_iso(&same, &x).is_some());
        assert_eq!(unit, vec![0, 1, 2]);

        // U = {1, e} inside the 3-chain via 1 -> 0, e -> 2.
        let chain3 = Arc::new(standard_monoid("semilattice_chain", &[3]).unwrap());
        let reg = FiniteAct::regular(&u);
        let (induced, _) = induced_act(&reg, &chain3, &[0, 2]).unwrap();
        assert!(find_iso(&induced, &Arc::new(FiniteAct::regular(&chain3))).is_some());

        assert!(matches!(induced_act(&reg, &chain3, &[0, 0]), Err(Error::NotAnEmbedding(_))));
        assert!(matches!(induced_act(&reg, &chain3, &[1, 2]), Err(Error::NotAnEmbedding(_))));
    }
}
