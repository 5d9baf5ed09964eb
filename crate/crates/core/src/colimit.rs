//! Finite direct systems of acts and their colimits.
//!
//! The index set is an explicit preorder. Two constructions of the colimit are
//! provided: the quotient of the coproduct by the congruence generated by the
//! transition relations, and, for directed index sets, the explicit relation
//! "identified at some common later stage". The directed variant always checks
//! that both agree.

use std::collections::{BTreeMap, VecDeque};
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::{coproduct, ActMap, FiniteAct};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::hom::{for_each_hom, homs, HomQuery};

#[derive(Debug, Clone)]
pub struct DirectSystem {
    leq: Vec<Vec<bool>>,
    acts: Vec<Arc<FiniteAct>>,
    transitions: BTreeMap<(usize, usize), ActMap>,
}

impl DirectSystem {
    /// Validates a fully specified system. Missing `(i, i)` transitions are
    /// filled with identities; every other related pair needs a map.
    pub fn new(
        leq: Vec<Vec<bool>>,
        acts: Vec<Arc<FiniteAct>>,
        mut transitions: BTreeMap<(usize, usize), ActMap>,
    ) -> Result<Self> {
        let n = acts.len();
        if n == 0 {
            return Err(Error::InvalidSystem("empty index set".into()));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSystem(format!("relation matrix must be {n}x{n}")));
        }
        if acts.iter().any(|a| !a.same_monoid(&acts[0])) {
            return Err(Error::MixedMonoids);
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidSystem(format!("relation not reflexive at {i}")));
            }
            transitions.entry((i, i)).or_insert_with(|| ActMap::identity(&acts[i]));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::InvalidSystem(format!("relation not transitive: {i} <= {j} <= {k}")));
                    }
                }
            }
        }
        for (&(i, j), map) in &transitions {
            if i >= n || j >= n || !leq[i][j] {
                return Err(Error::InvalidSystem(format!("transition ({i},{j}) for unrelated pair")));
            }
            if **map.domain() != *acts[i] || **map.codomain() != *acts[j] {
                return Err(Error::InvalidSystem(format!("transition ({i},{j}) has wrong endpoints")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] && !transitions.contains_key(&(i, j)) {
                    return Err(Error::InvalidSystem(format!("missing transition ({i},{j})")));
                }
            }
            if transitions[&(i, i)].values().iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::InvalidSystem(format!("transition ({i},{i}) is not the identity")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if !leq[j][k] {
                        continue;
                    }
                    let (ij, jk, ik) = (&transitions[&(i, j)], &transitions[&(j, k)], &transitions[&(i, k)]);
                    if (0..acts[i].size()).any(|x| jk.apply(ij.apply(x)) != ik.apply(x)) {
                        return Err(Error::InvalidSystem(format!(
                            "composite through {j} differs from transition ({i},{k})"
                        )));
                    }
                }
            }
        }
        Ok(DirectSystem { leq, acts, transitions })
    }

    /// Builds the system generated by a set of edges: the preorder is the
    /// reflexive-transitive closure and transitions are composites along paths,
    /// which must all agree.
    pub fn generated(acts: Vec<Arc<FiniteAct>>, edges: Vec<ActMap>, endpoints: &[(usize, usize)]) -> Result<Self> {
        let n = acts.len();
        if edges.len() != endpoints.len() {
            return Err(Error::InvalidSystem("one endpoint pair per edge".into()));
        }
        let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(i, j)) in endpoints.iter().enumerate() {
            if i >= n || j >= n {
                return Err(Error::InvalidSystem(format!("edge ({i},{j}) out of range")));
            }
            out[i].push((j, e));
        }
        let mut leq = vec![vec![false; n]; n];
        let mut transitions = BTreeMap::new();
        for i in 0..n {
            leq[i][i] = true;
            transitions.insert((i, i), ActMap::identity(&acts[i]));
            let mut queue = VecDeque::from([i]);
            while let Some(j) = queue.pop_front() {
                for &(k, e) in &out[j] {
                    if leq[i][k] {
                        continue;
                    }
                    leq[i][k] = true;
                    let composite = transitions[&(i, j)].then(&edges[e])?;
                    transitions.insert((i, k), composite);
                    queue.push_back(k);
                }
            }
        }
        let system = DirectSystem::new(leq, acts, transitions)?;
        for (e, &(i, j)) in endpoints.iter().enumerate() {
            if edges[e].values() != system.transition(i, j).values() {
                return Err(Error::InvalidSystem(format!("edge ({i},{j}) disagrees with another path")));
            }
        }
        Ok(system)
    }

    /// The chain `X_0 -> X_1 -> ... -> X_n` given its consecutive maps.
    pub fn chain(maps: &[ActMap]) -> Result<Self> {
        let first = maps.first().ok_or_else(|| Error::InvalidSystem("empty chain".into()))?;
        let mut acts = vec![first.domain().clone()];
        for (i, m) in maps.iter().enumerate() {
            if **m.domain() != *acts[i] {
                return Err(Error::MapMismatch);
            }
            acts.push(m.codomain().clone());
        }
        let endpoints: Vec<(usize, usize)> = (0..maps.len()).map(|i| (i, i + 1)).collect();
        DirectSystem::generated(acts, maps.to_vec(), &endpoints)
    }

    pub fn len(&self) -> usize {
        self.acts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acts.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn act(&self, i: usize) -> &Arc<FiniteAct> {
        &self.acts[i]
    }

    pub fn acts(&self) -> &[Arc<FiniteAct>] {
        &self.acts
    }

    /// `φ_{i,j}`; panics unless `i <= j`.
    pub fn transition(&self, i: usize, j: usize) -> &ActMap {
        &self.transitions[&(i, j)]
    }

    pub fn transitions(&self) -> &BTreeMap<(usize, usize), ActMap> {
        &self.transitions
    }

    /// First pair without a common upper bound, if any.
    pub fn directedness_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !(0..n).any(|k| self.leq[i][k] && self.leq[j][k]))
    }

    pub fn is_directed(&self) -> bool {
        self.directedness_witness().is_none()
    }
}

#[derive(Debug, Clone)]
pub struct Cocone {
    pub apex: Arc<FiniteAct>,
    pub legs: Vec<ActMap>,
}

impl Cocone {
    pub fn validate(&self, system: &DirectSystem) -> Result<()> {
        if self.legs.len() != system.len() {
            return Err(Error::InvalidSystem("one leg per index".into()));
        }
        for (i, leg) in self.legs.iter().enumerate() {
            if **leg.domain() != **system.act(i) || **leg.codomain() != *self.apex {
                return Err(Error::InvalidSystem(format!("leg {i} has wrong endpoints")));
            }
        }
        for (&(i, j), phi) in system.transitions() {
            if (0..system.act(i).size()).any(|x| self.legs[j].apply(phi.apply(x)) != self.legs[i].apply(x)) {
                return Err(Error::InvalidSystem(format!("cocone condition fails at ({i},{j})")));
            }
        }
        Ok(())
    }
}

fn coproduct_of(system: &DirectSystem) -> Result<(Arc<FiniteAct>, Vec<ActMap>, Vec<usize>)> {
    let (sum, injections) = coproduct(system.acts())?;
    let mut offsets = Vec::with_capacity(system.len());
    let mut acc = 0;
    for a in system.acts() {
        offsets.push(acc);
        acc += a.size();
    }
    Ok((sum, injections, offsets))
}

fn cocone_from(rho: &Congruence, injections: &[ActMap]) -> Result<Cocone> {
    let (apex, q) = rho.quotient_act();
    let legs = injections.iter().map(|l| l.then(&q)).collect::<Result<Vec<_>>>()?;
    Ok(Cocone { apex, legs })
}

fn generated_congruence(system: &DirectSystem) -> Result<(Congruence, Vec<ActMap>)> {
    let (sum, injections, offsets) = coproduct_of(system)?;
    let pairs: Vec<(usize, usize)> = system
        .transitions()
        .iter()
        .flat_map(|(&(i, j), phi)| {
            let (oi, oj) = (offsets[i], offsets[j]);
            (0..system.act(i).size()).map(move |x| (oi + x, oj + phi.apply(x)))
        })
        .collect();
    Ok((Congruence::generated(&sum, &pairs)?, injections))
}

/// Colimit as the coproduct modulo the congruence generated by
/// `λ_i(x) ~ λ_j(φ_{i,j}(x))`.
pub fn colimit(system: &DirectSystem) -> Result<Cocone> {
    let (rho, injections) = generated_congruence(system)?;
    cocone_from(&rho, &injections)
}

/// The relation `λ_i(x) ~ λ_j(y)` iff `φ_{i,k}(x) = φ_{j,k}(y)` for some
/// `k >= i, j`, computed without any closure step.
pub fn directed_relation(system: &DirectSystem) -> Result<Vec<Vec<bool>>> {
    if let Some((i, j)) = system.directedness_witness() {
        return Err(Error::NotDirected(i, j));
    }
    let n = system.len();
    let (_, _, offsets) = coproduct_of(system)?;
    let total: usize = system.acts().iter().map(|a| a.size()).sum();
    let mut rel = vec![vec![false; total]; total];
    for i in 0..n {
        for j in 0..n {
            for k in (0..n).filter(|&k| system.leq(i, k) && system.leq(j, k)) {
                let (pik, pjk) = (system.transition(i, k), system.transition(j, k));
                for x in 0..system.act(i).size() {
                    for y in 0..system.act(j).size() {
                        if pik.apply(x) == pjk.apply(y) {
                            rel[offsets[i] + x][offsets[j] + y] = true;
                        }
                    }
                }
            }
        }
    }
    Ok(rel)
}

/// Directed colimit built from [`directed_relation`]. Fails with
/// `Inconsistent` if the relation is not a congruence and with
/// `ColimitMismatch` if it differs from the generated congruence.
pub fn directed_colimit(system: &DirectSystem) -> Result<Cocone> {
    let rel = directed_relation(system)?;
    let total = rel.len();
    for a in 0..total {
        for b in 0..total {
            if rel[a][b] && !rel[b][a] {
                return Err(Error::Inconsistent(format!("directed relation not symmetric at ({a},{b})")));
            }
            if rel[a][b] && (0..total).any(|c| rel[b][c] && !rel[a][c]) {
                return Err(Error::Inconsistent(format!("directed relation not transitive at ({a},{b})")));
            }
        }
    }
    let mut labels = vec![usize::MAX; total];
    let mut next = 0;
    for a in 0..total {
        if labels[a] == usize::MAX {
            for b in a..total {
                if rel[a][b] {
                    labels[b] = next;
                }
            }
            next += 1;
        }
    }
    let (generated, injections) = generated_congruence(system)?;
    let direct = Congruence::from_class_map(generated.act(), labels)?;
    if direct.class_map() != generated.class_map() {
        return Err(Error::ColimitMismatch);
    }
    cocone_from(&direct, &injections)
}

/// Number of maps `ψ: apex -> probe.apex` with `ψ ∘ α_i = β_i` for all `i`,
/// stopping early once two are found.
pub fn mediating_maps(system: &DirectSystem, cone: &Cocone, probe: &Cocone) -> Result<Vec<ActMap>> {
    probe.validate(system)?;
    let size = cone.apex.size();
    let mut required: Vec<Option<usize>> = vec![None; size];
    let mut conflict = vec![false; size];
    for (leg, target) in cone.legs.iter().zip(&probe.legs) {
        for x in 0..leg.domain().size() {
            let (a, b) = (leg.apply(x), target.apply(x));
            match required[a] {
                None => required[a] = Some(b),
                Some(prev) if prev != b => conflict[a] = true,
                Some(_) => {}
            }
        }
    }
    let allowed = |a: usize, b: usize| !conflict[a] && required[a].is_none_or(|r| r == b);
    let mut found = Vec::new();
    for_each_hom(&cone.apex, &probe.apex, HomQuery::allowed(&allowed), &mut |v| {
        found.push(ActMap::new_unchecked(&cone.apex, &probe.apex, v.to_vec()));
        if found.len() > 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// True iff every probe factors through `cone` in exactly one way.
pub fn verify_universal_property(system: &DirectSystem, cone: &Cocone, probes: &[Cocone]) -> Result<bool> {
    cone.validate(system)?;
    for probe in probes {
        if mediating_maps(system, cone, probe)?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every cocone of the system with the given apex, found by choosing one hom
/// per index and pruning on the cocone condition. At most `limit` are returned.
pub fn cocones_into(system: &DirectSystem, apex: &Arc<FiniteAct>, limit: usize) -> Result<Vec<Cocone>> {
    let options: Vec<Vec<ActMap>> = system.acts().iter().map(|x| homs(x, apex)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn compatible(system: &DirectSystem, options: &[Vec<ActMap>], chosen: &[usize]) -> bool {
        let j = chosen.len() - 1;
        let beta_j = &options[j][chosen[j]];
        (0..j).all(|i| {
            let beta_i = &options[i][chosen[i]];
            let check = |a: usize, b: usize, fa: &ActMap, fb: &ActMap| {
                let phi = system.transition(a, b);
                (0..system.act(a).size()).all(|x| fb.apply(phi.apply(x)) == fa.apply(x))
            };
            (!system.leq(i, j) || check(i, j, beta_i, beta_j)) && (!system.leq(j, i) || check(j, i, beta_j, beta_i))
        })
    }
    fn go(
        system: &DirectSystem,
        options: &[Vec<ActMap>],
        apex: &Arc<FiniteAct>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Cocone>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if chosen.len() == options.len() {
            let legs = chosen.iter().enumerate().map(|(i, &c)| options[i][c].clone()).collect();
            out.push(Cocone { apex: apex.clone(), legs });
            return;
        }
        for c in 0..options[chosen.len()].len() {
            chosen.push(c);
            if compatible(system, options, chosen) {
                go(system, options, apex, chosen, out, limit);
            }
            chosen.pop();
        }
    }
    go(system, &options, apex, &mut chosen, &mut out, limit);
    Ok(out)
}

/// The map between colimits induced by a compatible family `ψ_i: X_i -> Y_i`
/// over the same index preorder.
pub fn colimit_of_maps(dx: &DirectSystem, dy: &DirectSystem, psi: &[ActMap]) -> Result<ActMap> {
    if dx.relation() != dy.relation() {
        return Err(Error::InvalidSystem("systems have different index preorders".into()));
    }
    if psi.len() != dx.len() {
        return Err(Error::InvalidSystem("one map per index".into()));
    }
    for (i, p) in psi.iter().enumerate() {
        if **p.domain() != **dx.act(i) || **p.codomain() != **dy.act(i) {
            return Err(Error::MapMismatch);
        }
    }
    for (&(i, j), phi) in dx.transitions() {
        let theta = dy.transition(i, j);
        if (0..dx.act(i).size()).any(|x| psi[j].apply(phi.apply(x)) != theta.apply(psi[i].apply(x))) {
            return Err(Error::SquaresDoNotCommute(i, j));
        }
    }
    let cx = colimit(dx)?;
    let cy = colimit(dy)?;
    let mut values: Vec<Option<usize>> = vec![None; cx.apex.size()];
    for (i, leg) in cx.legs.iter().enumerate() {
        for x in 0..dx.act(i).size() {
            let target = cy.legs[i].apply(psi[i].apply(x));
            match values[leg.apply(x)] {
                None => values[leg.apply(x)] = Some(target),
                Some(t) if t != target => {
                    return Err(Error::Inconsistent("induced map is not well defined".into()));
                }
                Some(_) => {}
            }
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.ok_or_else(|| Error::Inconsistent("colimit legs are not jointly onto".into())))
        .collect::<Result<Vec<_>>>()?;
    ActMap::new(&cx.apex, &cy.apex, values)
}

/// Index shapes used when sampling systems. Edges generate the preorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Chain2,
    Chain3,
    Chain4,
    /// Two incomparable indices below a common top.
    VTop,
    Diamond,
    /// Two mutually inverse isomorphisms between indices 0 and 1, both
    /// below index 2.
    IsoCycle,
}

impl Shape {
    pub const ALL: [Shape; 6] =
        [Shape::Chain2, Shape::Chain3, Shape::Chain4, Shape::VTop, Shape::Diamond, Shape::IsoCycle];

    pub fn indices(self) -> usize {
        match self {
            Shape::Chain2 => 2,
            Shape::Chain3 | Shape::VTop | Shape::IsoCycle => 3,
            Shape::Chain4 | Shape::Diamond => 4,
        }
    }

    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Shape::Chain2 => &[(0, 1)],
            Shape::Chain3 => &[(0, 1), (1, 2)],
            Shape::Chain4 => &[(0, 1), (1, 2), (2, 3)],
            Shape::VTop => &[(0, 2), (1, 2)],
            Shape::Diamond => &[(0, 1), (0, 2), (1, 3), (2, 3)],
            Shape::IsoCycle => &[(0, 1), (1, 0), (0, 2)],
        }
    }

    /// Index that must carry the same act as index 0.
    pub fn tied(self) -> Option<usize> {
        matches!(self, Shape::IsoCycle).then_some(1)
    }
}

/// Chooses one map per edge of `shape` at random among those accepted by
/// `accept(edge, map)` and compatible with the composites fixed so far.
/// Returns `None` when some edge has no admissible map.
pub fn sample_system<R: rand::Rng>(
    rng: &mut R,
    shape: Shape,
    acts: &[Arc<FiniteAct>],
    accept: &dyn Fn(usize, &ActMap) -> bool,
) -> Result<Option<DirectSystem>> {
    let n = shape.indices();
    if acts.len() != n {
        return Err(Error::InvalidSystem(format!("shape needs {n} acts")));
    }
    let mut paths: BTreeMap<(usize, usize), ActMap> = (0..n).map(|i| ((i, i), ActMap::identity(&acts[i]))).collect();
    let mut chosen = Vec::new();
    for (e, &(i, j)) in shape.edges().iter().enumerate() {
        let consistent = |phi: &ActMap| {
            paths.iter().all(|(&(a, b), p)| {
                let via = if b == i {
                    paths
                        .get(&(a, j))
                        .map(|target| (0..p.domain().size()).all(|x| phi.apply(p.apply(x)) == target.apply(x)))
                } else {
                    None
                };
                let from = if a == j {
                    paths
                        .get(&(i, b))
                        .map(|target| (0..phi.domain().size()).all(|x| p.apply(phi.apply(x)) == target.apply(x)))
                } else {
                    None
                };
                via.unwrap_or(true) && from.unwrap_or(true)
            })
        };
        let candidates: Vec<ActMap> =
            homs(&acts[i], &acts[j])?.into_iter().filter(|phi| accept(e, phi) && consistent(phi)).collect();
        if candidates.is_empty() {
            return Ok(None);
        }
        let phi = candidates[rng.gen_range(0..candidates.len())].clone();
        let mut added = Vec::new();
        for (&(a, b), p) in &paths {
            if b != i {
                continue;
            }
            let left = p.then(&phi)?;
            for (&(c, d), q) in &paths {
                if c == j && !paths.contains_key(&(a, d)) {
                    added.push(((a, d), left.then(q)?));
                }
            }
        }
        paths.extend(added);
        chosen.push(phi);
    }
    match DirectSystem::generated(acts.to_vec(), chosen, shape.edges()) {
        Ok(system) => Ok(Some(system)),
        Err(Error::InvalidSystem(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::union_of_chain;
    use crate::hom::find_iso;
    use crate::monoid::standard_monoid;
    use crate::FiniteMonoid;

    fn m(name: &str, n: usize) -> Arc<FiniteMonoid> {
        Arc::new(standard_monoid(name, &[n]).unwrap())
    }

    #[test]
    fn single_index_and_coproduct() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        let one = DirectSystem::new(vec![vec![true]], vec![reg.clone()], BTreeMap::new()).unwrap();
        let c = directed_colimit(&one).unwrap();
        assert!(find_iso(&c.apex, &reg).is_some());

        let theta = Arc::new(FiniteAct::theta(&z2));
        let two = DirectSystem::new(
            vec![vec![true, false], vec![false, true]],
            vec![reg.clone(), theta.clone()],
            BTreeMap::new(),
        )
        .unwrap();
        assert!(matches!(directed_colimit(&two), Err(Error::NotDirected(0, 1))));
        let c = colimit(&two).unwrap();
        let (sum, _) = coproduct(&[reg, theta]).unwrap();
        assert!(find_iso(&c.apex, &sum).is_some());
    }

    #[test]
    fn quotient_chain() {
        let chain3 = m("semilattice_chain", 3);
        let reg = Arc::new(FiniteAct::regular(&chain3));
        let rho1 = Congruence::generated(&reg, &[(1, 2)]).unwrap();
        let rho2 = Congruence::generated(&reg, &[(1, 2), (0, 1)]).unwrap();
        let (q1, f1) = rho1.quotient_act();
        let (q2, f2) = rho2.quotient_act();
        let step = ActMap::new(&q1, &q2, (0..q1.size()).map(|c| f2.apply(f1.fiber(c)[0])).collect()).unwrap();
        let system = DirectSystem::chain(&[f1, step]).unwrap();
        let c = directed_colimit(&system).unwrap();
        let union = union_of_chain(&[Congruence::identity(&reg), rho1, rho2]).unwrap();
        assert!(find_iso(&c.apex, &union.quotient_act().0).is_some());
    }

    #[test]
    fn functoriality_is_checked() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        let swap = ActMap::new(&reg, &reg, vec![1, 0]).unwrap();
        // a 2-cycle of indices forces the round trip to be the identity
        let bad = DirectSystem::generated(
            vec![reg.clone(), reg.clone()],
            vec![swap.clone(), ActMap::identity(&reg)],
            &[(0, 1), (1, 0)],
        );
        assert!(matches!(bad, Err(Error::InvalidSystem(_))));
        let good = DirectSystem::generated(vec![reg.clone(), reg.clone()], vec![swap.clone(), swap], &[(0, 1), (1, 0)])
            .unwrap();
        let c = directed_colimit(&good).unwrap();
        assert_eq!(c.apex.size(), 2);
    }

    #[test]
    fn universal_property_and_probes() {
        let chain2 = m("semilattice_chain", 2);
        let reg = Arc::new(FiniteAct::regular(&chain2));
        let theta = Arc::new(FiniteAct::theta(&chain2));
        let system = DirectSystem::chain(&[ActMap::identity(&reg), ActMap::to_theta(&reg)]).unwrap();
        let c = directed_colimit(&system).unwrap();
        assert_eq!(c.apex.size(), 1);
        assert!(verify_universal_property(&system, &c, &[c.clone()]).unwrap());
        let into_theta = cocones_into(&system, &theta, 10).unwrap();
        assert_eq!(into_theta.len(), 1);
        let into_reg = cocones_into(&system, &reg, 10).unwrap();
        assert!(verify_universal_property(&system, &c, &into_theta).unwrap());
        assert!(verify_universal_property(&system, &c, &into_reg).unwrap());
    }

    #[test]
    fn sampled_systems_are_valid() {
        use rand::{Rng, SeedableRng};
        let t2 = m("full_transformation", 2);
        let acts = crate::corpus::acts_up_to_iso(&t2, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for shape in Shape::ALL {
            let mut built = 0;
            for _ in 0..50 {
                let mut chosen: Vec<_> =
                    (0..shape.indices()).map(|_| acts[rng.gen_range(0..acts.len())].clone()).collect();
                if let Some(t) = shape.tied() {
                    chosen[t] = chosen[0].clone();
                }
                if let Some(d) = sample_system(&mut rng, shape, &chosen, &|_, _| true).unwrap() {
                    assert!(d.is_directed());
                    directed_colimit(&d).unwrap();
                    built += 1;
                }
            }
            assert!(built >= 5, "{shape:?}: {built}");
        }
    }

    #[test]
    fn maps_between_systems() {
        let z2 = m("cyclic_group", 2);
        let reg = Arc::new(FiniteAct::regular(&z2));
        let d = DirectSystem::chain(&[ActMap::identity(&reg)]).unwrap();
        let id = ActMap::identity(&reg);
        let f = colimit_of_maps(&d, &d, &[id.clone(), id.clone()]).unwrap();
        assert!(f.values().iter().enumerate().all(|(x, &y)| x == y));
        let swap = ActMap::new(&reg, &reg, vec![1, 0]).unwrap();
        assert!(matches!(colimit_of_maps(&d, &d, &[id, swap]), Err(Error::SquaresDoNotCommute(0, 1))));
    }
}
