//! Exhaustive generation of small monoids and acts, up to isomorphism.
//!
//! Acts of size `n` over `S` are enumerated by assigning a transformation of
//! `{0..n}` to each element of a minimum generating set of `S` and closing
//! under words; inconsistent assignments are discarded. Isomorphism classes
//! are identified by the lexicographically least relabeled table.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::FiniteAct;
use crate::error::{Error, Result};
use crate::monoid::{Builder, FiniteMonoid};

pub const MAX_CORPUS_MONOID_ORDER: usize = 4;
pub const MAX_CORPUS_ACT_SIZE: usize = 5;
/// Candidate action tables tried per (monoid, size) before giving up.
pub const MAX_ACT_CANDIDATES: u64 = 50_000_000;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            let j = if k % 2 == 0 { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    heap(n, &mut perm, &mut out);
    out.sort();
    out
}

/// Least generating set of the monoid, found by trying subsets of
/// non-identity elements in order of size.
pub fn minimum_generating_set(m: &FiniteMonoid) -> Vec<usize> {
    let candidates: Vec<usize> = m.elements().filter(|&x| x != m.identity()).collect();
    let generated = |gens: &[usize]| {
        let mut seen = vec![false; m.size()];
        seen[m.identity()] = true;
        let mut stack = vec![m.identity()];
        while let Some(w) = stack.pop() {
            for &g in gens {
                let wg = m.mul(w, g);
                if !seen[wg] {
                    seen[wg] = true;
                    stack.push(wg);
                }
            }
        }
        seen.iter().all(|&b| b)
    };
    for k in 0..=candidates.len() {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            let gens: Vec<usize> = comb.iter().map(|&i| candidates[i]).collect();
            if generated(&gens) {
                return gens;
            }
            // advance combination
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if comb[i] < candidates.len() - k + i {
                    comb[i] += 1;
                    for j in i + 1..k {
                        comb[j] = comb[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    candidates
}

/// Lexicographically least relabeling of an action table.
pub fn canonical_act_table(act: &FiniteAct, perms: &[Vec<usize>]) -> Vec<usize> {
    perms.iter().map(|order| act.relabel(order).flat().to_vec()).min().expect("at least one permutation")
}

/// Every act with exactly `size` elements over `monoid`, one per
/// isomorphism class, ordered by canonical table.
pub fn acts_up_to_iso(monoid: &Arc<FiniteMonoid>, size: usize) -> Result<Vec<Arc<FiniteAct>>> {
    if size == 0 {
        return Err(Error::EmptyAct);
    }
    if size > MAX_CORPUS_ACT_SIZE {
        return Err(Error::TooLarge { size, cap: MAX_CORPUS_ACT_SIZE });
    }
    let gens = minimum_generating_set(monoid);
    let per_gen = (size as u64).pow(size as u32);
    let total = per_gen.checked_pow(gens.len() as u32).unwrap_or(u64::MAX);
    if total > MAX_ACT_CANDIDATES {
        return Err(Error::TooLarge { size: total as usize, cap: MAX_ACT_CANDIDATES as usize });
    }
    let k = monoid.size();
    let perms = permutations(size);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut choice = vec![0u64; gens.len()];
    let decode = |code: u64| -> Vec<usize> {
        let mut c = code;
        (0..size)
            .map(|_| {
                let v = (c % size as u64) as usize;
                c /= size as u64;
                v
            })
            .collect()
    };
    // transformation of each monoid element, as image vectors
    let mut transforms: Vec<Option<Vec<usize>>> = vec![None; k];
    'outer: loop {
        transforms.iter_mut().for_each(|t| *t = None);
        transforms[monoid.identity()] = Some((0..size).collect());
        let gen_maps: Vec<Vec<usize>> = choice.iter().map(|&c| decode(c)).collect();
        let mut stack = vec![monoid.identity()];
        let mut consistent = true;
        'close: while let Some(w) = stack.pop() {
            let tw = transforms[w].clone().expect("set before push");
            for (gi, &g) in gens.iter().enumerate() {
                let wg = monoid.mul(w, g);
                let t: Vec<usize> = tw.iter().map(|&a| gen_maps[gi][a]).collect();
                match &transforms[wg] {
                    None => {
                        transforms[wg] = Some(t);
                        stack.push(wg);
                    }
                    Some(existing) if *existing != t => {
                        consistent = false;
                        break 'close;
                    }
                    Some(_) => {}
                }
            }
        }
        if consistent {
            let mut action = vec![0; size * k];
            for (s, t) in transforms.iter().enumerate() {
                let t = t.as_ref().expect("generators generate");
                for a in 0..size {
                    action[a * k + s] = t[a];
                }
            }
            let act = FiniteAct::from_flat(monoid, size, action)?;
            found.insert(canonical_act_table(&act, &perms));
        }
        // next assignment
        for c in choice.iter_mut() {
            *c += 1;
            if *c < per_gen {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    Ok(found.into_iter().map(|table| Arc::new(FiniteAct::from_flat_unchecked(monoid, size, table))).collect())
}

/// Canonical table of a monoid under relabelings sending the identity to 0.
pub fn canonical_monoid_table(m: &FiniteMonoid) -> Vec<usize> {
    let n = m.size();
    let others: Vec<usize> = m.elements().filter(|&x| x != m.identity()).collect();
    let mut best: Option<Vec<usize>> = None;
    for p in permutations(n - 1) {
        // new index i+1 is old others[p[i]]; new 0 is the identity
        let mut order = vec![m.identity()];
        order.extend(p.iter().map(|&i| others[i]));
        let mut pos = vec![0; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let table: Vec<usize> =
            order.iter().flat_map(|&a| order.iter().map(move |&b| (a, b))).map(|(a, b)| pos[m.mul(a, b)]).collect();
        if best.as_ref().is_none_or(|b| table < *b) {
            best = Some(table);
        }
    }
    best.expect("non-empty")
}

/// All monoids of exactly this order up to isomorphism, identity at 0, by
/// canonical table.
pub fn monoids_up_to_iso(order: usize) -> Result<Vec<FiniteMonoid>> {
    if order == 0 {
        return Ok(Vec::new());
    }
    if order > MAX_CORPUS_MONOID_ORDER {
        return Err(Error::TooLarge { size: order, cap: MAX_CORPUS_MONOID_ORDER });
    }
    let free = (order - 1) * (order - 1);
    let mut found = BTreeSet::new();
    let mut cells = vec![0usize; free];
    loop {
        let mut table = vec![0; order * order];
        for s in 0..order {
            table[s] = s;
            table[s * order] = s;
        }
        for (i, &v) in cells.iter().enumerate() {
            let (r, c) = (i / (order - 1) + 1, i % (order - 1) + 1);
            table[r * order + c] = v;
        }
        if let Ok(m) = FiniteMonoid::from_flat(order, table, 0) {
            found.insert(canonical_monoid_table(&m));
        }
        let mut i = 0;
        loop {
            if i == free {
                return Ok(found
                    .into_iter()
                    .map(|t| FiniteMonoid::from_flat(order, t, 0).expect("validated"))
                    .collect());
            }
            cells[i] += 1;
            if cells[i] < order {
                break;
            }
            cells[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub max_monoid_order: usize,
    pub max_act_size: usize,
    pub builders: Vec<String>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_monoid_order: 3,
            max_act_size: 4,
            builders: [
                "semilattice_chain(2)",
                "cyclic_group(2)",
                "cyclic_group(3)",
                "symmetric_inverse(2)",
                "full_transformation(2)",
            ]
            .map(String::from)
            .to_vec(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusMonoid {
    pub name: String,
    pub monoid: Arc<FiniteMonoid>,
    /// Acts of size `1..=max_act_size`, by size then canonical table.
    pub acts: Vec<Arc<FiniteAct>>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub spec: CorpusSpec,
    pub monoids: Vec<CorpusMonoid>,
}

/// Named builders first, then every enumerated monoid not isomorphic to an
/// earlier entry. Monoids larger than the enumeration cap are compared by
/// canonical table only when small enough to relabel.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    if spec.max_monoid_order > MAX_CORPUS_MONOID_ORDER {
        return Err(Error::TooLarge { size: spec.max_monoid_order, cap: MAX_CORPUS_MONOID_ORDER });
    }
    if spec.max_act_size > MAX_CORPUS_ACT_SIZE {
        return Err(Error::TooLarge { size: spec.max_act_size, cap: MAX_CORPUS_ACT_SIZE });
    }
    let mut named: Vec<(String, FiniteMonoid)> = Vec::new();
    for b in &spec.builders {
        let builder: Builder = b.parse()?;
        named.push((builder.to_string(), builder.build()?));
    }
    for order in 1..=spec.max_monoid_order {
        for (i, m) in monoids_up_to_iso(order)?.into_iter().enumerate() {
            named.push((format!("order{order}#{i}"), m));
        }
    }
    let mut seen: HashMap<Vec<usize>, String> = HashMap::new();
    let mut monoids = Vec::new();
    for (name, m) in named {
        if m.size() <= 8 {
            let key = canonical_monoid_table(&m);
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, name.clone());
        }
        let monoid = Arc::new(m);
        let mut acts = Vec::new();
        for size in 1..=spec.max_act_size {
            acts.extend(acts_up_to_iso(&monoid, size)?);
        }
        monoids.push(CorpusMonoid { name, monoid, acts });
    }
    Ok(Corpus { spec: spec.clone(), monoids })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::standard_monoid;

    #[test]
    fn monoid_counts() {
        assert_eq!(monoids_up_to_iso(1).unwrap().len(), 1);
        let two = monoids_up_to_iso(2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().any(FiniteMonoid::is_group));
        assert!(two.iter().any(|m| m.idempotents().elements.len() == 2));
        // 7 monoids of order 3 up to isomorphism, 35 of order 4
        assert_eq!(monoids_up_to_iso(3).unwrap().len(), 7);
        assert_eq!(monoids_up_to_iso(4).unwrap().len(), 35);
    }

    #[test]
    fn act_counts() {
        for m in monoids_up_to_iso(3).unwrap() {
            let m = Arc::new(m);
            let ones = acts_up_to_iso(&m, 1).unwrap();
            assert_eq!(ones.len(), 1);
            assert_eq!(*ones[0], FiniteAct::theta(&m));
        }
        let z2 = Arc::new(standard_monoid("cyclic_group", &[2]).unwrap());
        assert_eq!(acts_up_to_iso(&z2, 2).unwrap().len(), 2);
        // Z2-acts are involutions, classified by their number of 2-cycles
        assert_eq!(acts_up_to_iso(&z2, 3).unwrap().len(), 2);
        assert_eq!(acts_up_to_iso(&z2, 4).unwrap().len(), 3);
        // trivial-monoid acts are plain sets
        let triv = Arc::new(FiniteMonoid::trivial());
        assert_eq!(acts_up_to_iso(&triv, 4).unwrap().len(), 1);
    }

    #[test]
    fn generating_sets() {
        let i2 = standard_monoid("symmetric_inverse", &[2]).unwrap();
        assert_eq!(minimum_generating_set(&i2).len(), 2);
        let z3 = standard_monoid("cyclic_group", &[3]).unwrap();
        assert_eq!(minimum_generating_set(&z3).len(), 1);
        assert!(minimum_generating_set(&FiniteMonoid::trivial()).is_empty());
    }

    #[test]
    fn default_corpus_dedups_builders() {
        let spec = CorpusSpec { max_act_size: 2, ..Default::default() };
        let corpus = generate_corpus(&spec).unwrap();
        // 1 + 2 + 7 small monoids, plus I_2 and T_2 from the builders
        assert_eq!(corpus.monoids.len(), 12);
        assert_eq!(corpus.monoids[0].name, "semilattice_chain(2)");
    }
}
