//! Property suites over a generated corpus.
//!
//! Each suite checks a family of statements about every relevant corpus
//! object and reports one verdict per property. A failing verdict carries the
//! first counterexample in corpus order, so reports are reproducible.
//! Directed systems with more than two indices are drawn with a fixed seed.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::act::{coproduct, pullback, rees_quotient, ActMap, FiniteAct, Pullback};
use crate::bicyclic::{left_divisors, BicyclicElement};
use crate::colimit::{
    cocones_into, colimit_of_maps, directed_colimit, mediating_maps, sample_system, verify_universal_property, Cocone,
    DirectSystem, Shape,
};
use crate::congruence::{all_congruences, congruences_within, kernel, union_of_chain, Congruence};
use crate::corpus::{Corpus, CorpusMonoid, CorpusSpec};
use crate::cover::{build_precover, find_cover, is_cover, is_precover, is_projective_cover, reduce_to_cover};
use crate::error::{Error, Result};
use crate::flatness::{
    in_class, is_e_unitary, is_p_unitary, projective, satisfies_e, satisfies_p, solve_p_system, ClassId, PSystem,
};
use crate::hom::{find_iso, find_iso_over, homs, section};
use crate::purity::{is_n_pure, is_pure_congruence, is_pure_epi, satisfied_relations};

pub const SUITES: [&str; 10] = [
    "bicyclic-counting",
    "purity-chain",
    "pure-congruence",
    "sf-epi-agreement",
    "e-and-cp-purity",
    "colimits",
    "closure",
    "cover-existence",
    "p-system",
    "unitary",
];

/// Seed for every sampled part of a suite.
pub const SUITE_SEED: u64 = 0x5eed_ac75;
/// Sampled systems per shape and monoid.
pub const SAMPLES_PER_SHAPE: usize = 60;
/// Random systems for the `p-system` suite.
pub const P_SYSTEM_COUNT: usize = 1000;
/// Largest precover carrier searched by the subset oracle for covers.
pub const SUBSET_ORACLE_LIMIT: usize = 14;
/// Cap on congruences enumerated inside the kernel of a cover.
pub const KERNEL_CONGRUENCE_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub property: String,
    pub status: Status,
    /// Number of instances examined.
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// An instance the property asks to exist.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyVerdict {
    fn from_outcomes(property: &str, outcomes: Vec<Option<Value>>) -> Self {
        let checked = outcomes.len() as u64;
        let witness = outcomes.into_iter().flatten().next();
        PropertyVerdict {
            property: property.to_string(),
            status: if witness.is_some() { Status::Fail } else { Status::Pass },
            checked,
            witness,
            example: None,
            note: None,
        }
    }

    fn existence(property: &str, checked: u64, example: Option<Value>) -> Self {
        PropertyVerdict {
            property: property.to_string(),
            status: if example.is_some() { Status::Pass } else { Status::Fail },
            checked,
            witness: None,
            example,
            note: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidSummary {
    pub name: String,
    pub order: usize,
    pub acts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDescription {
    pub spec: CorpusSpec,
    pub monoids: Vec<MonoidSummary>,
}

impl CorpusDescription {
    pub fn of(corpus: &Corpus) -> Self {
        CorpusDescription {
            spec: corpus.spec.clone(),
            monoids: corpus
                .monoids
                .iter()
                .map(|m| MonoidSummary { name: m.name.clone(), order: m.monoid.size(), acts: m.acts.len() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub corpus: CorpusDescription,
    pub properties: Vec<PropertyVerdict>,
    /// Wall-clock time; only filled in on request so reports stay
    /// byte-identical by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.status == Status::Pass)
    }
}

pub fn run_suite(id: &str, corpus: &Corpus) -> Result<Report> {
    run_suite_with(id, corpus, false)
}

pub fn run_suite_with(id: &str, corpus: &Corpus, timing: bool) -> Result<Report> {
    let start = Instant::now();
    let properties = match id {
        "bicyclic-counting" => bicyclic_counting(),
        "purity-chain" => purity_chain(corpus)?,
        "pure-congruence" => pure_congruence(corpus)?,
        "sf-epi-agreement" => sf_epi_agreement(corpus)?,
        "e-and-cp-purity" => e_and_cp_purity(corpus)?,
        "colimits" => colimits(corpus)?,
        "closure" => closure(corpus)?,
        "cover-existence" => cover_existence(corpus)?,
        "p-system" => p_system(corpus)?,
        "unitary" => unitary(corpus)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(Report {
        suite: id.to_string(),
        corpus: CorpusDescription::of(corpus),
        properties,
        timing_ms: timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn map_json(monoid: &CorpusMonoid, f: &ActMap) -> Value {
    json!({
        "monoid": monoid.name,
        "domain": f.domain().rows(),
        "codomain": f.codomain().rows(),
        "values": f.values(),
    })
}

fn error_json(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

fn fail_on_error(r: Result<Option<Value>>) -> Option<Value> {
    r.unwrap_or_else(|e| Some(error_json(&e)))
}

struct CorpusMap<'a> {
    monoid: &'a CorpusMonoid,
    map: ActMap,
}

impl CorpusMap<'_> {
    fn json(&self) -> Value {
        map_json(self.monoid, &self.map)
    }
}

/// Every map between corpus acts accepted by `keep`, in corpus order.
fn corpus_maps<'a>(corpus: &'a Corpus, keep: impl Fn(&ActMap) -> bool + Sync) -> Result<Vec<CorpusMap<'a>>> {
    let triples: Vec<(&CorpusMonoid, &Arc<FiniteAct>, &Arc<FiniteAct>)> = corpus
        .monoids
        .iter()
        .flat_map(|m| m.acts.iter().flat_map(move |x| m.acts.iter().map(move |y| (m, x, y))))
        .collect();
    let per: Vec<Result<Vec<CorpusMap>>> = triples
        .par_iter()
        .map(|&(m, x, y)| {
            Ok(homs(x, y)?.into_iter().filter(|f| keep(f)).map(|map| CorpusMap { monoid: m, map }).collect())
        })
        .collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

fn epis(corpus: &Corpus) -> Result<Vec<CorpusMap<'_>>> {
    corpus_maps(corpus, ActMap::is_epi)
}

fn monos(corpus: &Corpus) -> Result<Vec<CorpusMap<'_>>> {
    corpus_maps(corpus, ActMap::is_mono)
}

// ---------------------------------------------------------------- bicyclic

fn bicyclic_counting() -> Vec<PropertyVerdict> {
    const MAX: u64 = 8;
    let quads: Vec<(u64, u64, u64, u64)> = (0..=MAX)
        .flat_map(|m| (0..=MAX).flat_map(move |n| (0..=MAX).flat_map(move |s| (0..=MAX).map(move |t| (m, n, s, t)))))
        .collect();
    let results: Vec<(Option<Value>, Option<Value>)> = quads
        .par_iter()
        .map(|&(m, n, s, t)| {
            let target = BicyclicElement::new(m, n);
            let right = BicyclicElement::new(s, t);
            let found = match left_divisors(&target, &right, 4 * MAX) {
                Ok(d) => d,
                Err(e) => return (Some(error_json(&e)), Some(error_json(&e))),
            };
            let count = (found.len() as u64 > s + 1)
                .then(|| json!({ "target": [m, n], "right": [s, t], "solutions": found.len() }));
            // every solution has coordinates at most max(m,n) + max(s,t)
            let bound = m.max(n) + s.max(t) + 2;
            let brute: Vec<BicyclicElement> = (0..=bound)
                .flat_map(|p| (0..=bound).map(move |q| BicyclicElement::new(p, q)))
                .filter(|x| x.mul(&right) == target)
                .collect();
            let mut sorted = found.clone();
            sorted.sort_by(|a, b| (&a.p, &a.q).cmp(&(&b.p, &b.q)));
            let oracle = (sorted != brute).then(|| {
                json!({
                    "target": [m, n], "right": [s, t],
                    "found": found.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "brute_force": brute.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                })
            });
            (count, oracle)
        })
        .collect();
    let (count, oracle): (Vec<_>, Vec<_>) = results.into_iter().unzip();

    const ASSOC: u64 = 12;
    let elems: Vec<BicyclicElement> =
        (0..=ASSOC).flat_map(|p| (0..=ASSOC).map(move |q| BicyclicElement::new(p, q))).collect();
    let assoc: Vec<Option<Value>> = elems
        .par_iter()
        .flat_map_iter(|a| {
            let elems = &elems;
            elems.iter().map(move |b| {
                let ab = a.mul(b);
                elems.iter().find_map(|c| {
                    (ab.mul(c) != a.mul(&b.mul(c)))
                        .then(|| json!({ "a": a.to_string(), "b": b.to_string(), "c": c.to_string() }))
                })
            })
        })
        .collect();
    let assoc_checked = (elems.len() as u64).pow(3);
    let mut assoc = PropertyVerdict::from_outcomes("associativity-up-to-12", assoc);
    assoc.checked = assoc_checked;
    vec![
        PropertyVerdict::from_outcomes("left-divisors-at-most-s-plus-1", count),
        PropertyVerdict::from_outcomes("left-divisors-match-brute-force", oracle),
        assoc,
    ]
}

// ------------------------------------------------------------------ purity

#[derive(Clone)]
struct PurityProfile {
    /// `n_pure[n-1]` for n = 1..=4.
    n_pure: [bool; 4],
    pure: bool,
    split: bool,
}

fn purity_profile(g: &ActMap) -> Result<PurityProfile> {
    let mut n_pure = [false; 4];
    for (i, slot) in n_pure.iter_mut().enumerate() {
        *slot = is_n_pure(g, i + 1)?.holds();
    }
    Ok(PurityProfile { n_pure, pure: is_pure_epi(g)?.holds(), split: section(g)?.is_some() })
}

/// Brute-force lift of the whole codomain: tries every choice of preimages.
fn naive_pure(g: &ActMap) -> bool {
    let y = g.codomain();
    let tuple: Vec<usize> = y.elements().collect();
    let family = satisfied_relations(y, &tuple);
    let fibers: Vec<Vec<usize>> = tuple.iter().map(|&b| g.fiber(b)).collect();
    let mut idx = vec![0; fibers.len()];
    loop {
        let candidate: Vec<usize> = idx.iter().zip(&fibers).map(|(&i, f)| f[i]).collect();
        if family.holds_for(g.domain(), &candidate) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < fibers[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn profiles<'a>(maps: &'a [CorpusMap<'a>]) -> Vec<(&'a CorpusMap<'a>, Result<PurityProfile>)> {
    let computed: Vec<Result<PurityProfile>> = maps.par_iter().map(|m| purity_profile(&m.map)).collect();
    maps.iter().zip(computed).collect()
}

fn purity_chain(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let epis = epis(corpus)?;
    let profiled = profiles(&epis);
    let implication = |name: &str, test: &dyn Fn(&PurityProfile) -> bool| {
        let outcomes = profiled
            .iter()
            .map(|(m, p)| match p {
                Ok(p) => (!test(p)).then(|| m.json()),
                Err(e) => Some(error_json(e)),
            })
            .collect();
        PropertyVerdict::from_outcomes(name, outcomes)
    };
    let count = |test: &dyn Fn(&PurityProfile) -> bool| {
        profiled.iter().filter(|(_, p)| p.as_ref().map(test).unwrap_or(false)).count()
    };
    let separations = format!(
        "1-pure but not 2-pure: {}; 2-pure but not pure: {}; pure but not split: {}",
        count(&|p| p.n_pure[0] && !p.n_pure[1]),
        count(&|p| p.n_pure[1] && !p.pure),
        count(&|p| p.pure && !p.split),
    );
    let oracle: Vec<Option<Value>> = epis
        .par_iter()
        .zip(profiled.par_iter())
        .map(|(m, (_, p))| match p {
            Ok(p) => (p.pure != naive_pure(&m.map)).then(|| m.json()),
            Err(e) => Some(error_json(e)),
        })
        .collect();
    Ok(vec![
        implication("pure-implies-2-pure", &|p| !p.pure || p.n_pure[1]),
        implication("2-pure-implies-1-pure", &|p| !p.n_pure[1] || p.n_pure[0]).note(separations),
        implication("n-pure-monotone-up-to-4", &|p| {
            (0..3).all(|i| !p.n_pure[i + 1] || p.n_pure[i]) && (!p.pure || p.n_pure[3])
        }),
        implication("split-implies-pure", &|p| !p.split || p.pure),
        PropertyVerdict::from_outcomes("pure-matches-brute-force-lifting", oracle),
    ])
}

fn pure_congruence(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let per: Vec<Vec<Option<Value>>> = corpus
        .monoids
        .par_iter()
        .map(|m| {
            let regular = Arc::new(FiniteAct::regular(&m.monoid));
            let all = match all_congruences(&regular) {
                Ok(all) => all,
                Err(e) => return vec![Some(error_json(&e))],
            };
            all.iter()
                .map(|rho| {
                    fail_on_error((|| {
                        let pure = is_pure_congruence(rho)?;
                        let sf = in_class(&rho.quotient_act().0, ClassId::SF);
                        Ok((pure != sf).then(
                            || json!({ "monoid": m.name, "classes": rho.class_map(), "pure": pure, "quotient_sf": sf }),
                        ))
                    })())
                })
                .collect()
        })
        .collect();
    Ok(vec![PropertyVerdict::from_outcomes("pure-iff-quotient-strongly-flat", per.into_iter().flatten().collect())])
}

/// The epi `⊔_{y in Y} S -> Y` sending the `y`-th copy of `1` to `y`.
fn free_presentation(y: &Arc<FiniteAct>) -> Result<ActMap> {
    let regular = Arc::new(FiniteAct::regular(y.monoid()));
    let copies = vec![regular; y.size()];
    let (free, _) = coproduct(&copies)?;
    let k = y.monoid().size();
    let values = (0..free.size()).map(|x| y.act(x / k, x % k)).collect();
    ActMap::new(&free, y, values)
}

fn sf_epi_agreement(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let epis = epis(corpus)?;
    let sf_domain: Vec<CorpusMap> = epis.into_iter().filter(|m| in_class(m.map.domain(), ClassId::SF)).collect();
    let agreement: Vec<Option<Value>> = sf_domain
        .par_iter()
        .map(|m| {
            fail_on_error((|| {
                let sf = in_class(m.map.codomain(), ClassId::SF);
                let pure = is_pure_epi(&m.map)?.holds();
                let two = is_n_pure(&m.map, 2)?.holds();
                Ok((sf != pure || pure != two)
                    .then(|| json!({ "map": m.json(), "codomain_sf": sf, "pure": pure, "two_pure": two })))
            })())
        })
        .collect();

    let all_epis = crate::suite::epis(corpus)?;
    let onto_sf: Vec<Option<Value>> = all_epis
        .par_iter()
        .filter(|m| in_class(m.map.codomain(), ClassId::SF))
        .map(|m| fail_on_error(is_pure_epi(&m.map).map(|v| (!v.holds()).then(|| m.json()))))
        .collect();

    let acts: Vec<(&CorpusMonoid, &Arc<FiniteAct>)> =
        corpus.monoids.iter().flat_map(|m| m.acts.iter().map(move |a| (m, a))).collect();
    let free: Vec<Option<Value>> = acts
        .par_iter()
        .map(|&(m, y)| {
            fail_on_error((|| {
                let g = free_presentation(y)?;
                let pure = is_pure_epi(&g)?.holds();
                let sf = in_class(y, ClassId::SF);
                Ok((pure != sf).then(|| json!({ "monoid": m.name, "act": y.rows(), "pure": pure, "sf": sf })))
            })())
        })
        .collect();
    // corpus-relative converse: non-SF codomains reached by an impure corpus epi
    let non_sf: Vec<_> = acts.iter().filter(|(_, y)| !in_class(y, ClassId::SF)).collect();
    let reached = non_sf
        .iter()
        .filter(|(_, y)| {
            all_epis
                .iter()
                .any(|m| Arc::ptr_eq(m.map.codomain(), y) && !is_pure_epi(&m.map).map(|v| v.holds()).unwrap_or(true))
        })
        .count();
    Ok(vec![
        PropertyVerdict::from_outcomes("sf-domain-codomain-sf-iff-pure-iff-2-pure", agreement),
        PropertyVerdict::from_outcomes("epis-onto-sf-acts-are-pure", onto_sf),
        PropertyVerdict::from_outcomes("free-presentation-pure-iff-sf", free).note(format!(
            "corpus-relative converse: {reached} of {} non-SF corpus acts receive an impure corpus epi",
            non_sf.len()
        )),
    ])
}

fn e_and_cp_purity(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let epis = epis(corpus)?;
    let e_domain: Vec<Option<Value>> = epis
        .par_iter()
        .filter(|m| satisfies_e(m.map.domain()).holds())
        .map(|m| {
            fail_on_error((|| {
                let e = satisfies_e(m.map.codomain()).holds();
                let one = is_n_pure(&m.map, 1)?.holds();
                Ok((e != one).then(|| json!({ "map": m.json(), "codomain_e": e, "one_pure": one })))
            })())
        })
        .collect();
    let cp_domain: Vec<&CorpusMap> = epis.iter().filter(|m| satisfies_p(m.map.domain()).holds()).collect();
    let cp: Vec<Option<Value>> = cp_domain
        .par_iter()
        .map(|m| {
            fail_on_error((|| {
                let two = is_n_pure(&m.map, 2)?.holds();
                Ok((two && !satisfies_p(m.map.codomain()).holds()).then(|| m.json()))
            })())
        })
        .collect();
    let mut converse_failures = Vec::new();
    for m in &cp_domain {
        if satisfies_p(m.map.codomain()).holds() && !is_n_pure(&m.map, 2)?.holds() {
            converse_failures.push(*m);
        }
    }
    // the expected instance: the regular act of Z2 onto the one-point act
    let z2_instance = corpus.monoids.iter().find(|m| m.monoid.is_group() && m.monoid.size() == 2).map(|m| {
        let regular = Arc::new(FiniteAct::regular(&m.monoid));
        let g = ActMap::to_theta(&regular);
        let two = is_n_pure(&g, 2).map(|v| v.holds()).unwrap_or(true);
        (m, g, two)
    });
    let mut z2 = PropertyVerdict::existence(
        "z2-regular-onto-point-is-cp-but-not-2-pure",
        1,
        z2_instance.as_ref().and_then(|(m, g, two)| {
            (!two && satisfies_p(g.domain()).holds() && satisfies_p(g.codomain()).holds()).then(|| map_json(m, g))
        }),
    );
    if z2_instance.is_none() {
        z2 = z2.note("corpus has no group of order 2");
    }
    Ok(vec![
        PropertyVerdict::from_outcomes("e-domain-codomain-e-iff-1-pure", e_domain),
        PropertyVerdict::from_outcomes("cp-domain-2-pure-implies-cp-codomain", cp),
        PropertyVerdict::existence(
            "cp-codomain-does-not-imply-2-pure",
            cp_domain.len() as u64,
            converse_failures.first().map(|m| m.json()),
        )
        .note(format!("{} counterexamples to the converse in the corpus", converse_failures.len())),
        z2,
    ])
}

// ---------------------------------------------------------------- colimits

struct CorpusSystem<'a> {
    monoid: &'a CorpusMonoid,
    shape: Shape,
    system: DirectSystem,
}

impl CorpusSystem<'_> {
    fn json(&self) -> Value {
        json!({
            "monoid": self.monoid.name,
            "shape": self.shape,
            "acts": self.system.acts().iter().map(|a| a.rows()).collect::<Vec<_>>(),
            "transitions": self.system.transitions().iter()
                .filter(|((i, j), _)| i != j)
                .map(|((i, j), f)| json!([i, j, f.values()]))
                .collect::<Vec<_>>(),
        })
    }
}

fn shape_seed(monoid: usize, shape: usize, salt: u64) -> u64 {
    SUITE_SEED ^ salt.wrapping_mul(0x9e37_79b9) ^ ((monoid as u64) << 16) ^ shape as u64
}

/// Every two-index chain between accepted acts, plus `SAMPLES_PER_SHAPE`
/// seeded systems of each larger shape, per monoid.
fn corpus_systems<'a>(
    corpus: &'a Corpus,
    accept: impl Fn(&Arc<FiniteAct>) -> bool + Sync,
    salt: u64,
) -> Result<Vec<CorpusSystem<'a>>> {
    let per: Vec<Result<Vec<CorpusSystem>>> = corpus
        .monoids
        .par_iter()
        .enumerate()
        .map(|(mi, m)| {
            let pool: Vec<&Arc<FiniteAct>> = m.acts.iter().filter(|a| accept(a)).collect();
            let mut out = Vec::new();
            if pool.is_empty() {
                return Ok(out);
            }
            for x in &pool {
                for y in &pool {
                    for f in homs(x, y)? {
                        out.push(CorpusSystem { monoid: m, shape: Shape::Chain2, system: DirectSystem::chain(&[f])? });
                    }
                }
            }
            for (si, shape) in Shape::ALL.into_iter().enumerate().skip(1) {
                let mut rng = ChaCha8Rng::seed_from_u64(shape_seed(mi, si, salt));
                let mut made = 0;
                for _ in 0..SAMPLES_PER_SHAPE * 10 {
                    if made == SAMPLES_PER_SHAPE {
                        break;
                    }
                    let mut acts: Vec<Arc<FiniteAct>> =
                        (0..shape.indices()).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
                    if let Some(t) = shape.tied() {
                        acts[t] = acts[0].clone();
                    }
                    if let Some(system) = sample_system(&mut rng, shape, &acts, &|_, _| true)? {
                        out.push(CorpusSystem { monoid: m, shape, system });
                        made += 1;
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

/// Whether the whole apex, with all its relations, lifts along `leg`.
fn apex_lifts_along(leg: &ActMap) -> bool {
    let apex = leg.codomain();
    let tuple: Vec<usize> = apex.elements().collect();
    let fibers: Vec<Vec<usize>> = tuple.iter().map(|&b| leg.fiber(b)).collect();
    if fibers.iter().any(Vec::is_empty) {
        return false;
    }
    let family = satisfied_relations(apex, &tuple);
    let mut idx = vec![0; fibers.len()];
    loop {
        let candidate: Vec<usize> = idx.iter().zip(&fibers).map(|(&i, f)| f[i]).collect();
        if family.holds_for(leg.domain(), &candidate) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < fibers[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Quotient-chain systems `X -> X/ρ1 -> X/ρ2` for every act and every pair
/// `ρ1 ⊆ ρ2`; the colimit must be `X` modulo the union of the chain.
fn quotient_chains(corpus: &Corpus) -> Vec<Option<Value>> {
    let acts: Vec<(&CorpusMonoid, Arc<FiniteAct>)> = corpus
        .monoids
        .iter()
        .flat_map(|m| {
            m.acts.iter().cloned().chain(std::iter::once(Arc::new(FiniteAct::regular(&m.monoid)))).map(move |a| (m, a))
        })
        .collect();
    acts.par_iter()
        .flat_map_iter(|(m, x)| {
            let all = match all_congruences(x) {
                Ok(all) => all,
                Err(e) => return vec![Some(error_json(&e))],
            };
            let mut out = Vec::new();
            for r1 in &all {
                for r2 in all.iter().filter(|r2| r1.is_subset_of(r2)) {
                    out.push(fail_on_error(quotient_chain_case(x, r1, r2).map(|ok| {
                        (!ok).then(|| json!({ "monoid": m.name, "act": x.rows(), "rho1": r1.class_map(), "rho2": r2.class_map() }))
                    })));
                }
            }
            out
        })
        .collect()
}

fn quotient_chain_case(x: &Arc<FiniteAct>, r1: &Congruence, r2: &Congruence) -> Result<bool> {
    let (q1, f1) = r1.quotient_act();
    let (q2, f2) = r2.quotient_act();
    let step = ActMap::new(&q1, &q2, (0..q1.size()).map(|c| f2.apply(f1.fiber(c)[0])).collect())?;
    let system = DirectSystem::chain(&[f1, step])?;
    let cone = directed_colimit(&system)?;
    let union = union_of_chain(&[Congruence::identity(x), r1.clone(), r2.clone()])?;
    let (_, q) = union.quotient_act();
    Ok(find_iso_over(&cone.legs[0], &q).is_some())
}

/// The system `S/ker λ_f -> S/ker λ_e` for idempotents `e <= f` of an
/// inverse monoid, indexed by idempotents in reverse natural order.
pub fn idempotent_kernel_system(monoid: &Arc<crate::FiniteMonoid>) -> Result<(DirectSystem, Vec<usize>)> {
    let regular = Arc::new(FiniteAct::regular(monoid));
    let idem = monoid.idempotents().elements;
    let kernels: Vec<Congruence> = idem
        .iter()
        .map(|&e| {
            let left = ActMap::new(&regular, &regular, monoid.elements().map(|s| monoid.mul(e, s)).collect())?;
            Ok(kernel(&left))
        })
        .collect::<Result<_>>()?;
    let quotients: Vec<(Arc<FiniteAct>, ActMap)> = kernels.iter().map(Congruence::quotient_act).collect();
    let n = idem.len();
    let below = |e: usize, f: usize| monoid.mul(e, f) == e;
    let mut leq = vec![vec![false; n]; n];
    let mut transitions = std::collections::BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if below(idem[j], idem[i]) {
                leq[i][j] = true;
                let (qi, fi) = &quotients[i];
                let (qj, fj) = &quotients[j];
                let values = (0..qi.size()).map(|c| fj.apply(fi.fiber(c)[0])).collect();
                transitions.insert((i, j), ActMap::new(qi, qj, values)?);
            }
        }
    }
    Ok((DirectSystem::new(leq, quotients.into_iter().map(|(a, _)| a).collect(), transitions)?, idem))
}

fn min_group_case(m: &CorpusMonoid) -> Result<Option<Value>> {
    let (system, idem) = idempotent_kernel_system(&m.monoid)?;
    let cone = directed_colimit(&system)?;
    let sigma = m.monoid.min_group_congruence()?;
    let (quotient, q) = sigma.quotient_act();
    let top = idem.iter().position(|&e| e == m.monoid.identity()).expect("identity is idempotent");
    // index of the identity carries S itself; its leg must be the quotient by sigma
    let regular = q.domain().clone();
    let to_top = find_iso(&regular, system.act(top)).ok_or(Error::ColimitMismatch)?;
    let leg = to_top.then(&cone.legs[top])?;
    let matches = find_iso_over(&leg, &q).is_some();
    let pure = is_pure_epi(&q)?.holds();
    let sf = in_class(&quotient, ClassId::SF);
    Ok((!(matches && pure && sf)).then(
        || json!({ "monoid": m.name, "colimit_matches_sigma": matches, "quotient_map_pure": pure, "quotient_sf": sf }),
    ))
}

fn colimits(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let systems = corpus_systems(corpus, |_| true, 1)?;
    let agreement: Vec<Option<Value>> = systems
        .par_iter()
        .map(|s| directed_colimit(&s.system).err().map(|e| json!({ "system": s.json(), "error": e.to_string() })))
        .collect();

    let cones: Vec<Result<Cocone>> = systems.par_iter().map(|s| directed_colimit(&s.system)).collect();
    let leg_mono: Vec<Option<Value>> = systems
        .par_iter()
        .zip(cones.par_iter())
        .map(|(s, cone)| {
            let cone = match cone {
                Ok(c) => c,
                Err(e) => return Some(error_json(e)),
            };
            let d = &s.system;
            (0..d.len())
                .find(|&i| {
                    let all_mono = (0..d.len()).filter(|&k| d.leq(i, k)).all(|k| d.transition(i, k).is_mono());
                    cone.legs[i].is_mono() != all_mono
                })
                .map(|i| json!({ "system": s.json(), "index": i }))
        })
        .collect();
    let lifting: Vec<Option<Value>> = systems
        .par_iter()
        .zip(cones.par_iter())
        .map(|(s, cone)| match cone {
            Ok(c) => (!c.legs.iter().any(apex_lifts_along)).then(|| s.json()),
            Err(e) => Some(error_json(e)),
        })
        .collect();

    // probes: cocones into small corpus acts, for the first systems of each monoid
    let probed: Vec<(usize, &CorpusSystem)> = {
        let mut seen = std::collections::HashMap::new();
        systems
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                let c = seen.entry(s.monoid.name.clone()).or_insert(0);
                *c += 1;
                *c <= 40 || (s.shape != Shape::Chain2 && *c % 4 == 0)
            })
            .collect()
    };
    let probe_results: Vec<(Option<Value>, Vec<Option<Value>>)> = probed
        .par_iter()
        .map(|&(i, s)| {
            let cone = match &cones[i] {
                Ok(c) => c,
                Err(e) => return (Some(error_json(e)), Vec::new()),
            };
            let mut probes = Vec::new();
            for y in s.monoid.acts.iter().filter(|a| a.size() <= 3) {
                match cocones_into(&s.system, y, 8) {
                    Ok(p) => probes.extend(p),
                    Err(e) => return (Some(error_json(&e)), Vec::new()),
                }
            }
            let unique = match verify_universal_property(&s.system, cone, &probes) {
                Ok(true) => None,
                Ok(false) => Some(s.json()),
                Err(e) => Some(error_json(&e)),
            };
            let monos = probes
                .iter()
                .filter(|p| p.legs.iter().all(ActMap::is_mono))
                .map(|p| match mediating_maps(&s.system, cone, p) {
                    Ok(v) => (v.len() != 1 || !v[0].is_mono()).then(|| s.json()),
                    Err(e) => Some(error_json(&e)),
                })
                .collect();
            (unique, monos)
        })
        .collect();
    let (unique, monos): (Vec<_>, Vec<_>) = probe_results.into_iter().unzip();

    let chains = quotient_chains(corpus);
    let inverse: Vec<&CorpusMonoid> = corpus.monoids.iter().filter(|m| m.monoid.is_inverse_monoid().is_ok()).collect();
    let min_group: Vec<Option<Value>> = inverse.iter().map(|m| fail_on_error(min_group_case(m))).collect();
    let has_i2 = inverse.iter().any(|m| m.name == "symmetric_inverse(2)");
    let names: Vec<&str> = inverse.iter().map(|m| m.name.as_str()).collect();

    let by_shape = Shape::ALL
        .iter()
        .map(|sh| format!("{:?}: {}", sh, systems.iter().filter(|s| s.shape == *sh).count()))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(vec![
        PropertyVerdict::from_outcomes("directed-formula-matches-generated-congruence", agreement)
            .note(format!("systems by shape: {by_shape}")),
        PropertyVerdict::from_outcomes("quotient-chain-colimit-is-quotient-by-union", chains),
        {
            let mut v = PropertyVerdict::from_outcomes("idempotent-kernel-system-gives-min-group-quotient", min_group)
                .note(format!("inverse monoids: {}", names.join(", ")));
            if !has_i2 {
                v.status = Status::Fail;
                v.witness = Some(json!({ "missing": "symmetric_inverse(2)" }));
            }
            v
        },
        PropertyVerdict::from_outcomes("unique-mediating-map-for-probe-cocones", unique),
        PropertyVerdict::from_outcomes("leg-mono-iff-later-transitions-mono", leg_mono),
        PropertyVerdict::from_outcomes("apex-lifts-to-a-stage", lifting),
        PropertyVerdict::from_outcomes("compatible-monos-induce-mono", monos.into_iter().flatten().collect()),
    ])
}

// ----------------------------------------------------------------- closure

fn class_closure(corpus: &Corpus, class: ClassId, salt: u64) -> Result<PropertyVerdict> {
    let systems = corpus_systems(corpus, |a| in_class(a, class), salt)?;
    let outcomes = systems
        .par_iter()
        .map(|s| match directed_colimit(&s.system) {
            Ok(c) => (!in_class(&c.apex, class)).then(|| s.json()),
            Err(e) => Some(error_json(&e)),
        })
        .collect();
    Ok(PropertyVerdict::from_outcomes(&format!("{class}-closed-under-directed-colimits"), outcomes))
}

/// Seeded systems of pure epis: `ψ_i: X_i -> Y_i` chosen first, then the
/// maps of the `X` system among those that descend to the `Y` side.
fn pure_epi_systems(corpus: &Corpus) -> Result<Vec<Option<Value>>> {
    let pure_epis: Vec<CorpusMap> =
        epis(corpus)?.into_par_iter().filter(|m| is_pure_epi(&m.map).map(|v| v.holds()).unwrap_or(false)).collect();
    let per: Vec<Result<Vec<Option<Value>>>> = corpus
        .monoids
        .par_iter()
        .enumerate()
        .map(|(mi, m)| {
            let pool: Vec<&ActMap> = pure_epis.iter().filter(|p| std::ptr::eq(p.monoid, m)).map(|p| &p.map).collect();
            let mut out = Vec::new();
            if pool.is_empty() {
                return Ok(out);
            }
            for (si, shape) in Shape::ALL.into_iter().enumerate() {
                let mut rng = ChaCha8Rng::seed_from_u64(shape_seed(mi, si, 3));
                let mut made = 0;
                for _ in 0..SAMPLES_PER_SHAPE * 10 {
                    if made == SAMPLES_PER_SHAPE {
                        break;
                    }
                    let mut psi: Vec<ActMap> =
                        (0..shape.indices()).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
                    if let Some(t) = shape.tied() {
                        psi[t] = psi[0].clone();
                    }
                    let xs: Vec<Arc<FiniteAct>> = psi.iter().map(|p| p.domain().clone()).collect();
                    let descends = |e: usize, phi: &ActMap| {
                        let (i, j) = shape.edges()[e];
                        descend(&psi[i], &psi[j], phi).is_some()
                    };
                    let Some(dx) = sample_system(&mut rng, shape, &xs, &descends)? else { continue };
                    let thetas: Vec<ActMap> = shape
                        .edges()
                        .iter()
                        .map(|&(i, j)| descend(&psi[i], &psi[j], dx.transition(i, j)).expect("filtered"))
                        .collect();
                    let ys: Vec<Arc<FiniteAct>> = psi.iter().map(|p| p.codomain().clone()).collect();
                    let dy = DirectSystem::generated(ys, thetas, shape.edges())?;
                    made += 1;
                    let sys = CorpusSystem { monoid: m, shape, system: dx.clone() };
                    out.push(fail_on_error((|| {
                        let g = colimit_of_maps(&dx, &dy, &psi)?;
                        let ok = g.is_epi() && is_pure_epi(&g)?.holds();
                        Ok((!ok).then(|| json!({ "system": sys.json(), "maps": psi.iter().map(|p| p.values().to_vec()).collect::<Vec<_>>() })))
                    })()));
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

/// The map `θ` with `θ ∘ ψ_i = ψ_j ∘ φ`, when it exists.
fn descend(psi_i: &ActMap, psi_j: &ActMap, phi: &ActMap) -> Option<ActMap> {
    let mut values = vec![usize::MAX; psi_i.codomain().size()];
    for x in 0..psi_i.domain().size() {
        let target = psi_j.apply(phi.apply(x));
        let slot = &mut values[psi_i.apply(x)];
        if *slot == usize::MAX {
            *slot = target;
        } else if *slot != target {
            return None;
        }
    }
    ActMap::new(psi_i.codomain(), psi_j.codomain(), values).ok()
}

fn closure(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let sf = class_closure(corpus, ClassId::SF, 11)?;
    let cp = class_closure(corpus, ClassId::CP, 12)?;
    let pure_systems = pure_epi_systems(corpus)?;

    let pure_epis: Vec<CorpusMap> =
        epis(corpus)?.into_par_iter().filter(|m| is_pure_epi(&m.map).map(|v| v.holds()).unwrap_or(false)).collect();
    let pullbacks: Vec<Option<Value>> = pure_epis
        .par_iter()
        .flat_map_iter(|psi| {
            let y = psi.map.codomain();
            psi.monoid.acts.iter().flat_map(move |z| {
                let betas = homs(z, y).unwrap_or_default();
                betas.into_iter().map(move |beta| {
                    fail_on_error((|| match pullback(&psi.map, &beta)? {
                        Pullback::Empty => {
                            Ok(Some(json!({ "psi": psi.json(), "beta": beta.values(), "pullback": "empty" })))
                        }
                        Pullback::Object { right, .. } => {
                            let ok = right.is_epi() && is_pure_epi(&right)?.holds();
                            Ok((!ok).then(|| json!({ "psi": psi.json(), "beta": beta.values() })))
                        }
                    })())
                })
            })
        })
        .collect();
    Ok(vec![
        sf,
        cp,
        PropertyVerdict::from_outcomes("pure-epis-closed-under-directed-colimits", pure_systems),
        PropertyVerdict::from_outcomes("pullbacks-of-pure-epis-are-pure", pullbacks),
    ])
}

// ------------------------------------------------------------------ covers

/// Least action-closed subset of the precover carrier (by size, then
/// lexicographically) on which the precover restricts to a cover.
fn subset_search_cover(g: &ActMap, class: ClassId) -> Result<Option<ActMap>> {
    let carrier = g.domain();
    let n = carrier.size();
    let orbit_masks: Vec<u32> =
        carrier.elements().map(|x| carrier.orbit(x).ones().fold(0u32, |m, y| m | (1 << y))).collect();
    let mut subsets: Vec<u32> =
        (1u32..(1 << n)).filter(|&b| (0..n).all(|x| b & (1 << x) == 0 || orbit_masks[x] & !b == 0)).collect();
    let elements_of = |b: u32| -> Vec<usize> { (0..n).filter(|&x| b & (1 << x) != 0).collect() };
    subsets.sort_by_key(|&b| (b.count_ones(), elements_of(b)));
    for b in subsets {
        let (sub, inc) = carrier.subact(&elements_of(b))?;
        if !in_class(&sub, class) {
            continue;
        }
        let restricted = inc.then(g)?;
        if is_precover(&restricted, class)?.holds() {
            return Ok(is_cover(&restricted, class)?.holds().then_some(restricted));
        }
    }
    Ok(None)
}

/// Proper subacts `{y : x ∉ yS}` never map onto; no projectivity needed.
fn is_coessential(g: &ActMap) -> bool {
    let c = g.domain();
    let orbits: Vec<_> = c.elements().map(|y| c.orbit(y)).collect();
    c.elements().all(|x| {
        let mut hit = vec![false; g.codomain().size()];
        for y in c.elements().filter(|&y| !orbits[y].contains(x)) {
            hit[g.apply(y)] = true;
        }
        !hit.iter().all(|&h| h)
    })
}

struct CoverCase {
    found: Option<Value>,
    verified: Option<Value>,
    unique: Option<Value>,
    oracle_ran: bool,
    no_pure_congruence: Option<Value>,
    precover_epi: Option<Value>,
    pr_agreement: Option<Value>,
    coessential_gap: bool,
}

fn cover_case(m: &CorpusMonoid, a: &Arc<FiniteAct>, class: ClassId) -> CoverCase {
    let ctx = || json!({ "monoid": m.name, "act": a.rows(), "class": class.to_string() });
    let mut case = CoverCase {
        found: None,
        verified: None,
        unique: None,
        oracle_ran: false,
        no_pure_congruence: None,
        precover_epi: None,
        pr_agreement: None,
        coessential_gap: false,
    };
    let precover = match build_precover(a, class) {
        Ok(p) => p,
        Err(e) => {
            case.found = Some(json!({ "case": ctx(), "error": e.to_string() }));
            return case;
        }
    };
    if !precover.map.is_epi() {
        case.precover_epi = Some(ctx());
    }
    let cover = match find_cover(a, class) {
        Ok(c) => c,
        Err(e) => {
            case.found = Some(json!({ "case": ctx(), "error": e.to_string() }));
            return case;
        }
    };
    let g = &cover.map;
    case.verified = match is_cover(g, class) {
        Ok(v) if v.holds() => None,
        Ok(v) => Some(json!({ "case": ctx(), "witness": v.witness() })),
        Err(e) => Some(json!({ "case": ctx(), "error": e.to_string() })),
    };
    // reduce the precover again with its carrier reversed
    let n = precover.carrier.size();
    let rev: Vec<usize> = (0..n).rev().collect();
    let flipped = Arc::new(precover.carrier.relabel(&rev));
    let other = ActMap::new(&flipped, a, rev.iter().map(|&x| precover.map.apply(x)).collect())
        .and_then(|h| reduce_to_cover(&h).map(|(c, _)| c));
    let mut mismatch = match other {
        Ok(o) => find_iso_over(g, &o).is_none(),
        Err(_) => true,
    };
    if n <= SUBSET_ORACLE_LIMIT {
        case.oracle_ran = true;
        match subset_search_cover(&precover.map, class) {
            Ok(Some(o)) => mismatch |= find_iso_over(g, &o).is_none(),
            _ => mismatch = true,
        }
    }
    if mismatch {
        case.unique = Some(ctx());
    }
    case.no_pure_congruence = match congruences_within(&kernel(g), KERNEL_CONGRUENCE_LIMIT) {
        Ok(all) => all
            .iter()
            .find(|rho| !rho.is_identity() && in_class(&rho.quotient_act().0, class))
            .map(|rho| json!({ "case": ctx(), "congruence": rho.class_map() })),
        Err(e) => Some(json!({ "case": ctx(), "error": e.to_string() })),
    };
    if class == ClassId::Pr {
        case.pr_agreement = match is_projective_cover(g) {
            Ok(true) => None,
            Ok(false) => Some(ctx()),
            Err(e) => Some(json!({ "case": ctx(), "error": e.to_string() })),
        };
    }
    if class == ClassId::SF && !is_coessential(g) {
        case.coessential_gap = true;
    }
    case
}

fn cover_existence(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let work: Vec<(&CorpusMonoid, &Arc<FiniteAct>, ClassId)> = corpus
        .monoids
        .iter()
        .flat_map(|m| m.acts.iter().flat_map(move |a| [ClassId::Pr, ClassId::SF, ClassId::CP].map(move |c| (m, a, c))))
        .collect();
    let cases: Vec<CoverCase> = work.par_iter().map(|&(m, a, c)| cover_case(m, a, c)).collect();
    let pick = |f: &dyn Fn(&CoverCase) -> Option<Value>| cases.iter().map(f).collect::<Vec<_>>();
    let oracle_runs = cases.iter().filter(|c| c.oracle_ran).count();
    let gaps = cases.iter().filter(|c| c.coessential_gap).count();

    // both sides over every corpus epi with projective domain
    let pr_maps = corpus_maps(corpus, |f| f.is_epi() && projective(f.domain()).holds())?;
    let mut pr: Vec<Option<Value>> = pr_maps
        .par_iter()
        .map(|m| {
            fail_on_error((|| {
                let cover = is_cover(&m.map, ClassId::Pr)?.holds();
                let coessential = is_projective_cover(&m.map)?;
                Ok((cover != coessential)
                    .then(|| json!({ "map": m.json(), "cover": cover, "projective_cover": coessential })))
            })())
        })
        .collect();
    pr.extend(cases.iter().filter(|c| c.found.is_none()).map(|c| c.pr_agreement.clone()));

    Ok(vec![
        PropertyVerdict::from_outcomes("find-cover-succeeds", pick(&|c| c.found.clone())),
        PropertyVerdict::from_outcomes("found-cover-passes-is-cover", pick(&|c| c.verified.clone())),
        PropertyVerdict::from_outcomes("covers-isomorphic-over-target", pick(&|c| c.unique.clone())).note(format!(
            "compared with a reversed reduction everywhere and with subset search on {oracle_runs} precovers of at most {SUBSET_ORACLE_LIMIT} elements"
        )),
        PropertyVerdict::from_outcomes("pr-cover-iff-projective-cover", pr),
        PropertyVerdict::from_outcomes(
            "no-class-pure-congruence-inside-cover-kernel",
            pick(&|c| c.no_pure_congruence.clone()),
        ),
        PropertyVerdict::from_outcomes("precovers-are-epi", pick(&|c| c.precover_epi.clone())).note(format!(
            "SF covers that are not coessential: {gaps}"
        )),
    ])
}

// ---------------------------------------------------------------- p-system

fn random_p_system<R: Rng>(rng: &mut R, act: &FiniteAct) -> PSystem {
    let m = act.monoid();
    let n = rng.gen_range(1..=4);
    let mut xs = vec![rng.gen_range(0..act.size())];
    let (mut ss, mut ts) = (Vec::new(), Vec::new());
    for i in 0..n - 1 {
        let s = rng.gen_range(0..m.size());
        let target = act.act(xs[i], s);
        let options: Vec<(usize, usize)> = act
            .elements()
            .flat_map(|x| m.elements().map(move |t| (x, t)))
            .filter(|&(x, t)| act.act(x, t) == target)
            .collect();
        let (x, t) = options[rng.gen_range(0..options.len())];
        ss.push(s);
        ts.push(t);
        xs.push(x);
    }
    PSystem { xs, ss, ts }
}

fn p_system(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let pool: Vec<(&CorpusMonoid, &Arc<FiniteAct>)> = corpus
        .monoids
        .iter()
        .flat_map(|m| m.acts.iter().filter(|a| satisfies_p(a).holds()).map(move |a| (m, a)))
        .collect();
    if pool.is_empty() {
        return Ok(vec![PropertyVerdict::existence("solutions-revalidate", 0, None).note("no CP acts")]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let systems: Vec<(&CorpusMonoid, &Arc<FiniteAct>, PSystem)> = (0..P_SYSTEM_COUNT)
        .map(|_| {
            let (m, a) = pool[rng.gen_range(0..pool.len())];
            (m, a, random_p_system(&mut rng, a))
        })
        .collect();
    let outcomes = systems
        .par_iter()
        .map(|(m, a, sys)| {
            let ctx = || json!({ "monoid": m.name, "act": a.rows(), "system": sys });
            match solve_p_system(a, sys) {
                Ok(sol) => {
                    let monoid = a.monoid();
                    let ok = sol.us.len() == sys.xs.len()
                        && sys.xs.iter().zip(&sol.us).all(|(&x, &u)| a.act(sol.y, u) == x)
                        && (0..sys.ss.len())
                            .all(|i| monoid.mul(sol.us[i], sys.ss[i]) == monoid.mul(sol.us[i + 1], sys.ts[i]));
                    (!ok).then(|| json!({ "case": ctx(), "solution": sol }))
                }
                Err(e) => Some(json!({ "case": ctx(), "error": e.to_string() })),
            }
        })
        .collect();
    Ok(vec![PropertyVerdict::from_outcomes("solutions-revalidate", outcomes)
        .note(format!("{} CP acts in the pool", pool.len()))])
}

// ----------------------------------------------------------------- unitary

fn unitary(corpus: &Corpus) -> Result<Vec<PropertyVerdict>> {
    let monos = monos(corpus)?;
    type Triple = (Option<Value>, Option<Value>, Option<Value>);
    let results: Vec<(Triple, [bool; 3])> = monos
        .par_iter()
        .map(|m| {
            let f = &m.map;
            let fail = |e: Error| Some(json!({ "map": m.json(), "error": e.to_string() }));
            let run = || -> Result<(Triple, [bool; 3])> {
                let (_, q) = rees_quotient(f.codomain(), &f.image())?;
                let two = is_n_pure(&q, 2)?.holds();
                let one = is_n_pure(&q, 1)?.holds();
                let split = section(&q)?.is_some();
                let p_unitary = is_p_unitary(f)?.holds();
                let e_unitary = is_e_unitary(f)?.holds();
                let x = f.domain();
                let monoid = x.monoid();
                let pairs = || monoid.elements().flat_map(|s| monoid.elements().map(move |t| (s, t)));
                let meet_two =
                    pairs().all(|(s, t)| x.elements().any(|a| x.elements().any(|b| x.act(a, s) == x.act(b, t))));
                let meet_one = pairs().all(|(s, t)| x.elements().any(|a| x.act(a, s) == x.act(a, t)));
                let w = |ok: bool| (!ok).then(|| m.json());
                Ok((
                    (
                        w(!two || (p_unitary && meet_two)),
                        w(!one || (e_unitary && meet_one)),
                        w(!split || (p_unitary && meet_one)),
                    ),
                    [two, one, split],
                ))
            };
            run().unwrap_or_else(|e| ((fail(e.clone()), fail(e.clone()), fail(e)), [false; 3]))
        })
        .collect();
    let count = |k: usize| results.iter().filter(|(_, a)| a[k]).count();
    let note = format!(
        "antecedent holds for {} (2-pure), {} (1-pure), {} (split) of {} monos",
        count(0),
        count(1),
        count(2),
        results.len()
    );
    let (a, b, c): (Vec<_>, Vec<_>, Vec<_>) =
        results.into_iter().fold((Vec::new(), Vec::new(), Vec::new()), |(mut a, mut b, mut c), ((x, y, z), _)| {
            a.push(x);
            b.push(y);
            c.push(z);
            (a, b, c)
        });
    Ok(vec![
        PropertyVerdict::from_outcomes("2-pure-quotient-gives-p-unitary-and-meeting-pairs", a).note(note),
        PropertyVerdict::from_outcomes("1-pure-quotient-gives-e-unitary-and-equalizers", b),
        PropertyVerdict::from_outcomes("split-quotient-gives-p-unitary-and-equalizers", c),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::generate_corpus;

    #[test]
    fn unknown_suite_is_an_error() {
        let corpus = generate_corpus(&CorpusSpec { max_monoid_order: 1, max_act_size: 1, builders: vec![] }).unwrap();
        assert!(matches!(run_suite("nope", &corpus), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn free_presentation_is_onto() {
        let z2 = Arc::new(crate::monoid::standard_monoid("cyclic_group", &[2]).unwrap());
        let theta = Arc::new(FiniteAct::theta(&z2));
        let g = free_presentation(&theta).unwrap();
        assert!(g.is_epi());
        assert!(!is_pure_epi(&g).unwrap().holds());
    }

    #[test]
    fn min_group_system_on_symmetric_inverse() {
        let i2 = Arc::new(crate::monoid::standard_monoid("symmetric_inverse", &[2]).unwrap());
        let (system, idem) = idempotent_kernel_system(&i2).unwrap();
        assert_eq!(system.len(), idem.len());
        assert!(system.is_directed());
        let m = CorpusMonoid { name: "i2".into(), monoid: i2, acts: vec![] };
        assert_eq!(min_group_case(&m).unwrap(), None);
    }
}
