use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use actkit::act::{coproduct, decompose_indecomposable, tensor};
use actkit::bicyclic::left_divisors;
use actkit::colimit::{colimit, directed_colimit, DirectSystem};
use actkit::congruence::{kernel, Congruence};
use actkit::corpus::{generate_corpus, Corpus, CorpusSpec};
use actkit::flatness::{in_class, ClassId};
use actkit::hom::{find_iso, homs};
use actkit::{BicyclicElement, FiniteAct};

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| generate_corpus(&CorpusSpec::default()).unwrap())
}

fn pick_act(m: usize, a: usize) -> &'static Arc<FiniteAct> {
    let monoid = &corpus().monoids[m % corpus().monoids.len()];
    &monoid.acts[a % monoid.acts.len()]
}

fn shuffled(n: usize, seed: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    for (i, &r) in seed.iter().enumerate().take(n) {
        order.swap(i, i + r % (n - i));
    }
    order
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabeling_is_an_isomorphism(m in 0usize..64, a in 0usize..512, seed in prop::collection::vec(0usize..64, 4)) {
        let x = pick_act(m, a);
        let y = Arc::new(x.relabel(&shuffled(x.size(), &seed)));
        let iso = find_iso(x, &y).expect("relabeling is an isomorphism");
        prop_assert!(iso.is_iso());
        for class in ClassId::ALL {
            prop_assert_eq!(in_class(x, class), in_class(&y, class));
        }
    }

    #[test]
    fn generated_congruences_are_closed(m in 0usize..64, a in 0usize..512, pairs in prop::collection::vec((0usize..8, 0usize..8), 0..4)) {
        let x = pick_act(m, a);
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(p, q)| (p % x.size(), q % x.size())).collect();
        let rho = Congruence::generated(x, &pairs).unwrap();
        for &(p, q) in &pairs {
            prop_assert!(rho.contains(p, q));
        }
        let (quotient, q) = rho.quotient_act();
        prop_assert_eq!(quotient.size(), rho.num_classes());
        prop_assert_eq!(kernel(&q), rho.clone());
        let all_pairs: Vec<(usize, usize)> =
            x.elements().flat_map(|a| x.elements().map(move |b| (a, b))).filter(|&(a, b)| rho.contains(a, b)).collect();
        prop_assert_eq!(Congruence::generated(x, &all_pairs).unwrap(), rho);
    }

    #[test]
    fn composites_of_homs_are_homs(m in 0usize..64, a in 0usize..512, b in 0usize..512, c in 0usize..512, i in 0usize..64, j in 0usize..64) {
        let (x, y, z) = (pick_act(m, a), pick_act(m, b), pick_act(m, c));
        let (f, g) = (homs(x, y).unwrap(), homs(y, z).unwrap());
        prop_assume!(!f.is_empty() && !g.is_empty());
        let (f, g) = (&f[i % f.len()], &g[j % g.len()]);
        let h = f.then(g).unwrap();
        prop_assert!(homs(x, z).unwrap().contains(&h));
        prop_assert!(kernel(f).is_subset_of(&kernel(&h)));
    }

    #[test]
    fn coproduct_components_add_up(m in 0usize..64, picks in prop::collection::vec(0usize..512, 1..4)) {
        let acts: Vec<Arc<FiniteAct>> = picks.iter().map(|&a| pick_act(m, a).clone()).collect();
        let (sum, injections) = coproduct(&acts).unwrap();
        let expected: usize = acts.iter().map(|a| decompose_indecomposable(a).components.len()).sum();
        prop_assert_eq!(decompose_indecomposable(&sum).components.len(), expected);
        prop_assert_eq!(sum.size(), acts.iter().map(|a| a.size()).sum::<usize>());
        prop_assert!(injections.iter().all(|i| i.is_mono()));
    }

    #[test]
    fn quotient_chains_have_the_last_quotient_as_colimit(m in 0usize..64, a in 0usize..512, p in (0usize..8, 0usize..8), q in (0usize..8, 0usize..8)) {
        let x = pick_act(m, a);
        let n = x.size();
        let r1 = Congruence::generated(x, &[(p.0 % n, p.1 % n)]).unwrap();
        let r2 = Congruence::generated(x, &[(p.0 % n, p.1 % n), (q.0 % n, q.1 % n)]).unwrap();
        let (q1, f1) = r1.quotient_act();
        let (q2, f2) = r2.quotient_act();
        let step = actkit::ActMap::new(&q1, &q2, (0..q1.size()).map(|c| f2.apply(f1.fiber(c)[0])).collect()).unwrap();
        let d = DirectSystem::chain(&[f1, step]).unwrap();
        let cone = directed_colimit(&d).unwrap();
        prop_assert!(find_iso(&cone.apex, &q2).is_some());
        prop_assert_eq!(colimit(&d).unwrap().apex.rows(), cone.apex.rows());
    }

    #[test]
    fn tensor_with_the_regular_left_act_is_the_act(m in 0usize..64, a in 0usize..512) {
        let x = pick_act(m, a);
        let op = Arc::new(x.monoid().opposite());
        prop_assert_eq!(tensor(x, &FiniteAct::regular(&op)).unwrap().classes, x.size());
    }

    #[test]
    fn bicyclic_arithmetic(a in (0u64..1_000_000, 0u64..1_000_000), b in (0u64..1_000_000, 0u64..1_000_000), c in (0u64..1000, 0u64..1000)) {
        let (a, b, c) = (BicyclicElement::new(a.0, a.1), BicyclicElement::new(b.0, b.1), BicyclicElement::new(c.0, c.1));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&BicyclicElement::identity()), a.clone());
        prop_assert_eq!(BicyclicElement::identity().mul(&a), a);
    }

    #[test]
    fn left_divisors_reproduce_the_target(m in 0u64..40, n in 0u64..40, s in 0u64..40, t in 0u64..40) {
        let (target, right) = (BicyclicElement::new(m, n), BicyclicElement::new(s, t));
        let found = left_divisors(&target, &right, 100).unwrap();
        prop_assert!(found.len() as u64 <= s + 1);
        for x in &found {
            prop_assert_eq!(x.mul(&right), target.clone());
        }
    }
}
