use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use vassiliev::arrowmatch::{match_count_breakdown, pairing, pairing_naive, ArrowPattern};
use vassiliev::chordalg::constrained_degree4_basis;
use vassiliev::gaussdiag::{End, Endpoint, GaussDiagram, Sign, SingularGaussDiagram};
use vassiliev::invariants::conway::conway_gauss;
use vassiliev::invariants::{v2, v4_basis};
use vassiliev::knotcodes::{
    builtin_table, gauss_to_pd, parse_gauss, parse_table_json, pd_to_gauss, render_gauss, table_to_json,
};
use vassiliev::moves::{eval_singular, eval_singular_recursive, random_walk};
use vassiliev::rational::{self, frac};

/// Arbitrary (not necessarily realizable) diagram with up to `max` arrows.
fn any_diagram(max: usize) -> impl Strategy<Value = GaussDiagram> {
    (0..=max)
        .prop_flat_map(|n| {
            (Just(n), Just(()).prop_perturb(move |_, mut rng| {
                let mut word: Vec<Endpoint> = (0..n)
                    .flat_map(|a| [Endpoint::new(a, End::Tail), Endpoint::new(a, End::Head)])
                    .collect();
                for i in (1..word.len()).rev() {
                    word.swap(i, rng.random_range(0..=i));
                }
                word
            }), prop::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(_, word, signs)| {
            let signs: Vec<Sign> = signs.into_iter().map(|b| if b { Sign::Pos } else { Sign::Neg }).collect();
            GaussDiagram::from_word(&word, &signs).unwrap()
        })
}

/// A realizable diagram: a short random walk from a small table knot.
fn knot_diagram() -> impl Strategy<Value = GaussDiagram> {
    let starts: Vec<GaussDiagram> =
        builtin_table().into_iter().filter(|e| e.pd.n() <= 6).map(|e| pd_to_gauss(&e.pd)).collect();
    (0..starts.len(), 0usize..8, any::<u64>()).prop_map(move |(i, steps, seed)| random_walk(&starts[i], steps, seed))
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_rotation(g in any_diagram(7), k in 0usize..14) {
        let k = if g.is_empty() { 0 } else { k % (2 * g.n()) };
        prop_assert_eq!(g.rotate(k).canonical_form(), g.canonical_form());
    }

    #[test]
    fn gauss_text_round_trips(g in any_diagram(8)) {
        prop_assume!(!g.is_empty());
        prop_assert_eq!(parse_gauss(&render_gauss(&g)).unwrap(), g);
    }

    #[test]
    fn pd_start_edge_does_not_matter(g in knot_diagram(), start in 1usize..40) {
        prop_assume!(g.n() > 0);
        let pd = gauss_to_pd(&g).unwrap();
        let start = 1 + (start - 1) % (2 * pd.n());
        prop_assert_eq!(pd.to_gauss_from(start).unwrap().canonical_form(), g.canonical_form());
        prop_assert_eq!(pd.writhe(), g.writhe());
    }

    #[test]
    fn pairing_matches_brute_force(g in any_diagram(9), a in any_diagram(4), based in any::<bool>()) {
        prop_assume!(a.n() > 0);
        let a = ArrowPattern::from_gauss(&a, based).unwrap();
        let p = pairing(&a, &g);
        prop_assert_eq!(p, pairing_naive(&a, &g));
        prop_assert!(p.abs() <= binomial(g.n(), a.k()));
        let total: i64 = match_count_breakdown(&a, &g).iter().map(|(_, s)| s).sum();
        prop_assert_eq!(total, p);
    }

    #[test]
    fn flipping_every_sign_scales_by_parity(g in any_diagram(8), a in any_diagram(3)) {
        prop_assume!(a.n() > 0);
        let a = ArrowPattern::from_gauss(&a, false).unwrap();
        let flipped = (0..g.n()).fold(g.clone(), |h, i| h.flip_sign(i));
        let parity = if a.k() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(pairing(&a, &flipped), parity * pairing(&a, &g));
    }

    #[test]
    fn collapsing_keeps_the_chord_diagram(g in any_diagram(7), mask in any::<u8>()) {
        let chosen: Vec<usize> = (0..g.n()).filter(|i| mask >> i & 1 == 1).collect();
        let s = SingularGaussDiagram::collapse(&g, &chosen);
        prop_assert_eq!(s.singular_count(), chosen.len());
        prop_assert_eq!(s.underlying_chords(), g.subdiagram(&chosen).underlying_chords());
        let back = s.resolve(&chosen.iter().map(|&a| g.sign(a)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn singular_value_matches_recursive_resolution(g in knot_diagram(), mask in any::<u32>()) {
        let chosen: Vec<usize> = (0..g.n().min(32)).filter(|i| mask >> i & 1 == 1).take(5).collect();
        let s = SingularGaussDiagram::collapse(&g, &chosen);
        let (a, _) = v4_basis();
        prop_assert_eq!(eval_singular(&a, &s), eval_singular_recursive(&a, &s));
    }

    #[test]
    fn walks_preserve_the_knot(g in knot_diagram(), seed in any::<u64>()) {
        prop_assume!(g.n() <= 12);
        let h = random_walk(&g, 6, seed);
        prop_assume!(h.n() <= 14);
        prop_assert!(h.is_realizable());
        prop_assert_eq!(conway_gauss(&h).unwrap(), conway_gauss(&g).unwrap());
        prop_assert_eq!(v2(&h), v2(&g));
    }

    #[test]
    fn degree_four_values_are_quarters(g in knot_diagram()) {
        let (a, b) = v4_basis();
        let four = BigInt::from(4);
        prop_assert!(rational::denominator_divides(&a.evaluate(&g), &four));
        prop_assert!(rational::denominator_divides(&b.evaluate(&g), &four));
    }

    #[test]
    fn weight_combinations_stay_weight_systems(a in -5i64..5, b in -5i64..5, d in 1i64..4) {
        let basis = constrained_degree4_basis();
        let w = basis[0].combine(&frac(a, d), &basis[1], &frac(b, 1));
        prop_assert!(w.satisfies_relations().unwrap());
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = frac(p, q);
        prop_assert_eq!(rational::parse(&rational::to_string(&r)).unwrap(), r.clone());
        prop_assert_eq!(rational::to_string(&r).contains('/'), !r.is_integer());
        prop_assert_eq!(r.is_zero(), p == 0);
    }
}

#[test]
fn builtin_table_survives_json() {
    let table = builtin_table();
    let back = parse_table_json(&table_to_json(&table)).unwrap();
    assert_eq!(back, table);
}
