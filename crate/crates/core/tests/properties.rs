use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use systolic_core::bounds::{sandwich, surface_kappa_bounds};
use systolic_core::complex::{compose, is_valid_orientation, SimplicialComplex};
use systolic_core::corpus;
use systolic_core::genfun::{conjecture_series, detect_linear_recurrence, shortest_recurrence};
use systolic_core::graphs::{
    construct_regular_girth, girth, metric_systole, ConstructionBudget, Girth, Graph, MetricGraph,
};
use systolic_core::homology::{check_s2_torsion_bound, homology};
use systolic_core::sleeve::{assemble, multiple_class_bound, sleeve_volume_single, CubicalModel};
use systolic_core::snf::{smith_normal_form, SparseMatrix};
use systolic_core::waring::min_powers;
use systolic_oracles::{girth_by_cycle_enumeration, linear_complexity};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Up to twelve triangles and a few edges on at most seven vertices.
fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    let triangle = (0usize..7, 0usize..7, 0usize..7).prop_filter("distinct", |(a, b, c)| a != b && b != c && a != c);
    let edge = (0usize..7, 0usize..7).prop_filter("distinct", |(a, b)| a != b);
    (prop::collection::vec(triangle, 1..12), prop::collection::vec(edge, 0..3)).prop_map(|(ts, es)| {
        let mut facets: Vec<Vec<usize>> = ts.into_iter().map(|(a, b, c)| vec![a, b, c]).collect();
        facets.extend(es.into_iter().map(|(a, b)| vec![a, b]));
        SimplicialComplex::new(7, facets).expect("valid facets")
    })
}

/// Connected sums of orientable corpus surfaces.
fn orientable_surface() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::sample::select(vec!["tetra_boundary", "octahedron", "torus_7"]), 1..4).prop_map(
        |names| {
            let mut pieces = names.into_iter().map(|n| corpus::complex(n).expect("built-in"));
            let first = pieces.next().expect("non-empty");
            pieces.fold(first, |acc, x| acc.connected_sum(&x).expect("orientable summands"))
        },
    )
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c), r)
    })
}

fn divides_chain(factors: &[BigInt]) -> bool {
    factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn boundary_of_boundary_is_zero(x in small_complex()) {
        for k in 2..=x.dim().unwrap_or(0) {
            let product = compose(&x.boundary_matrix(k - 1).unwrap(), &x.boundary_matrix(k).unwrap());
            prop_assert!(product.iter().flatten().all(|&v| v == 0));
        }
    }

    #[test]
    fn homology_matches_face_counts(x in small_complex()) {
        let h = homology(&x);
        prop_assert_eq!(h.euler_characteristic(), x.euler_characteristic());
        prop_assert!(h.betti[0] >= 1);
        for t in &h.torsion {
            prop_assert!(divides_chain(t));
            prop_assert!(t.iter().all(|d| d > &BigInt::one()));
        }
    }

    #[test]
    fn torsion_bound_always_holds(x in small_complex()) {
        prop_assert!(check_s2_torsion_bound(&x).holds);
    }

    #[test]
    fn negated_orientation_is_valid(x in orientable_surface()) {
        let o = x.orient().unwrap();
        let signs = o.signs().expect("orientable").to_vec();
        prop_assert!(is_valid_orientation(&x, &signs));
        let negated: Vec<i8> = signs.iter().map(|s| -s).collect();
        prop_assert!(is_valid_orientation(&x, &negated));
    }

    #[test]
    fn connected_sum_facet_count(x in orientable_surface(), y in orientable_surface()) {
        let sum = x.connected_sum(&y).unwrap();
        prop_assert_eq!(sum.facets().len(), x.facets().len() + y.facets().len() - 2);
    }

    #[test]
    fn smith_form_shape_and_permutation_invariance(dense in small_matrix(), seed in any::<u64>()) {
        let m = SparseMatrix::from_dense(&dense);
        let form = smith_normal_form(&m);
        prop_assert!(form.rank <= m.row_count().min(m.col_count()));
        prop_assert!(divides_chain(&form.invariant_factors));
        let rows: Vec<usize> = (0..m.row_count()).map(|i| (i + seed as usize) % m.row_count()).rev().collect();
        let cols: Vec<usize> = (0..m.col_count()).map(|j| (j + (seed >> 8) as usize) % m.col_count()).collect();
        prop_assert_eq!(smith_normal_form(&m.permuted(&rows, &cols)), form);
    }

    #[test]
    fn girth_matches_cycle_enumeration(
        n in 3usize..=12,
        picks in prop::collection::vec(any::<bool>(), 66),
    ) {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .zip(&picks)
            .filter(|(_, &keep)| keep)
            .map(|(e, _)| e)
            .collect();
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        prop_assert_eq!(girth(&g).finite(), girth_by_cycle_enumeration(n, &edges));
    }

    #[test]
    fn long_metric_girth_exceeds_one(n in 3usize..40, den in 1i64..40) {
        let mg = MetricGraph::new(Graph::cycle(n).unwrap(), ratio(1, den)).unwrap();
        let systole = metric_systole(&mg);
        prop_assert_eq!(systole.exceeds_one(), n as i64 > den);
    }

    #[test]
    fn waring_bellman_property(k in 1u64..20_000) {
        let best = min_powers(k, 4).unwrap();
        prop_assert!(best.verify());
        let mut j = 1u64;
        while j.pow(4) <= k {
            let rest = k - j.pow(4);
            let via = if rest == 0 { 0 } else { min_powers(rest, 4).unwrap().count() };
            prop_assert!(best.count() <= via + 1);
            j += 1;
        }
    }

    #[test]
    fn found_recurrences_replay(terms in prop::collection::vec((-5i64..=5, 1i64..=4), 1..=24)) {
        let terms: Vec<BigRational> = terms.into_iter().map(|(p, q)| ratio(p, q)).collect();
        let (order, coefficients) = shortest_recurrence(&terms);
        prop_assert_eq!(order, linear_complexity(&terms));
        for k in order..terms.len() {
            let predicted: BigRational = (1..=order).map(|i| &coefficients[i - 1] * &terms[k - i]).sum();
            prop_assert_eq!(&predicted, &terms[k]);
        }
    }

    #[test]
    fn conjecture_series_has_order_one(p in 1i64..1000, q in 1i64..100) {
        let s = conjecture_series(&ratio(p, q), 40).unwrap();
        let verdict = detect_linear_recurrence(&s, 16).unwrap();
        prop_assert!(verdict.found);
        prop_assert_eq!(verdict.order, 1);
    }

    #[test]
    fn sandwich_consistent_for_ordered_constants(
        k in 2u64..1_000_000,
        c in 0.01f64..100.0,
        shrink in 0.0f64..=1.0,
        m in 1u32..6,
    ) {
        let c_tilde = (c * shrink).max(1e-9);
        prop_assert!(sandwich(k, c_tilde, c, m).unwrap().consistent);
    }

    #[test]
    fn per_unit_bound_strictly_decreases(k in 2u64..1_000_000, c in 0.01f64..100.0) {
        let now = multiple_class_bound(k, c).unwrap() / k as f64;
        let before = multiple_class_bound(k - 1, c).unwrap() / (k - 1) as f64;
        prop_assert!(now < before);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn constructed_graphs_pass_independent_checks(seed in any::<u64>(), half in 84usize..=108) {
        let graph = construct_regular_girth(7, 4, 2 * half, seed, ConstructionBudget::default()).unwrap();
        prop_assert!(graph.degrees().iter().all(|&d| d == 7));
        prop_assert!(matches!(girth(&graph), Girth::Finite(g) if g >= 4));
        let edges = graph.edges().len();
        prop_assert_eq!(edges * 2, 7 * graph.vertex_count());
    }

    #[test]
    fn assembly_success_certifies_girth(seed in any::<u64>(), half in 84usize..=108, den in 2i64..=12) {
        let model = CubicalModel::new(3, 7).unwrap();
        let graph = construct_regular_girth(7, 4, 2 * half, seed, ConstructionBudget::default()).unwrap();
        let g = girth(&graph).finite().unwrap() as i64;
        let eps = ratio(1, den);
        match assemble(&model, &eps, &graph) {
            Ok(report) => {
                prop_assert!(ratio(2 * g, den) > BigRational::one());
                prop_assert_eq!(report.systole_lower_bound, 1);
                let single = sleeve_volume_single(&model, &eps).unwrap();
                prop_assert_eq!(report.volume, single * BigInt::from(2 * half));
            }
            Err(_) => prop_assert!(ratio(2 * g, den) <= BigRational::one() || den != 6),
        }
    }
}

#[test]
fn surface_bounds_are_ordered() {
    for l in 1..=1_000_000u64 {
        let (lower, upper) = surface_kappa_bounds(l).unwrap();
        assert!(lower <= BigRational::from(upper), "l = {l}");
    }
}
