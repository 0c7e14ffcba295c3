mod common;

use invar::fixtures;
use invar::invariants::{
    curve_conductor_rational, delta_general, delta_qgorenstein, delta_rational, duality_defect,
    genus_reduced, is_symmetric, semigroup_genus, semigroup_genus_rational, CurveData, DeltaPath,
    InvariantError, PgData,
};
use invar::laufer::is_rational;
use invar::pgseries::pg_table;
use invar::rational::int;
use invar::seifert::{semigroup, SeifertData, Star};
use invar::Graph;
use rand::seq::IteratorRandom;
use rand::Rng;

fn small_stars(seed: u64, count: usize, max_order: u64) -> Vec<Star> {
    common::seifert_corpus(seed, count)
        .into_iter()
        .map(|sf| Star::from_seifert(&sf).unwrap())
        .filter(|s| s.graph().group_order() <= max_order)
        .collect()
}

#[test]
fn rational_fixture_curve() {
    let star = Star::from_seifert(&fixtures::rational_357()).unwrap();
    let g = star.graph();
    let curve = CurveData::from_arrows(g, &[star.central()]).unwrap();
    let report = delta_rational(g, &curve).unwrap();
    assert_eq!(report.delta, 3);
    assert_eq!(report.path, DeltaPath::Rational);
    assert_eq!(
        curve_conductor_rational(g, &curve).unwrap().get(&star.central()),
        Some(&5)
    );
    let pg = PgData::for_graph(g).unwrap();
    assert_eq!(delta_general(g, &curve, &pg).unwrap().delta, 3);
    assert_eq!(delta_qgorenstein(g, &curve, &pg).unwrap().delta, 3);
}

#[test]
fn genus_on_small_fixtures() {
    let f3 = Star::from_seifert(&fixtures::three_thirds()).unwrap();
    let t3 = pg_table(&f3);
    assert_eq!(genus_reduced(&f3, &t3).unwrap(), 1);
    assert_eq!(semigroup_genus(&f3, &t3).unwrap(), 1);
    let a1 = Star::from_seifert(&SeifertData::new(2, &[]).unwrap()).unwrap();
    let ta = pg_table(&a1);
    assert_eq!(genus_reduced(&a1, &ta).unwrap(), 0);
    assert_eq!(semigroup_genus_rational(&a1).unwrap(), 0);
}

#[test]
fn central_curve_delta_is_the_semigroup_genus() {
    for star in small_stars(81, 120, 3000) {
        let g = star.graph();
        let table = pg_table(&star);
        let view = semigroup(star.data());
        let curve = CurveData::from_arrows(g, &[star.central()]).unwrap();
        let pg = PgData::Star(table.clone());
        let sf = star.data();
        assert_eq!(delta_general(g, &curve, &pg).unwrap().delta, view.genus, "{sf}");
        assert_eq!(delta_qgorenstein(g, &curve, &pg).unwrap().delta, view.genus, "{sf}");
        assert_eq!(semigroup_genus(&star, &table).unwrap(), view.genus, "{sf}");
        assert_eq!(genus_reduced(&star, &table).unwrap(), view.genus, "{sf}");
        if sf.b0() >= sf.num_legs() as i64 {
            assert_eq!(view.genus, 0, "{sf}");
        }
        if is_rational(g) {
            assert_eq!(semigroup_genus_rational(&star).unwrap(), view.genus, "{sf}");
            let cond = curve_conductor_rational(g, &curve).unwrap();
            assert_eq!(cond[&star.central()], view.conductor, "{sf}");
        } else {
            assert!(matches!(delta_rational(g, &curve), Err(InvariantError::NotRational)));
        }
    }
}

#[test]
fn symmetry_verdicts_agree() {
    for star in small_stars(82, 150, 3000) {
        let v = is_symmetric(&star, &pg_table(&star)).unwrap();
        let view = semigroup(star.data());
        let sf = star.data();
        assert_eq!(v.direct, v.criterion, "{sf}");
        assert_eq!(v.direct, 2 * view.genus == view.conductor, "{sf}");
        if v.sufficient_zk_e0 {
            assert!(v.direct, "{sf}");
        }
        if v.rational_criterion == Some(true) {
            assert!(v.direct, "{sf}");
        }
    }
    let odd = Star::from_seifert(&fixtures::non_symmetric()).unwrap();
    let v = is_symmetric(&odd, &pg_table(&odd)).unwrap();
    assert!(!v.direct && !v.criterion);
    // rational and symmetric, yet b0 < d and [Z_K + E*_0] != 0
    let sf = SeifertData::new(4, &[(2, 1), (2, 1), (3, 2), (10, 7), (11, 8)]).unwrap();
    let star = Star::from_seifert(&sf).unwrap();
    let v = is_symmetric(&star, &pg_table(&star)).unwrap();
    assert_eq!(semigroup(&sf).gaps, vec![1]);
    assert!(v.direct && v.criterion);
    assert_eq!(v.rational_criterion, Some(false));
    let f6 = Star::from_seifert(&fixtures::two_halves_two_thirds()).unwrap();
    let v = is_symmetric(&f6, &pg_table(&f6)).unwrap();
    assert!(v.direct && !v.sufficient_zk_e0);
}

#[test]
fn both_delta_formulas_agree_on_random_curves() {
    let mut rng = common::rng(83);
    for star in small_stars(83, 80, 2000) {
        let g = star.graph();
        let pg = PgData::Star(pg_table(&star));
        let arrows: Vec<usize> = (0..rng.gen_range(1..=3))
            .map(|_| rng.gen_range(0..g.num_vertices()))
            .collect();
        let curve = CurveData::from_arrows(g, &arrows).unwrap();
        let a = delta_general(g, &curve, &pg);
        let b = delta_qgorenstein(g, &curve, &pg);
        match (a, b) {
            (Ok(a), Ok(b)) => assert_eq!(a.delta, b.delta, "{} {arrows:?}", star.data()),
            (Err(InvariantError::NonIntegralChiArgument(_)), _)
            | (_, Err(InvariantError::NonIntegralChiArgument(_))) => {}
            (a, b) => panic!("{} {arrows:?}: {a:?} {b:?}", star.data()),
        }
    }
}

#[test]
fn rational_route_matches_the_table_route() {
    let mut rng = common::rng(84);
    for star in small_stars(84, 150, 2000) {
        let g = star.graph();
        if !is_rational(g) {
            continue;
        }
        let table = PgData::Star(pg_table(&star));
        let v = rng.gen_range(0..g.num_vertices());
        let curve = CurveData::from_arrows(g, &[v]).unwrap();
        let want = delta_rational(g, &curve).unwrap().delta;
        assert_eq!(delta_general(g, &curve, &table).unwrap().delta, want);
        assert_eq!(delta_general(g, &curve, &PgData::Rational).unwrap().delta, want);
        assert_eq!(table.pg(g).unwrap(), int(0));
        for key in g.classes() {
            let h = g.class_from_key(&key);
            assert_eq!(table.pg_of(g, &h).unwrap(), PgData::Rational.pg_of(g, &h).unwrap());
        }
    }
}

#[test]
fn deltas_of_curves_in_one_class_differ_by_chi() {
    let f2 = Graph::build(&fixtures::doubled_graph()).unwrap();
    let pg = PgData::for_graph(&f2).unwrap();
    // reordered arrows and the two symmetric leg pairs land in a shared class
    let mut rng = common::rng(85);
    for _ in 0..20 {
        let a: Vec<usize> = (0..2).map(|_| rng.gen_range(0..7)).collect();
        let b: Vec<usize> = (0..2).map(|_| rng.gen_range(0..7)).collect();
        let (ca, cb) = (CurveData::from_arrows(&f2, &a).unwrap(), CurveData::from_arrows(&f2, &b).unwrap());
        if ca.class() != cb.class() {
            continue;
        }
        let da = delta_general(&f2, &ca, &pg).unwrap().delta;
        let db = delta_general(&f2, &cb, &pg).unwrap().delta;
        assert_eq!(int(da - db), f2.chi(&-ca.cycle()) - f2.chi(&-cb.cycle()));
    }
}

#[test]
fn duality_on_every_class() {
    let f1 = Graph::build(&fixtures::brieskorn_4_6_5()).unwrap();
    let star = Star::from_graph(&f1).unwrap();
    let table = pg_table(&star);
    for key in f1.classes() {
        let h = f1.class_from_key(&key);
        let (lhs, rhs) = duality_defect(&f1, &table, &h);
        assert_eq!(lhs, rhs);
    }
    for star in small_stars(86, 80, 500) {
        let g = star.graph();
        let table = pg_table(&star);
        for key in g.classes() {
            let h = g.class_from_key(&key);
            let (lhs, rhs) = duality_defect(g, &table, &h);
            assert_eq!(lhs, rhs, "{}", star.data());
            // self-dual classes carry no defect at all
            if g.class_sub(&g.canonical_class(), &h) == h {
                assert_eq!(lhs, int(0));
            }
        }
    }
}

#[test]
fn pg_data_dispatch() {
    let f1 = Graph::build(&fixtures::brieskorn_4_6_5()).unwrap();
    assert_eq!(PgData::for_graph(&f1).unwrap().path(), DeltaPath::StarShapedQGorenstein);
    // two nodes and not rational: nothing to fall back on
    let mut rng = common::rng(87);
    let found = (0..2000).any(|_| {
        let g = common::random_graph(&mut rng, 9);
        let nodes = (0..g.num_vertices()).filter(|&v| g.valency(v) >= 3).count();
        nodes >= 2
            && !is_rational(&g)
            && matches!(PgData::for_graph(&g), Err(InvariantError::MissingPgData))
    });
    assert!(found);
    let g = Graph::build(&fixtures::a1()).unwrap();
    let key = g.classes().choose(&mut rng).unwrap();
    let supplied = PgData::Supplied(Default::default());
    assert!(supplied.pg_of(&g, &g.class_from_key(&key)).is_err());
    assert!(matches!(CurveData::from_arrows(&g, &[]), Err(InvariantError::NoArrows)));
}

#[test]
fn brieskorn_legs_are_interchangeable() {
    let f1 = Graph::build(&fixtures::brieskorn_4_6_5()).unwrap();
    let pg = PgData::for_graph(&f1).unwrap();
    // E_6 and E_8 end the two (5,2) legs
    for arrow in [5, 7] {
        let curve = CurveData::from_arrows(&f1, &[arrow]).unwrap();
        let report = delta_qgorenstein(&f1, &curve, &pg).unwrap();
        assert_eq!(report.delta, 1);
        let values: Vec<_> = report.terms.iter().map(|t| t.value.clone()).collect();
        assert_eq!(values, vec![int(5), int(2), int(4), int(6)]);
        assert_eq!(delta_general(&f1, &curve, &pg).unwrap().delta, 1);
    }
    let swapped = invar::GraphInput::new(
        &[-2, -2, -2, -2, -3, -2, -3, -2],
        &[(0, 1), (1, 2), (2, 3), (2, 6), (6, 7), (2, 4), (4, 5)],
    );
    let g = Graph::build(&swapped).unwrap();
    assert_eq!(g.canonical_cycle(), f1.canonical_cycle());
    assert_eq!(pg_table(&Star::from_graph(&g).unwrap()).total(), 6);
}
