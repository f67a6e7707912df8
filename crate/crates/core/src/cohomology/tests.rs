use super::*;
use crate::field::Rationals;
use crate::ideals::Ideal;
use crate::poly::PolynomialRing;

fn cubic() -> Ideal<Rationals> {
    let r = PolynomialRing::standard(4, Rationals).unwrap();
    Ideal::parse(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]).unwrap()
}

/// `h^i(P^1, O(d))`.
fn p1(i: i64, d: i64) -> u64 {
    match i {
        0 => (d + 1).max(0) as u64,
        1 => (-d - 1).max(0) as u64,
        _ => 0,
    }
}

#[test]
fn local_cohomology_of_small_modules() {
    let r = PolynomialRing::new(&["x", "y"], Rationals).unwrap();
    let s = GradedModule::free(&r, vec![0]);
    assert_eq!(local_cohomology_dim(&s, 2, -2).unwrap(), 1);
    assert_eq!(local_cohomology_dim(&s, 2, -3).unwrap(), 2);
    assert_eq!(local_cohomology_dim(&s, 2, -1).unwrap(), 0);
    assert_eq!(local_cohomology_dim(&s, 0, 0).unwrap(), 0);
    assert_eq!(sheaf_cohomology_dim(&s, 1, -2).unwrap(), 1);
    assert_eq!(sheaf_cohomology_dim(&s, 1, -1).unwrap(), 0);
    assert!(matches!(local_cohomology_dim(&s, 3, 0), Err(Error::OutOfRange(_))));
    let k = GradedModule::quotient_ring(&Ideal::maximal(&r));
    assert_eq!(local_cohomology_dim(&k, 0, 0).unwrap(), 1);
    assert_eq!(local_cohomology_dim(&k, 0, 1).unwrap(), 0);
    assert_eq!(sheaf_cohomology_dim(&k, 0, 0).unwrap(), 0);
}

#[test]
fn twisted_cubic_structure_sheaf() {
    let c = cubic();
    let ox = GradedModule::quotient_ring(&c);
    assert_eq!(local_cohomology_dim(&ox, 2, -1).unwrap(), 2);
    for k in -6..=6 {
        assert_eq!(ox.sheaf_cohomology_dim(0, k).unwrap(), p1(0, 3 * k), "h0 at {k}");
        assert_eq!(ox.sheaf_cohomology_dim(1, k).unwrap(), p1(1, 3 * k), "h1 at {k}");
        assert_eq!(ox.sheaf_cohomology_dim(2, k).unwrap(), 0);
    }
    let coh = ox.cohomology().unwrap();
    assert_eq!(coh.sheaf_regularity().unwrap(), Some(1));
    assert!(coh.is_unmixed());
    assert_eq!(sheaf_regularity_of_structure_sheaf(&c).unwrap(), 1);
}

#[test]
fn conormal_modules() {
    let r = PolynomialRing::new(&["x", "y"], Rationals).unwrap();
    let n = conormal_module(&Ideal::maximal(&r)).unwrap();
    assert_eq!(n.generator_degrees(), &[1, 1]);
    let hs: Vec<i128> = (0..4).map(|k| n.hilbert_function(k).unwrap()).collect();
    assert_eq!(hs, vec![0, 2, 0, 0]);

    let r3 = PolynomialRing::standard(3, Rationals).unwrap();
    let f = Ideal::parse(&r3, &["x0^2 + x1*x2"]).unwrap();
    let nf = conormal_module(&f).unwrap();
    assert_eq!(nf.generator_degrees(), &[2]);
    let q = GradedModule::quotient_ring(&f);
    for k in 0..6 {
        assert_eq!(nf.hilbert_function(k).unwrap(), q.hilbert_function(k - 2).unwrap());
    }

    let c = conormal_module(&cubic()).unwrap();
    assert_eq!(c.generator_degrees(), &[2, 2, 2]);
    for k in -4..=6 {
        for i in 0..2 {
            assert_eq!(c.sheaf_cohomology_dim(i, k).unwrap(), 2 * p1(i, 3 * k - 5), "h^{i}(N*({k}))");
        }
    }
    // the module agrees with its sections from degree 3 on; in degree 2 it
    // only sees the three quadrics
    assert_eq!(c.hilbert_function(2).unwrap(), 3);
    assert_eq!(c.local_cohomology_dim(1, 2).unwrap(), 1);
    for k in 3..7 {
        assert_eq!(c.hilbert_function(k).unwrap(), 2 * (3 * k as i128 - 5) + 2);
    }
}

#[test]
fn module_powers() {
    let c = conormal_module(&cubic()).unwrap();
    let s1 = c.symmetric_power(1).unwrap();
    for k in 0..6 {
        assert_eq!(s1.hilbert_function(k).unwrap(), c.hilbert_function(k).unwrap());
    }
    let r = PolynomialRing::new(&["x", "y"], Rationals).unwrap();
    let f = GradedModule::free(&r, vec![0, 1]);
    let t = f.tensor_power(2).unwrap();
    assert_eq!(t.num_generators(), 4);
    assert_eq!(t.num_relations(), 0);
    assert_eq!(f.symmetric_power(2).unwrap().num_generators(), 3);
    assert_eq!(f.exterior_power(2).unwrap().generator_degrees(), &[1]);
    assert!(matches!(f.exterior_power(3), Err(Error::OutOfRange(_))));
    assert!(matches!(f.tensor_power(0), Err(Error::OutOfRange(_))));
}

#[test]
fn split_bundle_oracle_for_tensor_powers() {
    let c = conormal_module(&cubic()).unwrap();
    for a in 1..=3u32 {
        let t = c.tensor_power(a).unwrap();
        let coh = t.cohomology().unwrap();
        let lo = (5 * a as i64) / 3 - 3;
        for k in lo..lo + 7 {
            for i in 0..2 {
                let want = (1u64 << a) * p1(i, 3 * k - 5 * a as i64);
                assert_eq!(coh.sheaf(i, k).unwrap(), want, "h^{i}(T^{a} N*({k}))");
            }
        }
    }
}

#[test]
fn symmetric_and_exterior_of_conormal() {
    // N* = O(-5)^2 on the twisted cubic: S^2 = O(-10)^3, the determinant is O(-10)
    let c = conormal_module(&cubic()).unwrap();
    let s2 = c.symmetric_power(2).unwrap().cohomology().unwrap();
    let e2 = c.exterior_power(2).unwrap().cohomology().unwrap();
    for k in 2..7 {
        assert_eq!(s2.sheaf(0, k).unwrap(), 3 * p1(0, 3 * k - 10));
        assert_eq!(s2.sheaf(1, k).unwrap(), 3 * p1(1, 3 * k - 10));
        assert_eq!(e2.sheaf(0, k).unwrap(), p1(0, 3 * k - 10));
    }
}

#[test]
fn euler_characteristic_matches_hilbert_polynomial() {
    let c = cubic();
    let modules = vec![GradedModule::quotient_ring(&c), conormal_module(&c).unwrap(), GradedModule::of_ideal(&c).unwrap()];
    for m in modules {
        let coh = m.cohomology().unwrap();
        for k in -8..8 {
            assert_eq!(coh.euler_characteristic(k).unwrap(), coh.hilbert_series().polynomial_value(k));
        }
    }
}

#[test]
fn vanishing_for_twisted_cubic() {
    let c = cubic();
    let expect = [(2, 2, 0), (4, 3, 1), (6, 5, 1)];
    for (a, &(threshold, observed, gap)) in (1..=3).zip(&expect) {
        let rep = vanishing_check(&c, a, None, (-2, 8)).unwrap();
        assert!(rep.pass);
        assert_eq!((rep.n, rep.p, rep.r_p, rep.r_x), (1, 0, 2, 1));
        assert_eq!(rep.rows.len(), 1);
        let row = &rep.rows[0];
        assert_eq!(row.index, 1);
        assert_eq!(row.threshold, threshold);
        assert_eq!(row.observed, Some(observed));
        assert_eq!(row.gap, Some(gap));
    }
}

#[test]
fn vanishing_for_cubic_surface() {
    let r = PolynomialRing::standard(4, Rationals).unwrap();
    let f = Ideal::parse(&r, &["x0^3 + x1^3 + x2^3 + x3^3"]).unwrap();
    let rep = vanishing_check(&f, 1, None, (-3, 6)).unwrap();
    assert_eq!((rep.n, rep.p, rep.r_p, rep.r_x), (2, 1, 3, 2));
    assert!(rep.pass);
    // N* = O_X(-3) and h^2(O_X(j)) = h^0(O_X(-1-j))
    let top = &rep.rows[0];
    assert_eq!((top.index, top.threshold, top.observed), (2, 3, Some(3)));
}

#[test]
fn thresholds() {
    assert_eq!(vanishing_thresholds(2, 2, 3, 1, 3), vec![(3, 4), (2, 5), (1, 7)]);
}

#[test]
fn mixed_dimension_is_rejected() {
    // a line and an isolated point
    let r = PolynomialRing::standard(4, Rationals).unwrap();
    let i = Ideal::parse(&r, &["x0", "x1*x2", "x1*x3"]).unwrap();
    assert!(matches!(vanishing_check(&i, 1, None, (0, 3)), Err(Error::NotEquidimensional)));
}

#[test]
fn normality() {
    let c = cubic();
    let n = normality_index(&c, (-5, 5)).unwrap();
    assert_eq!(n, Normality { h1_end: None, n0: -5, vanishes_on_window: true });
    let r = PolynomialRing::standard(4, Rationals).unwrap();
    // the smooth rational quartic (s^4, s^3 t, s t^3, t^4)
    let q = Ideal::parse(&r, &["x0*x3 - x1*x2", "x1^3 - x0^2*x2", "x2^3 - x1*x3^2", "x0*x2^2 - x1^2*x3"]).unwrap();
    let n = normality_index(&q, (-5, 5)).unwrap();
    assert_eq!(n.h1_end, Some(1));
    assert_eq!(n.n0, 2);
}

#[test]
fn phi_for_twisted_cubic() {
    let c = cubic();
    let rep = phi_surjectivity(&c, 1, 3).unwrap();
    assert_eq!((rep.source_dim, rep.target_dim, rep.rank), (10, 10, 10));
    assert!(rep.surjective && rep.lci_consistent);
    let rep = phi_surjectivity(&c, 1, 1).unwrap();
    assert_eq!(rep.target_dim, 0);
    assert!(rep.surjective);
}

#[test]
fn table_formats() {
    let r = PolynomialRing::new(&["x", "y"], Rationals).unwrap();
    let s = GradedModule::free(&r, vec![0]);
    let t = CohomologyTable::compute("O", &s.cohomology().unwrap(), (-2, 0)).unwrap();
    assert_eq!(t.to_csv(), "i,k,h\n0,-2,0\n0,-1,0\n0,0,1\n1,-2,1\n1,-1,0\n1,0,0\n");
    assert_eq!(t.euler_characteristic(-2), Some(-1));
    assert_eq!(default_window(2), (-9, 9));
    assert_eq!(t.to_json()["entries"][2]["h"], 1);
}
