use super::*;
use crate::field::{PrimeField, Rationals};
use crate::poly::parse_polynomial;
use proptest::prelude::*;

type Ring = Arc<PolynomialRing<Rationals>>;

fn cubic() -> (Ring, Ideal<Rationals>) {
    let r = PolynomialRing::standard(4, Rationals).unwrap();
    let i = Ideal::parse(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]).unwrap();
    (r, i)
}

fn xy() -> Ring {
    PolynomialRing::new(&["x", "y"], Rationals).unwrap()
}

#[test]
fn powers() {
    let r = xy();
    let m = Ideal::parse(&r, &["x", "y"]).unwrap();
    let sq = m.power(2).unwrap();
    assert!(sq.same_ideal(&Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap()).unwrap());
    assert_eq!(sq.generators().len(), 3);
    assert!(matches!(m.power(0), Err(Error::OutOfRange(_))));
    let (_, c) = cubic();
    let c2 = c.power(2).unwrap();
    assert_eq!(c2.generators().len(), 6);
    assert!(c2.generators().iter().all(|g| g.degree() == Some(4)));
    let f = Ideal::parse(&r, &["x^2 - y^2"]).unwrap();
    assert_eq!(f.power(3).unwrap().generators()[0], parse_polynomial(&r, "x^2 - y^2").unwrap().pow(3));
}

#[test]
fn power_product_law() {
    let (_, c) = cubic();
    let lhs = c.power(1).unwrap().product(&c.power(2).unwrap()).unwrap();
    assert!(lhs.same_ideal(&c.power(3).unwrap()).unwrap());
}

#[test]
fn colons() {
    let r = xy();
    let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
    let y = parse_polynomial(&r, "y").unwrap();
    assert!(i.colon(&y).unwrap().same_ideal(&Ideal::parse(&r, &["x"]).unwrap()).unwrap());
    assert!(i.colon(&Polynomial::one(&r)).unwrap().same_ideal(&i).unwrap());
    assert!(matches!(i.colon(&Polynomial::zero(&r)), Err(Error::ZeroPolynomial)));
    let j = Ideal::parse(&r, &["x^2*y", "x*y^2"]).unwrap();
    let xy = parse_polynomial(&r, "x*y").unwrap();
    assert!(j.colon(&xy).unwrap().same_ideal(&Ideal::parse(&r, &["x", "y"]).unwrap()).unwrap());
}

#[test]
fn intersections() {
    let r = xy();
    let a = Ideal::parse(&r, &["x"]).unwrap();
    let b = Ideal::parse(&r, &["y"]).unwrap();
    assert!(a.intersect(&b).unwrap().same_ideal(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
    let c = Ideal::parse(&r, &["x^2", "y"]).unwrap();
    let expect = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
    assert!(a.intersect(&c).unwrap().same_ideal(&expect).unwrap());
}

#[test]
fn saturation_small() {
    let r = xy();
    let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
    let x = Ideal::parse(&r, &["x"]).unwrap();
    assert!(i.saturate().unwrap().same_ideal(&x).unwrap());
    assert!(i.saturate_by(&Ideal::maximal(&r)).unwrap().same_ideal(&x).unwrap());
    assert!(!i.is_saturated().unwrap());
    // an m-primary ideal saturates to the unit ideal
    let p = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
    assert!(p.saturate().unwrap().groebner_basis().unwrap().is_unit_ideal());
}

#[test]
fn twisted_cubic_saturation() {
    let (r, c) = cubic();
    assert!(c.is_saturated().unwrap());
    let c2 = c.power(2).unwrap();
    let s = c2.saturate().unwrap();
    assert!(s.contains_ideal(&c2).unwrap());
    for k in 4..9 {
        assert_eq!(s.hilbert_function(k).unwrap(), c2.hilbert_function(k).unwrap());
    }
    let dual = c2.saturate_by(&Ideal::maximal(&r)).unwrap();
    assert!(dual.same_ideal(&s).unwrap());
    assert!(s.saturate().unwrap().same_ideal(&s).unwrap());
}

#[test]
fn saturation_with_embedded_component() {
    // x*(x, y, z) in three variables: the sheaf is that of the plane x = 0
    let r = PolynomialRing::standard(3, Rationals).unwrap();
    let i = Ideal::parse(&r, &["x0^2", "x0*x1", "x0*x2"]).unwrap();
    let s = i.saturate().unwrap();
    assert!(s.same_ideal(&Ideal::parse(&r, &["x0"]).unwrap()).unwrap());
    let j = Ideal::parse(&r, &["x0^3", "x0^2*x1", "x1^4"]).unwrap();
    let via_colon = j.saturate_by(&Ideal::maximal(&r)).unwrap();
    assert!(j.saturate().unwrap().same_ideal(&via_colon).unwrap());
}

#[test]
fn elimination() {
    let r = PolynomialRing::new(&["x", "y", "z"], Rationals).unwrap();
    let i = Ideal::parse(&r, &["x - y", "y - z"]).unwrap();
    let e = i.eliminate(&[1]).unwrap();
    assert_eq!(e.ring().variable_names(), ["x", "z"].map(String::from).as_slice());
    assert!(e.same_ideal(&Ideal::parse(e.ring(), &["x - z"]).unwrap()).unwrap());
    let j = Ideal::parse(&r, &["y - z", "x"]).unwrap();
    let e = j.eliminate(&[1]).unwrap();
    assert!(e.same_ideal(&Ideal::parse(e.ring(), &["x"]).unwrap()).unwrap());
    assert!(matches!(i.eliminate(&[5]), Err(Error::OutOfRange(_))));
}

#[test]
fn hilbert_functions() {
    let (r, c) = cubic();
    let q: Vec<i128> = (0..3).map(|k| c.quotient_hilbert_function(k).unwrap()).collect();
    assert_eq!(q, vec![1, 4, 7]);
    assert_eq!(c.hilbert_function(2).unwrap(), 3);
    assert_eq!(Ideal::<Rationals>::new(&r, vec![]).unwrap().quotient_hilbert_function(2).unwrap(), 10);
    assert_eq!(c.krull_dimension().unwrap(), 2);
}

#[test]
fn d_invariants() {
    let (r, c) = cubic();
    assert_eq!(c.d_invariant().unwrap(), 2);
    let h = Ideal::parse(&r, &["x0^3 - x1*x2*x3"]).unwrap();
    assert_eq!(h.d_invariant().unwrap(), 3);
    let l = Ideal::parse(&r, &["x0", "x1"]).unwrap();
    assert_eq!(l.d_invariant().unwrap(), 1);
    // mixed degrees: a line union a point is cut out by quadrics
    let m = Ideal::parse(&r, &["x0", "x1*x2", "x1*x3"]).unwrap();
    assert_eq!(m.d_invariant().unwrap(), 2);
    assert!(matches!(Ideal::<Rationals>::new(&r, vec![]).unwrap().d_invariant(), Err(Error::ZeroIdeal)));
}

#[test]
fn degree_basis_spans_degree_piece() {
    let (_, c) = cubic();
    for d in 0..5 {
        let b = c.degree_basis(d).unwrap();
        assert_eq!(b.len() as i128, c.hilbert_function(d as i64).unwrap());
        assert!(b.iter().all(|g| c.contains(g).unwrap()));
    }
}

#[test]
fn prime_field_saturation() {
    let k = PrimeField::new(32003).unwrap();
    let r = PolynomialRing::standard(3, k).unwrap();
    // (x0) meets the double point (x0^2, x1) of [0:0:1], which survives
    let i = Ideal::parse(&r, &["x0^2", "x0*x1"]).unwrap();
    assert!(i.is_saturated().unwrap());
    let s = Ideal::parse(&r, &["x0^2", "x0*x1", "x0*x2"]).unwrap().saturate().unwrap();
    assert!(s.same_ideal(&Ideal::parse(&r, &["x0"]).unwrap()).unwrap());
}

#[test]
fn ideal_file_round_trip_text() {
    let (_, c) = cubic();
    let text = c.to_ideal_file("S", "I");
    assert!(text.starts_with("ring S vars x0 x1 x2 x3 field QQ\nideal I\n"));
    assert_eq!(text.lines().count(), 5);
}

fn monomial_ideal() -> impl Strategy<Value = Vec<Vec<u16>>> {
    proptest::collection::vec(proptest::collection::vec(0u16..3, 3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn saturation_routes_agree(gens in monomial_ideal()) {
        let r = PolynomialRing::standard(3, Rationals).unwrap();
        let polys: Vec<_> = gens
            .iter()
            .map(|e| Polynomial::monomial(&r, Rationals.one(), Monomial::from_slice(e)))
            .filter(|p| p.degree() != Some(0))
            .collect();
        prop_assume!(!polys.is_empty());
        let i = Ideal::new(&r, polys).unwrap();
        let a = i.saturate().unwrap();
        let b = i.saturate_by(&Ideal::maximal(&r)).unwrap();
        prop_assert!(a.same_ideal(&b).unwrap());
        prop_assert!(a.contains_ideal(&i).unwrap());
    }

    #[test]
    fn hilbert_complement(gens in monomial_ideal(), k in 0i64..6) {
        let r = PolynomialRing::standard(3, Rationals).unwrap();
        let polys: Vec<_> = gens
            .iter()
            .map(|e| Polynomial::monomial(&r, Rationals.one(), Monomial::from_slice(e)))
            .collect();
        let i = Ideal::new(&r, polys).unwrap();
        prop_assert_eq!(i.hilbert_function(k).unwrap() + i.quotient_hilbert_function(k).unwrap(), binomial(k + 2, 2));
    }
}
