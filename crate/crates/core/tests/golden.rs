//! Examples with frozen answers. Every expectation below was first
//! confirmed against the literal cone.

use gentle::cone::cone;
use gentle::hom::standard_basis;
use gentle::oracle::{decompose, hom_dimension_objects};
use gentle::verify::{check_cone, oracle_cone};
use gentle::{corpus, parse_presentation, Algebra, Error, Field, Object, Quiver, Rat, F32003};

fn setup(name: &str) -> (Quiver, Algebra) {
    let q = corpus::algebra(name).unwrap();
    (q.clone(), Algebra::new(q).unwrap())
}

fn cone_exprs<F: Field>(name: &str, s: &str, t: &str, shift: i32, k: usize) -> Vec<String> {
    let (q, alg) = setup(name);
    let s: Object<F> = Object::parse(&q, s).unwrap();
    let t: Object<F> = Object::parse(&q, t).unwrap();
    let t = t.shift(shift);
    let basis = standard_basis(&alg, &s, &t).unwrap();
    let m = &basis[k];
    assert!(check_cone(&alg, &s, &t, m, 3).unwrap().isomorphic);
    cone(&alg, &s, &t, m).unwrap().iter().map(|c| c.expr(&q)).collect()
}

#[test]
fn graph_map_between_strings() {
    let got = cone_exprs::<Rat>("A", "e (d*c) b a ~d", "~e ~f c b (a*f) e", -3, 0);
    assert_eq!(got, ["d f e @anchor=2", "e d f e @anchor=-1"]);
}

#[test]
fn quasi_graph_class() {
    let (q, alg) = setup("A");
    let s: Object<Rat> = Object::parse(&q, "b a c b").unwrap();
    let t: Object<Rat> = Object::<Rat>::parse(&q, "~f c b a").unwrap().shift(-2);
    let basis = standard_basis(&alg, &s, &t).unwrap();
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0].kind.name(), "quasi");
    assert_eq!(basis[0].conditions(), ["LQ3", "RQ3"]);
    let got = cone_exprs::<Rat>("A", "b a c b", "~f c b a", -2, 0);
    assert_eq!(got, ["b a c b a @anchor=-1", "~b ~c f @anchor=3"]);
}

#[test]
fn band_graph_map_scalar() {
    let got = cone_exprs::<Rat>("B", "~e ~d c b @scalar=2", "~j ~i ~g f c (b*a) @scalar=3", 0, 0);
    assert_eq!(got, ["a ~j ~i ~g (f*d) e @scalar=-3/2 @pos=0 @anchor=-1"]);
}

#[test]
fn band_graph_map_scalar_mod_p() {
    // -3/2 = -(3 * 16002) = 16000 in F_32003
    let got = cone_exprs::<F32003>("B", "~e ~d c b @scalar=2", "~j ~i ~g f c (b*a) @scalar=3", 0, 0);
    assert_eq!(got, ["a ~j ~i ~g (f*d) e @scalar=16000 @pos=0 @anchor=-1"]);
}

#[test]
fn literal_cone_decomposes_the_same_way() {
    let (q, alg) = setup("A");
    let s: Object<Rat> = Object::parse(&q, "e (d*c) b a ~d").unwrap();
    let t: Object<Rat> = Object::<Rat>::parse(&q, "~e ~f c b (a*f) e").unwrap().shift(-3);
    let m = &standard_basis(&alg, &s, &t).unwrap()[0];
    let parts = decompose(&alg, &oracle_cone(&alg, &s, &t, m).unwrap()).unwrap();
    let mut words: Vec<String> = parts.iter().map(|o| o.canonical().to_expr(&q)).collect();
    words.sort();
    assert_eq!(words.len(), 2);
    assert!(words.iter().all(|w| w.contains("d f e")));
}

#[test]
fn stalk_identity() {
    let (q, alg) = setup("A");
    let s: Object<Rat> = Object::parse(&q, "1_0").unwrap();
    let basis = standard_basis(&alg, &s, &s).unwrap();
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0].kind.name(), "graph");
    assert!(cone(&alg, &s, &s, &basis[0]).unwrap().iter().all(|c| c.is_zero()));
}

#[test]
fn trivial_overlap_bands_have_no_maps() {
    // two bands in B meeting only at P(5): Hom vanishes in every degree
    let (q, alg) = setup("B");
    let s: Object<Rat> = Object::parse(&q, "(g*h) ~(f*d) @scalar=2").unwrap();
    let t: Object<Rat> = Object::parse(&q, "b ~e ~d c @scalar=3").unwrap();
    for n in -6..=6 {
        assert_eq!(hom_dimension_objects(&alg, &s, &t.shift(n)), 0);
        assert!(standard_basis(&alg, &s, &t.shift(n)).unwrap().is_empty());
    }
    assert!(matches!(Object::<Rat>::parse(&q, "(g*h*e) ~b ~c ~f @scalar=2/3"), Err(Error::UnbalancedDirections { direct: 1, inverse: 3 })));
}

#[test]
fn presentations() {
    assert!(corpus::NAMES.iter().all(|n| corpus::algebra(n).is_ok()));
    let long = "quiver X\nvertex 0 1 2 3\narrow a : 0 -> 1\narrow b : 1 -> 2\narrow c : 2 -> 3\nrel c*b*a\n";
    assert!(matches!(parse_presentation(long), Err(Error::Syntax { line: 6, .. })));
    let extra = format!("{}arrow z : 0 -> 4\n", corpus::source("A").unwrap());
    match parse_presentation(&extra) {
        Err(Error::NotGentle(v)) => assert!(v.iter().any(|x| x.condition == 1)),
        other => panic!("expected a gentleness violation, got {other:?}"),
    }
}
