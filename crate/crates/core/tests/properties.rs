//! Randomised invariants over the bundled algebras.

use proptest::prelude::*;

use gentle::complex::Complex;
use gentle::cone::cone;
use gentle::hom::standard_basis;
use gentle::oracle::{is_isomorphic, minimize};
use gentle::verify::check_cone;
use gentle::{corpus, Algebra, Field, Fp, Object, Quiver, Rat};

fn family(name: &str) -> (Quiver, Algebra, Vec<Object<Rat>>) {
    let q = corpus::algebra(name).unwrap();
    let alg = Algebra::new(q.clone()).unwrap();
    let objs = corpus::objects::<Rat>(&q, 4, 4, 2, &[Rat::from_i64(2), Rat::from_i64(-1)]);
    (q, alg, objs)
}

fn algebra_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(corpus::NAMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inversion_is_an_involution(name in algebra_name(), i in any::<prop::sample::Index>()) {
        let (q, _, objs) = family(name);
        let o = &objs[i.index(objs.len())];
        match o {
            Object::String(s) => {
                prop_assert_eq!(&s.invert().invert(), s);
                prop_assert_eq!(s.invert().degree_profile(), s.degree_profile());
                prop_assert_eq!(s.invert().canonical(), s.canonical());
            }
            Object::Band(b) => {
                prop_assert_eq!(b.invert().invert().canonical(), b.canonical());
                prop_assert!(b.invert().revalidate(&q).is_ok());
            }
        }
    }

    #[test]
    fn rotation_keeps_the_band(name in algebra_name(), i in any::<prop::sample::Index>(), k in 0i64..8) {
        let (_, alg, objs) = family(name);
        let bands: Vec<_> = objs.iter().filter(|o| o.is_band()).collect();
        prop_assume!(!bands.is_empty());
        let Object::Band(b) = bands[i.index(bands.len())] else { unreachable!() };
        let r = b.rotate(k);
        prop_assert_eq!(r.canonical(), b.canonical());
        let (x, y) = (Complex::build(&alg, &Object::Band(b.clone())), Complex::build(&alg, &Object::Band(r)));
        prop_assert!(is_isomorphic(&alg, &x, &y, 1));
    }

    #[test]
    fn cones_agree_with_the_oracle(name in algebra_name(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), n in -3i32..=3) {
        let (q, alg, objs) = family(name);
        let s = &objs[i.index(objs.len())];
        let t = objs[j.index(objs.len())].shift(n);
        for m in standard_basis(&alg, s, &t).unwrap() {
            let Ok(c) = check_cone(&alg, s, &t, &m, 9) else { continue };
            prop_assert!(c.isomorphic, "{} -> {}", s.to_expr(&q), t.to_expr(&q));
            let d = Complex::build(&alg, s).mapping_cone(&alg, &Complex::build(&alg, &t), &m.rep).unwrap();
            prop_assert!(d.check_d2(&alg).is_ok());
            prop_assert_eq!(minimize(&alg, &d).cohomology_dims(&alg).into_iter().filter(|x| x.1 > 0).collect::<Vec<_>>(),
                d.cohomology_dims(&alg).into_iter().filter(|x| x.1 > 0).collect::<Vec<_>>());
            for part in cone(&alg, s, &t, &m).unwrap() {
                if let Some(o) = part.object() {
                    prop_assert!(Object::<Rat>::parse(&q, &o.to_expr(&q)).is_ok());
                }
            }
        }
    }

    #[test]
    fn prime_field_arithmetic(a in 1i64..32003, b in 0i64..32003, c in 0i64..32003) {
        type F = Fp<32003>;
        let (x, y, z) = (F::from_i64(a), F::from_i64(b), F::from_i64(c));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z);
        prop_assert!((x.clone() * x.inv()).is_one());
        prop_assert_eq!(y.clone() - y, F::zero());
    }
}
