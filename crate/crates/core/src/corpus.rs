//! Bundled algebras and the finite word families swept by the verifier.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{parse_presentation, Quiver};
use crate::words::{Band, Dir, HString, Letter, Object};

pub const NAMES: [&str; 4] = ["A", "B", "linear", "cycle2"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "A" => include_str!("../corpus/A.alg"),
        "B" => include_str!("../corpus/B.alg"),
        "linear" => include_str!("../corpus/linear.alg"),
        "cycle2" => include_str!("../corpus/cycle2.alg"),
        _ => return None,
    })
}

pub fn algebra(name: &str) -> Result<Quiver> {
    let text = source(name).ok_or_else(|| Error::Syntax { line: 0, msg: format!("no bundled algebra `{name}`") })?;
    parse_presentation(text)
}

/// Every letter whose path has length at most `max_path`.
pub fn letters(q: &Quiver, max_path: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for p in q.enumerate_paths(max_path) {
        if p.is_trivial() {
            continue;
        }
        out.push(Letter::new(Dir::Direct, p.clone()));
        out.push(Letter::new(Dir::Inverse, p));
    }
    out
}

/// Homotopy strings with at most `max_letters` letters, one per inversion
/// class, anchored at 0. Trivial strings come first.
pub fn strings(q: &Quiver, max_letters: usize, max_path: usize) -> Vec<HString> {
    let alphabet = letters(q, max_path);
    let mut out: Vec<HString> = (0..q.num_vertices()).map(|v| HString::trivial(v, 0)).collect();
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<Vec<Letter>> = alphabet.iter().map(|l| vec![l.clone()]).collect();
    for _ in 0..max_letters {
        let mut next = Vec::new();
        for w in frontier {
            let s = HString::from_letters(q, w.clone(), 0).expect("extensions keep junctions valid");
            let key = s.canonical().word(q);
            if seen.insert(key) {
                out.push(s.canonical().with_anchor(0));
            }
            if w.len() == max_letters {
                continue;
            }
            let last = w.last().unwrap();
            for l in &alphabet {
                if HString::from_letters(q, vec![last.clone(), l.clone()], 0).is_ok() {
                    let mut v = w.clone();
                    v.push(l.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Bands with at most `max_letters` letters up to rotation and inversion,
/// carrying the scalar `lambda` on their first direct letter.
pub fn bands<F: Field>(q: &Quiver, max_letters: usize, max_path: usize, lambda: &F) -> Vec<Band<F>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for s in strings(q, max_letters, max_path) {
        for cand in [s.clone(), s.invert()] {
            let ls = cand.letters().to_vec();
            if ls.len() < 2 || ls.len() % 2 == 1 {
                continue;
            }
            let pos = ls.iter().position(|l| l.dir == Dir::Direct).unwrap_or(0);
            if let Ok(b) = Band::new(q, ls, F::one(), pos, 0) {
                let c = b.canonical();
                if seen.insert(c.word(q)) {
                    out.push(c.with_anchor(0).with_scalar(lambda.clone()));
                }
            }
        }
    }
    out
}

/// Strings and bands of the sweep as objects.
pub fn objects<F: Field>(q: &Quiver, max_string: usize, max_band: usize, max_path: usize, lambdas: &[F]) -> Vec<Object<F>> {
    let mut out: Vec<Object<F>> = strings(q, max_string, max_path).into_iter().map(Object::String).collect();
    for l in lambdas {
        out.extend(bands(q, max_band, max_path, l).into_iter().map(Object::Band));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    #[test]
    fn bundled_algebras_are_gentle() {
        for n in NAMES {
            let q = algebra(n).unwrap();
            assert!(q.check_gentle().is_empty(), "{n}");
        }
        let a = algebra("A").unwrap();
        assert_eq!((a.num_vertices(), a.num_arrows(), a.relations().len()), (5, 6, 6));
    }

    #[test]
    fn families_are_valid_and_distinct() {
        let q = algebra("A").unwrap();
        let ss = strings(&q, 3, 2);
        for s in &ss {
            s.revalidate(&q).unwrap();
        }
        let words: BTreeSet<String> = ss.iter().map(|s| s.canonical().word(&q)).collect();
        assert_eq!(words.len(), ss.len());
        let qb = algebra("B").unwrap();
        let bs = bands(&qb, 4, 3, &Rat::from_i64(1));
        assert!(bs.iter().any(|b| b.len() == 4));
        for b in &bs {
            b.revalidate(&qb).unwrap();
        }
    }
}
