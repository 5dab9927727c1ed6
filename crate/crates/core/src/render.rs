//! Text rendering of unfolded complexes and maps between them.

use crate::algebra::Algebra;
use crate::complex::{Complex, Morphism};
use crate::field::Field;
use crate::quiver::Quiver;
use crate::words::{Dir, Object};

fn node(q: &Quiver, v: usize, deg: i32) -> String {
    format!("P({})[{deg}]", q.vertex_name(v))
}

/// One line per object: `P(x)[d] -p-> P(y)[d+1] <-q- ...`. Bands repeat their
/// first projective at the end; the scalar sits on its letter as `λ·p`.
pub fn unfolded<F: Field>(q: &Quiver, o: &Object<F>) -> String {
    let vs = o.vertices();
    let ds = o.degrees();
    let mut out = node(q, vs[0], ds[0]);
    let n = o.letters().len();
    for (k, l) in o.letters().iter().enumerate() {
        let mut label = q.path_name(&l.path);
        if let Object::Band(b) = o {
            if k == b.pos() && !b.scalar().is_one() {
                label = format!("({})·{label}", b.scalar());
            }
        }
        let arrow = match l.dir {
            Dir::Direct => format!(" -{label}-> "),
            Dir::Inverse => format!(" <-{label}- "),
        };
        let j = if o.is_band() { (k + 1) % n } else { k + 1 };
        out += &arrow;
        out += &node(q, vs[j], ds[j]);
    }
    if o.is_band() {
        out += " (cyclic)";
    }
    out
}

/// Components of a chain map, one per line. Identities print as `=`.
pub fn map_rows<F: Field>(alg: &Algebra, src: &Complex<F>, dst: &Complex<F>, m: &Morphism<F>) -> Vec<String> {
    let q = &alg.quiver;
    let mut rows = Vec::new();
    for (&(i, j), lc) in &m.comps {
        let (a, b) = (&src.slots[i], &dst.slots[j]);
        let from = format!("σ{i} {}", node(q, a.vertex, a.deg));
        let to = format!("τ{j} {}", node(q, b.vertex, b.deg));
        for (p, c) in lc {
            let path = alg.path(*p);
            if path.is_trivial() && c.is_one() {
                rows.push(format!("{from} = {to}"));
            } else {
                let label = match c.to_string() {
                    _ if c.is_one() => q.path_name(path),
                    k if k.starts_with('-') => format!("({k})·{}", q.path_name(path)),
                    k => format!("{k}·{}", q.path_name(path)),
                };
                rows.push(format!("{from} -{label}-> {to}"));
            }
        }
    }
    rows
}
