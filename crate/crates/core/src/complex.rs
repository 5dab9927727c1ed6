//! Bounded complexes of indecomposable projectives with path-combination entries.
//!
//! A component `P(x) -> P(y)` is a combination of paths `y -> x`. Entries are
//! keyed by `(from slot, to slot)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Algebra, PathId};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::Vertex;
use crate::words::{Band, Dir, HString, Object};

/// Sorted by path id, coefficients nonzero.
pub type LinComb<F> = Vec<(PathId, F)>;

pub fn lc_single<F: Field>(p: PathId, c: F) -> LinComb<F> {
    if c.is_zero() {
        Vec::new()
    } else {
        vec![(p, c)]
    }
}

pub fn lc_add<F: Field>(a: &LinComb<F>, b: &LinComb<F>) -> LinComb<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let c = a[i].1.clone() + b[j].1.clone();
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn lc_scale<F: Field>(a: &LinComb<F>, c: &F) -> LinComb<F> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(p, x)| (*p, x.clone() * c.clone())).collect()
}

pub fn lc_neg<F: Field>(a: &LinComb<F>) -> LinComb<F> {
    a.iter().map(|(p, x)| (*p, -x.clone())).collect()
}

/// Map composite: `first` then `second`.
pub fn lc_compose<F: Field>(alg: &Algebra, first: &LinComb<F>, second: &LinComb<F>) -> LinComb<F> {
    let mut acc: BTreeMap<PathId, F> = BTreeMap::new();
    for (p, x) in first {
        for (r, y) in second {
            if let Some(c) = alg.compose_maps(*p, *r) {
                let e = acc.entry(c).or_insert_with(F::zero);
                *e = e.clone() + x.clone() * y.clone();
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Coefficient of the trivial path, if any.
pub fn lc_unit<F: Field>(alg: &Algebra, a: &LinComb<F>) -> Option<F> {
    a.iter().find(|(p, _)| alg.is_trivial(*p)).map(|(_, c)| c.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub deg: i32,
    pub vertex: Vertex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex<F: Field> {
    pub slots: Vec<Slot>,
    pub d: BTreeMap<(usize, usize), LinComb<F>>,
}

/// A graded map between two complexes; components `(source slot, target slot)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism<F: Field> {
    pub degree: i32,
    pub comps: BTreeMap<(usize, usize), LinComb<F>>,
}

pub type ChainMap<F> = Morphism<F>;

impl<F: Field> Morphism<F> {
    pub fn zero(degree: i32) -> Self {
        Morphism { degree, comps: BTreeMap::new() }
    }
    pub fn add_term(&mut self, from: usize, to: usize, p: PathId, c: F) {
        let e = self.comps.entry((from, to)).or_default();
        *e = lc_add(e, &lc_single(p, c));
        if e.is_empty() {
            self.comps.remove(&(from, to));
        }
    }
    pub fn add_comb(&mut self, from: usize, to: usize, l: &LinComb<F>) {
        let e = self.comps.entry((from, to)).or_default();
        *e = lc_add(e, l);
        if e.is_empty() {
            self.comps.remove(&(from, to));
        }
    }
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), l) in &other.comps {
            out.add_comb(*i, *j, l);
        }
        out
    }
    pub fn scaled(&self, c: &F) -> Self {
        let mut out = Morphism::zero(self.degree);
        for ((i, j), l) in &self.comps {
            out.add_comb(*i, *j, &lc_scale(l, c));
        }
        out
    }
    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-F::one()))
    }
    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }
    /// `self` then `other`.
    pub fn then(&self, alg: &Algebra, other: &Self) -> Self {
        let mut out = Morphism::zero(self.degree + other.degree);
        for ((i, j), l) in &self.comps {
            for ((_, k), m) in other.comps.range((*j, 0)..(*j + 1, 0)) {
                out.add_comb(*i, *k, &lc_compose(alg, l, m));
            }
        }
        out
    }
    pub fn num_terms(&self) -> usize {
        self.comps.values().map(Vec::len).sum()
    }
}

impl<F: Field> Complex<F> {
    pub fn zero() -> Self {
        Complex { slots: Vec::new(), d: BTreeMap::new() }
    }

    pub fn differential(&self) -> Morphism<F> {
        Morphism { degree: 1, comps: self.d.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn build_string(alg: &Algebra, s: &HString) -> Self {
        let degs = s.degrees();
        let slots: Vec<Slot> = s.vertices().into_iter().zip(degs).map(|(vertex, deg)| Slot { deg, vertex }).collect();
        let mut d = BTreeMap::new();
        for (k, l) in s.letters().iter().enumerate() {
            let p = alg.id(&l.path);
            let key = match l.dir {
                Dir::Direct => (k, k + 1),
                Dir::Inverse => (k + 1, k),
            };
            d.insert(key, lc_single(p, F::one()));
        }
        Complex { slots, d }
    }

    pub fn build_band(alg: &Algebra, b: &Band<F>) -> Self {
        let n = b.len();
        let slots: Vec<Slot> = b.vertices().into_iter().zip(b.degrees()).map(|(vertex, deg)| Slot { deg, vertex }).collect();
        let mut d = BTreeMap::new();
        for (k, l) in b.letters().iter().enumerate() {
            let p = alg.id(&l.path);
            let c = if k == b.pos() { b.scalar().clone() } else { F::one() };
            let key = match l.dir {
                Dir::Direct => (k, (k + 1) % n),
                Dir::Inverse => ((k + 1) % n, k),
            };
            // two letters may join the same pair of slots
            let e: &mut LinComb<F> = d.entry(key).or_default();
            *e = lc_add(e, &lc_single(p, c));
        }
        Complex { slots, d }
    }

    pub fn build(alg: &Algebra, o: &Object<F>) -> Self {
        match o {
            Object::String(s) => Complex::build_string(alg, s),
            Object::Band(b) => Complex::build_band(alg, b),
        }
    }

    pub fn direct_sum(parts: &[Complex<F>]) -> Self {
        let mut out = Complex::zero();
        for c in parts {
            let off = out.slots.len();
            out.slots.extend_from_slice(&c.slots);
            for ((i, j), l) in &c.d {
                out.d.insert((i + off, j + off), l.clone());
            }
        }
        out
    }

    pub fn check_d2(&self, alg: &Algebra) -> Result<()> {
        let d = self.differential();
        let dd = d.then(alg, &d);
        match dd.comps.keys().next() {
            None => Ok(()),
            Some((i, j)) => Err(Error::NotAComplex(format!("slots {i} -> {j}"))),
        }
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.slots.iter().map(|s| s.deg).min()?;
        let hi = self.slots.iter().map(|s| s.deg).max()?;
        Some((lo, hi))
    }

    pub fn slots_in(&self, deg: i32) -> Vec<usize> {
        (0..self.slots.len()).filter(|&i| self.slots[i].deg == deg).collect()
    }

    /// Projectives per degree.
    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for s in &self.slots {
            *m.entry(s.deg).or_insert(0) += 1;
        }
        m
    }

    /// Sorted vertex multiset per degree.
    pub fn profile(&self) -> BTreeMap<i32, Vec<Vertex>> {
        let mut m: BTreeMap<i32, Vec<Vertex>> = BTreeMap::new();
        for s in &self.slots {
            m.entry(s.deg).or_default().push(s.vertex);
        }
        for v in m.values_mut() {
            v.sort();
        }
        m
    }

    pub fn is_chain_map(&self, alg: &Algebra, target: &Complex<F>, f: &Morphism<F>) -> bool {
        let left = self.differential().then(alg, f);
        let right = f.then(alg, &target.differential());
        let sign = if f.degree.rem_euclid(2) == 0 { F::one() } else { -F::one() };
        left.scaled(&sign) == right
    }

    /// Cone of `f: self -> target`: `M^n = P^{n+1} ⊕ Q^n`, differential `[[-d_P, 0], [f, d_Q]]`.
    /// Source slots come first.
    pub fn mapping_cone(&self, alg: &Algebra, target: &Complex<F>, f: &Morphism<F>) -> Result<Complex<F>> {
        if f.degree != 0 || !self.is_chain_map(alg, target, f) {
            return Err(Error::NotAChainMap("mapping cone input".into()));
        }
        let off = self.slots.len();
        let mut slots: Vec<Slot> = self.slots.iter().map(|s| Slot { deg: s.deg - 1, vertex: s.vertex }).collect();
        slots.extend_from_slice(&target.slots);
        let mut d = BTreeMap::new();
        for ((i, j), l) in &self.d {
            d.insert((*i, *j), lc_neg(l));
        }
        for ((i, j), l) in &f.comps {
            d.insert((*i, *j + off), l.clone());
        }
        for ((i, j), l) in &target.d {
            d.insert((*i + off, *j + off), l.clone());
        }
        Ok(Complex { slots, d })
    }

    /// Dimension of the cohomology in each degree, viewing `P(x)` as the span of paths from `x`.
    pub fn cohomology_dims(&self, alg: &Algebra) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        let Some((lo, hi)) = self.degree_range() else { return out };
        let basis = |deg: i32| -> Vec<(usize, PathId)> {
            let mut v = Vec::new();
            for i in self.slots_in(deg) {
                let x = self.slots[i].vertex;
                for y in 0..alg.quiver.num_vertices() {
                    for &p in alg.paths_between(x, y) {
                        v.push((i, p));
                    }
                }
            }
            v
        };
        // rank of d^n as a linear map on the underlying vector spaces
        let rank_of = |deg: i32| -> usize {
            let src = basis(deg);
            let tgt = basis(deg + 1);
            if src.is_empty() || tgt.is_empty() {
                return 0;
            }
            let col: std::collections::HashMap<(usize, PathId), usize> = tgt.iter().enumerate().map(|(k, x)| (*x, k)).collect();
            let mut rows = Vec::new();
            for (i, p) in &src {
                let mut row = vec![F::zero(); tgt.len()];
                for ((_, j), l) in self.d.range((*i, 0)..(*i + 1, 0)) {
                    for (w, c) in l {
                        // p ↦ w then p
                        if let Some(r) = alg.then(*w, *p) {
                            let k = col[&(*j, r)];
                            row[k] = row[k].clone() + c.clone();
                        }
                    }
                }
                rows.push(row);
            }
            crate::linalg::rank(rows)
        };
        for deg in lo..=hi {
            let dim = basis(deg).len();
            let h = dim - rank_of(deg) - rank_of(deg - 1);
            out.insert(deg, h);
        }
        out
    }

    pub fn to_json(&self, alg: &Algebra) -> serde_json::Value {
        let q = &alg.quiver;
        let mut order: Vec<usize> = (0..self.slots.len()).collect();
        order.sort_by_key(|&i| (self.slots[i].deg, i));
        let slots: Vec<serde_json::Value> = order
            .iter()
            .map(|&i| serde_json::json!({"id": i, "degree": self.slots[i].deg, "vertex": q.vertex_name(self.slots[i].vertex)}))
            .collect();
        let entries: Vec<serde_json::Value> = self
            .d
            .iter()
            .map(|((i, j), l)| {
                let terms: Vec<serde_json::Value> =
                    l.iter().map(|(p, c)| serde_json::json!({"coeff": c.to_string(), "path": alg.name(*p)})).collect();
                serde_json::json!({"from": i, "to": j, "terms": terms})
            })
            .collect();
        serde_json::json!({"slots": slots, "entries": entries})
    }
}
