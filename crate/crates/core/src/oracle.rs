//! Brute-force ground truth on explicit complexes: Hom spaces modulo homotopy,
//! Gaussian elimination of invertible entries, decomposition of minimal
//! complexes into strings and bands, and a chain-isomorphism test.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, PathId};
use crate::complex::{lc_add, lc_compose, lc_neg, lc_scale, lc_single, lc_unit, Complex, LinComb, Morphism, Slot};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_invertible, Echelon};
use crate::words::{Band, Dir, HString, Letter, Object};

/// Coordinates for graded maps `C -> D` of a fixed degree.
pub struct MapSpace {
    pub degree: i32,
    pub unknowns: Vec<(usize, usize, PathId)>,
    index: HashMap<(usize, usize, PathId), usize>,
}

impl MapSpace {
    pub fn new<F: Field>(alg: &Algebra, c: &Complex<F>, d: &Complex<F>, degree: i32) -> MapSpace {
        let mut unknowns = Vec::new();
        for (i, si) in c.slots.iter().enumerate() {
            for (j, sj) in d.slots.iter().enumerate() {
                if sj.deg == si.deg + degree {
                    for &p in alg.paths_between(sj.vertex, si.vertex) {
                        unknowns.push((i, j, p));
                    }
                }
            }
        }
        let index = unknowns.iter().enumerate().map(|(k, u)| (*u, k)).collect();
        MapSpace { degree, unknowns, index }
    }

    pub fn len(&self) -> usize {
        self.unknowns.len()
    }

    pub fn to_vector<F: Field>(&self, m: &Morphism<F>) -> Option<Vec<F>> {
        let mut v = vec![F::zero(); self.len()];
        for ((i, j), l) in &m.comps {
            for (p, c) in l {
                let k = *self.index.get(&(*i, *j, *p))?;
                v[k] = c.clone();
            }
        }
        Some(v)
    }

    pub fn to_morphism<F: Field>(&self, v: &[F]) -> Morphism<F> {
        let mut m = Morphism::zero(self.degree);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (i, j, p) = self.unknowns[k];
                m.add_term(i, j, p, c.clone());
            }
        }
        m
    }
}

fn incoming<F: Field>(c: &Complex<F>) -> Vec<Vec<(usize, &LinComb<F>)>> {
    let mut v = vec![Vec::new(); c.slots.len()];
    for ((i, j), l) in &c.d {
        v[*j].push((*i, l));
    }
    v
}

/// Chain maps, homotopies and the quotient for a pair of complexes.
pub struct HomSpace<F: Field> {
    pub space: MapSpace,
    /// Basis of the chain maps.
    pub cycles: Vec<Vec<F>>,
    /// Echelon basis of the null-homotopic maps.
    pub boundaries: Echelon<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn new(alg: &Algebra, c: &Complex<F>, d: &Complex<F>) -> HomSpace<F> {
        let space = MapSpace::new(alg, c, d, 0);
        let n = space.len();
        // commutation equations, one per (i in C^k, l in D^{k+1}, path)
        let mut rows: HashMap<(usize, usize, PathId), Vec<F>> = HashMap::new();
        let c_in = incoming(c);
        for (k, &(i, j, p)) in space.unknowns.iter().enumerate() {
            // f then d_D
            for ((_, l), dl) in d.d.range((j, 0)..(j + 1, 0)) {
                for (w, cw) in dl {
                    if let Some(z) = alg.compose_maps(p, *w) {
                        let row = rows.entry((i, *l, z)).or_insert_with(|| vec![F::zero(); n]);
                        row[k] = row[k].clone() + cw.clone();
                    }
                }
            }
            // d_C then f
            for &(i0, dl) in &c_in[i] {
                for (w, cw) in dl {
                    if let Some(z) = alg.compose_maps(*w, p) {
                        let row = rows.entry((i0, j, z)).or_insert_with(|| vec![F::zero(); n]);
                        row[k] = row[k].clone() - cw.clone();
                    }
                }
            }
        }
        let mut eq = Echelon::new(n);
        let mut keys: Vec<_> = rows.keys().copied().collect();
        keys.sort();
        for key in keys {
            eq.insert(rows.remove(&key).unwrap());
        }
        let cycles = eq.nullspace();
        let hs = MapSpace::new(alg, c, d, -1);
        let mut boundaries = Echelon::new(n);
        for &(i, j, p) in &hs.unknowns {
            let mut h = Morphism::zero(-1);
            h.add_term(i, j, p, F::one());
            let img = h.then(alg, &d.differential()).plus(&c.differential().then(alg, &h));
            let v = space.to_vector(&img).expect("homotopy image lies in the map space");
            boundaries.insert(v);
        }
        HomSpace { space, cycles, boundaries }
    }

    pub fn dimension(&self) -> usize {
        self.cycles.len() - self.boundaries.rank()
    }

    pub fn is_null_homotopic(&self, m: &Morphism<F>) -> bool {
        match self.space.to_vector(m) {
            Some(v) => self.boundaries.contains(&v),
            None => false,
        }
    }

    /// Rank of the given maps in the quotient by null-homotopic maps.
    pub fn quotient_rank(&self, maps: &[Morphism<F>]) -> usize {
        let mut e = self.boundaries.clone();
        let base = e.rank();
        for m in maps {
            if let Some(v) = self.space.to_vector(m) {
                e.insert(v);
            }
        }
        e.rank() - base
    }
}

pub fn hom_dimension<F: Field>(alg: &Algebra, c: &Complex<F>, d: &Complex<F>) -> usize {
    HomSpace::new(alg, c, d).dimension()
}

pub fn hom_dimension_objects<F: Field>(alg: &Algebra, s: &Object<F>, t: &Object<F>) -> usize {
    hom_dimension(alg, &Complex::build(alg, s), &Complex::build(alg, t))
}

/// True iff some degree-0 chain map `c -> d` is invertible in every degree.
/// Random combinations of a basis of chain maps are tested for invertibility
/// of their top (trivial-path) parts; a nonzero determinant polynomial
/// survives a random point with probability at least `1 - deg/|S|`.
pub fn is_isomorphic<F: Field>(alg: &Algebra, c: &Complex<F>, d: &Complex<F>, seed: u64) -> bool {
    if c.profile() != d.profile() {
        return false;
    }
    if c.slots.is_empty() {
        return true;
    }
    let hs = HomSpace::new(alg, c, d);
    if hs.cycles.is_empty() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degs: Vec<i32> = c.profile().keys().copied().collect();
    let check = |v: &[F]| -> bool {
        degs.iter().all(|&deg| {
            let rows_i = c.slots_in(deg);
            let cols_j = d.slots_in(deg);
            let mut m = vec![vec![F::zero(); cols_j.len()]; rows_i.len()];
            for (k, &(i, j, p)) in hs.space.unknowns.iter().enumerate() {
                if alg.is_trivial(p) && c.slots[i].deg == deg && !v[k].is_zero() {
                    let r = rows_i.iter().position(|&x| x == i).unwrap();
                    let s = cols_j.iter().position(|&x| x == j).unwrap();
                    m[r][s] = v[k].clone();
                }
            }
            is_invertible(m)
        })
    };
    if hs.cycles.len() == 1 {
        return check(&hs.cycles[0]);
    }
    for _ in 0..8 {
        let mut v = vec![F::zero(); hs.space.len()];
        for b in &hs.cycles {
            let t = F::from_i64(rng.gen_range(-1_000_000..=1_000_000));
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() + t.clone() * y.clone();
                }
            }
        }
        if check(&v) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug)]
struct Work<F: Field> {
    slots: Vec<Slot>,
    alive: Vec<bool>,
    out: Vec<BTreeMap<usize, LinComb<F>>>,
    inn: Vec<BTreeMap<usize, ()>>,
}

impl<F: Field> Work<F> {
    fn new(c: &Complex<F>) -> Self {
        let n = c.slots.len();
        let mut w = Work { slots: c.slots.clone(), alive: vec![true; n], out: vec![BTreeMap::new(); n], inn: vec![BTreeMap::new(); n] };
        for ((i, j), l) in &c.d {
            if !l.is_empty() {
                w.out[*i].insert(*j, l.clone());
                w.inn[*j].insert(*i, ());
            }
        }
        w
    }

    fn set(&mut self, i: usize, j: usize, l: LinComb<F>) {
        if l.is_empty() {
            self.out[i].remove(&j);
            self.inn[j].remove(&i);
        } else {
            self.out[i].insert(j, l);
            self.inn[j].insert(i, ());
        }
    }

    fn remove_slot(&mut self, x: usize) {
        for j in std::mem::take(&mut self.out[x]).into_keys() {
            self.inn[j].remove(&x);
        }
        for i in std::mem::take(&mut self.inn[x]).into_keys() {
            self.out[i].remove(&x);
        }
        self.alive[x] = false;
    }

    /// Candidate pivots `(degree, row, column, from, to)`.
    fn pivots(&self, alg: &Algebra) -> Vec<(i32, usize, usize, usize, usize)> {
        let mut rank_in_deg = vec![0; self.slots.len()];
        let mut counts: HashMap<i32, usize> = HashMap::new();
        for i in 0..self.slots.len() {
            if self.alive[i] {
                let c = counts.entry(self.slots[i].deg).or_insert(0);
                rank_in_deg[i] = *c;
                *c += 1;
            }
        }
        let mut v = Vec::new();
        for i in 0..self.slots.len() {
            for (j, l) in &self.out[i] {
                if lc_unit(alg, l).is_some() {
                    v.push((self.slots[i].deg, rank_in_deg[i], rank_in_deg[*j], i, *j));
                }
            }
        }
        v
    }

    fn eliminate(&mut self, alg: &Algebra, x: usize, y: usize) {
        let b4 = self.out[x][&y].clone();
        let inv = local_inverse(alg, &b4);
        let b3s: Vec<(usize, LinComb<F>)> =
            self.inn[y].keys().filter(|&&a| a != x).map(|&a| (a, self.out[a][&y].clone())).collect();
        let b2s: Vec<(usize, LinComb<F>)> = self.out[x].iter().filter(|(b, _)| **b != y).map(|(b, l)| (*b, l.clone())).collect();
        for (a, b3) in &b3s {
            let t = lc_compose(alg, b3, &inv);
            for (b, b2) in &b2s {
                let corr = lc_compose(alg, &t, b2);
                if corr.is_empty() {
                    continue;
                }
                let cur = self.out[*a].get(b).cloned().unwrap_or_default();
                self.set(*a, *b, lc_add(&cur, &lc_neg(&corr)));
            }
        }
        self.remove_slot(x);
        self.remove_slot(y);
    }

    fn finish(self) -> Complex<F> {
        let mut map = vec![usize::MAX; self.slots.len()];
        let mut slots = Vec::new();
        for i in 0..self.slots.len() {
            if self.alive[i] {
                map[i] = slots.len();
                slots.push(self.slots[i]);
            }
        }
        let mut d = BTreeMap::new();
        for i in 0..self.slots.len() {
            for (j, l) in &self.out[i] {
                d.insert((map[i], map[*j]), l.clone());
            }
        }
        Complex { slots, d }
    }
}

/// Inverse of a unit `c·1 + r` of a local ring `e_v Λ e_v` by the Neumann series.
fn local_inverse<F: Field>(alg: &Algebra, u: &LinComb<F>) -> LinComb<F> {
    let c = lc_unit(alg, u).expect("pivot has a unit part");
    let ci = c.inv();
    let t = u.iter().find(|(p, _)| alg.is_trivial(*p)).unwrap().0;
    let r: LinComb<F> = u.iter().filter(|(p, _)| !alg.is_trivial(*p)).cloned().collect();
    let x = lc_scale(&r, &-ci.clone());
    let mut acc = lc_single(t, F::one());
    let mut pow = lc_single(t, F::one());
    loop {
        pow = lc_compose(alg, &pow, &x);
        if pow.is_empty() {
            break;
        }
        acc = lc_add(&acc, &pow);
    }
    lc_scale(&acc, &ci)
}

/// Eliminates invertible entries with the smallest `(degree, row, column)` pivot first.
pub fn minimize<F: Field>(alg: &Algebra, c: &Complex<F>) -> Complex<F> {
    let mut w = Work::new(c);
    loop {
        let Some(&(_, _, _, x, y)) = w.pivots(alg).iter().min() else { break };
        w.eliminate(alg, x, y);
    }
    w.finish()
}

/// Same elimination with pivots chosen at random.
pub fn minimize_random<F: Field, R: Rng>(alg: &Algebra, c: &Complex<F>, rng: &mut R) -> Complex<F> {
    let mut w = Work::new(c);
    loop {
        let p = w.pivots(alg);
        if p.is_empty() {
            break;
        }
        let (_, _, _, x, y) = p[rng.gen_range(0..p.len())];
        w.eliminate(alg, x, y);
    }
    w.finish()
}

pub fn is_minimal<F: Field>(alg: &Algebra, c: &Complex<F>) -> bool {
    c.d.values().all(|l| lc_unit(alg, l).is_none())
}

/// Splits a minimal complex into string and band complexes.
pub fn decompose<F: Field>(alg: &Algebra, c: &Complex<F>) -> Result<Vec<Object<F>>> {
    let q = &alg.quiver;
    let n = c.slots.len();
    let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for (e, ((i, j), l)) in c.d.iter().enumerate() {
        if l.len() != 1 || alg.is_trivial(l[0].0) {
            return Err(Error::NotAStringOrBandShape(format!("entry {i} -> {j} is not a single nontrivial path")));
        }
        adj[*i].push((*j, e, 0));
        adj[*j].push((*i, e, 1));
    }
    if let Some(i) = (0..n).find(|&i| adj[i].len() > 2) {
        return Err(Error::NotAStringOrBandShape(format!("slot {i} has {} incident entries", adj[i].len())));
    }
    let entries: Vec<(&(usize, usize), &LinComb<F>)> = c.d.iter().collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    // walk from `start`, first along `first` edge
    let walk = |start: usize, seen: &mut Vec<bool>| -> (Vec<Letter>, Vec<F>, bool) {
        let mut letters = Vec::new();
        let mut coefs = Vec::new();
        let mut cur = start;
        let mut prev_edge = usize::MAX;
        seen[cur] = true;
        loop {
            let next = adj[cur].iter().find(|(_, e, _)| *e != prev_edge).copied();
            let Some((w, e, side)) = next else { return (letters, coefs, false) };
            let (_, l) = entries[e];
            let dir = if side == 0 { Dir::Direct } else { Dir::Inverse };
            letters.push(Letter::new(dir, alg.path(l[0].0).clone()));
            coefs.push(if side == 0 { l[0].1.clone() } else { l[0].1.inv() });
            if w == start {
                return (letters, coefs, true);
            }
            seen[w] = true;
            prev_edge = e;
            cur = w;
        }
    };
    // strings first from endpoints, then cycles
    for i in 0..n {
        if seen[i] || adj[i].len() > 1 {
            continue;
        }
        let (letters, _, _) = walk(i, &mut seen);
        let s = if letters.is_empty() {
            HString::trivial(c.slots[i].vertex, c.slots[i].deg)
        } else {
            HString::from_letters(q, letters, c.slots[i].deg)
                .map_err(|e| Error::NotAStringOrBandShape(format!("component is not a homotopy string: {e}")))?
        };
        out.push(Object::String(s));
    }
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let (letters, coefs, closed) = walk(i, &mut seen);
        debug_assert!(closed);
        let inv = coefs.into_iter().fold(F::one(), |a, b| a * b);
        let pos = letters.iter().position(|l| l.dir == Dir::Direct).unwrap_or(0);
        let b = Band::new(q, letters, inv, pos, c.slots[i].deg)
            .map_err(|e| Error::NotAStringOrBandShape(format!("component is not a homotopy band: {e}")))?;
        out.push(Object::Band(b));
    }
    Ok(out)
}

/// Canonical multiset of summands as sorted expressions, for cheap comparison.
pub fn canonical_keys<F: Field>(q: &crate::quiver::Quiver, objs: &[Object<F>]) -> Vec<String> {
    let mut v: Vec<String> = objs.iter().map(|o| o.canonical().to_expr(q)).collect();
    v.sort();
    v
}

/// Null-homotopy test for a difference of two maps.
pub fn homotopic<F: Field>(alg: &Algebra, c: &Complex<F>, d: &Complex<F>, f: &Morphism<F>, g: &Morphism<F>) -> bool {
    HomSpace::new(alg, c, d).is_null_homotopic(&f.minus(g))
}

pub fn identity<F: Field>(alg: &Algebra, c: &Complex<F>) -> Morphism<F> {
    let mut m = Morphism::zero(0);
    for (i, s) in c.slots.iter().enumerate() {
        m.add_term(i, i, alg.trivial(s.vertex), F::one());
    }
    m
}

