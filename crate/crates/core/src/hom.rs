//! Standard basis of `Hom(Q_σ, Q_τ)`: graph maps, singleton single and double
//! maps, and quasi-graph maps, each with an explicit chain-map representative.
//!
//! Everything works on [`View`]s: a string or band in a chosen orientation,
//! indexed by integer vertex positions (periodic for bands). Letter `k` sits
//! between positions `k` and `k + 1`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::complex::{Complex, Morphism};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{Path, Vertex};
use crate::words::{Dir, Letter, Object};

#[derive(Clone, Debug)]
pub struct View<F: Field> {
    pub letters: Vec<Letter>,
    pub verts: Vec<Vertex>,
    pub degs: Vec<i32>,
    pub coefs: Vec<F>,
    pub slots: Vec<usize>,
    pub cyclic: bool,
    pub inverted: bool,
}

impl<F: Field> View<F> {
    pub fn new(o: &Object<F>, inverted: bool) -> View<F> {
        let letters0 = o.letters().to_vec();
        let n = letters0.len();
        let verts0 = o.vertices();
        let degs0 = o.degrees();
        let (cyclic, coefs0): (bool, Vec<F>) = match o {
            Object::String(_) => (false, vec![F::one(); n]),
            Object::Band(b) => (true, (0..n).map(|k| if k == b.pos() { b.scalar().clone() } else { F::one() }).collect()),
        };
        if !inverted {
            let slots = (0..verts0.len()).collect();
            return View { letters: letters0, verts: verts0, degs: degs0, coefs: coefs0, slots, cyclic, inverted };
        }
        let m = verts0.len();
        let (letters, coefs, verts, degs, slots);
        if cyclic {
            letters = (0..n).map(|k| letters0[(2 * n - k - 1) % n].inverse()).collect();
            coefs = (0..n).map(|k| coefs0[(2 * n - k - 1) % n].clone()).collect();
            slots = (0..n).map(|k| (n - k) % n).collect::<Vec<_>>();
        } else {
            letters = (0..n).map(|k| letters0[n - 1 - k].inverse()).collect();
            coefs = vec![F::one(); n];
            slots = (0..m).map(|k| m - 1 - k).collect::<Vec<_>>();
        }
        verts = slots.iter().map(|&s| verts0[s]).collect();
        degs = slots.iter().map(|&s| degs0[s]).collect();
        View { letters, verts, degs, coefs, slots, cyclic, inverted }
    }

    pub fn n(&self) -> i64 {
        self.letters.len() as i64
    }
    fn idx(&self, pos: i64) -> Option<usize> {
        if self.cyclic {
            Some(pos.rem_euclid(self.n()) as usize)
        } else if pos >= 0 && pos <= self.n() {
            Some(pos as usize)
        } else {
            None
        }
    }
    pub fn has(&self, pos: i64) -> bool {
        self.idx(pos).is_some()
    }
    pub fn vertex(&self, pos: i64) -> Vertex {
        self.verts[self.idx(pos).expect("position in range")]
    }
    pub fn deg(&self, pos: i64) -> i32 {
        self.degs[self.idx(pos).expect("position in range")]
    }
    pub fn slot(&self, pos: i64) -> usize {
        self.slots[self.idx(pos).expect("position in range")]
    }
    /// Letter between `k` and `k + 1`.
    pub fn letter(&self, k: i64) -> Option<&Letter> {
        if self.cyclic {
            Some(&self.letters[k.rem_euclid(self.n()) as usize])
        } else if k >= 0 && k < self.n() {
            Some(&self.letters[k as usize])
        } else {
            None
        }
    }
    pub fn coef(&self, k: i64) -> F {
        let n = self.n();
        if self.cyclic {
            self.coefs[k.rem_euclid(n) as usize].clone()
        } else {
            self.coefs[k as usize].clone()
        }
    }
    /// Positions to scan: one period for bands.
    pub fn positions(&self) -> std::ops::Range<i64> {
        if self.cyclic {
            0..self.n()
        } else {
            0..self.n() + 1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Whether the letter's map leaves the vertex it touches at this side of the overlap.
pub fn is_out(side: Side, l: &Letter) -> bool {
    match side {
        Side::Right => l.dir == Dir::Direct,
        Side::Left => l.dir == Dir::Inverse,
    }
}

/// Endpoint condition. `G*` are graph conditions, `Q*` quasi-graph ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum End {
    G1,
    G2,
    G3,
    Q1,
    Q2,
    Q3,
}

impl End {
    pub fn is_graph(self) -> bool {
        matches!(self, End::G1 | End::G2 | End::G3)
    }
    pub fn label(self, side: Side) -> String {
        let s = match side {
            Side::Left => "L",
            Side::Right => "R",
        };
        let (k, n) = match self {
            End::G1 => ("G", 1),
            End::G2 => ("G", 2),
            End::G3 => ("G", 3),
            End::Q1 => ("Q", 1),
            End::Q2 => ("Q", 2),
            End::Q3 => ("Q", 3),
        };
        format!("{s}{k}{n}")
    }
}

/// Classification of one end of an overlap. Returns the condition and, for
/// `G1`/`G2`, the extra component from σ's neighbour to τ's neighbour.
pub fn classify_end(alg: &Algebra, side: Side, s: Option<&Letter>, t: Option<&Letter>) -> Option<(End, Option<Path>)> {
    let q = &alg.quiver;
    let so = s.map(|l| is_out(side, l));
    let to = t.map(|l| is_out(side, l));
    match (s, t) {
        (Some(sl), Some(tl)) if so == Some(true) && to == Some(true) => {
            let (sp, tp) = (&sl.path, &tl.path);
            if sp.is_suffix_of(tp) && tp.len() > sp.len() {
                Some((End::G1, Some(tp.slice(q, 0, tp.len() - sp.len()))))
            } else if tp.is_suffix_of(sp) && sp.len() > tp.len() {
                Some((End::Q1, None))
            } else {
                None
            }
        }
        (Some(sl), Some(tl)) if so == Some(false) && to == Some(false) => {
            let (sp, tp) = (&sl.path, &tl.path);
            if tp.is_prefix_of(sp) && sp.len() > tp.len() {
                Some((End::G2, Some(sp.slice(q, tp.len(), sp.len()))))
            } else if sp.is_prefix_of(tp) && tp.len() > sp.len() {
                Some((End::Q2, None))
            } else {
                None
            }
        }
        _ => {
            if so != Some(false) && to != Some(true) {
                Some((End::G3, None))
            } else if so != Some(true) && to != Some(false) && !(s.is_none() && t.is_none()) {
                Some((End::Q3, None))
            } else {
                None
            }
        }
    }
}

/// For a `G3`/`Q3` end with both letters present: the out-letter followed by
/// the in-letter must compose to a nonzero path.
pub fn pair_ok(side: Side, s: Option<&Letter>, t: Option<&Letter>, alg: &Algebra) -> bool {
    match (s, t) {
        (Some(a), Some(b)) if is_out(side, a) != is_out(side, b) => {
            let (o, i) = if is_out(side, a) { (a, b) } else { (b, a) };
            alg.quiver.then(&o.path, &i.path).is_some()
        }
        _ => true,
    }
}

/// For a one-vertex overlap: a σ out-letter and a τ in-letter that compose to a
/// nonzero path must sit on the same side.
pub fn cross_ok(alg: &Algebra, letters: [(Option<&Letter>, Option<&Letter>); 2]) -> bool {
    let sides = [Side::Left, Side::Right];
    for (a, sa) in letters.iter().map(|x| x.0).zip(sides) {
        for (b, sb) in letters.iter().map(|x| x.1).zip(sides) {
            if let (Some(a), Some(b)) = (a, b) {
                if sa != sb && is_out(sa, a) && !is_out(sb, b) && alg.quiver.then(&a.path, &b.path).is_some() {
                    return false;
                }
            }
        }
    }
    true
}

/// A maximal common substring of two views (τ's view may be inverted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub t_inv: bool,
    pub p: i64,
    pub q: i64,
    pub len: i64,
    /// Band self-overlap with no ends.
    pub full: bool,
}

/// All maximal overlaps with equal degrees, τ in both orientations.
pub fn find_overlaps<F: Field>(s: &View<F>, t: &View<F>) -> Vec<Overlap> {
    let mut out = Vec::new();
    let bound = s.n() + t.n() + 1;
    for p in s.positions() {
        for q in t.positions() {
            if s.vertex(p) != t.vertex(q) || s.deg(p) != t.deg(q) {
                continue;
            }
            // left-maximal?
            let mut back = 0;
            while back <= bound {
                match (s.letter(p - back - 1), t.letter(q - back - 1)) {
                    (Some(a), Some(b)) if a == b => back += 1,
                    _ => break,
                }
            }
            if back > bound {
                // periodic agreement: one alignment class, keep its representative with p = 0
                if p == 0 {
                    out.push(Overlap { t_inv: t.inverted, p, q, len: 0, full: true });
                }
                continue;
            }
            if back > 0 {
                continue;
            }
            let mut len = 0;
            while let (Some(a), Some(b)) = (s.letter(p + len), t.letter(q + len)) {
                if a != b {
                    break;
                }
                len += 1;
            }
            out.push(Overlap { t_inv: t.inverted, p, q, len, full: false });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    Graph { left: End, right: End, f_l: Option<Path>, f_r: Option<Path>, full: bool },
    Single { f: Path },
    Double { f_l: Path, f_mid: Path, f_r: Path },
    /// `full`: the band self-overlap with λ = μ, whose class is the self-extension.
    Quasi { left: End, right: End, full: bool },
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Graph { .. } => "graph",
            Kind::Single { .. } => "single",
            Kind::Double { .. } => "double",
            Kind::Quasi { .. } => "quasi",
        }
    }
    fn rank(&self) -> u8 {
        match self {
            Kind::Graph { .. } => 0,
            Kind::Single { .. } => 1,
            Kind::Double { .. } => 2,
            Kind::Quasi { .. } => 3,
        }
    }
}

/// A standard basis element in its compatible orientation.
///
/// Positions refer to the oriented views `View::new(σ, s_inv)` and
/// `View::new(τ, t_inv)`: for graph and quasi-graph maps `(p, q, len)` is the
/// overlap; for single maps `(p, q)` are the vertices joined by `f`; for double
/// maps `p` and `q` are the (direct) letters `σ_C` and `τ_C`.
#[derive(Clone, Debug)]
pub struct BasisMap<F: Field> {
    pub kind: Kind,
    pub s_inv: bool,
    pub t_inv: bool,
    pub p: i64,
    pub q: i64,
    pub len: i64,
    pub rep: Morphism<F>,
}

impl<F: Field> BasisMap<F> {
    pub fn conditions(&self) -> Vec<String> {
        match &self.kind {
            Kind::Graph { left, right, .. } | Kind::Quasi { left, right, .. } => {
                vec![left.label(Side::Left), right.label(Side::Right)]
            }
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

struct Builder<'a, F: Field> {
    alg: &'a Algebra,
    sc: Complex<F>,
    tc: Complex<F>,
}

impl<F: Field> Builder<'_, F> {
    fn check(&self, m: &Morphism<F>, what: &str) -> Result<()> {
        if self.sc.is_chain_map(self.alg, &self.tc, m) {
            Ok(())
        } else {
            Err(Error::NoRepresentative(format!("{what} does not commute with the differentials")))
        }
    }
}

/// Identity components along an overlap, scaled so that every square inside ρ commutes.
/// Returns the map and the coefficients at each overlap vertex.
fn along<F: Field>(alg: &Algebra, s: &View<F>, t: &View<F>, ov: &Overlap, sign: bool, len: i64) -> (Morphism<F>, Vec<F>) {
    let mut m = Morphism::zero(if sign { -1 } else { 0 });
    let mut c = F::one();
    let mut cs = Vec::new();
    for k in 0..=len {
        let (a, b) = (ov.p + k, ov.q + k);
        m.add_term(s.slot(a), t.slot(b), alg.trivial(s.vertex(a)), c.clone());
        cs.push(c.clone());
        if k < len {
            let l = s.letter(a).unwrap();
            let (x, y) = (s.coef(a), t.coef(b));
            c = match (l.dir, sign) {
                (Dir::Direct, false) => c * y.div(&x),
                (Dir::Inverse, false) => c * x.div(&y),
                (Dir::Direct, true) => -(c * y.div(&x)),
                (Dir::Inverse, true) => -(c * x.div(&y)),
            };
        }
    }
    (m, cs)
}

fn graph_rep<F: Field>(
    b: &Builder<'_, F>,
    s: &View<F>,
    t: &View<F>,
    ov: &Overlap,
    ends: [(End, Option<Path>); 2],
) -> Result<Morphism<F>> {
    let alg = b.alg;
    let len = if ov.full { s.n() - 1 } else { ov.len };
    let (mut m, cs) = along(alg, s, t, ov, false, len);
    if !ov.full {
        // left: neighbours p-1, q-1
        if let (End::G1 | End::G2, Some(f)) = &ends[0] {
            let (sl, tl) = (ov.p - 1, ov.q - 1);
            let (x, y) = (s.coef(sl), t.coef(tl));
            let c = if ends[0].0 == End::G1 { cs[0].clone() * y.div(&x) } else { cs[0].clone() * x.div(&y) };
            m.add_term(s.slot(sl), t.slot(tl), alg.id(f), c);
        }
        if let (End::G1 | End::G2, Some(f)) = &ends[1] {
            let (e, g) = (ov.p + ov.len, ov.q + ov.len);
            let (x, y) = (s.coef(e), t.coef(g));
            let ce = cs[ov.len as usize].clone();
            let c = if ends[1].0 == End::G1 { ce * y.div(&x) } else { ce * x.div(&y) };
            m.add_term(s.slot(e + 1), t.slot(g + 1), alg.id(f), c);
        }
    }
    b.check(&m, "graph map")?;
    Ok(m)
}

/// The two end pieces of `d k + k d` for the alternating homotopy `k` along ρ.
fn quasi_pieces<F: Field>(alg: &Algebra, s: &View<F>, t: &View<F>, ov: &Overlap) -> [Morphism<F>; 2] {
    let (_, ks) = along(alg, s, t, ov, true, ov.len);
    let mut left = Morphism::zero(0);
    let mut right = Morphism::zero(0);
    let (p, q) = (ov.p, ov.q);
    if let Some(tl) = t.letter(q - 1) {
        if is_out(Side::Left, tl) {
            left.add_term(s.slot(p), t.slot(q - 1), alg.id(&tl.path), ks[0].clone() * t.coef(q - 1));
        }
    }
    if let Some(sl) = s.letter(p - 1) {
        if !is_out(Side::Left, sl) {
            left.add_term(s.slot(p - 1), t.slot(q), alg.id(&sl.path), s.coef(p - 1) * ks[0].clone());
        }
    }
    let (e, f) = (p + ov.len, q + ov.len);
    let kl = ks[ov.len as usize].clone();
    if let Some(tr) = t.letter(f) {
        if is_out(Side::Right, tr) {
            right.add_term(s.slot(e), t.slot(f + 1), alg.id(&tr.path), kl.clone() * t.coef(f));
        }
    }
    if let Some(sr) = s.letter(e) {
        if !is_out(Side::Right, sr) {
            right.add_term(s.slot(e + 1), t.slot(f), alg.id(&sr.path), s.coef(e) * kl);
        }
    }
    [left, right]
}

fn quasi_rep<F: Field>(b: &Builder<'_, F>, s: &View<F>, t: &View<F>, ov: &Overlap) -> Result<Morphism<F>> {
    let [l, r] = quasi_pieces(b.alg, s, t, ov);
    let r = r.scaled(&-F::one());
    let plen = |m: &Morphism<F>| m.comps.values().flatten().map(|(p, _)| b.alg.path(*p).len()).sum::<usize>();
    let mut order = vec![(l.num_terms(), plen(&l), 0, l), (r.num_terms(), plen(&r), 1, r)];
    order.sort_by_key(|x| (x.0, x.1, x.2));
    for (_, _, _, m) in &order {
        if !m.is_zero() && b.sc.is_chain_map(b.alg, &b.tc, m) {
            return Ok(m.clone());
        }
    }
    Err(Error::NoRepresentative("no end piece of the quasi-graph homotopy is a chain map".into()))
}

fn overlap_pairs<F: Field>(s: &View<F>, t: &View<F>, ov: &Overlap) -> BTreeSet<(usize, usize)> {
    let len = if ov.full { s.n() - 1 } else { ov.len };
    (0..=len).map(|k| (s.slot(ov.p + k), t.slot(ov.q + k))).collect()
}

fn ends_of<F: Field>(
    alg: &Algebra,
    s: &View<F>,
    t: &View<F>,
    ov: &Overlap,
) -> (Option<(End, Option<Path>)>, Option<(End, Option<Path>)>, bool) {
    let (p, q, e, f) = (ov.p, ov.q, ov.p + ov.len, ov.q + ov.len);
    let (sl, tl, sr, tr) = (s.letter(p - 1), t.letter(q - 1), s.letter(e), t.letter(f));
    let l = classify_end(alg, Side::Left, sl, tl);
    let r = classify_end(alg, Side::Right, sr, tr);
    let compat = pair_ok(Side::Left, sl, tl, alg)
        && pair_ok(Side::Right, sr, tr, alg)
        && (ov.len > 0 || cross_ok(alg, [(sl, tl), (sr, tr)]));
    (l, r, compat)
}

fn sort_key<F: Field>(alg: &Algebra, m: &BasisMap<F>) -> (u8, i64, i64, i64, usize, bool, bool, String) {
    let plen: usize = m.rep.comps.values().flatten().map(|(p, _)| alg.path(*p).len()).sum();
    let names: String = m.rep.comps.iter().map(|(k, l)| format!("{k:?}{:?}", l.iter().map(|x| x.0).collect::<Vec<_>>())).collect();
    (m.kind.rank(), m.p, m.q, m.len, plen, m.s_inv, m.t_inv, names)
}

fn comp_key<F: Field>(m: &Morphism<F>) -> Vec<(usize, usize, Vec<u32>)> {
    m.comps.iter().map(|((i, j), l)| (*i, *j, l.iter().map(|x| x.0).collect())).collect()
}

/// Graph maps between σ and τ (same grading).
pub fn graph_maps<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>) -> Result<Vec<BasisMap<F>>> {
    let b = Builder { alg, sc: Complex::build(alg, sigma), tc: Complex::build(alg, tau) };
    let s = View::new(sigma, false);
    let mut found: Vec<(BasisMap<F>, bool)> = Vec::new();
    for t_inv in [false, true] {
        let t = View::new(tau, t_inv);
        for ov in find_overlaps(&s, &t) {
            if ov.full {
                let rep = match graph_rep(&b, &s, &t, &ov, [(End::G3, None), (End::G3, None)]) {
                    Ok(m) => m,
                    Err(_) => continue, // λ ≠ μ
                };
                let kind = Kind::Graph { left: End::G3, right: End::G3, f_l: None, f_r: None, full: true };
                found.push((BasisMap { kind, s_inv: false, t_inv, p: ov.p, q: ov.q, len: s.n(), rep }, true));
                continue;
            }
            let (l, r, compat) = ends_of(alg, &s, &t, &ov);
            let (Some(l), Some(r)) = (l, r) else { continue };
            if !l.0.is_graph() || !r.0.is_graph() {
                continue;
            }
            let rep = graph_rep(&b, &s, &t, &ov, [l.clone(), r.clone()])?;
            let kind = Kind::Graph { left: l.0, right: r.0, f_l: l.1, f_r: r.1, full: false };
            let compat = ov.len > 0 || compat;
            found.push((BasisMap { kind, s_inv: false, t_inv, p: ov.p, q: ov.q, len: ov.len, rep }, compat));
        }
    }
    Ok(dedupe(alg, found, |m| comp_key(&m.rep)))
}

/// Keeps one map per key, preferring compatibly oriented candidates.
fn dedupe<F: Field, K: Ord>(alg: &Algebra, mut found: Vec<(BasisMap<F>, bool)>, key: impl Fn(&BasisMap<F>) -> K) -> Vec<BasisMap<F>> {
    found.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| sort_key(alg, &a.0).cmp(&sort_key(alg, &b.0))));
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (m, _) in found {
        if seen.insert(key(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| sort_key(alg, a).cmp(&sort_key(alg, b)));
    out
}

/// For `τ = Σ B_{σ,λ}` with `σ = B_{σ,λ}` aligned by a full overlap: the
/// derivative of the differential in λ, a chain map `B → Σ B` that is not
/// null-homotopic. `None` when the scalars differ.
fn self_extension<F: Field>(
    b: &Builder<'_, F>,
    sigma: &Object<F>,
    shifted: &Object<F>,
    s: &View<F>,
    t_shift: &View<F>,
    t: &View<F>,
    ov: &Overlap,
) -> Option<Morphism<F>> {
    let Object::Band(band) = sigma else { return None };
    let aligned = Builder { alg: b.alg, sc: b.sc.clone(), tc: Complex::build(b.alg, shifted) };
    graph_rep(&aligned, s, t_shift, ov, [(End::G3, None), (End::G3, None)]).ok()?;
    let k = band.pos() as i64;
    let l = s.letter(k)?;
    let (from, to) = if l.dir == Dir::Direct { (k, k + 1) } else { (k + 1, k) };
    let (_, cs) = along(b.alg, s, t, ov, false, s.n() - 1);
    let c = cs[(to - ov.p).rem_euclid(s.n()) as usize].clone();
    let mut m = Morphism::zero(0);
    m.add_term(s.slot(from), t.slot(ov.q + to - ov.p), b.alg.id(&l.path), c);
    b.sc.is_chain_map(b.alg, &b.tc, &m).then_some(m)
}

/// Quasi-graph maps `σ ⇝ Σ^{-1} τ`, i.e. Q-classified overlaps between σ and τ
/// with τ's degrees raised by one; the representative is a map σ → τ.
pub fn quasi_graph_maps<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>) -> Result<Vec<BasisMap<F>>> {
    let b = Builder { alg, sc: Complex::build(alg, sigma), tc: Complex::build(alg, tau) };
    let s = View::new(sigma, false);
    let shifted = tau.shift(-1);
    let mut found = Vec::new();
    for t_inv in [false, true] {
        let t_shift = View::new(&shifted, t_inv);
        let t = View::new(tau, t_inv);
        for ov in find_overlaps(&s, &t_shift) {
            if ov.full {
                if let Some(rep) = self_extension(&b, sigma, &shifted, &s, &t_shift, &t, &ov) {
                    let kind = Kind::Quasi { left: End::Q3, right: End::Q3, full: true };
                    found.push((BasisMap { kind, s_inv: false, t_inv, p: ov.p, q: ov.q, len: s.n(), rep }, true));
                }
                continue;
            }
            let (l, r, compat) = ends_of(alg, &s, &t, &ov);
            let (Some(l), Some(r)) = (l, r) else { continue };
            if l.0.is_graph() || r.0.is_graph() {
                continue;
            }
            let compat = ov.len > 0 || compat;
            let rep = match quasi_rep(&b, &s, &t, &ov) {
                Ok(r) => r,
                // the other orientation of τ presents the same class compatibly
                Err(_) if !compat => continue,
                // no end piece is a chain map: the family is null-homotopic
                Err(_) if ov.len == 0 => continue,
                Err(e) => return Err(e),
            };
            let kind = Kind::Quasi { left: l.0, right: r.0, full: false };
            found.push((BasisMap { kind, s_inv: false, t_inv, p: ov.p, q: ov.q, len: ov.len, rep }, compat));
        }
    }
    let views = [View::new(tau, false), View::new(tau, true)];
    Ok(dedupe(alg, found, |m| {
        let t = &views[m.t_inv as usize];
        overlap_pairs(&s, t, &Overlap { t_inv: m.t_inv, p: m.p, q: m.q, len: m.len, full: false })
    }))
}

/// Letters touching position `i`: `(side, letter)`.
fn around<F: Field>(v: &View<F>, i: i64) -> Vec<(Side, &Letter)> {
    let mut out = Vec::new();
    if let Some(l) = v.letter(i - 1) {
        out.push((Side::Left, l));
    }
    if let Some(l) = v.letter(i) {
        out.push((Side::Right, l));
    }
    out
}

/// The chain conditions for a single component `f` from σ's vertex `i` to τ's vertex `j`.
fn single_conditions<F: Field>(alg: &Algebra, s: &View<F>, t: &View<F>, i: i64, j: i64, f: &Path) -> bool {
    let q = &alg.quiver;
    around(s, i).iter().all(|(side, l)| is_out(*side, l) || q.then(f, &l.path).is_none())
        && around(t, j).iter().all(|(side, l)| !is_out(*side, l) || q.then(&l.path, f).is_none())
}

/// Singleton single maps.
pub fn single_maps<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>) -> Result<Vec<BasisMap<F>>> {
    let b = Builder { alg, sc: Complex::build(alg, sigma), tc: Complex::build(alg, tau) };
    let s0 = View::new(sigma, false);
    let t0 = View::new(tau, false);
    let mut found = Vec::new();
    for i in s0.positions() {
        for j in t0.positions() {
            if s0.deg(i) != t0.deg(j) {
                continue;
            }
            for &pid in alg.paths_between(t0.vertex(j), s0.vertex(i)) {
                if alg.is_trivial(pid) {
                    continue;
                }
                let f = alg.path(pid);
                if !single_conditions(alg, &s0, &t0, i, j, f) {
                    continue;
                }
                let sa = around(&s0, i);
                let ta = around(&t0, j);
                let at = |v: &[(Side, &Letter)], sd: Side| v.iter().find(|(x, _)| *x == sd).map(|(_, l)| (*l).clone());
                // only σ's out-letters and τ's in-letters can absorb f in a homotopy
                let tangled = |l: Option<Letter>, sd: Side, out: bool| {
                    l.is_some_and(|l| is_out(sd, &l) == out && (l.path.contains(f) || f.contains(&l.path)))
                };
                // σ_R is empty or an out-letter f f_R; τ_R is empty or an in-letter
                // f̄ f̄_L; f_L, f_R nontrivial. The far letters must not tangle with f.
                let mut sides = None;
                'o: for s_side in [Side::Right, Side::Left] {
                    for t_side in [Side::Right, Side::Left] {
                        let sr = at(&sa, s_side);
                        let tr = at(&ta, t_side);
                        let s_ok = sr.as_ref().is_none_or(|l| is_out(s_side, l) && f.is_suffix_of(&l.path) && l.path.len() > f.len());
                        let t_ok = tr.as_ref().is_none_or(|l| !is_out(t_side, l) && f.is_prefix_of(&l.path) && l.path.len() > f.len());
                        let far = |sd: Side| if sd == Side::Left { Side::Right } else { Side::Left };
                        if s_ok && t_ok && !tangled(at(&sa, far(s_side)), far(s_side), true) && !tangled(at(&ta, far(t_side)), far(t_side), false) {
                            sides = Some((s_side, t_side));
                            break 'o;
                        }
                    }
                }
                let Some((s_side, t_side)) = sides else { continue };
                let mut rep = Morphism::zero(0);
                rep.add_term(s0.slot(i), t0.slot(j), pid, F::one());
                b.check(&rep, "single map")?;
                // orient so that both factorizations sit on the right
                let s_inv = s_side == Side::Left;
                let t_inv = t_side == Side::Left;
                let p = if s_inv { flip_pos(&s0, i) } else { i };
                let qq = if t_inv { flip_pos(&t0, j) } else { j };
                let kind = Kind::Single { f: f.clone() };
                found.push((BasisMap { kind, s_inv, t_inv, p, q: qq, len: 0, rep }, true));
            }
        }
    }
    Ok(dedupe(alg, found, |m| comp_key(&m.rep)))
}

/// Position of the same vertex in the inverted view.
pub fn flip_pos<F: Field>(v: &View<F>, i: i64) -> i64 {
    if v.cyclic {
        (-i).rem_euclid(v.n())
    } else {
        v.n() - i
    }
}

/// Index of the same letter in the inverted view.
pub fn flip_letter<F: Field>(v: &View<F>, k: i64) -> i64 {
    if v.cyclic {
        (-k - 1).rem_euclid(v.n())
    } else {
        v.n() - 1 - k
    }
}

/// Singleton double maps.
pub fn double_maps<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>) -> Result<Vec<BasisMap<F>>> {
    let b = Builder { alg, sc: Complex::build(alg, sigma), tc: Complex::build(alg, tau) };
    let q = &alg.quiver;
    let s0 = View::new(sigma, false);
    let t0 = View::new(tau, false);
    let mut found = Vec::new();
    let letters = |v: &View<F>| -> Vec<i64> { (0..v.n()).collect() };
    for k in letters(&s0) {
        // orient σ_C as a direct letter from a (lower degree) to b
        let sl = s0.letter(k).unwrap().clone();
        let (a, bb) = if sl.dir == Dir::Direct { (k, k + 1) } else { (k + 1, k) };
        for m in letters(&t0) {
            let tl = t0.letter(m).unwrap().clone();
            let (c, d) = if tl.dir == Dir::Direct { (m, m + 1) } else { (m + 1, m) };
            if s0.deg(a) != t0.deg(c) {
                continue;
            }
            let (sp, tp) = (&sl.path, &tl.path);
            // σ_C = f' ++ f_L, τ_C = f_R ++ f' in traversal order
            for r in 1..sp.len() {
                let f_mid = sp.slice(q, 0, sp.len() - r);
                let f_l = sp.slice(q, sp.len() - r, sp.len());
                if !(f_mid.is_suffix_of(tp) && tp.len() > f_mid.len()) {
                    continue;
                }
                let f_r = tp.slice(q, 0, tp.len() - f_mid.len());
                let mut rep = Morphism::zero(0);
                rep.add_term(s0.slot(a), t0.slot(c), alg.id(&f_l), F::one());
                let (x, y) = (s0.coef(k), t0.coef(m));
                rep.add_term(s0.slot(bb), t0.slot(d), alg.id(&f_r), y.div(&x));
                if !b.sc.is_chain_map(alg, &b.tc, &rep) {
                    continue;
                }
                let s_inv = sl.dir == Dir::Inverse;
                let t_inv = tl.dir == Dir::Inverse;
                let p = if s_inv { flip_letter(&s0, k) } else { k };
                let qq = if t_inv { flip_letter(&t0, m) } else { m };
                let kind = Kind::Double { f_l, f_mid, f_r };
                found.push((BasisMap { kind, s_inv, t_inv, p, q: qq, len: 0, rep }, true));
            }
        }
    }
    Ok(dedupe(alg, found, |m| comp_key(&m.rep)))
}

/// The standard basis in selector order: graph, single, double, quasi-graph.
pub fn standard_basis<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>) -> Result<Vec<BasisMap<F>>> {
    let mut v = graph_maps(alg, sigma, tau)?;
    v.extend(single_maps(alg, sigma, tau)?);
    v.extend(double_maps(alg, sigma, tau)?);
    v.extend(quasi_graph_maps(alg, sigma, tau)?);
    Ok(v)
}

/// Shifts `n` of τ (as `Σ^n τ`... recorded as anchor offsets) in `-window..=window`
/// with a nonempty basis.
pub fn basis_over_shifts<F: Field>(
    alg: &Algebra,
    sigma: &Object<F>,
    tau: &Object<F>,
    window: i32,
) -> Result<Vec<(i32, Vec<BasisMap<F>>)>> {
    let mut out = Vec::new();
    for n in -window..=window {
        let t = tau.shift(n);
        let b = standard_basis(alg, sigma, &t)?;
        if !b.is_empty() {
            out.push((n, b));
        }
    }
    Ok(out)
}
