//! Mapping cones of standard basis maps, read off from word formulas.
//!
//! A cone word is assembled from segments of the oriented views of σ and τ
//! and the extra letters of the map, then freely reduced and re-split into
//! maximal letters. Every vertex copied from σ carries the cone degree
//! `deg - 1`, every vertex from τ its own degree; these tags fix the anchor of
//! the result and double as a consistency check on the formulas.

use std::fmt;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hom::{classify_end, cross_ok, flip_pos, pair_ok, BasisMap, Kind, Side, View};
use crate::quiver::{Path, Quiver, Vertex};
use crate::words::{is_break, split, Band, Dir, HString, Half, Letter, Object};

#[derive(Clone, Debug, PartialEq)]
pub enum Summand<F: Field> {
    String(HString),
    Band(Band<F>),
    Zero,
}

/// One indecomposable summand of a cone, with the case that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeSummand<F: Field> {
    pub summand: Summand<F>,
    pub note: String,
}

impl<F: Field> ConeSummand<F> {
    pub fn object(&self) -> Option<Object<F>> {
        match &self.summand {
            Summand::String(s) => Some(Object::String(s.clone())),
            Summand::Band(b) => Some(Object::Band(b.clone())),
            Summand::Zero => None,
        }
    }
    pub fn is_zero(&self) -> bool {
        self.summand == Summand::Zero
    }
    /// Word only, without grading.
    pub fn word(&self, q: &Quiver) -> String {
        match &self.summand {
            Summand::String(s) => s.word(q),
            Summand::Band(b) => b.word(q),
            Summand::Zero => "0".into(),
        }
    }
    pub fn expr(&self, q: &Quiver) -> String {
        match &self.summand {
            Summand::String(s) => s.to_expr(q),
            Summand::Band(b) => b.to_expr(q),
            Summand::Zero => "0".into(),
        }
    }
    fn sort_key(&self, q: &Quiver) -> (u8, String) {
        match &self.summand {
            Summand::String(_) => (0, self.expr(q)),
            Summand::Band(_) => (1, self.expr(q)),
            Summand::Zero => (2, self.note.clone()),
        }
    }
}

/// A walk with optional degree tags on its vertices.
#[derive(Clone, Debug)]
struct Tw {
    start: Vertex,
    halves: Vec<Half>,
    tags: Vec<Option<i32>>,
    clash: bool,
}

fn merge(a: Option<i32>, b: Option<i32>, clash: &mut bool) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => {
            if x != y {
                *clash = true;
            }
            Some(x)
        }
        (x, None) => x,
        (None, y) => y,
    }
}

impl Tw {
    /// Positions `a` to `b` of a view (backwards if `b < a`), tags shifted by `off`.
    fn seg<F: Field>(v: &View<F>, a: i64, b: i64, off: i32) -> Tw {
        let mut w = Tw { start: v.vertex(a), halves: Vec::new(), tags: vec![Some(v.deg(a) + off)], clash: false };
        let step = if b >= a { 1 } else { -1 };
        let mut k = a;
        while k != b {
            let l = if step == 1 { v.letter(k).unwrap().clone() } else { v.letter(k - 1).unwrap().inverse() };
            let hs = l.halves();
            for _ in 1..hs.len() {
                w.tags.push(None);
            }
            w.halves.extend(hs);
            k += step;
            w.tags.push(Some(v.deg(k) + off));
        }
        w
    }

    fn letter(l: &Letter) -> Tw {
        let halves = l.halves();
        let tags = vec![None; halves.len() + 1];
        Tw { start: l.left(), halves, tags, clash: false }
    }

    fn end(&self, q: &Quiver) -> Vertex {
        self.halves.last().map_or(self.start, |h| h.right(q))
    }

    /// Concatenation; `keep` says whether the tags at the junction survive.
    fn join(mut self, q: &Quiver, other: Tw, keep: bool) -> Result<Tw> {
        if self.end(q) != other.start {
            return Err(Error::NotAStringOrBandShape("cone segments do not meet".into()));
        }
        let last = self.tags.pop().unwrap();
        let first = other.tags[0];
        let t = if keep { merge(last, first, &mut self.clash) } else { None };
        self.tags.push(t);
        self.tags.extend(other.tags.into_iter().skip(1));
        self.halves.extend(other.halves);
        self.clash |= other.clash;
        Ok(self)
    }

    fn reduce(&mut self) {
        let mut hs: Vec<Half> = Vec::with_capacity(self.halves.len());
        let mut ts: Vec<Option<i32>> = vec![self.tags[0]];
        for (k, &h) in self.halves.iter().enumerate() {
            let t = self.tags[k + 1];
            if hs.last() == Some(&h.inverse()) {
                hs.pop();
                ts.pop();
                let prev = ts.pop().unwrap();
                ts.push(merge(prev, t, &mut self.clash));
            } else {
                hs.push(h);
                ts.push(t);
            }
        }
        self.halves = hs;
        self.tags = ts;
    }

    /// Reduce, then drop the first and/or last letter. `None` when fewer letters
    /// remain than are to be dropped.
    fn trim(mut self, q: &Quiver, front: bool, back: bool) -> Option<Tw> {
        self.reduce();
        let letters = split(q, &self.halves);
        let drop = usize::from(front) + usize::from(back);
        if letters.len() < drop {
            return None;
        }
        let (mut a, mut b) = (0, self.halves.len());
        if front {
            a = letters[0].path.len();
        }
        if back {
            b -= letters[letters.len() - 1].path.len();
        }
        if a > b {
            return None;
        }
        let start = if a == 0 { self.start } else { self.halves[a - 1].right(q) };
        Some(Tw { start, halves: self.halves[a..b].to_vec(), tags: self.tags[a..=b].to_vec(), clash: self.clash })
    }

    /// Anchor from the tags on letter boundaries.
    fn anchor(&self, letters: &[Letter], tags: &[Option<i32>]) -> Result<i32> {
        let mut anchor: Option<i32> = None;
        let mut idx = 0;
        let mut rel = 0;
        let mut bounds = vec![(0usize, 0i32)];
        for l in letters {
            idx += l.path.len();
            rel += l.dir.step();
            bounds.push((idx, rel));
        }
        for (i, r) in bounds {
            if let Some(t) = tags[i] {
                let a = t - r;
                if anchor.is_some_and(|x| x != a) {
                    return Err(Error::DegreeClash(format!("letter boundary {i} sits in degree {t}")));
                }
                anchor = Some(a);
            }
        }
        anchor.ok_or_else(|| Error::DegreeClash("no vertex of the cone word has a known degree".into()))
    }

    fn into_string(mut self, q: &Quiver) -> Result<HString> {
        self.reduce();
        if self.clash {
            return Err(Error::DegreeClash("cancelled letters join vertices of different degrees".into()));
        }
        let letters = split(q, &self.halves);
        let anchor = self.anchor(&letters, &self.tags)?;
        if letters.is_empty() {
            return Ok(HString::trivial(self.start, anchor));
        }
        HString::from_letters(q, letters, anchor)
    }

    /// Close up a cyclic word. `keep` controls the junction tag at the closing vertex.
    fn into_band<F: Field>(mut self, q: &Quiver, invariant: F, keep: bool) -> Result<Band<F>> {
        if self.end(q) != self.start {
            return Err(Error::NotClosed);
        }
        self.reduce();
        let n = self.tags.len() - 1;
        let t = if keep { merge(self.tags[0], self.tags[n], &mut self.clash) } else { None };
        self.tags[0] = t;
        self.tags[n] = t;
        let (mut hs, mut ts) = (self.halves, self.tags);
        while hs.len() >= 2 && hs[0] == hs[hs.len() - 1].inverse() {
            hs.remove(0);
            hs.pop();
            ts.remove(0);
            ts.pop();
            let m = ts.len() - 1;
            let t = merge(ts[0], ts[m], &mut self.clash);
            ts[0] = t;
            ts[m] = t;
        }
        if self.clash {
            return Err(Error::DegreeClash("cancelled letters join vertices of different degrees".into()));
        }
        let n = hs.len();
        if n == 0 {
            return Err(Error::NotClosed);
        }
        let cut = (0..n).find(|&i| is_break(q, hs[(i + n - 1) % n], hs[i])).ok_or(Error::NotClosed)?;
        hs.rotate_left(cut);
        ts.pop();
        ts.rotate_left(cut);
        ts.push(ts[0]);
        let letters = split(q, &hs);
        let anchor = self_anchor(&letters, &ts)?;
        let pos = letters.iter().position(|l| l.dir == Dir::Direct).ok_or(Error::UnplaceableScalar)?;
        Band::new(q, letters, invariant, pos, anchor)
    }
}

fn self_anchor(letters: &[Letter], tags: &[Option<i32>]) -> Result<i32> {
    let dummy = Tw { start: 0, halves: Vec::new(), tags: Vec::new(), clash: false };
    dummy.anchor(letters, tags)
}

/// Product of direct coefficients over inverse ones: the band parameter as
/// read in this orientation.
fn invariant<F: Field>(v: &View<F>) -> F {
    let mut x = F::one();
    for k in 0..v.n() {
        let c = v.coef(k);
        x = match v.letter(k).unwrap().dir {
            Dir::Direct => x * c,
            Dir::Inverse => x.div(&c),
        };
    }
    x
}

/// Whether a basis map is presented in the orientation the cone formulas need.
pub fn is_compatible<F: Field>(alg: &Algebra, s: &View<F>, t: &View<F>, m: &BasisMap<F>) -> bool {
    let q = &alg.quiver;
    match &m.kind {
        Kind::Graph { full: true, .. } | Kind::Quasi { full: true, .. } | Kind::Double { .. } => true,
        Kind::Graph { .. } | Kind::Quasi { .. } => {
            let (e, f) = (m.p + m.len, m.q + m.len);
            if m.len > 0 {
                return true;
            }
            let (sl, tl, sr, tr) = (s.letter(m.p - 1), t.letter(m.q - 1), s.letter(e), t.letter(f));
            let ends_ok = match &m.kind {
                Kind::Graph { left, right, .. } => {
                    classify_end(alg, Side::Left, sl, tl).map(|x| x.0) == Some(*left)
                        && classify_end(alg, Side::Right, sr, tr).map(|x| x.0) == Some(*right)
                }
                _ => {
                    let l = classify_end(alg, Side::Left, sl, tl).map(|x| x.0);
                    let r = classify_end(alg, Side::Right, sr, tr).map(|x| x.0);
                    l.is_some_and(|x| !x.is_graph()) && r.is_some_and(|x| !x.is_graph())
                }
            };
            ends_ok && pair_ok(Side::Left, sl, tl, alg) && pair_ok(Side::Right, sr, tr, alg) && cross_ok(alg, [(sl, tl), (sr, tr)])
        }
        Kind::Single { f } => {
            let (i, j) = (m.p, m.q);
            let proper = |l: &Letter| l.path.len() > f.len();
            let sr_ok = s.letter(i).is_none_or(|l| l.dir == Dir::Direct && f.is_suffix_of(&l.path) && proper(l));
            let tr_ok = t.letter(j).is_none_or(|l| l.dir == Dir::Inverse && f.is_prefix_of(&l.path) && proper(l));
            let untangled = |l: &Letter| !l.path.contains(f) && !f.contains(&l.path);
            let sl_ok = s.letter(i - 1).is_none_or(|l| (l.dir == Dir::Inverse && untangled(l)) || (l.dir == Dir::Direct && q.then(f, &l.path).is_none()));
            let tl_ok = t.letter(j - 1).is_none_or(|l| (l.dir == Dir::Direct && untangled(l)) || (l.dir == Dir::Inverse && q.then(&l.path, f).is_none()));
            sr_ok && tr_ok && sl_ok && tl_ok
        }
    }
}

/// Put a basis map into compatible orientation. Maps supported in more than
/// one degree come out of the enumerators already oriented; for one-degree
/// graph and quasi-graph maps the orientation of τ may need flipping.
pub fn normalize_orientation<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>, m: &BasisMap<F>) -> Result<BasisMap<F>> {
    let s = View::new(sigma, m.s_inv);
    let t = View::new(tau, m.t_inv);
    if is_compatible(alg, &s, &t, m) {
        return Ok(m.clone());
    }
    if matches!(m.kind, Kind::Graph { .. } | Kind::Quasi { .. }) && m.len == 0 {
        let mut flipped = m.clone();
        flipped.t_inv = !m.t_inv;
        flipped.q = flip_pos(&t, m.q);
        let t2 = View::new(tau, flipped.t_inv);
        if is_compatible(alg, &s, &t2, &flipped) {
            return Ok(flipped);
        }
    }
    Err(Error::NotCompatiblyOriented(format!("{} map at ({}, {})", m.kind.name(), m.p, m.q)))
}

struct Ctx<'a, F: Field> {
    q: &'a Quiver,
    s: View<F>,
    t: View<F>,
    lambda: F,
    mu: F,
}

impl<F: Field> Ctx<'_, F> {
    fn ns(&self) -> i64 {
        self.s.n()
    }
    fn nt(&self) -> i64 {
        self.t.n()
    }
    fn sg(&self, a: i64, b: i64) -> Tw {
        Tw::seg(&self.s, a, b, -1)
    }
    fn tg(&self, a: i64, b: i64) -> Tw {
        Tw::seg(&self.t, a, b, 0)
    }
    /// Join pieces; the flag on each piece says whether its left junction keeps its tags.
    fn chain(&self, pieces: Vec<(Tw, bool)>) -> Result<Tw> {
        let mut it = pieces.into_iter();
        let mut w = it.next().unwrap().0;
        for (p, keep) in it {
            w = w.join(self.q, p, keep)?;
        }
        Ok(w)
    }
    fn string(&self, w: Tw, note: &str) -> Result<ConeSummand<F>> {
        Ok(ConeSummand { summand: Summand::String(w.into_string(self.q)?), note: note.into() })
    }
    fn band(&self, w: Tw, scalar: F, keep: bool, note: &str) -> Result<ConeSummand<F>> {
        Ok(ConeSummand { summand: Summand::Band(w.into_band(self.q, scalar, keep)?), note: note.into() })
    }
    /// String from a walk whose end letters facing an empty end are cancelled.
    fn wrapped(&self, w: Tw, front: bool, back: bool, note: &str) -> Result<Vec<ConeSummand<F>>> {
        Ok(vec![match w.trim(self.q, front, back) {
            Some(w) => self.string(w, note)?,
            None => self.zero(note),
        }])
    }
    fn zero(&self, note: &str) -> ConeSummand<F> {
        ConeSummand { summand: Summand::Zero, note: note.into() }
    }
    /// `λ μ⁻¹` times a sign.
    fn ratio(&self, negative: bool) -> F {
        let r = self.lambda.div(&self.mu);
        if negative {
            -r
        } else {
            r
        }
    }
}

fn direct(p: &Path) -> Letter {
    Letter::new(Dir::Direct, p.clone())
}
fn inverse(p: &Path) -> Letter {
    Letter::new(Dir::Inverse, p.clone())
}

fn graph_cone<F: Field>(c: &Ctx<'_, F>, m: &BasisMap<F>) -> Result<Vec<ConeSummand<F>>> {
    let (s, t) = (&c.s, &c.t);
    let (ns, nt) = (c.ns(), c.nt());
    let (p, q, e, f) = (m.p, m.q, m.p + m.len, m.q + m.len);
    let (sl, tl, sr, tr) = (s.letter(p - 1).is_some(), t.letter(q - 1).is_some(), s.letter(e).is_some(), t.letter(f).is_some());
    match (s.cyclic, t.cyclic) {
        (false, false) => {
            let c1 = match (sr, tr) {
                (true, true) => c.string(c.chain(vec![(c.tg(nt, f), true), (c.sg(e, ns), false)])?, "graph/c1")?,
                (false, true) => c.string(c.tg(nt, f + 1), "graph/c1, σ_R = ∅")?,
                (true, false) => c.string(c.sg(e + 1, ns), "graph/c1, τ_R = ∅")?,
                (false, false) => c.zero("graph/c1, σ_R = τ_R = ∅"),
            };
            let c2 = match (sl, tl) {
                (true, true) => c.string(c.chain(vec![(c.sg(0, p), true), (c.tg(q, 0), false)])?, "graph/c2")?,
                (false, true) => c.string(c.tg(q - 1, 0), "graph/c2, σ_L = ∅")?,
                (true, false) => c.string(c.sg(0, p - 1), "graph/c2, τ_L = ∅")?,
                (false, false) => c.zero("graph/c2, σ_L = τ_L = ∅"),
            };
            Ok(vec![c1, c2])
        }
        (true, true) => {
            let w = c.chain(vec![(c.sg(e, p + ns), true), (c.tg(q + nt, f), false)])?;
            let odd = m.len % 2 == 1;
            Ok(vec![c.band(w, c.ratio(odd), false, "graph/band-band")?])
        }
        (true, false) => {
            // σ's band minus ρ, walked backwards; when ρ wraps the band the walk
            // runs forwards along ρ instead
            let mut pieces = Vec::new();
            if tl {
                pieces.push((c.tg(0, q), true));
            }
            let trim = ns > m.len;
            // once ρ wraps, what survives of the overlap belongs to τ
            let mid = if trim { c.sg(p, e - ns) } else { c.tg(q, f - ns) };
            pieces.push((mid, !trim));
            if tr {
                pieces.push((c.tg(f, nt), !trim));
            }
            c.wrapped(c.chain(pieces)?, trim && !tl, trim && !tr, "graph/band-string")
        }
        (false, true) => {
            let mut pieces = Vec::new();
            if sl {
                pieces.push((c.sg(0, p), true));
            }
            let trim = nt > m.len;
            let mid = if trim { c.tg(q, f - nt) } else { c.sg(p, e - nt) };
            pieces.push((mid, !trim));
            if sr {
                pieces.push((c.sg(e, ns), !trim));
            }
            c.wrapped(c.chain(pieces)?, trim && !sl, trim && !sr, "graph/string-band")
        }
    }
}

fn single_cone<F: Field>(c: &Ctx<'_, F>, m: &BasisMap<F>, f: &Path) -> Result<Vec<ConeSummand<F>>> {
    let (s, t) = (&c.s, &c.t);
    let (ns, nt) = (c.ns(), c.nt());
    let (i, j) = (m.p, m.q);
    let fl = || (Tw::letter(&direct(f)), true);
    let fb = || (Tw::letter(&inverse(f)), true);
    let (sr, tr) = (s.letter(i).is_some(), t.letter(j).is_some());
    match (s.cyclic, t.cyclic) {
        (false, false) => {
            let c1 = c.string(c.chain(vec![(c.sg(0, i), true), fl(), (c.tg(j, 0), true)])?, "single/c1")?;
            let c2 = match (sr, tr) {
                (true, true) => c.string(c.chain(vec![(c.tg(nt, j), true), fb(), (c.sg(i, ns), true)])?, "single/c2")?,
                (true, false) => c.string(c.sg(i + 1, ns), "single/c2, τ_R = ∅")?,
                (false, true) => c.string(c.tg(nt, j + 1), "single/c2, σ_R = ∅")?,
                (false, false) => c.zero("single/c2, σ_R = τ_R = ∅"),
            };
            Ok(vec![c1, c2])
        }
        (true, true) => {
            let w = c.chain(vec![(c.sg(i, i + ns), true), fl(), (c.tg(j, j - nt), true), fb()])?;
            Ok(vec![c.band(w, c.ratio(true), true, "single/band-band")?])
        }
        (true, false) => {
            let w = if tr {
                c.chain(vec![(c.tg(nt, j), true), fb(), (c.sg(i, i + ns), true), fl(), (c.tg(j, 0), true)])?
            } else {
                c.chain(vec![(c.sg(i + 1, i + ns), true), fl(), (c.tg(j, 0), true)])?
            };
            Ok(vec![c.string(w, if tr { "single/band-string" } else { "single/band-string, τ_R = ∅" })?])
        }
        (false, true) => {
            let w = if sr {
                c.chain(vec![(c.sg(0, i), true), fl(), (c.tg(j, j - nt), true), fb(), (c.sg(i, ns), true)])?
            } else {
                c.chain(vec![(c.sg(0, i), true), fl(), (c.tg(j, j + 1 - nt), true)])?
            };
            Ok(vec![c.string(w, if sr { "single/string-band" } else { "single/string-band, σ_R = ∅" })?])
        }
    }
}

fn double_cone<F: Field>(c: &Ctx<'_, F>, m: &BasisMap<F>, f_l: &Path, f_r: &Path) -> Result<Vec<ConeSummand<F>>> {
    let (s, t) = (&c.s, &c.t);
    let (ns, nt) = (c.ns(), c.nt());
    let (k, n) = (m.p, m.q);
    let lt = |l: Letter| (Tw::letter(&l), true);
    match (s.cyclic, t.cyclic) {
        (false, false) => {
            let c1 = c.chain(vec![(c.tg(nt, n + 1), true), lt(inverse(f_r)), (c.sg(k + 1, ns), true)])?;
            let c2 = c.chain(vec![(c.sg(0, k), true), lt(direct(f_l)), (c.tg(n, 0), true)])?;
            Ok(vec![c.string(c1, "double/c1")?, c.string(c2, "double/c2")?])
        }
        (true, true) => {
            let w = c.chain(vec![(c.sg(k + 1, k + ns), true), lt(direct(f_l)), (c.tg(n, n + 1 - nt), true), lt(inverse(f_r))])?;
            Ok(vec![c.band(w, c.ratio(true), true, "double/band-band")?])
        }
        (true, false) => {
            let w = c.chain(vec![
                (c.tg(0, n), true),
                lt(inverse(f_l)),
                (c.sg(k, k + 1 - ns), true),
                lt(direct(f_r)),
                (c.tg(n + 1, nt), true),
            ])?;
            Ok(vec![c.string(w, "double/band-string")?])
        }
        (false, true) => {
            let w = c.chain(vec![
                (c.sg(0, k), true),
                lt(direct(f_l)),
                (c.tg(n, n + 1 - nt), true),
                lt(inverse(f_r)),
                (c.sg(k + 1, ns), true),
            ])?;
            Ok(vec![c.string(w, "double/string-band")?])
        }
    }
}

fn quasi_cone<F: Field>(c: &Ctx<'_, F>, m: &BasisMap<F>) -> Result<Vec<ConeSummand<F>>> {
    let (s, t) = (&c.s, &c.t);
    let (ns, nt) = (c.ns(), c.nt());
    let (e, f) = (m.p + m.len, m.q + m.len);
    match (s.cyclic, t.cyclic) {
        (false, false) => {
            let c1 = c.chain(vec![(c.sg(0, e), true), (c.tg(f, nt), true)])?;
            let c2 = c.chain(vec![(c.tg(0, f), true), (c.sg(e, ns), true)])?;
            Ok(vec![c.string(c1, "quasi/c1")?, c.string(c2, "quasi/c2")?])
        }
        (true, true) => {
            let w = c.chain(vec![(c.sg(e, e + ns), true), (c.tg(f, f + nt), true)])?;
            let r = -(c.lambda.clone() * c.mu.clone());
            Ok(vec![c.band(w, r, true, "quasi/band-band")?])
        }
        (true, false) => {
            let w = c.chain(vec![(c.tg(0, f), true), (c.sg(e, e + ns), true), (c.tg(f, nt), true)])?;
            Ok(vec![c.string(w, "quasi/band-string")?])
        }
        (false, true) => {
            let w = c.chain(vec![(c.sg(0, e), true), (c.tg(f, f + nt), true), (c.sg(e, ns), true)])?;
            Ok(vec![c.string(w, "quasi/string-band")?])
        }
    }
}

/// Canonical representatives, sorted: strings, then bands, then zeros.
pub fn canonicalize<F: Field>(q: &Quiver, mut v: Vec<ConeSummand<F>>) -> Vec<ConeSummand<F>> {
    for c in v.iter_mut() {
        c.summand = match &c.summand {
            Summand::String(s) => Summand::String(s.canonical()),
            Summand::Band(b) => Summand::Band(b.canonical()),
            Summand::Zero => Summand::Zero,
        };
    }
    v.sort_by_key(|c| c.sort_key(q));
    v
}

/// The indecomposable summands of the mapping cone of a basis map `σ → τ`.
pub fn cone<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>, m: &BasisMap<F>) -> Result<Vec<ConeSummand<F>>> {
    let m = normalize_orientation(alg, sigma, tau, m)?;
    let s = View::new(sigma, m.s_inv);
    let t = View::new(tau, m.t_inv);
    let (lambda, mu) = (invariant(&s), invariant(&t));
    let c = Ctx { q: &alg.quiver, s, t, lambda, mu };
    let out = match &m.kind {
        Kind::Graph { full: true, .. } => {
            if sigma.is_band() {
                vec![c.zero("graph/identity")]
            } else {
                vec![c.zero("graph/identity"), c.zero("graph/identity")]
            }
        }
        Kind::Graph { .. } => graph_cone(&c, &m)?,
        Kind::Single { f } => single_cone(&c, &m, f)?,
        Kind::Double { f_l, f_r, .. } => double_cone(&c, &m, f_l, f_r)?,
        Kind::Quasi { full: true, .. } => return Err(Error::HigherMultiplicity("cone of the self-extension of a band".into())),
        Kind::Quasi { .. } => quasi_cone(&c, &m)?,
    };
    for x in &out {
        match &x.summand {
            Summand::String(s) => s.revalidate(&alg.quiver)?,
            Summand::Band(b) => b.revalidate(&alg.quiver)?,
            Summand::Zero => {}
        }
    }
    Ok(canonicalize(&alg.quiver, out))
}

impl<F: Field> fmt::Display for Summand<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::String(s) => write!(f, "string({} letters)", s.len()),
            Summand::Band(b) => write!(f, "band({} letters, {})", b.len(), b.scalar()),
            Summand::Zero => f.write_str("0"),
        }
    }
}

#[derive(Serialize)]
pub struct SummandReport {
    pub kind: &'static str,
    pub word: String,
    pub anchor: Option<i32>,
    pub scalar: Option<String>,
    pub case: String,
}

pub fn report<F: Field>(q: &Quiver, v: &[ConeSummand<F>]) -> Vec<SummandReport> {
    v.iter()
        .map(|c| match &c.summand {
            Summand::String(s) => SummandReport { kind: "string", word: s.word(q), anchor: Some(s.anchor()), scalar: None, case: c.note.clone() },
            Summand::Band(b) => SummandReport {
                kind: "band",
                word: b.word(q),
                anchor: Some(b.anchor()),
                scalar: Some(b.scalar().to_string()),
                case: c.note.clone(),
            },
            Summand::Zero => SummandReport { kind: "zero", word: "0".into(), anchor: None, scalar: None, case: c.note.clone() },
        })
        .collect()
}
