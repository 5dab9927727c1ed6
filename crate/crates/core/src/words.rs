//! Graded homotopy strings and bands.
//!
//! Words are read left to right along the unfolded diagram. A direct letter `p`
//! runs from `P(tgt p)` on the left to `P(src p)` on the right and raises the
//! degree by one; an inverse letter `~p` runs from `P(src p)` to `P(tgt p)` and
//! lowers it. Internally every word is also a walk of half-arrows, which makes
//! reduction (`a ~a` cancellation) and re-splitting into maximal letters easy.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Rat};
use crate::quiver::{ArrowId, Path, Quiver, Vertex};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Dir {
    Direct,
    Inverse,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Direct => Dir::Inverse,
            Dir::Inverse => Dir::Direct,
        }
    }
    pub fn step(self) -> i32 {
        match self {
            Dir::Direct => 1,
            Dir::Inverse => -1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub dir: Dir,
    pub path: Path,
}

impl Letter {
    pub fn new(dir: Dir, path: Path) -> Letter {
        debug_assert!(!path.is_trivial());
        Letter { dir, path }
    }
    pub fn left(&self) -> Vertex {
        match self.dir {
            Dir::Direct => self.path.tgt(),
            Dir::Inverse => self.path.src(),
        }
    }
    pub fn right(&self) -> Vertex {
        match self.dir {
            Dir::Direct => self.path.src(),
            Dir::Inverse => self.path.tgt(),
        }
    }
    pub fn inverse(&self) -> Letter {
        Letter { dir: self.dir.flip(), path: self.path.clone() }
    }
    pub fn halves(&self) -> Vec<Half> {
        let dir = self.dir;
        let mut v: Vec<Half> = self.path.arrows().iter().map(|&arrow| Half { arrow, dir }).collect();
        if dir == Dir::Direct {
            v.reverse();
        }
        v
    }
    pub fn expr(&self, q: &Quiver) -> String {
        match self.dir {
            Dir::Direct => q.path_expr(&self.path),
            Dir::Inverse => format!("~{}", q.path_expr(&self.path)),
        }
    }
    fn key(&self) -> (Dir, &[ArrowId]) {
        (self.dir, self.path.arrows())
    }
}

/// One arrow of a walk, crossed forwards (`Inverse`, from source to target) or
/// backwards (`Direct`, from target to source) when read left to right.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Half {
    pub arrow: ArrowId,
    pub dir: Dir,
}

impl Half {
    pub fn left(self, q: &Quiver) -> Vertex {
        let a = q.arrow(self.arrow);
        match self.dir {
            Dir::Direct => a.tgt,
            Dir::Inverse => a.src,
        }
    }
    pub fn right(self, q: &Quiver) -> Vertex {
        let a = q.arrow(self.arrow);
        match self.dir {
            Dir::Direct => a.src,
            Dir::Inverse => a.tgt,
        }
    }
    pub fn inverse(self) -> Half {
        Half { arrow: self.arrow, dir: self.dir.flip() }
    }
}

pub fn expand(letters: &[Letter]) -> Vec<Half> {
    letters.iter().flat_map(|l| l.halves()).collect()
}

pub fn invert_walk(halves: &[Half]) -> Vec<Half> {
    halves.iter().rev().map(|h| h.inverse()).collect()
}

/// Free cancellation of adjacent `a ~a` pairs.
pub fn reduce(halves: &[Half]) -> Vec<Half> {
    let mut out: Vec<Half> = Vec::with_capacity(halves.len());
    for &h in halves {
        if out.last() == Some(&h.inverse()) {
            out.pop();
        } else {
            out.push(h);
        }
    }
    out
}

/// Whether two consecutive halves belong to different letters.
pub fn is_break(q: &Quiver, x: Half, y: Half) -> bool {
    if x.dir != y.dir {
        return true;
    }
    match x.dir {
        // traversal is y then x
        Dir::Direct => q.is_rel(y.arrow, x.arrow),
        Dir::Inverse => q.is_rel(x.arrow, y.arrow),
    }
}

fn group_letter(q: &Quiver, group: &[Half]) -> Letter {
    let dir = group[0].dir;
    let mut arrows: Vec<ArrowId> = group.iter().map(|h| h.arrow).collect();
    if dir == Dir::Direct {
        arrows.reverse();
    }
    let path = q.path_from(&arrows).expect("letter path is nonzero by construction");
    Letter { dir, path }
}

/// Maximal-letter decomposition of a walk (no cancellation performed).
pub fn split(q: &Quiver, halves: &[Half]) -> Vec<Letter> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=halves.len() {
        if i == halves.len() || is_break(q, halves[i - 1], halves[i]) {
            if i > start {
                out.push(group_letter(q, &halves[start..i]));
            }
            start = i;
        }
    }
    out
}

fn letters_key(ls: &[Letter]) -> Vec<(Dir, &[ArrowId])> {
    ls.iter().map(|l| l.key()).collect()
}

fn check_junction(q: &Quiver, i: usize, l: &Letter, r: &Letter) -> Result<()> {
    if l.right() != r.left() {
        return Err(Error::InvalidJunction {
            index: i,
            reason: format!("{} ends at {} but the next letter starts at {}", l.expr(q), q.vertex_name(l.right()), q.vertex_name(r.left())),
        });
    }
    let x = *l.halves().last().unwrap();
    let y = r.halves()[0];
    if x.dir != y.dir {
        if x.arrow == y.arrow {
            return Err(Error::CancellingPair(i));
        }
        return Ok(());
    }
    if !is_break(q, x, y) {
        let reason = match x.dir {
            Dir::Direct => "consecutive direct letters must meet in a relation",
            Dir::Inverse => "consecutive inverse letters must meet in a relation",
        };
        return Err(Error::InvalidJunction { index: i, reason: reason.into() });
    }
    Ok(())
}

fn parse_path(q: &Quiver, tok: &str) -> Result<Path> {
    let names: Vec<&str> = if let Some(inner) = tok.strip_prefix('(') {
        let inner = inner.strip_suffix(')').ok_or_else(|| syntax(&format!("unbalanced parenthesis in `{tok}`")))?;
        let v: Vec<&str> = inner.split('*').map(str::trim).collect();
        if v.len() < 2 {
            return Err(syntax(&format!("parenthesised letter `{tok}` needs at least two arrows")));
        }
        v
    } else {
        vec![tok]
    };
    let mut arrows = Vec::new();
    for n in names.iter().rev() {
        arrows.push(q.arrow_id(n)?);
    }
    for w in arrows.windows(2) {
        if q.arrow(w[0]).tgt != q.arrow(w[1]).src {
            return Err(Error::InvalidLetter(tok.into(), "arrows are not composable".into()));
        }
        if q.is_rel(w[0], w[1]) {
            return Err(Error::InvalidLetter(tok.into(), "contains a relation".into()));
        }
    }
    Ok(q.path_from(&arrows).unwrap())
}

fn syntax(msg: &str) -> Error {
    Error::Syntax { line: 1, msg: msg.to_string() }
}

/// Tokens of a word expression; `(d * c)` is accepted and normalized.
fn tokenize(expr: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in expr.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

struct Parsed {
    letters: Vec<Letter>,
    trivial: Option<Vertex>,
    attrs: BTreeMap<String, String>,
}

fn parse_word(q: &Quiver, expr: &str) -> Result<Parsed> {
    let mut letters = Vec::new();
    let mut trivial = None;
    let mut attrs = BTreeMap::new();
    for tok in tokenize(expr) {
        if let Some(a) = tok.strip_prefix('@') {
            let (k, v) = a.split_once('=').ok_or_else(|| syntax(&format!("bad attribute `{tok}`")))?;
            attrs.insert(k.to_string(), v.to_string());
            continue;
        }
        if !attrs.is_empty() {
            return Err(syntax("attributes must come after the letters"));
        }
        if let Some(v) = tok.strip_prefix("1_") {
            trivial = Some(q.vertex_id(v)?);
            continue;
        }
        let (dir, body) = match tok.strip_prefix('~') {
            Some(b) => (Dir::Inverse, b),
            None => (Dir::Direct, tok.as_str()),
        };
        letters.push(Letter { dir, path: parse_path(q, body)? });
    }
    if trivial.is_some() && !letters.is_empty() {
        return Err(syntax("a trivial string `1_x` cannot carry letters"));
    }
    Ok(Parsed { letters, trivial, attrs })
}

fn int_attr(attrs: &BTreeMap<String, String>, k: &str) -> Result<Option<i64>> {
    match attrs.get(k) {
        None => Ok(None),
        Some(v) => v.parse().map(Some).map_err(|_| syntax(&format!("@{k} expects an integer"))),
    }
}

/// A finite graded homotopy string. The empty word is the trivial string at `start`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HString {
    start: Vertex,
    letters: Vec<Letter>,
    anchor: i32,
}

impl HString {
    pub fn trivial(v: Vertex, anchor: i32) -> HString {
        HString { start: v, letters: Vec::new(), anchor }
    }

    /// Validates letters and junctions.
    pub fn from_letters(q: &Quiver, letters: Vec<Letter>, anchor: i32) -> Result<HString> {
        let start = letters.first().map(|l| l.left()).ok_or_else(|| syntax("empty word"))?;
        for (i, w) in letters.windows(2).enumerate() {
            check_junction(q, i, &w[0], &w[1])?;
        }
        Ok(HString { start, letters, anchor })
    }

    /// Reduce a walk and split it into maximal letters.
    pub fn from_walk(q: &Quiver, start: Vertex, halves: &[Half], anchor: i32) -> HString {
        let r = reduce(halves);
        HString { start, letters: split(q, &r), anchor }
    }

    pub fn parse(q: &Quiver, expr: &str) -> Result<HString> {
        let p = parse_word(q, expr)?;
        for k in p.attrs.keys() {
            if k != "anchor" {
                return Err(syntax(&format!("unknown string attribute @{k}")));
            }
        }
        let anchor = int_attr(&p.attrs, "anchor")?.unwrap_or(0) as i32;
        match p.trivial {
            Some(v) => Ok(HString::trivial(v, anchor)),
            None => HString::from_letters(q, p.letters, anchor),
        }
    }

    pub fn parse_with_anchor(q: &Quiver, expr: &str, anchor: i32) -> Result<HString> {
        Ok(HString::parse(q, expr)?.with_anchor(anchor))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }
    pub fn anchor(&self) -> i32 {
        self.anchor
    }
    pub fn start(&self) -> Vertex {
        self.start
    }
    pub fn with_anchor(mut self, a: i32) -> HString {
        self.anchor = a;
        self
    }
    pub fn walk(&self) -> Vec<Half> {
        expand(&self.letters)
    }

    /// Vertices of the unfolded diagram, left to right.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = vec![self.start];
        v.extend(self.letters.iter().map(|l| l.right()));
        v
    }
    pub fn degrees(&self) -> Vec<i32> {
        let mut d = vec![self.anchor];
        for l in &self.letters {
            d.push(d.last().unwrap() + l.dir.step());
        }
        d
    }
    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_pairs(self.vertices().into_iter().zip(self.degrees()))
    }

    pub fn invert(&self) -> HString {
        let end = *self.vertices().last().unwrap();
        let anchor = *self.degrees().last().unwrap();
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        HString { start: end, letters, anchor }
    }

    /// Σⁿ: the recorded degrees drop by `n`.
    pub fn shift(&self, n: i32) -> HString {
        HString { anchor: self.anchor - n, ..self.clone() }
    }

    /// The lexicographically smaller of the two orientations.
    pub fn canonical(&self) -> HString {
        let inv = self.invert();
        if letters_key(&inv.letters) < letters_key(&self.letters) {
            inv
        } else {
            self.clone()
        }
    }

    pub fn word(&self, q: &Quiver) -> String {
        if self.letters.is_empty() {
            return format!("1_{}", q.vertex_name(self.start));
        }
        self.letters.iter().map(|l| l.expr(q)).collect::<Vec<_>>().join(" ")
    }

    pub fn to_expr(&self, q: &Quiver) -> String {
        if self.anchor == 0 {
            self.word(q)
        } else {
            format!("{} @anchor={}", self.word(q), self.anchor)
        }
    }

    pub fn revalidate(&self, q: &Quiver) -> Result<()> {
        if self.letters.is_empty() {
            return Ok(());
        }
        HString::from_letters(q, self.letters.clone(), self.anchor).map(|_| ())
    }
}

/// A band with a nonzero scalar on a direct letter; `anchor` is the degree of
/// the left vertex of letter 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Band<F: Field = Rat> {
    letters: Vec<Letter>,
    scalar: F,
    pos: usize,
    anchor: i32,
}

impl<F: Field> Band<F> {
    pub fn new(q: &Quiver, letters: Vec<Letter>, scalar: F, pos: usize, anchor: i32) -> Result<Band<F>> {
        if letters.is_empty() {
            return Err(Error::NotClosed);
        }
        for (i, w) in letters.windows(2).enumerate() {
            check_junction(q, i, &w[0], &w[1])?;
        }
        let n = letters.len();
        if letters[n - 1].right() != letters[0].left() {
            return Err(Error::NotClosed);
        }
        match check_junction(q, n - 1, &letters[n - 1], &letters[0]) {
            Ok(()) => {}
            Err(Error::CancellingPair(_)) => return Err(Error::BadCyclicJunction("first and last letters cancel".into())),
            Err(Error::InvalidJunction { reason, .. }) => return Err(Error::BadCyclicJunction(reason)),
            Err(e) => return Err(e),
        }
        let direct = letters.iter().filter(|l| l.dir == Dir::Direct).count();
        if 2 * direct != n {
            return Err(Error::UnbalancedDirections { direct, inverse: n - direct });
        }
        for d in 1..n {
            if n % d == 0 && (0..n).all(|i| letters[i] == letters[(i + d) % n]) {
                return Err(Error::NotPrimitive);
            }
        }
        if pos >= n || letters[pos].dir != Dir::Direct {
            return Err(Error::ScalarOnInverseLetter(pos));
        }
        if scalar.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(Band { letters, scalar, pos, anchor })
    }

    /// Cyclically reduce a closed walk and split it into maximal letters; the
    /// scalar becomes the band invariant placed on the first direct letter.
    /// `anchor` is the degree of the walk's start vertex.
    pub fn from_cyclic_walk(q: &Quiver, halves: &[Half], invariant: F, anchor: i32) -> Result<Band<F>> {
        let mut w = reduce(halves);
        let mut anchor = anchor;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
            anchor += w[0].dir.step();
            w.remove(0);
            w.pop();
        }
        let n = w.len();
        if n == 0 {
            return Err(Error::NotClosed);
        }
        let cut = (0..n).find(|&i| is_break(q, w[(i + n - 1) % n], w[i])).ok_or(Error::NotClosed)?;
        for h in &w[..cut] {
            anchor += h.dir.step();
        }
        w.rotate_left(cut);
        let letters = split(q, &w);
        let pos = letters.iter().position(|l| l.dir == Dir::Direct).ok_or(Error::UnplaceableScalar)?;
        Band::new(q, letters, invariant, pos, anchor)
    }

    pub fn parse(q: &Quiver, expr: &str) -> Result<Band<F>> {
        let p = parse_word(q, expr)?;
        for k in p.attrs.keys() {
            if !["anchor", "scalar", "pos"].contains(&k.as_str()) {
                return Err(syntax(&format!("unknown band attribute @{k}")));
            }
        }
        if p.trivial.is_some() {
            return Err(Error::NotClosed);
        }
        let scalar = match p.attrs.get("scalar") {
            None => F::one(),
            Some(s) => {
                let r = parse_rational(s).ok_or_else(|| syntax(&format!("bad scalar `{s}`")))?;
                F::from_rational(&r).ok_or_else(|| Error::ScalarNotInField(s.clone()))?
            }
        };
        let pos = match int_attr(&p.attrs, "pos")? {
            Some(i) => i as usize,
            None => p.letters.iter().position(|l| l.dir == Dir::Direct).unwrap_or(0),
        };
        let anchor = int_attr(&p.attrs, "anchor")?.unwrap_or(0) as i32;
        Band::new(q, p.letters, scalar, pos, anchor)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn scalar(&self) -> &F {
        &self.scalar
    }
    pub fn pos(&self) -> usize {
        self.pos
    }
    pub fn anchor(&self) -> i32 {
        self.anchor
    }
    pub fn with_anchor(mut self, a: i32) -> Self {
        self.anchor = a;
        self
    }
    pub fn with_scalar(mut self, s: F) -> Self {
        assert!(!s.is_zero());
        self.scalar = s;
        self
    }
    pub fn walk(&self) -> Vec<Half> {
        expand(&self.letters)
    }
    /// Direct letters raise degree; the scalar sits on a direct letter, so it is the invariant.
    pub fn invariant(&self) -> F {
        self.scalar.clone()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.letters.iter().map(|l| l.left()).collect()
    }
    pub fn degrees(&self) -> Vec<i32> {
        let mut d = vec![self.anchor];
        for l in &self.letters[..self.letters.len() - 1] {
            d.push(d.last().unwrap() + l.dir.step());
        }
        d
    }
    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_pairs(self.vertices().into_iter().zip(self.degrees()))
    }

    pub fn rotate(&self, k: i64) -> Band<F> {
        let n = self.letters.len();
        let k = k.rem_euclid(n as i64) as usize;
        let mut letters = self.letters.clone();
        letters.rotate_left(k);
        Band { letters, scalar: self.scalar.clone(), pos: (self.pos + n - k) % n, anchor: self.degrees()[k] }
    }

    /// Read backwards: the scalar becomes its inverse on the first direct letter.
    pub fn invert(&self) -> Band<F> {
        let n = self.letters.len();
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        // left vertex of the new letter 0 is the old vertex 0 (the closing vertex)
        let pos = letters.iter().position(|l| l.dir == Dir::Direct).unwrap();
        debug_assert!(n > 0);
        Band { letters, scalar: self.scalar.inv(), pos, anchor: self.anchor }
    }

    pub fn shift(&self, n: i32) -> Band<F> {
        Band { anchor: self.anchor - n, ..self.clone() }
    }

    /// Minimal rotation over both orientations, scalar on the first direct letter.
    pub fn canonical(&self) -> Band<F> {
        let mut best: Option<Band<F>> = None;
        for b in [self.clone(), self.invert()] {
            for k in 0..b.len() {
                let r = b.rotate(k as i64);
                if best.as_ref().map_or(true, |x| letters_key(&r.letters) < letters_key(&x.letters)) {
                    best = Some(r);
                }
            }
        }
        let mut b = best.unwrap();
        b.pos = b.letters.iter().position(|l| l.dir == Dir::Direct).unwrap();
        b
    }

    pub fn map_scalar<G: Field>(&self, f: impl FnOnce(&F) -> Option<G>) -> Result<Band<G>> {
        let s = f(&self.scalar).ok_or_else(|| Error::ScalarNotInField(format!("{}", self.scalar)))?;
        Ok(Band { letters: self.letters.clone(), scalar: s, pos: self.pos, anchor: self.anchor })
    }

    pub fn word(&self, q: &Quiver) -> String {
        self.letters.iter().map(|l| l.expr(q)).collect::<Vec<_>>().join(" ")
    }

    pub fn to_expr(&self, q: &Quiver) -> String {
        let mut s = format!("{} @scalar={} @pos={}", self.word(q), self.scalar, self.pos);
        if self.anchor != 0 {
            s += &format!(" @anchor={}", self.anchor);
        }
        s
    }

    pub fn revalidate(&self, q: &Quiver) -> Result<()> {
        Band::new(q, self.letters.clone(), self.scalar.clone(), self.pos, self.anchor).map(|_| ())
    }
}

impl Band<Rat> {
    pub fn to_field<G: Field>(&self) -> Result<Band<G>> {
        self.map_scalar(|s| G::from_rational(&s.0))
    }
}

/// Projectives per degree, as sorted vertex multisets.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct DegreeProfile(pub BTreeMap<i32, Vec<Vertex>>);

impl DegreeProfile {
    pub fn from_pairs(it: impl IntoIterator<Item = (Vertex, i32)>) -> DegreeProfile {
        let mut m: BTreeMap<i32, Vec<Vertex>> = BTreeMap::new();
        for (v, d) in it {
            m.entry(d).or_default().push(v);
        }
        for v in m.values_mut() {
            v.sort();
        }
        DegreeProfile(m)
    }
    pub fn total(&self) -> usize {
        self.0.values().map(Vec::len).sum()
    }
    pub fn dim(&self, d: i32) -> usize {
        self.0.get(&d).map_or(0, Vec::len)
    }
}

/// A string or band complex description.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Object<F: Field = Rat> {
    String(HString),
    Band(Band<F>),
}

impl<F: Field> Object<F> {
    pub fn letters(&self) -> &[Letter] {
        match self {
            Object::String(s) => s.letters(),
            Object::Band(b) => b.letters(),
        }
    }
    pub fn is_band(&self) -> bool {
        matches!(self, Object::Band(_))
    }
    pub fn shift(&self, n: i32) -> Object<F> {
        match self {
            Object::String(s) => Object::String(s.shift(n)),
            Object::Band(b) => Object::Band(b.shift(n)),
        }
    }
    pub fn anchor(&self) -> i32 {
        match self {
            Object::String(s) => s.anchor(),
            Object::Band(b) => b.anchor(),
        }
    }
    pub fn with_anchor(&self, a: i32) -> Object<F> {
        match self {
            Object::String(s) => Object::String(s.clone().with_anchor(a)),
            Object::Band(b) => Object::Band(b.clone().with_anchor(a)),
        }
    }
    pub fn degrees(&self) -> Vec<i32> {
        match self {
            Object::String(s) => s.degrees(),
            Object::Band(b) => b.degrees(),
        }
    }
    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            Object::String(s) => s.vertices(),
            Object::Band(b) => b.vertices(),
        }
    }
    pub fn degree_profile(&self) -> DegreeProfile {
        match self {
            Object::String(s) => s.degree_profile(),
            Object::Band(b) => b.degree_profile(),
        }
    }
    pub fn canonical(&self) -> Object<F> {
        match self {
            Object::String(s) => Object::String(s.canonical()),
            Object::Band(b) => Object::Band(b.canonical()),
        }
    }
    pub fn to_expr(&self, q: &Quiver) -> String {
        match self {
            Object::String(s) => s.to_expr(q),
            Object::Band(b) => b.to_expr(q),
        }
    }
    /// Parse a string, or a band when `@scalar` or `@pos` is present.
    pub fn parse(q: &Quiver, expr: &str) -> Result<Object<F>> {
        if expr.contains("@scalar") || expr.contains("@pos") {
            Band::parse(q, expr).map(Object::Band)
        } else {
            HString::parse(q, expr).map(Object::String)
        }
    }
}

impl Object<Rat> {
    pub fn to_field<G: Field>(&self) -> Result<Object<G>> {
        Ok(match self {
            Object::String(s) => Object::String(s.clone()),
            Object::Band(b) => Object::Band(b.to_field()?),
        })
    }
}

pub struct Display<'a, T>(pub &'a Quiver, pub &'a T);

impl fmt::Display for Display<'_, HString> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.1.to_expr(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn parse_long_string() {
        let q = corpus::algebra("A").unwrap();
        let s = HString::parse(&q, "e (d*c) b a ~d").unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.invert().word(&q), "d ~a ~b ~(d*c) ~e");
        assert_eq!(s.invert().invert(), s);
        assert_eq!(s.invert().degree_profile(), s.degree_profile());
        assert!(matches!(HString::parse(&q, "~a a"), Err(Error::CancellingPair(0))));
        assert!(HString::parse(&q, "e d").is_ok());
        assert!(matches!(HString::parse(&q, "d c"), Err(Error::InvalidJunction { .. })));
        assert!(matches!(HString::parse(&q, "(b*a)"), Err(Error::InvalidLetter(..))));
    }

    #[test]
    fn grading_rule() {
        let q = corpus::algebra("A").unwrap();
        let s = HString::parse(&q, "b a c b").unwrap();
        assert_eq!(s.degrees(), vec![0, 1, 2, 3, 4]);
        let names: Vec<&str> = s.vertices().iter().map(|&v| q.vertex_name(v)).collect();
        assert_eq!(names, vec!["2", "1", "0", "2", "1"]);
        let t = HString::trivial(0, 3);
        assert_eq!(t.degree_profile().0.get(&3), Some(&vec![0]));
        assert_eq!(s.shift(1).degrees(), vec![-1, 0, 1, 2, 3]);
    }

    #[test]
    fn band_validation() {
        let q = corpus::algebra("B").unwrap();
        let b: Band = Band::parse(&q, "~e ~d c b @scalar=2").unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.pos(), 2);
        assert!(matches!(Band::<Rat>::parse(&q, "c b @scalar=1"), Err(Error::NotClosed)));
        assert!(matches!(Band::<Rat>::parse(&q, "~e ~d c b ~e ~d c b @scalar=1"), Err(Error::NotPrimitive)));
        assert!(matches!(Band::<Rat>::parse(&q, "~e ~d c b @scalar=0"), Err(Error::ZeroScalar)));
        assert!(matches!(Band::<Rat>::parse(&q, "~e ~d c b @pos=0"), Err(Error::ScalarOnInverseLetter(0))));
        assert_eq!(b.rotate(4), b);
        assert_eq!(b.rotate(0), b);
        assert_eq!(b.rotate(1).degree_profile(), b.degree_profile());
        assert_eq!(b.invert().degree_profile(), b.degree_profile());
        assert_eq!(b.invert().canonical(), b.canonical());
    }

    #[test]
    fn reduction_and_resplitting() {
        let q = corpus::algebra("A").unwrap();
        let w = |e: &str| HString::parse(&q, e).unwrap().walk();
        // d ~a af e = dfe
        let mut h = w("d ~a");
        h.extend(w("(a*f) e"));
        assert_eq!(HString::from_walk(&q, q.vertex_id("4").unwrap(), &h, 0).word(&q), "d f e");
    }
}
