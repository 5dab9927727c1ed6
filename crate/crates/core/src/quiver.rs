//! Bound quiver presentations of gentle algebras and path arithmetic modulo
//! length-two monomial relations.
//!
//! A [`Path`] stores its arrows in traversal order: `arrows[0]` is walked first.
//! Path names read right to left, so the path `dc` (first `c`, then `d`)
//! is stored as `[c, d]` and written `(d*c)` in files.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: Vertex,
    pub tgt: Vertex,
}

/// A failed gentleness condition together with the offending vertex or arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: u8,
    pub witness: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition ({}) at {}: {}", self.condition, self.witness, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Decl {
    Vertices(Vec<Vertex>),
    Arrow(ArrowId),
    Rel(usize),
}

#[derive(Clone, Debug)]
pub struct Quiver {
    pub name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(ArrowId, ArrowId)>,
    rel: HashSet<(ArrowId, ArrowId)>,
    vindex: HashMap<String, Vertex>,
    aindex: HashMap<String, ArrowId>,
    decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    src: Vertex,
    tgt: Vertex,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Path {
        Path { src: v, tgt: v, arrows: Vec::new() }
    }
    pub fn src(&self) -> Vertex {
        self.src
    }
    pub fn tgt(&self) -> Vertex {
        self.tgt
    }
    /// Arrows in traversal order.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
    pub fn first(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }
    pub fn last(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }
    /// Contiguous subpath containment, ignoring endpoints of trivial paths.
    pub fn contains(&self, other: &Path) -> bool {
        if other.is_trivial() {
            return false;
        }
        self.arrows.windows(other.len()).any(|w| w == other.arrows.as_slice())
    }
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.src == other.src && other.arrows.starts_with(&self.arrows)
    }
    pub fn is_suffix_of(&self, other: &Path) -> bool {
        self.tgt == other.tgt && other.arrows.ends_with(&self.arrows)
    }
    /// Subpath of arrows `range` in traversal order; caller guarantees validity.
    pub(crate) fn slice(&self, q: &Quiver, from: usize, to: usize) -> Path {
        if from == to {
            let v = if from == 0 { self.src } else { q.arrow(self.arrows[from - 1]).tgt };
            return Path::trivial(v);
        }
        let arrows = self.arrows[from..to].to_vec();
        Path { src: q.arrow(arrows[0]).src, tgt: q.arrow(arrows[arrows.len() - 1]).tgt, arrows }
    }
}

impl Quiver {
    /// Build an unvalidated candidate; vertices and arrows are referenced by name.
    pub fn candidate(
        name: &str,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[(&str, &str)],
    ) -> Result<Quiver> {
        let mut q = Quiver::empty(name);
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        q.add_vertices(&vs)?;
        for (n, s, t) in arrows {
            q.add_arrow(n, s, t)?;
        }
        for (b, a) in relations {
            q.add_relation(b, a)?;
        }
        Ok(q)
    }

    fn empty(name: &str) -> Quiver {
        Quiver {
            name: name.to_string(),
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            rel: HashSet::new(),
            vindex: HashMap::new(),
            aindex: HashMap::new(),
            decls: Vec::new(),
        }
    }

    fn add_vertices(&mut self, names: &[String]) -> Result<()> {
        let mut ids = Vec::new();
        for n in names {
            if self.vindex.contains_key(n) {
                return Err(Error::DuplicateVertex(n.clone()));
            }
            self.vindex.insert(n.clone(), self.vertices.len());
            ids.push(self.vertices.len());
            self.vertices.push(n.clone());
        }
        self.decls.push(Decl::Vertices(ids));
        Ok(())
    }

    fn add_arrow(&mut self, name: &str, s: &str, t: &str) -> Result<()> {
        if self.aindex.contains_key(name) {
            return Err(Error::DuplicateArrow(name.to_string()));
        }
        let src = self.vertex_id(s)?;
        let tgt = self.vertex_id(t)?;
        self.aindex.insert(name.to_string(), self.arrows.len());
        self.decls.push(Decl::Arrow(self.arrows.len()));
        self.arrows.push(Arrow { name: name.to_string(), src, tgt });
        Ok(())
    }

    fn add_relation(&mut self, b: &str, a: &str) -> Result<()> {
        let bi = self.arrow_id(b)?;
        let ai = self.arrow_id(a)?;
        if self.arrows[ai].tgt != self.arrows[bi].src {
            return Err(Error::NotComposable(format!("relation {b}*{a}")));
        }
        if self.rel.insert((bi, ai)) {
            self.decls.push(Decl::Rel(self.relations.len()));
            self.relations.push((bi, ai));
        }
        Ok(())
    }

    pub fn vertex_id(&self, name: &str) -> Result<Vertex> {
        self.vindex.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }
    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.aindex.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }
    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertices[v]
    }
    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn relations(&self) -> &[(ArrowId, ArrowId)] {
        &self.relations
    }
    /// True when "a then b" is zero.
    pub fn is_rel(&self, a: ArrowId, b: ArrowId) -> bool {
        self.rel.contains(&(b, a))
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let ar = &self.arrows[a];
        Path { src: ar.src, tgt: ar.tgt, arrows: vec![a] }
    }

    /// Path from an arrow sequence in traversal order; `None` if zero or not composable.
    pub fn path_from(&self, arrows: &[ArrowId]) -> Option<Path> {
        let first = *arrows.first()?;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].tgt != self.arrows[w[1]].src || self.is_rel(w[0], w[1]) {
                return None;
            }
        }
        Some(Path {
            src: self.arrows[first].src,
            tgt: self.arrows[*arrows.last().unwrap()].tgt,
            arrows: arrows.to_vec(),
        })
    }

    /// `first` followed by `second` (written `second first` right to left).
    pub fn then(&self, first: &Path, second: &Path) -> Option<Path> {
        if first.tgt != second.src {
            return None;
        }
        if let (Some(a), Some(b)) = (first.last(), second.first()) {
            if self.is_rel(a, b) {
                return None;
            }
        }
        let mut arrows = first.arrows.clone();
        arrows.extend_from_slice(&second.arrows);
        Some(Path { src: first.src, tgt: second.tgt, arrows })
    }

    /// The product `pq`, meaning "q then p". `Ok(None)` is the zero element.
    pub fn compose_paths(&self, p: &Path, q: &Path) -> Result<Option<Path>> {
        if q.tgt != p.src {
            return Err(Error::NotComposable(format!(
                "{} after {}",
                self.path_name(p),
                self.path_name(q)
            )));
        }
        Ok(self.then(q, p))
    }

    /// All nonzero paths of length at most `max_len`, ordered by length and then by
    /// arrow names in traversal order.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        let mut layer: Vec<Path> =
            (0..self.arrows.len()).map(|a| self.arrow_path(a)).collect();
        let mut len = 1;
        while len <= max_len && !layer.is_empty() {
            layer.sort_by(|x, y| self.name_key(x).cmp(&self.name_key(y)));
            let mut next = Vec::new();
            for p in &layer {
                for b in 0..self.arrows.len() {
                    if let Some(np) = self.then(p, &self.arrow_path(b)) {
                        next.push(np);
                    }
                }
            }
            out.append(&mut layer);
            layer = next;
            len += 1;
        }
        out
    }

    fn name_key<'a>(&'a self, p: &Path) -> Vec<&'a str> {
        p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect()
    }

    /// Arrows right to left, `*`-separated unless all names are one character.
    pub fn path_name(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("1_{}", self.vertices[p.src]);
        }
        let names: Vec<&str> = p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join("*")
        }
    }

    /// File syntax: `a` or `(d*c)`.
    pub fn path_expr(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("1_{}", self.vertices[p.src]);
        }
        let names: Vec<&str> = p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
        if names.len() == 1 {
            names[0].to_string()
        } else {
            format!("({})", names.join("*"))
        }
    }

    /// Gentleness conditions (1)-(3); condition (4) holds by construction.
    pub fn check_gentle(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            let outs = self.arrows.iter().filter(|a| a.src == v).count();
            let ins = self.arrows.iter().filter(|a| a.tgt == v).count();
            if outs > 2 {
                out.push(Violation {
                    condition: 1,
                    witness: format!("vertex {}", self.vertices[v]),
                    detail: format!("{outs} outgoing arrows"),
                });
            }
            if ins > 2 {
                out.push(Violation {
                    condition: 1,
                    witness: format!("vertex {}", self.vertices[v]),
                    detail: format!("{ins} incoming arrows"),
                });
            }
        }
        for (a, ar) in self.arrows.iter().enumerate() {
            let succ: Vec<usize> = (0..self.arrows.len()).filter(|&b| self.arrows[b].src == ar.tgt).collect();
            let pred: Vec<usize> = (0..self.arrows.len()).filter(|&c| self.arrows[c].tgt == ar.src).collect();
            let names = |v: &[usize]| v.iter().map(|&x| self.arrows[x].name.clone()).collect::<Vec<_>>().join(",");
            let free_s: Vec<usize> = succ.iter().copied().filter(|&b| !self.is_rel(a, b)).collect();
            let free_p: Vec<usize> = pred.iter().copied().filter(|&c| !self.is_rel(c, a)).collect();
            let zero_s: Vec<usize> = succ.iter().copied().filter(|&b| self.is_rel(a, b)).collect();
            let zero_p: Vec<usize> = pred.iter().copied().filter(|&c| self.is_rel(c, a)).collect();
            let w = format!("arrow {}", ar.name);
            if free_s.len() > 1 {
                out.push(Violation { condition: 2, witness: w.clone(), detail: format!("nonzero successors {}", names(&free_s)) });
            }
            if free_p.len() > 1 {
                out.push(Violation { condition: 2, witness: w.clone(), detail: format!("nonzero predecessors {}", names(&free_p)) });
            }
            if zero_s.len() > 1 {
                out.push(Violation { condition: 3, witness: w.clone(), detail: format!("zero successors {}", names(&zero_s)) });
            }
            if zero_p.len() > 1 {
                out.push(Violation { condition: 3, witness: w, detail: format!("zero predecessors {}", names(&zero_p)) });
            }
        }
        out
    }

    /// Normalized text; declaration order is preserved.
    pub fn serialize(&self) -> String {
        let mut s = format!("quiver {}\n", self.name);
        for d in &self.decls {
            match d {
                Decl::Vertices(vs) => {
                    let names: Vec<&str> = vs.iter().map(|&v| self.vertices[v].as_str()).collect();
                    s += &format!("vertex {}\n", names.join(" "));
                }
                Decl::Arrow(a) => {
                    let ar = &self.arrows[*a];
                    s += &format!("arrow {} : {} -> {}\n", ar.name, self.vertices[ar.src], self.vertices[ar.tgt]);
                }
                Decl::Rel(i) => {
                    let (b, a) = self.relations[*i];
                    s += &format!("rel {}*{}\n", self.arrows[b].name, self.arrows[a].name);
                }
            }
        }
        s
    }

    /// Stable FNV-1a hash of the normalized text, used to tag reports.
    pub fn content_hash(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.serialize().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parse without checking gentleness.
pub fn parse_candidate(text: &str) -> Result<Quiver> {
    let mut q: Option<Quiver> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let syn = |msg: &str| Error::Syntax { line: line_no, msg: msg.to_string() };
        let (kw, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        if kw == "quiver" {
            if q.is_some() {
                return Err(syn("second `quiver` header"));
            }
            if !is_ident(rest) {
                return Err(syn("expected `quiver <name>`"));
            }
            q = Some(Quiver::empty(rest));
            continue;
        }
        let q = q.as_mut().ok_or_else(|| syn("missing `quiver <name>` header"))?;
        match kw {
            "vertex" => {
                let ids: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if ids.is_empty() || !ids.iter().all(|s| is_ident(s)) {
                    return Err(syn("expected `vertex <id> [<id> ...]`"));
                }
                q.add_vertices(&ids)?;
            }
            "arrow" => {
                let (name, ends) = rest.split_once(':').ok_or_else(|| syn("expected `arrow <name> : <src> -> <tgt>`"))?;
                let (s, t) = ends.split_once("->").ok_or_else(|| syn("expected `<src> -> <tgt>`"))?;
                let (name, s, t) = (name.trim(), s.trim(), t.trim());
                if !is_ident(name) || !is_ident(s) || !is_ident(t) {
                    return Err(syn("bad identifier in arrow declaration"));
                }
                q.add_arrow(name, s, t)?;
            }
            "rel" => {
                let parts: Vec<&str> = rest.split('*').map(str::trim).collect();
                if parts.len() != 2 || !parts.iter().all(|p| is_ident(p)) {
                    return Err(syn("relations must have the form `rel <b>*<a>`"));
                }
                q.add_relation(parts[0], parts[1])?;
            }
            _ => return Err(syn(&format!("unknown keyword `{kw}`"))),
        }
    }
    q.ok_or(Error::Syntax { line: 0, msg: "empty presentation".into() })
}

pub fn parse_presentation(text: &str) -> Result<Quiver> {
    let q = parse_candidate(text)?;
    let v = q.check_gentle();
    if v.is_empty() {
        Ok(q)
    } else {
        Err(Error::NotGentle(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: &str = "quiver A\nvertex 0 1 2 3 4\narrow a : 0 -> 1\narrow b : 1 -> 2\narrow c : 2 -> 0\n\
        arrow d : 0 -> 4\narrow e : 4 -> 3\narrow f : 3 -> 0\nrel b*a\nrel c*b\nrel a*c\nrel e*d\nrel f*e\nrel d*f\n";

    #[test]
    fn parses_algebra_a() {
        let q = parse_presentation(A).unwrap();
        assert_eq!((q.num_vertices(), q.num_arrows(), q.relations().len()), (5, 6, 6));
        assert_eq!(q.serialize(), A);
    }

    #[test]
    fn composition() {
        let q = parse_presentation(A).unwrap();
        let p = |n: &str| q.arrow_path(q.arrow_id(n).unwrap());
        assert_eq!(q.path_name(&q.compose_paths(&p("d"), &p("c")).unwrap().unwrap()), "dc");
        assert_eq!(q.compose_paths(&p("b"), &p("a")).unwrap(), None);
        assert!(q.compose_paths(&p("a"), &p("a")).is_err());
        let one = Path::trivial(q.vertex_id("0").unwrap());
        assert_eq!(q.compose_paths(&p("a"), &one).unwrap(), Some(p("a")));
    }

    #[test]
    fn third_arrow_breaks_condition_one() {
        let text = format!("{A}arrow g : 0 -> 2\n");
        match parse_presentation(&text) {
            Err(Error::NotGentle(v)) => assert!(v.iter().any(|x| x.condition == 1 && x.witness == "vertex 0")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_algebra() {
        let q = parse_presentation("quiver k\nvertex x\n").unwrap();
        assert_eq!(q.enumerate_paths(5).len(), 1);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_candidate("quiver A\nvertex 0\nrel a*b*c\n"), Err(Error::Syntax { line: 3, .. })));
        assert!(matches!(parse_candidate("vertex 0\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_candidate("quiver A\narrow a : 0 -> 1\n"), Err(Error::UnknownVertex(_))));
    }
}
