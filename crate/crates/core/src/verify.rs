//! Oracle checks of symbolic answers and the corpus sweep.
//!
//! With the `parallel` feature the sweep distributes pairs over rayon's pool;
//! without it the same loop runs sequentially. Results are merged in case order
//! either way, so reports are identical.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::complex::Complex;
use crate::cone::{cone, ConeSummand};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hom::{standard_basis, BasisMap};
use crate::oracle::{canonical_keys, decompose, is_isomorphic, minimize, HomSpace};
use crate::words::Object;

/// Outcome of checking one cone against the oracle.
#[derive(Clone, Debug)]
pub struct ConeCheck<F: Field> {
    pub symbolic: Vec<ConeSummand<F>>,
    pub oracle: Option<Vec<Object<F>>>,
    pub isomorphic: bool,
}

/// Direct sum of the complexes of the nonzero summands.
pub fn build_sum<F: Field>(alg: &Algebra, v: &[ConeSummand<F>]) -> Complex<F> {
    let parts: Vec<Complex<F>> = v.iter().filter_map(|c| c.object()).map(|o| Complex::build(alg, &o)).collect();
    Complex::direct_sum(&parts)
}

/// Minimized literal cone of the representative.
pub fn oracle_cone<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>, m: &BasisMap<F>) -> Result<Complex<F>> {
    let sc = Complex::build(alg, sigma);
    let tc = Complex::build(alg, tau);
    let mc = sc.mapping_cone(alg, &tc, &m.rep)?;
    Ok(minimize(alg, &mc))
}

/// Symbolic cone versus the minimized literal cone. Matching decompositions
/// settle the question; otherwise the isomorphism test decides.
pub fn check_cone<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>, m: &BasisMap<F>, seed: u64) -> Result<ConeCheck<F>> {
    let symbolic = cone(alg, sigma, tau, m)?;
    let min = oracle_cone(alg, sigma, tau, m)?;
    let oracle = decompose(alg, &min).ok();
    let sym_objs: Vec<Object<F>> = symbolic.iter().filter_map(|c| c.object()).collect();
    let q = &alg.quiver;
    let same = oracle.as_ref().is_some_and(|o| canonical_keys(q, o) == canonical_keys(q, &sym_objs));
    let isomorphic = same || is_isomorphic(alg, &min, &build_sum(alg, &symbolic), seed);
    Ok(ConeCheck { symbolic, oracle, isomorphic })
}

/// Basis size against the oracle's Hom dimension, plus linear independence of
/// the representatives modulo homotopy.
pub fn check_basis<F: Field>(alg: &Algebra, sigma: &Object<F>, tau: &Object<F>, basis: &[BasisMap<F>]) -> (usize, usize, usize) {
    let hs = HomSpace::new(alg, &Complex::build(alg, sigma), &Complex::build(alg, tau));
    let reps: Vec<_> = basis.iter().map(|m| m.rep.clone()).collect();
    (basis.len(), hs.dimension(), hs.quotient_rank(&reps))
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Verdict {
    pub case_id: String,
    pub algebra: String,
    pub sigma: String,
    pub tau: String,
    pub shift: i32,
    pub kind: String,
    pub symbolic: Vec<String>,
    pub oracle: Vec<String>,
    pub isomorphic: bool,
    pub error: Option<String>,
    pub micros: u128,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CountVerdict {
    pub case_id: String,
    pub basis: usize,
    pub hom_dim: usize,
    pub independent: usize,
    pub error: Option<String>,
}

impl CountVerdict {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.basis == self.hom_dim && self.independent == self.basis
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PairReport {
    pub counts: Vec<CountVerdict>,
    pub cones: Vec<Verdict>,
}

/// Every shift `n` with `|n| <= window` such that some vertex sits in the same
/// degree on both sides after shifting... or could be reached by a path.
fn relevant_shifts<F: Field>(sigma: &Object<F>, tau: &Object<F>, window: i32) -> Vec<i32> {
    let sd = sigma.degrees();
    let td = tau.degrees();
    let (smin, smax) = (*sd.iter().min().unwrap(), *sd.iter().max().unwrap());
    let (tmin, tmax) = (*td.iter().min().unwrap(), *td.iter().max().unwrap());
    // τ.shift(n) has degrees d - n; need an overlap with σ's range, allowing
    // for the quasi-graph maps which compare against one degree higher.
    (-window..=window).filter(|&n| tmin - n <= smax + 1 && tmax - n >= smin - 1).collect()
}

/// All checks for one pair over the shift window.
pub fn sweep_pair<F: Field>(alg: &Algebra, name: &str, sigma: &Object<F>, tau: &Object<F>, window: i32, seed: u64) -> PairReport {
    let q = &alg.quiver;
    let mut rep = PairReport::default();
    for shift in relevant_shifts(sigma, tau, window) {
        let t = tau.shift(shift);
        let id = format!("{name}|{}|{}|{shift}", sigma.to_expr(q), tau.to_expr(q));
        let basis = match standard_basis(alg, sigma, &t) {
            Ok(b) => b,
            Err(e) => {
                rep.counts.push(CountVerdict { case_id: id, basis: 0, hom_dim: 0, independent: 0, error: Some(e.to_string()) });
                continue;
            }
        };
        let (b, h, r) = check_basis(alg, sigma, &t, &basis);
        if b == 0 && h == 0 {
            continue;
        }
        rep.counts.push(CountVerdict { case_id: id.clone(), basis: b, hom_dim: h, independent: r, error: None });
        for (k, m) in basis.iter().enumerate() {
            let start = Instant::now();
            let res = check_cone(alg, sigma, &t, m, seed);
            let micros = start.elapsed().as_micros();
            if matches!(res, Err(Error::HigherMultiplicity(_))) {
                // out of scope: only check that nothing cancels in the literal cone
                let slots = oracle_cone(alg, sigma, &t, m).map(|c| c.slots.len()).unwrap_or(0);
                let n = sigma.degrees().len() + t.degrees().len();
                rep.cones.push(Verdict {
                    case_id: format!("{id}|{k}"),
                    algebra: name.to_string(),
                    sigma: sigma.to_expr(q),
                    tau: t.to_expr(q),
                    shift,
                    kind: "self-extension".into(),
                    symbolic: Vec::new(),
                    oracle: Vec::new(),
                    isomorphic: slots == n,
                    error: None,
                    micros: start.elapsed().as_micros(),
                });
                continue;
            }
            let (symbolic, oracle, isomorphic, error) = match res {
                Ok(c) => (
                    c.symbolic.iter().map(|x| x.expr(q)).collect(),
                    c.oracle.map(|o| o.iter().map(|x| x.canonical().to_expr(q)).collect()).unwrap_or_default(),
                    c.isomorphic,
                    None,
                ),
                Err(e) => (Vec::new(), Vec::new(), false, Some(e.to_string())),
            };
            rep.cones.push(Verdict {
                case_id: format!("{id}|{k}"),
                algebra: name.to_string(),
                sigma: sigma.to_expr(q),
                tau: t.to_expr(q),
                shift,
                kind: m.kind.name().to_string(),
                symbolic,
                oracle,
                isomorphic,
                error,
                micros,
            });
        }
    }
    rep
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pairs: usize,
    pub count_checks: usize,
    pub count_failures: Vec<CountVerdict>,
    pub cones: usize,
    pub cone_failures: Vec<Verdict>,
    pub by_kind: std::collections::BTreeMap<String, usize>,
    /// Every verdict in case order as (kind, pass), for comparing sweeps over
    /// different fields.
    #[serde(skip)]
    pub trace: Vec<(String, bool)>,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.count_failures.is_empty() && self.cone_failures.is_empty()
    }
    fn absorb(&mut self, r: PairReport) {
        self.pairs += 1;
        self.count_checks += r.counts.len();
        self.trace.extend(r.counts.iter().map(|c| (format!("count {}/{}", c.basis, c.hom_dim), c.ok())));
        self.trace.extend(r.cones.iter().map(|v| (v.kind.clone(), v.isomorphic && v.error.is_none())));
        self.count_failures.extend(r.counts.into_iter().filter(|c| !c.ok()));
        self.cones += r.cones.len();
        for v in r.cones {
            *self.by_kind.entry(v.kind.clone()).or_default() += 1;
            if !v.isomorphic || v.error.is_some() {
                self.cone_failures.push(v);
            }
        }
    }
}

/// Runs `sweep_pair` over all ordered pairs of `objs`.
pub fn sweep<F: Field>(alg: &Algebra, name: &str, objs: &[Object<F>], window: i32, seed: u64) -> Summary {
    let pairs: Vec<(usize, usize)> = (0..objs.len()).flat_map(|i| (0..objs.len()).map(move |j| (i, j))).collect();
    let run = |&(i, j): &(usize, usize)| sweep_pair(alg, name, &objs[i], &objs[j], window, seed);
    #[cfg(feature = "parallel")]
    let reports: Vec<PairReport> = {
        use rayon::prelude::*;
        pairs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let reports: Vec<PairReport> = pairs.iter().map(run).collect();
    let mut s = Summary::default();
    for r in reports {
        s.absorb(r);
    }
    s
}

/// Sequential sweep regardless of features, for comparison.
pub fn sweep_sequential<F: Field>(alg: &Algebra, name: &str, objs: &[Object<F>], window: i32, seed: u64) -> Summary {
    let mut s = Summary::default();
    for a in objs {
        for b in objs {
            s.absorb(sweep_pair(alg, name, a, b, window, seed));
        }
    }
    s
}
