use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::signs::is_odd;
use super::{AInfError, AInfStructure, BasisId, BimoduleData, BimoduleMorphism, FunctorData, LinComb, ModuleKind};
use crate::novikov::NovikovScalar;

/// Default bound on the total number of letters in a checked relation.
pub const DEFAULT_BOUND: usize = 6;

/// One failed relation instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub objects: Vec<String>,
    pub inputs: Vec<String>,
    pub residual: BTreeMap<String, NovikovScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of a bounded relation check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub relation: String,
    pub bound: usize,
    pub tuples_checked: usize,
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    fn new(relation: &str, bound: usize) -> Self {
        VerifyReport { relation: relation.into(), bound, tuples_checked: 0, ok: true, violations: Vec::new() }
    }

    fn push(&mut self, v: Violation) {
        self.ok = false;
        self.violations.push(v);
    }
}

fn weight(a: &AInfStructure, letters: &[BasisId]) -> i64 {
    letters.iter().map(|&x| a.reduced_degree(x)).sum()
}

fn cat(a: &[BasisId], mid: BasisId, b: &[BasisId]) -> Vec<BasisId> {
    let mut v = Vec::with_capacity(a.len() + b.len() + 1);
    v.extend_from_slice(a);
    v.push(mid);
    v.extend_from_slice(b);
    v
}

/// `Σ (-1)^{σ_1^{S-1}} μ(x_n, …, μ(x_R, …, x_S), …, x_1)` for a written-order word.
pub fn ainf_residual(a: &AInfStructure, word: &[BasisId]) -> LinComb<BasisId> {
    let n = word.len();
    let mut out = LinComb::new();
    for lo in 0..n {
        for hi in lo + 1..=n {
            let inner_len = hi - lo;
            if !a.has_arity(inner_len) || !a.has_arity(n - inner_len + 1) {
                continue;
            }
            let Some(inner) = a.mu(&word[lo..hi]) else { continue };
            let neg = is_odd(weight(a, &word[hi..]));
            for (y, c) in inner.iter() {
                if let Some(outer) = a.mu(&cat(&word[..lo], *y, &word[hi..])) {
                    for (z, d) in outer.iter() {
                        out.add_signed(*z, &c.mul_ref(d), neg);
                    }
                }
            }
        }
    }
    out
}

fn object_chain(a: &AInfStructure, word: &[BasisId]) -> Vec<String> {
    let Some(&first) = word.last() else { return vec![] };
    let mut chain = vec![a.objects()[a.element(first).src].clone()];
    for &x in word.iter().rev() {
        chain.push(a.objects()[a.element(x).dst].clone());
    }
    chain
}

/// Checks the A∞-relations on every composable word of length `≤ bound`.
pub fn verify_ainf(a: &AInfStructure, bound: usize) -> Result<VerifyReport, AInfError> {
    let mut report = VerifyReport::new("ainf", bound);
    for n in 1..=bound {
        for word in a.composable_words(n) {
            report.tuples_checked += 1;
            let res = ainf_residual(a, &word);
            if !res.is_zero() {
                report.push(Violation {
                    objects: object_chain(a, &word),
                    inputs: word.iter().map(|&x| a.label(x).to_string()).collect(),
                    residual: res.iter().map(|(k, v)| (a.label(*k).to_string(), v.clone())).collect(),
                    note: None,
                });
            }
        }
    }
    Ok(report)
}

type ModuleOp<'a> = &'a dyn Fn(&[BasisId], usize, &[BasisId]) -> Option<&'a LinComb<usize>>;

/// Accumulates the terms of a bimodule-type relation into `out`.
///
/// `inner` is applied to every block containing the module letter and `outer`
/// to the result; `inner_degree` is the degree of `inner` for the passing sign.
/// With `base_terms`, the `μ_B` blocks on either side are added with `outer`
/// as the surrounding operation.
#[allow(clippy::too_many_arguments)]
fn module_terms(
    base: &AInfStructure,
    module_degree: i64,
    xs: &[BasisId],
    m: usize,
    ys: &[BasisId],
    inner: ModuleOp<'_>,
    inner_degree: i64,
    outer: ModuleOp<'_>,
    base_terms: bool,
    negate: bool,
    out: &mut LinComb<usize>,
) {
    let (r, s) = (xs.len(), ys.len());
    let wy_total = weight(base, ys);
    if base_terms {
        for lo in 0..r {
            for hi in lo + 1..=r {
                let Some(inner_b) = base.mu(&xs[lo..hi]) else { continue };
                let neg = is_odd(weight(base, &xs[hi..]) + module_degree + wy_total);
                for (y, c) in inner_b.iter() {
                    if let Some(o) = outer(&cat(&xs[..lo], *y, &xs[hi..]), m, ys) {
                        for (z, d) in o.iter() {
                            out.add_signed(*z, &c.mul_ref(d), neg ^ negate);
                        }
                    }
                }
            }
        }
        for lo in 0..s {
            for hi in lo + 1..=s {
                let Some(inner_b) = base.mu(&ys[lo..hi]) else { continue };
                let neg = is_odd(weight(base, &ys[hi..]));
                for (y, c) in inner_b.iter() {
                    if let Some(o) = outer(xs, m, &cat(&ys[..lo], *y, &ys[hi..])) {
                        for (z, d) in o.iter() {
                            out.add_signed(*z, &c.mul_ref(d), neg ^ negate);
                        }
                    }
                }
            }
        }
    }
    for a in 0..=r {
        for c in 0..=s {
            let Some(inner_m) = inner(&xs[a..], m, &ys[..c]) else { continue };
            let neg = is_odd(inner_degree * weight(base, &ys[c..]));
            for (y, k) in inner_m.iter() {
                if let Some(o) = outer(&xs[..a], *y, &ys[c..]) {
                    for (z, d) in o.iter() {
                        out.add_signed(*z, &k.mul_ref(d), neg ^ negate);
                    }
                }
            }
        }
    }
}

/// Composable module inputs `(xs, m, ys)` with `r + 1 + s ≤ bound`.
pub fn module_words(m: &BimoduleData, bound: usize) -> Vec<(Vec<BasisId>, usize, Vec<BasisId>)> {
    let base = m.base();
    let words: Vec<Vec<Vec<BasisId>>> = (0..bound).map(|n| base.composable_words(n)).collect();
    let mut out = Vec::new();
    for el in 0..m.dim() {
        for total in 0..bound {
            for r in 0..=total {
                let s = total - r;
                match m.kind() {
                    ModuleKind::Left if s > 0 => continue,
                    ModuleKind::Right if r > 0 => continue,
                    _ => {}
                }
                for xs in &words[r] {
                    if r > 0 && !m.composable(xs, el, &[]) {
                        continue;
                    }
                    for ys in &words[s] {
                        if s > 0 && !m.composable(&[], el, ys) {
                            continue;
                        }
                        out.push((xs.clone(), el, ys.clone()));
                    }
                }
            }
        }
    }
    out
}

fn module_labels(m: &BimoduleData, xs: &[BasisId], el: usize, ys: &[BasisId]) -> Vec<String> {
    let base = m.base();
    xs.iter()
        .map(|&x| base.label(x).to_string())
        .chain(std::iter::once(format!("[{}]", m.label(el))))
        .chain(ys.iter().map(|&y| base.label(y).to_string()))
        .collect()
}

fn module_objects(m: &BimoduleData, xs: &[BasisId], el: usize, ys: &[BasisId]) -> Vec<String> {
    let base = m.base();
    let name = |o: Option<usize>| o.map_or("-".to_string(), |o| base.objects()[o].clone());
    let e = m.element(el);
    let mut left: Vec<String> = vec![name(e.left)];
    for &x in xs.iter().rev() {
        left.push(name(Some(base.element(x).dst)));
    }
    left.reverse();
    let mut right = vec![name(e.right)];
    for &y in ys {
        right.push(name(Some(base.element(y).src)));
    }
    left.push("|".into());
    left.extend(right);
    left
}

/// Residual of the bimodule relation at one input.
pub fn bimodule_residual(m: &BimoduleData, xs: &[BasisId], el: usize, ys: &[BasisId]) -> LinComb<usize> {
    let op = |a: &[BasisId], e: usize, b: &[BasisId]| m.mu(a, e, b);
    let mut out = LinComb::new();
    module_terms(m.base(), m.degree(el), xs, el, ys, &op, 1, &op, true, false, &mut out);
    out
}

/// Checks the bimodule (or one-sided module) relations up to `bound` letters.
pub fn verify_bimodule(m: &BimoduleData, bound: usize) -> Result<VerifyReport, AInfError> {
    let name = match m.kind() {
        ModuleKind::Bimodule => "bimodule",
        ModuleKind::Left => "left_module",
        ModuleKind::Right => "right_module",
    };
    let mut report = VerifyReport::new(name, bound);
    for (xs, el, ys) in module_words(m, bound) {
        report.tuples_checked += 1;
        let res = bimodule_residual(m, &xs, el, &ys);
        if !res.is_zero() {
            report.push(Violation {
                objects: module_objects(m, &xs, el, &ys),
                inputs: module_labels(m, &xs, el, &ys),
                residual: res.iter().map(|(k, v)| (m.label(*k).to_string(), v.clone())).collect(),
                note: None,
            });
        }
    }
    Ok(report)
}

/// Residual of the morphism relation `μ_N∘f − (-1)^{deg f} f∘μ` at one input.
pub fn morphism_residual(f: &BimoduleMorphism, xs: &[BasisId], el: usize, ys: &[BasisId]) -> LinComb<usize> {
    let src = f.source();
    let tgt = f.target();
    let fo = |a: &[BasisId], e: usize, b: &[BasisId]| f.apply(a, e, b);
    let mu_m = |a: &[BasisId], e: usize, b: &[BasisId]| src.mu(a, e, b);
    let mu_n = |a: &[BasisId], e: usize, b: &[BasisId]| tgt.mu(a, e, b);
    let mut out = LinComb::new();
    let d = f.degree();
    module_terms(src.base(), src.degree(el), xs, el, ys, &fo, d, &mu_n, false, false, &mut out);
    module_terms(src.base(), src.degree(el), xs, el, ys, &mu_m, 1, &fo, true, !is_odd(d), &mut out);
    out
}

/// Checks degree bookkeeping and the morphism relations up to `bound` letters.
pub fn verify_bimodule_morphism(f: &BimoduleMorphism, bound: usize) -> Result<VerifyReport, AInfError> {
    let src = f.source();
    let tgt = f.target();
    let base = src.base();
    let mut report = VerifyReport::new("bimodule_morphism", bound);
    for (k, o, c) in f.entries() {
        let cd = super::structure::coefficient_degree(base.grading(), &c).map_err(AInfError::MalformedStructure)?;
        let expected = weight(base, &k.xs) + src.degree(k.m) + weight(base, &k.ys) + f.degree();
        if tgt.degree(o) + cd != expected {
            report.push(Violation {
                objects: module_objects(src, &k.xs, k.m, &k.ys),
                inputs: module_labels(src, &k.xs, k.m, &k.ys),
                residual: BTreeMap::from([(tgt.label(o).to_string(), c.clone())]),
                note: Some(format!("entry has degree {} but deg(f) = {}", tgt.degree(o) + cd - expected + f.degree(), f.degree())),
            });
        }
    }
    for (xs, el, ys) in module_words(src, bound) {
        report.tuples_checked += 1;
        let res = morphism_residual(f, &xs, el, &ys);
        if !res.is_zero() {
            report.push(Violation {
                objects: module_objects(src, &xs, el, &ys),
                inputs: module_labels(src, &xs, el, &ys),
                residual: res.iter().map(|(k, v)| (tgt.label(*k).to_string(), v.clone())).collect(),
                note: None,
            });
        }
    }
    Ok(report)
}

/// `Σ μ_E(Φ(…), …, Φ(…)) − Σ (-1)^{σ_1^{s-1}} Φ(…, μ_B(…), …)` at one word.
pub fn functor_residual(phi: &FunctorData, word: &[BasisId]) -> LinComb<BasisId> {
    let b = phi.source();
    let e = phi.target();
    let mut out = LinComb::new();
    let mut blocks: Vec<&LinComb<BasisId>> = Vec::new();
    push_blocks(phi, e, word, 0, &mut blocks, &mut out);
    let n = word.len();
    for lo in 0..n {
        for hi in lo + 1..=n {
            let Some(inner) = b.mu(&word[lo..hi]) else { continue };
            let neg = is_odd(weight(b, &word[hi..]));
            for (y, c) in inner.iter() {
                if let Some(o) = phi.apply(&cat(&word[..lo], *y, &word[hi..])) {
                    for (z, d) in o.iter() {
                        out.add_signed(*z, &c.mul_ref(d), !neg);
                    }
                }
            }
        }
    }
    out
}

fn push_blocks<'a>(
    phi: &'a FunctorData,
    e: &AInfStructure,
    word: &[BasisId],
    pos: usize,
    blocks: &mut Vec<&'a LinComb<BasisId>>,
    out: &mut LinComb<BasisId>,
) {
    if pos == word.len() {
        if !e.has_arity(blocks.len()) {
            return;
        }
        let mut tuple = Vec::with_capacity(blocks.len());
        expand_blocks(e, blocks, &mut tuple, &NovikovScalar::one(), out);
        return;
    }
    for end in pos + 1..=word.len() {
        if let Some(v) = phi.apply(&word[pos..end]) {
            blocks.push(v);
            push_blocks(phi, e, word, end, blocks, out);
            blocks.pop();
        }
    }
}

fn expand_blocks(
    e: &AInfStructure,
    blocks: &[&LinComb<BasisId>],
    tuple: &mut Vec<BasisId>,
    coeff: &NovikovScalar,
    out: &mut LinComb<BasisId>,
) {
    if tuple.len() == blocks.len() {
        if let Some(o) = e.mu(tuple) {
            for (z, d) in o.iter() {
                out.add_term(*z, &coeff.mul_ref(d));
            }
        }
        return;
    }
    for (y, c) in blocks[tuple.len()].iter() {
        tuple.push(*y);
        expand_blocks(e, blocks, tuple, &coeff.mul_ref(c), out);
        tuple.pop();
    }
}

/// Checks the functor relations on every composable source word up to `bound` letters.
pub fn verify_functor(phi: &FunctorData, bound: usize) -> Result<VerifyReport, AInfError> {
    let b = phi.source();
    let e = phi.target();
    let mut report = VerifyReport::new("functor", bound);
    for n in 1..=bound {
        for word in b.composable_words(n) {
            report.tuples_checked += 1;
            let res = functor_residual(phi, &word);
            if !res.is_zero() {
                report.push(Violation {
                    objects: object_chain(b, &word),
                    inputs: word.iter().map(|&x| b.label(x).to_string()).collect(),
                    residual: res.iter().map(|(k, v)| (e.label(*k).to_string(), v.clone())).collect(),
                    note: None,
                });
            }
        }
    }
    Ok(report)
}
