use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::complex::Indexed;
use super::{ChainComplex, ChainMap, HochschildError};
use crate::graded_ainf::signs::{is_odd, reduced, sigma0};
use crate::graded_ainf::{BasisId, BimoduleData, BimoduleMorphism, LinComb, ModuleKind, SignLedger};

/// Default word-length truncation of bar complexes.
pub const DEFAULT_LENGTH_BOUND: usize = 5;

/// Generator `m ⊗ x_{n-1} ⊗ … ⊗ x_0`; `xs` is in written order, so `xs[0] = x_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarWord {
    pub m: usize,
    pub xs: Vec<BasisId>,
}

impl BarWord {
    pub fn new(m: usize, xs: &[BasisId]) -> Self {
        BarWord { m, xs: xs.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `deg(m) + σ_0^{n-1}`.
    pub fn degree(&self, module: &BimoduleData) -> i64 {
        let a = module.base();
        module.degree(self.m) + self.xs.iter().map(|&x| a.reduced_degree(x)).sum::<i64>()
    }

    pub fn label(&self, module: &BimoduleData) -> String {
        let mut parts = vec![module.label(self.m).to_string()];
        parts.extend(self.xs.iter().map(|&x| module.base().label(x).to_string()));
        parts.join("⊗")
    }

    /// Whether the word is a generator of the cyclic bar complex of `module`.
    pub fn is_well_formed(&self, module: &BimoduleData) -> bool {
        let a = module.base();
        let e = match module.elements().get(self.m) {
            Some(e) => e,
            None => return false,
        };
        let (Some(left), Some(right)) = (e.left, e.right) else { return false };
        if self.xs.iter().any(|&x| x >= a.basis().len()) || !a.composable(&self.xs) {
            return false;
        }
        match (self.xs.first(), self.xs.last()) {
            (Some(&top), Some(&bottom)) => a.element(top).dst == right && a.element(bottom).src == left,
            _ => left == right,
        }
    }
}

/// Unreduced degrees of `x_0, …, x_{n-1}`.
fn paper_degrees(module: &BimoduleData, w: &BarWord) -> Vec<i64> {
    w.xs.iter().rev().map(|&x| module.base().degree(x)).collect()
}

/// The bar differential `b` on one generator.
pub fn bar_differential(module: &BimoduleData, w: &BarWord) -> Result<LinComb<BarWord>, HochschildError> {
    if module.kind() != ModuleKind::Bimodule || !w.is_well_formed(module) {
        return Err(HochschildError::MalformedGenerator(format!("{w:?}")));
    }
    let a = module.base();
    let n = w.len();
    let degs = paper_degrees(module, w);
    let dm = module.degree(w.m);
    let mut out = LinComb::new();
    // μ_B on the block x_r, …, x_s, written positions n-1-r ..= n-1-s.
    for s in 0..n {
        let sign = is_odd(if s == 0 { 0 } else { sigma0(&degs, 0, s - 1) });
        for r in s..n {
            let (lo, hi) = (n - 1 - r, n - 1 - s);
            if let Some(v) = a.mu(&w.xs[lo..=hi]) {
                for (&o, c) in v.iter() {
                    let mut xs = w.xs[..lo].to_vec();
                    xs.push(o);
                    xs.extend_from_slice(&w.xs[hi + 1..]);
                    out.add_signed(BarWord { m: w.m, xs }, c, sign);
                }
            }
        }
    }
    // μ_M^{s|n-r}(x_{s-1}, …, x_0, m, x_{n-1}, …, x_r) ⊗ x_{r-1} ⊗ … ⊗ x_s.
    for s in 0..=n {
        for r in s..=n {
            if let Some(v) = module.mu(&w.xs[n - s..], w.m, &w.xs[..n - r]) {
                let sign = is_odd(SignLedger::dagger(&degs, dm, s, r));
                let rest = w.xs[n - r..n - s].to_vec();
                for (&o, c) in v.iter() {
                    out.add_signed(BarWord { m: o, xs: rest.clone() }, c, sign);
                }
            }
        }
    }
    Ok(out)
}

/// Ranks and truncation bookkeeping of a bar complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarReport {
    pub length_bound: usize,
    /// Dimension of each total degree.
    pub dims: BTreeMap<i64, usize>,
    /// Homology rank of each total degree.
    pub ranks: BTreeMap<i64, usize>,
    /// Total degrees holding words of the top length; their ranks may change with the bound.
    pub slack_degrees: Vec<i64>,
    /// Homology ranks per word length, when `b` lowers length by exactly one.
    pub length_ranks: Option<BTreeMap<usize, usize>>,
}

/// `CC_*(B, M)` truncated at words of length `≤ length_bound`, graded by total degree.
#[derive(Clone, Debug)]
pub struct BarComplex {
    module: Arc<BimoduleData>,
    length_bound: usize,
    inner: Indexed<BarWord>,
}

impl BarComplex {
    pub fn new(module: Arc<BimoduleData>, length_bound: usize) -> Result<Self, HochschildError> {
        if module.kind() != ModuleKind::Bimodule {
            return Err(HochschildError::MalformedInput("cyclic bar complex needs a bimodule".into()));
        }
        let a = module.base().clone();
        let mut items = Vec::new();
        for n in 0..=length_bound {
            for xs in a.composable_words(n) {
                for m in 0..module.dim() {
                    let w = BarWord { m, xs: xs.clone() };
                    if w.is_well_formed(&module) {
                        items.push((w.clone(), w.degree(&module), w.label(&module)));
                    }
                }
            }
        }
        let inner = Indexed::assemble(items, |w| bar_differential(&module, w))?;
        Ok(BarComplex { module, length_bound, inner })
    }

    pub fn module(&self) -> &Arc<BimoduleData> {
        &self.module
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.inner.complex
    }

    /// Generators of total degree `k`, in basis order.
    pub fn words(&self, k: i64) -> &[BarWord] {
        self.inner.words.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn all_words(&self) -> impl Iterator<Item = &BarWord> + '_ {
        self.inner.words.values().flatten()
    }

    /// `(degree, position)` of a generator.
    pub fn position(&self, w: &BarWord) -> Option<(i64, usize)> {
        self.inner.index.get(w).copied()
    }

    pub(crate) fn indexed(&self) -> &Indexed<BarWord> {
        &self.inner
    }

    /// Total degrees containing a word of the top length.
    pub fn slack_degrees(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.all_words().filter(|w| w.len() == self.length_bound).map(|w| w.degree(&self.module)).collect();
        set.into_iter().collect()
    }

    /// The same generators graded by `-length`, if `b` lowers length by exactly one everywhere.
    pub fn length_graded(&self) -> Result<Option<ChainComplex>, HochschildError> {
        let mut items = Vec::new();
        for w in self.all_words() {
            items.push((w.clone(), -(w.len() as i64), w.label(&self.module)));
        }
        for w in self.all_words() {
            if bar_differential(&self.module, w)?.iter().any(|(v, _)| v.len() + 1 != w.len()) {
                return Ok(None);
            }
        }
        let module = self.module.clone();
        Ok(Some(Indexed::assemble(items, |w| bar_differential(&module, w))?.complex))
    }

    pub fn report(&self) -> Result<BarReport, HochschildError> {
        let c = self.complex();
        let length_ranks = self
            .length_graded()?
            .map(|lc| lc.homology_ranks().map(|r| r.into_iter().map(|(k, v)| ((-k) as usize, v)).collect()))
            .transpose()?;
        Ok(BarReport {
            length_bound: self.length_bound,
            dims: c.spaces().iter().map(|(k, v)| (*k, v.len())).collect(),
            ranks: c.homology_ranks()?,
            slack_degrees: self.slack_degrees(),
            length_ranks,
        })
    }
}

/// `CC_*(f)` together with the two bar complexes it connects.
#[derive(Clone, Debug)]
pub struct CcMap {
    pub source: BarComplex,
    pub target: BarComplex,
    pub map: ChainMap,
    /// `b∘CC(f) = (-1)^{deg f} CC(f)∘b`.
    pub negate: bool,
}

impl CcMap {
    /// Nonzero entries of the intertwining residual.
    pub fn residual_entries(&self) -> usize {
        self.map
            .residual(self.source.complex(), self.target.complex(), self.negate)
            .values()
            .map(|cols| cols.iter().map(|c| c.len()).sum::<usize>())
            .sum()
    }
}

/// `CC_*(f)(m ⊗ x_{n-1} ⊗ … ⊗ x_0) = Σ (-1)^⋄ f^{r|s}(x_{r-1}, …, x_0, m, x_{n-1}, …, x_{n-s}) ⊗ x_{n-s-1} ⊗ … ⊗ x_r`.
fn cc_apply(f: &BimoduleMorphism, w: &BarWord) -> LinComb<BarWord> {
    let src = f.source();
    let n = w.len();
    let degs = paper_degrees(src, w);
    let dm = src.degree(w.m);
    let mut out = LinComb::new();
    for r in 0..=n {
        for s in 0..=n - r {
            if let Some(v) = f.apply(&w.xs[n - r..], w.m, &w.xs[..s]) {
                let (head, tail, mid) = (span(&degs, 0, r), span(&degs, r, n), span(&degs, r, n - s));
                let sign = is_odd(head * (dm + tail) + f.degree() * mid);
                let rest = w.xs[s..n - r].to_vec();
                for (&o, c) in v.iter() {
                    out.add_signed(BarWord { m: o, xs: rest.clone() }, c, sign);
                }
            }
        }
    }
    out
}

/// The chain map induced by a verified bimodule morphism.
pub fn cc_of_morphism(f: &BimoduleMorphism, length_bound: usize) -> Result<CcMap, HochschildError> {
    let source = BarComplex::new(f.source().clone(), length_bound)?;
    let target = BarComplex::new(f.target().clone(), length_bound)?;
    let map = source.inner.map_to(&target.inner, f.degree(), |w| Ok(cc_apply(f, w)))?;
    let cc = CcMap { source, target, map, negate: is_odd(f.degree()) };
    let bad = cc.residual_entries();
    if bad > 0 {
        return Err(HochschildError::NotAChainMap { nonzero: bad });
    }
    Ok(cc)
}

/// `Σ_{i ≤ ℓ < j} ‖x_ℓ‖`.
fn span(degs: &[i64], i: usize, j: usize) -> i64 {
    degs[i..j].iter().map(|&d| reduced(d)).sum()
}
