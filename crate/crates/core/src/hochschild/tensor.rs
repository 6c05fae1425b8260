use std::sync::Arc;

use super::bar::{BarComplex, BarWord};
use super::complex::Indexed;
use super::{ChainComplex, ChainMap, HochschildError};
use crate::graded_ainf::signs::{is_odd, reduced};
use crate::graded_ainf::{verify_bimodule, BasisId, BimoduleData, LinComb, ModuleKind, DEFAULT_BOUND};

/// Generator `r ⊗ x_n ⊗ … ⊗ x_1 ⊗ l`; `xs` is in written order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord {
    pub r: usize,
    pub xs: Vec<BasisId>,
    pub l: usize,
}

/// `R ⊗_A L` truncated at `n ≤ length_bound` letters.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    right: Arc<BimoduleData>,
    left: Arc<BimoduleData>,
    length_bound: usize,
    inner: Indexed<TensorWord>,
}

impl TensorComplex {
    pub fn complex(&self) -> &ChainComplex {
        &self.inner.complex
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    pub fn right_module(&self) -> &Arc<BimoduleData> {
        &self.right
    }

    pub fn left_module(&self) -> &Arc<BimoduleData> {
        &self.left
    }

    pub fn words(&self, k: i64) -> &[TensorWord] {
        self.inner.words.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

fn well_formed(r_mod: &BimoduleData, l_mod: &BimoduleData, w: &TensorWord) -> bool {
    let a = r_mod.base();
    let (Some(y), Some(x)) = (r_mod.element(w.r).right, l_mod.element(w.l).left) else { return false };
    if !a.composable(&w.xs) {
        return false;
    }
    match (w.xs.first(), w.xs.last()) {
        (Some(&top), Some(&bottom)) => a.element(top).dst == y && a.element(bottom).src == x,
        _ => x == y,
    }
}

fn degree(r_mod: &BimoduleData, l_mod: &BimoduleData, w: &TensorWord) -> i64 {
    r_mod.degree(w.r) + w.xs.iter().map(|&x| r_mod.base().reduced_degree(x)).sum::<i64>() + l_mod.degree(w.l)
}

/// The three-sum differential of `R ⊗_A L`.
fn tensor_differential(r_mod: &BimoduleData, l_mod: &BimoduleData, w: &TensorWord) -> LinComb<TensorWord> {
    let a = r_mod.base();
    let n = w.xs.len();
    // σ_1^{j} over x_1..x_j, where x_j = xs[n - j].
    let sig = |j: usize| -> i64 { (1..=j).map(|i| reduced(a.degree(w.xs[n - i]))).sum() };
    let dl = l_mod.degree(w.l);
    let mut out = LinComb::new();
    // μ_R(r, x_n, …, x_R) ⊗ x_{R-1} ⊗ … ⊗ l for R = n+1, …, 1.
    for big_r in 1..=n + 1 {
        if let Some(v) = r_mod.mu(&[], w.r, &w.xs[..n + 1 - big_r]) {
            let sign = is_odd(dl + sig(big_r - 1));
            for (&o, c) in v.iter() {
                out.add_signed(TensorWord { r: o, xs: w.xs[n + 1 - big_r..].to_vec(), l: w.l }, c, sign);
            }
        }
    }
    // r ⊗ … ⊗ μ_A(x_R, …, x_S) ⊗ … ⊗ l.
    for big_s in 1..=n {
        let sign = is_odd(dl + sig(big_s - 1));
        for big_r in big_s..=n {
            let (lo, hi) = (n - big_r, n - big_s);
            if let Some(v) = a.mu(&w.xs[lo..=hi]) {
                for (&o, c) in v.iter() {
                    let mut xs = w.xs[..lo].to_vec();
                    xs.push(o);
                    xs.extend_from_slice(&w.xs[hi + 1..]);
                    out.add_signed(TensorWord { r: w.r, xs, l: w.l }, c, sign);
                }
            }
        }
    }
    // r ⊗ x_n ⊗ … ⊗ x_{S+1} ⊗ μ_L(x_S, …, x_1, l).
    for big_s in 0..=n {
        if let Some(v) = l_mod.mu(&w.xs[n - big_s..], w.l, &[]) {
            for (&o, c) in v.iter() {
                out.add_term(TensorWord { r: w.r, xs: w.xs[..n - big_s].to_vec(), l: o }, c);
            }
        }
    }
    out
}

fn check_one_sided(m: &BimoduleData, kind: ModuleKind) -> Result<(), HochschildError> {
    if m.kind() != kind {
        return Err(HochschildError::MalformedInput(format!("expected a {kind:?} module")));
    }
    let report = verify_bimodule(m, DEFAULT_BOUND)?;
    if !report.ok {
        return Err(HochschildError::MalformedInput(format!("{kind:?} module violates its equations on {} tuples", report.violations.len())));
    }
    Ok(())
}

/// `R ⊗_A L` with words of at most `length_bound` letters from `A`.
pub fn tensor_complex(r_mod: Arc<BimoduleData>, l_mod: Arc<BimoduleData>, length_bound: usize) -> Result<TensorComplex, HochschildError> {
    check_one_sided(&r_mod, ModuleKind::Right)?;
    check_one_sided(&l_mod, ModuleKind::Left)?;
    if !crate::graded_ainf::same_base(r_mod.base(), l_mod.base()) {
        return Err(HochschildError::MalformedInput("modules over different bases".into()));
    }
    let a = r_mod.base().clone();
    let mut items = Vec::new();
    for n in 0..=length_bound {
        for xs in a.composable_words(n) {
            for r in 0..r_mod.dim() {
                for l in 0..l_mod.dim() {
                    let w = TensorWord { r, xs: xs.clone(), l };
                    if well_formed(&r_mod, &l_mod, &w) {
                        let label = std::iter::once(r_mod.label(r))
                            .chain(xs.iter().map(|&x| a.label(x)))
                            .chain(std::iter::once(l_mod.label(l)))
                            .collect::<Vec<_>>()
                            .join("⊗");
                        items.push((w.clone(), degree(&r_mod, &l_mod, &w), label));
                    }
                }
            }
        }
    }
    let inner = Indexed::assemble(items, |w| Ok(tensor_differential(&r_mod, &l_mod, w)))?;
    Ok(TensorComplex { right: r_mod, left: l_mod, length_bound, inner })
}

/// Sign attached to the reordering `l⊗r ⊗ x… ↦ r ⊗ x… ⊗ l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReorderSign {
    /// `(-1)^{deg l·(deg r + σ)}`, the Koszul sign of moving `l` past `r` and the bar letters.
    Koszul,
    /// No sign at all.
    Plain,
}

/// `CC_*(A, L⊗R)`, `R ⊗_A L`, and the reordering map between them.
#[derive(Clone, Debug)]
pub struct ReorderIso {
    pub bimodule: Arc<BimoduleData>,
    pub bar: BarComplex,
    pub tensor: TensorComplex,
    pub map: ChainMap,
    /// Nonzero entries of `d∘F − F∘b`.
    pub residual_entries: usize,
}

impl ReorderIso {
    pub fn intertwines(&self) -> bool {
        self.residual_entries == 0
    }
}

/// The reordering isomorphism with its Koszul sign.
pub fn reorder_iso(l_mod: Arc<BimoduleData>, r_mod: Arc<BimoduleData>, length_bound: usize) -> Result<ReorderIso, HochschildError> {
    reorder_iso_with(l_mod, r_mod, length_bound, ReorderSign::Koszul)
}

/// The reordering map with a chosen sign rule; only [`ReorderSign::Koszul`] intertwines in general.
pub fn reorder_iso_with(
    l_mod: Arc<BimoduleData>,
    r_mod: Arc<BimoduleData>,
    length_bound: usize,
    rule: ReorderSign,
) -> Result<ReorderIso, HochschildError> {
    let tensor = tensor_complex(r_mod.clone(), l_mod.clone(), length_bound)?;
    let bimodule = Arc::new(BimoduleData::tensor(&l_mod, &r_mod)?);
    let bar = BarComplex::new(bimodule.clone(), length_bound)?;
    let nr = r_mod.dim();
    let a = r_mod.base().clone();
    let map = bar.indexed().map_to(&tensor.inner, 0, |w: &BarWord| {
        let (l, r) = (w.m / nr, w.m % nr);
        let sigma: i64 = w.xs.iter().map(|&x| a.reduced_degree(x)).sum();
        let negative = match rule {
            ReorderSign::Koszul => is_odd(l_mod.degree(l) * (r_mod.degree(r) + sigma)),
            ReorderSign::Plain => false,
        };
        let mut out = LinComb::new();
        out.add_signed(TensorWord { r, xs: w.xs.clone(), l }, &crate::novikov::NovikovScalar::one(), negative);
        Ok(out)
    })?;
    let residual_entries =
        map.residual(bar.complex(), tensor.complex(), false).values().map(|cols| cols.iter().map(|c| c.len()).sum::<usize>()).sum();
    Ok(ReorderIso { bimodule, bar, tensor, map, residual_entries })
}
