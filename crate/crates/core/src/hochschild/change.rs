use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use super::bar::{BarComplex, BarWord};
use super::{ChainMap, HochschildError};
use crate::graded_ainf::{
    verify_bimodule, verify_functor, BasisId, BimoduleData, FunctorData, LinComb, ModuleKind, ObjectId, DEFAULT_BOUND,
};

/// The pulled-back bimodule `Ñ` and the tautological map `τ : CC_*(B, Ñ) → CC_*(E, N)`.
#[derive(Clone, Debug)]
pub struct ChangeOfRings {
    pub pulled_back: Arc<BimoduleData>,
    pub source: BarComplex,
    pub target: BarComplex,
    pub tau: ChainMap,
}

impl ChangeOfRings {
    /// Nonzero entries of `b∘τ − τ∘b`.
    pub fn residual_entries(&self) -> usize {
        self.tau
            .residual(self.source.complex(), self.target.complex(), false)
            .values()
            .map(|cols| cols.iter().map(|c| c.len()).sum::<usize>())
            .sum()
    }
}

/// `Σ Φ(block_1) ⊗ … ⊗ Φ(block_k)` over all splittings of a written-order word into
/// consecutive nonempty blocks. The empty word maps to the empty word.
fn expand(phi: &FunctorData, word: &[BasisId]) -> LinComb<Vec<BasisId>> {
    let mut out = LinComb::new();
    if word.is_empty() {
        out.add_term(Vec::new(), &crate::novikov::NovikovScalar::one());
        return out;
    }
    for k in 1..=word.len().min(phi.max_arity()) {
        let Some(head) = phi.apply(&word[..k]) else { continue };
        let tail = expand(phi, &word[k..]);
        for (&h, c) in head.iter() {
            for (t, d) in tail.iter() {
                let mut v = Vec::with_capacity(t.len() + 1);
                v.push(h);
                v.extend_from_slice(t);
                out.add_term(v, &c.mul_ref(d));
            }
        }
    }
    out
}

fn pull_back(phi: &FunctorData, n: &BimoduleData) -> Result<(BimoduleData, BTreeMap<usize, usize>), HochschildError> {
    let b = phi.source();
    let map = phi.object_map();
    let injective = map.iter().collect::<HashSet<_>>().len() == map.len();
    let mut builder = BimoduleData::builder(b.clone(), ModuleKind::Bimodule);
    // (left, right, element of N) ↦ element of Ñ, and Ñ ↦ N.
    let mut ids: BTreeMap<(ObjectId, ObjectId, usize), usize> = BTreeMap::new();
    let mut down = BTreeMap::new();
    for x in 0..b.objects().len() {
        for y in 0..b.objects().len() {
            for (k, e) in n.elements().iter().enumerate() {
                if e.left == Some(map[x]) && e.right == Some(map[y]) {
                    let label = if injective { e.label.clone() } else { format!("{}@{},{}", e.label, b.objects()[x], b.objects()[y]) };
                    let id = builder.element(&label, e.degree, Some(x), Some(y));
                    ids.insert((x, y, k), id);
                    down.insert(id, k);
                }
            }
        }
    }
    let (max_r, max_s) = n.entries().iter().fold((0, 0), |(r, s), (k, _, _)| (r.max(k.xs.len()), s.max(k.ys.len())));
    let arity = phi.max_arity().max(1);
    let words: Vec<Vec<Vec<BasisId>>> = (0..=arity * max_r.max(max_s)).map(|len| b.composable_words(len)).collect();
    let elements: Vec<_> = ids.iter().map(|(&(x, y, k), &id)| (x, y, k, id)).collect();
    for &(x, y, k, id) in &elements {
        for xs in words.iter().take(arity * max_r + 1).flatten() {
            if xs.last().is_some_and(|&l| b.element(l).src != x) {
                continue;
            }
            let left = xs.first().map(|&f| b.element(f).dst).unwrap_or(x);
            let ex = expand(phi, xs);
            if ex.is_zero() {
                continue;
            }
            for ys in words.iter().take(arity * max_s + 1).flatten() {
                if ys.first().is_some_and(|&f| b.element(f).dst != y) {
                    continue;
                }
                let right = ys.last().map(|&l| b.element(l).src).unwrap_or(y);
                let ey = expand(phi, ys);
                for (ex_w, cx) in ex.iter() {
                    for (ey_w, cy) in ey.iter() {
                        let Some(v) = n.mu(ex_w, k, ey_w) else { continue };
                        let c = cx.mul_ref(cy);
                        for (&o, d) in v.iter() {
                            let target = ids.get(&(left, right, o)).ok_or_else(|| {
                                HochschildError::MalformedInput("output of N does not lie over the image objects".into())
                            })?;
                            builder.mu(xs, id, ys, *target, c.mul_ref(d));
                        }
                    }
                }
            }
        }
    }
    Ok((builder.build()?, down))
}

/// Turns an `E`-bimodule `N` into a `B`-bimodule along `Φ : B → E` and builds `τ`.
///
/// Both inputs are verified first (up to [`DEFAULT_BOUND`] letters); a failure is reported as
/// [`HochschildError::MalformedInput`].
pub fn change_of_rings(phi: &FunctorData, n: Arc<BimoduleData>, length_bound: usize) -> Result<ChangeOfRings, HochschildError> {
    if !crate::graded_ainf::same_base(phi.target(), n.base()) {
        return Err(HochschildError::MalformedInput("N is not a bimodule over the target of Φ".into()));
    }
    let fv = verify_functor(phi, DEFAULT_BOUND)?;
    if !fv.ok {
        return Err(HochschildError::MalformedInput(format!("Φ violates the functor equations on {} tuples", fv.violations.len())));
    }
    let nv = verify_bimodule(&n, DEFAULT_BOUND)?;
    if !nv.ok {
        return Err(HochschildError::MalformedInput(format!("N violates the bimodule equations on {} tuples", nv.violations.len())));
    }
    let (tilde, down) = pull_back(phi, &n)?;
    let tilde = Arc::new(tilde);
    let source = BarComplex::new(tilde.clone(), length_bound)?;
    let target = BarComplex::new(n, length_bound)?;
    let tau = source.indexed().map_to(target.indexed(), 0, |w| {
        let mut out = LinComb::new();
        for (xs, c) in expand(phi, &w.xs).iter() {
            out.add_term(BarWord { m: down[&w.m], xs: xs.clone() }, c);
        }
        Ok(out)
    })?;
    Ok(ChangeOfRings { pulled_back: tilde, source, target, tau })
}
