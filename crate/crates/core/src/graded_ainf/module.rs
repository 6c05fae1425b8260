use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::signs::reduced;
use super::structure::coefficient_degree;
use super::{AInfError, AInfStructure, BasisId, LinComb, ObjectId};
use crate::novikov::NovikovScalar;

/// Which actions a module carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    Bimodule,
    Left,
    Right,
}

/// Basis element `m ∈ M(left, right)`; one-sided modules leave the other side empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub label: String,
    pub degree: i64,
    pub left: Option<ObjectId>,
    pub right: Option<ObjectId>,
}

/// Inputs of `μ^{r|s}(x_r, …, x_1, m, y_1, …, y_s)`: `xs` in written order, `ys` as `y_1..y_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotKey {
    pub xs: Vec<BasisId>,
    pub m: usize,
    pub ys: Vec<BasisId>,
}

impl SlotKey {
    pub fn new(xs: &[BasisId], m: usize, ys: &[BasisId]) -> Self {
        SlotKey { xs: xs.to_vec(), m, ys: ys.to_vec() }
    }
}

/// An A∞-bimodule (or one-sided module) over a finite A∞-category.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleData {
    base: Arc<AInfStructure>,
    kind: ModuleKind,
    elements: Vec<ModuleElement>,
    labels: HashMap<String, usize>,
    mu: HashMap<SlotKey, LinComb<usize>>,
    shapes: HashSet<(usize, usize)>,
}

/// A left module is a bimodule whose right side is empty.
pub type LeftModule = BimoduleData;
/// A right module is a bimodule whose left side is empty.
pub type RightModule = BimoduleData;

impl BimoduleData {
    pub fn builder(base: Arc<AInfStructure>, kind: ModuleKind) -> BimoduleBuilder {
        BimoduleBuilder { base, kind, elements: Vec::new(), mu: BTreeMap::new(), problems: Vec::new() }
    }

    pub fn base(&self) -> &Arc<AInfStructure> {
        &self.base
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn element(&self, m: usize) -> &ModuleElement {
        &self.elements[m]
    }

    pub fn label(&self, m: usize) -> &str {
        &self.elements[m].label
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    pub fn degree(&self, m: usize) -> i64 {
        self.elements[m].degree
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// `μ^{r|s}(xs, m, ys)`.
    pub fn mu(&self, xs: &[BasisId], m: usize, ys: &[BasisId]) -> Option<&LinComb<usize>> {
        if !self.shapes.contains(&(xs.len(), ys.len())) {
            return None;
        }
        self.mu.get(&SlotKey::new(xs, m, ys))
    }

    pub fn entries(&self) -> Vec<(SlotKey, usize, NovikovScalar)> {
        let mut out: Vec<_> = self
            .mu
            .iter()
            .flat_map(|(k, v)| v.iter().map(move |(o, c)| (k.clone(), *o, c.clone())))
            .collect();
        out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        out
    }

    pub fn to_builder(&self) -> BimoduleBuilder {
        let mut b = Self::builder(self.base.clone(), self.kind);
        for e in &self.elements {
            b.element(&e.label, e.degree, e.left, e.right);
        }
        for (k, o, c) in self.entries() {
            b.mu(&k.xs, k.m, &k.ys, o, c);
        }
        b
    }

    /// Whether `(xs, m, ys)` is a composable input.
    pub fn composable(&self, xs: &[BasisId], m: usize, ys: &[BasisId]) -> bool {
        let a = &self.base;
        let e = &self.elements[m];
        if !xs.is_empty() && (e.left.is_none() || !a.composable(xs) || Some(a.element(*xs.last().unwrap()).src) != e.left) {
            return false;
        }
        if !ys.is_empty() {
            if e.right.is_none() || Some(a.element(ys[0]).dst) != e.right {
                return false;
            }
            if !ys.windows(2).all(|w| a.element(w[1]).dst == a.element(w[0]).src) {
                return false;
            }
        }
        true
    }

    /// The pair of objects `(X_r, Y_s)` an output of `μ^{r|s}(xs, m, ys)` lives over.
    pub fn output_objects(&self, xs: &[BasisId], m: usize, ys: &[BasisId]) -> (Option<ObjectId>, Option<ObjectId>) {
        let e = &self.elements[m];
        let left = xs.first().map(|&x| self.base.element(x).dst).or(e.left);
        let right = ys.last().map(|&y| self.base.element(y).src).or(e.right);
        (left, right)
    }

    /// Diagonal bimodule `M(X, Y) = B(Y, X)` with `μ^{r|s} = μ^{r+1+s}`.
    ///
    /// The module degree of `m` is its reduced degree `|m| - 1`.
    pub fn diagonal(base: Arc<AInfStructure>) -> BimoduleData {
        let mut b = Self::builder(base.clone(), ModuleKind::Bimodule);
        for h in base.basis() {
            b.element(&h.label, reduced(h.degree), Some(h.dst), Some(h.src));
        }
        for (inputs, out, c) in base.entries() {
            for p in 0..inputs.len() {
                b.mu(&inputs[..p], inputs[p], &inputs[p + 1..], out, c.clone());
            }
        }
        b.build().expect("diagonal of a well-formed structure is well formed")
    }

    /// Left Yoneda module `hom(X, -)` with `μ^{r|}(xs, l) = μ^{r+1}(xs, l)`.
    pub fn yoneda_left(base: Arc<AInfStructure>, x: ObjectId) -> LeftModule {
        let mut b = Self::builder(base.clone(), ModuleKind::Left);
        let ids: Vec<BasisId> = (0..base.basis().len()).filter(|&i| base.element(i).src == x).collect();
        let local: HashMap<BasisId, usize> = ids.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        for &i in &ids {
            let h = base.element(i);
            b.element(&h.label, reduced(h.degree), Some(h.dst), None);
        }
        for (inputs, out, c) in base.entries() {
            let last = *inputs.last().unwrap();
            if let (Some(&l), Some(&o)) = (local.get(&last), local.get(&out)) {
                b.mu(&inputs[..inputs.len() - 1], l, &[], o, c);
            }
        }
        b.build().expect("Yoneda module of a well-formed structure is well formed")
    }

    /// Right Yoneda module `hom(-, X)` with `μ^{|s}(r, ys) = μ^{1+s}(r, ys)`.
    pub fn yoneda_right(base: Arc<AInfStructure>, x: ObjectId) -> RightModule {
        let mut b = Self::builder(base.clone(), ModuleKind::Right);
        let ids: Vec<BasisId> = (0..base.basis().len()).filter(|&i| base.element(i).dst == x).collect();
        let local: HashMap<BasisId, usize> = ids.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        for &i in &ids {
            let h = base.element(i);
            b.element(&h.label, reduced(h.degree), None, Some(h.src));
        }
        for (inputs, out, c) in base.entries() {
            if let (Some(&r), Some(&o)) = (local.get(&inputs[0]), local.get(&out)) {
                b.mu(&[], r, &inputs[1..], o, c);
            }
        }
        b.build().expect("Yoneda module of a well-formed structure is well formed")
    }

    /// Bimodule `L ⊗ R` of a left module `L` and a right module `R`.
    ///
    /// `μ^{0|s}(l⊗r, ys) = l ⊗ μ_R(r, ys)`, `μ^{r|0}(xs, l⊗r) = (-1)^{|r|} μ_L(xs, l) ⊗ r`,
    /// and `μ^{r|s} = 0` when both `r` and `s` are positive. Element `i·dim R + j` is `l_i ⊗ r_j`.
    pub fn tensor(l: &LeftModule, r: &RightModule) -> Result<BimoduleData, AInfError> {
        if l.kind != ModuleKind::Left || r.kind != ModuleKind::Right {
            return Err(AInfError::MalformedStructure("tensor needs a left and a right module".into()));
        }
        if !same_base(&l.base, &r.base) {
            return Err(AInfError::MalformedStructure("modules over different bases".into()));
        }
        let nr = r.dim();
        let mut b = Self::builder(l.base.clone(), ModuleKind::Bimodule);
        for el in &l.elements {
            for er in &r.elements {
                b.element(&format!("{}⊗{}", el.label, er.label), el.degree + er.degree, el.left, er.right);
            }
        }
        for (k, o, c) in r.entries() {
            for i in 0..l.dim() {
                b.mu(&[], i * nr + k.m, &k.ys, i * nr + o, c.clone());
            }
        }
        for (k, o, c) in l.entries() {
            for j in 0..nr {
                let c = if r.degree(j).rem_euclid(2) == 1 { c.neg_ref() } else { c.clone() };
                b.mu(&k.xs, k.m * nr + j, &[], o * nr + j, c);
            }
        }
        b.build()
    }
}

pub(crate) fn same_base(a: &Arc<AInfStructure>, b: &Arc<AInfStructure>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug)]
pub struct BimoduleBuilder {
    base: Arc<AInfStructure>,
    kind: ModuleKind,
    elements: Vec<ModuleElement>,
    mu: BTreeMap<SlotKey, LinComb<usize>>,
    problems: Vec<String>,
}

impl BimoduleBuilder {
    pub fn element(&mut self, label: &str, degree: i64, left: Option<ObjectId>, right: Option<ObjectId>) -> usize {
        if self.elements.iter().any(|e| e.label == label) {
            self.problems.push(format!("duplicate module label {label}"));
        }
        self.elements.push(ModuleElement { label: label.to_string(), degree, left, right });
        self.elements.len() - 1
    }

    pub fn mu(&mut self, xs: &[BasisId], m: usize, ys: &[BasisId], out: usize, coeff: NovikovScalar) -> &mut Self {
        self.mu.entry(SlotKey::new(xs, m, ys)).or_default().add_term(out, &coeff);
        self
    }

    pub fn set_mu(&mut self, xs: &[BasisId], m: usize, ys: &[BasisId], out: usize, coeff: NovikovScalar) -> &mut Self {
        let entry = self.mu.entry(SlotKey::new(xs, m, ys)).or_default();
        let mut fresh: LinComb<usize> = entry.iter().filter(|(o, _)| **o != out).map(|(o, c)| (*o, c.clone())).collect();
        fresh.add_term(out, &coeff);
        *entry = fresh;
        self
    }

    pub fn build(&self) -> Result<BimoduleData, AInfError> {
        let malformed = |msg: String| AInfError::MalformedStructure(msg);
        if let Some(p) = self.problems.first() {
            return Err(malformed(p.clone()));
        }
        let n_obj = self.base.objects().len();
        for e in &self.elements {
            let (need_l, need_r) = match self.kind {
                ModuleKind::Bimodule => (true, true),
                ModuleKind::Left => (true, false),
                ModuleKind::Right => (false, true),
            };
            if e.left.is_some() != need_l || e.right.is_some() != need_r {
                return Err(malformed(format!("module element {} has the wrong sides for {:?}", e.label, self.kind)));
            }
            if e.left.is_some_and(|o| o >= n_obj) || e.right.is_some_and(|o| o >= n_obj) {
                return Err(malformed(format!("module element {} refers to a missing object", e.label)));
            }
        }
        let labels = self.elements.iter().enumerate().map(|(i, e)| (e.label.clone(), i)).collect();
        let mut data = BimoduleData {
            base: self.base.clone(),
            kind: self.kind,
            elements: self.elements.clone(),
            labels,
            mu: HashMap::new(),
            shapes: HashSet::new(),
        };
        for (k, out) in &self.mu {
            if out.is_zero() {
                continue;
            }
            if k.m >= data.elements.len() || k.xs.iter().chain(&k.ys).any(|&x| x >= self.base.basis().len()) {
                return Err(malformed("module entry refers to a missing element".into()));
            }
            match self.kind {
                ModuleKind::Left if !k.ys.is_empty() => return Err(malformed("left module entry with right inputs".into())),
                ModuleKind::Right if !k.xs.is_empty() => return Err(malformed("right module entry with left inputs".into())),
                _ => {}
            }
            if !data.composable(&k.xs, k.m, &k.ys) {
                return Err(malformed(format!("module entry at {} is not composable", data.label(k.m))));
            }
            let target = data.output_objects(&k.xs, k.m, &k.ys);
            let in_deg = k.xs.iter().chain(&k.ys).map(|&x| self.base.reduced_degree(x)).sum::<i64>() + data.degree(k.m) + 1;
            for (&o, c) in out.iter() {
                if o >= data.elements.len() {
                    return Err(malformed("module output refers to a missing element".into()));
                }
                let oe = &data.elements[o];
                if (oe.left, oe.right) != target {
                    return Err(malformed(format!("module output {} lands over the wrong objects", oe.label)));
                }
                let cd = coefficient_degree(self.base.grading(), c).map_err(malformed)?;
                if oe.degree + cd != in_deg {
                    return Err(malformed(format!("module entry → {} violates degree bookkeeping", oe.label)));
                }
            }
            data.shapes.insert((k.xs.len(), k.ys.len()));
            data.mu.insert(k.clone(), out.clone());
        }
        Ok(data)
    }
}
