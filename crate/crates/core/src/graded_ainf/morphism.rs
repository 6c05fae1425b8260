use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::module::same_base;
use super::structure::coefficient_degree;
use super::{AInfError, AInfStructure, BasisId, BimoduleData, LinComb, ObjectId, SlotKey};
use crate::novikov::NovikovScalar;

/// A bimodule morphism `f: M → N` of degree `deg(f)` given by sparse `f^{r|s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleMorphism {
    source: Arc<BimoduleData>,
    target: Arc<BimoduleData>,
    degree: i64,
    entries: HashMap<SlotKey, LinComb<usize>>,
    shapes: HashSet<(usize, usize)>,
}

impl BimoduleMorphism {
    /// Structural checks only; degree consistency is left to the verifier.
    pub fn new(source: Arc<BimoduleData>, target: Arc<BimoduleData>, degree: i64) -> Result<Self, AInfError> {
        if !same_base(source.base(), target.base()) {
            return Err(AInfError::MalformedStructure("morphism between bimodules over different bases".into()));
        }
        if source.kind() != target.kind() {
            return Err(AInfError::MalformedStructure("morphism between modules of different kinds".into()));
        }
        Ok(BimoduleMorphism { source, target, degree, entries: HashMap::new(), shapes: HashSet::new() })
    }

    pub fn identity(m: Arc<BimoduleData>) -> Self {
        let mut f = BimoduleMorphism {
            source: m.clone(),
            target: m.clone(),
            degree: 0,
            entries: HashMap::new(),
            shapes: HashSet::from([(0, 0)]),
        };
        for i in 0..m.dim() {
            f.entries.insert(SlotKey::new(&[], i, &[]), LinComb::single(i, NovikovScalar::one()));
        }
        f
    }

    /// Adds `coeff·out` to `f^{r|s}(xs, m, ys)`.
    pub fn add(&mut self, xs: &[BasisId], m: usize, ys: &[BasisId], out: usize, coeff: NovikovScalar) -> Result<&mut Self, AInfError> {
        if m >= self.source.dim() || out >= self.target.dim() {
            return Err(AInfError::MalformedStructure("morphism entry refers to a missing element".into()));
        }
        if !self.source.composable(xs, m, ys) {
            return Err(AInfError::MalformedStructure(format!("morphism entry at {} is not composable", self.source.label(m))));
        }
        let (l, r) = self.source.output_objects(xs, m, ys);
        let oe = self.target.element(out);
        if (oe.left, oe.right) != (l, r) {
            return Err(AInfError::MalformedStructure(format!("morphism output {} lands over the wrong objects", oe.label)));
        }
        coefficient_degree(self.base().grading(), &coeff).map_err(AInfError::MalformedStructure)?;
        let key = SlotKey::new(xs, m, ys);
        self.shapes.insert((xs.len(), ys.len()));
        let e = self.entries.entry(key.clone()).or_default();
        e.add_term(out, &coeff);
        if e.is_zero() {
            self.entries.remove(&key);
        }
        Ok(self)
    }

    pub fn with_degree(&self, degree: i64) -> Self {
        BimoduleMorphism { degree, ..self.clone() }
    }

    pub fn source(&self) -> &Arc<BimoduleData> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BimoduleData> {
        &self.target
    }

    pub fn base(&self) -> &Arc<AInfStructure> {
        self.source.base()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn apply(&self, xs: &[BasisId], m: usize, ys: &[BasisId]) -> Option<&LinComb<usize>> {
        if !self.shapes.contains(&(xs.len(), ys.len())) {
            return None;
        }
        self.entries.get(&SlotKey::new(xs, m, ys))
    }

    pub fn entries(&self) -> Vec<(SlotKey, usize, NovikovScalar)> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .flat_map(|(k, v)| v.iter().map(move |(o, c)| (k.clone(), *o, c.clone())))
            .collect();
        out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        out
    }
}

/// An A∞-functor `Φ: B → E` given by an object map and sparse `Φ^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctorData {
    source: Arc<AInfStructure>,
    target: Arc<AInfStructure>,
    object_map: Vec<ObjectId>,
    entries: BTreeMap<Vec<BasisId>, LinComb<BasisId>>,
}

impl FunctorData {
    pub fn new(source: Arc<AInfStructure>, target: Arc<AInfStructure>, object_map: Vec<ObjectId>) -> Result<Self, AInfError> {
        if object_map.len() != source.objects().len() || object_map.iter().any(|&o| o >= target.objects().len()) {
            return Err(AInfError::MalformedStructure("object map does not cover the source objects".into()));
        }
        Ok(FunctorData { source, target, object_map, entries: BTreeMap::new() })
    }

    pub fn identity(a: Arc<AInfStructure>) -> Self {
        let object_map = (0..a.objects().len()).collect();
        let mut f = FunctorData { source: a.clone(), target: a.clone(), object_map, entries: BTreeMap::new() };
        for i in 0..a.basis().len() {
            f.entries.insert(vec![i], LinComb::single(i, NovikovScalar::one()));
        }
        f
    }

    /// Adds `coeff·out` to `Φ^n(inputs)` with inputs in written order.
    pub fn add(&mut self, inputs: &[BasisId], out: BasisId, coeff: NovikovScalar) -> Result<&mut Self, AInfError> {
        let malformed = |s: String| AInfError::MalformedStructure(s);
        if inputs.is_empty() {
            return Err(malformed("Φ^0 is not supported".into()));
        }
        if inputs.iter().any(|&i| i >= self.source.basis().len()) || out >= self.target.basis().len() {
            return Err(malformed("functor entry refers to a missing element".into()));
        }
        if !self.source.composable(inputs) {
            return Err(malformed("functor inputs are not composable".into()));
        }
        let src = self.object_map[self.source.element(*inputs.last().unwrap()).src];
        let dst = self.object_map[self.source.element(inputs[0]).dst];
        let oe = self.target.element(out);
        if oe.src != src || oe.dst != dst {
            return Err(malformed(format!("functor output {} lands in the wrong hom space", oe.label)));
        }
        let cd = coefficient_degree(self.target.grading(), &coeff).map_err(malformed)?;
        let in_deg: i64 = inputs.iter().map(|&i| self.source.reduced_degree(i)).sum();
        if self.target.reduced_degree(out) + cd != in_deg {
            return Err(malformed(format!("functor entry → {} is not grading-preserving", oe.label)));
        }
        let e = self.entries.entry(inputs.to_vec()).or_default();
        e.add_term(out, &coeff);
        if e.is_zero() {
            self.entries.remove(inputs);
        }
        Ok(self)
    }

    pub fn source(&self) -> &Arc<AInfStructure> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AInfStructure> {
        &self.target
    }

    pub fn object_map(&self) -> &[ObjectId] {
        &self.object_map
    }

    pub fn apply(&self, inputs: &[BasisId]) -> Option<&LinComb<BasisId>> {
        self.entries.get(inputs)
    }

    pub fn max_arity(&self) -> usize {
        self.entries.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<(Vec<BasisId>, BasisId, NovikovScalar)> {
        self.entries.iter().flat_map(|(k, v)| v.iter().map(move |(o, c)| (k.clone(), *o, c.clone()))).collect()
    }
}
