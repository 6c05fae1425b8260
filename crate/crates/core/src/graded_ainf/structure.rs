use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{ToPrimitive, Zero};

use super::signs::reduced;
use super::{AInfError, LinComb};
use crate::novikov::{CohomologicalDegree, GradingContext, NovikovScalar, Q};

pub type ObjectId = usize;
pub type BasisId = usize;

/// One basis element of a hom space `hom(src, dst)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub label: String,
    pub degree: i64,
    pub src: ObjectId,
    pub dst: ObjectId,
}

/// A finite, non-curved A∞-category.
///
/// Basis elements carry global ids. `μ^r` entries are keyed by their inputs in
/// written order `[x_r, …, x_1]`, where `x_1 ∈ hom(X_0, X_1)` is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfStructure {
    objects: Vec<String>,
    basis: Vec<HomElement>,
    labels: HashMap<String, BasisId>,
    mu: HashMap<Vec<BasisId>, LinComb<BasisId>>,
    arities: BTreeSet<usize>,
    grading: GradingContext,
}

/// Cohomological degree of a coefficient as an even integer.
pub(crate) fn coefficient_degree(ctx: &GradingContext, c: &NovikovScalar) -> Result<i64, String> {
    match c.cohomological_degree(ctx) {
        CohomologicalDegree::Mixed => Err(format!("coefficient {c} has mixed degree")),
        CohomologicalDegree::Homogeneous(d) => {
            if !d.is_integer() {
                return Err(format!("coefficient {c} has non-integral degree {d}"));
            }
            let d = d.to_integer().to_i64().ok_or_else(|| format!("coefficient {c} degree too large"))?;
            if d % 2 != 0 {
                return Err(format!("coefficient {c} has odd degree {d} (unsupported)"));
            }
            Ok(d)
        }
    }
}

impl AInfStructure {
    pub fn builder() -> AInfBuilder {
        AInfBuilder::default()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn basis(&self) -> &[HomElement] {
        &self.basis
    }

    pub fn element(&self, id: BasisId) -> &HomElement {
        &self.basis[id]
    }

    pub fn label(&self, id: BasisId) -> &str {
        &self.basis[id].label
    }

    pub fn id_of(&self, label: &str) -> Option<BasisId> {
        self.labels.get(label).copied()
    }

    pub fn degree(&self, id: BasisId) -> i64 {
        self.basis[id].degree
    }

    pub fn reduced_degree(&self, id: BasisId) -> i64 {
        reduced(self.basis[id].degree)
    }

    pub fn grading(&self) -> &GradingContext {
        &self.grading
    }

    /// Largest arity with a nonzero entry.
    pub fn max_arity(&self) -> usize {
        self.arities.iter().next_back().copied().unwrap_or(0)
    }

    pub fn has_arity(&self, r: usize) -> bool {
        self.arities.contains(&r)
    }

    /// Basis of `hom(src, dst)`.
    pub fn hom_basis(&self, src: ObjectId, dst: ObjectId) -> Vec<BasisId> {
        (0..self.basis.len()).filter(|&i| self.basis[i].src == src && self.basis[i].dst == dst).collect()
    }

    /// `μ^r(x_r, …, x_1)` on basis inputs in written order.
    pub fn mu(&self, inputs: &[BasisId]) -> Option<&LinComb<BasisId>> {
        if !self.arities.contains(&inputs.len()) {
            return None;
        }
        self.mu.get(inputs)
    }

    /// All entries, sorted by input tuple.
    pub fn entries(&self) -> Vec<(Vec<BasisId>, BasisId, NovikovScalar)> {
        let mut out: Vec<_> = self
            .mu
            .iter()
            .flat_map(|(k, v)| v.iter().map(move |(o, c)| (k.clone(), *o, c.clone())))
            .collect();
        out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        out
    }

    /// Whether consecutive letters of a written-order word compose.
    pub fn composable(&self, word: &[BasisId]) -> bool {
        word.windows(2).all(|w| self.basis[w[0]].src == self.basis[w[1]].dst)
    }

    /// All composable words of length `n` in written order.
    pub fn composable_words(&self, n: usize) -> Vec<Vec<BasisId>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut words: Vec<Vec<BasisId>> = (0..self.basis.len()).map(|i| vec![i]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for w in &words {
                let head = w[0];
                for x in 0..self.basis.len() {
                    if self.basis[x].src == self.basis[head].dst {
                        let mut v = Vec::with_capacity(w.len() + 1);
                        v.push(x);
                        v.extend_from_slice(w);
                        next.push(v);
                    }
                }
            }
            words = next;
        }
        words.sort();
        words
    }

    /// Builder pre-filled with this structure, for derived fixtures.
    pub fn to_builder(&self) -> AInfBuilder {
        let mut b = AInfBuilder { grading: self.grading.clone(), ..Default::default() };
        for o in &self.objects {
            b.object(o);
        }
        for e in &self.basis {
            b.basis(&e.label, e.degree, e.src, e.dst);
        }
        for (k, out, c) in self.entries() {
            b.mu(&k, out, c);
        }
        b
    }
}

/// Incremental constructor; validation happens in [`AInfBuilder::build`].
#[derive(Default, Clone, Debug)]
pub struct AInfBuilder {
    objects: Vec<String>,
    basis: Vec<HomElement>,
    mu: BTreeMap<Vec<BasisId>, LinComb<BasisId>>,
    grading: GradingContext,
    problems: Vec<String>,
}

impl AInfBuilder {
    pub fn grading(&mut self, ctx: GradingContext) -> &mut Self {
        self.grading = ctx;
        self
    }

    /// Adds an object, or returns the id of an existing one with that name.
    pub fn object(&mut self, name: &str) -> ObjectId {
        if let Some(i) = self.objects.iter().position(|o| o == name) {
            return i;
        }
        self.objects.push(name.to_string());
        self.objects.len() - 1
    }

    pub fn basis(&mut self, label: &str, degree: i64, src: ObjectId, dst: ObjectId) -> BasisId {
        if self.basis.iter().any(|e| e.label == label) {
            self.problems.push(format!("duplicate basis label {label}"));
        }
        self.basis.push(HomElement { label: label.to_string(), degree, src, dst });
        self.basis.len() - 1
    }

    /// Adds `coeff·output` to `μ(inputs)`.
    pub fn mu(&mut self, inputs: &[BasisId], output: BasisId, coeff: NovikovScalar) -> &mut Self {
        self.mu.entry(inputs.to_vec()).or_default().add_term(output, &coeff);
        self
    }

    /// Overwrites the coefficient of `output` in `μ(inputs)`.
    pub fn set_mu(&mut self, inputs: &[BasisId], output: BasisId, coeff: NovikovScalar) -> &mut Self {
        let entry = self.mu.entry(inputs.to_vec()).or_default();
        let mut fresh = LinComb::new();
        for (o, c) in entry.iter() {
            if *o != output {
                fresh.add_term(*o, c);
            }
        }
        fresh.add_term(output, &coeff);
        *entry = fresh;
        self
    }

    pub(crate) fn basis_objects(&self) -> Vec<(ObjectId, ObjectId)> {
        self.basis.iter().map(|e| (e.src, e.dst)).collect()
    }

    pub fn build(&self) -> Result<AInfStructure, AInfError> {
        if let Some(p) = self.problems.first() {
            return Err(AInfError::MalformedStructure(p.clone()));
        }
        let n_obj = self.objects.len();
        for e in &self.basis {
            if e.src >= n_obj || e.dst >= n_obj {
                return Err(AInfError::MalformedStructure(format!("basis {} refers to a missing object", e.label)));
            }
        }
        let mut labels = HashMap::new();
        for (i, e) in self.basis.iter().enumerate() {
            labels.insert(e.label.clone(), i);
        }
        let mut mu = HashMap::new();
        let mut arities = BTreeSet::new();
        for (inputs, out) in &self.mu {
            if out.is_zero() {
                continue;
            }
            let malformed = |msg: String| AInfError::MalformedStructure(msg);
            if inputs.is_empty() {
                return Err(malformed("curved entry μ^0 is not supported".into()));
            }
            if inputs.iter().any(|&i| i >= self.basis.len()) {
                return Err(malformed("μ entry refers to a missing basis element".into()));
            }
            let names: Vec<&str> = inputs.iter().map(|&i| self.basis[i].label.as_str()).collect();
            if !inputs.windows(2).all(|w| self.basis[w[0]].src == self.basis[w[1]].dst) {
                return Err(malformed(format!("μ inputs {names:?} are not composable")));
            }
            let src = self.basis[*inputs.last().unwrap()].src;
            let dst = self.basis[inputs[0]].dst;
            let in_deg: i64 = inputs.iter().map(|&i| reduced(self.basis[i].degree)).sum::<i64>() + 1;
            for (&o, c) in out.iter() {
                if o >= self.basis.len() {
                    return Err(malformed("μ output refers to a missing basis element".into()));
                }
                let oe = &self.basis[o];
                if oe.src != src || oe.dst != dst {
                    return Err(malformed(format!("μ{names:?} → {} lands in the wrong hom space", oe.label)));
                }
                let cd = coefficient_degree(&self.grading, c).map_err(malformed)?;
                if reduced(oe.degree) + cd != in_deg {
                    return Err(malformed(format!(
                        "μ{names:?} → {} violates degree bookkeeping ({} + {} ≠ {})",
                        oe.label,
                        reduced(oe.degree),
                        cd,
                        in_deg
                    )));
                }
            }
            arities.insert(inputs.len());
            mu.insert(inputs.clone(), out.clone());
        }
        Ok(AInfStructure {
            objects: self.objects.clone(),
            basis: self.basis.clone(),
            labels,
            mu,
            arities,
            grading: self.grading.clone(),
        })
    }
}

/// Structure constants of a graded associative algebra (or linear category).
///
/// `products[(a, b)]` is the composite `a·b = a ∘ b` (`b` applied first).
#[derive(Clone, Debug, Default)]
pub struct AssociativeTable {
    pub objects: Vec<String>,
    pub generators: Vec<HomElement>,
    pub products: BTreeMap<(BasisId, BasisId), Vec<(BasisId, Q)>>,
}

impl AssociativeTable {
    /// One-object algebra with the given `(label, degree)` basis.
    pub fn single(basis: &[(&str, i64)]) -> Self {
        AssociativeTable {
            objects: vec!["X".into()],
            generators: basis
                .iter()
                .map(|(l, d)| HomElement { label: l.to_string(), degree: *d, src: 0, dst: 0 })
                .collect(),
            products: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, a: BasisId, b: BasisId, out: Vec<(BasisId, Q)>) -> &mut Self {
        let out: Vec<_> = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if out.is_empty() {
            self.products.remove(&(a, b));
        } else {
            self.products.insert((a, b), out);
        }
        self
    }

    fn product(&self, a: BasisId, b: BasisId) -> BTreeMap<BasisId, Q> {
        let mut acc = BTreeMap::new();
        if let Some(v) = self.products.get(&(a, b)) {
            for (o, c) in v {
                add_q(&mut acc, *o, c.clone());
            }
        }
        acc
    }

    fn composable(&self, a: BasisId, b: BasisId) -> bool {
        self.generators[a].src == self.generators[b].dst
    }

    /// Checks `(ab)c = a(bc)` on all composable basis triples.
    pub fn check_associative(&self) -> Result<(), AInfError> {
        let n = self.generators.len();
        for a in 0..n {
            for b in 0..n {
                if !self.composable(a, b) {
                    continue;
                }
                let ab = self.product(a, b);
                for c in 0..n {
                    if !self.composable(b, c) {
                        continue;
                    }
                    let mut lhs = BTreeMap::new();
                    for (x, cx) in &ab {
                        for (y, cy) in self.product(*x, c) {
                            add_q(&mut lhs, y, cx * cy);
                        }
                    }
                    let mut rhs = BTreeMap::new();
                    for (x, cx) in self.product(b, c) {
                        for (y, cy) in self.product(a, x) {
                            add_q(&mut rhs, y, &cx * cy);
                        }
                    }
                    if lhs != rhs {
                        let g = &self.generators;
                        return Err(AInfError::NotAssociative(format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            g[a].label, g[b].label, g[c].label, g[a].label, g[b].label, g[c].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn add_q(acc: &mut BTreeMap<BasisId, Q>, k: BasisId, v: Q) {
    let e = acc.entry(k).or_insert_with(Q::zero);
    *e += v;
    if e.is_zero() {
        acc.remove(&k);
    }
}

/// Packages an associative table as an A∞-structure with `μ^2(a, b) = (-1)^{|b|} a·b`.
pub fn from_associative(table: &AssociativeTable) -> Result<AInfStructure, AInfError> {
    let mut b = AInfStructure::builder();
    for o in &table.objects {
        b.object(o);
    }
    for g in &table.generators {
        b.basis(&g.label, g.degree, g.src, g.dst);
    }
    for (&(x, y), out) in &table.products {
        if x >= table.generators.len() || y >= table.generators.len() {
            return Err(AInfError::MalformedStructure("product refers to a missing generator".into()));
        }
        if !table.composable(x, y) {
            return Err(AInfError::MalformedStructure(format!(
                "product {}·{} of non-composable elements",
                table.generators[x].label, table.generators[y].label
            )));
        }
        let sign = if table.generators[y].degree.rem_euclid(2) == 1 { -1 } else { 1 };
        for (o, c) in out {
            if *o >= table.generators.len() {
                return Err(AInfError::MalformedStructure("product refers to a missing generator".into()));
            }
            if table.generators[*o].degree != table.generators[x].degree + table.generators[y].degree {
                return Err(AInfError::MalformedStructure(format!(
                    "product {}·{} is not degree-additive",
                    table.generators[x].label, table.generators[y].label
                )));
            }
            b.mu(&[x, y], *o, NovikovScalar::constant(c * Q::from_integer(sign.into())));
        }
    }
    table.check_associative()?;
    b.build()
}
