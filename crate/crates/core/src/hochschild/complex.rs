use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HochschildError;
use crate::graded_ainf::LinComb;
use crate::linalg::{common_lattice, sparse_rank, Matrix, QPoly, RatFunc};
use crate::novikov::{NovikovScalar, Q};

/// A sparse linear map given by its columns: `columns[j]` is the image of basis vector `j`.
pub type Columns = Vec<LinComb<usize>>;

/// Cohomologically graded complex `d^k : C^k → C^{k+1}` over the fraction field of `ℚ[t^{±1/N}]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    spaces: BTreeMap<i64, Vec<String>>,
    d: BTreeMap<i64, Columns>,
}

fn compose(outer: &Columns, inner: &Columns) -> Columns {
    inner
        .iter()
        .map(|col| {
            let mut out = LinComb::new();
            for (&i, c) in col.iter() {
                out.add_comb(&outer[i], c);
            }
            out
        })
        .collect()
}

fn check_shape(cols: &Columns, n_cols: usize, n_rows: usize) -> bool {
    cols.len() == n_cols && cols.iter().all(|c| c.iter().all(|(&i, _)| i < n_rows))
}

impl ChainComplex {
    /// Validates shapes and `d∘d = 0`. Missing differentials are zero.
    pub fn new(spaces: BTreeMap<i64, Vec<String>>, d: BTreeMap<i64, Columns>) -> Result<Self, HochschildError> {
        let c = ChainComplex { spaces, d };
        for (&k, cols) in &c.d {
            if !check_shape(cols, c.dim(k), c.dim(k + 1)) {
                return Err(HochschildError::ShapeMismatch(format!("differential out of degree {k}")));
            }
        }
        for (&k, cols) in &c.d {
            if let Some(next) = c.d.get(&(k + 1)) {
                if compose(next, cols).iter().any(|v| !v.is_zero()) {
                    return Err(HochschildError::NotAComplex { degree: k });
                }
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        ChainComplex { spaces: BTreeMap::new(), d: BTreeMap::new() }
    }

    pub fn spaces(&self) -> &BTreeMap<i64, Vec<String>> {
        &self.spaces
    }

    pub fn basis(&self, k: i64) -> &[String] {
        self.spaces.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis(k).len()
    }

    /// Degrees with a nonzero space.
    pub fn degrees(&self) -> Vec<i64> {
        self.spaces.iter().filter(|(_, v)| !v.is_empty()).map(|(k, _)| *k).collect()
    }

    /// Columns of `d^k`; zero if absent.
    pub fn differential(&self, k: i64) -> Columns {
        self.d.get(&k).cloned().unwrap_or_else(|| vec![LinComb::new(); self.dim(k)])
    }

    pub fn differential_ref(&self, k: i64) -> Option<&Columns> {
        self.d.get(&k)
    }

    /// Every nonzero matrix entry.
    pub fn entries(&self) -> impl Iterator<Item = &NovikovScalar> + '_ {
        self.d.values().flat_map(|cols| cols.iter().flat_map(|c| c.iter().map(|(_, v)| v)))
    }

    /// Rank of `d^k` over the fraction field, by exact elimination.
    pub fn rank(&self, k: i64) -> Result<usize, HochschildError> {
        match self.d.get(&k) {
            Some(cols) => exact_rank(cols),
            None => Ok(0),
        }
    }

    /// `dim H^k = dim C^k − rank d^k − rank d^{k−1}` for every degree with a nonzero space.
    pub fn homology_ranks(&self) -> Result<BTreeMap<i64, usize>, HochschildError> {
        let mut ranks = BTreeMap::new();
        for &k in self.spaces.keys() {
            ranks.insert(k, self.rank(k)?);
        }
        Ok(self.spaces.keys().map(|&k| (k, self.dim(k) - ranks[&k] - ranks.get(&(k - 1)).copied().unwrap_or(0))).collect())
    }

    /// Homology ranks after substituting random rationals for `s = t^{1/N}`; the maximum over
    /// `trials` specializations is taken per differential.
    pub fn homology_ranks_specialized(&self, seed: u64, trials: usize) -> Result<BTreeMap<i64, usize>, HochschildError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = common_lattice(self.entries());
        let mut ranks = BTreeMap::new();
        for &k in self.spaces.keys() {
            let mut best = 0;
            if let Some(cols) = self.d.get(&k) {
                for _ in 0..trials.max(1) {
                    let s = Q::new(rng.gen_range(1..=97i64).into(), rng.gen_range(1..=31i64).into());
                    best = best.max(specialized_rank(cols, n, &s)?);
                }
            }
            ranks.insert(k, best);
        }
        Ok(self.spaces.keys().map(|&k| (k, self.dim(k) - ranks[&k] - ranks.get(&(k - 1)).copied().unwrap_or(0))).collect())
    }

    /// Total dimension over all degrees.
    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(|v| v.len()).sum()
    }

    /// Reindexes degrees by `k ↦ k + shift`, negating every differential when `negate` is set.
    pub fn shifted(&self, shift: i64, negate: bool) -> Self {
        let spaces = self.spaces.iter().map(|(k, v)| (k + shift, v.clone())).collect();
        let d = self
            .d
            .iter()
            .map(|(k, cols)| (k + shift, cols.iter().map(|c| if negate { c.scaled(&NovikovScalar::from_int(-1)) } else { c.clone() }).collect()))
            .collect();
        ChainComplex { spaces, d }
    }

    pub fn to_json(&self) -> ChainComplexJson {
        let degrees = self.spaces.iter().map(|(k, b)| DegreeJson { degree: *k, basis: b.clone() }).collect();
        let mut differential = Vec::new();
        for (k, cols) in &self.d {
            for (j, col) in cols.iter().enumerate() {
                for (i, c) in col.iter() {
                    differential.push(EntryJson { degree: *k, from: j, to: *i, coeff: c.clone() });
                }
            }
        }
        ChainComplexJson { version: COMPLEX_SCHEMA_VERSION, degrees, differential }
    }

    pub fn from_json(j: &ChainComplexJson) -> Result<Self, HochschildError> {
        if j.version != COMPLEX_SCHEMA_VERSION {
            return Err(HochschildError::Json(format!("unsupported version {}", j.version)));
        }
        let mut spaces = BTreeMap::new();
        for s in &j.degrees {
            if spaces.insert(s.degree, s.basis.clone()).is_some() {
                return Err(HochschildError::MalformedInput(format!("degree {} listed twice", s.degree)));
            }
        }
        let mut d: BTreeMap<i64, Columns> = BTreeMap::new();
        for e in &j.differential {
            let n = spaces.get(&e.degree).map(|v| v.len()).unwrap_or(0);
            let m = spaces.get(&(e.degree + 1)).map(|v| v.len()).unwrap_or(0);
            if e.from >= n || e.to >= m {
                return Err(HochschildError::ShapeMismatch(format!("entry ({}, {}) in degree {}", e.from, e.to, e.degree)));
            }
            let cols = d.entry(e.degree).or_insert_with(|| vec![LinComb::new(); n]);
            cols[e.from].add_term(e.to, &e.coeff);
        }
        ChainComplex::new(spaces, d)
    }

    pub fn from_json_str(s: &str) -> Result<Self, HochschildError> {
        let j: ChainComplexJson = serde_json::from_str(s).map_err(|e| HochschildError::Json(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("complex serializes")
    }
}

fn all_constant(cols: &Columns) -> bool {
    cols.iter().all(|c| c.iter().all(|(_, v)| v.is_exact() && v.is_constant()))
}

fn rows_of<F>(cols: &Columns, conv: impl Fn(&NovikovScalar) -> Result<F, HochschildError>) -> Result<Vec<Vec<(usize, F)>>, HochschildError> {
    // Rank is transpose-invariant, so columns serve as rows.
    cols.iter().map(|c| c.iter().map(|(&i, v)| Ok((i, conv(v)?))).collect()).collect()
}

/// Exact rank of a sparse matrix with Laurent-polynomial entries.
pub fn exact_rank(cols: &Columns) -> Result<usize, HochschildError> {
    if all_constant(cols) {
        let rows = rows_of(cols, |v| Ok(v.as_constant().cloned().expect("constant")))?;
        return Ok(sparse_rank(rows));
    }
    let n = common_lattice(cols.iter().flat_map(|c| c.iter().map(|(_, v)| v)));
    let rows = rows_of(cols, |v| RatFunc::from_novikov(v, n).map_err(|e| HochschildError::MalformedInput(e.to_string())))?;
    Ok(sparse_rank(rows))
}

fn specialized_rank(cols: &Columns, n: u32, s: &Q) -> Result<usize, HochschildError> {
    let rows = rows_of(cols, |v| {
        let f = RatFunc::from_novikov(v, n).map_err(|e| HochschildError::MalformedInput(e.to_string()))?;
        f.eval(s).ok_or_else(|| HochschildError::MalformedInput("specialization hit a pole".into()))
    })?;
    Ok(sparse_rank(rows))
}

/// Degree-preserving-up-to-shift linear map between complexes, stored per source degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub shift: i64,
    pub components: BTreeMap<i64, Columns>,
}

impl ChainMap {
    pub fn new(shift: i64) -> Self {
        ChainMap { shift, components: BTreeMap::new() }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c
            .spaces
            .iter()
            .map(|(&k, b)| (k, (0..b.len()).map(|i| LinComb::single(i, NovikovScalar::one())).collect()))
            .collect();
        ChainMap { shift: 0, components }
    }

    pub fn component(&self, k: i64, dim: usize) -> Columns {
        self.components.get(&k).cloned().unwrap_or_else(|| vec![LinComb::new(); dim])
    }

    /// Nonzero entries of `d_T∘F − sign·F∘d_S`, keyed by source degree.
    pub fn residual(&self, src: &ChainComplex, tgt: &ChainComplex, negate: bool) -> BTreeMap<i64, Columns> {
        let mut out = BTreeMap::new();
        for &k in src.spaces.keys() {
            let f_k = self.component(k, src.dim(k));
            let f_k1 = self.component(k + 1, src.dim(k + 1));
            let left = compose(&tgt.differential(k + self.shift), &f_k);
            let right = compose(&f_k1, &src.differential(k));
            let res: Columns = left
                .iter()
                .zip(&right)
                .map(|(a, b)| {
                    let mut r = a.clone();
                    r.add_comb_signed(b, !negate);
                    r
                })
                .collect();
            if res.iter().any(|c| !c.is_zero()) {
                out.insert(k, res);
            }
        }
        out
    }

    /// Rank of the map induced on `H^k`.
    pub fn induced_rank(&self, src: &ChainComplex, tgt: &ChainComplex, k: i64) -> Result<usize, HochschildError> {
        let kt = k + self.shift;
        let cycles = kernel_basis(&src.differential(k), src.dim(k), src.dim(k + 1))?;
        let f = self.component(k, src.dim(k));
        let mut cols: Columns = tgt.differential(kt - 1);
        let base_rank = exact_rank(&cols)?;
        for z in cycles {
            let mut img = LinComb::new();
            for (j, c) in z.iter().enumerate() {
                if !c.is_zero() {
                    img.add_comb(&f[j], c);
                }
            }
            cols.push(img);
        }
        Ok(exact_rank(&cols)? - base_rank)
    }
}

/// Kernel of a map with constant entries, as dense rational vectors turned into scalars.
pub(crate) fn kernel_basis(cols: &Columns, n_cols: usize, n_rows: usize) -> Result<Vec<Vec<NovikovScalar>>, HochschildError> {
    if n_cols == 0 {
        return Ok(Vec::new());
    }
    if all_constant(cols) {
        let mut m = Matrix::<Q>::zeros(n_rows, n_cols);
        for (j, c) in cols.iter().enumerate() {
            for (&i, v) in c.iter() {
                m.set(i, j, v.as_constant().cloned().expect("constant"));
            }
        }
        return Ok(m.kernel().into_iter().map(|v| v.into_iter().map(NovikovScalar::constant).collect()).collect());
    }
    let n = common_lattice(cols.iter().flat_map(|c| c.iter().map(|(_, v)| v)));
    let mut m = Matrix::<RatFunc>::zeros(n_rows, n_cols);
    for (j, c) in cols.iter().enumerate() {
        for (&i, v) in c.iter() {
            m.set(i, j, RatFunc::from_novikov(v, n).map_err(|e| HochschildError::MalformedInput(e.to_string()))?);
        }
    }
    // Clear denominators so every kernel vector has Laurent-polynomial coordinates.
    m.kernel()
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(QPoly::one(), |acc, f| acc.mul(f.den()).div_rem(&acc.gcd(f.den())).0);
            v.iter()
                .map(|f| {
                    let g = f.mul(&RatFunc::from_poly(den.clone()));
                    g.to_novikov(n).ok_or_else(|| HochschildError::MalformedInput("kernel vector is not polynomial".into()))
                })
                .collect()
        })
        .collect()
}

pub const COMPLEX_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeJson {
    pub degree: i64,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub degree: i64,
    pub from: usize,
    pub to: usize,
    pub coeff: NovikovScalar,
}

/// Wire format of a [`ChainComplex`]; coefficients use the scalar text syntax.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainComplexJson {
    pub version: u32,
    pub degrees: Vec<DegreeJson>,
    pub differential: Vec<EntryJson>,
}

/// A complex whose basis is a set of typed words, with the lookup tables to move between them.
#[derive(Clone, Debug)]
pub(crate) struct Indexed<W: Ord> {
    pub complex: ChainComplex,
    pub words: BTreeMap<i64, Vec<W>>,
    pub index: BTreeMap<W, (i64, usize)>,
}

impl<W: Ord + Clone> Indexed<W> {
    /// Builds the complex on `(word, degree, label)` items with differential `diff`.
    pub fn assemble(
        items: Vec<(W, i64, String)>,
        mut diff: impl FnMut(&W) -> Result<LinComb<W>, HochschildError>,
    ) -> Result<Self, HochschildError> {
        let mut words: BTreeMap<i64, Vec<W>> = BTreeMap::new();
        let mut spaces: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut index = BTreeMap::new();
        for (w, k, label) in items {
            let list = words.entry(k).or_default();
            index.insert(w.clone(), (k, list.len()));
            list.push(w);
            spaces.entry(k).or_default().push(label);
        }
        let mut d = BTreeMap::new();
        for (&k, list) in &words {
            let mut cols = Vec::with_capacity(list.len());
            for w in list {
                cols.push(Self::locate(&index, &diff(w)?, k + 1)?);
            }
            if cols.iter().any(|c: &LinComb<usize>| !c.is_zero()) {
                d.insert(k, cols);
            }
        }
        Ok(Indexed { complex: ChainComplex::new(spaces, d)?, words, index })
    }

    fn locate(index: &BTreeMap<W, (i64, usize)>, v: &LinComb<W>, degree: i64) -> Result<LinComb<usize>, HochschildError> {
        let mut out = LinComb::new();
        for (w, c) in v.iter() {
            match index.get(w) {
                Some(&(k, i)) if k == degree => out.add_term(i, c),
                Some(&(k, _)) => {
                    return Err(HochschildError::MalformedGenerator(format!("term lands in degree {k}, expected {degree}")))
                }
                None => return Err(HochschildError::MalformedGenerator("term leaves the truncated complex".into())),
            }
        }
        Ok(out)
    }

    /// Matrix of a word-level map into `target`, shifting degrees by `shift`.
    pub fn map_to<V: Ord + Clone>(
        &self,
        target: &Indexed<V>,
        shift: i64,
        mut f: impl FnMut(&W) -> Result<LinComb<V>, HochschildError>,
    ) -> Result<ChainMap, HochschildError> {
        let mut map = ChainMap::new(shift);
        for (&k, list) in &self.words {
            let mut cols = Vec::with_capacity(list.len());
            for w in list {
                cols.push(Indexed::<V>::locate(&target.index, &f(w)?, k + shift)?);
            }
            map.components.insert(k, cols);
        }
        Ok(map)
    }
}
