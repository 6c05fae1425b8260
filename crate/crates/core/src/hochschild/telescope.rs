use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::{exact_rank, Indexed};
use super::{ChainComplex, ChainComplexJson, ChainMap, EntryJson, HochschildError, COMPLEX_SCHEMA_VERSION};
use crate::graded_ainf::signs::is_odd;
use crate::graded_ainf::LinComb;
use crate::novikov::NovikovScalar;

/// Stages `C_1, …, C_W` joined by chain maps `𝔎_w : C_w → C_{w+1}`.
///
/// Degrees here are the unreduced degrees of the stage complexes.
#[derive(Clone, Debug)]
pub struct TelescopeData {
    stages: Vec<ChainComplex>,
    maps: Vec<ChainMap>,
}

impl TelescopeData {
    /// Requires one connecting map fewer than stages, each of degree 0 and commuting with `d`.
    pub fn new(stages: Vec<ChainComplex>, maps: Vec<ChainMap>) -> Result<Self, HochschildError> {
        if maps.len() + 1 != stages.len() && !(stages.is_empty() && maps.is_empty()) {
            return Err(HochschildError::MalformedInput(format!("{} stages need {} connecting maps", stages.len(), stages.len().saturating_sub(1))));
        }
        for (w, k) in maps.iter().enumerate() {
            let (src, tgt) = (&stages[w], &stages[w + 1]);
            let shapes_ok = k.shift == 0
                && k.components.iter().all(|(deg, cols)| cols.len() == src.dim(*deg) && cols.iter().all(|c| c.iter().all(|(&i, _)| i < tgt.dim(*deg))));
            if !shapes_ok || !k.residual(src, tgt, false).is_empty() {
                return Err(HochschildError::ConnectingMapNotChainMap { stage: w + 1 });
            }
        }
        Ok(TelescopeData { stages, maps })
    }

    /// `W` copies of one complex joined by identities.
    pub fn stabilized(c: ChainComplex, stages: usize) -> Self {
        let maps = (1..stages).map(|_| ChainMap::identity(&c)).collect();
        TelescopeData { stages: vec![c; stages], maps }
    }

    pub fn stages(&self) -> &[ChainComplex] {
        &self.stages
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// `C^a_b = ⊕_{w=a}^{b-1} C_w[q] ⊕ C_b`, stages numbered from 1.
    fn truncation(&self, a: usize, b: usize) -> Result<Indexed<Gen>, HochschildError> {
        let mut items = Vec::new();
        for w in a..=b {
            let c = &self.stages[w - 1];
            for (&k, basis) in c.spaces() {
                for (i, label) in basis.iter().enumerate() {
                    items.push((Gen { stage: w, q: false, degree: k, index: i }, k, format!("{label}@{w}")));
                    if w < b {
                        items.push((Gen { stage: w, q: true, degree: k, index: i }, k - 1, format!("q·{label}@{w}")));
                    }
                }
            }
        }
        Indexed::assemble(items, |g| Ok(self.differential(g)))
    }

    /// `μ¹(x + qy) = (-1)^{|x|} d x + (-1)^{|y|}(q d y + 𝔎 y − y)`.
    fn differential(&self, g: &Gen) -> LinComb<Gen> {
        let c = &self.stages[g.stage - 1];
        let d = c.differential(g.degree);
        let sign = is_odd(g.degree);
        let mut out = LinComb::new();
        for (&i, v) in d[g.index].iter() {
            out.add_signed(Gen { stage: g.stage, q: g.q, degree: g.degree + 1, index: i }, v, sign);
        }
        if g.q {
            let k = self.maps[g.stage - 1].component(g.degree, c.dim(g.degree));
            for (&i, v) in k[g.index].iter() {
                out.add_signed(Gen { stage: g.stage + 1, q: false, degree: g.degree, index: i }, v, sign);
            }
            out.add_signed(Gen { stage: g.stage, q: false, degree: g.degree, index: g.index }, &NovikovScalar::one(), !sign);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Gen {
    stage: usize,
    q: bool,
    degree: i64,
    index: usize,
}

/// The finite telescope `C^1_W`.
pub fn telescope(t: &TelescopeData) -> Result<ChainComplex, HochschildError> {
    if t.is_empty() {
        return Ok(ChainComplex::zero());
    }
    Ok(t.truncation(1, t.len())?.complex)
}

/// Homology ranks of one truncation `C^a_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationRanks {
    pub a: usize,
    pub b: usize,
    pub ranks: BTreeMap<i64, usize>,
}

/// Homology ranks of the truncations `C^a_b` and the checks relating them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct FiltrationReport {
    pub stage_ranks: Vec<BTreeMap<i64, usize>>,
    pub truncations: Vec<TruncationRanks>,
    pub telescope_ranks: BTreeMap<i64, usize>,
    /// `H(C^b_b) ≅ H(C_b)` for every `b`.
    pub top_stage_matches: bool,
    /// `C^a_b ⊂ C^{a-1}_b` is a quasi-isomorphism for `2 ≤ a ≤ b`.
    pub inclusions_quasi_iso: bool,
    /// `C^b_b ⊂ C^1_b` is a quasi-isomorphism for every `b`.
    pub top_inclusion_quasi_iso: bool,
    /// `𝔎` followed by inclusion agrees on homology with the inclusion `C^1_b ⊂ C^1_{b+1}`.
    pub connecting_maps_compatible: bool,
}

fn nonzero_ranks(r: BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    r.into_iter().filter(|(_, v)| *v > 0).collect()
}

/// Whether the inclusion of generators `src ⊂ tgt` induces an isomorphism on homology.
fn inclusion_quasi_iso(src: &Indexed<Gen>, tgt: &Indexed<Gen>) -> Result<bool, HochschildError> {
    let map = src.map_to(tgt, 0, |g| Ok(LinComb::single(g.clone(), NovikovScalar::one())))?;
    let hs = src.complex.homology_ranks()?;
    let ht = tgt.complex.homology_ranks()?;
    for k in hs.keys().chain(ht.keys()) {
        let a = hs.get(k).copied().unwrap_or(0);
        let b = ht.get(k).copied().unwrap_or(0);
        if a != b || (a > 0 && map.induced_rank(&src.complex, &tgt.complex, *k)? != a) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `ι(z) − ι(𝔎 z)` is a boundary in `C^1_{b+1}` for every cycle `z` of `C_b`.
fn connecting_compatible(t: &TelescopeData, b: usize, big: &Indexed<Gen>) -> Result<bool, HochschildError> {
    let c = &t.stages[b - 1];
    let k_map = &t.maps[b - 1];
    for &deg in c.spaces().keys() {
        let d = c.differential(deg);
        let k = k_map.component(deg, c.dim(deg));
        let mut cols = big.complex.differential(deg - 1);
        let base = exact_rank(&cols)?;
        let cycles = stage_cycles(&d, c.dim(deg), c.dim(deg + 1))?;
        for z in &cycles {
            let mut v = LinComb::new();
            for (i, coeff) in z.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let (_, pos) = big.index[&Gen { stage: b, q: false, degree: deg, index: i }];
                v.add_term(pos, coeff);
                for (&j, kv) in k[i].iter() {
                    let (_, pos) = big.index[&Gen { stage: b + 1, q: false, degree: deg, index: j }];
                    v.add_term(pos, &coeff.mul_ref(kv).neg_ref());
                }
            }
            cols.push(v);
        }
        if exact_rank(&cols)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}

fn stage_cycles(d: &[LinComb<usize>], n_cols: usize, n_rows: usize) -> Result<Vec<Vec<NovikovScalar>>, HochschildError> {
    super::complex::kernel_basis(&d.to_vec(), n_cols, n_rows)
}

/// Computes `H(C^a_b)` for all `1 ≤ a ≤ b ≤ W` and checks the filtration statements.
pub fn telescope_filtration_report(t: &TelescopeData) -> Result<FiltrationReport, HochschildError> {
    if t.is_empty() {
        return Ok(FiltrationReport {
            top_stage_matches: true,
            inclusions_quasi_iso: true,
            top_inclusion_quasi_iso: true,
            connecting_maps_compatible: true,
            ..Default::default()
        });
    }
    let w = t.len();
    let mut truncs: BTreeMap<(usize, usize), Indexed<Gen>> = BTreeMap::new();
    for b in 1..=w {
        for a in 1..=b {
            truncs.insert((a, b), t.truncation(a, b)?);
        }
    }
    let stage_ranks: Vec<_> = t.stages.iter().map(|c| c.homology_ranks().map(nonzero_ranks)).collect::<Result<_, _>>()?;
    let mut truncations = Vec::new();
    for (&(a, b), c) in &truncs {
        truncations.push(TruncationRanks { a, b, ranks: nonzero_ranks(c.complex.homology_ranks()?) });
    }
    let mut top_stage_matches = true;
    let mut inclusions_quasi_iso = true;
    let mut top_inclusion_quasi_iso = true;
    let mut connecting_maps_compatible = true;
    for b in 1..=w {
        top_stage_matches &= nonzero_ranks(truncs[&(b, b)].complex.homology_ranks()?) == stage_ranks[b - 1];
        for a in 2..=b {
            inclusions_quasi_iso &= inclusion_quasi_iso(&truncs[&(a, b)], &truncs[&(a - 1, b)])?;
        }
        top_inclusion_quasi_iso &= inclusion_quasi_iso(&truncs[&(b, b)], &truncs[&(1, b)])?;
        if b < w {
            connecting_maps_compatible &= connecting_compatible(t, b, &truncs[&(1, b + 1)])?;
        }
    }
    Ok(FiltrationReport {
        stage_ranks,
        telescope_ranks: nonzero_ranks(truncs[&(1, w)].complex.homology_ranks()?),
        truncations,
        top_stage_matches,
        inclusions_quasi_iso,
        top_inclusion_quasi_iso,
        connecting_maps_compatible,
    })
}

/// Wire format of [`TelescopeData`]: the stages, and for each connecting map its nonzero
/// entries `(degree, from, to, coeff)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TelescopeJson {
    pub version: u32,
    pub stages: Vec<ChainComplexJson>,
    pub maps: Vec<Vec<EntryJson>>,
}

impl TelescopeData {
    pub fn to_json(&self) -> TelescopeJson {
        let maps = self
            .maps
            .iter()
            .map(|k| {
                let mut entries = Vec::new();
                for (deg, cols) in &k.components {
                    for (j, col) in cols.iter().enumerate() {
                        for (i, c) in col.iter() {
                            entries.push(EntryJson { degree: *deg, from: j, to: *i, coeff: c.clone() });
                        }
                    }
                }
                entries
            })
            .collect();
        TelescopeJson { version: COMPLEX_SCHEMA_VERSION, stages: self.stages.iter().map(|c| c.to_json()).collect(), maps }
    }

    pub fn from_json(j: &TelescopeJson) -> Result<Self, HochschildError> {
        if j.version != COMPLEX_SCHEMA_VERSION {
            return Err(HochschildError::Json(format!("unsupported version {}", j.version)));
        }
        let stages = j.stages.iter().map(ChainComplex::from_json).collect::<Result<Vec<_>, _>>()?;
        let mut maps = Vec::new();
        for (w, entries) in j.maps.iter().enumerate() {
            let src = stages.get(w).ok_or_else(|| HochschildError::MalformedInput(format!("map {} has no source stage", w + 1)))?;
            let mut k = ChainMap::new(0);
            for e in entries {
                let n = src.dim(e.degree);
                if e.from >= n {
                    return Err(HochschildError::ShapeMismatch(format!("map {} entry ({}, {}) in degree {}", w + 1, e.from, e.to, e.degree)));
                }
                k.components.entry(e.degree).or_insert_with(|| vec![LinComb::new(); n])[e.from].add_term(e.to, &e.coeff);
            }
            maps.push(k);
        }
        Self::new(stages, maps)
    }

    pub fn from_json_str(s: &str) -> Result<Self, HochschildError> {
        let j: TelescopeJson = serde_json::from_str(s).map_err(|e| HochschildError::Json(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("telescope serializes")
    }
}
