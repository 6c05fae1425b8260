//! Versioned JSON documents. Inputs are listed in application order:
//! `inputs[0] = x_1 ∈ hom(X_0, X_1)`, and `objects` is the chain `X_0, …, X_r`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AInfError, AInfStructure, BasisId, BimoduleData, BimoduleMorphism, FunctorData, ModuleKind};
use crate::novikov::{GradingContext, NovikovScalar, Q};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub label: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub src: String,
    pub dst: String,
    pub basis: Vec<BasisJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuJson {
    pub arity: usize,
    pub objects: Vec<String>,
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: NovikovScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AInfJson {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monotonicity_constant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_arity: Option<usize>,
    pub objects: Vec<String>,
    pub homs: Vec<HomJson>,
    pub mu: Vec<MuJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    pub basis: Vec<BasisJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleEntryJson {
    pub r: usize,
    pub s: usize,
    pub left_inputs: Vec<String>,
    pub module: String,
    pub right_inputs: Vec<String>,
    pub output: String,
    pub coeff: NovikovScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleJson {
    pub version: u32,
    pub kind: ModuleKind,
    pub base: AInfJson,
    pub spaces: Vec<SpaceJson>,
    pub mu: Vec<ModuleEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub version: u32,
    pub degree: i64,
    pub source: BimoduleJson,
    pub target: BimoduleJson,
    pub entries: Vec<ModuleEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorEntryJson {
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: NovikovScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub version: u32,
    pub source: AInfJson,
    pub target: AInfJson,
    pub object_map: BTreeMap<String, String>,
    pub entries: Vec<FunctorEntryJson>,
}

fn malformed(s: impl Into<String>) -> AInfError {
    AInfError::MalformedStructure(s.into())
}

fn check_version(v: u32) -> Result<(), AInfError> {
    if v != SCHEMA_VERSION {
        return Err(malformed(format!("unsupported schema version {v}")));
    }
    Ok(())
}

fn parse_q(s: &str) -> Result<Q, AInfError> {
    s.trim().parse::<Q>().map_err(|_| malformed(format!("bad rational {s:?}")))
}

impl AInfStructure {
    pub fn to_json(&self) -> AInfJson {
        let lambda = self.grading().monotonicity_constant();
        let mut homs: BTreeMap<(usize, usize), Vec<BasisJson>> = BTreeMap::new();
        for e in self.basis() {
            homs.entry((e.src, e.dst)).or_default().push(BasisJson { label: e.label.clone(), degree: e.degree });
        }
        let obj = |o: usize| self.objects()[o].clone();
        AInfJson {
            version: SCHEMA_VERSION,
            monotonicity_constant: (*lambda != Q::from_integer(1.into())).then(|| lambda.to_string()),
            max_arity: None,
            objects: self.objects().to_vec(),
            homs: homs.into_iter().map(|((s, d), basis)| HomJson { src: obj(s), dst: obj(d), basis }).collect(),
            mu: self
                .entries()
                .into_iter()
                .map(|(inputs, out, coeff)| {
                    let applied: Vec<BasisId> = inputs.iter().rev().copied().collect();
                    let mut objects = vec![obj(self.element(applied[0]).src)];
                    objects.extend(applied.iter().map(|&x| obj(self.element(x).dst)));
                    MuJson {
                        arity: inputs.len(),
                        objects,
                        inputs: applied.iter().map(|&x| self.label(x).to_string()).collect(),
                        output: self.label(out).to_string(),
                        coeff,
                    }
                })
                .collect(),
        }
    }

    pub fn from_json(j: &AInfJson) -> Result<Self, AInfError> {
        check_version(j.version)?;
        let mut b = AInfStructure::builder();
        if let Some(l) = &j.monotonicity_constant {
            b.grading(GradingContext::new(parse_q(l)?).map_err(|e| malformed(e.to_string()))?);
        }
        let mut ids = BTreeMap::new();
        for o in &j.objects {
            if ids.insert(o.clone(), b.object(o)).is_some() {
                return Err(malformed(format!("duplicate object {o}")));
            }
        }
        let obj = |n: &str| ids.get(n).copied().ok_or_else(|| malformed(format!("unknown object {n}")));
        let mut labels = BTreeMap::new();
        for h in &j.homs {
            let (s, d) = (obj(&h.src)?, obj(&h.dst)?);
            for e in &h.basis {
                if labels.insert(e.label.clone(), b.basis(&e.label, e.degree, s, d)).is_some() {
                    return Err(malformed(format!("duplicate basis label {}", e.label)));
                }
            }
        }
        let lab = |n: &str| labels.get(n).copied().ok_or_else(|| malformed(format!("unknown basis label {n}")));
        for m in &j.mu {
            if m.inputs.len() != m.arity {
                return Err(malformed(format!("μ entry declares arity {} with {} inputs", m.arity, m.inputs.len())));
            }
            if let Some(bound) = j.max_arity {
                if m.arity > bound {
                    return Err(malformed(format!("μ^{} exceeds max_arity {bound}", m.arity)));
                }
            }
            let applied = m.inputs.iter().map(|s| lab(s)).collect::<Result<Vec<_>, _>>()?;
            if m.objects.len() != m.arity + 1 {
                return Err(malformed("object chain length must be arity + 1"));
            }
            let chain = m.objects.iter().map(|s| obj(s)).collect::<Result<Vec<_>, _>>()?;
            for (i, &x) in applied.iter().enumerate() {
                let h = &b_basis(&b)[x];
                if h.0 != chain[i] || h.1 != chain[i + 1] {
                    return Err(malformed(format!("input {} is not in hom({}, {})", m.inputs[i], m.objects[i], m.objects[i + 1])));
                }
            }
            let written: Vec<BasisId> = applied.into_iter().rev().collect();
            b.mu(&written, lab(&m.output)?, m.coeff.clone());
        }
        b.build()
    }

    pub fn from_json_str(s: &str) -> Result<Self, AInfError> {
        let j: AInfJson = serde_json::from_str(s).map_err(|e| AInfError::Json(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}

fn b_basis(b: &super::AInfBuilder) -> Vec<(usize, usize)> {
    b.basis_objects()
}

fn module_entry_json(m: &BimoduleData, base: &AInfStructure, xs: &[BasisId], el: usize, ys: &[BasisId], out: String, coeff: NovikovScalar) -> ModuleEntryJson {
    ModuleEntryJson {
        r: xs.len(),
        s: ys.len(),
        left_inputs: xs.iter().rev().map(|&x| base.label(x).to_string()).collect(),
        module: m.label(el).to_string(),
        right_inputs: ys.iter().map(|&y| base.label(y).to_string()).collect(),
        output: out,
        coeff,
    }
}

fn parse_module_entry(
    base: &AInfStructure,
    m: &BimoduleData,
    e: &ModuleEntryJson,
) -> Result<(Vec<BasisId>, usize, Vec<BasisId>), AInfError> {
    if e.left_inputs.len() != e.r || e.right_inputs.len() != e.s {
        return Err(malformed("module entry arity does not match its inputs"));
    }
    let lab = |n: &String| base.id_of(n).ok_or_else(|| malformed(format!("unknown basis label {n}")));
    let xs = e.left_inputs.iter().rev().map(lab).collect::<Result<Vec<_>, _>>()?;
    let ys = e.right_inputs.iter().map(lab).collect::<Result<Vec<_>, _>>()?;
    let el = m.id_of(&e.module).ok_or_else(|| malformed(format!("unknown module label {}", e.module)))?;
    Ok((xs, el, ys))
}

impl BimoduleData {
    pub fn to_json(&self) -> BimoduleJson {
        let base = self.base();
        let name = |o: Option<usize>| o.map(|o| base.objects()[o].clone());
        let mut spaces: BTreeMap<(Option<usize>, Option<usize>), Vec<BasisJson>> = BTreeMap::new();
        for e in self.elements() {
            spaces.entry((e.left, e.right)).or_default().push(BasisJson { label: e.label.clone(), degree: e.degree });
        }
        BimoduleJson {
            version: SCHEMA_VERSION,
            kind: self.kind(),
            base: base.to_json(),
            spaces: spaces.into_iter().map(|((l, r), basis)| SpaceJson { left: name(l), right: name(r), basis }).collect(),
            mu: self
                .entries()
                .into_iter()
                .map(|(k, o, c)| module_entry_json(self, base, &k.xs, k.m, &k.ys, self.label(o).to_string(), c))
                .collect(),
        }
    }

    pub fn from_json(j: &BimoduleJson) -> Result<Self, AInfError> {
        check_version(j.version)?;
        let base = Arc::new(AInfStructure::from_json(&j.base)?);
        Self::from_json_over(j, base)
    }

    fn from_json_over(j: &BimoduleJson, base: Arc<AInfStructure>) -> Result<Self, AInfError> {
        let mut b = BimoduleData::builder(base.clone(), j.kind);
        let obj = |n: &Option<String>| -> Result<Option<usize>, AInfError> {
            match n {
                None => Ok(None),
                Some(n) => base.object_id(n).map(Some).ok_or_else(|| malformed(format!("unknown object {n}"))),
            }
        };
        for sp in &j.spaces {
            let (l, r) = (obj(&sp.left)?, obj(&sp.right)?);
            for e in &sp.basis {
                b.element(&e.label, e.degree, l, r);
            }
        }
        let shell = b.build()?;
        for e in &j.mu {
            let (xs, el, ys) = parse_module_entry(&base, &shell, e)?;
            let out = shell.id_of(&e.output).ok_or_else(|| malformed(format!("unknown module label {}", e.output)))?;
            b.mu(&xs, el, &ys, out, e.coeff.clone());
        }
        b.build()
    }

    pub fn from_json_str(s: &str) -> Result<Self, AInfError> {
        let j: BimoduleJson = serde_json::from_str(s).map_err(|e| AInfError::Json(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}

impl BimoduleMorphism {
    pub fn to_json(&self) -> MorphismJson {
        let base = self.base();
        MorphismJson {
            version: SCHEMA_VERSION,
            degree: self.degree(),
            source: self.source().to_json(),
            target: self.target().to_json(),
            entries: self
                .entries()
                .into_iter()
                .map(|(k, o, c)| module_entry_json(self.source(), base, &k.xs, k.m, &k.ys, self.target().label(o).to_string(), c))
                .collect(),
        }
    }

    pub fn from_json(j: &MorphismJson) -> Result<Self, AInfError> {
        check_version(j.version)?;
        if j.source.base != j.target.base {
            return Err(malformed("source and target have different bases"));
        }
        let base = Arc::new(AInfStructure::from_json(&j.source.base)?);
        let src = Arc::new(BimoduleData::from_json_over(&j.source, base.clone())?);
        let tgt = Arc::new(BimoduleData::from_json_over(&j.target, base.clone())?);
        let mut f = BimoduleMorphism::new(src.clone(), tgt.clone(), j.degree)?;
        for e in &j.entries {
            let (xs, el, ys) = parse_module_entry(&base, &src, e)?;
            let out = tgt.id_of(&e.output).ok_or_else(|| malformed(format!("unknown module label {}", e.output)))?;
            f.add(&xs, el, &ys, out, e.coeff.clone())?;
        }
        Ok(f)
    }

    pub fn from_json_str(s: &str) -> Result<Self, AInfError> {
        let j: MorphismJson = serde_json::from_str(s).map_err(|e| AInfError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

impl FunctorData {
    pub fn to_json(&self) -> FunctorJson {
        let (s, t) = (self.source(), self.target());
        FunctorJson {
            version: SCHEMA_VERSION,
            source: s.to_json(),
            target: t.to_json(),
            object_map: self
                .object_map()
                .iter()
                .enumerate()
                .map(|(i, &o)| (s.objects()[i].clone(), t.objects()[o].clone()))
                .collect(),
            entries: self
                .entries()
                .into_iter()
                .map(|(k, o, c)| FunctorEntryJson {
                    inputs: k.iter().rev().map(|&x| s.label(x).to_string()).collect(),
                    output: t.label(o).to_string(),
                    coeff: c,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &FunctorJson) -> Result<Self, AInfError> {
        check_version(j.version)?;
        let s = Arc::new(AInfStructure::from_json(&j.source)?);
        let t = Arc::new(AInfStructure::from_json(&j.target)?);
        let mut map = Vec::with_capacity(s.objects().len());
        for o in s.objects() {
            let img = j.object_map.get(o).ok_or_else(|| malformed(format!("object {o} is not mapped")))?;
            map.push(t.object_id(img).ok_or_else(|| malformed(format!("unknown target object {img}")))?);
        }
        let mut f = FunctorData::new(s.clone(), t.clone(), map)?;
        for e in &j.entries {
            let written = e
                .inputs
                .iter()
                .rev()
                .map(|n| s.id_of(n).ok_or_else(|| malformed(format!("unknown basis label {n}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let out = t.id_of(&e.output).ok_or_else(|| malformed(format!("unknown basis label {}", e.output)))?;
            f.add(&written, out, e.coeff.clone())?;
        }
        Ok(f)
    }

    pub fn from_json_str(s: &str) -> Result<Self, AInfError> {
        let j: FunctorJson = serde_json::from_str(s).map_err(|e| AInfError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}
