//! The JSON document formats: instances in, solutions out.
//!
//! Every potentially fractional number travels as an exact rational string
//! (`"7"`, `"5/2"`); element references in the top-level fields use the
//! instance's name table, while nested matroid nodes use local indices.

use std::collections::BTreeMap;

use invmat::{
    format_rational, parse_rational, Certificate, ConcreteMatroid, Error, GroundSubset, Matroid,
    Solution, Variant, Weighting,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// One problem instance as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: u32,
    /// Names of the ground elements, in ground order.
    pub elements: Vec<String>,
    pub matroid: MatroidNode,
    /// The constrained subset (or the target basis, for the `im` variant).
    pub s0: Vec<String>,
    /// Rational weight string per element name; must cover every element.
    pub weights: BTreeMap<String, String>,
    /// Default problem tag; a `--problem` flag overrides it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    /// Request integral output. Implies the weights are integers.
    #[serde(default)]
    pub integral: bool,
}

/// A matroid constructor tree. Nested nodes refer to their own local ground
/// indices `0..size`; the root's ground size must match the element table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatroidNode {
    Uniform {
        size: usize,
        rank: usize,
    },
    Partition {
        size: usize,
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Linear {
        matrix: Vec<Vec<String>>,
    },
    DirectSum {
        parts: Vec<MatroidNode>,
    },
    Dual {
        inner: Box<MatroidNode>,
    },
    Restriction {
        inner: Box<MatroidNode>,
        keep: Vec<usize>,
    },
    Contraction {
        inner: Box<MatroidNode>,
        keep: Vec<usize>,
    },
}

impl MatroidNode {
    pub fn ground_size(&self) -> usize {
        match self {
            MatroidNode::Uniform { size, .. } | MatroidNode::Partition { size, .. } => *size,
            MatroidNode::Graphic { edges, .. } => edges.len(),
            MatroidNode::Linear { matrix } => matrix.first().map_or(0, Vec::len),
            MatroidNode::DirectSum { parts } => parts.iter().map(MatroidNode::ground_size).sum(),
            MatroidNode::Dual { inner } => inner.ground_size(),
            MatroidNode::Restriction { keep, .. } | MatroidNode::Contraction { keep, .. } => {
                keep.len()
            }
        }
    }

    pub fn to_concrete(&self) -> invmat::Result<ConcreteMatroid> {
        match self {
            MatroidNode::Uniform { size, rank } => ConcreteMatroid::uniform(*size, *rank),
            MatroidNode::Partition {
                size,
                blocks,
                capacities,
            } => {
                let sets = blocks
                    .iter()
                    .map(|block| indices_to_set(*size, block, "partition block"))
                    .collect::<invmat::Result<Vec<_>>>()?;
                ConcreteMatroid::partition(*size, sets, capacities.clone())
            }
            MatroidNode::Graphic { vertices, edges } => {
                ConcreteMatroid::graphic(*vertices, edges.clone())
            }
            MatroidNode::Linear { matrix } => {
                let rows = matrix
                    .iter()
                    .map(|row| row.iter().map(|cell| parse_rational(cell)).collect())
                    .collect::<invmat::Result<Vec<Vec<_>>>>()?;
                ConcreteMatroid::linear_rational(rows)
            }
            MatroidNode::DirectSum { parts } => ConcreteMatroid::direct_sum(
                parts
                    .iter()
                    .map(MatroidNode::to_concrete)
                    .collect::<invmat::Result<Vec<_>>>()?,
            ),
            MatroidNode::Dual { inner } => Ok(ConcreteMatroid::dual(inner.to_concrete()?)),
            MatroidNode::Restriction { inner, keep } => {
                let m = inner.to_concrete()?;
                let set = indices_to_set(m.ground_size(), keep, "restriction")?;
                ConcreteMatroid::restriction(m, &set)
            }
            MatroidNode::Contraction { inner, keep } => {
                let m = inner.to_concrete()?;
                let set = indices_to_set(m.ground_size(), keep, "contraction")?;
                ConcreteMatroid::contraction(m, &set)
            }
        }
    }
}

fn indices_to_set(size: usize, indices: &[usize], what: &str) -> invmat::Result<GroundSubset> {
    let mut set = GroundSubset::empty(size);
    for &i in indices {
        if i >= size {
            return Err(Error::malformed(format!(
                "{what} index {i} is outside 0..{size}"
            )));
        }
        if set.contains(i) {
            return Err(Error::malformed(format!("{what} repeats index {i}")));
        }
        set.insert(i);
    }
    Ok(set)
}

/// An instance with its name table resolved against the matroid.
pub struct NamedInstance {
    pub names: Vec<String>,
    pub matroid: ConcreteMatroid,
    pub s0: GroundSubset,
    pub weights: Weighting,
    pub variant: Option<Variant>,
    pub integral: bool,
}

impl InstanceFile {
    /// Checks every schema invariant and resolves names to ground indices.
    pub fn resolve(&self) -> invmat::Result<NamedInstance> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::malformed(format!(
                "unsupported schema version {} (this tool reads version {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let n = self.elements.len();
        let mut index_of: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, name) in self.elements.iter().enumerate() {
            if index_of.insert(name, i).is_some() {
                return Err(Error::malformed(format!("duplicate element name {name:?}")));
            }
        }
        let matroid = self.matroid.to_concrete()?;
        if matroid.ground_size() != n {
            return Err(Error::malformed(format!(
                "the element table names {n} elements but the matroid has {}",
                matroid.ground_size()
            )));
        }
        let mut s0 = GroundSubset::empty(n);
        for name in &self.s0 {
            let &i = index_of
                .get(name.as_str())
                .ok_or_else(|| Error::malformed(format!("s0 names unknown element {name:?}")))?;
            if s0.contains(i) {
                return Err(Error::malformed(format!("s0 repeats element {name:?}")));
            }
            s0.insert(i);
        }
        let mut values = vec![None; n];
        for (name, text) in &self.weights {
            let &i = index_of.get(name.as_str()).ok_or_else(|| {
                Error::malformed(format!("weights name unknown element {name:?}"))
            })?;
            values[i] = Some(parse_rational(text)?);
        }
        if let Some(missing) = values.iter().position(Option::is_none) {
            return Err(Error::malformed(format!(
                "no weight given for element {:?}",
                self.elements[missing]
            )));
        }
        let weights = Weighting::from_rationals(values.into_iter().flatten().collect());
        if self.integral && !weights.integral() {
            return Err(Error::malformed(
                "instance declares integral mode but carries fractional weights",
            ));
        }
        let variant = match &self.variant {
            Some(tag) => Some(Variant::from_tag(tag)?),
            None => None,
        };
        Ok(NamedInstance {
            names: self.elements.clone(),
            matroid,
            s0,
            weights,
            variant,
            integral: self.integral,
        })
    }

    /// The normalized form: `s0` sorted in ground order. Weight maps are
    /// already name-sorted by construction.
    pub fn normalized(&self) -> invmat::Result<InstanceFile> {
        let resolved = self.resolve()?;
        let mut out = self.clone();
        out.s0 = resolved
            .s0
            .iter()
            .map(|i| resolved.names[i].clone())
            .collect();
        Ok(out)
    }
}

/// A solver run as printed by `solve`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub schema: u32,
    pub variant: String,
    /// The attained deviation, as an exact rational string.
    pub delta_star: String,
    pub weights_out: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_calls: Option<u64>,
}

/// Output of `check`: the feasibility verdict on the weights as given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckFile {
    pub schema: u32,
    pub variant: String,
    pub feasible: bool,
}

/// Output of `oracle`: the enumeration oracle's optimum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleFile {
    pub schema: u32,
    pub variant: String,
    pub delta_star: String,
}

pub fn solution_file(
    names: &[String],
    solution: &Solution,
    verified: Option<bool>,
    oracle_calls: Option<u64>,
) -> SolutionFile {
    let weights_out = names
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), format_rational(&solution.weights_out[i])))
        .collect();
    SolutionFile {
        schema: SCHEMA_VERSION,
        variant: solution.variant.tag().to_string(),
        delta_star: format_rational(&solution.delta_star),
        weights_out,
        certificate: solution
            .certificate
            .as_ref()
            .map(|cert| certificate_value(names, cert)),
        verified,
        oracle_calls,
    }
}

fn name_list(names: &[String], set: &GroundSubset) -> Vec<String> {
    set.iter().map(|i| names[i].clone()).collect()
}

/// Renders a certificate with element names in place of ground indices.
fn certificate_value(names: &[String], cert: &Certificate) -> Value {
    match cert {
        Certificate::Im(c) => json!({
            "kind": "im",
            "delta_star": format_rational(&c.delta_star),
            "pair": c.pair.map(|(f, e)| json!({"enters": names[f], "leaves": names[e]})),
            "witness_basis": c.witness_basis.as_ref().map(|b| name_list(names, b.as_set())),
        }),
        Certificate::Exists(c) => json!({
            "kind": "im-exists",
            "delta_star": format_rational(&c.delta_star),
            "basis_in_s0": name_list(names, c.basis_in_s0.as_set()),
            "triple": c.triple.as_ref().map(|(basis, e, f)| json!({
                "basis": name_list(names, basis.as_set()),
                "inside": names[*e],
                "outside": names[*f],
            })),
        }),
        Certificate::All(c) => json!({
            "kind": "im-all",
            "delta_star": format_rational(&c.delta_star),
            "delta_phase2": format_rational(&c.delta_phase2),
            "plan": c.plan.as_ref().map(|plan| json!({
                "components": plan.components.iter().map(|s| name_list(names, s)).collect::<Vec<_>>(),
                "delta_max": plan.delta_max.iter().map(format_rational).collect::<Vec<_>>(),
                "delta_min": plan.delta_min.iter().map(format_rational).collect::<Vec<_>>(),
                "midpoint": plan.midpoint.iter().map(format_rational).collect::<Vec<_>>(),
                "shift": plan.shift.iter().map(format_rational).collect::<Vec<_>>(),
                "rho": format_rational(&plan.rho),
            })),
        }),
        Certificate::NotExists(c) => json!({
            "kind": "im-not-exists",
            "relaxed_delta": format_rational(&c.relaxed_delta),
            "chosen_delta": format_rational(&c.chosen_delta),
            "witness_basis_outside": name_list(names, c.witness_basis_outside.as_set()),
        }),
        Certificate::NotAll(c) => json!({
            "kind": "im-not-all",
            "branch": match c.branch {
                invmat::NotAllBranch::AlreadyFeasible => "already-feasible",
                invmat::NotAllBranch::DecrementBasis => "decrement-basis",
                invmat::NotAllBranch::ExchangeBound => "exchange-bound",
            },
            "basis": c.basis_b0.as_ref().map(|b| name_list(names, b.as_set())),
            "delta": format_rational(&c.delta),
            "pair": c.pair.map(|(e, f)| json!({"inside": names[e], "outside": names[f]})),
        }),
    }
}
