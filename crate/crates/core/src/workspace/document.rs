use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// `[output symbol, coefficient]` pairs; coefficients are `"p/q"` strings.
pub type Terms = Vec<(String, String)>;

/// `[target symbol, source symbol, coefficient]` matrix entries.
pub type Entries = Vec<(String, String, String)>;

/// A workspace file. Every section is a map from names to definitions;
/// names are unique across sections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub spaces: BTreeMap<String, Vec<(String, i64)>>,
    #[serde(default)]
    pub operads: BTreeMap<String, OperadSpec>,
    #[serde(default)]
    pub cooperads: BTreeMap<String, CooperadSpec>,
    #[serde(default)]
    pub twisting: BTreeMap<String, TwistingSpec>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub coalgebras: BTreeMap<String, CoalgebraSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperadSpec {
    /// `As` with `μ_n` in degree 0.
    Associative { bound: usize },
    /// Arity components (≥ 2) as `[symbol, degree]` lists and the
    /// non-unit partial compositions.
    Table {
        bound: usize,
        arities: BTreeMap<usize, Vec<(String, i64)>>,
        #[serde(default)]
        compose: Vec<CompositionSpec>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        differential: Entries,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionSpec {
    pub left: String,
    pub position: usize,
    pub right: String,
    pub output: Terms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CooperadSpec {
    /// `As^∨`, with `|μ_n^∨| = n − 1` when `graded`, all degrees 0 otherwise.
    Coassociative { bound: usize, graded: bool },
    /// Arity components and the non-counital terms of `Δ_(1)`.
    Table {
        bound: usize,
        arities: BTreeMap<usize, Vec<(String, i64)>>,
        #[serde(default)]
        decompose: Vec<DecompositionSpec>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        differential: Entries,
    },
}

/// `element ↦ coeff · left ∘_position right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionSpec {
    pub element: String,
    pub left: String,
    pub position: usize,
    pub right: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TwistingSpec {
    Zero { cooperad: String, operad: String },
    /// `μ₂^∨ ↦ μ₂`, flagged Koszul.
    Kappa { cooperad: String, operad: String },
    /// `[cooperad symbol, operad symbol, coefficient]` entries.
    Map {
        cooperad: String,
        operad: String,
        entries: Vec<(String, String, String)>,
        #[serde(default)]
        koszul: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// Structure maps in arities ≥ 2 listed per input tuple.
    Table {
        operad: String,
        space: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        differential: Entries,
        #[serde(default)]
        products: Vec<ProductSpec>,
    },
    /// As-algebra from a binary product; unlisted products are zero.
    Associative {
        operad: String,
        space: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        differential: Entries,
        #[serde(default)]
        product: Vec<ProductSpec>,
    },
    Free {
        operad: String,
        generators: String,
        weight: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        differential: Entries,
    },
    Cobar { twisting: String, coalgebra: String, weight: usize },
}

/// `γ(op; inputs) = output`; `op` may be omitted for binary products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    pub inputs: Vec<String>,
    pub output: Terms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoalgebraSpec {
    /// Decomposition terms of arity ≥ 2 per basis element.
    Table {
        cooperad: String,
        space: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        differential: Entries,
        #[serde(default)]
        delta: Vec<CoTermSpec>,
    },
    Cofree {
        cooperad: String,
        generators: String,
        weight: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        differential: Entries,
    },
    Bar { twisting: String, algebra: String, weight: usize },
}

/// `coeff · op ⊗ inputs` in `Δ(element)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoTermSpec {
    pub element: String,
    pub op: String,
    pub inputs: Vec<String>,
    pub coeff: String,
}

/// Homogeneous linear map between the carriers of two named objects
/// (coalgebras, algebras or spaces).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub entries: Entries,
}
