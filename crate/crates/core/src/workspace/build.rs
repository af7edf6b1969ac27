use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::document::*;
use crate::algebra::{bar, cobar, Algebra, CoTerm, Coalgebra, ProductRule};
use crate::error::{Error, Result};
use crate::linalg::scalar::parse_scalar;
use crate::linalg::{GradedSpace, LinMap, Vector};
use crate::operad::{
    ArityMap, CompositionRule, Cooperad, DecompTerm, NsCollection, Operad, TwistingMorphism,
};

/// A loaded workspace: the document together with every object it defines.
#[derive(Clone, Debug)]
pub struct Workspace {
    document: Document,
    pub spaces: BTreeMap<String, Arc<GradedSpace>>,
    pub operads: BTreeMap<String, Arc<Operad>>,
    pub cooperads: BTreeMap<String, Arc<Cooperad>>,
    pub twisting: BTreeMap<String, Arc<TwistingMorphism>>,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub coalgebras: BTreeMap<String, Arc<Coalgebra>>,
    pub maps: BTreeMap<String, LinMap>,
}

fn lookup<'a, T>(section: &'a BTreeMap<String, T>, name: &str) -> Result<&'a T> {
    section.get(name).ok_or_else(|| Error::Reference(name.to_string()))
}

fn terms(space: &GradedSpace, ts: &Terms) -> Result<Vector> {
    let mut v = Vector::zero();
    for (sym, c) in ts {
        v.add_term(space.require(sym)?, parse_scalar(c)?);
    }
    Ok(v)
}

fn matrix(source: &Arc<GradedSpace>, target: &Arc<GradedSpace>, degree: i64, entries: &Entries) -> Result<LinMap> {
    let parsed = entries
        .iter()
        .map(|(t, s, c)| Ok((t.as_str(), s.as_str(), parse_scalar(c)?)))
        .collect::<Result<Vec<_>>>()?;
    LinMap::from_entries(source.clone(), target.clone(), degree, parsed)
}

fn differential(space: &Arc<GradedSpace>, entries: &Entries) -> Result<Option<LinMap>> {
    if entries.is_empty() {
        return Ok(None);
    }
    matrix(space, space, -1, entries).map(Some)
}

fn collection(bound: usize, arities: &BTreeMap<usize, Vec<(String, i64)>>) -> Result<NsCollection> {
    let comps = arities
        .iter()
        .map(|(&n, b)| Ok((n, GradedSpace::new(b.iter().cloned())?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    NsCollection::new(bound, comps)
}

fn arity_differentials(col: &NsCollection, entries: &Entries) -> Result<BTreeMap<usize, LinMap>> {
    let mut per: BTreeMap<usize, Entries> = BTreeMap::new();
    for e in entries {
        let (n, _) = col.locate(&e.1)?;
        per.entry(n).or_default().push(e.clone());
    }
    per.into_iter()
        .map(|(n, es)| {
            let s = col.space(n)?;
            Ok((n, matrix(s, s, -1, &es)?))
        })
        .collect()
}

fn build_operad(name: &str, spec: &OperadSpec) -> Result<Operad> {
    match spec {
        OperadSpec::Associative { bound } => Operad::associative(*bound),
        OperadSpec::Table { bound, arities, compose, differential } => {
            let col = collection(*bound, arities)?;
            let rules = compose
                .iter()
                .map(|r| {
                    let left = col.locate(&r.left)?;
                    let right = col.locate(&r.right)?;
                    let out = left.0 + right.0 - 1;
                    let output = if out > *bound { Vector::zero() } else { terms(col.space(out)?, &r.output)? };
                    Ok(CompositionRule { left, position: r.position, right, output })
                })
                .collect::<Result<Vec<_>>>()?;
            let diffs = arity_differentials(&col, differential)?;
            Operad::new(name, col, rules, diffs)
        }
    }
}

fn build_cooperad(name: &str, spec: &CooperadSpec) -> Result<Cooperad> {
    match spec {
        CooperadSpec::Coassociative { bound, graded } => Cooperad::coassociative(*bound, *graded),
        CooperadSpec::Table { bound, arities, decompose, differential } => {
            let col = collection(*bound, arities)?;
            let ts = decompose
                .iter()
                .map(|t| {
                    let term = DecompTerm {
                        left: col.locate(&t.left)?,
                        position: t.position,
                        right: col.locate(&t.right)?,
                        coeff: parse_scalar(&t.coeff)?,
                    };
                    Ok((col.locate(&t.element)?, term))
                })
                .collect::<Result<Vec<_>>>()?;
            let diffs = arity_differentials(&col, differential)?;
            Cooperad::new(name, col, ts, diffs)
        }
    }
}

fn build_twisting(spec: &TwistingSpec, ops: &BTreeMap<String, Arc<Operad>>, cos: &BTreeMap<String, Arc<Cooperad>>) -> Result<TwistingMorphism> {
    let (co, op) = match spec {
        TwistingSpec::Zero { cooperad, operad }
        | TwistingSpec::Kappa { cooperad, operad }
        | TwistingSpec::Map { cooperad, operad, .. } => (lookup(cos, cooperad)?.clone(), lookup(ops, operad)?.clone()),
    };
    match spec {
        TwistingSpec::Zero { .. } => Ok(TwistingMorphism::zero(co, op)),
        TwistingSpec::Kappa { .. } => {
            let one = crate::linalg::scalar::one();
            let map = ArityMap::from_symbols(&co, &op, [("μ2^∨", "μ2", one)])?;
            Ok(TwistingMorphism::new(co, op, map)?.flag_koszul(true))
        }
        TwistingSpec::Map { entries, koszul, .. } => {
            let parsed = entries
                .iter()
                .map(|(c, p, x)| Ok((c.as_str(), p.as_str(), parse_scalar(x)?)))
                .collect::<Result<Vec<_>>>()?;
            let map = ArityMap::from_symbols(&co, &op, parsed)?;
            Ok(TwistingMorphism::new(co, op, map)?.flag_koszul(*koszul))
        }
    }
}

impl Workspace {
    /// Parses JSON text; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let document: Document = serde_json::from_str(text).map_err(|e| Error::ParseAt {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Workspace::from_document(document)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Workspace::parse(&text)
    }

    pub fn document(&self) -> &Document {
        &self.document
    }

    /// Pretty-printed JSON; keys are sorted, so equal documents print
    /// identically.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.document).expect("documents serialize")
    }

    pub fn from_document(document: Document) -> Result<Self> {
        let d = &document;
        let mut seen = BTreeSet::new();
        let names = d.operads.keys().chain(d.cooperads.keys()).chain(d.twisting.keys());
        for n in names.chain(d.algebras.keys()).chain(d.coalgebras.keys()).chain(d.maps.keys()) {
            if !seen.insert(n.clone()) {
                return Err(Error::Invalid(format!("name `{n}` is defined twice")));
            }
        }
        let named = |n: &str, e: Error| Error::Invalid(format!("{n}: {e}"));
        let spaces = d
            .spaces
            .iter()
            .map(|(n, b)| Ok((n.clone(), GradedSpace::new(b.iter().cloned()).map_err(|e| named(n, e))?.shared())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let operads = d
            .operads
            .iter()
            .map(|(n, s)| Ok((n.clone(), Arc::new(build_operad(n, s).map_err(|e| named(n, e))?))))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let cooperads = d
            .cooperads
            .iter()
            .map(|(n, s)| Ok((n.clone(), Arc::new(build_cooperad(n, s).map_err(|e| named(n, e))?))))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let twisting = d
            .twisting
            .iter()
            .map(|(n, s)| {
                let t = build_twisting(s, &operads, &cooperads).map_err(|e| match e {
                    Error::Reference(_) => e,
                    e => named(n, e),
                })?;
                Ok((n.clone(), Arc::new(t)))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut ws = Workspace {
            document: document.clone(),
            spaces,
            operads,
            cooperads,
            twisting,
            algebras: BTreeMap::new(),
            coalgebras: BTreeMap::new(),
            maps: BTreeMap::new(),
        };
        ws.build_carriers()?;
        for (n, m) in &document.maps {
            let source = ws.carrier(&m.source)?;
            let target = ws.carrier(&m.target)?;
            let map = matrix(&source, &target, m.degree, &m.entries).map_err(|e| named(n, e))?;
            ws.maps.insert(n.clone(), map);
        }
        Ok(ws)
    }
}

enum Step<T> {
    Built(T),
    /// Waiting on another algebra or coalgebra of the document.
    Waiting,
}

impl Workspace {
    /// Carrier space of a named coalgebra, algebra or space.
    pub fn carrier(&self, name: &str) -> Result<Arc<GradedSpace>> {
        if let Some(c) = self.coalgebras.get(name) {
            return Ok(c.space().clone());
        }
        if let Some(a) = self.algebras.get(name) {
            return Ok(a.space().clone());
        }
        self.spaces.get(name).cloned().ok_or_else(|| Error::Reference(name.to_string()))
    }

    fn build_carriers(&mut self) -> Result<()> {
        let doc = self.document.clone();
        let mut pending_a: Vec<_> = doc.algebras.iter().collect();
        let mut pending_c: Vec<_> = doc.coalgebras.iter().collect();
        while !pending_a.is_empty() || !pending_c.is_empty() {
            let before = pending_a.len() + pending_c.len();
            let mut rest_a = Vec::new();
            for (n, s) in pending_a {
                match self.build_algebra(n, s).map_err(|e| wrap(n, e))? {
                    Step::Built(a) => {
                        self.algebras.insert(n.clone(), Arc::new(a));
                    }
                    Step::Waiting => rest_a.push((n, s)),
                }
            }
            let mut rest_c = Vec::new();
            for (n, s) in pending_c {
                match self.build_coalgebra(n, s).map_err(|e| wrap(n, e))? {
                    Step::Built(c) => {
                        self.coalgebras.insert(n.clone(), Arc::new(c));
                    }
                    Step::Waiting => rest_c.push((n, s)),
                }
            }
            pending_a = rest_a;
            pending_c = rest_c;
            if pending_a.len() + pending_c.len() == before {
                let stuck: Vec<&str> = pending_a.iter().map(|(n, _)| n.as_str()).chain(pending_c.iter().map(|(n, _)| n.as_str())).collect();
                return Err(Error::Invalid(format!("circular bar/cobar definitions: {}", stuck.join(", "))));
            }
        }
        Ok(())
    }

    fn build_algebra(&self, name: &str, spec: &AlgebraSpec) -> Result<Step<Algebra>> {
        let a = match spec {
            AlgebraSpec::Table { operad, space, differential: d, products } => {
                let op = lookup(&self.operads, operad)?.clone();
                let sp = lookup(&self.spaces, space)?.clone();
                let rules = products
                    .iter()
                    .map(|p| {
                        let sym = p.op.clone().unwrap_or_else(|| crate::operad::as_symbol(p.inputs.len()));
                        let operation = op.collection().locate(&sym)?;
                        let inputs = p.inputs.iter().map(|s| sp.require(s)).collect::<Result<Vec<_>>>()?;
                        Ok(ProductRule { operation, inputs, output: terms(&sp, &p.output)? })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Algebra::from_table(name, op, sp.clone(), differential(&sp, d)?, rules)?
            }
            AlgebraSpec::Associative { operad, space, differential: d, product } => {
                let op = lookup(&self.operads, operad)?.clone();
                let sp = lookup(&self.spaces, space)?.clone();
                let table = product
                    .iter()
                    .map(|p| match p.inputs.as_slice() {
                        [x, y] => Ok(((sp.require(x)?, sp.require(y)?), terms(&sp, &p.output)?)),
                        _ => Err(Error::Shape("binary products take two inputs".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Algebra::associative(name, op, sp.clone(), differential(&sp, d)?, table)?
            }
            AlgebraSpec::Free { operad, generators, weight, differential: d } => {
                let op = lookup(&self.operads, operad)?.clone();
                let sp = lookup(&self.spaces, generators)?.clone();
                let dv = differential(&sp, d)?;
                Algebra::free(name, op, sp, dv.as_ref(), *weight)?
            }
            AlgebraSpec::Cobar { twisting, coalgebra, weight } => {
                let alpha = lookup(&self.twisting, twisting)?;
                match self.coalgebras.get(coalgebra) {
                    Some(c) => cobar(alpha, c, *weight)?,
                    None if self.document.coalgebras.contains_key(coalgebra) => return Ok(Step::Waiting),
                    None => return Err(Error::Reference(coalgebra.clone())),
                }
            }
        };
        Ok(Step::Built(a))
    }

    fn build_coalgebra(&self, name: &str, spec: &CoalgebraSpec) -> Result<Step<Coalgebra>> {
        let c = match spec {
            CoalgebraSpec::Table { cooperad, space, differential: d, delta } => {
                let co = lookup(&self.cooperads, cooperad)?.clone();
                let sp = lookup(&self.spaces, space)?.clone();
                let ts = delta
                    .iter()
                    .map(|t| {
                        let term = CoTerm {
                            op: co.collection().locate(&t.op)?,
                            inputs: t.inputs.iter().map(|s| sp.require(s)).collect::<Result<Vec<_>>>()?,
                            coeff: parse_scalar(&t.coeff)?,
                        };
                        Ok((sp.require(&t.element)?, term))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Coalgebra::from_terms(name, co, sp.clone(), differential(&sp, d)?, ts)?
            }
            CoalgebraSpec::Cofree { cooperad, generators, weight, differential: d } => {
                let co = lookup(&self.cooperads, cooperad)?.clone();
                let sp = lookup(&self.spaces, generators)?.clone();
                let dv = differential(&sp, d)?;
                Coalgebra::cofree(name, co, sp, dv.as_ref(), *weight)?
            }
            CoalgebraSpec::Bar { twisting, algebra, weight } => {
                let alpha = lookup(&self.twisting, twisting)?;
                match self.algebras.get(algebra) {
                    Some(a) => bar(alpha, a, *weight)?,
                    None if self.document.algebras.contains_key(algebra) => return Ok(Step::Waiting),
                    None => return Err(Error::Reference(algebra.clone())),
                }
            }
        };
        Ok(Step::Built(c))
    }
}

fn wrap(name: &str, e: Error) -> Error {
    match e {
        Error::Reference(_) => e,
        e => Error::Invalid(format!("{name}: {e}")),
    }
}
