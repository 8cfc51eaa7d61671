//! The verification suites and the enumeration command.

use std::str::FromStr;
use std::sync::Arc;

use anyhow::Result;
use monocat_core::ar::{
    check_component_translates, find_ar_conflation_ending_at, is_almost_split, translation_agreement,
};
use monocat_core::exact::{
    brute_force_injective, brute_force_projective, check_axioms, classify_injective, classify_projective,
    injective_dimension, projective_dimension, HomDim,
};
use monocat_core::functor::{all_extensions, stable_equivalence_check, verify_psi_properties, Extension};
use monocat_core::module::{enumerate_indecomposables, is_isomorphic};
use monocat_core::morph::enumerate_s_indecomposables;
use monocat_core::{
    Algebra, Budget, Conflation, ConflationTable, Module, MorphCat, MorphMap, MorphObj, StableAuslander, StructureKind,
    Subcat,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{input_error, RunConfig};
use crate::formats::{to_value, AlgebraSpec, ConflationSpec, ModuleSpec, MorphMapSpec, MorphObjSpec, SequenceSpec};
use crate::report::{Claim, Header, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Classify,
    Psi,
    Counting,
    Hereditary,
    Frobenius,
    Ar,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Axioms, Suite::Classify, Suite::Psi, Suite::Counting, Suite::Hereditary, Suite::Frobenius, Suite::Ar];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Classify => "classify",
            Suite::Psi => "psi",
            Suite::Counting => "counting",
            Suite::Hereditary => "hereditary",
            Suite::Frobenius => "frobenius",
            Suite::Ar => "ar",
        }
    }
}

impl FromStr for Suite {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| input_error(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectClass {
    /// Indecomposable modules of the subcategory.
    Modules,
    /// Indecomposable objects of the monomorphism category.
    S,
    /// Indecomposable modules over the stable Auslander algebra.
    Gamma,
}

impl FromStr for ObjectClass {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<ObjectClass> {
        match s {
            "modules" => Ok(ObjectClass::Modules),
            "s" => Ok(ObjectClass::S),
            "gamma" => Ok(ObjectClass::Gamma),
            _ => Err(input_error(format!("unknown object class {s:?}"))),
        }
    }
}

/// The resolved algebra, subcategory and enumerated objects of a run.
pub struct Context {
    pub alg: Arc<Algebra>,
    pub cat: Arc<MorphCat>,
    pub sub: Subcat,
    pub bound: usize,
    pub object_bound: usize,
    pub kinds: Vec<StructureKind>,
    pub subcat_label: String,
    pub budget: Budget,
}

impl Context {
    pub fn new(config: &RunConfig, subcat_label: &str, budget: Budget) -> Result<Context> {
        let alg = Arc::new(config.algebra.load(config.p)?);
        let bound = config.bound.unwrap_or_else(|| alg.dim());
        let sub = config.subcat.load(&alg, bound, &budget)?;
        let cat = MorphCat::new(alg.clone())?;
        Ok(Context {
            alg,
            cat,
            sub,
            bound,
            object_bound: config.object_bound.unwrap_or(3 * bound),
            kinds: config.kinds.clone(),
            subcat_label: subcat_label.to_string(),
            budget,
        })
    }

    /// From already built parts, for library users and tests.
    pub fn from_parts(sub: Subcat, bound: usize, kinds: Vec<StructureKind>) -> Result<Context> {
        let alg = sub.algebra().clone();
        let cat = MorphCat::new(alg.clone())?;
        Ok(Context {
            alg,
            cat,
            sub,
            bound,
            object_bound: 3 * bound,
            kinds,
            subcat_label: "all".into(),
            budget: Budget::unlimited(),
        })
    }

    fn header(&self, command: &str, suite: Option<Suite>) -> Header {
        Header {
            command: command.into(),
            suite: suite.map(|s| s.name().to_string()),
            algebra: self.alg.name().to_string(),
            p: self.alg.p(),
            bound: self.bound,
            object_bound: self.object_bound,
            subcat: self.subcat_label.clone(),
            kinds: self.kinds.iter().map(|k| k.name().to_string()).collect(),
        }
    }

    /// Indecomposable objects of `S_X(Λ)` with `dim A + dim B` at most the object bound.
    pub fn s_objects(&self) -> Result<Vec<MorphObj>> {
        Ok(enumerate_s_indecomposables(&self.cat, &self.sub, self.object_bound, &self.budget)?)
    }

    pub fn table(&self, objects: &[MorphObj]) -> Result<ConflationTable> {
        Ok(ConflationTable::build(objects, &self.sub, &self.budget)?)
    }

    pub fn stable_auslander(&self) -> Result<StableAuslander> {
        Ok(StableAuslander::new(&self.cat, &self.sub)?)
    }

    pub fn gamma_indecomposables(&self, sa: &StableAuslander) -> Result<Vec<Module>> {
        let g = sa.gamma();
        Ok(enumerate_indecomposables(g, g.dim(), &self.budget)?)
    }
}

pub fn obj(x: &MorphObj) -> Value {
    to_value(&MorphObjSpec::from_obj(x))
}

pub fn conflation(c: &Conflation) -> Value {
    to_value(&ConflationSpec::from_conflation(c))
}

pub fn morph_map(m: &MorphMap) -> Value {
    json!({
        "source": obj(m.source()),
        "target": obj(m.target()),
        "map": to_value(&MorphMapSpec::from_map(m)),
    })
}

fn module(m: &Module) -> Value {
    to_value(&ModuleSpec::from_module(m))
}

/// Runs one claim; errors become inconclusive or failing claims instead of aborting the suite.
fn attempt(name: String, f: impl FnOnce() -> monocat_core::Result<Claim>) -> Claim {
    match f() {
        Ok(c) => c,
        Err(e) if e.is_inconclusive() => Claim::inconclusive(name, e.to_string()),
        Err(e) => Claim::new(name, false).with("error", e.to_string()),
    }
}

fn hom_dim_value(d: HomDim) -> Value {
    match d {
        HomDim::Exactly(n) => json!(n),
        HomDim::AtLeast(n) => json!(format!(">={n}")),
    }
}

#[derive(Serialize)]
struct KindSets {
    kind: StructureKind,
    projective: Vec<usize>,
    injective: Vec<usize>,
}

fn kind_sets(kind: StructureKind, objects: &[MorphObj], sub: &Subcat) -> monocat_core::Result<KindSets> {
    let mut projective = Vec::new();
    let mut injective = Vec::new();
    for (k, x) in objects.iter().enumerate() {
        if classify_projective(kind, x, sub)? {
            projective.push(k);
        }
        if classify_injective(kind, x, sub)? {
            injective.push(k);
        }
    }
    Ok(KindSets { kind, projective, injective })
}

pub fn run_suite(ctx: &Context, suite: Suite) -> Result<Report> {
    let objects = ctx.s_objects()?;
    let claims = match suite {
        Suite::Axioms => axioms(ctx, &objects)?,
        Suite::Classify => classify(ctx, &objects)?,
        Suite::Psi => psi(ctx, &objects)?,
        Suite::Counting => counting(ctx, &objects)?,
        Suite::Hereditary => hereditary(ctx, &objects),
        Suite::Frobenius => frobenius(ctx, &objects),
        Suite::Ar => ar(ctx, &objects)?,
    };
    Ok(Report::new(ctx.header("verify", Some(suite)), objects.iter().map(obj).collect(), claims))
}

fn axioms(ctx: &Context, objects: &[MorphObj]) -> Result<Vec<Claim>> {
    let table = ctx.table(objects)?;
    let mut claims = Vec::new();
    for &kind in &ctx.kinds {
        for r in check_axioms(kind, &table, &ctx.sub, &ctx.budget)? {
            let mut c = Claim::new(format!("{kind}:{}", r.axiom), r.passed())
                .with("axiom", r.axiom)
                .with("kind", kind)
                .with("checked", r.checked);
            if let Some(w) = &r.witness {
                c = c.witness(json!({
                    "detail": w.detail,
                    "conflations": w.conflations.iter().map(conflation).collect::<Vec<_>>(),
                    "maps": w.maps.iter().map(morph_map).collect::<Vec<_>>(),
                }));
            }
            claims.push(c);
        }
    }
    Ok(claims)
}

fn classify(ctx: &Context, objects: &[MorphObj]) -> Result<Vec<Claim>> {
    let table = ctx.table(objects)?;
    let mut claims = Vec::new();
    let mut agreements = 0;
    let mut comparisons = 0;
    for &kind in &ctx.kinds {
        for (k, x) in objects.iter().enumerate() {
            for side in ["projective", "injective"] {
                let name = format!("{kind}:{side}:{k}");
                let c = attempt(name.clone(), || {
                    let (closed, oracle) = if side == "projective" {
                        (classify_projective(kind, x, &ctx.sub)?, brute_force_projective(kind, x, &table)?)
                    } else {
                        (classify_injective(kind, x, &ctx.sub)?, brute_force_injective(kind, x, &table)?)
                    };
                    let mut c = Claim::new(name, closed == oracle)
                        .with("kind", kind)
                        .with("side", side)
                        .with("object", k)
                        .with("closed_form", closed)
                        .with("oracle", oracle);
                    if closed != oracle {
                        c = c.witness(json!({ "object": obj(x) }));
                    }
                    Ok(c)
                });
                comparisons += 1;
                if c.passed() {
                    agreements += 1;
                }
                claims.push(c);
            }
        }
    }
    let sets =
        ctx.kinds.iter().map(|&kind| kind_sets(kind, objects, &ctx.sub)).collect::<monocat_core::Result<Vec<_>>>()?;
    claims.push(
        Claim::new("oracle-agreements", agreements == comparisons)
            .with("agreements", agreements)
            .with("comparisons", comparisons)
            .with("sets", sets),
    );
    Ok(claims)
}

fn counting(ctx: &Context, objects: &[MorphObj]) -> Result<Vec<Claim>> {
    let sa = ctx.stable_auslander()?;
    let gamma = ctx.gamma_indecomposables(&sa)?;
    let generators = ctx.sub.generators().len();
    let ok = objects.len() == gamma.len() + 2 * generators;
    Ok(vec![Claim::new("s-objects-equal-gamma-modules-plus-twice-generators", ok)
        .with("s_objects", objects.len())
        .with("gamma_modules", gamma.len())
        .with("generators", generators)
        .with("gamma_dim", sa.gamma().dim())
        .with("gamma_vertices", sa.gamma().num_vertices())])
}

fn hereditary(ctx: &Context, objects: &[MorphObj]) -> Vec<Claim> {
    let kind = StructureKind::Cw;
    objects
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let name = format!("cw:dimensions:{k}");
            attempt(name.clone(), || {
                let pd = projective_dimension(kind, x, &ctx.sub, 4)?;
                let id = injective_dimension(kind, x, &ctx.sub, 4)?;
                let ok = pd.at_most(1) && id.at_most(1);
                let mut c = Claim::new(name, ok)
                    .with("kind", kind)
                    .with("object", k)
                    .with("pd", hom_dim_value(pd))
                    .with("id", hom_dim_value(id));
                if !ok {
                    c = c.witness(json!({ "object": obj(x) }));
                }
                Ok(c)
            })
        })
        .collect()
}

fn frobenius(ctx: &Context, objects: &[MorphObj]) -> Vec<Claim> {
    ctx.kinds
        .iter()
        .filter(|&&k| k != StructureKind::Cw)
        .map(|&kind| {
            let name = format!("{kind}:projectives-equal-injectives");
            attempt(name.clone(), || {
                let sets = kind_sets(kind, objects, &ctx.sub)?;
                let ok = sets.projective == sets.injective;
                let mut c = Claim::new(name, ok)
                    .with("kind", kind)
                    .with("projective", &sets.projective)
                    .with("injective", &sets.injective);
                if !ok {
                    let odd: Vec<Value> = (0..objects.len())
                        .filter(|k| sets.projective.contains(k) != sets.injective.contains(k))
                        .map(|k| json!({ "index": k, "object": obj(&objects[k]) }))
                        .collect();
                    c = c.witness(odd);
                }
                Ok(c)
            })
        })
        .collect()
}

fn psi(ctx: &Context, objects: &[MorphObj]) -> Result<Vec<Claim>> {
    let table = ctx.table(objects)?;
    let sa = ctx.stable_auslander()?;
    let gamma = ctx.gamma_indecomposables(&sa)?;
    let r = verify_psi_properties(&sa, &table, &gamma, &ctx.budget)?;
    let mut claims = Vec::new();
    let entry = |k: usize| json!({ "entry": k, "conflation": conflation(&table.entries[k].conflation) });

    let mut c = Claim::new("exact-on-scw-conflations", r.exact_on_scw()).with("checked", r.scw_checked);
    if let Some(&k) = r.scw_non_exact.first() {
        c = c.witness(entry(k));
    }
    claims.push(c);

    let mut c = Claim::new("some-canonical-conflation-not-exact", r.canonical_witness().is_some())
        .with("non_exact", r.canonical_non_exact.len());
    if let Some(k) = r.canonical_witness() {
        let image = sa.psi_conflation(&table.entries[k].conflation)?;
        let mut w = entry(k);
        w["image"] = to_value(&SequenceSpec::from_maps(&image.i, &image.p));
        c = c.witness(w);
    }
    claims.push(c);

    let mut c = Claim::new("dense", r.dense()).with("gamma_modules", gamma.len()).with("hits", r.density_hits());
    if let Some(g) = r.density.iter().position(|h| h.is_none()) {
        c = c.witness(json!({ "gamma_module": module(&gamma[g]) }));
    }
    claims.push(c);

    let pair = |(i, j): (usize, usize)| json!({ "source": i, "target": j });
    let mut c = Claim::new("full", r.full());
    if let Some(&p) = r.fullness_failures.first() {
        c = c.witness(pair(p));
    }
    claims.push(c);
    let mut c = Claim::new("objective", r.objective());
    if let Some(&p) = r.objectivity_failures.first() {
        c = c.witness(pair(p));
    }
    claims.push(c);

    claims.push(attempt("stable-equivalence".into(), || {
        let eq = stable_equivalence_check(&sa, objects, &ctx.sub, &gamma)?;
        Ok(Claim::new("stable-equivalence", eq.passed())
            .with("objects", &eq.objects)
            .with("images", &eq.images)
            .with("non_projective_functors", &eq.non_projective_functors)
            .with("s_table", &eq.s_table)
            .with("gamma_table", &eq.gamma_table))
    }));

    for Extension { first: k1, last: k3, class, sequence: seq } in all_extensions(&gamma)? {
        let name = format!("horseshoe:{k1}:{k3}:{class:?}");
        claims.push(attempt(name.clone(), || {
            let c = sa.horseshoe_lift(&seq, objects, &ctx.sub)?;
            let image = sa.psi_conflation(&c)?;
            let ok = image.is_exact() && is_isomorphic(image.middle(), seq.middle())?.is_some();
            Ok(Claim::new(name, ok).with("first", k1).with("last", k3).with("class", &class).witness(json!({
                "extension": to_value(&SequenceSpec::from_maps(&seq.i, &seq.p)),
                "conflation": conflation(&c),
            })))
        }));
    }
    Ok(claims)
}

fn ar(ctx: &Context, objects: &[MorphObj]) -> Result<Vec<Claim>> {
    let table = ctx.table(objects)?;
    let mut claims = Vec::new();
    for &kind in &ctx.kinds {
        for (k, y) in objects.iter().enumerate() {
            if classify_projective(kind, y, &ctx.sub)? {
                continue;
            }
            let name = format!("{kind}:almost-split:{k}");
            claims.push(attempt(name.clone(), || {
                let found = find_ar_conflation_ending_at(kind, k, &table, &ctx.sub)?;
                let ok = is_almost_split(&found.candidate, objects)?;
                Ok(Claim::new(name, ok)
                    .with("kind", kind)
                    .with("end", k)
                    .with("passing_classes", found.passing)
                    .witness(json!({ "conflation": conflation(&found.candidate.conflation) })))
            }));
        }
    }
    if ctx.kinds.len() == StructureKind::ALL.len() {
        for k in 0..objects.len() {
            let name = format!("translation-agreement:{k}");
            match translation_agreement(k, &table, &ctx.sub) {
                Ok(None) => {}
                Ok(Some(a)) => claims.push(
                    Claim::new(name, a.agree)
                        .with("end", k)
                        .witness(json!({ "starts": a.starts.iter().map(obj).collect::<Vec<_>>() })),
                ),
                Err(e) => claims.push(attempt(name, || Err(e))),
            }
        }
    }
    if ctx.kinds.contains(&StructureKind::Canonical) {
        for (k, y) in objects.iter().enumerate() {
            if classify_projective(StructureKind::Canonical, y, &ctx.sub)? {
                continue;
            }
            let name = format!("component-translates:{k}");
            claims.push(attempt(name.clone(), || {
                let r = check_component_translates(k, &table, &ctx.sub)?;
                Ok(Claim::new(name, r.passed())
                    .with("end", k)
                    .with("first_agrees", r.first_agrees)
                    .with("second_agrees", r.second_agrees)
                    .witness(json!({
                        "start": obj(&r.start),
                        "first": module(&r.first),
                        "translate_of_target": module(&r.translate_of_target),
                        "second": module(&r.second),
                        "translate_of_cokernel": module(&r.translate_of_cokernel),
                    })))
            }));
        }
    }
    Ok(claims)
}

/// Listing of enumerated indecomposables.
#[derive(Serialize)]
pub struct Enumeration {
    #[serde(flatten)]
    pub header: Header,
    pub objects: &'static str,
    pub count: usize,
    /// The stable Auslander algebra, when listing its modules.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<AlgebraSpec>,
    pub items: Vec<Value>,
}

pub fn run_enumerate(ctx: &Context, class: ObjectClass) -> Result<Enumeration> {
    let (label, gamma, items) = match class {
        ObjectClass::Modules => ("modules", None, ctx.sub.generators().iter().map(module).collect()),
        ObjectClass::S => ("s", None, ctx.s_objects()?.iter().map(obj).collect()),
        ObjectClass::Gamma => {
            let sa = ctx.stable_auslander()?;
            let mods = ctx.gamma_indecomposables(&sa)?;
            ("gamma", Some(AlgebraSpec::from_algebra(sa.gamma())), mods.iter().map(module).collect::<Vec<_>>())
        }
    };
    Ok(Enumeration { header: ctx.header("enumerate", None), objects: label, count: items.len(), gamma, items })
}
