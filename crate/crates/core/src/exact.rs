//! The three exact structures on `S_X(Λ)`: canonical (componentwise exact), component-wise
//! split, and split on cokernels.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::SpanBuilder;
use crate::module::{
    self, all_vectors, factor_through_epi, factor_through_left, factor_through_mono, factor_through_right, hom_space,
    pullback, pushout, Ext1, ModMap, Module, ShortExact,
};
use crate::morph::{
    decompose_morph, decompose_morph_with_maps, hom_morph, is_isomorphic_morph, is_left_minimal, is_object_of_s,
    MorphCat, MorphMap, MorphObj,
};
use crate::subcat::Subcat;
use alloc::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum StructureKind {
    Canonical,
    Cw,
    Scw,
}

impl StructureKind {
    pub const ALL: [StructureKind; 3] = [StructureKind::Canonical, StructureKind::Cw, StructureKind::Scw];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Canonical => "canonical",
            StructureKind::Cw => "cw",
            StructureKind::Scw => "scw",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(StructureKind::Canonical),
            "cw" => Ok(StructureKind::Cw),
            "scw" => Ok(StructureKind::Scw),
            _ => Err(Error::InvalidInput(format!("unknown exact structure {s:?}"))),
        }
    }
}

/// A componentwise short exact sequence `0 -> X -> Z -> Y -> 0` in the morphism category.
#[derive(Clone, Debug)]
pub struct Conflation {
    pub i: MorphMap,
    pub p: MorphMap,
}

impl Conflation {
    pub fn new(i: MorphMap, p: MorphMap) -> Result<Conflation> {
        if i.target() != p.source() {
            return Err(Error::InvalidInput("maps of the conflation are not composable".into()));
        }
        let c = Conflation { i, p };
        let seq = c.as_t2();
        if !seq.p.compose(&seq.i).is_zero() {
            return Err(Error::InvalidInput("composite of the conflation maps is nonzero".into()));
        }
        for (v, (ib, pb)) in seq.i.blocks().iter().zip(seq.p.blocks()).enumerate() {
            let mid = ib.rows();
            if ib.rank() != ib.cols() || pb.rank() != pb.rows() || ib.cols() + pb.rows() != mid {
                return Err(Error::InvalidInput(format!("sequence is not exact at T2 vertex {v}")));
            }
        }
        Ok(c)
    }

    /// The conflation with the given inflation and its cokernel.
    pub fn from_inflation(i: MorphMap) -> Result<Conflation> {
        let (c, q) = module::cokernel(i.t2());
        let y = MorphObj::from_t2(i.source().cat(), &c)?;
        let p = MorphMap::from_t2(i.target(), &y, q.with_ends(i.target().t2(), y.t2()));
        Conflation::new(i, p)
    }

    /// The conflation with the given deflation and its kernel.
    pub fn from_deflation(p: MorphMap) -> Result<Conflation> {
        let (k, incl) = module::kernel(p.t2());
        let x = MorphObj::from_t2(p.source().cat(), &k)?;
        let i = MorphMap::from_t2(&x, p.source(), incl.with_ends(x.t2(), p.source().t2()));
        Conflation::new(i, p)
    }

    pub fn from_t2(cat: &Arc<MorphCat>, seq: &ShortExact) -> Result<Conflation> {
        let x = MorphObj::from_t2(cat, seq.i.source())?;
        let z = MorphObj::from_t2(cat, seq.i.target())?;
        let y = MorphObj::from_t2(cat, seq.p.target())?;
        Conflation::new(MorphMap::from_t2(&x, &z, seq.i.clone()), MorphMap::from_t2(&z, &y, seq.p.clone()))
    }

    /// `0 -> X -> X ⊕ Y -> Y -> 0`.
    pub fn split(x: &MorphObj, y: &MorphObj) -> Result<Conflation> {
        let sum = module::direct_sum(x.cat().t2(), &[x.t2().clone(), y.t2().clone()])?;
        let z = MorphObj::from_t2(x.cat(), &sum.module)?;
        Conflation::new(
            MorphMap::from_t2(x, &z, sum.injections[0].with_ends(x.t2(), z.t2())),
            MorphMap::from_t2(&z, y, sum.projections[1].with_ends(z.t2(), y.t2())),
        )
    }

    pub fn x(&self) -> &MorphObj {
        self.i.source()
    }

    pub fn middle(&self) -> &MorphObj {
        self.i.target()
    }

    pub fn y(&self) -> &MorphObj {
        self.p.target()
    }

    pub fn as_t2(&self) -> ShortExact {
        ShortExact { i: self.i.t2().clone(), p: self.p.t2().clone() }
    }

    /// `0 -> A_X -> A_Z -> A_Y -> 0`.
    pub fn first_row(&self) -> ShortExact {
        ShortExact { i: self.i.phi1(), p: self.p.phi1() }
    }

    /// `0 -> B_X -> B_Z -> B_Y -> 0`.
    pub fn second_row(&self) -> ShortExact {
        ShortExact { i: self.i.phi2(), p: self.p.phi2() }
    }

    /// The induced sequence of cokernels; exact when all three terms are monomorphisms.
    pub fn cokernel_row(&self) -> ShortExact {
        let (_, qx) = self.x().cokernel();
        let (_, qz) = self.middle().cokernel();
        let (_, qy) = self.y().cokernel();
        ShortExact {
            i: factor_through_epi(&qx, &qz.compose(&self.i.phi2())),
            p: factor_through_epi(&qz, &qy.compose(&self.p.phi2())),
        }
    }
}

/// True when the short exact sequence splits, i.e. the first map has a retraction.
pub fn is_split_ses(seq: &ShortExact) -> Result<bool> {
    if !seq.is_exact() {
        let locus = (0..seq.i.blocks().len())
            .find(|&v| {
                let (ib, pb) = (&seq.i.blocks()[v], &seq.p.blocks()[v]);
                ib.rank() != ib.cols() || pb.rank() != pb.rows() || ib.cols() + pb.rows() != ib.rows()
            })
            .unwrap_or(0);
        return Err(Error::Precondition(format!("not a short exact sequence at vertex {locus}")));
    }
    Ok(factor_through_right(&seq.i, &ModMap::identity(seq.i.source()))?.is_some())
}

/// Whether `c` is a conflation of the given exact structure on `S_X(Λ)`.
pub fn is_conflation(kind: StructureKind, c: &Conflation, sub: &Subcat) -> Result<bool> {
    for t in [c.x(), c.middle(), c.y()] {
        if !is_object_of_s(t, sub)? {
            return Ok(false);
        }
    }
    if kind == StructureKind::Canonical {
        return Ok(true);
    }
    if !is_split_ses(&c.first_row())? || !is_split_ses(&c.second_row())? {
        return Ok(false);
    }
    if kind == StructureKind::Cw {
        return Ok(true);
    }
    is_split_ses(&c.cokernel_row())
}

/// The strongest kinds `c` belongs to, as flags indexed like [`StructureKind::ALL`].
/// Assumes the three terms lie in `S_X(Λ)`.
fn kind_flags(c: &Conflation) -> Result<[bool; 3]> {
    let cw = is_split_ses(&c.first_row())? && is_split_ses(&c.second_row())?;
    let scw = cw && is_split_ses(&c.cokernel_row())?;
    Ok([true, cw, scw])
}

/// One conflation of the given kind per class of `Ext^1(y, x)` whose middle term lies in `S_X(Λ)`.
pub fn enumerate_conflations(
    kind: StructureKind,
    x: &MorphObj,
    y: &MorphObj,
    sub: &Subcat,
    budget: &Budget,
) -> Result<Vec<Conflation>> {
    let ext = Ext1::new(y.t2(), x.t2())?;
    let mut out = Vec::new();
    for class in ext.all_classes() {
        budget.tick(|| format!("conflation class {class:?}"))?;
        let c = Conflation::from_t2(x.cat(), &ext.sequence(&class))?;
        if is_conflation(kind, &c, sub)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// A conflation between two enumerated indecomposables.
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub start: usize,
    pub end: usize,
    pub class: Vec<u32>,
    pub conflation: Conflation,
    kinds: [bool; 3],
}

impl TableEntry {
    pub fn is_kind(&self, kind: StructureKind) -> bool {
        self.kinds[kind.index()]
    }
}

/// Every conflation class, in any of the three structures, between enumerated indecomposables.
#[derive(Clone, Debug)]
pub struct ConflationTable {
    pub objects: Vec<MorphObj>,
    pub entries: Vec<TableEntry>,
}

impl ConflationTable {
    pub fn build(objects: &[MorphObj], sub: &Subcat, budget: &Budget) -> Result<ConflationTable> {
        let mut entries = Vec::new();
        for (end, y) in objects.iter().enumerate() {
            for (start, x) in objects.iter().enumerate() {
                let ext = Ext1::new(y.t2(), x.t2())?;
                for class in ext.all_classes() {
                    budget.tick(|| format!("conflation class {class:?} between objects {start} and {end}"))?;
                    let c = Conflation::from_t2(x.cat(), &ext.sequence(&class))?;
                    if !is_object_of_s(c.middle(), sub)? {
                        continue;
                    }
                    let kinds = kind_flags(&c)?;
                    entries.push(TableEntry { start, end, class, conflation: c, kinds });
                }
            }
        }
        Ok(ConflationTable { objects: objects.to_vec(), entries })
    }

    pub fn of_kind(&self, kind: StructureKind) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter().filter(move |e| e.is_kind(kind))
    }

    pub fn ending_at(&self, kind: StructureKind, end: usize) -> impl Iterator<Item = &TableEntry> {
        self.of_kind(kind).filter(move |e| e.end == end)
    }

    pub fn starting_at(&self, kind: StructureKind, start: usize) -> impl Iterator<Item = &TableEntry> {
        self.of_kind(kind).filter(move |e| e.start == start)
    }
}

fn span_dim(vs: impl Iterator<Item = Vec<u32>>, p: u32, len: usize) -> usize {
    let mut span = SpanBuilder::new(p, len);
    for v in vs {
        span.insert(&v);
    }
    span.dim()
}

/// Lifting oracle: every map from `x` to the end term of a tabulated conflation of this kind
/// lifts through its deflation. Verdict relative to the table's bound.
pub fn brute_force_projective(kind: StructureKind, x: &MorphObj, table: &ConflationTable) -> Result<bool> {
    let p = x.t2().p();
    for e in table.of_kind(kind) {
        let c = &e.conflation;
        let target = hom_space(x.t2(), c.y().t2())?;
        if target.is_empty() {
            continue;
        }
        let len = target[0].flatten().len();
        let image = hom_space(x.t2(), c.middle().t2())?.into_iter().map(|h| c.p.t2().compose(&h).flatten());
        if span_dim(image, p, len) != target.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extension oracle, dual to [`brute_force_projective`].
pub fn brute_force_injective(kind: StructureKind, x: &MorphObj, table: &ConflationTable) -> Result<bool> {
    let p = x.t2().p();
    for e in table.of_kind(kind) {
        let c = &e.conflation;
        let target = hom_space(c.x().t2(), x.t2())?;
        if target.is_empty() {
            continue;
        }
        let len = target[0].flatten().len();
        let image = hom_space(c.middle().t2(), x.t2())?.into_iter().map(|h| h.compose(c.i.t2()).flatten());
        if span_dim(image, p, len) != target.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn each_summand(x: &MorphObj, mut test: impl FnMut(&MorphObj) -> Result<bool>) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    for (s, _) in decompose_morph(x)? {
        if !test(&s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed-form projectivity: `(P = P)`, `(0 -> P)` for the canonical structure; `(X = X)`,
/// `(0 -> X)` for CW; additionally `(Ω(X) ↪ P_X)` for SCW.
pub fn classify_projective(kind: StructureKind, x: &MorphObj, _sub: &Subcat) -> Result<bool> {
    each_summand(x, |s| {
        let iso = s.f().is_iso();
        let from_zero = s.a().is_zero();
        Ok(match kind {
            StructureKind::Canonical => (iso || from_zero) && module::is_projective(s.b()),
            StructureKind::Cw => iso || from_zero,
            StructureKind::Scw => {
                if iso || from_zero {
                    true
                } else if module::is_projective(s.b()) {
                    let (c, _) = s.cokernel();
                    let omega = MorphObj::syzygy_of(s.cat(), &c)?;
                    is_isomorphic_morph(s, &omega)?.is_some()
                } else {
                    false
                }
            }
        })
    })
}

/// Closed-form injectivity: `(I = I)`, `(0 -> I)` with `I` relatively injective for the canonical
/// structure; `(X = X)`, left minimal `(X ↪ I)`, `(0 -> I)` for CW; `(X = X)`, left minimal
/// `(X ↪ I)`, `(0 -> X)` for SCW.
pub fn classify_injective(kind: StructureKind, x: &MorphObj, sub: &Subcat) -> Result<bool> {
    each_summand(x, |s| {
        let iso = s.f().is_iso();
        let from_zero = s.a().is_zero();
        let b_inj = sub.is_x_injective(s.b())?;
        Ok(match kind {
            StructureKind::Canonical => (iso || from_zero) && b_inj,
            StructureKind::Cw => iso || (from_zero && b_inj) || (b_inj && is_left_minimal(s.f())?),
            StructureKind::Scw => iso || from_zero || (b_inj && is_left_minimal(s.f())?),
        })
    })
}

pub(crate) fn sum_objects(cat: &Arc<MorphCat>, objs: &[MorphObj]) -> Result<(MorphObj, Vec<MorphMap>, Vec<MorphMap>)> {
    let mods: Vec<Module> = objs.iter().map(|o| o.t2().clone()).collect();
    let sum = module::direct_sum(cat.t2(), &mods)?;
    let z = MorphObj::from_t2(cat, &sum.module)?;
    let inj =
        objs.iter().zip(&sum.injections).map(|(o, m)| MorphMap::from_t2(o, &z, m.with_ends(o.t2(), z.t2()))).collect();
    let proj =
        objs.iter().zip(&sum.projections).map(|(o, m)| MorphMap::from_t2(&z, o, m.with_ends(z.t2(), o.t2()))).collect();
    Ok((z, inj, proj))
}

/// `[g_1 ... g_k]: ⊕ Z_j -> Y`.
fn out_of_sum(cat: &Arc<MorphCat>, parts: &[MorphMap], y: &MorphObj) -> Result<MorphMap> {
    let sources: Vec<MorphObj> = parts.iter().map(|g| g.source().clone()).collect();
    let (z, _, proj) = sum_objects(cat, &sources)?;
    let mut acc = MorphMap::zero(&z, y);
    for (g, q) in parts.iter().zip(&proj) {
        acc = acc.add(&g.compose(q));
    }
    Ok(acc)
}

/// `[g_1; ...; g_k]: X -> ⊕ Z_j`.
fn into_sum(cat: &Arc<MorphCat>, x: &MorphObj, parts: &[MorphMap]) -> Result<MorphMap> {
    let targets: Vec<MorphObj> = parts.iter().map(|g| g.target().clone()).collect();
    let (z, inj, _) = sum_objects(cat, &targets)?;
    let mut acc = MorphMap::zero(x, &z);
    for (g, i) in parts.iter().zip(&inj) {
        acc = acc.add(&i.compose(g));
    }
    Ok(acc)
}

fn zero_map(a: &Module, b: &Module) -> ModMap {
    ModMap::zero(a, b)
}

/// A conflation of the given kind ending at `x` whose middle term is projective in that structure.
pub fn standard_projective_deflation(kind: StructureKind, x: &MorphObj, sub: &Subcat) -> Result<Conflation> {
    let cat = x.cat().clone();
    let (a, b, f) = (x.a(), x.b(), x.f());
    let parts = match kind {
        StructureKind::Canonical => {
            let (pa, pi_a) = module::projective_cover(a);
            let (pb, pi_b) = module::projective_cover(b);
            let top = MorphObj::identity_on(&cat, &pa)?;
            let bottom = MorphObj::zero_into(&cat, &pb)?;
            vec![
                MorphMap::new(&top, x, &pi_a, &f.compose(&pi_a))?,
                MorphMap::new(&bottom, x, &zero_map(bottom.a(), a), &pi_b)?,
            ]
        }
        StructureKind::Cw => {
            let top = MorphObj::identity_on(&cat, a)?;
            let bottom = MorphObj::zero_into(&cat, b)?;
            vec![
                MorphMap::new(&top, x, &ModMap::identity(a), f)?,
                MorphMap::new(&bottom, x, &zero_map(bottom.a(), a), &ModMap::identity(b))?,
            ]
        }
        StructureKind::Scw => {
            let (c, q) = x.cokernel();
            let (_, pi_c) = module::projective_cover(&c);
            let omega = MorphObj::syzygy_of(&cat, &c)?;
            let g = factor_through_left(&q, &pi_c)?.expect("projective cover lifts");
            let h = factor_through_mono(f, &g.compose(omega.f()));
            let top = MorphObj::identity_on(&cat, a)?;
            let bottom = MorphObj::zero_into(&cat, b)?;
            vec![
                MorphMap::new(&omega, x, &h, &g)?,
                MorphMap::new(&top, x, &ModMap::identity(a), f)?,
                MorphMap::new(&bottom, x, &zero_map(bottom.a(), a), &ModMap::identity(b))?,
            ]
        }
    };
    let c = Conflation::from_deflation(out_of_sum(&cat, &parts, x)?)?;
    if !is_conflation(kind, &c, sub)? {
        return Err(Error::Precondition(format!("the standard {kind} deflation leaves the subcategory")));
    }
    Ok(c)
}

/// A conflation of the given kind starting at `x` whose middle term is injective in that structure.
pub fn standard_injective_inflation(kind: StructureKind, x: &MorphObj, sub: &Subcat) -> Result<Conflation> {
    let cat = x.cat().clone();
    let (a, b, f) = (x.a(), x.b(), x.f());
    let extend = |m: &ModMap| -> Result<ModMap> {
        factor_through_right(f, m)?.ok_or_else(|| {
            Error::EnoughInjectivesNotVerified("a relatively injective module does not extend along f".into())
        })
    };
    let parts = match kind {
        StructureKind::Canonical => {
            let ma = sub.injective_conflation(a)?.i;
            let (c, q) = x.cokernel();
            let mc = sub.injective_conflation(&c)?.i;
            let top = MorphObj::identity_on(&cat, ma.target())?;
            let bottom = MorphObj::zero_into(&cat, mc.target())?;
            vec![
                MorphMap::new(x, &top, &ma, &extend(&ma)?)?,
                MorphMap::new(x, &bottom, &zero_map(a, bottom.a()), &mc.compose(&q))?,
            ]
        }
        StructureKind::Cw => {
            let m = sub.injective_conflation(b)?.i;
            let left = MorphObj::new(&cat, m.compose(f))?;
            let same = MorphObj::identity_on(&cat, b)?;
            vec![MorphMap::new(x, &left, &ModMap::identity(a), &m)?, MorphMap::new(x, &same, f, &ModMap::identity(b))?]
        }
        StructureKind::Scw => {
            let ma = sub.injective_conflation(a)?.i;
            let (c, q) = x.cokernel();
            let left = MorphObj::new(&cat, ma.clone())?;
            let same = MorphObj::identity_on(&cat, b)?;
            let cok = MorphObj::zero_into(&cat, &c)?;
            vec![
                MorphMap::new(x, &left, &ModMap::identity(a), &extend(&ma)?)?,
                MorphMap::new(x, &same, f, &ModMap::identity(b))?,
                MorphMap::new(x, &cok, &zero_map(a, cok.a()), &q)?,
            ]
        }
    };
    let c = Conflation::from_inflation(into_sum(&cat, x, &parts)?)?;
    if !is_conflation(kind, &c, sub)? {
        return Err(Error::Precondition(format!("the standard {kind} inflation leaves the subcategory")));
    }
    Ok(c)
}

/// A homological dimension, or a lower bound when the length cap was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomDim {
    Exactly(usize),
    AtLeast(usize),
}

impl HomDim {
    pub fn at_most(self, n: usize) -> bool {
        matches!(self, HomDim::Exactly(d) if d <= n)
    }
}

/// Relative projective dimension. For non-projective `x` with syzygy `K` (the kernel of a
/// projective deflation), `pd x = 1 + pd K`, and `pd x = 1` exactly when `K` is projective.
pub fn projective_dimension(kind: StructureKind, x: &MorphObj, sub: &Subcat, cap: usize) -> Result<HomDim> {
    let mut cur = x.clone();
    for d in 0..=cap {
        if classify_projective(kind, &cur, sub)? {
            return Ok(HomDim::Exactly(d));
        }
        if d == cap {
            break;
        }
        cur = standard_projective_deflation(kind, &cur, sub)?.x().clone();
    }
    Ok(HomDim::AtLeast(cap + 1))
}

pub fn injective_dimension(kind: StructureKind, x: &MorphObj, sub: &Subcat, cap: usize) -> Result<HomDim> {
    let mut cur = x.clone();
    for d in 0..=cap {
        if classify_injective(kind, &cur, sub)? {
            return Ok(HomDim::Exactly(d));
        }
        if d == cap {
            break;
        }
        cur = standard_injective_inflation(kind, &cur, sub)?.y().clone();
    }
    Ok(HomDim::AtLeast(cap + 1))
}

/// Outcome of one axiom over the enumerated universe.
#[derive(Clone, Debug)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub checked: usize,
    pub witness: Option<AxiomWitness>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct AxiomWitness {
    pub detail: String,
    pub conflations: Vec<Conflation>,
    pub maps: Vec<MorphMap>,
}

/// Every map when the hom space has at most 16 elements, otherwise a basis plus pairwise sums.
fn test_maps(x: &MorphObj, y: &MorphObj) -> Result<Vec<MorphMap>> {
    let hom = hom_morph(x, y)?;
    let p = x.t2().p() as u64;
    if p.checked_pow(hom.len() as u32).is_some_and(|c| c <= 16) {
        let maps: Vec<ModMap> = hom.iter().map(|h| h.t2().clone()).collect();
        return Ok(all_vectors(x.t2().p(), hom.len())
            .iter()
            .filter(|c| c.iter().any(|&v| v != 0))
            .map(|c| MorphMap::from_t2(x, y, ModMap::combination(x.t2(), y.t2(), &maps, c)))
            .collect());
    }
    let mut out = hom.clone();
    for i in 0..hom.len() {
        for j in i + 1..hom.len() {
            out.push(hom[i].add(&hom[j]));
        }
    }
    Ok(out)
}

fn iso_if_same_dims(x: &MorphObj, y: &MorphObj) -> Result<Option<MorphMap>> {
    if x.t2().dims() != y.t2().dims() {
        return Ok(None);
    }
    is_isomorphic_morph(x, y)
}

/// Checks the exact category axioms (E0), (E1), (E2) and their duals on the table.
pub fn check_axioms(
    kind: StructureKind,
    table: &ConflationTable,
    sub: &Subcat,
    budget: &Budget,
) -> Result<Vec<AxiomResult>> {
    let objects = &table.objects;
    let cat = match objects.first() {
        Some(o) => o.cat().clone(),
        None => return Ok(Vec::new()),
    };
    let zero = MorphObj::zero(&cat);
    let mut results = Vec::new();
    let fail =
        |detail: String, conflations: Vec<Conflation>, maps: Vec<MorphMap>| AxiomWitness { detail, conflations, maps };

    // (E0) identities are deflations; (E0)^op identities are inflations.
    let mut e0 = AxiomResult { axiom: "E0", checked: 0, witness: None };
    let mut e0op = AxiomResult { axiom: "E0op", checked: 0, witness: None };
    for x in objects {
        let c = Conflation::new(MorphMap::zero(&zero, x), MorphMap::identity(x))?;
        e0.checked += 1;
        if e0.witness.is_none() && !is_conflation(kind, &c, sub)? {
            e0.witness = Some(fail("identity is not a deflation".into(), vec![c], vec![]));
        }
        let c = Conflation::new(MorphMap::identity(x), MorphMap::zero(x, &zero))?;
        e0op.checked += 1;
        if e0op.witness.is_none() && !is_conflation(kind, &c, sub)? {
            e0op.witness = Some(fail("identity is not an inflation".into(), vec![c], vec![]));
        }
    }
    results.push(e0);
    results.push(e0op);

    // (E1) composites of deflations; (E1)^op composites of inflations. A deflation onto one
    // summand of a middle term is extended by the identity on the other summands.
    let entries: Vec<&TableEntry> = table.of_kind(kind).collect();
    let mut e1 = AxiomResult { axiom: "E1", checked: 0, witness: None };
    let mut e1op = AxiomResult { axiom: "E1op", checked: 0, witness: None };
    for second in &entries {
        let c2 = &second.conflation;
        let parts = decompose_morph_with_maps(c2.middle())?;
        for (j, part) in parts.iter().enumerate() {
            for first in &entries {
                budget.tick(|| String::from("axiom E1"))?;
                let c1 = &first.conflation;
                let Some(iso) = iso_if_same_dims(c1.y(), &part.object)? else {
                    continue;
                };
                let mut pieces = vec![part.incl.compose(&iso).compose(&c1.p)];
                pieces.extend(parts.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, q)| q.incl.clone()));
                let comp = c2.p.compose(&out_of_sum(&cat, &pieces, c2.middle())?);
                let c = Conflation::from_deflation(comp.clone())?;
                e1.checked += 1;
                if e1.witness.is_none() && !is_conflation(kind, &c, sub)? {
                    e1.witness = Some(fail(
                        "composite of deflations is not a deflation".into(),
                        vec![c1.clone(), c2.clone()],
                        vec![comp],
                    ));
                }
            }
        }
    }
    for first in &entries {
        let c1 = &first.conflation;
        let parts = decompose_morph_with_maps(c1.middle())?;
        for (j, part) in parts.iter().enumerate() {
            for second in &entries {
                budget.tick(|| String::from("axiom E1op"))?;
                let c2 = &second.conflation;
                let Some(iso) = iso_if_same_dims(&part.object, c2.x())? else {
                    continue;
                };
                let mut pieces = vec![c2.i.compose(&iso).compose(&part.proj)];
                pieces.extend(parts.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, q)| q.proj.clone()));
                let comp = into_sum(&cat, c1.middle(), &pieces)?.compose(&c1.i);
                let c = Conflation::from_inflation(comp.clone())?;
                e1op.checked += 1;
                if e1op.witness.is_none() && !is_conflation(kind, &c, sub)? {
                    e1op.witness = Some(fail(
                        "composite of inflations is not an inflation".into(),
                        vec![c1.clone(), c2.clone()],
                        vec![comp],
                    ));
                }
            }
        }
    }
    results.push(e1);
    results.push(e1op);

    // (E2) pullbacks of deflations; (E2)^op pushouts of inflations.
    let mut e2 = AxiomResult { axiom: "E2", checked: 0, witness: None };
    let mut e2op = AxiomResult { axiom: "E2op", checked: 0, witness: None };
    for e in &entries {
        let c = &e.conflation;
        for u in objects {
            for h in test_maps(u, c.y())? {
                budget.tick(|| String::from("axiom E2"))?;
                let (pb, _, to_u) = pullback(c.p.t2(), h.t2());
                let e_obj = MorphObj::from_t2(&cat, &pb)?;
                let defl = MorphMap::from_t2(&e_obj, u, to_u.with_ends(e_obj.t2(), u.t2()));
                let new = Conflation::from_deflation(defl)?;
                e2.checked += 1;
                if e2.witness.is_none() && !is_conflation(kind, &new, sub)? {
                    e2.witness = Some(fail(
                        "pullback of a deflation is not a deflation".into(),
                        vec![c.clone(), new],
                        vec![h.clone()],
                    ));
                }
            }
            for h in test_maps(c.x(), u)? {
                budget.tick(|| String::from("axiom E2op"))?;
                let (po, _, from_u) = pushout(c.i.t2(), h.t2());
                let e_obj = MorphObj::from_t2(&cat, &po)?;
                let infl = MorphMap::from_t2(u, &e_obj, from_u.with_ends(u.t2(), e_obj.t2()));
                let new = Conflation::from_inflation(infl)?;
                e2op.checked += 1;
                if e2op.witness.is_none() && !is_conflation(kind, &new, sub)? {
                    e2op.witness = Some(fail(
                        "pushout of an inflation is not an inflation".into(),
                        vec![c.clone(), new],
                        vec![h.clone()],
                    ));
                }
            }
        }
    }
    results.push(e2);
    results.push(e2op);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::nilpotent_loop;
    use crate::module::jordan_block;
    use crate::morph::enumerate_s_indecomposables;

    struct Ctx {
        cat: Arc<MorphCat>,
        sub: Subcat,
        j1: Module,
        j2: Module,
    }

    fn ctx() -> Ctx {
        let a = Arc::new(nilpotent_loop(2, 2).unwrap());
        let cat = MorphCat::new(a.clone()).unwrap();
        let sub = Subcat::all(a.clone(), 2, &Budget::unlimited()).unwrap();
        Ctx { j1: jordan_block(&a, 1), j2: jordan_block(&a, 2), cat, sub }
    }

    fn socle(c: &Ctx) -> ModMap {
        hom_space(&c.j1, &c.j2).unwrap().remove(0)
    }

    #[test]
    fn split_sequences() {
        let c = ctx();
        let ext = Ext1::new(&c.j1, &c.j1).unwrap();
        assert!(is_split_ses(&ext.sequence(&[0])).unwrap());
        assert!(!is_split_ses(&ext.sequence(&[1])).unwrap());
        let z = Module::zero(c.cat.base().clone());
        let seq = ShortExact { i: ModMap::zero(&z, &c.j1), p: ModMap::identity(&c.j1) };
        assert!(is_split_ses(&seq).unwrap());
        let bad = ShortExact { i: ModMap::zero(&c.j1, &c.j1), p: ModMap::identity(&c.j1) };
        assert!(is_split_ses(&bad).is_err());
    }

    #[test]
    fn separating_conflations() {
        let c = ctx();
        let eq1 = MorphObj::identity_on(&c.cat, &c.j1).unwrap();
        let mono = MorphObj::new(&c.cat, socle(&c)).unwrap();
        let zj1 = MorphObj::zero_into(&c.cat, &c.j1).unwrap();
        // 0 -> (J1 = J1) -> (J1 -> J2) -> (0 -> J1) -> 0.
        let i = MorphMap::new(&eq1, &mono, &ModMap::identity(&c.j1), &socle(&c)).unwrap();
        let conf = Conflation::from_inflation(i).unwrap();
        assert!(is_isomorphic_morph(conf.y(), &zj1).unwrap().is_some());
        assert!(is_conflation(StructureKind::Canonical, &conf, &c.sub).unwrap());
        assert!(!is_conflation(StructureKind::Cw, &conf, &c.sub).unwrap());
        // The CW deflation onto (J1 -> J2) is CW but not SCW.
        let dag = standard_projective_deflation(StructureKind::Cw, &mono, &c.sub).unwrap();
        assert!(is_isomorphic_morph(dag.x(), &zj1).unwrap().is_some());
        assert!(is_conflation(StructureKind::Cw, &dag, &c.sub).unwrap());
        assert!(!is_conflation(StructureKind::Scw, &dag, &c.sub).unwrap());
        let split = Conflation::split(&eq1, &mono).unwrap();
        for kind in StructureKind::ALL {
            assert!(is_conflation(kind, &split, &c.sub).unwrap());
        }
    }

    #[test]
    fn closed_form_classification() {
        let c = ctx();
        let zj1 = MorphObj::zero_into(&c.cat, &c.j1).unwrap();
        let mono = MorphObj::new(&c.cat, socle(&c)).unwrap();
        let eq2 = MorphObj::identity_on(&c.cat, &c.j2).unwrap();
        use StructureKind::*;
        let proj = |k, x: &MorphObj| classify_projective(k, x, &c.sub).unwrap();
        let inj = |k, x: &MorphObj| classify_injective(k, x, &c.sub).unwrap();
        assert_eq!([proj(Canonical, &zj1), proj(Cw, &zj1), proj(Scw, &zj1)], [false, true, true]);
        assert_eq!([proj(Canonical, &mono), proj(Cw, &mono), proj(Scw, &mono)], [false, false, true]);
        assert_eq!([proj(Canonical, &eq2), proj(Cw, &eq2), proj(Scw, &eq2)], [true, true, true]);
        assert_eq!([inj(Canonical, &zj1), inj(Cw, &zj1), inj(Scw, &zj1)], [false, false, true]);
        assert_eq!([inj(Cw, &mono), inj(Scw, &mono)], [true, true]);
        assert_eq!([inj(Canonical, &eq2), inj(Cw, &eq2), inj(Scw, &eq2)], [true, true, true]);
    }

    #[test]
    fn oracle_agrees_on_lambda2() {
        let c = ctx();
        let objs = enumerate_s_indecomposables(&c.cat, &c.sub, 4, &Budget::unlimited()).unwrap();
        let table = ConflationTable::build(&objs, &c.sub, &Budget::unlimited()).unwrap();
        for kind in StructureKind::ALL {
            for x in &objs {
                assert_eq!(
                    classify_projective(kind, x, &c.sub).unwrap(),
                    brute_force_projective(kind, x, &table).unwrap(),
                    "{kind} projective {x:?}"
                );
                assert_eq!(
                    classify_injective(kind, x, &c.sub).unwrap(),
                    brute_force_injective(kind, x, &table).unwrap(),
                    "{kind} injective {x:?}"
                );
            }
        }
    }

    #[test]
    fn standard_sequences_and_dimensions() {
        let c = ctx();
        let mono = MorphObj::new(&c.cat, socle(&c)).unwrap();
        let zj1 = MorphObj::zero_into(&c.cat, &c.j1).unwrap();
        let can = standard_projective_deflation(StructureKind::Canonical, &zj1, &c.sub).unwrap();
        assert!(!is_split_ses(&can.as_t2()).unwrap());
        let infl = standard_injective_inflation(StructureKind::Cw, &mono, &c.sub).unwrap();
        assert!(classify_injective(StructureKind::Cw, infl.middle(), &c.sub).unwrap());
        assert_eq!(projective_dimension(StructureKind::Cw, &mono, &c.sub, 4).unwrap(), HomDim::Exactly(1));
        let eq1 = MorphObj::identity_on(&c.cat, &c.j1).unwrap();
        for kind in StructureKind::ALL {
            for x in [&mono, &zj1, &eq1] {
                let d = standard_projective_deflation(kind, x, &c.sub).unwrap();
                assert!(classify_projective(kind, d.middle(), &c.sub).unwrap(), "{kind}");
                let i = standard_injective_inflation(kind, x, &c.sub).unwrap();
                assert!(classify_injective(kind, i.middle(), &c.sub).unwrap(), "{kind}");
            }
        }
    }

    #[test]
    fn axioms_hold_on_lambda2() {
        let c = ctx();
        let objs = enumerate_s_indecomposables(&c.cat, &c.sub, 4, &Budget::unlimited()).unwrap();
        let table = ConflationTable::build(&objs, &c.sub, &Budget::unlimited()).unwrap();
        for kind in StructureKind::ALL {
            for r in check_axioms(kind, &table, &c.sub, &Budget::unlimited()).unwrap() {
                assert!(r.passed(), "{kind} {} {:?}", r.axiom, r.witness);
                assert!(r.checked > 0, "{kind} {}", r.axiom);
            }
        }
    }
}
