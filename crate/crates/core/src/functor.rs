//! Finitely presented functors on the stable category of `X`, realized as modules over the
//! stable Auslander algebra `Γ`, and the functor `Ψ: S_X(Λ) -> mod Γ`.
//!
//! A `Γ`-module `M` is read as a contravariant functor: `M_i = F(X_i)`, and a basis element
//! of `Γ` in block `(i, j)` is a stable map `X_j -> X_i` acting `F(X_i) -> F(X_j)`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Algebra, HomTable};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{classify_projective, is_conflation, ConflationTable, StructureKind};
use crate::exact::{sum_objects, Conflation};
use crate::linalg::{Mat, SpanBuilder, Vector};
use crate::module::{
    self, decompose_with_maps, factor_through_epi, find_indecomposable, hom_dim, is_isomorphic,
    stable_hom_space_preferring, Ext1, HomSpace, ModMap, Module, ShortExact, StableHom,
};
use crate::morph::{hom_morph, is_object_of_s, MorphCat, MorphMap, MorphObj};
use crate::subcat::Subcat;

/// Where a functor module came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Psi,
    Ext1Injective,
    Translate,
    Given,
}

/// A finitely presented functor on the stable category, as a `Γ`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorModule {
    pub module: Module,
    pub origin: Origin,
}

/// The stable Auslander algebra of `X` with the data needed to evaluate functors.
#[derive(Clone, Debug)]
pub struct StableAuslander {
    cat: Arc<MorphCat>,
    gamma: Arc<Algebra>,
    vertices: Vec<Module>,
    /// `stable[i][j]` is the stable `Hom(X_j, X_i)`; its representatives are the table elements `(i, j)`.
    stable: Vec<Vec<StableHom>>,
    table: HomTable,
    to_table: Mat,
    block_start: Vec<Vec<usize>>,
}

impl StableAuslander {
    /// Builds `Γ` from the non-projective generators of `sub`.
    pub fn new(cat: &Arc<MorphCat>, sub: &Subcat) -> Result<StableAuslander> {
        let vertices = sub.non_projective_generators();
        let p = cat.base().p();
        let n = vertices.len();
        let mut stable: Vec<Vec<StableHom>> = Vec::with_capacity(n);
        for xi in &vertices {
            let mut row = Vec::with_capacity(n);
            for xj in &vertices {
                let preferred = if xi == xj { vec![ModMap::identity(xi)] } else { Vec::new() };
                row.push(stable_hom_space_preferring(xj, xi, &preferred)?);
            }
            stable.push(row);
        }
        let mut elems = Vec::new();
        let mut block_start = vec![vec![0; n]; n];
        let mut identities = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                block_start[i][j] = elems.len();
                if i == j {
                    identities[i] = elems.len();
                }
                elems.extend(core::iter::repeat_n((i, j), stable[i][j].dim()));
            }
        }
        let d = elems.len();
        let mut compose = vec![0u32; d * d * d];
        for a in 0..d {
            let (ia, ja) = elems[a];
            let fa = &stable[ia][ja].reps[a - block_start[ia][ja]];
            for b in 0..d {
                let (ib, jb) = elems[b];
                if ja != ib {
                    continue;
                }
                let fb = &stable[ib][jb].reps[b - block_start[ib][jb]];
                let class = stable[ia][jb].class_of(&fa.compose(fb));
                let base = (a * d + b) * d + block_start[ia][jb];
                compose[base..base + class.len()].copy_from_slice(&class);
            }
        }
        let table =
            HomTable { p, objects: (0..n).map(|i| format!("X{}", i + 1)).collect(), elems, compose, identities };
        let name = format!("stable Auslander algebra of {}", cat.base().name());
        let (gamma, to_table) = if n == 0 {
            (crate::algebra::semisimple(0, p)?, Mat::zeros(p, 0, 0))
        } else {
            let presented = table.present(name)?;
            (presented.algebra, presented.to_table)
        };
        Ok(StableAuslander { cat: cat.clone(), gamma: Arc::new(gamma), vertices, stable, table, to_table, block_start })
    }

    pub fn gamma(&self) -> &Arc<Algebra> {
        &self.gamma
    }

    pub fn cat(&self) -> &Arc<MorphCat> {
        &self.cat
    }

    /// The non-projective indecomposables of `X`, in vertex order.
    pub fn vertices(&self) -> &[Module] {
        &self.vertices
    }

    pub fn hom_table(&self) -> &HomTable {
        &self.table
    }

    /// The vertex of `Γ` at which `m` sits, if `m` is a non-projective indecomposable of `X`.
    pub fn vertex_of(&self, m: &Module) -> Result<Option<usize>> {
        find_indecomposable(&self.vertices, m)
    }

    /// A representative `X_j -> X_i` of the table coordinates `coords`, restricted to block `(i, j)`.
    fn representative(&self, i: usize, j: usize, coords: &[u32]) -> ModMap {
        let s = &self.stable[i][j];
        let start = self.block_start[i][j];
        let c = &coords[start..start + s.dim()];
        ModMap::combination(&self.vertices[j], &self.vertices[i], &s.reps, c)
    }

    /// Representative of arrow `a` of `Γ`, a map from the arrow's target vertex to its source vertex.
    pub fn arrow_map(&self, a: usize) -> ModMap {
        let arrow = &self.gamma.arrows()[a];
        let coords = self.to_table.mul_vec(&self.gamma.arrow_element(a));
        self.representative(arrow.source, arrow.target, &coords)
    }

    fn evaluate(&self, x: &MorphObj) -> Result<Evaluation> {
        let (c, q) = x.cokernel();
        let p = self.gamma.p();
        let mut values = Vec::with_capacity(self.vertices.len());
        for xi in &self.vertices {
            let hom = HomSpace::new(xi, &c)?;
            let image: Vec<Vector> = module::hom_space(xi, x.b())?.iter().map(|h| hom.coords(&q.compose(h))).collect();
            let quotient = Quotient::new(p, hom.dim(), &image);
            values.push(Value { hom, quotient });
        }
        Ok(Evaluation { c, q, values })
    }

    fn module_of(&self, ev: &Evaluation) -> Result<Module> {
        let p = self.gamma.p();
        let dims: Vec<usize> = ev.values.iter().map(|v| v.quotient.dim()).collect();
        let mut action = Vec::with_capacity(self.gamma.arrows().len());
        for (ai, arrow) in self.gamma.arrows().iter().enumerate() {
            let (s, t) = (arrow.source, arrow.target);
            let g = self.arrow_map(ai);
            let (vs, vt) = (&ev.values[s], &ev.values[t]);
            let cols: Vec<Vector> = vs
                .quotient
                .reps
                .iter()
                .map(|u| vt.quotient.project(&vt.hom.coords(&vs.hom.element(u).compose(&g))))
                .collect();
            action.push(Mat::from_cols(p, dims[t], &cols));
        }
        // Maps through projectives must act as zero for the action to be well defined.
        for s in 0..self.vertices.len() {
            for t in 0..self.vertices.len() {
                let (vs, vt) = (&ev.values[s], &ev.values[t]);
                for h in &self.stable[s][t].through_projectives {
                    for u in &vs.quotient.reps {
                        let img = vt.quotient.project(&vt.hom.coords(&vs.hom.element(u).compose(h)));
                        if img.iter().any(|&x| x != 0) {
                            return Err(Error::Precondition(format!(
                                "a map through a projective acts nontrivially between vertices {s} and {t}"
                            )));
                        }
                    }
                }
            }
        }
        Module::new(self.gamma.clone(), dims, action)
    }

    /// `Ψ(x) = Cok((-, B) -> (-, Cok f))` restricted to the stable category.
    pub fn psi_object(&self, x: &MorphObj) -> Result<FunctorModule> {
        let ev = self.evaluate(x)?;
        Ok(FunctorModule { module: self.module_of(&ev)?, origin: Origin::Psi })
    }

    /// The map `Ψ(φ)` induced on cokernels.
    pub fn psi_morphism(&self, phi: &MorphMap) -> Result<ModMap> {
        let ex = self.evaluate(phi.source())?;
        let ey = self.evaluate(phi.target())?;
        self.psi_morphism_with(phi, &ex, &ey)
    }

    fn psi_morphism_with(&self, phi: &MorphMap, ex: &Evaluation, ey: &Evaluation) -> Result<ModMap> {
        let fx = self.module_of(ex)?;
        let fy = self.module_of(ey)?;
        let c = factor_through_epi(&ex.q, &ey.q.compose(&phi.phi2()));
        let p = self.gamma.p();
        let blocks = ex
            .values
            .iter()
            .zip(&ey.values)
            .enumerate()
            .map(|(i, (vx, vy))| {
                let cols: Vec<Vector> = vx
                    .quotient
                    .reps
                    .iter()
                    .map(|u| vy.quotient.project(&vy.hom.coords(&c.compose(&vx.hom.element(u)))))
                    .collect();
                Mat::from_cols(p, fy.dims()[i], &cols)
            })
            .collect();
        ModMap::new(fx, fy, blocks)
    }

    /// `Ψ` applied to both maps of a conflation.
    pub fn psi_conflation(&self, c: &Conflation) -> Result<ShortExact> {
        let ex = self.evaluate(c.x())?;
        let em = self.evaluate(c.middle())?;
        let ey = self.evaluate(c.y())?;
        Ok(ShortExact { i: self.psi_morphism_with(&c.i, &ex, &em)?, p: self.psi_morphism_with(&c.p, &em, &ey)? })
    }

    /// `Ext^1(-, X)|_X`, presented as `Ψ(X -> I)` for a relatively injective conflation `X -> I -> L`.
    pub fn ext1_injective_functor(&self, x: &Module, sub: &Subcat) -> Result<FunctorModule> {
        let seq = sub.injective_conflation(x)?;
        let obj = MorphObj::new(&self.cat, seq.i)?;
        Ok(FunctorModule { module: self.psi_object(&obj)?.module, origin: Origin::Ext1Injective })
    }

    /// The Auslander-Reiten translate `DTr` in `mod Γ`.
    pub fn dtr_gamma(&self, m: &FunctorModule) -> Result<FunctorModule> {
        Ok(FunctorModule { module: crate::ar::auslander_reiten_translate(&m.module)?, origin: Origin::Translate })
    }

    /// An object of `S_X(Λ)` whose image is isomorphic to `f`, with the isomorphism `f -> Ψ(x)`.
    pub fn realize(&self, f: &Module, objects: &[MorphObj]) -> Result<(MorphObj, ModMap)> {
        let images = objects.iter().map(|o| self.psi_object(o).map(|m| m.module)).collect::<Result<Vec<_>>>()?;
        let mut parts = Vec::new();
        for s in decompose_with_maps(f)? {
            let mut hit = None;
            for (k, img) in images.iter().enumerate() {
                if is_isomorphic(&s.module, img)?.is_some() {
                    hit = Some(k);
                    break;
                }
            }
            let k = hit.ok_or_else(|| {
                Error::Inconclusive(format!("no enumerated object maps onto a summand with dims {:?}", s.module.dims()))
            })?;
            parts.push(objects[k].clone());
        }
        let x = if parts.is_empty() { MorphObj::zero(&self.cat) } else { sum_objects(&self.cat, &parts)?.0 };
        let fx = self.psi_object(&x)?.module;
        let iso = is_isomorphic(f, &fx)?
            .ok_or_else(|| Error::Precondition("image of the realizing sum is not isomorphic".into()))?;
        Ok((x, iso))
    }

    /// Lifts `0 -> F1 -> F2 -> F3 -> 0` in `mod Γ` to an SCW conflation whose image has the same class.
    pub fn horseshoe_lift(&self, seq: &ShortExact, objects: &[MorphObj], sub: &Subcat) -> Result<Conflation> {
        if !seq.is_exact() {
            return Err(Error::InvalidInput("the sequence to lift is not exact".into()));
        }
        let (x1, a1) = self.realize(seq.i.source(), objects)?;
        let (x3, a3) = self.realize(seq.p.target(), objects)?;
        let a1_inv = a1.inverse().expect("isomorphism");
        let moved = ShortExact { i: seq.i.compose(&a1_inv), p: a3.compose(&seq.p) };
        let ext_gamma = Ext1::new(a3.target(), a1.target())?;
        let target = ext_gamma.class_of(&moved)?;
        let ext = Ext1::new(x3.t2(), x1.t2())?;
        for class in ext.all_classes() {
            let c = Conflation::from_t2(&self.cat, &ext.sequence(&class))?;
            if !is_object_of_s(c.middle(), sub)? || !is_conflation(StructureKind::Scw, &c, sub)? {
                continue;
            }
            let image = self.psi_conflation(&c)?;
            // Both ends of the image are the modules a1, a3 land in.
            let image = ShortExact {
                i: image.i.with_ends(a1.target(), image.i.target()),
                p: image.p.with_ends(image.p.source(), a3.target()),
            };
            if image.is_exact() && ext_gamma.class_of(&image)? == target {
                return Ok(c);
            }
        }
        Err(Error::Inconclusive("no SCW conflation between the realizing objects has the given class".into()))
    }
}

/// `F(X_i)` as a quotient of `Hom(X_i, Cok f)`.
struct Value {
    hom: HomSpace,
    quotient: Quotient,
}

struct Evaluation {
    #[allow(dead_code)]
    c: Module,
    q: ModMap,
    values: Vec<Value>,
}

/// A quotient `F_p^n / U` with chosen representatives of a basis.
struct Quotient {
    reps: Vec<Vector>,
    proj: Mat,
}

impl Quotient {
    fn new(p: u32, n: usize, sub: &[Vector]) -> Quotient {
        let mut span = SpanBuilder::new(p, n);
        let mut sub_basis = Vec::new();
        for v in sub {
            if span.insert(v) {
                sub_basis.push(v.clone());
            }
        }
        let mut reps = Vec::new();
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            if span.insert(&e) {
                reps.push(e);
            }
        }
        let mut cols = reps.clone();
        cols.extend(sub_basis);
        let proj = if n == 0 {
            Mat::zeros(p, 0, 0)
        } else {
            let inv = Mat::from_cols(p, n, &cols).inverse().expect("basis");
            inv.block(0, reps.len(), 0, n)
        };
        Quotient { reps, proj }
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    fn project(&self, v: &[u32]) -> Vector {
        if self.reps.is_empty() {
            return Vec::new();
        }
        self.proj.mul_vec(v)
    }
}

/// Results of checking that `Ψ` is exact on SCW conflations, full, dense and objective.
#[derive(Clone, Debug, Default)]
pub struct PsiReport {
    pub scw_checked: usize,
    /// Table entries of the SCW structure whose image is not short exact.
    pub scw_non_exact: Vec<usize>,
    /// Canonical table entries whose image is not short exact.
    pub canonical_non_exact: Vec<usize>,
    /// For each enumerated indecomposable `Γ`-module, an object mapping onto it.
    pub density: Vec<Option<usize>>,
    /// Object pairs `(x, y)` where `Hom(x, y) -> Hom(Ψx, Ψy)` is not onto.
    pub fullness_failures: Vec<(usize, usize)>,
    /// Object pairs where a map killed by `Ψ` does not factor through `Ψ`-null objects.
    pub objectivity_failures: Vec<(usize, usize)>,
}

impl PsiReport {
    pub fn exact_on_scw(&self) -> bool {
        self.scw_non_exact.is_empty()
    }

    pub fn canonical_witness(&self) -> Option<usize> {
        self.canonical_non_exact.first().copied()
    }

    pub fn dense(&self) -> bool {
        self.density.iter().all(Option::is_some)
    }

    pub fn density_hits(&self) -> usize {
        self.density.iter().filter(|d| d.is_some()).count()
    }

    pub fn full(&self) -> bool {
        self.fullness_failures.is_empty()
    }

    pub fn objective(&self) -> bool {
        self.objectivity_failures.is_empty()
    }
}

fn flat_span(maps: impl Iterator<Item = Vector>, len: usize, p: u32) -> SpanBuilder {
    let mut span = SpanBuilder::new(p, len);
    for v in maps {
        span.insert(&v);
    }
    span
}

fn map_len(x: &MorphObj, y: &MorphObj) -> usize {
    x.t2().dims().iter().zip(y.t2().dims()).map(|(a, b)| a * b).sum()
}

/// Dimension of the maps `x -> y` factoring through a sum of `via` objects.
fn through_dim(x: &MorphObj, y: &MorphObj, via: &[&MorphObj]) -> Result<usize> {
    let p = x.t2().p();
    let mut span = SpanBuilder::new(p, map_len(x, y));
    for k in via {
        let into = hom_morph(x, k)?;
        let out = hom_morph(k, y)?;
        for b in &out {
            for a in &into {
                span.insert(&b.compose(a).t2().flatten());
            }
        }
    }
    Ok(span.dim())
}

/// Checks the properties of `Ψ` on the tabulated universe. `gamma_indecs` lists the
/// indecomposable `Γ`-modules to test density against.
pub fn verify_psi_properties(
    sa: &StableAuslander,
    table: &ConflationTable,
    gamma_indecs: &[Module],
    budget: &Budget,
) -> Result<PsiReport> {
    let objects = &table.objects;
    let mut report = PsiReport::default();
    let evals = objects.iter().map(|o| sa.evaluate(o)).collect::<Result<Vec<_>>>()?;
    let images = evals.iter().map(|e| sa.module_of(e)).collect::<Result<Vec<_>>>()?;
    for (k, e) in table.entries.iter().enumerate() {
        let canonical_only = !e.is_kind(StructureKind::Scw);
        budget.tick(|| format!("image of conflation entry {k}"))?;
        let image = sa.psi_conflation(&e.conflation)?;
        let exact = image.is_exact();
        if canonical_only {
            if !exact {
                report.canonical_non_exact.push(k);
            }
        } else {
            report.scw_checked += 1;
            if !exact {
                report.scw_non_exact.push(k);
            }
        }
    }
    for g in gamma_indecs {
        let mut hit = None;
        for (k, img) in images.iter().enumerate() {
            if is_isomorphic(g, img)?.is_some() {
                hit = Some(k);
                break;
            }
        }
        report.density.push(hit);
    }
    let null: Vec<&MorphObj> = objects.iter().zip(&images).filter(|(_, m)| m.is_zero()).map(|(o, _)| o).collect();
    let p = sa.gamma.p();
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            budget.tick(|| format!("hom comparison between objects {i} and {j}"))?;
            let basis = hom_morph(x, y)?;
            let len = images[i].dims().iter().zip(images[j].dims()).map(|(a, b)| a * b).sum();
            let rank = flat_span(
                basis
                    .iter()
                    .map(|phi| sa.psi_morphism_with(phi, &evals[i], &evals[j]).map(|m| m.flatten()))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter(),
                len,
                p,
            )
            .dim();
            if rank != hom_dim(&images[i], &images[j])? {
                report.fullness_failures.push((i, j));
            }
            if through_dim(x, y, &null)? != basis.len() - rank {
                report.objectivity_failures.push((i, j));
            }
        }
    }
    Ok(report)
}

/// Comparison of `S_X(Λ)` modulo SCW-projectives with the stable category of `mod Γ`.
#[derive(Clone, Debug)]
pub struct StableEquivalenceReport {
    /// Objects that are not SCW-projective.
    pub objects: Vec<usize>,
    /// For each such object, the enumerated `Γ`-module its image is isomorphic to.
    pub images: Vec<Option<usize>>,
    /// Non-projective enumerated `Γ`-modules.
    pub non_projective_functors: Vec<usize>,
    /// Stable hom dimensions on the `S` side, indexed like `objects`.
    pub s_table: Vec<Vec<usize>>,
    /// Stable hom dimensions between the images in `mod Γ`.
    pub gamma_table: Vec<Vec<usize>>,
}

impl StableEquivalenceReport {
    pub fn bijective(&self) -> bool {
        let mut hit: Vec<usize> = self.images.iter().flatten().copied().collect();
        hit.sort_unstable();
        let distinct = hit.windows(2).all(|w| w[0] != w[1]);
        self.images.iter().all(Option::is_some) && distinct && hit == self.non_projective_functors
    }

    pub fn tables_agree(&self) -> bool {
        self.s_table == self.gamma_table
    }

    pub fn passed(&self) -> bool {
        self.bijective() && self.tables_agree()
    }
}

pub fn stable_equivalence_check(
    sa: &StableAuslander,
    objects: &[MorphObj],
    sub: &Subcat,
    gamma_indecs: &[Module],
) -> Result<StableEquivalenceReport> {
    let mut projective = Vec::new();
    let mut rest = Vec::new();
    for (k, o) in objects.iter().enumerate() {
        if classify_projective(StructureKind::Scw, o, sub)? {
            projective.push(o);
        } else {
            rest.push(k);
        }
    }
    let images = rest.iter().map(|&k| sa.psi_object(&objects[k]).map(|f| f.module)).collect::<Result<Vec<_>>>()?;
    let mut matched = Vec::new();
    for img in &images {
        let mut hit = None;
        for (g, m) in gamma_indecs.iter().enumerate() {
            if is_isomorphic(img, m)?.is_some() {
                hit = Some(g);
                break;
            }
        }
        matched.push(hit);
    }
    let non_projective_functors =
        (0..gamma_indecs.len()).filter(|&g| !module::is_projective(&gamma_indecs[g])).collect();
    let mut s_table = Vec::new();
    let mut gamma_table = Vec::new();
    for (a, &i) in rest.iter().enumerate() {
        let mut s_row = Vec::new();
        let mut g_row = Vec::new();
        for (b, &j) in rest.iter().enumerate() {
            let (x, y) = (&objects[i], &objects[j]);
            s_row.push(hom_morph(x, y)?.len() - through_dim(x, y, &projective)?);
            g_row.push(module::stable_hom_space(&images[a], &images[b])?.dim());
        }
        s_table.push(s_row);
        gamma_table.push(g_row);
    }
    Ok(StableEquivalenceReport { objects: rest, images: matched, non_projective_functors, s_table, gamma_table })
}

/// `0 -> mods[first] -> E -> mods[last] -> 0` for one `Ext^1` class.
#[derive(Clone, Debug)]
pub struct Extension {
    pub first: usize,
    pub last: usize,
    pub class: Vec<u32>,
    pub sequence: ShortExact,
}

/// One short exact sequence per `Ext^1` class, over all pairs of `mods`.
pub fn all_extensions(mods: &[Module]) -> Result<Vec<Extension>> {
    let mut out = Vec::new();
    for (k3, f3) in mods.iter().enumerate() {
        for (k1, f1) in mods.iter().enumerate() {
            let ext = Ext1::new(f3, f1)?;
            for class in ext.all_classes() {
                let sequence = ext.sequence(&class);
                out.push(Extension { first: k1, last: k3, class, sequence });
            }
        }
    }
    Ok(out)
}

/// Describes a `Γ`-module by its dimension vector, for reports.
pub fn describe(m: &Module) -> String {
    format!("{:?}", m.dims())
}
