//! Almost split maps and sequences, in module categories and in the three exact structures
//! on `S_X(Λ)`, together with the Auslander-Reiten translate `DTr`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::{classify_injective, classify_projective, ConflationTable, StructureKind};
use crate::exact::{sum_objects, Conflation};
use crate::linalg::{SpanBuilder, Vector};
use crate::module::{
    cokernel, decompose, direct_sum, dual_module, factor_through_left, factor_through_right, hom_space,
    is_indecomposable, is_isomorphic, is_nilpotent, is_projective, kernel, map_from_projective, projective_cover,
    row_map, top_dims, Ext1, ModMap, Module, ShortExact,
};
use crate::morph::{decompose_morph, is_isomorphic_morph, MorphObj};
use crate::subcat::Subcat;

fn flat_len(m: &Module, n: &Module) -> usize {
    m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum()
}

/// A basis of the radical of `End(y)` for an indecomposable `y` with residue field `F_p`.
pub fn radical_endomorphisms(y: &Module) -> Result<Vec<ModMap>> {
    let p = y.p();
    let id = ModMap::identity(y);
    let mut span = SpanBuilder::new(p, flat_len(y, y));
    let mut out = Vec::new();
    for b in hom_space(y, y)? {
        let shifted = (0..p).map(|l| b.add_scaled(&id, p - l)).find(is_nilpotent).ok_or_else(|| {
            Error::Inconclusive(format!(
                "endomorphism ring of the module with dims {:?} has residue field larger than F_{p}",
                y.dims()
            ))
        })?;
        if span.insert(&shifted.flatten()) {
            out.push(shifted);
        }
    }
    Ok(out)
}

/// A basis of `rad(u, y)` for indecomposables `u`, `y`: all maps unless `u ≅ y`.
pub fn radical_maps(u: &Module, y: &Module) -> Result<Vec<ModMap>> {
    match is_isomorphic(u, y)? {
        None => hom_space(u, y),
        Some(iso) => Ok(radical_endomorphisms(y)?.iter().map(|r| r.compose(&iso)).collect()),
    }
}

fn contains_all(span: &mut SpanBuilder, maps: &[ModMap]) -> bool {
    maps.iter().all(|m| span.contains(&m.flatten()))
}

/// `p: E -> Z` is not a retraction and every radical map `U -> Z` from the universe factors through it.
pub fn is_right_almost_split(p: &ModMap, universe: &[Module]) -> Result<bool> {
    let z = p.target();
    if factor_through_left(p, &ModMap::identity(z))?.is_some() {
        return Ok(false);
    }
    for u in universe {
        let rad = radical_maps(u, z)?;
        if rad.is_empty() {
            continue;
        }
        let mut span = SpanBuilder::new(z.p(), flat_len(u, z));
        for h in hom_space(u, p.source())? {
            span.insert(&p.compose(&h).flatten());
        }
        if !contains_all(&mut span, &rad) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `i: W -> E` is not a section and every radical map `W -> U` into the universe factors through it.
pub fn is_left_almost_split(i: &ModMap, universe: &[Module]) -> Result<bool> {
    let w = i.source();
    if factor_through_right(i, &ModMap::identity(w))?.is_some() {
        return Ok(false);
    }
    for u in universe {
        let rad = radical_maps(w, u)?;
        if rad.is_empty() {
            continue;
        }
        let mut span = SpanBuilder::new(w.p(), flat_len(w, u));
        for h in hom_space(i.target(), u)? {
            span.insert(&h.compose(i).flatten());
        }
        if !contains_all(&mut span, &rad) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both end maps almost split and both end terms indecomposable (local endomorphism rings).
pub fn is_almost_split_sequence(seq: &ShortExact, universe: &[Module]) -> Result<bool> {
    Ok(seq.is_exact()
        && is_indecomposable(seq.i.source())?
        && is_indecomposable(seq.p.target())?
        && is_right_almost_split(&seq.p, universe)?
        && is_left_almost_split(&seq.i, universe)?)
}

/// The almost split sequence of `X` ending at the indecomposable non-projective `z`, searched
/// among extensions by generators of `sub` with middle term in `X`.
pub fn find_almost_split_sequence(z: &Module, sub: &Subcat) -> Result<ShortExact> {
    if is_projective(z) {
        return Err(Error::Precondition("the end term is projective".into()));
    }
    let universe = sub.generators();
    for w in universe {
        let ext = Ext1::new(z, w)?;
        for class in ext.all_classes() {
            if class.iter().all(|&c| c == 0) {
                continue;
            }
            let seq = ext.sequence(&class);
            if sub.contains(seq.middle())? && is_almost_split_sequence(&seq, universe)? {
                return Ok(seq);
            }
        }
    }
    Err(Error::Inconclusive(format!(
        "no almost split sequence ends at the module with dims {:?} within the enumerated generators",
        z.dims()
    )))
}

/// `σ_X(m)`: the sum of the start terms of the almost split sequences ending at the
/// non-projective summands of `m`.
pub fn translate_in(m: &Module, sub: &Subcat) -> Result<Module> {
    let alg = m.algebra().clone();
    let mut parts = Vec::new();
    if !m.is_zero() {
        for (s, mult) in decompose(m)? {
            if is_projective(&s) {
                continue;
            }
            let w = find_almost_split_sequence(&s, sub)?.i.source().clone();
            parts.extend(core::iter::repeat_n(w, mult));
        }
    }
    Ok(direct_sum(&alg, &parts)?.module)
}

/// `m` with its relatively injective summands removed, the form compared in the costable category.
pub fn strip_x_injective(m: &Module, sub: &Subcat) -> Result<Module> {
    let alg = m.algebra().clone();
    let mut parts = Vec::new();
    if !m.is_zero() {
        for (s, mult) in decompose(m)? {
            if !sub.is_x_injective(&s)? {
                parts.extend(core::iter::repeat_n(s, mult));
            }
        }
    }
    Ok(direct_sum(&alg, &parts)?.module)
}

fn cover_vertices(m: &Module) -> Vec<usize> {
    top_dims(m).iter().enumerate().flat_map(|(v, &k)| core::iter::repeat_n(v, k)).collect()
}

fn trivial_path_index(alg: &crate::algebra::Algebra, v: usize) -> usize {
    alg.basis_between(v, v).iter().position(|&k| alg.basis()[k].is_trivial()).expect("trivial path")
}

/// `DTr(m)`, computed from a minimal projective presentation `P1 -> P0 -> m -> 0`.
pub fn auslander_reiten_translate(m: &Module) -> Result<Module> {
    let alg = m.algebra().clone();
    if m.is_zero() || is_projective(m) {
        return Ok(Module::zero(alg));
    }
    let (_, pi0) = projective_cover(m);
    let (k, incl) = kernel(&pi0);
    let (p1, pi1) = projective_cover(&k);
    let d = incl.compose(&pi1);
    let v0 = cover_vertices(m);
    let v1 = cover_vertices(&k);
    let op = Arc::new(alg.opposite()?);
    let n = alg.num_vertices();
    // Offsets of each piece inside the sum, per vertex.
    let offsets = |pieces: &[usize]| -> Vec<Vec<usize>> {
        let mut acc = vec![0usize; n];
        pieces
            .iter()
            .map(|&v| {
                let here = acc.clone();
                for (w, a) in acc.iter_mut().enumerate() {
                    *a += alg.basis_between(v, w).len();
                }
                here
            })
            .collect()
    };
    let off0 = offsets(&v0);
    let off1 = offsets(&v1);
    // c[a][b] ∈ e_{w_b} Λ e_{v_a}: the P0-piece b component of the image of generator a.
    let mut comps: Vec<Vec<Vector>> = Vec::with_capacity(v1.len());
    for (a, &va) in v1.iter().enumerate() {
        let mut e = vec![0u32; p1.dims()[va]];
        e[off1[a][va] + trivial_path_index(&alg, va)] = 1;
        let y = d.apply(va, &e);
        let row = v0
            .iter()
            .enumerate()
            .map(|(b, &wb)| {
                let mut c = vec![0u32; alg.dim()];
                for (t, &idx) in alg.basis_between(wb, va).iter().enumerate() {
                    c[idx] = y[off0[b][va] + t];
                }
                c
            })
            .collect();
        comps.push(row);
    }
    let to_op = |c: &[u32]| -> Vector {
        let mut out = vec![0u32; op.dim()];
        for (idx, &x) in c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let path = &alg.basis()[idx];
            let word: Vec<usize> = path.arrows.iter().rev().copied().collect();
            let e = op.word_element(path.target, &word);
            for (o, v) in out.iter_mut().zip(e) {
                *o = (*o + x * v) % alg.p();
            }
        }
        out
    };
    let pop0: Vec<Module> = v0.iter().map(|&w| Module::projective(op.clone(), w)).collect();
    let pop1: Vec<Module> = v1.iter().map(|&v| Module::projective(op.clone(), v)).collect();
    let s0 = direct_sum(&op, &pop0)?;
    let s1 = direct_sum(&op, &pop1)?;
    let parts: Vec<ModMap> = v0
        .iter()
        .enumerate()
        .map(|(b, &wb)| {
            let mut gen = Vec::new();
            for (a, &va) in v1.iter().enumerate() {
                let cop = to_op(&comps[a][b]);
                gen.extend(op.basis_between(va, wb).iter().map(|&idx| cop[idx]));
            }
            map_from_projective(&pop0[b], wb, &s1.module, &gen)
        })
        .collect();
    let t = row_map(&s0, &s1.module, &parts);
    let (tr, _) = cokernel(&t);
    dual_module(&tr, &alg)
}

/// A candidate almost split conflation of a given structure.
#[derive(Clone, Debug)]
pub struct ArCandidate {
    pub conflation: Conflation,
    pub kind: StructureKind,
}

fn t2_universe(universe: &[MorphObj]) -> Vec<Module> {
    universe.iter().map(|o| o.t2().clone()).collect()
}

/// Almost split in `S_X(Λ)`: checked on the `T_2(Λ)` realization against the enumerated universe.
pub fn is_almost_split(c: &ArCandidate, universe: &[MorphObj]) -> Result<bool> {
    let seq = c.conflation.as_t2();
    is_almost_split_sequence(&seq, &t2_universe(universe))
}

/// Outcome of an almost split conflation search.
#[derive(Clone, Debug)]
pub struct ArSearch {
    pub candidate: ArCandidate,
    /// Table entry the candidate was taken from.
    pub entry: usize,
    /// Number of tabulated classes that pass; all have isomorphic middle terms.
    pub passing: usize,
}

/// Searches the table for the almost split conflation of `kind` ending at object `end`.
pub fn find_ar_conflation_ending_at(
    kind: StructureKind,
    end: usize,
    table: &ConflationTable,
    sub: &Subcat,
) -> Result<ArSearch> {
    let y = &table.objects[end];
    if classify_projective(kind, y, sub)? {
        return Err(Error::Precondition(format!("object {end} is projective in the {kind} structure")));
    }
    let universe = t2_universe(&table.objects);
    let mut found: Option<(usize, Conflation)> = None;
    let mut passing = 0;
    for (k, e) in table.entries.iter().enumerate() {
        if e.end != end || !e.is_kind(kind) || e.class.iter().all(|&c| c == 0) {
            continue;
        }
        if !is_almost_split_sequence(&e.conflation.as_t2(), &universe)? {
            continue;
        }
        passing += 1;
        match &found {
            None => found = Some((k, e.conflation.clone())),
            Some((_, first)) => {
                if is_isomorphic_morph(first.middle(), e.conflation.middle())?.is_none() {
                    return Err(Error::Precondition(format!(
                        "almost split conflations ending at object {end} have non-isomorphic middle terms"
                    )));
                }
            }
        }
    }
    let (entry, conflation) = found.ok_or_else(|| {
        Error::Inconclusive(format!("no almost split {kind} conflation ends at object {end} within the bound"))
    })?;
    Ok(ArSearch { candidate: ArCandidate { conflation, kind }, entry, passing })
}

/// `x` with the summands that are injective in the given structure removed.
pub fn strip_kind_injective(kind: StructureKind, x: &MorphObj, sub: &Subcat) -> Result<MorphObj> {
    let mut parts = Vec::new();
    if !x.is_zero() {
        for (s, mult) in decompose_morph(x)? {
            if !classify_injective(kind, &s, sub)? {
                parts.extend(core::iter::repeat_n(s, mult));
            }
        }
    }
    if parts.is_empty() {
        return Ok(MorphObj::zero(x.cat()));
    }
    Ok(sum_objects(x.cat(), &parts)?.0)
}

/// Start terms of the almost split conflations ending at `end` under each structure.
#[derive(Clone, Debug)]
pub struct TranslationAgreement {
    pub end: usize,
    /// Start terms with kind-injective summands removed, in [`StructureKind::ALL`] order.
    pub starts: Vec<MorphObj>,
    pub agree: bool,
}

/// For an end term that is not SCW-projective, compares the translates under the three structures.
/// Returns `None` when the end term is SCW-projective.
pub fn translation_agreement(
    end: usize,
    table: &ConflationTable,
    sub: &Subcat,
) -> Result<Option<TranslationAgreement>> {
    if classify_projective(StructureKind::Scw, &table.objects[end], sub)? {
        return Ok(None);
    }
    let mut starts = Vec::new();
    for kind in StructureKind::ALL {
        let found = find_ar_conflation_ending_at(kind, end, table, sub)?;
        starts.push(strip_kind_injective(kind, found.candidate.conflation.x(), sub)?);
    }
    let mut agree = true;
    for s in &starts[1..] {
        agree &= is_isomorphic_morph(&starts[0], s)?.is_some();
    }
    Ok(Some(TranslationAgreement { end, starts, agree }))
}

/// The two costable isomorphisms relating the translate of `x = (A -> B)` in `S_X(Λ)` with
/// translates in `X`: the first component against `σ_X(B)`, the second against `σ_X(Cok f)`.
#[derive(Clone, Debug)]
pub struct ComponentTranslates {
    pub end: usize,
    pub start: MorphObj,
    pub first: Module,
    pub translate_of_target: Module,
    pub second: Module,
    pub translate_of_cokernel: Module,
    pub first_agrees: bool,
    pub second_agrees: bool,
}

impl ComponentTranslates {
    pub fn passed(&self) -> bool {
        self.first_agrees && self.second_agrees
    }
}

fn costably_isomorphic(a: &Module, b: &Module, sub: &Subcat) -> Result<bool> {
    let a = strip_x_injective(a, sub)?;
    let b = strip_x_injective(b, sub)?;
    Ok(is_isomorphic(&a, &b)?.is_some())
}

/// Checks `e¹(σ x) ≅ σ_X(B)` and `e²(σ x) ≅ σ_X(Cok f)` in the costable category, with `σ x`
/// the start term of the canonical almost split conflation ending at object `end`.
pub fn check_component_translates(end: usize, table: &ConflationTable, sub: &Subcat) -> Result<ComponentTranslates> {
    let x = &table.objects[end];
    let found = find_ar_conflation_ending_at(StructureKind::Canonical, end, table, sub)?;
    let start = found.candidate.conflation.x().clone();
    let first = start.a().clone();
    let second = start.b().clone();
    let translate_of_target = translate_in(x.b(), sub)?;
    let (c, _) = x.cokernel();
    let translate_of_cokernel = translate_in(&c, sub)?;
    Ok(ComponentTranslates {
        end,
        first_agrees: costably_isomorphic(&first, &translate_of_target, sub)?,
        second_agrees: costably_isomorphic(&second, &translate_of_cokernel, sub)?,
        start,
        first,
        translate_of_target,
        second,
        translate_of_cokernel,
    })
}

/// Describes a module by its dimension vector, for reports.
pub fn describe(m: &Module) -> String {
    format!("{:?}", m.dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nilpotent_loop, preprojective};
    use crate::budget::Budget;
    use crate::module::{enumerate_indecomposables, hom_dim, injective_envelope, jordan_block, simples};
    use crate::morph::{enumerate_s_indecomposables, MorphCat};

    #[test]
    fn translate_over_nilpotent_loops() {
        for n in 2..=3 {
            let a = Arc::new(nilpotent_loop(n, 2).unwrap());
            let sub = Subcat::all(a.clone(), n, &Budget::unlimited()).unwrap();
            for k in 1..n {
                let j = jordan_block(&a, k);
                let t = auslander_reiten_translate(&j).unwrap();
                assert!(is_isomorphic(&t, &j).unwrap().is_some());
                let seq = find_almost_split_sequence(&j, &sub).unwrap();
                assert!(is_isomorphic(seq.i.source(), &j).unwrap().is_some());
            }
            assert!(auslander_reiten_translate(&jordan_block(&a, n)).unwrap().is_zero());
        }
    }

    #[test]
    fn almost_split_edge_cases() {
        let a = Arc::new(nilpotent_loop(2, 2).unwrap());
        let j1 = jordan_block(&a, 1);
        let j2 = jordan_block(&a, 2);
        let universe = [j1.clone(), j2.clone()];
        assert!(!is_right_almost_split(&ModMap::identity(&j1), &universe).unwrap());
        assert!(!is_left_almost_split(&ModMap::identity(&j1), &universe).unwrap());
        let split = ShortExact {
            i: direct_sum(&a, &[j1.clone(), j1.clone()]).unwrap().injections[0].clone(),
            p: direct_sum(&a, &[j1.clone(), j1.clone()]).unwrap().projections[1].clone(),
        };
        assert!(!is_almost_split_sequence(&split, &universe).unwrap());
    }

    /// `dim Ext^1(m, n) = dim Hom(n, τm)` modulo maps through injectives.
    fn ar_formula_holds(m: &Module, n: &Module) -> bool {
        let t = auslander_reiten_translate(m).unwrap();
        let ext = Ext1::new(m, n).unwrap().dim();
        let (_, iota) = injective_envelope(n);
        let mut span = SpanBuilder::new(n.p(), flat_len(n, &t));
        for h in hom_space(iota.target(), &t).unwrap() {
            span.insert(&h.compose(&iota).flatten());
        }
        ext == hom_dim(n, &t).unwrap() - span.dim()
    }

    #[test]
    fn translate_over_preprojective() {
        let g = Arc::new(preprojective(2, 2).unwrap());
        let indecs = enumerate_indecomposables(&g, 6, &Budget::unlimited()).unwrap();
        let s = simples(&g);
        let t0 = auslander_reiten_translate(&s[0]).unwrap();
        assert!(is_isomorphic(&t0, &s[1]).unwrap().is_some());
        for m in &indecs {
            for n in &indecs {
                assert!(ar_formula_holds(m, n));
            }
        }
    }

    #[test]
    fn ar_conflations_on_lambda2() {
        let a = Arc::new(nilpotent_loop(2, 2).unwrap());
        let cat = MorphCat::new(a.clone()).unwrap();
        let sub = Subcat::all(a, 2, &Budget::unlimited()).unwrap();
        let objects = enumerate_s_indecomposables(&cat, &sub, 4, &Budget::unlimited()).unwrap();
        let table = ConflationTable::build(&objects, &sub, &Budget::unlimited()).unwrap();
        let mut searched = 0;
        for kind in StructureKind::ALL {
            for (k, y) in objects.iter().enumerate() {
                if classify_projective(kind, y, &sub).unwrap() {
                    assert!(find_ar_conflation_ending_at(kind, k, &table, &sub).is_err());
                    continue;
                }
                let found = find_ar_conflation_ending_at(kind, k, &table, &sub).unwrap();
                assert!(is_almost_split(&found.candidate, &objects).unwrap());
                searched += 1;
            }
        }
        assert_eq!(searched, 4);
        for k in 0..objects.len() {
            assert!(translation_agreement(k, &table, &sub).unwrap().is_none());
            if !classify_projective(StructureKind::Canonical, &objects[k], &sub).unwrap() {
                assert!(check_component_translates(k, &table, &sub).unwrap().passed());
            }
        }
    }
}
