//! Subcategories `add(G)` of a module category given by finitely many indecomposable generators.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::module::{
    all_vectors, column_map, decompose, direct_sum, enumerate_indecomposables, factor_through_right,
    find_indecomposable, hom_space, injective_envelope, is_indecomposable, is_injective, is_projective, projectives,
    row_map, Ext1, ModMap, Module, ShortExact,
};

#[derive(Clone, Debug)]
pub struct Subcat {
    alg: Arc<Algebra>,
    generators: Vec<Module>,
    whole: bool,
}

/// A failed check together with the modules that witness the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub detail: String,
    pub modules: Vec<Module>,
}

#[derive(Clone, Debug)]
pub struct ResolvingReport {
    pub contains_projectives: Option<Violation>,
    pub extension_closed: Option<Violation>,
    pub epi_kernel_closed: Option<Violation>,
    /// Always holds for `add(G)`; kept for the report shape.
    pub summand_closed: Option<Violation>,
    /// Set when a check was cut short by the budget.
    pub bounded: bool,
}

impl ResolvingReport {
    pub fn is_quasi_resolving(&self) -> bool {
        self.contains_projectives.is_none() && self.epi_kernel_closed.is_none()
    }

    pub fn is_resolving(&self) -> bool {
        self.is_quasi_resolving() && self.extension_closed.is_none() && self.summand_closed.is_none()
    }
}

impl Subcat {
    /// `add(generators)`; generators must be indecomposable and pairwise non-isomorphic.
    pub fn new(alg: Arc<Algebra>, generators: Vec<Module>) -> Result<Subcat> {
        let mut seen: Vec<Module> = Vec::new();
        for g in &generators {
            if **g.algebra() != *alg {
                return Err(Error::AlgebraMismatch);
            }
            if !is_indecomposable(g)? {
                return Err(Error::InvalidInput(format!("generator with dims {:?} is not indecomposable", g.dims())));
            }
            if find_indecomposable(&seen, g)?.is_some() {
                return Err(Error::InvalidInput(format!(
                    "generators with dims {:?} repeat up to isomorphism",
                    g.dims()
                )));
            }
            seen.push(g.clone());
        }
        Ok(Subcat { alg, generators, whole: false })
    }

    /// The whole module category, with generators enumerated up to total dimension `bound`.
    pub fn all(alg: Arc<Algebra>, bound: usize, budget: &Budget) -> Result<Subcat> {
        let generators = enumerate_indecomposables(&alg, bound, budget)?;
        Ok(Subcat { alg, generators, whole: true })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn generators(&self) -> &[Module] {
        &self.generators
    }

    pub fn is_whole(&self) -> bool {
        self.whole
    }

    pub fn contains(&self, m: &Module) -> Result<bool> {
        if !m.algebra().as_ref().eq(self.alg.as_ref()) {
            return Err(Error::AlgebraMismatch);
        }
        if self.whole || m.is_zero() {
            return Ok(true);
        }
        for (s, _) in decompose(m)? {
            if find_indecomposable(&self.generators, &s)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of the generator isomorphic to the indecomposable `m`.
    pub fn index_of(&self, m: &Module) -> Result<Option<usize>> {
        find_indecomposable(&self.generators, m)
    }

    pub fn non_projective_generators(&self) -> Vec<Module> {
        self.generators.iter().filter(|g| !is_projective(g)).cloned().collect()
    }

    /// `⊕_G G^{dim Hom(G, M)} -> M`, the evaluation map.
    pub fn right_approximation(&self, m: &Module) -> Result<ModMap> {
        let mut pieces = Vec::new();
        let mut maps = Vec::new();
        for g in &self.generators {
            for f in hom_space(g, m)? {
                pieces.push(g.clone());
                maps.push(f);
            }
        }
        let sum = direct_sum(&self.alg, &pieces)?;
        Ok(row_map(&sum, m, &maps))
    }

    /// `M -> ⊕_G G^{dim Hom(M, G)}`, the coevaluation map.
    pub fn left_approximation(&self, m: &Module) -> Result<ModMap> {
        let mut pieces = Vec::new();
        let mut maps = Vec::new();
        for g in &self.generators {
            for f in hom_space(m, g)? {
                pieces.push(g.clone());
                maps.push(f);
            }
        }
        let sum = direct_sum(&self.alg, &pieces)?;
        Ok(column_map(m, &sum, &maps))
    }

    /// True when `Hom(G, f)` is onto for every generator `G`.
    pub fn is_right_approximation(&self, f: &ModMap) -> Result<bool> {
        for g in &self.generators {
            let target = hom_space(g, f.target())?;
            if target.is_empty() {
                continue;
            }
            let image: Vec<ModMap> = hom_space(g, f.source())?.iter().map(|h| f.compose(h)).collect();
            if span_dim(&image) != target.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when `Hom(f, G)` is onto for every generator `G`.
    pub fn is_left_approximation(&self, f: &ModMap) -> Result<bool> {
        for g in &self.generators {
            let target = hom_space(f.source(), g)?;
            if target.is_empty() {
                continue;
            }
            let image: Vec<ModMap> = hom_space(f.target(), g)?.iter().map(|h| h.compose(f)).collect();
            if span_dim(&image) != target.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `M` is injective relative to the conflations of `X`: every extension of a generator by `M`
    /// with middle term in `X` splits.
    pub fn is_x_injective(&self, m: &Module) -> Result<bool> {
        if self.whole {
            return Ok(is_injective(m));
        }
        for g in &self.generators {
            let ext = Ext1::new(g, m)?;
            for class in ext.all_classes() {
                if class.iter().all(|&c| c == 0) {
                    continue;
                }
                if self.contains(ext.sequence(&class).middle())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn x_injective_generators(&self) -> Result<Vec<Module>> {
        let mut out = Vec::new();
        for g in &self.generators {
            if self.is_x_injective(g)? {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    /// A conflation `0 -> M -> I -> L -> 0` of `X` with `I` relatively injective.
    pub fn injective_conflation(&self, m: &Module) -> Result<ShortExact> {
        let (_, iota) = injective_envelope(m);
        if self.is_acceptable_inflation(&iota)? {
            return Ok(inflation_sequence(iota));
        }
        // Coevaluation into the relatively injective generators.
        let injs = self.x_injective_generators()?;
        let mut pieces = Vec::new();
        let mut maps = Vec::new();
        for g in &injs {
            for f in hom_space(m, g)? {
                pieces.push(g.clone());
                maps.push(f);
            }
        }
        let sum = direct_sum(&self.alg, &pieces)?;
        let l = column_map(m, &sum, &maps);
        if l.is_mono() && self.is_acceptable_inflation(&l)? {
            return Ok(inflation_sequence(l));
        }
        Err(Error::EnoughInjectivesNotVerified(format!(
            "no relatively injective conflation found for a module with dims {:?}",
            m.dims()
        )))
    }

    fn is_acceptable_inflation(&self, l: &ModMap) -> Result<bool> {
        let (c, _) = crate::module::cokernel(l);
        Ok(self.contains(l.target())?
            && self.contains(&c)?
            && decompose(l.target())?
                .iter()
                .map(|(s, _)| self.is_x_injective(s))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b))
    }

    /// Checks the resolving hypotheses on generators and sums of at most two generators.
    pub fn validate_resolving(&self, dim_bound: usize, budget: &Budget) -> Result<ResolvingReport> {
        let mut report = ResolvingReport {
            contains_projectives: None,
            extension_closed: None,
            epi_kernel_closed: None,
            summand_closed: None,
            bounded: false,
        };
        for proj in projectives(&self.alg) {
            if !self.contains(&proj)? {
                report.contains_projectives = Some(Violation {
                    detail: "indecomposable projective outside the subcategory".into(),
                    modules: vec![proj],
                });
                break;
            }
        }
        'ext: for z in &self.generators {
            for x in &self.generators {
                for (_, seq) in ext1_middle_terms(z, x)? {
                    if budget.tick(|| String::from("extension closure")).is_err() {
                        report.bounded = true;
                        break 'ext;
                    }
                    if !self.contains(seq.middle())? {
                        report.extension_closed = Some(Violation {
                            detail: "extension of generators leaves the subcategory".into(),
                            modules: vec![z.clone(), x.clone(), seq.middle().clone()],
                        });
                        break 'ext;
                    }
                }
            }
        }
        let mut sources: Vec<Module> = self.generators.clone();
        for i in 0..self.generators.len() {
            for j in i..self.generators.len() {
                let s = direct_sum(&self.alg, &[self.generators[i].clone(), self.generators[j].clone()])?.module;
                if s.total_dim() <= dim_bound {
                    sources.push(s);
                }
            }
        }
        'epi: for m in &sources {
            for h in &self.generators {
                let hom = hom_space(m, h)?;
                for f in candidate_maps(m, h, &hom) {
                    if budget.tick(|| String::from("kernel closure")).is_err() {
                        report.bounded = true;
                        break 'epi;
                    }
                    if f.is_epi() {
                        let (k, _) = crate::module::kernel(&f);
                        if !self.contains(&k)? {
                            report.epi_kernel_closed = Some(Violation {
                                detail: "kernel of an epimorphism leaves the subcategory".into(),
                                modules: vec![m.clone(), h.clone(), k],
                            });
                            break 'epi;
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

fn inflation_sequence(l: ModMap) -> ShortExact {
    let (_, q) = crate::module::cokernel(&l);
    ShortExact { i: l, p: q }
}

fn span_dim(maps: &[ModMap]) -> usize {
    let Some(first) = maps.first() else {
        return 0;
    };
    let mut span = crate::linalg::SpanBuilder::new(first.source().p(), first.flatten().len());
    for m in maps {
        span.insert(&m.flatten());
    }
    span.dim()
}

/// Every map when the hom space is small, otherwise basis elements and their pairwise sums.
fn candidate_maps(m: &Module, n: &Module, hom: &[ModMap]) -> Vec<ModMap> {
    let p = m.p() as u64;
    if p.checked_pow(hom.len() as u32).is_some_and(|c| c <= 256) {
        return all_vectors(m.p(), hom.len()).iter().map(|c| ModMap::combination(m, n, hom, c)).collect();
    }
    let mut out: Vec<ModMap> = hom.to_vec();
    for i in 0..hom.len() {
        for j in i + 1..hom.len() {
            out.push(hom[i].add(&hom[j]));
        }
    }
    out
}

/// One short exact sequence per class of `Ext^1(z, x)`, in lexicographic class order.
/// The zero class comes first and has middle term `x ⊕ z`.
pub fn ext1_middle_terms(z: &Module, x: &Module) -> Result<Vec<(Vec<u32>, ShortExact)>> {
    let ext = Ext1::new(z, x)?;
    Ok(ext
        .all_classes()
        .into_iter()
        .map(|c| {
            let s = ext.sequence(&c);
            (c, s)
        })
        .collect())
}

/// True when the sequence splits: `i` has a retraction.
pub fn is_split(seq: &ShortExact) -> Result<bool> {
    Ok(factor_through_right(&seq.i, &ModMap::identity(seq.i.source()))?.is_some())
}
