//! Finite-dimensional right modules, given as representations of the quiver.
//!
//! A module assigns a space `F_p^{dims[v]}` to each vertex and a matrix of shape
//! `dims[target] x dims[source]` to each arrow. Vectors are columns.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::Algebra;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::neg_mod;
use crate::linalg::{kernel_basis, local_min_poly, poly_roots, Mat, SpanBuilder, Vector};

#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    action: Vec<Mat>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dims == other.dims && self.action == other.action
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module over {} with dims {:?}", self.alg.name(), self.dims)?;
        for (a, m) in self.alg.arrows().iter().zip(&self.action) {
            write!(f, "\n {} = {:?}", a.label, m.to_rows())?;
        }
        Ok(())
    }
}

impl Module {
    /// Builds a module, checking shapes and that every relation acts as zero.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, action: Vec<Mat>) -> Result<Module> {
        let m = Module { alg, dims, action };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, action: Vec<Mat>) -> Module {
        let m = Module { alg, dims, action };
        debug_assert!(m.validate().is_ok(), "invalid module {m:?}");
        m
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.alg.num_vertices();
        if self.dims.len() != n {
            return Err(Error::DimensionMismatch {
                context: "module dimension vector",
                expected: n,
                found: self.dims.len(),
            });
        }
        if self.action.len() != self.alg.arrows().len() {
            return Err(Error::DimensionMismatch {
                context: "module action count",
                expected: self.alg.arrows().len(),
                found: self.action.len(),
            });
        }
        let p = self.alg.p();
        for (a, m) in self.alg.arrows().iter().zip(&self.action) {
            if m.p() != p {
                return Err(Error::ModulusMismatch { left: p, right: m.p() });
            }
            if m.rows() != self.dims[a.target] || m.cols() != self.dims[a.source] {
                return Err(Error::InvalidInput(format!(
                    "arrow {} acts by a {}x{} matrix, expected {}x{}",
                    a.label,
                    m.rows(),
                    m.cols(),
                    self.dims[a.target],
                    self.dims[a.source]
                )));
            }
        }
        for (r, rel) in self.alg.presentation().relations.iter().enumerate() {
            let (s, t) = self.alg.presentation().word_ends(&rel[0].1).expect("validated relation");
            let mut acc = Mat::zeros(p, self.dims[t], self.dims[s]);
            for (c, w) in rel {
                acc = acc.add_scaled(&self.word_action(w, s), *c);
            }
            if !acc.is_zero() {
                return Err(Error::InvalidInput(format!("relation {r} does not act as zero")));
            }
        }
        Ok(())
    }

    pub fn zero(alg: Arc<Algebra>) -> Module {
        let p = alg.p();
        let n = alg.num_vertices();
        let action = alg.arrows().iter().map(|_| Mat::zeros(p, 0, 0)).collect();
        Module { alg, dims: vec![0; n], action }
    }

    /// The simple module at vertex `v`.
    pub fn simple(alg: Arc<Algebra>, v: usize) -> Module {
        let p = alg.p();
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let action = alg.arrows().iter().map(|a| Mat::zeros(p, dims[a.target], dims[a.source])).collect();
        Module { alg, dims, action }
    }

    /// The indecomposable projective `e_v A`; its basis at vertex `w` is the paths from `v` to `w`.
    pub fn projective(alg: Arc<Algebra>, v: usize) -> Module {
        let p = alg.p();
        let n = alg.num_vertices();
        let cells: Vec<Vec<usize>> = (0..n).map(|w| alg.basis_between(v, w)).collect();
        let dims: Vec<usize> = cells.iter().map(|c| c.len()).collect();
        let action = (0..alg.arrows().len())
            .map(|ai| {
                let a = &alg.arrows()[ai];
                let elem = alg.arrow_element(ai);
                let src = &cells[a.source];
                let tgt = &cells[a.target];
                let mut m = Mat::zeros(p, tgt.len(), src.len());
                for (c, &x) in src.iter().enumerate() {
                    let prod = alg.mul_elems(&alg.unit_vector(x), &elem);
                    for (r, &y) in tgt.iter().enumerate() {
                        m.set(r, c, prod[y]);
                    }
                }
                m
            })
            .collect();
        Module::new_unchecked(alg, dims, action)
    }

    /// The indecomposable injective `D(A e_v)`; its basis at vertex `w` is dual to the paths from `w` to `v`.
    pub fn injective(alg: Arc<Algebra>, v: usize) -> Module {
        let p = alg.p();
        let n = alg.num_vertices();
        let cells: Vec<Vec<usize>> = (0..n).map(|w| alg.basis_between(w, v)).collect();
        let dims: Vec<usize> = cells.iter().map(|c| c.len()).collect();
        let action = (0..alg.arrows().len())
            .map(|ai| {
                let a = &alg.arrows()[ai];
                let elem = alg.arrow_element(ai);
                let src = &cells[a.source];
                let tgt = &cells[a.target];
                // (phi . a)(x) = phi(a x) for x a path from a.target to v.
                let mut m = Mat::zeros(p, tgt.len(), src.len());
                for (r, &x) in tgt.iter().enumerate() {
                    let prod = alg.mul_elems(&elem, &alg.unit_vector(x));
                    for (c, &y) in src.iter().enumerate() {
                        m.set(r, c, prod[y]);
                    }
                }
                m
            })
            .collect();
        Module::new_unchecked(alg, dims, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn p(&self) -> u32 {
        self.alg.p()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Mat {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    /// Matrix by which a word of arrows starting at `source` acts.
    pub fn word_action(&self, word: &[usize], source: usize) -> Mat {
        let mut acc = Mat::identity(self.p(), self.dims[source]);
        for &a in word {
            acc = self.action[a].mul(&acc);
        }
        acc
    }

    /// Action of the `k`-th basis path of the algebra.
    pub fn basis_action(&self, k: usize) -> Mat {
        let path = &self.alg.basis()[k];
        self.word_action(&path.arrows, path.source)
    }

    /// Offsets of each vertex in the concatenated coordinate space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }
}

/// A module homomorphism, one block per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMap {
    source: Module,
    target: Module,
    blocks: Vec<Mat>,
}

impl fmt::Debug for ModMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModMap {:?} -> {:?}:", self.source.dims, self.target.dims)?;
        for b in &self.blocks {
            write!(f, " {:?}", b.to_rows())?;
        }
        Ok(())
    }
}

impl ModMap {
    pub fn new(source: Module, target: Module, blocks: Vec<Mat>) -> Result<ModMap> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        let n = source.dims.len();
        if blocks.len() != n {
            return Err(Error::DimensionMismatch { context: "map block count", expected: n, found: blocks.len() });
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.rows() != target.dims[v] || b.cols() != source.dims[v] {
                return Err(Error::InvalidInput(format!("block {v} has the wrong shape")));
            }
        }
        let f = ModMap { source, target, blocks };
        if !f.intertwines() {
            return Err(Error::InvalidInput("blocks do not commute with the arrow actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, blocks: Vec<Mat>) -> ModMap {
        let f = ModMap { source, target, blocks };
        debug_assert!(f.intertwines(), "map does not intertwine: {f:?}");
        f
    }

    fn intertwines(&self) -> bool {
        self.source.alg.arrows().iter().enumerate().all(|(ai, a)| {
            self.blocks[a.target].mul(&self.source.action[ai]) == self.target.action[ai].mul(&self.blocks[a.source])
        })
    }

    pub fn identity(m: &Module) -> ModMap {
        let blocks = m.dims.iter().map(|&d| Mat::identity(m.p(), d)).collect();
        ModMap { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn zero(source: &Module, target: &Module) -> ModMap {
        let blocks = source.dims.iter().zip(&target.dims).map(|(&s, &t)| Mat::zeros(source.p(), t, s)).collect();
        ModMap { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Mat {
        &self.blocks[v]
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ModMap) -> ModMap {
        debug_assert_eq!(g.target.dims, self.source.dims);
        ModMap {
            source: g.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, g: &ModMap) -> ModMap {
        self.add_scaled(g, 1)
    }

    pub fn sub(&self, g: &ModMap) -> ModMap {
        self.add_scaled(g, neg_mod(1, self.source.p()))
    }

    pub fn add_scaled(&self, g: &ModMap, c: u32) -> ModMap {
        ModMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.add_scaled(b, c)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> ModMap {
        ModMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> ModMap {
        self.scale(neg_mod(1, self.source.p()))
    }

    /// Linear combination `Σ c_i maps[i]`; all maps share source and target.
    pub fn combination(source: &Module, target: &Module, maps: &[ModMap], coeffs: &[u32]) -> ModMap {
        let mut acc = ModMap::zero(source, target);
        for (m, &c) in maps.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add_scaled(m, c);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_invertible())
    }

    pub fn inverse(&self) -> Option<ModMap> {
        let blocks: Option<Vec<Mat>> = self.blocks.iter().map(|b| b.inverse()).collect();
        Some(ModMap { source: self.target.clone(), target: self.source.clone(), blocks: blocks? })
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    /// Blocks flattened row-major and concatenated: coordinates in the space of all block tuples.
    pub fn flatten(&self) -> Vector {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.extend_from_slice(b.data());
        }
        out
    }

    /// Same blocks, reinterpreted between other (equal-shape) modules.
    pub fn with_ends(&self, source: &Module, target: &Module) -> ModMap {
        ModMap::new_unchecked(source.clone(), target.clone(), self.blocks.clone())
    }

    /// Image of a vector of the source at vertex `v`.
    pub fn apply(&self, v: usize, x: &[u32]) -> Vector {
        self.blocks[v].mul_vec(x)
    }
}

fn check_same(m: &Module, n: &Module) -> Result<()> {
    if m.same_algebra(n) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Solution space of the intertwining system, in flattened-block coordinates.
fn hom_kernel(m: &Module, n: &Module) -> Vec<Vector> {
    let p = m.p();
    let verts = m.dims.len();
    let mut offset = vec![0usize; verts + 1];
    for v in 0..verts {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[verts];
    if unknowns == 0 {
        return Vec::new();
    }
    let arrows = m.alg.arrows();
    let eqs: usize = arrows.iter().map(|a| n.dims[a.target] * m.dims[a.source]).sum();
    let mut sys = Mat::zeros(p, eqs, unknowns);
    let mut row = 0;
    for (ai, a) in arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let am = &m.action[ai];
        let an = &n.action[ai];
        // X_t A^M - A^N X_s = 0; X_t is n_t x m_t, X_s is n_s x m_s.
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                for k in 0..m.dims[t] {
                    let coef = am.get(k, c);
                    if coef != 0 {
                        let idx = offset[t] + r * m.dims[t] + k;
                        let cur = sys.get(row, idx);
                        sys.set(row, idx, (cur + coef) % p);
                    }
                }
                for k in 0..n.dims[s] {
                    let coef = an.get(r, k);
                    if coef != 0 {
                        let idx = offset[s] + k * m.dims[s] + c;
                        let cur = sys.get(row, idx);
                        sys.set(row, idx, (cur + neg_mod(coef, p)) % p);
                    }
                }
                row += 1;
            }
        }
    }
    kernel_basis(&sys)
}

fn unflatten(m: &Module, n: &Module, v: &[u32]) -> ModMap {
    let mut blocks = Vec::with_capacity(m.dims.len());
    let mut off = 0;
    for (&s, &t) in m.dims.iter().zip(&n.dims) {
        blocks.push(Mat::from_vec(m.p(), t, s, v[off..off + s * t].to_vec()));
        off += s * t;
    }
    ModMap::new_unchecked(m.clone(), n.clone(), blocks)
}

/// A basis of `Hom(m, n)`.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModMap>> {
    check_same(m, n)?;
    Ok(hom_kernel(m, n).iter().map(|v| unflatten(m, n, v)).collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    check_same(m, n)?;
    Ok(hom_kernel(m, n).len())
}

/// `Hom(m, n)` with a basis and coordinates of arbitrary maps.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<ModMap>,
    coords: Option<Mat>,
}

impl HomSpace {
    pub fn new(m: &Module, n: &Module) -> Result<HomSpace> {
        let basis = hom_space(m, n)?;
        Ok(Self::from_basis(m, n, basis))
    }

    pub fn from_basis(m: &Module, n: &Module, basis: Vec<ModMap>) -> HomSpace {
        let len: usize = m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum();
        let cols: Vec<Vector> = basis.iter().map(|f| f.flatten()).collect();
        let coords = Mat::from_cols(m.p(), len, &cols).left_inverse();
        HomSpace { source: m.clone(), target: n.clone(), basis, coords }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the basis; `f` must be a homomorphism between the same modules.
    pub fn coords(&self, f: &ModMap) -> Vector {
        match &self.coords {
            Some(l) => l.mul_vec(&f.flatten()),
            None => Vec::new(),
        }
    }

    pub fn element(&self, coeffs: &[u32]) -> ModMap {
        ModMap::combination(&self.source, &self.target, &self.basis, coeffs)
    }
}

/// Submodule spanned per vertex by the given (independent) columns; they must be stable
/// under the action. Returns the submodule and its inclusion.
pub fn submodule(m: &Module, gens: &[Mat]) -> (Module, ModMap) {
    let dims: Vec<usize> = gens.iter().map(|g| g.cols()).collect();
    let lefts: Vec<Mat> = gens.iter().map(|g| g.left_inverse().expect("independent generators")).collect();
    let action = m
        .alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| lefts[a.target].mul(&m.action[ai]).mul(&gens[a.source]))
        .collect();
    let sub = Module::new_unchecked(m.alg.clone(), dims, action);
    let incl = ModMap::new_unchecked(sub.clone(), m.clone(), gens.to_vec());
    (sub, incl)
}

/// Quotient of `m` by a stable subspace given by independent columns per vertex.
pub fn quotient(m: &Module, gens: &[Mat]) -> (Module, ModMap) {
    let p = m.p();
    let mut projs = Vec::new();
    let mut sections = Vec::new();
    for (v, g) in gens.iter().enumerate() {
        let d = m.dims[v];
        let comp = g.complement_indices();
        let section = Mat::from_fn(p, d, comp.len(), |i, j| u32::from(i == comp[j]));
        let full = Mat::hstack(p, d, &[g, &section]);
        let inv = full.inverse().expect("complement completes a basis");
        projs.push(inv.block(g.cols(), comp.len(), 0, d));
        sections.push(section);
    }
    let dims: Vec<usize> = sections.iter().map(|s| s.cols()).collect();
    let action = m
        .alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| projs[a.target].mul(&m.action[ai]).mul(&sections[a.source]))
        .collect();
    let q = Module::new_unchecked(m.alg.clone(), dims, action);
    let proj = ModMap::new_unchecked(m.clone(), q.clone(), projs);
    (q, proj)
}

fn cols_mat(p: u32, rows: usize, cols: &[Vector]) -> Mat {
    Mat::from_cols(p, rows, cols)
}

pub fn kernel(f: &ModMap) -> (Module, ModMap) {
    let p = f.source.p();
    let gens: Vec<Mat> =
        f.blocks.iter().enumerate().map(|(v, b)| cols_mat(p, f.source.dims[v], &b.kernel_basis())).collect();
    submodule(&f.source, &gens)
}

pub fn image(f: &ModMap) -> (Module, ModMap) {
    let p = f.source.p();
    let gens: Vec<Mat> =
        f.blocks.iter().enumerate().map(|(v, b)| cols_mat(p, f.target.dims[v], &b.image_basis())).collect();
    submodule(&f.target, &gens)
}

pub fn cokernel(f: &ModMap) -> (Module, ModMap) {
    let p = f.source.p();
    let gens: Vec<Mat> =
        f.blocks.iter().enumerate().map(|(v, b)| cols_mat(p, f.target.dims[v], &b.image_basis())).collect();
    quotient(&f.target, &gens)
}

/// Given an epimorphism `q: T -> E` and `g: T -> Z` vanishing on `ker q`, the unique `h` with `h ∘ q = g`.
pub fn factor_through_epi(q: &ModMap, g: &ModMap) -> ModMap {
    let blocks = q
        .blocks
        .iter()
        .zip(&g.blocks)
        .map(|(qb, gb)| {
            let right = qb.transpose().left_inverse().expect("epimorphism").transpose();
            gb.mul(&right)
        })
        .collect();
    ModMap::new_unchecked(q.target.clone(), g.target.clone(), blocks)
}

/// Given a monomorphism `i: K -> M` and `g: T -> M` with image inside `im i`, the unique `h` with `i ∘ h = g`.
pub fn factor_through_mono(i: &ModMap, g: &ModMap) -> ModMap {
    let blocks =
        i.blocks.iter().zip(&g.blocks).map(|(ib, gb)| ib.left_inverse().expect("monomorphism").mul(gb)).collect();
    ModMap::new_unchecked(g.source.clone(), i.source.clone(), blocks)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModMap>,
    pub projections: Vec<ModMap>,
}

pub fn direct_sum(alg: &Arc<Algebra>, ms: &[Module]) -> Result<DirectSum> {
    for m in ms {
        if !Arc::ptr_eq(alg, &m.alg) && **alg != *m.alg {
            return Err(Error::AlgebraMismatch);
        }
    }
    let p = alg.p();
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| ms.iter().map(|m| m.dims[v]).sum()).collect();
    let action = (0..alg.arrows().len())
        .map(|ai| {
            let blocks: Vec<&Mat> = ms.iter().map(|m| &m.action[ai]).collect();
            Mat::block_diag(p, &blocks)
        })
        .collect();
    let module = Module::new_unchecked(alg.clone(), dims.clone(), action);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offs = vec![0usize; n];
    for m in ms {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for v in 0..n {
            let mut i = Mat::zeros(p, dims[v], m.dims[v]);
            let mut q = Mat::zeros(p, m.dims[v], dims[v]);
            for k in 0..m.dims[v] {
                i.set(offs[v] + k, k, 1);
                q.set(k, offs[v] + k, 1);
            }
            offs[v] += m.dims[v];
            inj.push(i);
            proj.push(q);
        }
        injections.push(ModMap::new_unchecked(m.clone(), module.clone(), inj));
        projections.push(ModMap::new_unchecked(module.clone(), m.clone(), proj));
    }
    Ok(DirectSum { module, injections, projections })
}

/// Map `⊕ sources -> target` assembled from components.
pub fn row_map(sum: &DirectSum, target: &Module, parts: &[ModMap]) -> ModMap {
    let mut acc = ModMap::zero(&sum.module, target);
    for (f, q) in parts.iter().zip(&sum.projections) {
        acc = acc.add(&f.compose(q));
    }
    acc
}

/// Map `source -> ⊕ targets` assembled from components.
pub fn column_map(source: &Module, sum: &DirectSum, parts: &[ModMap]) -> ModMap {
    let mut acc = ModMap::zero(source, &sum.module);
    for (f, i) in parts.iter().zip(&sum.injections) {
        acc = acc.add(&i.compose(f));
    }
    acc
}

/// Pushout of `f: U -> V` and `g: U -> W`: returns `(E, V -> E, W -> E)`.
pub fn pushout(f: &ModMap, g: &ModMap) -> (Module, ModMap, ModMap) {
    let alg = f.source.alg.clone();
    let sum = direct_sum(&alg, &[f.target.clone(), g.target.clone()]).expect("same algebra");
    let d = column_map(&f.source, &sum, &[f.clone(), g.neg()]);
    let (e, q) = cokernel(&d);
    let to_e_v = q.compose(&sum.injections[0]);
    let to_e_w = q.compose(&sum.injections[1]);
    (e, to_e_v, to_e_w)
}

/// Pullback of `f: V -> U` and `g: W -> U`: returns `(E, E -> V, E -> W)`.
pub fn pullback(f: &ModMap, g: &ModMap) -> (Module, ModMap, ModMap) {
    let alg = f.source.alg.clone();
    let sum = direct_sum(&alg, &[f.source.clone(), g.source.clone()]).expect("same algebra");
    let d = row_map(&sum, &f.target, &[f.clone(), g.neg()]);
    let (e, i) = kernel(&d);
    (e.clone(), sum.projections[0].compose(&i), sum.projections[1].compose(&i))
}

/// Solves `h ∘ g = f` for `h: Y -> Z` given `g: X -> Y`, `f: X -> Z`. `None` when no factorization exists.
pub fn factor_through_right(g: &ModMap, f: &ModMap) -> Result<Option<ModMap>> {
    let hom = hom_space(&g.target, &f.target)?;
    let cols: Vec<Vector> = hom.iter().map(|h| h.compose(g).flatten()).collect();
    solve_combination(&cols, &f.flatten(), f.source.p())
        .map_or(Ok(None), |c| Ok(Some(ModMap::combination(&g.target, &f.target, &hom, &c))))
}

/// Solves `g ∘ h = f` for `h: X -> Y` given `g: Y -> Z`, `f: X -> Z`.
pub fn factor_through_left(g: &ModMap, f: &ModMap) -> Result<Option<ModMap>> {
    let hom = hom_space(&f.source, &g.source)?;
    let cols: Vec<Vector> = hom.iter().map(|h| g.compose(h).flatten()).collect();
    solve_combination(&cols, &f.flatten(), f.source.p())
        .map_or(Ok(None), |c| Ok(Some(ModMap::combination(&f.source, &g.source, &hom, &c))))
}

/// Coefficients `c` with `Σ c_i cols[i] = v`, if any.
pub(crate) fn solve_combination(cols: &[Vector], v: &[u32], p: u32) -> Option<Vector> {
    if v.iter().all(|&x| x == 0) {
        return Some(vec![0; cols.len()]);
    }
    if cols.is_empty() {
        return None;
    }
    let a = Mat::from_cols(p, v.len(), cols);
    crate::linalg::solve_vec(&a, v)
}

// ---------------------------------------------------------------------------
// Radical, top, socle, projective covers, injective envelopes

/// Per-vertex basis (as columns) of `rad M = Σ im(arrows)`.
pub fn radical_gens(m: &Module) -> Vec<Mat> {
    let p = m.p();
    (0..m.dims.len())
        .map(|v| {
            let incoming: Vec<&Mat> =
                m.alg.arrows().iter().enumerate().filter(|(_, a)| a.target == v).map(|(ai, _)| &m.action[ai]).collect();
            if incoming.is_empty() {
                return Mat::zeros(p, m.dims[v], 0);
            }
            let h = Mat::hstack(p, m.dims[v], &incoming);
            cols_mat(p, m.dims[v], &h.image_basis())
        })
        .collect()
}

/// Per-vertex basis of the socle: vectors killed by every arrow leaving the vertex.
pub fn socle_gens(m: &Module) -> Vec<Mat> {
    let p = m.p();
    (0..m.dims.len())
        .map(|v| {
            let outgoing: Vec<&Mat> =
                m.alg.arrows().iter().enumerate().filter(|(_, a)| a.source == v).map(|(ai, _)| &m.action[ai]).collect();
            if outgoing.is_empty() {
                return Mat::identity(p, m.dims[v]);
            }
            let st = Mat::vstack(p, m.dims[v], &outgoing);
            cols_mat(p, m.dims[v], &st.kernel_basis())
        })
        .collect()
}

pub fn top_dims(m: &Module) -> Vec<usize> {
    radical_gens(m).iter().zip(&m.dims).map(|(r, &d)| d - r.cols()).collect()
}

pub fn socle_dims(m: &Module) -> Vec<usize> {
    socle_gens(m).iter().map(|s| s.cols()).collect()
}

/// Projective cover `P -> M`, with `P = ⊕ P(v)^{dim top(M)_v}` ordered by vertex.
pub fn projective_cover(m: &Module) -> (Module, ModMap) {
    let alg = m.alg.clone();
    let n = alg.num_vertices();
    let rad = radical_gens(m);
    let mut pieces = Vec::new();
    let mut maps: Vec<ModMap> = Vec::new();
    for v in 0..n {
        let comp = rad[v].complement_indices();
        if comp.is_empty() {
            continue;
        }
        let pv = Module::projective(alg.clone(), v);
        for &idx in &comp {
            let mut gen = vec![0u32; m.dims[v]];
            gen[idx] = 1;
            maps.push(map_from_projective(&pv, v, m, &gen));
            pieces.push(pv.clone());
        }
    }
    let sum = direct_sum(&alg, &pieces).expect("same algebra");
    let pi = row_map(&sum, m, &maps);
    (sum.module, pi)
}

/// The map `P(v) -> M` sending `e_v` to `gen ∈ M_v`.
pub fn map_from_projective(pv: &Module, v: usize, m: &Module, gen: &[u32]) -> ModMap {
    let alg = &m.alg;
    let p = m.p();
    let blocks = (0..alg.num_vertices())
        .map(|w| {
            let cols: Vec<Vector> = alg.basis_between(v, w).iter().map(|&k| m.basis_action(k).mul_vec(gen)).collect();
            Mat::from_cols(p, m.dims[w], &cols)
        })
        .collect();
    ModMap::new_unchecked(pv.clone(), m.clone(), blocks)
}

/// `Ω(M)` with its inclusion into the projective cover.
pub fn syzygy(m: &Module) -> (Module, ModMap) {
    let (_, pi) = projective_cover(m);
    kernel(&pi)
}

/// Injective envelope `M -> I`, with `I = ⊕ I(v)^{dim soc(M)_v}` ordered by vertex.
pub fn injective_envelope(m: &Module) -> (Module, ModMap) {
    let alg = m.alg.clone();
    let p = m.p();
    let n = alg.num_vertices();
    let soc = socle_gens(m);
    let mut pieces = Vec::new();
    let mut maps = Vec::new();
    for v in 0..n {
        if soc[v].cols() == 0 {
            continue;
        }
        let iv = Module::injective(alg.clone(), v);
        let comp = soc[v].complement_indices();
        let section = Mat::from_fn(p, m.dims[v], comp.len(), |i, j| u32::from(i == comp[j]));
        let full = Mat::hstack(p, m.dims[v], &[&soc[v], &section]);
        let inv = full.inverse().expect("basis");
        for k in 0..soc[v].cols() {
            let xi = inv.block(k, 1, 0, m.dims[v]);
            maps.push(map_to_injective(m, &iv, v, &xi));
            pieces.push(iv.clone());
        }
    }
    let sum = direct_sum(&alg, &pieces).expect("same algebra");
    let iota = column_map(m, &sum, &maps);
    (sum.module, iota)
}

/// The map `M -> I(v)` given by a functional `xi` on `M_v` (a `1 x dims[v]` matrix).
pub fn map_to_injective(m: &Module, iv: &Module, v: usize, xi: &Mat) -> ModMap {
    let alg = &m.alg;
    let p = m.p();
    let blocks = (0..alg.num_vertices())
        .map(|w| {
            let rows: Vec<Vec<u32>> =
                alg.basis_between(w, v).iter().map(|&k| xi.mul(&m.basis_action(k)).row(0).to_vec()).collect();
            let mut out = Mat::zeros(p, rows.len(), m.dims[w]);
            for (r, row) in rows.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    out.set(r, c, x);
                }
            }
            out
        })
        .collect();
    ModMap::new_unchecked(m.clone(), iv.clone(), blocks)
}

/// The cokernel of the injective envelope, with the projection.
pub fn cosyzygy(m: &Module) -> (Module, ModMap) {
    let (_, iota) = injective_envelope(m);
    cokernel(&iota)
}

pub fn is_projective(m: &Module) -> bool {
    let (pc, _) = projective_cover(m);
    pc.total_dim() == m.total_dim()
}

pub fn is_injective(m: &Module) -> bool {
    let (ie, _) = injective_envelope(m);
    ie.total_dim() == m.total_dim()
}

pub fn projectives(alg: &Arc<Algebra>) -> Vec<Module> {
    (0..alg.num_vertices()).map(|v| Module::projective(alg.clone(), v)).collect()
}

pub fn injectives(alg: &Arc<Algebra>) -> Vec<Module> {
    (0..alg.num_vertices()).map(|v| Module::injective(alg.clone(), v)).collect()
}

pub fn simples(alg: &Arc<Algebra>) -> Vec<Module> {
    (0..alg.num_vertices()).map(|v| Module::simple(alg.clone(), v)).collect()
}

/// `D M = Hom_k(M, k)` as a module over the opposite algebra.
pub fn dual_module(m: &Module, op: &Arc<Algebra>) -> Result<Module> {
    if *op.presentation() != m.alg.presentation().opposite() {
        return Err(Error::AlgebraMismatch);
    }
    let action = m.action.iter().map(|a| a.transpose()).collect();
    Ok(Module::new_unchecked(op.clone(), m.dims.clone(), action))
}

/// `D f: D N -> D M`.
pub fn dual_map(f: &ModMap, op: &Arc<Algebra>) -> Result<ModMap> {
    let s = dual_module(&f.target, op)?;
    let t = dual_module(&f.source, op)?;
    Ok(ModMap::new_unchecked(s, t, f.blocks.iter().map(|b| b.transpose()).collect()))
}

// ---------------------------------------------------------------------------
// Stable homs

/// `Hom(M, N)` modulo maps factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: HomSpace,
    /// Basis of the through-projective subspace, as maps.
    pub through_projectives: Vec<ModMap>,
    /// Representatives of a basis of the quotient.
    pub reps: Vec<ModMap>,
    solver: Option<Mat>,
}

impl StableHom {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `f` in the quotient basis.
    pub fn class_of(&self, f: &ModMap) -> Vector {
        let Some(s) = &self.solver else {
            return Vec::new();
        };
        let c = self.hom.coords(f);
        let full = s.mul_vec(&c);
        full[..self.reps.len()].to_vec()
    }

    /// True when `f` factors through a projective.
    pub fn is_stably_zero(&self, f: &ModMap) -> bool {
        self.class_of(f).iter().all(|&x| x == 0)
    }
}

pub fn stable_hom_space(m: &Module, n: &Module) -> Result<StableHom> {
    stable_hom_space_preferring(m, n, &[])
}

/// Like [`stable_hom_space`], taking quotient representatives from `preferred` first.
pub fn stable_hom_space_preferring(m: &Module, n: &Module, preferred: &[ModMap]) -> Result<StableHom> {
    let hom = HomSpace::new(m, n)?;
    let p = m.p();
    let (pn, pi) = projective_cover(n);
    let through: Vec<ModMap> = hom_space(m, &pn)?.iter().map(|g| pi.compose(g)).collect();
    let mut span = SpanBuilder::new(p, hom.dim());
    let mut through_basis = Vec::new();
    let mut all_cols = Vec::new();
    for t in &through {
        let c = hom.coords(t);
        if span.insert(&c) {
            through_basis.push(t.clone());
            all_cols.push(c);
        }
    }
    let mut reps = Vec::new();
    let mut rep_cols = Vec::new();
    for f in preferred.iter().chain(hom.basis.iter()) {
        let c = hom.coords(f);
        if span.insert(&c) {
            reps.push(f.clone());
            rep_cols.push(c);
        }
    }
    let mut cols = rep_cols;
    cols.extend(all_cols);
    let solver = if cols.is_empty() { None } else { Mat::from_cols(p, hom.dim(), &cols).inverse() };
    Ok(StableHom { hom, through_projectives: through_basis, reps, solver })
}

// ---------------------------------------------------------------------------
// Ext^1

/// `Ext^1(Z, X)` computed from the projective presentation `0 -> ΩZ -> P -> Z -> 0`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub z: Module,
    pub x: Module,
    pub cover: ModMap,
    pub syzygy_incl: ModMap,
    /// Representatives `ΩZ -> X` of a basis of Ext^1.
    pub reps: Vec<ModMap>,
    hom_omega: HomSpace,
    solver: Option<Mat>,
}

/// A short exact sequence `0 -> X -> E -> Z -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub i: ModMap,
    pub p: ModMap,
}

impl ShortExact {
    pub fn middle(&self) -> &Module {
        self.i.target()
    }

    pub fn is_exact(&self) -> bool {
        if !self.p.compose(&self.i).is_zero() || !self.i.is_mono() || !self.p.is_epi() {
            return false;
        }
        (0..self.i.source().dims().len())
            .all(|v| self.i.source().dims()[v] + self.p.target().dims()[v] == self.i.target().dims()[v])
    }
}

impl Ext1 {
    pub fn new(z: &Module, x: &Module) -> Result<Ext1> {
        check_same(z, x)?;
        let p = z.p();
        let (pz, cover) = projective_cover(z);
        let (omega, incl) = kernel(&cover);
        let hom_omega = HomSpace::new(&omega, x)?;
        let mut span = SpanBuilder::new(p, hom_omega.dim());
        let mut img_cols = Vec::new();
        for g in hom_space(&pz, x)? {
            let c = hom_omega.coords(&g.compose(&incl));
            if span.insert(&c) {
                img_cols.push(c);
            }
        }
        let mut reps = Vec::new();
        let mut rep_cols = Vec::new();
        for h in &hom_omega.basis {
            let c = hom_omega.coords(h);
            if span.insert(&c) {
                reps.push(h.clone());
                rep_cols.push(c);
            }
        }
        let mut cols = rep_cols;
        cols.extend(img_cols);
        let solver = if cols.is_empty() { None } else { Mat::from_cols(p, hom_omega.dim(), &cols).inverse() };
        Ok(Ext1 { z: z.clone(), x: x.clone(), cover, syzygy_incl: incl, reps, hom_omega, solver })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// The extension with class `Σ coeffs[i] reps[i]`, built as a pushout.
    pub fn sequence(&self, coeffs: &[u32]) -> ShortExact {
        let omega = self.syzygy_incl.source();
        let h = ModMap::combination(omega, &self.x, &self.reps, coeffs);
        let (_, to_e_x, to_e_p) = pushout(&h, &self.syzygy_incl);
        // E -> Z is induced by (0, cover) on X ⊕ P.
        let alg = self.x.alg.clone();
        let sum = direct_sum(&alg, &[self.x.clone(), self.cover.source().clone()]).expect("same algebra");
        let q = row_map(&sum, to_e_x.target(), &[to_e_x.clone(), to_e_p.clone()]);
        let g = row_map(&sum, &self.z, &[ModMap::zero(&self.x, &self.z), self.cover.clone()]);
        let p = factor_through_epi(&q, &g);
        ShortExact { i: to_e_x, p }
    }

    /// Class coordinates of the extension given by `i: X -> E`, `p: E -> Z`.
    pub fn class_of(&self, seq: &ShortExact) -> Result<Vector> {
        if self.dim() == 0 {
            return Ok(Vec::new());
        }
        let lift = factor_through_left(&seq.p, &self.cover)?
            .ok_or_else(|| Error::Precondition("second map is not an epimorphism".into()))?;
        let restricted = lift.compose(&self.syzygy_incl);
        let h = factor_through_mono(&seq.i, &restricted);
        let c = self.hom_omega.coords(&h);
        let full = self.solver.as_ref().expect("nonzero Ext").mul_vec(&c);
        Ok(full[..self.reps.len()].to_vec())
    }

    /// All class coordinate vectors, in lexicographic order (`p^dim` of them).
    pub fn all_classes(&self) -> Vec<Vector> {
        all_vectors(self.z.p(), self.dim())
    }
}

/// All vectors of `F_p^n` in lexicographic order.
pub fn all_vectors(p: u32, n: usize) -> Vec<Vector> {
    let mut out = vec![vec![0u32; n]];
    for i in 0..n {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for c in 0..p {
                let mut w = v.clone();
                w[i] = c;
                next.push(w);
            }
        }
        out = next;
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Decomposition

/// An indecomposable summand with its structure maps into and out of the decomposed module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub incl: ModMap,
    pub proj: ModMap,
}

/// Number of random endomorphisms tried before the exhaustive fallback.
const RANDOM_TRIES: usize = 48;
/// Largest endomorphism ring (as a count of elements) searched exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 12;

/// An endomorphism that is neither nilpotent nor invertible, derived from `phi`, or the
/// scalar `λ` for which `phi - λ` is nilpotent.
enum Probe {
    Splits(ModMap),
    Unipotent(u32),
    Unknown,
}

fn probe(m: &Module, phi: &ModMap) -> Probe {
    let p = m.p() as u64;
    let n = m.total_dim().max(1) as u64;
    let mut q = p;
    while q < n {
        q *= p;
    }
    let psi_blocks: Vec<Mat> = phi.blocks.iter().map(|b| b.pow(q)).collect();
    let psi = ModMap::new_unchecked(m.clone(), m.clone(), psi_blocks);
    // psi is semisimple; check whether it is a single scalar.
    let mut scalar: Option<u32> = None;
    let mut is_scalar = true;
    for b in &psi.blocks {
        if b.rows() == 0 {
            continue;
        }
        match (b.as_scalar(), scalar) {
            (Some(c), None) => scalar = Some(c),
            (Some(c), Some(s)) if c == s => {}
            _ => {
                is_scalar = false;
                break;
            }
        }
    }
    if is_scalar {
        return Probe::Unipotent(scalar.unwrap_or(0));
    }
    let psi_p: Vec<Mat> = psi.blocks.iter().map(|b| b.pow(p).sub(b)).collect();
    let w: usize = psi_p.iter().map(|b| b.cols() - b.rank()).sum();
    let total = m.total_dim();
    if w > 0 && w < total {
        return Probe::Splits(ModMap::new_unchecked(m.clone(), m.clone(), psi_p));
    }
    if w == 0 {
        return Probe::Unknown;
    }
    // All eigenvalues in F_p and psi is diagonalizable but not scalar.
    let b = psi.blocks.iter().find(|b| b.rows() > 0).expect("nonzero module");
    let mut e = vec![0u32; b.rows()];
    e[0] = 1;
    let roots = poly_roots(&local_min_poly(b, &e), m.p());
    let lambda = roots[0];
    let shifted: Vec<Mat> = psi.blocks.iter().map(|b| b.sub(&Mat::scalar(m.p(), b.rows(), lambda))).collect();
    Probe::Splits(ModMap::new_unchecked(m.clone(), m.clone(), shifted))
}

/// Result of searching `End(M)` for a splitting endomorphism.
enum EndoSearch {
    Local,
    Split(ModMap),
}

fn search_endo(m: &Module) -> Result<EndoSearch> {
    let end = hom_space(m, m)?;
    if end.len() <= 1 {
        return Ok(EndoSearch::Local);
    }
    let p = m.p();
    let mut lambdas = Vec::with_capacity(end.len());
    let mut all_unipotent = true;
    for phi in &end {
        match probe(m, phi) {
            Probe::Splits(s) => return Ok(EndoSearch::Split(s)),
            Probe::Unipotent(l) => lambdas.push(l),
            Probe::Unknown => {
                all_unipotent = false;
                lambdas.push(0);
            }
        }
    }
    let id = ModMap::identity(m);
    if all_unipotent {
        // Nilpotent parts; End is local iff they span a nilpotent subalgebra.
        let nil: Vec<ModMap> = end.iter().zip(&lambdas).map(|(phi, &l)| phi.sub(&id.scale(l))).collect();
        let flat_len = m.dims.iter().map(|d| d * d).sum();
        let mut span = SpanBuilder::new(p, flat_len);
        let mut basis = Vec::new();
        for x in &nil {
            if span.insert(&x.flatten()) {
                basis.push(x.clone());
            }
        }
        let mut closed = true;
        'outer: for x in &basis {
            for y in &basis {
                let xy = x.compose(y);
                if !span.contains(&xy.flatten()) {
                    if let Probe::Splits(s) = probe(m, &xy) {
                        return Ok(EndoSearch::Split(s));
                    }
                    closed = false;
                    break 'outer;
                }
            }
        }
        if closed {
            // Powers of the ideal must reach zero.
            let mut power = basis.clone();
            let mut prev_dim = usize::MAX;
            loop {
                if power.is_empty() {
                    return Ok(EndoSearch::Local);
                }
                if power.len() >= prev_dim {
                    for x in &power {
                        if let Probe::Splits(s) = probe(m, x) {
                            return Ok(EndoSearch::Split(s));
                        }
                    }
                    break;
                }
                prev_dim = power.len();
                let mut sp = SpanBuilder::new(p, flat_len);
                let mut next = Vec::new();
                for x in &power {
                    for y in &basis {
                        let xy = x.compose(y);
                        if sp.insert(&xy.flatten()) {
                            next.push(xy);
                        }
                    }
                }
                power = next;
            }
        }
    }
    // Pairwise sums, then random combinations.
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            if let Probe::Splits(s) = probe(m, &end[i].add(&end[j])) {
                return Ok(EndoSearch::Split(s));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f6e6f ^ (m.total_dim() as u64) << 20 ^ end.len() as u64);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<u32> = (0..end.len()).map(|_| rng.next_u32() % p).collect();
        let phi = ModMap::combination(m, m, &end, &coeffs);
        if let Probe::Splits(s) = probe(m, &phi) {
            return Ok(EndoSearch::Split(s));
        }
    }
    let count = (p as u64).checked_pow(end.len() as u32);
    match count {
        Some(c) if c <= EXHAUSTIVE_LIMIT => {
            for coeffs in all_vectors(p, end.len()) {
                let phi = ModMap::combination(m, m, &end, &coeffs);
                if let Probe::Splits(s) = probe(m, &phi) {
                    return Ok(EndoSearch::Split(s));
                }
            }
            // No element splits, so there is no idempotent besides 0 and 1.
            Ok(EndoSearch::Local)
        }
        _ => Err(Error::Inconclusive(format!(
            "could not certify the endomorphism ring (dimension {}) of a module with dims {:?}",
            end.len(),
            m.dims
        ))),
    }
}

pub fn is_nilpotent(phi: &ModMap) -> bool {
    let n = phi.source().total_dim() as u64;
    phi.blocks().iter().all(|b| b.pow(n.max(1)).is_zero())
}

/// Given a basis of a multiplicatively closed space of endomorphisms of `m`, returns `None`
/// when the space is nilpotent and otherwise an element that is not nilpotent.
pub fn non_nilpotent_element(m: &Module, basis: &[ModMap]) -> Result<Option<ModMap>> {
    if let Some(b) = basis.iter().find(|b| !is_nilpotent(b)) {
        return Ok(Some(b.clone()));
    }
    let p = m.p();
    let flat_len = m.dims.iter().map(|d| d * d).sum();
    let mut power: Vec<ModMap> = basis.to_vec();
    loop {
        if power.is_empty() {
            return Ok(None);
        }
        let mut sp = SpanBuilder::new(p, flat_len);
        let mut next = Vec::new();
        for x in &power {
            for y in basis {
                let xy = x.compose(y);
                if sp.insert(&xy.flatten()) {
                    next.push(xy);
                }
            }
        }
        if next.len() >= power.len() {
            break;
        }
        power = next;
    }
    // The powers stabilized at a nonzero space, which contains a non-nilpotent element.
    for i in 0..power.len() {
        for j in 0..power.len() {
            let c = power[i].add(&power[j]);
            if !is_nilpotent(&c) {
                return Ok(Some(c));
            }
            let c = power[i].compose(&power[j]);
            if !is_nilpotent(&c) {
                return Ok(Some(c));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e696c ^ power.len() as u64);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<u32> = (0..power.len()).map(|_| rng.next_u32() % p).collect();
        let c = ModMap::combination(m, m, &power, &coeffs);
        if !is_nilpotent(&c) {
            return Ok(Some(c));
        }
    }
    match (p as u64).checked_pow(power.len() as u32) {
        Some(c) if c <= EXHAUSTIVE_LIMIT => {
            for coeffs in all_vectors(p, power.len()) {
                let c = ModMap::combination(m, m, &power, &coeffs);
                if !is_nilpotent(&c) {
                    return Ok(Some(c));
                }
            }
            Err(Error::Inconclusive("nil space with non-vanishing powers".into()))
        }
        _ => {
            Err(Error::Inconclusive(format!("no non-nilpotent element found in a space of dimension {}", power.len())))
        }
    }
}

/// `ker(φ^N) ⊕ im(φ^N)` for an endomorphism `φ` of `m`: the two summands with inclusions and projections.
pub fn fitting_summands(m: &Module, phi: &ModMap) -> [Summand; 2] {
    fitting_split(m, phi).map(|(module, incl, proj)| Summand { module, incl, proj })
}

/// Splits `m` along a non-nilpotent, non-invertible endomorphism via Fitting's lemma.
fn fitting_split(m: &Module, psi: &ModMap) -> [(Module, ModMap, ModMap); 2] {
    let p = m.p();
    let n = m.total_dim() as u64;
    let chi: Vec<Mat> = psi.blocks.iter().map(|b| b.pow(n)).collect();
    let mut ker_gens = Vec::new();
    let mut img_gens = Vec::new();
    let mut proj_k = Vec::new();
    let mut proj_i = Vec::new();
    for (v, c) in chi.iter().enumerate() {
        let d = m.dims[v];
        let kg = cols_mat(p, d, &c.kernel_basis());
        let ig = cols_mat(p, d, &c.image_basis());
        let full = Mat::hstack(p, d, &[&kg, &ig]);
        let inv = full.inverse().expect("Fitting decomposition");
        proj_k.push(inv.block(0, kg.cols(), 0, d));
        proj_i.push(inv.block(kg.cols(), ig.cols(), 0, d));
        ker_gens.push(kg);
        img_gens.push(ig);
    }
    let (km, ki) = submodule(m, &ker_gens);
    let (im, ii) = submodule(m, &img_gens);
    let kp = ModMap::new_unchecked(m.clone(), km.clone(), proj_k);
    let ip = ModMap::new_unchecked(m.clone(), im.clone(), proj_i);
    [(km, ki, kp), (im, ii, ip)]
}

/// True when `End(m)` is local (certified); `m` must be nonzero.
pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(matches!(search_endo(m)?, EndoSearch::Local))
}

/// Decomposes `m` into indecomposable summands with structure maps.
/// `Σ incl_i ∘ proj_i = id` and `proj_i ∘ incl_j = δ_ij`.
pub fn decompose_with_maps(m: &Module) -> Result<Vec<Summand>> {
    let mut out = Vec::new();
    let mut stack = vec![(m.clone(), ModMap::identity(m), ModMap::identity(m))];
    while let Some((piece, incl, proj)) = stack.pop() {
        if piece.is_zero() {
            continue;
        }
        match search_endo(&piece)? {
            EndoSearch::Local => out.push(Summand { module: piece, incl, proj }),
            EndoSearch::Split(psi) => {
                let parts = fitting_split(&piece, &psi);
                for (sub, si, sp) in parts.into_iter().rev() {
                    stack.push((sub, incl.compose(&si), sp.compose(&proj)));
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.module.total_dim(), a.module.dims.clone()).cmp(&(b.module.total_dim(), b.module.dims.clone()))
    });
    Ok(out)
}

/// Indecomposable summands up to isomorphism, with multiplicities.
pub fn decompose(m: &Module) -> Result<Vec<(Module, usize)>> {
    let summands = decompose_with_maps(m)?;
    let mut groups: Vec<(Module, usize)> = Vec::new();
    for s in summands {
        let mut placed = false;
        for (rep, count) in groups.iter_mut() {
            if iso_indecomposables(rep, &s.module)?.is_some() {
                *count += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push((s.module, 1));
        }
    }
    Ok(groups)
}

/// An isomorphism between two indecomposable modules, if one exists.
///
/// `Hom(M, N)` for `M ≅ N` indecomposable is a local ring's worth of maps whose
/// non-isomorphisms form a proper subspace, so some basis element is invertible.
pub fn iso_indecomposables(m: &Module, n: &Module) -> Result<Option<ModMap>> {
    check_same(m, n)?;
    if m.dims != n.dims {
        return Ok(None);
    }
    if m == n {
        return Ok(Some(ModMap::identity(m)));
    }
    Ok(hom_space(m, n)?.into_iter().find(|f| f.is_iso()))
}

/// Decides `m ≅ n`, returning an isomorphism when one exists.
pub fn is_isomorphic(m: &Module, n: &Module) -> Result<Option<ModMap>> {
    check_same(m, n)?;
    if m.dims != n.dims {
        return Ok(None);
    }
    if m == n {
        return Ok(Some(ModMap::identity(m)));
    }
    if hom_dim(m, m)? != hom_dim(n, n)? || hom_dim(m, n)? != hom_dim(n, m)? {
        return Ok(None);
    }
    let dm = decompose_with_maps(m)?;
    let dn = decompose_with_maps(n)?;
    if dm.len() != dn.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.len()];
    let mut witness = ModMap::zero(m, n);
    for s in &dm {
        let mut found = false;
        for (j, t) in dn.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(iso) = iso_indecomposables(&s.module, &t.module)? {
                witness = witness.add(&t.incl.compose(&iso).compose(&s.proj));
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    debug_assert!(witness.is_iso());
    Ok(Some(witness))
}

/// Position of a module isomorphic to the indecomposable `m` in `list`.
pub fn find_indecomposable(list: &[Module], m: &Module) -> Result<Option<usize>> {
    for (i, x) in list.iter().enumerate() {
        if x.dims == m.dims && iso_indecomposables(x, m)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Enumeration

/// Jordan block `J_k`: `x` acts by the nilpotent shift.
pub fn jordan_block(alg: &Arc<Algebra>, k: usize) -> Module {
    let p = alg.p();
    let action = alg.arrows().iter().map(|_| Mat::from_fn(p, k, k, |i, j| u32::from(i == j + 1))).collect();
    Module::new_unchecked(alg.clone(), vec![k], action)
}

/// `Some(n)` when `alg` is `k[x]/(x^n)` as built by [`crate::algebra::nilpotent_loop`].
pub fn nilpotent_loop_index(alg: &Algebra) -> Option<usize> {
    let pres = alg.presentation();
    if pres.vertices.len() != 1 {
        return None;
    }
    match (pres.arrows.len(), pres.relations.as_slice()) {
        (0, []) => Some(1),
        (1, [rel]) if rel.len() == 1 && rel[0].0 % pres.p != 0 && rel[0].1.iter().all(|&a| a == 0) => {
            Some(rel[0].1.len())
        }
        _ => None,
    }
}

/// All indecomposable modules of total dimension at most `bound`, up to isomorphism.
///
/// Over `k[x]/(x^n)` the Jordan blocks are returned directly. Otherwise every
/// indecomposable of dimension `d` is produced as an extension of a module of
/// dimension `d - 1` by a simple in its socle.
pub fn enumerate_indecomposables(alg: &Arc<Algebra>, bound: usize, budget: &Budget) -> Result<Vec<Module>> {
    if let Some(n) = nilpotent_loop_index(alg) {
        return Ok((1..=n.min(bound)).map(|k| jordan_block(alg, k)).collect());
    }
    enumerate_by_extensions(alg, &simples(alg), bound, budget)
}

/// Closes `blocks` under indecomposable extensions `0 -> block -> E -> Q -> 0` with `Q`
/// a direct sum of already found modules, up to total dimension `bound`.
///
/// Complete whenever every indecomposable of interest has a subobject among `blocks`
/// whose quotient is again of interest.
pub fn enumerate_by_extensions(
    alg: &Arc<Algebra>,
    blocks: &[Module],
    bound: usize,
    budget: &Budget,
) -> Result<Vec<Module>> {
    let p = alg.p();
    let mut found: Vec<Module> = Vec::new();
    for b in blocks {
        if b.total_dim() <= bound && is_indecomposable(b)? && find_indecomposable(&found, b)?.is_none() {
            found.push(b.clone());
        }
    }
    let mut ext_cache: Vec<Vec<Option<Ext1>>> = Vec::new();
    for d in 2..=bound {
        for (bi, block) in blocks.iter().enumerate() {
            let b = block.total_dim();
            if b >= d {
                continue;
            }
            let snapshot: Vec<usize> = (0..found.len()).filter(|&i| found[i].total_dim() < d).collect();
            let sizes: Vec<usize> = snapshot.iter().map(|&i| found[i].total_dim()).collect();
            for multiset in multisets(&sizes, d - b) {
                // Group equal members: (found index, multiplicity).
                let mut groups: Vec<(usize, usize)> = Vec::new();
                for &k in &multiset {
                    let idx = snapshot[k];
                    match groups.last_mut() {
                        Some((last, c)) if *last == idx => *c += 1,
                        _ => groups.push((idx, 1)),
                    }
                }
                let mut exts = Vec::new();
                let mut viable = true;
                for &(idx, mult) in &groups {
                    while ext_cache.len() <= idx {
                        ext_cache.push(Vec::new());
                    }
                    while ext_cache[idx].len() <= bi {
                        ext_cache[idx].push(None);
                    }
                    if ext_cache[idx][bi].is_none() {
                        ext_cache[idx][bi] = Some(Ext1::new(&found[idx], block)?);
                    }
                    let e = ext_cache[idx][bi].as_ref().unwrap().clone();
                    if e.dim() < mult {
                        viable = false;
                        break;
                    }
                    exts.push((e, mult));
                }
                if !viable {
                    continue;
                }
                let option_lists: Vec<Vec<Vec<Vector>>> =
                    exts.iter().map(|(e, mult)| full_rank_echelon(p, *mult, e.dim())).collect();
                let mut choice = vec![0usize; option_lists.len()];
                loop {
                    let dims_hint = || {
                        let mut dv = block.dims().to_vec();
                        for &(idx, mult) in &groups {
                            for (x, y) in dv.iter_mut().zip(found[idx].dims()) {
                                *x += mult * y;
                            }
                        }
                        format!("dimension vector {dv:?}")
                    };
                    budget.tick(dims_hint)?;
                    let mut seqs = Vec::new();
                    for (g, (e, _)) in exts.iter().enumerate() {
                        for row in &option_lists[g][choice[g]] {
                            seqs.push(e.sequence(row));
                        }
                    }
                    let middle = combine_extensions(alg, block, &seqs)?;
                    if is_indecomposable(&middle)? && find_indecomposable(&found, &middle)?.is_none() {
                        found.push(middle);
                    }
                    // Advance the mixed-radix counter.
                    let mut k = 0;
                    loop {
                        if k == choice.len() {
                            break;
                        }
                        choice[k] += 1;
                        if choice[k] < option_lists[k].len() {
                            break;
                        }
                        choice[k] = 0;
                        k += 1;
                    }
                    if k == choice.len() {
                        break;
                    }
                }
            }
        }
    }
    let mut indexed: Vec<(usize, Module)> = found.into_iter().enumerate().collect();
    indexed.sort_by(|(i, a), (j, b)| (a.total_dim(), a.dims(), i).cmp(&(b.total_dim(), b.dims(), j)));
    Ok(indexed.into_iter().map(|(_, m)| m).collect())
}

/// Middle term of the extension of `⊕ Q_i` by `x` whose components are the given sequences
/// `0 -> x -> E_i -> Q_i -> 0`: the pushout of `⊕ E_i` along the codiagonal `x^m -> x`.
fn combine_extensions(alg: &Arc<Algebra>, x: &Module, seqs: &[ShortExact]) -> Result<Module> {
    if seqs.len() == 1 {
        return Ok(seqs[0].middle().clone());
    }
    let xs: Vec<Module> = seqs.iter().map(|_| x.clone()).collect();
    let xsum = direct_sum(alg, &xs)?;
    let mids: Vec<Module> = seqs.iter().map(|s| s.middle().clone()).collect();
    let msum = direct_sum(alg, &mids)?;
    let mut inc = ModMap::zero(&xsum.module, &msum.module);
    for (k, s) in seqs.iter().enumerate() {
        inc = inc.add(&msum.injections[k].compose(&s.i).compose(&xsum.projections[k]));
    }
    let codiag = row_map(&xsum, x, &vec![ModMap::identity(x); seqs.len()]);
    let (e, _, _) = pushout(&codiag, &inc);
    Ok(e)
}

/// Multisets (as sorted index lists) of items with the given sizes summing to `total`.
fn multisets(sizes: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(sizes: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..sizes.len() {
            if sizes[i] <= left && sizes[i] > 0 {
                cur.push(i);
                rec(sizes, i, left - sizes[i], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(sizes, 0, total, &mut Vec::new(), &mut out);
    out
}

/// All `m x n` matrices over `F_p` of rank `m` in reduced row echelon form, as row lists.
fn full_rank_echelon(p: u32, m: usize, n: usize) -> Vec<Vec<Vector>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    for pivots in combinations(n, m) {
        // Free positions: row r, column c > pivots[r], c not a pivot.
        let mut free = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        for vals in all_vectors(p, free.len()) {
            let mut rows = vec![vec![0u32; n]; m];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                rows[r][c] = v;
            }
            out.push(rows);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nilpotent_loop, preprojective};

    fn lam(n: usize) -> Arc<Algebra> {
        Arc::new(nilpotent_loop(n, 2).unwrap())
    }

    #[test]
    fn hom_dimensions_over_lambda2() {
        let a = lam(2);
        let j1 = jordan_block(&a, 1);
        let j2 = jordan_block(&a, 2);
        assert_eq!(hom_dim(&j1, &j1).unwrap(), 1);
        assert_eq!(hom_dim(&j1, &j2).unwrap(), 1);
        assert_eq!(hom_dim(&j2, &j2).unwrap(), 2);
    }

    #[test]
    fn kernels_and_cokernels() {
        let a = lam(2);
        let j1 = jordan_block(&a, 1);
        let j2 = jordan_block(&a, 2);
        let (k, _) = kernel(&ModMap::identity(&j2));
        assert!(k.is_zero());
        let (k, _) = kernel(&ModMap::zero(&j2, &j1));
        assert_eq!(k, j2);
        let proj = hom_space(&j2, &j1).unwrap().into_iter().find(|f| f.is_epi()).unwrap();
        let (k, _) = kernel(&proj);
        assert!(iso_indecomposables(&k, &j1).unwrap().is_some());
        let incl = hom_space(&j1, &j2).unwrap().remove(0);
        let (c, q) = cokernel(&incl);
        assert!(iso_indecomposables(&c, &j1).unwrap().is_some());
        assert!(q.compose(&incl).is_zero());
        let (c, _) = cokernel(&ModMap::identity(&j1));
        assert!(c.is_zero());
    }

    #[test]
    fn direct_sum_endomorphisms() {
        let a = lam(2);
        let j1 = jordan_block(&a, 1);
        let j2 = jordan_block(&a, 2);
        assert!(direct_sum(&a, &[]).unwrap().module.is_zero());
        let s = direct_sum(&a, &[j1.clone(), j1.clone()]).unwrap();
        assert_eq!(s.module.total_dim(), 2);
        assert_eq!(hom_dim(&s.module, &s.module).unwrap(), 4);
        let s = direct_sum(&a, &[j1, j2]).unwrap();
        assert_eq!(hom_dim(&s.module, &s.module).unwrap(), 5);
        for (i, inj) in s.injections.iter().enumerate() {
            for (j, pr) in s.projections.iter().enumerate() {
                let c = pr.compose(inj);
                assert_eq!(c.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn isomorphism_of_conjugate_actions() {
        let a = lam(2);
        let j2 = jordan_block(&a, 2);
        let other = Module::new(a.clone(), vec![2], vec![Mat::from_rows(2, &[vec![1, 1], vec![1, 1]])]).unwrap();
        assert!(is_isomorphic(&j2, &other).unwrap().unwrap().is_iso());
        assert!(is_isomorphic(&j2, &jordan_block(&a, 1)).unwrap().is_none());
        assert!(is_isomorphic(&j2, &j2).unwrap().unwrap().is_identity_like());
    }

    impl ModMap {
        fn is_identity_like(&self) -> bool {
            self.blocks.iter().all(|b| b.is_identity())
        }
    }

    #[test]
    fn decomposition_examples() {
        let a = lam(2);
        let j1 = jordan_block(&a, 1);
        let j2 = jordan_block(&a, 2);
        let d = decompose(&j2).unwrap();
        assert_eq!(d.len(), 1);
        let s = direct_sum(&a, &[j1.clone(), j1.clone()]).unwrap().module;
        let d = decompose(&s).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        let reg = Module::projective(a.clone(), 0);
        assert_eq!(decompose(&reg).unwrap().len(), 1);
        assert!(is_isomorphic(&reg, &j2).unwrap().is_some());
    }

    #[test]
    fn covers_and_syzygies() {
        let a = lam(2);
        let j1 = jordan_block(&a, 1);
        let (p, pi) = projective_cover(&j1);
        assert_eq!(p.total_dim(), 2);
        assert!(pi.is_epi());
        let (om, _) = syzygy(&j1);
        assert!(iso_indecomposables(&om, &j1).unwrap().is_some());
        let (om, _) = syzygy(&jordan_block(&a, 2));
        assert!(om.is_zero());
        let a3 = lam(3);
        let (p, _) = projective_cover(&jordan_block(&a3, 2));
        assert_eq!(p.total_dim(), 3);
        let (om, _) = syzygy(&jordan_block(&a3, 1));
        assert!(iso_indecomposables(&om, &jordan_block(&a3, 2)).unwrap().is_some());
    }

    #[test]
    fn stable_homs_over_lambda2() {
        let a = lam(2);
        let j1 = jordan_block(&a, 1);
        let j2 = jordan_block(&a, 2);
        assert_eq!(stable_hom_space(&j1, &j1).unwrap().dim(), 1);
        assert_eq!(stable_hom_space(&j2, &j2).unwrap().dim(), 0);
        assert_eq!(stable_hom_space(&j2, &j1).unwrap().dim(), 0);
    }

    #[test]
    fn ext_over_lambda2() {
        let a = lam(2);
        let j1 = jordan_block(&a, 1);
        let j2 = jordan_block(&a, 2);
        let e = Ext1::new(&j1, &j1).unwrap();
        assert_eq!(e.dim(), 1);
        let seq = e.sequence(&[1]);
        assert!(seq.is_exact());
        assert!(iso_indecomposables(seq.middle(), &j2).unwrap().is_some());
        assert_eq!(e.class_of(&seq).unwrap(), vec![1]);
        let split = e.sequence(&[0]);
        assert_eq!(split.middle().total_dim(), 2);
        assert_eq!(decompose(split.middle()).unwrap()[0].1, 2);
        assert_eq!(Ext1::new(&j1, &j2).unwrap().dim(), 0);
        assert_eq!(Ext1::new(&j2, &j1).unwrap().dim(), 0);
    }

    #[test]
    fn injectives_and_duals() {
        let a = lam(3);
        let inj = injectives(&a);
        assert_eq!(inj.len(), 1);
        assert!(iso_indecomposables(&inj[0], &jordan_block(&a, 3)).unwrap().is_some());
        let op = Arc::new(a.opposite().unwrap());
        let j2 = jordan_block(&a, 2);
        let d = dual_module(&j2, &op).unwrap();
        let dd = dual_module(&d, &a).unwrap();
        assert!(is_isomorphic(&dd, &j2).unwrap().is_some());
        let s = Module::simple(a.clone(), 0);
        assert_eq!(dual_module(&s, &op).unwrap().total_dim(), 1);
    }

    #[test]
    fn enumeration_examples() {
        let a2 = lam(2);
        assert_eq!(enumerate_indecomposables(&a2, 2, &Budget::unlimited()).unwrap().len(), 2);
        let a3 = lam(3);
        assert_eq!(enumerate_indecomposables(&a3, 3, &Budget::unlimited()).unwrap().len(), 3);
        let pi2 = Arc::new(preprojective(2, 2).unwrap());
        let ind = enumerate_indecomposables(&pi2, 2, &Budget::unlimited()).unwrap();
        assert_eq!(ind.len(), 4);
        let more = enumerate_indecomposables(&pi2, 6, &Budget::unlimited()).unwrap();
        assert_eq!(more.len(), 4);
    }

    #[test]
    fn budget_exhaustion_names_the_next_dimension_vector() {
        let pi2 = Arc::new(preprojective(2, 2).unwrap());
        let err = enumerate_indecomposables(&pi2, 4, &Budget::with_steps(1)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { ref next } if next.starts_with("dimension vector")));
    }
}
