//! Basic finite-dimensional algebras given by a quiver with relations.
//!
//! Paths compose left to right: for arrows `a: i -> j` and `b: j -> k` the path `a*b`
//! runs from `i` to `k`. Modules are right modules, i.e. covariant representations
//! of the quiver, so a path `a1*...*ak` acts on a representation by `M_ak ... M_a1`.
//!
//! An [`Algebra`] keeps a basis of paths together with dense structure constants,
//! computed once from the presentation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{add_mod, is_supported_prime, mul_mod, neg_mod, sub_mod};
use crate::linalg::{local_min_poly, poly_roots, Mat, SpanBuilder, Vector};

/// Default cap on path length while searching for a stable basis.
pub const DEFAULT_MAX_PATH_LENGTH: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// One term `coeff * path` of a relation; the path is a word of arrow indices.
pub type Term = (u32, Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Presentation {
    pub p: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<Term>>,
}

impl Presentation {
    pub fn new(p: u32, vertices: Vec<String>) -> Self {
        Presentation { p, vertices, arrows: Vec::new(), relations: Vec::new() }
    }

    pub fn add_arrow(&mut self, source: usize, target: usize, label: impl Into<String>) -> usize {
        self.arrows.push(Arrow { source, target, label: label.into() });
        self.arrows.len() - 1
    }

    pub fn add_relation(&mut self, terms: Vec<Term>) {
        self.relations.push(terms);
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Source and target of a nonempty word, or `None` if it is not composable.
    pub fn word_ends(&self, word: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*word.first()?)?;
        let mut cur = first.target;
        for &a in &word[1..] {
            let arrow = self.arrows.get(a)?;
            if arrow.source != cur {
                return None;
            }
            cur = arrow.target;
        }
        Some((first.source, cur))
    }

    pub fn validate(&self) -> Result<()> {
        if !is_supported_prime(self.p) {
            return Err(Error::UnsupportedPrime(self.p));
        }
        let n = self.vertices.len();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidInput(format!("arrow {} ({}) has an endpoint outside 0..{n}", i, a.label)));
            }
            if self.arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(Error::InvalidInput(format!("duplicate arrow label {}", a.label)));
            }
        }
        for (r, rel) in self.relations.iter().enumerate() {
            let mut ends = None;
            for (_, word) in rel {
                if word.len() < 2 {
                    return Err(Error::InvalidInput(format!(
                        "relation {r} has a term of length {} (paths in relations need length at least 2)",
                        word.len()
                    )));
                }
                let e = self
                    .word_ends(word)
                    .ok_or_else(|| Error::InvalidInput(format!("relation {r} contains a non-composable path")))?;
                match ends {
                    None => ends = Some(e),
                    Some(prev) if prev != e => {
                        return Err(Error::InvalidInput(format!("relation {r} mixes paths with different endpoints")))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// The presentation of the opposite algebra: arrows and words reversed.
    pub fn opposite(&self) -> Presentation {
        Presentation {
            p: self.p,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { source: a.target, target: a.source, label: a.label.clone() })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|rel| rel.iter().map(|(c, w)| (*c, w.iter().rev().copied().collect())).collect())
                .collect(),
        }
    }
}

/// A path in the quiver; the trivial path at `v` has an empty word and `source == target == v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_empty()
    }

    fn sort_key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.source)
    }
}

#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    presentation: Presentation,
    basis: Vec<Path>,
    /// `mult[(i * d + j) * d + k]` is the coefficient of `basis[k]` in `basis[i] * basis[j]`.
    mult: Vec<u32>,
    /// Sparse view of `mult`: nonzero `(k, c)` per pair.
    products: Vec<Vec<(usize, u32)>>,
    idempotents: Vec<usize>,
    max_length: usize,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn from_presentation(name: impl Into<String>, presentation: Presentation) -> Result<Algebra> {
        Self::from_presentation_bounded(name, presentation, DEFAULT_MAX_PATH_LENGTH)
    }

    /// Builds the algebra, giving up when paths longer than `max_length` survive.
    pub fn from_presentation_bounded(
        name: impl Into<String>,
        presentation: Presentation,
        max_length: usize,
    ) -> Result<Algebra> {
        presentation.validate()?;
        let p = presentation.p;
        let n = presentation.vertices.len();
        let mut len_bound = 1;
        loop {
            if len_bound > max_length {
                return Err(Error::NotFiniteDimensional { max_length });
            }
            if let Some(alg) = try_truncation(&presentation, len_bound, p, n) {
                let (basis, mult) = alg;
                let d = basis.len();
                let mut products = vec![Vec::new(); d * d];
                for ij in 0..d * d {
                    for k in 0..d {
                        let c = mult[ij * d + k];
                        if c != 0 {
                            products[ij].push((k, c));
                        }
                    }
                }
                let idempotents = (0..n).collect();
                return Ok(Algebra {
                    name: name.into(),
                    presentation,
                    basis,
                    mult,
                    products,
                    idempotents,
                    max_length: len_bound,
                });
            }
            len_bound += 1;
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u32 {
        self.presentation.p
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.presentation.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.presentation.arrows
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Basis index of the trivial path at each vertex.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Length bound `L` with every path of length `L` zero in the algebra.
    pub fn nilpotency_bound(&self) -> usize {
        self.max_length
    }

    /// Coefficient of `basis[k]` in `basis[i] * basis[j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let d = self.dim();
        self.mult[(i * d + j) * d + k]
    }

    /// Nonzero terms of `basis[i] * basis[j]`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_label(&self, i: usize) -> String {
        path_label(&self.presentation, &self.basis[i])
    }

    /// Basis indices of paths from `u` to `v`.
    pub fn basis_between(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == u && self.basis[i].target == v).collect()
    }

    pub fn unit_vector(&self, i: usize) -> Vector {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn one(&self) -> Vector {
        let mut v = vec![0; self.dim()];
        for &e in &self.idempotents {
            v[e] = 1;
        }
        v
    }

    pub fn mul_elems(&self, x: &[u32], y: &[u32]) -> Vector {
        let p = self.p();
        let d = self.dim();
        let mut out = vec![0u32; d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = mul_mod(a, b, p);
                for &(k, c) in &self.products[i * d + j] {
                    out[k] = add_mod(out[k], mul_mod(ab, c, p), p);
                }
            }
        }
        out
    }

    /// Element represented by a word of arrows (or the trivial path at `vertex` if empty).
    pub fn word_element(&self, vertex: usize, word: &[usize]) -> Vector {
        let mut cur = self.unit_vector(self.idempotents[vertex]);
        for &a in word {
            let arrow_elem = self.arrow_element(a);
            cur = self.mul_elems(&cur, &arrow_elem);
        }
        cur
    }

    pub fn arrow_element(&self, a: usize) -> Vector {
        let target = Path { source: self.arrows()[a].source, target: self.arrows()[a].target, arrows: vec![a] };
        match self.basis.iter().position(|b| *b == target) {
            Some(i) => self.unit_vector(i),
            // Arrows are never zero for admissible relations.
            None => vec![0; self.dim()],
        }
    }

    /// Matrix of right multiplication by `y` on the whole algebra (column `i` is `basis[i] * y`).
    pub fn right_mult_matrix(&self, y: &[u32]) -> Mat {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|i| self.mul_elems(&self.unit_vector(i), y)).collect();
        Mat::from_cols(self.p(), d, &cols)
    }

    /// Matrix of left multiplication by `x` (column `j` is `x * basis[j]`).
    pub fn left_mult_matrix(&self, x: &[u32]) -> Mat {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d).map(|j| self.mul_elems(x, &self.unit_vector(j))).collect();
        Mat::from_cols(self.p(), d, &cols)
    }

    /// Checks associativity on all basis triples.
    pub fn check_associative(&self) -> Result<()> {
        check_assoc(self.p(), self.dim(), &self.products)
    }

    /// The opposite algebra. `opposite` applied twice gives back an equal algebra.
    pub fn opposite(&self) -> Result<Algebra> {
        let name = match self.name.strip_suffix("^op") {
            Some(stripped) => stripped.to_string(),
            None => format!("{}^op", self.name),
        };
        Algebra::from_presentation_bounded(
            name,
            self.presentation.opposite(),
            self.max_length.max(DEFAULT_MAX_PATH_LENGTH),
        )
    }

    /// Checks the unit and idempotent laws.
    pub fn check_unit_laws(&self) -> Result<()> {
        let one = self.one();
        for i in 0..self.dim() {
            let b = self.unit_vector(i);
            if self.mul_elems(&one, &b) != b || self.mul_elems(&b, &one) != b {
                return Err(Error::Precondition(format!("unit law fails on basis element {i}")));
            }
        }
        for (a, &ei) in self.idempotents.iter().enumerate() {
            for (b, &ej) in self.idempotents.iter().enumerate() {
                let prod = self.mul_elems(&self.unit_vector(ei), &self.unit_vector(ej));
                let expect = if a == b { self.unit_vector(ei) } else { vec![0; self.dim()] };
                if prod != expect {
                    return Err(Error::Precondition(format!("idempotents {a} and {b} are not orthogonal")));
                }
            }
        }
        Ok(())
    }
}

fn path_label(pres: &Presentation, path: &Path) -> String {
    if path.arrows.is_empty() {
        return format!("e_{}", pres.vertices[path.source]);
    }
    let labels: Vec<&str> = path.arrows.iter().map(|&a| pres.arrows[a].label.as_str()).collect();
    labels.join("*")
}

fn check_assoc(p: u32, d: usize, products: &[Vec<(usize, u32)>]) -> Result<()> {
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut left = vec![0u32; d];
                for &(m, c) in &products[i * d + j] {
                    for &(r, c2) in &products[m * d + k] {
                        left[r] = add_mod(left[r], mul_mod(c, c2, p), p);
                    }
                }
                let mut right = vec![0u32; d];
                for &(m, c) in &products[j * d + k] {
                    for &(r, c2) in &products[i * d + m] {
                        right[r] = add_mod(right[r], mul_mod(c, c2, p), p);
                    }
                }
                if left != right {
                    return Err(Error::NonAssociative { triple: (i, j, k) });
                }
            }
        }
    }
    Ok(())
}

/// Tries to present the algebra assuming every path of length `l` lies in the ideal.
/// Returns the path basis and dense structure constants on success.
fn try_truncation(pres: &Presentation, l: usize, p: u32, n: usize) -> Option<(Vec<Path>, Vec<u32>)> {
    // All paths of length <= l.
    let mut paths: Vec<Path> = (0..n).map(|v| Path { source: v, target: v, arrows: Vec::new() }).collect();
    let mut frontier = paths.clone();
    for _ in 0..l {
        let mut next = Vec::new();
        for path in &frontier {
            for (ai, a) in pres.arrows.iter().enumerate() {
                if a.source == path.target {
                    let mut w = path.arrows.clone();
                    w.push(ai);
                    next.push(Path { source: path.source, target: a.target, arrows: w });
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    // Columns: longest paths first so pivots land on the longest term of each relation.
    paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.sort_key().cmp(&b.sort_key())));
    let col_of: BTreeMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, path)| ((path.source, path.arrows.clone()), i)).collect();
    let ncols = paths.len();
    let mut span = SpanBuilder::new(p, ncols);

    let ends_at = |v: usize| paths.iter().filter(move |q| q.target == v);
    let starts_at = |v: usize| paths.iter().filter(move |q| q.source == v);
    for rel in &pres.relations {
        let (s, t) = pres.word_ends(&rel[0].1).expect("validated");
        let min_len = rel.iter().map(|(_, w)| w.len()).min().unwrap_or(0);
        for u in ends_at(s) {
            if u.len() + min_len > l {
                continue;
            }
            for v in starts_at(t) {
                if u.len() + min_len + v.len() > l {
                    continue;
                }
                let mut vec_ = vec![0u32; ncols];
                for (c, w) in rel {
                    let total = u.len() + w.len() + v.len();
                    if total > l {
                        continue;
                    }
                    let mut word = u.arrows.clone();
                    word.extend_from_slice(w);
                    word.extend_from_slice(&v.arrows);
                    let col = col_of[&(u.source, word)];
                    vec_[col] = add_mod(vec_[col], *c % p, p);
                }
                span.insert(&vec_);
            }
        }
    }
    // Every path of length exactly l must lie in the span.
    for (i, path) in paths.iter().enumerate() {
        if path.len() == l {
            let mut e = vec![0u32; ncols];
            e[i] = 1;
            if !span.contains(&e) {
                return None;
            }
        }
    }
    let pivots: Vec<usize> = span_pivots(&span);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis_cols: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    basis_cols.sort_by(|&a, &b| paths[a].sort_key().cmp(&paths[b].sort_key()));
    let d = basis_cols.len();
    let mut basis_index = vec![usize::MAX; ncols];
    for (k, &c) in basis_cols.iter().enumerate() {
        basis_index[c] = k;
    }
    // Normal form of each column in basis coordinates.
    let rows = span_rows(&span);
    let mut nf: Vec<Vector> = vec![Vec::new(); ncols];
    for c in 0..ncols {
        if !is_pivot[c] {
            let mut v = vec![0u32; d];
            v[basis_index[c]] = 1;
            nf[c] = v;
        }
    }
    for (row, &pc) in rows.iter().zip(&pivots) {
        let mut v = vec![0u32; d];
        for (c, &x) in row.iter().enumerate() {
            if x != 0 && !is_pivot[c] {
                v[basis_index[c]] = neg_mod(x, p);
            }
        }
        nf[pc] = v;
    }
    let basis: Vec<Path> = basis_cols.iter().map(|&c| paths[c].clone()).collect();
    let mut mult = vec![0u32; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (&basis[i], &basis[j]);
            if a.target != b.source {
                continue;
            }
            let len = a.len() + b.len();
            if len >= l {
                continue;
            }
            let mut word = a.arrows.clone();
            word.extend_from_slice(&b.arrows);
            let col = col_of[&(a.source, word)];
            let base = (i * d + j) * d;
            mult[base..base + d].copy_from_slice(&nf[col]);
        }
    }
    Some((basis, mult))
}

fn span_pivots(span: &SpanBuilder) -> Vec<usize> {
    span.pivots().to_vec()
}

fn span_rows(span: &SpanBuilder) -> Vec<Vector> {
    span.rows().to_vec()
}

/// Structure data of an algebra presented by a basis of morphisms between objects.
///
/// `elems[k] = (i, j)` says the k-th basis element is a morphism `X_j -> X_i`, i.e. lives
/// in `e_i A e_j` and plays the role of a path from `i` to `j`. The product of basis
/// elements is composition: `compose[(a * d + b) * d + c]` is the coefficient of
/// `elems[c]` in `elems[a] ∘ elems[b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTable {
    pub p: u32,
    pub objects: Vec<String>,
    pub elems: Vec<(usize, usize)>,
    pub compose: Vec<u32>,
    /// Basis index of the identity of each object.
    pub identities: Vec<usize>,
}

/// The result of re-presenting a hom table by a quiver with relations.
#[derive(Clone, Debug)]
pub struct PresentedTable {
    pub algebra: Algebra,
    /// Column `k` gives the hom-table coordinates of the algebra's `k`-th basis path.
    pub to_table: Mat,
    /// Inverse of `to_table`.
    pub from_table: Mat,
}

impl HomTable {
    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    fn products(&self) -> Vec<Vec<(usize, u32)>> {
        let d = self.dim();
        let mut out = vec![Vec::new(); d * d];
        for ab in 0..d * d {
            for c in 0..d {
                let x = self.compose[ab * d + c] % self.p;
                if x != 0 {
                    out[ab].push((c, x));
                }
            }
        }
        out
    }

    fn mul(&self, prods: &[Vec<(usize, u32)>], x: &[u32], y: &[u32]) -> Vector {
        let p = self.p;
        let d = self.dim();
        let mut out = vec![0u32; d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = mul_mod(a, b, p);
                for &(k, c) in &prods[i * d + j] {
                    out[k] = add_mod(out[k], mul_mod(ab, c, p), p);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if !is_supported_prime(self.p) {
            return Err(Error::UnsupportedPrime(self.p));
        }
        let d = self.dim();
        if self.compose.len() != d * d * d {
            return Err(Error::DimensionMismatch {
                context: "hom table composition",
                expected: d * d * d,
                found: self.compose.len(),
            });
        }
        let n = self.objects.len();
        if self.identities.len() != n {
            return Err(Error::InvalidInput("one identity per object is required".into()));
        }
        for &(i, j) in &self.elems {
            if i >= n || j >= n {
                return Err(Error::InvalidInput("hom table element refers to an unknown object".into()));
            }
        }
        for (o, &id) in self.identities.iter().enumerate() {
            if id >= d || self.elems[id] != (o, o) {
                return Err(Error::InvalidInput(format!("identity of object {o} is misplaced")));
            }
        }
        // Products of non-composable elements vanish and land in the right block.
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let x = self.compose[(a * d + b) * d + c] % self.p;
                    if x == 0 {
                        continue;
                    }
                    let (ia, ja) = self.elems[a];
                    let (ib, jb) = self.elems[b];
                    if ja != ib || self.elems[c] != (ia, jb) {
                        return Err(Error::InvalidInput(format!(
                            "composition of elements {a} and {b} leaves its hom-space"
                        )));
                    }
                }
            }
        }
        check_assoc(self.p, d, &self.products())?;
        let prods = self.products();
        for (o, &id) in self.identities.iter().enumerate() {
            let e = unit(d, id);
            for k in 0..d {
                let b = unit(d, k);
                let (i, j) = self.elems[k];
                let left = self.mul(&prods, &e, &b);
                let right = self.mul(&prods, &b, &e);
                let want_left = if i == o { b.clone() } else { vec![0; d] };
                let want_right = if j == o { b.clone() } else { vec![0; d] };
                if left != want_left || right != want_right {
                    return Err(Error::InvalidInput(format!("identity of object {o} fails the unit law")));
                }
            }
        }
        Ok(())
    }

    /// Re-presents the table as a quiver with relations.
    ///
    /// Each local ring `e_i A e_i` must have residue field `F_p`.
    pub fn present(&self, name: impl Into<String>) -> Result<PresentedTable> {
        self.validate()?;
        let p = self.p;
        let d = self.dim();
        let n = self.objects.len();
        let prods = self.products();
        let block = |i: usize, j: usize| -> Vec<usize> { (0..d).filter(|&k| self.elems[k] == (i, j)).collect() };

        // Radical: off-diagonal blocks plus the maximal ideal of each local ring.
        let mut rad: Vec<(usize, usize, Vector)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in block(i, j) {
                    if i != j {
                        rad.push((i, j, unit(d, k)));
                        continue;
                    }
                    if k == self.identities[i] {
                        continue;
                    }
                    let bk = unit(d, k);
                    let idx = block(i, i);
                    let lm = Mat::from_cols(
                        p,
                        idx.len(),
                        &idx.iter()
                            .map(|&c| {
                                let prod = self.mul(&prods, &bk, &unit(d, c));
                                idx.iter().map(|&r| prod[r]).collect()
                            })
                            .collect::<Vec<_>>(),
                    );
                    let id_pos = idx.iter().position(|&c| c == self.identities[i]).unwrap();
                    let mut e = vec![0u32; idx.len()];
                    e[id_pos] = 1;
                    let poly = local_min_poly(&lm, &e);
                    let roots = poly_roots(&poly, p);
                    let lambda = match roots.as_slice() {
                        [r] => *r,
                        _ => {
                            return Err(Error::InvalidInput(format!(
                                "endomorphism ring of object {i} is not local with residue field F_{p}"
                            )))
                        }
                    };
                    let mut r = bk;
                    let id = self.identities[i];
                    r[id] = sub_mod(r[id], lambda, p);
                    rad.push((i, i, r));
                }
            }
        }
        // Arrows: per block, a complement of rad^2 inside rad.
        let mut arrows: Vec<(usize, usize, Vector)> = Vec::new();
        let mut pres = Presentation::new(p, self.objects.clone());
        for i in 0..n {
            for j in 0..n {
                let mut sq = SpanBuilder::new(p, d);
                for (i1, m, x) in &rad {
                    if *i1 != i {
                        continue;
                    }
                    for (m2, j2, y) in &rad {
                        if m2 == m && *j2 == j {
                            sq.insert(&self.mul(&prods, x, y));
                        }
                    }
                }
                let mut count = 0;
                for (i1, j1, x) in &rad {
                    if *i1 == i && *j1 == j && sq.insert(x) {
                        let label = format!("g{}_{}_{}", i, j, count);
                        count += 1;
                        pres.add_arrow(i, j, label);
                        arrows.push((i, j, x.clone()));
                    }
                }
            }
        }
        // Greedy path basis by length.
        let mut span = SpanBuilder::new(p, d);
        let mut basis_paths: Vec<(Path, Vector)> = Vec::new();
        for (o, &id) in self.identities.iter().enumerate() {
            let e = unit(d, id);
            span.insert(&e);
            basis_paths.push((Path { source: o, target: o, arrows: Vec::new() }, e));
        }
        let mut frontier: Vec<(Path, Vector)> = basis_paths.clone();
        let mut length = 0;
        while span.dim() < d {
            length += 1;
            if length > DEFAULT_MAX_PATH_LENGTH {
                return Err(Error::NotFiniteDimensional { max_length: DEFAULT_MAX_PATH_LENGTH });
            }
            let mut next = Vec::new();
            for (path, elem) in &frontier {
                for (ai, (s, t, a)) in arrows.iter().enumerate() {
                    if *s != path.target {
                        continue;
                    }
                    let prod = self.mul(&prods, elem, a);
                    let mut w = path.arrows.clone();
                    w.push(ai);
                    let np = Path { source: path.source, target: *t, arrows: w };
                    if span.insert(&prod) {
                        basis_paths.push((np.clone(), prod.clone()));
                    }
                    next.push((np, prod));
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        if span.dim() < d {
            return Err(Error::InvalidInput("arrows do not generate the algebra".into()));
        }
        // Rewriting relations: (basis path) * arrow = its expansion in basis paths.
        let coords = Mat::from_cols(p, d, &basis_paths.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>());
        let inv = coords.inverse().expect("basis paths are independent");
        for (path, elem) in &basis_paths {
            if path.arrows.is_empty() {
                continue;
            }
            for (ai, (s, _, a)) in arrows.iter().enumerate() {
                if *s != path.target {
                    continue;
                }
                let prod = self.mul(&prods, elem, a);
                let c = inv.mul_vec(&prod);
                let mut w = path.arrows.clone();
                w.push(ai);
                if basis_paths.iter().any(|(q, _)| q.arrows == w && q.source == path.source) {
                    continue;
                }
                let mut rel: Vec<Term> = vec![(1, w)];
                for (k, &x) in c.iter().enumerate() {
                    if x != 0 {
                        rel.push((neg_mod(x, p), basis_paths[k].0.arrows.clone()));
                    }
                }
                pres.add_relation(rel);
            }
        }
        let algebra = Algebra::from_presentation(name, pres)?;
        if algebra.dim() != d {
            return Err(Error::Precondition(format!(
                "re-presented algebra has dimension {} instead of {d}",
                algebra.dim()
            )));
        }
        // Map each basis path of the new algebra to table coordinates.
        let cols: Vec<Vector> = algebra
            .basis()
            .iter()
            .map(|path| {
                let mut cur = unit(d, self.identities[path.source]);
                for &a in &path.arrows {
                    cur = self.mul(&prods, &cur, &arrows[a].2);
                }
                cur
            })
            .collect();
        let to_table = Mat::from_cols(p, d, &cols);
        let from_table = to_table
            .inverse()
            .ok_or_else(|| Error::Precondition("re-presented basis is not a basis of the table".into()))?;
        // The new multiplication must match composition in the table.
        for i in 0..d {
            for j in 0..d {
                let lhs = to_table.mul_vec(&algebra.mul_elems(&algebra.unit_vector(i), &algebra.unit_vector(j)));
                let rhs = self.mul(&prods, &cols[i], &cols[j]);
                if lhs != rhs {
                    return Err(Error::Precondition("re-presented multiplication disagrees with the table".into()));
                }
            }
        }
        Ok(PresentedTable { algebra, to_table, from_table })
    }
}

fn unit(d: usize, i: usize) -> Vector {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// `k[x]/(x^n)`: one vertex, one loop `x`, relation `x^n`.
pub fn nilpotent_loop(n: usize, p: u32) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidInput("nilpotent loop needs n >= 1".into()));
    }
    let mut pres = Presentation::new(p, vec!["1".into()]);
    // For n = 1 the loop is zero, so the quiver has no arrow at all.
    if n > 1 {
        let x = pres.add_arrow(0, 0, "x");
        pres.add_relation(vec![(1, vec![x; n])]);
    }
    Algebra::from_presentation(format!("nilpotent-loop({n})"), pres)
}

/// The upper triangular matrix algebra `T_2(A)`, whose modules are the maps between
/// `A`-modules. Vertex `v` of `A` gives vertices `v` (domain layer) and `n + v`
/// (codomain layer); arrow `f_v` joins them.
pub fn t2(a: &Algebra) -> Result<Algebra> {
    let base = a.presentation();
    let n = base.vertices.len();
    let mut vertices: Vec<String> = base.vertices.iter().map(|v| format!("{v}A")).collect();
    vertices.extend(base.vertices.iter().map(|v| format!("{v}B")));
    let mut pres = Presentation::new(base.p, vertices);
    let m = base.arrows.len();
    for arrow in &base.arrows {
        pres.add_arrow(arrow.source, arrow.target, format!("{}A", arrow.label));
    }
    for arrow in &base.arrows {
        pres.add_arrow(n + arrow.source, n + arrow.target, format!("{}B", arrow.label));
    }
    for v in 0..n {
        pres.add_arrow(v, n + v, format!("f{}", base.vertices[v]));
    }
    for rel in &base.relations {
        pres.add_relation(rel.clone());
        pres.add_relation(rel.iter().map(|(c, w)| (*c, w.iter().map(|&x| x + m).collect())).collect());
    }
    for (ai, arrow) in base.arrows.iter().enumerate() {
        let f_s = 2 * m + arrow.source;
        let f_t = 2 * m + arrow.target;
        pres.add_relation(vec![(1, vec![ai, f_t]), (neg_mod(1, base.p), vec![f_s, ai + m])]);
    }
    Algebra::from_presentation(format!("T2({})", a.name()), pres)
}

/// Largest supported preprojective type.
pub const MAX_PREPROJECTIVE: usize = 4;

/// Preprojective algebra of type `A_m` with relations `Σ (a a* - a* a) = 0` at each vertex.
/// Arrow `a_i: i -> i+1`, arrow `a_i*: i+1 -> i`.
pub fn preprojective(m: usize, p: u32) -> Result<Algebra> {
    if !(1..=MAX_PREPROJECTIVE).contains(&m) {
        return Err(Error::InvalidInput(format!(
            "preprojective algebras are supported for 1 <= m <= {MAX_PREPROJECTIVE}, got {m}"
        )));
    }
    let vertices = (1..=m).map(|i| i.to_string()).collect();
    let mut pres = Presentation::new(p, vertices);
    let mut fwd = Vec::new();
    let mut back = Vec::new();
    for i in 0..m.saturating_sub(1) {
        fwd.push(pres.add_arrow(i, i + 1, format!("a{}", i + 1)));
    }
    for i in 0..m.saturating_sub(1) {
        back.push(pres.add_arrow(i + 1, i, format!("a{}*", i + 1)));
    }
    for v in 0..m {
        let mut rel = Vec::new();
        if v + 1 < m {
            rel.push((1, vec![fwd[v], back[v]]));
        }
        if v > 0 {
            rel.push((neg_mod(1, p), vec![back[v - 1], fwd[v - 1]]));
        }
        if !rel.is_empty() {
            pres.add_relation(rel);
        }
    }
    Algebra::from_presentation(format!("preprojective({m})"), pres)
}

/// Algebra with several vertices and no arrows: `k × ... × k`.
pub fn semisimple(n: usize, p: u32) -> Result<Algebra> {
    let pres = Presentation::new(p, (1..=n).map(|i| i.to_string()).collect());
    Algebra::from_presentation(format!("semisimple({n})"), pres)
}

/// Builds the algebra from a hom table, validating associativity and unit laws.
pub fn from_hom_table(name: impl Into<String>, table: &HomTable) -> Result<Algebra> {
    Ok(table.present(name)?.algebra)
}
