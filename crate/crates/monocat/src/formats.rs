//! JSON file formats for algebras, modules, morphism-category objects and conflations.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use monocat_core::algebra::{Algebra, Presentation};
use monocat_core::field::reduce_signed;
use monocat_core::{Conflation, Mat, ModMap, Module, MorphCat, MorphMap, MorphObj};
use serde::{Deserialize, Serialize};

/// A relation is either one term `[coeff, [labels]]` or a list of terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelationSpec {
    Term(i64, Vec<String>),
    Terms(Vec<(i64, Vec<String>)>),
}

impl RelationSpec {
    fn terms(&self) -> Vec<(i64, Vec<String>)> {
        match self {
            RelationSpec::Term(c, w) => vec![(*c, w.clone())],
            RelationSpec::Terms(ts) => ts.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    pub p: u32,
}

impl AlgebraSpec {
    pub fn from_algebra(a: &Algebra) -> AlgebraSpec {
        let pres = a.presentation();
        let label = |i: usize| pres.arrows[i].label.clone();
        AlgebraSpec {
            vertices: pres.vertices.clone(),
            arrows: pres.arrows.iter().map(|x| (x.source, x.target, x.label.clone())).collect(),
            relations: pres
                .relations
                .iter()
                .map(|rel| {
                    let terms: Vec<(i64, Vec<String>)> =
                        rel.iter().map(|(c, w)| (i64::from(*c), w.iter().map(|&i| label(i)).collect())).collect();
                    if terms.len() == 1 {
                        let (c, w) = terms[0].clone();
                        RelationSpec::Term(c, w)
                    } else {
                        RelationSpec::Terms(terms)
                    }
                })
                .collect(),
            p: pres.p,
        }
    }

    pub fn to_algebra(&self, name: &str) -> Result<Algebra> {
        let mut pres = Presentation::new(self.p, self.vertices.clone());
        for (s, t, label) in &self.arrows {
            if *s >= self.vertices.len() || *t >= self.vertices.len() {
                bail!("arrow {label} refers to a vertex out of range");
            }
            if pres.arrow_index(label).is_some() {
                bail!("arrow label {label} is used twice");
            }
            pres.add_arrow(*s, *t, label.clone());
        }
        for rel in &self.relations {
            let mut terms = Vec::new();
            for (c, word) in rel.terms() {
                let w = word
                    .iter()
                    .map(|l| pres.arrow_index(l).with_context(|| format!("unknown arrow label {l} in a relation")))
                    .collect::<Result<Vec<_>>>()?;
                terms.push((reduce_signed(c, self.p), w));
            }
            pres.add_relation(terms);
        }
        Ok(Algebra::from_presentation(name, pres)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub algebra: String,
    pub dims: Vec<usize>,
    pub action: BTreeMap<String, Vec<Vec<u32>>>,
}

fn rows(m: &Mat) -> Vec<Vec<u32>> {
    m.to_rows()
}

fn mat(p: u32, r: usize, c: usize, rows: &[Vec<u32>], what: &str) -> Result<Mat> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        bail!("{what} must be a {r}x{c} matrix");
    }
    let signed: Vec<Vec<i64>> = rows.iter().map(|row| row.iter().map(|&x| i64::from(x)).collect()).collect();
    if r == 0 {
        return Ok(Mat::zeros(p, 0, c));
    }
    Ok(Mat::from_rows(p, &signed))
}

impl ModuleSpec {
    pub fn from_module(m: &Module) -> ModuleSpec {
        let alg = m.algebra();
        ModuleSpec {
            algebra: alg.name().to_string(),
            dims: m.dims().to_vec(),
            action: alg.arrows().iter().enumerate().map(|(i, a)| (a.label.clone(), rows(m.action(i)))).collect(),
        }
    }

    pub fn to_module(&self, alg: &Arc<Algebra>) -> Result<Module> {
        if self.dims.len() != alg.num_vertices() {
            bail!("module has {} dimensions but the algebra has {} vertices", self.dims.len(), alg.num_vertices());
        }
        for label in self.action.keys() {
            if !alg.arrows().iter().any(|a| &a.label == label) {
                bail!("module acts by unknown arrow {label}");
            }
        }
        let p = alg.p();
        let mut action = Vec::new();
        for a in alg.arrows() {
            let (r, c) = (self.dims[a.target], self.dims[a.source]);
            match self.action.get(&a.label) {
                Some(m) => action.push(mat(p, r, c, m, &format!("action of {}", a.label))?),
                None if r == 0 || c == 0 => action.push(Mat::zeros(p, r, c)),
                None => bail!("missing action of arrow {}", a.label),
            }
        }
        Ok(Module::new(alg.clone(), self.dims.clone(), action)?)
    }
}

/// An object `f: A -> B` of the morphism category; `f` is given by its blocks per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphObjSpec {
    pub a: ModuleSpec,
    pub b: ModuleSpec,
    pub f: Vec<Vec<Vec<u32>>>,
}

fn map_blocks(f: &ModMap) -> Vec<Vec<Vec<u32>>> {
    f.blocks().iter().map(rows).collect()
}

fn map_from_blocks(source: &Module, target: &Module, blocks: &[Vec<Vec<u32>>]) -> Result<ModMap> {
    let n = source.dims().len();
    if blocks.len() != n {
        bail!("a map needs one block per vertex");
    }
    let p = source.p();
    let mats = (0..n)
        .map(|v| mat(p, target.dims()[v], source.dims()[v], &blocks[v], &format!("block at vertex {v}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModMap::new(source.clone(), target.clone(), mats)?)
}

impl MorphObjSpec {
    pub fn from_obj(x: &MorphObj) -> MorphObjSpec {
        MorphObjSpec { a: ModuleSpec::from_module(x.a()), b: ModuleSpec::from_module(x.b()), f: map_blocks(x.f()) }
    }

    pub fn to_obj(&self, cat: &Arc<MorphCat>) -> Result<MorphObj> {
        let a = self.a.to_module(cat.base())?;
        let b = self.b.to_module(cat.base())?;
        Ok(MorphObj::new(cat, map_from_blocks(&a, &b, &self.f)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphMapSpec {
    pub phi1: Vec<Vec<Vec<u32>>>,
    pub phi2: Vec<Vec<Vec<u32>>>,
}

impl MorphMapSpec {
    pub fn from_map(m: &MorphMap) -> MorphMapSpec {
        MorphMapSpec { phi1: map_blocks(&m.phi1()), phi2: map_blocks(&m.phi2()) }
    }

    pub fn to_map(&self, source: &MorphObj, target: &MorphObj) -> Result<MorphMap> {
        let phi1 = map_from_blocks(source.a(), target.a(), &self.phi1)?;
        let phi2 = map_from_blocks(source.b(), target.b(), &self.phi2)?;
        Ok(MorphMap::new(source, target, &phi1, &phi2)?)
    }
}

/// `0 -> x -> middle -> y -> 0` with both maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflationSpec {
    pub x: MorphObjSpec,
    pub middle: MorphObjSpec,
    pub y: MorphObjSpec,
    pub inflation: MorphMapSpec,
    pub deflation: MorphMapSpec,
}

impl ConflationSpec {
    pub fn from_conflation(c: &Conflation) -> ConflationSpec {
        ConflationSpec {
            x: MorphObjSpec::from_obj(c.x()),
            middle: MorphObjSpec::from_obj(c.middle()),
            y: MorphObjSpec::from_obj(c.y()),
            inflation: MorphMapSpec::from_map(&c.i),
            deflation: MorphMapSpec::from_map(&c.p),
        }
    }

    pub fn to_conflation(&self, cat: &Arc<MorphCat>) -> Result<Conflation> {
        let x = self.x.to_obj(cat)?;
        let e = self.middle.to_obj(cat)?;
        let y = self.y.to_obj(cat)?;
        let i = self.inflation.to_map(&x, &e)?;
        let p = self.deflation.to_map(&e, &y)?;
        Ok(Conflation::new(i, p)?)
    }
}

/// A module together with the maps of a short exact sequence of modules, for witnesses over `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub first: ModuleSpec,
    pub middle: ModuleSpec,
    pub last: ModuleSpec,
    pub inclusion: Vec<Vec<Vec<u32>>>,
    pub projection: Vec<Vec<Vec<u32>>>,
}

impl SequenceSpec {
    pub fn from_maps(i: &ModMap, p: &ModMap) -> SequenceSpec {
        SequenceSpec {
            first: ModuleSpec::from_module(i.source()),
            middle: ModuleSpec::from_module(i.target()),
            last: ModuleSpec::from_module(p.target()),
            inclusion: map_blocks(i),
            projection: map_blocks(p),
        }
    }
}

pub fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use monocat_core::algebra::{nilpotent_loop, preprojective};
    use monocat_core::module::{hom_space, jordan_block};

    #[test]
    fn algebra_round_trip() {
        for a in [nilpotent_loop(3, 2).unwrap(), preprojective(3, 3).unwrap()] {
            let spec = AlgebraSpec::from_algebra(&a);
            let text = serde_json::to_string(&spec).unwrap();
            let back: AlgebraSpec = serde_json::from_str(&text).unwrap();
            let b = back.to_algebra(a.name()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn relations_accept_one_term_or_many() {
        let one = r#"{"vertices":["1"],"arrows":[[0,0,"x"]],"relations":[[1,["x","x"]]],"p":2}"#;
        let many = r#"{"vertices":["1"],"arrows":[[0,0,"x"]],"relations":[[[1,["x","x"]]]],"p":2}"#;
        let a: AlgebraSpec = serde_json::from_str(one).unwrap();
        let b: AlgebraSpec = serde_json::from_str(many).unwrap();
        assert_eq!(a.to_algebra("a").unwrap(), b.to_algebra("b").unwrap());
        assert_eq!(a.to_algebra("a").unwrap().dim(), 2);
    }

    #[test]
    fn module_and_object_round_trip() {
        let a = Arc::new(nilpotent_loop(2, 2).unwrap());
        let cat = MorphCat::new(a.clone()).unwrap();
        let j1 = jordan_block(&a, 1);
        let j2 = jordan_block(&a, 2);
        let spec = ModuleSpec::from_module(&j2);
        assert_eq!(spec.to_module(&a).unwrap(), j2);
        let f = hom_space(&j1, &j2).unwrap().into_iter().find(|f| f.is_mono()).unwrap();
        let x = MorphObj::new(&cat, f).unwrap();
        let back = MorphObjSpec::from_obj(&x).to_obj(&cat).unwrap();
        assert_eq!(back, x);
        let c = Conflation::split(&x, &x).unwrap();
        let cs = ConflationSpec::from_conflation(&c);
        let text = serde_json::to_string(&cs).unwrap();
        let back: ConflationSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_conflation(&cat).unwrap().middle(), c.middle());
    }

    #[test]
    fn bad_shapes_are_rejected() {
        let a = Arc::new(nilpotent_loop(2, 2).unwrap());
        let spec = ModuleSpec {
            algebra: "x".into(),
            dims: vec![2],
            action: [("x".to_string(), vec![vec![0, 1]])].into_iter().collect(),
        };
        assert!(spec.to_module(&a).is_err());
        let spec = ModuleSpec {
            algebra: "x".into(),
            dims: vec![1],
            action: [("x".to_string(), vec![vec![1]])].into_iter().collect(),
        };
        // x acts invertibly, violating x^2 = 0.
        assert!(spec.to_module(&a).is_err());
    }
}
