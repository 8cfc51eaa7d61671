//! The acceptance criteria, one test each, over F_2.

use std::collections::BTreeSet;
use std::sync::Arc;

use monocat_core::algebra::{nilpotent_loop, preprojective};
use monocat_core::ar::{
    check_component_translates, find_ar_conflation_ending_at, is_almost_split, translation_agreement,
};
use monocat_core::exact::{
    brute_force_injective, brute_force_projective, check_axioms, classify_injective, classify_projective,
    injective_dimension, is_conflation, projective_dimension, standard_projective_deflation,
};
use monocat_core::functor::{all_extensions, stable_equivalence_check, verify_psi_properties, Extension};
use monocat_core::module::{enumerate_indecomposables, hom_space, is_isomorphic, jordan_block, ModMap, Module};
use monocat_core::morph::{enumerate_s_indecomposables, find_morph, is_isomorphic_morph, is_object_of_s};
use monocat_core::{
    Algebra, Budget, Conflation, ConflationTable, MorphCat, MorphMap, MorphObj, StableAuslander, StructureKind, Subcat,
};

use StructureKind::{Canonical, Cw, Scw};

struct World {
    alg: Arc<Algebra>,
    cat: Arc<MorphCat>,
    sub: Subcat,
    table: ConflationTable,
}

impl World {
    fn objects(&self) -> &[MorphObj] {
        &self.table.objects
    }

    fn index(&self, x: &MorphObj) -> usize {
        find_morph(self.objects(), x).unwrap().unwrap()
    }
}

/// `mod Λ_n` with the indecomposables of `S(Λ_n)` up to total dimension `3n`.
fn world(n: usize) -> World {
    let alg = Arc::new(nilpotent_loop(n, 2).unwrap());
    let cat = MorphCat::new(alg.clone()).unwrap();
    let sub = Subcat::all(alg.clone(), n, &Budget::unlimited()).unwrap();
    let objects = enumerate_s_indecomposables(&cat, &sub, 3 * n, &Budget::unlimited()).unwrap();
    let table = ConflationTable::build(&objects, &sub, &Budget::unlimited()).unwrap();
    World { alg, cat, sub, table }
}

fn gamma_modules(sa: &StableAuslander) -> Vec<Module> {
    let g = sa.gamma();
    enumerate_indecomposables(g, g.dim() + 2, &Budget::unlimited()).unwrap()
}

fn socle_inclusion(x: &Module, y: &Module) -> ModMap {
    hom_space(x, y).unwrap().into_iter().find(|f| f.is_mono()).unwrap()
}

fn projective_set(kind: StructureKind, w: &World) -> BTreeSet<usize> {
    (0..w.objects().len()).filter(|&k| classify_projective(kind, &w.objects()[k], &w.sub).unwrap()).collect()
}

fn injective_set(kind: StructureKind, w: &World) -> BTreeSet<usize> {
    (0..w.objects().len()).filter(|&k| classify_injective(kind, &w.objects()[k], &w.sub).unwrap()).collect()
}

#[test]
fn criterion_1_classification_matches_lifting_oracle() {
    for (n, count) in [(1, 2), (2, 5), (3, 10)] {
        let w = world(n);
        assert_eq!(w.objects().len(), count, "indecomposables of S(Λ_{n})");
        for kind in StructureKind::ALL {
            for x in w.objects() {
                assert_eq!(
                    classify_projective(kind, x, &w.sub).unwrap(),
                    brute_force_projective(kind, x, &w.table).unwrap(),
                    "Λ_{n} {kind} projective {x:?}"
                );
                assert_eq!(
                    classify_injective(kind, x, &w.sub).unwrap(),
                    brute_force_injective(kind, x, &w.table).unwrap(),
                    "Λ_{n} {kind} injective {x:?}"
                );
            }
        }
    }
}

#[test]
fn criterion_2_structures_separate_on_lambda2() {
    let w = world(2);
    let (j1, j2) = (jordan_block(&w.alg, 1), jordan_block(&w.alg, 2));
    let zero_j1 = MorphObj::zero_into(&w.cat, &j1).unwrap();
    let mono = MorphObj::new(&w.cat, socle_inclusion(&j1, &j2)).unwrap();
    let eq1 = MorphObj::identity_on(&w.cat, &j1).unwrap();

    let verdicts = |x: &MorphObj| StructureKind::ALL.map(|k| brute_force_projective(k, x, &w.table).unwrap());
    assert_eq!(verdicts(&zero_j1), [false, true, true]);
    assert_eq!(verdicts(&mono), [false, false, true]);
    let sets = StructureKind::ALL.map(|k| projective_set(k, &w));
    assert_ne!(sets[0], sets[1]);
    assert_ne!(sets[0], sets[2]);
    assert_ne!(sets[1], sets[2]);
    assert!(sets[1].contains(&w.index(&zero_j1)) && !sets[0].contains(&w.index(&zero_j1)));
    assert!(sets[2].contains(&w.index(&mono)) && !sets[1].contains(&w.index(&mono)));

    // 0 -> (J1 = J1) -> (J1 -> J2) -> (0 -> J1) -> 0
    let i = MorphMap::new(&eq1, &mono, &ModMap::identity(&j1), &socle_inclusion(&j1, &j2)).unwrap();
    let counterexample = Conflation::from_inflation(i).unwrap();
    assert!(is_isomorphic_morph(counterexample.y(), &zero_j1).unwrap().is_some());
    assert!(is_conflation(Canonical, &counterexample, &w.sub).unwrap());
    assert!(!is_conflation(Cw, &counterexample, &w.sub).unwrap());

    // The CW projective deflation onto (J1 -> J2) has kernel (0 -> J1).
    let cw_cover = standard_projective_deflation(Cw, &mono, &w.sub).unwrap();
    assert!(is_isomorphic_morph(cw_cover.x(), &zero_j1).unwrap().is_some());
    assert!(is_conflation(Cw, &cw_cover, &w.sub).unwrap());
    assert!(!is_conflation(Scw, &cw_cover, &w.sub).unwrap());
}

#[test]
fn criterion_3_axioms_hold_on_lambda2() {
    let w = world(2);
    for kind in StructureKind::ALL {
        let results = check_axioms(kind, &w.table, &w.sub, &Budget::unlimited()).unwrap();
        let names: BTreeSet<&str> = results.iter().map(|r| r.axiom).collect();
        for axiom in ["E0", "E0op", "E1", "E1op", "E2", "E2op"] {
            assert!(names.contains(axiom), "{kind} is missing {axiom}: {names:?}");
        }
        for r in &results {
            assert!(r.checked > 0, "{kind} {} checked nothing", r.axiom);
            assert!(r.passed(), "{kind} {} failed: {:?}", r.axiom, r.witness.as_ref().map(|w| &w.detail));
        }
    }
}

#[test]
fn criterion_4_psi_is_scw_exact_and_an_equivalence() {
    for n in [2, 3] {
        let w = world(n);
        let sa = StableAuslander::new(&w.cat, &w.sub).unwrap();
        let gamma = gamma_modules(&sa);
        let r = verify_psi_properties(&sa, &w.table, &gamma, &Budget::unlimited()).unwrap();
        assert!(r.scw_checked > 0);
        assert!(r.exact_on_scw(), "Λ_{n}: {:?}", r.scw_non_exact);
        let k = r.canonical_witness().expect("a canonical conflation with non-exact image");
        let entry = &w.table.entries[k];
        assert!(entry.is_kind(Canonical) && !entry.is_kind(Scw));
        assert!(!sa.psi_conflation(&entry.conflation).unwrap().is_exact());
        assert!(r.dense() && r.density_hits() == gamma.len(), "Λ_{n}");
        assert!(r.full(), "Λ_{n}: {:?}", r.fullness_failures);
        assert!(r.objective(), "Λ_{n}: {:?}", r.objectivity_failures);
        if n == 3 {
            let eq = stable_equivalence_check(&sa, w.objects(), &w.sub, &gamma).unwrap();
            assert!(!eq.objects.is_empty());
            assert!(eq.bijective());
            assert!(eq.tables_agree(), "{:?} vs {:?}", eq.s_table, eq.gamma_table);
        }
    }
}

/// `dim e_i A e_j` for all vertex pairs.
fn cartan(a: &Algebra) -> Vec<Vec<usize>> {
    let n = a.num_vertices();
    (0..n).map(|i| (0..n).map(|j| a.basis_between(i, j).len()).collect()).collect()
}

fn same_up_to_vertex_swap(x: &[Vec<usize>], y: &[Vec<usize>]) -> bool {
    if x == y {
        return true;
    }
    let swap = |m: &[Vec<usize>]| -> Vec<Vec<usize>> {
        let n = m.len();
        (0..n).map(|i| (0..n).map(|j| m[n - 1 - i][n - 1 - j]).collect()).collect()
    };
    swap(x) == y
}

#[test]
fn criterion_5_counting_identity() {
    for n in 1..=3 {
        let w = world(n);
        let sa = StableAuslander::new(&w.cat, &w.sub).unwrap();
        let gamma = gamma_modules(&sa);
        assert_eq!(w.objects().len(), gamma.len() + 2 * n, "Λ_{n}");
        match n {
            1 => assert_eq!(sa.gamma().dim(), 0),
            2 => {
                assert_eq!((sa.gamma().dim(), sa.gamma().num_vertices()), (1, 1));
                assert_eq!(gamma.len(), 1);
            }
            _ => {
                let pi = Arc::new(preprojective(2, 2).unwrap());
                assert_eq!(sa.gamma().dim(), 4);
                assert_eq!(gamma.len(), 4);
                assert!(same_up_to_vertex_swap(&cartan(sa.gamma()), &cartan(&pi)));
                let pi_modules = enumerate_indecomposables(&pi, 6, &Budget::unlimited()).unwrap();
                let dims = |ms: &[Module]| {
                    let mut d: Vec<Vec<usize>> = ms.iter().map(|m| m.dims().to_vec()).collect();
                    d.sort();
                    d
                };
                let mut swapped: Vec<Vec<usize>> =
                    dims(&pi_modules).into_iter().map(|v| v.into_iter().rev().collect()).collect();
                swapped.sort();
                assert!(dims(&gamma) == dims(&pi_modules) || dims(&gamma) == swapped);
            }
        }
    }
}

#[test]
fn criterion_6_hereditary_and_frobenius() {
    let w3 = world(3);
    for x in w3.objects() {
        assert!(projective_dimension(Cw, x, &w3.sub, 4).unwrap().at_most(1), "{x:?}");
        assert!(injective_dimension(Cw, x, &w3.sub, 4).unwrap().at_most(1), "{x:?}");
    }
    for w in [world(2), w3] {
        for kind in [Scw, Canonical] {
            let oracle_proj: BTreeSet<usize> = (0..w.objects().len())
                .filter(|&k| brute_force_projective(kind, &w.objects()[k], &w.table).unwrap())
                .collect();
            let oracle_inj: BTreeSet<usize> = (0..w.objects().len())
                .filter(|&k| brute_force_injective(kind, &w.objects()[k], &w.table).unwrap())
                .collect();
            assert_eq!(projective_set(kind, &w), injective_set(kind, &w), "{kind}");
            assert_eq!(oracle_proj, oracle_inj, "{kind}");
        }
    }
}

#[test]
fn criterion_7_almost_split_conflations() {
    let w = world(2);
    let mut found = 0;
    for kind in StructureKind::ALL {
        for (k, y) in w.objects().iter().enumerate() {
            if brute_force_projective(kind, y, &w.table).unwrap() {
                continue;
            }
            let search = find_ar_conflation_ending_at(kind, k, &w.table, &w.sub).unwrap();
            assert!(is_conflation(kind, &search.candidate.conflation, &w.sub).unwrap());
            assert!(is_almost_split(&search.candidate, w.objects()).unwrap(), "{kind} ending at {k}");
            found += 1;
        }
    }
    assert!(found > 0);

    let w3 = world(3);
    let mut compared = 0;
    for world in [&w, &w3] {
        for k in 0..world.objects().len() {
            if let Some(a) = translation_agreement(k, &world.table, &world.sub).unwrap() {
                assert!(a.agree, "start terms differ at {k}: {:?}", a.starts);
                compared += 1;
            }
        }
    }
    assert!(compared > 0);

    for k in 0..w.objects().len() {
        if !classify_projective(Canonical, &w.objects()[k], &w.sub).unwrap() {
            let r = check_component_translates(k, &w.table, &w.sub).unwrap();
            assert!(r.passed(), "Λ_2 object {k}: {r:?}");
        }
    }
    let (j1, j3) = (jordan_block(&w3.alg, 1), jordan_block(&w3.alg, 3));
    let x = MorphObj::new(&w3.cat, socle_inclusion(&j1, &j3)).unwrap();
    let r = check_component_translates(w3.index(&x), &w3.table, &w3.sub).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn criterion_8_extensions_lift_to_scw_conflations() {
    let w = world(3);
    let sa = StableAuslander::new(&w.cat, &w.sub).unwrap();
    let gamma = gamma_modules(&sa);
    let mut non_split = 0;
    for Extension { first: k1, last: k3, class, sequence: seq } in all_extensions(&gamma).unwrap() {
        let c = sa.horseshoe_lift(&seq, w.objects(), &w.sub).unwrap();
        assert!(is_object_of_s(c.middle(), &w.sub).unwrap());
        assert!(is_conflation(Scw, &c, &w.sub).unwrap());
        let image = sa.psi_conflation(&c).unwrap();
        assert!(image.is_exact(), "{k1} {k3} {class:?}");
        assert!(is_isomorphic(image.i.source(), seq.i.source()).unwrap().is_some());
        assert!(is_isomorphic(image.middle(), seq.middle()).unwrap().is_some());
        assert!(is_isomorphic(image.p.target(), seq.p.target()).unwrap().is_some());
        if class.iter().any(|&c| c != 0) {
            non_split += 1;
        }
    }
    assert!(non_split > 0);
}
