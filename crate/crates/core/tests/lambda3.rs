use std::sync::Arc;

use monocat_core::algebra::{nilpotent_loop, preprojective};
use monocat_core::ar::{
    check_component_translates, find_ar_conflation_ending_at, is_almost_split, translation_agreement,
};
use monocat_core::exact::{
    brute_force_injective, brute_force_projective, classify_injective, classify_projective, injective_dimension,
    projective_dimension,
};
use monocat_core::functor::{all_extensions, stable_equivalence_check, verify_psi_properties};
use monocat_core::module::{enumerate_indecomposables, hom_space, jordan_block};
use monocat_core::morph::{enumerate_s_indecomposables, find_morph};
use monocat_core::{Budget, ConflationTable, MorphCat, MorphObj, StableAuslander, StructureKind, Subcat};

struct World {
    cat: Arc<MorphCat>,
    sub: Subcat,
    table: ConflationTable,
}

fn world(n: usize) -> World {
    let a = Arc::new(nilpotent_loop(n, 2).unwrap());
    let cat = MorphCat::new(a.clone()).unwrap();
    let sub = Subcat::all(a, n, &Budget::unlimited()).unwrap();
    let objects = enumerate_s_indecomposables(&cat, &sub, 2 * n, &Budget::unlimited()).unwrap();
    let table = ConflationTable::build(&objects, &sub, &Budget::unlimited()).unwrap();
    World { cat, sub, table }
}

#[test]
fn closed_forms_match_the_oracle() {
    let w = world(3);
    assert_eq!(w.table.objects.len(), 10);
    for kind in StructureKind::ALL {
        for x in &w.table.objects {
            assert_eq!(
                classify_projective(kind, x, &w.sub).unwrap(),
                brute_force_projective(kind, x, &w.table).unwrap(),
                "{kind} projective {x:?}"
            );
            assert_eq!(
                classify_injective(kind, x, &w.sub).unwrap(),
                brute_force_injective(kind, x, &w.table).unwrap(),
                "{kind} injective {x:?}"
            );
        }
    }
}

#[test]
fn cw_dimensions_are_at_most_one() {
    let w = world(3);
    for x in &w.table.objects {
        assert!(projective_dimension(StructureKind::Cw, x, &w.sub, 4).unwrap().at_most(1));
        assert!(injective_dimension(StructureKind::Cw, x, &w.sub, 4).unwrap().at_most(1));
    }
}

#[test]
fn psi_on_lambda3() {
    let w = world(3);
    let sa = StableAuslander::new(&w.cat, &w.sub).unwrap();
    let g = sa.gamma();
    let indecs = enumerate_indecomposables(g, g.dim() + 2, &Budget::unlimited()).unwrap();
    assert_eq!(indecs.len(), 4);
    assert_eq!(g.dim(), preprojective(2, 2).unwrap().dim());
    let r = verify_psi_properties(&sa, &w.table, &indecs, &Budget::unlimited()).unwrap();
    assert!(r.exact_on_scw());
    assert!(r.dense());
    assert_eq!(r.density_hits(), 4);
    assert!(r.full());
    assert!(r.objective());
    let eq = stable_equivalence_check(&sa, &w.table.objects, &w.sub, &indecs).unwrap();
    assert_eq!(eq.objects.len(), 2);
    assert!(eq.bijective());
    assert!(eq.tables_agree());
}

#[test]
fn every_extension_lifts() {
    let w = world(3);
    let sa = StableAuslander::new(&w.cat, &w.sub).unwrap();
    let g = sa.gamma();
    let indecs = enumerate_indecomposables(g, g.dim() + 2, &Budget::unlimited()).unwrap();
    for e in all_extensions(&indecs).unwrap() {
        let seq = e.sequence;
        let c = sa.horseshoe_lift(&seq, &w.table.objects, &w.sub).unwrap();
        let image = sa.psi_conflation(&c).unwrap();
        assert!(image.is_exact());
    }
}

#[test]
fn almost_split_conflations_on_lambda3() {
    let w = world(3);
    let a = w.cat.base().clone();
    let (j1, j3) = (jordan_block(&a, 1), jordan_block(&a, 3));
    let socle = hom_space(&j1, &j3).unwrap().into_iter().find(|f| f.is_mono()).unwrap();
    let x = MorphObj::new(&w.cat, socle).unwrap();
    let k = find_morph(&w.table.objects, &x).unwrap().unwrap();
    let r = check_component_translates(k, &w.table, &w.sub).unwrap();
    assert!(r.passed());
    for (k, y) in w.table.objects.iter().enumerate() {
        if let Some(agreement) = translation_agreement(k, &w.table, &w.sub).unwrap() {
            assert!(agreement.agree);
        }
        if !classify_projective(StructureKind::Canonical, y, &w.sub).unwrap() {
            let found = find_ar_conflation_ending_at(StructureKind::Canonical, k, &w.table, &w.sub).unwrap();
            assert!(is_almost_split(&found.candidate, &w.table.objects).unwrap());
        }
    }
}
