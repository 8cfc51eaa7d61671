use std::sync::{Arc, OnceLock};

use monocat_core::algebra::nilpotent_loop;
use monocat_core::exact::is_conflation;
use monocat_core::field::Fp;
use monocat_core::module::{decompose, direct_sum, hom_dim, is_isomorphic, jordan_block, Ext1};
use monocat_core::morph::{enumerate_s_indecomposables, is_object_of_s};
use monocat_core::{
    solve_linear, Budget, Conflation, Mat, Module, MorphCat, MorphObj, StableAuslander, StructureKind, Subcat,
};
use proptest::prelude::*;

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(0..p, rows * cols).prop_map(move |d| Mat::from_vec(p, rows, cols, d))
}

fn sized_matrix() -> impl Strategy<Value = Mat> {
    (proptest::sample::select(PRIMES.to_vec()), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| matrix(p, r, c))
}

/// Products of unitriangular matrices, which are always invertible.
fn invertible(p: u32, n: usize) -> impl Strategy<Value = Mat> {
    (matrix(p, n, n), matrix(p, n, n)).prop_map(move |(a, b)| {
        let lower = Mat::from_fn(p, n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => a.get(i, j),
            std::cmp::Ordering::Less => 0,
        });
        let upper = Mat::from_fn(p, n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Less => b.get(i, j),
            std::cmp::Ordering::Greater => 0,
        });
        lower.mul(&upper)
    })
}

proptest! {
    #[test]
    fn field_laws(p in proptest::sample::select(PRIMES.to_vec()), a in 0u32..7, b in 0u32..7, c in 0u32..7) {
        let (a, b, c) = (Fp::new(a % p, p), Fp::new(b % p, p), Fp::new(c % p, p));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a - b) + b, a);
        if !a.is_zero() {
            prop_assert_eq!(a * a.inv().unwrap(), Fp::one(p));
        }
    }

    #[test]
    fn rank_nullity(m in sized_matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
        prop_assert_eq!(m.image_basis().len(), m.rank());
    }

    #[test]
    fn solutions_solve(m in sized_matrix(), seed in proptest::collection::vec(0u32..7, 6)) {
        let p = m.p();
        let x: Vec<u32> = (0..m.cols()).map(|i| seed[i] % p).collect();
        let b = Mat::from_cols(p, m.rows(), &[m.mul_vec(&x)]);
        let s = solve_linear(&m, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul(&s.particular), b);
    }

    #[test]
    fn inverses(g in (proptest::sample::select(PRIMES.to_vec()), 1usize..6).prop_flat_map(|(p, n)| invertible(p, n))) {
        let inv = g.inverse().unwrap();
        prop_assert!(g.mul(&inv).is_identity());
        prop_assert!(inv.mul(&g).is_identity());
    }
}

/// A direct sum of Jordan blocks over `k[x]/(x^n)`, written in a random basis.
fn jordan_sum(n: usize) -> impl Strategy<Value = (Vec<usize>, Module)> {
    proptest::collection::vec(1..=n, 1..4).prop_flat_map(move |sizes| {
        let d: usize = sizes.iter().sum();
        (Just(sizes), invertible(2, d)).prop_map(move |(sizes, g)| {
            let alg = Arc::new(nilpotent_loop(n, 2).unwrap());
            let blocks: Vec<Module> = sizes.iter().map(|&k| jordan_block(&alg, k)).collect();
            let sum = direct_sum(&alg, &blocks).unwrap().module;
            let x = g.inverse().unwrap().mul(sum.action(0)).mul(&g);
            let m = Module::new(alg, vec![sum.dims()[0]], vec![x]).unwrap();
            let mut sizes = sizes;
            sizes.sort();
            (sizes, m)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_recovers_jordan_type((sizes, m) in jordan_sum(4)) {
        let mut found = Vec::new();
        for (s, mult) in decompose(&m).unwrap() {
            for _ in 0..mult {
                found.push(s.total_dim());
            }
        }
        found.sort();
        prop_assert_eq!(found, sizes);
    }

    #[test]
    fn hom_dimensions_are_additive((sa, m) in jordan_sum(3), (sb, n) in jordan_sum(3)) {
        // dim Hom(J_a, J_b) = min(a, b) over k[x]/(x^n).
        let expected: usize = sa.iter().flat_map(|&a| sb.iter().map(move |&b| a.min(b))).sum();
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), expected);
    }
}

struct Lambda3 {
    cat: Arc<MorphCat>,
    sub: Subcat,
    objects: Vec<MorphObj>,
    sa: StableAuslander,
}

fn lambda3() -> Lambda3 {
    let alg = Arc::new(nilpotent_loop(3, 2).unwrap());
    let cat = MorphCat::new(alg.clone()).unwrap();
    let sub = Subcat::all(alg, 3, &Budget::unlimited()).unwrap();
    let objects = enumerate_s_indecomposables(&cat, &sub, 6, &Budget::unlimited()).unwrap();
    let sa = StableAuslander::new(&cat, &sub).unwrap();
    Lambda3 { cat, sub, objects, sa }
}

fn object_count() -> usize {
    static COUNT: OnceLock<usize> = OnceLock::new();
    *COUNT.get_or_init(|| lambda3().objects.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn psi_is_additive(i in 0..object_count(), j in 0..object_count()) {
        let w = lambda3();
        let (x, y) = (&w.objects[i], &w.objects[j]);
        let sum = direct_sum(w.cat.t2(), &[x.t2().clone(), y.t2().clone()]).unwrap().module;
        let xy = MorphObj::from_t2(&w.cat, &sum).unwrap();
        let fx = w.sa.psi_object(x).unwrap().module;
        let fy = w.sa.psi_object(y).unwrap().module;
        let fxy = w.sa.psi_object(&xy).unwrap().module;
        let expected = direct_sum(w.sa.gamma(), &[fx, fy]).unwrap().module;
        prop_assert!(is_isomorphic(&fxy, &expected).unwrap().is_some());
    }

    #[test]
    fn structures_are_nested(i in 0..object_count(), j in 0..object_count(), pick in any::<prop::sample::Index>()) {
        let w = lambda3();
        let (x, z) = (&w.objects[i], &w.objects[j]);
        let ext = Ext1::new(z.t2(), x.t2()).unwrap();
        let classes = ext.all_classes();
        let class = &classes[pick.index(classes.len())];
        let c = Conflation::from_t2(&w.cat, &ext.sequence(class)).unwrap();
        prop_assume!(is_object_of_s(c.middle(), &w.sub).unwrap());
        let scw = is_conflation(StructureKind::Scw, &c, &w.sub).unwrap();
        let cw = is_conflation(StructureKind::Cw, &c, &w.sub).unwrap();
        let canonical = is_conflation(StructureKind::Canonical, &c, &w.sub).unwrap();
        prop_assert!(!scw || cw);
        prop_assert!(!cw || canonical);
        prop_assert!(canonical);
        if class.iter().all(|&v| v == 0) {
            prop_assert!(scw);
        }
    }
}
