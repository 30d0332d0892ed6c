use operadlab::braid::*;
use operadlab::par::Parallelism;
use operadlab::random::rng_for;
use operadlab::tree::Tree;
use proptest::prelude::*;
use rand::Rng;

fn b(r: usize, w: &[i32]) -> BraidWord {
    BraidWord::new(r, w.to_vec()).unwrap()
}

fn eq(x: &BraidWord, y: &BraidWord) -> bool {
    artin_equal(x, y).unwrap()
}

fn t(s: &str) -> Tree {
    s.parse().unwrap()
}

#[test]
fn braid_relations() {
    assert!(eq(&b(3, &[1, 2, 1]), &b(3, &[2, 1, 2])));
    assert!(eq(&b(4, &[1, 3]), &b(4, &[3, 1])));
    assert!(eq(&b(4, &[1, 3, -1]), &b(4, &[3])));
    assert!(!eq(&b(3, &[1]), &b(3, &[-1])));
    assert!(!eq(&b(2, &[1, 1]), &BraidWord::identity(2)));
    assert!(!eq(&b(3, &[1, 2]), &b(3, &[2, 1])));
    // The full twist is central.
    let delta2 = b(3, &[1, 2, 1, 1, 2, 1]);
    for g in [1, 2, -1, -2] {
        let x = b(3, &[g]);
        assert!(eq(&delta2.concat(&x).unwrap(), &x.concat(&delta2).unwrap()));
    }
    assert!(artin_equal(&b(3, &[1]), &b(4, &[1])).is_err());
}

#[test]
fn parsing() {
    assert_eq!(BraidWord::parse(3, "s1 s2^-1 s1").unwrap(), b(3, &[1, -2, 1]));
    assert_eq!(BraidWord::parse(3, "e").unwrap(), BraidWord::identity(3));
    assert!(BraidWord::parse(3, "s3").is_err());
    assert!(BraidWord::parse(3, "t1").is_err());
    assert_eq!(b(3, &[1, -2]).to_string(), "s1 s2^-1");
}

#[test]
fn block_crossings() {
    let x = BraidWord::block_crossing(2, 1);
    assert!(eq(&x, &b(3, &[2, 1])));
    assert_eq!(x.project().as_slice(), &[2, 3, 1]);
    assert!(eq(&BraidWord::block_crossing(1, 2), &b(3, &[1, 2])));
    let big = BraidWord::block_crossing(2, 3);
    assert_eq!(big.project().as_slice(), &[4, 5, 1, 2, 3]);
}

#[test]
fn pab_generators() {
    let a = t("1(23)");
    let s = PaBMorphism::sigma(&a, "").unwrap();
    assert_eq!(s.target, t("(23)1"));
    assert!(eq(&s.braid, &b(3, &[1, 2])));
    let al = PaBMorphism::alpha(&a, "").unwrap();
    assert_eq!(al.target, t("(12)3"));
    assert!(al.braid.is_empty());
    assert!(al.then(&PaBMorphism::alpha_inverse(&al.target, "").unwrap()).unwrap().equivalent(&PaBMorphism::identity(&a)).unwrap());
    assert!(s.then(&s).is_err());
    assert!(PaBMorphism::new(t("12"), t("12"), b(2, &[1])).is_err());
}

#[test]
fn coherence_suites_pass() {
    for kind in ["pentagon", "hexagon", "associativity", "equivariance"] {
        let kind: CoherenceKind = kind.parse().unwrap();
        let opts = CheckOptions { seed: 7, instances: 80, ..CheckOptions::default() };
        let report = coherence_check(kind, &opts);
        assert!(report.passed(), "{kind}: {:?}", report.failures);
        assert!(report.checked > 0);
    }
    assert!("heptagon".parse::<CoherenceKind>().is_err());
}

#[test]
fn coherence_is_deterministic_across_modes() {
    let par = CheckOptions { seed: 3, instances: 40, max_leaves: 6, mode: Parallelism::Parallel };
    let seq = CheckOptions { mode: Parallelism::Sequential, ..par };
    for kind in [CoherenceKind::OperadAssociativity, CoherenceKind::Equivariance] {
        assert_eq!(coherence_check(kind, &par), coherence_check(kind, &seq));
    }
}

fn random_braid(seed: u64, k: u64, r: usize, len: usize) -> BraidWord {
    BraidWord::random(r, len, &mut rng_for(seed, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_cancels(seed in any::<u64>(), r in 1usize..6, len in 0usize..12) {
        let x = random_braid(seed, 0, r, len);
        prop_assert!(eq(&x.concat(&x.inverse()).unwrap(), &BraidWord::identity(r)));
        prop_assert!(eq(&x.inverse().concat(&x).unwrap(), &BraidWord::identity(r)));
    }

    #[test]
    fn projection_is_a_homomorphism(seed in any::<u64>(), r in 1usize..7) {
        let x = random_braid(seed, 0, r, 10);
        let y = random_braid(seed, 1, r, 10);
        let xy = x.concat(&y).unwrap().project();
        prop_assert_eq!(xy, y.project().then_after(&x.project()));
        prop_assert_eq!(x.inverse().project(), x.project().inverse());
    }

    #[test]
    fn equal_braids_have_equal_projections(seed in any::<u64>(), r in 2usize..6) {
        let x = random_braid(seed, 0, r, 8);
        // Insert a conjugated relation σ_iσ_{i+1}σ_i(σ_{i+1}σ_iσ_{i+1})⁻¹.
        let i = rng_for(seed, 1).gen_range(1..r as i32);
        let rel = if i + 1 < r as i32 { b(r, &[i, i + 1, i, -(i + 1), -i, -(i + 1)]) } else { b(r, &[i, -i]) };
        let y = x.concat(&rel).unwrap();
        prop_assert!(eq(&x, &y));
        prop_assert_eq!(x.project(), y.project());
    }

    #[test]
    fn cable_slides_along_the_bundle(seed in any::<u64>(), r in 1usize..5, m in 0usize..4, i in 0usize..8) {
        let x = random_braid(seed, 0, r, 8);
        let c = random_braid(seed, 1, m, 5);
        let p = 1 + i % r;
        let total = r + m - 1;
        if m == 0 {
            prop_assert_eq!(x.cable(p, &c).unwrap().strands(), total);
            return Ok(());
        }
        let plain = x.cable(p, &BraidWord::identity(m)).unwrap();
        let top = c.embed(p - 1, total).unwrap().concat(&plain).unwrap();
        let bottom = plain.concat(&c.embed(x.project().apply(p) - 1, total).unwrap()).unwrap();
        let cabled = x.cable(p, &c).unwrap();
        prop_assert!(eq(&cabled, &top));
        prop_assert!(eq(&cabled, &bottom));
        prop_assert_eq!(x.cable(p, &BraidWord::identity(1)).unwrap(), x);
    }

    #[test]
    fn cabling_projects_to_permutation_composition(seed in any::<u64>(), r in 1usize..5, m in 0usize..4, i in 0usize..8) {
        let x = random_braid(seed, 0, r, 8);
        let p = 1 + i % r;
        let got = x.cable(p, &BraidWord::identity(m)).unwrap().project();
        let pi = x.project();
        prop_assert_eq!(got, pi.compose(pi.apply(p), &Permutation::identity(m)).unwrap());
    }

    #[test]
    fn pab_composition_is_associative(seed in any::<u64>(), r in 1usize..6) {
        let mut rng = rng_for(seed, 0);
        let f = PaBMorphism::random(r, 5, &mut rng);
        let g_braid = BraidWord::random(r, 5, &mut rng);
        let (_, gs) = f.target.decompose();
        let gt = gs.then_after(&g_braid.project().inverse());
        let target = Tree::random(r, &mut rng).shape().relabel(&gt).unwrap();
        let g = PaBMorphism::new(f.target.clone(), target, g_braid).unwrap();
        let fg = f.then(&g).unwrap();
        prop_assert!(fg.permutation_matches());
        let back = fg.then(&g.inverse()).unwrap();
        prop_assert!(back.equivalent(&f).unwrap());
    }
}
