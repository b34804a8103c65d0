//! Chain properties over random zero-dimensional monomial structures and
//! the closed-form facts about the cuspidal families.

mod common;

use nilfilt::filtration::{
    analyze, bf_chain, compute_m, cuspidal_model, rank_profile, verify_cuspidal, x_chain, y_chain,
    CuspidalType, LocalModel,
};
use nilfilt::{subquotient_dim, Ideal, Limits, Polynomial, Ring};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_zero_dim_model(rng: &mut ChaCha8Rng) -> LocalModel {
    let ring = Ring::rational(&["x", "y"]).unwrap();
    loop {
        let mut gens = vec![
            vec![rng.gen_range(2u32..=4), 0],
            vec![0, rng.gen_range(2u32..=4)],
        ];
        for _ in 0..rng.gen_range(0..=2) {
            gens.push(vec![rng.gen_range(0u32..=3), rng.gen_range(0u32..=3)]);
        }
        let polys: Vec<Polynomial> = gens
            .into_iter()
            .filter(|e| e.iter().any(|&x| x > 0))
            .map(|e| Polynomial::term(&ring, nilfilt::Monomial(e), ring.field().one()))
            .collect();
        let j = Ideal::new(&ring, polys).unwrap();
        // skip the reduced case J = I
        if j.equals(&Ideal::maximal(&ring)).unwrap() {
            continue;
        }
        return LocalModel::new(&ring, Ideal::maximal(&ring), j).unwrap();
    }
}

#[test]
fn chains_are_monotone_and_telescope() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc4a1);
    let lim = Limits::default();
    for _ in 0..40 {
        let model = random_zero_dim_model(&mut rng);
        let m = compute_m(&model, &lim).unwrap();
        let bf = bf_chain(&model, m, None, &lim).unwrap();
        let xs = x_chain(&model, m).unwrap();
        let ys = y_chain(&model, m, &xs).unwrap();
        let j = model.structure();

        for chain in [&bf, &xs, &ys] {
            assert!(chain[0].is_unit());
            assert!(chain[(m + 1) as usize].equals(j).unwrap());
            for w in chain.windows(2) {
                assert!(w[0].contains(&w[1]).unwrap());
            }
        }
        assert!(ys[1].equals(model.support()).unwrap());

        let total = j.quotient_dim().unwrap();
        for chain in [&bf, &xs, &ys] {
            let profile = rank_profile(chain).unwrap();
            assert_eq!(profile.iter().sum::<usize>(), total);
        }

        // the provable containment chain at every level
        for l in 1..=m as usize {
            assert!(ys[l].contains(&bf[l]).unwrap());
            assert!(xs[l].contains(&ys[l]).unwrap());
        }

        // canonical-morphism rank bound: the power chain surjects onto its
        // image in the y-chain quotients
        let rank_b = rank_profile(&bf).unwrap();
        for l in 0..=m as usize {
            let image = bf[l].sum(&ys[l + 1]).unwrap();
            let d = subquotient_dim(&image, &ys[l + 1]).unwrap();
            assert!(
                rank_b[l] >= d,
                "level {l}: rankB = {} < image rank {d}",
                rank_b[l]
            );
        }
    }
}

#[test]
fn double_colon_route_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0c0);
    let lim = Limits::default();
    for _ in 0..15 {
        let model = random_zero_dim_model(&mut rng);
        let m = compute_m(&model, &lim).unwrap();
        let xs = x_chain(&model, m).unwrap();
        let ys = y_chain(&model, m, &xs).unwrap();
        let j = model.structure();
        let i = model.support();
        for l in 1..=m {
            let direct = j.colon(&j.colon(&i.power(l).unwrap()).unwrap()).unwrap();
            assert!(direct.equals(&ys[l as usize]).unwrap());
        }
    }
}

#[test]
fn cuspidal_dimension_facts() {
    let lim = Limits::default();
    for n in 3..=6 {
        let (model, _) = cuspidal_model(CuspidalType::C2, n, 1).unwrap();
        assert_eq!(compute_m(&model, &lim).unwrap(), n);
        assert_eq!(model.structure().quotient_dim().unwrap(), (n + 2) as usize);
    }
    for n in 4..=6 {
        let (model, _) = cuspidal_model(CuspidalType::C3, n, 2).unwrap();
        assert_eq!(compute_m(&model, &lim).unwrap(), n);
        assert_eq!(model.structure().quotient_dim().unwrap(), (n + 3) as usize);
    }
}

#[test]
fn verification_detects_corrupted_tables() {
    let lim = Limits::default();
    let (model, mut expected) = cuspidal_model(CuspidalType::C2, 4, 0).unwrap();
    // corrupt one expected entry
    expected.xs[2] = Ideal::parse(model.ring(), &["x^3", "y"]).unwrap();
    let report = nilfilt::filtration::verify_against(&model, &expected, &lim).unwrap();
    assert!(!report.all_pass());
    assert!(report.failed().iter().any(|c| c.name == "x_table_l2"));
}

#[test]
fn analyze_reports_informational_failures_without_error() {
    let lim = Limits::default();
    let ring = Ring::rational(&["x", "y"]).unwrap();
    let model = LocalModel::new(
        &ring,
        Ideal::maximal(&ring),
        Ideal::parse(&ring, &["x^3", "x*y", "y^4"]).unwrap(),
    )
    .unwrap();
    let report = analyze(&model, &lim).unwrap();
    // required structural checks hold, the duality observation records false
    let duality = report.checks.iter().find(|c| c.name == "duality").unwrap();
    assert!(!duality.pass);
    assert!(report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("containment")
            || c.name == "telescoping"
            || c.name == "y1_is_support")
        .all(|c| c.pass));
}

#[test]
fn full_family_verification_smoke() {
    let lim = Limits::default();
    for n in [3, 4] {
        assert!(verify_cuspidal(CuspidalType::C2, n, 2, &lim)
            .unwrap()
            .all_pass());
    }
    assert!(verify_cuspidal(CuspidalType::C3, 4, 2, &lim)
        .unwrap()
        .all_pass());
}
