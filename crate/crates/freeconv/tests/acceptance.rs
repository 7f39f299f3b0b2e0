//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Every expected value is exact; the assertions use no tolerances. Run with
//! `cargo test --test acceptance -- --nocapture` to see the per-criterion
//! lines.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use freeconv::convolve::{
    boolean_mult, dilate, free_mult, monotone_mult, orthogonal_iterate, orthogonal_mult,
    scaled_dilation, sfree_mult, Method,
};
use freeconv::graph::{ball_product, finite_product, ColoredRootedGraph, ProductKind};
use freeconv::jacobi::JacobiParams;
use freeconv::rational::{int, rat, Rat};
use freeconv::series::{rho_from_eta, Dist, FormalSeries};
use freeconv::walks::{dwalk_counts_bruteforce, dwalk_counts_matrix, even_fwalk_check};

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&n| int(n)).collect()
}

fn big_ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&n| BigInt::from(n)).collect()
}

fn dist_from_first_return(fr: &[i64]) -> Dist {
    let eta = FormalSeries::from_low(1, ints(fr), fr.len());
    Dist::from_eta(&eta).unwrap()
}

/// Path e--x--x' with a loop at the root; first-return moments (1,1,0,1).
fn fig_g1() -> ColoredRootedGraph {
    ColoredRootedGraph::from_parts(
        &["e", "x", "x'"],
        0,
        &[(0, 0, 1, 1), (0, 1, 1, 1), (1, 2, 1, 1)],
    )
    .unwrap()
}

/// Root with a loop joined to y carrying two leaves; first-return moments
/// (1,1,0,2).
fn fig_g2() -> ColoredRootedGraph {
    ColoredRootedGraph::from_parts(
        &["f", "y", "u", "v"],
        0,
        &[(0, 0, 1, 1), (0, 1, 1, 1), (1, 2, 1, 1), (1, 3, 1, 1)],
    )
    .unwrap()
}

/// Root with a loop and two leaves; first-return moments (1,2,0,0).
fn h1() -> ColoredRootedGraph {
    ColoredRootedGraph::from_parts(
        &["e", "a", "b"],
        0,
        &[(0, 0, 1, 1), (0, 1, 1, 1), (0, 2, 1, 1)],
    )
    .unwrap()
}

/// 3-path rooted at its center; first-return moments (0,2,0,0).
fn h2() -> ColoredRootedGraph {
    ColoredRootedGraph::from_parts(&["c", "l", "r"], 0, &[(0, 1, 1, 1), (0, 2, 1, 1)]).unwrap()
}

fn validate_factor(g: &ColoredRootedGraph, expect: &[i64]) {
    assert_eq!(
        freeconv::walks::first_return_moments(g, expect.len()),
        big_ints(expect),
        "factor reconstruction has unexpected f-walk moments"
    );
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9))
}

fn random_nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = random_rat(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

fn random_dist(rng: &mut ChaCha8Rng, order: usize) -> Dist {
    Dist::new((0..order).map(|_| random_rat(rng)).collect()).unwrap()
}

#[test]
fn criterion_1_monotone_pipeline() {
    let mu1 = dist_from_first_return(&[1, 1, 0, 1]);
    let mu2 = dist_from_first_return(&[1, 1, 0, 2]);
    let expect = ints(&[1, 2, 2, 4]);
    for method in [Method::Transform, Method::Combinatorial] {
        assert_eq!(monotone_mult(&mu1, &mu2, 4, method).first_return, expect);
    }
    let (g1, g2) = (fig_g1(), fig_g2());
    validate_factor(&g1, &[1, 1, 0, 1]);
    validate_factor(&g2, &[1, 1, 0, 2]);
    let prod = finite_product(ProductKind::CombLoop, &g1, &g2).unwrap();
    assert_eq!(dwalk_counts_matrix(&prod, 4), big_ints(&[1, 2, 2, 4]));
    assert_eq!(dwalk_counts_bruteforce(&prod, 4), big_ints(&[1, 2, 2, 4]));
    println!("criterion 1 (monotone pipeline): PASS");
}

#[test]
fn criterion_2_orthogonal_pipeline() {
    let mu1 = dist_from_first_return(&[1, 1, 0, 1]);
    let mu2 = dist_from_first_return(&[1, 1, 0, 2]);
    let expect = ints(&[1, 1, 1, 1]);
    for method in [Method::Transform, Method::Combinatorial] {
        assert_eq!(orthogonal_mult(&mu1, &mu2, 4, method).first_return, expect);
    }
    let prod = finite_product(ProductKind::OrthoLoop, &fig_g1(), &fig_g2()).unwrap();
    assert_eq!(dwalk_counts_matrix(&prod, 4), big_ints(&[1, 1, 1, 1]));
    assert_eq!(dwalk_counts_bruteforce(&prod, 4), big_ints(&[1, 1, 1, 1]));
    println!("criterion 2 (orthogonal pipeline): PASS");
}

#[test]
fn criterion_3_sfree_pipeline() {
    let mu1 = dist_from_first_return(&[1, 2, 0, 0]);
    let mu2 = dist_from_first_return(&[0, 2, 0, 0]);
    let expect = ints(&[1, 0, 4, 0]);
    for method in [Method::Transform, Method::Combinatorial] {
        assert_eq!(sfree_mult(&mu1, &mu2, 4, method).first_return, expect);
    }
    let (g1, g2) = (h1(), h2());
    validate_factor(&g1, &[1, 2, 0, 0]);
    validate_factor(&g2, &[0, 2, 0, 0]);
    let ball = ball_product(ProductKind::SfreeLoop, &g1, &g2, 4).unwrap();
    assert_eq!(dwalk_counts_matrix(&ball, 4), big_ints(&[1, 0, 4, 0]));
    assert_eq!(dwalk_counts_bruteforce(&ball, 4), big_ints(&[1, 0, 4, 0]));
    println!("criterion 3 (s-free pipeline): PASS");
}

#[test]
fn criterion_4_free_pipeline() {
    let mu1 = dist_from_first_return(&[1, 2, 0, 0]);
    let mu2 = dist_from_first_return(&[0, 2, 0, 0]);
    let expect = ints(&[0, 2, 0, 16]);
    for method in [Method::Transform, Method::Combinatorial] {
        assert_eq!(free_mult(&mu1, &mu2, 4, method).first_return, expect);
        // Commutativity: reversed arguments give the same sequence.
        assert_eq!(free_mult(&mu2, &mu1, 4, method).first_return, expect);
    }
    let ball = ball_product(ProductKind::Free, &h1(), &h2(), 4).unwrap();
    assert_eq!(dwalk_counts_matrix(&ball, 4), big_ints(&[0, 2, 0, 16]));
    assert_eq!(dwalk_counts_bruteforce(&ball, 4), big_ints(&[0, 2, 0, 16]));
    let reversed = ball_product(ProductKind::Free, &h2(), &h1(), 4).unwrap();
    assert_eq!(dwalk_counts_matrix(&reversed, 4), big_ints(&[0, 2, 0, 16]));
    println!("criterion 4 (free pipeline): PASS");
}

#[test]
fn criterion_5_jacobi() {
    let bern_half = Dist::new(vec![rat(1, 2); 4]).unwrap();
    let bern_third = Dist::new(vec![rat(1, 3); 4]).unwrap();
    let conv = orthogonal_mult(&bern_half, &bern_third, 4, Method::Transform);
    let params = JacobiParams::from_moments(&conv.dist, 4).unwrap();
    assert_eq!(params.alpha(), &[rat(1, 2), rat(5, 6)]);
    assert_eq!(params.omega(), &[rat(1, 12), int(0)]);
    assert_eq!(
        params.eta(4).tail(),
        vec![rat(1, 2), rat(1, 12), rat(5, 72), rat(25, 432)]
    );
    assert_eq!(
        conv.first_return,
        vec![rat(1, 2), rat(1, 12), rat(5, 72), rat(25, 432)]
    );
    println!("criterion 5 (jacobi roundtrip): PASS");
}

#[test]
fn criterion_6_unit_and_dirac_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let order = 6;
    let one = Dist::dirac(&int(1), order);
    let zero = Dist::dirac_zero(order);
    for _ in 0..20 {
        let mu = random_dist(&mut rng, order);
        let a = random_nonzero_rat(&mut rng);
        let da = Dist::dirac(&a, order);

        // Right and left units of the orthogonal convolution.
        assert_eq!(
            orthogonal_mult(&mu, &one, order, Method::Transform).dist,
            mu
        );
        assert_eq!(orthogonal_mult(&da, &mu, order, Method::Transform).dist, da);
        // Point masses under the s-free convolution.
        assert_eq!(
            sfree_mult(&mu, &da, order, Method::Transform).dist,
            scaled_dilation(&mu, &a).unwrap()
        );
        assert_eq!(sfree_mult(&da, &mu, order, Method::Transform).dist, da);
        // Point masses under the free convolution dilate.
        let dilated = dilate(&mu, &a);
        assert_eq!(free_mult(&da, &mu, order, Method::Transform).dist, dilated);
        assert_eq!(free_mult(&mu, &da, order, Method::Transform).dist, dilated);
        // Point mass at zero.
        assert_eq!(
            orthogonal_mult(&zero, &mu, order, Method::Transform).dist,
            zero
        );
        assert_eq!(
            orthogonal_mult(&mu, &zero, order, Method::Transform).dist,
            Dist::dirac(mu.moment(1), order)
        );
        assert_eq!(sfree_mult(&zero, &mu, order, Method::Transform).dist, zero);
        assert_eq!(
            sfree_mult(&mu, &zero, order, Method::Transform).dist,
            Dist::dirac(mu.moment(1), order)
        );
        assert_eq!(free_mult(&zero, &mu, order, Method::Transform).dist, zero);
        assert_eq!(free_mult(&mu, &zero, order, Method::Transform).dist, zero);
    }
    println!("criterion 6 (unit and point-mass laws, 20 random inputs): PASS");
}

#[test]
fn criterion_7_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 8;
    for _ in 0..50 {
        let mu1 = random_dist(&mut rng, n);
        let mu2 = random_dist(&mut rng, n);

        let free = free_mult(&mu1, &mu2, n, Method::Transform);
        let s1 = sfree_mult(&mu1, &mu2, n, Method::Transform);
        let s2 = sfree_mult(&mu2, &mu1, n, Method::Transform);

        // Subordination: the free first-return series factors through both
        // s-free convolutions.
        let eta = free.dist.eta();
        assert_eq!(eta, mu1.eta().compose(&s2.dist.eta()).unwrap());
        assert_eq!(eta, mu2.eta().compose(&s1.dist.eta()).unwrap());

        // Boolean factorization.
        let rho = rho_from_eta(&eta).unwrap();
        assert_eq!(
            rho,
            rho_from_eta(&s1.dist.eta())
                .unwrap()
                .mul(&rho_from_eta(&s2.dist.eta()).unwrap())
        );

        // Fixed points of the alternating iteration.
        assert_eq!(
            s1.dist,
            orthogonal_mult(&mu1, &s2.dist, n, Method::Transform).dist
        );
        assert_eq!(
            s2.dist,
            orthogonal_mult(&mu2, &s1.dist, n, Method::Transform).dist
        );

        // Stabilization at the truncation order.
        assert_eq!(
            orthogonal_iterate(&mu1, &mu2, n, n, Method::Transform).dist,
            orthogonal_iterate(&mu1, &mu2, n + 2, n, Method::Transform).dist
        );

        // Coefficient locality of the orthogonal convolution.
        let base = orthogonal_mult(&mu1, &mu2, n, Method::Transform);
        let pick = rng.gen_range(1..=n);
        let bump = random_nonzero_rat(&mut rng);
        for k in pick..=n {
            let mut m = mu2.moments().to_vec();
            m[k - 1] += &bump;
            let r = orthogonal_mult(&mu1, &Dist::new(m).unwrap(), n, Method::Transform);
            assert_eq!(r.first_return[pick - 1], base.first_return[pick - 1]);
        }
        for k in (pick + 1)..=n {
            let mut m = mu1.moments().to_vec();
            m[k - 1] += &bump;
            let r = orthogonal_mult(&Dist::new(m).unwrap(), &mu2, n, Method::Transform);
            assert_eq!(r.first_return[pick - 1], base.first_return[pick - 1]);
        }

        // S-transform product law whenever both first moments are nonzero.
        if !num_traits::Zero::is_zero(mu1.moment(1)) && !num_traits::Zero::is_zero(mu2.moment(1)) {
            assert_eq!(
                free.dist.s_transform().unwrap(),
                mu1.s_transform().unwrap().mul(&mu2.s_transform().unwrap())
            );
        }

        // Free commutativity.
        assert_eq!(free.dist, free_mult(&mu2, &mu1, n, Method::Transform).dist);
    }
    println!("criterion 7 (series identity suite, 50 random pairs at order 8): PASS");
}

/// A random connected rooted multigraph on at most `max_v` vertices.
fn random_factor(rng: &mut ChaCha8Rng, max_v: usize) -> ColoredRootedGraph {
    let n = rng.gen_range(1..=max_v);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((j, i, 1u8, rng.gen_range(1..=2u64)));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        edges.push((u.min(v), u.max(v), 1, 1));
    }
    // Bias towards a root loop so the walk counts are not trivially zero.
    if rng.gen_bool(0.7) {
        edges.push((0, 0, 1, 1));
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    ColoredRootedGraph::from_parts(&name_refs, 0, &edges).unwrap()
}

#[test]
fn criterion_8_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for kind in ProductKind::ALL {
        for _ in 0..10 {
            let g1 = random_factor(&mut rng, 4);
            let g2 = random_factor(&mut rng, 4);
            let prod = if kind.needs_radius() {
                ball_product(kind, &g1, &g2, 4).unwrap()
            } else {
                finite_product(kind, &g1, &g2).unwrap()
            };
            assert!(even_fwalk_check(&prod, 8), "{kind}");
            assert_eq!(
                dwalk_counts_matrix(&prod, 4),
                dwalk_counts_bruteforce(&prod, 4),
                "{kind}"
            );
        }
    }
    println!("criterion 8 (matrix vs brute-force on 8 kinds x 10 random pairs): PASS");
}

#[test]
fn criterion_9_star_loop_documented_discrepancy() {
    // All four computation paths agree at (1, 2, 1, 3) on the star loop
    // product of the reconstructed factors. The walk-count figure published
    // alongside this example reports 1 in position two; that value matches
    // neither the bilinear formula nor any counting route here, so it is
    // recorded but not asserted.
    let mu1 = dist_from_first_return(&[1, 1, 0, 1]);
    let mu2 = dist_from_first_return(&[1, 1, 0, 2]);
    let expect = ints(&[1, 2, 1, 3]);
    for method in [Method::Transform, Method::Combinatorial] {
        assert_eq!(boolean_mult(&mu1, &mu2, 4, method).first_return, expect);
    }
    let prod = finite_product(ProductKind::StarLoop, &fig_g1(), &fig_g2()).unwrap();
    assert_eq!(dwalk_counts_matrix(&prod, 4), big_ints(&[1, 2, 1, 3]));
    assert_eq!(dwalk_counts_bruteforce(&prod, 4), big_ints(&[1, 2, 1, 3]));
    println!(
        "criterion 9 (star-loop internal agreement at (1,2,1,3); \
         published figure value D_4 = 1 recorded, not asserted): PASS"
    );
}
