//! Acceptance suite: one test per criterion, each printing a pass line with
//! its elapsed time (run with `--nocapture` to see them). Expected values
//! are frozen from hand computations or independent oracles; every
//! comparison is exact.

use std::time::{Duration, Instant};

use arcspace::{
    arc_presentation, classical_jet_ring, classicality_report, cohomology_dim,
    cohomology_euler_series, compare_graded, complex_euler_series, differential_matrix,
    free_euler_series, is_boundary, is_cycle, pochhammer, pochhammer_finite, presets, rat,
    weakly_smooth_check, BiSeries, CoeffConvention, ColumnRange, EulerConvention, GenId, Monomial,
    Polynomial, Presentation, PresentationBuilder, Weighting,
};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config as PropConfig, TestRunner};

fn finish(criterion: &str, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("acceptance {criterion} ({what}): PASS in {elapsed:.2?}");
    assert!(
        elapsed < budget,
        "{criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

#[test]
fn acceptance_1_fat_point_differentials() {
    let started = Instant::now();
    let arc = arc_presentation(&presets::fat_point(), 2).unwrap();
    let p = arc.presentation();
    let x = |i: u32| p.find("x", Some(i)).unwrap();
    let zeta = |i: u32| p.find("zeta", Some(i)).unwrap();
    let expected = [
        p.monomial(rat(1), &[(x(0), 2)]).unwrap(),
        p.monomial(rat(2), &[(x(0), 1), (x(1), 1)]).unwrap(),
        &p.monomial(rat(2), &[(x(0), 1), (x(2), 1)]).unwrap()
            + &p.monomial(rat(1), &[(x(1), 2)]).unwrap(),
    ];
    for (i, want) in expected.iter().enumerate() {
        assert_eq!(p.diff(zeta(i as u32)), want, "differential of zeta_{i}");
    }
    finish(
        "1",
        "fat-point arc differentials",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn acceptance_2_eta_detection() {
    let started = Instant::now();
    let arc = arc_presentation(&presets::fat_point(), 1).unwrap();
    let p = arc.presentation();
    let eta = presets::eta(&arc);
    assert!(is_cycle(p, &eta).unwrap());
    assert!(!is_boundary(p, &eta, &Weighting::Internal(3)).unwrap());
    assert_eq!(cohomology_dim(p, 1, 1, &Weighting::Internal(3)).unwrap(), 1);
    finish(
        "2",
        "eta is a non-bounding cycle",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn acceptance_3_classicality_verdicts() {
    let started = Instant::now();
    let fat =
        classicality_report(&presets::fat_point(), 1, 2, ColumnRange::InternalUpTo(4)).unwrap();
    assert!(!fat.classical_in_range);
    let (entry, _) = fat.witness.as_ref().unwrap();
    assert_eq!(
        (entry.i, entry.w, entry.weighting, entry.dim),
        (1, 1, Weighting::Internal(3), 1)
    );
    for base in [presets::node(), presets::quadric_cone()] {
        for level in 0..=2 {
            let rep = classicality_report(&base, level, 4, ColumnRange::InternalUpTo(6)).unwrap();
            assert!(rep.classical_in_range, "level {level}");
            assert!(rep.entries.iter().all(|e| e.dim == 0));
        }
    }
    finish(
        "3",
        "fat point non-classical, node and cone classical",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn acceptance_4_weak_smoothness_dichotomy() {
    let started = Instant::now();
    let fat = weakly_smooth_check(&presets::fat_point(), ColumnRange::InternalUpTo(8)).unwrap();
    assert!(!fat.weakly_smooth_in_range());
    let (entry, class) = fat.witness.as_ref().unwrap();
    assert_eq!(entry.i, 1);
    let eta = presets::eta(fat.complex.arc());
    let (m0, c0) = class.terms().next().unwrap();
    let ratio = c0.clone() / eta.coefficient(m0).unwrap().clone();
    assert!(!ratio.is_zero());
    assert_eq!(*class, eta.scaled(&ratio), "witness is a multiple of eta");

    let node = weakly_smooth_check(&presets::node(), ColumnRange::InternalUpTo(8)).unwrap();
    assert!(node.weakly_smooth_in_range());
    finish(
        "4",
        "weak smoothness matches classicality",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_5_pi_zero_oracle_equality() {
    let started = Instant::now();
    for base in [presets::fat_point(), presets::node()] {
        for level in 0..=2 {
            let arc = arc_presentation(&base, level).unwrap();
            let ring = classical_jet_ring(&base, level).unwrap();
            for w in 0..=4u32 {
                for iw in 0..=6i64 {
                    let derived =
                        cohomology_dim(arc.presentation(), 0, w, &Weighting::Internal(iw)).unwrap();
                    let classical = ring.graded_quotient_dim(w, iw).unwrap();
                    assert_eq!(derived, classical, "level {level}, (w, iw) = ({w}, {iw})");
                }
            }
        }
    }
    finish(
        "5",
        "pi_0 equals the classical jet ring",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn acceptance_6_degeneration_comparison() {
    let started = Instant::now();
    for base in [presets::fat_point(), presets::node()] {
        for level in 1..=2u32 {
            let zero = compare_graded(
                &base,
                level,
                4,
                ColumnRange::InternalUpTo(6),
                CoeffConvention::Zero,
            )
            .unwrap();
            assert!(
                zero.dims_match,
                "dimension mismatch: {:?}",
                zero.first_mismatch
            );
            assert!(
                zero.matches(),
                "differential mismatch: {:?}",
                zero.first_mismatch
            );
            let full = compare_graded(
                &base,
                level,
                4,
                ColumnRange::InternalUpTo(6),
                CoeffConvention::Full,
            )
            .unwrap();
            assert!(full.dims_match);
        }
    }
    println!(
        "  matching coefficient convention: {}",
        CoeffConvention::Zero
    );
    finish(
        "6",
        "associated graded degenerates onto the symmetric model",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_7_euler_triple_agreement_and_product_formula() {
    let started = Instant::now();
    let (qmax, zmax) = (6u32, 8u32);
    // triple agreement at levels 1..3
    for level in 1..=3u32 {
        let arc = arc_presentation(&presets::fat_point(), level).unwrap();
        let p = arc.presentation();
        let free = free_euler_series(p, qmax, zmax, EulerConvention::Euler).unwrap();
        let census = complex_euler_series(p, qmax, zmax).unwrap();
        let cohom = cohomology_euler_series(p, qmax, zmax).unwrap();
        assert_eq!(
            free, census,
            "product formula against census at level {level}"
        );
        assert_eq!(census, cohom, "census against cohomology at level {level}");

        // level-truncated product formula, super convention
        let sup = free_euler_series(p, qmax, zmax, EulerConvention::Super).unwrap();
        let num: BiSeries = pochhammer_finite(1, 2, level + 1, qmax, zmax);
        let den: BiSeries = pochhammer_finite(-1, 1, level + 1, qmax, zmax);
        let product = num.mul(&den.invert().unwrap());
        assert_eq!(sup, product, "truncated product at level {level}");
    }
    // within the rectangle the census stabilizes at level qmax, where the
    // super convention reproduces the infinite product and the euler
    // convention does not
    let arc = arc_presentation(&presets::fat_point(), qmax).unwrap();
    let p = arc.presentation();
    let sup = free_euler_series(p, qmax, zmax, EulerConvention::Super).unwrap();
    let eul = free_euler_series(p, qmax, zmax, EulerConvention::Euler).unwrap();
    let product = pochhammer::<arcspace::Int>(1, 2, qmax, zmax).mul(
        &pochhammer::<arcspace::Int>(-1, 1, qmax, zmax)
            .invert()
            .unwrap(),
    );
    assert_eq!(
        sup, product,
        "super convention matches the Pochhammer product"
    );
    assert_ne!(eul, product, "euler convention does not");
    println!("  matching Euler-series convention: super");

    // order-3 fat point, same shape
    let cube = presets::fat_point_power(3);
    let arc = arc_presentation(&cube, 4).unwrap();
    let sup = free_euler_series(arc.presentation(), 4, 6, EulerConvention::Super).unwrap();
    let product = pochhammer::<arcspace::Int>(1, 3, 4, 6)
        .mul(&pochhammer::<arcspace::Int>(-1, 1, 4, 6).invert().unwrap());
    assert_eq!(sup, product);
    finish(
        "7",
        "Euler characteristics and the Pochhammer formula",
        started,
        Duration::from_secs(120),
    );
}

// ---------------------------------------------------------------------------
// criterion 8: randomized property suites, 1000 cases each
// ---------------------------------------------------------------------------

fn runner() -> TestRunner {
    TestRunner::new(PropConfig {
        cases: 1000,
        failure_persistence: None,
        ..PropConfig::default()
    })
}

/// Seeds for a random internally graded Koszul-type base presentation:
/// even coordinates with small weights, odd generators whose differentials
/// are random even polynomials of a fixed weight.
type BaseSeed = (Vec<i64>, Vec<(i64, Vec<i64>)>);

fn base_seed() -> impl Strategy<Value = BaseSeed> {
    (
        prop::collection::vec(1i64..=2, 1..=3),
        prop::collection::vec((2i64..=4, prop::collection::vec(-3i64..=3, 6)), 0..=2),
    )
}

fn build_base(seed: &BaseSeed) -> Presentation {
    let (even_iws, odds) = seed;
    let mut b = PresentationBuilder::new();
    for (k, iw) in even_iws.iter().enumerate() {
        b.generator(&format!("x{k}"), 0, Some(*iw));
    }
    for (k, (target, _)) in odds.iter().enumerate() {
        b.generator(&format!("zeta{k}"), -1, Some(*target));
    }
    let free: Presentation = b.free().unwrap();
    let mut diffs = Vec::new();
    for (k, (target, coeffs)) in odds.iter().enumerate() {
        let basis = free
            .bidegree_basis(0, 0, &Weighting::Internal(*target))
            .unwrap();
        let mut d = Polynomial::zero();
        for (i, m) in basis.iter().enumerate() {
            let c = coeffs[i % coeffs.len()];
            if c != 0 {
                d = &d + &Polynomial::single(m.clone(), rat(c));
            }
        }
        let id = free.find(&format!("zeta{k}"), None).unwrap();
        diffs.push((id, d));
    }
    free.with_differentials(diffs).unwrap()
}

/// Seeds selecting a homogeneous polynomial from a column of a
/// presentation: a (w, iw) column, a degree bucket, and term coefficients.
type PolySeed = (u32, i64, usize, Vec<i64>);

fn poly_seed() -> impl Strategy<Value = PolySeed> {
    (
        0u32..=2,
        0i64..=4,
        0usize..=3,
        prop::collection::vec(-3i64..=3, 4),
    )
}

fn build_homogeneous(pres: &Presentation, seed: &PolySeed) -> Polynomial {
    let (w, iw, bucket_pick, coeffs) = seed;
    let buckets = pres.column_bases(*w, &Weighting::Internal(*iw)).unwrap();
    let buckets: Vec<&Vec<Monomial>> = buckets.values().collect();
    if buckets.is_empty() {
        return pres.gen_poly(GenId(0));
    }
    let bucket = buckets[bucket_pick % buckets.len()];
    let mut p = Polynomial::zero();
    for (i, m) in bucket.iter().take(4).enumerate() {
        let c = coeffs[i % coeffs.len()];
        if c != 0 {
            p = &p + &Polynomial::single(m.clone(), rat(c));
        }
    }
    if p.is_zero() {
        Polynomial::single(bucket[0].clone(), rat(1))
    } else {
        p
    }
}

fn sign_of(pres: &Presentation, p: &Polynomial) -> Option<i32> {
    pres.homogeneous_degree(p).ok().flatten()
}

#[test]
fn acceptance_8a_graded_commutativity() {
    let started = Instant::now();
    runner()
        .run(
            &(base_seed(), 0u32..=2, poly_seed(), poly_seed()),
            |(bs, level, ps, qs)| {
                let base = build_base(&bs);
                let arc = arc_presentation(&base, level).unwrap();
                let pres = arc.presentation();
                let p = build_homogeneous(pres, &ps);
                let q = build_homogeneous(pres, &qs);
                let pq = pres.multiply(&p, &q).unwrap();
                let qp = pres.multiply(&q, &p).unwrap();
                let (dp, dq) = (sign_of(pres, &p).unwrap(), sign_of(pres, &q).unwrap());
                let expected = if (dp * dq) % 2 == 0 { qp.clone() } else { -&qp };
                prop_assert_eq!(pq, expected);
                Ok(())
            },
        )
        .unwrap();
    finish(
        "8a",
        "graded commutativity, 1000 cases",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_8b_leibniz_rule() {
    let started = Instant::now();
    runner()
        .run(
            &(base_seed(), 0u32..=2, poly_seed(), poly_seed()),
            |(bs, level, ps, qs)| {
                let base = build_base(&bs);
                let arc = arc_presentation(&base, level).unwrap();
                let pres = arc.presentation();
                let p = build_homogeneous(pres, &ps);
                let q = build_homogeneous(pres, &qs);
                let lhs = pres.differentiate(&pres.multiply(&p, &q).unwrap()).unwrap();
                let dp_q = pres.multiply(&pres.differentiate(&p).unwrap(), &q).unwrap();
                let p_dq = pres.multiply(&p, &pres.differentiate(&q).unwrap()).unwrap();
                let signed = if sign_of(pres, &p).unwrap() % 2 == 0 {
                    p_dq
                } else {
                    -&p_dq
                };
                prop_assert_eq!(lhs, &dp_q + &signed);
                Ok(())
            },
        )
        .unwrap();
    finish(
        "8b",
        "graded Leibniz rule, 1000 cases",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_8c_differential_squares_to_zero() {
    let started = Instant::now();
    runner()
        .run(
            &(base_seed(), 0u32..=2, poly_seed(), poly_seed()),
            |(bs, level, ps, qs)| {
                let base = build_base(&bs);
                let arc = arc_presentation(&base, level).unwrap();
                let pres = arc.presentation();
                let p = &build_homogeneous(pres, &ps) + &build_homogeneous(pres, &qs);
                let dd = pres
                    .differentiate(&pres.differentiate(&p).unwrap())
                    .unwrap();
                prop_assert!(dd.is_zero());
                Ok(())
            },
        )
        .unwrap();
    finish(
        "8c",
        "d^2 = 0, 1000 cases",
        started,
        Duration::from_secs(60),
    );
}

/// Brute-force Koszul sign: flatten the factor list into unit factors and
/// bubble-sort, flipping the sign on every odd-odd adjacent swap.
fn brute_normalize(pres: &Presentation, factors: &[(GenId, u32)]) -> (i8, Option<Monomial>) {
    let mut flat: Vec<GenId> = Vec::new();
    for &(g, e) in factors {
        for _ in 0..e {
            flat.push(g);
        }
    }
    let odd = |g: GenId| pres.generator(g).coh_degree().rem_euclid(2) == 1;
    let mut sign = 1i8;
    let n = flat.len();
    for i in 0..n {
        for j in 0..n.saturating_sub(i + 1) {
            if flat[j + 1] < flat[j] {
                if odd(flat[j]) && odd(flat[j + 1]) {
                    sign = -sign;
                }
                flat.swap(j, j + 1);
            }
        }
    }
    for w in flat.windows(2) {
        if w[0] == w[1] && odd(w[0]) {
            return (0, None);
        }
    }
    let mut merged: Vec<(GenId, u32)> = Vec::new();
    for g in flat {
        match merged.last_mut() {
            Some((h, e)) if *h == g => *e += 1,
            _ => merged.push((g, 1)),
        }
    }
    let (s, m) = pres.normalize(&merged).unwrap();
    assert_eq!(s, 1, "merged list is already sorted");
    (sign, m)
}

#[test]
fn acceptance_8d_koszul_sign_normalization() {
    let started = Instant::now();
    runner()
        .run(
            &(
                base_seed(),
                0u32..=2,
                prop::collection::vec((0usize..=7, 1u32..=2), 1..=4),
            ),
            |(bs, level, picks)| {
                let base = build_base(&bs);
                let arc = arc_presentation(&base, level).unwrap();
                let pres = arc.presentation();
                let n = pres.num_generators();
                let factors: Vec<(GenId, u32)> = picks
                    .iter()
                    .map(|&(g, e)| (GenId((g % n) as u32), e))
                    .collect();
                let (sign, mono) = pres.normalize(&factors).unwrap();
                let (bsign, bmono) = brute_normalize(pres, &factors);
                prop_assert_eq!(sign, bsign);
                prop_assert_eq!(&mono, &bmono);
                if let Some(m) = mono {
                    prop_assert!(m.factors().windows(2).all(|w| w[0].0 < w[1].0));
                    for &(g, e) in m.factors() {
                        if pres.generator(g).coh_degree().rem_euclid(2) == 1 {
                            prop_assert_eq!(e, 1);
                        }
                    }
                }
                Ok(())
            },
        )
        .unwrap();
    finish(
        "8d",
        "Koszul sign normalization, 1000 cases",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_8e_conformal_homogeneity_of_arc_differentials() {
    let started = Instant::now();
    runner()
        .run(&(base_seed(), 0u32..=3, poly_seed()), |(bs, level, ps)| {
            let base = build_base(&bs);
            let arc = arc_presentation(&base, level).unwrap();
            let pres = arc.presentation();
            for g in pres.gen_ids() {
                let gen = pres.generator(g);
                for (m, _) in pres.diff(g).terms() {
                    prop_assert_eq!(pres.monomial_conformal_weight(m), gen.conformal_weight());
                    prop_assert_eq!(pres.monomial_internal_weight(m), gen.internal_weight());
                }
            }
            // and monomial-by-monomial on a random homogeneous polynomial
            let p = build_homogeneous(pres, &ps);
            let (m0, _) = p.terms().next().unwrap();
            let (w, iw) = (
                pres.monomial_conformal_weight(m0),
                pres.monomial_internal_weight(m0),
            );
            for (m, _) in pres.differentiate(&p).unwrap().terms() {
                prop_assert_eq!(pres.monomial_conformal_weight(m), w);
                prop_assert_eq!(pres.monomial_internal_weight(m), iw);
            }
            Ok(())
        })
        .unwrap();
    finish(
        "8e",
        "conformal homogeneity of arc differentials, 1000 cases",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_8f_truncation_chain_map() {
    let started = Instant::now();
    runner()
        .run(&(base_seed(), 0u32..=2, poly_seed()), |(bs, level, ps)| {
            let base = build_base(&bs);
            let src = arc_presentation(&base, level + 1).unwrap();
            let tgt = arc_presentation(&base, level).unwrap();
            let p_tgt = build_homogeneous(tgt.presentation(), &ps);
            // view the jets-<=-level polynomial inside the level+1 algebra
            let p_src = p_tgt.map_generators(|g| {
                let gen = tgt.presentation().generator(g);
                src.presentation().find(gen.base(), gen.jet()).unwrap()
            });
            let trunc_p = arcspace::truncation_map(&src, &tgt, &p_src).unwrap();
            prop_assert_eq!(&trunc_p, &p_tgt);
            let lhs = arcspace::truncation_map(
                &src,
                &tgt,
                &src.presentation().differentiate(&p_src).unwrap(),
            )
            .unwrap();
            let rhs = tgt.presentation().differentiate(&p_tgt).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .unwrap();
    finish(
        "8f",
        "truncation is a chain map below the top jets, 1000 cases",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_8g_rank_nullity_and_composite_vanishing() {
    let started = Instant::now();
    runner()
        .run(
            &(base_seed(), 0u32..=2, 0u32..=2, 0i64..=4, 0usize..=3),
            |(bs, level, w, iw, pick)| {
                let base = build_base(&bs);
                let arc = arc_presentation(&base, level).unwrap();
                let pres = arc.presentation();
                let buckets = pres.column_bases(w, &Weighting::Internal(iw)).unwrap();
                let degrees: Vec<i32> = buckets.keys().copied().collect();
                if degrees.is_empty() {
                    return Ok(());
                }
                let d = degrees[pick % degrees.len()];
                let outgoing = differential_matrix(pres, d, w, &Weighting::Internal(iw)).unwrap();
                let incoming =
                    differential_matrix(pres, d - 1, w, &Weighting::Internal(iw)).unwrap();
                // rank-nullity across the two elimination routes
                let rank = outgoing.matrix.rank();
                let nullity = outgoing.matrix.kernel_basis().len();
                prop_assert_eq!(rank + nullity, outgoing.source.len());
                // d following d is zero on the piece
                prop_assert!(outgoing.matrix.mul(&incoming.matrix).unwrap().is_zero());
                // boundaries fit inside cycles, so the dimension is a plain count
                prop_assert!(incoming.matrix.rank() <= nullity);
                Ok(())
            },
        )
        .unwrap();
    finish(
        "8g",
        "rank-nullity and composite vanishing, 1000 cases",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_9_smooth_cases_are_classical() {
    let started = Instant::now();
    for base in [presets::smooth_line(), presets::parabola()] {
        for level in 0..=3 {
            let rep = classicality_report(&base, level, 3, ColumnRange::InternalUpTo(6)).unwrap();
            assert!(rep.classical_in_range, "level {level}");
            assert!(rep.entries.iter().all(|e| e.dim == 0));
        }
    }
    finish(
        "9",
        "smooth line and parabola stay classical",
        started,
        Duration::from_secs(60),
    );
}

/// Supporting check: the weight-one column of the fat point is identical at
/// every level >= 1 (jet variables above weight one cannot contribute), so
/// the eta computation is level-independent.
#[test]
fn weight_one_column_is_stable_across_levels() {
    let level_one = arc_presentation(&presets::fat_point(), 1).unwrap();
    let reference: Vec<Vec<String>> = level_one
        .presentation()
        .column_bases(1, &Weighting::Internal(3))
        .unwrap()
        .values()
        .map(|b| {
            b.iter()
                .map(|m| level_one.presentation().monomial_string(m))
                .collect()
        })
        .collect();
    for level in 1..=3 {
        let arc = arc_presentation(&presets::fat_point(), level).unwrap();
        let pres = arc.presentation();
        assert_eq!(
            cohomology_dim(pres, 1, 1, &Weighting::Internal(3)).unwrap(),
            1
        );
        let bases: Vec<Vec<String>> = pres
            .column_bases(1, &Weighting::Internal(3))
            .unwrap()
            .values()
            .map(|b| b.iter().map(|m| pres.monomial_string(m)).collect())
            .collect();
        assert_eq!(bases, reference, "level {level}");
    }
}
