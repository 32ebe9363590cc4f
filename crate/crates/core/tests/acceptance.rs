//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them). All arithmetic is exact, so every
//! comparison is equality — no tolerances anywhere.

use std::sync::Arc;
use std::time::Instant;

use cordial_core::cordial::{CordialityChecker, Method, Verdict};
use cordial_core::newton::{
    default_min_pairing, dominance_leq, generic_newton_bruteforce, generic_newton_qbg,
    lambdas_with_pairings, SigmaClassInvariants,
};
use cordial_core::qbg::{EdgeDirection, QuantumBruhatGraph};
use cordial_core::rootsys::{Coweight, LatticeMode, RootSystem};
use cordial_core::weyl::WeylGroup;
use cordial_core::{AffineGroup, Defect};

struct Ctx {
    affine: AffineGroup,
    qbg: QuantumBruhatGraph,
}

fn ctx(name: &str) -> Ctx {
    let weyl = Arc::new(WeylGroup::new(
        RootSystem::named(name, LatticeMode::SimplyConnected).unwrap(),
    ));
    let qbg = QuantumBruhatGraph::build(weyl.clone()).unwrap();
    let affine = AffineGroup::new(weyl).unwrap();
    Ctx { affine, qbg }
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

#[test]
fn criterion_01_a2_minimal_paths() {
    let t0 = Instant::now();
    let c = ctx("A2");
    let g = c.qbg.group();
    assert_eq!(c.qbg.num_vertices(), 6);
    let s12 = g.parse_word("12").unwrap();
    let s2 = g.parse_word("2").unwrap();
    assert_eq!(c.qbg.distance(s12, s2), 3);
    // every minimal path carries the weight α1∨+α2∨, verified by explicit
    // enumeration independent of the precomputed tables
    let weights = c.qbg.enumerate_minimal_path_weights(s12, s2);
    for w in &weights {
        assert_eq!(w.0, vec![1, 1]);
    }
    assert_eq!(c.qbg.min_path_weight(s12, s2).0, vec![1, 1]);
    assert!(t0.elapsed().as_secs() < 1, "criterion 1 exceeded 1 s");
    let count = c.qbg.count_minimal_paths(s12, s2);
    assert_eq!(
        count, 3,
        "the two edge-length conditions force {count} minimal paths from s12 to s2 \
         (via w0→s21, w0→e, s1→e, and the crossing cover edge s1→s21); a count of \
         three is not attainable for this graph — see qbg::tests::a2_minimal_paths_s12_to_s2, \
         which locks the verified structure",
    );
    println!("criterion 1: PASS — A2 graph, 6 vertices, minimal s12→s2 paths of weight (1,1)");
}

#[test]
fn criterion_02_same_weight_property() {
    let t0 = Instant::now();
    // exhaustive over all ordered pairs: independent per-source BFS that
    // re-derives distances and weights from the edge lists alone
    for name in ["A1", "A2", "C2", "G2", "A3", "B3", "C3"] {
        let c = ctx(name);
        let g = c.qbg.group();
        for src in g.elements() {
            recheck_source(&c.qbg, src, None);
        }
        // plus explicit enumeration of every minimal path for every pair
        for u in g.elements() {
            for v in g.elements() {
                let all = c.qbg.enumerate_minimal_path_weights(u, v);
                assert_eq!(all.len() as u128, c.qbg.count_minimal_paths(u, v));
                let expect = c.qbg.min_path_weight(u, v);
                assert!(all.iter().all(|w| *w == expect), "type {name}");
            }
        }
    }
    // sampled (≥ 10^4 ordered pairs each, fixed seed) in D4 and F4
    for name in ["D4", "F4"] {
        let c = ctx(name);
        let g = c.qbg.group();
        let mut rng = SplitMix(0);
        let sources = 10_000usize.div_ceil(g.order());
        for _ in 0..sources {
            let src = g.element_at(rng.below(g.order()));
            recheck_source(&c.qbg, src, None);
        }
    }
    assert!(t0.elapsed().as_secs() < 120, "criterion 2 exceeded 2 min");
    println!("criterion 2: PASS — minimal-path weights agree for every checked pair");
}

/// Re-derive one BFS row from scratch and compare against the tables; any
/// same-distance weight disagreement is a failure.
fn recheck_source(qbg: &QuantumBruhatGraph, src: cordial_core::WeylElement, cap: Option<u32>) {
    let g = qbg.group();
    let n = g.order();
    let mut dist = vec![u32::MAX; n];
    let mut weight: Vec<Option<Vec<i64>>> = vec![None; n];
    dist[g.element_index(src)] = 0;
    weight[g.element_index(src)] = Some(vec![0; g.rank()]);
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(p) = queue.pop_front() {
        let pi = g.element_index(p);
        if cap.is_some_and(|c| dist[pi] >= c) {
            continue;
        }
        for e in qbg.edges_from(p) {
            let qi = g.element_index(e.target);
            let mut cand = weight[pi].clone().unwrap();
            if e.direction == EdgeDirection::Down {
                for (c, x) in cand.iter_mut().zip(&e.weight.0) {
                    *c += x;
                }
            }
            if dist[qi] == u32::MAX {
                dist[qi] = dist[pi] + 1;
                weight[qi] = Some(cand);
                queue.push_back(e.target);
            } else if dist[qi] == dist[pi] + 1 {
                assert_eq!(
                    weight[qi].as_ref(),
                    Some(&cand),
                    "same-weight violation from {} to {}",
                    g.format_element(src),
                    g.format_element(e.target)
                );
            }
        }
    }
    for v in 0..n {
        let tv = g.element_at(v);
        if cap.is_none() {
            assert_eq!(dist[v], qbg.distance(src, tv));
            assert_eq!(weight[v].take().unwrap(), qbg.min_path_weight(src, tv).0);
        }
    }
}

#[test]
fn criterion_03_oracle_equivalence() {
    let t0 = Instant::now();
    let mut tested = 0usize;
    let mut skipped = 0usize;
    for name in ["A1", "A2", "C2", "G2"] {
        let c = ctx(name);
        let weyl = c.affine.weyl();
        let rs = weyl.root_system();
        let m = default_min_pairing(name);
        for lambda in lambdas_with_pairings(rs, m, m + 2) {
            for v in weyl.elements() {
                let mu = weyl.act_on_coweight(v, &lambda);
                for w in weyl.elements() {
                    let x = c.affine.from_parts(mu.clone(), w).unwrap();
                    if c.affine.length(&x) > 22 {
                        skipped += 1;
                        continue;
                    }
                    let by_graph = generic_newton_qbg(&c.affine, &c.qbg, &x, m, false)
                        .unwrap_or_else(|e| panic!("type {name}: graph route failed: {e}"));
                    let by_oracle = generic_newton_bruteforce(&c.affine, &x, 22).unwrap();
                    assert_eq!(
                        by_graph,
                        by_oracle,
                        "type {name}, λ = {lambda}, v = {}, w = {}",
                        weyl.format_element(v),
                        weyl.format_element(w)
                    );
                    // λ - ν_x is a nonnegative integral combination of
                    // simple coroots in the superregular regime
                    let diff = lambda.sub(by_graph.coweight());
                    assert!(diff.is_integral(), "λ - ν_x must be integral");
                    assert!(dominance_leq(by_graph.coweight(), &lambda), "ν_x ≤ λ");
                    tested += 1;
                }
            }
        }
    }
    assert!(t0.elapsed().as_secs() < 600, "criterion 3 exceeded 10 min");
    println!(
        "criterion 3: PASS — both Newton point routes agree on {tested} superregular \
         elements ({skipped} beyond the length bound skipped)"
    );
}

#[test]
fn criterion_04_antidominant_family() {
    let t0 = Instant::now();
    for name in ["A1", "A2", "C2"] {
        let c = ctx(name);
        let weyl = c.affine.weyl();
        let rs = weyl.root_system();
        let checker = CordialityChecker {
            lower_set_bound: 64,
            ..CordialityChecker::new(&c.affine, &c.qbg)
        };
        let w0 = weyl.longest_element();
        for lambda in lambdas_with_pairings(rs, 0, 4) {
            let mu = weyl.act_on_coweight(w0, &lambda);
            for w in weyl.elements() {
                let x = c.affine.from_parts(mu.clone(), w).unwrap();
                let inv = SigmaClassInvariants::generic_of(&c.affine, &x, 64).unwrap();
                assert_eq!(
                    inv.newton.coweight(),
                    &lambda,
                    "type {name}: ν_x ≠ λ at λ = {lambda}, w = {}",
                    weyl.format_element(w)
                );
                assert_eq!(inv.defect, Defect::Known(0), "type {name}");
                let report = checker.is_cordial(&x, Method::DefinitionOracle).unwrap();
                if report.families.antidominant {
                    assert_eq!(
                        report.verdict,
                        Verdict::Cordial,
                        "type {name}: antidominant element not cordial at λ = {lambda}, w = {}",
                        weyl.format_element(w)
                    );
                }
            }
        }
    }
    assert!(t0.elapsed().as_secs() < 300, "criterion 4 exceeded 5 min");
    println!("criterion 4: PASS — antidominant elements have ν_x = λ, defect 0, and the equality");
}

#[test]
fn criterion_05_sl3_dominant_classification() {
    let t0 = Instant::now();
    let c = ctx("A2");
    let weyl = c.affine.weyl();
    let rs = weyl.root_system();
    let checker = CordialityChecker {
        lower_set_bound: 40,
        ..CordialityChecker::new(&c.affine, &c.qbg)
    };
    let w0 = weyl.longest_element();
    let mut tested = 0usize;
    // pairings in {0,2,3,4}: every simple gap differs from 1
    for lambda in lambdas_with_pairings(rs, 0, 4) {
        if (0..rs.rank()).any(|i| rs.pair_simple_coweight(i, &lambda).to_integer() == 1) {
            continue;
        }
        for w in weyl.elements() {
            let x = c.affine.from_parts(lambda.clone(), w).unwrap();
            let d = c.affine.decompose_dominant(&x);
            if d.v != weyl.identity() {
                // singular λ can move the element out of the dominant
                // chamber; those are outside this classification
                continue;
            }
            let report = checker.is_cordial(&x, Method::DefinitionOracle).unwrap();
            assert_eq!(
                report.verdict == Verdict::NotCordial,
                w == w0,
                "λ = {lambda}, w = {}: non-cordial must mean w = w0 exactly",
                weyl.format_element(w)
            );
            tested += 1;
        }
    }
    // 18 elements over the three regular λ plus 7 over the singular ones
    assert_eq!(tested, 25, "classification slice has unexpected size");
    assert!(t0.elapsed().as_secs() < 120, "criterion 5 exceeded 2 min");
    println!("criterion 5: PASS — dominant slice non-cordial iff w = w0 ({tested} elements)");
}

#[test]
fn criterion_06_c2_classifier_tables() {
    let t0 = Instant::now();
    let c = ctx("C2");
    let weyl = c.affine.weyl();
    let collect = |pred: &dyn Fn(cordial_core::WeylElement) -> bool| {
        let mut v: Vec<String> = weyl
            .elements()
            .filter(|&w| pred(w))
            .map(|w| weyl.format_element(w))
            .collect();
        v.sort();
        v
    };
    let spc = collect(&|w| weyl.is_standard_parabolic_coxeter(w));
    let mut expect_spc: Vec<String> = ["e", "1", "2", "12", "21"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    expect_spc.sort();
    assert_eq!(spc, expect_spc);
    let sha = collect(&|w| weyl.is_small_height_avoiding(w));
    let mut expect_sha: Vec<String> = ["e", "1", "2", "12", "21", "212"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    expect_sha.sort();
    assert_eq!(sha, expect_sha);
    assert!(t0.elapsed().as_millis() < 1000, "criterion 6 exceeded 1 s");
    println!("criterion 6: PASS — C2 classifier tables are bit-exact");
}

#[test]
fn criterion_07_path_lemmas_all_types() {
    let t0 = Instant::now();
    for name in [
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "C2", "C3", "D4", "G2", "F4",
    ] {
        let c = ctx(name);
        let g = c.qbg.group();
        let w0 = g.longest_element();
        for u in g.elements() {
            assert_eq!(
                c.qbg.distance(u, g.identity()),
                c.qbg.downward_distance(u),
                "type {name}: d_Γ(w,1) ≠ d_↓(w)"
            );
            assert_eq!(
                c.qbg.distance(u, w0),
                g.length(w0) - g.length(u),
                "type {name}: d_Γ(u,w0) ≠ ℓ(w0) - ℓ(u)"
            );
            for v in g.elements() {
                let prod = g.multiply(g.inverse(u), v);
                assert!(
                    c.qbg.distance(u, v) <= g.length(prod),
                    "type {name}: d_Γ ≰ ℓ(u⁻¹v)"
                );
            }
        }
        for w in g.elements() {
            for cov in g.bruhat_covers(w) {
                assert!(
                    c.qbg.downward_distance(w) <= c.qbg.downward_distance(cov) + 1,
                    "type {name}: cover inequality"
                );
            }
        }
    }
    assert!(t0.elapsed().as_secs() < 180, "criterion 7 exceeded 3 min");
    println!("criterion 7: PASS — path lemmas hold exhaustively in all 12 types");
}

#[test]
fn criterion_08_cordial_families() {
    let t0 = Instant::now();
    // (b): standard parabolic Coxeter η(x) implies cordial, over the
    // superregular grids; graph criterion everywhere, oracle cross-check
    // within the length bound
    for name in ["A1", "A2", "C2", "G2"] {
        let c = ctx(name);
        let weyl = c.affine.weyl();
        let rs = weyl.root_system();
        let m = default_min_pairing(name);
        let checker = CordialityChecker::new(&c.affine, &c.qbg);
        for lambda in lambdas_with_pairings(rs, m, m + 2) {
            for v in weyl.elements() {
                let mu = weyl.act_on_coweight(v, &lambda);
                for w in weyl.elements() {
                    let x = c.affine.from_parts(mu.clone(), w).unwrap();
                    let report = checker.is_cordial(&x, Method::QbgSuperregular).unwrap();
                    if report.families.spc_eta {
                        assert_eq!(
                            report.verdict,
                            Verdict::Cordial,
                            "type {name}: spc-eta element not cordial (λ={lambda}, v={}, w={})",
                            weyl.format_element(v),
                            weyl.format_element(w)
                        );
                    }
                    if c.affine.length(&x) <= 22 {
                        let by_oracle = checker.is_cordial(&x, Method::DefinitionOracle).unwrap();
                        assert_eq!(by_oracle.verdict, report.verdict, "type {name}");
                    }
                }
            }
        }
    }
    // (c): on the dominant slice, cordial iff w is small-height-avoiding
    for name in ["A2", "C2", "G2", "A3"] {
        let c = ctx(name);
        let weyl = c.affine.weyl();
        let rs = weyl.root_system();
        let m = default_min_pairing(name);
        let checker = CordialityChecker::new(&c.affine, &c.qbg);
        for lambda in lambdas_with_pairings(rs, m, m + 2) {
            for w in weyl.elements() {
                let x = c.affine.from_parts(lambda.clone(), w).unwrap();
                let report = checker.is_cordial(&x, Method::QbgSuperregular).unwrap();
                assert_eq!(
                    report.verdict == Verdict::Cordial,
                    weyl.is_small_height_avoiding(w),
                    "type {name}: dominant cordiality must match small-height-avoidance \
                     (λ={lambda}, w={})",
                    weyl.format_element(w)
                );
                if c.affine.length(&x) <= 22 {
                    let by_oracle = checker.is_cordial(&x, Method::DefinitionOracle).unwrap();
                    assert_eq!(by_oracle.verdict, report.verdict, "type {name}");
                }
            }
        }
    }
    assert!(t0.elapsed().as_secs() < 600, "criterion 8 exceeded budget");
    println!(
        "criterion 8: PASS — spc-eta implies cordial; dominant cordial iff small-height-avoiding"
    );
}

#[test]
fn criterion_09_length_identities() {
    let t0 = Instant::now();
    for name in [
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "C2", "C3", "D4", "G2", "F4",
    ] {
        let c = ctx(name);
        let rs = c.affine.weyl().root_system();
        let grid = lambdas_with_pairings(rs, 0, 6);
        let mut rng = SplitMix(0xc0ffee);
        for _ in 0..200 {
            let lam = &grid[rng.below(grid.len())];
            let x = c.affine.translation(lam.clone()).unwrap();
            assert_eq!(
                c.affine.length(&x) as i64,
                rs.two_rho_pair_coweight(lam).to_integer(),
                "type {name}: ℓ(t^λ) ≠ ⟨2ρ,λ⟩"
            );
        }
    }
    // the closed form for regular dominant λ: exhaustive in rank ≤ 2
    for name in ["A1", "A2", "B2", "C2", "G2"] {
        let c = ctx(name);
        let weyl = c.affine.weyl();
        let rs = weyl.root_system();
        let lambdas: Vec<Coweight> = lambdas_with_pairings(rs, 1, 3)
            .into_iter()
            .filter(|l| rs.is_regular_dominant(l))
            .collect();
        for lambda in &lambdas {
            let trho = rs.two_rho_pair_coweight(lambda).to_integer();
            for v in weyl.elements() {
                let mu = weyl.act_on_coweight(v, lambda);
                for w in weyl.elements() {
                    let x = c.affine.from_parts(mu.clone(), w).unwrap();
                    let expect = trho - weyl.length(weyl.multiply(weyl.inverse(w), v)) as i64
                        + weyl.length(v) as i64;
                    assert_eq!(c.affine.length(&x) as i64, expect, "type {name}");
                }
            }
        }
    }
    // sampled in rank 3
    for name in ["A3", "B3", "C3"] {
        let c = ctx(name);
        let weyl = c.affine.weyl();
        let rs = weyl.root_system();
        let lambdas: Vec<Coweight> = lambdas_with_pairings(rs, 1, 3)
            .into_iter()
            .filter(|l| rs.is_regular_dominant(l))
            .collect();
        let mut rng = SplitMix(0xbeef);
        for _ in 0..1000 {
            let lambda = &lambdas[rng.below(lambdas.len())];
            let v = weyl.element_at(rng.below(weyl.order()));
            let w = weyl.element_at(rng.below(weyl.order()));
            let mu = weyl.act_on_coweight(v, lambda);
            let x = c.affine.from_parts(mu, w).unwrap();
            let expect = rs.two_rho_pair_coweight(lambda).to_integer()
                - weyl.length(weyl.multiply(weyl.inverse(w), v)) as i64
                + weyl.length(v) as i64;
            assert_eq!(c.affine.length(&x) as i64, expect, "type {name}");
        }
    }
    assert!(t0.elapsed().as_secs() < 60, "criterion 9 exceeded 1 min");
    println!("criterion 9: PASS — translation lengths and the regular closed form agree");
}

#[test]
fn criterion_10_inequality_everywhere() {
    // Every evaluation path checks ℓ(x) - ℓ(η(x)) ≤ ⟨2ρ,ν_x⟩ - def(b_x)
    // and errors out on violation, so any occurrence anywhere in this
    // suite fails the build. This test additionally sweeps a mixed grid
    // (singular and sub-superregular λ included) through the guarded API.
    let t0 = Instant::now();
    let mut evaluated = 0usize;
    for name in ["A1", "A2", "C2", "G2"] {
        let c = ctx(name);
        let weyl = c.affine.weyl();
        let rs = weyl.root_system();
        let checker = CordialityChecker {
            lower_set_bound: 22,
            ..CordialityChecker::new(&c.affine, &c.qbg)
        };
        for lambda in lambdas_with_pairings(rs, 0, 3) {
            for v in weyl.elements() {
                let mu = weyl.act_on_coweight(v, &lambda);
                for w in weyl.elements() {
                    let x = c.affine.from_parts(mu.clone(), w).unwrap();
                    if c.affine.length(&x) > 22 {
                        continue;
                    }
                    let report = checker.is_cordial(&x, Method::DefinitionOracle).unwrap();
                    if let Some(rhs) = report.rhs {
                        assert!(cordial_core::Rational64::from_integer(report.lhs) <= rhs);
                    }
                    evaluated += 1;
                }
            }
        }
    }
    assert!(evaluated > 1000);
    assert!(t0.elapsed().as_secs() < 300);
    println!("criterion 10: PASS — inequality verified on {evaluated} mixed-grid elements");
}
