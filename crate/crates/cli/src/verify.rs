//! The `verify` subcommand: a named battery of structural invariants run
//! against one root-system type. Small groups are checked exhaustively;
//! larger ones fall back to seeded sampling within the configured budget,
//! so a fixed seed always reproduces the same report.

use std::sync::Arc;

use cordial_core::cordial::{CordialityChecker, Method, Verdict};
use cordial_core::newton::{
    default_min_pairing, dominance_leq, generic_newton_bruteforce, grid_agreement_failures,
    lambdas_with_pairings, SigmaClassInvariants,
};
use cordial_core::qbg::{EdgeDirection, QuantumBruhatGraph};
use cordial_core::rootsys::{LatticeMode, RootSystem};
use cordial_core::weyl::WeylGroup;
use cordial_core::{AffineGroup, Defect};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

pub struct VerifyOptions {
    pub budget: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: 200_000,
            seed: 0,
        }
    }
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

macro_rules! ensure_prop {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

type Check = Result<String, String>;

pub fn run(
    type_name: &str,
    lattice: LatticeMode,
    opts: &VerifyOptions,
    jobs: usize,
) -> anyhow::Result<Vec<PropertyResult>> {
    let rs = RootSystem::named(type_name, lattice)?;
    let weyl = Arc::new(WeylGroup::new(rs));
    let qbg = QuantumBruhatGraph::build(weyl.clone())
        .map_err(|e| anyhow::anyhow!("graph construction failed: {e}"))?;
    let affine = AffineGroup::new(weyl.clone())?;

    let small = weyl.order() <= 48;
    let rank = weyl.rank();

    type Prop<'a> = (&'static str, Box<dyn Fn() -> Check + Send + Sync + 'a>);
    let mut props: Vec<Prop<'_>> = Vec::new();
    let w = &weyl;
    let q = &qbg;
    let a = &affine;
    props.push(("positive-root-count", Box::new(move || root_count(w))));
    props.push(("two-rho-pairings", Box::new(move || two_rho(w))));
    props.push((
        "reflection-bijection",
        Box::new(move || reflections(w, opts)),
    ));
    props.push(("reflection-length-bound", Box::new(move || refl_bound(w))));
    props.push((
        "spc-reflection-length-criterion",
        Box::new(move || spc(w, opts)),
    ));
    props.push((
        "longest-element-length-identities",
        Box::new(move || w0_identities(w, opts)),
    ));
    props.push((
        "bruhat-subword-vs-cover-closure",
        Box::new(move || bruhat(w, opts)),
    ));
    props.push(("classifier-tables", Box::new(move || classifier_tables(w))));
    props.push((
        "qbg-minimal-path-weights",
        Box::new(move || qbg_weights(q, opts)),
    ));
    props.push(("qbg-path-lemmas", Box::new(move || path_lemmas(q, opts))));
    props.push((
        "translation-length",
        Box::new(move || translation_length(a, opts)),
    ));
    props.push((
        "regular-length-formula",
        Box::new(move || length_formula(a, opts)),
    ));
    props.push(("omega-count", Box::new(move || omega(a))));
    if rank <= 3 && small {
        props.push((
            "newton-oracle-agreement",
            Box::new(move || oracle_agreement(a, q)),
        ));
        props.push(("mazur-bound", Box::new(move || mazur(a, opts))));
        props.push((
            "antidominant-cordial",
            Box::new(move || antidominant(a, q, opts)),
        ));
        props.push((
            "cordiality-method-agreement",
            Box::new(move || method_agreement(a, q, opts)),
        ));
        props.push((
            "lower-set-vs-cover-closure",
            Box::new(move || lower_sets(a, opts)),
        ));
    }

    // ordered parallel map: the report is byte-identical for any job count
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| anyhow::anyhow!("cannot build thread pool: {e}"))?;
    let results = pool.install(|| {
        use rayon::prelude::*;
        props
            .par_iter()
            .map(|(name, check)| match check() {
                Ok(detail) => PropertyResult {
                    name,
                    status: Status::Pass,
                    detail,
                },
                Err(detail) => PropertyResult {
                    name,
                    status: Status::Fail,
                    detail,
                },
            })
            .collect()
    });
    Ok(results)
}

fn root_count(weyl: &WeylGroup) -> Check {
    let n = weyl.root_system().num_positive_roots();
    ensure_prop!(
        n as u32 == weyl.length(weyl.longest_element()),
        "|Φ⁺| = {n} but ℓ(w0) = {}",
        weyl.length(weyl.longest_element())
    );
    Ok(format!("{n} positive roots = ℓ(w0)"))
}

fn two_rho(weyl: &WeylGroup) -> Check {
    let rs = weyl.root_system();
    for i in 0..rs.rank() {
        let p = rs.two_rho_pair_coroot(&rs.simple_coroot(i));
        ensure_prop!(p == 2, "⟨2ρ, α{}∨⟩ = {p}", i + 1);
    }
    for cr in rs.positive_coroots() {
        let p = rs.two_rho_pair_coroot(cr);
        ensure_prop!(p == 2 * cr.height(), "⟨2ρ, {cr:?}⟩ ≠ 2·height");
    }
    Ok(format!(
        "⟨2ρ,·⟩ = 2·height on all {} coroots",
        rs.num_positive_roots()
    ))
}

fn reflections(weyl: &WeylGroup, opts: &VerifyOptions) -> Check {
    let rs = weyl.root_system();
    let n = rs.num_positive_roots();
    let mut seen = std::collections::HashSet::new();
    for k in 0..n {
        let r = weyl.reflection(k);
        ensure_prop!(
            weyl.multiply(r, r) == weyl.identity(),
            "s_β not an involution"
        );
        ensure_prop!(weyl.reflection_root_index(r) == Some(k), "Φ⁺↔R not inverse");
        seen.insert(r);
    }
    ensure_prop!(seen.len() == n, "reflection map not injective");
    // conjugation rule on sampled (w, i)
    let mut rng = SplitMix(opts.seed);
    let samples = opts.budget.min(weyl.order() * weyl.rank()).min(20_000);
    for _ in 0..samples {
        let w = weyl.element_at(rng.below(weyl.order()));
        let i = rng.below(weyl.rank());
        let img = weyl.act_on_root(w, &rs.simple_root(i));
        let pos = if img.is_positive() {
            img
        } else {
            cordial_core::Root(img.0.iter().map(|c| -c).collect())
        };
        let k = rs.root_index(&pos).ok_or("image not a root")?;
        let conj = weyl.multiply(weyl.multiply(w, weyl.simple_reflection(i)), weyl.inverse(w));
        ensure_prop!(conj == weyl.reflection(k), "s_(w α_i) ≠ w s_i w⁻¹");
    }
    Ok(format!("bijection on {n} roots; {samples} conjugations"))
}

fn refl_bound(weyl: &WeylGroup) -> Check {
    let rs = weyl.root_system();
    let simply_laced = rs.symmetrizer().iter().all(|&d| d == rs.symmetrizer()[0]);
    for k in 0..rs.num_positive_roots() {
        let bound = rs.two_rho_pair_coroot(&rs.positive_coroots()[k]) - 1;
        let len = weyl.length(weyl.reflection(k)) as i64;
        ensure_prop!(len <= bound, "ℓ(s_β) = {len} > {bound}");
        if simply_laced {
            ensure_prop!(len == bound, "simply-laced equality fails: {len} ≠ {bound}");
        }
    }
    Ok(format!(
        "ℓ(s_β) ≤ ⟨2ρ,β∨⟩-1 on all roots{}",
        if simply_laced { " (with equality)" } else { "" }
    ))
}

fn spc(weyl: &WeylGroup, opts: &VerifyOptions) -> Check {
    // is_standard_parabolic_coxeter internally cross-checks the two
    // criteria and panics on disagreement; running it is the test.
    let mut rng = SplitMix(opts.seed);
    let n = weyl.order();
    let count = n.min(opts.budget);
    for i in 0..count {
        let w = if n <= opts.budget {
            weyl.element_at(i)
        } else {
            weyl.element_at(rng.below(n))
        };
        let spc = weyl.is_standard_parabolic_coxeter(w);
        ensure_prop!(
            spc == (weyl.reflection_length(w) == weyl.length(w)),
            "criteria disagree on {}",
            weyl.format_element(w)
        );
    }
    Ok(format!("{count} elements checked"))
}

fn w0_identities(weyl: &WeylGroup, opts: &VerifyOptions) -> Check {
    let w0 = weyl.longest_element();
    let count = weyl.order().min(opts.budget);
    for i in 0..count {
        let w = weyl.element_at(i);
        ensure_prop!(
            weyl.length(weyl.multiply(w0, w)) == weyl.length(w0) - weyl.length(w),
            "ℓ(w0 w) ≠ ℓ(w0) - ℓ(w) at {}",
            weyl.format_element(w)
        );
        ensure_prop!(
            weyl.length(weyl.multiply(weyl.multiply(w0, w), w0)) == weyl.length(w),
            "ℓ(w0 w w0) ≠ ℓ(w) at {}",
            weyl.format_element(w)
        );
    }
    Ok(format!("{count} elements checked"))
}

fn bruhat(weyl: &WeylGroup, opts: &VerifyOptions) -> Check {
    // independent cover closure
    let n = weyl.order();
    let words = n.div_ceil(64);
    let mut leq = vec![0u64; n * words];
    let mut by_len: Vec<usize> = (0..n).collect();
    by_len.sort_by_key(|&w| weyl.length(weyl.element_at(w)));
    for &wi in &by_len {
        let w = weyl.element_at(wi);
        leq[wi * words + wi / 64] |= 1 << (wi % 64);
        for k in 0..weyl.root_system().num_positive_roots() {
            let t = weyl.multiply(w, weyl.reflection(k));
            if weyl.length(t) + 1 == weyl.length(w) {
                let ti = weyl.element_index(t);
                for j in 0..words {
                    let bits = leq[ti * words + j];
                    leq[wi * words + j] |= bits;
                }
            }
        }
    }
    let check_pair = |u: usize, w: usize| -> bool {
        let closure = leq[w * words + u / 64] >> (u % 64) & 1 == 1;
        weyl.bruhat_leq(weyl.element_at(u), weyl.element_at(w)) == closure
    };
    if n * n <= opts.budget {
        for u in 0..n {
            for w in 0..n {
                ensure_prop!(check_pair(u, w), "mismatch at pair ({u},{w})");
            }
        }
        Ok(format!("exhaustive over {} pairs", n * n))
    } else {
        let mut rng = SplitMix(opts.seed);
        for _ in 0..opts.budget {
            let (u, w) = (rng.below(n), rng.below(n));
            ensure_prop!(check_pair(u, w), "mismatch at pair ({u},{w})");
        }
        Ok(format!("{} sampled pairs", opts.budget))
    }
}

fn classifier_tables(weyl: &WeylGroup) -> Check {
    // standard parabolic Coxeter elements are always small-height-avoiding
    let mut spc = Vec::new();
    let mut sha = Vec::new();
    for w in weyl.elements() {
        let is_spc = weyl.is_standard_parabolic_coxeter(w);
        let is_sha = weyl.is_small_height_avoiding(w);
        ensure_prop!(
            !is_spc || is_sha,
            "standard parabolic Coxeter element {} is not small-height-avoiding",
            weyl.format_element(w)
        );
        if is_spc {
            spc.push(weyl.format_element(w));
        }
        if is_sha {
            sha.push(weyl.format_element(w));
        }
    }
    if weyl.root_system().name() == "C2" {
        spc.sort();
        sha.sort();
        let mut expect_spc = vec!["1", "12", "2", "21", "e"];
        expect_spc.sort_unstable();
        let mut expect_sha = vec!["1", "12", "2", "21", "212", "e"];
        expect_sha.sort_unstable();
        ensure_prop!(
            spc == expect_spc,
            "C2 standard parabolic Coxeter set is {spc:?}"
        );
        ensure_prop!(sha == expect_sha, "C2 small-height-avoiding set is {sha:?}");
    }
    Ok(format!(
        "{} standard parabolic Coxeter ⊆ {} small-height-avoiding",
        spc.len(),
        sha.len()
    ))
}

fn qbg_weights(qbg: &QuantumBruhatGraph, opts: &VerifyOptions) -> Check {
    // the builder already validated every pair; re-derive a sample of rows
    // with a fresh breadth-first search over the public edge lists
    let weyl = qbg.group();
    let n = weyl.order();
    let mut rng = SplitMix(opts.seed ^ 0xabc);
    let rows = if n <= 48 { n } else { 32.min(n) };
    let mut checked = 0usize;
    for _ in 0..rows {
        let src = weyl.element_at(rng.below(n));
        let mut dist = vec![u32::MAX; n];
        let mut weight: Vec<Option<Vec<i64>>> = vec![None; n];
        dist[weyl.element_index(src)] = 0;
        weight[weyl.element_index(src)] = Some(vec![0; weyl.rank()]);
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(p) = queue.pop_front() {
            let pi = weyl.element_index(p);
            for e in qbg.edges_from(p) {
                let qi = weyl.element_index(e.target);
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
                    ensure_prop!(
                        weight[qi].as_ref() == Some(&cand),
                        "weight mismatch from {} to {}",
                        weyl.format_element(src),
                        weyl.format_element(e.target)
                    );
                }
            }
        }
        for v in 0..n {
            let tv = weyl.element_at(v);
            ensure_prop!(dist[v] == qbg.distance(src, tv), "distance table mismatch");
            ensure_prop!(
                weight[v].as_ref().unwrap() == &qbg.min_path_weight(src, tv).0,
                "weight table mismatch"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} (source, target) pairs re-derived"))
}

fn path_lemmas(qbg: &QuantumBruhatGraph, opts: &VerifyOptions) -> Check {
    let weyl = qbg.group();
    let n = weyl.order();
    let w0 = weyl.longest_element();
    let pair_check = |u: usize, v: usize| -> Result<(), String> {
        let ue = weyl.element_at(u);
        let ve = weyl.element_at(v);
        let d = qbg.distance(ue, ve);
        let prod = weyl.multiply(weyl.inverse(ue), ve);
        if d > weyl.length(prod) {
            return Err(format!(
                "d_Γ({},{}) = {d} > ℓ(u⁻¹v)",
                weyl.format_element(ue),
                weyl.format_element(ve)
            ));
        }
        Ok(())
    };
    let mut pairs = 0usize;
    if n * n <= opts.budget {
        for u in 0..n {
            for v in 0..n {
                pair_check(u, v)?;
                pairs += 1;
            }
        }
    } else {
        let mut rng = SplitMix(opts.seed ^ 0x77);
        for _ in 0..opts.budget {
            pair_check(rng.below(n), rng.below(n))?;
            pairs += 1;
        }
    }
    for w in weyl.elements() {
        ensure_prop!(
            qbg.distance(w, weyl.identity()) == qbg.downward_distance(w),
            "d_Γ(w,1) ≠ d_↓(w) at {}",
            weyl.format_element(w)
        );
        ensure_prop!(
            qbg.distance(w, w0) == weyl.length(w0) - weyl.length(w),
            "d_Γ(w,w0) ≠ ℓ(w0)-ℓ(w) at {}",
            weyl.format_element(w)
        );
        for c in weyl.bruhat_covers(w) {
            ensure_prop!(
                qbg.downward_distance(w) <= qbg.downward_distance(c) + 1,
                "cover inequality fails at {}",
                weyl.format_element(w)
            );
        }
    }
    Ok(format!("{pairs} distance pairs + per-vertex lemmas"))
}

fn translation_length(affine: &AffineGroup, opts: &VerifyOptions) -> Check {
    let rs = affine.weyl().root_system();
    let grid = lambdas_with_pairings(rs, 0, 6);
    let mut rng = SplitMix(opts.seed ^ 0x31);
    let mut checked = 0;
    for _ in 0..200 {
        let lam = &grid[rng.below(grid.len())];
        let x = affine.translation(lam.clone()).map_err(|e| e.to_string())?;
        let expect = rs.two_rho_pair_coweight(lam);
        ensure_prop!(
            expect.is_integer() && affine.length(&x) as i64 == expect.to_integer(),
            "ℓ(t^λ) ≠ ⟨2ρ,λ⟩ at λ = {lam}"
        );
        checked += 1;
    }
    Ok(format!("{checked} dominant translations"))
}

fn length_formula(affine: &AffineGroup, opts: &VerifyOptions) -> Check {
    let weyl = affine.weyl();
    let rs = weyl.root_system();
    let grid: Vec<_> = lambdas_with_pairings(rs, 1, 4)
        .into_iter()
        .filter(|l| rs.is_regular_dominant(l))
        .collect();
    ensure_prop!(!grid.is_empty(), "empty regular grid");
    let n = weyl.order();
    let exhaustive = n * n * grid.len() <= opts.budget;
    let mut rng = SplitMix(opts.seed ^ 0x51);
    let count = if exhaustive { n * n * grid.len() } else { 1000 };
    for i in 0..count {
        let (lam, vi, wi) = if exhaustive {
            (&grid[i / (n * n)], (i / n) % n, i % n)
        } else {
            (&grid[rng.below(grid.len())], rng.below(n), rng.below(n))
        };
        let v = weyl.element_at(vi);
        let w = weyl.element_at(wi);
        let mu = weyl.act_on_coweight(v, lam);
        let x = affine.from_parts(mu, w).map_err(|e| e.to_string())?;
        let expect = rs.two_rho_pair_coweight(lam).to_integer()
            - weyl.length(weyl.multiply(weyl.inverse(w), v)) as i64
            + weyl.length(v) as i64;
        ensure_prop!(
            affine.length(&x) as i64 == expect,
            "length formula fails at λ={lam} v={} w={}",
            weyl.format_element(v),
            weyl.format_element(w)
        );
    }
    Ok(format!("{count} (λ,v,w) triples"))
}

fn omega(affine: &AffineGroup) -> Check {
    let rs = affine.weyl().root_system();
    let expected = match (rs.name(), rs.lattice()) {
        (_, LatticeMode::SimplyConnected) => 1,
        (name, LatticeMode::Adjoint) => match &name[..1] {
            "A" => rs.rank() + 1,
            "B" | "C" => 2,
            "D" => 4,
            _ => 1,
        },
    };
    ensure_prop!(
        affine.omega_elements().len() == expected,
        "|Ω| = {} ≠ {expected}",
        affine.omega_elements().len()
    );
    for om in affine.omega_elements() {
        ensure_prop!(affine.length(om) == 0, "length-zero element has ℓ > 0");
    }
    Ok(format!("|Ω| = {expected}, all of length 0"))
}

fn oracle_agreement(affine: &AffineGroup, qbg: &QuantumBruhatGraph) -> Check {
    let rs = affine.weyl().root_system();
    let m = default_min_pairing(rs.name());
    for shift in 0..3 {
        let fails = grid_agreement_failures(affine, qbg, m + shift, 22, Some(1));
        if let Some((lam, v, w)) = fails.first() {
            return Err(format!(
                "routes disagree at λ={lam} v={} w={}",
                affine.weyl().format_element(*v),
                affine.weyl().format_element(*w)
            ));
        }
    }
    Ok(format!("grids at thresholds {m}..={} agree", m + 2))
}

fn mazur(affine: &AffineGroup, opts: &VerifyOptions) -> Check {
    let weyl = affine.weyl();
    let rs = weyl.root_system();
    let m = default_min_pairing(rs.name());
    let grid = lambdas_with_pairings(rs, 0, m + 2);
    let n = weyl.order();
    let mut rng = SplitMix(opts.seed ^ 0x99);
    let mut checked = 0;
    let total = grid.len() * n * n;
    let sample = total > opts.budget;
    let count = if sample { 2000.min(opts.budget) } else { total };
    for i in 0..count {
        let (lam, vi, wi) = if sample {
            (&grid[rng.below(grid.len())], rng.below(n), rng.below(n))
        } else {
            (&grid[i / (n * n)], (i / n) % n, i % n)
        };
        let v = weyl.element_at(vi);
        let w = weyl.element_at(wi);
        let mu = weyl.act_on_coweight(v, lam);
        let x = affine.from_parts(mu, w).map_err(|e| e.to_string())?;
        if affine.length(&x) > 22 {
            continue;
        }
        let nu = generic_newton_bruteforce(affine, &x, 22).map_err(|e| e.to_string())?;
        ensure_prop!(
            dominance_leq(nu.coweight(), lam),
            "ν_x ≰ λ at λ={lam} v={} w={}",
            weyl.format_element(v),
            weyl.format_element(w)
        );
        checked += 1;
    }
    Ok(format!("{checked} elements within bound"))
}

fn antidominant(affine: &AffineGroup, qbg: &QuantumBruhatGraph, opts: &VerifyOptions) -> Check {
    let weyl = affine.weyl();
    let rs = weyl.root_system();
    let checker = CordialityChecker {
        lower_set_bound: 30,
        ..CordialityChecker::new(affine, qbg)
    };
    let grid = lambdas_with_pairings(rs, 0, 2);
    let mut checked = 0;
    'outer: for lam in &grid {
        for w in weyl.elements() {
            let mu = weyl.act_on_coweight(weyl.longest_element(), lam);
            let x = affine.from_parts(mu, w).map_err(|e| e.to_string())?;
            if affine.length(&x) > 30 || checked >= opts.budget {
                break 'outer;
            }
            let inv =
                SigmaClassInvariants::generic_of(affine, &x, 30).map_err(|e| e.to_string())?;
            ensure_prop!(
                inv.newton.coweight() == lam,
                "ν_x ≠ λ at λ={lam} w={}",
                weyl.format_element(w)
            );
            ensure_prop!(inv.defect == Defect::Known(0), "def(b_x) ≠ 0");
            let report = checker
                .is_cordial(&x, Method::DefinitionOracle)
                .map_err(|e| e.to_string())?;
            if report.families.antidominant {
                ensure_prop!(
                    report.verdict == Verdict::Cordial,
                    "antidominant element not cordial at λ={lam} w={}",
                    weyl.format_element(w)
                );
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} antidominant-chamber elements"))
}

fn method_agreement(affine: &AffineGroup, qbg: &QuantumBruhatGraph, opts: &VerifyOptions) -> Check {
    let weyl = affine.weyl();
    let rs = weyl.root_system();
    let checker = CordialityChecker::new(affine, qbg);
    let grid = lambdas_with_pairings(rs, checker.min_pairing, checker.min_pairing + 1);
    let n = weyl.order();
    let mut rng = SplitMix(opts.seed ^ 0x13);
    let total = grid.len() * n * n;
    let sample = total > opts.budget;
    let count = if sample { 1000 } else { total };
    let mut checked = 0;
    for i in 0..count {
        let (lam, vi, wi) = if sample {
            (&grid[rng.below(grid.len())], rng.below(n), rng.below(n))
        } else {
            (&grid[i / (n * n)], (i / n) % n, i % n)
        };
        let v = weyl.element_at(vi);
        let w = weyl.element_at(wi);
        let mu = weyl.act_on_coweight(v, lam);
        let x = affine.from_parts(mu, w).map_err(|e| e.to_string())?;
        if affine.length(&x) > checker.lower_set_bound {
            continue;
        }
        checker.is_cordial_both(&x).map_err(|e| e.to_string())?;
        checked += 1;
    }
    Ok(format!("{checked} elements, both methods"))
}

fn lower_sets(affine: &AffineGroup, opts: &VerifyOptions) -> Check {
    let weyl = affine.weyl();
    let rs = weyl.root_system();
    let mut rng = SplitMix(opts.seed ^ 0x4242);
    let grid = lambdas_with_pairings(rs, 0, 2);
    let mut checked = 0;
    for _ in 0..200 {
        let lam = &grid[rng.below(grid.len())];
        let v = weyl.element_at(rng.below(weyl.order()));
        let w = weyl.element_at(rng.below(weyl.order()));
        let mu = weyl.act_on_coweight(v, lam);
        let x = affine.from_parts(mu, w).map_err(|e| e.to_string())?;
        if affine.length(&x) > 8 {
            continue;
        }
        let by_words = affine.bruhat_lower_set(&x, 22).map_err(|e| e.to_string())?;
        let by_covers = affine.lower_set_by_covers(&x);
        ensure_prop!(
            by_words == by_covers,
            "lower-set disagreement at λ={lam} v={} w={}",
            weyl.format_element(v),
            weyl.format_element(w)
        );
        checked += 1;
    }
    Ok(format!("{checked} elements of length ≤ 8"))
}
