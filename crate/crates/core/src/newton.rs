//! Newton points of affine Weyl group elements, dominance order, the two
//! routes to the generic Newton point of a double coset (brute force over
//! the Bruhat lower set, and the quantum-Bruhat-graph formula `ν_x = λ -
//! α∨_x` valid for superregular `λ`), the defect, virtual dimension, the
//! generic fiber dimension, and maximal chain lengths between invariant
//! classes.
//!
//! The two routes are independent implementations and double as each
//! other's oracle; their agreement on superregular grids is the central
//! correctness property of the crate.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Signed;
use thiserror::Error;

use crate::affine::{AffineElement, AffineError, AffineGroup};
use crate::qbg::QuantumBruhatGraph;
use crate::rootsys::{Coweight, RootSystem, RootSystemError};

#[derive(Debug, Error)]
pub enum NewtonError {
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error(
        "superregularity violated: ⟨α_{index}, λ⟩ = {pairing} < {required} \
         (pass a lower threshold or force to override; results are then unguaranteed)"
    )]
    NotSuperregular {
        index: usize,
        pairing: Rational64,
        required: i64,
    },
    #[error("graph formula produced the non-dominant coweight {0}; λ is too close to a wall")]
    FormulaNotDominant(String),
    #[error("no unique dominance-maximal Newton point among lower-set candidates; this is a bug")]
    NoUniqueMaximum,
    #[error("defect is indeterminate for this Newton point")]
    IndeterminateDefect,
    #[error("Newton points {0} and {1} are incomparable in dominance order")]
    Incomparable(String, String),
    #[error("dimension ℓ(x) - ⟨2ρ, ν⟩ = {0} is not a nonnegative integer; this is a bug")]
    BadDimension(Rational64),
}

/// A dominant rational coweight classifying a σ-conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonPoint(Coweight);

impl NewtonPoint {
    /// Wraps a coweight that is already dominant; panics otherwise (callers
    /// dominantize first).
    pub fn new(rs: &RootSystem, cw: Coweight) -> NewtonPoint {
        assert!(rs.is_dominant(&cw), "Newton points are dominant");
        NewtonPoint(cw)
    }

    pub fn coweight(&self) -> &Coweight {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integral()
    }

    /// Entries as `"p/q"` strings (`"p"` when integral), the CLI wire form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                 .0
                .iter()
                .map(|c| serde_json::Value::String(ratio_string(c)))
                .collect(),
        )
    }
}

pub fn ratio_string(c: &Rational64) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl std::fmt::Display for NewtonPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0 .0.iter().map(ratio_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `ν ≤ ν'` iff `ν' - ν` is a nonnegative rational combination of simple
/// coroots, read off coefficientwise in the simple-coroot basis.
pub fn dominance_leq(a: &Coweight, b: &Coweight) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| !(y - x).is_negative())
}

/// Newton point of `y = t^μ u`: the dominant representative of the average
/// of `μ` over the cyclic group generated by `u`. Equivalently `y^n` is the
/// pure translation by `n` times that average.
pub fn newton_point(g: &AffineGroup, y: &AffineElement) -> NewtonPoint {
    let weyl = g.weyl();
    let rs = weyl.root_system();
    let n = weyl.element_order(y.finite);
    let mut acc = y.translation.clone();
    let mut cur = y.translation.clone();
    for _ in 1..n {
        cur = weyl.act_on_coweight(y.finite, &cur);
        acc = acc.add(&cur);
    }
    let avg = acc.scale(Rational64::new(1, n as i64));
    let (dom, _) = rs.dominantize(&avg);
    NewtonPoint(dom)
}

/// `ν_x = max{ν(y) : y ≤ x}` by enumerating the Bruhat lower set. The
/// maximum is verified to dominate every candidate; a set of pairwise
/// incomparable maxima is a hard error.
pub fn generic_newton_bruteforce(
    g: &AffineGroup,
    x: &AffineElement,
    bound: u32,
) -> Result<NewtonPoint, NewtonError> {
    let lower = g.bruhat_lower_set(x, bound)?;
    let candidates: BTreeSet<Coweight> = lower.iter().map(|y| newton_point(g, y).0).collect();
    let mut maxima: Vec<Coweight> = Vec::new();
    for nu in candidates {
        if maxima.iter().any(|m| dominance_leq(&nu, m)) {
            continue;
        }
        maxima.retain(|m| !dominance_leq(m, &nu));
        maxima.push(nu);
    }
    if maxima.len() != 1 {
        return Err(NewtonError::NoUniqueMaximum);
    }
    Ok(NewtonPoint(maxima.pop().expect("checked length")))
}

/// The closed formula `ν_x = λ - wt(w⁻¹v → v)` where `x = t^{vλ}w` and the
/// weight is taken along any minimal path in the quantum Bruhat graph.
/// Requires `⟨α_i, λ⟩ ≥ min_pairing` for every simple root; `force` skips
/// that check but the result is still required to be dominant.
pub fn generic_newton_qbg(
    g: &AffineGroup,
    qbg: &QuantumBruhatGraph,
    x: &AffineElement,
    min_pairing: i64,
    force: bool,
) -> Result<NewtonPoint, NewtonError> {
    let weyl = g.weyl();
    let rs = weyl.root_system();
    let d = g.decompose_dominant(x);
    if !force {
        for i in 0..rs.rank() {
            let p = rs.pair_simple_coweight(i, &d.lambda);
            if p < Rational64::from_integer(min_pairing) {
                return Err(NewtonError::NotSuperregular {
                    index: i + 1,
                    pairing: p,
                    required: min_pairing,
                });
            }
        }
    }
    let from = weyl.multiply(weyl.inverse(d.w), d.v);
    let weight = qbg.min_path_weight(from, d.v);
    let nu = d.lambda.sub_coroot(&weight);
    if !rs.is_dominant(&nu) {
        return Err(NewtonError::FormulaNotDominant(nu.to_string()));
    }
    Ok(NewtonPoint(nu))
}

/// Defect of a σ-conjugacy class with the given Newton point, for a split
/// group: zero when `ν` is integral; computed through the slope
/// decomposition in type A; indeterminate otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Defect {
    Known(u32),
    Indeterminate,
}

impl std::fmt::Display for Defect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Defect::Known(d) => write!(f, "{d}"),
            Defect::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Defect from the Newton point of a class with trivial Kottwitz invariant
/// (always the case on the simply-connected lattice).
pub fn defect(rs: &RootSystem, nu: &NewtonPoint) -> Defect {
    defect_with_kottwitz(rs, &vec![Rational64::from_integer(0); rs.rank()], nu)
}

/// Defect of the class with the given invariants. Zero whenever the class
/// is that of an integral translation `t^ν` (the Kottwitz point then equals
/// the class of `ν`); in type A, computed through the slope decomposition
/// of the lift determined by the Kottwitz point; indeterminate otherwise.
pub fn defect_with_kottwitz(rs: &RootSystem, kottwitz: &[Rational64], nu: &NewtonPoint) -> Defect {
    let nu_frac: Vec<Rational64> = nu.coweight().0.iter().map(|c| c - c.floor()).collect();
    if rs.in_lattice(nu.coweight()) && nu_frac == kottwitz {
        return Defect::Known(0);
    }
    if !rs.is_type_a() {
        return Defect::Indeterminate;
    }
    let n1 = rs.rank() as i64 + 1; // number of tuple entries
                                   // Kottwitz class index k ∈ Z/(n+1): every tuple entry of a lattice
                                   // point in the class is ≡ -k/(n+1) mod 1.
    let kappa_rep = Coweight(kottwitz.to_vec());
    let Ok(kappa_tuple) = rs.coweight_to_tuple(&kappa_rep) else {
        return Defect::Indeterminate;
    };
    let k = {
        let t1 = kappa_tuple[0];
        let scaled = t1 * Rational64::from_integer(n1);
        if !scaled.is_integer() {
            return Defect::Indeterminate;
        }
        (-scaled.to_integer()).rem_euclid(n1)
    };
    let shift = Rational64::new(k, n1);
    let tuple: Vec<Rational64> = rs
        .coweight_to_tuple(nu.coweight())
        .expect("type A tuple conversion")
        .into_iter()
        .map(|t| t + shift)
        .collect();
    // Group equal slopes; a slope p/q in lowest terms occupying m·q entries
    // contributes m(q-1).
    let mut total = 0u32;
    let mut i = 0;
    while i < tuple.len() {
        let mut j = i;
        while j < tuple.len() && tuple[j] == tuple[i] {
            j += 1;
        }
        let count = (j - i) as i64;
        let q = *tuple[i].denom();
        if count % q != 0 {
            // not a valid slope decomposition; cannot classify
            return Defect::Indeterminate;
        }
        total += ((count / q) * (q - 1)) as u32;
        i = j;
    }
    Defect::Known(total)
}

/// The two classifying invariants of a σ-conjugacy class, plus its defect.
#[derive(Debug, Clone)]
pub struct SigmaClassInvariants {
    pub newton: NewtonPoint,
    /// Class of the translation part in `X_*` mod the coroot lattice, as
    /// fractional parts; the zero vector for simply-connected lattices.
    pub kottwitz: Vec<Rational64>,
    pub defect: Defect,
}

impl SigmaClassInvariants {
    /// Invariants of the class of a single element `y`.
    pub fn of_element(g: &AffineGroup, y: &AffineElement) -> SigmaClassInvariants {
        let newton = newton_point(g, y);
        let kottwitz = g.kottwitz(y);
        let defect = defect_with_kottwitz(g.weyl().root_system(), &kottwitz, &newton);
        SigmaClassInvariants {
            newton,
            kottwitz,
            defect,
        }
    }

    /// Invariants of the generic class of `IxI`, with `ν_x` computed by the
    /// brute-force oracle.
    pub fn generic_of(
        g: &AffineGroup,
        x: &AffineElement,
        bound: u32,
    ) -> Result<SigmaClassInvariants, NewtonError> {
        let newton = generic_newton_bruteforce(g, x, bound)?;
        let kottwitz = g.kottwitz(x);
        let defect = defect_with_kottwitz(g.weyl().root_system(), &kottwitz, &newton);
        Ok(SigmaClassInvariants {
            newton,
            kottwitz,
            defect,
        })
    }

    /// From explicitly supplied parts (defect derived from the Newton
    /// point). No compatibility normalization is applied; consumers flag
    /// Kottwitz mismatches instead.
    pub fn from_parts(
        rs: &RootSystem,
        newton: NewtonPoint,
        kottwitz: Vec<Rational64>,
    ) -> SigmaClassInvariants {
        let defect = defect_with_kottwitz(rs, &kottwitz, &newton);
        SigmaClassInvariants {
            newton,
            kottwitz,
            defect,
        }
    }
}

/// Virtual dimension `d_x(b) = ½(ℓ(x) + ℓ(η(x)) - def(b) - ⟨2ρ, ν(b)⟩)`.
/// The value is exact; `kottwitz_matches` records whether the supplied
/// class has the Kottwitz point of `x` (the formula presumes it does).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualDimension {
    pub value: Rational64,
    pub kottwitz_matches: bool,
}

pub fn virtual_dimension(
    g: &AffineGroup,
    x: &AffineElement,
    class: &SigmaClassInvariants,
) -> Result<VirtualDimension, NewtonError> {
    let Defect::Known(def) = class.defect else {
        return Err(NewtonError::IndeterminateDefect);
    };
    let rs = g.weyl().root_system();
    let lx = g.length(x) as i64;
    let leta = g.weyl().length(g.eta(x)) as i64;
    let two_rho = rs.two_rho_pair_coweight(class.newton.coweight());
    let value =
        (Rational64::from_integer(lx + leta - def as i64) - two_rho) * Rational64::new(1, 2);
    Ok(VirtualDimension {
        value,
        kottwitz_matches: class.kottwitz == g.kottwitz(x),
    })
}

/// `dim X_x(b_x) = ℓ(x) - ⟨2ρ, ν_x⟩`, a nonnegative integer.
pub fn generic_adlv_dimension(
    g: &AffineGroup,
    x: &AffineElement,
    nu_x: &NewtonPoint,
) -> Result<i64, NewtonError> {
    let rs = g.weyl().root_system();
    let val =
        Rational64::from_integer(g.length(x) as i64) - rs.two_rho_pair_coweight(nu_x.coweight());
    if !val.is_integer() || val.is_negative() {
        return Err(NewtonError::BadDimension(val));
    }
    Ok(val.to_integer())
}

/// Length of every maximal chain from `[b']` up to the generic class
/// `[b_x]`: `½(def(b') - def(b_x) + ⟨2ρ, ν_x - ν(b')⟩)`.
pub fn chain_length_to_generic(
    g: &AffineGroup,
    class: &SigmaClassInvariants,
    x: &AffineElement,
    bound: u32,
) -> Result<Rational64, NewtonError> {
    let generic = SigmaClassInvariants::generic_of(g, x, bound)?;
    let (Defect::Known(def_b), Defect::Known(def_x)) = (class.defect, generic.defect) else {
        return Err(NewtonError::IndeterminateDefect);
    };
    if !dominance_leq(class.newton.coweight(), generic.newton.coweight()) {
        return Err(NewtonError::Incomparable(
            class.newton.to_string(),
            generic.newton.to_string(),
        ));
    }
    let rs = g.weyl().root_system();
    let diff = generic.newton.coweight().sub(class.newton.coweight());
    let span = rs.two_rho_pair_coweight(&diff);
    Ok((Rational64::from_integer(def_b as i64 - def_x as i64) + span) * Rational64::new(1, 2))
}

/// All lattice coweights whose simple-root pairings each lie in
/// `[lo, hi]`. This is the λ grid used by the superregular sweeps.
pub fn lambdas_with_pairings(rs: &RootSystem, lo: i64, hi: i64) -> Vec<Coweight> {
    let rank = rs.rank();
    let fund = rs.fundamental_coweights();
    let mut out = Vec::new();
    let mut pairings = vec![lo; rank];
    loop {
        let mut lambda = Coweight::zero(rank);
        for (i, &p) in pairings.iter().enumerate() {
            lambda = lambda.add(&fund[i].scale(Rational64::from_integer(p)));
        }
        if rs.in_lattice(&lambda) {
            out.push(lambda);
        }
        // odometer over the pairing box
        let mut i = 0;
        loop {
            if i == rank {
                out.sort();
                return out;
            }
            pairings[i] += 1;
            if pairings[i] <= hi {
                break;
            }
            pairings[i] = lo;
            i += 1;
        }
    }
}

/// Smallest inclusive threshold `m ≤ max_m` such that the two generic
/// Newton point routes agree for every `(v, w)` and every λ with all simple
/// pairings in `[m', m'+2]` for `m' ∈ {m, m+1, m+2}`, restricted to
/// elements within the lower-set length bound. Returns `None` when no
/// threshold in range stabilizes.
pub fn stabilized_min_pairing(
    g: &AffineGroup,
    qbg: &QuantumBruhatGraph,
    length_bound: u32,
    max_m: i64,
) -> Option<i64> {
    let agrees =
        |m: i64| -> bool { grid_agreement_failures(g, qbg, m, length_bound, Some(1)).is_empty() };
    (1..=max_m).find(|&m| agrees(m) && agrees(m + 1) && agrees(m + 2))
}

/// All `(λ, v, w)` triples with pairings of λ in `[m, m+2]` and
/// `ℓ(t^{vλ}w)` within the bound on which the quantum-Bruhat-graph formula
/// (threshold `m`) disagrees with the brute-force oracle. Stops early after
/// `limit` failures when given.
pub fn grid_agreement_failures(
    g: &AffineGroup,
    qbg: &QuantumBruhatGraph,
    m: i64,
    length_bound: u32,
    limit: Option<usize>,
) -> Vec<(Coweight, crate::weyl::WeylElement, crate::weyl::WeylElement)> {
    let weyl = g.weyl();
    let rs = weyl.root_system();
    let mut failures = Vec::new();
    'outer: for lambda in lambdas_with_pairings(rs, m, m + 2) {
        for v in weyl.elements() {
            let mu = weyl.act_on_coweight(v, &lambda);
            for w in weyl.elements() {
                let x = AffineElement {
                    translation: mu.clone(),
                    finite: w,
                };
                if g.length(&x) > length_bound {
                    continue;
                }
                let by_graph = generic_newton_qbg(g, qbg, &x, m, false);
                let by_oracle = generic_newton_bruteforce(g, &x, length_bound);
                let ok = matches!((&by_graph, &by_oracle), (Ok(a), Ok(b)) if a == b);
                if !ok {
                    failures.push((lambda.clone(), v, w));
                    if limit.is_some_and(|l| failures.len() >= l) {
                        break 'outer;
                    }
                }
            }
        }
    }
    failures
}

/// Default inclusive superregularity thresholds, per named type: the
/// smallest value at which the agreement sweep of
/// [`stabilized_min_pairing`] stabilizes under the default length bound.
/// Regenerated and asserted by the verification suite.
pub fn default_min_pairing(type_name: &str) -> i64 {
    match type_name {
        "A1" => 1,
        "A2" => 2,
        "A3" => 2,
        "B2" | "C2" => 2,
        "G2" => 2,
        _ => 2,
    }
}

/// Default cap for Bruhat lower-set enumeration.
pub const DEFAULT_LOWER_SET_BOUND: u32 = 22;
