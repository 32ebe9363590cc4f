//! Root-system data for split semisimple types: roots, coroots, the weight
//! `2ρ`, and exact pairings.
//!
//! Conventions: roots live in the simple-root basis and coroots/coweights in
//! the simple-coroot basis, both as coefficient vectors. The Cartan matrix is
//! indexed `cartan[i][j] = ⟨α_j, α_i∨⟩`, so the symmetrizer `d` satisfies
//! `d[i] * cartan[i][j] = (α_i, α_j)`. Everything stays in integers except
//! coweights, which carry exact rationals.

use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootSystemError {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("rank {0} outside the supported range 1..=6")]
    RankOutOfRange(usize),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error(
        "Cartan matrix is not of finite type: leading principal {order}x{order} minor \
         of the symmetrized matrix is {value} (must be positive)"
    )]
    NotFiniteType { order: usize, value: i64 },
    #[error("coefficient vector has length {got}, expected {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("{0:?} is not a positive root of this system")]
    NotARoot(Vec<i64>),
    #[error(
        "operation requires an irreducible root system, but the Cartan matrix is decomposable"
    )]
    NotIrreducible,
    #[error("tuple coordinates are only defined for type A systems")]
    NotTypeA,
    #[error("tuple {0:?} does not sum to zero")]
    TupleNotTraceless(Vec<Rational64>),
}

/// Which coweight lattice `X_*(T)` the group is taken with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeMode {
    /// Coroot lattice (simply-connected group).
    #[serde(rename = "sc")]
    SimplyConnected,
    /// Coweight lattice (adjoint group).
    #[serde(rename = "adj")]
    Adjoint,
}

impl fmt::Display for LatticeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeMode::SimplyConnected => write!(f, "sc"),
            LatticeMode::Adjoint => write!(f, "adj"),
        }
    }
}

impl LatticeMode {
    pub fn parse(s: &str) -> Option<LatticeMode> {
        match s {
            "sc" => Some(LatticeMode::SimplyConnected),
            "adj" => Some(LatticeMode::Adjoint),
            _ => None,
        }
    }
}

/// A root, as integer coefficients in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

/// A coroot, as integer coefficients in the simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coroot(pub Vec<i64>);

/// A rational coweight, as exact rational coordinates in the simple-coroot
/// basis. Lattice membership is a property checked against a [`RootSystem`],
/// not of the type itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight(pub Vec<Rational64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c != 0)
    }
}

impl Coroot {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn zero(rank: usize) -> Coroot {
        Coroot(vec![0; rank])
    }

    pub fn to_coweight(&self) -> Coweight {
        Coweight(
            self.0
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        )
    }
}

impl Coweight {
    pub fn zero(rank: usize) -> Coweight {
        Coweight(vec![Rational64::zero(); rank])
    }

    pub fn from_integers(coeffs: &[i64]) -> Coweight {
        Coweight(
            coeffs
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: Rational64) -> Coweight {
        Coweight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn sub_coroot(&self, cr: &Coroot) -> Coweight {
        Coweight(
            self.0
                .iter()
                .zip(&cr.0)
                .map(|(a, b)| a - Rational64::from_integer(*b))
                .collect(),
        )
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cartan data plus the derived combinatorics fixed at construction time.
/// Immutable afterwards; safe to share across threads.
#[derive(Debug, Clone)]
pub struct RootSystem {
    name: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    positive_roots: Vec<Root>,
    positive_coroots: Vec<Coroot>,
    root_index: HashMap<Vec<i64>, usize>,
    two_rho: Vec<i64>,
    lattice: LatticeMode,
    irreducible: bool,
    type_a: bool,
}

/// Named presets. Ranks beyond these are accepted via explicit Cartan
/// matrices but are not exercised by the test suite.
pub const NAMED_TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "C2", "C3", "D4", "F4", "G2",
];

fn preset_cartan(name: &str) -> Option<Vec<Vec<i64>>> {
    let a = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    };
    match name {
        "A1" => Some(a(1)),
        "A2" => Some(a(2)),
        "A3" => Some(a(3)),
        "A4" => Some(a(4)),
        "A5" => Some(a(5)),
        // B2: alpha_2 is the short simple root.
        "B2" => Some(vec![vec![2, -1], vec![-2, 2]]),
        "B3" => Some(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]),
        // C2: alpha_1 is the short simple root.
        "C2" => Some(vec![vec![2, -2], vec![-1, 2]]),
        "C3" => Some(vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]),
        "D4" => Some(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ]),
        "F4" => Some(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -2, 2, -1],
            vec![0, 0, -1, 2],
        ]),
        // G2: alpha_1 is the short simple root.
        "G2" => Some(vec![vec![2, -3], vec![-1, 2]]),
        _ => None,
    }
}

impl RootSystem {
    /// Build a named preset.
    pub fn named(name: &str, lattice: LatticeMode) -> Result<RootSystem, RootSystemError> {
        let canon = name.to_ascii_uppercase();
        let cartan =
            preset_cartan(&canon).ok_or_else(|| RootSystemError::UnknownType(name.to_string()))?;
        Self::build(canon, cartan, lattice)
    }

    /// Build from an explicit Cartan matrix (finite type, rank ≤ 6).
    pub fn from_cartan(
        cartan: Vec<Vec<i64>>,
        lattice: LatticeMode,
    ) -> Result<RootSystem, RootSystemError> {
        Self::build("custom".to_string(), cartan, lattice)
    }

    #[allow(clippy::needless_range_loop)] // index pairs mirror the matrix notation
    fn build(
        name: String,
        cartan: Vec<Vec<i64>>,
        lattice: LatticeMode,
    ) -> Result<RootSystem, RootSystemError> {
        let rank = cartan.len();
        if rank == 0 || rank > 6 {
            return Err(RootSystemError::RankOutOfRange(rank));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(RootSystemError::InvalidCartan(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    rank
                )));
            }
            if row[i] != 2 {
                return Err(RootSystemError::InvalidCartan(format!(
                    "diagonal entry ({i},{i}) is {}, must be 2",
                    row[i]
                )));
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(RootSystemError::InvalidCartan(format!(
                            "off-diagonal entry ({i},{j}) is positive"
                        )));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(RootSystemError::InvalidCartan(format!(
                            "entries ({i},{j}) and ({j},{i}) must vanish together"
                        )));
                    }
                }
            }
        }

        let symmetrizer = compute_symmetrizer(&cartan)?;
        check_finite_type(&cartan, &symmetrizer)?;

        let positive_roots = generate_positive_roots(&cartan);
        let mut root_index = HashMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            root_index.insert(r.0.clone(), k);
        }
        let positive_coroots = positive_roots
            .iter()
            .map(|r| coroot_from_root(&cartan, &symmetrizer, r))
            .collect::<Vec<_>>();

        let mut two_rho = vec![0i64; rank];
        for r in &positive_roots {
            for (t, c) in two_rho.iter_mut().zip(&r.0) {
                *t += c;
            }
        }

        let irreducible = is_connected(&cartan);
        let type_a = (1..rank).all(|i| cartan[i - 1][i] == -1 && cartan[i][i - 1] == -1)
            && (0..rank).all(|i| (0..rank).all(|j| i.abs_diff(j) <= 1 || cartan[i][j] == 0));

        Ok(RootSystem {
            name,
            rank,
            cartan,
            symmetrizer,
            positive_roots,
            positive_coroots,
            root_index,
            two_rho,
            lattice,
            irreducible,
            type_a,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `cartan[i][j] = ⟨α_j, α_i∨⟩`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn lattice(&self) -> LatticeMode {
        self.lattice
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn is_type_a(&self) -> bool {
        self.type_a
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Positive roots, graded by height then lexicographic. The ordering is
    /// part of the JSON contract.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Coroot] {
        &self.positive_coroots
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0i64; self.rank];
        v[i] = 1;
        Root(v)
    }

    pub fn simple_coroot(&self, i: usize) -> Coroot {
        let mut v = vec![0i64; self.rank];
        v[i] = 1;
        Coroot(v)
    }

    /// Index of a positive root in the canonical ordering.
    pub fn root_index(&self, root: &Root) -> Option<usize> {
        self.root_index.get(&root.0).copied()
    }

    /// The highest root (unique for irreducible systems).
    pub fn highest_root_index(&self) -> Result<usize, RootSystemError> {
        if !self.irreducible {
            return Err(RootSystemError::NotIrreducible);
        }
        Ok(self.positive_roots.len() - 1)
    }

    /// `α∨ = 2α/(α,α)` in simple-coroot coordinates.
    pub fn coroot_of_root(&self, root: &Root) -> Result<Coroot, RootSystemError> {
        let k = self
            .root_index(root)
            .ok_or_else(|| RootSystemError::NotARoot(root.0.clone()))?;
        Ok(self.positive_coroots[k].clone())
    }

    /// `⟨β, μ⟩` for a root `β` and rational coweight `μ`.
    pub fn pair_root_coweight(&self, root: &Root, cw: &Coweight) -> Rational64 {
        assert_eq!(root.0.len(), self.rank, "root rank mismatch");
        assert_eq!(cw.0.len(), self.rank, "coweight rank mismatch");
        let mut acc = Rational64::zero();
        for (i, m) in cw.0.iter().enumerate() {
            let mut row = 0i64;
            for (j, b) in root.0.iter().enumerate() {
                row += b * self.cartan[i][j];
            }
            acc += m * Rational64::from_integer(row);
        }
        acc
    }

    /// `⟨β, γ∨⟩` for a root `β` and coroot `γ∨`; always an integer.
    pub fn pair_root_coroot(&self, root: &Root, cr: &Coroot) -> i64 {
        assert_eq!(root.0.len(), self.rank, "root rank mismatch");
        assert_eq!(cr.0.len(), self.rank, "coroot rank mismatch");
        let mut acc = 0i64;
        for (i, &m) in cr.0.iter().enumerate() {
            for (j, &b) in root.0.iter().enumerate() {
                acc += m * b * self.cartan[i][j];
            }
        }
        acc
    }

    /// `⟨α_i, μ⟩` for the i-th simple root.
    pub fn pair_simple_coweight(&self, i: usize, cw: &Coweight) -> Rational64 {
        let mut acc = Rational64::zero();
        for (k, m) in cw.0.iter().enumerate() {
            acc += m * Rational64::from_integer(self.cartan[k][i]);
        }
        acc
    }

    /// `⟨2ρ, μ⟩` where `2ρ` is the sum of the positive roots.
    pub fn two_rho_pair_coweight(&self, cw: &Coweight) -> Rational64 {
        self.pair_root_coweight(&Root(self.two_rho.clone()), cw)
    }

    /// `⟨2ρ, γ∨⟩`; equals twice the height of `γ∨`.
    pub fn two_rho_pair_coroot(&self, cr: &Coroot) -> i64 {
        self.pair_root_coroot(&Root(self.two_rho.clone()), cr)
    }

    /// `2ρ` in simple-root coordinates.
    pub fn two_rho(&self) -> Root {
        Root(self.two_rho.clone())
    }

    pub fn is_dominant(&self, cw: &Coweight) -> bool {
        (0..self.rank).all(|i| !self.pair_simple_coweight(i, cw).is_negative())
    }

    /// `⟨α_i, μ⟩ > 0` for every simple root.
    pub fn is_regular_dominant(&self, cw: &Coweight) -> bool {
        (0..self.rank).all(|i| self.pair_simple_coweight(i, cw).is_positive())
    }

    /// Smallest pairing `⟨α_i, μ⟩` over the simple roots.
    pub fn min_simple_pairing(&self, cw: &Coweight) -> Rational64 {
        (0..self.rank)
            .map(|i| self.pair_simple_coweight(i, cw))
            .min()
            .expect("rank is positive")
    }

    /// Reflection `s_i` applied to a root vector.
    pub fn simple_reflect_root(&self, i: usize, root: &Root) -> Root {
        let mut pairing = 0i64;
        for (j, &b) in root.0.iter().enumerate() {
            pairing += b * self.cartan[i][j];
        }
        let mut out = root.0.clone();
        out[i] -= pairing;
        Root(out)
    }

    /// Reflection `s_i` applied to a coweight.
    pub fn simple_reflect_coweight(&self, i: usize, cw: &Coweight) -> Coweight {
        let pairing = self.pair_simple_coweight(i, cw);
        let mut out = cw.0.clone();
        out[i] -= pairing;
        Coweight(out)
    }

    /// Dominant representative of the Weyl orbit of `μ`, together with the
    /// sequence of simple reflections applied (so `μ = s_{i_1}…s_{i_k}(λ)`).
    pub fn dominantize(&self, cw: &Coweight) -> (Coweight, Vec<usize>) {
        let mut cur = cw.clone();
        let mut letters = Vec::new();
        'sweep: loop {
            for i in 0..self.rank {
                if self.pair_simple_coweight(i, &cur).is_negative() {
                    cur = self.simple_reflect_coweight(i, &cur);
                    letters.push(i);
                    continue 'sweep;
                }
            }
            break;
        }
        (cur, letters)
    }

    /// Membership in the configured coweight lattice: integer coroot
    /// coordinates for `sc`, integral pairings with all simple roots for
    /// `adj`.
    pub fn in_lattice(&self, cw: &Coweight) -> bool {
        match self.lattice {
            LatticeMode::SimplyConnected => cw.is_integral(),
            LatticeMode::Adjoint => {
                (0..self.rank).all(|i| self.pair_simple_coweight(i, cw).is_integer())
            }
        }
    }

    /// Coordinates of `μ` in the lattice basis: coroot coefficients for
    /// `sc`, fundamental-coweight coefficients (= simple-root pairings) for
    /// `adj`. Errors if `μ` is not a lattice point.
    pub fn lattice_coords(&self, cw: &Coweight) -> Option<Vec<i64>> {
        if !self.in_lattice(cw) {
            return None;
        }
        match self.lattice {
            LatticeMode::SimplyConnected => Some(cw.0.iter().map(|c| c.to_integer()).collect()),
            LatticeMode::Adjoint => Some(
                (0..self.rank)
                    .map(|i| self.pair_simple_coweight(i, cw).to_integer())
                    .collect(),
            ),
        }
    }

    /// Inverse of [`lattice_coords`](Self::lattice_coords).
    pub fn coweight_from_lattice_coords(
        &self,
        coords: &[i64],
    ) -> Result<Coweight, RootSystemError> {
        if coords.len() != self.rank {
            return Err(RootSystemError::DimensionMismatch {
                got: coords.len(),
                want: self.rank,
            });
        }
        match self.lattice {
            LatticeMode::SimplyConnected => Ok(Coweight::from_integers(coords)),
            LatticeMode::Adjoint => {
                // Solve sum_k c_k cartan[k][i] = coords[i] for the coroot
                // coordinates c. The Cartan matrix is invertible over Q.
                let rhs: Vec<Rational64> = coords
                    .iter()
                    .map(|&x| Rational64::from_integer(x))
                    .collect();
                let sol = solve_transposed_cartan(&self.cartan, &rhs);
                Ok(Coweight(sol))
            }
        }
    }

    /// Fundamental coweights `ω_i∨` in coroot coordinates (`⟨α_j, ω_i∨⟩ = δ_ij`).
    pub fn fundamental_coweights(&self) -> Vec<Coweight> {
        (0..self.rank)
            .map(|i| {
                let mut rhs = vec![Rational64::zero(); self.rank];
                rhs[i] = Rational64::from_integer(1);
                Coweight(solve_transposed_cartan(&self.cartan, &rhs))
            })
            .collect()
    }

    /// Type A tuple coordinates: `μ = Σ c_j α_j∨` maps to the `(rank+1)`-tuple
    /// with entries `c_1, c_2-c_1, …, -c_rank` (sums to zero).
    pub fn coweight_to_tuple(&self, cw: &Coweight) -> Result<Vec<Rational64>, RootSystemError> {
        if !self.type_a {
            return Err(RootSystemError::NotTypeA);
        }
        let mut tuple = Vec::with_capacity(self.rank + 1);
        let mut prev = Rational64::zero();
        for c in &cw.0 {
            tuple.push(c - prev);
            prev = *c;
        }
        tuple.push(-prev);
        Ok(tuple)
    }

    pub fn coweight_from_tuple(&self, tuple: &[Rational64]) -> Result<Coweight, RootSystemError> {
        if !self.type_a {
            return Err(RootSystemError::NotTypeA);
        }
        if tuple.len() != self.rank + 1 {
            return Err(RootSystemError::DimensionMismatch {
                got: tuple.len(),
                want: self.rank + 1,
            });
        }
        let sum: Rational64 = tuple.iter().sum();
        if !sum.is_zero() {
            return Err(RootSystemError::TupleNotTraceless(tuple.to_vec()));
        }
        let mut coords = Vec::with_capacity(self.rank);
        let mut acc = Rational64::zero();
        for t in &tuple[..self.rank] {
            acc += t;
            coords.push(acc);
        }
        Ok(Coweight(coords))
    }

    /// JSON form: `{"type", "cartan", "positive_roots", "symmetrizer", "lattice"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.name,
            "cartan": self.cartan,
            "positive_roots": self.positive_roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
            "symmetrizer": self.symmetrizer,
            "lattice": self.lattice.to_string(),
        })
    }
}

fn compute_symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<i64>, RootSystemError> {
    let rank = cartan.len();
    // Propagate d_j = d_i * a_ij / a_ji along edges of the Dynkin graph.
    let mut d = vec![Rational64::zero(); rank];
    let mut seen = vec![false; rank];
    for start in 0..rank {
        if seen[start] {
            continue;
        }
        d[start] = Rational64::from_integer(1);
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..rank {
                if i != j && cartan[i][j] != 0 && !seen[j] {
                    d[j] = d[i] * Rational64::new(cartan[i][j], cartan[j][i]);
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    // Clear denominators per the whole matrix and verify symmetry.
    let lcm = d.iter().map(|x| *x.denom()).fold(1i64, num_integer_lcm);
    let mut out: Vec<i64> = d
        .iter()
        .map(|x| (x * Rational64::from_integer(lcm)).to_integer())
        .collect();
    let gcd = out.iter().fold(0i64, |g, &x| num_integer_gcd(g, x));
    if gcd > 1 {
        for x in &mut out {
            *x /= gcd;
        }
    }
    for i in 0..rank {
        for j in 0..rank {
            if out[i] * cartan[i][j] != out[j] * cartan[j][i] {
                return Err(RootSystemError::InvalidCartan(
                    "matrix is not symmetrizable".to_string(),
                ));
            }
        }
    }
    Ok(out)
}

fn num_integer_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / num_integer_gcd(a, b) * b
}

/// Finite type iff the symmetrized matrix is positive definite; checked by
/// exact leading principal minors.
fn check_finite_type(cartan: &[Vec<i64>], d: &[i64]) -> Result<(), RootSystemError> {
    let rank = cartan.len();
    for order in 1..=rank {
        let mut m: Vec<Vec<i64>> = (0..order)
            .map(|i| (0..order).map(|j| d[i] * cartan[i][j]).collect())
            .collect();
        let value = int_determinant(&mut m);
        if value <= 0 {
            return Err(RootSystemError::NotFiniteType { order, value });
        }
    }
    Ok(())
}

/// Bareiss fraction-free determinant; exact for the tiny matrices used here.
fn int_determinant(m: &mut [Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn is_connected(cartan: &[Vec<i64>]) -> bool {
    let rank = cartan.len();
    let mut seen = vec![false; rank];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..rank {
            if i != j && cartan[i][j] != 0 && !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == rank
}

/// Close the simple roots under simple reflections; sort by height then lex.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let rank = cartan.len();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        seen.insert(v.clone(), ());
        queue.push(v);
    }
    while let Some(v) = queue.pop() {
        for i in 0..rank {
            let mut pairing = 0i64;
            for (j, &b) in v.iter().enumerate() {
                pairing += b * cartan[i][j];
            }
            let mut img = v.clone();
            img[i] -= pairing;
            if img.iter().all(|&c| c >= 0) && !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                queue.push(img);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_keys().map(Root).collect();
    // Graded by height; within a height, descending coefficient order so the
    // simple roots come out as α1, α2, … . This ordering is part of the JSON
    // contract.
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    roots
}

fn coroot_from_root(cartan: &[Vec<i64>], d: &[i64], root: &Root) -> Coroot {
    // (β,β)/2 in the normalization (α_i,α_j) = d_i a_ij.
    let mut norm2 = 0i64;
    for (i, &bi) in root.0.iter().enumerate() {
        for (j, &bj) in root.0.iter().enumerate() {
            norm2 += bi * bj * d[i] * cartan[i][j];
        }
    }
    debug_assert!(norm2 > 0 && norm2 % 2 == 0);
    let d_beta = norm2 / 2;
    let coeffs: Vec<i64> = root
        .0
        .iter()
        .enumerate()
        .map(|(j, &bj)| {
            let num = bj * d[j];
            debug_assert_eq!(num % d_beta, 0, "coroot coefficients must be integral");
            num / d_beta
        })
        .collect();
    Coroot(coeffs)
}

/// Solve `Aᵀ x = rhs` for the (invertible) Cartan matrix by exact Gaussian
/// elimination.
#[allow(clippy::needless_range_loop)]
fn solve_transposed_cartan(cartan: &[Vec<i64>], rhs: &[Rational64]) -> Vec<Rational64> {
    let n = cartan.len();
    let mut m: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational64> = (0..n)
                .map(|j| Rational64::from_integer(cartan[j][i]))
                .collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        m.swap(col, pivot);
        let p = m[col][col];
        for j in col..=n {
            m[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in col..=n {
                    let sub = f * m[col][j];
                    m[r][j] -= sub;
                }
            }
        }
    }
    (0..n).map(|i| m[i][n]).collect()
}
