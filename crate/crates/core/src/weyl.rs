//! Finite Weyl group kernel: full enumeration with canonical forms, length,
//! reduced words, Bruhat order, reflection length, factor containment, and
//! the classifier predicates (standard parabolic Coxeter,
//! small-height-avoiding).
//!
//! Elements are canonically represented by their action on the root lattice.
//! The whole group is enumerated once at construction; every operation after
//! that is a table lookup. Groups in scope have at most 1152 elements (F4),
//! so the quadratic tables stay small.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

use crate::rootsys::{Coweight, Root, RootSystem};

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("malformed word `{0}`: expected digits 1..={1} or `e`")]
    BadWord(String, usize),
    #[error("letter {0} out of range 1..={1}")]
    LetterOutOfRange(u8, usize),
}

/// Handle to an element of a specific [`WeylGroup`]. Using a handle with a
/// different group panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    group: u32,
    pub(crate) idx: u32,
}

static GROUP_SERIAL: AtomicU32 = AtomicU32::new(0);

/// Fully enumerated finite Weyl group. Immutable after construction.
#[derive(Debug)]
pub struct WeylGroup {
    serial: u32,
    root_system: RootSystem,
    rank: usize,
    size: usize,
    /// Per element, the matrix of its action in the simple-root basis;
    /// column `j` holds the coefficients of `w(α_j)`. Row-major, flattened.
    root_mats: Vec<i64>,
    /// Same, in the simple-coroot basis.
    coroot_mats: Vec<i64>,
    lengths: Vec<u32>,
    /// Right multiplication by simple reflections: `rmul[w*rank + i] = w·s_i`.
    rmul: Vec<u32>,
    /// Full multiplication table, `mult[u*size + w] = u·w`.
    mult: Vec<u32>,
    inv: Vec<u32>,
    /// Right/left descent bitmasks (bit `i` = descent at `s_{i+1}`).
    rdesc: Vec<u8>,
    ldesc: Vec<u8>,
    /// Canonical reduced words, 1-based letters, greedy smallest right
    /// descent.
    words: Vec<Vec<u8>>,
    simple_ids: Vec<u32>,
    longest: u32,
    /// Reflection element per positive root (the bijection Φ⁺ ↔ R).
    reflection_ids: Vec<u32>,
    /// Inverse of the bijection: positive-root index of an element if it is
    /// a reflection.
    reflection_root: Vec<Option<u32>>,
    refl_len: Vec<u32>,
    /// Indices of non-simple positive roots β with ℓ(s_β) = ⟨2ρ, β∨⟩ - 1.
    small_height_roots: Vec<usize>,
}

fn mat_mul(rank: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; rank * rank];
    for i in 0..rank {
        for k in 0..rank {
            let aik = a[i * rank + k];
            if aik == 0 {
                continue;
            }
            for j in 0..rank {
                c[i * rank + j] += aik * b[k * rank + j];
            }
        }
    }
    c
}

fn identity_mat(rank: usize) -> Vec<i64> {
    let mut m = vec![0i64; rank * rank];
    for i in 0..rank {
        m[i * rank + i] = 1;
    }
    m
}

impl WeylGroup {
    pub fn new(root_system: RootSystem) -> WeylGroup {
        let rank = root_system.rank();
        let cartan = root_system.cartan();

        // Generator matrices: s_i(α_j) = α_j - cartan[i][j] α_i on roots,
        // s_i(α_j∨) = α_j∨ - cartan[j][i] α_i∨ on coroots.
        let mut gen_root = Vec::with_capacity(rank);
        let mut gen_coroot = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut mr = identity_mat(rank);
            let mut mc = identity_mat(rank);
            for j in 0..rank {
                mr[i * rank + j] -= cartan[i][j];
                mc[i * rank + j] -= cartan[j][i];
            }
            gen_root.push(mr);
            gen_coroot.push(mc);
        }

        // Breadth-first closure from the identity; depth equals Coxeter
        // length because the generators are the simple reflections.
        let mut mats: Vec<(Vec<i64>, Vec<i64>, u32)> =
            vec![(identity_mat(rank), identity_mat(rank), 0)];
        let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
        index.insert(mats[0].0.clone(), 0);
        let mut head = 0usize;
        while head < mats.len() {
            let (mr, mc, depth) = (mats[head].0.clone(), mats[head].1.clone(), mats[head].2);
            head += 1;
            for i in 0..rank {
                let nr = mat_mul(rank, &mr, &gen_root[i]);
                if !index.contains_key(&nr) {
                    let nc = mat_mul(rank, &mc, &gen_coroot[i]);
                    index.insert(nr.clone(), mats.len() as u32);
                    mats.push((nr, nc, depth + 1));
                }
            }
        }
        let size = mats.len();

        // Canonical index order: graded by length, then by matrix.
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| (mats[a].2, &mats[a].0).cmp(&(mats[b].2, &mats[b].0)));
        let mut root_mats = Vec::with_capacity(size * rank * rank);
        let mut coroot_mats = Vec::with_capacity(size * rank * rank);
        let mut lengths = Vec::with_capacity(size);
        let mut lookup: HashMap<Vec<i64>, u32> = HashMap::new();
        for (new_idx, &old) in order.iter().enumerate() {
            root_mats.extend_from_slice(&mats[old].0);
            coroot_mats.extend_from_slice(&mats[old].1);
            lengths.push(mats[old].2);
            lookup.insert(mats[old].0.clone(), new_idx as u32);
        }
        drop(mats);
        drop(index);

        let mat_of = |idx: u32| -> &[i64] {
            &root_mats[idx as usize * rank * rank..(idx as usize + 1) * rank * rank]
        };

        let mut rmul = vec![0u32; size * rank];
        for w in 0..size as u32 {
            for i in 0..rank {
                let prod = mat_mul(rank, mat_of(w), &gen_root[i]);
                rmul[w as usize * rank + i] = lookup[&prod];
            }
        }

        // Right descents: w(α_i) < 0, read off column i of the root matrix.
        let mut rdesc = vec![0u8; size];
        for w in 0..size {
            let m = &root_mats[w * rank * rank..(w + 1) * rank * rank];
            for i in 0..rank {
                if (0..rank).any(|r| m[r * rank + i] < 0) {
                    rdesc[w] |= 1 << i;
                }
            }
        }

        // Canonical reduced word: peel the smallest right descent.
        let mut by_length: Vec<u32> = (0..size as u32).collect();
        by_length.sort_by_key(|&w| lengths[w as usize]);
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); size];
        for &w in &by_length {
            if lengths[w as usize] == 0 {
                continue;
            }
            let i = (0..rank)
                .find(|&i| rdesc[w as usize] & (1 << i) != 0)
                .expect("non-identity element has a descent");
            let shorter = rmul[w as usize * rank + i];
            debug_assert_eq!(lengths[shorter as usize] + 1, lengths[w as usize]);
            let mut word = words[shorter as usize].clone();
            word.push(i as u8 + 1);
            words[w as usize] = word;
        }

        // Fold a word (right multiplication) starting from a given element.
        let fold = |start: u32, letters: &[u8], rmul: &[u32]| -> u32 {
            letters.iter().fold(start, |acc, &l| {
                rmul[acc as usize * rank + (l - 1) as usize]
            })
        };

        let mut inv = vec![0u32; size];
        for w in 0..size as u32 {
            let mut rev = words[w as usize].clone();
            rev.reverse();
            inv[w as usize] = fold(0, &rev, &rmul);
        }

        let mut mult = vec![0u32; size * size];
        for u in 0..size as u32 {
            for w in 0..size as u32 {
                mult[u as usize * size + w as usize] = fold(u, &words[w as usize], &rmul);
            }
        }

        let mut ldesc = vec![0u8; size];
        for w in 0..size {
            ldesc[w] = rdesc[inv[w] as usize];
        }

        let simple_ids: Vec<u32> = (0..rank).map(|i| rmul[i]).collect();

        let longest = (0..size as u32)
            .max_by_key(|&w| lengths[w as usize])
            .expect("nonempty group");
        debug_assert_eq!(
            (0..size)
                .filter(|&w| lengths[w] == lengths[longest as usize])
                .count(),
            1,
            "longest element must be unique"
        );

        // Reflection per positive root: s_β(α_j) = α_j - ⟨α_j, β∨⟩ β.
        let nroots = root_system.num_positive_roots();
        let mut reflection_ids = Vec::with_capacity(nroots);
        let mut reflection_root: Vec<Option<u32>> = vec![None; size];
        for k in 0..nroots {
            let beta = &root_system.positive_roots()[k];
            let beta_co = &root_system.positive_coroots()[k];
            let mut m = identity_mat(rank);
            for j in 0..rank {
                let pairing = root_system.pair_root_coroot(&root_system.simple_root(j), beta_co);
                for r in 0..rank {
                    m[r * rank + j] -= pairing * beta.0[r];
                }
            }
            let id = *lookup.get(&m).expect("reflection is a group element");
            reflection_ids.push(id);
            debug_assert!(
                reflection_root[id as usize].is_none(),
                "Φ⁺ ↔ R must be injective"
            );
            reflection_root[id as usize] = Some(k as u32);
        }

        // Reflection length: distance from the identity in the Cayley graph
        // generated by all reflections.
        let mut refl_len = vec![u32::MAX; size];
        refl_len[0] = 0;
        let mut frontier = vec![0u32];
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for &w in &frontier {
                for &r in &reflection_ids {
                    let t = mult[w as usize * size + r as usize];
                    if refl_len[t as usize] == u32::MAX {
                        refl_len[t as usize] = depth;
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }

        let small_height_roots: Vec<usize> = (0..nroots)
            .filter(|&k| {
                let bound = root_system.two_rho_pair_coroot(&root_system.positive_coroots()[k]) - 1;
                root_system.positive_roots()[k].height() > 1
                    && lengths[reflection_ids[k] as usize] as i64 == bound
            })
            .collect();

        WeylGroup {
            serial: GROUP_SERIAL.fetch_add(1, Ordering::Relaxed),
            root_system,
            rank,
            size,
            root_mats,
            coroot_mats,
            lengths,
            rmul,
            mult,
            inv,
            rdesc,
            ldesc,
            words,
            simple_ids,
            longest,
            reflection_ids,
            reflection_root,
            refl_len,
            small_height_roots,
        }
    }

    fn check(&self, e: WeylElement) -> usize {
        assert_eq!(
            e.group, self.serial,
            "WeylElement belongs to a different WeylGroup"
        );
        e.idx as usize
    }

    fn elt(&self, idx: u32) -> WeylElement {
        WeylElement {
            group: self.serial,
            idx,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> WeylElement {
        self.elt(0)
    }

    pub fn longest_element(&self) -> WeylElement {
        self.elt(self.longest)
    }

    /// `s_{i+1}` for 0-based simple index `i`.
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.elt(self.simple_ids[i])
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.size as u32).map(move |i| self.elt(i))
    }

    /// Stable dense index (graded by length, then canonical form).
    pub fn element_index(&self, w: WeylElement) -> usize {
        self.check(w)
    }

    pub fn element_at(&self, idx: usize) -> WeylElement {
        assert!(idx < self.size, "element index out of range");
        self.elt(idx as u32)
    }

    pub fn multiply(&self, u: WeylElement, w: WeylElement) -> WeylElement {
        let (u, w) = (self.check(u), self.check(w));
        self.elt(self.mult[u * self.size + w])
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        let w = self.check(w);
        self.elt(self.inv[w])
    }

    pub fn length(&self, w: WeylElement) -> u32 {
        let w = self.check(w);
        self.lengths[w]
    }

    pub fn element_order(&self, w: WeylElement) -> u32 {
        let w = self.check(w);
        let mut acc = w as u32;
        let mut n = 1;
        while acc != 0 {
            acc = self.mult[acc as usize * self.size + w];
            n += 1;
        }
        n
    }

    /// Canonical reduced word (1-based letters), greedy on the smallest
    /// right descent.
    pub fn reduced_word(&self, w: WeylElement) -> &[u8] {
        let w = self.check(w);
        &self.words[w]
    }

    pub fn element_from_word(&self, letters: &[u8]) -> Result<WeylElement, WeylError> {
        let mut cur = 0u32;
        for &l in letters {
            if l == 0 || l as usize > self.rank {
                return Err(WeylError::LetterOutOfRange(l, self.rank));
            }
            cur = self.rmul[cur as usize * self.rank + (l - 1) as usize];
        }
        Ok(self.elt(cur))
    }

    /// Parse `"121"` or `"e"`.
    pub fn parse_word(&self, s: &str) -> Result<WeylElement, WeylError> {
        if s == "e" {
            return self.element_from_word(&[]);
        }
        if s.is_empty() {
            return Err(WeylError::BadWord(s.to_string(), self.rank));
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| WeylError::BadWord(s.to_string(), self.rank))?;
            if d == 0 || d as usize > self.rank {
                return Err(WeylError::BadWord(s.to_string(), self.rank));
            }
            letters.push(d as u8);
        }
        self.element_from_word(&letters)
    }

    /// Render as a digit string, `"e"` for the identity.
    pub fn format_element(&self, w: WeylElement) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|l| l.to_string()).collect()
        }
    }

    pub fn element_to_json(&self, w: WeylElement) -> serde_json::Value {
        serde_json::json!({
            "word": self.reduced_word(w),
            "length": self.length(w),
        })
    }

    /// Right descent set as a bitmask (bit `i` ⇔ ℓ(w·s_{i+1}) < ℓ(w)).
    pub fn right_descents(&self, w: WeylElement) -> u8 {
        let w = self.check(w);
        self.rdesc[w]
    }

    pub fn left_descents(&self, w: WeylElement) -> u8 {
        let w = self.check(w);
        self.ldesc[w]
    }

    /// Bruhat order via the subword criterion: scan a reduced word of `w`
    /// left to right, greedily absorbing left descents of the residual.
    pub fn bruhat_leq(&self, u: WeylElement, w: WeylElement) -> bool {
        let wi = self.check(w);
        let mut v = self.check(u) as u32;
        if self.lengths[v as usize] > self.lengths[wi] {
            return false;
        }
        for &l in &self.words[wi] {
            let i = (l - 1) as usize;
            if self.ldesc[v as usize] & (1 << i) != 0 {
                v = self.mult[self.simple_ids[i] as usize * self.size + v as usize];
            }
        }
        v == 0
    }

    /// Bruhat covers of `w`: all `w·s_β` with ℓ(w·s_β) = ℓ(w) + 1.
    pub fn bruhat_covers(&self, w: WeylElement) -> Vec<WeylElement> {
        let w = self.check(w);
        let mut out: Vec<u32> = self
            .reflection_ids
            .iter()
            .map(|&r| self.mult[w * self.size + r as usize])
            .filter(|&t| self.lengths[t as usize] == self.lengths[w] + 1)
            .collect();
        out.sort_unstable();
        out.dedup();
        out.into_iter().map(|i| self.elt(i)).collect()
    }

    /// Minimal number of reflections expressing `w`; breadth-first distance
    /// in the all-reflections Cayley graph.
    pub fn reflection_length(&self, w: WeylElement) -> u32 {
        let w = self.check(w);
        self.refl_len[w]
    }

    /// Reflection `s_β` for the positive root with canonical index `k`.
    pub fn reflection(&self, k: usize) -> WeylElement {
        self.elt(self.reflection_ids[k])
    }

    /// Positive-root index of `w` if `w` is a reflection.
    pub fn reflection_root_index(&self, w: WeylElement) -> Option<usize> {
        let w = self.check(w);
        self.reflection_root[w].map(|k| k as usize)
    }

    /// True iff `w = u·x·u'` with ℓ(w) = ℓ(u) + ℓ(x) + ℓ(u'); decided by a
    /// scan over all right factors `u'`.
    pub fn contains_factor(&self, w: WeylElement, x: WeylElement) -> bool {
        let w = self.check(w);
        let x = self.check(x);
        let lw = self.lengths[w];
        let lx = self.lengths[x];
        if lx > lw {
            return false;
        }
        let x_inv = self.inv[x] as usize;
        for uprime in 0..self.size {
            let lu = self.lengths[uprime];
            if lu + lx > lw {
                continue;
            }
            let a = self.mult[w * self.size + self.inv[uprime] as usize];
            if self.lengths[a as usize] != lw - lu {
                continue;
            }
            let b = self.mult[a as usize * self.size + x_inv];
            if self.lengths[b as usize] == lw - lu - lx {
                return true;
            }
        }
        false
    }

    /// True iff some (equivalently, every) reduced word of `w` uses each
    /// simple reflection at most once. Cross-checked against the
    /// reflection-length criterion ℓ_R(w) = ℓ(w); disagreement would mean a
    /// bug in one of the two computations.
    pub fn is_standard_parabolic_coxeter(&self, w: WeylElement) -> bool {
        let wi = self.check(w);
        let word = &self.words[wi];
        let mut seen = 0u8;
        let mut distinct = true;
        for &l in word {
            let bit = 1u8 << (l - 1);
            if seen & bit != 0 {
                distinct = false;
                break;
            }
            seen |= bit;
        }
        let by_refl = self.refl_len[wi] == self.lengths[wi];
        assert_eq!(
            distinct,
            by_refl,
            "standard-parabolic-Coxeter criteria disagree on {}",
            self.format_element(w)
        );
        distinct
    }

    /// Indices of the non-simple positive roots β with
    /// ℓ(s_β) = ⟨2ρ, β∨⟩ - 1 (reflections of minimal possible height).
    pub fn small_height_reflection_roots(&self) -> &[usize] {
        &self.small_height_roots
    }

    /// True iff `w` contains no small-height non-simple reflection as a
    /// length-additive factor.
    pub fn is_small_height_avoiding(&self, w: WeylElement) -> bool {
        self.small_height_roots
            .iter()
            .all(|&k| !self.contains_factor(w, self.reflection(k)))
    }

    pub fn act_on_root(&self, w: WeylElement, root: &Root) -> Root {
        let w = self.check(w);
        let m = &self.root_mats[w * self.rank * self.rank..(w + 1) * self.rank * self.rank];
        let mut out = vec![0i64; self.rank];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, &c) in root.0.iter().enumerate() {
                *o += m[i * self.rank + j] * c;
            }
        }
        Root(out)
    }

    pub fn act_on_coweight(&self, w: WeylElement, cw: &Coweight) -> Coweight {
        let w = self.check(w);
        let m = &self.coroot_mats[w * self.rank * self.rank..(w + 1) * self.rank * self.rank];
        let mut out = vec![num_rational::Rational64::from_integer(0); self.rank];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, c) in cw.0.iter().enumerate() {
                let f = m[i * self.rank + j];
                if f != 0 {
                    *o += c * num_rational::Rational64::from_integer(f);
                }
            }
        }
        Coweight(out)
    }

    /// Elements of the standard parabolic subgroup generated by the given
    /// 0-based simple indices.
    pub fn parabolic_subgroup(&self, simples: &[usize]) -> Vec<WeylElement> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut head = 0;
        while head < out.len() {
            let w = out[head] as usize;
            head += 1;
            for &i in simples {
                let t = self.rmul[w * self.rank + i];
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    out.push(t);
                }
            }
        }
        out.sort_unstable();
        out.into_iter().map(|i| self.elt(i)).collect()
    }
}
