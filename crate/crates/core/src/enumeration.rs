//! Ground-truth fiber enumeration, fiber-graph connectivity, and exact
//! counting of representations through rift patterns.
//!
//! The oracle enumerates every labeled grid by backtracking over level
//! groups, independent of the move system. The counting pipeline never
//! touches grids: it enumerates trit patterns, weighs each maximal rift by
//! the degree-of-freedom recurrence, and decides sigma-decomposability at
//! the pattern level.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::family::ElementaryFamily;
use crate::imset::semi_elementary;
use crate::representation::RepGrid;
use crate::rift::{RiftPattern, Trit};
use crate::triplet::Triplet;
use crate::{Error, Result};

/// Work limits for enumeration; configuration, not constants.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum number of labeled grids the oracle may produce.
    pub max_labeled: u64,
    /// Maximum number of rift patterns a sweep may visit.
    pub max_patterns: u64,
    /// Partial-sum pruning in the oracle; correctness rests on the final
    /// full-sum validation, so audit runs may disable it.
    pub prune: bool,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_labeled: 500_000,
            max_patterns: 43_046_721, // 3^16, covers 5 x 5
            prune: true,
        }
    }
}

/// Enumerates the whole fiber of `u<A,B|∅>` for `|A| = na`, `|B| = nb` as
/// labeled grids, by backtracking cell-by-cell in raster order over the
/// level groups. Prunes with partial sums over subsets whose value can no
/// longer change.
pub fn brute_force_fiber(na: usize, nb: usize, limits: &Limits) -> Result<Vec<RepGrid>> {
    if na == 0 || nb == 0 {
        return Err(Error::EmptySide);
    }
    let n = na + nb;
    if n > 24 {
        return Err(Error::WorkLimitExceeded(format!(
            "oracle ground set of {n} elements is past the dense-table budget"
        )));
    }
    let t = Triplet::by_sizes(na, nb);
    let family = ElementaryFamily::new(&t)?;
    let size = 1usize << n;
    let mut target = vec![0i64; size];
    for (s, v) in semi_elementary(n, &t).entries() {
        target[s.bits() as usize] = v;
    }
    let a_mask = t.a().bits();
    let b_mask = t.b().bits();
    // subsets bucketed by level pair, for the closed-level checks
    let mut by_level: Vec<Vec<u32>> = vec![Vec::new(); (na + 1) * (nb + 1)];
    for bits in 0..size as u32 {
        let p = (bits & a_mask).count_ones() as usize;
        let q = (bits & b_mask).count_ones() as usize;
        by_level[p * (nb + 1) + q].push(bits);
    }
    let mut search = OracleSearch {
        na,
        nb,
        family: &family,
        triplet: t,
        target,
        partial: vec![0i64; size],
        by_level,
        stack: Vec::with_capacity(na * nb),
        out: Vec::new(),
        limits: *limits,
    };
    search.run(0)?;
    Ok(search.out)
}

struct OracleSearch<'f> {
    na: usize,
    nb: usize,
    family: &'f ElementaryFamily,
    triplet: Triplet,
    target: Vec<i64>,
    partial: Vec<i64>,
    by_level: Vec<Vec<u32>>,
    stack: Vec<crate::family::ElementaryImset>,
    out: Vec<RepGrid>,
    limits: Limits,
}

impl OracleSearch<'_> {
    fn run(&mut self, pos: usize) -> Result<()> {
        if pos == self.na * self.nb {
            if !self.limits.prune && self.partial != self.target {
                return Ok(());
            }
            if self.out.len() as u64 >= self.limits.max_labeled {
                return Err(Error::WorkLimitExceeded(format!(
                    "fiber exceeds {} labeled grids",
                    self.limits.max_labeled
                )));
            }
            let grid = RepGrid::from_cells(&self.triplet, self.stack.clone())?;
            debug_assert!(grid.validate());
            self.out.push(grid);
            return Ok(());
        }
        let (s, t) = (pos / self.nb, pos % self.nb);
        let group: Vec<crate::family::ElementaryImset> = self.family.group(s, t).to_vec();
        for e in group {
            for (q, v) in [
                (e.gamma, 1),
                (e.gamma_ab(), 1),
                (e.gamma_a(), -1),
                (e.gamma_b(), -1),
            ] {
                self.partial[q.bits() as usize] += v;
            }
            self.stack.push(e);
            if !self.limits.prune || self.closed_levels_match(s, t) {
                self.run(pos + 1)?;
            }
            self.stack.pop();
            for (q, v) in [
                (e.gamma, 1),
                (e.gamma_ab(), 1),
                (e.gamma_a(), -1),
                (e.gamma_b(), -1),
            ] {
                self.partial[q.bits() as usize] -= v;
            }
        }
        Ok(())
    }

    /// After placing cell `(s, t)`, subsets at level `(p, q)` are closed
    /// once every cell that can touch them is placed; in raster order that
    /// is exactly `p ∈ {s} ∪ {na if s = na-1}` crossed with the analogous
    /// `q` set.
    fn closed_levels_match(&self, s: usize, t: usize) -> bool {
        let mut ps = vec![s];
        if s == self.na - 1 {
            ps.push(self.na);
        }
        let mut qs = vec![t];
        if t == self.nb - 1 {
            qs.push(self.nb);
        }
        for &p in &ps {
            for &q in &qs {
                for &bits in &self.by_level[p * (self.nb + 1) + q] {
                    if self.partial[bits as usize] != self.target[bits as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Maps a normalized fiber onto a general triplet: elements are renamed
/// positionally and `C` is joined into every conditioning set.
pub fn fiber_of(t: &Triplet, limits: &Limits) -> Result<Vec<RepGrid>> {
    t.require_fiber()?;
    let na = t.a().len();
    let nb = t.b().len();
    let normalized = brute_force_fiber(na, nb, limits)?;
    let a_elems = t.a_elems();
    let b_elems = t.b_elems();
    let map = |i: usize| {
        if i < na {
            a_elems[i]
        } else {
            b_elems[i - na]
        }
    };
    normalized
        .into_iter()
        .map(|g| {
            let cells = g
                .cells()
                .iter()
                .map(|e| crate::family::ElementaryImset {
                    a: map(e.a),
                    b: map(e.b),
                    gamma: e
                        .gamma
                        .iter()
                        .fold(t.c(), |acc, i| acc.with(map(i))),
                })
                .collect();
            RepGrid::from_cells(t, cells)
        })
        .collect()
}

/// The fiber viewed as a graph: vertices are grids, edges join grids that
/// differ by a single two-by-two move.
#[derive(Clone, Debug)]
pub struct FiberGraph {
    pub vertices: Vec<RepGrid>,
    pub edges: Vec<(usize, usize)>,
}

impl FiberGraph {
    pub fn connected_components(&self) -> usize {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut components = 0;
        let mut queue = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            queue.push(start);
            while let Some(v) = queue.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
        components
    }
}

/// Builds the move graph over a fiber. Vertices are deduplicated by their
/// cell serialization; every applicable move lands back in the fiber, so
/// each neighbor resolves to a vertex index.
pub fn fiber_graph(fiber: Vec<RepGrid>) -> Result<FiberGraph> {
    if fiber.is_empty() {
        return Ok(FiberGraph {
            vertices: fiber,
            edges: Vec::new(),
        });
    }
    let family = ElementaryFamily::new(fiber[0].triplet())?;
    let encode = |g: &RepGrid| -> u128 {
        let mut key: u128 = 0;
        for e in g.cells() {
            let idx = family
                .position_in_group(e)
                .expect("fiber grids draw cells from the family");
            debug_assert!(idx < 256);
            key = (key << 8) | idx as u128;
        }
        key
    };
    let mut vertices: Vec<RepGrid> = Vec::with_capacity(fiber.len());
    let mut index = std::collections::HashMap::with_capacity(fiber.len());
    for g in fiber {
        let key = encode(&g);
        if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(key) {
            slot.insert(vertices.len());
            vertices.push(g);
        }
    }
    let mut edges = Vec::new();
    for (i, g) in vertices.iter().enumerate() {
        for m in g.available_moves() {
            let neighbor = g.apply_move(m)?;
            let j = *index
                .get(&encode(&neighbor))
                .ok_or_else(|| Error::InvalidGrid("move left the fiber".into()))?;
            if i < j {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(FiberGraph { vertices, edges })
}

/// Degree of freedom of a single rift of length `l`:
/// `d(1) = 1`, `d(l) = l! - sum_{k=1}^{l-1} (l-k)! d(k)`.
pub fn degree_of_freedom(l: u64) -> BigUint {
    let mut fact = vec![BigUint::from(1u32)];
    for i in 1..=l {
        let next = fact.last().unwrap() * i;
        fact.push(next);
    }
    let mut d = vec![BigUint::from(0u32); (l + 1).max(2) as usize];
    d[1] = BigUint::from(1u32);
    for m in 2..=l as usize {
        let mut acc = fact[m].clone();
        for k in 1..m {
            acc -= &fact[m - k] * &d[k];
        }
        d[m] = acc;
    }
    d[l as usize].clone()
}

/// Number of representatives for `|A| = 2`:
/// `r2(1) = 1`, `r2(m) = m! + sum_{k=1}^{m-1} k! r2(m-k)`.
pub fn count_two_row(m: u64) -> BigUint {
    let mut fact = vec![BigUint::from(1u32)];
    for i in 1..=m {
        let next = fact.last().unwrap() * i;
        fact.push(next);
    }
    let mut r = vec![BigUint::from(0u32); (m + 1).max(2) as usize];
    r[1] = BigUint::from(1u32);
    for j in 2..=m as usize {
        let mut acc = fact[j].clone();
        for k in 1..j {
            acc += &fact[k] * &r[j - k];
        }
        r[j] = acc;
    }
    r[m as usize].clone()
}

fn pattern_space(na: usize, nb: usize, limits: &Limits) -> Result<(usize, usize, u64)> {
    if na == 0 || nb == 0 {
        return Err(Error::EmptySide);
    }
    let rows = na - 1;
    let cols = nb - 1;
    let k = (rows * cols) as u32;
    let total = 3u64
        .checked_pow(k)
        .filter(|&t| t <= limits.max_patterns)
        .ok_or_else(|| {
            Error::WorkLimitExceeded(format!(
                "3^{k} rift patterns exceed the configured budget of {}",
                limits.max_patterns
            ))
        })?;
    Ok((rows, cols, total))
}

fn decode_digits(mut idx: u64, k: usize) -> Vec<u8> {
    let mut digits = vec![0u8; k];
    for d in digits.iter_mut() {
        *d = (idx % 3) as u8;
        idx /= 3;
    }
    digits
}

/// Streams every rift pattern for the given dimensions in base-3 counter
/// order (flat position 0 is the least significant digit; 0 = unbroken,
/// 1 = s-rift, 2 = b-rift).
pub fn enumerate_rift_patterns(
    na: usize,
    nb: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = RiftPattern>> {
    let (rows, cols, total) = pattern_space(na, nb, limits)?;
    let k = rows * cols;
    Ok((0..total).map(move |idx| {
        let trits = decode_digits(idx, k)
            .into_iter()
            .map(|d| match d {
                0 => Trit::None,
                1 => Trit::SRift,
                _ => Trit::BRift,
            })
            .collect();
        RiftPattern::from_trits(na, nb, trits)
    }))
}

fn d_table(max_len: usize) -> Vec<u128> {
    let mut fact = vec![1u128; max_len + 1];
    for i in 1..=max_len {
        fact[i] = fact[i - 1].checked_mul(i as u128).expect("factorial overflow");
    }
    let mut d = vec![0u128; max_len + 1];
    if max_len >= 1 {
        d[1] = 1;
    }
    for m in 2..=max_len {
        let mut acc = fact[m];
        for k in 1..m {
            acc -= fact[m - k] * d[k];
        }
        d[m] = acc;
    }
    d
}

/// Weight of one pattern: the product over maximal rifts of the degree of
/// freedom of their length (a run of `r` crossings has length `r + 1`).
fn pattern_weight(digits: &[u8], rows: usize, cols: usize, d: &[u128]) -> u128 {
    let mut prod: u128 = 1;
    for r in 0..rows {
        let mut run = 0usize;
        for c in 0..cols {
            if digits[r * cols + c] == 1 {
                run += 1;
            } else if run > 0 {
                prod *= d[run + 1];
                run = 0;
            }
        }
        if run > 0 {
            prod *= d[run + 1];
        }
    }
    for c in 0..cols {
        let mut run = 0usize;
        for r in 0..rows {
            if digits[r * cols + c] == 2 {
                run += 1;
            } else if run > 0 {
                prod *= d[run + 1];
                run = 0;
            }
        }
        if run > 0 {
            prod *= d[run + 1];
        }
    }
    prod
}

fn masks(digits: &[u8], rows: usize, cols: usize) -> (Vec<u32>, Vec<u32>) {
    let mut bmask = vec![0u32; rows];
    let mut smask = vec![0u32; cols];
    for r in 0..rows {
        for c in 0..cols {
            match digits[r * cols + c] {
                2 => bmask[r] |= 1 << c,
                1 => smask[c] |= 1 << r,
                _ => {}
            }
        }
    }
    (bmask, smask)
}

fn bit_range(lo: usize, hi: usize) -> u32 {
    if hi <= lo {
        0
    } else {
        (((1u64 << hi) - 1) ^ ((1u64 << lo) - 1)) as u32
    }
}

/// Pattern-level sigma-decomposability on a cell block `[r0,r1) x [c0,c1)`.
///
/// A horizontal cut is free when no b-rift crossing sits on it within the
/// block's column span; a vertical cut dually. Committing any free cut is
/// safe: sub-blocks only relax the constraints, so a decomposable block
/// stays decomposable under every free cut.
fn block_decomposable(
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
    bmask: &[u32],
    smask: &[u32],
) -> bool {
    if r1 - r0 == 1 || c1 - c0 == 1 {
        return true;
    }
    let colmask = bit_range(c0, c1 - 1);
    for x in r0 + 1..r1 {
        if bmask[x - 1] & colmask == 0 {
            return block_decomposable(r0, x, c0, c1, bmask, smask)
                && block_decomposable(x, r1, c0, c1, bmask, smask);
        }
    }
    let rowmask = bit_range(r0, r1 - 1);
    for y in c0 + 1..c1 {
        if smask[y - 1] & rowmask == 0 {
            return block_decomposable(r0, r1, c0, y, bmask, smask)
                && block_decomposable(r0, r1, y, c1, bmask, smask);
        }
    }
    false
}

/// Sigma-decomposability decided from the rift pattern alone.
pub fn pattern_sigma_decomposable(p: &RiftPattern) -> bool {
    let (na, nb) = p.dims();
    let rows = na - 1;
    let cols = nb - 1;
    let digits: Vec<u8> = p
        .trits()
        .iter()
        .map(|t| match t {
            Trit::None => 0u8,
            Trit::SRift => 1,
            Trit::BRift => 2,
        })
        .collect();
    let (bmask, smask) = masks(&digits, rows, cols);
    block_decomposable(0, na, 0, nb, &bmask, &smask)
}

#[derive(Clone, Copy, Default)]
struct SweepStats {
    reps: u128,
    indec_patterns: u64,
    indec_reps: u128,
}

fn sweep(na: usize, nb: usize, limits: &Limits) -> Result<SweepStats> {
    let (rows, cols, total) = pattern_space(na, nb, limits)?;
    let k = rows * cols;
    let d = d_table(k + 1);
    let chunk: u64 = 1 << 14;
    let nchunks = total.div_ceil(chunk).max(1);
    let stats = (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk;
            let end = (start + chunk).min(total);
            let mut digits = decode_digits(start, k);
            let mut local = SweepStats::default();
            for _ in start..end {
                let w = pattern_weight(&digits, rows, cols, &d);
                local.reps = local.reps.checked_add(w).expect("count overflow");
                let (bmask, smask) = masks(&digits, rows, cols);
                if !block_decomposable(0, na, 0, nb, &bmask, &smask) {
                    local.indec_patterns += 1;
                    local.indec_reps = local.indec_reps.checked_add(w).expect("count overflow");
                }
                for digit in digits.iter_mut() {
                    if *digit == 2 {
                        *digit = 0;
                    } else {
                        *digit += 1;
                        break;
                    }
                }
            }
            local
        })
        .reduce(SweepStats::default, |x, y| SweepStats {
            reps: x.reps.checked_add(y.reps).expect("count overflow"),
            indec_patterns: x.indec_patterns + y.indec_patterns,
            indec_reps: x
                .indec_reps
                .checked_add(y.indec_reps)
                .expect("count overflow"),
        });
    Ok(stats)
}

/// Number of representation representatives (relabeling classes): the sum
/// over all rift patterns of the product of the rifts' degrees of freedom.
pub fn count_representations(na: usize, nb: usize, limits: &Limits) -> Result<BigUint> {
    Ok(BigUint::from(sweep(na, nb, limits)?.reps))
}

/// Number of sigma-indecomposable rift patterns and representation
/// representatives.
pub fn count_sigma_indecomposable(
    na: usize,
    nb: usize,
    limits: &Limits,
) -> Result<(BigUint, BigUint)> {
    let stats = sweep(na, nb, limits)?;
    Ok((
        BigUint::from(stats.indec_patterns),
        BigUint::from(stats.indec_reps),
    ))
}

/// One row of the counting report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub na: usize,
    pub nb: usize,
    pub patterns: BigUint,
    pub representations: BigUint,
    pub indec_patterns: BigUint,
    pub indec_representations: BigUint,
}

/// The counting report over a range of dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub rows: Vec<CountRow>,
}

impl CountReport {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("a,b,rift_patterns,representations,sigma_indec_patterns,sigma_indec_representations\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.na, r.nb, r.patterns, r.representations, r.indec_patterns, r.indec_representations
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "a": r.na,
                    "b": r.nb,
                    "rift_patterns": r.patterns.to_string(),
                    "representations": r.representations.to_string(),
                    "sigma_indec_patterns": r.indec_patterns.to_string(),
                    "sigma_indec_representations": r.indec_representations.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Full counting report for `2 <= |A| <= max_na`, `|A| <= |B| <= max_nb`.
pub fn table_report(max_na: usize, max_nb: usize, limits: &Limits) -> Result<CountReport> {
    let mut rows = Vec::new();
    for na in 2..=max_na {
        for nb in na..=max_nb {
            let stats = sweep(na, nb, limits)?;
            let k = ((na - 1) * (nb - 1)) as u32;
            rows.push(CountRow {
                na,
                nb,
                patterns: BigUint::from(3u32).pow(k),
                representations: BigUint::from(stats.reps),
                indec_patterns: BigUint::from(stats.indec_patterns),
                indec_representations: BigUint::from(stats.indec_reps),
            });
        }
    }
    Ok(CountReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_values() {
        let d: Vec<u64> = (1..=5)
            .map(|l| degree_of_freedom(l).try_into().unwrap())
            .collect();
        assert_eq!(d, vec![1, 1, 3, 13, 71]);
        let r: Vec<u64> = (1..=5)
            .map(|m| count_two_row(m).try_into().unwrap())
            .collect();
        assert_eq!(r, vec![1, 3, 11, 47, 231]);
    }

    #[test]
    fn two_by_two_counts() {
        let limits = Limits::default();
        // 1 (no rift) + 1 (s-rift) + 1 (b-rift)
        assert_eq!(count_representations(2, 2, &limits).unwrap(), 3u32.into());
        let (ip, ir) = count_sigma_indecomposable(2, 2, &limits).unwrap();
        assert_eq!(ip, 0u32.into());
        assert_eq!(ir, 0u32.into());
    }

    #[test]
    fn pattern_enumeration_counts() {
        let limits = Limits::default();
        assert_eq!(enumerate_rift_patterns(2, 2, &limits).unwrap().count(), 3);
        assert_eq!(enumerate_rift_patterns(3, 3, &limits).unwrap().count(), 81);
        // streamed patterns agree with the packed sweep
        let mut reps = BigUint::from(0u32);
        let mut indec = 0u64;
        for p in enumerate_rift_patterns(3, 3, &limits).unwrap() {
            let w: BigUint = p
                .rifts()
                .iter()
                .map(|r| degree_of_freedom(r.len() as u64))
                .product();
            reps += &w;
            if !pattern_sigma_decomposable(&p) {
                indec += 1;
            }
        }
        assert_eq!(reps, count_representations(3, 3, &limits).unwrap());
        assert_eq!(indec, 2);
    }

    #[test]
    fn small_fibers() {
        let limits = Limits::default();
        let fiber = brute_force_fiber(2, 2, &limits).unwrap();
        assert_eq!(fiber.len(), 12);
        for g in &fiber {
            assert!(g.validate());
        }
        // |A| = 1: one representation per order of B
        assert_eq!(brute_force_fiber(1, 3, &limits).unwrap().len(), 6);
    }

    #[test]
    fn pruning_is_an_optimization_only() {
        let with = brute_force_fiber(2, 3, &Limits::default()).unwrap();
        let without = brute_force_fiber(
            2,
            3,
            &Limits {
                prune: false,
                ..Limits::default()
            },
        )
        .unwrap();
        assert_eq!(with.len(), without.len());
        for (x, y) in with.iter().zip(&without) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn small_graphs_connected() {
        let limits = Limits::default();
        let g22 = fiber_graph(brute_force_fiber(2, 2, &limits).unwrap()).unwrap();
        assert_eq!(g22.vertices.len(), 12);
        assert_eq!(g22.connected_components(), 1);
        let g13 = fiber_graph(brute_force_fiber(1, 3, &limits).unwrap()).unwrap();
        assert_eq!(g13.vertices.len(), 6);
        assert_eq!(g13.connected_components(), 1);
    }

    #[test]
    fn two_row_indecomposables_vanish() {
        let limits = Limits::default();
        for m in 2..=6 {
            let (ip, ir) = count_sigma_indecomposable(2, m, &limits).unwrap();
            assert_eq!((ip, ir), (0u32.into(), 0u32.into()), "at (2,{m})");
        }
    }

    #[test]
    fn counts_grow_with_b() {
        let report = table_report(4, 5, &Limits::default()).unwrap();
        for pair in report.rows.windows(2) {
            if pair[0].na == pair[1].na {
                assert!(pair[1].representations > pair[0].representations);
                assert!(pair[1].patterns > pair[0].patterns);
            }
        }
    }

    #[test]
    fn work_limits_enforced() {
        let tight = Limits {
            max_labeled: 5,
            ..Limits::default()
        };
        assert!(matches!(
            brute_force_fiber(2, 2, &tight),
            Err(Error::WorkLimitExceeded(_))
        ));
        let tiny = Limits {
            max_patterns: 10,
            ..Limits::default()
        };
        assert!(matches!(
            count_representations(3, 3, &tiny),
            Err(Error::WorkLimitExceeded(_))
        ));
    }

    #[test]
    fn general_wrapper_translates() {
        use crate::varset::VarSet;
        let t = Triplet::new(
            VarSet::from_indices(&[1, 4]),
            VarSet::from_indices(&[0, 3]),
            VarSet::from_indices(&[2]),
        )
        .unwrap();
        let limits = Limits::default();
        let fiber = fiber_of(&t, &limits).unwrap();
        assert_eq!(fiber.len(), 12);
        for g in fiber {
            assert!(g.validate());
            assert!(g.cells().iter().all(|e| t.c().is_subset_of(e.gamma)));
        }
    }
}
