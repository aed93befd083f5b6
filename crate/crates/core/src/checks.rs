//! Built-in property suites: exhaustive identity checks and structural
//! invariants over whole fibers. These back the command-line `verify`
//! command and the acceptance tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{brute_force_fiber, Limits};
use crate::imset::{semi_elementary, split_identity_check};
use crate::representation::RepGrid;
use crate::rift::{boundary_maps, classify_points, detect_rifts, is_separable, Axis, PointKind, Trit};
use crate::triplet::Triplet;
use crate::varset::VarSet;
use crate::Result;

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> SuiteResult {
        SuiteResult {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

/// Exhaustive split-identity check: every assignment of up to `max_n`
/// ground elements to the four roles (or none).
pub fn split_identity_suite(max_n: usize) -> SuiteResult {
    let mut suite = SuiteResult::new("split-identity");
    for n in 0..=max_n {
        for code in 0..5u64.pow(n as u32) {
            let mut c = code;
            let mut sets = [VarSet::EMPTY; 4];
            for i in 0..n {
                let which = (c % 5) as usize;
                c /= 5;
                if which < 4 {
                    sets[which] = sets[which].with(i);
                }
            }
            let ok = split_identity_check(n, sets[0], sets[1], sets[2], sets[3])
                .expect("role sets are disjoint by construction");
            suite.check(ok, || format!("split identity failed for code {code} at n={n}"));
        }
    }
    suite
}

/// Structural invariants of the four boundary maps over a whole fiber:
/// the cardinality chain at every cell, injectivity, and total
/// classification of every touched subset with inner points in the five
/// admissible patterns.
pub fn boundary_structure_suite(na: usize, nb: usize, limits: &Limits) -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("boundary-structure");
    let fiber = brute_force_fiber(na, nb, limits)?;
    for (gi, g) in fiber.iter().enumerate() {
        let t = *g.triplet();
        match boundary_maps(g) {
            Ok(maps) => {
                for s in 0..na {
                    for tv in 0..nb {
                        let base_a = maps.gamma(s, tv).intersect(t.a()).len();
                        let base_b = maps.gamma(s, tv).intersect(t.b()).len();
                        let chain_ok = maps.gamma_a(s, tv).intersect(t.a()).len() == base_a + 1
                            && maps.gamma_b(s, tv).intersect(t.a()).len() == base_a
                            && maps.gamma_ab(s, tv).intersect(t.a()).len() == base_a + 1
                            && maps.gamma_a(s, tv).intersect(t.b()).len() == base_b
                            && maps.gamma_b(s, tv).intersect(t.b()).len() == base_b + 1
                            && maps.gamma_ab(s, tv).intersect(t.b()).len() == base_b + 1;
                        suite.check(chain_ok, || {
                            format!("cardinality chain broken at grid {gi} cell ({s},{tv})")
                        });
                    }
                }
            }
            Err(e) => suite.check(false, || format!("injectivity failed at grid {gi}: {e}")),
        }
        match classify_points(g) {
            Ok(classes) => {
                for c in &classes {
                    let ok = match c.kind {
                        PointKind::Inner(ty) => (1..=5).contains(&ty),
                        _ => true,
                    };
                    suite.check(ok, || {
                        format!("point {:?} of grid {gi} fell outside the five inner types", c.point)
                    });
                }
            }
            Err(e) => suite.check(false, || format!("classification failed at grid {gi}: {e}")),
        }
    }
    Ok(suite)
}

/// Agreement of the separability criterion with direct sub-sum evaluation
/// over a whole fiber: a cut index admits a subset splitting the grid into
/// two semi-elementary sums exactly when the continuity criterion holds.
pub fn separability_agreement_suite(na: usize, nb: usize, limits: &Limits) -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("separability-criterion");
    let fiber = brute_force_fiber(na, nb, limits)?;
    for (gi, g) in fiber.iter().enumerate() {
        for idx in 1..na {
            let by_criterion = is_separable(g, Axis::A, idx)?.is_some();
            let direct = direct_separable_a(g, idx);
            suite.check(by_criterion == direct, || {
                format!("A-cut {idx} disagrees at grid {gi}: criterion {by_criterion}, direct {direct}")
            });
        }
        for idx in 1..nb {
            let by_criterion = is_separable(g, Axis::B, idx)?.is_some();
            let direct = direct_separable_b(g, idx);
            suite.check(by_criterion == direct, || {
                format!("B-cut {idx} disagrees at grid {gi}: criterion {by_criterion}, direct {direct}")
            });
        }
    }
    Ok(suite)
}

/// Existence of some `A0` of size `idx` whose two sub-sums are the
/// matching semi-elementary imsets, checked over all candidate subsets.
fn direct_separable_a(g: &RepGrid, idx: usize) -> bool {
    let t = *g.triplet();
    let (na, nb) = g.dims();
    let ground = g.ground();
    let mut low = crate::imset::Imset::zero(ground);
    let mut high = crate::imset::Imset::zero(ground);
    for s in 0..na {
        for tv in 0..nb {
            let e = g.cell(s, tv);
            let into = if s < idx { &mut low } else { &mut high };
            into.bump(e.gamma, 1);
            into.bump(e.gamma_ab(), 1);
            into.bump(e.gamma_a(), -1);
            into.bump(e.gamma_b(), -1);
        }
    }
    VarSet::subsets_between(VarSet::EMPTY, t.a())
        .filter(|a0| a0.len() == idx)
        .any(|a0| {
            let lt = Triplet::new(a0, t.b(), t.c()).unwrap();
            let ht = Triplet::new(t.a().difference(a0), t.b(), t.c().union(a0)).unwrap();
            low == semi_elementary(ground, &lt) && high == semi_elementary(ground, &ht)
        })
}

fn direct_separable_b(g: &RepGrid, idx: usize) -> bool {
    let t = *g.triplet();
    let (na, nb) = g.dims();
    let ground = g.ground();
    let mut low = crate::imset::Imset::zero(ground);
    let mut high = crate::imset::Imset::zero(ground);
    for s in 0..na {
        for tv in 0..nb {
            let e = g.cell(s, tv);
            let into = if tv < idx { &mut low } else { &mut high };
            into.bump(e.gamma, 1);
            into.bump(e.gamma_ab(), 1);
            into.bump(e.gamma_a(), -1);
            into.bump(e.gamma_b(), -1);
        }
    }
    VarSet::subsets_between(VarSet::EMPTY, t.b())
        .filter(|b0| b0.len() == idx)
        .any(|b0| {
            let lt = Triplet::new(t.a(), b0, t.c()).unwrap();
            let ht = Triplet::new(t.a(), t.b().difference(b0), t.c().union(b0)).unwrap();
            low == semi_elementary(ground, &lt) && high == semi_elementary(ground, &ht)
        })
}

/// Move involution and sum preservation over randomly sampled
/// (grid, move) pairs from a pool of small fibers.
pub fn move_properties_suite(seed: u64, samples: u64) -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("move-properties");
    let limits = Limits::default();
    let pool: Vec<Vec<RepGrid>> = [(2usize, 2usize), (2, 3), (3, 3), (2, 4)]
        .iter()
        .map(|&(na, nb)| brute_force_fiber(na, nb, &limits))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0u64;
    while drawn < samples {
        let fiber = &pool[rng.gen_range(0..pool.len())];
        let g = &fiber[rng.gen_range(0..fiber.len())];
        let moves = g.available_moves();
        if moves.is_empty() {
            continue;
        }
        let m = moves[rng.gen_range(0..moves.len())];
        drawn += 1;
        match g.apply_move(m) {
            Ok(h) => {
                suite.check(h.validate(), || format!("move {m:?} broke validation"));
                suite.check(h.sum() == g.sum(), || format!("move {m:?} changed the sum"));
                match h.apply_move(m) {
                    Ok(back) => suite.check(back == *g, || format!("move {m:?} is not an involution")),
                    Err(e) => suite.check(false, || format!("inverse of {m:?} failed: {e}")),
                }
            }
            Err(e) => suite.check(false, || format!("listed move {m:?} failed to apply: {e}")),
        }
    }
    Ok(suite)
}

/// Rift-pattern totality: every crossing of every fiber grid carries
/// exactly one of the three states, and maximal runs have length >= 1.
pub fn rift_totality_suite(na: usize, nb: usize, limits: &Limits) -> Result<SuiteResult> {
    let mut suite = SuiteResult::new("rift-totality");
    let fiber = brute_force_fiber(na, nb, limits)?;
    for g in &fiber {
        let p = detect_rifts(g);
        suite.check(p.crossings() == (na - 1) * (nb - 1), || {
            "crossing count mismatch".to_string()
        });
        let rift_crossings: usize = p
            .trits()
            .iter()
            .filter(|&&t| t != Trit::None)
            .count();
        let run_total: usize = p.rifts().iter().map(|r| r.len() - 1).sum();
        suite.check(rift_crossings == run_total, || {
            "rift runs do not partition the broken crossings".to_string()
        });
    }
    Ok(suite)
}

/// Runs all built-in suites at their default scales.
pub fn run_all(seed: u64) -> Result<Vec<SuiteResult>> {
    let limits = Limits::default();
    Ok(vec![
        split_identity_suite(6),
        boundary_structure_suite(3, 3, &limits)?,
        separability_agreement_suite(3, 3, &limits)?,
        rift_totality_suite(3, 3, &limits)?,
        move_properties_suite(seed, 10_000)?,
    ])
}
