//! Depth-parameterized identity suite.
//!
//! Every check is an exact comparison. The `check_*` functions take explicit
//! bounds so callers can pin them; [`run_suite`] derives bounds from a single
//! depth so that a deeper run always covers a shallower one.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Dyadic, Fraction};
use crate::cf::{cf_to_path, from_cf, path_to_cf, to_cf, ContinuedFraction};
use crate::diagonal::{
    coefficient_ratio, constant_terms, coverage_family_index, diagonal, diagonal_limit,
    solve_membership, stern,
};
use crate::error::{Error, Result};
use crate::golden;
use crate::qmark::{
    qmark, qmark_children, qmark_diagonal_map_checked, qmark_level_sum, qmark_of_cf,
    qmark_path_identity_check,
};
use crate::tree::{
    address_of, children, fraction_at, level_iter, level_stats, parent, path_of, path_of_rank,
    rank_of, streaming_level_stats, unrank, Direction, Path,
};

/// Seed for every randomized check; fixed for reproducible reports.
pub const SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Accumulates instances checked and the first failure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub instances: u64,
    pub counterexample: Option<String>,
    /// Values worth reporting, e.g. `n=3: 18`.
    pub observations: Vec<String>,
}

impl Outcome {
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    pub fn observe(&mut self, note: impl Into<String>) {
        self.observations.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub anchor: &'static str,
    pub instances: u64,
    pub status: Status,
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<String>,
}

impl CheckReport {
    pub fn from_outcome(name: &'static str, anchor: &'static str, out: Outcome) -> Self {
        Self {
            name,
            anchor,
            instances: out.instances,
            status: if out.passed() {
                Status::Pass
            } else {
                Status::Fail
            },
            counterexample: out.counterexample,
            observations: out.observations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub depth: u32,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Bounds derived from one depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub depth: u32,
    /// Levels for per-node `?` checks.
    pub qmark_depth: u32,
    /// Levels for checks that hold a whole-level integer product.
    pub heavy_depth: u32,
}

pub const DEFAULT_QMARK_DEPTH: u32 = 14;
pub const DEFAULT_HEAVY_DEPTH: u32 = 16;

impl SuiteConfig {
    pub fn new(depth: u32) -> Self {
        Self {
            depth,
            qmark_depth: depth.min(DEFAULT_QMARK_DEPTH),
            heavy_depth: depth.min(DEFAULT_HEAVY_DEPTH),
        }
    }

    fn diag_count(&self) -> u64 {
        1u64 << self.depth.min(10)
    }

    fn diag_j(&self) -> u64 {
        u64::from(self.depth * 3).min(32)
    }
}

pub struct Identity {
    pub name: &'static str,
    pub anchor: &'static str,
    run: fn(&SuiteConfig) -> Outcome,
}

macro_rules! identity {
    ($name:expr, $anchor:expr, $run:expr) => {
        Identity {
            name: $name,
            anchor: $anchor,
            run: $run,
        }
    };
}

/// The full suite in report order.
pub static IDENTITIES: &[Identity] = &[
    identity!("reduced", "every tree fraction is in lowest terms", |c| {
        check_reduced(1..=c.depth)
    }),
    identity!(
        "unique",
        "each positive rational appears exactly once",
        |c| check_unique(c.depth, c.depth.min(DEFAULT_QMARK_DEPTH))
    ),
    identity!(
        "adjacent",
        "denominator of each entry = numerator of the next",
        |c| check_adjacent(1..=c.depth)
    ),
    identity!(
        "reciprocal-symmetry",
        "entry j = 1 / entry (2^(n-1)+1-j)",
        |c| check_reciprocal_symmetry(1..=c.depth)
    ),
    identity!(
        "children-product",
        "each node = product of its children",
        |c| check_children_product(1..=c.depth)
    ),
    identity!("level-product", "product over a level = 1", |c| {
        check_level_product(1..=c.depth)
    }),
    identity!("simplicity-sum", "sum of 1/(ab) over a level = 1", |c| {
        check_simplicity_sum(1..=c.depth)
    }),
    identity!(
        "complexity-square",
        "product of ab over a level is a perfect square",
        |c| check_complexity_square(1..=c.heavy_depth)
    ),
    identity!("trace-sum", "sum of (a+b) over level n = 2*3^(n-1)", |c| {
        check_trace_sum(1..=c.depth)
    }),
    identity!(
        "complexity-trace",
        "sum of ab at level n = sum of (a+b)^2 at level n-1",
        |c| check_complexity_trace(2..=c.depth)
    ),
    identity!("level-sum", "sum over level n = 3*2^(n-2) - 1/2", |c| {
        check_level_sum(1..=c.depth)
    }),
    identity!(
        "path-roundtrip",
        "fraction_at and path_of are inverse",
        |c| check_path_roundtrip(1..=c.depth)
    ),
    identity!("rank-roundtrip", "rank_of and unrank are inverse", |c| {
        check_rank_roundtrip(1..=c.depth)
    }),
    identity!(
        "cf-digit-sum",
        "continued-fraction terms of a level-n node sum to n",
        |c| check_cf_digit_sum(1..=c.depth)
    ),
    identity!("cf-roundtrip", "from_cf(to_cf(r)) = r", |c| {
        check_cf_roundtrip(1..=c.depth, 100 * u64::from(c.depth), 1_000_000)
    }),
    identity!(
        "cf-path",
        "path = reversed R^a0 L^a1 ... with last exponent minus one",
        |c| check_cf_path(1..=c.depth)
    ),
    identity!("cf-reciprocal", "cf(1/r) = [0; cf(r)] for r > 1", |c| {
        check_cf_reciprocal(1..=c.depth)
    }),
    identity!("diag-list", "first ten left diagonals", |_| {
        check_diagonal_list()
    }),
    identity!(
        "diag-column",
        "L_n(j) = tree entry at level ceil(log2 n)+j, position n",
        |c| check_diagonal_column(c.diag_count(), c.diag_j())
    ),
    identity!("diag-determinant", "ad - bc = -1", |c| {
        check_diagonal_determinant(100 * c.diag_count())
    }),
    identity!(
        "diag-coefficients",
        "L_(n+1) = (b_(n-1) j + b_(m-1)) / (b_n j + b_m)",
        |c| check_diagonal_coefficients(c.diag_count())
    ),
    identity!("diag-limit", "L_n converges to b_(n-2)/b_(n-1)", |c| {
        check_diagonal_limit(c.diag_count())
    }),
    identity!(
        "diag-limits-distinct",
        "distinct diagonals have distinct limits",
        |c| check_limits_distinct(c.diag_count())
    ),
    identity!(
        "diag-convergence",
        "|L_n(j) - lim L_n| strictly decreases in j",
        |c| check_diagonal_convergence(c.diag_count().min(256), 2 * c.diag_j())
    ),
    identity!(
        "diag-coverage",
        "union of L_(2^n i - 2^(n-1)) over i = (n-1, n]",
        |c| check_coverage(1..=3, 30, u64::from(c.depth).min(16))
    ),
    identity!(
        "stern-diatomic",
        "b_m = s(m+1) with s(2k) = s(k), s(2k+1) = s(k) + s(k+1)",
        |c| check_stern_diatomic((1u64 << c.depth.min(16)) - 1)
    ),
    identity!(
        "qmark-alias",
        "? agrees on both expansions of a rational",
        |c| check_qmark_alias(1..=c.qmark_depth.min(12))
    ),
    identity!("qmark-order", "? is strictly increasing", |c| {
        check_qmark_order(c.qmark_depth.min(12))
    }),
    identity!(
        "qmark-children",
        "?(a/(a+b)) = 1 + (x-n-2)/2^(n+1), ?((a+b)/b) = 1 + x",
        |c| check_qmark_children(1..=c.qmark_depth)
    ),
    identity!(
        "qmark-level-sum",
        "sum of ? over a level = sum of the level",
        |c| check_qmark_level_sum(1..=c.depth.min(16))
    ),
    identity!(
        "qmark-path-corollaries",
        "?(PR^n) = n+?(P), ?(PL^(n+1)) = ?(PL)/2^n, ?(PLR^nL) = 1-2^-n+2^-(n+1)?(PL)",
        |c| check_qmark_path_corollaries(20 * u64::from(c.depth), 12, 8)
    ),
    identity!(
        "qmark-translation",
        "?(1+r) = 1+?(r) and floor ?(r) = floor r",
        |c| check_qmark_translation(100 * u64::from(c.depth), 1_000_000)
    ),
    identity!(
        "qmark-diagonal-map",
        "? along L_i is x -> alpha + x/2^k with x = 2^(1-j)",
        |c| check_qmark_diagonal_maps((4 * u64::from(c.depth)).min(64), 32)
    ),
];

pub fn identity_names() -> impl Iterator<Item = &'static str> {
    IDENTITIES.iter().map(|i| i.name)
}

/// Runs the selected identities (all when `selection` is `None`) in parallel;
/// report order is always suite order.
pub fn run_suite(config: &SuiteConfig, selection: Option<&[String]>) -> Result<VerifyReport> {
    if config.depth < 2 {
        return Err(Error::domain("verification depth must be at least 2"));
    }
    if let Some(sel) = selection {
        if let Some(bad) = sel
            .iter()
            .find(|s| !IDENTITIES.iter().any(|i| i.name == s.as_str()))
        {
            return Err(Error::domain(format!("unknown identity `{bad}`")));
        }
    }
    let chosen: Vec<&Identity> = IDENTITIES
        .iter()
        .filter(|i| selection.is_none_or(|sel| sel.iter().any(|s| s == i.name)))
        .collect();
    let checks = chosen
        .par_iter()
        .map(|id| CheckReport::from_outcome(id.name, id.anchor, (id.run)(config)))
        .collect();
    Ok(VerifyReport {
        depth: config.depth,
        checks,
    })
}

/// `3 * 2^(n-2) - 1/2` for `n >= 2`, and `1` at the root.
pub fn expected_level_sum(n: u32) -> Fraction {
    if n == 1 {
        return Fraction::one();
    }
    // (3 * 2^(n-1) - 1) / 2
    let num = (BigUint::from(3u32) << (n - 1)) - 1u32;
    Fraction::new(num, 2u32).expect("positive")
}

pub fn expected_trace_sum(n: u32) -> BigUint {
    BigUint::from(2u32) * BigUint::from(3u32).pow(n - 1)
}

fn for_levels(levels: RangeInclusive<u32>, mut f: impl FnMut(u32, &mut Outcome)) -> Outcome {
    let mut out = Outcome::default();
    for n in levels {
        f(n, &mut out);
    }
    out
}

pub fn check_reduced(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        for r in level_iter(n) {
            out.check(r.num().gcd(r.den()).is_one(), || format!("{r}"));
        }
    })
}

/// Pairwise distinctness over `levels`, plus a census below `census_depth`:
/// every reduced `p/q` with continued-fraction digit sum at most
/// `census_depth` is a tree node at exactly that depth range.
pub fn check_unique(depth: u32, census_depth: u32) -> Outcome {
    let mut out = Outcome::default();
    let mut seen: HashSet<Fraction> = HashSet::new();
    for n in 1..=depth {
        for r in level_iter(n) {
            let witness = r.to_string();
            out.check(seen.insert(r), || format!("{witness} repeated"));
        }
    }
    // Digit sum <= d forces p, q <= F(d+1).
    let (mut fa, mut fb) = (1u64, 1u64);
    for _ in 1..census_depth {
        (fa, fb) = (fb, fa + fb);
    }
    let mut census = 0u64;
    for p in 1..=fb {
        for q in 1..=fb {
            if p.gcd(&q) != 1 {
                continue;
            }
            let digit_sum = euclid_digit_sum(p, q);
            if digit_sum <= u64::from(census_depth) {
                census += 1;
                let r = Fraction::new(p, q).expect("positive");
                let present = seen.contains(&r);
                out.check(present, || format!("{r} (digit sum {digit_sum}) missing"));
            }
        }
    }
    let expected = (1u64 << census_depth) - 1;
    out.check(census == expected, || {
        format!("{census} rationals with digit sum <= {census_depth}, tree has {expected}")
    });
    out.observe(format!("census depth {census_depth}: {census} rationals"));
    out
}

fn euclid_digit_sum(mut p: u64, mut q: u64) -> u64 {
    let mut s = 0;
    while q != 0 {
        s += p / q;
        (p, q) = (q, p % q);
    }
    s
}

pub fn check_adjacent(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let mut prev: Option<Fraction> = None;
        for r in level_iter(n) {
            if let Some(p) = &prev {
                out.check(p.den() == r.num(), || format!("{p}, {r} at level {n}"));
            }
            prev = Some(r);
        }
    })
}

pub fn check_reciprocal_symmetry(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let width = 1u64 << (n - 1);
        for (i, r) in level_iter(n).enumerate() {
            let mirror_rank = BigUint::from(2 * width - 1 - i as u64);
            let mirror = unrank(&mirror_rank).expect("rank >= 1");
            out.check(mirror == r.recip(), || {
                format!("{r} vs mirror {mirror} at level {n}")
            });
        }
    })
}

pub fn check_children_product(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        for r in level_iter(n) {
            let (l, rc) = children(&r);
            out.check(&l * &rc == r, || format!("{r}"));
        }
    })
}

pub fn check_level_product(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let p = streaming_level_stats(n).product;
        out.check(p.is_one(), || format!("level {n}: {p}"));
    })
}

pub fn check_simplicity_sum(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let s = streaming_level_stats(n).simplicity_sum;
        out.check(s.is_one(), || format!("level {n}: {s}"));
    })
}

pub fn check_complexity_square(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let stats = level_stats(n);
        out.check(stats.complexity_product_is_square(), || {
            format!("level {n}: product of ab is not a square")
        });
    })
}

pub fn check_trace_sum(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let t = streaming_level_stats(n).trace_sum;
        out.observe(format!("n={n}: {t}"));
        let expected = expected_trace_sum(n);
        out.check(t == expected, || format!("level {n}: {t} != {expected}"));
    })
}

pub fn check_complexity_trace(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let complexity: BigUint = level_iter(n).map(|r| r.complexity()).sum();
        let prev: BigUint = level_iter(n - 1)
            .map(|r| {
                let t = r.trace();
                &t * &t
            })
            .sum();
        out.check(complexity == prev, || {
            format!("level {n}: {complexity} != {prev}")
        });
    })
}

pub fn check_level_sum(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let s = streaming_level_stats(n).sum;
        out.observe(format!("n={n}: {s}"));
        let expected = expected_level_sum(n);
        out.check(s == expected, || format!("level {n}: {s} != {expected}"));
    })
}

/// Streaming-safe level identities in a single pass per level: adjacency,
/// product, simplicity sum, trace sum and level sum.
pub fn check_streaming_identities(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let s = streaming_level_stats(n);
        out.check(s.adjacency_violations == 0, || {
            format!("level {n}: adjacency")
        });
        out.check(s.product.is_one(), || {
            format!("level {n}: product {}", s.product)
        });
        out.check(s.simplicity_sum.is_one(), || {
            format!("level {n}: simplicity sum {}", s.simplicity_sum)
        });
        out.check(s.trace_sum == expected_trace_sum(n), || {
            format!("level {n}: trace sum {}", s.trace_sum)
        });
        out.check(s.sum == expected_level_sum(n), || {
            format!("level {n}: sum {}", s.sum)
        });
    })
}

pub fn check_path_roundtrip(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let base = 1u64 << (n - 1);
        for (i, r) in level_iter(n).enumerate() {
            let p = path_of(&r);
            // independent: the path spelled by the breadth-first rank bits
            let from_rank = path_of_rank(&BigUint::from(base + i as u64)).expect("rank >= 1");
            out.check(p == from_rank && fraction_at(&p) == r, || {
                format!("{r}: {p}")
            });
        }
    })
}

pub fn check_rank_roundtrip(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let base = 1u64 << (n - 1);
        for (i, r) in level_iter(n).enumerate() {
            let k = BigUint::from(base + i as u64);
            let ok = rank_of(&r).as_ref() == Ok(&k) && unrank(&k).as_ref() == Ok(&r);
            out.check(ok, || format!("{r} at rank {k}"));
        }
    })
}

pub fn check_cf_digit_sum(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let level = BigUint::from(n);
        for r in level_iter(n) {
            let c = to_cf(&r);
            out.check(c.digit_sum() == level, || format!("{r} = {c} at level {n}"));
        }
    })
}

/// Tree nodes over `levels`, then `samples` random `p/q` with parts up to
/// `max_part`.
pub fn check_cf_roundtrip(levels: RangeInclusive<u32>, samples: u64, max_part: u64) -> Outcome {
    let mut out = for_levels(levels, |n, out| {
        for r in level_iter(n) {
            let back = from_cf(&to_cf(&r));
            out.check(back == r, || format!("{r} -> {back}"));
        }
    });
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..samples {
        let r = Fraction::new(rng.gen_range(1..=max_part), rng.gen_range(1..=max_part))
            .expect("positive");
        let back = from_cf(&to_cf(&r));
        out.check(back == r, || format!("{r} -> {back}"));
    }
    out
}

/// Both compositions against the path found by parent iteration.
pub fn check_cf_path(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        for r in level_iter(n) {
            let by_parents = path_by_parents(&r);
            let c = to_cf(&r);
            let via_cf = cf_to_path(&c);
            out.check(via_cf.as_ref() == Ok(&by_parents), || {
                format!("{r} = {c}: {via_cf:?} vs {by_parents}")
            });
            let back = path_to_cf(&by_parents);
            out.check(back == c, || {
                format!("{by_parents} -> {back}, expected {c}")
            });
        }
    })
}

/// Single-step parent walk, independent of the batched `path_of`.
fn path_by_parents(r: &Fraction) -> Path {
    let mut steps = Vec::new();
    let mut cur = r.clone();
    while let Ok(p) = parent(&cur) {
        steps.push(if cur.num() < cur.den() {
            Direction::Left
        } else {
            Direction::Right
        });
        cur = p;
    }
    steps.reverse();
    Path::from_steps(steps)
}

pub fn check_cf_reciprocal(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        for r in level_iter(n).filter(|r| r.num() > r.den()) {
            let mut expected = vec![BigUint::zero()];
            expected.extend(to_cf(&r).into_terms());
            let got = to_cf(&r.recip());
            out.check(got.terms() == expected.as_slice(), || {
                format!("1/({r}) -> {got}")
            });
        }
    })
}

pub fn check_diagonal_list() -> Outcome {
    let mut out = Outcome::default();
    for (i, coeffs) in golden::DIAGONAL_LIST.iter().enumerate() {
        let d = diagonal(i as u64 + 1).expect("n >= 1");
        let got = [&d.a, &d.b, &d.c, &d.d].map(|x| x.to_u64());
        out.check(got == coeffs.map(Some), || {
            format!("L{} = {}", i + 1, d.label())
        });
    }
    for (i, label) in golden::DIAGONAL_LABELS.iter().enumerate() {
        let d = diagonal(i as u64 + 1).expect("n >= 1");
        out.check(d.label() == *label, || {
            format!("L{}: {} != {label}", i + 1, d.label())
        });
    }
    out
}

/// Recurrence against the column of the level matrix, read from the tree by
/// breadth-first rank. Right diagonals are checked as reciprocals.
pub fn check_diagonal_column(max_n: u64, max_j: u64) -> Outcome {
    let mut out = Outcome::default();
    for n in 1..=max_n {
        let d = diagonal(n).expect("n >= 1");
        let top = u64::from(64 - (n - 1).leading_zeros()); // ceil(log2 n)
        for j in 1..=max_j {
            let level = top + j;
            let rank = (BigUint::one() << (level - 1)) + n - 1u32;
            let column = unrank(&rank).expect("rank >= 1");
            let jj = BigUint::from(j);
            let elem = d.element(&jj).expect("j >= 1");
            out.check(elem == column, || {
                format!("L{n}({j}) = {elem}, tree has {column}")
            });
            let right = crate::diagonal::right_diagonal_element(n, &jj).expect("j >= 1");
            out.check(right == column.recip(), || format!("R{n}({j}) = {right}"));
        }
    }
    out
}

pub fn check_diagonal_determinant(max_n: u64) -> Outcome {
    let mut out = Outcome::default();
    let minus_one = BigInt::from(-1);
    for n in 1..=max_n {
        let d = diagonal(n).expect("n >= 1");
        let det = d.determinant();
        out.check(det == minus_one, || format!("L{n}: ad - bc = {det}"));
    }
    out
}

/// `(a, c)` from the coefficient rule and `(b, d)` from the constant-index
/// formula, against the recurrence, for `2 <= n <= max_n`.
pub fn check_diagonal_coefficients(max_n: u64) -> Outcome {
    let mut out = Outcome::default();
    for n in 2..=max_n {
        let d = diagonal(n).expect("n >= 1");
        let (a, c) = coefficient_ratio(n - 1).expect("n - 1 >= 1");
        out.check(a == d.a && c == d.c, || {
            format!("L{n} coefficients {a}/{c} vs {d}")
        });
        let (b, dd) = constant_terms(n - 1).expect("n - 1 >= 1");
        out.check(b == d.b && dd == d.d, || {
            format!("L{n} constants {b}/{dd} vs {d}")
        });
    }
    out
}

pub fn check_diagonal_limit(max_n: u64) -> Outcome {
    let mut out = Outcome::default();
    for n in 2..=max_n {
        let got = diagonal_limit(n).expect("n >= 1");
        let expected = Fraction::new(stern(n - 2), stern(n - 1)).expect("positive");
        out.check(got.as_ref() == Some(&expected), || {
            format!("lim L{n} = {got:?}, expected {expected}")
        });
    }
    out.check(diagonal_limit(1) == Ok(None), || "L1 limit".to_string());
    out
}

/// Pairwise distinctness of limits; partial evidence for uniqueness of the
/// diagonal converging to a given rational.
pub fn check_limits_distinct(max_n: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut seen = HashSet::new();
    for n in 2..=max_n {
        let lim = diagonal_limit(n).expect("n >= 1").expect("n >= 2");
        let witness = lim.to_string();
        out.check(seen.insert(lim), || format!("L{n} repeats limit {witness}"));
    }
    out
}

/// `|x - y|` as an unreduced `(num, den)` pair; `y = None` means 0.
fn distance(x: &Fraction, y: Option<&Fraction>) -> (BigUint, BigUint) {
    match y {
        None => (x.num().clone(), x.den().clone()),
        Some(y) => {
            let lhs = BigInt::from(x.num() * y.den());
            let rhs = BigInt::from(y.num() * x.den());
            ((lhs - rhs).into_parts().1, x.den() * y.den())
        }
    }
}

pub fn check_diagonal_convergence(max_n: u64, max_j: u64) -> Outcome {
    let mut out = Outcome::default();
    for n in 1..=max_n {
        let d = diagonal(n).expect("n >= 1");
        let lim = d.limit();
        let mut prev: Option<(BigUint, BigUint)> = None;
        for j in 1..=max_j {
            let x = d.element(&BigUint::from(j)).expect("j >= 1");
            let cur = distance(&x, lim.as_ref());
            if let Some((pn, pd)) = &prev {
                let shrinks = &cur.0 * pd < pn * &cur.1;
                out.check(shrinks, || format!("L{n} at j={j}"));
            }
            prev = Some(cur);
        }
    }
    out
}

/// Every reduced `p/q` in `(n-1, n]` with `q <= max_den` lies on a diagonal
/// of the family `2^n i - 2^(n-1)`; conversely the first `converse` elements
/// of the first `converse` family members land in `(n-1, n]`.
pub fn check_coverage(ns: RangeInclusive<u32>, max_den: u64, converse: u64) -> Outcome {
    let mut out = Outcome::default();
    for n in ns {
        let (lo, hi) = (u64::from(n) - 1, u64::from(n));
        for q in 1..=max_den {
            for p in (lo * q + 1)..=(hi * q) {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let r = Fraction::new(p, q).expect("positive");
                out.check(locate_in_family(&r, n).is_some(), || {
                    format!("{r} not on any L_(2^{n} i - 2^{})", n - 1)
                });
            }
        }
        for i in 1..=converse {
            let idx = coverage_family_index(n, i).expect("small index");
            let diag = diagonal(idx).expect("idx >= 1");
            for j in 1..=converse {
                let x = diag.element(&BigUint::from(j)).expect("j >= 1");
                let inside = x.num() > &(x.den() * lo) && x.num() <= &(x.den() * hi);
                out.check(inside, || format!("L{idx}({j}) = {x} outside ({lo}, {hi}]"));
            }
        }
    }
    out
}

/// The family member `i` and element `j` holding `r`, if `r` lies on the
/// family for `n`. The tree address fixes the only candidate diagonal
/// (its position); membership is then confirmed by solving on it.
pub fn locate_in_family(r: &Fraction, n: u32) -> Option<(u64, BigUint)> {
    let addr = address_of(r).ok()?;
    let pos = addr.position.to_u64()?;
    let step = 1u64.checked_shl(n)?;
    if (pos + step / 2) % step != 0 {
        return None;
    }
    let i = (pos + step / 2) / step;
    if coverage_family_index(n, i)? != pos {
        return None;
    }
    let j = solve_membership(r, pos).ok()??;
    let top = u64::from(64 - (pos - 1).leading_zeros());
    (j == BigUint::from(addr.level - top)).then_some((i, j))
}

/// Stern values from breadth-first numerators against the classical
/// diatomic recurrence.
pub fn check_stern_diatomic(max_m: u64) -> Outcome {
    let mut out = Outcome::default();
    let len = usize::try_from(max_m + 2).expect("fits");
    let mut s = vec![0u64; len + 1];
    s[1] = 1;
    for k in 2..=len {
        s[k] = if k % 2 == 0 {
            s[k / 2]
        } else {
            s[k / 2] + s[k / 2 + 1]
        };
    }
    for m in 0..=max_m {
        let b = stern(m);
        let expected = s[m as usize + 1];
        out.check(b == BigUint::from(expected), || {
            format!("b_{m} = {b}, s({}) = {expected}", m + 1)
        });
    }
    out
}

/// The non-canonical alias `[.., a_k - 1, 1]` of a canonical expansion.
fn alias(c: &ContinuedFraction) -> ContinuedFraction {
    let mut terms = c.terms().to_vec();
    *terms.last_mut().expect("nonempty") -= 1u32;
    terms.push(BigUint::one());
    ContinuedFraction::new(terms).expect("valid alias")
}

pub fn check_qmark_alias(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        for r in level_iter(n) {
            let c = to_cf(&r);
            let a = alias(&c);
            let (x, y) = (qmark_of_cf(&c), qmark_of_cf(&a));
            out.check(x == y && from_cf(&a) == r, || {
                format!("{c}: {x} vs {a}: {y}")
            });
        }
    })
}

pub fn check_qmark_order(depth: u32) -> Outcome {
    let mut out = Outcome::default();
    let mut all: Vec<Fraction> = (1..=depth).flat_map(level_iter).collect();
    all.sort();
    let images: Vec<Dyadic> = all.iter().map(qmark).collect();
    for (w, v) in all.windows(2).zip(images.windows(2)) {
        out.check(v[0] < v[1], || {
            format!("?({}) = {} !< ?({}) = {}", w[0], v[0], w[1], v[1])
        });
    }
    out
}

pub fn check_qmark_children(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        for r in level_iter(n) {
            let (l, rc) = children(&r);
            let got = qmark_children(&r, &qmark(&r));
            let expected = (qmark(&l), qmark(&rc));
            out.check(got.as_ref() == Ok(&expected), || {
                format!("{r}: {got:?} vs {expected:?}")
            });
        }
    })
}

pub fn check_qmark_level_sum(levels: RangeInclusive<u32>) -> Outcome {
    for_levels(levels, |n, out| {
        let (images, values) = qmark_level_sum(n);
        let expected = expected_level_sum(n);
        out.observe(format!("n={n}: {images}"));
        out.check(images.eq_fraction(&values) && values == expected, || {
            format!("level {n}: sum ? = {images}, sum = {values}, expected {expected}")
        });
    })
}

pub fn check_qmark_path_corollaries(samples: u64, max_len: u64, max_n: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(1));
    for _ in 0..samples {
        let len = rng.gen_range(0..=max_len);
        let steps: Vec<Direction> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Direction::Right
                } else {
                    Direction::Left
                }
            })
            .collect();
        let p = Path::from_steps(steps);
        let n = rng.gen_range(1..=max_n);
        let res = qmark_path_identity_check(&p, n);
        let ok = res.as_ref().is_ok_and(|r| r.all());
        out.check(ok, || format!("P = {p}, n = {n}: {res:?}"));
    }
    out
}

pub fn check_qmark_translation(samples: u64, max_part: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(2));
    let one = BigUint::one();
    for _ in 0..samples {
        let r = Fraction::new(rng.gen_range(1..=max_part), rng.gen_range(1..=max_part))
            .expect("positive");
        let x = qmark(&r);
        let shifted = qmark(&r.add_integer(&one));
        out.check(shifted == &x + &Dyadic::one(), || {
            format!("?(1 + {r}) = {shifted}, ?({r}) = {x}")
        });
        out.check(x.floor() == r.floor(), || {
            format!("floor ?({r}) = {}", x.floor())
        });
    }
    out
}

/// Solved maps for `L1..=L_max_i`, each verified on `j <= max_j`, and the
/// reference maps for `i <= 32`.
pub fn check_qmark_diagonal_maps(max_i: u64, max_j: u64) -> Outcome {
    let mut out = Outcome::default();
    for i in 1..=max_i {
        let map = qmark_diagonal_map_checked(i, max_j);
        if i <= 4 {
            if let Ok(m) = &map {
                out.observe(format!("L{i}: {m}"));
            }
        }
        let matches_reference = match (&map, usize::try_from(i)) {
            (Ok(m), Ok(idx)) if idx <= golden::QMARK_DIAGONAL_MAPS.len() => {
                reference_map(idx).as_ref() == Some(m)
            }
            (Ok(_), _) => true,
            (Err(_), _) => false,
        };
        out.check(matches_reference, || format!("L{i}: {map:?}"));
    }
    out
}

fn reference_map(i: usize) -> Option<crate::qmark::AffineDyadicMap> {
    let (p, q, scale) = golden::QMARK_DIAGONAL_MAPS[i - 1];
    if !q.is_power_of_two() || !scale.is_power_of_two() {
        return None;
    }
    Some(crate::qmark::AffineDyadicMap {
        offset: Dyadic::new(p, u64::from(q.trailing_zeros())),
        shift: u64::from(scale.trailing_zeros()),
    })
}

/// Reference renderings: the first five tree rows, the labels of the
/// diagonal tree and its image under `?`.
pub fn check_golden() -> Outcome {
    let mut out = Outcome::default();
    for (n, row) in (1u32..).zip(golden::TREE_ROWS) {
        let got = level_iter(n)
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.check(got == row, || format!("level {n}: {got}"));
    }
    for (i, label) in (1u64..).zip(golden::DIAGONAL_LABELS) {
        let got = diagonal(i).map(|d| d.label());
        out.check(got.as_deref() == Ok(label), || {
            format!("L{i}: {got:?} != {label}")
        });
    }
    for i in 1..=golden::QMARK_DIAGONAL_MAPS.len() {
        let got = crate::qmark::qmark_diagonal_map(i as u64).map(|m| m.label());
        let expected = golden::qmark_diagonal_label(i);
        out.check(got.as_deref() == Ok(expected.as_str()), || {
            format!("?(L{i}): {got:?} != {expected}")
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::diagonal_element;

    fn run(depth: u32, name: &str) -> CheckReport {
        let sel = vec![name.to_string()];
        let report = run_suite(&SuiteConfig::new(depth), Some(&sel)).unwrap();
        report.checks.into_iter().next().unwrap()
    }

    #[test]
    fn names_are_unique() {
        let names: HashSet<_> = identity_names().collect();
        assert_eq!(names.len(), IDENTITIES.len());
        assert!(IDENTITIES.len() >= 15);
    }

    #[test]
    fn trace_sum_observations() {
        let r = run(2, "trace-sum");
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.observations, vec!["n=1: 2", "n=2: 6"]);
    }

    #[test]
    fn level_sum_observation() {
        let r = run(3, "level-sum");
        assert_eq!(r.status, Status::Pass);
        assert!(r.observations.iter().any(|o| o == "n=3: 11/2"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(run_suite(&SuiteConfig::new(1), None).is_err());
        let sel = vec!["no-such-identity".to_string()];
        assert!(run_suite(&SuiteConfig::new(4), Some(&sel)).is_err());
    }

    #[test]
    fn full_suite_passes_at_depth_8() {
        let report = run_suite(&SuiteConfig::new(8), None).unwrap();
        let failed: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| (c.name, c.counterexample.clone()))
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(report.checks.len(), IDENTITIES.len());
        assert!(report.checks.iter().all(|c| c.instances > 0));
    }

    #[test]
    fn golden_renderings() {
        let out = check_golden();
        assert!(out.passed(), "{:?}", out.counterexample);
    }

    #[test]
    fn fail_reports_first_counterexample() {
        let mut out = Outcome::default();
        out.check(true, || "a".into());
        out.check(false, || "b".into());
        out.check(false, || "c".into());
        assert_eq!(out.instances, 3);
        assert_eq!(out.counterexample.as_deref(), Some("b"));
    }

    #[test]
    fn coverage_locates_examples() {
        let r = Fraction::new(5u32, 3u32).unwrap();
        let (i, j) = locate_in_family(&r, 2).unwrap();
        let idx = coverage_family_index(2, i).unwrap();
        assert_eq!(diagonal_element(idx, &j).unwrap(), r);
        assert!(locate_in_family(&r, 1).is_none());
    }
}
