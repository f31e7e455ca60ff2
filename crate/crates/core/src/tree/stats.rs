use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{BalancedFold, DenominatorSum, Fraction};

use super::level::LevelIter;

/// Levels at or below this size are aggregated on the calling thread.
const SEQUENTIAL_WIDTH: u64 = 1 << 12;
const CHUNKS: u64 = 64;

/// Exact aggregates over one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStats {
    pub level: u32,
    /// `Σ a/b`
    pub sum: Fraction,
    /// `Σ (a + b)`
    pub trace_sum: BigUint,
    /// `Σ 1/(ab)`
    pub simplicity_sum: Fraction,
    /// `Π a/b`
    pub product: Fraction,
    /// `Π ab`
    pub complexity_product: BigUint,
    /// `Σ ab`
    pub complexity_sum: BigUint,
    /// `Σ (a + b)^2` over the previous level; `None` at the root level.
    pub prev_trace_square_sum: Option<BigUint>,
}

impl LevelStats {
    /// Exact integer square root check on [`Self::complexity_product`].
    pub fn complexity_product_is_square(&self) -> bool {
        let root = self.complexity_product.sqrt();
        &root * &root == self.complexity_product
    }
}

/// The aggregates that stay cheap at deep levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamingLevelStats {
    pub level: u32,
    pub sum: Fraction,
    pub trace_sum: BigUint,
    pub simplicity_sum: Fraction,
    pub product: Fraction,
    /// Number of adjacent pairs `a/b, c/d` seen with `b != c`.
    pub adjacency_violations: u64,
}

#[derive(Debug)]
struct Partial {
    sum: Fraction,
    trace_sum: BigUint,
    simplicity_sum: Fraction,
    num_product: BigUint,
    den_product: BigUint,
    complexity_sum: BigUint,
    trace_square_sum: BigUint,
    first: Fraction,
    last: Fraction,
    adjacency_violations: u64,
}

fn aggregate(level: u32, first: u64, last: u64) -> Partial {
    let mut sum = DenominatorSum::new();
    let mut simplicity = BalancedFold::new(|a: Fraction, b: Fraction| &a + &b);
    let mut num_product = BalancedFold::new(|a: BigUint, b: BigUint| a * b);
    let mut den_product = BalancedFold::new(|a: BigUint, b: BigUint| a * b);
    let mut trace_sum = BigUint::zero();
    let mut complexity_sum = BigUint::zero();
    let mut trace_square_sum = BigUint::zero();
    let mut adjacency_violations = 0;
    let mut first_seen = None;
    let mut prev: Option<Fraction> = None;

    for f in LevelIter::range(level, first, last) {
        let t = f.trace();
        let c = f.complexity();
        sum.push(&f);
        simplicity.push(Fraction::from_coprime(BigUint::one(), c.clone()));
        num_product.push(f.num().clone());
        den_product.push(f.den().clone());
        trace_square_sum += &t * &t;
        trace_sum += t;
        complexity_sum += c;
        if let Some(p) = &prev {
            if p.den() != f.num() {
                adjacency_violations += 1;
            }
        }
        if first_seen.is_none() {
            first_seen = Some(f.clone());
        }
        prev = Some(f);
    }

    Partial {
        sum: sum.finish().expect("nonempty range"),
        trace_sum,
        simplicity_sum: simplicity.finish().expect("nonempty range"),
        num_product: num_product.finish().expect("nonempty range"),
        den_product: den_product.finish().expect("nonempty range"),
        complexity_sum,
        trace_square_sum,
        first: first_seen.expect("nonempty range"),
        last: prev.expect("nonempty range"),
        adjacency_violations,
    }
}

fn merge(a: Partial, b: Partial) -> Partial {
    let seam = u64::from(a.last.den() != b.first.num());
    Partial {
        sum: &a.sum + &b.sum,
        trace_sum: a.trace_sum + b.trace_sum,
        simplicity_sum: &a.simplicity_sum + &b.simplicity_sum,
        num_product: a.num_product * b.num_product,
        den_product: a.den_product * b.den_product,
        complexity_sum: a.complexity_sum + b.complexity_sum,
        trace_square_sum: a.trace_square_sum + b.trace_square_sum,
        first: a.first,
        last: b.last,
        adjacency_violations: a.adjacency_violations + b.adjacency_violations + seam,
    }
}

/// Splits the level into fixed position ranges, aggregates them in parallel
/// and merges in position order. Results do not depend on thread count.
fn aggregate_level(level: u32) -> Partial {
    let width = 1u64 << (level - 1);
    if width <= SEQUENTIAL_WIDTH {
        return aggregate(level, 1, width);
    }
    let chunk = width / CHUNKS;
    let parts: Vec<Partial> = (0..CHUNKS)
        .into_par_iter()
        .map(|i| aggregate(level, i * chunk + 1, (i + 1) * chunk))
        .collect();
    let mut fold = BalancedFold::new(merge);
    for p in parts {
        fold.push(p);
    }
    fold.finish().expect("CHUNKS > 0")
}

/// All seven exact aggregates of level `n` (`1 <= n <= 64`).
pub fn level_stats(n: u32) -> LevelStats {
    let cur = aggregate_level(n);
    let prev_trace_square_sum = (n >= 2).then(|| aggregate_level(n - 1).trace_square_sum);
    let product = Fraction::from_parts(cur.num_product.clone(), cur.den_product.clone());
    LevelStats {
        level: n,
        sum: cur.sum,
        trace_sum: cur.trace_sum,
        simplicity_sum: cur.simplicity_sum,
        product,
        complexity_product: cur.num_product * cur.den_product,
        complexity_sum: cur.complexity_sum,
        prev_trace_square_sum,
    }
}

/// Level sum, trace sum, simplicity sum, product and the adjacency property.
pub fn streaming_level_stats(n: u32) -> StreamingLevelStats {
    let cur = aggregate_level(n);
    StreamingLevelStats {
        level: n,
        product: Fraction::from_parts(cur.num_product, cur.den_product),
        sum: cur.sum,
        trace_sum: cur.trace_sum,
        simplicity_sum: cur.simplicity_sum,
        adjacency_violations: cur.adjacency_violations,
    }
}
