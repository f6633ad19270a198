//! Incidence structures: construction from base blocks, exact t-design
//! verification, parameter arithmetic, and the replication / subdegree
//! divisibility filters.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::subsets::{binomial, PairCounts};

/// A simple design: `v` points, `b` sorted k-blocks, lexicographically
/// ordered, no duplicates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Design {
    v: u32,
    k: u32,
    blocks: Vec<Vec<u32>>,
}

/// Outcome of a t-design check: either the common count, or a witness pair
/// of t-subsets with distinct counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniformity {
    Constant(u64),
    Witness { subset_a: Vec<u32>, count_a: u64, subset_b: Vec<u32>, count_b: u64 },
}

impl Uniformity {
    pub fn lambda(&self) -> Option<u64> {
        match self {
            Uniformity::Constant(l) => Some(*l),
            Uniformity::Witness { .. } => None,
        }
    }
}

impl Design {
    /// Validates points and block sizes, sorts blocks lexicographically, and
    /// rejects duplicate blocks.
    pub fn new(v: u32, k: u32, mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        if k == 0 || k > v {
            return Err(Error::Invalid(format!("block size {k} out of range for v={v}")));
        }
        for block in &mut blocks {
            if block.len() != k as usize {
                return Err(Error::Invalid(format!(
                    "block {:?} has size {}, expected {k}",
                    block,
                    block.len()
                )));
            }
            block.sort_unstable();
            for w in block.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::Invalid(format!("repeated point {} in a block", w[0])));
                }
            }
            if block[0] == 0 || *block.last().unwrap() > v {
                return Err(Error::Invalid(format!("block {:?} out of range 1..={v}", block)));
            }
        }
        blocks.sort_unstable();
        for w in blocks.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Invalid(format!("duplicate block {:?}", w[0])));
            }
        }
        Ok(Design { v, k, blocks })
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn b(&self) -> u64 {
        self.blocks.len() as u64
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Exact 2-design check over the full triangular pair table.
    pub fn verify_2design(&self) -> Uniformity {
        let mut pc = PairCounts::new(self.v);
        for block in &self.blocks {
            pc.bump_block(block);
        }
        match pc.uniform() {
            Ok(lambda) => Uniformity::Constant(lambda),
            Err((pa, ca, pb, cb)) => Uniformity::Witness {
                subset_a: vec![pa.0, pa.1],
                count_a: ca,
                subset_b: vec![pb.0, pb.1],
                count_b: cb,
            },
        }
    }

    /// t-design check for t in 1..=3 by exact t-subset counting.
    pub fn verify_tdesign(&self, t: u32) -> Result<Uniformity> {
        if !(1..=3).contains(&t) || t > self.k {
            return Err(Error::Invalid(format!("t={t} unsupported (need 1..=3, t <= k)")));
        }
        if t == 2 {
            return Ok(self.verify_2design());
        }
        let idx = |s: &[u32]| -> usize {
            // colex rank of sorted t-subset
            s.iter()
                .enumerate()
                .map(|(i, &p)| binomial(p as u64 - 1, i as u64 + 1))
                .sum::<u64>() as usize
        };
        let mut counts = vec![0u64; binomial(self.v as u64, t as u64) as usize];
        let mut sub = vec![0u32; t as usize];
        for block in &self.blocks {
            each_subset(block, t as usize, &mut sub, &mut |s| counts[idx(s)] += 1);
        }
        // scan in lex order of t-subsets
        let reference_subset: Vec<u32> = (1..=t).collect();
        let reference = counts[idx(&reference_subset)];
        let mut witness = None;
        let mut cur = reference_subset.clone();
        loop {
            let c = counts[idx(&cur)];
            if c != reference {
                witness = Some((cur.clone(), c));
                break;
            }
            if !next_subset(&mut cur, self.v) {
                break;
            }
        }
        Ok(match witness {
            Some((s, c)) => Uniformity::Witness {
                subset_a: s,
                count_a: c,
                subset_b: reference_subset,
                count_b: reference,
            },
            None if reference > 0 => Uniformity::Constant(reference),
            None => Uniformity::Witness {
                subset_a: reference_subset.clone(),
                count_a: 0,
                subset_b: reference_subset,
                count_b: 0,
            },
        })
    }

    /// Sorted multiset of pair counts; an isomorphism invariant.
    pub fn pair_degree_multiset(&self) -> Vec<u64> {
        let mut pc = PairCounts::new(self.v);
        for block in &self.blocks {
            pc.bump_block(block);
        }
        let mut out = Vec::with_capacity((self.v as usize * (self.v as usize - 1)) / 2);
        for p in 1..self.v {
            for q in p + 1..=self.v {
                out.push(pc.get(p, q));
            }
        }
        out.sort_unstable();
        out
    }

    /// Replication numbers per point, as an invariant and for t=1 checks.
    pub fn point_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.v as usize];
        for block in &self.blocks {
            for &p in block {
                deg[(p - 1) as usize] += 1;
            }
        }
        deg
    }
}

fn each_subset(block: &[u32], t: usize, buf: &mut [u32], f: &mut impl FnMut(&[u32])) {
    fn rec(block: &[u32], t: usize, start: usize, depth: usize, buf: &mut [u32], f: &mut impl FnMut(&[u32])) {
        if depth == t {
            f(&buf[..t]);
            return;
        }
        for i in start..=block.len() - (t - depth) {
            buf[depth] = block[i];
            rec(block, t, i + 1, depth + 1, buf, f);
        }
    }
    rec(block, t, 0, 0, buf, f);
}

/// Advance a sorted subset of `{1..v}` to its lex successor.
fn next_subset(s: &mut [u32], v: u32) -> bool {
    let t = s.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if s[i] < v - (t - 1 - i) as u32 {
            s[i] += 1;
            for j in i + 1..t {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The five tied parameters v, b, r, k, lambda of a 2-design.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
}

/// Derive (r, b) from (v, k, lambda); errors when the divisibility
/// conditions r = lambda(v-1)/(k-1) and b = vr/k fail.
pub fn params_from(v: u64, k: u64, lambda: u64) -> Result<DesignParams> {
    if v < 2 || k < 2 || k > v || lambda == 0 {
        return Err(Error::Infeasible(format!("degenerate parameters v={v} k={k} lambda={lambda}")));
    }
    let num_r = lambda.checked_mul(v - 1).ok_or_else(overflow)?;
    if num_r % (k - 1) != 0 {
        return Err(Error::Infeasible(format!("(k-1)={} does not divide lambda(v-1)={num_r}", k - 1)));
    }
    let r = num_r / (k - 1);
    let num_b = v.checked_mul(r).ok_or_else(overflow)?;
    if num_b % k != 0 {
        return Err(Error::Infeasible(format!("k={k} does not divide vr={num_b}")));
    }
    Ok(DesignParams { v, b: num_b / k, r, k, lambda })
}

fn overflow() -> Error {
    Error::Invalid("parameter arithmetic overflow".into())
}

/// Strict replication bound for k = 5: r > lambda * v / 5, i.e. 5r > lambda*v.
pub fn replication_bound_ok(p: &DesignParams) -> bool {
    debug_assert_eq!(p.k, 5);
    5 * p.r > p.lambda * p.v
}

/// Subdegree divisibility for k = 5: for every nontrivial subdegree d,
/// r must divide 5*lambda*d and v-1 must divide 20*d.
pub fn subdegree_divisibility_ok(p: &DesignParams, subdegrees: &[u64]) -> bool {
    debug_assert_eq!(p.k, 5);
    subdegrees.iter().filter(|&&d| d > 1).all(|&d| {
        5 * p.lambda * d % p.r == 0 && 20 * d % (p.v - 1) == 0
    })
}

/// Develop a base block into the orbit design `base^G`.
pub fn develop(g: &PermGroup, base: &[u32], budget: u64) -> Result<Design> {
    let blocks = g.set_orbit(base, budget)?;
    Design::new(g.degree(), base.len() as u32, blocks)
}

/// Replace the block set by its orbit under an overgroup `h` (the union of
/// h-orbits of the blocks, deduplicated).
pub fn develop_overgroup(d: &Design, h: &PermGroup, budget: u64) -> Result<Design> {
    if h.degree() != d.v() {
        return Err(Error::DegreeMismatch { left: h.degree(), right: d.v() });
    }
    let mut all: Vec<Vec<u32>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for block in d.blocks() {
        if seen.contains(block) {
            continue;
        }
        for img in h.set_orbit(block, budget)? {
            if seen.insert(img.clone()) {
                all.push(img);
                if all.len() as u64 > budget {
                    return Err(Error::OrbitBudget { budget });
                }
            }
        }
    }
    Design::new(d.v(), d.k(), all)
}

/// True iff every generator of `g` preserves the block set and the orbit of
/// the first block is the whole block set.
pub fn is_block_transitive(g: &PermGroup, d: &Design, budget: u64) -> Result<bool> {
    if g.degree() != d.v() {
        return Err(Error::DegreeMismatch { left: g.degree(), right: d.v() });
    }
    let blocks = d.blocks();
    if blocks.is_empty() {
        return Ok(false);
    }
    for gen in g.generators() {
        for block in blocks {
            let mut img: Vec<u32> = block.iter().map(|&p| gen.apply(p)).collect();
            img.sort_unstable();
            if blocks.binary_search(&img).is_err() {
                return Ok(false);
            }
        }
    }
    Ok(g.set_orbit(&blocks[0], budget)?.len() as u64 == d.b())
}
