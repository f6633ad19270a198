//! The imprimitive pipeline: block-class intersection patterns and their b2
//! statistic, feasible (v,c,d) triples for k = 5, full-wreath block counts
//! and designs, and catalog-driven classification of block-transitive
//! point-imprimitive designs.

use rayon::prelude::*;

use crate::design::Design;
use crate::error::{Error, Result};
use crate::group::{BlockSystem, PermGroup};
use crate::io::CatalogEntry;
use crate::subsets::{binomial, PairCounts, SubsetOrbits};
use crate::{construct, design};

/// Delandtsheer–Doyen bound for k = 5: v <= (C(5,2)-1)^2.
pub const POINT_BOUND_K5: u32 = 81;

/// A weakly decreasing intersection vector of a k-block with the d classes
/// of a block system, padded with zeros to length d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionPattern {
    parts: Vec<u32>,
}

impl PartitionPattern {
    pub fn new(mut parts: Vec<u32>, c: u32) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.iter().any(|&x| x > c) {
            return Err(Error::Invalid(format!("pattern part exceeds class size {c}")));
        }
        Ok(PartitionPattern { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// b2 = sum of x_i (x_i - 1); always even.
    pub fn b2(&self) -> u64 {
        self.parts.iter().map(|&x| (x as u64) * (x as u64).saturating_sub(1)).sum()
    }
}

impl std::fmt::Display for PartitionPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

pub fn b2_of(pattern: &PartitionPattern) -> u64 {
    pattern.b2()
}

/// b2 required by the 2-design condition: k(k-1)(c-1)/(v-1), if integral.
pub fn required_b2(v: u32, c: u32, k: u32) -> Option<u64> {
    if v < 2 {
        return None;
    }
    let num = (k as u64) * (k as u64 - 1) * (c as u64 - 1);
    if num % (v as u64 - 1) != 0 {
        return None;
    }
    Some(num / (v as u64 - 1))
}

/// All weakly decreasing patterns of `k` into at most `d` parts, each at most
/// `c`, whose b2 matches `target` (> 0).
pub fn patterns_for(c: u32, d: u32, k: u32, target: u64) -> Vec<PartitionPattern> {
    let mut out = Vec::new();
    if target == 0 {
        return out;
    }
    let mut parts: Vec<u32> = Vec::new();
    fn rec(parts: &mut Vec<u32>, remaining: u32, max_part: u32, slots: u32, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(parts.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = max_part.min(remaining);
        for x in (1..=hi).rev() {
            parts.push(x);
            rec(parts, remaining - x, x, slots - 1, out);
            parts.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&mut parts, k, c.min(k), d, &mut raw);
    for mut p in raw {
        p.resize(d as usize, 0);
        let pat = PartitionPattern { parts: p };
        if pat.b2() == target {
            out.push(pat);
        }
    }
    out
}

/// A feasible (v, c, d) with the pattern(s) realizing the required b2.
#[derive(Clone, Debug)]
pub struct FeasibleTriple {
    pub v: u32,
    pub c: u32,
    pub d: u32,
    pub patterns: Vec<PartitionPattern>,
}

/// Enumerate the feasible triples for block size `k` under the point bound
/// v <= (C(k,2)-1)^2 (and k < v-1, per the design definition). For k = 5
/// this yields exactly (16,4,4), (21,3,7), (21,7,3), (81,9,9).
pub fn feasible_triples(k: u32) -> Vec<FeasibleTriple> {
    let bound = {
        let m = binomial(k as u64, 2) - 1;
        (m * m) as u32
    };
    let mut out = Vec::new();
    for c in 2..=bound / 2 {
        for d in 2..=bound / c {
            let v = c * d;
            if v <= k + 1 {
                continue; // design definition needs k < v - 1
            }
            let Some(b2) = required_b2(v, c, k) else { continue };
            let patterns = patterns_for(c, d, k, b2);
            if !patterns.is_empty() {
                out.push(FeasibleTriple { v, c, d, patterns });
            }
        }
    }
    out.sort_by_key(|t| (t.v, t.c));
    out
}

/// Orbit size of a pattern-x block under S_c wr S_d: the number of ways to
/// deal the pattern multiset to the d classes times the product of
/// within-class choices.
pub fn wreath_block_count(c: u32, d: u32, pattern: &PartitionPattern) -> u64 {
    let mut assignments = factorial(d as u64);
    let mut run = 1u64;
    for i in 0..pattern.parts.len() {
        if i > 0 && pattern.parts[i] == pattern.parts[i - 1] {
            run += 1;
        } else {
            run = 1;
        }
        assignments /= run;
    }
    let choices: u64 = pattern.parts.iter().map(|&x| binomial(c as u64, x as u64)).product();
    assignments.checked_mul(choices).expect("block count overflow")
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// The canonical pattern base block against the standard consecutive classes
/// {1..c}, {c+1..2c}, ...
pub fn pattern_base_block(c: u32, pattern: &PartitionPattern) -> Vec<u32> {
    let mut base = Vec::new();
    for (j, &x) in pattern.parts.iter().enumerate() {
        for i in 1..=x {
            base.push(j as u32 * c + i);
        }
    }
    base.sort_unstable();
    base
}

fn unique_feasible(c: u32, d: u32) -> Result<(FeasibleTriple, PartitionPattern)> {
    let triple = feasible_triples(5)
        .into_iter()
        .find(|t| t.c == c && t.d == d)
        .ok_or_else(|| Error::Infeasible(format!("({},{c},{d}) is not a feasible triple", c * d)))?;
    let pattern = triple.patterns[0].clone();
    Ok((triple, pattern))
}

/// Materialize the full-wreath design for a feasible (c,d) and verify it.
pub fn full_wreath_design(c: u32, d: u32, budget: u64) -> Result<(Design, u64)> {
    let (_, pattern) = unique_feasible(c, d)?;
    let g = construct::wreath_imprimitive(&construct::symmetric(c), d)?;
    let base = pattern_base_block(c, &pattern);
    let des = design::develop(&g, &base, budget)?;
    let expected_b = wreath_block_count(c, d, &pattern);
    if des.b() != expected_b {
        return Err(Error::Invalid(format!(
            "orbit size {} disagrees with closed-form count {expected_b}",
            des.b()
        )));
    }
    match des.verify_2design().lambda() {
        Some(lambda) => Ok((des, lambda)),
        None => Err(Error::Invalid("full wreath development is not a 2-design".into())),
    }
}

/// Count-mode for large triples: BFS the orbit block by block, accumulating
/// the full pair-count table in a streaming fashion, without materializing
/// the design. Returns (b, lambda).
pub fn full_wreath_count(c: u32, d: u32, budget: u64) -> Result<(u64, u64)> {
    let (triple, pattern) = unique_feasible(c, d)?;
    let g = construct::wreath_imprimitive(&construct::symmetric(c), d)?;
    let mut engine = SubsetOrbits::new(triple.v, g.generators())?;
    let mut pairs = PairCounts::new(triple.v);
    let base_vec = pattern_base_block(c, &pattern);
    let mut base = [0u8; 5];
    for (i, &p) in base_vec.iter().enumerate() {
        base[i] = p as u8;
    }
    let mut block = [0u32; 5];
    let b = engine.orbit_from(base, budget, |bl| {
        for i in 0..5 {
            block[i] = bl[i] as u32;
        }
        pairs.bump_block(&block);
    })?;
    let expected_b = wreath_block_count(c, d, &pattern);
    if b != expected_b {
        return Err(Error::Invalid(format!("streamed orbit size {b} != closed form {expected_b}")));
    }
    match pairs.uniform() {
        Ok(lambda) => Ok((b, lambda)),
        Err(_) => Err(Error::Invalid("full wreath orbit is not a 2-design".into())),
    }
}

/// One classified design: a transitive catalog group together with a base
/// block whose development it leaves invariant.
#[derive(Clone, Debug)]
pub struct ClassifiedDesign {
    pub catalog_index: u32,
    pub base: Vec<u32>,
    pub lambda: u64,
    pub design: Design,
}

pub struct ClassifyOutcome {
    pub rows: Vec<ClassifiedDesign>,
    /// (catalog index, reason) for entries that were skipped.
    pub skipped: Vec<(u32, String)>,
}

/// The §3.1 search: for every imprimitive catalog group, develop every
/// pattern-constrained base block (one representative per G-orbit) and keep
/// the 2-designs. Results are sorted by (lambda, catalog index, base).
pub fn classify(catalog: &[CatalogEntry], v: u32, budget: u64) -> Result<ClassifyOutcome> {
    for entry in catalog {
        if entry.group.degree() != v {
            return Err(Error::DegreeMismatch { left: entry.group.degree(), right: v });
        }
    }
    let per_entry: Vec<(u32, std::result::Result<Vec<ClassifiedDesign>, String>)> = catalog
        .par_iter()
        .map(|entry| (entry.index, classify_one(entry, v, budget)))
        .collect();

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (index, outcome) in per_entry {
        match outcome {
            Ok(mut r) => rows.append(&mut r),
            Err(reason) => skipped.push((index, reason)),
        }
    }
    rows.sort_by(|a, b| {
        (a.lambda, a.catalog_index, &a.base).cmp(&(b.lambda, b.catalog_index, &b.base))
    });
    Ok(ClassifyOutcome { rows, skipped })
}

fn classify_one(
    entry: &CatalogEntry,
    v: u32,
    budget: u64,
) -> std::result::Result<Vec<ClassifiedDesign>, String> {
    let g = &entry.group;
    if !g.is_transitive() {
        return Err("not transitive".into());
    }
    let systems = g.all_block_systems().map_err(|e| e.to_string())?;
    if systems.is_empty() {
        return Err("primitive".into());
    }
    // Every invariant partition of a block-transitive 2-design must carry a
    // pattern meeting the b2 condition; one infeasible system rules the group
    // out, and any single feasible system constrains the base blocks of all
    // its designs.
    let mut per_system: Vec<(&BlockSystem, Vec<PartitionPattern>)> = Vec::new();
    for sys in &systems {
        let c = sys.class_size();
        let Some(b2) = required_b2(v, c, 5) else {
            return Err(format!("system {}x{} has no integral b2", c, sys.num_classes()));
        };
        let patterns = patterns_for(c, sys.num_classes(), 5, b2);
        if patterns.is_empty() {
            return Err(format!("system {}x{} admits no pattern", c, sys.num_classes()));
        }
        per_system.push((sys, patterns));
    }
    let (sys, patterns) = &per_system[0];
    let candidates = pattern_blocks(sys, patterns, v);

    let mut rows = Vec::new();
    let mut visited: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
    for cand in candidates {
        if visited.contains(&cand) {
            continue;
        }
        let orbit = g.set_orbit(&cand, budget).map_err(|e| e.to_string())?;
        for member in &orbit {
            visited.insert(member.clone());
        }
        let des = Design::new(v, 5, orbit).map_err(|e| e.to_string())?;
        if let Some(lambda) = des.verify_2design().lambda() {
            rows.push(ClassifiedDesign {
                catalog_index: entry.index,
                base: cand,
                lambda,
                design: des,
            });
        }
    }
    Ok(rows)
}

/// All 5-subsets whose intersection vector with the classes of `sys` matches
/// one of `patterns`, in lexicographic order.
fn pattern_blocks(sys: &BlockSystem, patterns: &[PartitionPattern], v: u32) -> Vec<Vec<u32>> {
    let class_of: Vec<usize> = (1..=v).map(|p| sys.class_of(p)).collect();
    let d = sys.num_classes() as usize;
    let mut out = Vec::new();
    let mut subset = [0u32; 5];
    let mut counts = vec![0u32; d];
    fn rec(
        v: u32,
        start: u32,
        depth: usize,
        subset: &mut [u32; 5],
        counts: &mut Vec<u32>,
        class_of: &[usize],
        patterns: &[PartitionPattern],
        out: &mut Vec<Vec<u32>>,
    ) {
        if depth == 5 {
            let mut vec: Vec<u32> = counts.iter().copied().filter(|&x| x > 0).collect();
            vec.sort_unstable_by(|a, b| b.cmp(a));
            let matched = patterns.iter().any(|p| {
                let nz: Vec<u32> = p.parts().iter().copied().filter(|&x| x > 0).collect();
                nz == vec
            });
            if matched {
                out.push(subset.to_vec());
            }
            return;
        }
        for p in start..=v - (4 - depth as u32) {
            subset[depth] = p;
            counts[class_of[(p - 1) as usize]] += 1;
            rec(v, p + 1, depth + 1, subset, counts, class_of, patterns, out);
            counts[class_of[(p - 1) as usize]] -= 1;
        }
    }
    rec(v, 1, 0, &mut subset, &mut counts, &class_of, patterns, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORBIT_BUDGET;

    #[test]
    fn b2_examples() {
        let p = PartitionPattern::new(vec![2, 2, 1, 0], 4).unwrap();
        assert_eq!(p.b2(), 4);
        let p = PartitionPattern::new(vec![3, 1, 1], 7).unwrap();
        assert_eq!(p.b2(), 6);
        let p = PartitionPattern::new(vec![1, 1, 1, 1, 1], 5).unwrap();
        assert_eq!(p.b2(), 0);
    }

    #[test]
    fn required_b2_examples() {
        assert_eq!(required_b2(16, 4, 5), Some(4));
        assert_eq!(required_b2(21, 3, 5), Some(2));
        assert_eq!(required_b2(25, 5, 5), None); // 20*4/24 not integral
    }

    #[test]
    fn feasible_triples_k5() {
        let triples = feasible_triples(5);
        let shapes: Vec<(u32, u32, u32)> = triples.iter().map(|t| (t.v, t.c, t.d)).collect();
        assert_eq!(shapes, vec![(16, 4, 4), (21, 3, 7), (21, 7, 3), (81, 9, 9)]);
        for t in &triples {
            assert_eq!(t.patterns.len(), 1, "unique pattern for {:?}", shapes);
        }
        assert_eq!(triples[0].patterns[0].parts(), &[2, 2, 1, 0]);
        assert_eq!(triples[1].patterns[0].parts(), &[2, 1, 1, 1, 0, 0, 0]);
        assert_eq!(triples[2].patterns[0].parts(), &[3, 1, 1]);
        assert_eq!(triples[3].patterns[0].parts(), &[2, 1, 1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn wreath_block_counts() {
        let p = PartitionPattern::new(vec![2, 2, 1, 0], 4).unwrap();
        assert_eq!(wreath_block_count(4, 4, &p), 1728);
        let p = PartitionPattern::new(vec![2, 1, 1, 1, 0, 0, 0], 3).unwrap();
        assert_eq!(wreath_block_count(3, 7, &p), 11340);
        let p = PartitionPattern::new(vec![2, 1, 1, 1, 0, 0, 0, 0, 0], 9).unwrap();
        assert_eq!(wreath_block_count(9, 9, &p), 13_226_976);
    }

    #[test]
    fn full_wreath_small_designs() {
        let (d16, l16) = full_wreath_design(4, 4, DEFAULT_ORBIT_BUDGET).unwrap();
        assert_eq!((d16.b(), l16), (1728, 144));
        let (d37, l37) = full_wreath_design(3, 7, DEFAULT_ORBIT_BUDGET).unwrap();
        assert_eq!((d37.b(), l37), (11340, 540));
        let (d73, l73) = full_wreath_design(7, 3, DEFAULT_ORBIT_BUDGET).unwrap();
        assert_eq!((d73.b(), l73), (5145, 245));
    }

    #[test]
    fn streaming_count_agrees_with_materialized() {
        assert_eq!(full_wreath_count(4, 4, DEFAULT_ORBIT_BUDGET).unwrap(), (1728, 144));
        assert_eq!(full_wreath_count(7, 3, DEFAULT_ORBIT_BUDGET).unwrap(), (5145, 245));
    }

    #[test]
    fn orbit_count_oracle() {
        // wreath_block_count must equal exact orbit enumeration for the
        // three small triples.
        for (c, d) in [(4u32, 4u32), (3, 7), (7, 3)] {
            let (triple, pattern) = unique_feasible(c, d).unwrap();
            let g = construct::wreath_imprimitive(&construct::symmetric(c), d).unwrap();
            let orbit =
                g.set_orbit(&pattern_base_block(c, &pattern), DEFAULT_ORBIT_BUDGET).unwrap();
            assert_eq!(orbit.len() as u64, wreath_block_count(c, d, &pattern), "({c},{d})");
            let _ = triple;
        }
    }

    #[test]
    fn infeasible_triple_rejected() {
        assert!(full_wreath_design(5, 5, DEFAULT_ORBIT_BUDGET).is_err());
    }

    #[test]
    fn classify_cyclic21_finds_difference_set_designs() {
        let entry = CatalogEntry {
            degree: 21,
            index: 1,
            group: construct::cyclic(21),
            path: std::path::PathBuf::from("deg21_n1.grp"),
        };
        let outcome = classify(std::slice::from_ref(&entry), 21, DEFAULT_ORBIT_BUDGET).unwrap();
        assert!(outcome.skipped.is_empty());
        let lambda1: Vec<_> = outcome.rows.iter().filter(|r| r.lambda == 1).collect();
        assert!(!lambda1.is_empty(), "cyclic(21) must develop lambda=1 designs");
        for row in &lambda1 {
            assert_eq!(row.design.b(), 21);
        }
        // every orbit of {1,2,5,15,17} must appear exactly once
        let hit = outcome
            .rows
            .iter()
            .any(|r| r.design.blocks().contains(&vec![1, 2, 5, 15, 17]) && r.lambda == 1);
        assert!(hit);
    }

    #[test]
    fn classify_skips_intransitive_and_primitive() {
        let entries = vec![
            CatalogEntry {
                degree: 21,
                index: 7,
                group: PermGroup::new(
                    21,
                    vec![crate::perm::Permutation::parse("(1,2)", 21).unwrap()],
                )
                .unwrap(),
                path: std::path::PathBuf::from("deg21_n7.grp"),
            },
            CatalogEntry {
                degree: 21,
                index: 9,
                group: construct::symmetric(21),
                path: std::path::PathBuf::from("deg21_n9.grp"),
            },
        ];
        let outcome = classify(&entries, 21, DEFAULT_ORBIT_BUDGET).unwrap();
        assert!(outcome.rows.is_empty());
        assert_eq!(outcome.skipped.len(), 2);
    }

    use crate::group::PermGroup;
}
