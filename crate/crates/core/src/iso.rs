//! Design isomorphism via canonical labeling of the bipartite point–block
//! incidence structure: equitable refinement of ordered partitions,
//! individualization of points with automorphism-orbit pruning, and the
//! lexicographically least incidence bitstring as the certificate.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::design::Design;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default ceiling on search-tree nodes per canonical labeling.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Relabeling-invariant certificate: (v, b, k) as little-endian u32s followed
/// by the bit-packed incidence matrix (blocks sorted lexicographically under
/// the canonical point labels; within a block row, one bit per point).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalCert(Vec<u8>);

impl CanonicalCert {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_cert(d: &Design, node_budget: u64) -> Result<CanonicalCert> {
    Ok(canonical_labeling(d, node_budget)?.0)
}

/// The certificate together with a point relabeling realizing it:
/// `labeling.apply(p)` is the canonical label of point `p`.
pub fn canonical_labeling(d: &Design, node_budget: u64) -> Result<(CanonicalCert, Permutation)> {
    if d.v() > 256 {
        return Err(Error::Unsupported(format!("certificate mode needs v <= 256, got {}", d.v())));
    }
    if d.b() > 100_000 {
        return Err(Error::Unsupported(format!("certificate mode needs b <= 1e5, got {}", d.b())));
    }
    let mut search = Search::new(d, node_budget);
    let (point_cells, block_cells) = search.initial_partition();
    search.run(point_cells, block_cells)?;
    let best = search.best.expect("at least one leaf");
    let labeling = Permutation::from_images(best.1)?;
    Ok((CanonicalCert(best.0), labeling))
}

/// Isomorphism test. Fast invariant screen (v, k, b, pair-degree multiset),
/// then certificate comparison; on equality the bijection is the composite
/// of the two canonical labelings, checked block-wise before returning.
pub fn are_isomorphic(
    d1: &Design,
    d2: &Design,
    node_budget: u64,
) -> Result<Option<Permutation>> {
    if d1.v() != d2.v() || d1.k() != d2.k() || d1.b() != d2.b() {
        return Ok(None);
    }
    if d1.pair_degree_multiset() != d2.pair_degree_multiset() {
        return Ok(None);
    }
    let (c1, l1) = canonical_labeling(d1, node_budget)?;
    let (c2, l2) = canonical_labeling(d2, node_budget)?;
    if c1 != c2 {
        return Ok(None);
    }
    let phi = l1.then(&l2.inverse());
    debug_assert!(maps_blocks_onto(d1, d2, &phi));
    if !maps_blocks_onto(d1, d2, &phi) {
        return Err(Error::Invalid("canonical maps failed to compose to an isomorphism".into()));
    }
    Ok(Some(phi))
}

pub(crate) fn maps_blocks_onto(d1: &Design, d2: &Design, phi: &Permutation) -> bool {
    let mut mapped: Vec<Vec<u32>> = d1
        .blocks()
        .iter()
        .map(|b| {
            let mut img: Vec<u32> = b.iter().map(|&p| phi.apply(p)).collect();
            img.sort_unstable();
            img
        })
        .collect();
    mapped.sort_unstable();
    mapped == d2.blocks()
}

/// One isomorphism class of a `dedupe` run.
#[derive(Debug)]
pub struct IsoClass {
    /// Index (into the input list) of the first design of the class.
    pub rep: usize,
    /// All input indices in the class, ascending.
    pub members: Vec<usize>,
    pub cert: CanonicalCert,
}

/// Group designs by certificate. Certificates are computed once per distinct
/// block set (identical designs short-circuit), in parallel; class order is
/// by first appearance in the input.
pub fn dedupe(designs: &[Design], node_budget: u64) -> Result<Vec<IsoClass>> {
    let mut content_first: HashMap<&[Vec<u32>], usize> = HashMap::new();
    let mut distinct: Vec<usize> = Vec::new();
    let mut content_of: Vec<usize> = Vec::with_capacity(designs.len());
    for (i, d) in designs.iter().enumerate() {
        match content_first.get(d.blocks()) {
            Some(&j) => content_of.push(j),
            None => {
                content_first.insert(d.blocks(), i);
                content_of.push(i);
                distinct.push(i);
            }
        }
    }
    let certs: Vec<Result<CanonicalCert>> =
        distinct.par_iter().map(|&i| canonical_cert(&designs[i], node_budget)).collect();
    let mut cert_of: HashMap<usize, CanonicalCert> = HashMap::new();
    for (&i, cert) in distinct.iter().zip(certs) {
        cert_of.insert(i, cert?);
    }
    let mut classes: Vec<IsoClass> = Vec::new();
    let mut by_cert: HashMap<CanonicalCert, usize> = HashMap::new();
    for (i, _) in designs.iter().enumerate() {
        let cert = &cert_of[&content_of[i]];
        match by_cert.get(cert) {
            Some(&ci) => classes[ci].members.push(i),
            None => {
                by_cert.insert(cert.clone(), classes.len());
                classes.push(IsoClass { rep: i, members: vec![i], cert: cert.clone() });
            }
        }
    }
    Ok(classes)
}

// ---- search internals ----

type Cells = Vec<Vec<u32>>;

struct Search<'a> {
    blocks: &'a [Vec<u32>],
    point_blocks: Vec<Vec<u32>>,
    v: u32,
    k: u32,
    nodes: u64,
    budget: u64,
    /// best (cert bytes, labeling images) seen so far (lexicographic minimum)
    best: Option<(Vec<u8>, Vec<u32>)>,
    /// automorphisms discovered from equal-certificate leaves
    autos: Vec<Permutation>,
    path: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(d: &'a Design, budget: u64) -> Self {
        let mut point_blocks = vec![Vec::new(); d.v() as usize];
        for (j, block) in d.blocks().iter().enumerate() {
            for &p in block {
                point_blocks[(p - 1) as usize].push(j as u32);
            }
        }
        Search {
            blocks: d.blocks(),
            point_blocks,
            v: d.v(),
            k: d.k(),
            nodes: 0,
            budget,
            best: None,
            autos: Vec::new(),
            path: Vec::new(),
        }
    }

    /// Initial coloring: points grouped by (replication, sorted pair-degree
    /// profile), cells ordered by profile; blocks in one cell.
    fn initial_partition(&self) -> (Cells, Cells) {
        let v = self.v as usize;
        let mut pair = vec![vec![0u32; v]; v];
        for block in self.blocks {
            for i in 0..block.len() {
                for j in i + 1..block.len() {
                    let (a, b) = ((block[i] - 1) as usize, (block[j] - 1) as usize);
                    pair[a][b] += 1;
                    pair[b][a] += 1;
                }
            }
        }
        let mut profiles: Vec<(Vec<u32>, u32)> = (0..v)
            .map(|p| {
                let mut row = pair[p].clone();
                row.swap_remove(p);
                row.sort_unstable();
                let mut key = vec![self.point_blocks[p].len() as u32];
                key.extend(row);
                (key, p as u32 + 1)
            })
            .collect();
        profiles.sort();
        let mut point_cells: Cells = Vec::new();
        for (key, point) in profiles {
            match point_cells.last_mut() {
                Some(last) if last_key(&last[0], &pair, &self.point_blocks) == key => {
                    last.push(point)
                }
                _ => point_cells.push(vec![point]),
            }
        }
        // recompute the grouping directly; the closure above recomputes keys
        fn last_key(first: &u32, pair: &[Vec<u32>], point_blocks: &[Vec<u32>]) -> Vec<u32> {
            let p = (*first - 1) as usize;
            let mut row = pair[p].clone();
            row.swap_remove(p);
            row.sort_unstable();
            let mut key = vec![point_blocks[p].len() as u32];
            key.extend(row);
            key
        }
        let block_cells: Cells = vec![(0..self.blocks.len() as u32).collect()];
        (point_cells, block_cells)
    }

    fn run(&mut self, point_cells: Cells, block_cells: Cells) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::NodeBudget { budget: self.budget });
        }
        let (point_cells, block_cells) = self.refine(point_cells, block_cells);
        let target = point_cells.iter().position(|c| c.len() > 1).map(|first| {
            // first largest non-singleton cell
            let mut best = first;
            for (i, c) in point_cells.iter().enumerate() {
                if c.len() > point_cells[best].len() {
                    best = i;
                }
            }
            best
        });
        let Some(cell_idx) = target else {
            self.leaf(&point_cells);
            return Ok(());
        };
        let targets = point_cells[cell_idx].clone();
        let mut tried: Vec<u32> = Vec::new();
        for &t in &targets {
            if self.pruned_by_automorphism(t, &tried) {
                continue;
            }
            tried.push(t);
            let mut child_points = Vec::with_capacity(point_cells.len() + 1);
            for (i, c) in point_cells.iter().enumerate() {
                if i == cell_idx {
                    child_points.push(vec![t]);
                    child_points.push(c.iter().copied().filter(|&p| p != t).collect());
                } else {
                    child_points.push(c.clone());
                }
            }
            self.path.push(t);
            let res = self.run(child_points, block_cells.clone());
            self.path.pop();
            res?;
        }
        Ok(())
    }

    /// Orbit pruning: skip `t` if an automorphism fixing every path point
    /// maps it into an already-tried target.
    fn pruned_by_automorphism(&self, t: u32, tried: &[u32]) -> bool {
        if tried.is_empty() || self.autos.is_empty() {
            return false;
        }
        let fixing: Vec<&Permutation> = self
            .autos
            .iter()
            .filter(|a| self.path.iter().all(|&p| a.apply(p) == p))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        // orbit of t under the fixing set
        let mut orbit = vec![t];
        let mut seen = std::collections::HashSet::from([t]);
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for a in &fixing {
                for q in [a.apply(p), a.inverse().apply(p)] {
                    if seen.insert(q) {
                        orbit.push(q);
                    }
                }
            }
        }
        tried.iter().any(|x| seen.contains(x))
    }

    fn leaf(&mut self, point_cells: &Cells) {
        // labels[p-1] = canonical label of point p
        let mut labels = vec![0u32; self.v as usize];
        for (i, cell) in point_cells.iter().enumerate() {
            labels[(cell[0] - 1) as usize] = i as u32 + 1;
        }
        let cert = self.cert_bytes(&labels);
        match &self.best {
            None => self.best = Some((cert, labels)),
            Some((best_cert, best_labels)) => {
                if cert < *best_cert {
                    self.best = Some((cert, labels));
                } else if cert == *best_cert {
                    // two labelings with one certificate: an automorphism
                    let inv_best = Permutation::from_images(best_labels.clone())
                        .expect("bijection")
                        .inverse();
                    let auto =
                        Permutation::from_images(labels).expect("bijection").then(&inv_best);
                    if !auto.is_identity() && !self.autos.contains(&auto) && self.autos.len() < 64 {
                        self.autos.push(auto);
                    }
                }
            }
        }
    }

    fn cert_bytes(&self, labels: &[u32]) -> Vec<u8> {
        let v = self.v as usize;
        let mut relabeled: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut img: Vec<u32> = b.iter().map(|&p| labels[(p - 1) as usize]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        relabeled.sort_unstable();
        let row_bytes = (v + 7) / 8;
        let mut out = Vec::with_capacity(12 + relabeled.len() * row_bytes);
        out.extend_from_slice(&self.v.to_le_bytes());
        out.extend_from_slice(&(relabeled.len() as u32).to_le_bytes());
        out.extend_from_slice(&self.k.to_le_bytes());
        for block in &relabeled {
            let mut row = vec![0u8; row_bytes];
            for &p in block {
                let bit = (p - 1) as usize;
                row[bit / 8] |= 1 << (bit % 8);
            }
            out.extend_from_slice(&row);
        }
        out
    }

    /// Equitable refinement of the ordered bipartite partition. Cells are
    /// split by signature vectors of neighbouring cell indices; subcells are
    /// ordered by signature, so the outcome is relabeling-invariant.
    fn refine(&self, mut point_cells: Cells, mut block_cells: Cells) -> (Cells, Cells) {
        loop {
            let mut changed = false;

            // block signatures from point cells
            let mut point_cell_of = vec![0u32; self.v as usize];
            for (i, cell) in point_cells.iter().enumerate() {
                for &p in cell {
                    point_cell_of[(p - 1) as usize] = i as u32;
                }
            }
            let sig_block = |j: u32| -> Vec<u32> {
                let mut s: Vec<u32> =
                    self.blocks[j as usize].iter().map(|&p| point_cell_of[(p - 1) as usize]).collect();
                s.sort_unstable();
                s
            };
            block_cells = split_cells(block_cells, sig_block, &mut changed);

            // point signatures from block cells
            let mut block_cell_of = vec![0u32; self.blocks.len()];
            for (i, cell) in block_cells.iter().enumerate() {
                for &j in cell {
                    block_cell_of[j as usize] = i as u32;
                }
            }
            let sig_point = |p: u32| -> Vec<u32> {
                let mut s: Vec<u32> = self.point_blocks[(p - 1) as usize]
                    .iter()
                    .map(|&j| block_cell_of[j as usize])
                    .collect();
                s.sort_unstable();
                s
            };
            point_cells = split_cells(point_cells, sig_point, &mut changed);

            if !changed {
                return (point_cells, block_cells);
            }
        }
    }
}

fn split_cells(cells: Cells, sig: impl Fn(u32) -> Vec<u32>, changed: &mut bool) -> Cells {
    let mut out = Vec::with_capacity(cells.len());
    for cell in cells {
        if cell.len() == 1 {
            out.push(cell);
            continue;
        }
        let mut keyed: Vec<(Vec<u32>, u32)> = cell.iter().map(|&x| (sig(x), x)).collect();
        keyed.sort();
        let mut start = 0;
        for i in 1..=keyed.len() {
            if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                out.push(keyed[start..i].iter().map(|(_, x)| *x).collect());
                if i - start != keyed.len() {
                    *changed = true;
                }
                start = i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, symmetric, wreath_imprimitive};
    use crate::design::develop;
    use crate::group::DEFAULT_ORBIT_BUDGET;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn relabel(d: &Design, phi: &Permutation) -> Design {
        let blocks: Vec<Vec<u32>> =
            d.blocks().iter().map(|b| b.iter().map(|&p| phi.apply(p)).collect()).collect();
        Design::new(d.v(), d.k(), blocks).unwrap()
    }

    fn random_perm(v: u32, rng: &mut impl rand::Rng) -> Permutation {
        let mut images: Vec<u32> = (1..=v).collect();
        images.shuffle(rng);
        Permutation::from_images(images).unwrap()
    }

    /// Exhaustive pruned backtracking over point bijections; ground truth for
    /// small designs.
    pub(super) fn iso_oracle(d1: &Design, d2: &Design) -> Option<Vec<u32>> {
        if d1.v() != d2.v() || d1.k() != d2.k() || d1.b() != d2.b() {
            return None;
        }
        let v = d1.v();
        let target: std::collections::HashSet<&Vec<u32>> = d2.blocks().iter().collect();
        let mut image = vec![0u32; v as usize];
        let mut used = vec![false; v as usize];
        fn rec(
            depth: u32,
            v: u32,
            d1: &Design,
            target: &std::collections::HashSet<&Vec<u32>>,
            image: &mut Vec<u32>,
            used: &mut Vec<bool>,
        ) -> bool {
            if depth == v {
                return true;
            }
            let p = depth + 1;
            'cand: for q in 1..=v {
                if used[(q - 1) as usize] {
                    continue;
                }
                image[(p - 1) as usize] = q;
                used[(q - 1) as usize] = true;
                // blocks of d1 whose largest point is p are now fully mapped
                for block in d1.blocks() {
                    if *block.last().unwrap() == p {
                        let mut img: Vec<u32> =
                            block.iter().map(|&x| image[(x - 1) as usize]).collect();
                        img.sort_unstable();
                        if !target.contains(&img) {
                            used[(q - 1) as usize] = false;
                            continue 'cand;
                        }
                    }
                }
                if rec(depth + 1, v, d1, target, image, used) {
                    return true;
                }
                used[(q - 1) as usize] = false;
            }
            false
        }
        if rec(0, v, d1, &target, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    #[test]
    fn cert_invariant_under_relabeling() {
        let d = develop(&cyclic(7), &[1, 2, 4], DEFAULT_ORBIT_BUDGET).unwrap();
        let cert = canonical_cert(&d, DEFAULT_NODE_BUDGET).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let phi = random_perm(7, &mut rng);
            let d2 = relabel(&d, &phi);
            assert_eq!(canonical_cert(&d2, DEFAULT_NODE_BUDGET).unwrap(), cert);
        }
    }

    #[test]
    fn two_difference_sets_same_plane() {
        let d1 = develop(&cyclic(21), &[1, 2, 5, 15, 17], DEFAULT_ORBIT_BUDGET).unwrap();
        let d2 = develop(&cyclic(21), &[3, 6, 7, 12, 14], DEFAULT_ORBIT_BUDGET).unwrap();
        assert_eq!(d1.verify_2design().lambda(), Some(1));
        assert_eq!(d2.verify_2design().lambda(), Some(1));
        let c1 = canonical_cert(&d1, DEFAULT_NODE_BUDGET).unwrap();
        let c2 = canonical_cert(&d2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c1, c2);
        let phi = are_isomorphic(&d1, &d2, DEFAULT_NODE_BUDGET).unwrap().unwrap();
        assert!(maps_blocks_onto(&d1, &d2, &phi));
        // pruned-backtracking oracle agrees
        assert!(iso_oracle(&d1, &d2).is_some());
    }

    #[test]
    fn parameter_screen_separates() {
        let d1 = develop(&cyclic(21), &[1, 2, 5, 15, 17], DEFAULT_ORBIT_BUDGET).unwrap();
        let g = wreath_imprimitive(&symmetric(4), 4).unwrap();
        let d2 = develop(&g, &[1, 2, 5, 6, 9], DEFAULT_ORBIT_BUDGET).unwrap();
        assert!(are_isomorphic(&d1, &d2, DEFAULT_NODE_BUDGET).unwrap().is_none());
    }

    #[test]
    fn shuffled_blocks_isomorphic() {
        let d = develop(&cyclic(7), &[1, 2, 4], DEFAULT_ORBIT_BUDGET).unwrap();
        let mut blocks = d.blocks().to_vec();
        blocks.reverse();
        let d2 = Design::new(7, 3, blocks).unwrap();
        let phi = are_isomorphic(&d, &d2, DEFAULT_NODE_BUDGET).unwrap().unwrap();
        assert!(maps_blocks_onto(&d, &d2, &phi));
    }

    #[test]
    fn modified_block_not_isomorphic() {
        let d = develop(&cyclic(7), &[1, 2, 4], DEFAULT_ORBIT_BUDGET).unwrap();
        let mut blocks = d.blocks().to_vec();
        blocks[0] = vec![1, 2, 3];
        if let Ok(d2) = Design::new(7, 3, blocks) {
            assert!(are_isomorphic(&d, &d2, DEFAULT_NODE_BUDGET).unwrap().is_none());
        }
    }

    #[test]
    fn oracle_equivalence_small_designs() {
        // fixtures with v <= 10: developments under small cyclic groups
        let mut fixtures: Vec<Design> = Vec::new();
        for base in [[1u32, 2, 4], [1, 2, 3], [2, 3, 5]] {
            fixtures.push(develop(&cyclic(7), &base, DEFAULT_ORBIT_BUDGET).unwrap());
        }
        for base in [[1u32, 2, 4], [1, 3, 7], [1, 2, 5]] {
            fixtures.push(develop(&cyclic(9), &base, DEFAULT_ORBIT_BUDGET).unwrap());
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (i, a) in fixtures.iter().enumerate() {
            // relabeled copies must be isomorphic by both routes
            let phi = random_perm(a.v(), &mut rng);
            let shuffled = relabel(a, &phi);
            assert!(iso_oracle(a, &shuffled).is_some());
            assert!(are_isomorphic(a, &shuffled, DEFAULT_NODE_BUDGET).unwrap().is_some());
            for b in fixtures.iter().skip(i + 1) {
                let oracle = iso_oracle(a, b).is_some();
                let fast = are_isomorphic(a, b, DEFAULT_NODE_BUDGET).unwrap().is_some();
                assert_eq!(oracle, fast, "disagreement on fixtures");
            }
        }
    }

    #[test]
    fn dedupe_multiplicities() {
        let d = develop(&cyclic(21), &[1, 2, 5, 15, 17], DEFAULT_ORBIT_BUDGET).unwrap();
        let classes = dedupe(&[d.clone(), d.clone(), d.clone()], DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![0, 1, 2]);
    }

    #[test]
    fn dedupe_lambda1_developments_single_class() {
        // every difference-set development of the 2-(21,5,1) plane is the
        // same design up to isomorphism
        let g = cyclic(21);
        let candidates = [[1u32, 2, 5, 15, 17], [3, 6, 7, 12, 14], [2, 3, 6, 16, 18]];
        let designs: Vec<Design> = candidates
            .iter()
            .map(|b| develop(&g, b, DEFAULT_ORBIT_BUDGET).unwrap())
            .filter(|d| d.verify_2design().lambda() == Some(1))
            .collect();
        assert!(designs.len() >= 2);
        let classes = dedupe(&designs, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn full_wreath_16_cert_is_computable() {
        // large automorphism group: exercises the orbit pruning
        let g = wreath_imprimitive(&symmetric(4), 4).unwrap();
        let d = develop(&g, &[1, 2, 5, 6, 9], DEFAULT_ORBIT_BUDGET).unwrap();
        let c1 = canonical_cert(&d, DEFAULT_NODE_BUDGET).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let phi = random_perm(16, &mut rng);
        let c2 = canonical_cert(&relabel(&d, &phi), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c1, c2);
    }
}
