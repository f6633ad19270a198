//! Finitely generated permutation groups with deterministic Schreier–Sims
//! stabilizer chains: exact orders, membership, point/set orbits, point
//! stabilizers, subdegrees, and block systems.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::{Permutation, DEGREE_CAP};

/// Default ceiling for set-orbit enumeration (number of k-subsets).
pub const DEFAULT_ORBIT_BUDGET: u64 = 100_000_000;

/// A permutation group given by generators, with a lazily built,
/// deterministically constructed stabilizer chain.
pub struct PermGroup {
    degree: u32,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    /// `gens` may contain identities and duplicates; they are dropped. An
    /// empty list (after dropping) yields the trivial group.
    pub fn new(degree: u32, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 || degree > DEGREE_CAP {
            return Err(Error::DegreeCap { degree: degree as u64, cap: DEGREE_CAP as u64 });
        }
        let mut kept: Vec<Permutation> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: g.degree(), right: degree });
            }
            if !g.is_identity() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(PermGroup { degree, gens: kept, chain: OnceLock::new() })
    }

    pub fn trivial(degree: u32) -> Self {
        PermGroup { degree, gens: Vec::new(), chain: OnceLock::new() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The stored (non-identity) generators. Empty for the trivial group.
    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.gens, &[]))
    }

    /// Exact group order via the stabilizer chain.
    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    #[doc(hidden)]
    pub fn chain_shape(&self) -> Vec<(u32, usize, usize)> {
        self.chain().levels.iter().map(|l| (l.base, l.gen_idx.len(), l.orbit.len())).collect()
    }

    /// Direct check of the Sims criterion on the finished chain; `None` means
    /// every Schreier generator of every level sifts to the identity.
    #[doc(hidden)]
    pub fn chain_criterion_violation(&self) -> Option<(usize, u32, usize)> {
        let chain = self.chain();
        for (i, level) in chain.levels.iter().enumerate() {
            for &p in &level.orbit {
                for (gi, &gs) in level.gen_idx.iter().enumerate() {
                    let g = &chain.strong[gs];
                    let q = g.apply(p);
                    let u_p = level.transversal[(p - 1) as usize].as_ref().unwrap();
                    let u_q = level.transversal[(q - 1) as usize].as_ref().unwrap();
                    let schreier = u_p.then(g).then(&u_q.inverse());
                    let (residue, _) = chain.sift(schreier, i + 1);
                    if !residue.is_identity() {
                        return Some((i, p, gi));
                    }
                }
            }
        }
        None
    }

    /// Order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order()).ok()
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.chain().sift(p.clone(), 0);
        residue.is_identity()
    }

    /// Orbit of a point, sorted ascending.
    pub fn orbit(&self, point: u32) -> Result<Vec<u32>> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree as usize];
        let mut queue = vec![point];
        seen[(point - 1) as usize] = true;
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if !seen[(q - 1) as usize] {
                    seen[(q - 1) as usize] = true;
                    queue.push(q);
                }
            }
        }
        queue.sort_unstable();
        Ok(queue)
    }

    /// All point orbits, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree as usize];
        let mut out = Vec::new();
        for p in 1..=self.degree {
            if !seen[(p - 1) as usize] {
                let orb = self.orbit(p).expect("point in range");
                for &q in &orb {
                    seen[(q - 1) as usize] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1).map(|o| o.len() as u32 == self.degree).unwrap_or(false)
    }

    /// Orbit of a k-subset under the induced action on k-subsets. Each image
    /// is re-sorted; the result is deduplicated and sorted lexicographically.
    pub fn set_orbit(&self, base: &[u32], budget: u64) -> Result<Vec<Vec<u32>>> {
        let base = self.check_subset(base)?;
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut queue: Vec<Vec<u32>> = vec![base.clone()];
        seen.insert(base);
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            head += 1;
            for g in &self.gens {
                let mut img: Vec<u32> = cur.iter().map(|&p| g.apply(p)).collect();
                img.sort_unstable();
                if !seen.contains(&img) {
                    if seen.len() as u64 >= budget {
                        return Err(Error::OrbitBudget { budget });
                    }
                    seen.insert(img.clone());
                    queue.push(img);
                }
            }
        }
        queue.sort_unstable();
        Ok(queue)
    }

    /// Stabilizer of a point, with generators read off a chain re-based so
    /// that `point` is the first base point. Satisfies
    /// `|orbit(point)| * |stabilizer|` = `|G|` exactly.
    pub fn point_stabilizer(&self, point: u32) -> Result<PermGroup> {
        self.check_point(point)?;
        let chain = StabChain::build(self.degree, &self.gens, &[point]);
        PermGroup::new(self.degree, chain.level_gens(1))
    }

    /// Multiset of orbit lengths of the stabilizer of point 1, sorted
    /// ascending (the trivial orbit contributes a 1). Errors if intransitive.
    pub fn subdegrees(&self) -> Result<Vec<u64>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let stab = self.point_stabilizer(1)?;
        let mut lens: Vec<u64> = stab.orbits().iter().map(|o| o.len() as u64).collect();
        lens.sort_unstable();
        Ok(lens)
    }

    /// All minimal nontrivial block systems, via pair closures: for each
    /// point `b != 1`, the finest congruence identifying `1` and `b`.
    /// Empty iff the (transitive) group is primitive.
    pub fn find_block_systems(&self) -> Result<Vec<BlockSystem>> {
        let closures = self.pair_closures()?;
        // Keep the minimal elements of the refinement order.
        let mut minimal: Vec<BlockSystem> = Vec::new();
        'outer: for cand in &closures {
            for other in &closures {
                if other != cand && other.refines(cand) {
                    continue 'outer;
                }
            }
            if !minimal.contains(cand) {
                minimal.push(cand.clone());
            }
        }
        minimal.sort_by_key(|s| (s.class_size(), s.classes()[0].clone()));
        Ok(minimal)
    }

    /// Every nontrivial block system: the join-closure of the pair closures.
    /// (Any congruence whose class of 1 is D equals the join of the pair
    /// closures over the points of D.)
    pub fn all_block_systems(&self) -> Result<Vec<BlockSystem>> {
        let mut systems = self.pair_closures()?;
        systems.dedup();
        let mut i = 0;
        while i < systems.len() {
            let mut j = 0;
            while j < i {
                if let Some(joined) = systems[i].join(&systems[j], self.degree) {
                    if !systems.contains(&joined) {
                        systems.push(joined);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        systems.sort_by_key(|s| (s.class_size(), s.classes()[0].clone()));
        systems.dedup();
        Ok(systems)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.find_block_systems()?.is_empty())
    }

    fn pair_closures(&self) -> Result<Vec<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let mut out = Vec::new();
        for b in 2..=self.degree {
            if let Some(sys) = self.pair_closure(1, b) {
                if !out.contains(&sys) {
                    out.push(sys);
                }
            }
        }
        Ok(out)
    }

    /// Finest G-congruence identifying `a` and `b` (Atkinson's algorithm);
    /// `None` if it collapses everything to one class.
    fn pair_closure(&self, a: u32, b: u32) -> Option<BlockSystem> {
        let n = self.degree as usize;
        let mut uf = UnionFind::new(n);
        uf.union((a - 1) as usize, (b - 1) as usize);
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            for g in &self.gens {
                let gx = g.apply(x);
                let gy = g.apply(y);
                if uf.union((gx - 1) as usize, (gy - 1) as usize) {
                    queue.push((gx, gy));
                }
            }
        }
        BlockSystem::from_union_find(self.degree, &mut uf)
    }

    fn check_point(&self, point: u32) -> Result<()> {
        if point == 0 || point > self.degree {
            return Err(Error::PointOutOfRange { point, degree: self.degree });
        }
        Ok(())
    }

    fn check_subset(&self, set: &[u32]) -> Result<Vec<u32>> {
        if set.is_empty() {
            return Err(Error::Invalid("empty subset".into()));
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Invalid(format!("repeated point {} in subset", w[0])));
            }
        }
        for &p in &sorted {
            self.check_point(p)?;
        }
        Ok(sorted)
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup { degree: self.degree, gens: self.gens.clone(), chain: OnceLock::new() }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree={}, gens={})", self.degree, self.gens.len())
    }
}

/// An invariant partition of `{1..n}` into `d` classes of size `c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockSystem {
    degree: u32,
    classes: Vec<Vec<u32>>,
}

impl BlockSystem {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Classes, each sorted, ordered by smallest element.
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn num_classes(&self) -> u32 {
        self.classes.len() as u32
    }

    pub fn class_size(&self) -> u32 {
        self.classes[0].len() as u32
    }

    /// Index (into `classes()`) of the class containing `point`.
    pub fn class_of(&self, point: u32) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&point).is_ok())
            .expect("point in some class")
    }

    /// True iff `g` maps every class onto a class.
    pub fn is_invariant_under(&self, g: &Permutation) -> bool {
        self.classes.iter().all(|class| {
            let mut img: Vec<u32> = class.iter().map(|&p| g.apply(p)).collect();
            img.sort_unstable();
            self.classes.binary_search_by(|c| c.cmp(&img)).is_ok()
                || self.classes.contains(&img)
        })
    }

    /// True iff every class of `self` lies inside a class of `other`.
    fn refines(&self, other: &BlockSystem) -> bool {
        if self == other {
            return false;
        }
        self.classes.iter().all(|c| {
            let target = other.class_of(c[0]);
            c.iter().all(|&p| other.class_of(p) == target)
        })
    }

    /// Join (finest common coarsening); `None` when it is the one-class
    /// partition or when class sizes come out unequal (cannot happen for
    /// congruences of a transitive group, kept as a guard).
    fn join(&self, other: &BlockSystem, degree: u32) -> Option<BlockSystem> {
        let mut uf = UnionFind::new(degree as usize);
        for sys in [self, other] {
            for class in &sys.classes {
                for &p in &class[1..] {
                    uf.union((class[0] - 1) as usize, (p - 1) as usize);
                }
            }
        }
        BlockSystem::from_union_find(degree, &mut uf)
    }

    fn from_union_find(degree: u32, uf: &mut UnionFind) -> Option<BlockSystem> {
        let n = degree as usize;
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); n];
        for p in 0..n {
            buckets[uf.find(p)].push(p as u32 + 1);
        }
        let mut classes: Vec<Vec<u32>> = buckets.into_iter().filter(|b| !b.is_empty()).collect();
        classes.sort_by_key(|c| c[0]);
        if classes.len() < 2 || classes[0].len() < 2 {
            // trivial: single class, or the discrete partition
            if classes.len() == 1 || classes.iter().all(|c| c.len() == 1) {
                return None;
            }
        }
        let size = classes[0].len();
        if classes.iter().any(|c| c.len() != size) {
            return None;
        }
        Some(BlockSystem { degree, classes })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true if the two classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        // deterministic: smaller root wins
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Deterministic Schreier–Sims chain over a master list of strong
/// generators. Level `i` works with every strong generator that fixes the
/// bases of levels `0..i` pointwise (so the per-level sets are nested by
/// construction), an orbit of its base under that set, and coset
/// representatives for the orbit. Transversal entries are never overwritten
/// once set, which keeps completed sift checks valid as the chain grows.
pub(crate) struct StabChain {
    degree: u32,
    strong: Vec<Permutation>,
    pub(crate) levels: Vec<ChainLevel>,
}

pub(crate) struct ChainLevel {
    pub(crate) base: u32,
    /// Indices into `strong` of the generators fixing all earlier bases.
    gen_idx: Vec<usize>,
    orbit: Vec<u32>,
    transversal: Vec<Option<Permutation>>,
    /// (orbit point, strong index) pairs whose Schreier generator already
    /// sifted to the identity. Sound to cache: transversals only gain
    /// entries, so a clean sift can never turn dirty.
    done: HashSet<(u32, usize)>,
}

impl StabChain {
    /// Build a chain for `⟨gens⟩`. `prescribed` points are used as the first
    /// base points (in order); after that each new level takes the smallest
    /// point moved by the residue that created it.
    pub(crate) fn build(degree: u32, gens: &[Permutation], prescribed: &[u32]) -> StabChain {
        let mut chain = StabChain { degree, strong: Vec::new(), levels: Vec::new() };
        for g in gens {
            if !g.is_identity() && !chain.strong.contains(g) {
                chain.strong.push(g.clone());
            }
        }
        if chain.strong.is_empty() {
            return chain;
        }
        let base0 = prescribed.first().copied().unwrap_or_else(|| {
            chain.strong.iter().filter_map(|g| g.smallest_moved()).min().expect("non-identity")
        });
        chain.push_level(base0);

        let mut i: usize = 0;
        'outer: loop {
            // Scan level i: every unverified (orbit point, generator) pair.
            let mut oi = 0;
            while oi < chain.levels[i].orbit.len() {
                let p = chain.levels[i].orbit[oi];
                let mut gi = 0;
                while gi < chain.levels[i].gen_idx.len() {
                    let gs = chain.levels[i].gen_idx[gi];
                    gi += 1;
                    if chain.levels[i].done.contains(&(p, gs)) {
                        continue;
                    }
                    let g = &chain.strong[gs];
                    let q = g.apply(p);
                    let u_p = chain.levels[i].transversal[(p - 1) as usize].as_ref().unwrap();
                    let u_q = chain.levels[i].transversal[(q - 1) as usize].as_ref().unwrap();
                    let schreier = u_p.then(g).then(&u_q.inverse());
                    let (residue, fail_level) = if schreier.is_identity() {
                        (schreier, i + 1)
                    } else {
                        chain.sift(schreier, i + 1)
                    };
                    if residue.is_identity() {
                        chain.levels[i].done.insert((p, gs));
                        continue;
                    }
                    // The residue fixes the bases of levels 0..fail_level and
                    // moves the base of fail_level (if that level exists).
                    if fail_level == chain.levels.len() {
                        let base = prescribed
                            .get(fail_level)
                            .copied()
                            .unwrap_or_else(|| residue.smallest_moved().expect("non-identity"));
                        chain.push_level(base);
                    }
                    let new_idx = chain.strong.len();
                    chain.strong.push(residue);
                    for l in 0..=fail_level {
                        chain.levels[l].gen_idx.push(new_idx);
                        chain.extend_orbit(l, new_idx);
                    }
                    i = fail_level;
                    continue 'outer;
                }
                oi += 1;
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
        chain
    }

    /// Append a new deepest level and compute its orbit from scratch under
    /// the filtered generator set.
    fn push_level(&mut self, base: u32) {
        let prefix: Vec<u32> = self.levels.iter().map(|l| l.base).collect();
        let gen_idx: Vec<usize> = self
            .strong
            .iter()
            .enumerate()
            .filter(|(_, g)| prefix.iter().all(|&b| g.apply(b) == b))
            .map(|(i, _)| i)
            .collect();
        let mut level = ChainLevel {
            base,
            gen_idx,
            orbit: vec![base],
            transversal: vec![None; self.degree as usize],
            done: HashSet::new(),
        };
        level.transversal[(base - 1) as usize] = Some(Permutation::identity(self.degree));
        self.levels.push(level);
        let li = self.levels.len() - 1;
        self.bfs_from(li, 0);
    }

    /// Orbit growth after `new_gen` joined level `l`: apply the new generator
    /// to the existing orbit, then close the newly reached region under the
    /// full generator set.
    fn extend_orbit(&mut self, l: usize, new_gen: usize) {
        let start = self.levels[l].orbit.len();
        let mut oi = 0;
        while oi < self.levels[l].orbit.len() {
            let p = self.levels[l].orbit[oi];
            oi += 1;
            let q = self.strong[new_gen].apply(p);
            if self.levels[l].transversal[(q - 1) as usize].is_none() {
                let rep =
                    self.levels[l].transversal[(p - 1) as usize].as_ref().unwrap().then(&self.strong[new_gen]);
                self.levels[l].transversal[(q - 1) as usize] = Some(rep);
                self.levels[l].orbit.push(q);
            }
        }
        self.bfs_from(l, start);
    }

    /// Close the orbit of level `l` under its full generator set, starting
    /// the scan at orbit position `from`.
    fn bfs_from(&mut self, l: usize, from: usize) {
        let mut head = from;
        while head < self.levels[l].orbit.len() {
            let p = self.levels[l].orbit[head];
            head += 1;
            for k in 0..self.levels[l].gen_idx.len() {
                let g = &self.strong[self.levels[l].gen_idx[k]];
                let q = g.apply(p);
                if self.levels[l].transversal[(q - 1) as usize].is_none() {
                    let rep = self.levels[l].transversal[(p - 1) as usize].as_ref().unwrap().then(g);
                    self.levels[l].transversal[(q - 1) as usize] = Some(rep);
                    self.levels[l].orbit.push(q);
                }
            }
        }
    }

    /// Sift `g` through levels `from..`; returns the residue and the level at
    /// which sifting stopped (== `levels.len()` if it ran off the chain).
    pub(crate) fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (idx, level) in self.levels.iter().enumerate().skip(from) {
            if g.is_identity() {
                return (g, idx);
            }
            let q = g.apply(level.base);
            match &level.transversal[(q - 1) as usize] {
                None => return (g, idx),
                Some(u_q) => {
                    g = g.then(&u_q.inverse());
                }
            }
        }
        (g, self.levels.len())
    }

    pub(crate) fn order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len() as u64);
        }
        order
    }

    pub(crate) fn level_gens(&self, l: usize) -> Vec<Permutation> {
        match self.levels.get(l) {
            Some(level) => level.gen_idx.iter().map(|&i| self.strong[i].clone()).collect(),
            None => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, symmetric};

    fn perm(text: &str, n: u32) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn symmetric_order() {
        for n in 1..=8u32 {
            let expected: u64 = (1..=n as u64).product();
            assert_eq!(symmetric(n).order_u64(), Some(expected), "S_{n}");
        }
    }

    #[test]
    fn cyclic_orbit_and_order() {
        let g = cyclic(21);
        assert_eq!(g.order_u64(), Some(21));
        assert_eq!(g.orbit(1).unwrap(), (1..=21).collect::<Vec<_>>());
        assert!(g.is_transitive());
    }

    #[test]
    fn trivial_group_orbit() {
        let g = PermGroup::trivial(5);
        assert_eq!(g.orbit(3).unwrap(), vec![3]);
        assert_eq!(g.order_u64(), Some(1));
    }

    #[test]
    fn orbit_point_out_of_range() {
        let g = cyclic(5);
        assert!(matches!(g.orbit(9), Err(Error::PointOutOfRange { .. })));
    }

    #[test]
    fn membership_sifting() {
        let g = PermGroup::new(6, vec![perm("(1,2,3)", 6), perm("(4,5)", 6)]).unwrap();
        assert!(g.contains(&perm("(1,3,2)(4,5)", 6)));
        // moves point 6, which every generator fixes
        assert!(!g.contains(&perm("(5,6)", 6)));
    }

    #[test]
    fn point_stabilizer_symmetric5() {
        let g = symmetric(5);
        let stab = g.point_stabilizer(1).unwrap();
        assert_eq!(stab.order_u64(), Some(24));
        assert_eq!(stab.orbit(1).unwrap(), vec![1]);
        assert_eq!(stab.orbit(2).unwrap(), vec![2, 3, 4, 5]);
    }

    #[test]
    fn point_stabilizer_regular_is_trivial() {
        let stab = cyclic(21).point_stabilizer(1).unwrap();
        assert_eq!(stab.order_u64(), Some(1));
    }

    #[test]
    fn set_orbit_identity_group() {
        let g = PermGroup::trivial(9);
        let orb = g.set_orbit(&[1, 2, 3, 4, 5], 10).unwrap();
        assert_eq!(orb, vec![vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn set_orbit_budget_enforced() {
        let g = symmetric(9);
        assert!(matches!(g.set_orbit(&[1, 2, 3], 10), Err(Error::OrbitBudget { .. })));
    }

    #[test]
    fn block_systems_cyclic21() {
        let systems = cyclic(21).find_block_systems().unwrap();
        assert_eq!(systems.len(), 2);
        assert_eq!((systems[0].class_size(), systems[0].num_classes()), (3, 7));
        assert_eq!((systems[1].class_size(), systems[1].num_classes()), (7, 3));
        assert_eq!(systems[0].classes()[0], vec![1, 8, 15]);
        assert_eq!(systems[1].classes()[0], vec![1, 4, 7, 10, 13, 16, 19]);
    }

    #[test]
    fn symmetric5_primitive() {
        assert!(symmetric(5).is_primitive().unwrap());
        assert!(symmetric(5).find_block_systems().unwrap().is_empty());
    }

    #[test]
    fn subdegrees_regular() {
        assert_eq!(cyclic(21).subdegrees().unwrap(), vec![1u64; 21]);
    }

    #[test]
    fn subdegrees_rejects_intransitive() {
        let g = PermGroup::new(5, vec![perm("(1,2)", 5)]).unwrap();
        assert!(matches!(g.subdegrees(), Err(Error::Intransitive)));
    }

    #[test]
    fn all_block_systems_cyclic8() {
        // Z8 has congruences with classes of size 2 and 4; only size 2 is minimal.
        let g = cyclic(8);
        let minimal = g.find_block_systems().unwrap();
        assert_eq!(minimal.len(), 1);
        assert_eq!(minimal[0].class_size(), 2);
        let all = g.all_block_systems().unwrap();
        let shapes: Vec<(u32, u32)> =
            all.iter().map(|s| (s.class_size(), s.num_classes())).collect();
        assert_eq!(shapes, vec![(2, 4), (4, 2)]);
    }
}
