//! Bit-packed 5-subset machinery: binomial tables, colex ranking, a
//! triangular pair-count accumulator, and a BFS engine for orbits of
//! 5-subsets under a permutation group, backed by a bitmap over all
//! C(degree,5) ranks.

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i).expect("binomial overflow") / (i + 1);
    }
    acc
}

/// Exact counts for unordered point pairs over `{1..v}`, in a flat
/// triangular array.
pub struct PairCounts {
    v: u32,
    offsets: Vec<u64>,
    counts: Vec<u64>,
}

impl PairCounts {
    pub fn new(v: u32) -> Self {
        let mut offsets = Vec::with_capacity(v as usize);
        let mut acc = 0u64;
        for p in 1..=v as u64 {
            offsets.push(acc);
            acc += v as u64 - p;
        }
        PairCounts { v, offsets, counts: vec![0; acc as usize] }
    }

    #[inline]
    fn index(&self, p: u32, q: u32) -> usize {
        debug_assert!(p < q && q <= self.v);
        (self.offsets[(p - 1) as usize] + (q - p - 1) as u64) as usize
    }

    #[inline]
    pub fn bump(&mut self, p: u32, q: u32) {
        let i = self.index(p, q);
        self.counts[i] += 1;
    }

    /// Tally all pairs of a sorted block.
    pub fn bump_block(&mut self, block: &[u32]) {
        for i in 0..block.len() {
            for j in i + 1..block.len() {
                self.bump(block[i], block[j]);
            }
        }
    }

    pub fn get(&self, p: u32, q: u32) -> u64 {
        self.counts[self.index(p, q)]
    }

    pub fn reset(&mut self) {
        self.counts.fill(0);
    }

    /// `Ok(lambda)` if every pair count equals the same positive value,
    /// otherwise the first pair (in lex order) whose count differs from that
    /// of the reference pair (1,2), with both counts.
    pub fn uniform(&self) -> std::result::Result<u64, ((u32, u32), u64, (u32, u32), u64)> {
        let reference = self.counts[0];
        let mut idx = 0usize;
        for p in 1..self.v {
            for q in p + 1..=self.v {
                if self.counts[idx] != reference {
                    return Err(((p, q), self.counts[idx], (1, 2), reference));
                }
                idx += 1;
            }
        }
        if reference == 0 {
            return Err(((1, 2), 0, (1, 2), 0));
        }
        Ok(reference)
    }
}

/// BFS over orbits of 5-subsets of `{1..degree}`. Subsets are packed as five
/// sorted bytes; visited ranks live in one bitmap shared across orbits so a
/// sweep over many orbits never revisits an element.
pub struct SubsetOrbits {
    degree: u32,
    /// binom[n][k] for k <= 5
    binom: Vec<[u64; 6]>,
    gen_tables: Vec<Vec<u8>>,
    visited: Vec<u64>,
    total: u64,
}

impl SubsetOrbits {
    /// Degree is capped so the rank bitmap stays small (C(100,5) bits ≈ 9 MB).
    pub fn new(degree: u32, gens: &[Permutation]) -> Result<Self> {
        if degree < 5 || degree > 100 {
            return Err(Error::Invalid(format!(
                "subset-orbit engine supports degrees 5..=100, got {degree}"
            )));
        }
        let mut binom = vec![[0u64; 6]; degree as usize + 1];
        for n in 0..=degree as usize {
            binom[n][0] = 1;
            for k in 1..=5.min(n) {
                binom[n][k] = binomial(n as u64, k as u64);
            }
        }
        let total = binom[degree as usize][5];
        let gen_tables = gens
            .iter()
            .map(|g| {
                debug_assert_eq!(g.degree(), degree);
                (1..=degree).map(|p| g.apply(p) as u8).collect()
            })
            .collect();
        Ok(SubsetOrbits {
            degree,
            binom,
            gen_tables,
            visited: vec![0u64; (total as usize + 63) / 64],
            total,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn total_subsets(&self) -> u64 {
        self.total
    }

    /// Colex rank of a sorted 5-subset (1-based points).
    #[inline]
    pub fn rank(&self, s: &[u8; 5]) -> u64 {
        let b = &self.binom;
        b[(s[0] - 1) as usize][1]
            + b[(s[1] - 1) as usize][2]
            + b[(s[2] - 1) as usize][3]
            + b[(s[3] - 1) as usize][4]
            + b[(s[4] - 1) as usize][5]
    }

    #[inline]
    pub fn is_visited(&self, rank: u64) -> bool {
        self.visited[(rank >> 6) as usize] & (1 << (rank & 63)) != 0
    }

    #[inline]
    fn mark(&mut self, rank: u64) -> bool {
        let word = &mut self.visited[(rank >> 6) as usize];
        let bit = 1u64 << (rank & 63);
        if *word & bit != 0 {
            false
        } else {
            *word |= bit;
            true
        }
    }

    /// Enumerate the orbit of `base`, invoking `on_block` exactly once per
    /// element (including `base`), and marking every element visited.
    /// Returns the orbit size. Elements already visited from an earlier
    /// sweep cause an immediate size-0 return.
    pub fn orbit_from<F: FnMut(&[u8; 5])>(
        &mut self,
        base: [u8; 5],
        budget: u64,
        mut on_block: F,
    ) -> Result<u64> {
        let r = self.rank(&base);
        if !self.mark(r) {
            return Ok(0);
        }
        on_block(&base);
        let mut frontier = vec![base];
        let mut size: u64 = 1;
        while let Some(cur) = frontier.pop() {
            for t in 0..self.gen_tables.len() {
                let mut img = [0u8; 5];
                {
                    let table = &self.gen_tables[t];
                    for (i, &p) in cur.iter().enumerate() {
                        img[i] = table[(p - 1) as usize];
                    }
                }
                sort5(&mut img);
                let r = self.rank(&img);
                if self.mark(r) {
                    size += 1;
                    if size > budget {
                        return Err(Error::OrbitBudget { budget });
                    }
                    on_block(&img);
                    frontier.push(img);
                }
            }
        }
        Ok(size)
    }
}

#[inline]
fn sort5(a: &mut [u8; 5]) {
    // sorting network, 9 compare-exchanges
    macro_rules! cswap {
        ($i:expr, $j:expr) => {
            if a[$i] > a[$j] {
                a.swap($i, $j);
            }
        };
    }
    cswap!(0, 1);
    cswap!(3, 4);
    cswap!(2, 4);
    cswap!(2, 3);
    cswap!(0, 3);
    cswap!(0, 2);
    cswap!(1, 4);
    cswap!(1, 3);
    cswap!(1, 2);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, symmetric};

    #[test]
    fn binomials() {
        assert_eq!(binomial(81, 5), 25_621_596);
        assert_eq!(binomial(80, 4), 1_581_580);
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn rank_is_a_bijection_on_small_degree() {
        let eng = SubsetOrbits::new(9, &[]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for a in 1..=5u8 {
            for b in a + 1..=6 {
                for c in b + 1..=7 {
                    for d in c + 1..=8 {
                        for e in d + 1..=9 {
                            let r = eng.rank(&[a, b, c, d, e]);
                            assert!(r < eng.total_subsets());
                            assert!(seen.insert(r));
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len() as u64, binomial(9, 5));
    }

    #[test]
    fn sort5_works() {
        let mut a = [5, 3, 9, 1, 7];
        sort5(&mut a);
        assert_eq!(a, [1, 3, 5, 7, 9]);
    }

    #[test]
    fn orbit_matches_set_orbit() {
        let g = cyclic(21);
        let mut eng = SubsetOrbits::new(21, g.generators()).unwrap();
        let mut blocks = Vec::new();
        let size = eng
            .orbit_from([1, 2, 5, 15, 17], 1 << 20, |b| blocks.push(b.to_vec()))
            .unwrap();
        assert_eq!(size, 21);
        let reference = g.set_orbit(&[1, 2, 5, 15, 17], 1 << 20).unwrap();
        let mut blocks: Vec<Vec<u32>> =
            blocks.iter().map(|b| b.iter().map(|&p| p as u32).collect()).collect();
        blocks.sort();
        assert_eq!(blocks, reference);
    }

    #[test]
    fn sweep_partitions_all_subsets() {
        let g = symmetric(7);
        let mut eng = SubsetOrbits::new(7, g.generators()).unwrap();
        // S7 is 5-homogeneous: a single orbit covering all C(7,5) subsets.
        let size = eng.orbit_from([1, 2, 3, 4, 5], 1 << 20, |_| {}).unwrap();
        assert_eq!(size, binomial(7, 5));
        // second call starts on a visited element
        assert_eq!(eng.orbit_from([1, 2, 3, 4, 6], 1 << 20, |_| {}).unwrap(), 0);
    }

    #[test]
    fn pair_counts_uniformity() {
        let mut pc = PairCounts::new(7);
        // Fano development of {1,2,4} under the cyclic shift
        for s in 0..7u32 {
            let block: Vec<u32> = [1u32, 2, 4].iter().map(|&p| (p - 1 + s) % 7 + 1).collect();
            let mut block = block;
            block.sort_unstable();
            pc.bump_block(&block);
        }
        assert_eq!(pc.uniform(), Ok(1));
        pc.bump(3, 5);
        assert!(pc.uniform().is_err());
    }
}
