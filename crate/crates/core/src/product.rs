//! Rank-3 product-action analysis on v0 x v0 grids: feasibility
//! inequalities, shape classification of 5-subsets against the 19 reference
//! completions of a row pair, their closed-form and brute-force block counts
//! through a row pair (Phi) and a diagonal pair (Psi), the Phi = Psi solver,
//! and orbit sweeps under the PSL(2,8)-socle groups on 81 points.

use crate::construct::{
    coordinate_image, coordinate_swap, flatten, psl2, psl2_frobenius8, unflatten,
};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::subsets::{binomial, PairCounts, SubsetOrbits};

/// A cell of the v0 x v0 grid, 1-based; flattens row-major to point
/// (row-1)*v0 + col.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GridPoint {
    pub row: u8,
    pub col: u8,
}

impl GridPoint {
    pub fn flatten(self, v0: u32) -> u32 {
        flatten(&[self.row as u32, self.col as u32], v0)
    }

    pub fn unflatten(point: u32, v0: u32) -> Self {
        let t = unflatten(point, v0, 2);
        GridPoint { row: t[0] as u8, col: t[1] as u8 }
    }
}

/// Product-action feasibility (the subdegree inequality):
/// (v0^m - 1)/(v0 - 1) <= 20 m / (s - 1).
pub fn product_feasible(v0: u64, m: u32, s: u64) -> bool {
    debug_assert!(v0 >= 2 && m >= 2 && s >= 2);
    // (v0^m - 1)/(v0 - 1) = 1 + v0 + ... + v0^(m-1), an integer
    let lhs = (0..m).fold(0u128, |acc, _| acc * v0 as u128 + 1);
    lhs * (s as u128 - 1) <= 20 * m as u128
}

/// Rank-3 divisibility: v0^2 - 1 | 40 (v0 - 1), i.e. v0 + 1 divides 40.
pub fn rank3_admissible(v0: u32) -> bool {
    40 % (v0 + 1) == 0
}

/// Canonical signature of a 5-cell grid subset under independent row and
/// column relabelings plus the coordinate swap: the minimum relabeled edge
/// list over all orderings compatible with a bipartite color refinement.
pub type ShapeSig = [u8; 10];

/// Result of matching a 5-subset against the 19 reference shapes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ShapeClass {
    /// 1..=19, or None for subsets equivalent to none of them (possible only
    /// for subsets with five distinct rows and five distinct columns).
    pub case_id: Option<u8>,
    pub sig: ShapeSig,
}

/// Signature invariant under all row relabelings, all column relabelings,
/// and the coordinate swap. Two 5-subsets share a signature exactly when one
/// maps onto the other under that group, so equal signatures mean equal
/// orbits under any 5-transitive-by-coordinates grid group.
pub fn shape_sig(cells: &[(u8, u8); 5]) -> ShapeSig {
    let mut swapped = [(0u8, 0u8); 5];
    for (i, &(r, c)) in cells.iter().enumerate() {
        swapped[i] = (c, r);
    }
    oriented_sig(cells).min(oriented_sig(&swapped))
}

fn oriented_sig(cells: &[(u8, u8); 5]) -> [u8; 10] {
    // local ids for the distinct rows and columns
    let mut rows = [0u8; 5];
    let mut cols = [0u8; 5];
    let (mut nr, mut nc) = (0usize, 0usize);
    let mut edge = [(0u8, 0u8); 5]; // (row id, col id)
    for (i, &(r, c)) in cells.iter().enumerate() {
        let ri = match rows[..nr].iter().position(|&x| x == r) {
            Some(j) => j,
            None => {
                rows[nr] = r;
                nr += 1;
                nr - 1
            }
        };
        let ci = match cols[..nc].iter().position(|&x| x == c) {
            Some(j) => j,
            None => {
                cols[nc] = c;
                nc += 1;
                nc - 1
            }
        };
        edge[i] = (ri as u8, ci as u8);
    }

    // bipartite color refinement to a fixpoint (at most 5 ids per side)
    let mut rcol = [0u8; 5];
    let mut ccol = [0u8; 5];
    loop {
        let next_r = refine_side(&edge, &rcol, &ccol, nr, true);
        let next_c = refine_side(&edge, &ccol, &rcol, nc, false);
        if next_r == rcol && next_c == ccol {
            break;
        }
        rcol = next_r;
        ccol = next_c;
    }

    // orderings: sides sorted by color; permute within equal-color groups
    let row_orders = orders_by_color(&rcol, nr);
    let col_orders = orders_by_color(&ccol, nc);
    let mut best = [u8::MAX; 10];
    for ro in &row_orders {
        for co in &col_orders {
            let mut pairs = [0u16; 5];
            for (i, &(ri, ci)) in edge.iter().enumerate() {
                pairs[i] = ((ro[ri as usize] as u16) << 8) | co[ci as usize] as u16;
            }
            pairs.sort_unstable();
            let mut cand = [0u8; 10];
            for (i, &p) in pairs.iter().enumerate() {
                cand[2 * i] = (p >> 8) as u8;
                cand[2 * i + 1] = (p & 0xff) as u8;
            }
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

/// New colors for one side: sort vertices by (old color, sorted multiset of
/// opposite colors over incident edges) and number the distinct keys.
fn refine_side(edge: &[(u8, u8); 5], own: &[u8; 5], other: &[u8; 5], n: usize, row_side: bool) -> [u8; 5] {
    let mut keys: [(u8, [u8; 6], u8); 5] = [(0, [u8::MAX; 6], 0); 5];
    for v in 0..n {
        let mut sig = [u8::MAX; 6];
        let mut cnt = 0;
        for &(r, c) in edge.iter() {
            let (mine, theirs) = if row_side { (r, c) } else { (c, r) };
            if mine as usize == v {
                sig[cnt] = other[theirs as usize];
                cnt += 1;
            }
        }
        sig[..cnt].sort_unstable();
        keys[v] = (own[v], sig, v as u8);
    }
    let mut sorted = keys;
    sorted[..n].sort_unstable();
    let mut out = [0u8; 5];
    let mut color = 0u8;
    for i in 0..n {
        if i > 0 && (sorted[i].0, sorted[i].1) != (sorted[i - 1].0, sorted[i - 1].1) {
            color += 1;
        }
        out[sorted[i].2 as usize] = color;
    }
    out
}

/// All orderings of `0..n` that sort by color and permute freely within
/// color classes; `order[v]` is the position assigned to vertex v.
fn orders_by_color(colors: &[u8; 5], n: usize) -> Vec<[u8; 5]> {
    let mut verts: Vec<u8> = (0..n as u8).collect();
    verts.sort_by_key(|&v| (colors[v as usize], v));
    let mut orders = Vec::new();
    let mut cur = verts.clone();
    permute_within_colors(&mut cur, 0, colors, &mut orders);
    orders
        .into_iter()
        .map(|arrangement| {
            let mut order = [0u8; 5];
            for (pos, &v) in arrangement.iter().enumerate() {
                order[v as usize] = pos as u8;
            }
            order
        })
        .collect()
}

fn permute_within_colors(arr: &mut Vec<u8>, start: usize, colors: &[u8; 5], out: &mut Vec<Vec<u8>>) {
    if start == arr.len() {
        out.push(arr.clone());
        return;
    }
    let mut end = start + 1;
    while end < arr.len() && colors[arr[end] as usize] == colors[arr[start] as usize] {
        end += 1;
    }
    // permute arr[start..end] in place (Heap's algorithm on a slice copy)
    let group: Vec<u8> = arr[start..end].to_vec();
    let mut perm_indices: Vec<usize> = (0..group.len()).collect();
    permute_all(&mut perm_indices, 0, &mut |idx| {
        for (offset, &gi) in idx.iter().enumerate() {
            arr[start + offset] = group[gi];
        }
        permute_within_colors(arr, end, colors, out);
    });
    arr[start..end].copy_from_slice(&group);
}

fn permute_all(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        f(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute_all(idx, k + 1, f);
        idx.swap(k, i);
    }
}

/// Table of the 19 reference completions {a,b,c} of the marked row pair
/// {(1,1),(1,2)}, and the coefficients of their Phi / Psi counts as
/// num/den * (v0-1)^e1 (v0-2)^e2 (v0-3)^e3 (v0-4)^e4.
struct CaseData {
    completion: [(u8, u8); 3],
    phi: (u64, u64, [u32; 4]),
    psi: (u64, u64, [u32; 4]),
}

const CASES: [CaseData; 19] = [
    CaseData { completion: [(1, 3), (1, 5), (1, 7)], phi: (1, 6, [0, 1, 1, 1]), psi: (0, 1, [0, 0, 0, 0]) },
    CaseData { completion: [(1, 7), (5, 1), (5, 2)], phi: (6, 1, [1, 1, 0, 0]), psi: (8, 1, [0, 1, 0, 0]) },
    CaseData { completion: [(3, 2), (4, 2), (5, 2)], phi: (7, 3, [1, 1, 1, 0]), psi: (2, 1, [0, 1, 1, 0]) },
    CaseData { completion: [(5, 3), (5, 5), (5, 6)], phi: (2, 3, [1, 1, 1, 1]), psi: (2, 1, [0, 1, 1, 1]) },
    CaseData { completion: [(1, 3), (3, 3), (6, 3)], phi: (3, 2, [1, 2, 0, 0]), psi: (2, 1, [0, 2, 0, 0]) },
    CaseData { completion: [(2, 7), (3, 7), (5, 7)], phi: (2, 3, [1, 2, 1, 0]), psi: (2, 1, [0, 2, 1, 0]) },
    CaseData { completion: [(1, 3), (3, 3), (3, 5)], phi: (5, 1, [1, 1, 1, 0]), psi: (10, 1, [0, 1, 1, 0]) },
    // Row 8's shape is the 2x2 box {(1,1),(1,2),(2,1),(2,2)} plus a disjoint
    // cell: the unique shape whose counts are (v0-1)(v0-2)^2 and 3(v0-2)^2.
    CaseData { completion: [(2, 1), (2, 2), (3, 3)], phi: (1, 1, [1, 2, 0, 0]), psi: (3, 1, [0, 2, 0, 0]) },
    CaseData { completion: [(1, 7), (2, 1), (5, 2)], phi: (5, 1, [1, 2, 0, 0]), psi: (10, 1, [0, 2, 0, 0]) },
    CaseData { completion: [(1, 4), (1, 6), (4, 5)], phi: (1, 2, [1, 1, 1, 1]), psi: (2, 3, [0, 1, 1, 1]) },
    CaseData { completion: [(4, 2), (4, 6), (5, 1)], phi: (4, 1, [1, 2, 0, 0]), psi: (12, 1, [0, 2, 0, 0]) },
    CaseData { completion: [(2, 7), (6, 4), (6, 7)], phi: (3, 1, [1, 2, 1, 0]), psi: (14, 1, [0, 2, 1, 0]) },
    CaseData { completion: [(5, 1), (6, 1), (7, 3)], phi: (4, 1, [1, 2, 1, 0]), psi: (12, 1, [0, 2, 1, 0]) },
    CaseData { completion: [(2, 2), (6, 6), (7, 1)], phi: (3, 1, [1, 2, 1, 0]), psi: (14, 1, [0, 2, 1, 0]) },
    CaseData { completion: [(1, 7), (5, 4), (7, 3)], phi: (1, 2, [1, 2, 1, 1]), psi: (7, 3, [0, 2, 1, 1]) },
    CaseData { completion: [(3, 5), (5, 3), (5, 4)], phi: (1, 2, [1, 2, 1, 1]), psi: (4, 1, [0, 2, 1, 1]) },
    CaseData { completion: [(3, 5), (5, 7), (7, 6)], phi: (1, 6, [1, 2, 2, 1]), psi: (3, 1, [0, 2, 2, 1]) },
    CaseData { completion: [(3, 3), (5, 6), (6, 3)], phi: (1, 2, [1, 2, 2, 0]), psi: (4, 1, [0, 2, 2, 0]) },
    CaseData { completion: [(2, 2), (3, 5), (7, 6)], phi: (1, 1, [1, 2, 2, 0]), psi: (8, 1, [0, 2, 2, 0]) },
];

/// The marked pair (1,1),(1,2) plus the case's reference completion.
pub fn case_representative(case_id: u8) -> [(u8, u8); 5] {
    let c = &CASES[(case_id - 1) as usize].completion;
    [(1, 1), (1, 2), c[0], c[1], c[2]]
}

fn case_sigs() -> [ShapeSig; 19] {
    let mut sigs = [[0u8; 10]; 19];
    for case in 1..=19u8 {
        sigs[(case - 1) as usize] = shape_sig(&case_representative(case));
    }
    sigs
}

/// Match a 5-subset (which must contain the marked cells (1,1) and (1,2))
/// against the 19 reference shapes.
pub fn classify_shape(cells: &[(u8, u8); 5], v0: u32) -> Result<ShapeClass> {
    for &(r, c) in cells {
        if r == 0 || c == 0 || r as u32 > v0 || c as u32 > v0 {
            return Err(Error::Invalid(format!("cell ({r},{c}) outside the {v0} x {v0} grid")));
        }
    }
    if !cells.contains(&(1, 1)) || !cells.contains(&(1, 2)) {
        return Err(Error::Invalid("marked cells (1,1),(1,2) must be present".into()));
    }
    let sig = shape_sig(cells);
    let case_id = case_sigs().iter().position(|s| *s == sig).map(|i| i as u8 + 1);
    Ok(ShapeClass { case_id, sig })
}

/// Block counts through the marked row pair (phi) and diagonal pair (psi).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PhiPsi {
    pub phi: u64,
    pub psi: u64,
}

/// Exact evaluation of the Table-6 closed forms; non-integral evaluation is
/// an error naming the case.
pub fn phi_psi_closed(case_id: u8, v0: u32) -> Result<PhiPsi> {
    if !(1..=19).contains(&case_id) {
        return Err(Error::Invalid(format!("case {case_id} out of 1..=19")));
    }
    if v0 < 7 {
        return Err(Error::Invalid("closed forms need v0 >= 7".into()));
    }
    let data = &CASES[(case_id - 1) as usize];
    let eval = |(num, den, exps): (u64, u64, [u32; 4])| -> Result<u64> {
        let mut acc: u128 = num as u128;
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                acc *= (v0 - 1 - i as u32) as u128;
            }
        }
        if acc % den as u128 != 0 {
            return Err(Error::Invalid(format!(
                "case {case_id}: {num}/{den} form non-integral at v0={v0}"
            )));
        }
        Ok(u64::try_from(acc / den as u128).expect("count fits u64"))
    };
    Ok(PhiPsi { phi: eval(data.phi)?, psi: eval(data.psi)? })
}

/// Brute-force Phi and Psi for every case in one pass over all 3-subset
/// completions: a completion's full 5-subset is matched by canonical shape
/// signature. `other` tallies completions equivalent to none of the 19
/// (these have five distinct rows and columns, possible only for the
/// diagonal marked pair).
pub struct ShapeCensus {
    pub per_case: [PhiPsi; 19],
    pub other_phi: u64,
    pub other_psi: u64,
}

pub fn shape_census(v0: u32) -> Result<ShapeCensus> {
    if !(7..=25).contains(&v0) {
        return Err(Error::Invalid("brute-force census supports 7 <= v0 <= 25".into()));
    }
    let sigs = case_sigs();
    for i in 0..19 {
        for j in i + 1..19 {
            if sigs[i] == sigs[j] {
                return Err(Error::Invalid(format!(
                    "reference shapes {} and {} share a signature",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut census =
        ShapeCensus { per_case: [PhiPsi { phi: 0, psi: 0 }; 19], other_phi: 0, other_psi: 0 };
    for diagonal in [false, true] {
        let marked: [(u8, u8); 2] = if diagonal { [(1, 1), (2, 2)] } else { [(1, 1), (1, 2)] };
        let cells: Vec<(u8, u8)> = (1..=v0 as u8)
            .flat_map(|r| (1..=v0 as u8).map(move |c| (r, c)))
            .filter(|cell| !marked.contains(cell))
            .collect();
        let n = cells.len();
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let five = [marked[0], marked[1], cells[x], cells[y], cells[z]];
                    // five distinct rows and columns: matches no reference
                    if distinct_rows_and_cols(&five) {
                        if diagonal {
                            census.other_psi += 1;
                        } else {
                            census.other_phi += 1;
                        }
                        continue;
                    }
                    let sig = shape_sig(&five);
                    match sigs.iter().position(|s| *s == sig) {
                        Some(i) => {
                            if diagonal {
                                census.per_case[i].psi += 1;
                            } else {
                                census.per_case[i].phi += 1;
                            }
                        }
                        None => {
                            if diagonal {
                                census.other_psi += 1;
                            } else {
                                census.other_phi += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(census)
}

fn distinct_rows_and_cols(cells: &[(u8, u8); 5]) -> bool {
    for i in 0..5 {
        for j in i + 1..5 {
            if cells[i].0 == cells[j].0 || cells[i].1 == cells[j].1 {
                return false;
            }
        }
    }
    true
}

pub fn phi_psi_bruteforce(case_id: u8, v0: u32) -> Result<PhiPsi> {
    if !(1..=19).contains(&case_id) {
        return Err(Error::Invalid(format!("case {case_id} out of 1..=19")));
    }
    Ok(shape_census(v0)?.per_case[(case_id - 1) as usize])
}

/// All (case, v0, lambda) with phi = psi > 0 over the rank-3 admissible
/// degrees v0 in {7, 9, 19, 39}.
pub fn solve_phi_eq_psi() -> Vec<(u8, u32, u64)> {
    let mut out = Vec::new();
    for v0 in [7u32, 9, 19, 39] {
        for case in 1..=19u8 {
            let pp = phi_psi_closed(case, v0).expect("closed forms integral");
            if pp.phi == pp.psi && pp.phi > 0 {
                out.push((case, v0, pp.phi));
            }
        }
    }
    out.sort_by_key(|&(case, v0, _)| (v0, case));
    out
}

/// The degree-81 overgroups of PSL(2,8) x PSL(2,8) in product action.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SocleTop {
    /// PSL(2,8) wr S2
    Wr2,
    /// PSigmaL(2,8) wr S2
    SigmaWr2,
    /// PSL(2,8)^2 . 6 (cyclic top, generated by (phi,phi) * swap)
    C6,
    /// PSL(2,8)^2 . S3 (generated by (phi, phi^-1) and the swap)
    S3,
}

impl SocleTop {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "wr2" => Ok(SocleTop::Wr2),
            "sigma_wr2" => Ok(SocleTop::SigmaWr2),
            "c6" => Ok(SocleTop::C6),
            "s3" => Ok(SocleTop::S3),
            other => Err(Error::Invalid(format!(
                "unknown top {other:?} (expected wr2, sigma_wr2, c6, s3)"
            ))),
        }
    }
}

/// Generators on the 81-point grid: (g,1) and (1,g) for the PSL(2,8)
/// generators, plus the top-specific elements.
pub fn socle_group(top: SocleTop) -> PermGroup {
    let t = psl2(8).expect("q=8 supported");
    let v0 = 9;
    let mut gens: Vec<Permutation> = Vec::new();
    for g in t.generators() {
        gens.push(coordinate_image(v0, 2, 0, g));
        gens.push(coordinate_image(v0, 2, 1, g));
    }
    let swap = coordinate_swap(v0);
    let frob = psl2_frobenius8();
    match top {
        SocleTop::Wr2 => gens.push(swap),
        SocleTop::SigmaWr2 => {
            gens.push(swap);
            gens.push(coordinate_image(v0, 2, 0, &frob));
            gens.push(coordinate_image(v0, 2, 1, &frob));
        }
        SocleTop::C6 => {
            let both = coordinate_image(v0, 2, 0, &frob).then(&coordinate_image(v0, 2, 1, &frob));
            gens.push(both.then(&swap));
        }
        SocleTop::S3 => {
            gens.push(
                coordinate_image(v0, 2, 0, &frob)
                    .then(&coordinate_image(v0, 2, 1, &frob.inverse())),
            );
            gens.push(swap);
        }
    }
    PermGroup::new(81, gens).expect("valid generators")
}

/// One base-block orbit on the grid that develops into a 2-design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDesignRow {
    pub base: Vec<u32>,
    pub lambda: u64,
    pub orbit_size: u64,
}

/// Enumerate all orbits of 5-subsets through point 1 (the cell (1,1)) under
/// a rank-3 grid group, verify each orbit exactly by a full streamed
/// pair-count table, and return the orbits that are 2-designs.
/// Representatives are the lexicographically least blocks through point 1.
pub fn product_designs(g: &PermGroup, budget: u64) -> Result<Vec<ProductDesignRow>> {
    let v = g.degree();
    let v0 = (1..=v).find(|x| x * x == v).ok_or_else(|| {
        Error::Invalid(format!("degree {v} is not a square; no grid structure"))
    })?;
    let expected = vec![1u64, 2 * (v0 as u64 - 1), (v0 as u64 - 1) * (v0 as u64 - 1)];
    let subdegrees = g.subdegrees()?;
    if subdegrees != expected {
        return Err(Error::Invalid(format!(
            "expected rank-3 subdegrees {expected:?}, found {subdegrees:?}"
        )));
    }
    let mut engine = SubsetOrbits::new(v, g.generators())?;
    let mut pairs = PairCounts::new(v);
    let mut rows = Vec::new();
    let n = v as u8;
    let mut block = [0u32; 5];
    for a in 2..=n - 3 {
        for b in a + 1..=n - 2 {
            for c in b + 1..=n - 1 {
                for d in c + 1..=n {
                    let base = [1u8, a, b, c, d];
                    if engine.is_visited(engine.rank(&base)) {
                        continue;
                    }
                    pairs.reset();
                    let size = engine.orbit_from(base, budget, |bl| {
                        for i in 0..5 {
                            block[i] = bl[i] as u32;
                        }
                        pairs.bump_block(&block);
                    })?;
                    debug_assert!(size > 0);
                    if let Ok(lambda) = pairs.uniform() {
                        rows.push(ProductDesignRow {
                            base: base.iter().map(|&p| p as u32).collect(),
                            lambda,
                            orbit_size: size,
                        });
                    }
                }
            }
        }
    }
    rows.sort_by(|x, y| (x.lambda, &x.base).cmp(&(y.lambda, &y.base)));
    Ok(rows)
}

/// The distinct lambda values of `product_designs` output.
pub fn lambda_set(rows: &[ProductDesignRow]) -> Vec<u64> {
    let mut set: Vec<u64> = rows.iter().map(|r| r.lambda).collect();
    set.sort_unstable();
    set.dedup();
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasibility_boundaries() {
        assert!(product_feasible(39, 2, 2));
        assert!(!product_feasible(40, 2, 2));
        assert!(product_feasible(7, 3, 2));
        assert!(!product_feasible(8, 3, 2));
        assert!(product_feasible(19, 2, 3));
        assert!(!product_feasible(20, 2, 3));
    }

    #[test]
    fn rank3_admissible_values() {
        let hits: Vec<u32> = (5..=39).filter(|&v| rank3_admissible(v)).collect();
        assert_eq!(hits, vec![7, 9, 19, 39]);
    }

    #[test]
    fn reference_shapes_have_distinct_signatures() {
        let sigs = case_sigs();
        for i in 0..19 {
            for j in i + 1..19 {
                assert_ne!(sigs[i], sigs[j], "cases {} and {}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn classify_named_examples() {
        let b1 = [(1, 1), (1, 2), (1, 3), (1, 5), (1, 7)];
        assert_eq!(classify_shape(&b1, 9).unwrap().case_id, Some(1));
        let b7 = [(1, 1), (1, 2), (1, 3), (3, 3), (3, 5)];
        assert_eq!(classify_shape(&b7, 9).unwrap().case_id, Some(7));
        let b19 = [(1, 1), (1, 2), (2, 2), (3, 5), (7, 6)];
        assert_eq!(classify_shape(&b19, 9).unwrap().case_id, Some(19));
    }

    #[test]
    fn classify_requires_marked_cells() {
        let cells = [(1, 1), (1, 3), (2, 2), (3, 5), (7, 6)];
        assert!(classify_shape(&cells, 9).is_err());
    }

    #[test]
    fn shape_sig_invariant_under_relabeling_and_swap() {
        let cells = [(1, 1), (1, 2), (3, 3), (3, 5), (7, 6)];
        // relabel rows by r -> r+2, cols by c -> 10-c, then swap coordinates
        let moved: [(u8, u8); 5] = cells.map(|(r, c)| (10 - c, r + 2));
        assert_eq!(shape_sig(&cells), shape_sig(&moved));
    }

    #[test]
    fn closed_forms_spot_values() {
        let pp = phi_psi_closed(7, 9).unwrap();
        assert_eq!((pp.phi, pp.psi), (1680, 420)); // 5*8*7*6 and 10*7*6
        let pp = phi_psi_closed(1, 9).unwrap();
        assert_eq!(pp.psi, 0);
        let pp = phi_psi_closed(16, 9).unwrap();
        assert_eq!((pp.phi, pp.psi), (5880, 5880));
        let pp = phi_psi_closed(1, 7).unwrap();
        assert_eq!(pp.phi, 10); // C(5,3)
    }

    #[test]
    fn solver_exact_output() {
        let sols = solve_phi_eq_psi();
        assert_eq!(sols, vec![(16, 9, 5880), (18, 9, 7056), (19, 9, 14112), (17, 19, 3_329_280)]);
    }

    #[test]
    fn census_v0_7_matches_closed_forms() {
        let census = shape_census(7).unwrap();
        for case in 1..=19u8 {
            let closed = phi_psi_closed(case, 7).unwrap();
            assert_eq!(census.per_case[(case - 1) as usize], closed, "case {case}");
        }
        assert_eq!(census.other_phi, 0);
        let total: u64 = census.per_case.iter().map(|pp| pp.phi).sum();
        assert_eq!(total, binomial(47, 3));
    }

    #[test]
    fn socle_orders() {
        assert_eq!(socle_group(SocleTop::Wr2).order_u64(), Some(508_032));
        assert_eq!(socle_group(SocleTop::SigmaWr2).order_u64(), Some(4_572_288));
        assert_eq!(socle_group(SocleTop::C6).order_u64(), Some(1_524_096));
        assert_eq!(socle_group(SocleTop::S3).order_u64(), Some(1_524_096));
    }

    #[test]
    fn socle_subdegrees_rank3() {
        for top in [SocleTop::Wr2, SocleTop::SigmaWr2, SocleTop::C6, SocleTop::S3] {
            assert_eq!(socle_group(top).subdegrees().unwrap(), vec![1, 16, 64], "{top:?}");
        }
    }

    #[test]
    fn grid_point_round_trip() {
        for p in 1..=81 {
            assert_eq!(GridPoint::unflatten(p, 9).flatten(9), p);
        }
        assert_eq!((GridPoint { row: 2, col: 2 }).flatten(9), 11);
    }
}
