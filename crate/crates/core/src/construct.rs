//! Constructors for the concrete group families used throughout: symmetric,
//! alternating, cyclic, PSL(2,q) on the projective line, its extension by the
//! field automorphism, PSL(3,2) on 7 points, and the two wreath-product
//! actions (imprimitive and product action).

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Permutation, DEGREE_CAP};

pub fn symmetric(n: u32) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(transposition(n, 1, 2));
    }
    if n >= 3 {
        gens.push(cycle_perm(n, &(1..=n).collect::<Vec<_>>()));
    }
    PermGroup::new(n, gens).expect("valid generators")
}

pub fn alternating(n: u32) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle_perm(n, &[1, 2, 3]));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle_perm(n, &(1..=n).collect::<Vec<_>>()));
        } else {
            gens.push(cycle_perm(n, &(2..=n).collect::<Vec<_>>()));
        }
    }
    PermGroup::new(n, gens).expect("valid generators")
}

pub fn cyclic(n: u32) -> PermGroup {
    let gens = if n >= 2 { vec![cycle_perm(n, &(1..=n).collect::<Vec<_>>())] } else { vec![] };
    PermGroup::new(n, gens).expect("valid generators")
}

/// PSL(2,q) on the projective line, degree q+1. Supported q: 8 (GF(8) by the
/// primitive polynomial x^3+x+1, elements ordered 0,1,w,w+1,w^2,w^2+1,
/// w^2+w,w^2+w+1, with point i <-> element i-1 and q+1 <-> infinity) and odd
/// primes (field 0..q-1 in natural order). Generators: x+1 and 1/x (for q=8
/// also wx; for odd q the inversion is -1/x).
pub fn psl2(q: u32) -> Result<PermGroup> {
    match q {
        8 => {
            let gens = vec![gf8_add_one(), gf8_mul_omega(), gf8_invert()];
            PermGroup::new(9, gens)
        }
        q if is_odd_prime(q) => {
            let n = q + 1;
            let inf = n;
            // x -> x + 1
            let mut t = vec![0u32; n as usize];
            for x in 0..q {
                t[x as usize] = (x + 1) % q + 1;
            }
            t[(inf - 1) as usize] = inf;
            // x -> -1/x, 0 <-> infinity
            let mut s = vec![0u32; n as usize];
            s[0] = inf;
            s[(inf - 1) as usize] = 1;
            for x in 1..q {
                let inv = mod_inverse(x, q);
                s[x as usize] = (q - inv) % q + 1;
            }
            PermGroup::new(n, vec![Permutation::from_images(t)?, Permutation::from_images(s)?])
        }
        _ => Err(Error::Unsupported(format!("psl2({q}): only q = 8 and odd primes"))),
    }
}

/// PSigmaL(2,8) = PSL(2,8) extended by the Frobenius x -> x^2; degree 9,
/// order 1512.
pub fn sigma_psl2(q: u32) -> Result<PermGroup> {
    if q != 8 {
        return Err(Error::Unsupported(format!("sigma_psl2({q}): only q = 8")));
    }
    let mut gens = psl2(8)?.generators().to_vec();
    gens.push(gf8_frobenius());
    PermGroup::new(9, gens)
}

/// The Frobenius automorphism of the projective line over GF(8) as a
/// permutation of the 9 points.
pub fn psl2_frobenius8() -> Permutation {
    gf8_frobenius()
}

/// PSL(3,2) acting 2-transitively on the 7 points of the Fano plane
/// (nonzero vectors of GF(2)^3, point p <-> the binary digits of p).
/// Isomorphic to PSL(2,7); order 168.
pub fn psl32() -> PermGroup {
    // Singer cycle: multiplication by a generator of GF(8)*.
    let singer = cycle_perm(7, &[1, 2, 4, 3, 6, 7, 5]);
    // Transvection (a,b,c) -> (a+b,b,c).
    let tau = Permutation::parse("(2,6)(3,7)", 7).expect("valid");
    PermGroup::new(7, vec![singer, tau]).expect("valid generators")
}

/// Imprimitive wreath product: `d` copies of `k` acting on consecutive
/// classes of `deg k` points, with a top S_d permuting the classes. The
/// generator set is the per-class copies of `k`'s generators plus the top
/// class transposition and class d-cycle.
pub fn wreath_imprimitive(k: &PermGroup, d: u32) -> Result<PermGroup> {
    if d < 2 {
        return Err(Error::Invalid("wreath_imprimitive needs d >= 2".into()));
    }
    let c = k.degree();
    let n = (c as u64) * (d as u64);
    if n > DEGREE_CAP as u64 {
        return Err(Error::DegreeCap { degree: n, cap: DEGREE_CAP as u64 });
    }
    let n = n as u32;
    let mut gens = Vec::new();
    for copy in 0..d {
        let off = copy * c;
        for g in k.generators() {
            let mut images: Vec<u32> = (1..=n).collect();
            for p in 1..=c {
                images[(off + p - 1) as usize] = off + g.apply(p);
            }
            gens.push(Permutation::from_images(images)?);
        }
    }
    // top S_d on classes: swap classes 1,2 and cycle all classes
    let mut swap: Vec<u32> = (1..=n).collect();
    for p in 1..=c {
        swap[(p - 1) as usize] = c + p;
        swap[(c + p - 1) as usize] = p;
    }
    gens.push(Permutation::from_images(swap)?);
    if d > 2 {
        let mut cyc: Vec<u32> = (1..=n).collect();
        for copy in 0..d {
            let target = (copy + 1) % d;
            for p in 1..=c {
                cyc[(copy * c + p - 1) as usize] = target * c + p;
            }
        }
        gens.push(Permutation::from_images(cyc)?);
    }
    PermGroup::new(n, gens)
}

/// Product action of `k wr S_m` on m-tuples over the domain of `k`, flattened
/// row-major: the tuple (g_1,..,g_m) is the point
/// `sum (g_i - 1) * (deg k)^(m-i) + 1`. Generators: each of `k`'s generators
/// in every coordinate, plus the coordinate transposition (1 2) and, for
/// m > 2, the coordinate m-cycle.
pub fn wreath_product_action(k: &PermGroup, m: u32) -> Result<PermGroup> {
    if m < 2 {
        return Err(Error::Invalid("wreath_product_action needs m >= 2".into()));
    }
    let v0 = k.degree() as u64;
    let mut n: u64 = 1;
    for _ in 0..m {
        n = n.saturating_mul(v0);
        if n > DEGREE_CAP as u64 {
            return Err(Error::DegreeCap { degree: n, cap: DEGREE_CAP as u64 });
        }
    }
    let n = n as u32;
    let mut gens = Vec::new();
    for coord in 0..m {
        for g in k.generators() {
            gens.push(coordinate_image(k.degree(), m, coord, g));
        }
    }
    gens.push(coordinate_permutation(k.degree(), m, &|i| if i == 0 { 1 } else if i == 1 { 0 } else { i }));
    if m > 2 {
        gens.push(coordinate_permutation(k.degree(), m, &|i| (i + 1) % (m as usize)));
    }
    PermGroup::new(n, gens)
}

/// `g` acting on coordinate `coord` (0-based) of the flattened m-tuples.
pub(crate) fn coordinate_image(v0: u32, m: u32, coord: u32, g: &Permutation) -> Permutation {
    let n = (v0 as u64).pow(m) as u32;
    let mut images = Vec::with_capacity(n as usize);
    for p in 1..=n {
        let mut tuple = unflatten(p, v0, m);
        tuple[coord as usize] = g.apply(tuple[coord as usize]);
        images.push(flatten(&tuple, v0));
    }
    Permutation::from_images(images).expect("bijective")
}

/// Transpose of the v0 x v0 grid: the swap of the two coordinates.
pub(crate) fn coordinate_swap(v0: u32) -> Permutation {
    coordinate_permutation(v0, 2, &|i| 1 - i)
}

/// The permutation sending the tuple entry at coordinate i to coordinate
/// `sigma(i)`.
fn coordinate_permutation(v0: u32, m: u32, sigma: &dyn Fn(usize) -> usize) -> Permutation {
    let n = (v0 as u64).pow(m) as u32;
    let mut images = Vec::with_capacity(n as usize);
    for p in 1..=n {
        let tuple = unflatten(p, v0, m);
        let mut out = vec![0u32; m as usize];
        for (i, &val) in tuple.iter().enumerate() {
            out[sigma(i)] = val;
        }
        images.push(flatten(&out, v0));
    }
    Permutation::from_images(images).expect("bijective")
}

pub(crate) fn flatten(tuple: &[u32], v0: u32) -> u32 {
    let mut p: u64 = 0;
    for &g in tuple {
        p = p * v0 as u64 + (g - 1) as u64;
    }
    p as u32 + 1
}

pub(crate) fn unflatten(point: u32, v0: u32, m: u32) -> Vec<u32> {
    let mut rem = (point - 1) as u64;
    let mut tuple = vec![0u32; m as usize];
    for i in (0..m as usize).rev() {
        tuple[i] = (rem % v0 as u64) as u32 + 1;
        rem /= v0 as u64;
    }
    tuple
}

fn transposition(n: u32, a: u32, b: u32) -> Permutation {
    let mut images: Vec<u32> = (1..=n).collect();
    images[(a - 1) as usize] = b;
    images[(b - 1) as usize] = a;
    Permutation::from_images(images).expect("valid")
}

fn cycle_perm(n: u32, cycle: &[u32]) -> Permutation {
    let mut images: Vec<u32> = (1..=n).collect();
    for w in 0..cycle.len() {
        images[(cycle[w] - 1) as usize] = cycle[(w + 1) % cycle.len()];
    }
    Permutation::from_images(images).expect("valid")
}

// ---- GF(8) arithmetic (primitive polynomial x^3 + x + 1) ----
//
// Field elements are 3-bit values b2 b1 b0 standing for b2*w^2 + b1*w + b0;
// projective-line point i (1..8) is element i-1 and point 9 is infinity.

fn gf8_mul(a: u8, b: u8) -> u8 {
    let mut acc: u8 = 0;
    for bit in 0..3 {
        if b & (1 << bit) != 0 {
            acc ^= a << bit;
        }
    }
    // reduce by w^3 = w + 1
    for bit in (3..=4).rev() {
        if acc & (1 << bit) != 0 {
            acc ^= 1 << bit;
            acc ^= 0b11 << (bit - 3);
        }
    }
    acc
}

fn gf8_inv(a: u8) -> u8 {
    debug_assert!(a != 0);
    (1..8).find(|&x| gf8_mul(a, x) == 1).expect("unit")
}

fn line_perm(f: impl Fn(Option<u8>) -> Option<u8>) -> Permutation {
    // None encodes infinity (point 9)
    let images: Vec<u32> = (0..9)
        .map(|i| {
            let x = if i == 8 { None } else { Some(i as u8) };
            match f(x) {
                Some(y) => y as u32 + 1,
                None => 9,
            }
        })
        .collect();
    Permutation::from_images(images).expect("bijective")
}

fn gf8_add_one() -> Permutation {
    line_perm(|x| x.map(|v| v ^ 1))
}

fn gf8_mul_omega() -> Permutation {
    line_perm(|x| x.map(|v| gf8_mul(v, 0b010)))
}

fn gf8_invert() -> Permutation {
    line_perm(|x| match x {
        None => Some(0),
        Some(0) => None,
        Some(v) => Some(gf8_inv(v)),
    })
}

fn gf8_frobenius() -> Permutation {
    line_perm(|x| x.map(|v| gf8_mul(v, v)))
}

fn is_odd_prime(q: u32) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inverse(x: u32, p: u32) -> u32 {
    // p prime, 0 < x < p
    let mut result: u64 = 1;
    let mut base = x as u64;
    let mut exp = p as u64 - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closure enumeration of the full element set; independent of the
    /// stabilizer chain.
    fn brute_force_order(g: &PermGroup) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![Permutation::identity(g.degree())];
        seen.insert(queue[0].clone());
        while let Some(p) = queue.pop() {
            for gen in g.generators() {
                let q = p.then(gen);
                if seen.insert(q.clone()) {
                    queue.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn psl2_8_pinned_generators() {
        let g = psl2(8).unwrap();
        let strs: Vec<String> = g.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs[0], "(1,2)(3,4)(5,6)(7,8)");
        assert_eq!(strs[1], "(2,3,5,4,7,8,6)");
        assert_eq!(strs[2], "(1,9)(3,6)(4,7)(5,8)");
        assert_eq!(psl2_frobenius8().to_string(), "(3,5,7)(4,6,8)");
    }

    #[test]
    fn psl2_8_order_by_closure_enumeration() {
        let g = psl2(8).unwrap();
        assert_eq!(brute_force_order(&g), 504);
        assert_eq!(g.order_u64(), Some(504));
    }

    #[test]
    fn psl2_8_point_stabilizer_order() {
        let g = psl2(8).unwrap();
        let stab = g.point_stabilizer(1).unwrap();
        assert_eq!(stab.order_u64(), Some(56)); // 504 / 9
        assert_eq!(brute_force_order(&stab), 56);
    }

    #[test]
    fn psl2_8_sharply_3_transitive() {
        // Orbit of the ordered triple (1,2,3) must be all 9*8*7 = 504 triples.
        let g = psl2(8).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![(1u32, 2u32, 3u32)];
        seen.insert(queue[0]);
        while let Some((a, b, c)) = queue.pop() {
            for gen in g.generators() {
                let t = (gen.apply(a), gen.apply(b), gen.apply(c));
                if seen.insert(t) {
                    queue.push(t);
                }
            }
        }
        assert_eq!(seen.len(), 504);
    }

    #[test]
    fn sigma_psl2_8_order() {
        assert_eq!(sigma_psl2(8).unwrap().order_u64(), Some(1512));
    }

    #[test]
    fn psl2_7_on_projective_line() {
        let g = psl2(7).unwrap();
        assert_eq!(g.degree(), 8);
        assert_eq!(g.order_u64(), Some(168));
        assert_eq!(g.subdegrees().unwrap(), vec![1, 7]);
    }

    #[test]
    fn psl2_rejects_unsupported() {
        assert!(psl2(9).is_err());
        assert!(psl2(4).is_err());
        assert!(sigma_psl2(9).is_err());
    }

    #[test]
    fn psl32_order_and_2_transitivity() {
        let g = psl32();
        assert_eq!(g.order_u64(), Some(168));
        assert_eq!(g.subdegrees().unwrap(), vec![1, 6]);
    }

    #[test]
    fn wreath_imprimitive_s4_s4() {
        let g = wreath_imprimitive(&symmetric(4), 4).unwrap();
        assert_eq!(g.degree(), 16);
        assert_eq!(g.order_u64(), Some(7_962_624)); // 24^4 * 24
        assert!(g.is_transitive());
        let systems = g.find_block_systems().unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!((systems[0].class_size(), systems[0].num_classes()), (4, 4));
        for gen in g.generators() {
            assert!(systems[0].is_invariant_under(gen));
        }
        assert_eq!(g.subdegrees().unwrap(), vec![1, 3, 12]);
    }

    #[test]
    fn wreath_product_action_psl28() {
        let g = wreath_product_action(&psl2(8).unwrap(), 2).unwrap();
        assert_eq!(g.degree(), 81);
        assert_eq!(g.order_u64(), Some(508_032)); // 504^2 * 2
        assert_eq!(g.subdegrees().unwrap(), vec![1, 16, 64]);
    }

    #[test]
    fn wreath_product_action_symmetric9() {
        let g = wreath_product_action(&symmetric(9), 2).unwrap();
        assert_eq!(g.degree(), 81);
        assert_eq!(g.subdegrees().unwrap(), vec![1, 16, 64]);
    }

    #[test]
    fn flatten_row_major() {
        assert_eq!(flatten(&[1, 1], 9), 1);
        assert_eq!(flatten(&[1, 2], 9), 2);
        assert_eq!(flatten(&[2, 2], 9), 11); // v0 + 2
        assert_eq!(unflatten(11, 9, 2), vec![2, 2]);
        for p in 1..=81 {
            assert_eq!(flatten(&unflatten(p, 9, 2), 9), p);
        }
    }

    #[test]
    fn stabilizer_orbit_in_wreath() {
        // Oracle: explicit generators of the stabilizer of 1 in S4 wr S4.
        let n = 16;
        let explicit = PermGroup::new(
            n,
            vec![
                Permutation::parse("(2,3)", n).unwrap(),
                Permutation::parse("(2,3,4)", n).unwrap(),
                Permutation::parse("(5,6)", n).unwrap(),
                Permutation::parse("(5,6,7,8)", n).unwrap(),
                Permutation::parse("(5,9)(6,10)(7,11)(8,12)", n).unwrap(),
                Permutation::parse("(5,9,13)(6,10,14)(7,11,15)(8,12,16)", n).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(explicit.orbit(2).unwrap(), vec![2, 3, 4]);

        let g = wreath_imprimitive(&symmetric(4), 4).unwrap();
        let stab = g.point_stabilizer(1).unwrap();
        assert_eq!(stab.orbit(2).unwrap(), vec![2, 3, 4]);
        assert_eq!(stab.order(), explicit.order());
    }
}
