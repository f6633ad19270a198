//! Permutations of `{1..n}` in image-table form, with disjoint-cycle parsing
//! and printing.

use std::fmt;

use crate::error::{Error, Result};

/// Hard ceiling on permutation degrees accepted anywhere in the crate.
pub const DEGREE_CAP: u32 = 10_000;

/// A bijection on `{1..n}`. Points are 1-based throughout.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// `images[i]` is the image of point `i + 1`; values are in `1..=n`.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: u32) -> Self {
        Permutation { images: (1..=degree).collect() }
    }

    /// Build from an image table, checking that it is a bijection on `{1..n}`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        if n > DEGREE_CAP {
            return Err(Error::DegreeCap { degree: n as u64, cap: DEGREE_CAP as u64 });
        }
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::PointOutOfRange { point: v, degree: n });
            }
            if seen[(v - 1) as usize] {
                return Err(Error::Invalid(format!("image table repeats point {v}")));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[(point - 1) as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// Composition acting left-to-right: `(a.then(b))(x) = b(a(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&v| other.apply(v)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    /// Smallest point not fixed by this permutation.
    pub fn smallest_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &v)| v != *i as u32 + 1)
            .map(|(i, _)| i as u32 + 1)
    }

    /// Parse disjoint-cycle notation over `{1..degree}`, e.g. `"(1,2,3)(4,5)"`.
    /// `"()"` denotes the identity. Whitespace between tokens is allowed.
    pub fn parse(text: &str, degree: u32) -> Result<Self> {
        parse_cycles(text, degree, 1)
    }

    /// Decompose into cycles of length >= 2, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n as usize];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut cyc = vec![start];
            seen[(start - 1) as usize] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[(p - 1) as usize] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// Cycle-notation parser shared with the `.grp` reader (which supplies real
/// line numbers). Columns are 1-based byte offsets into `text`.
pub(crate) fn parse_cycles(text: &str, degree: u32, line: usize) -> Result<Permutation> {
    if degree > DEGREE_CAP {
        return Err(Error::DegreeCap { degree: degree as u64, cap: DEGREE_CAP as u64 });
    }
    let bytes = text.as_bytes();
    let mut images: Vec<u32> = (1..=degree).collect();
    let mut used = vec![false; degree as usize];
    let mut i = 0usize;
    let mut saw_cycle = false;

    let col = |i: usize| i + 1;

    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b != b'(' {
            return Err(Error::parse(line, col(i), format!("expected '(', found {:?}", b as char)));
        }
        i += 1;
        let mut cycle: Vec<u32> = Vec::new();
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i >= bytes.len() {
                return Err(Error::parse(line, col(i), "unterminated cycle"));
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            if !cycle.is_empty() {
                if bytes[i] != b',' {
                    return Err(Error::parse(
                        line,
                        col(i),
                        format!("expected ',' or ')', found {:?}", bytes[i] as char),
                    ));
                }
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(Error::parse(line, col(start), "expected a point number"));
            }
            let tok = &text[start..i];
            let point: u32 = tok
                .parse()
                .map_err(|_| Error::parse(line, col(start), format!("bad number {tok:?}")))?;
            if point == 0 || point > degree {
                return Err(Error::parse(
                    line,
                    col(start),
                    format!("point {point} out of range 1..={degree}"),
                ));
            }
            if used[(point - 1) as usize] {
                return Err(Error::parse(line, col(start), format!("point {point} repeated")));
            }
            used[(point - 1) as usize] = true;
            cycle.push(point);
        }
        saw_cycle = true;
        if cycle.len() >= 2 {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                images[(from - 1) as usize] = to;
            }
        }
    }
    if !saw_cycle {
        return Err(Error::parse(line, 1, "empty permutation text; use \"()\" for the identity"));
    }
    Ok(Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let p = Permutation::parse("(1,2,3)(4,5)", 5).unwrap();
        assert_eq!(p.images(), &[2, 3, 1, 5, 4]);
    }

    #[test]
    fn parse_identity() {
        let p = Permutation::parse("()", 4).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn parse_repeated_point() {
        let err = Permutation::parse("(1,2)(1,3)", 3).unwrap_err();
        match err {
            Error::Parse { col, ref msg, .. } => {
                assert!(msg.contains("point 1 repeated"), "{msg}");
                assert_eq!(col, 7);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_point_out_of_range() {
        let err = Permutation::parse("(1,7)", 5).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
    }

    #[test]
    fn compose_and_invert() {
        let a = Permutation::parse("(1,2,3)", 5).unwrap();
        let b = Permutation::parse("(3,4)", 5).unwrap();
        let ab = a.then(&b);
        // 1 -> 2 under a, fixed by b; 2 -> 3 -> 4.
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.apply(2), 4);
        assert!(a.then(&a.inverse()).is_identity());
        let id = Permutation::identity(5);
        assert_eq!(a.then(&id), a);
        assert_eq!(id.then(&a), a);
    }

    #[test]
    fn display_round_trip() {
        let p = Permutation::parse("(2,9)(3,5,4)", 9).unwrap();
        let q = Permutation::parse(&p.to_string(), 9).unwrap();
        assert_eq!(p, q);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }
}
