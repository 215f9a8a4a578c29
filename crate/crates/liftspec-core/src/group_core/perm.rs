use std::fmt;

use crate::error::{Error, Result};

/// A permutation of the points `{1, .., n}`.
///
/// `images[i]` is the image of point `i + 1`. The composition convention is
/// argument-on-the-left: `x · (p ∘ q) = (x · p) · q`, so products of walk
/// voltages read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from the 1-based image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree 0 is not allowed".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x < 1 || x > n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "point {x} appears twice in the image array"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        assert!(degree > 0, "degree 0 is not allowed");
        Self {
            images: (1..=degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Left-to-right composition: `x · r = (x · self) · other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = self.images.iter().map(|&x| other.apply(x)).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut ord = 1;
        while !p.is_identity() {
            p = p.compose(self).expect("same degree");
            ord += 1;
        }
        ord
    }

    /// Sign: +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self
            .cycles()
            .iter()
            .map(|c| c.len() - 1)
            .sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Decomposition into cycles of moved points, each cycle starting at its
    /// smallest point, cycles ordered by smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// True when the permutation is a single cycle through all `n` points.
    pub fn is_full_cycle(&self) -> bool {
        let n = self.degree();
        if n == 1 {
            return true;
        }
        let cycles = self.cycles();
        cycles.len() == 1 && cycles[0].len() == n
    }

    /// Parses cycle notation like `(1 2 3)`, `(1 3)(2 4)` or `()` at the
    /// given degree. Repeated points are rejected.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree 0 is not allowed".into()));
        }
        let cycles = parse_cycle_list(text)?;
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut used = vec![false; degree];
        for cycle in &cycles {
            for &x in cycle {
                if x < 1 || x > degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if used[x - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} repeated in `{text}`"
                    )));
                }
                used[x - 1] = true;
            }
            for w in 0..cycle.len() {
                images[cycle[w] - 1] = cycle[(w + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }
}

/// Splits `(1 2 3)(4 5)` into raw point lists, without disjointness checks.
pub(crate) fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::InvalidPermutation("empty permutation text".into()));
    }
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::InvalidPermutation(format!(
                "expected `(` in `{text}`"
            )));
        }
        let close = rest.find(')').ok_or_else(|| {
            Error::InvalidPermutation(format!("unbalanced parenthesis in `{text}`"))
        })?;
        let inner = &rest[1..close];
        let points: Vec<usize> = inner
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| {
                    Error::InvalidPermutation(format!("bad point `{t}` in `{text}`"))
                })
            })
            .collect::<Result<_>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn compose_identity() {
        let s = p("(1 2 3)", 3);
        let e = Permutation::identity(3);
        assert_eq!(s.compose(&e).unwrap(), s);
        assert_eq!(e.compose(&s).unwrap(), s);
    }

    #[test]
    fn compose_left_to_right() {
        // hand-trace: 1→2→1, 2→3→3, 3→1→2
        let s = p("(1 2 3)", 3);
        let h = p("(1 2)", 3);
        assert_eq!(s.compose(&h).unwrap(), p("(2 3)", 3));
    }

    #[test]
    fn compose_matches_sigma_of_gh() {
        // s = gh with g=(23), h=(12) under the left-to-right convention
        let g = p("(2 3)", 3);
        let h = p("(1 2)", 3);
        assert_eq!(g.compose(&h).unwrap(), p("(1 2 3)", 3));
        assert_eq!(h.compose(&g).unwrap(), p("(1 3 2)", 3));
        let ghg = g.compose(&h).unwrap().compose(&g).unwrap();
        assert_eq!(ghg, p("(1 3)", 3));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        assert_eq!(p("(2 3)", 3).inverse(), p("(2 3)", 3));
    }

    #[test]
    fn compose_degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn parse_rejects_repeats_and_bad_points() {
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse("(1 5)", 3).is_err());
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("", 3).is_err());
    }

    #[test]
    fn parse_display_round_trip() {
        for text in ["()", "(1 2 3)", "(1 3)(2 4)", "(2 5)"] {
            let perm = p(text, 5);
            assert_eq!(Permutation::parse(&perm.to_string(), 5).unwrap(), perm);
        }
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn from_images_validation() {
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn sign_and_order() {
        assert_eq!(p("(1 2)", 3).sign(), -1);
        assert_eq!(p("(1 2 3)", 3).sign(), 1);
        assert_eq!(p("(1 2 3)", 3).order(), 3);
        assert_eq!(Permutation::identity(5).order(), 1);
    }

    #[test]
    fn full_cycle_detection() {
        assert!(p("(1 2 3)", 3).is_full_cycle());
        assert!(!p("(1 2)", 3).is_full_cycle());
        assert!(Permutation::identity(1).is_full_cycle());
        assert!(!Permutation::identity(2).is_full_cycle());
    }
}
