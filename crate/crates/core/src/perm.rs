//! Permutations of `{0..n-1}` stored as image tables.
//!
//! Points are 0-indexed internally. All text I/O (cycle notation) is
//! 1-indexed, matching the usual convention for permutation groups on
//! `{1,..,n}`. Composition is left-to-right: `(p * q)(x) = q(p(x))`.

use crate::error::{Error, Result};

/// A bijection of `{0..n-1}`. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm({})", self.cycle_string())
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            let y = y as usize;
            if y >= n {
                return Err(Error::PointOutOfRange { point: y, degree: n });
            }
            if seen[y] {
                return Err(Error::NotABijection(y));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Image table without the bijectivity scan. Callers must guarantee the
    /// invariant; used on hot paths where the table was produced by
    /// composing existing permutations.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a point.
    #[inline]
    pub fn act(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// Checked image of a point.
    pub fn act_checked(&self, x: usize) -> Result<usize> {
        if x >= self.degree() {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree(),
            });
        }
        Ok(self.act(x))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// Left-to-right composition: the result maps `x` to `q(p(x))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.compose_unchecked(q))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        let images = self.images.iter().map(|&y| q.images[y as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &y) in self.images.iter().enumerate() {
            images[y as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u128 {
        let mut seen = vec![false; self.degree()];
        let mut order: u128 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.act(x);
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// True for even permutations.
    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.act(x);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `self^g = g^-1 * self * g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        g.inverse()
            .compose_unchecked(self)
            .compose_unchecked(g)
    }

    /// Canonical cycle notation, 1-indexed. Cycles are listed by their least
    /// point, each starting at its least point; fixed points are omitted and
    /// the identity renders as `()`.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.act(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
                first = false;
                x = self.act(x);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// Parses either cycle notation (1-indexed, e.g. `"(1 2 3)(4 5)"`, `"()"`)
/// or a comma-separated 0-indexed image list (e.g. `"1,0,2"`).
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty permutation text".into()));
    }
    if t.starts_with('(') {
        parse_cycles(t, degree)
    } else {
        parse_image_list(t, degree)
    }
}

fn parse_image_list(t: &str, degree: usize) -> Result<Permutation> {
    let mut images = Vec::with_capacity(degree);
    for tok in t.split(',') {
        let tok = tok.trim();
        let v: u32 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad image value {tok:?}")))?;
        images.push(v);
    }
    if images.len() != degree {
        return Err(Error::Parse(format!(
            "image list has length {}, expected {}",
            images.len(),
            degree
        )));
    }
    Permutation::from_images(images)
}

fn parse_cycles(t: &str, degree: usize) -> Result<Permutation> {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut chars = t.chars().peekable();
    let mut any = false;
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return Err(Error::Parse(format!("expected '(' but found {c:?}")));
        }
        chars.next();
        let mut cycle: Vec<usize> = Vec::new();
        let mut num = String::new();
        loop {
            match chars.next() {
                Some(d) if d.is_ascii_digit() => num.push(d),
                Some(d) if d.is_whitespace() || d == ',' => {
                    if !num.is_empty() {
                        cycle.push(token_to_point(&num, degree)?);
                        num.clear();
                    }
                }
                Some(')') => {
                    if !num.is_empty() {
                        cycle.push(token_to_point(&num, degree)?);
                        num.clear();
                    }
                    break;
                }
                Some(d) => return Err(Error::Parse(format!("unexpected character {d:?}"))),
                None => return Err(Error::Parse("unterminated cycle".into())),
            }
        }
        any = true;
        for &p in &cycle {
            if used[p] {
                return Err(Error::Parse(format!("point {} repeated in cycles", p + 1)));
            }
            used[p] = true;
        }
        for i in 0..cycle.len() {
            images[cycle[i]] = cycle[(i + 1) % cycle.len()] as u32;
        }
    }
    if !any {
        return Err(Error::Parse("no cycles found".into()));
    }
    Permutation::from_images(images)
}

fn token_to_point(tok: &str, degree: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::Parse(format!("bad point {tok:?}")))?;
    if v == 0 {
        return Err(Error::Parse("cycle notation is 1-indexed; found 0".into()));
    }
    if v > degree {
        return Err(Error::Parse(format!(
            "point {v} exceeds degree {degree}"
        )));
    }
    Ok(v - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut im: Vec<u32> = (0..n as u32).collect();
        im.swap(a, b);
        Permutation::from_images(im).unwrap()
    }

    #[test]
    fn compose_identity_and_inverse() {
        let p = parse_permutation("(1 2 3)", 5).unwrap();
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&p.inverse()).unwrap(), id);
    }

    #[test]
    fn compose_transpositions_gives_three_cycle() {
        // (0 1) then (1 2), left-to-right: 0 -> 1 -> 2, 2 -> 2 -> 1? check by hand:
        // x=0: p(0)=1, q(1)=2? q = (1 2) zero-indexed swaps 1,2 so 0->1->2; x=1: 1->0->0;
        // x=2: 2->2->1. Images [2,0,1]: the 3-cycle 0->2->1->0.
        let p = transposition(3, 0, 1);
        let q = transposition(3, 1, 2);
        let r = p.compose(&q).unwrap();
        assert_eq!(r.images(), &[2, 0, 1]);
        // and in the other order we get the other 3-cycle
        let s = q.compose(&p).unwrap();
        assert_eq!(s.images(), &[1, 2, 0]);
    }

    #[test]
    fn inverse_of_three_cycle() {
        let c = Permutation::from_images(vec![1, 2, 0]).unwrap(); // 0->1->2->0
        assert_eq!(c.inverse().images(), &[2, 0, 1]);
        let t = transposition(4, 1, 3);
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn act_basics() {
        let id = Permutation::identity(6);
        assert_eq!(id.act(5), 5);
        let t = transposition(3, 0, 1);
        assert_eq!(t.act(0), 1);
        assert_eq!(t.act(2), 2);
        assert!(t.act_checked(3).is_err());
    }

    #[test]
    fn parse_cases() {
        assert!(parse_permutation("()", 5).unwrap().is_identity());
        assert_eq!(
            parse_permutation("(1 2)", 3).unwrap().images(),
            &[1, 0, 2]
        );
        let five = parse_permutation("(1 2 3 4 5)", 5).unwrap();
        assert_eq!(five.images(), &[1, 2, 3, 4, 0]);
        assert!(parse_permutation("(1 2 2)", 4).is_err());
        assert!(parse_permutation("(1 9)", 4).is_err());
        assert!(parse_permutation("(1 2", 4).is_err());
        assert_eq!(parse_permutation("1,0,2", 3).unwrap().images(), &[1, 0, 2]);
    }

    #[test]
    fn order_and_parity() {
        let c = parse_permutation("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(c.order(), 6);
        assert!(!c.is_even());
        assert!(parse_permutation("(1 2 3)", 5).unwrap().is_even());
    }

    proptest! {
        #[test]
        fn compose_then_uncompose(seed in 0u64..500, n in 1usize..30) {
            use rand::SeedableRng;
            use rand::seq::SliceRandom;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut a: Vec<u32> = (0..n as u32).collect();
            let mut b: Vec<u32> = (0..n as u32).collect();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let p = Permutation::from_images(a).unwrap();
            let q = Permutation::from_images(b).unwrap();
            let r = p.compose(&q).unwrap().compose(&q.inverse()).unwrap();
            prop_assert_eq!(r, p);
        }

        #[test]
        fn cycle_roundtrip(seed in 0u64..500, n in 1usize..30) {
            use rand::SeedableRng;
            use rand::seq::SliceRandom;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut a: Vec<u32> = (0..n as u32).collect();
            a.shuffle(&mut rng);
            let p = Permutation::from_images(a).unwrap();
            let back = parse_permutation(&p.cycle_string(), n).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
