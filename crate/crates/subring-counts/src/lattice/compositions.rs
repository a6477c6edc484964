use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Ordered list of non-negative integers with a fixed sum; indexes the
/// diagonal exponent patterns of Hermite normal form matrices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeakComposition {
    parts: Vec<u32>,
}

impl WeakComposition {
    pub fn new(parts: Vec<u32>) -> Self {
        WeakComposition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// Ordered list of *positive* integers with a fixed sum. The empty
/// composition is the unique composition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// Panics if any part is zero.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&a| a >= 1),
            "composition parts must be positive"
        );
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Drop leading parts equal to 1. Counting irreducible subring matrices
    /// is invariant under this reduction: a row with diagonal `p` and no
    /// free entries adds no constraints.
    pub fn strip_leading_ones(&self) -> Composition {
        let start = self
            .parts
            .iter()
            .position(|&a| a != 1)
            .unwrap_or(self.parts.len());
        Composition {
            parts: self.parts[start..].to_vec(),
        }
    }
}

fn fmt_parts(parts: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for part in parts {
        if !first {
            write!(f, ",")?;
        }
        first = false;
        write!(f, "{part}")?;
    }
    Ok(())
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parse the command-line syntax `"3,2,1,1"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parts = Vec::new();
        for piece in s.split(',') {
            let part: u32 = piece
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad composition part {piece:?}")))?;
            if part == 0 {
                return Err(Error::InvalidParameter(
                    "composition parts must be positive".into(),
                ));
            }
            parts.push(part);
        }
        Ok(Composition { parts })
    }
}

/// All weak compositions of `total` into `length` parts, ordered with the
/// first part descending (so `(1,0)` precedes `(0,1)`). The count is
/// `C(total + length - 1, length - 1)`.
pub fn weak_compositions(total: u32, length: usize) -> Vec<WeakComposition> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(length);
    fill_weak(total, length, &mut prefix, &mut out);
    out
}

fn fill_weak(total: u32, remaining: usize, prefix: &mut Vec<u32>, out: &mut Vec<WeakComposition>) {
    if remaining == 0 {
        if total == 0 {
            out.push(WeakComposition::new(prefix.clone()));
        }
        return;
    }
    if remaining == 1 {
        prefix.push(total);
        out.push(WeakComposition::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        fill_weak(total - first, remaining - 1, prefix, out);
        prefix.pop();
    }
}

/// All compositions of `total` into `length` positive parts, first part
/// descending. The count is `C(total - 1, length - 1)`; empty when
/// `total < length`, and `[()]` for `total = length = 0`.
pub fn compositions(total: u32, length: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(length);
    fill_positive(total, length, &mut prefix, &mut out);
    out
}

fn fill_positive(total: u32, remaining: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if remaining == 0 {
        if total == 0 {
            out.push(Composition::new(prefix.clone()));
        }
        return;
    }
    if (total as usize) < remaining {
        return;
    }
    if remaining == 1 {
        prefix.push(total);
        out.push(Composition::new(prefix.clone()));
        prefix.pop();
        return;
    }
    let max_first = total - (remaining as u32 - 1);
    for first in (1..=max_first).rev() {
        prefix.push(first);
        fill_positive(total - first, remaining - 1, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::arith::ExactInt;

    #[test]
    fn weak_composition_order_and_count() {
        let list = weak_compositions(1, 2);
        assert_eq!(
            list,
            vec![
                WeakComposition::new(vec![1, 0]),
                WeakComposition::new(vec![0, 1])
            ]
        );
        assert_eq!(
            weak_compositions(0, 3),
            vec![WeakComposition::new(vec![0, 0, 0])]
        );
        // Stars and bars: C(2 + 3 - 1, 3 - 1) = C(4, 2) = 6.
        assert_eq!(weak_compositions(2, 3).len(), 6);
        for e in 0..=5u32 {
            for len in 1..=4usize {
                let expect = binomial(e + len as u32 - 1, len as i64 - 1);
                assert_eq!(
                    ExactInt::from(weak_compositions(e, len).len() as u64),
                    expect
                );
            }
        }
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(6, 4).len(), 10); // C(5, 3)
        assert_eq!(compositions(3, 3), vec![Composition::new(vec![1, 1, 1])]);
        assert_eq!(compositions(0, 0), vec![Composition::new(vec![])]);
        assert!(compositions(1, 0).is_empty());
        assert!(compositions(2, 3).is_empty());
        for e in 1..=8u32 {
            for len in 1..=6usize {
                let expect = binomial(e - 1, len as i64 - 1);
                assert_eq!(ExactInt::from(compositions(e, len).len() as u64), expect);
            }
        }
    }

    #[test]
    fn compositions_of_six_into_four_split_by_leading_part() {
        let all = compositions(6, 4);
        let with_big_lead: Vec<_> = all.iter().filter(|c| c.parts()[0] >= 2).cloned().collect();
        let expected: Vec<Composition> = [
            vec![3, 1, 1, 1],
            vec![2, 2, 1, 1],
            vec![2, 1, 2, 1],
            vec![2, 1, 1, 2],
        ]
        .into_iter()
        .map(Composition::new)
        .collect();
        assert_eq!(with_big_lead.len(), 4);
        for c in &expected {
            assert!(with_big_lead.contains(c), "missing {c}");
        }
        assert_eq!(all.len() - with_big_lead.len(), 6); // the leading-1 ones
    }

    #[test]
    fn strip_leading_ones() {
        let c = Composition::new(vec![1, 1, 2, 2, 1, 1]);
        assert_eq!(c.strip_leading_ones(), Composition::new(vec![2, 2, 1, 1]));
        let all_ones = Composition::new(vec![1, 1, 1]);
        assert!(all_ones.strip_leading_ones().is_empty());
    }

    #[test]
    fn parse_composition() {
        let c: Composition = "3,2,1,1".parse().unwrap();
        assert_eq!(c, Composition::new(vec![3, 2, 1, 1]));
        assert!("3,0,1".parse::<Composition>().is_err());
        assert!("3,x".parse::<Composition>().is_err());
    }
}
