//! Markoff triples and numbers, the discrete part of the Lagrange spectrum, and
//! the Fibonacci and Pell sequences.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use crate::numeric::{QuadraticSurd, Real};

/// A solution of `a² + b² + c² = 3abc` with `a ≤ b ≤ c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkoffTriple {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl MarkoffTriple {
    fn sorted(mut v: [BigInt; 3]) -> Self {
        v.sort();
        let [a, b, c] = v;
        Self { a, b, c }
    }

    pub fn root() -> Self {
        Self::sorted([BigInt::one(), BigInt::one(), BigInt::one()])
    }

    pub fn is_solution(&self) -> bool {
        let Self { a, b, c } = self;
        a * a + b * b + c * c == BigInt::from(3) * a * b * c
    }

    /// The three Vieta involutions `x ↦ 3yz − x`.
    pub fn neighbours(&self) -> [Self; 3] {
        let Self { a, b, c } = self;
        let three = BigInt::from(3);
        [
            Self::sorted([&three * b * c - a, b.clone(), c.clone()]),
            Self::sorted([a.clone(), &three * a * c - b, c.clone()]),
            Self::sorted([a.clone(), b.clone(), &three * a * b - c]),
        ]
    }
}

/// Every Markoff triple whose largest entry is at most `limit`.
///
/// Breadth-first search from `(1, 1, 1)`; descending to the root never raises
/// the largest entry, so restricting the search to `c ≤ limit` loses nothing.
pub fn markoff_triples(limit: &BigInt) -> Vec<MarkoffTriple> {
    let root = MarkoffTriple::root();
    if &root.c > limit {
        return Vec::new();
    }
    let mut seen = HashSet::from([root.clone()]);
    let mut queue = VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        for n in t.neighbours() {
            if &n.c <= limit && n.a >= BigInt::one() && seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Sorted Markoff numbers up to `limit`.
pub fn markoff_numbers(limit: &BigInt) -> Vec<BigInt> {
    let set: BTreeSet<BigInt> = markoff_triples(limit).into_iter().flat_map(|t| [t.a, t.b, t.c]).collect();
    set.into_iter().collect()
}

/// `L = √(9 − 4/m²)` for a Markoff number `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub m: BigInt,
    pub value: QuadraticSurd,
}

impl SpectrumEntry {
    pub fn new(m: BigInt) -> Self {
        // √(9m² − 4)/m
        let value = QuadraticSurd::new(BigInt::from(0), BigInt::one(), m.clone(), BigInt::from(9) * &m * &m - 4)
            .expect("m >= 1");
        Self { m, value }
    }

    pub fn to_real(&self, precision: usize) -> Real {
        self.value.to_real(precision)
    }
}

/// The first `count` values `L_1 = √5 < L_2 = √8 < …` of the spectrum below 3.
pub fn lagrange_spectrum(count: usize) -> Vec<SpectrumEntry> {
    let mut limit = BigInt::from(2);
    loop {
        let numbers = markoff_numbers(&limit);
        if numbers.len() >= count {
            return numbers.into_iter().take(count).map(SpectrumEntry::new).collect();
        }
        limit *= 8;
    }
}

fn two_term(first: BigInt, second: BigInt, k: i64, count: usize) -> Vec<BigInt> {
    let mut out = vec![first, second];
    while out.len() < count {
        let n = out.len();
        let next = &out[n - 1] * k + &out[n - 2];
        out.push(next);
    }
    out.truncate(count);
    out
}

/// `F_0 = 1, F_1 = 2, F_n = F_{n−1} + F_{n−2}`: 1, 2, 3, 5, 8, …
pub fn fibonacci(count: usize) -> Vec<BigInt> {
    two_term(1.into(), 2.into(), 1, count)
}

/// `P_0 = 1, P_1 = 2, P_n = 2P_{n−1} + P_{n−2}`: 1, 2, 5, 12, 29, …
pub fn pell(count: usize) -> Vec<BigInt> {
    two_term(1.into(), 2.into(), 2, count)
}

/// Binet's formula for the sequence of [`fibonacci`]:
/// `F_n = (φ^{n+2} − (−1/φ)^{n+2})/√5`, evaluated in `ℚ(√5)`.
pub fn fibonacci_binet(n: usize) -> QuadraticSurd {
    let phi = QuadraticSurd::phi();
    let bar = phi.conjugate();
    let e = (n + 2) as u32;
    (phi.pow(e) - bar.pow(e)) / QuadraticSurd::sqrt_of(5).expect("5 > 0")
}

/// `(11 + √221)/10`, whose Lagrange number is `√221/5` (Markoff number 5).
pub fn markoff_quadratic_5() -> QuadraticSurd {
    QuadraticSurd::new(11, 1, 10, 221).expect("valid literal")
}

/// `(29 + √1517)/26`, whose Lagrange number is `√1517/13` (Markoff number 13).
pub fn markoff_quadratic_13() -> QuadraticSurd {
    QuadraticSurd::new(29, 1, 26, 1517).expect("valid literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::lagrange_number_estimate;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }

    /// All `m ≤ limit` occurring in some triple, by solving for the smallest entry.
    fn brute_force(limit: i64) -> Vec<i64> {
        let mut found = BTreeSet::new();
        for c in 1..=limit as i128 {
            for b in 1..=c {
                // a² − 3bc·a + b² + c² = 0
                let s = 3 * b * c;
                let disc = s * s - 4 * (b * b + c * c);
                if disc < 0 {
                    continue;
                }
                let r = (disc as f64).sqrt() as i128;
                for root in [r - 1, r, r + 1] {
                    if root >= 0 && root * root == disc && (s - root) % 2 == 0 {
                        let a = (s - root) / 2;
                        if a >= 1 && a <= b {
                            found.extend([a as i64, b as i64, c as i64]);
                        }
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    #[test]
    fn markoff_lists() {
        let expected = [1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985, 1325];
        assert_eq!(markoff_numbers(&1500.into()), ints(&expected));
        assert_eq!(markoff_numbers(&1.into()), ints(&[1]));
        assert_eq!(markoff_numbers(&100.into()), ints(&expected[..7]));
        assert!(markoff_triples(&1500.into()).iter().all(MarkoffTriple::is_solution));
        let brute: Vec<i64> = brute_force(1500);
        assert_eq!(ints(&brute), markoff_numbers(&1500.into()));
    }

    #[test]
    fn spectrum() {
        let s = lagrange_spectrum(3);
        assert_eq!(s[0].value, QuadraticSurd::sqrt_of(5).unwrap());
        assert_eq!(s[1].value, QuadraticSurd::sqrt_of(8).unwrap());
        assert_eq!(s[2].value, QuadraticSurd::new(0, 1, 5, 221).unwrap());
        let l = lagrange_spectrum(12);
        // entries live in different quadratic fields, so compare as floats
        assert!(l.windows(2).all(|w| w[0].to_real(128) < w[1].to_real(128)));
        assert!(l.iter().all(|e| e.value < QuadraticSurd::from_int(3)));
        for e in &l {
            let m = Real::from_int(&e.m, 256);
            let direct = (m.int_like(9) - m.int_like(4) / (&m * &m)).sqrt();
            assert!((direct.with_precision(128) - e.to_real(128)).abs().to_f64() < 1e-30);
        }
        let est = lagrange_number_estimate(&markoff_quadratic_13(), 10, 128).unwrap();
        assert_eq!(est.exact, SpectrumEntry::new(13.into()).value);
    }

    #[test]
    fn sequences() {
        assert_eq!(fibonacci(6), ints(&[1, 2, 3, 5, 8, 13]));
        assert_eq!(pell(8), ints(&[1, 2, 5, 12, 29, 70, 169, 408]));
        let f = fibonacci(30);
        for (n, value) in f.iter().enumerate() {
            assert_eq!(fibonacci_binet(n), QuadraticSurd::from_int(value.clone()));
        }
    }
}
