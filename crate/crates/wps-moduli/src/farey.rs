//! Farey sequences and the circular symmetry property for positive integer
//! sequences indexed by denominators.

use num_integer::Integer;

/// The Farey sequence F_N: all reduced fractions in [0,1] with denominator
/// at most N, in increasing order, as (numerator, denominator) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareySequence {
    pub n: i64,
    pub entries: Vec<(i64, i64)>,
}

/// Builds F_N by the next-term recurrence from (0/1, 1/N).
pub fn farey_sequence(n: i64) -> Result<FareySequence, String> {
    if n < 1 {
        return Err(format!("Farey order must be positive, got {n}"));
    }
    let mut entries = vec![(0, 1), (1, n)];
    if n == 1 {
        return Ok(FareySequence { n, entries: vec![(0, 1), (1, 1)] });
    }
    loop {
        let (a, b) = entries[entries.len() - 2];
        let (c, d) = entries[entries.len() - 1];
        if (c, d) == (1, 1) {
            break;
        }
        let k = (n + b) / d;
        entries.push((k * c - a, k * d - b));
    }
    Ok(FareySequence { n, entries })
}

impl FareySequence {
    /// Checks the unimodular relation bc - ad = 1 on every consecutive pair,
    /// reducedness, and the denominator bound.
    pub fn validate(&self) -> Result<(), String> {
        for w in self.entries.windows(2) {
            let ((a, b), (c, d)) = (w[0], w[1]);
            if b * c - a * d != 1 {
                return Err(format!("pair {a}/{b}, {c}/{d} is not unimodular"));
            }
        }
        for &(p, qd) in &self.entries {
            if qd < 1 || qd > self.n || p.gcd(&qd) != 1 || p < 0 || p > qd {
                return Err(format!("entry {p}/{qd} out of contract"));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Outcome of a circular-symmetry check: either symmetric, or the first
/// consecutive Farey pair (x, y are the denominators) where the identity
/// d_x + d_y = 2M/(xy) fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircularCheck {
    Symmetric,
    FailsAt { x: i64, y: i64 },
}

/// Tests whether d_1..d_N is circularly symmetric with respect to M:
/// for every consecutive pair r/x, s/y in F_N, d_x + d_y = 2M/(xy),
/// where the right side must itself be an integer.
pub fn is_circularly_symmetric(d: &[i64], n: i64, m: i64) -> Result<CircularCheck, String> {
    if d.len() as i64 != n {
        return Err(format!("sequence length {} does not match N = {n}", d.len()));
    }
    if d.iter().any(|&x| x <= 0) {
        return Err("sequence entries must be positive".into());
    }
    let f = farey_sequence(n)?;
    for w in f.entries.windows(2) {
        let ((_, x), (_, y)) = (w[0], w[1]);
        let lhs = d[(x - 1) as usize] + d[(y - 1) as usize];
        if (2 * m) % (x * y) != 0 || lhs != 2 * m / (x * y) {
            return Ok(CircularCheck::FailsAt { x, y });
        }
    }
    Ok(CircularCheck::Symmetric)
}

/// Outcome of completing a circularly symmetric sequence from its first term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    Complete(Vec<i64>),
    /// The walk forced a non-positive or non-integral value for d_y at the
    /// consecutive pair with denominators (x, y).
    ForcedFailure { x: i64, y: i64 },
}

/// Walks consecutive pairs of F_N from (0/1, 1/N) solving
/// d_y = 2M/(xy) - d_x; at most one sequence can satisfy the symmetry.
pub fn circular_complete(d1: i64, n: i64, m: i64) -> Result<Completion, String> {
    if d1 < 1 || m < 1 {
        return Err("d_1 and M must be positive".into());
    }
    let f = farey_sequence(n)?;
    let mut d = vec![0i64; n as usize];
    d[0] = d1;
    let mut known = vec![false; n as usize];
    known[0] = true;
    for w in f.entries.windows(2) {
        let ((_, x), (_, y)) = (w[0], w[1]);
        let (xi, yi) = ((x - 1) as usize, (y - 1) as usize);
        assert!(known[xi], "walk order must determine d_x before d_y");
        if !known[yi] {
            let rhs_num = 2 * m;
            if rhs_num % (x * y) != 0 {
                return Ok(Completion::ForcedFailure { x, y });
            }
            let dy = rhs_num / (x * y) - d[xi];
            if dy < 1 {
                return Ok(Completion::ForcedFailure { x, y });
            }
            d[yi] = dy;
            known[yi] = true;
        } else {
            // Already determined: the pair acts as a consistency constraint.
            if (2 * m) % (x * y) != 0 || d[xi] + d[yi] != 2 * m / (x * y) {
                return Ok(Completion::ForcedFailure { x, y });
            }
        }
    }
    Ok(Completion::Complete(d))
}
