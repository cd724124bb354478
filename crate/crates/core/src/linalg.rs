//! Exact integer rank of edge-count vectors.
//!
//! Rows are kept in echelon form with fraction-free elimination. Every row
//! is divided by the gcd of its entries after each step, so entries stay
//! small for the vectors that arise from paths.

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0, |acc, &x| gcd(acc, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Incrementally built row space over the rationals.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    rows: Vec<(usize, Vec<i128>)>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[i64]) -> Vec<i128> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c == 0 {
                continue;
            }
            let r = row[*p];
            for (x, &y) in v.iter_mut().zip(row) {
                *x = *x * r - y * c;
            }
            normalize(&mut v);
        }
        v
    }

    /// `v` lies in the span of the rows inserted so far.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the rank went up.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|&x| x != 0) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// Rank of a set of integer vectors of equal length.
pub fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut space = RowSpace::new();
    for v in vectors {
        space.insert(v);
    }
    space.rank()
}
