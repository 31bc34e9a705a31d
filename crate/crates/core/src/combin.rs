//! Subset enumeration and binomial coefficients.

/// All `k`-subsets of `{0, .., m-1}` in colexicographic order
/// (compare largest elements first).
pub fn colex_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut it = ColexIter::new(m, k);
    while let Some(s) = it.next_subset() {
        out.push(s.to_vec());
    }
    out
}

/// All `k`-subsets of `{0, .., m-1}` in lexicographic order.
pub fn lex_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = colex_subsets(m, k);
    out.sort();
    out
}

/// Streaming colex enumeration without allocation per subset.
pub struct ColexIter {
    m: usize,
    c: Vec<usize>,
    started: bool,
    done: bool,
}

impl ColexIter {
    pub fn new(m: usize, k: usize) -> Self {
        ColexIter { m, c: (0..k).collect(), started: false, done: k > m }
    }

    pub fn next_subset(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.c);
        }
        let k = self.c.len();
        let mut j = 0;
        while j < k {
            let limit = if j + 1 < k { self.c[j + 1] } else { self.m };
            if self.c[j] + 1 < limit {
                break;
            }
            j += 1;
        }
        if j == k {
            self.done = true;
            return None;
        }
        self.c[j] += 1;
        for i in 0..j {
            self.c[i] = i;
        }
        Some(&self.c)
    }
}

/// Binomial coefficient with `C(n, k) = 0` outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
