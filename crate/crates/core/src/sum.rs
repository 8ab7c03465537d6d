//! Deterministic pairwise summation over row-major index order.
//!
//! All norms and energies reduce through these helpers so results do not
//! depend on thread count or iteration chunking.

const LEAF: usize = 64;

/// Pairwise sum of `f(i)` for `i` in `0..n`.
pub fn pairwise_sum<F: Fn(usize) -> f64>(n: usize, f: &F) -> f64 {
    pairwise_range(0, n, f)
}

fn pairwise_range<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
    if hi - lo <= LEAF {
        let mut acc = 0.0;
        for i in lo..hi {
            acc += f(i);
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        pairwise_range(lo, mid, f) + pairwise_range(mid, hi, f)
    }
}

/// Pairwise sum of quaternion components, used by inner products.
pub fn pairwise_sum4<F: Fn(usize) -> [f64; 4]>(n: usize, f: &F) -> [f64; 4] {
    pairwise_range4(0, n, f)
}

fn pairwise_range4<F: Fn(usize) -> [f64; 4]>(lo: usize, hi: usize, f: &F) -> [f64; 4] {
    if hi - lo <= LEAF {
        let mut acc = [0.0; 4];
        for i in lo..hi {
            let v = f(i);
            for c in 0..4 {
                acc[c] += v[c];
            }
        }
        acc
    } else {
        let mid = lo + (hi - lo) / 2;
        let a = pairwise_range4(lo, mid, f);
        let b = pairwise_range4(mid, hi, f);
        [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
    }
}
