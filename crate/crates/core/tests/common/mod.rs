//! Reference implementations used to cross-check the library.
//!
//! Each one takes a different route from the production code: tiling scans
//! instead of complement search, Möbius products instead of inductive
//! division, and plain subset enumeration instead of backtracking.

#![allow(dead_code)]

use std::collections::HashMap;

use intiles::IntegerSet;

pub fn set(v: &[u64]) -> IntegerSet {
    IntegerSet::new(v.to_vec()).unwrap()
}

/// Normalized set from a bitmask, bit `i` meaning `i + 1 ∈ A`.
pub fn set_from_mask(mask: u64) -> IntegerSet {
    IntegerSet::from_unsorted(std::iter::once(0).chain((0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1))).unwrap()
}

/// Smallest period of a tiling of Z by translates of a normalized `A`.
///
/// Scanning left to right, the smallest uncovered integer must be the
/// minimum of the next translate, so a tiling is a walk in the functional
/// graph on coverage windows of width `diam(A)`. Tilings of period `L` are
/// exactly the cycles of length dividing `L`, so the answer is the shortest
/// cycle, or `None` when the graph is acyclic.
pub fn scan_min_period(a: &IntegerSet) -> Option<u64> {
    let d = a.diameter() as u32;
    assert!(d <= 20, "window too wide for the scan oracle");
    let shape: u64 = a.elements().iter().fold(0, |m, &x| m | 1 << x);
    let step = |s: u64| -> Option<u64> {
        if s & 1 == 1 {
            Some(s >> 1)
        } else if s & shape == 0 {
            Some((s | shape) >> 1)
        } else {
            None
        }
    };
    let n = 1usize << d;
    // 0 = unvisited, 1 = on the current path, 2 = finished
    let mut color = vec![0u8; n];
    let mut best: Option<u64> = None;
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut path: Vec<usize> = Vec::new();
        let mut pos: HashMap<usize, usize> = HashMap::new();
        let mut s = start;
        loop {
            if color[s] == 1 {
                let len = (path.len() - pos[&s]) as u64;
                best = Some(best.map_or(len, |b| b.min(len)));
                break;
            }
            if color[s] == 2 {
                break;
            }
            color[s] = 1;
            pos.insert(s, path.len());
            path.push(s);
            match step(s as u64) {
                Some(t) => s = t as usize,
                None => break,
            }
        }
        for &p in &path {
            color[p] = 2;
        }
    }
    best
}

/// Whether `A ⊕ B = Z_M`, by counting every sum.
pub fn naive_tiles(a: &[u64], b: &[u64], m: u64) -> bool {
    let mut hits = vec![0u32; m as usize];
    for &x in a {
        for &y in b {
            hits[((x + y) % m) as usize] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

/// Every `B ∋ 0` with `A ⊕ B = Z_M`: all ways of choosing `M/|A|`
/// translates in increasing order whose images are pairwise disjoint.
pub fn all_complements(a: &[u64], m: u64) -> Vec<Vec<u64>> {
    fn go(a: &[u64], m: u64, need: usize, next: u64, used: &mut Vec<bool>, b: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if b.len() == need {
            out.push(b.clone());
            return;
        }
        for t in next..m {
            let image: Vec<usize> = a.iter().map(|&x| ((x + t) % m) as usize).collect();
            if image.iter().any(|&i| used[i]) {
                continue;
            }
            image.iter().for_each(|&i| used[i] = true);
            b.push(t);
            go(a, m, need, t + 1, used, b, out);
            b.pop();
            image.iter().for_each(|&i| used[i] = false);
        }
    }
    let k = a.len() as u64;
    let mut residues: Vec<u64> = a.iter().map(|x| x % m).collect();
    residues.sort_unstable();
    residues.dedup();
    if !m.is_multiple_of(k) || residues.len() != a.len() {
        return Vec::new();
    }
    let mut used = vec![false; m as usize];
    for &x in a {
        used[(x % m) as usize] = true;
    }
    let mut out = Vec::new();
    go(a, m, (m / k) as usize, 1, &mut used, &mut vec![0], &mut out);
    out.retain(|b| naive_tiles(a, b, m));
    out
}

pub fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn mul(f: &[i128], g: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; f.len() + g.len() - 1];
    for (i, &x) in f.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in g.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; panics on a nonzero remainder.
fn div_exact(f: &[i128], g: &[i128]) -> Vec<i128> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    assert_eq!(g[dg], 1);
    let mut q = vec![0i128; f.len() - dg];
    for i in (0..q.len()).rev() {
        let c = r[i + dg];
        q[i] = c;
        if c != 0 {
            for (j, &y) in g.iter().enumerate() {
                r[i + j] -= c * y;
            }
        }
    }
    assert!(r.iter().all(|&c| c == 0), "inexact division");
    q
}

fn x_pow_minus_one(d: u64) -> Vec<i128> {
    let mut v = vec![0i128; d as usize + 1];
    v[0] = -1;
    v[d as usize] = 1;
    v
}

/// `Φ_n = ∏_{d|n} (X^d - 1)^{μ(n/d)}`, ascending coefficients.
pub fn mobius_cyclotomic(n: u64) -> Vec<i128> {
    let divs: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for &d in &divs {
        match mobius(n / d) {
            1 => num = mul(&num, &x_pow_minus_one(d)),
            -1 => den = mul(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    // the denominator is ±monic: normalize its sign
    if den.last() == Some(&-1) {
        den.iter_mut().for_each(|c| *c = -*c);
        num.iter_mut().for_each(|c| *c = -*c);
    }
    div_exact(&num, &den)
}

/// `A(X) mod Φ_s` is zero, tested by evaluating at a primitive `s`-th root
/// of unity numerically. Good enough for small `s` and small coefficients.
pub fn numeric_root_divides(s: u64, exponents: &[u64]) -> bool {
    use std::f64::consts::PI;
    (1..=s).filter(|k| intiles::polyring::gcd(*k, s) == 1).take(1).all(|k| {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &e in exponents {
            let t = 2.0 * PI * (k * (e % s)) as f64 / s as f64;
            re += t.cos();
            im += t.sin();
        }
        re.abs() < 1e-7 && im.abs() < 1e-7
    })
}
