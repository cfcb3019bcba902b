//! Dense polynomials over `F_p`, coefficients stored low degree first.

use rand::Rng;

use super::matrix::{inv_mod, FpMatrix};

pub type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn monic(a: &[u32], p: u32) -> Poly {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = inv_mod(lead, p) as u64;
            a.iter().map(|&c| (c as u64 * inv % p as u64) as u32).collect()
        }
    }
}

pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|x| x as u32).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by zero polynomial");
    let mut r: Vec<u64> = trim(a.to_vec()).into_iter().map(|x| x as u64).collect();
    if r.len() <= db {
        return (Vec::new(), r.into_iter().map(|x| x as u32).collect());
    }
    let inv = inv_mod(b[db], p) as u64;
    let pm = p as u64;
    let mut q = vec![0u32; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % pm;
        q[k] = c as u32;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + (pm - c) * bj as u64) % pm;
        }
    }
    (trim(q), trim(r.into_iter().map(|x| x as u32).collect()))
}

pub fn rem(a: &[u32], b: &[u32], p: u32) -> Poly {
    divrem(a, b, p).1
}

pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &[u32], p: u32) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (c as u64 * (i as u64 % p as u64) % p as u64) as u32).collect())
}

/// `base^e mod m`
pub fn powmod(base: &[u32], mut e: u128, m: &[u32], p: u32) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    rem(&acc, m, p)
}

/// Square-free decomposition as `(factor, multiplicity)` pairs of monic polynomials.
fn squarefree(f: &[u32], p: u32) -> Vec<(Poly, usize)> {
    let f = monic(f, p);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = derivative(&f, p);
    if df.is_empty() {
        // f = g(x^p) = g(x)^p over F_p
        let g: Poly = f.iter().step_by(p as usize).copied().collect();
        return squarefree(&g, p).into_iter().map(|(h, m)| (h, m * p as usize)).collect();
    }
    let mut out = Vec::new();
    let mut c = gcd(&f, &df, p);
    let mut w = divrem(&f, &c, p).0;
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if degree(&z).unwrap_or(0) > 0 {
            out.push((monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if degree(&c).unwrap_or(0) > 0 {
        let g: Poly = c.iter().step_by(p as usize).copied().collect();
        out.extend(squarefree(&g, p).into_iter().map(|(h, m)| (h, m * p as usize)));
    }
    out
}

/// Distinct-degree factorization of a square-free monic polynomial.
fn distinct_degree(f: &[u32], p: u32) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while degree(&f).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if degree(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    if let Some(df) = degree(&f) {
        if df > 0 {
            out.push((f, df));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d` (odd `p`).
fn equal_degree<R: Rng>(f: &[u32], d: usize, p: u32, rng: &mut R) -> Vec<Poly> {
    let n = degree(f).unwrap_or(0);
    if n == d {
        return vec![monic(f, p)];
    }
    loop {
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        // a^((p^d - 1) / 2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1) / 2)
        let mut frob = rem(&a, f, p);
        let mut norm = frob.clone();
        for _ in 1..d {
            frob = powmod(&frob, p as u128, f, p);
            norm = rem(&mul(&norm, &frob, p), f, p);
        }
        let b = sub(&powmod(&norm, (p as u128 - 1) / 2, f, p), &[1], p);
        let g = gcd(f, &b, p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Distinct monic irreducible factors, sorted by degree then coefficients.
pub fn irreducible_factors<R: Rng>(f: &[u32], p: u32, rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    for (sf, _) in squarefree(f, p) {
        for (g, d) in distinct_degree(&sf, p) {
            out.extend(equal_degree(&g, d, p, rng));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out.dedup();
    out
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub fn charpoly(a: &FpMatrix) -> Poly {
    let n = a.rows();
    let p = a.prime();
    let pm = p as u64;
    let mut h: Vec<Vec<u64>> = (0..n).map(|r| a.row(r).iter().map(|&x| x as u64).collect()).collect();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1] as u32, p) as u64;
        for i in m + 1..n {
            let u = h[i][m - 1] * inv % pm;
            if u == 0 {
                continue;
            }
            // row_i -= u row_m ; col_m += u col_i
            for j in 0..n {
                h[i][j] = (h[i][j] + (pm - u) * h[m][j]) % pm;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[i]) % pm;
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Poly> = vec![vec![1]];
    for k in 0..n {
        let mut next = mul(&polys[k], &[(pm - h[k][k]) as u32 % p, 1], p);
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i] % pm;
            if prod == 0 {
                break;
            }
            let c = prod * h[i][k] % pm;
            if c != 0 {
                let term: Poly = polys[i].iter().map(|&x| (x as u64 * c % pm) as u32).collect();
                next = sub(&next, &term, p);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// `f(A)` by Horner's rule.
pub fn eval_matrix(f: &[u32], a: &FpMatrix) -> FpMatrix {
    let n = a.rows();
    let p = a.prime();
    let mut acc = FpMatrix::zeros(p, n, n);
    for &c in f.iter().rev() {
        acc = &(&acc * a) + &FpMatrix::scalar(p, n, c);
    }
    acc
}
