//! Dense linear algebra over the prime field `F_p`.

pub type Matrix = Vec<Vec<u64>>;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    pow(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod modulus)` with `p > bound`.
pub fn dixon_prime(modulus: u64, bound: u64) -> u64 {
    let mut p = bound / modulus * modulus + 1;
    while p <= bound || !is_prime(p) {
        p += modulus;
    }
    p
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group of `F_p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a generator")
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pivot);
        let scale = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul(*x, scale, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let t = mul(f, m[r][j], p);
                    m[i][j] = sub(m[i][j], t, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of `{v : m·v = 0}` for a `rows × cols` matrix.
pub fn nullspace(m: &Matrix, cols: usize, p: u64) -> Matrix {
    let mut a = m.clone();
    let pivots = rref(&mut a, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = sub(0, row[f], p);
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[u64], p: u64) -> Vec<u64> {
    m.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| add(acc, mul(a, b, p), p))).collect()
}

/// Characteristic polynomial `det(xI - m)`, lowest degree first, by reduction
/// to upper Hessenberg form.
pub fn charpoly(m: &Matrix, p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
        if piv != c + 1 {
            h.swap(piv, c + 1);
            for row in h.iter_mut() {
                row.swap(piv, c + 1);
            }
        }
        let pinv = inv(h[c + 1][c], p);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let f = mul(h[i][c], pinv, p);
            // row_i -= f·row_{c+1}; then col_{c+1} += f·col_i
            for j in 0..n {
                let t = mul(f, h[c + 1][j], p);
                h[i][j] = sub(h[i][j], t, p);
            }
            for row in h.iter_mut() {
                let t = mul(f, row[i], p);
                row[c + 1] = add(row[c + 1], t, p);
            }
        }
    }
    // polys[k] = charpoly of the leading k×k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let hk = h[k - 1][k - 1];
        // (x - h_kk)·p_{k-1}
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = add(next[d + 1], c, p);
            next[d] = sub(next[d], mul(hk, c, p), p);
        }
        let mut prod = 1u64;
        for i in (1..k).rev() {
            prod = mul(prod, h[i][i - 1], p);
            let coef = mul(prod, h[i - 1][k - 1], p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                next[d] = sub(next[d], mul(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
}

/// Distinct roots of a polynomial in `F_p`, by exhaustive evaluation.
pub fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval_poly(poly, x, p) == 0).collect()
}
