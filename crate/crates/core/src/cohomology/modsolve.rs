//! Linear congruences with per-row moduli, solved prime by prime.
//!
//! Each variable `x_j` lives in `Z/d_j` and each row asks
//! `sum_j a_j x_j = b (mod m)`. Rows must be well defined: `a_j d_j` is a
//! multiple of `m`. The `p`-primary part of the system only involves the
//! `p`-parts of the variables, and over the local ring `Z/p^E` a full-pivot
//! elimination by smallest valuation reaches a triangular form.

pub(crate) struct Row {
    pub coeffs: Vec<(usize, i64)>,
    pub rhs: i64,
    pub modulus: u64,
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

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

/// Solves `A y = b` over `Z/p^e`; `a` is dense.
fn solve_local(p: u64, e: u32, mut a: Vec<Vec<u64>>, mut b: Vec<u64>, cols: usize) -> Option<Vec<u64>> {
    let m = p.pow(e);
    let val = |x: u64| if x == 0 { e } else { valuation(x, p).min(e) };
    let rows = a.len();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x != 0 {
                    let v = val(x);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        a.swap(k, i);
        b.swap(k, i);
        for row in a.iter_mut() {
            row.swap(k, j);
        }
        perm.swap(k, j);
        let pv = p.pow(v);
        let unit_inv = inv_mod(a[k][k] / pv, m);
        for x in a[k].iter_mut() {
            *x = mulmod(*x, unit_inv, m);
        }
        b[k] = mulmod(b[k], unit_inv, m);
        let pivot_row = a[k].clone();
        let pivot_b = b[k];
        for r in k + 1..rows {
            if a[r][k] == 0 {
                continue;
            }
            let f = a[r][k] / pv;
            for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                *x = (*x + m - mulmod(f, y, m)) % m;
            }
            b[r] = (b[r] + m - mulmod(f, pivot_b, m)) % m;
        }
        pivots.push(v);
        k += 1;
    }
    if b.iter().skip(k).any(|&x| x != 0) {
        return None;
    }
    let mut y = vec![0u64; cols];
    for r in (0..k).rev() {
        let mut rhs = b[r];
        for j in r + 1..cols {
            rhs = (rhs + m - mulmod(a[r][j], y[j], m)) % m;
        }
        let v = pivots[r];
        if val(rhs) < v {
            return None;
        }
        y[r] = rhs / p.pow(v);
    }
    let mut out = vec![0u64; cols];
    for (pos, &var) in perm.iter().enumerate() {
        out[var] = y[pos];
    }
    Some(out)
}

/// Returns `x` with `x_j` reduced mod `var_moduli[j]`, or `None`.
pub(crate) fn solve(var_moduli: &[u64], rows: &[Row]) -> Option<Vec<u64>> {
    let mut all: Vec<u64> = var_moduli.iter().chain(rows.iter().map(|r| &r.modulus)).copied().collect();
    all.sort_unstable();
    all.dedup();
    let mut primes: Vec<u64> = all.iter().flat_map(|&d| prime_factors(d)).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut x = vec![0u64; var_moduli.len()];
    // modulus already fixed for each variable (CRT accumulator)
    let mut fixed = vec![1u64; var_moduli.len()];
    for p in primes {
        let e = all.iter().map(|&d| valuation(d, p)).max().unwrap_or(0);
        if e == 0 {
            continue;
        }
        let m = p.pow(e);
        let vars: Vec<usize> = (0..var_moduli.len()).filter(|&j| valuation(var_moduli[j], p) > 0).collect();
        let mut col = vec![usize::MAX; var_moduli.len()];
        for (c, &j) in vars.iter().enumerate() {
            col[j] = c;
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for r in rows {
            let ei = valuation(r.modulus, p);
            if ei == 0 {
                continue;
            }
            let scale = p.pow(e - ei);
            let mut dense = vec![0u64; vars.len()];
            for &(j, c) in &r.coeffs {
                if col[j] != usize::MAX {
                    let c = (c as i128).rem_euclid(m as i128) as u64;
                    dense[col[j]] = (dense[col[j]] + mulmod(c, scale, m)) % m;
                }
            }
            a.push(dense);
            b.push(mulmod((r.rhs as i128).rem_euclid(m as i128) as u64, scale, m));
        }
        let y = solve_local(p, e, a, b, vars.len())?;
        for (c, &j) in vars.iter().enumerate() {
            let pe = p.pow(valuation(var_moduli[j], p));
            // x = x mod fixed, y mod pe
            let (xj, f) = (x[j], fixed[j]);
            let t = mulmod((y[c] % pe + pe - xj % pe) % pe, inv_mod(f % pe, pe), pe);
            x[j] = xj + f * t;
            fixed[j] = f * pe;
        }
    }
    for (xj, &d) in x.iter_mut().zip(var_moduli) {
        *xj %= d;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(var_moduli: &[u64], rows: &[Row], x: &[u64]) -> bool {
        rows.iter().all(|r| {
            let s: i128 = r.coeffs.iter().map(|&(j, c)| c as i128 * x[j] as i128).sum();
            (s - r.rhs as i128).rem_euclid(r.modulus as i128) == 0
        }) && x.iter().zip(var_moduli).all(|(a, b)| a < b)
    }

    #[test]
    fn small_systems() {
        // 2x = 1 mod 4 has no solution
        assert!(solve(&[4], &[Row { coeffs: vec![(0, 2)], rhs: 1, modulus: 4 }]).is_none());
        // 2x = 2 mod 4
        let rows = [Row { coeffs: vec![(0, 2)], rhs: 2, modulus: 4 }];
        let x = solve(&[4], &rows).unwrap();
        assert!(check(&[4], &rows, &x));
        // mixed moduli: x in Z/6, y in Z/4, x + 3y = 5 mod 6 and 2x = 2 mod 4 (x mod 2)
        let rows = [
            Row { coeffs: vec![(0, 1), (1, 3)], rhs: 5, modulus: 6 },
            Row { coeffs: vec![(1, 2)], rhs: 2, modulus: 4 },
        ];
        let x = solve(&[6, 4], &rows);
        // y odd forces 3y = 3 mod 6 so x = 2 mod 6
        let x = x.unwrap();
        assert!(check(&[6, 4], &rows, &x));
    }

    #[test]
    fn exhaustive_against_brute_force() {
        // all systems a x + b y = c mod 8 with x in Z/8, y in Z/2 (b even... any b with 2b = 0 mod 8 -> b in {0,4})
        for a in 0..8i64 {
            for b in [0i64, 4] {
                for c in 0..8i64 {
                    let rows = [Row { coeffs: vec![(0, a), (1, b)], rhs: c, modulus: 8 }];
                    let brute =
                        (0..8u64).any(|x| (0..2u64).any(|y| (a * x as i64 + b * y as i64 - c).rem_euclid(8) == 0));
                    match solve(&[8, 2], &rows) {
                        Some(x) => assert!(brute && check(&[8, 2], &rows, &x)),
                        None => assert!(!brute, "a={a} b={b} c={c}"),
                    }
                }
            }
        }
    }
}
