//! Brute-force references, independent of the library algorithms.

use metadual_core::arith::Place;
use metadual_core::cohomology::TwoCocycle;
use metadual_core::rootdata::RootDatum;

/// `rd x GL_1^t`: extra coordinates on which no root pairs.
pub fn pad_torus(rd: &RootDatum, t: usize) -> RootDatum {
    let pad = |v: &Vec<i64>| v.iter().copied().chain(std::iter::repeat_n(0, t)).collect::<Vec<_>>();
    RootDatum::new(
        rd.rank + t,
        rd.roots.iter().map(pad).collect(),
        rd.coroots.iter().map(pad).collect(),
        rd.simple.clone(),
    )
    .expect("padded datum")
}

/// Size of the image of `Z^rank` in `sum Z/m_i` under
/// `y -> (<a_i, y> mod m_i)`, by closure over the images of unit vectors.
pub fn congruence_image_size(functionals: &[Vec<i64>], moduli: &[u64], rank: usize) -> u64 {
    let total: u64 = moduli.iter().product();
    let encode = |v: &[u64]| v.iter().zip(moduli).fold(0u64, |acc, (&x, &m)| acc * m + x);
    let decode = |mut code: u64| {
        let mut v = vec![0u64; moduli.len()];
        for i in (0..moduli.len()).rev() {
            v[i] = code % moduli[i];
            code /= moduli[i];
        }
        v
    };
    let gens: Vec<Vec<u64>> = (0..rank)
        .map(|k| functionals.iter().zip(moduli).map(|(a, &m)| a[k].rem_euclid(m as i64) as u64).collect())
        .collect();
    let mut seen = vec![false; total as usize];
    let mut stack = vec![0u64];
    seen[0] = true;
    let mut count = 1;
    while let Some(code) = stack.pop() {
        let v = decode(code);
        for g in &gens {
            let w: Vec<u64> = v.iter().zip(g).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
            let c = encode(&w);
            if !seen[c as usize] {
                seen[c as usize] = true;
                count += 1;
                stack.push(c);
            }
        }
    }
    count
}

/// `(a, b)_v` from solvability of `a x^2 + b y^2 = z^2`, for `a, b` of
/// valuation at most one. A primitive solution modulo `p^3` (`2^5` at
/// `p = 2`) lifts by Hensel's lemma since some partial derivative has
/// valuation at most one (two at `p = 2`).
pub fn hilbert_brute(place: Place, a: i64, b: i64) -> i8 {
    let p = match place {
        Place::Real => return if a < 0 && b < 0 { -1 } else { 1 },
        Place::Prime(p) => p as i64,
    };
    let m = if p == 2 { 32 } else { p * p * p };
    let mut square_any = vec![false; m as usize];
    let mut square_unit = vec![false; m as usize];
    for z in 0..m {
        let t = (z * z % m) as usize;
        square_any[t] = true;
        if z % p != 0 {
            square_unit[t] = true;
        }
    }
    let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
    for x in 0..m {
        let ax = a * x % m * x % m;
        for y in 0..m {
            let t = ((ax + b * y % m * y) % m) as usize;
            let unit_xy = x % p != 0 || y % p != 0;
            if (unit_xy && square_any[t]) || square_unit[t] {
                return 1;
            }
        }
    }
    -1
}

/// Whether some normalized `s` has `ds = c`, by enumeration. `None` when
/// there are more than `2^17` cochains.
pub fn splitting_brute(c: &TwoCocycle) -> Option<bool> {
    let g = c.group();
    let m = c.module();
    let n = g.order();
    let size = m.order() as u128;
    let count = size.checked_pow(n as u32 - 1)?;
    if count > 1 << 17 {
        return None;
    }
    let elements: Vec<Vec<u64>> = m.elements().collect();
    let mut s = vec![0usize; n];
    for code in 0..count {
        let mut k = code;
        for slot in s.iter_mut().skip(1) {
            *slot = (k % size) as usize;
            k /= size;
        }
        let ok = (1..n).all(|x| {
            (1..n).all(|y| {
                let lhs = m.sub(&m.add(&elements[s[x]], &c.base.act(x, &elements[s[y]])), &elements[s[g.mul(x, y)]]);
                lhs == c.table[x][y]
            })
        });
        if ok {
            return Some(true);
        }
    }
    Some(false)
}
