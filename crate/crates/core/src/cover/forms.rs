use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{CoverError, QuadraticForm};
use crate::lattice::IntMatrix;
use crate::rootdata::{dynkin_type, RootDatum};

/// The Weyl-invariant form with value `t` on every short coroot of each
/// simple factor (every coroot in simply laced factors). It vanishes on
/// cocharacters killed by all roots.
pub fn qt_form(rd: &RootDatum, t: i64) -> Result<QuadraticForm, CoverError> {
    let r = rd.rank;
    let dynkin = dynkin_type(rd)?;
    let coords = rd
        .simple_coordinates()
        .ok_or_else(|| CoverError::UnsupportedForm("roots are not integral in the simple roots".into()))?;
    let mut b = IntMatrix::zeros(r, r);
    for comp in &dynkin.components {
        let members: Vec<usize> = (0..rd.roots.len())
            .filter(|&i| coords[i].iter().enumerate().any(|(j, &x)| x != 0 && comp.nodes.contains(&j)))
            .collect();
        // K(y, y') = sum over the component of <phi, y><phi, y'>
        let mut k = vec![vec![0i64; r]; r];
        for &i in &members {
            let phi = &rd.roots[i];
            for a in 0..r {
                for c in 0..r {
                    k[a][c] += phi[a] * phi[c];
                }
            }
        }
        let kval = |y: &[i64]| -> i64 { (0..r).map(|a| (0..r).map(|c| y[a] * k[a][c] * y[c]).sum::<i64>()).sum() };
        let h = members.iter().map(|&i| kval(&rd.coroots[i]) / 2).min().expect("nonempty component");
        for a in 0..r {
            for c in 0..r {
                let num = BigInt::from(t) * BigInt::from(k[a][c]);
                let (q, rem) = num.div_rem(&BigInt::from(h));
                if !rem.is_zero() {
                    return Err(CoverError::UnsupportedForm(format!("Q_{t} is not integral on this lattice")));
                }
                b[(a, c)] += q;
            }
        }
    }
    let form = QuadraticForm::new(b)
        .map_err(|_| CoverError::UnsupportedForm(format!("Q_{t} is not integral on this lattice")))?;
    Ok(form)
}

/// Form on `Y = Z^r` for `GL_r` with `Q(e_1 - e_2) = q` and `Q(e_1) = 1 + c`.
pub fn glr_form(r: usize, q: i64, c: i64) -> Result<QuadraticForm, CoverError> {
    if r == 0 {
        return Err(CoverError::UnsupportedForm("GL_0".into()));
    }
    let off = 2 * c + 2 - q;
    let rows: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| if i == j { 2 * c + 2 } else { off }).collect()).collect();
    QuadraticForm::from_i64(&rows)
}

/// Form on `Y = Z e_0 + ... + Z e_r` for `GSp_{2r}` with `Q(e_0) = kappa`
/// and `Q(e_i) = nu` for `1 <= i <= r`.
pub fn gsp_form(r: usize, kappa: i64, nu: i64) -> Result<QuadraticForm, CoverError> {
    if r == 0 {
        return Err(CoverError::UnsupportedForm("GSp_0".into()));
    }
    let n = r + 1;
    let mut rows = vec![vec![0i64; n]; n];
    rows[0][0] = 2 * kappa;
    for i in 1..n {
        rows[i][i] = 2 * nu;
        rows[0][i] = -nu;
        rows[i][0] = -nu;
    }
    QuadraticForm::from_i64(&rows)
}
