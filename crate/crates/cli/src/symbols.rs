//! Hilbert symbols and Weil indices.

use std::fmt::Write;

use anyhow::{Context, Result};
use clap::Args;
use num_rational::Rational64;
use serde::Serialize;

use metadual_core::arith::{hilbert, hilbert_product, weil_index, LocalSymbol, Place, RootOfUnity8, SquareClass};

use crate::report::Outcome;

fn rational(s: &str) -> Result<Rational64> {
    s.trim().parse::<Rational64>().with_context(|| format!("{s:?} is not a rational number"))
}

/// `all`, or a single place.
fn places(arg: &str) -> Result<Option<Place>> {
    if arg.eq_ignore_ascii_case("all") {
        Ok(None)
    } else {
        Ok(Some(arg.parse::<Place>()?))
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct HilbertArgs {
    /// Nonzero rational, e.g. `-3` or `5/7`.
    pub a: String,
    pub b: String,
    /// A prime, `real`, or `all` for every place where the symbol can be -1.
    #[arg(long, default_value = "all")]
    pub place: String,
}

#[derive(Serialize)]
struct HilbertReport {
    a: String,
    b: String,
    local: Vec<LocalSymbol>,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<i8>,
}

fn sign(v: i8) -> &'static str {
    if v < 0 {
        "-1"
    } else {
        "+1"
    }
}

pub fn cmd_hilbert(args: &HilbertArgs) -> Result<Outcome> {
    let (a, b) = (rational(&args.a)?, rational(&args.b)?);
    let (local, product) = match places(&args.place)? {
        Some(place) => {
            let value = hilbert(&SquareClass::from_rational(place, a)?, &SquareClass::from_rational(place, b)?)?;
            (vec![LocalSymbol { place, value }], None)
        }
        None => {
            let hp = hilbert_product(a, b)?;
            (hp.local, Some(hp.product))
        }
    };
    let mut text = String::new();
    for s in &local {
        writeln!(text, "({a}, {b})_{} = {}", s.place, sign(s.value))?;
    }
    if let Some(p) = product {
        writeln!(text, "product = {}", sign(p))?;
    }
    Ok(Outcome::new(HilbertReport { a: a.to_string(), b: b.to_string(), local, product }, text))
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct WeilArgs {
    /// Nonzero rational whose square class is evaluated.
    pub u: String,
    /// A prime, `real`, or `all` (real, 2 and the primes dividing u or psi).
    #[arg(long, default_value = "all")]
    pub place: String,
    /// Scale `u0` of the additive character `x -> psi(u0 x)`.
    #[arg(long, default_value = "1")]
    pub psi: String,
}

#[derive(Serialize)]
struct WeilValue {
    place: Place,
    class: SquareClass,
    psi_class: SquareClass,
    /// `w = i^exponent`.
    exponent: u8,
    value: String,
}

fn prime_divisors(mut n: u64, out: &mut Vec<u64>) {
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
}

pub fn cmd_weil(args: &WeilArgs) -> Result<Outcome> {
    let (u, psi) = (rational(&args.u)?, rational(&args.psi)?);
    let list = match places(&args.place)? {
        Some(p) => vec![p],
        None => {
            let mut primes = vec![2];
            for x in [u.numer(), u.denom(), psi.numer(), psi.denom()] {
                prime_divisors(x.unsigned_abs(), &mut primes);
            }
            primes.sort_unstable();
            primes.dedup();
            std::iter::once(Place::Real).chain(primes.into_iter().map(Place::Prime)).collect()
        }
    };
    let mut values = Vec::new();
    let mut text = String::new();
    for place in list {
        let class = SquareClass::from_rational(place, u)?;
        let psi_class = SquareClass::from_rational(place, psi)?;
        let w: RootOfUnity8 = weil_index(&class, &psi_class)?;
        writeln!(text, "w({u}, psi_{psi}) at {place} = {w}")?;
        values.push(WeilValue {
            place,
            class,
            psi_class,
            exponent: w.mu4_exponent().expect("Weil index lies in mu_4"),
            value: w.to_string(),
        });
    }
    Ok(Outcome::new(values, text))
}
