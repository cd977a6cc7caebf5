use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use metadual_core::arith::{hilbert, hilbert_product, weil_index, Place, RootOfUnity8, SquareClass};
use metadual_core::cohomology::{metagalois_model, unit_subgroup, weil_splitting, ExtensionGroup};

use super::oracles::hilbert_brute;
use super::Check;

const PLACES: [Place; 7] = [
    Place::Real,
    Place::Prime(2),
    Place::Prime(3),
    Place::Prime(5),
    Place::Prime(7),
    Place::Prime(11),
    Place::Prime(13),
];

fn h(a: &SquareClass, b: &SquareClass) -> Result<i8, String> {
    hilbert(a, b).map_err(|e| format!("Hilbert symbol ({a}, {b}): {e}"))
}

fn hilbert_laws(place: Place) -> Result<(), String> {
    let classes = place.square_classes();
    for a in &classes {
        for b in &classes {
            let v = h(a, b)?;
            if v != h(b, a)? {
                return Err(format!("{place}: ({a}, {b}) is not symmetric"));
            }
            if v != hilbert_brute(place, a.rep, b.rep) {
                return Err(format!("{place}: ({a}, {b}) = {v} disagrees with solvability of a x^2 + b y^2 = z^2"));
            }
            for a2 in &classes {
                let prod = a.mul(a2).map_err(|e| e.to_string())?;
                if h(&prod, b)? != v * h(a2, b)? {
                    return Err(format!("{place}: not multiplicative in ({a} {a2}, {b})"));
                }
            }
        }
        let one = SquareClass::one(place);
        if *a != one && classes.iter().all(|b| h(a, b) == Ok(1)) {
            return Err(format!("{place}: {a} pairs trivially with everything"));
        }
    }
    Ok(())
}

fn weil_hilbert(place: Place) -> Result<(), String> {
    let classes = place.square_classes();
    let w = |u: &SquareClass, psi: &SquareClass| weil_index(u, psi).map_err(|e| format!("w({u}, {psi}): {e}"));
    for psi in &classes {
        for u in &classes {
            for v in &classes {
                let uv = u.mul(v).map_err(|e| e.to_string())?;
                let lhs = w(&uv, psi)?;
                let rhs = w(u, psi)?.mul(w(v, psi)?).mul(RootOfUnity8::from_sign(h(u, v)?));
                if lhs != rhs {
                    return Err(format!(
                        "{place}: w({u}{v}) / w({u}) w({v}) is not Hilb({u}, {v}) for psi scale {psi}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn metagalois(place: Place) -> Result<(), String> {
    let e = |x: metadual_core::cohomology::CohomologyError| format!("{place}: {x}");
    let c = metagalois_model(place).map_err(e)?;
    if let Err(t) = c.verify() {
        return Err(format!("{place}: metaGalois cocycle fails at {t:?}"));
    }
    match place {
        Place::Real => {
            if c.is_split().map_err(e)? {
                return Err("R: metaGalois model splits".into());
            }
            let ext = ExtensionGroup::new(c.clone()).map_err(e)?;
            if ext.element_order(&[0], 1) != 4 {
                return Err("R: lift of the nontrivial class does not have order 4".into());
            }
        }
        Place::Prime(p) if p != 2 => {
            let (units, incl) = unit_subgroup(place);
            if !c.pullback(&units, &incl).map_err(e)?.is_split().map_err(e)? {
                return Err(format!("{place}: restriction to units does not split"));
            }
        }
        Place::Prime(_) => {}
    }
    for psi in place.square_classes() {
        let s = weil_splitting(place, psi).map_err(e)?;
        if !s.is_homomorphism {
            return Err(format!("{place}: Weil section is not a homomorphism for psi scale {psi}"));
        }
        if !s.shift_law {
            return Err(format!("{place}: shift law fails for psi scale {psi}"));
        }
    }
    Ok(())
}

fn random_rational(rng: &mut StdRng) -> Rational64 {
    let num = loop {
        let x: i64 = rng.gen_range(-1000..=1000);
        if x != 0 {
            break x;
        }
    };
    Rational64::new(num, rng.gen_range(1..=1000))
}

pub fn criterion() -> Check {
    let start = Instant::now();
    for place in PLACES {
        hilbert_laws(place)?;
        weil_hilbert(place)?;
        metagalois(place)?;
    }
    let mut rng = StdRng::seed_from_u64(0x6869_6c62);
    for _ in 0..200 {
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let hp = hilbert_product(a, b).map_err(|e| format!("({a}, {b}): {e}"))?;
        if hp.product != 1 {
            return Err(format!("product formula fails for ({a}, {b})"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        return Err(format!("took {:.2}s, limit 5s", elapsed.as_secs_f64()));
    }
    Ok(format!("7 places exhaustive, 200 product-formula pairs, {:.2}s", elapsed.as_secs_f64()))
}
