//! The real L-group of the center for every table cell. The metaGalois
//! class over `R` generates `H^2(Z/2, mu_2)`, and for a trivial module `A`
//! the pushout along `mu_2 -> A` lands in `H^2(Z/2, A) = A / 2A`, so the
//! class vanishes exactly when `tau_Q(-1)` is twice an element.

use metadual_core::arith::Place;
use metadual_core::cohomology::{lgroup, TwoCocycle};
use metadual_core::cover::{identify_dual, table_columns, table_cover, tau_center_element, TableFamily};

/// Whether `coords` is `2x` for some `x` in `sum Z/f_i`, by enumeration.
fn is_double(factors: &[u64], coords: &[u64]) -> bool {
    factors.iter().zip(coords).all(|(&f, &k)| (0..f).any(|x| 2 * x % f == k % f))
}

#[test]
fn real_center_class_is_tau_modulo_doubles() {
    let (mut nonzero, mut cells) = (0, 0);
    for f in TableFamily::ALL {
        for (col, (header, _)) in table_columns(f).into_iter().enumerate() {
            for n in 1..=6 {
                let label = format!("{header} n={n}");
                let c = table_cover(f, col, n).unwrap();
                let tau = tau_center_element(&c).unwrap();
                let id = identify_dual(&c).unwrap();
                let data = lgroup(&c, Place::Real, None).unwrap();
                cells += 1;
                assert_eq!(id.tau_nontrivial, !tau.is_zero(), "{label}");
                let size: u64 = tau.factors.iter().product();
                assert_eq!(data.lz_order as u64, 2 * size, "{label}");
                let zero = is_double(&tau.factors, &tau.coords);
                assert_eq!(data.class_is_zero, zero, "{label}");
                assert_eq!(data.class_order, if zero { 1 } else { 2 }, "{label}");
                match &data.splitting {
                    Some(s) => assert_eq!(TwoCocycle::coboundary(&data.class.base, s).unwrap(), data.class, "{label}"),
                    None => {
                        assert!(!zero, "{label}");
                        nonzero += 1;
                    }
                }
            }
        }
    }
    assert_eq!(cells, 150);
    assert!(nonzero > 0);
}

#[test]
fn odd_place_classes_have_order_at_most_two() {
    for f in TableFamily::ALL {
        for col in 0..table_columns(f).len() {
            let c = table_cover(f, col, 2).unwrap();
            for p in [3, 5, 7] {
                let data = lgroup(&c, Place::Prime(p), None).unwrap();
                assert!(data.class.verify().is_ok());
                assert!(data.class_order <= 2);
            }
        }
    }
}
