use num_traits::One;

use koornwinder::bcpoly::BCPoly;
use koornwinder::intops::build_kernel;
use koornwinder::partition::box_partitions;
use koornwinder::random::Sampler;
use koornwinder::scalar::int;
use koornwinder::{Partition, Rational};

/// `prod_{i,j} (y_j + 1/y_j - z_i - 1/z_i)` evaluated directly.
fn product(z: &[Rational], y: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for zi in z {
        for yj in y {
            acc *= yj + yj.recip() - zi - zi.recip();
        }
    }
    acc
}

#[test]
fn expansion_matches_the_product_at_random_points() {
    let mut s = Sampler::new(41);
    for (n, m) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2), (3, 2), (2, 3)] {
        let kernel = build_kernel(n, m);
        for _ in 0..5 {
            let z = s.pole_free_point(n);
            let y = s.pole_free_point(m);
            let mut sum = Rational::from_integer(0.into());
            for (mu, row) in kernel.rows() {
                let my = BCPoly::<Rational>::monomial(m, mu.clone()).unwrap().evaluate(&y).unwrap();
                sum += my * row.evaluate(&z).unwrap();
            }
            assert_eq!(sum, product(&z, &y), "n={n} m={m}");
        }
    }
}

#[test]
fn paired_rows_carry_the_signed_unit_coefficient() {
    for (n, m) in [(1usize, 2usize), (2, 2), (3, 2), (2, 3)] {
        let kernel = build_kernel(n, m);
        for lambda in box_partitions(m as u32, n) {
            let mu = kernel.paired_row(&lambda);
            let sign = if lambda.size() % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(kernel.entry(&mu, &lambda), sign, "n={n} m={m} λ={lambda}");
            // every other monomial in that row is dominated by λ
            assert!(kernel.row(&mu).unwrap().supported_below(&lambda));
        }
    }
}

#[test]
fn pairing_is_an_involution_on_the_box() {
    for (n, m) in [(2usize, 3u32), (3, 2), (3, 3)] {
        for lambda in box_partitions(m, n) {
            let mu = lambda.complement_conjugate(m, n);
            assert!(mu.fits_box(n as u32, m as usize));
            assert_eq!(mu.complement_conjugate(n as u32, m as usize), lambda);
        }
    }
}

#[test]
fn single_factor_kernel() {
    let k = build_kernel(1, 1);
    // y + 1/y - z - 1/z = m_(1)(y) - m_(1)(z)
    assert_eq!(k.entry(&Partition::new(vec![1]).unwrap(), &Partition::empty()), int(1));
    assert_eq!(k.entry(&Partition::empty(), &Partition::new(vec![1]).unwrap()), int(-1));
}
