//! Shared generators for the integration tests.
#![allow(dead_code)]

use insitu::{Binary, Field, Matrix, PrimeField, Rationals};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entry with a bias towards zero, so that zero pivots come up often.
pub fn random_elem<F: Field>(rng: &mut impl Rng, field: &F) -> F::Elem {
    if rng.gen_bool(0.35) {
        return field.zero();
    }
    match field.cardinality() {
        Some(q) => field.element(rng.gen_range(0..q)),
        None => {
            let num = field.from_i64(rng.gen_range(-9..=9));
            let den = field.from_i64(rng.gen_range(1..=4));
            field.mul(&num, &field.inv(&den).unwrap())
        }
    }
}

pub fn random_matrix<F: Field>(rng: &mut impl Rng, field: &F, n: usize) -> Matrix<F> {
    let data = (0..n * n).map(|_| random_elem(rng, field)).collect();
    Matrix::new(field.clone(), n, data).unwrap()
}

pub fn random_regular_gf2(rng: &mut impl Rng, n: usize) -> Matrix<Binary> {
    let mut m = random_matrix(rng, &Binary::new(), n);
    for i in 0..n {
        m.set(i, i, insitu::Gf2::ONE);
    }
    m
}

pub fn gf2<R: AsRef<[i64]>>(rows: &[R]) -> Matrix<Binary> {
    Matrix::from_i64(Binary::new(), rows).unwrap()
}

pub fn rational<R: AsRef<[i64]>>(rows: &[R]) -> Matrix<Rationals> {
    Matrix::from_i64(Rationals::new(), rows).unwrap()
}

pub fn gf7() -> PrimeField {
    PrimeField::new(7).unwrap()
}

/// Every `n x n` GF(2) matrix, in order of the bit pattern of its entries.
pub fn all_gf2(n: usize) -> impl Iterator<Item = Matrix<Binary>> {
    (0u64..1 << (n * n)).map(move |bits| {
        let data = (0..n * n)
            .map(|b| insitu::Gf2(bits >> b & 1 == 1))
            .collect();
        Matrix::new(Binary::new(), n, data).unwrap()
    })
}

/// Every regular `n x n` GF(2) matrix.
pub fn all_regular_gf2(n: usize) -> impl Iterator<Item = Matrix<Binary>> {
    all_gf2(n).filter(|m| m.is_regular())
}
