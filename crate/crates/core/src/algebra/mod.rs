//! Exact scalar rings and tensor-operator algebra.

pub mod linalg;
pub mod rat;
pub mod scalar;
pub mod series;
pub mod tensor;

pub use rat::Rat;
pub use scalar::Scalar;
pub use series::Series;
pub use tensor::TensorOperator;

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Rat {
    if n < 0 || k < 0 || k > n {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= Rat::new(n - i, i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), Rat::from_int(10));
        assert_eq!(binomial(3, 4), Rat::zero());
        assert_eq!(binomial(3, -1), Rat::zero());
        assert_eq!(binomial(-1, 0), Rat::zero());
        assert_eq!(binomial(0, 0), Rat::one());
    }
}
