//! Decibel conversions for power quantities.

/// `10^(db/10)`.
#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10 log10(x)`.
#[inline]
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((db_to_linear(5.0) - 10f64.sqrt()).abs() < 1e-15);
        assert!((db_to_linear(-10.0) - 0.1).abs() < 1e-16);
        assert!((linear_to_db(db_to_linear(3.7)) - 3.7).abs() < 1e-13);
    }
}
