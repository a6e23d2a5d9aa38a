//! Fixtures shared by the pipeline benchmarks.

use curve_ideal::Parametrization;

/// Degree 6 rational curve in `P^3` whose ideal is generated by 4 cubics.
pub fn sextic() -> Parametrization {
    Parametrization::from_integer_rows(&[
        &[0, 0, 3, -9, -3, 12, 6],
        &[-3, 18, -27, -12, 33, 6, -6],
        &[1, -6, 13, -16, 9, 14, -6],
        &[0, 0, -2, 8, -14, 20, -6],
    ])
    .expect("valid parametrization")
}

/// Integer points `(1 : t : ... : t^n)` on the rational normal curve.
pub fn normal_curve_points(n: usize, count: usize) -> Vec<Vec<i64>> {
    (0..count as i64).map(|t| (0..=n as u32).map(|e| t.pow(e)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_well_formed() {
        assert_eq!((sextic().n(), sextic().degree()), (3, 6));
        assert_eq!(normal_curve_points(3, 3)[2], [1, 2, 4, 8]);
    }
}
