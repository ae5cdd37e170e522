//! Integer-order Bessel functions of the first kind.

/// `J_0(x) … J_{n_max}(x)` by Miller's backward recurrence, normalized with
/// `J_0 + 2 Σ J_{2k} = 1`.
pub fn bessel_j_upto(n_max: u32, x: f64) -> Vec<f64> {
    let len = n_max as usize + 1;
    if x == 0.0 {
        let mut out = vec![0.0; len];
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();

    let anchor = f64::from(n_max).max(ax.ceil());
    let mut start = (anchor + 30.0 + (40.0 * anchor).sqrt()) as usize;
    start += start % 2;

    let mut values = vec![0.0; len];
    let mut next = 0.0; // j_{k+1}
    let mut curr = 1e-30; // j_k
    let mut norm = 0.0;
    for k in (0..=start).rev() {
        if k < len {
            values[k] = curr;
        }
        if k % 2 == 0 {
            norm += if k == 0 { curr } else { 2.0 * curr };
        }
        if k == 0 {
            break;
        }
        let prev = 2.0 * k as f64 / ax * curr - next;
        next = curr;
        curr = prev;
        if curr.abs() > 1e200 {
            curr *= 1e-200;
            next *= 1e-200;
            norm *= 1e-200;
            for v in values.iter_mut() {
                *v *= 1e-200;
            }
        }
    }

    for (n, v) in values.iter_mut().enumerate() {
        *v /= norm;
        if x < 0.0 && n % 2 == 1 {
            *v = -*v;
        }
    }
    values
}

/// `J_n(x)` for any integer `n`, using `J_{−n} = (−1)ⁿ J_n`.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let order = n.unsigned_abs();
    let value = bessel_j_upto(order, x)[order as usize];
    if n < 0 && order % 2 == 1 {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Ascending series Σ (−1)^m (x/2)^{2m+n} / (m!(m+n)!), fine for small |x|.
    fn series(n: u32, x: f64) -> f64 {
        let half = x / 2.0;
        let mut term = half.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
        let mut sum = term;
        for m in 1..60 {
            let m = f64::from(m);
            term *= -half * half / (m * (m + f64::from(n)));
            sum += term;
        }
        sum
    }

    #[test]
    fn matches_power_series() {
        for &x in &[1e-6, 0.1, 0.5, 1.0, 2.0, 4.5, -0.7] {
            let values = bessel_j_upto(20, x);
            for n in 0..=20u32 {
                assert_abs_diff_eq!(values[n as usize], series(n, x), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn reference_values() {
        assert_abs_diff_eq!(bessel_j(0, 1.0), 0.765_197_686_557_966_6, epsilon = 1e-15);
        assert_abs_diff_eq!(bessel_j(1, 1.0), 0.440_050_585_744_933_5, epsilon = 1e-15);
        assert_abs_diff_eq!(bessel_j(0, 10.0), -0.245_935_764_451_348_3, epsilon = 1e-14);
        assert_abs_diff_eq!(bessel_j(5, 10.0), -0.234_061_528_186_793_6, epsilon = 1e-14);
        assert_abs_diff_eq!(bessel_j(-1, 0.5), -0.242_268_457_674_873_9, epsilon = 1e-15);
    }

    #[test]
    fn zero_argument() {
        assert_eq!(bessel_j_upto(5, 0.0), vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn negative_order_reflection() {
        for n in 1..8 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(bessel_j(-n, 1.3), sign * bessel_j(n, 1.3));
        }
    }

    #[test]
    fn large_argument_stays_normalized() {
        let values = bessel_j_upto(150, 80.0);
        let sum_sq = values[0].powi(2) + 2.0 * values[1..].iter().map(|v| v * v).sum::<f64>();
        assert_abs_diff_eq!(sum_sq, 1.0, epsilon = 1e-12);
    }
}
