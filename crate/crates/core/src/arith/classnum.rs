use std::f64::consts::PI;

use num_integer::Integer;

use super::factor::factorize;
use crate::error::{Error, Result};

/// Discriminant of the imaginary quadratic field `Q(sqrt(d))`.
pub fn discriminant_of(d: i64) -> Result<i64> {
    if d >= 0 {
        return Err(Error::invalid(format!("discriminant_of needs d < 0, got {d}")));
    }
    let core: i64 = factorize(d.unsigned_abs())?
        .factors
        .iter()
        .filter(|&&(_, e)| e % 2 == 1)
        .map(|&(p, _)| p as i64)
        .product();
    let core = -core;
    Ok(if core.rem_euclid(4) == 1 { core } else { 4 * core })
}

fn is_squarefree(m: u64) -> bool {
    m != 0 && factorize(m).is_ok_and(|f| f.factors.iter().all(|&(_, e)| e == 1))
}

pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

fn check_negative_fundamental(d: i64) -> Result<()> {
    if d >= 0 || !is_fundamental(d) {
        return Err(Error::invalid(format!(
            "{d} is not a negative fundamental discriminant"
        )));
    }
    Ok(())
}

/// Number of units in the ring of integers of discriminant `d`.
pub fn units_count(d: i64) -> u64 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// Counts reduced primitive forms `(a, b, c)`, `b^2 - 4ac = d`,
/// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
pub fn class_number(d: i64) -> Result<u64> {
    check_negative_fundamental(d)?;
    let abs_d = d.unsigned_abs();
    let mut h = 0u64;
    let mut b = abs_d % 2 ;
    // b^2 <= a^2 <= ac = (b^2 + |d|) / 4 gives 3 b^2 <= |d|
    while 3 * b * b <= abs_d {
        let q = (b * b + abs_d) / 4;
        let mut a = b.max(1);
        while a * a <= q {
            if q.is_multiple_of(a) {
                let c = q / a;
                if a.gcd(&b).gcd(&c) == 1 {
                    h += if b == 0 || a == b || a == c { 1 } else { 2 };
                }
            }
            a += 1;
        }
        b += 2;
    }
    Ok(h)
}

/// `L(1, chi_d)` by the class number formula `2 pi h / (w sqrt|d|)`.
pub fn l_value(d: i64) -> Result<f64> {
    let h = class_number(d)?;
    Ok(2.0 * PI * h as f64 / (units_count(d) as f64 * (d.unsigned_abs() as f64).sqrt()))
}
