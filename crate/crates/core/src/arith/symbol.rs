use crate::error::{Error, Result};

/// Kronecker symbol `(a | m)`. Agrees with the Legendre symbol when `m` is
/// an odd prime.
pub fn kronecker(a: i64, m: i64) -> Result<i8> {
    if m == 0 {
        return Err(Error::invalid("kronecker symbol with m = 0"));
    }
    let mut a = a as i128;
    let mut m = m as i128;
    let mut sign = 1i8;

    if m < 0 {
        m = -m;
        if a < 0 {
            sign = -sign;
        }
    }

    let twos = m.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        m >>= twos;
        // (a | 2) = (-1)^((a^2 - 1) / 8)
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }

    // Jacobi symbol for odd positive m
    a = a.rem_euclid(m);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    Ok(if m == 1 { sign } else { 0 })
}
