use crate::error::Error;
use crate::Result;

/// Kronecker symbol (a/n), the full extension of the Legendre symbol to all
/// integers n != 0. Agrees with the Legendre symbol when n is an odd prime.
pub fn kronecker_symbol(a: i64, n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::KroneckerZeroModulus);
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Factor out twos from n: (a/2) is 0 for even a, else (-1)^((a^2-1)/8).
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => return Ok(0),
            1 | 7 => {}
            _ => result = -result, // 3 or 5 mod 8
        }
    }
    a = a.rem_euclid(n);
    // Jacobi symbol by quadratic reciprocity.
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    Ok(if n == 1 { result } else { 0 })
}
