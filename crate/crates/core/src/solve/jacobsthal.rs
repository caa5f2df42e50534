use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `J_0 = 0`, `J_1 = 1`, `J_n = J_{n-1} + 2 J_{n-2}`.
///
/// Panics if the recurrence disagrees with `J_{n+1} = 2^n - J_n`,
/// `J_{n+1} = 2 J_n + (-1)^n` or `J_n = (2^n - (-1)^n) / 3`.
pub fn jacobsthal(n: u32) -> BigInt {
    let seq = sequence(n);
    let value = seq[n as usize].clone();
    assert_eq!(value, closed_form(n), "closed form disagrees at {n}");
    if n >= 1 {
        let prev = &seq[n as usize - 1];
        assert_eq!(value, pow2(n - 1) - prev, "2^n - J_n disagrees at {n}");
        assert_eq!(value, prev * 2 + sign(n - 1), "2J_n + (-1)^n disagrees at {n}");
    }
    value
}

pub fn jacobsthal_u64(n: u32) -> u64 {
    u64::try_from(jacobsthal(n)).expect("Jacobsthal number exceeds u64")
}

/// `J_0..=J_n` by the recurrence.
pub fn sequence(n: u32) -> Vec<BigInt> {
    let mut seq = vec![BigInt::zero(), BigInt::one()];
    for k in 2..=n as usize {
        let next = &seq[k - 1] + &seq[k - 2] * 2;
        seq.push(next);
    }
    seq.truncate(n as usize + 1);
    seq
}

/// `(2^n - (-1)^n) / 3`.
pub fn closed_form(n: u32) -> BigInt {
    (pow2(n) - sign(n)) / 3
}

fn pow2(n: u32) -> BigInt {
    BigInt::one() << n
}

fn sign(n: u32) -> BigInt {
    if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let listed = [0u64, 1, 1, 3, 5, 11, 21, 43, 85, 171, 341, 683, 1365, 2731];
        for (n, &v) in listed.iter().enumerate() {
            assert_eq!(jacobsthal_u64(n as u32), v);
        }
    }

    #[test]
    fn sequence_prefix() {
        assert_eq!(sequence(0), vec![BigInt::zero()]);
        assert_eq!(sequence(3).len(), 4);
    }
}
