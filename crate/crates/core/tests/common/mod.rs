//! Independent oracles shared by the integration tests. Nothing here calls
//! into the crate's σ routines.

#![allow(dead_code)]

/// Sum of divisors by enumerating divisor pairs up to √n.
pub fn brute_sigma(n: u64) -> u64 {
    let mut total = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += d;
            if d != n / d {
                total += n / d;
            }
        }
        d += 1;
    }
    total
}

/// Sum of divisors for every n in [0, limit) by the additive divisor sieve.
pub fn divisor_sum_table(limit: usize) -> Vec<u64> {
    let mut table = vec![0u64; limit];
    for d in 1..limit {
        for m in (d..limit).step_by(d) {
            table[m] += d as u64;
        }
    }
    table
}

pub fn is_power_of_two_or_one(n: u64) -> bool {
    n.is_power_of_two()
}
