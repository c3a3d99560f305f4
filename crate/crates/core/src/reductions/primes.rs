/// The first `n` primes, by the sieve of Eratosthenes.
///
/// The sieve limit starts from an integer upper bound on
/// `n (ln n + ln ln n)`, which exceeds the `n`-th prime for `n >= 6`, and
/// doubles if that ever falls short.
pub fn sieve_primes(n: usize) -> Vec<u64> {
    const SMALL: [u64; 5] = [2, 3, 5, 7, 11];
    if n <= SMALL.len() {
        return SMALL[..n].to_vec();
    }
    // ln x <= bit_length(x), so this over-approximates the bound.
    let bits = |x: usize| (usize::BITS - x.leading_zeros()) as usize;
    let mut limit = n * (bits(n) + bits(bits(n)));
    loop {
        let primes = sieve_up_to(limit);
        if primes.len() >= n {
            return primes[..n].to_vec();
        }
        limit *= 2;
    }
}

/// All primes `<= limit`.
pub fn sieve_up_to(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}
