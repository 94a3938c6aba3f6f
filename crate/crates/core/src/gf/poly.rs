//! Univariate polynomials over a prime field, stored as coefficient lists
//! from the constant term up. Only what field construction needs lives here.

use super::PrimeModulus;

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b`.
pub(crate) fn rem_monic(a: &[u32], b: &[u32], p: PrimeModulus) -> Vec<u32> {
    let pv = u64::from(p.get());
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let lead = u64::from(*r.last().unwrap());
        let shift = r.len() - 1 - db;
        for (j, &bj) in b.iter().enumerate() {
            let sub = lead * u64::from(bj) % pv;
            r[shift + j] = ((u64::from(r[shift + j]) + pv - sub) % pv) as u32;
        }
        trim(&mut r);
    }
    r
}

fn has_root(f: &[u32], p: PrimeModulus) -> bool {
    let pv = u64::from(p.get());
    (0..pv).any(|x| {
        f.iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x + u64::from(c)) % pv)
            == 0
    })
}

/// Advances `digits` as an odometer whose first entry is most significant.
/// Returns false once every combination has been visited.
pub(crate) fn odometer_step(digits: &mut [u32], base: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn is_monic_over(f: &[u32], p: PrimeModulus) -> bool {
    f.len() >= 2 && f.last() == Some(&1) && f.iter().all(|&c| c < p.get())
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let pv = u64::from(p);
    let (mut base, mut e, mut acc) = (u64::from(a), p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % pv;
        }
        base = base * base % pv;
        e >>= 1;
    }
    acc as u32
}

fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: PrimeModulus) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let pv = u64::from(p.get());
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(ai) * u64::from(bj)) % pv;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    rem_monic(&prod, f, p)
}

/// `x^(p^k) mod f`.
fn frobenius_power_of_x(f: &[u32], p: PrimeModulus, k: usize) -> Vec<u32> {
    let mut h = rem_monic(&[0, 1], f, p);
    for _ in 0..k {
        let (mut base, mut e, mut acc) = (h.clone(), p.get(), vec![1u32]);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
    }
    h
}

fn gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: PrimeModulus) -> Vec<u32> {
    let pv = u64::from(p.get());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = u64::from(inv_mod(*b.last().unwrap(), p.get()));
        let monic: Vec<u32> = b.iter().map(|&c| (u64::from(c) * inv % pv) as u32).collect();
        let r = rem_monic(&a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

/// Rabin's test: `f` of degree m is irreducible iff `x^(p^m) = x mod f` and
/// `gcd(x^(p^(m/q)) - x, f) = 1` for every prime q dividing m.
pub fn is_irreducible(f: &[u32], p: PrimeModulus) -> bool {
    if !is_monic_over(f, p) {
        return false;
    }
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = rem_monic(&[0, 1], f, p);
    let minus_x = |mut h: Vec<u32>| {
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p.get() - 1) % p.get();
        trim(&mut h);
        h
    };
    let mut rest = m;
    let mut q = 2;
    while rest > 1 {
        if rest % q == 0 {
            while rest % q == 0 {
                rest /= q;
            }
            let h = frobenius_power_of_x(f, p, m / q);
            if gcd(f.to_vec(), minus_x(h), p).len() != 1 {
                return false;
            }
        }
        q += 1;
    }
    frobenius_power_of_x(f, p, m) == x
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=deg/2. Exponential in the degree; intended for cross-checks.
pub fn is_irreducible_by_trial_division(f: &[u32], p: PrimeModulus) -> bool {
    if !is_monic_over(f, p) {
        return false;
    }
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if has_root(f, p) {
        return false;
    }
    for k in 2..=m / 2 {
        let mut divisor = vec![0u32; k + 1];
        divisor[k] = 1;
        loop {
            if rem_monic(f, &divisor, p).is_empty() {
                return false;
            }
            if !odometer_step(&mut divisor[..k], p.get()) {
                break;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `m` over F_p.
///
/// Candidates are ordered lexicographically on their coefficient tuples with
/// the constant term compared first. The result is returned constant term
/// first and has length `m + 1`.
pub fn find_irreducible(p: PrimeModulus, m: usize) -> Vec<u32> {
    assert!(m >= 1, "extension degree must be at least 1");
    let mut f = vec![0u32; m + 1];
    f[m] = 1;
    if m >= 2 {
        // every candidate with zero constant term is divisible by x
        f[0] = 1;
    }
    loop {
        if is_irreducible(&f, p) {
            return f;
        }
        let more = odometer_step(&mut f[..m], p.get());
        assert!(more, "an irreducible polynomial of every degree exists");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(find_irreducible(prime(2), 1), vec![0, 1]);
        assert_eq!(find_irreducible(prime(2), 2), vec![1, 1, 1]);
        assert_eq!(find_irreducible(prime(3), 2), vec![1, 0, 1]);
    }

    /// Brute force over the 9 monic quadratics mod 3: a quadratic is
    /// irreducible iff it has no root in F_3.
    #[test]
    fn quadratics_mod_three_by_roots() {
        let p = prime(3);
        let mut first = None;
        'scan: for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                let no_root = (0..3u64).all(|x| (x * x + c1 * x + c0) % 3 != 0);
                assert_eq!(no_root, is_irreducible(&[c0 as u32, c1 as u32, 1], p));
                if no_root && first.is_none() {
                    first = Some(vec![c0 as u32, c1 as u32, 1]);
                    break 'scan;
                }
            }
        }
        assert_eq!(first.unwrap(), find_irreducible(p, 2));
    }

    #[test]
    fn count_of_irreducibles_matches_necklace_formula() {
        // Number of monic irreducibles of degree 4 over F_2 is (16 - 4) / 4 = 3,
        // of degree 3 over F_3 is (27 - 3) / 3 = 8.
        let count = |p: u64, m: usize| {
            let p = prime(p);
            let mut f = vec![0u32; m + 1];
            f[m] = 1;
            let mut n = 0;
            loop {
                n += usize::from(is_irreducible(&f, p));
                if !odometer_step(&mut f[..m], p.get()) {
                    return n;
                }
            }
        };
        assert_eq!(count(2, 4), 3);
        assert_eq!(count(3, 3), 8);
        assert_eq!(count(5, 2), 10);
    }

    /// Rabin's test agrees with trial division on every monic polynomial
    /// of small degree.
    #[test]
    fn rabin_matches_trial_division() {
        for (p, max_m) in [(2u64, 8usize), (3, 5), (5, 4), (7, 3)] {
            let p = prime(p);
            for m in 1..=max_m {
                let mut f = vec![0u32; m + 1];
                f[m] = 1;
                loop {
                    assert_eq!(
                        is_irreducible(&f, p),
                        is_irreducible_by_trial_division(&f, p),
                        "{f:?} mod {p}"
                    );
                    if !odometer_step(&mut f[..m], p.get()) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn large_degree_results_have_no_small_divisor() {
        for (p, m) in [(2, 12), (2, 16), (3, 8), (257, 2)] {
            let f = find_irreducible(prime(p), m);
            assert_eq!(f.len(), m + 1);
            assert!(is_irreducible_by_trial_division(&f, prime(p)));
        }
    }

    #[test]
    fn rejects_non_monic_and_reducible() {
        let p = prime(2);
        assert!(!is_irreducible(&[1, 0, 1], p));
        assert!(!is_irreducible(&[1, 1, 0], p));
        assert!(!is_irreducible(&[], p));
        // (x^2 + x + 1)^2 = x^4 + x^2 + 1 has no roots but is reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], p));
    }
}
