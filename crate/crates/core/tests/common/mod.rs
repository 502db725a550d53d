//! Test oracles that do not touch the library's Newton recursion: the seven
//! closed-form g_k polynomials written out term by term, evaluated in i128.

#![allow(dead_code)]

/// `g_k(a_1, …, a_k)` for `1 <= k <= 7`, transcribed monomial by monomial.
pub fn printed_g(k: usize, a: &[i128]) -> i128 {
    let s = |i: usize| a[i - 1];
    match k {
        1 => s(1),
        2 => s(1).pow(2) - s(2),
        3 => s(1).pow(3) - 3 * s(1) * s(2) + 2 * s(3),
        4 => s(1).pow(4) - 6 * s(1).pow(2) * s(2) + 8 * s(1) * s(3) + 3 * s(2).pow(2) - 6 * s(4),
        5 => {
            s(1).pow(5) - 10 * s(1).pow(3) * s(2) + 20 * s(1).pow(2) * s(3) - 30 * s(1) * s(4)
                + 15 * s(1) * s(2).pow(2)
                - 20 * s(2) * s(3)
                + 24 * s(5)
        }
        6 => {
            s(1).pow(6) - 15 * s(1).pow(4) * s(2) + 40 * s(1).pow(3) * s(3)
                - 90 * s(1).pow(2) * s(4)
                + 45 * s(1).pow(2) * s(2).pow(2)
                - 120 * s(1) * s(2) * s(3)
                + 144 * s(1) * s(5)
                - 15 * s(2).pow(3)
                + 90 * s(2) * s(4)
                + 40 * s(3).pow(2)
                - 120 * s(6)
        }
        7 => {
            s(1).pow(7) - 21 * s(1).pow(5) * s(2) + 70 * s(1).pow(4) * s(3)
                - 210 * s(1).pow(3) * s(4)
                + 105 * s(1).pow(3) * s(2).pow(2)
                - 420 * s(1).pow(2) * s(2) * s(3)
                + 504 * s(1).pow(2) * s(5)
                - 105 * s(1) * s(2).pow(3)
                + 630 * s(1) * s(2) * s(4)
                + 280 * s(1) * s(3).pow(2)
                - 840 * s(1) * s(6)
                + 210 * s(2).pow(2) * s(3)
                - 504 * s(2) * s(5)
                - 420 * s(3) * s(4)
                + 720 * s(7)
        }
        _ => panic!("no closed form for g_{k}"),
    }
}

pub fn factorial(k: usize) -> i128 {
    (1..=k as i128).product()
}

pub fn binomial(j: i128, k: i128) -> i128 {
    if k > j {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (j - i) / (i + 1))
}

/// Invariants of `X_n(raw)` from the closed forms, keeping any degree-1
/// entries exactly as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleProfile {
    pub d: i128,
    pub c: Vec<i128>,
    pub p: Vec<i128>,
    pub e: i128,
}

fn exact_div(num: i128, den: i128, what: &str) -> i128 {
    assert_eq!(num % den, 0, "{what}: {num} not divisible by {den}");
    num / den
}

pub fn oracle_profile(n: usize, raw: &[i64]) -> OracleProfile {
    let r = raw.len() as i128;
    let sum = |i: u32| raw.iter().map(|&d| (d as i128).pow(i)).sum::<i128>();
    let shift = |i: u32| n as i128 + r + 1 - sum(i);
    let d: i128 = raw.iter().map(|&v| v as i128).product();
    let chern_args: Vec<i128> = (1..=n as u32).map(shift).collect();
    let c = (1..=n)
        .map(|k| exact_div(printed_g(k, &chern_args[..k]), factorial(k), "c_k"))
        .collect();
    let half = n / 2;
    let pont_args: Vec<i128> = (1..=half as u32).map(|k| shift(2 * k)).collect();
    let p = (1..=half)
        .map(|k| exact_div(printed_g(k, &pont_args[..k]), factorial(k), "p_k"))
        .collect();
    let e = exact_div(d * printed_g(n, &chern_args), factorial(n), "e");
    OracleProfile { d, c, p, e }
}

/// Canonical multidegrees (non-increasing, entries in `2..=max_degree`,
/// length `1..=max_codim`), built by plain recursion.
pub fn all_multidegrees(max_degree: i64, max_codim: usize) -> Vec<Vec<i64>> {
    fn extend(prefix: &mut Vec<i64>, cap: i64, left: usize, out: &mut Vec<Vec<i64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if left == 0 {
            return;
        }
        for v in 2..=cap {
            prefix.push(v);
            extend(prefix, v, left - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_degree, max_codim, &mut out);
    out
}
