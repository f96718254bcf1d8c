use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{macwilliams_nonnegative, SpectralError, WeightDistribution};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn big(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn is_nonneg_integer(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}

fn is_positive_integer(x: &BigRational) -> bool {
    x.is_integer() && x.is_positive()
}

/// Dual frequencies of weights 1, 2, 3 implied by the first four power
/// moments of the binary image (length `2n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerMoments {
    pub b1: BigRational,
    pub b2: BigRational,
    pub b3: BigRational,
}

impl PowerMoments {
    pub fn b3_integer(&self) -> Option<i64> {
        self.b3.is_integer().then(|| self.b3.to_integer().to_i64()).flatten()
    }
}

/// Solve the first four Pless moments for `B_1, B_2, B_3`. Errors when the
/// code size is not a power of two or a solution is not a non-negative integer.
pub fn power_moments(wd: &WeightDistribution) -> Result<PowerMoments, SpectralError> {
    let size = wd.code_size();
    if !size.is_power_of_two() {
        return Err(SpectralError::Inconsistent(format!("code size {size} is not a power of two")));
    }
    let c = big(size);
    let big_n = rat(2 * wd.n as i64);
    let moment = |t: u32| -> BigRational {
        wd.entries.iter().map(|&(w, a)| big(a) * big(w as u64).pow(t as i32)).fold(BigRational::zero(), |x, y| x + y)
    };
    let (s1, s2, s3) = (moment(1), moment(2), moment(3));
    let two = rat(2);
    let b1 = &big_n - &two * &s1 / &c;
    let b2 = (rat(4) * &s2 / &c - &big_n * (&big_n + rat(1)) + &two * &big_n * &b1) / &two;
    let b3 = (&big_n * &big_n * (&big_n + rat(3))
        - (rat(3) * &big_n * &big_n + rat(3) * &big_n - &two) * &b1
        + rat(6) * &big_n * &b2
        - rat(8) * &s3 / &c)
        / rat(6);
    for (name, b) in [("B1", &b1), ("B2", &b2), ("B3", &b3)] {
        if !is_nonneg_integer(b) {
            return Err(SpectralError::Inconsistent(format!("{name} = {b}")));
        }
    }
    Ok(PowerMoments { b1, b2, b3 })
}

/// Frequencies forced on a three-weight code with `d⊥ >= 3` by the moments,
/// with `y = |C| / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePrediction {
    pub y: u64,
    pub a: [BigRational; 3],
    pub b3: BigRational,
}

impl TriplePrediction {
    /// `A_1, A_2, A_3` positive integers and `B_3` a non-negative integer.
    pub fn admissible(&self) -> bool {
        self.a.iter().all(is_positive_integer) && is_nonneg_integer(&self.b3)
    }

    pub fn a_u64(&self) -> Option<[u64; 3]> {
        let v: Option<Vec<u64>> =
            self.a.iter().map(|x| if x.is_integer() { x.to_integer().to_u64() } else { None }).collect();
        v.map(|v| [v[0], v[1], v[2]])
    }

    pub fn b3_u64(&self) -> Option<u64> {
        if self.b3.is_integer() {
            self.b3.to_integer().to_u64()
        } else {
            None
        }
    }
}

/// The parametric three-weight formulas for `A_1, A_2, A_3` and `B_3`.
pub fn predict_three_weight(n: u64, y: u64, w: [u64; 3]) -> Result<TriplePrediction, SpectralError> {
    if !(w[0] < w[1] && w[1] < w[2]) {
        return Err(SpectralError::WeightsNotIncreasing);
    }
    let n = rat(n as i64);
    let yr = big(y);
    let [w1, w2, w3] = w.map(|x| big(x));
    let two = rat(2);
    let num = |a: &BigRational, b: &BigRational| -> BigRational {
        &yr * (&two * &n * &n - &two * &n * a - &two * &n * b + &two * a * b + &n) - a * b
    };
    let a1 = num(&w2, &w3) / ((&w2 - &w1) * (&w3 - &w1));
    let a2 = num(&w1, &w3) / ((&w2 - &w3) * (&w2 - &w1));
    let a3 = num(&w1, &w2) / ((&w3 - &w1) * (&w3 - &w2));
    let s = &w1 + &w2 + &w3;
    let p2 = &w1 * &w2 + &w1 * &w3 + &w2 * &w3;
    let p3 = &w1 * &w2 * &w3;
    let three_b3 = &two * &n * &n * (&two * &n + rat(3)) - &s * &two * &n * (&two * &n + rat(1)) - rat(4) * &p3
        + &two * &p2 * &two * &n
        + &two * &p3 / &yr;
    Ok(TriplePrediction { y, a: [a1, a2, a3], b3: three_b3 / rat(3) })
}

/// Weight-sum restriction used by [`feasible_triples`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SumFilter {
    Any,
    Exactly(u64),
    /// `S = 3n`.
    ThreeN,
    /// `S >= 3n` and `3 | S`.
    AtLeastThreeN,
}

impl SumFilter {
    fn accepts(&self, n: u64, s: u64) -> bool {
        match *self {
            SumFilter::Any => true,
            SumFilter::Exactly(t) => s == t,
            SumFilter::ThreeN => s == 3 * n,
            SumFilter::AtLeastThreeN => s >= 3 * n && s % 3 == 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibleTriple {
    pub n: u64,
    /// `2k1 + k2`, absent when no class restriction was requested.
    pub class: Option<u32>,
    pub w: [u64; 3],
    #[serde(rename = "A")]
    pub a: Option<[u64; 3]>,
    #[serde(rename = "B3")]
    pub b3: Option<u64>,
    #[serde(rename = "S")]
    pub s: u64,
    /// Loops `b >= 0` with `S = 3(b + 2n)/2`, the 3-SWRG condition over an order-4 ring.
    pub b: Option<i64>,
    /// Result of [`parity_consistent`], when frequencies are known.
    pub parity_ok: Option<bool>,
}

/// Necessary conditions from the even-weight subcode of a projective code
/// over an order-4 ring: at most two nonzero weights are odd; if any is, the
/// odd-weight words number `y = |C|/2` and the even-weight subcode, by its
/// first moment, has effective length `n - 1` or `n`.
pub fn parity_consistent(n: u64, w: [u64; 3], a: [u64; 3], y: u64) -> bool {
    let odd: Vec<usize> = (0..3).filter(|&i| w[i] % 2 == 1).collect();
    if odd.is_empty() {
        return true;
    }
    if odd.len() > 2 || odd.iter().map(|&i| a[i]).sum::<u64>() != y {
        return false;
    }
    let even_moment: u64 = (0..3).filter(|&i| w[i] % 2 == 0).map(|i| w[i] * a[i]).sum();
    even_moment % y == 0 && (even_moment / y == n || even_moment / y + 1 == n)
}

/// Cheap screen: the three frequency numerators are positive multiples of
/// their denominators in `i128` (exact for `n < 2^20`, `y <= 2^62`).
fn frequencies_integral(n: u64, y: u64, w: [u64; 3]) -> bool {
    if n >= 1 << 20 {
        return true;
    }
    let (n, y) = (n as i128, y as i128);
    let [w1, w2, w3] = w.map(|x| x as i128);
    let num = |a: i128, b: i128| y * (2 * n * n - 2 * n * a - 2 * n * b + 2 * a * b + n) - a * b;
    let ok = |x: i128, d: i128| x % d == 0 && x / d > 0;
    ok(num(w2, w3), (w2 - w1) * (w3 - w1)) && ok(num(w1, w3), (w2 - w3) * (w2 - w1)) && ok(num(w1, w2), (w3 - w1) * (w3 - w2))
}

fn loops_for_sum(n: u64, s: u64) -> Option<i64> {
    // 3-SWRG with b loops iff S = 3(b + 2n)/2 over order-4 rings
    if (2 * s) % 3 != 0 {
        return None;
    }
    let b = (2 * s / 3) as i64 - 2 * n as i64;
    (b >= 0).then_some(b)
}

/// Triples `1 <= w1 < w2 < w3 <= 2n` passing the sum filter; with a class
/// range, also the parametric integrality conditions and divisibility.
pub fn feasible_triples(
    n: u64,
    classes: Option<std::ops::RangeInclusive<u32>>,
    filter: SumFilter,
) -> Vec<FeasibleTriple> {
    let mut out = Vec::new();
    let max = 2 * n;
    let class_list: Vec<u32> = classes.map(|r| r.collect()).unwrap_or_default();
    for w1 in 1..=max {
        for w2 in w1 + 1..=max {
            for w3 in w2 + 1..=max {
                let s = w1 + w2 + w3;
                if !filter.accepts(n, s) {
                    continue;
                }
                if class_list.is_empty() {
                    out.push(FeasibleTriple {
                        n,
                        class: None,
                        w: [w1, w2, w3],
                        a: None,
                        b3: None,
                        s,
                        b: loops_for_sum(n, s),
                        parity_ok: None,
                    });
                    continue;
                }
                for &c in &class_list {
                    if c == 0 || c > 63 {
                        continue;
                    }
                    let y = 1u64 << (c - 1);
                    let prod = w1 as u128 * w2 as u128 * w3 as u128;
                    if (2 * prod) % y as u128 != 0 {
                        continue;
                    }
                    if !frequencies_integral(n, y, [w1, w2, w3]) {
                        continue;
                    }
                    let pred = predict_three_weight(n, y, [w1, w2, w3]).expect("increasing");
                    if pred.admissible() {
                        debug_assert!(c < 2 || prod % (1u128 << (c - 2)) == 0);
                        let a = pred.a_u64().expect("admissible frequencies fit");
                        out.push(FeasibleTriple {
                            n,
                            class: Some(c),
                            w: [w1, w2, w3],
                            a: Some(a),
                            parity_ok: Some(parity_consistent(n, [w1, w2, w3], a, y)),
                            b3: pred.b3_u64(),
                            s,
                            b: loops_for_sum(n, s),
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|t| (t.n, t.class, t.w));
    out
}

/// A tuple with `S = 3n`, `w2 != n` that passes the parametric conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalTuple {
    pub n: u64,
    pub w: [u64; 3],
    /// `y = |C| / 2` as used by the parametric formulas.
    pub y: u64,
    /// `|C| / 4`, the value in the published list's `y` column.
    pub printed_y: u64,
    #[serde(rename = "A")]
    pub a: [u64; 3],
    #[serde(rename = "B3")]
    pub b3: u64,
    pub macwilliams_nonnegative: bool,
    /// See [`parity_consistent`].
    pub parity_consistent: bool,
}

/// Scan `n <= n_max` for triples with `S = 3n` and `w2 != n` satisfying the
/// parametric integrality conditions for some class `2 <= 2k1+k2 <= 2n`.
pub fn exceptional_scan(n_max: u64) -> Vec<ExceptionalTuple> {
    let per_n: Vec<Vec<ExceptionalTuple>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut found = Vec::new();
            for t in feasible_triples(n, Some(2..=(2 * n as u32).min(63)), SumFilter::ThreeN) {
                if t.w[1] == n {
                    continue;
                }
                let c = t.class.unwrap();
                let y = 1u64 << (c - 1);
                let a = t.a.expect("admissible");
                let wd = WeightDistribution::from_nonzero(n as usize, &t.w.map(|x| x as u32), &a);
                found.push(ExceptionalTuple {
                    n,
                    w: t.w,
                    y,
                    printed_y: y / 2,
                    a,
                    b3: t.b3.expect("admissible"),
                    macwilliams_nonnegative: macwilliams_nonnegative(&wd),
                    parity_consistent: t.parity_ok.unwrap_or(false),
                });
            }
            found
        })
        .collect();
    per_n.into_iter().flatten().collect()
}
