//! Multidegrees and the exact invariants of `X_n(d_1, …, d_r)`.
//!
//! Everything is computed from the total degree `d` and the shifted power
//! sums `n + r + 1 − s_i`. The Chern class of the ambient data is
//! `(1 + x)^{n+r+1} / Π(1 + d_j x)`, so `c_k` is the k-th elementary symmetric
//! function of a virtual root multiset whose power sums are `n + r + 1 − s_i`;
//! `p_k` uses the even-index sums in the same way.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Factorization};
use crate::error::{Error, Result};

/// Canonical multidegree: degrees sorted non-increasing, every entry `>= 2`.
/// The empty multidegree stands for projective space itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    /// Sorts non-increasing and strips degree-1 entries.
    pub fn canonicalize(raw: &[i64]) -> Result<Self> {
        let mut degrees = Vec::with_capacity(raw.len());
        for &v in raw {
            if v <= 0 {
                return Err(Error::NonPositiveDegree(v));
            }
            let v = u32::try_from(v)
                .map_err(|_| Error::InvalidInput(format!("degree {v} is too large")))?;
            if v > 1 {
                degrees.push(v);
            }
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(degrees))
    }

    /// Wraps degrees the caller already knows are canonical.
    pub(crate) fn from_canonical(degrees: Vec<u32>) -> Self {
        debug_assert!(degrees.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(degrees.iter().all(|&d| d >= 2));
        Self(degrees)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    /// Codimension `r`.
    pub fn codim(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Factorization of the total degree, assembled from the factorizations
    /// of the individual degrees. The product itself is never factored.
    pub fn factorization(&self) -> Result<Factorization> {
        let parts = self
            .0
            .iter()
            .map(|&v| arith::factorize(u64::from(v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(arith::merge_factorizations(&parts))
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Parses a comma-separated degree list, optionally parenthesized.
pub fn parse_degrees(s: &str) -> Result<Vec<i64>> {
    let body = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("`{t}` is not an integer degree")))
        })
        .collect()
}

impl FromStr for Multidegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::canonicalize(&parse_degrees(s)?)
    }
}

pub fn total_degree(md: &Multidegree) -> BigInt {
    md.0.iter()
        .fold(BigInt::one(), |acc, &v| acc * BigInt::from(v))
}

/// Power sums `s_1..=s_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSums(Vec<BigInt>);

impl PowerSums {
    /// `s_i` for `1 <= i <= len`.
    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }
}

pub fn power_sums(md: &Multidegree, m: usize) -> PowerSums {
    let mut sums = vec![BigInt::zero(); m];
    for &d in &md.0 {
        let d = BigInt::from(d);
        let mut pow = BigInt::one();
        for s in sums.iter_mut() {
            pow *= &d;
            *s += &pow;
        }
    }
    PowerSums(sums)
}

/// `n + r + 1 − s_i` for each `s_i` selected by `indices`.
fn shifted(
    n: u32,
    md: &Multidegree,
    sums: &PowerSums,
    indices: impl Iterator<Item = usize>,
) -> Vec<BigInt> {
    let base = BigInt::from(u64::from(n) + md.codim() as u64 + 1);
    indices.map(|i| &base - sums.get(i)).collect()
}

fn chern_elementary(n: u32, md: &Multidegree, top: usize) -> Vec<BigRational> {
    let sums = power_sums(md, top);
    arith::elementary_from_power_sums(&shifted(n, md, &sums, 1..=top))
}

fn pontrjagin_elementary(n: u32, md: &Multidegree, top: usize) -> Vec<BigRational> {
    let sums = power_sums(md, 2 * top);
    arith::elementary_from_power_sums(&shifted(n, md, &sums, (1..=top).map(|k| 2 * k)))
}

fn check_index(what: &'static str, k: usize, max: usize) -> Result<()> {
    if k == 0 || k > max {
        Err(Error::IndexOutOfRange {
            what,
            index: k,
            max,
        })
    } else {
        Ok(())
    }
}

/// Coefficient of `x^k` in `c_k(X_n(md))`.
pub fn chern_coefficient(n: u32, md: &Multidegree, k: usize) -> Result<BigInt> {
    check_index("Chern class", k, n as usize)?;
    let e = chern_elementary(n, md, k);
    arith::integral(e[k].clone(), || format!("c_{k} of X_{n}{md}"))
}

/// Coefficient of `x^{2k}` in `p_k(X_n(md))`, built from the even power sums
/// `s_2, s_4, …, s_{2k}`.
pub fn pontrjagin_coefficient(n: u32, md: &Multidegree, k: usize) -> Result<BigInt> {
    check_index("Pontrjagin class", k, n as usize / 2)?;
    let e = pontrjagin_elementary(n, md, k);
    arith::integral(e[k].clone(), || format!("p_{k} of X_{n}{md}"))
}

/// Euler characteristic `d · g_n(…) / n!`.
pub fn euler_characteristic(n: u32, md: &Multidegree) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Dimension {
            n,
            expected: ">= 1",
        });
    }
    let e = chern_elementary(n, md, n as usize);
    let d = BigRational::from_integer(total_degree(md));
    arith::integral(d * &e[n as usize], || format!("e of X_{n}{md}"))
}

/// Exact invariants of `X_n(md)`: total degree, all Chern coefficients,
/// Pontrjagin coefficients `p_1..p_{⌊n/2⌋}` and the Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantProfile {
    pub n: u32,
    pub multidegree: Multidegree,
    pub total_degree: BigInt,
    /// `c_1..=c_n`.
    pub chern: Vec<BigInt>,
    /// `p_1..=p_{⌊n/2⌋}`.
    pub pontrjagin: Vec<BigInt>,
    pub euler: BigInt,
}

impl InvariantProfile {
    pub fn compute(n: u32, md: &Multidegree) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension {
                n,
                expected: ">= 2",
            });
        }
        let top = n as usize;
        let d = total_degree(md);
        let chern_e = chern_elementary(n, md, top);
        let chern = (1..=top)
            .map(|k| arith::integral(chern_e[k].clone(), || format!("c_{k} of X_{n}{md}")))
            .collect::<Result<Vec<_>>>()?;
        let half = top / 2;
        let pont_e = pontrjagin_elementary(n, md, half);
        let pontrjagin = (1..=half)
            .map(|k| arith::integral(pont_e[k].clone(), || format!("p_{k} of X_{n}{md}")))
            .collect::<Result<Vec<_>>>()?;
        let euler = arith::integral(BigRational::from_integer(d.clone()) * &chern_e[top], || {
            format!("e of X_{n}{md}")
        })?;
        Ok(Self {
            n,
            multidegree: md.clone(),
            total_degree: d,
            chern,
            pontrjagin,
            euler,
        })
    }

    pub fn codim(&self) -> usize {
        self.multidegree.codim()
    }

    pub fn c1(&self) -> &BigInt {
        &self.chern[0]
    }

    pub fn p1(&self) -> &BigInt {
        &self.pontrjagin[0]
    }

    /// `d · p_1`, the quantity compared for complex surfaces.
    pub fn d_times_p1(&self) -> BigInt {
        &self.total_degree * self.p1()
    }

    /// Flat record of every invariant as decimal strings, in a fixed order.
    pub fn to_record(&self) -> Vec<(String, String)> {
        let mut rec = vec![
            ("n".to_string(), self.n.to_string()),
            ("r".to_string(), self.codim().to_string()),
            ("degrees".to_string(), degree_list(&self.multidegree)),
            ("d".to_string(), self.total_degree.to_string()),
        ];
        for (k, c) in self.chern.iter().enumerate() {
            rec.push((format!("c{}", k + 1), c.to_string()));
        }
        for (k, p) in self.pontrjagin.iter().enumerate() {
            rec.push((format!("p{}", k + 1), p.to_string()));
        }
        if self.n == 2 {
            rec.push(("d_p1".to_string(), self.d_times_p1().to_string()));
        }
        rec.push(("e".to_string(), self.euler.to_string()));
        rec
    }

    /// Rebuilds a profile from its flat record without recomputing anything.
    pub fn from_record(fields: &BTreeMap<String, String>) -> Result<Self> {
        let get = |key: &str| {
            fields
                .get(key)
                .ok_or_else(|| Error::InvalidInput(format!("profile record lacks `{key}`")))
        };
        let int = |key: &str| -> Result<BigInt> {
            let raw = get(key)?;
            raw.parse()
                .map_err(|_| Error::InvalidInput(format!("`{key}` = `{raw}` is not an integer")))
        };
        let n: u32 = get("n")?
            .parse()
            .map_err(|_| Error::InvalidInput("`n` is not a dimension".into()))?;
        let multidegree: Multidegree = get("degrees")?.parse()?;
        let chern = (1..=n)
            .map(|k| int(&format!("c{k}")))
            .collect::<Result<_>>()?;
        let pontrjagin = (1..=n / 2)
            .map(|k| int(&format!("p{k}")))
            .collect::<Result<_>>()?;
        Ok(Self {
            n,
            multidegree,
            total_degree: int("d")?,
            chern,
            pontrjagin,
            euler: int("e")?,
        })
    }
}

pub(crate) fn degree_list(md: &Multidegree) -> String {
    md.degrees()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl Serialize for InvariantProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rec = self.to_record();
        let mut map = serializer.serialize_map(Some(rec.len()))?;
        for (k, v) in &rec {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for InvariantProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let fields = BTreeMap::<String, String>::deserialize(deserializer)?;
        Self::from_record(&fields).map_err(de::Error::custom)
    }
}

/// Shorthand for [`InvariantProfile::compute`].
pub fn profile(n: u32, md: &Multidegree) -> Result<InvariantProfile> {
    InvariantProfile::compute(n, md)
}
