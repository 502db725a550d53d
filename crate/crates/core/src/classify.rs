//! Homeomorphism and diffeomorphism criteria for pairs of complete
//! intersections of the same complex dimension.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::arith::{self, Factorization};
use crate::error::{Error, Result};
use crate::invariants::{InvariantProfile, Multidegree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    IdenticalMultidegree,
    Diffeomorphic,
    Homeomorphic,
    HomeomorphicNotDiffeomorphic,
    InvariantsDiffer,
    Undecided,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::IdenticalMultidegree => "identical-multidegree",
            Relation::Diffeomorphic => "diffeomorphic",
            Relation::Homeomorphic => "homeomorphic",
            Relation::HomeomorphicNotDiffeomorphic => "homeomorphic-not-diffeomorphic",
            Relation::InvariantsDiffer => "invariants-differ",
            Relation::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// Sufficient conditions for homeomorphic, non-diffeomorphic surfaces
    /// (Freedman, with the Ebeling / Libgober–Wood examples).
    SurfaceExoticPair,
    /// Jupp–Wall classification of threefolds by `(d, p_1, e)`.
    JuppWall,
    /// Fang–Klaus / Fang–Wang homeomorphism classification, `4 <= n <= 7`.
    FangKlausWang,
    /// Traving's diffeomorphism upgrade under the total-degree hypothesis.
    Traving,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::SurfaceExoticPair => "surface-exotic-pair",
            Criterion::JuppWall => "jupp-wall",
            Criterion::FangKlausWang => "fang-klaus-wang",
            Criterion::Traving => "traving",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Lower bound on `ν_p(d)` required by Traving's theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TravingThreshold {
    pub prime: u64,
    /// `(2n + 1) / (2(p − 1)) + 1`.
    pub threshold: Ratio<u64>,
}

impl TravingThreshold {
    pub fn is_met(&self, valuation: u32) -> bool {
        Ratio::from_integer(u64::from(valuation)) >= self.threshold
    }
}

impl fmt::Display for TravingThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu_{}(d) >= {}", self.prime, self.threshold)
    }
}

/// Thresholds for every prime with `p(p − 1) <= n + 1`.
pub fn traving_thresholds(n: u32) -> Vec<TravingThreshold> {
    let n = u64::from(n);
    (2u64..)
        .take_while(|p| p * (p - 1) <= n + 1)
        .filter(|&p| arith::is_prime(p))
        .map(|p| TravingThreshold {
            prime: p,
            threshold: Ratio::new(2 * n + 1, 2 * (p - 1)) + 1,
        })
        .collect()
}

/// Whether a total degree with factorization `f` satisfies Traving's
/// hypothesis in complex dimension `n > 2`.
pub fn traving_condition(n: u32, f: &Factorization) -> Result<bool> {
    if n <= 2 {
        return Err(Error::Dimension { n, expected: "> 2" });
    }
    Ok(traving_thresholds(n)
        .iter()
        .all(|t| t.is_met(f.exponent(t.prime))))
}

fn same_dimension(a: &InvariantProfile, b: &InvariantProfile) -> Result<u32> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    Ok(a.n)
}

fn require(n: u32, ok: bool, expected: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Dimension { n, expected })
    }
}

/// Equal `d`, every `p_k` and `e`, for `4 <= n <= 7`.
pub fn fkw_homeomorphic(a: &InvariantProfile, b: &InvariantProfile) -> Result<bool> {
    let n = same_dimension(a, b)?;
    require(n, (4..=7).contains(&n), "4..=7")?;
    Ok(a.total_degree == b.total_degree && a.pontrjagin == b.pontrjagin && a.euler == b.euler)
}

/// Equal `d`, `p_1` and `e` for threefolds; `c_1` is not compared.
pub fn jupp_wall_diffeomorphic(a: &InvariantProfile, b: &InvariantProfile) -> Result<bool> {
    let n = same_dimension(a, b)?;
    require(n, n == 3, "3")?;
    Ok(a.total_degree == b.total_degree && a.p1() == b.p1() && a.euler == b.euler)
}

/// `d·p_1 = d'·p_1'`, `e = e'`, `c_1 ≡ c_1' (mod 2)` and `c_1 ≠ c_1'`.
pub fn dim2_homeo_not_diffeo(a: &InvariantProfile, b: &InvariantProfile) -> Result<bool> {
    let n = same_dimension(a, b)?;
    require(n, n == 2, "2")?;
    Ok(a.d_times_p1() == b.d_times_p1()
        && a.euler == b.euler
        && a.c1().is_even() == b.c1().is_even()
        && a.c1() != b.c1())
}

/// True when `n > 2` and `r <= (n + 2) / 2`: total degree and Pontrjagin
/// classes then determine the multidegree.
pub fn rigidity_excludes_pair(n: u32, md: &Multidegree) -> bool {
    n > 2 && 2 * md.codim() as u64 <= u64::from(n) + 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparedInvariant {
    pub name: String,
    pub first: String,
    pub second: String,
}

impl ComparedInvariant {
    pub fn agrees(&self) -> bool {
        self.first == self.second
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationVerdict {
    pub n: u32,
    pub first: String,
    pub second: String,
    pub relation: Relation,
    /// Criteria that fired, weakest first.
    pub criteria: Vec<Criterion>,
    pub distinct_c1: bool,
    pub compared: Vec<ComparedInvariant>,
    pub notes: Vec<String>,
}

impl ClassificationVerdict {
    /// Headline such as
    /// `diffeomorphic; c_1 differs (-119/-121): disconnected moduli space witness`.
    pub fn summary(&self) -> String {
        let mut out = self.relation.to_string();
        if self.relation == Relation::Diffeomorphic && self.distinct_c1 {
            let c1 = self.compared.iter().find(|c| c.name == "c1");
            if let Some(c) = c1 {
                out.push_str(&format!(
                    "; c_1 differs ({}/{}): disconnected moduli space witness",
                    c.first, c.second
                ));
            }
        }
        out
    }
}

fn compare_profiles(n: u32, a: &InvariantProfile, b: &InvariantProfile) -> Vec<ComparedInvariant> {
    let mut out = Vec::new();
    let mut push = |name: String, x: String, y: String| {
        out.push(ComparedInvariant {
            name,
            first: x,
            second: y,
        })
    };
    push("r".into(), a.codim().to_string(), b.codim().to_string());
    push(
        "d".into(),
        a.total_degree.to_string(),
        b.total_degree.to_string(),
    );
    if n == 2 {
        push(
            "d_p1".into(),
            a.d_times_p1().to_string(),
            b.d_times_p1().to_string(),
        );
    }
    for (k, (x, y)) in a.pontrjagin.iter().zip(&b.pontrjagin).enumerate() {
        push(format!("p{}", k + 1), x.to_string(), y.to_string());
    }
    push("e".into(), a.euler.to_string(), b.euler.to_string());
    push("c1".into(), a.c1().to_string(), b.c1().to_string());
    out
}

/// Classifies `X_n(a)` against `X_n(b)` for `2 <= n <= 7`.
pub fn classify_pair(n: u32, a: &Multidegree, b: &Multidegree) -> Result<ClassificationVerdict> {
    if !(2..=7).contains(&n) {
        return Err(Error::Dimension {
            n,
            expected: "2..=7",
        });
    }
    let pa = InvariantProfile::compute(n, a)?;
    let pb = InvariantProfile::compute(n, b)?;
    let mut verdict = ClassificationVerdict {
        n,
        first: a.to_string(),
        second: b.to_string(),
        relation: Relation::Undecided,
        criteria: Vec::new(),
        distinct_c1: pa.c1() != pb.c1(),
        compared: compare_profiles(n, &pa, &pb),
        notes: Vec::new(),
    };
    if a == b {
        verdict.relation = Relation::IdenticalMultidegree;
        return Ok(verdict);
    }

    match n {
        2 => {
            if dim2_homeo_not_diffeo(&pa, &pb)? {
                verdict.relation = Relation::HomeomorphicNotDiffeomorphic;
                verdict.criteria.push(Criterion::SurfaceExoticPair);
            } else if pa.d_times_p1() == pb.d_times_p1() && pa.euler == pb.euler {
                verdict.relation = Relation::Undecided;
                verdict
                    .notes
                    .push("d*p_1 and e agree but the surface criterion does not apply".into());
            } else {
                verdict.relation = Relation::InvariantsDiffer;
            }
        }
        3 => {
            if jupp_wall_diffeomorphic(&pa, &pb)? {
                verdict.relation = Relation::Diffeomorphic;
                verdict.criteria.push(Criterion::JuppWall);
                if verdict.distinct_c1 {
                    verdict.notes.push(format!(
                        "distinct c_1 ({}/{}): disconnected moduli space witness",
                        pa.c1(),
                        pb.c1()
                    ));
                }
            } else {
                verdict.relation = Relation::InvariantsDiffer;
            }
        }
        _ => {
            if fkw_homeomorphic(&pa, &pb)? {
                verdict.relation = Relation::Homeomorphic;
                verdict.criteria.push(Criterion::FangKlausWang);
                let f = a.factorization()?;
                let failing: Vec<String> = traving_thresholds(n)
                    .into_iter()
                    .filter(|t| !t.is_met(f.exponent(t.prime)))
                    .map(|t| {
                        format!(
                            "nu_{}(d)={} < {}",
                            t.prime,
                            f.exponent(t.prime),
                            t.threshold
                        )
                    })
                    .collect();
                if failing.is_empty() {
                    verdict.relation = Relation::Diffeomorphic;
                    verdict.criteria.push(Criterion::Traving);
                } else {
                    verdict
                        .notes
                        .push(format!("Traving hypothesis fails: {}", failing.join(", ")));
                }
                verdict.notes.push(format!(
                    "d = {f}; nu_2(d)={}, nu_3(d)={}",
                    f.exponent(2),
                    f.exponent(3)
                ));
            } else {
                verdict.relation = Relation::InvariantsDiffer;
            }
        }
    }
    Ok(verdict)
}
