//! Regression corpus of known pairs and their printed invariants.
//!
//! Each corpus file is TOML with a `[[record]]` array. A record names its
//! dimension, degrees, the claimed relation to its partner record, and a map
//! of expected values (decimal strings). Fields under `informational` are
//! recomputed and reported but never fail verification.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::classify::{self, Relation};
use crate::error::{Error, Result};
use crate::invariants::{self, InvariantProfile, Multidegree};

/// Corpus files compiled into the binary, as `(file name, contents)`.
pub const EMBEDDED: &[(&str, &str)] = &[
    (
        "dim2_homeo_not_diffeo.toml",
        include_str!("../corpus/dim2_homeo_not_diffeo.toml"),
    ),
    (
        "dim3_same_c1.toml",
        include_str!("../corpus/dim3_same_c1.toml"),
    ),
    (
        "dim3_distinct_c1.toml",
        include_str!("../corpus/dim3_distinct_c1.toml"),
    ),
    ("homeo4.toml", include_str!("../corpus/homeo4.toml")),
    ("diff4.toml", include_str!("../corpus/diff4.toml")),
    (
        "diff5_power_sums.toml",
        include_str!("../corpus/diff5_power_sums.toml"),
    ),
    (
        "diff5_codim.toml",
        include_str!("../corpus/diff5_codim.toml"),
    ),
    (
        "ex_twelve_part.toml",
        include_str!("../corpus/ex_twelve_part.toml"),
    ),
    (
        "ex_fifteen_part.toml",
        include_str!("../corpus/ex_fifteen_part.toml"),
    ),
    (
        "ex_thirty_part.toml",
        include_str!("../corpus/ex_thirty_part.toml"),
    ),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Homeomorphic,
    Diffeomorphic,
    HomeoNotDiffeo,
}

impl Claim {
    pub fn relation(self) -> Relation {
        match self {
            Claim::Homeomorphic => Relation::Homeomorphic,
            Claim::Diffeomorphic => Relation::Diffeomorphic,
            Claim::HomeoNotDiffeo => Relation::HomeomorphicNotDiffeomorphic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// The pair must have different first Chern classes.
    DistinctC1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusRecord {
    pub id: String,
    pub n: u32,
    pub degrees: String,
    pub claim: Claim,
    pub partner: String,
    #[serde(default)]
    pub witness: Option<Witness>,
    #[serde(default)]
    pub expected: BTreeMap<String, String>,
    #[serde(default)]
    pub informational: BTreeMap<String, String>,
    /// File the record came from.
    #[serde(skip)]
    pub source: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    record: Vec<CorpusRecord>,
}

/// Fields whose expected values are not plain integers.
const STRING_FIELDS: &[&str] = &["factorization", "p3_printed_form"];

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub records: Vec<CorpusRecord>,
}

impl Corpus {
    pub fn embedded() -> Result<Self> {
        Self::from_sources(EMBEDDED.iter().map(|(n, c)| (n.to_string(), c.to_string())))
    }

    /// Loads a single corpus file or every `*.toml` file in a directory.
    pub fn load(path: &Path) -> Result<Self> {
        let read = |p: &Path| {
            std::fs::read_to_string(p)
                .map_err(|e| Error::Corpus(format!("cannot read {}: {e}", p.display())))
        };
        let mut sources = Vec::new();
        if path.is_dir() {
            let mut files: Vec<_> = std::fs::read_dir(path)
                .map_err(|e| Error::Corpus(format!("cannot list {}: {e}", path.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "toml"))
                .collect();
            files.sort();
            for f in files {
                sources.push((f.display().to_string(), read(&f)?));
            }
        } else {
            sources.push((path.display().to_string(), read(path)?));
        }
        Self::from_sources(sources)
    }

    pub fn from_sources(sources: impl IntoIterator<Item = (String, String)>) -> Result<Self> {
        let mut records = Vec::new();
        for (name, text) in sources {
            let file: CorpusFile =
                toml::from_str(&text).map_err(|e| Error::Corpus(format!("{name}: {e}")))?;
            for mut r in file.record {
                r.source = name.clone();
                records.push(r);
            }
        }
        let corpus = Self { records };
        corpus.check_integrity()?;
        Ok(corpus)
    }

    fn check_integrity(&self) -> Result<()> {
        let mut by_id = BTreeMap::new();
        for r in &self.records {
            if by_id.insert(r.id.as_str(), r).is_some() {
                return Err(Error::Corpus(format!("duplicate record id `{}`", r.id)));
            }
        }
        for r in &self.records {
            let md = r.multidegree()?;
            if md.is_empty() {
                return Err(Error::Corpus(format!("record `{}` has no degrees", r.id)));
            }
            for (field, value) in r.expected.iter().chain(&r.informational) {
                if !STRING_FIELDS.contains(&field.as_str()) && value.parse::<BigInt>().is_err() {
                    return Err(Error::Corpus(format!(
                        "record `{}`: {field} = `{value}` is not an integer",
                        r.id
                    )));
                }
            }
            let partner = by_id.get(r.partner.as_str()).ok_or_else(|| {
                Error::Corpus(format!(
                    "record `{}` names unknown partner `{}`",
                    r.id, r.partner
                ))
            })?;
            if partner.partner != r.id {
                return Err(Error::Corpus(format!(
                    "partner of `{}` is `{}`, but that record points at `{}`",
                    r.id, r.partner, partner.partner
                )));
            }
            if partner.n != r.n || partner.claim != r.claim {
                return Err(Error::Corpus(format!(
                    "records `{}` and `{}` disagree on dimension or claim",
                    r.id, partner.id
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&CorpusRecord> {
        self.records.iter().find(|r| r.id == id)
    }
}

impl CorpusRecord {
    pub fn multidegree(&self) -> Result<Multidegree> {
        self.degrees
            .parse()
            .map_err(|e| Error::Corpus(format!("record `{}`: {e}", self.id)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub informational: bool,
}

impl FieldCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordResult {
    pub id: String,
    pub n: u32,
    pub degrees: String,
    pub checks: Vec<FieldCheck>,
}

impl RecordResult {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    /// First non-informational field whose recomputed value differs.
    pub fn first_failure(&self) -> Option<&FieldCheck> {
        self.checks.iter().find(|c| !c.informational && !c.passed())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub first: String,
    pub second: String,
    pub n: u32,
    pub claim: Claim,
    pub relation: Relation,
    pub witness: Option<Witness>,
    pub distinct_c1: bool,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.relation == self.claim.relation()
            && match self.witness {
                Some(Witness::DistinctC1) => self.distinct_c1,
                None => true,
            }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<RecordResult>,
    pub claims: Vec<ClaimResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(RecordResult::passed) && self.claims.iter().all(ClaimResult::passed)
    }

    pub fn failed_records(&self) -> usize {
        self.records.iter().filter(|r| !r.passed()).count()
    }

    pub fn failed_claims(&self) -> usize {
        self.claims.iter().filter(|c| !c.passed()).count()
    }
}

/// Evaluates the p_3 expression printed for dimensions 6 and 7 (odd power
/// sums, and a stray `7 + r` in the dimension-7 version) and reports whether
/// it matches the generic even-power-sum p_3.
pub fn printed_p3(n: u32, md: &Multidegree) -> Option<BigRational> {
    if n != 6 && n != 7 {
        return None;
    }
    let s = invariants::power_sums(md, 3);
    let r = BigInt::from(md.codim());
    let base = BigInt::from(n + 1) + &r;
    let a1 = &base - s.get(1);
    let a2 = &base - s.get(2);
    let a3 = &base - s.get(3);
    // The dimension-7 line writes 7 + r in the middle term.
    let mid = if n == 7 {
        BigInt::from(7) + &r - s.get(1)
    } else {
        a1.clone()
    };
    let num = &a1 * &a1 * &a1 - BigInt::from(3) * mid * a2 + BigInt::from(2) * a3;
    Some(BigRational::new(num, BigInt::from(6)))
}

fn compute_field(field: &str, profile: &InvariantProfile) -> Result<String> {
    let md = &profile.multidegree;
    let n = profile.n;
    let indexed = |prefix: &str| -> Option<usize> {
        field
            .strip_prefix(prefix)
            .and_then(|rest| rest.parse::<usize>().ok())
            .filter(|&k| k >= 1)
    };
    let unknown = || {
        Error::Corpus(format!(
            "unknown or out-of-range field `{field}` for n = {n}"
        ))
    };
    Ok(match field {
        "d" => profile.total_degree.to_string(),
        "r" => md.codim().to_string(),
        "e" => profile.euler.to_string(),
        "d_p1" => profile.d_times_p1().to_string(),
        "e_over_d" => {
            let q = BigRational::new(profile.euler.clone(), profile.total_degree.clone());
            if q.is_integer() {
                q.to_integer().to_string()
            } else {
                q.to_string()
            }
        }
        "factorization" => md.factorization()?.to_string(),
        "p3_printed_form" => {
            let printed = printed_p3(n, md).ok_or_else(unknown)?;
            let generic = profile.pontrjagin.get(2).ok_or_else(unknown)?;
            if printed == BigRational::from_integer(generic.clone()) {
                "agrees".into()
            } else {
                "differs".into()
            }
        }
        _ => {
            if let Some(k) = indexed("s") {
                invariants::power_sums(md, k).get(k).to_string()
            } else if let Some(k) = indexed("c") {
                profile.chern.get(k - 1).ok_or_else(unknown)?.to_string()
            } else if let Some(k) = indexed("p") {
                profile
                    .pontrjagin
                    .get(k - 1)
                    .ok_or_else(unknown)?
                    .to_string()
            } else if let Some(p) = indexed("nu") {
                let p = p as u64;
                crate::arith::padic_valuation(&md.factorization()?, p)?.to_string()
            } else {
                return Err(unknown());
            }
        }
    })
}

fn verify_record(record: &CorpusRecord) -> Result<RecordResult> {
    let md = record.multidegree()?;
    let profile = InvariantProfile::compute(record.n, &md)?;
    let mut checks = Vec::new();
    for (fields, informational) in [(&record.expected, false), (&record.informational, true)] {
        for (field, expected) in fields {
            checks.push(FieldCheck {
                field: field.clone(),
                expected: expected.clone(),
                computed: compute_field(field, &profile)?,
                informational,
            });
        }
    }
    Ok(RecordResult {
        id: record.id.clone(),
        n: record.n,
        degrees: md.to_string(),
        checks,
    })
}

/// Recomputes every expected field and re-derives every pair claim.
pub fn verify_corpus(corpus: &Corpus) -> Result<VerificationReport> {
    let records = corpus
        .records
        .iter()
        .map(verify_record)
        .collect::<Result<Vec<_>>>()?;
    let mut seen = BTreeSet::new();
    let mut claims = Vec::new();
    for r in &corpus.records {
        let pair = if r.id < r.partner {
            (r.id.clone(), r.partner.clone())
        } else {
            (r.partner.clone(), r.id.clone())
        };
        if !seen.insert(pair.clone()) {
            continue;
        }
        let first = corpus.get(&pair.0).expect("integrity checked");
        let second = corpus.get(&pair.1).expect("integrity checked");
        let verdict =
            classify::classify_pair(first.n, &first.multidegree()?, &second.multidegree()?)?;
        claims.push(ClaimResult {
            first: first.id.clone(),
            second: second.id.clone(),
            n: first.n,
            claim: first.claim,
            relation: verdict.relation,
            witness: first.witness.or(second.witness),
            distinct_c1: verdict.distinct_c1,
        });
    }
    Ok(VerificationReport { records, claims })
}
