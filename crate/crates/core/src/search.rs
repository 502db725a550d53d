//! Bounded enumeration of multidegrees and grouping by an exact match key.
//!
//! The scan is partitioned by the largest degree `d_1`. Each partition builds
//! its own key table; tables are merged into a `BTreeMap` so the emitted
//! report does not depend on how many workers ran or in which order they
//! finished.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::classify::{self, ClassificationVerdict};
use crate::error::{Error, Result};
use crate::invariants::{self, InvariantProfile, Multidegree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeyMode {
    /// The invariants compared by the classification theorems.
    Invariant,
    /// Total degree and the power sums `s_1..s_n`.
    PowerSum,
}

impl fmt::Display for KeyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KeyMode::Invariant => "invariant",
            KeyMode::PowerSum => "power-sum",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum C1Filter {
    #[default]
    Any,
    /// Keep only pairs whose first Chern classes differ.
    Distinct,
    /// Keep only pairs whose first Chern classes agree.
    Equal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: u32,
    pub max_degree: u32,
    pub min_codim: usize,
    pub max_codim: usize,
    pub max_total_degree: Option<BigInt>,
    pub mode: KeyMode,
    pub c1_filter: C1Filter,
    pub rigidity_pruning: bool,
    /// `None` lets the thread pool decide; `Some(1)` forces a sequential scan.
    pub workers: Option<usize>,
    /// Cap on the number of multidegrees held in key tables.
    pub max_table_size: usize,
}

pub const DEFAULT_MAX_TABLE_SIZE: usize = 5_000_000;

impl SearchConfig {
    pub fn new(n: u32, max_degree: u32, max_codim: usize) -> Self {
        Self {
            n,
            max_degree,
            min_codim: 1,
            max_codim,
            max_total_degree: None,
            mode: KeyMode::Invariant,
            c1_filter: C1Filter::Any,
            rigidity_pruning: false,
            workers: None,
            max_table_size: DEFAULT_MAX_TABLE_SIZE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if !(2..=7).contains(&self.n) {
            return fail(format!("dimension {} outside 2..=7", self.n));
        }
        if self.max_degree < 2 {
            return fail(format!("max degree {} is below 2", self.max_degree));
        }
        if u64::from(self.max_degree) > crate::arith::FACTOR_BOUND {
            return fail(format!("max degree {} exceeds 10^6", self.max_degree));
        }
        if self.min_codim < 1 || self.max_codim < self.min_codim {
            return fail(format!(
                "codimension range {}..={} is empty or starts below 1",
                self.min_codim, self.max_codim
            ));
        }
        if self.workers == Some(0) {
            return fail("worker count must be positive".into());
        }
        Ok(())
    }
}

/// Lexicographic successor iterator over non-increasing tuples of a fixed
/// length whose first entry is pinned to `top`.
struct FixedTop<'a> {
    current: Option<Vec<u32>>,
    cap: Option<&'a BigInt>,
}

fn product(t: &[u32]) -> BigInt {
    t.iter()
        .fold(BigInt::one(), |acc, &v| acc * BigInt::from(v))
}

impl<'a> FixedTop<'a> {
    fn new(top: u32, len: usize, cap: Option<&'a BigInt>) -> Self {
        let mut first = vec![2; len];
        first[0] = top;
        let ok = cap.is_none_or(|c| &product(&first) <= c);
        Self {
            current: ok.then_some(first),
            cap,
        }
    }
}

impl Iterator for FixedTop<'_> {
    type Item = Multidegree;

    fn next(&mut self) -> Option<Multidegree> {
        let cur = self.current.take()?;
        let out = Multidegree::from_canonical(cur.clone());
        // Bump the rightmost position that can grow without breaking the
        // ordering (position 0 is pinned), reset the suffix to 2s.
        for i in (1..cur.len()).rev() {
            if cur[i] < cur[i - 1] {
                let mut next = cur.clone();
                next[i] += 1;
                for v in &mut next[i + 1..] {
                    *v = 2;
                }
                // Products grow with each entry, so a failing position means
                // every larger value there fails too; try further left.
                if self.cap.is_none_or(|c| &product(&next) <= c) {
                    self.current = Some(next);
                    break;
                }
            }
        }
        Some(out)
    }
}

fn partition(config: &SearchConfig, top: u32) -> impl Iterator<Item = Multidegree> + '_ {
    (config.min_codim..=config.max_codim)
        .flat_map(move |len| FixedTop::new(top, len, config.max_total_degree.as_ref()))
}

/// Every canonical multidegree allowed by `config`, exactly once, ordered by
/// codimension and then lexicographically.
pub fn enumerate_multidegrees(config: &SearchConfig) -> impl Iterator<Item = Multidegree> + '_ {
    let cap = config.max_total_degree.as_ref();
    (config.min_codim..=config.max_codim).flat_map(move |len| {
        (2..=config.max_degree).flat_map(move |top| FixedTop::new(top, len, cap))
    })
}

/// Exact key under which matching multidegrees collide.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchKey {
    pub mode: KeyMode,
    pub n: u32,
    pub values: Vec<BigInt>,
}

impl MatchKey {
    pub fn field_names(&self) -> Vec<String> {
        key_field_names(self.n, self.mode)
    }

    pub fn fields(&self) -> Vec<(String, String)> {
        self.field_names()
            .into_iter()
            .zip(self.values.iter().map(BigInt::to_string))
            .collect()
    }
}

fn key_field_names(n: u32, mode: KeyMode) -> Vec<String> {
    match (mode, n) {
        (KeyMode::PowerSum, _) => std::iter::once("d".to_string())
            .chain((1..=n).map(|i| format!("s{i}")))
            .collect(),
        (KeyMode::Invariant, 2) => vec!["d_p1".into(), "e".into(), "c1_mod_2".into()],
        (KeyMode::Invariant, 3) => vec!["d".into(), "p1".into(), "e".into()],
        (KeyMode::Invariant, _) => std::iter::once("d".to_string())
            .chain((1..=n / 2).map(|k| format!("p{k}")))
            .chain(std::iter::once("e".to_string()))
            .collect(),
    }
}

impl fmt::Display for MatchKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.fields().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

impl Serialize for MatchKey {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let fields = self.fields();
        let mut map = serializer.serialize_map(Some(fields.len()))?;
        for (k, v) in &fields {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn key_from_profile(profile: &InvariantProfile, mode: KeyMode) -> MatchKey {
    let n = profile.n;
    let values = match (mode, n) {
        (KeyMode::PowerSum, _) => {
            let sums = invariants::power_sums(&profile.multidegree, n as usize);
            std::iter::once(profile.total_degree.clone())
                .chain(sums.as_slice().iter().cloned())
                .collect()
        }
        (KeyMode::Invariant, 2) => {
            let parity = BigInt::from(u8::from(!num_integer::Integer::is_even(profile.c1())));
            vec![profile.d_times_p1(), profile.euler.clone(), parity]
        }
        (KeyMode::Invariant, 3) => vec![
            profile.total_degree.clone(),
            profile.p1().clone(),
            profile.euler.clone(),
        ],
        (KeyMode::Invariant, _) => std::iter::once(profile.total_degree.clone())
            .chain(profile.pontrjagin.iter().cloned())
            .chain(std::iter::once(profile.euler.clone()))
            .collect(),
    };
    MatchKey { mode, n, values }
}

pub fn match_key(n: u32, md: &Multidegree, mode: KeyMode) -> Result<MatchKey> {
    if !(2..=7).contains(&n) {
        return Err(Error::Dimension {
            n,
            expected: "2..=7",
        });
    }
    Ok(key_from_profile(&InvariantProfile::compute(n, md)?, mode))
}

#[derive(Debug, Clone)]
struct Candidate {
    md: Multidegree,
    total_degree: BigInt,
    c1: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    /// Indices into [`PairReport::members`].
    pub first: usize,
    pub second: usize,
    pub verdict: ClassificationVerdict,
}

/// A group of distinct multidegrees sharing one match key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub key: MatchKey,
    #[serde(serialize_with = "serialize_displayed")]
    pub members: Vec<Multidegree>,
    #[serde(serialize_with = "serialize_displayed")]
    pub total_degrees: Vec<BigInt>,
    #[serde(serialize_with = "serialize_displayed")]
    pub c1: Vec<BigInt>,
    pub pairs: Vec<PairVerdict>,
}

fn serialize_displayed<T: fmt::Display, S: serde::Serializer>(
    items: &[T],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(items.iter().map(ToString::to_string))
}

type Table = HashMap<MatchKey, Vec<Candidate>>;

fn scan_partition(config: &SearchConfig, top: u32) -> Result<Table> {
    let mut table: Table = HashMap::new();
    let mut held = 0usize;
    for md in partition(config, top) {
        let profile = InvariantProfile::compute(config.n, &md)?;
        let key = key_from_profile(&profile, config.mode);
        held += 1;
        if held > config.max_table_size {
            return Err(Error::ResourceLimit {
                limit: config.max_table_size,
            });
        }
        table.entry(key).or_default().push(Candidate {
            md,
            total_degree: profile.total_degree,
            c1: profile.chern[0].clone(),
        });
    }
    Ok(table)
}

#[cfg(feature = "parallel")]
fn scan_all(config: &SearchConfig, tops: &[u32]) -> Result<Vec<Table>> {
    use rayon::prelude::*;

    if config.workers == Some(1) {
        return tops.iter().map(|&t| scan_partition(config, t)).collect();
    }
    let run = || {
        tops.par_iter()
            .map(|&t| scan_partition(config, t))
            .collect::<Result<Vec<_>>>()
    };
    match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn scan_all(config: &SearchConfig, tops: &[u32]) -> Result<Vec<Table>> {
    tops.iter().map(|&t| scan_partition(config, t)).collect()
}

fn pair_allowed(config: &SearchConfig, a: &Candidate, b: &Candidate) -> bool {
    let c1_ok = match config.c1_filter {
        C1Filter::Any => true,
        C1Filter::Distinct => a.c1 != b.c1,
        C1Filter::Equal => a.c1 == b.c1,
    };
    let rigid = config.rigidity_pruning
        && classify::rigidity_excludes_pair(config.n, &a.md)
        && classify::rigidity_excludes_pair(config.n, &b.md);
    c1_ok && !rigid
}

fn build_report(
    config: &SearchConfig,
    key: MatchKey,
    mut group: Vec<Candidate>,
) -> Result<Option<PairReport>> {
    group.sort_by(|x, y| x.md.cmp(&y.md));
    let mut kept = vec![false; group.len()];
    let mut pairs = Vec::new();
    for i in 0..group.len() {
        for j in i + 1..group.len() {
            if pair_allowed(config, &group[i], &group[j]) {
                kept[i] = true;
                kept[j] = true;
                pairs.push((i, j));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(None);
    }
    // Re-index onto the surviving members.
    let mut index = vec![usize::MAX; group.len()];
    let mut members = Vec::new();
    for (i, c) in group.into_iter().enumerate() {
        if kept[i] {
            index[i] = members.len();
            members.push(c);
        }
    }
    let pairs = pairs
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (index[i], index[j]);
            Ok(PairVerdict {
                first: a,
                second: b,
                verdict: classify::classify_pair(config.n, &members[a].md, &members[b].md)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(PairReport {
        key,
        total_degrees: members.iter().map(|c| c.total_degree.clone()).collect(),
        c1: members.iter().map(|c| c.c1.clone()).collect(),
        members: members.into_iter().map(|c| c.md).collect(),
        pairs,
    }))
}

/// Groups every enumerated multidegree by its match key and reports each key
/// shared by at least two members that survive the filters.
///
/// Output is sorted by smallest total degree in the group, then by the
/// lexicographically smallest member; members are sorted lexicographically.
pub fn search_pairs(config: &SearchConfig) -> Result<Vec<PairReport>> {
    config.validate()?;
    let tops: Vec<u32> = (2..=config.max_degree).collect();
    let tables = scan_all(config, &tops)?;

    let mut merged: BTreeMap<MatchKey, Vec<Candidate>> = BTreeMap::new();
    let mut held = 0usize;
    for table in tables {
        held += table.values().map(Vec::len).sum::<usize>();
        if held > config.max_table_size {
            return Err(Error::ResourceLimit {
                limit: config.max_table_size,
            });
        }
        for (key, members) in table {
            merged.entry(key).or_default().extend(members);
        }
    }

    let mut reports = Vec::new();
    for (key, group) in merged {
        if group.len() < 2 {
            continue;
        }
        if let Some(report) = build_report(config, key, group)? {
            reports.push(report);
        }
    }
    reports.sort_by(|x, y| {
        let dx = x.total_degrees.iter().min();
        let dy = y.total_degrees.iter().min();
        dx.cmp(&dy).then_with(|| x.members[0].cmp(&y.members[0]))
    });
    Ok(reports)
}

/// First key component on which two multidegrees disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeyMismatch {
    pub field: String,
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum PairCheck {
    Match(PairReport),
    Mismatch(KeyMismatch),
}

/// Compares two explicitly given multidegrees under `mode` and classifies them
/// when their keys agree.
pub fn verify_known_pair(n: u32, a: &[i64], b: &[i64], mode: KeyMode) -> Result<PairCheck> {
    let a = Multidegree::canonicalize(a)?;
    let b = Multidegree::canonicalize(b)?;
    if a == b {
        return Err(Error::InvalidInput(format!(
            "both sides canonicalize to {a}; a pair needs distinct multidegrees"
        )));
    }
    let ka = match_key(n, &a, mode)?;
    let kb = match_key(n, &b, mode)?;
    if ka != kb {
        let (field, x, y) = ka
            .fields()
            .into_iter()
            .zip(kb.fields())
            .find(|(x, y)| x.1 != y.1)
            .map(|(x, y)| (x.0, x.1, y.1))
            .expect("unequal keys of one shape differ in some field");
        return Ok(PairCheck::Mismatch(KeyMismatch {
            field,
            first: x,
            second: y,
        }));
    }
    let pa = InvariantProfile::compute(n, &a)?;
    let pb = InvariantProfile::compute(n, &b)?;
    let verdict = classify::classify_pair(n, &a, &b)?;
    Ok(PairCheck::Match(PairReport {
        key: ka,
        members: vec![a, b],
        total_degrees: vec![pa.total_degree.clone(), pb.total_degree.clone()],
        c1: vec![pa.c1().clone(), pb.c1().clone()],
        pairs: vec![PairVerdict {
            first: 0,
            second: 1,
            verdict,
        }],
    }))
}
