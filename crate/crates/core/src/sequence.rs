//! Expansion sequences: raw case lists and their compressed `a(CASE)` form.
//!
//! A compressed step `a(C)` means one step of case `C` followed by `a - 1`
//! steps of case I. Only the first compressed step may carry case I; it then
//! stands for a leading run of case-I steps.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CaseTag {
    I,
    II,
    III,
}

impl CaseTag {
    pub const ALL: [CaseTag; 3] = [CaseTag::I, CaseTag::II, CaseTag::III];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "1" => Ok(CaseTag::I),
            "II" | "2" => Ok(CaseTag::II),
            "III" | "3" => Ok(CaseTag::III),
            other => Err(Error::Parse(format!("unknown case '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CompressedStep {
    pub count: u64,
    pub case: CaseTag,
}

impl CompressedStep {
    pub fn new(count: u64, case: CaseTag) -> Self {
        CompressedStep { count, case }
    }
}

impl fmt::Display for CompressedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.count, self.case)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Termination {
    #[default]
    Running,
    /// The point became a vertex of the partition at this raw depth.
    VertexHit(u64),
    DepthLimit,
}

/// Groups a raw case list into compressed steps.
pub fn compress(raw: &[CaseTag]) -> Vec<CompressedStep> {
    let mut out: Vec<CompressedStep> = Vec::new();
    for &case in raw {
        match (case, out.last_mut()) {
            (CaseTag::I, Some(last)) => last.count += 1,
            _ => out.push(CompressedStep::new(1, case)),
        }
    }
    out
}

/// Inverse of [`compress`]; rejects case I after the first step.
pub fn expand_compressed(steps: &[CompressedStep]) -> Result<Vec<CaseTag>> {
    validate(steps)?;
    let mut raw = Vec::with_capacity(steps.iter().map(|s| s.count as usize).sum());
    for s in steps {
        raw.push(s.case);
        raw.extend(std::iter::repeat_n(CaseTag::I, (s.count - 1) as usize));
    }
    Ok(raw)
}

fn validate(steps: &[CompressedStep]) -> Result<()> {
    for (k, s) in steps.iter().enumerate() {
        if s.count == 0 {
            return Err(Error::ZeroStep);
        }
        if k > 0 && s.case == CaseTag::I {
            return Err(Error::LeadingCaseI(k + 1));
        }
    }
    Ok(())
}

/// A finite prefix of a point's expansion in compressed form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExpansionSequence {
    steps: Vec<CompressedStep>,
    pub termination: Termination,
}

impl ExpansionSequence {
    pub fn new(steps: Vec<CompressedStep>) -> Result<Self> {
        validate(&steps)?;
        Ok(ExpansionSequence {
            steps,
            termination: Termination::Running,
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_raw(raw: &[CaseTag]) -> Self {
        ExpansionSequence {
            steps: compress(raw),
            termination: Termination::Running,
        }
    }

    pub fn with_termination(mut self, t: Termination) -> Self {
        self.termination = t;
        self
    }

    pub fn steps(&self) -> &[CompressedStep] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of compressed steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Total number of partition steps, the sum of the step counts.
    pub fn raw_len(&self) -> u64 {
        self.steps.iter().map(|s| s.count).sum()
    }

    pub fn raw_cases(&self) -> impl Iterator<Item = CaseTag> + '_ {
        self.steps.iter().flat_map(|s| {
            std::iter::once(s.case).chain(std::iter::repeat_n(CaseTag::I, (s.count - 1) as usize))
        })
    }

    pub fn to_raw(&self) -> Vec<CaseTag> {
        self.raw_cases().collect()
    }

    /// Appends one raw step, extending the current run when it is case I.
    pub fn push_raw(&mut self, case: CaseTag) {
        self.push_run(case, 1);
    }

    /// Appends one step of `case` followed by `count - 1` case-I steps, merged
    /// into the canonical compressed form.
    pub fn push_run(&mut self, case: CaseTag, count: u64) {
        if count == 0 {
            return;
        }
        match (case, self.steps.last_mut()) {
            (CaseTag::I, Some(last)) => last.count += count,
            _ => self.steps.push(CompressedStep::new(count, case)),
        }
    }

    /// The first `n` compressed steps.
    pub fn prefix(&self, n: usize) -> ExpansionSequence {
        ExpansionSequence {
            steps: self.steps[..n.min(self.steps.len())].to_vec(),
            termination: Termination::Running,
        }
    }

    /// Concatenation in raw form, recompressed.
    pub fn concat(&self, other: &ExpansionSequence) -> ExpansionSequence {
        let mut out = ExpansionSequence {
            steps: self.steps.clone(),
            termination: Termination::Running,
        };
        for s in &other.steps {
            out.push_run(s.case, s.count);
        }
        out
    }

    /// Parses `2(III),1(II),1(I)` or `raw:III,I,II,I`.
    ///
    /// Each compressed term is read as its raw steps, so a trailing `1(I)`
    /// written after other steps is accepted and merged into the previous run.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("raw:") {
            let raw = split_terms(rest)
                .map(CaseTag::from_str)
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::from_raw(&raw));
        }
        let mut out = ExpansionSequence::empty();
        for term in split_terms(s) {
            let (count, case) = term
                .strip_suffix(')')
                .and_then(|t| t.split_once('('))
                .ok_or_else(|| Error::Parse(format!("expected 'a(CASE)', got '{term}'")))?;
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad step count in '{term}'")))?;
            if count == 0 {
                return Err(Error::ZeroStep);
            }
            out.push_run(case.parse()?, count);
        }
        Ok(out)
    }
}

fn split_terms(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

impl fmt::Display for ExpansionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for ExpansionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExpansionSequence::parse(s)
    }
}

impl Serialize for ExpansionSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use CaseTag::*;

    #[test]
    fn compress_examples() {
        assert_eq!(
            compress(&[III, I, II, I]),
            vec![CompressedStep::new(2, III), CompressedStep::new(2, II)]
        );
        assert_eq!(compress(&[I]), vec![CompressedStep::new(1, I)]);
        assert_eq!(
            compress(&[I, I, II, III]),
            vec![
                CompressedStep::new(2, I),
                CompressedStep::new(1, II),
                CompressedStep::new(1, III)
            ]
        );
        assert!(compress(&[]).is_empty());
    }

    #[test]
    fn expand_rejects_late_case_i() {
        let bad = [CompressedStep::new(2, III), CompressedStep::new(1, I)];
        assert_eq!(expand_compressed(&bad), Err(Error::LeadingCaseI(2)));
        assert_eq!(expand_compressed(&[CompressedStep::new(0, II)]), Err(Error::ZeroStep));
        assert!(ExpansionSequence::new(bad.to_vec()).is_err());
    }

    #[test]
    fn parse_accepts_written_forms() {
        let s = ExpansionSequence::parse("2(III),1(II),1(I)").unwrap();
        assert_eq!(s.to_raw(), vec![III, I, II, I]);
        assert_eq!(s.to_string(), "2(III),2(II)");
        let r = ExpansionSequence::parse("raw:III,I,II,I").unwrap();
        assert_eq!(r, s);
        assert!(ExpansionSequence::parse("2(IV)").is_err());
        assert!(ExpansionSequence::parse("0(II)").is_err());
        assert!(ExpansionSequence::parse("2II").is_err());
        assert!(ExpansionSequence::parse("").unwrap().is_empty());
    }

    #[test]
    fn concat_merges_runs() {
        let a = ExpansionSequence::parse("1(II)").unwrap();
        let b = ExpansionSequence::parse("raw:I,I").unwrap();
        assert_eq!(a.concat(&b).to_string(), "3(II)");
        assert_eq!(a.concat(&b).raw_len(), 3);
    }

    fn raw_strategy() -> impl Strategy<Value = Vec<CaseTag>> {
        prop::collection::vec(prop::sample::select(CaseTag::ALL.to_vec()), 0..40)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn codec_round_trip(raw in raw_strategy()) {
            let c = compress(&raw);
            prop_assert_eq!(expand_compressed(&c).unwrap(), raw.clone());
            let seq = ExpansionSequence::from_raw(&raw);
            prop_assert_eq!(seq.raw_len() as usize, raw.len());
            prop_assert_eq!(ExpansionSequence::parse(&seq.to_string()).unwrap(), seq);
        }
    }
}
