//! Strict positive definiteness diagnostics on complex spheres.
//!
//! A member of `Υ_{2q}` is strictly positive definite exactly when
//! `{m - n : a_{m,n} > 0}` meets every arithmetic progression of `ℤ`.
//! A truncated sequence can only ever witness a failure of that condition,
//! so positive outcomes are reported as "consistent up to modulus K".

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::complex_coeffs::ComplexSchoenbergSequence;
use crate::error::{domain, Result, SchoenbergError};
use crate::real_coeffs::MASS_TOL;

pub const DEFAULT_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportPattern {
    pub diffs: BTreeSet<i64>,
    pub threshold: f64,
    pub truncation: usize,
    /// Coefficients sum to one within `MASS_TOL`, so nothing beyond the
    /// truncation can carry weight.
    pub mass_complete: bool,
    pub valid_mass: bool,
}

pub fn support_pattern(seq: &ComplexSchoenbergSequence, threshold: f64) -> SupportPattern {
    let diffs = seq
        .entries()
        .filter(|&(_, a)| a > threshold)
        .map(|((m, n), _)| m as i64 - n as i64)
        .collect();
    SupportPattern {
        diffs,
        threshold,
        truncation: seq.max_degree(),
        mass_complete: seq.valid_mass() && (seq.mass() - 1.0).abs() <= MASS_TOL,
        valid_mass: seq.valid_mass(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProgressionVerdict {
    pub modulus: usize,
    pub residue: usize,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpdSummary {
    /// Every progression with modulus at most `max_modulus` is met. Not a proof.
    ConsistentUpTo {
        max_modulus: usize,
    },
    /// `diffs` misses `modulus ℤ + residue`. Certified when the mass is
    /// complete, otherwise only a statement about the truncation.
    Violates {
        modulus: usize,
        residue: usize,
        certified: bool,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpdReport {
    pub verdicts: Vec<ProgressionVerdict>,
    pub summary: SpdSummary,
    pub transfer_notes: Vec<Implication>,
}

impl SpdReport {
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        self.verdicts
            .iter()
            .find(|v| !v.met)
            .map(|v| (v.modulus, v.residue))
    }
}

pub fn check_progressions(pattern: &SupportPattern, max_modulus: usize) -> Result<SpdReport> {
    if max_modulus == 0 {
        return domain("maximum modulus must be at least 1");
    }
    let mut verdicts = Vec::new();
    for k in 1..=max_modulus {
        let kk = k as i64;
        let hit: BTreeSet<usize> = pattern
            .diffs
            .iter()
            .map(|&d| d.rem_euclid(kk) as usize)
            .collect();
        verdicts.extend((0..k).map(|r| ProgressionVerdict {
            modulus: k,
            residue: r,
            met: hit.contains(&r),
        }));
    }
    let summary = if !pattern.valid_mass {
        SpdSummary::Inconclusive {
            reason: "sequence is not a valid Schoenberg sequence".into(),
        }
    } else if let Some(v) = verdicts.iter().find(|v| !v.met) {
        SpdSummary::Violates {
            modulus: v.modulus,
            residue: v.residue,
            certified: pattern.mass_complete,
        }
    } else {
        SpdSummary::ConsistentUpTo { max_modulus }
    };
    Ok(SpdReport {
        verdicts,
        summary,
        transfer_notes: Vec::new(),
    })
}

/// First `(m, n)` where `lower` (one complex dimension down) disagrees with
/// "`a_{m,n} > 0` iff some `upper_{m+j,n+j} > 0`", if any.
pub fn support_transfer_mismatch(
    upper: &ComplexSchoenbergSequence,
    lower: &ComplexSchoenbergSequence,
) -> Option<(usize, usize)> {
    let big_m = lower.max_degree();
    crate::complex_coeffs::indices_up_to(big_m).find(|&(m, n)| {
        let above = (0..)
            .take_while(|j| m + n + 2 * j <= upper.max_degree())
            .any(|j| upper.get(m + j, n + j) > 0.0);
        (lower.get(m, n) > 0.0) != above
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "sphere", rename_all = "lowercase")]
pub enum Space {
    Complex { q: usize },
    Real { d: usize },
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Complex { q } => write!(f, "Υ_{}", 2 * q),
            Space::Real { d } => write!(f, "Ψ_{d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    /// Member; strictness unknown.
    Member,
    Strict,
    /// Member but not strictly positive definite.
    NonStrict,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassEvidence {
    pub space: Space,
    pub status: Membership,
}

impl ClassEvidence {
    pub fn new(space: Space, status: Membership) -> Self {
        Self { space, status }
    }
}

impl fmt::Display for ClassEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Membership::Member => write!(f, "{}", self.space),
            Membership::Strict => write!(f, "{}⁺", self.space),
            Membership::NonStrict => write!(f, "{0} \\ {0}⁺", self.space),
            Membership::Inconclusive => write!(f, "{}?", self.space),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Strictness on one complex sphere carries to any other sphere of membership.
    ComplexStrictTransfer,
    /// Non-strictness likewise carries across complex spheres.
    ComplexNonStrictTransfer,
    /// Real restriction strict on some `S^d` is strict on `S^{2q-1}`.
    RestrictionStrictOnOddSphere,
    /// Strictness on `Ω_{2q}` makes the real restriction strict wherever it is a member.
    RestrictionInheritsStrict,
    /// Real analogue: `Ψ_d ∩ Ψ_{d'}⁺ ⊂ Ψ_d⁺`.
    RealStrictTransfer,
    RealNonStrictTransfer,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Implication {
    pub rule: Rule,
    pub premises: [ClassEvidence; 2],
    pub conclusion: ClassEvidence,
    pub statement: String,
}

impl Implication {
    fn new(rule: Rule, a: ClassEvidence, b: ClassEvidence, conclusion: ClassEvidence) -> Self {
        let statement = format!("{a} and {b} ⇒ {conclusion}");
        Self {
            rule,
            premises: [a, b],
            conclusion,
            statement,
        }
    }
}

fn conflict(a: ClassEvidence, b: ClassEvidence) -> SchoenbergError {
    SchoenbergError::Contradiction(format!("{a} and {b} cannot both hold"))
}

fn is_member(s: Membership) -> bool {
    !matches!(s, Membership::Inconclusive)
}

/// Deductions licensed by two pieces of class evidence about the same
/// function (the real evidence refers to its restriction `φ_r ∘ cos`).
pub fn implications(a: ClassEvidence, b: ClassEvidence) -> Result<Vec<Implication>> {
    use Membership::*;
    for e in [a, b] {
        if e.status == Inconclusive {
            return Err(SchoenbergError::Inconclusive(format!(
                "no membership evidence for {}",
                e.space
            )));
        }
    }
    let mut out = Vec::new();
    match (a.space, b.space) {
        (Space::Complex { .. }, Space::Complex { .. })
        | (Space::Real { .. }, Space::Real { .. }) => {
            let complex = matches!(a.space, Space::Complex { .. });
            match (a.status, b.status) {
                (Strict, NonStrict) | (NonStrict, Strict) => {
                    return Err(conflict(a, b));
                }
                (Strict, Strict) | (NonStrict, NonStrict) | (Member, Member) => {}
                (Strict, _) | (_, Strict) => {
                    let (from, to) = if a.status == Strict { (a, b) } else { (b, a) };
                    let rule = if complex {
                        Rule::ComplexStrictTransfer
                    } else {
                        Rule::RealStrictTransfer
                    };
                    out.push(Implication::new(
                        rule,
                        from,
                        to,
                        ClassEvidence::new(to.space, Strict),
                    ));
                }
                (NonStrict, Member) | (Member, NonStrict) => {
                    let (from, to) = if a.status == NonStrict {
                        (a, b)
                    } else {
                        (b, a)
                    };
                    let rule = if complex {
                        Rule::ComplexNonStrictTransfer
                    } else {
                        Rule::RealNonStrictTransfer
                    };
                    out.push(Implication::new(
                        rule,
                        from,
                        to,
                        ClassEvidence::new(to.space, NonStrict),
                    ));
                }
                _ => {}
            }
        }
        _ => {
            let (c, r) = if matches!(a.space, Space::Complex { .. }) {
                (a, b)
            } else {
                (b, a)
            };
            let (Space::Complex { q }, Space::Real { .. }) = (c.space, r.space) else {
                unreachable!()
            };
            if is_member(c.status) && r.status == Strict {
                let odd = ClassEvidence::new(Space::Real { d: 2 * q - 1 }, Strict);
                out.push(Implication::new(
                    Rule::RestrictionStrictOnOddSphere,
                    c,
                    r,
                    odd,
                ));
            }
            if c.status == Strict {
                if r.status == NonStrict {
                    return Err(conflict(c, r));
                }
                let same = ClassEvidence::new(r.space, Strict);
                out.push(Implication::new(
                    Rule::RestrictionInheritsStrict,
                    c,
                    r,
                    same,
                ));
            }
        }
    }
    Ok(out)
}

/// Evidence a computed sequence and its progression report provide.
/// Only failures are certified, so the best outcome is plain membership.
pub fn evidence_from_report(seq: &ComplexSchoenbergSequence, report: &SpdReport) -> ClassEvidence {
    let space = Space::Complex { q: seq.q() };
    let status = match (&report.summary, seq.valid_mass()) {
        (_, false) | (SpdSummary::Inconclusive { .. }, _) => Membership::Inconclusive,
        (
            SpdSummary::Violates {
                certified: true, ..
            },
            true,
        ) => Membership::NonStrict,
        _ => Membership::Member,
    };
    ClassEvidence::new(space, status)
}

pub fn transfer_class(
    seq: &ComplexSchoenbergSequence,
    report: &SpdReport,
    other: ClassEvidence,
) -> Result<Vec<Implication>> {
    implications(evidence_from_report(seq, report), other)
}
