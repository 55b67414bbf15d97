//! Machine verification of the determinant identities.
//!
//! Every check is a symbolic zero-test (or an exact integer comparison for
//! the content checks): there is no numeric tolerance anywhere in this
//! module. A failed identity is data, not a crash: checks return report
//! records, and a `Fail` record always carries a witness: the canonical
//! string of the nonzero difference polynomial, or the offending value.
//!
//! Cross-dimension identities mix determinants of nested point sets (for
//! example `lambda(n, n-1)` over points `0..n` against `gamma(n-1)` and
//! `delta(n-1)` over points `0..n-1`). The distance variables of the smaller
//! set are literally a subset of the larger set's, so the polynomials
//! combine without any relabeling; silent index drift is the main hazard
//! here, not the algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cm::{CmCache, CmError};
use crate::poly::{Degree, PolyError, Polynomial, VarId};
use crate::rational::{rational_pow, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "Pass"),
            CheckStatus::Fail => write!(f, "Fail"),
        }
    }
}

/// Outcome of one identity check at one parameter tuple.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub parameters: Vec<u32>,
    pub status: CheckStatus,
    pub witness: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Error)]
pub enum ReportParseError {
    #[error("line {line}: expected 4 tab-separated fields")]
    FieldCount { line: usize },
    #[error("line {line}: bad parameter list `{text}`")]
    Parameters { line: usize, text: String },
    #[error("line {line}: unknown status `{text}`")]
    Status { line: usize, text: String },
    #[error("invalid report document: {0}")]
    Json(#[from] serde_json::Error),
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
    }

    fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Line-oriented form: one record per line with tab-separated fields
    /// `check_id`, comma-joined parameters, status, witness.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let params = c
                .parameters
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                c.check_id, params, c.status, c.witness
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<VerificationReport, ReportParseError> {
        let mut checks = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(ReportParseError::FieldCount { line: line_no });
            }
            let parameters = if fields[1].is_empty() {
                Vec::new()
            } else {
                fields[1]
                    .split(',')
                    .map(|t| {
                        t.parse::<u32>().map_err(|_| ReportParseError::Parameters {
                            line: line_no,
                            text: fields[1].to_owned(),
                        })
                    })
                    .collect::<Result<_, _>>()?
            };
            let status = match fields[2] {
                "Pass" => CheckStatus::Pass,
                "Fail" => CheckStatus::Fail,
                other => {
                    return Err(ReportParseError::Status {
                        line: line_no,
                        text: other.to_owned(),
                    })
                }
            };
            checks.push(CheckRecord {
                check_id: fields[0].to_owned(),
                parameters,
                status,
                witness: fields[3].to_owned(),
            });
        }
        Ok(VerificationReport { checks })
    }

    /// Single structured document form (JSON), byte-reproducible for equal
    /// reports.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<VerificationReport, ReportParseError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The named check families, in canonical report order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SuiteId {
    Closed,
    Heron,
    Ptolemy,
    Base,
    Collapse,
    Recurrence,
    Homog,
    Content,
    Mod2,
    P1,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::Closed,
        SuiteId::Heron,
        SuiteId::Ptolemy,
        SuiteId::Base,
        SuiteId::Collapse,
        SuiteId::Recurrence,
        SuiteId::Homog,
        SuiteId::Content,
        SuiteId::Mod2,
        SuiteId::P1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Closed => "closed",
            SuiteId::Heron => "heron",
            SuiteId::Ptolemy => "ptolemy",
            SuiteId::Base => "base",
            SuiteId::Collapse => "collapse",
            SuiteId::Recurrence => "recurrence",
            SuiteId::Homog => "homog",
            SuiteId::Content => "content",
            SuiteId::Mod2 => "mod2",
            SuiteId::P1 => "p1",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for SuiteId {
    type Err = String;
    fn from_str(s: &str) -> Result<SuiteId, String> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Runs the identity checks against a shared determinant cache.
pub struct Verifier {
    cache: CmCache,
}

impl Verifier {
    pub fn new(cache: CmCache) -> Verifier {
        Verifier { cache }
    }

    pub fn cache(&self) -> &CmCache {
        &self.cache
    }

    /// gamma(1), delta(1) and delta(2) against their closed forms.
    pub fn check_closed_forms(&self) -> Result<VerificationReport, CmError> {
        let g1 = self.cache.gamma(1)?;
        let d1 = self.cache.delta(1)?;
        let d2 = self.cache.delta(2)?;
        let checks = vec![
            zero_record("closed.gamma", vec![1], &(&*g1 - &known("2*d_0_1^2"))),
            zero_record("closed.delta", vec![1], &(&*d1 - &known("-d_0_1^4"))),
            zero_record(
                "closed.delta",
                vec![2],
                &(&*d2 - &known("2*d_0_1^2*d_0_2^2*d_1_2^2")),
            ),
        ];
        Ok(VerificationReport { checks })
    }

    /// The four-factor triangle-area factorization of `-gamma(2)`, plus
    /// exact numeric spot checks.
    pub fn check_heron(&self) -> Result<VerificationReport, CmError> {
        let g2 = self.cache.gamma(2)?;
        let product = heron_product();
        let mut checks = vec![zero_record(
            "heron.symbolic",
            vec![],
            &(&product + &*g2),
        )];
        for (sides, expected) in [([3u32, 4, 5], 576i64), ([1, 1, 1], 3)] {
            let point = BTreeMap::from([
                (VarId::dist(0, 1), int_rat(sides[0].into())),
                (VarId::dist(0, 2), int_rat(sides[1].into())),
                (VarId::dist(1, 2), int_rat(sides[2].into())),
            ]);
            let lhs = -g2.evaluate(&point).expect("point covers gamma(2)");
            let rhs = product.evaluate(&point).expect("point covers product");
            let want = int_rat(expected);
            checks.push(value_record(
                "heron.eval",
                sides.to_vec(),
                lhs == want && rhs == want,
                || format!("-gamma(2) = {lhs}, product = {rhs}, expected {want}"),
            ));
        }
        Ok(VerificationReport { checks })
    }

    /// The four-factor factorization of delta(3) over the three diagonal
    /// products, plus exact evaluations at a concyclic and a non-concyclic
    /// configuration.
    pub fn check_ptolemy(&self) -> Result<VerificationReport, CmError> {
        let d3 = self.cache.delta(3)?;
        let product = ptolemy_product();
        let mut checks = vec![zero_record(
            "ptolemy.symbolic",
            vec![],
            &(&*d3 + &product),
        )];

        // unit square: sides 1, squared diagonals 2 -> concyclic, so zero
        let square = squares_map(&[1, 2, 1, 1, 2, 1]);
        let at_square = evaluate_at_squares(&d3, &square).expect("map covers delta(3)");
        checks.push(value_record("ptolemy.square", vec![], at_square.is_zero(), || {
            format!("delta(3) at the unit square = {at_square}, expected 0")
        }));

        // all six squared distances 1: determinant is -3, not zero
        let ones = squares_map(&[1, 1, 1, 1, 1, 1]);
        let at_ones = evaluate_at_squares(&d3, &ones).expect("map covers delta(3)");
        checks.push(value_record("ptolemy.unit", vec![], at_ones == int_rat(-3), || {
            format!("delta(3) at all-ones = {at_ones}, expected -3")
        }));
        Ok(VerificationReport { checks })
    }

    /// The base identity `lambda(n, n-1) = -2 gamma(n-1) t_n^2 - delta(n-1)`.
    pub fn check_lambda_base(&self, n: u32) -> Result<VerificationReport, CmError> {
        require(n >= 2, "check_lambda_base", "requires n >= 2", n)?;
        let lam = self.cache.lambda(n, n - 1)?;
        let g = self.cache.gamma(n - 1)?;
        let d = self.cache.delta(n - 1)?;
        let tn2 = Polynomial::variable(VarId::tau(n)).pow(2);
        let diff = &(&lam + &(&(&Polynomial::constant(2) * &*g) * &tn2)) + &*d;
        Ok(one_record(zero_record("base", vec![n], &diff)))
    }

    /// The collapse identity: substituting the apex distance into
    /// `delta(n-1)` leaves `t_{n-1}^4 * gamma(n-2)`.
    pub fn check_delta_collapse(&self, n: u32) -> Result<VerificationReport, CmError> {
        require(n >= 3, "check_delta_collapse", "requires n >= 3", n)?;
        let d_prev = self.cache.delta(n - 1)?;
        let g_prev2 = self.cache.gamma(n - 2)?;
        let tau = VarId::tau(n - 1);
        let map: BTreeMap<VarId, Polynomial> = (0..n - 1)
            .map(|i| (VarId::dist(i, n - 1), Polynomial::variable(tau)))
            .collect();
        let collapsed = d_prev.substitute(&map);
        let expected = &Polynomial::variable(tau).pow(4) * &*g_prev2;
        Ok(one_record(zero_record(
            "collapse",
            vec![n],
            &(&collapsed - &expected),
        )))
    }

    /// The two-step recurrence
    /// `lambda(n, p) = -2 lambda(n-1, p) t_n^2 - lambda(n-2, p) t_{n-1}^4`.
    pub fn check_recurrence(&self, n: u32, p: u32) -> Result<VerificationReport, CmError> {
        if p < 1 || n < p + 2 {
            return Err(CmError::InvalidDimension {
                what: "check_recurrence",
                detail: format!("requires 1 <= p and n >= p + 2, got n = {n}, p = {p}"),
            });
        }
        let lam_n = self.cache.lambda(n, p)?;
        let lam_n1 = self.cache.lambda(n - 1, p)?;
        let lam_n2 = self.cache.lambda(n - 2, p)?;
        let tn2 = Polynomial::variable(VarId::tau(n)).pow(2);
        let tn1_4 = Polynomial::variable(VarId::tau(n - 1)).pow(4);
        let diff = &(&lam_n + &(&(&Polynomial::constant(2) * &lam_n1) * &tn2)) + &(&lam_n2 * &tn1_4);
        Ok(one_record(zero_record("recurrence", vec![n, p], &diff)))
    }

    /// The homogenization identity: after setting `d_i_n = 1` for
    /// `1 <= i <= n-1`, `delta(n)` becomes the degree-4 homogenization of
    /// `gamma(n-1)` in the point-0 distance group, with `d_0_n` as the
    /// homogenization variable.
    pub fn check_homogenization(&self, n: u32) -> Result<VerificationReport, CmError> {
        require(n >= 2, "check_homogenization", "requires n >= 2", n)?;
        let d_n = self.cache.delta(n)?;
        let g_prev = self.cache.gamma(n - 1)?;
        let ones: BTreeMap<VarId, Polynomial> = (1..n)
            .map(|i| (VarId::dist(i, n), Polynomial::one()))
            .collect();
        let dprime = d_n.substitute(&ones);
        let group: std::collections::BTreeSet<VarId> =
            (1..n).map(|i| VarId::dist(0, i)).collect();
        let h = VarId::dist(0, n);
        let mut extended = group.clone();
        extended.insert(h);

        // the group degree of gamma(n-1) is 4 from n = 3 on; for n = 2 the
        // single-variable group of gamma(1) only reaches degree 2
        let expected_degree = if n >= 3 { 4 } else { 2 };
        let observed = g_prev.partial_degree(&group);
        if observed != Degree::Finite(expected_degree) {
            return Ok(one_record(CheckRecord {
                check_id: "homog".into(),
                parameters: vec![n],
                status: CheckStatus::Fail,
                witness: format!(
                    "partial degree of gamma({}) in the point-0 group is {observed}, expected {expected_degree}",
                    n - 1
                ),
            }));
        }
        let grouped = dprime.is_group_homogeneous(&extended);
        if grouped != (true, Some(4)) {
            return Ok(one_record(CheckRecord {
                check_id: "homog".into(),
                parameters: vec![n],
                status: CheckStatus::Fail,
                witness: format!(
                    "delta({n}) with d_i_{n} set to 1 is not group-homogeneous of degree 4: {grouped:?}"
                ),
            }));
        }
        let homogenized = g_prev
            .homogenize_group(&group, 4, h)
            .expect("target 4 is at least the group degree verified above");
        let forward = &homogenized - &dprime;
        if !forward.is_zero() {
            return Ok(one_record(zero_record("homog", vec![n], &forward)));
        }
        let back = dprime.substitute(&BTreeMap::from([(h, Polynomial::one())]));
        Ok(one_record(zero_record(
            "homog",
            vec![n],
            &(&back - &*g_prev),
        )))
    }

    /// Content parity: `gamma(n)` and `delta(n+1)` have content 1 for even
    /// `n` and 2 for odd `n`.
    pub fn check_content(&self, n: u32) -> Result<VerificationReport, CmError> {
        require(n >= 1, "check_content", "requires n >= 1", n)?;
        let expected = BigInt::from(if n.is_multiple_of(2) { 1 } else { 2 });
        let cg = self.cache.gamma(n)?.content();
        let cd = self.cache.delta(n + 1)?.content();
        let pass = cg == expected && cd == expected;
        Ok(one_record(value_record("content", vec![n], pass, || {
            format!(
                "content(gamma({n})) = {cg}, content(delta({})) = {cd}, expected {expected}",
                n + 1
            )
        })))
    }

    /// For odd `n`: the content of `x_det(n)` is even, and the determinant
    /// of the antisymmetric counterpart vanishes identically.
    pub fn check_mod2(&self, n: u32) -> Result<VerificationReport, CmError> {
        if n.is_multiple_of(2) {
            return Err(CmError::InvalidDimension {
                what: "check_mod2",
                detail: format!("the parity lemma concerns odd n, got n = {n}"),
            });
        }
        let content = self.cache.x_det(n)?.content();
        if !content.is_even() {
            return Ok(one_record(CheckRecord {
                check_id: "mod2".into(),
                parameters: vec![n],
                status: CheckStatus::Fail,
                witness: format!("content(det(X_{n})) = {content} is odd"),
            }));
        }
        let a_det = self.cache.a_det(n)?;
        Ok(one_record(zero_record("mod2", vec![n], &a_det)))
    }

    /// `d_0_1` divides `lambda(n, 1)`: the substitution `d_0_1 -> 0`
    /// annihilates it and the exact division succeeds.
    pub fn check_lambda_p1(&self, n: u32) -> Result<VerificationReport, CmError> {
        require(n >= 2, "check_lambda_p1", "requires n >= 2", n)?;
        let lam = self.cache.lambda(n, 1)?;
        let at_zero = lam.substitute(&BTreeMap::from([(
            VarId::dist(0, 1),
            Polynomial::zero(),
        )]));
        if !at_zero.is_zero() {
            return Ok(one_record(zero_record("p1", vec![n], &at_zero)));
        }
        let division = lam.exact_divide(&Polynomial::variable(VarId::dist(0, 1)));
        Ok(one_record(match division {
            Ok(_) => CheckRecord {
                check_id: "p1".into(),
                parameters: vec![n],
                status: CheckStatus::Pass,
                witness: String::new(),
            },
            Err(PolyError::NotDivisible { remainder }) => CheckRecord {
                check_id: "p1".into(),
                parameters: vec![n],
                status: CheckStatus::Fail,
                witness: remainder.canonical_string(),
            },
            Err(other) => panic!("unexpected division error: {other}"),
        }))
    }

    /// Every check at every valid parameter tuple up to `max_n`, in
    /// deterministic order.
    pub fn run_suite(&self, max_n: u32) -> Result<VerificationReport, CmError> {
        self.run_selected(max_n, &SuiteId::ALL)
    }

    /// A subset of the suites, reported in canonical order regardless of the
    /// order requested.
    pub fn run_selected(
        &self,
        max_n: u32,
        suites: &[SuiteId],
    ) -> Result<VerificationReport, CmError> {
        require(max_n >= 1, "run_suite", "requires max_n >= 1", max_n)?;
        if max_n > self.cache.cap() {
            return Err(CmError::CapExceeded {
                what: "run_suite",
                n: max_n,
                order: max_n + 2,
                cap: self.cache.cap(),
                max_order: self.cache.cap() + 2,
            });
        }
        let mut report = VerificationReport::default();
        for suite in SuiteId::ALL {
            if !suites.contains(&suite) {
                continue;
            }
            match suite {
                SuiteId::Closed => report.extend(self.check_closed_forms()?),
                SuiteId::Heron => {
                    if max_n >= 2 {
                        report.extend(self.check_heron()?);
                    }
                }
                SuiteId::Ptolemy => {
                    if max_n >= 3 {
                        report.extend(self.check_ptolemy()?);
                    }
                }
                SuiteId::Base => {
                    for n in 2..=max_n {
                        report.extend(self.check_lambda_base(n)?);
                    }
                }
                SuiteId::Collapse => {
                    for n in 3..=max_n {
                        report.extend(self.check_delta_collapse(n)?);
                    }
                }
                SuiteId::Recurrence => {
                    for n in 3..=max_n {
                        for p in 1..=n - 2 {
                            report.extend(self.check_recurrence(n, p)?);
                        }
                    }
                }
                SuiteId::Homog => {
                    for n in 2..=max_n {
                        report.extend(self.check_homogenization(n)?);
                    }
                }
                SuiteId::Content => {
                    for n in 1..=max_n {
                        report.extend(self.check_content(n)?);
                    }
                }
                SuiteId::Mod2 => {
                    for n in (1..=max_n + 2).filter(|k| k % 2 == 1) {
                        report.extend(self.check_mod2(n)?);
                    }
                }
                SuiteId::P1 => {
                    for n in 2..=max_n {
                        report.extend(self.check_lambda_p1(n)?);
                    }
                }
            }
        }
        Ok(report)
    }
}

fn require(cond: bool, what: &'static str, requirement: &str, n: u32) -> Result<(), CmError> {
    if cond {
        Ok(())
    } else {
        Err(CmError::InvalidDimension {
            what,
            detail: format!("{requirement}, got n = {n}"),
        })
    }
}

fn one_record(record: CheckRecord) -> VerificationReport {
    VerificationReport {
        checks: vec![record],
    }
}

fn zero_record(check_id: &str, parameters: Vec<u32>, difference: &Polynomial) -> CheckRecord {
    let pass = difference.is_zero();
    CheckRecord {
        check_id: check_id.to_owned(),
        parameters,
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        witness: if pass {
            String::new()
        } else {
            difference.canonical_string()
        },
    }
}

fn value_record<F: FnOnce() -> String>(
    check_id: &str,
    parameters: Vec<u32>,
    pass: bool,
    witness: F,
) -> CheckRecord {
    CheckRecord {
        check_id: check_id.to_owned(),
        parameters,
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        witness: if pass { String::new() } else { witness() },
    }
}

fn known(text: &str) -> Polynomial {
    Polynomial::parse(text).expect("valid closed form")
}

fn int_rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(a+b+c)(-a+b+c)(a-b+c)(a+b-c)` over the three triangle edges.
pub fn heron_product() -> Polynomial {
    let a = Polynomial::variable(VarId::dist(0, 1));
    let b = Polynomial::variable(VarId::dist(0, 2));
    let c = Polynomial::variable(VarId::dist(1, 2));
    let f1 = &(&a + &b) + &c;
    let f2 = &(&b - &a) + &c;
    let f3 = &(&a - &b) + &c;
    let f4 = &(&a + &b) - &c;
    &(&f1 * &f2) * &(&f3 * &f4)
}

/// The quadrilateral factorization product
/// `(u+v+w)(u+v-w)(u-v+w)(-u+v+w)` with `u = d01*d23`, `v = d02*d13`,
/// `w = d03*d12`.
pub fn ptolemy_product() -> Polynomial {
    let u = &Polynomial::variable(VarId::dist(0, 1)) * &Polynomial::variable(VarId::dist(2, 3));
    let v = &Polynomial::variable(VarId::dist(0, 2)) * &Polynomial::variable(VarId::dist(1, 3));
    let w = &Polynomial::variable(VarId::dist(0, 3)) * &Polynomial::variable(VarId::dist(1, 2));
    let f1 = &(&u + &v) + &w;
    let f2 = &(&u + &v) - &w;
    let f3 = &(&u - &v) + &w;
    let f4 = &(&v - &u) + &w;
    &(&f1 * &f2) * &(&f3 * &f4)
}

/// Squared-distance map for the four-point variables in the fixed order
/// `d01, d02, d03, d12, d13, d23`.
fn squares_map(squares: &[i64; 6]) -> BTreeMap<VarId, Rational> {
    let vars = [
        VarId::dist(0, 1),
        VarId::dist(0, 2),
        VarId::dist(0, 3),
        VarId::dist(1, 2),
        VarId::dist(1, 3),
        VarId::dist(2, 3),
    ];
    vars.into_iter()
        .zip(squares.iter().map(|&s| int_rat(s)))
        .collect()
}

/// Evaluates a polynomial whose variables all occur with even exponents,
/// given the values of the squared variables. This is how determinant
/// polynomials are evaluated at configurations whose distances are
/// irrational while their squares are rational.
fn evaluate_at_squares(
    p: &Polynomial,
    squares: &BTreeMap<VarId, Rational>,
) -> Result<Rational, PolyError> {
    let mut total = Rational::zero();
    for (mono, coeff) in p.terms() {
        let mut value = Rational::from_integer(coeff.clone());
        for (v, e) in mono.exponents() {
            assert!(e % 2 == 0, "variable {v} occurs with odd exponent {e}");
            let sq = squares.get(&v).ok_or(PolyError::MissingVariable(v))?;
            value *= rational_pow(sq, e / 2);
        }
        total += value;
    }
    Ok(total)
}
