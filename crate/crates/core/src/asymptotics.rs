//! Regularity of powers: sequences `reg (I^t)^sat`, detection of the
//! eventual form `d t + e`, the upper bracket on the s-invariant and the
//! closed-form regularity bounds.

use std::fmt::Write as _;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideals::Ideal;

/// Outcome of one power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    TimedOut,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegRow {
    pub t: u32,
    /// `reg (I^t)^sat`, when computed.
    pub reg: Option<i64>,
    pub status: RowStatus,
}

/// Regularity of the saturation of `I^t`.
pub fn sheaf_regularity_of_power<F: Field>(ideal: &Ideal<F>, t: u32) -> Result<i64> {
    ideal.power(t)?.saturate()?.regularity()
}

/// `reg (I^t)^sat` for `t = 1..=max_t`.
pub fn regularity_sequence<F: Field>(ideal: &Ideal<F>, max_t: u32) -> Result<Vec<RegRow>> {
    if max_t < 1 {
        return Err(Error::OutOfRange(format!("max power {max_t}")));
    }
    Ok((1..=max_t)
        .map(|t| match sheaf_regularity_of_power(ideal, t) {
            Ok(r) => RegRow {
                t,
                reg: Some(r),
                status: RowStatus::Ok,
            },
            Err(e) => RegRow {
                t,
                reg: None,
                status: RowStatus::Failed(e.to_string()),
            },
        })
        .collect())
}

/// Like [`regularity_sequence`], but stops waiting once `budget` has
/// elapsed; the remaining rows are marked as timed out.
pub fn regularity_sequence_with_budget<F: Field>(ideal: &Ideal<F>, max_t: u32, budget: Duration) -> Result<Vec<RegRow>> {
    if max_t < 1 {
        return Err(Error::OutOfRange(format!("max power {max_t}")));
    }
    let (tx, rx) = mpsc::channel();
    let work = ideal.clone();
    thread::spawn(move || {
        for t in 1..=max_t {
            let r = sheaf_regularity_of_power(&work, t);
            if tx.send((t, r)).is_err() {
                return;
            }
        }
    });
    let deadline = Instant::now() + budget;
    let mut rows = Vec::new();
    for t in 1..=max_t {
        let left = deadline.saturating_duration_since(Instant::now());
        match rx.recv_timeout(left) {
            Ok((_, Ok(r))) => rows.push(RegRow {
                t,
                reg: Some(r),
                status: RowStatus::Ok,
            }),
            Ok((_, Err(e))) => rows.push(RegRow {
                t,
                reg: None,
                status: RowStatus::Failed(e.to_string()),
            }),
            Err(_) => {
                rows.extend((t..=max_t).map(|t| RegRow {
                    t,
                    reg: None,
                    status: RowStatus::TimedOut,
                }));
                break;
            }
        }
    }
    Ok(rows)
}

/// Result of looking for `reg = d t + e` in finite data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum Stabilization {
    /// The last `window` values of `e_t` agree; `from_t` is the first `t`
    /// of the final constant run and `tentative_at` the last computed `t`.
    Stabilized { e: i64, from_t: u32, tentative_at: u32 },
    NotStabilized,
}

/// `e_t = reg - d t` for each computed row.
pub fn excess(rows: &[(u32, i64)], d: i64) -> Vec<(u32, i64)> {
    rows.iter().map(|&(t, r)| (t, r - d * t as i64)).collect()
}

/// Declares `e` stabilized when the last `window` values of `e_t` agree.
pub fn fit_linear(rows: &[(u32, i64)], d: i64, window: usize) -> Result<Stabilization> {
    if rows.len() < 2 {
        return Err(Error::InvalidArgument("need at least two rows".into()));
    }
    if rows.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::InvalidArgument("rows must be increasing in t".into()));
    }
    let window = window.max(1);
    let e = excess(rows, d);
    if e.len() < window {
        return Ok(Stabilization::NotStabilized);
    }
    let last = e.last().unwrap().1;
    if e[e.len() - window..].iter().any(|x| x.1 != last) {
        return Ok(Stabilization::NotStabilized);
    }
    let run = e.iter().rev().take_while(|x| x.1 == last).count();
    Ok(Stabilization::Stabilized {
        e: last,
        from_t: e[e.len() - run].0,
        tentative_at: e.last().unwrap().0,
    })
}

/// `s <= min_t reg_t / t`, compared with the trivial bound `s <= d`.
///
/// When `s` is known from geometry (a value supplied by the caller, not
/// computed) it can be pinned; `upper` then holds the pinned value and
/// `empirical` keeps the measured one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SBracket {
    pub upper: Ratio<i64>,
    pub empirical: Ratio<i64>,
    pub witness_t: u32,
    pub trivial_upper: i64,
    pub pinned: Option<i64>,
}

impl SBracket {
    pub fn equals_d(&self) -> bool {
        self.upper == Ratio::from_integer(self.trivial_upper)
    }

    /// Records a known value of `s`. It must not exceed any `reg_t / t`.
    pub fn pin(&mut self, s: i64) -> Result<()> {
        let v = Ratio::from_integer(s);
        if v > self.empirical {
            return Err(Error::InvalidArgument(format!(
                "s = {s} contradicts reg I^t / t = {} at t = {}",
                self.empirical, self.witness_t
            )));
        }
        self.pinned = Some(s);
        self.upper = v;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "upper": self.upper.to_string(),
            "empirical_upper": self.empirical.to_string(),
            "witness_t": self.witness_t,
            "trivial_upper": self.trivial_upper,
            "pinned": self.pinned,
            "upper_equals_d": self.equals_d(),
        })
    }
}

pub fn s_bracket(rows: &[(u32, i64)], d: i64) -> Result<SBracket> {
    let mut best: Option<(Ratio<i64>, u32)> = None;
    for &(t, r) in rows {
        if t == 0 {
            return Err(Error::OutOfRange("t = 0".into()));
        }
        let q = Ratio::new(r, t as i64);
        if best.as_ref().is_none_or(|b| q < b.0) {
            best = Some((q, t));
        }
    }
    let (upper, witness_t) = best.ok_or_else(|| Error::InvalidArgument("no rows".into()))?;
    Ok(SBracket {
        upper,
        empirical: upper,
        witness_t,
        trivial_upper: d,
        pinned: None,
    })
}

/// Regularity bound for powers of the ideal of a local complete
/// intersection of dimension `n` whose ideal sheaf is `r`-regular.
pub fn bound_lci(n: u32, r: i64, t: u32) -> Result<i64> {
    if r < 2 {
        return Err(Error::OutOfRange(format!("r = {r} (need r >= 2)")));
    }
    if n < 1 || t < 1 {
        return Err(Error::OutOfRange("n and t must be positive".into()));
    }
    let of = || Error::Overflow("lci bound");
    let rt = r.checked_mul(t as i64).ok_or_else(of)?;
    let extra = match n {
        1 => 0,
        2 => r - 2,
        _ => {
            let n = n as i64;
            r.max((n - 1).checked_mul(r).ok_or_else(of)? - n)
        }
    };
    rt.checked_add(extra).ok_or_else(of)
}

/// Regularity bound `2t + 2n - 2` (`2t + 1` for curves) for adjoint-type
/// embeddings of an `n`-dimensional variety.
pub fn bound_adjoint(n: u32, t: u32) -> Result<i64> {
    if n < 1 || t < 1 {
        return Err(Error::OutOfRange("n and t must be positive".into()));
    }
    let (n, t) = (n as i64, t as i64);
    Ok(if n == 1 { 2 * t + 1 } else { 2 * t + 2 * n - 2 })
}

/// Which closed-form bound to check against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Hypothesis {
    Lci { n: u32, r: i64 },
    Adjoint { n: u32 },
}

impl Hypothesis {
    pub fn bound(&self, t: u32) -> Result<i64> {
        match *self {
            Hypothesis::Lci { n, r } => bound_lci(n, r, t),
            Hypothesis::Adjoint { n } => bound_adjoint(n, t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub t: u32,
    pub reg: Option<i64>,
    pub bound: i64,
    /// None when the regularity was not computed.
    pub pass: Option<bool>,
    pub sharp: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub hypothesis: Hypothesis,
    pub rows: Vec<BoundRow>,
    /// Every computed row satisfies `reg <= bound`.
    pub pass: bool,
}

pub fn check_bounds(rows: &[RegRow], hypothesis: Hypothesis) -> Result<BoundReport> {
    let rows = rows
        .iter()
        .map(|r| {
            let bound = hypothesis.bound(r.t)?;
            Ok(BoundRow {
                t: r.t,
                reg: r.reg,
                bound,
                pass: r.reg.map(|x| x <= bound),
                sharp: r.reg.map(|x| x == bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|r| r.pass != Some(false));
    Ok(BoundReport { hypothesis, rows, pass })
}

/// Computes the regularity sequence up to `max_t` and checks it against
/// the bound.
pub fn verify_bounds<F: Field>(ideal: &Ideal<F>, hypothesis: Hypothesis, max_t: u32) -> Result<BoundReport> {
    check_bounds(&regularity_sequence(ideal, max_t)?, hypothesis)
}

/// Everything known about `reg (I^t)^sat` from finitely many powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub ideal: String,
    pub d: i64,
    pub rows: Vec<RegRow>,
    pub stabilization: Stabilization,
    pub s: Option<SBracket>,
}

impl AsymptoticReport {
    /// Builds the report from computed rows; `window` is the number of
    /// equal trailing `e_t` required.
    pub fn new(ideal: impl Into<String>, d: i64, rows: Vec<RegRow>, window: usize) -> Result<Self> {
        let done = Self::computed(&rows);
        let stabilization = if done.len() >= 2 {
            fit_linear(&done, d, window)?
        } else {
            Stabilization::NotStabilized
        };
        let s = if done.is_empty() { None } else { Some(s_bracket(&done, d)?) };
        Ok(AsymptoticReport {
            ideal: ideal.into(),
            d,
            rows,
            stabilization,
            s,
        })
    }

    /// Runs the whole pipeline on `ideal`.
    pub fn compute<F: Field>(name: &str, ideal: &Ideal<F>, max_t: u32, window: usize, budget: Option<Duration>) -> Result<Self> {
        let d = ideal.d_invariant()? as i64;
        let rows = match budget {
            Some(b) => regularity_sequence_with_budget(ideal, max_t, b)?,
            None => regularity_sequence(ideal, max_t)?,
        };
        Self::new(name, d, rows, window)
    }

    /// Pins `s` to a value known by other means.
    pub fn pin_s(&mut self, s: i64) -> Result<()> {
        match self.s.as_mut() {
            Some(b) => b.pin(s),
            None => Err(Error::InvalidArgument("no computed rows to compare with".into())),
        }
    }

    fn computed(rows: &[RegRow]) -> Vec<(u32, i64)> {
        rows.iter().filter_map(|r| r.reg.map(|x| (r.t, x))).collect()
    }

    /// `(t, reg, e_t)` for the computed rows.
    pub fn excess(&self) -> Vec<(u32, i64, i64)> {
        Self::computed(&self.rows)
            .into_iter()
            .map(|(t, r)| (t, r, r - self.d * t as i64))
            .collect()
    }

    pub fn all_excess_nonnegative(&self) -> bool {
        self.excess().iter().all(|e| e.2 >= 0)
    }

    pub fn timed_out(&self) -> bool {
        self.rows.iter().any(|r| r.status == RowStatus::TimedOut)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "t": r.t,
                    "reg": r.reg,
                    "e_t": r.reg.map(|x| x - self.d * r.t as i64),
                    "status": r.status,
                })
            })
            .collect();
        json!({
            "ideal": self.ideal,
            "d": self.d,
            "rows": rows,
            "e": self.stabilization,
            "s": self.s.as_ref().map(|s| s.to_json()),
            "all_e_t_nonnegative": self.all_excess_nonnegative(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}  d = {}\n{:>4} {:>6} {:>6}  status\n", self.ideal, self.d, "t", "reg", "e_t");
        for r in &self.rows {
            let reg = r.reg.map_or("-".to_string(), |x| x.to_string());
            let e = r.reg.map_or("-".to_string(), |x| (x - self.d * r.t as i64).to_string());
            let status = match &r.status {
                RowStatus::Ok => "ok".to_string(),
                RowStatus::TimedOut => "timed out".to_string(),
                RowStatus::Failed(m) => format!("failed: {m}"),
            };
            let _ = writeln!(s, "{:>4} {reg:>6} {e:>6}  {status}", r.t);
        }
        match &self.stabilization {
            Stabilization::Stabilized { e, from_t, tentative_at } => {
                let _ = writeln!(s, "e = {e} from t = {from_t} (tentative at t = {tentative_at})");
            }
            Stabilization::NotStabilized => s.push_str("e not stabilized\n"),
        }
        if let Some(b) = &self.s {
            let _ = write!(s, "s <= {} (witness t = {})", b.empirical, b.witness_t);
            if let Some(p) = b.pinned {
                let _ = write!(s, ", s = {p} known");
            }
            let _ = writeln!(
                s,
                ", d = {}{}",
                b.trivial_upper,
                match (b.equals_d(), b.pinned) {
                    (true, Some(_)) => ", s = d",
                    (true, None) => ", consistent with s = d",
                    _ => "",
                }
            );
        }
        s
    }

    /// `t,reg,e_t,bound,pass` rows; the bound columns are empty without a
    /// hypothesis.
    pub fn to_csv(&self, bounds: Option<&BoundReport>) -> String {
        let mut s = String::from("t,reg,e_t,bound,pass\n");
        for r in &self.rows {
            let reg = r.reg.map_or(String::new(), |x| x.to_string());
            let e = r.reg.map_or(String::new(), |x| (x - self.d * r.t as i64).to_string());
            let b = bounds.and_then(|b| b.rows.iter().find(|x| x.t == r.t));
            let bound = b.map_or(String::new(), |b| b.bound.to_string());
            let pass = b.and_then(|b| b.pass).map_or(String::new(), |p| p.to_string());
            let _ = writeln!(s, "{},{reg},{e},{bound},{pass}", r.t);
        }
        s
    }
}
