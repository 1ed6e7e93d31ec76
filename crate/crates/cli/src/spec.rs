use entrolab::pinsker::DEFAULT_PROBE_BUDGET;
use entrolab::report::BigNum;
use entrolab::trajectory::{DEFAULT_MAX_N, DEFAULT_SET_BUDGET};
use entrolab::{ElementSet, Endo, Group, IntMatrix, ShiftGroup, DEFAULT_EPSILON};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;

use crate::fail::Failure;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    pub group: GroupSpec,
    pub endomorphism: EndoSpec,
    #[serde(default)]
    pub finite_set: Option<Vec<Vec<BigNum>>>,
    #[serde(default)]
    pub options: OptionsSpec,
}

// Both shapes share one struct so unknown keys still get a precise message.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    rank: Option<BigNum>,
    relations: Option<Vec<Vec<BigNum>>>,
    shift_base: Option<BigNum>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum EndoSpec {
    Matrix(Vec<Vec<BigNum>>),
    Named(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    epsilon: Option<f64>,
    tau_max_n: Option<BigNum>,
    set_budget: Option<BigNum>,
    probe_budget: Option<BigNum>,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub epsilon: f64,
    pub max_n: usize,
    pub set_budget: usize,
    pub probe_budget: usize,
}

pub enum Flow {
    Presented { phi: Endo, f: Option<ElementSet> },
    Shift { shift: ShiftGroup, q: BigInt, f: Option<ElementSet> },
}

/// Command-line and environment overrides, already parsed.
#[derive(Debug, Default, Clone, Copy)]
pub struct Overrides {
    pub epsilon: Option<f64>,
    pub max_n: Option<usize>,
    pub budget: Option<usize>,
}

pub fn parse(text: &str) -> Result<FlowSpec, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::invalid(format!("malformed flow spec: {e}")))
}

fn positive(name: &str, v: &Option<BigNum>, default: usize) -> Result<usize, Failure> {
    match v {
        None => Ok(default),
        Some(BigNum(b)) => match b.to_usize() {
            Some(x) if x > 0 => Ok(x),
            _ => Err(Failure::invalid(format!("options.{name} must be a positive integer, got {b}"))),
        },
    }
}

pub fn check_epsilon(eps: f64) -> Result<f64, Failure> {
    if eps.is_finite() && eps > 0.0 && eps < 1.0 {
        Ok(eps)
    } else {
        Err(Failure::invalid(format!("epsilon must lie in (0, 1), got {eps}")))
    }
}

impl FlowSpec {
    pub fn options(&self, ov: &Overrides) -> Result<Options, Failure> {
        let o = &self.options;
        let epsilon = check_epsilon(ov.epsilon.or(o.epsilon).unwrap_or(DEFAULT_EPSILON))?;
        let max_n = match ov.max_n {
            Some(0) => return Err(Failure::invalid("--max-n must be at least 1")),
            Some(n) => n,
            None => positive("tau_max_n", &o.tau_max_n, DEFAULT_MAX_N)?,
        };
        let set_budget = match ov.budget {
            Some(b) => b,
            None => positive("set_budget", &o.set_budget, DEFAULT_SET_BUDGET)?,
        };
        let probe_budget = positive("probe_budget", &o.probe_budget, DEFAULT_PROBE_BUDGET)?;
        Ok(Options { epsilon, max_n, set_budget, probe_budget })
    }

    pub fn build(&self) -> Result<Flow, Failure> {
        let g = &self.group;
        match (&g.shift_base, &g.rank) {
            (Some(_), Some(_)) => Err(Failure::invalid("group takes either rank/relations or shift_base, not both")),
            (None, None) => Err(Failure::invalid("group needs rank or shift_base")),
            (Some(BigNum(q)), None) => {
                if g.relations.is_some() {
                    return Err(Failure::invalid("relations are not allowed with shift_base"));
                }
                let qq = q
                    .to_u64()
                    .filter(|&v| v >= 2)
                    .ok_or_else(|| Failure::invalid(format!("shift_base must be an integer >= 2, got {q}")))?;
                match &self.endomorphism {
                    EndoSpec::Named(s) if s == "bernoulli" => {}
                    _ => return Err(Failure::invalid("a shift group only carries the \"bernoulli\" endomorphism")),
                }
                let shift = ShiftGroup::cyclic(qq).map_err(Failure::core)?;
                let f = self.finite_set.as_ref().map(|items| {
                    let v: Vec<Vec<BigInt>> = items.iter().map(|x| x.iter().map(|c| c.0.clone()).collect()).collect();
                    shift.set(&v)
                });
                Ok(Flow::Shift { shift, q: q.clone(), f })
            }
            (None, Some(BigNum(r))) => {
                let n = r.to_usize().ok_or_else(|| Failure::invalid(format!("rank must be a non-negative integer, got {r}")))?;
                let group = presented_group(n, g.relations.as_deref().unwrap_or(&[]))?;
                let rows = match &self.endomorphism {
                    EndoSpec::Matrix(rows) => rows,
                    EndoSpec::Named(s) => {
                        return Err(Failure::invalid(format!("endomorphism {s:?} needs a shift group; give an integer matrix")))
                    }
                };
                let m = square(rows, n)?;
                let phi = Endo::new(&group, m).map_err(Failure::core)?;
                let f = match &self.finite_set {
                    None => None,
                    Some(items) => {
                        let mut elems = Vec::with_capacity(items.len());
                        for x in items {
                            if x.len() != n {
                                return Err(Failure::invalid(format!(
                                    "finite_set vector has {} coordinates, group rank is {n}",
                                    x.len()
                                )));
                            }
                            elems.push(group.element(x.iter().map(|c| c.0.clone()).collect()).map_err(Failure::core)?);
                        }
                        Some(ElementSet::from_elements(&elems))
                    }
                };
                Ok(Flow::Presented { phi, f })
            }
        }
    }
}

/// Relations are the columns of an `n`-row matrix; `[]` means none.
fn presented_group(n: usize, rows: &[Vec<BigNum>]) -> Result<Group, Failure> {
    if rows.is_empty() {
        return Ok(Group::free(n));
    }
    if rows.len() != n {
        return Err(Failure::invalid(format!("relations must have {n} rows (one per generator), got {}", rows.len())));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Failure::invalid("relations rows have different lengths"));
    }
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect();
    let m = IntMatrix::from_big_rows(big, cols).map_err(Failure::core)?;
    Group::from_presentation(n, m).map_err(Failure::core)
}

fn square(rows: &[Vec<BigNum>], n: usize) -> Result<IntMatrix, Failure> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Failure::invalid(format!("endomorphism must be a {n}x{n} integer matrix")));
    }
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect();
    IntMatrix::from_big_rows(big, n).map_err(Failure::core)
}

pub fn env_budget(raw: Option<String>) -> Result<Option<usize>, Failure> {
    let Some(s) = raw else { return Ok(None) };
    let t = s.trim();
    let parsed = t.parse::<usize>().ok().or_else(|| {
        // accept 2e6 style values as long as they are integral
        t.parse::<f64>().ok().filter(|v| v.is_finite() && v.fract() == 0.0 && *v >= 1.0 && *v < 1e18).map(|v| v as usize)
    });
    match parsed {
        Some(b) if b > 0 => Ok(Some(b)),
        _ => Err(Failure::invalid(format!("ENTROLAB_BUDGET must be a positive integer, got {s:?}"))),
    }
}
