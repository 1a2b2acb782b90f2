//! Command front end shared by the `gasymp` binary and the tests.

pub mod parse;
pub mod plot;
pub mod report;

use num_traits::ToPrimitive;

use crate::asymptote::{asymptote_param, AsymptoteParam};
use crate::branches::{converge, infinity_branches, BranchOptions, ChangeOfCoords, InfinityBranch, SpaceCurve};
use crate::error::{Error, Result};
use crate::field::{int, Rational};
use crate::parametric::{param_asymptotes, param_asymptotes_prepared, ParamOptions, ParametricSpaceCurve, PreparedParametric};
use crate::poly::Var;

pub use parse::{parse_asymptote, parse_input, CurveInput, CurveKind};
pub use plot::{emit_plot_samples, SampleTable};
pub use report::{from_json, to_json, to_text, ErrorDto, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Branches,
    Asymptotes,
    ParamAsymptotes,
    Converge,
    Approach,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Branches => "branches",
            Command::Asymptotes => "asymptotes",
            Command::ParamAsymptotes => "param-asymptotes",
            Command::Converge => "converge",
            Command::Approach => "approach",
        }
    }
}

/// Knobs shared by all commands.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub order: Option<Rational>,
    pub terms: Option<usize>,
    pub seed: Option<(i64, i64)>,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Inputs {
    Curve(CurveInput),
    Branches(InfinityBranch, InfinityBranch),
    Approach(CurveInput, AsymptoteParam),
}

pub fn implicit_curve(c: &CurveInput) -> Result<SpaceCurve> {
    if c.kind != CurveKind::Implicit {
        return Err(Error::InvalidArgument("an implicit curve (f1, f2) is required".into()));
    }
    SpaceCurve::new(c.equations[0].0.clone(), c.equations[1].0.clone())
}

pub fn parametric_curve(c: &CurveInput) -> Result<ParametricSpaceCurve> {
    if c.kind != CurveKind::Parametric {
        return Err(Error::InvalidArgument("a parametric curve (p1, p2, p3) is required".into()));
    }
    let up = |p: &crate::poly::MultiPoly| p.to_upoly(Var::S).expect("parser only admits s");
    let parts = [0, 1, 2].map(|i| (up(&c.equations[i].0), up(&c.equations[i].1)));
    ParametricSpaceCurve::from_components(parts)
}

fn branch_options(o: &RunOptions) -> BranchOptions {
    BranchOptions { order: o.order.clone().unwrap_or_else(|| int(2)), min_terms: o.terms, seed: o.seed }
}

fn param_options(o: &RunOptions) -> ParamOptions {
    ParamOptions { order: o.order.clone().unwrap_or_else(|| int(1)), terms: o.terms, seed: o.seed }
}

/// Branches, asymptotes and the transform for either kind of curve.
fn analyse(c: &CurveInput, o: &RunOptions) -> Result<(ChangeOfCoords, Vec<InfinityBranch>, Vec<AsymptoteParam>)> {
    match c.kind {
        CurveKind::Implicit => {
            let cb = infinity_branches(&implicit_curve(c)?, &branch_options(o))?;
            let asy = cb.branches.iter().map(asymptote_param).collect::<Result<Vec<_>>>()?;
            Ok((cb.prepared.transform, cb.branches, asy))
        }
        CurveKind::Parametric => {
            let r = param_asymptotes(&parametric_curve(c)?, &param_options(o))?;
            Ok((r.prepared.transform, r.branches, r.asymptotes))
        }
    }
}

fn curve_dto(c: &CurveInput) -> report::CurveDto {
    report::CurveDto {
        kind: match c.kind {
            CurveKind::Implicit => "implicit".into(),
            CurveKind::Parametric => "parametric".into(),
        },
        equations: c.sources.iter().map(|(l, s)| report::EquationDto { label: l.clone(), source: s.clone() }).collect(),
    }
}

fn shear_of(t: &ChangeOfCoords) -> Result<(i64, i64)> {
    let get = |x: &Rational| x.to_integer().to_i64().ok_or_else(|| Error::InvalidArgument("non-integer shear".into()));
    Ok((get(&t.matrix[0][1])?, get(&t.matrix[0][2])?))
}

/// Branches of the asymptote's own curve, in the coordinates given by `t`.
fn asymptote_branches(a: &AsymptoteParam, t: &ChangeOfCoords) -> Result<Vec<InfinityBranch>> {
    if t.is_identity() {
        return Ok(vec![a.to_branch()?]);
    }
    let (l, m) = shear_of(t)?;
    let one = crate::field::UPoly::constant(crate::field::FieldElement::one());
    let p = ParametricSpaceCurve::from_components([(a.q1(), one.clone()), (a.q2.clone(), one.clone()), (a.q3.clone(), one)])?;
    let prepared = PreparedParametric::with_shear(&p, l, m)?;
    Ok(param_asymptotes_prepared(prepared, &ParamOptions::default())?.branches)
}

/// Runs one command and builds its report.
pub fn run_command(cmd: Command, inputs: &Inputs, o: &RunOptions) -> Result<Report> {
    let mut r = Report {
        command: cmd.name().to_string(),
        curve: None,
        preparation_transform: None,
        branches: vec![],
        asymptotes: vec![],
        extension: None,
        convergence: None,
        approach: vec![],
    };
    match (cmd, inputs) {
        (Command::Branches | Command::Asymptotes | Command::ParamAsymptotes, Inputs::Curve(c)) => {
            match (cmd, &c.kind) {
                (Command::Asymptotes, CurveKind::Parametric) => {
                    return Err(Error::InvalidArgument("use param-asymptotes for parametric input".into()))
                }
                (Command::ParamAsymptotes, CurveKind::Implicit) => return Err(Error::InvalidArgument("use asymptotes for implicit input".into())),
                _ => {}
            }
            let (t, bs, asy) = analyse(c, o)?;
            let asy = if cmd == Command::Branches { vec![] } else { asy };
            r.curve = Some(curve_dto(c));
            r.preparation_transform = Some(report::transform_dto(&t));
            r.extension = report::shared_extension(&bs, &asy);
            r.branches = bs.iter().map(report::branch_dto).collect();
            r.asymptotes = asy.iter().map(report::asymptote_dto).collect();
        }
        (Command::Converge, Inputs::Branches(b1, b2)) => {
            let c = converge(b1, b2)?;
            r.extension = report::shared_extension(&[b1.clone(), b2.clone()], &[]);
            r.branches = vec![report::branch_dto(b1), report::branch_dto(b2)];
            r.convergence = Some(report::convergence_dto(&c));
        }
        (Command::Approach, Inputs::Approach(c, a)) => {
            let (t, bs, _) = analyse(c, o)?;
            let abs = asymptote_branches(a, &t)?;
            r.curve = Some(curve_dto(c));
            r.preparation_transform = Some(report::transform_dto(&t));
            for (k, b) in bs.iter().enumerate() {
                let mut verdict = report::ApproachDto { branch: k, approaches: false, reason: String::new() };
                for ab in &abs {
                    let v = converge(b, ab)?;
                    verdict.reason = v.reason;
                    if v.converges {
                        verdict.approaches = true;
                        break;
                    }
                }
                r.approach.push(verdict);
            }
            r.extension = report::shared_extension(&bs, std::slice::from_ref(a));
            r.branches = bs.iter().map(report::branch_dto).collect();
            r.asymptotes = vec![report::asymptote_dto(a)];
        }
        _ => return Err(Error::InvalidArgument(format!("wrong inputs for {}", cmd.name()))),
    }
    Ok(r)
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Branch `index` of a JSON report or of a curve input file.
pub fn load_branch(text: &str, index: usize, o: &RunOptions) -> Result<InfinityBranch> {
    let pick = |n: usize| if index < n { Ok(index) } else { Err(Error::InvalidArgument(format!("no branch {} (have {n})", index + 1))) };
    if is_json(text) {
        let rep = from_json(text)?;
        let k = pick(rep.branches.len())?;
        return report::branch_from_dto(&rep.branches[k]);
    }
    let (_, bs, _) = analyse(&parse_input(text)?, o)?;
    let k = pick(bs.len())?;
    Ok(bs[k].clone())
}

/// Asymptote `index` of a JSON report, or a `q1/q2/q3` file.
pub fn load_asymptote(text: &str, index: usize) -> Result<AsymptoteParam> {
    if is_json(text) {
        let rep = from_json(text)?;
        let d =
            rep.asymptotes.get(index).ok_or_else(|| Error::InvalidArgument(format!("no asymptote {} (have {})", index + 1, rep.asymptotes.len())))?;
        return report::asymptote_from_dto(d);
    }
    parse_asymptote(text)
}

/// `a:b` to a range.
pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::InvalidArgument(format!("range '{s}' is not a:b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a >= b || a.is_nan() || b.is_nan() {
        return Err(bad());
    }
    Ok((a, b))
}

/// `λ,μ` to a shear seed.
pub fn parse_seed(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidArgument(format!("seed '{s}' is not λ,μ"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Samples for a report's branches and asymptotes.
pub fn report_samples(r: &Report, range: (f64, f64), count: usize) -> Result<SampleTable> {
    let bs = r.branches.iter().map(report::branch_from_dto).collect::<Result<Vec<_>>>()?;
    let asy = r.asymptotes.iter().map(report::asymptote_from_dto).collect::<Result<Vec<_>>>()?;
    emit_plot_samples(&bs, &asy, range, count)
}
