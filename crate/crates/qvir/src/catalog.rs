//! Named identity checks and series expansions, as run by the command
//! line tool.
//!
//! Every identity has a default window and backend. Numeric runs draw
//! seeded random parameter points and redraw (up to [`RETRIES`] times) when
//! a point hits a pole or a resonance.

use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffield::{make_element, small_rational, FieldElement, Param, ParamPoint, SymbolTable};
use crate::error::{Error, Result};
use crate::macdonald::{
    u_series, v_series, verify_formula_gamma, verify_genfunc, verify_halves, verify_macdonald_recurrence,
    verify_macdonald_solution, verify_qsaalschutz, verify_qseries_identity,
};
use crate::mutation::Mutation;
use crate::nekrasov::{higgs_psi, toda_limit, z_expand};
use crate::operators::{commutator_check, solve_toda, toda_h_apply, verify_theorem20, wrep_report, WrepReport};
use crate::qkit::{arg_order, phi_coeffs, qbinomial_check, series_in_arg};
use crate::series::{BiSeries, DegreeWindow, MonomialArg, Region, Verdict, UNBOUNDED};

/// Redraws allowed per numeric trial.
pub const RETRIES: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Numeric,
    Symbolic,
}

#[derive(Clone, Debug)]
pub struct IdentitySpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub window: DegreeWindow,
    pub backend: Backend,
    /// Parameters drawn at random in numeric mode, or symbols in symbolic mode.
    pub params: &'static [&'static str],
    pub mutations: &'static [Mutation],
}

const fn w(lmax: i32, xmin: i32, xmax: i32) -> DegreeWindow {
    DegreeWindow { lmax, xmin, xmax }
}

impl IdentitySpec {
    /// Default window for a backend. Symbolic runs of the two heaviest
    /// identities use a smaller window.
    pub fn default_window(&self, backend: Backend) -> DegreeWindow {
        match (self.name, backend) {
            ("theorem20", Backend::Symbolic) => w(2, -3, 4),
            ("toda21", Backend::Symbolic) => w(1, -1, 1),
            _ => self.window,
        }
    }

    /// Backend used when the options do not force one.
    pub fn backend_for(&self, opts: &RunOptions) -> Backend {
        if opts.params.is_some() {
            Backend::Numeric
        } else {
            opts.backend.unwrap_or(self.backend)
        }
    }
}

pub const CATALOG: [IdentitySpec; 14] = [
    IdentitySpec {
        name: "theorem20",
        summary: "Ψ(tΛ,x) = A1 γ̂ A2 γ̂ A3 Ψ(Λ,x/(tqQ)); symbolic mode uses the special point",
        window: w(3, -4, 6),
        backend: Backend::Numeric,
        params: &["u", "s", "Q", "T1", "T2", "T3", "T4"],
        mutations: &[Mutation::A2, Mutation::Shift],
    },
    IdentitySpec {
        name: "toda21",
        summary: "the Toda limit of Ψ solves Ψ(tΛ,x) = ĤΨ and equals the exact solver",
        window: w(3, -3, 3),
        backend: Backend::Numeric,
        params: &["u", "s", "Q"],
        mutations: &[],
    },
    IdentitySpec {
        name: "commutator22",
        summary: "[Ĥ, Ĥ_Toda] = 0 on basis monomials",
        window: w(2, -3, 3),
        backend: Backend::Symbolic,
        params: &["u", "s", "Q"],
        mutations: &[Mutation::Tq2],
    },
    IdentitySpec {
        name: "wrep24",
        summary: "cut-and-join partial products converge to the Toda solution",
        window: w(2, -2, 2),
        backend: Backend::Numeric,
        params: &["q", "t", "Q"],
        mutations: &[],
    },
    IdentitySpec {
        name: "macdonald_recurrence",
        summary: "the three-term Ruijsenaars recurrence for U with eigenvalue 1+t+t/Q",
        window: w(3, -3, 3),
        backend: Backend::Symbolic,
        params: &["u", "s", "Q"],
        mutations: &[Mutation::Eigen, Mutation::RecurrencePole],
    },
    IdentitySpec {
        name: "macdonald_solution",
        summary: "U at Q = q^-r/t is φ(qΛ/(t²x))/φ(Λ/x)·P_[r](1, Λ/t, Λ/(tx)); --n picks r, default 0..4",
        window: w(4, -4, 1),
        backend: Backend::Symbolic,
        params: &["u", "s"],
        mutations: &[Mutation::P2],
    },
    IdentitySpec {
        name: "halves_v1",
        summary: "V = φ(−x/t)φ(−qΛ/x)/φ(qΛ/t²)·γ̂⁻¹φ(qx/t)φ(tΛ/x)U(tΛ,x)",
        window: w(3, -3, 3),
        backend: Backend::Symbolic,
        params: &["u", "s", "Q"],
        mutations: &[Mutation::HalvesV],
    },
    IdentitySpec {
        name: "halves_v2",
        summary: "V = φ(tΛ)/(φ(−x/Q)φ(−qQΛ/x))·γ̂[φ(x/(qQ))φ(q²QΛ/(tx))]⁻¹U(Λ,x/(tqQ))",
        window: w(3, -3, 3),
        backend: Backend::Symbolic,
        params: &["u", "s", "Q"],
        mutations: &[Mutation::HalvesV],
    },
    IdentitySpec {
        name: "genfunc",
        summary: "generating function of the polynomial solutions; --n is the z order, default 3",
        window: w(2, -2, 2),
        backend: Backend::Symbolic,
        params: &["u", "s", "z"],
        mutations: &[Mutation::GenfuncPoch],
    },
    IdentitySpec {
        name: "qseries",
        summary: "the terminating q-series identity behind the first half-equation",
        window: w(3, -3, 0),
        backend: Backend::Symbolic,
        params: &["u", "s", "z"],
        mutations: &[Mutation::QseriesWeight],
    },
    IdentitySpec {
        name: "qsaalschutz",
        summary: "q-Saalschütz summation with q = u²; --n picks n, default 0..5",
        window: w(0, 0, 0),
        backend: Backend::Symbolic,
        params: &["u", "a", "b", "c"],
        mutations: &[Mutation::Ca],
    },
    IdentitySpec {
        name: "formula_gamma",
        summary: "x^-k γ̂ x^k φ(−x/t)⁻¹φ(−qΛ/x)⁻¹ for k = −2..2",
        window: w(3, -3, 3),
        backend: Backend::Symbolic,
        params: &["u", "s"],
        mutations: &[Mutation::GammaExp],
    },
    IdentitySpec {
        name: "qbinomial",
        summary: "φ(X)/φ(X/y) = Σ (y)_n/(q)_n (X/y)^n for X = x, Λ, Λ/x",
        window: w(3, -3, 3),
        backend: Backend::Symbolic,
        params: &["u", "y"],
        mutations: &[],
    },
    IdentitySpec {
        name: "phi_functional",
        summary: "φ(X) = (1 − X)φ(qX) for X = x, Λ, Λ/x",
        window: w(3, -3, 3),
        backend: Backend::Symbolic,
        params: &["u", "c"],
        mutations: &[Mutation::PhiWeight],
    },
];

pub fn find(name: &str) -> Result<&'static IdentitySpec> {
    CATALOG.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = CATALOG.iter().map(|s| s.name).collect();
        Error::Usage(format!("unknown identity {name}; known: {}", names.join(", ")))
    })
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub window: Option<DegreeWindow>,
    /// Overrides the identity's default backend.
    pub backend: Option<Backend>,
    pub seed: u64,
    pub trials: u32,
    pub n: Option<u32>,
    /// `key=value` pairs; numeric runs then use this single point.
    pub params: Option<String>,
    pub mutation: Mutation,
    pub max_iterations: u32,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            window: None,
            backend: None,
            seed: 1,
            trials: 1,
            n: None,
            params: None,
            mutation: Mutation::None,
            max_iterations: 8,
        }
    }
}

/// The outcome of one catalog run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub identity: &'static str,
    pub window: DegreeWindow,
    pub backend: Backend,
    /// Parameter values of each trial (name, value).
    pub points: Vec<Vec<(String, String)>>,
    pub verdict: Verdict,
    pub redraws: u32,
    pub wrep: Option<WrepReport>,
}

fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::Domain(_) | Error::EvaluationPole(_) | Error::NonInvertible | Error::DegenerateParameters(_)
    )
}

/// Named values, either symbols of one table or seeded random rationals.
struct Values {
    table: Option<Arc<SymbolTable>>,
    pairs: Vec<(String, FieldElement)>,
}

impl Values {
    fn symbolic(names: &[&str]) -> Result<Values> {
        let table = SymbolTable::new(names)?;
        let pairs = names
            .iter()
            .map(|n| Ok((n.to_string(), FieldElement::symbol(&table, n)?)))
            .collect::<Result<_>>()?;
        Ok(Values { table: Some(table), pairs })
    }

    fn random(names: &[&str], seed: u64) -> Values {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs =
            names.iter().map(|n| (n.to_string(), FieldElement::Rational(small_rational(&mut rng)))).collect();
        Values { table: None, pairs }
    }

    fn parse(text: &str) -> Result<Values> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("expected key=value, got {item}")))?;
            let val = make_element(v.trim(), None)?;
            pairs.push((k.trim().to_string(), val));
        }
        Ok(Values { table: None, pairs })
    }

    fn get(&self, name: &str) -> Result<FieldElement> {
        self.pairs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Usage(format!("parameter {name} is required")))
    }

    fn describe(&self) -> Vec<(String, String)> {
        match &self.table {
            Some(_) => self.pairs.iter().map(|(n, _)| (n.clone(), "symbolic".into())).collect(),
            None => self.pairs.iter().map(|(n, v)| (n.clone(), v.to_string())).collect(),
        }
    }

    /// A parameter point over u, s and the model parameters present.
    fn point(&self) -> Result<ParamPoint> {
        let mut pt = match &self.table {
            Some(t) => {
                let free: Vec<Param> = self.pairs.iter().filter_map(|(n, _)| n.parse().ok()).collect();
                ParamPoint::symbolic(t.clone(), &free)?
            }
            None => {
                let mut nums = Vec::new();
                for (n, v) in &self.pairs {
                    if let (Ok(p), Some(r)) = (n.parse::<Param>(), v.as_rational()) {
                        nums.push((p, r.clone()));
                    }
                }
                ParamPoint::numeric(&nums)?
            }
        };
        for (n, v) in &self.pairs {
            if let Ok(p) = n.parse::<Param>() {
                pt = pt.with(p, v.clone());
            }
        }
        Ok(pt)
    }

    fn qt(&self) -> Result<(FieldElement, FieldElement)> {
        let u = self.get("u")?;
        let s = self.get("s")?;
        Ok((&u * &u, &s * &s))
    }
}

/// Runs one identity check.
pub fn run(name: &str, opts: &RunOptions) -> Result<RunReport> {
    let spec = find(name)?;
    if opts.mutation != Mutation::None && !spec.mutations.contains(&opts.mutation) {
        return Err(Error::Usage(format!("mutation {} does not apply to {name}", opts.mutation)));
    }
    let backend = spec.backend_for(opts);
    let window = opts.window.unwrap_or(spec.default_window(backend));
    if !window.is_valid() {
        return Err(Error::Usage(format!("invalid window {window}")));
    }
    let mut report = RunReport {
        identity: spec.name,
        window,
        backend,
        points: Vec::new(),
        verdict: Verdict::plain(true, window, 0),
        redraws: 0,
        wrep: None,
    };
    if spec.name == "wrep24" {
        let vals = match &opts.params {
            Some(p) => Values::parse(p)?,
            None => Values {
                table: None,
                pairs: vec![
                    ("q".into(), FieldElement::ratio(1, 3)),
                    ("t".into(), FieldElement::from_int(2)),
                    ("Q".into(), FieldElement::from_int(2)),
                ],
            },
        };
        let rep = wrep_report(opts.max_iterations, &window, &vals.get("q")?, &vals.get("t")?, &vals.get("Q")?)?;
        let mut v = Verdict::plain(rep.pass(), window, rep.errors.len());
        if let Some(warn) = &rep.warning {
            v = v.with_note(warn.clone());
        }
        report.points.push(vals.describe());
        report.verdict = v;
        report.wrep = Some(rep);
        return Ok(report);
    }
    let mut parts = Vec::new();
    match backend {
        Backend::Symbolic => {
            let vals = Values::symbolic(spec.params)?;
            parts.push(check(spec, &window, &vals, opts)?);
            report.points.push(vals.describe());
        }
        Backend::Numeric => {
            if let Some(p) = &opts.params {
                let vals = Values::parse(p)?;
                parts.push(check(spec, &window, &vals, opts)?);
                report.points.push(vals.describe());
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                for _ in 0..opts.trials.max(1) {
                    let mut attempt = 0;
                    loop {
                        let vals = Values::random(spec.params, rng.next_u64());
                        match check(spec, &window, &vals, opts) {
                            Ok(v) => {
                                parts.push(v);
                                report.points.push(vals.describe());
                                break;
                            }
                            Err(e) if is_degenerate(&e) && attempt < RETRIES => {
                                attempt += 1;
                                report.redraws += 1;
                            }
                            Err(e) if is_degenerate(&e) => {
                                return Err(Error::DegenerateParameters(format!(
                                    "{e}; still degenerate after {RETRIES} redraws, try another --seed"
                                )))
                            }
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
    }
    report.verdict = Verdict::all(window, parts);
    Ok(report)
}

fn check(spec: &IdentitySpec, window: &DegreeWindow, vals: &Values, opts: &RunOptions) -> Result<Verdict> {
    let m = opts.mutation;
    match spec.name {
        "theorem20" => {
            let mut pt = vals.point()?;
            if vals.table.is_some() {
                pt = pt.special_point()?;
            }
            verify_theorem20(window, &pt, m)
        }
        "toda21" => {
            let pt = vals.point()?;
            let (q, t) = vals.qt()?;
            let big_q = vals.get("Q")?;
            let exact = solve_toda(window, &q, &t, &big_q)?;
            let eq = Verdict::compare(
                &exact.rescale(&t, &FieldElement::one())?,
                &toda_h_apply(&exact, &q, &t, &big_q)?,
                window,
            )?
            .with_note("solver output satisfies Ψ(tΛ,x) = ĤΨ");
            let ones = [(); 4].map(|_| FieldElement::one());
            let limit = toda_limit(window, &pt, &ones)?;
            let same = Verdict::compare(&limit, &exact, window)?.with_note("Toda limit of Ψ equals the solver output");
            Ok(Verdict::all(*window, vec![eq, same]))
        }
        "commutator22" => {
            let (q, t) = vals.qt()?;
            commutator_check(window, &q, &t, &vals.get("Q")?, m)
        }
        "macdonald_recurrence" => {
            let (q, t) = vals.qt()?;
            verify_macdonald_recurrence(window, &q, &t, &vals.get("Q")?, m)
        }
        "macdonald_solution" => {
            let (q, t) = vals.qt()?;
            let rs: Vec<u32> = match opts.n {
                Some(r) => vec![r],
                None => (0..=4).collect(),
            };
            let parts = rs
                .into_iter()
                .map(|r| verify_macdonald_solution(r, window, &q, &t, m))
                .collect::<Result<_>>()?;
            Ok(Verdict::all(*window, parts))
        }
        "halves_v1" | "halves_v2" => {
            let (q, t) = vals.qt()?;
            let (a, b) = verify_halves(window, &q, &t, &vals.get("Q")?, m)?;
            Ok(if spec.name == "halves_v1" { a } else { b })
        }
        "genfunc" => {
            let (q, t) = vals.qt()?;
            verify_genfunc(opts.n.unwrap_or(3), window, &q, &t, &vals.get("z")?, m)
        }
        "qseries" => {
            let (q, t) = vals.qt()?;
            verify_qseries_identity(window, &q, &t, &vals.get("z")?, m)
        }
        "qsaalschutz" => {
            let u = vals.get("u")?;
            let q = &u * &u;
            let (a, b, c) = (vals.get("a")?, vals.get("b")?, vals.get("c")?);
            let ns: Vec<u32> = match opts.n {
                Some(n) => vec![n],
                None => (0..=5).collect(),
            };
            let parts =
                ns.into_iter().map(|n| verify_qsaalschutz(n, &q, &a, &b, &c, m)).collect::<Result<_>>()?;
            Ok(Verdict::all(*window, parts))
        }
        "formula_gamma" => {
            let (q, t) = vals.qt()?;
            verify_formula_gamma(&[-2, -1, 0, 1, 2], window, &q, &t, m)
        }
        "qbinomial" => {
            let u = vals.get("u")?;
            let q = &u * &u;
            let y = vals.get("y")?;
            let region = Region::for_window(window);
            let mut parts = Vec::new();
            for (dl, dx) in [(0, 1), (1, 0), (1, -1)] {
                let res = qbinomial_check(&MonomialArg::new(FieldElement::one(), dl, dx), &y, &region, &q)?;
                parts.push(Verdict::plain(res.in_window(window).next().is_none(), *window, region.keys().len()));
            }
            Ok(Verdict::all(*window, parts))
        }
        "phi_functional" => {
            let u = vals.get("u")?;
            let q = &u * &u;
            let c = vals.get("c")?;
            let region = Region::for_window(window);
            let mut parts = Vec::new();
            for (dl, dx) in [(0, 1), (1, 0), (1, -1)] {
                let arg = MonomialArg::new(c.clone(), dl, dx);
                let lhs = phi_with_weight(&arg, &region, &q, m)?;
                let shifted = phi_with_weight(&arg.scaled(&q), &region, &q, m)?;
                let one_minus = BiSeries::from_terms(
                    Region::anchored(1, UNBOUNDED, UNBOUNDED),
                    [((0, 0), FieldElement::one()), ((dl, dx), -&c)],
                );
                parts.push(Verdict::compare(&lhs, &one_minus.mul(&shifted)?, window)?);
            }
            Ok(Verdict::all(*window, parts))
        }
        other => Err(Error::Usage(format!("identity {other} has no check"))),
    }
}

/// φ(arg); `PhiWeight` uses the weight q^{n(n+1)/2} instead of q^{n(n−1)/2}.
fn phi_with_weight(arg: &MonomialArg, region: &Region, q: &FieldElement, m: Mutation) -> Result<BiSeries> {
    let k = arg_order(arg, region)?;
    let mut coeffs = phi_coeffs(k, q, false)?;
    if m == Mutation::PhiWeight {
        for (n, c) in coeffs.iter_mut().enumerate() {
            *c = &*c * &q.pow(n as i64)?;
        }
    }
    series_in_arg(&coeffs, arg, region)
}

/// Series the expand command can produce.
pub const FUNCTIONS: [&str; 5] = ["z", "psi", "psi_toda", "u", "v"];

/// Expands one of [`FUNCTIONS`] at a numeric point given as `key=value`
/// pairs. `u` and `v` read u, s, Q; `psi_toda` reads u, s, Q and takes the
/// limit with all c_i = 1.
pub fn expand(function: &str, window: &DegreeWindow, params: &str) -> Result<BiSeries> {
    if !window.is_valid() || window.lmax < 0 || window.xmax < 0 {
        return Err(Error::Usage(format!("invalid window {window}")));
    }
    let pt = ParamPoint::parse_numeric(params)?;
    match function {
        "z" => z_expand(window, &pt),
        "psi" => higgs_psi(window, &pt),
        "psi_toda" => toda_limit(window, &pt, &[(); 4].map(|_| FieldElement::one())),
        "u" | "v" => {
            let (q, t) = (pt.q()?, pt.t()?);
            let big_q = pt.big_q()?.clone();
            if function == "u" {
                u_series(window, &q, &t, &big_q)
            } else {
                v_series(window, &q, &t, &big_q, Mutation::None)
            }
        }
        other => Err(Error::Usage(format!("unknown function {other}; known: {}", FUNCTIONS.join(", ")))),
    }
}
