use std::collections::BTreeSet;
use std::process::ExitCode;

use binfty_core::binfty::{fixtures, BInftyStructure, Mode};
use binfty_core::descent::{self, Composition, DescElem, GroupAlgElem};
use binfty_core::topo::{
    self, EulerianMethod, LambdaMethod, QuasiOrderClass, Shape, TopoElem, UpsilonMethod,
};
use binfty_core::words::{self, Alphabet, ProjectionTable, TensorElem, Word};
use binfty_core::{idem, Error, LinComb, Poly, Scalar};
use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "binfty",
    version,
    about = "Exact computations with B∞-algebras, descents and finite topologies"
)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Shuffle product of two words.
    Shuffle {
        /// Alphabet declaration such as `a:1,b:2`; inferred from the words if omitted.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
    /// Quasi-shuffle product for a `mode: qshuffle` table.
    Qshuffle {
        #[arg(long)]
        table: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
    /// Induced product and axiom checks for a bracket table.
    Binf {
        #[command(subcommand)]
        cmd: BinfCmd,
    },
    /// Canonical idempotent `e_*` of an element.
    Eulerian {
        #[arg(long)]
        table: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Letter part `ϖ_*` of the canonical idempotent.
    Varpi {
        #[arg(long)]
        table: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Hoffman's exponential and logarithm for a quasi-shuffle table.
    Hoffman {
        op: HoffmanOp,
        #[arg(long)]
        table: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Isomorphism onto the shuffle algebra.
    Omega {
        #[arg(long)]
        table: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Inverse of `omega`.
    Zeta {
        #[arg(long)]
        table: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Change of basis lifted from a projection onto letters.
    Endo {
        #[arg(long)]
        alphabet: String,
        /// Projection entries `w=value`, e.g. `x.x=y`; letters map to themselves.
        #[arg(long = "map")]
        maps: Vec<String>,
        /// Apply the inverse endomorphism.
        #[arg(long)]
        inverse: bool,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Descent algebra.
    Desc {
        #[command(subcommand)]
        cmd: DescCmd,
    },
    /// Finite topologies.
    Topo {
        #[command(subcommand)]
        cmd: TopoCmd,
    },
}

#[derive(Subcommand)]
enum BinfCmd {
    Prod {
        #[arg(long)]
        table: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    Check {
        #[arg(long)]
        table: String,
        #[arg(long, default_value_t = 4)]
        budget: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HoffmanOp {
    Log,
    Exp,
}

#[derive(Subcommand)]
enum DescCmd {
    Dynkin {
        n: usize,
    },
    Solomon {
        n: usize,
    },
    /// Convolution of two group algebra elements, e.g. `"1 2 + -1*2 1"`.
    Conv {
        g: String,
        h: String,
    },
    /// Idempotent, primitivity and convolution checks in degree `n`.
    Check {
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum UpsilonMode {
    Recursive,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum LambdaMode {
    Integral,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum EulerianMode {
    Delta,
    Direct,
}

#[derive(Subcommand)]
enum TopoCmd {
    /// Canonical form and name.
    Canon { t: String },
    /// Open-set coproduct `Δ`.
    Delta { t: String },
    /// Contraction coproduct `δ`.
    Delta2 { t: String },
    /// Projector onto primitives.
    Pi {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Polynomial invariant `Υ`.
    Upsilon {
        t: String,
        #[arg(long, value_enum, default_value_t = UpsilonMode::Recursive)]
        mode: UpsilonMode,
    },
    /// Character `λ`, the value of `Υ` integrated over `[-1, 0]`.
    Lambda {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = LambdaMode::Integral)]
        mode: LambdaMode,
    },
    /// Eulerian idempotent of a topology element.
    Eulerian {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = EulerianMode::Delta)]
        mode: EulerianMode,
    },
    /// Projector applied after the Eulerian idempotent.
    Pieul { t: String },
    /// Antipode for the down product.
    Antipode {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Bracket of primitives `⟨x1 ⊗ … ⊗ xk, y1 ⊗ … ⊗ yl⟩`.
    Bracket {
        #[arg(short = 'x', required = true, allow_hyphen_values = true)]
        xs: Vec<String>,
        #[arg(short = 'y', required = true, allow_hyphen_values = true)]
        ys: Vec<String>,
    },
    /// Disjoint-union product.
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Down product.
    Down {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Ladder `l_n`, or its Eulerian image with `--eulerian`.
    Ladder {
        n: usize,
        /// Print the closed form of the Eulerian idempotent instead.
        #[arg(long)]
        eulerian: bool,
    },
    /// Corolla `c_n`, or its Eulerian image with `--eulerian`.
    Corolla {
        n: usize,
        #[arg(long)]
        eulerian: bool,
    },
    /// All isomorphism classes on `n` points.
    Classes { n: usize },
}

enum Output {
    Terms(Vec<(String, String)>),
    Value(String),
    Poly(String, Vec<(String, String)>),
    Checks(Vec<(String, bool)>),
    Lines(Vec<String>),
}

fn terms<B: Ord + Clone>(x: &LinComb<B>, fmt: impl Fn(&B) -> String) -> Output {
    Output::Terms(x.iter().map(|(b, c)| (c.to_string(), fmt(b))).collect())
}

fn poly_terms(p: &Poly) -> Output {
    let mut v: Vec<(String, String)> = p
        .terms()
        .map(|(k, c)| {
            let basis = match k {
                0 => "1".to_string(),
                1 => "X".to_string(),
                _ => format!("X^{k}"),
            };
            (c.to_string(), basis)
        })
        .collect();
    v.reverse();
    Output::Poly(p.to_string(), v)
}

fn render(out: &Output, as_json: bool) -> String {
    let term_list = |v: &[(String, String)]| json!({"terms": v.iter().map(|(c, b)| json!({"coeff": c, "basis": b})).collect::<Vec<_>>()});
    match (out, as_json) {
        (Output::Terms(v), false) => {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter()
                    .map(|(c, b)| format!("{c}*{b}"))
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        }
        (Output::Terms(v), true) => term_list(v).to_string(),
        (Output::Value(s), false) => s.clone(),
        (Output::Value(s), true) => json!({ "value": s }).to_string(),
        (Output::Checks(v), false) => v
            .iter()
            .map(|(k, ok)| format!("{k}: {ok}"))
            .collect::<Vec<_>>()
            .join("\n"),
        (Output::Checks(v), true) => {
            let map: serde_json::Map<String, serde_json::Value> =
                v.iter().map(|(k, ok)| (k.clone(), json!(ok))).collect();
            json!({ "checks": map }).to_string()
        }
        (Output::Poly(s, _), false) => s.clone(),
        (Output::Poly(_, v), true) => term_list(v).to_string(),
        (Output::Lines(l), false) => l.join("\n"),
        (Output::Lines(l), true) => json!({ "items": l }).to_string(),
    }
}

fn load_table(source: &str) -> Result<BInftyStructure, Error> {
    if let Some(name) = source.strip_prefix('@') {
        let (name, arg) = match name.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (name, None),
        };
        let size = || -> Result<usize, Error> {
            arg.and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::Parse(format!("`@{name}` needs a size, e.g. `@{name}:4`")))
        };
        return match name {
            "flalg" => Ok(fixtures::flalg()),
            "flalg-dual" => Ok(fixtures::flalg_dual()),
            "zeta" => Ok(fixtures::positive_integers(size()?)),
            "cyclic" => Ok(fixtures::cyclic_group(size()?)),
            _ => Err(Error::Parse(format!("unknown built-in table `@{name}`"))),
        };
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::Invalid(format!("cannot read `{source}`: {e}")))?;
    BInftyStructure::parse_table(&text)
}

fn infer_alphabet(words: &[&str]) -> Result<Alphabet, Error> {
    let names: BTreeSet<&str> = words
        .iter()
        .flat_map(|w| w.split('.'))
        .map(str::trim)
        .filter(|s| *s != "1" && !s.is_empty())
        .collect();
    Alphabet::new(names.into_iter().map(|n| (n, 1)))
}

fn parse_topo_elem(s: &str) -> Result<TopoElem, Error> {
    let mut out = TopoElem::zero();
    for term in s.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in `{s}`")));
        }
        let (c, t) = match term.split_once('*') {
            Some((c, t)) => (c.trim().parse::<Scalar>()?, t),
            None => match term.strip_prefix('-') {
                Some(rest) => (-Scalar::one(), rest),
                None => (Scalar::one(), term),
            },
        };
        out.add_term(QuasiOrderClass::parse(t)?, c);
    }
    Ok(out)
}

fn parse_topo(s: &str) -> Result<QuasiOrderClass, Error> {
    QuasiOrderClass::parse(s)
}

fn topo_terms(x: &TopoElem) -> Output {
    terms(x, |t| t.name())
}

fn tensor_terms(x: &topo::TopoTensor) -> Output {
    terms(x, |(a, b)| format!("{a} ⊗ {b}"))
}

fn run(cmd: Cmd) -> Result<(Output, bool), Error> {
    let ok = |o: Output| Ok((o, true));
    match cmd {
        Cmd::Shuffle { alphabet, w, w2 } => {
            let al = match alphabet {
                Some(d) => Alphabet::parse(&d)?,
                None => infer_alphabet(&[&w, &w2])?,
            };
            let x = al.parse_elem(&w)?;
            let y = al.parse_elem(&w2)?;
            ok(terms(&words::shuffle_lin(&x, &y), |w| al.fmt_word(w)))
        }
        Cmd::Qshuffle { table, w, w2 } => {
            let b = load_table(&table)?;
            if !matches!(b.mode(), Mode::QuasiShuffle(_)) {
                return Err(Error::Invalid("table is not in `qshuffle` mode".into()));
            }
            let al = b.alphabet();
            let p = b.product(&al.parse_elem(&w)?, &al.parse_elem(&w2)?)?;
            ok(terms(&p, |w| al.fmt_word(w)))
        }
        Cmd::Binf { cmd } => match cmd {
            BinfCmd::Prod { table, x, y } => {
                let b = load_table(&table)?;
                let al = b.alphabet();
                let p = b.product(&al.parse_elem(&x)?, &al.parse_elem(&y)?)?;
                ok(terms(&p, |w| al.fmt_word(w)))
            }
            BinfCmd::Check { table, budget } => {
                let r = load_table(&table)?.check_axioms(budget)?;
                ok(Output::Checks(vec![
                    ("unit".into(), r.unit),
                    ("assoc".into(), r.assoc),
                    ("comm".into(), r.comm),
                    ("trivial".into(), r.trivial),
                ]))
            }
        },
        Cmd::Eulerian { table, x } => {
            let b = load_table(&table)?;
            let al = b.alphabet();
            let e = idem::eulerian_lin(&b, &al.parse_elem(&x)?)?;
            ok(terms(&e, |w| al.fmt_word(w)))
        }
        Cmd::Varpi { table, x } => {
            let b = load_table(&table)?;
            let al = b.alphabet();
            let v = idem::Varpi::new(&b).apply_lin(&al.parse_elem(&x)?)?;
            ok(terms(&v, |l| al.name(*l).to_string()))
        }
        Cmd::Hoffman { op, table, x } => {
            let b = load_table(&table)?;
            let p = b
                .letter_product()
                .ok_or_else(|| Error::Invalid("table is not in `qshuffle` mode".into()))?;
            let al = b.alphabet();
            let x = al.parse_elem(&x)?;
            let y = match op {
                HoffmanOp::Log => idem::hoffman_log_tilde(p, &x)?,
                HoffmanOp::Exp => idem::hoffman_exp_tilde(p, &x)?,
            };
            ok(terms(&y, |w| al.fmt_word(w)))
        }
        Cmd::Omega { table, x } => {
            let b = load_table(&table)?;
            let al = b.alphabet();
            let y = idem::omega_tilde(&b, &al.parse_elem(&x)?)?;
            ok(terms(&y, |w| al.fmt_word(w)))
        }
        Cmd::Zeta { table, x } => {
            let b = load_table(&table)?;
            let al = b.alphabet();
            let y = idem::zeta_tilde(&b, &al.parse_elem(&x)?)?;
            ok(terms(&y, |w| al.fmt_word(w)))
        }
        Cmd::Endo {
            alphabet,
            maps,
            inverse,
            x,
        } => {
            let al = Alphabet::parse(&alphabet)?;
            let mut proj = ProjectionTable::canonical();
            for m in &maps {
                let (w, v) = m
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected `w=value`, got `{m}`")))?;
                let w: Word = al.parse_word(w)?;
                let v = if v.trim() == "0" {
                    TensorElem::zero()
                } else {
                    al.parse_elem(v)?
                };
                proj.insert(w, words::project_letters(&v));
                if v.keys().any(|w| w.len() != 1) {
                    return Err(Error::Parse(format!(
                        "`{m}`: values must be combinations of letters"
                    )));
                }
            }
            let x = al.parse_elem(&x)?;
            let y = if inverse {
                words::inverse_structure_endo(&proj, &x)?
            } else {
                words::structure_endo(&proj, &x)?
            };
            ok(terms(&y, |w| al.fmt_word(w)))
        }
        Cmd::Desc { cmd } => run_desc(cmd),
        Cmd::Topo { cmd } => run_topo(cmd),
    }
}

fn run_desc(cmd: DescCmd) -> Result<(Output, bool), Error> {
    let show = |g: &GroupAlgElem| terms(&g.terms, |p| p.to_string());
    match cmd {
        DescCmd::Dynkin { n } => Ok((show(&descent::dynkin(n)?), true)),
        DescCmd::Solomon { n } => Ok((show(&descent::solomon(n)?), true)),
        DescCmd::Conv { g, h } => {
            let g = GroupAlgElem::parse(&g)?;
            let h = GroupAlgElem::parse(&h)?;
            Ok((show(&descent::convolution(&g, &h)?), true))
        }
        DescCmd::Check { n } => {
            let checks = desc_checks(n)?;
            let all = checks.iter().all(|(_, ok)| *ok);
            Ok((Output::Checks(checks), all))
        }
    }
}

fn desc_checks(n: usize) -> Result<Vec<(String, bool)>, Error> {
    let sol = descent::solomon(n)?;
    let dyn_n = descent::dynkin(n)?;
    let nn = Scalar::from_int(n as i64);
    let mut out = vec![
        (
            "solomon idempotent".to_string(),
            descent::internal_product(&sol, &sol)? == sol,
        ),
        (
            "solomon primitive".to_string(),
            descent::is_primitive(&DescElem::from_group_alg(&sol)?)?,
        ),
        (
            "dynkin primitive".to_string(),
            descent::is_primitive(&DescElem::from_group_alg(&dyn_n)?)?,
        ),
        (
            "dynkin square".to_string(),
            descent::internal_product(&dyn_n, &dyn_n)? == dyn_n.scale(&nn),
        ),
    ];
    let mut blocks = true;
    for c in binfty_core::combinat::compositions(n) {
        let c = Composition(c);
        blocks &= descent::identity_blocks(&c)? == descent::de_subset(n, &c.to_set())?;
    }
    out.push(("subset basis is block convolution".to_string(), blocks));
    out.push((
        "solomon equals log of identity".to_string(),
        descent::log_identity_oracle(n)? == sol,
    ));
    if n <= descent::MAX_LIE_DEGREE {
        out.push((
            "solomon lands in Lie".to_string(),
            descent::lie_projection_check(&sol)?,
        ));
        out.push((
            "dynkin lands in Lie".to_string(),
            descent::lie_projection_check(&dyn_n)?,
        ));
    }
    Ok(out)
}

fn run_topo(cmd: TopoCmd) -> Result<(Output, bool), Error> {
    let out = match cmd {
        TopoCmd::Canon { t } => {
            let c = parse_topo(&t)?;
            Output::Value(format!("{} = [{}]", c.name(), c.order().relations_text()))
        }
        TopoCmd::Delta { t } => tensor_terms(&topo::coproduct(&parse_topo(&t)?)?),
        TopoCmd::Delta2 { t } => tensor_terms(&topo::coproduct_delta(&parse_topo(&t)?)?),
        TopoCmd::Pi { x } => topo_terms(&topo::inf_pi(&parse_topo_elem(&x)?)?),
        TopoCmd::Upsilon { t, mode } => {
            let m = match mode {
                UpsilonMode::Recursive => UpsilonMethod::Recursive,
                UpsilonMode::Oracle => UpsilonMethod::SurjectionOracle,
            };
            poly_terms(&topo::upsilon(&parse_topo(&t)?, m)?)
        }
        TopoCmd::Lambda { x, mode } => {
            let m = match mode {
                LambdaMode::Integral => LambdaMethod::UpsilonIntegral,
                LambdaMode::Series => LambdaMethod::DeltaSeries,
            };
            Output::Value(topo::lambda_lin(&parse_topo_elem(&x)?, m)?.to_string())
        }
        TopoCmd::Eulerian { x, mode } => {
            let m = match mode {
                EulerianMode::Delta => EulerianMethod::ViaDelta,
                EulerianMode::Direct => EulerianMethod::Direct,
            };
            topo_terms(&topo::eulerian_lin(&parse_topo_elem(&x)?, m)?)
        }
        TopoCmd::Pieul { t } => topo_terms(&topo::canonical_pi_idem(&parse_topo(&t)?)?),
        TopoCmd::Antipode { x } => topo_terms(&topo::antipode_down_lin(&parse_topo_elem(&x)?)?),
        TopoCmd::Bracket { xs, ys } => {
            let xs = xs
                .iter()
                .map(|s| parse_topo_elem(s))
                .collect::<Result<Vec<_>, _>>()?;
            let ys = ys
                .iter()
                .map(|s| parse_topo_elem(s))
                .collect::<Result<Vec<_>, _>>()?;
            topo_terms(&topo::binf_bracket(&xs, &ys)?)
        }
        TopoCmd::Mul { x, y } => topo_terms(&topo::mul_lin(
            &parse_topo_elem(&x)?,
            &parse_topo_elem(&y)?,
        )?),
        TopoCmd::Down { x, y } => topo_terms(&topo::down_lin(
            &parse_topo_elem(&x)?,
            &parse_topo_elem(&y)?,
        )?),
        TopoCmd::Ladder { n, eulerian } => shape(Shape::Ladder, n, eulerian)?,
        TopoCmd::Corolla { n, eulerian } => shape(Shape::Corolla, n, eulerian)?,
        TopoCmd::Classes { n } => {
            Output::Lines(topo::isoclasses(n)?.iter().map(|c| c.name()).collect())
        }
    };
    Ok((out, true))
}

fn shape(s: Shape, n: usize, eulerian: bool) -> Result<Output, Error> {
    if n == 0 {
        return Err(Error::Invalid("size must be at least 1".into()));
    }
    if eulerian {
        return Ok(topo_terms(&topo::closed_form_e(s, n)?));
    }
    let c = match s {
        Shape::Ladder => topo::ladder(n)?,
        Shape::Corolla => topo::corolla(n)?,
    };
    Ok(Output::Value(format!(
        "{} = [{}]",
        c.name(),
        c.order().relations_text()
    )))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeBound { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };
    let as_json = cli.json;
    match run(cli.cmd) {
        Ok((out, passed)) => {
            println!("{}", render(&out, as_json));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
