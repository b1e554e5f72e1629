use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use uwrt_core::exactalg::{eval_at_root, BRational, CycNumber, QuarterLaurent, RootSpec, Theory};
use uwrt_core::frobenius::{lattice_index, qth_root};
use uwrt_core::gauss::{gamma, gauss_brute, gauss_closed, GammaMode};
use uwrt_core::habiro::{unified_diagonal_eval, unified_lens, Eps};
use uwrt_core::jones::{cyclotomic_coeffs, hopf_pair_values, jones_hopf_chain};
use uwrt_core::numtheory::{dedekind_sum, neg_continued_fraction};
use uwrt_core::verify::{run_suite, SUITES};
use uwrt_core::wrt::{lens_tau_prime_closed, Evaluator, ManifoldSpec};

#[derive(Parser)]
#[command(name = "uwrt", version, about = "Exact quantum invariants of lens spaces and diagonal rational homology spheres")]
struct Cli {
    /// Emit one JSON record per result instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Also print the complex embedding of each exact value.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    command: Command,
}

/// A root of unity `ξ = e_r^l` together with the theory.
#[derive(Args, Clone, Copy, Debug)]
struct RootArgs {
    #[arg(long)]
    r: u64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    l: i64,
    #[arg(long, default_value = "so3", value_parser = parse_theory)]
    theory: Theory,
}

impl RootArgs {
    fn spec(&self) -> uwrt_core::Result<RootSpec> {
        RootSpec::new(self.r, self.l, self.theory)
    }

    fn json(&self) -> Value {
        json!({"r": self.r, "l": self.l, "theory": self.theory.to_string()})
    }
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    Theory::parse(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Quadratic Gauss sum G(r,x,y).
    Gauss {
        #[arg(long)]
        r: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        /// Sum directly instead of using the closed form.
        #[arg(long)]
        brute: bool,
    },
    /// The normalizer γ_b at a root.
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[command(flatten)]
        root: RootArgs,
        #[arg(long)]
        brute: bool,
    },
    /// Dedekind sum s(a,b).
    Dedekind {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Negative continued fraction of b/a.
    Cfrac {
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Colored Jones value of a framed Hopf chain ending in a knot of color d.
    Jones {
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<u64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framings: Vec<i64>,
        #[arg(long, default_value_t = 1)]
        d: u64,
        /// Evaluate at e_r^l instead of printing the polynomial.
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        l: i64,
    },
    /// Cyclotomic coefficients C(k) of the Hopf link with one color fixed to j.
    Cyccoeffs {
        #[arg(long, default_value_t = 1)]
        j: u64,
        #[arg(long, default_value_t = 6)]
        horizon: usize,
    },
    /// WRT invariants τ'.
    Wrt {
        #[command(subcommand)]
        which: WrtCommand,
    },
    /// Evaluations of unified invariants.
    Unified {
        #[command(subcommand)]
        which: UnifiedCommand,
    },
    /// Frobenius q ↦ q^b on Z[1/b][q]/(Φ_n^k).
    Frobenius {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        b: u64,
        #[arg(long, conflicts_with = "root")]
        index: bool,
        #[arg(long)]
        root: bool,
    },
    /// Run a verification suite ("all" runs every suite).
    Verify {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Subcommand)]
enum WrtCommand {
    /// τ' of M(b,a;d).
    Lens {
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[command(flatten)]
        root: RootArgs,
        /// Use the state sum instead of the closed form.
        #[arg(long)]
        sum: bool,
    },
    /// τ' of a connected sum such as "L(3,1);L(-5,2,d=3);D(3,-5,j=3)".
    Connsum {
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
        #[command(flatten)]
        root: RootArgs,
    },
}

#[derive(Subcommand)]
enum UnifiedCommand {
    /// ev_ξ of the unified invariant of L(b,a), projection chosen by r.
    Lens {
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[command(flatten)]
        root: RootArgs,
    },
    /// ev_ξ of the unified invariant of a connected sum of diagonal pieces.
    Diagonal {
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
        #[command(flatten)]
        root: RootArgs,
    },
}

#[derive(Serialize)]
struct Record {
    command: String,
    inputs: Value,
    modulus: Option<u64>,
    coeffs: Vec<String>,
    float: Option<[f64; 2]>,
}

enum Payload {
    Number(CycNumber),
    Rational(BRational),
    Laurent(QuarterLaurent),
    List(Vec<String>),
}

struct Output {
    command: String,
    inputs: Value,
    payload: Payload,
}

impl Output {
    fn new(command: &str, inputs: Value, payload: Payload) -> Output {
        Output { command: command.to_string(), inputs, payload }
    }

    fn complex(&self) -> Option<[f64; 2]> {
        let z = match &self.payload {
            Payload::Number(x) => x.to_complex(),
            Payload::Rational(q) => CycNumber::from_rational(q).to_complex(),
            _ => return None,
        };
        Some([z.re, z.im])
    }

    fn text(&self) -> String {
        match &self.payload {
            Payload::Number(x) => match x.as_rational() {
                Some(q) => q.to_string(),
                None => x.to_canonical_string(),
            },
            Payload::Rational(q) => q.to_string(),
            Payload::Laurent(p) => p.to_string(),
            Payload::List(v) => v.join(" "),
        }
    }

    fn record(&self, float: bool) -> Record {
        let (modulus, coeffs) = match &self.payload {
            Payload::Number(x) => (Some(x.modulus()), x.coeffs().iter().map(ToString::to_string).collect()),
            Payload::Rational(q) => (Some(1), vec![q.to_string()]),
            Payload::Laurent(p) => (None, p.terms().map(|(e, c)| format!("{e}:{c}")).collect()),
            Payload::List(v) => (None, v.clone()),
        };
        let float = if float { self.complex() } else { None };
        Record { command: self.command.clone(), inputs: self.inputs.clone(), modulus, coeffs, float }
    }

    fn print(&self, cli: &Cli) {
        if cli.json {
            println!("{}", serde_json::to_string(&self.record(cli.float)).expect("serializable record"));
        } else if cli.float {
            match self.complex() {
                Some([re, im]) => println!("{}  ≈ {re:.12} {:+.12}i", self.text(), im),
                None => println!("{}", self.text()),
            }
        } else {
            println!("{}", self.text());
        }
    }
}

fn run(cli: &Cli) -> uwrt_core::Result<(Vec<Output>, bool)> {
    let one = |o: Output| Ok((vec![o], true));
    match &cli.command {
        Command::Gauss { r, x, y, brute } => {
            let v = if *brute { gauss_brute(*r, *x, *y) } else { gauss_closed(*r, *x, *y) };
            one(Output::new("gauss", json!({"r": r, "x": x, "y": y}), Payload::Number(v.simplify())))
        }
        Command::Gamma { b, root, brute } => {
            let mode = if *brute { GammaMode::Brute } else { GammaMode::Closed };
            let v = gamma(*b, &root.spec()?, mode)?;
            let mut inputs = root.json();
            inputs["b"] = json!(b);
            one(Output::new("gamma", inputs, Payload::Number(v.simplify())))
        }
        Command::Dedekind { a, b } => {
            one(Output::new("dedekind", json!({"a": a, "b": b}), Payload::Rational(dedekind_sum(*a, *b)?)))
        }
        Command::Cfrac { b, a } => {
            let ms = neg_continued_fraction(*b, *a)?;
            one(Output::new("cfrac", json!({"b": b, "a": a}), Payload::List(ms.iter().map(ToString::to_string).collect())))
        }
        Command::Jones { colors, framings, d, r, l } => {
            let framings = if framings.is_empty() { vec![0; colors.len()] } else { framings.clone() };
            let p = jones_hopf_chain(colors, *d, &framings)?;
            let inputs = json!({"colors": colors, "framings": framings, "d": d, "r": r, "l": l});
            let payload = match r {
                Some(r) => Payload::Number(eval_at_root(&p, &RootSpec::new(*r, *l, Theory::SU2)?).simplify()),
                None => Payload::Laurent(p),
            };
            one(Output::new("jones", inputs, payload))
        }
        Command::Cyccoeffs { j, horizon } => {
            let c = cyclotomic_coeffs(&hopf_pair_values(*j, *horizon), *horizon)?;
            let outs = c
                .entries
                .into_iter()
                .enumerate()
                .map(|(k, e)| {
                    let inputs = json!({"j": j, "k": k, "integral": c.integral[k]});
                    Output::new("cyccoeffs", inputs, Payload::Laurent(e))
                })
                .collect();
            Ok((outs, true))
        }
        Command::Wrt { which: WrtCommand::Lens { b, a, d, root, sum } } => {
            let xi = root.spec()?;
            let v = if *sum {
                Evaluator::new(&xi)?.tau_prime(&ManifoldSpec::lens(*b, *a, *d)?)?.value
            } else {
                lens_tau_prime_closed(*b, *a, *d, &xi)?
            };
            let mut inputs = root.json();
            inputs.as_object_mut().expect("object").extend([
                ("b".to_string(), json!(b)),
                ("a".to_string(), json!(a)),
                ("d".to_string(), json!(d)),
                ("route".to_string(), json!(if *sum { "sum" } else { "closed" })),
            ]);
            one(Output::new("wrt lens", inputs, Payload::Number(v.simplify())))
        }
        Command::Wrt { which: WrtCommand::Connsum { spec, root } } => {
            let m = ManifoldSpec::parse(spec)?;
            let v = Evaluator::new(&root.spec()?)?.tau_prime(&m)?.value;
            let mut inputs = root.json();
            inputs["spec"] = json!(m.to_string());
            one(Output::new("wrt connsum", inputs, Payload::Number(v.simplify())))
        }
        Command::Unified { which: UnifiedCommand::Lens { b, a, root } } => {
            let xi = root.spec()?;
            let eps = Eps::for_root(*b, xi.r)?;
            let inv = unified_lens(*b, *a, eps, xi.theory)?;
            let mut inputs = root.json();
            inputs["b"] = json!(b);
            inputs["a"] = json!(a);
            inputs["eps"] = json!(eps.to_string());
            inputs["d"] = json!(inv.d);
            one(Output::new("unified lens", inputs, Payload::Number(inv.eval(&xi)?.simplify())))
        }
        Command::Unified { which: UnifiedCommand::Diagonal { spec, root } } => {
            let m = ManifoldSpec::parse(spec)?;
            let v = unified_diagonal_eval(&m, &root.spec()?)?;
            let mut inputs = root.json();
            inputs["spec"] = json!(m.to_string());
            one(Output::new("unified diagonal", inputs, Payload::Number(v)))
        }
        Command::Frobenius { n, k, b, index, root } => {
            let inputs = json!({"n": n, "k": k, "b": b});
            let mut outs = Vec::new();
            if *index || !*root {
                let i = lattice_index(*n, *k, *b)?;
                outs.push(Output::new("frobenius index", inputs.clone(), Payload::Rational(BRational::from_integer(i))));
            }
            if *root || !*index {
                let y = qth_root(*n, *k, *b)?;
                outs.push(Output::new("frobenius root", inputs, Payload::List(y.coeffs.iter().map(ToString::to_string).collect())));
            }
            Ok((outs, true))
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.iter().map(|(n, _)| *n).collect() } else { vec![suite.as_str()] };
            let mut outs = Vec::new();
            let mut ok = true;
            for name in names {
                let rep = run_suite(name)?;
                ok &= rep.all_passed();
                let inputs = json!({
                    "suite": rep.suite,
                    "run": rep.run,
                    "passed": rep.passed,
                    "first_failure": rep.first_failure,
                });
                outs.push(Output::new("verify", inputs, Payload::List(vec![rep.to_string()])));
            }
            Ok((outs, ok))
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("WRT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second initialization only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok((outs, ok)) => {
            for o in &outs {
                o.print(&cli);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
