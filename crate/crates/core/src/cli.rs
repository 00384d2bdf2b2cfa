//! The `dilator` command line: argument parsing, dispatch and report printing.

use std::cmp::Ordering;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::element::{self, compare_elements, enum_elements, is_element, ordinal_ambient, Budget, Elem, Element, ImportanceCache, Pt};
use crate::error::{Error, Result};
use crate::expr::DilatorExpr;
use crate::jfunctor::{j_eval, j_guard_report, jplus_dilator, jplus_eval, jprime_eval, JResult, Mode};
use crate::ordinal::Ordinal;
use crate::psi::{psi_clause_otp, psi_enum, PsiBudget, PsiOrder};
use crate::suites::{run_suite, SuiteOptions, SuiteReport, SUITES};
use crate::symbolic::{classify, decompose, TypeClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "dilator", version, about = "Dilators, the functor J and collapse term orders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Ordinal argument gamma.
    #[arg(long, default_value = "w", global = true)]
    pub gamma: String,
    /// Number of elements listed or compared.
    #[arg(long, default_value_t = 200, global = true)]
    pub prefix: usize,
    /// Nesting depth of collapse terms.
    #[arg(long, default_value_t = 4, global = true)]
    pub depth: usize,
    #[arg(long, default_value_t = 10_000, global = true)]
    pub trials: usize,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type 0, 1, omega or Omega.
    Classify { expr: String },
    /// Connected components in order.
    Decompose { expr: String },
    /// Elements of D(alpha), ascending.
    Enum {
        expr: String,
        #[arg(default_value = "3")]
        alpha: String,
    },
    /// Compare two elements of D(alpha), written as printed by `enum`.
    Compare { expr: String, left: String, right: String },
    /// J(D, gamma) with its guard audit.
    Jeval {
        expr: String,
        /// Include the recursion trace.
        #[arg(long)]
        steps: bool,
    },
    /// J'(D, gamma).
    Jprime {
        expr: String,
        #[arg(long)]
        steps: bool,
    },
    /// J+(D, gamma), the value of J' at omega[D + 1].
    Jplus {
        expr: String,
        #[arg(long)]
        steps: bool,
    },
    /// Collapse terms of psi D^gamma up to the nesting depth.
    PsiEnum { expr: String },
    /// Order type of psi D^gamma.
    PsiOtp { expr: String },
    /// Run a named check suite, or `all`.
    Check { suite: String },
    /// Run a scenario file: one command per line, `#` starts a comment.
    Run {
        #[arg(long)]
        file: String,
    },
}

/// The outcome of one invocation: exit code and standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            Outcome { code, stdout: e.render().to_string() }
        }
    }
}

struct Report {
    verb: &'static str,
    inputs: Value,
    body: Value,
    text: String,
    code: i32,
}

pub fn run(cli: &Cli) -> Outcome {
    if let Command::Run { file } = &cli.command {
        return run_file(file, cli.format);
    }
    let verb = verb_name(&cli.command);
    match dispatch(cli) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Json => {
                    let mut obj = json!({ "verb": r.verb, "inputs": r.inputs });
                    if let (Value::Object(o), Value::Object(b)) = (&mut obj, r.body) {
                        o.extend(b);
                    }
                    format!("{}\n", serde_json::to_string_pretty(&obj).expect("json"))
                }
            };
            Outcome { code: r.code, stdout }
        }
        Err(e) => {
            let stdout = match cli.format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => {
                    let mut obj = json!({ "verb": verb, "error": { "kind": e.kind(), "message": e.to_string() } });
                    if let Error::OutOfNotation { lower_bound: Some(lb), .. } = &e {
                        obj["error"]["lowerBound"] = to_value(lb);
                    }
                    format!("{}\n", serde_json::to_string_pretty(&obj).expect("json"))
                }
            };
            Outcome { code: e.exit_code(), stdout }
        }
    }
}

fn verb_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Decompose { .. } => "decompose",
        Command::Enum { .. } => "enum",
        Command::Compare { .. } => "compare",
        Command::Jeval { .. } => "jeval",
        Command::Jprime { .. } => "jprime",
        Command::Jplus { .. } => "jplus",
        Command::PsiEnum { .. } => "psi-enum",
        Command::PsiOtp { .. } => "psi-otp",
        Command::Check { .. } => "check",
        Command::Run { .. } => "run",
    }
}

fn parse_dilator(s: &str) -> Result<DilatorExpr> {
    s.parse()
}

fn parse_ordinal(s: &str) -> Result<Ordinal> {
    s.parse()
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let verb = verb_name(&cli.command);
    let plain = |inputs: Value, body: Value, text: String| Report { verb, inputs, body, text, code: 0 };
    Ok(match &cli.command {
        Command::Classify { expr } => {
            let d = parse_dilator(expr)?;
            let t = classify(&d)?;
            let mut body = json!({ "type": t.name() });
            let mut text = format!("{d}: type {}\n", t.name());
            match &t {
                TypeClass::One { pred } => {
                    body["pred"] = to_value(pred);
                    let _ = writeln!(text, "  pred = {pred}");
                }
                TypeClass::BigOmega { head, last } => {
                    body["head"] = to_value(head);
                    body["last"] = to_value(last);
                    let _ = writeln!(text, "  head = {head}\n  last = {last}");
                }
                _ => {}
            }
            plain(json!({ "expr": d }), json!({ "result": body }), text)
        }
        Command::Decompose { expr } => {
            let d = parse_dilator(expr)?;
            let blocks = decompose(&d)?;
            let mut text = format!("{d}:\n");
            for b in &blocks {
                let _ = writeln!(text, "  {}", serde_json::to_string(b).expect("json"));
            }
            plain(json!({ "expr": d }), json!({ "result": blocks }), text)
        }
        Command::Enum { expr, alpha } => {
            let d = parse_dilator(expr)?;
            let a = parse_ordinal(alpha)?;
            let budget = Budget::default();
            let elems = enum_elements(&d, &ordinal_ambient(&a, &budget), &budget, &ocmp)?;
            let shown: Vec<&Element> = elems.iter().take(cli.prefix).collect();
            let mut text = String::new();
            for e in &shown {
                let _ = writeln!(text, "{e}");
            }
            plain(json!({ "expr": d, "alpha": a, "prefix": cli.prefix }), json!({ "result": shown }), text)
        }
        Command::Compare { expr, left, right } => {
            let d = parse_dilator(expr)?;
            let (x, y) = (parse_element(left)?, parse_element(right)?);
            let mut cache = ImportanceCache::default();
            for e in [&x, &y] {
                if !is_element(&d, e, &ocmp, &mut cache)? {
                    return Err(Error::Usage(format!("{e} is not an element of {d}")));
                }
            }
            let sign = match compare_elements(&x, &y, &ocmp)? {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            plain(
                json!({ "expr": d, "left": x, "right": y }),
                json!({ "result": sign }),
                format!("{x} {sign} {y}\n"),
            )
        }
        Command::Jeval { expr, steps } | Command::Jprime { expr, steps } | Command::Jplus { expr, steps } => {
            let d = parse_dilator(expr)?;
            let g = parse_ordinal(&cli.gamma)?;
            let (res, mode, evaluated): (JResult, Mode, DilatorExpr) = match cli.command {
                Command::Jeval { .. } => (j_eval(&d, &g)?, Mode::J, d.clone()),
                Command::Jprime { .. } => (jprime_eval(&d, &g)?, Mode::JPrime, d.clone()),
                _ => (jplus_eval(&d, &g)?, Mode::JPrime, jplus_dilator(&d)),
            };
            let audit = j_guard_report(mode, &evaluated, &g, &res);
            let mut body = json!({ "value": res.value, "guardAudit": audit });
            if *steps {
                body["steps"] = to_value(&res.steps);
            }
            let mut text = format!("{verb}({d}, {g}) = {}\n", res.value);
            let _ = writeln!(
                text,
                "  guards eta = {}, xi = {}; enlarged guards give {}",
                res.eta, res.xi, audit.value_enlarged
            );
            if *steps {
                for (i, s) in res.steps.iter().enumerate() {
                    let parent = s.parent.map_or("-".into(), |p| p.to_string());
                    let _ = writeln!(text, "  {i:>4} <- {parent:>4}  {:<12} {} = {}", to_value(&s.clause).as_str().unwrap_or(""), s.expr, s.value);
                }
            }
            let code = if audit.identical && audit.ranks_decrease { 0 } else { 1 };
            Report { verb, inputs: json!({ "expr": d, "gamma": g }), body, text, code }
        }
        Command::PsiEnum { expr } => {
            let d = parse_dilator(expr)?;
            let g = parse_ordinal(&cli.gamma)?;
            let budget = PsiBudget { depth: cli.depth, ..PsiBudget::default() };
            let terms = psi_enum(&PsiOrder::new(d.clone(), g.clone()), &budget)?;
            let shown: Vec<String> = terms.iter().take(cli.prefix).map(|t| t.to_string()).collect();
            let text = shown.iter().map(|t| format!("{t}\n")).collect();
            plain(json!({ "expr": d, "gamma": g, "depth": cli.depth, "prefix": cli.prefix }), json!({ "result": shown }), text)
        }
        Command::PsiOtp { expr } => {
            let d = parse_dilator(expr)?;
            let g = parse_ordinal(&cli.gamma)?;
            let v = psi_clause_otp(&d, &g)?;
            plain(json!({ "expr": d, "gamma": g }), json!({ "value": v }), format!("psi {d}^{g} = {v}\n"))
        }
        Command::Check { suite } => {
            let opts = SuiteOptions { prefix: cli.prefix, depth: cli.depth, trials: cli.trials, seed: cli.seed };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let reports = names.iter().map(|n| run_suite(n, &opts)).collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.passed);
            let text = reports.iter().map(suite_text).collect();
            Report {
                verb,
                inputs: json!({ "suite": suite, "options": opts }),
                body: json!({ "result": { "passed": passed, "suites": reports } }),
                text,
                code: if passed { 0 } else { 1 },
            }
        }
        Command::Run { .. } => unreachable!("handled in run"),
    })
}

fn suite_text(r: &SuiteReport) -> String {
    let mut t = format!(
        "{} {} ({} instances, {} ms)\n",
        if r.passed { "PASS" } else { "FAIL" },
        r.suite,
        r.instances,
        r.millis
    );
    for s in &r.sections {
        let _ = writeln!(t, "  {}: {} instances, {} outside the fragment", s.name, s.instances, s.skipped.len());
        for v in &s.violations {
            let _ = writeln!(t, "    violation: {v}");
        }
    }
    t
}

fn run_file(path: &str, format: Format) -> Outcome {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return Outcome { code: 3, stdout: format!("error: cannot read {path}: {e}\n") },
    };
    let mut code = 0;
    let mut stdout = String::new();
    for (n, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let out = match split_words(line) {
            Some(words) if words.first().map(String::as_str) == Some("run") => {
                Outcome { code: 3, stdout: format!("error: line {}: scenario files cannot nest `run`\n", n + 1) }
            }
            Some(mut words) => {
                words.insert(0, "dilator".into());
                if format == Format::Json && !words.iter().any(|w| w == "--format") {
                    words.extend(["--format".into(), "json".into()]);
                }
                run_args(words)
            }
            None => Outcome { code: 3, stdout: format!("error: line {}: unbalanced quotes\n", n + 1) },
        };
        if format == Format::Text {
            let _ = writeln!(stdout, "$ {line}");
        }
        stdout.push_str(&out.stdout);
        code = code.max(out.code);
    }
    Outcome { code, stdout }
}

/// Splits a scenario line into words; double quotes group words.
fn split_words(line: &str) -> Option<Vec<String>> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut has = false;
    for c in line.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                has = true;
            }
            c if c.is_whitespace() && !quoted => {
                if has {
                    words.push(std::mem::take(&mut cur));
                    has = false;
                }
            }
            c => {
                cur.push(c);
                has = true;
            }
        }
    }
    if quoted {
        return None;
    }
    if has {
        words.push(cur);
    }
    Some(words)
}

fn ocmp(a: &u32, b: &u32) -> Ordering {
    a.cmp(b)
}

// ---------------------------------------------------------------------------
// Element syntax, as printed: `#b`, `id(a)`, `L.e`, `R.e`, `k:e`, `w{e, ...}`, `[e]`.

/// Parses an element over an ordinal: every position is an ordinal.
pub fn parse_element(s: &str) -> Result<Element> {
    let mut p = ElemParser { src: s.as_bytes(), pos: 0 };
    let e = p.elem()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("end of element"));
    }
    Ok(e)
}

struct ElemParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ElemParser<'_> {
    fn error(&self, expected: &str) -> Error {
        Error::Parse { position: self.pos, expected: vec![expected.to_string()] }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(s))
        }
    }

    /// An ordinal runs until an unmatched `)`, or a `,`, `}` or `]` outside parentheses.
    fn ordinal(&mut self) -> Result<Ordinal> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(&c) = self.src.get(self.pos) {
            match c {
                b'(' => depth += 1,
                b')' if depth == 0 => break,
                b')' => depth -= 1,
                b',' | b'}' | b']' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).map_err(|_| self.error("ordinal"))?;
        text.trim().parse().map_err(|_| Error::Parse { position: start, expected: vec!["ordinal".into()] })
    }

    fn elem(&mut self) -> Result<Element> {
        self.skip_ws();
        if self.eat("#") {
            return Ok(Elem::Const(self.ordinal()?));
        }
        if self.eat("id(") {
            let a = self.ordinal()?;
            self.expect(")")?;
            return Ok(Elem::Id(Pt::Left(a)));
        }
        if self.eat("L.") {
            return Ok(Elem::Inl(Box::new(self.elem()?)));
        }
        if self.eat("R.") {
            return Ok(Elem::Inr(Box::new(self.elem()?)));
        }
        if self.eat("w{") {
            let mut xs = Vec::new();
            if !self.eat("}") {
                loop {
                    xs.push(self.elem()?);
                    if self.eat("}") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            return Ok(Elem::Cnf(xs));
        }
        if self.eat("[") {
            let x = self.elem()?;
            self.expect("]")?;
            return Ok(Elem::Layer(Box::new(x)));
        }
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos > start && self.eat(":") {
            let k = std::str::from_utf8(&self.src[start..self.pos - 1]).unwrap().trim().parse().map_err(|_| self.error("copy index"))?;
            return Ok(Elem::Copy(k, Box::new(self.elem()?)));
        }
        self.pos = start;
        Err(self.error("element"))
    }
}

/// Every element printed by `enum` parses back to itself.
pub fn element_syntax_roundtrip(d: &DilatorExpr, alpha: &Ordinal) -> Result<bool> {
    let budget = Budget::default();
    for e in enum_elements(d, &ordinal_ambient(alpha, &budget), &budget, &ocmp)? {
        if parse_element(&e.to_string())? != e {
            return Ok(false);
        }
        element::support(d, &e, &ocmp)?;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_line(line: &str) -> Outcome {
        run_args(std::iter::once("dilator").chain(line.split(' ')))
    }

    #[test]
    fn jeval_json() {
        let out = run_line("jeval Id --gamma w --format json");
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["value"], "w*3");
        assert_eq!(v["verb"], "jeval");
        assert_eq!(v["guardAudit"]["identical"], true);
    }

    #[test]
    fn classify_json() {
        let out = run_line("classify omega[Id] --format json");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"]["type"], "Omega");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_line("jeval Id+ --gamma w").code, 3);
        assert_eq!(run_line("frobnicate").code, 3);
        assert_eq!(run_line("jplus Id").code, 2);
        assert_eq!(run_line("check nonsense").code, 3);
    }

    #[test]
    fn element_syntax() {
        let e = parse_element("R.w{2:[id(w+1)], #3}").unwrap();
        assert_eq!(e.to_string(), "R.w{2:[id(w+1)], #3}");
        assert!(element_syntax_roundtrip(&"omega[Id] + Id*2".parse().unwrap(), &"w".parse().unwrap()).unwrap());
    }
}
