//! Command dispatch over an [`Instance`]: every command returns a
//! deterministic text report, a JSON value, and a pass/fail verdict.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::complex::{self, Cat, Complex, ComplexMor};
use crate::error::{Error, Result};
use crate::filtered::{self, FiltObj, FiltOpKind};
use crate::functor::{FctMor, FctObj};
use crate::generate::{self, trial_rng, Caps};
use crate::io::Instance;
use crate::rees;
use crate::tensor;
use crate::verify::{self, Suite, VerifyConfig};

pub const COMMANDS: [&str; 16] = [
    "check",
    "kappa",
    "rees",
    "resolution",
    "transpose",
    "op",
    "strict",
    "truncate",
    "cone",
    "cohomology",
    "lkappa",
    "tensor",
    "ring-check",
    "demo",
    "verify",
    "generate",
];

#[derive(Clone, Debug, Default)]
pub struct Args {
    /// Object names and other positional arguments.
    pub positional: Vec<String>,
    pub name: Option<String>,
    pub kind: Option<String>,
    pub cat: Option<String>,
    pub suite: Option<String>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub ok: bool,
    pub lines: Vec<String>,
    pub json: Value,
}

impl Report {
    fn new(ok: bool, lines: Vec<String>, json: Value) -> Self {
        Report { ok, lines, json }
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }

    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
        s.push('\n');
        s
    }
}

impl Args {
    /// The `i`-th object name, counting `--name` first.
    fn object(&self, i: usize) -> Result<&str> {
        let mut names = self.name.iter().chain(self.positional.iter());
        names.nth(i).map(|s| s.as_str()).ok_or_else(|| Error::Usage("missing object name".into()))
    }

    fn cat(&self) -> Result<Cat> {
        match self.cat.as_deref() {
            None | Some("filt") => Ok(Cat::Filt),
            Some("fct") => Ok(Cat::Fct),
            Some(c) => Err(Error::Usage(format!("unknown category `{c}`, expected fct or filt"))),
        }
    }

    fn degree(&self, i: usize) -> Result<Option<i64>> {
        match self.object(i) {
            Err(_) => Ok(None),
            Ok(s) => s.parse().map(Some).map_err(|_| Error::Usage(format!("`{s}` is not a degree"))),
        }
    }
}

fn dims(obj: &FctObj) -> String {
    obj.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn table(poset_names: &[String], rows: &[(&str, &[usize])]) -> Vec<String> {
    let width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0).max(1);
    let mut out = vec![format!(
        "{:width$}  {}",
        "",
        poset_names.iter().map(|n| format!("{n:>3}")).collect::<Vec<_>>().join(" ")
    )];
    for (label, values) in rows {
        let pad = width - label.chars().count();
        out.push(format!(
            "{label}{}  {}",
            " ".repeat(pad),
            values.iter().map(|v| format!("{v:>3}")).collect::<Vec<_>>().join(" ")
        ));
    }
    out
}

/// Runs `command`. Commands that build objects add them to `inst` under
/// names like `kappa(M)`.
pub fn run(command: &str, args: &Args, inst: &mut Instance) -> Result<Report> {
    match command {
        "check" => check(inst),
        "kappa" => kappa(args, inst),
        "rees" => rees_cmd(args, inst),
        "resolution" => resolution(args, inst),
        "transpose" => transpose(args, inst),
        "op" => op(args, inst),
        "strict" => strict(args, inst),
        "truncate" => truncate(args, inst),
        "cone" => cone(args, inst),
        "cohomology" => cohomology(args, inst),
        "lkappa" => lkappa(args, inst),
        "tensor" => tensor_cmd(args, inst),
        "ring-check" => ring_check(args, inst),
        "demo" => demo(args),
        "verify" => verify_cmd(args),
        "generate" => generate_cmd(args),
        other => Err(Error::UnknownCommand(other.into())),
    }
}

fn check(inst: &Instance) -> Result<Report> {
    let mut lines = vec![format!("poset: {} elements, top {}", inst.poset.len(), inst.poset.top_name())];
    let mut objs = serde_json::Map::new();
    for (n, f) in &inst.functors {
        let filt = filtered::is_filtered(f);
        lines.push(format!("functor {n}: dims {}{}", dims(f), if filt { ", filtered" } else { "" }));
        objs.insert(n.clone(), json!({"dims": f.dims(), "filtered": filt}));
    }
    for (n, m) in &inst.morphisms {
        lines.push(format!("morphism {n}: {} -> {}", m.src, m.dst));
    }
    for (n, c) in &inst.complexes {
        lines.push(format!("complex {n}: degrees {}..{}", c.complex.lo(), c.complex.hi()));
    }
    for (n, r) in &inst.rings {
        lines.push(format!("ring {n}: carrier {}", r.carrier));
    }
    for (n, m) in &inst.modules {
        lines.push(format!("module {n}: over {}, carrier {}", m.ring, m.carrier));
    }
    lines.push("all objects valid".into());
    Ok(Report::new(true, lines, json!({"valid": true, "functors": objs})))
}

fn kappa(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let k = filtered::kappa(inst.functor(name)?);
    let out = format!("kappa({name})");
    let line = format!("{out}: dims {}", dims(k.obj.underlying()));
    let json = json!({"dims": k.obj.dims(), "unit_iso": k.unit.is_iso()});
    inst.add_morphism(&format!("eta({name})"), k.unit, name, &out)?;
    Ok(Report::new(true, vec![line], json))
}

fn rees_cmd(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let r = rees::rees(inst.functor(name)?);
    let ok = r.check_identities().is_ok();
    let out = format!("rees({name})");
    let lines = vec![
        format!("{out}: dims {}", dims(r.rees.underlying())),
        format!("splitting identities: {}", if ok { "hold" } else { "FAIL" }),
    ];
    let json = json!({"dims": r.rees.dims(), "identities": ok});
    inst.add_morphism(&format!("epsilon({name})"), r.epsilon, &out, name)?;
    Ok(Report::new(ok, lines, json))
}

fn resolution(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let m = inst.functor(name)?.clone();
    let res = rees::rees_resolution(&m);
    let exact = filtered::strictly_exact_pair(&res.incl, &res.eps)?.exact;
    let ok = exact && res.eps.is_pointwise_surjective() && res.incl.is_pointwise_injective();
    let lines = vec![
        format!("K: dims {}", dims(res.kernel.underlying())),
        format!("Rees({name}): dims {}", dims(res.rees.rees.underlying())),
        format!("0 -> K -> Rees({name}) -> {name} -> 0 exact: {ok}"),
    ];
    let json = json!({"kernel": res.kernel.dims(), "rees": res.rees.rees.dims(), "exact": ok});
    let (k, r) = (format!("K({name})"), format!("rees({name})"));
    inst.add_morphism(&format!("incl({name})"), res.incl, &k, &r)?;
    inst.add_morphism(&format!("epsilon({name})"), res.eps, &r, name)?;
    Ok(Report::new(ok, lines, json))
}

fn transpose(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let f = inst.morphism(name)?.clone();
    let t = rees::adjoint_transpose(&f)?;
    let back = rees::adjoint_transpose_inv(f.src(), &t)?;
    let ok = back == f;
    let lines = vec![
        format!("transpose({name}): kappa(src) dims {} -> dims {}", dims(t.src()), dims(t.dst())),
        format!("inverse transposition recovers {name}: {ok}"),
    ];
    let src_name = inst.morphisms[name].src.clone();
    let dst_name = inst.morphisms[name].dst.clone();
    inst.add_morphism(&format!("transpose({name})"), t, &format!("kappa({src_name})"), &dst_name)?;
    Ok(Report::new(ok, lines, json!({"round_trip": ok})))
}

fn parse_kind(args: &Args) -> Result<FiltOpKind> {
    match args.kind.as_deref() {
        Some("ker") => Ok(FiltOpKind::Ker),
        Some("coker") => Ok(FiltOpKind::Coker),
        Some("im") => Ok(FiltOpKind::Im),
        Some("coim") => Ok(FiltOpKind::Coim),
        Some(k) => Err(Error::Usage(format!("unknown kind `{k}`, expected ker, coker, im or coim"))),
        None => Err(Error::Usage("op needs --kind ker|coker|im|coim".into())),
    }
}

fn op(args: &Args, inst: &mut Instance) -> Result<Report> {
    let kind = parse_kind(args)?;
    let name = args.object(0)?;
    let f = inst.morphism(name)?.clone();
    let (obj, structural) = match args.cat()? {
        Cat::Filt => {
            let o = filtered::filt_op(kind, &f)?;
            (o.obj.into_inner(), o.structural)
        }
        Cat::Fct => match kind {
            FiltOpKind::Ker => {
                let k = f.kernel();
                (k.obj, k.incl)
            }
            FiltOpKind::Coker => {
                let q = f.cokernel();
                (q.obj, q.proj)
            }
            FiltOpKind::Im => {
                let i = f.image();
                (i.obj, i.incl)
            }
            FiltOpKind::Coim => {
                let c = f.coimage();
                (c.obj, c.proj)
            }
        },
    };
    let label = format!("{}({name})", args.kind.as_deref().unwrap_or_default());
    let line = format!("{label}: dims {}", dims(&obj));
    let json = json!({"kind": args.kind, "dims": obj.dims(), "filtered": filtered::is_filtered(&obj)});
    let named = &inst.morphisms[name];
    let (src, dst) = match kind {
        FiltOpKind::Ker => (label.clone(), named.src.clone()),
        FiltOpKind::Im => (label.clone(), named.dst.clone()),
        FiltOpKind::Coker => (named.dst.clone(), label.clone()),
        FiltOpKind::Coim => (named.src.clone(), label.clone()),
    };
    inst.add_morphism(&format!("{label}.map"), structural, &src, &dst)?;
    Ok(Report::new(true, vec![line], json))
}

fn strict(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let f = inst.morphism(name)?;
    let s = filtered::strictness(f)?;
    let p = f.poset();
    let cart: Vec<String> = (0..p.len()).map(|x| format!("{}:{}", p.name(x), s.cartesian_ok[x])).collect();
    let lines = vec![
        format!("{name} strict: {}", s.is_strict),
        format!("coim -> im pointwise injective: {}", s.coim_to_im.is_pointwise_injective()),
        format!("cartesian squares: {}", cart.join(" ")),
    ];
    let json = json!({"strict": s.is_strict, "cartesian": s.cartesian_ok});
    Ok(Report::new(true, lines, json))
}

fn complex_dims(x: &Complex) -> Vec<String> {
    (x.lo()..=x.hi()).map(|n| format!("  X^{n}: dims {}", dims(&x.term(n)))).collect()
}

fn complex_json(x: &Complex) -> Value {
    let terms: serde_json::Map<String, Value> =
        (x.lo()..=x.hi()).map(|n| (n.to_string(), json!(x.term(n).dims()))).collect();
    Value::Object(terms)
}

fn truncate(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let n = args.degree(1)?.ok_or_else(|| Error::Usage("truncate needs a degree".into()))?;
    let x = inst.complex(name)?.clone();
    let cat = args.cat()?;
    let (t, label) = match args.kind.as_deref() {
        None | Some("le") => (complex::truncate_le(&x, n, cat)?, format!("tau<={n}({name})")),
        Some("ge") => (complex::truncate_ge(&x, n, cat)?, format!("tau>={n}({name})")),
        Some(k) => return Err(Error::Usage(format!("unknown truncation `{k}`, expected le or ge"))),
    };
    let mut lines = vec![format!("{label}:")];
    lines.extend(complex_dims(&t.complex));
    let json = complex_json(&t.complex);
    inst.add_complex(&label, t.complex)?;
    Ok(Report::new(true, lines, json))
}

fn cone(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let f = inst.morphism(name)?.clone();
    let phi = ComplexMor::new(Complex::single(f.src().clone(), 0), Complex::single(f.dst().clone(), 0), |_| {
        f.clone()
    })?;
    let c = complex::mapping_cone(&phi);
    let label = format!("cone({name})");
    let mut lines = vec![format!("{label}:")];
    lines.extend(complex_dims(&c.complex));
    let json = complex_json(&c.complex);
    inst.add_complex(&label, c.complex)?;
    Ok(Report::new(true, lines, json))
}

fn cohomology(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let x = inst.complex(name)?;
    let degrees: Vec<i64> = match args.degree(1)? {
        Some(n) => vec![n],
        None => (x.lo()..=x.hi()).collect(),
    };
    let mut lines = Vec::new();
    let mut out = serde_json::Map::new();
    for n in degrees {
        let d = x.cohomology_dims(n);
        lines.push(format!("H^{n}({name}): dims {}", d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")));
        out.insert(n.to_string(), json!(d));
    }
    Ok(Report::new(true, lines, Value::Object(out)))
}

fn lkappa(args: &Args, inst: &mut Instance) -> Result<Report> {
    let name = args.object(0)?;
    let x = inst.complex(name)?.clone();
    let lk = complex::lkappa(&x)?;
    let qis = complex::qis_check(&lk.augmentation);
    let label = format!("Lkappa({name})");
    let mut lines = vec![format!("{label}:")];
    lines.extend(complex_dims(&lk.total));
    lines.push(format!("augmentation is a quasi-isomorphism: {qis}"));
    let json = json!({"terms": complex_json(&lk.total), "qis": qis});
    inst.add_complex(&label, lk.total)?;
    Ok(Report::new(qis, lines, json))
}

fn tensor_cmd(args: &Args, inst: &mut Instance) -> Result<Report> {
    let (a, b) = (args.object(0)?, args.object(1)?);
    let (m1, m2) = (inst.functor(a)?, inst.functor(b)?);
    let (d, label) = match args.cat()? {
        Cat::Fct => (tensor::tensor_fct(m1, m2)?.obj.dims().to_vec(), format!("{a} (x) {b}")),
        Cat::Filt => {
            let t = tensor::tensor_filt(&FiltObj::new(m1.clone())?, &FiltObj::new(m2.clone())?)?;
            (t.dims().to_vec(), format!("{a} (x)_F {b}"))
        }
    };
    let line = format!("{label}: dims {}", d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
    Ok(Report::new(true, vec![line], json!({"dims": d})))
}

fn ring_check(args: &Args, inst: &Instance) -> Result<Report> {
    let names: Vec<String> = match args.object(0) {
        Ok(n) => vec![n.to_string()],
        Err(_) => inst.rings.keys().chain(inst.modules.keys()).cloned().collect(),
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for n in &names {
        let verdict = if let Ok(r) = inst.ring(n) {
            r.validate()
        } else {
            inst.module(n)?.validate()
        };
        match verdict {
            Ok(()) => lines.push(format!("{n}: valid")),
            Err(e) => {
                ok = false;
                lines.push(format!("{n}: {e}"));
            }
        }
    }
    if names.is_empty() {
        lines.push("no rings or modules".into());
    }
    Ok(Report::new(ok, lines, json!({"valid": ok})))
}

fn demo(args: &Args) -> Result<Report> {
    match args.object(0) {
        Ok("coim-vs-im") | Err(_) => {}
        Ok(other) => return Err(Error::Usage(format!("unknown demo `{other}`"))),
    }
    let r = verify::example_report()?;
    let mut lines = vec!["f: M' -> M, the inclusion of polynomial filtrations shifted by one".to_string()];
    lines.extend(table(
        &r.elements,
        &[
            ("M'", &r.src),
            ("M", &r.dst),
            ("ker f", &r.ker),
            ("coker f", &r.coker),
            ("im f", &r.im),
            ("coim f", &r.coim),
            ("coker f (pointwise)", &r.pointwise_coker),
        ],
    ));
    let mono_epi = r.ker.iter().all(|&d| d == 0) && r.coker.iter().all(|&d| d == 0);
    let verdict = if mono_epi && !r.is_strict {
        "f is mono+epi but not strict"
    } else if r.is_strict {
        "f is strict"
    } else {
        "f is not strict"
    };
    lines.push(format!("coim f -> im f pointwise injective: {}", r.coim_to_im_injective));
    lines.push(format!("filtered cokernel of coim f -> im f is zero: {}", r.coim_to_im_filt_coker_zero));
    lines.push(verdict.into());
    let ok = mono_epi && !r.is_strict && r.coim_to_im_injective && r.coim_to_im_filt_coker_zero;
    Ok(Report::new(ok, lines, serde_json::to_value(&r).expect("report serializes")))
}

fn verify_cmd(args: &Args) -> Result<Report> {
    let suite: Suite = args
        .suite
        .as_deref()
        .or(args.positional.first().map(|s| s.as_str()))
        .ok_or_else(|| Error::Usage("verify needs --suite".into()))?
        .parse()?;
    let mut cfg = VerifyConfig::new(suite);
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    cfg.seed = args.seed.unwrap_or(0);
    let r = verify::run_suite(&cfg);
    let mut lines = vec![format!("{}/{} passed", r.passed, r.trials)];
    for f in &r.failures {
        lines.push(format!("  trial {} (seed {}): {}", f.trial, f.seed, f.reason));
    }
    Ok(Report::new(r.ok(), lines, serde_json::to_value(&r).expect("report serializes")))
}

fn generate_cmd(args: &Args) -> Result<Report> {
    let caps = Caps::default();
    let mut rng = trial_rng(args.seed.unwrap_or(0), 0);
    let kind = args.kind.as_deref().unwrap_or("functor");
    let inst = match kind {
        "functor" | "filtered" | "morphism" => {
            let p = generate::random_poset(&mut rng, caps.max_poset);
            let mut inst = Instance::new(p.clone());
            let m = match kind {
                "filtered" => generate::random_filtered(&mut rng, &p, caps.max_dim).into_inner(),
                _ => generate::random_functor(&mut rng, &p, caps.max_dim),
            };
            inst.add_functor("M", m.clone())?;
            if kind == "morphism" {
                let n = generate::random_functor(&mut rng, &p, caps.max_dim);
                let f: FctMor = generate::random_morphism(&mut rng, &m, &n);
                inst.add_morphism("f", f, "M", "N")?;
            }
            inst
        }
        "complex" => {
            let p = generate::random_poset(&mut rng, caps.max_poset);
            let mut inst = Instance::new(p.clone());
            inst.add_complex("X", generate::random_complex(&mut rng, &p, 3, 3))?;
            inst
        }
        "module" => {
            let ring = Arc::new(tensor::LambdaRing::truncated_polynomial(caps.max_bound));
            let mut inst = Instance::over_monoid(ring.monoid().clone());
            inst.add_ring("A", ring.clone())?;
            inst.add_module("M", "A", generate::random_module(&mut rng, &ring, 2))?;
            inst
        }
        k => return Err(Error::Usage(format!("unknown kind `{k}`"))),
    };
    let text = inst.to_json();
    let json: Value = serde_json::from_str(&text)?;
    Ok(Report::new(true, vec![text.trim_end().to_string()], json))
}
