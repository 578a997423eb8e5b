//! Randomized verification suites. Trial `i` of a run with seed `s` draws
//! its instance from `trial_rng(s, i)`, so reports do not depend on
//! scheduling.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{self, Complex};
use crate::error::{Error, Result};
use crate::filtered::{self, FiltOpKind};
use crate::functor::{self, FctMor, FctObj};
use crate::generate::{self, trial_rng, Caps};
use crate::io::Instance;
use crate::linalg::Matrix;
use crate::rees;
use crate::scalar::Rat;
use crate::tensor::{self, LambdaModule, LambdaRing};

/// The shipped instance `M' -> M` on the chain `0 <= 1 <= 2 <= 3 <= ⊤`.
pub const COIM_VS_IM: &str = include_str!("../instances/coim_vs_im.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Example,
    Strictness,
    QuasiAbelian,
    Main1,
    Heart,
    Rees,
    Adjunction,
    KappaTensor,
    TensorDims,
    Main2,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Example,
        Suite::Strictness,
        Suite::QuasiAbelian,
        Suite::Main1,
        Suite::Heart,
        Suite::Rees,
        Suite::Adjunction,
        Suite::KappaTensor,
        Suite::TensorDims,
        Suite::Main2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Example => "example",
            Suite::Strictness => "strictness",
            Suite::QuasiAbelian => "quasi-abelian",
            Suite::Main1 => "main1",
            Suite::Heart => "heart",
            Suite::Rees => "rees",
            Suite::Adjunction => "adjunction",
            Suite::KappaTensor => "kappa-tensor",
            Suite::TensorDims => "tensor-dims",
            Suite::Main2 => "main2",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Example => 1,
            Suite::TensorDims => 5,
            Suite::Strictness | Suite::QuasiAbelian | Suite::Main1 => 200,
            _ => 100,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub caps: Caps,
}

impl VerifyConfig {
    pub fn new(suite: Suite) -> Self {
        VerifyConfig { suite, trials: suite.default_trials(), seed: 0, caps: Caps::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<TrialFailure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }

    pub fn summary(&self) -> String {
        format!("{}: {}/{} passed", self.suite, self.passed, self.trials)
    }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run_suite(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let outcomes: Vec<(usize, Check)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, i);
            (i, run_trial(cfg.suite, i, &mut rng, &cfg.caps))
        })
        .collect();
    let failures: Vec<TrialFailure> = outcomes
        .into_iter()
        .filter_map(|(i, r)| {
            r.err().map(|reason| TrialFailure { trial: i, seed: cfg.seed.wrapping_add(i as u64), reason })
        })
        .collect();
    SuiteReport {
        suite: cfg.suite,
        trials: cfg.trials,
        passed: cfg.trials - failures.len(),
        failures,
        elapsed: start.elapsed(),
    }
}

fn run_trial(suite: Suite, i: usize, rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    match suite {
        Suite::Example => example_check(),
        Suite::Strictness => strictness_trial(rng, caps),
        Suite::QuasiAbelian => quasi_abelian_trial(rng, caps),
        Suite::Main1 => main1_trial(rng, caps),
        Suite::Heart => heart_trial(rng, caps),
        Suite::Rees => rees_trial(rng, caps),
        Suite::Adjunction => adjunction_trial(rng, caps),
        Suite::KappaTensor => kappa_tensor_trial(rng, caps),
        Suite::TensorDims => tensor_dims_check(i % 5),
        Suite::Main2 => main2_trial(rng, caps),
    }
}

/// Dimension tables of the shipped example.
#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub elements: Vec<String>,
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub ker: Vec<usize>,
    pub coker: Vec<usize>,
    pub im: Vec<usize>,
    pub coim: Vec<usize>,
    pub pointwise_coker: Vec<usize>,
    pub is_strict: bool,
    pub coim_to_im_injective: bool,
    pub coim_to_im_filt_coker_zero: bool,
}

pub fn example_report() -> Result<ExampleReport> {
    let inst = Instance::from_json(COIM_VS_IM)?;
    example_report_for(inst.morphism("f")?)
}

pub fn example_report_for(f: &FctMor<Rat>) -> Result<ExampleReport> {
    let op = |k| filtered::filt_op(k, f).map(|o| o.obj.dims().to_vec());
    let s = filtered::strictness(f)?;
    let c = filtered::filt_op(FiltOpKind::Coker, &s.coim_to_im)?;
    Ok(ExampleReport {
        elements: f.poset().elements().to_vec(),
        src: f.src().dims().to_vec(),
        dst: f.dst().dims().to_vec(),
        ker: op(FiltOpKind::Ker)?,
        coker: op(FiltOpKind::Coker)?,
        im: op(FiltOpKind::Im)?,
        coim: op(FiltOpKind::Coim)?,
        pointwise_coker: f.cokernel().obj.dims().to_vec(),
        is_strict: s.is_strict,
        coim_to_im_injective: s.coim_to_im.is_pointwise_injective(),
        coim_to_im_filt_coker_zero: c.obj.underlying().is_zero(),
    })
}

fn example_check() -> Check {
    let r = lift(example_report())?;
    ensure(r.im == [2, 3, 4, 5, 5], || format!("im dims {:?}", r.im))?;
    ensure(r.coim == [1, 2, 3, 4, 5], || format!("coim dims {:?}", r.coim))?;
    ensure(!r.is_strict, || "f reported strict".into())?;
    ensure(r.coim_to_im_injective, || "coim -> im not pointwise injective".into())?;
    ensure(r.coim_to_im_filt_coker_zero, || "coim -> im has nonzero filtered cokernel".into())
}

pub mod oracle {
    //! Filtered kernels and cokernels computed without the closed formulas:
    //! kernels by probing with representables through `hom_space`,
    //! cokernels by saturating the image until the quotient is filtered.

    use super::*;

    /// Pointwise bases of `{g ∈ Hom(h_a, M'): f∘g = 0}`, read off at `a`.
    pub fn kernel_bases(f: &FctMor<Rat>) -> Vec<Matrix<Rat>> {
        let p = f.poset().clone();
        (0..p.len())
            .map(|a| {
                let h = generate::representable::<Rat>(&p, a);
                let basis = functor::hom_space(&h, f.src());
                let values = Matrix::hstack_all(f.src().dim(a), &basis.iter().map(|g| g.comp(a).clone()).collect::<Vec<_>>());
                let composed: Vec<Vec<Rat>> = basis.iter().map(|g| flatten(&f.after(g))).collect();
                let rows = composed.first().map_or(0, |c| c.len());
                let system = Matrix::from_fn(rows, basis.len(), |r, c| composed[c][r].clone());
                values.compose(&system.kernel_basis()).image_basis()
            })
            .collect()
    }

    fn flatten(f: &FctMor<Rat>) -> Vec<Rat> {
        f.components().iter().flat_map(|c| c.entries().to_vec()).collect()
    }

    /// The smallest subfunctor `S ⊇ im f` with `M/S` filtered: repeatedly
    /// add images along transitions and preimages of `S(μ)`.
    pub fn saturation_bases(f: &FctMor<Rat>) -> Vec<Matrix<Rat>> {
        let m = f.dst();
        let p = m.poset().clone();
        let n = p.len();
        let mut s: Vec<Matrix<Rat>> = (0..n).map(|x| f.comp(x).image_basis()).collect();
        loop {
            let mut changed = false;
            for (a, b) in p.comparable_pairs() {
                if a == b {
                    continue;
                }
                let t = m.map(a, b);
                let pushed = s[b].hstack(&t.compose(&s[a])).image_basis();
                if pushed.cols() != s[b].cols() {
                    s[b] = pushed;
                    changed = true;
                }
                let quot = s[b].cokernel().projection;
                let pulled = s[a].hstack(&quot.compose(t).kernel_basis()).image_basis();
                if pulled.cols() != s[a].cols() {
                    s[a] = pulled;
                    changed = true;
                }
            }
            if !changed {
                return s;
            }
        }
    }

    /// `Some(c)` when `target = Σ c_i basis_i ∘ through` has exactly one solution.
    pub fn unique_factorization(
        basis: &[FctMor<Rat>],
        through: &FctMor<Rat>,
        target: &FctMor<Rat>,
        before: bool,
    ) -> Option<FctMor<Rat>> {
        let composed: Vec<FctMor<Rat>> =
            basis.iter().map(|b| if before { through.after(b) } else { b.after(through) }).collect();
        let flat: Vec<Vec<Rat>> = composed.iter().map(flatten).collect();
        let rows = flat.first().map_or(0, |c| c.len());
        let system = Matrix::from_fn(rows, basis.len(), |r, c| flat[c][r].clone());
        if system.rank() != basis.len() {
            return None;
        }
        let coeffs = functor::coordinates(&composed, target)?;
        let (src, dst) = (basis.first()?.src().clone(), basis.first()?.dst().clone());
        Some(FctMor::combination(&src, &dst, basis, &coeffs))
    }

    /// `q` and `q_o` out of the same object both annihilate `f` and factor
    /// uniquely through each other with inverse comparison maps.
    pub fn same_quotient(q: &FctMor<Rat>, q_o: &FctMor<Rat>) -> bool {
        let into_o = functor::hom_space(q.dst(), q_o.dst());
        let into_q = functor::hom_space(q_o.dst(), q.dst());
        if q.dst().is_zero() && q_o.dst().is_zero() {
            return true;
        }
        let (Some(a), Some(b)) =
            (unique_factorization(&into_o, q, q_o, false), unique_factorization(&into_q, q_o, q, false))
        else {
            return false;
        };
        a.after(&b) == FctMor::identity(q_o.dst()) && b.after(&a) == FctMor::identity(q.dst())
    }
}

fn same_subspaces(a: &[Matrix<Rat>], b: &[Matrix<Rat>]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_column_space(y))
}

fn kernels_of(f: &FctMor<Rat>) -> Vec<Matrix<Rat>> {
    f.components().iter().map(|c| c.kernel_basis()).collect()
}

fn check_kernel_against_oracle(f: &FctMor<Rat>, incl: &FctMor<Rat>, what: &str) -> Check {
    let bases = oracle::kernel_bases(f);
    ensure(same_subspaces(incl.components(), &bases), || format!("{what}: differs from hom-space kernel"))?;
    let p = f.poset().clone();
    for a in 0..p.len() {
        let h = generate::representable::<Rat>(&p, a);
        let into_k = functor::hom_space(&h, incl.src());
        for g in functor::hom_space(&h, f.src()) {
            if f.after(&g).is_zero() {
                ensure(oracle::unique_factorization(&into_k, incl, &g, true).is_some(), || {
                    format!("{what}: probe at {} does not factor uniquely", p.name(a))
                })?;
            }
        }
    }
    Ok(())
}

fn check_cokernel_against_oracle(f: &FctMor<Rat>, proj: &FctMor<Rat>, what: &str) -> Check {
    let s = oracle::saturation_bases(f);
    ensure(same_subspaces(&kernels_of(proj), &s), || format!("{what}: kernel differs from saturation"))?;
    let q_o = functor::sub_object(f.dst(), s).incl.cokernel();
    ensure(filtered::is_filtered(&q_o.obj), || format!("{what}: saturated quotient not filtered"))?;
    ensure(q_o.proj.after(f).is_zero() && proj.after(f).is_zero(), || format!("{what}: does not annihilate"))?;
    ensure(oracle::same_quotient(proj, &q_o.proj), || format!("{what}: no comparison isomorphism"))
}

fn strictness_trial(rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    let p = generate::random_poset(rng, caps.max_poset);
    let m1 = generate::random_filtered::<Rat>(rng, &p, caps.max_dim);
    let m2 = generate::random_filtered::<Rat>(rng, &p, caps.max_dim);
    let f = generate::random_morphism(rng, m1.underlying(), m2.underlying());
    let op = |k| lift(filtered::filt_op(k, &f));
    let (ker, coker, im, coim) = (op(FiltOpKind::Ker)?, op(FiltOpKind::Coker)?, op(FiltOpKind::Im)?, op(FiltOpKind::Coim)?);
    for o in [&ker, &coker, &im, &coim] {
        ensure(filtered::is_filtered(o.obj.underlying()), || "output not filtered".into())?;
    }
    check_kernel_against_oracle(&f, &ker.structural, "ker")?;
    check_cokernel_against_oracle(&f, &coker.structural, "coker")?;
    // im = ker(M -> coker), coim = coker(ker -> M').
    let q_o = functor::sub_object(f.dst(), oracle::saturation_bases(&f)).incl.cokernel();
    check_kernel_against_oracle(&q_o.proj, &im.structural, "im")?;
    ensure(functor::factor_through(&f, &im.structural).is_ok(), || "f does not factor through im".into())?;
    let k_o = functor::sub_object(f.src(), oracle::kernel_bases(&f));
    check_cokernel_against_oracle(&k_o.incl, &coim.structural, "coim")?;
    let s = lift(filtered::strictness(&f))?;
    ensure(s.coim_to_im.is_pointwise_injective(), || "coim -> im not injective".into())?;
    let c = lift(filtered::filt_op(FiltOpKind::Coker, &s.coim_to_im))?;
    ensure(c.obj.underlying().is_zero(), || "coim -> im not an epimorphism".into())
}

fn quasi_abelian_trial(rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    let p = generate::random_poset(rng, caps.max_poset);
    let filt = |rng: &mut ChaCha8Rng| generate::random_filtered::<Rat>(rng, &p, caps.max_dim).into_inner();
    // Base change: a strict epi N -> C is a filtered cokernel projection.
    let (x, n, m1) = (filt(rng), filt(rng), filt(rng));
    let h = generate::random_morphism(rng, &x, &n);
    let f = lift(filtered::filt_op(FiltOpKind::Coker, &h))?.structural;
    ensure(lift(filtered::is_strict_epi(&f))?, || "cokernel projection is not a strict epi".into())?;
    let g = generate::random_morphism(rng, &m1, f.dst());
    let pb = lift(filtered::pullback(&f, &g))?;
    ensure(f.after(&pb.to_left) == g.after(&pb.to_right), || "pullback square does not commute".into())?;
    ensure(lift(filtered::is_strict_epi(&pb.to_right))?, || "base change of a strict epi is not a strict epi".into())?;
    // Co-base change: a strict mono K -> N is a kernel inclusion.
    let (n, y, n2) = (filt(rng), filt(rng), filt(rng));
    let h = generate::random_morphism(rng, &n, &y);
    let f = lift(filtered::filt_op(FiltOpKind::Ker, &h))?.structural;
    ensure(lift(filtered::is_strict_mono(&f))?, || "kernel inclusion is not a strict mono".into())?;
    let u = generate::random_morphism(rng, f.src(), &n2);
    let po = lift(filtered::pushout_filt(&f, &u))?;
    ensure(po.from_left.after(&f) == po.from_right.after(&u), || "pushout square does not commute".into())?;
    ensure(lift(filtered::is_strict_mono(&po.from_right))?, || "co-base change of a strict mono is not a strict mono".into())
}

fn main1_trial(rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    let p = generate::random_poset(rng, caps.max_poset);
    let x: Complex<Rat> = generate::random_complex(rng, &p, 3, caps.max_dim.min(3));
    let lk = lift(complex::lkappa(&x))?;
    ensure(lk.total.is_filtered(), || "Lκ total complex is not filtered".into())?;
    ensure(complex::qis_check(&lk.augmentation), || "augmentation is not a quasi-isomorphism".into())?;
    for n in (x.lo() - 2)..=(x.hi() + 1) {
        ensure(lk.total.cohomology_dims(n) == x.cohomology_dims(n), || format!("H^{n} dims differ"))?;
    }
    let nf = generate::random_filtered::<Rat>(rng, &p, caps.max_dim);
    let res = rees::rees_resolution(nf.underlying());
    ensure(res.incl.is_pointwise_injective(), || "K -> Rees(N) not injective".into())?;
    ensure(res.eps.is_pointwise_surjective(), || "ε not surjective".into())?;
    ensure(lift(filtered::strictly_exact_pair(&res.incl, &res.eps))?.exact, || "Rees resolution not strictly exact".into())?;
    ensure(lift(filtered::is_strict_epi(&res.eps))?, || "ε is not a strict epi".into())
}

fn heart_trial(rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    let m = generate::random_instance_functor(rng, caps);
    let cmp = lift(complex::heart_round_trip(&m))?;
    ensure(cmp.is_iso() && cmp.dst() == &m, || "round trip comparison is not an isomorphism onto M".into())
}

fn rees_trial(rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    let p = generate::random_poset(rng, caps.max_poset);
    let m = generate::random_functor::<Rat>(rng, &p, caps.max_dim);
    let nf = generate::random_filtered::<Rat>(rng, &p, caps.max_dim);
    for obj in [&m, nf.underlying()] {
        let r = rees::rees(obj);
        lift(r.check_identities())?;
        ensure(filtered::is_filtered(r.rees.underlying()), || "Rees(M) not filtered".into())?;
    }
    Ok(())
}

fn adjunction_trial(rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    let p = generate::random_poset(rng, caps.max_poset);
    let src = generate::random_functor::<Rat>(rng, &p, caps.max_dim.min(3));
    let dst = generate::random_filtered::<Rat>(rng, &p, caps.max_dim.min(3)).into_inner();
    let k = filtered::kappa(&src);
    let left = functor::hom_space(&src, &dst);
    let right = functor::hom_space(k.obj.underlying(), &dst);
    ensure(left.len() == right.len(), || format!("hom dims {} vs {}", left.len(), right.len()))?;
    for f in &left {
        let t = lift(rees::adjoint_transpose(f))?;
        ensure(lift(rees::adjoint_transpose_inv(&src, &t))? == *f, || "transpose∘transpose⁻¹ ≠ id".into())?;
    }
    for g in &right {
        let t = lift(rees::adjoint_transpose_inv(&src, g))?;
        ensure(lift(rees::adjoint_transpose(&t))? == *g, || "transpose⁻¹∘transpose ≠ id".into())?;
    }
    Ok(())
}

fn kappa_tensor_trial(rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    let b1 = rng.gen_range(0..=caps.max_bound);
    let b2 = rng.gen_range(0..=caps.max_bound);
    let m1 = generate::random_chain_functor::<Rat>(rng, b1, caps.max_dim.min(3));
    let m2 = generate::random_chain_functor::<Rat>(rng, b2, caps.max_dim.min(3));
    let k = lift(tensor::kappa_tensor_compat(&m1, &m2))?;
    ensure(k.comparison.is_iso(), || "comparison not an isomorphism".into())
}

/// Monomials `x^i y^j` with `i, j <= n` and `i + j <= λ`.
pub fn monomial_count(n: usize, lambda: usize) -> usize {
    (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).filter(|&(i, j)| i + j <= lambda).count()
}

fn tensor_dims_check(n: usize) -> Check {
    let p = LambdaRing::<Rat>::truncated_polynomial(n).carrier().clone();
    let t = lift(tensor::tensor_fct(&p, &p))?;
    for lambda in 0..=n {
        let (got, want) = (t.obj.dim(lambda), monomial_count(n, lambda));
        ensure(got == want, || format!("N={n} λ={lambda}: {got} vs {want}"))?;
    }
    Ok(())
}

fn main2_trial(rng: &mut ChaCha8Rng, caps: &Caps) -> Check {
    let bound = rng.gen_range(1..=caps.max_bound.max(1));
    let ring = Arc::new(LambdaRing::<Rat>::truncated_polynomial(bound));
    let m = generate::random_module(rng, &ring, 2);
    lift(m.validate())?;

    // Filtered modules: strictly exact resolution and κ_A ∘ ι_A ≅ id.
    let (fm, _) = lift(tensor::kappa_module(&m))?;
    ensure(fm.is_filtered(), || "κ_A(M) not filtered".into())?;
    let res = lift(tensor::module_resolution(&fm))?;
    check_resolution(&res, &fm)?;
    let (back, unit) = lift(tensor::kappa_module(&tensor::iota_module(&fm)))?;
    ensure(unit.is_iso(), || "κ_A ι_A unit not an isomorphism".into())?;
    lift(tensor::check_linear(&unit, &fm, &back))?;

    // Arbitrary modules: H^0 of the resolution recovers M with its action.
    let res = lift(tensor::module_resolution(&m))?;
    check_resolution(&res, &m)?;
    let (h0, proj) = lift(tensor::module_cokernel(&res.incl, &res.kernel, &res.rees))?;
    let cmp = lift(functor::descend(&res.eps, &proj))?;
    ensure(cmp.is_iso(), || "H^0 -> M not an isomorphism".into())?;
    lift(tensor::check_linear(&cmp, &h0, &m))?;
    for (obj, what) in [(&res.kernel, "K"), (&res.rees, "A⊗Rees(M)")] {
        let (k, unit) = lift(tensor::kappa_module(obj))?;
        ensure(unit.is_iso(), || format!("κ_A unit on {what} not an isomorphism"))?;
        lift(tensor::check_linear(&unit, obj, &k))?;
    }

    // ε for the Rees object with the summand-placement action.
    let (naive, rs) = tensor::naive_rees_action(&m);
    lift(tensor::check_linear(&rs.epsilon, &naive, &m))
}

fn check_resolution(res: &tensor::ModuleResolution<Rat>, m: &LambdaModule<Rat>) -> Check {
    lift(tensor::check_linear(&res.eps, &res.rees, m))?;
    lift(tensor::check_linear(&res.incl, &res.kernel, &res.rees))?;
    ensure(res.rees.is_filtered() && res.kernel.is_filtered(), || "resolution terms not filtered".into())?;
    ensure(res.incl.is_pointwise_injective(), || "K -> A⊗Rees(M) not injective".into())?;
    ensure(res.eps.is_pointwise_surjective(), || "ε not surjective".into())?;
    ensure(lift(filtered::strictly_exact_pair(&res.incl, &res.eps))?.exact, || "resolution not strictly exact".into())
}

/// The polynomial filtration `P(n) = span(1, ..., x^n)` on `{0..bound}`.
pub fn polynomial_filtration(bound: usize) -> FctObj<Rat> {
    LambdaRing::<Rat>::truncated_polynomial(bound).carrier().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_oracle() {
        assert_eq!(monomial_count(2, 2), 6);
        assert_eq!(monomial_count(4, 3), 10);
    }

    #[test]
    fn example_suite_passes() {
        assert!(run_suite(&VerifyConfig::new(Suite::Example)).ok());
    }

    #[test]
    fn saturation_of_shifted_inclusion() {
        let inst = Instance::from_json(COIM_VS_IM).unwrap();
        let f = inst.morphism("f").unwrap();
        let s = oracle::saturation_bases(f);
        assert!(s.iter().zip(f.dst().dims()).all(|(b, &d)| b.cols() == d));
    }

    #[test]
    fn short_runs_of_every_suite() {
        for suite in Suite::ALL {
            let mut cfg = VerifyConfig::new(suite);
            cfg.trials = cfg.trials.min(5);
            cfg.caps = Caps { max_poset: 4, max_dim: 2, max_bound: 2 };
            let r = run_suite(&cfg);
            assert!(r.ok(), "{}: {:?}", r.summary(), r.failures);
        }
    }
}
