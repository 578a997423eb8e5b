//! Seeded random instances. Every generator is deterministic in its RNG
//! state and returns objects that pass their validators by construction.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::filtered::FiltObj;
use crate::functor::{self, FctMor, FctObj};
use crate::linalg::Matrix;
use crate::poset::IndexPoset;
use crate::scalar::{Field, Rat};
use crate::tensor::{self, LambdaModule, LambdaRing};

/// Size limits for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_poset: usize,
    pub max_dim: usize,
    pub max_bound: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_poset: 8, max_dim: 4, max_bound: 3 }
    }
}

/// The RNG used for trial `i` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64))
}

fn small<F: Field>(rng: &mut impl Rng) -> F {
    F::from_int(rng.gen_range(-2..=2))
}

pub fn random_matrix<F: Field>(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| small(rng))
}

/// A random directed poset on `1..=max` elements: a random DAG on
/// `p0..p{n-2}` in index order, all below a top `p{n-1}`.
pub fn random_poset(rng: &mut impl Rng, max: usize) -> Arc<IndexPoset> {
    let n = rng.gen_range(1..=max.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let density = rng.gen_range(0.15..0.6);
    let mut rel = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if j == n - 1 || rng.gen_bool(density) {
                rel.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Arc::new(IndexPoset::new(&names, &rel).expect("a poset with a top element is directed"))
}

/// `⊕_j h_{b_j}` where `h_b(x) = F` for `b <= x` and `0` otherwise.
pub fn representable_sum<F: Field>(poset: &Arc<IndexPoset>, gens: &[usize]) -> FctObj<F> {
    let live = |x: usize| -> Vec<usize> { (0..gens.len()).filter(|&j| poset.leq(gens[j], x)).collect() };
    let dims = (0..poset.len()).map(|x| live(x).len()).collect();
    functor::FctObj::from_fn_unchecked(poset.clone(), dims, |a, b| {
        let (la, lb) = (live(a), live(b));
        Matrix::from_fn(lb.len(), la.len(), |r, c| if lb[r] == la[c] { F::one() } else { F::zero() })
    })
}

/// The representable `h_a`.
pub fn representable<F: Field>(poset: &Arc<IndexPoset>, a: usize) -> FctObj<F> {
    representable_sum(poset, &[a])
}

/// A random functor presented as the cokernel of a random map between sums
/// of representables; every value has dimension at most `max_dim`.
pub fn random_functor<F: Field>(rng: &mut impl Rng, poset: &Arc<IndexPoset>, max_dim: usize) -> FctObj<F> {
    let n = poset.len();
    // Generators sit low and relations high, so transitions often lose rank.
    let low = |rng: &mut dyn rand::RngCore| rng.gen_range(0..n).min(rng.gen_range(0..n));
    let high = |rng: &mut dyn rand::RngCore| rng.gen_range(0..n).max(rng.gen_range(0..n));
    let g0: Vec<usize> = (0..rng.gen_range(0..=max_dim)).map(|_| low(rng)).collect();
    let g1: Vec<usize> = (0..rng.gen_range(0..=max_dim)).map(|_| high(rng)).collect();
    let p0 = representable_sum::<F>(poset, &g0);
    let p1 = representable_sum::<F>(poset, &g1);
    // Hom(h_a, h_b) = h_b(a): entry (j, i) may be nonzero only when g0[j] <= g1[i].
    let coeff = Matrix::<F>::from_fn(g0.len(), g1.len(), |j, i| {
        if poset.leq(g0[j], g1[i]) && rng.gen_bool(0.6) {
            small(rng)
        } else {
            F::zero()
        }
    });
    let comp = (0..n)
        .map(|x| {
            let rows: Vec<usize> = (0..g0.len()).filter(|&j| poset.leq(g0[j], x)).collect();
            let cols: Vec<usize> = (0..g1.len()).filter(|&i| poset.leq(g1[i], x)).collect();
            Matrix::from_fn(rows.len(), cols.len(), |r, c| coeff.get(rows[r], cols[c]).clone())
        })
        .collect();
    let f = FctMor::new_unchecked(p1, p0, comp);
    f.cokernel().obj
}

/// A random filtered object: `M(x) = span{v_j : b_j <= x}` inside `F^d`
/// with random vectors `v_j`, transitions the induced injections.
pub fn random_filtered<F: Field>(rng: &mut impl Rng, poset: &Arc<IndexPoset>, max_dim: usize) -> FiltObj<F> {
    let n = poset.len();
    let d = if max_dim == 0 || rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=max_dim) };
    let k = rng.gen_range(d..=d + 2);
    let vecs: Vec<(usize, Matrix<F>)> = (0..k)
        .map(|_| (rng.gen_range(0..n).min(rng.gen_range(0..n)), random_matrix(rng, d, 1)))
        .collect();
    let bases: Vec<Matrix<F>> = (0..poset.len())
        .map(|x| {
            let cols: Vec<Matrix<F>> = vecs.iter().filter(|(b, _)| poset.leq(*b, x)).map(|(_, v)| v.clone()).collect();
            Matrix::hstack_all(d, &cols).image_basis()
        })
        .collect();
    let ambient = FctObj::constant(poset.clone(), d);
    FiltObj::new_unchecked(functor::sub_object(&ambient, bases).obj)
}

/// A random natural transformation: a small integer combination of the
/// `hom_space` basis.
pub fn random_morphism<F: Field>(rng: &mut impl Rng, src: &FctObj<F>, dst: &FctObj<F>) -> FctMor<F> {
    let basis = functor::hom_space(src, dst);
    let coeffs: Vec<F> = basis.iter().map(|_| small(rng)).collect();
    FctMor::combination(src, dst, &basis, &coeffs)
}

/// A random bounded complex `X^0 -> ... -> X^{len-1}`; each differential is a
/// random map out of the cokernel of the previous one.
pub fn random_complex<F: Field>(rng: &mut impl Rng, poset: &Arc<IndexPoset>, max_len: usize, max_dim: usize) -> Complex<F> {
    let len = rng.gen_range(1..=max_len.max(1));
    let terms: Vec<FctObj<F>> = (0..len).map(|_| random_functor(rng, poset, max_dim)).collect();
    let mut diffs: Vec<FctMor<F>> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let d = match diffs.last() {
            None => random_morphism(rng, &terms[i], &terms[i + 1]),
            Some(prev) => {
                let q = prev.cokernel();
                random_morphism(rng, &q.obj, &terms[i + 1]).after(&q.proj)
            }
        };
        diffs.push(d);
    }
    Complex::new(poset.clone(), 0, terms, diffs).expect("d∘d = 0 by construction")
}

/// A random functor on the chain `{0..bound}`.
pub fn random_chain_functor<F: Field>(rng: &mut impl Rng, bound: usize, max_dim: usize) -> FctObj<F> {
    random_functor(rng, &Arc::new(IndexPoset::chain(bound + 1)), max_dim)
}

/// A random module: the cokernel of a random `A`-linear map between sums of
/// free modules `F_k`.
pub fn random_module<F: Field>(rng: &mut impl Rng, ring: &Arc<LambdaRing<F>>, max_gens: usize) -> LambdaModule<F> {
    let top = ring.monoid().bound();
    let free_sum = |rng: &mut dyn rand::RngCore, count: usize| -> Option<LambdaModule<F>> {
        (0..count)
            .map(|_| LambdaModule::free(ring, rng.gen_range(0..=top)))
            .reduce(|a, b| a.direct_sum(&b))
    };
    let g0 = rng.gen_range(1..=max_gens.max(1));
    let g1 = rng.gen_range(0..=max_gens);
    let p0 = free_sum(rng, g0).expect("at least one generator");
    let Some(p1) = free_sum(rng, g1) else {
        return p0;
    };
    let basis = tensor::linear_hom_space(&p1, &p0);
    let coeffs: Vec<F> = basis.iter().map(|_| small(rng)).collect();
    let f = FctMor::combination(p1.carrier(), p0.carrier(), &basis, &coeffs);
    tensor::module_cokernel(&f, &p1, &p0).expect("linear by construction").0
}

/// Convenience: a random poset, then a random functor over it.
pub fn random_instance_functor(rng: &mut impl Rng, caps: &Caps) -> FctObj<Rat> {
    let p = random_poset(rng, caps.max_poset);
    random_functor(rng, &p, caps.max_dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a: FctObj<Rat> = random_instance_functor(&mut trial_rng(0, 0), &Caps { max_poset: 2, max_dim: 1, max_bound: 1 });
        let b: FctObj<Rat> = random_instance_functor(&mut trial_rng(0, 0), &Caps { max_poset: 2, max_dim: 1, max_bound: 1 });
        assert_eq!(a, b);
    }

    #[test]
    fn generated_objects_validate() {
        for i in 0..30 {
            let mut rng = trial_rng(7, i);
            let p = random_poset(&mut rng, 6);
            let m: FctObj<Rat> = random_functor(&mut rng, &p, 3);
            m.validate().unwrap();
            assert!(m.dims().iter().all(|&d| d <= 3));
            let f: FiltObj<Rat> = random_filtered(&mut rng, &p, 3);
            assert!(crate::filtered::is_filtered(f.underlying()));
            f.underlying().validate().unwrap();
            let g = random_morphism(&mut rng, &m, f.underlying());
            assert!(g.naturality_violations().is_empty());
            let x: Complex<Rat> = random_complex(&mut rng, &p, 3, 2);
            assert!(x.lo() == 0 && x.hi() <= 2);
        }
    }

    #[test]
    fn generated_modules_validate() {
        let ring = Arc::new(LambdaRing::<Rat>::truncated_polynomial(2));
        for i in 0..10 {
            let m = random_module(&mut trial_rng(3, i), &ring, 2);
            m.validate().unwrap();
        }
    }
}
