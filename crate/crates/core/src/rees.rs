//! The Rees functor `Rees(M)(λ) = ⊕_{λ'≤λ} M(λ')`, its counit
//! `ε: Rees(M) -> M`, the transposition for `κ ⊣ ι`, and the two-term
//! resolution `0 -> K -> Rees(M) -> M -> 0`.

use crate::error::{Error, Result};
use crate::filtered::{self, FiltObj};
use crate::functor::{FctMor, FctObj, SubObject};
use crate::linalg::Matrix;
use crate::scalar::{Field, Rat};

#[derive(Clone, Debug)]
pub struct ReesStructure<F: Field = Rat> {
    pub rees: FiltObj<F>,
    /// For each `λ`, the summands `λ' ≤ λ` in element order.
    pub summands: Vec<Vec<usize>>,
    /// Row offset of each summand inside `Rees(M)(λ)`.
    pub offsets: Vec<Vec<usize>>,
    pub epsilon: FctMor<F>,
    source: FctObj<F>,
}

#[derive(Clone, Debug)]
pub struct ReesResolution<F: Field = Rat> {
    pub rees: ReesStructure<F>,
    pub kernel: FiltObj<F>,
    pub incl: FctMor<F>,
    pub eps: FctMor<F>,
}

impl<F: Field> ReesStructure<F> {
    pub fn source(&self) -> &FctObj<F> {
        &self.source
    }

    fn summand_pos(&self, lp: usize, l: usize) -> Option<usize> {
        self.summands[l].iter().position(|&s| s == lp)
    }

    /// Offset of summand `λ'` in `Rees(M)(λ)`.
    pub fn offset(&self, lp: usize, l: usize) -> usize {
        let i = self.summand_pos(lp, l).expect("λ' <= λ");
        self.offsets[l][i]
    }

    /// The injection `σ: M(λ') -> Rees(M)(λ)` of the summand indexed by `λ' <= λ`.
    pub fn sigma(&self, lp: usize, l: usize) -> Matrix<F> {
        let d = self.source.dim(lp);
        let mut m = Matrix::zeros(self.rees.underlying().dim(l), d);
        m.set_block(self.offset(lp, l), 0, &Matrix::identity(d));
        m
    }

    /// The splitting `ρ: Rees(M)(b) -> Rees(M)(a)` of the transition for
    /// `a <= b`. Summands of `Rees(M)(b)` not below `a` go to zero.
    pub fn rho(&self, a: usize, b: usize) -> Matrix<F> {
        let r = self.rees.underlying();
        let mut m = Matrix::zeros(r.dim(a), r.dim(b));
        for &lp in &self.summands[a] {
            let d = self.source.dim(lp);
            let block = Matrix::identity(d);
            m.set_block(self.offset(lp, a), self.offset(lp, b), &block);
        }
        m
    }

    /// Checks `ρ∘Rees(s) = id`, `Rees(s)∘σ_{s0} = σ_{s∘s0}`, `ε∘σ_{s0} = M(s0)`
    /// and `ε∘σ_{id} = id`, returning the first failure.
    pub fn check_identities(&self) -> Result<()> {
        let p = self.source.poset().clone();
        let r = self.rees.underlying();
        let fail = |law: &str, w: String| Err(Error::AxiomFailure { law: law.into(), witness: w });
        for (a, b) in p.comparable_pairs() {
            let t = r.map(a, b);
            if self.rho(a, b).compose(t) != Matrix::identity(r.dim(a)) {
                return fail("splitting", p.pair_label(a, b));
            }
            for &lp in &self.summands[a] {
                if t.compose(&self.sigma(lp, a)) != self.sigma(lp, b) {
                    return fail("summand transport", format!("{}<={}", p.name(lp), p.pair_label(a, b)));
                }
            }
            if self.epsilon.comp(b).compose(&self.sigma(a, b)) != *self.source.map(a, b) {
                return fail("counit on summand", p.pair_label(a, b));
            }
        }
        for x in 0..p.len() {
            if self.epsilon.comp(x).compose(&self.sigma(x, x)) != Matrix::identity(self.source.dim(x)) {
                return fail("counit on diagonal summand", p.name(x).into());
            }
        }
        Ok(())
    }

    /// `Rees(f)` for `f: M -> N`, acting summand-wise; `self` must be `Rees(M)`.
    pub fn map(&self, f: &FctMor<F>, target: &ReesStructure<F>) -> FctMor<F> {
        let n = self.source.poset().len();
        let comp = (0..n)
            .map(|l| {
                let blocks: Vec<Matrix<F>> = self.summands[l].iter().map(|&lp| f.comp(lp).clone()).collect();
                block_diagonal(&blocks)
            })
            .collect();
        FctMor::new_unchecked(self.rees.underlying().clone(), target.rees.underlying().clone(), comp)
    }
}

pub(crate) fn block_diagonal<F: Field>(blocks: &[Matrix<F>]) -> Matrix<F> {
    blocks.iter().fold(Matrix::zeros(0, 0), |acc, b| acc.direct_sum(b))
}

pub fn rees<F: Field>(m: &FctObj<F>) -> ReesStructure<F> {
    let p = m.poset().clone();
    let n = p.len();
    let summands: Vec<Vec<usize>> = (0..n).map(|l| (0..n).filter(|&lp| p.leq(lp, l)).collect()).collect();
    let mut offsets = Vec::with_capacity(n);
    let mut dims = Vec::with_capacity(n);
    for s in &summands {
        let mut acc = 0;
        let mut offs = Vec::with_capacity(s.len());
        for &lp in s {
            offs.push(acc);
            acc += m.dim(lp);
        }
        offsets.push(offs);
        dims.push(acc);
    }
    let obj = FctObj::from_fn_unchecked(p.clone(), dims.clone(), |a, b| {
        let mut t = Matrix::zeros(dims[b], dims[a]);
        for (i, &lp) in summands[a].iter().enumerate() {
            let j = summands[b].iter().position(|&s| s == lp).expect("down-sets grow");
            t.set_block(offsets[b][j], offsets[a][i], &Matrix::identity(m.dim(lp)));
        }
        t
    });
    let eps = (0..n)
        .map(|l| {
            let blocks: Vec<Matrix<F>> = summands[l].iter().map(|&lp| m.map(lp, l).clone()).collect();
            Matrix::hstack_all(m.dim(l), &blocks)
        })
        .collect();
    let epsilon = FctMor::new_unchecked(obj.clone(), m.clone(), eps);
    ReesStructure { rees: FiltObj::new_unchecked(obj), summands, offsets, epsilon, source: m.clone() }
}

/// `0 -> K -> Rees(M) -> M -> 0` with `K = ker ε`.
pub fn rees_resolution<F: Field>(m: &FctObj<F>) -> ReesResolution<F> {
    let r = rees(m);
    let SubObject { obj, incl } = r.epsilon.kernel();
    let eps = r.epsilon.clone();
    ReesResolution { rees: r, kernel: FiltObj::new_unchecked(obj), incl, eps }
}

/// Transpose of `f: M' -> ι M` under `κ ⊣ ι`: the map `κ M' -> M` obtained
/// by factoring `f(∞)` restricted to `im j_{M'}(λ)` through `j_M(λ)`.
pub fn adjoint_transpose<F: Field>(f: &FctMor<F>) -> Result<FctMor<F>> {
    let target = FiltObj::new(f.dst().clone())?;
    let cone_src = f.src().colimit();
    let cone_dst = target.underlying().colimit();
    let k = filtered::kappa_with_cone(f.src(), &cone_src);
    let f_inf = f.on_colimits(&cone_src, &cone_dst);
    let n = f.poset().len();
    let mut comp = Vec::with_capacity(n);
    for x in 0..n {
        let basis = cone_src.legs[x].image_basis();
        comp.push(Matrix::factor_through_mono(&f_inf.compose(&basis), &cone_dst.legs[x])?);
    }
    Ok(FctMor::new_unchecked(k.obj.underlying().clone(), f.dst().clone(), comp))
}

/// Inverse transposition: `g: κ M' -> M` goes to `ι(g) ∘ η_{M'}`.
pub fn adjoint_transpose_inv<F: Field>(src: &FctObj<F>, g: &FctMor<F>) -> Result<FctMor<F>> {
    FiltObj::new(g.dst().clone())?;
    let k = filtered::kappa(src);
    if k.obj.dims() != g.src().dims() {
        return Err(Error::DimensionMismatch("source is not κ of the given object".into()));
    }
    Ok(g.after(&k.unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::hom_space;
    use crate::poset::IndexPoset;
    use std::sync::Arc;

    type M = Matrix<Rat>;

    fn chain(n: usize) -> Arc<IndexPoset> {
        Arc::new(IndexPoset::chain(n))
    }

    fn two_chain(a: usize, b: usize, m: M) -> FctObj {
        FctObj::from_maps(chain(2), vec![a, b], vec![((0, 1), m)]).unwrap()
    }

    #[test]
    fn rees_dims_and_identities() {
        let r = rees(&FctObj::<Rat>::constant(chain(3), 1));
        assert_eq!(r.rees.dims(), &[1, 2, 3]);
        r.check_identities().unwrap();
        assert!(filtered::is_filtered(r.rees.underlying()));

        let z = rees(&FctObj::<Rat>::zero(chain(3)));
        assert!(z.rees.underlying().is_zero());

        let r = rees(&two_chain(1, 1, M::zeros(1, 1)));
        assert_eq!(r.rees.dims(), &[1, 2]);
        assert_eq!(*r.epsilon.comp(1), M::from_ints(&[[0, 1]]));
        r.check_identities().unwrap();
    }

    #[test]
    fn resolution_of_constant() {
        let res = rees_resolution(&FctObj::<Rat>::constant(chain(2), 1));
        assert_eq!(res.kernel.dims(), &[0, 1]);
        assert!(res.eps.is_pointwise_surjective());
        let res = rees_resolution(&FctObj::<Rat>::zero(chain(2)));
        assert!(res.kernel.underlying().is_zero());
    }

    #[test]
    fn transpose_of_unit_and_zero() {
        let m = two_chain(2, 1, M::from_ints(&[[1, 0]]));
        let k = filtered::kappa(&m);
        let t = adjoint_transpose(&k.unit).unwrap();
        assert_eq!(t, FctMor::identity(k.obj.underlying()));
        let z = adjoint_transpose(&FctMor::zero(&m, k.obj.underlying())).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn transpose_matches_hom_bases() {
        let src = two_chain(1, 1, M::zeros(1, 1));
        let dst = two_chain(1, 1, M::identity(1));
        let left = hom_space(&src, &dst);
        let k = filtered::kappa(&src);
        let right = hom_space(k.obj.underlying(), &dst);
        assert_eq!((left.len(), right.len()), (1, 1));
        let t = adjoint_transpose(&left[0]).unwrap();
        assert_eq!(adjoint_transpose_inv(&src, &t).unwrap(), left[0]);
    }

    #[test]
    fn transpose_requires_filtered_target() {
        let m = two_chain(1, 1, M::zeros(1, 1));
        let err = adjoint_transpose(&FctMor::identity(&m)).unwrap_err();
        assert!(matches!(err, Error::NotFiltered(..)));
    }
}
