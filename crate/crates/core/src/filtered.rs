//! Filtered objects: functors whose transition maps are all injective.
//!
//! Limits and kernels are computed as in the functor category. Cokernels,
//! images and pushouts pass through the reflection `κ`, which replaces
//! `M(λ)` by the image of `M(λ)` in the colimit `M(∞)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functor::{self, ColimCone, FctMor, FctObj, SubObject};
use crate::linalg::Matrix;
use crate::poset::IndexPoset;
use crate::scalar::{Field, Rat};

/// A functor whose transition maps are all injective.
#[derive(Clone, Debug, PartialEq)]
pub struct FiltObj<F: Field = Rat> {
    underlying: FctObj<F>,
}

/// A transition map that fails to be injective, with a kernel vector.
#[derive(Clone, Debug, PartialEq)]
pub struct NotFilteredWitness<F: Field = Rat> {
    pub pair: (usize, usize),
    pub kernel_vector: Vec<F>,
}

#[derive(Clone, Debug)]
pub struct Kappa<F: Field = Rat> {
    pub obj: FiltObj<F>,
    pub unit: FctMor<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltOpKind {
    Ker,
    Coker,
    Im,
    Coim,
}

/// Result of [`filt_op`]: the object and its inclusion (`Ker`, `Im`) or
/// projection (`Coker`, `Coim`).
#[derive(Clone, Debug)]
pub struct FiltOp<F: Field = Rat> {
    pub obj: FiltObj<F>,
    pub structural: FctMor<F>,
}

#[derive(Clone, Debug)]
pub struct StrictnessReport<F: Field = Rat> {
    pub is_strict: bool,
    pub coim_to_im: FctMor<F>,
    pub cartesian_ok: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub exact: bool,
    pub pointwise: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct Pullback<F: Field = Rat> {
    pub obj: FiltObj<F>,
    pub to_left: FctMor<F>,
    pub to_right: FctMor<F>,
}

#[derive(Clone, Debug)]
pub struct Pushout<F: Field = Rat> {
    pub obj: FiltObj<F>,
    pub from_left: FctMor<F>,
    pub from_right: FctMor<F>,
}

impl<F: Field> FiltObj<F> {
    pub fn new(m: FctObj<F>) -> Result<Self> {
        match not_filtered_witness(&m) {
            None => Ok(FiltObj { underlying: m }),
            Some(w) => {
                let p = m.poset();
                Err(Error::NotFiltered(p.name(w.pair.0).into(), p.name(w.pair.1).into()))
            }
        }
    }

    pub(crate) fn new_unchecked(m: FctObj<F>) -> Self {
        FiltObj { underlying: m }
    }

    pub fn underlying(&self) -> &FctObj<F> {
        &self.underlying
    }

    pub fn into_inner(self) -> FctObj<F> {
        self.underlying
    }

    pub fn dims(&self) -> &[usize] {
        self.underlying.dims()
    }
}

impl<F: Field> AsRef<FctObj<F>> for FiltObj<F> {
    fn as_ref(&self) -> &FctObj<F> {
        &self.underlying
    }
}

/// First covering pair whose transition map has a kernel, if any.
/// Injectivity on covers implies injectivity on every comparable pair.
pub fn not_filtered_witness<F: Field>(m: &FctObj<F>) -> Option<NotFilteredWitness<F>> {
    m.poset().covers().into_iter().find_map(|(a, b)| {
        let k = m.map(a, b).kernel_basis();
        (k.cols() > 0).then(|| NotFilteredWitness { pair: (a, b), kernel_vector: k.col(0) })
    })
}

pub fn is_filtered<F: Field>(m: &FctObj<F>) -> bool {
    not_filtered_witness(m).is_none()
}

fn require_filtered<F: Field>(m: &FctObj<F>) -> Result<()> {
    match not_filtered_witness(m) {
        None => Ok(()),
        Some(w) => {
            let p = m.poset();
            Err(Error::NotFiltered(p.name(w.pair.0).into(), p.name(w.pair.1).into()))
        }
    }
}

/// Sub-functor of the constant functor on `F^dim` spanned by `bases`.
fn sub_of_constant<F: Field>(poset: Arc<IndexPoset>, dim: usize, bases: &[Matrix<F>]) -> FctObj<F> {
    FctObj::sub_from_bases(poset, bases, |_, _| Matrix::identity(dim))
}

/// `κ(M)(λ) = im j_M(λ)` together with the unit `M -> ι κ(M)`.
pub fn kappa<F: Field>(m: &FctObj<F>) -> Kappa<F> {
    kappa_with_cone(m, &m.colimit())
}

pub(crate) fn kappa_with_cone<F: Field>(m: &FctObj<F>, cone: &ColimCone<F>) -> Kappa<F> {
    let bases: Vec<Matrix<F>> = cone.legs.iter().map(|j| j.image_basis()).collect();
    let obj = sub_of_constant(m.poset().clone(), cone.obj_dim, &bases);
    let comp = cone
        .legs
        .iter()
        .zip(&bases)
        .map(|(j, b)| Matrix::factor_through_mono(j, b).expect("leg factors through its image"))
        .collect();
    let unit = FctMor::new_unchecked(m.clone(), obj.clone(), comp);
    Kappa { obj: FiltObj::new_unchecked(obj), unit }
}

/// `κ(g): κ(A) -> κ(B)`, the restriction of `g(∞)` to the images of the legs.
pub fn kappa_map<F: Field>(g: &FctMor<F>) -> (Kappa<F>, Kappa<F>, FctMor<F>) {
    let cone_a = g.src().colimit();
    let cone_b = g.dst().colimit();
    let ka = kappa_with_cone(g.src(), &cone_a);
    let kb = kappa_with_cone(g.dst(), &cone_b);
    let g_inf = g.on_colimits(&cone_a, &cone_b);
    let comp = cone_a
        .legs
        .iter()
        .zip(&cone_b.legs)
        .map(|(ja, jb)| {
            Matrix::factor_through_mono(&g_inf.compose(&ja.image_basis()), &jb.image_basis())
                .expect("g(∞) maps images of legs into images of legs")
        })
        .collect();
    let m = FctMor::new_unchecked(ka.obj.underlying().clone(), kb.obj.underlying().clone(), comp);
    (ka, kb, m)
}

/// Kernel, cokernel, image or coimage of a morphism between filtered objects,
/// computed in the filtered category.
pub fn filt_op<F: Field>(kind: FiltOpKind, f: &FctMor<F>) -> Result<FiltOp<F>> {
    require_filtered(f.src())?;
    require_filtered(f.dst())?;
    Ok(match kind {
        FiltOpKind::Ker => {
            let SubObject { obj, incl } = f.kernel();
            FiltOp { obj: FiltObj::new_unchecked(obj), structural: incl }
        }
        FiltOpKind::Coim => {
            let im = f.image();
            FiltOp { obj: FiltObj::new_unchecked(im.obj), structural: im.epi_part }
        }
        FiltOpKind::Coker => {
            let (_, cone_n, p) = coker_at_infinity(f);
            let maps: Vec<Matrix<F>> = cone_n.legs.iter().map(|j| p.compose(j)).collect();
            let bases: Vec<Matrix<F>> = maps.iter().map(|m| m.image_basis()).collect();
            let obj = sub_of_constant(f.poset().clone(), p.rows(), &bases);
            let comp = maps
                .iter()
                .zip(&bases)
                .map(|(m, b)| Matrix::factor_through_mono(m, b).expect("map factors through its image"))
                .collect();
            let proj = FctMor::new_unchecked(f.dst().clone(), obj.clone(), comp);
            FiltOp { obj: FiltObj::new_unchecked(obj), structural: proj }
        }
        FiltOpKind::Im => {
            let (_, cone_n, p) = coker_at_infinity(f);
            let bases = cone_n.legs.iter().map(|j| p.compose(j).kernel_basis()).collect();
            let SubObject { obj, incl } = functor::sub_object(f.dst(), bases);
            FiltOp { obj: FiltObj::new_unchecked(obj), structural: incl }
        }
    })
}

/// Colimit cones of source and target, and the projection onto `coker f(∞)`.
fn coker_at_infinity<F: Field>(f: &FctMor<F>) -> (ColimCone<F>, ColimCone<F>, Matrix<F>) {
    let cone_m = f.src().colimit();
    let cone_n = f.dst().colimit();
    let f_inf = f.on_colimits(&cone_m, &cone_n);
    let p = f_inf.cokernel().projection;
    (cone_m, cone_n, p)
}

/// Strictness of `f`, decided by the canonical `coim f -> im f` and checked
/// against the Cartesian square `im f(λ) = N(λ) ×_{N(∞)} im f(∞)`.
pub fn strictness<F: Field>(f: &FctMor<F>) -> Result<StrictnessReport<F>> {
    let coim = filt_op(FiltOpKind::Coim, f)?;
    let im = filt_op(FiltOpKind::Im, f)?;
    let coim_incl = f.image().incl;
    let coim_to_im = functor::factor_through(&coim_incl, &im.structural)?;
    let is_strict = coim_to_im.is_iso();
    debug_assert_eq!(coim.obj.dims(), coim_incl.src().dims());

    let cone_m = f.src().colimit();
    let cone_n = f.dst().colimit();
    let image_inf = f.on_colimits(&cone_m, &cone_n).image_basis();
    let poset = f.poset();
    let mut cartesian_ok = Vec::with_capacity(poset.len());
    for x in 0..poset.len() {
        let j = &cone_n.legs[x];
        let k = j.hstack(&image_inf.scale(&-F::one())).kernel_basis();
        let pulled = k.submatrix(0..j.cols(), 0..k.cols());
        cartesian_ok.push(pulled.same_column_space(&f.comp(x).hstack(&Matrix::zeros(j.cols(), 0))));
    }
    let all_cartesian = cartesian_ok.iter().all(|&b| b);
    if all_cartesian != is_strict {
        let at = cartesian_ok
            .iter()
            .zip(coim_to_im.components())
            .position(|(&c, m)| c != m.is_invertible())
            .map_or_else(|| "∞".to_string(), |x| poset.name(x).to_string());
        return Err(Error::StrictnessMismatch(at));
    }
    Ok(StrictnessReport { is_strict, coim_to_im, cartesian_ok })
}

pub fn is_strict_epi<F: Field>(f: &FctMor<F>) -> Result<bool> {
    Ok(f.is_pointwise_surjective() && strictness(f)?.is_strict)
}

pub fn is_strict_mono<F: Field>(f: &FctMor<F>) -> Result<bool> {
    Ok(f.is_pointwise_injective() && strictness(f)?.is_strict)
}

/// Strict exactness of `X --f--> Y --g--> Z` at `Y`: the pointwise image of
/// `f` equals the pointwise kernel of `g`.
pub fn strictly_exact_pair<F: Field>(f: &FctMor<F>, g: &FctMor<F>) -> Result<ExactnessReport> {
    if f.dst().dims() != g.src().dims() {
        return Err(Error::DimensionMismatch("pair is not composable".into()));
    }
    if !g.after(f).is_zero() {
        return Err(Error::ComposeNonzero);
    }
    let pointwise: Vec<bool> = (0..f.poset().len())
        .map(|x| f.comp(x).rank() + g.comp(x).rank() == f.dst().dim(x))
        .collect();
    Ok(ExactnessReport { exact: pointwise.iter().all(|&b| b), pointwise })
}

/// Pullback of `f: N -> M` and `g: M' -> M`, computed pointwise.
pub fn pullback<F: Field>(f: &FctMor<F>, g: &FctMor<F>) -> Result<Pullback<F>> {
    if f.dst().dims() != g.dst().dims() {
        return Err(Error::DimensionMismatch("pullback of maps with different targets".into()));
    }
    let sum = f.src().direct_sum(g.src());
    let h = f.copair(&g.neg(), &sum);
    let k = h.kernel();
    Ok(Pullback {
        obj: FiltObj::new_unchecked(k.obj),
        to_left: sum.proj[0].after(&k.incl),
        to_right: sum.proj[1].after(&k.incl),
    })
}

/// Pushout of `f: M' -> M` and `u: M' -> N'`: `κ` of the pushout of functors.
pub fn pushout_filt<F: Field>(f: &FctMor<F>, u: &FctMor<F>) -> Result<Pushout<F>> {
    if f.src().dims() != u.src().dims() {
        return Err(Error::DimensionMismatch("pushout of maps with different sources".into()));
    }
    let sum = f.dst().direct_sum(u.dst());
    let h = f.pair(&u.neg(), &sum);
    let q = h.cokernel();
    let k = kappa(&q.obj);
    let to_obj = k.unit.after(&q.proj);
    Ok(Pushout {
        obj: k.obj,
        from_left: to_obj.after(&sum.inj[0]),
        from_right: to_obj.after(&sum.inj[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::hom_space;

    type M = Matrix<Rat>;

    fn chain(n: usize) -> Arc<IndexPoset> {
        Arc::new(IndexPoset::chain(n))
    }

    fn two_chain(a: usize, b: usize, m: M) -> FctObj {
        FctObj::from_maps(chain(2), vec![a, b], vec![((0, 1), m)]).unwrap()
    }

    /// Standard inclusions `Q^{d_0} ⊆ Q^{d_1} ⊆ ...` along a chain.
    fn staircase(dims: &[usize]) -> FctObj {
        let p = chain(dims.len());
        let maps = (1..dims.len())
            .map(|i| ((i - 1, i), M::from_fn(dims[i], dims[i - 1], |r, c| Rat::from_integer((r == c).into()))))
            .collect();
        FctObj::from_maps(p, dims.to_vec(), maps).unwrap()
    }

    #[test]
    fn filtered_examples() {
        assert!(is_filtered(&staircase(&[1, 2, 3])));
        let w = not_filtered_witness(&two_chain(1, 1, M::zeros(1, 1))).unwrap();
        assert_eq!(w.pair, (0, 1));
        assert_eq!(w.kernel_vector.len(), 1);
    }

    #[test]
    fn kappa_examples() {
        let k = kappa(&two_chain(2, 1, M::from_ints(&[[1, 0]])));
        assert_eq!(k.obj.dims(), &[1, 1]);
        let k = kappa(&two_chain(1, 1, M::zeros(1, 1)));
        assert_eq!(k.obj.dims(), &[0, 1]);
        let s = staircase(&[1, 2, 2]);
        let k = kappa(&s);
        assert!(k.unit.is_iso());
        assert_eq!(k.obj.underlying(), &s);
    }

    #[test]
    fn filt_ops_of_identity_and_zero() {
        let m = staircase(&[1, 2, 3]);
        let id = FctMor::identity(&m);
        assert!(filt_op(FiltOpKind::Ker, &id).unwrap().obj.underlying().is_zero());
        assert_eq!(filt_op(FiltOpKind::Im, &id).unwrap().obj.dims(), m.dims());
        let z = FctMor::zero(&m, &m);
        assert_eq!(filt_op(FiltOpKind::Coker, &z).unwrap().obj.dims(), m.dims());
        assert!(filt_op(FiltOpKind::Coim, &z).unwrap().obj.underlying().is_zero());
        assert!(strictness(&id).unwrap().is_strict);
    }

    #[test]
    fn non_strict_inclusion() {
        // (1,2) ⊆ (2,2): f(∞) is an iso but f(0) is not.
        let src = staircase(&[1, 2]);
        let dst = FctObj::constant(chain(2), 2);
        let f = FctMor::new(src, dst, vec![M::from_ints(&[[1], [0]]), M::identity(2)]).unwrap();
        let r = strictness(&f).unwrap();
        assert!(!r.is_strict);
        assert_eq!(r.cartesian_ok, vec![false, true]);
        assert!(r.coim_to_im.is_pointwise_injective());
        assert!(filt_op(FiltOpKind::Coker, &r.coim_to_im).unwrap().obj.underlying().is_zero());
    }

    #[test]
    fn split_inclusion_is_strict() {
        let src = staircase(&[1, 2]);
        let dst = FctObj::from_maps(chain(2), vec![2, 3], vec![((0, 1), M::from_ints(&[[1, 0], [0, 0], [0, 1]]))])
            .unwrap();
        let f = FctMor::new(src, dst, vec![M::from_ints(&[[1], [0]]), M::from_ints(&[[1, 0], [0, 1], [0, 0]])])
            .unwrap();
        let coker = filt_op(FiltOpKind::Coker, &f).unwrap();
        assert_eq!(coker.obj.dims(), &[1, 1]);
        assert!(strictness(&f).unwrap().is_strict);
        assert!(is_strict_mono(&f).unwrap());
    }

    #[test]
    fn exact_pair_degenerate_cases() {
        let m = staircase(&[1, 2]);
        let zero = FctObj::zero(chain(2));
        let inc = FctMor::zero(&zero, &m);
        assert!(strictly_exact_pair(&inc, &FctMor::identity(&m)).unwrap().exact);
        assert!(!strictly_exact_pair(&inc, &FctMor::zero(&m, &m)).unwrap().exact);
        let out = FctMor::zero(&m, &zero);
        assert!(strictly_exact_pair(&FctMor::identity(&m), &out).unwrap().exact);
        let id = FctMor::identity(&m);
        assert_eq!(strictly_exact_pair(&id, &id).unwrap_err(), Error::ComposeNonzero);
    }

    #[test]
    fn pullback_and_pushout_along_identity() {
        let n = staircase(&[1, 2]);
        let m = staircase(&[2, 3]);
        let f = hom_space(&n, &m).into_iter().find(|h| !h.is_zero()).unwrap();
        let pb = pullback(&f, &FctMor::identity(&m)).unwrap();
        assert_eq!(pb.obj.dims(), n.dims());
        assert!(pb.to_left.is_iso());
        let po = pushout_filt(&f, &FctMor::identity(&n)).unwrap();
        assert_eq!(po.obj.dims(), m.dims());
        assert!(po.from_left.is_iso());
    }
}
