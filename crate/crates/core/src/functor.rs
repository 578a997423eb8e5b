//! The abelian category of functors from a finite directed poset to finite
//! dimensional vector spaces.
//!
//! Kernels, cokernels, images and coimages are computed pointwise; colimits
//! of arbitrary finite diagrams go through the cokernel of the usual
//! coequalizer map `⊕_{a<=b} M(a) -> ⊕_x M(x)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poset::IndexPoset;
use crate::scalar::{Field, Rat};

/// A functor `Λ -> Vect`, stored with its transition map on every comparable pair.
#[derive(Clone, PartialEq)]
pub struct FctObj<F: Field = Rat> {
    poset: Arc<IndexPoset>,
    dims: Vec<usize>,
    maps: Vec<Option<Matrix<F>>>,
}

/// A natural transformation.
#[derive(Clone, PartialEq)]
pub struct FctMor<F: Field = Rat> {
    src: FctObj<F>,
    dst: FctObj<F>,
    comp: Vec<Matrix<F>>,
}

/// A colimit cocone `leg(x): D(x) -> colim` of a finite diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct ColimCone<F: Field = Rat> {
    pub obj_dim: usize,
    pub legs: Vec<Matrix<F>>,
    section: Matrix<F>,
}

#[derive(Clone, Debug)]
pub struct SubObject<F: Field = Rat> {
    pub obj: FctObj<F>,
    pub incl: FctMor<F>,
}

#[derive(Clone, Debug)]
pub struct QuotientObject<F: Field = Rat> {
    pub obj: FctObj<F>,
    pub proj: FctMor<F>,
}

#[derive(Clone, Debug)]
pub struct Image<F: Field = Rat> {
    pub obj: FctObj<F>,
    pub incl: FctMor<F>,
    pub epi_part: FctMor<F>,
}

#[derive(Clone, Debug)]
pub struct Coimage<F: Field = Rat> {
    pub obj: FctObj<F>,
    pub proj: FctMor<F>,
    pub mono_part: FctMor<F>,
}

#[derive(Clone, Debug)]
pub struct Biproduct<F: Field = Rat> {
    pub obj: FctObj<F>,
    pub inj: [FctMor<F>; 2],
    pub proj: [FctMor<F>; 2],
}

pub(crate) fn same_poset(a: &Arc<IndexPoset>, b: &Arc<IndexPoset>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<F: Field> FctObj<F> {
    /// Builds a functor from maps on (at least) the covering pairs. Missing
    /// composites are derived, then every identity and composition law is
    /// checked.
    pub fn from_maps(
        poset: Arc<IndexPoset>,
        dims: Vec<usize>,
        given: Vec<((usize, usize), Matrix<F>)>,
    ) -> Result<Self> {
        let n = poset.len();
        if dims.len() != n {
            return Err(Error::DimensionMismatch(format!("{} dims for {n} elements", dims.len())));
        }
        let mut maps: Vec<Option<Matrix<F>>> = vec![None; n * n];
        for a in 0..n {
            maps[a * n + a] = Some(Matrix::identity(dims[a]));
        }
        for ((a, b), m) in given {
            if !poset.leq(a, b) {
                return Err(Error::FunctorLaw(format!(
                    "map given on incomparable pair {}",
                    poset.pair_label(a, b)
                )));
            }
            if m.shape() != (dims[b], dims[a]) {
                return Err(Error::DimensionMismatch(format!(
                    "map {} has shape {:?}, expected {:?}",
                    poset.pair_label(a, b),
                    m.shape(),
                    (dims[b], dims[a])
                )));
            }
            maps[a * n + b] = Some(m);
        }
        let covers = poset.covers();
        for &(a, b) in &covers {
            if maps[a * n + b].is_none() {
                return Err(Error::FunctorLaw(format!("missing map on cover {}", poset.pair_label(a, b))));
            }
        }
        for &b in poset.topological() {
            for a in 0..n {
                if !poset.lt(a, b) || maps[a * n + b].is_some() {
                    continue;
                }
                let c = covers
                    .iter()
                    .find(|&&(c, d)| d == b && poset.leq(a, c))
                    .map(|&(c, _)| c)
                    .expect("a < b has a lower cover of b above a");
                let m = maps[c * n + b].as_ref().unwrap().compose(maps[a * n + c].as_ref().unwrap());
                maps[a * n + b] = Some(m);
            }
        }
        let obj = FctObj { poset, dims, maps };
        obj.validate()?;
        Ok(obj)
    }

    /// Builds a functor by evaluating `map(a, b)` on every comparable pair.
    /// The caller is responsible for functoriality.
    pub(crate) fn from_fn_unchecked(
        poset: Arc<IndexPoset>,
        dims: Vec<usize>,
        mut map: impl FnMut(usize, usize) -> Matrix<F>,
    ) -> Self {
        let n = poset.len();
        let mut maps = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if poset.leq(a, b) {
                    maps[a * n + b] = Some(if a == b { Matrix::identity(dims[a]) } else { map(a, b) });
                }
            }
        }
        FctObj { poset, dims, maps }
    }

    /// Stores every given pair as-is, without deriving or checking anything.
    pub fn from_all_maps_unchecked(
        poset: Arc<IndexPoset>,
        dims: Vec<usize>,
        given: Vec<((usize, usize), Matrix<F>)>,
    ) -> Self {
        let n = poset.len();
        let mut maps = vec![None; n * n];
        for a in 0..n {
            maps[a * n + a] = Some(Matrix::identity(dims[a]));
        }
        for ((a, b), m) in given {
            maps[a * n + b] = Some(m);
        }
        FctObj { poset, dims, maps }
    }

    /// The constant functor `Δ(F^dim)`.
    pub fn constant(poset: Arc<IndexPoset>, dim: usize) -> Self {
        let n = poset.len();
        Self::from_fn_unchecked(poset, vec![dim; n], |_, _| Matrix::identity(dim))
    }

    pub fn zero(poset: Arc<IndexPoset>) -> Self {
        Self::constant(poset, 0)
    }

    pub fn poset(&self) -> &Arc<IndexPoset> {
        &self.poset
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Transition map `M(a <= b)`. Panics if `a` is not below `b`.
    pub fn map(&self, a: usize, b: usize) -> &Matrix<F> {
        self.maps[a * self.poset.len() + b]
            .as_ref()
            .unwrap_or_else(|| panic!("no map on {}", self.poset.pair_label(a, b)))
    }

    /// Every violated identity or composition law, as `"a<=b<=c"` labels.
    pub fn functor_law_violations(&self) -> Vec<String> {
        let p = &self.poset;
        let n = p.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if !p.leq(a, b) {
                    continue;
                }
                match &self.maps[a * n + b] {
                    None => out.push(format!("missing {}", p.pair_label(a, b))),
                    Some(m) if m.shape() != (self.dims[b], self.dims[a]) => {
                        out.push(format!("shape of {}", p.pair_label(a, b)))
                    }
                    Some(m) if a == b && *m != Matrix::identity(self.dims[a]) => {
                        out.push(format!("identity at {}", p.name(a)))
                    }
                    _ => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..n {
            for b in 0..n {
                if !p.lt(a, b) {
                    continue;
                }
                for c in 0..n {
                    if p.lt(b, c) && self.map(b, c).compose(self.map(a, b)) != *self.map(a, c) {
                        out.push(format!("{}<={}<={}", p.name(a), p.name(b), p.name(c)));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.functor_law_violations().into_iter().next() {
            None => Ok(()),
            Some(w) => Err(Error::FunctorLaw(w)),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Biproduct<F> {
        assert!(same_poset(&self.poset, &other.poset), "direct sum over different posets");
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let obj = Self::from_fn_unchecked(self.poset.clone(), dims, |a, b| {
            self.map(a, b).direct_sum(other.map(a, b))
        });
        let n = self.poset.len();
        let mk = |src: &FctObj<F>, dst: &FctObj<F>, f: &dyn Fn(usize) -> Matrix<F>| {
            FctMor::new_unchecked(src.clone(), dst.clone(), (0..n).map(f).collect())
        };
        let (l, r) = (&self.dims, &other.dims);
        let inj0 = mk(self, &obj, &|x| Matrix::identity(l[x]).vstack(&Matrix::zeros(r[x], l[x])));
        let inj1 = mk(other, &obj, &|x| Matrix::zeros(l[x], r[x]).vstack(&Matrix::identity(r[x])));
        let proj0 = mk(&obj, self, &|x| Matrix::identity(l[x]).hstack(&Matrix::zeros(l[x], r[x])));
        let proj1 = mk(&obj, other, &|x| Matrix::zeros(r[x], l[x]).hstack(&Matrix::identity(r[x])));
        Biproduct { obj, inj: [inj0, inj1], proj: [proj0, proj1] }
    }

    /// Colimit over the poset via the coequalizer presentation.
    pub fn colimit(&self) -> ColimCone<F> {
        let p = &self.poset;
        let mut edges = Vec::new();
        for (a, b) in p.comparable_pairs() {
            if a != b {
                edges.push((a, b, self.map(a, b).clone()));
            }
        }
        colimit_of_diagram(&self.dims, &edges)
    }

    /// Sub-functor spanned pointwise by the columns of `bases[x]`, inside an
    /// ambient functor given by its transition maps.
    pub(crate) fn sub_from_bases(
        poset: Arc<IndexPoset>,
        bases: &[Matrix<F>],
        ambient: impl Fn(usize, usize) -> Matrix<F>,
    ) -> Self {
        let dims = bases.iter().map(|b| b.cols()).collect();
        Self::from_fn_unchecked(poset, dims, |a, b| {
            Matrix::factor_through_mono(&ambient(a, b).compose(&bases[a]), &bases[b])
                .expect("bases span a sub-functor")
        })
    }

    pub fn dims_label(&self) -> String {
        let d: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        format!("({})", d.join(","))
    }
}

impl<F: Field> fmt::Debug for FctObj<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FctObj{}", self.dims_label())
    }
}

/// Colimit of a finite diagram of vector spaces: node dimensions and edges
/// `(src, dst, matrix)`. Computed as the cokernel of
/// `x ↦ σ_dst(e x) - σ_src(x)` summed over the edges.
pub fn colimit_of_diagram<F: Field>(dims: &[usize], edges: &[(usize, usize, Matrix<F>)]) -> ColimCone<F> {
    let mut offsets = Vec::with_capacity(dims.len());
    let mut total = 0;
    for &d in dims {
        offsets.push(total);
        total += d;
    }
    let relation_cols: usize = edges.iter().map(|(s, _, _)| dims[*s]).sum();
    let mut rel = Matrix::zeros(total, relation_cols);
    let mut col = 0;
    for (s, t, m) in edges {
        assert_eq!(m.shape(), (dims[*t], dims[*s]), "diagram edge shape");
        rel.set_block(offsets[*t], col, m);
        for i in 0..dims[*s] {
            let v = rel.get(offsets[*s] + i, col + i).sub_ref(&F::one());
            rel.set(offsets[*s] + i, col + i, v);
        }
        col += dims[*s];
    }
    let coker = rel.cokernel();
    let p = coker.projection;
    let legs = dims
        .iter()
        .zip(&offsets)
        .map(|(&d, &o)| p.submatrix(0..p.rows(), o..o + d))
        .collect();
    let section = p.right_inverse().expect("cokernel projection is surjective");
    ColimCone { obj_dim: coker.dim, legs, section }
}

impl<F: Field> ColimCone<F> {
    /// The unique `h` with `h ∘ leg(x) = out(x)` for a compatible family `out`.
    pub fn induced(&self, out: &[Matrix<F>]) -> Matrix<F> {
        assert_eq!(out.len(), self.legs.len());
        let rows = out.first().map_or(0, |m| m.rows());
        Matrix::hstack_all(rows, out).compose(&self.section)
    }

    /// `[leg(x)]_x` has full row rank.
    pub fn jointly_surjective(&self) -> bool {
        let legs = Matrix::hstack_all(self.obj_dim, &self.legs);
        legs.rank() == self.obj_dim
    }
}

impl<F: Field> FctMor<F> {
    /// Validated constructor: shapes and every naturality square on covers.
    pub fn new(src: FctObj<F>, dst: FctObj<F>, comp: Vec<Matrix<F>>) -> Result<Self> {
        if !same_poset(&src.poset, &dst.poset) {
            return Err(Error::PosetMismatch);
        }
        let p = src.poset.clone();
        if comp.len() != p.len() {
            return Err(Error::DimensionMismatch(format!("{} components for {} elements", comp.len(), p.len())));
        }
        for (x, c) in comp.iter().enumerate() {
            if c.shape() != (dst.dim(x), src.dim(x)) {
                return Err(Error::DimensionMismatch(format!(
                    "component at {} has shape {:?}, expected {:?}",
                    p.name(x),
                    c.shape(),
                    (dst.dim(x), src.dim(x))
                )));
            }
        }
        let f = FctMor { src, dst, comp };
        if let Some(w) = f.naturality_violations().into_iter().next() {
            return Err(Error::NotNatural(w));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: FctObj<F>, dst: FctObj<F>, comp: Vec<Matrix<F>>) -> Self {
        FctMor { src, dst, comp }
    }

    pub fn naturality_violations(&self) -> Vec<String> {
        let p = &self.src.poset;
        p.covers()
            .into_iter()
            .filter(|&(a, b)| {
                self.dst.map(a, b).compose(&self.comp[a]) != self.comp[b].compose(self.src.map(a, b))
            })
            .map(|(a, b)| p.pair_label(a, b))
            .collect()
    }

    pub fn identity(obj: &FctObj<F>) -> Self {
        let comp = obj.dims.iter().map(|&d| Matrix::identity(d)).collect();
        FctMor { src: obj.clone(), dst: obj.clone(), comp }
    }

    pub fn zero(src: &FctObj<F>, dst: &FctObj<F>) -> Self {
        let comp = (0..src.poset.len()).map(|x| Matrix::zeros(dst.dim(x), src.dim(x))).collect();
        FctMor { src: src.clone(), dst: dst.clone(), comp }
    }

    pub fn src(&self) -> &FctObj<F> {
        &self.src
    }

    pub fn dst(&self) -> &FctObj<F> {
        &self.dst
    }

    pub fn poset(&self) -> &Arc<IndexPoset> {
        &self.src.poset
    }

    pub fn comp(&self, x: usize) -> &Matrix<F> {
        &self.comp[x]
    }

    pub fn components(&self) -> &[Matrix<F>] {
        &self.comp
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Self) -> Self {
        assert_eq!(first.dst.dims, self.src.dims, "composing incompatible morphisms");
        let comp = self.comp.iter().zip(&first.comp).map(|(g, f)| g.compose(f)).collect();
        FctMor { src: first.src.clone(), dst: self.dst.clone(), comp }
    }

    pub fn try_after(&self, first: &Self) -> Result<Self> {
        if first.dst.dims != self.src.dims || !same_poset(self.poset(), first.poset()) {
            return Err(Error::DimensionMismatch("composing incompatible morphisms".into()));
        }
        Ok(self.after(first))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Matrix<F>, &Matrix<F>) -> Matrix<F>) -> Self {
        assert_eq!(self.src.dims, other.src.dims);
        assert_eq!(self.dst.dims, other.dst.dims);
        let comp = self.comp.iter().zip(&other.comp).map(|(a, b)| f(a, b)).collect();
        FctMor { src: self.src.clone(), dst: self.dst.clone(), comp }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, k: &F) -> Self {
        let comp = self.comp.iter().map(|c| c.scale(k)).collect();
        FctMor { src: self.src.clone(), dst: self.dst.clone(), comp }
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(|c| c.is_zero())
    }

    pub fn is_pointwise_injective(&self) -> bool {
        self.comp.iter().all(|c| c.is_injective())
    }

    pub fn is_pointwise_surjective(&self) -> bool {
        self.comp.iter().all(|c| c.is_surjective())
    }

    pub fn is_iso(&self) -> bool {
        self.comp.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Result<Self> {
        let comp = self.comp.iter().map(|c| c.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(FctMor { src: self.dst.clone(), dst: self.src.clone(), comp })
    }

    /// Linear combination `Σ c_i basis_i` of morphisms with a common source and target.
    pub fn combination(src: &FctObj<F>, dst: &FctObj<F>, basis: &[Self], coeffs: &[F]) -> Self {
        let mut acc = Self::zero(src, dst);
        for (b, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// `[self, other]: A ⊕ B -> Y`.
    pub fn copair(&self, other: &Self, sum: &Biproduct<F>) -> Self {
        self.after(&sum.proj[0]).add(&other.after(&sum.proj[1]))
    }

    /// `(self, other): X -> A ⊕ B`.
    pub fn pair(&self, other: &Self, sum: &Biproduct<F>) -> Self {
        sum.inj[0].after(self).add(&sum.inj[1].after(other))
    }

    /// `f ⊕ g` between biproducts.
    pub fn direct_sum(&self, other: &Self, src: &Biproduct<F>, dst: &Biproduct<F>) -> Self {
        let comp = self.comp.iter().zip(&other.comp).map(|(a, b)| a.direct_sum(b)).collect();
        FctMor { src: src.obj.clone(), dst: dst.obj.clone(), comp }
    }

    /// `f(∞)` between the given colimits of source and target.
    pub fn on_colimits(&self, src: &ColimCone<F>, dst: &ColimCone<F>) -> Matrix<F> {
        let out: Vec<Matrix<F>> =
            self.comp.iter().zip(&dst.legs).map(|(c, leg)| leg.compose(c)).collect();
        if out.is_empty() {
            return Matrix::zeros(dst.obj_dim, src.obj_dim);
        }
        let h = src.induced(&out);
        if h.rows() != dst.obj_dim {
            return Matrix::zeros(dst.obj_dim, src.obj_dim);
        }
        h
    }

    pub fn kernel(&self) -> SubObject<F> {
        let bases: Vec<Matrix<F>> = self.comp.iter().map(|c| c.kernel_basis()).collect();
        sub_object(&self.src, bases)
    }

    pub fn cokernel(&self) -> QuotientObject<F> {
        let projs: Vec<Matrix<F>> = self.comp.iter().map(|c| c.cokernel().projection).collect();
        quotient_object(&self.dst, projs)
    }

    pub fn image(&self) -> Image<F> {
        let bases: Vec<Matrix<F>> = self.comp.iter().map(|c| c.image_basis()).collect();
        let sub = sub_object(&self.dst, bases);
        let epi_part = factor_through(self, &sub.incl).expect("morphism factors through its image");
        Image { obj: sub.obj, incl: sub.incl, epi_part }
    }

    pub fn coimage(&self) -> Coimage<F> {
        let ker = self.kernel();
        let q = ker.incl.cokernel();
        let mono_part = descend(self, &q.proj).expect("morphism kills its kernel");
        Coimage { obj: q.obj, proj: q.proj, mono_part }
    }

    /// The canonical `coim f -> im f`; an isomorphism in this abelian category.
    pub fn coim_to_im(&self) -> FctMor<F> {
        let coim = self.coimage();
        let im = self.image();
        factor_through(&coim.mono_part, &im.incl).expect("coimage lands in the image")
    }
}

impl<F: Field> fmt::Debug for FctMor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FctMor{} -> {} {:?}", self.src.dims_label(), self.dst.dims_label(), self.comp)
    }
}

/// Sub-functor of `ambient` spanned by pointwise bases, with its inclusion.
pub fn sub_object<F: Field>(ambient: &FctObj<F>, bases: Vec<Matrix<F>>) -> SubObject<F> {
    let obj = FctObj::sub_from_bases(ambient.poset.clone(), &bases, |a, b| ambient.map(a, b).clone());
    let incl = FctMor::new_unchecked(obj.clone(), ambient.clone(), bases);
    SubObject { obj, incl }
}

/// Quotient functor of `ambient` along pointwise surjections `projs[x]`
/// whose kernels form a sub-functor.
pub fn quotient_object<F: Field>(ambient: &FctObj<F>, projs: Vec<Matrix<F>>) -> QuotientObject<F> {
    let sections: Vec<Matrix<F>> =
        projs.iter().map(|p| p.right_inverse().expect("projection is surjective")).collect();
    let dims = projs.iter().map(|p| p.rows()).collect();
    let obj = FctObj::from_fn_unchecked(ambient.poset.clone(), dims, |a, b| {
        projs[b].compose(ambient.map(a, b)).compose(&sections[a])
    });
    let proj = FctMor::new_unchecked(ambient.clone(), obj.clone(), projs);
    QuotientObject { obj, proj }
}

/// The unique `g` with `mono ∘ g = f`, for `mono` pointwise injective.
pub fn factor_through<F: Field>(f: &FctMor<F>, mono: &FctMor<F>) -> Result<FctMor<F>> {
    let comp = f
        .comp
        .iter()
        .zip(&mono.comp)
        .map(|(fc, mc)| Matrix::factor_through_mono(fc, mc))
        .collect::<Result<Vec<_>>>()?;
    Ok(FctMor::new_unchecked(f.src.clone(), mono.src.clone(), comp))
}

/// The unique `h` with `h ∘ epi = f`, for `epi` pointwise surjective and
/// `f` vanishing on its kernel.
pub fn descend<F: Field>(f: &FctMor<F>, epi: &FctMor<F>) -> Result<FctMor<F>> {
    let mut comp = Vec::with_capacity(f.comp.len());
    for (fc, ec) in f.comp.iter().zip(&epi.comp) {
        let s = ec.right_inverse()?;
        let h = fc.compose(&s);
        if h.compose(ec) != *fc {
            return Err(Error::NotContained);
        }
        comp.push(h);
    }
    Ok(FctMor::new_unchecked(epi.dst.clone(), f.dst.clone(), comp))
}

/// Pointwise exactness of `X --f--> Y --g--> Z` at `Y`.
pub fn is_exact_at<F: Field>(f: &FctMor<F>, g: &FctMor<F>) -> bool {
    (0..f.comp.len()).all(|x| {
        g.comp[x].compose(&f.comp[x]).is_zero()
            && f.comp[x].rank() + g.comp[x].rank() == f.dst.dim(x)
    })
}

/// Basis of `Hom(M, N)`, from the naturality equations on covering pairs.
pub fn hom_space<F: Field>(m: &FctObj<F>, n: &FctObj<F>) -> Vec<FctMor<F>> {
    hom_space_over(m, n, &m.poset.covers())
}

/// Same as [`hom_space`] but imposing naturality on the given pairs.
pub fn hom_space_over<F: Field>(m: &FctObj<F>, n: &FctObj<F>, pairs: &[(usize, usize)]) -> Vec<FctMor<F>> {
    assert!(same_poset(&m.poset, &n.poset), "hom space over different posets");
    let k = m.poset.len();
    let mut offsets = Vec::with_capacity(k);
    let mut vars = 0;
    for x in 0..k {
        offsets.push(vars);
        vars += n.dim(x) * m.dim(x);
    }
    let var = |x: usize, i: usize, j: usize| offsets[x] + i * m.dim(x) + j;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for &(a, b) in pairs {
        // N(a<=b) X_a - X_b M(a<=b) = 0, entry (r, c).
        let nm = n.map(a, b);
        let mm = m.map(a, b);
        for r in 0..n.dim(b) {
            for c in 0..m.dim(a) {
                let mut row = vec![F::zero(); vars];
                for t in 0..n.dim(a) {
                    let v = nm.get(r, t);
                    if !v.is_zero() {
                        let idx = var(a, t, c);
                        row[idx] = row[idx].add_ref(v);
                    }
                }
                for t in 0..m.dim(b) {
                    let v = mm.get(t, c);
                    if !v.is_zero() {
                        let idx = var(b, r, t);
                        row[idx] = row[idx].sub_ref(v);
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(rows, vars).expect("rows have uniform length");
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|s| {
            let comp = (0..k)
                .map(|x| Matrix::from_fn(n.dim(x), m.dim(x), |i, j| kernel.get(var(x, i, j), s).clone()))
                .collect();
            FctMor::new_unchecked(m.clone(), n.clone(), comp)
        })
        .collect()
}

/// Expresses `target` in the span of `basis` (all with the same source and
/// target), returning the coefficients.
pub fn coordinates<F: Field>(basis: &[FctMor<F>], target: &FctMor<F>) -> Option<Vec<F>> {
    let flat = |f: &FctMor<F>| -> Vec<F> { f.comp.iter().flat_map(|c| c.entries().to_vec()).collect() };
    let len = flat(target).len();
    let cols: Vec<Vec<F>> = basis.iter().map(flat).collect();
    let a = Matrix::from_fn(len, basis.len(), |r, c| cols[c][r].clone());
    let b = Matrix::column(flat(target));
    let x = a.solve(&b)?;
    Some(x.col(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<Rat>;

    fn chain(n: usize) -> Arc<IndexPoset> {
        Arc::new(IndexPoset::chain(n))
    }

    pub(crate) fn two_chain(a: usize, b: usize, m: M) -> FctObj {
        FctObj::from_maps(chain(2), vec![a, b], vec![((0, 1), m)]).unwrap()
    }

    #[test]
    fn constant_functor_is_valid() {
        let d = FctObj::<Rat>::constant(Arc::new(IndexPoset::diamond()), 2);
        assert!(d.validate().is_ok());
        let c = FctObj::<Rat>::constant(chain(4), 3);
        assert!(c.functor_law_violations().is_empty());
    }

    #[test]
    fn single_generator_pair() {
        let m = two_chain(1, 2, M::from_ints(&[[1], [0]]));
        assert!(m.validate().is_ok());
    }

    #[test]
    fn wrong_composite_is_reported() {
        let p = chain(3);
        let id = M::identity(1);
        let err = FctObj::from_maps(
            p,
            vec![1, 1, 1],
            vec![((0, 1), id.clone()), ((1, 2), id), ((0, 2), M::zeros(1, 1))],
        )
        .unwrap_err();
        assert_eq!(err, Error::FunctorLaw("0<=1<=2".into()));
    }

    #[test]
    fn composites_are_derived() {
        let p = chain(3);
        let m = FctObj::from_maps(
            p,
            vec![1, 2, 3],
            vec![((0, 1), M::from_ints(&[[1], [0]])), ((1, 2), M::from_ints(&[[1, 0], [0, 1], [0, 0]]))],
        )
        .unwrap();
        assert_eq!(*m.map(0, 2), M::from_ints(&[[1], [0], [0]]));
    }

    #[test]
    fn colimit_constant_chain() {
        let c = two_chain(1, 1, M::identity(1)).colimit();
        assert_eq!(c.obj_dim, 1);
        assert_eq!(c.legs[0], M::identity(1));
        assert_eq!(c.legs[1], M::identity(1));
    }

    #[test]
    fn colimit_zero_map() {
        let c = two_chain(1, 1, M::zeros(1, 1)).colimit();
        assert_eq!(c.obj_dim, 1);
        assert!(c.legs[0].is_zero());
        assert!(c.legs[1].is_invertible());
        assert!(c.jointly_surjective());
    }

    #[test]
    fn colimit_matches_top_on_directed_posets() {
        let p = Arc::new(IndexPoset::diamond());
        let m = FctObj::from_maps(
            p.clone(),
            vec![1, 1, 2, 2],
            vec![
                ((0, 1), M::from_ints(&[[2]])),
                ((0, 2), M::from_ints(&[[1], [1]])),
                ((1, 3), M::from_ints(&[[1], [0]])),
                ((2, 3), M::from_ints(&[[2, 0], [0, 0]])),
            ],
        )
        .unwrap();
        let c = m.colimit();
        assert_eq!(c.obj_dim, 2);
        assert!(c.legs[p.top()].is_invertible());
    }

    #[test]
    fn kernel_cokernel_of_identity_and_zero() {
        let m = two_chain(1, 2, M::from_ints(&[[1], [1]]));
        let id = FctMor::identity(&m);
        assert!(id.kernel().obj.is_zero());
        assert!(id.cokernel().obj.is_zero());
        let n = two_chain(2, 1, M::from_ints(&[[1, 1]]));
        let z = FctMor::zero(&m, &n);
        assert_eq!(z.kernel().obj.dims(), m.dims());
        assert_eq!(z.cokernel().obj.dims(), n.dims());
        assert!(z.image().obj.is_zero());
        assert!(z.coim_to_im().is_iso());
    }

    #[test]
    fn hom_space_examples() {
        let d = FctObj::<Rat>::constant(Arc::new(IndexPoset::diamond()), 1);
        assert_eq!(hom_space(&d, &d).len(), 1);

        // Naturality of X: (Q -0-> Q) -> (Q -id-> Q): X_1 * 0 = 1 * X_0, so X_0 = 0.
        let src = two_chain(1, 1, M::zeros(1, 1));
        let dst = two_chain(1, 1, M::identity(1));
        let h = hom_space(&src, &dst);
        assert_eq!(h.len(), 1);
        assert!(h[0].comp(0).is_zero());

        let zero = FctObj::zero(chain(2));
        assert!(hom_space(&dst, &zero).is_empty());
    }

    #[test]
    fn not_natural_is_rejected() {
        let src = two_chain(1, 1, M::identity(1));
        let dst = two_chain(1, 1, M::identity(1));
        let err = FctMor::new(src, dst, vec![M::identity(1), M::zeros(1, 1)]).unwrap_err();
        assert_eq!(err, Error::NotNatural("0<=1".into()));
    }
}
