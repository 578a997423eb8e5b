//! Bounded complexes over the functor category and its filtered subcategory.
//!
//! Cohomology is always taken in the abelian functor category; filtered
//! complexes are compared there after forgetting the filtration.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::filtered::{self, FiltOpKind};
use crate::functor::{self, Biproduct, FctMor, FctObj, QuotientObject, SubObject};
use crate::poset::IndexPoset;
use crate::rees::{self, ReesResolution};
use crate::scalar::{Field, Rat};

/// `X^lo -> ... -> X^hi`, zero outside `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<F: Field = Rat> {
    poset: Arc<IndexPoset>,
    lo: i64,
    terms: Vec<FctObj<F>>,
    diffs: Vec<FctMor<F>>,
}

/// A chain map; components are stored on the union of the two degree ranges.
#[derive(Clone, Debug)]
pub struct ComplexMor<F: Field = Rat> {
    src: Complex<F>,
    dst: Complex<F>,
    lo: i64,
    comp: Vec<FctMor<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cat {
    Fct,
    Filt,
}

#[derive(Clone, Debug)]
pub struct Cohomology<F: Field = Rat> {
    pub obj: FctObj<F>,
    pub cycles: SubObject<F>,
    pub proj: FctMor<F>,
}

#[derive(Clone, Debug)]
pub struct Truncation<F: Field = Rat> {
    pub complex: Complex<F>,
    /// `τ≤n X -> X` for [`truncate_le`], `X -> τ≥n X` for [`truncate_ge`].
    pub canonical: ComplexMor<F>,
}

#[derive(Clone, Debug)]
pub struct Cone<F: Field = Rat> {
    pub complex: Complex<F>,
    /// `Mc^n = X^{n+1} ⊕ Y^n`, indexed from `complex.lo()`.
    pub sums: Vec<Biproduct<F>>,
}

#[derive(Clone, Debug)]
pub struct LKappa<F: Field = Rat> {
    /// `κ` applied termwise to the total complex.
    pub total: Complex<F>,
    /// `ι(total) -> X`, a quasi-isomorphism.
    pub augmentation: ComplexMor<F>,
    pub resolutions: Vec<ReesResolution<F>>,
}

#[derive(Clone, Debug)]
pub struct HeartObj<F: Field = Rat> {
    e_incl: FctMor<F>,
}

impl<F: Field> Complex<F> {
    pub fn new(poset: Arc<IndexPoset>, lo: i64, terms: Vec<FctObj<F>>, diffs: Vec<FctMor<F>>) -> Result<Self> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::NotAComplex(format!("{} terms but {} differentials", terms.len(), diffs.len())));
        }
        for t in &terms {
            if !functor::same_poset(t.poset(), &poset) {
                return Err(Error::PosetMismatch);
            }
        }
        for (i, d) in diffs.iter().enumerate() {
            let n = lo + i as i64;
            if d.src() != &terms[i] || d.dst() != &terms[i + 1] {
                return Err(Error::NotAComplex(format!("d^{n} does not map X^{n} to X^{}", n + 1)));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !w[1].after(&w[0]).is_zero() {
                let n = lo + i as i64;
                return Err(Error::NotAComplex(format!("d^{}∘d^{n} is not zero", n + 1)));
            }
        }
        Ok(Complex { poset, lo, terms, diffs })
    }

    pub fn zero(poset: Arc<IndexPoset>) -> Self {
        Complex { poset, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `M` placed in degree `n`.
    pub fn single(m: FctObj<F>, n: i64) -> Self {
        Complex { poset: m.poset().clone(), lo: n, terms: vec![m], diffs: Vec::new() }
    }

    /// `f: X -> Y` placed in degrees `n, n+1`.
    pub fn two_term(f: FctMor<F>, n: i64) -> Self {
        Complex {
            poset: f.poset().clone(),
            lo: n,
            terms: vec![f.src().clone(), f.dst().clone()],
            diffs: vec![f],
        }
    }

    pub fn poset(&self) -> &Arc<IndexPoset> {
        &self.poset
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest stored degree; `lo - 1` when empty.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    fn slot(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    pub fn term(&self, n: i64) -> FctObj<F> {
        match self.slot(n) {
            Some(i) => self.terms[i].clone(),
            None => FctObj::zero(self.poset.clone()),
        }
    }

    pub fn terms(&self) -> &[FctObj<F>] {
        &self.terms
    }

    /// `d^n: X^n -> X^{n+1}`.
    pub fn diff(&self, n: i64) -> FctMor<F> {
        match self.slot(n) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => FctMor::zero(&self.term(n), &self.term(n + 1)),
        }
    }

    pub fn is_filtered(&self) -> bool {
        self.terms.iter().all(filtered::is_filtered)
    }

    fn require_filtered(&self) -> Result<()> {
        for t in &self.terms {
            if let Some(w) = filtered::not_filtered_witness(t) {
                let p = t.poset();
                return Err(Error::NotFiltered(p.name(w.pair.0).into(), p.name(w.pair.1).into()));
            }
        }
        Ok(())
    }

    pub fn cohomology_dims(&self, n: i64) -> Vec<usize> {
        cohomology(self, n).obj.dims().to_vec()
    }
}

/// Degree range covering both complexes.
fn joint_range<F: Field>(a: &Complex<F>, b: &Complex<F>) -> (i64, i64) {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        (false, false) => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

impl<F: Field> ComplexMor<F> {
    /// Builds the chain map from components on the joint degree range and
    /// checks that it commutes with the differentials.
    pub fn new(src: Complex<F>, dst: Complex<F>, mut comp: impl FnMut(i64) -> FctMor<F>) -> Result<Self> {
        let f = Self::new_unchecked(src, dst, &mut comp);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: Complex<F>, dst: Complex<F>, mut comp: impl FnMut(i64) -> FctMor<F>) -> Self {
        let (lo, hi) = joint_range(&src, &dst);
        let comp = (lo..=hi).map(&mut comp).collect();
        ComplexMor { src, dst, lo, comp }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = joint_range(&self.src, &self.dst);
        for n in lo..=hi {
            let c = self.comp(n);
            if c.src().dims() != self.src.term(n).dims() || c.dst().dims() != self.dst.term(n).dims() {
                return Err(Error::DimensionMismatch(format!("chain map component in degree {n}")));
            }
        }
        for n in lo - 1..=hi {
            let left = self.dst.diff(n).after(&self.comp(n));
            let right = self.comp(n + 1).after(&self.src.diff(n));
            if left.components() != right.components() {
                return Err(Error::NotNatural(format!("chain map square in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn identity(x: &Complex<F>) -> Self {
        Self::new_unchecked(x.clone(), x.clone(), |n| FctMor::identity(&x.term(n)))
    }

    pub fn zero(src: &Complex<F>, dst: &Complex<F>) -> Self {
        Self::new_unchecked(src.clone(), dst.clone(), |n| FctMor::zero(&src.term(n), &dst.term(n)))
    }

    pub fn src(&self) -> &Complex<F> {
        &self.src
    }

    pub fn dst(&self) -> &Complex<F> {
        &self.dst
    }

    pub fn comp(&self, n: i64) -> FctMor<F> {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.comp.len() {
            self.comp[i as usize].clone()
        } else {
            FctMor::zero(&self.src.term(n), &self.dst.term(n))
        }
    }

    pub fn after(&self, first: &Self) -> Self {
        Self::new_unchecked(first.src.clone(), self.dst.clone(), |n| self.comp(n).after(&first.comp(n)))
    }
}

pub fn cohomology<F: Field>(x: &Complex<F>, n: i64) -> Cohomology<F> {
    let cycles = x.diff(n).kernel();
    let boundaries = functor::factor_through(&x.diff(n - 1), &cycles.incl).expect("d∘d = 0");
    let QuotientObject { obj, proj } = boundaries.cokernel();
    Cohomology { obj, cycles, proj }
}

/// `H^n(φ)`.
pub fn induced_on_cohomology<F: Field>(phi: &ComplexMor<F>, n: i64) -> FctMor<F> {
    let hx = cohomology(&phi.src, n);
    let hy = cohomology(&phi.dst, n);
    let z = functor::factor_through(&phi.comp(n).after(&hx.cycles.incl), &hy.cycles.incl)
        .expect("chain maps preserve cycles");
    functor::descend(&hy.proj.after(&z), &hx.proj).expect("chain maps preserve boundaries")
}

/// True when every `H^n(φ)` is a pointwise isomorphism.
pub fn qis_check<F: Field>(phi: &ComplexMor<F>) -> bool {
    let (lo, hi) = joint_range(&phi.src, &phi.dst);
    (lo..=hi).all(|n| induced_on_cohomology(phi, n).is_iso())
}

pub fn strictly_exact_in_degree<F: Field>(x: &Complex<F>, n: i64) -> Result<bool> {
    x.require_filtered()?;
    Ok(filtered::strictly_exact_pair(&x.diff(n - 1), &x.diff(n))?.exact)
}

/// `τ≤n X = (... -> X^{n-1} -> ker d^n -> 0)` with its inclusion into `X`.
pub fn truncate_le<F: Field>(x: &Complex<F>, n: i64, cat: Cat) -> Result<Truncation<F>> {
    if cat == Cat::Filt {
        x.require_filtered()?;
    }
    if x.is_empty() || n < x.lo() {
        let z = Complex::zero(x.poset.clone());
        let canonical = ComplexMor::zero(&z, x);
        return Ok(Truncation { complex: z, canonical });
    }
    if n >= x.hi() {
        return Ok(Truncation { complex: x.clone(), canonical: ComplexMor::identity(x) });
    }
    let ker = match cat {
        Cat::Fct => x.diff(n).kernel(),
        Cat::Filt => {
            let k = filtered::filt_op(FiltOpKind::Ker, &x.diff(n))?;
            SubObject { obj: k.obj.into_inner(), incl: k.structural }
        }
    };
    let mut terms: Vec<FctObj<F>> = (x.lo()..n).map(|k| x.term(k)).collect();
    terms.push(ker.obj.clone());
    let mut diffs: Vec<FctMor<F>> = (x.lo()..n - 1).map(|k| x.diff(k)).collect();
    if n > x.lo() {
        diffs.push(functor::factor_through(&x.diff(n - 1), &ker.incl)?);
    }
    let t = Complex::new(x.poset.clone(), x.lo(), terms, diffs)?;
    let canonical = ComplexMor::new_unchecked(t.clone(), x.clone(), |k| {
        if k == n {
            ker.incl.clone()
        } else if k >= x.lo() && k < n {
            FctMor::identity(&x.term(k))
        } else {
            FctMor::zero(&t.term(k), &x.term(k))
        }
    });
    Ok(Truncation { complex: t, canonical })
}

/// `τ≥n X = (0 -> coim d^{n-1} -> X^n -> ...)` with the projection from `X`.
pub fn truncate_ge<F: Field>(x: &Complex<F>, n: i64, cat: Cat) -> Result<Truncation<F>> {
    if cat == Cat::Filt {
        x.require_filtered()?;
    }
    if x.is_empty() || n <= x.lo() {
        return Ok(Truncation { complex: x.clone(), canonical: ComplexMor::identity(x) });
    }
    if n > x.hi() {
        let z = Complex::zero(x.poset.clone());
        let canonical = ComplexMor::zero(x, &z);
        return Ok(Truncation { complex: z, canonical });
    }
    let d = x.diff(n - 1);
    let (coim, proj, mono) = match cat {
        Cat::Fct => {
            let c = d.coimage();
            (c.obj, c.proj, c.mono_part)
        }
        Cat::Filt => {
            let c = filtered::filt_op(FiltOpKind::Coim, &d)?;
            (c.obj.into_inner(), c.structural, d.image().incl)
        }
    };
    let mut terms = vec![coim];
    terms.extend((n..=x.hi()).map(|k| x.term(k)));
    let mut diffs = vec![mono];
    diffs.extend((n..x.hi()).map(|k| x.diff(k)));
    let t = Complex::new(x.poset.clone(), n - 1, terms, diffs)?;
    let canonical = ComplexMor::new_unchecked(x.clone(), t.clone(), |k| {
        if k == n - 1 {
            proj.clone()
        } else if k >= n {
            FctMor::identity(&x.term(k))
        } else {
            FctMor::zero(&x.term(k), &t.term(k))
        }
    });
    Ok(Truncation { complex: t, canonical })
}

/// `Mc(f)^n = X^{n+1} ⊕ Y^n` with `d = [[-d_X, 0], [f, d_Y]]`.
pub fn mapping_cone<F: Field>(f: &ComplexMor<F>) -> Cone<F> {
    let (x, y) = (&f.src, &f.dst);
    let (lo, hi) = match (x.is_empty(), y.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (y.lo(), y.hi()),
        (false, true) => (x.lo() - 1, x.hi() - 1),
        (false, false) => ((x.lo() - 1).min(y.lo()), (x.hi() - 1).max(y.hi())),
    };
    let sums: Vec<Biproduct<F>> = (lo..=hi).map(|n| x.term(n + 1).direct_sum(&y.term(n))).collect();
    let terms: Vec<FctObj<F>> = sums.iter().map(|s| s.obj.clone()).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let (a, b) = (&sums[(n - lo) as usize], &sums[(n + 1 - lo) as usize]);
            let xx = b.inj[0].after(&x.diff(n + 1).neg()).after(&a.proj[0]);
            let xy = b.inj[1].after(&f.comp(n + 1)).after(&a.proj[0]);
            let yy = b.inj[1].after(&y.diff(n)).after(&a.proj[1]);
            xx.add(&xy).add(&yy)
        })
        .collect();
    let complex = Complex::new(x.poset.clone(), lo, terms, diffs).expect("cone differential squares to zero");
    Cone { complex, sums }
}

impl<F: Field> Cone<F> {
    fn sum(&self, n: i64) -> Option<&Biproduct<F>> {
        let i = n - self.complex.lo();
        (i >= 0 && (i as usize) < self.sums.len()).then(|| &self.sums[i as usize])
    }

    /// `(0, q): Mc(f) -> Z` for `q: Y -> Z` with `q∘f = 0`.
    pub fn to_quotient(&self, q: &ComplexMor<F>) -> Result<ComplexMor<F>> {
        let mc = &self.complex;
        ComplexMor::new(mc.clone(), q.dst.clone(), |n| match self.sum(n) {
            Some(s) => q.comp(n).after(&s.proj[1]),
            None => FctMor::zero(&mc.term(n), &q.dst.term(n)),
        })
    }

    /// `Y -> Mc(f)`.
    pub fn from_target(&self, y: &Complex<F>) -> Result<ComplexMor<F>> {
        let mc = &self.complex;
        ComplexMor::new(y.clone(), mc.clone(), |n| match self.sum(n) {
            Some(s) => s.inj[1].clone(),
            None => FctMor::zero(&y.term(n), &mc.term(n)),
        })
    }
}

/// `Lκ(X)`: the total complex of the termwise Rees resolutions
/// `K^n -> Rees(X^n)`, with `κ` applied termwise and the augmentation to `X`.
pub fn lkappa<F: Field>(x: &Complex<F>) -> Result<LKappa<F>> {
    let p = x.poset.clone();
    if x.is_empty() {
        let z = Complex::zero(p);
        return Ok(LKappa { total: z.clone(), augmentation: ComplexMor::zero(&z, x), resolutions: Vec::new() });
    }
    let res: Vec<ReesResolution<F>> = x.terms.iter().map(rees::rees_resolution).collect();
    let rees_diffs: Vec<FctMor<F>> =
        x.diffs.iter().enumerate().map(|(i, d)| res[i].rees.map(d, &res[i + 1].rees)).collect();
    let r = Complex::new(
        p.clone(),
        x.lo,
        res.iter().map(|r| r.rees.rees.underlying().clone()).collect(),
        rees_diffs.clone(),
    )?;
    let k_diffs = rees_diffs
        .iter()
        .enumerate()
        .map(|(i, d)| functor::factor_through(&d.after(&res[i].incl), &res[i + 1].incl))
        .collect::<Result<Vec<_>>>()?;
    let k = Complex::new(p.clone(), x.lo, res.iter().map(|r| r.kernel.underlying().clone()).collect(), k_diffs)?;
    let incl = ComplexMor::new(k.clone(), r.clone(), |n| match k.slot(n) {
        Some(i) => res[i].incl.clone(),
        None => FctMor::zero(&k.term(n), &r.term(n)),
    })?;
    let cone = mapping_cone(&incl);
    let t = &cone.complex;
    let aug = ComplexMor::new(t.clone(), x.clone(), |n| match (cone.sum(n), x.slot(n)) {
        (Some(s), Some(i)) => res[i].eps.after(&s.proj[1]),
        _ => FctMor::zero(&t.term(n), &x.term(n)),
    })?;
    if !qis_check(&aug) {
        return Err(Error::ComparisonNotIso("augmentation of the Rees resolution".into()));
    }

    let kappas: Vec<filtered::Kappa<F>> = t.terms.iter().map(filtered::kappa).collect();
    let mut inverses = Vec::with_capacity(kappas.len());
    for k in &kappas {
        inverses.push(k.unit.inverse().map_err(|_| Error::ComparisonNotIso("κ unit on a filtered term".into()))?);
    }
    let terms = kappas.iter().map(|k| k.obj.underlying().clone()).collect();
    let diffs = t
        .diffs
        .iter()
        .enumerate()
        .map(|(i, d)| kappas[i + 1].unit.after(d).after(&inverses[i]))
        .collect();
    let total = Complex::new(p, t.lo, terms, diffs)?;
    let augmentation = ComplexMor::new(total.clone(), x.clone(), |n| match t.slot(n) {
        Some(i) => aug.comp(n).after(&inverses[i]),
        None => FctMor::zero(&total.term(n), &x.term(n)),
    })?;
    Ok(LKappa { total, augmentation, resolutions: res })
}

impl<F: Field> HeartObj<F> {
    /// `E^{-1} -> E^0`, a pointwise injective map of filtered objects.
    pub fn new(e_incl: FctMor<F>) -> Result<Self> {
        for o in [e_incl.src(), e_incl.dst()] {
            filtered::FiltObj::new(o.clone())?;
        }
        if !e_incl.is_pointwise_injective() {
            return Err(Error::NotInjective);
        }
        Ok(HeartObj { e_incl })
    }

    pub fn e_incl(&self) -> &FctMor<F> {
        &self.e_incl
    }
}

pub fn heart_to_functor<F: Field>(h: &HeartObj<F>) -> QuotientObject<F> {
    h.e_incl.cokernel()
}

pub fn functor_to_heart<F: Field>(m: &FctObj<F>) -> (HeartObj<F>, ReesResolution<F>) {
    let res = rees::rees_resolution(m);
    (HeartObj { e_incl: res.incl.clone() }, res)
}

/// The canonical `coker(K -> Rees(M)) -> M` induced by `ε`, required to be an isomorphism.
pub fn heart_round_trip<F: Field>(m: &FctObj<F>) -> Result<FctMor<F>> {
    let (h, res) = functor_to_heart(m);
    let q = heart_to_functor(&h);
    let cmp = functor::descend(&res.eps, &q.proj)?;
    if !cmp.is_iso() {
        return Err(Error::ComparisonNotIso("coker(K -> Rees(M)) -> M".into()));
    }
    Ok(cmp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    type M = Matrix<Rat>;

    fn point() -> Arc<IndexPoset> {
        Arc::new(IndexPoset::singleton())
    }

    fn vect(d: usize) -> FctObj {
        FctObj::constant(point(), d)
    }

    fn lin(src: usize, dst: usize, m: M) -> FctMor {
        FctMor::new(vect(src), vect(dst), vec![m]).unwrap()
    }

    fn two_chain(a: usize, b: usize, m: M) -> FctObj {
        FctObj::from_maps(Arc::new(IndexPoset::chain(2)), vec![a, b], vec![((0, 1), m)]).unwrap()
    }

    #[test]
    fn cohomology_examples() {
        let exact = Complex::two_term(lin(1, 1, M::identity(1)), 0);
        assert!(cohomology(&exact, 0).obj.is_zero());
        assert!(cohomology(&exact, 1).obj.is_zero());

        let single = Complex::single(vect(2), 0);
        assert_eq!(cohomology(&single, 0).obj.dims(), &[2]);

        let x = Complex::two_term(lin(1, 2, M::from_ints(&[[1], [0]])), 0);
        assert_eq!(x.cohomology_dims(0), vec![0]);
        assert_eq!(x.cohomology_dims(1), vec![1]);
        assert_eq!(x.cohomology_dims(5), vec![0]);
    }

    #[test]
    fn not_a_complex() {
        let d = lin(1, 1, M::identity(1));
        let err = Complex::new(point(), 0, vec![vect(1), vect(1), vect(1)], vec![d.clone(), d]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex(_)));
    }

    #[test]
    fn truncation_examples() {
        let x = Complex::two_term(lin(1, 1, M::identity(1)), 0);
        let le = truncate_le(&x, 0, Cat::Fct).unwrap();
        assert!(le.complex.terms().iter().all(|t| t.is_zero()));
        let ge = truncate_ge(&x, 1, Cat::Fct).unwrap();
        assert_eq!(ge.complex.lo(), 0);
        assert_eq!(ge.complex.terms().len(), 2);
        assert!(ge.complex.diff(0).is_iso());
        assert!(strictly_exact_in_degree(&ge.complex, 0).unwrap());
        assert!(strictly_exact_in_degree(&ge.complex, 1).unwrap());

        // H^0 and H^1 both nonzero: 0 -> Q^2 -(e1)-> ... with kernel and cokernel.
        let y = Complex::two_term(lin(2, 2, M::from_ints(&[[1, 0], [0, 0]])), 0);
        let le = truncate_le(&y, 0, Cat::Fct).unwrap();
        assert_eq!(le.complex.cohomology_dims(0), vec![1]);
        assert_eq!(le.complex.cohomology_dims(1), vec![0]);
        le.canonical.validate().unwrap();
        assert!(induced_on_cohomology(&le.canonical, 0).is_iso());
        let ge = truncate_ge(&y, 1, Cat::Fct).unwrap();
        ge.canonical.validate().unwrap();
        assert_eq!(ge.complex.cohomology_dims(0), vec![0]);
        assert!(induced_on_cohomology(&ge.canonical, 1).is_iso());
    }

    #[test]
    fn cone_of_identity_and_zero() {
        let x = Complex::two_term(lin(1, 2, M::from_ints(&[[1], [0]])), 0);
        let c = mapping_cone(&ComplexMor::identity(&x));
        for n in c.complex.lo()..=c.complex.hi() {
            assert!(cohomology(&c.complex, n).obj.is_zero());
        }
        let y = Complex::single(vect(3), 0);
        let c = mapping_cone(&ComplexMor::zero(&x, &y));
        // H^n(Mc) = H^n(Y) ⊕ H^{n+1}(X).
        assert_eq!(c.complex.cohomology_dims(0), vec![3 + 1]);
        assert_eq!(c.complex.cohomology_dims(-1), vec![0]);
    }

    #[test]
    fn qis_of_identity() {
        let x = Complex::two_term(lin(1, 2, M::from_ints(&[[1], [0]])), 0);
        assert!(qis_check(&ComplexMor::identity(&x)));
        let le = truncate_le(&x, 3, Cat::Fct).unwrap();
        assert!(qis_check(&le.canonical));
    }

    #[test]
    fn lkappa_of_small_functor() {
        let m = two_chain(1, 1, M::zeros(1, 1));
        let x = Complex::single(m.clone(), 0);
        let l = lkappa(&x).unwrap();
        assert_eq!(l.total.term(-1).dims(), &[0, 1]);
        assert_eq!(l.total.term(0).dims(), &[1, 2]);
        assert!(l.total.is_filtered());
        assert!(qis_check(&l.augmentation));
        assert_eq!(l.total.cohomology_dims(0), m.dims().to_vec());
        assert_eq!(l.total.cohomology_dims(-1), vec![0, 0]);
        assert!(lkappa(&Complex::<Rat>::zero(point())).unwrap().total.is_empty());
    }

    #[test]
    fn heart_examples() {
        let m = two_chain(1, 2, M::from_ints(&[[0], [1]]));
        assert!(heart_round_trip(&m).unwrap().is_iso());
        let e = FctObj::<Rat>::constant(Arc::new(IndexPoset::chain(2)), 2);
        let h = HeartObj::new(FctMor::identity(&e)).unwrap();
        assert!(heart_to_functor(&h).obj.is_zero());
        let z = FctObj::zero(e.poset().clone());
        let h = HeartObj::new(FctMor::zero(&z, &e)).unwrap();
        assert_eq!(heart_to_functor(&h).obj.dims(), e.dims());
    }
}
