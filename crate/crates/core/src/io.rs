//! Instance files: a poset (or truncated monoid) plus named functors,
//! morphisms, complexes, rings and modules, stored as JSON with rationals
//! written as strings.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::functor::{FctMor, FctObj};
use crate::linalg::Matrix;
use crate::poset::{IndexMonoid, IndexPoset};
use crate::scalar::{format_rat, parse_rat, Rat};
use crate::tensor::{LambdaModule, LambdaRing};

#[derive(Clone, Debug, PartialEq)]
pub struct NamedMor {
    pub src: String,
    pub dst: String,
    pub mor: FctMor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedComplex {
    pub lo: i64,
    pub terms: Vec<String>,
    pub diffs: Vec<String>,
    pub complex: Complex,
}

#[derive(Clone, Debug)]
pub struct NamedRing {
    pub carrier: String,
    pub ring: Arc<LambdaRing>,
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub ring: String,
    pub carrier: String,
    pub module: LambdaModule,
}

/// A validated workspace of named objects over one index poset.
#[derive(Clone, Debug)]
pub struct Instance {
    pub poset: Arc<IndexPoset>,
    pub monoid: Option<IndexMonoid>,
    pub functors: BTreeMap<String, FctObj>,
    pub morphisms: BTreeMap<String, NamedMor>,
    pub complexes: BTreeMap<String, NamedComplex>,
    pub rings: BTreeMap<String, NamedRing>,
    pub modules: BTreeMap<String, NamedModule>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

type MatrixFile = Vec<Vec<Entry>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetFile {
    elements: Vec<String>,
    leq: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidFile {
    kind: String,
    bound: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorFile {
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: BTreeMap<String, MatrixFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    src: String,
    dst: String,
    components: BTreeMap<String, MatrixFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    lo: i64,
    hi: i64,
    terms: BTreeMap<String, String>,
    #[serde(default)]
    diffs: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    carrier: String,
    mult: BTreeMap<String, MatrixFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<MatrixFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    ring: String,
    carrier: String,
    action: BTreeMap<String, MatrixFile>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poset: Option<PosetFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    monoid: Option<MonoidFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    functors: BTreeMap<String, FunctorFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    morphisms: BTreeMap<String, MorphismFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    complexes: BTreeMap<String, ComplexFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    rings: BTreeMap<String, RingFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    modules: BTreeMap<String, ModuleFile>,
}

fn parse_err(at: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {msg}"))
}

fn invalid(object: &str, e: Error) -> Error {
    Error::Validation { object: object.into(), law: e.to_string() }
}

fn read_matrix(at: &str, m: &MatrixFile, rows: usize, cols: usize) -> Result<Matrix<Rat>> {
    if m.len() != rows {
        return Err(parse_err(at, format!("expected {rows} rows, found {}", m.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(parse_err(at, format!("row {r} has {} entries, expected {cols}", row.len())));
        }
        for (c, e) in row.iter().enumerate() {
            let v = match e {
                Entry::Text(s) => parse_rat(s),
                Entry::Int(i) => Some(Rat::from_integer((*i).into())),
            };
            data.push(v.ok_or_else(|| parse_err(&format!("{at}[{r}][{c}]"), "not a rational"))?);
        }
    }
    Matrix::from_vec(rows, cols, data)
}

fn write_matrix(m: &Matrix<Rat>) -> MatrixFile {
    m.to_rows().iter().map(|row| row.iter().map(|v| Entry::Text(format_rat(v))).collect()).collect()
}

fn element(p: &IndexPoset, at: &str, name: &str) -> Result<usize> {
    p.index_of(name).map_err(|_| parse_err(at, format!("unknown element `{name}`")))
}

fn pair_key(p: &IndexPoset, at: &str, key: &str, sep: &str) -> Result<(usize, usize)> {
    let (a, b) = key.split_once(sep).ok_or_else(|| parse_err(at, format!("key `{key}` is not `a{sep}b`")))?;
    Ok((element(p, at, a.trim())?, element(p, at, b.trim())?))
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, at: &str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| parse_err(at, format!("unknown object `{name}`")))
}

impl Instance {
    pub fn new(poset: Arc<IndexPoset>) -> Self {
        Instance {
            poset,
            monoid: None,
            functors: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            complexes: BTreeMap::new(),
            rings: BTreeMap::new(),
            modules: BTreeMap::new(),
        }
    }

    pub fn over_monoid(monoid: IndexMonoid) -> Self {
        let mut inst = Self::new(monoid.poset().clone());
        inst.monoid = Some(monoid);
        inst
    }

    pub fn functor(&self, name: &str) -> Result<&FctObj> {
        self.functors.get(name).ok_or_else(|| Error::UnknownObject(name.into()))
    }

    pub fn morphism(&self, name: &str) -> Result<&FctMor> {
        self.morphisms.get(name).map(|m| &m.mor).ok_or_else(|| Error::UnknownObject(name.into()))
    }

    pub fn complex(&self, name: &str) -> Result<&Complex> {
        self.complexes.get(name).map(|c| &c.complex).ok_or_else(|| Error::UnknownObject(name.into()))
    }

    pub fn ring(&self, name: &str) -> Result<&Arc<LambdaRing>> {
        self.rings.get(name).map(|r| &r.ring).ok_or_else(|| Error::UnknownObject(name.into()))
    }

    pub fn module(&self, name: &str) -> Result<&LambdaModule> {
        self.modules.get(name).map(|m| &m.module).ok_or_else(|| Error::UnknownObject(name.into()))
    }

    fn name_of_functor(&self, obj: &FctObj) -> Option<&str> {
        self.functors.iter().find(|(_, f)| *f == obj).map(|(n, _)| n.as_str())
    }

    /// Inserts a functor, replacing any previous one of the same name.
    pub fn add_functor(&mut self, name: &str, obj: FctObj) -> Result<()> {
        if !crate::functor::same_poset(obj.poset(), &self.poset) {
            return Err(invalid(name, Error::PosetMismatch));
        }
        obj.validate().map_err(|e| invalid(name, e))?;
        self.functors.insert(name.into(), obj);
        Ok(())
    }

    /// Inserts a morphism; its source and target are stored under the given
    /// names, or reuse an equal functor already present.
    pub fn add_morphism(&mut self, name: &str, mor: FctMor, src: &str, dst: &str) -> Result<()> {
        let src = self.ensure_functor(src, mor.src())?;
        let dst = self.ensure_functor(dst, mor.dst())?;
        FctMor::new(mor.src().clone(), mor.dst().clone(), mor.components().to_vec()).map_err(|e| invalid(name, e))?;
        self.morphisms.insert(name.into(), NamedMor { src, dst, mor });
        Ok(())
    }

    fn ensure_functor(&mut self, name: &str, obj: &FctObj) -> Result<String> {
        if let Some(existing) = self.name_of_functor(obj) {
            return Ok(existing.to_string());
        }
        if self.functors.contains_key(name) {
            return Err(invalid(name, Error::Usage(format!("name `{name}` already holds a different functor"))));
        }
        self.add_functor(name, obj.clone())?;
        Ok(name.into())
    }

    /// Inserts a complex, naming its terms `name.X{n}` and differentials
    /// `name.d{n}` unless equal objects are already present.
    pub fn add_complex(&mut self, name: &str, x: Complex) -> Result<()> {
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for n in x.lo()..=x.hi() {
            terms.push(self.ensure_functor(&format!("{name}.X{n}"), &x.term(n))?);
        }
        for n in x.lo()..x.hi() {
            let d = x.diff(n);
            let dn = format!("{name}.d{n}");
            let (s, t) = (terms[(n - x.lo()) as usize].clone(), terms[(n - x.lo() + 1) as usize].clone());
            self.add_morphism(&dn, d, &s, &t)?;
            diffs.push(dn);
        }
        self.complexes.insert(name.into(), NamedComplex { lo: x.lo(), terms, diffs, complex: x });
        Ok(())
    }

    pub fn add_ring(&mut self, name: &str, ring: Arc<LambdaRing>) -> Result<()> {
        self.require_monoid(name, ring.monoid())?;
        ring.validate().map_err(|e| invalid(name, e))?;
        let carrier = self.ensure_functor(&format!("{name}.carrier"), ring.carrier())?;
        self.rings.insert(name.into(), NamedRing { carrier, ring });
        Ok(())
    }

    pub fn add_module(&mut self, name: &str, ring_name: &str, module: LambdaModule) -> Result<()> {
        let ring = self.ring(ring_name)?;
        if !Arc::ptr_eq(ring, module.ring()) && **ring != **module.ring() {
            return Err(invalid(name, Error::Usage(format!("module is not over ring `{ring_name}`"))));
        }
        module.validate().map_err(|e| invalid(name, e))?;
        let carrier = self.ensure_functor(&format!("{name}.carrier"), module.carrier())?;
        self.modules.insert(name.into(), NamedModule { ring: ring_name.into(), carrier, module });
        Ok(())
    }

    fn require_monoid(&mut self, name: &str, m: &IndexMonoid) -> Result<()> {
        match &self.monoid {
            Some(own) if own == m => Ok(()),
            Some(_) => Err(invalid(name, Error::Usage("ring is over a different monoid".into()))),
            None if **m.poset() == *self.poset => {
                self.monoid = Some(m.clone());
                Ok(())
            }
            None => Err(invalid(name, Error::PosetMismatch)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        Self::from_file(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Canonical form: maps on covering pairs only, keys sorted.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("instance serializes");
        s.push('\n');
        s
    }

    fn from_file(file: InstanceFile) -> Result<Self> {
        let mut inst = match (file.poset, file.monoid) {
            (Some(_), Some(_)) => return Err(parse_err("root", "give either `poset` or `monoid`, not both")),
            (None, None) => return Err(parse_err("root", "missing `poset` or `monoid`")),
            (Some(p), None) => Instance::new(Arc::new(
                IndexPoset::new(&p.elements, &p.leq).map_err(|e| parse_err("poset", e))?,
            )),
            (None, Some(m)) => {
                if m.kind != "truncated-nat" {
                    return Err(parse_err("monoid.kind", format!("unknown monoid kind `{}`", m.kind)));
                }
                Instance::over_monoid(IndexMonoid::truncated_nat(m.bound))
            }
        };
        let p = inst.poset.clone();
        for (name, f) in &file.functors {
            let at = format!("functors.{name}");
            let mut dims = vec![None; p.len()];
            for (k, &d) in &f.dims {
                dims[element(&p, &format!("{at}.dims"), k)?] = Some(d);
            }
            let dims: Vec<usize> = dims
                .iter()
                .enumerate()
                .map(|(i, d)| d.ok_or_else(|| parse_err(&format!("{at}.dims"), format!("missing `{}`", p.name(i)))))
                .collect::<Result<_>>()?;
            let mut maps = Vec::new();
            for (k, m) in &f.maps {
                let mat_at = format!("{at}.maps.{k}");
                let (a, b) = pair_key(&p, &mat_at, k, "<=")?;
                maps.push(((a, b), read_matrix(&mat_at, m, dims[b], dims[a])?));
            }
            let obj = FctObj::from_maps(p.clone(), dims, maps).map_err(|e| invalid(name, e))?;
            inst.functors.insert(name.clone(), obj);
        }
        for (name, m) in &file.morphisms {
            let at = format!("morphisms.{name}");
            let src = lookup(&inst.functors, &format!("{at}.src"), &m.src)?.clone();
            let dst = lookup(&inst.functors, &format!("{at}.dst"), &m.dst)?.clone();
            let mut comp = vec![None; p.len()];
            for (k, mat) in &m.components {
                let c_at = format!("{at}.components.{k}");
                let x = element(&p, &c_at, k)?;
                comp[x] = Some(read_matrix(&c_at, mat, dst.dim(x), src.dim(x))?);
            }
            let comp = comp
                .into_iter()
                .enumerate()
                .map(|(x, c)| c.ok_or_else(|| parse_err(&format!("{at}.components"), format!("missing `{}`", p.name(x)))))
                .collect::<Result<Vec<_>>>()?;
            let mor = FctMor::new(src, dst, comp).map_err(|e| invalid(name, e))?;
            inst.morphisms.insert(name.clone(), NamedMor { src: m.src.clone(), dst: m.dst.clone(), mor });
        }
        for (name, c) in &file.complexes {
            let at = format!("complexes.{name}");
            let degree = |k: &str| -> Result<i64> {
                k.parse().map_err(|_| parse_err(&at, format!("degree `{k}` is not an integer")))
            };
            let mut terms = BTreeMap::new();
            for (k, t) in &c.terms {
                terms.insert(degree(k)?, t.clone());
            }
            let mut diffs = BTreeMap::new();
            for (k, d) in &c.diffs {
                diffs.insert(degree(k)?, d.clone());
            }
            let mut term_names = Vec::new();
            let mut objs = Vec::new();
            for n in c.lo..=c.hi {
                let t = terms.get(&n).ok_or_else(|| parse_err(&format!("{at}.terms"), format!("missing degree {n}")))?;
                objs.push(lookup(&inst.functors, &format!("{at}.terms.{n}"), t)?.clone());
                term_names.push(t.clone());
            }
            let mut diff_names = Vec::new();
            let mut ds = Vec::new();
            for n in c.lo..c.hi {
                let d = diffs.get(&n).ok_or_else(|| parse_err(&format!("{at}.diffs"), format!("missing degree {n}")))?;
                ds.push(lookup(&inst.morphisms, &format!("{at}.diffs.{n}"), d)?.mor.clone());
                diff_names.push(d.clone());
            }
            if let Some(&n) = terms.keys().chain(diffs.keys()).find(|&&n| n < c.lo || n > c.hi) {
                return Err(parse_err(&at, format!("degree {n} outside [{}, {}]", c.lo, c.hi)));
            }
            let complex = Complex::new(p.clone(), c.lo, objs, ds).map_err(|e| invalid(name, e))?;
            inst.complexes
                .insert(name.clone(), NamedComplex { lo: c.lo, terms: term_names, diffs: diff_names, complex });
        }
        let pair_table = |at: &str, table: &BTreeMap<String, MatrixFile>, shape: &dyn Fn(usize, usize) -> (usize, usize)| {
            let mut out = Vec::new();
            for (k, m) in table {
                let e_at = format!("{at}.{k}");
                let (a, b) = pair_key(&p, &e_at, k, ",")?;
                let (r, c) = shape(a, b);
                out.push(((a, b), read_matrix(&e_at, m, r, c)?));
            }
            Ok::<_, Error>(out)
        };
        for (name, r) in &file.rings {
            let at = format!("rings.{name}");
            let monoid = inst.monoid.clone().ok_or_else(|| parse_err(&at, "rings need a `monoid`"))?;
            let carrier = lookup(&inst.functors, &format!("{at}.carrier"), &r.carrier)?.clone();
            let mult = pair_table(&format!("{at}.mult"), &r.mult, &|a, b| {
                (carrier.dim(monoid.add(a, b)), carrier.dim(a) * carrier.dim(b))
            })?;
            let unit = r.unit.as_ref().map(|u| read_matrix(&format!("{at}.unit"), u, carrier.dim(0), 1)).transpose()?;
            let ring = LambdaRing::new(monoid, carrier, mult, unit).map_err(|e| invalid(name, e))?;
            inst.rings.insert(name.clone(), NamedRing { carrier: r.carrier.clone(), ring: Arc::new(ring) });
        }
        for (name, m) in &file.modules {
            let at = format!("modules.{name}");
            let ring = lookup(&inst.rings, &format!("{at}.ring"), &m.ring)?.ring.clone();
            let carrier = lookup(&inst.functors, &format!("{at}.carrier"), &m.carrier)?.clone();
            let monoid = ring.monoid().clone();
            let a = ring.carrier().clone();
            let action = pair_table(&format!("{at}.action"), &m.action, &|x, y| {
                (carrier.dim(monoid.add(x, y)), a.dim(x) * carrier.dim(y))
            })?;
            let module = LambdaModule::new(ring, carrier, action).map_err(|e| invalid(name, e))?;
            inst.modules
                .insert(name.clone(), NamedModule { ring: m.ring.clone(), carrier: m.carrier.clone(), module });
        }
        Ok(inst)
    }

    fn to_file(&self) -> InstanceFile {
        let p = &self.poset;
        let mut file = InstanceFile::default();
        match &self.monoid {
            Some(m) => file.monoid = Some(MonoidFile { kind: "truncated-nat".into(), bound: m.bound() }),
            None => {
                file.poset = Some(PosetFile { elements: p.elements().to_vec(), leq: p.cover_names() });
            }
        }
        for (name, f) in &self.functors {
            let dims = (0..p.len()).map(|x| (p.name(x).to_string(), f.dim(x))).collect();
            let maps = p.covers().into_iter().map(|(a, b)| (p.pair_label(a, b), write_matrix(f.map(a, b)))).collect();
            file.functors.insert(name.clone(), FunctorFile { dims, maps });
        }
        for (name, m) in &self.morphisms {
            let components = (0..p.len()).map(|x| (p.name(x).to_string(), write_matrix(m.mor.comp(x)))).collect();
            file.morphisms
                .insert(name.clone(), MorphismFile { src: m.src.clone(), dst: m.dst.clone(), components });
        }
        for (name, c) in &self.complexes {
            let terms = c.terms.iter().enumerate().map(|(i, t)| ((c.lo + i as i64).to_string(), t.clone())).collect();
            let diffs = c.diffs.iter().enumerate().map(|(i, d)| ((c.lo + i as i64).to_string(), d.clone())).collect();
            let hi = c.lo + c.terms.len() as i64 - 1;
            file.complexes.insert(name.clone(), ComplexFile { lo: c.lo, hi, terms, diffs });
        }
        let pairs = |f: &dyn Fn(usize, usize) -> Matrix<Rat>| -> BTreeMap<String, MatrixFile> {
            let n = p.len();
            (0..n * n)
                .map(|k| (format!("{},{}", p.name(k / n), p.name(k % n)), write_matrix(&f(k / n, k % n))))
                .collect()
        };
        for (name, r) in &self.rings {
            let mult = pairs(&|a, b| r.ring.mult(a, b).clone());
            let unit = r.ring.unit().map(write_matrix);
            file.rings.insert(name.clone(), RingFile { carrier: r.carrier.clone(), mult, unit });
        }
        for (name, m) in &self.modules {
            let action = pairs(&|a, b| m.module.action(a, b).clone());
            file.modules
                .insert(name.clone(), ModuleFile { ring: m.ring.clone(), carrier: m.carrier.clone(), action });
        }
        file
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_instance_is_canonical() {
        let text = crate::verify::COIM_VS_IM;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.to_json(), text);
        let f = inst.morphism("f").unwrap();
        assert_eq!(f.src().dims(), &[1, 2, 3, 4, 5]);
        assert_eq!(f.dst().dims(), &[2, 3, 4, 5, 5]);
    }

    #[test]
    fn empty_instance_round_trip() {
        let text = r#"{"poset": {"elements": ["a", "b"], "leq": [["a", "b"]]}}"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.poset.len(), 2);
        assert!(inst.functors.is_empty());
        let again = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(again.to_json(), inst.to_json());
    }

    #[test]
    fn functor_and_morphism() {
        let text = r#"{
            "poset": {"elements": ["0", "1"], "leq": [["0", "1"]]},
            "functors": {
                "A": {"dims": {"0": 1, "1": 2}, "maps": {"0<=1": [["1"], ["0"]]}},
                "B": {"dims": {"0": 1, "1": 1}, "maps": {"0<=1": [[1]]}}
            },
            "morphisms": {"p": {"src": "A", "dst": "B", "components": {"0": [["1"]], "1": [["1", "1/2"]]}}}
        }"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.functor("A").unwrap().dims(), &[1, 2]);
        let back = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back.morphism("p").unwrap(), inst.morphism("p").unwrap());
    }

    #[test]
    fn non_natural_morphism_is_rejected() {
        let text = r#"{
            "poset": {"elements": ["0", "1"], "leq": [["0", "1"]]},
            "functors": {"A": {"dims": {"0": 1, "1": 1}, "maps": {"0<=1": [["1"]]}}},
            "morphisms": {"f": {"src": "A", "dst": "A", "components": {"0": [["1"]], "1": [["2"]]}}}
        }"#;
        match Instance::from_json(text).unwrap_err() {
            Error::Validation { object, law } => {
                assert_eq!(object, "f");
                assert!(law.contains("0<=1"), "{law}");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn parse_errors_carry_location() {
        let bad_entry = r#"{
            "poset": {"elements": ["0"], "leq": []},
            "functors": {"A": {"dims": {"0": 1}, "maps": {"0<=0": [["x"]]}}}
        }"#;
        let e = Instance::from_json(bad_entry).unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("functors.A.maps.0<=0[0][0]")), "{e}");
        let e = Instance::from_json("{\n  \"poset\": [\n").unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("line")), "{e}");
    }

    #[test]
    fn ring_and_module_round_trip() {
        let mut inst = Instance::over_monoid(IndexMonoid::truncated_nat(2));
        let ring = Arc::new(LambdaRing::<Rat>::truncated_polynomial(2));
        inst.add_ring("A", ring.clone()).unwrap();
        inst.add_module("M", "A", LambdaModule::free(&ring, 1)).unwrap();
        let text = inst.to_json();
        let back = Instance::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.module("M").unwrap().carrier().dims(), &[0, 1, 3]);
    }

    #[test]
    fn complex_round_trip() {
        let p = Arc::new(IndexPoset::chain(2));
        let a = FctObj::<Rat>::constant(p.clone(), 1);
        let x = Complex::two_term(FctMor::identity(&a), -1);
        let mut inst = Instance::new(p);
        inst.add_complex("X", x.clone()).unwrap();
        let back = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back.complex("X").unwrap(), &x);
    }
}
