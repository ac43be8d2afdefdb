//! Named algebras: abelian `A(n)`, Heisenberg `H(m)`, the low-dimensional
//! algebras stored in `data/catalog.json`, and direct sums of these with
//! abelian summands.
//!
//! # Data file layout
//!
//! ```json
//! { "format": "schurlab-catalog", "version": 1,
//!   "entries": [ { "name": "L5_8", "dim": 5,
//!                  "brackets": [["x1", "x2", "x4"], ["x1", "x3", "x5"]],
//!                  "parameters": [{ "name": "eps", "samples": ["0", "1"] }],
//!                  "asserted": { "n": 5, "m": 2, "c": 2 },
//!                  "source": "where the constants come from" } ] }
//! ```
//!
//! Each bracket triple is `[left, right, combo]` where `combo` uses the same
//! syntax as presentation files and may mention parameters by name. Every entry
//! is built and checked against `asserted` when the catalog is loaded.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::{parse_combo, DslError};
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{parse_scalar, Scalar, SparseVec};

/// Largest dimension `enumerate` will produce.
pub const MAX_ENUMERATION_DIM: usize = 8;

const BUILTIN: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown algebra name '{0}'")]
    UnknownName(String),
    #[error("algebra {name} needs a value for parameter '{parameter}'")]
    MissingParameter { name: String, parameter: String },
    #[error("invalid value '{value}' for parameter '{parameter}'")]
    InvalidParameter { parameter: String, value: String },
    #[error("{name}: asserted (n,m,c) = {asserted:?} but computed {computed:?}")]
    InvariantMismatch {
        name: String,
        asserted: (usize, usize, usize),
        computed: (usize, usize, usize),
    },
    #[error("enumeration is limited to dimension {limit}, requested {requested}")]
    TooLarge { requested: usize, limit: usize },
    #[error("catalog data: {0}")]
    Data(String),
    #[error("catalog entry {name}: {source}")]
    Bracket { name: String, source: DslError },
    #[error("catalog entry {name}: {source}")]
    Lie { name: String, source: LieError },
}

/// `(n, m, c)`: dimension, dimension of the derived algebra, class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub n: usize,
    pub m: usize,
    pub c: usize,
}

impl Invariants {
    pub fn of(l: &LieAlgebra) -> Result<Self, LieError> {
        let r = l.series()?.report();
        Ok(Self {
            n: l.dim(),
            m: r.derived_dim,
            c: r.class,
        })
    }

    fn tuple(self) -> (usize, usize, usize) {
        (self.n, self.m, self.c)
    }

    /// Invariants of a direct sum.
    pub fn plus(self, other: Invariants) -> Invariants {
        Invariants {
            n: self.n + other.n,
            m: self.m + other.m,
            c: self.c.max(other.c),
        }
    }

    fn abelian(n: usize) -> Invariants {
        Invariants {
            n,
            m: 0,
            c: usize::from(n > 0),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawCatalog {
    format: String,
    version: u32,
    entries: Vec<RawEntry>,
}

#[derive(Debug, Clone, Deserialize)]
struct RawEntry {
    name: String,
    dim: usize,
    brackets: Vec<(String, String, String)>,
    #[serde(default)]
    parameters: Vec<RawParameter>,
    asserted: Invariants,
    #[serde(default)]
    source: String,
}

#[derive(Debug, Clone, Deserialize)]
struct RawParameter {
    name: String,
    samples: Vec<String>,
}

#[derive(Debug, Clone)]
struct Parameter {
    name: String,
    samples: Vec<Scalar>,
}

/// A stored algebra, possibly depending on rational parameters.
#[derive(Debug, Clone)]
pub struct BaseSpec {
    name: String,
    dim: usize,
    brackets: Vec<(usize, usize, String)>,
    parameters: Vec<Parameter>,
    asserted: Invariants,
    source: String,
}

impl BaseSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn parameter_names(&self) -> Vec<&str> {
        self.parameters.iter().map(|p| p.name.as_str()).collect()
    }

    fn display_name(&self, params: &BTreeMap<String, Scalar>) -> String {
        if self.parameters.is_empty() {
            return self.name.clone();
        }
        let args: Vec<String> = self
            .parameters
            .iter()
            .map(|p| format!("{}={}", p.name, params[&p.name]))
            .collect();
        format!("{}({})", self.name, args.join(","))
    }

    fn build(&self, params: &BTreeMap<String, Scalar>) -> Result<LieAlgebra, CatalogError> {
        for p in &self.parameters {
            if !params.contains_key(&p.name) {
                return Err(CatalogError::MissingParameter {
                    name: self.name.clone(),
                    parameter: p.name.clone(),
                });
            }
        }
        let name = self.display_name(params);
        let mut l = LieAlgebra::new(self.dim).with_name(name.clone());
        for (i, j, combo) in &self.brackets {
            let rhs =
                parse_combo(combo, self.dim, params).map_err(|source| CatalogError::Bracket {
                    name: name.clone(),
                    source,
                })?;
            l.set_bracket(*i, *j, rhs)
                .map_err(|source| CatalogError::Lie {
                    name: name.clone(),
                    source,
                })?;
        }
        check(&name, &l, self.asserted)?;
        Ok(l)
    }
}

fn check(name: &str, l: &LieAlgebra, asserted: Invariants) -> Result<(), CatalogError> {
    let lie = |source| CatalogError::Lie {
        name: name.to_string(),
        source,
    };
    l.validate().map_err(lie)?;
    let computed = Invariants::of(l).map_err(lie)?;
    if computed != asserted {
        return Err(CatalogError::InvariantMismatch {
            name: name.to_string(),
            asserted: asserted.tuple(),
            computed: computed.tuple(),
        });
    }
    Ok(())
}

fn generator_index(text: &str, dim: usize, entry: &str) -> Result<usize, CatalogError> {
    text.trim()
        .strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&k| k >= 1 && k <= dim)
        .map(|k| k - 1)
        .ok_or_else(|| CatalogError::Data(format!("{entry}: bad generator '{text}'")))
}

/// A catalog algebra together with how it was named.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Display name, e.g. `H(1)+A(2)` or `L6_22(eps=1/2)`.
    pub name: String,
    /// Name of the summand that is not an abelian extension, e.g. `H(1)`.
    pub base: String,
    /// `k` of the abelian summand `A(k)`; 0 when absent.
    pub extension: usize,
    pub parameters: BTreeMap<String, Scalar>,
    pub asserted: Invariants,
    pub algebra: LieAlgebra,
}

impl CatalogEntry {
    fn new(
        base: String,
        parameters: BTreeMap<String, Scalar>,
        asserted: Invariants,
        algebra: LieAlgebra,
    ) -> Self {
        Self {
            name: base.clone(),
            base,
            extension: 0,
            parameters,
            asserted,
            algebra,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.asserted.m == 0
    }

    /// `self ⊕ A(k)`.
    pub fn extend(&self, k: usize) -> Result<CatalogEntry, CatalogError> {
        if k == 0 {
            return Ok(self.clone());
        }
        let total = self.extension + k;
        let base_dim = self.asserted.n - self.extension;
        let asserted = Invariants::abelian(total).plus(Invariants {
            n: base_dim,
            ..self.asserted
        });
        let name = format!("{}+A({total})", self.base);
        let mut algebra = self.algebra.direct_sum(&abelian(k));
        algebra = algebra.with_name(name.clone());
        check(&name, &algebra, asserted)?;
        Ok(CatalogEntry {
            name,
            base: self.base.clone(),
            extension: total,
            parameters: self.parameters.clone(),
            asserted,
            algebra,
        })
    }
}

/// `A(n)`: `n`-dimensional abelian.
pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::new(n).with_name(format!("A({n})"))
}

/// `H(m)`: `[x_{2i-1}, x_{2i}] = x_{2m+1}`.
pub fn heisenberg(m: usize) -> LieAlgebra {
    assert!(m >= 1, "H(m) needs m >= 1");
    let mut l = LieAlgebra::new(2 * m + 1).with_name(format!("H({m})"));
    for i in 0..m {
        l.set_bracket(2 * i, 2 * i + 1, SparseVec::unit(2 * m))
            .expect("indices in range");
    }
    l
}

#[derive(Debug, Clone)]
pub struct Catalog {
    specs: Vec<BaseSpec>,
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(BUILTIN).expect("built-in catalog is valid"))
    }

    /// Parses a catalog file and checks every entry (each parameter sample, if any).
    pub fn from_json(text: &str) -> Result<Catalog, CatalogError> {
        let raw: RawCatalog =
            serde_json::from_str(text).map_err(|e| CatalogError::Data(e.to_string()))?;
        if raw.format != "schurlab-catalog" || raw.version != 1 {
            return Err(CatalogError::Data(format!(
                "unsupported catalog format {} version {}",
                raw.format, raw.version
            )));
        }
        let mut specs = Vec::new();
        for entry in raw.entries {
            let mut brackets = Vec::new();
            for (a, b, combo) in &entry.brackets {
                let i = generator_index(a, entry.dim, &entry.name)?;
                let j = generator_index(b, entry.dim, &entry.name)?;
                if i == j {
                    return Err(CatalogError::Data(format!("{}: self bracket", entry.name)));
                }
                brackets.push((i, j, combo.clone()));
            }
            let mut parameters = Vec::new();
            for p in entry.parameters {
                let samples = p
                    .samples
                    .iter()
                    .map(|s| {
                        parse_scalar(s).ok_or_else(|| CatalogError::InvalidParameter {
                            parameter: p.name.clone(),
                            value: s.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                parameters.push(Parameter {
                    name: p.name,
                    samples,
                });
            }
            let spec = BaseSpec {
                name: entry.name,
                dim: entry.dim,
                brackets,
                parameters,
                asserted: entry.asserted,
                source: entry.source,
            };
            for params in spec_samples(&spec) {
                spec.build(&params)?;
            }
            specs.push(spec);
        }
        Ok(Catalog { specs })
    }

    pub fn specs(&self) -> &[BaseSpec] {
        &self.specs
    }

    fn spec(&self, name: &str) -> Option<&BaseSpec> {
        self.specs.iter().find(|s| s.name == name)
    }

    /// Looks up a name such as `L5_7`, `H(2)`, `A3`, `L6_22(eps=1/2)` or a
    /// `+`-separated direct sum of these. `params` supplies parameters not given inline.
    pub fn get(
        &self,
        name: &str,
        params: &BTreeMap<String, Scalar>,
    ) -> Result<CatalogEntry, CatalogError> {
        let compact: String = name
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '⊕' { '+' } else { c })
            .collect();
        if compact.is_empty() {
            return Err(CatalogError::UnknownName(name.to_string()));
        }
        let mut parts = compact.split('+');
        let mut entry = self.get_single(parts.next().unwrap(), params, name)?;
        for part in parts {
            let next = self.get_single(part, params, name)?;
            if next.is_abelian() {
                entry = entry.extend(next.asserted.n)?;
            } else if entry.is_abelian() && entry.extension == 0 {
                let k = entry.asserted.n;
                entry = next.extend(k)?;
                // Keep the requested summand order.
                let mut algebra = abelian(k).direct_sum(&next.algebra);
                algebra = algebra.with_name(format!("A({k})+{}", next.name));
                entry.name = algebra.name().unwrap().to_string();
                entry.algebra = algebra;
            } else {
                let asserted = entry.asserted.plus(next.asserted);
                let name = format!("{}+{}", entry.name, next.name);
                let algebra = entry
                    .algebra
                    .direct_sum(&next.algebra)
                    .with_name(name.clone());
                check(&name, &algebra, asserted)?;
                let mut parameters = entry.parameters.clone();
                parameters.extend(next.parameters);
                entry = CatalogEntry::new(name, parameters, asserted, algebra);
            }
        }
        Ok(entry)
    }

    fn get_single(
        &self,
        part: &str,
        params: &BTreeMap<String, Scalar>,
        full: &str,
    ) -> Result<CatalogEntry, CatalogError> {
        let unknown = || CatalogError::UnknownName(full.to_string());
        let (head, inline) = match part.split_once('(') {
            Some((head, rest)) => (head, Some(rest.strip_suffix(')').ok_or_else(unknown)?)),
            None => (part, None),
        };
        let numeric = |text: &str| text.parse::<usize>().map_err(|_| unknown());
        match head {
            "A" | "H" => {
                let arg = match inline {
                    Some(arg) => numeric(arg)?,
                    None => return Err(unknown()),
                };
                self.family(head, arg, full)
            }
            _ if head.len() > 1
                && (head.starts_with('A') || head.starts_with('H'))
                && inline.is_none() =>
            {
                self.family(&head[..1], numeric(&head[1..])?, full)
            }
            _ => {
                let key = head.replace(',', "_");
                let spec = self.spec(&key).ok_or_else(unknown)?;
                let mut values = BTreeMap::new();
                if let Some(inline) = inline {
                    for assignment in inline.split(',') {
                        let (k, v) = assignment.split_once('=').ok_or_else(unknown)?;
                        let value =
                            parse_scalar(v).ok_or_else(|| CatalogError::InvalidParameter {
                                parameter: k.to_string(),
                                value: v.to_string(),
                            })?;
                        values.insert(k.to_string(), value);
                    }
                }
                for p in &spec.parameters {
                    if !values.contains_key(&p.name) {
                        if let Some(v) = params.get(&p.name) {
                            values.insert(p.name.clone(), v.clone());
                        }
                    }
                }
                values.retain(|k, _| spec.parameters.iter().any(|p| &p.name == k));
                let algebra = spec.build(&values)?;
                let display = spec.display_name(&values);
                Ok(CatalogEntry::new(display, values, spec.asserted, algebra))
            }
        }
    }

    fn family(&self, kind: &str, arg: usize, full: &str) -> Result<CatalogEntry, CatalogError> {
        let (algebra, asserted) = match kind {
            "A" => (abelian(arg), Invariants::abelian(arg)),
            _ if arg >= 1 => (
                heisenberg(arg),
                Invariants {
                    n: 2 * arg + 1,
                    m: 1,
                    c: 2,
                },
            ),
            _ => return Err(CatalogError::UnknownName(full.to_string())),
        };
        let name = algebra.name().unwrap().to_string();
        check(&name, &algebra, asserted)?;
        Ok(CatalogEntry::new(name, BTreeMap::new(), asserted, algebra))
    }

    /// Non-abelian base algebras of dimension at most `max_dim`, one per parameter sample.
    pub fn bases(&self, max_dim: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
        let mut out = Vec::new();
        for m in (1..).take_while(|m| 2 * m < max_dim) {
            out.push(self.family("H", m, "H")?);
        }
        for spec in self.specs.iter().filter(|s| s.dim <= max_dim) {
            for params in spec_samples(spec) {
                let algebra = spec.build(&params)?;
                out.push(CatalogEntry::new(
                    spec.display_name(&params),
                    params,
                    spec.asserted,
                    algebra,
                ));
            }
        }
        out.sort_by_key(|e| e.asserted.n);
        Ok(out)
    }

    /// Every catalog algebra of dimension at most `max_dim`: `A(1..max_dim)`,
    /// the non-abelian bases and their extensions by abelian summands. Ordered by
    /// dimension, then abelian, Heisenberg, stored entries.
    pub fn enumerate(&self, max_dim: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
        if max_dim > MAX_ENUMERATION_DIM {
            return Err(CatalogError::TooLarge {
                requested: max_dim,
                limit: MAX_ENUMERATION_DIM,
            });
        }
        let mut out = Vec::new();
        for n in 1..=max_dim {
            out.push(self.family("A", n, "A")?);
        }
        for base in self.bases(max_dim)? {
            for k in 0..=(max_dim - base.asserted.n) {
                out.push(base.extend(k)?);
            }
        }
        out.sort_by_key(|e| e.asserted.n);
        Ok(out)
    }
}

fn spec_samples(spec: &BaseSpec) -> Vec<BTreeMap<String, Scalar>> {
    let mut out = vec![BTreeMap::new()];
    for p in &spec.parameters {
        out = out
            .into_iter()
            .flat_map(|partial| {
                p.samples.iter().map(move |s| {
                    let mut next = partial.clone();
                    next.insert(p.name.clone(), s.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// Looks up `name` in the built-in catalog.
pub fn catalog_get(
    name: &str,
    params: &BTreeMap<String, Scalar>,
) -> Result<CatalogEntry, CatalogError> {
    Catalog::builtin().get(name, params)
}

/// [`Catalog::enumerate`] on the built-in catalog.
pub fn enumerate(max_dim: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    Catalog::builtin().enumerate(max_dim)
}
