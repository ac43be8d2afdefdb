//! Statement-level checks of multiplier inequalities and of the classification
//! of algebras attaining the class-aware bound, evaluated on concrete algebras.
//!
//! Nothing here proves anything: every check is an exact computation on one
//! instance, and sweeps report how many instances were consistent.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{bound_e1, bound_e2};
use crate::catalog::{CatalogEntry, CatalogError, Invariants};
use crate::exec::Execution;
use crate::lie::{format_vector, LieAlgebra, LieError, Series};
use crate::linalg::{EchelonBuilder, QuotientCoords, Scalar, SparseVec, Subspace};
use crate::multiplier::{
    ganea_dimension_check, schur_multiplier, MultiplierError, MultiplierReport,
};

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Multiplier(#[from] MultiplierError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{theorem} does not apply: {reason}")]
    NotApplicable { theorem: TheoremId, reason: String },
    #[error("unknown theorem '{0}'")]
    UnknownTheorem(String),
}

/// The checkable statements, named by their customary numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// Central ideal inequality.
    T2_1,
    /// `dim M(L) ≤ dim L²` when `dim L² = n − 2`.
    T2_2,
    /// `Z^∧(L) ⊆ L²`.
    T2_3,
    /// Exterior square inequality with `Im γ′₂`.
    T2_5,
    /// Class-3 exterior square inequality with `Im γ′₂` and `Im γ′₃`.
    T2_6,
    /// `N ⊆ Z^∧(L)` iff `dim M(L/N) = dim M(L) + dim(N ∩ L²)`.
    T2_7,
    /// Capability list for `dim L² ≤ 2`.
    T2_8,
    /// No algebra with `dim L² = 3` and `dim M(L) = ½(n−1)(n−2) − 2`.
    T2_9,
    /// Class-2 attainers of the first bound.
    T2_10,
    /// No attainer with `dim L² = n − 2`.
    L3_1,
    /// Class at least 3 implies `dim M(L) ≤ e2 − 1`.
    T3_7,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::T2_1,
        TheoremId::T2_2,
        TheoremId::T2_3,
        TheoremId::T2_5,
        TheoremId::T2_6,
        TheoremId::T2_7,
        TheoremId::T2_8,
        TheoremId::T2_9,
        TheoremId::T2_10,
        TheoremId::L3_1,
        TheoremId::T3_7,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "2.1",
            TheoremId::T2_2 => "2.2",
            TheoremId::T2_3 => "2.3",
            TheoremId::T2_5 => "2.5",
            TheoremId::T2_6 => "2.6",
            TheoremId::T2_7 => "2.7",
            TheoremId::T2_8 => "2.8",
            TheoremId::T2_9 => "2.9",
            TheoremId::T2_10 => "2.10",
            TheoremId::L3_1 => "3.1",
            TheoremId::T3_7 => "3.7",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TheoremId {
    type Err = TheoremError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.label() == s.trim())
            .ok_or_else(|| TheoremError::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "<")]
    Below,
    #[serde(rename = "==")]
    Equal,
    #[serde(rename = "!=")]
    Differs,
    /// `lhs == rhs` exactly when the witness flag `member` is 1.
    #[serde(rename = "iff")]
    EqualIffMember,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Below => "<",
            Relation::Equal => "==",
            Relation::Differs => "!=",
            Relation::EqualIffMember => "iff",
        }
    }
}

/// Outcome of one statement on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub algebra: String,
    /// Extra instance data, e.g. the ideal used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub relation: Relation,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
    pub equality: bool,
    /// Listed for context only; does not count towards consistency.
    pub informational: bool,
    pub witnesses: BTreeMap<String, usize>,
}

impl TheoremReport {
    fn new(theorem: TheoremId, facts: &Facts, relation: Relation, lhs: usize, rhs: usize) -> Self {
        let holds = match relation {
            Relation::AtMost => lhs <= rhs,
            Relation::Below => lhs < rhs,
            Relation::Equal => lhs == rhs,
            Relation::Differs => lhs != rhs,
            Relation::EqualIffMember => true,
        };
        Self {
            theorem,
            algebra: facts.name.clone(),
            instance: None,
            n: facts.report.n,
            m: facts.report.m,
            c: facts.report.c,
            relation,
            lhs,
            rhs,
            holds,
            equality: lhs == rhs,
            informational: false,
            witnesses: BTreeMap::new(),
        }
    }

    fn witness(mut self, key: &str, value: usize) -> Self {
        self.witnesses.insert(key.to_string(), value);
        self
    }

    /// Counts towards a failure.
    pub fn is_violation(&self) -> bool {
        !self.holds && !self.informational
    }

    /// One line summary used by the table output.
    pub fn summary(&self) -> String {
        let status = match (self.holds, self.informational) {
            (_, true) => "info",
            (true, _) => "holds",
            (false, _) => "FAILS",
        };
        let instance = self
            .instance
            .as_deref()
            .map(|s| format!(" [{s}]"))
            .unwrap_or_default();
        format!(
            "{:>4}  {}{}  {} {} {}  {}{}",
            self.theorem.label(),
            self.algebra,
            instance,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            status,
            if self.equality && self.relation != Relation::Equal {
                " (equality)"
            } else {
                ""
            },
        )
    }
}

/// Ranks of the maps γ_L, γ′₂ and (class ≥ 3) γ′₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaImages {
    pub gamma_l: usize,
    pub gamma2_prime: usize,
    pub gamma3_prime: Option<usize>,
}

/// Data shared by the checks on one algebra.
#[derive(Debug, Clone)]
pub struct Facts {
    pub name: String,
    pub algebra: LieAlgebra,
    pub series: Series,
    pub report: MultiplierReport,
    pub gammas: GammaImages,
    pub entry: Option<CatalogEntry>,
}

impl Facts {
    pub fn compute(
        name: &str,
        algebra: &LieAlgebra,
        exec: Execution,
    ) -> Result<Facts, TheoremError> {
        let series = algebra.series()?;
        let report = MultiplierReport::compute_with(algebra, exec)?;
        let gammas = gamma_images_of(algebra, &series)?;
        Ok(Facts {
            name: name.to_string(),
            algebra: algebra.clone(),
            series,
            report,
            gammas,
            entry: None,
        })
    }

    pub fn from_entry(entry: &CatalogEntry, exec: Execution) -> Result<Facts, TheoremError> {
        let mut facts = Facts::compute(&entry.name, &entry.algebra, exec)?;
        facts.entry = Some(entry.clone());
        Ok(facts)
    }

    fn lab_dim(&self) -> usize {
        self.report.n - self.report.m
    }

    /// `dim (L/Z(L))^ab`.
    fn lz_ab_dim(&self) -> usize {
        let s = self
            .series
            .derived()
            .sum(&self.series.center)
            .expect("same ambient");
        self.report.n - s.dim()
    }
}

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn rank(rows: impl IntoIterator<Item = SparseVec>, ambient: usize) -> usize {
    let mut b = EchelonBuilder::new(ambient);
    for r in rows {
        b.insert(&r);
    }
    b.dim()
}

/// `Σ_p coords[p] · e_{p·width + slot}`: the tensor `u ⊗ e_slot`.
fn tensor(coords: &[Scalar], width: usize, slot: usize) -> SparseVec {
    SparseVec::from_pairs(
        coords
            .iter()
            .enumerate()
            .map(|(p, c)| (p * width + slot, c.clone()))
            .collect(),
    )
}

fn add(terms: impl IntoIterator<Item = SparseVec>) -> SparseVec {
    let one = Scalar::from_integer(1.into());
    let mut out = SparseVec::new();
    for t in terms {
        out.add_scaled(&one, &t);
    }
    out
}

/// Ternary map `(x,y,z) ↦ [x,y]⊗z̄ + [z,x]⊗ȳ + [y,z]⊗x̄` into `L²/L³ ⊗ V` where
/// `V` has the given representatives as basis.
fn ternary_rank(l: &LieAlgebra, reps: &[usize], l2_mod_l3: &QuotientCoords) -> usize {
    let w = reps.len();
    let b = |i: usize, j: usize| l2_mod_l3.coords(&l.basis_bracket(reps[i], reps[j]));
    let mut images = Vec::new();
    for x in 0..w {
        for y in 0..w {
            for z in 0..w {
                images.push(add([
                    tensor(&b(x, y), w, z),
                    tensor(&b(z, x), w, y),
                    tensor(&b(y, z), w, x),
                ]));
            }
        }
    }
    rank(images, l2_mod_l3.dim() * w)
}

fn gamma_images_of(l: &LieAlgebra, series: &Series) -> Result<GammaImages, TheoremError> {
    let l2 = series.gamma(2);
    let l3 = series.gamma(3);
    let l2_mod_l3 = QuotientCoords::new(&l2, &l3).map_err(LieError::from)?;
    let ab_reps = l2.non_pivots();
    let lz = l2.sum(&series.center).map_err(LieError::from)?;
    let lz_reps = lz.non_pivots();
    let gamma_l = ternary_rank(l, &ab_reps, &l2_mod_l3);
    let gamma2_prime = ternary_rank(l, &lz_reps, &l2_mod_l3);
    let gamma3_prime = (series.class() >= 3).then(|| {
        let l3_coords = QuotientCoords::new(&l3, &Subspace::zero(l.dim())).expect("same ambient");
        let w = lz_reps.len();
        let x = |i: usize| SparseVec::unit(lz_reps[i]);
        let br = |u: &SparseVec, v: &SparseVec| l.bracket_sparse(u, v);
        let mut images = Vec::new();
        for a in 0..w {
            for b in 0..w {
                let xy = br(&x(a), &x(b));
                for c in 0..w {
                    for d in 0..w {
                        let zw = br(&x(c), &x(d));
                        images.push(add([
                            tensor(&l3_coords.coords(&br(&xy, &x(c))), w, d),
                            tensor(&l3_coords.coords(&br(&x(d), &xy)), w, c),
                            tensor(&l3_coords.coords(&br(&zw, &x(a))), w, b),
                            tensor(&l3_coords.coords(&br(&x(b), &zw)), w, a),
                        ]));
                    }
                }
            }
        }
        rank(images, l3_coords.dim() * w)
    });
    Ok(GammaImages {
        gamma_l,
        gamma2_prime,
        gamma3_prime,
    })
}

pub fn gamma_images(l: &LieAlgebra) -> Result<GammaImages, TheoremError> {
    gamma_images_of(l, &l.series()?)
}

fn span_label(k: &Subspace) -> String {
    let rows: Vec<String> = k.rows().iter().map(format_vector).collect();
    format!("K=span{{{}}}", rows.join(", "))
}

/// For a central ideal `K` of dimension `k`:
/// `dim M(L) + dim(L² ∩ K) ≤ dim M(L/K) + k(k−1)/2 + dim (L/K)^ab · k`.
pub fn check_theorem_2_1(l: &LieAlgebra, k: &Subspace) -> Result<TheoremReport, TheoremError> {
    let facts = Facts::compute(l.name().unwrap_or("L"), l, Execution::Sequential)?;
    theorem_2_1(&facts, k)
}

fn theorem_2_1(facts: &Facts, k: &Subspace) -> Result<TheoremReport, TheoremError> {
    if !k
        .is_subspace_of(&facts.series.center)
        .map_err(LieError::from)?
    {
        return Err(MultiplierError::NotCentral.into());
    }
    let quotient = facts.algebra.quotient_by_ideal(k)?.algebra;
    let m_quotient = schur_multiplier(&quotient)?.dim;
    let quotient_ab = quotient.dim() - quotient.derived().dim();
    let meet = facts
        .series
        .derived()
        .intersect(k)
        .map_err(LieError::from)?
        .dim();
    let kd = k.dim();
    let lhs = facts.report.dim_m + meet;
    let rhs = m_quotient + choose2(kd) + quotient_ab * kd;
    let mut r = TheoremReport::new(TheoremId::T2_1, facts, Relation::AtMost, lhs, rhs)
        .witness("dim_M_quotient", m_quotient)
        .witness("dim_K", kd)
        .witness("dim_derived_meet_K", meet)
        .witness("dim_quotient_ab", quotient_ab);
    r.instance = Some(span_label(k));
    Ok(r)
}

fn not_applicable(theorem: TheoremId, reason: impl Into<String>) -> TheoremError {
    TheoremError::NotApplicable {
        theorem,
        reason: reason.into(),
    }
}

/// `dim L² = n − 2` with `n ≥ 4` implies `dim M(L) ≤ dim L²`.
pub fn check_theorem_2_2(l: &LieAlgebra) -> Result<TheoremReport, TheoremError> {
    theorem_2_2(&Facts::compute(
        l.name().unwrap_or("L"),
        l,
        Execution::Sequential,
    )?)
}

fn theorem_2_2(f: &Facts) -> Result<TheoremReport, TheoremError> {
    let r = &f.report;
    if r.n < 4 || r.m + 2 != r.n {
        return Err(not_applicable(
            TheoremId::T2_2,
            "needs dim L² = n − 2 and n ≥ 4",
        ));
    }
    Ok(TheoremReport::new(
        TheoremId::T2_2,
        f,
        Relation::AtMost,
        r.dim_m,
        r.m,
    ))
}

fn theorem_2_3(f: &Facts) -> Result<TheoremReport, TheoremError> {
    if f.report.m == 0 {
        return Err(not_applicable(TheoremId::T2_3, "algebra is abelian"));
    }
    let z = &f.report.exterior_center_space;
    let inside = z
        .intersect(&f.series.derived())
        .map_err(LieError::from)?
        .dim();
    Ok(TheoremReport::new(
        TheoremId::T2_3,
        f,
        Relation::Equal,
        z.dim(),
        inside,
    ))
}

/// `dim L∧L + dim Im γ′₂ ≤ dim Λ²(L/L²) + Σ_{i=2}^{c} dim(L^i/L^{i+1}) · dim (L/Z(L))^ab`.
pub fn check_theorem_2_5(l: &LieAlgebra) -> Result<TheoremReport, TheoremError> {
    theorem_2_5(&Facts::compute(
        l.name().unwrap_or("L"),
        l,
        Execution::Sequential,
    )?)
}

fn theorem_2_5(f: &Facts) -> Result<TheoremReport, TheoremError> {
    if f.report.m == 0 {
        return Err(not_applicable(TheoremId::T2_5, "algebra is abelian"));
    }
    let e = f.lz_ab_dim();
    let graded: usize = (2..=f.report.c)
        .map(|i| f.series.gamma(i).dim() - f.series.gamma(i + 1).dim())
        .sum();
    let lhs = f.report.dim_exterior_square + f.gammas.gamma2_prime;
    let rhs = choose2(f.lab_dim()) + graded * e;
    Ok(
        TheoremReport::new(TheoremId::T2_5, f, Relation::AtMost, lhs, rhs)
            .witness("dim_exterior_square", f.report.dim_exterior_square)
            .witness("dim_im_gamma2_prime", f.gammas.gamma2_prime)
            .witness("dim_lz_ab", e),
    )
}

/// For class 3: `dim L∧L + dim Im γ′₂ + dim Im γ′₃ ≤ dim Λ²(L/L²) + dim(L²/L³)·dim L^ab + dim L³·dim L^ab`.
pub fn check_theorem_2_6(l: &LieAlgebra) -> Result<TheoremReport, TheoremError> {
    theorem_2_6(&Facts::compute(
        l.name().unwrap_or("L"),
        l,
        Execution::Sequential,
    )?)
}

fn theorem_2_6(f: &Facts) -> Result<TheoremReport, TheoremError> {
    if f.report.c != 3 {
        return Err(not_applicable(TheoremId::T2_6, "needs class exactly 3"));
    }
    let ab = f.lab_dim();
    let l3 = f.series.gamma(3).dim();
    let l2_l3 = f.report.m - l3;
    let g3 = f.gammas.gamma3_prime.expect("class 3");
    let lhs = f.report.dim_exterior_square + f.gammas.gamma2_prime + g3;
    let rhs = choose2(ab) + l2_l3 * ab + l3 * ab;
    Ok(
        TheoremReport::new(TheoremId::T2_6, f, Relation::AtMost, lhs, rhs)
            .witness("dim_exterior_square", f.report.dim_exterior_square)
            .witness("dim_im_gamma2_prime", f.gammas.gamma2_prime)
            .witness("dim_im_gamma3_prime", g3),
    )
}

/// One report per central basis line: equality of dimensions iff the line lies in `Z^∧(L)`.
fn theorem_2_7(f: &Facts) -> Result<Vec<TheoremReport>, TheoremError> {
    let mut out = Vec::new();
    for row in f.series.center.rows() {
        let line = Subspace::from_spanning(f.report.n, [row.clone()]);
        let g = ganea_dimension_check(&f.algebra, &line)?;
        let mut r = TheoremReport::new(TheoremId::T2_7, f, Relation::EqualIffMember, g.lhs, g.rhs)
            .witness("member", usize::from(g.n_in_exterior_center));
        r.holds = g.consistent;
        r.instance = Some(format!("N=span{{{}}}", format_vector(row)));
        out.push(r);
    }
    Ok(out)
}

/// Capability predicted by the list for `dim L² ≤ 2`, when the entry's base is recognised.
pub fn expected_capability(entry: &CatalogEntry) -> Option<bool> {
    let inv = entry.asserted;
    let base = entry.base.as_str();
    match inv.m {
        0 => Some(inv.n >= 2),
        1 => Some(base == "H(1)"),
        2 if inv.c == 2 => match base {
            "L5_8" => Some(true),
            b if b.starts_with("L6_22") => Some(true),
            _ => None,
        },
        2 if inv.c == 3 => matches!(base, "L4_3" | "L5_5").then_some(true),
        _ => None,
    }
}

fn theorem_2_8(f: &Facts) -> Result<TheoremReport, TheoremError> {
    let expected = f
        .entry
        .as_ref()
        .and_then(expected_capability)
        .ok_or_else(|| {
            not_applicable(TheoremId::T2_8, "not a recognised algebra with dim L² ≤ 2")
        })?;
    Ok(TheoremReport::new(
        TheoremId::T2_8,
        f,
        Relation::Equal,
        usize::from(f.report.capable),
        usize::from(expected),
    ))
}

/// `dim L² = 3` and class at least 3 rule out `dim M(L) = ½(n−1)(n−2) − 2`.
/// Class-2 instances are reported as informational.
pub fn scan_theorem_2_9(facts: &[Facts]) -> Vec<TheoremReport> {
    facts.iter().filter_map(|f| theorem_2_9(f).ok()).collect()
}

fn theorem_2_9(f: &Facts) -> Result<TheoremReport, TheoremError> {
    let r = &f.report;
    if r.m != 3 {
        return Err(not_applicable(TheoremId::T2_9, "needs dim L² = 3"));
    }
    let excluded = (r.n - 1) * (r.n - 2) / 2 - 2;
    let mut report = TheoremReport::new(TheoremId::T2_9, f, Relation::Differs, r.dim_m, excluded);
    report.informational = r.c < 3;
    Ok(report)
}

/// Whether the entry is one of `H(1)⊕A(k)`, `L5_8`, `L6_26`.
pub fn expected_attainer(entry: &CatalogEntry) -> bool {
    entry.base == "H(1)"
        || (entry.extension == 0 && matches!(entry.base.as_str(), "L5_8" | "L6_26"))
}

fn theorem_2_10(f: &Facts) -> Result<TheoremReport, TheoremError> {
    let entry = f
        .entry
        .as_ref()
        .ok_or_else(|| not_applicable(TheoremId::T2_10, "not a catalog entry"))?;
    if f.report.c != 2 {
        return Err(not_applicable(TheoremId::T2_10, "needs class 2"));
    }
    let attains = Some(f.report.dim_m) == f.report.bound_e1;
    Ok(TheoremReport::new(
        TheoremId::T2_10,
        f,
        Relation::Equal,
        usize::from(attains),
        usize::from(expected_attainer(entry)),
    )
    .witness("dim_M", f.report.dim_m)
    .witness("bound_e1", f.report.bound_e1.unwrap_or(0)))
}

fn lemma_3_1(f: &Facts) -> Result<TheoremReport, TheoremError> {
    let r = &f.report;
    if r.n < 4 || r.m + 2 != r.n {
        return Err(not_applicable(
            TheoremId::L3_1,
            "needs dim L² = n − 2 and n ≥ 4",
        ));
    }
    let e2 = r.bound_e2.expect("valid inputs");
    Ok(TheoremReport::new(
        TheoremId::L3_1,
        f,
        Relation::Below,
        r.dim_m,
        e2,
    ))
}

/// Class at least 3: `dim M(L) ≤ e2(n, m, c) − 1`.
pub fn check_theorem_3_7(l: &LieAlgebra) -> Result<TheoremReport, TheoremError> {
    theorem_3_7(&Facts::compute(
        l.name().unwrap_or("L"),
        l,
        Execution::Sequential,
    )?)
}

fn theorem_3_7(f: &Facts) -> Result<TheoremReport, TheoremError> {
    let r = &f.report;
    if r.c < 3 {
        return Err(not_applicable(TheoremId::T3_7, "needs class at least 3"));
    }
    let e2 = r.bound_e2.expect("valid inputs");
    Ok(
        TheoremReport::new(TheoremId::T3_7, f, Relation::AtMost, r.dim_m, e2 - 1)
            .witness("bound_e2", e2),
    )
}

/// Whether `dim M(L)` equals `e2(n, m, c)`.
pub fn attains_e2(l: &LieAlgebra) -> Result<bool, TheoremError> {
    Ok(MultiplierReport::compute(l)?.attains_e2)
}

/// All applicable reports of one statement on one algebra.
pub fn check(theorem: TheoremId, f: &Facts) -> Result<Vec<TheoremReport>, TheoremError> {
    let single = |r: Result<TheoremReport, TheoremError>| match r {
        Ok(r) => Ok(vec![r]),
        Err(TheoremError::NotApplicable { .. }) => Ok(Vec::new()),
        Err(e) => Err(e),
    };
    match theorem {
        TheoremId::T2_1 => {
            let center = &f.series.center;
            let mut ideals: Vec<Subspace> = center
                .rows()
                .iter()
                .map(|r| Subspace::from_spanning(f.report.n, [r.clone()]))
                .collect();
            if center.dim() > 1 {
                ideals.push(center.clone());
            }
            ideals.iter().map(|k| theorem_2_1(f, k)).collect()
        }
        TheoremId::T2_2 => single(theorem_2_2(f)),
        TheoremId::T2_3 => single(theorem_2_3(f)),
        TheoremId::T2_5 => single(theorem_2_5(f)),
        TheoremId::T2_6 => single(theorem_2_6(f)),
        TheoremId::T2_7 => theorem_2_7(f),
        TheoremId::T2_8 => single(theorem_2_8(f)),
        TheoremId::T2_9 => single(theorem_2_9(f)),
        TheoremId::T2_10 => single(theorem_2_10(f)),
        TheoremId::L3_1 => single(lemma_3_1(f)),
        TheoremId::T3_7 => single(theorem_3_7(f)),
    }
}

pub fn facts_for(entries: &[CatalogEntry], exec: Execution) -> Result<Vec<Facts>, TheoremError> {
    exec.map(entries, |e| Facts::from_entry(e, Execution::Sequential))
        .into_iter()
        .collect()
}

/// Runs the statements over the entries; reports are grouped by statement, then catalog order.
pub fn run_checks(
    theorems: &[TheoremId],
    entries: &[CatalogEntry],
    exec: Execution,
) -> Result<Vec<TheoremReport>, TheoremError> {
    let facts = facts_for(entries, exec)?;
    let mut out = Vec::new();
    for &t in theorems {
        for f in &facts {
            out.extend(check(t, f)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub c: usize,
    #[serde(rename = "dim_M")]
    pub dim_m: usize,
    pub bound_e1: Option<usize>,
    pub bound_e2: Option<usize>,
    pub attains_e2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_dim: usize,
    pub instances: usize,
    pub rows: Vec<SweepRow>,
    pub attainers: Vec<String>,
    pub expected_attainers: Vec<String>,
    pub violations: Vec<String>,
    pub consistent: bool,
    pub summary: String,
}

/// Attainment of `e2` over `entries`, with the consistency conditions:
/// the attainers are exactly the expected ones, class ≥ 3 stays at least one
/// below `e2`, no `m = n − 2` entry attains, and `dim M ≤ e2 ≤ e1` throughout.
pub fn sweep_entries(
    max_dim: usize,
    entries: &[CatalogEntry],
    exec: Execution,
) -> Result<SweepReport, TheoremError> {
    let reports: Vec<MultiplierReport> = exec
        .map(entries, |e| {
            MultiplierReport::compute_with(&e.algebra, Execution::Sequential)
        })
        .into_iter()
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut attainers = Vec::new();
    let mut expected = Vec::new();
    let mut violations = Vec::new();
    for (entry, r) in entries.iter().zip(&reports) {
        rows.push(SweepRow {
            name: entry.name.clone(),
            n: r.n,
            m: r.m,
            c: r.c,
            dim_m: r.dim_m,
            bound_e1: r.bound_e1,
            bound_e2: r.bound_e2,
            attains_e2: r.attains_e2,
        });
        if r.attains_e2 {
            attainers.push(entry.name.clone());
        }
        if expected_attainer(entry) {
            expected.push(entry.name.clone());
        }
        if let (Some(e1), Some(e2)) = (r.bound_e1, r.bound_e2) {
            if r.dim_m > e2 || e2 > e1 {
                violations.push(format!(
                    "{}: dim M = {}, e2 = {e2}, e1 = {e1}",
                    entry.name, r.dim_m
                ));
            }
            if r.c >= 3 && r.dim_m + 1 > e2 {
                violations.push(format!(
                    "{}: class {} but dim M = {} > e2 - 1 = {}",
                    entry.name,
                    r.c,
                    r.dim_m,
                    e2 - 1
                ));
            }
            if r.n >= 4 && r.m + 2 == r.n && r.attains_e2 {
                violations.push(format!("{}: dim L² = n - 2 yet attains e2", entry.name));
            }
        }
    }
    let found: BTreeSet<&String> = attainers.iter().collect();
    let wanted: BTreeSet<&String> = expected.iter().collect();
    for extra in found.difference(&wanted) {
        violations.push(format!("{extra}: unexpected attainer"));
    }
    for missing in wanted.difference(&found) {
        violations.push(format!("{missing}: expected attainer does not attain"));
    }
    let consistent = violations.is_empty();
    let summary = if consistent {
        format!("consistent with theorem on {} instances", entries.len())
    } else {
        format!(
            "{} inconsistencies on {} instances",
            violations.len(),
            entries.len()
        )
    };
    Ok(SweepReport {
        max_dim,
        instances: entries.len(),
        rows,
        attainers,
        expected_attainers: expected,
        violations,
        consistent,
        summary,
    })
}

/// [`sweep_entries`] over the built-in catalog up to `max_dim`.
pub fn classification_sweep(max_dim: usize, exec: Execution) -> Result<SweepReport, TheoremError> {
    let entries = crate::catalog::enumerate(max_dim)?;
    sweep_entries(max_dim, &entries, exec)
}

/// `(n, m, c)` of an algebra.
pub fn invariants(l: &LieAlgebra) -> Result<Invariants, TheoremError> {
    Ok(Invariants::of(l)?)
}

/// The bounds for an algebra, `None` when it is abelian.
pub fn bounds_for(l: &LieAlgebra) -> Result<Option<(usize, usize)>, TheoremError> {
    let inv = Invariants::of(l)?;
    Ok(bound_e1(inv.n, inv.m)
        .ok()
        .zip(bound_e2(inv.n, inv.m, inv.c).ok()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_get, enumerate};

    fn facts(name: &str) -> Facts {
        let e = catalog_get(name, &BTreeMap::new()).unwrap();
        Facts::from_entry(&e, Execution::Sequential).unwrap()
    }

    fn line(n: usize, i: usize) -> Subspace {
        Subspace::coordinate(n, [i])
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(facts("H1").gammas.gamma2_prime, 0);
        let g = facts("L4_3").gammas;
        assert_eq!(g.gamma2_prime, 0);
        assert!(g.gamma3_prime.unwrap() >= 1);
        let a = facts("A4").gammas;
        assert_eq!((a.gamma_l, a.gamma2_prime, a.gamma3_prime), (0, 0, None));
    }

    #[test]
    fn central_ideal_examples() {
        let r = theorem_2_1(&facts("H1"), &line(3, 2)).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (3, 3, true));
        let r = theorem_2_1(&facts("L5_7"), &line(5, 4)).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (4, 4, true));
        let f = facts("L5_8");
        let r = theorem_2_1(&f, &Subspace::zero(5)).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(theorem_2_1(&f, &line(5, 0)).is_err());
    }

    #[test]
    fn derived_codimension_two() {
        for (name, lhs) in [("L4_3", 2), ("L5_7", 3), ("L5_9", 3)] {
            let r = theorem_2_2(&facts(name)).unwrap();
            assert_eq!((r.lhs, r.rhs, r.holds), (lhs, lhs, true), "{name}");
        }
        assert!(theorem_2_2(&facts("L5_8")).is_err());
    }

    #[test]
    fn exterior_square_inequalities() {
        let r = theorem_2_5(&facts("H1")).unwrap();
        assert_eq!((r.lhs, r.rhs), (3, 3));
        // γ′₂(x1,x2,x3) = x4⊗x̄3 − x5⊗x̄2 is nonzero and the map is alternating
        // on a 3-dimensional space, so its image is a line.
        let r = theorem_2_5(&facts("L5_8")).unwrap();
        assert_eq!(r.witnesses["dim_im_gamma2_prime"], 1);
        assert_eq!((r.lhs, r.rhs, r.holds), (9, 9, true));
        let r = theorem_2_5(&facts("L5_7")).unwrap();
        assert!(r.holds);
        assert_eq!(r.witnesses["dim_exterior_square"], 6);
        let r = theorem_2_6(&facts("L4_3")).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (5, 5, true));
        assert!(theorem_2_6(&facts("L5_9")).unwrap().holds);
        assert!(theorem_2_6(&facts("L5_5")).unwrap().holds);
        assert!(theorem_2_6(&facts("L5_7")).is_err());
    }

    #[test]
    fn scan_and_refined_bound() {
        let all: Vec<Facts> = ["L5_7", "L5_9", "L6_26"].map(facts).into();
        let scan = scan_theorem_2_9(&all);
        assert_eq!(scan.len(), 3);
        assert!(scan[0].holds && scan[1].holds);
        assert!(!scan[2].holds && scan[2].informational && !scan[2].is_violation());
        for name in ["L4_3", "L5_7", "L5_9"] {
            let r = theorem_3_7(&facts(name)).unwrap();
            assert!(r.holds && r.equality, "{name}");
        }
    }

    #[test]
    fn attainment_examples() {
        let get = |n: &str| catalog_get(n, &BTreeMap::new()).unwrap().algebra;
        assert!(attains_e2(&get("L5_8")).unwrap());
        assert!(attains_e2(&get("L6_26")).unwrap());
        assert!(attains_e2(&get("H1+A2")).unwrap());
        assert!(!attains_e2(&get("L5_7")).unwrap());
        assert!(!attains_e2(&get("L5_8+A1")).unwrap());
    }

    #[test]
    fn small_sweeps() {
        let names = |max| {
            classification_sweep(max, Execution::Sequential)
                .unwrap()
                .attainers
        };
        assert_eq!(names(3), ["H(1)"]);
        assert_eq!(names(4), ["H(1)", "H(1)+A(1)"]);
        let r = classification_sweep(5, Execution::default()).unwrap();
        assert!(r.consistent, "{:?}", r.violations);
    }

    #[test]
    fn theorem_ids_parse() {
        assert_eq!("2.10".parse::<TheoremId>().unwrap(), TheoremId::T2_10);
        assert!("4.1".parse::<TheoremId>().is_err());
    }

    #[test]
    fn all_checks_hold_up_to_five() {
        let entries = enumerate(5).unwrap();
        let reports = run_checks(&TheoremId::ALL, &entries, Execution::default()).unwrap();
        let bad: Vec<String> = reports
            .iter()
            .filter(|r| r.is_violation())
            .map(|r| r.summary())
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
