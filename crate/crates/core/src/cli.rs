//! The bundled catalog of known negative curves, its re-verification, the SVG
//! map of the `(s,t)` plane and the subcommands of the `negcurves` binary.

use crate::exactmath::{parse_rational, q, qi, Frac, Rational};
use crate::families::{
    self, family_order, family_triangle, fib, new_nonspecial, solves_mn, special_upsilon, unimodular_equivalence,
    TriangleKind, XiKind,
};
use crate::laurent::LaurentPoly;
use crate::lattice::{lattice_point_count, QPoint};
use crate::mds::{
    certify_integer_t, certify_mds, diamond_contains, diamond_section, family_center, family_diamond, non_mds_screen,
    Diamond, Line, MdsCertificate, MdsError,
};
use crate::negcurve::{
    canonical_degree_and_genus, detect_negative_curve, irreducibility_verdict, wpp_degree_search,
    wpp_self_intersection, Detection, Irreducibility, WppChartMap,
};
use crate::trispace::{
    edge_rebasings, minimal_triangle, slopes_of_wpp, to_fundamental_domain, wpp_of_slopes, SlopePair, SlopeTriangle,
    WppWeights,
};
use clap::{Parser, Subcommand};
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub const CATALOG_SCHEMA: &str = "negcurves-catalog/1";

const BUNDLED_CATALOG: &str = include_str!("../data/catalog.json");

/// Above this many lattice points the family kernel is not recomputed; the
/// family polynomial is still checked for support and order.
const FAMILY_KERNEL_MAX_POINTS: u64 = 2000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("no catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("entry {0}: {1}")]
    Entry(String, String),
    #[error("empty viewport: {0}")]
    EmptyViewport(String),
    #[error(transparent)]
    Mds(#[from] MdsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    IT,
    RT,
    NewNonSpecial,
    Special,
    Sporadic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub family: FamilyTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    /// `(M, N)` of an integral or rational family curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mn: Option<(i64, i64)>,
    pub m: usize,
    pub slopes: SlopePair,
    /// `"[(x,y),(x,y),(x,y)]"`, optionally prefixed by a scale `"k*"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangle: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wpp: Option<[u64; 3]>,
    /// Degree in the Cox ring of the weighted projective plane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deficiency: Option<i64>,
    #[serde(
        default,
        with = "crate::exactmath::rational::serde_q::opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub self_intersection: Option<Rational>,
    /// Verified only on request (large exact systems).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub deep: bool,
}

/// Curves of one vanishing order, with the number of distinct curves up to
/// lattice isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallMList {
    pub m: usize,
    pub classes: usize,
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema: String,
    pub entries: Vec<CatalogEntry>,
    #[serde(default)]
    pub small_m: Vec<SmallMList>,
}

impl Catalog {
    pub fn bundled() -> Catalog {
        Catalog::from_json(BUNDLED_CATALOG).expect("bundled catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Catalog, CliError> {
        let cat: Catalog = serde_json::from_str(text).map_err(|e| CliError::Catalog(e.to_string()))?;
        if cat.schema != CATALOG_SCHEMA {
            return Err(CliError::Catalog(format!("schema `{}`, expected `{CATALOG_SCHEMA}`", cat.schema)));
        }
        Ok(cat)
    }

    pub fn empty() -> Catalog {
        Catalog { schema: CATALOG_SCHEMA.into(), entries: vec![], small_m: vec![] }
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }
}

/// Parses `"[(0,0),(1,0),(3,7)]"` or `"3*[(0,0),(1,0),(3,7)]"`; coordinates
/// are exact fractions.
pub fn parse_triangle(text: &str) -> Result<SlopeTriangle, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (scale, body) = match t.split_once("*[") {
        Some((k, rest)) => (parse_rational(k).map_err(|e| e.to_string())?, format!("[{rest}")),
        None => (qi(1), t.clone()),
    };
    let inner = body
        .strip_prefix("[(")
        .and_then(|b| b.strip_suffix(")]"))
        .ok_or_else(|| format!("`{text}` is not a list of three points"))?;
    let mut pts = Vec::new();
    for p in inner.split("),(") {
        let (x, y) = p.split_once(',').ok_or_else(|| format!("bad point `{p}`"))?;
        let x = parse_rational(x).map_err(|e| e.to_string())?;
        let y = parse_rational(y).map_err(|e| e.to_string())?;
        pts.push(QPoint::new(x * &scale, y * &scale));
    }
    let pts: [QPoint; 3] = pts.try_into().map_err(|_| format!("`{text}` needs exactly three points"))?;
    SlopeTriangle::from_vertices(pts).ok_or_else(|| format!("`{text}` is not a triangle with a horizontal base"))
}

// ---------------------------------------------------------------------------
// verification

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCheck {
    pub field: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    pub checks: Vec<FieldCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// The curve the checks ran on.
    #[serde(skip)]
    pub curve: Option<LaurentPoly>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &FieldCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, field: &str) -> Option<&FieldCheck> {
        self.checks.iter().find(|c| c.field == field)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.skipped {
            "SKIP"
        } else if self.pass {
            "PASS"
        } else {
            "FAIL"
        };
        write!(f, "{tag} {} ({} checks)", self.id, self.checks.len())?;
        for c in self.failures() {
            write!(f, "; {}: expected {}, found {}", c.field, c.expected, c.found)?;
        }
        if let Some(e) = &self.error {
            write!(f, "; error: {e}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checks(Vec<FieldCheck>);

impl Checks {
    fn eq(&mut self, field: &str, expected: impl fmt::Display, found: impl fmt::Display) {
        let (e, f) = (expected.to_string(), found.to_string());
        let pass = e == f;
        self.0.push(FieldCheck { field: field.into(), expected: e, found: f, pass });
    }

    fn cond(&mut self, field: &str, expected: impl fmt::Display, found: impl fmt::Display, pass: bool) {
        self.0.push(FieldCheck { field: field.into(), expected: expected.to_string(), found: found.to_string(), pass });
    }

    /// Compares against a stored value when there is one.
    fn stored<T: fmt::Display>(&mut self, field: &str, stored: Option<T>, found: impl fmt::Display) {
        match stored {
            Some(s) => self.eq(field, s, found),
            None => self.cond(field, "-", found, true),
        }
    }
}

fn verdict_text(v: &Irreducibility) -> String {
    match v {
        Irreducibility::Irreducible(r) => format!("irreducible ({r})"),
        Irreducibility::Reducible { .. } => "reducible".into(),
        Irreducibility::Unknown => "unknown".into(),
    }
}

fn check_irreducible(c: &mut Checks, poly: &LaurentPoly) {
    let v = irreducibility_verdict(poly);
    c.cond("irreducibility", "not reducible", verdict_text(&v), !matches!(v, Irreducibility::Reducible { .. }));
}

/// `K_Y . C = m - lattice perimeter`, reported with the arithmetic genus.
/// Its sign is not a property of the entry, so it never fails a report.
fn check_kyc(c: &mut Checks, poly: &LaurentPoly) {
    match canonical_degree_and_genus(poly) {
        Ok((kyc, pa)) => c.cond("kyc", "reported", format!("{kyc} (genus {pa})"), true),
        Err(e) => c.cond("kyc", "computable", e, false),
    }
}

fn count_deficiency(tri: &SlopeTriangle, m: usize) -> i64 {
    (m * (m + 1) / 2) as i64 + 1 - lattice_point_count(&tri.polygon()) as i64
}

fn family_index(k: i64, m: i64, n: i64) -> Option<usize> {
    (0..64).find(|&i| fib(k, i + 1) == m && fib(k, i) == n)
}

fn tag_kind(tag: FamilyTag) -> Option<TriangleKind> {
    match tag {
        FamilyTag::IT => Some(TriangleKind::Integral),
        FamilyTag::RT => Some(TriangleKind::Rational),
        _ => None,
    }
}

fn need<T: Clone>(e: &CatalogEntry, x: &Option<T>, what: &str) -> Result<T, String> {
    x.clone().ok_or_else(|| format!("entry {} has no {what}", e.id))
}

fn verify_family(e: &CatalogEntry, kind: TriangleKind, c: &mut Checks) -> Result<LaurentPoly, String> {
    let k = need(e, &e.k, "K")?;
    let (m, n) = need(e, &e.mn, "(M,N)")?;
    c.cond("mn", "(M+N)^2 = KMN+1", format!("({m},{n})"), solves_mn(k, m, n));
    let idx = family_index(k, m, n).ok_or_else(|| format!("({m},{n}) is not (F_(n+1),F_n) for K={k}"))?;
    let order = family_order(kind, m, n) as usize;
    c.eq("m", e.m, order);
    let center = family_center(k, m, n, kind);
    c.eq("slopes", &e.slopes, &center);
    let xk = if kind == TriangleKind::Integral { XiKind::Int } else { XiKind::Rat };
    let poly = families::xi(k, idx, xk).map_err(|err| err.to_string())?;
    c.cond("recurrences", "exact divisions", "ok", true);
    let tri = family_triangle(k, m, n, kind).map_err(|err| err.to_string())?;
    let pg = tri.polygon();
    let inside = poly.terms().all(|(&(i, j), _)| pg.contains(&QPoint::new(qi(i), qi(j))));
    c.cond("support", format!("inside {tri}"), if inside { "inside" } else { "outside" }, inside);
    let np = poly.newton_polygon().map_err(|err| err.to_string())?;
    if kind == TriangleKind::Integral {
        let vertex_ok = np
            .lattice_vertices()
            .unwrap_or_default()
            .iter()
            .all(|v| poly.coeff(v.x, v.y).abs() == qi(1));
        c.cond("vertex_coefficients", "+-1", if vertex_ok { "+-1" } else { "other" }, vertex_ok);
    }
    let got = poly.vanishing_order().map_err(|err| err.to_string())?;
    c.eq("order", order, got);
    let at_center = minimal_triangle(&np, &center);
    let c2 = qi(2) * at_center.area() - qi((order * order) as i64);
    c.cond("negative", "C^2 <= 0", Frac(&c2), !c2.is_positive());
    c.stored("self_intersection", e.self_intersection.as_ref().map(Frac), Frac(&c2));
    let def = count_deficiency(&tri, order);
    c.stored("deficiency", e.deficiency, def);
    let npts = lattice_point_count(&pg);
    if npts <= FAMILY_KERNEL_MAX_POINTS {
        match detect_negative_curve(&tri, order) {
            Ok(Detection::Found(cand)) => {
                let same = cand.kernel_dim == 1 && cand.poly.proportional(&poly);
                c.cond("kernel", "1-dimensional, spanned by xi", format!("dim {}", cand.kernel_dim), same);
            }
            Ok(other) => c.cond("kernel", "nonzero", format!("{other:?}"), false),
            Err(err) => c.cond("kernel", "nonzero", err, false),
        }
    }
    if order >= 2 {
        check_kyc(c, &poly);
    }
    check_irreducible(c, &poly);
    Ok(poly)
}

fn verify_special(e: &CatalogEntry, c: &mut Checks) -> Result<LaurentPoly, String> {
    let k = need(e, &e.k, "K")?;
    let sc = special_upsilon(k).map_err(|err| err.to_string())?;
    let w = sc.weights;
    c.stored("wpp", e.wpp.map(|w| format!("{:?}", w)), format!("{:?}", [w.a, w.b, w.c]));
    c.eq("m", e.m, sc.m);
    c.eq("slopes", &e.slopes, &sc.triangle.slopes);
    c.stored("deficiency", e.deficiency, sc.deficiency);
    c.stored("self_intersection", e.self_intersection.as_ref().map(Frac), Frac(&sc.self_intersection));
    c.eq("self_intersection_closed_form", Frac(&q(-(k - 1), k * (k - 2))), Frac(&sc.self_intersection));
    match canonical_degree_and_genus(&sc.poly) {
        Ok((kyc, _)) => c.eq("kyc", (k - 1) * (k - 4), kyc),
        Err(err) => c.cond("kyc", (k - 1) * (k - 4), err, false),
    }
    c.cond("irreducibility", "irreducible", verdict_text(&sc.irreducibility), sc.irreducibility.is_irreducible());
    if let Some(d) = e.degree {
        check_degree(c, &w, sc.m, d)?;
    }
    Ok(sc.poly)
}

fn verify_new(e: &CatalogEntry, c: &mut Checks) -> Result<LaurentPoly, String> {
    let k = need(e, &e.k, "K")?;
    let nf = new_nonspecial(k).map_err(|err| err.to_string())?;
    c.eq("m", e.m, nf.m);
    c.eq("slopes", &e.slopes, &nf.triangle.slopes);
    c.eq("lattice_points", nf.m * (nf.m + 1) / 2 + 1, nf.lattice_points);
    c.eq("kernel_dim", 1, nf.candidate.kernel_dim);
    let c2 = &nf.candidate.self_intersection;
    c.cond("negative", "C^2 <= 0", Frac(c2), !c2.is_positive());
    c.stored("self_intersection", e.self_intersection.as_ref().map(Frac), Frac(c2));
    check_kyc(c, &nf.candidate.poly);
    check_irreducible(c, &nf.candidate.poly);
    Ok(nf.candidate.poly)
}

/// Degree search from scratch up to the stored degree.
fn check_degree(c: &mut Checks, w: &WppWeights, m: usize, stated: u64) -> Result<Option<(u64, LaurentPoly)>, String> {
    let hit = wpp_degree_search(w, m, stated).map_err(|err| err.to_string())?;
    match hit {
        Some(h) => {
            c.eq("degree", stated, h.degree);
            Ok(Some((h.degree, h.poly)))
        }
        None => {
            c.cond("degree", stated, format!("no form of degree <= {stated} vanishes to order {m}"), false);
            Ok(None)
        }
    }
}

fn verify_sporadic(e: &CatalogEntry, c: &mut Checks) -> Result<LaurentPoly, String> {
    let mut curve: Option<LaurentPoly> = None;
    if let Some(text) = &e.poly {
        let poly: LaurentPoly = text.parse().map_err(|err: crate::laurent::LaurentError| err.to_string())?;
        let order = poly.vanishing_order().map_err(|err| err.to_string())?;
        c.eq("m", e.m, order);
        let np = poly.newton_polygon().map_err(|err| err.to_string())?;
        let tri = minimal_triangle(&np, &e.slopes);
        let c2 = qi(2) * tri.area() - qi((order * order) as i64);
        c.cond("negative", "C^2 <= 0", Frac(&c2), !c2.is_positive());
        c.stored("self_intersection", e.self_intersection.as_ref().map(Frac), Frac(&c2));
        curve = Some(poly);
    }
    if let Some(text) = &e.triangle {
        let tri = parse_triangle(text)?;
        c.eq("slopes", &e.slopes, &tri.slopes);
        let def = count_deficiency(&tri, e.m);
        c.stored("deficiency", e.deficiency, def);
        match detect_negative_curve(&tri, e.m).map_err(|err| err.to_string())? {
            Detection::Found(cand) => {
                c.cond("kernel", "nonzero", format!("dim {}", cand.kernel_dim), true);
                let c2 = &cand.self_intersection;
                c.cond("negative", "C^2 <= 0", Frac(c2), !c2.is_positive());
                c.stored("self_intersection", e.self_intersection.as_ref().map(Frac), Frac(c2));
                curve = Some(cand.poly.clone());
            }
            other => c.cond("kernel", "nonzero", format!("{other:?}"), false),
        }
    }
    if let Some([a, b, cc]) = e.wpp {
        let w = WppWeights::new(a, b, cc);
        c.cond("wpp_coprime", "pairwise coprime", w, w.pairwise_coprime());
        if let Some(stated) = e.degree {
            if let Some((d, hit)) = check_degree(c, &w, e.m, stated)? {
                let c2 = wpp_self_intersection(&w, d, e.m);
                c.cond("wpp_negative", "d^2/abc - m^2 <= 0", Frac(&c2), !c2.is_positive());
                if e.triangle.is_none() {
                    // the same curve in the chart at the stated slopes
                    match WppChartMap::find(&w, d, &e.slopes) {
                        Some(chart) => {
                            c.cond("chart", format!("slopes {}", e.slopes), chart.triangle.to_string(), true);
                            let poly = chart.map_poly(&hit);
                            let np = poly.newton_polygon().map_err(|err| err.to_string())?;
                            let tri = minimal_triangle(&np, &e.slopes);
                            let c2_chart = qi(2) * tri.area() - qi((e.m * e.m) as i64);
                            let fits = !c2_chart.is_positive();
                            c.cond("negative", "C^2 <= 0", Frac(&c2_chart), fits);
                            c.stored("self_intersection", e.self_intersection.as_ref().map(Frac), Frac(&c2_chart));
                            let def = count_deficiency(&chart.triangle, e.m);
                            c.stored("deficiency", e.deficiency, def);
                            curve = Some(poly);
                        }
                        None => c.cond("chart", format!("slopes {}", e.slopes), "no unimodular chart", false),
                    }
                }
            }
        }
    }
    let poly = curve.ok_or_else(|| format!("entry {} has neither polynomial, triangle nor WPP degree", e.id))?;
    if e.m >= 2 {
        check_kyc(c, &poly);
    }
    check_irreducible(c, &poly);
    Ok(poly)
}

/// Re-derives every stored field of `entry` from scratch. Failures are
/// reported per field, never raised.
pub fn catalog_verify(entry: &CatalogEntry) -> VerifyReport {
    let mut c = Checks::default();
    let res = match entry.family {
        FamilyTag::IT | FamilyTag::RT => verify_family(entry, tag_kind(entry.family).unwrap(), &mut c),
        FamilyTag::Special => verify_special(entry, &mut c),
        FamilyTag::NewNonSpecial => verify_new(entry, &mut c),
        FamilyTag::Sporadic => verify_sporadic(entry, &mut c),
    };
    let (curve, error) = match res {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(e)),
    };
    let pass = error.is_none() && c.0.iter().all(|x| x.pass);
    VerifyReport { id: entry.id.clone(), pass, skipped: false, checks: c.0, error, curve }
}

fn skipped(entry: &CatalogEntry) -> VerifyReport {
    VerifyReport {
        id: entry.id.clone(),
        pass: true,
        skipped: true,
        checks: vec![],
        error: Some("deep entry; run with --deep".into()),
        curve: None,
    }
}

/// Runs `f` on every item on all cores, keeping the input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|sc| {
        for _ in 0..workers {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(|r| r.expect("every item ran")).collect()
}

/// Verifies the selected entries in parallel; deep entries only when asked.
pub fn verify_entries(entries: &[&CatalogEntry], deep: bool) -> Vec<VerifyReport> {
    par_map(entries, |e| if e.deep && !deep { skipped(e) } else { catalog_verify(e) })
}

/// Checks every small-order list against verified curves: each listed curve
/// has the stated order and the list has the stated number of lattice
/// isomorphism classes.
pub fn verify_small_m(cat: &Catalog, reports: &[VerifyReport]) -> Vec<VerifyReport> {
    cat.small_m
        .iter()
        .map(|list| {
            let mut c = Checks::default();
            let mut curves: Vec<(&str, &LaurentPoly)> = Vec::new();
            let mut error = None;
            for id in &list.ids {
                let entry = cat.get(id);
                let report = reports.iter().find(|r| &r.id == id);
                match (entry, report.and_then(|r| r.curve.as_ref())) {
                    (Some(e), Some(p)) => {
                        c.eq(&format!("{id}.m"), list.m, e.m);
                        curves.push((id, p));
                    }
                    _ => error = Some(format!("{id} is missing or unverified")),
                }
            }
            let mut reps: Vec<&LaurentPoly> = Vec::new();
            let mut same = Vec::new();
            for (id, p) in &curves {
                match reps.iter().position(|r| unimodular_equivalence(r, p).is_some()) {
                    Some(i) => same.push(format!("{id}~{}", i + 1)),
                    None => reps.push(p),
                }
            }
            let found = if same.is_empty() { reps.len().to_string() } else { format!("{} ({})", reps.len(), same.join(", ")) };
            c.cond("classes", list.classes, found, reps.len() == list.classes);
            let pass = error.is_none() && c.0.iter().all(|x| x.pass);
            VerifyReport { id: format!("small-m={}", list.m), pass, skipped: false, checks: c.0, error, curve: None }
        })
        .collect()
}

/// All entries plus the small-order lists.
pub fn verify_catalog(cat: &Catalog, deep: bool) -> Vec<VerifyReport> {
    let entries: Vec<&CatalogEntry> = cat.entries.iter().collect();
    let mut reports = verify_entries(&entries, deep);
    let lists = verify_small_m(cat, &reports);
    reports.extend(lists);
    reports
}

// ---------------------------------------------------------------------------
// curves and diamonds of entries

/// The curve of an entry, computed as in its verification.
pub fn entry_curve(entry: &CatalogEntry) -> Result<LaurentPoly, CliError> {
    let r = catalog_verify(entry);
    r.curve.ok_or_else(|| CliError::Entry(entry.id.clone(), r.error.unwrap_or_else(|| "no curve".into())))
}

/// Slopes of the center of the entry's diamond.
pub fn entry_center(entry: &CatalogEntry) -> SlopePair {
    match (tag_kind(entry.family), entry.k, entry.mn) {
        (Some(kind), Some(k), Some((m, n))) => family_center(k, m, n, kind),
        _ => entry.slopes.clone(),
    }
}

pub fn entry_diamond(entry: &CatalogEntry) -> Result<Diamond, CliError> {
    match (entry.family, entry.k, entry.mn) {
        (FamilyTag::IT | FamilyTag::RT, Some(k), Some((m, n))) => {
            Ok(family_diamond(k, m, n, tag_kind(entry.family).unwrap())?)
        }
        (FamilyTag::Special, Some(k), _) => Ok(Diamond::special(k)?),
        _ => Ok(Diamond::new(entry.id.clone(), entry_curve(entry)?, entry.m)?),
    }
}

// ---------------------------------------------------------------------------
// the map

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub s_min: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub s_max: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub t_min: Rational,
    #[serde(with = "crate::exactmath::rational::serde_q")]
    pub t_max: Rational,
}

fn default_families() -> Vec<FamilyTag> {
    vec![FamilyTag::IT, FamilyTag::RT]
}
fn default_k_max() -> i64 {
    6
}
fn default_n_max() -> usize {
    3
}
fn default_samples() -> usize {
    32
}
fn default_width() -> u32 {
    640
}
fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapSpec {
    pub viewport: Viewport,
    #[serde(default = "default_families")]
    pub families: Vec<FamilyTag>,
    #[serde(default = "default_k_max")]
    pub k_max: i64,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Diamonds of sporadic entries up to this order (their curves are recomputed).
    #[serde(default)]
    pub sporadic_max_m: usize,
    /// Horizontal sections per diamond outline.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_width")]
    pub width: u32,
    /// Dots at the stored slopes of every entry in view.
    #[serde(default = "default_true")]
    pub markers: bool,
}

impl MapSpec {
    pub fn new(s: (Rational, Rational), t: (Rational, Rational)) -> Self {
        MapSpec {
            viewport: Viewport { s_min: s.0, s_max: s.1, t_min: t.0, t_max: t.1 },
            families: default_families(),
            k_max: default_k_max(),
            n_max: default_n_max(),
            sporadic_max_m: 0,
            samples: default_samples(),
            width: default_width(),
            markers: true,
        }
    }

    fn wants(&self, e: &CatalogEntry) -> bool {
        if !self.families.contains(&e.family) || e.deep {
            return false;
        }
        match e.family {
            FamilyTag::IT | FamilyTag::RT => {
                let (Some(k), Some((m, n))) = (e.k, e.mn) else { return false };
                k <= self.k_max && family_index(k, m, n).map_or(false, |i| i <= self.n_max)
            }
            FamilyTag::Special | FamilyTag::NewNonSpecial => e.k.map_or(false, |k| k <= self.k_max),
            FamilyTag::Sporadic => e.m <= self.sporadic_max_m,
        }
    }
}

struct Frame {
    s0: f64,
    t1: f64,
    scale: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn px(&self, s: f64, t: f64) -> String {
        format!("{:.2},{:.2}", (s - self.s0) * self.scale, (self.t1 - t) * self.scale)
    }
}

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn path_of(frame: &Frame, pts: &[(f64, f64)]) -> String {
    pts.iter().map(|(s, t)| frame.px(*s, *t)).collect::<Vec<_>>().join(" ")
}

/// Outline from horizontal sections of the diamond, between the ends of its
/// vertical section through `center`.
fn diamond_outline(d: &Diamond, center: &SlopePair, samples: usize, cap: f64) -> Vec<(f64, f64)> {
    let vertical = diamond_section(d, Line::Vertical(&center.s));
    let Some(iv) = vertical.iter().find(|iv| iv.contains(&center.t)).or(vertical.first()) else {
        return vec![];
    };
    let lo = iv.lo.to_f64();
    let hi = iv.hi.as_ref().map_or(cap, |h| h.to_f64().min(cap));
    let sc = f(&center.s);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let n = samples.max(2);
    for j in 1..n {
        let tf = lo + (hi - lo) * j as f64 / n as f64;
        let Some(t) = Rational::from_float(tf) else { continue };
        let sections = diamond_section(d, Line::Horizontal(&t));
        let hit = sections.iter().find(|s| s.contains(&center.s));
        if let Some(s) = hit {
            left.push((s.lo.to_f64(), tf));
            right.push((s.hi.as_ref().map_or(tf, |h| h.to_f64()), tf));
        }
    }
    let mut out = vec![(sc, lo)];
    out.extend(right);
    out.push((sc, hi));
    out.extend(left.into_iter().rev());
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG 1.1 map of the viewport: the boundary curves `t = s` and
/// `t = s/(s-1)` of the fundamental domain, one outline per selected catalog
/// diamond (group attributes carry the exact center) and a dot per entry.
/// Output depends only on `spec` and `catalog`.
pub fn render_map(spec: &MapSpec, catalog: &Catalog) -> Result<String, CliError> {
    let vp = &spec.viewport;
    if vp.s_min >= vp.s_max || vp.t_min >= vp.t_max {
        return Err(CliError::EmptyViewport(format!(
            "[{}, {}] x [{}, {}]",
            Frac(&vp.s_min),
            Frac(&vp.s_max),
            Frac(&vp.t_min),
            Frac(&vp.t_max)
        )));
    }
    if !vp.s_max.is_positive() || vp.s_min >= vp.t_max {
        return Err(CliError::EmptyViewport("no point with 0 < s < t".into()));
    }
    let (s0, s1, t0, t1) = (f(&vp.s_min), f(&vp.s_max), f(&vp.t_min), f(&vp.t_max));
    let w = spec.width as f64;
    let scale = w / (s1 - s0);
    let frame = Frame { s0, t1, scale, w, h: (t1 - t0) * scale };
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.2} {:.2}" data-viewport="{},{},{},{}">"#,
        frame.w,
        frame.h,
        frame.w,
        frame.h,
        Frac(&vp.s_min),
        Frac(&vp.s_max),
        Frac(&vp.t_min),
        Frac(&vp.t_max)
    )
    .unwrap();
    writeln!(out, r#"<defs><clipPath id="view"><rect x="0" y="0" width="{:.2}" height="{:.2}"/></clipPath></defs>"#, frame.w, frame.h)
        .unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="{:.2}" height="{:.2}" fill="#ffffff" stroke="#000000"/>"##, frame.w, frame.h)
        .unwrap();
    writeln!(out, r#"<g clip-path="url(#view)">"#).unwrap();

    // boundary of the fundamental domain
    let steps = 400;
    let diag: Vec<(f64, f64)> = vec![(s0, s0), (s1, s1)];
    writeln!(out, r##"<polyline class="domain" data-curve="t=s" fill="none" stroke="#555555" points="{}"/>"##, path_of(&frame, &diag))
        .unwrap();
    let hyper: Vec<(f64, f64)> = (0..=steps)
        .map(|i| s0.max(1.0) + (s1 - s0.max(1.0)) * i as f64 / steps as f64)
        .filter(|&s| s > 1.0)
        .map(|s| (s, s / (s - 1.0)))
        .filter(|&(_, t)| t <= t1 + (t1 - t0))
        .collect();
    if hyper.len() > 1 {
        writeln!(
            out,
            r##"<polyline class="domain" data-curve="t=s/(s-1)" fill="none" stroke="#555555" points="{}"/>"##,
            path_of(&frame, &hyper)
        )
        .unwrap();
    }

    let cap = t1 + (t1 - t0);
    for e in catalog.entries.iter().filter(|e| spec.wants(e)) {
        let d = entry_diamond(e)?;
        let center = entry_center(e);
        let outline = diamond_outline(&d, &center, spec.samples, cap);
        let colour = match e.family {
            FamilyTag::IT => "#1f5fa8",
            FamilyTag::RT => "#b8452b",
            FamilyTag::Special => "#2e8b57",
            FamilyTag::NewNonSpecial => "#8a5fb0",
            FamilyTag::Sporadic => "#a07a1a",
        };
        writeln!(
            out,
            r#"<g class="diamond" data-id="{}" data-family="{:?}" data-m="{}" data-center="{},{}">"#,
            xml_escape(&e.id),
            e.family,
            d.m,
            Frac(&center.s),
            Frac(&center.t)
        )
        .unwrap();
        if outline.len() > 2 {
            writeln!(
                out,
                r#"<polygon fill="{colour}" fill-opacity="0.25" stroke="{colour}" stroke-width="1" points="{}"/>"#,
                path_of(&frame, &outline)
            )
            .unwrap();
        }
        let (cs, ct) = (f(&center.s), f(&center.t));
        let p = frame.px(cs, ct);
        let (x, y) = p.split_once(',').unwrap();
        writeln!(out, r#"<text x="{x}" y="{y}" font-size="9" font-family="monospace">{}</text>"#, xml_escape(&e.id)).unwrap();
        writeln!(out, "</g>").unwrap();
    }
    if spec.markers {
        for e in &catalog.entries {
            let (s, t) = (&e.slopes.s, &e.slopes.t);
            if s < &vp.s_min || s > &vp.s_max || t < &vp.t_min || t > &vp.t_max {
                continue;
            }
            let p = frame.px(f(s), f(t));
            let (x, y) = p.split_once(',').unwrap();
            writeln!(
                out,
                r##"<circle class="marker" cx="{x}" cy="{y}" r="2" fill="#000000" data-id="{}" data-slopes="{},{}"/>"##,
                xml_escape(&e.id),
                Frac(s),
                Frac(t)
            )
            .unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

// ---------------------------------------------------------------------------
// certification against the catalog

/// Diamonds of the catalog containing `target`, home candidates first.
fn certify_candidates(cat: &Catalog, max_m: usize) -> Vec<(CatalogEntry, Diamond)> {
    let picked: Vec<&CatalogEntry> = cat
        .entries
        .iter()
        .filter(|e| !e.deep && e.m <= max_m)
        .filter(|e| match (e.family, e.k, e.mn) {
            (FamilyTag::IT | FamilyTag::RT, Some(k), Some((m, n))) => {
                k <= 6 && family_index(k, m, n).map_or(false, |i| i <= 3)
            }
            (FamilyTag::Special, Some(k), _) => k == 4,
            _ => true,
        })
        .collect();
    let diamonds = par_map(&picked, |e| entry_diamond(e).ok());
    let mut out: Vec<(CatalogEntry, Diamond)> = vec![(
        CatalogEntry {
            id: "1-y".into(),
            family: FamilyTag::Sporadic,
            k: None,
            mn: None,
            m: 1,
            slopes: SlopePair::new(qi(2), qi(5)),
            triangle: None,
            poly: Some("1-y".into()),
            wpp: None,
            degree: None,
            deficiency: None,
            self_intersection: None,
            deep: false,
        },
        Diamond::one_minus_y(),
    )];
    for (e, d) in picked.into_iter().zip(diamonds) {
        if let Some(d) = d {
            if e.poly.as_deref() != Some("1-y") {
                out.push((e.clone(), d));
            }
        }
    }
    out
}

/// Tries the integral-slope construction, then every pair of catalog
/// diamonds (home containing `target`, neighbor anywhere), then the non-MDS
/// screen of the family diamonds containing `target`.
pub fn certify_with_catalog(target: &SlopePair, cat: &Catalog, max_m: usize) -> (MdsCertificate, Option<String>) {
    if target.t.is_integer() {
        let c = certify_integer_t(target);
        if c.is_mds() {
            return (c, Some("1-y".into()));
        }
    }
    let cands = certify_candidates(cat, max_m);
    let homes: Vec<&(CatalogEntry, Diamond)> = cands.iter().filter(|(_, d)| diamond_contains(d, target)).collect();
    for (he, home) in &homes {
        for (ne, nb) in &cands {
            if ne.id == he.id {
                continue;
            }
            let c = certify_mds(target, home, nb);
            if c.is_mds() {
                return (c, Some(format!("{} / {}", he.id, ne.id)));
            }
        }
    }
    for (he, _) in &homes {
        if let (Some(kind), Some(k), Some((m, n))) = (tag_kind(he.family), he.k, he.mn) {
            if let crate::mds::NonMdsScreen::NonMds(evidence) = non_mds_screen(k, m, n, kind, target) {
                return (MdsCertificate::NonMds { target: target.clone(), evidence }, Some(he.id.clone()));
            }
        }
    }
    let reason = if homes.is_empty() {
        "no catalog diamond contains the point".to_string()
    } else {
        format!("no certificate from {} containing diamond(s)", homes.len())
    };
    (MdsCertificate::Unknown { target: target.clone(), reason }, None)
}

// ---------------------------------------------------------------------------
// command line

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "negcurves", about = "Negative curves on blowups of toric surfaces", version)]
pub struct Cli {
    /// Catalog file (defaults to the bundled one).
    #[arg(long, global = true)]
    pub catalog: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Re-verify catalog entries.
    Verify {
        #[arg(long)]
        entry: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Include entries with very large systems.
        #[arg(long)]
        deep: bool,
        /// One JSON report per line.
        #[arg(long)]
        json: bool,
    },
    /// Kernel search for a curve of order `m` at the given slopes.
    Detect {
        #[arg(long, num_args = 2, value_parser = rational_arg, allow_negative_numbers = true)]
        slopes: Vec<Rational>,
        #[arg(long)]
        m: usize,
        /// Triangle such as `3*[(0,0),(1,0),(3,7)]`; defaults to the weighted projective plane of the slopes.
        #[arg(long)]
        triangle: Option<String>,
    },
    /// Fundamental domain point and edge rebasings.
    Reduce {
        #[arg(long, num_args = 2, value_parser = rational_arg, allow_negative_numbers = true)]
        slopes: Vec<Rational>,
    },
    /// Slope charts of a weighted projective plane.
    Wpp {
        #[arg(long, num_args = 3)]
        weights: Vec<u64>,
    },
    /// Smallest degree of a form vanishing to order `m`.
    Degree {
        #[arg(long, num_args = 3)]
        weights: Vec<u64>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        dmax: u64,
    },
    /// Render the SVG map described by a JSON spec.
    Map {
        #[arg(long)]
        spec: std::path::PathBuf,
        #[arg(short = 'o', long)]
        output: std::path::PathBuf,
    },
    /// MDS certificate from the catalog diamonds.
    Certify {
        #[arg(long, num_args = 2, value_parser = rational_arg, allow_negative_numbers = true)]
        slopes: Vec<Rational>,
        /// Largest order of catalog curves used.
        #[arg(long, default_value_t = 18)]
        mmax: usize,
    },
    /// Negative curves of weighted projective planes on a grid of slopes.
    Search {
        /// `s_min s_max t_min t_max`.
        #[arg(long, num_args = 4, value_parser = rational_arg, allow_negative_numbers = true)]
        region: Vec<Rational>,
        #[arg(long)]
        mmax: usize,
        /// Largest denominator of grid slopes.
        #[arg(long, default_value_t = 4)]
        den: i64,
    },
}

fn slope_pair(v: &[Rational]) -> SlopePair {
    SlopePair::new(v[0].clone(), v[1].clone())
}

fn json_line<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

/// Largest `d` with `d^2 <= abc m^2`.
fn degree_bound(w: &WppWeights, m: usize) -> u64 {
    let target = (w.product() as u128) * (m as u128) * (m as u128);
    let mut d = (target as f64).sqrt() as u128;
    while d * d > target {
        d -= 1;
    }
    while (d + 1) * (d + 1) <= target {
        d += 1;
    }
    d as u64
}

/// Runs one command, writing to `out`; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn std::io::Write) -> Result<i32, CliError> {
    let cat = match &cli.catalog {
        Some(p) => Catalog::from_json(&std::fs::read_to_string(p)?)?,
        None => Catalog::bundled(),
    };
    match cli.cmd {
        Command::Verify { entry, all, deep, json } => {
            let reports = if all || entry.is_empty() {
                verify_catalog(&cat, deep)
            } else {
                let picked = entry
                    .iter()
                    .map(|id| cat.get(id).ok_or_else(|| CliError::UnknownEntry(id.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                verify_entries(&picked, deep || !all)
            };
            for r in &reports {
                if json {
                    writeln!(out, "{}", json_line(r))?;
                } else {
                    writeln!(out, "{r}")?;
                }
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            if !json {
                writeln!(out, "{} verified, {} failed", reports.len() - failed, failed)?;
            }
            Ok(i32::from(failed > 0))
        }
        Command::Detect { slopes, m, triangle } => {
            let sp = slope_pair(&slopes);
            let tri = match triangle {
                Some(t) => parse_triangle(&t).map_err(|e| CliError::Entry("--triangle".into(), e))?,
                None => {
                    let w = wpp_of_slopes(&sp).ok_or_else(|| {
                        CliError::Entry("--slopes".into(), "not a weighted projective plane; pass --triangle".into())
                    })?;
                    let dmax = degree_bound(&w, m);
                    let hit = wpp_degree_search(&w, m, dmax).map_err(|e| CliError::Entry(w.to_string(), e.to_string()))?;
                    let Some(hit) = hit else {
                        writeln!(out, "{w}: no form of degree <= {dmax} vanishes to order {m}")?;
                        return Ok(1);
                    };
                    let chart = WppChartMap::find(&w, hit.degree, &sp)
                        .ok_or_else(|| CliError::Entry(w.to_string(), "no chart at these slopes".into()))?;
                    writeln!(out, "{w}: degree {}, triangle {}", hit.degree, chart.triangle)?;
                    chart.triangle
                }
            };
            if tri.slopes != sp {
                writeln!(out, "note: the triangle has slopes {}", tri.slopes)?;
            }
            let det = detect_negative_curve(&tri, m).map_err(|e| CliError::Entry(tri.to_string(), e.to_string()))?;
            writeln!(out, "{}", json_line(&det))?;
            Ok(i32::from(det.candidate().is_none()))
        }
        Command::Reduce { slopes } => {
            let sp = slope_pair(&slopes);
            let red = to_fundamental_domain(&sp).map_err(|e| CliError::Entry(sp.to_string(), e.to_string()))?;
            writeln!(out, "fundamental domain: {}", json_line(&red))?;
            let reb = edge_rebasings(&sp).map_err(|e| CliError::Entry(sp.to_string(), e.to_string()))?;
            for r in reb {
                writeln!(out, "{:?} edge: {}", r.edge, json_line(&r.reduced))?;
            }
            match wpp_of_slopes(&sp) {
                Some(w) => writeln!(out, "surface: {w}")?,
                None => writeln!(out, "surface: not a weighted projective plane")?,
            }
            Ok(0)
        }
        Command::Wpp { weights } => {
            let w = WppWeights::new(weights[0], weights[1], weights[2]);
            let charts = slopes_of_wpp(&w).map_err(|e| CliError::Entry(w.to_string(), e.to_string()))?;
            for c in charts {
                writeln!(out, "{}", json_line(&c))?;
            }
            Ok(0)
        }
        Command::Degree { weights, m, dmax } => {
            let w = WppWeights::new(weights[0], weights[1], weights[2]);
            match wpp_degree_search(&w, m, dmax).map_err(|e| CliError::Entry(w.to_string(), e.to_string()))? {
                Some(hit) => {
                    let c2 = wpp_self_intersection(&w, hit.degree, m);
                    writeln!(out, "{w} m={m}: degree {} (kernel dimension {}, C^2 = {})", hit.degree, hit.kernel_dim, Frac(&c2))?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "{w} m={m}: nothing up to degree {dmax}")?;
                    Ok(1)
                }
            }
        }
        Command::Map { spec, output } => {
            let spec: MapSpec = serde_json::from_str(&std::fs::read_to_string(&spec)?)
                .map_err(|e| CliError::Catalog(format!("map spec: {e}")))?;
            let svg = render_map(&spec, &cat)?;
            std::fs::write(&output, svg)?;
            writeln!(out, "wrote {}", output.display())?;
            Ok(0)
        }
        Command::Certify { slopes, mmax } => {
            let sp = slope_pair(&slopes);
            let (cert, via) = certify_with_catalog(&sp, &cat, mmax);
            let verdict = match &cert {
                MdsCertificate::Mds { .. } => "MDS",
                MdsCertificate::NonMds { .. } => "NonMDS",
                MdsCertificate::Unknown { .. } => "Unknown",
            };
            writeln!(out, "{sp}: {verdict}{}", via.map(|v| format!(" via {v}")).unwrap_or_default())?;
            writeln!(out, "{}", json_line(&cert))?;
            Ok(i32::from(matches!(cert, MdsCertificate::Unknown { .. })))
        }
        Command::Search { region, mmax, den } => {
            let (s0, s1, t0, t1) = (&region[0], &region[1], &region[2], &region[3]);
            if s0 >= s1 || t0 >= t1 {
                return Err(CliError::EmptyViewport("search region".into()));
            }
            let grid = |lo: &Rational, hi: &Rational| -> Vec<Rational> {
                let mut v: Vec<Rational> = Vec::new();
                for d in 1..=den.max(1) {
                    let start = (lo * qi(d)).ceil().to_integer();
                    let end = (hi * qi(d)).floor().to_integer();
                    let mut n = start;
                    while n <= end {
                        v.push(Rational::new(n.clone(), d.into()));
                        n += 1;
                    }
                }
                v.sort();
                v.dedup();
                v
            };
            let mut found = 0;
            for s in grid(s0, s1) {
                for t in grid(t0, t1) {
                    let sp = SlopePair::new(s.clone(), t);
                    let Some(w) = wpp_of_slopes(&sp) else { continue };
                    for m in 1..=mmax {
                        let dmax = degree_bound(&w, m);
                        if let Ok(Some(hit)) = wpp_degree_search(&w, m, dmax) {
                            let c2 = wpp_self_intersection(&w, hit.degree, m);
                            writeln!(out, "{sp} {w}: m={m} degree {} C^2={}", hit.degree, Frac(&c2))?;
                            found += 1;
                            break;
                        }
                    }
                }
            }
            writeln!(out, "{found} points with a curve of order <= {mmax}")?;
            Ok(0)
        }
    }
}

/// Entry point of the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalog_parses() {
        let cat = Catalog::bundled();
        assert!(cat.entries.len() > 50);
        for list in &cat.small_m {
            for id in &list.ids {
                assert!(cat.get(id).is_some(), "{id}");
            }
        }
        let again = Catalog::from_json(&cat.to_json()).unwrap();
        assert_eq!(again, cat);
    }

    #[test]
    fn triangles_parse() {
        let t = parse_triangle("3*[(0,0),(1,0),(3,7)]").unwrap();
        assert_eq!(t.slopes, SlopePair::from_ints((7, 3), (7, 2)));
        let t = parse_triangle("[(-4/13,0),(14/13,0),(68/13,18)]").unwrap();
        assert_eq!(t.slopes, SlopePair::from_ints((13, 4), (13, 3)));
        assert!(parse_triangle("[(0,0),(1,0)]").is_err());
        assert!(parse_triangle("[(0,0),(1.5,0),(2,3)]").is_err());
    }

    #[test]
    fn small_entries_verify() {
        let cat = Catalog::bundled();
        for id in ["one-minus-y", "IT_3(1,1)", "RT_4(2,1)", "IT_4(2,1)", "sporadic-m4", "new-K4"] {
            let r = catalog_verify(cat.get(id).unwrap());
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn corrupted_degree_fails() {
        let cat = Catalog::bundled();
        let mut e = cat.get("sporadic-m4").unwrap().clone();
        e.degree = Some(101);
        let r = catalog_verify(&e);
        assert!(!r.pass);
        let d = r.check("degree").unwrap();
        assert_eq!((d.expected.as_str(), d.found.as_str()), ("101", "100"));
    }

    #[test]
    fn empty_viewport_is_an_error() {
        let spec = MapSpec::new((qi(2), qi(2)), (qi(3), qi(4)));
        assert!(matches!(render_map(&spec, &Catalog::empty()), Err(CliError::EmptyViewport(_))));
    }

    #[test]
    fn empty_catalog_draws_the_domain_only() {
        let spec = MapSpec::new((qi(1), qi(3)), (q(5, 2), qi(6)));
        let svg = render_map(&spec, &Catalog::empty()).unwrap();
        assert!(svg.contains("t=s/(s-1)"));
        assert!(!svg.contains("class=\"diamond\""));
    }

    #[test]
    fn decimal_slopes_are_rejected() {
        let err = Cli::try_parse_from(["negcurves", "reduce", "--slopes", "1.5", "4"]).unwrap_err();
        assert!(err.to_string().contains("3/2"), "{err}");
    }
}
