//! One PASS/FAIL line per acceptance criterion. All comparisons are exact
//! (rational or integer equality) unless a line says otherwise.
//!
//! Lines go straight to the stdout handle so they survive output capture.
//! Criteria whose failure is a reproducible defect of the source statement
//! are listed in `KNOWN`; any other failure fails the test.

mod props;

use std::io::Write;
use std::time::Instant;

use negcurves::cli::{catalog_verify, certify_with_catalog, render_map, verify_catalog, Catalog, FamilyTag, MapSpec, VerifyReport};
use negcurves::exactmath::{parse_rational, q, qi, Frac, Rational};
use negcurves::families::{
    edge_coefficients, fib, mn_pairs, new_family_even_cd, new_nonspecial, solves_mn, special_upsilon, unimodular_equivalence, xi,
    TriangleKind, XiKind,
};
use negcurves::laurent::LaurentPoly;
use negcurves::lattice::{lattice_perimeter, lattice_point_count, QPoint, QPolygon};
use negcurves::mds::{
    certify_integer_t, certify_mds, diamond_contains, family_center, intersect, new_family_even_orthogonality, new_family_odd_check,
    non_mds_screen, Diamond, MdsCertificate, MdsEvidence,
};
use negcurves::negcurve::wpp_degree_search;
use negcurves::trispace::{edge_rebasings, slopes_of_wpp, wpp_of_slopes, Edge, SlopePair, WppWeights};
use num_traits::{Signed, Zero};
use proptest::test_runner::{Config, TestRunner};

const KNOWN: &[(u8, &str)] = &[
    (5, "odd K: exact C1.C2 = (2K-11)(2K-5)/((2K-3)(4K^2-16K+11)) is positive for K >= 7"),
    (8, "odd-K rational family curves with n >= 2 have K.C = 0"),
    (10, "(9/4,7/2) has three distinct edge charts"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn run(n: u8, name: &str, tol: &str, f: impl FnOnce() -> Outcome) -> (u8, bool) {
    let t = Instant::now();
    let o = f();
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    emit(&format!("{verdict} [{n:>2}] {name} ({tol}; {:.1}s): {}", t.elapsed().as_secs_f64(), o.detail));
    (n, o.pass)
}

fn y_minus_one_pow(d: i64) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for _ in 0..d {
        p = p.multiply(&LaurentPoly::from_i64_terms(&[(0, 1, 1), (0, 0, -1)]));
    }
    p
}

fn monomial(i: i64, j: i64) -> LaurentPoly {
    LaurentPoly::from_i64_terms(&[(i, j, 1)])
}

/// `lhs - rhs` equals `+tail` or `-tail`.
fn differs_by_signed(lhs: &LaurentPoly, rhs: &LaurentPoly, tail: &LaurentPoly) -> bool {
    let d = lhs - rhs;
    d == *tail || (&d + tail).is_zero()
}

fn family_polygon(k: i64, m: i64, n: i64, kind: TriangleKind) -> QPolygon {
    let v = match kind {
        TriangleKind::Integral => [(qi(0), qi(0)), (qi(m), qi(0)), (qi(m + n), qi(k * n))],
        TriangleKind::Rational => [(qi(0), qi(0)), (qi(m) - q(m + n, k), qi(0)), (qi(m), qi(m + n))],
    };
    QPolygon::hull(&v.map(|(x, y)| QPoint::new(x, y)))
}

fn canonical_degree(f: &LaurentPoly) -> i64 {
    let m = f.vanishing_order().unwrap() as i64;
    m - lattice_perimeter(&f.newton_polygon().unwrap()).unwrap() as i64
}

/// Largest `d` with `d^2 <= abc m^2`: beyond it no negative curve exists.
fn degree_bound(w: &WppWeights, m: u64) -> u64 {
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

fn c1_family_solutions() -> Outcome {
    let mut bad = Vec::new();
    for k in 3..=8i64 {
        // F_0 = 0, F_1 = 1, F_{n+1} = (K-2) F_n - F_{n-1}
        let mut f = vec![0i128, 1];
        for n in 1..=9 {
            f.push((k as i128 - 2) * f[n] - f[n - 1]);
        }
        let pairs = mn_pairs(k, 8).ok();
        for n in 0..=8usize {
            let (m, nn) = (f[n + 1], f[n]);
            let ok = (m + nn) * (m + nn) == k as i128 * m * nn + 1
                && fib(k, n + 1) as i128 == m
                && fib(k, n) as i128 == nn
                && solves_mn(k, m as i64, nn as i64)
                && pairs.as_ref().is_none_or(|p| p.get(n).is_none_or(|s| (s.m as i128, s.nn as i128) == (m, nn)));
            if !ok {
                bad.push(format!("K={k} n={n}"));
            }
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "54 pairs satisfy (M+N)^2 = KMN+1".into() } else { bad.join(", ") })
}

fn c2_recurrences() -> Outcome {
    let mut bad = Vec::new();
    for k in [4i64, 5] {
        for n in 1..=3usize {
            let (m, nn) = (fib(k, n + 1), fib(k, n));
            let (int_n, rat_n) = (xi(k, n, XiKind::Int).unwrap(), xi(k, n, XiKind::Rat).unwrap());
            let (int_p, rat_p) = (xi(k, n - 1, XiKind::Int).unwrap(), xi(k, n - 1, XiKind::Rat).unwrap());
            let tail1 = monomial(m + nn, 0).multiply(&y_minus_one_pow(k * nn));
            let tail2 = monomial(m, 0).multiply(&y_minus_one_pow(m + nn));
            if !differs_by_signed(&int_n.multiply(&int_p), &rat_p.power(k as u32), &tail1) {
                bad.push(format!("first relation K={k} n={n}"));
            }
            if !differs_by_signed(&rat_n.multiply(&rat_p), &int_n, &tail2) {
                bad.push(format!("second relation K={k} n={n}"));
            }
        }
    }
    let x31 = xi(3, 1, XiKind::Int).unwrap();
    let printed = LaurentPoly::from_i64_terms(&[(0, 0, 1), (1, 0, 1), (1, 1, -3), (2, 3, 1)]);
    let same = x31.proportional(&printed) || unimodular_equivalence(&x31, &printed).is_some();
    if !same {
        bad.push(format!("xi(3,1,int) = {x31}"));
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { format!("12 identities; xi(3,1,int) = {x31}") } else { bad.join(", ") })
}

fn c3_support_order() -> Outcome {
    let mut bad = Vec::new();
    for k in [4i64, 5] {
        for n in 1..=3usize {
            let (m, nn) = (fib(k, n + 1), fib(k, n));
            for (kind, tk, order) in [(XiKind::Int, TriangleKind::Integral, m + nn), (XiKind::Rat, TriangleKind::Rational, m)] {
                let f = xi(k, n, kind).unwrap();
                let poly = family_polygon(k, m, nn, tk);
                if !f.terms().all(|(e, _)| poly.contains(&QPoint::new(qi(e.0), qi(e.1)))) {
                    bad.push(format!("{kind:?} K={k} n={n} support"));
                }
                if f.vanishing_order().unwrap() as i64 != order {
                    bad.push(format!("{kind:?} K={k} n={n} order"));
                }
                if kind == XiKind::Int {
                    let np = f.newton_polygon().unwrap();
                    for v in np.lattice_vertices().unwrap() {
                        if f.coeff(v.x, v.y).abs() != qi(1) {
                            bad.push(format!("K={k} n={n} vertex {v}"));
                        }
                    }
                }
            }
        }
    }
    let detail = if bad.is_empty() { "6 integral + 6 rational curves; vertex coefficients of xi^int are +-1".into() } else { bad.join(", ") };
    Outcome::new(bad.is_empty(), detail)
}

fn c4_special() -> Outcome {
    let pinned = [(4i64, (8u64, 15u64, 43u64), 9usize, 1i64), (5, (15, 44, 349), 32, 3), (6, (24, 95, 1421), 75, 6), (7, (35, 174, 4171), 144, 10)];
    let mut bad = Vec::new();
    for (k, w, m, def) in pinned {
        let sc = special_upsilon(k).unwrap();
        let n = k - 2;
        let mm = n * n - 1;
        if (sc.weights.a, sc.weights.b, sc.weights.c) != w || sc.m != m || sc.deficiency != def {
            bad.push(format!("K={k}: {} m={} deficiency {}", sc.weights, sc.m, sc.deficiency));
        }
        if sc.self_intersection != q(-(k - 1), k * n) {
            bad.push(format!("K={k}: C^2 = {}", Frac(&sc.self_intersection)));
        }
        let np = sc.poly.newton_polygon().unwrap();
        let mut got: Vec<(i64, i64)> = np.lattice_vertices().unwrap().iter().map(|v| (v.x, v.y)).collect();
        let mut want = vec![(0, 0), (mm * n - 1, 0), (n * (mm + n) - 1, k * n * n - 1), (mm + n - 1, k * n - 1), (n - 1, n)];
        got.sort();
        want.sort();
        if got != want {
            bad.push(format!("K={k}: vertices {got:?}"));
        }
        let cf = &sc.closed_forms;
        let perim = lattice_perimeter(&np).unwrap() as i64;
        let twice_area = &np.area() * qi(2);
        let count = lattice_point_count(&np) as i64;
        if perim != cf.perimeter || twice_area != qi(cf.twice_area) || count != cf.lattice_points {
            bad.push(format!("K={k}: enumeration {perim}/{twice_area}/{count} against closed forms {cf:?}"));
        }
        // deficiency from the count: binom(m+1,2) + 1 - #points of the triangle
        let tri_pts = lattice_point_count(&sc.triangle.polygon()) as i64;
        if (m * (m + 1) / 2) as i64 + 1 - tri_pts != def {
            bad.push(format!("K={k}: triangle holds {tri_pts} points"));
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "K=4..7 weights, m, deficiency, C^2, vertices and closed forms".into() } else { bad.join("; ") })
}

fn c5_new_family() -> Outcome {
    let mut bad = Vec::new();
    let mut odd = Vec::new();
    for k in 4..=10i64 {
        let nf = new_nonspecial(k).unwrap();
        let m = nf.m;
        let pts = lattice_point_count(&nf.triangle.polygon()) as usize;
        if pts != m * (m + 1) / 2 + 1 || nf.candidate.kernel_dim != 1 || !nf.candidate.self_intersection.is_negative() {
            bad.push(format!("K={k}: {pts} points, kernel {}", nf.candidate.kernel_dim));
        }
        if k % 2 == 0 {
            let (b_d, _, _) = new_family_even_cd(k).unwrap();
            let cd = new_family_even_orthogonality(k).unwrap();
            if b_d != qi(k - 2) - q(2 * (k - 1), 2 * k - 1) || !cd.is_zero() {
                bad.push(format!("K={k}: b_D={} C.D={}", Frac(&b_d), Frac(&cd)));
            }
        } else {
            let o = new_family_odd_check(k).unwrap();
            let printed = -22 * k + 25 < 0;
            if !o.argument_closes || !printed {
                bad.push(format!("K={k}: printed test {printed}, exact C1.C2 = {}", Frac(&o.c1_c2)));
            }
            odd.push(format!("K={k}: {}", Frac(&o.c1_c2)));
        }
    }
    let detail = format!("counts, kernels and even-K C.D = 0 hold; odd C1.C2 {}{}", odd.join(", "), if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join("; ")) });
    Outcome::new(bad.is_empty(), detail)
}

fn c6_sporadic(cat: &Catalog, reports: &[VerifyReport]) -> Outcome {
    let pinned: [(&str, u64); 15] = [
        ("sporadic-m4", 100),
        ("sporadic-m5", 3344),
        ("sporadic-m6a", 196),
        ("sporadic-m6b", 189),
        ("sporadic-m7", 220),
        ("sporadic-m8", 1386),
        ("sporadic-m9", 559),
        ("sporadic-m11", 1420),
        ("sporadic-m12", 437),
        ("sporadic-m15", 6384),
        ("sporadic-m16", 1196),
        ("sporadic-m21", 2301),
        ("sporadic-m22", 2610),
        ("sporadic-m26", 10440),
        ("sporadic-m31", 2926),
    ];
    let mut bad = Vec::new();
    for (id, d) in pinned {
        let e = cat.get(id).unwrap();
        let r = reports.iter().find(|r| r.id == id).unwrap();
        let deg_ok = r.check("degree").is_some_and(|c| c.pass && c.found == d.to_string());
        let neg_ok = ["negative", "wpp_negative"].iter().any(|f| r.check(f).is_some_and(|c| c.pass));
        if e.degree != Some(d) || !r.pass || !deg_ok || !neg_ok || r.curve.is_none() {
            bad.push(format!("{id}: {r}"));
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "15 rows m <= 31: curve found, C^2 <= 0, Cox degree equal".into() } else { bad.join("; ") })
}

fn c7_km_degrees() -> Outcome {
    let mut found = Vec::new();
    let mut ok = true;
    for (w, m, d) in [(WppWeights::new(8, 15, 43), 9usize, 645u64), (WppWeights::new(5, 33, 49), 18, 1617)] {
        let hit = wpp_degree_search(&w, m, degree_bound(&w, m as u64)).unwrap();
        let got = hit.as_ref().map(|h| h.degree);
        ok &= got == Some(d) && hit.is_some_and(|h| h.scaled_self_intersection <= 0);
        found.push(format!("{w} m={m} -> {got:?}"));
    }
    Outcome::new(ok, found.join(", "))
}

fn c8_canonical_degree(cat: &Catalog, reports: &[VerifyReport]) -> Outcome {
    let mut bad = Vec::new();
    let mut special = Vec::new();
    for k in 4..=7i64 {
        let kyc = canonical_degree(&special_upsilon(k).unwrap().poly);
        special.push(kyc.to_string());
        if kyc != (k - 1) * (k - 4) {
            bad.push(format!("Upsilon_{k}: {kyc}"));
        }
    }
    let mut checked = 0;
    let mut excluded = Vec::new();
    for e in &cat.entries {
        if e.family == FamilyTag::Special || e.deficiency.is_some_and(|d| d > 0) {
            continue;
        }
        let Some(curve) = reports.iter().find(|r| r.id == e.id).and_then(|r| r.curve.as_ref()) else { continue };
        if curve.newton_polygon().unwrap().vertices().len() < 3 {
            excluded.push(e.id.as_str());
            continue;
        }
        checked += 1;
        let kyc = canonical_degree(curve);
        if kyc >= 0 {
            bad.push(format!("{}: {kyc}", e.id));
        }
    }
    let detail = format!("special K=4..7: {}; {checked} non-special curves, segment polygons excluded {excluded:?}{}", special.join(","), if bad.is_empty() { String::new() } else { format!("; not negative: {}", bad.join(", ")) });
    Outcome::new(bad.is_empty(), detail)
}

fn c9_edges() -> Outcome {
    let mut bad = Vec::new();
    for k in [4i64, 5] {
        let ec = edge_coefficients(k, 6).unwrap();
        let rows = &ec.rows;
        for r in rows {
            if ec.rec_a[r.n] != r.a || ec.rec_a_prime[r.n] != r.a_prime {
                bad.push(format!("K={k} n={}: recurrence", r.n));
            }
            if r.n <= 3 {
                let f = xi(k, r.n, XiKind::Int).unwrap();
                if f.coeff(r.m, 0) != qi(r.delta) {
                    bad.push(format!("K={k} n={}: x^M coefficient", r.n));
                }
            }
        }
        let a = |i: usize| rows[i].a.abs();
        let ap = |i: usize| rows[i].a_prime.abs();
        for j in 1..=3usize {
            if a(2 * j) != a(2 * j - 1) || a(2 * j) > qi(j as i64) {
                bad.push(format!("K={k}: |a_{}| = {}", 2 * j, a(2 * j)));
            }
        }
        for j in 0..=2usize {
            if ap(2 * j + 1) != ap(2 * j) || ap(2 * j) > qi(j as i64 + 1) {
                bad.push(format!("K={k}: |a'_{}| = {}", 2 * j + 1, ap(2 * j + 1)));
            }
        }
        for r in rows.iter().filter(|r| r.n >= 2) {
            if r.b.abs() != qi(fib(k, r.n - 1) + fib(k, r.n - 2)) {
                bad.push(format!("K={k}: |b_{}| = {}", r.n, r.b));
            }
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "K=4,5, n=0..6".into() } else { bad.join(", ") })
}

fn c10_parameter_space() -> Outcome {
    let mut notes = Vec::new();
    let p = SlopePair::from_ints((9, 4), (7, 2));
    let charts: Vec<String> = edge_rebasings(&p).unwrap().iter().map(|r| r.reduced.slopes().map_or("degenerate".into(), |s| s.to_string())).collect();
    let fixed = charts.iter().all(|c| *c == p.to_string());
    notes.push(format!("(9/4,7/2) charts {}", charts.join(" ")));
    let mut rebase = true;
    for t in [q(7, 2), qi(4), q(9, 2), q(11, 3), q(13, 2)] {
        let expect = SlopePair::new(q(5, 3), qi(2) + (&t - qi(3)).recip());
        let rs = edge_rebasings(&SlopePair::new(q(5, 2), t)).unwrap();
        let left = rs.iter().find(|r| r.edge == Edge::Left).and_then(|r| r.raw.clone());
        rebase &= left == Some(expect);
    }
    notes.push(format!("s=5/2 rebasing {}", if rebase { "ok" } else { "wrong" }));
    let mut round = true;
    for (w, sp) in [(WppWeights::new(8, 15, 43), SlopePair::from_ints((8, 5), (15, 4))), (WppWeights::new(5, 33, 49), SlopePair::from_ints((5, 3), (33, 10)))] {
        round &= wpp_of_slopes(&sp).map(|x| x.sorted()) == Some(w.sorted());
        round &= slopes_of_wpp(&w).unwrap().iter().any(|c| c.reduced.slopes() == Some(&sp));
    }
    notes.push(format!("WPP round trips {}", if round { "ok" } else { "wrong" }));
    Outcome::new(fixed && rebase && round, notes.join("; "))
}

fn c11_mds(cat: &Catalog) -> Outcome {
    let mut bad = Vec::new();
    let c = Diamond::one_minus_y();
    let mut certified: Vec<(i64, i64, i64, SlopePair)> = Vec::new();
    for k in [4i64, 5] {
        for n in 1..=3usize {
            let home = Diamond::family(k, n, TriangleKind::Integral).unwrap();
            let (m, nn) = (fib(k, n + 1), fib(k, n));
            let center = family_center(k, m, nn, TriangleKind::Integral);
            let cert = certify_mds(&center, &home, &c);
            if !cert.is_mds() || !cert.replay(&home, Some(&c)) {
                bad.push(format!("{} center {center}", home.label));
            }
            certified.push((k, m, nn, center));
        }
    }
    for sp in [SlopePair::from_ints((8, 5), (15, 4)), SlopePair::from_ints((5, 3), (33, 10))] {
        if !certify_with_catalog(&sp, cat, 18).0.is_mds() {
            bad.push(format!("{sp}"));
        }
    }
    // t = 3 has no point on the 1-y diamond (t >= s^2/(s-1) >= 4)
    let samples = [((2, 1), 4), ((8, 5), 5), ((3, 2), 5), ((5, 2), 5), ((7, 3), 5)];
    for (s, t) in samples {
        let sp = SlopePair::from_ints(s, (t, 1));
        match certify_integer_t(&sp) {
            MdsCertificate::Mds { evidence: MdsEvidence::DisjointCurve(d), .. } => {
                if !intersect(&d.class_c, &d.class_d).unwrap().is_zero() || !d.intersection.is_zero() {
                    bad.push(format!("{sp}: C.D nonzero"));
                }
            }
            other => bad.push(format!("{sp}: {other:?}")),
        }
    }
    let home = Diamond::family(4, 3, TriangleKind::Integral).unwrap();
    let center = family_center(4, 4, 3, TriangleKind::Integral);
    let mut fired = 0;
    for (ds, dt) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        let sp = SlopePair::new(&center.s + q(ds, 200), &center.t + q(dt, 40));
        if diamond_contains(&home, &sp) && non_mds_screen(4, 4, 3, TriangleKind::Integral, &sp).fired() {
            fired += 1;
        }
    }
    if fired != 4 {
        bad.push(format!("screen fired on {fired}/4 off-axis points"));
    }
    for (k, m, nn, sp) in &certified {
        if non_mds_screen(*k, *m, *nn, TriangleKind::Integral, sp).fired() {
            bad.push(format!("screen contradicts MDS at {sp}"));
        }
    }
    let detail = if bad.is_empty() { "6 family centers, 2 WPP points, 5 integer-t points with C.D = 0 (t in {4,5}); screen fired 4/4".into() } else { bad.join("; ") };
    Outcome::new(bad.is_empty(), detail)
}

fn c12_properties() -> Outcome {
    let mut failed = Vec::new();
    let runner = |cases: u32| TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let results = [
        ("pick", runner(1000).run(&props::point_sets(), |p| props::pick_identity(&p)).err().map(|e| e.to_string())),
        ("order", runner(200).run(&(props::vanishing_poly(), props::vanishing_poly()), |(f, g)| props::order_is_additive(&f, &g)).err().map(|e| e.to_string())),
        ("minkowski", runner(200).run(&(props::poly(), props::poly()), |(f, g)| props::newton_polygon_of_product(&f, &g)).err().map(|e| e.to_string())),
        ("rank+nullity", runner(200).run(&props::matrix(), |m| props::rank_plus_nullity(&m)).err().map(|e| e.to_string())),
        ("kernel exactness", runner(200).run(&props::matrix(), |m| props::modular_agrees(&m)).err().map(|e| e.to_string())),
        ("reduction", runner(200).run(&props::slope_pair(), |(s, t)| props::reduction_is_idempotent(&s, &t)).err().map(|e| e.to_string())),
        ("wpp", runner(200).run(&props::weights(), |(a, b, c)| props::wpp_round_trip(a, b, c)).err().map(|e| e.to_string())),
    ];
    for (name, r) in &results {
        if let Some(e) = r {
            failed.push(format!("{name}: {e}"));
        }
    }
    Outcome::new(failed.is_empty(), if failed.is_empty() { "7 suites, Pick over 1000 polygons".into() } else { failed.join("; ") })
}

fn attr<'a>(tag: &'a str, name: &str) -> Option<&'a str> {
    let key = format!("{name}=\"");
    let start = tag.find(&key)? + key.len();
    Some(&tag[start..start + tag[start..].find('"')?])
}

/// `IT_4(2,1)` -> `(4, 2, 1)`.
fn parse_family_id(id: &str) -> Option<(i64, i64, i64)> {
    let rest = id.get(3..)?;
    let (k, mn) = rest.split_once('(')?;
    let (m, n) = mn.trim_end_matches(')').split_once(',')?;
    Some((k.parse().ok()?, m.parse().ok()?, n.parse().ok()?))
}

fn c13_map(cat: &Catalog) -> Outcome {
    let spec = MapSpec::new((qi(1), qi(3)), (q(5, 2), qi(6)));
    let a = render_map(&spec, cat).unwrap();
    let b = render_map(&spec, cat).unwrap();
    let mut bad = Vec::new();
    if a != b {
        bad.push("output differs between runs".to_string());
    }
    let mut n = 0;
    for tag in a.split('<').filter(|t| t.starts_with("g class=\"diamond\"")) {
        let (Some(id), Some(fam), Some(center)) = (attr(tag, "data-id"), attr(tag, "data-family"), attr(tag, "data-center")) else {
            bad.push(format!("malformed group {tag}"));
            continue;
        };
        let Some((k, m, nn)) = parse_family_id(id) else { continue };
        let (s, t) = center.split_once(',').unwrap();
        let got: (Rational, Rational) = (parse_rational(s).unwrap(), parse_rational(t).unwrap());
        let want = match fam {
            "IT" => (q(k * nn, m + nn), qi(k)),
            "RT" => (q(m + nn, m), qi(k)),
            _ => continue,
        };
        n += 1;
        if got != want {
            bad.push(format!("{id}: {center}"));
        }
    }
    if n == 0 {
        bad.push("no family diamonds".into());
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { format!("{n} family diamonds at exact centers, {} bytes, deterministic", a.len()) } else { bad.join("; ") })
}

#[test]
fn acceptance_criteria() {
    let cat = Catalog::bundled();
    let t = Instant::now();
    let reports = verify_catalog(&cat, false);
    let failing: Vec<String> = reports.iter().filter(|r| !r.pass && !r.skipped).map(|r| r.to_string()).collect();
    let skipped: Vec<&str> = reports.iter().filter(|r| r.skipped).map(|r| r.id.as_str()).collect();
    emit(&format!(
        "{} [gate] catalog ({} reports, skipped {:?}; {:.1}s){}",
        if failing.is_empty() { "PASS" } else { "FAIL" },
        reports.len(),
        skipped,
        t.elapsed().as_secs_f64(),
        if failing.is_empty() { String::new() } else { format!(": {}", failing.join("; ")) }
    ));

    let results = [
        run(1, "family solutions", "exact", c1_family_solutions),
        run(2, "recurrence identities", "exact", c2_recurrences),
        run(3, "support and order", "exact", c3_support_order),
        run(4, "special family", "exact", c4_special),
        run(5, "new non-special family", "exact", c5_new_family),
        run(6, "table of sporadic curves", "exact", || c6_sporadic(&cat, &reports)),
        run(7, "Cox degrees of the specials", "exact", c7_km_degrees),
        run(8, "canonical degree", "exact", || c8_canonical_degree(&cat, &reports)),
        run(9, "edge coefficients", "exact", c9_edges),
        run(10, "parameter space", "exact", c10_parameter_space),
        run(11, "MDS certificates", "exact", || c11_mds(&cat)),
        run(12, "property suites", "exact", c12_properties),
        run(13, "map", "exact", || c13_map(&cat)),
    ];
    for (n, why) in KNOWN {
        if results.iter().any(|&(m, p)| m == *n && !p) {
            emit(&format!("     [{n:>2}] known deviation: {why}"));
        }
    }
    assert!(failing.is_empty(), "catalog gate failed");
    let unexpected: Vec<u8> = results.iter().filter(|&&(n, p)| !p && !KNOWN.iter().any(|(k, _)| *k == n)).map(|&(n, _)| n).collect();
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}

#[test]
#[ignore = "m = 99 entry, minutes of work"]
fn deep_table_row() {
    let cat = Catalog::bundled();
    let r = catalog_verify(cat.get("sporadic-m99").unwrap());
    emit(&format!("{} [deep] {r}", if r.pass { "PASS" } else { "FAIL" }));
    assert!(r.pass, "{r}");
}
