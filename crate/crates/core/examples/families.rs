//! The xi families: solutions of (M+N)^2 = KMN + 1, the polynomials built by
//! the two recurrences, their triangles and edge coefficients.
//!
//!     cargo run --release --example families

use negcurves::families::{edge_coefficients, family_triangle, first_coincidence, mn_pairs, xi, TriangleKind, XiKind};
use negcurves::lattice::lattice_point_count;

fn main() {
    for k in 3..=6 {
        let pairs = mn_pairs(k, 5).unwrap();
        let shown: Vec<String> = pairs.iter().map(|p| format!("({},{})", p.m, p.nn)).collect();
        println!("K={k}: {}", shown.join(" "));
    }

    println!("xi_int(3,1) = {}", xi(3, 1, XiKind::Int).unwrap());
    println!("xi_rat(4,1) = {}", xi(4, 1, XiKind::Rat).unwrap());

    for k in [4, 5] {
        for n in 1..=3 {
            let p = &mn_pairs(k, n).unwrap()[n];
            let (m, nn) = (p.m, p.nn);
            for (kind, xk, name) in [(TriangleKind::Integral, XiKind::Int, "IT"), (TriangleKind::Rational, XiKind::Rat, "RT")] {
                let f = xi(k, n, xk).unwrap();
                let tri = family_triangle(k, m, nn, kind).unwrap();
                println!(
                    "{name}_{k}({m},{nn}): {} terms, order {}, triangle {tri} with {} lattice points",
                    f.len(),
                    f.vanishing_order().unwrap(),
                    lattice_point_count(&tri.polygon())
                );
            }
        }
    }

    let rows = edge_coefficients(4, 6).unwrap();
    println!("K=4 edge coefficients (n, a, a', b, b'):");
    for r in &rows.rows {
        println!("  {} {} {} {} {}", r.n, r.a, r.a_prime, r.b, r.b_prime);
    }

    if let Some(eq) = first_coincidence(4).unwrap() {
        println!("IT_3(1,1) and RT_4(2,1) agree up to a lattice map: {eq:?}");
    }
}
