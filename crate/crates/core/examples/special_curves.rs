//! The special family Upsilon_K and the new non-special family.
//!
//!     cargo run --release --example special_curves [K_MAX]

use negcurves::exactmath::Frac;
use negcurves::families::{new_nonspecial, special_upsilon};
use negcurves::mds::{new_family_even_orthogonality, new_family_odd_check};
use negcurves::negcurve::canonical_degree_and_genus;

fn main() {
    let k_max: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    for k in 4..=k_max {
        let t = std::time::Instant::now();
        let sc = special_upsilon(k).expect("special curve");
        let (kyc, pa) = canonical_degree_and_genus(&sc.poly).unwrap();
        println!(
            "Upsilon_{k}: {} m={} deficiency {} C^2={} K.C={kyc} genus {pa} {} terms ({:.1?})",
            sc.weights,
            sc.m,
            sc.deficiency,
            Frac(&sc.self_intersection),
            sc.poly.len(),
            t.elapsed()
        );
    }
    for k in 4..=k_max + 2 {
        let nf = new_nonspecial(k).expect("new family curve");
        let c = &nf.candidate;
        println!(
            "new K={k}: m={} slopes {} lattice points {} C^2={} kernel dim {}",
            nf.m,
            nf.triangle.slopes,
            nf.lattice_points,
            Frac(&c.self_intersection),
            c.kernel_dim
        );
        if k % 2 == 0 {
            println!("  C.D = {}", Frac(&new_family_even_orthogonality(k).unwrap()));
        } else {
            let odd = new_family_odd_check(k).unwrap();
            println!("  C1.C2 = {} (closes the argument: {})", Frac(&odd.c1_c2), odd.argument_closes);
        }
    }
}
