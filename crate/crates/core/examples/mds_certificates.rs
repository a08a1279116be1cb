//! Mori Dream Space certificates: meeting diamonds, the curve D for integral
//! t, and the non-MDS screen.
//!
//!     cargo run --release --example mds_certificates

use negcurves::cli::{certify_with_catalog, Catalog};
use negcurves::exactmath::{q, qi, Frac};
use negcurves::families::{fib, TriangleKind};
use negcurves::mds::{certify_integer_t, certify_mds, diamond_contains, diamond_section, family_center, non_mds_screen, Diamond, Line};
use negcurves::trispace::SlopePair;

fn main() {
    let c = Diamond::one_minus_y();
    for k in [4, 5] {
        for n in 1..=3 {
            let home = Diamond::family(k, n, TriangleKind::Integral).unwrap();
            let center = family_center(k, fib(k, n + 1), fib(k, n), TriangleKind::Integral);
            let cert = certify_mds(&center, &home, &c);
            println!("{} at {center}: MDS {} replay {}", home.label, cert.is_mds(), cert.replay(&home, Some(&c)));
        }
        let kq = qi(k);
        let along: Vec<String> = (0..=3)
            .flat_map(|n| [TriangleKind::Integral, TriangleKind::Rational].map(|kind| (n, kind)))
            .filter_map(|(n, kind)| Diamond::family(k, n, kind).ok())
            .map(|d| format!("{} {}", d.label, diamond_section(&d, Line::Horizontal(&kq)).iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        println!("t={k}:\n  {}", along.join("\n  "));
    }

    for (s, t) in [(q(8, 5), qi(5)), (q(3, 2), qi(5)), (q(5, 2), qi(5)), (q(7, 3), qi(5)), (q(5, 3), qi(6))] {
        let sp = SlopePair::new(s, t);
        match certify_integer_t(&sp) {
            negcurves::mds::MdsCertificate::Mds { evidence: negcurves::mds::MdsEvidence::DisjointCurve(d), .. } => {
                println!("{sp}: D of order {} columns {:?} C.D={}", d.order, d.column_counts, Frac(&d.intersection))
            }
            other => println!("{sp}: {other:?}"),
        }
    }

    let cat = Catalog::bundled();
    for sp in [SlopePair::from_ints((8, 5), (15, 4)), SlopePair::from_ints((5, 3), (33, 10))] {
        let (cert, via) = certify_with_catalog(&sp, &cat, 18);
        println!("{sp}: MDS {} via {}", cert.is_mds(), via.unwrap_or_default());
    }

    // IT_4(4,3) has N = 3 > K - 2: off-axis points of its diamond
    let home = Diamond::family(4, 3, TriangleKind::Integral).unwrap();
    let center = family_center(4, 4, 3, TriangleKind::Integral);
    for (ds, dt) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        let sp = SlopePair::new(&center.s + q(ds, 200), &center.t + q(dt, 40));
        if diamond_contains(&home, &sp) {
            println!("{sp}: {}", serde_json::to_string(&non_mds_screen(4, 4, 3, TriangleKind::Integral, &sp)).unwrap());
        } else {
            println!("{sp}: outside the diamond");
        }
    }
}
