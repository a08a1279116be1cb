//! The (s,t) plane: fundamental domain, edge rebasings and weighted
//! projective planes.
//!
//!     cargo run --release --example parameter_space

use negcurves::exactmath::q;
use negcurves::trispace::{edge_rebasings, slopes_of_wpp, to_fundamental_domain, wpp_of_slopes, SlopePair, WppWeights};

fn main() {
    let points = [
        SlopePair::from_ints((9, 4), (7, 2)),
        SlopePair::from_ints((8, 5), (15, 4)),
        SlopePair::from_ints((5, 3), (33, 10)),
        SlopePair::from_ints((5, 2), (7, 2)),
        SlopePair::from_ints((-3, 1), (1, 2)),
    ];
    for p in &points {
        let red = to_fundamental_domain(p).expect("distinct slopes");
        println!("{p}");
        match red.slopes() {
            Some(sp) => println!("  fundamental domain: {sp} after {:?}", red.ops()),
            None => println!("  degenerate orbit: {red:?}"),
        }
        for r in edge_rebasings(p).unwrap() {
            let raw = r.raw.map(|x| x.to_string()).unwrap_or_else(|| "vertical edge".into());
            let red = r.reduced.slopes().map(|x| x.to_string()).unwrap_or_else(|| "degenerate".into());
            println!("  {:?} edge horizontal: {raw} -> {red}", r.edge);
        }
        match wpp_of_slopes(p) {
            Some(w) => println!("  surface {w}"),
            None => println!("  not a weighted projective plane"),
        }
    }

    // s = 5/2: the left edge rebases to (5/3, 2 + 1/(t-3))
    for t in [q(7, 2), q(4, 1), q(9, 2), q(11, 3), q(13, 2)] {
        let p = SlopePair::new(q(5, 2), t);
        let left = &edge_rebasings(&p).unwrap()[1];
        println!("{p} -> left edge {}", left.raw.as_ref().unwrap());
    }

    for w in [WppWeights::new(8, 15, 43), WppWeights::new(5, 33, 49), WppWeights::new(7, 9, 10)] {
        let charts: Vec<String> = slopes_of_wpp(&w)
            .unwrap()
            .iter()
            .filter_map(|c| c.reduced.slopes().map(|s| format!("{s} (edge of weight {})", c.horizontal)))
            .collect();
        println!("{w}: {}", charts.join(", "));
    }
}
