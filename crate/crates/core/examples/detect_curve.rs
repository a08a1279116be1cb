//! Kernel search for a negative curve in a triangle, with its deficiency,
//! self-intersection and irreducibility verdict.
//!
//!     cargo run --release --example detect_curve -- "[(0,0),(1,0),(3,7)]" 8

use negcurves::cli::parse_triangle;
use negcurves::exactmath::Frac;
use negcurves::negcurve::{deficiency, detect_negative_curve, Detection};

fn main() {
    let mut args = std::env::args().skip(1);
    let cases: Vec<(String, usize)> = match (args.next(), args.next()) {
        (Some(t), Some(m)) => vec![(t, m.parse().expect("order"))],
        _ => vec![
            ("[(0,0),(1,0),(2,3)]".into(), 2),
            ("[(-4/13,0),(14/13,0),(68/13,18)]".into(), 5),
            ("3*[(0,0),(1,0),(3,7)]".into(), 8),
            ("2*[(0,0),(3,0),(6,10)]".into(), 11),
            ("[(0,0),(2,0),(3,2)]".into(), 2),
        ],
    };
    for (text, m) in cases {
        let tri = parse_triangle(&text).expect("triangle");
        let def = deficiency(&tri, m).unwrap();
        print!("{text} m={m} slopes {} deficiency {}: ", tri.slopes, def.value);
        match detect_negative_curve(&tri, m).unwrap() {
            Detection::Found(c) => {
                println!("C^2={} kernel dim {}", Frac(&c.self_intersection), c.kernel_dim);
                println!("  {}", c.poly);
                println!("  {:?}", c.irreducibility);
            }
            other => println!("{other:?}"),
        }
    }
}
