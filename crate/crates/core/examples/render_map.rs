//! SVG maps of the (s,t) plane: the IT/RT diamonds around t = K and the
//! string of diamonds along s = 5/3.
//!
//!     cargo run --release --example render_map -- out_dir

use negcurves::cli::{render_map, Catalog, FamilyTag, MapSpec};
use negcurves::exactmath::{q, qi};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;
    let cat = Catalog::bundled();

    let spec = MapSpec::new((qi(1), qi(3)), (q(5, 2), qi(6)));
    let svg = render_map(&spec, &cat)?;
    std::fs::write(dir.join("families.svg"), &svg)?;
    println!("families.svg: {} diamonds", svg.matches("class=\"diamond\"").count());

    let mut strip = MapSpec::new((q(3, 2), q(11, 6)), (qi(3), q(9, 2)));
    strip.families = vec![FamilyTag::RT, FamilyTag::NewNonSpecial, FamilyTag::Sporadic];
    strip.k_max = 4;
    strip.sporadic_max_m = 18;
    let svg = render_map(&strip, &cat)?;
    std::fs::write(dir.join("strip.svg"), &svg)?;
    println!("strip.svg: {} diamonds", svg.matches("class=\"diamond\"").count());
    println!("spec: {}", serde_json::to_string(&strip)?);
    Ok(())
}
