//! Symmetric cube of Ramanujan's Delta from the bundled eigenvalue table:
//! level 1, vector-valued of type (33, 11).

use std::path::Path;

use siegel_lift::modform::{read_eigenfile, Gl2Source};
use siegel_lift::predictor::{predict_siegel, Construction};

fn main() -> siegel_lift::Result<()> {
    let table = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/delta.eig");
    let delta = Gl2Source::Newform(read_eigenfile(&table)?);
    let pred = predict_siegel(&Construction::sym3(delta)?, 30)?;

    println!("{}: level {}", pred.label, pred.level);
    if let Some(w) = pred.arch.classification.siegel {
        println!("{w}");
    }
    for (p, spin) in &pred.spin_factors {
        println!("{p:>4}  {spin}");
    }
    let v = &pred.verification;
    println!("{} identities checked, all ok: {}", v.entries.len(), v.is_ok());
    Ok(())
}
