//! The scalar weight-3 Siegel form attached to the symmetric cube of 11a1,
//! printed as JSON.

use siegel_lift::modform::{CurveData, Gl2Source};
use siegel_lift::predictor::{predict_siegel, Construction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let eta = Gl2Source::Curve(CurveData::new([0, -1, 1, 0, 0], Some(11))?);
    let prediction = predict_siegel(&Construction::sym3(eta)?, 13)?;
    println!("{}", serde_json::to_string_pretty(&prediction)?);
    Ok(())
}
