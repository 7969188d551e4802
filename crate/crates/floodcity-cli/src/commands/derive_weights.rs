//! `floodcity derive-weights`: weighted row totals and normalized weights
//! from a rating table, with published-total mismatches flagged instead of
//! silently reconciled.

use floodcity::genome::ComponentId;
use floodcity::weights::{
    derive_totals, WeightScheme, ASPECT_NAMES, ASPECT_SCHEME_TOTALS,
};

use crate::config::{load_rating_table_file, RatingTableFile};
use crate::error::{CliResult, ConfigContext};
use crate::DeriveWeightsArgs;

/// Derived totals further than this from a published total are flagged.
const FLAG_TOLERANCE: f64 = 1e-3;

pub fn execute(args: DeriveWeightsArgs) -> CliResult<()> {
    let (file, source) = match &args.table {
        Some(path) => (load_rating_table_file(path)?, path.display().to_string()),
        None => (builtin_reference_file(), "built-in reference table".into()),
    };
    print!("{}", render(&file, &source)?);
    Ok(())
}

/// The rating table behind the built-in aspect scheme, with its published
/// totals attached.
fn builtin_reference_file() -> RatingTableFile {
    let table = floodcity::weights::reference_rating_table();
    RatingTableFile {
        name: Some("aspect".into()),
        aspect_weights: None,
        ratings: ComponentId::ALL
            .iter()
            .map(|k| table.row(*k).to_vec())
            .collect(),
        published_totals: Some(ASPECT_SCHEME_TOTALS),
    }
}

fn render(file: &RatingTableFile, source: &str) -> CliResult<String> {
    let table = file.rating_table()?;
    let aspects = file.aspect_weights()?;
    let totals = derive_totals(&table, &aspects);
    let name = file.name.clone().unwrap_or_else(|| "derived".into());
    let scheme = WeightScheme::from_totals(name, totals).config_err()?;

    let mut out = format!("weight derivation from {source}\n");
    out.push_str("aspect weights:");
    for (name, w) in ASPECT_NAMES.iter().zip(aspects.get()) {
        out.push_str(&format!(" {name} {w}"));
    }
    out.push_str("\n\n");

    let has_published = file.published_totals.is_some();
    out.push_str(&format!(
        "{:<15} {:<18} {:>8}{}\n",
        "component",
        "ratings",
        "derived",
        if has_published { "  published" } else { "" }
    ));
    let mut flagged = Vec::new();
    for k in ComponentId::ALL {
        let ratings: Vec<String> = table.row(k).iter().map(|r| format!("{r}")).collect();
        let derived = totals[k.index()];
        out.push_str(&format!(
            "{:<15} {:<18} {:>8.3}",
            k.name(),
            ratings.join(" "),
            derived
        ));
        if let Some(published) = &file.published_totals {
            let published = published[k.index()];
            out.push_str(&format!("  {published:>9.3}"));
            if (derived - published).abs() > FLAG_TOLERANCE {
                out.push_str(&format!(
                    "  MISMATCH: table arithmetic differs from the published total by {:+.3}",
                    derived - published
                ));
                flagged.push(k.name());
            }
        }
        out.push('\n');
    }

    let sum: f64 = totals.iter().sum();
    out.push_str(&format!("\nsum of derived totals: {sum:.3}\n"));
    out.push_str("normalized weights (from derived totals):\n");
    for k in ComponentId::ALL {
        out.push_str(&format!("{:<15} {:.6}\n", k.name(), scheme.weight(k)));
    }
    if !flagged.is_empty() {
        out.push_str(&format!(
            "\nnote: published totals do not reproduce from the table arithmetic for: {}.\n\
             The built-in scheme keeps the published totals as canonical; the derivation above is shown unreconciled.\n",
            flagged.join(", ")
        ));
    }
    Ok(out)
}
