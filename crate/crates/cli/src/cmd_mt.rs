use std::path::PathBuf;

use clap::Subcommand;
use serde::Deserialize;
use serde_json::json;
use symkit::mtcat::{catalog, compose, tensor, GroupObject, MtMorphism};

use crate::CliError;

#[derive(clap::Args)]
pub struct MtCmd {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Compose a chain of morphisms left to right, printing each step.
    Compose {
        /// JSON file { "morphisms": [entry, ...] }; an entry is either a
        /// morphism or { "catalog": name, "group": {..} }.
        #[arg(long)]
        chain: PathBuf,
    },
    /// Monoidal product of two morphisms.
    Tensor {
        /// JSON file { "x": morphism, "y": morphism }.
        #[arg(long)]
        input: PathBuf,
    },
    /// The universal morphisms attached to a group.
    Catalog {
        /// JSON file with the group object; or use --sl.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Shortcut: the special linear group of this size.
        #[arg(long)]
        sl: Option<i64>,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChainEntry {
    Catalog { catalog: String, group: GroupObject },
    Explicit(MtMorphism),
}

#[derive(Deserialize)]
struct ChainInput {
    morphisms: Vec<ChainEntry>,
}

#[derive(Deserialize)]
struct TensorInput {
    x: MtMorphism,
    y: MtMorphism,
}

fn resolve_entry(entry: ChainEntry) -> Result<MtMorphism, CliError> {
    match entry {
        ChainEntry::Explicit(m) => Ok(m),
        ChainEntry::Catalog {
            catalog: name,
            group,
        } => {
            let cat = catalog(&group);
            let index = match name.as_str() {
                "identity" | "cotangent" => 0,
                "implosion_right" => 1,
                "implosion_left" => 2,
                "contraction" => 3,
                other => {
                    return Err(CliError::schema(format!(
                        "unknown catalog morphism '{other}'"
                    )))
                }
            };
            Ok(cat
                .into_iter()
                .nth(index)
                .expect("catalog has four entries"))
        }
    }
}

fn morphism_json(m: &MtMorphism) -> serde_json::Value {
    serde_json::to_value(m).expect("morphism serializes")
}

impl MtCmd {
    pub fn run(self) -> Result<serde_json::Value, CliError> {
        match self.action {
            Action::Compose { chain } => {
                let input: ChainInput = crate::read_json(&chain)?;
                let mut entries = input.morphisms.into_iter();
                let first = entries
                    .next()
                    .ok_or_else(|| CliError::schema("empty chain"))?;
                let mut acc = resolve_entry(first)?;
                let mut steps = vec![json!({
                    "label": acc.label,
                    "dimension": acc.complex_dimension,
                    "extra_actions": acc.extra_actions.iter().map(|g| g.name.clone()).collect::<Vec<_>>(),
                })];
                for entry in entries {
                    let next = resolve_entry(entry)?;
                    acc = compose(&acc, &next)?;
                    steps.push(json!({
                        "label": acc.label,
                        "dimension": acc.complex_dimension,
                        "extra_actions": acc.extra_actions.iter().map(|g| g.name.clone()).collect::<Vec<_>>(),
                    }));
                }
                Ok(json!({ "steps": steps, "result": morphism_json(&acc) }))
            }
            Action::Tensor { input } => {
                let w: TensorInput = crate::read_json(&input)?;
                Ok(morphism_json(&tensor(&w.x, &w.y)))
            }
            Action::Catalog { group, sl } => {
                let g = match (group, sl) {
                    (Some(path), None) => crate::read_json(&path)?,
                    (None, Some(n)) => {
                        if n < 2 {
                            return Err(CliError::schema("--sl needs n >= 2"));
                        }
                        GroupObject::special_linear(n)
                    }
                    _ => return Err(CliError::schema("specify exactly one of --group, --sl")),
                };
                let cat = catalog(&g);
                Ok(json!({
                    "group": g,
                    "morphisms": cat.iter().map(morphism_json).collect::<Vec<_>>(),
                }))
            }
        }
    }
}
