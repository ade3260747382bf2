//! Shared argument plumbing for the subcommands.

use std::path::PathBuf;

use serde::Deserialize;
use symkit::arrangement::Arrangement;
use symkit::rootsys::{Family, RootSystem, WeylElement};

use crate::CliError;

pub fn root_system(family: char, rank: usize) -> Result<RootSystem, CliError> {
    let family = Family::from_letter(family)
        .ok_or_else(|| CliError::schema(format!("unknown family letter '{family}'")))?;
    RootSystem::new(family, rank).map_err(CliError::from)
}

/// Arrangement given either by a Weyl family/rank or by a JSON file with
/// explicit integer normals.
#[derive(clap::Args, Debug)]
pub struct ArrangementInput {
    /// Dynkin family letter (A, B, C, G) for a Weyl arrangement.
    #[arg(long)]
    pub family: Option<char>,
    /// Rank of the Weyl arrangement.
    #[arg(long)]
    pub rank: Option<usize>,
    /// JSON file { "rank": r, "normals": [[..]] } for a general arrangement.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Deserialize)]
struct ArrangementWire {
    rank: usize,
    normals: Vec<Vec<i64>>,
}

impl ArrangementInput {
    /// The arrangement, plus the root system when one was named.
    pub fn resolve(&self) -> Result<(Option<RootSystem>, Arrangement), CliError> {
        match (self.family, self.rank, &self.input) {
            (Some(f), Some(r), None) => {
                let rs = root_system(f, r)?;
                let arr = Arrangement::weyl(&rs);
                Ok((Some(rs), arr))
            }
            (None, None, Some(path)) => {
                let wire: ArrangementWire = crate::read_json(path)?;
                let arr = Arrangement::from_normals(wire.rank, &wire.normals)?;
                Ok((None, arr))
            }
            _ => Err(CliError::schema(
                "specify either --family with --rank, or --input",
            )),
        }
    }

    /// Root system required (for the Weyl action).
    pub fn resolve_weyl(&self) -> Result<(RootSystem, Arrangement), CliError> {
        match self.resolve()? {
            (Some(rs), arr) => Ok((rs, arr)),
            (None, _) => Err(CliError::schema(
                "this operation needs a Weyl arrangement; use --family and --rank",
            )),
        }
    }
}

/// Weyl element from a word of 1-based simple-reflection indices.
pub fn element_from_word(rs: &RootSystem, word: &[usize]) -> Result<WeylElement, CliError> {
    let elems = rs.weyl_elements();
    let mut matrix = nalgebra::DMatrix::<i64>::identity(rs.rank(), rs.rank());
    for &letter in word {
        if letter == 0 || letter > rs.rank() {
            return Err(CliError::schema(format!(
                "reflection index {letter} outside 1..={}",
                rs.rank()
            )));
        }
        let gen = elems
            .iter()
            .find(|w| w.word == vec![letter - 1])
            .expect("simple reflections are enumerated");
        matrix *= &gen.matrix;
    }
    elems
        .into_iter()
        .find(|w| w.matrix == matrix)
        .ok_or_else(|| CliError::schema("word does not name a group element"))
}

/// 1-based index list to 0-based, validated against a length.
pub fn indices_zero_based(indices: &[usize], len: usize) -> Result<Vec<usize>, CliError> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > len {
                Err(CliError::schema(format!("index {i} outside 1..={len}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

pub fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&i| i + 1).collect()
}
