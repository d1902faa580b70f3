//! TOML text format shared by QUBO and Ising models.
//!
//! ```toml
//! format = "qubo"          # or "ising"
//! num_vars = 2
//! offset = 0.0
//! linear = [[0, 5.0], [1, 9.0]]
//! quadratic = [[0, 1, -6.0]]
//! labels = [[0, "x1"], [1, "x2"]]
//! ```
//!
//! Floats are written in shortest round-trip decimal form, so a model read
//! back from its own output is bit-identical.

use serde::{Deserialize, Serialize};

use super::{IsingModel, QuboModel, VarId};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    num_vars: usize,
    offset: f64,
    #[serde(default)]
    linear: Vec<(usize, f64)>,
    #[serde(default)]
    quadratic: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<(usize, String)>,
}

fn parse(text: &str, expected: &str) -> Result<ModelFile> {
    let file: ModelFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.format != expected {
        return Err(Error::Parse(format!(
            "expected format = \"{expected}\", found \"{}\"",
            file.format
        )));
    }
    Ok(file)
}

fn render(file: &ModelFile) -> String {
    toml::to_string(file).expect("model file serializes")
}

pub fn qubo_to_toml(model: &QuboModel) -> String {
    render(&ModelFile {
        format: "qubo".into(),
        num_vars: model.num_vars(),
        offset: model.offset(),
        linear: model.linear().iter().map(|(v, &a)| (v.0, a)).collect(),
        quadratic: model
            .quadratic()
            .iter()
            .map(|(&(i, j), &b)| (i.0, j.0, b))
            .collect(),
        labels: model
            .labels()
            .iter()
            .map(|(v, l)| (v.0, l.clone()))
            .collect(),
    })
}

pub fn qubo_from_toml(text: &str) -> Result<QuboModel> {
    let file = parse(text, "qubo")?;
    let mut model = QuboModel::new(file.num_vars);
    model.add_offset(file.offset);
    for (v, a) in file.linear {
        model.add_linear(VarId(v), a)?;
    }
    for (i, j, b) in file.quadratic {
        model.add_quadratic(VarId(i), VarId(j), b)?;
    }
    for (v, l) in file.labels {
        model.set_label(VarId(v), l)?;
    }
    Ok(model)
}

pub fn ising_to_toml(model: &IsingModel) -> String {
    render(&ModelFile {
        format: "ising".into(),
        num_vars: model.num_spins(),
        offset: model.offset(),
        linear: model.h().iter().map(|(v, &h)| (v.0, h)).collect(),
        quadratic: model.j().iter().map(|(&(a, b), &j)| (a.0, b.0, j)).collect(),
        labels: Vec::new(),
    })
}

pub fn ising_from_toml(text: &str) -> Result<IsingModel> {
    let file = parse(text, "ising")?;
    let mut model = IsingModel::new(file.num_vars);
    model.add_offset(file.offset);
    for (v, h) in file.linear {
        model.add_bias(VarId(v), h)?;
    }
    for (a, b, j) in file.quadratic {
        model.add_coupling(VarId(a), VarId(b), j)?;
    }
    Ok(model)
}
