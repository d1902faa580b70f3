//! TOML text format for integer programs and variable maps.
//!
//! ```toml
//! [[variables]]
//! name = "y1"
//! lower = 0
//! upper = 3
//!
//! [objective]
//! constant = 0.0
//! terms = [{ vars = ["y1"], coeff = 1.0 }]
//!
//! [[constraints]]
//! name = "at_least_two"
//! lhs = { terms = { y1 = 1.0 } }
//! relation = ">="
//! rhs = 2.0
//! penalty = 10.0       # optional
//! hardness = "hard"    # optional, "soft" by default
//! ```

use serde::{Deserialize, Serialize};

use super::ilp::{Constraint, IlpModel, IntVar, Objective, VarMap};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct VarEntry {
    name: String,
    #[serde(default)]
    lower: Option<i64>,
    #[serde(default)]
    upper: Option<i64>,
}

#[derive(Serialize, Deserialize)]
struct IlpFile {
    #[serde(default = "minimize")]
    sense: String,
    #[serde(default)]
    variables: Vec<VarEntry>,
    #[serde(default)]
    objective: Objective,
    #[serde(default)]
    constraints: Vec<Constraint>,
}

fn minimize() -> String {
    "minimize".into()
}

pub fn ilp_from_toml(text: &str) -> Result<IlpModel> {
    let file: IlpFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.sense != "minimize" {
        return Err(Error::Parse(format!(
            "unsupported sense `{}`; only minimize is supported",
            file.sense
        )));
    }
    let mut variables = Vec::with_capacity(file.variables.len());
    for v in file.variables {
        match (v.lower, v.upper) {
            (Some(lower), Some(upper)) => variables.push(IntVar {
                name: v.name,
                lower,
                upper,
            }),
            _ => return Err(Error::Unbounded(v.name)),
        }
    }
    let model = IlpModel {
        variables,
        objective: file.objective,
        constraints: file.constraints,
    };
    model.validate()?;
    Ok(model)
}

pub fn ilp_to_toml(model: &IlpModel) -> String {
    let file = IlpFile {
        sense: minimize(),
        variables: model
            .variables
            .iter()
            .map(|v| VarEntry {
                name: v.name.clone(),
                lower: Some(v.lower),
                upper: Some(v.upper),
            })
            .collect(),
        objective: model.objective.clone(),
        constraints: model.constraints.clone(),
    };
    toml::to_string(&file).expect("ilp model serializes")
}

pub fn varmap_to_toml(map: &VarMap) -> String {
    toml::to_string(map).expect("varmap serializes")
}

pub fn varmap_from_toml(text: &str) -> Result<VarMap> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{compile, CompileConfig};

    const EXAMPLE: &str = r#"
[[variables]]
name = "y1"
lower = 0
upper = 3

[objective]
terms = [{ vars = ["y1"], coeff = 1.0 }]

[[constraints]]
name = "at_least_two"
lhs = { terms = { y1 = 1.0 } }
relation = ">="
rhs = 2.0
"#;

    #[test]
    fn parses_example() {
        let m = ilp_from_toml(EXAMPLE).unwrap();
        assert_eq!(m.variables, vec![IntVar::new("y1", 0, 3)]);
        assert_eq!(m.constraints[0].name, "at_least_two");
        assert_eq!(ilp_from_toml(&ilp_to_toml(&m)).unwrap(), m);
    }

    #[test]
    fn missing_bound_is_unbounded() {
        let text = "[[variables]]\nname = \"z\"\nlower = 0\n";
        assert_eq!(ilp_from_toml(text), Err(Error::Unbounded("z".into())));
    }

    #[test]
    fn undeclared_variable() {
        let text = EXAMPLE.replace("{ y1 = 1.0 } }", "{ y9 = 1.0 } }");
        assert_eq!(ilp_from_toml(&text), Err(Error::UnknownVariable("y9".into())));
    }

    #[test]
    fn varmap_round_trip() {
        let m = ilp_from_toml(EXAMPLE).unwrap();
        let out = compile(&m, &CompileConfig::default()).unwrap();
        let text = varmap_to_toml(&out.varmap);
        assert_eq!(varmap_from_toml(&text).unwrap(), out.varmap);
    }
}
