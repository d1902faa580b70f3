//! TOML text format for pairwise networks.
//!
//! ```toml
//! nodes = ["C", "E"]
//!
//! [[unary]]
//! node = "C"
//! phi = [0.0, 1.0]          # phi_0, phi_1
//!
//! [[cliques]]
//! nodes = ["C", "E"]
//! phi = [0.3, 0.9, 2.6, 5.0] # (0,0), (0,1), (1,0), (1,1)
//! ```

use serde::{Deserialize, Serialize};

use super::network::MarkovNetwork;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct UnaryEntry {
    node: String,
    phi: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct CliqueEntry {
    nodes: Vec<String>,
    phi: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    nodes: Vec<String>,
    #[serde(default)]
    unary: Vec<UnaryEntry>,
    #[serde(default)]
    cliques: Vec<CliqueEntry>,
}

pub fn network_from_toml(text: &str) -> Result<MarkovNetwork> {
    let file: NetworkFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut net = MarkovNetwork::new();
    for n in file.nodes {
        net.add_node(n)?;
    }
    let lookup = |net: &MarkovNetwork, name: &str| {
        net.node(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    };
    for u in file.unary {
        let i = lookup(&net, &u.node)?;
        net.add_unary(i, u.phi[0], u.phi[1])?;
    }
    for c in file.cliques {
        let ids = c
            .nodes
            .iter()
            .map(|n| lookup(&net, n))
            .collect::<Result<Vec<_>>>()?;
        net.add_clique(&ids, &c.phi)?;
    }
    Ok(net)
}

pub fn network_to_toml(net: &MarkovNetwork) -> String {
    let nodes = net.nodes();
    let file = NetworkFile {
        nodes: nodes.to_vec(),
        unary: net
            .unary()
            .iter()
            .map(|(&i, &(p0, p1))| UnaryEntry {
                node: nodes[i].clone(),
                phi: [p0, p1],
            })
            .collect(),
        cliques: net
            .edges()
            .iter()
            .map(|(&(i, j), phi)| CliqueEntry {
                nodes: vec![nodes[i].clone(), nodes[j].clone()],
                phi: <[f64; 4]>::from(*phi).to_vec(),
            })
            .collect(),
    };
    toml::to_string(&file).expect("network serializes")
}
