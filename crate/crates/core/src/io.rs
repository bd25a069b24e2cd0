//! JSON and text formats shared between the library and the CLI.

use crate::classify::{FamilyOrbit, IsoClassReport};
use crate::designs::{GroupedDesign, PointwiseFamily};
use crate::graphs::VertexLabel;
use crate::schemes::AssociationScheme;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// The pointwise-family JSON interchange format:
/// `{"n_points": n, "families": [[[int,...],...],...]}` where `families[g]`
/// lists the blocks of point `g`.
#[derive(Debug, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n_points: usize,
    pub families: Vec<Vec<Vec<usize>>>,
}

pub fn family_to_json(family: &PointwiseFamily) -> String {
    serde_json::to_string_pretty(&FamilyJson {
        n_points: family.n_points,
        families: family.owner_blocks.clone(),
    })
    .expect("family serializes")
}

pub fn family_from_json(text: &str) -> Result<PointwiseFamily> {
    let raw: FamilyJson =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("family JSON: {e}")))?;
    let mut owner_blocks = raw.families;
    for blocks in &mut owner_blocks {
        for block in blocks.iter_mut() {
            block.sort_unstable();
        }
    }
    Ok(PointwiseFamily {
        n_points: raw.n_points,
        owner_blocks,
        per_point_params: None,
    })
}

pub fn design_to_json(design: &GroupedDesign) -> String {
    serde_json::to_string_pretty(design).expect("design serializes")
}

pub fn design_from_json(text: &str) -> Result<GroupedDesign> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("grouped design JSON: {e}")))
}

/// Optional label sidecar for digraph01 files.
#[derive(Debug, Serialize, Deserialize)]
pub struct LabelsJson {
    pub labels: Vec<VertexLabel>,
}

pub fn labels_to_json(labels: &[VertexLabel]) -> String {
    serde_json::to_string_pretty(&LabelsJson {
        labels: labels.to_vec(),
    })
    .expect("labels serialize")
}

pub fn labels_from_json(text: &str) -> Result<Vec<VertexLabel>> {
    let raw: LabelsJson =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("labels JSON: {e}")))?;
    Ok(raw.labels)
}

pub fn hex_encode(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IsoClassJson {
    pub certificate: String,
    pub size: usize,
    pub members: Vec<usize>,
    pub aut_order: u64,
    pub aut_name: String,
    pub self_transpose: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IsoClassReportJson {
    pub total: usize,
    pub classes: Vec<IsoClassJson>,
    pub classes_with_transposes: usize,
}

pub fn iso_report_to_json(report: &IsoClassReport) -> String {
    let classes = report
        .classes
        .iter()
        .map(|c| IsoClassJson {
            certificate: hex_encode(&c.certificate),
            size: c.size(),
            members: c.members.clone(),
            aut_order: c.automorphisms.order() as u64,
            aut_name: c.aut_name.clone(),
            self_transpose: c.self_transpose,
        })
        .collect();
    serde_json::to_string_pretty(&IsoClassReportJson {
        total: report.total,
        classes,
        classes_with_transposes: report.classes_with_transposes,
    })
    .expect("report serializes")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitJson {
    pub representative: FamilyJson,
    pub size: usize,
    pub stabilizer_order: u64,
    pub stabilizer_name: String,
    /// stabilizer generators in image-list notation
    pub stabilizer_generators: Vec<Vec<usize>>,
}

pub fn orbits_to_json(orbits: &[FamilyOrbit]) -> String {
    let rows: Vec<OrbitJson> = orbits
        .iter()
        .map(|o| OrbitJson {
            representative: FamilyJson {
                n_points: o.representative.n_points,
                families: o.representative.owner_blocks.clone(),
            },
            size: o.size,
            stabilizer_order: o.stabilizer.order() as u64,
            stabilizer_name: o.stabilizer_name.clone(),
            stabilizer_generators: o
                .stabilizer
                .generators()
                .iter()
                .map(|p| p.images().to_vec())
                .collect(),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("orbits serialize")
}

/// Relation matrix as an integer text grid, one row per line.
pub fn relation_grid_to_text(scheme: &AssociationScheme) -> String {
    let n = scheme.points();
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| scheme.relation(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn relation_grid_from_text(text: &str) -> Result<(usize, Vec<u16>)> {
    let rows: Vec<Vec<u16>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split_whitespace()
                .map(|tok| {
                    tok.parse::<u16>()
                        .map_err(|_| Error::Format(format!("bad relation entry {tok:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    let mut flat = Vec::with_capacity(n * n);
    for row in rows {
        if row.len() != n {
            return Err(Error::Format(format!(
                "relation grid is not square: {} columns in a {n}-row grid",
                row.len()
            )));
        }
        flat.extend(row);
    }
    Ok((n, flat))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SchemeJson {
    pub points: usize,
    pub classes: usize,
    pub valencies: Vec<usize>,
    pub commutative: bool,
    pub relation_matrix: Vec<Vec<usize>>,
    /// `intersection_numbers[i][j][k]` over classes `0..=c`
    pub intersection_numbers: Vec<Vec<Vec<usize>>>,
}

pub fn scheme_to_json(scheme: &AssociationScheme) -> String {
    let n = scheme.points();
    let c = scheme.class_count();
    let relation_matrix = (0..n)
        .map(|i| (0..n).map(|j| scheme.relation(i, j)).collect())
        .collect();
    let intersection_numbers = (0..=c)
        .map(|i| {
            (0..=c)
                .map(|j| (0..=c).map(|k| scheme.intersection_number(i, j, k)).collect())
                .collect()
        })
        .collect();
    serde_json::to_string_pretty(&SchemeJson {
        points: n,
        classes: c,
        valencies: (1..=c).map(|k| scheme.valency(k)).collect(),
        commutative: scheme.is_commutative(),
        relation_matrix,
        intersection_numbers,
    })
    .expect("scheme serializes")
}
