//! JSON documents describing dynamical systems.
//!
//! A document carries a group (preset name or explicit tables), an algebra
//! (block sizes or an explicit spanning set), an inner action given by
//! implementing unitaries (for all elements or just a generating set), and
//! optional tolerances. Build errors are annotated with the document path
//! they originate from, so a bad matrix in `action.unitaries.3` says so.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::FdAlgebra;
use crate::dynamics::DynamicalSystem;
use crate::group::{preset_group, validate_irrep_table, FiniteGroup, Irrep, IrrepTable};
use crate::mat::Mat;
use crate::{Error, Result, Tolerances};

/// Names of the bundled example systems.
pub const BUILTIN_NAMES: [&str; 5] = [
    "s3-m2",
    "z2-diag-m2",
    "z2xz2-pauli-m2",
    "c2-trivial-z2",
    "c2-swap-z2",
];

/// A complete serializable description of a dynamical system.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub group: GroupDoc,
    pub algebra: AlgebraDoc,
    pub action: ActionDoc,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// Group: either a preset name or explicit tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    Preset {
        preset: String,
    },
    Custom {
        mult: Vec<Vec<usize>>,
        #[serde(default)]
        generators: Vec<usize>,
        irreps: Vec<IrrepDoc>,
    },
}

/// One irreducible representation: a label and one matrix per group element.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepDoc {
    pub label: String,
    pub matrices: Vec<Mat>,
}

/// Algebra: block sizes for the standard embedding, or an explicit span.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraDoc {
    Blocks {
        blocks: Vec<usize>,
    },
    Explicit {
        ambient: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<Mat>,
        basis: Vec<Mat>,
    },
}

/// Action: inner, implemented by unitaries keyed by group element index.
/// The map may cover all elements or only a generating set.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub unitaries: BTreeMap<String, Mat>,
}

impl SystemDocument {
    /// Parse a document from JSON text.
    pub fn from_json(text: &str) -> Result<SystemDocument> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput {
            what: "document".into(),
            detail: e.to_string(),
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Build and validate the described system.
    pub fn build(&self) -> Result<DynamicalSystem> {
        let tol = self.tolerances.clone();
        tol.validate().map_err(|e| e.at("tolerances"))?;
        let table = Arc::new(self.build_table(&tol)?);
        let algebra = self.build_algebra(&tol)?;
        let group_order = table.group.order();
        let mut map: BTreeMap<usize, Mat> = BTreeMap::new();
        if self.action.kind != "inner" {
            return Err(Error::InvalidInput {
                what: "action type".into(),
                detail: format!("only \"inner\" is supported, got {:?}", self.action.kind),
            }
            .at("action.type"));
        }
        for (key, mat) in &self.action.unitaries {
            let index: usize = key.parse().map_err(|_| {
                Error::InvalidInput {
                    what: "element index".into(),
                    detail: format!("key {key:?} is not a group element index"),
                }
                .at(format!("action.unitaries.{key}"))
            })?;
            if index >= group_order {
                return Err(Error::InvalidInput {
                    what: "element index".into(),
                    detail: format!("index {index} out of range for group order {group_order}"),
                }
                .at(format!("action.unitaries.{key}")));
            }
            map.insert(index, mat.clone());
        }
        let built = if map.len() == group_order {
            let unitaries: Vec<Mat> = (0..group_order).map(|g| map[&g].clone()).collect();
            DynamicalSystem::new(table, algebra, unitaries, &tol)
        } else {
            DynamicalSystem::from_generator_map(table, algebra, &map, &tol)
        };
        built.map_err(|e| e.at("action"))
    }

    fn build_table(&self, tol: &Tolerances) -> Result<IrrepTable> {
        match &self.group {
            GroupDoc::Preset { preset } => preset_group(preset).map_err(|e| e.at("group.preset")),
            GroupDoc::Custom {
                mult,
                generators,
                irreps,
            } => {
                let generators = if generators.is_empty() {
                    // Default: every element generates.
                    (0..mult.len()).collect()
                } else {
                    generators.clone()
                };
                let group = FiniteGroup::from_mult_table(mult.clone(), generators)
                    .map_err(|e| e.at("group.mult"))?;
                let irreps = irreps
                    .iter()
                    .map(|doc| {
                        let dim = doc.matrices.first().map_or(0, Mat::rows);
                        Irrep {
                            label: doc.label.clone(),
                            dim,
                            matrices: doc.matrices.clone(),
                        }
                    })
                    .collect();
                let table = IrrepTable { group, irreps };
                validate_irrep_table(&table, tol)
                    .into_result("irrep table")
                    .map_err(|e| e.at("group"))?;
                Ok(table)
            }
        }
    }

    fn build_algebra(&self, tol: &Tolerances) -> Result<FdAlgebra> {
        match &self.algebra {
            AlgebraDoc::Blocks { blocks } => {
                FdAlgebra::blocks(blocks, tol).map_err(|e| e.at("algebra.blocks"))
            }
            AlgebraDoc::Explicit {
                ambient,
                unit,
                basis,
            } => {
                let unit = unit.clone().unwrap_or_else(|| Mat::identity(*ambient));
                FdAlgebra::from_span(*ambient, unit, basis, tol).map_err(|e| e.at("algebra"))
            }
        }
    }
}

/// One of the bundled example systems, by name.
pub fn builtin(name: &str) -> Result<SystemDocument> {
    let sigma_x = Mat::from_rows_re(&[&[0.0, 1.0], &[1.0, 0.0]]);
    let sigma_z = Mat::from_rows_re(&[&[1.0, 0.0], &[0.0, -1.0]]);
    let doc = match name {
        "s3-m2" => {
            let table = preset_group("S3")?;
            let std = table.by_label("std").expect("preset has std");
            SystemDocument {
                name: Some("s3-m2".into()),
                description: Some(
                    "S3 acting on the full 2x2 matrix algebra through its two-dimensional \
                     irreducible representation"
                        .into(),
                ),
                group: GroupDoc::Preset {
                    preset: "S3".into(),
                },
                algebra: AlgebraDoc::Blocks { blocks: vec![2] },
                action: ActionDoc {
                    kind: "inner".into(),
                    unitaries: BTreeMap::from([
                        ("1".into(), std.mat(1).clone()),
                        ("4".into(), std.mat(4).clone()),
                    ]),
                },
                tolerances: Tolerances::default(),
            }
        }
        "z2-diag-m2" => SystemDocument {
            name: Some("z2-diag-m2".into()),
            description: Some(
                "Z2 acting on the full 2x2 matrix algebra by conjugation with diag(1, -1)".into(),
            ),
            group: GroupDoc::Preset {
                preset: "Z2".into(),
            },
            algebra: AlgebraDoc::Blocks { blocks: vec![2] },
            action: ActionDoc {
                kind: "inner".into(),
                unitaries: BTreeMap::from([("1".into(), sigma_z.clone())]),
            },
            tolerances: Tolerances::default(),
        },
        "z2xz2-pauli-m2" => SystemDocument {
            name: Some("z2xz2-pauli-m2".into()),
            description: Some(
                "The Klein four-group acting on the full 2x2 matrix algebra through the Pauli \
                 unitaries"
                    .into(),
            ),
            group: GroupDoc::Preset {
                preset: "Z2xZ2".into(),
            },
            algebra: AlgebraDoc::Blocks { blocks: vec![2] },
            action: ActionDoc {
                kind: "inner".into(),
                unitaries: BTreeMap::from([
                    ("1".into(), sigma_x.clone()),
                    ("2".into(), sigma_z.clone()),
                ]),
            },
            tolerances: Tolerances::default(),
        },
        "c2-trivial-z2" => SystemDocument {
            name: Some("c2-trivial-z2".into()),
            description: Some("Z2 acting trivially on the diagonal algebra C + C".into()),
            group: GroupDoc::Preset {
                preset: "Z2".into(),
            },
            algebra: AlgebraDoc::Blocks {
                blocks: vec![1, 1],
            },
            action: ActionDoc {
                kind: "inner".into(),
                unitaries: BTreeMap::from([("1".into(), Mat::identity(2))]),
            },
            tolerances: Tolerances::default(),
        },
        "c2-swap-z2" => SystemDocument {
            name: Some("c2-swap-z2".into()),
            description: Some(
                "Z2 swapping the two summands of the diagonal algebra C + C".into(),
            ),
            group: GroupDoc::Preset {
                preset: "Z2".into(),
            },
            algebra: AlgebraDoc::Blocks {
                blocks: vec![1, 1],
            },
            action: ActionDoc {
                kind: "inner".into(),
                unitaries: BTreeMap::from([("1".into(), sigma_x.clone())]),
            },
            tolerances: Tolerances::default(),
        },
        other => {
            return Err(Error::UnknownPreset {
                name: other.to_string(),
            })
        }
    };
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{arveson_spectra, SpectrumSet};

    #[test]
    fn builtins_build_and_roundtrip() {
        for name in BUILTIN_NAMES {
            let doc = builtin(name).unwrap();
            let text = doc.to_json_pretty();
            let parsed = SystemDocument::from_json(&text).unwrap();
            let sys = parsed.build().unwrap();
            assert!(sys.algebra().dim() > 0, "{name}");
            // Serialization is stable through a round trip.
            assert_eq!(text, parsed.to_json_pretty(), "{name}");
        }
    }

    #[test]
    fn builtin_spectra_match_direct_construction() {
        let sys = builtin("s3-m2").unwrap().build().unwrap();
        let arveson = arveson_spectra(&sys).unwrap();
        assert_eq!(
            arveson.spectrum,
            SpectrumSet::from_labels(["triv", "sgn", "std"])
        );
        assert_eq!(
            arveson.essential,
            SpectrumSet::from_labels(["triv", "sgn"])
        );
    }

    #[test]
    fn unknown_builtin_is_rejected() {
        assert!(matches!(
            builtin("s4-m3"),
            Err(Error::UnknownPreset { .. })
        ));
    }

    #[test]
    fn out_of_range_action_key_is_located() {
        let mut doc = builtin("z2-diag-m2").unwrap();
        let m = doc.action.unitaries["1"].clone();
        doc.action.unitaries.insert("7".into(), m);
        match doc.build() {
            Err(Error::Located { path, .. }) => {
                assert_eq!(path, "action.unitaries.7");
            }
            other => panic!("expected located error, got {other:?}"),
        }
    }

    #[test]
    fn non_numeric_action_key_is_located() {
        let mut doc = builtin("z2-diag-m2").unwrap();
        let m = doc.action.unitaries["1"].clone();
        doc.action.unitaries.insert("one".into(), m);
        match doc.build() {
            Err(Error::Located { path, .. }) => {
                assert_eq!(path, "action.unitaries.one");
            }
            other => panic!("expected located error, got {other:?}"),
        }
    }

    #[test]
    fn non_inner_action_is_rejected() {
        let mut doc = builtin("z2-diag-m2").unwrap();
        doc.action.kind = "outer".into();
        match doc.build() {
            Err(Error::Located { path, source }) => {
                assert_eq!(path, "action.type");
                assert!(matches!(*source, Error::InvalidInput { .. }));
            }
            other => panic!("expected located error, got {other:?}"),
        }
    }

    #[test]
    fn non_unitary_implementer_is_located_at_action() {
        let mut doc = builtin("z2-diag-m2").unwrap();
        doc.action
            .unitaries
            .insert("1".into(), Mat::from_rows_re(&[&[2.0, 0.0], &[0.0, 1.0]]));
        match doc.build() {
            Err(Error::Located { path, source }) => {
                assert_eq!(path, "action");
                assert!(matches!(*source, Error::NotUnitary { .. }));
            }
            other => panic!("expected located error, got {other:?}"),
        }
    }

    #[test]
    fn bad_preset_name_is_located() {
        let mut doc = builtin("z2-diag-m2").unwrap();
        doc.group = GroupDoc::Preset {
            preset: "A5".into(),
        };
        match doc.build() {
            Err(Error::Located { path, source }) => {
                assert_eq!(path, "group.preset");
                assert!(matches!(*source, Error::UnknownPreset { .. }));
            }
            other => panic!("expected located error, got {other:?}"),
        }
    }

    #[test]
    fn custom_group_document_builds() {
        // Z2 written out longhand, with its two characters.
        let one = Mat::identity(1);
        let minus = one.scale(crate::C64::new(-1.0, 0.0));
        let doc = SystemDocument {
            name: None,
            description: None,
            group: GroupDoc::Custom {
                mult: vec![vec![0, 1], vec![1, 0]],
                generators: vec![1],
                irreps: vec![
                    IrrepDoc {
                        label: "triv".into(),
                        matrices: vec![one.clone(), one.clone()],
                    },
                    IrrepDoc {
                        label: "sgn".into(),
                        matrices: vec![one.clone(), minus],
                    },
                ],
            },
            algebra: AlgebraDoc::Blocks { blocks: vec![2] },
            action: ActionDoc {
                kind: "inner".into(),
                unitaries: BTreeMap::from([(
                    "1".into(),
                    Mat::from_rows_re(&[&[1.0, 0.0], &[0.0, -1.0]]),
                )]),
            },
            tolerances: Tolerances::default(),
        };
        let sys = doc.build().unwrap();
        let arveson = arveson_spectra(&sys).unwrap();
        assert_eq!(
            arveson.spectrum,
            SpectrumSet::from_labels(["triv", "sgn"])
        );
    }

    #[test]
    fn corrupt_custom_table_is_located_at_group() {
        let one = Mat::identity(1);
        let doc = SystemDocument {
            name: None,
            description: None,
            group: GroupDoc::Custom {
                // 1*1 = 1 breaks associativity/inverses for Z2.
                mult: vec![vec![0, 1], vec![1, 1]],
                generators: vec![1],
                irreps: vec![IrrepDoc {
                    label: "triv".into(),
                    matrices: vec![one.clone(), one.clone()],
                }],
            },
            algebra: AlgebraDoc::Blocks { blocks: vec![2] },
            action: ActionDoc {
                kind: "inner".into(),
                unitaries: BTreeMap::from([("1".into(), Mat::identity(2))]),
            },
            tolerances: Tolerances::default(),
        };
        match doc.build() {
            Err(Error::Located { path, .. }) => {
                assert!(path.starts_with("group"), "{path}");
            }
            other => panic!("expected located error, got {other:?}"),
        }
    }

    #[test]
    fn explicit_algebra_document_builds() {
        // The diagonal algebra in M_2 given by an explicit basis.
        let doc_text = r#"{
            "group": { "preset": "Z2" },
            "algebra": {
                "ambient": 2,
                "basis": [
                    [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
                    [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
                ]
            },
            "action": { "type": "inner", "unitaries": { "1": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]] } }
        }"#;
        let doc = SystemDocument::from_json(doc_text).unwrap();
        let sys = doc.build().unwrap();
        assert_eq!(sys.algebra().block_dims(), &[1, 1]);
        assert_eq!(sys.fixed().dim(), 1);
    }

    #[test]
    fn bad_tolerances_are_located() {
        let mut doc = builtin("c2-swap-z2").unwrap();
        doc.tolerances.rank_low = 0.5;
        doc.tolerances.rank_high = 1e-9;
        match doc.build() {
            Err(Error::Located { path, .. }) => assert_eq!(path, "tolerances"),
            other => panic!("expected located error, got {other:?}"),
        }
    }
}
