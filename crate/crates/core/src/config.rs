//! The configuration document: every numerical input, each with a source tag.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bookkeeping::HodgeData;
use crate::exact::parse_rational;
use crate::fujiki::{FujikiTable, Monomial};
use crate::quadspace::K3TwoConstants;
use crate::wgeom::GeometryInputs;
use crate::Rational;

/// The default configuration shipped with the crate.
pub const BUNDLED_CONFIG: &str = include_str!("../data/default_config.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed config document: {0}")]
    Json(String),
    #[error("{section}.{key}: {message}")]
    Value {
        section: String,
        key: String,
        message: String,
    },
    #[error("{section}.{key}: duplicate key")]
    Duplicate { section: String, key: String },
    #[error("{section}.{key}: unknown key")]
    Unknown { section: String, key: String },
    #[error("missing required keys: {}", .0.join(", "))]
    Missing(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConfigValue {
    Scalar(String),
    List(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEntry {
    pub key: String,
    pub value: ConfigValue,
    pub source: String,
}

/// Raw document as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub fujiki_table: Vec<ConfigEntry>,
    pub k3_2_constants: Vec<ConfigEntry>,
    pub w_geometry: Vec<ConfigEntry>,
    pub hodge_data: Vec<ConfigEntry>,
}

impl ConfigDocument {
    pub fn sections(&self) -> [(&'static str, &[ConfigEntry]); 4] {
        [
            ("fujiki_table", &self.fujiki_table),
            ("k3_2_constants", &self.k3_2_constants),
            ("w_geometry", &self.w_geometry),
            ("hodge_data", &self.hodge_data),
        ]
    }

    pub fn sections_mut(&mut self) -> [&mut Vec<ConfigEntry>; 4] {
        [
            &mut self.fujiki_table,
            &mut self.k3_2_constants,
            &mut self.w_geometry,
            &mut self.hodge_data,
        ]
    }
}

const FUJIKI_KEYS: [&str; 14] = [
    "C(1)",
    "C(qbar)",
    "C(qbar^2)",
    "C(qbar^3)",
    "C(c2)",
    "C(qbar*c2)",
    "C(qbar^2*c2)",
    "C(c2^2)",
    "C(qbar*c2^2)",
    "C(c4)",
    "C(qbar*c4)",
    "C(c2^3)",
    "C(c2*c4)",
    "C(c6)",
];

const K3_KEYS: [&str; 5] = [
    "fujiki_constant",
    "qbar_fujiki_constant",
    "qbar_square",
    "c2_over_qbar",
    "euler_characteristic",
];

const GEOMETRY_KEYS: [&str; 14] = [
    "kummer_lambda_square",
    "xi_square",
    "restriction_scale",
    "exceptional_square",
    "xi_restriction_delta",
    "xi_restriction_s",
    "delta_restriction_v",
    "v_curve_square",
    "v_delta_square",
    "k3_euler",
    "normal_c2_degree",
    "triple_point_count",
    "c2_degree_on_v",
    "c4_w_tau",
];

const HODGE_KEYS: [&str; 18] = [
    "kum3_hodge_row_0",
    "kum3_hodge_row_1",
    "kum3_hodge_row_2",
    "kum3_hodge_row_3",
    "kum3_hodge_row_4",
    "kum3_hodge_row_5",
    "kum3_hodge_row_6",
    "abelian_hodge_row_0",
    "abelian_hodge_row_1",
    "abelian_hodge_row_2",
    "hilb4_h4",
    "hilb4_b6",
    "chi_identity",
    "chi_odd",
    "chi_translation",
    "blowup_loci",
    "blowup_locus_h20",
    "k3_3_h4",
];

/// Validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub document: ConfigDocument,
    pub fujiki: FujikiTable,
    pub k3two: K3TwoConstants<Rational>,
    pub geometry: GeometryInputs,
    pub hodge: HodgeData,
}

struct Section<'a> {
    name: &'static str,
    entries: &'a [ConfigEntry],
}

impl Section<'_> {
    fn err(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError::Value {
            section: self.name.into(),
            key: key.into(),
            message: message.into(),
        }
    }

    fn find(&self, key: &str) -> &ConfigEntry {
        self.entries
            .iter()
            .find(|e| e.key == key)
            .expect("presence checked")
    }

    fn parse_one(&self, key: &str, text: &str) -> Result<Rational, ConfigError> {
        parse_rational(text).map_err(|e| self.err(key, e.to_string()))
    }

    fn scalar(&self, key: &str) -> Result<Rational, ConfigError> {
        match &self.find(key).value {
            ConfigValue::Scalar(s) => self.parse_one(key, s),
            ConfigValue::List(_) => Err(self.err(key, "expected a single value, found a list")),
        }
    }

    fn list(&self, key: &str) -> Result<Vec<Rational>, ConfigError> {
        match &self.find(key).value {
            ConfigValue::List(items) => items.iter().map(|s| self.parse_one(key, s)).collect(),
            ConfigValue::Scalar(_) => Err(self.err(key, "expected a list of values")),
        }
    }

    fn integer(&self, key: &str, value: &Rational) -> Result<i64, ConfigError> {
        use num_traits::ToPrimitive;
        if !value.is_integer() {
            return Err(self.err(key, format!("expected an integer, found {value}")));
        }
        value
            .to_integer()
            .to_i64()
            .ok_or_else(|| self.err(key, "integer out of range"))
    }

    fn int_scalar(&self, key: &str) -> Result<i64, ConfigError> {
        let v = self.scalar(key)?;
        self.integer(key, &v)
    }

    fn int_list(&self, key: &str) -> Result<Vec<i64>, ConfigError> {
        self.list(key)?
            .iter()
            .map(|v| self.integer(key, v))
            .collect()
    }

    fn int_array<const N: usize>(&self, key: &str) -> Result<[i64; N], ConfigError> {
        let v = self.int_list(key)?;
        v.try_into()
            .map_err(|v: Vec<i64>| self.err(key, format!("expected {N} values, found {}", v.len())))
    }
}

impl Config {
    pub fn bundled() -> Self {
        Self::from_json_str(BUNDLED_CONFIG).expect("bundled config is valid")
    }

    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let document: ConfigDocument =
            serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))?;
        Self::from_document(document)
    }

    pub fn from_document(document: ConfigDocument) -> Result<Self, ConfigError> {
        let mut missing = Vec::new();
        for ((name, entries), required) in document.sections().into_iter().zip([
            &FUJIKI_KEYS[..],
            &K3_KEYS[..],
            &GEOMETRY_KEYS[..],
            &HODGE_KEYS[..],
        ]) {
            let mut seen = BTreeSet::new();
            for e in entries {
                if !seen.insert(e.key.as_str()) {
                    return Err(ConfigError::Duplicate {
                        section: name.into(),
                        key: e.key.clone(),
                    });
                }
                // The Fujiki table may carry extra monomials.
                if name != "fujiki_table" && !required.contains(&e.key.as_str()) {
                    return Err(ConfigError::Unknown {
                        section: name.into(),
                        key: e.key.clone(),
                    });
                }
            }
            missing.extend(
                required
                    .iter()
                    .filter(|k| !seen.contains(*k))
                    .map(|k| format!("{name}.{k}")),
            );
        }
        if !missing.is_empty() {
            return Err(ConfigError::Missing(missing));
        }

        let f = Section {
            name: "fujiki_table",
            entries: &document.fujiki_table,
        };
        let mut table = Vec::new();
        for e in f.entries {
            let m: Monomial = e
                .key
                .parse()
                .map_err(|err: crate::fujiki::FujikiError| f.err(&e.key, err.to_string()))?;
            table.push((m, f.scalar(&e.key)?));
        }
        let fujiki = FujikiTable::new(table);

        let k = Section {
            name: "k3_2_constants",
            entries: &document.k3_2_constants,
        };
        let k3two = K3TwoConstants {
            fujiki: k.scalar("fujiki_constant")?,
            qbar_fujiki: k.scalar("qbar_fujiki_constant")?,
            qbar_square: k.scalar("qbar_square")?,
            c2_over_qbar: k.scalar("c2_over_qbar")?,
            euler: k.scalar("euler_characteristic")?,
        };

        let g = Section {
            name: "w_geometry",
            entries: &document.w_geometry,
        };
        let geometry = GeometryInputs {
            kummer_lambda_square: g.scalar("kummer_lambda_square")?,
            xi_square: g.scalar("xi_square")?,
            restriction_scale: g.scalar("restriction_scale")?,
            exceptional_square: g.scalar("exceptional_square")?,
            xi_restriction_delta: g.scalar("xi_restriction_delta")?,
            xi_restriction_s: g.scalar("xi_restriction_s")?,
            delta_restriction_v: g.scalar("delta_restriction_v")?,
            v_curve_square: g.scalar("v_curve_square")?,
            v_delta_square: g.scalar("v_delta_square")?,
            k3_euler: g.scalar("k3_euler")?,
            normal_c2_degree: g.scalar("normal_c2_degree")?,
            triple_point_count: g.scalar("triple_point_count")?,
            c2_degree_on_v: g.scalar("c2_degree_on_v")?,
            c4_w_tau: g.scalar("c4_w_tau")?,
        };

        let h = Section {
            name: "hodge_data",
            entries: &document.hodge_data,
        };
        let hodge = HodgeData {
            kum3_rows: (0..=6)
                .map(|i| h.int_list(&format!("kum3_hodge_row_{i}")))
                .collect::<Result<_, _>>()?,
            abelian_rows: (0..=2)
                .map(|i| h.int_list(&format!("abelian_hodge_row_{i}")))
                .collect::<Result<_, _>>()?,
            hilb4_h4: h.int_array("hilb4_h4")?,
            hilb4_b6: h.int_scalar("hilb4_b6")?,
            chi_identity: h.int_scalar("chi_identity")?,
            chi_odd: h.int_scalar("chi_odd")?,
            chi_translation: h.int_scalar("chi_translation")?,
            blowup_loci: h.int_scalar("blowup_loci")?,
            blowup_locus_h20: h.int_scalar("blowup_locus_h20")?,
            k3_3_h4: h.int_array("k3_3_h4")?,
        };
        for (degree, row) in hodge.kum3_rows.iter().enumerate() {
            if row.len() != degree + 1 {
                return Err(h.err(
                    &format!("kum3_hodge_row_{degree}"),
                    format!("expected {} entries, found {}", degree + 1, row.len()),
                ));
            }
        }
        for (degree, row) in hodge.abelian_rows.iter().enumerate() {
            if row.len() != degree + 1 {
                return Err(h.err(
                    &format!("abelian_hodge_row_{degree}"),
                    format!("expected {} entries, found {}", degree + 1, row.len()),
                ));
            }
        }

        Ok(Config {
            document,
            fujiki,
            k3two,
            geometry,
            hodge,
        })
    }

    /// Source tag of an entry, if present.
    pub fn source(&self, key: &str) -> Option<&str> {
        self.document
            .sections()
            .into_iter()
            .flat_map(|(_, entries)| entries.iter())
            .find(|e| e.key == key)
            .map(|e| e.source.as_str())
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Config, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Config::from_json_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn bundled_loads() {
        let c = Config::bundled();
        assert_eq!(c.fujiki.len(), 14);
        assert_eq!(c.fujiki.get(&"qbar".parse().unwrap()), Some(&int(132)));
        assert_eq!(c.hodge.kum3_rows[6][3], 372);
        assert_eq!(
            c.source("C(c6)"),
            Some("Fujiki constants of Kum3-type manifolds")
        );
    }

    fn edited(f: impl FnOnce(&mut ConfigDocument)) -> Result<Config, ConfigError> {
        let mut doc = Config::bundled().document;
        f(&mut doc);
        Config::from_document(doc)
    }

    #[test]
    fn bad_value_names_key() {
        let err =
            edited(|d| d.fujiki_table[1].value = ConfigValue::Scalar("1/0".into())).unwrap_err();
        assert!(
            err.to_string().starts_with("fujiki_table.C(qbar):"),
            "{err}"
        );
        let err =
            edited(|d| d.hodge_data[0].value = ConfigValue::List(vec!["1/2".into()])).unwrap_err();
        assert!(err.to_string().contains("kum3_hodge_row_0"), "{err}");
    }

    #[test]
    fn structural_errors() {
        let err = edited(|d| {
            d.w_geometry.pop();
        })
        .unwrap_err();
        assert_eq!(
            err,
            ConfigError::Missing(vec!["w_geometry.c4_w_tau".into()])
        );
        let err = edited(|d| {
            let e = d.k3_2_constants[0].clone();
            d.k3_2_constants.push(e);
        })
        .unwrap_err();
        assert!(matches!(err, ConfigError::Duplicate { .. }));
        let err = edited(|d| d.w_geometry[0].key = "typo".into()).unwrap_err();
        assert!(matches!(err, ConfigError::Unknown { .. }));
        assert!(matches!(
            Config::from_json_str("{"),
            Err(ConfigError::Json(_))
        ));
    }
}
