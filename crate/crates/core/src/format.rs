//! The `.mfd` manifold description format.
//!
//! A JSON document with three top-level keys:
//!
//! ```text
//! {
//!   "manifold": {
//!     "basic_classes": [{"coords": [..], "sw": 1}, ..],
//!     "chi": 24,
//!     "gram": [[..], ..],          // row-major
//!     "name": "k3",
//!     "sigma": -16,
//!     "simple_type": true
//!   },
//!   "schema_version": "1",
//!   "surfaces": [{"class": [..], "dual": [..], "genus": 2, "name": "S"}, ..]
//! }
//! ```
//!
//! Integers may be JSON numbers or decimal strings; the writer emits strings
//! for magnitudes beyond 2^53 - 1. `dual` is optional. The writer always
//! emits keys sorted and a fixed layout; canonical mode additionally sorts
//! basic classes and surfaces.

use std::fmt::{self, Write as _};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result, Violation};
use crate::lattice::{IntegerLattice, LatticeVector};
use crate::manifold::{BasicClass, FourManifold, SurfaceEmbedding};
use crate::matrix::IntMatrix;

pub const SCHEMA_VERSION: &str = "1";

/// Env var that switches the writer to canonical mode.
pub const CANONICAL_ENV: &str = "SWSURG_CANONICAL";

const MAX_SAFE_INTEGER: i64 = (1 << 53) - 1;

/// An integer that round-trips through JSON without loss.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl fmt::Display for JsonInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.abs() > BigInt::from(MAX_SAFE_INTEGER) {
            write!(f, "\"{}\"", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= MAX_SAFE_INTEGER => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
                Err(E::custom(format!(
                    "{v} is not an exact integer; write integers beyond 64 bits as decimal strings"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("'{v}' is not a decimal integer")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

fn vector(v: Vec<JsonInt>) -> LatticeVector {
    LatticeVector::new(v.into_iter().map(|x| x.0).collect())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    coords: Vec<JsonInt>,
    sw: JsonInt,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    basic_classes: Vec<RawClass>,
    chi: JsonInt,
    gram: Vec<Vec<JsonInt>>,
    name: String,
    sigma: JsonInt,
    simple_type: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    class: Vec<JsonInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<Vec<JsonInt>>,
    genus: u32,
    name: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    manifold: RawManifold,
    schema_version: String,
    #[serde(default)]
    surfaces: Vec<RawSurface>,
}

/// A manifold together with named embedded surfaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldFile {
    pub schema_version: String,
    pub manifold: FourManifold,
    pub surfaces: Vec<(String, SurfaceEmbedding)>,
}

fn small_int(x: &JsonInt, what: &str) -> std::result::Result<i64, String> {
    x.0.to_i64().ok_or_else(|| format!("{what} = {} does not fit in 64 bits", x.0))
}

impl ManifoldFile {
    pub fn new(manifold: FourManifold, surfaces: Vec<(String, SurfaceEmbedding)>) -> Self {
        ManifoldFile { schema_version: SCHEMA_VERSION.to_string(), manifold, surfaces }
    }

    pub fn surface(&self, name: &str) -> Option<&SurfaceEmbedding> {
        self.surfaces.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    /// Structural parse. Only symmetry and shape of the Gram matrix are
    /// enforced here; everything else is left to [`ManifoldFile::validate`].
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("unsupported schema_version '{}', expected '{SCHEMA_VERSION}'", raw.schema_version),
            });
        }
        let m = raw.manifold;
        let scalar = |x: &JsonInt, what: &str| {
            small_int(x, what).map_err(|message| Error::Parse { line: 0, column: 0, message })
        };
        let chi = scalar(&m.chi, "chi")?;
        let sigma = scalar(&m.sigma, "sigma")?;
        let n = m.gram.len();
        if let Some(bad) = m.gram.iter().position(|row| row.len() != n) {
            return Err(Error::Invalid(vec![Violation::error(
                "shape",
                format!("gram row {bad} has length {}, expected {n}", m.gram[bad].len()),
            )]));
        }
        let rows: Vec<Vec<BigInt>> = m.gram.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
        let lattice = IntegerLattice::new(IntMatrix::from_rows(&rows))?;
        let basic_classes = m
            .basic_classes
            .into_iter()
            .map(|c| BasicClass { k: vector(c.coords), sw: c.sw.0 })
            .collect();
        let manifold = FourManifold { name: m.name, chi, sigma, lattice, basic_classes, simple_type: m.simple_type };
        let surfaces = raw
            .surfaces
            .into_iter()
            .map(|s| (s.name, SurfaceEmbedding::new(vector(s.class), s.genus, s.dual.map(vector))))
            .collect();
        Ok(ManifoldFile { schema_version: raw.schema_version, manifold, surfaces })
    }

    /// Every violation in the manifold and its surfaces.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.manifold.validate();
        let mut names: Vec<&str> = Vec::new();
        for (name, s) in &self.surfaces {
            if names.contains(&name.as_str()) {
                out.push(Violation::error("duplicate-surface", format!("surface '{name}' is defined twice")));
            }
            names.push(name);
            for mut v in s.validate(&self.manifold.lattice) {
                v.message = format!("surface '{name}': {}", v.message);
                out.push(v);
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let errors: Vec<Violation> = self.validate().into_iter().filter(Violation::is_error).collect();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(errors))
        }
    }

    /// Reads and validates a file.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file = Self::parse(&text)?;
        file.ensure_valid()?;
        Ok(file)
    }

    /// Copy with basic classes and surfaces in canonical order.
    pub fn canonicalized(&self) -> Self {
        let mut out = self.clone();
        out.manifold.basic_classes.sort();
        out.surfaces.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Serialized text; `canonical` also sorts classes and surfaces.
    pub fn serialize(&self, canonical: bool) -> String {
        let file = if canonical { self.canonicalized() } else { self.clone() };
        file.render()
    }

    /// Serialization honouring the canonical-mode environment variable.
    pub fn serialize_default(&self) -> String {
        self.serialize(canonical_from_env())
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.serialize(true).as_bytes()))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("manifold file is always representable as JSON")
    }

    fn to_raw(&self) -> RawFile {
        let m = &self.manifold;
        RawFile {
            manifold: RawManifold {
                basic_classes: m
                    .basic_classes
                    .iter()
                    .map(|c| RawClass { coords: ints(c.k.coords()), sw: JsonInt(c.sw.clone()) })
                    .collect(),
                chi: JsonInt(m.chi.into()),
                gram: m.lattice.gram().to_rows().iter().map(|r| ints(r)).collect(),
                name: m.name.clone(),
                sigma: JsonInt(m.sigma.into()),
                simple_type: m.simple_type,
            },
            schema_version: self.schema_version.clone(),
            surfaces: self
                .surfaces
                .iter()
                .map(|(name, s)| RawSurface {
                    class: ints(s.surface_class.coords()),
                    dual: s.dual_class.as_ref().map(|d| ints(d.coords())),
                    genus: s.genus,
                    name: name.clone(),
                })
                .collect(),
        }
    }

    fn render(&self) -> String {
        let m = &self.manifold;
        let mut out = String::new();
        out.push_str("{\n  \"manifold\": {\n    \"basic_classes\": [");
        render_items(&mut out, m.basic_classes.iter().map(|c| {
            format!("{{\"coords\": {}, \"sw\": {}}}", inline(c.k.coords()), JsonInt(c.sw.clone()))
        }), 6);
        out.push_str("],\n");
        let _ = writeln!(out, "    \"chi\": {},", JsonInt(m.chi.into()));
        out.push_str("    \"gram\": [");
        render_items(&mut out, m.lattice.gram().to_rows().iter().map(|r| inline(r)), 6);
        out.push_str("],\n");
        let _ = writeln!(out, "    \"name\": {},", json_string(&m.name));
        let _ = writeln!(out, "    \"sigma\": {},", JsonInt(m.sigma.into()));
        let _ = writeln!(out, "    \"simple_type\": {}", m.simple_type);
        out.push_str("  },\n");
        let _ = writeln!(out, "  \"schema_version\": {},", json_string(&self.schema_version));
        out.push_str("  \"surfaces\": [");
        render_items(&mut out, self.surfaces.iter().map(|(name, s)| {
            let mut item = format!("{{\"class\": {}, ", inline(s.surface_class.coords()));
            if let Some(d) = &s.dual_class {
                let _ = write!(item, "\"dual\": {}, ", inline(d.coords()));
            }
            let _ = write!(item, "\"genus\": {}, \"name\": {}}}", s.genus, json_string(name));
            item
        }), 4);
        out.push_str("]\n}\n");
        out
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn inline(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| JsonInt(x.clone()).to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn render_items(out: &mut String, items: impl Iterator<Item = String>, indent: usize) {
    let items: Vec<String> = items.collect();
    if items.is_empty() {
        return;
    }
    let pad = " ".repeat(indent);
    out.push('\n');
    for (i, item) in items.iter().enumerate() {
        out.push_str(&pad);
        out.push_str(item);
        if i + 1 < items.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str(&" ".repeat(indent - 2));
}

pub fn canonical_from_env() -> bool {
    std::env::var(CANONICAL_ENV).map(|v| v == "1").unwrap_or(false)
}

/// Writes `bytes` to a sibling temp file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file_name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{file_name}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, bytes)?;
    if let Err(e) = std::fs::rename(&tmp, path) {
        let _ = std::fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}
