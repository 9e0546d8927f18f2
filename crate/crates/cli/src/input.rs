use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde_json::Value;

/// Malformed or inconsistent input; maps to exit status 2.
#[derive(Debug)]
pub struct InputError {
    pub file: Option<PathBuf>,
    pub detail: String,
}

impl InputError {
    pub fn new(file: Option<&Path>, detail: impl Into<String>) -> Self {
        InputError { file: file.map(Path::to_path_buf), detail: detail.into() }
    }

    pub fn arg(detail: impl Into<String>) -> Self {
        InputError { file: None, detail: detail.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.file {
            Some(p) => write!(f, "{}: {}", p.display(), self.detail),
            None => f.write_str(&self.detail),
        }
    }
}

impl std::error::Error for InputError {}

/// What a JSON document holds, judged by its top-level keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Distribution,
    Counts,
    Joint,
    Relation,
    Fixture,
    Space,
}

impl DocKind {
    fn detect(value: &Value) -> Option<Self> {
        let obj = value.as_object()?;
        let has = |k: &str| obj.contains_key(k);
        Some(if has("counts") {
            DocKind::Counts
        } else if has("reference") {
            DocKind::Fixture
        } else if has("given") {
            DocKind::Relation
        } else if has("rows") {
            DocKind::Joint
        } else if has("values") {
            DocKind::Distribution
        } else if has("labels") {
            DocKind::Space
        } else {
            return None;
        })
    }
}

pub struct Document {
    pub path: PathBuf,
    pub kind: DocKind,
    pub value: Value,
}

impl Document {
    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text = fs::read_to_string(path).map_err(|e| InputError::new(Some(path), format!("cannot read: {e}")))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| InputError::new(Some(path), format!("invalid JSON: {e}")))?;
        let kind = DocKind::detect(&value).ok_or_else(|| {
            InputError::new(
                Some(path),
                "unrecognized document: expected one of the fields `values`, `counts`, `rows`, `given`, `reference`, `labels`",
            )
        })?;
        Ok(Document { path: path.to_path_buf(), kind, value })
    }

    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, InputError> {
        parse_value(&self.path, &self.value)
    }

    pub fn expect<T: DeserializeOwned>(&self, kind: DocKind) -> Result<T, InputError> {
        if self.kind != kind {
            return Err(InputError::new(Some(&self.path), format!("expected a {kind:?} document, found {:?}", self.kind)));
        }
        self.parse()
    }

    pub fn error(&self, detail: impl fmt::Display) -> InputError {
        InputError::new(Some(&self.path), detail.to_string())
    }
}

/// Deserializes with the failing field path in the diagnostic.
fn parse_value<T: DeserializeOwned>(path: &Path, value: &Value) -> Result<T, InputError> {
    let mut track = serde_path_to_error::Track::new();
    let de = serde_path_to_error::Deserializer::new(value, &mut track);
    T::deserialize(de).map_err(|e| {
        let field = track.path().to_string();
        if field == "." || field.is_empty() {
            InputError::new(Some(path), e.to_string())
        } else {
            InputError::new(Some(path), format!("field `{field}`: {e}"))
        }
    })
}

/// Parses `COLSxROWS`.
pub fn parse_grid(text: &str) -> Result<(u32, u32), String> {
    let (c, r) = text.split_once(['x', 'X']).ok_or_else(|| format!("grid `{text}` must look like 64x64"))?;
    let cols = c.trim().parse().map_err(|_| format!("grid columns `{c}` are not a positive integer"))?;
    let rows = r.trim().parse().map_err(|_| format!("grid rows `{r}` are not a positive integer"))?;
    Ok((cols, rows))
}

pub fn parse_tolerance(text: &str) -> Result<f64, String> {
    let t: f64 = text.parse().map_err(|_| format!("tolerance `{text}` is not a number"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("tolerance must be positive, got {text}"))
    }
}
