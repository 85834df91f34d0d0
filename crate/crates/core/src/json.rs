use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Deserializes and rejects top-level fields that do not survive a
/// round trip. Unit variants of internally tagged enums silently accept
/// extra fields, which `deny_unknown_fields` alone does not catch.
pub(crate) fn from_str_strict<T: Serialize + DeserializeOwned>(s: &str, what: &str) -> Result<T> {
    let bad = |e: String| Error::usage(format!("bad {what}: {e}"));
    let raw: Value = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
    let parsed: T = serde_json::from_value(raw.clone()).map_err(|e| bad(e.to_string()))?;
    let known = serde_json::to_value(&parsed).map_err(|e| bad(e.to_string()))?;
    if let (Some(raw), Some(known)) = (raw.as_object(), known.as_object()) {
        if let Some(k) = raw.keys().find(|k| !known.contains_key(*k)) {
            return Err(bad(format!("unknown field `{k}`")));
        }
    }
    Ok(parsed)
}
