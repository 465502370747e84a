use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: empty key or value")]
    Empty { line: usize },
    #[error("line {line}: key {key:?} repeats line {first}")]
    Duplicate { line: usize, key: String, first: usize },
}

/// One `key = value` entry; keys are normalized to lowercase with `-`.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

/// Flat key-value text: one `key = value` per line, `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut out: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((k, v)) = body.split_once('=') else {
            return Err(ConfigError::Syntax { line });
        };
        let key = k.trim().to_ascii_lowercase().replace('_', "-");
        let value = v.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Empty { line });
        }
        if let Some(prev) = out.iter().find(|e| e.key == key) {
            return Err(ConfigError::Duplicate { line, key, first: prev.line });
        }
        out.push(Entry { line, key, value });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_normalizes_keys() {
        let text = "# channel\nl = 0\n  s=-1   # spin\n\nMU_GRID = 0:1:11\nxi = -1\n";
        let e = parse_config(text).unwrap();
        let keys: Vec<_> = e.iter().map(|e| (e.key.as_str(), e.value.as_str())).collect();
        assert_eq!(keys, [("l", "0"), ("s", "-1"), ("mu-grid", "0:1:11"), ("xi", "-1")]);
        assert_eq!(e[2].line, 5);
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!(parse_config("l 0"), Err(ConfigError::Syntax { line: 1 }));
        assert_eq!(parse_config("\n = 3"), Err(ConfigError::Empty { line: 2 }));
        assert_eq!(parse_config("xi ="), Err(ConfigError::Empty { line: 1 }));
        assert!(matches!(parse_config("l = 0\nL = 1"), Err(ConfigError::Duplicate { line: 2, first: 1, .. })));
    }
}
