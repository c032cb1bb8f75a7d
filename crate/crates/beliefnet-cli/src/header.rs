//! The `# key: value` block that opens every output this tool writes.
//! It records the fully resolved configuration, defaults included, so a
//! result file identifies the invocation that made it. Keys keep their
//! insertion order and may repeat.

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Header {
    pairs: Vec<(String, String)>,
}

impl Header {
    pub fn new(command: &str) -> Header {
        let mut h = Header::default();
        h.push("command", command);
        h
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        assert!(
            !key.contains([':', '\n']) && !value.contains('\n'),
            "header entries are single lines"
        );
        self.pairs.push((key.to_string(), value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.pairs
            .iter()
            .filter(move |(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.pairs {
            if v.is_empty() {
                out.push_str(&format!("# {k}:\n"));
            } else {
                out.push_str(&format!("# {k}: {v}\n"));
            }
        }
        out
    }

    /// Collects every `# key: value` line of `text`, wherever it sits.
    pub fn parse(text: &str) -> Header {
        let mut h = Header::default();
        for line in text.lines() {
            let Some(rest) = line.strip_prefix("# ") else {
                continue;
            };
            let Some((key, value)) = rest.split_once(':') else {
                continue;
            };
            h.pairs
                .push((key.trim().to_string(), value.trim().to_string()));
        }
        h
    }
}
