//! Key/value records rendered as text, TSV or JSON.

use std::fmt::Display;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `key v1 v2 ...`
    Text,
    /// `key<TAB>v1<TAB>v2 ...`
    Tsv,
    /// One JSON object; lists become arrays of strings.
    Json,
}

#[derive(Debug, Default)]
pub struct Record {
    fields: Vec<(String, Vec<String>, bool)>,
}

impl Record {
    pub fn scalar(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.fields
            .push((key.into(), vec![value.to_string()], false));
        self
    }

    pub fn list<T: Display>(
        &mut self,
        key: impl Into<String>,
        values: impl IntoIterator<Item = T>,
    ) -> &mut Self {
        let values = values.into_iter().map(|v| v.to_string()).collect();
        self.fields.push((key.into(), values, true));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text | Format::Tsv => {
                let sep = if format == Format::Text { " " } else { "\t" };
                let mut out = String::new();
                for (key, values, _) in &self.fields {
                    out.push_str(key);
                    for v in values {
                        out.push_str(sep);
                        out.push_str(v);
                    }
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut map = Map::new();
                for (key, values, is_list) in &self.fields {
                    let value = if *is_list {
                        Value::Array(values.iter().cloned().map(Value::String).collect())
                    } else {
                        Value::String(values[0].clone())
                    };
                    map.insert(key.clone(), value);
                }
                let mut out = serde_json::to_string_pretty(&Value::Object(map))
                    .expect("string map serializes");
                out.push('\n');
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Record {
        let mut r = Record::default();
        r.scalar("mabuchi", "5/11").list("witness", [1, -1]);
        r
    }

    #[test]
    fn renders_every_format() {
        let r = sample();
        assert_eq!(r.render(Format::Text), "mabuchi 5/11\nwitness 1 -1\n");
        assert_eq!(r.render(Format::Tsv), "mabuchi\t5/11\nwitness\t1\t-1\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["mabuchi"], "5/11");
        assert_eq!(v["witness"][1], "-1");
    }

    #[test]
    fn field_order_is_insertion_order() {
        let mut r = Record::default();
        r.scalar("z", 1).scalar("a", 2);
        let json = r.render(Format::Json);
        assert!(json.find("\"z\"").unwrap() < json.find("\"a\"").unwrap());
    }
}
