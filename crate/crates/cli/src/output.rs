use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::{Failure, Format};

pub type CsvWriter<'a> = Box<dyn FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()> + 'a>;

/// A report in all three formats; only the requested one is rendered.
pub struct Report<'a, T: Serialize> {
    pub json: &'a T,
    pub csv: Option<CsvWriter<'a>>,
    pub text: Box<dyn FnOnce() -> String + 'a>,
}

impl<T: Serialize> Report<'_, T> {
    pub fn render(self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self.json)? + "\n"),
            Format::Text => Ok((self.text)()),
            Format::Csv => {
                let write = self.csv.ok_or_else(|| {
                    Failure::Input("csv output is not available for this command".into())
                })?;
                let mut w = csv::Writer::from_writer(Vec::new());
                write(&mut w)?;
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                Ok(String::from_utf8(bytes)?)
            }
        }
    }
}

pub fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}
