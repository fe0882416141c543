use std::fmt::Write;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Tsv,
    #[default]
    Markdown,
    Latex,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(Self::Tsv),
            "markdown" | "md" => Ok(Self::Markdown),
            "latex" | "tex" => Ok(Self::Latex),
            other => Err(Error::Inconsistent(format!("unknown output format {other:?}"))),
        }
    }
}

/// A column header in plain and LaTeX spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub plain: &'static str,
    pub latex: &'static str,
}

pub const fn col(plain: &'static str, latex: &'static str) -> Column {
    Column { plain, latex }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub caption: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(caption: impl Into<String>, columns: Vec<Column>) -> Self {
        Self { caption: caption.into(), columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Tsv => self.tsv(),
            OutputFormat::Markdown => self.markdown(),
            OutputFormat::Latex => self.latex(),
        }
    }

    fn tsv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.plain).collect();
        writeln!(out, "{}", header.join("\t")).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", row.join("\t")).unwrap();
        }
        out
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.plain).collect();
        writeln!(out, "| {} |", header.join(" | ")).unwrap();
        writeln!(out, "|{}", "---|".repeat(self.columns.len())).unwrap();
        for row in &self.rows {
            writeln!(out, "| {} |", row.join(" | ")).unwrap();
        }
        out
    }

    fn latex(&self) -> String {
        let mut out = String::new();
        writeln!(out, "\\begin{{tabular}}{{|{}}}", "l|".repeat(self.columns.len())).unwrap();
        writeln!(out, "\\hline").unwrap();
        let header: Vec<&str> = self.columns.iter().map(|c| c.latex).collect();
        writeln!(out, "{} \\\\", header.join(" & ")).unwrap();
        writeln!(out, "\\hline").unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| latex_cell(c)).collect();
            writeln!(out, "{} \\\\", cells.join(" & ")).unwrap();
        }
        writeln!(out, "\\hline").unwrap();
        writeln!(out, "\\end{{tabular}}").unwrap();
        writeln!(out, "% {}", self.caption).unwrap();
        out
    }
}

fn latex_cell(cell: &str) -> String {
    if let Some(inner) = cell.strip_prefix('(').and_then(|c| c.strip_suffix(')')) {
        return format!("({})", inner.replace(',', ", "));
    }
    cell.replace('_', "\\_")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("sample", vec![col("#", "\\#"), col("weights", "weights")]);
        t.push(vec!["1".into(), "(1,1,1,3)".into()]);
        t
    }

    #[test]
    fn tsv_has_one_header() {
        let out = sample().render(OutputFormat::Tsv);
        assert_eq!(out, "#\tweights\n1\t(1,1,1,3)\n");
    }

    #[test]
    fn markdown_and_latex() {
        assert!(sample().render(OutputFormat::Markdown).starts_with("| # | weights |\n|---|---|\n"));
        let tex = sample().render(OutputFormat::Latex);
        assert!(tex.contains("1 & (1, 1, 1, 3) \\\\"));
        assert!(tex.starts_with("\\begin{tabular}{|l|l|}"));
    }

    #[test]
    fn parse_formats() {
        assert_eq!("TSV".parse::<OutputFormat>().unwrap(), OutputFormat::Tsv);
        assert!("csv".parse::<OutputFormat>().is_err());
    }
}
