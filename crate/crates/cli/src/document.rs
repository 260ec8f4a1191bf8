use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convention {
    #[serde(rename = "row-vectors")]
    RowVectors,
    #[serde(rename = "columns-are-images")]
    ColumnsAreImages,
}

/// A labelled integer matrix. Entries are decimal strings so no consumer
/// loses precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub n: usize,
    pub subject: String,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub payload: Vec<Vec<String>>,
    pub convention: Convention,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl OutputDocument {
    pub fn new(n: usize, subject: &str, convention: Convention) -> Self {
        OutputDocument {
            n,
            subject: subject.to_string(),
            row_labels: Vec::new(),
            column_labels: Vec::new(),
            payload: Vec::new(),
            convention,
            note: None,
        }
    }

    pub fn rows(mut self, labels: Vec<String>) -> Self {
        self.row_labels = labels;
        self
    }

    pub fn columns(mut self, labels: Vec<String>) -> Self {
        self.column_labels = labels;
        self
    }

    pub fn payload(mut self, payload: Vec<Vec<String>>) -> Self {
        self.payload = payload;
        self
    }

    pub fn note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// Header `label,<column labels>`, then one line per row: its label and
    /// entries.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let header = std::iter::once("label").chain(self.column_labels.iter().map(String::as_str));
        w.write_record(header).expect("in-memory write");
        for (label, row) in self.row_labels.iter().zip(&self.payload) {
            w.write_record(std::iter::once(label).chain(row)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    /// Inverse of [`to_csv`](Self::to_csv) for the labels and payload.
    pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<String>, Vec<Vec<String>>), csv::Error> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut records = r.records();
        let header = match records.next() {
            Some(h) => h?,
            None => return Ok((Vec::new(), Vec::new(), Vec::new())),
        };
        let columns = header.iter().skip(1).map(str::to_string).collect();
        let mut rows = Vec::new();
        let mut payload = Vec::new();
        for rec in records {
            let rec = rec?;
            let mut fields = rec.iter().map(str::to_string);
            rows.push(fields.next().unwrap_or_default());
            payload.push(fields.collect());
        }
        Ok((rows, columns, payload))
    }
}
