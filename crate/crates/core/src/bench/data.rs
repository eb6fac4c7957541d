use std::path::Path;

use crate::error::{Error, Result};
use crate::preprocess::{EventRecord, Label, N_FEATURES};

/// The 30 physics columns of the ATLAS Higgs challenge files.
pub const FEATURE_COLUMNS: [&str; N_FEATURES] = [
    "DER_mass_MMC",
    "DER_mass_transverse_met_lep",
    "DER_mass_vis",
    "DER_pt_h",
    "DER_deltaeta_jet_jet",
    "DER_mass_jet_jet",
    "DER_prodeta_jet_jet",
    "DER_deltar_tau_lep",
    "DER_pt_tot",
    "DER_sum_pt",
    "DER_pt_ratio_lep_tau",
    "DER_met_phi_centrality",
    "DER_lep_eta_centrality",
    "PRI_tau_pt",
    "PRI_tau_eta",
    "PRI_tau_phi",
    "PRI_lep_pt",
    "PRI_lep_eta",
    "PRI_lep_phi",
    "PRI_met",
    "PRI_met_phi",
    "PRI_met_sumet",
    "PRI_jet_num",
    "PRI_jet_leading_pt",
    "PRI_jet_leading_eta",
    "PRI_jet_leading_phi",
    "PRI_jet_subleading_pt",
    "PRI_jet_subleading_eta",
    "PRI_jet_subleading_phi",
    "PRI_jet_all_pt",
];

/// Reads an ATLAS Higgs CSV (Kaggle 33-column or open-data 35-column
/// layout). Features keep the file's header order; `-999.0` is preserved.
pub fn load_atlas_csv(path: &Path) -> Result<Vec<EventRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_atlas(file, path)
}

pub(crate) fn read_atlas(reader: impl std::io::Read, path: &Path) -> Result<Vec<EventRecord>> {
    let csv_err = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let find =
        |name: &str| headers.iter().position(|h| h == name).ok_or_else(|| Error::MissingColumn(name.to_string()));
    let id_col = find("EventId")?;
    let weight_col = find("Weight")?;
    let label_col = find("Label")?;
    for name in FEATURE_COLUMNS {
        find(name)?;
    }
    let feature_cols: Vec<usize> =
        headers.iter().enumerate().filter(|(_, h)| FEATURE_COLUMNS.contains(h)).map(|(i, _)| i).collect();
    if feature_cols.len() != N_FEATURES {
        return Err(Error::Data(format!(
            "expected {N_FEATURES} distinct feature columns, found {}",
            feature_cols.len()
        )));
    }

    let mut events = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |col: usize| record.get(col).unwrap_or("");
        let row_err = |message: String| Error::Row { line, message };
        let number = |col: usize| -> Result<f64> {
            cell(col)
                .parse::<f64>()
                .map_err(|_| row_err(format!("column `{}` is not numeric: {:?}", &headers[col], cell(col))))
        };

        let event_id = cell(id_col)
            .parse::<u64>()
            .map_err(|_| row_err(format!("EventId is not an integer: {:?}", cell(id_col))))?;
        let mut features = [0.0; N_FEATURES];
        for (slot, &col) in features.iter_mut().zip(&feature_cols) {
            *slot = number(col)?;
        }
        let weight = number(weight_col)?;
        let label = match cell(label_col) {
            "s" => Label::Signal,
            "b" => Label::Background,
            other => return Err(row_err(format!("unknown label {other:?}"))),
        };
        events.push(EventRecord { event_id, features, label, weight });
    }
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header(extra_front: &[&str], extra_back: &[&str]) -> String {
        let mut cols: Vec<&str> = extra_front.to_vec();
        cols.extend(FEATURE_COLUMNS);
        cols.extend(extra_back);
        cols.join(",")
    }

    fn row(id: u64, first: &str, tail: &[&str]) -> String {
        let mut cells = vec![id.to_string(), first.to_string()];
        cells.extend((1..N_FEATURES).map(|i| format!("{}.5", i)));
        cells.extend(tail.iter().map(|s| s.to_string()));
        cells.join(",")
    }

    fn parse(text: &str) -> Result<Vec<EventRecord>> {
        read_atlas(text.as_bytes(), Path::new("fixture.csv"))
    }

    #[test]
    fn kaggle_layout_two_rows() {
        let text = format!(
            "{}\n{}\n{}\n",
            header(&["EventId"], &["Weight", "Label"]),
            row(100000, "138.47", &["0.002", "s"]),
            row(100001, "-999.0", &["2.23", "b"]),
        );
        let events = parse(&text).unwrap();
        assert_eq!(events.len(), 2);
        assert_eq!(events[0].label, Label::Signal);
        assert_eq!(events[1].label, Label::Background);
        assert_eq!(events[1].features[0], -999.0);
        assert_eq!(events[0].features[1], 1.5);
        assert_eq!(events[1].weight, 2.23);
        assert_eq!(events[0].event_id, 100000);
    }

    #[test]
    fn open_data_layout_ignores_extra_columns() {
        let text = format!(
            "{}\n{}\n",
            header(&["EventId"], &["Weight", "Label", "KaggleSet", "KaggleWeight"]),
            row(7, "1.0", &["0.5", "b", "t", "0.9"]),
        );
        let events = parse(&text).unwrap();
        assert_eq!(events[0].weight, 0.5);
        assert_eq!(events[0].label, Label::Background);
    }

    #[test]
    fn missing_column_is_named() {
        let text = header(&["EventId"], &["Label"]) + "\n";
        match parse(&text) {
            Err(Error::MissingColumn(c)) => assert_eq!(c, "Weight"),
            other => panic!("{other:?}"),
        }
        let text = header(&["EventId"], &["Weight", "Label"]).replace("PRI_met_phi,", "") + "\n";
        assert!(matches!(parse(&text), Err(Error::MissingColumn(c)) if c == "PRI_met_phi"));
    }

    #[test]
    fn non_numeric_cell_reports_line() {
        let text = format!(
            "{}\n{}\n{}\n",
            header(&["EventId"], &["Weight", "Label"]),
            row(1, "3.0", &["1", "s"]),
            row(2, "abc", &["1", "s"]),
        );
        match parse(&text) {
            Err(Error::Row { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("DER_mass_MMC"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_label_rejected() {
        let text = format!("{}\n{}\n", header(&["EventId"], &["Weight", "Label"]), row(1, "3.0", &["1", "x"]));
        assert!(matches!(parse(&text), Err(Error::Row { line: 2, .. })));
    }
}
