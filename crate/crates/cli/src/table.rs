//! Result tables as CSV: `N,beta_B_sq_dB,beta_E_sq_dB,method,cb,ce,cs,ci_halfwidth`.

use crate::config::MethodName;
use crate::error::{CliError, Result};

pub const HEADER: [&str; 8] = [
    "N",
    "beta_B_sq_dB",
    "beta_E_sq_dB",
    "method",
    "cb",
    "ce",
    "cs",
    "ci_halfwidth",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub n: u32,
    pub beta_b_db: f64,
    pub beta_e_db: f64,
    pub method: MethodName,
    pub cb: f64,
    pub ce: f64,
    pub cs: f64,
    /// Monte Carlo rows only.
    pub ci_halfwidth: Option<f64>,
}

/// Nine significant digits, `%g` style: fixed notation for exponents in
/// `-5..9`, scientific otherwise, trailing zeros removed.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let digits = (8 - exp) as usize;
        trim_zeros(format!("{x:.digits$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Serializes rows with a header and LF line endings.
pub fn write_table(rows: &[Row]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            format_sig9(r.beta_b_db),
            format_sig9(r.beta_e_db),
            r.method.as_str().to_string(),
            format_sig9(r.cb),
            format_sig9(r.ce),
            format_sig9(r.cs),
            r.ci_halfwidth.map(format_sig9).unwrap_or_default(),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Table(format!("flushing csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Table(e.to_string()))
}

fn field(rec: &csv::StringRecord, i: usize, line: u64) -> Result<&str> {
    rec.get(i)
        .ok_or_else(|| CliError::Table(format!("line {line}: missing column {}", HEADER[i])))
}

fn number(rec: &csv::StringRecord, i: usize, line: u64) -> Result<f64> {
    let s = field(rec, i, line)?;
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| {
            CliError::Table(format!(
                "line {line}: {} = {s:?} is not a number",
                HEADER[i]
            ))
        })
}

/// Parses a table produced by [`write_table`].
pub fn parse_table(text: &str) -> Result<Vec<Row>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());
    let header = rdr.headers()?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(CliError::Table(format!(
            "expected header {}, found {}",
            HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let n_str = field(&rec, 0, line)?;
        let n = n_str
            .parse::<u32>()
            .map_err(|_| CliError::Table(format!("line {line}: N = {n_str:?} is not a count")))?;
        let m_str = field(&rec, 3, line)?;
        let method = MethodName::parse(m_str)
            .ok_or_else(|| CliError::Table(format!("line {line}: unknown method {m_str:?}")))?;
        let ci = match field(&rec, 7, line)? {
            "" => None,
            _ => Some(number(&rec, 7, line)?),
        };
        rows.push(Row {
            n,
            beta_b_db: number(&rec, 1, line)?,
            beta_e_db: number(&rec, 2, line)?,
            method,
            cb: number(&rec, 4, line)?,
            ce: number(&rec, 5, line)?,
            cs: number(&rec, 6, line)?,
            ci_halfwidth: ci,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(3.3279530123456), "3.32795301");
        assert_eq!(format_sig9(-5.0), "-5");
        assert_eq!(format_sig9(-0.0), "0");
        assert_eq!(format_sig9(0.000_123_456_789_12), "0.000123456789");
        assert_eq!(format_sig9(1.234_567_891_2e-7), "1.23456789e-7");
        assert_eq!(format_sig9(123_456_789_012.0), "1.23456789e11");
        assert_eq!(format_sig9(9.999_999_999_9), "10");
        assert_eq!(format_sig9(99_999_999.96), "100000000");
        assert_eq!(format_sig9(999_999_999.6), "1e9");
    }

    #[test]
    fn sig9_round_trips_to_nine_digits() {
        for &x in &[std::f64::consts::PI, -1.0 / 3.0, 6.02e23, 1e-300, 7.64] {
            let back: f64 = format_sig9(x).parse().unwrap();
            assert!((back / x - 1.0).abs() < 5e-9, "{x}");
        }
    }

    #[test]
    fn table_round_trip() {
        let rows = vec![
            Row {
                n: 4,
                beta_b_db: 0.0,
                beta_e_db: -5.0,
                method: MethodName::Cf,
                cb: 3.705,
                ce: 0.3777,
                cs: 3.705 - 0.3777,
                ci_halfwidth: None,
            },
            Row {
                n: 4,
                beta_b_db: 0.0,
                beta_e_db: -5.0,
                method: MethodName::Mc,
                cb: 3.7051,
                ce: 0.37771,
                cs: 3.32739,
                ci_halfwidth: Some(2.5e-4),
            },
        ];
        let text = write_table(&rows).unwrap();
        assert!(text.starts_with("N,beta_B_sq_dB,beta_E_sq_dB,method,cb,ce,cs,ci_halfwidth\n"));
        assert!(text.contains("\n4,0,-5,cf,3.705,0.3777,3.3273,\n"));
        assert!(!text.contains('\r'));
        let back = parse_table(&text).unwrap();
        assert_eq!(back[1], rows[1]);
        assert_eq!(write_table(&back).unwrap(), text);
    }

    #[test]
    fn malformed_tables() {
        assert!(parse_table("a,b\n1,2\n").is_err());
        let head = HEADER.join(",");
        assert!(parse_table(&format!("{head}\n4,0,0,cf,1,1,0\n")).is_err());
        assert!(parse_table(&format!("{head}\n4,0,0,xx,1,1,0,\n")).is_err());
        assert!(parse_table(&format!("{head}\n-4,0,0,cf,1,1,0,\n")).is_err());
        assert!(parse_table(&format!("{head}\n4,0,0,cf,1,NaN,0,\n")).is_err());
        assert_eq!(parse_table(&format!("{head}\n")).unwrap(), vec![]);
    }
}
