use serde_json::{Map, Number, Value};

use super::SweepTable;

/// Nine significant digits, `.` as decimal separator, no locale involvement.
///
/// Magnitudes in `[1e-5, 1e9)` print positionally (`0.398400000`), everything
/// else in scientific form (`1.23456789e-7`).
pub fn format_sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let sci = format!("{:.8e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if x < 0.0 { "-" } else { "" };
    if !(-5..9).contains(&exp) {
        return format!("{sign}{mantissa}e{exp}");
    }
    let body = if exp >= 0 {
        let split = exp as usize + 1;
        let (int, frac) = digits.split_at(split);
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    format!("{sign}{body}")
}

fn row_cells(table: &SweepTable) -> impl Iterator<Item = Vec<String>> + '_ {
    table.rows.iter().map(|r| {
        r.knobs
            .iter()
            .chain(&r.values)
            .map(|&v| format_sig9(v))
            .collect()
    })
}

/// `# params: ...` line, column names, then one line per row.
pub fn to_csv(table: &SweepTable) -> String {
    let mut out = format!("# {}\n{}\n", table.header, table.columns.join(","));
    for cells in row_cells(table) {
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Array of row objects keyed by column name, values rounded as in the CSV.
pub fn to_json(table: &SweepTable) -> String {
    let rows: Vec<Value> = row_cells(table)
        .map(|cells| {
            let mut obj = Map::new();
            for (name, cell) in table.columns.iter().zip(cells) {
                let v: f64 = cell.parse().expect("formatted numbers parse back");
                let num = Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null);
                obj.insert(name.clone(), num);
            }
            Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("JSON values serialize");
    s.push('\n');
    s
}
