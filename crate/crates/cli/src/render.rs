//! Text-output helpers: significant-digit formatting and CSV assembly.

/// Formats with `sig` significant digits, in plain decimal when the
/// exponent is moderate and scientific notation otherwise. Output is a pure
/// function of the f64 value, so parsing an emitted number and re-rendering
/// it reproduces the byte-identical text.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exponent.parse().expect("exponent value");
    // keep scientific notation for extreme magnitudes
    if exp < -4 || exp >= sig as i32 + 3 {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1; // digits before the decimal point
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat(-point as usize), digits)
    } else if (point as usize) >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Minimal CSV writer; fields here never contain separators or quotes.
pub struct Csv {
    text: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: Vec<&str>) -> Self {
        let columns = header.len();
        let mut text = header.join(",");
        text.push('\n');
        Csv { text, columns }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns);
        self.text.push_str(&row.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}
