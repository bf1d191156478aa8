//! Output formatting: fixed-precision decimals, exact rationals, and CSV
//! assembly.
//!
//! All CSV output uses `\n` line endings and UTF-8 regardless of platform,
//! so byte-identical reproduction across runs is meaningful.

use dpq::Rational;

/// Formats a float with six significant digits in plain decimal notation.
///
/// The value is first rounded to six significant digits via scientific
/// formatting, then the decimal point is placed by exponent, so boundary
/// values like `999.9995` round cleanly to `1000.00`. Non-finite values
/// print as `inf`, `-inf`, or `NaN`.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    debug_assert_eq!(digits.len(), 6);

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp >= 5 {
        out.push_str(&digits);
        for _ in 0..(exp - 5) {
            out.push('0');
        }
    } else if exp >= 0 {
        let point = (exp + 1) as usize;
        out.push_str(&digits[..point]);
        out.push('.');
        out.push_str(&digits[point..]);
    } else {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

/// Formats an exact rational as `p/q`, including `0/1` for zero, so every
/// exact cell in a CSV has the same shape.
pub fn exact(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Incremental CSV builder with a fixed column count.
pub struct Csv {
    columns: usize,
    buf: String,
}

impl Csv {
    /// Starts a CSV document with the given header row.
    pub fn new(header: &[&str]) -> Self {
        let mut csv = Csv {
            columns: header.len(),
            buf: String::new(),
        };
        csv.push_row(header.iter().map(|s| s.to_string()));
        csv
    }

    /// Appends one data row; panics if the cell count differs from the
    /// header width.
    pub fn row<I>(&mut self, cells: I)
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        self.push_row(cells.into_iter().map(Into::into));
    }

    fn push_row(&mut self, cells: impl Iterator<Item = String>) {
        let mut count = 0;
        for (i, cell) in cells.enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            debug_assert!(
                !cell.contains(',') && !cell.contains('\n'),
                "cell needs no quoting"
            );
            self.buf.push_str(&cell);
            count += 1;
        }
        assert_eq!(count, self.columns, "row width matches header");
        self.buf.push('\n');
    }

    /// Returns the finished document.
    pub fn finish(self) -> String {
        self.buf
    }
}
