//! Published Table 1 energies, embedded verbatim.

use serde::Deserialize;

/// The embedded CSV exactly as shipped.
pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");

pub const TABLE1_DIMS: [u32; 3] = [3, 4, 5];
pub const TABLE1_N: [u32; 5] = [1, 2, 3, 4, 5];
pub const TABLE1_ALPHAS: [f64; 4] = [1e-4, 1e-3, 5e-3, 1e-2];

/// One printed cell of the table. `e_paper` is `None` where the published table
/// prints "---".
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCell {
    pub dim: u32,
    pub n: u32,
    pub alpha: f64,
    pub e_paper: Option<f64>,
    /// The value as printed, kept for reporting.
    pub printed: Option<String>,
}

impl ReferenceCell {
    pub fn present(&self) -> bool {
        self.e_paper.is_some()
    }

    /// The printed value as an integer count of last-digit units and the
    /// decimal exponent of that digit, so `1.1130e-3` becomes `(11130, -7)`.
    pub fn printed_units(&self) -> Option<(i64, i32)> {
        let text = self.printed.as_deref()?;
        let (mantissa, exp) = text.split_once('e').unwrap_or((text, "0"));
        let exp: i32 = exp.parse().ok()?;
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits: i64 = format!("{int}{frac}").parse().ok()?;
        Some((digits, exp - frac.len() as i32))
    }

    /// Whether two printed values differ by at most one unit in the last
    /// printed digit.
    pub fn within_one_printed_unit(&self, other: &Self) -> Option<bool> {
        let (a, ea) = self.printed_units()?;
        let (b, eb) = other.printed_units()?;
        Some(ea == eb && (a - b).abs() <= 1)
    }
}

#[derive(Deserialize)]
struct Row {
    dim: u32,
    n: u32,
    alpha: f64,
    e_paper: String,
    present: u8,
}

#[derive(Debug, thiserror::Error)]
pub enum ReferenceError {
    #[error("reference table: {0}")]
    Csv(#[from] csv::Error),
    #[error("reference table row {row}: {reason}")]
    Row { row: usize, reason: String },
}

pub fn parse_table(text: &str) -> Result<Vec<ReferenceCell>, ReferenceError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut cells = Vec::new();
    for (i, rec) in rdr.deserialize::<Row>().enumerate() {
        let row = rec?;
        let bad = |reason: &str| ReferenceError::Row {
            row: i + 1,
            reason: reason.to_owned(),
        };
        let e_paper = match (row.present, row.e_paper.is_empty()) {
            (1, false) => Some(
                row.e_paper
                    .parse::<f64>()
                    .map_err(|_| bad("unparsable energy"))?,
            ),
            (0, true) => None,
            _ => return Err(bad("present flag disagrees with the energy column")),
        };
        cells.push(ReferenceCell {
            dim: row.dim,
            n: row.n,
            alpha: row.alpha,
            printed: e_paper.map(|_| row.e_paper.clone()),
            e_paper,
        });
    }
    Ok(cells)
}

/// The embedded table, ordered by D, then n, then α.
pub fn table1() -> Vec<ReferenceCell> {
    // The embedded file is checked by the tests below.
    parse_table(TABLE1_CSV).expect("embedded table parses")
}

pub fn lookup(cells: &[ReferenceCell], dim: u32, n: u32, alpha: f64) -> Option<&ReferenceCell> {
    cells
        .iter()
        .find(|c| c.dim == dim && c.n == n && c.alpha == alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixty_cells_in_grid_order() {
        let cells = table1();
        assert_eq!(cells.len(), 60);
        let mut i = 0;
        for d in TABLE1_DIMS {
            for n in TABLE1_N {
                for a in TABLE1_ALPHAS {
                    assert_eq!((cells[i].dim, cells[i].n, cells[i].alpha), (d, n, a));
                    i += 1;
                }
            }
        }
        assert_eq!(cells.iter().filter(|c| !c.present()).count(), 18);
    }

    #[test]
    fn spot_values() {
        let cells = table1();
        let c = lookup(&cells, 3, 1, 1e-4).unwrap();
        assert_eq!(c.e_paper, Some(4.0032e-8));
        assert_eq!(c.printed.as_deref(), Some("4.0032e-8"));
        assert_eq!(lookup(&cells, 5, 1, 1e-2).unwrap().e_paper, Some(1.1131e-3));
        assert_eq!(lookup(&cells, 3, 2, 1e-2).unwrap().e_paper, Some(1.1130e-3));
        assert!(!lookup(&cells, 3, 4, 5e-3).unwrap().present());
        assert!(!lookup(&cells, 4, 2, 1e-2).unwrap().present());
        assert_eq!(lookup(&cells, 5, 5, 1e-3).unwrap().e_paper, Some(5.0616e-5));
    }

    #[test]
    fn printed_digit_units() {
        let cells = table1();
        let a = lookup(&cells, 3, 2, 1e-2).unwrap();
        let b = lookup(&cells, 5, 1, 1e-2).unwrap();
        assert_eq!(a.printed_units(), Some((11130, -7)));
        assert_eq!(a.within_one_printed_unit(b), Some(true));
        let c = lookup(&cells, 3, 1, 1e-2).unwrap();
        assert_eq!(a.within_one_printed_unit(c), Some(false));
        assert_eq!(lookup(&cells, 3, 5, 1e-2).unwrap().printed_units(), None);
    }

    #[test]
    fn inconsistent_rows_are_rejected() {
        let text = "dim,n,alpha,e_paper,present\n3,1,0.01,,1\n";
        assert!(parse_table(text).is_err());
    }
}
