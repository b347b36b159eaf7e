use std::io::{self, Write};

use super::TrialRecord;

pub const CSV_HEADER: &str = "m,n,poly_index,occupancy_probability,num_monomials,ops_canonical,ops_horner,mean_abs_error_canonical,mean_abs_error_horner";

/// Writes records as CSV, floats in shortest round-trip form.
pub fn write_csv<W: Write>(mut w: W, records: &[TrialRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{:?},{},{},{},{:?},{:?}",
            r.m,
            r.n,
            r.poly_index,
            r.occupancy_probability,
            r.num_monomials,
            r.ops_canonical,
            r.ops_horner,
            r.mean_abs_error_canonical,
            r.mean_abs_error_horner
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_rows() {
        let r = TrialRecord {
            m: 2,
            n: 3,
            poly_index: 1,
            occupancy_probability: 0.25,
            num_monomials: 4,
            ops_canonical: 19,
            ops_horner: 9,
            mean_abs_error_canonical: 1.1102230246251565e-16,
            mean_abs_error_horner: 0.0,
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("2,3,1,0.25,4,19,9,1.1102230246251565e-16,0.0"));
        assert_eq!(lines.next(), None);
    }
}
