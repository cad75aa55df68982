use std::io::{self, Write};

/// `t,tv` rows.
pub fn write_tv_csv<W: Write>(mut w: W, curve: &[f64]) -> io::Result<()> {
    writeln!(w, "t,tv")?;
    for (t, tv) in curve.iter().enumerate() {
        writeln!(w, "{t},{tv:.12e}")?;
    }
    Ok(())
}

/// `cut,phi,bound` rows.
pub fn write_conductance_csv<W: Write>(mut w: W, rows: &[(String, String, f64)]) -> io::Result<()> {
    writeln!(w, "cut,phi,bound")?;
    for (cut, phi, bound) in rows {
        writeln!(w, "{cut},{phi},{bound:.12e}")?;
    }
    Ok(())
}

/// `n,states,diameter` rows; a missing diameter is left empty.
pub fn write_enumeration_csv<W: Write>(mut w: W, rows: &[(usize, usize, Option<usize>)]) -> io::Result<()> {
    writeln!(w, "n,states,diameter")?;
    for (n, states, d) in rows {
        let d = d.map(|d| d.to_string()).unwrap_or_default();
        writeln!(w, "{n},{states},{d}")?;
    }
    Ok(())
}
