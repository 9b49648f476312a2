//! Plain-text rendering in the layout of Macaulay2 transcripts: each row is
//! prefixed by its degree in braces and entries sit between pipes.
//!
//! Generators appear in the order the computation produced them; matrices
//! from different runs are comparable only up to permutation.

use std::fmt::Write;

use crate::bgg::{DifferentialEModule, EModuleGraded};
use crate::complex::FComplex;
use crate::degree::Multidegree;
use crate::diffmod::{DifferentialModule, FlagDM, FlagResolution};
use crate::matrix::{FreeModule, GradedMatrix};
use crate::module::{GradedPiece, PresentedModule};
use crate::poly::PolyRing;

/// `{-1, 2, 4}`.
pub fn degree_label(d: &Multidegree) -> String {
    let c: Vec<String> = d.coords().iter().map(i64::to_string).collect();
    format!("{{{}}}", c.join(", "))
}

/// A grid of strings with one degree label per row.
pub fn grid(labels: &[String], rows: &[Vec<String>]) -> String {
    let ncols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(1))
        .collect();
    let lw = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (l, r) in labels.iter().zip(rows) {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{l:<lw$} | {} |", cells.join(" "));
    }
    out
}

fn free_name(ring: &PolyRing, f: &FreeModule) -> String {
    let base = format!("{}[{}..{}]", ring.field(), ring.var_names()[0], ring.var_names()[ring.nvars() - 1]);
    match f.rank() {
        0 => "0".into(),
        1 => format!("({base})"),
        r => format!("({base})^{r}"),
    }
}

/// Rows labelled by target twists, entries in transcript notation.
pub fn matrix(ring: &PolyRing, m: &GradedMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("0 ({} x {})\n", m.rows(), m.cols());
    }
    let labels: Vec<String> = m.target().twists().iter().map(degree_label).collect();
    let rows: Vec<Vec<String>> = m
        .entries()
        .iter()
        .map(|r| r.iter().map(|f| ring.format_compact(f)).collect())
        .collect();
    grid(&labels, &rows)
}

pub fn dm(ring: &PolyRing, d: &DifferentialModule) -> String {
    let mut out = format!(
        "{} <-- {}  degree {}\n",
        free_name(ring, d.generators()),
        free_name(ring, d.generators()),
        degree_label(d.degree())
    );
    out.push_str(&matrix(ring, d.del()));
    if !d.is_free() {
        out.push_str("relations\n");
        out.push_str(&matrix(ring, d.module().relations()));
    }
    out
}

pub fn flag(ring: &PolyRing, f: &FlagDM) -> String {
    let mut out = dm(ring, f.dm());
    let ranks: Vec<String> = f.block_ranks().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "flag ranks {}", ranks.join(" "));
    out
}

pub fn flag_resolution(ring: &PolyRing, r: &FlagResolution) -> String {
    let mut out = flag(ring, &r.flag);
    let _ = writeln!(out, "iterations {} ({:?})", r.iterations, r.convergence);
    out
}

pub fn complex(ring: &PolyRing, c: &FComplex) -> String {
    let Some((lo, hi)) = c.range() else {
        return "0\n".into();
    };
    let mut out = String::new();
    if lo == hi {
        let _ = writeln!(out, "{lo} : {}", free_name(ring, &c.term(lo)));
        return out;
    }
    for i in lo + 1..=hi {
        let _ = writeln!(
            out,
            "{} : {} <-- {} : {i}",
            i - 1,
            free_name(ring, &c.term(i - 1)),
            free_name(ring, &c.term(i))
        );
        out.push_str(&matrix(ring, &c.map(ring, i)));
        out.push('\n');
    }
    out
}

pub fn ranks(c: &FComplex) -> String {
    let r: Vec<String> = c.ranks().iter().map(|(i, k)| format!("{i}:{k}")).collect();
    format!("ranks {}\n", r.join(" "))
}

pub fn module(ring: &PolyRing, m: &PresentedModule) -> String {
    let gens: Vec<String> = m.generators().twists().iter().map(degree_label).collect();
    let mut out = format!("cokernel, generator twists {}\n", gens.join(" "));
    out.push_str(&matrix(ring, m.relations()));
    out
}

pub fn ext_dm(d: &DifferentialEModule) -> String {
    let ext = d.ext();
    if d.rank() == 0 {
        return "0\n".into();
    }
    let labels: Vec<String> = d.twists().iter().map(degree_label).collect();
    let rows: Vec<Vec<String>> = d
        .entries()
        .iter()
        .map(|r| r.iter().map(|f| ext.format(f)).collect())
        .collect();
    let mut out = format!("E^{} <-- E^{}\n", d.rank(), d.rank());
    out.push_str(&grid(&labels, &rows));
    out
}

pub fn emodule(n: &EModuleGraded) -> String {
    let mut out = String::new();
    for (d, k) in n.dims() {
        let _ = writeln!(out, "{} : {k}", degree_label(d));
    }
    out
}

pub fn graded_piece(ring: &PolyRing, p: &GradedPiece) -> String {
    let mut out = format!("degree {} dimension {}\n", degree_label(p.degree()), p.dim());
    for k in 0..p.dim() {
        let v = p.basis_vector(ring, k);
        let cells: Vec<String> = v.iter().map(|f| ring.format_compact(f)).collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn labelled_rows() {
        let r = PolyRing::new(
            FieldSpec::prime(101).unwrap(),
            vec!["x".into(), "y".into()],
            vec![Multidegree::from([1]); 2],
        )
        .unwrap();
        let f = FreeModule::new(vec![[0].into(), [1].into()]);
        let g = FreeModule::new(vec![[2].into()]);
        let e = vec![vec![r.parse("x*y").unwrap()], vec![r.parse("-y").unwrap()]];
        let m = GradedMatrix::new(&r, g, f, r.zero_degree(), e).unwrap();
        assert_eq!(matrix(&r, &m), "{0} | xy |\n{1} | -y |\n");
    }
}
