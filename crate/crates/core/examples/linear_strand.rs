//! Strongly linear strands, on F_3 and on the canonical module of a
//! rational curve in P(1,1,1,2,2).

use toric_bgg::cli::builtin_ring;
use toric_bgg::complex::{ext_module, minimal_free_resolution, minors};
use toric_bgg::module::PresentedModule;
use toric_bgg::render;
use toric_bgg::strands::strongly_linear_strand;
use toric_bgg::{FieldSpec, Multidegree};

fn main() -> toric_bgg::Result<()> {
    let h = builtin_ring("hirzebruch", &[3], FieldSpec::Rationals)?;
    let m = PresentedModule::quotient_ring(&h, &[h.parse("x_0")?, h.parse("x_1^2")?])?;
    let r = strongly_linear_strand(&m)?;
    print!("{}", render::complex(&h, &r.strand));

    let s = builtin_ring("weighted-projective", &[1, 1, 1, 2, 2], FieldSpec::Rationals)?;
    let p = |t: &str| s.parse(t).unwrap();
    let mat = vec![
        vec![p("x_0"), p("x_1"), p("x_2^2"), p("x_3")],
        vec![p("x_1"), p("x_2"), p("x_3"), p("x_4")],
    ];
    let q = PresentedModule::quotient_ring(&s, &minors(&mat, 2))?;
    let omega = ext_module(&q, 3, &Multidegree::from([-7]))?;
    let r = strongly_linear_strand(&omega)?;
    println!("generated in degree {}", render::degree_label(&r.degree));
    print!("{}", render::complex(&s, &r.strand));

    // compare with the whole resolution
    let res = minimal_free_resolution(&omega, 6)?;
    print!("strand {}full   {}", render::ranks(&r.strand), render::ranks(&res));
    Ok(())
}
