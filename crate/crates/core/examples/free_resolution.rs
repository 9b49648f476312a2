//! Minimal free resolution and Ext for a rational curve in P(1,1,1,2,2).

use std::time::Instant;

use toric_bgg::cli::builtin_ring;
use toric_bgg::complex::{ext_module, minimal_free_resolution, minors};
use toric_bgg::module::PresentedModule;
use toric_bgg::render;
use toric_bgg::{FieldSpec, Multidegree};

fn main() -> toric_bgg::Result<()> {
    let s = builtin_ring("weighted-projective", &[1, 1, 1, 2, 2], FieldSpec::Rationals)?;
    let p = |t: &str| s.parse(t).unwrap();
    let m = vec![
        vec![p("x_0"), p("x_1"), p("x_2^2"), p("x_3")],
        vec![p("x_1"), p("x_2"), p("x_3"), p("x_4")],
    ];
    let q = PresentedModule::quotient_ring(&s, &minors(&m, 2))?;

    let t = Instant::now();
    let res = minimal_free_resolution(&q, 6)?;
    print!("{}", render::ranks(&res));
    print!("{}", render::complex(&s, &res));
    println!("minimal: {} ({:?})", res.is_minimal(), t.elapsed());

    let omega = ext_module(&q, 3, &Multidegree::from([-7]))?;
    print!("{}", render::module(&s, &omega));
    Ok(())
}
