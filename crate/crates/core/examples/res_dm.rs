//! Free flag resolution of a degree-2 differential module and its
//! minimization.

use toric_bgg::diffmod::{default_max_iter, minimize_dm, res_dm, DifferentialModule};
use toric_bgg::render;
use toric_bgg::{FieldSpec, FreeModule, GradedMatrix, Multidegree, PolyRing};

fn main() -> toric_bgg::Result<()> {
    let r = PolyRing::new(FieldSpec::prime(101)?, vec!["x".into(), "y".into()], vec![[1].into(), [1].into()])?;
    let p = |t: &str| r.parse(t).unwrap();
    let f = FreeModule::new(vec![[0].into(), [0].into()]);
    let a = GradedMatrix::new(
        &r,
        f.clone(),
        f,
        Multidegree::from([2]),
        vec![vec![p("x*y"), p("-x^2")], vec![p("y^2"), p("-x*y")]],
    )?;
    let d = DifferentialModule::free(&r, a)?;
    println!("H(D) = 0? {}", d.is_exact()?);

    let flag = res_dm(&d, default_max_iter(&r))?;
    print!("{}", render::flag_resolution(&r, &flag));
    println!("comparison cone exact: {}", flag.comparison_cone(&d)?.is_exact()?);

    let g = minimize_dm(&flag.flag.dm().clone())?;
    print!("{}", render::dm(&r, &g));
    println!("minimal: {}", g.is_minimal());
    Ok(())
}
