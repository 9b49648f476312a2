//! Gröbner bases of submodules and syzygies of a small matrix.

use toric_bgg::groebner::{buchberger, syzygies};
use toric_bgg::render;
use toric_bgg::{FieldSpec, FreeModule, GradedMatrix, PolyRing};

fn main() -> toric_bgg::Result<()> {
    let s = PolyRing::standard(FieldSpec::prime(101)?, 4)?;
    let p = |t: &str| s.parse(t).unwrap();

    // twisted cubic
    let ideal = vec![
        vec![p("x_0*x_2 - x_1^2")],
        vec![p("x_1*x_3 - x_2^2")],
        vec![p("x_0*x_3 - x_1*x_2")],
    ];
    let f = FreeModule::standard(&s, 1);
    let gb = buchberger(&s, &f, &ideal)?;
    println!("{} elements, reduced: {}", gb.len(), gb.is_reduced());
    println!("x_1^3 - x_0*x_1*x_2 reduces to {}", s.format(&gb.normal_form(&[p("x_1^3 - x_0*x_1*x_2")])?[0]));

    let phi = GradedMatrix::from_columns_inferred(&s, f, s.zero_degree(), ideal)?;
    let syz = syzygies(&s, &phi)?;
    println!("syzygies:\n{}", render::matrix(&s, &syz));
    assert!(phi.compose(&syz)?.is_zero());

    println!("{}", serde_json::to_string(&gb.to_json()).unwrap());
    Ok(())
}
