//! Cox ring of the Hirzebruch surface F_3 and a few of its graded pieces.

use toric_bgg::{Multidegree, PolyRing};
use toric_bgg::cli::builtin_ring;
use toric_bgg::FieldSpec;

fn main() -> toric_bgg::Result<()> {
    let s: PolyRing = builtin_ring("hirzebruch", &[3], FieldSpec::Rationals)?;
    println!("theta = {:?}", s.theta()?);
    for i in 0..s.nvars() {
        println!("deg {} = {}", s.var_names()[i], s.var_degree(i));
    }

    for d in [[0, 0], [1, 0], [0, 1], [-2, 1], [2, 1]] {
        let d = Multidegree::from(d);
        let monos = s.monomials_of_degree(&d)?;
        let shown: Vec<String> = monos
            .iter()
            .map(|e| s.format(&toric_bgg::Polynomial::monomial(e.clone(), s.field().one())))
            .collect();
        println!("S_{d}: {} [{}]", monos.len(), shown.join(", "));
    }

    let f = s.parse("x_1*x_2^3 - 2*x_3")?;
    println!("{} has degree {}", s.format(&f), s.homogeneous_degree(&f)?.unwrap());
    Ok(())
}
