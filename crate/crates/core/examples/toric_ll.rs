//! L applied to the exterior algebra of the Hirzebruch surface F_3: a
//! Koszul complex.

use toric_bgg::bgg::{toric_ll, EModuleGraded};
use toric_bgg::cli::builtin_ring;
use toric_bgg::render;
use toric_bgg::{ExtAlgebra, FieldSpec, Multidegree};

fn main() -> toric_bgg::Result<()> {
    let s = builtin_ring("hirzebruch", &[3], FieldSpec::Rationals)?;
    let e = ExtAlgebra::dual_of(&s);
    let n = EModuleGraded::free(&e, &[Multidegree::zero(3)])?;
    println!("dim E = {} over {} degrees", n.total_dim(), n.support().len());

    let c = toric_ll(&s, &n)?;
    print!("{}", render::ranks(&c));
    print!("{}", render::complex(&s, &c));
    for j in -3..=-1 {
        println!("H_{j} = 0: {}", c.homology(&s, j)?.module.is_zero_module()?);
    }

    // E/(e_0, ..., e_3) is one copy of k, so L gives a single free module
    let rels: Vec<Vec<_>> = (0..4).map(|i| vec![e.var(i)]).collect();
    let k = EModuleGraded::from_presentation(&e, &[Multidegree::zero(3)], &rels)?;
    print!("{}", render::ranks(&toric_ll(&s, &k)?));
    Ok(())
}
