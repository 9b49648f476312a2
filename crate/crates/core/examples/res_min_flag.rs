//! The residue field with zero differential: its minimal free flag
//! resolution is the folded Koszul complex.

use toric_bgg::diffmod::{res_min_flag, DifferentialModule};
use toric_bgg::module::PresentedModule;
use toric_bgg::render;
use toric_bgg::{FieldSpec, GradedMatrix, PolyRing};

fn main() -> toric_bgg::Result<()> {
    let r = PolyRing::new(FieldSpec::prime(101)?, vec!["x".into(), "y".into()], vec![[1].into(), [1].into()])?;
    let k = PresentedModule::quotient_ring(&r, &[r.var(0), r.var(1)])?;
    let zero = GradedMatrix::zero(k.generators().clone(), k.generators().clone(), r.zero_degree());
    let d = DifferentialModule::new(k, zero)?;

    let f = res_min_flag(&d, 3)?;
    print!("{}", render::flag_resolution(&r, &f));
    let koszul = f.flag.unfold()?;
    print!("{}", render::complex(&r, &koszul));
    Ok(())
}
