//! Presented modules: pruning, graded pieces, kernels.

use toric_bgg::cli::builtin_ring;
use toric_bgg::module::{kernel_of_presented_map, PresentedModule};
use toric_bgg::render;
use toric_bgg::{FieldSpec, FreeModule, GradedMatrix, Multidegree};

fn main() -> toric_bgg::Result<()> {
    let s = builtin_ring("hirzebruch", &[3], FieldSpec::Rationals)?;
    let p = |t: &str| s.parse(t).unwrap();

    let m = PresentedModule::quotient_ring(&s, &[p("x_0"), p("x_1^2"), p("x_2^2"), p("x_3^2")])?;
    let support = m.finite_support()?.expect("artinian");
    println!("dim M = {}", m.total_dimension()?.unwrap());
    for d in &support {
        print!("{}", render::graded_piece(&s, &m.graded_piece(d)?));
    }
    let x2 = m.multiplication_map(&Multidegree::from([0, 0]), 2)?;
    println!("x_2 : M_(0,0) -> M_(1,0) has rank {}", x2.rank(s.field()));

    // a presentation with a unit entry prunes away a generator
    let f = FreeModule::new(vec![[0, 0].into(), [1, 0].into()]);
    let rel = GradedMatrix::from_columns_inferred(&s, f, s.zero_degree(), vec![vec![p("x_0"), p("-1")], vec![p("0"), p("x_3")]])?;
    let big = PresentedModule::new(&s, rel.target().clone(), rel)?;
    let small = big.minimal_presentation()?;
    print!("{}", render::module(&s, &small));

    // kernel of S -> S/(x_0), x |-> x
    let free = PresentedModule::free(&s, FreeModule::standard(&s, 1));
    let q = PresentedModule::quotient_ring(&s, &[p("x_0")])?;
    let id = GradedMatrix::identity(&s, &FreeModule::standard(&s, 1));
    let k = kernel_of_presented_map(&free, &q, &id)?;
    println!("kernel generated by {} element(s)", k.module.num_generators());
    Ok(())
}
