//! R of modules over the Cox ring of F_3, with the default and a custom
//! window of degrees.

use toric_bgg::bgg::{default_degree_window, omega_twist_degree, toric_rr};
use toric_bgg::cli::builtin_ring;
use toric_bgg::module::PresentedModule;
use toric_bgg::render;
use toric_bgg::{FieldSpec, Multidegree};

fn main() -> toric_bgg::Result<()> {
    let s = builtin_ring("hirzebruch", &[3], FieldSpec::Rationals)?;
    let p = |t: &str| s.parse(t).unwrap();
    println!("omega twist of (0,0): {}", omega_twist_degree(&s, &Multidegree::zero(2)));

    // finite length: the whole module
    let art = PresentedModule::quotient_ring(&s, &[p("x_0"), p("x_1^2"), p("x_2^2"), p("x_3^2")])?;
    print!("{}", render::ext_dm(&toric_rr(&art, None)?.dm));

    let m = PresentedModule::quotient_ring(&s, &[p("x_0")])?;
    let w: Vec<String> = default_degree_window(&m)?.iter().map(render::degree_label).collect();
    println!("default window {}", w.join(" "));
    print!("{}", render::ext_dm(&toric_rr(&m, None)?.dm));

    let l: Vec<Multidegree> = vec![[0, 0].into(), [1, 0].into(), [-3, 1].into(), [0, 1].into(), [2, 0].into()];
    let r = toric_rr(&m, Some(&l))?;
    print!("{}", render::ext_dm(&r.dm));
    for (i, (d, k)) in r.labels.iter().enumerate() {
        println!("generator {i}: basis vector {k} of M_{d}");
    }
    Ok(())
}
