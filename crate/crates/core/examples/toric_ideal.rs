//! Toric ideal, weight Gröbner basis, initial ideal and standard pairs of the
//! Gauss configuration.

use gkz::lattice::{kernel_lattice_basis, IntegerMatrix};
use gkz::number::{q, Q};
use gkz::toric::{initial_ideal, standard_pairs, toric_generators, weight_groebner_basis};

fn main() -> gkz::error::Result<()> {
    let a = IntegerMatrix::new(vec![vec![1, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]])?;
    let w: Vec<Q> = [1, 1, 1, 2].into_iter().map(q).collect();

    println!("kernel basis: {:?}", kernel_lattice_basis(&a).columns);
    let gens = toric_generators(&a);
    for g in &gens {
        println!("generator: x^{:?} - x^{:?}", g.u_plus, g.u_minus);
    }
    for g in weight_groebner_basis(&gens, &w)? {
        println!("leading under w: x^{:?}", g.u_plus);
    }
    let m = initial_ideal(&gens, &w)?;
    println!("initial ideal generators: {:?}", m.generators);
    for p in standard_pairs(&m) {
        println!("standard pair: root {:?}, face {:?}", p.root, p.face);
    }
    Ok(())
}
