//! Regular triangulations with exact regularity certificates, homogeneous
//! and inhomogeneous.

use gkz::lattice::IntegerMatrix;
use gkz::number::{fmt_q, q, Q};
use gkz::triangulation::{codim1_faces, inhomogeneous_triangulation, regular_triangulation, Triangulation};

fn show(name: &str, t: &Triangulation) {
    println!("{name}: cells {:?}, verified {}", t.maximal_simplices, t.verify());
    println!("  codimension-one faces {:?}", codim1_faces(t));
    for c in t.regularity_certificate() {
        let f: Vec<String> = c.functional.iter().map(fmt_q).collect();
        println!("  cell {:?}: functional {f:?}, gap {:?}", c.cell, c.min_gap.as_ref().map(fmt_q));
    }
}

fn main() -> gkz::error::Result<()> {
    let ws = |v: &[i64]| v.iter().map(|&x| q(x)).collect::<Vec<Q>>();

    let conic = IntegerMatrix::new(vec![vec![1, 1, 1], vec![0, 1, 2]])?;
    show("conic, w = (1,1,3)", &regular_triangulation(&conic, &ws(&[1, 1, 3]))?);
    show("conic, w = (1,3,1)", &regular_triangulation(&conic, &ws(&[1, 3, 1]))?);

    let gauss = IntegerMatrix::new(vec![vec![1, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]])?;
    show("gauss, w = (1,1,1,2)", &regular_triangulation(&gauss, &ws(&[1, 1, 1, 2]))?);

    // column 0 of the inhomogeneous triangulation is the origin
    let a = IntegerMatrix::new(vec![vec![1, 2, 3]])?;
    show("conv(0, 1, 2, 3), w = (1,3,2)", &inhomogeneous_triangulation(&a, &ws(&[1, 3, 2]))?);

    if let Err(e) = regular_triangulation(&conic, &ws(&[1, 1, 1])) {
        println!("non-generic weight: {e}");
    }
    Ok(())
}
