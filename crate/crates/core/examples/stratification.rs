//! Which integer translates of face hyperplanes a parameter lies on.

use gkz::lattice::IntegerMatrix;
use gkz::number::{q, GQ, Q};
use gkz::strata::{build_arrangement, stratum_index};
use gkz::triangulation::regular_triangulation;

fn main() -> gkz::error::Result<()> {
    let a = IntegerMatrix::new(vec![vec![1, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]])?;
    let w: Vec<Q> = [1, 1, 1, 2].into_iter().map(q).collect();
    let arr = build_arrangement(&regular_triangulation(&a, &w)?);
    for c in &arr {
        println!("condition n·beta ∈ Z with n = {:?} (faces {:?})", c.normal, c.source_faces);
    }

    let r = GQ::from_ratio;
    let samples = [
        vec![r(1, 2), r(1, 3), r(1, 5)],
        vec![r(1, 2), GQ::from_int(2), r(1, 5)],
        vec![GQ::from_int(-1), GQ::from_int(2), r(1, 5)],
        vec![GQ::from_int(0), GQ::from_int(0), GQ::from_int(0)],
    ];
    for beta in &samples {
        let report = stratum_index(beta, &arr)?;
        println!("beta = {beta:?}: index {}, normals {:?}", report.index, report.flat_normals);
    }
    Ok(())
}
