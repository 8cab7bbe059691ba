use boxwell::model::{Geometry, Parity, Potential};
use boxwell::{maf_eigenvalue, oracle_eigenvalue, wkb_eigenvalue, MeshSpec};

fn main() -> Result<(), boxwell::Error> {
    let pot = Potential::harmonic(); // V = x²
    let geo = Geometry::symmetric(1.0)?;
    let anti0 = Parity::Antisymmetric;
    let wkb = wkb_eigenvalue(&pot, &geo, anti0, 0, 1e-10)?;
    let maf = maf_eigenvalue(&pot, &geo, anti0, 0, 1e-10)?;
    let fd = oracle_eigenvalue(&pot, &geo, anti0, 0, MeshSpec { points: 2048 })?;
    println!("{:.6} {:.6} {:.6}", wkb.energy, maf.energy, fd.energy);
    // 10.205212 10.171279 10.151164
    Ok(())
}
