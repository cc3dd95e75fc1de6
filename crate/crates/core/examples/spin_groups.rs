//! Spinor representations, γ-matrices and the Spin double cover.

use gaugegrav::clifford::Signature;
use gaugegrav::spin::{
    adjoint_matrix, build_rep, dirac_gammas, eta_preservation_residual, lorentz_generators, majorana_gammas,
    VersorElement,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gaugegrav::Result<()> {
    for n in [2, 4, 6, 8] {
        let rep = build_rep(n)?;
        println!("CC({n}) on C^{}: relation residual {}", rep.dim(), rep.relation_residual());
    }
    let dirac = dirac_gammas();
    let maj = majorana_gammas();
    println!("dirac: eta {:?}, residual {}", dirac.eta(), dirac.relation_residual());
    println!("majorana: real {}, eta {:?}, residual {}", maj.is_real(), maj.eta(), maj.relation_residual());
    println!("lorentz algebra residual {}", lorentz_generators(&dirac)?.algebra_residual());

    let sig = Signature::euclidean(4)?;
    let g = VersorElement::exp_bivector(sig, 0, 1, 0.6)?;
    println!("\nrotation by 0.6 in the (0,1) plane:\n{:.6}", adjoint_matrix(&g)?);

    let sig = Signature::new(1, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = VersorElement::random(sig, 4, &mut rng);
    let a = adjoint_matrix(&g)?;
    let b = adjoint_matrix(&g.negated())?;
    println!("random Lorentz versor: eta residual {:.2e}, |Ad(g) - Ad(-g)| {:.2e}", eta_preservation_residual(sig, &a), (a - b).amax());
    Ok(())
}
