//! Geometric products, classification and centers of real and complex
//! Clifford algebras.

use gaugegrav::clifford::{center_dimension, classify, complexify, MultiVector, ScalarField, Signature};

fn main() -> gaugegrav::Result<()> {
    let sig = Signature::new(1, 3)?;
    let v0 = MultiVector::generator(sig, 0);
    let v1 = MultiVector::generator(sig, 1);
    println!("v0 v0         = {:?}", (&v0 * &v0).scalar_part());
    println!("v1 v1         = {:?}", (&v1 * &v1).scalar_part());
    let anti = (&v0 * &v1).try_add(&(&v1 * &v0))?;
    println!("v0v1 + v1v0   = max |coeff| {}", anti.max_abs());

    let b = &v0 * &v1;
    println!("(v0v1)^2      = {:?}", (&b * &b).scalar_part());

    let c = complexify(&v1)?;
    println!("complexify v1 = {} with square {:?}", c.algebra_name(), (&c * &c).scalar_part());

    println!("\n  (p,q)  algebra          center");
    for n in 1..=4 {
        for p in 0..=n {
            let s = Signature::new(p, n - p)?;
            let class = classify(s, ScalarField::Real);
            println!("  ({p},{})  {:<16} {}", n - p, class.to_string(), center_dimension(s, ScalarField::Real)?);
        }
    }
    let cc4 = Signature::euclidean(4)?;
    println!("  CC(4)  {:<16} {}", classify(cc4, ScalarField::Complex).to_string(), center_dimension(cc4, ScalarField::Complex)?);
    Ok(())
}
