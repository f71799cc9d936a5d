use nevlab_core::algebra::{ExactC, UniPoly};
use nevlab_core::curves::ExpPoly;
use nevlab_core::nevanlinna::isolate_zeros_exp;

fn main() {
    let base = ExpPoly::exp_term(ExactC::one()).sub(&ExpPoly::from_poly(UniPoly::one()));
    let sq = base.mul(&base);
    match isolate_zeros_exp(&sq, 1.0) {
        Ok(d) => println!("ok: {:?}", d.zeros),
        Err(e) => println!("err: {e}"),
    }
}
