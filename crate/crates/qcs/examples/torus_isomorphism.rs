//! The isomorphism between the surgered and limit quantum tori: generators
//! map to the commutative monomials of their stabilized g-vectors, and the
//! commutation exponents transport exactly.

use qcs::lie::{coxeter_word, make_datum, Family};
use qcs::quiver::Window;
use qcs::torus::identities::iso_g;

fn main() -> qcs::Result<()> {
    for (fam, rank, word) in [
        (Family::A, 1, vec![1u8]),
        (Family::A, 2, vec![1, 2]),
        (Family::A, 2, vec![2, 1]),
        (Family::A, 3, vec![1, 2, 3]),
    ] {
        let datum = make_datum(fam, rank)?;
        let cox = coxeter_word(&datum, &word)?;
        let window = Window::with_core(-10, 8, datum.coxeter_number)?;
        let rep = iso_g(&datum, &cox, window)?;
        for item in &rep.items {
            println!("[{:?}] {} - {}", item.status, rep.name, item.identity);
            assert_eq!(item.status, qcs::report::Status::Pass);
        }
    }
    Ok(())
}
