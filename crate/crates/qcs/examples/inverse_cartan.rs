//! The inverse quantum Cartan series by recurrence, cross-checked against
//! truncated polynomial-matrix inversion, and the skew map built from it.

use qcs::lie::{make_datum, Family};
use qcs::quantization::{f_map, inv_cartan, poly_oracle};

fn main() -> qcs::Result<()> {
    for (fam, rank) in [(Family::A, 1), (Family::A, 2), (Family::D, 4)] {
        let datum = make_datum(fam, rank)?;
        let series = inv_cartan(&datum, 16);
        let oracle = poly_oracle::inv_cartan_by_inversion(&datum, 16);
        for i in 1..=rank as u8 {
            for j in 1..=rank as u8 {
                for m in 1..=16i64 {
                    assert_eq!(
                        series.coeff(i, j, m),
                        oracle[i as usize - 1][j as usize - 1][m as usize]
                    );
                }
            }
        }
        println!("{fam:?}{rank}: recurrence = inversion up to order 16");
        print!("  Ct_11(m), m = 1..12:  ");
        for m in 1..=12 {
            print!("{} ", series.coeff(1, 1, m));
        }
        println!();
        print!("  F_11(m),  m = 0..12:  ");
        for m in 0..=12 {
            print!("{} ", f_map(&series, 1, 1, m));
        }
        println!("\n");
    }
    Ok(())
}
