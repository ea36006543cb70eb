//! The three-vertex quantum cluster algebra: oscillator relations, the
//! double Bruhat cell presentation, mutation involution, and the
//! comparison with the mutated Bruhat-cell quantization matrices.

use qcs::oscillator::{build_oscillator_seed, bz_comparison, BzType};
use qcs::report::CheckReport;

fn show(rep: &CheckReport) {
    println!("# {}", rep.name);
    for item in &rep.items {
        println!("  [{:?}] {}", item.status, item.identity);
    }
    assert!(rep.all_passed());
}

fn main() -> qcs::Result<()> {
    let osc = build_oscillator_seed()?;
    println!("a  = {}", osc.a);
    println!("a* = {}\n", osc.a_star);
    show(&osc.exchange_check()?);
    show(&osc.oscillator_relations()?);
    show(&osc.bruhat_relations()?);
    show(&osc.mutation_involution_check()?);
    show(&bz_comparison(BzType::A1)?);
    show(&bz_comparison(BzType::A2)?);
    Ok(())
}
