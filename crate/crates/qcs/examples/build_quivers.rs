//! Build a window of the limit quiver and its surgered companion, then run
//! one green round and watch the marked band translate downward.

use qcs::lie::{coxeter_word, make_datum, Family};
use qcs::quiver::{gamma_c, gamma_e, green_round, Mark, Window};

fn main() -> qcs::Result<()> {
    let datum = make_datum(Family::A, 2)?;
    let cox = coxeter_word(&datum, &[1, 2])?;
    println!("A2, word (1,2): orientation {:?}, heights {:?}", cox.orientation, cox.heights);

    let window = Window::new(-20, 8, 4)?;
    let limit = gamma_e(&datum, &cox, window)?;
    println!("\nlimit quiver: {} vertices, {} arrows", limit.vset.len(), limit.arrows.len());

    let show = |vs: &[qcs::quiver::VertexId]| {
        vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    };
    let mq = gamma_c(&datum, &cox, window)?;
    println!("surgered quiver: reds   {}", show(&mq.quiver.vertices_of_mark(Mark::Red)));
    println!("                 greens {}", show(&mq.quiver.vertices_of_mark(Mark::Green)));
    println!(
        "green word (top to bottom): {:?}  (a reduced word for w0)",
        mq.green_order.iter().map(|g| g.node).collect::<Vec<_>>()
    );
    println!("h_c = {}", mq.h_c);

    let (next, mutated) = green_round(&mq)?;
    println!("\nafter one green round (mutations at {}):", show(&mutated));
    println!("   new greens {}", show(&next.quiver.vertices_of_mark(Mark::Green)));
    println!("   the whole band moved down one step; verified on the safe core.");

    println!("\nJSON form of the surgered quiver on [-8, 2]:");
    let small = gamma_c(&datum, &cox, Window::new(-12, 4, 0)?)?;
    println!("{}", serde_json::to_string_pretty(&qcs::quiver::quiver_to_json(&small.quiver)).unwrap());
    Ok(())
}
