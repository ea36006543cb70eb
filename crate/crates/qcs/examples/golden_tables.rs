//! Print the three rank-two tables (limit quantization matrix, stabilized
//! G-matrix, surgered quantization matrix) on the standard 11-vertex window.

use qcs::gvector::g_stabilized;
use qcs::lie::{coxeter_word, make_datum, Family};
use qcs::quantization::{lambda_c, lambda_e_region};
use qcs::quiver::{gamma_c, VertexId, Window};

fn table(label: &str, verts: &[VertexId], entry: impl Fn(VertexId, VertexId) -> i64) {
    println!("\n{label}:");
    print!("{:>7}", "");
    for v in verts {
        print!("{:>8}", v.to_string());
    }
    println!();
    for &u in verts {
        print!("{:>7}", u.to_string());
        for &v in verts {
            print!("{:>8}", entry(u, v));
        }
        println!();
    }
}

fn main() -> qcs::Result<()> {
    let datum = make_datum(Family::A, 2)?;
    let cox = coxeter_word(&datum, &[1, 2])?;
    let window = Window::with_core(-12, 12, datum.coxeter_number)?;
    let mq = gamma_c(&datum, &cox, window)?;
    let (ginf, rounds) = g_stabilized(&datum, &mq, None)?;
    println!("stabilized after {rounds} green rounds");
    let lam_e = lambda_e_region(&datum, &mq.vset, -12, 6);
    let lam_c = lambda_c(&datum, &mq.vset, &ginf)?;

    let v = VertexId::new;
    let verts = [
        v(1, -8), v(2, -7), v(1, -6), v(2, -5), v(1, -4), v(2, -3),
        v(1, -2), v(2, -1), v(1, 0), v(2, 1), v(1, 2),
    ];
    table("Lambda_e", &verts, |u, w| lam_e.entry(u, w));
    table("G-infinity (columns are stabilized g-vectors)", &verts, |u, w| ginf.entry(u, w));
    table("Lambda_c = (G-inf)^T Lambda_e G-inf", &verts, |u, w| lam_c.entry(u, w));
    Ok(())
}
