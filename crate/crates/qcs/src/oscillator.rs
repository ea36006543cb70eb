//! The three-vertex quantum cluster algebra extracted from the rank-one
//! window, its oscillator-algebra and double-Bruhat presentations, and the
//! comparison of the computed quantization with the elementary-matrix
//! mutation of the printed Bruhat-cell quantization matrices.
//!
//! Product orders follow the convention documented in [`crate::torus`]: the
//! t-commutation displays hold verbatim; the exchange/determinant/Casimir
//! displays are evaluated in the mirrored order.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gvector::g_stabilized;
use crate::lie::{coxeter_word, make_datum, Family};
use crate::matrix::IntMatrix;
use crate::quantization::{lambda_c, lambda_mutate_raw};
use crate::quiver::{gamma_c, VertexId, VertexSet, Window};
use crate::report::CheckReport;
use crate::torus::{Frame, Laurent, QTorusElement, QuantumSeed};

/// The ice seed on vertices `c = (1,-4)`, `a = (1,-2)` (mutable),
/// `b = (1,0)`, with the quantization matrix inherited from the rank-one
/// window and invertible frozen variables.
pub struct OscillatorSeed {
    pub frame: Arc<Frame>,
    pub seed: QuantumSeed,
    pub a: QTorusElement,
    pub b: QTorusElement,
    pub c: QTorusElement,
    pub a_star: QTorusElement,
    vars: BTreeMap<u32, QTorusElement>,
}

pub const VX_A: VertexId = VertexId { node: 1, level: -2 };
pub const VX_B: VertexId = VertexId { node: 1, level: 0 };
pub const VX_C: VertexId = VertexId { node: 1, level: -4 };

/// Builds the fixed three-vertex seed and verifies its quantization matrix
/// against the surgered quantization matrix of a rank-one window.
pub fn build_oscillator_seed() -> Result<OscillatorSeed> {
    let datum = make_datum(Family::A, 1)?;
    let cox = coxeter_word(&datum, &[1])?;
    let vset = VertexSet::new(&datum, &cox, Window::new(-4, 0, 0)?);
    let n = vset.len();
    assert_eq!(n, 3);
    let idx = |v: VertexId| vset.index_of(v).unwrap();
    // Lambda in the (a,b,c) presentation: ab = t ba, ac = t ca, bc = cb
    let mut lam = IntMatrix::zeros(n, n);
    for (u, v, e) in [(VX_A, VX_B, 1), (VX_A, VX_C, 1), (VX_B, VX_C, 0)] {
        lam.set(idx(u), idx(v), e);
        lam.set(idx(v), idx(u), -e);
    }
    // arrows b -> a and c -> a
    let mut b = IntMatrix::zeros(n, n);
    for (s, t) in [(VX_B, VX_A), (VX_C, VX_A)] {
        b.set(idx(s), idx(t), 1);
        b.set(idx(t), idx(s), -1);
    }
    // B~^T Lambda = (-2, 0, 0) in the (a, b, c) order
    for (w, want) in [(VX_A, -2i64), (VX_B, 0), (VX_C, 0)] {
        let mut total = 0;
        for (u, bua) in b.col(idx(VX_A)) {
            total += bua * lam.get(u, idx(w));
        }
        if total != want {
            return Err(Error::MismatchWithLambdaC(format!(
                "B~^T Lambda at {w}: {total} != {want}"
            )));
        }
    }
    // consistency with the surgered quantization matrix of a real window
    let window = Window::new(-26, 14, 6)?;
    let mq = gamma_c(&datum, &cox, window)?;
    let (ginf, _) = g_stabilized(&datum, &mq, None)?;
    let lamc = lambda_c(&datum, &mq.vset, &ginf)?;
    for u in [VX_A, VX_B, VX_C] {
        for v in [VX_A, VX_B, VX_C] {
            if lam.get(idx(u), idx(v)) != lamc.entry(u, v) {
                return Err(Error::MismatchWithLambdaC(format!(
                    "entry ({u},{v}): {} != {}",
                    lam.get(idx(u), idx(v)),
                    lamc.entry(u, v)
                )));
            }
        }
    }

    let (ib, ic, ia) = (idx(VX_B), idx(VX_C), idx(VX_A));
    let frame = Frame::new(vset, lam, (-4, 0));
    let mut seed = QuantumSeed::new(frame.clone(), b);
    seed.frozen.insert(ib);
    seed.frozen.insert(ic);
    seed.labels.insert(ia, "a".into());
    seed.labels.insert(ib, "b".into());
    seed.labels.insert(ic, "c".into());
    let vars = seed.initial_cluster();
    let a = frame.monomial(&[(VX_A, 1)])?;
    let bb = frame.monomial(&[(VX_B, 1)])?;
    let cc = frame.monomial(&[(VX_C, 1)])?;
    let (_, a_star) = seed.quantum_mutate(&vars, VX_A)?;
    Ok(OscillatorSeed { frame, seed, a, b: bb, c: cc, a_star, vars })
}

impl OscillatorSeed {
    fn bc(&self) -> QTorusElement {
        // b and c commute, so this commutative monomial is unambiguous
        self.frame.monomial(&[(VX_B, 1), (VX_C, 1)]).unwrap()
    }

    /// Mutating twice at the mutable vertex returns the original variable;
    /// the second mutation goes through the sum-variable division path.
    pub fn mutation_involution_check(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new("quantum mutation involution");
        let (seed1, x1) = self.seed.quantum_mutate(&self.vars, VX_A)?;
        let mut vars1 = self.vars.clone();
        vars1.insert(self.frame.index_of(VX_A)?, x1);
        let (seed2, x2) = seed1.quantum_mutate(&vars1, VX_A)?;
        report.record(
            "second mutation returns the original variable",
            x2 == self.a,
            x2.sub(&self.a)?.to_string(),
        );
        report.record(
            "seed data (B, Lambda) returns to the original",
            seed2.b == self.seed.b && seed2.lambda == self.seed.lambda,
            "seed mismatch",
        );
        Ok(report)
    }

    fn z(&self) -> QTorusElement {
        self.frame.monomial(&[(VX_B, 1), (VX_C, -1)]).unwrap()
    }

    /// The exchange relations of the unique mutable vertex.
    pub fn exchange_check(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new("oscillator exchange relations");
        let one = self.frame.one();
        let expected = self
            .frame
            .monomial(&[(VX_A, -1), (VX_B, 1), (VX_C, 1)])?
            .add(&self.frame.monomial(&[(VX_A, -1)])?)?;
        report.record(
            "a* = M(-e_a + e_b + e_c) + M(-e_a)",
            self.a_star == expected,
            self.a_star.sub(&expected)?.to_string(),
        );
        let bc = self.bc();
        let lhs1 = self.a_star.mul(&self.a)?;
        let rhs1 = one.add(&bc.scale(&Laurent::t_half(-2)))?;
        report.record(
            "a a* = 1 + t^-1 bc (mirrored order)",
            lhs1 == rhs1,
            lhs1.sub(&rhs1)?.to_string(),
        );
        let lhs2 = self.a.mul(&self.a_star)?;
        let rhs2 = one.add(&bc.scale(&Laurent::t_half(2)))?;
        report.record(
            "a* a = 1 + t bc (mirrored order)",
            lhs2 == rhs2,
            lhs2.sub(&rhs2)?.to_string(),
        );
        // same relation as the QQ-system at the corresponding window vertices
        let ctx = crate::torus::identities::A1Context::with_depth(6)?;
        let vars = ctx.seed.initial_cluster();
        let (_, qq_var) = ctx.seed.quantum_mutate(&vars, VX_A)?;
        let corresponds = elements_correspond(&qq_var, &self.a_star);
        report.record(
            "a* equals the QQ mutation variable at the window vertex",
            corresponds,
            format!("window variable {qq_var}"),
        );
        Ok(report)
    }

    /// The oscillator-homomorphism relations, verified as exact torus
    /// identities on the images.
    pub fn oscillator_relations(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new("oscillator algebra relations");
        let z = self.z();
        let phi_e = z.mul(&self.a)?;
        let phi_f = self.a_star.clone();
        // phi(k) = -(t - t^-1)^2 b^2
        let mut minus_sq = Laurent::zero();
        minus_sq.add_term(4, -1);
        minus_sq.add_term(0, 2);
        minus_sq.add_term(-4, -1);
        let b2 = self.frame.monomial(&[(VX_B, 2)])?;
        let phi_k = b2.scale(&minus_sq);

        let lhs = phi_e.mul(&phi_k)?;
        let rhs = phi_k.mul(&phi_e)?.scale(&Laurent::t_half(4));
        report.record(
            "k e = t^2 e k (mirrored order)",
            lhs == rhs,
            lhs.sub(&rhs)?.to_string(),
        );
        let lhs = phi_f.mul(&phi_k)?;
        let rhs = phi_k.mul(&phi_f)?.scale(&Laurent::t_half(-4));
        report.record(
            "k f = t^-2 f k (mirrored order)",
            lhs == rhs,
            lhs.sub(&rhs)?.to_string(),
        );
        // k k^-1 = 1: the monomial parts cancel; the scalar -(t-t^-1)^2 is
        // invertible only in the fraction field and cancels identically
        let kk = b2.mul(&b2.monomial_inverse()?)?;
        report.record("k k^-1 = 1 (scalar factor cancels)", kk.is_one(), kk.to_string());
        for (name, x) in [("a", &self.a), ("a*", &self.a_star), ("b", &self.b), ("c", &self.c)] {
            let lhs = z.mul(x)?;
            let rhs = x.mul(&z)?;
            report.record(
                format!("z central: z {name} = {name} z"),
                lhs == rhs,
                lhs.sub(&rhs)?.to_string(),
            );
        }
        // Casimir identities
        let lhs = phi_f.mul(&phi_e)?.sub(&b2.scale(&Laurent::t_half(-2)))?;
        report.record(
            "ef + t^-1 k/(t-t^-1)^2 = C (mirrored order)",
            lhs == z,
            lhs.sub(&z)?.to_string(),
        );
        let lhs = phi_e.mul(&phi_f)?.sub(&b2.scale(&Laurent::t_half(2)))?;
        report.record(
            "fe + t k/(t-t^-1)^2 = C (mirrored order)",
            lhs == z,
            lhs.sub(&z)?.to_string(),
        );
        Ok(report)
    }

    /// The eight-relation presentation of the quantum double Bruhat cell,
    /// with `d := a*`.
    pub fn bruhat_relations(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new("quantum double Bruhat cell relations");
        let one = self.frame.one();
        let d = &self.a_star;
        let tc = |x: &QTorusElement, y: &QTorusElement| -> Result<(QTorusElement, QTorusElement)> {
            Ok((x.mul(y)?, y.mul(x)?.scale(&Laurent::t_half(2))))
        };
        for (name, x, y) in [
            ("ab = t ba", &self.a, &self.b),
            ("cd = t dc", &self.c, d),
            ("ac = t ca", &self.a, &self.c),
            ("bd = t db", &self.b, d),
        ] {
            let (lhs, rhs) = tc(x, y)?;
            report.record(name, lhs == rhs, lhs.sub(&rhs)?.to_string());
        }
        let bb = self.b.mul(&self.b.monomial_inverse()?)?;
        report.record("b b^-1 = 1", bb.is_one(), bb.to_string());
        let cc = self.c.mul(&self.c.monomial_inverse()?)?;
        report.record("c c^-1 = 1", cc.is_one(), cc.to_string());
        let lhs = self.b.mul(&self.c)?;
        let rhs = self.c.mul(&self.b)?;
        report.record("bc = cb", lhs == rhs, lhs.sub(&rhs)?.to_string());
        let bc = self.bc();
        let det1 = d.mul(&self.a)?.sub(&bc.scale(&Laurent::t_half(-2)))?;
        report.record(
            "ad - t^-1 bc = 1 (mirrored order)",
            det1 == one,
            det1.sub(&one)?.to_string(),
        );
        let det2 = self.a.mul(d)?.sub(&bc.scale(&Laurent::t_half(2)))?;
        report.record(
            "da - t bc = 1 (mirrored order)",
            det2 == one,
            det2.sub(&one)?.to_string(),
        );
        Ok(report)
    }
}

/// True when the big-window element and the small-frame element have the
/// same terms under the vertex-label correspondence.
fn elements_correspond(big: &QTorusElement, small: &QTorusElement) -> bool {
    let to_labeled = |e: &QTorusElement| -> BTreeMap<Vec<(VertexId, i32)>, Laurent> {
        e.terms()
            .map(|(u, c)| {
                let key: Vec<(VertexId, i32)> = u
                    .0
                    .iter()
                    .map(|&(i, k)| (e.frame.vset.vertex(i), k))
                    .collect();
                (key, c.clone())
            })
            .collect()
    };
    to_labeled(big) == to_labeled(small)
}

/// Which of the two worked Bruhat-cell comparisons to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BzType {
    A1,
    A2,
}

/// Compares the quantization induced on the finite subquiver (the submatrix
/// of the surgered quantization matrix) with the elementary-matrix mutation
/// of the printed Bruhat-cell quantization matrix, and reports the observed
/// rescaling constant.
pub fn bz_comparison(which: BzType) -> Result<CheckReport> {
    match which {
        BzType::A1 => bz_a1(),
        BzType::A2 => bz_a2(),
    }
}

fn bz_a1() -> Result<CheckReport> {
    let mut report = CheckReport::new("Bruhat-cell quantization comparison, rank 1");
    let datum = make_datum(Family::A, 1)?;
    let cox = coxeter_word(&datum, &[1])?;
    let window = Window::new(-26, 14, 6)?;
    let mq = gamma_c(&datum, &cox, window)?;
    let (ginf, _) = g_stabilized(&datum, &mq, None)?;
    let lamc = lambda_c(&datum, &mq.vset, &ginf)?;
    // order (2, 0, -2), mutable 0; the printed seed quiver has arrows
    // 2 -> 0 and -2 -> 0
    let order = [2, 0, -2].map(|r| VertexId::new(1, r));
    let lam_bz = dense3(&[[0, -1, 0], [1, 0, 1], [0, -1, 0]]);
    let mut b = IntMatrix::zeros(3, 3);
    for (s, t) in [(0usize, 1usize), (2, 1)] {
        b.set(s as u32, t as u32, 1);
        b.set(t as u32, s as u32, -1);
    }
    let l0_plus = lambda_mutate_raw(&lam_bz, &b, 1, 1);
    let l0_minus = lambda_mutate_raw(&lam_bz, &b, 1, -1);
    report.record(
        "mutation is independent of the sign choice",
        l0_plus == l0_minus,
        "sign-dependent result",
    );
    let lbar = submatrix(&lamc, &order);
    report.record(
        "mutated matrix equals the window submatrix (constant +1)",
        l0_plus == lbar,
        format!("observed {:?} vs {:?}", collect(&l0_plus), collect(&lbar)),
    );
    Ok(report)
}

fn bz_a2() -> Result<CheckReport> {
    let mut report = CheckReport::new("Bruhat-cell quantization comparison, rank 2");
    let datum = make_datum(Family::A, 2)?;
    let cox = coxeter_word(&datum, &[1, 2])?;
    let window = Window::new(-44, 16, 10)?;
    let mq = gamma_c(&datum, &cox, window)?;
    let (ginf, _) = g_stabilized(&datum, &mq, None)?;
    let lamc = lambda_c(&datum, &mq.vset, &ginf)?;
    // subquiver vertices in ascending total order
    let v = VertexId::new;
    let order = [
        v(1, -6),
        v(1, -4),
        v(2, -3),
        v(1, -2),
        v(2, -1),
        v(1, 0),
        v(2, 1),
        v(1, 2),
    ];
    let lam_bz_rows: [[i64; 8]; 8] = [
        [0, -1, 0, -1, -1, 0, 0, 0],
        [1, 0, 0, -1, 0, 0, 1, 0],
        [0, 0, 0, -1, -1, -1, 0, 0],
        [1, 1, 1, 0, 0, 1, 1, 1],
        [1, 0, 1, 0, 0, 0, 1, 1],
        [0, 0, 1, -1, 0, 0, 0, 1],
        [0, -1, 0, -1, -1, 0, 0, 0],
        [0, 0, 0, -1, -1, -1, 0, 0],
    ];
    let mut lam_bz = IntMatrix::zeros(8, 8);
    for (i, row) in lam_bz_rows.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            lam_bz.set(i as u32, j as u32, e);
        }
    }
    // the mutated-seed quiver: arrows of the printed eight-vertex quiver
    let q_arrows = [
        (v(2, 1), v(1, 0)),
        (v(1, 0), v(1, 2)),
        (v(1, 0), v(2, -1)),
        (v(2, -1), v(2, 1)),
        (v(2, -1), v(1, -2)),
        (v(2, -1), v(2, -3)),
        (v(1, -2), v(1, 0)),
        (v(1, -2), v(1, -4)),
        (v(1, -4), v(2, -1)),
        (v(1, -4), v(1, -6)),
        (v(2, -3), v(1, -4)),
    ];
    let pos = |u: VertexId| order.iter().position(|&w| w == u).unwrap() as u32;
    let mut b = IntMatrix::zeros(8, 8);
    for &(s, t) in &q_arrows {
        b.add_to(pos(s), pos(t), 1);
        b.add_to(pos(t), pos(s), -1);
    }
    let k = pos(v(1, -2));
    let l0_plus = lambda_mutate_raw(&lam_bz, &b, k, 1);
    let l0_minus = lambda_mutate_raw(&lam_bz, &b, k, -1);
    report.record(
        "mutation is independent of the sign choice",
        l0_plus == l0_minus,
        "sign-dependent result",
    );
    // mutating the printed quiver at (1,-2) must give the window subquiver,
    // up to arrows between frozen vertices (omitted in ice quivers)
    let frozen = [v(1, 2), v(2, 1), v(2, -3), v(1, -6)];
    let mut bq = b.clone();
    bq.mutate(k);
    let bwin = mq.quiver.b_matrix();
    let sub_ok = (0..8).all(|a| {
        (0..8).all(|c| {
            let (u, w) = (order[a as usize], order[c as usize]);
            if frozen.contains(&u) && frozen.contains(&w) {
                return true;
            }
            bq.get(a, c)
                == bwin.get(mq.vset.index_of(u).unwrap(), mq.vset.index_of(w).unwrap())
        })
    });
    report.record(
        "printed quiver mutates onto the window subquiver",
        sub_ok,
        "subquiver mismatch",
    );
    let lbar = submatrix(&lamc, &order);
    let neg = lbar.scaled(-1);
    report.record(
        "mutated matrix equals minus the window submatrix (constant -1)",
        l0_plus == neg,
        format!("observed {:?} vs {:?}", collect(&l0_plus), collect(&neg)),
    );
    Ok(report)
}

fn dense3(rows: &[[i64; 3]; 3]) -> IntMatrix {
    let mut m = IntMatrix::zeros(3, 3);
    for (i, row) in rows.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            m.set(i as u32, j as u32, e);
        }
    }
    m
}

fn submatrix(lam: &crate::quantization::QuantizationMatrix, order: &[VertexId]) -> IntMatrix {
    let n = order.len() as u32;
    let mut m = IntMatrix::zeros(n, n);
    for (i, &u) in order.iter().enumerate() {
        for (j, &w) in order.iter().enumerate() {
            m.set(i as u32, j as u32, lam.entry(u, w));
        }
    }
    m
}

fn collect(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.nrows)
        .map(|r| (0..m.ncols).map(|c| m.get(r, c)).collect())
        .collect()
}
