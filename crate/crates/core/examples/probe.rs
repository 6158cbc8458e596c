use rand::{Rng, SeedableRng};
use speclab::orlicz::embedding_constant_m;
use speclab::partition::{profile, SequenceId};
use speclab::potentials::{Expr, Potential, RadialPiece};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for &p in &[1.25f64, 1.5, 2.0] {
        let (mp, _, _) = embedding_constant_m(p);
        let geo = (std::f64::consts::PI * ((2f64).exp() - 1.0)).powf(1.0 - 1.0 / p);
        let mut worst: f64 = 0.0;
        for trial in 0..12 {
            // random piecewise-constant radial V on ring n
            let n = rng.gen_range(0..3) as i64;
            let (r0, r1) = ((n as f64).exp(), ((n + 1) as f64).exp());
            let cuts = rng.gen_range(1..4);
            let mut pieces = Vec::new();
            let mut lo = r0;
            for i in 0..cuts {
                let hi = if i == cuts - 1 { r1 } else { rng.gen_range(lo..r1) };
                pieces.push(RadialPiece::new(lo, hi, Expr::Const(rng.gen_range(0.0..5.0))));
                lo = hi;
            }
            let v = Potential::radial(pieces);
            let sb = profile(&v, SequenceId::ScriptB, (n, n)).entries[&n].clone();
            let bp = profile(&v, SequenceId::BPow(p), (n, n)).entries[&n].clone();
            if let (Some(s), Some(b)) = (sb.value, bp.value) {
                if b > 0.0 {
                    let ratio = s / (mp * geo * b);
                    if ratio > worst { worst = ratio; }
                    if trial < 2 { println!("p={p} n={n}: scriptB {s:.4e} vs M(p)·geo·B {:.4e} ratio {ratio:.3}", mp*geo*b); }
                }
            }
        }
        println!("p={p}: worst ratio scriptB/(M(p)·(π(e²−1))^(1−1/p)·B) = {worst:.4}");
    }
}
