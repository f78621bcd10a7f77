use eulergamma::{euler_gamma, SeriesParams};
use std::time::Instant;

fn main() {
    for d in [100u32, 500, 1000] {
        let p = SeriesParams::from_decimal("1", "1", d).unwrap();
        let t0 = Instant::now();
        let r = euler_gamma(&p);
        println!(
            "D={d}: {:?} terms={:?} bound=10^{:.1}",
            t0.elapsed(),
            r.term_counts,
            r.error_bound.log10()
        );
        let gamma = eulergamma::oracle::reference_gamma(d).unwrap().value;
        let diff = r.value.sub_p(&gamma, 4000).abs();
        println!("   diff vs oracle: 10^{:.1}", diff.log10_abs());
    }
}
