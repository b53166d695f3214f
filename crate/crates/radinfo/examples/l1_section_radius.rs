//! Random sections of the cross-polytope: exact vertex enumeration at small
//! sizes, the projected-descent lower bound, and the logarithmic rate of
//! the expected section radius.
//!
//! Run with: cargo run --release --example l1_section_radius

use radinfo::l1::{gaussian_info, kgg_rate_check, radius_zero_exact, radius_zero_lower};
use radinfo::rng::RngStream;

fn main() {
    println!("exact vs lower bound (m = 10):");
    for n in [1usize, 3, 5, 8] {
        let g = gaussian_info(n, 10, RngStream::new(61, n as u64));
        let exact = radius_zero_exact(&g).unwrap();
        let lower = radius_zero_lower(&g, 60, RngStream::new(62, n as u64)).unwrap();
        println!("  n={n}: exact {exact:.10}  lower {lower:.10}  gap {:.1e}", exact - lower);
    }

    println!("\nexpected section radius vs min(1, sqrt(ln(1+m/n)/n)) at m = 64:");
    let rows = kgg_rate_check(64, &[4, 8, 16, 32], 20, 30, RngStream::new(63, 0)).unwrap();
    for r in rows {
        println!(
            "  n={:>2}: mean {:.4} (se {:.4})  rate {:.4}  ratio {:.3}",
            r.n, r.mean_lower, r.std_error, r.rate, r.ratio
        );
    }
}
