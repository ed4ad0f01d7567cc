//! Fourier transform on a finite abelian group.
//!
//! cargo run --example fourier -- Z2xZ4

use qcrel::fourier::{convolution_theorem_error, convolve, fourier_matrix, fourier_transform, inverse_fourier, GroupFunction};
use qcrel::text::parse_group;
use qcrel::GroupHomTable;

fn main() -> qcrel::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "Z2xZ2".into());
    let g = parse_group(&spec)?;
    let m = fourier_matrix(&g, &GroupHomTable::identity(&g))?;
    println!("Fourier matrix of {g}:");
    for i in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|j| qcrel::cli::fmt_complex(m[(i, j)])).collect();
        println!("  {}", row.join(" "));
    }

    let f = GroupFunction::from_real(&g, &(0..g.order()).map(|i| i as f64).collect::<Vec<_>>())?;
    let t = fourier_transform(&f);
    println!("f = 0,1,2,...  FT(f)(0) = {}", t.values[0]);
    println!("round trip error {:.1e}", inverse_fourier(&t).max_abs_diff(&f));
    let d = GroupFunction::delta(&g, 1 % g.order());
    println!("f * delta_1 (0) = {}", convolve(&f, &d)?.values[0]);
    println!("convolution theorem error {:.1e}", convolution_theorem_error(&f, &d)?);
    Ok(())
}
