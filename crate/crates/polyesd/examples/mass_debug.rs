use polyesd::matpoly::WeightScheme;
use polyesd::theory::LimitDensity;
use std::time::Instant;

fn main() {
    for c in [0.5, 1.0, 2.0] {
        for (name, scheme) in [
            ("kac", WeightScheme::Kac { c }),
            ("elliptic", WeightScheme::Elliptic { c }),
            ("weyl", WeightScheme::Weyl { c }),
        ] {
            let law = LimitDensity::from_scheme(&scheme, 6).unwrap();
            let t = Instant::now();
            let r_tail = law.tail_radius(1e-9);
            let mass = law.total_mass_by_quadrature(1e-9);
            println!(
                "{name:9} c={c}: R={r_tail:.3e} mass-1={:+.3e}  ({:?})",
                mass - 1.0,
                t.elapsed()
            );
        }
    }
}
