use polyesd::linalg::eigenvalues;
use polyesd::matpoly::{MatrixPolynomial, WeightScheme};
use polyesd::randgen::{CoefficientDistribution, SeedSpec};
use std::time::Instant;

fn main() {
    let spec = SeedSpec::new(42);
    for (n, k) in [(4usize, 50usize), (4, 120), (4, 200)] {
        let dists = vec![CoefficientDistribution::ComplexGaussian; k + 1];
        let poly =
            MatrixPolynomial::build(&WeightScheme::Kac { c: 1.0 }, &dists, n, k, &spec, 0).unwrap();
        let t0 = Instant::now();
        let m = poly.companion_matrix().unwrap();
        let t1 = Instant::now();
        let eig = eigenvalues(&m).unwrap();
        let t2 = Instant::now();
        let mean_mod: f64 = eig.iter().map(|l| l.norm()).sum::<f64>() / eig.len() as f64;
        let in_annulus = eig.iter().filter(|l| { let r = l.norm(); (0.9..=1.1).contains(&r) }).count();
        println!(
            "nk={:4}  companion {:>9.1?}  eigen {:>9.1?}  mean|λ|={:.4}  annulus frac={:.3}",
            n * k,
            t1 - t0,
            t2 - t1,
            mean_mod,
            in_annulus as f64 / eig.len() as f64
        );
    }
}
