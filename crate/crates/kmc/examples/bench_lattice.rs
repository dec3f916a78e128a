use kmc::cartan::parse_matrix;
use kmc::field::{Rationals};
use kmc::invariants::{Expr, Lattice};
use kmc::weyl::ReflectionAction;
use num_bigint::BigInt;
use std::time::Instant;

fn max_bits(lat: &mut Lattice<Rationals>, e: &Expr) -> (u64, usize) {
    let s = lat.subspace(e);
    let mut bits = 0u64;
    let mut dim_top = 0;
    for k in 0..=s.max_poly_degree() {
        let b = s.basis(k);
        dim_top = b.cols();
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                bits = bits.max(b.at(r, c).bits());
            }
        }
    }
    (bits, dim_top)
}

fn main() {
    let m = parse_matrix("2,-1,-3;-3,2,-1;-2,-4,2").unwrap();
    let action = ReflectionAction::new(&m);
    for n in [40usize, 48, 56] {
        println!("== N = {n}");
        let mut lat = Lattice::new(Rationals, action.clone(), n);
        for (name, e) in [
            ("P1", Expr::p(&[0])),
            ("P3", Expr::p(&[2])),
            ("P12", Expr::p(&[0, 1])),
            ("P123", Expr::p(&[0, 1, 2])),
            ("P12+P3", Expr::sum(vec![Expr::p(&[0, 1]), Expr::p(&[2])])),
        ] {
            let t = Instant::now();
            let (bits, dim) = max_bits(&mut lat, &e);
            println!("  {name:8} {:>8.2?}  max entry bits {bits:>6}  top dim {dim}", t.elapsed());
        }
        let _ = BigInt::from(0);
    }
}
