// Exact rationals and linear algebra: overflow promotion, solving,
// inverses and kernels.

use tclab::exactla::{left_kernel_basis, RatMat, RatVec, Rational, Solution};

pub fn run_example() {
    // i64 products overflow here; the value is promoted and comes back exactly
    let big = Rational::new(i64::MAX, 3);
    let sq = &big * &big;
    assert_eq!(&sq / &big, big);
    println!("(MAX/3)^2 = {sq}");

    let third: Rational = "1/3".parse().unwrap();
    let sum: Rational = (0..3).map(|_| third.clone()).sum();
    assert_eq!(sum, Rational::one());

    let a = RatMat::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
    let inv = a.inverse().unwrap();
    assert_eq!(a.mul(&inv), RatMat::identity(3));
    println!("inverse rows:");
    for r in inv.rows() {
        println!("  {r}");
    }

    let b = RatVec::from_ints(&[1, 2, 3]);
    let Solution::Unique(x) = a.solve(&b).unwrap() else {
        panic!("a is invertible")
    };
    assert_eq!(a.mul_vec(&x), b);
    println!("a x = {b}  =>  x = {x}");

    let singular = RatMat::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
    assert_eq!(singular.rank(), 1);
    let ns = singular.nullspace();
    assert_eq!(ns.len(), 2);
    assert!(ns.iter().all(|v| singular.mul_vec(v).is_zero()));
    match singular.solve(&RatVec::from_ints(&[1, 3])).unwrap() {
        Solution::NoSolution => println!("inconsistent system detected"),
        _ => panic!("expected no solution"),
    }

    // linear dependences among the rays of the pentagon fan
    let g = RatMat::from_ints(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1]]);
    let k = left_kernel_basis(&g).unwrap();
    assert_eq!(k.nrows(), 3);
    assert!(k.mul(&g).rows().iter().all(RatVec::is_zero));
    println!("kernel of the ray matrix has dimension {}", k.nrows());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
