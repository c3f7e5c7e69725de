fn main() {
    let wobble = |x: f64| {
        let bits = x.to_bits().wrapping_mul(0x9E37_79B9_7F4A_7C15);
        (bits >> 11) as f64 / (1u64 << 53) as f64
    };
    let noisy = move |x: f64| x + 1e-6 * wobble(x);
    let r = hartman::numerics::derivative(noisy, 0.3, 1e-4);
    println!("{r:?}");
    for (name, x0) in [("exp", 0.7_f64), ("sin", 1.1), ("ln", 2.3)] {
        let est = match name {
            "exp" => hartman::numerics::derivative(f64::exp, x0, 1e-4 * x0.max(1.0)),
            "sin" => hartman::numerics::derivative(f64::sin, x0, 1e-4 * x0.max(1.0)),
            _ => hartman::numerics::derivative(f64::ln, x0, 1e-4 * x0.max(1.0)),
        }.unwrap();
        let exact = match name { "exp" => x0.exp(), "sin" => x0.cos(), _ => 1.0 / x0 };
        println!("{name}: value {} err {:.3e} est {:.3e}", est.value, (est.value-exact).abs(), est.error_estimate);
    }
}
