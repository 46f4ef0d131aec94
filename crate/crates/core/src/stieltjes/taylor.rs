use rug::Float;

/// Coefficients `d_0..=d_order` of `(L + ln(1+u))^ℓ / (1+u) = Σ d_q u^q`.
///
/// With `L = ln y` and `u = ε/y` these give the Taylor expansion of
/// `h(x) = ln^ℓ(x)/x` about `y`: `h^{(q)}(y)/q! = d_q / y^{q+1}`.
pub(super) fn log_power_coefficients(ell: u32, ln_y: &Float, order: usize) -> Vec<Float> {
    let bits = ln_y.prec();
    let len = order + 1;
    // L + ln(1+u)
    let mut base: Vec<Float> = Vec::with_capacity(len);
    base.push(ln_y.clone());
    for i in 1..len {
        let c = Float::with_val(bits, 1) / i as u32;
        base.push(if i % 2 == 1 { c } else { -c });
    }

    let mut power: Vec<Float> = vec![Float::new(bits); len];
    power[0] = Float::with_val(bits, 1);
    for _ in 0..ell {
        power = truncated_product(&power, &base);
    }

    // divide by 1+u: d_q = P_q - d_{q-1}
    let mut out: Vec<Float> = Vec::with_capacity(len);
    for (q, p) in power.into_iter().enumerate() {
        if q == 0 {
            out.push(p);
        } else {
            let prev = &out[q - 1];
            let d = Float::with_val(bits, &p - prev);
            out.push(d);
        }
    }
    out
}

fn truncated_product(x: &[Float], y: &[Float]) -> Vec<Float> {
    let bits = x[0].prec();
    (0..x.len())
        .map(|q| {
            let mut acc = Float::new(bits);
            for i in 0..=q {
                if !x[i].is_zero() {
                    acc += Float::with_val(bits, &x[i] * &y[q - i]);
                }
            }
            acc
        })
        .collect()
}
