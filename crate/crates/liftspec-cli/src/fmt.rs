//! Deterministic numeric formatting: 12 significant digits, half-even
//! rounding (inherited from Rust's float formatting), plain decimal for
//! moderate magnitudes and scientific notation otherwise.

pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let out = if (-5..12).contains(&mag) {
        let digits = (11 - mag).max(0) as usize;
        trim_zeros(format!("{x:.digits$}"))
    } else {
        let s = format!("{x:.11e}");
        match s.split_once('e') {
            Some((mantissa, exp)) => format!("{}e{exp}", trim_zeros(mantissa.to_string())),
            None => s,
        }
    };
    if out == "-0" {
        "0".into()
    } else {
        out
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let s = s.trim_end_matches('0');
    s.trim_end_matches('.').to_string()
}

/// `a+bi` with both parts at 12 significant digits; pure-real and
/// pure-imaginary values collapse to one term.
pub fn fmt12_complex(re: f64, im: f64) -> String {
    let re_zero = re.abs() < 5e-13;
    let im_zero = im.abs() < 5e-13;
    match (re_zero, im_zero) {
        (_, true) => fmt12(if re_zero { 0.0 } else { re }),
        (true, false) => format!("{}i", fmt12(im)),
        (false, false) => {
            if im >= 0.0 {
                format!("{}+{}i", fmt12(re), fmt12(im))
            } else {
                format!("{}{}i", fmt12(re), fmt12(im))
            }
        }
    }
}
