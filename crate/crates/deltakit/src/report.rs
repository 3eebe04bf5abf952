//! Deterministic report formatting: fixed 9-significant-digit floats and
//! stable orderings, so identical inputs produce byte-identical output.

/// Scientific notation with 9 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000e0".to_string();
    }
    format!("{x:.8e}")
}

/// Render an integer homology line: "H_k = ...".
pub fn homology_line(k: usize, group: &crate::kan::homology::GroupDescription) -> String {
    format!("H_{k} = {group}")
}
