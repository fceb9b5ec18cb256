//! Quantization index modulation over a real-valued coefficient.
//!
//! A bit selects one of two interleaved lattices of step 2*delta (the
//! even multiples of delta for 0, the odd ones for 1); embedding snaps
//! the coefficient to the nearest point of the selected lattice. The
//! nearest lattice point overall then reveals the bit, and survives any
//! additive perturbation smaller than delta/2. All rounding is half away
//! from zero.

/// c' = 2 delta round((c - b delta) / (2 delta)) + b delta. Moves c by at
/// most delta.
pub fn qim_embed_value(c: f64, b: bool, delta: f64) -> f64 {
    debug_assert!(delta > 0.0);
    let offset = b as u8 as f64 * delta;
    2.0 * delta * ((c - offset) / (2.0 * delta)).round() + offset
}

/// b = round(c / delta) mod 2.
pub fn qim_extract_value(c: f64, delta: f64) -> bool {
    debug_assert!(delta > 0.0);
    ((c / delta).round() as i64).rem_euclid(2) == 1
}
