//! One-dimensional search helpers.

use crate::error::Result;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimisation of a fallible `f` on `[a, b]`.
///
/// Returns the best abscissa seen and its value; the endpoints are not evaluated.
pub fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, iterations: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut best = if fd < fc { (d, fd) } else { (c, fc) };
    for _ in 0..iterations {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    Ok(best)
}

/// Root of a monotone `f` bracketed by `f(lo)` and `f(hi)` of opposite sign.
/// Stops after `iterations` halvings or when the bracket no longer shrinks.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, iterations: usize) -> f64 {
    let f_lo = f(lo);
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Expands `[lo, hi]` geometrically around zero until `f` changes sign.
/// Returns `None` if no sign change is found within `max_doublings`.
pub fn bracket(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    max_doublings: usize,
) -> Option<(f64, f64)> {
    for _ in 0..max_doublings {
        let (a, b) = (f(lo), f(hi));
        if a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0) {
            return Some((lo, hi));
        }
        lo = if lo < 0.0 { 2.0 * lo } else { -1.0 };
        hi = if hi > 0.0 { 2.0 * hi } else { 1.0 };
    }
    None
}
