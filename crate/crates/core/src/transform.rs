//! Butterfly transforms between standard and polarized multiplexers.
//!
//! A stage applies a two-input kernel to every pair of targets whose indices
//! differ only at one bit. The forward transform runs one stage per control,
//! `c_1` (most significant bit) first, using
//!
//! * positive `A¹`: `(a, b) → (a, b·a⁻¹)`
//! * negative `A⁰`: `(a, b) → (b, a·b⁻¹)`
//! * mixed `A²`: identity
//!
//! The inverse runs the same controls in reverse with
//! `P¹: (a, b) → (a, b·a)`, `P⁰: (a, b) → (b·a, a)` and `P²` the identity.
//!
//! Running `c_1` first matters once targets fail to commute. Splitting on
//! the top bit, the lower half of a polarized multiplexer fires regardless
//! of `c_1` under a positive digit, so the top-level kernel peels it off the
//! upper half before both halves recurse on the remaining controls.

use crate::error::{Error, Result};
use crate::mux::{Form, Multiplexer};
use crate::polarity::{Digit, Polarity};
use crate::unitary::Unitary2;

/// The six two-input kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// Standard → polarized, one per digit.
    Forward(Digit),
    /// Polarized → standard, one per digit.
    Inverse(Digit),
}

impl Kernel {
    #[inline]
    pub fn apply(self, a: Unitary2, b: Unitary2) -> (Unitary2, Unitary2) {
        match self {
            Kernel::Forward(Digit::Positive) => (a, b * a.inverse()),
            Kernel::Forward(Digit::Negative) => (b, a * b.inverse()),
            Kernel::Inverse(Digit::Positive) => (a, b * a),
            Kernel::Inverse(Digit::Negative) => (b * a, a),
            Kernel::Forward(Digit::Mixed) | Kernel::Inverse(Digit::Mixed) => (a, b),
        }
    }

    pub fn is_identity(self) -> bool {
        matches!(
            self,
            Kernel::Forward(Digit::Mixed) | Kernel::Inverse(Digit::Mixed)
        )
    }
}

/// Applies `kernel` to every index pair `(j, j + 2^bit)` with bit `bit` of
/// `j` clear. Generic over the element type and kernel so that the same
/// tiling serves any two-input transform.
pub fn butterfly_stage<T: Copy>(
    values: &mut [T],
    bit: usize,
    kernel: impl Fn(T, T) -> (T, T),
) -> Result<()> {
    let len = values.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::LengthNotPowerOfTwo(len));
    }
    let vars = len.trailing_zeros() as usize;
    if bit >= vars {
        return Err(Error::BitOutOfRange { bit, vars });
    }
    let stride = 1usize << bit;
    for block in values.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
            let (nx, ny) = kernel(*x, *y);
            *x = nx;
            *y = ny;
        }
    }
    Ok(())
}

/// [`butterfly_stage`] with one of the named kernels.
pub fn apply_kernel(gates: &mut [Unitary2], kernel: Kernel, bit: usize) -> Result<()> {
    if kernel.is_identity() {
        // Still validate the shape.
        return butterfly_stage(gates, bit, |a, b| (a, b));
    }
    butterfly_stage(gates, bit, |a, b| kernel.apply(a, b))
}

/// In-place forward stages on a raw target vector.
pub(crate) fn forward_in_place(gates: &mut [Unitary2], p: &Polarity) {
    for (k, &d) in p.digits().iter().enumerate() {
        if d != Digit::Mixed {
            apply_kernel(gates, Kernel::Forward(d), p.bit_of(k)).expect("shape checked");
        }
    }
}

/// Converts a standard multiplexer into the FPQF or KQF of polarity `p`.
pub fn forward_transform(std: &Multiplexer, p: &Polarity) -> Result<Multiplexer> {
    if *std.form() != Form::Standard {
        return Err(Error::FormMismatch {
            expected: "standard",
            found: std.form().to_string(),
        });
    }
    p.expect_len(std.controls())?;
    let mut gates = std.targets().to_vec();
    forward_in_place(&mut gates, p);
    Ok(Multiplexer::from_parts(
        std.controls(),
        gates,
        Form::for_polarity(p.clone()),
    ))
}

/// Converts an FPQF or KQF multiplexer back to standard form.
pub fn inverse_transform(polarized: &Multiplexer) -> Result<Multiplexer> {
    let p = polarized
        .form()
        .polarity()
        .ok_or_else(|| Error::FormMismatch {
            expected: "fpqf or kqf",
            found: polarized.form().to_string(),
        })?
        .clone();
    let mut gates = polarized.targets().to_vec();
    for (k, &d) in p.digits().iter().enumerate().rev() {
        if d != Digit::Mixed {
            apply_kernel(&mut gates, Kernel::Inverse(d), p.bit_of(k)).expect("shape checked");
        }
    }
    Ok(Multiplexer::from_parts(
        polarized.controls(),
        gates,
        Form::Standard,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::GateName;

    fn gates(names: &[&str]) -> Vec<Unitary2> {
        names
            .iter()
            .map(|n| n.parse::<GateName>().unwrap().matrix())
            .collect()
    }

    fn sample(m: usize) -> Vec<Unitary2> {
        (0..1 << m)
            .map(|i| {
                let t = i as f64;
                Unitary2::rz(0.4 + t) * Unitary2::ry(1.3 * t + 0.1) * Unitary2::rz(0.7 - t)
            })
            .collect()
    }

    #[test]
    fn custom_kernel_at_bit_zero() {
        // (i, None) stands for F_i and (i, Some(j)) for F_i·F_j.
        let mut v: Vec<(usize, Option<usize>)> = (0..4).map(|i| (i, None)).collect();
        butterfly_stage(&mut v, 0, |a, b| (b, (a.0, Some(b.0)))).unwrap();
        assert_eq!(v, [(1, None), (0, Some(1)), (3, None), (2, Some(3))]);
    }

    #[test]
    fn inverse_positive_at_bit_one() {
        let g = sample(2);
        let mut v = g.clone();
        apply_kernel(&mut v, Kernel::Inverse(Digit::Positive), 1).unwrap();
        assert_eq!(v, [g[0], g[1], g[2] * g[0], g[3] * g[1]]);
    }

    #[test]
    fn mixed_kernel_is_identity() {
        let g = sample(3);
        for bit in 0..3 {
            let mut v = g.clone();
            apply_kernel(&mut v, Kernel::Forward(Digit::Mixed), bit).unwrap();
            assert_eq!(v, g);
        }
    }

    #[test]
    fn stage_shape_errors() {
        let mut v = sample(1);
        v.push(Unitary2::IDENTITY);
        assert!(matches!(
            apply_kernel(&mut v, Kernel::Forward(Digit::Positive), 0),
            Err(Error::LengthNotPowerOfTwo(3))
        ));
        let mut v = sample(2);
        assert!(matches!(
            apply_kernel(&mut v, Kernel::Forward(Digit::Positive), 2),
            Err(Error::BitOutOfRange { .. })
        ));
    }

    #[test]
    fn two_control_positive_closed_form() {
        let f = sample(2);
        let std = Multiplexer::standard(f.clone()).unwrap();
        let g = forward_transform(&std, &"11".parse().unwrap()).unwrap();
        let inv = |u: Unitary2| u.inverse();
        let expected = [
            f[0],
            f[1] * inv(f[0]),
            f[2] * inv(f[0]),
            f[3] * inv(f[1]) * f[0] * inv(f[2]),
        ];
        for (got, want) in g.targets().iter().zip(expected) {
            assert!(got.approx_eq(&want, 1e-12));
        }
    }

    #[test]
    fn identity_v_v_not_collapses() {
        let std = Multiplexer::standard(gates(&["I", "V", "V", "X"])).unwrap();
        let g = forward_transform(&std, &"11".parse().unwrap()).unwrap();
        let want = gates(&["I", "V", "V", "I"]);
        for (got, want) in g.targets().iter().zip(&want) {
            assert!(got.approx_eq(want, 1e-12));
        }
        assert_eq!(g.form(), &Form::Fpqf("11".parse().unwrap()));
    }

    #[test]
    fn all_mixed_is_standard() {
        let std = Multiplexer::standard(sample(2)).unwrap();
        let k = forward_transform(&std, &"22".parse().unwrap()).unwrap();
        assert_eq!(k.targets(), std.targets());
        assert_eq!(k.form(), &Form::Kqf("22".parse().unwrap()));
    }

    #[test]
    fn single_control_inverses() {
        let g = sample(1);
        let pos = Multiplexer::new(1, g.clone(), Form::Fpqf("1".parse().unwrap())).unwrap();
        assert_eq!(inverse_transform(&pos).unwrap().targets(), [g[0], g[1] * g[0]]);
        let neg = Multiplexer::new(1, g.clone(), Form::Fpqf("0".parse().unwrap())).unwrap();
        assert_eq!(inverse_transform(&neg).unwrap().targets(), [g[1] * g[0], g[0]]);
    }

    #[test]
    fn form_mismatches() {
        let std = Multiplexer::standard(sample(2)).unwrap();
        assert!(matches!(inverse_transform(&std), Err(Error::FormMismatch { .. })));
        let pol = forward_transform(&std, &"10".parse().unwrap()).unwrap();
        assert!(matches!(
            forward_transform(&pol, &"10".parse().unwrap()),
            Err(Error::FormMismatch { .. })
        ));
        assert!(matches!(
            forward_transform(&std, &"1".parse().unwrap()),
            Err(Error::PolarityLengthMismatch { .. })
        ));
    }

    #[test]
    fn round_trip_three_controls() {
        let std = Multiplexer::standard(sample(3)).unwrap();
        for p in ["000", "101", "012", "222", "210"] {
            let pol = forward_transform(&std, &p.parse().unwrap()).unwrap();
            let back = inverse_transform(&pol).unwrap();
            for (a, b) in back.targets().iter().zip(std.targets()) {
                assert!(a.approx_eq(b, 1e-12), "{p}");
            }
        }
    }
}
