//! 2×2 complex unitaries and the named gate catalog.
//!
//! A [`Unitary2`] is the value carried by every multiplexer target. Products
//! follow circuit convention: in `later * earlier` the right factor acts
//! first.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for unitarity and for equality between gates.
pub const EPSILON: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I_UNIT: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 unitary matrix, entries stored row-major as `[a, b, c, d]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary2([Complex64; 4]);

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2([ONE, ZERO, ZERO, ONE]);

    /// Builds a matrix from row-major entries, checking finiteness and
    /// unitarity within [`EPSILON`].
    pub fn new(entries: [Complex64; 4]) -> Result<Self> {
        let u = Unitary2(entries);
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonUnitary {
                deviation: f64::INFINITY,
            });
        }
        let deviation = u.unitarity_deviation();
        if deviation > EPSILON {
            return Err(Error::NonUnitary { deviation });
        }
        Ok(u)
    }

    /// Wraps entries without checking unitarity.
    ///
    /// Only for values that are unitary by construction (products of
    /// checked matrices, closed-form rotations).
    pub const fn from_entries_unchecked(entries: [Complex64; 4]) -> Self {
        Unitary2(entries)
    }

    pub fn entries(&self) -> &[Complex64; 4] {
        &self.0
    }

    pub fn pauli_x() -> Self {
        Unitary2([ZERO, ONE, ONE, ZERO])
    }

    pub fn pauli_y() -> Self {
        Unitary2([ZERO, -I_UNIT, I_UNIT, ZERO])
    }

    pub fn pauli_z() -> Self {
        Unitary2([ONE, ZERO, ZERO, -ONE])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Unitary2([h, h, h, -h])
    }

    /// Square root of NOT: `V·V = X`.
    pub fn v() -> Self {
        let p = Complex64::new(0.5, 0.5);
        let m = Complex64::new(0.5, -0.5);
        Unitary2([p, m, m, p])
    }

    /// `V†`.
    pub fn v_dagger() -> Self {
        Self::v().inverse()
    }

    pub fn rx(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        let c = Complex64::new(c, 0.0);
        let s = Complex64::new(0.0, -s);
        Unitary2([c, s, s, c])
    }

    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Unitary2([
            Complex64::new(c, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(c, 0.0),
        ])
    }

    pub fn rz(theta: f64) -> Self {
        Unitary2([
            Complex64::from_polar(1.0, -theta / 2.0),
            ZERO,
            ZERO,
            Complex64::from_polar(1.0, theta / 2.0),
        ])
    }

    /// Global phase `e^{iφ}·I`.
    pub fn phase(phi: f64) -> Self {
        let z = Complex64::from_polar(1.0, phi);
        Unitary2([z, ZERO, ZERO, z])
    }

    /// Conjugate transpose, which is the inverse of a unitary.
    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.0;
        Unitary2([a.conj(), c.conj(), b.conj(), d.conj()])
    }

    /// Max entrywise distance between `self·self†` and the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        (*self * self.inverse()).max_abs_diff(&Self::IDENTITY)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise comparison. A global phase counts as a difference.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_identity(&self) -> bool {
        self.approx_eq(&Self::IDENTITY, EPSILON)
    }

    /// Matrix-literal rendering accepted by [`parse_gate`]. Floats use the
    /// shortest representation that round-trips exactly.
    pub fn to_literal(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .flat_map(|z| [z.re, z.im])
            .map(|x| format!("{x}"))
            .collect();
        format!("M({})", parts.join(","))
    }

    /// Catalog name if `self` equals a discrete catalog gate within `1e-12`,
    /// otherwise the matrix literal.
    pub fn to_token(&self) -> String {
        GateName::DISCRETE
            .iter()
            .find(|g| g.matrix().approx_eq(self, 1e-12))
            .map(|g| g.to_string())
            .unwrap_or_else(|| self.to_literal())
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        Unitary2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

impl fmt::Display for Unitary2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token())
    }
}

/// Named gates understood by the text formats.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateName {
    I,
    X,
    Y,
    Z,
    H,
    V,
    Vd,
    Rx(f64),
    Ry(f64),
    Rz(f64),
}

impl GateName {
    /// Parameter-free catalog entries.
    pub const DISCRETE: [GateName; 7] = [
        GateName::I,
        GateName::X,
        GateName::Y,
        GateName::Z,
        GateName::H,
        GateName::V,
        GateName::Vd,
    ];

    pub fn matrix(&self) -> Unitary2 {
        match *self {
            GateName::I => Unitary2::IDENTITY,
            GateName::X => Unitary2::pauli_x(),
            GateName::Y => Unitary2::pauli_y(),
            GateName::Z => Unitary2::pauli_z(),
            GateName::H => Unitary2::hadamard(),
            GateName::V => Unitary2::v(),
            GateName::Vd => Unitary2::v_dagger(),
            GateName::Rx(t) => Unitary2::rx(t),
            GateName::Ry(t) => Unitary2::ry(t),
            GateName::Rz(t) => Unitary2::rz(t),
        }
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateName::I => f.write_str("I"),
            GateName::X => f.write_str("X"),
            GateName::Y => f.write_str("Y"),
            GateName::Z => f.write_str("Z"),
            GateName::H => f.write_str("H"),
            GateName::V => f.write_str("V"),
            GateName::Vd => f.write_str("VD"),
            GateName::Rx(t) => write!(f, "RX({t})"),
            GateName::Ry(t) => write!(f, "RY({t})"),
            GateName::Rz(t) => write!(f, "RZ({t})"),
        }
    }
}

impl FromStr for GateName {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        let unknown = || Error::UnknownGate(token.to_string());
        let upper = token.trim().to_ascii_uppercase();
        let simple = match upper.as_str() {
            "I" | "ID" => Some(GateName::I),
            "X" | "PX" | "NOT" => Some(GateName::X),
            "Y" | "PY" => Some(GateName::Y),
            "Z" | "PZ" => Some(GateName::Z),
            "H" => Some(GateName::H),
            "V" => Some(GateName::V),
            "VD" | "V+" | "VDG" => Some(GateName::Vd),
            _ => None,
        };
        if let Some(g) = simple {
            return Ok(g);
        }
        let (head, args) = split_call(&upper).ok_or_else(unknown)?;
        let ctor: fn(f64) -> GateName = match head {
            "RX" => GateName::Rx,
            "RY" => GateName::Ry,
            "RZ" => GateName::Rz,
            _ => return Err(unknown()),
        };
        let theta = parse_angle(args).ok_or_else(unknown)?;
        Ok(ctor(theta))
    }
}

/// Parses a gate name or a matrix literal `M(a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im)`.
pub fn parse_gate(token: &str) -> Result<Unitary2> {
    let upper = token.trim().to_ascii_uppercase();
    if let Some(("M", args)) = split_call(&upper) {
        let values: Vec<f64> = args
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::UnknownGate(token.to_string()))?;
        if values.len() != 8 {
            return Err(Error::UnknownGate(token.to_string()));
        }
        let z = |k: usize| Complex64::new(values[2 * k], values[2 * k + 1]);
        return Unitary2::new([z(0), z(1), z(2), z(3)]);
    }
    token.parse::<GateName>().map(|g| g.matrix())
}

fn split_call(s: &str) -> Option<(&str, &str)> {
    let open = s.find('(')?;
    let inner = s[open + 1..].strip_suffix(')')?;
    Some((s[..open].trim(), inner))
}

// Accepts plain floats plus `pi`, `-pi`, `pi/N`, `K*pi`, `K*pi/N`.
fn parse_angle(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(x) = s.parse::<f64>() {
        return Some(x);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().ok()?),
        None => (s, 1.0),
    };
    let (sign, num) = match num.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, num),
    };
    let coeff = match num.strip_suffix("PI") {
        Some("") => 1.0,
        Some(k) => k.trim().strip_suffix('*')?.trim().parse::<f64>().ok()?,
        None => return None,
    };
    Some(sign * coeff * std::f64::consts::PI / den)
}
