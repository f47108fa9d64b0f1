//! Exact rational points in unit-cell coordinates.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::vec3::IntVec3;

pub type Rational = Ratio<i64>;

/// Parse `p/q` (q > 0) or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            (q > 0).then(|| Ratio::new(p, q))
        }
        None => s.parse::<i64>().ok().map(Ratio::from_integer),
    }
}

/// `p/q` with the denominator always written, so output is uniform.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn fract(r: Rational) -> Rational {
    r - r.floor()
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational3(pub [Rational; 3]);

impl Rational3 {
    pub fn zero() -> Self {
        Rational3([Rational::zero(); 3])
    }

    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Rational3([x, y, z])
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fracs(c: [(i64, i64); 3]) -> Self {
        Rational3(c.map(|(p, q)| Ratio::new(p, q)))
    }

    pub fn from_int(v: IntVec3) -> Self {
        Rational3(v.0.map(Ratio::from_integer))
    }

    pub fn in_unit_cube(&self) -> bool {
        self.0.iter().all(|c| *c >= Rational::zero() && *c < Rational::one())
    }

    /// Representative in `[0,1)^3`.
    pub fn wrap(&self) -> Rational3 {
        Rational3(self.0.map(fract))
    }

    /// Integer part (componentwise floor).
    pub fn floor(&self) -> IntVec3 {
        IntVec3(self.0.map(|c| c.floor().to_integer()))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Least common multiple of the three denominators.
    pub fn denominator_lcm(&self) -> i64 {
        self.0.iter().fold(1i64, |l, c| l.lcm(c.denom()))
    }

    /// Coordinates multiplied by `d`, which must clear every denominator.
    pub fn scaled(&self, d: i64) -> IntVec3 {
        IntVec3(self.0.map(|c| {
            let s = c * Ratio::from_integer(d);
            debug_assert!(s.is_integer());
            s.to_integer()
        }))
    }

    pub fn scale(&self, k: Rational) -> Rational3 {
        Rational3(self.0.map(|c| c * k))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.map(|c| *c.numer() as f64 / *c.denom() as f64)
    }
}

impl Add for Rational3 {
    type Output = Rational3;
    fn add(self, o: Rational3) -> Rational3 {
        Rational3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Add<IntVec3> for Rational3 {
    type Output = Rational3;
    fn add(self, o: IntVec3) -> Rational3 {
        self + Rational3::from_int(o)
    }
}

impl Sub for Rational3 {
    type Output = Rational3;
    fn sub(self, o: Rational3) -> Rational3 {
        Rational3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Rational3 {
    type Output = Rational3;
    fn neg(self) -> Rational3 {
        Rational3(self.0.map(|c| -c))
    }
}

impl fmt::Debug for Rational3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Rational3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Rational3 {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(format!("expected three coordinates, got {}", parts.len()));
        }
        let mut c = [Rational::zero(); 3];
        for (slot, p) in c.iter_mut().zip(parts) {
            *slot = parse_rational(p).ok_or_else(|| format!("bad rational `{p}`"))?;
        }
        Ok(Rational3(c))
    }
}

impl Serialize for Rational3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: [String; 3] = self.0.map(|c| format_rational(&c));
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = <[String; 3]>::deserialize(d)?;
        let mut c = [Rational::zero(); 3];
        for (slot, s) in c.iter_mut().zip(strs.iter()) {
            *slot = parse_rational(s)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))?;
        }
        Ok(Rational3(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/4"), Some(Ratio::new(1, 4)));
        assert_eq!(parse_rational("-2/6"), Some(Ratio::new(-1, 3)));
        assert_eq!(parse_rational("3"), Some(Ratio::from_integer(3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn wrap_and_floor() {
        let p = Rational3::from_fracs([(5, 4), (-1, 3), (0, 1)]);
        assert_eq!(p.floor(), IntVec3::new(1, -1, 0));
        assert_eq!(p.wrap(), Rational3::from_fracs([(1, 4), (2, 3), (0, 1)]));
        assert!(p.wrap().in_unit_cube());
        assert_eq!(p.denominator_lcm(), 12);
        assert_eq!(p.scaled(12), IntVec3::new(15, -4, 0));
    }

    #[test]
    fn serde_roundtrip() {
        let p = Rational3::from_fracs([(1, 2), (3, 1), (-2, 7)]);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"["1/2","3/1","-2/7"]"#);
        let q: Rational3 = serde_json::from_str(&j).unwrap();
        assert_eq!(p, q);
    }
}
