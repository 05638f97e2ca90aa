use core::cmp::Ordering;
use core::fmt;

/// A 2-adic valuation: the exponent of the largest power of two dividing a
/// value, or `Infinity` for zero.
///
/// `Infinity` orders above every finite value. With the `serde` feature it
/// serializes as a number, or `null` for `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ord2Value {
    Finite(u32),
    Infinity,
}

impl Ord2Value {
    pub fn is_finite(self) -> bool {
        matches!(self, Ord2Value::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Ord2Value::Finite(k) => Some(k),
            Ord2Value::Infinity => None,
        }
    }
}

impl PartialOrd for Ord2Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ord2Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ord2Value::Finite(a), Ord2Value::Finite(b)) => a.cmp(b),
            (Ord2Value::Finite(_), Ord2Value::Infinity) => Ordering::Less,
            (Ord2Value::Infinity, Ord2Value::Finite(_)) => Ordering::Greater,
            (Ord2Value::Infinity, Ord2Value::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialEq<u32> for Ord2Value {
    fn eq(&self, other: &u32) -> bool {
        *self == Ord2Value::Finite(*other)
    }
}

impl PartialOrd<u32> for Ord2Value {
    fn partial_cmp(&self, other: &u32) -> Option<Ordering> {
        Some(self.cmp(&Ord2Value::Finite(*other)))
    }
}

impl From<u32> for Ord2Value {
    fn from(k: u32) -> Self {
        Ord2Value::Finite(k)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Ord2Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Ord2Value {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Option::<u32>::deserialize(d)?.map_or(Ord2Value::Infinity, Ord2Value::Finite))
    }
}

impl fmt::Display for Ord2Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ord2Value::Finite(k) => write!(f, "{k}"),
            Ord2Value::Infinity => f.write_str("inf"),
        }
    }
}

/// 2-adic valuation of `a`.
#[inline]
pub fn ord2(a: u64) -> Ord2Value {
    if a == 0 {
        Ord2Value::Infinity
    } else {
        Ord2Value::Finite(a.trailing_zeros())
    }
}
