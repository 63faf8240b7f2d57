use core::ops::{BitAnd, BitOr, Not};

/// Strong Kleene truth values. `U` is below both `T` and `F` in the
/// information order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThreeVal {
    T,
    F,
    U,
}

impl ThreeVal {
    pub fn to_bool(self) -> Option<bool> {
        match self {
            ThreeVal::T => Some(true),
            ThreeVal::F => Some(false),
            ThreeVal::U => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ThreeVal::T => "T",
            ThreeVal::F => "F",
            ThreeVal::U => "U",
        }
    }

    /// `self ≤ other` in the information order.
    pub fn below(self, other: ThreeVal) -> bool {
        self == ThreeVal::U || self == other
    }
}

impl From<bool> for ThreeVal {
    fn from(b: bool) -> Self {
        if b {
            ThreeVal::T
        } else {
            ThreeVal::F
        }
    }
}

impl Not for ThreeVal {
    type Output = Self;

    fn not(self) -> Self {
        match self {
            ThreeVal::T => ThreeVal::F,
            ThreeVal::F => ThreeVal::T,
            ThreeVal::U => ThreeVal::U,
        }
    }
}

// F dominates.
impl BitAnd for ThreeVal {
    type Output = Self;

    fn bitand(self, other: Self) -> Self {
        match (self, other) {
            (ThreeVal::F, _) | (_, ThreeVal::F) => ThreeVal::F,
            (ThreeVal::T, ThreeVal::T) => ThreeVal::T,
            _ => ThreeVal::U,
        }
    }
}

// T dominates.
impl BitOr for ThreeVal {
    type Output = Self;

    fn bitor(self, other: Self) -> Self {
        match (self, other) {
            (ThreeVal::T, _) | (_, ThreeVal::T) => ThreeVal::T,
            (ThreeVal::F, ThreeVal::F) => ThreeVal::F,
            _ => ThreeVal::U,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::ThreeVal::{self, *};

    const ALL: [ThreeVal; 3] = [T, F, U];

    #[test]
    fn agrees_with_classical_on_defined_values() {
        for a in [true, false] {
            for b in [true, false] {
                assert_eq!(ThreeVal::from(a) & ThreeVal::from(b), ThreeVal::from(a && b));
                assert_eq!(ThreeVal::from(a) | ThreeVal::from(b), ThreeVal::from(a || b));
            }
            assert_eq!(!ThreeVal::from(a), ThreeVal::from(!a));
        }
    }

    #[test]
    fn connectives_are_monotone() {
        for a in ALL {
            for a2 in ALL.into_iter().filter(|x| a.below(*x)) {
                assert!((!a).below(!a2));
                for b in ALL {
                    for b2 in ALL.into_iter().filter(|x| b.below(*x)) {
                        assert!((a & b).below(a2 & b2));
                        assert!((a | b).below(a2 | b2));
                    }
                }
            }
        }
    }

    #[test]
    fn dominance() {
        assert_eq!(F & U, F);
        assert_eq!(T | U, T);
        assert_eq!(T & U, U);
        assert_eq!(F | U, U);
        assert_eq!(!U, U);
    }
}
