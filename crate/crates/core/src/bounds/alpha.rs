//! Upper bounds for `alpha(g)`, the number of conjugates of `g` needed to
//! generate `<g, L>`.

use std::fmt;
use std::str::FromStr;

use super::BoundsError;
use crate::numth::Exceptional;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Psl2,
    Psl,
    Psu,
    /// `PSp_2n(q)`, q odd
    Psp,
    /// `Sp_2n(q)`, q even
    Sp,
    /// `Omega_2n+1(q)`
    Omega,
    OmegaPlus,
    OmegaMinus,
    Exceptional(Exceptional),
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Psl2 => "PSL2",
            Family::Psl => "PSL",
            Family::Psu => "PSU",
            Family::Psp => "PSp",
            Family::Sp => "Sp",
            Family::Omega => "Omega",
            Family::OmegaPlus => "POmega+",
            Family::OmegaMinus => "POmega-",
            Family::Exceptional(e) => e.tag(),
        }
    }

    /// Dimension of the natural module for rank parameter `n`.
    pub fn natural_dim(self, n: u64) -> u64 {
        match self {
            Family::Psl2 => 2,
            Family::Psl | Family::Psu => n,
            Family::Psp | Family::Sp | Family::OmegaPlus | Family::OmegaMinus => 2 * n,
            Family::Omega => 2 * n + 1,
            Family::Exceptional(_) => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = BoundsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "PSL2" => Family::Psl2,
            "PSL" => Family::Psl,
            "PSU" => Family::Psu,
            "PSp" => Family::Psp,
            "Sp" => Family::Sp,
            "Omega" => Family::Omega,
            "POmega+" => Family::OmegaPlus,
            "POmega-" => Family::OmegaMinus,
            other => Family::Exceptional(
                Exceptional::from_tag(other)
                    .ok_or_else(|| BoundsError::UnknownFamily(other.to_string()))?,
            ),
        })
    }
}

pub const DESCRIPTORS: [&str; 11] = [
    "generic",
    "any",
    "involution",
    "graph-involution",
    "graph-field-involution",
    "field-involution",
    "diagonal-involution",
    "transvection",
    "odd-order",
    "psl2-2element",
    "regular-semisimple",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBound {
    pub value: u64,
    pub citation: &'static str,
}

fn bound(value: u64, citation: &'static str) -> Result<AlphaBound, BoundsError> {
    Ok(AlphaBound { value, citation })
}

/// The tightest cited bound for an element of `Aut L` with the given
/// descriptor. `n` is the rank parameter of the family (half the natural
/// dimension for symplectic and orthogonal groups) and is ignored for
/// `PSL2` and exceptional families.
pub fn alpha_upper(family: Family, n: u64, q: u64, descriptor: &str) -> Result<AlphaBound, BoundsError> {
    let unknown = || BoundsError::UnknownDescriptor {
        family: family.to_string(),
        descriptor: descriptor.to_string(),
    };
    if !DESCRIPTORS.contains(&descriptor) {
        return Err(unknown());
    }
    if descriptor == "regular-semisimple" {
        return bound(3, "regular-semisimple-three");
    }
    let dim = family.natural_dim(n);
    match family {
        Family::Psl2 => {
            const C: &str = "small-rank-prime-order";
            match descriptor {
                "generic" => bound(3, C),
                "any" | "involution" | "field-involution" => bound(if q == 9 { 5 } else { 4 }, C),
                "diagonal-involution" => bound(if q == 5 { 4 } else { 3 }, C),
                "odd-order" => bound(if q == 9 { 3 } else { 2 }, C),
                "psl2-2element" if q % 2 == 1 && q > 9 => bound(2, "psl2-two-element"),
                "psl2-2element" => Err(BoundsError::OutOfDomain(format!(
                    "psl2-2element needs q odd and q > 9, got {q}"
                ))),
                _ => Err(unknown()),
            }
        }
        Family::Psl if n == 3 => match descriptor {
            "generic" => bound(3, "small-rank-prime-order"),
            "any" | "involution" | "graph-field-involution" => bound(4, "small-rank-prime-order"),
            _ => Err(unknown()),
        },
        Family::Psu if n == 3 => {
            if q <= 2 {
                return Err(BoundsError::OutOfDomain("PSU3 needs q > 2".into()));
            }
            match descriptor {
                "generic" => bound(3, "small-rank-prime-order"),
                "any" | "involution" => bound(if q == 3 { 4 } else { 3 }, "small-rank-prime-order"),
                _ => Err(unknown()),
            }
        }
        Family::Psl if n == 4 => match descriptor {
            "generic" => bound(4, "small-rank-prime-order"),
            "any" | "involution" | "graph-involution" => {
                bound(if q == 2 { 7 } else { 6 }, "small-rank-prime-order")
            }
            _ => Err(unknown()),
        },
        Family::Psu if n == 4 => match descriptor {
            "generic" => bound(4, "small-rank-prime-order"),
            "transvection" => bound(if q == 2 { 5 } else { 4 }, "small-rank-prime-order"),
            "any" | "involution" | "graph-involution" => bound(6, "small-rank-prime-order"),
            _ => Err(unknown()),
        },
        Family::Psp | Family::Sp if n == 2 => match descriptor {
            "generic" => bound(4, "small-rank-prime-order"),
            "involution" | "transvection" => bound(5, "small-rank-prime-order"),
            "any" => bound(if q == 3 { 6 } else { 5 }, "small-rank-prime-order"),
            _ => Err(unknown()),
        },
        Family::Exceptional(e) => {
            let m = e.untwisted_rank();
            match descriptor {
                "generic" => bound(m + 3, "exceptional-generation"),
                "involution" | "any" if e == Exceptional::F4 => bound(8, "exceptional-generation"),
                "involution" | "any" => bound(m + 3, "exceptional-generation"),
                _ => Err(unknown()),
            }
        }
        _ => {
            if dim < 5 {
                return Err(BoundsError::OutOfDomain(format!(
                    "{family} with natural dimension {dim} has no cited generation bound"
                )));
            }
            let sp_even = family == Family::Sp;
            match descriptor {
                "generic" | "graph-involution" | "field-involution" | "graph-field-involution" => {
                    bound(dim, "classical-generation")
                }
                "involution" | "transvection" | "any" if sp_even => bound(dim + 1, "classical-generation"),
                "involution" | "transvection" | "any" => bound(dim, "classical-generation"),
                _ => Err(unknown()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(family: &str, n: u64, q: u64, d: &str) -> u64 {
        alpha_upper(family.parse().unwrap(), n, q, d).unwrap().value
    }

    #[test]
    fn printed_examples() {
        assert_eq!(a("PSL", 3, 7, "generic"), 3);
        assert_eq!(a("Sp", 4, 2, "transvection"), 9);
        assert_eq!(a("PSL2", 2, 11, "psl2-2element"), 2);
    }

    #[test]
    fn small_rank_exceptions() {
        assert_eq!(a("PSL2", 2, 9, "any"), 5);
        assert_eq!(a("PSL2", 2, 9, "odd-order"), 3);
        assert_eq!(a("PSL2", 2, 5, "diagonal-involution"), 4);
        assert_eq!(a("PSU", 3, 3, "involution"), 4);
        assert_eq!(a("PSL", 4, 2, "any"), 7);
        assert_eq!(a("PSU", 4, 2, "transvection"), 5);
        assert_eq!(a("PSp", 2, 3, "any"), 6);
        assert_eq!(a("F4", 0, 2, "involution"), 8);
        assert_eq!(a("E8", 0, 2, "any"), 11);
        assert_eq!(a("Omega", 3, 3, "any"), 7);
        assert_eq!(a("POmega-", 4, 2, "any"), 8);
    }

    #[test]
    fn bounds_are_at_least_two() {
        let families = ["PSL2", "PSL", "PSU", "PSp", "Sp", "Omega", "POmega+", "POmega-", "G2", "E7"];
        for f in families {
            for n in 2..8 {
                for q in [2u64, 3, 4, 5, 9, 11, 13] {
                    for d in DESCRIPTORS {
                        if let Ok(b) = alpha_upper(f.parse().unwrap(), n, q, d) {
                            assert!(b.value >= 2, "{f} {n} {q} {d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn errors() {
        let err = |f: &str, n, q, d| alpha_upper(f.parse().unwrap(), n, q, d).unwrap_err();
        assert!(matches!(err("PSL", 3, 5, "weird"), BoundsError::UnknownDescriptor { .. }));
        assert!(matches!(err("PSL", 3, 5, "transvection"), BoundsError::UnknownDescriptor { .. }));
        assert!(matches!(err("PSL2", 2, 9, "psl2-2element"), BoundsError::OutOfDomain(_)));
        assert!("PSX".parse::<Family>().is_err());
    }
}
