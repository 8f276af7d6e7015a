//! Evidence for property (*): every smoothly embedded sphere representing a
//! non-zero rational homology class has negative self-intersection.
//!
//! Property (*) is never computed from first principles. It is derived from
//! recorded facts about the manifold by one of three rules:
//!
//! * `E1`: `b2+ = 0`.
//! * `E2`: `b2+ > 1` and non-vanishing Seiberg-Witten invariants.
//! * `E3`: `b2+ = 1`, `b2- <= 9`, `b1 = 0`, symplectic and not a rational surface.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bounds::ManifoldInvariants;
use crate::error::{Error, Result};

/// Recorded facts about a manifold, as flags.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct StarEvidence {
    pub b2plus_zero: bool,
    pub sw_nonvanishing: bool,
    pub symplectic: bool,
    pub rational_surface: bool,
    pub b1_zero: bool,
}

impl StarEvidence {
    pub const FLAG_NAMES: [&'static str; 5] =
        ["b2plus_zero", "sw_nonvanishing", "symplectic", "rational_surface", "b1_zero"];

    /// Builds evidence from flag names; unknown names are an error.
    pub fn from_flags<'a>(flags: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let mut e = StarEvidence::default();
        for flag in flags {
            match flag {
                "b2plus_zero" => e.b2plus_zero = true,
                "sw_nonvanishing" => e.sw_nonvanishing = true,
                "symplectic" => e.symplectic = true,
                "rational_surface" => e.rational_surface = true,
                "b1_zero" => e.b1_zero = true,
                other => {
                    return Err(Error::Domain(format!(
                        "unknown evidence flag {other:?}; expected one of {:?}",
                        Self::FLAG_NAMES
                    )))
                }
            }
        }
        Ok(e)
    }

    /// Set flags in canonical order.
    pub fn flags(&self) -> Vec<&'static str> {
        let set = [
            self.b2plus_zero,
            self.sw_nonvanishing,
            self.symplectic,
            self.rational_surface,
            self.b1_zero,
        ];
        Self::FLAG_NAMES
            .iter()
            .zip(set)
            .filter_map(|(name, on)| on.then_some(*name))
            .collect()
    }
}

/// The rule that established property (*), or its absence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarRule {
    /// `b2+ = 0`.
    NegativeDefinite,
    /// `b2+ > 1` with non-vanishing Seiberg-Witten invariants.
    SeibergWitten,
    /// `b2+ = 1`, `b2- <= 9`, `b1 = 0`, symplectic, not rational.
    SymplecticBPlusOne,
    NoEvidence,
}

impl StarRule {
    pub fn tag(self) -> &'static str {
        match self {
            StarRule::NegativeDefinite => "E1:b2plus-zero",
            StarRule::SeibergWitten => "E2:sw-nonvanishing",
            StarRule::SymplecticBPlusOne => "E3:symplectic-b2plus-one",
            StarRule::NoEvidence => "no-evidence",
        }
    }

    pub fn holds(self) -> bool {
        self != StarRule::NoEvidence
    }
}

impl fmt::Display for StarRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Derives property (*) for `m` from its recorded evidence.
///
/// Returns the first rule that fires, in the order E1, E2, E3.
pub fn derive_star(m: &ManifoldInvariants) -> Result<StarRule> {
    let e = &m.star_facts;
    let b2_plus = m.b2_plus();
    let b2_minus = m.b2_minus();
    let inconsistent = |reason| Error::InconsistentEvidence { name: m.name.clone(), reason };

    if e.b2plus_zero && b2_plus != 0 {
        return Err(inconsistent("b2plus_zero is set but b2+ derived from (chi, sigma) is not 0"));
    }
    if e.rational_surface && b2_plus != 1 {
        return Err(inconsistent("rational_surface is set but rational surfaces have b2+ = 1"));
    }
    if e.rational_surface && e.sw_nonvanishing {
        return Err(inconsistent("rational surfaces have vanishing Seiberg-Witten invariants"));
    }

    if b2_plus == 0 {
        return Ok(StarRule::NegativeDefinite);
    }
    if e.sw_nonvanishing && b2_plus > 1 {
        return Ok(StarRule::SeibergWitten);
    }
    let b1_zero = e.b1_zero || m.h1_zero;
    if b2_plus == 1 && b2_minus <= 9 && b1_zero && e.symplectic && !e.rational_surface {
        return Ok(StarRule::SymplecticBPlusOne);
    }
    Ok(StarRule::NoEvidence)
}

/// Human-readable summary of which rule fired and why.
pub fn explain(m: &ManifoldInvariants, rule: StarRule) -> String {
    format!(
        "{}: b2+ = {}, b2- = {}, flags = [{}] -> {}",
        m.name,
        m.b2_plus(),
        m.b2_minus(),
        m.star_facts.flags().join(", "),
        rule.tag()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifold(name: &str, chi: i64, sigma: i64, flags: &[&str]) -> ManifoldInvariants {
        ManifoldInvariants::new(name, chi, sigma)
            .unwrap()
            .with_evidence(StarEvidence::from_flags(flags.iter().copied()).unwrap())
    }

    #[test]
    fn k3_via_seiberg_witten() {
        let k3 = manifold("K3", 24, -16, &["sw_nonvanishing"]);
        assert_eq!(k3.b2_plus(), 3);
        assert_eq!(derive_star(&k3).unwrap(), StarRule::SeibergWitten);
    }

    #[test]
    fn exotic_cp2_two_cp2bar_via_symplectic_rule() {
        let m = manifold("CP2#2CP2bar-exotic", 5, -1, &["symplectic", "b1_zero"]);
        assert_eq!((m.b2_plus(), m.b2_minus()), (1, 2));
        assert_eq!(derive_star(&m).unwrap(), StarRule::SymplecticBPlusOne);
    }

    #[test]
    fn rational_surface_has_no_evidence() {
        let m = manifold("CP2#CP2bar", 4, 0, &["symplectic", "rational_surface", "b1_zero"]);
        let rule = derive_star(&m).unwrap();
        assert_eq!(rule, StarRule::NoEvidence);
        assert_eq!(rule.tag(), "no-evidence");
        assert!(!rule.holds());
    }

    #[test]
    fn negative_definite_and_contradictions() {
        let m = manifold("CP2bar#CP2bar", 4, -2, &["b2plus_zero"]);
        assert_eq!(derive_star(&m).unwrap(), StarRule::NegativeDefinite);

        let bad = manifold("bad", 4, 0, &["b2plus_zero"]);
        assert!(matches!(derive_star(&bad), Err(Error::InconsistentEvidence { .. })));
        let bad = manifold("bad", 24, -16, &["rational_surface"]);
        assert!(matches!(derive_star(&bad), Err(Error::InconsistentEvidence { .. })));
    }

    #[test]
    fn e3_limits() {
        // b2- = 10 is outside the symplectic b2+ = 1 rule.
        let m = manifold("E1-blowup", 13, -9, &["symplectic", "b1_zero"]);
        assert_eq!((m.b2_plus(), m.b2_minus()), (1, 10));
        assert_eq!(derive_star(&m).unwrap(), StarRule::NoEvidence);
        // Seiberg-Witten alone does not help at b2+ = 1.
        let m = manifold("x", 5, -1, &["sw_nonvanishing"]).with_h1_zero(false);
        assert_eq!(derive_star(&m).unwrap(), StarRule::NoEvidence);
    }

    #[test]
    fn flag_round_trip() {
        let e = StarEvidence::from_flags(["symplectic", "b1_zero"]).unwrap();
        assert_eq!(e.flags(), ["symplectic", "b1_zero"]);
        assert!(StarEvidence::from_flags(["spin"]).is_err());
    }
}
