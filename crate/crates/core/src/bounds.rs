//! Upper bounds on the number of fixed spheres, and the resulting
//! classification of a manifold for a given prime order.
//!
//! If every fixed sphere satisfies `[S]^2 <= s < 0`, the number `n` of fixed
//! spheres of a homologically trivial `Z_p` action satisfies
//!
//! ```text
//! n <= (p chi - c1^2) / (p(2 - s) - (4 + s))
//! n <  chi / (2 - s) * (1 + 6 / (p(2 - s) - (4 + s)))
//! ```
//!
//! with `c1^2 = 2 chi + 3 sigma`. The second bound holds for every value of
//! `c1^2` because `sigma > -chi`.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::dedekind::PrimeOrder;
use crate::error::{Error, Result};
use crate::evidence::{derive_star, StarEvidence, StarRule};
use crate::rational::Rational;

/// Invariants of a closed, oriented 4-manifold with `b1 = 0`, as far as the
/// bounds need them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ManifoldInvariants {
    pub name: String,
    pub chi: i64,
    pub sigma: i64,
    pub spin: bool,
    pub minimal: bool,
    pub star_facts: StarEvidence,
    /// Simply connected, or at least `H_1(M; Z) = 0`.
    pub h1_zero: bool,
}

impl ManifoldInvariants {
    /// Validates `chi >= 3`, `|sigma| <= b2`, `chi + sigma` even and
    /// `sigma > -chi`. Flags default to false, `h1_zero` to true.
    pub fn new(name: impl Into<String>, chi: i64, sigma: i64) -> Result<Self> {
        let m = ManifoldInvariants {
            name: name.into(),
            chi,
            sigma,
            spin: false,
            minimal: false,
            star_facts: StarEvidence::default(),
            h1_zero: true,
        };
        m.validate()?;
        Ok(m)
    }

    /// Invariants of a minimal elliptic surface `E(k)_{a,b}` with coprime
    /// multiple fibres: `chi = 12k`, `sigma = -8k`, so `c1^2 = 0`.
    pub fn elliptic_surface(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("elliptic surface index k must be positive".into()));
        }
        let k = i64::from(k);
        let facts = StarEvidence {
            sw_nonvanishing: k >= 2,
            symplectic: true,
            b1_zero: true,
            ..StarEvidence::default()
        };
        Ok(ManifoldInvariants::new(format!("E({k})_{{a,b}}"), 12 * k, -8 * k)?
            .with_minimal(true)
            .with_evidence(facts))
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |invariant| Err(Error::InvalidInvariants { name: self.name.clone(), invariant });
        if self.chi < 3 {
            return fail("chi >= 3 (b2 = chi - 2 >= 1)");
        }
        if self.sigma.abs() > self.b2() {
            return fail("|sigma| <= b2");
        }
        if (self.chi + self.sigma).rem_euclid(2) != 0 {
            return fail("chi + sigma even");
        }
        if self.sigma <= -self.chi {
            return fail("sigma > -chi");
        }
        Ok(())
    }

    pub fn with_spin(mut self, spin: bool) -> Self {
        self.spin = spin;
        self
    }

    pub fn with_minimal(mut self, minimal: bool) -> Self {
        self.minimal = minimal;
        self
    }

    pub fn with_evidence(mut self, facts: StarEvidence) -> Self {
        self.star_facts = facts;
        self
    }

    pub fn with_h1_zero(mut self, h1_zero: bool) -> Self {
        self.h1_zero = h1_zero;
        self
    }

    pub fn b2(&self) -> i64 {
        self.chi - 2
    }

    pub fn b2_plus(&self) -> i64 {
        (self.b2() + self.sigma) / 2
    }

    pub fn b2_minus(&self) -> i64 {
        (self.b2() - self.sigma) / 2
    }
}

/// `c1^2 = 2 chi + 3 sigma`.
pub fn c1_squared(m: &ManifoldInvariants) -> i64 {
    2 * m.chi + 3 * m.sigma
}

/// `l = 3 chi - c1^2 = chi - 3 sigma`.
pub fn l_invariant(m: &ManifoldInvariants) -> i64 {
    let l = 3 * m.chi - c1_squared(m);
    debug_assert_eq!(l, m.chi - 3 * m.sigma);
    debug_assert_eq!(l, 2 - 2 * m.b2_plus() + 4 * m.b2_minus());
    l
}

/// For involutions the point defects vanish, so the signature is the sum of
/// the sphere self-intersections.
pub fn involution_signature_identity(spheres: &[i64]) -> i64 {
    spheres.iter().sum()
}

/// Numerator `p chi - c1^2` and denominator `p(2 - s) - (4 + s)` of the
/// sphere bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundTerms {
    pub numerator: i128,
    pub denominator: i128,
}

impl BoundTerms {
    pub fn new(p: PrimeOrder, chi: i64, c1_squared: i64, s: i64) -> Result<Self> {
        if s >= 0 {
            return Err(Error::Domain(format!(
                "sphere self-intersection cap must satisfy s < 0, got s = {s}"
            )));
        }
        let p = i128::from(p.get());
        let s = i128::from(s);
        let denominator = p * (2 - s) - (4 + s);
        assert!(denominator > 0, "p(2 - s) - (4 + s) must be positive for s < 0");
        Ok(BoundTerms { numerator: p * i128::from(chi) - i128::from(c1_squared), denominator })
    }

    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.numerator), BigInt::from(self.denominator))
            .expect("positive denominator")
    }
}

/// The `c1^2`-dependent bound; `n <= sphere_bound`.
pub fn sphere_bound(p: PrimeOrder, m: &ManifoldInvariants, s: i64) -> Result<Rational> {
    Ok(BoundTerms::new(p, m.chi, c1_squared(m), s)?.value())
}

/// The bound valid for all `c1^2`; `n < universal_bound` strictly.
pub fn universal_bound(p: PrimeOrder, m: &ManifoldInvariants, s: i64) -> Result<Rational> {
    let terms = BoundTerms::new(p, m.chi, c1_squared(m), s)?;
    let six = Rational::from_integer(6);
    let factor = Rational::one() + six / Rational::from_integer(BigInt::from(terms.denominator));
    Ok(Rational::new(m.chi, 2 - s).expect("2 - s > 0") * factor)
}

/// Largest `n` allowed by a non-strict bound `n <= b`.
pub fn max_under(bound: &Rational) -> i64 {
    bound.floor_of().to_i64().expect("bound fits in i64")
}

/// Largest `n` allowed by a strict bound `n < u`.
pub fn max_strictly_under(bound: &Rational) -> i64 {
    bound.ceil_of().to_i64().expect("bound fits in i64") - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    NoAction,
    Pseudofree,
    SphereBound { n_max: u64 },
}

impl Verdict {
    pub fn n_max(&self) -> Option<u64> {
        match *self {
            Verdict::NoAction => None,
            Verdict::Pseudofree => Some(0),
            Verdict::SphereBound { n_max } => Some(n_max),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NoAction => "NoAction",
            Verdict::Pseudofree => "Pseudofree",
            Verdict::SphereBound { .. } => "SphereBound",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SphereBound { n_max } => write!(f, "SphereBound(n <= {n_max})"),
            other => f.write_str(other.name()),
        }
    }
}

/// The result that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// R1: an involution forces `sigma <= 0`.
    InvolutionPositiveSignature,
    /// R2: for involutions `sigma` is the sum of sphere squares, each `<= -2`.
    InvolutionMinimalSignatureMinusOne,
    /// R3: cited result of Ruberman, spin manifolds with a homologically
    /// trivial involution have `sigma = 0`.
    RubermanSpin,
    /// R4: involutions on manifolds with `sigma = 0` are pseudofree.
    InvolutionSignatureZero,
    /// R5: `Z_3` actions near the line `c1^2 = 3 chi` are pseudofree.
    Z3NearBmyLine,
    /// Sphere bound is negative.
    Nonexistence,
    /// Sphere bound lies in `[0, 1)`.
    PseudofreeBound,
    /// Sphere bound is at least 1.
    SphereCount,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::InvolutionPositiveSignature => "R1:involution-positive-signature",
            Basis::InvolutionMinimalSignatureMinusOne => "R2:involution-minimal-signature-minus-one",
            Basis::RubermanSpin => "R3:cited-ruberman-spin",
            Basis::InvolutionSignatureZero => "R4:involution-signature-zero",
            Basis::Z3NearBmyLine => "R5:z3-near-bmy-line",
            Basis::Nonexistence => "bound:nonexistence",
            Basis::PseudofreeBound => "bound:pseudofree",
            Basis::SphereCount => "bound:sphere-count",
        }
    }

    /// Whether the result is background knowledge rather than a consequence
    /// of the sphere bound itself.
    pub fn is_cited(self) -> bool {
        self == Basis::RubermanSpin
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Verdict plus every exact intermediate value that went into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub basis: Basis,
    pub s_used: i64,
    pub star_rule: StarRule,
    pub c1_squared: i64,
    pub l: i64,
    pub terms: BoundTerms,
    pub sphere_bound: Rational,
    pub universal_bound: Rational,
}

/// Classifies the homologically trivial smooth `Z_p` actions on `m`.
///
/// Requires property (*) to be derivable from `m.star_facts`; the sphere cap
/// is `s = -2` for minimal manifolds and `s = -1` otherwise.
pub fn classify(p: PrimeOrder, m: &ManifoldInvariants) -> Result<Classification> {
    m.validate()?;
    let star_rule = derive_star(m)?;
    if !star_rule.holds() || !m.h1_zero {
        return Err(Error::HypothesesNotMet { name: m.name.clone() });
    }

    let s_used = if m.minimal { -2 } else { -1 };
    let c1sq = c1_squared(m);
    let l = l_invariant(m);
    let terms = BoundTerms::new(p, m.chi, c1sq, s_used)?;
    let bound = terms.value();
    let universal = universal_bound(p, m, s_used)?;

    let rule = match p.get() {
        2 if m.sigma > 0 => Some((Verdict::NoAction, Basis::InvolutionPositiveSignature)),
        2 if m.minimal && m.sigma == -1 => {
            Some((Verdict::NoAction, Basis::InvolutionMinimalSignatureMinusOne))
        }
        2 if m.spin && m.sigma != 0 => Some((Verdict::NoAction, Basis::RubermanSpin)),
        2 if m.sigma == 0 => Some((Verdict::Pseudofree, Basis::InvolutionSignatureZero)),
        3 if (0..=if m.minimal { 8 } else { 4 }).contains(&l) => {
            Some((Verdict::Pseudofree, Basis::Z3NearBmyLine))
        }
        _ => None,
    };

    let (verdict, basis) = rule.unwrap_or_else(|| {
        if bound.is_negative() {
            (Verdict::NoAction, Basis::Nonexistence)
        } else if bound < Rational::one() {
            (Verdict::Pseudofree, Basis::PseudofreeBound)
        } else {
            let n_max = max_under(&bound).min(max_strictly_under(&universal));
            (Verdict::SphereBound { n_max: n_max as u64 }, Basis::SphereCount)
        }
    });

    Ok(Classification {
        verdict,
        basis,
        s_used,
        star_rule,
        c1_squared: c1sq,
        l,
        terms,
        sphere_bound: bound,
        universal_bound: universal,
    })
}
