use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The seven theories the crate decides. Each fixes a signature and an
/// intended model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    /// ⟨ℂ; ×, ⁻¹, 0, 1, ω₂, ω₃, …⟩
    CMul,
    /// ⟨ℝ; ×, ⁻¹, 0, 1, −1, 𝒫⟩
    RMul,
    /// ⟨ℝ⁺; ×, ⁻¹, 1⟩
    RPosMul,
    /// ⟨ℝ≥0; ×, ⁻¹, 0, 1⟩
    RNonnegMul,
    /// ⟨ℚ⁺; ×, ⁻¹, 1, ℜ₂, ℜ₃, …⟩
    QPosMul,
    /// ⟨ℤ; +, −, 0, 1, ≡₂, ≡₃, …⟩
    ZAdd,
    /// ⟨ℚ; +, −, 0⟩, shared with ℝ and ℂ
    DivAdd,
}

impl Theory {
    pub const ALL: [Theory; 7] = [
        Theory::CMul,
        Theory::RMul,
        Theory::RPosMul,
        Theory::RNonnegMul,
        Theory::QPosMul,
        Theory::ZAdd,
        Theory::DivAdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theory::CMul => "c-mul",
            Theory::RMul => "r-mul",
            Theory::RPosMul => "rpos-mul",
            Theory::RNonnegMul => "rnonneg-mul",
            Theory::QPosMul => "qpos-mul",
            Theory::ZAdd => "z-add",
            Theory::DivAdd => "div-add",
        }
    }

    pub fn is_multiplicative(self) -> bool {
        !matches!(self, Theory::ZAdd | Theory::DivAdd)
    }

    /// Whether the carrier contains an absorbing zero.
    pub fn has_zero(self) -> bool {
        matches!(self, Theory::CMul | Theory::RMul | Theory::RNonnegMul)
    }

    pub fn allows_omega(self) -> bool {
        self == Theory::CMul
    }

    pub fn allows_positivity(self) -> bool {
        self == Theory::RMul
    }

    pub fn allows_root_predicate(self) -> bool {
        self == Theory::QPosMul
    }

    pub fn allows_congruence(self) -> bool {
        self == Theory::ZAdd
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theory::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown theory `{s}`")))
    }
}
