use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Structural statements the harness can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementId {
    SRadicalQuotient,
    IntersectionVsProduct,
    SpectrumSZero,
    NilsInColon,
    NilsSZero,
    LocalizationReduced,
    LocalizationArtinian,
    ProductOfFields,
    PolyTransfer,
    USRedImpliesUSArm,
    ERingArmendariz,
    IdealizationArmendariz,
    SReducedImpliesHopfian,
    SPfImpliesSReduced,
    StructureForward,
    StructureConverse,
    NilIsIntersection,
    NilNilpotent,
}

impl StatementId {
    pub const ALL: [StatementId; 18] = [
        StatementId::SRadicalQuotient,
        StatementId::IntersectionVsProduct,
        StatementId::SpectrumSZero,
        StatementId::NilsInColon,
        StatementId::NilsSZero,
        StatementId::LocalizationReduced,
        StatementId::LocalizationArtinian,
        StatementId::ProductOfFields,
        StatementId::PolyTransfer,
        StatementId::USRedImpliesUSArm,
        StatementId::ERingArmendariz,
        StatementId::IdealizationArmendariz,
        StatementId::SReducedImpliesHopfian,
        StatementId::SPfImpliesSReduced,
        StatementId::StructureForward,
        StatementId::StructureConverse,
        StatementId::NilIsIntersection,
        StatementId::NilNilpotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatementId::SRadicalQuotient => "S_RADICAL_QUOTIENT",
            StatementId::IntersectionVsProduct => "INTERSECTION_VS_PRODUCT",
            StatementId::SpectrumSZero => "SPECTRUM_S_ZERO",
            StatementId::NilsInColon => "NILS_IN_COLON",
            StatementId::NilsSZero => "NILS_S_ZERO",
            StatementId::LocalizationReduced => "LOCALIZATION_REDUCED",
            StatementId::LocalizationArtinian => "LOCALIZATION_ARTINIAN",
            StatementId::ProductOfFields => "PRODUCT_OF_FIELDS",
            StatementId::PolyTransfer => "POLY_TRANSFER",
            StatementId::USRedImpliesUSArm => "U_S_RED_IMPLIES_U_S_ARM",
            StatementId::ERingArmendariz => "E_RING_ARMENDARIZ",
            StatementId::IdealizationArmendariz => "IDEALIZATION_ARMENDARIZ",
            StatementId::SReducedImpliesHopfian => "S_REDUCED_IMPLIES_HOPFIAN",
            StatementId::SPfImpliesSReduced => "S_PF_IMPLIES_S_REDUCED",
            StatementId::StructureForward => "STRUCTURE_FORWARD",
            StatementId::StructureConverse => "STRUCTURE_CONVERSE",
            StatementId::NilIsIntersection => "NIL_IS_INTERSECTION",
            StatementId::NilNilpotent => "NIL_NILPOTENT",
        }
    }

    /// One-line statement of what is checked.
    pub fn summary(self) -> &'static str {
        match self {
            StatementId::SRadicalQuotient => {
                "if no element of S+I is a zero divisor of R/I: I is S-radical iff R/I is S-reduced"
            }
            StatementId::IntersectionVsProduct => {
                "R S-reduced: I meet J is S-zero iff IJ is S-zero"
            }
            StatementId::SpectrumSZero => {
                "R S-reduced, 0 not in S: the intersection of all S-primes is S-zero"
            }
            StatementId::NilsInColon => "Nil_S(R) lies in (P : s_P) for every S-prime P",
            StatementId::NilsSZero => "R S-reduced: Nil_S(R) is S-zero",
            StatementId::LocalizationReduced => "R S-reduced: the localization at S is reduced",
            StatementId::LocalizationArtinian => {
                "R S-Noetherian and S-reduced, localization elements zero divisors or units: localization is Artinian"
            }
            StatementId::ProductOfFields => {
                "R S-Artinian and reduced with S free of zero divisors: R is a finite product of fields"
            }
            StatementId::PolyTransfer => "R is S-reduced iff R[X] is S-reduced",
            StatementId::USRedImpliesUSArm => "R u-S-reduced: R is u-S-Armendariz",
            StatementId::ERingArmendariz => "R S-reduced: E(R) is u-S'-Armendariz",
            StatementId::IdealizationArmendariz => "R u-S-reduced: R(+)R is u-(S(+)R)-Armendariz",
            StatementId::SReducedImpliesHopfian => "R S-reduced: R is S-strongly Hopfian",
            StatementId::SPfImpliesSReduced => "R S-PF: R is S-reduced",
            StatementId::StructureForward => {
                "R S-reduced: R is an S-subdirect product of the S-integral domains R/P over S-minimal S-primes"
            }
            StatementId::StructureConverse => {
                "R an S-subdirect product of S-integral domains R/P: R is S-reduced"
            }
            StatementId::NilIsIntersection => {
                "S free of zero divisors: Nil(R) is the intersection of primes disjoint from S"
            }
            StatementId::NilNilpotent => "S free of zero divisors, R S-Artinian: Nil(R) is nilpotent",
        }
    }

    /// Hypotheses that every finite ring satisfies vacuously.
    pub fn degenerate_hypotheses(self) -> bool {
        matches!(
            self,
            StatementId::LocalizationArtinian
                | StatementId::ProductOfFields
                | StatementId::NilIsIntersection
                | StatementId::NilNilpotent
        )
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatementId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        StatementId::ALL
            .into_iter()
            .find(|id| id.name() == wanted)
            .ok_or_else(|| format!("unknown statement `{s}`"))
    }
}

impl Serialize for StatementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Which form of a statement to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Full,
    /// Evaluate the conclusion without requiring the hypotheses.
    DropHypothesis,
    /// Swap hypotheses and conclusion.
    Converse,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::DropHypothesis => "drop-hypothesis",
            Variant::Converse => "converse",
        }
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "full" => Ok(Variant::Full),
            "drop-hypothesis" | "drop" => Ok(Variant::DropHypothesis),
            "converse" => Ok(Variant::Converse),
            _ => Err(format!("unknown variant `{s}`")),
        }
    }
}
