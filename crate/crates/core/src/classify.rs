use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::internal::{internal_group, internal_monoid, is_expansive, is_symmetric};
use crate::magma::FiniteMagma;

/// The four properties a ccm-magma may have relative to an idempotent `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PropertyFlags {
    pub expansive: bool,
    pub symmetric: bool,
    pub monoid: bool,
    pub group: bool,
}

impl fmt::Display for PropertyFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "(expansive={}, symmetric={}, monoid={}, group={})",
            yn(self.expansive),
            yn(self.symmetric),
            yn(self.monoid),
            yn(self.group)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Label {
    pub const ALL: [Label; 6] = [Label::I, Label::II, Label::III, Label::IV, Label::V, Label::VI];

    /// The flag column this label stands for.
    pub fn flags(self) -> PropertyFlags {
        let (expansive, symmetric, monoid, group) = match self {
            Label::I => (true, true, true, true),
            Label::II => (true, false, true, false),
            Label::III => (false, true, false, false),
            Label::IV => (false, false, false, false),
            Label::V => (false, false, true, false),
            Label::VI => (false, true, true, true),
        };
        PropertyFlags {
            expansive,
            symmetric,
            monoid,
            group,
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        Label::ALL.into_iter().find(|l| l.to_string() == s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationLabel {
    pub label: Label,
    pub flags: PropertyFlags,
}

/// Maps a flag quadruple to its column; any other combination is an error
/// and points at an inconsistency upstream.
pub fn classify(flags: PropertyFlags) -> Result<ClassificationLabel> {
    Label::ALL
        .into_iter()
        .find(|l| l.flags() == flags)
        .map(|label| ClassificationLabel { label, flags })
        .ok_or_else(|| Error::InadmissibleFlags(flags.to_string()))
}

/// Computes the four flags of a finite magma at an idempotent `e`.
pub fn finite_flags(m: &FiniteMagma, e: usize) -> Result<PropertyFlags> {
    let monoid = internal_monoid(m, e)?.is_some();
    let group = internal_group(m, e)?.is_some();
    Ok(PropertyFlags {
        expansive: is_expansive(m, e),
        symmetric: is_symmetric(m, e),
        monoid,
        group,
    })
}

pub fn classify_finite(m: &FiniteMagma, e: usize) -> Result<ClassificationLabel> {
    classify(finite_flags(m, e)?)
}
