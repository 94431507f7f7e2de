//! JSON wire shapes. Integers are written as bare JSON numbers of any
//! magnitude, never as strings or digit arrays.

use cubesum_core::{BigInt, SolutionSet, Triple};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A JSON integer of arbitrary size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let number: serde_json::Number = self.0.to_string().parse().map_err(S::Error::custom)?;
        number.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let number = serde_json::Number::deserialize(deserializer)?;
        number
            .as_str()
            .parse()
            .map(Int)
            .map_err(|_| D::Error::custom(format!("expected an integer, found {number}")))
    }
}

pub type WireTriple = [Int; 3];

pub fn triple_to_wire(t: &Triple) -> WireTriple {
    [Int(t.x.clone()), Int(t.y.clone()), Int(t.z.clone())]
}

pub fn triple_from_wire([x, y, z]: WireTriple) -> Triple {
    Triple::new(x.0, y.0, z.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Finite,
    InfiniteFamily,
}

/// `{"kind": ..., "solutions": [[x,y,z], ...], "family_anchor": s}`.
/// `solutions` is present only for finite sets, `family_anchor` only for
/// the infinite family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireSolutionSet {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<WireTriple>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_anchor: Option<Int>,
}

impl From<&SolutionSet> for WireSolutionSet {
    fn from(set: &SolutionSet) -> Self {
        match set {
            SolutionSet::Finite(triples) => WireSolutionSet {
                kind: Kind::Finite,
                solutions: Some(triples.iter().map(triple_to_wire).collect()),
                family_anchor: None,
            },
            SolutionSet::InfiniteFamily { anchor } => WireSolutionSet {
                kind: Kind::InfiniteFamily,
                solutions: None,
                family_anchor: Some(Int(anchor.clone())),
            },
        }
    }
}

impl TryFrom<WireSolutionSet> for SolutionSet {
    type Error = String;

    fn try_from(wire: WireSolutionSet) -> Result<Self, Self::Error> {
        match (wire.kind, wire.solutions, wire.family_anchor) {
            (Kind::Finite, Some(solutions), None) => Ok(SolutionSet::Finite(
                solutions.into_iter().map(triple_from_wire).collect(),
            )),
            (Kind::InfiniteFamily, None, Some(anchor)) => {
                Ok(SolutionSet::InfiniteFamily { anchor: anchor.0 })
            }
            (kind, _, _) => Err(format!("fields do not match kind {kind:?}")),
        }
    }
}

pub fn solution_set_to_json(set: &SolutionSet) -> String {
    serde_json::to_string(&WireSolutionSet::from(set)).expect("wire types always serialize")
}

pub fn solution_set_from_json(text: &str) -> Result<SolutionSet, String> {
    let wire: WireSolutionSet = serde_json::from_str(text).map_err(|e| e.to_string())?;
    SolutionSet::try_from(wire)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_instance_shape() {
        let set = cubesum_core::solve(&cubesum_core::TripleSystem::new(3, 3)).unwrap();
        assert_eq!(
            solution_set_to_json(&set),
            r#"{"kind":"finite","solutions":[[-5,4,4],[1,1,1],[4,-5,4],[4,4,-5]]}"#
        );
        let family = SolutionSet::InfiniteFamily {
            anchor: BigInt::from(-7),
        };
        assert_eq!(
            solution_set_to_json(&family),
            r#"{"kind":"infinite_family","family_anchor":-7}"#
        );
        assert_eq!(
            solution_set_to_json(&SolutionSet::Finite(vec![])),
            r#"{"kind":"finite","solutions":[]}"#
        );
    }

    #[test]
    fn huge_integers_stay_numbers() {
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let set = SolutionSet::InfiniteFamily {
            anchor: -big.clone(),
        };
        let text = solution_set_to_json(&set);
        assert_eq!(
            text,
            r#"{"kind":"infinite_family","family_anchor":-123456789012345678901234567890123456789}"#
        );
        assert_eq!(solution_set_from_json(&text), Ok(set));
    }

    #[test]
    fn rejects_inconsistent_or_fractional() {
        assert!(solution_set_from_json(r#"{"kind":"finite"}"#).is_err());
        assert!(solution_set_from_json(r#"{"kind":"infinite_family","solutions":[]}"#).is_err());
        assert!(solution_set_from_json(r#"{"kind":"finite","solutions":[[1.5,0,0]]}"#).is_err());
        assert!(solution_set_from_json(r#"{"kind":"finite","solutions":[],"extra":1}"#).is_err());
    }
}
