use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("empty family")]
    Empty,
    #[error("cannot parse `{0}`; expected Kp, Pk, a `+` union of those, or K1*[a,b,...]")]
    Syntax(String),
    #[error("clique order {0} is below 2")]
    CliqueTooSmall(usize),
    #[error("path order {0} is below 2")]
    PathTooSmall(usize),
    #[error("a disjoint union needs at least two parts")]
    TrivialUnion,
    #[error("disjoint unions may only combine cliques and paths")]
    NestedUnion,
}

/// One forbidden graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Member {
    Clique(usize),
    Path(usize),
    /// Vertex-disjoint union of cliques and paths.
    DisjointUnion(Vec<Member>),
    /// `K_1 ∨ (P_{a} ∪ P_{b} ∪ ...)`.
    JoinK1(Vec<usize>),
}

impl Member {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            Member::Clique(p) if *p < 2 => Err(FamilyError::CliqueTooSmall(*p)),
            Member::Path(k) if *k < 2 => Err(FamilyError::PathTooSmall(*k)),
            Member::JoinK1(orders) => {
                if orders.is_empty() {
                    return Err(FamilyError::Syntax("K1*[]".into()));
                }
                match orders.iter().find(|&&k| k < 2) {
                    Some(&k) => Err(FamilyError::PathTooSmall(k)),
                    None => Ok(()),
                }
            }
            Member::DisjointUnion(parts) => {
                if parts.len() < 2 {
                    return Err(FamilyError::TrivialUnion);
                }
                for part in parts {
                    if !matches!(part, Member::Clique(_) | Member::Path(_)) {
                        return Err(FamilyError::NestedUnion);
                    }
                    part.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Number of vertices of the member graph.
    pub fn order(&self) -> usize {
        match self {
            Member::Clique(n) | Member::Path(n) => *n,
            Member::DisjointUnion(parts) => parts.iter().map(Member::order).sum(),
            Member::JoinK1(orders) => 1 + orders.iter().sum::<usize>(),
        }
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Clique(p) => write!(f, "K{p}"),
            Member::Path(k) => write!(f, "P{k}"),
            Member::DisjointUnion(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
            Member::JoinK1(orders) => {
                let list: Vec<String> = orders.iter().map(usize::to_string).collect();
                write!(f, "K1*[{}]", list.join(","))
            }
        }
    }
}

fn parse_count(s: &str, whole: &str) -> Result<usize, FamilyError> {
    s.trim().parse().map_err(|_| FamilyError::Syntax(whole.to_string()))
}

fn parse_atom(s: &str) -> Result<Member, FamilyError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("K1*") {
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| FamilyError::Syntax(s.to_string()))?;
        let orders = inner.split(',').map(|x| parse_count(x, s)).collect::<Result<Vec<_>, _>>()?;
        return Ok(Member::JoinK1(orders));
    }
    if let Some(n) = s.strip_prefix('K') {
        return Ok(Member::Clique(parse_count(n, s)?));
    }
    if let Some(n) = s.strip_prefix('P') {
        return Ok(Member::Path(parse_count(n, s)?));
    }
    Err(FamilyError::Syntax(s.to_string()))
}

impl FromStr for Member {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('+').collect();
        let member = if parts.len() == 1 {
            parse_atom(parts[0])?
        } else {
            Member::DisjointUnion(parts.into_iter().map(parse_atom).collect::<Result<_, _>>()?)
        };
        member.validate()?;
        Ok(member)
    }
}

/// An ordered list of forbidden graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForbiddenFamily {
    members: Vec<Member>,
}

impl ForbiddenFamily {
    pub fn new(members: Vec<Member>) -> Result<Self, FamilyError> {
        if members.is_empty() {
            return Err(FamilyError::Empty);
        }
        for m in &members {
            m.validate()?;
        }
        Ok(ForbiddenFamily { members })
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// `{K_3, P_k}`.
    pub fn triangle_and_path(k: usize) -> Self {
        ForbiddenFamily::new(vec![Member::Clique(3), Member::Path(k)]).expect("k >= 2")
    }

    /// `{K_3 ∪ P_k}`.
    pub fn triangle_union_path(k: usize) -> Self {
        ForbiddenFamily::new(vec![Member::DisjointUnion(vec![Member::Clique(3), Member::Path(k)])]).expect("k >= 2")
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for ForbiddenFamily {
    type Err = FamilyError;

    /// Members are separated by commas outside brackets.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut members = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, c) in s.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => depth = depth.checked_sub(1).ok_or_else(|| FamilyError::Syntax(s.to_string()))?,
                ',' if depth == 0 => {
                    members.push(s[start..i].parse()?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(FamilyError::Syntax(s.to_string()));
        }
        if !s[start..].trim().is_empty() || !members.is_empty() {
            members.push(s[start..].parse()?);
        }
        ForbiddenFamily::new(members)
    }
}

impl Serialize for ForbiddenFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
