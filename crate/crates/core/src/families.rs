//! Built-in Dynkin families with orientation strings, e.g. `A3`, `A3:><`,
//! `D4:<<>`, `E6`. One orientation character per edge of the canonical edge
//! list; `>` orients the edge from its lower-numbered end, `<` the other
//! way. Without a string every edge is oriented `>`.

use crate::quiver::Quiver;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family tag `{0}`; expected A<n>, D<n> (n >= 4) or E6/E7/E8")]
    UnknownTag(String),
    #[error(
        "orientation `{orientation}` has {got} characters, family {family} has {expected} edges"
    )]
    OrientationLength {
        family: String,
        orientation: String,
        expected: usize,
        got: usize,
    },
    #[error("orientation may only contain `<` and `>`, found `{0}`")]
    OrientationChar(char),
}

/// Canonical edge list of a Dynkin diagram, 0-based. Paths are numbered
/// along the way; D attaches vertices 1 and 2 to the branch vertex 3, E
/// attaches vertex 2 to the fourth path vertex.
pub fn canonical_edges(letter: char, n: usize) -> Result<Vec<(usize, usize)>, FamilyError> {
    let tag = || format!("{letter}{n}");
    match letter {
        'A' if n >= 1 => Ok((0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()),
        'D' if n >= 4 => {
            let mut edges = vec![(0, 2), (1, 2)];
            edges.extend((2..n - 1).map(|i| (i, i + 1)));
            Ok(edges)
        }
        'E' if (6..=8).contains(&n) => {
            let mut edges = vec![(0, 2), (2, 3), (3, 4), (4, 5)];
            edges.extend((5..n - 1).map(|i| (i, i + 1)));
            edges.push((1, 3));
            Ok(edges)
        }
        _ => Err(FamilyError::UnknownTag(tag())),
    }
}

fn parse_tag(tag: &str) -> Result<(char, usize, Option<&str>), FamilyError> {
    let (head, orientation) = match tag.split_once(':') {
        Some((h, o)) => (h, Some(o)),
        None => (tag, None),
    };
    let mut chars = head.chars();
    let letter = chars
        .next()
        .map(|c| c.to_ascii_uppercase())
        .ok_or_else(|| FamilyError::UnknownTag(tag.to_string()))?;
    let n: usize = chars
        .as_str()
        .parse()
        .map_err(|_| FamilyError::UnknownTag(tag.to_string()))?;
    Ok((letter, n, orientation))
}

/// Expand a family tag into a validated quiver.
pub fn family_quiver(tag: &str) -> Result<Quiver, FamilyError> {
    let (letter, n, orientation) = parse_tag(tag)?;
    let edges = canonical_edges(letter, n)?;
    let orientation = match orientation {
        Some(o) => {
            if o.chars().count() != edges.len() {
                return Err(FamilyError::OrientationLength {
                    family: format!("{letter}{n}"),
                    orientation: o.to_string(),
                    expected: edges.len(),
                    got: o.chars().count(),
                });
            }
            o.to_string()
        }
        None => ">".repeat(edges.len()),
    };
    let mut arrows = Vec::with_capacity(edges.len());
    for (&(u, v), c) in edges.iter().zip(orientation.chars()) {
        match c {
            '>' => arrows.push((u, v)),
            '<' => arrows.push((v, u)),
            other => return Err(FamilyError::OrientationChar(other)),
        }
    }
    Ok(Quiver::new(n, arrows).expect("canonical edges are in range"))
}

/// Every orientation of a family, tagged by its orientation string.
pub fn all_orientations(letter: char, n: usize) -> Result<Vec<(String, Quiver)>, FamilyError> {
    let edges = canonical_edges(letter, n)?;
    let count = edges.len();
    let mut out = Vec::with_capacity(1 << count);
    for mask in 0u32..1 << count {
        let orientation: String = (0..count)
            .map(|i| if mask >> i & 1 == 1 { '<' } else { '>' })
            .collect();
        let tag = format!("{}{}:{}", letter.to_ascii_uppercase(), n, orientation);
        out.push((
            orientation.clone(),
            family_quiver(&tag).expect("valid by construction"),
        ));
    }
    Ok(out)
}
