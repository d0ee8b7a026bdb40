use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// The four families of total spaces over `S^4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CohomologyKind {
    /// Principal `S^3` bundle with Euler class `k` (dimension 7).
    #[serde(rename = "P_k")]
    PrincipalS3,
    /// The `S^2` bundle `P_k / S^1` (dimension 6).
    #[serde(rename = "M_k")]
    S2Bundle,
    /// `S^3` bundle with classes `(k, l)` (dimension 7).
    #[serde(rename = "M_kl")]
    S3Bundle,
    /// Principal `S^3 × S^3` bundle with classes `(k, l)` (dimension 10).
    #[serde(rename = "P_kl")]
    PrincipalS3xS3,
}

impl CohomologyKind {
    pub fn needs_l(self) -> bool {
        matches!(
            self,
            CohomologyKind::S3Bundle | CohomologyKind::PrincipalS3xS3
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            CohomologyKind::PrincipalS3 => "P_k",
            CohomologyKind::S2Bundle => "M_k",
            CohomologyKind::S3Bundle => "M_kl",
            CohomologyKind::PrincipalS3xS3 => "P_kl",
        }
    }
}

impl FromStr for CohomologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', ','], "").as_str() {
            "pk" => Ok(CohomologyKind::PrincipalS3),
            "mk" => Ok(CohomologyKind::S2Bundle),
            "mkl" => Ok(CohomologyKind::S3Bundle),
            "pkl" => Ok(CohomologyKind::PrincipalS3xS3),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

impl fmt::Display for CohomologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `H^degree = Z^free_rank ⊕ Z/t_1 ⊕ ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub degree: u32,
    pub free_rank: u32,
    pub torsion: Vec<u64>,
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "H^{} = {}", self.degree, parts.join(" + "))
    }
}

/// Nonzero integral cohomology of a total space, by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub kind: CohomologyKind,
    pub k: i64,
    pub l: Option<i64>,
    pub dimension: u32,
    pub groups: Vec<CohomologyGroup>,
    /// For `M_k`: the coefficient `c` in `x^2 = c·y`, `x ∈ H^2`, `y ∈ H^4`.
    pub ring_relation: Option<i64>,
    pub notes: Vec<String>,
}

impl CohomologyReport {
    pub fn group(&self, degree: u32) -> Option<&CohomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }
}

fn free(degree: u32) -> CohomologyGroup {
    CohomologyGroup {
        degree,
        free_rank: 1,
        torsion: vec![],
    }
}

fn trivial_pair_groups() -> Vec<CohomologyGroup> {
    let rank = |degree, free_rank| CohomologyGroup {
        degree,
        free_rank,
        torsion: vec![],
    };
    vec![
        rank(0, 1),
        rank(3, 2),
        rank(4, 1),
        rank(6, 1),
        rank(7, 2),
        rank(10, 1),
    ]
}

fn group(degree: u32, free_rank: u32, torsion: u64) -> Option<CohomologyGroup> {
    let torsion = if torsion > 1 { vec![torsion] } else { vec![] };
    (free_rank > 0 || !torsion.is_empty()).then_some(CohomologyGroup {
        degree,
        free_rank,
        torsion,
    })
}

/// Cohomology of `P_k`, `M_k`, `M_{k,l}` or `P_{k,l}` from the bundle data
/// (`l` is required for the last two).
pub fn cohomology_report(kind: CohomologyKind, k: i64, l: Option<i64>) -> Result<CohomologyReport> {
    let l = match (kind.needs_l(), l) {
        (true, None) => {
            return Err(Error::Validation(vec![format!(
                "{kind} needs both k and l"
            )]))
        }
        (false, Some(_)) => return Err(Error::Validation(vec![format!("{kind} takes only k")])),
        (_, l) => l,
    };
    let mut notes = Vec::new();
    let mut ring_relation = None;
    let (dimension, groups) = match kind {
        CohomologyKind::PrincipalS3 => {
            let t = k.unsigned_abs();
            let groups = if k == 0 {
                notes.push("trivial bundle S^3 × S^4".into());
                vec![free(0), free(3), free(4), free(7)]
            } else {
                [group(0, 1, 1), group(4, 0, t), group(7, 1, 1)]
                    .into_iter()
                    .flatten()
                    .collect()
            };
            if t == 1 {
                notes.push("cohomology of S^7".into());
            }
            (7, groups)
        }
        CohomologyKind::S2Bundle => {
            ring_relation = Some(k);
            notes.push(format!("ring Z[x, y]/(x^2 - {k} y, y^2), |x| = 2, |y| = 4"));
            if k == 0 {
                notes.push("total space S^2 × S^4".into());
            }
            (6, vec![free(0), free(2), free(4), free(6)])
        }
        CohomologyKind::S3Bundle => {
            let l = l.expect("checked above");
            let e = i128::from(k) + i128::from(l);
            notes.push(format!("Euler class e = k + l = {e}"));
            let groups = if e == 0 {
                vec![free(0), free(3), free(4), free(7)]
            } else {
                let t = u64::try_from(e.unsigned_abs()).map_err(|_| Error::Overflow("euler"))?;
                if t == 1 {
                    notes.push("homotopy sphere".into());
                }
                [group(0, 1, 1), group(4, 0, t), group(7, 1, 1)]
                    .into_iter()
                    .flatten()
                    .collect()
            };
            (7, groups)
        }
        CohomologyKind::PrincipalS3xS3 => {
            let l = l.expect("checked above");
            let g = k.unsigned_abs().gcd(&l.unsigned_abs());
            let groups = if g == 0 {
                notes.push("trivial bundle S^3 × S^3 × S^4".into());
                trivial_pair_groups()
            } else {
                // d_4 sends the fibre classes to (k, l) and x_1 x_2 to (-l, k)
                [
                    group(0, 1, 1),
                    group(3, 1, 1),
                    group(4, 0, g),
                    group(7, 1, g),
                    group(10, 1, 1),
                ]
                .into_iter()
                .flatten()
                .collect()
            };
            if g > 1 {
                notes.push(format!(
                    "H^7 carries the torsion Z/{g} dual to the torsion of H^4"
                ));
            }
            (10, groups)
        }
    };
    Ok(CohomologyReport {
        kind,
        k,
        l,
        dimension,
        groups,
        ring_relation,
        notes,
    })
}
