use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// An irreducible Cartan type, e.g. `B4` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

const LEGAL_RANGES: &str = "A_n (n>=1), B_n (n>=2), C_n (n>=2), D_n (n>=4), E_6, E_7, E_8, F_4, G_2";

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType(format!(
                "{}{} is not an irreducible type; legal: {LEGAL_RANGES}",
                family.letter(),
                rank
            )));
        }
        // keep masks within 128 bits
        if num_positive_roots(family, rank) > 128 {
            return Err(Error::InvalidType(format!(
                "{}{} has more than 128 positive roots",
                family.letter(),
                rank
            )));
        }
        Ok(TypeLabel { family, rank })
    }

    /// Number of positive roots by the classical formulas.
    pub fn num_positive_roots(&self) -> usize {
        num_positive_roots(self.family, self.rank)
    }
}

fn num_positive_roots(family: Family, n: usize) -> usize {
    match family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => {
                return Err(Error::InvalidType(format!(
                    "cannot parse '{s}'; legal: {LEGAL_RANGES}"
                )))
            }
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::InvalidType(format!("cannot parse rank in '{s}'")))?;
        TypeLabel::new(family, rank)
    }
}

/// Symmetric Gram matrix of the simple roots, scaled to be integral.
/// Bourbaki labeling throughout.
pub(crate) fn gram_matrix(label: TypeLabel) -> Vec<Vec<i64>> {
    let n = label.rank;
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match label.family {
        Family::A => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::B => {
            for i in 0..n {
                g[i][i] = if i + 1 < n { 4 } else { 2 };
            }
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, -2);
            }
        }
        Family::C => {
            for i in 0..n {
                g[i][i] = if i + 1 < n { 2 } else { 4 };
            }
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, if i + 2 == n { -2 } else { -1 });
            }
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let t: TypeLabel = "E8".parse().unwrap();
        assert_eq!(t, TypeLabel::new(Family::E, 8).unwrap());
        assert_eq!(t.to_string(), "E8");
        assert_eq!("b_4".parse::<TypeLabel>().unwrap().to_string(), "B4");
    }

    #[test]
    fn rejects_illegal_pairs() {
        for s in ["Z9", "D3", "E9", "F5", "G3", "B1", "A0", "A"] {
            let err = s.parse::<TypeLabel>().unwrap_err();
            assert!(matches!(err, Error::InvalidType(_)), "{s}");
        }
        let msg = "E5".parse::<TypeLabel>().unwrap_err().to_string();
        assert!(msg.contains("E_6, E_7, E_8"));
    }

    #[test]
    fn accepts_c2() {
        assert!("C2".parse::<TypeLabel>().is_ok());
    }
}
