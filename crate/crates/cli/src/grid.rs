//! Parameter-grid parsing: comma lists (`32,64,128`) and inclusive ranges
//! (`lo:hi:step`).

use std::fmt;
use std::str::FromStr;

/// Grid of item/marked counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsizeGrid(pub Vec<usize>);

/// Grid of fault probabilities (or other reals).
#[derive(Debug, Clone, PartialEq)]
pub struct FloatGrid(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridParseError(String);

impl fmt::Display for GridParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for GridParseError {}

impl FromStr for UsizeGrid {
    type Err = GridParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(GridParseError(format!("range must be lo:hi:step, got `{s}`")));
            }
            let lo: usize = parse_part(parts[0])?;
            let hi: usize = parse_part(parts[1])?;
            let step: usize = parse_part(parts[2])?;
            if step == 0 {
                return Err(GridParseError("range step must be positive".into()));
            }
            if lo > hi {
                return Err(GridParseError(format!("empty range `{s}`")));
            }
            (lo..=hi).step_by(step).collect()
        } else {
            s.split(',')
                .map(|part| parse_part::<usize>(part))
                .collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() {
            return Err(GridParseError(format!("grid `{s}` is empty")));
        }
        Ok(UsizeGrid(values))
    }
}

impl FromStr for FloatGrid {
    type Err = GridParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values: Vec<f64> = if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(GridParseError(format!("range must be lo:hi:step, got `{s}`")));
            }
            let lo: f64 = parse_part(parts[0])?;
            let hi: f64 = parse_part(parts[1])?;
            let step: f64 = parse_part(parts[2])?;
            if !(step > 0.0) {
                return Err(GridParseError("range step must be positive".into()));
            }
            if lo > hi {
                return Err(GridParseError(format!("empty range `{s}`")));
            }
            // inclusive of hi, tolerating rounding in the division
            let count = ((hi - lo) / step + 1e-9).floor() as usize;
            (0..=count).map(|i| lo + step * i as f64).collect()
        } else {
            s.split(',')
                .map(|part| parse_part::<f64>(part))
                .collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() {
            return Err(GridParseError(format!("grid `{s}` is empty")));
        }
        Ok(FloatGrid(values))
    }
}

fn parse_part<T: FromStr>(part: &str) -> Result<T, GridParseError> {
    part.trim()
        .parse()
        .map_err(|_| GridParseError(format!("cannot parse `{part}`")))
}

pub fn parse_usize_grid(s: &str) -> Result<UsizeGrid, GridParseError> {
    s.parse()
}

pub fn parse_float_grid(s: &str) -> Result<FloatGrid, GridParseError> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comma_lists() {
        assert_eq!("32".parse::<UsizeGrid>().unwrap().0, vec![32]);
        assert_eq!("32,64,128".parse::<UsizeGrid>().unwrap().0, vec![32, 64, 128]);
        assert_eq!("0.1,0.5".parse::<FloatGrid>().unwrap().0, vec![0.1, 0.5]);
    }

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!("32:128:32".parse::<UsizeGrid>().unwrap().0, vec![32, 64, 96, 128]);
        assert_eq!("1:4:2".parse::<UsizeGrid>().unwrap().0, vec![1, 3]);
        let g = "0.25:0.75:0.25".parse::<FloatGrid>().unwrap().0;
        assert_eq!(g.len(), 3);
        assert!((g[2] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!("".parse::<UsizeGrid>().is_err());
        assert!("1:2".parse::<UsizeGrid>().is_err());
        assert!("4:1:1".parse::<UsizeGrid>().is_err());
        assert!("1:10:0".parse::<UsizeGrid>().is_err());
        assert!("a,b".parse::<FloatGrid>().is_err());
    }
}
