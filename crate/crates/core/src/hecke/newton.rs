use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::localfield::LocalElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: Ratio<i64>,
    pub length: usize,
}

/// Lower convex hull of `(i, v(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Root valuations `−slope`, each repeated `length` times.
    pub fn root_valuations(&self) -> Vec<Ratio<i64>> {
        self.segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(-s.slope, s.length))
            .collect()
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    /// Hull height at abscissa `x` (between the first and last points).
    fn height_at(&self, x: usize) -> Option<Ratio<i64>> {
        let (mut x0, mut y0) = *self.points.first()?;
        if x < x0 {
            return None;
        }
        for s in &self.segments {
            let x1 = x0 + s.length;
            if x <= x1 {
                return Some(Ratio::from(y0) + s.slope * Ratio::from((x - x0) as i64));
            }
            y0 = (Ratio::from(y0) + s.slope * Ratio::from(s.length as i64)).to_integer();
            x0 = x1;
        }
        None
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("slope\tlength\n");
        for s in &self.segments {
            out.push_str(&format!("{}\t{}\n", s.slope, s.length));
        }
        out.push_str(&format!("segments={}\n", self.segments.len()));
        out
    }
}

/// Lower hull of a point list sorted by abscissa.
fn hull(points: &[(usize, i64)]) -> Vec<Segment> {
    let mut stack: Vec<(usize, i64)> = Vec::new();
    for &p in points {
        while stack.len() >= 2 {
            let (x1, y1) = stack[stack.len() - 2];
            let (x2, y2) = stack[stack.len() - 1];
            // Drop the middle point if it lies on or above the chord.
            let lhs = (y2 - y1) as i128 * (p.0 - x1) as i128;
            let rhs = (p.1 - y1) as i128 * (x2 - x1) as i128;
            if lhs >= rhs {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(p);
    }
    stack
        .windows(2)
        .map(|w| Segment {
            slope: Ratio::new(w[1].1 - w[0].1, (w[1].0 - w[0].0) as i64),
            length: w[1].0 - w[0].0,
        })
        .collect()
}

/// Newton polygon of `Σ a_i λ^i`, coefficients lowest first. Exact zeros are
/// skipped; an approximate zero `O(π^N)` is accepted only if `N` is on or
/// above the hull of the certified points.
pub fn newton_polygon(coeffs: &[LocalElement]) -> Result<NewtonPolygon> {
    let points: Vec<(usize, i64)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i, v)))
        .collect();
    if points.is_empty() {
        return Err(Error::precision("no coefficient has a certified valuation"));
    }
    let poly = NewtonPolygon {
        segments: hull(&points),
        points,
    };
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() && !c.is_exact_zero() {
            let bound = c.min_valuation();
            let uncertified = match poly.height_at(i) {
                Some(h) => Ratio::from(bound) < h,
                // Outside the certified range the hull could still extend.
                None => true,
            };
            if uncertified {
                return Err(Error::precision(format!(
                    "coefficient {i} is O(π^{bound}) below the Newton polygon"
                )));
            }
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{FiniteField, Poly, Prime};

    fn prime() -> Prime {
        Prime::new(Poly::var(&FiniteField::prime(2).unwrap())).unwrap()
    }

    fn pi(p: &Prime, n: i64) -> LocalElement {
        LocalElement::pi_power(p, n, 12)
    }

    #[test]
    fn lambda_minus_pi() {
        let p = prime();
        let np = newton_polygon(&[pi(&p, 1), pi(&p, 0)]).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: Ratio::from(-1), length: 1 }]);
        assert_eq!(np.root_valuations(), vec![Ratio::from(1)]);
    }

    #[test]
    fn lambda_squared_minus_pi() {
        let p = prime();
        let np = newton_polygon(&[pi(&p, 1), LocalElement::zero(&p), pi(&p, 0)]).unwrap();
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.root_valuations(), vec![Ratio::new(1, 2); 2]);
    }

    #[test]
    fn two_segments_for_hull_of_minus_one_minus_one_zero() {
        let p = prime();
        let np = newton_polygon(&[pi(&p, -1), pi(&p, -1), pi(&p, 0)]).unwrap();
        let slopes: Vec<_> = np.segments.iter().map(|s| s.slope).collect();
        assert_eq!(slopes, vec![Ratio::from(0), Ratio::from(1)]);
    }

    #[test]
    fn uncertain_zero_below_hull_is_refused() {
        let p = prime();
        let c = [pi(&p, 4), LocalElement::approx_zero(&p, 1), pi(&p, 0)];
        assert!(matches!(newton_polygon(&c), Err(Error::PrecisionExhausted(_))));
        let ok = [pi(&p, 4), LocalElement::approx_zero(&p, 2), pi(&p, 0)];
        assert_eq!(newton_polygon(&ok).unwrap().segments.len(), 1);
    }
}
