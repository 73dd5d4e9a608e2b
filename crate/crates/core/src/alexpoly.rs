//! Alexander polynomial from the crossing-by-region matrix, used as an
//! oracle for state counts and table data.
//!
//! Corner labels at a crossing, going counterclockwise from the incoming
//! under-strand dart `p`: the corner before `p` gets `t`, the corner after it
//! `-1`, then `1`, then `-t`. Both `t` corners lie to the left of the
//! under-strand.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Corner, Dart, Diagram, FaceId, StarPlacement, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexError {
    #[error("diagram carries no over/under information")]
    MissingOverInfo,
    #[error("star-deleted Alexander matrix is singular")]
    ZeroDeterminant,
}

/// Integer Laurent polynomial `sum coeffs[k] t^(low+k)`, trimmed at both ends.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    pub low: i32,
    pub coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: i64, degree: i32) -> Self {
        IntPolynomial { low: degree, coeffs: vec![c] }.trimmed()
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<i64>) -> Self {
        IntPolynomial { low, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Self { low: 0, coeffs: Vec::new() };
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    fn coeff(&self, degree: i32) -> i64 {
        let k = degree - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    /// Divides exactly, or returns `None` if the quotient is not integral.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        let d_lead = *d.coeffs.last()?;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while !rem.is_zero() {
            let shift = rem.high() - d.high();
            let r_lead = *rem.coeffs.last()?;
            if shift < self.low - d.low || r_lead % d_lead != 0 {
                return None;
            }
            let step = Self::monomial(r_lead / d_lead, shift);
            rem = &rem - &(&step * d);
            q = &q + &step;
        }
        Some(q)
    }

    /// Representative up to units `±t^k`: lowest degree 0, positive leading coefficient.
    pub fn normalized(&self) -> Option<IntPolynomial> {
        let lead = *self.coeffs.last()?;
        let sign = lead.signum();
        Some(IntPolynomial {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| c * sign).collect(),
        })
    }

    /// Evaluates at an integer; `t` must be a unit if `low < 0`.
    pub fn eval(&self, t: i64) -> i64 {
        let mut acc = 0i64;
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        if self.low >= 0 {
            acc * t.pow(self.low as u32)
        } else {
            acc * t.pow(self.low.unsigned_abs())
        }
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let coeffs = (low..=high).map(|d| self.coeff(d) + rhs.coeff(d)).collect();
        IntPolynomial::from_coeffs(low, coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(self.low + rhs.low, coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let d = self.low + k as i32;
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if !first {
                f.write_str(" ")?;
            }
            let a = c.abs();
            match (a, d) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) if d != 1 => write!(f, "t^{d}")?,
                (_, 1) => write!(f, "{a}t")?,
                _ => write!(f, "{a}t^{d}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Crossing-by-region matrix with the two star columns removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderMatrix {
    pub entries: Vec<Vec<IntPolynomial>>,
    /// Face behind each column.
    pub columns: Vec<FaceId>,
}

fn non_star_columns(u: &Universe, stars: StarPlacement) -> Vec<FaceId> {
    u.faces().filter(|f| !stars.contains(*f)).collect()
}

/// Label of each corner slot at `vertex` (index = slot), as `(coefficient, degree)`.
fn corner_labels(u: &Universe, vertex: usize, over: u8) -> [(i64, i32); 4] {
    let under = 1 - (over as usize & 1);
    let p = if u.is_head(Dart::new(vertex, under)) {
        under
    } else {
        under + 2
    };
    let mut labels = [(0, 0); 4];
    labels[(p + 3) % 4] = (1, 1);
    labels[p] = (-1, 0);
    labels[(p + 1) % 4] = (1, 0);
    labels[(p + 2) % 4] = (-1, 1);
    labels
}

pub fn alexander_matrix(d: &Diagram, stars: StarPlacement) -> Result<AlexanderMatrix, AlexError> {
    let over = d.over_strand.as_ref().ok_or(AlexError::MissingOverInfo)?;
    let u = &d.universe;
    let columns = non_star_columns(u, stars);
    let mut entries = vec![vec![IntPolynomial::zero(); columns.len()]; u.vertex_count()];
    for (v, row) in entries.iter_mut().enumerate() {
        for (slot, (c, deg)) in corner_labels(u, v, over[v]).into_iter().enumerate() {
            let f = u.corner_face(Corner { vertex: v, slot: slot as u8 });
            if let Some(j) = columns.iter().position(|&g| g == f) {
                row[j] = &row[j] + &IntPolynomial::monomial(c, deg);
            }
        }
    }
    Ok(AlexanderMatrix { entries, columns })
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let n = m.len();
    if n == 0 {
        return IntPolynomial::constant(1);
    }
    let mut a = m.to_vec();
    let mut prev = IntPolynomial::constant(1);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Normalized Alexander polynomial of `d`.
pub fn alexander_det(d: &Diagram, stars: StarPlacement) -> Result<IntPolynomial, AlexError> {
    let m = alexander_matrix(d, stars)?;
    determinant(&m.entries)
        .normalized()
        .ok_or(AlexError::ZeroDeterminant)
}

/// Terms of the determinant expansion with every matrix entry expanded into
/// its corner monomials, before any cancellation. One term per state.
pub fn permutation_term_count(u: &Universe, stars: StarPlacement) -> u64 {
    let columns = non_star_columns(u, stars);
    if columns.len() != u.vertex_count() {
        return 0;
    }
    let mut mult = vec![vec![0u64; columns.len()]; u.vertex_count()];
    for (v, row) in mult.iter_mut().enumerate() {
        for slot in 0..4u8 {
            let f = u.corner_face(Corner { vertex: v, slot });
            if let Some(j) = columns.iter().position(|&g| g == f) {
                row[j] += 1;
            }
        }
    }

    fn count(mult: &[Vec<u64>], row: usize, used: &mut [bool]) -> u64 {
        if row == mult.len() {
            return 1;
        }
        let mut total = 0;
        for j in 0..used.len() {
            if mult[row][j] == 0 || used[j] {
                continue;
            }
            used[j] = true;
            total += mult[row][j] * count(mult, row + 1, used);
            used[j] = false;
        }
        total
    }
    count(&mult, 0, &mut vec![false; columns.len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn p(low: i32, c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(low, c.to_vec())
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
        if m.is_empty() {
            return IntPolynomial::constant(1);
        }
        let mut acc = IntPolynomial::zero();
        for j in 0..m.len() {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<IntPolynomial>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn arithmetic() {
        let a = p(0, &[1, -1, 1]);
        let b = p(0, &[1, 1]);
        let prod = &a * &b;
        assert_eq!(prod, p(0, &[1, 0, 0, 1]));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&p(0, &[2])), None);
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!(p(2, &[-1, 3, -1]).normalized(), Some(p(0, &[1, -3, 1])));
        assert_eq!(p(-1, &[0, 0, 5, 0]), IntPolynomial::monomial(5, 1));
        assert_eq!(a.to_string(), "t^2 - t + 1");
        assert_eq!(p(0, &[2, -3, 2]).to_string(), "2t^2 - 3t + 2");
        assert_eq!(a.eval(-1), 3);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let t = IntPolynomial::monomial(1, 1);
        let one = IntPolynomial::constant(1);
        let z = IntPolynomial::zero();
        let m = vec![
            vec![z.clone(), t.clone(), &one + &t],
            vec![-&t, one.clone(), z.clone()],
            vec![&t * &t, -&one, &t - &one],
        ];
        assert_eq!(determinant(&m), cofactor_det(&m));
    }

    #[test]
    fn trefoil_and_figure_eight() {
        for (code, want) in [
            ("X(1,5,2,4);over=5 X(3,1,4,6);over=1 X(5,3,6,2);over=3", vec![1, -1, 1]),
            (
                "X(4,2,5,1);over=2 X(8,6,1,5);over=6 X(6,3,7,4);over=3 X(2,7,3,8);over=7",
                vec![1, -3, 1],
            ),
        ] {
            let d = parse_diagram(code).unwrap();
            for stars in d.universe.adjacent_pairs() {
                let m = alexander_matrix(&d, stars).unwrap();
                assert_eq!(m.entries.len(), m.columns.len());
                let raw = determinant(&m.entries);
                assert_eq!(raw, cofactor_det(&m.entries));
                assert_eq!(alexander_det(&d, stars).unwrap(), p(0, &want));
            }
        }
    }

    #[test]
    fn curl_is_trivial() {
        let d = Diagram {
            universe: parse_diagram("X(1,2,2,1)").unwrap().universe,
            over_strand: Some(vec![0]),
        };
        for stars in d.universe.adjacent_pairs() {
            assert_eq!(alexander_det(&d, stars).unwrap(), IntPolynomial::constant(1));
            assert_eq!(permutation_term_count(&d.universe, stars), 1);
        }
    }

    #[test]
    fn term_counts() {
        let t = parse_diagram("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        for stars in t.universe.adjacent_pairs() {
            assert_eq!(permutation_term_count(&t.universe, stars), 3);
        }
        assert_eq!(
            alexander_det(&t, t.universe.adjacent_pairs()[0]),
            Err(AlexError::MissingOverInfo)
        );
    }
}
