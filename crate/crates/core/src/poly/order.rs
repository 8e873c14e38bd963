//! Weight vectors and monomial orders.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Monomial, Rational};

/// Nonnegative rational weights with their least common denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<Rational>,
    denominator: i64,
    scaled: Vec<i64>,
}

impl WeightVector {
    /// Panics on a negative weight; use [`WeightVector::try_new`] for input data.
    pub fn new(weights: Vec<Rational>) -> Self {
        Self::try_new(weights).expect("weights must be nonnegative")
    }

    pub fn try_new(weights: Vec<Rational>) -> Option<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return None;
        }
        let mut denominator: i64 = 1;
        for w in &weights {
            let d = w.denom().to_i64()?;
            denominator = denominator.lcm(&d);
        }
        let scaled = weights
            .iter()
            .map(|w| (w * Rational::from_integer(denominator.into())).to_integer().to_i64())
            .collect::<Option<Vec<_>>>()?;
        Some(WeightVector { weights, denominator, scaled })
    }

    pub fn ones(n: usize) -> Self {
        Self::new(vec![Rational::from_integer(1.into()); n])
    }

    /// Weight 1 on `index`, 0 elsewhere.
    pub fn indicator(n: usize, index: usize) -> Self {
        let mut w = vec![Rational::zero(); n];
        w[index] = Rational::from_integer(1.into());
        Self::new(w)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, var: usize) -> &Rational {
        &self.weights[var]
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    /// `N * w_i` for the common denominator `N`.
    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    pub fn all_positive(&self) -> bool {
        self.scaled.iter().all(|&s| s > 0)
    }

    pub fn zero_weight_vars(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.scaled[i] == 0).collect()
    }

    /// Append weights for new trailing variables.
    pub fn extended(&self, extra: &[Rational]) -> WeightVector {
        let mut w = self.weights.clone();
        w.extend_from_slice(extra);
        WeightVector::new(w)
    }

    pub fn truncated(&self, keep: usize) -> WeightVector {
        WeightVector::new(self.weights[..keep].to_vec())
    }

    /// Convert a scaled integer weight back to a rational.
    pub fn unscale(&self, scaled: i64) -> Rational {
        Rational::new(scaled.into(), self.denominator.into())
    }

    /// Express a rational degree as a scaled integer, if it lies in `(1/N)Z`.
    pub fn scale_degree(&self, degree: &Rational) -> Option<i64> {
        let s = degree * Rational::from_integer(self.denominator.into());
        if s.is_integer() {
            s.to_integer().to_i64()
        } else {
            None
        }
    }
}

/// The user-facing term orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Lexicographic with variable 0 largest.
    Lex,
    /// Graded reverse lexicographic.
    Grevlex,
    /// Smaller weight is more initial; ties broken by grevlex.
    Weighted(WeightVector),
}

impl TermOrder {
    /// `Greater` means `a` is more initial (leading) than `b`.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::Grevlex => grevlex_cmp(a, b),
            TermOrder::Weighted(w) => {
                let (wa, wb) = (a.scaled_weight(w), b.scaled_weight(w));
                wb.cmp(&wa).then_with(|| grevlex_cmp(a, b))
            }
        }
    }

    /// The order as a well-order usable by the division algorithm, when it is one.
    pub fn well_order(&self, nvars: usize) -> Option<MonomialOrder> {
        match self {
            TermOrder::Lex => Some(MonomialOrder::lex(nvars)),
            TermOrder::Grevlex => Some(MonomialOrder::grevlex(nvars)),
            TermOrder::Weighted(w) if w.scaled().iter().all(|&s| s == 0) => Some(MonomialOrder::grevlex(nvars)),
            TermOrder::Weighted(_) => None,
        }
    }
}

fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Tiebreak {
    Lex,
    Grevlex,
}

/// A well-order for the Buchberger engine: integer weight rows compared
/// largest-first, then a lex or grevlex tiebreak.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    rows: Vec<Vec<i64>>,
    tiebreak: Tiebreak,
}

impl MonomialOrder {
    pub fn lex(_nvars: usize) -> Self {
        MonomialOrder { rows: Vec::new(), tiebreak: Tiebreak::Lex }
    }

    pub fn grevlex(_nvars: usize) -> Self {
        MonomialOrder { rows: Vec::new(), tiebreak: Tiebreak::Grevlex }
    }

    /// Weight rows refined by grevlex. The caller guarantees a well-order,
    /// e.g. nonnegative rows, or a leading total-degree row over homogeneous input.
    pub fn weighted(rows: Vec<Vec<i64>>) -> Self {
        MonomialOrder { rows, tiebreak: Tiebreak::Grevlex }
    }

    /// Block order eliminating `drop`: any monomial in a dropped variable is larger.
    pub fn elimination(nvars: usize, drop: &[usize]) -> Self {
        let mut row = vec![0; nvars];
        for &v in drop {
            row[v] = 1;
        }
        Self::weighted(vec![row])
    }

    /// Max-convention comparison.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for row in &self.rows {
            let wa: i64 = row.iter().zip(a.exponents()).map(|(w, &e)| w * e as i64).sum();
            let wb: i64 = row.iter().zip(b.exponents()).map(|(w, &e)| w * e as i64).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        match self.tiebreak {
            Tiebreak::Lex => a.cmp(b),
            Tiebreak::Grevlex => grevlex_cmp(a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_square_beats_mixed() {
        assert_eq!(TermOrder::Grevlex.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_prefers_first_variable() {
        assert_eq!(TermOrder::Lex.compare(&m(&[1, 2]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn weighted_min_convention() {
        let w = WeightVector::new(vec![int(0), int(1)]);
        let a3 = m(&[3, 0]);
        let b = m(&[0, 1]);
        assert_eq!(a3.weight(&w), int(0));
        assert_eq!(b.weight(&w), int(1));
        assert_eq!(TermOrder::Weighted(w).compare(&a3, &b), Ordering::Greater);
    }

    #[test]
    fn denominators_are_lcm() {
        let w = WeightVector::new(vec![rat(1, 2), rat(2, 3), int(1)]);
        assert_eq!(w.denominator(), 6);
        assert_eq!(w.scaled(), &[3, 4, 6]);
        assert!(WeightVector::try_new(vec![int(-1)]).is_none());
    }

    fn orders() -> Vec<TermOrder> {
        vec![
            TermOrder::Lex,
            TermOrder::Grevlex,
            TermOrder::Weighted(WeightVector::new(vec![int(0), rat(1, 2), int(2)])),
        ]
    }

    proptest! {
        #[test]
        fn total_multiplicative_orders(a in prop::collection::vec(0u32..4, 3),
                                       b in prop::collection::vec(0u32..4, 3),
                                       c in prop::collection::vec(0u32..4, 3),
                                       t in prop::collection::vec(0u32..4, 3)) {
            let (a, b, c, t) = (m(&a), m(&b), m(&c), m(&t));
            for o in orders() {
                let ab = o.compare(&a, &b);
                prop_assert_eq!(ab, o.compare(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                if ab == Ordering::Less {
                    prop_assert_eq!(o.compare(&a.mul(&t), &b.mul(&t)), Ordering::Less);
                }
                if ab != Ordering::Greater && o.compare(&b, &c) != Ordering::Greater {
                    prop_assert!(o.compare(&a, &c) != Ordering::Greater);
                }
            }
        }
    }
}
