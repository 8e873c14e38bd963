//! Lattice polytopes and the exact balanced order on a projective toric
//! coordinate ring with `b` the monomial of a lattice point `p`.
//!
//! The balanced order of the basis element of `o ∈ kP` is
//! `min_F (n_F·o - k·c_F) / (n_F·p - c_F)` over the facets `F` not containing `p`,
//! where `n_F·x ≥ c_F` is the facet inequality with primitive inward normal.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::filtration::RingPresentation;
use crate::groebner::{eliminate, Budget, Ideal};
use crate::poly::{int, Monomial, Polynomial, Rational, VarTable, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices of the input vertices on the facet.
    pub vertices: Vec<usize>,
}

impl Facet {
    /// `n·o - k·c`, the lattice distance of `o/k` to the facet, times `k`.
    pub fn distance(&self, o: &[i64], k: i64) -> i64 {
        dot(&self.normal, o) - k * self.offset
    }
}

#[derive(Debug, Clone)]
pub struct LatticePolytope {
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

/// A nonzero vector orthogonal to the `d - 1` difference vectors, or `None` when they are dependent.
fn orthogonal(diffs: &[Vec<i64>], d: usize) -> Option<Vec<i64>> {
    let n = match d {
        1 => vec![1],
        2 => vec![-diffs[0][1], diffs[0][0]],
        3 => {
            let (u, v) = (&diffs[0], &diffs[1]);
            vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        }
        _ => unreachable!(),
    };
    n.iter().any(|&x| x != 0).then(|| primitive(n))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl LatticePolytope {
    /// Convex hull of `points` in dimension 1, 2 or 3.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let d = points.first().map(Vec::len).ok_or_else(|| Error::DegeneratePolytope("no vertices".into()))?;
        if !(1..=3).contains(&d) {
            return Err(Error::DegeneratePolytope(format!("dimension {d} is not 1, 2 or 3")));
        }
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::DegeneratePolytope("vertices of mixed dimension".into()));
        }
        let mut facets: Vec<Facet> = Vec::new();
        for combo in combinations(points.len(), d) {
            let base = &points[combo[0]];
            let diffs: Vec<Vec<i64>> = combo[1..].iter().map(|&i| sub(&points[i], base)).collect();
            let Some(mut normal) = orthogonal(&diffs, d) else { continue };
            let mut offset = dot(&normal, base);
            let values: Vec<i64> = points.iter().map(|p| dot(&normal, p)).collect();
            let above = values.iter().any(|&v| v > offset);
            let below = values.iter().any(|&v| v < offset);
            if above && below || !above && !below {
                continue;
            }
            if below {
                normal.iter_mut().for_each(|x| *x = -*x);
                offset = -offset;
            }
            if facets.iter().any(|f| f.normal == normal && f.offset == offset) {
                continue;
            }
            let vertices = (0..points.len()).filter(|&i| dot(&normal, &points[i]) == offset).collect();
            facets.push(Facet { normal, offset, vertices });
        }
        if facets.len() < d + 1 {
            return Err(Error::DegeneratePolytope("vertices are not full-dimensional".into()));
        }
        facets.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));
        Ok(LatticePolytope { vertices: points, facets })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn contains(&self, o: &[i64], k: i64) -> bool {
        o.len() == self.dim() && self.facets.iter().all(|f| f.distance(o, k) >= 0)
    }

    /// Lattice points of `kP` in lexicographic order.
    pub fn lattice_points(&self, k: i64) -> Vec<Vec<i64>> {
        let d = self.dim();
        let lo: Vec<i64> = (0..d).map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap() * k).collect();
        let hi: Vec<i64> = (0..d).map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap() * k).collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains(&cur, k) {
                out.push(cur.clone());
            }
            let mut i = d;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
            }
        }
    }
}

/// The polytope with a base point `p` and the facets not containing it.
#[derive(Debug, Clone)]
pub struct ToricBarq {
    pub polytope: LatticePolytope,
    pub base_point: Vec<i64>,
    /// `(facet index, v_F(p))` with `v_F(p) > 0`.
    pub relevant_facets: Vec<(usize, i64)>,
}

impl ToricBarq {
    pub fn new(polytope: LatticePolytope, base_point: Vec<i64>) -> Result<Self> {
        if !polytope.contains(&base_point, 1) {
            return Err(Error::OutsidePolytope);
        }
        let relevant_facets = polytope
            .facets
            .iter()
            .enumerate()
            .map(|(i, f)| (i, f.distance(&base_point, 1)))
            .filter(|&(_, v)| v > 0)
            .collect();
        Ok(ToricBarq { polytope, base_point, relevant_facets })
    }

    fn ratios(&self, o: &[i64], k: i64) -> Result<Vec<(usize, Rational)>> {
        if k < 1 || !self.polytope.contains(o, k) {
            return Err(Error::OutsidePolytope);
        }
        Ok(self
            .relevant_facets
            .iter()
            .map(|&(i, v)| (i, Rational::new(self.polytope.facets[i].distance(o, k).into(), v.into())))
            .collect())
    }

    /// `q̄` of the basis element for `o ∈ kP`.
    pub fn value(&self, o: &[i64], k: i64) -> Result<Rational> {
        Ok(self.ratios(o, k)?.into_iter().map(|(_, r)| r).min().unwrap_or_else(|| int(0)))
    }

    /// Relevant facets attaining the minimum: where `o/k` projects from `p`.
    pub fn projection_facets(&self, o: &[i64], k: i64) -> Result<Vec<usize>> {
        let r = self.ratios(o, k)?;
        let Some(min) = r.iter().map(|(_, x)| x.clone()).min() else { return Ok(Vec::new()) };
        Ok(r.into_iter().filter(|(_, x)| *x == min).map(|(i, _)| i).collect())
    }

    /// The product of two basis elements is nonzero in `ogr R` iff they project to a common facet.
    pub fn product_nonzero(&self, o1: &[i64], k1: i64, o2: &[i64], k2: i64) -> Result<bool> {
        let a = self.projection_facets(o1, k1)?;
        let b = self.projection_facets(o2, k2)?;
        Ok(a.iter().any(|f| b.contains(f)))
    }
}

pub fn toric_barq(t: &ToricBarq, o: &[i64], k: i64) -> Result<Rational> {
    t.value(o, k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeComponent {
    pub facet: usize,
    pub points: Vec<Vec<i64>>,
}

/// One component per facet not containing `p`, listing the lattice points of `kP` in its cone.
pub fn ogr_complex(t: &ToricBarq, k: i64) -> Result<Vec<ConeComponent>> {
    let points = t.polytope.lattice_points(k);
    let mut comps: Vec<ConeComponent> =
        t.relevant_facets.iter().map(|&(facet, _)| ConeComponent { facet, points: Vec::new() }).collect();
    for o in points {
        for f in t.projection_facets(&o, k)? {
            let c = comps.iter_mut().find(|c| c.facet == f).expect("relevant facet");
            c.points.push(o.clone());
        }
    }
    Ok(comps)
}

/// The toric ring `k[x_a : a ∈ P ∩ Z^d] / ker(x_a ↦ s t^a)` with `b = x_p`, graded by degree.
pub fn toric_presentation(t: &ToricBarq, budget: Budget) -> Result<(RingPresentation, Vec<Vec<i64>>)> {
    let points = t.polytope.lattice_points(1);
    let d = t.polytope.dim();
    let m = points.len();
    let shift: Vec<i64> = (0..d).map(|i| points.iter().map(|p| p[i]).min().unwrap()).collect();
    // variables: x_0..x_{m-1}, t_1..t_d, s
    let total = m + d + 1;
    let mut gens = Vec::with_capacity(m);
    for (j, p) in points.iter().enumerate() {
        let mut e = vec![0u32; total];
        for i in 0..d {
            e[m + i] = (p[i] - shift[i]) as u32;
        }
        e[m + d] = 1;
        gens.push(&Polynomial::var(total, j) - &Polynomial::monomial(Monomial::from_exponents(e)));
    }
    let drop: Vec<usize> = (m..total).collect();
    let elim = eliminate(&Ideal::new(total, gens), &drop, budget)?;
    let defining =
        Ideal::new(m, elim.generators().iter().map(|g| g.truncate_vars(d + 1).expect("eliminated")).collect());
    let vars = VarTable::new((0..m).map(|j| format!("x{j}")));
    let b = points.iter().position(|p| *p == t.base_point).expect("base point is a lattice point");
    let p = RingPresentation::new(vars, defining, Polynomial::var(m, b), Some(WeightVector::ones(m)), budget)?;
    Ok((p, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::{barq_estimate, Bound, EstimateOptions};
    use crate::poly::rat;

    fn square() -> LatticePolytope {
        LatticePolytope::new(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }

    fn polytopes() -> Vec<(LatticePolytope, Vec<i64>)> {
        vec![
            (square(), vec![0, 0]),
            (LatticePolytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 2]]).unwrap(), vec![0, 0]),
            (LatticePolytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 2]]).unwrap(), vec![1, 0]),
            (LatticePolytope::new(vec![vec![0, 0], vec![3, 0], vec![0, 1]]).unwrap(), vec![1, 0]),
        ]
    }

    #[test]
    fn facet_counts() {
        let s = square();
        assert_eq!(s.facets.len(), 4);
        let mut normals: Vec<Vec<i64>> = s.facets.iter().map(|f| f.normal.clone()).collect();
        normals.sort();
        assert_eq!(normals, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
        let t = LatticePolytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(t.facets.len(), 3);
        assert!(t.facets.iter().any(|f| f.normal == vec![-1, -1] && f.offset == -2));
        let simplex = LatticePolytope::new(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(simplex.facets.len(), 4);
        let cube: Vec<Vec<i64>> = (0..8).map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
        assert_eq!(LatticePolytope::new(cube).unwrap().facets.len(), 6);
        // an interior point among the inputs is not a vertex of any facet
        let with_interior =
            LatticePolytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]]).unwrap();
        assert_eq!(with_interior.facets.len(), 4);
        assert!(with_interior.facets.iter().all(|f| !f.vertices.contains(&4)));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            LatticePolytope::new(vec![vec![0, 0], vec![1, 1], vec![2, 2]]),
            Err(Error::DegeneratePolytope(_))
        ));
        assert!(LatticePolytope::new(vec![]).is_err());
        assert!(LatticePolytope::new(vec![vec![0, 0, 0, 0]]).is_err());
        assert!(matches!(ToricBarq::new(square(), vec![2, 0]), Err(Error::OutsidePolytope)));
    }

    #[test]
    fn square_values() {
        let t = ToricBarq::new(square(), vec![0, 0]).unwrap();
        assert_eq!(t.relevant_facets.len(), 2);
        assert_eq!(toric_barq(&t, &[0, 0], 1).unwrap(), int(1));
        assert_eq!(toric_barq(&t, &[1, 0], 1).unwrap(), int(0));
        assert_eq!(toric_barq(&t, &[1, 1], 2).unwrap(), int(1));
        assert!(matches!(toric_barq(&t, &[3, 0], 2), Err(Error::OutsidePolytope)));
        assert!(!t.product_nonzero(&[1, 0], 1, &[0, 1], 1).unwrap());
        assert!(t.product_nonzero(&[1, 0], 1, &[1, 1], 1).unwrap());
    }

    #[test]
    fn complexes() {
        let t = ToricBarq::new(square(), vec![0, 0]).unwrap();
        let c = ogr_complex(&t, 1).unwrap();
        assert_eq!(c.len(), 2);
        for comp in &c {
            assert_eq!(comp.points.len(), 3);
            assert!(comp.points.contains(&vec![0, 0]) && comp.points.contains(&vec![1, 1]));
        }
        let tri = LatticePolytope::new(vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let t = ToricBarq::new(tri, vec![0, 0]).unwrap();
        let c = ogr_complex(&t, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].points.len(), 3);
    }

    #[test]
    fn boundary_and_base_point() {
        for (poly, p) in polytopes() {
            let t = ToricBarq::new(poly, p.clone()).unwrap();
            assert_eq!(t.value(&p, 1).unwrap(), int(1));
            for k in 1..=4 {
                for o in t.polytope.lattice_points(k) {
                    let on_far = t.relevant_facets.iter().any(|&(i, _)| t.polytope.facets[i].distance(&o, k) == 0);
                    assert_eq!(t.value(&o, k).unwrap() == int(0), on_far, "{o:?} in {k}P");
                }
            }
        }
    }

    #[test]
    fn homogeneous_and_superadditive() {
        for (poly, p) in polytopes() {
            let t = ToricBarq::new(poly, p).unwrap();
            for k1 in 1..=3 {
                for o1 in t.polytope.lattice_points(k1) {
                    let v1 = t.value(&o1, k1).unwrap();
                    for m in 2..=(4 / k1) {
                        let scaled: Vec<i64> = o1.iter().map(|x| x * m).collect();
                        assert_eq!(t.value(&scaled, m * k1).unwrap(), &v1 * int(m));
                    }
                    for k2 in 1..=(4 - k1) {
                        for o2 in t.polytope.lattice_points(k2) {
                            let sum: Vec<i64> = o1.iter().zip(&o2).map(|(a, b)| a + b).collect();
                            let lhs = t.value(&sum, k1 + k2).unwrap();
                            assert!(lhs >= &v1 + t.value(&o2, k2).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn segment_ring_matches_samuel_estimate() {
        let seg = LatticePolytope::new(vec![vec![0], vec![2]]).unwrap();
        let t = ToricBarq::new(seg, vec![0]).unwrap();
        let b = Budget::default();
        let (p, points) = toric_presentation(&t, b).unwrap();
        assert_eq!(points.len(), 3);
        let names = ["x0", "x1", "x2"];
        let expect = Ideal::new(3, vec![crate::cli::parser::poly(&names, "x0*x2 - x1^2")]);
        assert!(p.defining.equals(&expect, b).unwrap());
        for (j, o) in points.iter().enumerate() {
            let est = barq_estimate(&Polynomial::var(3, j), &p, &EstimateOptions::default(), b).unwrap();
            assert_eq!(est.lower_bound, Bound::Finite(t.value(o, 1).unwrap()));
        }
        assert_eq!(t.value(&[1], 1).unwrap(), rat(1, 2));
    }
}
