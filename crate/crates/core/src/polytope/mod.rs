//! Finite rational polytopes in vertex form, the thickness semi-norm they
//! induce on covectors, and open-cone membership.
//!
//! For a polytope `P ⊆ H₁(G; ℝ)` the thickness of a class `ω` is
//! `T(ω) = max_{p,q ∈ P} ω(p) − ω(q)`, the support function of the
//! difference body `P − P`. Two classes lie in the same open cone of the
//! unit ball of `T` exactly when both attain their minimum at the same unique
//! vertex and their maximum at the same unique vertex.

mod lp;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Point = Vec<BigRational>;

/// A rational class in H¹, i.e. a linear functional on the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Covector(pub Vec<BigRational>);

impl Covector {
    pub fn from_i64(xs: &[i64]) -> Self {
        Covector(
            xs.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, p: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .zip(p)
            .fold(BigRational::zero(), |acc, (a, x)| acc + a * x)
    }

    pub fn scale(&self, factor: &BigRational) -> Covector {
        Covector(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn add(&self, other: &Covector) -> Covector {
        Covector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Covector {
        Covector(self.0.iter().map(|x| -x).collect())
    }

    /// Integer coordinates with gcd 1.
    pub fn is_primitive_integral(&self) -> bool {
        if self.0.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let gcd = self
            .0
            .iter()
            .fold(BigInt::zero(), |g, x| g.gcd(&x.to_integer()));
        gcd.is_one()
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Convex hull of finitely many rational points, stored by its vertices in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Point>,
}

impl Polytope {
    /// Deduplicates the points and prunes every point that is a convex
    /// combination of the others.
    pub fn new(ambient_dim: usize, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if let Some(p) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!(
                "point with {} coordinates in dimension {ambient_dim}",
                p.len()
            )));
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();
        // Dropping a non-vertex leaves the hull unchanged, so each point is
        // tested against the survivors so far; exposed points skip the LP.
        let center = centroid(&pts);
        let mut keep = vec![true; pts.len()];
        for i in 0..pts.len() {
            if !is_exposed(&pts, &center, i) && in_hull_of_others(&pts, &keep, i) {
                keep[i] = false;
            }
        }
        let vertices = pts
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        Ok(Polytope {
            ambient_dim,
            vertices,
        })
    }

    pub fn point(p: Point) -> Self {
        Polytope {
            ambient_dim: p.len(),
            vertices: vec![p],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    fn check(&self, w: &Covector) -> Result<()> {
        if w.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "covector of dimension {} on a polytope in dimension {}",
                w.dim(),
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// `max_{v ∈ P} ω(v)`.
    pub fn support(&self, w: &Covector) -> Result<BigRational> {
        self.check(w)?;
        Ok(self
            .vertices
            .iter()
            .map(|v| w.eval(v))
            .max()
            .expect("nonempty"))
    }
}

/// Sufficient test for being a vertex: the point is the unique extremum of
/// a coordinate or the unique maximizer of `ω = p − centroid`.
fn is_exposed(points: &[Point], centroid: &[BigRational], i: usize) -> bool {
    let p = &points[i];
    let others = || {
        points
            .iter()
            .enumerate()
            .filter(move |&(j, _)| j != i)
            .map(|(_, q)| q)
    };
    let coordinate_extreme =
        (0..p.len()).any(|c| others().all(|q| q[c] < p[c]) || others().all(|q| q[c] > p[c]));
    if coordinate_extreme {
        return true;
    }
    let toward = Covector(p.iter().zip(centroid).map(|(x, c)| x - c).collect());
    let top = toward.eval(p);
    others().all(|q| toward.eval(q) < top)
}

fn centroid(points: &[Point]) -> Point {
    let n = BigRational::from_integer(BigInt::from(points.len()));
    (0..points[0].len())
        .map(|c| {
            points
                .iter()
                .map(|p| &p[c])
                .fold(BigRational::zero(), |acc, x| acc + x)
                / &n
        })
        .collect()
}

fn in_hull_of_others(points: &[Point], alive: &[bool], i: usize) -> bool {
    let others: Vec<&Point> = points
        .iter()
        .zip(alive)
        .enumerate()
        .filter(|&(j, (_, &a))| a && j != i)
        .map(|(_, (p, _))| p)
        .collect();
    if others.is_empty() {
        return false;
    }
    let dim = points[i].len();
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|c| others.iter().map(|p| p[c].clone()).collect())
        .collect();
    a.push(vec![BigRational::one(); others.len()]);
    let mut b: Vec<BigRational> = points[i].clone();
    b.push(BigRational::one());
    lp::is_feasible(&a, &b)
}

/// `T(ω) = max_v ω(v) − min_v ω(v)`, the spread of `ω` over the vertices.
pub fn thickness(p: &Polytope, w: &Covector) -> Result<BigRational> {
    p.check(w)?;
    let values: Vec<BigRational> = p.vertices.iter().map(|v| w.eval(v)).collect();
    let max = values.iter().max().expect("nonempty");
    let min = values.iter().min().expect("nonempty");
    Ok(max - min)
}

/// Vertices of `P − P = hull{p − q}`; symmetric under negation.
pub fn difference_body(p: &Polytope) -> Polytope {
    let diffs = p
        .vertices
        .iter()
        .flat_map(|a| {
            p.vertices
                .iter()
                .map(move |b| a.iter().zip(b).map(|(x, y)| x - y).collect())
        })
        .collect();
    Polytope::new(p.ambient_dim, diffs).expect("nonempty with matching dimensions")
}

/// Vertices where `ω` attains its minimum and its maximum.
pub fn unique_extrema(p: &Polytope, w: &Covector) -> Result<(Vec<Point>, Vec<Point>)> {
    p.check(w)?;
    let values: Vec<BigRational> = p.vertices.iter().map(|v| w.eval(v)).collect();
    let max = values.iter().max().expect("nonempty");
    let min = values.iter().min().expect("nonempty");
    let pick = |target: &BigRational| -> Vec<Point> {
        p.vertices
            .iter()
            .zip(&values)
            .filter(|(_, val)| *val == target)
            .map(|(v, _)| v.clone())
            .collect()
    };
    Ok((pick(min), pick(max)))
}

/// The open cone containing a class, identified by its extremal vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeDescriptor {
    pub argmin: Point,
    pub argmax: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeMembership {
    Open(ConeDescriptor),
    Boundary,
}

impl ConeMembership {
    pub fn descriptor(&self) -> Option<&ConeDescriptor> {
        match self {
            ConeMembership::Open(d) => Some(d),
            ConeMembership::Boundary => None,
        }
    }
}

pub fn cone_of(p: &Polytope, w: &Covector) -> Result<ConeMembership> {
    let (mut argmin, mut argmax) = unique_extrema(p, w)?;
    if argmin.len() != 1 || argmax.len() != 1 {
        return Ok(ConeMembership::Boundary);
    }
    Ok(ConeMembership::Open(ConeDescriptor {
        argmin: argmin.remove(0),
        argmax: argmax.remove(0),
    }))
}

/// Euler characteristic of the kernel of a primitive fibered class,
/// `χ = −T(ω)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEuler {
    pub chi: BigInt,
    /// The polytope is a single point. This models `G ≅ ℤ`, where the kernel
    /// is trivial and has `χ = 1`; the relation `χ = −T` gives 0 instead.
    pub degenerate_point_polytope: bool,
}

pub fn euler_char_of_class(p: &Polytope, w: &Covector) -> Result<FiberEuler> {
    p.check(w)?;
    if !w.is_primitive_integral() {
        return Err(Error::NotPrimitive);
    }
    if cone_of(p, w)? == ConeMembership::Boundary {
        return Err(Error::BoundaryClass);
    }
    let t = thickness(p, w)?;
    if !t.is_integer() {
        return Err(Error::NonIntegralThickness(t));
    }
    Ok(FiberEuler {
        chi: -t.to_integer(),
        degenerate_point_polytope: p.is_point(),
    })
}

/// Membership in the unit ball `{ω : T(ω) ≤ 1}`.
pub fn in_unit_ball(p: &Polytope, w: &Covector) -> Result<bool> {
    Ok(thickness(p, w)? <= BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xs: &[i64]) -> Point {
        xs.iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    }

    fn poly(points: &[&[i64]]) -> Polytope {
        Polytope::new(points[0].len(), points.iter().map(|p| pt(p)).collect()).unwrap()
    }

    fn triangle() -> Polytope {
        poly(&[&[0, 0], &[1, 0], &[0, 1]])
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn construction_prunes_and_dedupes() {
        let p = poly(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[0, 0], &[1, 0]]);
        assert_eq!(p.vertices(), &[pt(&[0, 0]), pt(&[0, 2]), pt(&[2, 0])]);
        assert!(matches!(
            Polytope::new(2, vec![]),
            Err(Error::EmptyPolytope)
        ));
        assert!(matches!(
            Polytope::new(2, vec![pt(&[1])]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn thickness_examples() {
        let single = poly(&[&[0, 0]]);
        assert_eq!(
            thickness(&single, &Covector::from_i64(&[5, -3])).unwrap(),
            q(0)
        );
        assert_eq!(
            thickness(&triangle(), &Covector::from_i64(&[1, 0])).unwrap(),
            q(1)
        );
        assert_eq!(
            thickness(&triangle(), &Covector::from_i64(&[2, 1])).unwrap(),
            q(2)
        );
        assert!(thickness(&triangle(), &Covector::from_i64(&[1])).is_err());
    }

    #[test]
    fn difference_body_examples() {
        assert_eq!(
            difference_body(&poly(&[&[0, 0]])).vertices(),
            &[pt(&[0, 0])]
        );
        assert_eq!(
            difference_body(&poly(&[&[0, 0], &[1, 0]])).vertices(),
            &[pt(&[-1, 0]), pt(&[1, 0])]
        );
        let hex = difference_body(&triangle());
        let mut expected = vec![
            pt(&[1, 0]),
            pt(&[-1, 0]),
            pt(&[0, 1]),
            pt(&[0, -1]),
            pt(&[1, -1]),
            pt(&[-1, 1]),
        ];
        expected.sort();
        assert_eq!(hex.vertices(), expected.as_slice());
    }

    #[test]
    fn extrema_examples() {
        let (lo, hi) = unique_extrema(&triangle(), &Covector::from_i64(&[1, 1])).unwrap();
        assert_eq!(lo, vec![pt(&[0, 0])]);
        assert_eq!(hi, vec![pt(&[0, 1]), pt(&[1, 0])]);
        let (lo, hi) = unique_extrema(&triangle(), &Covector::from_i64(&[2, 1])).unwrap();
        assert_eq!((lo, hi), (vec![pt(&[0, 0])], vec![pt(&[1, 0])]));
        let (lo, hi) = unique_extrema(&triangle(), &Covector::from_i64(&[0, 0])).unwrap();
        assert_eq!(lo.len(), 3);
        assert_eq!(hi.len(), 3);
    }

    #[test]
    fn cone_examples() {
        let c = cone_of(&triangle(), &Covector::from_i64(&[2, 1])).unwrap();
        let d = ConeDescriptor {
            argmin: pt(&[0, 0]),
            argmax: pt(&[1, 0]),
        };
        assert_eq!(c, ConeMembership::Open(d.clone()));
        assert_eq!(
            cone_of(&triangle(), &Covector::from_i64(&[3, 1])).unwrap(),
            ConeMembership::Open(d)
        );
        assert_eq!(
            cone_of(&triangle(), &Covector::from_i64(&[1, 1])).unwrap(),
            ConeMembership::Boundary
        );
    }

    #[test]
    fn euler_examples() {
        let seg = poly(&[&[0, 0], &[2, 0]]);
        let e = euler_char_of_class(&seg, &Covector::from_i64(&[1, 0])).unwrap();
        assert_eq!(e.chi, BigInt::from(-2));
        assert!(!e.degenerate_point_polytope);

        let e = euler_char_of_class(&poly(&[&[0, 0]]), &Covector::from_i64(&[1, 0])).unwrap();
        assert_eq!(e.chi, BigInt::zero());
        assert!(e.degenerate_point_polytope);

        let e = euler_char_of_class(&triangle(), &Covector::from_i64(&[2, 1])).unwrap();
        assert_eq!(e.chi, BigInt::from(-2));
    }

    #[test]
    fn euler_errors() {
        assert_eq!(
            euler_char_of_class(&triangle(), &Covector::from_i64(&[2, 2])),
            Err(Error::NotPrimitive)
        );
        assert_eq!(
            euler_char_of_class(&triangle(), &Covector::from_i64(&[1, 1])),
            Err(Error::BoundaryClass)
        );
        let half = Polytope::new(
            1,
            vec![vec![q(0)], vec![BigRational::new(1.into(), 2.into())]],
        )
        .unwrap();
        assert!(matches!(
            euler_char_of_class(&half, &Covector::from_i64(&[1])),
            Err(Error::NonIntegralThickness(_))
        ));
        let frac = Covector(vec![BigRational::new(1.into(), 2.into()), q(0)]);
        assert_eq!(
            euler_char_of_class(&triangle(), &frac),
            Err(Error::NotPrimitive)
        );
    }

    #[test]
    fn unit_ball() {
        assert!(in_unit_ball(&triangle(), &Covector::from_i64(&[1, 0])).unwrap());
        assert!(!in_unit_ball(&triangle(), &Covector::from_i64(&[2, 1])).unwrap());
    }

    #[test]
    fn interior_rational_point_pruned() {
        let third = BigRational::new(1.into(), 3.into());
        let p = Polytope::new(
            2,
            vec![
                pt(&[0, 0]),
                pt(&[1, 0]),
                pt(&[0, 1]),
                vec![third.clone(), third],
            ],
        )
        .unwrap();
        assert_eq!(p.vertices().len(), 3);
    }
}
