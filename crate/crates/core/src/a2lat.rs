//! Geometry of the A2 (SL3) weight lattice in fundamental-weight coordinates.
//!
//! Conventions: simple roots `a1 = (2,-1)`, `a2 = (-1,2)`, highest root
//! `(1,1)`, `rho = (1,1)`. The affine Weyl group is `W` extended by
//! translations through `p` times the root lattice, acting by the dot action
//! `w.l = w(l + rho) - rho`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charlat::{FormalCharacter, Prime, Rank, Weight};
use crate::error::{Error, Result};
use crate::mult::Mult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct A2Weight {
    pub a: i64,
    pub b: i64,
}

impl A2Weight {
    pub const ZERO: A2Weight = A2Weight { a: 0, b: 0 };
    pub const RHO: A2Weight = A2Weight { a: 1, b: 1 };
    /// Highest weight of the adjoint module.
    pub const ADJOINT: A2Weight = A2Weight { a: 1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        A2Weight { a, b }
    }

    pub fn is_dominant(&self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    pub fn require_dominant(self) -> Result<Self> {
        if self.is_dominant() {
            Ok(self)
        } else {
            Err(Error::NonDominant(self))
        }
    }

    pub fn is_restricted(&self, p: Prime) -> bool {
        let bound = p.get() as i64;
        (0..bound).contains(&self.a) && (0..bound).contains(&self.b)
    }

    /// `a + b + 2 <= p`: the closure of the bottom alcove, where simple and
    /// induced modules coincide.
    pub fn is_closure_adapted(&self, p: Prime) -> bool {
        self.is_dominant() && self.a + self.b + 2 <= p.get() as i64
    }

    /// `(a, b) -> (b, a)`, the highest weight of the dual module.
    pub fn swapped(&self) -> Self {
        A2Weight::new(self.b, self.a)
    }

    pub fn scaled(&self, k: i64) -> Self {
        A2Weight::new(self.a * k, self.b * k)
    }

    pub fn to_weight(self) -> Weight {
        Weight::a2(self.a, self.b)
    }

    pub fn from_weight(w: &Weight) -> Option<Self> {
        (w.rank() == Rank::A2).then(|| A2Weight::new(w.first(), w.second()))
    }

    pub fn s1(&self) -> Self {
        A2Weight::new(-self.a, self.a + self.b)
    }

    pub fn s2(&self) -> Self {
        A2Weight::new(self.a + self.b, -self.b)
    }
}

impl std::ops::Add for A2Weight {
    type Output = A2Weight;
    fn add(self, o: A2Weight) -> A2Weight {
        A2Weight::new(self.a + o.a, self.b + o.b)
    }
}

impl std::ops::Sub for A2Weight {
    type Output = A2Weight;
    fn sub(self, o: A2Weight) -> A2Weight {
        A2Weight::new(self.a - o.a, self.b - o.b)
    }
}

impl From<(i64, i64)> for A2Weight {
    fn from((a, b): (i64, i64)) -> Self {
        A2Weight::new(a, b)
    }
}

impl From<A2Weight> for (i64, i64) {
    fn from(w: A2Weight) -> Self {
        (w.a, w.b)
    }
}

impl fmt::Display for A2Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl std::str::FromStr for A2Weight {
    type Err = String;

    /// Parses `"a,b"`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = inner.split(',').map(|t| t.trim().parse::<i64>());
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok(A2Weight::new(a, b)),
            _ => Err(format!("expected a weight of the form a,b, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AlcoveClass {
    BottomAlcoveInterior,
    BottomAlcoveClosureWall,
    Outside,
}

/// The six images `w(x)` for `w` in the Weyl group, in the fixed order
/// `e, s1, s2, s1 s2, s2 s1, s1 s2 s1`.
pub fn weyl_images(x: A2Weight) -> [A2Weight; 6] {
    [
        x,
        x.s1(),
        x.s2(),
        x.s2().s1(),
        x.s1().s2(),
        x.s1().s2().s1(),
    ]
}

pub fn weyl_orbit(w: A2Weight) -> BTreeSet<A2Weight> {
    weyl_images(w).into_iter().collect()
}

/// The Weyl-group representative of `x` in the dominant chamber.
pub fn dominant_representative(x: A2Weight) -> A2Weight {
    weyl_images(x)
        .into_iter()
        .find(A2Weight::is_dominant)
        .expect("every Weyl orbit meets the dominant chamber")
}

/// Inner product scaled by 3 so it is integral on the weight lattice:
/// `3 (w_i, w_j)` is 2 on the diagonal and 1 off it.
fn form3(x: A2Weight, y: A2Weight) -> i64 {
    2 * x.a * y.a + x.a * y.b + x.b * y.a + 2 * x.b * y.b
}

const POSITIVE_ROOTS: [A2Weight; 3] = [
    A2Weight::new(2, -1),
    A2Weight::new(-1, 2),
    A2Weight::new(1, 1),
];

pub fn dim_a2(lambda: A2Weight) -> Result<u64> {
    let l = lambda.require_dominant()?;
    Ok(((l.a + 1) * (l.b + 1) * (l.a + l.b + 2) / 2) as u64)
}

/// Dominant weights below `lambda` with their multiplicities in the induced
/// module, by Freudenthal's recursion.
fn dominant_multiplicities(lambda: A2Weight) -> BTreeMap<A2Weight, i64> {
    // mu = lambda - k a1 - l a2, visited by increasing depth k + l.
    let mut layers: Vec<Vec<A2Weight>> = Vec::new();
    for depth in 0.. {
        let layer: Vec<A2Weight> = (0..=depth)
            .map(|k| {
                let l = depth - k;
                A2Weight::new(lambda.a - 2 * k + l, lambda.b + k - 2 * l)
            })
            .filter(A2Weight::is_dominant)
            .collect();
        if layer.is_empty() && depth > lambda.a + lambda.b {
            break;
        }
        layers.push(layer);
    }

    let top = form3(lambda + A2Weight::RHO, lambda + A2Weight::RHO);
    let mut mult: BTreeMap<A2Weight, i64> = BTreeMap::new();
    mult.insert(lambda, 1);
    for mu in layers.into_iter().flatten().skip(1) {
        let lookup = |x: A2Weight, mult: &BTreeMap<A2Weight, i64>| {
            mult.get(&dominant_representative(x)).copied().unwrap_or(0)
        };
        let mut rhs = 0i64;
        for alpha in POSITIVE_ROOTS {
            for j in 1.. {
                let nu = mu + alpha.scaled(j);
                let m = lookup(nu, &mult);
                if m == 0 {
                    break;
                }
                rhs += form3(nu, alpha) * m;
            }
        }
        let denom = top - form3(mu + A2Weight::RHO, mu + A2Weight::RHO);
        debug_assert!(denom > 0 && (2 * rhs) % denom == 0);
        let m = 2 * rhs / denom;
        if m != 0 {
            mult.insert(mu, m);
        }
    }
    mult
}

/// Character of the induced module with highest weight `lambda` (Weyl's
/// character, independent of `p`).
pub fn weyl_char_a2(lambda: A2Weight) -> Result<FormalCharacter> {
    let lambda = lambda.require_dominant()?;
    let terms = dominant_multiplicities(lambda)
        .into_iter()
        .flat_map(|(mu, m)| {
            weyl_orbit(mu)
                .into_iter()
                .map(move |w| (w.to_weight(), Mult::from(m)))
        });
    FormalCharacter::from_terms(Rank::A2, terms)
}

/// Is `x` in `p` times the root lattice? The root lattice is the index-3
/// sublattice `{(x, y) : x = y mod 3}` of the weight lattice.
fn in_p_root_lattice(p: Prime, x: A2Weight) -> bool {
    let p = p.get() as i64;
    x.a % p == 0 && x.b % p == 0 && (x.a / p - x.b / p).rem_euclid(3) == 0
}

/// Linkage: `mu` lies in the dot orbit of `lambda` under the affine Weyl group.
pub fn linked_a2(p: Prime, mu: A2Weight, lambda: A2Weight) -> bool {
    let shifted = mu + A2Weight::RHO;
    weyl_images(lambda + A2Weight::RHO)
        .into_iter()
        .any(|w| in_p_root_lattice(p, shifted - w))
}

pub fn alcove_class(p: Prime, lambda: A2Weight) -> AlcoveClass {
    if !lambda.is_dominant() {
        return AlcoveClass::Outside;
    }
    let s = lambda.a + lambda.b + 2;
    let p = p.get() as i64;
    match s.cmp(&p) {
        std::cmp::Ordering::Less => AlcoveClass::BottomAlcoveInterior,
        std::cmp::Ordering::Equal => AlcoveClass::BottomAlcoveClosureWall,
        std::cmp::Ordering::Greater => AlcoveClass::Outside,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> A2Weight {
        A2Weight::new(a, b)
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    /// Weight multiplicities of the induced module counted as Gelfand-Tsetlin
    /// patterns over the partition `(a+b, b, 0)`.
    fn gelfand_tsetlin(lambda: A2Weight) -> FormalCharacter {
        let (m1, m2, m3) = (lambda.a + lambda.b, lambda.b, 0);
        let total = m1 + m2 + m3;
        let mut terms = Vec::new();
        for x in m2..=m1 {
            for y in m3..=m2 {
                for z in y..=x {
                    let e = (z, x + y - z, total - x - y);
                    terms.push(((e.0 - e.1, e.1 - e.2), 1));
                }
            }
        }
        FormalCharacter::a2(terms)
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(weyl_orbit(w(0, 0)), BTreeSet::from([w(0, 0)]));
        assert_eq!(
            weyl_orbit(w(1, 0)),
            BTreeSet::from([w(1, 0), w(-1, 1), w(0, -1)])
        );
        assert_eq!(weyl_orbit(w(1, 1)).len(), 6);
        for a in -4..=4 {
            for b in -4..=4 {
                assert_eq!(6 % weyl_orbit(w(a, b)).len(), 0);
            }
        }
    }

    #[test]
    fn weyl_char_examples() {
        assert_eq!(
            weyl_char_a2(w(0, 0)).unwrap(),
            FormalCharacter::a2([((0, 0), 1)])
        );
        let std = weyl_char_a2(w(1, 0)).unwrap();
        assert_eq!(
            std,
            FormalCharacter::a2([((1, 0), 1), ((-1, 1), 1), ((0, -1), 1)])
        );
        let adj = weyl_char_a2(w(1, 1)).unwrap();
        assert_eq!(adj.dimension(), Mult::from(8));
        assert_eq!(adj.get(&Weight::a2(0, 0)), Mult::from(2));
        assert!(matches!(weyl_char_a2(w(-1, 2)), Err(Error::NonDominant(_))));
    }

    #[test]
    fn weyl_char_matches_gelfand_tsetlin() {
        for a in 0..=12 {
            for b in 0..=12 {
                assert_eq!(
                    weyl_char_a2(w(a, b)).unwrap(),
                    gelfand_tsetlin(w(a, b)),
                    "({a},{b})"
                );
            }
        }
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(dim_a2(w(0, 0)).unwrap(), 1);
        assert_eq!(dim_a2(w(1, 1)).unwrap(), 8);
        assert_eq!(dim_a2(w(3, 1)).unwrap(), 24);
        for a in 0..=20 {
            for b in 0..=20 {
                let c = weyl_char_a2(w(a, b)).unwrap();
                assert_eq!(c.dimension(), Mult::from(dim_a2(w(a, b)).unwrap()));
                assert!(c.is_weyl_invariant());
                assert_eq!(c.get(&Weight::a2(a, b)), Mult::ONE);
            }
        }
    }

    #[test]
    fn dual_swaps_the_label() {
        for (a, b) in [(1, 0), (2, 1), (3, 0), (4, 2)] {
            assert_eq!(
                weyl_char_a2(w(a, b)).unwrap().dual(),
                weyl_char_a2(w(b, a)).unwrap()
            );
        }
    }

    /// Brute force: search translations `p (i a1 + j a2)` in a box.
    fn linked_brute(p: Prime, mu: A2Weight, lambda: A2Weight) -> bool {
        let pp = p.get() as i64;
        let target = mu + A2Weight::RHO;
        for img in weyl_images(lambda + A2Weight::RHO) {
            for i in -30..=30 {
                for j in -30..=30 {
                    let t = A2Weight::new(pp * (2 * i - j), pp * (2 * j - i));
                    if img + t == target {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn linkage_examples() {
        assert!(linked_a2(p(5), w(3, 2), w(3, 2)));
        assert!(linked_a2(p(5), w(6, 6), w(1, 1)));
        assert!(linked_brute(p(5), w(6, 6), w(1, 1)));
        // frozen from the brute-force enumeration
        assert!(!linked_brute(p(5), w(1, 0), w(0, 0)));
        assert!(!linked_a2(p(5), w(1, 0), w(0, 0)));
        assert!(!linked_a2(p(5), w(0, 0), w(1, 1)));
        assert!(!linked_a2(p(5), w(5, 5), w(1, 1)));
    }

    #[test]
    fn linkage_matches_brute_force() {
        for pr in [2, 3, 5, 7] {
            for a in 0..9 {
                for b in 0..9 {
                    for (c, d) in [(1, 1), (0, 0), (2, 3), (4, 0)] {
                        assert_eq!(
                            linked_a2(p(pr), w(a, b), w(c, d)),
                            linked_brute(p(pr), w(a, b), w(c, d)),
                            "p={pr} ({a},{b}) ({c},{d})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn alcove_examples() {
        assert_eq!(
            alcove_class(p(5), w(1, 1)),
            AlcoveClass::BottomAlcoveInterior
        );
        assert_eq!(
            alcove_class(p(7), w(2, 2)),
            AlcoveClass::BottomAlcoveInterior
        );
        assert_eq!(
            alcove_class(p(5), w(3, 0)),
            AlcoveClass::BottomAlcoveClosureWall
        );
        assert_eq!(alcove_class(p(5), w(3, 1)), AlcoveClass::Outside);
        assert_eq!(alcove_class(p(5), w(-1, 0)), AlcoveClass::Outside);
    }

    #[test]
    fn parse_weights() {
        assert_eq!("5,1".parse::<A2Weight>().unwrap(), w(5, 1));
        assert_eq!("(0, 3)".parse::<A2Weight>().unwrap(), w(0, 3));
        assert!("5".parse::<A2Weight>().is_err());
        assert!("1,2,3".parse::<A2Weight>().is_err());
    }
}
