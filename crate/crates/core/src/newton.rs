//! Newton boundary data for mixed polynomials: radial supports, face
//! functions, weight enumeration, convenience, and purely-mixed detection.
//!
//! All Newton data is computed from the radial exponents `mu + nu` (Oka's
//! convention for mixed functions). Faces select the terms minimizing
//! `<P, mu + nu>` for a strictly positive integer weight vector `P`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::poly::{MixedMap, MixedPolynomial, PolyError};
use crate::ratlin;

/// Distinct radial exponent vectors `mu + nu` over the terms of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialSupport {
    pub points: BTreeSet<Vec<u32>>,
}

pub fn radial_support(f: &MixedPolynomial) -> RadialSupport {
    RadialSupport {
        points: f.terms.iter().map(|t| t.radial()).collect(),
    }
}

/// Strictly positive integer weight vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightVector {
    pub p: Vec<u32>,
}

impl WeightVector {
    pub fn new(p: Vec<u32>) -> Self {
        assert!(p.iter().all(|&x| x >= 1), "weights must be positive");
        Self { p }
    }

    fn pairing(&self, radial: &[u32]) -> u64 {
        self.p
            .iter()
            .zip(radial)
            .map(|(&w, &m)| w as u64 * m as u64)
            .sum()
    }
}

/// Which terms of a polynomial a weight selects, and at what degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSelection {
    pub weight: WeightVector,
    pub degree: u64,
    /// Indices into the canonical term list.
    pub selected: Vec<usize>,
}

/// Face data for a possibly-zero polynomial: the zero polynomial has an
/// empty selection at degree 0.
pub fn face_selection(f: &MixedPolynomial, weight: &WeightVector) -> FaceSelection {
    // Work through the deduplicated radial support so that several terms
    // sharing a radial exponent stand or fall together.
    let support = radial_support(f);
    let degree = support
        .points
        .iter()
        .map(|m| weight.pairing(m))
        .min()
        .unwrap_or(0);
    let minimizers: BTreeSet<&Vec<u32>> = support
        .points
        .iter()
        .filter(|m| weight.pairing(m) == degree)
        .collect();
    let selected = f
        .terms
        .iter()
        .enumerate()
        .filter(|(_, t)| minimizers.contains(&t.radial()))
        .map(|(i, _)| i)
        .collect();
    FaceSelection {
        weight: weight.clone(),
        degree,
        selected,
    }
}

/// The face function `f_P`: the sub-sum of terms attaining the minimal
/// weighted radial degree. Errors on the zero polynomial.
pub fn face_function(
    f: &MixedPolynomial,
    weight: &WeightVector,
) -> Result<MixedPolynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(face_polynomial(f, weight))
}

/// Total version used by the refuter loops: face of the zero polynomial is 0.
pub fn face_polynomial(f: &MixedPolynomial, weight: &WeightVector) -> MixedPolynomial {
    let sel = face_selection(f, weight);
    MixedPolynomial {
        nvars: f.nvars,
        terms: sel.selected.iter().map(|&i| f.terms[i].clone()).collect(),
    }
}

/// Componentwise face of a map.
pub fn face_map(map: &MixedMap, weight: &WeightVector) -> MixedMap {
    MixedMap {
        nvars: map.nvars,
        components: map
            .components
            .iter()
            .map(|f| face_polynomial(f, weight))
            .collect(),
    }
}

/// Signature identifying the face tuple a weight induces on a map.
fn face_key(map: &MixedMap, weight: &WeightVector) -> Vec<Vec<usize>> {
    map.components
        .iter()
        .map(|f| face_selection(f, weight).selected)
        .collect()
}

/// Enumerate weight vectors realizing pairwise distinct face tuples.
///
/// Scans the box `{1..bound}^n` in lexicographic order (so each class is
/// represented by its lexicographically smallest box member) and adds
/// strictly positive facet normals of each component's radial hull.
/// Completeness beyond the box is not guaranteed; callers report the bound.
pub fn enumerate_weights(map: &MixedMap, bound: u32) -> Vec<WeightVector> {
    assert!(bound >= 1);
    let n = map.nvars;
    let mut classes: BTreeMap<Vec<Vec<usize>>, WeightVector> = BTreeMap::new();

    // Visit the box in lexicographic order so the first weight inserted for
    // a class is its lexicographically smallest representative.
    let mut p = vec![1u32; n];
    loop {
        let w = WeightVector::new(p.clone());
        classes.entry(face_key(map, &w)).or_insert(w);
        let mut i = n;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if p[i] < bound {
                p[i] += 1;
                for x in &mut p[i + 1..] {
                    *x = 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }

    // Exact facet normals of each component's radial hull (dimension <= 4).
    if n >= 2 && n <= 4 {
        for f in &map.components {
            for w in facet_normals(&radial_support(f), n) {
                classes.entry(face_key(map, &w)).or_insert(w);
            }
        }
    }

    let mut out: Vec<WeightVector> = classes.into_values().collect();
    out.sort();
    out
}

/// Strictly positive primitive facet normals of the Newton polyhedron of a
/// radial support set. Facets with a coordinate ray in their span have a
/// zero normal entry and are skipped (weights must be positive).
fn facet_normals(support: &RadialSupport, n: usize) -> Vec<WeightVector> {
    let pts: Vec<&Vec<u32>> = support.points.iter().collect();
    if pts.len() < n {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    for combo in combinations(pts.len(), n) {
        // normal of the affine hull of the chosen n points
        let base = pts[combo[0]];
        let mut diffs = ratlin::zeros(n - 1, n);
        for (r, &pi) in combo[1..].iter().enumerate() {
            for c in 0..n {
                diffs[r][c] = BigRational::from_integer(
                    BigInt::from(pts[pi][c] as i64) - BigInt::from(base[c] as i64),
                );
            }
        }
        let ns = ratlin::nullspace(&diffs);
        if ns.len() != 1 {
            continue; // affinely dependent points
        }
        let Some(mut normal) = primitive_integer(&ns[0]) else {
            continue;
        };
        // orient so the chosen hyperplane supports the hull from below
        let level: i64 = dot(&normal, base);
        let mut lower = false;
        let mut upper = false;
        for q in &pts {
            let v = dot(&normal, q);
            if v > level {
                upper = true;
            }
            if v < level {
                lower = true;
            }
        }
        if lower && upper {
            continue; // cuts through the hull
        }
        if lower {
            for x in &mut normal {
                *x = -*x;
            }
        }
        if normal.iter().all(|&x| x > 0) {
            out.insert(WeightVector::new(
                normal.iter().map(|&x| x as u32).collect(),
            ));
        }
    }
    out.into_iter().collect()
}

fn dot(normal: &[i64], point: &[u32]) -> i64 {
    normal
        .iter()
        .zip(point)
        .map(|(&a, &b)| a * b as i64)
        .sum()
}

/// Scale a rational vector to a primitive integer vector.
fn primitive_integer(v: &[BigRational]) -> Option<Vec<i64>> {
    let mut lcm = BigInt::from(1);
    for q in v {
        lcm = lcm.lcm(q.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * &lcm / q.denom()).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return None;
    }
    ints.iter()
        .map(|x| {
            let reduced = x / &gcd;
            i64::try_from(&reduced).ok()
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(combo.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] < n - k + i {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A polynomial is convenient when every coordinate axis carries a term
/// supported on that axis alone.
pub fn is_convenient(f: &MixedPolynomial) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let n = f.nvars;
    let ok = (0..n).all(|axis| {
        f.terms.iter().any(|t| {
            t.mu[axis] + t.nu[axis] > 0
                && t.mu
                    .iter()
                    .zip(&t.nu)
                    .enumerate()
                    .all(|(j, (m, v))| j == axis || m + v == 0)
        })
    });
    Ok(ok)
}

/// Purely-mixed verdict with a per-term witness variable (1-based).
///
/// A term is purely mixed with respect to `z_i` when `mu_i >= 1`,
/// `nu_i >= 1` and `mu_i + nu_i >= 3`. (The source definition prints the
/// last condition with mismatched indices; we read it diagonally.)
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurelyMixedReport {
    pub purely_mixed: bool,
    /// Smallest witness variable per term; `None` marks offending terms.
    pub witnesses: Vec<Option<usize>>,
}

pub fn purely_mixed(f: &MixedPolynomial) -> PurelyMixedReport {
    let witnesses: Vec<Option<usize>> = f
        .terms
        .iter()
        .map(|t| {
            t.mu
                .iter()
                .zip(&t.nu)
                .position(|(&m, &v)| m >= 1 && v >= 1 && m + v >= 3)
                .map(|j| j + 1)
        })
        .collect();
    PurelyMixedReport {
        purely_mixed: witnesses.iter().all(|w| w.is_some()),
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_polynomial, SourceText};
    use crate::poly::MixedPolynomial as P;

    fn parse(text: &str, n: usize) -> MixedPolynomial {
        parse_polynomial(&SourceText::new(text, n)).unwrap()
    }

    fn w(p: &[u32]) -> WeightVector {
        WeightVector::new(p.to_vec())
    }

    #[test]
    fn radial_support_examples() {
        let f = parse("z1^2+zb1^2", 1);
        let s = radial_support(&f);
        assert_eq!(s.points.len(), 1);
        assert!(s.points.contains(&vec![2]));

        let f = parse("z1+(z2+z3)^2", 3);
        let s = radial_support(&f);
        let expected: BTreeSet<Vec<u32>> = [
            vec![1, 0, 0],
            vec![0, 2, 0],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ]
        .into_iter()
        .collect();
        assert_eq!(s.points, expected);

        assert!(radial_support(&P::zero(2)).points.is_empty());
    }

    #[test]
    fn face_function_examples() {
        let f = parse("z1+(z2+z3)^2", 3);
        // all radial weights tie at 2
        assert_eq!(face_function(&f, &w(&[2, 1, 1])).unwrap(), f);
        // first coordinate drops out
        assert_eq!(
            face_function(&f, &w(&[3, 1, 1])).unwrap(),
            parse("(z2+z3)^2", 3)
        );
        let g = parse("z1^2+z2^2+z3^2", 3);
        assert_eq!(
            face_function(&g, &w(&[3, 1, 1])).unwrap(),
            parse("z2^2+z3^2", 3)
        );
        assert!(face_function(&P::zero(3), &w(&[1, 1, 1])).is_err());
    }

    #[test]
    fn face_function_idempotent() {
        let f = parse("z1+(z2+z3)^2+z1*z2*z3", 3);
        let p = w(&[3, 1, 2]);
        let once = face_function(&f, &p).unwrap();
        let twice = face_function(&once, &p).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn enumerate_single_variable() {
        let map = MixedMap::new(vec![parse("z1", 1)]).unwrap();
        let ws = enumerate_weights(&map, 4);
        assert_eq!(ws, vec![w(&[1])]);
    }

    #[test]
    fn enumerate_covers_example_faces() {
        let map = MixedMap::new(vec![parse("z1+(z2+z3)^2", 3), parse("z1^2+z2^2+z3^2", 3)])
            .unwrap();
        let ws = enumerate_weights(&map, 4);
        let tuples: Vec<(MixedPolynomial, MixedPolynomial)> = ws
            .iter()
            .map(|p| {
                (
                    face_polynomial(&map.components[0], p),
                    face_polynomial(&map.components[1], p),
                )
            })
            .collect();
        let want_a = (parse("z1+(z2+z3)^2", 3), parse("z2^2+z3^2", 3));
        let want_b = (parse("(z2+z3)^2", 3), parse("z2^2+z3^2", 3));
        assert!(tuples.contains(&want_a));
        assert!(tuples.contains(&want_b));
        // a fresh weight from the box reproduces a listed tuple
        let fresh = w(&[4, 3, 2]);
        let fresh_tuple = (
            face_polynomial(&map.components[0], &fresh),
            face_polynomial(&map.components[1], &fresh),
        );
        assert!(tuples.contains(&fresh_tuple));
        // the representative for the face of interest is the smallest one
        let rep = ws
            .iter()
            .find(|p| face_polynomial(&map.components[0], p) == want_b.0)
            .unwrap();
        assert_eq!(rep, &w(&[3, 1, 1]));
    }

    #[test]
    fn enumerate_mixed_pham_brieskorn_faces_are_subsums() {
        // z_i^(a_i + 1) zb_i with a = (2, 2)
        let f = parse("z1^3*zb1 + z2^3*zb2", 2);
        let map = MixedMap::new(vec![f.clone()]).unwrap();
        for p in enumerate_weights(&map, 2) {
            let face = face_polynomial(&f, &p);
            // every face is a nonempty sub-sum over an index subset
            assert!(!face.is_zero());
            for t in &face.terms {
                assert!(f.terms.contains(t));
            }
        }
    }

    #[test]
    fn convenience() {
        assert!(is_convenient(&parse("z1^2+z2^2", 2)).unwrap());
        assert!(!is_convenient(&parse("z1*z2", 2)).unwrap());
        // mixed Pham-Brieskorn: every term is pure-axis
        assert!(is_convenient(&parse("z1^3*zb1+z2^2*zb2", 2)).unwrap());
        assert!(is_convenient(&P::zero(2)).is_err());
    }

    #[test]
    fn purely_mixed_cases() {
        let r = purely_mixed(&parse("z1^3*zb1", 1));
        assert!(r.purely_mixed);
        assert_eq!(r.witnesses, vec![Some(1)]);

        // twist with a nontrivial permutation: no index carries both exponents
        assert!(!purely_mixed(&parse("z1^2*zb2", 2)).purely_mixed);
        // boundary case mu + nu = 2
        assert!(!purely_mixed(&parse("z1*zb1", 1)).purely_mixed);
        // zero polynomial: vacuously purely mixed
        assert!(purely_mixed(&P::zero(1)).purely_mixed);
    }

    #[test]
    fn restriction_weight_construction() {
        // For f convenient and any (I, P) there is a Q with
        // f_Q = (f^I)_P; build Q by inflating the weights off I.
        let f = parse("z1^2+z2^3+z3^2+z1*z2*z3+z2*z3^4", 3);
        assert!(is_convenient(&f).unwrap());
        let cases = [
            (vec![1usize, 2], w(&[2, 1, 1])),
            (vec![2, 3], w(&[1, 3, 1])),
            (vec![1], w(&[1, 1, 1])),
            (vec![1, 2, 3], w(&[2, 2, 1])),
        ];
        for (subset, p) in cases {
            let restricted = f.restrict(&subset).unwrap();
            if restricted.is_zero() {
                continue;
            }
            let target = face_function(&restricted, &p).unwrap();
            let max_pair: u64 = f
                .terms
                .iter()
                .map(|t| p.pairing(&t.radial()))
                .max()
                .unwrap();
            let big = (max_pair + 1) as u32;
            let q = WeightVector::new(
                (1..=f.nvars)
                    .map(|i| if subset.contains(&i) { p.p[i - 1] } else { big })
                    .collect(),
            );
            assert_eq!(face_function(&f, &q).unwrap(), target);
        }
    }
}
