//! Wirtinger calculus: formal partials treating `z` and `zbar` as
//! independent, numeric evaluation, real Jacobians, and complexification of
//! a mixed map viewed as a real-analytic map of `R^{2n}`.

use num_complex::Complex64;

use crate::coeff::ComplexRational;
use crate::poly::{MixedMap, MixedMonomial, MixedPolynomial, PointC, PolyError, RealMatrix};

/// `d/dz_j` (1-based): `c z^mu zbar^nu -> c mu_j z^(mu - e_j) zbar^nu`.
pub fn wirtinger_z(f: &MixedPolynomial, j: usize) -> Result<MixedPolynomial, PolyError> {
    if j == 0 || j > f.nvars {
        return Err(PolyError::IndexOutOfRange(j, f.nvars));
    }
    let terms = f
        .terms
        .iter()
        .filter(|t| t.mu[j - 1] > 0)
        .map(|t| {
            let mut mu = t.mu.clone();
            let e = mu[j - 1];
            mu[j - 1] -= 1;
            MixedMonomial {
                coeff: &t.coeff * &ComplexRational::from_int(e as i64),
                mu,
                nu: t.nu.clone(),
            }
        })
        .collect();
    Ok(MixedPolynomial::from_terms(f.nvars, terms))
}

/// `d/dzbar_j` (1-based).
pub fn wirtinger_zbar(f: &MixedPolynomial, j: usize) -> Result<MixedPolynomial, PolyError> {
    if j == 0 || j > f.nvars {
        return Err(PolyError::IndexOutOfRange(j, f.nvars));
    }
    let terms = f
        .terms
        .iter()
        .filter(|t| t.nu[j - 1] > 0)
        .map(|t| {
            let mut nu = t.nu.clone();
            let e = nu[j - 1];
            nu[j - 1] -= 1;
            MixedMonomial {
                coeff: &t.coeff * &ComplexRational::from_int(e as i64),
                mu: t.mu.clone(),
                nu,
            }
        })
        .collect();
    Ok(MixedPolynomial::from_terms(f.nvars, terms))
}

/// Direct term-by-term evaluation with Kahan-compensated accumulation on
/// both real and imaginary parts.
pub fn evaluate(f: &MixedPolynomial, p: &PointC) -> Complex64 {
    debug_assert_eq!(p.len(), f.nvars);
    let conj: Vec<Complex64> = p.iter().map(|z| z.conj()).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for t in &f.terms {
        let mut v = t.coeff.to_complex64();
        for (j, (&m, &n)) in t.mu.iter().zip(&t.nu).enumerate() {
            if m > 0 {
                v *= p[j].powu(m);
            }
            if n > 0 {
                v *= conj[j].powu(n);
            }
        }
        // Kahan step, componentwise.
        let y = v - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum
}

pub fn evaluate_map(map: &MixedMap, p: &PointC) -> Vec<Complex64> {
    map.components.iter().map(|f| evaluate(f, p)).collect()
}

/// Precomputed Wirtinger gradients of a map, for repeated point evaluation.
pub struct MapDifferential {
    pub nvars: usize,
    pub k: usize,
    /// `dz[i][j] = d f^i / d z_(j+1)`
    pub dz: Vec<Vec<MixedPolynomial>>,
    /// `dzbar[i][j] = d f^i / d zbar_(j+1)`
    pub dzbar: Vec<Vec<MixedPolynomial>>,
}

impl MapDifferential {
    pub fn new(map: &MixedMap) -> Self {
        let nvars = map.nvars;
        let dz = map
            .components
            .iter()
            .map(|f| (1..=nvars).map(|j| wirtinger_z(f, j).unwrap()).collect())
            .collect();
        let dzbar = map
            .components
            .iter()
            .map(|f| (1..=nvars).map(|j| wirtinger_zbar(f, j).unwrap()).collect())
            .collect();
        Self {
            nvars,
            k: map.k(),
            dz,
            dzbar,
        }
    }

    /// Complex gradients `(Df^i(p), Dbar f^i(p))` for every component.
    pub fn gradients_at(&self, p: &PointC) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
        let dz = self
            .dz
            .iter()
            .map(|row| row.iter().map(|g| evaluate(g, p)).collect())
            .collect();
        let dzbar = self
            .dzbar
            .iter()
            .map(|row| row.iter().map(|g| evaluate(g, p)).collect())
            .collect();
        (dz, dzbar)
    }

    /// The differential of `(Re f^1, Im f^1, ...)` with respect to
    /// `(x_1, y_1, ..., x_n, y_n)`, assembled from Wirtinger values via
    /// `d/dx = d/dz + d/dzbar` and `d/dy = i (d/dz - d/dzbar)`.
    pub fn real_jacobian_at(&self, p: &PointC) -> RealMatrix {
        let (dz, dzbar) = self.gradients_at(p);
        let mut jac = RealMatrix::zeros(2 * self.k, 2 * self.nvars);
        for i in 0..self.k {
            for j in 0..self.nvars {
                let dfdx = dz[i][j] + dzbar[i][j];
                let dfdy = Complex64::i() * (dz[i][j] - dzbar[i][j]);
                jac.set(2 * i, 2 * j, dfdx.re);
                jac.set(2 * i, 2 * j + 1, dfdy.re);
                jac.set(2 * i + 1, 2 * j, dfdx.im);
                jac.set(2 * i + 1, 2 * j + 1, dfdy.im);
            }
        }
        jac
    }

    /// Matrix of the real-linear map
    /// `alpha -> sum_i alpha_i Dbar f^i(p) - conj(alpha_i) conj(Df^i(p))`
    /// as a `2n x 2k` real matrix; its kernel vectors are the singularity
    /// relation witnesses.
    pub fn relation_matrix_at(&self, p: &PointC) -> nalgebra::DMatrix<f64> {
        let (dz, dzbar) = self.gradients_at(p);
        let mut m = nalgebra::DMatrix::<f64>::zeros(2 * self.nvars, 2 * self.k);
        for i in 0..self.k {
            for j in 0..self.nvars {
                // alpha_i = s + i t contributes
                //   s * (dzbar - conj(dz)) + t * (i dzbar + i conj(dz))
                let a = dzbar[i][j] - dz[i][j].conj();
                let b = Complex64::i() * (dzbar[i][j] + dz[i][j].conj());
                m[(2 * j, 2 * i)] = a.re;
                m[(2 * j + 1, 2 * i)] = a.im;
                m[(2 * j, 2 * i + 1)] = b.re;
                m[(2 * j + 1, 2 * i + 1)] = b.im;
            }
        }
        m
    }
}

/// One-shot real Jacobian.
pub fn real_jacobian(map: &MixedMap, p: &PointC) -> RealMatrix {
    MapDifferential::new(map).real_jacobian_at(p)
}

/// Complexification of a mixed map seen as `(R^{2n},0) -> (R^{2k},0)`.
///
/// Substitutes `z_j -> u_j + i v_j`, `zbar_j -> u_j - i v_j` with `(u, v)`
/// complex, and returns the `2k` real/imaginary-part components as ordinary
/// polynomials in the `2n` variables ordered `(u_1..u_n, v_1..v_n)`.
pub fn complexify(map: &MixedMap) -> Vec<MixedPolynomial> {
    let n = map.nvars;
    let half = ComplexRational::from_ratio(1, 2);
    let minus_half_i = &ComplexRational::from_ratio(-1, 2) * &ComplexRational::i();
    let mut out = Vec::with_capacity(2 * map.k());
    for f in &map.components {
        let fc = substitute_complexified(f);
        let fc_conj = substitute_complexified(&f.conjugate());
        let re = fc.add(&fc_conj).unwrap().scale(&half);
        let im = fc.sub(&fc_conj).unwrap().scale(&minus_half_i);
        out.push(re);
        out.push(im);
        let _ = n;
    }
    out
}

/// `z_j -> u_j + i v_j`, `zbar_j -> u_j - i v_j`, returning a polynomial in
/// `2n` holomorphic variables (all `nu` exponents zero).
fn substitute_complexified(f: &MixedPolynomial) -> MixedPolynomial {
    let n = f.nvars;
    let one = ComplexRational::one();
    let i_unit = ComplexRational::i();
    let neg_i = ComplexRational::zero() - i_unit.clone();
    // z_j and zbar_j as degree-1 polynomials in 2n variables
    let mut zs = Vec::with_capacity(n);
    let mut zbs = Vec::with_capacity(n);
    for j in 1..=n {
        let u = MixedPolynomial::var(2 * n, j);
        let v = MixedPolynomial::var(2 * n, n + j);
        zs.push(u.add(&v.scale(&i_unit)).unwrap().scale(&one));
        zbs.push(u.add(&v.scale(&neg_i)).unwrap());
    }
    let mut acc = MixedPolynomial::zero(2 * n);
    for t in &f.terms {
        let mut term = MixedPolynomial::constant(2 * n, t.coeff.clone());
        for (j, (&m, &nn)) in t.mu.iter().zip(&t.nu).enumerate() {
            if m > 0 {
                term = term.mul(&zs[j].pow(m)).unwrap();
            }
            if nn > 0 {
                term = term.mul(&zbs[j].pow(nn)).unwrap();
            }
        }
        acc = acc.add(&term).unwrap();
    }
    acc
}

impl std::ops::Sub for ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: ComplexRational) -> ComplexRational {
        &self - &rhs
    }
}

/// Outcome of restricting complexified data to one of the isotropic lines
/// `{u_i = s i v_i, other coordinates 0}` with `s = +1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCheck {
    /// 1-based variable index of the line.
    pub variable: usize,
    /// `+1` kills `zbar_i`, `-1` kills `z_i`.
    pub sign: i8,
    /// All `2k` complexified components vanish identically on the line.
    pub components_vanish: bool,
    /// The complexified Jacobian restricted to the line has all columns for
    /// other variables zero and the two `i`-columns proportional, so its
    /// rank is at most 1 along the line.
    pub jacobian_rank_deficient: bool,
}

/// Restrict a polynomial in `2n` holomorphic variables to the line
/// `{u_i = s i t, v_i = t, others 0}`; returns coefficients by power of `t`.
fn restrict_to_line(
    f: &MixedPolynomial,
    n: usize,
    i: usize,
    sign: i8,
) -> Vec<ComplexRational> {
    let iu = i - 1; // u_i position
    let iv = n + i - 1; // v_i position
    let s_i = if sign >= 0 {
        ComplexRational::i()
    } else {
        ComplexRational::zero() - ComplexRational::i()
    };
    let mut coeffs: Vec<ComplexRational> = Vec::new();
    for t in &f.terms {
        let outside = t
            .mu
            .iter()
            .enumerate()
            .any(|(j, &e)| e > 0 && j != iu && j != iv);
        if outside {
            continue;
        }
        let a = t.mu[iu];
        let b = t.mu[iv];
        let mut c = t.coeff.clone();
        for _ in 0..a {
            c *= &s_i;
        }
        let deg = (a + b) as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, ComplexRational::zero());
        }
        coeffs[deg] += &c;
    }
    coeffs
}

fn all_zero(coeffs: &[ComplexRational]) -> bool {
    coeffs.iter().all(|c| c.is_zero())
}

/// Check that the complexification of `map` vanishes with rank-deficient
/// Jacobian along the isotropic line of variable `i` with the given sign.
pub fn complexified_line_check(map: &MixedMap, i: usize, sign: i8) -> LineCheck {
    let n = map.nvars;
    let comps = complexify(map);
    let components_vanish = comps
        .iter()
        .all(|g| all_zero(&restrict_to_line(g, n, i, sign)));

    let mut jacobian_rank_deficient = true;
    for g in &comps {
        let mut col_u = Vec::new();
        let mut col_v = Vec::new();
        for var in 1..=2 * n {
            let d = wirtinger_z(g, var).unwrap();
            let line = restrict_to_line(&d, n, i, sign);
            if var == i {
                col_u = line;
            } else if var == n + i {
                col_v = line;
            } else if !all_zero(&line) {
                jacobian_rank_deficient = false;
            }
        }
        // On the positive line (zbar_i = 0) the two surviving columns must
        // satisfy col_v + i col_u = 0; on the negative line col_v - i col_u.
        let len = col_u.len().max(col_v.len());
        col_u.resize(len, ComplexRational::zero());
        col_v.resize(len, ComplexRational::zero());
        let factor = if sign >= 0 {
            ComplexRational::i()
        } else {
            ComplexRational::zero() - ComplexRational::i()
        };
        for (u, v) in col_u.iter().zip(&col_v) {
            let combo = v + &(&factor * u);
            if !combo.is_zero() {
                jacobian_rank_deficient = false;
            }
        }
    }

    LineCheck {
        variable: i,
        sign: if sign >= 0 { 1 } else { -1 },
        components_vanish,
        jacobian_rank_deficient,
    }
}
