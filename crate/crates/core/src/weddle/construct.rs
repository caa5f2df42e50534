use num_traits::{One, Zero};

use super::{check_point, form_from_coeffs, quadric_matrix, LinearSystem, WeddleError};
use crate::poly::linalg::{self, RatMatrix};
use crate::poly::{int, Monomial, MultiPoly, PolyMatrix, Rat};

/// Basis of the quadrics through the given points, one per free column of
/// the reduced evaluation matrix on the descending graded-lex monomials.
pub fn quadrics_through_points(points: &[Vec<Rat>], n: usize) -> Result<Vec<RatMatrix>, WeddleError> {
    let nv = n + 1;
    for p in points {
        check_point(p, nv)?;
    }
    let monomials = Monomial::all_of_degree(nv, 2);
    let rows: RatMatrix = points
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|m| {
                    m.exponents()
                        .iter()
                        .zip(p)
                        .filter(|(e, _)| **e > 0)
                        .fold(Rat::one(), |acc, (e, x)| acc * num_traits::pow(x.clone(), *e as usize))
                })
                .collect()
        })
        .collect();
    Ok(linalg::nullspace(&rows, monomials.len())
        .iter()
        .map(|v| quadric_matrix(&form_from_coeffs(nv, 2, v)))
        .collect())
}

fn linear_coeffs(l: &MultiPoly, index: usize) -> Result<Vec<Rat>, WeddleError> {
    if l.is_zero() || l.homogeneous_degree() != Some(1) {
        return Err(WeddleError::Shape(format!("form {index} is not a nonzero linear form")));
    }
    Ok((0..l.nvars())
        .map(|i| l.coeff(&Monomial::var(l.nvars(), i)))
        .collect())
}

/// `Q_k = sum_i coeffs[k][i] l_i l_i^T`.
pub fn rank_r_system(forms: &[MultiPoly], coeffs: &[Vec<Rat>]) -> Result<LinearSystem, WeddleError> {
    let Some(first) = forms.first() else {
        return Err(WeddleError::Shape("at least one linear form is required".into()));
    };
    let nv = first.nvars();
    let r = forms.len();
    if r > nv * (nv + 1) / 2 {
        return Err(WeddleError::Shape(format!(
            "{r} forms exceed the {} quadrics of P^{}",
            nv * (nv + 1) / 2,
            nv - 1
        )));
    }
    if coeffs.len() != nv || coeffs.iter().any(|row| row.len() != r) {
        return Err(WeddleError::Shape(format!("coefficients must be a {nv}x{r} matrix")));
    }
    let ls = forms
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if l.nvars() != nv {
                return Err(WeddleError::Shape(format!("form {i} has the wrong number of variables")));
            }
            linear_coeffs(l, i)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let quadrics = coeffs
        .iter()
        .map(|row| {
            let mut q = linalg::zeros(nv, nv);
            for (c, l) in row.iter().zip(&ls) {
                if c.is_zero() {
                    continue;
                }
                for i in 0..nv {
                    for j in 0..nv {
                        q[i][j] += c * &l[i] * &l[j];
                    }
                }
            }
            q
        })
        .collect();
    LinearSystem::new(quadrics)
}

fn check_4x4(m: &[Vec<Rat>]) -> Result<(), WeddleError> {
    if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
        return Err(WeddleError::Shape("expected a 4x4 matrix".into()));
    }
    Ok(())
}

/// `Q_k = M_0k x_0² + M_1k x_1² + M_2k x_2² + M_3k x_3² + (x_0+x_1+x_2+x_3)²`.
pub fn rank5_system(m: &[Vec<Rat>]) -> Result<LinearSystem, WeddleError> {
    check_4x4(m)?;
    let mut forms: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(i, 4)).collect();
    forms.push(MultiPoly::linear_form(&[int(1), int(1), int(1), int(1)]));
    let coeffs: Vec<Vec<Rat>> = (0..4)
        .map(|k| (0..4).map(|i| m[i][k].clone()).chain([Rat::one()]).collect())
        .collect();
    rank_r_system(&forms, &coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank5Data {
    pub m: RatMatrix,
    pub det_m: Rat,
    /// `mu[s]` is the determinant of `m` with row `s` replaced by ones.
    pub mu: [Rat; 4],
}

pub fn mu_invariants(m: &[Vec<Rat>]) -> Result<Rank5Data, WeddleError> {
    check_4x4(m)?;
    let mu = std::array::from_fn(|s| {
        let mut r = m.to_vec();
        r[s] = vec![Rat::one(); 4];
        linalg::det(&r)
    });
    Ok(Rank5Data {
        m: m.to_vec(),
        det_m: linalg::det(m),
        mu,
    })
}

fn xi_plus_dm(m: &[Vec<Rat>], replaced: Option<usize>) -> PolyMatrix {
    let xi = MultiPoly::linear_form(&[int(1), int(1), int(1), int(1)]);
    PolyMatrix::from_fn(4, 4, |i, j| {
        let dm = MultiPoly::var(i, 4).scale(&m[i][j]);
        match replaced {
            None => &xi + &dm,
            Some(c) if c == j => xi.clone(),
            Some(_) => dm,
        }
    })
}

/// `det(DM)` plus the four determinants with one column of `DM` replaced
/// by a column of `Ξ`; every other term of the column expansion of
/// `det(Ξ + DM)` has two equal columns.
pub fn rank5_column_expansion(m: &[Vec<Rat>]) -> Result<MultiPoly, WeddleError> {
    check_4x4(m)?;
    let dm = PolyMatrix::from_fn(4, 4, |i, j| MultiPoly::var(i, 4).scale(&m[i][j]));
    let mut f = dm.det()?;
    for c in 0..4 {
        f = f + xi_plus_dm(m, Some(c)).det()?;
    }
    Ok(f)
}

/// `(det M + Σμ) x0x1x2x3 + Σ_{i<j<k} μ_s (x_i²x_jx_k + x_ix_j²x_k + x_ix_jx_k²)`
/// where `s` is the index missing from `{i, j, k}`.
pub fn rank5_closed_form(data: &Rank5Data) -> MultiPoly {
    let x = |i: usize| MultiPoly::var(i, 4);
    let total: Rat = data.mu.iter().fold(data.det_m.clone(), |acc, m| acc + m);
    let mut f = (x(0) * x(1) * x(2) * x(3)).scale(&total);
    for s in 0..4 {
        let [i, j, k]: [usize; 3] = (0..4)
            .filter(|&t| t != s)
            .collect::<Vec<_>>()
            .try_into()
            .expect("three remaining indices");
        let cubic = x(i) * x(j) * x(k) * (x(i) + x(j) + x(k));
        f = f + cubic.scale(&data.mu[s]);
    }
    f
}

/// `det(Ξ + DM)` computed directly, through the five-determinant column
/// expansion, and from the closed form in the μ invariants; true when all
/// three agree.
pub fn rank5_identity_check(m: &[Vec<Rat>]) -> Result<bool, WeddleError> {
    let direct = xi_plus_dm(m, None).det()?;
    let expansion = rank5_column_expansion(m)?;
    let closed = rank5_closed_form(&mu_invariants(m)?);
    Ok(direct == expansion && expansion == closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ints;
    use crate::weddle::weddle_matrix;

    fn sample_m() -> RatMatrix {
        vec![ints(&[1, 0, 1, 1]), ints(&[1, 2, 0, 1]), ints(&[0, 1, -1, 1]), ints(&[1, 0, 1, 0])]
    }

    #[test]
    fn coordinate_points_leave_mixed_products() {
        let pts: Vec<Vec<Rat>> = (0..4)
            .map(|i| (0..4).map(|j| int((i == j) as i64)).collect())
            .collect();
        let qs = quadrics_through_points(&pts, 3).unwrap();
        assert_eq!(qs.len(), 6);
        for q in &qs {
            assert!((0..4).all(|i| q[i][i].is_zero()));
        }
    }

    #[test]
    fn identity_forms_give_squares() {
        let forms: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(i, 3)).collect();
        let sys = rank_r_system(&forms, &linalg::identity(3)).unwrap();
        let polys = sys.quadric_polys();
        assert_eq!(polys[1], MultiPoly::parse("x1^2", Some(3)).unwrap());
        let zero = rank_r_system(&forms, &linalg::zeros(3, 3)).unwrap();
        assert!(zero.quadric_polys().iter().all(MultiPoly::is_zero));
        assert!(matches!(
            rank_r_system(&forms, &linalg::zeros(2, 3)),
            Err(WeddleError::Shape(_))
        ));
    }

    #[test]
    fn rank5_matrices_have_unit_offdiagonal() {
        let sys = rank5_system(&sample_m()).unwrap();
        let q0 = &sys.quadrics()[0];
        assert_eq!(q0[0][0], int(2));
        assert_eq!(q0[1][1], int(2));
        assert_eq!(q0[2][2], int(1));
        assert_eq!(q0[0][3], int(1));
    }

    #[test]
    fn mu_of_simple_matrices() {
        let ones = vec![ints(&[1, 1, 1, 1]); 4];
        let d = mu_invariants(&ones).unwrap();
        assert!(d.det_m.is_zero() && d.mu.iter().all(Zero::is_zero));
        let d = mu_invariants(&linalg::identity(4)).unwrap();
        assert_eq!(d.det_m, int(1));
        assert!(d.mu.iter().all(|m| *m == int(1)));
        let d = mu_invariants(&sample_m()).unwrap();
        assert_eq!(d.det_m, int(1));
        assert_eq!(d.mu, [int(1), int(1), int(-1), int(-1)]);
    }

    #[test]
    fn rank5_weddle_is_half_gradient_determinant() {
        let m = sample_m();
        assert!(rank5_identity_check(&m).unwrap());
        let w = weddle_matrix(&rank5_system(&m).unwrap()).unwrap();
        let f = rank5_closed_form(&mu_invariants(&m).unwrap());
        assert_eq!(w.polynomial, f.normalized());
        assert_eq!(w.matrix.det().unwrap(), f);
    }

    #[test]
    fn zero_matrix_gives_zero_quartic() {
        let z = linalg::zeros(4, 4);
        assert!(rank5_identity_check(&z).unwrap());
        assert!(rank5_column_expansion(&z).unwrap().is_zero());
    }
}
