//! Quadratic forms over Q as symmetric Gram matrices: congruence
//! diagonalization, rank, signature, restriction, and JSON encoding.

use crate::arith::{parse_rat, rat_to_string, Int, Rat};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// q(x) = x^T * gram * x with gram symmetric; half-integer off-diagonal
/// entries are the normal case for integral quadratic polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Mat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealSignature {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl RealSignature {
    pub fn spread(&self) -> usize {
        self.positives.abs_diff(self.negatives)
    }
}

#[derive(Debug, Clone)]
pub struct Diagonalization {
    /// diagonal coefficients, zeros for the radical
    pub entries: Vec<Rat>,
    /// U with U^T * gram * U = diag(entries)
    pub transform: Mat,
    pub rank: usize,
}

impl Diagonalization {
    pub fn nonzero_entries(&self) -> Vec<Rat> {
        self.entries.iter().filter(|e| !e.is_zero()).cloned().collect()
    }
}

impl QuadraticForm {
    pub fn from_gram(gram: Mat) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Dimension("empty Gram matrix".into()));
        }
        for row in &gram {
            if row.len() != n {
                return Err(Error::Dimension("Gram matrix not square".into()));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Input("Gram matrix not symmetric".into()));
                }
            }
        }
        Ok(QuadraticForm { gram })
    }

    pub fn from_diagonal(entries: &[Rat]) -> Self {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { entries[i].clone() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        QuadraticForm { gram }
    }

    pub fn from_diagonal_i64(entries: &[i64]) -> Self {
        Self::from_diagonal(
            &entries
                .iter()
                .map(|&e| Rat::from_integer(Int::from(e)))
                .collect::<Vec<_>>(),
        )
    }

    /// Coefficient list of quadratic monomials: coeffs[(i,j)] with i <= j is
    /// the coefficient of x_i x_j; off-diagonal entries are halved.
    pub fn from_monomial_coeffs(dim: usize, coeffs: &[(usize, usize, Rat)]) -> Result<Self> {
        let mut gram = vec![vec![Rat::zero(); dim]; dim];
        let half = Rat::new(Int::one(), Int::from(2));
        for (i, j, c) in coeffs {
            if *i >= dim || *j >= dim {
                return Err(Error::Dimension("monomial index out of range".into()));
            }
            if i == j {
                gram[*i][*j] = &gram[*i][*j] + c;
            } else {
                let h = c * &half;
                gram[*i][*j] = &gram[*i][*j] + &h;
                gram[*j][*i] = &gram[*j][*i] + &h;
            }
        }
        QuadraticForm::from_gram(gram)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn det(&self) -> Rat {
        linalg::det_exact(&self.gram).expect("square by construction")
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.gram)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// b(u, v) = u^T * gram * v.
    pub fn bilinear(&self, u: &[Rat], v: &[Rat]) -> Result<Rat> {
        let n = self.dim();
        if u.len() != n || v.len() != n {
            return Err(Error::Dimension("vector length != dim".into()));
        }
        let mut s = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                if !self.gram[i][j].is_zero() {
                    s += &u[i] * &self.gram[i][j] * &v[j];
                }
            }
        }
        Ok(s)
    }

    pub fn evaluate(&self, v: &[Rat]) -> Result<Rat> {
        self.bilinear(v, v)
    }

    pub fn evaluate_int(&self, v: &[Int]) -> Result<Rat> {
        let rv: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        self.evaluate(&rv)
    }

    /// lambda * self + mu * other.
    pub fn linear_combination(&self, lam: &Rat, other: &QuadraticForm, mu: &Rat) -> Result<Self> {
        let n = self.dim();
        if other.dim() != n {
            return Err(Error::Dimension("combining forms of different dims".into()));
        }
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| lam * &self.gram[i][j] + mu * &other.gram[i][j])
                    .collect()
            })
            .collect();
        Ok(QuadraticForm { gram })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuadraticForm {
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(|e| e * c).collect())
                .collect(),
        }
    }

    /// Orthogonal direct sum self | other.
    pub fn direct_sum(&self, other: &QuadraticForm) -> Self {
        let n = self.dim();
        let m = other.dim();
        let mut gram = vec![vec![Rat::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        QuadraticForm { gram }
    }

    /// Gram matrix of q restricted to the span of the given independent
    /// vectors, in that basis.
    pub fn restrict(&self, basis: &[Vec<Rat>]) -> Result<QuadraticForm> {
        let k = basis.len();
        if k == 0 || k > self.dim() {
            return Err(Error::Dimension("bad basis size".into()));
        }
        let as_mat: Mat = basis.to_vec();
        if linalg::rank(&as_mat) != k {
            return Err(Error::Rank);
        }
        let mut gram = vec![vec![Rat::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                gram[i][j] = self.bilinear(&basis[i], &basis[j])?;
            }
        }
        Ok(QuadraticForm { gram })
    }

    /// Pullback by an invertible change of variables: x = U y.
    pub fn change_of_variables(&self, u: &Mat) -> Result<QuadraticForm> {
        if u.len() != self.dim() {
            return Err(Error::Dimension("transform size mismatch".into()));
        }
        let ut = linalg::transpose(u);
        let g = linalg::mat_mul(&ut, &linalg::mat_mul(&self.gram, u));
        QuadraticForm::from_gram(g)
    }

    /// Symmetric Gauss congruence, deterministic pivoting: first nonzero
    /// diagonal entry, else first nonzero off-diagonal pair.
    pub fn diagonalize(&self) -> Diagonalization {
        let n = self.dim();
        let mut g = self.gram.clone();
        let mut u = linalg::identity(n);

        // column operation on g and u: col_j += c * col_i, mirrored on rows of g
        let col_op = |g: &mut Mat, u: &mut Mat, j: usize, i: usize, c: &Rat| {
            for r in 0..g.len() {
                let t = c * &g[r][i];
                g[r][j] = &g[r][j] + t;
            }
            for r in 0..g.len() {
                let t = c * &g[i][r];
                g[j][r] = &g[j][r] + t;
            }
            for r in 0..u.len() {
                let t = c * &u[r][i];
                u[r][j] = &u[r][j] + t;
            }
        };
        let col_swap = |g: &mut Mat, u: &mut Mat, i: usize, j: usize| {
            for r in 0..g.len() {
                g[r].swap(i, j);
            }
            g.swap(i, j);
            for r in 0..u.len() {
                u[r].swap(i, j);
            }
        };

        for k in 0..n {
            if g[k][k].is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !g[i][i].is_zero()) {
                    col_swap(&mut g, &mut u, k, i);
                } else {
                    // all remaining diagonal entries vanish; find the first
                    // nonzero off-diagonal pair and merge it onto the diagonal
                    let mut found = None;
                    'outer: for i in k..n {
                        for j in i + 1..n {
                            if !g[i][j].is_zero() {
                                found = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    match found {
                        Some((i, j)) => {
                            col_op(&mut g, &mut u, i, j, &Rat::one());
                            debug_assert!(!g[i][i].is_zero());
                            if i != k {
                                col_swap(&mut g, &mut u, k, i);
                            }
                        }
                        None => break, // remaining block is entirely zero
                    }
                }
            }
            let pivot = g[k][k].clone();
            for j in k + 1..n {
                if !g[k][j].is_zero() {
                    let c = -(&g[k][j] / &pivot);
                    col_op(&mut g, &mut u, j, k, &c);
                }
            }
        }
        let entries: Vec<Rat> = (0..n).map(|i| g[i][i].clone()).collect();
        let rank = entries.iter().filter(|e| !e.is_zero()).count();
        Diagonalization {
            entries,
            transform: u,
            rank,
        }
    }

    pub fn signature(&self) -> RealSignature {
        let d = self.diagonalize();
        let positives = d.entries.iter().filter(|e| e.is_positive()).count();
        let negatives = d.entries.iter().filter(|e| e.is_negative()).count();
        RealSignature {
            positives,
            negatives,
            zeros: d.entries.len() - positives - negatives,
        }
    }
}

// JSON: {"dim": n, "gram": [["p/q", ...], ...]}
impl Serialize for QuadraticForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            dim: usize,
            gram: Vec<Vec<String>>,
        }
        Repr {
            dim: self.dim(),
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(rat_to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            dim: usize,
            gram: Vec<Vec<String>>,
        }
        let r = Repr::deserialize(d)?;
        if r.gram.len() != r.dim {
            return Err(D::Error::custom("gram size does not match dim"));
        }
        let mut gram = Vec::with_capacity(r.dim);
        for row in &r.gram {
            let mut out = Vec::with_capacity(r.dim);
            for e in row {
                out.push(parse_rat(e).ok_or_else(|| D::Error::custom(format!("bad rational {e:?}")))?);
            }
            gram.push(out);
        }
        QuadraticForm::from_gram(gram).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::linalg::mat_mul;

    fn xy_form() -> QuadraticForm {
        QuadraticForm::from_gram(vec![
            vec![rat_int(0), rat(1, 2)],
            vec![rat(1, 2), rat_int(0)],
        ])
        .unwrap()
    }

    fn check_diag(q: &QuadraticForm) {
        let d = q.diagonalize();
        let ut = linalg::transpose(&d.transform);
        let m = mat_mul(&ut, &mat_mul(q.gram(), &d.transform));
        for i in 0..q.dim() {
            for j in 0..q.dim() {
                if i == j {
                    assert_eq!(m[i][j], d.entries[i]);
                } else {
                    assert!(m[i][j].is_zero(), "not diagonal at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let q = xy_form();
        let d = q.diagonalize();
        assert_eq!(d.rank, 2);
        check_diag(&q);
        // entries are 1 and -1/4 up to squares: one positive, one negative
        let sig = q.signature();
        assert_eq!((sig.positives, sig.negatives, sig.zeros), (1, 1, 0));
    }

    #[test]
    fn diagonalize_diag_and_zero() {
        let q = QuadraticForm::from_diagonal_i64(&[1, 2, 3]);
        let d = q.diagonalize();
        assert_eq!(d.entries, vec![rat_int(1), rat_int(2), rat_int(3)]);
        assert_eq!(d.transform, linalg::identity(3));

        let z = QuadraticForm::from_gram(vec![vec![rat_int(0); 3]; 3]).unwrap();
        let d = z.diagonalize();
        assert_eq!(d.rank, 0);
        assert!(d.entries.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn signature_examples() {
        let q = QuadraticForm::from_diagonal_i64(&[1, 1, 1, 1]);
        let s = q.signature();
        assert_eq!((s.positives, s.negatives, s.zeros), (4, 0, 0));
        let s = xy_form().signature();
        assert_eq!((s.positives, s.negatives, s.zeros), (1, 1, 0));
        let s = QuadraticForm::from_diagonal_i64(&[1, -1, 0]).signature();
        assert_eq!((s.positives, s.negatives, s.zeros), (1, 1, 1));
    }

    #[test]
    fn evaluate_examples() {
        let q = QuadraticForm::from_diagonal_i64(&[1, 1, 1]);
        assert_eq!(
            q.evaluate(&[rat_int(1), rat_int(1), rat_int(1)]).unwrap(),
            rat_int(3)
        );
        assert_eq!(
            xy_form().evaluate(&[rat_int(1), rat_int(0)]).unwrap(),
            rat_int(0)
        );
        let q = QuadraticForm::from_diagonal_i64(&[1, -2]);
        assert_eq!(q.evaluate(&[rat_int(3), rat_int(2)]).unwrap(), rat_int(1));
        assert!(q.evaluate(&[rat_int(1)]).is_err());
    }

    #[test]
    fn restrict_examples() {
        let q = QuadraticForm::from_diagonal_i64(&[1, 2, 3]);
        let e1 = vec![rat_int(1), rat_int(0), rat_int(0)];
        let e2 = vec![rat_int(0), rat_int(1), rat_int(0)];
        let r = q.restrict(&[e1.clone(), e2.clone()]).unwrap();
        assert_eq!(r, QuadraticForm::from_diagonal_i64(&[1, 2]));

        let r = xy_form().restrict(&[vec![rat_int(1), rat_int(0)]]).unwrap();
        assert!(r.gram()[0][0].is_zero());

        let q = QuadraticForm::from_diagonal_i64(&[1, -1]);
        let r = q.restrict(&[vec![rat_int(1), rat_int(1)]]).unwrap();
        assert!(r.gram()[0][0].is_zero());

        assert!(q.restrict(&[e1.clone()]).is_err()); // wrong length
        let dep = vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(2), rat_int(2)],
        ];
        assert!(matches!(q.restrict(&dep), Err(Error::Rank)));
    }

    #[test]
    fn monomial_coeffs_halving() {
        // q = x0^2 + 3 x0 x1
        let q = QuadraticForm::from_monomial_coeffs(
            2,
            &[(0, 0, rat_int(1)), (0, 1, rat_int(3))],
        )
        .unwrap();
        assert_eq!(q.gram()[0][1], rat(3, 2));
        assert_eq!(
            q.evaluate(&[rat_int(1), rat_int(1)]).unwrap(),
            rat_int(4)
        );
    }

    #[test]
    fn json_roundtrip_bit_exact() {
        let q = QuadraticForm::from_gram(vec![
            vec![rat_int(2), rat(1, 2)],
            vec![rat(1, 2), rat(-7, 3)],
        ])
        .unwrap();
        let s = serde_json::to_string(&q).unwrap();
        let q2: QuadraticForm = serde_json::from_str(&s).unwrap();
        assert_eq!(q, q2);
        let s2 = serde_json::to_string(&q2).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn degenerate_forms_first_class() {
        let q = QuadraticForm::from_diagonal_i64(&[1, 0, -3, 0]);
        assert_eq!(q.rank(), 2);
        assert_eq!(q.diagonalize().rank, 2);
        assert_eq!(q.signature().zeros, 2);
    }

    #[test]
    fn diagonalize_random_like_dense() {
        let q = QuadraticForm::from_gram(vec![
            vec![rat_int(0), rat_int(1), rat_int(2)],
            vec![rat_int(1), rat_int(0), rat(1, 3)],
            vec![rat_int(2), rat(1, 3), rat_int(0)],
        ])
        .unwrap();
        check_diag(&q);
        assert_eq!(q.diagonalize().rank, q.rank());
    }
}
