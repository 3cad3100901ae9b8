//! Rational points of the Grassmannian `G(ell, m)` and their Plücker
//! coordinates.

use std::fmt::Write as _;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::indices::{binomial, enumerate_index_tuples, gaussian_binomial, IndexTuple};
use crate::linalg::Matrix;
use crate::subspaces::SubspaceEnumerator;

/// A projective point with its canonical representative: the first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Felt>,
}

impl ProjPoint {
    /// Rescales `coords` so the first nonzero entry is 1.
    pub fn normalized(field: &Field, mut coords: Vec<Felt>) -> Result<ProjPoint> {
        let lead = coords
            .iter()
            .copied()
            .find(|x| !x.is_zero())
            .ok_or_else(|| Error::InvalidArgument("the zero vector is not a projective point".into()))?;
        if lead != Felt::ONE {
            let inv = field.inv(lead)?;
            for c in coords.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[Felt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn leading_index(&self) -> usize {
        self.coords.iter().position(|x| !x.is_zero()).expect("nonzero point")
    }
}

/// A finite set of projective points together with linear forms known to
/// vanish on all of them.
#[derive(Clone, Debug)]
pub struct ProjSystem {
    pub field: Field,
    pub ambient_dim: usize,
    pub points: Vec<ProjPoint>,
    /// One form per row, `ambient_dim` columns; may have no rows.
    pub defining_forms: Matrix,
    /// `(ell, m)` when the coordinates are Plücker coordinates.
    pub plucker: Option<(usize, usize)>,
}

impl ProjSystem {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `ambient_dim x n` matrix with the points as columns.
    pub fn point_matrix(&self) -> Matrix {
        let n = self.points.len();
        let mut m = Matrix::zeros(&self.field, self.ambient_dim, n);
        for (j, p) in self.points.iter().enumerate() {
            for (i, &x) in p.coords().iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Field header, `# plucker l=<l> m=<m>`, then one comma-separated
    /// point per line.
    pub fn to_text(&self) -> String {
        let mut out = self.field.header();
        out.push('\n');
        if let Some((ell, m)) = self.plucker {
            let _ = writeln!(out, "# plucker l={ell} m={m}");
        }
        for p in &self.points {
            let row: Vec<String> = p.coords().iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Plücker vector of the row space of an `ell x m` basis: the maximal minors
/// in lexicographic column order, normalized.
pub fn plucker_embed(basis: &Matrix) -> Result<ProjPoint> {
    let (ell, m) = (basis.rows(), basis.cols());
    let rank = basis.rank();
    if rank < ell {
        return Err(Error::RankDeficient {
            rank,
            expected: ell,
        });
    }
    let coords = raw_minors(basis, ell, m)?;
    ProjPoint::normalized(basis.field(), coords)
}

fn raw_minors(basis: &Matrix, ell: usize, m: usize) -> Result<Vec<Felt>> {
    enumerate_index_tuples(ell, m)?
        .iter()
        .map(|alpha| {
            let cols: Vec<usize> = alpha.entries().iter().map(|a| a - 1).collect();
            basis.select_columns(&cols).determinant()
        })
        .collect()
}

/// Walks every rational point of `G(ell, m)` in canonical order, handing the
/// rref basis and the Plücker point to `visit`.
pub(crate) fn for_each_point<F>(ell: usize, m: usize, field: &Field, budget: &Budget, mut visit: F) -> Result<()>
where
    F: FnMut(&Matrix, ProjPoint) -> Result<()>,
{
    if ell < 1 || ell > m {
        return Err(Error::InvalidArgument(format!("G({ell},{m}) needs 1 <= ell <= m")));
    }
    let total = gaussian_binomial(m, ell, field.q() as u64)?;
    if total > budget.max_points.into() {
        return Err(Error::budget("Grassmannian enumeration", total, budget.max_points));
    }
    let listing = SubspaceEnumerator::new(field, m, ell, budget.max_points)?;
    for basis in listing.iter() {
        // leading minor is 1 on an rref basis, so no normalization is needed
        let coords = raw_minors(&basis, ell, m)?;
        visit(&basis, ProjPoint { coords })?;
    }
    Ok(())
}

/// All of `G(ell, m)(F_q)`; the Plücker embedding is non-degenerate, so no
/// defining forms are recorded.
pub fn enumerate_grassmann_points(ell: usize, m: usize, field: &Field, budget: &Budget) -> Result<ProjSystem> {
    let mut points = Vec::new();
    for_each_point(ell, m, field, budget, |_, p| {
        points.push(p);
        Ok(())
    })?;
    let ambient_dim = binomial(m, ell);
    Ok(ProjSystem {
        field: field.clone(),
        ambient_dim,
        points,
        defining_forms: Matrix::zeros(field, 0, ambient_dim),
        plucker: Some((ell, m)),
    })
}

/// Recovers the rref basis of the subspace whose Plücker vector is `pt`.
///
/// With pivot set `P` (the first nonzero coordinate) the entry in row `i`,
/// column `j` of the rref basis is the coordinate at `P` with `P_i`
/// replaced by `j`, up to the sign of sorting. The candidate is re-embedded
/// and rejected unless it reproduces `pt`.
pub fn subspace_of_point(pt: &ProjPoint, field: &Field, ell: usize, m: usize) -> Result<Matrix> {
    if pt.dim() != binomial(m, ell) || ell == 0 {
        return Err(Error::DimensionMismatch(format!(
            "point of length {} is not in P(wedge^{ell} F^{m})",
            pt.dim()
        )));
    }
    let tuples = enumerate_index_tuples(ell, m)?;
    let pivots = tuples[pt.leading_index()].entries().to_vec();
    let lead_inv = field.inv(pt.coords()[pt.leading_index()])?;
    let mut basis = Matrix::zeros(field, ell, m);
    for (i, &pi) in pivots.iter().enumerate() {
        for j in 1..=m {
            let v = if j == pi {
                Felt::ONE
            } else if pivots.contains(&j) {
                Felt::ZERO
            } else {
                let mut swapped = pivots.clone();
                swapped[i] = j;
                let (lo, hi) = (pi.min(j), pi.max(j));
                let crossings = pivots.iter().filter(|&&x| x > lo && x < hi).count();
                let sorted = IndexTuple::from_unordered(swapped, m)?;
                let raw = field.mul(pt.coords()[sorted.lex_rank()], lead_inv);
                if crossings % 2 == 1 {
                    field.neg(raw)
                } else {
                    raw
                }
            };
            basis.set(i, j - 1, v);
        }
    }
    if plucker_embed(&basis).ok().as_ref() != Some(pt) {
        return Err(Error::NotOnGrassmannian);
    }
    Ok(basis.rref().basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    fn vals(p: &ProjPoint) -> Vec<u32> {
        p.coords().iter().map(|x| x.value()).collect()
    }

    #[test]
    fn embeds_small_examples() {
        let f = gf(2);
        let b = Matrix::from_rows(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        assert_eq!(vals(&plucker_embed(&b).unwrap()), vec![1, 0, 0, 0, 0, 0]);
        let b = Matrix::from_rows(&f, 4, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
        assert_eq!(vals(&plucker_embed(&b).unwrap()), vec![1, 0, 1, 1, 0, 1]);
        let singular = Matrix::from_rows(&f, 4, &[vec![1, 0, 1, 0], vec![1, 0, 1, 0]]).unwrap();
        assert!(matches!(plucker_embed(&singular), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn embedding_ignores_choice_of_basis() {
        let f = gf(3);
        let b = Matrix::from_rows(&f, 4, &[vec![2, 1, 0, 1], vec![1, 1, 2, 0]]).unwrap();
        assert_eq!(plucker_embed(&b).unwrap(), plucker_embed(&b.rref().basis()).unwrap());
    }

    #[test]
    fn counts() {
        let budget = Budget::default();
        assert_eq!(enumerate_grassmann_points(1, 2, &gf(2), &budget).unwrap().len(), 3);
        assert_eq!(enumerate_grassmann_points(2, 4, &gf(2), &budget).unwrap().len(), 35);
        assert_eq!(enumerate_grassmann_points(2, 4, &gf(3), &budget).unwrap().len(), 130);
        let tight = Budget {
            max_points: 34,
            ..Budget::default()
        };
        assert!(matches!(
            enumerate_grassmann_points(2, 4, &gf(2), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn subspace_round_trip() {
        for (q, ell, m) in [(2, 2, 4), (3, 1, 3), (3, 2, 4), (2, 3, 5)] {
            let f = gf(q);
            let sys = enumerate_grassmann_points(ell, m, &f, &Budget::default()).unwrap();
            for p in &sys.points {
                let w = subspace_of_point(p, &f, ell, m).unwrap();
                assert_eq!(&plucker_embed(&w).unwrap(), p);
            }
        }
    }

    #[test]
    fn coordinate_point_recovers_coordinate_plane() {
        let f = gf(2);
        let p = ProjPoint::normalized(&f, vec![Felt::ONE, Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ZERO]).unwrap();
        let w = subspace_of_point(&p, &f, 2, 4).unwrap();
        assert_eq!(w.values(), vec![1, 0, 0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn rejects_non_decomposable_vector() {
        let f = gf(2);
        // e12 + e34 violates the Plücker relation p12 p34 = p13 p24 - p14 p23
        let v: Vec<Felt> = [1, 0, 0, 0, 0, 1].iter().map(|&x| f.elem(x).unwrap()).collect();
        let p = ProjPoint::normalized(&f, v).unwrap();
        assert!(matches!(subspace_of_point(&p, &f, 2, 4), Err(Error::NotOnGrassmannian)));
    }

    #[test]
    fn export_format() {
        let sys = enumerate_grassmann_points(1, 2, &gf(2), &Budget::default()).unwrap();
        assert_eq!(sys.to_text(), "# gf p=2 e=1 modulus=0,1\n# plucker l=1 m=2\n1,0\n1,1\n0,1\n");
    }
}
