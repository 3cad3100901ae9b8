//! Linear sections of the Grassmannian: Schubert varieties and their unions,
//! the sections `E_Λ` cut out by coordinate hyperplanes, and the symplectic
//! family (Lagrangian and isotropic Grassmannians, Lagrangian-Schubert
//! varieties).
//!
//! Each variety is produced as a [`ProjSystem`] by filtering the canonical
//! point stream of `G(ell, m)(F_q)` with a membership predicate computed on
//! the subspace itself, and it records the linear forms that are known to
//! cut it out of the Grassmannian. [`verify_ffn`] then checks that those
//! forms span every linear relation satisfied by the rational points.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::grassmann::{for_each_point, ProjPoint, ProjSystem};
use crate::indices::{binomial, bruhat_down_set, enumerate_index_tuples, IndexTuple};
use crate::linalg::Matrix;

/// Which linear section of `G(ell, m)` to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyKind {
    Grassmann { ell: usize, m: usize },
    Schubert { ell: usize, m: usize, lambda: IndexTuple },
    SchubertUnion { ell: usize, m: usize, lambdas: Vec<IndexTuple> },
    /// Points with `p_α = 0` for every `α` in the family.
    SectionELambda { ell: usize, m: usize, family: Vec<IndexTuple> },
    Lagrangian { n: usize },
    Isotropic { ell: usize, n: usize },
    LagrangianSchubert { n: usize, lambda: IndexTuple },
    LagrangianSchubertUnion { n: usize, lambdas: Vec<IndexTuple> },
}

/// A variety together with the field it is taken over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    pub kind: VarietyKind,
    pub field: Field,
}

impl VarietySpec {
    pub fn new(kind: VarietyKind, field: &Field) -> Result<VarietySpec> {
        kind.validate()?;
        Ok(VarietySpec {
            kind,
            field: field.clone(),
        })
    }

    pub fn parse(s: &str, field: &Field) -> Result<VarietySpec> {
        VarietySpec::new(VarietyKind::parse(s)?, field)
    }
}

fn parse_usize_list(s: &str, expected: usize, ctx: &str) -> Result<Vec<usize>> {
    let v = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(format!("bad integer {t:?} in {ctx:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != expected {
        return Err(Error::parse(format!("{ctx:?} needs {expected} integer(s)")));
    }
    Ok(v)
}

fn parse_tuple_list(s: &str, m: usize) -> Result<Vec<IndexTuple>> {
    let mut out: Vec<IndexTuple> = Vec::new();
    for part in s.split(';') {
        let t = IndexTuple::parse(part, m)?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    Ok(out)
}

fn join_tuples(ts: &[IndexTuple]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(";")
}

impl VarietyKind {
    /// Parses the command-line form, e.g. `schubert:2,4:1,4` or
    /// `elambda:2,4:1,2;1,3`.
    pub fn parse(s: &str) -> Result<VarietyKind> {
        let s = s.trim();
        let mut parts = s.splitn(3, ':');
        let head = parts.next().unwrap_or_default();
        let shape = parts
            .next()
            .ok_or_else(|| Error::parse(format!("variety {s:?} lacks parameters")))?;
        let tail = parts.next();
        let need_tail = |what: &str| {
            tail.ok_or_else(|| Error::parse(format!("variety {s:?} lacks {what}")))
        };
        let no_tail = || match tail {
            Some(_) => Err(Error::parse(format!("unexpected trailing field in {s:?}"))),
            None => Ok(()),
        };
        let kind = match head {
            "grassmann" => {
                no_tail()?;
                let v = parse_usize_list(shape, 2, s)?;
                VarietyKind::Grassmann { ell: v[0], m: v[1] }
            }
            "schubert" => {
                let v = parse_usize_list(shape, 2, s)?;
                VarietyKind::Schubert {
                    ell: v[0],
                    m: v[1],
                    lambda: IndexTuple::parse(need_tail("a tuple")?, v[1])?,
                }
            }
            "union" => {
                let v = parse_usize_list(shape, 2, s)?;
                VarietyKind::SchubertUnion {
                    ell: v[0],
                    m: v[1],
                    lambdas: parse_tuple_list(need_tail("tuples")?, v[1])?,
                }
            }
            "elambda" => {
                let v = parse_usize_list(shape, 2, s)?;
                VarietyKind::SectionELambda {
                    ell: v[0],
                    m: v[1],
                    family: parse_tuple_list(need_tail("tuples")?, v[1])?,
                }
            }
            "lagrangian" => {
                no_tail()?;
                let v = parse_usize_list(shape, 1, s)?;
                VarietyKind::Lagrangian { n: v[0] }
            }
            "isotropic" => {
                no_tail()?;
                let v = parse_usize_list(shape, 2, s)?;
                VarietyKind::Isotropic { ell: v[0], n: v[1] }
            }
            "lag-schubert" => {
                let v = parse_usize_list(shape, 1, s)?;
                VarietyKind::LagrangianSchubert {
                    n: v[0],
                    lambda: IndexTuple::parse(need_tail("a tuple")?, 2 * v[0])?,
                }
            }
            "lag-union" => {
                let v = parse_usize_list(shape, 1, s)?;
                VarietyKind::LagrangianSchubertUnion {
                    n: v[0],
                    lambdas: parse_tuple_list(need_tail("tuples")?, 2 * v[0])?,
                }
            }
            other => return Err(Error::parse(format!("unknown variety kind {other:?}"))),
        };
        kind.validate()?;
        Ok(kind)
    }

    /// `(ell, m)` of the ambient Grassmannian.
    pub fn plucker_shape(&self) -> (usize, usize) {
        match *self {
            VarietyKind::Grassmann { ell, m }
            | VarietyKind::Schubert { ell, m, .. }
            | VarietyKind::SchubertUnion { ell, m, .. }
            | VarietyKind::SectionELambda { ell, m, .. } => (ell, m),
            VarietyKind::Lagrangian { n }
            | VarietyKind::LagrangianSchubert { n, .. }
            | VarietyKind::LagrangianSchubertUnion { n, .. } => (n, 2 * n),
            VarietyKind::Isotropic { ell, n } => (ell, 2 * n),
        }
    }

    fn validate(&self) -> Result<()> {
        let (ell, m) = self.plucker_shape();
        if ell < 1 || ell > m {
            return Err(Error::InvalidArgument(format!("G({ell},{m}) needs 1 <= ell <= m")));
        }
        let check = |ts: &[IndexTuple]| -> Result<()> {
            if ts.is_empty() {
                return Err(Error::InvalidArgument(format!("{self:?} needs at least one tuple")));
            }
            for t in ts {
                if t.ell() != ell || t.m() != m {
                    return Err(Error::InvalidTuple(format!(
                        "{t:?} is not in I({ell},{m})"
                    )));
                }
            }
            Ok(())
        };
        match self {
            VarietyKind::Grassmann { .. } | VarietyKind::Lagrangian { .. } => Ok(()),
            VarietyKind::Isotropic { ell, n } if *ell > *n => Err(Error::InvalidArgument(format!(
                "isotropic subspaces of dimension {ell} need ell <= n = {n}"
            ))),
            VarietyKind::Isotropic { .. } => Ok(()),
            VarietyKind::Schubert { lambda, .. } | VarietyKind::LagrangianSchubert { lambda, .. } => {
                check(std::slice::from_ref(lambda))
            }
            VarietyKind::SchubertUnion { lambdas, .. }
            | VarietyKind::LagrangianSchubertUnion { lambdas, .. } => check(lambdas),
            VarietyKind::SectionELambda { family, .. } => check(family),
        }
    }

    pub fn is_symplectic(&self) -> bool {
        matches!(
            self,
            VarietyKind::Lagrangian { .. }
                | VarietyKind::Isotropic { .. }
                | VarietyKind::LagrangianSchubert { .. }
                | VarietyKind::LagrangianSchubertUnion { .. }
        )
    }
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyKind::Grassmann { ell, m } => write!(f, "grassmann:{ell},{m}"),
            VarietyKind::Schubert { ell, m, lambda } => write!(f, "schubert:{ell},{m}:{lambda}"),
            VarietyKind::SchubertUnion { ell, m, lambdas } => {
                write!(f, "union:{ell},{m}:{}", join_tuples(lambdas))
            }
            VarietyKind::SectionELambda { ell, m, family } => {
                write!(f, "elambda:{ell},{m}:{}", join_tuples(family))
            }
            VarietyKind::Lagrangian { n } => write!(f, "lagrangian:{n}"),
            VarietyKind::Isotropic { ell, n } => write!(f, "isotropic:{ell},{n}"),
            VarietyKind::LagrangianSchubert { n, lambda } => write!(f, "lag-schubert:{n}:{lambda}"),
            VarietyKind::LagrangianSchubertUnion { n, lambdas } => {
                write!(f, "lag-union:{n}:{}", join_tuples(lambdas))
            }
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// The standard symplectic form on `F_q^{2n}`: `<e_i, e_{2n+1-i}> = 1` for
/// `i <= n`, `-1` for `i > n`, zero otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
    gram: Matrix,
}

impl SymplecticForm {
    pub fn standard(n: usize, field: &Field) -> SymplecticForm {
        let dim = 2 * n;
        let mut gram = Matrix::zeros(field, dim, dim);
        for i in 1..=dim {
            let j = dim + 1 - i;
            let v = if i <= n { Felt::ONE } else { field.neg(Felt::ONE) };
            gram.set(i - 1, j - 1, v);
        }
        SymplecticForm { n, gram }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `<e_i, e_j>` for 1-based indices.
    pub fn pairing(&self, i: usize, j: usize) -> Felt {
        self.gram.get(i - 1, j - 1)
    }

    /// Whether `basis * gram * basis^T` vanishes.
    pub fn is_isotropic(&self, basis: &Matrix) -> Result<bool> {
        if basis.cols() != 2 * self.n {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} columns, form lives on {}",
                basis.cols(),
                2 * self.n
            )));
        }
        Ok(basis.mul(&self.gram)?.mul(&basis.transpose())?.is_zero())
    }
}

/// Matrix of the contraction `wedge^ell F^{2n} -> wedge^{ell-2} F^{2n}`.
///
/// Rows are indexed by `I(ell-2, 2n)` and columns by `I(ell, 2n)`, both in
/// lexicographic order. The column of `e_α` receives
/// `(-1)^{r+s-1} <e_{α_r}, e_{α_s}>` in row `α_rs` for each `r < s`.
pub fn contraction_matrix_of_degree(ell: usize, n: usize, field: &Field) -> Result<Matrix> {
    if ell < 2 || ell > 2 * n {
        return Err(Error::InvalidArgument(format!(
            "contraction of wedge^{ell} F^{} needs 2 <= ell <= 2n",
            2 * n
        )));
    }
    let form = SymplecticForm::standard(n, field);
    let cols = enumerate_index_tuples(ell, 2 * n)?;
    let mut out = Matrix::zeros(field, binomial(2 * n, ell - 2), cols.len());
    for (c, alpha) in cols.iter().enumerate() {
        let a = alpha.entries();
        for r in 0..ell {
            for s in r + 1..ell {
                let g = form.pairing(a[r], a[s]);
                if g.is_zero() {
                    continue;
                }
                let row = alpha.delete_pair(r + 1, s + 1)?.lex_rank();
                // 1-based positions: (-1)^{(r+1)+(s+1)-1}
                let v = if (r + s + 1) % 2 == 0 { g } else { field.neg(g) };
                let cur = out.get(row, c);
                out.set(row, c, field.add(cur, v));
            }
        }
    }
    Ok(out)
}

/// The contraction `f: wedge^n F^{2n} -> wedge^{n-2} F^{2n}`.
pub fn contraction_matrix(n: usize, field: &Field) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("contraction needs n >= 2, got {n}")));
    }
    contraction_matrix_of_degree(n, n, field)
}

/// Sign of the permutation that sorts `seq` (entries distinct).
fn sorting_sign(seq: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// The forms `Π_γ = Σ_i X_{(i, γ, 2n+1-i)}` for `γ ∈ I(n-2, 2n)`.
///
/// `X` indexed by an unsorted tuple is the alternating coordinate, so each
/// term lands on the sorted index with the sign of the sorting permutation;
/// terms whose index repeats an entry are dropped. In characteristic 2 every
/// coefficient is 1.
pub fn pi_forms(n: usize, field: &Field) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Π forms need n >= 2, got {n}")));
    }
    let m = 2 * n;
    let rows = enumerate_index_tuples(n - 2, m)?;
    let mut out = Matrix::zeros(field, rows.len(), binomial(m, n));
    for (r, gamma) in rows.iter().enumerate() {
        for i in 1..=n {
            let j = m + 1 - i;
            if gamma.contains(i) || gamma.contains(j) {
                continue;
            }
            let mut seq = vec![i];
            seq.extend_from_slice(gamma.entries());
            seq.push(j);
            let sign = sorting_sign(&seq);
            let col = IndexTuple::from_unordered(seq, m)?.lex_rank();
            let v = if sign { Felt::ONE } else { field.neg(Felt::ONE) };
            out.set(r, col, v);
        }
    }
    Ok(out)
}

/// Unit forms `x_β` for the listed coordinates.
fn coordinate_forms(field: &Field, ambient: usize, coords: &[usize]) -> Matrix {
    let mut out = Matrix::zeros(field, coords.len(), ambient);
    for (r, &c) in coords.iter().enumerate() {
        out.set(r, c, Felt::ONE);
    }
    out
}

/// Lex positions of the `β` with `β ≰ λ`.
fn not_below(lambda: &IndexTuple) -> Vec<usize> {
    enumerate_index_tuples(lambda.ell(), lambda.m())
        .expect("valid shape")
        .iter()
        .enumerate()
        .filter(|(_, b)| !b.bruhat_leq(lambda).expect("same shape"))
        .map(|(i, _)| i)
        .collect()
}

/// `dim(W ∩ span{e_1..e_j}) >= i` for every `i`, against the standard flag.
pub fn meets_standard_flag(basis: &Matrix, lambda: &IndexTuple) -> bool {
    let ell = basis.rows();
    let m = basis.cols();
    lambda.entries().iter().enumerate().all(|(i, &j)| {
        // W ∩ span{e_1..e_j} is the kernel of the projection onto e_{j+1}..e_m
        let tail: Vec<usize> = (j..m).collect();
        let meet = ell - basis.select_columns(&tail).rank();
        meet > i
    })
}

fn vanishes_on(point: &ProjPoint, coords: &[usize]) -> bool {
    coords.iter().all(|&c| point.coords()[c].is_zero())
}

/// Schubert membership computed twice, once from Plücker vanishing and once
/// from the flag conditions; the two must agree.
struct SchubertTest {
    lambda: IndexTuple,
    vanishing: Vec<usize>,
}

impl SchubertTest {
    fn new(lambda: &IndexTuple) -> SchubertTest {
        SchubertTest {
            lambda: lambda.clone(),
            vanishing: not_below(lambda),
        }
    }

    fn contains(&self, basis: &Matrix, point: &ProjPoint) -> Result<bool> {
        let by_plucker = vanishes_on(point, &self.vanishing);
        let by_flag = meets_standard_flag(basis, &self.lambda);
        if by_plucker != by_flag {
            return Err(Error::MembershipDisagreement(format!(
                "{:?} for λ = {}",
                point.coords(),
                self.lambda
            )));
        }
        Ok(by_plucker)
    }

    fn forms(&self, field: &Field, ambient: usize) -> Matrix {
        coordinate_forms(field, ambient, &self.vanishing)
    }
}

fn intersect_all(forms: Vec<Matrix>) -> Result<Matrix> {
    let mut it = forms.into_iter();
    let first = it.next().expect("at least one member");
    it.try_fold(first.row_space(), |acc, f| acc.intersect_row_spaces(&f))
}

fn lagrangian_forms(n: usize, field: &Field) -> Result<Matrix> {
    if n >= 2 {
        pi_forms(n, field)
    } else {
        Ok(Matrix::zeros(field, 0, binomial(2 * n, n)))
    }
}

/// Enumerates the rational points of `spec` in canonical Grassmannian order
/// and attaches its defining linear forms.
pub fn enumerate_variety(spec: &VarietySpec, budget: &Budget) -> Result<ProjSystem> {
    let field = &spec.field;
    let (ell, m) = spec.kind.plucker_shape();
    let ambient = binomial(m, ell);
    let form = spec.kind.is_symplectic().then(|| SymplecticForm::standard(m / 2, field));
    let isotropic = |basis: &Matrix| -> Result<bool> {
        form.as_ref().expect("symplectic kind").is_isotropic(basis)
    };

    let (forms, members): (Matrix, Box<dyn Fn(&Matrix, &ProjPoint) -> Result<bool>>) = match &spec.kind {
        VarietyKind::Grassmann { .. } => (Matrix::zeros(field, 0, ambient), Box::new(|_, _| Ok(true))),
        VarietyKind::Schubert { lambda, .. } => {
            let test = SchubertTest::new(lambda);
            (test.forms(field, ambient), Box::new(move |b, p| test.contains(b, p)))
        }
        VarietyKind::SchubertUnion { lambdas, .. } => {
            let tests: Vec<SchubertTest> = lambdas.iter().map(SchubertTest::new).collect();
            let forms = intersect_all(tests.iter().map(|t| t.forms(field, ambient)).collect())?;
            (forms, Box::new(move |b, p| any_member(&tests, b, p)))
        }
        VarietyKind::SectionELambda { family, .. } => {
            let coords: Vec<usize> = family.iter().map(IndexTuple::lex_rank).collect();
            let mut sorted = coords.clone();
            sorted.sort_unstable();
            (
                coordinate_forms(field, ambient, &sorted),
                Box::new(move |_, p| Ok(vanishes_on(p, &coords))),
            )
        }
        VarietyKind::Lagrangian { n } => (lagrangian_forms(*n, field)?, Box::new(|b, _| isotropic(b))),
        VarietyKind::Isotropic { ell, n } => {
            let forms = if *ell >= 2 {
                contraction_matrix_of_degree(*ell, *n, field)?
            } else {
                Matrix::zeros(field, 0, ambient)
            };
            (forms, Box::new(|b, _| isotropic(b)))
        }
        VarietyKind::LagrangianSchubert { n, lambda } => {
            let test = SchubertTest::new(lambda);
            let forms = lagrangian_forms(*n, field)?.stack(&test.forms(field, ambient))?;
            (
                forms,
                Box::new(move |b, p| Ok(isotropic(b)? && test.contains(b, p)?)),
            )
        }
        VarietyKind::LagrangianSchubertUnion { n, lambdas } => {
            let tests: Vec<SchubertTest> = lambdas.iter().map(SchubertTest::new).collect();
            let pi = lagrangian_forms(*n, field)?;
            let forms = intersect_all(
                tests
                    .iter()
                    .map(|t| pi.stack(&t.forms(field, ambient)))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            (
                forms,
                Box::new(move |b, p| Ok(isotropic(b)? && any_member(&tests, b, p)?)),
            )
        }
    };

    let mut points = Vec::new();
    for_each_point(ell, m, field, budget, |basis, point| {
        if members(basis, &point)? {
            points.push(point);
        }
        Ok(())
    })?;
    Ok(ProjSystem {
        field: field.clone(),
        ambient_dim: ambient,
        points,
        defining_forms: forms,
        plucker: Some((ell, m)),
    })
}

/// Evaluates every member test, so disagreements surface even after a hit.
fn any_member(tests: &[SchubertTest], basis: &Matrix, point: &ProjPoint) -> Result<bool> {
    let mut hit = false;
    for t in tests {
        hit |= t.contains(basis, point)?;
    }
    Ok(hit)
}

/// Linear hull of a point set: the forms vanishing on it and the dimension
/// of the subspace they cut out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearHull {
    pub dim: usize,
    pub forms: Matrix,
}

pub fn linear_hull(sys: &ProjSystem) -> Result<LinearHull> {
    if sys.is_empty() {
        return Err(Error::EmptySystem);
    }
    let forms = sys.point_matrix().left_kernel();
    Ok(LinearHull {
        dim: sys.ambient_dim - forms.rows(),
        forms,
    })
}

/// Whether every linear form vanishing on the points lies in the span of the
/// declared defining forms (and conversely).
pub fn verify_ffn(sys: &ProjSystem) -> Result<bool> {
    let hull = linear_hull(sys)?;
    hull.forms.row_space_equal(&sys.defining_forms)
}

/// Cells in the union of the Bruhat down-sets of the `λ_i`.
pub fn schubert_union_cells(lambdas: &[IndexTuple]) -> Result<BTreeSet<IndexTuple>> {
    let Some(first) = lambdas.first() else {
        return Err(Error::InvalidArgument("empty Schubert union".into()));
    };
    let mut cells = BTreeSet::new();
    for l in lambdas {
        if l.ell() != first.ell() || l.m() != first.m() {
            return Err(Error::InvalidTuple(format!("{l:?} and {first:?} differ in shape")));
        }
        cells.extend(bruhat_down_set(l));
    }
    Ok(cells)
}

/// `Σ q^{cell dim}` over the union of the Bruhat down-sets of the `λ_i`.
pub fn schubert_union_count(lambdas: &[IndexTuple], q: u64) -> Result<BigUint> {
    let q = BigUint::from(q);
    Ok(schubert_union_cells(lambdas)?
        .iter()
        .map(|b| q.pow(b.cell_dimension() as u32))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    fn t(e: &[usize], m: usize) -> IndexTuple {
        IndexTuple::new(e.to_vec(), m).unwrap()
    }

    fn count(kind: &str, q: u32) -> usize {
        let spec = VarietySpec::parse(kind, &gf(q)).unwrap();
        enumerate_variety(&spec, &Budget::default()).unwrap().len()
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "grassmann:2,4",
            "schubert:2,4:2,4",
            "union:2,4:1,4;2,3",
            "elambda:2,4:1,2;1,3",
            "lagrangian:2",
            "isotropic:2,3",
            "lag-schubert:2:2,4",
            "lag-union:2:1,4;2,3",
        ] {
            assert_eq!(VarietyKind::parse(s).unwrap().to_string(), s);
        }
        for bad in [
            "grassmann:2",
            "grassmann:5,4",
            "schubert:2,4",
            "schubert:2,4:1,5",
            "isotropic:3,2",
            "torus:1",
            "lagrangian:2:1",
            "union:2,4:1,2,3",
        ] {
            assert!(VarietyKind::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn gram_matrix_shape() {
        let f = gf(3);
        let w = SymplecticForm::standard(2, &f);
        assert_eq!(w.gram().values(), vec![0, 0, 0, 1, 0, 0, 1, 0, 0, 2, 0, 0, 2, 0, 0, 0]);
        assert_eq!(w.gram().rank(), 4);
        assert_eq!(w.gram().transpose().values(), {
            let g = w.gram();
            let mut neg = g.clone();
            for r in 0..4 {
                for c in 0..4 {
                    neg.set(r, c, f.neg(g.get(r, c)));
                }
            }
            neg.values()
        });
    }

    #[test]
    fn isotropy_examples() {
        let f = gf(3);
        let w = SymplecticForm::standard(2, &f);
        let lag = Matrix::from_rows(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        assert!(w.is_isotropic(&lag).unwrap());
        let hyp = Matrix::from_rows(&f, 4, &[vec![1, 0, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        assert!(!w.is_isotropic(&hyp).unwrap());
        let line = Matrix::from_rows(&f, 4, &[vec![1, 2, 1, 1]]).unwrap();
        assert!(w.is_isotropic(&line).unwrap());
        assert!(w.is_isotropic(&Matrix::identity(&f, 3)).is_err());
    }

    #[test]
    fn contraction_examples() {
        let f = gf(2);
        let c = contraction_matrix(2, &f).unwrap();
        // columns 12 13 14 23 24 34
        assert_eq!(c.values(), vec![0, 0, 1, 1, 0, 0]);
        let f3 = gf(3);
        let c3 = contraction_matrix(3, &f3).unwrap();
        assert_eq!((c3.rows(), c3.cols()), (6, 20));
        let col = |e: &[usize]| t(e, 6).lex_rank();
        assert!(c3.column(col(&[1, 2, 3])).iter().all(|x| x.is_zero()));
        // e_1 ∧ e_2 ∧ e_6 -> pair (1,6) at positions (1,3), leaving e_2
        let v = c3.column(col(&[1, 2, 6]));
        let row = t(&[2], 6).lex_rank();
        for (i, x) in v.iter().enumerate() {
            if i == row {
                assert_eq!(x.value(), 2); // (-1)^{1+3-1} = -1
            } else {
                assert!(x.is_zero());
            }
        }
        assert!(contraction_matrix(1, &f).is_err());
    }

    #[test]
    fn pi_form_examples() {
        let f = gf(2);
        assert_eq!(pi_forms(2, &f).unwrap().values(), vec![0, 0, 1, 1, 0, 0]);
        let p3 = pi_forms(3, &f).unwrap();
        assert_eq!(p3.rows(), 6);
        let row = p3.row(t(&[2], 6).lex_rank());
        let hot: Vec<usize> = (0..20).filter(|&c| !row[c].is_zero()).collect();
        assert_eq!(hot, vec![t(&[1, 2, 6], 6).lex_rank(), t(&[2, 3, 4], 6).lex_rank()]);
        // odd characteristic keeps the sorting sign: X126 - X234
        let p3 = pi_forms(3, &gf(3)).unwrap();
        let row = p3.row(t(&[2], 6).lex_rank());
        assert_eq!(row[t(&[1, 2, 6], 6).lex_rank()].value(), 1);
        assert_eq!(row[t(&[2, 3, 4], 6).lex_rank()].value(), 2);
        assert!(pi_forms(1, &f).is_err());
    }

    #[test]
    fn variety_counts() {
        assert_eq!(count("lagrangian:2", 2), 15);
        assert_eq!(count("schubert:2,4:2,4", 2), 19);
        assert_eq!(count("schubert:2,4:3,4", 3), 130);
        assert_eq!(count("schubert:2,4:1,2", 2), 1);
        assert_eq!(count("union:2,4:1,4;2,3", 2), 11);
        assert_eq!(count("elambda:2,4:1,2;1,3", 2), 11);
        assert_eq!(count("isotropic:1,2", 3), 40);
        assert_eq!(count("elambda:2,4:1,2;1,3;1,4;2,3;2,4;3,4", 2), 0);
    }

    #[test]
    fn hull_examples() {
        let f = gf(2);
        let b = Budget::default();
        let g = enumerate_variety(&VarietySpec::parse("grassmann:2,4", &f).unwrap(), &b).unwrap();
        let h = linear_hull(&g).unwrap();
        assert_eq!((h.dim, h.forms.rows()), (6, 0));
        let l = enumerate_variety(&VarietySpec::parse("lagrangian:2", &f).unwrap(), &b).unwrap();
        let h = linear_hull(&l).unwrap();
        assert_eq!(h.dim, 5);
        assert_eq!(h.forms, pi_forms(2, &f).unwrap());
        let one = ProjSystem {
            points: l.points[..1].to_vec(),
            ..l.clone()
        };
        assert_eq!(linear_hull(&one).unwrap().dim, 1);
        let none = ProjSystem {
            points: vec![],
            ..l
        };
        assert!(matches!(linear_hull(&none), Err(Error::EmptySystem)));
        assert!(matches!(verify_ffn(&none), Err(Error::EmptySystem)));
    }

    #[test]
    fn ffn_examples() {
        let f = gf(2);
        let b = Budget::default();
        for s in ["elambda:2,4:1,2;1,3", "lagrangian:2", "grassmann:2,4"] {
            let sys = enumerate_variety(&VarietySpec::parse(s, &f).unwrap(), &b).unwrap();
            assert!(verify_ffn(&sys).unwrap(), "{s}");
        }
    }

    #[test]
    fn union_counts() {
        let top = t(&[3, 4], 4);
        assert_eq!(schubert_union_count(&[top], 5).unwrap(), crate::indices::gaussian_binomial(4, 2, 5).unwrap());
        assert_eq!(schubert_union_count(&[t(&[1, 4], 4), t(&[2, 3], 4)], 2).unwrap(), BigUint::from(11u32));
        assert_eq!(schubert_union_count(&[t(&[2, 4], 4)], 2).unwrap(), BigUint::from(19u32));
        assert!(schubert_union_count(&[], 2).is_err());
        assert!(schubert_union_count(&[t(&[2, 4], 4), t(&[2], 4)], 2).is_err());
    }

    #[test]
    fn flag_test_on_coordinate_planes() {
        let f = gf(2);
        let w = Matrix::from_rows(&f, 4, &[vec![0, 1, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        assert!(meets_standard_flag(&w, &t(&[2, 4], 4)));
        assert!(!meets_standard_flag(&w, &t(&[1, 4], 4)));
        assert!(!meets_standard_flag(&w, &t(&[2, 3], 4)));
    }
}
