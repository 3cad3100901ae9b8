//! Invariants of the enumerated varieties, checked against filters written
//! here on top of the plain Grassmannian enumeration.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use grasscode_core::bounds::{close_section_check_on, elambda_length_formula, isotropic_count};
use grasscode_core::code::build_code;
use grasscode_core::field::Felt;
use grasscode_core::grassmann::subspace_of_point;
use grasscode_core::indices::{binomial, enumerate_index_tuples, gaussian_binomial, is_close_family};
use grasscode_core::{
    enumerate_grassmann_points, enumerate_variety, plucker_embed, Budget, Field, IndexTuple, Matrix, ProjPoint,
    ProjSystem, VarietyKind, VarietySpec,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn field(q: u32) -> Field {
    Field::of_order(q).unwrap()
}

fn variety(kind: VarietyKind, q: u32) -> ProjSystem {
    enumerate_variety(&VarietySpec::new(kind, &field(q)).unwrap(), &Budget::default()).unwrap()
}

/// `G(ell, m)` over `F_q` together with a basis for each point, memoised.
fn grassmann(ell: usize, m: usize, q: u32) -> &'static [(ProjPoint, Matrix)] {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, u32), &'static [(ProjPoint, Matrix)]>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache.entry((ell, m, q)).or_insert_with(|| {
        let f = field(q);
        let sys = enumerate_grassmann_points(ell, m, &f, &Budget::default()).unwrap();
        let v: Vec<_> = sys
            .points
            .into_iter()
            .map(|p| {
                let b = subspace_of_point(&p, &f, ell, m).unwrap();
                (p, b)
            })
            .collect();
        Box::leak(v.into_boxed_slice())
    })
}

fn point_set(sys: &ProjSystem) -> BTreeSet<ProjPoint> {
    sys.points.iter().cloned().collect()
}

/// `ω(x, y) = Σ_{i ≤ n} x_i y_{2n+1-i} - x_{2n+1-i} y_i`.
fn omega(f: &Field, x: &[Felt], y: &[Felt]) -> Felt {
    let m = x.len();
    let mut s = f.elem(0).unwrap();
    for i in 0..m / 2 {
        let j = m - 1 - i;
        s = f.add(s, f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i])));
    }
    s
}

fn isotropic(f: &Field, basis: &Matrix) -> bool {
    (0..basis.rows()).all(|a| (a..basis.rows()).all(|b| omega(f, basis.row(a), basis.row(b)).is_zero()))
}

/// `dim(W ∩ span(e_1..e_j))` via `dim W + j - dim(W + span)`.
fn meet_flag(f: &Field, basis: &Matrix, j: usize) -> usize {
    let m = basis.cols();
    let mut rows: Vec<Vec<u32>> = (0..basis.rows()).map(|r| basis.row(r).iter().map(|x| x.value()).collect()).collect();
    for i in 0..j {
        let mut e = vec![0; m];
        e[i] = 1;
        rows.push(e);
    }
    let joined = Matrix::from_rows(f, m, &rows).unwrap().rank();
    basis.rows() + j - joined
}

fn in_schubert(f: &Field, basis: &Matrix, lambda: &[usize]) -> bool {
    lambda.iter().enumerate().all(|(i, &l)| meet_flag(f, basis, l) > i)
}

fn below(a: &IndexTuple, b: &IndexTuple) -> bool {
    a.entries().iter().zip(b.entries()).all(|(x, y)| x <= y)
}

fn schubert_oracle(lambda: &IndexTuple, q: u64) -> BigUint {
    enumerate_index_tuples(lambda.ell(), lambda.m())
        .unwrap()
        .iter()
        .filter(|b| below(b, lambda))
        .map(|b| {
            let e: usize = b.entries().iter().enumerate().map(|(i, &x)| x - 1 - i).sum();
            BigUint::from(q).pow(e as u32)
        })
        .sum()
}

fn tuple_strategy(shapes: &'static [(usize, usize)]) -> impl Strategy<Value = IndexTuple> {
    prop::sample::select(shapes).prop_flat_map(|(ell, m)| {
        prop::sample::select(enumerate_index_tuples(ell, m).unwrap())
    })
}

/// Close families come in two kinds: tuples sharing a common `(ell-1)`-set,
/// and `ell`-subsets of one `(ell+1)`-set.
fn close_family(ell: usize, m: usize) -> impl Strategy<Value = Vec<IndexTuple>> {
    let star = prop::sample::subsequence((1..=m).collect::<Vec<_>>(), ell - 1).prop_flat_map(move |core| {
        let rest: Vec<usize> = (1..=m).filter(|x| !core.contains(x)).collect();
        let most = rest.len().min(4);
        prop::sample::subsequence(rest, 1..=most).prop_map(move |extra| {
            extra
                .into_iter()
                .map(|x| {
                    let mut v = core.clone();
                    v.push(x);
                    IndexTuple::from_unordered(v, m).unwrap()
                })
                .collect::<Vec<_>>()
        })
    });
    let pencil = prop::sample::subsequence((1..=m).collect::<Vec<_>>(), ell + 1).prop_flat_map(move |top| {
        let subsets: Vec<IndexTuple> = (0..=ell)
            .map(|skip| {
                let v: Vec<usize> = top.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
                IndexTuple::new(v, m).unwrap()
            })
            .collect();
        let most = subsets.len().min(4);
        prop::sample::subsequence(subsets, 1..=most)
    });
    prop_oneof![star, pencil]
}

const SHAPES: &[(usize, usize)] = &[(2, 4), (2, 5), (3, 6), (1, 4)];
const LAG_SHAPES: &[(usize, usize)] = &[(2, 4), (3, 6)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_point_annihilates_its_forms(lambda in tuple_strategy(SHAPES), q in prop::sample::select(vec![2u32, 3])) {
        let (ell, m) = (lambda.ell(), lambda.m());
        let kinds = vec![
            VarietyKind::Schubert { ell, m, lambda: lambda.clone() },
            VarietyKind::SectionELambda { ell, m, family: vec![lambda.clone()] },
        ];
        for kind in kinds {
            let sys = variety(kind, q);
            let f = &sys.field;
            for p in &sys.points {
                for r in 0..sys.defining_forms.rows() {
                    let s = sys.defining_forms.row(r).iter().zip(p.coords())
                        .fold(f.elem(0).unwrap(), |s, (&a, &b)| f.add(s, f.mul(a, b)));
                    prop_assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn schubert_membership_matches_flag_filter(lambda in tuple_strategy(SHAPES), q in prop::sample::select(vec![2u32, 3])) {
        let (ell, m) = (lambda.ell(), lambda.m());
        let f = field(q);
        let sys = variety(VarietyKind::Schubert { ell, m, lambda: lambda.clone() }, q);
        let expected: BTreeSet<ProjPoint> = grassmann(ell, m, q)
            .iter()
            .filter(|(_, b)| in_schubert(&f, b, lambda.entries()))
            .map(|(p, _)| p.clone())
            .collect();
        prop_assert_eq!(point_set(&sys), expected);
        prop_assert_eq!(BigUint::from(sys.len()), schubert_oracle(&lambda, q as u64));
    }

    #[test]
    fn lagrangian_schubert_is_an_intersection(lambda in tuple_strategy(LAG_SHAPES), q in prop::sample::select(vec![2u32, 3])) {
        let n = lambda.ell();
        let lag = point_set(&variety(VarietyKind::Lagrangian { n }, q));
        let sch = point_set(&variety(VarietyKind::Schubert { ell: n, m: 2 * n, lambda: lambda.clone() }, q));
        let both = point_set(&variety(VarietyKind::LagrangianSchubert { n, lambda }, q));
        prop_assert_eq!(both, lag.intersection(&sch).cloned().collect::<BTreeSet<_>>());
    }

    #[test]
    fn elambda_dimension_and_points(
        (ell, m, family) in prop::sample::select(SHAPES).prop_flat_map(|(ell, m)| {
            let all = enumerate_index_tuples(ell, m).unwrap();
            let most = all.len() - 1;
            (Just(ell), Just(m), prop::sample::subsequence(all, 1..=most))
        }),
        q in prop::sample::select(vec![2u32, 3]),
    ) {
        let sys = variety(VarietyKind::SectionELambda { ell, m, family: family.clone() }, q);
        let ranks: Vec<usize> = family.iter().map(IndexTuple::lex_rank).collect();
        let expected: BTreeSet<ProjPoint> = grassmann(ell, m, q)
            .iter()
            .filter(|(p, _)| ranks.iter().all(|&r| p.coords()[r].is_zero()))
            .map(|(p, _)| p.clone())
            .collect();
        prop_assert_eq!(point_set(&sys), expected);
        // the coordinate planes outside the family are points of the section,
        // and they span the whole coordinate subspace
        prop_assert_eq!(build_code(&sys).unwrap().k(), binomial(m, ell) - family.len());
    }

    #[test]
    fn close_family_length_formula(
        (ell, m, family) in prop::sample::select(&[(2usize, 4usize), (2, 5), (3, 6)][..])
            .prop_flat_map(|(ell, m)| (Just(ell), Just(m), close_family(ell, m))),
        q in prop::sample::select(vec![2u32, 3]),
    ) {
        prop_assert!(is_close_family(&family).unwrap());
        let sys = variety(VarietyKind::SectionELambda { ell, m, family: family.clone() }, q);
        let f = elambda_length_formula(ell, m, q as u64, family.len()).unwrap().unwrap();
        prop_assert_eq!(BigUint::from(sys.len()), f);
    }

    #[test]
    fn close_section_bound(
        (n, family) in prop::sample::select(vec![2usize, 3]).prop_flat_map(|n| (Just(n), close_family(n, 2 * n))),
        q in prop::sample::select(vec![2u32, 3]),
    ) {
        let lag = variety(VarietyKind::Lagrangian { n }, q);
        let report = close_section_check_on(&lag, n, &family).unwrap();
        prop_assert!(report.holds, "{:?}", report);
        let ranks: Vec<usize> = family.iter().map(IndexTuple::lex_rank).collect();
        let count = lag.points.iter().filter(|p| ranks.iter().all(|&r| p.coords()[r].is_zero())).count();
        let q = q as u64;
        let cut: u64 = (0..family.len()).map(|i| q.pow((n * n - i) as u32)).sum();
        let bound = gaussian_binomial(2 * n, n, q).unwrap() - BigUint::from(cut);
        prop_assert!(BigUint::from(count) <= bound);
    }

    #[test]
    fn recovered_subspace_reembeds(lambda in tuple_strategy(SHAPES), pick in any::<prop::sample::Index>()) {
        let (ell, m) = (lambda.ell(), lambda.m());
        let q = 3;
        let sys = variety(VarietyKind::Schubert { ell, m, lambda }, q);
        let p = &sys.points[pick.index(sys.len())];
        let basis = subspace_of_point(p, &field(q), ell, m).unwrap();
        prop_assert_eq!(basis.rank(), ell);
        prop_assert_eq!(&plucker_embed(&basis).unwrap(), p);
    }
}

#[test]
fn lagrangian_matches_isotropy_filter() {
    for (n, q) in [(1, 2), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let f = field(q);
        let expected: BTreeSet<ProjPoint> = grassmann(n, 2 * n, q)
            .iter()
            .filter(|(_, b)| isotropic(&f, b))
            .map(|(p, _)| p.clone())
            .collect();
        let lag = point_set(&variety(VarietyKind::Lagrangian { n }, q));
        assert_eq!(lag, expected, "n={n} q={q}");
        let iso = point_set(&variety(VarietyKind::Isotropic { ell: n, n }, q));
        assert_eq!(iso, lag, "n={n} q={q}");
    }
}

#[test]
fn isotropic_counts() {
    for n in [2, 3] {
        for q in [2, 3] {
            let f = field(q);
            for ell in 1..=n {
                let filtered = grassmann(ell, 2 * n, q).iter().filter(|(_, b)| isotropic(&f, b)).count();
                let sys = variety(VarietyKind::Isotropic { ell, n }, q);
                assert_eq!(sys.len(), filtered, "ell={ell} n={n} q={q}");
                assert_eq!(BigUint::from(filtered), isotropic_count(ell, n, q as u64), "ell={ell} n={n} q={q}");
            }
        }
    }
}

#[test]
fn unions_are_unions() {
    let q = 2;
    let t = |v: &[usize]| IndexTuple::new(v.to_vec(), 5).unwrap();
    let lambdas = vec![t(&[2, 5]), t(&[3, 4]), t(&[1, 5])];
    let mut expected = BTreeSet::new();
    for l in &lambdas {
        expected.extend(point_set(&variety(VarietyKind::Schubert { ell: 2, m: 5, lambda: l.clone() }, q)));
    }
    let u = variety(VarietyKind::SchubertUnion { ell: 2, m: 5, lambdas }, q);
    assert_eq!(point_set(&u), expected);
}
