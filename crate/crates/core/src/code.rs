//! Linear codes attached to projective systems, and exhaustive computation
//! of their minimum distance, generalized Hamming weights and weight
//! enumerator.
//!
//! Every search is exact. Each one first checks its size against the
//! [`Budget`] and fails with `BudgetExceeded` instead of sampling.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::grassmann::ProjSystem;
use crate::indices::gaussian_binomial;
use crate::linalg::Matrix;
use crate::parallel::{default_workers, run_chunks};
use crate::sections::{enumerate_variety, VarietySpec};
use crate::subspaces::SubspaceEnumerator;

/// How the minimum distance is searched.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    /// Smallest weight of `m G` over projective messages `m`.
    Codewords,
    /// `n` minus the largest number of columns on a hyperplane `h . c = 0`.
    Hyperplanes,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "codewords" => Ok(Method::Codewords),
            "hyperplanes" => Ok(Method::Hyperplanes),
            other => Err(Error::parse(format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Codewords => "codewords",
            Method::Hyperplanes => "hyperplanes",
        })
    }
}

/// Budget plus worker count for one scan.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Scan {
    pub budget: Budget,
    pub workers: usize,
}

impl Default for Scan {
    fn default() -> Self {
        Scan {
            budget: Budget::default(),
            workers: default_workers(),
        }
    }
}

impl Scan {
    pub fn new(budget: Budget, workers: usize) -> Scan {
        Scan {
            budget,
            workers: workers.max(1),
        }
    }

    fn allow(&self, what: &'static str, needed: u128) -> Result<u64> {
        if needed > self.budget.max_scans as u128 {
            return Err(Error::budget(what, needed, self.budget.max_scans));
        }
        Ok(needed as u64)
    }
}

/// An `[n, k]_q` code given by a `k x n` generator in reduced row echelon
/// form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    generator: Matrix,
    rows: Vec<Vec<Felt>>,
    /// Variety the columns came from, in its command-line form.
    pub source: Option<String>,
}

impl LinearCode {
    /// Canonicalizes `generator` to the nonzero rows of its rref.
    pub fn from_generator(generator: &Matrix, source: Option<String>) -> Result<LinearCode> {
        let g = generator.row_space();
        if g.rows() == 0 {
            return Err(Error::InvalidArgument("generator matrix is zero".into()));
        }
        let rows = (0..g.rows()).map(|r| g.row(r).to_vec()).collect();
        Ok(LinearCode {
            field: g.field().clone(),
            generator: g,
            rows,
            source,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    fn q(&self) -> u128 {
        self.field.q() as u128
    }

    /// Field header, `# code n=<n> k=<k> source=<spec>`, then one
    /// space-separated row per line.
    pub fn to_text(&self) -> String {
        let mut out = self.field.header();
        out.push('\n');
        let _ = writeln!(
            out,
            "# code n={} k={} source={}",
            self.n(),
            self.k(),
            self.source.as_deref().unwrap_or("unknown")
        );
        for r in &self.rows {
            let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`LinearCode::to_text`].
    pub fn parse(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let field = Field::parse_header(lines.next().ok_or_else(|| Error::parse("empty code file"))?)?;
        let meta = lines
            .next()
            .and_then(|l| l.strip_prefix("# code "))
            .ok_or_else(|| Error::parse("missing '# code' line"))?;
        let (mut n, mut k, mut source) = (None, None, None);
        for part in meta.split_whitespace() {
            match part.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("k", v)) => k = v.parse::<usize>().ok(),
                Some(("source", v)) => source = Some(v.to_string()),
                _ => return Err(Error::parse(format!("bad code metadata {part:?}"))),
            }
        }
        let (Some(n), Some(k)) = (n, k) else {
            return Err(Error::parse("code metadata needs n and k"));
        };
        let mut values = Vec::with_capacity(n * k);
        let mut count = 0;
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::parse(format!("bad entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::parse(format!("row of length {} in a code of length {n}", row.len())));
            }
            values.extend(row);
            count += 1;
        }
        if count != k {
            return Err(Error::parse(format!("{count} rows for a code of dimension {k}")));
        }
        let g = Matrix::from_values(&field, k, n, &values)?;
        let rank = g.rank();
        if rank != k {
            return Err(Error::RankDeficient { rank, expected: k });
        }
        let source = source.filter(|s| s != "unknown");
        LinearCode::from_generator(&g, source)
    }

    fn column(&self, j: usize) -> Vec<Felt> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

/// The code spanned by the rows of the point matrix.
///
/// `k` is the rank of the point matrix and is cross-checked against the
/// number of independent linear relations among the points.
pub fn build_code(sys: &ProjSystem) -> Result<LinearCode> {
    if sys.is_empty() {
        return Err(Error::EmptySystem);
    }
    let pm = sys.point_matrix();
    let code = LinearCode::from_generator(&pm, None)?;
    let relations = pm.left_kernel().rows();
    if code.k() + relations != sys.ambient_dim {
        return Err(Error::RankDeficient {
            rank: code.k(),
            expected: sys.ambient_dim - relations,
        });
    }
    Ok(code)
}

/// Enumerates `spec` and builds its code, recording the provenance.
pub fn build_variety_code(spec: &VarietySpec, budget: &Budget) -> Result<LinearCode> {
    let sys = enumerate_variety(spec, budget)?;
    let mut code = build_code(&sys)?;
    code.source = Some(spec.to_string());
    Ok(code)
}

fn pow(q: u128, e: usize) -> u128 {
    q.checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// `(q^k - 1) / (q - 1)`.
fn projective_count(q: u128, k: usize) -> u128 {
    (0..k).fold(0u128, |acc, i| acc.saturating_add(pow(q, i)))
}

/// Projective message number `index`: leading coordinate 1 at position
/// `lead`, later digits read as a base-`q` number, most significant first.
fn projective_message(q: u64, k: usize, mut index: u64) -> (usize, Vec<u32>) {
    for lead in 0..k {
        let size = q.pow((k - 1 - lead) as u32);
        if index < size {
            let mut digits = vec![0u32; k];
            digits[lead] = 1;
            for pos in (lead + 1..k).rev() {
                digits[pos] = (index % q) as u32;
                index /= q;
            }
            return (lead, digits);
        }
        index -= size;
    }
    unreachable!("index beyond the projective message range")
}

fn affine_message(q: u64, k: usize, mut index: u64) -> Vec<u32> {
    let mut digits = vec![0u32; k];
    for pos in (0..k).rev() {
        digits[pos] = (index % q) as u32;
        index /= q;
    }
    digits
}

fn add_scaled(field: &Field, word: &mut [Felt], a: Felt, row: &[Felt]) {
    if a.is_zero() {
        return;
    }
    if a == Felt::ONE {
        for (w, &x) in word.iter_mut().zip(row) {
            *w = field.add(*w, x);
        }
    } else {
        for (w, &x) in word.iter_mut().zip(row) {
            *w = field.add(*w, field.mul(a, x));
        }
    }
}

/// Walks messages in odometer order while keeping `m G` up to date, so each
/// step costs O(n) instead of O(nk).
struct Walker<'a> {
    code: &'a LinearCode,
    digits: Vec<u32>,
    word: Vec<Felt>,
}

impl<'a> Walker<'a> {
    fn new(code: &'a LinearCode) -> Walker<'a> {
        Walker {
            code,
            digits: vec![0; code.k()],
            word: vec![Felt::ZERO; code.n()],
        }
    }

    fn load(&mut self, digits: Vec<u32>) {
        self.word.fill(Felt::ZERO);
        for (i, &d) in digits.iter().enumerate() {
            add_scaled(&self.code.field, &mut self.word, Felt::raw(d), &self.code.rows[i]);
        }
        self.digits = digits;
    }

    /// Advances the digits at positions `from..k`; false when they wrap.
    fn bump(&mut self, from: usize) -> bool {
        let f = &self.code.field;
        let q = f.q();
        for pos in (from..self.digits.len()).rev() {
            let old = self.digits[pos];
            let new = if old + 1 < q { old + 1 } else { 0 };
            let delta = f.sub(Felt::raw(new), Felt::raw(old));
            add_scaled(f, &mut self.word, delta, &self.code.rows[pos]);
            self.digits[pos] = new;
            if new != 0 {
                return true;
            }
        }
        false
    }
}

fn weight(word: &[Felt]) -> usize {
    word.iter().filter(|x| !x.is_zero()).count()
}

/// Visits `m G` for the projective messages numbered `range`.
fn walk_projective(code: &LinearCode, range: Range<u64>, mut visit: impl FnMut(&[Felt])) {
    if range.is_empty() {
        return;
    }
    let q = code.field.q() as u64;
    let k = code.k();
    let mut w = Walker::new(code);
    let (mut lead, digits) = projective_message(q, k, range.start);
    w.load(digits);
    let mut i = range.start;
    loop {
        visit(&w.word);
        i += 1;
        if i == range.end {
            break;
        }
        if !w.bump(lead + 1) {
            lead += 1;
            let mut unit = vec![0u32; k];
            unit[lead] = 1;
            w.load(unit);
        }
    }
}

/// Visits `m G` for the messages numbered `range` in the full space.
fn walk_affine(code: &LinearCode, range: Range<u64>, mut visit: impl FnMut(&[Felt])) {
    if range.is_empty() {
        return;
    }
    let mut w = Walker::new(code);
    w.load(affine_message(code.field.q() as u64, code.k(), range.start));
    for i in range.clone() {
        visit(&w.word);
        if i + 1 < range.end {
            w.bump(0);
        }
    }
}

/// Minimum distance by the chosen method.
pub fn min_distance(code: &LinearCode, method: Method, scan: &Scan) -> Result<u64> {
    match method {
        Method::Codewords => min_distance_codewords(code, scan),
        Method::Hyperplanes => min_distance_hyperplanes(code, scan),
    }
}

fn min_distance_codewords(code: &LinearCode, scan: &Scan) -> Result<u64> {
    let total = scan.allow("codeword scan", projective_count(code.q(), code.k()))?;
    let mins = run_chunks(total, scan.workers, |range| {
        let mut best = usize::MAX;
        walk_projective(code, range, |w| best = best.min(weight(w)));
        Ok(best)
    })?;
    Ok(mins.into_iter().min().expect("k >= 1") as u64)
}

fn min_distance_hyperplanes(code: &LinearCode, scan: &Scan) -> Result<u64> {
    let k = code.k();
    let q = code.field.q() as u64;
    let total = scan.allow("hyperplane scan", projective_count(code.q(), k))?;
    let f = &code.field;
    let columns: Vec<Vec<Felt>> = (0..code.n()).map(|j| code.column(j)).collect();
    let maxes = run_chunks(total, scan.workers, |range| {
        let mut best = 0usize;
        for idx in range {
            let (_, h) = projective_message(q, k, idx);
            let on = columns
                .iter()
                .filter(|c| {
                    let dot = c
                        .iter()
                        .zip(&h)
                        .fold(Felt::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, Felt::raw(y))));
                    dot.is_zero()
                })
                .count();
            best = best.max(on);
        }
        Ok(best)
    })?;
    Ok((code.n() - maxes.into_iter().max().expect("k >= 1")) as u64)
}

/// Number of codewords of each weight, zero included.
pub fn weight_enumerator(code: &LinearCode, scan: &Scan) -> Result<BTreeMap<u64, u64>> {
    let total = scan.allow("weight enumerator", pow(code.q(), code.k()))?;
    let n = code.n();
    let parts = run_chunks(total, scan.workers, |range| {
        let mut counts = vec![0u64; n + 1];
        walk_affine(code, range, |w| counts[weight(w)] += 1);
        Ok(counts)
    })?;
    let mut out = BTreeMap::new();
    for counts in parts {
        for (w, c) in counts.into_iter().enumerate() {
            if c > 0 {
                *out.entry(w as u64).or_insert(0) += c;
            }
        }
    }
    Ok(out)
}

fn check_r(code: &LinearCode, r: usize) -> Result<()> {
    if r < 1 || r > code.k() {
        return Err(Error::InvalidArgument(format!(
            "r = {r} outside 1..={} for this code",
            code.k()
        )));
    }
    Ok(())
}

fn biguint_to_u128(x: &BigUint) -> u128 {
    u128::try_from(x).unwrap_or(u128::MAX)
}

/// Largest codeword table (in codewords) kept in memory for subcode scans.
const SUPPORT_TABLE_LIMIT: u128 = 1 << 22;

/// Supports of codewords as bitmasks, looked up by message number or
/// computed on demand when the code is too large to tabulate.
struct Supports<'a> {
    code: &'a LinearCode,
    words: usize,
    table: Option<Vec<u64>>,
}

impl<'a> Supports<'a> {
    fn new(code: &'a LinearCode, scan: &Scan) -> Result<Supports<'a>> {
        let words = code.n().div_ceil(64);
        let size = pow(code.q(), code.k());
        let table = if size <= SUPPORT_TABLE_LIMIT {
            let parts = run_chunks(size as u64, scan.workers, |range| {
                let mut out = Vec::with_capacity((range.end - range.start) as usize * words);
                walk_affine(code, range, |w| {
                    let start = out.len();
                    out.resize(start + words, 0);
                    for (j, x) in w.iter().enumerate() {
                        if !x.is_zero() {
                            out[start + j / 64] |= 1 << (j % 64);
                        }
                    }
                });
                Ok(out)
            })?;
            Some(parts.concat())
        } else {
            None
        };
        Ok(Supports { code, words, table })
    }

    /// ORs the support of the message `m` into `acc`.
    fn or_into(&self, m: &[Felt], acc: &mut [u64]) {
        match &self.table {
            Some(t) => {
                let q = self.code.field.q() as usize;
                let idx = m.iter().fold(0usize, |a, x| a * q + x.value() as usize);
                for (a, b) in acc.iter_mut().zip(&t[idx * self.words..(idx + 1) * self.words]) {
                    *a |= b;
                }
            }
            None => {
                let mut word = vec![Felt::ZERO; self.code.n()];
                for (i, &d) in m.iter().enumerate() {
                    add_scaled(&self.code.field, &mut word, d, &self.code.rows[i]);
                }
                for (j, x) in word.iter().enumerate() {
                    if !x.is_zero() {
                        acc[j / 64] |= 1 << (j % 64);
                    }
                }
            }
        }
    }
}

/// `d_r`: smallest support of an `r`-dimensional subcode, scanning one rref
/// message matrix per subcode.
pub fn higher_weight(code: &LinearCode, r: usize, scan: &Scan) -> Result<u64> {
    check_r(code, r)?;
    let k = code.k();
    let count = biguint_to_u128(&gaussian_binomial(k, r, code.q() as u64)?);
    let total = scan.allow("subcode scan", count)?;
    let listing = SubspaceEnumerator::new(&code.field, k, r, total)?;
    let supports = Supports::new(code, scan)?;
    let mins = run_chunks(total, scan.workers, |range| {
        let mut buf = vec![Felt::ZERO; r * k];
        let mut acc = vec![0u64; supports.words];
        let mut best = u32::MAX;
        for idx in range {
            listing.fill(idx, &mut buf);
            acc.fill(0);
            for row in buf.chunks(k) {
                supports.or_into(row, &mut acc);
            }
            best = best.min(acc.iter().map(|w| w.count_ones()).sum());
        }
        Ok(best)
    })?;
    Ok(mins.into_iter().min().expect("nonempty listing") as u64)
}

/// `d_r = n - max |columns inside S|` over `(k - r)`-dimensional subspaces
/// `S` of the message dual, i.e. over codimension-`r` sections of the point
/// set.
pub fn higher_weight_by_sections(code: &LinearCode, r: usize, scan: &Scan) -> Result<u64> {
    check_r(code, r)?;
    let k = code.k();
    let t = k - r;
    let f = &code.field;
    let count = biguint_to_u128(&gaussian_binomial(k, t, code.q() as u64)?);
    let total = scan.allow("section scan", count)?;
    let listing = SubspaceEnumerator::new(f, k, t, total)?;
    let columns: Vec<Vec<Felt>> = (0..code.n()).map(|j| code.column(j)).collect();
    let maxes = run_chunks(total, scan.workers, |range| {
        let mut buf = vec![Felt::ZERO; t * k];
        let mut best = 0usize;
        let mut comb = vec![Felt::ZERO; k];
        for idx in range {
            let pivots = listing.fill(idx, &mut buf).to_vec();
            // c lies in S iff it equals the combination of S's rows with
            // coefficients read off at the pivots
            let inside = columns
                .iter()
                .filter(|c| {
                    comb.fill(Felt::ZERO);
                    for (i, &p) in pivots.iter().enumerate() {
                        add_scaled(f, &mut comb, c[p], &buf[i * k..(i + 1) * k]);
                    }
                    comb == **c
                })
                .count();
            best = best.max(inside);
        }
        Ok(best)
    })?;
    let best = maxes.into_iter().max().unwrap_or(0);
    Ok((code.n() - best) as u64)
}

fn normalize(f: &Field, v: &mut [Felt]) -> bool {
    let Some(lead) = v.iter().copied().find(|x| !x.is_zero()) else {
        return false;
    };
    if lead != Felt::ONE {
        let inv = f.inv(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    true
}

/// Next `t`-subset of `0..n` in lex order; false after the last one.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let t = c.len();
    let Some(i) = (0..t).rev().find(|&i| c[i] < n - t + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..t {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// `d_r` for `r` close to `k`: the best codimension-`r` section is the
/// span of at most `k - r` columns, so it suffices to scan `(k - r)`-subsets
/// of columns and count the columns inside each span.
pub fn higher_weight_by_spans(code: &LinearCode, r: usize, scan: &Scan) -> Result<u64> {
    check_r(code, r)?;
    let k = code.k();
    let n = code.n();
    let t = k - r;
    let raw: Vec<Vec<Felt>> = (0..n).map(|j| code.column(j)).collect();
    // zero columns lie in every span
    let zeros = raw.iter().filter(|c| c.iter().all(|x| x.is_zero())).count();
    if t == 0 {
        return Ok((n - zeros) as u64);
    }
    if t > n {
        return Err(Error::InvalidArgument(format!("{t} columns requested from {n}")));
    }
    let subsets = biguint_to_u128(&num_integer_binomial(n, t));
    scan.allow("column-span scan", subsets)?;
    let f = &code.field;
    let qq = code.q();
    let mut columns: HashMap<Vec<Felt>, usize> = HashMap::new();
    for c in &raw {
        let mut v = c.clone();
        if normalize(f, &mut v) {
            *columns.entry(v).or_insert(0) += 1;
        }
    }
    let span_points = projective_count(qq, t);
    let enumerate_span = span_points <= n as u128;
    let maxes = run_chunks(n as u64, scan.workers, |range| {
        let mut best = 0usize;
        for first in range {
            let first = first as usize;
            if first + t > n {
                break;
            }
            let mut comb: Vec<usize> = (first..first + t).collect();
            loop {
                let rows: Vec<Vec<Felt>> = comb.iter().map(|&j| raw[j].clone()).collect();
                let span = Matrix::from_row_vectors(f, k, &rows)?.row_space();
                // a dependent subset spans less, which never beats an
                // independent extension of it (the columns span F^k)
                if span.rows() == t {
                    let inside = if enumerate_span {
                        zeros + count_span_points(f, &span, &columns)
                    } else {
                        raw.iter().filter(|c| span.spans(c).expect("length k")).count()
                    };
                    best = best.max(inside);
                }
                if !next_combination(&mut comb, n) || comb[0] != first {
                    break;
                }
            }
        }
        Ok(best)
    })?;
    Ok((n - maxes.into_iter().max().unwrap_or(0)) as u64)
}

fn num_integer_binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of listed columns among the projective points of `span`.
fn count_span_points(f: &Field, span: &Matrix, columns: &HashMap<Vec<Felt>, usize>) -> usize {
    let dim = span.rows();
    let k = span.cols();
    let q = f.q() as u64;
    let mut total = 0;
    let mut v = vec![Felt::ZERO; k];
    for idx in 0..projective_count(q as u128, dim) as u64 {
        let (_, coeffs) = projective_message(q, dim, idx);
        v.fill(Felt::ZERO);
        for (i, &a) in coeffs.iter().enumerate() {
            add_scaled(f, &mut v, Felt::raw(a), span.row(i));
        }
        // rref rows make the first nonzero coordinate of v equal to 1
        total += columns.get(&v).copied().unwrap_or(0);
    }
    total
}

/// `d_r` by the subcode scan when it fits the budget, else by the
/// column-span scan.
pub fn weight_hierarchy_entry(code: &LinearCode, r: usize, scan: &Scan) -> Result<u64> {
    match higher_weight(code, r, scan) {
        Err(Error::BudgetExceeded { .. }) => higher_weight_by_spans(code, r, scan),
        other => other,
    }
}

/// Parameters reported for one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    /// `d_1, ..., d_{r_max}`.
    pub higher_weights: Vec<u64>,
    /// Absent when `q^k` exceeds the scan budget.
    pub enumerator: Option<BTreeMap<u64, u64>>,
}

pub fn weight_profile(code: &LinearCode, r_max: usize, method: Method, scan: &Scan) -> Result<WeightProfile> {
    if r_max > code.k() {
        return Err(Error::InvalidArgument(format!(
            "r_max = {r_max} exceeds k = {}",
            code.k()
        )));
    }
    let d = min_distance(code, method, scan)?;
    let mut higher_weights = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        higher_weights.push(if r == 1 { d } else { weight_hierarchy_entry(code, r, scan)? });
    }
    let enumerator = match weight_enumerator(code, scan) {
        Ok(e) => Some(e),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(WeightProfile {
        n: code.n() as u64,
        k: code.k() as u64,
        d,
        higher_weights,
        enumerator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sections::VarietySpec;

    fn code(spec: &str, q: u32) -> LinearCode {
        let f = Field::of_order(q).unwrap();
        build_variety_code(&VarietySpec::parse(spec, &f).unwrap(), &Budget::default()).unwrap()
    }

    fn scan() -> Scan {
        Scan::default()
    }

    #[test]
    fn parameters_of_small_codes() {
        let g = code("grassmann:2,4", 2);
        assert_eq!((g.n(), g.k()), (35, 6));
        let l = code("lagrangian:2", 2);
        assert_eq!((l.n(), l.k()), (15, 5));
        let s = code("schubert:2,4:1,2", 2);
        assert_eq!((s.n(), s.k()), (1, 1));
        for c in [&g, &l, &s] {
            assert_eq!(c.generator().rref().matrix, *c.generator());
        }
    }

    #[test]
    fn distances() {
        let g = code("grassmann:2,4", 2);
        let l = code("lagrangian:2", 2);
        let s = code("schubert:2,4:1,2", 2);
        for m in [Method::Codewords, Method::Hyperplanes] {
            assert_eq!(min_distance(&g, m, &scan()).unwrap(), 16);
            assert_eq!(min_distance(&l, m, &scan()).unwrap(), 6);
            assert_eq!(min_distance(&s, m, &scan()).unwrap(), 1);
        }
    }

    #[test]
    fn grassmann_hierarchy() {
        let g = code("grassmann:2,4", 2);
        // beyond r = 3: a line of G(2,4) carries q + 1 points, a single point 1
        let expect = [16, 24, 28, 32, 34, 35];
        for (i, &d) in expect.iter().enumerate() {
            let r = i + 1;
            assert_eq!(higher_weight(&g, r, &scan()).unwrap(), d, "r={r}");
            assert_eq!(higher_weight_by_sections(&g, r, &scan()).unwrap(), d, "r={r}");
            assert_eq!(higher_weight_by_spans(&g, r, &scan()).unwrap(), d, "r={r}");
        }
        assert!(higher_weight(&g, 0, &scan()).is_err());
        assert!(higher_weight(&g, 7, &scan()).is_err());
    }

    #[test]
    fn enumerators() {
        let s = code("schubert:2,4:1,2", 2);
        assert_eq!(weight_enumerator(&s, &scan()).unwrap(), BTreeMap::from([(0, 1), (1, 1)]));
        let g = code("grassmann:2,4", 2);
        let e = weight_enumerator(&g, &scan()).unwrap();
        assert_eq!(e.keys().nth(1), Some(&16));
        let l = code("lagrangian:2", 2);
        assert_eq!(weight_enumerator(&l, &scan()).unwrap().values().sum::<u64>(), 32);
    }

    #[test]
    fn budgets_are_errors() {
        let g = code("grassmann:2,4", 2);
        let tight = Scan::new(Budget { max_points: 10, max_scans: 62 }, 1);
        for m in [Method::Codewords, Method::Hyperplanes] {
            assert!(matches!(min_distance(&g, m, &tight), Err(Error::BudgetExceeded { .. })));
        }
        assert!(matches!(weight_enumerator(&g, &tight), Err(Error::BudgetExceeded { .. })));
        let ok = Scan::new(Budget { max_points: 10, max_scans: 63 }, 1);
        assert_eq!(min_distance(&g, Method::Codewords, &ok).unwrap(), 16);
        let p = weight_profile(&g, 1, Method::Codewords, &ok).unwrap();
        assert_eq!(p.enumerator, None);
    }

    #[test]
    fn text_round_trip() {
        let l = code("lagrangian:2", 3);
        let text = l.to_text();
        assert!(text.starts_with("# gf p=3 e=1 modulus=0,1\n# code n=40 k=5 source=lagrangian:2\n"));
        assert_eq!(LinearCode::parse(&text).unwrap(), l);
        assert!(LinearCode::parse("# gf p=2 e=1 modulus=0,1\n# code n=2 k=2\n1 1\n1 1\n").is_err());
        assert!(LinearCode::parse("# gf p=2 e=1 modulus=0,1\n# code n=2 k=1\n1 2\n").is_err());
        assert!(LinearCode::parse("# gf p=2 e=1 modulus=0,1\n1 1\n").is_err());
    }

    #[test]
    fn empty_system_is_rejected() {
        let f = Field::of_order(2).unwrap();
        let sys = ProjSystem {
            field: f.clone(),
            ambient_dim: 3,
            points: vec![],
            defining_forms: Matrix::zeros(&f, 0, 3),
            plucker: None,
        };
        assert!(matches!(build_code(&sys), Err(Error::EmptySystem)));
    }

    #[test]
    fn projective_messages_are_canonical() {
        let (q, k) = (3u64, 3usize);
        let all: Vec<Vec<u32>> = (0..projective_count(3, 3) as u64)
            .map(|i| projective_message(q, k, i).1)
            .collect();
        assert_eq!(all.len(), 13);
        assert_eq!(all[0], vec![1, 0, 0]);
        assert_eq!(all[12], vec![0, 0, 1]);
        let mut sorted = all.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 13);
        for m in &all {
            assert_eq!(m.iter().find(|&&d| d != 0), Some(&1));
        }
    }
}
