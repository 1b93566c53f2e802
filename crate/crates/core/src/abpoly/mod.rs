//! `(a,b)`-analogues: every tree-like tableau `T` is weighted by
//! `w(T) = a^top(T) b^left(T)` and statistics are summed with that weight.

pub mod poly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

pub use poly::{fraction_string, BivarPoly, RationalExpr};

use crate::enumerate::par_fold_tree_like;
use crate::error::{Error, Result};
use crate::tableau::{NocClass, TreeLikeTableau};

pub fn weight(t: &TreeLikeTableau) -> BivarPoly {
    BivarPoly::monomial(t.top() as u32, t.left() as u32, 1)
}

/// `(a+b)(a+b+1)...(a+b+n-2)`, the empty product for `n <= 1`.
pub fn t_poly(n: usize) -> BivarPoly {
    let base = BivarPoly::a() + BivarPoly::b();
    (0..n.saturating_sub(1)).fold(BivarPoly::one(), |acc, j| {
        &acc * &(&base + &BivarPoly::constant(j as i64))
    })
}

fn binom(n: usize, k: usize) -> i64 {
    crate::counting::binomial(n, k).expect("small binomial") as i64
}

fn check_from(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::OutOfRange(format!(
            "n must be at least {min}, got {n}"
        )));
    }
    Ok(())
}

/// Weighted counts keyed by `(top, left)`; turned into polynomials at the end.
#[derive(Debug, Clone, Default)]
struct Counts(BTreeMap<(u32, u32), u64>);

impl Counts {
    fn add(&mut self, key: (u32, u32), by: u64) {
        if by > 0 {
            *self.0.entry(key).or_insert(0) += by;
        }
    }

    fn merge(&mut self, other: Counts) {
        for (k, v) in other.0 {
            self.add(k, v);
        }
    }

    fn to_poly(&self) -> BivarPoly {
        let mut p = BivarPoly::zero();
        for (&(i, j), &c) in &self.0 {
            p.add_term(i, j, BigInt::from(c));
        }
        p
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    weight: Counts,
    occupied: Counts,
    noc: Counts,
    corners: Counts,
    classes: [Counts; 4],
    /// Indexed by number of rows.
    by_rows: BTreeMap<usize, Counts>,
}

impl Tally {
    fn visit(&mut self, t: &TreeLikeTableau) {
        let key = (t.top() as u32, t.left() as u32);
        let s = t.stats();
        self.weight.add(key, 1);
        self.occupied.add(key, s.occupied_corners as u64);
        self.noc.add(key, s.non_occupied_corners as u64);
        self.corners.add(key, s.corners as u64);
        for c in t.non_occupied_corners() {
            let class = t.noc_class(c).expect("non-occupied corner");
            self.classes[class_index(class)].add(key, 1);
        }
        self.by_rows
            .entry(t.path().num_rows())
            .or_default()
            .add(key, 1);
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.weight.merge(other.weight);
        self.occupied.merge(other.occupied);
        self.noc.merge(other.noc);
        self.corners.merge(other.corners);
        for (mine, theirs) in self.classes.iter_mut().zip(other.classes) {
            mine.merge(theirs);
        }
        for (k, v) in other.by_rows {
            self.by_rows.entry(k).or_default().merge(v);
        }
        self
    }
}

fn class_index(c: NocClass) -> usize {
    NocClass::ALL.iter().position(|x| *x == c).expect("listed")
}

/// All weighted sums over the tree-like tableaux of one size, from a single
/// enumeration pass.
#[derive(Debug, Clone, Serialize)]
pub struct WeightedSums {
    pub n: usize,
    /// `Σ w(T)`.
    pub weights: BivarPoly,
    pub occupied: BivarPoly,
    pub noc: BivarPoly,
    pub corners: BivarPoly,
    pub classes: BTreeMap<NocClass, BivarPoly>,
    /// Entry `k - 1`: weights of the tableaux with `k` rows.
    pub euler: Vec<BivarPoly>,
}

pub fn weighted_sums(n: usize) -> Result<WeightedSums> {
    let tally = par_fold_tree_like(n, Tally::default, Tally::visit, Tally::merge)?;
    Ok(WeightedSums {
        n,
        weights: tally.weight.to_poly(),
        occupied: tally.occupied.to_poly(),
        noc: tally.noc.to_poly(),
        corners: tally.corners.to_poly(),
        classes: NocClass::ALL
            .iter()
            .map(|&c| (c, tally.classes[class_index(c)].to_poly()))
            .collect(),
        euler: (1..=n)
            .map(|k| {
                tally
                    .by_rows
                    .get(&k)
                    .map(Counts::to_poly)
                    .unwrap_or_default()
            })
            .collect(),
    })
}

/// `((n-2)ab + C(n-2,2)(a+b) + C(n-2,3)) T_{n-2}(a,b)`.
pub fn conjecture_noc_ab(n: usize) -> Result<BivarPoly> {
    check_from(n, 3)?;
    let ab = BivarPoly::monomial(1, 1, (n - 2) as i64);
    let lin = (BivarPoly::a() + BivarPoly::b()).scale(&BigInt::from(binom(n - 2, 2)));
    let c = BivarPoly::constant(binom(n - 2, 3));
    Ok((ab + lin + c) * t_poly(n - 2))
}

/// Closed forms of the class sums. The `11` class has none.
pub fn class_closed_form(class: NocClass, n: usize) -> Result<Option<BivarPoly>> {
    check_from(n, 3)?;
    let t = t_poly(n - 2);
    let c2 = BigInt::from(binom(n - 2, 2));
    Ok(match class {
        NocClass::AB => Some(BivarPoly::monomial(1, 1, (n - 2) as i64) * t),
        NocClass::A1 => Some(BivarPoly::a().scale(&c2) * t),
        NocClass::OneB => Some(BivarPoly::b().scale(&c2) * t),
        NocClass::OneOne => None,
    })
}

/// `(a² + b² + nab + (n²-n-4)/2 (a+b) + (n+2)(n-2)(n-3)/6) T_{n-2}(a,b)`,
/// which equals the weighted corner sum if the conjecture holds at `n`.
pub fn corners_closed_form(n: usize) -> Result<BivarPoly> {
    check_from(n, 3)?;
    let n_ = n as i64;
    let lin = n_ * n_ - n_ - 4;
    let cst = (n_ + 2) * (n_ - 2) * (n_ - 3);
    assert!(lin % 2 == 0 && cst % 6 == 0);
    let p = BivarPoly::monomial(2, 0, 1)
        + BivarPoly::monomial(0, 2, 1)
        + BivarPoly::monomial(1, 1, n_)
        + (BivarPoly::a() + BivarPoly::b()).scale(&BigInt::from(lin / 2))
        + BivarPoly::constant(cst / 6);
    Ok(p * t_poly(n - 2))
}

/// Outcome of comparing an enumerated polynomial with a closed form.
#[derive(Debug, Clone, Serialize)]
pub struct PolyComparison {
    pub n: usize,
    pub expected: BivarPoly,
    pub actual: BivarPoly,
    pub matches: bool,
    /// `(degA, degB, expected coefficient, actual coefficient)` of the
    /// smallest differing term.
    pub first_difference: Option<(u32, u32, String, String)>,
}

impl PolyComparison {
    pub fn new(n: usize, expected: BivarPoly, actual: BivarPoly) -> PolyComparison {
        let first_difference = expected
            .first_difference(&actual)
            .map(|((i, j), e, a)| (i, j, e.to_string(), a.to_string()));
        PolyComparison {
            n,
            matches: first_difference.is_none(),
            expected,
            actual,
            first_difference,
        }
    }
}

/// Enumerates size `n` and compares the weighted non-occupied corner sum
/// with the conjectured closed form.
pub fn check_noc_conjecture(n: usize) -> Result<PolyComparison> {
    let expected = conjecture_noc_ab(n)?;
    let actual = weighted_sums(n)?.noc;
    Ok(PolyComparison::new(n, expected, actual))
}

/// Values `A(n, k)` of the `(a,b)`-Eulerian recurrence
/// `A(n+1,k) = (a-1+k) A(n,k) + (b+n+1-k) A(n,k-1)`, `A(1,1) = 1`.
#[derive(Debug, Clone)]
pub struct EulerTable {
    rows: Vec<Vec<BivarPoly>>,
}

impl EulerTable {
    pub fn new(max_n: usize) -> EulerTable {
        // rows[n][k] for 0 <= k <= n + 1, padded with zeros.
        let mut rows = vec![vec![BivarPoly::zero(); 2]];
        if max_n >= 1 {
            rows.push(vec![BivarPoly::zero(), BivarPoly::one(), BivarPoly::zero()]);
        }
        for n in 1..max_n {
            let prev = &rows[n];
            let mut next = vec![BivarPoly::zero(); n + 3];
            for (k, slot) in next.iter_mut().enumerate().take(n + 2).skip(1) {
                let f = BivarPoly::a() + BivarPoly::constant(k as i64 - 1);
                let g = BivarPoly::b() + BivarPoly::constant(n as i64 + 1 - k as i64);
                let mut v = &f * &prev[k];
                v += &(&g * &prev[k - 1]);
                *slot = v;
            }
            rows.push(next);
        }
        EulerTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Zero outside `1 <= k <= n <= max_n`.
    pub fn get(&self, n: usize, k: usize) -> BivarPoly {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// `Σ_k A(n, k)`.
    pub fn total(&self, n: usize) -> BivarPoly {
        (1..=n).fold(BivarPoly::zero(), |acc, k| acc + self.get(n, k))
    }

    /// `Σ_k k A(n, k)`.
    pub fn derivative_at_one(&self, n: usize) -> BivarPoly {
        (1..=n).fold(BivarPoly::zero(), |acc, k| {
            acc + self.get(n, k).scale(&BigInt::from(k))
        })
    }
}

/// `(a + bn + C(n,2) - 1) T_{n-1}(a,b)`.
pub fn euler_derivative_closed_form(n: usize) -> Result<BivarPoly> {
    check_from(n, 2)?;
    let p =
        BivarPoly::a() + BivarPoly::monomial(0, 1, n as i64) + BivarPoly::constant(binom(n, 2) - 1);
    Ok(p * t_poly(n - 1))
}

/// The expected number of jump locations in a state of size `n`, three ways.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectedJumps {
    pub n: usize,
    /// `Σ_{T ∈ T_{n+1}} w(T)(2c(T) - 1) / T_{n+1}(a,b)`, by enumeration.
    pub defining: RationalExpr,
    /// Closed form over `3(a+b+n-1)(a+b+n-2)`.
    pub corrected: RationalExpr,
    /// The same numerator over `(a+b+n-1)(a+b+n-2)`.
    pub printed: RationalExpr,
    pub corrected_matches: bool,
    pub printed_matches: bool,
    pub defining_at_one: String,
    pub printed_at_one: String,
}

fn jump_numerator(n: usize) -> BivarPoly {
    let n_ = n as i64;
    BivarPoly::monomial(2, 0, 3)
        + BivarPoly::monomial(0, 2, 3)
        + BivarPoly::monomial(1, 1, 6 * n_)
        + (BivarPoly::a() + BivarPoly::b()).scale(&BigInt::from(3 * (n_ * n_ - n_ - 1)))
        + BivarPoly::constant(n_ * (n_ - 1) * (n_ - 2))
}

fn jump_denominator(n: usize) -> BivarPoly {
    let base = BivarPoly::a() + BivarPoly::b();
    (&base + &BivarPoly::constant(n as i64 - 1)) * (&base + &BivarPoly::constant(n as i64 - 2))
}

pub fn expected_jumps(n: usize) -> Result<ExpectedJumps> {
    check_from(n, 1)?;
    let sums = weighted_sums(n + 1)?;
    let num = &sums.corners.scale(&BigInt::from(2)) - &sums.weights;
    let defining = RationalExpr::new(num, sums.weights);
    let corrected = RationalExpr::new(
        jump_numerator(n),
        jump_denominator(n).scale(&BigInt::from(3)),
    );
    let printed = RationalExpr::new(jump_numerator(n), jump_denominator(n));
    Ok(ExpectedJumps {
        n,
        corrected_matches: defining == corrected,
        printed_matches: defining == printed,
        defining_at_one: fraction_string(&defining.eval_at_one()),
        printed_at_one: fraction_string(&printed.eval_at_one()),
        defining,
        corrected,
        printed,
    })
}
