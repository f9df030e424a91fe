//! The generic lower-bound functions `f_1 … f_8` for unsaturated profiles,
//! the search for tuples where all of them fail, and the inequality audit.

mod audit;

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::certify::RecipeId;
use crate::graph::CaseProfile;
use crate::packing::feder_count;

pub use audit::{audit_inequalities, recipe_size_bound, t1_size_bound, AuditRanges, AuditReport, Chain, ChainReport, Rel, Violation, CHAINS};

type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{0} is not bounded by the generic search")]
    UnknownRecipe(RecipeId),
    #[error("profile {profile} violates {constraint}")]
    Constraint { profile: CaseProfile, constraint: &'static str },
}

/// How a clique term `p(K_n)` is bounded from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CliqueBound {
    /// `(C(n,2) − n/2 − 3/2)/3` for every `n`.
    Generic,
    /// The largest of the generic form, `(C(n,2) − 4)/3` for odd `n` and
    /// `(C(n,2) − n/2 − 1)/3` for `n ≠ 5`.
    Listed,
    /// The exact maximum `(C(n,2) − k)/3`.
    Exact,
}

/// How a side term `p(S, K)` is bounded from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SideBound {
    /// `(|K|−1)/2 · min{|S|,|K|}` only.
    First,
    /// Also `|K|/2 · min{|S|,|K|−1}` when `|K|` is even.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BoundVariant {
    pub clique: CliqueBound,
    pub side: SideBound,
    /// Round every term up to an integer before summing.
    pub ceil: bool,
}

impl BoundVariant {
    pub const DEFAULT: BoundVariant = BoundVariant { clique: CliqueBound::Exact, side: SideBound::Both, ceil: false };

    pub fn all() -> Vec<BoundVariant> {
        let mut out = Vec::new();
        for clique in [CliqueBound::Generic, CliqueBound::Listed, CliqueBound::Exact] {
            for side in [SideBound::First, SideBound::Both] {
                for ceil in [false, true] {
                    out.push(BoundVariant { clique, side, ceil });
                }
            }
        }
        out
    }
}

impl fmt::Display for BoundVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.clique {
            CliqueBound::Generic => "generic",
            CliqueBound::Listed => "listed",
            CliqueBound::Exact => "exact",
        };
        let s = match self.side {
            SideBound::First => "first",
            SideBound::Both => "both",
        };
        write!(f, "clique={c} side={s} ceil={}", self.ceil)
    }
}

/// The tuples of the search range where every `f_i ≤ −3` under the default bounds.
pub const EXPECTED_EXCEPTIONAL: [CaseProfile; 12] = [
    CaseProfile::new(1, 2, 0, 1),
    CaseProfile::new(2, 1, 1, 0),
    CaseProfile::new(2, 2, 1, 1),
    CaseProfile::new(2, 3, 1, 2),
    CaseProfile::new(2, 5, 1, 4),
    CaseProfile::new(3, 2, 2, 1),
    CaseProfile::new(3, 3, 2, 1),
    CaseProfile::new(3, 4, 2, 3),
    CaseProfile::new(3, 6, 2, 5),
    CaseProfile::new(4, 3, 3, 2),
    CaseProfile::new(5, 2, 4, 1),
    CaseProfile::new(6, 3, 5, 2),
];

fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn clique_term(n: usize, v: BoundVariant) -> Q {
    let ni = n as i64;
    let generic = (q(c2(ni)) - Q::new(ni, 2) - Q::new(3, 2)) / 3;
    let b = match v.clique {
        CliqueBound::Exact => q(feder_count(n).count as i64),
        CliqueBound::Generic => generic,
        CliqueBound::Listed if n <= 2 => generic,
        CliqueBound::Listed => {
            let mut b = generic;
            if n % 2 == 1 {
                b = b.max(q(c2(ni) - 4) / 3);
            }
            if n != 5 {
                b = b.max((q(c2(ni)) - Q::new(ni, 2) - 1) / 3);
            }
            b
        }
    };
    if v.ceil {
        b.ceil()
    } else {
        b
    }
}

fn side_term(s: i64, k: i64, v: BoundVariant) -> Q {
    if s <= 0 || k <= 0 {
        return q(0);
    }
    let mut b = Q::new(k - 1, 2) * s.min(k);
    if v.side == SideBound::Both && k % 2 == 0 {
        b = b.max(Q::new(k, 2) * s.min(k - 1));
    }
    if v.ceil {
        b.ceil()
    } else {
        b
    }
}

fn check_constraints(p: &CaseProfile) -> Result<(), SearchError> {
    let err = |constraint| Err(SearchError::Constraint { profile: *p, constraint });
    if p.x_l >= p.l {
        return err("x_l < l");
    }
    if p.x_m >= p.m {
        return err("x_m < m");
    }
    if p.l + p.x_m > p.m + p.x_l {
        return err("l + x_m <= m + x_l");
    }
    if p.l - p.x_l > p.x_m + p.x_l {
        return err("l - x_l <= x_m + x_l");
    }
    Ok(())
}

/// `6·|P|` bounded from below for one of the eight generic recipes.
pub fn recipe_lower_bound_with(recipe: RecipeId, p: &CaseProfile, v: BoundVariant) -> Result<i64, SearchError> {
    use RecipeId::*;
    check_constraints(p)?;
    let (l, m, xl, xm) = (p.l as i64, p.m as i64, p.x_l as i64, p.x_m as i64);
    let cl = |n: i64| clique_term(n as usize, v);
    let sd = |s: i64, k: i64| side_term(s, k, v);
    let halves = q(c2(m) + c2(l));
    let b = match recipe {
        P13 => cl(m + xl) + sd(xl + xm, l - xl) + halves,
        P14 => halves + sd((l - xl) + (m - xm), xl + xm),
        P15L => cl(l) + sd(xl, m) + halves,
        P15M => cl(m) + sd(xm, l) + halves,
        P16L => cl(2 * l) + sd(xl, m) + q(c2(m)),
        P16M => cl(2 * m) + sd(xm, l) + q(c2(l)),
        P17L => cl(2 * l) + sd(xl, m - 1) + sd(m - 1, m + 1),
        P17M => cl(2 * m) + sd(xm, l - 1) + sd(l - 1, l + 1),
        other => return Err(SearchError::UnknownRecipe(other)),
    };
    let scaled = b * 6;
    debug_assert!(scaled.is_integer());
    Ok(scaled.to_integer())
}

/// `6·|P|` bounded from below with exact clique counts and both side forms.
pub fn recipe_lower_bound(recipe: RecipeId, p: &CaseProfile) -> Result<i64, SearchError> {
    recipe_lower_bound_with(recipe, p, BoundVariant::DEFAULT)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseFunctionReport {
    pub profile: CaseProfile,
    /// `6|P| − 3|T2|` for `P13, P14, P15l, P15m, P16l, P16m, P17l, P17m`.
    pub f_values: [i64; 8],
    /// Indices (1-based) with `f_i > −3`.
    pub passing: Vec<usize>,
    pub exceptional: bool,
}

pub fn evaluate_case_functions_with(p: &CaseProfile, v: BoundVariant) -> Result<CaseFunctionReport, SearchError> {
    check_constraints(p)?;
    let t2 = 3 * crate::certify::t2_size(p) as i64;
    let mut f_values = [0; 8];
    for (f, &r) in f_values.iter_mut().zip(RecipeId::SEARCH.iter()) {
        *f = recipe_lower_bound_with(r, p, v)? - t2;
    }
    let passing: Vec<usize> = (0..8).filter(|&i| f_values[i] > -3).map(|i| i + 1).collect();
    let exceptional = passing.is_empty();
    Ok(CaseFunctionReport { profile: *p, f_values, passing, exceptional })
}

pub fn evaluate_case_functions(p: &CaseProfile) -> Result<CaseFunctionReport, SearchError> {
    evaluate_case_functions_with(p, BoundVariant::DEFAULT)
}

/// Every tuple with `1 ≤ ℓ, m ≤ limit` satisfying the search constraints, in
/// canonical order.
pub fn constrained_tuples(limit: usize) -> Vec<CaseProfile> {
    let mut out = Vec::new();
    for l in 1..=limit {
        for m in 1..=limit {
            for x_l in 0..l {
                for x_m in 0..m {
                    let p = CaseProfile::new(l, m, x_l, x_m);
                    if check_constraints(&p).is_ok() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

pub fn search_exceptional_with(limit: usize, v: BoundVariant) -> BTreeSet<CaseProfile> {
    constrained_tuples(limit)
        .into_par_iter()
        .filter_map(|p| {
            let r = evaluate_case_functions_with(&p, v).expect("tuples satisfy the constraints");
            r.exceptional.then_some(p)
        })
        .collect()
}

pub fn search_exceptional(limit: usize) -> BTreeSet<CaseProfile> {
    search_exceptional_with(limit, BoundVariant::DEFAULT)
}

/// A tuple on which a variant disagrees with the default bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub profile: CaseProfile,
    /// Exceptional under the variant but not under the default, or the reverse.
    pub exceptional_under_variant: bool,
    /// 1-based indices whose pass/fail status differs.
    pub f_indices: Vec<usize>,
    pub variant_f: [i64; 8],
    pub default_f: [i64; 8],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantOutcome {
    pub variant: BoundVariant,
    pub tuples: Vec<CaseProfile>,
    pub deviations: Vec<Deviation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub limit: usize,
    pub variant: BoundVariant,
    pub exceptional: Vec<CaseFunctionReport>,
    /// Default tuples missing from the expected list, then unexpected ones.
    pub missing: Vec<CaseProfile>,
    pub unexpected: Vec<CaseProfile>,
    pub variants: Vec<VariantOutcome>,
}

fn outcome(limit: usize, v: BoundVariant, default: &BTreeSet<CaseProfile>) -> VariantOutcome {
    let tuples = search_exceptional_with(limit, v);
    let deviations = tuples
        .symmetric_difference(default)
        .map(|p| {
            let a = evaluate_case_functions_with(p, v).expect("constrained");
            let b = evaluate_case_functions(p).expect("constrained");
            let f_indices =
                (0..8).filter(|&i| (a.f_values[i] > -3) != (b.f_values[i] > -3)).map(|i| i + 1).collect();
            Deviation {
                profile: *p,
                exceptional_under_variant: a.exceptional,
                f_indices,
                variant_f: a.f_values,
                default_f: b.f_values,
            }
        })
        .collect();
    VariantOutcome { variant: v, tuples: tuples.into_iter().collect(), deviations }
}

/// The default search plus the outcome of every bound variant.
pub fn search_report(limit: usize) -> SearchReport {
    let default = search_exceptional(limit);
    let exceptional = default.iter().map(|p| evaluate_case_functions(p).expect("constrained")).collect();
    let expected: BTreeSet<CaseProfile> =
        EXPECTED_EXCEPTIONAL.iter().copied().filter(|p| p.l <= limit && p.m <= limit).collect();
    let variants = BoundVariant::all().into_iter().map(|v| outcome(limit, v, &default)).collect();
    SearchReport {
        limit,
        variant: BoundVariant::DEFAULT,
        exceptional,
        missing: expected.difference(&default).copied().collect(),
        unexpected: default.difference(&expected).copied().collect(),
        variants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_search_finds_the_twelve() {
        let found = search_exceptional(10);
        assert_eq!(found, EXPECTED_EXCEPTIONAL.iter().copied().collect());
    }

    #[test]
    fn exceptional_set_is_symmetric() {
        let found = search_exceptional(10);
        // (3,3,2,1) swaps to (3,3,1,2), which breaks l + x_m <= m + x_l
        for p in &found {
            let q = p.swapped();
            assert_eq!(check_constraints(&q).is_ok(), found.contains(&q), "{p}");
        }
        assert!(found.contains(&CaseProfile::new(2, 3, 1, 2)) && found.contains(&CaseProfile::new(3, 2, 2, 1)));
    }

    #[test]
    fn small_limits() {
        assert!(search_exceptional(1).is_empty());
        assert_eq!(search_exceptional(2).len(), 3);
    }

    #[test]
    fn t2_term_and_named_examples() {
        let r = evaluate_case_functions(&CaseProfile::new(2, 3, 1, 2)).unwrap();
        assert!(r.exceptional && r.passing.is_empty());
        assert!(evaluate_case_functions(&CaseProfile::new(1, 2, 0, 1)).unwrap().exceptional);
        let r = evaluate_case_functions(&CaseProfile::new(4, 4, 2, 2)).unwrap();
        assert!(!r.exceptional);
        assert_eq!(r.passing.is_empty(), r.exceptional);
    }

    #[test]
    fn p13_specialises_to_clique_and_halves() {
        // x_l = x_m = 0 is outside the constraints, so use the smallest dense tuple
        let p = CaseProfile::new(2, 2, 1, 1);
        let expected = 6 * (feder_count(3).count + 1 + 1) as i64;
        assert_eq!(recipe_lower_bound(RecipeId::P13, &p).unwrap(), expected);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            recipe_lower_bound(RecipeId::P3, &CaseProfile::new(2, 2, 1, 1)),
            Err(SearchError::UnknownRecipe(RecipeId::P3))
        ));
        assert!(matches!(
            evaluate_case_functions(&CaseProfile::new(2, 2, 2, 1)),
            Err(SearchError::Constraint { .. })
        ));
    }

    #[test]
    fn only_exact_with_both_forms_matches() {
        let report = search_report(10);
        assert!(report.missing.is_empty() && report.unexpected.is_empty());
        for o in &report.variants {
            let exact_both = o.variant.clique == CliqueBound::Exact && o.variant.side == SideBound::Both;
            assert_eq!(o.deviations.is_empty(), exact_both, "{}", o.variant);
            assert!(o.deviations.iter().all(|d| d.exceptional_under_variant && !d.f_indices.is_empty()));
        }
    }
}
