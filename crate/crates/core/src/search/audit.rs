//! Numerical audit of the displayed inequality chains of the case analysis.
//!
//! Each chain states lower bounds `E_1 ≥ E_2 ≥ …` on `2|P| − |T|` (or on
//! `6|P| − 3|T2|` for the unsaturated chains) and a final claim. The audit
//! evaluates every link over a parameter range in exact rationals. The
//! starting value `E_0` is the bound guaranteed by the primitives: exact
//! clique counts, the larger of the two side forms and the worst-case size of
//! the hitting set.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::certify::guided::Hitting;
use crate::certify::layout::{build_t1, build_t2, t2_size};
use crate::certify::{build_recipe, outer_edges_complete, RecipeId};
use crate::graph::{CaseProfile, CoChainGraph, Edge};
use crate::packing::{feder_count, side_bound};

type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rel {
    Ge,
    Gt,
    Eq,
}

impl Rel {
    fn holds(self, a: Q, b: Q) -> bool {
        match self {
            Rel::Ge => a >= b,
            Rel::Gt => a > b,
            Rel::Eq => a == b,
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::Ge => ">=",
            Rel::Gt => ">",
            Rel::Eq => "=",
        })
    }
}

/// Parameters as rationals: `l`, `m`, `x = x_ℓ`, `y = x_m`.
#[derive(Clone, Copy, Debug)]
pub struct Vars {
    pub l: Q,
    pub m: Q,
    pub x: Q,
    pub y: Q,
}

impl Vars {
    fn of(p: &CaseProfile) -> Self {
        let r = |n: usize| Q::from_integer(n as i64);
        Vars { l: r(p.l), m: r(p.m), x: r(p.x_l), y: r(p.x_m) }
    }
}

fn n(v: i64) -> Q {
    Q::from_integer(v)
}

fn fr(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

fn ch(v: Q) -> Q {
    v * (v - 1) / 2
}

/// A graph-level condition some chains need beyond the profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GraphCondition {
    Any,
    /// Fewer than `(x_m − m)(x_ℓ − ℓ)` edges between `X_ℓ \ a` and `X_m \ d`.
    OuterIncomplete,
    OuterComplete,
}

pub type Expr = fn(&Vars) -> Q;

pub struct Chain {
    pub id: &'static str,
    pub anchor: &'static str,
    pub recipe: RecipeId,
    pub hitting: Hitting,
    /// Subtracted from the worst-case hitting-set size when the graph condition holds.
    pub hitting_slack: i64,
    pub graph: GraphCondition,
    /// 1 for `2|P| − |T|`, 3 for `6|P| − 3|T|`.
    pub scale: i64,
    pub domain: fn(&CaseProfile) -> bool,
    pub steps: &'static [(Rel, Expr)],
    pub conclusion: Option<(Rel, i64, i64)>,
}

fn sat(p: &CaseProfile) -> bool {
    p.l >= 1 && p.m >= 1 && p.x_l >= p.l
}

fn unsat(p: &CaseProfile) -> bool {
    p.l >= 1 && p.m >= 1 && p.x_l < p.l && p.x_m < p.m && p.l + p.x_m <= p.m + p.x_l
}

fn sparse(p: &CaseProfile) -> bool {
    unsat(p) && p.x_m + 2 * p.x_l < p.l
}

fn dense(p: &CaseProfile) -> bool {
    unsat(p) && p.x_m + 2 * p.x_l >= p.l
}

fn base(p: &CaseProfile) -> bool {
    sat(p) && p.l >= 2 && p.l <= p.m
}

fn case1(p: &CaseProfile) -> bool {
    base(p) && p.x_l <= p.m
}

fn case21(p: &CaseProfile) -> bool {
    base(p) && p.x_l > p.m && p.x_m <= p.m + p.l
}

fn case22(p: &CaseProfile) -> bool {
    base(p) && p.x_l > p.m && p.x_m > p.m + p.l
}

fn p3_e1(v: &Vars) -> Q {
    (v.m - 1) * v.x.min(v.m) + (v.l - 1) * (v.y - v.m).min(v.l) - v.l * v.m - (v.x - v.l) * (v.y - v.m)
}

fn p3_e2(v: &Vars) -> Q {
    (v.x - v.l) * (n(2) * v.m - v.y) + (v.l - 1) * (v.y - v.m).min(v.l) - v.x
}

fn p7_e1(v: &Vars) -> Q {
    fr(2, 3) * (ch(v.l + v.m) - (v.l + v.m) / 2 - 1) - v.l * v.m
}

fn p7_e3(v: &Vars) -> Q {
    ((v.m - v.l) * (v.m - v.l) + (v.m - 2) * (v.l - 2) - 6) / 3
}

fn p13_e1(v: &Vars) -> Q {
    let s = v.m + v.x;
    s * (s - 2) - 3 + n(3) * (v.l - v.x - 1) * (v.y + v.x).min(v.l - v.x) - n(3) * v.m * v.x - n(3) * v.l * v.y
        + n(3) * v.x * v.y
}

fn sparse_e2(v: &Vars) -> Q {
    v.m * v.m - n(2) * v.m - v.m * v.x - 3 - (n(2) * v.x * v.x + n(5) * v.x + n(3) * v.y - n(3) * v.l * v.x)
}

fn sparse_e3(v: &Vars) -> Q {
    let h = v.m - (v.x + 2) / 2;
    h * h - (v.x + 2) * (v.x + 2) / 4 - 3 - (n(2) * v.x * v.x + n(5) * v.x + n(3) * v.y - n(3) * v.l * v.x)
}

fn sparse_e4(v: &Vars) -> Q {
    fr(49, 16) * v.y * v.y - (v.x + 2) * (v.x + 2) / 4 - 3
        - (n(2) * v.x * v.x + n(5) * v.x + n(3) * v.y - n(3) * v.l * v.x)
}

fn sparse_e5(v: &Vars) -> Q {
    fr(49, 16) * v.y * v.y - fr(9, 4) * v.x * v.x - n(6) * v.x - 4 - n(3) * v.y + n(3) * v.l * v.x
}

fn sparse_e6(v: &Vars) -> Q {
    fr(49, 16) * v.y * v.y - fr(9, 4) * v.x * v.x - n(6) * v.x - 4 - n(3) * v.y
        + n(3) * (n(2) * v.x + v.y + 1) * v.x
}

fn sparse_e7(v: &Vars) -> Q {
    (fr(49, 16) * v.y * v.y - n(3) * v.y) + (fr(15, 4) * v.x * v.x - n(3) * v.x) + n(3) * v.y * v.x - 4
}

const SPARSE_STEPS: &[(Rel, Expr)] = &[
    (Rel::Ge, p13_e1),
    (Rel::Eq, sparse_e2),
    (Rel::Eq, sparse_e3),
    (Rel::Ge, sparse_e4),
    (Rel::Eq, sparse_e5),
    (Rel::Ge, sparse_e6),
    (Rel::Eq, sparse_e7),
];

fn dense_e2(v: &Vars) -> Q {
    v.m * v.m - n(2) * v.m - 3 + n(3) * v.l * v.l - n(3) * v.l + n(4) * v.x * v.x + v.x * (n(1) - n(6) * v.l - v.m)
        - v.y * (n(3) * v.l - n(3) * v.x)
}

fn dense_e3(v: &Vars) -> Q {
    v.m * v.m - n(2) * v.m - 3 + n(3) * v.l * v.l - n(3) * v.l + n(4) * v.x * v.x + v.x * (n(1) - n(6) * v.l - v.m)
        - (v.m + v.x - v.l) * (n(3) * v.l - n(3) * v.x)
}

fn dense_e4(v: &Vars) -> Q {
    v.m * v.m - n(2) * v.m - 3 + n(6) * v.l * v.l - n(3) * v.l - n(3) * v.l * v.m + n(7) * v.x * v.x
        - v.x * (n(12) * v.l - n(2) * v.m - 1)
}

fn dense_e5(v: &Vars) -> Q {
    let b = n(12) * v.l - n(2) * v.m - 1;
    v.m * v.m - n(2) * v.m - 3 + n(6) * v.l * v.l - n(3) * v.l - n(3) * v.l * v.m - b * b / 28
}

fn dense_e6(v: &Vars) -> Q {
    (n(24) * v.l * v.l + n(24) * v.m * v.m - n(60) * v.m - n(60) * v.l - n(36) * v.l * v.m - 85) / 28
}

const DENSE_STEPS: &[(Rel, Expr)] = &[
    (Rel::Ge, p13_e1),
    (Rel::Eq, dense_e2),
    (Rel::Ge, dense_e3),
    (Rel::Eq, dense_e4),
    (Rel::Ge, dense_e5),
    (Rel::Eq, dense_e6),
];

fn p10_e1(v: &Vars) -> Q {
    n(2) * ch(v.l) + (v.l - 1) * (v.x - v.l).min(v.l) + n(2) * (v.y - v.l) - v.l * v.l - (v.x - v.l) * (v.y - v.l)
}

fn p10_e2(v: &Vars) -> Q {
    (v.l - 1) * (v.x - v.l) + n(2) * v.y - n(3) * v.l - (v.x - v.l) * (v.y - v.l)
}

fn p10_e3(v: &Vars) -> Q {
    (v.x - v.l - 1) * (n(2) * v.l - 1 - v.y) + v.y - v.l - 1
}

fn p11_e1(v: &Vars) -> Q {
    fr(2, 3) * (ch(n(2) * v.l + 1) - 4) + (v.l - 1) * (v.l - 2) - v.l * (v.l - 1) - v.l * v.l
}

fn p11_e2(v: &Vars) -> Q {
    (v.l * v.l - n(4) * v.l - 2) / 3
}

fn p12_e1(v: &Vars) -> Q {
    (v.x - 1) * v.m.min(v.x) + (v.y - v.m - 1) * v.l.min(v.y - v.m)
        - v.l * v.m
        - (v.x - v.l) * (v.y - v.m)
        - v.l * (v.l - 1)
}

fn p12_e2(v: &Vars) -> Q {
    (v.x - 1) * v.m + (v.y - v.m - 1) * v.l - v.l * v.m - (v.x - v.l) * (v.y - v.m) - v.l * (v.l - 1)
}

fn p12_e3(v: &Vars) -> Q {
    (v.y - v.m) * (n(2) * v.l - v.x) - v.l * v.l - v.l * v.m - v.m + v.m * v.x
}

fn p12_e4(v: &Vars) -> Q {
    (v.l + 1) * (n(2) * v.l - v.x) - v.l * v.l - v.l * v.m - v.m + v.m * v.x
}

fn p12_e5(v: &Vars) -> Q {
    v.l * v.l + n(2) * v.l - v.m - v.l * v.m + v.x * (v.m - v.l - 1)
}

fn p12_e6(v: &Vars) -> Q {
    v.l * v.l + n(2) * v.l - v.m - v.l * v.m + (v.m + 1) * (v.m - v.l - 1)
}

fn p12_e7(v: &Vars) -> Q {
    (v.m - v.l) * (v.m - v.l) - (v.m - v.l) - 1
}

fn p2b_e1(v: &Vars) -> Q {
    let n3 = n(3) * v.l + 1;
    fr(2, 3) * (ch(n3) - n3 / 2 - 1) - v.l * (v.l + 1) - n(2) * ch(v.l) - (v.y - v.m) * v.l
}

fn p2b_e2(v: &Vars) -> Q {
    v.l * v.l - 1 - v.l * (v.y - v.m)
}

fn p4b_e1(v: &Vars) -> Q {
    let k = n(3) * v.l + 2;
    fr(2, 3) * (ch(k) - k / 2 - 1) - n(2) * ch(v.m) - v.l * v.m - v.m * (v.x - v.l)
}

fn p4b_e2(v: &Vars) -> Q {
    (n(3) * v.l * v.l - 2) / 3 - (v.l + 1) * (v.x - v.l)
}

macro_rules! chain {
    ($id:expr, $anchor:expr, $recipe:ident, $hit:ident, $scale:expr, $domain:expr, $steps:expr, $concl:expr) => {
        Chain {
            id: $id,
            anchor: $anchor,
            recipe: RecipeId::$recipe,
            hitting: Hitting::$hit,
            hitting_slack: 0,
            graph: GraphCondition::Any,
            scale: $scale,
            domain: $domain,
            steps: $steps,
            conclusion: $concl,
        }
    };
}

pub static CHAINS: &[Chain] = &[
    chain!(
        "l1-clique",
        "1/3(m²−4m−2)",
        P1,
        T1,
        1,
        |p| sat(p) && p.l == 1 && p.x_l == 1 && p.m >= 4,
        &[
            (Rel::Ge, |v| fr(2, 3) * (ch(n(2) * v.m) - v.m - 1) - v.m * v.m),
            (Rel::Eq, |v| (v.m * v.m - n(4) * v.m - 2) / 3),
        ],
        Some((Rel::Ge, -2, 3))
    ),
    chain!(
        "l1-two-cliques",
        "1/3(m²−4m−2)",
        P2,
        T1,
        1,
        |p| sat(p) && p.l == 1 && p.x_l == 2 && p.m >= 4,
        &[
            (Rel::Ge, |v| {
                fr(2, 3) * (ch(v.m + 2) - (v.m + 2) / 2 - 1) + v.m * (v.m - 1) - v.m * v.m - v.m
            }),
            (Rel::Eq, |v| (v.m * v.m - n(4) * v.m - 2) / 3),
        ],
        Some((Rel::Ge, -2, 3))
    ),
    chain!("p3-general", "(m−1)·min{x_ℓ,m}", P3, T1, 1, base, &[(Rel::Ge, p3_e1)], None),
    chain!("case1-p3", "(x_ℓ−ℓ)·(2m−x_m)", P3, T1, 1, case1, &[(Rel::Ge, p3_e1), (Rel::Eq, p3_e2)], None),
    chain!(
        "case1-min-l",
        "(ℓ−2)·ℓ",
        P3,
        T1,
        1,
        |p| case1(p) && p.x_m >= p.m + p.l && p.x_m < 2 * p.m,
        &[
            (Rel::Ge, p3_e2),
            (Rel::Ge, |v| (v.x - v.l) + (v.l - 1) * v.l - v.x),
            (Rel::Eq, |v| (v.l - 2) * v.l),
        ],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case1-full-right",
        "(ℓ−1)·ℓ − x_ℓ",
        P3,
        T1,
        1,
        |p| case1(p) && p.x_m == 2 * p.m && p.l >= 3,
        &[(Rel::Ge, p3_e2), (Rel::Eq, |v| (v.l - 1) * v.l - v.x), (Rel::Ge, |v| (v.l - 3) * v.l)],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case1-full-right-l2",
        "(ℓ−1)·ℓ − x_ℓ",
        P3,
        T1,
        1,
        |p| case1(p) && p.x_m == 2 * p.m && p.l == 2 && p.x_l == 2,
        &[(Rel::Ge, p3_e2), (Rel::Eq, |v| (v.l - 1) * v.l - v.x)],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case1-p4-x3",
        "1/3(m²−2−m(3x_ℓ−7))",
        P4,
        T1,
        1,
        |p| case1(p) && p.l == 2 && p.x_m == 2 * p.m && p.m >= 3 && p.x_l == 3,
        &[
            (Rel::Ge, |v| fr(2, 3) * (ch(n(2) * v.m + 2) - v.m - 2) - v.m * v.m - v.m * (v.x - 1)),
            (Rel::Eq, |v| (v.m * v.m - 2 - v.m * (n(3) * v.x - 7)) / 3),
        ],
        Some((Rel::Ge, 1, 3))
    ),
    chain!(
        "case1-p4-x4",
        "1/3(m²−2−m(3x_ℓ−7))",
        P4,
        T1,
        1,
        |p| case1(p) && p.l == 2 && p.x_m == 2 * p.m && p.m >= 5 && p.x_l == 4,
        &[
            (Rel::Ge, |v| fr(2, 3) * (ch(n(2) * v.m + 2) - v.m - 2) - v.m * v.m - v.m * (v.x - 1)),
            (Rel::Eq, |v| (v.m * v.m - 2 - v.m * (n(3) * v.x - 7)) / 3),
        ],
        Some((Rel::Ge, -2, 3))
    ),
    chain!(
        "case1-p5prime",
        "|P5'| = 15, |T1| ≤ 30",
        P5Prime,
        T1,
        1,
        |p| *p == CaseProfile::new(2, 4, 4, 8),
        &[],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case1-min-outer",
        "m − x_ℓ",
        P3,
        T1,
        1,
        |p| case1(p) && p.x_m < p.m + p.l && p.x_l > p.l,
        &[
            (Rel::Ge, p3_e2),
            (Rel::Ge, |v| n(2) * v.m - v.y + (v.y - v.m) - v.x),
            (Rel::Eq, |v| v.m - v.x),
        ],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case1-p6",
        "|P6| = 7, |T1| ≤ 14",
        P6,
        T1,
        1,
        |p| case1(p) && p.l == 2 && p.m == 3 && p.x_l == 2 && p.x_m < 5,
        &[],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case1-p7",
        "(m−ℓ)² + (m−2)(ℓ−2) − 6",
        P7,
        T1,
        1,
        |p| case1(p) && p.x_l == p.l && p.x_m < p.m + p.l && p.l + p.m != 5,
        &[
            (Rel::Ge, p7_e1),
            (Rel::Eq, |v| {
                (v.l * v.l + v.m * v.m - v.l * v.m - n(2) * (v.l + v.m) - 2) / 3
            }),
            (Rel::Eq, p7_e3),
        ],
        None
    ),
    chain!(
        "case1-p7-far",
        "(m−ℓ)² + (m−2)(ℓ−2) − 6",
        P7,
        T1,
        1,
        |p| case1(p) && p.x_l == p.l && p.x_m < p.m + p.l && p.m >= p.l + 2,
        &[(Rel::Ge, p7_e1), (Rel::Eq, p7_e3)],
        Some((Rel::Ge, -2, 3))
    ),
    chain!(
        "case1-p7-balanced",
        "(m−ℓ)² + (m−2)(ℓ−2) − 6",
        P7,
        T1,
        1,
        |p| case1(p) && p.x_l == p.l && p.x_m < p.m + p.l && p.m == p.l && p.l >= 4,
        &[(Rel::Ge, p7_e1), (Rel::Eq, p7_e3)],
        Some((Rel::Ge, -2, 3))
    ),
    chain!(
        "case1-p7-near",
        "1/3(ℓ²−ℓ−8)",
        P7,
        T1,
        1,
        |p| case1(p) && p.x_l == p.l && p.x_m < p.m + p.l && p.m == p.l + 1 && p.l >= 3,
        &[
            (Rel::Ge, |v| fr(2, 3) * (ch(n(2) * v.l + 1) - 4) - v.l * (v.l + 1)),
            (Rel::Eq, |v| (v.l * v.l - v.l - 8) / 3),
        ],
        Some((Rel::Ge, -2, 3))
    ),
    Chain {
        id: "case1-p7-c3d4",
        anchor: "|P7| = 10, |T1 − c3d4| ≤ 20",
        recipe: RecipeId::P7,
        hitting: Hitting::T1WithoutC3D4,
        hitting_slack: 1,
        graph: GraphCondition::Any,
        scale: 1,
        domain: |p| *p == CaseProfile::new(3, 3, 3, 3),
        steps: &[],
        conclusion: Some((Rel::Ge, 0, 1)),
    },
    chain!(
        "case1-p8",
        "|P8| ≥ 11, |T1| ≤ 21",
        P8,
        T1,
        1,
        |p| case1(p) && p.l == 3 && p.m == 3 && p.x_l == 3 && p.x_m >= 4 && p.x_m < 6,
        &[],
        Some((Rel::Ge, 1, 1))
    ),
    chain!(
        "case2.1-p3",
        "m·(m−ℓ−1)",
        P3,
        T1,
        1,
        case21,
        &[
            (Rel::Ge, |v| {
                (v.m - 1) * v.m + (v.l - 1) * (v.y - v.m) - v.l * v.m - (v.x - v.l) * (v.y - v.m)
            }),
            (Rel::Eq, |v| v.m * (v.m - v.l - 1) + (v.y - v.m) * (n(2) * v.l - 1 - v.x)),
        ],
        None
    ),
    chain!(
        "case2.1-p3-far",
        "m·(m−ℓ−1)",
        P3,
        T1,
        1,
        |p| case21(p) && p.m >= p.l + 2,
        &[
            (Rel::Ge, |v| v.m * (v.m - v.l - 1) + (v.y - v.m) * (n(2) * v.l - 1 - v.x)),
            (Rel::Ge, |v| v.m + (v.y - v.m) * (n(2) * v.l - 1 - v.x)),
            (Rel::Ge, |v| v.m + v.m - v.y),
        ],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case2.1-p3-near",
        "m·(m−ℓ−1)",
        P3,
        T1,
        1,
        |p| case21(p) && p.m == p.l + 1 && p.x_l < 2 * p.l,
        &[(Rel::Ge, |v| (v.y - v.m) * (n(2) * v.l - 1 - v.x))],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case2.1-p2",
        "ℓ² − 1 − ℓ·(x_m−m)",
        P2,
        T1,
        1,
        |p| case21(p) && p.m == p.l + 1 && p.x_l == 2 * p.l && p.x_m < p.m + p.l,
        &[(Rel::Ge, p2b_e1), (Rel::Eq, p2b_e2)],
        Some((Rel::Ge, 0, 1))
    ),
    Chain {
        id: "case2.1-p2-sparse-outer",
        anchor: "ℓ² − 1 − ℓ·(x_m−m)",
        recipe: RecipeId::P2,
        hitting: Hitting::T1,
        hitting_slack: 1,
        graph: GraphCondition::OuterIncomplete,
        scale: 1,
        domain: |p| case21(p) && p.m == p.l + 1 && p.x_l == 2 * p.l && p.x_m == p.m + p.l,
        steps: &[(Rel::Ge, |v| p2b_e2(v) + 1)],
        conclusion: Some((Rel::Ge, 0, 1)),
    },
    Chain {
        id: "case2.1-p9",
        anchor: "1/3(4ℓ²+ℓ−8)",
        recipe: RecipeId::P9,
        hitting: Hitting::T1,
        hitting_slack: 0,
        graph: GraphCondition::OuterComplete,
        scale: 1,
        domain: |p| case21(p) && p.m == p.l + 1 && p.x_l == 2 * p.l && p.x_m == p.m + p.l,
        steps: &[
            (Rel::Ge, |v| fr(2, 3) * (ch(n(4) * v.l + 1) - 4) - n(4) * v.l * v.l - v.l),
            (Rel::Eq, |v| (n(4) * v.l * v.l + v.l - 8) / 3),
        ],
        conclusion: Some((Rel::Ge, 10, 3)),
    },
    chain!(
        "case2.1-p10prime",
        "(x_ℓ−ℓ−1)·(2ℓ−1−x_m)",
        P10Prime,
        T1,
        1,
        |p| case21(p) && p.m == p.l && p.l % 2 == 1,
        &[(Rel::Ge, p10_e1), (Rel::Eq, p10_e2), (Rel::Eq, p10_e3)],
        None
    ),
    chain!(
        "case2.1-p10prime-wide",
        "(x_ℓ−ℓ−1)·(2ℓ−1−x_m)",
        P10Prime,
        T1,
        1,
        |p| case21(p) && p.m == p.l && p.l % 2 == 1 && p.x_l > p.l + 1,
        &[(Rel::Ge, p10_e3), (Rel::Ge, |v| v.l - 2)],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case2.1-p10prime-narrow",
        "(x_ℓ−ℓ−1)·(2ℓ−1−x_m)",
        P10Prime,
        T1,
        1,
        |p| case21(p) && p.m == p.l && p.l % 2 == 1 && p.x_l == p.l + 1 && p.x_m > p.l,
        &[(Rel::Ge, p10_e3), (Rel::Eq, |v| v.y - v.l - 1)],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case2.1-p11",
        "1/3(ℓ²−4ℓ−2)",
        P11,
        T1,
        1,
        |p| case21(p) && p.m == p.l && p.l % 2 == 1 && p.l >= 5 && p.x_l == p.l + 1 && p.x_m == p.l,
        &[(Rel::Ge, p11_e1), (Rel::Eq, p11_e2)],
        Some((Rel::Ge, 1, 1))
    ),
    chain!(
        "case2.1-p11-l3",
        "1/3(ℓ²−4ℓ−2)",
        P11,
        T1,
        1,
        |p| *p == CaseProfile::new(3, 3, 4, 3),
        &[(Rel::Ge, |v| fr(2, 3) * ch(n(7)) + (v.l - 1) * (v.l - 2) - v.l * (v.l - 1) - v.l * v.l)],
        Some((Rel::Ge, 1, 1))
    ),
    chain!(
        "case2.2-p12",
        "(m−ℓ)² − (m−ℓ) − 1",
        P12,
        T1,
        1,
        |p| case22(p) && p.m >= p.l + 1,
        &[
            (Rel::Ge, p12_e1),
            (Rel::Eq, p12_e2),
            (Rel::Eq, p12_e3),
            (Rel::Ge, p12_e4),
            (Rel::Eq, p12_e5),
            (Rel::Ge, p12_e6),
            (Rel::Eq, p12_e7),
        ],
        None
    ),
    chain!(
        "case2.2-p12-far",
        "(m−ℓ)² − (m−ℓ) − 1",
        P12,
        T1,
        1,
        |p| case22(p) && p.m >= p.l + 2,
        &[(Rel::Ge, p12_e1), (Rel::Ge, p12_e7)],
        Some((Rel::Ge, 1, 1))
    ),
    chain!(
        "case2.2-p12-full",
        "ℓ",
        P12,
        T1,
        1,
        |p| case22(p) && p.m == p.l + 1 && p.x_l == 2 * p.l && p.x_m == 2 * p.m,
        &[
            (Rel::Ge, |v| {
                v.x * v.m.min(v.x - 1) + (v.y - v.m - 1) * v.l.min(v.y - v.m)
                    - v.l * v.m
                    - (v.x - v.l) * (v.y - v.m)
                    - v.l * (v.l - 1)
            }),
            (Rel::Eq, |v| v.l),
        ],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "case2.2-p4",
        "1/3(3ℓ²−2) − (ℓ+1)(x_ℓ−ℓ)",
        P4,
        T1,
        1,
        |p| case22(p) && p.m == p.l + 1 && p.x_l < 2 * p.l,
        &[
            (Rel::Ge, p4b_e1),
            (Rel::Eq, p4b_e2),
            (Rel::Ge, |v| (n(3) * v.l * v.l - 2) / 3 - (v.l + 1) * (v.l - 1)),
            (Rel::Eq, |_| fr(1, 3)),
        ],
        Some((Rel::Gt, -1, 1))
    ),
    chain!(
        "unsat-p13",
        "6|P13| − 3|T2| expanded",
        P13,
        T2,
        3,
        unsat,
        &[(Rel::Ge, p13_e1)],
        None
    ),
    chain!(
        "sparse-p13",
        "(49x_m²/16 − 3x_m) + (15x_ℓ²/4 − 3x_ℓ) + 3x_mx_ℓ − 4",
        P13,
        T2,
        3,
        |p| sparse(p) && p.x_m >= 2,
        SPARSE_STEPS,
        Some((Rel::Ge, 9, 4))
    ),
    chain!(
        "sparse-p13-y1",
        "(49x_m²/16 − 3x_m) + (15x_ℓ²/4 − 3x_ℓ) + 3x_mx_ℓ − 4",
        P13,
        T2,
        3,
        |p| sparse(p) && p.x_m == 1 && p.x_l >= 1,
        SPARSE_STEPS,
        Some((Rel::Gt, -3, 1))
    ),
    chain!(
        "sparse-p13-y0",
        "(49x_m²/16 − 3x_m) + (15x_ℓ²/4 − 3x_ℓ) + 3x_mx_ℓ − 4",
        P13,
        T2,
        3,
        |p| sparse(p) && p.x_m == 0 && p.x_l >= 2,
        SPARSE_STEPS,
        Some((Rel::Ge, 5, 1))
    ),
    chain!(
        "sparse-p13-y1-x0",
        "m² − 2m − 6",
        P13,
        T2,
        3,
        |p| sparse(p) && p.x_m == 1 && p.x_l == 0 && p.m >= 4,
        &[(Rel::Ge, p13_e1), (Rel::Eq, sparse_e2), (Rel::Eq, |v| v.m * v.m - n(2) * v.m - 6)],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "sparse-p13-small-a",
        "2|P13| − |T2| ≥ 2",
        P13,
        T2,
        3,
        |p| *p == CaseProfile::new(2, 3, 0, 1),
        &[],
        Some((Rel::Ge, 6, 1))
    ),
    chain!(
        "sparse-p13-y0-x1",
        "m² − 3m + 3ℓ − 10",
        P13,
        T2,
        3,
        |p| sparse(p) && p.x_m == 0 && p.x_l == 1 && p.l >= 4,
        &[
            (Rel::Ge, p13_e1),
            (Rel::Eq, sparse_e2),
            (Rel::Eq, |v| v.m * v.m - n(3) * v.m + n(3) * v.l - 10),
            (Rel::Ge, |v| (v.m - 2) * (v.m - 1)),
        ],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "sparse-p13-y0-x1-l3",
        "m² − 3m − 1",
        P13,
        T2,
        3,
        |p| sparse(p) && p.x_m == 0 && p.x_l == 1 && p.l == 3 && p.m >= 3,
        &[(Rel::Ge, p13_e1), (Rel::Eq, sparse_e2), (Rel::Eq, |v| v.m * v.m - n(3) * v.m - 1)],
        Some((Rel::Gt, -3, 1))
    ),
    chain!(
        "sparse-p13-small-b",
        "2|P13| − |T2| ≥ 2",
        P13,
        T2,
        3,
        |p| *p == CaseProfile::new(3, 2, 1, 0),
        &[],
        Some((Rel::Ge, 6, 1))
    ),
    chain!(
        "sparse-p13-empty",
        "m² − 2m − 3",
        P13,
        T2,
        3,
        |p| sparse(p) && p.x_m == 0 && p.x_l == 0 && p.m >= 3,
        &[(Rel::Ge, p13_e1), (Rel::Eq, sparse_e2), (Rel::Eq, |v| v.m * v.m - n(2) * v.m - 3)],
        Some((Rel::Ge, 0, 1))
    ),
    chain!(
        "dense-p13",
        "1/28(24ℓ²+24m²−60m−60ℓ−36ℓm−85)",
        P13,
        T2,
        3,
        dense,
        DENSE_STEPS,
        None
    ),
    chain!(
        "dense-p13-large",
        "1/28(24ℓ²+24m²−60m−60ℓ−36ℓm−85)",
        P13,
        T2,
        3,
        |p| dense(p) && p.l.max(p.m) >= 11,
        DENSE_STEPS,
        Some((Rel::Gt, -3, 1))
    ),
];

fn side(s: usize, k: usize) -> Q {
    Q::from_integer(side_bound(s, k) as i64)
}

fn clique(n: usize) -> Q {
    Q::from_integer(feder_count(n).count as i64)
}

fn c2u(n: usize) -> Q {
    Q::from_integer((n * n.saturating_sub(1) / 2) as i64)
}

/// The size every construction of `recipe` is guaranteed to reach on a graph
/// with profile `p` (in the orientation the recipe expects).
pub fn recipe_size_bound(recipe: RecipeId, p: &CaseProfile) -> Option<Q> {
    use RecipeId::*;
    let (l, m, x, y) = (p.l, p.m, p.x_l, p.x_m);
    let halves = c2u(l) + c2u(m);
    let sub = |a: usize, b: usize| a.checked_sub(b);
    Some(match recipe {
        P1 => clique(2 * m),
        P2 => clique(m + x) + c2u(m),
        P3 => side(x, m) + side(sub(y, m)?, l) + halves,
        P4 => clique(l + y) + c2u(l),
        P5 => clique(l + y),
        P5Prime => n(15),
        P6 => n(7),
        P7 => clique(x + m) + halves,
        P8 => clique(x + m + 1) + c2u(l) + side(m, m.checked_sub(1)?),
        P9 => clique(x + y),
        P10 => halves + side(m, l) + side(sub(x, l)?, m),
        P10Prime => halves + side(m, l) + side(sub(x, l)?, m) + n(sub(y, m)? as i64),
        P11 => clique(x + m) + side(x, sub(2 * l, x)?) + c2u(m),
        P12 => side(m, x) + side(l, sub(y, m)?) + c2u(m),
        P13 => clique(m + x) + side(x + y, sub(l, x)?) + halves,
        P14 => halves + side(sub(l, x)? + sub(m, y)?, x + y),
        P15L => clique(l) + side(x, m) + halves,
        P15M => clique(m) + side(y, l) + halves,
        P16L => clique(2 * l) + side(x, m) + c2u(m),
        P16M => clique(2 * m) + side(y, l) + c2u(l),
        P17L => clique(2 * l) + side(x, sub(m, 1)?) + side(m - 1, m + 1),
        P17M => clique(2 * m) + side(y, sub(l, 1)?) + side(l - 1, l + 1),
        P18Prime | P18 => {
            let k = feder_count(l + m);
            let base = if k.k == 0 { n(k.count as i64 - 1) } else { n(k.count as i64) };
            if recipe == P18 {
                base + halves
            } else {
                base
            }
        }
        P19Prime | P19 => {
            let base = clique(2 * l) + clique(2 * m);
            if recipe == P19 {
                base + 2
            } else {
                base
            }
        }
    })
}

/// `ℓm + (x_ℓ−ℓ)(x_m−m) + 2C(m,2) + 2C(ℓ,2)`, the largest `T1` can be.
pub fn t1_size_bound(p: &CaseProfile) -> Q {
    let (l, m) = (p.l as i64, p.m as i64);
    let outer = (p.x_l as i64 - l).max(0) * (p.x_m as i64 - m).max(0);
    n(l * m + outer + m * (m - 1) + l * (l - 1))
}

/// `E_0` for a chain at `p`: the scaled bound from the primitives.
fn source(chain: &Chain, p: &CaseProfile) -> Option<Q> {
    let packing = recipe_size_bound(chain.recipe, p)?;
    let hit = match chain.hitting {
        Hitting::T1 | Hitting::T1WithoutC3D4 => t1_size_bound(p),
        Hitting::T2 => n(t2_size(p) as i64),
    } - chain.hitting_slack;
    Some((packing * 2 - hit) * chain.scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRanges {
    pub max_l: usize,
    pub max_m: usize,
    /// Largest `ℓ, m` for the checks on concrete graphs.
    pub realized_max: usize,
}

impl Default for AuditRanges {
    fn default() -> Self {
        AuditRanges { max_l: 25, max_m: 25, realized_max: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub profile: CaseProfile,
    /// `k` means the link from `E_{k−1}` to `E_k`; `steps + 1` is the final claim.
    pub step: usize,
    pub rel: Rel,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub id: &'static str,
    pub anchor: &'static str,
    pub recipe: String,
    pub tuples: usize,
    /// A displayed link that fails. The claim may still hold.
    pub step_violations: Vec<Violation>,
    /// The claim itself fails from the primitive bound.
    pub conclusion_violations: Vec<Violation>,
    pub realized_checked: usize,
    /// The claim fails for the sizes actually built on a concrete graph.
    pub realized_violations: Vec<Violation>,
    pub realized_errors: Vec<String>,
}

impl ChainReport {
    pub fn is_clean(&self) -> bool {
        self.step_violations.is_empty() && self.is_sound()
    }

    pub fn is_sound(&self) -> bool {
        self.conclusion_violations.is_empty() && self.realized_violations.is_empty() && self.realized_errors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub ranges: AuditRanges,
    pub chains: Vec<ChainReport>,
}

impl AuditReport {
    pub fn step_violations(&self) -> usize {
        self.chains.iter().map(|c| c.step_violations.len()).sum()
    }

    pub fn conclusion_violations(&self) -> usize {
        self.chains.iter().map(|c| c.conclusion_violations.len()).sum()
    }

    pub fn realized_violations(&self) -> usize {
        self.chains.iter().map(|c| c.realized_violations.len() + c.realized_errors.len()).sum()
    }
}

fn profiles(max_l: usize, max_m: usize) -> Vec<CaseProfile> {
    let mut out = Vec::new();
    for l in 1..=max_l {
        for m in 1..=max_m {
            for x_l in 0..=2 * l {
                for x_m in 0..=2 * m {
                    let p = CaseProfile::new(l, m, x_l, x_m);
                    if p.is_realizable() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn violation(p: &CaseProfile, step: usize, rel: Rel, lhs: Q, rhs: Q) -> Violation {
    Violation { profile: *p, step, rel, lhs: lhs.to_string(), rhs: rhs.to_string() }
}

fn check_symbolic(chain: &Chain, p: &CaseProfile, steps: &mut Vec<Violation>, concl: &mut Vec<Violation>) {
    let v = Vars::of(p);
    let Some(e0) = source(chain, p) else {
        concl.push(Violation {
            profile: *p,
            step: 0,
            rel: Rel::Ge,
            lhs: "undefined".into(),
            rhs: "recipe bound".into(),
        });
        return;
    };
    let mut prev = e0;
    for (i, (rel, f)) in chain.steps.iter().enumerate() {
        let cur = f(&v);
        if !rel.holds(prev, cur) {
            steps.push(violation(p, i + 1, *rel, prev, cur));
        }
        prev = cur;
    }
    if let Some((rel, a, b)) = chain.conclusion {
        let t = fr(a, b);
        if !rel.holds(e0, t) {
            concl.push(violation(p, chain.steps.len() + 1, rel, e0, t));
        }
        if !chain.steps.is_empty() && !rel.holds(prev, t) {
            steps.push(violation(p, chain.steps.len() + 1, rel, prev, t));
        }
    }
}

fn realized_hitting(chain: &Chain, g: &CoChainGraph) -> Result<usize, String> {
    Ok(match chain.hitting {
        Hitting::T1 => build_t1(g).map_err(|e| e.to_string())?.len(),
        Hitting::T2 => build_t2(g).map_err(|e| e.to_string())?.len(),
        Hitting::T1WithoutC3D4 => {
            let mut t = build_t1(g).map_err(|e| e.to_string())?;
            t.remove(&Edge::new(g.c(3), g.d(4)));
            t.len()
        }
    })
}

fn check_realized(chain: &Chain, p: &CaseProfile, out: &mut Vec<Violation>, errors: &mut Vec<String>) -> usize {
    let Some((rel, a, b)) = chain.conclusion else {
        return 0;
    };
    let mut checked = 0;
    for dense in [true, false] {
        let Some(g) = p.realize(dense) else { continue };
        let complete = outer_edges_complete(&g);
        let applies = match chain.graph {
            GraphCondition::Any => true,
            GraphCondition::OuterIncomplete => !complete,
            GraphCondition::OuterComplete => complete,
        };
        if !applies {
            continue;
        }
        checked += 1;
        let built = build_recipe(&g, chain.recipe).map_err(|e| format!("{p} dense={dense}: {e}"));
        let hit = realized_hitting(chain, &g).map_err(|e| format!("{p} dense={dense}: {e}"));
        match (built, hit) {
            (Ok(pk), Ok(h)) => {
                let value = n((2 * pk.len() as i64 - h as i64) * chain.scale);
                if !rel.holds(value, fr(a, b)) {
                    out.push(violation(p, chain.steps.len() + 1, rel, value, fr(a, b)));
                }
            }
            (Err(e), _) | (_, Err(e)) => errors.push(e),
        }
    }
    checked
}

fn audit_chain(chain: &Chain, ranges: &AuditRanges, all: &[CaseProfile]) -> ChainReport {
    let mut steps = Vec::new();
    let mut concl = Vec::new();
    let mut realized = Vec::new();
    let mut errors = Vec::new();
    let mut tuples = 0;
    let mut realized_checked = 0;
    for p in all.iter().filter(|p| (chain.domain)(p)) {
        tuples += 1;
        check_symbolic(chain, p, &mut steps, &mut concl);
        if p.l <= ranges.realized_max && p.m <= ranges.realized_max {
            realized_checked += check_realized(chain, p, &mut realized, &mut errors);
        }
    }
    ChainReport {
        id: chain.id,
        anchor: chain.anchor,
        recipe: chain.recipe.to_string(),
        tuples,
        step_violations: steps,
        conclusion_violations: concl,
        realized_checked,
        realized_violations: realized,
        realized_errors: errors,
    }
}

pub fn audit_inequalities(ranges: &AuditRanges) -> AuditReport {
    let all = profiles(ranges.max_l, ranges.max_m);
    let chains = CHAINS.par_iter().map(|c| audit_chain(c, ranges, &all)).collect();
    AuditReport { ranges: *ranges, chains }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(id: &str) -> ChainReport {
        let r = audit_inequalities(&AuditRanges { max_l: 12, max_m: 12, realized_max: 5 });
        r.chains.into_iter().find(|c| c.id == id).unwrap()
    }

    #[test]
    fn every_chain_has_tuples_and_unique_id() {
        let r = audit_inequalities(&AuditRanges { max_l: 12, max_m: 12, realized_max: 0 });
        let mut ids: Vec<_> = r.chains.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CHAINS.len());
        for c in &r.chains {
            assert!(c.tuples > 0, "{}", c.id);
        }
    }

    #[test]
    fn p12_claim_at_distance_two() {
        let v = Vars::of(&CaseProfile::new(3, 5, 6, 9));
        assert_eq!(p12_e7(&v), n(1));
        assert!(report("case2.2-p12-far").is_clean());
    }

    #[test]
    fn p11_claim_at_five() {
        let v = Vars::of(&CaseProfile::new(5, 5, 6, 5));
        assert_eq!(p11_e2(&v), n(1));
    }

    #[test]
    fn dense_claim_at_eleven() {
        let v = Vars::of(&CaseProfile::new(11, 11, 6, 6));
        assert!(dense_e6(&v) > n(-3));
    }

    #[test]
    fn p10prime_wide_link_is_loose_but_claim_holds() {
        let r = report("case2.1-p10prime-wide");
        assert!(r.step_violations.iter().any(|v| v.profile == CaseProfile::new(3, 3, 6, 6) && v.step == 2));
        assert!(r.is_sound());
    }

    #[test]
    fn recipe_bounds_match_known_sizes() {
        assert_eq!(recipe_size_bound(RecipeId::P19, &CaseProfile::new(3, 3, 2, 1)), Some(n(10)));
        assert_eq!(recipe_size_bound(RecipeId::P7, &CaseProfile::new(3, 3, 3, 3)), Some(n(10)));
        assert_eq!(recipe_size_bound(RecipeId::P8, &CaseProfile::new(3, 3, 3, 4)), Some(n(11)));
        assert_eq!(t1_size_bound(&CaseProfile::new(2, 4, 3, 5)), n(23));
    }
}
