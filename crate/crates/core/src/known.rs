//! Published rational values, used as fixed expectations by the
//! verification suite. Each entry is `num / (odd · 2^two)`.

use rug::{Integer, Rational};

#[derive(Clone, Copy, Debug)]
pub struct Dyadic {
    pub num: i64,
    pub odd: i64,
    pub two: u32,
}

const fn d(num: i64, odd: i64, two: u32) -> Dyadic {
    Dyadic { num, odd, two }
}

const ZERO: Dyadic = d(0, 1, 0);

impl Dyadic {
    pub fn value(self) -> Rational {
        Rational::from((Integer::from(self.num), Integer::from(self.odd) << self.two))
    }
}

/// `α_k`, `k = 2, 4, …, 20`.
pub const ALPHA: [(u32, Dyadic); 10] = [
    (2, d(1, 3, 9)),
    (4, d(1, 5, 8)),
    (6, d(1, 7, 14)),
    (8, d(3, 5, 14)),
    (10, d(9, 11, 20)),
    (12, d(567, 65, 20)),
    (14, d(27, 1, 26)),
    (16, d(43659, 85, 26)),
    (18, d(49329, 19, 32)),
    (20, d(392931, 5, 32)),
];

/// `(β_k, γ_k)`, `k = 3, 5, …, 23`.
pub const BETA_GAMMA: [(u32, Dyadic, Dyadic); 11] = [
    (3, d(1, 1, 10), d(-1, 1, 4)),
    (5, d(1, 3, 16), d(1, 1, 10)),
    (7, d(1, 1, 15), ZERO),
    (9, d(1, 1, 22), d(27, 5, 16)),
    (11, d(9, 1, 21), ZERO),
    (13, d(171, 7, 28), d(567, 5, 22)),
    (15, d(405, 1, 27), ZERO),
    (17, d(1809, 1, 34), d(43659, 5, 28)),
    (19, d(49329, 1, 33), ZERO),
    (21, d(3797847, 11, 40), d(8251551, 5, 34)),
    (23, d(13895469, 1, 39), ZERO),
];

/// `(p, i_p, j_p)` for `∫ x^{4p+1}/(cos x - cosh x)²`.
pub const MINUS2: [(i64, Dyadic, Dyadic); 7] = [
    (1, d(-1, 1, 8), d(1, 3, 14)),
    (2, d(27, 5, 12), d(-1, 1, 18)),
    (3, d(-567, 5, 16), d(171, 7, 22)),
    (4, d(43659, 5, 20), d(-1809, 1, 26)),
    (5, d(-8251551, 5, 24), d(3797847, 11, 30)),
    (6, d(8622870795, 13, 28), d(-138429081, 1, 34)),
    (7, d(-2498907956391, 5, 32), d(104367224493, 1, 38)),
];

/// `(p, g_p, h_p)` for `∫ x^{4p+1}/(cos x + cosh x)²`.
pub const PLUS2: [(i64, Dyadic, Dyadic); 7] = [
    (1, d(3, 1, 9), d(-1, 3, 15)),
    (2, d(-189, 5, 15), d(9, 1, 21)),
    (3, d(18711, 5, 21), d(-5301, 7, 27)),
    (4, d(-5544693, 5, 27), d(233361, 1, 33)),
    (5, d(4233045663, 5, 33), d(-1940699817, 11, 39)),
    (6, d(-17651016517365, 13, 39), d(283641186969, 1, 45)),
    (7, d(20473552886711463, 5, 45), d(-854871935822163, 1, 51)),
];

/// `Σ v^s sinh(vπ/2)/cosh³(vπ/2)` over odd `v`: `(s, c1, γ1, π1, c2, γ2, π2)`
/// for `c1 Γ^γ1/π^π1 + c2 Γ^γ2/π^π2`.
pub const SINH_COSH3: [(u32, Dyadic, i64, i64, Dyadic, i64, i64); 4] = [
    (5, d(3, 1, 6), 8, 8, d(1, 3, 12), 16, 12),
    (7, d(3, 1, 10), 16, 13, ZERO, 0, 0),
    (9, d(189, 5, 10), 16, 14, d(9, 1, 16), 24, 18),
    (11, d(153, 1, 14), 24, 19, ZERO, 0, 0),
];
