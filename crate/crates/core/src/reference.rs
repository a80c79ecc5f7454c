//! Published skin-friction values f''(0) for the power-law boundary layer.
//!
//! Columns: the similarity solutions of Acrivos, Shah and Petersen (AIChE J.
//! 6, 1960), the tabulated Pohlhausen estimate, and the non-iterative
//! transformation results this crate regresses against. Blank cells are
//! `None`.

/// One row of the reference table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub p: f64,
    pub acrivos: Option<f64>,
    pub pohlhausen: Option<f64>,
    pub nonitm: Option<f64>,
}

const fn row(
    p: f64,
    acrivos: Option<f64>,
    pohlhausen: Option<f64>,
    nonitm: Option<f64>,
) -> ReferenceRow {
    ReferenceRow {
        p,
        acrivos,
        pohlhausen,
        nonitm,
    }
}

const TABLE: [ReferenceRow; 12] = [
    row(0.05, Some(1.400938), Some(0.214892), Some(1.540752)),
    row(0.1, Some(0.729857), Some(0.221302), Some(0.826478)),
    row(0.2, Some(0.505623), Some(0.237305), Some(0.490342)),
    row(0.3, Some(0.354290), Some(0.244046), Some(0.391515)),
    row(0.4, None, None, Some(0.350396)),
    row(0.5, Some(0.331200), Some(0.268324), None),
    row(0.6, None, None, Some(0.3239457)),
    row(0.7, None, None, Some(0.3220337)),
    row(0.8, None, None, Some(0.323544)),
    row(0.9, None, None, Some(0.327139)),
    row(1.0, Some(0.33206), Some(0.323), Some(0.332057)),
    row(1.5, Some(0.363215), Some(0.384047), Some(0.398432)),
];

/// All twelve rows in increasing `P`.
pub fn reference_table() -> &'static [ReferenceRow] {
    &TABLE
}

/// Row for `p`, if tabulated.
pub fn reference_row(p: f64) -> Option<&'static ReferenceRow> {
    TABLE.iter().find(|r| (r.p - p).abs() < 1e-12)
}

/// High-precision Blasius skin friction (Boyd, SIAM Rev. 41, 1999).
pub const BLASIUS_SKIN_FRICTION: f64 = 0.332_057_336_215_196_3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_rows_in_order() {
        let t = reference_table();
        assert_eq!(t.len(), 12);
        assert!(t.windows(2).all(|w| w[0].p < w[1].p));
    }

    #[test]
    fn spot_rows() {
        assert_eq!(
            *reference_row(0.1).unwrap(),
            row(0.1, Some(0.729857), Some(0.221302), Some(0.826478))
        );
        assert_eq!(
            *reference_row(1.0).unwrap(),
            row(1.0, Some(0.33206), Some(0.323), Some(0.332057))
        );
        assert_eq!(
            *reference_row(0.5).unwrap(),
            row(0.5, Some(0.331200), Some(0.268324), None)
        );
        assert!(reference_row(0.25).is_none());
    }

    #[test]
    fn blanks_and_positivity() {
        for r in reference_table() {
            for v in [r.acrivos, r.pohlhausen, r.nonitm].into_iter().flatten() {
                assert!(v > 0.0);
            }
            let only_nonitm = [0.4, 0.6, 0.7, 0.8, 0.9].contains(&r.p);
            assert_eq!(r.acrivos.is_none(), only_nonitm, "P={}", r.p);
            assert_eq!(r.pohlhausen.is_none(), only_nonitm, "P={}", r.p);
            assert_eq!(r.nonitm.is_none(), r.p == 0.5);
        }
    }
}
