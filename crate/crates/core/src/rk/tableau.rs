use crate::error::{Error, Result};

const CONSISTENCY_TOL: f64 = 1e-14;

/// Coefficients of an explicit Runge–Kutta scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct ButcherTableau {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    coupling: Vec<Vec<f64>>,
    declared_order: usize,
}

impl ButcherTableau {
    /// Builds a tableau after checking explicitness, consistency of the weights
    /// and the row-sum condition on the nodes.
    pub fn new(
        nodes: Vec<f64>,
        weights: Vec<f64>,
        coupling: Vec<Vec<f64>>,
        declared_order: usize,
    ) -> Result<Self> {
        let stages = nodes.len();
        if stages == 0 {
            return Err(Error::InvalidTableau("no stages".into()));
        }
        if declared_order == 0 {
            return Err(Error::InvalidTableau(
                "declared order must be positive".into(),
            ));
        }
        if weights.len() != stages || coupling.len() != stages {
            return Err(Error::InvalidTableau(format!(
                "expected {stages} weights and coupling rows, got {} and {}",
                weights.len(),
                coupling.len()
            )));
        }
        for (i, row) in coupling.iter().enumerate() {
            if row.len() != stages {
                return Err(Error::InvalidTableau(format!(
                    "coupling row {i} has {} entries, expected {stages}",
                    row.len()
                )));
            }
            if row[i..].iter().any(|&a| a != 0.0) {
                return Err(Error::InvalidTableau(format!(
                    "coupling row {i} is not strictly lower triangular"
                )));
            }
            let row_sum: f64 = row.iter().sum();
            if (row_sum - nodes[i]).abs() > CONSISTENCY_TOL {
                return Err(Error::InvalidTableau(format!(
                    "row-sum condition fails at stage {i}: {row_sum} vs node {}",
                    nodes[i]
                )));
            }
        }
        let weight_sum: f64 = weights.iter().sum();
        if (weight_sum - 1.0).abs() > CONSISTENCY_TOL {
            return Err(Error::InvalidTableau(format!(
                "weights sum to {weight_sum}, expected 1"
            )));
        }
        Ok(Self {
            nodes,
            weights,
            coupling,
            declared_order,
        })
    }

    /// Classical four-stage scheme of order 4.
    pub fn classical_rk4() -> Self {
        Self::new(
            vec![0.0, 0.5, 0.5, 1.0],
            vec![1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
            vec![
                vec![0.0, 0.0, 0.0, 0.0],
                vec![0.5, 0.0, 0.0, 0.0],
                vec![0.0, 0.5, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ],
            4,
        )
        .expect("classical RK4 tableau is consistent")
    }

    /// Eleven-stage explicit scheme of order 8 due to Cooper and Verner
    /// (SIAM J. Numer. Anal. 9, 1972), the scheme reproduced in Butcher's
    /// "Numerical Methods for Ordinary Differential Equations".
    ///
    /// The coefficients live in the field Q(√21); they are evaluated here in
    /// double precision from their exact closed forms.
    pub fn cooper_verner8() -> Self {
        let s = 21f64.sqrt();
        let nodes = vec![
            0.0,
            0.5,
            0.5,
            (7.0 + s) / 14.0,
            (7.0 + s) / 14.0,
            0.5,
            (7.0 - s) / 14.0,
            (7.0 - s) / 14.0,
            0.5,
            (7.0 + s) / 14.0,
            1.0,
        ];
        let mut a = vec![vec![0.0; 11]; 11];
        a[1][0] = 0.5;

        a[2][0] = 0.25;
        a[2][1] = 0.25;

        a[3][0] = 1.0 / 7.0;
        a[3][1] = (-7.0 - 3.0 * s) / 98.0;
        a[3][2] = (21.0 + 5.0 * s) / 49.0;

        a[4][0] = (11.0 + s) / 84.0;
        a[4][2] = (18.0 + 4.0 * s) / 63.0;
        a[4][3] = (21.0 - s) / 252.0;

        a[5][0] = (5.0 + s) / 48.0;
        a[5][2] = (9.0 + s) / 36.0;
        a[5][3] = (-231.0 + 14.0 * s) / 360.0;
        a[5][4] = (63.0 - 7.0 * s) / 80.0;

        a[6][0] = (10.0 - s) / 42.0;
        a[6][2] = (-432.0 + 92.0 * s) / 315.0;
        a[6][3] = (633.0 - 145.0 * s) / 90.0;
        a[6][4] = (-504.0 + 115.0 * s) / 70.0;
        a[6][5] = (63.0 - 13.0 * s) / 35.0;

        a[7][0] = 1.0 / 14.0;
        a[7][4] = (14.0 - 3.0 * s) / 126.0;
        a[7][5] = (13.0 - 3.0 * s) / 63.0;
        a[7][6] = 1.0 / 9.0;

        a[8][0] = 1.0 / 32.0;
        a[8][4] = (91.0 - 21.0 * s) / 576.0;
        a[8][5] = 11.0 / 72.0;
        a[8][6] = (-385.0 - 75.0 * s) / 1152.0;
        a[8][7] = (63.0 + 13.0 * s) / 128.0;

        a[9][0] = 1.0 / 14.0;
        a[9][4] = 1.0 / 9.0;
        a[9][5] = (-733.0 - 147.0 * s) / 2205.0;
        a[9][6] = (515.0 + 111.0 * s) / 504.0;
        a[9][7] = (-51.0 - 11.0 * s) / 56.0;
        a[9][8] = (132.0 + 28.0 * s) / 245.0;

        a[10][4] = (-42.0 + 7.0 * s) / 18.0;
        a[10][5] = (-18.0 + 28.0 * s) / 45.0;
        a[10][6] = (-273.0 - 53.0 * s) / 72.0;
        a[10][7] = (301.0 + 53.0 * s) / 72.0;
        a[10][8] = (28.0 - 28.0 * s) / 45.0;
        a[10][9] = (49.0 - 7.0 * s) / 18.0;

        let weights = vec![
            1.0 / 20.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            49.0 / 180.0,
            16.0 / 45.0,
            49.0 / 180.0,
            1.0 / 20.0,
        ];
        Self::new(nodes, weights, a, 8).expect("Cooper-Verner tableau is consistent")
    }

    pub fn stage_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Row `i` of the coupling matrix (entries `j >= i` are zero).
    pub fn coupling_row(&self, i: usize) -> &[f64] {
        &self.coupling[i]
    }

    pub fn declared_order(&self) -> usize {
        self.declared_order
    }
}
