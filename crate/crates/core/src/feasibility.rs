//! Exact feasibility of finite systems of closed linear inequalities
//! `coeffs · x <= bound` over `Q(√3)`, by Fourier–Motzkin elimination.

use crate::exact::Exact;

/// One closed halfspace `coeffs · x <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Exact>,
    pub bound: Exact,
}

impl Inequality {
    pub fn new(coeffs: Vec<Exact>, bound: Exact) -> Self {
        Inequality { coeffs, bound }
    }

    /// `coeffs · x >= bound`, rewritten as `-coeffs · x <= -bound`.
    pub fn at_least(coeffs: &[Exact], bound: Exact) -> Self {
        Inequality {
            coeffs: coeffs.iter().map(|c| -*c).collect(),
            bound: -bound,
        }
    }

    pub fn at_most(coeffs: &[Exact], bound: Exact) -> Self {
        Inequality {
            coeffs: coeffs.to_vec(),
            bound,
        }
    }

    fn scaled(&self, factor: Exact) -> Inequality {
        Inequality {
            coeffs: self.coeffs.iter().map(|c| *c * factor).collect(),
            bound: self.bound * factor,
        }
    }

    fn plus(&self, other: &Inequality) -> Inequality {
        Inequality {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| *a + *b)
                .collect(),
            bound: self.bound + other.bound,
        }
    }

    pub fn satisfied_by(&self, x: &[Exact]) -> bool {
        crate::exact::dot(&self.coeffs, x) <= self.bound
    }
}

/// Whether the intersection of the given closed halfspaces is non-empty.
///
/// Rows with all-zero coefficients are checked directly (`0 <= bound`), so
/// an empty system is feasible.
pub fn is_feasible(system: &[Inequality]) -> bool {
    let Some(dim) = system.first().map(|r| r.coeffs.len()) else {
        return true;
    };
    let mut rows: Vec<Inequality> = system.to_vec();
    for var in 0..dim {
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let mut rest = Vec::new();
        for row in rows {
            let c = row.coeffs[var];
            if c.is_positive() {
                upper.push(row.scaled(Exact::one() / c));
            } else if c.is_negative() {
                lower.push(row.scaled(Exact::one() / -c));
            } else {
                rest.push(row);
            }
        }
        // x_var <= u - (others) and x_var >= (others) - l combine pairwise.
        for u in &upper {
            for l in &lower {
                rest.push(u.plus(l));
            }
        }
        rows = dedup(rest);
        if rows
            .iter()
            .any(|r| r.coeffs.iter().all(Exact::is_zero) && r.bound.is_negative())
        {
            return false;
        }
    }
    rows.iter().all(|r| !r.bound.is_negative())
}

fn dedup(mut rows: Vec<Inequality>) -> Vec<Inequality> {
    let mut out: Vec<Inequality> = Vec::with_capacity(rows.len());
    for row in rows.drain(..) {
        if !out.contains(&row) {
            out.push(row);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(c: &[i64], b: i64) -> Inequality {
        Inequality::new(c.iter().map(|&x| Exact::int(x)).collect(), Exact::int(b))
    }

    #[test]
    fn unit_square_is_feasible() {
        let sys = [row(&[1, 0], 1), row(&[-1, 0], 0), row(&[0, 1], 1), row(&[0, -1], 0)];
        assert!(is_feasible(&sys));
    }

    #[test]
    fn disjoint_strips_are_infeasible() {
        let sys = [row(&[1, 0], 1), row(&[-1, 0], -2)];
        assert!(!is_feasible(&sys));
    }

    #[test]
    fn touching_closed_halfplanes_meet() {
        // x + y <= 0 and x + y >= 0 meet along a line.
        let sys = [row(&[1, 1], 0), row(&[-1, -1], 0)];
        assert!(is_feasible(&sys));
    }

    #[test]
    fn triangle_with_sqrt3_normals() {
        let h = Exact::ratio(1, 2);
        let r = Exact::sqrt3() * h;
        let normals = [
            vec![Exact::zero(), Exact::one()],
            vec![-r, -h],
            vec![r, -h],
        ];
        // n_i · p >= 1 for all i is empty because the normals sum to zero.
        let sys: Vec<_> = normals
            .iter()
            .map(|n| Inequality::at_least(n, Exact::one()))
            .collect();
        assert!(!is_feasible(&sys));
        // n_i · p >= -1 is a bounded triangle.
        let sys: Vec<_> = normals
            .iter()
            .map(|n| Inequality::at_least(n, -Exact::one()))
            .collect();
        assert!(is_feasible(&sys));
    }
}
