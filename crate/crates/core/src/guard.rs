use std::sync::OnceLock;

/// Environment variable that raises the desk-scale guards ("may be slow").
///
/// The value is a positive integer factor `k`: the vertex cap is multiplied
/// by `k` and every dimension cap is raised by `k - 1`. Values that do not
/// parse, or are below 1, leave the defaults untouched.
pub const DESK_GUARD_ENV: &str = "CREMONA_DESK_GUARD";

/// Limits that keep the brute-force routines at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeskGuards {
    /// Vertex cap for the triangulation volume oracle.
    pub max_vertices: usize,
    /// Largest `n` for Laplace-expanded maximal minors.
    pub max_minor_dimension: usize,
    /// Largest `n` for the common refinement of the two fans.
    pub max_refinement_dimension: usize,
    /// Largest `n` for the volumetric covering check.
    pub max_covering_dimension: usize,
}

impl Default for DeskGuards {
    fn default() -> Self {
        DeskGuards {
            max_vertices: 200,
            max_minor_dimension: 6,
            max_refinement_dimension: 4,
            max_covering_dimension: 3,
        }
    }
}

impl DeskGuards {
    pub fn raised_by(factor: usize) -> Self {
        let base = DeskGuards::default();
        if factor <= 1 {
            return base;
        }
        let extra = factor - 1;
        DeskGuards {
            max_vertices: base.max_vertices.saturating_mul(factor),
            max_minor_dimension: base.max_minor_dimension + extra,
            max_refinement_dimension: base.max_refinement_dimension + extra,
            max_covering_dimension: base.max_covering_dimension + extra,
        }
    }

    pub fn from_env() -> Self {
        std::env::var(DESK_GUARD_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(DeskGuards::raised_by)
            .unwrap_or_default()
    }

    /// Guards for this process, read from the environment once.
    pub fn current() -> DeskGuards {
        static GUARDS: OnceLock<DeskGuards> = OnceLock::new();
        *GUARDS.get_or_init(DeskGuards::from_env)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raising_never_lowers() {
        assert_eq!(DeskGuards::raised_by(0), DeskGuards::default());
        let g = DeskGuards::raised_by(3);
        assert_eq!(g.max_vertices, 600);
        assert_eq!(g.max_minor_dimension, 8);
        assert_eq!(g.max_covering_dimension, 5);
    }
}
