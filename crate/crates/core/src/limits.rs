/// Environment variable that overrides both the vertex and the frontier cap.
pub const CAP_ENV_VAR: &str = "LAMPLIGHTER_CAP";

pub const DEFAULT_VERTEX_CAP: usize = 200_000;

/// Size limits shared by every enumerating operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of vertices materialized in a ball or graph.
    pub vertex_cap: usize,
    /// Maximum number of states held by a search frontier.
    pub frontier_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            vertex_cap: DEFAULT_VERTEX_CAP,
            frontier_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits {
            vertex_cap: cap,
            frontier_cap: cap,
        }
    }

    /// Defaults, overridden by `LAMPLIGHTER_CAP` when it parses as an integer.
    pub fn from_env() -> Self {
        std::env::var(CAP_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(Limits::with_cap)
            .unwrap_or_default()
    }
}
