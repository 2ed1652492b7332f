//! Low-level controller: shortest-path navigation on the navigation mesh,
//! mixed with uniformly random exploratory moves.
//!
//! Paths come from a breadth-first distance field rooted at the target. From
//! any cell the path descends that field one step at a time, taking the first
//! neighbor in N, E, S, W order that is one step closer. The field is built once
//! per target, so replanning after a random detour is just another descent.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::grid::Cell;
use crate::level::{neighbor, Action, LevelSpec};

/// Fixed neighbor order for path tie-breaking.
pub const PLAN_ORDER: [Action; 4] = [Action::North, Action::East, Action::South, Action::West];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExplorationMode {
    /// Random action with probability `1 - c` at the agent's cell.
    Adaptive,
    /// Random action with a fixed probability.
    Constant { rate: f64 },
    /// Always follow the plan when one exists.
    None,
}

impl ExplorationMode {
    pub const DEFAULT_CONSTANT_RATE: f64 = 0.2;

    pub fn constant(rate: f64) -> crate::Result<Self> {
        if !(0.0..=1.0).contains(&rate) {
            return Err(crate::Error::InvalidParameter(format!(
                "constant exploration rate must be in [0, 1], got {rate}"
            )));
        }
        Ok(ExplorationMode::Constant { rate })
    }

    /// Probability of following the plan given confidence `c` at the agent's cell.
    pub fn follow_probability(&self, c: f64) -> f64 {
        match *self {
            ExplorationMode::Adaptive => c.clamp(0.0, 1.0),
            ExplorationMode::Constant { rate } => 1.0 - rate,
            ExplorationMode::None => 1.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ExplorationMode::Adaptive => "adaptive",
            ExplorationMode::Constant { .. } => "constant",
            ExplorationMode::None => "none",
        }
    }
}

/// Breadth-first distances to one target over NavMesh-valid cells.
#[derive(Debug, Clone)]
pub struct NavField {
    target: Cell,
    width: usize,
    height: usize,
    dist: Vec<u32>,
}

impl NavField {
    const UNREACHABLE: u32 = u32::MAX;

    /// `None` when the target itself is off the navigation mesh.
    pub fn new(level: &LevelSpec, target: Cell) -> Option<Self> {
        let mask = level.navmask();
        if !mask.is_valid(target) {
            return None;
        }
        let (w, h) = (level.width(), level.height());
        let mut dist = vec![Self::UNREACHABLE; w * h];
        dist[target.y * w + target.x] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(c) = queue.pop_front() {
            let d = dist[c.y * w + c.x];
            for a in PLAN_ORDER {
                if let Some(n) = neighbor(c, a, w, h) {
                    let i = n.y * w + n.x;
                    if dist[i] == Self::UNREACHABLE && mask.is_valid(n) {
                        dist[i] = d + 1;
                        queue.push_back(n);
                    }
                }
            }
        }
        Some(NavField {
            target,
            width: w,
            height: h,
            dist,
        })
    }

    pub fn target(&self) -> Cell {
        self.target
    }

    /// Shortest-path length in moves, `None` if unreachable or off-mesh.
    pub fn distance(&self, from: Cell) -> Option<u32> {
        if from.x >= self.width || from.y >= self.height {
            return None;
        }
        let d = self.dist[from.y * self.width + from.x];
        (d != Self::UNREACHABLE).then_some(d)
    }

    pub fn plan_from(&self, from: Cell) -> Option<PlanCache> {
        let mut d = self.distance(from)?;
        let mut path = Vec::with_capacity(d as usize + 1);
        let mut cur = from;
        path.push(cur);
        while d > 0 {
            cur = PLAN_ORDER
                .iter()
                .filter_map(|&a| neighbor(cur, a, self.width, self.height))
                .find(|&n| self.distance(n) == Some(d - 1))
                .expect("a BFS field always has a descending neighbor");
            d -= 1;
            path.push(cur);
        }
        Some(PlanCache {
            target: self.target,
            path,
        })
    }
}

/// A shortest path from the agent's cell (first element) to the target (last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanCache {
    pub target: Cell,
    pub path: Vec<Cell>,
}

impl PlanCache {
    pub fn source(&self) -> Cell {
        self.path[0]
    }

    pub fn moves(&self) -> usize {
        self.path.len() - 1
    }

    /// The first move along the path, `None` when already at the target.
    pub fn next_action(&self) -> Option<Action> {
        let (a, b) = (*self.path.first()?, *self.path.get(1)?);
        Some(if b.y < a.y {
            Action::North
        } else if b.y > a.y {
            Action::South
        } else if b.x > a.x {
            Action::East
        } else {
            Action::West
        })
    }

    /// Drops the first cell if the agent has moved onto the second one.
    /// Returns whether the agent is still on the path.
    pub fn advance_to(&mut self, position: Cell) -> bool {
        if self.path.first() == Some(&position) {
            return true;
        }
        if self.path.get(1) == Some(&position) {
            self.path.remove(0);
            return true;
        }
        false
    }
}

/// Shortest path from `from` to `target` over NavMesh-valid cells, or `None`
/// when the target is unreachable or `from` is off the mesh.
pub fn plan(level: &LevelSpec, from: Cell, target: Cell) -> Option<PlanCache> {
    if !level.navmask().is_valid(from) {
        return None;
    }
    NavField::new(level, target)?.plan_from(from)
}

/// An action together with whether it came from the random branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub action: Action,
    pub explored: bool,
}

/// Follows the plan with probability given by `mode` and `c`, otherwise moves
/// uniformly at random. With no plan, or no move left on it, the move is random.
pub fn decide<R: Rng + ?Sized>(
    plan: Option<&PlanCache>,
    c: f64,
    mode: &ExplorationMode,
    rng: &mut R,
) -> Decision {
    let planned = plan.and_then(PlanCache::next_action);
    if let Some(action) = planned {
        let p_follow = mode.follow_probability(c);
        // gen() is in [0, 1): p = 1 always follows and p = 0 never does.
        if rng.gen::<f64>() < p_follow {
            return Decision {
                action,
                explored: false,
            };
        }
    }
    Decision {
        action: Action::ALL[rng.gen_range(0..Action::ALL.len())],
        explored: true,
    }
}

pub fn choose_action<R: Rng + ?Sized>(
    plan: Option<&PlanCache>,
    c: f64,
    mode: &ExplorationMode,
    rng: &mut R,
) -> Action {
    decide(plan, c, mode, rng).action
}
