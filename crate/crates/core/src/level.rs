//! ASCII grid-world levels and agent movement.
//!
//! Legend: `#` physical wall, `G` ghost wall (rendered and cut out of the
//! navigation mesh, but with no collider), `.` free floor, `S` spawn (exactly
//! one). Row 0 is the first line of the file.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Cell;
use crate::surrogate::NavMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    North,
    South,
    East,
    West,
}

impl Action {
    /// The uniform random-action set.
    pub const ALL: [Action; 4] = [Action::North, Action::South, Action::East, Action::West];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Action::North => (0, -1),
            Action::South => (0, 1),
            Action::East => (1, 0),
            Action::West => (-1, 0),
        }
    }
}

/// Neighbor of `cell` in direction `action`, or `None` past the grid edge.
pub fn neighbor(cell: Cell, action: Action, width: usize, height: usize) -> Option<Cell> {
    let (dx, dy) = action.delta();
    let x = cell.x.checked_add_signed(dx)?;
    let y = cell.y.checked_add_signed(dy)?;
    (x < width && y < height).then_some(Cell::new(x, y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSpec {
    width: usize,
    height: usize,
    physical_blocked: Vec<bool>,
    ghost_wall: Vec<bool>,
    spawn: Cell,
    navmask: NavMask,
}

impl LevelSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text
            .lines()
            .map(|l| l.trim_end_matches('\r'))
            .filter(|l| !l.is_empty())
            .collect();
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        if width < 4 || height < 4 {
            return Err(Error::Parse {
                row: 0,
                col: 0,
                msg: format!("level must be at least 4x4, got {width}x{height}"),
            });
        }

        let mut physical_blocked = Vec::with_capacity(width * height);
        let mut ghost_wall = Vec::with_capacity(width * height);
        let mut spawn = None;
        for (y, row) in rows.iter().enumerate() {
            let n = row.chars().count();
            if n != width {
                return Err(Error::Parse {
                    row: y,
                    col: n.min(width),
                    msg: format!("ragged row: {n} cells, expected {width}"),
                });
            }
            for (x, ch) in row.chars().enumerate() {
                let (blocked, ghost) = match ch {
                    '#' => (true, false),
                    'G' => (false, true),
                    '.' => (false, false),
                    'S' => {
                        if spawn.is_some() {
                            return Err(Error::Parse {
                                row: y,
                                col: x,
                                msg: "second spawn 'S'".into(),
                            });
                        }
                        spawn = Some(Cell::new(x, y));
                        (false, false)
                    }
                    other => {
                        return Err(Error::Parse {
                            row: y,
                            col: x,
                            msg: format!("unknown glyph {other:?}"),
                        })
                    }
                };
                physical_blocked.push(blocked);
                ghost_wall.push(ghost);
            }
        }
        let spawn = spawn.ok_or_else(|| Error::Parse {
            row: 0,
            col: 0,
            msg: "no spawn 'S'".into(),
        })?;

        let valid = physical_blocked
            .iter()
            .zip(&ghost_wall)
            .map(|(&b, &g)| !b && !g)
            .collect();
        let navmask = NavMask::new(width, height, valid)?;
        Ok(LevelSpec {
            width,
            height,
            physical_blocked,
            ghost_wall,
            spawn,
            navmask,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn spawn(&self) -> Cell {
        self.spawn
    }

    pub fn navmask(&self) -> &NavMask {
        &self.navmask
    }

    #[inline]
    pub fn in_bounds(&self, cell: Cell) -> bool {
        cell.x < self.width && cell.y < self.height
    }

    #[inline]
    fn idx(&self, cell: Cell) -> usize {
        cell.y * self.width + cell.x
    }

    pub fn is_blocked(&self, cell: Cell) -> bool {
        self.physical_blocked[self.idx(cell)]
    }

    pub fn is_ghost(&self, cell: Cell) -> bool {
        self.ghost_wall[self.idx(cell)]
    }

    pub fn has_ghost_walls(&self) -> bool {
        self.ghost_wall.iter().any(|&g| g)
    }

    /// Default step budget before a stuck agent is sent back to spawn.
    pub fn default_step_budget(&self) -> usize {
        4 * (self.width + self.height)
    }

    /// NavMesh-valid cells reachable from spawn over valid 4-neighbors.
    pub fn spawn_component(&self) -> Vec<bool> {
        let mut seen = vec![false; self.width * self.height];
        let mut queue = std::collections::VecDeque::from([self.spawn]);
        seen[self.idx(self.spawn)] = true;
        while let Some(c) = queue.pop_front() {
            for a in Action::ALL {
                if let Some(n) = neighbor(c, a, self.width, self.height) {
                    let i = self.idx(n);
                    if !seen[i] && self.navmask.is_valid(n) {
                        seen[i] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
        seen
    }
}

pub fn load_level(text: &str) -> Result<LevelSpec> {
    LevelSpec::parse(text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentState {
    pub position: Cell,
    pub target: Option<Cell>,
    pub steps_on_target: usize,
}

impl AgentState {
    pub fn at(position: Cell) -> Self {
        AgentState {
            position,
            target: None,
            steps_on_target: 0,
        }
    }

    pub fn assign_target(&mut self, target: Cell) {
        self.target = Some(target);
        self.steps_on_target = 0;
    }

    pub fn on_target(&self) -> bool {
        self.target == Some(self.position)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepOutcome {
    pub new_position: Cell,
    pub moved: bool,
    pub ghost_wall_entered: bool,
    pub target_reached: bool,
}

/// Applies one cardinal move. Walls and the grid edge leave the agent in place.
pub fn step(level: &LevelSpec, agent: AgentState, action: Action) -> (AgentState, StepOutcome) {
    let dest = neighbor(agent.position, action, level.width, level.height)
        .filter(|&c| !level.is_blocked(c));
    let mut next = agent;
    next.steps_on_target = agent.steps_on_target.saturating_add(1);
    let (moved, ghost) = match dest {
        Some(c) => {
            next.position = c;
            (true, level.is_ghost(c))
        }
        None => (false, false),
    };
    let outcome = StepOutcome {
        new_position: next.position,
        moved,
        ghost_wall_entered: ghost,
        target_reached: next.on_target(),
    };
    (next, outcome)
}

/// Sends the agent back to spawn when it has spent `budget` steps on an
/// unreached target.
pub fn maybe_reset(level: &LevelSpec, agent: AgentState, budget: usize) -> AgentState {
    if agent.steps_on_target >= budget && !agent.on_target() {
        AgentState::at(level.spawn)
    } else {
        agent
    }
}
