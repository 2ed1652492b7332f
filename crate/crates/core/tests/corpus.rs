use std::fs;
use std::path::{Path, PathBuf};

use gridbo::harness::{run_ablation, RunConfig, BASELINE_ROW};
use gridbo::level::{load_level, LevelSpec};
use gridbo::Cell;

fn load(name: &str) -> LevelSpec {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("levels").join(name);
    load_level(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn corpus_levels_are_64_square_and_connected() {
    for name in ["arena.txt", "rooms.txt", "ghost.txt"] {
        let level = load(name);
        assert_eq!((level.width(), level.height()), (64, 64), "{name}");
        let spawn = level.spawn();
        assert!((28..=36).contains(&spawn.x) && (28..=36).contains(&spawn.y), "{name}: {spawn:?}");
        // Every NavMesh cell is reachable without passing through a ghost wall.
        assert_eq!(level.spawn_component(), level.navmask().as_slice(), "{name}");
    }
}

#[test]
fn only_the_ghost_level_has_ghost_walls() {
    assert!(!load("arena.txt").has_ghost_walls());
    assert!(!load("rooms.txt").has_ghost_walls());
    let ghost = load("ghost.txt");
    assert!(ghost.has_ghost_walls());
    let ghosts: Vec<Cell> = (0..64)
        .flat_map(|y| (0..64).map(move |x| Cell::new(x, y)))
        .filter(|&c| ghost.is_ghost(c))
        .collect();
    assert!(!ghosts.is_empty());
    assert!(ghosts.iter().all(|&c| !ghost.navmask().is_valid(c) && !ghost.is_blocked(c)));
}

fn arena16() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gridbo-corpus-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let text: String = (0..16)
        .map(|y| (0..16).map(|x| if (x, y) == (8, 8) { 'S' } else { '.' }).collect::<String>() + "\n")
        .collect();
    let path = dir.join("arena16.txt");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn ablation_matrix_shape_and_baseline() {
    let cfg = RunConfig {
        level_path: arena16(),
        trials: 1,
        total_steps: 2000,
        ..RunConfig::default()
    };
    let report = run_ablation(&cfg).unwrap().report;
    assert_eq!(report.rows.len(), 6);
    let labels: Vec<&str> = report.rows.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(
        labels,
        ["bo_adaptive", "bo_constant", "bo_none", "random_adaptive", "random_constant", "random_none"]
    );
    assert_eq!(report.rows.iter().filter(|r| r.baseline).count(), 1);
    let base = &report.rows[BASELINE_ROW];
    assert!(base.baseline);
    assert_eq!(base.normalized_coverage, 1.0);
    assert_eq!(base.normalized_dist_uniform, 1.0);
    assert!(report.rows.iter().all(|r| r.trials.len() == 1 && r.trials[0].steps == 2000));
    assert_eq!(report.to_csv().lines().count(), 7);
}

#[test]
fn ablation_rows_share_trial_seeds() {
    let cfg = RunConfig {
        level_path: arena16(),
        trials: 3,
        total_steps: 300,
        seed: 100,
        ..RunConfig::default()
    };
    let report = run_ablation(&cfg).unwrap().report;
    for row in &report.rows {
        let seeds: Vec<u64> = row.trials.iter().map(|m| m.seed).collect();
        assert_eq!(seeds, [100, 101, 102]);
    }
}
