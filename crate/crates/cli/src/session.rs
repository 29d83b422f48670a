//! In-memory editing sessions with bounded undo and optional JSON snapshots.

use std::collections::{HashMap, VecDeque};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use parking_lot::RwLock;
use qgrass_core::grassmannian::initial_seed;
use qgrass_core::seed::{check_compatible, SeedJson};
use qgrass_core::QuantumSeed;
use serde::{Deserialize, Serialize};
use uuid::Uuid;

/// Largest `n` a session will accept. Variable expansions grow quickly.
pub const MAX_SESSION_N: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("no position {0}")]
    UnknownPosition(usize),
    #[error("position {0} is frozen")]
    Frozen(usize),
    #[error("nothing to undo")]
    EmptyUndo,
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("{0}")]
    Internal(String),
}

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

/// Wire form of a seed after checking that `B` and `L` are compatible with
/// every degree equal to 2.
pub fn checked_json(seed: &QuantumSeed) -> Result<SeedJson, SessionError> {
    let d = check_compatible(seed.b(), seed.l()).map_err(|e| SessionError::Internal(e.to_string()))?;
    if d.iter().any(|&x| x != 2) {
        return Err(SessionError::Internal(format!("compatibility degrees {d:?}")));
    }
    Ok(seed.to_json())
}

/// Quiver arrows `[from, to]`, 1-based, repeated by multiplicity. Arrows
/// between frozen positions are not recorded.
pub fn arrows(seed: &QuantumSeed) -> Vec<[usize; 2]> {
    let b = seed.b();
    let mut out = Vec::new();
    for k in 0..seed.mutable() {
        for j in 0..seed.total() {
            let v = b.get(j, k);
            let frozen = j >= seed.mutable();
            let arrow = if v > 0 {
                [k + 1, j + 1]
            } else if v < 0 && frozen {
                [j + 1, k + 1]
            } else {
                continue;
            };
            out.extend(std::iter::repeat_n(arrow, v.unsigned_abs() as usize));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutateOutcome {
    pub geometric: bool,
    pub new_label: Option<Vec<usize>>,
}

#[derive(Debug)]
pub struct Session {
    pub id: Uuid,
    seed: QuantumSeed,
    undo: VecDeque<QuantumSeed>,
    pub created_ms: u64,
    pub modified_ms: u64,
}

/// On-disk form. Restoring replays `seed.history` from the rectangle seed.
#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Snapshot {
    id: Uuid,
    created_ms: u64,
    modified_ms: u64,
    seed: SeedJson,
}

impl Session {
    pub fn new(m: usize, n: usize) -> Result<Self, SessionError> {
        if n > MAX_SESSION_N {
            return Err(SessionError::Params(format!("n={n} exceeds {MAX_SESSION_N}")));
        }
        let seed = initial_seed(m, n).map_err(|e| SessionError::Params(e.to_string()))?;
        let now = now_ms();
        Ok(Session { id: Uuid::new_v4(), seed, undo: VecDeque::new(), created_ms: now, modified_ms: now })
    }

    pub fn seed(&self) -> &QuantumSeed {
        &self.seed
    }

    pub fn undo_depth(&self) -> usize {
        self.undo.len()
    }

    /// Maps a 1-based position to an index, rejecting unknown and frozen ones.
    pub fn mutable_index(&self, position: usize) -> Result<usize, SessionError> {
        self.index(position).and_then(|k| {
            if k < self.seed.mutable() {
                Ok(k)
            } else {
                Err(SessionError::Frozen(position))
            }
        })
    }

    pub fn index(&self, position: usize) -> Result<usize, SessionError> {
        if position == 0 || position > self.seed.total() {
            return Err(SessionError::UnknownPosition(position));
        }
        Ok(position - 1)
    }

    /// Mutates at a 1-based position. The previous seed goes on the undo
    /// stack, dropping the oldest entry beyond `cap`.
    pub fn mutate(&mut self, position: usize, cap: usize) -> Result<MutateOutcome, SessionError> {
        let k = self.mutable_index(position)?;
        let mu = self.seed.mutate(k).map_err(|e| SessionError::Internal(e.to_string()))?;
        checked_json(&mu.seed)?;
        let previous = std::mem::replace(&mut self.seed, mu.seed);
        self.undo.push_back(previous);
        while self.undo.len() > cap {
            self.undo.pop_front();
        }
        self.modified_ms = now_ms();
        Ok(MutateOutcome {
            geometric: mu.exchange.is_some(),
            new_label: self.seed.label(k).map(|l| l.elements()),
        })
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        self.seed = self.undo.pop_back().ok_or(SessionError::EmptyUndo)?;
        self.modified_ms = now_ms();
        Ok(())
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            id: self.id,
            created_ms: self.created_ms,
            modified_ms: self.modified_ms,
            seed: self.seed.to_json(),
        }
    }

    fn restore(snap: Snapshot) -> Result<Self, SessionError> {
        let (m, n) = match (snap.seed.m, snap.seed.n) {
            (Some(m), Some(n)) => (m, n),
            _ => return Err(SessionError::Params("snapshot without m, n".into())),
        };
        let mut seed = Session::new(m, n)?.seed;
        for &p in &snap.seed.history {
            if p == 0 || p > seed.mutable() {
                return Err(SessionError::UnknownPosition(p));
            }
            seed = seed.mutate(p - 1).map_err(|e| SessionError::Internal(e.to_string()))?.seed;
        }
        if seed.to_json() != snap.seed {
            return Err(SessionError::Internal(format!("snapshot {} does not replay", snap.id)));
        }
        Ok(Session {
            id: snap.id,
            seed,
            undo: VecDeque::new(),
            created_ms: snap.created_ms,
            modified_ms: snap.modified_ms,
        })
    }
}

pub type SharedSession = Arc<RwLock<Session>>;

/// All live sessions. Each session has its own lock, so work on distinct
/// sessions never contends beyond the map lookup.
pub struct SessionStore {
    sessions: RwLock<HashMap<Uuid, SharedSession>>,
    undo_cap: usize,
    snapshot_dir: Option<PathBuf>,
}

impl SessionStore {
    pub fn new(undo_cap: usize) -> Self {
        SessionStore { sessions: RwLock::new(HashMap::new()), undo_cap, snapshot_dir: None }
    }

    /// A store that writes `<id>.json` into `dir` after every change and
    /// starts with whatever snapshots `dir` already holds.
    pub fn with_snapshots(undo_cap: usize, dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let mut sessions = HashMap::new();
        for entry in fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            match load_snapshot(&path) {
                Ok(s) => {
                    sessions.insert(s.id, Arc::new(RwLock::new(s)));
                }
                Err(e) => tracing::warn!("skipping snapshot {}: {e}", path.display()),
            }
        }
        Ok(SessionStore { sessions: RwLock::new(sessions), undo_cap, snapshot_dir: Some(dir) })
    }

    pub fn undo_cap(&self) -> usize {
        self.undo_cap
    }

    pub fn len(&self) -> usize {
        self.sessions.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(&self, m: usize, n: usize) -> Result<SharedSession, SessionError> {
        let session = Session::new(m, n)?;
        self.persist(&session);
        let id = session.id;
        let shared = Arc::new(RwLock::new(session));
        self.sessions.write().insert(id, shared.clone());
        Ok(shared)
    }

    pub fn get(&self, id: &str) -> Result<SharedSession, SessionError> {
        let unknown = || SessionError::UnknownSession(id.to_string());
        let uuid = Uuid::parse_str(id).map_err(|_| unknown())?;
        self.sessions.read().get(&uuid).cloned().ok_or_else(unknown)
    }

    /// Writes the snapshot when persistence is on. Failures are logged; the
    /// in-memory session stays authoritative.
    pub fn persist(&self, session: &Session) {
        let Some(dir) = &self.snapshot_dir else { return };
        let path = dir.join(format!("{}.json", session.id));
        let tmp = dir.join(format!(".{}.tmp", session.id));
        let result = serde_json::to_vec_pretty(&session.snapshot())
            .map_err(io::Error::other)
            .and_then(|bytes| fs::write(&tmp, bytes))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = result {
            tracing::warn!("snapshot of {} failed: {e}", session.id);
        }
    }
}

fn load_snapshot(path: &Path) -> Result<Session, SessionError> {
    let bytes = fs::read(path).map_err(|e| SessionError::Internal(e.to_string()))?;
    let snap: Snapshot = serde_json::from_slice(&bytes).map_err(|e| SessionError::Internal(e.to_string()))?;
    Session::restore(snap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr24_arrows() {
        let s = Session::new(2, 4).unwrap();
        assert_eq!(arrows(s.seed()), vec![[1, 2], [3, 1], [1, 4], [5, 1]]);
    }

    #[test]
    fn undo_stack_is_bounded() {
        let mut s = Session::new(2, 6).unwrap();
        for p in [1, 2, 3, 1, 2] {
            s.mutate(p, 3).unwrap();
        }
        assert_eq!(s.undo_depth(), 3);
        for _ in 0..3 {
            s.undo().unwrap();
        }
        assert!(matches!(s.undo(), Err(SessionError::EmptyUndo)));
        assert_eq!(s.seed().history(), &[0, 1]);
    }

    #[test]
    fn position_checks() {
        let mut s = Session::new(2, 5).unwrap();
        assert!(matches!(s.mutate(0, 8), Err(SessionError::UnknownPosition(0))));
        assert!(matches!(s.mutate(3, 8), Err(SessionError::Frozen(3))));
        assert!(matches!(s.mutate(8, 8), Err(SessionError::UnknownPosition(8))));
    }

    #[test]
    fn snapshot_replays() {
        let mut s = Session::new(3, 6).unwrap();
        for p in [1, 2, 4, 2] {
            s.mutate(p, 8).unwrap();
        }
        let back = Session::restore(s.snapshot()).unwrap();
        assert_eq!(back.seed(), s.seed());
        assert_eq!(back.id, s.id);
    }
}
