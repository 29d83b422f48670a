//! HTTP/JSON front end over [`SessionStore`].

use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use qgrass_core::seed::SeedJson;
use qgrass_core::torus::TermJson;
use serde::{Deserialize, Serialize};
use serde_json::json;
use uuid::Uuid;

use crate::session::{arrows, checked_json, SessionError, SessionStore, SharedSession};

pub struct ApiError(SessionError);

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match &self.0 {
            SessionError::UnknownSession(_) | SessionError::UnknownPosition(_) => StatusCode::NOT_FOUND,
            SessionError::Frozen(_) | SessionError::Params(_) => StatusCode::UNPROCESSABLE_ENTITY,
            SessionError::EmptyUndo => StatusCode::CONFLICT,
            SessionError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        if status == StatusCode::INTERNAL_SERVER_ERROR {
            tracing::error!("{}", self.0);
        }
        (status, Json(json!({ "error": self.0.to_string() }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/mutate", post(mutate))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/variables/{position}", get(variable))
        .route("/sessions/{id}/quasicommutation", get(quasicommutation))
        .with_state(store)
}

#[derive(Deserialize)]
struct CreateBody {
    m: usize,
    n: usize,
}

#[derive(Serialize)]
struct Created {
    id: Uuid,
    seed: SeedJson,
}

async fn create(
    State(store): State<Arc<SessionStore>>,
    Json(body): Json<CreateBody>,
) -> Result<(StatusCode, Json<Created>), ApiError> {
    let shared = store.create(body.m, body.n)?;
    let s = shared.read();
    Ok((StatusCode::CREATED, Json(Created { id: s.id, seed: checked_json(s.seed())? })))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SessionView {
    id: Uuid,
    seed: SeedJson,
    arrows: Vec<[usize; 2]>,
    mutable_positions: Vec<usize>,
    undo_depth: usize,
    created_ms: u64,
    modified_ms: u64,
}

async fn show(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<SessionView> {
    let shared = store.get(&id)?;
    let s = shared.read();
    Ok(Json(SessionView {
        id: s.id,
        seed: checked_json(s.seed())?,
        arrows: arrows(s.seed()),
        mutable_positions: (1..=s.seed().mutable()).collect(),
        undo_depth: s.undo_depth(),
        created_ms: s.created_ms,
        modified_ms: s.modified_ms,
    }))
}

#[derive(Deserialize)]
struct MutateBody {
    position: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Mutated {
    seed: SeedJson,
    geometric_exchange: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    new_label: Option<Vec<usize>>,
}

/// Runs `f` under the session's write lock on the blocking pool, since
/// variable expansion is CPU-bound.
async fn with_session<T: Send + 'static>(
    store: Arc<SessionStore>,
    shared: SharedSession,
    f: impl FnOnce(&mut crate::session::Session, usize) -> Result<T, SessionError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(move || {
        let mut s = shared.write();
        let out = f(&mut s, store.undo_cap())?;
        store.persist(&s);
        Ok(out)
    })
    .await
    .map_err(|e| ApiError(SessionError::Internal(e.to_string())))?
}

async fn mutate(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Json(body): Json<MutateBody>,
) -> ApiResult<Mutated> {
    let shared = store.get(&id)?;
    let out = with_session(store, shared, move |s, cap| {
        let outcome = s.mutate(body.position, cap)?;
        Ok(Mutated {
            seed: checked_json(s.seed())?,
            geometric_exchange: outcome.geometric,
            new_label: outcome.new_label,
        })
    })
    .await?;
    Ok(Json(out))
}

#[derive(Serialize)]
struct Undone {
    seed: SeedJson,
}

async fn undo(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<Undone> {
    let shared = store.get(&id)?;
    let out = with_session(store, shared, |s, _| {
        s.undo()?;
        Ok(Undone { seed: checked_json(s.seed())? })
    })
    .await?;
    Ok(Json(out))
}

async fn variable(
    State(store): State<Arc<SessionStore>>,
    Path((id, position)): Path<(String, usize)>,
) -> ApiResult<Vec<TermJson>> {
    let shared = store.get(&id)?;
    let s = shared.read();
    let i = s.index(position)?;
    let var = s
        .seed()
        .variable(i)
        .ok_or_else(|| SessionError::Internal("session does not track variables".into()))?;
    Ok(Json(var.to_json()))
}

#[derive(Deserialize)]
struct PairQuery {
    a: usize,
    b: usize,
}

#[derive(Serialize)]
struct Lambda {
    lambda: i64,
}

async fn quasicommutation(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Query(q): Query<PairQuery>,
) -> ApiResult<Lambda> {
    let shared = store.get(&id)?;
    let s = shared.read();
    let (i, j) = (s.index(q.a)?, s.index(q.b)?);
    Ok(Json(Lambda { lambda: s.seed().l().get(i, j) }))
}
