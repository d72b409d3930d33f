//! Local JSON API over a session. Reads share the session; writes are
//! serialized and persisted to the session file when one is attached.

use crate::error::CliError;
use crate::ops::{self, AddRequest, IterateRequest, MutateRequest, SubsetRequest};
use crate::session::Session;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

#[derive(Clone)]
pub struct AppState {
    session: Arc<RwLock<Session>>,
    path: Option<PathBuf>,
}

impl AppState {
    pub fn new(session: Session, path: Option<PathBuf>) -> Self {
        AppState { session: Arc::new(RwLock::new(session)), path }
    }
}

impl IntoResponse for CliError {
    fn into_response(self) -> Response {
        let status = if self.code == "Internal" { StatusCode::INTERNAL_SERVER_ERROR } else { StatusCode::BAD_REQUEST };
        (status, Json(self.to_json())).into_response()
    }
}

type ApiResult = Result<Json<Value>, CliError>;

async fn read<F>(state: AppState, f: F) -> ApiResult
where
    F: FnOnce(&Session) -> Result<Value, CliError> + Send + 'static,
{
    tokio::task::spawn_blocking(move || {
        let s = state.session.read().map_err(|_| CliError::new("Internal", "session lock poisoned"))?;
        f(&s).map(Json)
    })
    .await
    .map_err(|e| CliError::new("Internal", e.to_string()))?
}

async fn write<F>(state: AppState, f: F) -> ApiResult
where
    F: FnOnce(&mut Session) -> Result<Value, CliError> + Send + 'static,
{
    tokio::task::spawn_blocking(move || {
        let mut s = state.session.write().map_err(|_| CliError::new("Internal", "session lock poisoned"))?;
        let out = f(&mut s)?;
        if let Some(p) = &state.path {
            s.save(p)?;
        }
        Ok(Json(out))
    })
    .await
    .map_err(|e| CliError::new("Internal", e.to_string()))?
}

#[derive(Debug, Deserialize)]
struct NameQuery {
    name: String,
}

#[derive(Debug, Deserialize)]
struct GraphQuery {
    name: String,
    #[serde(default = "one")]
    depth: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
struct StabilityRequest {
    name: String,
    charge: Value,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/catalog", get(|State(s): State<AppState>| read(s, ops::catalog)))
        .route(
            "/collections",
            get(|State(s): State<AppState>| read(s, |s| Ok(ops::collections(s))))
                .post(|State(s): State<AppState>, Json(r): Json<AddRequest>| write(s, move |s| ops::add(s, &r))),
        )
        .route("/check", post(|State(s): State<AppState>, Json(r): Json<NameRequest>| read(s, move |s| ops::check(s, &r.name))))
        .route("/mutate", post(|State(s): State<AppState>, Json(r): Json<MutateRequest>| write(s, move |s| ops::mutate(s, &r))))
        .route("/tilt", post(|State(s): State<AppState>, Json(r): Json<MutateRequest>| write(s, move |s| ops::tilt(s, &r))))
        .route("/theorem1", post(|State(s): State<AppState>, Json(r): Json<SubsetRequest>| read(s, move |s| ops::theorem1(s, &r))))
        .route("/phasegap", post(|State(s): State<AppState>, Json(r): Json<SubsetRequest>| read(s, move |s| ops::phasegap(s, &r))))
        .route("/reduce", post(|State(s): State<AppState>, Json(r): Json<SubsetRequest>| read(s, move |s| ops::reduction(s, &r))))
        .route(
            "/iterate",
            post(|State(s): State<AppState>, Json(r): Json<IterateRequest>| read(s, move |s| ops::iterate(s, &r).map(|(v, _)| v))),
        )
        .route(
            "/stability",
            post(|State(s): State<AppState>, Json(r): Json<StabilityRequest>| {
                read(s, move |s| ops::stability(s, &r.name, &r.charge.to_string()))
            }),
        )
        .route("/adjacency", post(|State(s): State<AppState>, Json(r): Json<NameRequest>| read(s, move |s| ops::adjacency(s, &r.name))))
        .route(
            "/graph",
            get(|State(s): State<AppState>, Query(q): Query<GraphQuery>| {
                read(s, move |s| {
                    let g = ops::explore(s, &q.name, q.depth)?;
                    Ok(json!({ "graph": g, "dot": crate::export::graph_dot(&g) }))
                })
            }),
        )
        .route(
            "/history",
            get(|State(s): State<AppState>| read(s, |s| Ok(json!({ "dot": crate::export::registry_dot(&s.file) })))),
        )
        .route(
            "/export",
            get(|State(s): State<AppState>, Query(q): Query<NameQuery>| {
                read(s, move |s| serde_json::to_value(ops::export_collection(s, &q.name)?).map_err(|e| CliError::new("Internal", e.to_string())))
            }),
        )
        .with_state(state)
}

#[derive(Debug, Deserialize)]
struct NameRequest {
    name: String,
}

pub async fn serve(state: AppState, port: u16) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await?;
    Ok(())
}
