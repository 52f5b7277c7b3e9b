//! Stateless HTTP+JSON service consumed by the browser navigator.

use std::collections::HashMap;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::Query;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use hypergrid::ca::{self, Configuration, ConfigurationFile, Rule, RuleFile};
use hypergrid::window::{colors, window, TileColor, WindowResponse};
use hypergrid::{neighbors, shortest_path, Address, Error, Grid};

/// Most steps one `/ca/step` request may ask for.
pub const MAX_CA_STEPS: usize = 32;

/// Error body `{"error": message, "reason": code}`.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    reason: &'static str,
    message: String,
}

impl ApiError {
    fn bad_request(reason: &'static str, message: impl Into<String>) -> ApiError {
        ApiError { status: StatusCode::BAD_REQUEST, reason, message: message.into() }
    }
}

/// Machine-readable code for a library error.
pub fn reason_code(e: &Error) -> &'static str {
    match e {
        Error::MalformedWord { .. } => "malformed_word",
        Error::ZeroHasNoWord => "zero_has_no_word",
        Error::MalformedAddress { .. } | Error::SectorOutOfRange { .. } => "malformed_address",
        Error::UnknownGrid(_) => "unknown_grid",
        Error::GridMismatch { .. } => "grid_mismatch",
        Error::NotHyperbolic { .. } => "not_hyperbolic",
        Error::CoincidentPoints => "coincident_points",
        Error::RadiusCap { .. } => "radius_cap",
        Error::CenterHasNoArrow => "center_has_no_arrow",
        Error::FrontierLimited => "frontier_limited",
        Error::MalformedRelativeAddress(_) => "malformed_relative_address",
        Error::InvalidRule(_) => "invalid_rule",
        Error::StateOutOfRange { .. } => "state_out_of_range",
        Error::InvalidConfiguration(_) => "invalid_configuration",
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> ApiError {
        let status = match e {
            Error::GridMismatch { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError { status, reason: reason_code(&e), message: e.to_string() }
    }
}

impl From<QueryRejection> for ApiError {
    fn from(e: QueryRejection) -> ApiError {
        ApiError::bad_request("malformed_parameter", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message, "reason": self.reason }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;
type Params = Result<Query<HashMap<String, String>>, QueryRejection>;

fn required<'a>(q: &'a HashMap<String, String>, name: &str) -> Result<&'a str, ApiError> {
    q.get(name)
        .map(String::as_str)
        .ok_or_else(|| ApiError::bad_request("missing_parameter", format!("missing query parameter {name:?}")))
}

fn address(q: &HashMap<String, String>, name: &str) -> Result<Address, ApiError> {
    Ok(required(q, name)?.parse::<Address>()?)
}

fn radius(q: &HashMap<String, String>) -> Result<usize, ApiError> {
    let raw = required(q, "radius")?;
    raw.parse()
        .map_err(|_| ApiError::bad_request("malformed_parameter", format!("radius {raw:?} is not a non-negative integer")))
}

/// Router with every endpoint under `/api/v1`.
pub fn router() -> Router {
    Router::new()
        .route("/api/v1/window", get(window_handler))
        .route("/api/v1/neighbors", get(neighbors_handler))
        .route("/api/v1/path", get(path_handler))
        .route("/api/v1/colors", get(colors_handler))
        .route("/api/v1/ca/step", post(ca_step_handler))
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: &str) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}

async fn window_handler(params: Params) -> ApiResult<WindowResponse> {
    let Query(q) = params?;
    let grid: Grid = required(&q, "grid")?.parse()?;
    let center = match q.get("center") {
        Some(_) => address(&q, "center")?,
        None => Address::center(grid),
    };
    Ok(Json(window(grid, &center, radius(&q)?)?))
}

#[derive(Debug, Serialize)]
pub struct NeighborsResponse {
    pub address: Address,
    /// Indexed by edge; edge 0 faces the father.
    pub neighbors: Vec<Address>,
}

async fn neighbors_handler(params: Params) -> ApiResult<NeighborsResponse> {
    let Query(q) = params?;
    let a = address(&q, "address")?;
    Ok(Json(NeighborsResponse { neighbors: neighbors(&a), address: a }))
}

#[derive(Debug, Serialize)]
pub struct PathResponse {
    pub from: Address,
    pub to: Address,
    pub distance: usize,
    /// Both ends included.
    pub path: Vec<Address>,
}

async fn path_handler(params: Params) -> ApiResult<PathResponse> {
    let Query(q) = params?;
    let (from, to) = (address(&q, "from")?, address(&q, "to")?);
    if from.grid != to.grid {
        return Err(Error::GridMismatch { left: from.grid.tag(), right: to.grid.tag() }.into());
    }
    let path = shortest_path(&from, &to)?;
    Ok(Json(PathResponse { distance: path.len() - 1, from, to, path }))
}

#[derive(Debug, Serialize)]
pub struct ColorsResponse {
    pub center: Address,
    pub radius: usize,
    pub tiles: Vec<TileColor>,
}

async fn colors_handler(params: Params) -> ApiResult<ColorsResponse> {
    let Query(q) = params?;
    let center = address(&q, "center")?;
    let radius = radius(&q)?;
    let tiles = colors(center.grid, &center, radius)?;
    Ok(Json(ColorsResponse { center, radius, tiles }))
}

#[derive(Debug, Deserialize)]
pub struct CaStepRequest {
    pub rule: RuleFile,
    pub configuration: ConfigurationFile,
    #[serde(default = "one")]
    pub steps: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Serialize)]
pub struct CaStepResponse {
    pub configuration: ConfigurationFile,
    /// Live cells before the first step and after each one.
    pub supports: Vec<usize>,
}

async fn ca_step_handler(body: Bytes) -> ApiResult<CaStepResponse> {
    let req: CaStepRequest =
        serde_json::from_slice(&body).map_err(|e| ApiError::bad_request("malformed_body", e.to_string()))?;
    if req.steps > MAX_CA_STEPS {
        return Err(Error::RadiusCap { radius: req.steps, cap: MAX_CA_STEPS }.into());
    }
    let rule = Rule::from_file(req.rule)?;
    let config = Configuration::from_file(req.configuration)?;
    if rule.arity() != config.grid().p() {
        return Err(ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            reason: "grid_mismatch",
            message: format!("rule has {} neighbors, {} tiles have {}", rule.arity(), config.grid().name(), config.grid().p()),
        });
    }
    // large supports take a while; keep the runtime threads free
    let (last, supports) = tokio::task::spawn_blocking(move || ca::run(&rule, &config, req.steps))
        .await
        .map_err(|e| ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, reason: "internal", message: e.to_string() })??;
    Ok(Json(CaStepResponse { configuration: last.to_file(), supports }))
}
