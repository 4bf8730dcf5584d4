//! HTTP/JSON front end for [`gelfand_core::api::Engine`].
//!
//! `GET /health`, and `POST /v1/{op}` for each operation; request and
//! response bodies are the types in [`gelfand_core::api`]. Failures come back
//! as `{"error": {"kind", "message"}}` with a 4xx/5xx status.

use std::future::Future;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use gelfand_core::api::{
    CoeffsRequest, Engine, ErrorBody, ErrorDetail, Health, MomentsRequest, PairRequest, Subject,
};
use gelfand_core::Error;
use serde::de::DeserializeOwned;
use serde::Serialize;
use tokio::net::TcpListener;

pub struct ApiError(ErrorBody);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError((&e).into())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError(ErrorBody {
            error: ErrorDetail {
                kind: "invalid".into(),
                message: e.body_text(),
            },
        })
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self.0.error.kind.as_str() {
            "parse" | "invalid" => StatusCode::BAD_REQUEST,
            "overflow" | "verification" => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(self.0)).into_response()
    }
}

/// Runs `op` on the blocking pool; the computations are CPU bound.
async fn blocking<Req, Resp>(
    engine: Arc<Engine>,
    body: Result<Json<Req>, JsonRejection>,
    op: fn(&Engine, &Req) -> gelfand_core::Result<Resp>,
) -> Result<Json<Resp>, ApiError>
where
    Req: DeserializeOwned + Send + 'static,
    Resp: Serialize + Send + 'static,
{
    let Json(req) = body?;
    let out = tokio::task::spawn_blocking(move || op(&engine, &req))
        .await
        .map_err(|e| Error::Consistency(format!("worker failed: {e}")))??;
    Ok(Json(out))
}

macro_rules! route {
    ($name:ident, $req:ty, $op:path) => {
        async fn $name(
            State(engine): State<Arc<Engine>>,
            body: Result<Json<$req>, JsonRejection>,
        ) -> Result<Json<impl Serialize>, ApiError> {
            blocking(engine, body, $op).await
        }
    };
}

route!(classes, Subject, Engine::classes);
route!(chartable, Subject, Engine::chartable);
route!(cosets, PairRequest, Engine::cosets);
route!(gelfand_check, PairRequest, Engine::gelfand_check);
route!(zonal, PairRequest, Engine::zonal);
route!(coeffs, CoeffsRequest, Engine::coeffs);
route!(moments, MomentsRequest, Engine::moments);
route!(verify, PairRequest, Engine::verify);

async fn health() -> Json<Health> {
    Json(Health::ok())
}

pub fn router(engine: Arc<Engine>) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/v1/classes", post(classes))
        .route("/v1/chartable", post(chartable))
        .route("/v1/cosets", post(cosets))
        .route("/v1/gelfand-check", post(gelfand_check))
        .route("/v1/zonal", post(zonal))
        .route("/v1/coeffs", post(coeffs))
        .route("/v1/moments", post(moments))
        .route("/v1/verify", post(verify))
        .with_state(engine)
}

/// Binds `addr` and returns the bound address with the serving future.
pub async fn bind(
    addr: SocketAddr,
    engine: Arc<Engine>,
) -> std::io::Result<(SocketAddr, impl Future<Output = std::io::Result<()>>)> {
    let listener = TcpListener::bind(addr).await?;
    let local = listener.local_addr()?;
    Ok((local, async move { axum::serve(listener, router(engine)).await }))
}

/// Serves on an ephemeral loopback port in the current runtime; for tests and
/// for the CLI's embedded mode.
pub async fn spawn_local(engine: Arc<Engine>) -> std::io::Result<SocketAddr> {
    let (addr, serve) = bind(SocketAddr::from(([127, 0, 0, 1], 0)), engine).await?;
    tokio::spawn(serve);
    Ok(addr)
}
