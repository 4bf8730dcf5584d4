//! Thin typed client for `gelfand-server`.

use gelfand_core::api::{
    CharTableResponse, ClassesResponse, CoeffsRequest, CoeffsResponse, CosetsResponse, ErrorBody,
    GelfandResponse, Health, MomentsRequest, MomentsResponse, PairRequest, Subject, ZonalResponse,
};
use gelfand_core::verify::Report;
use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    /// The server answered with an error body.
    #[error("{}", .0.error.message)]
    Api(ErrorBody),
    #[error("request failed: {0}")]
    Transport(#[from] reqwest::Error),
}

impl ClientError {
    /// Error kind as reported by the server; transport failures are `internal`.
    pub fn kind(&self) -> &str {
        match self {
            ClientError::Api(b) => &b.error.kind,
            ClientError::Transport(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Debug, Clone)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    /// `base` is e.g. `http://127.0.0.1:7878`.
    pub fn new(base: impl Into<String>) -> Self {
        Client {
            base: base.into().trim_end_matches('/').to_string(),
            http: reqwest::Client::new(),
        }
    }

    async fn decode<T: DeserializeOwned>(resp: reqwest::Response) -> Result<T> {
        if resp.status().is_success() {
            return Ok(resp.json().await?);
        }
        let status = resp.status();
        let text = resp.text().await?;
        Err(ClientError::Api(serde_json::from_str(&text).unwrap_or_else(|_| {
            ErrorBody {
                error: gelfand_core::api::ErrorDetail {
                    kind: "internal".into(),
                    message: format!("{status}: {text}"),
                },
            }
        })))
    }

    async fn post<B: Serialize, T: DeserializeOwned>(&self, op: &str, body: &B) -> Result<T> {
        let resp = self
            .http
            .post(format!("{}/v1/{op}", self.base))
            .json(body)
            .send()
            .await?;
        Self::decode(resp).await
    }

    pub async fn health(&self) -> Result<Health> {
        Self::decode(self.http.get(format!("{}/health", self.base)).send().await?).await
    }

    pub async fn classes(&self, s: &Subject) -> Result<ClassesResponse> {
        self.post("classes", s).await
    }

    pub async fn chartable(&self, s: &Subject) -> Result<CharTableResponse> {
        self.post("chartable", s).await
    }

    pub async fn cosets(&self, r: &PairRequest) -> Result<CosetsResponse> {
        self.post("cosets", r).await
    }

    pub async fn gelfand_check(&self, r: &PairRequest) -> Result<GelfandResponse> {
        self.post("gelfand-check", r).await
    }

    pub async fn zonal(&self, r: &PairRequest) -> Result<ZonalResponse> {
        self.post("zonal", r).await
    }

    pub async fn coeffs(&self, r: &CoeffsRequest) -> Result<CoeffsResponse> {
        self.post("coeffs", r).await
    }

    pub async fn moments(&self, r: &MomentsRequest) -> Result<MomentsResponse> {
        self.post("moments", r).await
    }

    pub async fn verify(&self, r: &PairRequest) -> Result<Report> {
        self.post("verify", r).await
    }
}
