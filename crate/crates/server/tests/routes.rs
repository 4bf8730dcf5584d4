use std::sync::Arc;

use gelfand_client::Client;
use gelfand_core::api::{CoeffsRequest, Engine, ErrorBody, Method, MomentsRequest, PairRequest, Subject};
use gelfand_core::pairs::{CosetLabel, PairSpec};
use gelfand_core::partition::Partition;
use gelfand_core::presets::GroupSpec;

async fn client() -> (Client, String) {
    let addr = gelfand_server::spawn_local(Arc::new(Engine::default())).await.unwrap();
    let base = format!("http://{addr}");
    (Client::new(base.clone()), base)
}

#[tokio::test]
async fn health() {
    let (c, _) = client().await;
    assert_eq!(c.health().await.unwrap().status, "ok");
}

#[tokio::test]
async fn coeffs_both_agree_on_s4_b2() {
    let (c, _) = client().await;
    let req = CoeffsRequest { pair: PairSpec::S2nBn { n: 2 }, method: Method::Both, arity: 2 };
    let r = c.coeffs(&req).await.unwrap();
    assert!(r.agree);
    assert_eq!(r.entries.len(), 8);
    let two = CosetLabel::Partition(Partition::new(vec![2]));
    let e = r.entries.iter().find(|e| e.lhs == [two.clone(), two.clone()] && e.rhs == two).unwrap();
    assert_eq!((e.value, e.oracle), (8, Some(8)));
}

#[tokio::test]
async fn group_and_pair_subjects() {
    let (c, _) = client().await;
    let s3 = c.classes(&Subject::group(GroupSpec::symmetric(3))).await.unwrap();
    assert_eq!(s3.classes.iter().map(|c| c.size).collect::<Vec<_>>(), [1, 3, 2]);
    let t = c.chartable(&Subject::pair(PairSpec::S2nBn { n: 2 })).await.unwrap();
    assert_eq!(t.order, 24);
    assert_eq!(t.irreducibles.len(), 5);
    let m = c
        .moments(&MomentsRequest { subject: Subject::group(GroupSpec::symmetric(3)), max_m: 4 })
        .await
        .unwrap();
    let transposition: Vec<&str> = m.rows.iter().filter(|r| r.class == 1).map(|r| r.direct.as_str()).collect();
    assert_eq!(transposition, ["0", "1/3", "0", "1/3"]);
}

#[tokio::test]
async fn pair_operations() {
    let (c, _) = client().await;
    let gx = PairRequest { pair: PairSpec::Gxgopp { group: GroupSpec::symmetric(3) } };
    assert!(c.gelfand_check(&gx).await.unwrap().certificate.gelfand);
    let strahov = PairRequest { pair: PairSpec::SnSn1 { n: 4 } };
    assert_eq!(c.cosets(&strahov).await.unwrap().cosets.len(), 7);
    let z = c.zonal(&PairRequest { pair: PairSpec::S2nBn { n: 3 } }).await.unwrap();
    assert_eq!(z.omega.len(), 3);
    assert!(z.exact.is_some());
    let v = c.verify(&PairRequest { pair: PairSpec::S2nBn { n: 3 } }).await.unwrap();
    assert!(v.passed, "{:?}", v.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
}

#[tokio::test]
async fn errors_are_structured() {
    let (c, base) = client().await;
    let err = c.cosets(&PairRequest { pair: PairSpec::S2nBn { n: 9 } }).await.unwrap_err();
    assert_eq!(err.kind(), "invalid");

    let control = PairSpec::Custom {
        group: GroupSpec::symmetric(4),
        subgroup: GroupSpec { degree: 4, generators: vec!["(1 2)".into()], name: None },
    };
    let err = c.zonal(&PairRequest { pair: control }).await.unwrap_err();
    assert_eq!(err.kind(), "invalid");

    let raw = raw_post(&base, "/v1/classes", "{not json").await;
    assert_eq!(raw.0, 400);
    let body: ErrorBody = serde_json::from_str(&raw.1).unwrap();
    assert_eq!(body.error.kind, "invalid");
}

#[tokio::test]
async fn overflow_maps_to_its_kind() {
    let addr = gelfand_server::spawn_local(Arc::new(Engine::new(10))).await.unwrap();
    let c = Client::new(format!("http://{addr}"));
    let err = c.classes(&Subject::group(GroupSpec::symmetric(4))).await.unwrap_err();
    assert_eq!(err.kind(), "overflow");
}

/// A raw request, bypassing the typed client.
async fn raw_post(base: &str, path: &str, body: &str) -> (u16, String) {
    let resp = reqwest::Client::new()
        .post(format!("{base}{path}"))
        .header("content-type", "application/json")
        .body(body.to_string())
        .send()
        .await
        .unwrap();
    (resp.status().as_u16(), resp.text().await.unwrap())
}
