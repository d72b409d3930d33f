use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use smw_cli::api::{router, AppState};
use smw_cli::session::{EnvDefaults, ModelFile, Session};
use tower::ServiceExt;

fn app(preset: &str) -> axum::Router {
    let file = ModelFile::Preset { preset: preset.into(), window: None, cap: None, p: None };
    router(AppState::new(Session::define(file, EnvDefaults::default()).unwrap(), None))
}

async fn call(app: &axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = req.body(body.map_or(Body::empty(), |b| Body::from(b.to_string()))).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

#[tokio::test]
async fn tube_mutation_endpoint() {
    let app = app("tube 3");
    let (st, out) = call(&app, "POST", "/mutate", Some(json!({"name": "tubeU", "subset": ["s1", "s2"], "dir": "right"}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(out["newName"], "tubeU.R[s1,s2]");
    assert_eq!(out["members"], json!(["s1", "s2", "[s2;s1;s3][1]"]));
    assert_eq!(out["verdicts"]["setup"]["window"], json!([-2, 2]));
    let (st, all) = call(&app, "POST", "/mutate", Some(json!({"name": "tubeU", "subset": ["s1", "s2", "s3"]}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(all["members"], json!(["s1", "s2", "s3"]));
    let (_, list) = call(&app, "GET", "/collections", None).await;
    assert_eq!(list["collections"].as_array().unwrap().len(), 3);
    let (st, g) = call(&app, "GET", "/graph?name=tubeU&depth=1", None).await;
    assert_eq!(st, StatusCode::OK);
    assert!(g["dot"].as_str().unwrap().starts_with("digraph"));
}

#[tokio::test]
async fn loop_theorem_endpoint() {
    let app = app("ky-counterexample");
    let (st, out) = call(&app, "POST", "/theorem1", Some(json!({"name": "loopU", "subset": ["s1"]}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(out["conditions"][3]["status"], "fails");
    let (st, out) = call(&app, "POST", "/mutate", Some(json!({"name": "loopU", "subset": ["s1"]}))).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(out["error"]["code"], "ApproximationMissing");
    let (st, gap) = call(&app, "POST", "/phasegap", Some(json!({"name": "loopU", "subset": ["s1"]}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(gap["verdict"]["status"], "fails");
}

#[tokio::test]
async fn bad_requests_carry_codes() {
    let app = app("a_2");
    let (st, out) = call(&app, "POST", "/theorem1", Some(json!({"name": "nope"}))).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(out["error"]["code"], "UnknownCollection");
    let (st, out) = call(&app, "POST", "/reduce", Some(json!({"name": "a2U", "subset": ["[s1;s2]"]}))).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(out["error"]["code"], "NotSubset");
    let (st, _) = call(&app, "POST", "/mutate", Some(json!({"subset": 3}))).await;
    assert!(st.is_client_error());
}

#[tokio::test]
async fn catalog_and_registry() {
    let app = app("a_2");
    let (st, cat) = call(&app, "GET", "/catalog", None).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(cat["indecs"].as_array().unwrap().len(), 15);
    assert!(cat["arrows"].as_array().unwrap().contains(&json!(["s2", "[s1;s2]"])));
    let (st, _) = call(&app, "POST", "/collections", Some(json!({"name": "mine", "members": ["s2", "s1[-1]"]}))).await;
    assert_eq!(st, StatusCode::OK);
    let (st, out) = call(&app, "POST", "/collections", Some(json!({"name": "mine", "members": ["s2"]}))).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    assert_eq!(out["error"]["code"], "NameTaken");
    let (_, red) = call(&app, "POST", "/reduce", Some(json!({"name": "a2U", "subset": ["s1"]}))).await;
    assert_eq!(red["reduceShiftLift"]["status"], "holds");
    let (_, t) = call(&app, "POST", "/tilt", Some(json!({"name": "a2U", "subset": ["s1"]}))).await;
    assert_eq!(t["newSimples"], json!(["s1[-1]", "[s1;s2]"]));
    let (_, h) = call(&app, "GET", "/history", None).await;
    assert!(h["dot"].as_str().unwrap().contains("a2U.tiltR[s1]"));
}
