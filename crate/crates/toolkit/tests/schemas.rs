//! Published schemas stay in step with what the service returns.

use axum::body::Body;
use axum::http::Request;
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

use hypergrid_toolkit::http::router;

fn schema(name: &str) -> Value {
    let path = format!("{}/../../docs/schemas/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

async fn get(uri: &str) -> Value {
    let resp = router().oneshot(Request::get(uri).body(Body::empty()).unwrap()).await.unwrap();
    serde_json::from_slice(&resp.into_body().collect().await.unwrap().to_bytes()).unwrap()
}

/// Keys of `value` are exactly the schema's properties, and all required ones are present.
fn conforms(value: &Value, schema: &Value) -> bool {
    let props = schema["properties"].as_object().unwrap();
    let obj = value.as_object().unwrap();
    let required = schema["required"].as_array().unwrap();
    obj.keys().all(|k| props.contains_key(k)) && required.iter().all(|r| obj.contains_key(r.as_str().unwrap()))
}

#[tokio::test]
async fn responses_match_schemas() {
    let cases = [
        ("window", "/api/v1/window?grid=h7&center=H7:2:1001&radius=1"),
        ("neighbors", "/api/v1/neighbors?address=P5:1:10"),
        ("path", "/api/v1/path?from=P5:1:10&to=P5:3:1"),
        ("colors", "/api/v1/colors?center=P5:C&radius=1"),
        ("error", "/api/v1/colors?center=P5:C"),
    ];
    for (name, uri) in cases {
        let s = schema(name);
        let v = get(uri).await;
        assert!(conforms(&v, &s), "{name}: {v}");
    }
    let tile = &get("/api/v1/window?grid=p5&radius=1").await["tiles"][0];
    assert!(conforms(tile, &schema("window")["properties"]["tiles"]["items"]));
}

#[test]
fn every_schema_parses() {
    for name in ["window", "neighbors", "path", "colors", "ca_step_request", "ca_step_response", "rule_file", "configuration_file", "error"] {
        let s = schema(name);
        assert_eq!(s["title"], name);
    }
}
