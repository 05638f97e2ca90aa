use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use cdnim::service::{router, SessionStore, SessionView, Side, Status};
use cdnim::wire::WireMove;
use cdnim_core::oracle::{sg_oracle, MemoTable};
use cdnim_core::{sg_formula, Position};
use http_body_util::BodyExt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(Arc::new(SessionStore::default()))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (
        status,
        serde_json::from_slice(&bytes).unwrap_or(Value::Null),
    )
}

fn view(v: Value) -> SessionView {
    serde_json::from_value(v).unwrap()
}

#[tokio::test]
async fn create_get_move_hint_round_trip() {
    let app = app();
    let (status, body) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({"piles": [6, 3, 2], "human_first": true})),
    )
    .await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["position"], json!([6, 3, 2]));
    assert_eq!(body["to_move"], "human");
    assert_eq!(body["status"], "ongoing");
    assert!(body["winner"].is_null());
    assert!(body.get("sg").is_none());
    assert!(body.get("hint").is_none());
    let moves: Vec<Value> = body["legal_moves"].as_array().unwrap().clone();
    assert_eq!(
        moves,
        vec![
            json!({"index": 1, "amount": 1, "successor": [5, 3, 2]}),
            json!({"index": 2, "amount": 1, "successor": [6, 2, 2]}),
            json!({"index": 3, "amount": 1, "successor": [6, 3, 1]}),
        ]
    );
    let id = body["id"].as_str().unwrap().to_owned();

    let (status, after) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/moves"),
        Some(json!({"index": 1, "amount": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let history = after["history"].as_array().unwrap();
    assert_eq!(history.len(), 2);
    assert_eq!(history[0]["mover"], "human");
    assert_eq!(history[0]["position"], json!([5, 3, 2]));
    assert_eq!(history[1]["mover"], "engine");

    let (_, got) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(got, after);

    let (status, hinted) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(hinted["sg"].is_u64());
    assert!(hinted["hint"]["status"].is_string());

    let (_, revealed) = call(&app, "GET", &format!("/sessions/{id}?hint=true"), None).await;
    assert_eq!(revealed, hinted);
}

#[tokio::test]
async fn error_codes() {
    let app = app();
    let cases = [
        (
            json!({"piles": [0], "human_first": true}),
            StatusCode::BAD_REQUEST,
            "game_over",
        ),
        (
            json!({"piles": []}),
            StatusCode::BAD_REQUEST,
            "invalid_position",
        ),
        (
            json!({"piles": [-1]}),
            StatusCode::BAD_REQUEST,
            "bad_request",
        ),
        (
            json!({"stones": [1]}),
            StatusCode::BAD_REQUEST,
            "bad_request",
        ),
    ];
    for (body, status, code) in cases {
        let (s, b) = call(&app, "POST", "/sessions", Some(body.clone())).await;
        assert_eq!(
            (s, b["error"]["code"].as_str().unwrap()),
            (status, code),
            "{body}"
        );
        assert!(b["error"]["message"].is_string());
    }

    let (s, b) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    assert_eq!(b["error"]["code"], "not_found");
    let (s, _) = call(&app, "GET", "/sessions/nope/hint", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);

    let (_, b) = call(&app, "POST", "/sessions", Some(json!({"piles": [6, 2, 2]}))).await;
    let id = b["id"].as_str().unwrap().to_owned();
    let uri = format!("/sessions/{id}/moves");
    let (s, b) = call(&app, "POST", &uri, Some(json!({"index": 1, "amount": 4}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(b["error"]["code"], "illegal_move");
    let (s, _) = call(&app, "POST", &uri, Some(json!({"index": 9, "amount": 1}))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    let (s, b) = call(&app, "POST", &uri, Some(json!({"index": "one"}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(b["error"]["code"], "bad_request");

    let (_, b) = call(&app, "POST", "/sessions", Some(json!({"piles": [1]}))).await;
    let uri = format!("/sessions/{}/moves", b["id"].as_str().unwrap());
    let (_, b) = call(&app, "POST", &uri, Some(json!({"index": 1, "amount": 1}))).await;
    assert_eq!(b["status"], "finished");
    assert_eq!(b["winner"], "human");
    let (s, b) = call(&app, "POST", &uri, Some(json!({"index": 1, "amount": 1}))).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert_eq!(b["error"]["code"], "game_finished");
}

#[tokio::test]
async fn engine_first_from_zero_value_start() {
    let app = app();
    let (_, b) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({"piles": [2, 2], "human_first": false})),
    )
    .await;
    let v = view(b);
    assert_eq!(v.history.len(), 1);
    assert_eq!(v.history[0].mover, Side::Engine);
    let p = Position::new(v.position).unwrap();
    assert!(sg_formula(&p) > 0);
}

fn random_start(rng: &mut StdRng, want_zero: bool, max_piles: usize, max_size: u64) -> Vec<u64> {
    loop {
        let m = rng.random_range(1..=max_piles);
        let piles: Vec<u64> = (0..m).map(|_| rng.random_range(0..=max_size)).collect();
        let p = Position::new(piles.clone()).unwrap();
        if !p.is_terminal() && (sg_formula(&p) == 0) == want_zero {
            return piles;
        }
    }
}

/// Human policy for a scripted adversary: picks one of the offered moves.
type Policy = fn(&SessionView, &mut StdRng, &mut MemoTable) -> WireMove;

fn random_legal(v: &SessionView, rng: &mut StdRng, _: &mut MemoTable) -> WireMove {
    let m = &v.legal_moves[rng.random_range(0..v.legal_moves.len())];
    WireMove {
        index: m.index,
        amount: m.amount,
    }
}

fn greedy_largest(v: &SessionView, _: &mut StdRng, _: &mut MemoTable) -> WireMove {
    let m = v
        .legal_moves
        .iter()
        .max_by_key(|m| (m.amount, std::cmp::Reverse(m.index)))
        .unwrap();
    WireMove {
        index: m.index,
        amount: m.amount,
    }
}

/// Moves to a successor whose brute-force value is 0 when one exists.
fn oracle_optimal(v: &SessionView, rng: &mut StdRng, memo: &mut MemoTable) -> WireMove {
    v.legal_moves
        .iter()
        .find(|m| sg_oracle(&Position::new(m.successor.clone()).unwrap(), memo) == 0)
        .map(|m| WireMove {
            index: m.index,
            amount: m.amount,
        })
        .unwrap_or_else(|| random_legal(v, rng, memo))
}

async fn play_out(
    app: &Router,
    piles: Vec<u64>,
    human_first: bool,
    policy: Policy,
    rng: &mut StdRng,
    memo: &mut MemoTable,
) -> SessionView {
    let (s, b) = call(
        app,
        "POST",
        "/sessions",
        Some(json!({"piles": piles, "human_first": human_first})),
    )
    .await;
    assert_eq!(s, StatusCode::CREATED);
    let mut v = view(b);
    while v.status == Status::Ongoing {
        assert_eq!(v.to_move, Side::Human);
        let mv = policy(&v, rng, memo);
        let (s, b) = call(
            app,
            "POST",
            &format!("/sessions/{}/moves", v.id),
            Some(json!(mv)),
        )
        .await;
        assert_eq!(s, StatusCode::OK);
        v = view(b);
    }
    assert!(v.legal_moves.is_empty());
    assert!(v.position.iter().all(|&n| n == 0));
    v
}

#[tokio::test]
async fn engine_never_loses_from_winning_start() {
    let app = app();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut memo = MemoTable::new();
    for policy in [random_legal as Policy, greedy_largest] {
        for _ in 0..200 {
            let start = random_start(&mut rng, false, 4, 40);
            let v = play_out(&app, start.clone(), false, policy, &mut rng, &mut memo).await;
            assert_eq!(v.winner, Some(Side::Engine), "start {start:?}");
        }
    }
}

#[tokio::test]
async fn optimal_human_beats_engine_from_zero_start() {
    let app = app();
    let mut rng = StdRng::seed_from_u64(7);
    let mut memo = MemoTable::new();
    for _ in 0..100 {
        // Small starts keep the brute-force oracle cheap.
        let start = random_start(&mut rng, true, 3, 16);
        let v = play_out(
            &app,
            start.clone(),
            false,
            oracle_optimal,
            &mut rng,
            &mut memo,
        )
        .await;
        assert_eq!(v.winner, Some(Side::Human), "start {start:?}");
    }
}

/// A thin client holding only the session id and the last response.
#[tokio::test]
async fn headless_client_view_matches_server_after_every_step() {
    let app = app();
    let (_, b) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({"piles": [12, 9, 6], "human_first": true})),
    )
    .await;
    let mut last = b;
    let id = last["id"].as_str().unwrap().to_owned();
    loop {
        let (_, fresh) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
        assert_eq!(fresh, last);
        if last["status"] == "finished" {
            assert!(last["winner"].is_string());
            assert!(last["legal_moves"].as_array().unwrap().is_empty());
            break;
        }
        let (_, hinted) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
        let hint = &hinted["hint"];
        let pick = if hint["move"].is_object() {
            &hint["move"]
        } else {
            &hint["fallback"]
        };
        let before = last["history"].as_array().unwrap().len();
        let (s, b) = call(
            &app,
            "POST",
            &format!("/sessions/{id}/moves"),
            Some(json!({"index": pick["index"], "amount": pick["amount"]})),
        )
        .await;
        assert_eq!(s, StatusCode::OK);
        let after = b["history"].as_array().unwrap().len();
        assert!(after == before + 2 || (after == before + 1 && b["status"] == "finished"));
        last = b;
    }
    // The human took every hinted move from a winning start.
    assert_eq!(last["winner"], "human");
}

#[test]
fn concurrent_moves_serialize_per_session() {
    let store = Arc::new(SessionStore::default());
    let id = store
        .create(vec![1 << 20, 3 << 18, 5 << 10], true)
        .unwrap()
        .id;
    let handles: Vec<_> = (0..8)
        .map(|t| {
            let store = store.clone();
            let id = id.clone();
            std::thread::spawn(move || {
                let mut ok = 0;
                for _ in 0..50 {
                    let v = store.get(&id, false).unwrap();
                    if v.status == Status::Finished {
                        break;
                    }
                    let m = &v.legal_moves[t % v.legal_moves.len()];
                    // Stale snapshots may make the move illegal; that must be rejected cleanly.
                    if store
                        .play(
                            &id,
                            WireMove {
                                index: m.index,
                                amount: m.amount,
                            },
                            false,
                        )
                        .is_ok()
                    {
                        ok += 1;
                    }
                }
                ok
            })
        })
        .collect();
    let accepted: usize = handles.into_iter().map(|h| h.join().unwrap()).sum();
    let s = store.snapshot(&id).unwrap();
    assert_eq!(s.replay().unwrap(), s.position);
    let human_moves = s.history.iter().filter(|h| h.mover == Side::Human).count();
    assert_eq!(human_moves, accepted);
    for pair in s.history.chunks(2) {
        assert_eq!(pair[0].mover, Side::Human);
        if let Some(e) = pair.get(1) {
            assert_eq!(e.mover, Side::Engine);
        }
    }
}
