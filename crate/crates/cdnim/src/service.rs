//! Human-vs-engine game sessions over HTTP + JSON.
//!
//! Endpoints:
//!
//! | method | path                    | body                                  |
//! |--------|-------------------------|---------------------------------------|
//! | POST   | `/sessions`             | `{"piles": [6,3,2], "human_first": true}` |
//! | GET    | `/sessions/{id}`        |                                       |
//! | POST   | `/sessions/{id}/moves`  | `{"index": 1, "amount": 1}`           |
//! | GET    | `/sessions/{id}/hint`   |                                       |
//!
//! Every success response is a [`SessionView`]. The `sg` and `hint` fields are
//! only filled in by the hint endpoint or when `?hint=true` is passed. Errors
//! are `{"error": {"code": ..., "message": ...}}`.

use std::collections::HashMap;
use std::fmt;
use std::io;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cdnim_core::strategy::best_move;
use cdnim_core::{apply_move, sg_formula, Error as CoreError, Grundy, Move, MoveError, Position};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tower_http::cors::CorsLayer;

use crate::wire::{move_records, AdviceRecord, MoveRecord, WireMove};

pub const DEFAULT_CAPACITY: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Human,
    Engine,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::Human => Side::Engine,
            Side::Engine => Side::Human,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ongoing,
    Finished,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ServiceError {
    BadRequest(String),
    InvalidPosition(String),
    GameOver,
    NotFound(String),
    NotYourTurn,
    GameFinished,
    IllegalMove(MoveError),
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::BadRequest(_) => "bad_request",
            ServiceError::InvalidPosition(_) => "invalid_position",
            ServiceError::GameOver => "game_over",
            ServiceError::NotFound(_) => "not_found",
            ServiceError::NotYourTurn => "not_your_turn",
            ServiceError::GameFinished => "game_finished",
            ServiceError::IllegalMove(_) => "illegal_move",
        }
    }

    pub fn status(&self) -> StatusCode {
        match self {
            ServiceError::BadRequest(_)
            | ServiceError::InvalidPosition(_)
            | ServiceError::GameOver => StatusCode::BAD_REQUEST,
            ServiceError::NotFound(_) => StatusCode::NOT_FOUND,
            ServiceError::NotYourTurn | ServiceError::GameFinished => StatusCode::CONFLICT,
            ServiceError::IllegalMove(_) => StatusCode::UNPROCESSABLE_ENTITY,
        }
    }
}

impl fmt::Display for ServiceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ServiceError::BadRequest(m) => write!(f, "bad request: {m}"),
            ServiceError::InvalidPosition(m) => write!(f, "invalid position: {m}"),
            ServiceError::GameOver => {
                f.write_str("the starting position is already the end position")
            }
            ServiceError::NotFound(id) => write!(f, "no session with id {id}"),
            ServiceError::NotYourTurn => f.write_str("it is not the human's turn"),
            ServiceError::GameFinished => f.write_str("the game is finished"),
            ServiceError::IllegalMove(e) => write!(f, "illegal move: {e}"),
        }
    }
}

impl std::error::Error for ServiceError {}

#[derive(Serialize)]
struct ErrorBody {
    error: ErrorDetail,
}

#[derive(Serialize)]
struct ErrorDetail {
    code: &'static str,
    message: String,
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            error: ErrorDetail {
                code: self.code(),
                message: self.to_string(),
            },
        };
        (self.status(), Json(body)).into_response()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistoryEntry {
    pub mover: Side,
    pub mv: Move,
}

#[derive(Debug, Clone)]
pub struct GameSession {
    pub id: String,
    pub initial: Position,
    pub position: Position,
    pub history: Vec<HistoryEntry>,
    pub to_move: Side,
    pub status: Status,
    pub winner: Option<Side>,
}

impl GameSession {
    /// Starts a game; if the engine moves first it plays immediately.
    pub fn start(id: String, position: Position, human_first: bool) -> Result<Self, ServiceError> {
        if position.is_terminal() {
            return Err(ServiceError::GameOver);
        }
        let mut session = GameSession {
            id,
            initial: position.clone(),
            position,
            history: Vec::new(),
            to_move: if human_first {
                Side::Human
            } else {
                Side::Engine
            },
            status: Status::Ongoing,
            winner: None,
        };
        session.engine_turn();
        Ok(session)
    }

    fn play(&mut self, side: Side, mv: Move) -> Result<(), ServiceError> {
        if self.status == Status::Finished {
            return Err(ServiceError::GameFinished);
        }
        if self.to_move != side {
            return Err(ServiceError::NotYourTurn);
        }
        self.position = apply_move(&self.position, mv).map_err(|e| match e {
            CoreError::IllegalMove(e) => ServiceError::IllegalMove(e),
            other => ServiceError::BadRequest(other.to_string()),
        })?;
        self.history.push(HistoryEntry { mover: side, mv });
        self.to_move = side.other();
        if self.position.is_terminal() {
            self.status = Status::Finished;
            self.winner = Some(side);
        }
        Ok(())
    }

    fn engine_turn(&mut self) {
        if self.status == Status::Ongoing && self.to_move == Side::Engine {
            let mv = best_move(&self.position)
                .engine_move()
                .expect("nonterminal position has a move");
            self.play(Side::Engine, mv).expect("engine move is legal");
        }
    }

    /// Applies the human's move and, unless the game ended, the engine's reply.
    pub fn human_move(&mut self, mv: WireMove) -> Result<(), ServiceError> {
        if self.status == Status::Finished {
            return Err(ServiceError::GameFinished);
        }
        let mv = mv
            .to_core(self.position.len())
            .map_err(ServiceError::IllegalMove)?;
        self.play(Side::Human, mv)?;
        self.engine_turn();
        Ok(())
    }

    /// Recomputes the current position from the initial one and the history.
    pub fn replay(&self) -> Result<Position, CoreError> {
        self.history
            .iter()
            .try_fold(self.initial.clone(), |p, h| apply_move(&p, h.mv))
    }

    pub fn view(&self, reveal: bool) -> SessionView {
        let mut position = self.initial.clone();
        let history = self
            .history
            .iter()
            .map(|h| {
                position = apply_move(&position, h.mv).expect("history is legal");
                HistoryRecord {
                    mover: h.mover,
                    index: h.mv.index + 1,
                    amount: h.mv.amount,
                    position: position.piles().to_vec(),
                }
            })
            .collect();
        SessionView {
            id: self.id.clone(),
            initial: self.initial.piles().to_vec(),
            position: self.position.piles().to_vec(),
            legal_moves: move_records(&self.position),
            to_move: self.to_move,
            status: self.status,
            winner: self.winner,
            history,
            sg: reveal.then(|| sg_formula(&self.position)),
            hint: reveal.then(|| AdviceRecord::new(&self.position, &best_move(&self.position))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryRecord {
    pub mover: Side,
    pub index: usize,
    pub amount: u64,
    /// Position after the move.
    pub position: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub initial: Vec<u64>,
    pub position: Vec<u64>,
    pub legal_moves: Vec<MoveRecord>,
    pub to_move: Side,
    pub status: Status,
    pub winner: Option<Side>,
    pub history: Vec<HistoryRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sg: Option<Grundy>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hint: Option<AdviceRecord>,
}

struct Slot {
    last_used: u64,
    session: Arc<Mutex<GameSession>>,
}

#[derive(Default)]
struct Slots {
    map: HashMap<String, Slot>,
    clock: u64,
}

/// In-memory sessions with least-recently-used eviction.
pub struct SessionStore {
    capacity: usize,
    slots: Mutex<Slots>,
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::new(DEFAULT_CAPACITY)
    }
}

impl SessionStore {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0);
        SessionStore {
            capacity,
            slots: Mutex::new(Slots::default()),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.lock().expect("store lock").map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn handle(&self, id: &str) -> Result<Arc<Mutex<GameSession>>, ServiceError> {
        let mut slots = self.slots.lock().expect("store lock");
        slots.clock += 1;
        let now = slots.clock;
        let slot = slots
            .map
            .get_mut(id)
            .ok_or_else(|| ServiceError::NotFound(id.to_owned()))?;
        slot.last_used = now;
        Ok(slot.session.clone())
    }

    fn with_session<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut GameSession) -> T,
    ) -> Result<T, ServiceError> {
        let handle = self.handle(id)?;
        let mut session = handle.lock().expect("session lock");
        Ok(f(&mut session))
    }

    pub fn create(&self, piles: Vec<u64>, human_first: bool) -> Result<SessionView, ServiceError> {
        let position =
            Position::new(piles).map_err(|e| ServiceError::InvalidPosition(e.to_string()))?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = GameSession::start(id.clone(), position, human_first)?;
        let view = session.view(false);
        let mut slots = self.slots.lock().expect("store lock");
        if slots.map.len() >= self.capacity {
            if let Some(oldest) = slots
                .map
                .iter()
                .min_by_key(|(_, s)| s.last_used)
                .map(|(k, _)| k.clone())
            {
                slots.map.remove(&oldest);
            }
        }
        slots.clock += 1;
        let last_used = slots.clock;
        slots.map.insert(
            id,
            Slot {
                last_used,
                session: Arc::new(Mutex::new(session)),
            },
        );
        Ok(view)
    }

    pub fn get(&self, id: &str, reveal: bool) -> Result<SessionView, ServiceError> {
        self.with_session(id, |s| s.view(reveal))
    }

    pub fn play(&self, id: &str, mv: WireMove, reveal: bool) -> Result<SessionView, ServiceError> {
        self.with_session(id, |s| s.human_move(mv).map(|()| s.view(reveal)))?
    }

    pub fn hint(&self, id: &str) -> Result<SessionView, ServiceError> {
        self.get(id, true)
    }

    pub fn snapshot(&self, id: &str) -> Result<GameSession, ServiceError> {
        self.with_session(id, |s| s.clone())
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    pub piles: Vec<u64>,
    #[serde(default = "default_true")]
    pub human_first: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Default, Deserialize)]
pub struct RevealQuery {
    #[serde(default)]
    pub hint: bool,
}

type Shared = Arc<SessionStore>;

fn reveal(q: Result<Query<RevealQuery>, QueryRejection>) -> Result<bool, ServiceError> {
    q.map(|Query(q)| q.hint)
        .map_err(|e| ServiceError::BadRequest(e.body_text()))
}

async fn create(
    State(store): State<Shared>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), ServiceError> {
    let Json(req) = body.map_err(|e| ServiceError::BadRequest(e.body_text()))?;
    let view = store.create(req.piles, req.human_first)?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(
    State(store): State<Shared>,
    Path(id): Path<String>,
    q: Result<Query<RevealQuery>, QueryRejection>,
) -> Result<Json<SessionView>, ServiceError> {
    Ok(Json(store.get(&id, reveal(q)?)?))
}

async fn play(
    State(store): State<Shared>,
    Path(id): Path<String>,
    q: Result<Query<RevealQuery>, QueryRejection>,
    body: Result<Json<WireMove>, JsonRejection>,
) -> Result<Json<SessionView>, ServiceError> {
    let reveal = reveal(q)?;
    let Json(mv) = body.map_err(|e| ServiceError::BadRequest(e.body_text()))?;
    Ok(Json(store.play(&id, mv, reveal)?))
}

async fn hint(
    State(store): State<Shared>,
    Path(id): Path<String>,
) -> Result<Json<SessionView>, ServiceError> {
    Ok(Json(store.hint(&id)?))
}

pub fn router(store: Shared) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(play))
        .route("/sessions/{id}/hint", get(hint))
        .layer(CorsLayer::permissive())
        .with_state(store)
}

pub async fn bind(addr: SocketAddr) -> io::Result<TcpListener> {
    TcpListener::bind(addr).await
}

/// Serves until Ctrl-C.
pub async fn serve(listener: TcpListener, store: Shared) -> io::Result<()> {
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
