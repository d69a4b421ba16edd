//! JSON-in, JSON-out bindings for the browser page in `www/`.

use scottbf::order::{lo_bf_leq, parse_term, JumpSpec, PointedTerm};
use scottbf::rank::{scott_rank_term, RankCaps};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Highest level the page may request; keeps a click below a few seconds.
pub const MAX_LEVEL: u32 = 6;

fn fail(msg: impl ToString) -> Value {
    json!({ "ok": false, "error": msg.to_string() })
}

pub fn describe_term(text: &str) -> Value {
    match parse_term(text) {
        Ok(t) => {
            let ty = t.order_type();
            json!({ "ok": true, "normal_form": t.to_string(), "atoms": ty.atoms().len() })
        }
        Err(e) => fail(e),
    }
}

pub fn compare(left: &str, right: &str, level: u32, base: u32) -> Value {
    if level + base > MAX_LEVEL {
        return fail(format!("level + base is limited to {MAX_LEVEL} here"));
    }
    let (l, r) = match (parse_term(left), parse_term(right)) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) => return fail(format!("left: {e}")),
        (_, Err(e)) => return fail(format!("right: {e}")),
    };
    let (l, r) = (
        PointedTerm::bare(l.order_type()),
        PointedTerm::bare(r.order_type()),
    );
    let fwd = lo_bf_leq(&l, &r, level, JumpSpec::new(base));
    let back = lo_bf_leq(&r, &l, level, JumpSpec::new(base));
    match (fwd, back) {
        (Ok(f), Ok(b)) => json!({
            "ok": true,
            "left_leq_right": f.holds,
            "right_leq_left": b.holds,
            "horizon_limited": f.horizon_limited || b.horizon_limited,
        }),
        (Err(e), _) | (_, Err(e)) => fail(e),
    }
}

pub fn rank(text: &str, base: u32) -> Value {
    let t = match parse_term(text) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let r = scott_rank_term(&t, JumpSpec::new(base), RankCaps::default());
    json!({
        "ok": true,
        "subject": r.subject,
        "rank": r.display_rank(),
        "witness": r.witness,
        "trace": r.trace,
        "horizon_limited": r.flags.horizon_limited,
    })
}

#[wasm_bindgen(js_name = parseTerm)]
pub fn parse_term_js(text: &str) -> String {
    describe_term(text).to_string()
}

#[wasm_bindgen]
pub fn bf(left: &str, right: &str, level: u32, base: u32) -> String {
    compare(left, right, level, base).to_string()
}

#[wasm_bindgen(js_name = scottRank)]
pub fn scott_rank(text: &str, base: u32) -> String {
    rank(text, base).to_string()
}
