//! WebAssembly bindings for the demo page in `www/`. Every export returns a
//! JSON string; failures come back as `{"error": kind, "message": text}`.

use multishift::counting::count_formula_with;
use multishift::generate::generate_with;
use multishift::graphs::{arborescence_count, build_word_graph_with, euler_count_best};
use multishift::{
    check_wrap, is_multishift_db, modulo_factors, Algorithm, DbParams, Error, GreedyPreference,
    Limits,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Longest sequence the page will render.
pub const MAX_DEMO_SYMBOLS: u64 = 200_000;
/// Largest graph the page will draw.
pub const MAX_DEMO_VERTICES: u64 = 256;
pub const MAX_DEMO_ARCS: u64 = 2048;
/// Counts above this many digits are shown only as a logarithm.
pub const MAX_DEMO_DIGITS: u64 = 5000;

fn demo_limits() -> Limits {
    Limits {
        max_symbols: MAX_DEMO_SYMBOLS,
        max_digits: MAX_DEMO_DIGITS,
        max_graph_vertices: MAX_DEMO_VERTICES,
        ..Limits::default()
    }
}

fn respond(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.kind(), "message": e.to_string() }).to_string(),
    }
}

fn windows_json(w: &multishift::Word, p: DbParams) -> Result<Value, Error> {
    let windows = modulo_factors(w, p.m, p.n)?;
    Ok(Value::Array(
        windows
            .iter()
            .enumerate()
            .map(|(i, f)| json!({ "start": i * p.m + 1, "word": f.render(p.a) }))
            .collect(),
    ))
}

/// Generates a sequence and returns it with its modulo-`m` windows.
#[wasm_bindgen]
pub fn sequence(a: u32, m: usize, n: usize, algorithm: &str, prefer: &str) -> String {
    respond((|| {
        let p = DbParams::new(a, m, n)?;
        let alg: Algorithm = algorithm.parse()?;
        let pref: GreedyPreference = prefer.parse()?;
        let w = generate_with(p, alg, pref, &demo_limits())?;
        let report = is_multishift_db(&w, p)?;
        let wraps = if n > m {
            Some(check_wrap(&w, p)?)
        } else {
            None
        };
        Ok(json!({
            "algorithm": alg.resolve(p).name(),
            "word": w.render(a),
            "length": w.len(),
            "ok": report.ok,
            "wraps": wraps,
            "windows": windows_json(&w, p)?,
        }))
    })())
}

/// Checks a typed word and returns the verification report with windows.
#[wasm_bindgen]
pub fn verify(a: u32, m: usize, n: usize, word: &str) -> String {
    respond((|| {
        let p = DbParams::new(a, m, n)?;
        let w = multishift::Word::parse(word, a)?;
        if w.len() as u64 > MAX_DEMO_SYMBOLS {
            return Err(Error::Guard {
                what: "word length",
                requested: w.len().to_string(),
                limit: MAX_DEMO_SYMBOLS.to_string(),
            });
        }
        let mut v = is_multishift_db(&w, p)?.to_json();
        v["windows"] = if w.len() >= n {
            windows_json(&w, p)?
        } else {
            json!([])
        };
        Ok(v)
    })())
}

/// Number of sequences, exact when it has at most [`MAX_DEMO_DIGITS`] digits.
#[wasm_bindgen]
pub fn count(a: u32, m: usize, n: usize) -> String {
    respond((|| {
        let p = DbParams::new(a, m, n)?;
        Ok(count_formula_with(p, &demo_limits())?.to_json())
    })())
}

/// The word graph `G(m, n)` with vertex and arc labels for drawing.
#[wasm_bindgen]
pub fn word_graph(a: u32, m: usize, n: usize) -> String {
    respond((|| {
        let g = build_word_graph_with(a, m, n, &demo_limits())?;
        if g.arc_count() > MAX_DEMO_ARCS {
            return Err(Error::Guard {
                what: "arcs to draw",
                requested: g.arc_count().to_string(),
                limit: MAX_DEMO_ARCS.to_string(),
            });
        }
        let vertices = (0..g.vertex_count())
            .map(|v| g.vertex_label(v).map(|w| w.render(a)))
            .collect::<Result<Vec<_>, _>>()?;
        let arcs = (0..g.arc_count())
            .map(|e| {
                g.arc_label(e)
                    .map(|w| json!({ "tail": g.tail(e), "head": g.head(e), "label": w.render(a) }))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let optional = |r: Result<multishift::BigCount, Error>| r.ok().map(|x| x.to_string());
        Ok(json!({
            "vertices": vertices,
            "arcs": arcs,
            "degree": g.regular_degree(),
            "connected": g.is_connected(),
            "arborescences": optional(arborescence_count(&g)),
            "euler_tours": optional(euler_count_best(&g)),
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn errors_are_json() {
        let v = parse(sequence(2, 0, 3, "auto", "largest"));
        assert_eq!(v["error"], "domain");
        let v = parse(sequence(2, 2, 3, "sideways", "largest"));
        assert_eq!(v["error"], "domain");
    }

    #[test]
    fn demo_guard_applies() {
        let v = parse(sequence(2, 2, 20, "auto", "largest"));
        assert_eq!(v["error"], "guard");
    }
}
