//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Every entry point takes the same JSON config the CLI reads and returns a
//! report (or an error message) as a string.

use fedosov_engine::cli::{self, Command, Overrides};
use wasm_bindgen::prelude::*;

fn command(name: &str) -> Result<Command, String> {
    Ok(match name {
        "star" => Command::Star,
        "momentum" => Command::Momentum,
        "class" => Command::Class,
        "compare" => Command::Compare,
        "verify" => Command::Verify { witness: None },
        other => return Err(format!("unknown command `{other}`")),
    })
}

/// Runs `name` on a config document and returns the pretty-printed report.
pub fn run_report(name: &str, config: &str) -> Result<String, String> {
    let cmd = command(name)?;
    cli::run_config_text(&cmd, config, &Overrides::default())
        .map(|r| r.render())
        .map_err(|e| e.to_string())
}

/// f ⋆ g on flat ℝ² with Ω = c·ν dx¹∧dx², c a rational string.
pub fn star_flat(f: &str, g: &str, order: usize, c: &str) -> Result<String, String> {
    let omega = if c.trim().is_empty() || c.trim() == "0" {
        String::new()
    } else {
        format!(r#", "Omega": [{{ "nu_power": 1, "coeffs": {{ "1,2": {} }} }}]"#, json_string(c))
    };
    let config = format!(
        r#"{{ "dim": 2, "order": {order}, "f": {}, "g": {}{omega} }}"#,
        json_string(f),
        json_string(g)
    );
    run_report("star", &config)
}

fn json_string(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[wasm_bindgen(js_name = runReport)]
pub fn run_report_js(name: &str, config: &str) -> Result<String, JsError> {
    run_report(name, config).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = starFlat)]
pub fn star_flat_js(f: &str, g: &str, order: usize, c: &str) -> Result<String, JsError> {
    star_flat(f, g, order, c).map_err(|e| JsError::new(&e))
}
