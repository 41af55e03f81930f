//! Plain-text tables for `--table`. Commands without a table layout fall
//! back to pretty JSON.

use serde_json::Value;

fn row(label: &str, v: &Value) -> String {
    let cells: Vec<String> = v
        .as_array()
        .map(|a| a.iter().map(|x| format!("{:>6}", x.to_string())).collect())
        .unwrap_or_default();
    format!("{label:<10}{}\n", cells.join(""))
}

const MODE_ROWS: [(&str, &str); 9] = [
    ("all_zero_modes", "zero modes"),
    ("coclosed", "coclosed"),
    ("temporal", "temporal"),
    ("coclosed_temporal", "coclosed + temporal"),
    ("self_dual", "self-dual"),
    ("zero_curvature", "zero curvature"),
    ("coclosed_self_dual", "coclosed + self-dual"),
    ("temporal_self_dual", "temporal + self-dual"),
    ("theta_f_modes", "theta f, box f = 0"),
];

pub fn table(cmd: &str, v: &Value) -> String {
    let mut out = String::new();
    match cmd {
        "dims" => {
            out += &format!("r = {}\n{:<10}{}\n", v["r"], "degree", (0..5).map(|k| format!("{k:>6}")).collect::<String>());
            for key in ["all", "closed", "exact"] {
                out += &row(key, &v[key]);
            }
        }
        "maxwell-report" => {
            out += &format!("r = {}\n{:<24}{:>10}{:>8}\n", v["r"], "", "mod exact", "raw");
            for (key, label) in MODE_ROWS {
                out += &format!("{label:<24}{:>10}{:>8}\n", v["modes"][key].to_string(), v["raw"][key].to_string());
            }
            let s = &v["sources"];
            out += &format!("sources: all {}, spatial {}, along theta {}\n", s["all"], s["spatial"], s["theta_f"]);
        }
        "verify" => {
            for s in v["suites"].as_array().into_iter().flatten() {
                out += &format!("{} {}\n", if s["passes"] == true { "PASS" } else { "FAIL" }, s["suite"].as_str().unwrap_or(""));
                for c in s["checks"].as_array().into_iter().flatten() {
                    out += &format!("    [{}] {}\n", if c["ok"] == true { "x" } else { " " }, c["check"].as_str().unwrap_or(""));
                }
            }
        }
        _ => {
            out = serde_json::to_string_pretty(v).expect("serialisable");
            out.push('\n');
        }
    }
    out
}
