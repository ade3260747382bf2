//! Manual page assembled from the shipped JSON schemas.

const SCHEMAS: [(&str, &str); 8] = [
    ("rootsys", include_str!("../schemas/rootsys.json")),
    ("arrangement", include_str!("../schemas/arrangement.json")),
    ("hypertoric", include_str!("../schemas/hypertoric.json")),
    ("quiver", include_str!("../schemas/quiver.json")),
    ("contract", include_str!("../schemas/contract.json")),
    ("mt", include_str!("../schemas/mt.json")),
    ("nahm", include_str!("../schemas/nahm.json")),
    ("verify", include_str!("../schemas/verify.json")),
];

fn describe(value: &serde_json::Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    if let Some(props) = value.get("properties").and_then(|p| p.as_object()) {
        for (name, spec) in props {
            let kind = spec
                .get("type")
                .and_then(|t| t.as_str())
                .unwrap_or("object");
            let desc = spec
                .get("description")
                .and_then(|d| d.as_str())
                .unwrap_or("");
            out.push_str(&format!("{pad}{name} ({kind})"));
            if !desc.is_empty() {
                out.push_str(&format!(" -- {desc}"));
            }
            out.push('\n');
            if indent < 2 {
                describe(spec, indent + 1, out);
            }
        }
    }
}

/// Render the full manual text.
pub fn render() -> String {
    let mut out = String::new();
    out.push_str("symkit -- subcommand reference (generated from the shipped schemas)\n");
    out.push_str("====================================================================\n\n");
    out.push_str("Global flags: --output FILE writes the JSON result to FILE.\n");
    out.push_str("Complex numbers are [re, im] pairs; matrices are row-major arrays.\n");
    out.push_str("Exit codes: 0 ok, 1 failed verification, 2 violated precondition,\n");
    out.push_str("3 malformed input, 4 numerical failure.\n\n");
    for (name, text) in SCHEMAS {
        let parsed: serde_json::Value =
            serde_json::from_str(text).expect("shipped schemas are valid JSON");
        out.push_str(&format!("symkit {name}\n"));
        out.push_str(&"-".repeat(8 + name.len()));
        out.push('\n');
        if let Some(desc) = parsed.get("description").and_then(|d| d.as_str()) {
            out.push_str(desc);
            out.push('\n');
        }
        let mut body = String::new();
        describe(&parsed, 1, &mut body);
        if !body.is_empty() {
            out.push_str("documents:\n");
            out.push_str(&body);
        }
        out.push('\n');
    }
    out
}
