//! Run-level report assembly: one structured document per run, and the
//! matching text rendering. Documents contain no timestamps or other
//! unstable data, so identical inputs produce byte-identical output.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use finalg::laws::{BatteryReport, Universe};

use crate::exec::{law_report_json, law_report_text, Execution};

/// Version tag of the structured-output contract.
pub const SCHEMA: &str = "finalg/1";

fn sha256_hex(data: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(data.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The single structured document for a script run.
pub fn script_document(script_text: &str, exec: &Execution, exit_status: i32) -> Value {
    json!({
        "schema": SCHEMA,
        "mode": "script",
        "script_sha256": sha256_hex(script_text),
        "declarations": exec.declarations,
        "declarations_sha256": sha256_hex(&exec.declaration_text.join("\n")),
        "commands": exec.commands.iter().map(|c| c.json.clone()).collect::<Vec<_>>(),
        "exit_status": exit_status,
    })
}

/// The text rendering for a script run.
pub fn script_text_report(exec: &Execution, exit_status: i32) -> String {
    let mut out = String::new();
    for decl in &exec.declaration_text {
        out.push_str(decl);
        out.push('\n');
    }
    for cmd in &exec.commands {
        out.push_str(&cmd.text);
    }
    out.push_str(&format!("exit status: {exit_status}\n"));
    out
}

/// The single structured document for a battery run.
pub fn battery_document(battery: &[Universe], report: &BatteryReport, exit_status: i32) -> Value {
    let find_module = |label: &str| {
        battery
            .iter()
            .find(|u| u.label == label)
            .map(|u| u.module.clone())
            .expect("separation labels come from the battery")
    };
    let sep_entries = |items: &[(String, Vec<usize>)]| {
        items
            .iter()
            .map(|(label, members)| {
                let module = find_module(label);
                json!({
                    "universe": label,
                    "members": members
                        .iter()
                        .map(|&e| module.name(e).to_string())
                        .collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>()
    };
    json!({
        "schema": SCHEMA,
        "mode": "battery",
        "universes": battery.iter().map(|u| u.label.clone()).collect::<Vec<_>>(),
        "laws": report.law_reports.iter().map(law_report_json).collect::<Vec<_>>(),
        "separations": {
            "s_secondary_not_s_second": sep_entries(&report.separations.s_secondary_not_s_second),
            "s_secondary_not_secondary": sep_entries(&report.separations.s_secondary_not_secondary),
        },
        "audit": {
            "label": report.audit.label,
            "all_nonzero_s_secondary": report.audit.all_nonzero_s_secondary,
            "all_proper_s_primary": report.audit.all_proper_s_primary,
            "zw_matches_radical": report.audit.zw_matches_radical,
            "routes_agree": report.audit.routes_agree,
            "separation_found": report.audit.separation_found,
            "detail": report.audit.detail,
        },
        "exit_status": exit_status,
    })
}

/// The text rendering for a battery run.
pub fn battery_text_report(
    battery: &[Universe],
    report: &BatteryReport,
    exit_status: i32,
) -> String {
    let mut out = format!("battery: {} universes\n", battery.len());
    for u in battery {
        out.push_str(&format!("  {}\n", u.label));
    }
    for r in &report.law_reports {
        out.push_str(&format!("{} [{}]\n", law_report_text(r), r.universe));
    }
    out.push_str("separations (S-secondary but not S-second):\n");
    for (label, members) in &report.separations.s_secondary_not_s_second {
        out.push_str(&format!("  {label}: {} members\n", members.len()));
    }
    out.push_str("separations (S-secondary but not secondary):\n");
    for (label, members) in &report.separations.s_secondary_not_secondary {
        out.push_str(&format!("  {label}: {} members\n", members.len()));
    }
    out.push_str(&format!(
        "audit [{}]: {}\n",
        report.audit.label, report.audit.detail
    ));
    let failures = report.failures().len();
    out.push_str(&format!("proved-law failures: {failures}\n"));
    out.push_str(&format!("exit status: {exit_status}\n"));
    out
}
