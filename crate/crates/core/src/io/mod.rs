//! `.sys` text format, canonical rendering and JSON statistics.

mod format;
mod parse;

pub use format::{format_header, format_polynomial};
pub use parse::{parse_polynomial, parse_system, ParseError, SystemDocument};

use crate::engine::Stats;

/// Pretty-printed JSON; keys appear in a fixed order.
pub fn stats_to_json(stats: &Stats) -> String {
    serde_json::to_string_pretty(stats).expect("stats serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_stats_json() {
        let v: serde_json::Value = serde_json::from_str(&stats_to_json(&Stats::default())).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut want = vec![
            "pairs_created",
            "pairs_rejected_f5",
            "pairs_rejected_rewritable_update",
            "pairs_rejected_rewritable_spoly",
            "reductors_rejected",
            "zero_reductions",
            "degrees",
        ];
        want.sort();
        assert_eq!(keys, want);
        assert_eq!(v["degrees"], serde_json::json!([]));
        let text = stats_to_json(&Stats::default());
        assert!(text.find("pairs_created").unwrap() < text.find("degrees").unwrap());
    }
}
