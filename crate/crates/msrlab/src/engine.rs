//! Final msr determination and the corpus reproduction report.
//!
//! [`determine_msr`] combines every technique in the crate: pendant
//! peeling first (each peeled vertex contributes exactly one rank),
//! then the lower-bound ladder on the pendant-free core, and for the
//! upper bound the better of a matching corpus certificate and a fresh
//! randomized scan. The two sides meet in a status that is `Determined`
//! only when the bounds agree; an unproved claim is never inherited.
//!
//! [`batch_report`] runs the lower-bound machinery over a whole corpus,
//! one row per certificate, and collects a discrepancy appendix: stated
//! Gram matrices that disagree with the recomputed ones entry by entry,
//! stated tree sizes that disagree with exhaustive enumeration, and
//! claims the engine could not close from below.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{
    msr_lower_bound, peel_pendants, tree_size, BoundReport, BoundsError, LowerSource,
    RefuteBudget,
};
use crate::cert::{verify_certificate, Certificate, EntryMismatch};
use crate::exec::{map_collect, ExecMode};
use crate::graph::{to_graph6, Graph};
use crate::search::{upper_bound_scan, SearchConfig, SearchError};

/// Failures of the engine.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Search(#[from] SearchError),
    /// A lower bound exceeded an upper bound; impossible while both sides
    /// are sound, surfaced loudly rather than clamped away.
    #[error("contradictory bounds: lower {lower} exceeds upper {upper}")]
    ContradictoryBounds { lower: usize, upper: usize },
}

/// Whether the bounds met.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsrStatus {
    Determined(usize),
    Interval(usize, usize),
}

impl MsrStatus {
    pub fn determined(&self) -> Option<usize> {
        match self {
            MsrStatus::Determined(v) => Some(*v),
            MsrStatus::Interval(..) => None,
        }
    }
}

impl fmt::Display for MsrStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MsrStatus::Determined(v) => write!(f, "determined {v}"),
            MsrStatus::Interval(lo, hi) => write!(f, "interval {lo}..{hi}"),
        }
    }
}

impl Serialize for MsrStatus {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MsrStatus::Determined(_) => serializer.serialize_str("determined"),
            MsrStatus::Interval(..) => serializer.serialize_str("interval"),
        }
    }
}

/// The full determination for one graph, with the evidence for each side.
#[derive(Debug, Clone)]
pub struct MsrResult {
    pub label: Option<String>,
    pub graph6: String,
    pub lower: usize,
    pub upper: usize,
    pub status: MsrStatus,
    /// Pendant vertices peeled before bounding; both bounds include them.
    pub peeled: usize,
    /// Lower-bound evidence for the pendant-free core.
    pub lower_evidence: BoundReport,
    /// Certificate behind the upper bound. For a corpus match it covers
    /// the full graph; otherwise it covers the core (absent exactly when
    /// the core is a single vertex, whose rank is zero).
    pub upper_evidence: Option<Certificate>,
    /// Claimed msr of the matching corpus certificate, if any matched.
    pub corpus_claim: Option<usize>,
    /// Whether a determined value equals the claim; an open interval
    /// against a claim is explicitly false, never silently agreed.
    pub agrees_with_claim: Option<bool>,
    pub note: Option<String>,
}

/// Determines msr bounds for a connected graph. `corpus` supplies known
/// certificates to match against by pattern; pass an empty slice to rely
/// on the randomized scan alone.
pub fn determine_msr(
    g: &Graph,
    corpus: &[Certificate],
    budget: &RefuteBudget,
    cfg: &SearchConfig,
    mode: ExecMode,
) -> Result<MsrResult, EngineError> {
    let (core, peeled) = peel_pendants(g)?;
    let lower_evidence = msr_lower_bound(&core, budget)?;
    let lower = lower_evidence.best_lower + peeled;

    let matched = corpus
        .iter()
        .filter(|c| c.graph() == *g)
        .min_by_key(|c| c.claimed_msr);
    let scanned = if core.n() == 1 {
        None
    } else {
        let (k, cert) = upper_bound_scan(&core, cfg, mode)?;
        Some((k + peeled, cert))
    };

    let core_upper = scanned.as_ref().map(|(k, _)| *k).unwrap_or(peeled);
    let (upper, upper_evidence) = match matched {
        // A matching certificate wins ties; the scan only improves on it.
        Some(cert) if cert.claimed_msr <= core_upper => {
            (cert.claimed_msr, Some(cert.clone()))
        }
        _ => (core_upper, scanned.map(|(_, cert)| cert)),
    };

    if lower > upper {
        return Err(EngineError::ContradictoryBounds { lower, upper });
    }
    let status = if lower == upper {
        MsrStatus::Determined(lower)
    } else {
        MsrStatus::Interval(lower, upper)
    };
    let corpus_claim = matched.map(|c| c.claimed_msr);
    let (agrees_with_claim, note) = match (status, corpus_claim) {
        (MsrStatus::Determined(v), Some(claim)) => (Some(v == claim), None),
        (MsrStatus::Interval(..), Some(_)) => {
            (Some(false), Some("lower bound open".to_string()))
        }
        (_, None) => (None, None),
    };
    Ok(MsrResult {
        label: g.label().map(str::to_string),
        lower,
        upper,
        status,
        peeled,
        lower_evidence,
        upper_evidence,
        corpus_claim,
        agrees_with_claim,
        note,
        graph6: to_graph6(g),
    })
}

/// One reproduction row: the corpus certificate is the upper bound, the
/// engine supplies the lower bound, and the stated metadata is compared
/// against recomputation.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub graph6: String,
    pub computed_tree_size: usize,
    pub claimed_tree_size: Option<usize>,
    pub lower: usize,
    pub source: LowerSource,
    pub certificate_rank: usize,
    pub status: MsrStatus,
    pub claimed_msr: usize,
    pub agrees_with_claim: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub stated_a_mismatches: Vec<EntryMismatch>,
    #[serde(skip)]
    pub lower_evidence: BoundReport,
    #[serde(skip)]
    pub peeled: usize,
}

/// Everything in the corpus that did not reproduce exactly.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Appendix {
    /// Labels whose stated Gram matrix disagrees with B transposed times
    /// B, with the exact entries.
    pub stated_a_mismatches: Vec<(String, Vec<EntryMismatch>)>,
    /// Labels whose stated tree size disagrees with enumeration, as
    /// (label, stated, computed).
    pub tree_size_errata: Vec<(String, usize, usize)>,
    /// Labels whose claimed msr the lower-bound engine did not reach.
    pub open_lower_bounds: Vec<String>,
}

impl Appendix {
    pub fn is_empty(&self) -> bool {
        self.stated_a_mismatches.is_empty()
            && self.tree_size_errata.is_empty()
            && self.open_lower_bounds.is_empty()
    }
}

/// The reproduction report: one row per corpus entry, in corpus order,
/// plus the discrepancy appendix.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub appendix: Appendix,
}

/// Builds the reproduction report. Rows are independent and may be
/// computed in parallel; the output is byte-identical either way.
pub fn batch_report(
    corpus: &[Certificate],
    budget: &RefuteBudget,
    mode: ExecMode,
) -> Result<Report, EngineError> {
    let rows: Vec<Result<ReportRow, EngineError>> = map_collect(mode, corpus, |cert| {
        let g = cert.graph();
        let computed_tree_size = tree_size(&g)?;
        let (core, peeled) = peel_pendants(&g)?;
        let lower_evidence = msr_lower_bound(&core, budget)?;
        let lower = lower_evidence.best_lower + peeled;
        let claimed = cert.claimed_msr;
        if lower > claimed {
            return Err(EngineError::ContradictoryBounds {
                lower,
                upper: claimed,
            });
        }
        let status = if lower == claimed {
            MsrStatus::Determined(claimed)
        } else {
            MsrStatus::Interval(lower, claimed)
        };
        let agrees_with_claim = status.determined() == Some(claimed);
        let note = match status {
            MsrStatus::Determined(_) => None,
            MsrStatus::Interval(..) => Some("lower bound open".to_string()),
        };
        let report = verify_certificate(cert);
        Ok(ReportRow {
            label: cert.label.clone(),
            graph6: to_graph6(&g),
            computed_tree_size,
            claimed_tree_size: cert.claimed_tree_size,
            lower,
            source: lower_evidence.source(),
            certificate_rank: cert.b.rank(),
            status,
            claimed_msr: claimed,
            agrees_with_claim,
            note,
            stated_a_mismatches: report.a_crosscheck.mismatches().to_vec(),
            lower_evidence,
            peeled,
        })
    });
    let rows: Vec<ReportRow> = rows.into_iter().collect::<Result<_, _>>()?;

    let mut appendix = Appendix::default();
    for row in &rows {
        if !row.stated_a_mismatches.is_empty() {
            appendix
                .stated_a_mismatches
                .push((row.label.clone(), row.stated_a_mismatches.clone()));
        }
        if let Some(stated) = row.claimed_tree_size {
            if stated != row.computed_tree_size {
                appendix
                    .tree_size_errata
                    .push((row.label.clone(), stated, row.computed_tree_size));
            }
        }
        if !row.agrees_with_claim {
            appendix.open_lower_bounds.push(row.label.clone());
        }
    }
    Ok(Report { rows, appendix })
}

/// Renders the report as an aligned text table followed by the appendix.
pub fn render_text(report: &Report) -> String {
    let headers = [
        "label", "graph6", "tree", "stated", "lower", "source", "cert", "status", "agrees",
    ];
    let mut cells: Vec<[String; 9]> = Vec::with_capacity(report.rows.len());
    for row in &report.rows {
        cells.push([
            row.label.clone(),
            row.graph6.clone(),
            row.computed_tree_size.to_string(),
            row.claimed_tree_size
                .map_or_else(|| "-".to_string(), |t| t.to_string()),
            row.lower.to_string(),
            row.source.to_string(),
            row.certificate_rank.to_string(),
            row.status.to_string(),
            if row.agrees_with_claim { "yes" } else { "NO" }.to_string(),
        ]);
    }
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let render_line = |out: &mut String, parts: &[String]| {
        for (i, (part, w)) in parts.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(part);
            out.push_str(&" ".repeat(w - part.len()));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    render_line(&mut out, &header_cells);
    for row in &cells {
        render_line(&mut out, row);
    }

    if report.appendix.is_empty() {
        out.push_str("\nno discrepancies\n");
        return out;
    }
    out.push_str("\ndiscrepancies\n");
    if !report.appendix.stated_a_mismatches.is_empty() {
        out.push_str("  stated A differs from recomputed B^T B:\n");
        for (label, mismatches) in &report.appendix.stated_a_mismatches {
            out.push_str(&format!("    {label}:"));
            for m in mismatches {
                out.push_str(&format!(
                    " ({},{}) stated {} computed {};",
                    m.row, m.col, m.stated, m.computed
                ));
            }
            out.push('\n');
        }
    }
    if !report.appendix.tree_size_errata.is_empty() {
        out.push_str("  stated tree sizes differ from enumeration:\n");
        for (label, stated, computed) in &report.appendix.tree_size_errata {
            out.push_str(&format!(
                "    {label}: stated {stated}, computed {computed}\n"
            ));
        }
    }
    if !report.appendix.open_lower_bounds.is_empty() {
        out.push_str("  claimed msr not reached from below:\n");
        for label in &report.appendix.open_lower_bounds {
            out.push_str(&format!("    {label}\n"));
        }
    }
    out
}

/// Renders the report as JSON lines, one object per row in corpus order.
pub fn render_jsonl(report: &Report) -> String {
    let mut out = String::new();
    for row in &report.rows {
        out.push_str(&serde_json::to_string(row).expect("rows serialize"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{search_representation, SearchOutcome};

    fn no_corpus() -> Vec<Certificate> {
        Vec::new()
    }

    fn determine(g: &Graph, corpus: &[Certificate]) -> MsrResult {
        determine_msr(
            g,
            corpus,
            &RefuteBudget::default(),
            &SearchConfig::default(),
            ExecMode::Sequential,
        )
        .expect("determination succeeds")
    }

    fn searched_cert(g: &Graph, k: usize) -> Certificate {
        match search_representation(g, k, &SearchConfig::default(), ExecMode::Sequential)
            .expect("preconditions hold")
        {
            SearchOutcome::Found(cert) => cert,
            SearchOutcome::NotFound => panic!("rank {k} should be reachable"),
        }
    }

    #[test]
    fn trees_are_determined_by_peeling_alone() {
        let p5 = Graph::path(5).expect("path");
        let result = determine(&p5, &no_corpus());
        assert_eq!(result.status, MsrStatus::Determined(4));
        assert_eq!(result.peeled, 4);
        assert!(result.upper_evidence.is_none());

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)], None).expect("star");
        let result = determine(&star, &no_corpus());
        assert_eq!(result.status, MsrStatus::Determined(3));
    }

    #[test]
    fn single_vertex_has_rank_zero() {
        let k1 = Graph::new(1, &[], None).expect("single");
        let result = determine(&k1, &no_corpus());
        assert_eq!(result.status, MsrStatus::Determined(0));
        assert!(result.upper_evidence.is_none());
    }

    #[test]
    fn complete_graphs_and_cycles_are_determined() {
        let k7 = Graph::complete(7).expect("complete");
        let result = determine(&k7, &no_corpus());
        assert_eq!(result.status, MsrStatus::Determined(1));
        assert!(result.upper_evidence.is_some());

        let c5 = Graph::cycle(5).expect("cycle");
        let result = determine(&c5, &no_corpus());
        assert_eq!(result.status, MsrStatus::Determined(3));
    }

    #[test]
    fn pendant_consistency_on_trees() {
        for n in 2..=6 {
            let p = Graph::path(n).expect("path");
            let (core, peeled) = peel_pendants(&p).expect("connected");
            let whole = determine(&p, &no_corpus());
            let core_result = determine(&core, &no_corpus());
            assert_eq!(
                whole.status.determined(),
                core_result.status.determined().map(|v| v + peeled),
                "path on {n}"
            );
        }
    }

    #[test]
    fn corpus_match_supplies_claim_and_upper_bound() {
        let c5 = Graph::cycle(5).expect("cycle");
        let cert = searched_cert(&c5, 3);
        let result = determine(&c5, std::slice::from_ref(&cert));
        assert_eq!(result.status, MsrStatus::Determined(3));
        assert_eq!(result.corpus_claim, Some(3));
        assert_eq!(result.agrees_with_claim, Some(true));
        // The matched certificate is preferred to an equal-rank rescan.
        assert_eq!(
            result.upper_evidence.map(|c| c.b.to_text()),
            Some(cert.b.to_text())
        );
    }

    #[test]
    fn looser_claim_is_contradicted_not_inherited() {
        let c5 = Graph::cycle(5).expect("cycle");
        let loose = searched_cert(&c5, 4);
        let result = determine(&c5, &[loose]);
        assert_eq!(result.status, MsrStatus::Determined(3));
        assert_eq!(result.corpus_claim, Some(4));
        assert_eq!(result.agrees_with_claim, Some(false));
    }

    #[test]
    fn batch_rows_follow_corpus_order_and_agree() {
        let corpus = vec![
            searched_cert(&Graph::cycle(4).expect("cycle").with_label("row1"), 2),
            searched_cert(&Graph::cycle(5).expect("cycle").with_label("row2"), 3),
            searched_cert(&Graph::complete(4).expect("complete").with_label("row3"), 1),
        ];
        let report = batch_report(&corpus, &RefuteBudget::default(), ExecMode::Sequential)
            .expect("corpus is well formed");
        let labels: Vec<&str> = report.rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["row1", "row2", "row3"]);
        assert!(report.rows.iter().all(|r| r.agrees_with_claim));
        assert!(report.appendix.is_empty());
        let empty = batch_report(&[], &RefuteBudget::default(), ExecMode::Sequential)
            .expect("empty corpus");
        assert!(empty.rows.is_empty());
    }

    #[test]
    fn report_bytes_are_mode_independent() {
        let corpus = vec![
            searched_cert(&Graph::cycle(5).expect("cycle").with_label("a"), 3),
            searched_cert(&Graph::path(4).expect("path").with_label("b"), 3),
        ];
        let seq = batch_report(&corpus, &RefuteBudget::default(), ExecMode::Sequential)
            .expect("well formed");
        let par = batch_report(&corpus, &RefuteBudget::default(), ExecMode::default())
            .expect("well formed");
        assert_eq!(render_text(&seq), render_text(&par));
        assert_eq!(render_jsonl(&seq), render_jsonl(&par));
    }

    #[test]
    fn renderings_are_well_formed() {
        let corpus = vec![searched_cert(&Graph::cycle(5).expect("cycle").with_label("c5"), 3)];
        let report = batch_report(&corpus, &RefuteBudget::default(), ExecMode::Sequential)
            .expect("well formed");
        let text = render_text(&report);
        assert!(text.starts_with("label"), "{text}");
        assert!(text.contains("c5"), "{text}");
        assert!(text.contains("no discrepancies"), "{text}");
        let jsonl = render_jsonl(&report);
        let value: serde_json::Value =
            serde_json::from_str(jsonl.lines().next().expect("one row")).expect("valid json");
        assert_eq!(value["label"], "c5");
        assert_eq!(value["status"], "determined");
        assert_eq!(value["agrees_with_claim"], true);
    }
}
