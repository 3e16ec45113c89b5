//! Upper-bound certificates and their verification.
//!
//! A certificate exhibits a matrix `B` whose Gram matrix `BᵀB` realizes a
//! graph's zero pattern with `rank(B)` rows, proving `msr(G) ≤ rank(B)`.
//! Certificates are stored in a line-oriented text format, optionally
//! together with a redundant statement of the Gram matrix `A` that the
//! verifier cross-checks entry by entry. `B` is authoritative throughout:
//! a value-level disagreement in a stated `A` is surfaced in the report, and
//! only a disagreement in the zero pattern itself (or a stated `A` that is
//! not even symmetric) fails verification, because then the two matrices do
//! not describe the same graph.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::exec::{map_collect, ExecMode};
use crate::graph::{from_pattern, Graph, GraphError};
use crate::rat::{parse_entry, MatrixError, Rat, RationalMatrix};

/// A claimed msr upper bound: `B` with `claimed_msr` rows, one column per
/// vertex, plus optional redundant metadata to cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Opaque tag such as "G706"; never used for graph identity.
    pub label: String,
    /// The witness matrix; columns are the representation vectors.
    pub b: RationalMatrix,
    /// Claimed msr value; always equals `b.rows()`.
    pub claimed_msr: usize,
    /// The Gram matrix as stated alongside `B` in the source file, if any.
    pub stated_a: Option<RationalMatrix>,
    /// Tree size claimed for the graph, if stated.
    pub claimed_tree_size: Option<usize>,
    /// Whether the claim came with a prose lower-bound argument, beyond
    /// merely exhibiting `B`.
    pub argued_lower_bound: bool,
}

#[derive(Debug, Error)]
pub enum CertError {
    #[error("missing required field {0}")]
    MissingField(&'static str),
    #[error("duplicate field {0} on line {1}")]
    DuplicateField(&'static str, usize),
    #[error("line {line}: expected `{expected}`, found {found:?}")]
    Malformed {
        line: usize,
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: {source}")]
    Entry {
        line: usize,
        #[source]
        source: MatrixError,
    },
    #[error("matrix {matrix} declares {declared} rows but {got} row lines follow")]
    RowCount {
        matrix: char,
        declared: usize,
        got: usize,
    },
    #[error("line {line}: matrix {matrix} row has {got} entries, expected {expected}")]
    RowWidth {
        line: usize,
        matrix: char,
        got: usize,
        expected: usize,
    },
    #[error("claimed_msr {claimed} does not equal the {rows} rows of B")]
    ClaimedMsrMismatch { claimed: usize, rows: usize },
    #[error("stated A is {rows}x{cols} but B has {n} columns")]
    StatedAShape { rows: usize, cols: usize, n: usize },
    #[error("content after the final matrix, starting at line {0}")]
    Trailing(usize),
    #[error("duplicate label {0} in corpus")]
    DuplicateLabel(String),
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<CertError>,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Certificate {
    /// Build a certificate from parts, enforcing `claimed_msr = rows(B)`.
    pub fn new(
        label: &str,
        b: RationalMatrix,
        claimed_msr: usize,
        stated_a: Option<RationalMatrix>,
        claimed_tree_size: Option<usize>,
        argued_lower_bound: bool,
    ) -> Result<Self, CertError> {
        if claimed_msr != b.rows() {
            return Err(CertError::ClaimedMsrMismatch {
                claimed: claimed_msr,
                rows: b.rows(),
            });
        }
        if let Some(a) = &stated_a {
            if a.rows() != a.cols() || a.rows() != b.cols() {
                return Err(CertError::StatedAShape {
                    rows: a.rows(),
                    cols: a.cols(),
                    n: b.cols(),
                });
            }
        }
        Ok(Self {
            label: label.to_string(),
            b,
            claimed_msr,
            stated_a,
            claimed_tree_size,
            argued_lower_bound,
        })
    }

    /// Number of vertices of the certified graph.
    pub fn n(&self) -> usize {
        self.b.cols()
    }

    /// The graph this certificate is about: the off-diagonal zero pattern
    /// of `gram(B)`, carrying the certificate label.
    pub fn graph(&self) -> Graph {
        from_pattern(&self.b.gram(), Some(&self.label))
            .expect("a Gram matrix is always square and symmetric")
    }
}

/// Parse the certificate text format. Blank lines and lines starting with
/// `#` are ignored; header fields may appear in any order before `B`.
pub fn parse_certificate(text: &str) -> Result<Certificate, CertError> {
    let mut label: Option<String> = None;
    let mut claimed_msr: Option<usize> = None;
    let mut tree_size: Option<usize> = None;
    let mut argued: Option<bool> = None;
    let mut b: Option<RationalMatrix> = None;
    let mut a: Option<RationalMatrix> = None;

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let parse_usize = |line: usize, word: &str| {
        word.parse::<usize>().map_err(|_| CertError::Malformed {
            line,
            expected: "a nonnegative integer",
            found: word.to_string(),
        })
    };

    while let Some((line_no, line)) = lines.next() {
        let mut words = line.split_whitespace();
        let key = words.next().unwrap_or_default();
        let rest: Vec<&str> = words.collect();
        match key {
            "label" => {
                if label.is_some() {
                    return Err(CertError::DuplicateField("label", line_no));
                }
                if rest.is_empty() {
                    return Err(CertError::Malformed {
                        line: line_no,
                        expected: "label <text>",
                        found: line.to_string(),
                    });
                }
                label = Some(rest.join(" "));
            }
            "claimed_msr" | "tree_size" => {
                let slot = if key == "claimed_msr" {
                    &mut claimed_msr
                } else {
                    &mut tree_size
                };
                if slot.is_some() {
                    return Err(CertError::DuplicateField(
                        if key == "claimed_msr" {
                            "claimed_msr"
                        } else {
                            "tree_size"
                        },
                        line_no,
                    ));
                }
                let [word] = rest.as_slice() else {
                    return Err(CertError::Malformed {
                        line: line_no,
                        expected: "one integer",
                        found: line.to_string(),
                    });
                };
                *slot = Some(parse_usize(line_no, word)?);
            }
            "argued_lower_bound" => {
                if argued.is_some() {
                    return Err(CertError::DuplicateField("argued_lower_bound", line_no));
                }
                argued = Some(match rest.as_slice() {
                    ["true"] => true,
                    ["false"] => false,
                    _ => {
                        return Err(CertError::Malformed {
                            line: line_no,
                            expected: "true or false",
                            found: line.to_string(),
                        })
                    }
                });
            }
            "B" | "A" => {
                let matrix = key.chars().next().unwrap();
                if (matrix == 'B' && b.is_some()) || (matrix == 'A' && a.is_some()) {
                    return Err(CertError::DuplicateField(
                        if matrix == 'B' { "B" } else { "A" },
                        line_no,
                    ));
                }
                if matrix == 'A' && b.is_none() {
                    return Err(CertError::Malformed {
                        line: line_no,
                        expected: "B before A",
                        found: line.to_string(),
                    });
                }
                let [r, c] = rest.as_slice() else {
                    return Err(CertError::Malformed {
                        line: line_no,
                        expected: "two dimensions",
                        found: line.to_string(),
                    });
                };
                let (rows, cols) = (parse_usize(line_no, r)?, parse_usize(line_no, c)?);
                let mut data: Vec<Rat> = Vec::with_capacity(rows * cols);
                for row_idx in 0..rows {
                    let Some((row_line_no, row_line)) = lines.next() else {
                        return Err(CertError::RowCount {
                            matrix,
                            declared: rows,
                            got: row_idx,
                        });
                    };
                    let entries: Vec<Rat> = row_line
                        .split_whitespace()
                        .map(parse_entry)
                        .collect::<Result<_, _>>()
                        .map_err(|source| CertError::Entry {
                            line: row_line_no,
                            source,
                        })?;
                    if entries.len() != cols {
                        return Err(CertError::RowWidth {
                            line: row_line_no,
                            matrix,
                            got: entries.len(),
                            expected: cols,
                        });
                    }
                    data.extend(entries);
                }
                let m = RationalMatrix::new(rows, cols, data)
                    .map_err(|source| CertError::Entry { line: line_no, source })?;
                if matrix == 'B' {
                    b = Some(m);
                } else {
                    a = Some(m);
                }
            }
            _ if b.is_some() => return Err(CertError::Trailing(line_no)),
            _ => {
                return Err(CertError::Malformed {
                    line: line_no,
                    expected: "a certificate directive",
                    found: line.to_string(),
                })
            }
        }
        if a.is_some() {
            if let Some((line_no, _)) = lines.next() {
                return Err(CertError::Trailing(line_no));
            }
            break;
        }
    }

    Certificate::new(
        &label.ok_or(CertError::MissingField("label"))?,
        b.ok_or(CertError::MissingField("B"))?,
        claimed_msr.ok_or(CertError::MissingField("claimed_msr"))?,
        a,
        tree_size,
        argued.ok_or(CertError::MissingField("argued_lower_bound"))?,
    )
}

/// Render in the certificate text format; inverse of [`parse_certificate`].
pub fn serialize_certificate(c: &Certificate) -> String {
    let mut out = String::new();
    out.push_str(&format!("label {}\n", c.label));
    out.push_str(&format!("claimed_msr {}\n", c.claimed_msr));
    if let Some(ts) = c.claimed_tree_size {
        out.push_str(&format!("tree_size {ts}\n"));
    }
    out.push_str(&format!("argued_lower_bound {}\n", c.argued_lower_bound));
    out.push_str(&format!("B {} {}\n{}\n", c.b.rows(), c.b.cols(), c.b.to_text()));
    if let Some(a) = &c.stated_a {
        out.push_str(&format!("A {} {}\n{}\n", a.rows(), a.cols(), a.to_text()));
    }
    out
}

/// One differing entry between `gram(B)` and a stated `A`.
/// Indices are 1-based, matching how matrices are quoted in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub stated: String,
    pub computed: String,
}

/// Outcome of comparing `gram(B)` with the stated `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "entries", rename_all = "snake_case")]
pub enum ACrossCheck {
    /// `A` present and equal to `gram(B)` entry for entry.
    Ok,
    /// `A` present but differing in the listed entries.
    Mismatch(Vec<EntryMismatch>),
    /// No `A` stated.
    Absent,
}

impl ACrossCheck {
    pub fn mismatches(&self) -> &[EntryMismatch] {
        match self {
            ACrossCheck::Mismatch(v) => v,
            _ => &[],
        }
    }
}

/// Everything the verifier found; `verdict` is pass iff
/// `pattern_ok && rank_ok && psd_ok`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub label: String,
    pub pattern_ok: bool,
    pub rank_found: usize,
    pub rank_ok: bool,
    pub psd_ok: bool,
    pub a_crosscheck: ACrossCheck,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "reasons", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(Vec<String>),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: pattern {} rank {} ({}) psd {} a_crosscheck {} -> {}",
            self.label,
            if self.pattern_ok { "ok" } else { "FAIL" },
            self.rank_found,
            if self.rank_ok { "ok" } else { "FAIL" },
            if self.psd_ok { "ok" } else { "FAIL" },
            match &self.a_crosscheck {
                ACrossCheck::Ok => "ok".to_string(),
                ACrossCheck::Mismatch(v) => format!("{} differing entries", v.len()),
                ACrossCheck::Absent => "absent".to_string(),
            },
            match &self.verdict {
                Verdict::Pass => "pass".to_string(),
                Verdict::Fail(reasons) => format!("FAIL ({})", reasons.join("; ")),
            }
        )
    }
}

/// Check a certificate. Total: every certificate yields a report.
///
/// - `pattern_ok`: the zero pattern of `gram(B)` is a connected graph, and
///   when an `A` is stated it describes the same graph (a stated `A` that is
///   not symmetric cannot describe any graph and also fails this check).
/// - `rank_ok`: `rank(B) = claimed_msr`.
/// - `psd_ok`: `gram(B)` passes the exact PSD decision (a self-check; Gram
///   matrices are PSD by construction).
/// - `a_crosscheck`: entrywise comparison against the stated `A`, reported
///   independently of the verdict; value-level typos in `A` never fail a
///   certificate by themselves.
pub fn verify_certificate(c: &Certificate) -> VerificationReport {
    let gram = c.b.gram();
    let graph = c.graph();
    let mut reasons = Vec::new();

    let connected = graph.is_connected();
    if !connected {
        reasons.push("gram(B) pattern is disconnected".to_string());
    }
    let mut pattern_ok = connected;

    let a_crosscheck = match &c.stated_a {
        None => ACrossCheck::Absent,
        Some(a) => {
            match from_pattern(a, None) {
                Ok(ga) => {
                    if ga != graph {
                        pattern_ok = false;
                        reasons.push(
                            "stated A describes a different graph than gram(B)".to_string(),
                        );
                    }
                }
                Err(GraphError::PatternNotSymmetric { i, j }) => {
                    pattern_ok = false;
                    reasons.push(format!(
                        "stated A is not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    ));
                }
                Err(e) => {
                    pattern_ok = false;
                    reasons.push(format!("stated A has no pattern: {e}"));
                }
            }
            let mismatches: Vec<EntryMismatch> = (0..gram.rows())
                .flat_map(|i| (0..gram.cols()).map(move |j| (i, j)))
                .filter(|&(i, j)| a.get(i, j) != gram.get(i, j))
                .map(|(i, j)| EntryMismatch {
                    row: i + 1,
                    col: j + 1,
                    stated: a.get(i, j).to_string(),
                    computed: gram.get(i, j).to_string(),
                })
                .collect();
            if mismatches.is_empty() {
                ACrossCheck::Ok
            } else {
                ACrossCheck::Mismatch(mismatches)
            }
        }
    };

    let rank_found = c.b.rank();
    let rank_ok = rank_found == c.claimed_msr;
    if !rank_ok {
        reasons.push(format!(
            "rank(B) = {rank_found}, claimed {}",
            c.claimed_msr
        ));
    }

    let psd_ok = gram.is_psd().unwrap_or(false);
    if !psd_ok {
        reasons.push("gram(B) failed the PSD self-check".to_string());
    }

    VerificationReport {
        label: c.label.clone(),
        pattern_ok,
        rank_found,
        rank_ok,
        psd_ok,
        a_crosscheck,
        verdict: if pattern_ok && rank_ok && psd_ok {
            Verdict::Pass
        } else {
            Verdict::Fail(reasons)
        },
    }
}

/// Verify many certificates, preserving input order.
pub fn verify_corpus(certs: &[Certificate], mode: ExecMode) -> Vec<VerificationReport> {
    map_collect(mode, certs, verify_certificate)
}

/// Load every `*.cert` file in a directory, sorted by file name.
/// Labels must be unique across the corpus.
pub fn load_corpus(dir: &Path) -> Result<Vec<Certificate>, CertError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|source| CertError::Io {
            path: dir.to_path_buf(),
            source,
        })?
        .collect::<Result<Vec<_>, _>>()
        .map_err(|source| CertError::Io {
            path: dir.to_path_buf(),
            source,
        })?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "cert"))
        .collect();
    paths.sort();
    let mut certs = Vec::with_capacity(paths.len());
    let mut seen = std::collections::HashSet::new();
    for path in paths {
        let text = std::fs::read_to_string(&path).map_err(|source| CertError::Io {
            path: path.clone(),
            source,
        })?;
        let cert = parse_certificate(&text).map_err(|source| CertError::InFile {
            path: path.clone(),
            source: Box::new(source),
        })?;
        if !seen.insert(cert.label.clone()) {
            return Err(CertError::DuplicateLabel(cert.label));
        }
        certs.push(cert);
    }
    Ok(certs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    const G1211_CERT: &str = "label G1211\nclaimed_msr 2\nargued_lower_bound false\n\
B 2 7\n1 1 2 -1 -1 -2 0\n0 2 -1 0 -2 1 1\n";

    fn k3_cert() -> Certificate {
        Certificate::new(
            "K3",
            RationalMatrix::from_i64_rows(&[&[1, 1, 1]]).unwrap(),
            1,
            None,
            Some(2),
            false,
        )
        .unwrap()
    }

    #[test]
    fn round_trip_identity() {
        let cert = parse_certificate(G1211_CERT).unwrap();
        assert_eq!(cert.claimed_msr, 2);
        assert_eq!(cert.b.rows(), 2);
        assert_eq!(cert.n(), 7);
        assert!(!cert.argued_lower_bound);
        assert_eq!(
            parse_certificate(&serialize_certificate(&cert)).unwrap(),
            cert
        );
        let full = k3_cert();
        assert_eq!(
            parse_certificate(&serialize_certificate(&full)).unwrap(),
            full
        );
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a comment\nlabel X\n\nclaimed_msr 1\nargued_lower_bound true\n\
# another\nB 1 2\n1 1\n";
        let cert = parse_certificate(text).unwrap();
        assert_eq!(cert.label, "X");
        assert!(cert.argued_lower_bound);
    }

    #[test]
    fn declared_row_count_must_match() {
        let text = "label X\nclaimed_msr 3\nargued_lower_bound false\nB 3 2\n1 1\n1 0\n0 1\n1 1\n";
        assert!(matches!(
            parse_certificate(text),
            Err(CertError::Trailing(_))
        ));
        let short = "label X\nclaimed_msr 3\nargued_lower_bound false\nB 3 2\n1 1\n1 0\n";
        assert!(matches!(
            parse_certificate(short),
            Err(CertError::RowCount {
                matrix: 'B',
                declared: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn claimed_msr_must_equal_rows() {
        let text = "label X\nclaimed_msr 2\nargued_lower_bound false\nB 1 2\n1 1\n";
        assert!(matches!(
            parse_certificate(text),
            Err(CertError::ClaimedMsrMismatch { claimed: 2, rows: 1 })
        ));
    }

    #[test]
    fn missing_fields_are_named() {
        assert!(matches!(
            parse_certificate("label X\nB 1 1\n1\nargued_lower_bound false\n"),
            Err(CertError::MissingField("claimed_msr"))
        ));
    }

    #[test]
    fn verify_passes_good_certificates() {
        let report = verify_certificate(&parse_certificate(G1211_CERT).unwrap());
        assert!(report.verdict.passed());
        assert_eq!(report.rank_found, 2);
        assert_eq!(report.a_crosscheck, ACrossCheck::Absent);
        assert!(verify_certificate(&k3_cert()).verdict.passed());
    }

    #[test]
    fn verify_cross_checks_stated_a() {
        let cert = parse_certificate(G1211_CERT).unwrap();
        let gram = cert.b.gram();
        let with_a = Certificate::new("G1211", cert.b.clone(), 2, Some(gram), None, false).unwrap();
        let report = verify_certificate(&with_a);
        assert!(report.verdict.passed());
        assert_eq!(report.a_crosscheck, ACrossCheck::Ok);
    }

    #[test]
    fn perturbed_b_fails_against_stated_a() {
        // Flip one zero of B to 1: the Gram pattern gains edges and no
        // longer matches the stated A, so verification must fail.
        let cert = parse_certificate(G1211_CERT).unwrap();
        let gram = cert.b.gram();
        let mut rows: Vec<Vec<Rat>> = (0..cert.b.rows()).map(|i| cert.b.row(i).to_vec()).collect();
        assert_eq!(rows[0][6], rat_int(0));
        rows[0][6] = rat_int(1);
        let flipped = RationalMatrix::from_rows(rows).unwrap();
        let perturbed = Certificate::new("G1211", flipped, 2, Some(gram), None, false).unwrap();
        let report = verify_certificate(&perturbed);
        assert!(!report.pattern_ok);
        assert!(!report.verdict.passed());
        assert!(!report.a_crosscheck.mismatches().is_empty());
    }

    #[test]
    fn value_typo_in_stated_a_does_not_fail_verdict() {
        // Same pattern, wrong value: surfaced in the cross-check only.
        let cert = parse_certificate(G1211_CERT).unwrap();
        let gram = cert.b.gram();
        let mut rows: Vec<Vec<Rat>> = (0..7).map(|i| gram.row(i).to_vec()).collect();
        rows[0][0] = rat_int(9);
        let typo_a = RationalMatrix::from_rows(rows).unwrap();
        let c = Certificate::new("G1211", cert.b.clone(), 2, Some(typo_a), None, false).unwrap();
        let report = verify_certificate(&c);
        assert!(report.verdict.passed());
        assert_eq!(report.a_crosscheck.mismatches().len(), 1);
        assert_eq!(report.a_crosscheck.mismatches()[0].row, 1);
        assert_eq!(report.a_crosscheck.mismatches()[0].stated, "9");
    }

    #[test]
    fn asymmetric_stated_a_fails_pattern() {
        let cert = parse_certificate(G1211_CERT).unwrap();
        let gram = cert.b.gram();
        let mut rows: Vec<Vec<Rat>> = (0..7).map(|i| gram.row(i).to_vec()).collect();
        rows[0][1] = rat_int(7);
        let bad_a = RationalMatrix::from_rows(rows).unwrap();
        let c = Certificate::new("G1211", cert.b.clone(), 2, Some(bad_a), None, false).unwrap();
        let report = verify_certificate(&c);
        assert!(!report.pattern_ok);
        assert!(!report.verdict.passed());
    }

    #[test]
    fn disconnected_pattern_fails() {
        // Two orthogonal vectors: pattern is two isolated vertices.
        let b = RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]).unwrap();
        let c = Certificate::new("disc", b, 2, None, None, false).unwrap();
        let report = verify_certificate(&c);
        assert!(!report.pattern_ok);
        assert!(report.rank_ok && report.psd_ok);
        assert!(!report.verdict.passed());
    }

    #[test]
    fn corpus_loading() {
        let dir = tempdir();
        std::fs::write(dir.join("a.cert"), G1211_CERT).unwrap();
        std::fs::write(
            dir.join("b.cert"),
            serialize_certificate(&k3_cert()),
        )
        .unwrap();
        std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
        let certs = load_corpus(&dir).unwrap();
        assert_eq!(certs.len(), 2);
        assert_eq!(certs[0].label, "G1211");
        assert_eq!(certs[1].label, "K3");

        std::fs::write(dir.join("c.cert"), G1211_CERT).unwrap();
        assert!(matches!(
            load_corpus(&dir),
            Err(CertError::DuplicateLabel(l)) if l == "G1211"
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn empty_corpus_is_empty() {
        let dir = tempdir();
        assert!(load_corpus(&dir).unwrap().is_empty());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    fn tempdir() -> PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "msrlab-cert-test-{}-{:?}",
            std::process::id(),
            std::thread::current().id()
        ));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }
}
