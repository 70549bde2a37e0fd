//! Job documents: the JSON input format, the monomial grammar, validation
//! with field paths, and canonicalization.
//!
//! Polynomial grammar: a polynomial is terms joined by `+`; a term is `0`,
//! `1`, or a whitespace-separated product of factors `x<i>` or
//! `x<i>^<int>`. Repeated monomials cancel (GF(2)). Canonical form sorts
//! terms lexicographically by exponent vector.

use entrobetti_core::{LaurentMatrix, LaurentPoly, Point};
use serde::{Deserialize, Serialize};

/// Parse/validation failure with the offending field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for JobError {}

fn err(path: impl Into<String>, message: impl Into<String>) -> JobError {
    JobError {
        path: path.into(),
        message: message.into(),
    }
}

pub const DEFAULT_SCHEDULE: [usize; 6] = [2, 4, 8, 16, 32, 64];

/// A validated job description. `parse_job` puts documents into canonical
/// form, so parse → serialize is the identity on its own output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum JobDocument {
    Entropy {
        r: usize,
        d: usize,
        relations: Vec<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        schedule: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
    Betti {
        d: usize,
        cells: Vec<usize>,
        coboundaries: Vec<Vec<Vec<String>>>,
        /// Degree to estimate; omitted means the Euler-characteristic check.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        degree: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        schedule: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
    Covers {
        d: usize,
        cells: Vec<usize>,
        coboundaries: Vec<Vec<Vec<String>>>,
        degree: usize,
        /// Diagonal quotient parameters; the index of n·Z^d is n^d.
        indices: Vec<u64>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
    Fixpoints {
        r: usize,
        d: usize,
        relations: Vec<Vec<String>>,
        indices: Vec<u64>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
    Duality {
        d: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        r: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        relations: Option<Vec<Vec<String>>>,
        /// Size of a seeded random battery, exclusive with `relations`.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        random: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        schedule: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
    Grothendieck {
        r: usize,
        d: usize,
        relations: Vec<Vec<String>>,
        extra: Vec<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        schedule: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
    Oracle {
        r: usize,
        d: usize,
        relations: Vec<Vec<String>>,
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
    TilingVerify {
        d: usize,
        tiles: Vec<Vec<Vec<i64>>>,
        centers: Vec<Vec<Vec<i64>>>,
        /// Target window as a box side; `target` gives explicit points.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        target_box: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        target: Option<Vec<Vec<i64>>>,
        epsilon: f64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        seed: Option<u64>,
    },
}

/// Parses one monomial term into an exponent vector.
fn parse_term(term: &str, d: usize, path: &str) -> Result<Option<Point>, JobError> {
    let term = term.trim();
    if term.is_empty() {
        return Err(err(path, "empty term"));
    }
    if term == "0" {
        return Ok(None);
    }
    if term == "1" {
        return Ok(Some([0, 0, 0]));
    }
    let mut exp = [0i64; 3];
    for factor in term.split_whitespace() {
        let rest = factor
            .strip_prefix('x')
            .ok_or_else(|| err(path, format!("factor '{factor}' must start with 'x'")))?;
        let (var_str, pow_str) = match rest.split_once('^') {
            Some((v, p)) => (v, Some(p)),
            None => (rest, None),
        };
        let var: usize = var_str
            .parse()
            .map_err(|_| err(path, format!("bad variable index in '{factor}'")))?;
        if var >= d {
            return Err(err(
                path,
                format!("variable index {var} out of range for d={d}"),
            ));
        }
        let pow: i64 = match pow_str {
            Some(p) => p
                .parse()
                .map_err(|_| err(path, format!("bad exponent in '{factor}'")))?,
            None => 1,
        };
        exp[var] += pow;
    }
    Ok(Some(exp))
}

/// Parses a polynomial string; repeated monomials cancel over GF(2).
pub fn parse_poly(text: &str, d: usize, path: &str) -> Result<LaurentPoly, JobError> {
    let mut exps: Vec<Point> = Vec::new();
    for term in text.split('+') {
        if let Some(e) = parse_term(term, d, path)? {
            exps.push(e);
        }
    }
    Ok(LaurentPoly::from_exponents(d, exps))
}

/// Parses an s×r block of polynomial strings into a Laurent matrix.
pub fn parse_matrix(
    rows: &[Vec<String>],
    cols: usize,
    d: usize,
    path: &str,
) -> Result<LaurentMatrix, JobError> {
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(err(
                format!("{path}[{i}]"),
                format!("expected {cols} entries, got {}", row.len()),
            ));
        }
        for (j, text) in row.iter().enumerate() {
            entries.push(parse_poly(text, d, &format!("{path}[{i}][{j}]"))?);
        }
    }
    LaurentMatrix::from_entries(rows.len(), cols, d, entries).map_err(|e| err(path, e.to_string()))
}

fn render_matrix(m: &LaurentMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect())
        .collect()
}

fn check_dim(d: usize) -> Result<(), JobError> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(err("d", format!("unsupported dimension {d} (1 ≤ d ≤ 3)")))
    }
}

fn check_schedule(schedule: &Option<Vec<usize>>) -> Result<(), JobError> {
    if let Some(s) = schedule {
        if s.is_empty() {
            return Err(err("schedule", "must be nonempty"));
        }
        if s[0] == 0 || s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err("schedule", "must be positive and strictly increasing"));
        }
    }
    Ok(())
}

fn canonical_relations(
    rows: &[Vec<String>],
    r: usize,
    d: usize,
    path: &str,
) -> Result<Vec<Vec<String>>, JobError> {
    let m = parse_matrix(rows, r, d, path)?;
    Ok(render_matrix(&m))
}

impl JobDocument {
    /// Validates the document and rewrites all polynomial strings into
    /// canonical form.
    pub fn validate(mut self) -> Result<Self, JobError> {
        match &mut self {
            JobDocument::Entropy {
                r,
                d,
                relations,
                schedule,
                ..
            } => {
                check_dim(*d)?;
                if *r == 0 {
                    return Err(err("r", "alphabet rank must be ≥ 1"));
                }
                check_schedule(schedule)?;
                *relations = canonical_relations(relations, *r, *d, "relations")?;
            }
            JobDocument::Betti {
                d,
                cells,
                coboundaries,
                degree,
                schedule,
                ..
            } => {
                check_dim(*d)?;
                check_schedule(schedule)?;
                validate_complex_block(cells, coboundaries, *d)?;
                if let Some(p) = degree {
                    if *p >= cells.len() {
                        return Err(err(
                            "degree",
                            format!("degree {p} out of range 0..{}", cells.len()),
                        ));
                    }
                }
                *coboundaries = canonical_coboundaries(cells, coboundaries, *d)?;
            }
            JobDocument::Covers {
                d,
                cells,
                coboundaries,
                degree,
                indices,
                ..
            } => {
                check_dim(*d)?;
                validate_complex_block(cells, coboundaries, *d)?;
                if *degree >= cells.len() {
                    return Err(err(
                        "degree",
                        format!("degree {degree} out of range 0..{}", cells.len()),
                    ));
                }
                if indices.is_empty() || indices.contains(&0) {
                    return Err(err("indices", "must be nonempty and positive"));
                }
                *coboundaries = canonical_coboundaries(cells, coboundaries, *d)?;
            }
            JobDocument::Fixpoints {
                r,
                d,
                relations,
                indices,
                ..
            } => {
                check_dim(*d)?;
                if *r == 0 {
                    return Err(err("r", "alphabet rank must be ≥ 1"));
                }
                if indices.is_empty() || indices.contains(&0) {
                    return Err(err("indices", "must be nonempty and positive"));
                }
                *relations = canonical_relations(relations, *r, *d, "relations")?;
            }
            JobDocument::Duality {
                d,
                r,
                relations,
                random,
                schedule,
                ..
            } => {
                check_dim(*d)?;
                check_schedule(schedule)?;
                match (relations.as_ref(), random) {
                    (Some(_), Some(_)) => {
                        return Err(err("random", "exclusive with explicit relations"));
                    }
                    (None, None) => {
                        return Err(err("relations", "either relations or random is required"));
                    }
                    (Some(rows), None) => {
                        let rank = r.ok_or_else(|| err("r", "required with explicit relations"))?;
                        if rank == 0 {
                            return Err(err("r", "alphabet rank must be ≥ 1"));
                        }
                        let canon = canonical_relations(rows, rank, *d, "relations")?;
                        *relations = Some(canon);
                    }
                    (None, Some(count)) => {
                        if *count == 0 {
                            return Err(err("random", "battery size must be ≥ 1"));
                        }
                    }
                }
            }
            JobDocument::Grothendieck {
                r,
                d,
                relations,
                extra,
                schedule,
                ..
            } => {
                check_dim(*d)?;
                if *r == 0 {
                    return Err(err("r", "generator count must be ≥ 1"));
                }
                check_schedule(schedule)?;
                *relations = canonical_relations(relations, *r, *d, "relations")?;
                *extra = canonical_relations(extra, *r, *d, "extra")?;
            }
            JobDocument::Oracle {
                r, d, relations, n, ..
            } => {
                check_dim(*d)?;
                if *r == 0 {
                    return Err(err("r", "alphabet rank must be ≥ 1"));
                }
                if *n == 0 {
                    return Err(err("n", "window size must be ≥ 1"));
                }
                *relations = canonical_relations(relations, *r, *d, "relations")?;
            }
            JobDocument::TilingVerify {
                d,
                tiles,
                centers,
                target_box,
                target,
                epsilon,
                ..
            } => {
                check_dim(*d)?;
                if !(0.0..1.0).contains(epsilon) {
                    return Err(err("epsilon", format!("ε = {epsilon} outside [0, 1)")));
                }
                if tiles.len() != centers.len() {
                    return Err(err(
                        "centers",
                        format!("{} center sets for {} tiles", centers.len(), tiles.len()),
                    ));
                }
                for (i, tile) in tiles.iter().enumerate() {
                    check_points(tile, *d, &format!("tiles[{i}]"))?;
                }
                for (i, cs) in centers.iter().enumerate() {
                    check_points(cs, *d, &format!("centers[{i}]"))?;
                }
                match (target_box, target.as_ref()) {
                    (Some(0), _) => return Err(err("target_box", "box side must be ≥ 1")),
                    (Some(_), Some(_)) => {
                        return Err(err("target", "exclusive with target_box"));
                    }
                    (None, None) => {
                        return Err(err("target", "either target or target_box is required"));
                    }
                    (None, Some(pts)) => check_points(pts, *d, "target")?,
                    (Some(_), None) => {}
                }
            }
        }
        Ok(self)
    }
}

fn check_points(points: &[Vec<i64>], d: usize, path: &str) -> Result<(), JobError> {
    for (i, p) in points.iter().enumerate() {
        if p.len() != d {
            return Err(err(
                format!("{path}[{i}]"),
                format!("point has {} coordinates, expected {d}", p.len()),
            ));
        }
    }
    Ok(())
}

pub fn to_point(p: &[i64]) -> Point {
    let mut out = [0i64; 3];
    out[..p.len()].copy_from_slice(p);
    out
}

fn validate_complex_block(
    cells: &[usize],
    coboundaries: &[Vec<Vec<String>>],
    _d: usize,
) -> Result<(), JobError> {
    if cells.is_empty() {
        return Err(err("cells", "at least one degree is required"));
    }
    if coboundaries.len() + 1 != cells.len() {
        return Err(err(
            "coboundaries",
            format!(
                "{} degrees need {} coboundary blocks, got {}",
                cells.len(),
                cells.len() - 1,
                coboundaries.len()
            ),
        ));
    }
    for (p, block) in coboundaries.iter().enumerate() {
        if block.len() != cells[p + 1] {
            return Err(err(
                format!("coboundaries[{p}]"),
                format!("expected {} rows, got {}", cells[p + 1], block.len()),
            ));
        }
    }
    Ok(())
}

fn canonical_coboundaries(
    cells: &[usize],
    coboundaries: &[Vec<Vec<String>>],
    d: usize,
) -> Result<Vec<Vec<Vec<String>>>, JobError> {
    coboundaries
        .iter()
        .enumerate()
        .map(|(p, block)| {
            let m = parse_matrix(block, cells[p], d, &format!("coboundaries[{p}]"))?;
            Ok(render_matrix(&m))
        })
        .collect()
}

/// Parses and validates a job document from JSON text, returning it in
/// canonical form.
pub fn parse_job(text: &str) -> Result<JobDocument, JobError> {
    let doc: JobDocument = serde_json::from_str(text).map_err(|e| JobError {
        path: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    doc.validate()
}

/// Canonical serialization of a job document.
pub fn serialize_job(doc: &JobDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("job documents serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledrappier_job_parses() {
        let doc = parse_job(
            r#"{"kind":"entropy","r":1,"d":2,"relations":[["1 + x0 + x1"]],"schedule":[2,4,8]}"#,
        )
        .unwrap();
        match &doc {
            JobDocument::Entropy { relations, .. } => {
                assert_eq!(relations[0][0], "1 + x1 + x0");
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn variable_out_of_range_reports_path() {
        let e = parse_job(r#"{"kind":"entropy","r":1,"d":2,"relations":[["x2"]]}"#).unwrap_err();
        assert_eq!(e.path, "relations[0][0]");
        assert!(e.message.contains("out of range"));
    }

    #[test]
    fn epsilon_out_of_range() {
        let e = parse_job(
            r#"{"kind":"tiling-verify","d":2,"tiles":[],"centers":[],"target_box":4,"epsilon":1.5}"#,
        )
        .unwrap_err();
        assert_eq!(e.path, "epsilon");
    }

    #[test]
    fn grammar_edge_cases() {
        assert!(parse_poly("0", 1, "p").unwrap().is_zero());
        assert_eq!(parse_poly("1", 2, "p").unwrap().support(), &[[0, 0, 0]]);
        // x0 x0 multiplies to x0², x0 + x0 cancels.
        assert_eq!(parse_poly("x0 x0", 1, "p").unwrap().support(), &[[2, 0, 0]]);
        assert!(parse_poly("x0 + x0", 1, "p").unwrap().is_zero());
        assert_eq!(
            parse_poly("x0^-1 x1^2", 2, "p").unwrap().support(),
            &[[-1, 2, 0]]
        );
        assert!(parse_poly("y0", 1, "p").is_err());
        assert!(parse_poly("x0^", 1, "p").is_err());
        assert!(parse_poly("", 1, "p").is_err());
    }

    #[test]
    fn canonical_form_is_a_fixpoint() {
        let texts = [
            r#"{"kind":"entropy","r":1,"d":2,"relations":[["x1 + 1 + x0"]],"schedule":[2,4]}"#,
            r#"{"kind":"oracle","r":1,"d":1,"relations":[["1 + x0"]],"n":3}"#,
            r#"{"kind":"tiling-verify","d":1,"tiles":[[[0],[1]]],"centers":[[[0],[2]]],"target_box":4,"epsilon":0.0}"#,
        ];
        for text in texts {
            let doc = parse_job(text).unwrap();
            let canon = serialize_job(&doc);
            let doc2 = parse_job(&canon).unwrap();
            assert_eq!(doc, doc2);
            assert_eq!(
                canon,
                serialize_job(&doc2),
                "canonical serialization is stable"
            );
        }
    }

    #[test]
    fn json_syntax_error_reports_position() {
        let e = parse_job("{\"kind\": \n nope}").unwrap_err();
        assert!(e.path.contains("line 2"));
    }

    #[test]
    fn betti_shape_validation() {
        let e = parse_job(r#"{"kind":"betti","d":1,"cells":[1,1],"coboundaries":[]}"#).unwrap_err();
        assert_eq!(e.path, "coboundaries");
    }

    #[test]
    fn duality_requires_exactly_one_source() {
        let e = parse_job(r#"{"kind":"duality","d":2,"schedule":[2,4]}"#).unwrap_err();
        assert_eq!(e.path, "relations");
        let e = parse_job(r#"{"kind":"duality","d":2,"r":1,"relations":[["1"]],"random":3}"#)
            .unwrap_err();
        assert_eq!(e.path, "random");
        assert!(parse_job(r#"{"kind":"duality","d":2,"random":3,"seed":7}"#).is_ok());
    }
}
