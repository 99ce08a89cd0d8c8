//! Reading order pools and writing and reading schedules.
//!
//! Pools come either as CSV (header `id,width,count` or
//! `id,width,count,weight`, deckle supplied separately) or as a JSON
//! [`PoolDocument`] carrying its own deckle block. Schedules are written as
//! an aligned table, as a JSON [`ScheduleDocument`] or as CSV, and JSON
//! schedule documents can be read back for validation.
//!
//! Widths and counts are plain decimal integers. A decimal point is
//! accepted only when every digit after it is zero (`55.0`).

use std::fmt::{self, Write as _};

use indexmap::IndexMap;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::error::SolveError;
use crate::heuristics::{Algorithm, SolveResult};
use crate::model::{validate_schedule, CutPattern, DeckleSpec, Order, OrderId, OrderPool, Schedule, Slot, Unit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("input is not valid UTF-8 (valid up to byte {valid_up_to})")]
    Utf8 { valid_up_to: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{record}: {message}")]
    Semantic { record: String, message: String },
    #[error("at {path}: {message}")]
    Structure { path: String, message: String },
    #[error("pool must contain at least one order")]
    EmptyPool,
    #[error("cannot render: {0}")]
    InvalidResult(String),
}

/// How a pool is encoded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoolFormat {
    /// CSV order table; the deckle is not part of the file.
    Csv { deckle: DeckleSpec },
    /// JSON [`PoolDocument`].
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Table,
    #[value(name = "json")]
    Structured,
    Csv,
}

/// JSON form of a pool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoolDocument {
    pub deckle: DeckleDocument,
    pub orders: Vec<OrderRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeckleDocument {
    #[serde(deserialize_with = "integral")]
    pub nominal_width: u64,
    #[serde(default, deserialize_with = "integral")]
    pub trim_allowance: u64,
    pub unit: Unit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderRecord {
    #[serde(deserialize_with = "order_id")]
    pub id: String,
    #[serde(deserialize_with = "integral")]
    pub width: u64,
    #[serde(deserialize_with = "integral")]
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

impl PoolDocument {
    pub fn from_pool(pool: &OrderPool) -> Self {
        let d = pool.deckle();
        PoolDocument {
            deckle: DeckleDocument {
                nominal_width: d.nominal_width(),
                trim_allowance: d.trim_allowance(),
                unit: d.unit(),
            },
            orders: pool
                .orders()
                .iter()
                .map(|o| OrderRecord {
                    id: o.id.to_string(),
                    width: o.width,
                    count: u64::from(o.count),
                    weight: o.weight,
                })
                .collect(),
        }
    }
}

/// JSON form of a solved schedule. `waste_per_reel` and `totals` are
/// informational: readers recompute them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDocument {
    pub algorithm: Algorithm,
    pub patterns: Vec<PatternRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub totals: Option<Totals>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternRecord {
    pub composition: Composition,
    pub reels: u32,
    #[serde(default)]
    pub waste_per_reel: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Totals {
    pub used_reels: u64,
    pub trim_loss: u64,
    pub demand_width: u64,
    pub lower_bound_reels: u64,
}

/// Order id to multiplicity, in document order. Duplicate ids are rejected.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Composition(pub IndexMap<OrderId, u32>);

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.0.iter().map(|(k, v)| (k.as_str(), v)))
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CompositionVisitor;

        impl<'de> Visitor<'de> for CompositionVisitor {
            type Value = Composition;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from order id to roll count")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Composition, A::Error> {
                let mut out = IndexMap::new();
                while let Some((id, n)) = map.next_entry::<String, u32>()? {
                    if out.insert(OrderId::from(id.as_str()), n).is_some() {
                        return Err(de::Error::custom(format!("duplicate order id {id:?}")));
                    }
                }
                Ok(Composition(out))
            }
        }

        deserializer.deserialize_map(CompositionVisitor)
    }
}

impl ScheduleDocument {
    pub fn from_result(result: &SolveResult) -> Self {
        let m = &result.metrics;
        ScheduleDocument {
            algorithm: result.algorithm,
            patterns: result
                .patterns
                .iter()
                .map(|p| PatternRecord {
                    composition: Composition(p.composition().clone()),
                    reels: p.reels(),
                    waste_per_reel: p.waste_per_reel(),
                })
                .collect(),
            totals: Some(Totals {
                used_reels: m.used_reels,
                trim_loss: m.trim_loss,
                demand_width: m.demand_width,
                lower_bound_reels: m.lower_bound_reels,
            }),
        }
    }
}

/// A schedule document read back from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSchedule {
    pub algorithm: Algorithm,
    /// Pattern compositions and repetition counts, in document order.
    pub patterns: Vec<(IndexMap<OrderId, u32>, u32)>,
    /// One slot per reel repetition.
    pub schedule: Schedule,
}

impl ParsedSchedule {
    /// Rebuilds a full result against `pool`, recomputing waste and totals.
    pub fn to_result(&self, pool: &OrderPool) -> Result<SolveResult, SolveError> {
        let patterns = self
            .patterns
            .iter()
            .map(|(composition, reels)| {
                CutPattern::new(composition.iter().map(|(id, &n)| (id.clone(), n)), *reels, pool)
            })
            .collect::<Result<Vec<_>, _>>()?;
        SolveResult::from_patterns(patterns, pool, self.algorithm, None)
    }
}

fn decode(text: &[u8]) -> Result<&str, IoError> {
    std::str::from_utf8(text).map_err(|e| IoError::Utf8 {
        valid_up_to: e.valid_up_to(),
    })
}

/// Parses a pool from CSV or JSON.
pub fn parse_pool(text: &[u8], format: PoolFormat) -> Result<OrderPool, IoError> {
    let text = decode(text)?;
    let (deckle, records) = match format {
        PoolFormat::Csv { deckle } => (deckle, read_csv_orders(text)?),
        PoolFormat::Structured => read_json_pool(text)?,
    };
    if records.is_empty() {
        return Err(IoError::EmptyPool);
    }
    let mut seen = std::collections::HashSet::new();
    for (record, order) in &records {
        let problem = if order.width == 0 {
            Some("width must be positive")
        } else if order.count == 0 {
            Some("count must be at least 1")
        } else if order.weight.is_some_and(|w| !(w.is_finite() && w >= 0.0)) {
            Some("weight must be a non-negative number")
        } else if !seen.insert(&order.id) {
            Some("duplicate order id")
        } else {
            None
        };
        if let Some(message) = problem {
            return Err(IoError::Semantic {
                record: format!("{record} (order {})", order.id),
                message: message.to_owned(),
            });
        }
    }
    let orders = records.into_iter().map(|(_, o)| o).collect();
    OrderPool::new(orders, deckle).map_err(|e| IoError::Semantic {
        record: "pool".to_owned(),
        message: e.to_string(),
    })
}

fn read_csv_orders(text: &str) -> Result<Vec<(String, Order)>, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());
    let syntax = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        IoError::Syntax {
            line,
            column: 1,
            message: e.to_string(),
        }
    };
    let header = reader.headers().map_err(syntax)?.clone();
    let with_weight = match header.iter().collect::<Vec<_>>().as_slice() {
        ["id", "width", "count"] => false,
        ["id", "width", "count", "weight"] => true,
        _ => {
            return Err(IoError::Syntax {
                line: 1,
                column: 1,
                message: "header must be `id,width,count` or `id,width,count,weight`".to_owned(),
            })
        }
    };

    let mut orders = Vec::new();
    for row in reader.records() {
        let row = row.map_err(syntax)?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let field = |column: usize| {
            let raw = &row[column - 1];
            move |message: String| IoError::Syntax {
                line,
                column,
                message: format!("field {raw:?}: {message}"),
            }
        };
        let id = row[0].trim();
        if id.is_empty() {
            return Err(field(1)("order id must not be empty".to_owned()));
        }
        let width = parse_integral(&row[1]).map_err(field(2))?;
        let count = parse_integral(&row[2])
            .and_then(|c| u32::try_from(c).map_err(|_| "count is too large".to_owned()))
            .map_err(field(3))?;
        let weight = if with_weight && !row[3].trim().is_empty() {
            Some(
                row[3]
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| e.to_string())
                    .map_err(field(4))?,
            )
        } else {
            None
        };
        orders.push((
            format!("line {line}"),
            Order {
                id: OrderId::from(id),
                width,
                count,
                weight,
            },
        ));
    }
    Ok(orders)
}

fn read_json_pool(text: &str) -> Result<(DeckleSpec, Vec<(String, Order)>), IoError> {
    let doc: PoolDocument = from_json(text)?;
    let deckle =
        DeckleSpec::new(doc.deckle.nominal_width, doc.deckle.trim_allowance, doc.deckle.unit).map_err(|e| {
            IoError::Semantic {
                record: "deckle".to_owned(),
                message: e.to_string(),
            }
        })?;
    let orders = doc
        .orders
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let count = u32::try_from(r.count).map_err(|_| IoError::Structure {
                path: format!("orders[{i}].count"),
                message: "count is too large".to_owned(),
            })?;
            Ok((
                format!("orders[{i}]"),
                Order {
                    id: OrderId::from(r.id),
                    width: r.width,
                    count,
                    weight: r.weight,
                },
            ))
        })
        .collect::<Result<_, IoError>>()?;
    Ok((deckle, orders))
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, IoError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => IoError::Structure {
                path,
                message: inner.to_string(),
            },
            _ => IoError::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            },
        }
    })?;
    de.end().map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Parses a non-negative integer, allowing a decimal point followed only by zeros.
fn parse_integral(raw: &str) -> Result<u64, String> {
    let s = raw.trim();
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
        return Err("expected a non-negative integer".to_owned());
    }
    if !frac.bytes().all(|b| b == b'0') {
        return Err("expected an integer (fractional part must be zero)".to_owned());
    }
    int.parse::<u64>().map_err(|e| e.to_string())
}

fn integral<'de, D: Deserializer<'de>>(deserializer: D) -> Result<u64, D::Error> {
    let n = serde_json::Number::deserialize(deserializer)?;
    if let Some(u) = n.as_u64() {
        return Ok(u);
    }
    match n.as_f64() {
        Some(f) if f >= 0.0 && f.fract() == 0.0 && f < 9_007_199_254_740_992.0 => Ok(f as u64),
        _ => Err(de::Error::custom(format!("expected a non-negative integer, found {n}"))),
    }
}

fn order_id<'de, D: Deserializer<'de>>(deserializer: D) -> Result<String, D::Error> {
    match serde_json::Value::deserialize(deserializer)? {
        serde_json::Value::String(s) if !s.is_empty() => Ok(s),
        serde_json::Value::Number(n) if n.is_u64() => Ok(n.to_string()),
        other => Err(de::Error::custom(format!(
            "order id must be a non-empty string or a non-negative integer, found {other}"
        ))),
    }
}

/// Reads a JSON [`ScheduleDocument`] and expands it into slots. Totals and
/// per-reel waste in the document are ignored. Unknown order ids are left
/// for [`validate_schedule`] to report.
pub fn parse_schedule(text: &[u8]) -> Result<ParsedSchedule, IoError> {
    let doc: ScheduleDocument = from_json(decode(text)?)?;
    let mut patterns = Vec::with_capacity(doc.patterns.len());
    let mut slots = Vec::new();
    for (i, record) in doc.patterns.into_iter().enumerate() {
        let structure = |field: &str, message: &str| IoError::Structure {
            path: format!("patterns[{i}].{field}"),
            message: message.to_owned(),
        };
        if record.reels == 0 {
            return Err(structure("reels", "must be at least 1"));
        }
        if record.composition.0.is_empty() {
            return Err(structure("composition", "must not be empty"));
        }
        if let Some(id) = record.composition.0.iter().find(|(_, &n)| n == 0).map(|(id, _)| id) {
            return Err(structure(&format!("composition.{id}"), "must be at least 1"));
        }
        let slot = Slot::from_rolls(record.composition.0.iter().map(|(id, &n)| (id.clone(), n)))
            .expect("multiplicities checked above");
        slots.extend(std::iter::repeat_n(slot, record.reels as usize));
        patterns.push((record.composition.0, record.reels));
    }
    Ok(ParsedSchedule {
        algorithm: doc.algorithm,
        patterns,
        schedule: Schedule::new(slots),
    })
}

/// Label used in the table report: one `id (reels)` term per roll.
pub fn pattern_label(pattern: &CutPattern) -> String {
    let mut terms = Vec::new();
    for (id, &m) in pattern.composition() {
        for _ in 0..m {
            terms.push(format!("{id} ({})", pattern.reels()));
        }
    }
    terms.join(" + ")
}

/// Renders a solver result. The result must contain at least one pattern
/// and pass validation against `pool`.
pub fn render_report(result: &SolveResult, pool: &OrderPool, format: ReportFormat) -> Result<String, IoError> {
    if result.patterns.is_empty() {
        return Err(IoError::InvalidResult("result has no patterns".to_owned()));
    }
    let report = validate_schedule(&result.schedule, pool);
    if let Some(v) = report.violations.first() {
        return Err(IoError::InvalidResult(format!("schedule is invalid: {v}")));
    }
    Ok(match format {
        ReportFormat::Table => render_table(result, pool),
        ReportFormat::Structured => {
            let mut s = serde_json::to_string_pretty(&ScheduleDocument::from_result(result))
                .expect("schedule documents always serialize");
            s.push('\n');
            s
        }
        ReportFormat::Csv => render_csv(result),
    })
}

fn render_table(result: &SolveResult, pool: &OrderPool) -> String {
    const HEADERS: [&str; 4] = ["Paired Orders", "Rolls Required", "Waste per Roll", "Total Waste"];
    let unit = pool.deckle().unit();
    let labels: Vec<String> = result.patterns.iter().map(pattern_label).collect();
    let first = labels
        .iter()
        .map(String::len)
        .chain([HEADERS[0].len()])
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    writeln!(
        out,
        "{} schedule, effective width {} {unit}",
        result.algorithm,
        pool.effective_width()
    )
    .unwrap();
    writeln!(
        out,
        "{:<first$}  {}  {}  {}",
        HEADERS[0], HEADERS[1], HEADERS[2], HEADERS[3]
    )
    .unwrap();
    for (label, p) in labels.iter().zip(&result.patterns) {
        writeln!(
            out,
            "{label:<first$}  {:>w1$}  {:>w2$}  {:>w3$}",
            p.reels(),
            p.waste_per_reel(),
            p.total_waste(),
            w1 = HEADERS[1].len(),
            w2 = HEADERS[2].len(),
            w3 = HEADERS[3].len(),
        )
        .unwrap();
    }
    let m = &result.metrics;
    writeln!(
        out,
        "Total: {} reels, {} waste ({unit}); lower bound {} reels; demand width {} {unit}",
        m.used_reels, m.trim_loss, m.lower_bound_reels, m.demand_width
    )
    .unwrap();
    out
}

fn render_csv(result: &SolveResult) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["algorithm", "composition", "reels", "waste_per_reel", "total_waste"])
        .unwrap();
    for p in &result.patterns {
        let composition: Vec<String> = p.composition().iter().map(|(id, m)| format!("{id}:{m}")).collect();
        writer
            .write_record([
                result.algorithm.to_string(),
                composition.join(" "),
                p.reels().to_string(),
                p.waste_per_reel().to_string(),
                p.total_waste().to_string(),
            ])
            .unwrap();
    }
    String::from_utf8(writer.into_inner().expect("in-memory writer")).expect("csv output is UTF-8")
}
