use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::PdaError;

/// One cell of a PDA: a star or a symbol id in `1..=S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Star,
    Symbol(u32),
}

impl Entry {
    pub fn is_star(self) -> bool {
        self == Entry::Star
    }

    pub fn symbol(self) -> Option<u32> {
        match self {
            Entry::Star => None,
            Entry::Symbol(s) => Some(s),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Star => write!(f, "*"),
            Entry::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// Declared `(K, F, Q, S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdaParams {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "F")]
    pub f: usize,
    #[serde(rename = "Q")]
    pub q: usize,
    #[serde(rename = "S")]
    pub s: usize,
}

impl PdaParams {
    pub fn new(k: usize, f: usize, q: usize, s: usize) -> Self {
        Self { k, f, q, s }
    }
}

impl fmt::Display for PdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.k, self.f, self.q, self.s)
    }
}

/// Why C3 fails for two cells carrying the same symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C3Failure {
    SameRow,
    SameColumn,
    /// The given cross cell `(row, column)` is not a star.
    CrossCell(usize, usize),
}

/// First failed PDA condition. Indices are zero-based; `Display` is one-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdaViolation {
    NonPositive(char),
    SymbolOutOfRange { row: usize, col: usize, symbol: u32, s: usize },
    C1 { col: usize, stars: usize, expected: usize },
    C2 { symbol: u32 },
    C3 { symbol: u32, first: (usize, usize), second: (usize, usize), failure: C3Failure },
    QNotBelowF { q: usize, f: usize },
}

impl PdaViolation {
    /// Short name of the failed condition: "C1", "C2", "C3", "Q<F", ...
    pub fn condition(&self) -> &'static str {
        match self {
            Self::NonPositive(_) => "positivity",
            Self::SymbolOutOfRange { .. } => "symbol range",
            Self::C1 { .. } => "C1",
            Self::C2 { .. } => "C2",
            Self::C3 { .. } => "C3",
            Self::QNotBelowF { .. } => "Q<F",
        }
    }
}

impl fmt::Display for PdaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::NonPositive(p) => write!(f, "{p} must be a positive integer"),
            Self::SymbolOutOfRange { row, col, symbol, s } => write!(
                f,
                "symbol {symbol} at row {}, column {} is outside 1..{s}",
                row + 1,
                col + 1
            ),
            Self::C1 { col, stars, expected } => write!(
                f,
                "C1 violated at column {}: {stars} stars, expected {expected}",
                col + 1
            ),
            Self::C2 { symbol } => write!(f, "C2 violated: symbol {symbol} never occurs"),
            Self::C3 { symbol, first, second, failure } => {
                write!(
                    f,
                    "C3 violated by symbol {symbol} at ({},{}) and ({},{}): ",
                    first.0 + 1,
                    first.1 + 1,
                    second.0 + 1,
                    second.1 + 1
                )?;
                match failure {
                    C3Failure::SameRow => write!(f, "same row"),
                    C3Failure::SameColumn => write!(f, "same column"),
                    C3Failure::CrossCell(r, c) => write!(f, "cross cell ({},{}) is not *", r + 1, c + 1),
                }
            }
            Self::QNotBelowF { q, f: ff } => write!(f, "Q = {q} must be less than F = {ff}"),
        }
    }
}

impl std::error::Error for PdaViolation {}

/// `M/N = Q/F` and `R = S/F` of the induced caching scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeParameters {
    pub k: usize,
    pub f: usize,
    pub memory_ratio: BigRational,
    pub rate: BigRational,
}

/// An `F × K` array over `{*} ∪ [S]` with declared parameters. Holding a
/// `Pda` says nothing about validity; call [`Pda::validate`].
///
/// Equality compares parameters and grid only, not provenance.
#[derive(Debug, Clone)]
pub struct Pda {
    params: PdaParams,
    grid: Vec<Entry>,
    provenance: Option<serde_json::Value>,
}

impl PartialEq for Pda {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.grid == other.grid
    }
}

impl Eq for Pda {}

#[derive(Serialize, Deserialize)]
struct PdaJson {
    #[serde(flatten)]
    params: PdaParams,
    grid: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<serde_json::Value>,
}

pub(crate) fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Pda {
    /// From `F` rows of `K` entries each.
    pub fn new(params: PdaParams, rows: Vec<Vec<Entry>>) -> Result<Self, PdaError> {
        if rows.len() != params.f {
            return Err(PdaError::Shape(format!("declared F = {} but {} rows given", params.f, rows.len())));
        }
        if let Some((j, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != params.k) {
            return Err(PdaError::Shape(format!(
                "declared K = {} but row {} has {} entries",
                params.k,
                j + 1,
                row.len()
            )));
        }
        Ok(Self {
            params,
            grid: rows.into_iter().flatten().collect(),
            provenance: None,
        })
    }

    /// Row-major grid of `F·K` entries.
    pub fn from_grid(params: PdaParams, grid: Vec<Entry>) -> Result<Self, PdaError> {
        if grid.len() != params.f * params.k {
            return Err(PdaError::Shape(format!(
                "grid has {} cells, expected F·K = {}",
                grid.len(),
                params.f * params.k
            )));
        }
        Ok(Self { params, grid, provenance: None })
    }

    pub fn params(&self) -> PdaParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn f(&self) -> usize {
        self.params.f
    }

    pub fn q(&self) -> usize {
        self.params.q
    }

    pub fn s(&self) -> usize {
        self.params.s
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Entry {
        self.grid[row * self.params.k + col]
    }

    pub fn row(&self, row: usize) -> &[Entry] {
        &self.grid[row * self.params.k..(row + 1) * self.params.k]
    }

    pub fn grid(&self) -> &[Entry] {
        &self.grid
    }

    /// Returns a copy with cell `(row, col)` replaced.
    pub fn with_cell(&self, row: usize, col: usize, entry: Entry) -> Self {
        let mut out = self.clone();
        out.grid[row * self.params.k + col] = entry;
        out
    }

    /// Same grid under different declared parameters (shape must agree).
    pub fn with_params(&self, params: PdaParams) -> Result<Self, PdaError> {
        Pda::from_grid(params, self.grid.clone()).map(|p| Pda { provenance: self.provenance.clone(), ..p })
    }

    pub fn provenance(&self) -> Option<&serde_json::Value> {
        self.provenance.as_ref()
    }

    pub fn with_provenance(mut self, provenance: serde_json::Value) -> Self {
        self.provenance = Some(provenance);
        self
    }

    /// Star count of every column.
    pub fn star_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.params.k];
        for (i, e) in self.grid.iter().enumerate() {
            if e.is_star() {
                counts[i % self.params.k] += 1;
            }
        }
        counts
    }

    /// Cells of each symbol `1..=S`, row-major. Symbols outside the range
    /// are ignored.
    pub fn cells_by_symbol(&self) -> Vec<Vec<(usize, usize)>> {
        let mut cells = vec![Vec::new(); self.params.s];
        let k = self.params.k;
        for (i, e) in self.grid.iter().enumerate() {
            if let Entry::Symbol(s) = *e {
                if (1..=self.params.s).contains(&(s as usize)) {
                    cells[s as usize - 1].push((i / k, i % k));
                }
            }
        }
        cells
    }

    /// Checks positivity, symbol range, C1, C2, C3 and `Q < F`, in that
    /// order, returning the first failure.
    pub fn validate(&self) -> Result<PdaParams, PdaViolation> {
        let PdaParams { k, f, q, s } = self.params;
        for (name, value) in [('K', k), ('F', f), ('Q', q), ('S', s)] {
            if value == 0 {
                return Err(PdaViolation::NonPositive(name));
            }
        }
        for (i, e) in self.grid.iter().enumerate() {
            if let Entry::Symbol(sym) = *e {
                if sym == 0 || sym as usize > s {
                    return Err(PdaViolation::SymbolOutOfRange { row: i / k, col: i % k, symbol: sym, s });
                }
            }
        }
        if let Some((col, &stars)) = self.star_counts().iter().enumerate().find(|(_, &n)| n != q) {
            return Err(PdaViolation::C1 { col, stars, expected: q });
        }
        let cells = self.cells_by_symbol();
        if let Some(i) = cells.iter().position(Vec::is_empty) {
            return Err(PdaViolation::C2 { symbol: i as u32 + 1 });
        }
        for (i, list) in cells.iter().enumerate() {
            for (a, &first) in list.iter().enumerate() {
                for &second in &list[a + 1..] {
                    let failure = if first.0 == second.0 {
                        Some(C3Failure::SameRow)
                    } else if first.1 == second.1 {
                        Some(C3Failure::SameColumn)
                    } else if !self.get(first.0, second.1).is_star() {
                        Some(C3Failure::CrossCell(first.0, second.1))
                    } else if !self.get(second.0, first.1).is_star() {
                        Some(C3Failure::CrossCell(second.0, first.1))
                    } else {
                        None
                    };
                    if let Some(failure) = failure {
                        return Err(PdaViolation::C3 { symbol: i as u32 + 1, first, second, failure });
                    }
                }
            }
        }
        if q >= f {
            return Err(PdaViolation::QNotBelowF { q, f });
        }
        Ok(self.params)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Symbols renumbered `1, 2, ...` in first-occurrence row-major order;
    /// `S` becomes the number of distinct symbols.
    pub fn canonical(&self) -> Self {
        let mut map = HashMap::new();
        let grid = self
            .grid
            .iter()
            .map(|e| match *e {
                Entry::Star => Entry::Star,
                Entry::Symbol(s) => {
                    let next = map.len() as u32 + 1;
                    Entry::Symbol(*map.entry(s).or_insert(next))
                }
            })
            .collect();
        Pda {
            params: PdaParams { s: map.len(), ..self.params },
            grid,
            provenance: self.provenance.clone(),
        }
    }

    /// `true` when the grids agree up to a bijection on symbols.
    pub fn equivalent(&self, other: &Pda) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.params == b.params && a.grid == b.grid
    }

    pub fn scheme_parameters(&self) -> SchemeParameters {
        SchemeParameters {
            k: self.params.k,
            f: self.params.f,
            memory_ratio: ratio(self.params.q, self.params.f),
            rate: ratio(self.params.s, self.params.f),
        }
    }

    /// Header line `K F Q S`, then one line of `K` tokens per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.params);
        for j in 0..self.params.f {
            let line: Vec<String> = self.row(j).iter().map(Entry::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, PdaError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| PdaError::Parse { line: 1, message: "empty input".into() })?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| PdaError::Parse {
                line: hline,
                message: format!("header must be four non-negative integers \"K F Q S\", got {header:?}"),
            })?;
        let [k, f, q, s] = nums[..] else {
            return Err(PdaError::Parse {
                line: hline,
                message: format!("header must have exactly four fields \"K F Q S\", got {}", nums.len()),
            });
        };
        let params = PdaParams { k, f, q, s };
        let mut rows = Vec::with_capacity(f);
        for (lineno, line) in lines {
            let row = line
                .split_whitespace()
                .map(|tok| parse_token(tok).ok_or_else(|| PdaError::Parse {
                    line: lineno,
                    message: format!("malformed token {tok:?}: expected \"*\" or a positive integer"),
                }))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != k {
                return Err(PdaError::Parse {
                    line: lineno,
                    message: format!("expected {k} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != f {
            return Err(PdaError::Parse {
                line: hline,
                message: format!("header declares F = {f} rows but {} follow", rows.len()),
            });
        }
        Pda::new(params, rows)
    }

    /// JSON envelope: `{"K","F","Q","S","grid":[row strings],"provenance"}`.
    pub fn to_json(&self) -> String {
        let envelope = PdaJson {
            params: self.params,
            grid: (0..self.params.f)
                .map(|j| self.row(j).iter().map(Entry::to_string).collect::<Vec<_>>().join(" "))
                .collect(),
            provenance: self.provenance.clone(),
        };
        serde_json::to_string_pretty(&envelope).expect("PDA serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PdaError> {
        let raw: PdaJson = serde_json::from_str(text).map_err(|e| PdaError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let mut body = format!("{}\n", raw.params);
        for row in &raw.grid {
            body.push_str(row);
            body.push('\n');
        }
        let pda = Pda::parse_text(&body)?;
        Ok(match raw.provenance {
            Some(p) => pda.with_provenance(p),
            None => pda,
        })
    }

    /// Text or JSON, chosen by the first non-blank character.
    pub fn parse(text: &str) -> Result<Self, PdaError> {
        if text.trim_start().starts_with('{') {
            Pda::from_json(text)
        } else {
            Pda::parse_text(text)
        }
    }
}

fn parse_token(tok: &str) -> Option<Entry> {
    if tok == "*" {
        return Some(Entry::Star);
    }
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tok.parse().ok().map(Entry::Symbol)
}

impl fmt::Display for Pda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Pda {
        Pda::parse_text("2 2 1 1\n* 1\n1 *\n").unwrap()
    }

    #[test]
    fn validator_examples() {
        assert_eq!(tiny().validate().unwrap(), PdaParams::new(2, 2, 1, 1));
        let q2 = tiny().with_params(PdaParams::new(2, 2, 2, 1)).unwrap();
        assert!(matches!(q2.validate(), Err(PdaViolation::C1 { col: 0, stars: 1, expected: 2 })));
        let same_row = Pda::parse_text("2 2 1 1\n1 1\n* *\n").unwrap();
        assert!(matches!(
            same_row.validate(),
            Err(PdaViolation::C3 { failure: C3Failure::SameRow, .. })
        ));
    }

    #[test]
    fn validator_other_failures() {
        let zero_q = tiny().with_params(PdaParams::new(2, 2, 0, 1)).unwrap();
        assert_eq!(zero_q.validate(), Err(PdaViolation::NonPositive('Q')));
        let big_s = tiny().with_params(PdaParams::new(2, 2, 1, 2)).unwrap();
        assert_eq!(big_s.validate(), Err(PdaViolation::C2 { symbol: 2 }));
        let out = Pda::parse_text("2 2 1 1\n* 2\n1 *\n").unwrap();
        assert!(matches!(out.validate(), Err(PdaViolation::SymbolOutOfRange { symbol: 2, .. })));
        let all_star = Pda::parse_text("1 1 1 1\n*\n").unwrap();
        assert!(matches!(all_star.validate(), Err(PdaViolation::C2 { .. })));
    }

    #[test]
    fn c3_cross_cell() {
        // symbol 1 at (1,1) and (2,2); cross cell (1,2) holds 2
        let p = Pda::parse_text("2 3 1 2\n1 2\n* 1\n2 *\n").unwrap();
        match p.validate() {
            Err(PdaViolation::C3 { symbol: 1, failure: C3Failure::CrossCell(0, 1), .. }) => {}
            other => panic!("{other:?}"),
        }
        let msg = p.validate().unwrap_err().to_string();
        assert!(msg.contains("cross cell (1,2)"), "{msg}");
    }

    #[test]
    fn display_is_one_based() {
        let v = PdaViolation::C1 { col: 2, stars: 1, expected: 2 };
        assert_eq!(v.to_string(), "C1 violated at column 3: 1 stars, expected 2");
    }

    #[test]
    fn text_round_trip_and_parse_errors() {
        let p = tiny();
        assert_eq!(p.to_text(), "2 2 1 1\n* 1\n1 *\n");
        assert_eq!(Pda::parse_text(&p.to_text()).unwrap(), p);
        assert!(matches!(Pda::parse_text("2 2 1 1\n* x\n1 *\n"), Err(PdaError::Parse { line: 2, .. })));
        assert!(matches!(Pda::parse_text("2 2 1 1\n* -1\n1 *\n"), Err(PdaError::Parse { .. })));
        assert!(matches!(Pda::parse_text("2 2 1\n"), Err(PdaError::Parse { line: 1, .. })));
        assert!(matches!(Pda::parse_text("2 2 1 1\n* 1\n"), Err(PdaError::Parse { .. })));
        assert!(matches!(Pda::parse_text("2 2 1 1\n* 1 1\n1 *\n"), Err(PdaError::Parse { line: 2, .. })));
        assert!(Pda::parse_text("").is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = tiny().with_provenance(serde_json::json!({"family": "test"}));
        let text = p.to_json();
        assert!(text.contains("\"K\": 2"));
        let back = Pda::parse(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.provenance(), p.provenance());
        assert_eq!(back, tiny());
        assert!(Pda::from_json("{\"K\": 2}").is_err());
    }

    #[test]
    fn canonical_relabeling() {
        let p = Pda::parse_text("2 3 1 2\n* 2\n2 *\n1 1\n").unwrap();
        let c = p.canonical();
        assert_eq!(c.to_text(), "2 3 1 2\n* 1\n1 *\n2 2\n");
        assert!(p.equivalent(&c));
        assert!(!p.equivalent(&tiny()));
    }

    #[test]
    fn scheme_parameters() {
        let sp = tiny().scheme_parameters();
        assert_eq!(sp.memory_ratio, ratio(1, 2));
        assert_eq!(sp.rate, ratio(1, 2));
        assert_eq!(sp.rate.to_string(), "1/2");
    }
}
