//! Text formats for instances and solutions.
//!
//! Instance file:
//!
//! ```text
//! BMPE 1
//! 2 2
//! alphabet ACT
//! CA CT
//! TA AC
//! placement
//! 0 1
//! 2 3
//! budget 10
//! ```
//!
//! The `alphabet` line is optional; without it the alphabet is the sorted set
//! of characters used by the probes. Probes are whitespace separated and may
//! be spread over lines freely, though [`write_instance`] emits one array row
//! per line. `placement` and `budget` are optional and may come in either
//! order. `#` starts a comment that runs to the end of the line, so `#` can
//! not be a probe character in files.
//!
//! Solution file:
//!
//! ```text
//! BMPE-SOLUTION 1
//! border_length 10
//! deposition CTAC
//! placement
//! 0 1
//! 2 3
//! ```

use bordermin::{Alphabet, Instance, Placement, Probe};
use thiserror::Error;

pub const INSTANCE_HEADER: &str = "BMPE 1";
pub const SOLUTION_HEADER: &str = "BMPE-SOLUTION 1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("a {rows}x{cols} array needs {expected} probes, found {actual}")]
    CountMismatch { rows: usize, cols: usize, expected: usize, actual: usize },
    #[error("line {line}, column {col}: {ch:?} is not in the alphabet")]
    AlphabetViolation { line: usize, col: usize, ch: char },
    #[error(transparent)]
    Instance(#[from] bordermin::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub placement: Option<Placement>,
}

impl InstanceFile {
    pub fn budget(&self) -> Option<u64> {
        self.instance.budget()
    }

    /// The file's placement, or the identity (probes in listed order).
    pub fn placement_or_identity(&self) -> Placement {
        self.placement.clone().unwrap_or_else(|| Placement::identity(&self.instance))
    }
}

/// A parsed solution file. Values are kept raw so that the verifier can report
/// on malformed claims instead of rejecting them at parse time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFile {
    pub border_length: u64,
    pub deposition: String,
    /// Slot indices, one vector per row.
    pub placement: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl Token<'_> {
    fn syntax(&self, msg: impl Into<String>) -> FormatError {
        FormatError::Syntax { line: self.line, col: self.col, msg: msg.into() }
    }

    fn number<T: std::str::FromStr>(&self, what: &str) -> Result<T> {
        self.text.parse().map_err(|_| self.syntax(format!("expected {what}, found {:?}", self.text)))
    }
}

/// Non-empty lines with comments removed, as token lists.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in body.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, col)),
                (true, Some((b, c))) => {
                    tokens.push(Token { text: &body[b..byte], line: i + 1, col: c + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token { text: &body[b..], line: i + 1, col: c + 1 });
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

fn expect_header(lines: &[Vec<Token<'_>>], header: &str, text: &str) -> Result<()> {
    let want: Vec<&str> = header.split(' ').collect();
    match lines.first() {
        None => Err(FormatError::Syntax { line: last_line(text), col: 1, msg: format!("missing {header:?} header") }),
        Some(first) => {
            let got: Vec<&str> = first.iter().map(|t| t.text).collect();
            if got == want {
                Ok(())
            } else {
                Err(first[0].syntax(format!("expected header {header:?}")))
            }
        }
    }
}

fn exact_arity<'a>(line: &'a [Token<'a>], n: usize, what: &str) -> Result<&'a [Token<'a>]> {
    if line.len() != n {
        let at = line.get(n).unwrap_or(&line[0]);
        return Err(at.syntax(format!("{what} takes {} value(s)", n - 1)));
    }
    Ok(line)
}

fn grid_rows(lines: &[Vec<Token<'_>>], rows: usize, cols: usize, after: &Token<'_>) -> Result<Vec<Vec<usize>>> {
    if lines.len() < rows {
        return Err(after.syntax(format!("placement needs {rows} rows, found {}", lines.len())));
    }
    lines[..rows]
        .iter()
        .map(|line| {
            if line.len() != cols {
                let at = line.get(cols).unwrap_or(&line[0]);
                return Err(at.syntax(format!("placement rows hold {cols} slot indices, found {}", line.len())));
            }
            line.iter().map(|t| t.number("a slot index")).collect()
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let lines = tokenize(text);
    expect_header(&lines, INSTANCE_HEADER, text)?;
    let dims = lines
        .get(1)
        .ok_or_else(|| FormatError::Syntax { line: last_line(text), col: 1, msg: "missing dimensions".into() })?;
    let dims = exact_arity(dims, 2, "the dimension line")
        .map_err(|_| dims[0].syntax("expected the dimension line \"ROWS COLS\""))?;
    let rows: usize = dims[0].number("a row count")?;
    let cols: usize = dims[1].number("a column count")?;
    if rows == 0 || cols == 0 {
        return Err(dims[0].syntax("dimensions must be at least 1"));
    }

    let mut k = 2;
    let mut declared: Option<Alphabet> = None;
    if let Some(line) = lines.get(k) {
        if line[0].text == "alphabet" {
            let line = exact_arity(line, 2, "alphabet")?;
            declared = Some(Alphabet::new(line[1].text.chars()).map_err(|e| line[1].syntax(e.to_string()))?);
            k += 1;
        }
    }

    let mut probe_tokens: Vec<&Token<'_>> = Vec::new();
    while let Some(line) = lines.get(k) {
        if matches!(line[0].text, "placement" | "budget" | "alphabet") {
            break;
        }
        probe_tokens.extend(line.iter());
        k += 1;
    }
    if probe_tokens.len() != rows * cols {
        return Err(FormatError::CountMismatch { rows, cols, expected: rows * cols, actual: probe_tokens.len() });
    }
    let alphabet = match declared {
        Some(a) => {
            for t in &probe_tokens {
                for (i, ch) in t.text.chars().enumerate() {
                    if !a.contains(ch) {
                        return Err(FormatError::AlphabetViolation { line: t.line, col: t.col + i, ch });
                    }
                }
            }
            a
        }
        None => Alphabet::sorted_from(probe_tokens.iter().flat_map(|t| t.text.chars()))
            .map_err(|e| probe_tokens[0].syntax(e.to_string()))?,
    };
    let probes = probe_tokens
        .iter()
        .map(|t| Probe::parse(&alphabet, t.text).map_err(|e| t.syntax(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let mut instance = Instance::new(alphabet, probes, rows, cols)?;

    let mut placement = None;
    let mut budget = None;
    while let Some(line) = lines.get(k) {
        match line[0].text {
            "placement" if placement.is_none() => {
                exact_arity(line, 1, "placement")?;
                let grid = grid_rows(&lines[k + 1..], rows, cols, &line[0])?;
                let flat = grid.into_iter().flatten().collect();
                placement = Some(Placement::new(&instance, flat).map_err(|e| line[0].syntax(e.to_string()))?);
                k += 1 + rows;
            }
            "budget" if budget.is_none() => {
                let line = exact_arity(line, 2, "budget")?;
                budget = Some(line[1].number::<u64>("a budget")?);
                k += 1;
            }
            other => return Err(line[0].syntax(format!("unexpected {other:?}"))),
        }
    }
    instance = instance.with_budget(budget);
    Ok(InstanceFile { instance, placement })
}

fn write_grid(out: &mut String, cols: usize, slots: &[usize]) {
    for row in slots.chunks(cols) {
        let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Serializes an instance file. The alphabet line is always written so that
/// unused alphabet characters survive a round trip.
pub fn write_instance(file: &InstanceFile) -> String {
    let inst = &file.instance;
    let mut out = format!("{INSTANCE_HEADER}\n{} {}\n", inst.rows(), inst.cols());
    out.push_str("alphabet ");
    out.extend(inst.alphabet().chars());
    out.push('\n');
    for r in 0..inst.rows() {
        let row: Vec<String> = (0..inst.cols()).map(|c| inst.probe_string(r * inst.cols() + c)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(p) = &file.placement {
        out.push_str("placement\n");
        write_grid(&mut out, inst.cols(), p.slots());
    }
    if let Some(o) = inst.budget() {
        out.push_str(&format!("budget {o}\n"));
    }
    out
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let lines = tokenize(text);
    expect_header(&lines, SOLUTION_HEADER, text)?;
    let mut border_length = None;
    let mut deposition = None;
    let mut placement = None;
    let mut k = 1;
    while let Some(line) = lines.get(k) {
        match line[0].text {
            "border_length" if border_length.is_none() => {
                let line = exact_arity(line, 2, "border_length")?;
                border_length = Some(line[1].number::<u64>("a border length")?);
                k += 1;
            }
            // An empty deposition is only valid for an instance with no probes,
            // which does not exist, so the value is required.
            "deposition" if deposition.is_none() => {
                let line = exact_arity(line, 2, "deposition")?;
                deposition = Some(line[1].text.to_string());
                k += 1;
            }
            "placement" if placement.is_none() => {
                exact_arity(line, 1, "placement")?;
                let rest = &lines[k + 1..];
                let rows = rest
                    .iter()
                    .take_while(|l| l[0].text.parse::<usize>().is_ok())
                    .count()
                    .max(1);
                let cols = rest.first().map_or(0, |l| l.len());
                placement = Some(grid_rows(rest, rows, cols, &line[0])?);
                k += 1 + rows;
            }
            other => return Err(line[0].syntax(format!("unexpected {other:?}"))),
        }
    }
    let missing = |what: &str| FormatError::Syntax { line: last_line(text), col: 1, msg: format!("missing {what}") };
    Ok(SolutionFile {
        border_length: border_length.ok_or_else(|| missing("border_length"))?,
        deposition: deposition.ok_or_else(|| missing("deposition"))?,
        placement: placement.ok_or_else(|| missing("placement"))?,
    })
}

pub fn write_solution(instance: &Instance, solution: &bordermin::Solution) -> String {
    let mut out = format!(
        "{SOLUTION_HEADER}\nborder_length {}\ndeposition {}\nplacement\n",
        solution.border_length,
        solution.deposition.to_string_in(instance.alphabet())
    );
    write_grid(&mut out, instance.cols(), solution.placement.slots());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = "BMPE 1\n2 2\nCA CT TA AC\nplacement\n0 1\n2 3\n";

    #[test]
    fn golden_2x2() {
        let f = parse_instance(GOLDEN).unwrap();
        assert_eq!(f.instance.rows(), 2);
        assert_eq!(f.instance.probe_string(3), "AC");
        assert_eq!(f.instance.alphabet().chars(), &['A', 'C', 'T']);
        assert_eq!(f.placement.unwrap().slots(), &[0, 1, 2, 3]);
        assert_eq!(f.instance.budget(), None);
    }

    #[test]
    fn single_cell() {
        let f = parse_instance("BMPE 1\n1 1\nA\n").unwrap();
        assert_eq!(f.instance.cell_count(), 1);
        assert!(f.placement.is_none());
    }

    #[test]
    fn count_mismatch() {
        let err = parse_instance("BMPE 1\n2 2\nCA CT TA\n").unwrap_err();
        assert!(matches!(err, FormatError::CountMismatch { expected: 4, actual: 3, .. }), "{err}");
    }

    #[test]
    fn alphabet_violation_points_at_the_character() {
        let err = parse_instance("BMPE 1\n1 2\nalphabet AC\nAC  CG\n").unwrap_err();
        match err {
            FormatError::AlphabetViolation { line, col, ch } => assert_eq!((line, col, ch), (4, 6, 'G')),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("BMPE 2\n1 1\nA\n", 1, 1),
            ("BMPE 1\n1 x\nA\n", 2, 3),
            ("BMPE 1\n1 1\nA\nbudget\n", 4, 1),
            ("BMPE 1\n1 2\nA B\nplacement\n0 0\n", 4, 1),
            ("BMPE 1\n1 1\nA\nbudget 1\nbudget 2\n", 5, 1),
            ("", 1, 1),
        ];
        for (text, l, c) in cases {
            match parse_instance(text) {
                Err(FormatError::Syntax { line, col, .. }) => assert_eq!((line, col), (l, c), "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# fixture\nBMPE 1\n\n1 2   # dims\nA B\nbudget 3 # o\n";
        let f = parse_instance(text).unwrap();
        assert_eq!(f.instance.budget(), Some(3));
    }

    #[test]
    fn round_trip() {
        let f = parse_instance("BMPE 1\n2 2\nalphabet TCAG\nCA CT TA AC\nbudget 7\nplacement\n3 1\n2 0\n").unwrap();
        let text = write_instance(&f);
        assert_eq!(parse_instance(&text).unwrap(), f);
        assert_eq!(write_instance(&parse_instance(&text).unwrap()), text);
    }

    #[test]
    fn solution_round_trip() {
        let f = parse_instance(GOLDEN).unwrap();
        let d = bordermin::DepositionSequence::parse(&f.instance, "CTAC").unwrap();
        let s = bordermin::Solution::evaluate(&f.instance, f.placement_or_identity(), d).unwrap();
        let text = write_solution(&f.instance, &s);
        assert_eq!(text, "BMPE-SOLUTION 1\nborder_length 10\ndeposition CTAC\nplacement\n0 1\n2 3\n");
        let back = parse_solution(&text).unwrap();
        assert_eq!(back.placement, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(back.border_length, 10);
    }
}
