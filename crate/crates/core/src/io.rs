//! Text formats. Blank lines and `#` comments are ignored everywhere; parse
//! errors carry the 1-based line number of the offending input line.

use crate::error::{Error, Result};
use crate::incidence::{arrangement_from_incidence, flats_from_rational_lines, Arrangement};
use crate::labelings::Graph;
use crate::linalg::IntMatrix;
use crate::resonance::Weight;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Write as _;

/// Non-empty content lines with their line numbers.
fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
        })
        .collect()
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| err(line, format!("expected a nonnegative integer, got `{tok}`")))
}

fn parse_i64(tok: &str, line: usize) -> Result<i64> {
    tok.parse().map_err(|_| err(line, format!("expected an integer, got `{tok}`")))
}

pub fn parse_rational(tok: &str, line: usize) -> Result<BigRational> {
    let (p, q) = match tok.split_once('/') {
        Some((p, q)) => (p, q),
        None => (tok, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| err(line, format!("bad rational `{tok}`")))?;
    let q: BigInt = q.parse().map_err(|_| err(line, format!("bad rational `{tok}`")))?;
    if q.is_zero() {
        return Err(err(line, format!("zero denominator in `{tok}`")));
    }
    Ok(BigRational::new(p, q))
}

pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (l0, head) = it.next().ok_or_else(|| err(last_line(text), "empty arrangement file"))?;
    let n = match head.as_slice() {
        ["lines", n] => parse_usize(n, *l0)?,
        _ => return Err(err(*l0, "expected header `lines <n>`")),
    };
    let (l1, kind) = it.next().ok_or_else(|| err(last_line(text), "expected a `coeffs` or `flats` block"))?;
    match kind.as_slice() {
        ["coeffs"] => {
            let mut coeffs = Vec::with_capacity(n);
            for (ln, toks) in it.by_ref() {
                if toks.len() != 3 {
                    return Err(err(*ln, format!("expected 3 coefficients, got {}", toks.len())));
                }
                let c = [parse_rational(toks[0], *ln)?, parse_rational(toks[1], *ln)?, parse_rational(toks[2], *ln)?];
                coeffs.push(c);
            }
            if coeffs.len() != n {
                return Err(err(last_line(text), format!("expected {n} coefficient rows, got {}", coeffs.len())));
            }
            flats_from_rational_lines(&coeffs)
        }
        ["flats"] => {
            let mut flats = Vec::new();
            for (ln, toks) in it.by_ref() {
                let mut f = Vec::with_capacity(toks.len());
                for t in toks {
                    let i = parse_usize(t, *ln)?;
                    if i == 0 || i > n {
                        return Err(err(*ln, format!("line index {i} outside 1..={n}")));
                    }
                    f.push(i - 1);
                }
                flats.push(f);
            }
            arrangement_from_incidence(n, &flats)
        }
        _ => Err(err(*l1, "expected `coeffs` or `flats`")),
    }
}

pub fn write_arrangement(arr: &Arrangement) -> String {
    let mut s = String::new();
    if let Some(name) = arr.name() {
        let _ = writeln!(s, "# {name}");
    }
    let _ = writeln!(s, "lines {}", arr.n());
    if arr.is_abstract() {
        s.push_str("flats\n");
        for f in arr.primes2() {
            let idx: Vec<String> = f.one_based().iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "{}", idx.join(" "));
        }
    } else {
        s.push_str("coeffs\n");
        for l in arr.lines() {
            let c = l.coeffs().expect("concrete line");
            let _ = writeln!(s, "{} {} {}", c[0], c[1], c[2]);
        }
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (l0, head) = it.next().ok_or_else(|| err(last_line(text), "empty matrix file"))?;
    let n = match head.as_slice() {
        [n] => parse_usize(n, *l0)?,
        _ => return Err(err(*l0, "expected the matrix size `n`")),
    };
    let mut rows = Vec::with_capacity(n);
    for (ln, toks) in it {
        if toks.len() != n {
            return Err(err(*ln, format!("expected {n} entries, got {}", toks.len())));
        }
        rows.push(toks.iter().map(|t| parse_i64(t, *ln)).collect::<Result<Vec<i64>>>()?);
    }
    if rows.len() != n {
        return Err(err(last_line(text), format!("expected {n} rows, got {}", rows.len())));
    }
    if n == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    Ok(IntMatrix::from_rows(&rows))
}

pub fn write_matrix(m: &IntMatrix) -> String {
    format!("{}\n{}", m.rows(), m)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (l0, head) = it.next().ok_or_else(|| err(last_line(text), "empty graph file"))?;
    let (n, e) = match head.as_slice() {
        [n, e] => (parse_usize(n, *l0)?, parse_usize(e, *l0)?),
        _ => return Err(err(*l0, "expected header `n e`")),
    };
    let mut edges = Vec::with_capacity(e);
    for (ln, toks) in it {
        let [a, b] = toks.as_slice() else {
            return Err(err(*ln, "expected an edge `i j`"));
        };
        let (a, b) = (parse_usize(a, *ln)?, parse_usize(b, *ln)?);
        if a == 0 || b == 0 || a > n || b > n {
            return Err(err(*ln, format!("vertex outside 1..={n}")));
        }
        if a == b {
            return Err(err(*ln, format!("loop at vertex {a}")));
        }
        edges.push((a - 1, b - 1));
    }
    if edges.len() != e {
        return Err(err(last_line(text), format!("expected {e} edges, got {}", edges.len())));
    }
    Graph::new(n, &edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edges().len());
    for &(a, b) in g.edges() {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

/// One weight per row.
pub fn parse_weights(text: &str) -> Result<Vec<Weight>> {
    content_lines(text)
        .into_iter()
        .map(|(ln, toks)| Ok(Weight(toks.iter().map(|t| parse_rational(t, ln)).collect::<Result<_>>()?)))
        .collect()
}

pub fn write_weights(ws: &[Weight]) -> String {
    ws.iter().map(|w| w.0.iter().map(format_rational).collect::<Vec<_>>().join(" ") + "\n").collect()
}

/// `n`, then one or more `n × n` Latin squares with entries `1..=n`.
pub fn parse_latin_squares(text: &str) -> Result<(usize, Vec<Vec<Vec<usize>>>)> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (l0, head) = it.next().ok_or_else(|| err(last_line(text), "empty Latin square file"))?;
    let n = match head.as_slice() {
        [n] => parse_usize(n, *l0)?,
        _ => return Err(err(*l0, "expected the order `n`")),
    };
    if n == 0 {
        return Err(err(*l0, "order must be positive"));
    }
    let mut squares = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    for (ln, toks) in it {
        if toks.len() != n {
            return Err(err(*ln, format!("expected {n} entries, got {}", toks.len())));
        }
        let row = toks.iter().map(|t| parse_usize(t, *ln)).collect::<Result<Vec<usize>>>()?;
        let mut seen = vec![false; n + 1];
        for &x in &row {
            if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                return Err(err(*ln, format!("row is not a permutation of 1..={n}")));
            }
        }
        current.push(row);
        if current.len() == n {
            squares.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() || squares.is_empty() {
        return Err(err(last_line(text), format!("expected a multiple of {n} rows")));
    }
    Ok((n, squares))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{generate, Family};

    #[test]
    fn braid_round_trip() {
        let text = "# braid\nlines 6\ncoeffs\n1 0 0\n0 1 0\n0 0 1\n1 -1 0\n1 0 -1\n0 1 -1\n";
        let arr = parse_arrangement(text).unwrap();
        assert_eq!(arr.primes2().len(), 4);
        let again = parse_arrangement(&write_arrangement(&arr)).unwrap();
        assert_eq!(again.canonical(), arr.canonical());
    }

    #[test]
    fn abstract_round_trip() {
        let arr = generate(&Family::Hessian).unwrap();
        let again = parse_arrangement(&write_arrangement(&arr)).unwrap();
        assert_eq!(again.canonical(), arr.canonical());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_arrangement("lines 2\ncoeffs\n1 0 0\n\n0 1\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 5, msg: "expected 3 coefficients, got 2".into() });
        assert!(matches!(parse_matrix("2\n1 0\n0 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("3 1\n1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_weights("1 1/0\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn rationals() {
        let x = parse_rational("-6/4", 1).unwrap();
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&parse_rational("7", 1).unwrap()), "7");
    }

    #[test]
    fn matrix_and_graph_round_trip() {
        let m = parse_matrix("3\n2 -1 -1\n-1 2 -1\n-1 -1 2\n").unwrap();
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
        let g = Graph::star(4);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn latin_file() {
        let (n, sq) = parse_latin_squares("3\n1 2 3\n2 3 1\n3 1 2\n").unwrap();
        assert_eq!((n, sq.len()), (3, 1));
        assert!(parse_latin_squares("2\n1 1\n2 1\n").is_err());
    }
}
