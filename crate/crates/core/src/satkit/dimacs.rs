//! DIMACS CNF and (old-style) WCNF reader and canonical writer.

use super::formula::{Clause, Cnf, Literal, WeightedMaxSatInstance};
use super::SatError;

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedDimacs {
    pub instance: WeightedMaxSatInstance,
    pub weighted: bool,
    /// Declared `top` of a WCNF header.
    pub top: Option<u64>,
    pub warnings: Vec<String>,
}

fn perr(line: usize, msg: impl Into<String>) -> SatError {
    SatError::Parse { line, msg: msg.into() }
}

/// Parse CNF or WCNF text. The threshold defaults to the total weight and the
/// width to the longest clause; override them on the returned instance.
pub fn parse_dimacs(text: &str) -> Result<ParsedDimacs, SatError> {
    let mut header: Option<(bool, usize, usize, Option<u64>)> = None;
    let mut warnings = Vec::new();
    let mut clauses: Vec<Clause> = Vec::new();
    let mut weights: Vec<u64> = Vec::new();
    let mut cur: Vec<Literal> = Vec::new();
    let mut cur_weight: Option<u64> = None;
    let mut cur_line = 0;

    'lines: for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(perr(line_no, "second problem line"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let weighted = match parts.get(1) {
                Some(&"cnf") => false,
                Some(&"wcnf") => true,
                _ => return Err(perr(line_no, "expected `p cnf` or `p wcnf`")),
            };
            let num = |i: usize, what: &str| -> Result<usize, SatError> {
                parts
                    .get(i)
                    .ok_or_else(|| perr(line_no, format!("missing {what}")))?
                    .parse()
                    .map_err(|_| perr(line_no, format!("bad {what}")))
            };
            let n = num(2, "variable count")?;
            let m = num(3, "clause count")?;
            let top = if weighted && parts.len() > 4 {
                Some(parts[4].parse().map_err(|_| perr(line_no, "bad top weight"))?)
            } else {
                None
            };
            let max_parts = if weighted { 5 } else { 4 };
            if parts.len() > max_parts {
                return Err(perr(line_no, "trailing tokens in problem line"));
            }
            header = Some((weighted, n, m, top));
            continue;
        }
        let Some((weighted, n, _, _)) = header else {
            return Err(perr(line_no, "clause before the problem line"));
        };
        for tok in line.split_whitespace() {
            if tok.starts_with('c') {
                continue 'lines;
            }
            if weighted && cur.is_empty() && cur_weight.is_none() {
                let w: u64 = tok.parse().map_err(|_| perr(line_no, format!("bad weight `{tok}`")))?;
                if w == 0 {
                    return Err(perr(line_no, "clause weight 0"));
                }
                cur_weight = Some(w);
                cur_line = line_no;
                continue;
            }
            let x: i64 = tok.parse().map_err(|_| perr(line_no, format!("bad literal `{tok}`")))?;
            if cur.is_empty() && cur_weight.is_none() {
                cur_line = line_no;
            }
            match Literal::from_dimacs(x) {
                None => {
                    if cur.is_empty() {
                        return Err(perr(line_no, "empty clause"));
                    }
                    let mut lits: Vec<Literal> = Vec::with_capacity(cur.len());
                    for l in cur.drain(..) {
                        if lits.contains(&l) {
                            warnings.push(format!("line {cur_line}: duplicate literal {} removed", l.to_dimacs()));
                        } else if lits.contains(&l.negated()) {
                            let text: Vec<String> = lits.iter().chain([&l]).map(|l| l.to_dimacs().to_string()).collect();
                            return Err(SatError::Tautology { line: cur_line, clause: text.join(" ") });
                        } else {
                            lits.push(l);
                        }
                    }
                    clauses.push(Clause::new(lits)?);
                    weights.push(cur_weight.take().unwrap_or(1));
                }
                Some(l) => {
                    if l.var > n {
                        return Err(perr(line_no, format!("variable {} exceeds n = {n}", l.var)));
                    }
                    cur.push(l);
                }
            }
        }
    }
    let Some((weighted, n, m, top)) = header else {
        return Err(perr(text.lines().count().max(1), "missing problem line"));
    };
    if !cur.is_empty() || cur_weight.is_some() {
        return Err(perr(cur_line, "clause not terminated by 0"));
    }
    if clauses.len() != m {
        warnings.push(format!("header declares {m} clauses, found {}", clauses.len()));
    }
    let cnf = Cnf::new(n, clauses)?;
    let width = cnf.max_width();
    let total: u64 = weights.iter().sum();
    let instance = WeightedMaxSatInstance { cnf, weights, threshold: total, width };
    Ok(ParsedDimacs { instance, weighted, top, warnings })
}

/// Canonical text. WCNF output uses `top = total weight + 1`.
pub fn write_dimacs(inst: &WeightedMaxSatInstance, weighted: bool) -> String {
    let mut out = String::new();
    let (n, m) = (inst.cnf.num_vars, inst.cnf.clauses.len());
    if weighted {
        out.push_str(&format!("p wcnf {n} {m} {}\n", inst.total_weight() + 1));
    } else {
        out.push_str(&format!("p cnf {n} {m}\n"));
    }
    for (c, w) in inst.cnf.clauses.iter().zip(&inst.weights) {
        if weighted {
            out.push_str(&format!("{w} "));
        }
        for l in c.lits() {
            out.push_str(&format!("{} ", l.to_dimacs()));
        }
        out.push_str("0\n");
    }
    out
}

/// Plain CNF text for a formula.
pub fn write_cnf(cnf: &Cnf) -> String {
    write_dimacs(&WeightedMaxSatInstance::unweighted(cnf.clone()), false)
}
