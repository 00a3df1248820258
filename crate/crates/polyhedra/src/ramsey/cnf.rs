//! DIMACS export of arrow queries and a deliberately plain CNF evaluator.
//!
//! Variables are `x_{copy,color}` with exactly-one-color clauses per copy
//! and, for every B-copy and color, a clause forbidding "all A-copies inside
//! get that color". The instance is satisfiable exactly when the arrow
//! FAILS, and a model decodes to a counterexample coloring.

use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::ramsey::arrow::{ArrowInstance, ArrowQuery, Coloring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub comments: Vec<String>,
}

impl CnfInstance {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("c ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&format!("p cnf {} {}\n", self.num_vars, self.clauses.len()));
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

fn var(copy: usize, color: u32, colors: u32) -> i32 {
    (copy as i32) * (colors as i32) + color as i32 + 1
}

/// Builds the CNF encoding of an arrow query.
pub fn export_cnf(q: &ArrowQuery, guards: &Guards) -> Result<CnfInstance> {
    let instance = ArrowInstance::build(q, guards)?;
    export_cnf_instance(&instance, q.colors)
}

pub(crate) fn export_cnf_instance(instance: &ArrowInstance, colors: u32) -> Result<CnfInstance> {
    if colors == 0 {
        return Err(Error::invalid("at least one color is required"));
    }
    let copies = instance.a_copies.len();
    let num_vars = copies * colors as usize;
    let mut comments = Vec::new();
    comments.push(format!(
        "arrow encoding: {} copies of A, {} copies of B, {} colors; satisfiable iff the arrow fails",
        copies,
        instance.b_copies.len(),
        colors
    ));
    for (i, c) in instance.a_copies.iter().enumerate() {
        comments.push(format!("copy {i} = {c}"));
    }
    for i in 0..copies {
        for color in 0..colors {
            comments.push(format!("var {} = copy {} color {}", var(i, color, colors), i, color));
        }
    }
    let mut clauses = Vec::new();
    for i in 0..copies {
        // at least one color
        clauses.push((0..colors).map(|c| var(i, c, colors)).collect());
        // at most one color
        for c1 in 0..colors {
            for c2 in c1 + 1..colors {
                clauses.push(vec![-var(i, c1, colors), -var(i, c2, colors)]);
            }
        }
    }
    for group in &instance.groups {
        for color in 0..colors {
            // not all members of this group take this color; an empty group
            // yields the empty clause, making the instance trivially UNSAT
            clauses.push(group.iter().map(|&i| -var(i, color, colors)).collect());
        }
    }
    Ok(CnfInstance {
        num_vars,
        clauses,
        comments,
    })
}

/// Reads a DIMACS file produced by [`export_cnf`] (or any standard one).
pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
    let mut num_vars = None;
    let mut declared_clauses = 0usize;
    let mut clauses = Vec::new();
    let mut comments = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("c") {
            comments.push(rest.trim_start().to_string());
            continue;
        }
        if let Some(rest) = line.strip_prefix("p") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(Error::Format("malformed problem line".into()));
            }
            num_vars = Some(
                parts[1]
                    .parse::<usize>()
                    .map_err(|e| Error::Format(e.to_string()))?,
            );
            declared_clauses = parts[2]
                .parse::<usize>()
                .map_err(|e| Error::Format(e.to_string()))?;
            continue;
        }
        let mut clause = Vec::new();
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|e: std::num::ParseIntError| {
                Error::Format(e.to_string())
            })?;
            if lit == 0 {
                break;
            }
            clause.push(lit);
        }
        clauses.push(clause);
    }
    let num_vars = num_vars.ok_or_else(|| Error::Format("missing problem line".into()))?;
    if clauses.len() != declared_clauses {
        return Err(Error::Format(format!(
            "problem line declares {declared_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    for clause in &clauses {
        for &lit in clause {
            if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                return Err(Error::Format(format!("literal {lit} out of range")));
            }
        }
    }
    Ok(CnfInstance {
        num_vars,
        clauses,
        comments,
    })
}

/// Plain chronological backtracking over variable assignments, checking
/// clauses as they complete. No propagation or heuristics: this evaluator
/// is the independent route against which the arrow engine is checked.
pub fn brute_force_model(cnf: &CnfInstance, guards: &Guards) -> Result<Option<Vec<bool>>> {
    // empty clause: trivially unsatisfiable
    if cnf.clauses.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); cnf.num_vars + 1];
    for (ci, clause) in cnf.clauses.iter().enumerate() {
        // a clause is checked once its highest-numbered variable is set
        let last = clause.iter().map(|l| l.unsigned_abs()).max().unwrap() as usize;
        watch[last].push(ci);
    }
    let mut assign = vec![false; cnf.num_vars + 1];
    let mut nodes = 0u64;
    fn descend(
        v: usize,
        cnf: &CnfInstance,
        watch: &[Vec<usize>],
        assign: &mut Vec<bool>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        if v > cnf.num_vars {
            return Ok(true);
        }
        for value in [false, true] {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::limit("CNF evaluation exceeded the node budget"));
            }
            assign[v] = value;
            let ok = watch[v].iter().all(|&ci| {
                cnf.clauses[ci].iter().any(|&lit| {
                    let var = lit.unsigned_abs() as usize;
                    (lit > 0) == assign[var]
                })
            });
            if ok && descend(v + 1, cnf, watch, assign, nodes, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    if descend(1, cnf, &watch, &mut assign, &mut nodes, guards.node_budget)? {
        Ok(Some(assign[1..].to_vec()))
    } else {
        Ok(None)
    }
}

/// Decodes a model of the arrow encoding back into a coloring.
pub fn decode_model(model: &[bool], copies: usize, colors: u32) -> Option<Coloring> {
    let mut out = Vec::with_capacity(copies);
    for i in 0..copies {
        let mut chosen = None;
        for c in 0..colors {
            let v = var(i, c, colors) as usize - 1;
            if *model.get(v)? {
                if chosen.is_some() {
                    return None; // two colors set on one copy
                }
                chosen = Some(c);
            }
        }
        out.push(chosen?);
    }
    Some(Coloring(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FiniteOrderedComplex;
    use crate::embed::EmbeddingMode;
    use crate::ramsey::arrow::{arrow_check, verify_counterexample, SearchMode};

    fn pure(n: usize) -> FiniteOrderedComplex {
        FiniteOrderedComplex::pure_set(&(0..n as u32).collect::<Vec<_>>())
    }

    fn query(a: usize, b: usize, c: usize, colors: u32) -> ArrowQuery {
        ArrowQuery {
            a: pure(a),
            b: pure(b),
            c: pure(c),
            colors,
            mode: EmbeddingMode::Strong,
        }
    }

    #[test]
    fn ramsey_negation_unsat_at_6() {
        let g = Guards::default();
        let q = query(2, 3, 6, 2);
        let cnf = export_cnf(&q, &g).unwrap();
        assert_eq!(cnf.num_vars, 15 * 2);
        assert!(brute_force_model(&cnf, &g).unwrap().is_none());
    }

    #[test]
    fn ramsey_negation_sat_at_5_decodes() {
        let g = Guards::default();
        let q = query(2, 3, 5, 2);
        let cnf = export_cnf(&q, &g).unwrap();
        let model = brute_force_model(&cnf, &g).unwrap().expect("satisfiable");
        let instance = ArrowInstance::build(&q, &g).unwrap();
        let coloring = decode_model(&model, instance.a_copies.len(), 2).unwrap();
        assert!(verify_counterexample(
            instance.a_copies.len(),
            &instance.groups,
            &coloring
        ));
    }

    #[test]
    fn a_equals_b_forces_unsat() {
        let g = Guards::default();
        let q = query(2, 2, 4, 2);
        let cnf = export_cnf(&q, &g).unwrap();
        assert!(brute_force_model(&cnf, &g).unwrap().is_none());
        assert!(arrow_check(&q, SearchMode::Adversarial, &g).unwrap().holds);
    }

    #[test]
    fn dimacs_round_trip() {
        let g = Guards::default();
        let q = query(2, 3, 5, 2);
        let cnf = export_cnf(&q, &g).unwrap();
        let text = cnf.to_dimacs();
        let parsed = parse_dimacs(&text).unwrap();
        assert_eq!(parsed.num_vars, cnf.num_vars);
        assert_eq!(parsed.clauses, cnf.clauses);
    }

    #[test]
    fn parse_rejects_bad_counts() {
        assert!(parse_dimacs("p cnf 2 3\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n5 0\n").is_err());
    }

    #[test]
    fn decision_matches_cnf_on_small_queries() {
        let g = Guards::default();
        for (a, b, c, r) in [
            (1, 2, 3, 2u32),
            (2, 3, 4, 2),
            (2, 3, 5, 2),
            (2, 2, 3, 3),
            (1, 3, 6, 2),
            (3, 4, 5, 2),
        ] {
            let q = query(a, b, c, r);
            let res = arrow_check(&q, SearchMode::Adversarial, &g).unwrap();
            let cnf = export_cnf(&q, &g).unwrap();
            let sat = brute_force_model(&cnf, &g).unwrap().is_some();
            assert_eq!(res.holds, !sat, "query ({a},{b},{c},{r})");
        }
    }
}
