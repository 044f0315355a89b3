//! Plain-text graph files. See `docs/graph-format.md` for the grammar.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Signed;
use periods_core::exactla::Rat;
use periods_core::ribbon::RibbonGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{}{msg}", location(*.line))]
    InvariantViolation { line: Option<usize>, msg: String },
}

fn location(line: Option<usize>) -> String {
    line.map_or_else(String::new, |l| format!("line {l}: "))
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

fn violation(line: Option<usize>, msg: impl Into<String>) -> FormatError {
    FormatError::InvariantViolation { line, msg: msg.into() }
}

/// A ribbon graph together with the names used in its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDoc {
    pub name: Option<String>,
    pub expected_genus: Option<usize>,
    pub vertex_labels: Vec<String>,
    pub edge_labels: Vec<String>,
    /// Indexed by dart id.
    pub dart_labels: Vec<String>,
    pub graph: RibbonGraph,
}

impl GraphDoc {
    /// Labels `<edge>+` and `<edge>-` for the two darts of every edge.
    pub fn with_default_darts(
        name: Option<String>,
        vertex_labels: Vec<String>,
        edge_labels: Vec<String>,
        graph: RibbonGraph,
    ) -> Self {
        let dart_labels = edge_labels.iter().flat_map(|e| [format!("{e}+"), format!("{e}-")]).collect();
        GraphDoc { name, expected_genus: Some(graph.genus()), vertex_labels, edge_labels, dart_labels, graph }
    }

    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or("graph")
    }

    /// Replaces the weights, keeping labels.
    pub fn reweighted(&self, weights: Vec<Rat>) -> Result<Self, FormatError> {
        let graph = self.graph.with_weights(weights).map_err(|e| violation(None, e.to_string()))?;
        Ok(GraphDoc { graph, ..self.clone() })
    }
}

fn valid_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "_+-.*'".contains(c))
}

pub fn parse_rational(s: &str) -> Option<Rat> {
    let ok = !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-');
    if !ok {
        return None;
    }
    Rat::from_str(s).ok()
}

pub fn parse(text: &str) -> Result<GraphDoc, FormatError> {
    let mut name = None;
    let mut expected_genus = None;
    let mut genus_line = 0;
    let mut edges: Vec<(usize, String, String, String, Rat)> = Vec::new();
    let mut vertices: Vec<(usize, String, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "name" => {
                if rest.is_empty() {
                    return Err(parse_err(ln, "name needs a value"));
                }
                name = Some(rest.to_string());
            }
            "genus" => {
                expected_genus =
                    Some(rest.parse::<usize>().map_err(|_| parse_err(ln, "genus must be a nonnegative integer"))?);
                genus_line = ln;
            }
            "edge" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let weight = match toks.len() {
                    3 => Rat::from_integer(1.into()),
                    5 if toks[3] == "weight" => parse_rational(toks[4])
                        .ok_or_else(|| parse_err(ln, format!("invalid rational {:?}", toks[4])))?,
                    _ => return Err(parse_err(ln, "expected `edge <id> <dart> <dart> [weight <rational>]`")),
                };
                if let Some(bad) = toks[..3].iter().find(|t| !valid_ident(t)) {
                    return Err(parse_err(ln, format!("invalid identifier {bad:?}")));
                }
                if !weight.is_positive() {
                    return Err(violation(Some(ln), format!("weight {weight} of edge {} is not positive", toks[0])));
                }
                edges.push((ln, toks[0].into(), toks[1].into(), toks[2].into(), weight));
            }
            "vertex" => {
                let (id, darts) =
                    rest.split_once(':').ok_or_else(|| parse_err(ln, "expected `vertex <id> : <darts>`"))?;
                let id = id.trim();
                if !valid_ident(id) {
                    return Err(parse_err(ln, format!("invalid identifier {id:?}")));
                }
                let darts: Vec<String> = darts.split_whitespace().map(String::from).collect();
                if let Some(bad) = darts.iter().find(|t| !valid_ident(t)) {
                    return Err(parse_err(ln, format!("invalid identifier {bad:?}")));
                }
                vertices.push((ln, id.into(), darts));
            }
            other => return Err(parse_err(ln, format!("unknown directive {other:?}"))),
        }
    }
    if vertices.is_empty() {
        return Err(violation(None, "no vertices"));
    }

    let mut dart_id: HashMap<String, usize> = HashMap::new();
    let mut edge_seen: HashMap<String, usize> = HashMap::new();
    let mut dart_labels = Vec::new();
    for (e, (ln, id, d1, d2, _)) in edges.iter().enumerate() {
        if edge_seen.insert(id.clone(), *ln).is_some() {
            return Err(violation(Some(*ln), format!("edge {id} declared twice")));
        }
        if d1 == d2 {
            return Err(violation(Some(*ln), format!("edge {id} pairs dart {d1} with itself")));
        }
        for (k, d) in [d1, d2].into_iter().enumerate() {
            if dart_id.insert(d.clone(), 2 * e + k).is_some() {
                return Err(violation(Some(*ln), format!("dart {d} belongs to more than one edge")));
            }
            dart_labels.push(d.clone());
        }
    }
    let mut placed = vec![None::<usize>; dart_labels.len()];
    let mut vertex_seen: HashMap<&str, usize> = HashMap::new();
    let mut rotations = Vec::with_capacity(vertices.len());
    for (ln, id, darts) in &vertices {
        if vertex_seen.insert(id, *ln).is_some() {
            return Err(violation(Some(*ln), format!("vertex {id} declared twice")));
        }
        let mut rot = Vec::with_capacity(darts.len());
        for d in darts {
            let &k =
                dart_id.get(d).ok_or_else(|| violation(Some(*ln), format!("dangling dart {d}: no edge owns it")))?;
            if let Some(prev) = placed[k] {
                return Err(violation(Some(*ln), format!("dart {d} listed twice (first on line {prev})")));
            }
            placed[k] = Some(*ln);
            rot.push(k);
        }
        rotations.push(rot);
    }
    if let Some(k) = placed.iter().position(Option::is_none) {
        return Err(violation(Some(edges[k / 2].0), format!("dart {} appears in no vertex rotation", dart_labels[k])));
    }
    let weights = edges.iter().map(|e| e.4.clone()).collect();
    let graph = RibbonGraph::new(rotations, weights).map_err(|e| violation(None, e.to_string()))?;
    if let Some(g) = expected_genus {
        if g != graph.genus() {
            return Err(violation(
                Some(genus_line),
                format!("declared genus {g}, rotation system has genus {}", graph.genus()),
            ));
        }
    }
    Ok(GraphDoc {
        name,
        expected_genus,
        vertex_labels: vertices.into_iter().map(|v| v.1).collect(),
        edge_labels: edges.into_iter().map(|e| e.1).collect(),
        dart_labels,
        graph,
    })
}

pub fn serialize(doc: &GraphDoc) -> String {
    let mut out = String::new();
    if let Some(n) = &doc.name {
        let _ = writeln!(out, "name {n}");
    }
    if let Some(g) = doc.expected_genus {
        let _ = writeln!(out, "genus {g}");
    }
    for (e, label) in doc.edge_labels.iter().enumerate() {
        let _ = writeln!(
            out,
            "edge {label} {} {} weight {}",
            doc.dart_labels[2 * e],
            doc.dart_labels[2 * e + 1],
            doc.graph.weight(e)
        );
    }
    for (v, label) in doc.vertex_labels.iter().enumerate() {
        let darts: Vec<&str> = doc.graph.rotation(v).iter().map(|&d| doc.dart_labels[d].as_str()).collect();
        let _ = writeln!(out, "vertex {label} : {}", darts.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = "name torus\ngenus 1\nedge a a+ a- weight 2\nedge b b+ b- weight 3\nvertex v : a+ b+ a- b-\n";

    #[test]
    fn parses_torus() {
        let d = parse(TORUS).unwrap();
        assert_eq!((d.graph.num_vertices(), d.graph.num_edges(), d.graph.genus()), (1, 2, 1));
        assert_eq!(d.graph.weight(1), &Rat::from_integer(3.into()));
        assert_eq!(parse(&serialize(&d)).unwrap(), d);
    }

    #[test]
    fn comments_defaults_and_fractions() {
        let d = parse("# two loops\nedge a x y   # unit weight\nedge b p q weight 3/6\nvertex o : x p y q\n").unwrap();
        assert_eq!(d.graph.weight(0), &Rat::from_integer(1.into()));
        assert_eq!(d.graph.weight(1), &Rat::new(1.into(), 2.into()));
        assert_eq!(d.expected_genus, None);
    }

    #[test]
    fn invariant_violations() {
        let zero = TORUS.replace("weight 2", "weight 0");
        assert!(matches!(parse(&zero), Err(FormatError::InvariantViolation { line: Some(3), .. })));
        let twice = TORUS.replace("a+ b+ a- b-", "a+ b+ a- b- a+");
        assert!(matches!(parse(&twice), Err(FormatError::InvariantViolation { line: Some(5), .. })));
        let dangling = TORUS.replace("b-\n", "b- c+\n");
        assert!(matches!(parse(&dangling), Err(FormatError::InvariantViolation { .. })));
        let shared = TORUS.replace("edge b b+ b-", "edge b a+ b-");
        assert!(matches!(parse(&shared), Err(FormatError::InvariantViolation { line: Some(4), .. })));
        let fixed = TORUS.replace("edge b b+ b-", "edge b b+ b+");
        assert!(matches!(parse(&fixed), Err(FormatError::InvariantViolation { .. })));
        let missing = TORUS.replace(" b-\n", "\n");
        assert!(matches!(parse(&missing), Err(FormatError::InvariantViolation { line: Some(4), .. })));
        let genus = TORUS.replace("genus 1", "genus 2");
        assert!(matches!(parse(&genus), Err(FormatError::InvariantViolation { line: Some(2), .. })));
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(
            parse("edge a b\n").unwrap_err(),
            parse_err(1, "expected `edge <id> <dart> <dart> [weight <rational>]`")
        );
        assert!(matches!(parse("\nfoo\n"), Err(FormatError::Parse { line: 2, .. })));
        assert!(matches!(parse("edge a x y weight 1.5\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse("vertex v x y\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse("genus -1\n"), Err(FormatError::Parse { line: 1, .. })));
    }
}
