use std::fmt::Write as _;

use super::reduce::contracts;
use super::types::{SimpleType, TypePoset};
use super::PregroupError;

/// Planar contraction links over `n` positions plus the positions that
/// survive uncontracted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReductionDiagram {
    n: usize,
    links: Vec<(usize, usize)>,
    survivors: Vec<usize>,
}

impl ReductionDiagram {
    /// Builds without checking; see [`ReductionDiagram::validate`].
    pub fn from_parts(n: usize, links: Vec<(usize, usize)>, survivors: Vec<usize>) -> Self {
        let mut d = ReductionDiagram { n, links, survivors };
        d.normalize();
        d
    }

    pub(crate) fn normalize(&mut self) {
        for link in &mut self.links {
            if link.0 > link.1 {
                *link = (link.1, link.0);
            }
        }
        self.links.sort_unstable();
        self.survivors.sort_unstable();
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Links sorted by left endpoint.
    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    /// Partner of each position, `None` for survivors.
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut partner = vec![None; self.n];
        for &(a, b) in &self.links {
            if a < self.n && b < self.n {
                partner[a] = Some(b);
                partner[b] = Some(a);
            }
        }
        partner
    }

    /// Checks the shape invariants that do not depend on the types: every
    /// position is covered exactly once, links are non-crossing and no
    /// survivor sits under a link.
    pub fn check_structure(&self) -> Result<(), PregroupError> {
        let invalid = |msg: String| Err(PregroupError::InvalidDiagram(msg));
        let mut seen = vec![false; self.n];
        let mut mark = |p: usize| -> Result<(), PregroupError> {
            if p >= self.n {
                return Err(PregroupError::InvalidDiagram(format!(
                    "position {p} out of range 0..{}",
                    self.n
                )));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(PregroupError::InvalidDiagram(format!("position {p} covered twice")));
            }
            Ok(())
        };
        for &(a, b) in &self.links {
            if a >= b {
                return invalid(format!("link ({a}, {b}) is not ordered"));
            }
            mark(a)?;
            mark(b)?;
        }
        for &s in &self.survivors {
            mark(s)?;
        }
        if let Some(p) = seen.iter().position(|&s| !s) {
            return invalid(format!("position {p} is neither linked nor a survivor"));
        }
        if self.survivors.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("survivors are not strictly increasing".into());
        }
        for (x, &(a, b)) in self.links.iter().enumerate() {
            for &(c, d) in &self.links[x + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return invalid(format!("links ({a}, {b}) and ({c}, {d}) cross"));
                }
            }
            if let Some(s) = self.survivors.iter().find(|&&s| a < s && s < b) {
                return invalid(format!("survivor {s} is enclosed by link ({a}, {b})"));
            }
        }
        Ok(())
    }

    /// Full check against the typed positions.
    pub fn validate(&self, types: &[SimpleType], poset: &TypePoset) -> Result<(), PregroupError> {
        if types.len() != self.n {
            return Err(PregroupError::InvalidDiagram(format!(
                "diagram has {} positions but {} types were given",
                self.n,
                types.len()
            )));
        }
        self.check_structure()?;
        for &(a, b) in &self.links {
            if !contracts(&types[a], &types[b], poset) {
                return Err(PregroupError::InvalidDiagram(format!(
                    "{} and {} do not contract at ({a}, {b})",
                    types[a], types[b]
                )));
            }
        }
        Ok(())
    }

    /// Nesting depth of each link: 1 for innermost cups.
    fn depths(&self) -> Vec<usize> {
        // links are sorted by left endpoint, so inner links of (a, b) come
        // after it; walk right to left to see them first
        let mut depth = vec![1; self.links.len()];
        for x in (0..self.links.len()).rev() {
            let (a, b) = self.links[x];
            depth[x] = 1 + self.links[x + 1..]
                .iter()
                .zip(&depth[x + 1..])
                .filter(|((c, d), _)| a < *c && *d < b)
                .map(|(_, &dp)| dp)
                .max()
                .unwrap_or(0);
        }
        depth
    }

    /// One line of types followed by one line per nesting level of cups.
    /// Survivors and the legs of deeper cups are drawn as `|`.
    pub fn render_ascii(&self, types: &[SimpleType]) -> Result<String, PregroupError> {
        self.check_types_len(types)?;
        self.check_structure()?;
        if self.n == 0 {
            return Ok(String::new());
        }
        let labels: Vec<String> = types.iter().map(|t| t.to_string()).collect();
        let mut columns = Vec::with_capacity(self.n);
        let mut header = String::new();
        for label in &labels {
            if !header.is_empty() {
                header.push_str("  ");
            }
            columns.push(header.chars().count());
            header.push_str(label);
        }
        let width = header.chars().count();
        let depths = self.depths();
        let max_depth = depths.iter().copied().max().unwrap_or(0).max(1);

        let mut out = header;
        for level in 1..=max_depth {
            let mut row = vec![' '; width];
            for &s in &self.survivors {
                row[columns[s]] = '|';
            }
            for (&(a, b), &depth) in self.links.iter().zip(&depths) {
                let (ca, cb) = (columns[a], columns[b]);
                if depth == level {
                    row[ca] = '\\';
                    row[ca + 1..cb].iter_mut().for_each(|c| *c = '_');
                    row[cb] = '/';
                } else if depth > level {
                    row[ca] = '|';
                    row[cb] = '|';
                }
            }
            out.push('\n');
            out.push_str(row.iter().collect::<String>().trim_end());
        }
        Ok(out)
    }

    /// GraphViz source: one node per position, one edge per link, and
    /// survivors wired to a sink node labeled with the residual type.
    pub fn render_dot(&self, types: &[SimpleType]) -> Result<String, PregroupError> {
        self.check_types_len(types)?;
        self.check_structure()?;
        let mut out = String::from("graph reduction {\n");
        if self.n > 0 {
            out.push_str("  rankdir=LR;\n  node [shape=plaintext];\n");
        }
        for (p, t) in types.iter().enumerate() {
            let _ = writeln!(out, "  p{p} [label=\"{}\"];", escape(&t.to_string()));
        }
        for &(a, b) in &self.links {
            let _ = writeln!(out, "  p{a} -- p{b};");
        }
        if !self.survivors.is_empty() {
            let residual: Vec<String> = self.survivors.iter().map(|&s| types[s].to_string()).collect();
            let _ = writeln!(out, "  target [label=\"{}\", shape=box];", escape(&residual.join(" ")));
            for &s in &self.survivors {
                let _ = writeln!(out, "  p{s} -- target [style=dashed];");
            }
        }
        out.push_str("}\n");
        Ok(out)
    }

    fn check_types_len(&self, types: &[SimpleType]) -> Result<(), PregroupError> {
        if types.len() != self.n {
            return Err(PregroupError::InvalidDiagram(format!(
                "diagram has {} positions but {} types were given",
                self.n,
                types.len()
            )));
        }
        Ok(())
    }
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}
