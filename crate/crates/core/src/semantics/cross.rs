use serde::Serialize;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::semantics::word::StateWord;

/// One transition in the grid: the state on the left reads `input`, emits `output` and
/// continues in `next`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossCell {
    pub state: usize,
    pub input: usize,
    pub output: usize,
    pub next: usize,
}

/// Simultaneous run of several states on one input word. Row 0 reads the input; each
/// later row reads the output of the row above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossDiagram {
    pub rows: Vec<usize>,
    pub input: Vec<usize>,
    pub cells: Vec<Vec<CrossCell>>,
}

impl CrossDiagram {
    pub fn output(&self) -> Vec<usize> {
        match self.cells.last() {
            Some(row) => row.iter().map(|c| c.output).collect(),
            None => self.input.clone(),
        }
    }

    /// States at the right margin, i.e. the residual, one per row.
    pub fn final_states(&self) -> Vec<usize> {
        self.cells
            .iter()
            .zip(&self.rows)
            .map(|(row, &q)| row.last().map_or(q, |c| c.next))
            .collect()
    }

    /// Fixed-width text: the input on top, one line per state alternating state labels and
    /// `in/out` cells, the output at the bottom.
    pub fn render(&self, automaton: &Automaton) -> String {
        let states = |i: usize| -> Vec<String> {
            let mut v = vec![automaton.state_name(self.rows[i]).to_string()];
            v.extend(self.cells[i].iter().map(|c| automaton.state_name(c.next).to_string()));
            v
        };
        let cols = self.input.len();
        let mut state_w = vec![0usize; cols + 1];
        let mut cell_w = vec![0usize; cols];
        for i in 0..self.rows.len() {
            for (k, s) in states(i).iter().enumerate() {
                state_w[k] = state_w[k].max(s.chars().count());
            }
            for (j, c) in self.cells[i].iter().enumerate() {
                let label = format!("{}/{}", automaton.letter_name(c.input), automaton.letter_name(c.output));
                cell_w[j] = cell_w[j].max(label.chars().count());
            }
        }
        for (j, &a) in self.input.iter().enumerate() {
            cell_w[j] = cell_w[j].max(automaton.letter_name(a).chars().count());
        }
        let letters_line = |word: &[usize]| {
            let mut line = " ".repeat(state_w[0]);
            for (j, &a) in word.iter().enumerate() {
                line.push_str(&format!("   {:^w$}   ", automaton.letter_name(a), w = cell_w[j]));
                line.push_str(&" ".repeat(state_w[j + 1]));
            }
            line.trim_end().to_string()
        };
        let mut out = vec![letters_line(&self.input)];
        for i in 0..self.rows.len() {
            let names = states(i);
            let mut line = format!("{:>w$}", names[0], w = state_w[0]);
            for (j, c) in self.cells[i].iter().enumerate() {
                let label = format!("{}/{}", automaton.letter_name(c.input), automaton.letter_name(c.output));
                line.push_str(&format!(" ─ {:^w$} → ", label, w = cell_w[j]));
                line.push_str(&format!("{:<w$}", names[j + 1], w = state_w[j + 1]));
            }
            out.push(line.trim_end().to_string());
        }
        out.push(letters_line(&self.output()));
        out.join("\n") + "\n"
    }

    /// Graphviz description: one node per grid position, one edge per cell.
    pub fn to_dot(&self, automaton: &Automaton) -> String {
        let mut s = String::from("digraph cross {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (i, row) in self.cells.iter().enumerate() {
            s.push_str(&format!(
                "  r{i}c0 [label=\"{}\"];\n",
                escape(automaton.state_name(self.rows[i]))
            ));
            for (j, c) in row.iter().enumerate() {
                s.push_str(&format!(
                    "  r{i}c{} [label=\"{}\"];\n  r{i}c{j} -> r{i}c{} [label=\"{}/{}\"];\n",
                    j + 1,
                    escape(automaton.state_name(c.next)),
                    j + 1,
                    escape(automaton.letter_name(c.input)),
                    escape(automaton.letter_name(c.output)),
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Builds the cross diagram of `rows` on `input`. The first state word acts first, and
/// inside each state word the rightmost state acts first.
pub fn render_cross_diagram(automaton: &Automaton, rows: &[StateWord], input: &[usize]) -> Result<CrossDiagram> {
    let order: Vec<usize> = rows.iter().flat_map(|w| w.states().iter().rev().copied()).collect();
    let mut cells = Vec::with_capacity(order.len());
    let mut word = input.to_vec();
    for (row, &q) in order.iter().enumerate() {
        let mut state = q;
        let mut line = Vec::with_capacity(word.len());
        for (column, &a) in word.iter().enumerate() {
            let e = automaton.step(state, a).ok_or(Error::UndefinedCell { row, column })?;
            line.push(CrossCell {
                state,
                input: a,
                output: e.output,
                next: e.target,
            });
            state = e.target;
        }
        word = line.iter().map(|c| c.output).collect();
        cells.push(line);
    }
    Ok(CrossDiagram {
        rows: order,
        input: input.to_vec(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semantics::word::{act, format_letters, parse_input};

    #[test]
    fn single_row_adding() {
        let a = corpus::get("adding").unwrap();
        let d = render_cross_diagram(
            &a,
            &[StateWord::parse(&a, "+1").unwrap()],
            &parse_input(&a, "000").unwrap(),
        )
        .unwrap();
        assert_eq!(d.cells.len(), 1);
        assert_eq!(d.cells[0].len(), 3);
        assert_eq!(format_letters(&a, &d.output()), "100");
        let text = d.render(&a);
        assert!(text.lines().next().unwrap().contains('0'));
        assert!(text.contains("0/1"));
        let bottom: String = text.lines().last().unwrap().split_whitespace().collect();
        assert_eq!(bottom, "100");
    }

    #[test]
    fn undefined_cell() {
        let b = corpus::get("b2_partial").unwrap();
        let err = render_cross_diagram(
            &b,
            &[StateWord::parse(&b, "p").unwrap()],
            &parse_input(&b, "a").unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, Error::UndefinedCell { row: 0, column: 0 });
    }

    #[test]
    fn stacked_rows_follow_the_action() {
        let a = corpus::get("adding").unwrap();
        let s = StateWord::parse(&a, "+1").unwrap();
        let u = parse_input(&a, "0110").unwrap();
        let d = render_cross_diagram(&a, &[s.clone(), s.clone(), s.clone()], &u).unwrap();
        for i in 0..2 {
            for j in 0..u.len() {
                assert_eq!(d.cells[i][j].output, d.cells[i + 1][j].input);
            }
        }
        let direct = act(&a, &s.pow(3), &u);
        assert_eq!(Some(d.output()), direct.output);
        let mut residual = d.final_states();
        residual.reverse();
        assert_eq!(residual, direct.residual.unwrap().states());
    }
}
