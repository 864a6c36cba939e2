//! Graphviz export. Nodes appear in state order; a grid-derived automaton
//! labels each state with its tuple.

use std::fmt::Write;

use comreg_core::Dfa;

use crate::expr::Alphabet;

pub fn to_dot(d: &Dfa, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    out.push_str("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  start [shape=point];\n");
    let _ = writeln!(out, "  start -> q{};", d.start());
    for q in 0..d.state_count() {
        let label = match d.labels() {
            Some(labels) => labels[q].to_string(),
            None => q.to_string(),
        };
        let shape = if d.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  q{q} [label=\"{label}\", shape={shape}];");
    }
    for q in 0..d.state_count() {
        let mut targets: Vec<(usize, Vec<char>)> = Vec::new();
        for j in 0..d.alphabet_size() {
            let t = d.next(q, j);
            match targets.iter_mut().find(|(x, _)| *x == t) {
                Some((_, letters)) => letters.push(alphabet.letter(j)),
                None => targets.push((t, vec![alphabet.letter(j)])),
            }
        }
        for (t, letters) in targets {
            let label: Vec<String> = letters.iter().map(char::to_string).collect();
            let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", label.join(","));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_and_eval;

    #[test]
    fn staircase_labels() {
        let ab = Alphabet::new("ab").unwrap();
        let g = parse_and_eval("b{2+2} | b{1} <> a{1+2}", &ab).unwrap();
        let d = Dfa::from_grid(&g);
        let text = to_dot(&d, &ab);
        assert_eq!(d.state_count(), 12);
        assert!(text.contains("q0 [label=\"(0,0)\", shape=circle];"));
        assert!(text.contains("label=\"(1,1)\", shape=doublecircle"));
        assert_eq!(text, to_dot(&d, &ab));
        assert_eq!(text.matches(" -> ").count() - 1, 12 * 2);
    }

    #[test]
    fn merged_edges() {
        let a = Alphabet::new("ab").unwrap();
        let d = Dfa::from_grid(&comreg_core::GridAutomaton::sigma_star(2));
        let text = to_dot(&d, &a);
        assert!(text.contains("q0 -> q0 [label=\"a,b\"];"));
        assert!(text.contains("shape=doublecircle"));
    }
}
