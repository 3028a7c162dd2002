//! Text rendering of the simple-root numbering.

use schubert_core::{CartanDatum, CartanType};

fn bond(datum: &CartanDatum, i: usize, j: usize) -> &'static str {
    let d = datum.symmetrizer();
    let left_long = d[i] > d[j];
    match datum.entry(i, j) * datum.entry(j, i) {
        1 => "---",
        2 if left_long => "=>=",
        2 => "=<=",
        3 if left_long => "≡>≡",
        3 => "≡<≡",
        _ => "???",
    }
}

/// A horizontal chain of nodes, optionally with one node hanging below a chain node.
fn draw(datum: &CartanDatum, chain: &[usize], pendant: Option<(usize, usize)>) -> String {
    let mut top = String::new();
    let mut column = None;
    for (k, &node) in chain.iter().enumerate() {
        if k > 0 {
            top.push(' ');
            top.push_str(bond(datum, chain[k - 1], node));
            top.push(' ');
        }
        if pendant.is_some_and(|(at, _)| at == node) {
            column = Some(top.chars().count());
        }
        top.push_str(&(node + 1).to_string());
    }
    let mut out = top;
    if let (Some((_, below)), Some(col)) = (pendant, column) {
        out.push('\n');
        out.push_str(&" ".repeat(col));
        out.push('|');
        out.push('\n');
        out.push_str(&" ".repeat(col));
        out.push_str(&(below + 1).to_string());
    }
    out
}

pub fn numbering_diagram(datum: &CartanDatum) -> String {
    let r = datum.rank();
    let path: Vec<usize> = (0..r).collect();
    match datum.label() {
        Some(CartanType::D(n)) if n >= 4 => draw(datum, &path[..r - 1], Some((r - 3, r - 1))),
        Some(CartanType::E6 | CartanType::E7 | CartanType::E8) => {
            let chain: Vec<usize> = std::iter::once(0).chain(2..r).collect();
            draw(datum, &chain, Some((3, 1)))
        }
        Some(_) => draw(datum, &path, None),
        None => {
            let mut lines = Vec::new();
            for i in 0..r {
                for j in i + 1..r {
                    if datum.entry(i, j) != 0 {
                        lines.push(format!("{} {} {}", i + 1, bond(datum, i, j), j + 1));
                    }
                }
            }
            if lines.is_empty() {
                lines.push("(no edges)".into());
            }
            lines.join("\n")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(t: CartanType) -> String {
        numbering_diagram(&CartanDatum::from_type(t).unwrap())
    }

    #[test]
    fn exceptional_layouts() {
        assert_eq!(diagram(CartanType::E6), "1 --- 3 --- 4 --- 5 --- 6\n            |\n            2");
        assert_eq!(diagram(CartanType::F4), "1 --- 2 =>= 3 --- 4");
        assert_eq!(diagram(CartanType::G2), "1 ≡<≡ 2");
    }

    #[test]
    fn classical_layouts() {
        assert_eq!(diagram(CartanType::B(3)), "1 --- 2 =>= 3");
        assert_eq!(diagram(CartanType::C(3)), "1 --- 2 =<= 3");
        assert_eq!(diagram(CartanType::D(5)), "1 --- 2 --- 3 --- 4\n            |\n            5");
    }

    #[test]
    fn unlabeled_edges() {
        let datum = CartanDatum::new(vec![vec![2, 0], vec![0, 2]], None).unwrap();
        assert_eq!(numbering_diagram(&datum), "(no edges)");
    }
}
