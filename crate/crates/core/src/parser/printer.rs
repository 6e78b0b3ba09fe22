use crate::formula::Formula;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Until(..) | Formula::Release(..) => 4,
        Formula::Not(_) | Formula::Eventually(..) | Formula::Always(..) | Formula::Stratum(..) => 5,
        Formula::Atom(_) | Formula::True | Formula::False => 6,
    }
}

/// Canonical text with the fewest parentheses that still parses back to `f`.
pub fn pretty_print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write_at(f: &Formula, min_prec: u8, out: &mut String) {
    if precedence(f) < min_prec {
        out.push('(');
        write(f, out);
        out.push(')');
    } else {
        write(f, out);
    }
}

fn write(f: &Formula, out: &mut String) {
    match f {
        Formula::Atom(p) => out.push_str(p),
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Not(g) => {
            out.push('!');
            write_at(g, 5, out);
        }
        Formula::Eventually(i, g) => {
            out.push_str(&format!("F{i} "));
            write_at(g, 5, out);
        }
        Formula::Always(i, g) => {
            out.push_str(&format!("G{i} "));
            write_at(g, 5, out);
        }
        Formula::Stratum(k, g) => {
            out.push_str(&format!("L{k} "));
            write_at(g, 5, out);
        }
        Formula::Until(a, i, b) | Formula::Release(a, i, b) => {
            let op = if matches!(f, Formula::Until(..)) { "U" } else { "R" };
            write_at(a, 4, out);
            out.push_str(&format!(" {op}{i} "));
            write_at(b, 5, out);
        }
        Formula::And(a, b) => {
            write_at(a, 3, out);
            out.push_str(" & ");
            write_at(b, 4, out);
        }
        Formula::Or(a, b) => {
            write_at(a, 2, out);
            out.push_str(" | ");
            write_at(b, 3, out);
        }
        Formula::Implies(a, b) => {
            write_at(a, 2, out);
            out.push_str(" -> ");
            write_at(b, 1, out);
        }
    }
}
