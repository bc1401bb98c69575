use super::Formula;

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const ATOMIC: u8 = 5;

/// Returns the rendering and its binding strength.
fn render(f: &Formula) -> (String, u8) {
    if f.is_top() {
        return ("T".into(), ATOMIC);
    }
    if f.is_bottom() {
        return ("F".into(), ATOMIC);
    }
    if let Some((a, b)) = f.as_iff() {
        return (binary(a, "<->", b, IFF, false), IFF);
    }
    if let Some((a, b)) = f.as_conjunction() {
        return (binary(a, "&", b, AND, false), AND);
    }
    if let Some((a, b)) = f.as_implication() {
        return (binary(a, "->", b, IMP, true), IMP);
    }
    match f {
        Formula::Atom(name) => (name.clone(), ATOMIC),
        Formula::Or(a, b) => (binary(a, "|", b, OR, false), OR),
        Formula::Not(a) => (prefix("~", a), ATOMIC),
        Formula::Believes(a) => (prefix("B", a), ATOMIC),
        Formula::Necessity(a) => (prefix("[]", a), ATOMIC),
        Formula::Cond(a, b) => (format!("({} > {})", operand(a), operand(b)), ATOMIC),
    }
}

/// Rendering parenthesized unless atomic.
fn operand(f: &Formula) -> String {
    let (s, p) = render(f);
    if p < ATOMIC {
        format!("({s})")
    } else {
        s
    }
}

fn prefix(op: &str, f: &Formula) -> String {
    let s = operand(f);
    let needs_space = op == "B" && s.starts_with(|c: char| c.is_ascii_alphanumeric());
    if needs_space {
        format!("{op} {s}")
    } else {
        format!("{op}{s}")
    }
}

fn binary(l: &Formula, op: &str, r: &Formula, prec: u8, right_assoc: bool) -> String {
    let (ls, lp) = render(l);
    let (rs, rp) = render(r);
    let wrap_l = lp < prec || (lp == prec && right_assoc);
    let wrap_r = rp < prec || (rp == prec && !right_assoc);
    let ls = if wrap_l { format!("({ls})") } else { ls };
    let rs = if wrap_r { format!("({rs})") } else { rs };
    format!("{ls} {op} {rs}")
}

pub(super) fn print(f: &Formula) -> String {
    render(f).0
}
