//! Text renderings of solutions and count tables.

use std::fmt::Write as _;

use genusgf_core::algebra::{FactoredRat, Poly, Rat};
use genusgf_core::engine::{GenusSolution, ModelKind};
use genusgf_core::series::CountTable;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
    Latex,
}

/// One `(1 - k t)^exp` denominator entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenomEntry {
    pub k: u32,
    pub exp: u32,
}

/// `C_g = t^offset * sum coefficients[i] t^i / prod (1 - k t)^exp`.
///
/// For `g >= 2` the coefficients are those of `P_g` starting at degree
/// `offset`. Numbers are decimal strings so no consumer truncates them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub model: String,
    pub genus: usize,
    pub offset: i64,
    pub coefficients: Vec<String>,
    pub denom: Vec<DenomEntry>,
}

pub fn coefficient_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(Rat::to_string).collect()
}

pub fn denom_entries(f: &FactoredRat) -> Vec<DenomEntry> {
    f.denominator()
        .iter()
        .map(|&(fac, exp)| DenomEntry { k: fac.k(), exp })
        .collect()
}

impl SolutionJson {
    pub fn new(sol: &GenusSolution) -> Self {
        let f = sol.c_of_t();
        SolutionJson {
            model: sol.kind().name().to_owned(),
            genus: sol.genus(),
            offset: f.t_power(),
            coefficients: coefficient_strings(f.numerator()),
            denom: denom_entries(f),
        }
    }
}

fn denominator_text(f: &FactoredRat) -> String {
    f.denominator()
        .iter()
        .map(|&(fac, e)| {
            if e == 1 {
                fac.to_string()
            } else {
                format!("{fac}^{e}")
            }
        })
        .collect()
}

/// `C_g` in plain text: the factored closed form for `g <= 1`, otherwise
/// `(P_g)/(denominator)`.
pub fn plain(sol: &GenusSolution) -> String {
    match sol.polynomial() {
        None => sol.c_of_t().to_string(),
        Some(p) => format!("({})/({})", p, denominator_text(sol.c_of_t())),
    }
}

pub fn json(sol: &GenusSolution) -> String {
    serde_json::to_string(&SolutionJson::new(sol)).expect("plain data serializes")
}

fn latex_power(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_owned(),
        e if e < 10 => format!("{var}^{e}"),
        e => format!("{var}^{{{e}}}"),
    }
}

/// Signed terms `8t^5`, `-92t^6`, ... of a polynomial in ascending degree.
fn latex_terms(p: &Poly) -> Vec<String> {
    let mut out = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.numer().sign() == num_bigint::Sign::NoSign {
            continue;
        }
        let sign = if c.numer().sign() == num_bigint::Sign::Minus {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = if c.numer().sign() == num_bigint::Sign::Minus {
            -c.clone()
        } else {
            c.clone()
        };
        let mag_text = if mag.is_integer() {
            if mag == Rat::from_integer(1.into()) && i > 0 {
                String::new()
            } else {
                mag.to_string()
            }
        } else {
            format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
        };
        out.push(format!("{sign}{mag_text}{}", latex_power("t", i)));
    }
    out
}

/// Terms per line are packed while a line body stays within this width.
const LATEX_LINE_WIDTH: usize = 73;

fn latex_poly_lines(p: &Poly) -> Vec<String> {
    let mut lines = vec![String::new()];
    for term in latex_terms(p) {
        let cur = lines.last_mut().expect("nonempty");
        if !cur.is_empty() && cur.len() + term.len() > LATEX_LINE_WIDTH {
            lines.push(term);
        } else {
            cur.push_str(&term);
        }
    }
    lines
}

fn latex_factored_numerator(f: &FactoredRat) -> String {
    let n = f.numerator();
    let tp = f.t_power().max(0) as usize;
    let single = n
        .coeffs()
        .iter()
        .filter(|c| c.numer().sign() != num_bigint::Sign::NoSign)
        .count()
        == 1;
    if single {
        return latex_terms(&n.shift_up(tp)).concat();
    }
    let inner = latex_terms(n).concat();
    if tp == 0 {
        inner
    } else {
        format!("{}({inner})", latex_power("t", tp))
    }
}

fn model_symbols(kind: ModelKind) -> (&'static str, &'static str, &'static str) {
    match kind {
        ModelKind::Hypermap => ("C", "P", "t(1-2t)"),
        ModelKind::Map => ("\\Ct", "\\Pt", "t(1-3t)"),
    }
}

/// LaTeX in the layout of an `align*` row: `P_g(t)&=...` with long
/// polynomials broken into `\\`-separated continuation rows, or
/// `C_g(t(1-2t))=\frac{..}{..}` for the closed forms. Maps use the macros
/// `\Ct` and `\Pt` for the tilded symbols.
pub fn latex(sol: &GenusSolution) -> String {
    let (c, p_sym, subst) = model_symbols(sol.kind());
    let g = sol.genus();
    match sol.polynomial() {
        None => {
            let f = sol.c_of_t();
            let den: String = f
                .denominator()
                .iter()
                .map(|&(fac, e)| {
                    if e == 1 {
                        fac.to_string()
                    } else {
                        format!(
                            "{fac}^{}",
                            if e < 10 {
                                e.to_string()
                            } else {
                                format!("{{{e}}}")
                            }
                        )
                    }
                })
                .collect();
            format!(
                "{c}_{g}({subst})=\\frac{{{}}}{{{den}}}",
                latex_factored_numerator(f)
            )
        }
        Some(p) => {
            let lines = latex_poly_lines(p);
            let mut out = format!("{p_sym}_{g}(t)&={}", lines[0]);
            for line in &lines[1..] {
                let _ = write!(out, "\\\\\n      &{line}");
            }
            out
        }
    }
}

pub fn render_solution(sol: &GenusSolution, format: Format) -> String {
    match format {
        Format::Plain => plain(sol),
        Format::Json => json(sol),
        Format::Latex => latex(sol),
        Format::Csv => {
            let mut out = String::from("degree,coefficient\n");
            let f = sol.c_of_t();
            let shift = f.t_power();
            for (i, c) in f.numerator().coeffs().iter().enumerate() {
                let _ = writeln!(out, "{},{}", i as i64 + shift, c);
            }
            out.pop();
            out
        }
    }
}

#[derive(Serialize)]
struct CountsJson<'a> {
    model: &'a str,
    genus: usize,
    counts: Vec<String>,
}

pub fn render_counts(table: &CountTable, format: Format) -> String {
    let strings = || table.counts.iter().map(BigInt::to_string);
    match format {
        Format::Plain | Format::Latex => strings().collect::<Vec<_>>().join(", "),
        Format::Csv => {
            let mut out = String::from("n,count");
            for (n, c) in strings().enumerate() {
                let _ = write!(out, "\n{n},{c}");
            }
            out
        }
        Format::Json => serde_json::to_string(&CountsJson {
            model: table.kind.name(),
            genus: table.genus,
            counts: strings().collect(),
        })
        .expect("plain data serializes"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use genusgf_core::engine::{base_case, GenusTable, ModelSpec};

    #[test]
    fn closed_forms_plain_and_latex() {
        let h = ModelSpec::hypermap();
        assert_eq!(plain(&base_case(&h, 1)), "t^3/((1-t)(1-4t)^2)");
        assert_eq!(plain(&base_case(&h, 0)), "t(1-3t)/(1-2t)^2");
        assert_eq!(
            latex(&base_case(&h, 1)),
            "C_1(t(1-2t))=\\frac{t^3}{(1-t)(1-4t)^2}"
        );
        assert_eq!(
            latex(&base_case(&h, 0)),
            "C_0(t(1-2t))=\\frac{t(1-3t)}{(1-2t)^2}"
        );
        let m = ModelSpec::map();
        assert_eq!(
            latex(&base_case(&m, 0)),
            "\\Ct_0(t(1-3t))=\\frac{1-4t}{(1-3t)^2}"
        );
    }

    #[test]
    fn genus_two_renderings() {
        let table = GenusTable::computed(ModelSpec::map(), 2).unwrap();
        let sol = table.get(2).unwrap();
        assert_eq!(
            json(sol),
            r#"{"model":"map","genus":2,"offset":4,"coefficients":["21","-336","2334","-9108","21177","-27756","15876"],"denom":[{"k":2,"exp":4},{"k":6,"exp":7}]}"#
        );
        assert_eq!(
            plain(sol),
            "(21t^4-336t^5+2334t^6-9108t^7+21177t^8-27756t^9+15876t^10)/((1-2t)^4(1-6t)^7)"
        );
    }

    #[test]
    fn counts_formats() {
        let table = CountTable {
            kind: ModelKind::Map,
            genus: 0,
            counts: [1, 2, 9, 54].into_iter().map(BigInt::from).collect(),
        };
        assert_eq!(render_counts(&table, Format::Plain), "1, 2, 9, 54");
        assert_eq!(
            render_counts(&table, Format::Csv),
            "n,count\n0,1\n1,2\n2,9\n3,54"
        );
        assert_eq!(
            render_counts(&table, Format::Json),
            r#"{"model":"map","genus":0,"counts":["1","2","9","54"]}"#
        );
    }
}
