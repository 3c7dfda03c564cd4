//! CSV, LaTeX and plain-text renderings of the JSON documents' content.

use std::fmt::Write;

use supertab::{orbit_census, Analysis, CycValue, OrbitPartition, UnitaryMatrix};

/// Float rendering shared by every format: shortest round-trip digits, as in JSON.
pub fn num(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| "null".into())
}

fn vec_text(v: &supertab::ModVector, sep: &str) -> String {
    v.entries().iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

/// Rounds values that would print as `-0.000000` to zero.
fn tidy(x: f64) -> f64 {
    if x.abs() < 5e-7 {
        0.0
    } else {
        x
    }
}

fn coeff_text(v: &CycValue) -> String {
    v.coeffs().iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn orbits_csv(a: &Analysis) -> String {
    let mut out = String::from("action,index,rep,size\n");
    for (tag, p) in [("superclass", a.superclasses()), ("supercharacter", a.supercharacters())] {
        for (i, o) in p.orbits().iter().enumerate() {
            writeln!(out, "{tag},{},{},{}", i + 1, vec_text(&o.representative, " "), o.size()).unwrap();
        }
    }
    out
}

pub fn table_csv(a: &Analysis) -> String {
    let t = &a.table;
    let xs = t.supercharacters().sizes();
    let ys = t.superclasses().sizes();
    let mut out = String::from("i,j,x_size,y_size,re,im,coeffs\n");
    for (i, row) in t.entries().iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let z = e.to_complex();
            writeln!(out, "{},{},{},{},{},{},{}", i + 1, j + 1, xs[i], ys[j], num(z.re), num(z.im), coeff_text(e))
                .unwrap();
        }
    }
    out
}

pub fn unitary_csv(u: &UnitaryMatrix) -> String {
    let mut out = String::from("i,j,re,im\n");
    for i in 0..u.dim() {
        for j in 0..u.dim() {
            let z = u.get(i, j);
            writeln!(out, "{},{},{},{}", i + 1, j + 1, num(z.re), num(z.im)).unwrap();
        }
    }
    out
}

pub fn checks_csv(rows: &[(String, bool, Option<f64>)]) -> String {
    let mut out = String::from("check,passed,residual\n");
    for (name, ok, res) in rows {
        writeln!(out, "{name},{ok},{}", res.map(num).unwrap_or_default()).unwrap();
    }
    out
}

fn group_latex(a: &Analysis) -> String {
    let n = a.group.modulus().get();
    let d = a.group.dim();
    if d == 1 {
        format!("\\mathbb{{Z}}_{{{n}}}")
    } else {
        format!("\\mathbb{{Z}}_{{{n}}}^{{{d}}}")
    }
}

fn cell_latex(v: &CycValue) -> String {
    match v.as_integer() {
        Some(k) => k.to_string(),
        None => v.to_latex(),
    }
}

/// Tabular in the usual layout: superclass labels, a row of superclass
/// sizes, then one row per supercharacter.
pub fn table_latex(a: &Analysis) -> String {
    let t = &a.table;
    let cols = t.cols();
    let mut out = String::new();
    writeln!(out, "\\begin{{tabular}}{{|c|{}}}\\hline", "c|".repeat(cols)).unwrap();
    let labels: Vec<String> = (1..=cols).map(|j| format!("$Y_{{{j}}}$")).collect();
    writeln!(out, "${}$ & {} \\\\", group_latex(a), labels.join(" & ")).unwrap();
    let sizes: Vec<String> = t.superclasses().sizes().iter().map(|s| format!("${s}$")).collect();
    writeln!(out, "superclass size & {} \\\\ \\hline", sizes.join(" & ")).unwrap();
    for (i, row) in t.entries().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|e| format!("${}$", cell_latex(e))).collect();
        writeln!(out, "$\\sigma_{{{}}}$ & {} \\\\", i + 1, cells.join(" & ")).unwrap();
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

pub fn unitary_latex(u: &UnitaryMatrix) -> String {
    let mut out = String::from("U = \\begin{bmatrix}\n");
    for i in 0..u.dim() {
        let cells: Vec<String> = (0..u.dim())
            .map(|j| {
                let (re, im) = (tidy(u.get(i, j).re), tidy(u.get(i, j).im));
                if im == 0.0 {
                    format!("{re:.6}")
                } else {
                    format!("{re:.6}{im:+.6}i")
                }
            })
            .collect();
        writeln!(out, "{} \\\\", cells.join(" & ")).unwrap();
    }
    out.push_str("\\end{bmatrix}\n");
    out
}

fn partition_latex(out: &mut String, title: &str, p: &OrbitPartition) {
    writeln!(out, "% {title}").unwrap();
    out.push_str("\\begin{tabular}{|c|c|c|}\\hline\n orbit & representative & size \\\\ \\hline\n");
    for (i, o) in p.orbits().iter().enumerate() {
        writeln!(out, "{} & $({})$ & ${}$ \\\\", i + 1, vec_text(&o.representative, ","), o.size()).unwrap();
    }
    out.push_str("\\hline\n\\end{tabular}\n");
}

pub fn orbits_latex(a: &Analysis) -> String {
    let mut out = String::new();
    partition_latex(&mut out, "superclasses (y -> yA)", a.superclasses());
    partition_latex(&mut out, "supercharacters (x -> xA^{-t})", a.supercharacters());
    out
}

pub fn checks_latex(rows: &[(String, bool, Option<f64>)]) -> String {
    let mut out = String::from("\\begin{tabular}{|l|c|c|}\\hline\n check & result & residual \\\\ \\hline\n");
    for (name, ok, res) in rows {
        let res = res.map(|r| format!("{r:.3e}")).unwrap_or_default();
        writeln!(
            out,
            "\\texttt{{{}}} & {} & {} \\\\",
            name.replace('_', "\\_"),
            if *ok { "pass" } else { "fail" },
            res
        )
        .unwrap();
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

pub fn orbits_text(a: &Analysis) -> String {
    let mut out = String::new();
    for (tag, p) in
        [("superclasses (y -> yA)", a.superclasses()), ("supercharacters (x -> xA^-t)", a.supercharacters())]
    {
        writeln!(out, "{tag}: {} orbits", p.len()).unwrap();
        for (i, o) in p.orbits().iter().enumerate() {
            writeln!(out, "  {:>3}  rep {}  size {}", i + 1, o.representative, o.size()).unwrap();
        }
        let census: Vec<String> = orbit_census(p).iter().map(|(s, c)| format!("{c}x{s}")).collect();
        writeln!(out, "  census: {}", census.join(", ")).unwrap();
    }
    out
}

pub fn table_text(a: &Analysis) -> String {
    let t = &a.table;
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec![String::new()];
    header.extend((1..=t.cols()).map(|j| format!("Y{j}")));
    grid.push(header);
    let mut sizes = vec!["size".to_string()];
    sizes.extend(t.superclasses().sizes().iter().map(usize::to_string));
    grid.push(sizes);
    for (i, row) in t.entries().iter().enumerate() {
        let mut r = vec![format!("s{}", i + 1)];
        r.extend(row.iter().map(CycValue::to_text));
        grid.push(r);
    }
    let widths: Vec<usize> =
        (0..grid[0].len()).map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in &grid {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    out
}

pub fn unitary_text(u: &UnitaryMatrix) -> String {
    let mut out = String::new();
    for i in 0..u.dim() {
        let cells: Vec<String> = (0..u.dim())
            .map(|j| {
                let z = u.get(i, j);
                format!("{:>10.6}{:+.6}i", tidy(z.re), tidy(z.im))
            })
            .collect();
        writeln!(out, "{}", cells.join("  ")).unwrap();
    }
    out
}

pub fn checks_text(rows: &[(String, bool, Option<f64>)], passed: bool) -> String {
    let mut out = String::new();
    for (name, ok, res) in rows {
        let res = res.map(|r| format!("  (residual {r:.3e})")).unwrap_or_default();
        writeln!(out, "{} {name}{res}", if *ok { "PASS" } else { "FAIL" }).unwrap();
    }
    writeln!(out, "{}", if passed { "all checks passed" } else { "verification FAILED" }).unwrap();
    out
}
