//! Named rings with fixed presentations. Bases of nilpotent rings are listed
//! layer by layer along the lower central series, and those rings carry the
//! matching grading.

use std::collections::BTreeMap;

use super::{free_nilpotent, LieRing};
use crate::error::{Error, Result};

pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    /// `(parameter, default, allowed range description)`
    pub params: &'static [(&'static str, i64, &'static str)],
    pub description: &'static str,
}

impl CatalogEntry {
    pub fn default_params(&self) -> Params {
        self.params.iter().map(|&(k, v, _)| (k.to_string(), v)).collect()
    }
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { name: "abelian", aliases: &["ab"], params: &[("n", 2, "n >= 1")], description: "abelian F_p^n" },
    CatalogEntry {
        name: "heisenberg",
        aliases: &["H", "f22", "m3_2"],
        params: &[],
        description: "[x1,x2]=x3",
    },
    CatalogEntry {
        name: "M",
        aliases: &["Mc", "maximal", "M_c"],
        params: &[("c", 3, "c >= 2")],
        description: "maximal class: [x0,xi]=x(i+1), 1 <= i <= c-1",
    },
    CatalogEntry { name: "m4_3", aliases: &[], params: &[], description: "graded M_3" },
    CatalogEntry { name: "m5_4_1", aliases: &[], params: &[], description: "graded M_4" },
    CatalogEntry { name: "m6_5_1", aliases: &[], params: &[], description: "graded M_5" },
    CatalogEntry {
        name: "fil4",
        aliases: &["Fil4"],
        params: &[],
        description: "[x1,x2]=x3, [x1,x3]=x4, [x1,x4]=[x2,x3]=x5",
    },
    CatalogEntry {
        name: "f",
        aliases: &["f_c_d", "free"],
        params: &[("c", 3, "c in 2..=4"), ("d", 2, "(2,d>=2), (3,2), (4,2), (3,3)")],
        description: "free nilpotent of class c on d generators",
    },
    CatalogEntry {
        name: "grenham",
        aliases: &["G", "G_n"],
        params: &[("n", 3, "n >= 2")],
        description: "[w,xi]=yi, 1 <= i <= n-1",
    },
    CatalogEntry {
        name: "L_E",
        aliases: &["LE", "elliptic"],
        params: &[],
        description: "class 2, dim 9, attached to y^2 z = x^3 - x z^2",
    },
    CatalogEntry {
        name: "L_np8",
        aliases: &["Lnp8", "np8"],
        params: &[],
        description: "class 2, dim 8, attached to x^3 - 2",
    },
    CatalogEntry {
        name: "vl",
        aliases: &["vaughan-lee", "L_pab"],
        params: &[("a", 1, "any integer"), ("b", 1, "any integer")],
        description: "class 3, dim 7, quotient f_2_3 with [[x1,x3],x3]=[[x1,x2],x1]=z",
    },
    CatalogEntry { name: "sl2", aliases: &["sl_2"], params: &[], description: "[h,e]=2e, [h,f]=-2f, [e,f]=h" },
    CatalogEntry {
        name: "tr",
        aliases: &["tr_n"],
        params: &[("n", 2, "1 <= n <= 4")],
        description: "upper-triangular n x n matrices",
    },
    CatalogEntry {
        name: "H_m",
        aliases: &["Hm", "central-heisenberg"],
        params: &[("m", 2, "m >= 1")],
        description: "central product of m Heisenberg rings",
    },
    CatalogEntry { name: "g53", aliases: &["g_5_3"], params: &[], description: "[x1,x2]=x4, [x1,x4]=[x2,x3]=x5" },
    CatalogEntry {
        name: "g64",
        aliases: &["g_6_4"],
        params: &[],
        description: "[x1,x2]=y1, [x1,x3]=[x2,x4]=y2",
    },
];

pub fn catalog_entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Entry by name or alias; exact matches win over case-insensitive ones.
pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    let eq = |s: &str| s.eq_ignore_ascii_case(name);
    ENTRIES
        .iter()
        .find(|e| e.name == name || e.aliases.contains(&name))
        .or_else(|| ENTRIES.iter().find(|e| eq(e.name) || e.aliases.iter().any(|a| eq(a))))
}

/// Build a ring from 1-based bracket data.
fn build(name: &str, dim: usize, brackets: &[(usize, usize, &[(i64, usize)])], grading: Option<Vec<usize>>) -> LieRing {
    let mut r = LieRing::new(name, dim).expect("positive dimension");
    for &(i, j, terms) in brackets {
        let terms: Vec<(i64, usize)> = terms.iter().map(|&(c, k)| (c, k - 1)).collect();
        r.set_bracket(i - 1, j - 1, &terms).expect("catalog data in range");
    }
    r.set_grading(grading).expect("catalog grading consistent");
    r
}

fn maximal_class(c: usize) -> LieRing {
    // x0..xc are e1..e(c+1); [x0, xi] = x(i+1)
    let mut r = LieRing::new(format!("M_{c}"), c + 1).unwrap();
    for i in 1..c {
        r.set_bracket(0, i, &[(1, i + 1)]).unwrap();
    }
    let mut grading = vec![2];
    grading.extend(std::iter::repeat_n(1, c - 1));
    r.set_grading(Some(grading)).unwrap();
    r
}

/// Construct a named ring. Unknown parameters are rejected; missing ones take
/// the catalog default.
pub fn catalog(name: &str, params: &Params) -> Result<LieRing> {
    let entry = lookup(name).ok_or_else(|| Error::UnknownRing(name.to_string()))?;
    for key in params.keys() {
        if !entry.params.iter().any(|&(k, _, _)| k == key) {
            return Err(Error::BadParam { ring: entry.name.into(), msg: format!("unknown parameter `{key}`") });
        }
    }
    let get = |key: &str| -> i64 {
        params.get(key).copied().unwrap_or_else(|| entry.params.iter().find(|p| p.0 == key).unwrap().1)
    };
    let bad = |msg: String| Error::BadParam { ring: entry.name.into(), msg };

    let ring = match entry.name {
        "abelian" => {
            let n = get("n");
            if !(1..=64).contains(&n) {
                return Err(bad(format!("n = {n}, need 1 <= n <= 64")));
            }
            let n = n as usize;
            LieRing::new(format!("abelian_{n}"), n)?.with_grading(vec![n])?.with_param("n", n as i64)
        }
        "heisenberg" => build("heisenberg", 3, &[(1, 2, &[(1, 3)])], Some(vec![2, 1])),
        "M" => {
            let c = get("c");
            if !(2..=40).contains(&c) {
                return Err(bad(format!("c = {c}, need c >= 2")));
            }
            maximal_class(c as usize).with_param("c", c)
        }
        "m4_3" | "m5_4_1" | "m6_5_1" => {
            let c = match entry.name {
                "m4_3" => 3,
                "m5_4_1" => 4,
                _ => 5,
            };
            let mut r = maximal_class(c);
            r.rename(entry.name);
            r
        }
        "fil4" => build(
            "fil4",
            5,
            &[(1, 2, &[(1, 3)]), (1, 3, &[(1, 4)]), (1, 4, &[(1, 5)]), (2, 3, &[(1, 5)])],
            None,
        ),
        "f" => {
            let (c, d) = (get("c"), get("d"));
            let ok = matches!((c, d), (2, 2..=9) | (3, 2) | (4, 2) | (3, 3));
            if !ok {
                return Err(bad(format!("(c, d) = ({c}, {d}) not supported")));
            }
            free_nilpotent(c as usize, d as usize)?
        }
        "grenham" => {
            let n = get("n");
            if !(2..=32).contains(&n) {
                return Err(bad(format!("n = {n}, need n >= 2")));
            }
            let n = n as usize;
            // w = e1, x_i = e(1+i), y_i = e(n+i)
            let mut r = LieRing::new(format!("grenham_{n}"), 2 * n - 1)?;
            for i in 1..n {
                r.set_bracket(0, i, &[(1, n - 1 + i)])?;
            }
            r.with_grading(vec![n, n - 1])?.with_param("n", n as i64)
        }
        "L_E" => build(
            "L_E",
            9,
            &[
                (1, 5, &[(1, 7)]),
                (2, 4, &[(1, 7)]),
                (3, 6, &[(1, 7)]),
                (1, 6, &[(1, 8)]),
                (3, 4, &[(1, 8)]),
                (1, 4, &[(1, 9)]),
                (2, 5, &[(1, 9)]),
            ],
            Some(vec![6, 3]),
        ),
        "L_np8" => build(
            "L_np8",
            8,
            &[
                (1, 4, &[(1, 6)]),
                (2, 5, &[(1, 6)]),
                (1, 5, &[(1, 7)]),
                (3, 4, &[(2, 7)]),
                (2, 4, &[(1, 8)]),
                (3, 5, &[(1, 8)]),
            ],
            Some(vec![5, 3]),
        ),
        "vl" => {
            let (a, b) = (get("a"), get("b"));
            // x1 x2 x3 y1 y2 y3 z; [y1,x1] = [y2,x3] = z, [y3,x2] = b z, [y3,x3] = a z
            build(
                "vl",
                7,
                &[
                    (1, 2, &[(1, 4)]),
                    (1, 3, &[(1, 5)]),
                    (2, 3, &[(1, 6)]),
                    (1, 4, &[(-1, 7)]),
                    (3, 5, &[(-1, 7)]),
                    (2, 6, &[(-b, 7)]),
                    (3, 6, &[(-a, 7)]),
                ],
                Some(vec![3, 3, 1]),
            )
            .with_param("a", a)
            .with_param("b", b)
        }
        // e, f, h
        "sl2" => build("sl2", 3, &[(1, 2, &[(1, 3)]), (1, 3, &[(-2, 1)]), (2, 3, &[(2, 2)])], None),
        "tr" => {
            let n = get("n");
            if !(1..=4).contains(&n) {
                return Err(bad(format!("n = {n}, need 1 <= n <= 4")));
            }
            triangular(n as usize).with_param("n", n)
        }
        "H_m" => {
            let m = get("m");
            if !(1..=16).contains(&m) {
                return Err(bad(format!("m = {m}, need m >= 1")));
            }
            let m = m as usize;
            // x_1..x_m, y_1..y_m, w with [x_i, y_i] = w
            let mut r = LieRing::new(format!("H_{m}"), 2 * m + 1)?;
            for i in 0..m {
                r.set_bracket(i, m + i, &[(1, 2 * m)])?;
            }
            r.with_grading(vec![2 * m, 1])?.with_param("m", m as i64)
        }
        "g53" => build(
            "g53",
            5,
            &[(1, 2, &[(1, 4)]), (1, 4, &[(1, 5)]), (2, 3, &[(1, 5)])],
            None,
        ),
        "g64" => build(
            "g64",
            6,
            &[(1, 2, &[(1, 5)]), (1, 3, &[(1, 6)]), (2, 4, &[(1, 6)])],
            Some(vec![4, 2]),
        ),
        other => unreachable!("catalog entry {other} without constructor"),
    };
    Ok(ring)
}

/// `tr_n` on `E_ij` (i <= j): the diagonal first, then each superdiagonal.
fn triangular(n: usize) -> LieRing {
    let mut basis = Vec::new();
    for k in 0..n {
        for i in 0..n - k {
            basis.push((i, i + k));
        }
    }
    let index = |a: usize, b: usize| basis.iter().position(|&e| e == (a, b));
    let mut r = LieRing::new(format!("tr_{n}"), basis.len()).unwrap();
    for (x, &(a, b)) in basis.iter().enumerate() {
        for (y, &(c, d)) in basis.iter().enumerate().skip(x + 1) {
            // [E_ab, E_cd] = δ_bc E_ad − δ_da E_cb
            let mut terms = Vec::new();
            if b == c {
                terms.push((1, index(a, d).unwrap()));
            }
            if d == a {
                terms.push((-1, index(c, b).unwrap()));
            }
            r.set_bracket(x, y, &terms).unwrap();
        }
    }
    r
}
