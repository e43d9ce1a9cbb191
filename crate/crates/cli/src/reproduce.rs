//! Cross-checks of the published semigroup tables, decompositions,
//! classifications and isomorphism witnesses against the fixtures.

use std::collections::BTreeSet;

use anyhow::Result;
use bianchi_core::{
    are_isomorphic, classify3, complete, find_resonances, pipeline, raw_completions, BianchiTag, CayleyTable, Grading,
    Perm, ResonantDecomposition, StartAlgebra,
};

use crate::fixtures::Fixtures;

/// One hand-built semigroup with its published decomposition and type.
struct HandBuilt {
    name: &'static str,
    zero: usize,
    s0: &'static [usize],
    s1: &'static [usize],
    expected: BianchiTag,
}

const HAND_BUILT: [HandBuilt; 5] = [
    HandBuilt {
        name: "SE2",
        zero: 4,
        s0: &[1, 3, 4],
        s1: &[2, 4],
        expected: BianchiTag::III,
    },
    HandBuilt {
        name: "SK3",
        zero: 4,
        s0: &[2, 3, 4],
        s1: &[1, 4],
        expected: BianchiTag::III,
    },
    HandBuilt {
        name: "SN1",
        zero: 4,
        s0: &[2, 3, 4],
        s1: &[1, 4],
        expected: BianchiTag::III,
    },
    HandBuilt {
        name: "SN2",
        zero: 4,
        s0: &[2, 4],
        s1: &[1, 3, 4],
        expected: BianchiTag::II,
    },
    HandBuilt {
        name: "SN3",
        zero: 4,
        s0: &[2, 4],
        s1: &[1, 3, 4],
        expected: BianchiTag::V,
    },
];

/// `name ≅ list via witness`, meaning the witness carries the list table
/// onto the named one.
struct Witness {
    name: &'static str,
    list: &'static str,
    printed: [usize; 4],
    /// The printed witness is a known misprint; the isomorphism itself
    /// must still hold.
    misprint: bool,
}

const HAND_BUILT_WITNESSES: [Witness; 5] = [
    Witness {
        name: "SN1",
        list: "S4_44",
        printed: [4, 1, 2, 3],
        misprint: false,
    },
    Witness {
        name: "SN2",
        list: "S4_12",
        printed: [4, 3, 2, 1],
        misprint: false,
    },
    Witness {
        name: "SN3",
        list: "S4_42",
        printed: [4, 1, 3, 2],
        misprint: false,
    },
    Witness {
        name: "SE2",
        list: "S4_43",
        printed: [4, 3, 2, 1],
        misprint: false,
    },
    Witness {
        name: "SK3",
        list: "S4_45",
        printed: [4, 2, 1, 3],
        misprint: true,
    },
];

/// A published completion of a template and the list table it maps from.
pub struct TemplateClass {
    pub name: &'static str,
    pub rows: [[usize; 4]; 4],
    pub list: &'static str,
    pub witness: [usize; 4],
    /// The printed table does not match the witness image.
    pub misprint: bool,
}

pub struct TemplateCase {
    pub fixture: &'static str,
    pub expected: BianchiTag,
    pub classes: &'static [TemplateClass],
}

const Z: usize = 4;

pub const TEMPLATES: [TemplateCase; 3] = [
    TemplateCase {
        fixture: "template_II",
        expected: BianchiTag::II,
        classes: &[
            TemplateClass {
                name: "S_II^1",
                rows: [[Z, 3, Z, Z], [3, Z, Z, Z], [Z, Z, Z, Z], [Z, Z, Z, Z]],
                list: "S4_10",
                witness: [4, 3, 1, 2],
                misprint: false,
            },
            TemplateClass {
                name: "S_II^2",
                rows: [[2, 3, Z, Z], [3, Z, Z, Z], [Z, Z, Z, Z], [Z, Z, Z, Z]],
                list: "S4_12",
                witness: [4, 3, 2, 1],
                misprint: false,
            },
        ],
    },
    TemplateCase {
        fixture: "template_III",
        expected: BianchiTag::III,
        classes: &[
            TemplateClass {
                name: "S_III^1",
                rows: [[Z, Z, 1, Z], [Z, Z, Z, Z], [1, Z, 3, Z], [Z, Z, Z, Z]],
                list: "S4_13",
                witness: [4, 2, 1, 3],
                misprint: false,
            },
            TemplateClass {
                name: "S_III^2",
                rows: [[3, Z, 1, Z], [Z, Z, Z, Z], [1, Z, 3, Z], [Z, Z, Z, Z]],
                list: "S4_28",
                witness: [4, 2, 3, 1],
                misprint: false,
            },
            TemplateClass {
                name: "S_III^3",
                rows: [[Z, Z, 1, Z], [Z, Z, 2, Z], [1, 2, 3, Z], [Z, Z, Z, Z]],
                list: "S4_42",
                witness: [4, 1, 2, 3],
                misprint: false,
            },
            TemplateClass {
                name: "S_III^4",
                rows: [[2, Z, 1, Z], [Z, Z, 2, Z], [1, 2, 3, Z], [Z, Z, Z, Z]],
                list: "S4_43",
                witness: [4, 2, 1, 3],
                misprint: false,
            },
            TemplateClass {
                name: "S_III^5",
                rows: [[Z, Z, 1, Z], [Z, 2, Z, Z], [1, Z, 3, Z], [Z, Z, Z, Z]],
                list: "S4_44",
                witness: [4, 1, 2, 3],
                misprint: false,
            },
            TemplateClass {
                name: "S_III^6",
                rows: [[Z, Z, 1, Z], [Z, 2, 2, Z], [1, 2, 3, Z], [Z, Z, Z, Z]],
                list: "S4_45",
                witness: [4, 1, 2, 3],
                misprint: false,
            },
            // Printed identical to S_III^5; the witness image differs from it
            // in the λ1λ1 cell.
            TemplateClass {
                name: "S_III^7",
                rows: [[Z, Z, 1, Z], [Z, 2, Z, Z], [1, Z, 3, Z], [Z, Z, Z, Z]],
                list: "S4_64",
                witness: [4, 2, 3, 1],
                misprint: true,
            },
        ],
    },
    TemplateCase {
        fixture: "template_V",
        expected: BianchiTag::V,
        classes: &[TemplateClass {
            name: "S_V",
            rows: [[Z, 1, Z, Z], [1, 2, 3, Z], [Z, 3, Z, Z], [Z, Z, Z, Z]],
            list: "S4_42",
            witness: [4, 1, 3, 2],
            misprint: false,
        }],
    },
];

/// Semigroups of the closing summary table, by the type they generate.
const FINAL: [(BianchiTag, &[&str]); 3] = [
    (BianchiTag::II, &["S4_10", "S4_12"]),
    (
        BianchiTag::III,
        &["S4_13", "S4_28", "S4_42", "S4_43", "S4_44", "S4_45", "S4_64"],
    ),
    (BianchiTag::V, &["S4_42"]),
];

#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn expect(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        if !ok {
            let f = failure();
            self.lines.push(format!("MISMATCH {f}"));
            self.failures.push(f);
        }
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn perm(labels: &[usize]) -> Perm {
    Perm::from_labels(labels).expect("published witnesses are permutations")
}

fn reduced_type(start: StartAlgebra, t: &CayleyTable, d: &ResonantDecomposition) -> Option<BianchiTag> {
    let out = pipeline(&start.algebra(), &Grading::planar(), t, d, true).ok()?;
    (out.dim() == 3).then(|| classify3(out.algebra()).ok().map(|b| b.tag()))?
}

/// Runs every check; mismatches are collected rather than aborting.
pub fn reproduce(fx: &Fixtures) -> Result<Report> {
    let mut r = Report::default();
    hand_built(fx, &mut r)?;
    witnesses(fx, &mut r)?;
    templates(fx, &mut r)?;
    final_table(fx, &mut r)?;
    r.line(if r.ok() {
        "reproduce: all checks passed".to_string()
    } else {
        format!("reproduce: {} mismatches", r.failures.len())
    });
    Ok(r)
}

fn hand_built(fx: &Fixtures, r: &mut Report) -> Result<()> {
    r.line("== hand-built semigroups (solvable start, grading V0={X2} V1={X1}, reduced)");
    let mut by_type: Vec<(BianchiTag, Vec<&str>)> = Vec::new();
    for row in &HAND_BUILT {
        let t = fx.table(row.name)?.table;
        let d = ResonantDecomposition::from_labels(row.s0, row.s1)?;
        let zero = t.find_zero();
        let resonant = bianchi_core::is_resonant(&t, &d).unwrap_or(false);
        let solvable = reduced_type(StartAlgebra::Solvable, &t, &d);
        let abelian = reduced_type(StartAlgebra::Abelian, &t, &d);
        let show = |b: Option<BianchiTag>| b.map_or("-".to_string(), |b| b.to_string());
        r.line(format!(
            "{}: zero={} {} resonant={} solvable={} abelian={}",
            row.name,
            zero.map_or("none".to_string(), |z| format!("λ{}", z + 1)),
            d,
            if resonant { "yes" } else { "no" },
            show(solvable),
            show(abelian)
        ));
        r.expect(zero == Some(row.zero - 1), || {
            format!("{}: zero is not λ{}", row.name, row.zero)
        });
        r.expect(resonant, || format!("{}: {d} is not resonant", row.name));
        r.expect(solvable == Some(row.expected), || {
            format!("{}: expected type {}, got {}", row.name, row.expected, show(solvable))
        });
        r.expect(abelian == Some(BianchiTag::I), || {
            format!("{}: abelian start does not give I", row.name)
        });
        if let Some(tag) = solvable {
            match by_type.iter_mut().find(|(t, _)| *t == tag) {
                Some((_, names)) => names.push(row.name),
                None => by_type.push((tag, vec![row.name])),
            }
        }
    }
    by_type.sort();
    for (tag, names) in &by_type {
        r.line(format!("Type {tag}: {}", names.join(" ")));
    }
    for tag in [BianchiTag::II, BianchiTag::III, BianchiTag::V] {
        let want: Vec<&str> = HAND_BUILT
            .iter()
            .filter(|h| h.expected == tag)
            .map(|h| h.name)
            .collect();
        let got = by_type
            .iter()
            .find(|(t, _)| *t == tag)
            .map(|(_, n)| n.clone())
            .unwrap_or_default();
        r.expect(got == want, || format!("Type {tag}: expected {}", want.join(" ")));
    }

    // The abelian start gives type I on every 3-dimensional outcome.
    let mut runs = 0;
    for row in &HAND_BUILT {
        let t = fx.table(row.name)?.table;
        for d in find_resonances(&t) {
            for reduce in [false, true] {
                let out = pipeline(&StartAlgebra::Abelian.algebra(), &Grading::planar(), &t, &d, reduce)?;
                if out.dim() == 3 {
                    runs += 1;
                    let tag = classify3(out.algebra())?.tag();
                    r.expect(tag == BianchiTag::I, || {
                        format!("{}: abelian start {d} gives {tag}", row.name)
                    });
                }
            }
        }
    }
    r.line(format!(
        "Type I: abelian start, {runs} three-dimensional runs over all fixture decompositions"
    ));
    Ok(())
}

fn witnesses(fx: &Fixtures, r: &mut Report) -> Result<()> {
    r.line("== isomorphisms to the list tables");
    for w in &HAND_BUILT_WITNESSES {
        let target = fx.table(w.name)?.table;
        let list = fx.table(w.list)?.table;
        let printed = perm(&w.printed);
        let printed_ok = list.apply_perm(&printed)? == target;
        let found = are_isomorphic(&target, &list);
        match (printed_ok, &found) {
            (true, _) => r.line(format!("{} ≅ {} via {printed}", w.name, w.list)),
            (false, Some(p)) if w.misprint => r.line(format!(
                "{} ≅ {} via {p} (printed {printed} does not carry {} onto {}; known misprint)",
                w.name, w.list, w.list, w.name
            )),
            _ => {}
        }
        r.expect(found.is_some(), || {
            format!("{} is not isomorphic to {}", w.name, w.list)
        });
        if let Some(p) = &found {
            r.expect(list.apply_perm(p)? == target, || {
                format!("{}: search witness {p} fails", w.name)
            });
        }
        r.expect(printed_ok || w.misprint, || {
            format!("{}: witness {printed} from {} fails", w.name, w.list)
        });
        r.expect(!(printed_ok && w.misprint), || {
            format!("{}: witness expected to be a misprint", w.name)
        });
    }
    Ok(())
}

fn templates(fx: &Fixtures, r: &mut Report) -> Result<()> {
    r.line("== template completions");
    for case in &TEMPLATES {
        let problem = fx.problem(case.fixture)?;
        let raw = raw_completions(&problem)?;
        let classes = complete(&problem)?;
        r.line(format!(
            "{}: candidates={} raw={} classes={}",
            case.fixture,
            problem.candidate_count(),
            raw.len(),
            classes.len()
        ));
        r.expect(classes.len() == case.classes.len(), || {
            format!(
                "{}: expected {} classes, got {}",
                case.fixture,
                case.classes.len(),
                classes.len()
            )
        });
        // Each class matches exactly one designated list table.
        let mut matched = BTreeSet::new();
        for rep in &classes {
            let hits: Vec<&TemplateClass> = case
                .classes
                .iter()
                .filter(|c| {
                    fx.table(c.list)
                        .map(|l| are_isomorphic(rep, &l.table).is_some())
                        .unwrap_or(false)
                })
                .collect();
            r.expect(hits.len() == 1, || {
                format!("{}: a class matches {} designated tables", case.fixture, hits.len())
            });
            matched.extend(hits.iter().map(|c| c.list));
            let d = problem
                .required_decomposition
                .expect("templates declare a decomposition");
            let tag = reduced_type(StartAlgebra::Solvable, rep, &d);
            r.expect(tag == Some(case.expected), || {
                format!(
                    "{}: a class classifies as {tag:?}, expected {}",
                    case.fixture, case.expected
                )
            });
        }
        r.expect(matched.len() == case.classes.len(), || {
            format!("{}: designated tables missed", case.fixture)
        });
        for c in case.classes {
            let list = fx.table(c.list)?.table;
            let w = perm(&c.witness);
            let image = list.apply_perm(&w)?;
            let printed = CayleyTable::from_label_rows(&c.rows)?;
            let in_raw = raw.binary_search(&image).is_ok();
            let exact = image == printed;
            let note = match (exact, c.misprint) {
                (true, _) => String::new(),
                (false, true) => " (printed table differs from the witness image; known misprint)".into(),
                (false, false) => " (printed table differs)".into(),
            };
            r.line(format!("{} ≅ {} via {w}{note}", c.name, c.list));
            r.expect(in_raw, || {
                format!("{}: witness image of {} is not a completion", c.name, c.list)
            });
            r.expect(exact || c.misprint, || {
                format!("{}: witness image differs from the printed table", c.name)
            });
        }
    }
    Ok(())
}

fn final_table(fx: &Fixtures, r: &mut Report) -> Result<()> {
    r.line("== list tables by generated type");
    for (tag, names) in FINAL {
        for name in names {
            let t = fx.table(name)?.table;
            let reaches = find_resonances(&t)
                .iter()
                .any(|d| reduced_type(StartAlgebra::Solvable, &t, d) == Some(tag));
            r.expect(reaches, || format!("{name} does not generate type {tag}"));
        }
        r.line(format!("Type {tag}: {}", names.join(" ")));
    }
    Ok(())
}
