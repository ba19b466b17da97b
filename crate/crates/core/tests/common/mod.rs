//! Shared helpers for the integration tests: a generator of small Java
//! programs, independent oracles, and a synthetic large corpus.
#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use iris::code_model::{link_variant, parse_unit, SourceFile, VariantModel};
use iris::{compute_metrics, MetricsConfig, MetricsVector};
use proptest::prelude::*;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2020, 1, 1).unwrap()
}

pub fn model_of(files: &[(String, String)]) -> VariantModel {
    let units = files
        .iter()
        .map(|(p, s)| {
            parse_unit(SourceFile::new(p.clone(), s.clone())).unwrap_or_else(|f| panic!("{}\n{s}", f.diagnostic))
        })
        .collect();
    link_variant(units, "gen", date())
}

pub fn metrics_of(files: &[(String, String)], cfg: &MetricsConfig) -> MetricsVector {
    compute_metrics(&model_of(files), cfg)
}

/// Line counter used as an oracle for the fixture corpus. It only understands
/// the comment layout that corpus uses: whole-line `//` comments, block
/// comments that start a line, and trailing `//` comments after code.
pub fn simple_loc(text: &str) -> usize {
    let mut n = 0;
    let mut in_block = false;
    for line in text.lines() {
        let t = line.trim();
        if in_block {
            in_block = !t.contains("*/");
            continue;
        }
        if t.is_empty() || t.starts_with("//") {
            continue;
        }
        if t.starts_with("/*") {
            in_block = !t.contains("*/");
            continue;
        }
        n += 1;
    }
    n
}

// ---------------------------------------------------------------------------
// Program generator

#[derive(Debug, Clone)]
pub enum Stmt {
    Local(u8),
    FieldAssign { field: u8, this_qualified: bool },
    CallOwn(u8),
    CallOther { class: u8, method: u8 },
    FieldOfOther { class: u8, field: u8 },
    StaticCall,
    Loop(Vec<Stmt>),
    Comment,
    Blank,
    TrickyString,
}

#[derive(Debug, Clone)]
pub struct MethodSpec {
    pub public: bool,
    pub is_static: bool,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone)]
pub struct ClassSpec {
    pub package: u8,
    pub is_interface: bool,
    pub extends: Option<u8>,
    pub implements: Vec<u8>,
    pub fields: u8,
    pub ctors: Vec<Vec<Stmt>>,
    pub methods: Vec<MethodSpec>,
}

#[derive(Debug, Clone)]
pub struct Program {
    pub classes: Vec<ClassSpec>,
}

fn leaf_stmt() -> impl Strategy<Value = Stmt> {
    prop_oneof![
        any::<u8>().prop_map(Stmt::Local),
        (any::<u8>(), any::<bool>()).prop_map(|(field, this_qualified)| Stmt::FieldAssign { field, this_qualified }),
        any::<u8>().prop_map(Stmt::CallOwn),
        (any::<u8>(), any::<u8>()).prop_map(|(class, method)| Stmt::CallOther { class, method }),
        (any::<u8>(), any::<u8>()).prop_map(|(class, field)| Stmt::FieldOfOther { class, field }),
        Just(Stmt::StaticCall),
        Just(Stmt::Comment),
        Just(Stmt::Blank),
        Just(Stmt::TrickyString),
    ]
}

fn stmt() -> impl Strategy<Value = Stmt> {
    prop_oneof![
        4 => leaf_stmt(),
        1 => prop::collection::vec(leaf_stmt(), 0..3).prop_map(Stmt::Loop),
    ]
}

fn method() -> impl Strategy<Value = MethodSpec> {
    (
        any::<bool>(),
        prop::bool::weighted(0.25),
        prop::collection::vec(stmt(), 0..5),
    )
        .prop_map(|(public, is_static, body)| MethodSpec {
            public,
            is_static,
            body,
        })
}

fn class() -> impl Strategy<Value = ClassSpec> {
    (
        0u8..3,
        prop::bool::weighted(0.2),
        prop::option::of(any::<u8>()),
        prop::collection::vec(any::<u8>(), 0..2),
        0u8..4,
        prop::collection::vec(prop::collection::vec(stmt(), 0..3), 0..3),
        prop::collection::vec(method(), 0..4),
    )
        .prop_map(
            |(package, is_interface, extends, implements, fields, ctors, methods)| ClassSpec {
                package,
                is_interface,
                extends,
                implements,
                fields,
                ctors,
                methods,
            },
        )
}

pub fn program() -> impl Strategy<Value = Program> {
    prop::collection::vec(class(), 1..6).prop_map(|classes| Program { classes })
}

/// Identifier spelling per category. Two namings render the same program
/// with different identifiers but identical structure.
#[derive(Debug, Clone, Copy)]
pub struct Naming {
    pub package: &'static str,
    pub class: &'static str,
    pub field: &'static str,
    pub method: &'static str,
    pub local: &'static str,
    pub param: &'static str,
    pub suffix: &'static str,
}

pub const PLAIN: Naming = Naming {
    package: "p",
    class: "C",
    field: "f",
    method: "m",
    local: "v",
    param: "a",
    suffix: "",
};

pub const RENAMED: Naming = Naming {
    package: "zz",
    class: "Kls",
    field: "attr",
    method: "run",
    local: "tmp",
    param: "arg",
    suffix: "_q",
};

impl Naming {
    fn name(&self, prefix: &str, i: usize) -> String {
        format!("{prefix}{i}{}", self.suffix)
    }
    pub fn pkg(&self, i: usize) -> String {
        self.name(self.package, i)
    }
    pub fn class(&self, i: usize) -> String {
        self.name(self.class, i)
    }
    fn field(&self, i: usize) -> String {
        self.name(self.field, i)
    }
    fn method(&self, i: usize) -> String {
        self.name(self.method, i)
    }
    fn local(&self, i: usize) -> String {
        self.name(self.local, i)
    }
    fn param(&self, i: usize) -> String {
        self.name(self.param, i)
    }
}

impl Program {
    fn is_class(&self, i: usize) -> bool {
        !self.classes[i].is_interface
    }

    fn superclass(&self, i: usize) -> Option<usize> {
        let c = &self.classes[i];
        if c.is_interface || i == 0 {
            return None;
        }
        let t = c.extends? as usize % i;
        self.is_class(t).then_some(t)
    }

    fn interfaces(&self, i: usize) -> Vec<usize> {
        if i == 0 {
            return Vec::new();
        }
        let mut out: Vec<usize> = self.classes[i]
            .implements
            .iter()
            .map(|&r| r as usize % i)
            .filter(|&t| !self.is_class(t))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Number of declared constructors.
    pub fn constructor_count(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| !c.is_interface)
            .map(|c| c.ctors.len())
            .sum()
    }

    /// One file per class, paths `<package>/<Class>.java`.
    pub fn render(&self, n: &Naming) -> Vec<(String, String)> {
        (0..self.classes.len()).map(|i| self.render_class(i, n)).collect()
    }

    fn render_class(&self, i: usize, n: &Naming) -> (String, String) {
        let c = &self.classes[i];
        let mut s = String::new();
        let pkg = n.pkg(c.package as usize);
        let _ = writeln!(s, "package {pkg};\n");
        for (j, other) in self.classes.iter().enumerate() {
            if other.package != c.package {
                let _ = writeln!(s, "import {}.{};", n.pkg(other.package as usize), n.class(j));
            }
        }
        let _ = writeln!(s, "\n/**\n * Generated type {i}.\n */");
        let kw = if c.is_interface { "interface" } else { "class" };
        let _ = write!(s, "public {kw} {}", n.class(i));
        if let Some(sup) = self.superclass(i) {
            let _ = write!(s, " extends {}", n.class(sup));
        }
        let ifaces = self.interfaces(i);
        if !ifaces.is_empty() {
            let list: Vec<_> = ifaces.iter().map(|&t| n.class(t)).collect();
            let kw = if c.is_interface { "extends" } else { "implements" };
            let _ = write!(s, " {kw} {}", list.join(", "));
        }
        s.push_str(" {\n");
        for f in 0..c.fields as usize {
            let _ = writeln!(s, "    int {} = {f};", n.field(f));
        }
        if c.is_interface {
            for (k, _) in c.methods.iter().enumerate() {
                let _ = writeln!(s, "    void {}();", n.method(k));
            }
        } else {
            for (k, body) in c.ctors.iter().enumerate() {
                let params: Vec<_> = (0..k).map(|p| format!("int {}", n.param(p))).collect();
                let _ = writeln!(s, "    public {}({}) {{", n.class(i), params.join(", "));
                let mut locals = 0;
                self.render_body(i, body, n, 2, &mut locals, &mut s);
                s.push_str("    }\n");
            }
            for (k, m) in c.methods.iter().enumerate() {
                let mut mods = String::new();
                if m.public {
                    mods.push_str("public ");
                }
                if m.is_static {
                    mods.push_str("static ");
                }
                let _ = writeln!(s, "\n    {mods}void {}(int {}) {{", n.method(k), n.param(0));
                let mut locals = 0;
                self.render_body(i, &m.body, n, 2, &mut locals, &mut s);
                s.push_str("    }\n");
            }
        }
        s.push_str("}\n");
        (format!("{pkg}/{}.java", n.class(i)), s)
    }

    fn render_body(&self, i: usize, body: &[Stmt], n: &Naming, depth: usize, locals: &mut usize, s: &mut String) {
        let pad = "    ".repeat(depth);
        let c = &self.classes[i];
        let concrete: Vec<usize> = (0..self.classes.len()).filter(|&j| self.is_class(j)).collect();
        for st in body {
            match st {
                Stmt::Local(k) => {
                    let v = n.local(*locals);
                    *locals += 1;
                    let init = if c.fields > 0 {
                        n.field(*k as usize % c.fields as usize)
                    } else {
                        k.to_string()
                    };
                    let _ = writeln!(s, "{pad}int {v} = {init};");
                }
                Stmt::FieldAssign { field, this_qualified } => {
                    if c.fields == 0 {
                        continue;
                    }
                    let f = n.field(*field as usize % c.fields as usize);
                    if *this_qualified {
                        let _ = writeln!(s, "{pad}this.{f} = {f} + 1;");
                    } else {
                        let _ = writeln!(s, "{pad}{f} = {f} * 2;");
                    }
                }
                Stmt::CallOwn(k) => {
                    if c.methods.is_empty() {
                        continue;
                    }
                    let _ = writeln!(s, "{pad}{}({});", n.method(*k as usize % c.methods.len()), k);
                }
                Stmt::CallOther { class, method } => {
                    let j = concrete[*class as usize % concrete.len()];
                    let target = &self.classes[j];
                    if target.methods.is_empty() {
                        continue;
                    }
                    let _ = writeln!(
                        s,
                        "{pad}new {}().{}({method});",
                        n.class(j),
                        n.method(*method as usize % target.methods.len())
                    );
                }
                Stmt::FieldOfOther { class, field } => {
                    let j = concrete[*class as usize % concrete.len()];
                    let target = &self.classes[j];
                    if target.fields == 0 {
                        continue;
                    }
                    let v = n.local(*locals);
                    *locals += 1;
                    let _ = writeln!(s, "{pad}{} {v} = new {}();", n.class(j), n.class(j));
                    let w = n.local(*locals);
                    *locals += 1;
                    let _ = writeln!(
                        s,
                        "{pad}int {w} = {v}.{};",
                        n.field(*field as usize % target.fields as usize)
                    );
                }
                Stmt::StaticCall => {
                    let _ = writeln!(s, "{pad}Math.max(1, Math.abs(-2));");
                }
                Stmt::Loop(inner) => {
                    let v = n.local(*locals);
                    *locals += 1;
                    let _ = writeln!(s, "{pad}for (int {v} = 0; {v} < 3; {v}++) {{");
                    self.render_body(i, inner, n, depth + 1, locals, s);
                    let _ = writeln!(s, "{pad}}}");
                }
                Stmt::Comment => {
                    let _ = writeln!(s, "{pad}// note\n{pad}/* block\n{pad}   comment */");
                }
                Stmt::Blank => s.push('\n'),
                Stmt::TrickyString => {
                    let v = n.local(*locals);
                    *locals += 1;
                    let _ = writeln!(s, "{pad}String {v} = \"a // b /* c\"; // trailing");
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Synthetic large corpus

/// Writes `releases` release trees under `root`, each close to `kloc`
/// thousand lines. Later releases grow slightly. Returns the manifest path.
pub fn write_synthetic_corpus(root: &Path, releases: usize, kloc: usize) -> PathBuf {
    let mut entries = Vec::new();
    for r in 0..releases {
        let dir = root.join(format!("rel{r}"));
        let classes = kloc * 1000 / CLASS_LINES + r * 4;
        for c in 0..classes {
            let pkg = format!("org.synth.m{}", c % 23);
            let path = dir.join(pkg.replace('.', "/")).join(format!("Unit{c}.java"));
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, synthetic_class(&pkg, c, r)).unwrap();
        }
        entries.push(format!(
            r#"{{ "name": "rel{r}", "date": "2010-06-{:02}", "path": "rel{r}" }}"#,
            r % 28 + 1
        ));
    }
    let manifest = root.join("manifest.json");
    std::fs::write(
        &manifest,
        format!("{{ \"releases\": [\n{}\n] }}\n", entries.join(",\n")),
    )
    .unwrap();
    manifest
}

/// Counted lines of one synthetic class.
const CLASS_LINES: usize = 107;

fn synthetic_class(pkg: &str, c: usize, release: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "package {pkg};\n\nimport java.util.ArrayList;\nimport java.util.List;\n"
    );
    let base = if c > 0 && !c.is_multiple_of(3) {
        format!(" extends org.synth.m{}.Unit{}", (c - 1) % 23, c - 1)
    } else {
        String::new()
    };
    let _ = writeln!(s, "/**\n * Synthetic unit {c}.\n */\npublic class Unit{c}{base} {{");
    let _ = writeln!(s, "    private final List<String> items = new ArrayList<>();");
    for f in 0..6 {
        let _ = writeln!(s, "    protected int field{f} = {f};");
    }
    let _ = writeln!(
        s,
        "    public static final String NAME = \"unit-{c} // not a comment\";\n"
    );
    let _ = writeln!(s, "    public Unit{c}() {{\n        this.field0 = {release};\n    }}\n");
    for m in 0..8 {
        let _ = writeln!(s, "    /* method {m} */");
        let _ = writeln!(s, "    public int compute{m}(int input) {{");
        let _ = writeln!(s, "        int acc = input + field{};", m % 6);
        let _ = writeln!(s, "        for (int i = 0; i < field{}; i++) {{", (m + 1) % 6);
        let _ = writeln!(s, "            acc += helper(i) * this.field{};", (m + 2) % 6);
        let _ = writeln!(s, "            items.add(String.valueOf(acc));");
        let _ = writeln!(s, "        }}");
        let _ = writeln!(
            s,
            "        if (acc > 100) {{\n            acc = Math.min(acc, items.size());\n        }}"
        );
        let _ = writeln!(s, "        return acc;\n    }}\n");
    }
    let _ = writeln!(
        s,
        "    static int helper(int k) {{\n        // fold the index\n        return k % 7 == 0 ? k / 7 : k;\n    }}"
    );
    s.push_str("}\n");
    s
}
