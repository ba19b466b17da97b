//! The thirteen release-level metrics and the counters behind them.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use chrono::NaiveDate;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::code_model::{count_loc, BodyStats, ConstructorCallKind, EdgeKind, MethodDecl, VariantModel};

/// Metric columns, in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Loc,
    Nop,
    Noc,
    Noi,
    Noa,
    Nom,
    Nol,
    Noid,
    Nopm,
    Nosm,
    Noir,
    Noaa,
    Nomi,
}

impl Metric {
    pub const ALL: [Metric; 13] = [
        Metric::Loc,
        Metric::Nop,
        Metric::Noc,
        Metric::Noi,
        Metric::Noa,
        Metric::Nom,
        Metric::Nol,
        Metric::Noid,
        Metric::Nopm,
        Metric::Nosm,
        Metric::Noir,
        Metric::Noaa,
        Metric::Nomi,
    ];

    /// Metrics that measure complexity through code dependencies.
    pub const COMPLEXITY: [Metric; 3] = [Metric::Noir, Metric::Noaa, Metric::Nomi];

    /// Metrics that measure size and identifier growth.
    pub const GROWTH: [Metric; 10] = [
        Metric::Loc,
        Metric::Nop,
        Metric::Noc,
        Metric::Noi,
        Metric::Noa,
        Metric::Nom,
        Metric::Nol,
        Metric::Noid,
        Metric::Nopm,
        Metric::Nosm,
    ];

    pub fn abbrev(self) -> &'static str {
        match self {
            Metric::Loc => "LOC",
            Metric::Nop => "NOP",
            Metric::Noc => "NOC",
            Metric::Noi => "NOI",
            Metric::Noa => "NOA",
            Metric::Nom => "NOM",
            Metric::Nol => "NOL",
            Metric::Noid => "NOID",
            Metric::Nopm => "NOPM",
            Metric::Nosm => "NOSM",
            Metric::Noir => "NOIR",
            Metric::Noaa => "NOAA",
            Metric::Nomi => "NOMI",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Metric::Loc => "Lines of code",
            Metric::Nop => "Number of packages",
            Metric::Noc => "Number of classes",
            Metric::Noi => "Number of interfaces",
            Metric::Noa => "Number of attributes",
            Metric::Nom => "Number of methods",
            Metric::Nol => "Number of local variables",
            Metric::Noid => "Number of identifiers",
            Metric::Nopm => "Number of public methods",
            Metric::Nosm => "Number of static methods",
            Metric::Noir => "Number of inheritance relations",
            Metric::Noaa => "Number of attribute accesses",
            Metric::Nomi => "Number of method invocations",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbrev())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.abbrev().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown metric `{s}`"))
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.abbrev())
    }
}

/// The thirteen counters of one release.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricsVector {
    pub release_name: String,
    pub release_date: NaiveDate,
    values: [u64; 13],
}

impl MetricsVector {
    pub fn new(release_name: impl Into<String>, release_date: NaiveDate, values: [u64; 13]) -> Self {
        MetricsVector {
            release_name: release_name.into(),
            release_date,
            values,
        }
    }

    pub fn zeros(release_name: impl Into<String>, release_date: NaiveDate) -> Self {
        Self::new(release_name, release_date, [0; 13])
    }

    pub fn get(&self, m: Metric) -> u64 {
        self.values[m.index()]
    }

    pub fn values(&self) -> &[u64; 13] {
        &self.values
    }

    /// Packages + classes + attributes + methods. Interfaces are not part of the sum.
    pub fn identifier_sum(&self) -> u64 {
        self.get(Metric::Nop) + self.get(Metric::Noc) + self.get(Metric::Noa) + self.get(Metric::Nom)
    }
}

impl Index<Metric> for MetricsVector {
    type Output = u64;

    fn index(&self, m: Metric) -> &u64 {
        &self.values[m.index()]
    }
}

impl IndexMut<Metric> for MetricsVector {
    fn index_mut(&mut self, m: Metric) -> &mut u64 {
        &mut self.values[m.index()]
    }
}

impl Serialize for MetricsVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(15))?;
        map.serialize_entry("variant", &self.release_name)?;
        map.serialize_entry("date", &self.release_date.format("%Y-%m-%d").to_string())?;
        for m in Metric::ALL {
            map.serialize_entry(m.abbrev(), &self.get(m))?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InheritanceMode {
    #[default]
    All,
    ExtendsOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DependencyScope {
    #[default]
    All,
    CrossClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructorPolicy {
    #[default]
    Include,
    Exclude,
}

/// Counting conventions that the metric definitions leave open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MetricsConfig {
    #[serde(default)]
    pub inheritance: InheritanceMode,
    #[serde(default)]
    pub scope: DependencyScope,
    #[serde(default)]
    pub constructors: ConstructorPolicy,
    #[serde(default)]
    pub new_as_invocation: bool,
}

/// Declaration counts of one release.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DeclarationCounts {
    pub nop: u64,
    pub noc: u64,
    pub noi: u64,
    pub noa: u64,
    pub nom: u64,
    pub nol: u64,
    pub nopm: u64,
    pub nosm: u64,
}

fn method_counted(m: &MethodDecl, cfg: &MetricsConfig) -> bool {
    !m.is_constructor || cfg.constructors == ConstructorPolicy::Include
}

/// Every code body of the release: initializers and method bodies.
fn bodies(model: &VariantModel) -> impl Iterator<Item = (&str, &BodyStats)> {
    model.all_types().flat_map(|t| {
        std::iter::once((t.qualified_name.as_str(), &t.initializer)).chain(
            t.methods
                .iter()
                .filter_map(move |m| m.body.as_ref().map(|b| (t.qualified_name.as_str(), b))),
        )
    })
}

pub fn count_declarations(model: &VariantModel, cfg: &MetricsConfig) -> DeclarationCounts {
    let mut c = DeclarationCounts {
        nop: model.packages.len() as u64,
        ..Default::default()
    };
    for t in model.all_types() {
        if t.kind.is_class_like() {
            c.noc += 1;
        } else {
            c.noi += 1;
        }
        c.noa += t.fields.len() as u64;
        for m in t.methods.iter().filter(|m| method_counted(m, cfg)) {
            c.nom += 1;
            c.nopm += m.is_public() as u64;
            c.nosm += m.is_static() as u64;
        }
    }
    c.nol = bodies(model).map(|(_, b)| b.local_var_decls as u64).sum();
    c
}

pub fn count_inheritance_relations(model: &VariantModel, mode: InheritanceMode) -> u64 {
    model
        .inheritance_edges
        .iter()
        .filter(|e| mode == InheritanceMode::All || e.kind == EdgeKind::Extends)
        .count() as u64
}

pub fn count_attribute_accesses(model: &VariantModel, scope: DependencyScope) -> u64 {
    bodies(model)
        .flat_map(|(_, b)| b.field_access_sites.iter())
        .filter(|s| s.is_counted() && (scope == DependencyScope::All || s.cross_class))
        .count() as u64
}

/// Method invocation sites; `new` expressions join them when `count_new` is set.
pub fn count_method_invocations(model: &VariantModel, scope: DependencyScope, count_new: bool) -> u64 {
    let in_scope = |cross: bool| scope == DependencyScope::All || cross;
    bodies(model)
        .map(|(_, b)| {
            let calls = b.invocation_sites.iter().filter(|s| in_scope(s.cross_class)).count();
            let news = if count_new {
                b.constructor_sites
                    .iter()
                    .filter(|s| s.kind == ConstructorCallKind::New && in_scope(s.cross_class))
                    .count()
            } else {
                0
            };
            (calls + news) as u64
        })
        .sum()
}

/// Summed line count of every file in the release.
pub fn count_release_loc(model: &VariantModel) -> u64 {
    model.units.iter().map(|u| count_loc(&u.file.text) as u64).sum()
}

pub fn compute_metrics(model: &VariantModel, cfg: &MetricsConfig) -> MetricsVector {
    let d = count_declarations(model, cfg);
    let mut v = MetricsVector::zeros(model.release_name.clone(), model.release_date);
    v[Metric::Loc] = count_release_loc(model);
    v[Metric::Nop] = d.nop;
    v[Metric::Noc] = d.noc;
    v[Metric::Noi] = d.noi;
    v[Metric::Noa] = d.noa;
    v[Metric::Nom] = d.nom;
    v[Metric::Nol] = d.nol;
    v[Metric::Nopm] = d.nopm;
    v[Metric::Nosm] = d.nosm;
    v[Metric::Noir] = count_inheritance_relations(model, cfg.inheritance);
    v[Metric::Noaa] = count_attribute_accesses(model, cfg.scope);
    v[Metric::Nomi] = count_method_invocations(model, cfg.scope, cfg.new_as_invocation);
    v[Metric::Noid] = v.identifier_sum();
    v
}
