//! Links parsed units into a [`VariantModel`]: builds the type index and the
//! inheritance edges, then resolves every access and invocation site.
//!
//! Member lookup order: explicit receiver type, then the enclosing class's
//! members including those inherited from supertypes declared in the
//! release, then lexically enclosing classes. Type names resolve through
//! enclosing and member types, the unit's own types, single-type imports,
//! the same package, then on-demand imports.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use chrono::NaiveDate;

use super::{
    locate, AccessSite, BodyStats, CompilationUnit, ConstructorCallKind, Diagnostic, DiagnosticKind, EdgeKind,
    FieldDecl, InheritanceEdge, InvocationSite, MethodDecl, NameRole, Owner, Receiver, ReceiverForm, TypeDecl, TypeLoc,
    VariantModel,
};

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

/// Well-known top-level package names, used when a bare lowercase name heads
/// a dotted expression and nothing in the release declares it.
const ROOT_PACKAGES: &[&str] = &["java", "javax", "jdk", "sun", "com", "org", "net"];

/// Links the units of one release. Units are ordered by path first, so the
/// result does not depend on the order they were parsed in.
pub fn link_variant(mut units: Vec<CompilationUnit>, name: &str, date: NaiveDate) -> VariantModel {
    units.sort_by(|a, b| a.file.path.cmp(&b.file.path));

    let packages: BTreeSet<String> = units.iter().map(|u| u.file.package_name.clone()).collect();

    let mut diagnostics = Vec::new();
    let mut type_index: BTreeMap<String, TypeLoc> = BTreeMap::new();
    for (ui, unit) in units.iter().enumerate() {
        let mut stack: Vec<(Vec<usize>, &TypeDecl)> =
            unit.types.iter().enumerate().rev().map(|(i, t)| (vec![i], t)).collect();
        while let Some((path, t)) = stack.pop() {
            if let Some(prev) = type_index.get(&t.qualified_name) {
                let prev_path = &units[prev.unit].file.path;
                diagnostics.push(Diagnostic {
                    path: unit.file.path.clone(),
                    line: t.line,
                    column: 1,
                    kind: DiagnosticKind::DuplicateType,
                    message: format!(
                        "duplicate type {} (also declared in {prev_path}); this declaration shadows it",
                        t.qualified_name
                    ),
                });
            }
            for (i, n) in t.nested.iter().enumerate().rev() {
                let mut p = path.clone();
                p.push(i);
                stack.push((p, n));
            }
            type_index.insert(t.qualified_name.clone(), TypeLoc { unit: ui, path });
        }
    }

    let index = Index::new(&units, &type_index, &packages);

    let mut inheritance_edges = Vec::new();
    for unit in &units {
        for t in unit.all_types() {
            let ctx = Ctx {
                unit,
                enclosing: &t.qualified_name,
            };
            for s in &t.supertypes {
                let (supertype, internal) = match index.resolve_type(&s.name, &ctx) {
                    TypeRef::Internal(q) => (q, true),
                    TypeRef::External(n) => (n, false),
                    _ => (s.name.clone(), false),
                };
                inheritance_edges.push(InheritanceEdge {
                    subtype: t.qualified_name.clone(),
                    supertype,
                    kind: s.kind,
                    internal,
                });
            }
        }
    }

    let resolutions: Vec<Vec<BodyResolution>> = units
        .iter()
        .map(|unit| {
            let mut out = Vec::new();
            for t in unit.all_types() {
                let ctx = Ctx {
                    unit,
                    enclosing: &t.qualified_name,
                };
                out.push(BodyResolver::new(&index, &ctx, &t.initializer).run());
                for m in &t.methods {
                    if let Some(b) = &m.body {
                        out.push(BodyResolver::new(&index, &ctx, b).run());
                    }
                }
            }
            out
        })
        .collect();
    drop(index);

    for (unit, res) in units.iter_mut().zip(resolutions) {
        let mut res = res.into_iter();
        fn apply(t: &mut TypeDecl, res: &mut impl Iterator<Item = BodyResolution>) {
            res.next()
                .expect("resolution per initializer")
                .apply(&mut t.initializer);
            for m in &mut t.methods {
                if let Some(b) = &mut m.body {
                    res.next().expect("resolution per body").apply(b);
                }
            }
            for n in &mut t.nested {
                apply(n, res);
            }
        }
        for t in &mut unit.types {
            apply(t, &mut res);
        }
    }

    VariantModel {
        release_name: name.to_string(),
        release_date: date,
        units,
        packages,
        type_index,
        inheritance_edges,
        diagnostics,
    }
}

/// Static type of a name or expression, as far as the release can tell.
#[derive(Debug, Clone, PartialEq, Eq)]
enum TypeRef {
    Internal(String),
    External(String),
    Primitive,
    Array,
    Unknown,
}

impl TypeRef {
    fn owner(&self) -> Owner {
        match self {
            TypeRef::Internal(q) => Owner::Internal(q.clone()),
            TypeRef::External(n) => Owner::External(n.clone()),
            _ => Owner::Unresolved,
        }
    }
}

/// What a resolved site denotes when used as a receiver.
#[derive(Debug, Clone)]
enum Value {
    /// The name denotes a type (static member access follows).
    Type(TypeRef),
    Package(String),
    /// An expression of the given static type.
    Object(TypeRef),
}

struct Ctx<'a> {
    unit: &'a CompilationUnit,
    enclosing: &'a str,
}

struct Index<'a> {
    units: &'a [CompilationUnit],
    types: &'a BTreeMap<String, TypeLoc>,
    packages: &'a BTreeSet<String>,
    /// Internal supertypes per type, in declaration order.
    supers: HashMap<&'a str, Vec<String>>,
    /// External supertypes per type.
    external_supers: HashMap<&'a str, Vec<String>>,
}

impl<'a> Index<'a> {
    fn new(units: &'a [CompilationUnit], types: &'a BTreeMap<String, TypeLoc>, packages: &'a BTreeSet<String>) -> Self {
        let mut index = Index {
            units,
            types,
            packages,
            supers: HashMap::new(),
            external_supers: HashMap::new(),
        };
        let mut supers = HashMap::new();
        let mut external_supers = HashMap::new();
        for (q, loc) in types {
            let unit = &units[loc.unit];
            let t = locate(unit, &loc.path).expect("indexed type exists");
            let ctx = Ctx { unit, enclosing: q };
            let mut internal = Vec::new();
            let mut external = Vec::new();
            for s in &t.supertypes {
                match index.resolve_type(&s.name, &ctx) {
                    TypeRef::Internal(sq) => internal.push(sq),
                    TypeRef::External(n) => external.push(n),
                    _ => {}
                }
            }
            supers.insert(q.as_str(), internal);
            external_supers.insert(q.as_str(), external);
        }
        index.supers = supers;
        index.external_supers = external_supers;
        index
    }

    fn decl(&self, q: &str) -> Option<&'a TypeDecl> {
        let loc = self.types.get(q)?;
        locate(&self.units[loc.unit], &loc.path)
    }

    fn ctx_of(&self, q: &'a str) -> Option<Ctx<'a>> {
        let loc = self.types.get(q)?;
        Some(Ctx {
            unit: &self.units[loc.unit],
            enclosing: q,
        })
    }

    /// The type itself followed by its lexically enclosing types.
    fn enclosing_chain(&self, q: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = q.to_string();
        loop {
            if self.types.contains_key(&cur) {
                out.push(cur.clone());
            }
            match cur.rfind('.') {
                Some(i) => cur.truncate(i),
                None => break,
            }
        }
        out
    }

    /// The type and its internal supertypes, breadth first.
    fn hierarchy(&self, q: &str) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([q.to_string()]);
        let mut out = Vec::new();
        while let Some(t) = queue.pop_front() {
            if !seen.insert(t.clone()) {
                continue;
            }
            if let Some(s) = self.supers.get(t.as_str()) {
                queue.extend(s.iter().cloned());
            }
            out.push(t);
        }
        out
    }

    fn find_field(&self, q: &str, name: &str) -> Option<(String, &'a FieldDecl)> {
        self.hierarchy(q).into_iter().find_map(|t| {
            let d = self.decl(&t)?;
            d.fields.iter().find(|f| f.name == name).map(|f| (t, f))
        })
    }

    fn find_method(&self, q: &str, name: &str) -> Option<(String, &'a MethodDecl)> {
        self.hierarchy(q).into_iter().find_map(|t| {
            let d = self.decl(&t)?;
            d.methods
                .iter()
                .find(|m| !m.is_constructor && m.name == name)
                .map(|m| (t, m))
        })
    }

    fn find_nested(&self, q: &str, name: &str) -> Option<String> {
        self.hierarchy(q).into_iter().find_map(|t| {
            let candidate = format!("{t}.{name}");
            self.types.contains_key(&candidate).then_some(candidate)
        })
    }

    /// First external supertype of the type or of any internal ancestor.
    fn external_super(&self, q: &str) -> Option<String> {
        self.hierarchy(q)
            .iter()
            .find_map(|t| self.external_supers.get(t.as_str()).and_then(|v| v.first().cloned()))
    }

    fn qualify_in_package(&self, pkg: &str, simple: &str) -> String {
        if pkg == super::DEFAULT_PACKAGE {
            simple.to_string()
        } else {
            format!("{pkg}.{simple}")
        }
    }

    /// Resolves a simple type name to a release-internal type, or to an
    /// external name given by a single-type import.
    fn resolve_simple(&self, name: &str, ctx: &Ctx<'_>) -> Option<TypeRef> {
        for outer in self.enclosing_chain(ctx.enclosing) {
            if outer.rsplit('.').next() == Some(name) {
                return Some(TypeRef::Internal(outer));
            }
            if let Some(n) = self.find_nested(&outer, name) {
                return Some(TypeRef::Internal(n));
            }
        }
        if let Some(t) = ctx.unit.types.iter().find(|t| t.simple_name == name) {
            return Some(TypeRef::Internal(t.qualified_name.clone()));
        }
        for imp in &ctx.unit.imports {
            if imp.rsplit('.').next() == Some(name) && !imp.ends_with(".*") {
                return Some(if self.types.contains_key(imp) {
                    TypeRef::Internal(imp.clone())
                } else {
                    TypeRef::External(imp.clone())
                });
            }
        }
        let same_package = self.qualify_in_package(&ctx.unit.file.package_name, name);
        if self.types.contains_key(&same_package) {
            return Some(TypeRef::Internal(same_package));
        }
        for imp in &ctx.unit.imports {
            if let Some(prefix) = imp.strip_suffix(".*") {
                let candidate = format!("{prefix}.{name}");
                if self.types.contains_key(&candidate) {
                    return Some(TypeRef::Internal(candidate));
                }
            }
        }
        None
    }

    /// Resolves a type as written in a type position.
    fn resolve_type(&self, name: &str, ctx: &Ctx<'_>) -> TypeRef {
        if name.ends_with("[]") {
            return TypeRef::Array;
        }
        if PRIMITIVES.contains(&name) {
            return TypeRef::Primitive;
        }
        if name == "var" || name.is_empty() {
            return TypeRef::Unknown;
        }
        match name.split_once('.') {
            None => self
                .resolve_simple(name, ctx)
                .unwrap_or_else(|| TypeRef::External(name.to_string())),
            Some((head, rest)) => {
                if self.types.contains_key(name) {
                    return TypeRef::Internal(name.to_string());
                }
                if let Some(TypeRef::Internal(mut q)) = self.resolve_simple(head, ctx) {
                    for seg in rest.split('.') {
                        match self.find_nested(&q, seg) {
                            Some(n) => q = n,
                            None => return TypeRef::External(name.to_string()),
                        }
                    }
                    return TypeRef::Internal(q);
                }
                TypeRef::External(name.to_string())
            }
        }
    }

    fn is_package_prefix(&self, p: &str) -> bool {
        if ROOT_PACKAGES.contains(&p) {
            return true;
        }
        self.packages
            .iter()
            .any(|k| k == p || (k.starts_with(p) && k.as_bytes().get(p.len()) == Some(&b'.')))
    }
}

fn starts_upper(name: &str) -> bool {
    name.chars().next().is_some_and(char::is_uppercase)
}

#[derive(Debug, Clone)]
struct SiteOutcome {
    owner: Owner,
    role: NameRole,
    cross_class: bool,
}

#[derive(Debug, Clone)]
struct CallOutcome {
    owner: Owner,
    form: ReceiverForm,
    cross_class: bool,
}

struct BodyResolution {
    accesses: Vec<SiteOutcome>,
    calls: Vec<CallOutcome>,
    ctors: Vec<(Owner, bool)>,
}

impl BodyResolution {
    fn apply(self, body: &mut BodyStats) {
        for (site, out) in body.field_access_sites.iter_mut().zip(self.accesses) {
            site.resolved_owner = out.owner;
            site.role = out.role;
            site.cross_class = out.cross_class;
        }
        for (site, out) in body.invocation_sites.iter_mut().zip(self.calls) {
            site.resolved_owner = out.owner;
            site.receiver_form = out.form;
            site.cross_class = out.cross_class;
        }
        for (site, (owner, cross)) in body.constructor_sites.iter_mut().zip(self.ctors) {
            site.resolved_owner = owner;
            site.cross_class = cross;
        }
    }
}

struct BodyResolver<'i, 'a> {
    index: &'i Index<'a>,
    ctx: &'i Ctx<'a>,
    accesses: &'a [AccessSite],
    calls: &'a [InvocationSite],
    body: &'a BodyStats,
    access_memo: Vec<Option<(SiteOutcome, Value)>>,
    call_memo: Vec<Option<(CallOutcome, Value)>>,
}

impl<'i, 'a> BodyResolver<'i, 'a> {
    fn new(index: &'i Index<'a>, ctx: &'i Ctx<'a>, body: &'a BodyStats) -> Self {
        BodyResolver {
            index,
            ctx,
            accesses: &body.field_access_sites,
            calls: &body.invocation_sites,
            body,
            access_memo: vec![None; body.field_access_sites.len()],
            call_memo: vec![None; body.invocation_sites.len()],
        }
    }

    fn run(mut self) -> BodyResolution {
        let accesses = (0..self.accesses.len()).map(|i| self.access(i).0).collect();
        let calls = (0..self.calls.len()).map(|i| self.call(i).0).collect();
        let enclosing = self.ctx.enclosing;
        let ctors = self
            .body
            .constructor_sites
            .iter()
            .map(|c| {
                let owner = match c.kind {
                    ConstructorCallKind::New => self.index.resolve_type(&c.type_name, self.ctx).owner(),
                    ConstructorCallKind::This => Owner::Internal(enclosing.to_string()),
                    ConstructorCallKind::Super => self.super_owner(),
                };
                let cross = owner.crosses(enclosing);
                (owner, cross)
            })
            .collect();
        BodyResolution { accesses, calls, ctors }
    }

    fn enclosing(&self) -> &'a str {
        self.ctx.enclosing
    }

    /// Owner of `super`: the extended class.
    fn super_owner(&self) -> Owner {
        let Some(d) = self.index.decl(self.enclosing()) else {
            return Owner::Unresolved;
        };
        match d.supertypes.iter().find(|s| s.kind == EdgeKind::Extends) {
            Some(s) => self.index.resolve_type(&s.name, self.ctx).owner(),
            None => Owner::External("Object".into()),
        }
    }

    fn type_of_field(&self, declaring: &str, f: &FieldDecl) -> TypeRef {
        match (&f.type_name, self.index.types.get_key_value(declaring)) {
            (Some(t), Some((q, _))) => {
                let ctx = self.index.ctx_of(q.as_str()).expect("indexed");
                self.index.resolve_type(t, &ctx)
            }
            _ => TypeRef::Unknown,
        }
    }

    fn type_of_return(&self, declaring: &str, m: &MethodDecl) -> TypeRef {
        match (&m.return_type, self.index.types.get_key_value(declaring)) {
            (Some(t), Some((q, _))) => {
                let ctx = self.index.ctx_of(q.as_str()).expect("indexed");
                self.index.resolve_type(t, &ctx)
            }
            _ => TypeRef::Unknown,
        }
    }

    fn receiver_value(&mut self, r: &Receiver) -> Value {
        match r {
            Receiver::None => Value::Object(TypeRef::Unknown),
            Receiver::This => Value::Object(TypeRef::Internal(self.enclosing().to_string())),
            Receiver::Super => match self.super_owner() {
                Owner::Internal(q) => Value::Object(TypeRef::Internal(q)),
                Owner::External(n) => Value::Object(TypeRef::External(n)),
                Owner::Unresolved => Value::Object(TypeRef::Unknown),
            },
            Receiver::Access(j) => self.access(*j).1,
            Receiver::Call(j) => self.call(*j).1,
            Receiver::Local(t) | Receiver::Expr(t) => match t {
                Some(t) => Value::Object(self.index.resolve_type(t, self.ctx)),
                None => Value::Object(TypeRef::Unknown),
            },
        }
    }

    fn field_outcome(&self, owner: Owner) -> SiteOutcome {
        let cross_class = owner.crosses(self.enclosing());
        SiteOutcome {
            owner,
            role: NameRole::Field,
            cross_class,
        }
    }

    fn not_a_field(role: NameRole) -> SiteOutcome {
        SiteOutcome {
            owner: Owner::Unresolved,
            role,
            cross_class: false,
        }
    }

    /// Member field `name` of an internal type `q`.
    fn member_field(&self, q: &str, name: &str) -> (SiteOutcome, Value) {
        match self.index.find_field(q, name) {
            Some((d, f)) => {
                let ty = self.type_of_field(&d, f);
                (self.field_outcome(Owner::Internal(d)), Value::Object(ty))
            }
            None => {
                let owner = match self.index.external_super(q) {
                    Some(ext) => Owner::External(ext),
                    None => Owner::Internal(q.to_string()),
                };
                (self.field_outcome(owner), Value::Object(TypeRef::Unknown))
            }
        }
    }

    fn access(&mut self, i: usize) -> (SiteOutcome, Value) {
        if let Some(done) = &self.access_memo[i] {
            return done.clone();
        }
        let site = &self.accesses[i];
        let name = site.accessed_name.as_str();
        let result = match &site.receiver {
            Receiver::None => self.bare_name(name),
            Receiver::This => self.member_field(self.enclosing(), name),
            Receiver::Super => match self.super_owner() {
                Owner::Internal(q) => self.member_field(&q, name),
                other => (self.field_outcome(other), Value::Object(TypeRef::Unknown)),
            },
            r => {
                let r = r.clone();
                match self.receiver_value(&r) {
                    Value::Package(p) => self.package_member(&p, name),
                    Value::Type(TypeRef::Internal(q)) => match self.index.find_nested(&q, name) {
                        Some(n) => (Self::not_a_field(NameRole::TypeName), Value::Type(TypeRef::Internal(n))),
                        None => self.member_field(&q, name),
                    },
                    Value::Type(TypeRef::External(n)) | Value::Object(TypeRef::External(n)) => {
                        (self.field_outcome(Owner::External(n)), Value::Object(TypeRef::Unknown))
                    }
                    Value::Object(TypeRef::Internal(q)) => self.member_field(&q, name),
                    Value::Type(_) | Value::Object(_) => {
                        (self.field_outcome(Owner::Unresolved), Value::Object(TypeRef::Unknown))
                    }
                }
            }
        };
        self.access_memo[i] = Some(result.clone());
        result
    }

    /// A bare name that is not a local variable: a field of the enclosing
    /// classes, a type, a package, or unknown.
    fn bare_name(&self, name: &str) -> (SiteOutcome, Value) {
        for outer in self.index.enclosing_chain(self.enclosing()) {
            if let Some((d, f)) = self.index.find_field(&outer, name) {
                let ty = self.type_of_field(&d, f);
                return (self.field_outcome(Owner::Internal(d)), Value::Object(ty));
            }
        }
        if let Some(t) = self.index.resolve_simple(name, self.ctx) {
            return (Self::not_a_field(NameRole::TypeName), Value::Type(t));
        }
        if starts_upper(name) {
            return (
                Self::not_a_field(NameRole::TypeName),
                Value::Type(TypeRef::External(name.to_string())),
            );
        }
        if self.index.is_package_prefix(name) {
            return (
                Self::not_a_field(NameRole::PackageName),
                Value::Package(name.to_string()),
            );
        }
        (Self::not_a_field(NameRole::Unknown), Value::Object(TypeRef::Unknown))
    }

    fn package_member(&self, pkg: &str, name: &str) -> (SiteOutcome, Value) {
        let q = format!("{pkg}.{name}");
        if self.index.types.contains_key(&q) {
            return (Self::not_a_field(NameRole::TypeName), Value::Type(TypeRef::Internal(q)));
        }
        if starts_upper(name) {
            return (Self::not_a_field(NameRole::TypeName), Value::Type(TypeRef::External(q)));
        }
        (Self::not_a_field(NameRole::PackageName), Value::Package(q))
    }

    fn call_outcome(&self, owner: Owner, form: ReceiverForm) -> CallOutcome {
        let cross_class = owner.crosses(self.enclosing());
        CallOutcome {
            owner,
            form,
            cross_class,
        }
    }

    fn member_method(&self, q: &str, name: &str, form: ReceiverForm) -> (CallOutcome, Value) {
        match self.index.find_method(q, name) {
            Some((d, m)) => {
                let ty = self.type_of_return(&d, m);
                (self.call_outcome(Owner::Internal(d), form), Value::Object(ty))
            }
            None => {
                let owner = match self.index.external_super(q) {
                    Some(ext) => Owner::External(ext),
                    None => Owner::Internal(q.to_string()),
                };
                (self.call_outcome(owner, form), Value::Object(TypeRef::Unknown))
            }
        }
    }

    fn call(&mut self, i: usize) -> (CallOutcome, Value) {
        if let Some(done) = &self.call_memo[i] {
            return done.clone();
        }
        let site = &self.calls[i];
        let name = site.invoked_name.as_str();
        let result = match &site.receiver {
            Receiver::None => self.unqualified_call(name),
            Receiver::This => self.member_method(self.enclosing(), name, ReceiverForm::This),
            Receiver::Super => match self.super_owner() {
                Owner::Internal(q) => self.member_method(&q, name, ReceiverForm::This),
                other => (
                    self.call_outcome(other, ReceiverForm::This),
                    Value::Object(TypeRef::Unknown),
                ),
            },
            r => {
                let r = r.clone();
                match self.receiver_value(&r) {
                    Value::Type(TypeRef::Internal(q)) => self.member_method(&q, name, ReceiverForm::Type),
                    Value::Type(TypeRef::External(n)) => (
                        self.call_outcome(Owner::External(n), ReceiverForm::Type),
                        Value::Object(TypeRef::Unknown),
                    ),
                    Value::Object(TypeRef::Internal(q)) => self.member_method(&q, name, ReceiverForm::Expression),
                    Value::Object(TypeRef::External(n)) => (
                        self.call_outcome(Owner::External(n), ReceiverForm::Expression),
                        Value::Object(TypeRef::Unknown),
                    ),
                    Value::Type(_) | Value::Object(_) | Value::Package(_) => (
                        self.call_outcome(Owner::Unresolved, ReceiverForm::Expression),
                        Value::Object(TypeRef::Unknown),
                    ),
                }
            }
        };
        self.call_memo[i] = Some(result.clone());
        result
    }

    fn unqualified_call(&self, name: &str) -> (CallOutcome, Value) {
        let chain = self.index.enclosing_chain(self.enclosing());
        for outer in &chain {
            if let Some((d, m)) = self.index.find_method(outer, name) {
                let ty = self.type_of_return(&d, m);
                return (
                    self.call_outcome(Owner::Internal(d), ReceiverForm::None),
                    Value::Object(ty),
                );
            }
        }
        for imp in &self.ctx.unit.static_imports {
            let target = match imp.strip_suffix(".*") {
                Some(t) => Some(t),
                None => imp
                    .rsplit_once('.')
                    .filter(|(_, member)| *member == name)
                    .map(|(t, _)| t),
            };
            if let Some(t) = target {
                if self.index.types.contains_key(t) {
                    if imp.ends_with(".*") && self.index.find_method(t, name).is_none() {
                        continue;
                    }
                    return self.member_method(t, name, ReceiverForm::None);
                }
                if !imp.ends_with(".*") {
                    return (
                        self.call_outcome(Owner::External(t.to_string()), ReceiverForm::None),
                        Value::Object(TypeRef::Unknown),
                    );
                }
            }
        }
        let inherited = chain.iter().find_map(|q| self.index.external_super(q));
        let owner = inherited.map(Owner::External).unwrap_or(Owner::Unresolved);
        (
            self.call_outcome(owner, ReceiverForm::None),
            Value::Object(TypeRef::Unknown),
        )
    }
}
