//! Per-release code model: source scanning, comment-aware line counting,
//! parsing of Java-syntax declarations, and linking into a resolved model of
//! identifiers and code dependencies.

mod lexer;
mod link;
mod loc;
mod parser;
mod scan;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::NaiveDate;
use serde::Serialize;

pub use lexer::{lex, LexError, LitKind, Tok, Token};
pub use link::link_variant;
pub use loc::count_loc;
pub use parser::{parse_unit, parse_unit_lenient, ParseFailure};
pub use scan::{scan_variant, ScanOutcome, DEFAULT_INCLUDE};

/// Package name recorded for files without a package declaration.
pub const DEFAULT_PACKAGE: &str = "(default)";

/// One source file of a release.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    /// Path relative to the release root, `/`-separated.
    pub path: String,
    pub text: String,
    pub package_name: String,
}

impl SourceFile {
    /// Builds a source file, reading the package declaration from `text`.
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let package_name = parser::declared_package(&text).unwrap_or_else(|| DEFAULT_PACKAGE.to_string());
        SourceFile {
            path: path.into(),
            text,
            package_name,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
    Record,
    Annotation,
}

impl TypeKind {
    /// Kinds counted as classes.
    pub fn is_class_like(self) -> bool {
        matches!(self, TypeKind::Class | TypeKind::Enum | TypeKind::Record)
    }

    /// Kinds counted as interfaces.
    pub fn is_interface_like(self) -> bool {
        matches!(self, TypeKind::Interface | TypeKind::Annotation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Modifier {
    Public,
    Protected,
    Private,
    Static,
    Abstract,
    Final,
    Native,
    Synchronized,
    Transient,
    Volatile,
    Strictfp,
    Default,
    Sealed,
    NonSealed,
}

impl Modifier {
    pub fn from_keyword(word: &str) -> Option<Modifier> {
        Some(match word {
            "public" => Modifier::Public,
            "protected" => Modifier::Protected,
            "private" => Modifier::Private,
            "static" => Modifier::Static,
            "abstract" => Modifier::Abstract,
            "final" => Modifier::Final,
            "native" => Modifier::Native,
            "synchronized" => Modifier::Synchronized,
            "transient" => Modifier::Transient,
            "volatile" => Modifier::Volatile,
            "strictfp" => Modifier::Strictfp,
            "default" => Modifier::Default,
            "sealed" => Modifier::Sealed,
            "non-sealed" => Modifier::NonSealed,
            _ => return None,
        })
    }
}

pub type Modifiers = BTreeSet<Modifier>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Extends,
    Implements,
}

/// A declared supertype, with type arguments erased.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperType {
    pub name: String,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompilationUnit {
    pub file: SourceFile,
    pub types: Vec<TypeDecl>,
    /// Imported names; on-demand imports keep their trailing `.*`.
    pub imports: Vec<String>,
    /// Static imports, kept apart from type imports.
    pub static_imports: Vec<String>,
}

impl CompilationUnit {
    /// A unit that contributes nothing beyond its line count.
    pub fn empty(file: SourceFile) -> Self {
        CompilationUnit {
            file,
            types: Vec::new(),
            imports: Vec::new(),
            static_imports: Vec::new(),
        }
    }

    /// Depth-first walk over every named type, outer types first.
    pub fn all_types(&self) -> Vec<&TypeDecl> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a TypeDecl, out: &mut Vec<&'a TypeDecl>) {
            out.push(t);
            for n in &t.nested {
                walk(n, out);
            }
        }
        for t in &self.types {
            walk(t, &mut out);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub simple_name: String,
    pub qualified_name: String,
    pub kind: TypeKind,
    pub modifiers: Modifiers,
    /// Extends clauses first, then implements.
    pub supertypes: Vec<SuperType>,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    /// Member types and named local types.
    pub nested: Vec<TypeDecl>,
    /// Number of anonymous class bodies whose code lives in this type's members.
    pub anonymous_bodies: usize,
    /// Code in field initializers, initializer blocks and enum constant bodies.
    pub initializer: BodyStats,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: String,
    pub owner: String,
    pub modifiers: Modifiers,
    /// Declared type as written, type arguments erased. `None` for enum constants'
    /// implicit type, which is the owner.
    pub type_name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDecl {
    pub name: String,
    pub owner: String,
    pub is_constructor: bool,
    pub modifiers: Modifiers,
    pub param_count: usize,
    pub return_type: Option<String>,
    /// Absent for abstract, native and bodiless interface methods.
    pub body: Option<BodyStats>,
}

impl MethodDecl {
    pub fn is_public(&self) -> bool {
        self.modifiers.contains(&Modifier::Public)
    }

    pub fn is_static(&self) -> bool {
        self.modifiers.contains(&Modifier::Static)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BodyStats {
    pub local_var_decls: usize,
    pub field_access_sites: Vec<AccessSite>,
    pub invocation_sites: Vec<InvocationSite>,
    /// `new`, `this(..)` and `super(..)` calls; kept apart from method invocations.
    pub constructor_sites: Vec<ConstructorSite>,
}

impl BodyStats {
    pub fn is_empty(&self) -> bool {
        self.local_var_decls == 0
            && self.field_access_sites.is_empty()
            && self.invocation_sites.is_empty()
            && self.constructor_sites.is_empty()
    }
}

/// Syntactic shape of the expression a member is selected from, as seen by
/// the parser. Indices point into the same body's site lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Receiver {
    /// Bare name, no qualifier.
    None,
    This,
    Super,
    /// Result of an earlier access site (field chains and dotted names).
    Access(usize),
    /// Result of an earlier invocation site.
    Call(usize),
    /// A local variable or parameter, with its declared type when known.
    Local(Option<String>),
    /// Any other expression, with a static type when the syntax reveals it.
    Expr(Option<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AccessForm {
    Qualified,
    ThisQualified,
    SimpleName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReceiverForm {
    None,
    This,
    Expression,
    Type,
}

/// Target of a resolved member reference.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Owner {
    /// A type declared in the release.
    Internal(String),
    /// A type outside the release, named as written or via an import.
    External(String),
    #[default]
    Unresolved,
}

impl Owner {
    pub fn is_resolved(&self) -> bool {
        !matches!(self, Owner::Unresolved)
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Owner::Internal(n) | Owner::External(n) => Some(n),
            Owner::Unresolved => None,
        }
    }

    /// Whether a reference from `enclosing` to this owner crosses a class boundary.
    pub fn crosses(&self, enclosing: &str) -> bool {
        match self {
            Owner::Internal(n) => n != enclosing,
            Owner::External(_) => true,
            Owner::Unresolved => false,
        }
    }
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Owner::Internal(n) | Owner::External(n) => f.write_str(n),
            Owner::Unresolved => f.write_str("?"),
        }
    }
}

/// How the linker classified a name occurrence in access position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NameRole {
    /// Not yet linked.
    #[default]
    Pending,
    Field,
    /// The name denotes a type (`Math` in `Math.PI`).
    TypeName,
    /// The name is a package segment (`java` in `java.util.List`).
    PackageName,
    /// A bare name that resolves to nothing in the release.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessSite {
    pub accessed_name: String,
    pub syntactic_form: AccessForm,
    pub receiver: Receiver,
    pub resolved_owner: Owner,
    pub cross_class: bool,
    pub role: NameRole,
    pub line: usize,
}

impl AccessSite {
    pub(crate) fn new(name: &str, form: AccessForm, receiver: Receiver, line: usize) -> Self {
        AccessSite {
            accessed_name: name.to_string(),
            syntactic_form: form,
            receiver,
            resolved_owner: Owner::Unresolved,
            cross_class: false,
            role: NameRole::Pending,
            line,
        }
    }

    /// Whether this occurrence counts as an attribute access once linked.
    ///
    /// Qualified selections always count. Bare names count only when they
    /// resolve to a field of the enclosing class or of a supertype declared
    /// in the release.
    pub fn is_counted(&self) -> bool {
        match self.syntactic_form {
            AccessForm::SimpleName => self.role == NameRole::Field && matches!(self.resolved_owner, Owner::Internal(_)),
            _ => self.role == NameRole::Field,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvocationSite {
    pub invoked_name: String,
    pub receiver_form: ReceiverForm,
    pub receiver: Receiver,
    pub resolved_owner: Owner,
    pub cross_class: bool,
    pub line: usize,
}

impl InvocationSite {
    pub(crate) fn new(name: &str, receiver: Receiver, line: usize) -> Self {
        let receiver_form = match receiver {
            Receiver::None => ReceiverForm::None,
            Receiver::This | Receiver::Super => ReceiverForm::This,
            _ => ReceiverForm::Expression,
        };
        InvocationSite {
            invoked_name: name.to_string(),
            receiver_form,
            receiver,
            resolved_owner: Owner::Unresolved,
            cross_class: false,
            line,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructorCallKind {
    New,
    This,
    Super,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructorSite {
    pub kind: ConstructorCallKind,
    /// Instantiated type as written; empty for `this(..)`/`super(..)`.
    pub type_name: String,
    pub resolved_owner: Owner,
    pub cross_class: bool,
    pub line: usize,
}

/// A problem found while reading a release. Always names a file.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    SkippedFile,
    ParseError,
    DuplicateType,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "{}:{}:{}: {}", self.path, self.line, self.column, self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

/// Location of a named type inside a model: unit index plus the nesting path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeLoc {
    pub unit: usize,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InheritanceEdge {
    pub subtype: String,
    /// Declared supertype name, qualified when it resolves inside the release.
    pub supertype: String,
    pub kind: EdgeKind,
    pub internal: bool,
}

/// A linked release: symbol tables, inheritance edges and resolved sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantModel {
    pub release_name: String,
    pub release_date: NaiveDate,
    /// Units in path order.
    pub units: Vec<CompilationUnit>,
    pub packages: BTreeSet<String>,
    pub type_index: BTreeMap<String, TypeLoc>,
    pub inheritance_edges: Vec<InheritanceEdge>,
    pub diagnostics: Vec<Diagnostic>,
}

impl VariantModel {
    pub fn type_decl(&self, qualified_name: &str) -> Option<&TypeDecl> {
        let loc = self.type_index.get(qualified_name)?;
        locate(&self.units[loc.unit], &loc.path)
    }

    /// Every named type in unit order, outer types before their members.
    pub fn all_types(&self) -> impl Iterator<Item = &TypeDecl> {
        self.units.iter().flat_map(|u| u.all_types())
    }
}

pub(crate) fn locate<'a>(unit: &'a CompilationUnit, path: &[usize]) -> Option<&'a TypeDecl> {
    let (first, rest) = path.split_first()?;
    let mut cur = unit.types.get(*first)?;
    for &i in rest {
        cur = cur.nested.get(i)?;
    }
    Some(cur)
}
