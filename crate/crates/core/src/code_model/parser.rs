//! Recursive-descent parser for Java-syntax compilation units.
//!
//! The parser keeps declarations and discards statement structure: method
//! bodies are reduced to [`BodyStats`] (local variable declarators, field
//! access occurrences, invocation occurrences, constructor calls). Name
//! resolution is left to the linker, except for the lexical question of
//! whether a bare name is a local variable, which only the parser can answer.

use std::collections::HashMap;

use super::lexer::{lex, Lexer, LitKind, Tok, Token};
use super::{
    AccessForm, AccessSite, BodyStats, CompilationUnit, ConstructorCallKind, ConstructorSite, Diagnostic,
    DiagnosticKind, EdgeKind, FieldDecl, InvocationSite, MethodDecl, Modifier, Modifiers, Receiver, SourceFile,
    SuperType, TypeDecl, TypeKind,
};

/// A file that could not be parsed, handed back with its diagnostic.
#[derive(Debug, Clone)]
pub struct ParseFailure {
    pub file: SourceFile,
    pub diagnostic: Diagnostic,
}

/// Parses one file into its declaration tree.
pub fn parse_unit(file: SourceFile) -> Result<CompilationUnit, Box<ParseFailure>> {
    let result = match lex(&file.text) {
        Ok(toks) => {
            let mut p = Parser::new(toks);
            p.compilation_unit()
        }
        Err(e) => Err(PError {
            line: e.line,
            column: e.column,
            message: e.message,
        }),
    };
    match result {
        Ok(parsed) => Ok(CompilationUnit {
            file,
            types: parsed.types,
            imports: parsed.imports,
            static_imports: parsed.static_imports,
        }),
        Err(e) => {
            let diagnostic = Diagnostic {
                path: file.path.clone(),
                line: e.line,
                column: e.column,
                kind: DiagnosticKind::ParseError,
                message: e.message,
            };
            Err(Box::new(ParseFailure { file, diagnostic }))
        }
    }
}

/// Parses one file; an unparseable file yields an empty unit plus its diagnostic.
pub fn parse_unit_lenient(file: SourceFile) -> (CompilationUnit, Option<Diagnostic>) {
    match parse_unit(file) {
        Ok(unit) => (unit, None),
        Err(failure) => {
            let ParseFailure { file, diagnostic } = *failure;
            (CompilationUnit::empty(file), Some(diagnostic))
        }
    }
}

/// Reads the `package` declaration, tolerating errors later in the file.
pub(crate) fn declared_package(text: &str) -> Option<String> {
    let mut lexer = Lexer::new(text);
    let mut depth = 0usize;
    // Skip leading annotations (package-info files).
    loop {
        let tok = lexer.next_token().ok()?;
        match tok.kind {
            Tok::Eof => return None,
            Tok::Keyword if tok.text == "package" && depth == 0 => break,
            Tok::Punct if tok.text == "(" => depth += 1,
            Tok::Punct if tok.text == ")" => depth = depth.saturating_sub(1),
            Tok::Punct if tok.text == "@" || tok.text == "." => {}
            Tok::Ident if depth == 0 => {}
            _ if depth > 0 => {}
            _ => return None,
        }
    }
    let mut name = String::new();
    loop {
        let tok = lexer.next_token().ok()?;
        match tok.kind {
            Tok::Ident | Tok::Keyword if tok.text != ";" => name.push_str(tok.text),
            Tok::Punct if tok.text == "." => name.push('.'),
            Tok::Punct if tok.text == ";" => break,
            _ => return None,
        }
    }
    if name.is_empty() {
        None
    } else {
        Some(name)
    }
}

struct PError {
    line: usize,
    column: usize,
    message: String,
}

type PResult<T> = Result<T, PError>;

struct ParsedUnit {
    types: Vec<TypeDecl>,
    imports: Vec<String>,
    static_imports: Vec<String>,
}

/// What an expression evaluated to, as far as receivers are concerned.
#[derive(Debug, Clone)]
enum Val {
    Other(Option<String>),
    Local(Option<String>),
    Access(usize),
    Call(usize),
    This,
    Super,
}

impl Val {
    fn receiver(self) -> Receiver {
        match self {
            Val::Other(t) => Receiver::Expr(t),
            Val::Local(t) => Receiver::Local(t),
            Val::Access(i) => Receiver::Access(i),
            Val::Call(i) => Receiver::Call(i),
            Val::This => Receiver::This,
            Val::Super => Receiver::Super,
        }
    }
}

/// Per named type being parsed.
struct TypeFrame {
    qualified_name: String,
    anonymous_bodies: usize,
    /// Named types declared inside method bodies of this type.
    local_types: Vec<TypeDecl>,
}

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
];

struct Parser<'a> {
    toks: Vec<Token<'a>>,
    pos: usize,
    package: Option<String>,
    /// Local variables and parameters in scope, with declared types.
    scopes: Vec<HashMap<&'a str, Option<String>>>,
    /// Type parameters in scope.
    type_params: Vec<Vec<&'a str>>,
    /// Code accumulators; the top one receives sites.
    bodies: Vec<BodyStats>,
    frames: Vec<TypeFrame>,
    /// Suppresses `x -> ...` lambda detection inside `case` labels.
    in_case_label: bool,
}

impl<'a> Parser<'a> {
    fn new(toks: Vec<Token<'a>>) -> Self {
        Parser {
            toks,
            pos: 0,
            package: None,
            scopes: Vec::new(),
            type_params: Vec::new(),
            bodies: Vec::new(),
            frames: Vec::new(),
            in_case_label: false,
        }
    }

    // ---------------------------------------------------------------------
    // Token helpers
    // ---------------------------------------------------------------------

    fn peek(&self) -> Token<'a> {
        self.toks[self.pos]
    }

    fn peek_n(&self, n: usize) -> Token<'a> {
        self.toks[(self.pos + n).min(self.toks.len() - 1)]
    }

    fn at(&self, text: &str) -> bool {
        self.peek().is(text)
    }

    fn at_n(&self, n: usize, text: &str) -> bool {
        self.peek_n(n).is(text)
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == Tok::Eof
    }

    fn advance(&mut self) -> Token<'a> {
        let t = self.peek();
        if t.kind != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.at(text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error_at(&self, tok: Token<'_>, message: impl Into<String>) -> PError {
        PError {
            line: tok.line,
            column: tok.column,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> PError {
        let t = self.peek();
        let found = if t.kind == Tok::Eof {
            "end of file".to_string()
        } else {
            format!("`{}`", t.text)
        };
        self.error_at(t, format!("expected {wanted}, found {found}"))
    }

    fn expect(&mut self, text: &str) -> PResult<Token<'a>> {
        if self.at(text) {
            Ok(self.advance())
        } else {
            Err(self.unexpected(&format!("`{text}`")))
        }
    }

    /// Identifier, also accepting `enum` where older code used it as a name.
    fn at_name_n(&self, n: usize) -> bool {
        let t = self.peek_n(n);
        t.is_ident() || (t.is("enum") && !self.peek_n(n + 1).is_ident())
    }

    fn at_name(&self) -> bool {
        self.at_name_n(0)
    }

    fn ident(&mut self) -> PResult<&'a str> {
        if self.at_name() {
            Ok(self.advance().text)
        } else {
            Err(self.unexpected("identifier"))
        }
    }

    fn adjacent(&self, n: usize) -> bool {
        self.peek_n(n).end == self.peek_n(n + 1).start
    }

    /// Skips a balanced `open ... close` group starting at the current token.
    fn skip_balanced(&mut self, open: &str, close: &str) -> PResult<()> {
        let start = self.expect(open)?;
        let mut depth = 1usize;
        while depth > 0 {
            let t = self.advance();
            if t.kind == Tok::Eof {
                return Err(self.error_at(start, format!("unclosed `{open}`")));
            }
            if t.is(open) {
                depth += 1;
            } else if t.is(close) {
                depth -= 1;
            }
        }
        Ok(())
    }

    // ---------------------------------------------------------------------
    // Scope and accumulator helpers
    // ---------------------------------------------------------------------

    fn is_local(&self, name: &str) -> Option<Option<String>> {
        self.scopes.iter().rev().find_map(|s| s.get(name).cloned())
    }

    fn declare(&mut self, name: &'a str, ty: Option<String>) {
        if let Some(scope) = self.scopes.last_mut() {
            scope.insert(name, ty);
        }
    }

    fn is_type_param(&self, name: &str) -> bool {
        self.type_params.iter().any(|s| s.contains(&name))
    }

    /// Declared type as recorded in the model; type variables become unknown.
    fn declared_type(&self, ty: String) -> Option<String> {
        let base = ty.trim_end_matches("[]");
        if self.is_type_param(base) || base == "var" {
            None
        } else {
            Some(ty)
        }
    }

    fn body(&mut self) -> Option<&mut BodyStats> {
        self.bodies.last_mut()
    }

    fn push_access(&mut self, name: &str, form: AccessForm, receiver: Receiver, line: usize) -> Val {
        match self.bodies.last_mut() {
            Some(b) => {
                b.field_access_sites.push(AccessSite::new(name, form, receiver, line));
                Val::Access(b.field_access_sites.len() - 1)
            }
            None => Val::Other(None),
        }
    }

    fn push_call(&mut self, name: &str, receiver: Receiver, line: usize) -> Val {
        match self.bodies.last_mut() {
            Some(b) => {
                b.invocation_sites.push(InvocationSite::new(name, receiver, line));
                Val::Call(b.invocation_sites.len() - 1)
            }
            None => Val::Other(None),
        }
    }

    fn push_ctor(&mut self, kind: ConstructorCallKind, type_name: String, line: usize) {
        if let Some(b) = self.body() {
            b.constructor_sites.push(ConstructorSite {
                kind,
                type_name,
                resolved_owner: Default::default(),
                cross_class: false,
                line,
            });
        }
    }

    // ---------------------------------------------------------------------
    // Compilation unit and declarations
    // ---------------------------------------------------------------------

    fn compilation_unit(&mut self) -> PResult<ParsedUnit> {
        let save = self.pos;
        self.skip_annotations()?;
        if self.eat("package") {
            let mut name = self.ident()?.to_string();
            while self.eat(".") {
                name.push('.');
                name.push_str(self.ident()?);
            }
            self.expect(";")?;
            self.package = Some(name);
        } else {
            self.pos = save;
        }

        let mut imports = Vec::new();
        let mut static_imports = Vec::new();
        loop {
            if self.eat(";") {
                continue;
            }
            if !self.eat("import") {
                break;
            }
            let is_static = self.eat("static");
            let mut name = self.ident()?.to_string();
            while self.eat(".") {
                if self.eat("*") {
                    name.push_str(".*");
                    break;
                }
                name.push('.');
                name.push_str(self.ident()?);
            }
            self.expect(";")?;
            if is_static {
                static_imports.push(name);
            } else {
                imports.push(name);
            }
        }

        let mut types = Vec::new();
        while !self.at_eof() {
            if self.eat(";") {
                continue;
            }
            // module-info.java declares no types.
            let t = self.peek();
            if t.is_ident() && (t.text == "module" || (t.text == "open" && self.peek_n(1).text == "module")) {
                break;
            }
            let mods = self.modifiers()?;
            if !self.at_type_decl_start() {
                return Err(self.unexpected("type declaration"));
            }
            types.push(self.type_decl(mods)?);
        }
        Ok(ParsedUnit {
            types,
            imports,
            static_imports,
        })
    }

    fn skip_annotations(&mut self) -> PResult<()> {
        while self.at("@") && !self.at_n(1, "interface") {
            self.annotation()?;
        }
        Ok(())
    }

    fn annotation(&mut self) -> PResult<()> {
        self.expect("@")?;
        self.ident()?;
        while self.at(".") && self.at_name_n(1) {
            self.advance();
            self.advance();
        }
        if self.at("(") {
            self.skip_balanced("(", ")")?;
        }
        Ok(())
    }

    fn modifiers(&mut self) -> PResult<Modifiers> {
        let mut mods = Modifiers::new();
        loop {
            let t = self.peek();
            if t.is("@") && !self.at_n(1, "interface") {
                self.annotation()?;
                continue;
            }
            let contextual = t.is_ident() && (t.text == "sealed" || t.text == "non-sealed");
            if contextual
                && !(self.peek_n(1).kind == Tok::Keyword || self.peek_n(1).is_ident() && self.peek_n(2).is_ident())
            {
                break;
            }
            if t.kind == Tok::Keyword || contextual {
                if let Some(m) = Modifier::from_keyword(t.text) {
                    // `default:` in a switch is not a modifier, but modifiers are
                    // only read in declaration contexts.
                    mods.insert(m);
                    self.advance();
                    continue;
                }
            }
            break;
        }
        Ok(mods)
    }

    fn at_record_decl(&self, n: usize) -> bool {
        let t = self.peek_n(n);
        t.is_ident()
            && t.text == "record"
            && self.peek_n(n + 1).is_ident()
            && (self.at_n(n + 2, "(") || self.at_n(n + 2, "<"))
    }

    fn at_type_decl_start(&self) -> bool {
        self.at("class")
            || self.at("interface")
            || (self.at("enum") && self.peek_n(1).is_ident())
            || (self.at("@") && self.at_n(1, "interface"))
            || self.at_record_decl(0)
    }

    fn qualify(&self, simple: &str) -> String {
        match self.frames.last() {
            Some(f) => format!("{}.{}", f.qualified_name, simple),
            None => match &self.package {
                Some(p) => format!("{p}.{simple}"),
                None => simple.to_string(),
            },
        }
    }

    fn type_decl(&mut self, modifiers: Modifiers) -> PResult<TypeDecl> {
        let line = self.peek().line;
        let kind = if self.eat("class") {
            TypeKind::Class
        } else if self.eat("interface") {
            TypeKind::Interface
        } else if self.eat("enum") {
            TypeKind::Enum
        } else if self.at("@") {
            self.advance();
            self.expect("interface")?;
            TypeKind::Annotation
        } else if self.at_record_decl(0) {
            self.advance();
            TypeKind::Record
        } else {
            return Err(self.unexpected("type declaration"));
        };
        let simple_name = self.ident()?.to_string();
        let qualified_name = self.qualify(&simple_name);

        let mut params = Vec::new();
        if self.at("<") {
            params = self.type_parameters()?;
        }
        self.type_params.push(params);

        let mut decl = TypeDecl {
            simple_name,
            qualified_name: qualified_name.clone(),
            kind,
            modifiers,
            supertypes: Vec::new(),
            fields: Vec::new(),
            methods: Vec::new(),
            nested: Vec::new(),
            anonymous_bodies: 0,
            initializer: BodyStats::default(),
            line,
        };

        let mut record_components = Vec::new();
        if kind == TypeKind::Record {
            record_components = self.formal_parameters()?;
        }

        loop {
            if self.eat("extends") {
                for name in self.type_list()? {
                    decl.supertypes.push(SuperType {
                        name,
                        kind: EdgeKind::Extends,
                    });
                }
            } else if self.eat("implements") {
                for name in self.type_list()? {
                    decl.supertypes.push(SuperType {
                        name,
                        kind: EdgeKind::Implements,
                    });
                }
            } else if self.peek().is_ident() && self.peek().text == "permits" {
                self.advance();
                self.type_list()?;
            } else {
                break;
            }
        }
        // Extends clauses first, then implements.
        decl.supertypes.sort_by_key(|s| s.kind);

        for (name, ty) in record_components {
            let type_name = self.declared_type(ty);
            decl.fields.push(FieldDecl {
                name: name.to_string(),
                owner: qualified_name.clone(),
                modifiers: [Modifier::Private, Modifier::Final].into_iter().collect(),
                type_name,
            });
        }

        self.frames.push(TypeFrame {
            qualified_name,
            anonymous_bodies: 0,
            local_types: Vec::new(),
        });
        let result = self.type_body(&mut decl);
        let frame = self.frames.pop().expect("frame pushed above");
        self.type_params.pop();
        result?;
        decl.anonymous_bodies += frame.anonymous_bodies;
        decl.nested.extend(frame.local_types);
        Ok(decl)
    }

    fn type_list(&mut self) -> PResult<Vec<String>> {
        let mut out = vec![self.parse_type()?];
        while self.eat(",") {
            out.push(self.parse_type()?);
        }
        Ok(out)
    }

    /// Reads `<T extends A & B, U>` and returns the parameter names.
    fn type_parameters(&mut self) -> PResult<Vec<&'a str>> {
        let start = self.expect("<")?;
        let mut names = Vec::new();
        let mut depth = 1usize;
        let mut expect_name = true;
        while depth > 0 {
            let t = self.advance();
            match t.kind {
                Tok::Eof => return Err(self.error_at(start, "unclosed type parameter list")),
                Tok::Ident if expect_name && depth == 1 => {
                    names.push(t.text);
                    expect_name = false;
                }
                _ if t.is("<") => depth += 1,
                _ if t.is(">") => depth -= 1,
                _ if t.is(",") && depth == 1 => expect_name = true,
                _ => {}
            }
        }
        Ok(names)
    }

    fn type_body(&mut self, decl: &mut TypeDecl) -> PResult<()> {
        self.expect("{")?;
        if decl.kind == TypeKind::Enum {
            self.enum_constants(decl)?;
        }
        while !self.eat("}") {
            if self.at_eof() {
                return Err(self.unexpected("`}`"));
            }
            self.member(decl)?;
        }
        Ok(())
    }

    fn enum_constants(&mut self, decl: &mut TypeDecl) -> PResult<()> {
        let enum_type = decl.simple_name.clone();
        self.bodies.push(std::mem::take(&mut decl.initializer));
        let result = (|| -> PResult<()> {
            loop {
                if self.at(";") || self.at("}") {
                    break;
                }
                self.skip_annotations()?;
                let name = self.ident()?;
                if self.at("(") {
                    self.arguments()?;
                }
                if self.at("{") {
                    self.frames.last_mut().expect("inside a type").anonymous_bodies += 1;
                    self.anonymous_body()?;
                }
                decl.fields.push(FieldDecl {
                    name: name.to_string(),
                    owner: decl.qualified_name.clone(),
                    modifiers: [Modifier::Public, Modifier::Static, Modifier::Final]
                        .into_iter()
                        .collect(),
                    type_name: Some(enum_type.clone()),
                });
                if !self.eat(",") {
                    break;
                }
            }
            self.eat(";");
            Ok(())
        })();
        decl.initializer = self.bodies.pop().expect("pushed above");
        result
    }

    fn member(&mut self, decl: &mut TypeDecl) -> PResult<()> {
        if self.eat(";") {
            return Ok(());
        }
        if self.at("{") || (self.at("static") && self.at_n(1, "{")) {
            self.eat("static");
            self.bodies.push(std::mem::take(&mut decl.initializer));
            self.scopes.push(HashMap::new());
            let result = self.block();
            self.scopes.pop();
            decl.initializer = self.bodies.pop().expect("pushed above");
            return result;
        }
        let modifiers = self.modifiers()?;
        if self.at_type_decl_start() {
            let nested = self.type_decl(modifiers)?;
            decl.nested.push(nested);
            return Ok(());
        }
        let mut method_params = Vec::new();
        if self.at("<") {
            method_params = self.type_parameters()?;
        }
        self.type_params.push(method_params);
        let result = self.member_rest(decl, modifiers);
        self.type_params.pop();
        result
    }

    fn member_rest(&mut self, decl: &mut TypeDecl, modifiers: Modifiers) -> PResult<()> {
        let t = self.peek();
        if t.is_ident() && t.text == decl.simple_name && self.at_n(1, "(") {
            self.advance();
            return self.method_rest(decl, modifiers, t.text, None, true);
        }
        if decl.kind == TypeKind::Record && t.is_ident() && t.text == decl.simple_name && self.at_n(1, "{") {
            // Compact canonical constructor.
            self.advance();
            let body = self.method_body(Vec::new())?;
            decl.methods.push(MethodDecl {
                name: t.text.to_string(),
                owner: decl.qualified_name.clone(),
                is_constructor: true,
                modifiers,
                param_count: 0,
                return_type: None,
                body: Some(body),
            });
            return Ok(());
        }
        let ty = self.parse_type()?;
        let name = self.ident()?;
        if self.at("(") {
            let return_type = self.declared_type(ty);
            return self.method_rest(decl, modifiers, name, return_type, false);
        }
        self.field_declarators(decl, modifiers, ty, name)
    }

    fn method_rest(
        &mut self,
        decl: &mut TypeDecl,
        mut modifiers: Modifiers,
        name: &str,
        return_type: Option<String>,
        is_constructor: bool,
    ) -> PResult<()> {
        let params = self.formal_parameters()?;
        self.dims()?;
        if self.eat("throws") {
            self.type_list()?;
        }
        if self.eat("default") {
            // Annotation element default value.
            self.skip_until_semicolon()?;
        }
        let body = if self.at("{") {
            Some(
                self.method_body(
                    params
                        .iter()
                        .map(|(n, t)| (*n, self.declared_type(t.clone())))
                        .collect(),
                )?,
            )
        } else {
            self.expect(";")?;
            None
        };
        if decl.kind.is_interface_like() && body.is_none() && !modifiers.contains(&Modifier::Static) {
            modifiers.insert(Modifier::Abstract);
        }
        decl.methods.push(MethodDecl {
            name: name.to_string(),
            owner: decl.qualified_name.clone(),
            is_constructor,
            modifiers,
            param_count: params.len(),
            return_type,
            body,
        });
        Ok(())
    }

    fn skip_until_semicolon(&mut self) -> PResult<()> {
        while !self.at(";") {
            if self.at_eof() {
                return Err(self.unexpected("`;`"));
            }
            if self.at("(") {
                self.skip_balanced("(", ")")?;
            } else if self.at("{") {
                self.skip_balanced("{", "}")?;
            } else {
                self.advance();
            }
        }
        Ok(())
    }

    fn method_body(&mut self, params: Vec<(&'a str, Option<String>)>) -> PResult<BodyStats> {
        self.bodies.push(BodyStats::default());
        self.scopes.push(params.into_iter().collect());
        let result = self.block();
        self.scopes.pop();
        let body = self.bodies.pop().expect("pushed above");
        result.map(|_| body)
    }

    fn field_declarators(
        &mut self,
        decl: &mut TypeDecl,
        modifiers: Modifiers,
        ty: String,
        first: &'a str,
    ) -> PResult<()> {
        let mut name = first;
        loop {
            let extra = self.dims()?;
            let type_name = self.declared_type(format!("{ty}{extra}"));
            if self.eat("=") {
                self.bodies.push(std::mem::take(&mut decl.initializer));
                self.scopes.push(HashMap::new());
                let result = self.variable_initializer();
                self.scopes.pop();
                decl.initializer = self.bodies.pop().expect("pushed above");
                result?;
            }
            decl.fields.push(FieldDecl {
                name: name.to_string(),
                owner: decl.qualified_name.clone(),
                modifiers: modifiers.clone(),
                type_name,
            });
            if !self.eat(",") {
                break;
            }
            name = self.ident()?;
        }
        self.expect(";")?;
        Ok(())
    }

    /// `(T a, final U... b)`; returns names with declared types.
    fn formal_parameters(&mut self) -> PResult<Vec<(&'a str, String)>> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            self.local_modifiers()?;
            let mut ty = self.parse_type()?;
            self.skip_annotations()?;
            if self.eat("...") {
                ty.push_str("[]");
            }
            // Receiver parameter: `Foo this` or `Outer.this`.
            if self.at("this") {
                self.advance();
            } else if self.at_name() && self.at_n(1, ".") && self.at_n(2, "this") {
                self.pos += 3;
            } else {
                let name = self.ident()?;
                let extra = self.dims()?;
                out.push((name, format!("{ty}{extra}")));
            }
            if !self.eat(",") {
                break;
            }
        }
        self.expect(")")?;
        Ok(out)
    }

    /// `final` and annotations in front of locals and parameters.
    fn local_modifiers(&mut self) -> PResult<()> {
        loop {
            if self.at("@") && !self.at_n(1, "interface") {
                self.annotation()?;
            } else if !self.eat("final") {
                return Ok(());
            }
        }
    }

    fn dims(&mut self) -> PResult<String> {
        let mut out = String::new();
        loop {
            let save = self.pos;
            self.skip_annotations()?;
            if self.at("[") && self.at_n(1, "]") {
                self.pos += 2;
                out.push_str("[]");
            } else {
                self.pos = save;
                return Ok(out);
            }
        }
    }

    // ---------------------------------------------------------------------
    // Types
    // ---------------------------------------------------------------------

    /// Parses a type and returns it with type arguments erased.
    fn parse_type(&mut self) -> PResult<String> {
        self.skip_annotations()?;
        let t = self.peek();
        let mut name = if t.kind == Tok::Keyword && PRIMITIVES.contains(&t.text) {
            self.advance();
            t.text.to_string()
        } else {
            let mut name = self.ident()?.to_string();
            if self.at("<") {
                self.type_arguments()?;
            }
            while self.at(".") && (self.at_name_n(1) || self.at_n(1, "@")) {
                self.advance();
                self.skip_annotations()?;
                name.push('.');
                name.push_str(self.ident()?);
                if self.at("<") {
                    self.type_arguments()?;
                }
            }
            name
        };
        name.push_str(&self.dims()?);
        Ok(name)
    }

    fn type_arguments(&mut self) -> PResult<()> {
        self.expect("<")?;
        if self.eat(">") {
            return Ok(());
        }
        loop {
            self.skip_annotations()?;
            if self.eat("?") {
                if self.eat("extends") || self.eat("super") {
                    self.parse_type()?;
                    while self.eat("&") {
                        self.parse_type()?;
                    }
                }
            } else {
                self.parse_type()?;
            }
            if !self.eat(",") {
                break;
            }
        }
        self.expect(">")?;
        Ok(())
    }

    /// Runs `f` without consuming input and reports whether it succeeded.
    fn lookahead(&mut self, f: impl FnOnce(&mut Self) -> PResult<bool>) -> bool {
        let save = self.pos;
        let ok = matches!(f(self), Ok(true));
        self.pos = save;
        ok
    }

    // ---------------------------------------------------------------------
    // Statements
    // ---------------------------------------------------------------------

    fn block(&mut self) -> PResult<()> {
        self.expect("{")?;
        self.scopes.push(HashMap::new());
        let result = (|| {
            while !self.eat("}") {
                if self.at_eof() {
                    return Err(self.unexpected("`}`"));
                }
                self.block_statement()?;
            }
            Ok(())
        })();
        self.scopes.pop();
        result
    }

    fn at_local_type_decl(&mut self) -> bool {
        self.lookahead(|p| {
            loop {
                if p.at("@") && !p.at_n(1, "interface") {
                    p.annotation()?;
                } else if p.at("final")
                    || p.at("abstract")
                    || p.at("static")
                    || p.at("strictfp")
                    || (p.peek().is_ident()
                        && (p.peek().text == "sealed" || p.peek().text == "non-sealed")
                        && !p.at_n(1, "=")
                        && !p.at_n(1, ";")
                        && !p.at_n(1, "."))
                {
                    p.advance();
                } else {
                    break;
                }
            }
            Ok(p.at_type_decl_start())
        })
    }

    fn at_local_var_decl(&mut self) -> bool {
        let t = self.peek();
        if t.kind == Tok::Keyword && PRIMITIVES.contains(&t.text) && t.text != "void" {
            return !self.at_n(1, ".");
        }
        // `yield` cannot name a type, so `yield x;` is a statement.
        if t.is_ident() && t.text == "yield" {
            return false;
        }
        self.lookahead(|p| {
            p.local_modifiers()?;
            p.parse_type()?;
            if !p.at_name() {
                return Ok(false);
            }
            let next = p.peek_n(1);
            Ok(next.is("=") || next.is(";") || next.is(",") || next.is("[") || next.is(":"))
        })
    }

    fn block_statement(&mut self) -> PResult<()> {
        if self.at_local_type_decl() {
            let mut modifiers = Modifiers::new();
            loop {
                if self.at("@") {
                    self.annotation()?;
                    continue;
                }
                let t = self.peek();
                if t.kind == Tok::Keyword || (t.is_ident() && (t.text == "sealed" || t.text == "non-sealed")) {
                    if let Some(m) = Modifier::from_keyword(t.text) {
                        modifiers.insert(m);
                        self.advance();
                        continue;
                    }
                }
                break;
            }
            let local = self.type_decl(modifiers)?;
            self.frames
                .last_mut()
                .expect("statements live inside a type")
                .local_types
                .push(local);
            return Ok(());
        }
        if self.at_local_var_decl() {
            self.local_var_decl(true)?;
            self.expect(";")?;
            return Ok(());
        }
        self.statement()
    }

    /// Declarators after modifiers and type; counts each when `count` is set.
    fn local_var_decl(&mut self, count: bool) -> PResult<()> {
        self.local_modifiers()?;
        let ty = self.parse_type()?;
        loop {
            let name = self.ident()?;
            let extra = self.dims()?;
            let declared = self.declared_type(format!("{ty}{extra}"));
            self.declare(name, declared.clone());
            if self.eat("=") {
                let v = self.variable_initializer()?;
                if ty == "var" {
                    if let Val::Other(Some(t)) = v {
                        self.declare(name, Some(t));
                    }
                }
            }
            if count {
                if let Some(b) = self.body() {
                    b.local_var_decls += 1;
                }
            }
            if !self.eat(",") {
                break;
            }
        }
        Ok(())
    }

    fn variable_initializer(&mut self) -> PResult<Val> {
        if self.at("{") {
            self.array_initializer()?;
            Ok(Val::Other(None))
        } else {
            self.expression()
        }
    }

    fn array_initializer(&mut self) -> PResult<()> {
        self.expect("{")?;
        while !self.eat("}") {
            self.variable_initializer()?;
            if !self.eat(",") {
                self.expect("}")?;
                break;
            }
        }
        Ok(())
    }

    fn paren_expression(&mut self) -> PResult<Val> {
        self.expect("(")?;
        let v = self.expression()?;
        self.expect(")")?;
        Ok(v)
    }

    /// A statement in a position where it gets its own scope.
    fn sub_statement(&mut self) -> PResult<()> {
        self.scopes.push(HashMap::new());
        let r = self.block_statement();
        self.scopes.pop();
        r
    }

    fn statement(&mut self) -> PResult<()> {
        let t = self.peek();
        if t.kind == Tok::Keyword {
            match t.text {
                "if" => {
                    self.advance();
                    self.paren_expression()?;
                    self.sub_statement()?;
                    if self.eat("else") {
                        self.sub_statement()?;
                    }
                    return Ok(());
                }
                "while" => {
                    self.advance();
                    self.paren_expression()?;
                    return self.sub_statement();
                }
                "do" => {
                    self.advance();
                    self.sub_statement()?;
                    self.expect("while")?;
                    self.paren_expression()?;
                    self.expect(";")?;
                    return Ok(());
                }
                "for" => return self.for_statement(),
                "try" => return self.try_statement(),
                "switch" => {
                    self.switch()?;
                    self.eat(";");
                    return Ok(());
                }
                "synchronized" => {
                    self.advance();
                    self.paren_expression()?;
                    return self.block();
                }
                "return" | "throw" => {
                    self.advance();
                    if !self.at(";") {
                        self.expression()?;
                    }
                    self.expect(";")?;
                    return Ok(());
                }
                "break" | "continue" => {
                    self.advance();
                    if self.at_name() {
                        self.advance();
                    }
                    self.expect(";")?;
                    return Ok(());
                }
                "assert" => {
                    self.advance();
                    self.expression()?;
                    if self.eat(":") {
                        self.expression()?;
                    }
                    self.expect(";")?;
                    return Ok(());
                }
                "this" | "super" if self.at_n(1, "(") => {
                    self.advance();
                    let kind = if t.text == "this" {
                        ConstructorCallKind::This
                    } else {
                        ConstructorCallKind::Super
                    };
                    self.arguments()?;
                    self.push_ctor(kind, String::new(), t.line);
                    self.expect(";")?;
                    return Ok(());
                }
                _ => {}
            }
        }
        if t.is("{") {
            return self.block();
        }
        if t.is(";") {
            self.advance();
            return Ok(());
        }
        if t.is_ident() {
            if t.text == "yield" && !self.at_yield_as_name() {
                self.advance();
                self.expression()?;
                self.expect(";")?;
                return Ok(());
            }
            if self.at_n(1, ":") {
                self.pos += 2;
                return self.sub_statement();
            }
        }
        self.expression()?;
        self.expect(";")?;
        Ok(())
    }

    fn at_yield_as_name(&self) -> bool {
        let n = self.peek_n(1);
        n.is("=")
            || n.is(".")
            || n.is("(")
            || n.is("[")
            || n.is("++")
            || n.is("--")
            || n.is(";")
            || (n.kind == Tok::Punct && n.text.ends_with('=') && n.text != "==" && n.text != "!=")
    }

    fn for_statement(&mut self) -> PResult<()> {
        self.expect("for")?;
        self.expect("(")?;
        self.scopes.push(HashMap::new());
        let result = (|| {
            let enhanced = self.lookahead(|p| {
                p.local_modifiers()?;
                p.parse_type()?;
                p.ident()?;
                p.dims()?;
                Ok(p.at(":"))
            });
            if enhanced {
                self.local_modifiers()?;
                let ty = self.parse_type()?;
                let name = self.ident()?;
                let extra = self.dims()?;
                let declared = self.declared_type(format!("{ty}{extra}"));
                self.declare(name, declared);
                if let Some(b) = self.body() {
                    b.local_var_decls += 1;
                }
                self.expect(":")?;
                self.expression()?;
            } else {
                if !self.at(";") {
                    if self.at_local_var_decl() {
                        self.local_var_decl(true)?;
                    } else {
                        self.expression_list()?;
                    }
                }
                self.expect(";")?;
                if !self.at(";") {
                    self.expression()?;
                }
                self.expect(";")?;
                if !self.at(")") {
                    self.expression_list()?;
                }
            }
            self.expect(")")?;
            self.sub_statement()
        })();
        self.scopes.pop();
        result
    }

    fn expression_list(&mut self) -> PResult<()> {
        self.expression()?;
        while self.eat(",") {
            self.expression()?;
        }
        Ok(())
    }

    fn try_statement(&mut self) -> PResult<()> {
        self.expect("try")?;
        self.scopes.push(HashMap::new());
        let result = (|| {
            if self.eat("(") {
                while !self.eat(")") {
                    if self.at_local_var_decl() {
                        // Resources are locals in scope but not counted declarations.
                        self.local_var_decl(false)?;
                    } else {
                        self.expression()?;
                    }
                    if !self.eat(";") {
                        self.expect(")")?;
                        break;
                    }
                }
            }
            self.block()
        })();
        self.scopes.pop();
        result?;
        while self.eat("catch") {
            self.expect("(")?;
            self.local_modifiers()?;
            let mut ty = self.parse_type()?;
            while self.eat("|") {
                self.parse_type()?;
                ty = "Throwable".to_string();
            }
            let name = self.ident()?;
            self.expect(")")?;
            self.scopes.push([(name, Some(ty))].into_iter().collect());
            let r = self.block();
            self.scopes.pop();
            r?;
        }
        if self.eat("finally") {
            self.block()?;
        }
        Ok(())
    }

    /// Switch statement or expression.
    fn switch(&mut self) -> PResult<Val> {
        self.expect("switch")?;
        self.paren_expression()?;
        self.expect("{")?;
        self.scopes.push(HashMap::new());
        let result = (|| {
            while !self.eat("}") {
                if self.at_eof() {
                    return Err(self.unexpected("`}`"));
                }
                if self.at("case") || self.at("default") {
                    self.switch_labels()?;
                    if self.eat("->") {
                        self.scopes.push(HashMap::new());
                        let r = if self.at("{") {
                            self.block()
                        } else if self.at("throw") {
                            self.statement()
                        } else {
                            self.expression().and_then(|_| self.expect(";").map(|_| ()))
                        };
                        self.scopes.pop();
                        r?;
                    } else {
                        self.expect(":")?;
                    }
                } else {
                    self.block_statement()?;
                }
            }
            Ok(())
        })();
        self.scopes.pop();
        result.map(|_| Val::Other(None))
    }

    fn switch_labels(&mut self) -> PResult<()> {
        if self.eat("default") {
            return Ok(());
        }
        self.expect("case")?;
        loop {
            if !self.eat("default") {
                self.case_label()?;
            }
            if !self.eat(",") {
                break;
            }
        }
        if self.peek().is_ident() && self.peek().text == "when" {
            self.advance();
            self.in_case_label = true;
            let r = self.expression();
            self.in_case_label = false;
            r?;
        }
        Ok(())
    }

    fn case_label(&mut self) -> PResult<()> {
        // Type pattern `Circle c` or record pattern `Point(int x, int y)`.
        let pattern = self.lookahead(|p| {
            p.local_modifiers()?;
            let ty = p.parse_type()?;
            let upper = ty.chars().next().is_some_and(char::is_uppercase);
            Ok(p.at_name() || (p.at("(") && upper))
        });
        if pattern {
            self.pattern()?;
            return Ok(());
        }
        self.in_case_label = true;
        let r = self.ternary();
        self.in_case_label = false;
        r.map(|_| ())
    }

    fn pattern(&mut self) -> PResult<()> {
        self.local_modifiers()?;
        let ty = self.parse_type()?;
        if self.at("(") {
            self.expect("(")?;
            while !self.eat(")") {
                self.pattern()?;
                if !self.eat(",") {
                    self.expect(")")?;
                    break;
                }
            }
            if self.at_name() {
                self.advance();
            }
        } else {
            let name = self.ident()?;
            let declared = self.declared_type(ty);
            self.declare(name, declared);
        }
        Ok(())
    }

    // ---------------------------------------------------------------------
    // Expressions
    // ---------------------------------------------------------------------

    fn expression(&mut self) -> PResult<Val> {
        let lhs = self.ternary()?;
        if let Some(n) = self.assignment_op() {
            self.pos += n;
            self.expression()?;
            return Ok(lhs);
        }
        Ok(lhs)
    }

    /// Number of tokens forming an assignment operator at the cursor.
    fn assignment_op(&self) -> Option<usize> {
        let t = self.peek();
        if t.kind != Tok::Punct {
            return None;
        }
        match t.text {
            "=" | "+=" | "-=" | "*=" | "/=" | "%=" | "&=" | "|=" | "^=" | "<<=" => Some(1),
            ">" => {
                if self.at_n(1, ">") && self.adjacent(0) {
                    if self.at_n(2, "=") && self.adjacent(1) {
                        return Some(3);
                    }
                    if self.at_n(2, ">") && self.adjacent(1) && self.at_n(3, "=") && self.adjacent(2) {
                        return Some(4);
                    }
                }
                None
            }
            _ => None,
        }
    }

    fn ternary(&mut self) -> PResult<Val> {
        let cond = self.binary(0)?;
        if self.eat("?") {
            let saved = self.in_case_label;
            self.in_case_label = false;
            let a = self.expression();
            self.in_case_label = saved;
            a?;
            self.expect(":")?;
            if self.lambda_ahead() {
                self.lambda()?;
            } else {
                self.ternary()?;
            }
            return Ok(Val::Other(None));
        }
        Ok(cond)
    }

    /// Binary operator at the cursor: (precedence, token count).
    fn binary_op(&self) -> Option<(u8, usize)> {
        let t = self.peek();
        if t.is("instanceof") {
            return Some((7, 1));
        }
        if t.kind != Tok::Punct {
            return None;
        }
        Some(match t.text {
            "||" => (1, 1),
            "&&" => (2, 1),
            "|" => (3, 1),
            "^" => (4, 1),
            "&" => (5, 1),
            "==" | "!=" => (6, 1),
            "<" | "<=" => (7, 1),
            ">" => {
                if self.assignment_op().is_some() {
                    return None;
                }
                if self.at_n(1, ">") && self.adjacent(0) {
                    if self.at_n(2, ">") && self.adjacent(1) {
                        (8, 3)
                    } else {
                        (8, 2)
                    }
                } else if self.at_n(1, "=") && self.adjacent(0) {
                    (7, 2)
                } else {
                    (7, 1)
                }
            }
            "<<" => (8, 1),
            "+" | "-" => (9, 1),
            "*" | "/" | "%" => (10, 1),
            _ => return None,
        })
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Val> {
        let mut lhs = self.unary()?;
        while let Some((prec, n)) = self.binary_op() {
            if prec < min_prec {
                break;
            }
            if self.eat("instanceof") {
                let is_final = self.at("final");
                self.local_modifiers()?;
                let binds = is_final
                    || self.lookahead(|p| {
                        let ty = p.parse_type()?;
                        let upper = ty.chars().next().is_some_and(char::is_uppercase);
                        Ok(p.at_name() || (p.at("(") && upper))
                    });
                if binds {
                    self.pattern()?;
                } else {
                    self.parse_type()?;
                }
                lhs = Val::Other(Some("boolean".into()));
                continue;
            }
            self.pos += n;
            self.binary(prec + 1)?;
            lhs = Val::Other(None);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Val> {
        let t = self.peek();
        if t.kind == Tok::Punct && matches!(t.text, "+" | "-" | "++" | "--" | "!" | "~") {
            self.advance();
            self.unary()?;
            return Ok(Val::Other(None));
        }
        if t.is("(") && self.at_cast() {
            self.advance();
            let mut ty = self.parse_type()?;
            while self.eat("&") {
                self.parse_type()?;
                ty = String::new();
            }
            self.expect(")")?;
            self.unary()?;
            let ty = if ty.is_empty() { None } else { self.declared_type(ty) };
            return Ok(Val::Other(ty));
        }
        self.postfix()
    }

    fn at_cast(&mut self) -> bool {
        if self.lambda_ahead() {
            return false;
        }
        self.lookahead(|p| {
            p.expect("(")?;
            let first = p.peek();
            let primitive = first.kind == Tok::Keyword && PRIMITIVES.contains(&first.text);
            p.parse_type()?;
            while p.eat("&") {
                p.parse_type()?;
            }
            if !p.eat(")") {
                return Ok(false);
            }
            let n = p.peek();
            if primitive {
                return Ok(!(n.is(")") || n.is(";") || n.is(",") || n.is(".")));
            }
            Ok(match n.kind {
                Tok::Ident | Tok::Literal(_) => true,
                Tok::Keyword => {
                    matches!(n.text, "this" | "super" | "new" | "true" | "false" | "null" | "switch")
                        || PRIMITIVES.contains(&n.text)
                }
                Tok::Punct => matches!(n.text, "(" | "!" | "~"),
                Tok::Eof => false,
            })
        })
    }

    fn lambda_ahead(&self) -> bool {
        let t = self.peek();
        if (t.is_ident() || t.text == "_") && self.at_n(1, "->") {
            return !self.in_case_label;
        }
        if !t.is("(") {
            return false;
        }
        let mut depth = 0usize;
        let mut i = self.pos;
        while i < self.toks.len() {
            let tok = self.toks[i];
            if tok.kind == Tok::Eof {
                return false;
            }
            if tok.is("(") {
                depth += 1;
            } else if tok.is(")") {
                depth -= 1;
                if depth == 0 {
                    return self.toks.get(i + 1).is_some_and(|n| n.is("->"));
                }
            }
            i += 1;
        }
        false
    }

    fn lambda(&mut self) -> PResult<Val> {
        let mut params: Vec<(&'a str, Option<String>)> = Vec::new();
        if self.eat("(") {
            if !self.eat(")") {
                loop {
                    if self.at_name() && (self.at_n(1, ",") || self.at_n(1, ")")) {
                        params.push((self.advance().text, None));
                    } else {
                        self.local_modifiers()?;
                        let mut ty = self.parse_type()?;
                        if self.eat("...") {
                            ty.push_str("[]");
                        }
                        let name = self.ident()?;
                        let extra = self.dims()?;
                        let declared = self.declared_type(format!("{ty}{extra}"));
                        params.push((name, declared));
                    }
                    if !self.eat(",") {
                        break;
                    }
                }
                self.expect(")")?;
            }
        } else {
            params.push((self.advance().text, None));
        }
        self.expect("->")?;
        self.scopes.push(params.into_iter().collect());
        let saved = self.in_case_label;
        self.in_case_label = false;
        let r = if self.at("{") {
            self.block()
        } else {
            self.expression().map(|_| ())
        };
        self.in_case_label = saved;
        self.scopes.pop();
        r.map(|_| Val::Other(None))
    }

    fn arguments(&mut self) -> PResult<()> {
        self.expect("(")?;
        let saved = self.in_case_label;
        self.in_case_label = false;
        let r = (|| {
            if self.eat(")") {
                return Ok(());
            }
            loop {
                self.expression()?;
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(")").map(|_| ())
        })();
        self.in_case_label = saved;
        r
    }

    fn postfix(&mut self) -> PResult<Val> {
        let mut v = self.primary()?;
        loop {
            if self.at(".") {
                self.advance();
                let t = self.peek();
                if t.is("new") {
                    v = self.creator()?;
                } else if t.is("this") {
                    self.advance();
                    v = Val::This;
                } else if t.is("class") {
                    self.advance();
                    v = Val::Other(Some("Class".into()));
                } else if t.is("super") {
                    self.advance();
                    if self.at("(") {
                        self.arguments()?;
                        self.push_ctor(ConstructorCallKind::Super, String::new(), t.line);
                        v = Val::Other(None);
                    } else {
                        v = Val::Super;
                    }
                } else {
                    if self.at("<") {
                        self.type_arguments()?;
                    }
                    let name_tok = self.peek();
                    let name = self.ident()?;
                    if self.at("(") {
                        self.arguments()?;
                        v = self.push_call(name, v.receiver(), name_tok.line);
                    } else {
                        v = self.push_access(name, qualified_form(&v), v.receiver(), name_tok.line);
                    }
                }
            } else if self.at("[") {
                if self.at_n(1, "]") {
                    // `String[].class` or `int[]::new`
                    self.dims()?;
                    v = Val::Other(None);
                    continue;
                }
                self.advance();
                self.expression()?;
                self.expect("]")?;
                v = Val::Other(None);
            } else if self.at("++") || self.at("--") {
                self.advance();
                v = Val::Other(None);
            } else if self.at("::") {
                self.advance();
                if self.at("<") {
                    self.type_arguments()?;
                }
                if !self.eat("new") {
                    self.ident()?;
                }
                v = Val::Other(None);
            } else if self.at("<") && self.generic_method_ref_ahead() {
                // `List<String>::new`
                self.type_arguments()?;
                v = Val::Other(None);
            } else {
                break;
            }
        }
        Ok(v)
    }

    fn generic_method_ref_ahead(&mut self) -> bool {
        self.lookahead(|p| {
            p.type_arguments()?;
            Ok(p.at("::"))
        })
    }

    fn primary(&mut self) -> PResult<Val> {
        let t = self.peek();
        match t.kind {
            Tok::Literal(kind) => {
                self.advance();
                let ty = match kind {
                    LitKind::Str | LitKind::TextBlock => "String",
                    LitKind::Char => "char",
                    LitKind::Int => "int",
                    LitKind::Float => "double",
                };
                return Ok(Val::Other(Some(ty.into())));
            }
            Tok::Eof => return Err(self.unexpected("expression")),
            _ => {}
        }
        if self.lambda_ahead() {
            return self.lambda();
        }
        if t.kind == Tok::Keyword {
            match t.text {
                "true" | "false" => {
                    self.advance();
                    return Ok(Val::Other(Some("boolean".into())));
                }
                "null" => {
                    self.advance();
                    return Ok(Val::Other(None));
                }
                "this" => {
                    self.advance();
                    if self.at("(") {
                        self.arguments()?;
                        self.push_ctor(ConstructorCallKind::This, String::new(), t.line);
                        return Ok(Val::Other(None));
                    }
                    return Ok(Val::This);
                }
                "super" => {
                    self.advance();
                    if self.at("(") {
                        self.arguments()?;
                        self.push_ctor(ConstructorCallKind::Super, String::new(), t.line);
                        return Ok(Val::Other(None));
                    }
                    return Ok(Val::Super);
                }
                "new" => return self.creator(),
                "switch" => return self.switch(),
                _ if PRIMITIVES.contains(&t.text) => {
                    let ty = self.parse_type()?;
                    return Ok(Val::Other(Some(ty)));
                }
                _ if t.text != "enum" => {
                    return Err(self.unexpected("expression"));
                }
                _ => {}
            }
        }
        if t.is("(") {
            self.advance();
            let v = self.expression()?;
            self.expect(")")?;
            return Ok(v);
        }
        if t.is("@") {
            // Annotated expression types are rare; skip the annotation.
            self.annotation()?;
            return self.primary();
        }
        if self.at_name() {
            let name = self.advance().text;
            if self.at("(") {
                self.arguments()?;
                return Ok(self.push_call(name, Receiver::None, t.line));
            }
            if let Some(ty) = self.is_local(name) {
                return Ok(Val::Local(ty));
            }
            return Ok(self.push_access(name, AccessForm::SimpleName, Receiver::None, t.line));
        }
        Err(self.unexpected("expression"))
    }

    /// `new` expression; the cursor is at `new`.
    fn creator(&mut self) -> PResult<Val> {
        let new_tok = self.expect("new")?;
        if self.at("<") {
            self.type_arguments()?;
        }
        self.skip_annotations()?;
        let t = self.peek();
        let base = if t.kind == Tok::Keyword && PRIMITIVES.contains(&t.text) {
            self.advance();
            t.text.to_string()
        } else {
            let mut name = self.ident()?.to_string();
            if self.at("<") {
                self.type_arguments()?;
            }
            while self.at(".") {
                self.advance();
                self.skip_annotations()?;
                name.push('.');
                name.push_str(self.ident()?);
                if self.at("<") {
                    self.type_arguments()?;
                }
            }
            name
        };
        if self.at("[") || self.at("@") {
            let mut dims = String::new();
            loop {
                self.skip_annotations()?;
                if !self.eat("[") {
                    break;
                }
                if !self.at("]") {
                    self.expression()?;
                }
                self.expect("]")?;
                dims.push_str("[]");
            }
            if self.at("{") {
                self.array_initializer()?;
            }
            return Ok(Val::Other(Some(format!("{base}{dims}"))));
        }
        self.arguments()?;
        self.push_ctor(ConstructorCallKind::New, base.clone(), new_tok.line);
        if self.at("{") {
            if let Some(f) = self.frames.last_mut() {
                f.anonymous_bodies += 1;
            }
            self.anonymous_body()?;
        }
        let ty = self.declared_type(base);
        Ok(Val::Other(ty))
    }

    /// Anonymous class body. Its code joins the current accumulator; its
    /// fields behave as locals.
    fn anonymous_body(&mut self) -> PResult<()> {
        self.expect("{")?;
        self.scopes.push(HashMap::new());
        let owns_body = self.bodies.is_empty();
        if owns_body {
            self.bodies.push(BodyStats::default());
        }
        let result = (|| {
            while !self.eat("}") {
                if self.at_eof() {
                    return Err(self.unexpected("`}`"));
                }
                if self.eat(";") {
                    continue;
                }
                if self.at("{") || (self.at("static") && self.at_n(1, "{")) {
                    self.eat("static");
                    self.block()?;
                    continue;
                }
                let modifiers = self.modifiers()?;
                if self.at_type_decl_start() {
                    let local = self.type_decl(modifiers)?;
                    if let Some(f) = self.frames.last_mut() {
                        f.local_types.push(local);
                    }
                    continue;
                }
                let mut tp = Vec::new();
                if self.at("<") {
                    tp = self.type_parameters()?;
                }
                self.type_params.push(tp);
                let r = self.anonymous_member();
                self.type_params.pop();
                r?;
            }
            Ok(())
        })();
        if owns_body {
            self.bodies.pop();
        }
        self.scopes.pop();
        result
    }

    fn anonymous_member(&mut self) -> PResult<()> {
        let ty = self.parse_type()?;
        let name = self.ident()?;
        if self.at("(") {
            let params = self.formal_parameters()?;
            self.dims()?;
            if self.eat("throws") {
                self.type_list()?;
            }
            if self.at("{") {
                let scope = params.into_iter().map(|(n, t)| (n, self.declared_type(t))).collect();
                self.scopes.push(scope);
                let r = self.block();
                self.scopes.pop();
                r?;
            } else {
                self.expect(";")?;
            }
            return Ok(());
        }
        let mut name = name;
        loop {
            let extra = self.dims()?;
            let declared = self.declared_type(format!("{ty}{extra}"));
            self.declare(name, declared);
            if self.eat("=") {
                self.variable_initializer()?;
            }
            if !self.eat(",") {
                break;
            }
            name = self.ident()?;
        }
        self.expect(";")?;
        Ok(())
    }
}

fn qualified_form(v: &Val) -> AccessForm {
    match v {
        Val::This | Val::Super => AccessForm::ThisQualified,
        _ => AccessForm::Qualified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code_model::DEFAULT_PACKAGE;

    fn parse(src: &str) -> CompilationUnit {
        match parse_unit(SourceFile::new("T.java", src)) {
            Ok(u) => u,
            Err(f) => panic!("{}", f.diagnostic),
        }
    }

    fn only_method(unit: &CompilationUnit) -> &MethodDecl {
        let t = &unit.types[0];
        assert_eq!(t.methods.len(), 1);
        &t.methods[0]
    }

    fn body_of(src: &str) -> BodyStats {
        let unit = parse(&format!("class T {{ int f; T g; void m(T p) {{ {src} }} }}"));
        only_method(&unit).body.clone().unwrap()
    }

    fn call_names(b: &BodyStats) -> Vec<&str> {
        b.invocation_sites.iter().map(|s| s.invoked_name.as_str()).collect()
    }

    fn access_names(b: &BodyStats) -> Vec<&str> {
        b.field_access_sites.iter().map(|s| s.accessed_name.as_str()).collect()
    }

    #[test]
    fn single_class_with_field_and_method() {
        let unit = parse("package p; public class A { int x; void m() { x = 1; } }");
        assert_eq!(unit.file.package_name, "p");
        assert_eq!(unit.types.len(), 1);
        let a = &unit.types[0];
        assert_eq!(a.qualified_name, "p.A");
        assert_eq!(a.kind, TypeKind::Class);
        assert!(a.modifiers.contains(&Modifier::Public));
        assert_eq!(a.fields.len(), 1);
        let m = only_method(&unit);
        assert!(!m.is_public() && !m.is_static());
        let body = m.body.as_ref().unwrap();
        assert_eq!(body.field_access_sites.len(), 1);
        assert_eq!(body.field_access_sites[0].syntactic_form, AccessForm::SimpleName);
        assert_eq!(body.invocation_sites.len(), 0);
        assert_eq!(body.local_var_decls, 0);
    }

    #[test]
    fn interface_method_has_no_body() {
        let unit = parse("package p; interface I { void f(); }");
        assert_eq!(unit.types[0].kind, TypeKind::Interface);
        assert!(only_method(&unit).body.is_none());
    }

    #[test]
    fn comment_only_file_has_no_types() {
        let unit = parse("// nothing here\n/* at all */\n");
        assert!(unit.types.is_empty());
        assert_eq!(unit.file.package_name, DEFAULT_PACKAGE);
    }

    #[test]
    fn declarators_expand() {
        let unit = parse("class A { int a, b[], c = 3; static final String S = \"x\"; }");
        let names: Vec<_> = unit.types[0].fields.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "c", "S"]);
        assert_eq!(unit.types[0].fields[1].type_name.as_deref(), Some("int[]"));
    }

    #[test]
    fn supertypes_extends_first() {
        let unit = parse("class C implements I, J extends A {}");
        let sup: Vec<_> = unit.types[0]
            .supertypes
            .iter()
            .map(|s| (s.name.as_str(), s.kind))
            .collect();
        assert_eq!(
            sup,
            [
                ("A", EdgeKind::Extends),
                ("I", EdgeKind::Implements),
                ("J", EdgeKind::Implements)
            ]
        );
        let unit = parse("class C<T extends Comparable<T>> extends java.util.ArrayList<T> implements Runnable {}");
        assert_eq!(unit.types[0].supertypes[0].name, "java.util.ArrayList");
    }

    #[test]
    fn kinds_and_nesting() {
        let unit = parse(
            "package q; enum E { A, B(1) { void f() {} }, C; E() {} E(int x) {} } \
             record R(int x, String y) implements I { R { } } @interface Ann { int v() default 1; } \
             class O { static class N { interface K {} } }",
        );
        let kinds: Vec<_> = unit
            .all_types()
            .iter()
            .map(|t| (t.qualified_name.as_str(), t.kind))
            .collect();
        assert_eq!(
            kinds,
            [
                ("q.E", TypeKind::Enum),
                ("q.R", TypeKind::Record),
                ("q.Ann", TypeKind::Annotation),
                ("q.O", TypeKind::Class),
                ("q.O.N", TypeKind::Class),
                ("q.O.N.K", TypeKind::Interface),
            ]
        );
        let e = &unit.types[0];
        assert_eq!(e.fields.len(), 3);
        assert_eq!(e.methods.len(), 2);
        assert!(e.methods.iter().all(|m| m.is_constructor));
        assert_eq!(e.anonymous_bodies, 1);
        let r = &unit.types[1];
        assert_eq!(r.fields.len(), 2);
        assert!(r.methods[0].is_constructor);
        assert_eq!(unit.types[2].methods.len(), 1);
    }

    #[test]
    fn constructors_are_flagged() {
        let unit = parse("class A { A() { this(1); } A(int x) { super(); } void A2() {} }");
        let flags: Vec<_> = unit.types[0].methods.iter().map(|m| m.is_constructor).collect();
        assert_eq!(flags, [true, true, false]);
        let body = unit.types[0].methods[0].body.as_ref().unwrap();
        assert_eq!(body.constructor_sites.len(), 1);
        assert!(body.invocation_sites.is_empty());
    }

    #[test]
    fn nested_and_chained_calls() {
        assert_eq!(call_names(&body_of("foo(bar());")), ["bar", "foo"]);
        let b = body_of("g.b().c();");
        assert_eq!(call_names(&b), ["b", "c"]);
        assert_eq!(b.invocation_sites[1].receiver, Receiver::Call(0));
        assert_eq!(b.invocation_sites[0].receiver, Receiver::Access(0));
    }

    #[test]
    fn read_and_write_occurrences() {
        let b = body_of("f = 1; f = f + 1;");
        assert_eq!(access_names(&b), ["f", "f", "f"]);
        let b = body_of("p.f = p.f;");
        assert_eq!(access_names(&b), ["f", "f"]);
        assert!(b
            .field_access_sites
            .iter()
            .all(|s| s.syntactic_form == AccessForm::Qualified));
        assert_eq!(b.field_access_sites[0].receiver, Receiver::Local(Some("T".into())));
    }

    #[test]
    fn locals_shadow_fields() {
        let b = body_of("int f = 2; f++; this.f = f;");
        assert_eq!(b.local_var_decls, 1);
        assert_eq!(access_names(&b), ["f"]);
        assert_eq!(b.field_access_sites[0].syntactic_form, AccessForm::ThisQualified);
    }

    #[test]
    fn local_variable_counting() {
        let b = body_of(
            "int a = 1, b; for (int i = 0, j = 0; i < j; i++) {} for (String s : list()) {} \
             try (java.io.Reader r = open()) {} catch (Exception e) {} \
             Runnable q = () -> { int z; };",
        );
        // a, b, i, j, s, q, z
        assert_eq!(b.local_var_decls, 7);
    }

    #[test]
    fn new_is_not_an_invocation() {
        let b = body_of("T t = new T(); t.m(new T());");
        assert_eq!(call_names(&b), ["m"]);
        assert_eq!(b.constructor_sites.len(), 2);
    }

    #[test]
    fn anonymous_classes_and_lambdas_feed_the_enclosing_method() {
        let unit = parse(
            "class A { int x; void m() { Runnable r = new Runnable() { int own; public void run() { x++; own++; go(); } }; \
             list.forEach(e -> e.go()); } }",
        );
        let a = &unit.types[0];
        assert_eq!(a.methods.len(), 1);
        assert_eq!(a.anonymous_bodies, 1);
        let body = a.methods[0].body.as_ref().unwrap();
        assert_eq!(call_names(body), ["go", "go", "forEach"]);
        // `own` is the anonymous class's field, not a field access of A.
        assert_eq!(access_names(body), ["x", "list"]);
        assert_eq!(body.local_var_decls, 1);
    }

    #[test]
    fn casts_generics_and_shifts() {
        let b = body_of(
            "java.util.List<java.util.Map<String, Integer>> l = null; int k = (int) f >> 2; \
             boolean z = f >>> 1 > 0 && f >= 2; ((T) g).m(p); k >>>= 1; k >>= 1; \
             Object o = (Runnable) () -> {}; int w = (f) + 1; z = f < k;",
        );
        assert_eq!(b.local_var_decls, 5);
        assert_eq!(call_names(&b), ["m"]);
        assert_eq!(b.invocation_sites[0].receiver, Receiver::Expr(Some("T".into())));
    }

    #[test]
    fn switch_forms() {
        let b = body_of(
            "switch (f) { case 1: int q = 1; break; case 2, 3 -> go(); default -> { stop(); } } \
             int r = switch (f) { case 1 -> 2; default -> { yield f; } }; \
             if (g instanceof T t && t.f > 0) { t.m(null); } \
             Object o = null; switch (o) { case T t when t.f > 1 -> t.m(p); case String s -> s.length(); default -> {} }",
        );
        assert_eq!(b.local_var_decls, 3);
        assert_eq!(call_names(&b), ["go", "stop", "m", "m", "length"]);
    }

    #[test]
    fn method_references_and_class_literals() {
        let b = body_of("Object a = T::new; Object c = String[].class; Object d = this::m; list().stream().map(T::x);");
        assert_eq!(call_names(&b), ["list", "stream", "map"]);
    }

    #[test]
    fn local_named_classes_are_nested_types() {
        let unit = parse("package p; class A { void m() { class L { int y; void k() { go(); } } new L().k(); } }");
        let a = &unit.types[0];
        assert_eq!(a.nested.len(), 1);
        assert_eq!(a.nested[0].qualified_name, "p.A.L");
        assert_eq!(a.nested[0].fields.len(), 1);
        assert_eq!(call_names(a.methods[0].body.as_ref().unwrap()), ["k"]);
    }

    #[test]
    fn initializers_collect_code() {
        let unit = parse("class A { static int x = compute(); static { init(); } int[] a = {1, size()}; }");
        let init = &unit.types[0].initializer;
        assert_eq!(call_names(init), ["compute", "init", "size"]);
    }

    #[test]
    fn old_enum_identifier() {
        let b = body_of("java.util.Enumeration enum = elements(); while (enum.hasMoreElements()) enum.nextElement();");
        assert_eq!(b.local_var_decls, 1);
        assert_eq!(call_names(&b), ["elements", "hasMoreElements", "nextElement"]);
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse_unit(SourceFile::new("B.java", "class B {\n  void m( {\n}")).unwrap_err();
        assert_eq!(err.diagnostic.path, "B.java");
        assert_eq!(err.diagnostic.line, 2);
        let (unit, diag) = parse_unit_lenient(SourceFile::new("B.java", "class B {"));
        assert!(unit.types.is_empty());
        assert!(diag.is_some());
    }

    #[test]
    fn package_detection() {
        assert_eq!(
            declared_package("/* c */ package a.b.c; class X {").as_deref(),
            Some("a.b.c")
        );
        assert_eq!(
            declared_package("@Deprecated(since = \"1\") package a; ").as_deref(),
            Some("a")
        );
        assert_eq!(declared_package("class X {}"), None);
    }

    #[test]
    fn module_info_has_no_types() {
        let unit = parse("module com.example { requires java.base; exports com.example.api; }");
        assert!(unit.types.is_empty());
    }

    #[test]
    fn generic_methods_and_annotations() {
        let unit = parse(
            "class A { @Override public <T extends Comparable<? super T>> T max(java.util.List<? extends T> l) { \
             return java.util.Collections.<T>max(l); } @SuppressWarnings({\"a\", \"b\"}) final int[][] grid = new int[2][]; }",
        );
        let a = &unit.types[0];
        assert_eq!(a.methods[0].return_type, None);
        assert!(a.methods[0].is_public());
        assert_eq!(call_names(a.methods[0].body.as_ref().unwrap()), ["max"]);
        assert_eq!(a.fields[0].type_name.as_deref(), Some("int[][]"));
    }
}
