use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ast::*;
use super::error::{ParseError, ParseErrorKind};
use super::lexer::{tokenize, Keyword, Tok};
use crate::iri::{is_absolute, Iri, Prefixes};

/// Largest integer accepted by `MIN(n)` / `MAX(n)`.
pub const MAX_CARDINALITY: u32 = 1 << 16;

/// Grammar rules, recorded as the parser enters them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Production {
    Rdd,
    PrefixDecl,
    ClassConstraintSec,
    PropConstraintSec,
    ClassConstraint,
    Key,
    PropConstraint,
    ConstraintList,
    Constraint,
    MinConstraint,
    MaxConstraint,
    DomainConstraint,
    RangeConstraint,
    PartialityConstraint,
    TotalityConstraint,
    PathConstraint,
    SubPropertyConstraint,
    Wa,
    IriList,
    IriSeq,
    IriWithRangeTypeList,
    IriWithRangeType,
    RangeType,
    Iri,
    PrefixedName,
    IriRef,
    Integer,
}

impl Production {
    pub const ALL: [Production; 27] = [
        Production::Rdd,
        Production::PrefixDecl,
        Production::ClassConstraintSec,
        Production::PropConstraintSec,
        Production::ClassConstraint,
        Production::Key,
        Production::PropConstraint,
        Production::ConstraintList,
        Production::Constraint,
        Production::MinConstraint,
        Production::MaxConstraint,
        Production::DomainConstraint,
        Production::RangeConstraint,
        Production::PartialityConstraint,
        Production::TotalityConstraint,
        Production::PathConstraint,
        Production::SubPropertyConstraint,
        Production::Wa,
        Production::IriList,
        Production::IriSeq,
        Production::IriWithRangeTypeList,
        Production::IriWithRangeType,
        Production::RangeType,
        Production::Iri,
        Production::PrefixedName,
        Production::IriRef,
        Production::Integer,
    ];
}

/// Parses an RDD document.
pub fn parse_rdd(input: &str) -> Result<RddDocument, ParseError> {
    parse_rdd_with_prefixes(input, Prefixes::new())
}

/// Parses with `prelude` bindings in scope before the document's own
/// `PREFIX` declarations.
pub fn parse_rdd_with_prefixes(input: &str, prelude: Prefixes) -> Result<RddDocument, ParseError> {
    parse_rdd_traced(input, prelude).map(|(doc, _)| doc)
}

/// Like [`parse_rdd_with_prefixes`], also returning the grammar rules used.
pub fn parse_rdd_traced(input: &str, prelude: Prefixes) -> Result<(RddDocument, BTreeSet<Production>), ParseError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens, pos: 0, prefixes: prelude, used: BTreeSet::new() };
    let doc = parser.document()?;
    Ok((doc, parser.used))
}

struct Parser {
    tokens: Vec<(Tok, Loc)>,
    pos: usize,
    prefixes: Prefixes,
    used: BTreeSet<Production>,
}

const CONSTRAINT_KEYWORDS: [Keyword; 8] = [
    Keyword::Min,
    Keyword::Max,
    Keyword::Domain,
    Keyword::Range,
    Keyword::Path,
    Keyword::SubProperty,
    Keyword::Partial,
    Keyword::Total,
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn loc(&self) -> Loc {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> (Tok, Loc) {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn enter(&mut self, production: Production) {
        self.used.insert(production);
    }

    fn unexpected(&self, rule: &'static str, expected: &'static str) -> ParseError {
        ParseError::new(self.loc(), ParseErrorKind::Syntax { rule, expected, found: self.peek().to_string() })
    }

    fn expect(&mut self, tok: Tok, rule: &'static str, expected: &'static str) -> Result<Loc, ParseError> {
        if *self.peek() == tok {
            Ok(self.advance().1)
        } else {
            Err(self.unexpected(rule, expected))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn at_keyword(&self, kw: Keyword) -> bool {
        *self.peek() == Tok::Keyword(kw)
    }

    fn document(&mut self) -> Result<RddDocument, ParseError> {
        self.enter(Production::Rdd);
        while self.at_keyword(Keyword::Prefix) {
            self.prefix_decl()?;
        }
        let class_section = self.class_section()?;
        let prop_section = self.prop_section()?;
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected("RDD", "end of input"));
        }
        Ok(RddDocument { prefixes: self.prefixes.clone(), class_section, prop_section })
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        self.enter(Production::PrefixDecl);
        self.advance();
        let name = match self.peek().clone() {
            Tok::PName { prefix, local } if local.is_empty() => prefix,
            Tok::Colon => String::new(),
            _ => return Err(self.unexpected("PrefixDecl", "a prefix name such as `ex:`")),
        };
        self.advance();
        let loc = self.loc();
        let Tok::IriRef(iri) = self.peek().clone() else {
            return Err(self.unexpected("PrefixDecl", "an IRI reference"));
        };
        self.advance();
        self.enter(Production::IriRef);
        let ns = Iri::new(iri.clone()).ok_or(ParseError::new(loc, ParseErrorKind::RelativeIri(iri)))?;
        self.prefixes.insert(&name, ns);
        Ok(())
    }

    fn wa(&mut self, rule: &'static str) -> Result<bool, ParseError> {
        self.enter(Production::Wa);
        match self.peek() {
            Tok::Keyword(Keyword::Owa) => {
                self.advance();
                Ok(true)
            }
            Tok::Keyword(Keyword::Cwa) => {
                self.advance();
                Ok(false)
            }
            _ => Err(self.unexpected(rule, "OWA or CWA")),
        }
    }

    fn class_section(&mut self) -> Result<ClassConstraintSec, ParseError> {
        self.enter(Production::ClassConstraintSec);
        let loc = self.loc();
        let is_owa = self.wa("ClassConstraintSec")?;
        self.expect(Tok::Keyword(Keyword::Classes), "ClassConstraintSec", "CLASSES")?;
        self.expect(Tok::LBrace, "ClassConstraintSec", "'{'")?;
        let mut classes: Vec<ClassConstraint> = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let cc = self.class_constraint()?;
            if classes.iter().any(|c| c.class == cc.class) {
                return Err(ParseError::new(cc.loc, ParseErrorKind::DuplicateClass(cc.class)));
            }
            classes.push(cc);
        }
        Ok(ClassConstraintSec { is_owa, classes, loc })
    }

    fn prop_section(&mut self) -> Result<PropConstraintSec, ParseError> {
        self.enter(Production::PropConstraintSec);
        let loc = self.loc();
        let is_owa = self.wa("PropConstraintSec")?;
        self.expect(Tok::Keyword(Keyword::Properties), "PropConstraintSec", "PROPERTIES")?;
        self.expect(Tok::LBrace, "PropConstraintSec", "'{'")?;
        let mut upcs = Vec::new();
        while !self.eat(&Tok::RBrace) {
            upcs.push(self.prop_constraint()?);
        }
        Ok(PropConstraintSec { is_owa, upcs, loc })
    }

    fn class_constraint(&mut self) -> Result<ClassConstraint, ParseError> {
        self.enter(Production::ClassConstraint);
        let loc = self.loc();
        let is_owa = self.wa("ClassConstraint")?;
        let is_singleton = self.eat(&Tok::Keyword(Keyword::Singleton));
        self.expect(Tok::Keyword(Keyword::Class), "ClassConstraint", "CLASS")?;
        let class = self.iri("ClassConstraint")?;
        let mut sub_classes = Vec::new();
        if self.eat(&Tok::Keyword(Keyword::Subclass)) {
            for (sc, sc_loc) in self.iri_list("ClassConstraint")? {
                if sub_classes.contains(&sc) {
                    return Err(ParseError::new(sc_loc, ParseErrorKind::DuplicateSubclass(sc)));
                }
                sub_classes.push(sc);
            }
        }
        self.expect(Tok::LBrace, "ClassConstraint", "'{'")?;
        let mut keys = Vec::new();
        let mut qpcs = Vec::new();
        loop {
            if self.eat(&Tok::RBrace) {
                break;
            }
            if self.at_keyword(Keyword::Key) {
                keys.push(self.key()?);
            } else {
                qpcs.push(self.prop_constraint()?);
            }
        }
        Ok(ClassConstraint { class, sub_classes, is_singleton, keys, qpcs, is_owa, loc })
    }

    fn key(&mut self) -> Result<Key, ParseError> {
        self.enter(Production::Key);
        let loc = self.advance().1;
        self.enter(Production::IriWithRangeTypeList);
        let mut props: Vec<PropWithRange> = Vec::new();
        loop {
            let item_loc = self.loc();
            let item = self.iri_with_range_type("Key")?;
            if props.iter().any(|p| p.prop == item.prop) {
                return Err(ParseError::new(item_loc, ParseErrorKind::DuplicateKeyProperty(item.prop)));
            }
            props.push(item);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Semicolon, "Key", "';'")?;
        Ok(Key { props, loc })
    }

    fn prop_constraint(&mut self) -> Result<PropConstraint, ParseError> {
        self.enter(Production::PropConstraint);
        let loc = self.loc();
        let mut constraints = Vec::new();
        if matches!(self.peek(), Tok::Keyword(k) if CONSTRAINT_KEYWORDS.contains(k)) {
            self.enter(Production::ConstraintList);
            loop {
                constraints.push(self.constraint()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
                if !matches!(self.peek(), Tok::Keyword(k) if CONSTRAINT_KEYWORDS.contains(k)) {
                    return Err(self.unexpected("ConstraintList", "a constraint"));
                }
            }
        }
        let PropWithRange { prop, range_type } = self.iri_with_range_type("PropConstraint")?;
        // infix sugar: `A SUBPROPERTY B1, ..., Bn ;`
        if self.at_keyword(Keyword::SubProperty) {
            let sub_loc = self.advance().1;
            let subs = self.iri_list("PropConstraint")?.into_iter().map(|(i, _)| i).collect();
            constraints.push(Spanned::new(ConstraintAtom::SubProperty(subs), sub_loc));
        }
        self.expect(Tok::Semicolon, "PropConstraint", "';'")?;
        validate_atoms(&prop, &constraints)?;
        Ok(PropConstraint { constraints, prop, range_type, loc })
    }

    fn constraint(&mut self) -> Result<Spanned<ConstraintAtom>, ParseError> {
        self.enter(Production::Constraint);
        let (tok, loc) = self.advance();
        let Tok::Keyword(kw) = tok else { unreachable!("checked by caller") };
        let atom = match kw {
            Keyword::Partial => {
                self.enter(Production::PartialityConstraint);
                ConstraintAtom::Partial
            }
            Keyword::Total => {
                self.enter(Production::TotalityConstraint);
                ConstraintAtom::Total
            }
            _ => {
                let rule = match kw {
                    Keyword::Min => Production::MinConstraint,
                    Keyword::Max => Production::MaxConstraint,
                    Keyword::Domain => Production::DomainConstraint,
                    Keyword::Range => Production::RangeConstraint,
                    Keyword::Path => Production::PathConstraint,
                    _ => Production::SubPropertyConstraint,
                };
                self.enter(rule);
                self.expect(Tok::LParen, "Constraint", "'('")?;
                let atom = match kw {
                    Keyword::Min => ConstraintAtom::Min(self.integer()?),
                    Keyword::Max => ConstraintAtom::Max(self.integer()?),
                    Keyword::Domain => ConstraintAtom::Domain(self.iri("DomainConstraint")?),
                    Keyword::Range => ConstraintAtom::Range(self.iri("RangeConstraint")?),
                    Keyword::Path => {
                        self.enter(Production::IriSeq);
                        let mut seq = alloc::vec![self.iri("PathConstraint")?];
                        while self.eat(&Tok::Slash) {
                            seq.push(self.iri("PathConstraint")?);
                        }
                        ConstraintAtom::Path(seq)
                    }
                    _ => ConstraintAtom::SubProperty(
                        self.iri_list("SubPropertyConstraint")?.into_iter().map(|(i, _)| i).collect(),
                    ),
                };
                self.expect(Tok::RParen, "Constraint", "')'")?;
                atom
            }
        };
        Ok(Spanned::new(atom, loc))
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        let loc = self.loc();
        let Tok::Integer(digits) = self.peek().clone() else {
            return Err(self.unexpected("Constraint", "an integer"));
        };
        self.enter(Production::Integer);
        self.advance();
        match digits.parse::<u32>() {
            Ok(n) if n <= MAX_CARDINALITY => Ok(n),
            _ => Err(ParseError::new(loc, ParseErrorKind::IntegerTooLarge(digits))),
        }
    }

    fn iri_list(&mut self, rule: &'static str) -> Result<Vec<(Iri, Loc)>, ParseError> {
        self.enter(Production::IriList);
        let mut out = Vec::new();
        loop {
            let loc = self.loc();
            out.push((self.iri(rule)?, loc));
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn iri_with_range_type(&mut self, rule: &'static str) -> Result<PropWithRange, ParseError> {
        self.enter(Production::IriWithRangeType);
        let prop = self.iri(rule)?;
        let range_type = match self.peek().clone() {
            Tok::Colon => {
                self.advance();
                Some(self.range_type()?)
            }
            // `ex:p :LITERAL` lexes the range type as an empty-prefix name
            Tok::PName { prefix, local } if prefix.is_empty() && range_keyword(&local).is_some() => {
                self.enter(Production::RangeType);
                self.advance();
                Some(self.range_type_tail(range_keyword(&local).unwrap())?)
            }
            _ => None,
        };
        Ok(PropWithRange { prop, range_type })
    }

    fn range_type(&mut self) -> Result<RangeType, ParseError> {
        self.enter(Production::RangeType);
        let kind = match self.peek() {
            Tok::Keyword(Keyword::Iri) => RangeKind::Iri,
            Tok::Keyword(Keyword::BNode) => RangeKind::BNode,
            Tok::Keyword(Keyword::Resource) => RangeKind::Resource,
            Tok::Keyword(Keyword::Literal) => RangeKind::Literal,
            _ => return Err(self.unexpected("RangeType", "IRI, BNODE, RESOURCE or LITERAL")),
        };
        self.advance();
        self.range_type_tail(kind)
    }

    fn range_type_tail(&mut self, kind: RangeKind) -> Result<RangeType, ParseError> {
        if kind == RangeKind::Literal && self.eat(&Tok::LParen) {
            let dt = self.iri("RangeType")?;
            self.expect(Tok::RParen, "RangeType", "')'")?;
            return Ok(RangeType::literal_of(dt));
        }
        Ok(RangeType::new(kind))
    }

    fn iri(&mut self, rule: &'static str) -> Result<Iri, ParseError> {
        let loc = self.loc();
        match self.peek().clone() {
            Tok::IriRef(value) => {
                self.enter(Production::Iri);
                self.enter(Production::IriRef);
                self.advance();
                if !is_absolute(&value) {
                    return Err(ParseError::new(loc, ParseErrorKind::RelativeIri(value)));
                }
                Ok(Iri::new_unchecked(value))
            }
            Tok::PName { prefix, local } => {
                self.enter(Production::Iri);
                self.enter(Production::PrefixedName);
                self.advance();
                let ns = self
                    .prefixes
                    .get(&prefix)
                    .ok_or(ParseError::new(loc, ParseErrorKind::UnresolvedPrefix(prefix)))?;
                Ok(Iri::new_unchecked(format!("{}{}", ns.as_str(), local)))
            }
            _ => Err(self.unexpected(rule, "an IRI")),
        }
    }
}

fn range_keyword(word: &str) -> Option<RangeKind> {
    match word {
        "IRI" => Some(RangeKind::Iri),
        "BNODE" => Some(RangeKind::BNode),
        "RESOURCE" => Some(RangeKind::Resource),
        "LITERAL" => Some(RangeKind::Literal),
        _ => None,
    }
}

fn validate_atoms(prop: &Iri, atoms: &[Spanned<ConstraintAtom>]) -> Result<(), ParseError> {
    for (i, atom) in atoms.iter().enumerate() {
        if atoms[..i].iter().any(|a| a.keyword() == atom.keyword()) {
            return Err(ParseError::new(
                atom.loc,
                ParseErrorKind::DuplicateConstraint { prop: prop.clone(), keyword: atom.keyword() },
            ));
        }
    }
    let find = |kw: &str| atoms.iter().find(|a| a.keyword() == kw);
    if let (Some(_), Some(total)) = (find("PARTIAL"), find("TOTAL")) {
        let loc = total.loc;
        return Err(ParseError::new(loc, ParseErrorKind::PartialAndTotal(prop.clone())));
    }
    if let (Some(min), Some(max)) = (find("MIN"), find("MAX")) {
        if let (ConstraintAtom::Min(lo), ConstraintAtom::Max(hi)) = (&min.value, &max.value) {
            if lo > hi {
                return Err(ParseError::new(
                    min.loc,
                    ParseErrorKind::MinExceedsMax { prop: prop.clone(), min: *lo, max: *hi },
                ));
            }
        }
    }
    Ok(())
}
