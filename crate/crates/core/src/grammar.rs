//! Context-free grammars: text DSL, catalogued presets, normalization to
//! proper form and Chomsky Normal Form, and the join-inducing classifier.
//!
//! DSL: one rule per line, `Head -> alt1 | alt2`, terminals single-quoted,
//! `eps` for the empty body, `#` starts a comment. The head of the first
//! rule is the start symbol. `parse_grammar(serialize_grammar(g))` is
//! structurally equal to `g`.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A terminal or nonterminal occurrence in a production body.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(String),
    Nonterminal(String),
}

impl Symbol {
    pub fn name(&self) -> &str {
        match self {
            Symbol::Terminal(n) | Symbol::Nonterminal(n) => n,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }
}

/// One production `head -> body`; an empty body is epsilon.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Production {
    pub head: String,
    pub body: Vec<Symbol>,
}

/// A context-free grammar. Productions are kept in insertion order with set
/// semantics; terminal and nonterminal namespaces are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    productions: Vec<Production>,
    start: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrammarError {
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    Undeclared {
        line: usize,
        col: usize,
        name: String,
    },
    EmptyInput,
    BadName(String),
    NamespaceClash(String),
    UnknownPreset(String),
    InvalidParameter(String),
}

impl fmt::Display for GrammarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrammarError::Syntax { line, col, msg } => {
                write!(f, "syntax error at {line}:{col}: {msg}")
            }
            GrammarError::Undeclared { line, col, name } => {
                write!(f, "undeclared symbol `{name}` at {line}:{col} (bare names must be rule heads; quote terminals)")
            }
            GrammarError::EmptyInput => write!(f, "empty grammar text"),
            GrammarError::BadName(n) => write!(f, "invalid symbol name `{n}`"),
            GrammarError::NamespaceClash(n) => {
                write!(f, "`{n}` used as both terminal and nonterminal")
            }
            GrammarError::UnknownPreset(n) => write!(f, "unknown preset `{n}`"),
            GrammarError::InvalidParameter(m) => write!(f, "invalid preset parameter: {m}"),
        }
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "eps"
        && name != "->"
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c == '\'' || c == '#' || c == '|')
}

impl Grammar {
    pub fn new(start: &str) -> Result<Grammar, GrammarError> {
        if !valid_name(start) {
            return Err(GrammarError::BadName(start.to_owned()));
        }
        Ok(Grammar {
            nonterminals: vec![start.to_owned()],
            terminals: Vec::new(),
            productions: Vec::new(),
            start: start.to_owned(),
        })
    }

    /// Adds a production, interning any new symbols. Duplicates are dropped.
    pub fn add_production(&mut self, head: &str, body: &[Symbol]) -> Result<(), GrammarError> {
        self.intern(&Symbol::Nonterminal(head.to_owned()))?;
        for s in body {
            self.intern(s)?;
        }
        let p = Production {
            head: head.to_owned(),
            body: body.to_vec(),
        };
        if !self.productions.contains(&p) {
            self.productions.push(p);
        }
        Ok(())
    }

    fn intern(&mut self, s: &Symbol) -> Result<(), GrammarError> {
        let name = s.name();
        if !valid_name(name) {
            return Err(GrammarError::BadName(name.to_owned()));
        }
        match s {
            Symbol::Nonterminal(_) => {
                if self.terminals.iter().any(|t| t == name) {
                    return Err(GrammarError::NamespaceClash(name.to_owned()));
                }
                if !self.nonterminals.iter().any(|t| t == name) {
                    self.nonterminals.push(name.to_owned());
                }
            }
            Symbol::Terminal(_) => {
                if self.nonterminals.iter().any(|t| t == name) {
                    return Err(GrammarError::NamespaceClash(name.to_owned()));
                }
                if !self.terminals.iter().any(|t| t == name) {
                    self.terminals.push(name.to_owned());
                }
            }
        }
        Ok(())
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn is_nonterminal(&self, name: &str) -> bool {
        self.nonterminals.iter().any(|n| n == name)
    }

    pub fn is_terminal(&self, name: &str) -> bool {
        self.terminals.iter().any(|n| n == name)
    }

    /// Renames nonterminals to `N0, N1, ...` in first-appearance order
    /// (start first). Terminals are untouched. Two grammars are structurally
    /// equivalent iff their canonical forms are equal as sets of productions.
    pub fn canonical(&self) -> Grammar {
        let mut map = BTreeMap::new();
        map.insert(self.start.clone(), "N0".to_owned());
        let mut next = 1usize;
        let mut name_of = |map: &mut BTreeMap<String, String>, n: &str| -> String {
            if let Some(v) = map.get(n) {
                return v.clone();
            }
            let fresh = format!("N{next}");
            next += 1;
            map.insert(n.to_owned(), fresh.clone());
            fresh
        };
        let mut out = Grammar::new("N0").expect("valid name");
        for p in &self.productions {
            let head = name_of(&mut map, &p.head);
            let body: Vec<Symbol> = p
                .body
                .iter()
                .map(|s| match s {
                    Symbol::Terminal(t) => Symbol::Terminal(t.clone()),
                    Symbol::Nonterminal(n) => Symbol::Nonterminal(name_of(&mut map, n)),
                })
                .collect();
            out.add_production(&head, &body)
                .expect("canonical rename is clash-free");
        }
        out
    }

    /// Structural equality modulo nonterminal names.
    pub fn structurally_equals(&self, other: &Grammar) -> bool {
        let a: BTreeSet<Production> = self.canonical().productions.into_iter().collect();
        let b: BTreeSet<Production> = other.canonical().productions.into_iter().collect();
        a == b
    }
}

fn line_tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut it = line.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let start = i;
        let mut end = line.len();
        while let Some(&(j, d)) = it.peek() {
            if d.is_whitespace() {
                end = j;
                break;
            }
            it.next();
        }
        out.push((start + 1, &line[start..end]));
    }
    out
}

/// Parses the grammar DSL. The first rule's head is the start symbol.
pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    struct RawRule<'a> {
        line_no: usize,
        head: (usize, &'a str),
        rest: Vec<(usize, &'a str)>,
    }
    let mut raw = Vec::new();
    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match full_line.find('#') {
            Some(p) => &full_line[..p],
            None => full_line,
        };
        let toks = line_tokens(line);
        if toks.is_empty() {
            continue;
        }
        if toks.len() < 3 || toks[1].1 != "->" {
            let (col, _) = toks.get(1).copied().unwrap_or(toks[0]);
            return Err(GrammarError::Syntax {
                line: line_no,
                col,
                msg: "expected `Head -> body`".to_owned(),
            });
        }
        raw.push(RawRule {
            line_no,
            head: toks[0],
            rest: toks[2..].to_vec(),
        });
    }
    if raw.is_empty() {
        return Err(GrammarError::EmptyInput);
    }

    let mut heads = BTreeSet::new();
    for r in &raw {
        let (col, name) = r.head;
        if !valid_name(name) {
            return Err(GrammarError::Syntax {
                line: r.line_no,
                col,
                msg: format!("invalid head name `{name}`"),
            });
        }
        heads.insert(name.to_owned());
    }

    let mut g = Grammar::new(raw[0].head.1)?;
    for r in &raw {
        let mut alts: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
        for &(col, tok) in &r.rest {
            if tok == "|" {
                alts.push(Vec::new());
            } else {
                alts.last_mut().expect("nonempty").push((col, tok));
            }
        }
        for alt in alts {
            if alt.is_empty() {
                return Err(GrammarError::Syntax {
                    line: r.line_no,
                    col: r.head.0,
                    msg: "empty alternative (use `eps` for the empty body)".to_owned(),
                });
            }
            let mut body = Vec::new();
            let mut saw_eps = false;
            for (col, tok) in &alt {
                if *tok == "eps" {
                    saw_eps = true;
                    continue;
                }
                if let Some(inner) = tok.strip_prefix('\'') {
                    let Some(name) = inner.strip_suffix('\'') else {
                        return Err(GrammarError::Syntax {
                            line: r.line_no,
                            col: *col,
                            msg: format!("unterminated terminal quote in `{tok}`"),
                        });
                    };
                    if !valid_name(name) {
                        return Err(GrammarError::Syntax {
                            line: r.line_no,
                            col: *col,
                            msg: format!("invalid terminal name `{name}`"),
                        });
                    }
                    body.push(Symbol::Terminal(name.to_owned()));
                } else {
                    if !heads.contains(*tok) {
                        return Err(GrammarError::Undeclared {
                            line: r.line_no,
                            col: *col,
                            name: (*tok).to_owned(),
                        });
                    }
                    body.push(Symbol::Nonterminal((*tok).to_owned()));
                }
            }
            if saw_eps && !body.is_empty() {
                return Err(GrammarError::Syntax {
                    line: r.line_no,
                    col: alt[0].0,
                    msg: "`eps` must stand alone in an alternative".to_owned(),
                });
            }
            g.add_production(r.head.1, &body)?;
        }
    }
    Ok(g)
}

/// Inverse of [`parse_grammar`]: one line per head, alternatives joined
/// with `|`, heads in first-appearance order (start first).
pub fn serialize_grammar(g: &Grammar) -> String {
    let mut by_head: BTreeMap<&str, Vec<&Production>> = BTreeMap::new();
    let mut head_order: Vec<&str> = Vec::new();
    for p in g.productions() {
        if !by_head.contains_key(p.head.as_str()) {
            head_order.push(&p.head);
        }
        by_head.entry(&p.head).or_default().push(p);
    }
    if let Some(pos) = head_order.iter().position(|h| *h == g.start()) {
        let s = head_order.remove(pos);
        head_order.insert(0, s);
    }
    let mut out = String::new();
    for head in head_order {
        let alts: Vec<String> = by_head[head]
            .iter()
            .map(|p| {
                if p.body.is_empty() {
                    "eps".to_owned()
                } else {
                    p.body
                        .iter()
                        .map(|s| match s {
                            Symbol::Terminal(t) => format!("'{t}'"),
                            Symbol::Nonterminal(n) => n.clone(),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        out.push_str(head);
        out.push_str(" -> ");
        out.push_str(&alts.join(" | "));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// Bracket pair names used by the Dyck presets. Dyck-1 keeps the literal
/// parentheses; Dyck-2 uses the file-safe names the clique gadget serializes
/// (`lb`/`rb` for square brackets, `lp`/`rp` for parentheses).
pub fn dyck_pairs(k: usize) -> Vec<(String, String)> {
    match k {
        1 => vec![("(".to_owned(), ")".to_owned())],
        2 => vec![
            ("lb".to_owned(), "rb".to_owned()),
            ("lp".to_owned(), "rp".to_owned()),
        ],
        _ => (1..=k)
            .map(|i| (format!("o{i}"), format!("c{i}")))
            .collect(),
    }
}

fn dyck_text(k: usize, with_concat: bool) -> String {
    let mut alts = vec!["eps".to_owned()];
    if with_concat {
        alts.push("S S".to_owned());
    }
    for (o, c) in dyck_pairs(k) {
        alts.push(format!("'{o}' S '{c}'"));
    }
    format!("S -> {}\n", alts.join(" | "))
}

const GEQ_TEXT: &str = "S -> T1 T2\nT1 -> eps | 'a' T1\nT2 -> eps | 'a' T2 'b'\n";

const ANBN_TEXT: &str = "S -> eps | 'a' S 'b'\n";

// Epsilon-free grammar for nonempty strings with equally many a's and b's.
const EQCOUNT_TEXT: &str = "S -> 'a' 'b' | 'b' 'a' | 'a' S 'b' | 'b' S 'a' | 'a' 'b' S | 'b' 'a' S | 'a' S 'b' S | 'b' S 'a' S\n";

/// Flips a label name across the forward/backward convention used by the
/// pointer-analysis grammar: `alpha <-> alphabar` and so on.
pub fn bar_name(name: &str) -> String {
    match name.strip_suffix("bar") {
        Some(stripped) if !stripped.is_empty() => stripped.to_owned(),
        _ => format!("{name}bar"),
    }
}

/// Mechanically derives the mirrored ruleset: each body is reversed and
/// every symbol is barred (`fwd <-> bwd` for the two nonterminals).
fn mirror_bodies(bodies: &[Vec<Symbol>], fwd: &str, bwd: &str) -> Vec<Vec<Symbol>> {
    bodies
        .iter()
        .map(|body| {
            body.iter()
                .rev()
                .map(|s| match s {
                    Symbol::Terminal(t) => Symbol::Terminal(bar_name(t)),
                    Symbol::Nonterminal(n) if n == fwd => Symbol::Nonterminal(bwd.to_owned()),
                    Symbol::Nonterminal(_) => Symbol::Nonterminal(fwd.to_owned()),
                })
                .collect()
        })
        .collect()
}

fn apa_grammar() -> Grammar {
    let t = |s: &str| Symbol::Terminal(s.to_owned());
    let nt = |s: &str| Symbol::Nonterminal(s.to_owned());
    let t_bodies: Vec<Vec<Symbol>> = vec![
        vec![t("alpha")],
        vec![nt("T"), t("e")],
        vec![nt("T"), nt("T"), t("beta")],
        vec![nt("T"), t("gamma"), nt("Tbar")],
    ];
    let mut g = Grammar::new("T").expect("valid");
    for b in &t_bodies {
        g.add_production("T", b).expect("valid");
    }
    for b in mirror_bodies(&t_bodies, "T", "Tbar") {
        g.add_production("Tbar", &b).expect("valid");
    }
    g
}

/// Returns a catalogued grammar by name. Parameterized presets use a colon,
/// e.g. `dyck:2`, `anbn_mid:cd`, `palindrome:ab`.
pub fn preset(name: &str) -> Result<Grammar, GrammarError> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (name, None),
    };
    let k_param = |p: Option<&str>| -> Result<usize, GrammarError> {
        let s = p.ok_or_else(|| GrammarError::InvalidParameter("missing k".to_owned()))?;
        let k: usize = s
            .parse()
            .map_err(|_| GrammarError::InvalidParameter(format!("bad k `{s}`")))?;
        if k == 0 {
            return Err(GrammarError::InvalidParameter("k must be >= 1".to_owned()));
        }
        Ok(k)
    };
    match base {
        "dyck" => parse_grammar(&dyck_text(k_param(param)?, true)),
        "dyck_nested" => parse_grammar(&dyck_text(k_param(param)?, false)),
        "geq" => parse_grammar(GEQ_TEXT),
        "anbn" => parse_grammar(ANBN_TEXT),
        "anbn_mid" => {
            let s = param.unwrap_or("");
            let mid = if s.is_empty() { "ab" } else { s };
            for c in mid.chars() {
                if !valid_name(&c.to_string()) {
                    return Err(GrammarError::InvalidParameter(format!(
                        "bad middle-string character `{c}`"
                    )));
                }
            }
            let mid_body: Vec<String> = mid.chars().map(|c| format!("'{c}'")).collect();
            parse_grammar(&format!("S -> 'a' S 'b' | {}\n", mid_body.join(" ")))
        }
        "eqcount" => parse_grammar(EQCOUNT_TEXT),
        "palindrome" => {
            let alphabet = param.unwrap_or("");
            let chars: Vec<char> = alphabet.chars().collect();
            let set: BTreeSet<char> = chars.iter().copied().collect();
            if chars.len() < 2 || set.len() != chars.len() {
                return Err(GrammarError::InvalidParameter(
                    "palindrome needs >= 2 distinct symbols".to_owned(),
                ));
            }
            let mut alts = Vec::new();
            for c in &chars {
                alts.push(format!("'{c}'"));
            }
            for c in &chars {
                alts.push(format!("'{c}' S '{c}'"));
            }
            parse_grammar(&format!("S -> {}\n", alts.join(" | ")))
        }
        "apa" => Ok(apa_grammar()),
        _ => Err(GrammarError::UnknownPreset(name.to_owned())),
    }
}

/// Names accepted by [`preset`], for CLI help and tests.
pub const PRESET_NAMES: &[&str] = &[
    "dyck:<k>",
    "dyck_nested:<k>",
    "geq",
    "anbn",
    "anbn_mid:<s>",
    "eqcount",
    "palindrome:<alphabet>",
    "apa",
];

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

type Rule = (String, Vec<Symbol>);

fn nullable_set(rules: &[Rule]) -> BTreeSet<String> {
    let mut nullable = BTreeSet::new();
    loop {
        let mut changed = false;
        for (head, body) in rules {
            if nullable.contains(head) {
                continue;
            }
            let all_nullable = body.iter().all(|s| match s {
                Symbol::Terminal(_) => false,
                Symbol::Nonterminal(n) => nullable.contains(n),
            });
            if all_nullable {
                nullable.insert(head.clone());
                changed = true;
            }
        }
        if !changed {
            return nullable;
        }
    }
}

fn productive_set(rules: &[Rule]) -> BTreeSet<String> {
    let mut prod = BTreeSet::new();
    loop {
        let mut changed = false;
        for (head, body) in rules {
            if prod.contains(head) {
                continue;
            }
            let ok = body.iter().all(|s| match s {
                Symbol::Terminal(_) => true,
                Symbol::Nonterminal(n) => prod.contains(n),
            });
            if ok {
                prod.insert(head.clone());
                changed = true;
            }
        }
        if !changed {
            return prod;
        }
    }
}

fn reachable_set(rules: &[Rule], start: &str) -> BTreeSet<String> {
    let mut reach = BTreeSet::new();
    reach.insert(start.to_owned());
    loop {
        let mut changed = false;
        for (head, body) in rules {
            if !reach.contains(head) {
                continue;
            }
            for s in body {
                if let Symbol::Nonterminal(n) = s {
                    if reach.insert(n.clone()) {
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return reach;
        }
    }
}

fn push_rule(rules: &mut Vec<Rule>, seen: &mut BTreeSet<Rule>, r: Rule) {
    if seen.insert(r.clone()) {
        rules.push(r);
    }
}

fn rebuild(rules: Vec<Rule>, start: &str) -> Grammar {
    let mut g = Grammar::new(start).expect("valid start");
    for (head, body) in rules {
        g.add_production(&head, &body)
            .expect("normalization preserves validity");
    }
    g
}

fn degenerate(start: &str) -> Grammar {
    Grammar::new(start).expect("valid start")
}

/// Transforms `g` into a weakly equivalent proper grammar: no epsilon rules
/// except `S -> eps` when the language contains the empty string, no unit
/// cycles, and every nonterminal productive and reachable. An empty language
/// yields the degenerate grammar with no productions.
pub fn to_proper(g: &Grammar) -> Grammar {
    let start = g.start().to_owned();
    let base: Vec<Rule> = g
        .productions()
        .iter()
        .map(|p| (p.head.clone(), p.body.clone()))
        .collect();

    // Epsilon elimination. Every subset of nullable occurrences may vanish.
    let nullable = nullable_set(&base);
    let mut rules: Vec<Rule> = Vec::new();
    let mut seen: BTreeSet<Rule> = BTreeSet::new();
    if nullable.contains(&start) {
        push_rule(&mut rules, &mut seen, (start.clone(), Vec::new()));
    }
    for (head, body) in &base {
        let nullable_pos: Vec<usize> = body
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, Symbol::Nonterminal(n) if nullable.contains(n)))
            .map(|(i, _)| i)
            .collect();
        let masks = 1usize << nullable_pos.len();
        for mask in 0..masks {
            let drop: BTreeSet<usize> = nullable_pos
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &i)| i)
                .collect();
            let variant: Vec<Symbol> = body
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, s)| s.clone())
                .collect();
            if !variant.is_empty() {
                push_rule(&mut rules, &mut seen, (head.clone(), variant));
            }
        }
    }

    // Unit-cycle contraction: strongly connected unit classes merge into one
    // representative (the start symbol wins its own class).
    let nts: Vec<String> = {
        let mut v = vec![start.clone()];
        for (h, b) in &rules {
            if !v.contains(h) {
                v.push(h.clone());
            }
            for s in b {
                if let Symbol::Nonterminal(n) = s {
                    if !v.contains(n) {
                        v.push(n.clone());
                    }
                }
            }
        }
        v
    };
    let unit_edges: BTreeSet<(String, String)> = rules
        .iter()
        .filter_map(|(h, b)| match b.as_slice() {
            [Symbol::Nonterminal(n)] => Some((h.clone(), n.clone())),
            _ => None,
        })
        .collect();
    let mut rep: BTreeMap<String, String> = nts.iter().map(|n| (n.clone(), n.clone())).collect();
    // Mutual unit-derivability, by reachability both ways over unit edges.
    let unit_reach = |from: &str| -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![from.to_owned()];
        while let Some(x) = stack.pop() {
            for (a, b) in &unit_edges {
                if *a == x && !out.contains(b) {
                    out.insert(b.clone());
                    stack.push(b.clone());
                }
            }
        }
        out
    };
    let mut assigned: BTreeSet<String> = BTreeSet::new();
    for n in &nts {
        if assigned.contains(n) {
            continue;
        }
        let fwd = unit_reach(n);
        let mut class = vec![n.clone()];
        for m in &fwd {
            if m != n && unit_reach(m).contains(n) {
                class.push(m.clone());
            }
        }
        let class_rep = if class.contains(&start) {
            start.clone()
        } else {
            class[0].clone()
        };
        for m in class {
            rep.insert(m.clone(), class_rep.clone());
            assigned.insert(m);
        }
    }
    let mut merged: Vec<Rule> = Vec::new();
    let mut seen2: BTreeSet<Rule> = BTreeSet::new();
    for (head, body) in rules {
        let head = rep[&head].clone();
        let body: Vec<Symbol> = body
            .into_iter()
            .map(|s| match s {
                Symbol::Nonterminal(n) => Symbol::Nonterminal(rep[&n].clone()),
                t => t,
            })
            .collect();
        if let [Symbol::Nonterminal(n)] = body.as_slice() {
            if *n == head {
                continue; // self-unit after contraction
            }
        }
        push_rule(&mut merged, &mut seen2, (head, body));
    }

    // Keep only productive, then only reachable rules.
    let prod = productive_set(&merged);
    let merged: Vec<Rule> = merged
        .into_iter()
        .filter(|(h, b)| {
            prod.contains(h)
                && b.iter().all(|s| match s {
                    Symbol::Terminal(_) => true,
                    Symbol::Nonterminal(n) => prod.contains(n),
                })
        })
        .collect();
    let reach = reachable_set(&merged, &start);
    let merged: Vec<Rule> = merged
        .into_iter()
        .filter(|(h, _)| reach.contains(h))
        .collect();

    if merged.is_empty() {
        return degenerate(&start);
    }
    rebuild(merged, &start)
}

/// A grammar in Chomsky Normal Form: every production is `S -> eps` (only if
/// the language has the empty string), `A -> B C`, or `A -> a`; the start
/// symbol never occurs in a body; the grammar is proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfGrammar {
    grammar: Grammar,
    accepts_empty: bool,
}

impl CnfGrammar {
    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn start(&self) -> &str {
        self.grammar.start()
    }

    pub fn accepts_empty(&self) -> bool {
        self.accepts_empty
    }

    /// True when the underlying language is empty.
    pub fn is_degenerate(&self) -> bool {
        self.grammar.productions().is_empty()
    }

    pub fn compile(&self) -> CompiledCnf {
        CompiledCnf::new(self)
    }
}

fn fresh_name(base: &str, used: &mut BTreeSet<String>) -> String {
    if used.insert(base.to_owned()) {
        return base.to_owned();
    }
    let mut i = 2usize;
    loop {
        let cand = format!("{base}_{i}");
        if used.insert(cand.clone()) {
            return cand;
        }
        i += 1;
    }
}

/// Converts to Chomsky Normal Form (applying [`to_proper`] first). Fresh
/// symbols get deterministic counter-suffixed names, so the output is
/// byte-for-byte reproducible.
pub fn to_cnf(g: &Grammar) -> CnfGrammar {
    let p = to_proper(g);
    if p.productions().is_empty() {
        return CnfGrammar {
            grammar: p,
            accepts_empty: false,
        };
    }
    let accepts_empty = p
        .productions()
        .iter()
        .any(|pr| pr.head == p.start() && pr.body.is_empty());

    let mut used: BTreeSet<String> = p
        .nonterminals()
        .iter()
        .chain(p.terminals().iter())
        .cloned()
        .collect();
    let mut rules: Vec<Rule> = p
        .productions()
        .iter()
        .map(|pr| (pr.head.clone(), pr.body.clone()))
        .collect();
    let mut start = p.start().to_owned();

    // Fresh start if the current one occurs in a body.
    let start_in_body = rules.iter().any(|(_, b)| {
        b.iter()
            .any(|s| matches!(s, Symbol::Nonterminal(n) if *n == start))
    });
    if start_in_body {
        let s0 = fresh_name(&format!("{start}_0"), &mut used);
        if accepts_empty {
            rules.retain(|(h, b)| !(h == &start && b.is_empty()));
            rules.push((s0.clone(), Vec::new()));
        }
        rules.push((s0.clone(), vec![Symbol::Nonterminal(start.clone())]));
        start = s0;
    }

    // TERM: wrap terminals occurring in long bodies.
    let mut wrapper: BTreeMap<String, String> = BTreeMap::new();
    let mut extra: Vec<Rule> = Vec::new();
    for (_, body) in rules.iter_mut() {
        if body.len() < 2 {
            continue;
        }
        for s in body.iter_mut() {
            if let Symbol::Terminal(t) = s {
                let w = wrapper.entry(t.clone()).or_insert_with(|| {
                    let name = fresh_name(&format!("X_{t}"), &mut used);
                    extra.push((name.clone(), vec![Symbol::Terminal(t.clone())]));
                    name
                });
                *s = Symbol::Nonterminal(w.clone());
            }
        }
    }
    rules.extend(extra);

    // BIN: split bodies longer than two.
    let mut binned: Vec<Rule> = Vec::new();
    let mut chain_counter: BTreeMap<String, usize> = BTreeMap::new();
    for (head, body) in rules {
        if body.len() <= 2 {
            binned.push((head, body));
            continue;
        }
        let mut current = head.clone();
        for i in 0..body.len() - 2 {
            let c = chain_counter.entry(head.clone()).or_insert(0);
            *c += 1;
            let next = fresh_name(&format!("{head}_{c}"), &mut used);
            binned.push((
                current.clone(),
                vec![body[i].clone(), Symbol::Nonterminal(next.clone())],
            ));
            current = next;
        }
        binned.push((
            current,
            vec![body[body.len() - 2].clone(), body[body.len() - 1].clone()],
        ));
    }

    // UNIT: eliminate unit rules by closure (proper form has no unit cycles,
    // and the fresh-start step adds at most an acyclic one).
    let unit_target = |b: &[Symbol]| match b {
        [Symbol::Nonterminal(n)] => Some(n.clone()),
        _ => None,
    };
    let mut closed: Vec<Rule> = Vec::new();
    let mut seen: BTreeSet<Rule> = BTreeSet::new();
    let heads: BTreeSet<String> = binned.iter().map(|(h, _)| h.clone()).collect();
    for a in &heads {
        // unit closure from a
        let mut targets = BTreeSet::new();
        let mut stack = vec![a.clone()];
        while let Some(x) = stack.pop() {
            for (h, b) in &binned {
                if *h == x {
                    if let Some(n) = unit_target(b) {
                        if targets.insert(n.clone()) {
                            stack.push(n);
                        }
                    }
                }
            }
        }
        for (h, b) in &binned {
            if unit_target(b).is_some() {
                continue;
            }
            if h == a || targets.contains(h) {
                push_rule(&mut closed, &mut seen, (a.clone(), b.clone()));
            }
        }
    }

    // Final pruning pass to restore properness after unit elimination.
    let prod = productive_set(&closed);
    let closed: Vec<Rule> = closed
        .into_iter()
        .filter(|(h, b)| {
            prod.contains(h)
                && b.iter().all(|s| match s {
                    Symbol::Terminal(_) => true,
                    Symbol::Nonterminal(n) => prod.contains(n),
                })
        })
        .collect();
    let reach = reachable_set(&closed, &start);
    let closed: Vec<Rule> = closed
        .into_iter()
        .filter(|(h, _)| reach.contains(h))
        .collect();

    if closed.is_empty() {
        return CnfGrammar {
            grammar: degenerate(&start),
            accepts_empty: false,
        };
    }
    CnfGrammar {
        grammar: rebuild(closed, &start),
        accepts_empty,
    }
}

/// Interned CNF for the solvers and CYK: nonterminals and terminals become
/// dense indices.
#[derive(Debug, Clone)]
pub struct CompiledCnf {
    pub nts: Vec<String>,
    pub terms: Vec<String>,
    pub start: usize,
    pub accepts_empty: bool,
    /// `A -> a` as (A, a).
    pub unary: Vec<(usize, usize)>,
    /// `A -> B C` as (A, B, C).
    pub binary: Vec<(usize, usize, usize)>,
}

impl CompiledCnf {
    fn new(cnf: &CnfGrammar) -> CompiledCnf {
        let g = cnf.grammar();
        let nts: Vec<String> = g.nonterminals().to_vec();
        let terms: Vec<String> = g.terminals().to_vec();
        let nt_id: BTreeMap<&str, usize> = nts
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let term_id: BTreeMap<&str, usize> = terms
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut unary = Vec::new();
        let mut binary = Vec::new();
        for p in g.productions() {
            match p.body.as_slice() {
                [] => {}
                [Symbol::Terminal(t)] => unary.push((nt_id[p.head.as_str()], term_id[t.as_str()])),
                [Symbol::Nonterminal(b), Symbol::Nonterminal(c)] => {
                    binary.push((nt_id[p.head.as_str()], nt_id[b.as_str()], nt_id[c.as_str()]))
                }
                other => panic!("non-CNF production survived normalization: {other:?}"),
            }
        }
        CompiledCnf {
            start: nt_id[g.start()],
            nts,
            terms,
            accepts_empty: cnf.accepts_empty(),
            unary,
            binary,
        }
    }

    pub fn term_id(&self, name: &str) -> Option<usize> {
        self.terms.iter().position(|t| t == name)
    }

    pub fn nt_id(&self, name: &str) -> Option<usize> {
        self.nts.iter().position(|t| t == name)
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// A word over the grammar's terminals, as a sequence of terminal names.
pub type Word = Vec<String>;

/// Length-then-lexicographic order on words; the tie-break order everywhere
/// a shortest word is produced.
pub fn word_cmp(a: &[String], b: &[String]) -> core::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Renders a word for display: single-character terminal names concatenate,
/// anything else is space-separated.
pub fn word_display(w: &[String]) -> String {
    if w.is_empty() {
        return "eps".to_owned();
    }
    if w.iter().all(|t| t.chars().count() == 1) {
        w.concat()
    } else {
        w.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub join_inducing: bool,
    /// A shortest string of length >= 2 produced by the grammar, present iff
    /// `join_inducing`.
    pub witness: Option<Word>,
    pub linear: bool,
    pub right_regular: bool,
    pub left_regular: bool,
    pub accepts_empty: bool,
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "join_inducing = {}", self.join_inducing)?;
        match &self.witness {
            Some(w) => writeln!(f, "witness = {}", word_display(w))?,
            None => writeln!(f, "witness = -")?,
        }
        writeln!(f, "linear = {}", self.linear)?;
        writeln!(f, "right_regular = {}", self.right_regular)?;
        writeln!(f, "left_regular = {}", self.left_regular)?;
        write!(f, "accepts_empty = {}", self.accepts_empty)
    }
}

/// Shortest terminal yield per nonterminal of a compiled CNF, under
/// [`word_cmp`]. `None` marks unproductive symbols (degenerate grammars).
fn shortest_yields(c: &CompiledCnf) -> Vec<Option<Word>> {
    let mut best: Vec<Option<Word>> = vec![None; c.nts.len()];
    let improve = |best: &mut Vec<Option<Word>>, a: usize, cand: Word| -> bool {
        match &best[a] {
            Some(cur) if word_cmp(&cand, cur) != core::cmp::Ordering::Less => false,
            _ => {
                best[a] = Some(cand);
                true
            }
        }
    };
    loop {
        let mut changed = false;
        for &(a, t) in &c.unary {
            changed |= improve(&mut best, a, vec![c.terms[t].clone()]);
        }
        for &(a, b, d) in &c.binary {
            if let (Some(wb), Some(wd)) = (&best[b], &best[d]) {
                let mut cand = wb.clone();
                cand.extend(wd.iter().cloned());
                changed |= improve(&mut best, a, cand);
            }
        }
        if !changed {
            return best;
        }
    }
}

/// The lexicographically smallest word of exactly length `len` derivable
/// from `nt`, if any. Exact dynamic program over (nonterminal, length).
fn lexmin_word_of_len(c: &CompiledCnf, nt: usize, len: usize) -> Option<Word> {
    // derivable-length bitsets first
    let mut derivable = vec![vec![false; len + 1]; c.nts.len()];
    loop {
        let mut changed = false;
        for &(a, _) in &c.unary {
            if len >= 1 && !derivable[a][1] {
                derivable[a][1] = true;
                changed = true;
            }
        }
        for &(a, b, d) in &c.binary {
            for l1 in 1..len {
                if !derivable[b][l1] {
                    continue;
                }
                for l2 in 1..=len - l1 {
                    if derivable[d][l2] && !derivable[a][l1 + l2] {
                        derivable[a][l1 + l2] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    if len == 0 || !derivable[nt][len] {
        return None;
    }
    let mut memo: BTreeMap<(usize, usize), Option<Word>> = BTreeMap::new();
    fn go(
        c: &CompiledCnf,
        derivable: &[Vec<bool>],
        memo: &mut BTreeMap<(usize, usize), Option<Word>>,
        a: usize,
        l: usize,
    ) -> Option<Word> {
        if let Some(m) = memo.get(&(a, l)) {
            return m.clone();
        }
        let mut best: Option<Word> = None;
        if l == 1 {
            for &(h, t) in &c.unary {
                if h == a {
                    let cand = vec![c.terms[t].clone()];
                    if best
                        .as_ref()
                        .is_none_or(|b| word_cmp(&cand, b) == core::cmp::Ordering::Less)
                    {
                        best = Some(cand);
                    }
                }
            }
        } else {
            for &(h, b, d) in &c.binary {
                if h != a {
                    continue;
                }
                for l1 in 1..l {
                    let l2 = l - l1;
                    if !derivable[b][l1] || !derivable[d][l2] {
                        continue;
                    }
                    let wb = go(c, derivable, memo, b, l1).expect("derivable");
                    let wd = go(c, derivable, memo, d, l2).expect("derivable");
                    let mut cand = wb;
                    cand.extend(wd);
                    if best
                        .as_ref()
                        .is_none_or(|bst| word_cmp(&cand, bst) == core::cmp::Ordering::Less)
                    {
                        best = Some(cand);
                    }
                }
            }
        }
        memo.insert((a, l), best.clone());
        best
    }
    go(c, &derivable, &mut memo, nt, len)
}

/// Classifies a grammar per the dichotomy criterion: join-inducing iff its
/// proper CNF still has a binary rule, in which case a shortest witness of
/// length >= 2 is extracted (ties broken lexicographically).
pub fn classify(g: &Grammar) -> ClassificationReport {
    let linear = g
        .productions()
        .iter()
        .all(|p| p.body.iter().filter(|s| !s.is_terminal()).count() <= 1);
    let shape = |p: &Production, right: bool| -> bool {
        match p.body.as_slice() {
            [] => true,
            [Symbol::Terminal(_)] => true,
            [Symbol::Terminal(_), Symbol::Nonterminal(_)] => right,
            [Symbol::Nonterminal(_), Symbol::Terminal(_)] => !right,
            _ => false,
        }
    };
    let right_regular = g.productions().iter().all(|p| shape(p, true));
    let left_regular = g.productions().iter().all(|p| shape(p, false));

    let cnf = to_cnf(g);
    if cnf.is_degenerate() {
        return ClassificationReport {
            join_inducing: false,
            witness: None,
            linear,
            right_regular,
            left_regular,
            accepts_empty: false,
        };
    }
    let c = cnf.compile();
    let join_inducing = !c.binary.is_empty();
    let witness = if join_inducing {
        let yields = shortest_yields(&c);
        let target = c
            .binary
            .iter()
            .filter(|&&(a, _, _)| a == c.start)
            .filter_map(|&(_, b, d)| Some(yields[b].as_ref()?.len() + yields[d].as_ref()?.len()))
            .min()
            .expect("a pruned proper CNF with binary rules has one at the start symbol");
        Some(lexmin_word_of_len(&c, c.start, target).expect("witness length is derivable"))
    } else {
        None
    };
    ClassificationReport {
        join_inducing,
        witness,
        linear,
        right_regular,
        left_regular,
        accepts_empty: cnf.accepts_empty(),
    }
}

/// A minimum-length terminal string derivable from `from` (ties broken
/// lexicographically on terminal names); `None` iff unproductive. The empty
/// word is reported for the start symbol when the language has it.
pub fn shortest_word(cnf: &CnfGrammar, from: &str) -> Option<Word> {
    if cnf.is_degenerate() {
        return None;
    }
    let c = cnf.compile();
    let id = c.nt_id(from)?;
    if id == c.start && c.accepts_empty {
        return Some(Vec::new());
    }
    shortest_yields(&c)[id].clone()
}
