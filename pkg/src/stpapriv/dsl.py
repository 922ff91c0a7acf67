"""Reader and canonical writer for the ``.stpa`` analysis format, plus the JSON loader.

A file is a ``model`` header followed by keyword-led items::

    model "eHealth Diabetes Game"

    consequence AC07 "Other players can estimate health state of player."
      linddun information_disclosure, linkability
      caused_by VS06

Parsing never stops at the first problem: after a syntax error the parser
skips ahead to the next item keyword and carries on, so one run reports every
independent mistake in the file.
"""
from __future__ import annotations

import bisect
import json
import re
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from stpapriv.diagnostics import Diagnostic, Severity, SourceSpan, has_errors
from stpapriv.model import (
    ID_PATTERN, AdverseConsequence, AnalysisModel, ArtifactKind, Assessment,
    CausalScenario, ConstraintOrigin, DesignRequirement, Goal, GuideCategory,
    LinddunCategory, LinkKind, ModelError, Pcca, PrivacyConstraint, Stakeholder,
    Vulnerability,
)
from stpapriv.structure import Edge, EdgeKind, Node, NodeKind

SCHEMA_VERSION = 1

NODE_KEYWORDS = {
    "controller": NodeKind.CONTROLLER,
    "process": NodeKind.CONTROLLED_PROCESS,
    "sensor": NodeKind.SENSOR,
    "actuator": NodeKind.ACTUATOR,
    "entity": NodeKind.EXTERNAL_ENTITY,
}
_NODE_KEYWORD_BY_KIND = {v: k for k, v in NODE_KEYWORDS.items()}

ITEM_KEYWORDS = frozenset({
    "goal", "stakeholder", "consequence", "vulnerability", "constraint",
    "requirement", "action", "feedback", "pcca", "scenario", *NODE_KEYWORDS,
})

# clause keyword -> link kind it sugars to (the item is always the link source)
_LINK_CLAUSES = {
    "caused_by": LinkKind.CAUSED_BY,
    "prevents": LinkKind.PREVENTS,
    "enforced_by": LinkKind.ENFORCED_BY,
    "violates": LinkKind.VIOLATES,
    "explains": LinkKind.EXPLAINS,
}

_CLAUSES = {
    "stakeholder": ("role",),
    "consequence": ("linddun", "caused_by"),
    "constraint": ("prevents", "enforced_by", "origin"),
    "action": ("from", "data"),
    "feedback": ("from", "data"),
    "pcca": ("action", "category", "violates", "assessed", "rationale"),
    "scenario": ("explains",),
}

# --------------------------------------------------------------------------
# lexing


@dataclass(frozen=True)
class Token:
    kind: str  # "word", "string", "comma", "eof"
    value: str
    span: SourceSpan


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>\#[^\n]*)"
    r"|(?P<word>[A-Za-z][A-Za-z0-9_-]*)"
    r"|(?P<comma>,)"
    r"|(?P<quote>\")"
    r"|(?P<bad>[^\s\",\#]+)"
)

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}


class _Source:
    def __init__(self, text: str, file_name: str) -> None:
        self.text = text
        self.file = file_name
        self._line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def position(self, offset: int) -> tuple[int, int]:
        line = bisect.bisect_right(self._line_starts, offset) - 1
        return line + 1, offset - self._line_starts[line] + 1

    def span(self, start: int, end: int) -> SourceSpan:
        sl, sc = self.position(start)
        el, ec = self.position(end)
        return SourceSpan(self.file, sl, sc, el, ec)


def _lex(src: _Source, diagnostics: list[Diagnostic]) -> list[Token]:
    text = src.text
    tokens: list[Token] = []
    pos = 0
    if text.startswith("\ufeff"):
        diagnostics.append(Diagnostic(
            "P004", Severity.ERROR,
            "byte order mark is not allowed; save the file as UTF-8 without BOM",
            src.span(0, 1)))
        pos = 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            pos = m.end()
        elif kind == "word":
            tokens.append(Token("word", m.group(), src.span(pos, m.end())))
            pos = m.end()
        elif kind == "comma":
            tokens.append(Token("comma", ",", src.span(pos, m.end())))
            pos = m.end()
        elif kind == "bad":
            diagnostics.append(Diagnostic(
                "P002", Severity.ERROR, f"invalid token {m.group()!r}", src.span(pos, m.end())))
            pos = m.end()
        else:
            pos = _lex_string(src, pos, tokens, diagnostics)
    tokens.append(Token("eof", "", src.span(len(text), len(text))))
    return tokens


def _lex_string(src: _Source, start: int, tokens: list[Token], diagnostics: list[Diagnostic]) -> int:
    text = src.text
    out: list[str] = []
    pos = start + 1
    while True:
        if pos >= len(text) or text[pos] == "\n":
            diagnostics.append(Diagnostic(
                "P001", Severity.ERROR, "unterminated string", src.span(start, pos)))
            tokens.append(Token("string", "".join(out), src.span(start, pos)))
            return pos
        ch = text[pos]
        if ch == '"':
            tokens.append(Token("string", "".join(out), src.span(start, pos + 1)))
            return pos + 1
        if ch == "\\":
            nxt = text[pos + 1] if pos + 1 < len(text) else ""
            if nxt in _ESCAPES and nxt:
                out.append(_ESCAPES[nxt])
                pos += 2
                continue
            diagnostics.append(Diagnostic(
                "P003", Severity.ERROR, f"invalid escape sequence '\\{nxt}'",
                src.span(pos, min(pos + 2, len(text)))))
            pos += 1
            continue
        out.append(ch)
        pos += 1


# --------------------------------------------------------------------------
# syntax


class _SyntaxError(Exception):
    def __init__(self, diagnostic: Diagnostic) -> None:
        self.diagnostic = diagnostic


@dataclass
class _Item:
    keyword: str
    id: Token
    text: Token
    span: SourceSpan
    clauses: dict[str, list[Token]] = field(default_factory=dict)
    # parsed enum values keyed by clause name
    values: dict[str, object] = field(default_factory=dict)


class _Parser:
    def __init__(self, tokens: list[Token], diagnostics: list[Diagnostic]) -> None:
        self.tokens = tokens
        self.pos = 0
        self.diagnostics = diagnostics

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[Token] = None, code: str = "P010"):
        tok = tok or self.peek()
        raise _SyntaxError(Diagnostic(code, Severity.ERROR, message, tok.span))

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.value) if tok.kind != "string" else "a string"
            self.fail(f"expected {what}, found {found}")
        return self.advance()

    def at_item_start(self) -> bool:
        tok = self.peek()
        return (tok.kind == "word" and tok.value in ITEM_KEYWORDS
                and self.peek(1).kind == "word" and self.peek(2).kind == "string")

    def recover(self, start: int) -> None:
        if self.pos == start:
            self.advance()
        while self.peek().kind != "eof" and not self.at_item_start():
            self.advance()

    def parse(self) -> tuple[Optional[Token], Optional[str], list[_Item]]:
        name = description = None
        start = self.pos
        try:
            head = self.peek()
            if head.kind == "word" and head.value == "model":
                self.advance()
                name = self.expect("string", "model name string")
                if self.peek().kind == "word" and self.peek().value == "description":
                    self.advance()
                    description = self.expect("string", "description string").value
            else:
                self.fail("file must start with 'model \"<name>\"'")
        except _SyntaxError as err:
            self.diagnostics.append(err.diagnostic)
            if not self.at_item_start():
                self.recover(start)

        items: list[_Item] = []
        while self.peek().kind != "eof":
            start = self.pos
            try:
                items.append(self.item())
            except _SyntaxError as err:
                self.diagnostics.append(err.diagnostic)
                self.recover(start)
        return name, description, items

    def item(self) -> _Item:
        kw = self.peek()
        if kw.kind != "word":
            self.fail("expected an item keyword")
        if kw.value not in ITEM_KEYWORDS:
            if kw.value == "model":
                self.fail("duplicate 'model' header", kw)
            self.fail(f"unknown keyword {kw.value!r}", kw, code="P011")
        self.advance()
        ident = self.expect("word", f"identifier after '{kw.value}'")
        text = self.expect("string", f"quoted text after '{ident.value}'")
        item = _Item(kw.value, ident, text, kw.span)
        allowed = _CLAUSES.get(kw.value, ())
        while True:
            tok = self.peek()
            if tok.kind != "word" or tok.value not in allowed:
                break
            # `action` opens both a pcca clause and a new item; items have WORD STRING after it
            if tok.value == "action" and self.peek(2).kind == "string":
                break
            if tok.value in item.clauses:
                self.fail(f"duplicate '{tok.value}' clause", tok, code="P012")
            self.advance()
            item.clauses[tok.value] = self.clause(item, tok)
        if kw.value in ("action", "feedback") and "from" not in item.clauses:
            self.fail(f"expected 'from <node> to <node>' in {kw.value} {ident.value!r}")
        if kw.value == "pcca":
            for required in ("action", "category"):
                if required not in item.clauses:
                    self.fail(f"expected '{required}' clause in pcca {ident.value!r}")
        last = self.tokens[self.pos - 1].span
        item.span = SourceSpan(kw.span.file, kw.span.start_line, kw.span.start_col,
                               last.end_line, last.end_col)
        return item

    def clause(self, item: _Item, kw: Token) -> list[Token]:
        name = kw.value
        if name in _LINK_CLAUSES or name == "linddun":
            toks = self.word_list(f"identifier after '{name}'")
            if name == "linddun":
                item.values[name] = self.categories(toks)
            return toks
        if name == "data":
            toks = [self.tag()]
            while self.peek().kind == "comma":
                self.advance()
                toks.append(self.tag())
            return toks
        if name == "from":
            src = self.expect("word", "node identifier after 'from'")
            to_kw = self.peek()
            if not (to_kw.kind == "word" and to_kw.value == "to"):
                self.fail("expected 'to'")
            self.advance()
            dst = self.expect("word", "node identifier after 'to'")
            return [src, dst]
        if name in ("role", "rationale"):
            return [self.expect("string", f"quoted text after '{name}'")]
        tok = self.expect("word", f"value after '{name}'")
        enum_type, label = {
            "action": (None, None),
            "category": (GuideCategory, "guide category"),
            "assessed": (Assessment, "assessment"),
            "origin": (ConstraintOrigin, "constraint origin"),
        }[name]
        if enum_type is not None:
            item.values[name] = self.enum_value(enum_type, tok, label)
        return [tok]

    def word_list(self, what: str) -> list[Token]:
        toks = [self.expect("word", what)]
        while self.peek().kind == "comma":
            self.advance()
            toks.append(self.expect("word", what))
        return toks

    def tag(self) -> Token:
        tok = self.peek()
        if tok.kind not in ("word", "string"):
            self.fail("expected data tag")
        return self.advance()

    def enum_value(self, enum_type, tok: Token, label: str):
        try:
            value = enum_type.parse(tok.value)
        except ValueError:
            choices = ", ".join(m.keyword for m in enum_type)
            self.fail(f"unknown {label} {tok.value!r} (expected one of: {choices})", tok, code="P023")
        if enum_type is Assessment and value is Assessment.UNASSESSED:
            self.fail("'assessed' takes hazardous or not_applicable; omit it for unassessed entries",
                      tok, code="P023")
        return value

    def categories(self, toks: list[Token]) -> list[LinddunCategory]:
        seen: list[LinddunCategory] = []
        for tok in toks:
            try:
                cat = LinddunCategory.parse(tok.value)
            except ValueError:
                self.fail(f"unknown LINDDUN category {tok.value!r}", tok, code="P023")
            if cat in seen:
                self.fail(f"duplicate LINDDUN category {tok.value!r}", tok, code="P026")
            seen.append(cat)
        return seen


# --------------------------------------------------------------------------
# semantic analysis


class ParseResult(NamedTuple):
    model: Optional[AnalysisModel]
    diagnostics: list[Diagnostic]


def _err(code: str, message: str, span: SourceSpan, *ids: str) -> Diagnostic:
    return Diagnostic(code, Severity.ERROR, message, span, tuple(ids))


def _build(name: Optional[Token], description: Optional[str], items: list[_Item],
           diags: list[Diagnostic]) -> AnalysisModel:
    model = AnalysisModel(name=name.value if name and name.value.strip() else "unnamed")
    model.description = description
    if name is not None and not name.value.strip():
        diags.append(_err("P024", "model name must be non-empty", name.span))

    first_site: dict[str, _Item] = {}
    unique: list[_Item] = []
    for item in items:
        ident = item.id.value
        if ident in first_site:
            diags.append(_err("P020", f"duplicate identifier {ident!r} (first declared at "
                                      f"{first_site[ident].id.span})", item.id.span, ident))
            continue
        first_site[ident] = item
        if not item.text.value.strip():
            what = "label" if item.keyword in NODE_KEYWORDS or item.keyword in ("action", "feedback") \
                else "name" if item.keyword == "stakeholder" else "statement"
            diags.append(_err("P024", f"{item.keyword} {ident!r} has an empty {what}",
                              item.text.span, ident))
            continue
        unique.append(item)

    declared_kind: dict[str, ArtifactKind] = {}
    for item in unique:
        declared_kind[item.id.value] = {
            "goal": ArtifactKind.GOAL, "stakeholder": ArtifactKind.STAKEHOLDER,
            "consequence": ArtifactKind.ADVERSE_CONSEQUENCE,
            "vulnerability": ArtifactKind.VULNERABILITY,
            "constraint": ArtifactKind.PRIVACY_CONSTRAINT,
            "requirement": ArtifactKind.DESIGN_REQUIREMENT,
            "action": ArtifactKind.CONTROL_ACTION, "feedback": ArtifactKind.FEEDBACK,
            "pcca": ArtifactKind.PCCA, "scenario": ArtifactKind.CAUSAL_SCENARIO,
        }.get(item.keyword, ArtifactKind.NODE)

    def check_ref(tok: Token, expected: ArtifactKind, context: str) -> bool:
        kind = declared_kind.get(tok.value)
        if kind is None:
            diags.append(_err("P021", f"{context} refers to undeclared identifier {tok.value!r}",
                              tok.span, tok.value))
            return False
        if kind is not expected:
            diags.append(_err("P022", f"{context} expects a {expected.value}, but {tok.value!r} "
                                      f"is a {kind.value}", tok.span, tok.value))
            return False
        return True

    def add(item: _Item, artifact) -> None:
        try:
            model.add_artifact(artifact, span=item.span)
        except ModelError as exc:
            code = "P026" if isinstance(artifact, Pcca) else "P024"
            diags.append(_err(code, str(exc), item.id.span, item.id.value))

    # plain artifacts and nodes first, so edges and PCCAs can refer to them
    for item in unique:
        ident, text = item.id.value, item.text.value
        kw = item.keyword
        if kw == "goal":
            add(item, Goal(ident, text))
        elif kw == "stakeholder":
            role = item.clauses.get("role")
            add(item, Stakeholder(ident, text, role[0].value if role else None))
        elif kw == "consequence":
            tags = item.values.get("linddun")
            if not tags:
                diags.append(_err("P025", f"consequence {ident!r} needs at least one LINDDUN "
                                          "category ('linddun <category>')", item.id.span, ident))
                continue
            add(item, AdverseConsequence(ident, text, frozenset(tags)))
        elif kw == "vulnerability":
            add(item, Vulnerability(ident, text))
        elif kw == "constraint":
            origin = item.values.get("origin", ConstraintOrigin.ANALYST_AUTHORED)
            add(item, PrivacyConstraint(ident, text, origin))
        elif kw == "requirement":
            add(item, DesignRequirement(ident, text))
        elif kw == "scenario":
            add(item, CausalScenario(ident, text))
        elif kw in NODE_KEYWORDS:
            add(item, Node(ident, NODE_KEYWORDS[kw], text))

    for item in unique:
        if item.keyword not in ("action", "feedback"):
            continue
        src, dst = item.clauses["from"]
        context = f"{item.keyword} {item.id.value!r}"
        ok = check_ref(src, ArtifactKind.NODE, context)
        ok = check_ref(dst, ArtifactKind.NODE, context) and ok
        tags = item.clauses.get("data", [])
        for tag in tags:
            if not tag.value.strip():
                diags.append(_err("P024", "data tags must be non-empty", tag.span, item.id.value))
                ok = False
        if ok:
            kind = EdgeKind.CONTROL_ACTION if item.keyword == "action" else EdgeKind.FEEDBACK
            add(item, Edge(item.id.value, kind, item.text.value, src.value, dst.value,
                           frozenset(t.value for t in tags)))

    for item in unique:
        if item.keyword != "pcca":
            continue
        action = item.clauses["action"][0]
        if check_ref(action, ArtifactKind.CONTROL_ACTION, f"pcca {item.id.value!r}") \
                and action.value in model:
            rationale = item.clauses.get("rationale")
            add(item, Pcca(
                item.id.value, item.text.value, action.value, item.values["category"],
                item.values.get("assessed", Assessment.UNASSESSED),
                rationale[0].value if rationale else None,
            ))

    for item in unique:
        if item.id.value not in model:
            continue
        for clause, kind in _LINK_CLAUSES.items():
            for tok in item.clauses.get(clause, ()):
                expected = kind.signature[1]
                if check_ref(tok, expected, f"'{clause}' of {item.id.value!r}") and tok.value in model:
                    model.link(kind, item.id.value, tok.value)
    return model


def parse(source: Union[str, bytes], file_name: str = "<input>") -> ParseResult:
    """Parse ``.stpa`` text into a model.

    Returns ``(model, diagnostics)``; ``model`` is ``None`` whenever any
    diagnostic has error severity.
    """
    diagnostics: list[Diagnostic] = []
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            src = _Source("", file_name)
            return ParseResult(None, [Diagnostic(
                "P004", Severity.ERROR, f"input is not valid UTF-8 (byte offset {exc.start})",
                src.span(0, 0))])
    src = _Source(source, file_name)
    tokens = _lex(src, diagnostics)
    name, description, items = _Parser(tokens, diagnostics).parse()
    model = _build(name, description, items, diagnostics)
    if name is None or has_errors(diagnostics):
        return ParseResult(None, diagnostics)
    return ParseResult(model, diagnostics)


# --------------------------------------------------------------------------
# canonical formatting


def quote(text: str) -> str:
    out = text.replace("\\", "\\\\").replace('"', '\\"')
    out = out.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")
    return f'"{out}"'


def _tag(text: str) -> str:
    return text if ID_PATTERN.match(text) else quote(text)


def _text_of(artifact) -> str:
    if isinstance(artifact, Stakeholder):
        return artifact.name
    if isinstance(artifact, (Node, Edge)):
        return artifact.label
    return artifact.statement


def format_model(model: AnalysisModel) -> str:
    """Render ``model`` in canonical ``.stpa`` form (method-step order)."""
    head = [f"model {quote(model.name)}"]
    if model.description is not None:
        head.append(f"  description {quote(model.description)}")
    blocks = ["\n".join(head)]

    def block(keyword: str, artifact, *clauses: str) -> None:
        lines = [f"{keyword} {artifact.id} {quote(_text_of(artifact))}"]
        lines.extend(f"  {c}" for c in clauses if c)
        blocks.append("\n".join(lines))

    def links(artifact_id: str, clause: str) -> str:
        targets = model.neighbors(artifact_id, _LINK_CLAUSES[clause])
        return f"{clause} {', '.join(targets)}" if targets else ""

    for g in model.goals:
        block("goal", g)
    for s in model.stakeholders:
        block("stakeholder", s, f"role {quote(s.role_note)}" if s.role_note is not None else "")
    for c in model.consequences:
        tags = [t.keyword for t in LinddunCategory if t in c.linddun_tags]
        block("consequence", c, f"linddun {', '.join(tags)}" if tags else "", links(c.id, "caused_by"))
    for v in model.vulnerabilities:
        block("vulnerability", v)
    for c in model.constraints:
        origin = f"origin {c.origin.keyword}" if c.origin is not ConstraintOrigin.ANALYST_AUTHORED else ""
        block("constraint", c, links(c.id, "prevents"), links(c.id, "enforced_by"), origin)
    for r in model.requirements:
        block("requirement", r)
    for n in model.structure.nodes:
        block(_NODE_KEYWORD_BY_KIND[n.kind], n)
    for e in model.structure.edges:
        data = ""
        if e.data_tags:
            data = "data " + ", ".join(_tag(t) for t in sorted(e.data_tags))
        keyword = "action" if e.kind is EdgeKind.CONTROL_ACTION else "feedback"
        block(keyword, e, f"from {e.source} to {e.target}", data)
    for p in model.pccas:
        assessed = f"assessed {p.assessment.keyword}" if p.assessment is not Assessment.UNASSESSED else ""
        block("pcca", p, f"action {p.action}", f"category {p.category.keyword}",
              links(p.id, "violates"), assessed,
              f"rationale {quote(p.rationale)}" if p.rationale is not None else "")
    for s in model.scenarios:
        block("scenario", s, links(s.id, "explains"))
    return "\n\n".join(blocks) + "\n"


# --------------------------------------------------------------------------
# JSON interchange (reader side; the writer lives in reporting)


def model_from_dict(doc: dict) -> AnalysisModel:
    """Rebuild a model from an exported document; raises on malformed input."""
    model = AnalysisModel(name=doc["model"])
    model.description = doc.get("description")
    for g in doc["goals"]:
        model.add_artifact(Goal(g["id"], g["statement"]))
    for s in doc["stakeholders"]:
        model.add_artifact(Stakeholder(s["id"], s["name"], s.get("role")))
    for c in doc["consequences"]:
        tags = frozenset(LinddunCategory.parse(t) for t in c["linddun"])
        model.add_artifact(AdverseConsequence(c["id"], c["statement"], tags))
    for v in doc["vulnerabilities"]:
        model.add_artifact(Vulnerability(v["id"], v["statement"]))
    for c in doc["constraints"]:
        origin = ConstraintOrigin.parse(c.get("origin", ConstraintOrigin.ANALYST_AUTHORED.value))
        model.add_artifact(PrivacyConstraint(c["id"], c["statement"], origin))
    for r in doc["requirements"]:
        model.add_artifact(DesignRequirement(r["id"], r["statement"]))
    structure = doc["structure"]
    for n in structure["nodes"]:
        model.add_artifact(Node(n["id"], NodeKind(n["kind"]), n["label"]))
    for e in structure["edges"]:
        data = e.get("data", [])
        if not all(isinstance(t, str) and t.strip() for t in data):
            raise ValueError(f"edge {e['id']!r} has an empty or non-text data tag")
        model.add_artifact(Edge(e["id"], EdgeKind(e["kind"]), e["label"], e["from"], e["to"],
                                frozenset(data)))
    for p in doc["pccas"]:
        model.add_artifact(Pcca(p["id"], p["statement"], p["action"],
                                GuideCategory.parse(p["category"]),
                                Assessment.parse(p["assessment"]), p.get("rationale")))
    for s in doc["scenarios"]:
        model.add_artifact(CausalScenario(s["id"], s["statement"]))
    for link in doc["links"]:
        model.link(LinkKind(link["kind"]), link["from"], link["to"])
    return model


def load_json(source: Union[str, bytes]) -> ParseResult:
    def fail(code: str, message: str) -> ParseResult:
        return ParseResult(None, [Diagnostic(code, Severity.ERROR, message)])

    try:
        doc = json.loads(source)
    except (ValueError, TypeError) as exc:
        return fail("J001", f"malformed JSON document: {exc}")
    if not isinstance(doc, dict):
        return fail("J001", "malformed JSON document: top level must be an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        return fail("J002", f"unsupported schema version {version!r} (expected {SCHEMA_VERSION})")
    try:
        return ParseResult(model_from_dict(doc), [])
    except KeyError as exc:
        return fail("J003", f"malformed JSON document: missing key {exc.args[0]!r}")
    except (ModelError, ValueError, TypeError, AttributeError) as exc:
        return fail("J003", f"invalid model document: {exc}")
