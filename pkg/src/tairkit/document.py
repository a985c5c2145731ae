"""Annotated-clause document model.

Parses the line-oriented input format into an immutable clause tree and
provides sentence-level access for downstream extraction.

Format summary (one directive per line, free text attaches to the nearest
preceding directive, blank lines separate paragraphs)::

    #doc id=ai-act title="..." type=regulation base=https://example.org/tair/
    #clause id=art3 kind=definitional heading="Definitions"
    #def term="provider" sub="1" refs="placing on the market|ext:foreign term"
    a natural or legal person that develops an AI system ...
    #clause id=art9.2 kind=normative heading="Risk management system"
    The risk management system shall consist of ...

`#doc` must appear exactly once, before any clause. `#def` is only valid
inside definitional clauses. Clause nesting follows dotted identifiers:
"4.1" nests under "4". `refs` is a `|`-separated list of cross-referenced
terms; entries prefixed `ext:` point outside the document. `sub` is the
entry's position in the terminology list and defaults to its 1-based index.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import ClauseNotFoundError, ParseError

__all__ = [
    "Clause",
    "ClauseKind",
    "DefinitionEntry",
    "DocType",
    "DocumentSource",
    "clause_at",
    "format_document",
    "parse_document",
    "sentences_of",
]


class DocType(str, Enum):
    REGULATION = "regulation"
    STANDARD = "standard"
    GUIDELINE = "guideline"


class ClauseKind(str, Enum):
    NORMATIVE = "normative"
    DEFINITIONAL = "definitional"
    INFORMATIVE = "informative"


@dataclass(frozen=True)
class DefinitionEntry:
    """One defined term inside a definitional clause."""

    term: str
    definition_text: str
    subclause_path: str
    cross_refs: tuple[str, ...] = ()
    external_refs: tuple[str, ...] = ()
    source_clause: str = ""


@dataclass(frozen=True)
class Clause:
    clause_id: str
    kind: ClauseKind
    heading: str | None = None
    paragraphs: tuple[str, ...] = ()
    defs: tuple[DefinitionEntry, ...] = ()
    children: tuple["Clause", ...] = ()


@dataclass(frozen=True)
class DocumentSource:
    """A parsed regulation/standard as an ordered tree of clauses."""

    doc_id: str
    title: str
    doc_type: DocType
    clauses: tuple[Clause, ...]
    base_iri: str

    def iter_clauses(self):
        """All clauses in depth-first (source) order."""

        def walk(clause: Clause):
            yield clause
            for child in clause.children:
                yield from walk(child)

        for root in self.clauses:
            yield from walk(root)

    def clause(self, clause_id: str) -> Clause:
        return clause_at(self, clause_id)


# --------------------------------------------------------------------------
# Parsing

_DOC_ID_RE = re.compile(r"^[a-z0-9-]+$")
_CLAUSE_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9.-]*$")
_ATTR_RE = re.compile(r'(\w+)=(?:"([^"]*)"|(\S+))')

_DIRECTIVE_KEYS = {
    "doc": ({"id", "title", "type"}, {"base"}),
    "clause": ({"id", "kind"}, {"heading"}),
    "def": ({"term"}, {"refs", "sub"}),
}


def _parse_attrs(name: str, rest: str, line: int) -> dict[str, str]:
    attrs: dict[str, str] = {}
    consumed = 0
    for m in _ATTR_RE.finditer(rest):
        if rest[consumed : m.start()].strip():
            raise ParseError(f"malformed attribute text in #{name} directive", line)
        key = m.group(1)
        if key in attrs:
            raise ParseError(f"duplicate attribute '{key}' in #{name} directive", line)
        attrs[key] = m.group(2) if m.group(2) is not None else m.group(3)
        consumed = m.end()
    if rest[consumed:].strip():
        raise ParseError(f"malformed attribute text in #{name} directive", line)
    required, optional = _DIRECTIVE_KEYS[name]
    missing = required - attrs.keys()
    if missing:
        raise ParseError(f"#{name} directive missing {sorted(missing)}", line)
    unknown = attrs.keys() - required - optional
    if unknown:
        raise ParseError(f"#{name} directive has unknown attributes {sorted(unknown)}", line)
    return attrs


class _ClauseBuilder:
    def __init__(self, clause_id, kind, heading, line):
        self.clause_id = clause_id
        self.kind = kind
        self.heading = heading
        self.line = line
        self.paragraphs: list[str] = []
        self.defs: list[dict] = []
        self.children: list[_ClauseBuilder] = []
        self.parent: _ClauseBuilder | None = None

    def ancestors(self):
        node = self.parent
        while node is not None:
            yield node
            node = node.parent


def _id_extends(parent_id: str, child_id: str) -> bool:
    return child_id.startswith(parent_id + ".")


def parse_document(text: str, base_iri: str | None = None) -> DocumentSource:
    """Parse annotated-clause text into a DocumentSource.

    ``base_iri`` overrides the ``base=`` attribute of the ``#doc`` directive;
    one of the two must be present.
    """
    doc_attrs: dict[str, str] | None = None
    builders: list[_ClauseBuilder] = []
    stack: list[_ClauseBuilder] = []
    seen_ids: dict[str, int] = {}
    current_def: dict | None = None
    para_lines: list[str] = []

    def flush_paragraph():
        nonlocal para_lines
        if not para_lines:
            return
        textblock = " ".join(para_lines)
        para_lines = []
        if current_def is not None:
            current_def["parts"].append(textblock)
        elif stack:
            stack[-1].paragraphs.append(textblock)

    def close_def():
        nonlocal current_def
        flush_paragraph()
        if current_def is None:
            return
        clause = stack[-1]
        term = current_def["term"]
        if any(d["term"].lower() == term.lower() for d in clause.defs):
            raise ParseError(
                f"duplicate term '{term}' in clause '{clause.clause_id}'", current_def["line"]
            )
        clause.defs.append(current_def)
        current_def = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#"):
            m = re.match(r"#(\w+)\b\s*", stripped)
            if not m or m.group(1) not in _DIRECTIVE_KEYS:
                raise ParseError(f"unknown directive '{stripped.split()[0]}'", lineno)
            name = m.group(1)
            attrs = _parse_attrs(name, stripped[m.end() :], lineno)
            if name == "doc":
                if doc_attrs is not None:
                    raise ParseError("duplicate #doc directive", lineno)
                if builders:
                    raise ParseError("#doc must be the first directive", lineno)
                doc_attrs = attrs
                continue
            if doc_attrs is None:
                raise ParseError(f"#{name} before #doc directive", lineno)
            if name == "clause":
                close_def()
                flush_paragraph()
                cid = attrs["id"]
                if not _CLAUSE_ID_RE.match(cid):
                    raise ParseError(f"invalid clause id '{cid}'", lineno)
                if cid in seen_ids:
                    raise ParseError(
                        f"duplicate clause id '{cid}' (first seen on line {seen_ids[cid]})", lineno
                    )
                seen_ids[cid] = lineno
                try:
                    kind = ClauseKind(attrs["kind"])
                except ValueError:
                    raise ParseError(f"unknown clause kind '{attrs['kind']}'", lineno) from None
                builder = _ClauseBuilder(cid, kind, attrs.get("heading"), lineno)
                while stack and not _id_extends(stack[-1].clause_id, cid):
                    stack.pop()
                if stack:
                    builder.parent = stack[-1]
                    stack[-1].children.append(builder)
                builders.append(builder)
                stack.append(builder)
            else:  # def
                if not stack or stack[-1].kind is not ClauseKind.DEFINITIONAL:
                    raise ParseError("#def outside a definitional clause", lineno)
                close_def()
                refs_raw = [r.strip() for r in attrs.get("refs", "").split("|") if r.strip()]
                current_def = {
                    "term": attrs["term"].strip(),
                    "sub": attrs.get("sub"),
                    "refs": [r for r in refs_raw if not r.startswith("ext:")],
                    "ext": [r[len("ext:") :].strip() for r in refs_raw if r.startswith("ext:")],
                    "parts": [],
                    "line": lineno,
                }
                if not current_def["term"]:
                    raise ParseError("#def with empty term", lineno)
        elif not stripped:
            flush_paragraph()
        else:
            if doc_attrs is None:
                raise ParseError("free text before #doc directive", lineno)
            if current_def is None and not stack:
                raise ParseError("free text outside any clause", lineno)
            para_lines.append(stripped)

    close_def()
    flush_paragraph()

    if doc_attrs is None:
        raise ParseError("no document directive (#doc) found", 1)

    doc_id = doc_attrs["id"]
    if not _DOC_ID_RE.match(doc_id):
        raise ParseError(f"invalid document id '{doc_id}': must match [a-z0-9-]+", 1)
    try:
        doc_type = DocType(doc_attrs["type"])
    except ValueError:
        raise ParseError(f"unknown document type '{doc_attrs['type']}'", 1) from None
    base = base_iri or doc_attrs.get("base")
    if not base:
        raise ParseError("no base IRI: pass one or add base= to the #doc directive", 1)

    # Definitional clauses must define something; mis-nested ids are rejected.
    all_terms = set()
    for b in builders:
        if b.kind is ClauseKind.DEFINITIONAL and not b.defs:
            raise ParseError(
                f"definitional clause '{b.clause_id}' contains no #def entries", b.line
            )
        for d in b.defs:
            all_terms.add(d["term"].lower())
    for b in builders:
        candidates = [o for o in builders if o is not b and _id_extends(o.clause_id, b.clause_id)]
        if candidates:
            best = max(candidates, key=lambda o: len(o.clause_id))
            if best not in b.ancestors():
                raise ParseError(
                    f"clause '{b.clause_id}' extends '{best.clause_id}' "
                    "but is not nested under it",
                    b.line,
                )
    for b in builders:
        for d in b.defs:
            for ref in d["refs"]:
                if ref.lower() not in all_terms:
                    raise ParseError(
                        f"cross-reference '{ref}' in term '{d['term']}' is not defined "
                        "in this document (prefix with 'ext:' for external terms)",
                        d["line"],
                    )

    def finish(b: _ClauseBuilder) -> Clause:
        entries = []
        for pos, d in enumerate(b.defs, start=1):
            entries.append(
                DefinitionEntry(
                    term=d["term"],
                    definition_text=" ".join(d["parts"]),
                    subclause_path=d["sub"] if d["sub"] else str(pos),
                    cross_refs=tuple(d["refs"]),
                    external_refs=tuple(d["ext"]),
                    source_clause=b.clause_id,
                )
            )
        return Clause(
            clause_id=b.clause_id,
            kind=b.kind,
            heading=b.heading,
            paragraphs=tuple(b.paragraphs),
            defs=tuple(entries),
            children=tuple(finish(c) for c in b.children),
        )

    roots = tuple(finish(b) for b in builders if b.parent is None)
    return DocumentSource(
        doc_id=doc_id,
        title=doc_attrs["title"],
        doc_type=doc_type,
        clauses=roots,
        base_iri=base,
    )


def clause_at(doc: DocumentSource, clause_id: str) -> Clause:
    """Exact-id clause lookup; raises ClauseNotFoundError for unknown ids."""
    for clause in doc.iter_clauses():
        if clause.clause_id == clause_id:
            return clause
    raise ClauseNotFoundError(f"no clause '{clause_id}' in document '{doc.doc_id}'")


def format_document(doc: DocumentSource) -> str:
    """Pretty-print a DocumentSource back to annotated-clause text.

    Re-parsing the output yields a structurally equal DocumentSource.
    """
    out: list[str] = [
        f'#doc id={doc.doc_id} title="{doc.title}" type={doc.doc_type.value} base={doc.base_iri}'
    ]
    for clause in doc.iter_clauses():
        line = f"#clause id={clause.clause_id} kind={clause.kind.value}"
        if clause.heading is not None:
            line += f' heading="{clause.heading}"'
        out.append(line)
        for i, para in enumerate(clause.paragraphs):
            if i:
                out.append("")
            out.append(para)
        for entry in clause.defs:
            refs = list(entry.cross_refs) + [f"ext:{r}" for r in entry.external_refs]
            line = f'#def term="{entry.term}" sub="{entry.subclause_path}"'
            if refs:
                line += f' refs="{"|".join(refs)}"'
            out.append(line)
            if entry.definition_text:
                out.append(entry.definition_text)
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# Sentence segmentation

# Tokens before a ". " boundary that do not end a sentence.
_ABBREVIATIONS = ("e.g.", "i.e.", "art.", "no.")

_ENUM_FAMILIES = (
    re.compile(r"\((?:[a-z0-9]|[ivx]{1,4}|[a-z]{2})\)"),  # (a) (iv) (aa)
    re.compile(r"(?<![0-9.])\d{1,2}\.(?=\s)"),  # 1.  2.
    re.compile(r"[—–]"),  # em/en dash items
)
_TRAILING_SEPARATOR = re.compile(r"\s*[;,]\s*(?:\b(?:and|or)\b)?\s*$", re.IGNORECASE)


def _split_boundaries(text: str, markers: str) -> list[str]:
    """Split after `<marker><space>` boundaries, honouring the abbreviation list."""
    units = []
    start = 0
    i = 0
    while i < len(text) - 1:
        ch = text[i]
        if ch in markers and text[i + 1] == " ":
            if ch == "." and text[: i + 1].lower().endswith(_ABBREVIATIONS):
                i += 1
                continue
            units.append(text[start : i + 1].strip())
            i += 2
            start = i
            continue
        i += 1
    tail = text[start:].strip()
    if tail:
        units.append(tail)
    return [u for u in units if u]


def _split_enumerated(chunk: str):
    """Detect `lead-in: (a) ...; (b) ...` and return (text up to colon, item bodies)."""
    colon = chunk.find(":")
    while colon != -1:
        rest = chunk[colon + 1 :]
        lead = rest.lstrip()
        for marker_re in _ENUM_FAMILIES:
            m = marker_re.match(lead)
            if m:
                bodies = []
                for piece in marker_re.split(rest):
                    piece = _TRAILING_SEPARATOR.sub("", piece.strip())
                    if piece and not marker_re.fullmatch(piece):
                        bodies.append(piece)
                if bodies:
                    return chunk[: colon + 1], bodies
        colon = chunk.find(":", colon + 1)
    return None


def _terminate(unit: str) -> str:
    unit = unit.strip()
    if unit and unit[-1] not in ".?!":
        unit += "."
    return unit


def split_sentence_units(paragraph: str) -> list[str]:
    """Split one paragraph into sentence units.

    Plain sentences split after ". ", "? ", "! " and "; "; enumerated lists
    ("lead-in: (a) x; (b) y.") expand to one unit per item, each carrying the
    lead-in stem with the list marker dropped. Enumeration detection runs
    first so item markers like "1." are never mistaken for sentence ends.
    """
    units: list[str] = []
    enum = _split_enumerated(paragraph)
    if enum is not None:
        stem_text, bodies = enum
        lead_chunks = _split_boundaries(stem_text, ".?!") or [stem_text]
        for chunk in lead_chunks[:-1]:
            units.extend(_split_boundaries(chunk, ";"))
        stem = lead_chunks[-1]
        units.extend(_terminate(f"{stem} {body}") for body in bodies)
        return units
    for chunk in _split_boundaries(paragraph, ".?!"):
        units.extend(_split_boundaries(chunk, ";"))
    return units


def sentences_of(clause: Clause) -> list[str]:
    """Ordered sentence units of a non-definitional clause."""
    if clause.kind is ClauseKind.DEFINITIONAL:
        raise ValueError("sentences_of is undefined for definitional clauses")
    units: list[str] = []
    for para in clause.paragraphs:
        units.extend(split_sentence_units(para))
    return units
