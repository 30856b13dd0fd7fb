"""Tagged-token data model and the neutral TSV corpus format.

A corpus file holds one token per line::

    surface<TAB>lemma<TAB>raw_pos<TAB>inflection[<TAB>origin]

Blank lines end a sentence and ``#doc <id>`` lines start a new document.
Raw POS strings are translated to :class:`CanonicalTag` through a
:class:`TagMap`, so any tagger whose output can be written in this shape
can feed the extractor.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import CorpusParseError, TagMapError

#: Separator used to join lemmas into term keys; forbidden inside lemmas.
KEY_SEPARATOR = "‖"

NO_INFLECTION = "-"
DOC_DIRECTIVE = "#doc"
DEFAULT_DOC_ID = "default"


class CanonicalTag(enum.Enum):
    N = "N"
    VN = "VN"
    AN = "AN"
    PFX = "PFX"
    SFX = "SFX"
    SFX_STEM = "SFX_STEM"
    SFX_NOM = "SFX_NOM"
    V_INF = "V_INF"
    A_INF = "A_INF"
    ADJ = "ADJ"
    NUM = "NUM"
    SYM = "SYM"
    NO = "NO"
    OTHER = "OTHER"

    def __str__(self) -> str:
        return self.value


INFLECTING_TAGS = frozenset({CanonicalTag.V_INF, CanonicalTag.A_INF})


class Origin(enum.Enum):
    IW = "IW"  # imported word
    WJ = "WJ"  # traditional Japanese word


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    tag: CanonicalTag
    inflection: str = ""
    origin: Origin | None = None

    def __post_init__(self) -> None:
        if not self.surface or not self.lemma:
            raise ValueError("surface and lemma must be non-empty")
        if self.inflection and self.tag not in INFLECTING_TAGS:
            raise ValueError(f"tag {self.tag} does not carry an inflection")
        if KEY_SEPARATOR in self.lemma:
            raise ValueError(f"lemma {self.lemma!r} contains the key separator")
        for value in (self.surface, self.lemma, self.inflection):
            if "\t" in value or "\n" in value or "\r" in value:
                raise ValueError(f"field {value!r} contains a tab or newline")


Sentence = tuple[Token, ...]


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[tuple[Token, ...], ...] = ()

    def __post_init__(self) -> None:
        if any(len(s) == 0 for s in self.sentences):
            raise ValueError("empty sentences are not stored")


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...] = ()

    def __post_init__(self) -> None:
        ids = [d.doc_id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise ValueError("document identifiers must be unique")

    def sentences(self) -> Iterator[tuple[str, int, tuple[Token, ...]]]:
        """Yield ``(doc_id, sentence_index, tokens)`` in corpus order."""
        for doc in self.documents:
            for i, sent in enumerate(doc.sentences):
                yield doc.doc_id, i, sent

    def token_count(self) -> int:
        return sum(len(s) for _, _, s in self.sentences())


@dataclass(frozen=True)
class TagMap:
    """Raw tagger POS (optionally with an inflection type) to CanonicalTag.

    ``default`` is the tag for unmapped raw tags, or ``None`` for the
    strict-fail policy.
    """

    entries: Mapping[tuple[str, str | None], CanonicalTag] = field(default_factory=dict)
    default: CanonicalTag | None = CanonicalTag.OTHER

    @classmethod
    def identity(cls) -> "TagMap":
        return cls({(t.value, None): t for t in CanonicalTag})

    @classmethod
    def parse(cls, text: str) -> "TagMap":
        entries: dict[tuple[str, str | None], CanonicalTag] = {}
        default: CanonicalTag | None = CanonicalTag.OTHER
        for lineno, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            lhs, sep, rhs = line.rpartition("->")
            if not sep:
                raise TagMapError(f"line {lineno}: expected 'raw_pos -> TAG'", lineno)
            lhs, rhs = lhs.strip(), rhs.strip()
            if lhs == "*":
                if rhs == "FAIL":
                    default = None
                elif rhs == "OTHER":
                    default = CanonicalTag.OTHER
                else:
                    raise TagMapError(f"line {lineno}: default must be OTHER or FAIL", lineno)
                continue
            try:
                tag = CanonicalTag(rhs)
            except ValueError:
                raise TagMapError(f"line {lineno}: unknown canonical tag {rhs!r}", lineno) from None
            parts = [p.strip() for p in lhs.split("\t")]
            if len(parts) == 1:
                entries[(parts[0], None)] = tag
            elif len(parts) == 2:
                entries[(parts[0], parts[1])] = tag
            else:
                raise TagMapError(f"line {lineno}: too many fields on left side", lineno)
        return cls(entries, default)


def map_tag(raw: str, infl: str, tagmap: TagMap, strict: bool = False) -> CanonicalTag:
    """Look up ``(raw, infl)`` first, then ``raw`` alone."""
    tag = tagmap.entries.get((raw, infl)) if infl else None
    if tag is None:
        tag = tagmap.entries.get((raw, None))
    if tag is not None:
        return tag
    if strict or tagmap.default is None:
        raise TagMapError(f"unmapped raw tag {raw!r}")
    return tagmap.default


def parse_tagged_stream(
    text: str | Iterable[str], tagmap: TagMap | None = None, strict: bool = False
) -> Corpus:
    """Parse the TSV corpus format into a :class:`Corpus`."""
    if tagmap is None:
        tagmap = TagMap.identity()
    raw_lines = text.split("\n") if isinstance(text, str) else text
    lines = (l.rstrip("\r\n") for l in raw_lines)

    documents: list[Document] = []
    doc_id: str | None = None
    sentences: list[tuple[Token, ...]] = []
    current: list[Token] = []
    seen_ids: set[str] = set()

    def close_sentence() -> None:
        if current:
            sentences.append(tuple(current))
            current.clear()

    def close_document() -> None:
        close_sentence()
        if doc_id is not None:
            documents.append(Document(doc_id, tuple(sentences)))
        sentences.clear()

    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            close_sentence()
            continue
        if "\t" not in line and line.split(None, 1)[0] == DOC_DIRECTIVE:
            close_document()
            parts = line.split(None, 1)
            if len(parts) < 2:
                raise CorpusParseError(f"line {lineno}: #doc without identifier", lineno)
            doc_id = parts[1].strip()
            if doc_id in seen_ids:
                raise CorpusParseError(f"line {lineno}: duplicate document id {doc_id!r}", lineno)
            seen_ids.add(doc_id)
            continue
        fields = line.split("\t")
        if len(fields) not in (4, 5):
            raise CorpusParseError(
                f"line {lineno}: expected 4 or 5 tab-separated fields, got {len(fields)}", lineno
            )
        surface, lemma, raw_pos, infl = fields[:4]
        infl = "" if infl == NO_INFLECTION else infl
        origin = None
        if len(fields) == 5 and fields[4] not in ("", NO_INFLECTION):
            try:
                origin = Origin(fields[4])
            except ValueError:
                raise CorpusParseError(f"line {lineno}: unknown origin {fields[4]!r}", lineno) from None
        try:
            tag = map_tag(raw_pos, infl, tagmap, strict)
        except TagMapError as exc:
            raise TagMapError(f"line {lineno}: {exc}", lineno) from None
        if tag not in INFLECTING_TAGS:
            infl = ""
        try:
            token = Token(surface, lemma, tag, infl, origin)
        except ValueError as exc:
            raise CorpusParseError(f"line {lineno}: {exc}", lineno) from None
        if doc_id is None:
            doc_id = DEFAULT_DOC_ID
            seen_ids.add(doc_id)
        current.append(token)
    close_document()
    return Corpus(tuple(documents))


def format_token(token: Token) -> str:
    fields = [token.surface, token.lemma, token.tag.value, token.inflection or NO_INFLECTION]
    if token.origin is not None:
        fields.append(token.origin.value)
    return "\t".join(fields)


def serialize_corpus(corpus: Corpus) -> str:
    out: list[str] = []
    for doc in corpus.documents:
        out.append(f"{DOC_DIRECTIVE} {doc.doc_id}\n")
        for sent in doc.sentences:
            out.extend(format_token(t) + "\n" for t in sent)
            out.append("\n")
    return "".join(out)


def term_list(corpus: Corpus) -> list[tuple[Token, ...]]:
    """Every sentence of ``corpus`` as one term, for gold term list files."""
    return [sent for _, _, sent in corpus.sentences()]
