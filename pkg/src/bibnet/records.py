"""Bibliographic record model, name normalization, and corpus filtering."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class DocType(Enum):
    ARTICLE = "Article"
    BOOK_CHAPTER = "BookChapter"
    PROCEEDINGS_PAPER = "ProceedingsPaper"
    RETRACTED_PUBLICATION = "RetractedPublication"
    REVIEW = "Review"
    OTHER = "Other"


class EntityKind(Enum):
    """The four co-occurrence network levels."""

    AUTHOR = "author"
    INSTITUTION = "institution"
    COUNTRY = "country"
    KEYWORD = "keyword"


class InvalidNameError(ValueError):
    """Raised when a name normalizes to the empty string."""


@dataclass(frozen=True)
class BiblioRecord:
    """One publication, with all entity fields already normalized.

    ``affiliations`` keeps the raw address strings for provenance; the
    derived ``institutions`` and ``countries`` lists are what network
    construction consumes.  ``year`` is None when the source record
    carried no usable 4-digit year.
    """

    record_id: str
    authors: tuple[str, ...]
    affiliations: tuple[str, ...]
    institutions: tuple[str, ...]
    countries: tuple[str, ...]
    keywords: tuple[str, ...]
    year: int | None
    doc_type: DocType


# Keeps letters/digits/commas/spaces; everything else is stripped outright
# so re-normalizing an already-normalized name is a no-op.
_NAME_JUNK = re.compile(r"[^\w\s,]", re.UNICODE)
_WS = re.compile(r"\s+")
_COMMA = re.compile(r"\s*,\s*")

# Fixed alias table; UK home nations (england, scotland, wales,
# north ireland) stay distinct, matching how WOS reports them.
COUNTRY_ALIASES = {
    "peoples r china": "china",
    "united states": "usa",
    "united states of america": "usa",
}

# "CA 90095 USA"-style last tokens: US affiliations carry state + zip
# before the country instead of a separating comma.
_US_STATE_ZIP = re.compile(r"^[a-z]{2} \d{4,5}(-\d{4})? usa$")


def normalize_author_name(raw: str) -> str:
    """Canonicalize an author name for matching across records.

    Casefolds, drops punctuation except commas, collapses whitespace,
    and fixes comma spacing, so "Family, Given" source ordering is kept.
    Idempotent by construction.

    Raises:
        InvalidNameError: if nothing remains after normalization.
    """
    text = _NAME_JUNK.sub("", raw).casefold()
    text = _WS.sub(" ", text).strip()
    text = _COMMA.sub(", ", text).strip(", ")
    if not text:
        raise InvalidNameError(f"author name {raw!r} is empty after normalization")
    return text


def normalize_token(raw: str) -> str:
    """Casefold, trim, and collapse whitespace (keywords, institutions)."""
    return _WS.sub(" ", raw.casefold()).strip()


def normalize_country(raw: str) -> str:
    """Canonicalize a country token taken from an affiliation string."""
    token = normalize_token(raw).rstrip(".").strip()
    if _US_STATE_ZIP.match(token):
        token = "usa"
    return COUNTRY_ALIASES.get(token, token)


_BRACKETED_AUTHORS = re.compile(r"^\s*\[[^\]]*\]\s*")


def split_affiliation(raw: str) -> tuple[str | None, str | None]:
    """Split a WOS C1 address into (institution, country).

    The institution is the first comma-separated segment and the country
    the last one, after dropping the optional leading "[author; ...]"
    block.  Either side may come back None when the address is empty.
    """
    body = _BRACKETED_AUTHORS.sub("", raw).strip().rstrip(".")
    if not body:
        return None, None
    parts = [p.strip() for p in body.split(",")]
    parts = [p for p in parts if p]
    if not parts:
        return None, None
    institution = normalize_token(parts[0]) or None
    country = normalize_country(parts[-1]) or None
    return institution, country


def dedup(values) -> tuple[str, ...]:
    """Drop duplicates and empty strings, preserving first-seen order."""
    seen: set[str] = set()
    out: list[str] = []
    for v in values:
        if v and v not in seen:
            seen.add(v)
            out.append(v)
    return tuple(out)


def extract_entities(record: BiblioRecord, kind: EntityKind) -> list[str]:
    """Entity names of one level present in the record, no duplicates."""
    if kind is EntityKind.AUTHOR:
        return list(dedup(record.authors))
    if kind is EntityKind.INSTITUTION:
        return list(dedup(record.institutions))
    if kind is EntityKind.COUNTRY:
        return list(dedup(record.countries))
    if kind is EntityKind.KEYWORD:
        return list(dedup(record.keywords))
    raise ValueError(f"unknown entity kind: {kind!r}")


@dataclass(frozen=True)
class CorpusFilter:
    """Year-range and document-type selection; unset fields match all."""

    year_min: int | None = None
    year_max: int | None = None
    doc_types: frozenset[DocType] | None = None

    def __post_init__(self) -> None:
        if (
            self.year_min is not None
            and self.year_max is not None
            and self.year_min > self.year_max
        ):
            raise ValueError(
                f"year_min {self.year_min} exceeds year_max {self.year_max}"
            )

    def matches(self, record: BiblioRecord) -> bool:
        if self.year_min is not None or self.year_max is not None:
            if record.year is None:
                return False
            if self.year_min is not None and record.year < self.year_min:
                return False
            if self.year_max is not None and record.year > self.year_max:
                return False
        if self.doc_types is not None and record.doc_type not in self.doc_types:
            return False
        return True


def filter_corpus(
    records: list[BiblioRecord], corpus_filter: CorpusFilter
) -> list[BiblioRecord]:
    """Records passing the filter, original order preserved.

    Both year bounds are inclusive.  Records without a year are dropped
    whenever a year bound is set.
    """
    return [r for r in records if corpus_filter.matches(r)]
