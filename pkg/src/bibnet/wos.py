"""Parser for Web of Science tagged plain-text exports.

Format: each line is a 2-character tag, one space, and a value
("AU Pedrycz, Witold"); continuation lines start with exactly three
spaces and extend the current tag; "ER" closes a record and "EF" closes
the file.  Unrecognized tags are read and discarded.
"""

from __future__ import annotations

from typing import Iterable

from .records import (
    BiblioRecord,
    DocType,
    InvalidNameError,
    dedup,
    normalize_author_name,
    normalize_token,
    split_affiliation,
)


class ParseError(ValueError):
    """Malformed input; ``line`` is the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


DOC_TYPE_MAP = {
    "Article": DocType.ARTICLE,
    "Proceedings Paper": DocType.PROCEEDINGS_PAPER,
    "Review": DocType.REVIEW,
    "Book Chapter": DocType.BOOK_CHAPTER,
    "Retraction": DocType.RETRACTED_PUBLICATION,
    "Retracted Publication": DocType.RETRACTED_PUBLICATION,
}


def parse_wos_export(stream: Iterable[str]) -> list[BiblioRecord]:
    """Parse a WOS tagged export into records.

    Accepts any iterable of lines (an open text file works).  Empty
    input yields an empty list; a record left open at end of file is a
    ParseError naming the line where that record started.
    """
    records: list[BiblioRecord] = []
    seen_ids: set[str] = set()
    fields: dict[str, list[str]] = {}
    current_tag: str | None = None
    record_start = 0
    in_record = False
    line_no = 0

    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if line.startswith("   ") and not line[3:4].isspace():
            if current_tag is None:
                raise ParseError("continuation line outside any tag", line_no)
            fields[current_tag].append(line[3:])
            continue
        if not line.strip():
            continue
        line = line.rstrip()
        if line == "EF":
            if in_record:
                raise ParseError(
                    f"end of file inside record started at line {record_start}",
                    line_no,
                )
            break
        if line == "ER":
            if not in_record:
                raise ParseError("record terminator with no open record", line_no)
            records.append(_finish_record(fields, record_start, len(records), seen_ids))
            fields = {}
            current_tag = None
            in_record = False
            continue
        if len(line) < 3 or line[2] != " ":
            raise ParseError(f"malformed tag line {line!r}", line_no)
        tag = line[:2]
        if not in_record:
            in_record = True
            record_start = line_no
            fields = {}
        current_tag = tag
        fields.setdefault(tag, []).append(line[3:])

    if in_record:
        raise ParseError(
            f"record started at line {record_start} has no ER terminator",
            record_start,
        )
    return records


def _finish_record(
    fields: dict[str, list[str]],
    start_line: int,
    ordinal: int,
    seen_ids: set[str],
) -> BiblioRecord:
    record_id = _single(fields, "UT") or f"record-{ordinal + 1:05d}"
    if record_id in seen_ids:
        raise ParseError(f"duplicate record id {record_id!r}", start_line)
    seen_ids.add(record_id)

    # AF carries full author names and wins over the abbreviated AU list.
    raw_authors = fields.get("AF") or fields.get("AU") or []
    authors = []
    for name in raw_authors:
        try:
            authors.append(normalize_author_name(name))
        except InvalidNameError:
            continue

    affiliations = tuple(v.strip() for v in fields.get("C1", []) if v.strip())
    institutions = []
    countries = []
    for affil in affiliations:
        inst, country = split_affiliation(affil)
        if inst:
            institutions.append(inst)
        if country:
            countries.append(country)

    keywords = []
    for tag in ("DE", "ID"):
        if tag in fields:
            joined = " ".join(fields[tag])
            keywords.extend(normalize_token(k) for k in joined.split(";"))

    year = None
    py = _single(fields, "PY")
    if py and len(py) == 4 and py.isdigit():
        year = int(py)

    dt = _single(fields, "DT")
    doc_type = DOC_TYPE_MAP.get(dt, DocType.OTHER) if dt else DocType.OTHER

    return BiblioRecord(
        record_id=record_id,
        authors=dedup(authors),
        affiliations=affiliations,
        institutions=dedup(institutions),
        countries=dedup(countries),
        keywords=dedup(keywords),
        year=year,
        doc_type=doc_type,
    )


def _single(fields: dict[str, list[str]], tag: str) -> str | None:
    values = fields.get(tag)
    if not values:
        return None
    return " ".join(values).strip()


def parse_wos_file(path) -> list[BiblioRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_wos_export(fh)
