"""Canonical line-delimited record format.

One record per line as a canonical JSON object (sorted keys, compact
separators, UTF-8, no ASCII escaping), fields: record_id, authors,
institutions, countries, keywords, year, doc_type.  Raw affiliation
strings are not part of the format.  Because the serialization is
canonical, parse followed by serialize reproduces the input bytes.
"""

from __future__ import annotations

import json
from typing import Iterable

from .records import BiblioRecord, DocType
from .wos import ParseError

_FIELDS = {
    "record_id",
    "authors",
    "institutions",
    "countries",
    "keywords",
    "year",
    "doc_type",
}
_DOC_TYPES = {d.value: d for d in DocType}


def record_to_line(record: BiblioRecord) -> str:
    obj = {
        "record_id": record.record_id,
        "authors": list(record.authors),
        "institutions": list(record.institutions),
        "countries": list(record.countries),
        "keywords": list(record.keywords),
        "year": record.year,
        "doc_type": record.doc_type.value,
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def serialize_canonical(records: Iterable[BiblioRecord]) -> str:
    """One line per record, each newline-terminated."""
    return "".join(record_to_line(r) + "\n" for r in records)


def parse_canonical_records(stream: Iterable[str]) -> list[BiblioRecord]:
    """Parse canonical lines back into records.

    Raises:
        ParseError: malformed line or duplicate record_id, with the
            1-based line number.
    """
    records: list[BiblioRecord] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line_no) from exc
        if not isinstance(obj, dict):
            raise ParseError("record line is not an object", line_no)
        if set(obj) != _FIELDS:
            raise ParseError(
                f"unexpected field set {sorted(obj)} (want {sorted(_FIELDS)})",
                line_no,
            )
        record_id = obj["record_id"]
        if not isinstance(record_id, str) or not record_id:
            raise ParseError("record_id must be a nonempty string", line_no)
        if record_id in seen:
            raise ParseError(f"duplicate record id {record_id!r}", line_no)
        seen.add(record_id)
        year = obj["year"]
        if year is not None and not isinstance(year, int):
            raise ParseError("year must be an integer or null", line_no)
        doc_type = _DOC_TYPES.get(obj["doc_type"])
        if doc_type is None:
            raise ParseError(f"unknown doc_type {obj['doc_type']!r}", line_no)
        lists = {}
        for key in ("authors", "institutions", "countries", "keywords"):
            value = obj[key]
            if not isinstance(value, list) or any(
                not isinstance(v, str) for v in value
            ):
                raise ParseError(f"{key} must be a list of strings", line_no)
            lists[key] = tuple(value)
        records.append(
            BiblioRecord(
                record_id=record_id,
                authors=lists["authors"],
                affiliations=(),
                institutions=lists["institutions"],
                countries=lists["countries"],
                keywords=lists["keywords"],
                year=year,
                doc_type=doc_type,
            )
        )
    return records


def write_canonical(records: Iterable[BiblioRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize_canonical(records))


def read_canonical(path) -> list[BiblioRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_canonical_records(fh)
