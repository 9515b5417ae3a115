import io

import pytest
from hypothesis import given, strategies as st

from bibnet.canonical import parse_canonical_records, serialize_canonical
from bibnet.records import BiblioRecord, DocType
from bibnet.wos import ParseError

name = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=15
)
names = st.lists(name, max_size=4, unique=True).map(tuple)

records_strategy = st.lists(
    st.builds(
        BiblioRecord,
        record_id=st.uuids().map(str),
        authors=names,
        affiliations=st.just(()),
        institutions=names,
        countries=names,
        keywords=names,
        year=st.one_of(st.none(), st.integers(1900, 2100)),
        doc_type=st.sampled_from(list(DocType)),
    ),
    max_size=6,
    unique_by=lambda r: r.record_id,
)


class TestRoundTrip:
    def test_empty_stream(self):
        assert parse_canonical_records(io.StringIO("")) == []

    def test_single_record(self):
        line = (
            '{"authors":["a","b"],"countries":[],"doc_type":"Article",'
            '"institutions":[],"keywords":[],"record_id":"r1","year":2020}\n'
        )
        records = parse_canonical_records(io.StringIO(line))
        assert len(records) == 1
        assert records[0].authors == ("a", "b")
        assert records[0].year == 2020
        assert serialize_canonical(records) == line

    @given(records_strategy)
    def test_records_roundtrip(self, records):
        text = serialize_canonical(records)
        parsed = parse_canonical_records(io.StringIO(text))
        assert parsed == records
        assert serialize_canonical(parsed) == text


class TestErrors:
    def test_duplicate_id(self):
        record = (
            '{"authors":[],"countries":[],"doc_type":"Article",'
            '"institutions":[],"keywords":[],"record_id":"dup","year":null}\n'
        )
        with pytest.raises(ParseError) as err:
            parse_canonical_records(io.StringIO(record + record))
        assert err.value.line == 2

    def test_malformed_json_carries_line(self):
        with pytest.raises(ParseError) as err:
            parse_canonical_records(io.StringIO("{not json}\n"))
        assert err.value.line == 1

    def test_missing_field(self):
        with pytest.raises(ParseError):
            parse_canonical_records(io.StringIO('{"record_id":"x"}\n'))

    def test_bad_doc_type(self):
        line = (
            '{"authors":[],"countries":[],"doc_type":"Novel",'
            '"institutions":[],"keywords":[],"record_id":"r","year":null}\n'
        )
        with pytest.raises(ParseError):
            parse_canonical_records(io.StringIO(line))

    def test_bad_year_type(self):
        line = (
            '{"authors":[],"countries":[],"doc_type":"Article",'
            '"institutions":[],"keywords":[],"record_id":"r","year":"2020"}\n'
        )
        with pytest.raises(ParseError):
            parse_canonical_records(io.StringIO(line))
