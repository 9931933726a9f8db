import io

import pytest
from hypothesis import given, strategies as st

from propnet.corpus import (
    CorpusFormatError,
    NumberParseError,
    align_corpus,
    corpus_stats,
    format_prop_number,
    load_version,
    parse_prop_number,
)

from conftest import make_version


class TestParsePropNumber:
    def test_deep_subdivision(self):
        n = parse_prop_number("2.0212")
        assert n.major == 2
        assert n.decimals == (0, 2, 1, 2)
        assert str(n.structural_parent()) == "2.021"

    def test_root_number(self):
        n = parse_prop_number("7")
        assert n.major == 7
        assert n.decimals == ()
        assert n.structural_parent() is None

    def test_group_is_leading_digit(self):
        assert parse_prop_number("6.54").group == 6

    def test_single_decimal_parent_drops_dot(self):
        assert str(parse_prop_number("1.1").structural_parent()) == "1"

    @pytest.mark.parametrize(
        "text,position",
        [
            ("", 0),
            ("8", 0),
            ("0.1", 0),
            ("x", 0),
            ("12", 1),
            ("1,2", 1),
            ("2.", 2),
            ("1.2.3", 3),
            ("1.a", 2),
            ("3.1x", 3),
        ],
    )
    def test_malformed_numbers_name_position(self, text, position):
        with pytest.raises(NumberParseError) as err:
            parse_prop_number(text)
        assert err.value.position == position

    @given(
        st.integers(min_value=1, max_value=7),
        st.lists(st.integers(min_value=0, max_value=9), max_size=6),
    )
    def test_round_trip(self, major, decimals):
        raw = str(major) + ("." + "".join(map(str, decimals)) if decimals else "")
        n = parse_prop_number(raw)
        assert format_prop_number(n) == raw
        assert parse_prop_number(format_prop_number(n)) == n
        assert n.group == int(raw[0])


class TestLoadVersion:
    def test_three_record_fixture(self):
        stream = io.StringIO("1\tfirst\n1.1\tsecond\n2\tthird\n")
        v = load_version(stream, "xx")
        assert len(v) == 3
        assert [str(p.number) for p in v] == ["1", "1.1", "2"]

    def test_continuation_lines_joined_by_space(self):
        stream = io.StringIO("1\tfirst part\nsecond part\n\n2\tother\n")
        v = load_version(stream, "xx")
        assert list(v)[0].text == "first part second part"

    def test_comments_and_blank_lines_skipped(self):
        stream = io.StringIO("# header\n\n1\ttext\n# comment\n2\tmore\n")
        assert len(load_version(stream, "xx")) == 2

    def test_head_with_invalid_number_is_continuation(self):
        # "8.1" has a major outside 1..7, so the line continues record 1
        stream = io.StringIO("1\tstart\n8.1\tnot a number\n")
        v = load_version(stream, "xx")
        assert list(v)[0].text == "start 8.1\tnot a number"

    def test_duplicate_number_rejected(self):
        stream = io.StringIO("1\tfirst\n1\tagain\n")
        with pytest.raises(CorpusFormatError) as err:
            load_version(stream, "xx")
        assert "1" in str(err.value)

    def test_text_before_any_record_rejected(self):
        with pytest.raises(CorpusFormatError):
            load_version(io.StringIO("stray text\n1\tok\n"), "xx")

    def test_empty_stream_rejected(self):
        with pytest.raises(CorpusFormatError):
            load_version(io.StringIO(""), "xx")

    def test_bundled_german_has_526_propositions(self, german_version):
        assert len(german_version) == 526


class TestAlignCorpus:
    def test_identical_number_sets_align_fully(self):
        a = make_version([("1", "eins"), ("1.1", "zwei")], "aa")
        b = make_version([("1", "one"), ("1.1", "two")], "bb")
        corpus = align_corpus([a, b])
        assert len(corpus.rows) == 2
        assert corpus.absence_report() == {}

    def test_absent_number_is_reported(self):
        a = make_version([("1", "eins"), ("1.1", "zwei")], "aa")
        b = make_version([("1", "one")], "bb")
        corpus = align_corpus([a, b])
        report = corpus.absence_report()
        assert [str(n) for n in report] == ["1.1"]
        assert report[parse_prop_number("1.1")] == (("bb", ""),)

    def test_zero_versions_rejected(self):
        with pytest.raises(ValueError):
            align_corpus([])

    def test_order_insensitive(self):
        a = make_version([("1", "x"), ("2", "y")], "aa")
        b = make_version([("2", "q"), ("3", "r")], "bb")
        assert align_corpus([a, b]).rows == align_corpus([b, a]).rows

    def test_row_presence_counts_match_version_sizes(self):
        a = make_version([("1", "x"), ("2", "y"), ("2.1", "z")], "aa")
        b = make_version([("2", "q")], "bb")
        corpus = align_corpus([a, b])
        for version in (a, b):
            present = sum(
                1 for row in corpus.rows.values() if row[version.key] is not None
            )
            assert present == len(version)

    def test_bundled_texts_align_completely(self, german_version, english_version):
        corpus = align_corpus([german_version, english_version])
        assert len(corpus.rows) == 526
        assert corpus.absence_report() == {}


class TestCorpusStats:
    def test_direct_count(self):
        v = make_version([("1", "a b a")])
        report = corpus_stats(v)
        assert (report.tokens, report.types) == (3, 2)

    def test_case_folding_merges_types(self):
        v = make_version([("1", "Welt welt WELT")])
        report = corpus_stats(v)
        assert (report.tokens, report.types) == (3, 1)

    def test_types_never_exceed_tokens(self, german_version):
        report = corpus_stats(german_version)
        assert report.types <= report.tokens

    def test_german_token_count_near_reported_value(self, german_version):
        report = corpus_stats(german_version)
        assert 18991 * 0.85 <= report.tokens <= 18991 * 1.15
