import pytest
from hypothesis import given, strategies as st

from propnet.search import build_index, ngram_profile, query


class TestNgramProfile:
    def test_padded_decomposition(self):
        grams = ngram_profile("welt", 3)
        assert set(grams) == {"##w", "#we", "wel", "elt", "lt#", "t##"}
        assert all(count == 1 for count in grams.values())

    def test_single_character_label_still_has_ngrams(self):
        assert sum(ngram_profile("a", 3).values()) >= 1

    def test_case_folding(self):
        assert ngram_profile("WELT", 3) == ngram_profile("welt", 3)


class TestBuildIndex:
    def test_rejects_bad_n(self):
        with pytest.raises(ValueError):
            build_index({"1": "x"}, n=0)

    def test_rejects_empty_labels(self):
        with pytest.raises(ValueError):
            build_index({})

    def test_postings_cover_profiles(self):
        index = build_index({"1": "die welt", "2": "der fall"})
        for node_id, profile in index.profiles.items():
            for gram in profile:
                assert node_id in index.postings[gram]


class TestQuery:
    def test_exact_label_scores_one(self):
        index = build_index({"1": "die welt", "2": "der fall"})
        assert query(index, "die welt", 1) == [("1", 1.0)]

    def test_no_shared_ngrams_is_empty(self):
        index = build_index({"1": "die welt"})
        assert query(index, "qqq", 5) == []

    def test_partial_query_ranks_best_label_first(self):
        index = build_index({"1": "die welt", "2": "der fall"})
        results = query(index, "welt", 3)
        assert results[0][0] == "1"

    def test_k_limits_results(self):
        labels = {str(i): f"label {i}" for i in range(20)}
        index = build_index(labels)
        assert len(query(index, "label", 5)) == 5

    def test_rejects_bad_k(self):
        index = build_index({"1": "x"})
        with pytest.raises(ValueError):
            query(index, "x", 0)

    def test_ties_broken_by_node_id(self):
        index = build_index({"b": "same", "a": "same"})
        results = query(index, "same", 2)
        assert [node_id for node_id, _ in results] == ["a", "b"]

    def test_deterministic_over_repeated_runs(self):
        labels = {str(i): text for i, text in enumerate(["welt", "well", "felt", "weltall"])}
        index = build_index(labels)
        first = query(index, "welt", 4)
        for _ in range(100):
            assert query(index, "welt", 4) == first

    @given(st.dictionaries(st.text(min_size=1, max_size=4), st.text(min_size=1, max_size=12), min_size=1, max_size=8), st.text(min_size=1, max_size=12))
    def test_scores_in_unit_interval(self, labels, text):
        index = build_index(labels)
        for node_id, score in query(index, text, 10):
            assert 0.0 < score <= 1.0

    @given(st.dictionaries(st.text(min_size=1, max_size=4), st.text(min_size=1, max_size=12), min_size=1, max_size=8))
    def test_exact_self_retrieval(self, labels):
        index = build_index(labels)
        for node_id, label in labels.items():
            results = query(index, label, len(labels))
            top_score = results[0][1]
            assert top_score == 1.0
            perfect = {nid for nid, score in results if score == 1.0}
            assert node_id in perfect
