from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from flextree import (
    BadContextLengthError,
    CorruptModelError,
    FormatVersionMismatchError,
    OrderNegativeError,
    default_charset,
    frequency_ranking,
    load_model,
    model_from_json,
    model_to_json,
    predict,
    save_model,
    train,
)

charset_chars = st.sampled_from(default_charset().symbols)
charset_text = st.text(alphabet=charset_chars, max_size=60)


class TestTrain:
    def test_hello_order2_worked_example(self):
        model = train("Hello", 2)
        assert model.contexts == {
            "He": {"l": 1},
            "el": {"l": 1},
            "ll": {"o": 1},
            "lo": {"$": 1},
        }

    def test_empty_corpus(self):
        model = train("", 2)
        assert model.contexts == {}
        assert set(model.unigrams.values()) == {0}

    def test_repeated_symbol_hand_count(self):
        model = train("aaaa", 1)
        assert model.contexts == {"a": {"a": 3, "$": 1}}
        assert model.unigrams["a"] == 4

    def test_order_zero_has_no_contexts(self):
        model = train("Hello", 0)
        assert model.contexts == {}
        assert model.unigrams["l"] == 2

    def test_document_shorter_than_order_contributes_unigrams_only(self):
        model = train("ab", 3)
        assert model.contexts == {}
        assert model.unigrams["a"] == 1

    def test_each_document_gets_one_end_event(self):
        model = train(["ab", "cd"], 1)
        assert model.contexts == {
            "a": {"b": 1},
            "b": {"$": 1},
            "c": {"d": 1},
            "d": {"$": 1},
        }

    def test_unigrams_are_document_order_insensitive_but_contexts_are_not(self):
        forward = train(["abc", "xyz"], 2)
        backward = train(["xyz", "abc"], 2)
        concat = train("abcxyz", 2)
        assert forward.unigrams == backward.unigrams == concat.unigrams
        assert forward.contexts == backward.contexts
        assert forward.contexts != concat.contexts  # "bc"->x only when concatenated

    def test_negative_order(self):
        with pytest.raises(OrderNegativeError):
            train("Hello", -1)

    @given(charset_text, st.integers(min_value=0, max_value=4))
    @settings(max_examples=200)
    def test_count_conservation(self, text, order):
        model = train(text, order)
        total = sum(sum(inner.values()) for inner in model.contexts.values())
        if order > 0 and len(text) >= order:
            assert total == len(text) - order + 1
        else:
            assert total == 0


class TestPredict:
    def test_worked_example(self, hello_model):
        assert predict(hello_model, "He") == [("l", 1)]

    def test_unseen_context_predicts_nothing(self, hello_model):
        assert predict(hello_model, "zz") == []

    def test_tie_broken_by_canonical_rank(self):
        model = train("abac", 1)
        assert predict(model, "a") == [("b", 1), ("c", 1)]

    def test_context_length_is_checked(self, hello_model):
        with pytest.raises(BadContextLengthError):
            predict(hello_model, "H")

    def test_order_zero_empty_context(self):
        assert predict(train("abc", 0), "") == []

    @given(charset_text, st.integers(min_value=1, max_value=3))
    @settings(max_examples=150)
    def test_never_returns_end_marker_and_sorting_is_strict(self, text, order):
        model = train(text, order)
        rank = model.charset.rank
        for ctx, inner in model.contexts.items():
            result = predict(model, ctx)
            chars = [c for c, _ in result]
            assert "$" not in chars
            assert set(chars) == set(inner) - {"$"}
            keys = [(-n, rank[c]) for c, n in result]
            assert keys == sorted(keys)


class TestFrequencyRanking:
    def test_counts_first_then_canonical(self):
        ranking = frequency_ranking(train("aab", 1))
        assert ranking[:2] == ["a", "b"]
        assert ranking[2:] == [c for c in default_charset().symbols if c not in "ab"]

    def test_all_zero_counts_fall_back_to_canonical_order(self):
        model = train("", 2)
        assert frequency_ranking(model) == list(default_charset().symbols)

    def test_space_tops_english_text(self, english_models):
        assert frequency_ranking(english_models[3])[0] == " "

    def test_covers_all_72_symbols(self, hello_model):
        assert sorted(frequency_ranking(hello_model)) == sorted(default_charset().symbols)


class TestSaveLoad:
    def test_round_trip_identity(self, tmp_path, hello_model):
        path = tmp_path / "model.json"
        save_model(hello_model, path)
        assert load_model(path) == hello_model

    def test_save_is_byte_deterministic(self, tmp_path, hello_model):
        first = model_to_json(hello_model)
        again = model_to_json(model_from_json(first))
        assert first == again

    def test_random_model_round_trip(self, tmp_path):
        rng = random.Random(11)
        symbols = default_charset().symbols
        text = "".join(rng.choice(symbols) for _ in range(400))
        model = train(text, 3)
        path = tmp_path / "m.json"
        save_model(model, path)
        assert load_model(path) == model

    def test_future_format_version_rejected(self, hello_model):
        doc = model_to_json(hello_model).replace("flextree-ppm/1", "flextree-ppm/9")
        with pytest.raises(FormatVersionMismatchError):
            model_from_json(doc)

    def test_context_key_with_wrong_length_is_corrupt(self, hello_model):
        doc = model_to_json(hello_model).replace('"He":', '"Hel":')
        with pytest.raises(CorruptModelError):
            model_from_json(doc)

    def test_not_json_is_corrupt(self):
        with pytest.raises(CorruptModelError):
            model_from_json("not json at all")

    def test_order_zero_with_contexts_is_corrupt(self):
        doc = model_to_json(train("ab", 1)).replace('"order":1', '"order":0')
        with pytest.raises(CorruptModelError):
            model_from_json(doc)

    def test_zero_inner_count_is_corrupt(self, hello_model):
        doc = model_to_json(hello_model).replace('{"l":1}', '{"l":0}')
        with pytest.raises(CorruptModelError):
            model_from_json(doc)
