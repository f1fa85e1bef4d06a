"""Acceptance suite: one test per primary criterion, each printing a
PASS/FAIL line (run with ``pytest -s tests/test_acceptance.py`` to see
them inline).

All tolerances are pinned here. Published typing-table values are
compared at their printed one-decimal precision, which is what the
+-0.5 bits/min tolerance absorbs.
"""

from __future__ import annotations

import random
import statistics

import pytest

from flextree import (
    DELETE,
    ERROR_FREE_ITR_RATIO,
    GO_BACK,
    apply_command,
    default_charset,
    itr,
    level1_layout,
    level2_layout,
    load_model,
    model_to_json,
    new_session,
    parse_transcript,
    predict,
    replay,
    report_from_session,
    run_benchmark,
    save_model,
    simulate_deletion,
    simulate_optimal,
    train,
    transcript_lines,
)
from flextree.simulate import _find_char, _find_group

CHANCE_HIT_AT_GROUP1 = 8 / 72


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'}: {name} -- {detail}", flush=True)


# (speed lpm, published ITR_com, published ITR_letter) for every error-free
# condition row: NoPPM/PPM1/PPM2/PPM3 x mouse/eye-tracker x both sentence sets.
PUBLISHED_ROWS = [
    ("NoPPM mouse hand", 21.7, 143.9, 133.7),
    ("NoPPM mouse rand", 24.1, 160.5, 149.1),
    ("NoPPM eye hand", 13.3, 88.4, 82.1),
    ("NoPPM eye rand", 13.8, 91.8, 85.3),
    ("PPM1 mouse hand", 23.7, 157.4, 146.3),
    ("PPM1 mouse rand", 26.4, 175.5, 163.0),
    ("PPM1 eye hand", 15.3, 102.1, 94.9),
    ("PPM1 eye rand", 15.2, 101.1, 94.0),
    ("PPM2 mouse hand", 30.3, 201.6, 187.3),
    ("PPM2 mouse rand", 28.3, 188.1, 174.8),
    ("PPM2 eye hand", 15.7, 104.6, 97.2),
    ("PPM2 eye rand", 15.6, 103.5, 96.2),
    ("PPM3 mouse hand", 27.5, 182.9, 169.9),
    ("PPM3 mouse rand", 27.7, 184.3, 171.2),
    ("PPM3 eye hand", 16.0, 106.5, 99.0),
    ("PPM3 eye rand", 16.3, 108.4, 100.7),
]


def test_itr_arithmetic_reproduction():
    """Recompute both transfer rates from each published speed assuming two
    commands per letter; every row must land within 0.5 bits/min of the
    published value (compared at the published one-decimal precision)."""
    worst = 0.0
    for label, speed, published_com, published_letter in PUBLISHED_ROWS:
        computed_com = round(itr(2 * speed, 10, 60.0), 1)
        computed_letter = round(itr(speed, 72, 60.0), 1)
        for computed, published in ((computed_com, published_com), (computed_letter, published_letter)):
            diff = abs(computed - published)
            worst = max(worst, diff)
            assert diff <= 0.5 + 1e-9, (
                f"{label}: computed {computed} vs published {published} (diff {diff:.4f})"
            )
    _report(
        "ITR arithmetic reproduction",
        True,
        f"16 rows x 2 rates within +-0.5 bits/min (worst diff {worst:.2f})",
    )


def test_ratio_identity():
    """Command/letter rate ratio is the constant 2*log2(10)/log2(72) for
    every error-free session, independent of speed."""
    expected = ERROR_FREE_ITR_RATIO
    assert abs(expected - 1.0768) < 1e-4
    corpus = "and tell us poor benighted pea A Demand to know what happened"
    checked = 0
    for order in (0, 1, 2, 3):
        model = train(corpus, order)
        for sentence in ("and tell us poor", "A Demand to know", "pea pod"):
            for step_ms in (800, 1500):
                state = new_session(model, target=sentence, clock=lambda: 0)
                t = 0
                for ch in sentence:
                    cid, _ = _find_group(state.current_layout, ch)
                    t += step_ms
                    apply_command(state, cid, t)
                    cid, _ = _find_char(state.current_layout, ch)
                    t += step_ms
                    apply_command(state, cid, t)
                report = report_from_session(state)
                ratio = report.itr_com_bpm / report.itr_letter_bpm
                assert abs(ratio - expected) <= 1e-4, f"{sentence!r}: ratio {ratio}"
                checked += 1
    _report("ratio identity", True, f"{checked} error-free sessions at {expected:.7f}")


def test_predmodel_worked_example(tmp_path):
    """The five-letter greeting at order 2 yields exactly four contexts, and
    the model file round-trips byte-exactly."""
    model = train("Hello", 2)
    assert model.contexts == {
        "He": {"l": 1},
        "el": {"l": 1},
        "ll": {"o": 1},
        "lo": {"$": 1},
    }
    assert predict(model, "He") == [("l", 1)]
    path_a, path_b = tmp_path / "a.json", tmp_path / "b.json"
    save_model(model, path_a)
    loaded = load_model(path_a)
    assert loaded == model
    save_model(loaded, path_b)
    assert path_a.read_bytes() == path_b.read_bytes()
    assert model_to_json(model) == model_to_json(loaded)
    _report("worked example", True, "4 contexts exact; byte-exact file round-trip")


def _model_pool(rng: random.Random):
    symbols = default_charset().symbols
    english = "the quick brown fox jumps over the lazy dog and tell us more"
    pool = []
    for order in (0, 1, 2, 3, 4):
        for _ in range(4):
            n = rng.randint(0, 400)
            text = "".join(rng.choice(symbols) for _ in range(n))
            pool.append(train(text, order))
        pool.append(train(english, order))
    return pool


def test_layout_invariant_property_suite():
    """10,000 random (text, model) cases: partition, fixed anchors, the 4/4
    level-2 split, byte determinism, and the alphabetical-prefix rule."""
    rng = random.Random(20250810)
    symbols = default_charset().symbols
    sorted_symbols = sorted(symbols)
    pool = _model_pool(rng)
    alphabetical = {id(m): level1_layout("", m) for m in pool}
    cases = 10_000
    for _ in range(cases):
        model = rng.choice(pool)
        text = "".join(rng.choice(symbols) for _ in range(rng.randint(0, 12)))
        layout = level1_layout(text, model)

        groups = layout.groups()
        assert len(groups) == 9
        assert sorted("".join(groups)) == sorted_symbols  # exact 72-char partition
        assert layout.labels[5] == DELETE
        assert GO_BACK not in layout.labels

        again = level1_layout(text, model)
        assert again == layout
        import json

        assert json.dumps(layout.to_wire()) == json.dumps(again.to_wire())

        if model.order == 0 or len(text) < model.order:
            assert layout == alphabetical[id(model)]

        group = rng.choice(groups)
        second = level2_layout(group)
        assert second.labels[4] == GO_BACK
        assert second.labels[5] == DELETE
        chars = [lab.chars for lab in second.labels if lab.kind == "char"]
        assert "".join(chars) == group  # 4/4 split preserves group order
    _report("layout invariants", True, f"{cases} random cases, all invariants held")


def test_two_commands_property(english_models):
    """1,000 random targets, every order 0..3: exactly two commands per
    letter and the final session text equals the target."""
    rng = random.Random(77)
    symbols = default_charset().symbols
    sentences = [
        "".join(rng.choice(symbols) for _ in range(rng.randint(1, 24)))
        for _ in range(1_000)
    ]
    total = 0
    for order, model in sorted(english_models.items()):
        for sentence in sentences:
            report = simulate_optimal(sentence, model)
            assert report.commands_used == 2 * len(sentence)
            assert report.letters_typed == len(sentence)
            total += 1
    _report(
        "two commands per letter",
        True,
        f"{total} oracle sessions (1000 sentences x 4 orders), all exact",
    )


def test_directional_ppm_benefit(english_corpus):
    """Aggregate scan-rank ordering across model orders on a >=1 MB English
    corpus: 500 held-in 30-character sentences, requiring strictly better
    mean level-1 rank for order 3 than order 2, order 2 no worse than the
    alphabetical baseline, and order-3 first-group hits at 3x chance.

    Note: each sentence is typed from an empty session, and layouts stay
    alphabetical until the model's context length is filled, so a 30-char
    sentence charges order 3 three alphabetical-rank characters against
    order 2's two. That structural warm-up cost (about +0.15 on the
    30-char mean) exceeds the steady-state gain order 3 can earn on
    natural mixed-case English (about +0.09), so the strict first
    inequality is not attainable for this protocol; it is asserted
    faithfully regardless.
    """
    assert len(english_corpus.text.encode("utf-8")) >= 1_000_000
    rows = {
        row.order: row
        for row in run_benchmark(
            english_corpus, orders=(0, 2, 3), n_sentences=500, sentence_len=30,
            seed=20250810, held_in=True,
        )
    }
    mean0, mean2, mean3 = (rows[k].mean_l1_rank for k in (0, 2, 3))
    hit3 = rows[3].hit_at_group1
    ok = mean3 < mean2 <= mean0 and hit3 >= 3 * CHANCE_HIT_AT_GROUP1
    _report(
        "directional prediction benefit",
        ok,
        f"mean_l1: order3={mean3:.3f} order2={mean2:.3f} baseline={mean0:.3f}; "
        f"hit@group1(order3)={hit3:.3f} vs 3x chance {3 * CHANCE_HIT_AT_GROUP1:.3f}",
    )
    assert hit3 >= 3 * CHANCE_HIT_AT_GROUP1
    assert mean2 <= mean0
    assert mean3 < mean2, (
        "strict order3 < order2 mean level-1 rank does not hold at 30-char "
        "from-scratch sentences: the extra alphabetical warm-up character "
        f"outweighs the steady-state gain (order3 {mean3:.3f} vs order2 {mean2:.3f})"
    )


def test_deletion_structure(english_models):
    """Erasing n characters costs exactly n commands from any state: one
    DELETE per letter, zero variance."""
    model = english_models[2]
    rng = random.Random(4)
    costs = []

    def typed_session(text):
        state = new_session(model, clock=lambda: 0)
        t = 0
        for ch in text:
            cid, _ = _find_group(state.current_layout, ch)
            t += 1
            apply_command(state, cid, t)
            cid, _ = _find_char(state.current_layout, ch)
            t += 1
            apply_command(state, cid, t)
        return state

    for _ in range(40):
        n_typed = rng.randint(1, 12)
        text = "".join(rng.choice(default_charset().symbols) for _ in range(n_typed))
        state = typed_session(text)
        if rng.random() < 0.5:  # half the trials delete starting from level 2
            apply_command(state, rng.choice([1, 2, 3, 4, 5, 7, 8, 9, 10]), 10_000)
        n_delete = rng.randint(1, n_typed)
        before = len(state.events)
        cost = simulate_deletion(state, n_delete)
        assert len(state.events) - before == n_delete
        assert state.level == 1
        assert len(state.text_entered) == n_typed - n_delete
        costs.append(cost)
    assert set(costs) == {1.0}
    assert statistics.pstdev(costs) == 0.0
    _report(
        "deletion structure",
        True,
        f"{len(costs)} trials from both levels, 1.0 command/letter, zero variance",
    )


def test_replay_determinism(english_models):
    """Replaying any transcript against a fresh session with the same model
    reproduces the final text and identical metrics."""
    checked = 0
    for order in (0, 2):
        model = english_models[order]
        sessions = []
        for sentence in ("and tell us poor", "A Demand to know", "pea"):
            state = new_session(model, target=sentence, clock=lambda: 0)
            t = 0
            for ch in sentence:
                cid, _ = _find_group(state.current_layout, ch)
                t += 1500
                apply_command(state, cid, t)
                cid, _ = _find_char(state.current_layout, ch)
                t += 1500
                apply_command(state, cid, t)
            sessions.append(state)
        messy = new_session(model, clock=lambda: 0)
        for i, cmd in enumerate([6, 1, 1, 2, 5, 3, 8, 6, 6, 4, 10, 6]):
            apply_command(messy, cmd, (i + 1) * 333)
        sessions.append(messy)

        for state in sessions:
            events = parse_transcript("\n".join(transcript_lines(state)))
            again = replay(events, model, target=state.target_text)
            assert again.text_entered == state.text_entered
            assert again.events == state.events
            assert report_from_session(again) == report_from_session(state)
            checked += 1
    _report("replay determinism", True, f"{checked} transcripts replayed identically")
