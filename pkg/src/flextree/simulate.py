"""Optimal-user simulation and benchmark harness.

The simulated user never errs: for each target character it selects the
group containing it, then the character itself, driving the real session
state machine. Keystroke count is therefore constant (two commands per
letter) for every model order; what prediction changes is *where* the
character sits on screen. Scan rank -- the 1-based visual position of the
selected command, skipping the fixed DELETE slot -- is the proxy this
harness reports for visual search cost.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

from .charset import Corpus
from .layout import KIND_CHAR, KIND_GROUP, Layout
from .ppm import PredModel, train
from .session import SessionState, apply_command, new_session

DELETE_COMMAND = 6
DEFAULT_STEP_MS = 1500  # virtual time per simulated command, one dwell

BENCHMARK_CSV_HEADER = (
    "config,sentence_count,mean_l1_rank,std_l1_rank,mean_l2_rank,"
    "hit_at_group1,commands_per_letter"
)


class SimulationError(ValueError):
    pass


class CharacterNotInCharsetError(SimulationError):
    """The target contains a character the keyboard cannot type."""


class NotEnoughTextError(SimulationError):
    """More deletions were requested than characters typed."""


class CorpusTooSmallError(SimulationError):
    """The corpus cannot supply the requested evaluation sentences."""


def condition_label(order: int) -> str:
    """Human-readable condition name for a model order."""
    return "NoPPM" if order == 0 else f"PPM{order}"


def _order_from_label(label: str) -> int:
    if label == "NoPPM":
        return 0
    if label.startswith("PPM"):
        return int(label[3:])
    return int(label)


@dataclass
class SimReport:
    """Per-sentence outcome of one optimal-user run."""

    order: int
    sentence: str
    commands_used: int
    letters_typed: int
    mean_level1_rank: float
    mean_level2_rank: float
    hit_at_group1: float

    @property
    def condition(self) -> str:
        return condition_label(self.order)

    @property
    def commands_per_letter(self) -> float:
        return self.commands_used / self.letters_typed if self.letters_typed else 0.0


def _find_group(layout: Layout, ch: str) -> tuple[int, int]:
    """(command_id, visual scan rank 1..9) of the group containing ``ch``."""
    rank = 0
    for i, label in enumerate(layout.labels):
        if label.kind != KIND_GROUP:
            continue
        rank += 1
        if ch in label.chars:
            return i + 1, rank
    raise CharacterNotInCharsetError(f"{ch!r} is not on the level-1 layout")


def _find_char(layout: Layout, ch: str) -> tuple[int, int]:
    """(command_id, visual scan rank 1..8) of ``ch`` on a level-2 layout."""
    rank = 0
    for i, label in enumerate(layout.labels):
        if label.kind != KIND_CHAR:
            continue
        rank += 1
        if label.chars == ch:
            return i + 1, rank
    raise CharacterNotInCharsetError(f"{ch!r} is not in the selected group")


def simulate_optimal(
    target: str, model: PredModel, step_ms: int = DEFAULT_STEP_MS
) -> SimReport:
    """Type ``target`` through a real session with a perfect user.

    Virtual time advances ``step_ms`` per command. The resulting session
    text always equals the target and exactly two commands are spent per
    character.
    """
    bad = set(target) - set(model.charset.symbols)
    if bad:
        raise CharacterNotInCharsetError(
            f"target contains non-charset characters: {''.join(sorted(bad)[:10])!r}"
        )
    state = new_session(model, target=target, clock=lambda: 0)
    t_ms = 0
    l1_ranks: list[int] = []
    l2_ranks: list[int] = []
    for ch in target:
        command_id, l1_rank = _find_group(state.current_layout, ch)
        t_ms += step_ms
        apply_command(state, command_id, t_ms=t_ms)
        command_id, l2_rank = _find_char(state.current_layout, ch)
        t_ms += step_ms
        apply_command(state, command_id, t_ms=t_ms)
        l1_ranks.append(l1_rank)
        l2_ranks.append(l2_rank)
    assert state.text_entered == target, "optimal user must reproduce the target"
    letters = len(target)
    return SimReport(
        order=model.order,
        sentence=target,
        commands_used=len(state.events),
        letters_typed=letters,
        mean_level1_rank=statistics.fmean(l1_ranks) if l1_ranks else 0.0,
        mean_level2_rank=statistics.fmean(l2_ranks) if l2_ranks else 0.0,
        hit_at_group1=(sum(1 for r in l1_ranks if r == 1) / letters) if letters else 0.0,
    )


def simulate_deletion(
    state: SessionState, n_chars: int, step_ms: int = DEFAULT_STEP_MS
) -> float:
    """Erase the last ``n_chars`` characters; return commands per deletion.

    DELETE is a single fixed command reachable from either level, so the
    cost is exactly 1.0 command per erased letter regardless of state.
    """
    if n_chars < 0:
        raise SimulationError(f"cannot delete {n_chars} characters")
    if n_chars > len(state.text_entered):
        raise NotEnoughTextError(
            f"session has {len(state.text_entered)} characters, asked to delete {n_chars}"
        )
    if n_chars == 0:
        return 0.0
    commands = 0
    t_ms = state.events[-1].t_ms if state.events else 0
    for _ in range(n_chars):
        t_ms += step_ms
        apply_command(state, DELETE_COMMAND, t_ms=t_ms)
        commands += 1
    return commands / n_chars


@dataclass
class BenchmarkRow:
    """Aggregate over all evaluation sentences for one model order."""

    order: int
    sentence_count: int
    mean_l1_rank: float
    std_l1_rank: float
    mean_l2_rank: float
    hit_at_group1: float
    commands_per_letter: float

    @property
    def condition(self) -> str:
        return condition_label(self.order)


def sample_sentences(
    text: str, n_sentences: int, sentence_len: int, rng: random.Random
) -> list[str]:
    """Deterministically sample contiguous character spans from ``text``."""
    if sentence_len < 1 or n_sentences < 1:
        raise SimulationError("need at least one sentence of at least one character")
    if len(text) < sentence_len:
        raise CorpusTooSmallError(
            f"evaluation text has {len(text)} characters, need {sentence_len}"
        )
    last_start = len(text) - sentence_len
    return [
        text[start : start + sentence_len]
        for start in (rng.randint(0, last_start) for _ in range(n_sentences))
    ]


def run_benchmark(
    corpus: Corpus,
    orders: Iterable[int],
    n_sentences: int,
    sentence_len: int,
    seed: int,
    held_in: bool = False,
    train_fraction: float = 0.9,
) -> list[BenchmarkRow]:
    """Simulate sampled sentences under each model order.

    By default the corpus is split: models train on the leading
    ``train_fraction`` and sentences are sampled from the held-out tail.
    ``held_in`` trains on the full text and samples from it too, matching
    tasks drawn from the training data. The same sentences (deterministic
    under ``seed``) are reused across every order. Std is the population
    standard deviation over per-sentence mean ranks.
    """
    if held_in:
        train_text, eval_text = corpus.text, corpus.text
    else:
        split = int(len(corpus.text) * train_fraction)
        train_text, eval_text = corpus.text[:split], corpus.text[split:]
    if not train_text:
        raise CorpusTooSmallError("no training text left after the split")
    rng = random.Random(seed)
    sentences = sample_sentences(eval_text, n_sentences, sentence_len, rng)

    rows: list[BenchmarkRow] = []
    for order in sorted(set(orders)):
        model = train(train_text, order, corpus.charset)
        reports = [simulate_optimal(s, model) for s in sentences]
        for rep in reports:
            assert rep.commands_used == 2 * rep.letters_typed, (
                "optimal sessions cost exactly two commands per letter"
            )
        l1_means = [r.mean_level1_rank for r in reports]
        rows.append(
            BenchmarkRow(
                order=order,
                sentence_count=len(reports),
                mean_l1_rank=statistics.fmean(l1_means),
                std_l1_rank=statistics.pstdev(l1_means) if len(l1_means) > 1 else 0.0,
                mean_l2_rank=statistics.fmean(r.mean_level2_rank for r in reports),
                hit_at_group1=statistics.fmean(r.hit_at_group1 for r in reports),
                commands_per_letter=2.0,
            )
        )
    return rows


def write_benchmark_csv(rows: Sequence[BenchmarkRow], out: IO[str]) -> None:
    """Full-precision CSV; parsing it reproduces the aggregates exactly."""
    out.write(BENCHMARK_CSV_HEADER + "\n")
    for row in rows:
        out.write(
            f"{row.condition},{row.sentence_count},{row.mean_l1_rank!r},"
            f"{row.std_l1_rank!r},{row.mean_l2_rank!r},{row.hit_at_group1!r},"
            f"{row.commands_per_letter!r}\n"
        )


def read_benchmark_csv(path: str | Path) -> list[BenchmarkRow]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != BENCHMARK_CSV_HEADER:
        raise SimulationError("not a benchmark CSV")
    rows = []
    for line in lines[1:]:
        cond, count, l1, std, l2, hit, cpl = line.split(",")
        rows.append(
            BenchmarkRow(
                order=_order_from_label(cond),
                sentence_count=int(count),
                mean_l1_rank=float(l1),
                std_l1_rank=float(std),
                mean_l2_rank=float(l2),
                hit_at_group1=float(hit),
                commands_per_letter=float(cpl),
            )
        )
    return rows


def format_benchmark_table(rows: Sequence[BenchmarkRow]) -> str:
    """Aligned human-readable aggregate table."""
    header = f"{'config':<8}{'sentences':>10}{'l1 rank':>12}{'l2 rank':>10}{'hit@group1':>12}{'cmds/letter':>13}"
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(
            f"{row.condition:<8}{row.sentence_count:>10}"
            f"{row.mean_l1_rank:>8.3f}±{row.std_l1_rank:<4.2f}"
            f"{row.mean_l2_rank:>9.3f}{row.hit_at_group1:>12.3f}{row.commands_per_letter:>13.1f}"
        )
    return "\n".join(lines)
