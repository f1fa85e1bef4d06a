"""Fixed-order next-character context model.

``PredModel`` is a nested frequency map: outer keys are contexts (the last
``order`` characters of typed text), inner keys are the symbols observed
to follow that context, inner values are occurrence counts. A reserved
``$`` symbol records where training documents ended. There is no backoff
and no smoothing: a context that was never seen predicts nothing, and the
layout engine falls back to plain letter frequency.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Union

from .charset import END_OF_TEXT, CharacterSet, CharsetError, Corpus, default_charset

MODEL_FORMAT = "flextree-ppm/1"

Document = Union[str, Corpus]


class ModelError(ValueError):
    """Invalid model construction, query, or file."""


class OrderNegativeError(ModelError):
    """Training was requested with a negative context length."""


class BadContextLengthError(ModelError):
    """A prediction context does not match the model order."""


class FormatVersionMismatchError(ModelError):
    """A model file declares an unsupported format version."""


class CorruptModelError(ModelError):
    """A model file violates a structural invariant."""


@dataclass
class PredModel:
    """Trained context model. Treat as immutable once built.

    ``contexts`` maps each length-``order`` context string to its observed
    next-symbol counts (charset members plus ``$``). ``unigrams`` holds a
    count for every charset member, including zeros. When ``order`` is 0
    the model carries unigrams only and ``contexts`` is empty.
    """

    order: int
    charset: CharacterSet
    contexts: dict[str, dict[str, int]] = field(default_factory=dict)
    unigrams: dict[str, int] = field(default_factory=dict)

    @cached_property
    def _ranking(self) -> tuple[str, ...]:
        rank = self.charset.rank
        return tuple(
            sorted(self.charset.symbols, key=lambda c: (-self.unigrams.get(c, 0), rank[c]))
        )


def _as_documents(
    corpus: Document | Iterable[Document], charset: CharacterSet | None
) -> tuple[list[str], CharacterSet]:
    if isinstance(corpus, (str, Corpus)):
        corpus = [corpus]
    docs: list[str] = []
    cs = charset
    for doc in corpus:
        if isinstance(doc, Corpus):
            if cs is None:
                cs = doc.charset
            elif doc.charset != cs:
                raise ModelError("documents use different charsets")
            docs.append(doc.text)
        else:
            docs.append(doc)
    if cs is None:
        cs = default_charset()
    members = set(cs.symbols)
    for doc in docs:
        extra = set(doc) - members
        if extra:
            raise CharsetError(
                f"document contains non-charset characters: {''.join(sorted(extra)[:10])!r}"
            )
    return docs, cs


def train(
    corpus: Document | Iterable[Document],
    order: int,
    charset: CharacterSet | None = None,
) -> PredModel:
    """Count next-symbol frequencies over sliding contexts of ``order`` chars.

    Each document contributes one transition per position from ``order``
    onward, plus a final transition from its last ``order`` characters to
    the end marker ``$``. Documents shorter than ``order`` contribute only
    unigram counts. Unigrams count every character occurrence in every
    document.
    """
    if order < 0:
        raise OrderNegativeError(f"model order must be >= 0, got {order}")
    docs, cs = _as_documents(corpus, charset)

    unigrams = {sym: 0 for sym in cs.symbols}
    contexts: dict[str, dict[str, int]] = {}
    for text in docs:
        for ch in text:
            unigrams[ch] += 1
        n = len(text)
        if order == 0 or n < order:
            continue
        for i in range(order, n):
            ctx = text[i - order : i]
            inner = contexts.get(ctx)
            if inner is None:
                inner = contexts[ctx] = {}
            nxt = text[i]
            inner[nxt] = inner.get(nxt, 0) + 1
        tail = text[n - order :]
        inner = contexts.get(tail)
        if inner is None:
            inner = contexts[tail] = {}
        inner[END_OF_TEXT] = inner.get(END_OF_TEXT, 0) + 1
    return PredModel(order=order, charset=cs, contexts=contexts, unigrams=unigrams)


def predict(model: PredModel, context: str) -> list[tuple[str, int]]:
    """Ranked next characters for a context of exactly ``model.order`` chars.

    Returns (character, count) pairs sorted by count descending, ties
    broken by canonical charset rank. The end marker is filtered out, and
    an unseen context yields an empty list.
    """
    if len(context) != model.order:
        raise BadContextLengthError(
            f"context length {len(context)} != model order {model.order}"
        )
    inner = model.contexts.get(context)
    if not inner:
        return []
    rank = model.charset.rank
    pairs = [(ch, n) for ch, n in inner.items() if ch != END_OF_TEXT]
    pairs.sort(key=lambda p: (-p[1], rank[p[0]]))
    return pairs


def frequency_ranking(model: PredModel) -> list[str]:
    """All 72 charset members by unigram count descending, ties by rank."""
    return list(model._ranking)


def model_to_json(model: PredModel) -> str:
    """Serialize to the ``flextree-ppm/1`` format, byte-deterministically."""
    doc = {
        "format": MODEL_FORMAT,
        "order": model.order,
        "charset": list(model.charset.symbols),
        "unigrams": model.unigrams,
        "contexts": model.contexts,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def model_from_json(text: str) -> PredModel:
    """Parse and validate a ``flextree-ppm/1`` document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptModelError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CorruptModelError("model document must be a JSON object")

    fmt = doc.get("format")
    if fmt is None:
        raise CorruptModelError("missing format field")
    if fmt != MODEL_FORMAT:
        raise FormatVersionMismatchError(f"unsupported format {fmt!r}")

    order = doc.get("order")
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise CorruptModelError(f"invalid order {order!r}")

    raw_charset = doc.get("charset")
    if not isinstance(raw_charset, list):
        raise CorruptModelError("charset must be a list")
    try:
        cs = CharacterSet(tuple(raw_charset))
    except CharsetError as exc:
        raise CorruptModelError(f"invalid charset: {exc}") from exc
    members = set(cs.symbols)

    raw_unigrams = doc.get("unigrams", {})
    if not isinstance(raw_unigrams, dict):
        raise CorruptModelError("unigrams must be an object")
    unigrams = {sym: 0 for sym in cs.symbols}
    for ch, count in raw_unigrams.items():
        if ch not in members:
            raise CorruptModelError(f"unigram key {ch!r} not in charset")
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise CorruptModelError(f"invalid unigram count for {ch!r}: {count!r}")
        unigrams[ch] = count

    raw_contexts = doc.get("contexts", {})
    if not isinstance(raw_contexts, dict):
        raise CorruptModelError("contexts must be an object")
    if order == 0 and raw_contexts:
        raise CorruptModelError("order-0 model must have no contexts")
    contexts: dict[str, dict[str, int]] = {}
    for ctx, inner in raw_contexts.items():
        if not isinstance(ctx, str) or len(ctx) != order:
            raise CorruptModelError(f"context key {ctx!r} does not have length {order}")
        if set(ctx) - members:
            raise CorruptModelError(f"context key {ctx!r} has non-charset characters")
        if not isinstance(inner, dict):
            raise CorruptModelError(f"context {ctx!r} must map to an object")
        clean: dict[str, int] = {}
        for sym, count in inner.items():
            if sym != END_OF_TEXT and sym not in members:
                raise CorruptModelError(f"next symbol {sym!r} not in charset")
            if not isinstance(count, int) or isinstance(count, bool) or count < 1:
                raise CorruptModelError(f"invalid count for {ctx!r}->{sym!r}: {count!r}")
            clean[sym] = count
        contexts[ctx] = clean
    return PredModel(order=order, charset=cs, contexts=contexts, unigrams=unigrams)


def save_model(model: PredModel, path: str | Path) -> None:
    """Write the model file (UTF-8, one JSON document)."""
    Path(path).write_text(model_to_json(model) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> PredModel:
    """Read and validate a model file written by :func:`save_model`."""
    return model_from_json(Path(path).read_text(encoding="utf-8"))
