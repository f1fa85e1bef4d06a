"""Interactive typing session: the two-level command state machine.

Every selection is a command 1..10 applied to the current layout. An
error-free character costs exactly two commands: its group at level 1,
then the character at level 2. DELETE (command 6) erases the last typed
character from either level and always leaves the session at level 1;
GO BACK (command 5, level 2 only) abandons the pending group. Each applied
command appends one timestamped event to the session log.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

from .layout import (
    KIND_CHAR,
    KIND_DELETE,
    KIND_GOBACK,
    KIND_GROUP,
    CommandLabel,
    Layout,
    level1_layout,
    level2_layout,
)
from .ppm import PredModel

KIND_DESCEND = "descend"
KIND_NOOP = "noop"

_WIRE_KINDS = (KIND_DESCEND, KIND_CHAR, KIND_DELETE, KIND_GOBACK, KIND_NOOP)

Clock = Callable[[], int]


def _monotonic_ms() -> int:
    return int(time.monotonic() * 1000)


class SessionError(ValueError):
    pass


class TargetNotNormalizedError(SessionError):
    """A task target contains characters outside the model charset."""


class NoTargetError(SessionError):
    """Completion was queried on a free-typing session."""


@dataclass(frozen=True)
class SessionEvent:
    """One applied command. ``t_ms`` is milliseconds since session start,
    nondecreasing across the log; ``level_at_event`` is the level the
    command was issued from; ``text_len`` is the text length afterwards."""

    t_ms: int
    kind: str  # descend | char | delete | goback | noop
    command_id: int
    level_at_event: int
    char: Optional[str] = None
    text_len: int = 0

    def to_wire(self) -> dict:
        wire = {
            "t_ms": self.t_ms,
            "kind": self.kind,
            "cmd": self.command_id,
            "level": self.level_at_event,
            "text_len": self.text_len,
        }
        if self.char is not None:
            wire["char"] = self.char
        return wire

    @staticmethod
    def from_wire(wire: dict) -> "SessionEvent":
        kind = wire["kind"]
        if kind not in _WIRE_KINDS:
            raise SessionError(f"unknown event kind {kind!r}")
        return SessionEvent(
            t_ms=int(wire["t_ms"]),
            kind=kind,
            command_id=int(wire["cmd"]),
            level_at_event=int(wire["level"]),
            char=wire.get("char"),
            text_len=int(wire.get("text_len", 0)),
        )


@dataclass
class SessionState:
    """Mutable session owned by a single writer; see :func:`new_session`."""

    model: PredModel
    text_entered: str = ""
    level: int = 1
    current_layout: Layout = None  # type: ignore[assignment]
    selected_group: Optional[CommandLabel] = None
    target_text: Optional[str] = None
    started_at: int = 0
    last_event_at: int = 0
    events: list[SessionEvent] = field(default_factory=list)
    clock: Clock = field(default=_monotonic_ms, repr=False, compare=False)


def new_session(
    model: PredModel,
    target: Optional[str] = None,
    clock: Optional[Clock] = None,
) -> SessionState:
    """Fresh level-1 session with empty text and the initial layout.

    ``target`` switches on task mode and must already be normalized to the
    model charset. ``clock`` supplies wall time in ms and exists so tests
    and simulations can drive virtual time.
    """
    if target is not None:
        bad = set(target) - set(model.charset.symbols)
        if bad:
            raise TargetNotNormalizedError(
                f"target contains non-charset characters: {''.join(sorted(bad)[:10])!r}"
            )
    clk = clock if clock is not None else _monotonic_ms
    started = clk()
    return SessionState(
        model=model,
        text_entered="",
        level=1,
        current_layout=level1_layout("", model),
        selected_group=None,
        target_text=target,
        started_at=started,
        last_event_at=started,
        events=[],
        clock=clk,
    )


def apply_command(state: SessionState, command_id: int, t_ms: Optional[int] = None) -> SessionEvent:
    """Apply one command selection and append the resulting event.

    Behavior by (level, command): level 1 DELETE erases the last character
    (no-op on empty text); any other level-1 command descends to that
    group. At level 2, GO BACK returns to level 1 unchanged, DELETE erases
    and returns to level 1, and any character command appends it and
    returns to level 1. The layout is regenerated after every change.
    """
    if not 1 <= command_id <= 10:
        raise SessionError(f"command_id must be 1..10, got {command_id}")
    if t_ms is None:
        t_ms = state.clock() - state.started_at
    if state.events:
        t_ms = max(int(t_ms), state.events[-1].t_ms)  # log time never runs backwards
    else:
        t_ms = max(int(t_ms), 0)

    label = state.current_layout.label(command_id)
    level_before = state.level

    if label.kind == KIND_DELETE:
        if state.text_entered:
            kind, char = KIND_DELETE, state.text_entered[-1]
            state.text_entered = state.text_entered[:-1]
        else:
            kind, char = KIND_NOOP, None
        state.level = 1
        state.selected_group = None
        if kind == KIND_DELETE or level_before == 2:
            state.current_layout = level1_layout(state.text_entered, state.model)
    elif level_before == 1:
        kind, char = KIND_DESCEND, None
        state.selected_group = label
        state.level = 2
        state.current_layout = level2_layout(label)
    elif label.kind == KIND_GOBACK:
        kind, char = KIND_GOBACK, None
        state.level = 1
        state.selected_group = None
        state.current_layout = level1_layout(state.text_entered, state.model)
    else:
        kind, char = KIND_CHAR, label.chars
        state.text_entered += char
        state.level = 1
        state.selected_group = None
        state.current_layout = level1_layout(state.text_entered, state.model)

    event = SessionEvent(
        t_ms=t_ms,
        kind=kind,
        command_id=command_id,
        level_at_event=level_before,
        char=char,
        text_len=len(state.text_entered),
    )
    state.events.append(event)
    state.last_event_at = state.started_at + t_ms
    return event


def is_complete(state: SessionState) -> bool:
    """True iff the entered text equals the task target exactly."""
    if state.target_text is None:
        raise NoTargetError("session has no target sentence")
    return state.text_entered == state.target_text


def last_five(state: SessionState) -> str:
    """The trailing five (or fewer) characters of the entered text."""
    return state.text_entered[-5:]


def transcript_lines(state: SessionState) -> list[str]:
    """Line-delimited JSON, one event per line."""
    return [json.dumps(e.to_wire(), sort_keys=True) for e in state.events]


def write_transcript(state: SessionState, path: str | Path) -> None:
    Path(path).write_text("\n".join(transcript_lines(state)) + "\n", encoding="utf-8")


def read_transcript(path: str | Path) -> list[SessionEvent]:
    return parse_transcript(Path(path).read_text(encoding="utf-8"))


def parse_transcript(text: str) -> list[SessionEvent]:
    return [
        SessionEvent.from_wire(json.loads(line))
        for line in text.splitlines()
        if line.strip()
    ]


def replay(
    events: Iterable[SessionEvent],
    model: PredModel,
    target: Optional[str] = None,
) -> SessionState:
    """Re-apply a logged command sequence to a fresh session.

    Only the command ids and timestamps drive the replay; with the same
    model the regenerated layouts, event kinds, and final text are
    reproduced exactly.
    """
    state = new_session(model, target=target, clock=lambda: 0)
    for event in events:
        apply_command(state, event.command_id, t_ms=event.t_ms)
    return state
