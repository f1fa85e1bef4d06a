"""Typing performance measures: speed and information transfer rate.

ITR treats every action as one equally likely choice out of ``m``
alternatives, so it is ``actions * log2(m)`` bits over the elapsed time.
It is computed at two granularities: per command (m=10, two commands per
error-free letter) and per letter (m=72, the typing alphabet).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .layout import KIND_CHAR, KIND_DELETE
from .session import KIND_NOOP, SessionEvent, SessionState

M_COMMANDS = 10
M_LETTERS = 72


class MetricsError(ValueError):
    pass


class ZeroDurationError(MetricsError):
    """ITR was requested over a non-positive time span."""


class DegenerateAlphabetError(MetricsError):
    """ITR needs at least two alternatives per action."""


class EmptyLogError(MetricsError):
    """A report was requested for a session with no events."""


def itr(actions: float, m: int, duration_s: float) -> float:
    """Information transfer rate in bits/min: actions * log2(m) / minutes."""
    if duration_s <= 0:
        raise ZeroDurationError(f"duration must be positive, got {duration_s}")
    if m < 2:
        raise DegenerateAlphabetError(f"alphabet size must be >= 2, got {m}")
    return actions * math.log2(m) / (duration_s / 60.0)


#: Command-to-letter ITR ratio for error-free sessions (2 commands/letter):
#: 2*log2(10)/log2(72), independent of typing speed.
ERROR_FREE_ITR_RATIO = 2 * math.log2(M_COMMANDS) / math.log2(M_LETTERS)


@dataclass
class MetricsReport:
    letters: int
    commands: int
    duration_s: float
    speed_lpm: float
    itr_com_bpm: float
    itr_letter_bpm: float
    deletion_s_per_letter: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "letters": self.letters,
            "commands": self.commands,
            "duration_s": self.duration_s,
            "speed_lpm": self.speed_lpm,
            "itr_com_bpm": self.itr_com_bpm,
            "itr_letter_bpm": self.itr_letter_bpm,
            "deletion_s_per_letter": self.deletion_s_per_letter,
        }


def report_from_log(
    events: Sequence[SessionEvent],
    m_com: int = M_COMMANDS,
    m_letter: int = M_LETTERS,
) -> MetricsReport:
    """Compute the report from a session event log.

    Letters are typed characters; commands are all productive events
    (no-ops from deleting on empty text are excluded). Duration runs from
    the first to the last event timestamp; a zero span yields zero rates.
    ``deletion_s_per_letter`` is the mean gap between each delete event
    and the event before it, absent when nothing was deleted.
    """
    if not events:
        raise EmptyLogError("session log has no events")
    letters = sum(1 for e in events if e.kind == KIND_CHAR)
    commands = sum(1 for e in events if e.kind != KIND_NOOP)
    duration_s = (events[-1].t_ms - events[0].t_ms) / 1000.0

    if duration_s > 0:
        speed_lpm = letters / (duration_s / 60.0)
        itr_com_bpm = itr(commands, m_com, duration_s)
        itr_letter_bpm = itr(letters, m_letter, duration_s)
    else:
        speed_lpm = itr_com_bpm = itr_letter_bpm = 0.0

    deletion_gaps = [
        (e.t_ms - (events[i - 1].t_ms if i > 0 else 0)) / 1000.0
        for i, e in enumerate(events)
        if e.kind == KIND_DELETE
    ]
    deletion = sum(deletion_gaps) / len(deletion_gaps) if deletion_gaps else None

    return MetricsReport(
        letters=letters,
        commands=commands,
        duration_s=duration_s,
        speed_lpm=speed_lpm,
        itr_com_bpm=itr_com_bpm,
        itr_letter_bpm=itr_letter_bpm,
        deletion_s_per_letter=deletion,
    )


def report_from_session(state: SessionState) -> MetricsReport:
    return report_from_log(state.events)
