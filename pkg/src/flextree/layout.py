"""Ten-command layout generation for the two-level tree keyboard.

Level 1 shows nine groups of eight characters plus DELETE; level 2 shows
the eight characters of the chosen group plus GO BACK and DELETE. Group
contents are alphabetical (canonical charset order) until enough text has
been typed for the model's context length, then ranked: predicted next
characters first, unused characters by corpus frequency second, anything
left in canonical order last.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ppm import PredModel, frequency_ranking, predict

N_COMMANDS = 10
GROUP_SIZE = 8
N_GROUPS = 9
DELETE_POSITION = 6  # 1-based command id, fixed at both levels
GO_BACK_POSITION = 5  # 1-based command id, level 2 only

KIND_GROUP = "group"
KIND_CHAR = "char"
KIND_DELETE = "delete"
KIND_GOBACK = "goback"


class LayoutError(ValueError):
    """Invalid label or layout construction."""


class InvalidCommandForTransitionError(LayoutError):
    """The command cannot drive the requested level change."""


@dataclass(frozen=True)
class CommandLabel:
    """One of the ten selectable commands: a character group, a single
    character, DELETE, or GO BACK."""

    kind: str
    chars: str = ""

    def __post_init__(self) -> None:
        if self.kind == KIND_GROUP:
            if len(self.chars) != GROUP_SIZE or len(set(self.chars)) != GROUP_SIZE:
                raise LayoutError(
                    f"group labels need {GROUP_SIZE} distinct characters, got {self.chars!r}"
                )
        elif self.kind == KIND_CHAR:
            if len(self.chars) != 1:
                raise LayoutError(f"char labels hold one character, got {self.chars!r}")
        elif self.kind in (KIND_DELETE, KIND_GOBACK):
            if self.chars:
                raise LayoutError(f"{self.kind} labels carry no characters")
        else:
            raise LayoutError(f"unknown label kind {self.kind!r}")

    @property
    def text(self) -> str:
        """Display text for the command button."""
        if self.kind == KIND_DELETE:
            return "DELETE"
        if self.kind == KIND_GOBACK:
            return "GO BACK"
        return self.chars

    def to_wire(self) -> dict:
        if self.kind in (KIND_DELETE, KIND_GOBACK):
            return {"kind": self.kind}
        return {"kind": self.kind, "chars": self.chars}


DELETE = CommandLabel(KIND_DELETE)
GO_BACK = CommandLabel(KIND_GOBACK)


@dataclass(frozen=True)
class Layout:
    """The ten command labels currently on screen, command ids 1..10."""

    level: int
    labels: tuple[CommandLabel, ...]

    def __post_init__(self) -> None:
        if self.level not in (1, 2):
            raise LayoutError(f"level must be 1 or 2, got {self.level}")
        if len(self.labels) != N_COMMANDS:
            raise LayoutError(f"layouts have {N_COMMANDS} labels, got {len(self.labels)}")
        if self.labels[DELETE_POSITION - 1] != DELETE:
            raise LayoutError(f"command {DELETE_POSITION} must be DELETE")
        if self.level == 2 and self.labels[GO_BACK_POSITION - 1] != GO_BACK:
            raise LayoutError(f"command {GO_BACK_POSITION} must be GO BACK at level 2")

    def label(self, command_id: int) -> CommandLabel:
        if not 1 <= command_id <= N_COMMANDS:
            raise LayoutError(f"command_id must be 1..{N_COMMANDS}, got {command_id}")
        return self.labels[command_id - 1]

    def groups(self) -> list[str]:
        """Level-1 group strings in visual scan order (skipping DELETE)."""
        return [lab.chars for lab in self.labels if lab.kind == KIND_GROUP]

    def to_wire(self) -> dict:
        return {"level": self.level, "labels": [lab.to_wire() for lab in self.labels]}


def _ordered_symbols(text_entered: str, model: PredModel) -> list[str]:
    """The 72-symbol ordering that level-1 groups are chunked from."""
    k = model.order
    if k == 0 or len(text_entered) < k:
        return list(model.charset.symbols)
    ordered: list[str] = []
    placed: set[str] = set()
    for ch, _count in predict(model, text_entered[-k:]):
        if ch not in placed:
            ordered.append(ch)
            placed.add(ch)
    for ch in frequency_ranking(model):
        if ch not in placed:
            ordered.append(ch)
            placed.add(ch)
    # Guard tier: frequency_ranking already covers the whole charset, but a
    # partition must come out of this function no matter what.
    for ch in model.charset.symbols:
        if ch not in placed:
            ordered.append(ch)
            placed.add(ch)
    return ordered


def level1_layout(text_entered: str, model: PredModel) -> Layout:
    """Nine 8-character groups around the fixed DELETE at command 6.

    Groups fill command positions 1-5 and 7-10 in scan order, so the most
    probable characters land on the earliest buttons.
    """
    ordered = _ordered_symbols(text_entered, model)
    groups = ["".join(ordered[i * GROUP_SIZE : (i + 1) * GROUP_SIZE]) for i in range(N_GROUPS)]
    labels = [CommandLabel(KIND_GROUP, g) for g in groups[:5]]
    labels.append(DELETE)
    labels.extend(CommandLabel(KIND_GROUP, g) for g in groups[5:])
    return Layout(level=1, labels=tuple(labels))


def level2_layout(group: Union[CommandLabel, str]) -> Layout:
    """Split a group 4/4 around GO BACK (command 5) and DELETE (command 6)."""
    chars = group.chars if isinstance(group, CommandLabel) else group
    if len(chars) != GROUP_SIZE:
        raise LayoutError(f"level-2 layouts need an {GROUP_SIZE}-character group")
    labels = [CommandLabel(KIND_CHAR, c) for c in chars[:4]]
    labels.extend([GO_BACK, DELETE])
    labels.extend(CommandLabel(KIND_CHAR, c) for c in chars[4:])
    return Layout(level=2, labels=tuple(labels))


def next_layout(
    change_level_to: int,
    command_id: int,
    text_entered: str,
    current_layout: Layout,
    model: PredModel,
) -> Layout:
    """The layout shown after selecting ``command_id`` on ``current_layout``.

    Descending (``change_level_to=2``) opens the selected group; DELETE
    cannot descend. Ascending (``change_level_to=1``) regenerates level 1
    for the text as updated by the command: unchanged for GO BACK, last
    character removed for DELETE, selected character appended otherwise.
    """
    if change_level_to not in (1, 2):
        raise InvalidCommandForTransitionError(f"no level {change_level_to}")
    label = current_layout.label(command_id)
    if change_level_to == 2:
        if current_layout.level != 1 or label.kind != KIND_GROUP:
            raise InvalidCommandForTransitionError(
                f"command {command_id} cannot open a level-2 group"
            )
        return level2_layout(label)
    if current_layout.level == 2:
        if label.kind == KIND_GOBACK:
            return level1_layout(text_entered, model)
        if label.kind == KIND_DELETE:
            return level1_layout(text_entered[:-1], model)
        return level1_layout(text_entered + label.chars, model)
    if label.kind != KIND_DELETE:
        raise InvalidCommandForTransitionError(
            f"command {command_id} leaves level 1; only DELETE stays"
        )
    return level1_layout(text_entered[:-1], model)
