"""Tile alphabet and the TileGrid container.

Thirteen tile types, encoded 0..12.  Flags drive the fitness measures and the
simulator: ``standable`` tiles support the agent from below, ``pretty`` tiles
count as decoration, hazard tiles hurt agents, and the leniency measure scores
power-ups (P) against hazards (N).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyInput, HeightMismatch

AIR = 0
GROUND = 1
DESTRUCTIBLE = 2
QUESTION_POWERUP = 3
QUESTION_COIN = 4
COIN = 5
TUBE_TOP_LEFT = 6
TUBE_TOP_RIGHT = 7
TUBE_BODY = 8
BULLET_BILL = 9
PIRANHA_TUBE = 10
PLATFORM = 11
ENEMY = 12

N_TILE_TYPES = 13

TILE_NAMES = (
    "Air", "Ground", "Destructible", "QuestionPowerUp", "QuestionCoin",
    "Coin", "TubeTopLeft", "TubeTopRight", "TubeBody", "BulletBillColumn",
    "PiranhaTube", "Platform", "Enemy",
)

STANDABLE = frozenset({
    GROUND, DESTRUCTIBLE, QUESTION_POWERUP, QUESTION_COIN,
    TUBE_TOP_LEFT, TUBE_TOP_RIGHT, BULLET_BILL, PLATFORM,
})
PRETTY = frozenset({
    TUBE_TOP_LEFT, TUBE_TOP_RIGHT, TUBE_BODY, PIRANHA_TUBE, ENEMY,
    DESTRUCTIBLE, QUESTION_POWERUP, QUESTION_COIN, BULLET_BILL,
})
HAZARD = frozenset({BULLET_BILL, PIRANHA_TUBE, ENEMY})
LENIENT_P = frozenset({QUESTION_POWERUP})
LENIENT_N = HAZARD

# Boolean lookup tables indexed by tile code.
STANDABLE_MASK = np.array([c in STANDABLE for c in range(N_TILE_TYPES)])
PRETTY_MASK = np.array([c in PRETTY for c in range(N_TILE_TYPES)])
HAZARD_MASK = np.array([c in HAZARD for c in range(N_TILE_TYPES)])

ASCII_LEGEND = "-XS?QO<>[BP=E"
_CODE_OF_CHAR = {ch: code for code, ch in enumerate(ASCII_LEGEND)}


@dataclass(frozen=True)
class TileGrid:
    """A height x width matrix of tile codes, row 0 at the top."""

    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.int8)
        if cells.ndim != 2 or cells.size == 0:
            raise EmptyInput("grid must be a non-empty 2-D matrix")
        if cells.min() < 0 or cells.max() >= N_TILE_TYPES:
            raise ValueError("tile codes must be in 0..12")
        cells = cells.copy()
        cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @property
    def n_tot(self) -> int:
        return self.cells.size

    @property
    def n_st(self) -> int:
        return int(STANDABLE_MASK[self.cells].sum())

    @property
    def n_pt(self) -> int:
        return int(PRETTY_MASK[self.cells].sum())

    def __eq__(self, other) -> bool:
        return isinstance(other, TileGrid) and np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash((self.cells.shape, self.cells.tobytes()))


def concatenate(segments: list[TileGrid]) -> TileGrid:
    """Join segments left to right into one wider grid."""
    if not segments:
        raise EmptyInput("no segments to concatenate")
    height = segments[0].height
    for seg in segments[1:]:
        if seg.height != height:
            raise HeightMismatch(f"segment heights differ: {height} vs {seg.height}")
    return TileGrid(np.hstack([seg.cells for seg in segments]))


def render_ascii(grid: TileGrid) -> str:
    """One character per cell, one line per row."""
    legend = np.array(list(ASCII_LEGEND))
    return "\n".join("".join(row) for row in legend[grid.cells])


def parse_ascii(text: str) -> TileGrid:
    """Inverse of render_ascii."""
    lines = text.splitlines()
    if not lines:
        raise EmptyInput("no rows to parse")
    try:
        cells = [[_CODE_OF_CHAR[ch] for ch in line] for line in lines]
    except KeyError as exc:
        raise ValueError(f"unknown tile character {exc.args[0]!r}") from None
    widths = {len(row) for row in cells}
    if len(widths) != 1:
        raise ValueError("rows have differing widths")
    return TileGrid(np.array(cells, dtype=np.int8))
