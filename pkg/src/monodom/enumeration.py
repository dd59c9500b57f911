"""Enumeration of coloured tournaments: exhaustive, canonical, sampled.

Every labelled instance on n vertices corresponds to one mixed-radix integer:
pair slots in lexicographic order are base-(2*colours) digits, slot 0 least
significant, digit = orientation * colours + colour.  Exhaustive mode counts
through these integers; shard k of m takes the residue class k mod m, so
shards partition the space exactly.  Canonical mode keeps only instances
whose own digit string is the lexicographic minimum over vertex relabellings.
Sampled mode draws digits uniformly from a Philox counter-based generator in
fixed 65536-row blocks, so shards of one seed slice the same stream.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from .core import (
    CANONICAL_DEFAULT_LIMIT,
    Colour,
    ColouredTournament,
    canonical_key,
    pair_slots,
    slot_index,
)

SAMPLE_BLOCK_ROWS = 65536

MODES = ("exhaustive", "canonical", "sampled")
FILTERS = ("none", "two-colour-vertices")

DEFAULT_BUDGET = 10**8
CANONICAL_ENUMERATION_LIMIT = 6


class BudgetExceededError(ValueError):
    """Requested exhaustive space is larger than the configured budget."""


def pattern_pinned_codes(
    n: int, pattern: tuple[Colour, ...], colours: int = 3
) -> dict[int, int]:
    """Pair codes pinning the Hamilton cycle 0 -> 1 -> ... -> n-1 -> 0 with
    the repeating colour pattern along its arcs."""
    if n % len(pattern) != 0:
        raise ValueError(f"order {n} not divisible by pattern period {len(pattern)}")
    pinned: dict[int, int] = {}
    for i in range(n):
        j = (i + 1) % n
        colour = pattern[i % len(pattern)]
        if i < j:  # slot pair (i, j) oriented forward
            pinned[slot_index(n, i, j)] = int(colour)
        else:  # closing arc (n-1) -> 0 runs against slot orientation
            pinned[slot_index(n, j, i)] = colours + int(colour)
    return pinned


@dataclass(frozen=True)
class EnumerationSpec:
    """A reproducible description of which instances a campaign visits."""

    n: int
    colours: int = 3
    mode: str = "exhaustive"
    samples: int = 0
    seed: int = 0
    filter: str = "none"
    pattern: tuple[Colour, ...] | None = None
    shard: tuple[int, int] = (0, 1)
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be >= 1")
        if self.colours not in (2, 3):
            raise ValueError("colour count must be 2 or 3")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.filter not in FILTERS:
            raise ValueError(f"unknown filter {self.filter!r}")
        k, m = self.shard
        if m < 1 or not 0 <= k < m:
            raise ValueError(f"invalid shard {k}/{m}")
        if self.pattern is not None:
            if any(int(c) >= self.colours for c in self.pattern):
                raise ValueError("pattern colour outside the palette")
            pattern_pinned_codes(self.n, self.pattern)  # validates divisibility
        if self.mode == "sampled":
            if self.samples < 1:
                raise ValueError("sampled mode needs samples >= 1")
        elif self.samples:
            raise ValueError("samples only meaningful in sampled mode")
        if self.mode == "canonical" and self.n > CANONICAL_ENUMERATION_LIMIT:
            raise ValueError(
                f"canonical mode supported for n <= {CANONICAL_ENUMERATION_LIMIT}"
            )
        if self.mode in ("exhaustive", "canonical") and self.space > self.budget:
            raise BudgetExceededError(
                f"exhaustive space {self.space} exceeds budget {self.budget}; "
                "use sampled mode"
            )

    # -- geometry ------------------------------------------------------------

    @property
    def base(self) -> int:
        return 2 * self.colours

    @property
    def pinned(self) -> dict[int, int]:
        if self.pattern is None:
            return {}
        return pattern_pinned_codes(self.n, self.pattern, self.colours)

    @property
    def free_slots(self) -> list[int]:
        pinned = self.pinned
        return [s for s in range(len(pair_slots(self.n))) if s not in pinned]

    @property
    def space(self) -> int:
        """Size of the exhaustive index space (over free slots)."""
        return self.base ** len(self.free_slots)

    @property
    def index_count(self) -> int:
        """Number of global indices this spec's mode ranges over."""
        return self.samples if self.mode == "sampled" else self.space

    def shard_size(self) -> int:
        k, m = self.shard
        total = self.index_count
        return (total - k + m - 1) // m if total > k else 0

    def unsharded(self) -> "EnumerationSpec":
        return replace(self, shard=(0, 1))

    def to_dict(self) -> dict:
        """JSON-ready echo of every reproducibility-relevant field."""
        d = {
            "n": self.n,
            "colours": self.colours,
            "mode": self.mode,
            "filter": self.filter,
            "shard": list(self.shard),
            "budget": self.budget,
        }
        if self.mode == "sampled":
            d["samples"] = self.samples
            d["seed"] = self.seed
        if self.pattern is not None:
            d["pattern"] = "".join(c.char for c in self.pattern)
        return d


# -- indices and codes ---------------------------------------------------------


def index_to_codes(spec: EnumerationSpec, index: int) -> tuple[int, ...]:
    """Full per-slot code tuple of the instance at one exhaustive index."""
    codes = [0] * len(pair_slots(spec.n))
    for s, code in spec.pinned.items():
        codes[s] = code
    for s in spec.free_slots:
        index, digit = divmod(index, spec.base)
        codes[s] = digit
    return tuple(codes)


def codes_to_index(spec: EnumerationSpec, codes: tuple[int, ...]) -> int:
    index = 0
    for s in reversed(spec.free_slots):
        index = index * spec.base + codes[s]
    return index


def instance_at(spec: EnumerationSpec, index: int) -> ColouredTournament:
    return ColouredTournament.from_codes(
        spec.n, index_to_codes(spec, index), colours=spec.colours
    )


def shard_indices(spec: EnumerationSpec) -> range:
    """Global indices belonging to this spec's shard, in increasing order."""
    k, m = spec.shard
    return range(k, spec.index_count, m)


# -- sampling ------------------------------------------------------------------


def sample_block(spec: EnumerationSpec, block: int) -> np.ndarray:
    """Digits for sample rows [block*65536, (block+1)*65536) as a uint8 array
    of shape (65536, free slot count).

    One Philox counter block per sample block keyed by the seed, consumed by
    the generator's bounded-integer draw; all shards of a seed see identical
    blocks, so slicing rows by index is stable under any shard layout.
    """
    bg = np.random.Philox(counter=[0, 0, 0, block], key=[spec.seed % 2**64, 0])
    gen = np.random.Generator(bg)
    return gen.integers(
        0, spec.base, size=(SAMPLE_BLOCK_ROWS, len(spec.free_slots)), dtype=np.uint8
    )


def sample_codes(spec: EnumerationSpec, index: int) -> tuple[int, ...]:
    """Full code tuple of sample row `index` of the spec's stream."""
    block, row = divmod(index, SAMPLE_BLOCK_ROWS)
    digits = sample_block(spec, block)[row]
    codes = [0] * len(pair_slots(spec.n))
    for s, code in spec.pinned.items():
        codes[s] = code
    for s, digit in zip(spec.free_slots, digits):
        codes[s] = int(digit)
    return tuple(codes)


# -- canonical filtering ---------------------------------------------------------


def is_canonical(t: ColouredTournament) -> bool:
    """Is this instance its own orbit representative (lex-least codes over
    vertex relabellings)?"""
    key = canonical_key(t, limit=CANONICAL_DEFAULT_LIMIT)
    own = b"%d:" % t.n + bytes(t.to_codes())
    return own == key


# -- streams ---------------------------------------------------------------------


def enumerate_instances(
    spec: EnumerationSpec,
) -> Iterator[tuple[int, ColouredTournament]]:
    """Stream (global index, instance) pairs for the spec's shard.

    The index is the mixed-radix integer in exhaustive and canonical modes
    and the sample position in sampled mode; it is the deterministic
    tie-break key used by campaign reports.
    """
    if spec.mode == "sampled":
        for index in shard_indices(spec):
            yield index, ColouredTournament.from_codes(
                spec.n, sample_codes(spec, index), colours=spec.colours
            )
        return
    for index in shard_indices(spec):
        t = instance_at(spec, index)
        if spec.mode == "canonical" and not is_canonical(t):
            continue
        yield index, t


def matches_filter(spec: EnumerationSpec, t: ColouredTournament) -> bool:
    if spec.filter == "two-colour-vertices":
        from .domination import at_most_two_everywhere

        return at_most_two_everywhere(t)
    return True
