"""Enumeration geometry, sharding, sampling, canonical filtering."""

import numpy as np
import pytest

from monodom.core import Colour, ColouredTournament, canonical_key
from monodom.enumeration import (
    SAMPLE_BLOCK_ROWS,
    BudgetExceededError,
    EnumerationSpec,
    codes_to_index,
    enumerate_instances,
    index_to_codes,
    instance_at,
    is_canonical,
    matches_filter,
    pattern_pinned_codes,
    sample_block,
    sample_codes,
    shard_indices,
)

RB = (Colour.RED, Colour.BLUE)
RGB = (Colour.RED, Colour.GREEN, Colour.BLUE)


def test_space_sizes():
    assert EnumerationSpec(n=3).space == 216
    assert EnumerationSpec(n=4).space == 46656
    assert EnumerationSpec(n=3, colours=2).space == 64
    assert EnumerationSpec(n=1).space == 1


def test_index_round_trip():
    spec = EnumerationSpec(n=4)
    for index in (0, 1, 6, 46655, 12345):
        codes = index_to_codes(spec, index)
        assert codes_to_index(spec, codes) == index
    # least significant digit sits in slot 0
    assert index_to_codes(spec, 1)[0] == 1
    assert index_to_codes(spec, 6)[1] == 1


def test_instance_at_matches_codes():
    spec = EnumerationSpec(n=3)
    t = instance_at(spec, 26)
    assert t.to_codes() == list(index_to_codes(spec, 26))


def test_enumeration_is_exhaustive_and_distinct():
    spec = EnumerationSpec(n=3)
    seen = set()
    for index, t in enumerate_instances(spec):
        seen.add(tuple(t.to_codes()))
    assert len(seen) == 216


def test_shards_partition_the_space():
    spec = EnumerationSpec(n=3)
    full = list(shard_indices(spec))
    pieces = []
    for k in range(4):
        pieces.extend(shard_indices(EnumerationSpec(n=3, shard=(k, 4))))
    assert sorted(pieces) == full
    assert len(full) == 216


def test_shard_size():
    assert EnumerationSpec(n=3, shard=(0, 4)).shard_size() == 54
    assert EnumerationSpec(n=3, shard=(3, 5)).shard_size() == 43
    total = sum(EnumerationSpec(n=3, shard=(k, 5)).shard_size() for k in range(5))
    assert total == 216


def test_spec_validation():
    with pytest.raises(ValueError):
        EnumerationSpec(n=0)
    with pytest.raises(ValueError):
        EnumerationSpec(n=3, colours=4)
    with pytest.raises(ValueError):
        EnumerationSpec(n=3, mode="all")
    with pytest.raises(ValueError):
        EnumerationSpec(n=3, filter="odd")
    with pytest.raises(ValueError):
        EnumerationSpec(n=3, shard=(4, 4))
    with pytest.raises(ValueError):
        EnumerationSpec(n=3, mode="sampled")  # needs samples
    with pytest.raises(ValueError):
        EnumerationSpec(n=3, samples=5)  # samples outside sampled mode
    with pytest.raises(ValueError):
        EnumerationSpec(n=7, mode="canonical")
    with pytest.raises(ValueError):
        EnumerationSpec(n=3, colours=2, pattern=RGB)  # green outside palette
    with pytest.raises(ValueError):
        EnumerationSpec(n=4, pattern=RGB)  # period does not divide order


def test_budget_guard():
    with pytest.raises(BudgetExceededError, match="use sampled mode"):
        EnumerationSpec(n=12)
    # sampled mode ignores the space budget
    EnumerationSpec(n=12, mode="sampled", samples=10)
    # raising the budget admits the space
    EnumerationSpec(n=5, budget=6**10)


def test_pattern_pinning_rb_order4():
    spec = EnumerationSpec(n=4, pattern=RB)
    assert spec.space == 36
    for _, t in enumerate_instances(spec):
        assert t.arc_colour(0, 1) is Colour.RED
        assert t.arc_colour(1, 2) is Colour.BLUE
        assert t.arc_colour(2, 3) is Colour.RED
        assert t.arc_colour(3, 0) is Colour.BLUE


def test_pattern_pinned_codes_two_colour_palette():
    pinned = pattern_pinned_codes(4, RB, colours=2)
    # closing arc 3 -> 0 runs against slot orientation: reversed-blue is 2+1
    assert pinned[2] == 3
    spec2 = EnumerationSpec(n=4, colours=2, pattern=RB)
    assert spec2.space == 4 ** 2
    for _, t in enumerate_instances(spec2):
        assert t.arc_colour(3, 0) is Colour.BLUE


def test_pattern_spec_echo():
    d = EnumerationSpec(n=6, pattern=RGB).to_dict()
    assert d["pattern"] == "rgb"
    assert "samples" not in d and "seed" not in d
    d2 = EnumerationSpec(n=6, mode="sampled", samples=10, seed=3).to_dict()
    assert d2["samples"] == 10 and d2["seed"] == 3


def test_sampled_stream_deterministic():
    spec = EnumerationSpec(n=5, mode="sampled", samples=50, seed=11)
    a = [t.to_codes() for _, t in enumerate_instances(spec)]
    b = [t.to_codes() for _, t in enumerate_instances(spec)]
    assert a == b
    other = EnumerationSpec(n=5, mode="sampled", samples=50, seed=12)
    c = [t.to_codes() for _, t in enumerate_instances(other)]
    assert a != c


def test_sampled_shards_slice_one_stream():
    base = EnumerationSpec(n=4, mode="sampled", samples=40, seed=5)
    whole = dict(
        (i, t.to_codes()) for i, t in enumerate_instances(base)
    )
    sharded = {}
    for k in range(3):
        spec = EnumerationSpec(n=4, mode="sampled", samples=40, seed=5, shard=(k, 3))
        for i, t in enumerate_instances(spec):
            sharded[i] = t.to_codes()
    assert sharded == whole


def test_sample_block_geometry():
    spec = EnumerationSpec(n=4, mode="sampled", samples=10, seed=0)
    block = sample_block(spec, 0)
    assert block.shape == (SAMPLE_BLOCK_ROWS, 6)
    assert block.dtype == np.uint8
    assert block.max() < 6
    # block indexing is stable: row r of block b is sample b*65536 + r
    assert tuple(block[7]) == sample_codes(spec, 7)
    again = sample_block(spec, 0)
    assert (block == again).all()


def test_sample_codes_cross_block_boundary():
    spec = EnumerationSpec(
        n=3, mode="sampled", samples=SAMPLE_BLOCK_ROWS + 5, seed=9
    )
    i = SAMPLE_BLOCK_ROWS + 3
    codes = sample_codes(spec, i)
    assert codes == tuple(sample_block(spec, 1)[3])


def test_sampled_respects_pattern():
    spec = EnumerationSpec(n=6, mode="sampled", samples=30, seed=2, pattern=RGB)
    for _, t in enumerate_instances(spec):
        assert t.arc_colour(0, 1) is Colour.RED
        assert t.arc_colour(1, 2) is Colour.GREEN
        assert t.arc_colour(5, 0) is Colour.BLUE


def test_is_canonical_orbit_representatives():
    reps = 0
    for index, t in enumerate_instances(EnumerationSpec(n=3)):
        if is_canonical(t):
            reps += 1
    assert reps == 38  # one per relabelling class, frozen census


def test_canonical_mode_streams_representatives_only():
    spec = EnumerationSpec(n=3, mode="canonical")
    out = list(enumerate_instances(spec))
    assert len(out) == 38
    keys = {canonical_key(t) for _, t in out}
    assert len(keys) == 38
    for _, t in out:
        assert is_canonical(t)


def test_filter_two_colour_vertices():
    spec = EnumerationSpec(n=4, filter="two-colour-vertices")
    t_bad = ColouredTournament.from_arcs(
        4,
        {(0, 1): Colour.RED, (0, 2): Colour.BLUE, (0, 3): Colour.GREEN,
         (1, 2): Colour.RED, (1, 3): Colour.RED, (2, 3): Colour.RED},
    )
    assert not matches_filter(spec, t_bad)
    t_ok = ColouredTournament.from_codes(4, [0] * 6)
    assert matches_filter(spec, t_ok)
    assert matches_filter(EnumerationSpec(n=4), t_bad)  # "none" admits all
