import random
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_polar.contextuality import (
    Configuration,
    ContextError,
    affine_contexts,
    classical_game_value,
    configuration_from_points,
    context_sign,
    context_sign_oracle,
    enumerate_grids,
    enumerate_pentagrams,
    is_magic,
    mermin_pentagram_canonical,
    mermin_square_canonical,
    parity_obstruction,
    pentagram_configuration,
    pentagrams_within,
)
from pauli_polar.lie_weights import magic_veldkamp_line, partition_35
from pauli_polar.pauli_core import parse_pauli
from pauli_polar.polar_space import HYPERBOLIC, all_hyperplanes, mask_of, points_of, transvection


def ops(*texts):
    return [parse_pauli(t) for t in texts]


@pytest.mark.parametrize("texts,sign", [(("IZ", "ZI", "ZZ"), 1), (("ZZ", "XX", "YY"), -1),
                                        (("XXX", "XZZ", "ZXZ", "ZZX"), -1)])
def test_context_sign_examples(texts, sign):
    assert context_sign(ops(*texts)) == sign
    assert context_sign_oracle(ops(*texts)) == sign


def test_context_sign_order_independent():
    for perm in permutations(ops("XXX", "XZZ", "ZXZ", "ZZX")):
        assert context_sign(perm) == -1


@pytest.mark.parametrize("texts", [("X", "Z", "Y"), ("XX", "ZZ"), ("IZ", "ZI")])
def test_invalid_contexts(texts):
    with pytest.raises(ContextError):
        context_sign(ops(*texts))


def test_canonical_square():
    sq = mermin_square_canonical()
    assert sq.signs == (1, 1, 1, 1, 1, -1)
    assert [{str(sq.operators[i]) for i in c} for c in sq.negative_contexts] == [{"ZZ", "XX", "YY"}]
    assert is_magic(sq)
    assert set(sq.incidence.sum(axis=0)) == {2}
    for ctx, s in zip(sq.contexts, sq.signs):
        assert context_sign_oracle([sq.operators[i] for i in ctx]) == s
    assert not is_magic(sq.with_signs([1] * 6))


def test_canonical_pentagram():
    pg = mermin_pentagram_canonical()
    assert pg.signs.count(-1) == 1
    assert is_magic(pg)
    neg = pg.negative_contexts[0]
    assert {str(pg.operators[i]) for i in neg} == {"XXX", "XZZ", "ZXZ", "ZZX"}
    for ctx, s in zip(pg.contexts, pg.signs):
        assert context_sign_oracle([pg.operators[i] for i in ctx]) == s
        v = 0
        for i in ctx:
            v ^= pg.operators[i].vector
        assert v == 0 and len(ctx) == 4


def test_configuration_json_round_trip():
    for cfg in (mermin_square_canonical(), mermin_pentagram_canonical()):
        assert Configuration.from_json(cfg.to_json()) == cfg


def test_grids(doily):
    grids = enumerate_grids(doily)
    assert len(grids) == 10
    assert all(is_magic(g) for g in grids)
    hyperbolic = {h.mask for h in all_hyperplanes(doily) if h.kind == HYPERBOLIC}
    assert {g.point_mask for g in grids} == hyperbolic


def test_affine_contexts(w5):
    assert len(affine_contexts(w5)) == 945


def test_pentagram_count(w5, pentagrams):
    assert len(pentagrams) == 12096
    assert len(set(pentagrams)) == 12096


def test_pentagram_structure(pentagrams):
    for pg in pentagrams[::97]:
        union = 0
        for m in pg:
            union |= m
        assert bin(union).count("1") == 10
        for a in pg:
            for b in pg:
                if a != b:
                    assert bin(a & b).count("1") == 1


def test_canonical_pentagram_present(w5, pentagrams):
    pg = mermin_pentagram_canonical()
    key = tuple(sorted(mask_of(pg.operators[i].vector for i in c) for c in pg.contexts))
    assert key in {tuple(sorted(p)) for p in pentagrams}


def test_all_pentagrams_magic_and_parity(w5, pentagrams):
    for pg in pentagrams:
        cfg = pentagram_configuration(w5, pg)
        magic = is_magic(cfg)
        assert magic
        assert parity_obstruction(cfg) == magic


def test_parity_agrees_on_grids(doily):
    for g in enumerate_grids(doily):
        assert parity_obstruction(g) == is_magic(g)


def test_threads_and_backends_agree(w5, pentagrams):
    ref = sorted(pentagrams)
    assert sorted(enumerate_pentagrams(w5, threads=3)) == ref
    assert sorted(enumerate_pentagrams(w5, pure=True, threads=2)) == ref


def test_pentagrams_within(w5, pentagrams):
    inner, outer = partition_35(w5)
    assert pentagrams_within(w5, outer, pentagrams) == 12
    assert pentagrams_within(w5, magic_veldkamp_line(w5).core, pentagrams) == 0
    assert pentagrams_within(w5, w5.points_mask, pentagrams) == 12096


def test_pentagrams_transvection_invariant(w5, pentagrams):
    ref = {tuple(sorted(p)) for p in pentagrams}
    rng = random.Random(3)
    for _ in range(10):
        h = rng.randrange(1, 64)
        moved = {tuple(sorted(mask_of(transvection(h, x) for x in points_of(m)) for m in p)) for p in ref}
        assert moved == ref


def game_value_oracle(cfg):
    """Independent search: strategies as full +-1 fillings of the 9 cells."""
    rows, cols = cfg.contexts[:3], cfg.contexts[3:]
    rs, cs = cfg.signs[:3], cfg.signs[3:]

    def fillings(groups, signs):
        out = []
        for vals in product((1, -1), repeat=9):
            if all(np.prod([vals[p] for p in g]) == s for g, s in zip(groups, signs)):
                out.append(vals)
        return out

    best = 0
    for a in fillings(rows, rs):
        for b in fillings(cols, cs):
            wins = sum(a[p] == b[p] for r in rows for c in cols for p in set(r) & set(c))
            best = max(best, wins)
    return Fraction(best, 9)


def test_game_value():
    sq = mermin_square_canonical()
    assert classical_game_value(sq) == Fraction(8, 9)
    assert game_value_oracle(sq) == Fraction(8, 9)
    assert classical_game_value(sq.with_signs([1] * 6)) == 1


def test_game_value_iff_magic():
    sq = mermin_square_canonical()
    for signs in product((1, -1), repeat=6):
        cfg = sq.with_signs(signs)
        assert (classical_game_value(cfg) < 1) == is_magic(cfg)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 9), st.sampled_from(["square", "pentagram"]))
def test_magic_invariant_under_operator_sign_flip(point, shape):
    cfg = mermin_square_canonical() if shape == "square" else mermin_pentagram_canonical()
    point %= len(cfg.operators)
    signs = [-s if point in c else s for c, s in zip(cfg.contexts, cfg.signs)]
    assert is_magic(cfg.with_signs(signs)) == is_magic(cfg)


def test_from_points_grid_is_square(doily):
    g = enumerate_grids(doily)[0]
    cfg = configuration_from_points(doily, [mask_of(op.vector for op in (g.operators[i] for i in c))
                                            for c in g.contexts])
    assert is_magic(cfg)
