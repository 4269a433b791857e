"""Acceptance suite: one PASS/FAIL line per primary criterion.

Run under pytest (lines are printed live) or directly:

    python3 tests/test_acceptance.py
"""

import sys
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from pauli_polar import lie_weights as lw
from pauli_polar.contextuality import (
    classical_game_value,
    context_sign_oracle,
    enumerate_grids,
    enumerate_pentagrams,
    is_magic,
    mermin_pentagram_canonical,
    mermin_square_canonical,
    pentagram_configuration,
    pentagrams_within,
)
from pauli_polar.entanglement import (
    B1, B2, B3, GHZ, SEP, W,
    LocalGerm,
    SloccClass,
    StateTensor,
    classify_3qubit,
    hyperplane_section_poly,
    random_slocc,
    secant_dimension_estimate,
    singular_point_analysis,
    singularity_type,
    zak_dichotomy,
)
from pauli_polar.pauli_core import parse_point
from pauli_polar.polar_space import (
    ELLIPTIC,
    HYPERBOLIC,
    OVOID,
    PERP,
    build_polar_space,
    classify_grid_hyperplane,
    grid_geometry,
    hyperplane_census,
    is_generalized_quadrangle_22,
    is_triangle_free,
    mask_of,
    perp_set,
    quadric,
    veldkamp_census,
    veldkamp_sum,
)

# tolerances pinned from the criteria
PFAFFIAN_RTOL = 1e-9
PFAFFIAN_SAMPLES = 20
SLOCC_EPS = 1e-8
SLOCC_SAMPLES = 100
TERRACINI_REPEATS = 20
PENTAGRAM_BUDGET_S = 60.0


def crit_doily_census():
    sp = build_polar_space(2)
    per_line = {len(l) for l in sp.lines}
    per_point = set(Counter(p for l in sp.lines for p in l).values())
    ok = (len(sp.points), len(sp.lines)) == (15, 15) and per_line == {3} and per_point == {3} \
        and is_triangle_free(sp.points, sp.lines) and is_generalized_quadrangle_22(sp.points, sp.lines)
    return ok, f"points={len(sp.points)} lines={len(sp.lines)} 3/line 3/point triangle-free={ok}"


def crit_w5_census():
    sp = build_polar_space(3)
    got = (len(sp.points), len(sp.lines), len(sp.planes))
    return got == (63, 315, 135), f"points/lines/planes={got}"


def crit_doily_hyperplanes():
    sp = build_polar_space(2)
    census = hyperplane_census(sp)
    vk = veldkamp_census(sp)
    ids = True
    for p in range(1, 16):
        for q in range(16):
            if p != q:
                s = veldkamp_sum(quadric(sp, p), quadric(sp, q))
                ids &= (s.kind, s.q) == (PERP, p ^ q)
                if q:
                    s = veldkamp_sum(perp_set(sp, p), perp_set(sp, q))
                    ids &= (s.kind, s.q) == (PERP, p ^ q)
            s = veldkamp_sum(perp_set(sp, p), quadric(sp, q))
            ids &= s.kind in (HYPERBOLIC, ELLIPTIC) and s.q == p ^ q
    counts = (census[PERP], census[HYPERBOLIC], census[ELLIPTIC], census["total"])
    ok = counts == (15, 10, 6, 31) and sum(vk.values()) == 155 and len(vk) == 5 and ids
    return ok, f"perp/hyp/ell/total={counts} veldkamp={sum(vk.values())} in {len(vk)} types identities={ids}"


def crit_grid_census():
    g = grid_geometry()
    kinds = Counter(classify_grid_hyperplane(g, h) for h in g.enumerate_hyperplanes())
    ok = kinds[PERP] == 9 and kinds[OVOID] == 6 and sum(kinds.values()) == 15
    return ok, f"hyperplanes={sum(kinds.values())} perp={kinds[PERP]} ovoid={kinds[OVOID]}"


def crit_grids_and_square():
    grids = enumerate_grids(build_polar_space(2))
    sq = mermin_square_canonical()
    oracle = all(context_sign_oracle([sq.operators[i] for i in c]) == s for c, s in zip(sq.contexts, sq.signs))
    neg = [sorted(str(sq.operators[i]) for i in c) for c in sq.negative_contexts]
    ok = len(grids) == 10 and all(is_magic(g) for g in grids) and oracle and neg == [["XX", "YY", "ZZ"]]
    return ok, f"grids={len(grids)} all magic={all(is_magic(g) for g in grids)} square negatives={neg} oracle={oracle}"


def crit_pentagrams():
    sp = build_polar_space(3)
    t0 = time.perf_counter()
    pgs = enumerate_pentagrams(sp)
    magic = all(is_magic(pentagram_configuration(sp, pg)) for pg in pgs)
    elapsed = time.perf_counter() - t0
    canon = mermin_pentagram_canonical()
    key = tuple(sorted(mask_of(canon.operators[i].vector for i in c) for c in canon.contexts))
    present = key in {tuple(sorted(p)) for p in pgs}
    neg_ctx = [c for c in canon.contexts if {str(canon.operators[i]) for i in c} == {"XXX", "XZZ", "ZXZ", "ZZX"}]
    neg_sign = context_sign_oracle([canon.operators[i] for i in neg_ctx[0]]) if neg_ctx else 0
    ok = len(pgs) == 12096 and magic and present and neg_sign == -1 and elapsed <= PENTAGRAM_BUDGET_S
    return ok, f"count={len(pgs)} all magic={magic} canonical present={present} sign={neg_sign} {elapsed:.1f}s"


def crit_magic_line():
    sp = build_polar_space(3)
    line = lw.magic_veldkamp_line(sp)
    sizes = (len(line.perp), len(line.elliptic), len(line.hyperbolic))
    core_ok = line.core == mask_of(parse_point(s) for s in lw.CORE_OPERATORS) and len(lw.CORE_OPERATORS) == 15
    doily = lw.core_is_doily(sp, line.core)
    inner, outer = lw.partition_35(sp)
    split = (bin(inner).count("1"), bin(outer).count("1"))
    within = pentagrams_within(sp, outer, enumerate_pentagrams(sp))
    ok = sizes == (31, 27, 35) and core_ok and doily and split == (15, 20) and inner == line.core and within == 12
    return ok, f"|C|,|H_YYY|,|H_III|={sizes} core={core_ok} doily={doily} 35={split} pentagrams in 20-set={within}"


def crit_weight_orbit():
    sp = build_polar_space(3)
    core = lw.magic_veldkamp_line(sp).core
    roots = lw.default_roots(sp)
    wd = lw.weight_orbit(roots, parse_point("ZIZ"), core)
    ok = len(wd.nodes) == 15 and mask_of(wd.nodes) == core
    return ok, f"roots={[sp.label(r) for r in roots]} nodes={len(wd.nodes)} equals core={mask_of(wd.nodes) == core}"


def crit_pfaffian():
    sp = build_polar_space(3)
    labeling = lw.find_duad_labeling(sp, lw.magic_veldkamp_line(sp).core)
    try:
        c = lw.trace_cube_pfaffian_check(labeling, samples=PFAFFIAN_SAMPLES, seed=0, rtol=PFAFFIAN_RTOL)
        constant = True
    except AssertionError:
        c, constant = float("nan"), False
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(PFAFFIAN_SAMPLES):
        a = lw.random_skew(rng)
        det = np.linalg.det(a)
        worst = max(worst, abs(lw.pfaffian(a) ** 2 - det) / abs(det))
    ok = constant and worst <= PFAFFIAN_RTOL
    return ok, f"c={c:.12g} constant over {PFAFFIAN_SAMPLES} samples={constant} max|Pf^2-det|/|det|={worst:.1e}"


def crit_game_value():
    v = classical_game_value(mermin_square_canonical())
    return v == Fraction(8, 9), f"value={v}"


def crit_terracini():
    dims = {secant_dimension_estimate((2, 2, 2), 2, seed=s) for s in range(TERRACINI_REPEATS)}
    branch = zak_dichotomy((2, 2, 2))["branch"]
    return dims == {8} and branch == 1, f"sigma2 affine dims over {TERRACINI_REPEATS} seeds={sorted(dims)} zak branch={branch}"


def crit_slocc():
    reps = {SloccClass.SEP: SEP, SloccClass.B1: B1, SloccClass.B2: B2, SloccClass.B3: B3,
            SloccClass.W: W, SloccClass.GHZ: GHZ}
    direct = all(classify_3qubit(t, SLOCC_EPS) == c for c, t in reps.items())
    rng = np.random.default_rng(0)
    stable = {c.value: sum(classify_3qubit(random_slocc(rng, t), SLOCC_EPS) == c for _ in range(SLOCC_SAMPLES))
              for c, t in reps.items()}
    ok = direct and all(v == SLOCC_SAMPLES for v in stable.values())
    return ok, f"representatives={direct} stable/{SLOCC_SAMPLES}={stable}"


def crit_singularity():
    t = StateTensor.from_kets({"0000": 1, "1011": 1, "1101": 1, "1110": 1})
    germ = hyperplane_section_poly(t).localize((0, 1, 1, 1))
    grads = [germ.polynomial.diff(i)((0, 0, 0, 0)) for i in range(4)]
    r = singular_point_analysis(germ)
    kind = singularity_type(r)
    family = {}
    for k in (1, 2, 3):
        family[f"A{k}"] = singular_point_analysis(
            LocalGerm.from_string(f"x^{k + 1}+y^2+z^2+t^2", "xyzt")).milnor_number
    family["D4"] = singular_point_analysis(LocalGerm.from_string("x^3+x*y^2+z^2+t^2", "xyzt")).milnor_number
    ok = all(g == 0 for g in grads) and (r.hessian_corank, r.milnor_number, kind) == (2, 4, "D4") \
        and family == {"A1": 1, "A2": 2, "A3": 3, "D4": 4}
    return ok, f"f={germ} corank={r.hessian_corank} mu={r.milnor_number} type={kind} family mu={family}"


def crit_scope():
    # exhaustive normal-form classification is out of scope; the spot checks above stand in
    ok = singularity_type(singular_point_analysis(LocalGerm.from_string("x^5+y^2", "xy"))) == "OTHER"
    return ok, "paper-scale classification excluded; covered by property suites and spot checks"


CRITERIA = [
    ("W(3,2) census and GQ(2,2) axioms", crit_doily_census),
    ("W(5,2) census 63/315/135", crit_w5_census),
    ("doily hyperplanes 31, Veldkamp 155 in 5 types, sum identities", crit_doily_hyperplanes),
    ("grid GQ(2,1) hyperplanes 9 perp + 6 ovoid", crit_grid_census),
    ("10 magic grids, canonical square one negative context", crit_grids_and_square),
    ("12096 magic pentagrams within budget", crit_pentagrams),
    ("magic Veldkamp line 31/27/35, core doily, 15+20, 12 pentagrams", crit_magic_line),
    ("weight orbit from ZIZ equals the core", crit_weight_orbit),
    ("Tr(Omega^3)/Pf constant, Pf^2 = det", crit_pfaffian),
    ("classical square game value 8/9", crit_game_value),
    ("Terracini sigma2(2,2,2) = 8, Zak branch 1", crit_terracini),
    ("3-qubit classes and SLOCC stability", crit_slocc),
    ("D4 singularity and normal-form Milnor numbers", crit_singularity),
    ("paper-scale results excluded", crit_scope),
]


def _line(k, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] C{k:02d} {name}: {detail}"


@pytest.mark.parametrize("k,name,check", [(k, n, c) for k, (n, c) in enumerate(CRITERIA, 1)],
                         ids=[f"C{k:02d}" for k in range(1, len(CRITERIA) + 1)])
def test_criterion(k, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(k, name, ok, detail))
    assert ok, detail


def main():
    failures = 0
    for k, (name, check) in enumerate(CRITERIA, 1):
        ok, detail = check()
        failures += not ok
        print(_line(k, name, ok, detail))
    print(f"{len(CRITERIA) - failures}/{len(CRITERIA)} criteria passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
