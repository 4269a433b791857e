"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import time

from pauli_polar import _backend
from pauli_polar.contextuality import affine_contexts
from pauli_polar.polar_space import build_polar_space


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    w5 = build_polar_space(3)
    contexts = affine_contexts(w5)
    w3 = build_polar_space(2)
    cases = {
        "find_pentagrams W(5,2)": lambda pure: _backend.find_pentagrams(contexts, 0, len(contexts), pure=pure),
        "enumerate_hyperplanes W(3,2)": lambda pure: _backend.enumerate_hyperplanes(w3.points_mask, w3.lines, pure=pure),
        "enumerate_hyperplanes W(5,2)": lambda pure: _backend.enumerate_hyperplanes(w5.points_mask, w5.lines, pure=pure),
    }
    rows = []
    for name, fn in cases.items():
        t_py, r_py = best_of(lambda: fn(True), args.repeat)
        if _backend.BACKEND == "cython":
            t_c, r_c = best_of(lambda: fn(False), args.repeat)
            agree = sorted(map(tuple, r_c)) == sorted(map(tuple, r_py)) if name.startswith("find") else list(r_c) == list(r_py)
        else:
            t_c, agree = None, None
        rows.append({"kernel": name, "results": len(r_py), "python_s": round(t_py, 4),
                     "cython_s": None if t_c is None else round(t_c, 4),
                     "speedup": None if t_c is None else round(t_py / t_c, 1), "agree": agree})
    print(json.dumps({"backend": _backend.BACKEND, "runs": rows}, indent=2))


if __name__ == "__main__":
    main()
