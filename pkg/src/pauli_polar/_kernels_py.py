"""Pure-Python implementations of the enumeration kernels.

Same call signatures as the compiled ``_kernels`` extension. Point sets are
Python ints used as bitmasks, so these work for any number of points; the
compiled versions are limited to 64-bit masks.
"""

from __future__ import annotations


def _popcount(x: int) -> int:
    return bin(x).count("1")


def meet_once_neighbours(masks):
    """For each context i, the indices j > i meeting it in exactly one point."""
    n = len(masks)
    out = []
    for i in range(n):
        mi = masks[i]
        out.append([j for j in range(i + 1, n) if _popcount(mi & masks[j]) == 1])
    return out


def find_pentagrams(masks, start, stop):
    """Five contexts pairwise meeting in one point, no point on three of them.

    Returns sorted index 5-tuples whose smallest index lies in ``[start, stop)``.
    """
    masks = list(masks)
    nbrs = meet_once_neighbours(masks)
    nbr_sets = [set(x) for x in nbrs]
    found = []
    for i in range(start, min(stop, len(masks))):
        mi = masks[i]
        si = nbr_sets[i]
        for j in nbrs[i]:
            mj = masks[j]
            double = mi & mj
            union = mi | mj
            cands = [k for k in nbrs[j] if k in si and not masks[k] & double]
            for a, k in enumerate(cands):
                mk = masks[k]
                sk = nbr_sets[k]
                d3 = double | (mk & union)
                u3 = union | mk
                for b in range(a + 1, len(cands)):
                    l = cands[b]
                    ml = masks[l]
                    if l not in sk or ml & d3:
                        continue
                    sl = nbr_sets[l]
                    d4 = d3 | (ml & u3)
                    for c in range(b + 1, len(cands)):
                        m = cands[c]
                        if m in sk and m in sl and not masks[m] & d4:
                            found.append((i, j, k, l, m))
    return found


def enumerate_hyperplanes(points_mask, lines):
    """All proper nonempty point subsets meeting every 3-point line in 1 or 3 points.

    Depth-first search with unit propagation over the line constraints.
    """
    lines = [tuple(l) for l in lines]
    points = [p for p in range(points_mask.bit_length()) if points_mask >> p & 1]
    by_point = {p: [] for p in points}
    for ln in lines:
        for p in ln:
            by_point[p].append(ln)
    results = []

    def propagate(inside, outside, queue):
        while queue:
            p = queue.pop()
            for a, b, c in by_point[p]:
                n_in = (inside >> a & 1) + (inside >> b & 1) + (inside >> c & 1)
                n_out = (outside >> a & 1) + (outside >> b & 1) + (outside >> c & 1)
                if n_out == 3 or (n_in == 2 and n_out == 1):
                    return None
                if n_in + n_out != 2:
                    continue
                free = a if not ((inside | outside) >> a & 1) else (
                    b if not ((inside | outside) >> b & 1) else c)
                if n_in == 1:
                    outside |= 1 << free
                else:
                    inside |= 1 << free
                queue.append(free)
        return inside, outside

    def search(inside, outside):
        assigned = inside | outside
        if assigned == points_mask:
            if inside and inside != points_mask:
                results.append(inside)
            return
        free = points_mask & ~assigned
        p = (free & -free).bit_length() - 1
        for to_in in (True, False):
            bit = 1 << p
            state = propagate(inside | bit if to_in else inside,
                              outside if to_in else outside | bit, [p])
            if state is not None:
                search(*state)

    search(0, 0)
    results.sort()
    return results
