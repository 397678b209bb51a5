"""Pure-Python grid zero-set kernel (reference for the compiled one)."""
from itertools import product


def zero_points(polys, nvars, values):
    """Indices of every point of ``values ** nvars`` where all integer polys vanish.

    ``polys`` is a list of term lists ``[(coeff, exps), ...]``; points are
    visited in lexicographic index order (first variable slowest).
    """
    maxdeg = max((max(e) for p in polys for _, e in p if e), default=0)
    powers = [[v ** d for d in range(maxdeg + 1)] for v in values]
    out = []
    for idx in product(range(len(values)), repeat=nvars):
        pw = [powers[i] for i in idx]
        for p in polys:
            total = 0
            for c, exps in p:
                t = c
                for k in range(nvars):
                    e = exps[k]
                    if e:
                        t *= pw[k][e]
                total += t
            if total:
                break
        else:
            out.append(idx)
    return out
