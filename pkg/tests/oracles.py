"""Independent brute-force oracles shared by the unit and acceptance tests.

These deliberately avoid the library's adjacency bitsets, normalized-rep
enumeration and line construction: points come from a full vector sweep
and lines from checking every vector of every candidate 2-space.
"""

from itertools import combinations, product

from polaris import linalg
from polaris.forms import eval_form, isotropic_vector_test


def oracle_points_and_lines(form):
    F, d = form.field, form.dim
    singular = isotropic_vector_test(form)
    quadratic = hasattr(form, "upper")
    pts = set()
    for v in product(range(F.q), repeat=d):
        if any(v) and singular(v):
            pts.add(linalg.normalize_point(F, v))
    pts = sorted(pts)
    lines = set()
    for u, v in combinations(pts, 2):
        if linalg.rank(F, [u, v]) != 2:
            continue
        vecs = linalg.subspace_vectors(F, [u, v])
        if quadratic:
            totally = all(singular(w) for w in vecs)
        else:
            totally = all(eval_form(form, x, y) == 0 for x in vecs for y in vecs)
        if totally:
            line = frozenset(linalg.normalize_point(F, w) for w in vecs if any(w))
            lines.add(line)
    return pts, lines
