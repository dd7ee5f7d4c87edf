"""Independent reference computations used by several test modules."""
import itertools

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from surfbraid.smith import IntMatrix, determinant


def windowed_reidemeister(M: IntMatrix, half_width: int = 50):
    """Brute-force twisted classes of ``x -> Mx`` on a box of ``Z^k``.

    Connects ``x`` to ``x + (I - M) z`` for small ``z`` inside the window and
    counts the components meeting a central box large enough to contain every
    residue class.  Returns None when ``det(M - I) == 0``.
    """
    k = M.rows
    N = IntMatrix.identity(k) - M
    d = abs(determinant(N))
    if d == 0:
        return None
    W = half_width
    side = 2 * W + 1
    coords = np.array(list(itertools.product(range(-W, W + 1), repeat=k)))
    index = lambda pts: np.ravel_multi_index(tuple((pts + W).T), (side,) * k)
    rows, cols = [], []
    steps = [np.array(z) for z in itertools.product(range(-2, 3), repeat=k) if any(z)]
    Nn = np.array(N.to_list())
    for z in steps:
        moved = coords + Nn @ z
        ok = np.all(np.abs(moved) <= W, axis=1)
        rows.append(index(coords[ok]))
        cols.append(index(moved[ok]))
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    g = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(side ** k, side ** k))
    _, labels = connected_components(g, directed=False)
    r = (d + 1) // 2
    centre = coords[np.all(np.abs(coords) <= r, axis=1)]
    return len(set(labels[index(centre)].tolist()))
