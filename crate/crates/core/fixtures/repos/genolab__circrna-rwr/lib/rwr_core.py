import numpy as np


def column_normalize(w):
    sums = w.sum(axis=0)
    sums[sums == 0] = 1.0
    return w / sums


def random_walk_with_restart(w, seed, restart=0.7, tol=1e-10, max_iter=1000):
    """Stationary visiting probabilities of a walker restarting at `seed`."""
    p = column_normalize(np.asarray(w, dtype=float))
    p0 = np.zeros(p.shape[0])
    p0[seed] = 1.0
    pt = p0.copy()
    for _ in range(max_iter):
        nxt = (1 - restart) * p @ pt + restart * p0
        if np.abs(nxt - pt).sum() < tol:
            return nxt
        pt = nxt
    return pt
