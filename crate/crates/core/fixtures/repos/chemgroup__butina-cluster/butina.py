import csv

import numpy as np


def tanimoto_matrix(fps):
    inter = fps @ fps.T
    counts = fps.sum(axis=1)
    union = counts[:, None] + counts[None, :] - inter
    return 1.0 - inter / np.maximum(union, 1)


def butina(dist, cutoff):
    n = dist.shape[0]
    neighbours = [set(np.where(dist[i] <= cutoff)[0]) for i in range(n)]
    order = sorted(range(n), key=lambda i: (-len(neighbours[i]), i))
    assigned = set()
    clusters = []
    for i in order:
        if i in assigned:
            continue
        members = sorted(m for m in neighbours[i] if m not in assigned)
        assigned.update(members)
        clusters.append((i, members))
    return clusters


with open("data/fingerprints.csv") as fh:
    rows = list(csv.DictReader(fh))
names = [r["compound"] for r in rows]
fps = np.array([[int(c) for c in r["bits"]] for r in rows], dtype=float)

for k, (centroid, members) in enumerate(butina(tanimoto_matrix(fps), 0.35)):
    print(k, names[centroid], " ".join(names[m] for m in members))
