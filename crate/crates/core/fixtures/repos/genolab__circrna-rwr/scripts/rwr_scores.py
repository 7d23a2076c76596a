import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))
from lib.rwr_core import random_walk_with_restart

N_CIRC = 3

adj = np.loadtxt("data/adjacency.csv", delimiter=",")
with open("data/labels.txt") as fh:
    labels = [line.strip() for line in fh if line.strip()]

os.makedirs("results", exist_ok=True)
with open("results/scores.csv", "w") as out:
    out.write("circrna,disease,score\n")
    for i in range(N_CIRC):
        scores = random_walk_with_restart(adj, i)
        for j in range(N_CIRC, len(labels)):
            out.write(f"{labels[i]},{labels[j]},{scores[j]:.6f}\n")
