import json
import sys
from collections import defaultdict

import numpy as np

with open("data/voxel_size.json") as fh:
    vs = json.load(fh)
voxel_ml = vs["x_mm"] * vs["y_mm"] * vs["z_mm"] / 1000.0

counts = defaultdict(int)
data = np.genfromtxt("data/lesion_voxels.csv", delimiter=",", names=True, dtype=None, encoding="utf-8")
for row in data:
    counts[row["subject"]] += int(row["label"])

for subject in sorted(counts):
    sys.stdout.write(f"{subject}\t{counts[subject] * voxel_ml:.3f} mL\n")
