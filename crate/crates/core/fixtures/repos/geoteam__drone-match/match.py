import numpy as np

from geo_transform import fit_similarity

drone = np.loadtxt("data/drone_kp.csv", delimiter=",", skiprows=1)
sat = np.loadtxt("data/sat_kp.csv", delimiter=",", skiprows=1)

scale, shift = fit_similarity(drone, sat[: len(drone)])
projected = drone * scale + shift
d = np.linalg.norm(projected[:, None, :] - sat[None, :, :], axis=2)
print("matches:", d.argmin(axis=1).tolist())
print("rmse:", float(np.sqrt((d.min(axis=1) ** 2).mean())))
