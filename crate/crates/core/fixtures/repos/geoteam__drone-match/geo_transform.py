import numpy as np


def fit_similarity(src, dst):
    """Least-squares scale + translation mapping src onto dst."""
    src_c = src - src.mean(axis=0)
    dst_c = dst - dst.mean(axis=0)
    scale = np.sqrt((dst_c ** 2).sum() / (src_c ** 2).sum())
    shift = dst.mean(axis=0) - scale * src.mean(axis=0)
    return scale, shift
