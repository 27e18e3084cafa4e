"""Pure-numpy fallback with the same contract as the compiled kernel."""
import numpy as np


def partial_norms_p(samples, center, inv_weight, p, checkpoints):
    """``out[i, j] = sum_{k < checkpoints[j]} |(samples[i, k] - center[k]) * inv_weight[k]|**p``."""
    samples = np.asarray(samples, dtype=np.float64)
    n_cols = samples.shape[1]
    checkpoints = np.asarray(checkpoints, dtype=np.int64)
    center = np.asarray(center, dtype=np.float64)
    inv_weight = np.asarray(inv_weight, dtype=np.float64)
    if center.shape[0] < n_cols or inv_weight.shape[0] < n_cols:
        raise ValueError("center and weights must cover every sampled coordinate")
    if (checkpoints.size == 0 or checkpoints[0] < 1 or checkpoints[-1] > n_cols
            or np.any(np.diff(checkpoints) < 0)):
        if checkpoints.size:
            raise ValueError("checkpoints must be sorted dimensions in 1..n")
        return np.empty((samples.shape[0], 0))
    top = int(checkpoints[-1])
    d = np.abs((samples[:, :top] - center[:top]) * inv_weight[:top])
    if p == 2.0:
        d = d * d
    elif p != 1.0:
        d = d ** p
    # sequential accumulation keeps the summation order of the compiled loop
    return np.cumsum(d, axis=1)[:, checkpoints - 1]
