import numpy as np


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def svd_norm(M) -> float:
    """Test-only spectral-norm oracle, independent of the package's solver."""
    return float(np.linalg.svd(np.asarray(M, dtype=complex), compute_uv=False)[0])
