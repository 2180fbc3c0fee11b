"""Pinned random number contract.

Every random draw in the package comes from Philox4x64-10 (Salmon et al.,
SC'11) with the 128-bit key ``(seed, stream)`` and the counter starting at
zero. Uniform doubles are ``(next_uint64 >> 11) * 2**-53``, which is what
``numpy.random.Generator.random`` produces on this bit generator, so a port
needs only a Philox implementation to reproduce sampler counts.

Independent work items (verification trials, witness candidates, ...) use
distinct ``stream`` words, so results do not depend on evaluation order.
"""

from __future__ import annotations

import numpy as np

ALGORITHM = "philox4x64-10"

_U64 = 2**64


def generator(seed: int, stream: int = 0) -> np.random.Generator:
    seed = int(seed)
    stream = int(stream)
    if not (0 <= seed < _U64 and 0 <= stream < _U64):
        raise ValueError("seed and stream must be integers in [0, 2**64)")
    return np.random.Generator(np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))


def uniforms(seed: int, n: int, stream: int = 0) -> np.ndarray:
    """``n`` doubles in ``[0, 1)`` from the pinned stream."""
    return generator(seed, stream).random(n)


def complex_gaussian(gen: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian entries (real part drawn first, then imaginary)."""
    z = gen.standard_normal(tuple(shape) + (2,))
    return z[..., 0] + 1j * z[..., 1]
