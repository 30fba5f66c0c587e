"""Backend selection and thread fan-out for the whole-space kernels.

The compiled extension is preferred; set ``SEGRE222_BACKEND=python`` to force
the numpy fallback.  Results never depend on the backend or thread count.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None


def available_backends() -> list[str]:
    return (["cython"] if _ckernels is not None else []) + ["python"]


def get_backend(name: str | None = None):
    name = name or os.environ.get("SEGRE222_BACKEND", "auto")
    if name == "auto":
        return _ckernels if _ckernels is not None else _pykernels
    if name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        return _ckernels
    if name == "python":
        return _pykernels
    raise ValueError(f"unknown backend {name!r}")


def backend_name(backend=None) -> str:
    backend = backend or get_backend()
    return "cython" if backend is _ckernels and _ckernels is not None else "python"


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    bounds = np.linspace(0, n, parts + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run(fn, n: int, threads: int, args: tuple) -> None:
    chunks = _chunks(n, threads * 4 if threads > 1 else 1)
    if threads <= 1:
        for a, b in chunks:
            fn(*args, a, b)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for fut in [pool.submit(fn, *args, a, b) for a, b in chunks]:
            fut.result()


def point_images(F, coords: np.ndarray, mat: np.ndarray, threads: int = 1, backend=None) -> np.ndarray:
    """Index of the image of every point under the linear map ``mat`` (8x8 over GF(q))."""
    backend = backend or get_backend()
    out = np.empty(len(coords), dtype=np.int32)
    args = (coords, np.ascontiguousarray(mat, dtype=np.int64), F.add_table, F.mul_table,
            F.inv_table, F.q, out)
    _run(backend.images, len(coords), threads, args)
    return out


def classify_points(F, coords: np.ndarray, scaled_pure: np.ndarray, funcs: np.ndarray,
                    threads: int = 1, backend=None):
    """Return ``(singular, flattening_ranks, rank)`` arrays for every row of ``coords``."""
    backend = backend or get_backend()
    n = len(coords)
    singular = np.zeros(n, dtype=np.uint8)
    flat = np.zeros((n, 3), dtype=np.uint8)
    rank = np.zeros(n, dtype=np.uint8)
    args = (coords, F.add_table, F.sub_table, F.mul_table, F.q,
            np.ascontiguousarray(scaled_pure, dtype=np.uint8),
            np.ascontiguousarray(funcs, dtype=np.uint8), singular, flat, rank)
    _run(backend.classify, n, threads, args)
    return singular.astype(bool), flat, rank


def orbit_ids(perms: np.ndarray, backend=None) -> np.ndarray:
    backend = backend or get_backend()
    return backend.orbit_ids(np.ascontiguousarray(perms, dtype=np.int32))
