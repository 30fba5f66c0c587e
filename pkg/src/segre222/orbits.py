"""The stabiliser group of the Segre variety and its orbits on PG(7, q).

The group is generated by GL(2, q) acting on each tensor factor together
with the permutations of the three factors.  Orbits are found by closing
point sets under generator permutations (the group itself is never
listed), then compared point by point with an invariant-based labelling.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from . import kernels
from .gf import FieldDesc
from .linalg import Mat2, all_points, format_coords, mat2_apply, mat2_mul, num_points
from .rank import scaled_pure_tensors, tensor_rank
from .tensor import flattening_ranks, idx, is_nonsingular, pg1_points

log = logging.getLogger(__name__)

MAX_WHOLE_SPACE_Q = 7

IDENTITY: Mat2 = ((1, 0), (0, 1))


class ResourceGuardError(RuntimeError):
    pass


class OrbitLabel(str, Enum):
    O1 = "O1"  # rank 1: the variety itself
    O2 = "O2"  # rank 2, inside a shamrock
    O3 = "O3"  # rank 2, outside every shamrock
    O4 = "O4"  # rank 3, singular
    O5 = "O5"  # nonsingular

    def __str__(self):
        return self.value


LABELS = list(OrbitLabel)


# -- group elements ---------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """``(g1, g2, g3; perm)`` acting as ``t -> (g1 x g2 x g3)(perm . t)``.

    ``perm[m-1]`` is the position that factor ``m`` is moved to.
    """

    g: tuple[Mat2, Mat2, Mat2]
    perm: tuple[int, int, int] = (1, 2, 3)

    def __post_init__(self):
        if sorted(self.perm) != [1, 2, 3]:
            raise ValueError(f"not a permutation of (1,2,3): {self.perm}")


def identity_element() -> GroupElement:
    return GroupElement((IDENTITY, IDENTITY, IDENTITY))


def compose(F: FieldDesc, e: GroupElement, f: GroupElement) -> GroupElement:
    """The product ``e*f`` with ``act(e*f, t) == act(e, act(f, t))``."""
    inv = {pos: m for m, pos in enumerate(e.perm, start=1)}
    g = tuple(mat2_mul(F, e.g[m - 1], f.g[inv[m] - 1]) for m in (1, 2, 3))
    perm = tuple(e.perm[f.perm[m] - 1] for m in range(3))
    return GroupElement(g, perm)


def permute_factors(t: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * 8
    for i in (0, 1):
        for j in (0, 1):
            for k in (0, 1):
                new = [0, 0, 0]
                for m, im in zip(perm, (i, j, k)):
                    new[m - 1] = im
                out[idx(*new)] = t[idx(i, j, k)]
    return tuple(out)


def apply_factor(F: FieldDesc, t: Sequence[int], m: int, g: Mat2) -> tuple[int, ...]:
    """Apply ``g`` to tensor factor ``m`` (1-based)."""
    out = list(t)
    for rest in ((0, 0), (0, 1), (1, 0), (1, 1)):
        pos = [idx(*(rest[:m - 1] + (b,) + rest[m - 1:])) for b in (0, 1)]
        v = mat2_apply(F, g, (t[pos[0]], t[pos[1]]))
        out[pos[0]], out[pos[1]] = v
    return tuple(out)


def act(F: FieldDesc, e: GroupElement, t: Sequence[int]) -> tuple[int, ...]:
    t = permute_factors(t, e.perm)
    for m in (1, 2, 3):
        if e.g[m - 1] != IDENTITY:
            t = apply_factor(F, t, m, e.g[m - 1])
    return t


def element_matrix(F: FieldDesc, e: GroupElement) -> np.ndarray:
    """The 8x8 matrix of ``act(e, .)``, column c being the image of basis tensor c."""
    cols = []
    for c in range(8):
        b = [0] * 8
        b[c] = 1
        cols.append(act(F, e, b))
    return np.array(cols, dtype=np.int64).T.copy()


def gl2_generators(F: FieldDesc) -> list[Mat2]:
    gens = [((1, 1), (0, 1)), ((F.primitive, 0), (0, 1)), ((0, 1), (1, 0))]
    if F.q <= MAX_WHOLE_SPACE_Q:
        size = len(matrix_closure(F, gens))
        expected = (F.q**2 - 1) * (F.q**2 - F.q)
        if size != expected:  # pragma: no cover - would be a field-table bug
            raise AssertionError(f"generators give {size} elements, |GL(2,{F.q})| = {expected}")
    return gens


def matrix_closure(F: FieldDesc, gens: Sequence[Mat2]) -> set[Mat2]:
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in gens:
            for b in frontier:
                c = mat2_mul(F, a, b)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


def generators(F: FieldDesc) -> list[GroupElement]:
    """GL(2,q) generators on each factor, the swap (1 2) and the 3-cycle (1 2 3)."""
    out = []
    for m in (1, 2, 3):
        for a in gl2_generators(F):
            g = [IDENTITY] * 3
            g[m - 1] = a
            out.append(GroupElement(tuple(g)))
    ident = (IDENTITY,) * 3
    out.append(GroupElement(ident, (2, 1, 3)))
    out.append(GroupElement(ident, (2, 3, 1)))
    return out


def random_element(F: FieldDesc, rng) -> GroupElement:
    mats = []
    while len(mats) < 3:
        m = tuple(tuple(int(x) for x in rng.integers(0, F.q, 2)) for _ in range(2))
        if F.sub(F.mul(m[0][0], m[1][1]), F.mul(m[0][1], m[1][0])):
            mats.append(m)
    perm = tuple(int(x) + 1 for x in rng.permutation(3))
    return GroupElement(tuple(mats), perm)


# -- whole-space computations ----------------------------------------------

def check_envelope(F: FieldDesc, allow_large: bool = False) -> None:
    if F.q > MAX_WHOLE_SPACE_Q and not allow_large:
        raise ResourceGuardError(
            f"whole-space runs are limited to q <= {MAX_WHOLE_SPACE_Q}; "
            f"PG(7,{F.q}) has {num_points(F.q)} points"
        )


def generator_permutations(F: FieldDesc, threads: int = 1, backend=None,
                           coords: np.ndarray | None = None) -> np.ndarray:
    """Row ``g`` maps each point index to its image under generator ``g``."""
    coords = all_points(F.q) if coords is None else coords
    return np.stack([
        kernels.point_images(F, coords, element_matrix(F, e), threads, backend)
        for e in generators(F)
    ])


def orbit_partition(F: FieldDesc, threads: int = 1, backend=None, allow_large: bool = False,
                    perms: np.ndarray | None = None) -> np.ndarray:
    """Orbit id of every point; ids are numbered in order of each orbit's least point index."""
    check_envelope(F, allow_large)
    if perms is None:
        perms = generator_permutations(F, threads, backend)
    return kernels.orbit_ids(perms, backend)


def classify_point(F: FieldDesc, t: Sequence[int]) -> OrbitLabel:
    if not any(t):
        raise ValueError("the zero tensor is not a projective point")
    if is_nonsingular(F, t):
        return OrbitLabel.O5
    r = tensor_rank(F, t)
    if r == 1:
        return OrbitLabel.O1
    if r == 2:
        return OrbitLabel.O2 if min(flattening_ranks(F, t)) == 1 else OrbitLabel.O3
    return OrbitLabel.O4


def labels_from_invariants(singular: np.ndarray, flat: np.ndarray, rank: np.ndarray) -> np.ndarray:
    """Vectorized ``classify_point``: label numbers 1..5 per point."""
    lab = np.full(len(rank), 4, dtype=np.uint8)
    lab[rank == 1] = 1
    two = rank == 2
    lab[two & (flat.min(axis=1) == 1)] = 2
    lab[two & (flat.min(axis=1) != 1)] = 3
    lab[~singular] = 5
    return lab


@dataclass
class PointData:
    singular: np.ndarray
    flat: np.ndarray
    rank: np.ndarray
    label: np.ndarray


def classify_all(F: FieldDesc, threads: int = 1, backend=None,
                 coords: np.ndarray | None = None) -> PointData:
    coords = all_points(F.q) if coords is None else coords
    funcs = np.array(pg1_points(F), dtype=np.uint8)
    singular, flat, rank = kernels.classify_points(
        F, coords, scaled_pure_tensors(F), funcs, threads, backend
    )
    return PointData(singular, flat, rank, labels_from_invariants(singular, flat, rank))


# -- reports ----------------------------------------------------------------

@dataclass
class OrbitInfo:
    orbit_id: int
    label: str
    size: int
    representative: str
    rank: int
    flattening_ranks: list[int]
    singular: bool

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "size": self.size,
            "representative": self.representative,
            "rank": self.rank,
            "flattening_ranks": self.flattening_ranks,
            "singular": self.singular,
        }


@dataclass
class OrbitReport:
    q: int
    points: int
    orbits: list[OrbitInfo]
    verified: dict[str, bool]
    failures: list[str] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    # per-point arrays, kept for CSV output and further checks
    coords: np.ndarray | None = field(default=None, repr=False)
    orbit_id: np.ndarray | None = field(default=None, repr=False)
    data: PointData | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return all(self.verified.values())

    def canonical(self) -> dict:
        return {
            "q": self.q,
            "points": self.points,
            "orbits": [o.as_dict() for o in self.orbits],
            "verified": {
                "five_orbits": self.verified["five_orbits"],
                "four_singular": self.verified["four_singular"],
                "classifier_matches": self.verified["classifier_matches"],
            },
        }

    def to_json(self, include_meta: bool = False) -> str:
        body = self.canonical()
        if include_meta:
            body["meta"] = self.meta
        return json.dumps(body, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "coords", "rank", "singular", "label", "orbit_id"])
        d = self.data
        for n, row in enumerate(self.coords):
            w.writerow([n, format_coords(row), int(d.rank[n]), int(d.singular[n]),
                        f"O{d.label[n]}", int(self.orbit_id[n])])
        return buf.getvalue()

    def summary_table(self) -> str:
        lines = [f"PG(7,{self.q}): {self.points} points, {len(self.orbits)} orbits",
                 f"{'orbit':>5} {'label':>5} {'size':>8} {'rank':>4} {'flat':>7} singular"]
        for o in self.orbits:
            flat = "".join(map(str, o.flattening_ranks))
            lines.append(f"{o.orbit_id:>5} {o.label:>5} {o.size:>8} {o.rank:>4} {flat:>7} {o.singular}")
        for key, val in self.verified.items():
            lines.append(f"{key}: {'ok' if val else 'FAILED'}")
        lines.extend(f"FAILURE: {msg}" for msg in self.failures)
        return "\n".join(lines)


def _witness(coords: np.ndarray, n: int) -> str:
    return f"point {n} ({format_coords(coords[n])})"


def check_generator_invariance(F: FieldDesc, perms: np.ndarray, data: PointData,
                               coords: np.ndarray) -> list[str]:
    """Every generator preserves rank, singularity and the flattening-rank multiset."""
    failures = []
    flat_sorted = np.sort(data.flat, axis=1)
    for g, perm in enumerate(perms):
        for name, arr in (("rank", data.rank), ("singular", data.singular),
                          ("flattening ranks", flat_sorted)):
            bad = arr[perm] != arr
            if bad.ndim > 1:
                bad = bad.any(axis=1)
            if bad.any():
                n = int(np.flatnonzero(bad)[0])
                failures.append(f"generator {g} changes {name} of {_witness(coords, n)}")
    return failures


def verify_theorems(F: FieldDesc, threads: int = 1, backend=None,
                    allow_large: bool = False) -> OrbitReport:
    """Partition PG(7,q) into orbits, label every point, and cross-check the two."""
    check_envelope(F, allow_large)
    t0 = time.perf_counter()
    coords = all_points(F.q)
    perms = generator_permutations(F, threads, backend, coords)
    ids = orbit_partition(F, threads, backend, allow_large, perms)
    t1 = time.perf_counter()
    data = classify_all(F, threads, backend, coords)
    t2 = time.perf_counter()

    n_orbits = int(ids.max()) + 1
    failures = []

    singular_ids = np.unique(ids[data.singular])
    four_singular = len(singular_ids) == 4
    if not four_singular:
        failures.append(f"{len(singular_ids)} orbits meet the singular points, expected 4")
    five = n_orbits == 5
    if not five:
        failures.append(f"{n_orbits} orbits, expected 5")

    pairs = set(zip(ids.tolist(), data.label.tolist()))
    matches = len(pairs) == n_orbits == len({lab for _, lab in pairs})
    if not matches:
        seen = {}
        for n, (o, lab) in enumerate(zip(ids.tolist(), data.label.tolist())):
            if seen.setdefault(o, lab) != lab:
                failures.append(f"orbit {o} holds labels O{seen[o]} and O{lab}, e.g. {_witness(coords, n)}")
                break
        else:
            failures.append("two orbits share one label")

    failures += check_generator_invariance(F, perms, data, coords)
    invariant = not any("generator" in f for f in failures)

    orbits = []
    for o in range(n_orbits):
        members = np.flatnonzero(ids == o)
        rep = int(members[0])
        orbits.append(OrbitInfo(
            orbit_id=o,
            label=f"O{data.label[rep]}",
            size=len(members),
            representative=format_coords(coords[rep]),
            rank=int(data.rank[rep]),
            flattening_ranks=sorted(int(x) for x in data.flat[rep]),
            singular=bool(data.singular[rep]),
        ))

    report = OrbitReport(
        q=F.q,
        points=num_points(F.q),
        orbits=orbits,
        verified={
            "five_orbits": five,
            "four_singular": four_singular,
            "classifier_matches": matches,
            "invariants_constant": invariant,
        },
        failures=failures,
        meta={
            "backend": kernels.backend_name(backend),
            "threads": threads,
            "orbit_seconds": round(t1 - t0, 3),
            "classify_seconds": round(t2 - t1, 3),
        },
        coords=coords,
        orbit_id=ids,
        data=data,
    )
    log.info("q=%d: %d orbits in %.2fs, labels in %.2fs", F.q, n_orbits, t1 - t0, t2 - t1)
    return report
