"""Small linear-inequality systems: Fourier-Motzkin projection and 2-D regions.

Arithmetic is floating point with an absolute tolerance (``TOL``); systems
here have a handful of rows and at most six variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

TOL = 1e-9

# canonical infeasible row under x >= 0
_EMPTY_ROW = (1.0, 1.0, -1.0)


class UnboundedRegionError(ValueError):
    """Raised when an operation needs a bounded region and gets an unbounded one."""


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class IneqSystem:
    """``A @ x <= b`` over named variables, with ``x_v >= 0`` for ``v in nonneg``."""

    vars: tuple[str, ...]
    A: np.ndarray
    b: np.ndarray
    nonneg: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        A = _frozen(self.A).reshape(-1, len(self.vars))
        b = _frozen(self.b).reshape(-1)
        if A.shape[0] != b.shape[0]:
            raise ValueError(f"{A.shape[0]} coefficient rows but {b.shape[0]} right-hand sides")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("coefficients and right-hand sides must be finite")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        nonneg = frozenset(self.nonneg)
        if not nonneg <= set(self.vars):
            raise ValueError(f"nonneg names {sorted(nonneg - set(self.vars))} are not variables")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "nonneg", nonneg)

    @classmethod
    def from_rows(cls, vars: Sequence[str], rows: Iterable[tuple[Mapping[str, float], float]],
                  nonneg: Iterable[str] = ()) -> "IneqSystem":
        """Build from sparse rows ``({name: coef}, rhs)``."""
        vars = tuple(vars)
        index = {v: i for i, v in enumerate(vars)}
        A, b = [], []
        for coefs, rhs in rows:
            row = [0.0] * len(vars)
            for name, c in coefs.items():
                if name not in index:
                    raise ValueError(f"unknown variable {name!r}")
                row[index[name]] += c
            A.append(row)
            b.append(rhs)
        return cls(vars, np.array(A).reshape(-1, len(vars)), np.array(b), frozenset(nonneg))

    def __len__(self):
        return len(self.b)

    def is_feasible_point(self, point: Mapping[str, float], tol: float = TOL) -> bool:
        x = np.array([point[v] for v in self.vars], dtype=float)
        if any(x[i] < -tol for i, v in enumerate(self.vars) if v in self.nonneg):
            return False
        return bool(np.all(self.A @ x <= self.b + tol))


def _prune_parallel(A: np.ndarray, b: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Drop trivially true rows and rows dominated by a positively parallel row."""
    keep_A, keep_b = [], []
    best: dict[tuple, int] = {}
    for row, rhs in zip(A, b):
        scale = np.max(np.abs(row))
        if scale <= tol:
            if rhs >= -tol:
                continue  # 0 <= rhs
            # infeasible; keep a single witness
            return np.zeros((1, A.shape[1])), np.array([-1.0])
        row_n, rhs_n = row / scale, rhs / scale
        key = tuple(np.round(row_n, 9))
        if key in best:
            j = best[key]
            keep_b[j] = min(keep_b[j], rhs_n)
            continue
        best[key] = len(keep_A)
        keep_A.append(row_n)
        keep_b.append(rhs_n)
    if not keep_A:
        return np.zeros((0, A.shape[1])), np.zeros(0)
    return np.array(keep_A), np.array(keep_b)


def fm_eliminate(system: IneqSystem, var: str, *, prune: bool = True,
                 tol: float = TOL) -> IneqSystem:
    """Project out `var` by Fourier-Motzkin pairing of its upper and lower bounds.

    Nonnegativity of `var` enters as the row ``-var <= 0`` before pairing.
    With ``prune=False`` the raw pairing output is returned (zero rows included).
    """
    if var not in system.vars:
        raise ValueError(f"unknown variable {var!r}; system has {system.vars}")
    j = system.vars.index(var)
    A, b = system.A, system.b
    if var in system.nonneg:
        nn = np.zeros((1, A.shape[1]))
        nn[0, j] = -1.0
        A = np.vstack([A, nn])
        b = np.append(b, 0.0)
    col = A[:, j]
    upper = np.flatnonzero(col > tol)
    lower = np.flatnonzero(col < -tol)
    free = np.flatnonzero(np.abs(col) <= tol)

    rows = [A[free]]
    rhs = [b[free]]
    if len(upper) and len(lower):
        # (a_u/c_u) + (a_l/|c_l|) eliminates var
        U = A[upper] / col[upper, None]
        bu = b[upper] / col[upper]
        L = A[lower] / -col[lower, None]
        bl = b[lower] / -col[lower]
        rows.append((U[:, None, :] + L[None, :, :]).reshape(-1, A.shape[1]))
        rhs.append((bu[:, None] + bl[None, :]).reshape(-1))
    A_new = np.delete(np.vstack(rows), j, axis=1)
    b_new = np.concatenate(rhs)
    if prune:
        A_new, b_new = _prune_parallel(A_new, b_new, tol)
    new_vars = system.vars[:j] + system.vars[j + 1:]
    return IneqSystem(new_vars, A_new, b_new, system.nonneg - {var})


def _interval(system: IneqSystem, var: str, fixed: Mapping[str, float],
              tol: float) -> tuple[float, float]:
    j = system.vars.index(var)
    others = [i for i in range(len(system.vars)) if i != j]
    x_other = np.array([fixed[system.vars[i]] for i in others])
    resid = system.b - system.A[:, others] @ x_other
    col = system.A[:, j]
    lo = 0.0 if var in system.nonneg else -math.inf
    hi = math.inf
    for c, r in zip(col, resid):
        if c > tol:
            hi = min(hi, r / c)
        elif c < -tol:
            lo = max(lo, r / c)
        elif r < -tol * max(1.0, abs(r)):
            return math.inf, -math.inf
    return lo, hi


def lift(system: IneqSystem, point: Mapping[str, float], *,
         tol: float = 1e-7) -> dict[str, float] | None:
    """Extend a point on the kept variables to a feasible point of `system`.

    Variables absent from `point` are eliminated in system order, then
    back-substituted one at a time by picking a value inside the feasible
    interval left by the already-fixed variables. Returns ``None`` if some
    interval is empty, i.e. the point is not in the projection.
    """
    order = [v for v in system.vars if v not in point]
    chain = [system]
    for v in order:
        chain.append(fm_eliminate(chain[-1], v))
    if not chain[-1].is_feasible_point(point, tol):
        return None
    fixed = dict(point)
    for v, sys_before in zip(reversed(order), reversed(chain[:-1])):
        lo, hi = _interval(sys_before, v, fixed, tol)
        if lo > hi + tol * max(1.0, abs(lo), abs(hi)):
            return None
        if math.isinf(lo) and math.isinf(hi):
            value = 0.0
        elif math.isinf(hi):
            value = lo
        elif math.isinf(lo):
            value = hi
        else:
            value = 0.5 * (lo + hi) if lo <= hi else lo
        fixed[v] = value
    return {v: fixed[v] for v in system.vars}


@dataclass(frozen=True)
class Region2D:
    """``{x >= 0 : a*x1 + b*x2 <= c for (a, b, c) in rows}``."""

    rows: tuple[tuple[float, float, float], ...]
    label: str = ""

    def __post_init__(self):
        rows = tuple((float(a), float(b), float(c)) for a, b, c in self.rows)
        for a, b, c in rows:
            if not all(math.isfinite(v) for v in (a, b, c)):
                raise ValueError(f"non-finite row {(a, b, c)}")
            if a == 0.0 and b == 0.0:
                raise ValueError("row with (a, b) == (0, 0); drop it or use Region2D.empty()")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def empty(cls, label: str = "") -> "Region2D":
        return cls((_EMPTY_ROW,), label)

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=float).reshape(-1, 3)

    def with_label(self, label: str) -> "Region2D":
        return Region2D(self.rows, label)


def project(system: IneqSystem, keep: Sequence[str], *, tol: float = TOL) -> Region2D:
    """Exact projection onto two variables, as a redundancy-free `Region2D`.

    The result carries the implicit ``x >= 0`` of `Region2D`; kept variables
    must therefore be nonnegative on the feasible set (declared or implied).
    """
    keep = tuple(keep)
    if len(keep) != 2 or len(set(keep)) != 2:
        raise ValueError(f"keep must name two distinct variables, got {keep}")
    for v in keep:
        if v not in system.vars:
            raise ValueError(f"unknown variable {v!r}")
    current = system
    for v in system.vars:
        if v not in keep:
            current = fm_eliminate(current, v, tol=tol)
    idx = [current.vars.index(v) for v in keep]
    rows = []
    for row, rhs in zip(current.A[:, idx], current.b):
        if np.max(np.abs(row)) <= tol:
            if rhs < -tol:
                return Region2D.empty()
            continue
        rows.append((row[0], row[1], rhs))
    return remove_redundant(Region2D(tuple(rows)), tol=tol)


def _with_axes(rows: np.ndarray) -> np.ndarray:
    return np.vstack([rows, [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]]])


def _feasible(rows: np.ndarray, pts: np.ndarray, tol: float) -> np.ndarray:
    H = _with_axes(rows)
    slack = pts @ H[:, :2].T - H[:, 2]
    scale = np.maximum(1.0, np.abs(H[:, 2]))
    return np.all(slack <= tol * scale, axis=-1)


def _candidate_vertices(rows: np.ndarray, tol: float) -> np.ndarray:
    H = _with_axes(rows)
    pts = []
    for i in range(len(H)):
        for j in range(i + 1, len(H)):
            M = H[[i, j], :2]
            det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
            if abs(det) <= 1e-14 * max(1.0, np.abs(M).max() ** 2):
                continue
            pts.append(np.linalg.solve(M, H[[i, j], 2]))
    if not pts:
        return np.zeros((0, 2))
    pts = np.array(pts)
    return pts[_feasible(rows, pts, tol)]


def _dedupe(pts: np.ndarray, tol: float) -> np.ndarray:
    out: list[np.ndarray] = []
    for p in pts:
        if not any(np.max(np.abs(p - q)) <= tol * max(1.0, np.max(np.abs(q))) for q in out):
            out.append(p)
    return np.array(out).reshape(-1, 2)


def _recession_rays(rows: np.ndarray, tol: float) -> list[np.ndarray]:
    """Extreme rays of ``{d >= 0 : A d <= 0}`` (empty when that cone is {0})."""
    cands = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    for a, b, _ in rows:
        d = np.array([b, -a])
        for s in (d, -d):
            if s.min() >= 0 and s.max() > 0:
                cands.append(s / np.linalg.norm(s))
    A = rows[:, :2]
    return [d for d in cands if np.all(A @ d <= tol)] if len(rows) else cands


def _vertices_ccw(rows: np.ndarray, tol: float) -> np.ndarray:
    pts = _dedupe(_candidate_vertices(rows, tol), tol)
    if len(pts) <= 1:
        return pts
    centre = pts.mean(axis=0)
    ang = np.arctan2(pts[:, 1] - centre[1], pts[:, 0] - centre[0])
    pts = pts[np.argsort(ang, kind="stable")]
    start = min(range(len(pts)), key=lambda i: (round(pts[i, 0], 12), round(pts[i, 1], 12)))
    return np.roll(pts, -start, axis=0)


def vertices_2d(region: Region2D, tol: float = TOL) -> list[tuple[float, float]]:
    """Vertices of a bounded region, counterclockwise from the lowest-left one.

    Returns ``[]`` for an empty region; raises `UnboundedRegionError` when the
    region is nonempty and unbounded.
    """
    rows = region.as_array()
    pts = _vertices_ccw(rows, tol)
    if len(pts) == 0:
        return []
    if _recession_rays(rows, tol):
        raise UnboundedRegionError(f"region {region.label!r} is unbounded")
    return [(float(x) + 0.0, float(y) + 0.0) for x, y in pts]


def contains(region: Region2D, point: Sequence[float], tol: float = TOL) -> bool:
    p = np.asarray(point, dtype=float).reshape(1, 2)
    return bool(_feasible(region.as_array(), p, tol)[0])


def is_empty(region: Region2D, tol: float = TOL) -> bool:
    return len(_candidate_vertices(region.as_array(), tol)) == 0


def is_null(region: Region2D, tol: float = TOL) -> bool:
    """True when the region holds no point other than (possibly) the origin."""
    rows = region.as_array()
    pts = _candidate_vertices(rows, tol)
    if len(pts) == 0:
        return True
    if _recession_rays(rows, tol):
        return False
    return bool(np.all(np.abs(pts) <= tol))


def remove_redundant(region: Region2D, tol: float = TOL) -> Region2D:
    """Drop rows whose removal leaves the feasible set unchanged."""
    rows = region.as_array()
    if len(rows) == 0:
        return region
    if len(_candidate_vertices(rows, tol)) == 0:
        return Region2D.empty(region.label)
    keep = list(range(len(rows)))
    for i in range(len(rows)):
        others = rows[[k for k in keep if k != i]]
        a, b, c = rows[i]
        rays = _recession_rays(others, tol)
        if any(a * d[0] + b * d[1] > tol for d in rays):
            continue
        pts = _candidate_vertices(others, tol)
        if len(pts) and np.max(pts @ np.array([a, b])) <= c + tol * max(1.0, abs(c)):
            keep.remove(i)
    return Region2D(tuple(tuple(rows[k]) for k in keep), region.label)


def symmetric_max(region: Region2D, tol: float = TOL) -> float:
    """Largest ``t`` with ``(t, t)`` in the region; 0 when no such ``t >= 0`` exists."""
    lo, hi = 0.0, math.inf
    for a, b, c in region.rows:
        s = a + b
        if s > tol:
            hi = min(hi, c / s)
        elif s < -tol:
            lo = max(lo, c / s)
        elif c < -tol:
            return 0.0
    if math.isinf(hi):
        if is_empty(region, tol):
            return 0.0
        raise UnboundedRegionError(f"region {region.label!r} is unbounded along the diagonal")
    if hi < lo - tol:
        return 0.0
    return max(hi, 0.0)


def regions_equal(r1: Region2D, r2: Region2D, tol: float = TOL) -> bool:
    """Same feasible set: mutual vertex containment and equal symmetric maxima."""
    v1, v2 = vertices_2d(r1, tol), vertices_2d(r2, tol)
    if not v1 or not v2:
        return not v1 and not v2
    if not all(contains(r2, p, tol) for p in v1):
        return False
    if not all(contains(r1, p, tol) for p in v2):
        return False
    return abs(symmetric_max(r1, tol) - symmetric_max(r2, tol)) <= tol * max(
        1.0, symmetric_max(r1, tol))


def _point_polygon_distance(p: np.ndarray, poly: np.ndarray, region: Region2D) -> float:
    if contains(region, p):
        return 0.0
    if len(poly) == 1:
        return float(np.linalg.norm(p - poly[0]))
    best = math.inf
    for a, b in zip(poly, np.roll(poly, -1, axis=0)):
        ab = b - a
        denom = float(ab @ ab)
        t = 0.0 if denom == 0 else min(1.0, max(0.0, float((p - a) @ ab) / denom))
        best = min(best, float(np.linalg.norm(p - (a + t * ab))))
    return best


def hausdorff_distance(r1: Region2D, r2: Region2D) -> float:
    """Hausdorff distance between two bounded regions (inf if exactly one is empty).

    For convex polygons the maximum is attained at a vertex, so only vertices
    are probed.
    """
    v1, v2 = np.array(vertices_2d(r1)), np.array(vertices_2d(r2))
    if len(v1) == 0 or len(v2) == 0:
        return 0.0 if len(v1) == len(v2) else math.inf
    d12 = max(_point_polygon_distance(p, v2, r2) for p in v1)
    d21 = max(_point_polygon_distance(p, v1, r1) for p in v2)
    return max(d12, d21)
