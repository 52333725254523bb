"""Stirling and r-Stirling triangles of the second kind, Eulerian polynomials."""

from __future__ import annotations

import threading

from .exact_core import UniPoly

__all__ = [
    "TriangleCache",
    "EulerianTable",
    "stirling2",
    "r_stirling2",
    "eulerian_poly",
]


class TriangleCache:
    """Append-only table of r-Stirling numbers of the second kind.

    Row ``n`` (for ``n >= r``) holds the counts of partitions of
    ``{1..n}`` into ``k`` blocks with ``1..r`` in distinct blocks.  A
    request for row ``n`` fills every row up to ``n``.
    """

    def __init__(self, r: int = 0):
        if r < 0:
            raise ValueError(f"r must be >= 0, got {r}")
        self.r = r
        self._rows: list[list[int]] = [[0] * r + [1]]
        self._lock = threading.Lock()

    def _grow(self, n: int) -> None:
        with self._lock:
            rows = self._rows
            while self.r + len(rows) - 1 < n:
                prev = rows[-1]
                m = len(prev)  # index of the new row
                row = [0] * (m + 1)
                for k in range(1, m + 1):
                    below = prev[k] if k < m else 0
                    row[k] = k * below + prev[k - 1]
                rows.append(row)

    def row(self, n: int) -> tuple[int, ...]:
        if n < self.r:
            raise ValueError(f"r-Stirling numbers need n >= r (n={n}, r={self.r})")
        if self.r + len(self._rows) - 1 < n:
            self._grow(n)
        return tuple(self._rows[n - self.r])

    def __call__(self, n: int, k: int) -> int:
        row = self.row(n)
        if k < 0 or k > n:
            return 0
        return row[k]


_stirling = TriangleCache(0)
_r_caches: dict[int, TriangleCache] = {0: _stirling}
_r_lock = threading.Lock()


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _stirling(n, k)


def _cache_for(r: int) -> TriangleCache:
    cache = _r_caches.get(r)
    if cache is None:
        with _r_lock:
            cache = _r_caches.setdefault(r, TriangleCache(r))
    return cache


def r_stirling2(n: int, k: int, r: int) -> int:
    """r-Stirling number of the second kind.

    Partitions of ``{1..n}`` into ``k`` nonempty blocks such that the
    elements ``1..r`` all land in different blocks.  Raises
    ``ValueError`` when ``n < r``.
    """
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    return _cache_for(r)(n, k)


class EulerianTable:
    """Eulerian polynomials A_n(t) = sum_j <n,j> t^(j+1), with A_0 = 1."""

    def __init__(self):
        self._numbers: list[list[int]] = [[1]]
        self._polys: list[UniPoly] = [UniPoly.constant(1)]
        self._lock = threading.Lock()

    def __call__(self, n: int) -> UniPoly:
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        if n >= len(self._polys):
            with self._lock:
                while len(self._polys) <= n:
                    m = len(self._numbers)
                    prev = self._numbers[-1]
                    row = [0] * m
                    for j in range(m):
                        same = prev[j] if j < len(prev) else 0
                        left = prev[j - 1] if j >= 1 else 0
                        row[j] = (j + 1) * same + (m - j) * left
                    self._numbers.append(row)
                    self._polys.append(UniPoly([0] + row))
        return self._polys[n]


_eulerian = EulerianTable()


def eulerian_poly(n: int) -> UniPoly:
    return _eulerian(n)
