"""Bell polynomials and the higher-order chain and inverse rules.

Jets are lists of arrays: ``jet[i]`` holds the ``(i+1)``-th derivative at
every evaluation point.
"""

from __future__ import annotations

from math import comb

import numpy as np


class BellTable:
    """Partial Bell polynomials ``B[n, k]`` of a growing sequence ``x_1, x_2, ...``.

    Rows are filled on demand with
    ``B[n, k] = sum_i C(n-1, i-1) x_i B[n-i, k-1]``; row ``n`` with ``k >= 2``
    only reads ``x_1 .. x_{n-1}``, which is what the inverse rule needs.
    """

    def __init__(self, shape=()):
        self.x: list[np.ndarray] = []
        self._one = np.ones(shape)
        self._zero = np.zeros(shape)
        self._rows: list[list[np.ndarray]] = [[self._one]]

    def append(self, xi) -> None:
        self.x.append(np.asarray(xi, dtype=float))

    def _entry(self, n: int, k: int) -> np.ndarray:
        if k == 1:
            # B[n, 1] = x_n; read live so rows cached before x_n existed stay valid
            return self.x[n - 1]
        return self._rows[n][k]

    def row(self, n: int) -> list[np.ndarray]:
        """``[B[n, 0], ..., B[n, n]]``, computing missing rows first.

        ``B[n, 1]`` is ``None`` while ``x_n`` is unknown.
        """
        while len(self._rows) <= n:
            m = len(self._rows)
            new = [self._zero, None]
            for k in range(2, m + 1):
                acc = self._zero
                for i in range(1, m - k + 2):
                    acc = acc + comb(m - 1, i - 1) * self.x[i - 1] * self._entry(m - i, k - 1)
                new.append(acc)
            self._rows.append(new)
        row = list(self._rows[n])
        if n >= 1:
            row[1] = self.x[n - 1] if n <= len(self.x) else None
        return row


def partial_bell(n: int, k: int, x) -> np.ndarray:
    """``B_{n,k}(x_1, ..., x_{n-k+1})``."""
    x = [np.asarray(v, dtype=float) for v in x]
    table = BellTable(np.shape(x[0]) if x else ())
    for v in x:
        table.append(v)
    return table.row(n)[k]


def complete_bell(n: int, x) -> np.ndarray:
    """``Y_n(x_1, ..., x_n) = sum_k B_{n,k}``."""
    x = [np.asarray(v, dtype=float) for v in x]
    table = BellTable(np.shape(x[0]) if x else ())
    for v in x:
        table.append(v)
    return sum(table.row(n)[1:], table.row(n)[0])


def chain_jet(outer: list, inner: list) -> list[np.ndarray]:
    """Derivatives of ``f o g`` from ``f^(i)`` at ``g(x)`` and ``g^(i)`` at ``x`` (Faa di Bruno)."""
    n = min(len(outer), len(inner))
    table = BellTable(np.shape(inner[0]))
    for v in inner[:n]:
        table.append(v)
    out = []
    for m in range(1, n + 1):
        row = table.row(m)
        acc = outer[0] * row[1]
        for k in range(2, m + 1):
            acc = acc + outer[k - 1] * row[k]
        out.append(acc)
    return out


def inverse_jet(forward: list) -> list[np.ndarray]:
    """Derivatives of ``f^{-1}`` at ``y`` from ``f^(i)`` at ``f^{-1}(y)``.

    Differentiating ``f(h(y)) = y`` ``n`` times gives
    ``f'(h) h^(n) + sum_{k>=2} f^(k)(h) B_{n,k}(h', ...) = 0`` for ``n >= 2``,
    solved for ``h^(n)`` one order at a time.
    """
    d1 = np.asarray(forward[0], dtype=float)
    table = BellTable(np.shape(d1))
    out = [1.0 / d1]
    table.append(out[0])
    for m in range(2, len(forward) + 1):
        row = table.row(m)
        acc = forward[1] * row[2]
        for k in range(3, m + 1):
            acc = acc + forward[k - 1] * row[k]
        out.append(-acc / d1)
        table.append(out[-1])
    return out
