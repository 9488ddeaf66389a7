"""Exact linear algebra on sparse vectors ``{key: Scalar}``.

Everything is incremental Gaussian elimination over Q(zeta_L): each reduced
row has a pivot key with coefficient 1, and no other row has a nonzero entry
at that key.
"""
from __future__ import annotations

from .scalar import Scalar


class Echelon:
    """Reduced echelon form of a growing set of vectors.

    With ``track=True`` every row remembers which combination of the inserted
    vectors produced it, so membership tests can also return coordinates.
    """

    def __init__(self, track=False, pivot_order=None):
        self.rows = {}        # pivot -> (row, combination)
        self.track = track
        self.pivot_order = pivot_order
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, combo=None):
        vec = dict(vec)
        combo = dict(combo) if combo is not None else None
        for piv, (row, rc) in self.rows.items():
            c = vec.get(piv)
            if c:
                for k, x in row.items():
                    y = vec.get(k, 0) - c * x
                    if y:
                        vec[k] = y
                    else:
                        vec.pop(k, None)
                if combo is not None:
                    for k, x in rc.items():
                        y = combo.get(k, 0) - c * x
                        if y:
                            combo[k] = y
                        else:
                            combo.pop(k, None)
        return vec, combo

    def add(self, vec):
        """Insert a vector; True iff it was independent of the earlier ones."""
        idx = self.count
        self.count += 1
        combo = {idx: Scalar.coerce(1)} if self.track else None
        vec, combo = self.reduce({k: v for k, v in vec.items() if v}, combo)
        if not vec:
            return False
        if self.pivot_order is not None:
            piv = min(vec, key=self.pivot_order.__getitem__)
        else:
            piv = next(iter(vec))
        inv = vec[piv].inverse()
        vec = {k: x * inv for k, x in vec.items()}
        if combo is not None:
            combo = {k: x * inv for k, x in combo.items()}
        # keep the form fully reduced
        for p, (row, rc) in list(self.rows.items()):
            c = row.get(piv)
            if c:
                new = dict(row)
                for k, x in vec.items():
                    y = new.get(k, 0) - c * x
                    if y:
                        new[k] = y
                    else:
                        new.pop(k, None)
                newc = rc
                if combo is not None:
                    newc = dict(rc)
                    for k, x in combo.items():
                        y = newc.get(k, 0) - c * x
                        if y:
                            newc[k] = y
                        else:
                            newc.pop(k, None)
                self.rows[p] = (new, newc)
        self.rows[piv] = (vec, combo)
        return True

    def contains(self, vec):
        rest, _ = self.reduce({k: v for k, v in vec.items() if v})
        return not rest

    def coordinates(self, vec):
        """Coefficients of ``vec`` on the inserted vectors, or None if outside the span.

        Only meaningful when the inserted vectors were independent.
        """
        if not self.track:
            raise ValueError("coordinates need track=True")
        vec = {k: v for k, v in vec.items() if v}
        out = {}
        for piv, (row, rc) in self.rows.items():
            c = vec.get(piv)
            if c:
                for k, x in rc.items():
                    out[k] = out.get(k, 0) + c * x
        rest, _ = self.reduce(vec)
        if rest:
            return None
        return [out.get(i, Scalar.coerce(0)) for i in range(self.count)]


def rank(vectors):
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def is_independent(vectors):
    e = Echelon()
    return all(e.add(v) for v in vectors)


def column_basis(vectors, order=None):
    """A reduced basis of the span, each vector with leading coefficient 1.

    ``order`` fixes the key order used to choose pivots.
    """
    pos = {k: n for n, k in enumerate(order)} if order is not None else None
    e = Echelon(pivot_order=pos)
    for v in vectors:
        e.add(v)
    rows = [row for row, _ in e.rows.values()]
    if order is not None:
        rows = [dict(sorted(r.items(), key=lambda kv: pos[kv[0]])) for r in rows]
        rows.sort(key=lambda r: pos[next(iter(r))])
    return rows


def solve_in_basis(basis, target):
    """Coordinates of ``target`` in the independent list ``basis`` or None."""
    e = Echelon(track=True)
    for v in basis:
        if not e.add(v):
            raise ValueError("basis vectors are linearly dependent")
    return e.coordinates(target)


def same_span(xs, ys):
    e = Echelon()
    for v in xs:
        e.add(v)
    r = len(e)
    return all(e.contains(v) for v in ys) and rank(ys) == r
