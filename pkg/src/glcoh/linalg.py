"""Sparse exact linear algebra over GF(p) or QQ.

Vectors are dicts ``{index: value}`` with no zero values.
"""

from __future__ import annotations

from .poly import FieldSpec


class Echelon:
    """Incremental echelon form of a set of vectors.

    ``add`` returns True when the vector was independent of those added
    before.  With ``track=True`` each dependent vector yields the relation
    recorded in ``relations`` (a dict over the insertion indices).
    """

    def __init__(self, F: FieldSpec, track: bool = False):
        self.F = F
        self.p = F.p
        self.piv = {}
        self.track = track
        self.relations = []
        self.count = 0

    def __len__(self):
        return len(self.piv)

    def _reduce(self, v, tag):
        p = self.p
        v = dict(v)
        while v:
            lead = min(v)
            row = self.piv.get(lead)
            if row is None:
                return v, tag, lead
            rv, rtag = row
            c = v[lead]
            for k, a in rv.items():
                x = v.get(k, 0) - c * a
                if p:
                    x %= p
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)
            if tag is not None:
                for k, a in rtag.items():
                    x = tag.get(k, 0) - c * a
                    if p:
                        x %= p
                    if x:
                        tag[k] = x
                    else:
                        tag.pop(k, None)
        return v, tag, None

    def reduce(self, v):
        return self._reduce(v, None)[0]

    def contains(self, v) -> bool:
        return not self._reduce(v, None)[0]

    def add(self, v) -> bool:
        tag = {self.count: 1} if self.track else None
        self.count += 1
        v, tag, lead = self._reduce(v, tag)
        if lead is None:
            if self.track and tag:
                self.relations.append(tag)
            return False
        inv = self.F.inv(v[lead])
        p = self.p
        if p:
            v = {k: a * inv % p for k, a in v.items()}
            if tag is not None:
                tag = {k: a * inv % p for k, a in tag.items()}
        else:
            v = {k: a * inv for k, a in v.items()}
            if tag is not None:
                tag = {k: a * inv for k, a in tag.items()}
        self.piv[lead] = (v, tag)
        return True


def rank(vectors, F: FieldSpec) -> int:
    E = Echelon(F)
    for v in vectors:
        if v:
            E.add(v)
    return len(E)


def kernel(columns, F: FieldSpec):
    """Basis of {c : sum_j c_j columns[j] = 0}, as dicts over column indices."""
    E = Echelon(F, track=True)
    for v in columns:
        E.add(v)
    return E.relations


def apply(columns, x, F: FieldSpec):
    """The vector sum_j x_j columns[j]."""
    p = F.p
    out = {}
    for j, c in x.items():
        for k, a in columns[j].items():
            y = out.get(k, 0) + c * a
            if p:
                y %= p
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out
