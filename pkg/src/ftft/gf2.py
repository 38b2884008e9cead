"""Linear algebra over GF(2) with int bitmasks, plus normalized group cochains."""
from __future__ import annotations

from itertools import product

from .fgroup import FiniteGroup


def rref(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced rows and their pivot bits (lowest set bit as pivot)."""
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if r >> p & 1:
                r ^= b
        if r:
            p = (r & -r).bit_length() - 1
            for k in range(len(basis)):
                if basis[k] >> p & 1:
                    basis[k] ^= r
            basis.append(r)
            pivots.append(p)
    return basis, pivots


def rank(rows: list[int]) -> int:
    return len(rref(rows)[0])


def solve(rows: list[int], rhs: list[int], n: int) -> int | None:
    """x with popcount(row & x) = rhs mod 2 for all rows; free bits zero."""
    aug = [r | (b << n) for r, b in zip(rows, rhs)]
    basis, piv = rref(aug)
    x = 0
    for b, p in zip(basis, piv):
        if p == n:
            return None
        if b >> n & 1:
            x |= 1 << p
    return x


def kernel(rows: list[int], n: int) -> list[int]:
    basis, piv = rref(rows)
    pset = set(piv)
    out = []
    for f in range(n):
        if f in pset:
            continue
        v = 1 << f
        for b, p in zip(basis, piv):
            if b >> f & 1:
                v |= 1 << p
        out.append(v)
    return out


def in_span(v: int, basis: list[int], pivots: list[int]) -> bool:
    for b, p in zip(basis, pivots):
        if v >> p & 1:
            v ^= b
    return v == 0


def complement(sub: list[int], whole: list[int]) -> list[int]:
    """Vectors of `whole` extending a basis of span(sub) to span(whole)."""
    basis, piv = rref(list(sub))
    out = []
    for w in whole:
        if not in_span(w, basis, piv):
            out.append(w)
            basis, piv = rref(basis + [w])
    return out


def dot(a: int, b: int) -> int:
    return bin(a & b).count("1") & 1


class Cochains:
    """Normalized Z2-valued n-cochains on a finite group, indexed by non-unit tuples."""

    def __init__(self, G: FiniteGroup, n: int):
        self.G, self.n = G, n
        nonunit = [g for g in G.elements if g != G.unit]
        self.keys = list(product(nonunit, repeat=n))
        self.pos = {k: i for i, k in enumerate(self.keys)}

    def __len__(self):
        return len(self.keys)

    def bit(self, key) -> int:
        """Mask of the basis cochain at `key`, zero if normalized away."""
        p = self.pos.get(tuple(key))
        return 0 if p is None else 1 << p

    def to_mask(self, values: dict) -> int:
        m = 0
        for k, v in values.items():
            if v % 2:
                m |= self.bit(k)
        return m

    def to_dict(self, mask: int) -> dict:
        G, n = self.G, self.n
        return {k: (mask >> self.pos[k] & 1) if k in self.pos else 0 for k in product(G.elements, repeat=n)}


def coboundary_rows(G: FiniteGroup, n: int) -> tuple[list[int], Cochains, Cochains]:
    """Row masks of d: C^n -> C^{n+1}, one row per (n+1)-tuple."""
    src, tgt = Cochains(G, n), Cochains(G, n + 1)
    rows = []
    for g in tgt.keys:
        r = src.bit(g[1:]) ^ src.bit(g[:-1])
        for i in range(1, n + 1):
            r ^= src.bit(g[:i - 1] + (G.mul(g[i - 1], g[i]),) + g[i + 1:])
        rows.append(r)
    return rows, src, tgt


def cocycles(G: FiniteGroup, n: int) -> list[int]:
    rows, src, _ = coboundary_rows(G, n)
    return kernel(rows, len(src))


def coboundaries(G: FiniteGroup, n: int) -> list[int]:
    """Images d(e_k) of basis (n-1)-cochains, as n-cochain masks."""
    if n == 0:
        return []
    rows, src, tgt = coboundary_rows(G, n - 1)
    cols = []
    for k in range(len(src)):
        m = 0
        for j, r in enumerate(rows):
            if r >> k & 1:
                m |= 1 << j
        cols.append(m)
    return cols


def cohomology_dim(G: FiniteGroup, n: int) -> int:
    return len(cocycles(G, n)) - rank(coboundaries(G, n))


def h2_bruteforce(G: FiniteGroup) -> int:
    """|H^2(G, Z2)| by enumerating all normalized 2-cochains (tiny groups only)."""
    C = Cochains(G, 2)
    if len(C) > 16:
        raise ValueError("too many cochains for exhaustive enumeration")
    els = G.elements
    cyc = []
    for m in range(1 << len(C)):
        f = C.to_dict(m)
        if all((f[(b, c)] + f[(a, G.mul(b, c))] + f[(G.mul(a, b), c)] + f[(a, b)]) % 2 == 0
               for a in els for b in els for c in els):
            cyc.append(m)
    C1 = Cochains(G, 1)
    bnd = set()
    for s in range(1 << len(C1)):
        sig = C1.to_dict(s)
        bnd.add(C.to_mask({(a, b): sig[(a,)] + sig[(b,)] + sig[(G.mul(a, b),)] for a in els for b in els}))
    return len(cyc) // len(bnd)
