"""Exact arithmetic over Q(i) and the linear algebra built on it."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .errors import StructuralError


_MPQ = type(QQ(1))


def _q(x):
    if type(x) is _MPQ:
        return x
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x)
        return QQ(f.numerator, f.denominator)
    return QQ(x)


class GaussianScalar:
    """x = re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianScalar is immutable")

    @classmethod
    def _mk(cls, re, im):
        """Construct from parts that are already rationals of the ground domain."""
        x = object.__new__(cls)
        _set(x, "re", re)
        _set(x, "im", im)
        return x

    @classmethod
    def coerce(cls, x) -> "GaussianScalar":
        if isinstance(x, GaussianScalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating point scalars are not exact")
        if hasattr(x, "x") and hasattr(x, "y"):  # sympy GaussianRational
            return cls._mk(_q(x.x), _q(x.y))
        return cls(x, 0)

    def __add__(self, o):
        o = _c(o)
        return _mk(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _c(o)
        return _mk(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return _c(o) - self

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __mul__(self, o):
        o = _c(o)
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return _mk(a * c, b)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _c(o)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianScalar(o.re / n, -o.im / n)

    def __rtruediv__(self, o):
        return _c(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return (ONE / self) ** (-k)
        r, b = ONE, self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, o):
        try:
            o = _c(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conj(self) -> "GaussianScalar":
        return _mk(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def to_domain(self):
        return QQ_I.new(self.re, self.im)

    def __repr__(self):
        return f"GaussianScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


_set = object.__setattr__
_mk = GaussianScalar._mk


def _c(x) -> GaussianScalar:
    return x if isinstance(x, GaussianScalar) else GaussianScalar.coerce(x)


ZERO = GaussianScalar(0)
ONE = GaussianScalar(1)
I = GaussianScalar(0, 1)


def conjugate(x) -> GaussianScalar:
    return _c(x).conj()


def _fmt_q(q) -> str:
    n, d = int(q.numerator), int(q.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def format_scalar(x: GaussianScalar) -> str:
    re_, im = x.re, x.im
    if not im:
        return _fmt_q(re_)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = _fmt_q(im) + (" i" if "/" in _fmt_q(im) else "i")
    if not re_:
        return ims
    return _fmt_q(re_) + ("" if ims.startswith("-") else "+") + ims


_RAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<re>[+-]?{_RAT})(?=$|[+-]))?"
    rf"(?:(?P<ims>[+-]?)(?P<im>{_RAT})?\s?i)?$"
)


def parse_scalar(s) -> GaussianScalar:
    """Parse '1/2-3i', '-i', '2/3 i', '5' and the like."""
    if isinstance(s, (int, Fraction)):
        return GaussianScalar(s)
    if isinstance(s, GaussianScalar):
        return s
    if not isinstance(s, str):
        raise StructuralError(f"cannot read scalar {s!r}")
    t = s.strip().replace(" i", "i").replace("*i", "i")
    t = t.replace(" ", "")
    m = _SCALAR_RE.match(t)
    if not t or m is None or (m.group("re") is None and "i" not in t):
        raise StructuralError(f"cannot read scalar {s!r}")
    re_ = _q(m.group("re")) if m.group("re") else QQ(0)
    if "i" in t:
        mag = _q(m.group("im")) if m.group("im") else QQ(1)
        im = -mag if m.group("ims") == "-" else mag
    else:
        im = QQ(0)
    return GaussianScalar(re_, im)


class ExactMatrix:
    """Dense matrix over Q(i), row-major and immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Sequence], cols: int | None = None):
        ent = tuple(tuple(_c(x) for x in row) for row in entries)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        for row in ent:
            if len(row) != cols:
                raise StructuralError("ragged matrix rows")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "rows", len(ent))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, *a):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def zeros(cls, r, c):
        return cls([[ZERO] * c for _ in range(r)], c)

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, o):
        return isinstance(o, ExactMatrix) and self.cols == o.cols and self.entries == o.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(map(str, r)) for r in self.entries)
        return f"ExactMatrix[{self.rows}x{self.cols}]({body})"

    def __add__(self, o):
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, o.entries)], self.cols)

    def __sub__(self, o):
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, o.entries)], self.cols)

    def __mul__(self, o):
        if isinstance(o, ExactMatrix):
            if self.cols != o.rows:
                raise StructuralError("dimension mismatch in product")
            cols = list(zip(*o.entries)) if o.rows else [()] * o.cols
            return ExactMatrix([[_dot(r, c) for c in cols] for r in self.entries], o.cols)
        s = _c(o)
        return ExactMatrix([[s * x for x in r] for r in self.entries], self.cols)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise StructuralError("dimension mismatch")
        v = [_c(x) for x in v]
        return [_dot(r, v) for r in self.entries]

    def transpose(self):
        return ExactMatrix([list(c) for c in zip(*self.entries)] if self.rows else [], self.rows)

    def conj(self):
        return ExactMatrix([[x.conj() for x in r] for r in self.entries], self.cols)

    def to_domain(self) -> DomainMatrix:
        return DomainMatrix([[x.to_domain() for x in r] for r in self.entries], (self.rows, self.cols), QQ_I)

    @classmethod
    def from_domain(cls, M: DomainMatrix):
        r, c = M.shape
        rows = M.to_list()
        return cls([[GaussianScalar.coerce(x) for x in row] for row in rows], c)

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        if not self.rows or not self.cols:
            return self, ()
        R, piv = self.to_domain().rref()
        return ExactMatrix.from_domain(R), tuple(piv)

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)


def _dot(r, c):
    s = ZERO
    for a, b in zip(r, c):
        if a and b:
            s = s + a * b
    return s


def as_matrix(A) -> ExactMatrix:
    return A if isinstance(A, ExactMatrix) else ExactMatrix(A)


def rank(A) -> int:
    return as_matrix(A).rank()


def kernel(A) -> list[list[GaussianScalar]]:
    """Basis of the null space, one vector per free column."""
    A = as_matrix(A)
    n = A.cols
    if A.rows == 0:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    R, piv = A.rref()
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in enumerate(piv):
            v[p] = -R.entries[row][f]
        basis.append(v)
    return basis


def solve(A, b: Sequence) -> list[GaussianScalar] | None:
    """Some x with A x = b (free variables zero), or None."""
    A = as_matrix(A)
    if len(b) != A.rows:
        raise StructuralError("dimension mismatch in solve")
    n = A.cols
    if A.rows == 0:
        return [ZERO] * n
    aug = ExactMatrix([list(r) + [bi] for r, bi in zip(A.entries, b)], n + 1)
    R, piv = aug.rref()
    if n in piv:
        return None
    x = [ZERO] * n
    for row, p in enumerate(piv):
        x[p] = R.entries[row][n]
    return x


class Solver:
    """Reusable solver for A x = b: one reduction of [A | 1] gives P with P A in echelon form."""

    def __init__(self, A):
        A = as_matrix(A)
        self.rows, self.cols = A.rows, A.cols
        m = A.rows
        aug = ExactMatrix([list(r) + [ONE if k == i else ZERO for k in range(m)] for i, r in enumerate(A.entries)],
                          A.cols + m)
        R, piv = aug.rref()
        self.piv = [p for p in piv if p < A.cols]
        self._P = [[(k, e) for k, e in enumerate(row[A.cols:]) if e] for row in R.entries]

    def __call__(self, b: Sequence) -> list[GaussianScalar] | None:
        if len(b) != self.rows:
            raise StructuralError("dimension mismatch in solve")
        y = []
        for row in self._P:
            s = ZERO
            for k, e in row:
                if b[k]:
                    s = s + e * b[k]
            y.append(s)
        r = len(self.piv)
        if any(y[r:]):
            return None
        x = [ZERO] * self.cols
        for row, p in enumerate(self.piv):
            x[p] = y[row]
        return x


def solve_many(A, B: Sequence[Sequence]) -> list[list[GaussianScalar]] | None:
    """Solve A x_k = B[k] for several right-hand sides with one reduction."""
    A = as_matrix(A)
    n, m = A.cols, len(B)
    if m == 0:
        return []
    aug = ExactMatrix([list(r) + [B[k][i] for k in range(m)] for i, r in enumerate(A.entries)], n + m)
    R, piv = aug.rref()
    if any(p >= n for p in piv):
        return None
    out = []
    for k in range(m):
        x = [ZERO] * n
        for row, p in enumerate(piv):
            x[p] = R.entries[row][n + k]
        out.append(x)
    return out


def vec(*xs) -> list[GaussianScalar]:
    return [_c(x) for x in xs]


def vadd(u, v):
    return [a + b for a, b in zip(u, v)]


def vsub(u, v):
    return [a - b for a, b in zip(u, v)]


def vscale(s, v):
    s = _c(s)
    return [s * a for a in v]


def is_zero_vec(v) -> bool:
    return not any(v)
