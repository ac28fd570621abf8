"""Exact rational algebra: polynomials, truncated series in hbar, sphere functions."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Scalar = Fraction


def frac(x) -> Fraction:
    """Coerce int, str ("p/q") or Fraction to an exact rational.

    Integral values may come back as plain ints, which is much faster.
    """
    if isinstance(x, (Fraction, int)):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or 'p/q' string")
    return Fraction(x)


def _sort_key(exps):
    # graded lex, highest first
    return (-sum(exps), tuple(-e for e in exps))


class Poly:
    """Multivariate polynomial with Fraction coefficients over named variables.

    Immutable; terms maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                c = frac(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, vars, c) -> "Poly":
        vars = tuple(vars)
        c = frac(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, vars, name: str) -> "Poly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._raw(vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, vars, exps, c=1) -> "Poly":
        vars = tuple(vars)
        return cls(vars, {tuple(exps): c})

    def zero(self) -> "Poly":
        return Poly._raw(self.vars, {})

    def one(self) -> "Poly":
        return Poly.const(self.vars, 1)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.zero()
            return Poly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return Poly._raw(self.vars, t)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        r = self.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # calculus and inspection

    def partial(self, var) -> "Poly":
        i = var if isinstance(var, int) else self.vars.index(var)
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                t[ne] = c * k
        return Poly._raw(self.vars, t)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous(self, d: int) -> "Poly":
        return Poly._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coeff(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant(self) -> Fraction:
        return self.coeff((0,) * len(self.vars))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Substitute Poly or scalar values (in this ring) for some variables."""
        idx = {self.vars.index(k): v for k, v in values.items()}
        out = self.zero()
        for e, c in self.terms.items():
            term = Poly._raw(self.vars, {tuple(0 if i in idx else k for i, k in enumerate(e)): c})
            for i, v in idx.items():
                if e[i]:
                    term = term * (v ** e[i] if isinstance(v, Poly) else Poly.const(self.vars, frac(v) ** e[i]))
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        vals = [frac(point[v]) for v in self.vars]
        for e, c in self.terms.items():
            m = c
            for x, k in zip(vals, e):
                if k:
                    m *= x ** k
            total += m
        return total

    def recast(self, vars) -> "Poly":
        """Same polynomial viewed in a ring with (a superset of) these variables."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, k in zip(pos, e):
                ne[i] = k
            t[tuple(ne)] = c
        return Poly._raw(vars, t)

    def items(self):
        """Terms in graded-lex order, highest first."""
        return sorted(self.terms.items(), key=lambda ec: _sort_key(ec[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}" if c.denominator == 1 else f"({c})*{mono}"
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return f"Poly({self})"


class PolyRing:
    """Convenience handle for Poly with fixed variables."""

    def __init__(self, vars: Iterable[str]):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("repeated variable names")
        self.zero = Poly._raw(self.vars, {})
        self.one = Poly.const(self.vars, 1)

    def __call__(self, name: str) -> Poly:
        return Poly.var(self.vars, name)

    @property
    def gens(self):
        return tuple(self(v) for v in self.vars)

    def const(self, c) -> Poly:
        return Poly.const(self.vars, c)

    def monomial(self, exps, c=1) -> Poly:
        return Poly.monomial(self.vars, exps, c)

    def partial(self, f: Poly, i: int) -> Poly:
        return f.partial(i)


class HSeries:
    """Power series in hbar truncated after hbar^order.

    Coefficients may be any ring-like objects supporting +, -, * and bool().
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("empty series")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "HSeries":
        z = c * 0
        return cls((c,) + (z,) * order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def _zero(self):
        return self.coeffs[0] * 0

    def truncate(self, order: int) -> "HSeries":
        if order <= self.order:
            return HSeries(self.coeffs[: order + 1])
        z = self._zero()
        return HSeries(self.coeffs + (z,) * (order - self.order))

    def __add__(self, other):
        if not isinstance(other, HSeries):
            return HSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        n = min(self.order, other.order)
        return HSeries(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    __radd__ = __add__

    def __neg__(self):
        return HSeries(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, HSeries):
            return HSeries(a * other for a in self.coeffs)
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = self.coeffs[0] * other.coeffs[k]
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return HSeries(out)

    def __rmul__(self, other):
        return HSeries(other * a for a in self.coeffs)

    def shift(self, k: int) -> "HSeries":
        """Multiply by hbar^k, keeping the truncation order."""
        z = self._zero()
        return HSeries(((z,) * k + self.coeffs)[: self.order + 1])

    def inverse(self, inv0=None) -> "HSeries":
        a = self.coeffs
        b0 = inv0(a[0]) if inv0 else a[0]
        if inv0 is None and not (a[0] * a[0] == a[0]):
            raise ValueError("leading coefficient must be the unit unless inv0 is given")
        b = [b0]
        for k in range(1, len(a)):
            acc = a[1] * b[k - 1]
            for j in range(2, k + 1):
                acc = acc + a[j] * b[k - j]
            b.append(-(b0 * acc))
        return HSeries(b)

    def map(self, f) -> "HSeries":
        return HSeries(f(a) for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(a == b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(bool(a) for a in self.coeffs)

    def __str__(self):
        parts = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            h = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            parts.append(f"({a})" + (f"*{h}" if h else ""))
        parts.append(f"O(h^{self.order + 1})")
        return " + ".join(parts)

    def __repr__(self):
        return f"HSeries({self})"


def hseries_exp(x: HSeries, one) -> HSeries:
    """exp of a series with zero constant term, coefficients commuting."""
    if x.coeffs[0]:
        raise ValueError("exp needs zero constant term")
    out = HSeries.constant(one, x.order)
    term = HSeries.constant(one, x.order)
    for k in range(1, x.order + 1):
        term = term * x * Fraction(1, k)
        out = out + term
    return out


# sphere functions

_XY = ("x", "y")
_W = Poly(_XY, {(0, 0): 1, (2, 0): -1, (0, 2): -1})  # z^2 = 1 - x^2 - y^2


def _div_w(p: Poly):
    """Exact quotient p / (1 - x^2 - y^2), or None if not divisible."""
    q: dict = {}
    r = dict(p.terms)
    while r:
        # lex leading term with x > y
        e = max(r)
        c = r[e]
        if e[0] < 2:
            return None
        t = (e[0] - 2, e[1])
        qc = -c
        q[t] = q.get(t, 0) + qc
        for we, wc in _W.terms.items():
            ne = (t[0] + we[0], t[1] + we[1])
            v = r.get(ne, 0) - qc * wc
            if v:
                r[ne] = v
            else:
                r.pop(ne, None)
    return Poly._raw(_XY, {e: c for e, c in q.items() if c})


class SphereElem:
    """(p + q z) / z^m with p, q in Q[x, y] and z^2 = 1 - x^2 - y^2.

    Kept canonical: m is minimal, so equality is structural.
    """

    __slots__ = ("p", "q", "m", "_hash")

    def __init__(self, p, q=None, m: int = 0):
        p = _as_xy(p)
        q = _as_xy(q if q is not None else 0)
        if m < 0:
            # z^-m = z^|m| in the numerator
            num = SphereElem._canon(p, q, 0)
            zpow = SphereElem.z_power(-m)
            r = num * zpow
            p, q, m = r.p, r.q, r.m
        p, q, m = SphereElem._normal(p, q, m)
        self.p, self.q, self.m = p, q, m
        self._hash = None

    @staticmethod
    def _normal(p, q, m):
        if not p and not q:
            return p, q, 0
        while m > 0:
            d = _div_w(p)
            if d is None:
                break
            p, q, m = q, d, m - 1
        return p, q, m

    @classmethod
    def _canon(cls, p, q, m):
        s = object.__new__(cls)
        s.p, s.q, s.m = cls._normal(p, q, m)
        s._hash = None
        return s

    @classmethod
    def z(cls) -> "SphereElem":
        return cls._canon(_W.zero(), _W.one(), 0)

    @classmethod
    def z_power(cls, k: int) -> "SphereElem":
        if k >= 0:
            p, q = (_W ** (k // 2), _W.zero()) if k % 2 == 0 else (_W.zero(), _W ** (k // 2))
            return cls._canon(p, q, 0)
        return cls._canon(_W.one(), _W.zero(), -k)

    @classmethod
    def x(cls):
        return cls(Poly.var(_XY, "x"))

    @classmethod
    def y(cls):
        return cls(Poly.var(_XY, "y"))

    @classmethod
    def const(cls, c):
        return cls(Poly.const(_XY, c))

    def zero(self):
        return SphereElem._canon(_W.zero(), _W.zero(), 0)

    def one(self):
        return SphereElem.const(1)

    @staticmethod
    def _times_z(p, q, k):
        for _ in range(k):
            p, q = q * _W, p
        return p, q

    def _coerce(self, other):
        if isinstance(other, SphereElem):
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return SphereElem(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = max(self.m, other.m)
        p1, q1 = self._times_z(self.p, self.q, m - self.m)
        p2, q2 = self._times_z(other.p, other.q, m - other.m)
        return SphereElem._canon(p1 + p2, q1 + q2, m)

    __radd__ = __add__

    def __neg__(self):
        return SphereElem._canon(-self.p, -self.q, self.m)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SphereElem._canon(self.p * other, self.q * other, self.m)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p * other.p + self.q * other.q * _W
        q = self.p * other.q + self.q * other.p
        return SphereElem._canon(p, q, self.m + other.m)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = self.one()
        for _ in range(k):
            r = r * self
        return r

    def unit_power(self):
        """If self = c z^k return (c, k), else None."""
        p, q, m = self.p, self.q, self.m
        k = -m
        if q and not p:
            p, q, k = q, p, k + 1
        if q or not p:
            return None
        while not p.is_constant():
            d = _div_w(p)
            if d is None:
                return None
            p, k = d, k + 2
        return p.constant(), k

    def inverse(self) -> "SphereElem":
        u = self.unit_power()
        if u is None:
            raise ZeroDivisionError(f"{self} is not a unit")
        c, k = u
        return SphereElem.z_power(-k) * (1 / Fraction(c))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inverse()

    def partial(self, var) -> "SphereElem":
        i = var if isinstance(var, int) else _XY.index(var)
        v = Poly.var(_XY, _XY[i])
        p, q, m = self.p, self.q, self.m
        a = SphereElem._canon(p.partial(i), q.partial(i), m)
        b = SphereElem._canon(-(q * v), q.zero(), m + 1)
        c = SphereElem._canon(p * v * m, q * v * m, m + 2)
        return a + b + c

    def at_origin(self) -> Fraction:
        return self.p.constant() + self.q.constant()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = SphereElem(other)
        if not isinstance(other, SphereElem):
            return NotImplemented
        return self.m == other.m and self.p == other.p and self.q == other.q

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.q, self.m))
        return self._hash

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __str__(self):
        if not self:
            return "0"
        if self.q and self.p:
            num = f"{self.p} + ({self.q})*z"
        elif self.q:
            num = f"({self.q})*z"
        else:
            num = str(self.p)
        if self.m == 0:
            return num
        den = "z" if self.m == 1 else f"z^{self.m}"
        return f"({num})/{den}"

    def __repr__(self):
        return f"SphereElem({self})"


def _as_xy(v) -> Poly:
    if isinstance(v, Poly):
        if v.vars != _XY:
            raise ValueError("sphere functions use variables ('x', 'y')")
        return v
    return Poly.const(_XY, v)


SPHERE_VARS = _XY


# exact linear algebra over the rationals

def row_reduce(rows):
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    m = [[Fraction(c) for c in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [c * inv for c in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(row_reduce(rows)[1]) if rows else 0


def nullspace(rows, ncols: int):
    """Basis of {x : A x = 0}."""
    red, piv = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, piv):
            x[p] = -r[f]
        basis.append(x)
    return basis


def solve(rows, rhs):
    """All solutions of A x = b as (particular, nullspace basis), or None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = row_reduce(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for r, p in zip(red, piv):
        x[p] = r[ncols]
    return x, nullspace(rows, ncols)
