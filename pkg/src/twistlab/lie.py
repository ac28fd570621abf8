"""Finite-dimensional Lie algebras given by rational structure constants."""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .exact import frac


class LieAlgebraError(ValueError):
    pass


class AntisymmetryError(LieAlgebraError):
    pass


class JacobiError(LieAlgebraError):
    pass


class ParseError(LieAlgebraError):
    pass


class LieAlgebra:
    """Basis e_0..e_{n-1} with [e_i, e_j] = sum_k f[i, j][k] e_k.

    Vectors are dicts index -> coefficient; coefficients can live in any
    commutative ring (Fractions, or Poly for symbolic checks).
    """

    def __init__(self, name: str, basis, brackets, check: bool = True):
        self.name = name
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        if len(set(self.basis)) != self.dim:
            raise LieAlgebraError("basis names must be distinct")
        self.f: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), vec in brackets.items():
            vec = {k: frac(c) for k, c in vec.items() if frac(c)}
            if i == j:
                if vec:
                    raise AntisymmetryError(f"[{self.basis[i]},{self.basis[i]}] must vanish")
                continue
            neg = {k: -c for k, c in vec.items()}
            if (j, i) in brackets:
                other = {k: frac(c) for k, c in brackets[(j, i)].items() if frac(c)}
                if other != neg:
                    raise AntisymmetryError(
                        f"[{self.basis[i]},{self.basis[j]}] and [{self.basis[j]},{self.basis[i]}] are not opposite")
            if vec:
                # integral constants stay ints: much faster in the hot loops
                self.f[(i, j)] = {k: _tight(c) for k, c in vec.items()}
                self.f[(j, i)] = {k: _tight(c) for k, c in neg.items()}
        if check:
            bad = self.jacobi_violations()
            if bad:
                i, j, k = bad[0]
                raise JacobiError(
                    f"Jacobi fails on ({self.basis[i]}, {self.basis[j]}, {self.basis[k]})")

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def index(self, name: str) -> int:
        return self.basis.index(name)

    def structure(self, i: int, j: int) -> dict[int, Fraction]:
        return self.f.get((i, j), {})

    def bracket(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.f.get((i, j), {}).items():
                    term = a * b * c
                    if k in out:
                        out[k] = out[k] + term
                    else:
                        out[k] = term
        return {k: c for k, c in out.items() if c}

    def basis_vector(self, i: int) -> dict:
        return {i: Fraction(1)}

    def vector(self, **coeffs) -> dict:
        return {self.index(n): frac(c) for n, c in coeffs.items() if frac(c)}

    def ad_matrix(self, i: int) -> list[list[Fraction]]:
        """Matrix of ad_{e_i}: column j holds [e_i, e_j]."""
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.structure(i, j).items():
                m[k][j] = c
        return m

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        for i, j, k in combinations(range(self.dim), 3):
            ei, ej, ek = ({i: 1}, {j: 1}, {k: 1})
            s = _add(
                self.bracket(ei, self.bracket(ej, ek)),
                self.bracket(ej, self.bracket(ek, ei)),
                self.bracket(ek, self.bracket(ei, ej)),
            )
            if s:
                bad.append((i, j, k))
        return bad

    def jacobi_check(self) -> bool:
        return not self.jacobi_violations()

    def killing_form(self) -> list[list[Fraction]]:
        """kappa_ij = trace(ad_i ad_j)."""
        n = self.dim
        k = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                t = Fraction(0)
                for a in range(n):
                    for b, c in self.structure(j, a).items():
                        t += self.structure(i, b).get(a, 0) * c
                k[i][j] = k[j][i] = t
        return k

    def is_abelian(self) -> bool:
        return not self.f

    def permuted(self, order) -> "LieAlgebra":
        """Same algebra with basis listed in the given order (names or indices)."""
        idx = [self.index(o) if isinstance(o, str) else o for o in order]
        if sorted(idx) != list(range(self.dim)):
            raise LieAlgebraError("order must be a permutation of the basis")
        new = {old: pos for pos, old in enumerate(idx)}
        br = {}
        for (i, j), vec in self.f.items():
            if new[i] < new[j]:
                br[(new[i], new[j])] = {new[k]: c for k, c in vec.items()}
        return LieAlgebra(self.name, [self.basis[i] for i in idx], br, check=False)

    def to_text(self) -> str:
        lines = [f"name: {self.name}", f"dim: {self.dim}", "basis: " + " ".join(self.basis), "brackets:"]
        for (i, j), vec in sorted(self.f.items()):
            if i < j:
                entries = ", ".join(f"({k + 1}, {c})" for k, c in sorted(vec.items()))
                lines.append(f"  {i + 1} {j + 1} -> [{entries}]")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.basis == other.basis and self.f == other.f

    def __hash__(self):
        return hash((self.name, self.basis))


def _tight(c):
    return int(c) if c.denominator == 1 else c


def _add(*vecs):
    out: dict = {}
    for v in vecs:
        for k, c in v.items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def vec_add(*vecs):
    return _add(*vecs)


def vec_scale(c, v):
    return {k: c * a for k, a in v.items() if c * a}


# catalogue

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(f"abelian{n}", [f"a{i + 1}" for i in range(n)], {})


def heisenberg3() -> LieAlgebra:
    return LieAlgebra("heisenberg3", ["x", "y", "z"], {(0, 1): {2: 1}})


def sl2() -> LieAlgebra:
    return LieAlgebra("sl2", ["H", "E", "F"], {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})


def bplus() -> LieAlgebra:
    """Two-dimensional non-abelian algebra, [t, x] = x."""
    return LieAlgebra("bplus", ["t", "x"], {(0, 1): {1: 1}})


SL3_BASIS = ["t1", "t2", "E12", "E13", "E23", "E21", "E31", "E32"]


def sl3_matrix(i: int) -> list[list[Fraction]]:
    """3x3 matrix of the i-th basis element of sl3 (t1 = e11 - e22, t2 = e22 - e33)."""
    m = [[Fraction(0)] * 3 for _ in range(3)]
    name = SL3_BASIS[i]
    if name == "t1":
        m[0][0], m[1][1] = Fraction(1), Fraction(-1)
    elif name == "t2":
        m[1][1], m[2][2] = Fraction(1), Fraction(-1)
    else:
        m[int(name[1]) - 1][int(name[2]) - 1] = Fraction(1)
    return m


def sl3_coords(m) -> dict[int, Fraction]:
    """Coordinates of a traceless 3x3 matrix in the sl3 basis."""
    if sum(m[i][i] for i in range(3)) != 0:
        raise ValueError("matrix is not traceless")
    out = {0: m[0][0], 1: -m[2][2]}
    for i, name in enumerate(SL3_BASIS[2:], start=2):
        out[i] = m[int(name[1]) - 1][int(name[2]) - 1]
    return {k: frac(c) for k, c in out.items() if c}


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def sl3() -> LieAlgebra:
    br = {}
    for i, j in combinations(range(8), 2):
        a, b = sl3_matrix(i), sl3_matrix(j)
        ab, ba = _matmul(a, b), _matmul(b, a)
        c = [[ab[r][s] - ba[r][s] for s in range(3)] for r in range(3)]
        v = sl3_coords(c)
        if v:
            br[(i, j)] = v
    return LieAlgebra("sl3", SL3_BASIS, br)


def so13_abstract() -> LieAlgebra:
    """Boosts X1..X3 and rotations Y1..Y3.

    [Yi, Yj] = -Y_{i x j}, [Yi, Xj] = -X_{i x j}, [Xi, Xj] = Y_{i x j}.
    """
    basis = ["X1", "X2", "X3", "Y1", "Y2", "Y3"]
    full: dict = {}
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        full[(3 + i, 3 + j)] = {3 + k: -1}
        full[(i, j)] = {3 + k: 1}
        full[(3 + i, j)] = {k: -1}
        full[(3 + j, i)] = {k: 1}
    clean = {}
    for (a, b), v in full.items():
        if a < b:
            clean[(a, b)] = v
        else:
            clean[(b, a)] = {k: -c for k, c in v.items()}
    return LieAlgebra("so13", basis, clean)


CATALOGUE = {
    "abelian1": lambda: abelian(1),
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
    "heisenberg3": heisenberg3,
    "sl2": sl2,
    "sl3": sl3,
    "bplus": bplus,
    "so13": so13_abstract,
}


def catalogue(name: str) -> LieAlgebra:
    if name.startswith("abelian") and name[7:].isdigit():
        return abelian(int(name[7:]))
    try:
        return CATALOGUE[name]()
    except KeyError:
        raise LieAlgebraError(f"unknown algebra {name!r}; known: {sorted(CATALOGUE)}") from None


# definition files

_ENTRY = re.compile(r"^\s*(\d+)\s+(\d+)\s*->\s*\[(.*)\]\s*$")
_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*([-+]?\d+(?:/\d+)?)\s*\)")


def parse_definition(text: str) -> LieAlgebra:
    """Parse the text format written by LieAlgebra.to_text.

    Fields: optional name, dim, basis, then bracket lines `i j -> [(k, p/q), ...]`
    with 1-based indices and i < j.
    """
    name = "custom"
    dim = None
    basis = None
    brackets: dict = {}
    in_brackets = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if in_brackets and _ENTRY.match(line):
            m = _ENTRY.match(line)
            i, j = int(m.group(1)) - 1, int(m.group(2)) - 1
            body = m.group(3).strip()
            pairs = _PAIR.findall(body)
            if _PAIR.sub("", body).replace(",", "").strip():
                raise ParseError(f"line {lineno}: malformed bracket value {body!r}")
            if (i, j) in brackets:
                raise ParseError(f"line {lineno}: duplicate entry for ({i + 1}, {j + 1})")
            vec: dict = {}
            for k, c in pairs:
                k = int(k) - 1
                vec[k] = vec.get(k, 0) + Fraction(c)
            brackets[(i, j)] = vec
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'field: value'")
        key = key.strip()
        val = val.strip()
        in_brackets = False
        if key == "name":
            name = val
        elif key == "dim":
            try:
                dim = int(val)
            except ValueError:
                raise ParseError(f"line {lineno}: dim must be an integer") from None
        elif key == "basis":
            basis = val.split()
        elif key == "brackets":
            in_brackets = True
            if val:
                raise ParseError(f"line {lineno}: bracket entries go on their own lines")
        else:
            raise ParseError(f"line {lineno}: unknown field {key!r}")
    if dim is None:
        raise ParseError("missing dim")
    if basis is None:
        basis = [f"e{i + 1}" for i in range(dim)]
    if len(basis) != dim:
        raise ParseError(f"dim is {dim} but {len(basis)} basis names given")
    for (i, j), vec in brackets.items():
        for idx in (i, j, *vec):
            if not 0 <= idx < dim:
                raise ParseError(f"index {idx + 1} out of range 1..{dim}")
        if i > j and (j, i) not in brackets:
            raise AntisymmetryError(
                f"entry ({i + 1}, {j + 1}) has no antisymmetric partner; store pairs with i < j")
    return LieAlgebra(name, basis, brackets)


def load_definition(path) -> LieAlgebra:
    return parse_definition(Path(path).read_text())


def resolve(name_or_path: str) -> LieAlgebra:
    p = Path(name_or_path)
    if p.suffix or p.exists():
        return load_definition(p)
    return catalogue(name_or_path)


# semidirect extensions

def semidirect_dual(g: LieAlgebra) -> LieAlgebra:
    """g ⋉ g*: basis e_i then e^i, [e_i, e^j] = -sum_k f_ik^j e^k, g* abelian."""
    n = g.dim
    br: dict = {}
    for (i, j), vec in g.f.items():
        if i < j:
            br[(i, j)] = dict(vec)
    for i in range(n):
        for j in range(n):
            vec = {}
            for k in range(n):
                c = g.structure(i, k).get(j, 0)
                if c:
                    vec[n + k] = -c
            if vec:
                br[(i, n + j)] = vec
    return LieAlgebra(f"{g.name}+dual", list(g.basis) + [b + "*" for b in g.basis], br)


def semidirect_mackey(g: LieAlgebra) -> LieAlgebra:
    """g ⋉ g* ⊕ g: basis ce_i, ce^i, cc_i; the last copy commutes with the first two."""
    n = g.dim
    base = semidirect_dual(g)
    br = {k: v for k, v in base.f.items() if k[0] < k[1]}
    for (i, j), vec in g.f.items():
        if i < j:
            br[(2 * n + i, 2 * n + j)] = {2 * n + k: c for k, c in vec.items()}
    names = list(base.basis) + ["c" + b for b in g.basis]
    return LieAlgebra(f"{g.name}+mackey", names, br)


def semidirect_extend(g: LieAlgebra, kind: str = "dual") -> LieAlgebra:
    if kind == "dual":
        return semidirect_dual(g)
    if kind == "mackey":
        return semidirect_mackey(g)
    raise LieAlgebraError(f"unknown extension kind {kind!r}")
