"""Restricted root systems of the five supported families.

Roots live in integer coordinates over the weight functionals w_1..w_d on
the maximal torus.  All grading arithmetic (dual basis, levels, simple-root
expansions) runs over exact rationals so that levels are genuine integers
and subset extraction is tie-break free; floating point only enters once
matrices and curvature are involved.

Families and parameters:
  orthogonal(p, q)     SO(p,q)   type B_p (q > p) or D_p (q = p)
  unitary(p, q)        SU(p,q)   type BC_p (q > p) or C_p (q = p)
  symplectic(p, q)     Sp(p,q)   same shape as unitary, bigger multiplicities
  so_star(n)           SO(n,H)   rank floor(n/2); C_m (n even) / BC_m (n odd)
  sl_quaternion(n)     SL(n,H)   type A_{n-1}, all multiplicities 4
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import DegenerateRootSystemError, InternalError, ParamError

FAMILIES = ("orthogonal", "unitary", "symplectic", "so_star", "sl_quaternion")


def _format_root(coords) -> str:
    """Canonical label: positive terms first, higher index first among equals."""
    terms = [(i + 1, c) for i, c in enumerate(coords) if c]
    if not terms:
        raise InternalError("zero functional is not a root")
    terms.sort(key=lambda t: (t[1] < 0, -t[0]))
    out = []
    for idx, coef in terms:
        mag = abs(coef)
        body = f"w{idx}" if mag == 1 else f"{mag}w{idx}"
        out.append(("-" if coef < 0 else ("+" if out else "")) + body)
    return "".join(out)


@dataclass(frozen=True)
class Root:
    """A positive restricted root: integer coordinates plus multiplicity."""

    coords: tuple[int, ...]
    mult: int

    @property
    def label(self) -> str:
        return _format_root(self.coords)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class CharacteristicElement:
    """Positive-integer combination of dual-basis vectors, indexed over Lambda.

    `coeffs` maps 1-based simple-root positions to positive integers; the
    support (which positions appear) is what determines the attached
    subalgebra, while the values only shape the grading levels.
    """

    coeffs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ParamError("characteristic element needs at least one coefficient")
        seen = set()
        for idx, c in self.coeffs:
            if idx in seen:
                raise ParamError(f"duplicate simple-root index {idx}")
            seen.add(idx)
            if c <= 0 or int(c) != c:
                raise ParamError(f"coefficient on index {idx} must be a positive integer")

    @classmethod
    def from_dict(cls, coeffs: dict[int, int]) -> "CharacteristicElement":
        return cls(tuple(sorted((int(i), int(c)) for i, c in coeffs.items())))

    @classmethod
    def from_vector(cls, vec) -> "CharacteristicElement":
        """From per-simple-root coefficients, zeros meaning 'not supported'."""
        pairs = tuple((i + 1, int(c)) for i, c in enumerate(vec) if c)
        return cls(pairs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.coeffs)

    def coefficient(self, idx: int) -> int:
        for i, c in self.coeffs:
            if i == idx:
                return c
        return 0


def _solve_fraction(rows: list[list[Fraction]], rhs: list[list[Fraction]]):
    """Gaussian elimination over Fractions; returns the solution columns."""
    n = len(rows)
    aug = [rows[i][:] + rhs[i][:] for i in range(n)]
    m = len(rows[0])
    k = len(rhs[0])
    col = 0
    pivots = []
    for r in range(n):
        piv = None
        while col < m:
            for rr in range(r, n):
                if aug[rr][col] != 0:
                    piv = rr
                    break
            if piv is not None:
                break
            col += 1
        if piv is None:
            break
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = Fraction(1) / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for rr in range(n):
            if rr != r and aug[rr][col] != 0:
                f = aug[rr][col]
                aug[rr] = [a - f * b for a, b in zip(aug[rr], aug[r])]
        pivots.append(col)
        col += 1
    if len(pivots) < m:
        raise DegenerateRootSystemError("linear system is singular")
    for rr in range(len(pivots), n):
        if any(aug[rr][m + t] != 0 for t in range(k)):
            raise DegenerateRootSystemError("inconsistent linear system")
    sol = [[Fraction(0)] * k for _ in range(m)]
    for r, c in enumerate(pivots):
        for t in range(k):
            sol[c][t] = aug[r][m + t]
    return sol


@dataclass(frozen=True)
class RootSystem:
    """Positive roots, simple roots and dual-basis data for one family."""

    family: str
    params: tuple[int, ...]
    rank: int
    coord_dim: int
    positive_roots: tuple[Root, ...]
    simple_roots: tuple[Root, ...]
    ambient_dim: int  # real dimension of the ambient semisimple algebra

    @cached_property
    def _simple_matrix(self) -> list[list[Fraction]]:
        return [[Fraction(c) for c in r.coords] for r in self.simple_roots]

    @cached_property
    def dual_basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """Vectors H^1..H^r in torus coordinates with alpha_i(H^j) = delta_ij.

        For the quaternionic special-linear family the torus is the
        trace-zero subspace, so the sum-zero condition joins the system and
        the representatives come out trace free.
        """
        r = self.rank
        rows = [row[:] for row in self._simple_matrix]
        rhs = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
        if self.coord_dim > r:
            for _ in range(self.coord_dim - r):
                rows.append([Fraction(1)] * self.coord_dim)
                rhs.append([Fraction(0)] * r)
        cols = _solve_fraction(rows, rhs)
        return tuple(tuple(cols[i][j] for i in range(self.coord_dim)) for j in range(r))

    @cached_property
    def simple_expansions(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Each positive root as a nonnegative-integer combination of Lambda."""
        rows = [
            [Fraction(self.simple_roots[j].coords[i]) for j in range(self.rank)]
            for i in range(self.coord_dim)
        ]
        rhs = [
            [Fraction(root.coords[i]) for root in self.positive_roots]
            for i in range(self.coord_dim)
        ]
        cols = _solve_fraction(rows, rhs)
        out = {}
        for t, root in enumerate(self.positive_roots):
            exp = tuple(cols[j][t] for j in range(self.rank))
            if any(v.denominator != 1 or v < 0 for v in exp):
                raise InternalError(
                    f"root {root.label} is not a nonnegative integer combination"
                )
            out[root.coords] = tuple(int(v) for v in exp)
        return out

    def root_by_label(self, label: str) -> Root:
        for r in self.positive_roots:
            if r.label == label:
                return r
        raise KeyError(label)

    @property
    def total_mult(self) -> int:
        return sum(r.mult for r in self.positive_roots)

    def to_jsonable(self, z: CharacteristicElement | None = None) -> dict:
        levels = grade_levels(self, z) if z is not None else None
        roots = []
        for r in self.positive_roots:
            entry = {"label": r.label, "coords": list(r.coords), "mult": r.mult}
            if levels is not None:
                entry["level"] = levels[r.coords]
            roots.append(entry)
        out = {
            "family": self.family,
            "params": list(self.params),
            "rank": self.rank,
            "roots": roots,
        }
        if z is not None:
            out["lambda_prime"] = [r.label for r in lambda_prime(self, z)]
        return out


_AMBIENT_DIM = {
    "orthogonal": lambda p, q: (p + q) * (p + q - 1) // 2,
    "unitary": lambda p, q: (p + q) ** 2 - 1,
    "symplectic": lambda p, q: (p + q) * (2 * (p + q) + 1),
    "so_star": lambda n: 2 * n * n - n,
    "sl_quaternion": lambda n: 4 * n * n - 1,
}


def build_root_system(family: str, *params: int) -> RootSystem:
    """Positive roots, simple roots and multiplicities for one family."""
    if family not in FAMILIES:
        raise ParamError(f"unknown family {family!r}; expected one of {FAMILIES}")

    if family in ("orthogonal", "unitary", "symplectic"):
        if len(params) != 2:
            raise ParamError(f"{family} takes parameters (p, q)")
        p, q = params
        if not (1 <= p <= q):
            raise ParamError("need q >= p >= 1")
        if family == "orthogonal" and p == q == 1:
            raise ParamError("orthogonal(1,1) is abelian and carries no roots")
        short = {"orthogonal": q - p, "unitary": 2 * (q - p), "symplectic": 4 * (q - p)}
        pm = {"orthogonal": 1, "unitary": 2, "symplectic": 4}
        long_ = {"unitary": 1, "symplectic": 3}

        def e(*pairs):
            v = [0] * p
            for idx, c in pairs:
                v[idx - 1] = c
            return tuple(v)

        pos: list[Root] = []
        if q > p:
            pos += [Root(e((k, 1)), short[family]) for k in range(1, p + 1)]
        pos += [
            Root(e((j, 1), (i, -1)), pm[family])
            for i in range(1, p + 1)
            for j in range(i + 1, p + 1)
        ]
        pos += [
            Root(e((j, 1), (i, 1)), pm[family])
            for i in range(1, p + 1)
            for j in range(i + 1, p + 1)
        ]
        if family in ("unitary", "symplectic"):
            pos += [Root(e((k, 2)), long_[family]) for k in range(1, p + 1)]

        if q > p:
            simple = [e((1, 1))] + [e((j + 1, 1), (j, -1)) for j in range(1, p)]
        elif family == "orthogonal":
            # D_p: the branch node replaces the short root
            simple = [e((j + 1, 1), (j, -1)) for j in range(1, p)] + [e((2, 1), (1, 1))]
        else:
            # C_p: long root closes the diagram
            simple = [e((j + 1, 1), (j, -1)) for j in range(1, p)] + [e((1, 2))]
        by_coords = {r.coords: r for r in pos}
        rs = RootSystem(
            family, (p, q), len(simple), p, tuple(pos),
            tuple(by_coords[s] for s in simple),
            _AMBIENT_DIM[family](p, q),
        )

    elif family == "so_star":
        if len(params) != 1:
            raise ParamError("so_star takes a single parameter n")
        (n,) = params
        if n < 2:
            raise ParamError("need n >= 2")
        m = n // 2

        def e(*pairs):
            v = [0] * m
            for idx, c in pairs:
                v[idx - 1] = c
            return tuple(v)

        pos = [
            Root(e((j, 1), (k, -1)), 4)
            for j in range(1, m + 1)
            for k in range(j + 1, m + 1)
        ]
        pos += [
            Root(e((j, 1), (k, 1)), 4)
            for j in range(1, m + 1)
            for k in range(j + 1, m + 1)
        ]
        pos += [Root(e((j, 2)), 1) for j in range(1, m + 1)]
        if n % 2 == 1:
            pos += [Root(e((j, 1)), 4) for j in range(1, m + 1)]
        simple = [e((j, 1), (j + 1, -1)) for j in range(1, m)]
        simple.append(e((m, 1)) if n % 2 == 1 else e((m, 2)))
        by_coords = {r.coords: r for r in pos}
        rs = RootSystem(
            family, (n,), m, m, tuple(pos),
            tuple(by_coords[s] for s in simple),
            _AMBIENT_DIM[family](n),
        )

    else:  # sl_quaternion
        if len(params) != 1:
            raise ParamError("sl_quaternion takes a single parameter n")
        (n,) = params
        if n < 2:
            raise ParamError("need n >= 2")

        def e(*pairs):
            v = [0] * n
            for idx, c in pairs:
                v[idx - 1] = c
            return tuple(v)

        pos = [
            Root(e((k, 1), (j, -1)), 4)
            for j in range(1, n + 1)
            for k in range(j + 1, n + 1)
        ]
        simple = [e((j + 1, 1), (j, -1)) for j in range(1, n)]
        by_coords = {r.coords: r for r in pos}
        rs = RootSystem(
            family, (n,), n - 1, n, tuple(pos),
            tuple(by_coords[s] for s in simple),
            _AMBIENT_DIM[family](n),
        )

    # defining property of the dual basis, checked exactly
    for i, alpha in enumerate(rs.simple_roots):
        for j, h in enumerate(rs.dual_basis):
            val = sum(Fraction(alpha.coords[t]) * h[t] for t in range(rs.coord_dim))
            if val != int(i == j):
                raise InternalError("dual basis failed its defining property")
    return rs


def dual_basis(rs: RootSystem) -> tuple[tuple[Fraction, ...], ...]:
    """Dual vectors H^1..H^r in torus coordinates (exact rationals)."""
    return rs.dual_basis


def z_coordinates(rs: RootSystem, z: CharacteristicElement) -> tuple[Fraction, ...]:
    """Torus coordinates of Z = sum c_i H^i."""
    _validate_z(rs, z)
    vec = [Fraction(0)] * rs.coord_dim
    for idx, c in z.coeffs:
        h = rs.dual_basis[idx - 1]
        for t in range(rs.coord_dim):
            vec[t] += c * h[t]
    return tuple(vec)


def _validate_z(rs: RootSystem, z: CharacteristicElement) -> None:
    for idx, _ in z.coeffs:
        if not 1 <= idx <= rs.rank:
            raise ParamError(f"simple-root index {idx} out of range for rank {rs.rank}")


def grade_levels(rs: RootSystem, z: CharacteristicElement) -> dict[tuple[int, ...], int]:
    """Integer level alpha(Z) for every positive root (exact)."""
    _validate_z(rs, z)
    levels = {}
    for root in rs.positive_roots:
        exp = rs.simple_expansions[root.coords]
        levels[root.coords] = sum(z.coefficient(i + 1) * exp[i] for i in range(rs.rank))
    if levels and max(levels.values()) <= 0:
        raise InternalError("no positive level; characteristic element is invalid")
    return levels


def grade(rs: RootSystem, z: CharacteristicElement) -> dict[int, list[Root]]:
    """Positive roots grouped by level alpha(Z)."""
    levels = grade_levels(rs, z)
    out: dict[int, list[Root]] = {}
    for root in rs.positive_roots:
        out.setdefault(levels[root.coords], []).append(root)
    return dict(sorted(out.items()))


def lambda_prime(rs: RootSystem, z: CharacteristicElement) -> tuple[Root, ...]:
    """Simple roots vanishing on Z, i.e. Lambda minus the support of Z."""
    _validate_z(rs, z)
    support = set(z.support)
    return tuple(
        alpha for i, alpha in enumerate(rs.simple_roots, start=1) if i not in support
    )


def root_inner(a: Root | tuple[int, ...], b: Root | tuple[int, ...]) -> int:
    """Killing-proportional inner product on the weight coordinates.

    The realized torus Gram is a multiple of the identity in these
    coordinates for every supported family (the quaternionic special-linear
    roots are sum-zero, so the restriction to the trace-free torus agrees),
    which makes the plain integer dot product the right pairing.
    """
    ca = a.coords if isinstance(a, Root) else a
    cb = b.coords if isinstance(b, Root) else b
    return sum(x * y for x, y in zip(ca, cb))


def is_trivial_subset(rs: RootSystem, subset) -> bool:
    """True iff `subset` of Lambda is orthogonal to its complement."""
    sub = {r.coords if isinstance(r, Root) else tuple(r) for r in subset}
    for alpha in rs.simple_roots:
        if alpha.coords not in sub:
            continue
        for beta in rs.simple_roots:
            if beta.coords in sub:
                continue
            if root_inner(alpha.coords, beta.coords) != 0:
                return False
    return True


@dataclass(frozen=True)
class LanglandsDecomposition:
    """The a', m', n' split of the parabolic attached to a grading."""

    a_prime: tuple[tuple[Fraction, ...], ...]  # dual-basis vectors kept
    m_prime_dim: int
    m_prime_roots: tuple[Root, ...]  # level-zero positive roots
    n_prime: tuple[Root, ...]  # positive-level roots

    @property
    def n_prime_dim(self) -> int:
        return sum(r.mult for r in self.n_prime)


def langlands(rs: RootSystem, z: CharacteristicElement) -> LanglandsDecomposition:
    """Split the root data along the grading induced by Z.

    m' is reported by dimension and root labels only: its dimension is the
    centralizer dimension of the torus (ambient minus twice the positive
    multiplicity minus the rank) plus both signs of every level-zero root,
    minus the retained torus directions.
    """
    levels = grade_levels(rs, z)
    zero = tuple(r for r in rs.positive_roots if levels[r.coords] == 0)
    pos = tuple(r for r in rs.positive_roots if levels[r.coords] > 0)
    a_prime = tuple(rs.dual_basis[i - 1] for i in z.support)
    m0 = rs.ambient_dim - 2 * rs.total_mult - rs.rank
    m_prime_dim = m0 + rs.rank + 2 * sum(r.mult for r in zero) - len(a_prime)
    return LanglandsDecomposition(a_prime, m_prime_dim, zero, pos)
