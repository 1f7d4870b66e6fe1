"""Adapted bases of the five symmetric-space families and their validation.

Each builder realizes the solvable part s = a + n by explicit real matrices
(complex and quaternionic entries embedded), normalizes so that the metric

    2 * B_sigma on a x a,   B_sigma on n x n,   a orthogonal to n

becomes the declared-orthonormal inner product of the basis (B_sigma is the
Cartan twist of the ambient Killing form), and validates the result: root
vectors, closure, adaptedness and the standard solvable-form conditions.

The common normalizer lambda (the weighted squared norm shared by every
listed generator) is recorded per family on the realization; it comes out
as a small even integer but is always measured, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    BasisSet,
    StructureTensor,
    embed_complex_matrix,
    embed_quaternion_matrix,
    extract_structure_constants,
    killing_sigma_gram,
    skew_pair,
    sym_pair,
    unit,
)
from .errors import InternalError, ParamError
from .roots import FAMILIES, Root, RootSystem, build_root_system

_SQ2 = np.sqrt(2.0)

# residual tolerances for construction-time validation
ROOT_VECTOR_TOL = 1e-9
GRAM_TOL = 1e-9
ADAPTED_TOL = 1e-9


# ---------------------------------------------------------------------------
# core data types
# ---------------------------------------------------------------------------


@dataclass
class MetricSolvLieAlgebra:
    """A solvable metric Lie algebra in an orthonormal basis.

    The basis lists the abelian part first (`dim_a` vectors), then the
    nilradical grouped by root.  The inner product is the one that declares
    this basis orthonormal; all curvature routines work in these
    coordinates.  `a_omega` stores the weight coordinates of each a-basis
    vector so roots can be evaluated on arbitrary torus elements, and
    `n_roots` maps every nilradical index to its restricted root.
    """

    labels: tuple[str, ...]
    dim_a: int
    dim_n: int
    structure: StructureTensor
    rs: RootSystem
    n_roots: tuple[Root, ...]
    a_omega: np.ndarray
    flags: dict[str, int] | None = None
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim_a + self.dim_n != len(self.labels):
            raise InternalError("label count does not match dim_a + dim_n")
        if self.structure.n != len(self.labels):
            raise InternalError("structure tensor size does not match basis")
        if len(self.n_roots) != self.dim_n:
            raise InternalError("every nilradical vector needs a root")
        self.a_omega = np.asarray(self.a_omega, dtype=float)

    @property
    def dim(self) -> int:
        return self.dim_a + self.dim_n

    @property
    def c(self) -> np.ndarray:
        return self.structure.c

    @property
    def a_indices(self) -> range:
        return range(self.dim_a)

    @property
    def n_indices(self) -> range:
        return range(self.dim_a, self.dim)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def gen_index(self, name: str) -> int:
        """Index of the unique basis vector whose generator name is `name`."""
        hits = [
            i
            for i, lab in enumerate(self.labels)
            if lab.split(":", 1)[-1] == name or lab == name
        ]
        if len(hits) != 1:
            raise KeyError(f"generator name {name!r} matches {len(hits)} labels")
        return hits[0]

    def vector(self, terms: dict[str, float]) -> np.ndarray:
        """Coefficient vector from {generator name or label: coefficient}."""
        v = np.zeros(self.dim)
        for name, coef in terms.items():
            v[self.gen_index(name)] += coef
        return v

    def root_values(self) -> np.ndarray:
        """alpha_j(A_i) for every a-basis vector i and nilradical index j."""
        if self.dim_n == 0:
            return np.zeros((self.dim_a, 0))
        coords = np.array([r.coords for r in self.n_roots], dtype=float)
        return self.a_omega @ coords.T

    def root_block(self, root: Root) -> list[int]:
        return [
            self.dim_a + j for j, r in enumerate(self.n_roots) if r.coords == root.coords
        ]

    def with_provenance(self, line: str) -> tuple[str, ...]:
        return self.provenance + (line,)


@dataclass
class AmbientRealization:
    """Normalized basis matrices inside the ambient semisimple algebra.

    `basis` carries one real matrix per algebra label (same order), and
    `ambient` a full basis of the enclosing algebra, used for Killing-form
    computations.  The involution is the negative transpose throughout.
    """

    basis: BasisSet
    ambient: BasisSet
    normalizer: float
    involution: str = "negative_transpose"
    meta: dict[str, dict] = field(default_factory=dict)

    def matrix(self, label: str) -> np.ndarray:
        return self.basis[label]


@dataclass(frozen=True)
class SignFlagAssignment:
    """Parity flag per nilradical label; 1 marks vectors scaled by sqrt(-1)."""

    flags: tuple[tuple[str, int], ...]
    description: str = ""

    @classmethod
    def from_dict(cls, d: dict[str, int], description: str = ""):
        return cls(tuple(sorted((k, int(v)) for k, v in d.items())), description)

    def as_dict(self) -> dict[str, int]:
        return dict(self.flags)

    def flagged_labels(self) -> tuple[str, ...]:
        return tuple(k for k, v in self.flags if v)


# ---------------------------------------------------------------------------
# family generator tables
# ---------------------------------------------------------------------------


def _spq_entries(family: str, p: int, q: int):
    """Generators for the SO/SU/Sp(p,q) block realization.

    Entries of the ambient algebra sit in (p, p, q-p) block form; the torus
    is the diagonal of the B block.  Scalars: real, complex (eps = i) or
    quaternion (eps in {i, j, k}) depending on the family.
    """
    N = p + q
    E = lambda i, j: skew_pair(i, j, N)
    F = lambda i, j: sym_pair(i, j, N)
    eps_list = {"orthogonal": [], "unitary": [1], "symplectic": [1, 2, 3]}[family]
    eps_tag = {1: "i", 2: "j", 3: "k"}

    a_entries = []
    for k in range(1, p + 1):
        row = np.zeros(p)
        row[k - 1] = 1.0
        a_entries.append((f"F{k}{p + k}", (F(k, p + k), 0), row))

    def coords(*pairs):
        v = [0] * p
        for i, c in pairs:
            v[i - 1] = c
        return tuple(v)

    n_entries = []  # (coords, name, (real matrix, eps index), meta)
    if q > p:
        for k in range(1, p + 1):
            root = coords((k, 1))
            for m in range(2 * p + 1, N + 1):
                n_entries.append(
                    (root, f"U{k}{m}", (F(k, m) + E(p + k, m), 0),
                     {"kind": "U", "col": m, "row": k})
                )
            for e in eps_list:
                for m in range(2 * p + 1, N + 1):
                    n_entries.append(
                        (root, f"V{eps_tag[e]}{k}{m}", (E(k, m) + F(p + k, m), e),
                         {"kind": "V", "col": m, "row": k})
                    )
    for sign, tag in ((-1, "-"), (1, "+")):
        for i in range(1, p + 1):
            for j in range(i + 1, p + 1):
                root = coords((j, 1), (i, sign))
                y = (E(i, j) - sign * E(p + i, p + j)
                     - F(i, p + j) + sign * F(j, p + i)) / _SQ2
                n_entries.append(
                    (root, f"Y{i}{j}{tag}", (y, 0), {"kind": f"Y{tag}", "pair": (i, j)})
                )
                for e in eps_list:
                    z = (F(i, j) - sign * F(p + i, p + j)
                         - E(i, p + j) - sign * E(j, p + i)) / _SQ2
                    n_entries.append(
                        (root, f"Z{eps_tag[e]}{i}{j}{tag}", (z, e),
                         {"kind": f"Z{tag}", "pair": (i, j)})
                    )
    for k in range(1, p + 1):
        for e in eps_list:
            w = F(k, k) - F(p + k, p + k) - E(k, p + k)
            n_entries.append(
                (coords((k, 2)), f"W{eps_tag[e]}{k}", (w, e), {"kind": "W", "col": k})
            )

    ambient = []
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            ambient.append((E(i, j), 0))
    for i in range(p + 1, N + 1):
        for j in range(i + 1, N + 1):
            ambient.append((E(i, j), 0))
    for i in range(1, p + 1):
        for j in range(p + 1, N + 1):
            ambient.append((F(i, j), 0))
    for e in eps_list:
        for i in range(1, p + 1):
            for j in range(i + 1, p + 1):
                ambient.append((F(i, j), e))
        for i in range(p + 1, N + 1):
            for j in range(i + 1, N + 1):
                ambient.append((F(i, j), e))
        for i in range(1, p + 1):
            for j in range(p + 1, N + 1):
                ambient.append((E(i, j), e))
        if family == "unitary":
            for l in range(1, N):
                ambient.append((sym_pair(l, l, N) - sym_pair(l + 1, l + 1, N), e))
        else:
            for l in range(1, N + 1):
                ambient.append((sym_pair(l, l, N), e))

    def realize(entry):
        mat, e = entry
        if family == "orthogonal":
            return mat
        if family == "unitary":
            return embed_complex_matrix(mat.astype(complex) * (1j if e else 1.0))
        qm = np.zeros((N, N, 4))
        qm[:, :, e] = mat
        return embed_quaternion_matrix(qm)

    return a_entries, n_entries, ambient, realize


def _cskew(i, j, N):
    m = np.zeros((N, N), dtype=complex)
    m[i - 1, j - 1] = 1.0
    m[j - 1, i - 1] = -1.0
    return m


def _cunit(i, j, N):
    m = np.zeros((N, N), dtype=complex)
    m[i - 1, j - 1] = 1.0
    return m


def _so_star_entries(n: int):
    """Root vectors of SO(n, H) in the complex 2n realization."""
    N = 2 * n
    m = n // 2
    E = lambda i, j: _cskew(i, j, N)

    a_entries = []
    for j in range(1, m + 1):
        h = (1j / _SQ2) * (E(2 * j - 1, 2 * j) - E(n + 2 * j - 1, n + 2 * j))
        row = np.zeros(m)
        row[j - 1] = 1.0 / _SQ2
        a_entries.append((f"H{j}", h, row))

    def coords(*pairs):
        v = [0] * m
        for i, c in pairs:
            v[i - 1] = c
        return tuple(v)

    n_entries = []
    for sign, tag in ((-1, "-"), (1, "+")):
        for j in range(1, m + 1):
            for k in range(j + 1, m + 1):
                s = sign
                A = 0.5 * (
                    (E(2*j-1, 2*k-1) - s*E(2*j, 2*k)
                     + E(n+2*j-1, n+2*k-1) - s*E(n+2*j, n+2*k))
                    + 1j * (-s*E(2*j-1, 2*k) - E(2*j, 2*k-1)
                            + s*E(n+2*j-1, n+2*k) + E(n+2*j, n+2*k-1))
                )
                B = 0.5 * (
                    (E(2*j-1, 2*k) + s*E(2*j, 2*k-1)
                     + E(n+2*j-1, n+2*k) + s*E(n+2*j, n+2*k-1))
                    + 1j * (s*E(2*j-1, 2*k-1) - E(2*j, 2*k)
                            - s*E(n+2*j-1, n+2*k-1) + E(n+2*j, n+2*k))
                )
                C = 0.5 * (
                    (E(2*j-1, n+2*k) - s*E(2*j, n+2*k-1)
                     - s*E(2*k-1, n+2*j) + E(2*k, n+2*j-1))
                    + 1j * (-s*E(2*j-1, n+2*k-1) - E(2*j, n+2*k)
                            + s*E(2*k-1, n+2*j-1) + E(2*k, n+2*j))
                )
                D = 0.5 * (
                    (E(2*j-1, n+2*k-1) + E(2*k-1, n+2*j-1)
                     + s*E(2*j, n+2*k) + s*E(2*k, n+2*j))
                    + 1j * (s*E(2*j-1, n+2*k) - E(2*j, n+2*k-1)
                            + E(2*k-1, n+2*j) - s*E(2*k, n+2*j-1))
                )
                root = coords((j, 1), (k, sign))
                for letter, mat in (("A", A), ("B", B), ("C", C), ("D", D)):
                    n_entries.append(
                        (root, f"{letter}{j}{k}{tag}", mat,
                         {"kind": f"{letter}{tag}", "pair": (j, k)})
                    )
    for k in range(1, m + 1):
        G = (1 / _SQ2) * (
            (E(2*k-1, n+2*k-1) + E(2*k, n+2*k))
            + 1j * (E(2*k-1, n+2*k) - E(2*k, n+2*k-1))
        )
        n_entries.append((coords((k, 2)), f"G{k}", G, {"kind": "G", "col": k}))
    if n % 2 == 1:
        for k in range(1, m + 1):
            root = coords((k, 1))
            X = (1/_SQ2) * ((E(2*k, n) + E(n+2*k, 2*n)) + 1j*(E(2*k-1, n) - E(n+2*k-1, 2*n)))
            Y = (1/_SQ2) * ((E(2*k-1, n) + E(n+2*k-1, 2*n)) - 1j*(E(2*k, n) - E(n+2*k, 2*n)))
            Z = (1/_SQ2) * ((E(2*k, 2*n) + E(n, n+2*k)) + 1j*(E(2*k-1, 2*n) - E(n, n+2*k-1)))
            W = (1/_SQ2) * ((E(2*k-1, 2*n) + E(n, n+2*k-1)) - 1j*(E(2*k, 2*n) - E(n, n+2*k)))
            for letter, mat in (("W", W), ("X", X), ("Y", Y), ("Z", Z)):
                n_entries.append(
                    (root, f"{letter}{k}", mat, {"kind": letter, "col": k})
                )

    ambient = []
    zero = np.zeros((n, n), dtype=complex)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for x in (_cunit(a, b, n) - _cunit(b, a, n),
                      1j * (_cunit(a, b, n) - _cunit(b, a, n))):
                ambient.append(np.block([[x, zero], [zero, x.conj()]]))
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            y = _cunit(a, b, n) + _cunit(b, a, n) if a != b else _cunit(a, a, n)
            ambient.append(np.block([[zero, y], [-y.conj(), zero]]))
            if a != b:
                y = 1j * (_cunit(a, b, n) - _cunit(b, a, n))
                ambient.append(np.block([[zero, y], [-y.conj(), zero]]))
    return a_entries, n_entries, ambient


def _sl_quaternion_entries(n: int):
    """Root vectors of SL(n, H) in the complex 2n realization.

    Positive roots w_k - w_j (j < k) act on the strictly lower triangle, so
    the four generators per pair carry their weight at positions (k, j).
    """
    N = 2 * n
    e = lambda i, j: _cunit(i, j, N)

    a_entries = []
    for i in range(1, n):
        d = np.zeros(n)
        d[i - 1], d[i] = 1.0, -1.0
        mat = np.diag(np.concatenate([d, d])).astype(complex)
        row = np.zeros(n)
        row[i - 1], row[i] = 1.0, -1.0
        a_entries.append((f"T{i}", mat, row))

    def coords(*pairs):
        v = [0] * n
        for i, c in pairs:
            v[i - 1] = c
        return tuple(v)

    n_entries = []
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            root = coords((k, 1), (j, -1))
            A = 1j * _SQ2 * (e(k, j) - e(n + k, n + j))
            B = 1j * _SQ2 * (e(k, n + j) + e(n + k, j))
            C = _SQ2 * (e(n + k, j) - e(k, n + j))
            D = _SQ2 * (e(k, j) + e(n + k, n + j))
            for letter, mat in (("A", A), ("B", B), ("C", C), ("D", D)):
                n_entries.append(
                    (root, f"{letter}{j}{k}", mat,
                     {"kind": letter, "pair": (j, k)})
                )

    ambient = []
    zero = np.zeros((n, n), dtype=complex)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a != b:
                x = _cunit(a, b, n)
                ambient.append(np.block([[x, zero], [zero, x.conj()]]))
            x = 1j * _cunit(a, b, n)
            ambient.append(np.block([[x, zero], [zero, x.conj()]]))
            y = _cunit(a, b, n)
            ambient.append(np.block([[zero, -y.conj()], [y, zero]]))
            y = 1j * _cunit(a, b, n)
            ambient.append(np.block([[zero, -y.conj()], [y, zero]]))
    for i in range(1, n):
        x = _cunit(i, i, n) - _cunit(i + 1, i + 1, n)
        ambient.append(np.block([[x, zero], [zero, x.conj()]]))
    return a_entries, n_entries, ambient


def _family_tables(family: str, params: tuple[int, ...]):
    """Raw (a_entries, n_entries, ambient matrices) in final basis order.

    Every returned matrix is already realized over the reals.
    """
    rs = build_root_system(family, *params)
    if family in ("orthogonal", "unitary", "symplectic"):
        p, q = params
        a_e, n_e, amb, realize = _spq_entries(family, p, q)
        a_entries = [(name, realize(m), row) for name, m, row in a_e]
        n_entries = [(c, name, realize(m), meta) for c, name, m, meta in n_e]
        ambient = [realize(m) for m in amb]
    elif family == "so_star":
        (n,) = params
        if n < 4:
            raise ParamError("the builder needs n >= 4 for so_star")
        a_e, n_e, amb = _so_star_entries(n)
        a_entries = [(name, embed_complex_matrix(m), row) for name, m, row in a_e]
        n_entries = [(c, name, embed_complex_matrix(m), meta) for c, name, m, meta in n_e]
        ambient = [embed_complex_matrix(m) for m in amb]
    else:
        (n,) = params
        a_e, n_e, amb = _sl_quaternion_entries(n)
        a_entries = [(name, embed_complex_matrix(m), row) for name, m, row in a_e]
        n_entries = [(c, name, embed_complex_matrix(m), meta) for c, name, m, meta in n_e]
        ambient = [embed_complex_matrix(m) for m in amb]

    # group nilradical entries by the root ordering of the root system
    order = {r.coords: t for t, r in enumerate(rs.positive_roots)}
    n_entries.sort(key=lambda e: (order[e[0]], e[1]))
    counts: dict[tuple[int, ...], int] = {}
    for c, *_ in n_entries:
        counts[c] = counts.get(c, 0) + 1
    for r in rs.positive_roots:
        if counts.get(r.coords, 0) != r.mult:
            raise InternalError(
                f"{family}{params}: root {r.label} built {counts.get(r.coords, 0)} "
                f"generators, expected multiplicity {r.mult}"
            )
    return rs, a_entries, n_entries, ambient


# ---------------------------------------------------------------------------
# the builder
# ---------------------------------------------------------------------------


def build_symmetric(family: str, *params: int):
    """Construct the solvable metric Lie algebra of one symmetric space.

    Returns (algebra, realization).  The basis is normalized so that the
    weighted Killing-twist Gram is exactly the identity; the common raw
    generator norm lambda is recorded on the realization.
    """
    if family not in FAMILIES:
        raise ParamError(f"unknown family {family!r}; expected one of {FAMILIES}")
    rs, a_entries, n_entries, ambient_mats = _family_tables(family, tuple(params))

    a_labels = [f"a[{k}]:{'gs' if family == 'sl_quaternion' else ''}{name}"
                for k, (name, _, _) in enumerate(a_entries, 1)]
    n_labels = [f"n[{Root(c, 0).label}]:{name}" for c, name, _, _ in n_entries]
    labels = a_labels + n_labels
    raw = BasisSet(labels, np.array([m for _, m, _ in a_entries]
                                    + [m for _, _, m, _ in n_entries]))
    ambient = BasisSet([f"g[{t}]" for t in range(len(ambient_mats))],
                       np.array(ambient_mats))

    gram = killing_sigma_gram(raw, ambient)
    na, nn = len(a_entries), len(n_entries)
    n_block = gram[na:, na:]
    lam = float(np.trace(n_block) / nn)
    if np.abs(n_block - lam * np.eye(nn)).max() > GRAM_TOL * abs(lam):
        raise InternalError(f"{family}{params}: generators are not lambda-orthonormal")
    if np.abs(gram[:na, na:]).max() > GRAM_TOL * abs(lam):
        raise InternalError(f"{family}{params}: torus is not orthogonal to n")

    # orthonormalize the torus under 2 * B_sigma (a Cholesky Gram-Schmidt;
    # for the block families the raw torus is already orthogonal and this
    # reduces to scaling)
    chol = np.linalg.cholesky(2.0 * gram[:na, :na])
    inv_t = np.linalg.inv(chol).T
    a_mats = np.einsum("iab,ij->jab", raw.mats[:na], inv_t)
    a_omega = inv_t.T @ np.array([row for _, _, row in a_entries])
    n_mats = raw.mats[na:] / np.sqrt(lam)
    basis = BasisSet(labels, np.concatenate([a_mats, n_mats]))

    structure = extract_structure_constants(basis)
    n_roots = tuple(Root(c, 0) for c, *_ in n_entries)

    s = MetricSolvLieAlgebra(
        labels=tuple(labels),
        dim_a=na,
        dim_n=nn,
        structure=structure,
        rs=rs,
        n_roots=tuple(
            next(r for r in rs.positive_roots if r.coords == nr.coords)
            for nr in n_roots
        ),
        a_omega=a_omega,
        flags=None,
        provenance=(f"build {family}{tuple(params)}",),
    )
    realization = AmbientRealization(
        basis=basis,
        ambient=ambient,
        normalizer=lam,
        meta={lab: dict(meta) for lab, (_, _, _, meta) in zip(n_labels, n_entries)},
    )

    # construction self-checks: root vectors in the realization, adaptedness
    # and the solvable-form conditions on the tensor
    rep = verify_adapted(s, realization)
    if not rep.passed:
        raise InternalError(f"{family}{params}: adapted-basis check failed: {rep.failures}")
    rep = verify_iwasawa(s)
    if not rep.passed:
        raise InternalError(f"{family}{params}: solvable-form check failed: {rep.failures}")
    return s, realization


# ---------------------------------------------------------------------------
# validation reports
# ---------------------------------------------------------------------------


@dataclass
class AdaptedReport:
    passed: bool
    failures: list[str]
    max_root_residual: float
    max_extra_components: int
    max_orthogonality: float


def verify_adapted(
    s: MetricSolvLieAlgebra,
    realization: AmbientRealization | None = None,
    tol: float = ADAPTED_TOL,
) -> AdaptedReport:
    """Check the three adapted-basis conditions.

    (a) every nilradical vector is a joint eigenvector of the torus action
        at its declared root (verified on matrices when a realization is
        given, on the tensor otherwise);
    (b) the bracket of two nilradical basis vectors has at most one nonzero
        component;
    (c) brackets of a fixed vector with two different basis vectors are
        orthogonal.
    """
    failures: list[str] = []
    c = s.c
    na, dim = s.dim_a, s.dim

    max_root_resid = 0.0
    values = s.root_values()
    if realization is not None:
        mats = realization.basis.mats
        for i in range(na):
            for j in range(s.dim_n):
                lhs = mats[i] @ mats[na + j] - mats[na + j] @ mats[i]
                resid = np.abs(lhs - values[i, j] * mats[na + j]).max()
                max_root_resid = max(max_root_resid, float(resid))
    else:
        for i in range(na):
            block = c[i, na:, :].copy()
            diag = block[:, na:][np.arange(s.dim_n), np.arange(s.dim_n)]
            block[:, na:][np.arange(s.dim_n), np.arange(s.dim_n)] = 0.0
            max_root_resid = max(
                max_root_resid,
                float(np.abs(block).max()) if block.size else 0.0,
                float(np.abs(diag - values[i]).max()) if diag.size else 0.0,
            )
    if max_root_resid > tol:
        failures.append(f"root-vector residual {max_root_resid:.2e}")

    max_extra = 0
    for i in range(na, dim):
        for j in range(i + 1, dim):
            nz = int(np.sum(np.abs(c[i, j]) > tol))
            max_extra = max(max_extra, nz)
            if nz > 1:
                failures.append(
                    f"bracket [{s.labels[i]}, {s.labels[j]}] has {nz} components"
                )
    max_orth = 0.0
    for i in range(na, dim):
        block = c[i, na:, :]  # brackets of X_i with the other nilradical vectors
        g = block @ block.T
        off = g - np.diag(np.diag(g))
        max_orth = max(max_orth, float(np.abs(off).max()) if off.size else 0.0)
    if max_orth > tol:
        failures.append(f"bracket-orthogonality defect {max_orth:.2e}")

    return AdaptedReport(not failures, failures, max_root_resid, max_extra, max_orth)


@dataclass
class IwasawaReport:
    passed: bool
    failures: list[str]
    abelian_defect: float
    symmetry_defect: float
    torus_injective: bool
    a0: np.ndarray | None
    min_a0_eigenvalue: float


def verify_iwasawa(s: MetricSolvLieAlgebra, tol: float = ADAPTED_TOL) -> IwasawaReport:
    """Check the four standard solvable-form conditions.

    (i) the torus part is abelian, (ii) each torus action is symmetric in
    the declared basis, (iii) the torus acts injectively, (iv) some torus
    element acts positive definitely on the nilradical.  The witness for
    (iv) is the sum of the retained dual-basis vectors, whose root values
    are positive integers by construction.
    """
    failures: list[str] = []
    c = s.c
    na = s.dim_a

    abelian = float(np.abs(c[:na, :na, :]).max()) if na else 0.0
    if abelian > tol:
        failures.append(f"torus not abelian ({abelian:.2e})")

    sym = 0.0
    for i in range(na):
        ad = c[i].T  # ad[i][k, j] = coefficient of X_k in [A_i, X_j]
        sym = max(sym, float(np.abs(ad - ad.T).max()))
    if sym > tol:
        failures.append(f"torus action not symmetric ({sym:.2e})")

    values = s.root_values()
    injective = bool(
        na == 0 or (s.dim_n > 0 and np.linalg.matrix_rank(values, tol=1e-9) == na)
    )
    if not injective:
        failures.append("torus action has a kernel")

    a0 = None
    min_eig = float("-inf")
    if na and s.dim_n:
        # first candidate: the sum of the dual-basis vectors that lie in the
        # current torus span (after an attach only the supported ones do);
        # second candidate: the mean-curvature direction
        target = np.zeros(s.rs.coord_dim)
        for h in s.rs.dual_basis:
            hv = np.array([float(v) for v in h])
            coeffs, *_ = np.linalg.lstsq(s.a_omega.T, hv, rcond=None)
            if np.abs(s.a_omega.T @ coeffs - hv).max() < 1e-9:
                target += hv
        candidates = []
        coeffs, *_ = np.linalg.lstsq(s.a_omega.T, target, rcond=None)
        if np.abs(s.a_omega.T @ coeffs - target).max() < 1e-9:
            candidates.append(coeffs)
        candidates.append(np.einsum("kii->k", c)[:na])
        for cand in candidates:
            eigs = cand @ values
            if eigs.size and eigs.min() > tol:
                a0 = cand
                min_eig = float(eigs.min())
                break
        if a0 is None:
            eigs = candidates[0] @ values if candidates else np.zeros(0)
            min_eig = float(eigs.min()) if eigs.size else float("-inf")
            failures.append(f"no positive expander found ({min_eig:.2e})")
    elif na == 0:
        failures.append("empty torus admits no positive expander")
    else:
        # no nilradical: any nonzero torus element works vacuously
        a0 = np.zeros(na)
        min_eig = float("inf")

    return IwasawaReport(not failures, failures, abelian, sym, injective, a0, min_eig)


# ---------------------------------------------------------------------------
# sign flags and construction counts
# ---------------------------------------------------------------------------


def association_flags(
    family: str, params: tuple[int, ...], choice: int | None = None
) -> SignFlagAssignment:
    """The sign-flag assignment defining the associated algebra.

    For the block families the nilradical columns split as W_a + W_b with
    a + b = q - p, and the vectors supported on the trailing b columns are
    flagged (convention: always flag W_b; the two sides differ by a column
    permutation).  `choice` is the split position a and requires q - p >= 2.
    For the quaternionic families there is a single canonical assignment
    and `choice` is ignored.
    """
    rs, _, n_entries, _ = _family_tables(family, tuple(params))
    flags: dict[str, int] = {}
    if family in ("orthogonal", "unitary", "symplectic"):
        p, q = params
        if q - p < 2:
            raise ParamError("association needs q - p >= 2 for the block families")
        a = 1 if choice is None else int(choice)
        if not 1 <= a <= q - p - 1:
            raise ParamError(f"need 1 <= choice <= {q - p - 1}")
        for c, name, _, meta in n_entries:
            lab = f"n[{Root(c, 0).label}]:{name}"
            flagged = meta["kind"] in ("U", "V") and meta["col"] > 2 * p + a
            flags[lab] = int(flagged)
        desc = f"wb:{a}"
    elif family == "so_star":
        (n,) = params
        flagged_kinds = (
            {"B-", "C-", "A+", "D+", "G"} if n % 2 == 0
            else {"X", "Z", "B+", "C+", "B-", "C-"}
        )
        for c, name, _, meta in n_entries:
            lab = f"n[{Root(c, 0).label}]:{name}"
            flags[lab] = int(meta["kind"] in flagged_kinds)
        desc = "canonical"
    else:
        for c, name, _, meta in n_entries:
            lab = f"n[{Root(c, 0).label}]:{name}"
            flags[lab] = int(meta["kind"] in ("A", "C"))
        desc = "canonical"
    return SignFlagAssignment.from_dict(flags, description=desc)


def count_constructions(family: str, params: tuple[int, ...]) -> tuple[int, int]:
    """(number of associates, upper bound on attached subalgebras).

    The attached bound counts nonempty supports of the characteristic
    element and does not quotient by diagram symmetries.
    """
    rs = build_root_system(family, *params)
    if family in ("orthogonal", "unitary", "symplectic"):
        p, q = params
        associates = (q - p) // 2
    else:
        associates = 1
    return associates, 2**rs.rank - 1
