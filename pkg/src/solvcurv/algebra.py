"""Real-matrix substrate: brackets, scalar embeddings, structure constants.

Every Lie algebra in this package is realized by real square matrices.
Complex and quaternionic matrices enter through fixed ring embeddings
(C into 2x2 blocks, H into 4x4 blocks), so one commutator routine serves
all families.  Structure constants are extracted by least squares against
a declared basis and validated: any expansion residual above tolerance
means the basis is not closed and raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, InternalError, NotClosedError

# Closure is algebraically exact for every construction in this package,
# so a residual above this relative tolerance signals a bug, not noise.
CLOSURE_TOL = 1e-9
JACOBI_TOL = 1e-10

# Entries smaller than this (relative to the largest constant) are rounded
# to exact zero after extraction; genuine constants are ~0.1 or larger.
_ZERO_CLIP = 1e-11


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix commutator x*y - y*x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DimensionError(f"incompatible shapes {x.shape} and {y.shape}")
    return x @ y - y @ x


def skew_pair(i: int, j: int, dim: int) -> np.ndarray:
    """Skew matrix with 1 at (i, j), -1 at (j, i); indices 1-based."""
    m = np.zeros((dim, dim))
    m[i - 1, j - 1] = 1.0
    m[j - 1, i - 1] = -1.0
    return m


def sym_pair(i: int, j: int, dim: int) -> np.ndarray:
    """Symmetric matrix with 1 at (i, j) and (j, i); 1 at (i, i) if i == j."""
    m = np.zeros((dim, dim))
    m[i - 1, j - 1] = 1.0
    m[j - 1, i - 1] = 1.0
    return m


def unit(i: int, j: int, dim: int) -> np.ndarray:
    """Elementary matrix with a single 1 at (i, j); indices 1-based."""
    m = np.zeros((dim, dim))
    m[i - 1, j - 1] = 1.0
    return m


# ---------------------------------------------------------------------------
# scalar embeddings
# ---------------------------------------------------------------------------

# Left-multiplication matrices of 1, i, j, k on the basis (1, i, j, k).
# These are orthogonal, the imaginary ones skew, so transposition realizes
# quaternion conjugation.
_QUNITS = np.zeros((4, 4, 4))
_QUNITS[0] = np.eye(4)
_QUNITS[1] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
_QUNITS[2] = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
_QUNITS[3] = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]

_CUNITS = np.zeros((2, 2, 2))
_CUNITS[0] = np.eye(2)
_CUNITS[1] = [[0, -1], [1, 0]]


def embed_quaternion(q) -> np.ndarray:
    """4x4 real matrix of the quaternion q = (re, i, j, k)."""
    q = np.asarray(q, dtype=float)
    return np.einsum("t,tab->ab", q, _QUNITS)


def embed_complex(z: complex) -> np.ndarray:
    """2x2 real matrix of the complex scalar z."""
    return z.real * _CUNITS[0] + z.imag * _CUNITS[1]


def embed_quaternion_matrix(q: np.ndarray) -> np.ndarray:
    """Realize an n x n quaternionic matrix (shape (n, n, 4)) as 4n x 4n real.

    Entrywise application of `embed_quaternion`; a ring homomorphism, with
    transposition realizing the conjugate transpose.
    """
    q = np.asarray(q, dtype=float)
    n = q.shape[0]
    if q.shape != (n, n, 4):
        raise DimensionError(f"expected shape (n, n, 4), got {q.shape}")
    blocks = np.einsum("rct,tab->racb", q, _QUNITS)
    return blocks.reshape(4 * n, 4 * n)


def embed_complex_matrix(z: np.ndarray) -> np.ndarray:
    """Realize an n x n complex matrix as 2n x 2n real, entrywise."""
    z = np.asarray(z, dtype=complex)
    n = z.shape[0]
    if z.shape != (n, n):
        raise DimensionError(f"expected a square matrix, got {z.shape}")
    parts = np.stack([z.real, z.imag])
    blocks = np.einsum("trc,tab->racb", parts, _CUNITS)
    return blocks.reshape(2 * n, 2 * n)


# ---------------------------------------------------------------------------
# basis sets and structure tensors
# ---------------------------------------------------------------------------


@dataclass
class BasisSet:
    """Ordered, labeled family of same-size real matrices."""

    labels: list[str]
    mats: np.ndarray  # shape (n, dim, dim)

    def __post_init__(self):
        self.mats = np.asarray(self.mats, dtype=float)
        if self.mats.ndim != 3 or self.mats.shape[1] != self.mats.shape[2]:
            raise DimensionError(f"expected (n, d, d) stack, got {self.mats.shape}")
        if len(self.labels) != self.mats.shape[0]:
            raise DimensionError("label count does not match matrix count")
        if len(set(self.labels)) != len(self.labels):
            raise InternalError("basis labels must be unique")
        if not np.all(np.isfinite(self.mats)):
            raise InternalError("basis matrices contain non-finite entries")

    def __len__(self) -> int:
        return self.mats.shape[0]

    @property
    def dim(self) -> int:
        """Size of the ambient square matrices."""
        return self.mats.shape[1]

    def __getitem__(self, label: str) -> np.ndarray:
        return self.mats[self.labels.index(label)]

    def num_a(self) -> int:
        """Count of leading torus vectors, recognized by the 'a[' label prefix."""
        k = 0
        for lab in self.labels:
            if lab.startswith("a["):
                k += 1
            else:
                break
        return k


@dataclass
class StructureTensor:
    """Dense structure constants c[i, j, k] with [X_i, X_j] = sum_k c[i,j,k] X_k.

    Antisymmetry in (i, j) holds exactly by construction; the Jacobi
    identity is a numerical check exposed through `jacobi_max`.
    """

    c: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        n = self.c.shape[0]
        if self.c.shape != (n, n, n):
            raise DimensionError(f"expected cubic tensor, got {self.c.shape}")
        if np.any(self.c + np.swapaxes(self.c, 0, 1) != 0.0):
            raise InternalError("structure tensor is not exactly antisymmetric")

    @property
    def n(self) -> int:
        return self.c.shape[0]

    def jacobi_max(self) -> float:
        """Largest componentwise violation of the Jacobi identity."""
        c = self.c
        # sum_m c[i,j,m] c[m,k,l] + cyclic in (i, j, k)
        t = np.einsum("ijm,mkl->ijkl", c, c)
        jac = t + np.einsum("ijkl->jkil", t) + np.einsum("ijkl->kijl", t)
        return float(np.max(np.abs(jac))) if self.n else 0.0

    def nonzero_triples(self, tol: float = 0.0):
        """Sorted (i, j, k, value) with i < j and |value| > tol."""
        out = []
        n = self.n
        for i in range(n):
            for j in range(i + 1, n):
                for k in np.nonzero(np.abs(self.c[i, j]) > tol)[0]:
                    out.append((i, j, int(k), float(self.c[i, j, k])))
        return out

    def to_csv(self) -> str:
        """CSV triples i,j,k,value (i < j, nonzero entries only)."""
        lines = ["i,j,k,value"]
        for i, j, k, v in self.nonzero_triples():
            lines.append(f"{i},{j},{k},{v!r}")
        return "\n".join(lines) + "\n"


def matrix_to_csv(m: np.ndarray) -> str:
    """Dense CSV rendering of a matrix."""
    m = np.asarray(m, dtype=float)
    return "\n".join(",".join(repr(float(v)) for v in row) for row in m) + "\n"


def expand_in_basis(basis: BasisSet, mats: np.ndarray, tol: float = CLOSURE_TOL):
    """Least-squares coordinates of `mats` (stack) in `basis`.

    Returns (coords, residuals) where residuals are relative to each
    target's norm (absolute when the target is numerically zero).
    """
    mats = np.asarray(mats, dtype=float)
    if mats.ndim == 2:
        mats = mats[None, :, :]
    if mats.shape[1:] != (basis.dim, basis.dim):
        raise DimensionError("target matrices do not match the basis dimension")
    a = basis.mats.reshape(len(basis), -1).T  # (D^2, n)
    b = mats.reshape(mats.shape[0], -1).T  # (D^2, m)
    coords, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = np.linalg.norm(a @ coords - b, axis=0)
    scale = np.maximum(np.linalg.norm(b, axis=0), 1.0)
    return coords.T, resid / scale


def extract_structure_constants(
    basis: BasisSet, tol: float = CLOSURE_TOL
) -> StructureTensor:
    """Expand every pairwise bracket in `basis` and assemble the tensor.

    Raises NotClosedError (with the offending pair) when any expansion
    leaves a residual above `tol`.  The result is antisymmetrized exactly
    and tiny numerical dust is clipped to zero.
    """
    n = len(basis)
    mats = basis.mats
    prods = np.einsum("iab,jbc->ijac", mats, mats)
    brackets = prods - np.swapaxes(prods, 0, 1)

    a = mats.reshape(n, -1).T
    b = brackets.reshape(n * n, -1).T
    coords, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = np.linalg.norm(a @ coords - b, axis=0)
    scale = np.maximum(np.linalg.norm(b, axis=0), 1.0)
    rel = (resid / scale).reshape(n, n)
    if n and rel.max() > tol:
        i, j = np.unravel_index(int(np.argmax(rel)), rel.shape)
        raise NotClosedError((basis.labels[i], basis.labels[j]), float(rel[i, j]))

    c = coords.T.reshape(n, n, n)
    c = 0.5 * (c - np.swapaxes(c, 0, 1))
    if n:
        clip = _ZERO_CLIP * max(1.0, float(np.max(np.abs(c))))
        c[np.abs(c) < clip] = 0.0
    return StructureTensor(c)


# ---------------------------------------------------------------------------
# bilinear forms
# ---------------------------------------------------------------------------

GRAM_FORMS = ("ambient_killing_weighted", "ambient_trace", "declared_orthonormal")


def trace_sigma_gram(basis: BasisSet) -> np.ndarray:
    """Gram matrix of tr(X Y^t), the trace form twisted by X -> -X^t."""
    flat = basis.mats.reshape(len(basis), -1)
    return flat @ flat.T


def killing_gram(basis: BasisSet, ambient: BasisSet, tol: float = CLOSURE_TOL):
    """Gram of the Killing form B(X, Y) = tr(ad X . ad Y) over the full algebra.

    `ambient` must be a basis of the enclosing algebra; each ad X is the
    matrix of [X, -] in that basis.  Returns (B, ad) with ad of shape
    (len(basis), len(ambient), len(ambient)).
    """
    g = ambient.mats
    ng = len(ambient)
    prods = np.einsum("iab,jbc->ijac", basis.mats, g)
    prods -= np.einsum("jab,ibc->ijac", g, basis.mats)
    coords, resid = expand_in_basis(ambient, prods.reshape(-1, g.shape[1], g.shape[2]))
    worst = float(resid.max()) if resid.size else 0.0
    if worst > tol:
        raise NotClosedError(("<basis>", "<ambient>"), worst,
                             "ad action does not close in the ambient basis")
    ad = coords.reshape(len(basis), ng, ng).swapaxes(1, 2)  # ad[i][x, y]
    b = np.einsum("ixy,jyx->ij", ad, ad)
    return b, ad


def killing_sigma_gram(basis: BasisSet, ambient: BasisSet) -> np.ndarray:
    """Gram of B_sigma(X, Y) = -B(X, sigma Y) with sigma the negative transpose."""
    transposed = BasisSet(
        [f"t:{lab}" for lab in basis.labels], np.swapaxes(basis.mats, 1, 2)
    )
    g = ambient.mats
    prods = np.einsum("iab,jbc->ijac", basis.mats, g)
    prods -= np.einsum("jab,ibc->ijac", g, basis.mats)
    coords, resid0 = expand_in_basis(ambient, prods.reshape(-1, g.shape[1], g.shape[2]))
    if resid0.size and float(resid0.max()) > CLOSURE_TOL:
        raise NotClosedError(("<basis>", "<ambient>"), float(resid0.max()),
                             "ad action does not close in the ambient basis")
    ad = coords.reshape(len(basis), len(ambient), len(ambient)).swapaxes(1, 2)

    prods_t = np.einsum("iab,jbc->ijac", transposed.mats, g)
    prods_t -= np.einsum("jab,ibc->ijac", g, transposed.mats)
    coords_t, resid = expand_in_basis(ambient, prods_t.reshape(-1, g.shape[1], g.shape[2]))
    if resid.size and float(resid.max()) > CLOSURE_TOL:
        raise NotClosedError(("<sigma basis>", "<ambient>"), float(resid.max()),
                             "transposed basis leaves the ambient algebra")
    ad_t = coords_t.reshape(len(basis), len(ambient), len(ambient)).swapaxes(1, 2)
    # -B(X, sigma Y) with sigma = negative transpose, so the signs cancel
    return np.einsum("ixy,jyx->ij", ad, ad_t)


def gram_matrix(
    basis: BasisSet,
    form: str,
    ambient: BasisSet | None = None,
    num_a: int | None = None,
) -> np.ndarray:
    """Gram matrix of `basis` under the selected bilinear form.

    Forms:
      declared_orthonormal     identity, by definition of the declared metric
      ambient_trace            tr(X Y^t), the transpose-twisted trace form
      ambient_killing_weighted -B(X, sigma Y) from the ambient Killing form,
                               with the torus block (leading `num_a` vectors,
                               inferred from 'a[' labels when not given)
                               weighted by 2
    """
    if form not in GRAM_FORMS:
        raise ValueError(f"unknown form {form!r}; expected one of {GRAM_FORMS}")
    if form == "declared_orthonormal":
        return np.eye(len(basis))
    if form == "ambient_trace":
        return trace_sigma_gram(basis)
    if ambient is None:
        raise ValueError("ambient basis required for the Killing form")
    g = killing_sigma_gram(basis, ambient)
    k = basis.num_a() if num_a is None else num_a
    w = np.ones(len(basis))
    w[:k] = np.sqrt(2.0)
    return g * np.outer(w, w)
