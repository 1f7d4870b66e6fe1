"""Connection and curvature of a metric solvable Lie algebra.

All formulas run on the structure constants c[i,j,k] of the declared
orthonormal basis.  The non-bracket part of the Levi-Civita connection is
the symmetric form U with

    <U(X,Y), Z> = 1/2 <[Z,X], Y> + 1/2 <[Z,Y], X>,

the sectional curvature of an orthonormal pair is

    K(X,Y) = -3/4 |[X,Y]|^2 - 1/2 <[X,[X,Y]],Y> - 1/2 <[Y,[Y,X]],X>
             + |U(X,Y)|^2 - <U(X,X),U(Y,Y)>,

and the Ricci form is assembled two independent ways: the four-term sum
(`ricci_full`) and the block shortcut for standard solvable algebras
(`ricci_wolter`, torus block -tr(ad A ad A'), mixed block zero, nilradical
block the intrinsic nilpotent Ricci corrected by the mean-curvature
action).  Their agreement is a standing cross-check, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .builders import MetricSolvLieAlgebra, verify_iwasawa
from .errors import DegeneratePlaneError, InternalError, NotIwasawaError, ParamError

H0_CROSSCHECK_TOL = 1e-9
_RANK_TOL = 1e-9


def u_form(s: MetricSolvLieAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """The symmetric bilinear form U(x, y) in basis coordinates."""
    c = s.c
    return 0.5 * (np.einsum("kab,a,b->k", c, x, y) + np.einsum("kab,b,a->k", c, x, y))


def bracket_vec(s: MetricSolvLieAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """[x, y] in basis coordinates."""
    return np.einsum("a,b,abk->k", x, y, s.c)


def levi_civita(s: MetricSolvLieAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """nabla_x y = 1/2 [x, y] + U(x, y)."""
    return 0.5 * bracket_vec(s, x, y) + u_form(s, x, y)


def sectional(s: MetricSolvLieAlgebra, x: np.ndarray, y: np.ndarray) -> float:
    """Sectional curvature of span{x, y}.

    The inputs are orthonormalized internally (x direction first); they
    only need to be linearly independent.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gram = np.array([[x @ x, x @ y], [x @ y, y @ y]])
    if np.linalg.det(gram) < 1e-12:
        raise DegeneratePlaneError("plane vectors are linearly dependent")
    xn = x / np.linalg.norm(x)
    yo = y - (y @ xn) * xn
    yn = yo / np.linalg.norm(yo)

    b = bracket_vec(s, xn, yn)
    uxy = u_form(s, xn, yn)
    uxx = u_form(s, xn, xn)
    uyy = u_form(s, yn, yn)
    return float(
        -0.75 * (b @ b)
        - 0.5 * (bracket_vec(s, xn, b) @ yn)
        - 0.5 * (bracket_vec(s, yn, -b) @ xn)
        + uxy @ uxy
        - uxx @ uyy
    )


def killing_form_s(s: MetricSolvLieAlgebra) -> np.ndarray:
    """Killing form of s itself, B_ij = tr(ad X_i . ad X_j)."""
    c = s.c
    return np.einsum("ajk,bkj->ab", c, c)


def mean_curvature(s: MetricSolvLieAlgebra) -> np.ndarray:
    """H_0 = sum_i U(X_i, X_i) over the orthonormal basis."""
    return np.einsum("kii->k", s.c)


def mean_curvature_trace(s: MetricSolvLieAlgebra) -> np.ndarray:
    """The torus vector characterized by <H_0, A> = tr(ad A |_n).

    Independent route to the mean curvature: components outside the torus
    are zero by fiat, so comparing against `mean_curvature` also verifies
    that the U-sum lands in the torus.
    """
    h = np.zeros(s.dim)
    n_slice = slice(s.dim_a, s.dim)
    for i in range(s.dim_a):
        h[i] = np.trace(s.c[i, n_slice, n_slice])
    return h


def _check_mean_curvature(s: MetricSolvLieAlgebra) -> np.ndarray:
    h0 = mean_curvature(s)
    ht = mean_curvature_trace(s)
    if np.abs(h0 - ht).max() > H0_CROSSCHECK_TOL:
        raise InternalError(
            "mean-curvature cross-check failed: U-sum and trace "
            f"characterization differ by {np.abs(h0 - ht).max():.3e}"
        )
    return h0


def ricci_full(s: MetricSolvLieAlgebra) -> np.ndarray:
    """Ricci form from the four-term orthonormal-basis formula."""
    c = s.c
    h0 = mean_curvature(s)
    term1 = -0.5 * np.einsum("aik,bik->ab", c, c)
    term2 = -0.5 * killing_form_s(s)
    term3 = 0.25 * np.einsum("ija,ijb->ab", c, c)
    u = 0.5 * (np.einsum("kab->abk", c) + np.einsum("kba->abk", c))
    term4 = -np.einsum("abk,k->ab", u, h0)
    ric = term1 + term2 + term3 + term4
    return 0.5 * (ric + ric.T)


def nilradical_ricci(s: MetricSolvLieAlgebra) -> np.ndarray:
    """Intrinsic Ricci form of the nilradical (two-sum nilpotent formula)."""
    n = slice(s.dim_a, s.dim)
    cn = s.c[n, n, n]
    return -0.5 * np.einsum("aik,bik->ab", cn, cn) + 0.25 * np.einsum(
        "ija,ijb->ab", cn, cn
    )


def ricci_wolter(s: MetricSolvLieAlgebra) -> np.ndarray:
    """Blockwise Ricci for algebras in standard solvable form.

    Torus block -tr(ad A . ad A'), mixed block zero, nilradical block the
    intrinsic nilpotent Ricci minus <[H_0, X], Y>.
    """
    rep = verify_iwasawa(s)
    if not rep.passed:
        raise NotIwasawaError(f"input is not in standard solvable form: {rep.failures}")
    h0 = _check_mean_curvature(s)
    na, dim = s.dim_a, s.dim
    ric = np.zeros((dim, dim))
    b = killing_form_s(s)
    ric[:na, :na] = -b[:na, :na]
    adh = np.einsum("m,mbk->bk", h0[:na], s.c[:na, na:, na:])
    ric_n = nilradical_ricci(s) - adh
    ric[na:, na:] = 0.5 * (ric_n + ric_n.T)
    return ric


class EinsteinResult(NamedTuple):
    constant: float
    deviation: float
    passed: bool


def einstein_check(s: MetricSolvLieAlgebra, tol: float = 1e-9) -> EinsteinResult:
    """Least-squares Einstein constant and the max-norm deviation from c*I."""
    ric = ricci_full(s)
    c = float(np.trace(ric) / s.dim)
    dev = float(np.abs(ric - c * np.eye(s.dim)).max())
    return EinsteinResult(c, dev, bool(dev < tol))


# ---------------------------------------------------------------------------
# plane search
# ---------------------------------------------------------------------------


@dataclass
class PlaneSearchResult:
    found: tuple[np.ndarray, np.ndarray, float] | None
    max_k: float
    planes_checked: int
    description: str = ""


def paper_preset_plane(s: MetricSolvLieAlgebra):
    """The family's documented positive-curvature plane, as (x, y, note).

    Defined on the associated algebras; the same coefficient vectors are
    meaningful on the symmetric parent and its attached subalgebras, where
    the curvature comes out nonpositive.
    """
    fam = s.rs.family
    inv = 1.0 / np.sqrt(2.0)
    if fam in ("orthogonal", "unitary", "symplectic"):
        p, q = s.rs.params
        if q - p < 2 or p < 2:
            raise ParamError("the preset plane needs q - p >= 2 and p >= 2")
        # the first unflagged and first flagged column of the short-root
        # blocks; without flags, split position 1
        rows = (p - 1, p)
        cols = None
        if s.flags:
            block = [
                lab for lab in s.labels
                if lab.startswith(f"n[w{p}]:U")
            ]
            unflagged = [lab for lab in block if not s.flags.get(lab, 0)]
            flagged = [lab for lab in block if s.flags.get(lab, 0)]
            if unflagged and flagged:
                cols = (unflagged[0].split("U", 1)[1], flagged[0].split("U", 1)[1])
                cols = tuple(int(cstr[len(str(p)):]) for cstr in cols)
        if cols is None:
            cols = (2 * p + 1, 2 * p + 2)
        x = s.vector({f"U{rows[0]}{cols[0]}": inv, f"U{rows[0]}{cols[1]}": inv})
        y = s.vector({f"U{rows[1]}{cols[0]}": inv, f"U{rows[1]}{cols[1]}": inv})
        note = (
            f"(U{rows[0]}{cols[0]}+U{rows[0]}{cols[1]})/sqrt2, "
            f"(U{rows[1]}{cols[0]}+U{rows[1]}{cols[1]})/sqrt2"
        )
    elif fam == "so_star":
        m = s.rs.rank
        if m < 3:
            raise ParamError("the preset plane needs rank >= 3")
        x = s.vector({"A12-": inv, "B12-": inv})
        y = s.vector({"C23-": inv, "D23-": inv})
        note = "(A12-+B12-)/sqrt2, (C23-+D23-)/sqrt2"
    else:
        (n,) = s.rs.params
        if n < 3:
            raise ParamError("the preset plane needs n >= 3")
        x = s.vector({"A12": inv, "B12": inv})
        y = s.vector({"C23": inv, "D23": inv})
        note = "(A12+B12)/sqrt2, (C23+D23)/sqrt2"
    return x, y, note


def find_positive_plane(
    s: MetricSolvLieAlgebra,
    strategy: str = "basis_pairs",
    samples: int = 10000,
    seed: int = 0,
    tol: float = 1e-9,
) -> PlaneSearchResult:
    """Search for a 2-plane of positive sectional curvature.

    `paper_preset` evaluates the family's documented plane; `basis_pairs`
    scans all coordinate planes; `random` adds seeded uniform sampling on
    the nilradical sphere.  Absence of a positive plane is evidence only
    and is reported through the maximum value observed.
    """
    max_k = -np.inf
    found = None
    checked = 0

    def consider(x, y, kval):
        nonlocal max_k, found, checked
        checked += 1
        if kval > max_k:
            max_k = kval
        if found is None and kval > tol:
            found = (x, y, kval)

    if strategy == "paper_preset":
        x, y, note = paper_preset_plane(s)
        k = sectional(s, x, y)
        consider(x, y, k)
        return PlaneSearchResult(found, float(max_k), checked, note)
    if strategy not in ("basis_pairs", "random"):
        raise ParamError(f"unknown strategy {strategy!r}")

    for i in range(s.dim):
        for j in range(i + 1, s.dim):
            x = np.zeros(s.dim)
            y = np.zeros(s.dim)
            x[i], y[j] = 1.0, 1.0
            consider(x, y, sectional(s, x, y))
    if strategy == "random":
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            v = rng.standard_normal((2, s.dim_n))
            x = np.zeros(s.dim)
            y = np.zeros(s.dim)
            x[s.dim_a:] = v[0]
            y[s.dim_a:] = v[1]
            consider(x, y, sectional(s, x, y))
    return PlaneSearchResult(found, float(max_k), checked, strategy)


# ---------------------------------------------------------------------------
# invariants and reports
# ---------------------------------------------------------------------------


def _series_dims(cn: np.ndarray, kind: str) -> tuple[int, ...]:
    """Dimensions of the lower-central or derived series of the nilradical.

    Spans are tracked as orthonormal column bases; ranks come from singular
    values, which is safe here because genuine structure constants are far
    from the rank tolerance.
    """
    nn = cn.shape[0]
    if nn == 0:
        return (0,)
    current = np.eye(nn)
    dims = [nn]
    while dims[-1] > 0:
        lhs = current if kind == "derived" else np.eye(nn)
        prods = np.einsum("ai,bj,abk->ijk", lhs, current, cn).reshape(-1, nn)
        svals = np.linalg.svd(prods, compute_uv=False)
        cutoff = _RANK_TOL * max(1.0, float(svals[0]) if svals.size else 1.0)
        rank = int(np.sum(svals > cutoff))
        dims.append(rank)
        if rank == 0:
            break
        _, _, vt = np.linalg.svd(prods)
        current = vt[:rank].T
    return tuple(dims)


def _basis_pair_extremes(s: MetricSolvLieAlgebra):
    """(min_k, min_pair, max_k, max_pair) over all coordinate 2-planes."""
    best = (-np.inf, "")
    worst = (np.inf, "")
    for i in range(s.dim):
        x = np.zeros(s.dim)
        x[i] = 1.0
        for j in range(i + 1, s.dim):
            y = np.zeros(s.dim)
            y[j] = 1.0
            k = sectional(s, x, y)
            pair = f"{s.labels[i]}|{s.labels[j]}"
            if k > best[0]:
                best = (k, pair)
            if k < worst[0]:
                worst = (k, pair)
    return worst[0], worst[1], best[0], best[1]


@dataclass
class Fingerprint:
    """Numerical isometry-invariant summary of a metric solvable algebra."""

    einstein_constant: float
    dim_a: int
    dim_n: int
    nilpotency_class: int
    derived_dims: tuple[int, ...]
    h0_spectrum: tuple[float, ...]
    min_basis_k: float
    max_basis_k: float

    def to_jsonable(self) -> dict:
        return {
            "einstein_constant": self.einstein_constant,
            "dim_a": self.dim_a,
            "dim_n": self.dim_n,
            "nilpotency_class": self.nilpotency_class,
            "derived_dims": list(self.derived_dims),
            "h0_spectrum": list(self.h0_spectrum),
            "min_basis_k": self.min_basis_k,
            "max_basis_k": self.max_basis_k,
        }


def fingerprint(s: MetricSolvLieAlgebra) -> Fingerprint:
    """Deterministic invariant record, stable under root-block relabeling."""
    n = slice(s.dim_a, s.dim)
    cn = s.c[n, n, n]
    lower = _series_dims(cn, "lower")
    derived = _series_dims(cn, "derived")

    h0 = mean_curvature(s)
    adh = np.einsum("m,mbk->bk", h0[: s.dim_a], s.c[: s.dim_a, n, n])
    spectrum = np.sort(np.linalg.eigvalsh(0.5 * (adh + adh.T))) if s.dim_n else np.zeros(0)
    spectrum = tuple(float(v) for v in np.round(spectrum, 6) + 0.0)

    if s.dim >= 2:
        min_k, _, max_k, _ = _basis_pair_extremes(s)
    else:
        min_k = max_k = 0.0
    ein = einstein_check(s)
    return Fingerprint(
        einstein_constant=float(np.round(ein.constant, 9) + 0.0),
        dim_a=s.dim_a,
        dim_n=s.dim_n,
        nilpotency_class=sum(1 for d in lower if d > 0),
        derived_dims=derived,
        h0_spectrum=spectrum,
        min_basis_k=float(np.round(min_k, 9) + 0.0),
        max_basis_k=float(np.round(max_k, 9) + 0.0),
    )


@dataclass
class CurvatureReport:
    """Everything the Einstein certification needs, in one record."""

    ricci: np.ndarray
    einstein_constant: float
    deviation: float
    passed: bool
    tolerance: float
    mean_curvature: np.ndarray
    sampled_planes: list[tuple[str, float]]
    fingerprint: Fingerprint

    def to_jsonable(self) -> dict:
        return {
            "einstein_constant": self.einstein_constant,
            "deviation": self.deviation,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "mean_curvature": [float(v) for v in self.mean_curvature],
            "sampled_planes": [[lab, float(k)] for lab, k in self.sampled_planes],
            "fingerprint": self.fingerprint.to_jsonable(),
            "ricci": [[float(v) for v in row] for row in self.ricci],
        }


def curvature_report(
    s: MetricSolvLieAlgebra,
    tol: float = 1e-9,
    samples: int = 0,
    seed: int = 0,
) -> CurvatureReport:
    """Assemble the full certification record for one algebra.

    The Ricci form is the four-term formula; the blockwise route and the
    mean-curvature cross-check are enforced here, so a report is only ever
    produced when the independent implementations agree.
    """
    _check_mean_curvature(s)
    ric = ricci_full(s)
    ric_w = ricci_wolter(s)
    gap = float(np.abs(ric - ric_w).max())
    if gap > 1e-8:
        raise InternalError(f"Ricci implementations disagree by {gap:.3e}")
    c = float(np.trace(ric) / s.dim)
    dev = float(np.abs(ric - c * np.eye(s.dim)).max())

    planes: list[tuple[str, float]] = []
    if s.dim >= 2:
        min_k, min_pair, max_k, max_pair = _basis_pair_extremes(s)
        planes.append((min_pair, min_k))
        planes.append((max_pair, max_k))
    if samples > 0:
        rng = np.random.default_rng(seed)
        for t in range(samples):
            v = rng.standard_normal((2, s.dim_n))
            x = np.zeros(s.dim)
            y = np.zeros(s.dim)
            x[s.dim_a:] = v[0]
            y[s.dim_a:] = v[1]
            planes.append((f"random[{t}]", sectional(s, x, y)))

    return CurvatureReport(
        ricci=ric,
        einstein_constant=c,
        deviation=dev,
        passed=bool(dev < tol),
        tolerance=tol,
        mean_curvature=mean_curvature(s),
        sampled_planes=planes,
        fingerprint=fingerprint(s),
    )
