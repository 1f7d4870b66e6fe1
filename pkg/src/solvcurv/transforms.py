"""The two algebra-to-algebra constructions: attach and associate.

Attach restricts to the subalgebra spanned by the supported dual-basis
vectors and the positive-level root spaces of a characteristic grading;
the inner product is inherited (the torus part is re-orthonormalized and
the change of basis recorded in the provenance).  Associate multiplies a
parity-closed set of nilradical vectors by sqrt(-1) inside the
complexification, which on structure constants is a pure sign twist.
Both are pure functions; applied in either order they commute.
"""

from __future__ import annotations

import numpy as np

from .algebra import BasisSet, StructureTensor, extract_structure_constants
from .builders import AmbientRealization, MetricSolvLieAlgebra, SignFlagAssignment
from .errors import ClosureViolation, ParamError, ParityError
from .roots import CharacteristicElement, grade_levels, lambda_prime

_LEVEL_TOL = 1e-10


def attach(s: MetricSolvLieAlgebra, z: CharacteristicElement) -> MetricSolvLieAlgebra:
    """Restrict s to the span of the supported dual vectors and positive levels.

    Keeps exactly the nilradical root spaces with alpha(Z) > 0 and the
    torus directions H^i with i in the support of Z; verifies that nothing
    retained brackets into the dropped complement, then rewrites the
    structure tensor in the re-orthonormalized basis.
    """
    levels = grade_levels(s.rs, z)
    if len(z.support) == s.rs.rank:
        # full support: nothing is dropped and the subalgebra is s itself
        return MetricSolvLieAlgebra(
            labels=s.labels,
            dim_a=s.dim_a,
            dim_n=s.dim_n,
            structure=s.structure,
            rs=s.rs,
            n_roots=s.n_roots,
            a_omega=s.a_omega,
            flags=dict(s.flags) if s.flags is not None else None,
            provenance=s.with_provenance("attach (full support, identity)"),
        )
    keep_n = [j for j, r in enumerate(s.n_roots) if levels[r.coords] > 0]
    drop = [
        s.dim_a + j for j, r in enumerate(s.n_roots) if levels[r.coords] == 0
    ]

    c = s.c
    keep_abs = [s.dim_a + j for j in keep_n]
    if drop:
        sub = c[np.ix_(keep_abs, keep_abs)][:, :, drop]
        if sub.size and np.abs(sub).max() > _LEVEL_TOL:
            i, j, k = np.unravel_index(int(np.argmax(np.abs(sub))), sub.shape)
            raise ClosureViolation(
                (s.labels[keep_abs[i]], s.labels[keep_abs[j]]), float(sub[i, j, k])
            )

    # dual vectors of the support, expressed in the current torus basis
    support = z.support
    targets = np.array(
        [[float(v) for v in s.rs.dual_basis[i - 1]] for i in support]
    )  # (k, coord_dim)
    coeffs, *_ = np.linalg.lstsq(s.a_omega.T, targets.T, rcond=None)
    if np.abs(s.a_omega.T @ coeffs - targets.T).max() > 1e-9:
        raise ParamError(
            "characteristic element is not supported on this torus "
            "(its dual vectors leave the retained span)"
        )
    q, r = np.linalg.qr(coeffs)  # Gram-Schmidt in the listed support order
    q = q * np.sign(np.diag(r))[None, :]  # orient along the H^i order

    dim_new = len(support) + len(keep_n)
    basis = np.zeros((s.dim, dim_new))
    basis[: s.dim_a, : len(support)] = q
    for t, j in enumerate(keep_abs):
        basis[j, len(support) + t] = 1.0

    c_new = np.einsum("ai,bj,abm,mk->ijk", basis, basis, c, basis, optimize=True)
    c_new = 0.5 * (c_new - np.swapaxes(c_new, 0, 1))

    a_labels = tuple(f"a[{t}]:gsH{i}" for t, i in enumerate(support, 1))
    n_labels = tuple(s.labels[j] for j in keep_abs)
    flags = None
    if s.flags is not None:
        flags = {lab: s.flags.get(lab, 0) for lab in n_labels}
    lp = ",".join(r.label for r in lambda_prime(s.rs, z)) or "(empty)"
    zdesc = ",".join(f"{i}:{z.coefficient(i)}" for i in support)
    return MetricSolvLieAlgebra(
        labels=a_labels + n_labels,
        dim_a=len(support),
        dim_n=len(keep_n),
        structure=StructureTensor(c_new),
        rs=s.rs,
        n_roots=tuple(s.n_roots[j] for j in keep_n),
        a_omega=q.T @ s.a_omega,
        flags=flags,
        provenance=s.with_provenance(f"attach z=[{zdesc}] lambda_prime=[{lp}]"),
    )


def validate_flags(s: MetricSolvLieAlgebra, flags: SignFlagAssignment) -> np.ndarray:
    """Check the parity condition against every nonzero structure constant.

    Returns the per-index flag vector (torus entries are implicitly zero).
    Raises ParityError on the first bracket whose flags do not close.
    """
    table = flags.as_dict()
    f = np.zeros(s.dim, dtype=int)
    for j in range(s.dim_a, s.dim):
        lab = s.labels[j]
        if lab not in table:
            raise ParityError(lab, f"no flag given for {lab!r}")
        f[j] = 1 if table[lab] else 0
    nz = np.abs(s.c) > 0
    ii, jj, kk = np.nonzero(nz)
    bad = (f[ii] + f[jj] - f[kk]) % 2 != 0
    if np.any(bad):
        t = int(np.argmax(bad))
        triple = (s.labels[ii[t]], s.labels[jj[t]], s.labels[kk[t]])
        raise ParityError(triple)
    return f


def associate(s: MetricSolvLieAlgebra, flags: SignFlagAssignment) -> MetricSolvLieAlgebra:
    """Sign-twist the structure constants by the flag parity.

    Each flagged basis vector is replaced by sqrt(-1) times itself in the
    complexified algebra; a bracket entry changes sign exactly when both
    inputs are flagged and the output is not.  Labels, roots and the inner
    product are untouched.
    """
    f = validate_flags(s, flags)
    sign = np.where(
        (f[:, None, None] + f[None, :, None] - f[None, None, :]) == 2, -1.0, 1.0
    )
    c_new = s.c * sign
    table = flags.as_dict()
    old = s.flags or {}
    new_flags = {
        lab: (old.get(lab, 0) + table.get(lab, 0)) % 2
        for lab in s.labels[s.dim_a :]
    }
    desc = flags.description or f"{len(flags.flagged_labels())} labels"
    return MetricSolvLieAlgebra(
        labels=s.labels,
        dim_a=s.dim_a,
        dim_n=s.dim_n,
        structure=StructureTensor(c_new),
        rs=s.rs,
        n_roots=s.n_roots,
        a_omega=s.a_omega,
        flags=new_flags,
        provenance=s.with_provenance(f"associate {desc}"),
    )


def restrict_flags(
    s_attached: MetricSolvLieAlgebra, flags: SignFlagAssignment
) -> SignFlagAssignment:
    """Drop flag entries whose labels did not survive an attach."""
    table = flags.as_dict()
    kept = {
        lab: table[lab]
        for lab in s_attached.labels[s_attached.dim_a :]
        if lab in table
    }
    return SignFlagAssignment.from_dict(kept, description=flags.description)


def commute_check(
    s: MetricSolvLieAlgebra, z: CharacteristicElement, flags: SignFlagAssignment
) -> tuple[bool, float]:
    """Compare associate-then-attach against attach-then-associate.

    Returns (equal, max entrywise discrepancy); label sequences must agree
    exactly and the two structure tensors are compared entry by entry.
    """
    route_a = attach(associate(s, flags), z)
    first = attach(s, z)
    route_b = associate(first, restrict_flags(first, flags))
    if route_a.labels != route_b.labels:
        return False, float("inf")
    disc = float(np.abs(route_a.c - route_b.c).max())
    return disc == 0.0, disc


def associate_via_ambient(
    s: MetricSolvLieAlgebra,
    realization: AmbientRealization,
    flags: SignFlagAssignment,
) -> StructureTensor:
    """Oracle for `associate`: multiply flagged matrices by sqrt(-1) honestly.

    The complexification of the ambient realization is modeled by doubling:
    a real matrix X becomes [[X, 0], [0, X]] and sqrt(-1) X becomes
    [[0, -X], [X, 0]].  Structure constants of the doubled basis are then
    extracted from scratch and must match the sign-rule result entrywise.
    """
    f = validate_flags(s, flags)
    d = realization.basis.dim
    mats = []
    for i, lab in enumerate(s.labels):
        x = realization.basis[lab]
        big = np.zeros((2 * d, 2 * d))
        if f[i]:
            big[:d, d:] = -x
            big[d:, :d] = x
        else:
            big[:d, :d] = x
            big[d:, d:] = x
        mats.append(big)
    doubled = BasisSet(list(s.labels), np.array(mats))
    return extract_structure_constants(doubled)
