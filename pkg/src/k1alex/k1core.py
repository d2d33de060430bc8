"""Relation matrices over the Novikov ring and their noncommutative elimination.

The matrix attached to a meridian presentation and a representation has
entries

    A[j][i] = tau * rho(dy_j/dx_i) - rho(dz_j/dx_i)

(rows are relations, columns are generators).  Elimination pivots on entries
whose leading coefficient is a unit of Q[H], clears with elementary row
operations, and collects the pivots: their ordered product, normalized by
tau^{-g}, represents the determinant class of the matrix in the abelianized
unit group.  The representative is ambiguous up to a unit monomial
(u tau^k, u a unit of Q[H]) and coefficient-wise twisting; the canonical
content is the Witt part together with its projected logarithms and the
commutative determinant computed in :mod:`k1alex.upsilon`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .grouprings import GroupAlgebraElem, GroupError, MetaRep, gr_is_unit
from .novikov import (
    DEFAULT_PRECISION,
    LogClass,
    NovikovSeries,
    WittVector,
    ns_invert,
    ns_log,
    witt_normalize,
)
from .presentation import MeridianPresentation, validate_rep
from .words import FreeRingElem, fox_derivative


class NovikovMatrix:
    """Square grid of Novikov series sharing one twisting automorphism."""

    __slots__ = ("entries", "kappa", "size", "genus")

    def __init__(self, entries: Sequence[Sequence[NovikovSeries]],
                 genus: int | None = None):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("matrix must be square")
        kappa = entries[0][0].kappa
        for row in entries:
            for e in row:
                if e.kappa != kappa:
                    raise GroupError("entries use different twisting automorphisms")
        self.entries = [list(row) for row in entries]
        self.kappa = kappa
        self.size = n
        if genus is None:
            if n % 2:
                raise ValueError("matrix size must be 2g; pass genus explicitly")
            genus = n // 2
        self.genus = genus

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def copy_entries(self):
        return [row[:] for row in self.entries]


@dataclass(frozen=True)
class PivotStep:
    """One elimination stage, kept for audit."""

    stage: int
    row: int
    col: int
    lead_degree: int
    support_len: int
    witt_type: bool  # leading coefficient sits at tau-degree 0


@dataclass
class K1Report:
    """Outcome of eliminating a Novikov matrix.

    ``delta`` is tau^{-g} times the ordered pivot product; when the verdict
    is "yes" it factors as unit_part * tau^degree * witt and the projected
    logarithms of the Witt part are filled in.
    """

    invertible: str  # "yes" | "no" | "indeterminate"
    precision: int
    diagonal: list[NovikovSeries] = field(default_factory=list)
    pivot_trace: list[PivotStep] = field(default_factory=list)
    swaps: int = 0
    delta: Optional[NovikovSeries] = None
    unit_part: Optional[GroupAlgebraElem] = None
    degree: Optional[int] = None
    witt: Optional[WittVector] = None
    logs: Optional[LogClass] = None
    note: str = ""

    def witt_pivots_only(self) -> bool:
        return all(s.witt_type for s in self.pivot_trace)


def rep_image(rep: MetaRep, elem: FreeRingElem) -> GroupAlgebraElem:
    """Push a free-group-ring element through the representation into Q[H]."""
    g = rep.group
    out: dict = {}
    for w, c in elem.terms.items():
        e = rep.image_of_exponents([w.exponent_sum(i + 1) for i in range(rep.rank)])
        out[e] = out.get(e, 0) + c
    return GroupAlgebraElem(g, out)


def build_fox_matrix(p: MeridianPresentation, rep: MetaRep,
                     precision: int = DEFAULT_PRECISION) -> NovikovMatrix:
    """Assemble A[j][i] = tau * rho(dy_j/dx_i) - rho(dz_j/dx_i).

    The representation must be compatible with the presentation; entries are
    Laurent polynomials supported in tau-degrees {0, 1}, embedded with the
    requested knowledge window.
    """
    violation = validate_rep(p, rep)
    if violation is not None:
        raise GroupError(f"representation invalid for presentation: {violation}")
    kappa = rep.kappa
    n = p.rank
    rows = []
    for j in range(n):
        row = []
        for i in range(n):
            dy = rep_image(rep, fox_derivative(p.y[j], i + 1))
            dz = rep_image(rep, fox_derivative(p.z[j], i + 1))
            terms = {}
            if not dy.is_zero():
                terms[1] = dy.apply_aut(kappa)  # tau * a = kappa(a) tau
            if not dz.is_zero():
                terms[0] = -dz
            row.append(NovikovSeries.from_map(kappa, terms, precision))
        rows.append(row)
    return NovikovMatrix(rows, genus=p.genus)


def _pivot_candidate(entry: NovikovSeries):
    """(lead degree, stored support length) if the entry is pivot-admissible."""
    if entry.is_zero():
        return None
    deg, lead = entry.leading()
    if not gr_is_unit(lead):
        return None
    return deg, len(entry.support())


def eliminate(mx: NovikovMatrix,
              certify_singular: Callable[[NovikovMatrix], bool] | None = None
              ) -> K1Report:
    """Diagonalize by unit-leading pivots and elementary row operations.

    Pivot choice is deterministic: minimal leading tau-degree first, then
    fewest stored coefficients (monomial-like entries keep the elimination
    exact), then row-major position.  Rows below the pivot are cleared by
    elementary operations, which vanish in the abelianized determinant, so
    the ordered pivot product times tau^{-g} represents the class of the
    matrix.

    If at some stage no entry has a unit leading coefficient the verdict is
    "indeterminate" -- a unit of the Novikov ring over a ring with nontrivial
    idempotents can hide behind a non-unit leading coefficient.  A definite
    "no" needs the remaining block to vanish on the whole window and an
    exact external singularity certificate.
    """
    n = mx.size
    M = mx.copy_entries()
    kappa = mx.kappa
    trace: list[PivotStep] = []
    swaps = 0
    # knowledge length measured from degree 0 (zero entries know everything
    # below their top, so their min_deg does not shrink the window)
    precision = min(e.top - min(e.min_deg, 0) if not e.is_zero() else e.top
                    for row in M for e in row)

    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                cand = _pivot_candidate(M[i][j])
                if cand is None:
                    continue
                key = (cand[0], cand[1], i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            rest_zero = all(M[i][j].is_zero() for i in range(k, n) for j in range(k, n))
            if rest_zero and certify_singular and certify_singular(mx):
                return K1Report("no", precision, pivot_trace=trace, swaps=swaps,
                                note="no admissible pivot; remaining block zero "
                                     "on the window and certified singular")
            return K1Report("indeterminate", precision, pivot_trace=trace, swaps=swaps,
                            note="no admissible pivot at stage %d" % k)
        (key, bi, bj) = best
        if bi != k:
            M[bi], M[k] = M[k], M[bi]
            swaps += 1
        if bj != k:
            for row in M:
                row[bj], row[k] = row[k], row[bj]
            swaps += 1
        pivot = M[k][k]
        deg, _lead = pivot.leading()
        trace.append(PivotStep(k, bi, bj, deg, len(pivot.support()), deg == 0))
        if k + 1 < n:
            pinv = ns_invert(pivot)
            for i in range(k + 1, n):
                if M[i][k].is_zero():
                    continue
                factor = M[i][k] * pinv
                for j in range(k, n):
                    M[i][j] = M[i][j] - factor * M[k][j]

    diagonal = [M[k][k] for k in range(n)]
    product = NovikovSeries.one(kappa, precision)
    for d in diagonal:
        product = product * d
    delta = product.shift(-mx.genus)
    unit_part, degree, witt = witt_normalize(delta)
    logs = ns_log(witt)
    return K1Report("yes", precision, diagonal=diagonal, pivot_trace=trace,
                    swaps=swaps, delta=delta, unit_part=unit_part,
                    degree=degree, witt=witt, logs=logs,
                    note=f"delta = tau^-{mx.genus} * (ordered pivot product); "
                         f"{swaps} swaps absorbed into the unit ambiguity")


def _upsilon_certifier(mx: NovikovMatrix) -> bool:
    """True when the commutative determinant certifies singularity exactly."""
    from .upsilon import det_commutative, is_unit_laurent, upsilon_matrix
    period = mx.kappa.order
    det = det_commutative(upsilon_matrix(mx, period))
    return not is_unit_laurent(det)


def k1_invariant(p: MeridianPresentation, rep: MetaRep,
                 precision: int = DEFAULT_PRECISION) -> K1Report:
    """Full pipeline: build the relation matrix, eliminate, normalize.

    The report carries the Witt-normalized representative of the determinant
    class and its projected logarithms.  Indeterminate eliminations consult
    the exact commutative determinant for a singularity certificate.
    """
    mx = build_fox_matrix(p, rep, precision)
    return eliminate(mx, certify_singular=_upsilon_certifier)


@dataclass(frozen=True)
class ObstructionReport:
    """Per-representation invertibility verdicts for the fiberedness test."""

    verdicts: tuple[str, ...]  # "invertible" | "not-invertible" | "indeterminate"
    summary: str

    @property
    def certified_nonfibered(self) -> bool:
        return "not-invertible" in self.verdicts


def fibered_obstruction(p: MeridianPresentation, reps: Sequence[MetaRep],
                        precision: int = DEFAULT_PRECISION) -> ObstructionReport:
    """Invertibility of the relation matrix over each representation.

    Any definite "not-invertible" certifies the knot is not fibered.  All
    invertible verdicts are merely consistent with fiberedness: the converse
    would require every representation, so the summary never claims
    "fibered".  Indeterminate eliminations are upgraded to a definite
    "not-invertible" when the exact commutative determinant vanishes as a
    zero divisor.
    """
    verdicts = []
    for rep in reps:
        mx = build_fox_matrix(p, rep, precision)
        report = eliminate(mx, certify_singular=_upsilon_certifier)
        if report.invertible == "yes":
            verdicts.append("invertible")
        elif report.invertible == "no":
            verdicts.append("not-invertible")
        else:
            verdicts.append("not-invertible" if _upsilon_certifier(mx)
                            else "indeterminate")
    if "not-invertible" in verdicts:
        summary = "non-fibered certified"
    elif all(v == "invertible" for v in verdicts):
        summary = "no obstruction found: consistent-with-fibered"
    else:
        summary = "inconclusive"
    return ObstructionReport(tuple(verdicts), summary)
