"""Verifiers for the intertwining condition A(BA)^2 = ABACA = ACABA = (AC)^2A.

Given A: X -> Y and B, C: Y -> X satisfying the condition, the products AC
and BA share their spectral invariant sequences away from 0. This module
checks that mechanically on concrete rational triples: the four power/kernel
inclusion statements, the three quotient maps carried by ACA (between range
chains, kernel chains, and mixed sum chains of BA - lambda and AC - lambda),
the resulting sequence equalities, the pointwise regularity-spectrum
agreement, the nonzero characteristic-polynomial match, and the binomial
shift operators B_n, C_n with (I-BA)^n = I - B_nA and (I-AC)^n = I - AC_n.

Nonzero lambda is handled by pre-scaling A by 1/lambda: the condition is
homogeneous of degree 3 in A, and the kernel/range chains of (BA - lambda)
coincide with those of (BA/lambda - I), so every lemma stated at 1 applies
verbatim to the scaled triple.

The closedness statements of the general theory (R(T-lambda) + N((T-lambda)^n)
closed on one side iff on the other) trivialize here, every subspace of a
finite-dimensional space being closed; the subspaces themselves are still
materialized, as the sum chains of the mixed quotient maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from ratspec.invariants import profile, rational_eigenvalues, sigma_memberships
from ratspec.ratmat import (Mat, Poly, Subspace, charpoly, image, kernel,
                            map_subspace, poly_eval_mat, preimage, rank, rat,
                            solve)


class ConditionNotSatisfied(ValueError):
    """Raised when an operation requires the intertwining condition."""


class OperatorTriple:
    """(A, B, C) with A: X -> Y and B, C: Y -> X, products precomputed.

    The condition flag is evaluated once at construction and cached; all
    attributes are treated as immutable.
    """

    __slots__ = ("A", "B", "C", "dim_x", "dim_y",
                 "ba", "ac", "ab", "ca", "aba", "aca", "condition_holds")

    def __init__(self, A: Mat, B: Mat, C: Mat):
        if B.rows != C.rows or B.cols != C.cols:
            raise ValueError("B and C must have the same shape")
        if A.rows != B.cols or A.cols != B.rows:
            raise ValueError("A must map X -> Y with B, C: Y -> X")
        self.A = A
        self.B = B
        self.C = C
        self.dim_x = A.cols
        self.dim_y = A.rows
        self.ba = B @ A
        self.ac = A @ C
        self.ab = A @ B
        self.ca = C @ A
        self.aba = A @ self.ba
        self.aca = A @ self.ca
        r = _condition_residuals(self)
        self.condition_holds = all(m.is_zero() for m in r)

    def __repr__(self) -> str:
        return (f"OperatorTriple(dim_x={self.dim_x}, dim_y={self.dim_y}, "
                f"condition={'holds' if self.condition_holds else 'fails'})")


def _condition_residuals(t: OperatorTriple) -> tuple[Mat, Mat, Mat]:
    p1 = t.aba @ t.ba     # A(BA)^2
    p2 = t.aba @ t.ca     # ABACA
    p3 = t.aca @ t.ba     # ACABA
    p4 = t.aca @ t.ca     # (AC)^2 A
    return (p1 - p2, p2 - p3, p3 - p4)


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    residuals: tuple[Mat, Mat, Mat]


def check_condition(t: OperatorTriple) -> ConditionReport:
    """Residuals of the three chained equalities; holds iff all are zero."""
    res = _condition_residuals(t)
    return ConditionReport(holds=all(m.is_zero() for m in res), residuals=res)


def _require_condition(t: OperatorTriple) -> None:
    if not t.condition_holds:
        raise ConditionNotSatisfied("triple does not satisfy the intertwining condition")


def scaled(t: OperatorTriple, lam: int | Fraction) -> OperatorTriple:
    """The triple (A/lam, B, C); lam must be nonzero.

    The condition is preserved (every product is homogeneous of degree 3 in
    A) and the chains of (BA - lam) equal those of (B(A/lam) - 1).
    """
    lam = rat(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    return OperatorTriple(t.A.scaled(1 / lam), t.B, t.C)


def power_identity(t: OperatorTriple, k: int) -> bool:
    """ABA(CA-I)^k = (AB-I)^k ABA and ACA(BA-I)^k = (AC-I)^k ACA, exactly."""
    _require_condition(t)
    ca_shift = t.ca.shifted(1)
    ab_shift = t.ab.shifted(1)
    ba_shift = t.ba.shifted(1)
    ac_shift = t.ac.shifted(1)
    left = t.aba @ ca_shift ** k == ab_shift ** k @ t.aba
    right = t.aca @ ba_shift ** k == ac_shift ** k @ t.aca
    return left and right


@dataclass(frozen=True)
class InclusionReport:
    """The four inclusion-lemma statements for one polynomial Q."""

    aba_range: bool   # ABA.R(Q(CA-I)) <= R(Q(AB-I))
    aba_kernel: bool  # ABA.N(Q(CA-I)) <= N(Q(AB-I))
    aca_range: bool   # ACA.R(Q(BA-I)) <= R(Q(AC-I))
    aca_kernel: bool  # ACA.N(Q(BA-I)) <= N(Q(AC-I))

    @property
    def all_hold(self) -> bool:
        return self.aba_range and self.aba_kernel and self.aca_range and self.aca_kernel


def inclusion_lemma(t: OperatorTriple, Q: Poly) -> InclusionReport:
    """Check all four subspace inclusions for the polynomial Q."""
    _require_condition(t)
    q_ca = poly_eval_mat(Q, t.ca.shifted(1))
    q_ab = poly_eval_mat(Q, t.ab.shifted(1))
    q_ba = poly_eval_mat(Q, t.ba.shifted(1))
    q_ac = poly_eval_mat(Q, t.ac.shifted(1))
    return InclusionReport(
        aba_range=image(q_ab).contains(map_subspace(t.aba, image(q_ca))),
        aba_kernel=kernel(q_ab).contains(map_subspace(t.aba, kernel(q_ca))),
        aca_range=image(q_ac).contains(map_subspace(t.aca, image(q_ba))),
        aca_kernel=kernel(q_ac).contains(map_subspace(t.aca, kernel(q_ba))),
    )


@dataclass(frozen=True)
class QuotientMap:
    """A linear map between quotients, materialized in quotient coordinates.

    The carrier acts on representatives: source_big/source_small ->
    target_big/target_small, x + source_small |-> carrier x + target_small.
    matrix holds the action on a representative basis expressed in target
    quotient coordinates (None when the map is not well defined). Injectivity
    is decidable two independent ways: by the rank of matrix, and by the
    subspace predicate preimage(carrier, target_small) cap source_big <=
    source_small; both are exposed so tests can compare them.
    """

    source_big: Subspace
    source_small: Subspace
    target_big: Subspace
    target_small: Subspace
    carrier: Mat
    well_defined: bool
    matrix: Mat | None

    @property
    def source_dim(self) -> int:
        return self.source_big.dim - self.source_small.dim

    @property
    def target_dim(self) -> int:
        return self.target_big.dim - self.target_small.dim

    def injective_by_rank(self) -> bool:
        if self.matrix is None:
            raise ArithmeticError("map is not well defined")
        return rank(self.matrix) == self.source_dim

    def injective_by_preimage(self) -> bool:
        pulled = preimage(self.carrier, self.target_small).intersect(self.source_big)
        return self.source_small.contains(pulled)


def _extend_basis(small: Subspace, big: Subspace) -> list[tuple[Fraction, ...]]:
    """Representatives extending a basis of small to one of big."""
    reps: list[tuple[Fraction, ...]] = []
    cur = small
    for v in big.basis:
        if not cur.contains_vector(v):
            reps.append(v)
            cur = cur.sum(Subspace.from_vectors(big.ambient_dim, [v]))
    return reps


def induced_quotient_map(source_big: Subspace, source_small: Subspace,
                         target_big: Subspace, target_small: Subspace,
                         carrier: Mat) -> QuotientMap:
    """Materialize x + source_small |-> carrier x + target_small.

    Representatives of the source quotient are carried over and expressed in
    coordinates of (basis of target_small extended to target_big); the lower
    coordinate block is the quotient matrix. Well-definedness = carrier maps
    source_small into target_small and source_big into target_big.
    """
    if not source_big.contains(source_small) or not target_big.contains(target_small):
        raise ValueError("quotient requires nested subspaces")
    ok_small = target_small.contains(map_subspace(carrier, source_small))
    ok_big = target_big.contains(map_subspace(carrier, source_big))
    if not (ok_small and ok_big):
        return QuotientMap(source_big, source_small, target_big, target_small,
                           carrier, well_defined=False, matrix=None)
    src_reps = _extend_basis(source_small, source_big)
    tgt_reps = _extend_basis(target_small, target_big)
    q = len(src_reps)
    p = len(tgt_reps)
    # coordinate solve against the (small basis + representatives) basis
    frame_rows = [list(v) for v in target_small.basis] + [list(v) for v in tgt_reps]
    if frame_rows:
        frame = Mat.from_rows(frame_rows).transpose()
    else:
        frame = Mat.zero(target_big.ambient_dim, 0)
    cols: list[list[Fraction]] = []
    for v in src_reps:
        w = carrier.apply(v)
        coords = solve(frame, w)
        if coords is None:
            raise ArithmeticError("carrier image escaped target_big")
        cols.append(list(coords[target_small.dim:]))
    matrix = Mat(p, q, [cols[j][i] for i in range(p) for j in range(q)])
    return QuotientMap(source_big, source_small, target_big, target_small,
                       carrier, well_defined=True, matrix=matrix)


def gamma_map(t: OperatorTriple, n: int, lam: int | Fraction) -> QuotientMap:
    """Range-chain map R((BA-lam)^n)/R(..^(n+1)) -> same for AC, carried by ACA."""
    _require_condition(t)
    s = scaled(t, lam)
    sba = s.ba.shifted(1)
    sac = s.ac.shifted(1)
    return induced_quotient_map(image(sba ** n), image(sba ** (n + 1)),
                                image(sac ** n), image(sac ** (n + 1)), s.aca)


def psi_map(t: OperatorTriple, n: int, lam: int | Fraction) -> QuotientMap:
    """Kernel-chain map N((BA-lam)^(n+1))/N(..^n) -> same for AC."""
    _require_condition(t)
    s = scaled(t, lam)
    sba = s.ba.shifted(1)
    sac = s.ac.shifted(1)
    return induced_quotient_map(kernel(sba ** (n + 1)), kernel(sba ** n),
                                kernel(sac ** (n + 1)), kernel(sac ** n), s.aca)


def phi_map(t: OperatorTriple, n: int, lam: int | Fraction) -> QuotientMap:
    """Sum-chain map (R+N^(n+1))/(R+N^n) for BA-lam -> same for AC-lam."""
    _require_condition(t)
    s = scaled(t, lam)
    sba = s.ba.shifted(1)
    sac = s.ac.shifted(1)
    rb, ra = image(sba), image(sac)
    return induced_quotient_map(rb.sum(kernel(sba ** (n + 1))), rb.sum(kernel(sba ** n)),
                                ra.sum(kernel(sac ** (n + 1))), ra.sum(kernel(sac ** n)),
                                s.aca)


@dataclass(frozen=True)
class SequenceRow:
    n: int
    c_ac: int
    c_ba: int
    cp_ac: int
    cp_ba: int
    k_ac: int
    k_ba: int

    @property
    def equal(self) -> bool:
        return (self.c_ac == self.c_ba and self.cp_ac == self.cp_ba
                and self.k_ac == self.k_ba)


@dataclass(frozen=True)
class SequenceReport:
    lam: Fraction
    rows: tuple[SequenceRow, ...]
    totals_ac: tuple[int, int, int]  # (c, c', k) of AC - lam
    totals_ba: tuple[int, int, int]
    asc_ac: int
    asc_ba: int
    dsc_ac: int
    dsc_ba: int

    @property
    def all_equal(self) -> bool:
        return (all(r.equal for r in self.rows)
                and self.totals_ac == self.totals_ba
                and self.asc_ac == self.asc_ba and self.dsc_ac == self.dsc_ba)


def verify_sequence_equalities(t: OperatorTriple, lam: int | Fraction,
                               n_max: int | None = None) -> SequenceReport:
    """Compare c_n, c'_n, k_n of AC - lam and BA - lam for n = 0..n_max.

    Sequences are stabilizing, so indices past the matrix dimension are zero;
    also reports the totals c, c', k and ascent/descent on both sides.
    """
    _require_condition(t)
    lam = rat(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    pac = profile(t.ac.shifted(lam))
    pba = profile(t.ba.shifted(lam))
    if n_max is None:
        n_max = max(t.dim_x, t.dim_y)

    def seq(s: tuple[int, ...], n: int) -> int:
        return s[n] if n < len(s) else 0

    rows = tuple(SequenceRow(n=n,
                             c_ac=seq(pac.c_seq, n), c_ba=seq(pba.c_seq, n),
                             cp_ac=seq(pac.cp_seq, n), cp_ba=seq(pba.cp_seq, n),
                             k_ac=seq(pac.k_seq, n), k_ba=seq(pba.k_seq, n))
                 for n in range(n_max + 1))
    return SequenceReport(
        lam=lam, rows=rows,
        totals_ac=(pac.c_total, pac.cp_total, pac.k_total),
        totals_ba=(pba.c_total, pba.cp_total, pba.k_total),
        asc_ac=pac.asc, asc_ba=pba.asc, dsc_ac=pac.dsc, dsc_ba=pba.dsc,
    )


def default_probes(t: OperatorTriple) -> list[Fraction]:
    """Probe set: rational eigenvalues of AC and BA, 1, and two non-eigenvalues.

    Zero may appear (it is an eigenvalue of any singular product); consumers
    skip it with an explicit note, mirroring sigma \\ {0} in the statements.
    """
    eigs = {lam for lam, _ in rational_eigenvalues(t.ac)}
    eigs |= {lam for lam, _ in rational_eigenvalues(t.ba)}
    probes = set(eigs)
    probes.add(Fraction(1))
    extras = 0
    candidate = (Fraction(p) for p in
                 (2, 3, 5, 7, Fraction(1, 2), Fraction(3, 2), 11, 13, 17, 19, 23))
    for c in candidate:
        if extras == 2:
            break
        if c not in eigs:
            probes.add(c)
            extras += 1
    return sorted(probes)


@dataclass(frozen=True)
class TheoremRow:
    lam: Fraction
    in_sigma_ac: tuple[bool, ...]
    in_sigma_ba: tuple[bool, ...]

    @property
    def equal(self) -> bool:
        return self.in_sigma_ac == self.in_sigma_ba

    @property
    def mismatches(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, (a, b)
                     in enumerate(zip(self.in_sigma_ac, self.in_sigma_ba)) if a != b)


@dataclass(frozen=True)
class TheoremReport:
    rows: tuple[TheoremRow, ...]
    skipped: tuple[Fraction, ...] = field(default_factory=tuple)

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)


def verify_theorem(t: OperatorTriple,
                   lambdas: list[Fraction] | None = None) -> TheoremReport:
    """Pointwise sigma_{R_i}(AC) vs sigma_{R_i}(BA) agreement at each lam != 0.

    lam = 0 entries are skipped with a note (the statements all exclude 0).
    """
    _require_condition(t)
    if lambdas is None:
        lambdas = default_probes(t)
    rows = []
    skipped = []
    for lam in lambdas:
        lam = rat(lam)
        if lam == 0:
            skipped.append(lam)
            continue
        rows.append(TheoremRow(lam=lam,
                               in_sigma_ac=sigma_memberships(t.ac, lam),
                               in_sigma_ba=sigma_memberships(t.ba, lam)))
    return TheoremReport(rows=tuple(rows), skipped=tuple(skipped))


def nonzero_charpoly_match(t: OperatorTriple) -> bool:
    """Equal nonzero eigenvalue structure, as an exact polynomial identity.

    The characteristic polynomials of AC and BA, after dividing out all
    powers of the variable and normalizing monic, must coincide; this covers
    irrational and complex eigenvalues without extracting any root.
    """
    _require_condition(t)
    pac, _ = charpoly(t.ac).strip_zero_roots()
    pba, _ = charpoly(t.ba).strip_zero_roots()
    return pac.monic() == pba.monic()


def shift_polys(t: OperatorTriple, n: int) -> tuple[Mat, Mat]:
    """The binomial shift operators (B_n, C_n) for (I-BA)^n and (I-AC)^n.

    B_n = sum_{k=1..n} (-1)^(k-1) C(n,k) B(AB)^(k-1) and C_n mirrors it with
    (CA)^(k-1)C. Verifies (I-BA)^n = I - B_nA, (I-AC)^n = I - AC_n and that
    (A, B_n, C_n) again satisfies the intertwining condition before
    returning.
    """
    _require_condition(t)
    if n < 1:
        raise ValueError("n must be at least 1")
    bn = Mat.zero(t.dim_x, t.dim_y)
    cn = Mat.zero(t.dim_x, t.dim_y)
    ab_pow = Mat.identity(t.dim_y)
    ca_pow = Mat.identity(t.dim_x)
    for k in range(1, n + 1):
        coef = Fraction((-1) ** (k - 1) * comb(n, k))
        bn = bn + (t.B @ ab_pow).scaled(coef)
        cn = cn + (ca_pow @ t.C).scaled(coef)
        ab_pow = ab_pow @ t.ab
        ca_pow = ca_pow @ t.ca
    i_x = Mat.identity(t.dim_x)
    i_y = Mat.identity(t.dim_y)
    if (i_x - t.ba) ** n != i_x - bn @ t.A:
        raise ArithmeticError("(I-BA)^n != I - B_nA")
    if (i_y - t.ac) ** n != i_y - t.A @ cn:
        raise ArithmeticError("(I-AC)^n != I - AC_n")
    if not OperatorTriple(t.A, bn, cn).condition_holds:
        raise ArithmeticError("(A, B_n, C_n) lost the intertwining condition")
    return bn, cn
