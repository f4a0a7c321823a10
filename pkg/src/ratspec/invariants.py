"""Spectral invariant sequences and regularity membership for square matrices.

For a square T the sequences c_n (consecutive range-quotient dimensions),
c'_n (consecutive kernel-quotient dimensions) and k_n (null-space dimensions
of the induced maps between consecutive range quotients) are computed exactly,
together with the derived degrees: ascent, descent, degree of stable
iteration, and the totals c, c', k. Every chain of kernels and ranges of
powers stabilizes by n = dim (Cayley-Hamilton), so all sequences have length
dim+1 and the "infimum over an empty set" branch of the general theory cannot
occur here.

Each sequence has two independent formulas (a chain-quotient form and a
complement/intersection form, Grabiner's identities); production code uses a
single form and the test suite recomputes the other and compares.

Membership in the nineteen regularity classes R_1..R_19 is evaluated with the
finite-dimensional semantics: every subspace of a finite-dimensional space is
closed and every dimension count is finite, which trivializes all classes
except R_1 (surjective), R_6 (injective) and R_11 (semi-regular, k(T) = 0).
The trivializations are recorded as notes rather than silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ratspec.ratmat import (Mat, Poly, Subspace, charpoly, image, kernel,
                            quotient_dim, rank, rat)

_N_REGULARITIES = 19


def _require_square(T: Mat) -> None:
    if not T.is_square:
        raise ValueError("spectral invariants need a square matrix")


def _powers(T: Mat, top: int) -> list[Mat]:
    ps = [Mat.identity(T.rows)]
    for _ in range(top):
        ps.append(ps[-1] @ T)
    return ps


def c_n(T: Mat, n: int) -> int:
    """dim R(T^n)/R(T^(n+1)); zero for all n >= dim."""
    _require_square(T)
    if n >= T.rows:
        return 0
    return rank(T ** n) - rank(T ** (n + 1))


def cp_n(T: Mat, n: int) -> int:
    """dim N(T^(n+1))/N(T^n); zero for all n >= dim."""
    _require_square(T)
    if n >= T.rows:
        return 0
    return kernel(T ** (n + 1)).dim - kernel(T ** n).dim


def k_n(T: Mat, n: int) -> int:
    """dim (R(T^n) cap N(T)) / (R(T^(n+1)) cap N(T)); zero for all n >= dim."""
    _require_square(T)
    if n >= T.rows:
        return 0
    ker = kernel(T)
    return quotient_dim(image(T ** n).intersect(ker),
                        image(T ** (n + 1)).intersect(ker))


def c_n_via_complement(T: Mat, n: int) -> int:
    """c_n as dim X - dim(R(T) + N(T^n)): the complement-form identity."""
    _require_square(T)
    return T.rows - image(T).sum(kernel(T ** n)).dim


def cp_n_via_intersection(T: Mat, n: int) -> int:
    """c'_n as dim(N(T) cap R(T^n)): the intersection-form identity."""
    _require_square(T)
    return kernel(T).intersect(image(T ** n)).dim


def k_n_via_sums(T: Mat, n: int) -> int:
    """k_n as dim (R(T)+N(T^(n+1))) / (R(T)+N(T^n)): the sum-chain identity."""
    _require_square(T)
    img = image(T)
    return quotient_dim(img.sum(kernel(T ** (n + 1))), img.sum(kernel(T ** n)))


@dataclass(frozen=True)
class InvariantProfile:
    """All invariant sequences and degrees of one square operator.

    Sequences run n = 0..dim. The essential degrees asc_e, dsc_e, dis_e are 0
    for every finite-dimensional operator (every count is finite, so the
    defining infima are attained at n = 0).
    """

    dim: int
    c_seq: tuple[int, ...]
    cp_seq: tuple[int, ...]
    k_seq: tuple[int, ...]
    asc: int
    dsc: int
    asc_e: int
    dsc_e: int
    dis: int
    dis_e: int
    k_total: int
    c_total: int
    cp_total: int
    hyper_kernel: Subspace
    hyper_range: Subspace


def profile(T: Mat) -> InvariantProfile:
    """Full invariant profile in one pass over the power chain of T."""
    _require_square(T)
    d = T.rows
    powers = _powers(T, d + 1)
    images = [image(p) for p in powers]
    kernels_ = [kernel(p) for p in powers]
    ker1 = kernels_[1]

    c_seq = tuple(images[n].dim - images[n + 1].dim for n in range(d + 1))
    cp_seq = tuple(kernels_[n + 1].dim - kernels_[n].dim for n in range(d + 1))
    k_seq = tuple(images[n].intersect(ker1).dim - images[n + 1].intersect(ker1).dim
                  for n in range(d + 1))

    asc = next(n for n in range(d + 1) if cp_seq[n] == 0)
    dsc = next(n for n in range(d + 1) if c_seq[n] == 0)
    if asc != dsc:
        raise ArithmeticError("ascent/descent mismatch at finite dimension")
    dis = max((n + 1 for n in range(d + 1) if k_seq[n] != 0), default=0)

    return InvariantProfile(
        dim=d,
        c_seq=c_seq,
        cp_seq=cp_seq,
        k_seq=k_seq,
        asc=asc,
        dsc=dsc,
        asc_e=0,
        dsc_e=0,
        dis=dis,
        dis_e=0,
        k_total=sum(k_seq),
        c_total=sum(c_seq),
        cp_total=sum(cp_seq),
        hyper_kernel=kernels_[d],
        hyper_range=images[d],
    )


#: Trivialization notes for the regularity classes whose defining conditions
#: (finiteness of a count, closedness of a subspace) always hold at finite
#: dimension. Indexed 1..19; classes absent here carry real content.
TRIVIAL_NOTES: dict[int, str] = {
    2: "c(T) is always finite at finite dimension",
    3: "c_d(T) = 0 at d = dim and every subspace is closed",
    4: "every c_n(T) is finite",
    5: "every c_n(T) is finite and every subspace is closed",
    7: "c'(T) is always finite; ranges are closed",
    8: "c'_d(T) = 0 at d = dim and every subspace is closed",
    9: "every c'_n(T) is finite; ranges are closed",
    10: "every c'_n(T) is finite and every subspace is closed",
    12: "k(T) is always finite; ranges are closed",
    13: "k_n(T) = 0 from n = dim on and every subspace is closed",
    14: "every k_n(T) is finite; ranges are closed",
    15: "every k_n(T) is finite and every subspace is closed",
    16: "c_d(T) = 0 at d = dim; R(T)+N(T^d) is closed",
    17: "c_d(T) is finite; R(T)+N(T^d) is closed",
    18: "k_n(T) = 0 from n = dim on; R(T)+N(T^d) is closed",
    19: "k_n(T) is finite from n = dim on; R(T)+N(T^d) is closed",
}


@dataclass(frozen=True)
class RegularityClass:
    """Membership of one operator in R_1..R_19, with trivialization notes."""

    memberships: tuple[bool, ...]
    notes: dict[int, str]

    def is_member(self, i: int) -> bool:
        """Membership in R_i, i in 1..19."""
        if not 1 <= i <= _N_REGULARITIES:
            raise ValueError("regularity index out of range 1..19")
        return self.memberships[i - 1]


def regularity_membership(T: Mat) -> RegularityClass:
    """Evaluate all nineteen regularity memberships for T.

    At finite dimension R_1 is surjectivity (c(T) = 0), R_6 injectivity
    (c'(T) = 0), R_11 semi-regularity (k(T) = 0); every other class holds
    unconditionally, with the reason recorded in notes.
    """
    _require_square(T)
    p = profile(T)
    flags = [True] * _N_REGULARITIES
    flags[0] = p.c_total == 0
    flags[5] = p.cp_total == 0
    flags[10] = p.k_total == 0
    notes = dict(TRIVIAL_NOTES)
    notes[1] = "c(T) = 0 iff T is surjective"
    notes[6] = "c'(T) = 0 iff T is injective (ranges are closed)"
    notes[11] = "k(T) = 0 iff T is semi-regular (ranges are closed)"
    return RegularityClass(memberships=tuple(flags), notes=notes)


def sigma_memberships(T: Mat, lam: int | Fraction) -> tuple[bool, ...]:
    """For each i, whether lam lies in the R_i-spectrum of T.

    lam is in sigma_{R_i}(T) iff T - lam is not a member of R_i.
    """
    flags = regularity_membership(T.shifted(rat(lam))).memberships
    return tuple(not f for f in flags)


def sigma_R_membership(T: Mat, lam: int | Fraction, i: int) -> bool:
    """True iff lam is in sigma_{R_i}(T)."""
    if not 1 <= i <= _N_REGULARITIES:
        raise ValueError("regularity index out of range 1..19")
    return sigma_memberships(T, lam)[i - 1]


def fredholm_index(T: Mat) -> int:
    """dim N(T) - codim R(T); identically 0 for square finite-dimensional T.

    Kept as a computation (not a constant) to document the finite-dimensional
    collapse of the semi-Weyl spectra: index conditions never cut anything.
    """
    _require_square(T)
    return kernel(T).dim - (T.rows - rank(T))


_SCAN_LIMIT = 65536


def _divisors_up_to(n: int, bound: int) -> list[int]:
    """Positive divisors of n > 0 that are <= bound, ascending.

    Scans candidates directly when the bound is small, otherwise factorizes
    by trial division and combines prime powers.
    """
    if bound < 1:
        return []
    if bound <= _SCAN_LIMIT:
        return [d for d in range(1, bound + 1) if n % d == 0]
    factors: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    divs = [1]
    for q, e in factors.items():
        divs = [d * q ** j for d in divs for j in range(e + 1) if d * q ** j <= bound]
    return sorted(set(divs))


def rational_eigenvalues(T: Mat) -> list[tuple[Fraction, int]]:
    """All rational eigenvalues with algebraic multiplicities.

    Scales T to an integer matrix S = D*T, whose (monic, integer)
    characteristic polynomial has all its rational roots integral and
    dividing the constant term; candidates are capped by the smaller of the
    Cauchy and Gershgorin root bounds, tested, and deflated by synthetic
    division, then divided back by D.
    """
    _require_square(T)
    n = T.rows
    if n == 0:
        return []
    D = 1
    for x in T.data:
        d = x.denominator
        D = D // _gcd(D, d) * d
    p = charpoly(T)
    # coefficients of charpoly(D*T): a_i * D^(n-i), integers
    coeffs = []
    for i, c in enumerate(p.coeffs):
        scaled = c * Fraction(D) ** (n - i)
        if scaled.denominator != 1:
            raise ArithmeticError("integer charpoly scaling failed")
        coeffs.append(scaled.numerator)
    out: list[tuple[Fraction, int]] = []
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        out.append((Fraction(0), k))
        coeffs = coeffs[k:]
    if len(coeffs) > 1:
        cauchy = 1 + max(abs(c) for c in coeffs[:-1])
        gersh = max(sum(abs((D * x).numerator) for x in T.row(i))
                    for i in range(n))
        bound = min(cauchy, gersh)
        for cand in _divisors_up_to(abs(coeffs[0]), bound):
            for r in (cand, -cand):
                mult = 0
                while len(coeffs) > 1 and _eval_int(coeffs, r) == 0:
                    coeffs = _deflate(coeffs, r)
                    mult += 1
                if mult:
                    out.append((Fraction(r, D), mult))
    out.sort(key=lambda t: t[0])
    return out


def eigenvalue_multiplicity(T: Mat, lam: int | Fraction) -> int:
    """Algebraic multiplicity of lam as a root of charpoly(T)."""
    _require_square(T)
    p: Poly = charpoly(T)
    lam = rat(lam)
    mult = 0
    while p.degree > 0 and p(lam) == 0:
        p = _deflate_poly(p, lam)
        mult += 1
    return mult


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _eval_int(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list[int], r: int) -> list[int]:
    # synthetic division by (x - r); exact when r is a root
    out = [0] * (len(coeffs) - 1)
    carry = 0
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + carry * r if i < len(coeffs) - 1 else coeffs[i]
        out[i - 1] = carry
    return out


def _deflate_poly(p: Poly, r: Fraction) -> Poly:
    cs = list(p.coeffs)
    out = [Fraction(0)] * (len(cs) - 1)
    carry = Fraction(0)
    for i in range(len(cs) - 1, 0, -1):
        carry = cs[i] + carry * r if i < len(cs) - 1 else cs[i]
        out[i - 1] = carry
    return Poly(out)
