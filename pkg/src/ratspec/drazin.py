"""Drazin inverses and the transfer of invertibility between AC and BA.

At finite dimension every square T is Drazin invertible: with d the index
(where the rank of T^d stabilizes), Q^n splits as R(T^d) + N(T^d), T is
invertible on the first summand and nilpotent on the second, and the Drazin
inverse S inverts the core and kills the nilpotent part. Everything here is
exact; "Riesz" collapses to "nilpotent" on rational matrices, so the
generalized statements specialize to the classical Drazin inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ratspec.intertwine import OperatorTriple, _require_condition
from ratspec.ratmat import Mat, image, inverse, kernel, rank

_ZERO = Fraction(0)


def nilpotency_index(M: Mat) -> int | None:
    """Smallest k >= 1 with M^k = 0, or None if M is not nilpotent.

    The zero matrix has index 1 (on a nonzero space); a 0x0 matrix has
    index 0 by convention.
    """
    if not M.is_square:
        raise ValueError("nilpotency of a non-square matrix")
    if M.rows == 0:
        return 0
    power = Mat.identity(M.rows)
    for k in range(1, M.rows + 1):
        power = power @ M
        if power.is_zero():
            return k
    return None


@dataclass(frozen=True)
class DrazinResult:
    """Drazin inverse S of T with the core-nilpotent split of T.

    TS = ST, STS = S, and T^2 S - T is nilpotent; T = core_part +
    nilpotent_part with both products zero and index = asc(T) = dsc(T).
    """

    inverse: Mat
    index: int
    core_part: Mat
    nilpotent_part: Mat


def drazin_inverse(T: Mat) -> DrazinResult:
    """Drazin inverse via the core-nilpotent decomposition at d = asc(T).

    Builds a basis adapted to Q^n = R(T^d) + N(T^d); in that basis T is block
    diagonal with an invertible core and a nilpotent block, S inverts the
    core and is zero on the nilpotent summand. The three defining identities
    are verified before returning.
    """
    if not T.is_square:
        raise ValueError("Drazin inverse of a non-square matrix")
    n = T.rows
    if n == 0:
        z = Mat.zero(0, 0)
        return DrazinResult(inverse=z, index=0, core_part=z, nilpotent_part=z)
    d = 0
    power = Mat.identity(n)
    prev_rank = n
    while True:
        nxt = power @ T
        r = rank(nxt)
        if r == prev_rank:
            break
        d += 1
        power = nxt
        prev_rank = r
    core_basis = image(power).basis
    nil_basis = kernel(power).basis
    if len(core_basis) + len(nil_basis) != n:
        raise ArithmeticError("core-nilpotent split failed")
    cols = list(core_basis) + list(nil_basis)
    Q = Mat(n, n, [cols[j][i] for i in range(n) for j in range(n)])
    Qi = inverse(Q)
    if Qi is None:
        raise ArithmeticError("adapted basis is singular")
    blocked = Qi @ T @ Q
    r = len(core_basis)
    core_block = Mat(r, r, [blocked.entry(i, j) for i in range(r) for j in range(r)])
    core_inv = inverse(core_block)
    if core_inv is None:
        raise ArithmeticError("core block is singular")
    s_block = Mat(n, n, [core_inv.entry(i, j) if i < r and j < r else _ZERO
                         for i in range(n) for j in range(n)])
    S = Q @ s_block @ Qi
    core = Q @ Mat(n, n, [blocked.entry(i, j) if i < r and j < r else _ZERO
                          for i in range(n) for j in range(n)]) @ Qi
    nilp = T - core
    _verify_drazin(T, S, d)
    return DrazinResult(inverse=S, index=d, core_part=core, nilpotent_part=nilp)


def _verify_drazin(T: Mat, S: Mat, d: int) -> None:
    if T @ S != S @ T:
        raise ArithmeticError("TS != ST")
    if S @ T @ S != S:
        raise ArithmeticError("STS != S")
    resid = T @ T @ S - T
    if d <= 1:
        if not resid.is_zero():
            raise ArithmeticError("T^2 S - T nonzero at index <= 1")
    else:
        if not (resid ** d).is_zero() or (resid ** (d - 1)).is_zero():
            raise ArithmeticError("nilpotency degree of T^2 S - T != index")


@dataclass(frozen=True)
class TransferReport:
    """BS^2A as a Drazin inverse of BA, from a Drazin inverse S of AC."""

    s_ac: DrazinResult
    candidate: Mat           # B S^2 A
    commutes: bool           # T(BA) = (BA)T
    inner: bool              # T(BA)T = T
    residual_nilpotent: bool  # (BA)^2 T - BA nilpotent
    matches_direct: bool     # equals drazin_inverse(BA).inverse

    @property
    def verified(self) -> bool:
        return self.commutes and self.inner and self.residual_nilpotent


def transfer(t: OperatorTriple) -> TransferReport:
    """Form T = B S^2 A with S the Drazin inverse of AC and verify it inverts BA.

    The three defining identities are checked directly; by uniqueness of the
    Drazin inverse the candidate must then equal the independently computed
    inverse of BA, which is also checked.
    """
    _require_condition(t)
    s_res = drazin_inverse(t.ac)
    S = s_res.inverse
    cand = t.B @ (S @ S) @ t.A
    ba = t.ba
    commutes = cand @ ba == ba @ cand
    inner = cand @ ba @ cand == cand
    resid = ba @ ba @ cand - ba
    residual_nilpotent = nilpotency_index(resid) is not None
    direct = drazin_inverse(ba).inverse
    return TransferReport(s_ac=s_res, candidate=cand, commutes=commutes,
                          inner=inner, residual_nilpotent=residual_nilpotent,
                          matches_direct=cand == direct)


@dataclass(frozen=True)
class ProofIdentitiesReport:
    """Mechanical checks of the algebraic steps in the transfer argument."""

    commutation: bool        # ACS = SAC
    residual_is_bpa: bool    # T(BA)^2 - BA = BPA with P = ACS - I
    cycle: bool              # (PA)B(PA)B(PA) = ..B..C.. = ..C..B.. = ..C..C..
    pac_matches: bool        # (PA)C = (AC)^2 S - AC
    pac_nilpotent: bool      # with nilpotency degree = index of AC
    index: int


def proof_identities(t: OperatorTriple) -> ProofIdentitiesReport:
    """Verify the identity chain used to justify the transfer, entrywise."""
    _require_condition(t)
    s_res = drazin_inverse(t.ac)
    S = s_res.inverse
    d = s_res.index
    ac = t.ac
    commutation = ac @ S == S @ ac
    P = (ac @ S).shifted(1)
    pa = P @ t.A
    cand = t.B @ (S @ S) @ t.A
    ba = t.ba
    residual_is_bpa = (cand @ ba @ ba - ba) == t.B @ pa
    c1 = pa @ t.B @ pa @ t.B @ pa
    c2 = pa @ t.B @ pa @ t.C @ pa
    c3 = pa @ t.C @ pa @ t.B @ pa
    c4 = pa @ t.C @ pa @ t.C @ pa
    cycle = c1 == c2 == c3 == c4
    pac = pa @ t.C
    pac_matches = pac == ac @ ac @ S - ac
    if d <= 1:
        pac_nilpotent = pac.is_zero()
    else:
        ni = nilpotency_index(pac)
        pac_nilpotent = ni == d
    return ProofIdentitiesReport(commutation=commutation,
                                 residual_is_bpa=residual_is_bpa,
                                 cycle=cycle, pac_matches=pac_matches,
                                 pac_nilpotent=pac_nilpotent, index=d)
