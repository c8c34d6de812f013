"""Truncated cyclotomic integer arithmetic.

Adjoining a primitive p-th root of unity w to the p-adic integers gives a
discrete valuation ring whose maximal ideal is generated by w - 1, with
(w - 1)^(p-1) equal to p times a unit.  This module realizes that ring with
polynomial coefficients taken mod p^N, which is exact as long as every
computation stays inside the ideal power I^c being modelled; N is sized
with one unit of headroom above the exponent of the quotient by I^c.
"""

from __future__ import annotations

from .errors import BadParameters, InternalInconsistency, ParameterTooLarge
from .linalg import (
    AbelianInvariants,
    EchelonBasis,
    ModMatrix,
    echelonize,
    quotient_structure,
    submodule_member,
)


class RingElem:
    """Element of a CycloRing, as coefficients on 1, w, ..., w^(p-2)."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "CycloRing", coeffs) -> None:
        mod = ring.modulus
        self.ring = ring
        self.coeffs = tuple(int(x) % mod for x in coeffs)
        if len(self.coeffs) != ring.rank:
            raise BadParameters("coefficient vector has wrong length")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElem)
            and other.ring is self.ring
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RingElem{self.coeffs}"


class CycloRing:
    """Z[w]/(Phi_p(w), p^N) with the ideal filtration I^k, I = (w - 1)."""

    def __init__(self, p: int, c: int, max_order: int = 2_000_000) -> None:
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise BadParameters(f"p = {p} is not prime")
        if c < 1:
            raise BadParameters("c must be >= 1")
        if p**c > max_order:
            raise ParameterTooLarge(f"p^c = {p**c} exceeds bound {max_order}")
        self.p = p
        self.c = c
        self.rank = p - 1
        self.N = -(-c // (p - 1)) + 1
        self.modulus = p**self.N

        mod = self.modulus
        rank = self.rank
        # multiplication-by-w matrix, row convention: row i = coefficients of w^(i+1)
        rows = []
        for i in range(rank - 1):
            rows.append([1 if j == i + 1 else 0 for j in range(rank)])
        rows.append([mod - 1] * rank)
        self.omega_matrix = ModMatrix(p, self.N, rows)

        # w^m for m = 0 .. 2*rank - 2, enough to fold any product
        pows = [tuple(1 if j == 0 else 0 for j in range(rank))]
        for _ in range(2 * rank - 2):
            pows.append(self.omega_matrix.apply(pows[-1]))
        self._omega_pows = pows

        self.one = RingElem(self, pows[0])
        self.omega = RingElem(self, pows[1] if rank > 1 else pows[0])
        if rank == 1:
            # Phi_2 = x + 1, so w = -1
            self.omega = RingElem(self, (mod - 1,))
        self.omega_minus_one = self.sub(self.omega, self.one)

        self.ideal_bases: list[EchelonBasis] = []
        gen = self.one
        for k in range(c + 1):
            vectors = [self.mul(gen, RingElem(self, self._omega_pows[j])).coeffs for j in range(rank)]
            self.ideal_bases.append(echelonize(p, self.N, vectors, width=rank))
            gen = self.mul(gen, self.omega_minus_one)
        self._validate()

    def _validate(self) -> None:
        w = self.one
        for _ in range(self.p):
            w = self.mul(w, self.omega)
        if w != self.one:
            raise InternalInconsistency("omega^p != 1")
        sizes = [b.span_size for b in self.ideal_bases]
        for k in range(self.c):
            if sizes[k] != self.p * sizes[k + 1]:
                raise InternalInconsistency(f"|I^{k}/I^{k + 1}| != p")

    # element arithmetic

    def add(self, a: RingElem, b: RingElem) -> RingElem:
        mod = self.modulus
        return RingElem(self, tuple((x + y) % mod for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: RingElem, b: RingElem) -> RingElem:
        mod = self.modulus
        return RingElem(self, tuple((x - y) % mod for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: RingElem) -> RingElem:
        mod = self.modulus
        return RingElem(self, tuple((-x) % mod for x in a.coeffs))

    def scalar(self, k: int, a: RingElem) -> RingElem:
        mod = self.modulus
        return RingElem(self, tuple((k * x) % mod for x in a.coeffs))

    def mul(self, a: RingElem, b: RingElem) -> RingElem:
        mod = self.modulus
        rank = self.rank
        conv = [0] * (2 * rank - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        out = [0] * rank
        pows = self._omega_pows
        for m, coef in enumerate(conv):
            if coef:
                row = pows[m]
                for j in range(rank):
                    out[j] += coef * row[j]
        return RingElem(self, tuple(x % mod for x in out))

    def power(self, a: RingElem, n: int) -> RingElem:
        out = self.one
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def element(self, coeffs) -> RingElem:
        return RingElem(self, coeffs)

    def in_ideal(self, a: RingElem, k: int) -> bool:
        return submodule_member(a.coeffs, self.ideal_bases[k])

    def s_element(self, n: int) -> RingElem:
        """(w - 1)^(n - 1): the n-th term of the descending unit chain."""
        if n < 1:
            raise BadParameters("s-index starts at 1")
        return self.power(self.omega_minus_one, n - 1)

    def __repr__(self) -> str:
        return f"CycloRing(p={self.p}, c={self.c}, N={self.N})"


def ring_make(p: int, c: int, max_order: int = 2_000_000) -> CycloRing:
    """Build the truncated ring with its precomputed ideal filtration."""
    return CycloRing(p, c, max_order=max_order)


def eq_powers_witness(R: CycloRing) -> RingElem:
    """The unit z with (w - 1)^(p-1) = p * z, exact in coefficients mod p^N.

    Every coefficient of (w - 1)^(p-1) is divisible by p exactly once, so z
    is recovered by integer division; z is determined mod p^(N-1) and the
    divided representative is returned.
    """
    u = R.power(R.omega_minus_one, R.p - 1)
    if any(x % R.p for x in u.coeffs):
        raise InternalInconsistency("(w-1)^(p-1) is not divisible by p")
    z = RingElem(R, tuple(x // R.p for x in u.coeffs))
    if all(x % R.p == 0 for x in z.coeffs):
        raise InternalInconsistency("witness is not a unit")
    if R.scalar(R.p, z) != u:
        raise InternalInconsistency("p * z != (w-1)^(p-1)")
    return z


def mc_bottom(R: CycloRing) -> tuple[AbelianInvariants, ModMatrix]:
    """Additive structure of ring/I^c with the multiplication-by-w action.

    Returns the invariant factors of the quotient together with the matrix
    of the w-action written in invariant coordinates (row convention,
    entries mod the largest invariant; each output coordinate is read mod
    its own invariant factor).
    """
    inv = quotient_structure(R.ideal_bases[R.c], R.rank)
    if inv.order != R.p**R.c:
        raise InternalInconsistency("quotient order is not p^c")
    exp = inv.exponents[0] if inv.exponents else 1
    rows = []
    for i in range(inv.rank):
        unit = [0] * inv.rank
        unit[i] = 1
        x = inv.from_canonical(unit)
        y = R.omega_matrix.apply(x)
        rows.append([v % exp for v in inv.to_canonical(y)])
    # exp is a p-power, so the matrix lives over Z/p^e with e = v_p(exp)
    e = 0
    m = exp
    while m > 1:
        m //= R.p
        e += 1
    action = ModMatrix(R.p, max(e, 1), rows)
    return inv, action
