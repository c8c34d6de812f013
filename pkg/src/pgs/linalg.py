"""Exact linear algebra over the chain ring Z/p^N.

Submodules of (Z/p^N)^n are kept in a canonical echelon form: pivot entries
are pure powers of p at strictly increasing columns, entries above a pivot
are reduced modulo that pivot, and every pivot row is completed with its
p-power multiples so membership is decidable by column-wise reduction.  Two
generating sets spanning the same submodule produce identical bases, so
basis equality doubles as submodule equality.

Quotients (Z/p^N)^n / span(B) are diagonalized by valuation-pivoted
elimination, which yields the abelian invariants together with the change
of coordinates in both directions.
"""

from __future__ import annotations

from .errors import (
    BadParameters,
    ExponentTooSmall,
    InternalInconsistency,
    NotInvertible,
    ResourceLimit,
)


def valuation(x: int, p: int) -> int:
    """Largest v with p^v dividing x; x must be nonzero."""
    if x == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise BadParameters(f"p = {p} is not prime")


class ModMatrix:
    """Square or rectangular matrix with entries reduced mod p^N.

    Vectors are rows and matrices act on the right: (v @ M)[j] is the
    j-th coordinate of the image of v.
    """

    __slots__ = ("p", "N", "rows", "cols", "entries")

    def __init__(self, p: int, N: int, entries) -> None:
        _check_prime(p)
        if N < 1:
            raise BadParameters("N must be >= 1")
        mod = p**N
        ent = tuple(tuple(int(x) % mod for x in row) for row in entries)
        if ent and any(len(r) != len(ent[0]) for r in ent):
            raise BadParameters("ragged matrix")
        self.p = p
        self.N = N
        self.rows = len(ent)
        self.cols = len(ent[0]) if ent else 0
        self.entries = ent

    @classmethod
    def identity(cls, p: int, N: int, n: int) -> "ModMatrix":
        return cls(p, N, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def mul(self, other: "ModMatrix") -> "ModMatrix":
        if self.cols != other.rows or self.p != other.p or self.N != other.N:
            raise BadParameters("incompatible matrices")
        mod = self.modulus
        b = other.entries
        out = []
        for row in self.entries:
            out.append(
                [sum(row[k] * b[k][j] for k in range(self.cols)) % mod for j in range(other.cols)]
            )
        return ModMatrix(self.p, self.N, out)

    def apply(self, v) -> tuple:
        """Image of the row vector v."""
        if len(v) != self.rows:
            raise BadParameters("vector/matrix size mismatch")
        mod = self.modulus
        ent = self.entries
        return tuple(sum(v[i] * ent[i][j] for i in range(self.rows)) % mod for j in range(self.cols))

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            e == (1 if i == j else 0) for i, row in enumerate(self.entries) for j, e in enumerate(row)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModMatrix)
            and (self.p, self.N, self.entries) == (other.p, other.N, other.entries)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.N, self.entries))

    def __repr__(self) -> str:
        return f"ModMatrix(p={self.p}, N={self.N}, {list(map(list, self.entries))})"


def _det_mod_p(M: ModMatrix) -> int:
    """Determinant of a square matrix reduced mod p, by elimination over F_p."""
    p = M.p
    a = [[x % p for x in row] for row in M.entries]
    n = M.rows
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = (det * a[col][col]) % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            f = (a[r][col] * inv) % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def _is_unipotent_mod_p(M: ModMatrix) -> bool:
    p, n = M.p, M.rows
    b = [[(x - (1 if i == j else 0)) % p for j, x in enumerate(row)] for i, row in enumerate(M.entries)]
    # nilpotency of M - I over F_p: (M-I)^n = 0
    acc = b
    for _ in range(n - 1):
        acc = [[sum(acc[i][k] * b[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]
    return all(x == 0 for row in acc for x in row)


def matrix_power_order(M: ModMatrix) -> int:
    """Least m >= 1 with M^m = I over Z/p^N.

    Matrices unipotent mod p have p-power order, found by successive p-th
    powering.  Anything else is resolved by plain successive multiplication
    with a hard cap of p^(N * rows) steps.
    """
    if M.rows != M.cols:
        raise BadParameters("order is defined for square matrices only")
    if _det_mod_p(M) == 0:
        raise NotInvertible("matrix is singular mod p")
    if M.is_identity():
        return 1
    p = M.p
    if _is_unipotent_mod_p(M):
        order = 1
        X = M
        # order divides p^(N + log_p rows); the loop bound is generous
        for _ in range(M.N * M.rows + M.rows + 2):
            if X.is_identity():
                return order
            Y = X
            for _ in range(p - 1):
                Y = Y.mul(X)
            X = Y
            order *= p
        raise InternalInconsistency("unipotent matrix order did not stabilize")
    cap = p ** (M.N * M.rows)
    X = M
    m = 1
    while not X.is_identity():
        X = X.mul(M)
        m += 1
        if m > cap:
            raise ResourceLimit(f"matrix order exceeds cap {cap}")
    return m


class EchelonBasis:
    """Canonical echelon basis of a submodule of (Z/p^N)^width.

    ``rows`` are the basis vectors sorted by pivot column; ``pivots`` holds
    the matching (column, valuation) pairs.  The form is unique per
    submodule, so ``==`` decides submodule equality.
    """

    __slots__ = ("p", "N", "width", "rows", "pivots")

    def __init__(self, p: int, N: int, width: int, rows, pivots) -> None:
        self.p = p
        self.N = N
        self.width = width
        self.rows = rows
        self.pivots = pivots

    @property
    def span_size(self) -> int:
        size = 1
        for _, v in self.pivots:
            size *= self.p ** (self.N - v)
        return size

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EchelonBasis)
            and (self.p, self.N, self.width, self.rows) == (other.p, other.N, other.width, other.rows)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.N, self.width, self.rows))

    def __len__(self) -> int:
        return len(self.rows)

    def __repr__(self) -> str:
        return f"EchelonBasis(p={self.p}, N={self.N}, rows={list(map(list, self.rows))})"


def echelonize(p: int, N: int, vectors, width: int | None = None) -> EchelonBasis:
    """Canonical basis of the Z/p^N-span of ``vectors``.

    Insertion-based reduction: each vector is folded against existing
    pivots by exact division; a vector with smaller valuation at a pivot
    column replaces that pivot and the old row is re-queued.  Whenever a
    pivot p^v with v > 0 is installed, its annihilator multiple
    p^(N-v) * row re-enters the queue so that the span is fully captured.
    The result is order-insensitive and idempotent.
    """
    _check_prime(p)
    if N < 1:
        raise BadParameters("N must be >= 1")
    mod = p**N
    queue = []
    for v in vectors:
        t = [int(x) % mod for x in v]
        if width is None:
            width = len(t)
        elif len(t) != width:
            raise BadParameters("vectors of mixed lengths")
        queue.append(t)
    if width is None:
        width = 0
    pivots: dict[int, tuple[int, list[int]]] = {}

    while queue:
        vec = queue.pop()
        j = 0
        while j < width:
            a = vec[j]
            if a == 0:
                j += 1
                continue
            va = valuation(a, p)
            if j in pivots:
                vp, row = pivots[j]
                if va >= vp:
                    q = a // (p**vp)
                    for col in range(j, width):
                        vec[col] = (vec[col] - q * row[col]) % mod
                    j += 1
                    continue
                # strictly smaller valuation: vec becomes the pivot
                unit_inv = pow(a // (p**va), -1, mod)
                vec = [(x * unit_inv) % mod for x in vec]
                pivots[j] = (va, vec)
                queue.append(row)
            else:
                unit_inv = pow(a // (p**va), -1, mod)
                vec = [(x * unit_inv) % mod for x in vec]
                pivots[j] = (va, vec)
            if va > 0:
                ann = p ** (N - va)
                queue.append([(x * ann) % mod for x in vec])
            break

    cols = sorted(pivots)
    rows = [list(pivots[c][1]) for c in cols]
    # reduce entries above each pivot modulo the pivot
    for i, c in enumerate(cols):
        piv = p ** pivots[c][0]
        for k in range(i):
            q = rows[k][c] // piv
            if q:
                rows[k] = [(x - q * y) % mod for x, y in zip(rows[k], rows[i])]
    return EchelonBasis(
        p,
        N,
        width,
        tuple(tuple(r) for r in rows),
        tuple((c, pivots[c][0]) for c in cols),
    )


def submodule_member(v, basis: EchelonBasis) -> bool:
    """Decide membership of ``v`` in the span of an echelon basis."""
    p, N = basis.p, basis.N
    mod = p**N
    w = [int(x) % mod for x in v]
    if basis.rows and len(w) != basis.width:
        raise BadParameters("vector length does not match basis width")
    for (col, val), row in zip(basis.pivots, basis.rows):
        a = w[col]
        if a == 0:
            continue
        pv = p**val
        if a % pv:
            return False
        q = a // pv
        for c in range(col, len(w)):
            w[c] = (w[c] - q * row[c]) % mod
    return not any(w)


class AbelianInvariants:
    """Invariant factors of (Z/p^N)^n / span(B), with coordinate maps.

    ``exponents`` is the non-increasing tuple of invariant factors
    p^e1 >= ... >= p^er (trivial factors dropped).  ``to_canonical`` maps a
    user-coordinate vector to its class in invariant coordinates, and
    ``from_canonical`` picks a representative going back; the composition
    to_canonical(from_canonical(c)) is the identity.
    """

    __slots__ = ("p", "N", "ambient", "exponents", "_slots", "_V", "_Vinv")

    def __init__(self, p, N, ambient, exponents, slots, V, Vinv) -> None:
        self.p = p
        self.N = N
        self.ambient = ambient
        self.exponents = exponents
        self._slots = slots  # (position in diagonal coords, modulus) per invariant
        self._V = V
        self._Vinv = Vinv

    @property
    def order(self) -> int:
        n = 1
        for e in self.exponents:
            n *= e
        return n

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def to_canonical(self, vec) -> tuple:
        mod = self.p**self.N
        if len(vec) != self.ambient:
            raise BadParameters("vector length does not match ambient rank")
        V = self._V
        y = [sum(vec[i] * V[i][j] for i in range(self.ambient)) % mod for j in range(self.ambient)]
        return tuple(y[pos] % m for pos, m in self._slots)

    def from_canonical(self, coords) -> tuple:
        if len(coords) != len(self._slots):
            raise BadParameters("coordinate length does not match rank")
        mod = self.p**self.N
        y = [0] * self.ambient
        for (pos, m), c in zip(self._slots, coords):
            y[pos] = int(c) % m
        Vinv = self._Vinv
        return tuple(
            sum(y[i] * Vinv[i][j] for i in range(self.ambient)) % mod for j in range(self.ambient)
        )

    def __repr__(self) -> str:
        return f"AbelianInvariants{self.exponents}"


def quotient_structure(basis: EchelonBasis, ambient: int) -> AbelianInvariants:
    """Invariant factors of (Z/p^N)^ambient / span(basis).

    Diagonalizes the relation rows by always pivoting on an entry of
    minimal p-valuation, which makes every remaining entry an exact
    multiple of the pivot; the resulting diagonal is the divisibility
    chain.  Column operations are accumulated into V and its inverse so
    the quotient coordinates can be translated in both directions.
    """
    p, N = basis.p, basis.N
    if basis.rows and basis.width != ambient:
        raise BadParameters("basis width does not match ambient rank")
    mod = p**N
    A = [list(r) for r in basis.rows]
    k = len(A)
    n = ambient
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    vals: list[int] = []

    for pos in range(min(k, n)):
        best = None
        for i in range(pos, k):
            for j in range(pos, n):
                a = A[i][j]
                if a:
                    va = valuation(a, p)
                    if best is None or va < best[0]:
                        best = (va, i, j)
        if best is None:
            break
        va, bi, bj = best
        if bi != pos:
            A[pos], A[bi] = A[bi], A[pos]
        if bj != pos:
            for row in A:
                row[pos], row[bj] = row[bj], row[pos]
            for row in V:
                row[pos], row[bj] = row[bj], row[pos]
            Vinv[pos], Vinv[bj] = Vinv[bj], Vinv[pos]
        pv = p**va
        unit_inv = pow(A[pos][pos] // pv, -1, mod)
        A[pos] = [(x * unit_inv) % mod for x in A[pos]]
        for i in range(k):
            if i != pos and A[i][pos]:
                q = A[i][pos] // pv
                A[i] = [(x - q * y) % mod for x, y in zip(A[i], A[pos])]
        for j in range(pos + 1, n):
            if A[pos][j]:
                q = A[pos][j] // pv
                for row in A:
                    row[j] = (row[j] - q * row[pos]) % mod
                for row in V:
                    row[j] = (row[j] - q * row[pos]) % mod
                Vinv[pos] = [(x + q * y) % mod for x, y in zip(Vinv[pos], Vinv[j])]
        vals.append(va)

    # diagonal entry p^v contributes Z/p^v; columns without a pivot are free
    # summands Z/p^N
    full = vals + [N] * (n - len(vals))
    slots = sorted(
        ((pos, p**v) for pos, v in enumerate(full) if v > 0),
        key=lambda s: (-s[1], s[0]),
    )
    exponents = tuple(m for _, m in slots)
    if any(m > mod for m in exponents):
        raise ExponentTooSmall("quotient exponent exceeds p^N")
    return AbelianInvariants(
        p,
        N,
        n,
        exponents,
        tuple(slots),
        tuple(tuple(r) for r in V),
        tuple(tuple(r) for r in Vinv),
    )
