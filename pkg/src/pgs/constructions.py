"""Concrete p-group families and the recipe interpreter.

Families built here:

* split metacyclic groups D_c = <x, y> with [x, y] = x^p,
* maximal-class groups M_c: a cyclic top of order p acting on the
  truncated cyclotomic integers by multiplication by a root of unity,
* semidirect products of a homocyclic group by a cyclic rotation-like
  automorphism, plus the index-lowering subgroups,
* the largest 2-generator group of exponent p and class k <= 4, realized
  as a free nilpotent Lie ring with truncated BCH multiplication,
* diagonal central quotients and the indecomposable combinations of the
  above.

Every constructor returns a FiniteGroup over flat integer tuples;
descriptions (JSON-shaped dicts) are interpreted by
``build_from_description``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .cyclo import mc_bottom, ring_make
from .errors import (
    BadParameters,
    InternalInconsistency,
    NotCentral,
    ParseError,
    PthPowerViolation,
    WrongOrder,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    SubgroupGroup,
    commutator,
    direct_product,
    element_order,
    is_pth_power,
    quotient_group,
    subgroup_closure,
)
from .linalg import ModMatrix, matrix_power_order


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise BadParameters(f"p = {p} is not prime")


class SemidirectGroup(FiniteGroup):
    """Cyclic top of order ``top_order`` acting on an abelian bottom.

    Elements are (t, v_1, ..., v_r): the element top^t * bottom_v.  The
    action is a row-convention matrix applied with per-coordinate moduli,
    so mixed invariant factors (e.g. Z/9 x Z/3) are supported.  All action
    powers are precomputed.
    """

    def __init__(
        self,
        p,
        top_order,
        bottom_moduli,
        action_rows,
        generators,
        named=None,
        description="",
    ):
        _check_prime(p)
        mods = tuple(int(m) for m in bottom_moduli)
        rank = len(mods)
        if top_order < 1:
            raise BadParameters("top order must be >= 1")
        rows = tuple(
            tuple(int(x) % mods[j] for j, x in enumerate(row)) for row in action_rows
        )
        if len(rows) != rank or any(len(r) != rank for r in rows):
            raise BadParameters("action matrix must be rank x rank")
        for i in range(rank):
            for j in range(rank):
                if (mods[i] * rows[i][j]) % mods[j]:
                    raise InternalInconsistency("action is not well defined on the bottom")
        # invertibility mod p
        if rank and _det_mod_p(rows, p) == 0:
            raise BadParameters("action matrix is singular mod p")

        self.top_order = top_order
        self._mods = mods
        self._rank = rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
        pows = [ident]
        for _ in range(top_order - 1):
            pows.append(_compose(pows[-1], rows, mods, rank))
        if top_order > 1 and _compose(pows[-1], rows, mods, rank) != ident:
            raise BadParameters("action order does not divide the top order")
        self._pows = tuple(pows)

        order = top_order
        for m in mods:
            order *= m
        self._init_group(
            p,
            (0,) * (rank + 1),
            (top_order,) + mods,
            generators,
            named=named,
            known_order=order,
            description=description,
        )

    def multiply(self, a, b):
        t2 = b[0]
        M = self._pows[t2]
        mods = self._mods
        out = [(a[0] + t2) % self.top_order]
        for j in range(self._rank):
            s = b[j + 1]
            for i in range(self._rank):
                s += a[i + 1] * M[i][j]
            out.append(s % mods[j])
        return tuple(out)

    def invert(self, a):
        ti = (self.top_order - a[0]) % self.top_order
        M = self._pows[ti]
        mods = self._mods
        out = [ti]
        for j in range(self._rank):
            s = 0
            for i in range(self._rank):
                s -= a[i + 1] * M[i][j]
            out.append(s % mods[j])
        return tuple(out)

    def bottom_element(self, v):
        return (0,) + tuple(int(x) % m for x, m in zip(v, self._mods))


def _compose(A, B, mods, rank):
    return tuple(
        tuple(
            sum(A[i][k] * B[k][j] for k in range(rank)) % mods[j] for j in range(rank)
        )
        for i in range(rank)
    )


def _det_mod_p(rows, p):
    a = [[x % p for x in row] for row in rows]
    n = len(a)
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


def make_cyclic(p: int, e: int, name: str = "d") -> SemidirectGroup:
    """Cyclic group of order p^e with a single named generator."""
    _check_prime(p)
    if e < 1:
        raise BadParameters("e must be >= 1")
    return SemidirectGroup(
        p,
        1,
        (p**e,),
        ((1,),),
        [(name, (0, 1))],
        description=f"C{p**e}",
    )


def make_Dc(p: int, c: int) -> SemidirectGroup:
    """Split metacyclic group <x, y : x^(p^c), y^(p^c), [x, y] = x^p>.

    For p = 2 the top has order 2^(c-1) and the action is x -> x^3; the
    pair (2, 2) is rejected because the resulting dihedral group of order 8
    does not have Omega_1 = Z, which every group of this family must.
    """
    _check_prime(p)
    if p == 2:
        if c < 3:
            raise BadParameters("Dc for p = 2 requires c >= 3")
        top = 2 ** (c - 1)
        mult = 3
    else:
        if c < 2:
            raise BadParameters("Dc requires c >= 2")
        top = p**c
        mult = 1 + p
    mod = p**c
    return SemidirectGroup(
        p,
        top,
        (mod,),
        ((mult % mod,),),
        [("x", (0, 1)), ("y", (1, 0))],
        description=f"Dc({p},{c})",
    )


def make_Mc(p: int, c: int, max_order: int = DEFAULT_MAX_ORDER) -> SemidirectGroup:
    """Maximal-class group of order p^(c+1).

    A cyclic top of order p acts on the additive group of the truncated
    cyclotomic ring modulo its c-th ideal power, by multiplication with the
    root of unity.  The images of the descending unit chain are exposed as
    named elements "s1" ... "sc".
    """
    _check_prime(p)
    if c < 2:
        raise BadParameters("Mc requires c >= 2")
    R = ring_make(p, c, max_order=max_order)
    inv, action = mc_bottom(R)
    rank = inv.rank
    named = {}
    for j in range(1, c + 1):
        coords = inv.to_canonical(R.s_element(j).coeffs)
        named[f"s{j}"] = (0,) + tuple(coords)
    a = (1,) + (0,) * rank
    G = SemidirectGroup(
        p,
        p,
        inv.exponents,
        action.entries,
        [("a", a), ("s1", named["s1"])],
        named=named,
        description=f"Mc({p},{c})",
    )
    G.ring = R
    G.bottom_invariants = inv
    return G


def make_homocyclic(p: int, k: int, e: int, s: int, max_order: int = DEFAULT_MAX_ORDER):
    """Semidirect product of (Z/p^e)^k by the cycle-with-p-twist action.

    The action sends a_i to a_i * a_(i+1) for i < k and a_k to a_k * a_1^p;
    the top generator b has order p times the action order.  For s > 0 the
    returned group is the subgroup generated by a_1^p ... a_s^p,
    a_(s+1) ... a_k and b, which lowers the class from k*e to k*e - s.
    """
    _check_prime(p)
    if not (1 <= k <= p - 1):
        raise BadParameters("k must satisfy 1 <= k <= p - 1")
    if e < 1 or not (0 <= s < k):
        raise BadParameters("need e >= 1 and 0 <= s < k")
    mod = p**e
    rows = []
    for i in range(k):
        row = [0] * k
        row[i] = 1
        if i + 1 < k:
            row[i + 1] = 1
        else:
            row[0] = (row[0] + p) % mod
        rows.append(row)
    m = matrix_power_order(ModMatrix(p, e, rows))
    top = p * m
    gens = [(f"a{i + 1}", (0,) + tuple(1 if j == i else 0 for j in range(k))) for i in range(k)]
    gens.append(("b", (1,) + (0,) * k))
    G0 = SemidirectGroup(
        p,
        top,
        (mod,) * k,
        rows,
        gens,
        description=f"homocyclic({p},{k},{e},0)",
    )
    if s == 0:
        return G0
    sub_gens = []
    for i in range(k):
        g = G0.named_elements[f"a{i + 1}"]
        if i < s:
            g = G0.power(g, p)
        sub_gens.append((f"a{i + 1}", g))
    sub_gens.append(("b", G0.named_elements["b"]))
    carrier = subgroup_closure(G0, [g for _, g in sub_gens], max_order)
    return SubgroupGroup(
        G0, carrier.as_set, sub_gens, description=f"homocyclic({p},{k},{e},{s})"
    )


# Hall basis of the free Lie ring on two generators, up to weight 4.
# Index : element                 weight
#   0   : x                        1
#   1   : y                        1
#   2   : [x,y]                    2
#   3   : [x,y,x]                  3
#   4   : [x,y,y]                  3
#   5   : [x,y,x,x]                4
#   6   : [x,y,x,y]  (=[x,y,y,x])  4
#   7   : [x,y,y,y]                4
_HALL_WEIGHTS = (1, 1, 2, 3, 3, 4, 4, 4)
_HALL_DIMS = {1: 2, 2: 3, 3: 5, 4: 8}
_BRACKETS = {
    (0, 1): ((1, 2),),
    (0, 2): ((-1, 3),),
    (1, 2): ((-1, 4),),
    (0, 3): ((-1, 5),),
    (0, 4): ((-1, 6),),
    (1, 3): ((-1, 6),),
    (1, 4): ((-1, 7),),
}


class LieBCHGroup(FiniteGroup):
    """Largest 2-generator group of exponent p and class k (2 <= k <= 4).

    Elements are vectors of a free nilpotent Lie ring of rank 2 over F_p in
    the Hall basis; the group product is the BCH series truncated at weight
    k, whose denominators 2, 12, 24 are invertible because k < p.  Every
    nonidentity element has order p, and inversion is negation.
    """

    def __init__(self, p: int, k: int):
        _check_prime(p)
        if not (2 <= k <= min(p - 1, 4)):
            raise BadParameters("k must satisfy 2 <= k <= min(p - 1, 4)")
        dim = _HALL_DIMS[k]
        self.klass = k
        self._dim = dim
        table = {}
        for (i, j), terms in _BRACKETS.items():
            if i < dim and j < dim:
                kept = tuple((c, t) for c, t in terms if t < dim)
                if kept:
                    table[(i, j)] = kept
        self._table = table
        self._half = pow(2, -1, p)
        self._twelfth = pow(12, -1, p) if k >= 3 else 0
        self._twenty4th = pow(24, -1, p) if k >= 4 else 0
        gens = [
            ("s", tuple(1 if i == 0 else 0 for i in range(dim))),
            ("t", tuple(1 if i == 1 else 0 for i in range(dim))),
        ]
        self._init_group(
            p,
            (0,) * dim,
            (p,) * dim,
            gens,
            known_order=p**dim,
            description=f"B2({p},{k})",
        )

    def bracket(self, u, v):
        p = self.prime
        out = [0] * self._dim
        table = self._table
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj or i == j:
                    continue
                if i < j:
                    terms = table.get((i, j))
                    sign = 1
                else:
                    terms = table.get((j, i))
                    sign = -1
                if terms:
                    c0 = sign * ui * vj
                    for coef, t in terms:
                        out[t] = (out[t] + c0 * coef) % p
        return tuple(out)

    def multiply(self, a, b):
        p = self.prime
        ab = self.bracket(a, b)
        out = [(x + y + self._half * z) % p for x, y, z in zip(a, b, ab)]
        if self.klass >= 3:
            a_ab = self.bracket(a, ab)
            b_ab = self.bracket(b, ab)
            tw = self._twelfth
            out = [(x + tw * (u - v)) % p for x, u, v in zip(out, a_ab, b_ab)]
            if self.klass >= 4:
                b_a_ab = self.bracket(b, a_ab)
                t4 = self._twenty4th
                out = [(x - t4 * w) % p for x, w in zip(out, b_a_ab)]
        return tuple(out)

    def invert(self, a):
        p = self.prime
        return tuple((-x) % p for x in a)


def make_B2(p: int, k: int) -> LieBCHGroup:
    return LieBCHGroup(p, k)


def central_quotient_diagonal(
    G1: FiniteGroup,
    G2: FiniteGroup,
    z1,
    z2,
    max_order: int = DEFAULT_MAX_ORDER,
    description: str = "",
):
    """Quotient of G1 x G2 by the diagonal central subgroup <(z1, z2)>.

    Each z_i must be central of order exactly p in its factor.
    """
    p = G1.prime
    for G, z in ((G1, tuple(z1)), (G2, tuple(z2))):
        for _, g in G.generators:
            if G.multiply(z, g) != G.multiply(g, z):
                raise NotCentral(f"{z} is not central in {G!r}")
        if element_order(G, z) != p:
            raise WrongOrder(f"{z} does not have order {p}")
    P = direct_product([G1, G2])
    z = tuple(z1) + tuple(z2)
    N = subgroup_closure(P, [z], max_order)
    return quotient_group(P, N, max_order)


def make_second_example(
    p: int, k: int, c: int, max_order: int = DEFAULT_MAX_ORDER
):
    """Indecomposable group of class c with spectrum {1, ..., k}.

    Central quotient of Dc(p, c) x B2(p, k) by the diagonal subgroup
    generated by x^(p^(c-1)) * d, where d is the left-normed weight-k
    commutator [t, s, ..., s] of the exponent-p factor.  The diagonal
    element is never a p-th power because d is nontrivial and the second
    factor has exponent p.
    """
    if not (2 <= k <= min(p - 1, 4)):
        raise BadParameters("k must satisfy 2 <= k <= min(p - 1, 4)")
    if c < k:
        raise BadParameters("need c >= k")
    G1 = make_Dc(p, c)
    G2 = make_B2(p, k)
    d = G2.named_elements["t"]
    s = G2.named_elements["s"]
    for _ in range(k - 1):
        d = commutator(G2, d, s)
    if d == G2.identity:
        raise BadParameters("weight-k commutator is trivial; quotient would be degenerate")
    z1 = G1.power(G1.named_elements["x"], p ** (c - 1))
    P = direct_product([G1, G2])
    z = z1 + d
    if is_pth_power(P, z, max_order):
        raise PthPowerViolation("diagonal element is a p-th power")
    Q = central_quotient_diagonal(G1, G2, z1, d, max_order)
    Q.description = f"second_example({p},{k},{c})"
    return Q


def _check_partb_params(p, cs, c):
    _check_prime(p)
    cs = list(cs)
    if not cs or any(cs[i] >= cs[i + 1] for i in range(len(cs) - 1)):
        raise BadParameters("cs must be strictly increasing")
    if cs[0] < p or cs[-1] > c:
        raise BadParameters("need p <= c_1 < ... < c_n <= c")
    return cs


def make_partb_decomposable(p, cs, c, max_order: int = DEFAULT_MAX_ORDER):
    """Product of maximal-class groups with one metacyclic factor.

    The metacyclic factor of class c is dropped when c equals the largest
    maximal-class parameter, where it would be redundant for the spectrum.
    """
    cs = _check_partb_params(p, cs, c)
    factors = [make_Mc(p, ci, max_order) for ci in cs]
    if c != cs[-1]:
        factors.append(make_Dc(p, c))
    if len(factors) == 1:
        return factors[0]
    H = direct_product(factors, description=f"partb_dec({p},{cs},{c})")
    return H


def make_partb_indecomposable(p, cs, c, max_order: int = DEFAULT_MAX_ORDER):
    """Index-p subgroup of the decomposable product that is indecomposable.

    Generated by the diagonal element a = (a_1, ..., a_n, y) together with
    the embedded nonabelian maximal subgroups X_i = <x_i, gamma_2(M_i)>
    (with x_i = a_i * s_1) and the embedded maximal subgroup <x, y^p> of
    the metacyclic factor.  When n = 1 and c_1 = c = p the construction
    degenerates and the maximal-class group itself is returned.
    """
    cs = _check_partb_params(p, cs, c)
    if c < 3:
        raise BadParameters("need c >= 3")
    if len(cs) == 1 and cs[0] == c == p:
        return make_Mc(p, p, max_order)
    n = len(cs)
    factors = [make_Mc(p, ci, max_order) for ci in cs] + [make_Dc(p, c)]
    H = direct_product(factors, description=f"partb_dec({p},{cs},{c})")

    a = H.identity
    for i in range(n):
        a = H.multiply(a, H.named_elements[f"f{i}.a"])
    a = H.multiply(a, H.named_elements[f"f{n}.y"])

    gens = [("a", a)]
    for i, ci in enumerate(cs):
        M = factors[i]
        xi = M.multiply(M.named_elements["a"], M.named_elements["s1"])
        gens.append((f"x{i + 1}", H.embed(i, xi)))
        for j in range(2, ci + 1):
            gens.append((f"t{i + 1}_{j}", H.embed(i, M.named_elements[f"s{j}"])))
    D = factors[n]
    gens.append(("x", H.embed(n, D.named_elements["x"])))
    gens.append(("yp", H.embed(n, D.power(D.named_elements["y"], p))))

    carrier = subgroup_closure(H, [g for _, g in gens], max_order)
    return SubgroupGroup(
        H, carrier.as_set, gens, description=f"partb_indec({p},{cs},{c})"
    )


# description parsing


@dataclass(frozen=True)
class GroupDescription:
    """Validated recipe tree: a family leaf or a product/quotient node."""

    kind: str
    params: dict = field(default_factory=dict)
    factors: tuple = ()
    inner: "GroupDescription | None" = None
    word: str = ""


_FAMILY_PARAMS = {
    "Mc": ("p", "c"),
    "Dc": ("p", "c"),
    "homocyclic": ("p", "k", "e", "s"),
    "B2": ("p", "k"),
    "second_example": ("p", "k", "c"),
    "cyclic": ("p", "e"),
}

_TERM_RE = re.compile(r"((?:f\d+\.)*[a-z][a-zA-Z0-9_]*)(?:\^(-?\d+))?\Z")


def parse_description(obj) -> GroupDescription:
    if isinstance(obj, GroupDescription):
        return obj
    if not isinstance(obj, dict):
        raise ParseError(f"description must be an object, got {type(obj).__name__}")
    if "family" in obj:
        fam = obj["family"]
        if fam == "partb":
            for key in ("p", "cs", "c"):
                if key not in obj:
                    raise ParseError(f"partb is missing parameter {key!r}")
            cs = obj["cs"]
            if not isinstance(cs, list) or not all(isinstance(x, int) for x in cs):
                raise ParseError("partb parameter 'cs' must be a list of integers")
            params = {
                "p": _int_param(obj, "p"),
                "cs": tuple(cs),
                "c": _int_param(obj, "c"),
                "indecomposable": bool(obj.get("indecomposable", False)),
            }
            return GroupDescription("partb", params)
        if fam not in _FAMILY_PARAMS:
            raise ParseError(f"unknown family {fam!r}")
        params = {key: _int_param(obj, key) for key in _FAMILY_PARAMS[fam]}
        return GroupDescription(fam, params)
    if obj.get("op") == "product":
        factors = obj.get("factors")
        if not isinstance(factors, list) or not factors:
            raise ParseError("product requires a nonempty 'factors' list")
        return GroupDescription("product", factors=tuple(parse_description(f) for f in factors))
    if obj.get("op") == "central_quotient":
        if "group" not in obj or "word" not in obj:
            raise ParseError("central_quotient requires 'group' and 'word'")
        word = obj["word"]
        if not isinstance(word, str):
            raise ParseError("'word' must be a string")
        return GroupDescription(
            "central_quotient", inner=parse_description(obj["group"]), word=word
        )
    raise ParseError("description must have a 'family' or a recognized 'op'")


def _int_param(obj, key):
    if key not in obj:
        raise ParseError(f"missing parameter {key!r}")
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(f"parameter {key!r} must be an integer")
    return v


def evaluate_word(G: FiniteGroup, word: str):
    """Evaluate a generator word like "f0.x^3*f1.d" in G's named elements."""
    if not word or any(ch.isspace() for ch in word):
        raise ParseError("words must be nonempty and contain no whitespace")
    out = G.identity
    for term in word.split("*"):
        m = _TERM_RE.match(term)
        if not m:
            raise ParseError(f"bad term {term!r}")
        name, exp = m.group(1), m.group(2)
        if name not in G.named_elements:
            raise ParseError(f"unknown generator {name!r}")
        g = G.named_elements[name]
        if exp is not None:
            g = G.power(g, int(exp))
        out = G.multiply(out, g)
    return out


def build_from_description(desc, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Construct the group a description denotes; see parse_description."""
    d = parse_description(desc)
    if d.kind == "Mc":
        return make_Mc(d.params["p"], d.params["c"], max_order)
    if d.kind == "Dc":
        return make_Dc(d.params["p"], d.params["c"])
    if d.kind == "homocyclic":
        return make_homocyclic(
            d.params["p"], d.params["k"], d.params["e"], d.params["s"], max_order
        )
    if d.kind == "B2":
        return make_B2(d.params["p"], d.params["k"])
    if d.kind == "second_example":
        return make_second_example(d.params["p"], d.params["k"], d.params["c"], max_order)
    if d.kind == "cyclic":
        return make_cyclic(d.params["p"], d.params["e"])
    if d.kind == "partb":
        maker = (
            make_partb_indecomposable
            if d.params["indecomposable"]
            else make_partb_decomposable
        )
        return maker(d.params["p"], list(d.params["cs"]), d.params["c"], max_order)
    if d.kind == "product":
        return direct_product([build_from_description(f, max_order) for f in d.factors])
    if d.kind == "central_quotient":
        G = build_from_description(d.inner, max_order)
        z = evaluate_word(G, d.word)
        for _, g in G.generators:
            if G.multiply(z, g) != G.multiply(g, z):
                raise NotCentral("quotient word does not evaluate to a central element")
        if element_order(G, z) != G.prime:
            raise WrongOrder("quotient word must have order exactly p")
        N = subgroup_closure(G, [z], max_order)
        return quotient_group(G, N, max_order)
    raise ParseError(f"unhandled description kind {d.kind!r}")
