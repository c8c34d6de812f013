"""Executable verifiers for the structural claims the toolkit is built on.

Each verifier recomputes a claim from scratch on concrete groups and
returns a small report with a pass flag and witnesses.  ``run_paper_suite``
bundles every check, including seeded randomized recipes, into one
deterministic battery whose records are ordered by check name.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product as iter_product

from .constructions import (
    build_from_description,
    central_quotient_diagonal,
    make_B2,
    make_Dc,
    make_Mc,
    make_cyclic,
    make_homocyclic,
    make_partb_decomposable,
    make_partb_indecomposable,
    make_second_example,
)
from .cyclo import eq_powers_witness, ring_make
from .errors import PreconditionFailed, ResourceLimit, ToolkitError
from .groups import (
    DEFAULT_DECOMPOSE_BOUND,
    DEFAULT_MAX_ORDER,
    EnumeratedSubgroup,
    FiniteGroup,
    center,
    commutator,
    direct_factor_search,
    direct_product,
    element_order,
    enumerate_group,
    generated_by_order_p,
    is_pth_power,
    subgroup_closure,
)
from .series import (
    CentralSeriesChain,
    is_central_series,
    lower_central_series,
    nilpotence_class,
    satisfies_ucs_characterization,
    spectrum,
    upper_central_series,
)

DEFAULT_SEED = 20240601
_EXHAUSTIVE_PAIRS = 2_000_000


def _order_p_elements(G: FiniteGroup, max_order=None):
    E = enumerate_group(G, max_order)
    p = G.prime
    identity = G.identity
    mult = G.multiply
    out = []
    for g in E.elements:
        if g == identity:
            continue
        x = g
        for _ in range(p - 1):
            x = mult(x, g)
        if x == identity:
            out.append(g)
    return out


def verify_theorem_part1(G: FiniteGroup, max_order=None) -> dict:
    """Spectrum containing k >= 2 must contain all of 1 .. min(k, p-1)."""
    sp = spectrum(G, max_order)
    have = set(sp.spectrum)
    violations = []
    for k in sp.spectrum:
        if k < 2:
            continue
        missing = sorted(set(range(1, min(k, G.prime - 1) + 1)) - have)
        if missing:
            violations.append({"k": k, "missing": missing})
    return {
        "passed": not violations,
        "spectrum": list(sp.spectrum),
        "class": sp.klass,
        "violations": violations,
    }


def verify_lemma2(G: FiniteGroup, max_order=None) -> dict:
    """Odd p, nonabelian, generated by order-p elements: some order-p
    element lies in the second layer of the upper central series."""
    E = enumerate_group(G, max_order)
    abelian = len(center(G, max_order)) == len(E)
    applicable = G.prime != 2 and not abelian and generated_by_order_p(G, max_order)
    if not applicable:
        return {"applicable": False, "passed": True, "witness": None}
    chain = upper_central_series(G, max_order)
    z1, z2 = chain.terms[1].as_set, chain.terms[2].as_set
    witness = next((g for g in _order_p_elements(G, max_order) if g in z2 and g not in z1), None)
    return {"applicable": True, "passed": witness is not None, "witness": witness}


def find_question_witness(G: FiniteGroup, max_order=None):
    """First pair of non-commuting order-p elements whose product has order p.

    Scans element pairs in canonical order; returns None when no such pair
    exists (as for dihedral 2-groups).
    """
    mult = G.multiply
    identity = G.identity
    p = G.prime
    elems = _order_p_elements(G, max_order)
    for x in elems:
        for y in elems:
            xy = mult(x, y)
            if xy == mult(y, x):
                continue
            if G.power(xy, p) == identity:
                return (x, y)
    return None


def verify_regularity_power(
    G: FiniteGroup,
    max_order=None,
    sample_pairs: int = 10_000,
    seed: int = DEFAULT_SEED,
) -> dict:
    """In a group of class at most p-1, [x, y]^p = 1 whenever x^p = 1.

    Exhaustive when the pair count is small; otherwise checks
    ``sample_pairs`` seeded random pairs.
    """
    p = G.prime
    cls = nilpotence_class(G, max_order)
    if cls > p - 1:
        raise PreconditionFailed(f"class {cls} exceeds p - 1 = {p - 1}")
    elems = enumerate_group(G, max_order).elements
    small = _order_p_elements(G, max_order)
    identity = G.identity
    exhaustive = len(small) * len(elems) <= _EXHAUSTIVE_PAIRS
    if exhaustive:
        pairs = ((x, y) for x in small for y in elems)
        checked = len(small) * len(elems)
    else:
        rng = random.Random(seed)
        pairs = (
            (small[rng.randrange(len(small))], elems[rng.randrange(len(elems))])
            for _ in range(sample_pairs)
        )
        checked = sample_pairs
    for x, y in pairs:
        c = commutator(G, x, y)
        if G.power(c, p) != identity:
            return {"passed": False, "counterexample": (x, y), "exhaustive": exhaustive, "pairs": checked}
    return {"passed": True, "counterexample": None, "exhaustive": exhaustive, "pairs": checked}


def verify_product_spectrum(G1: FiniteGroup, G2: FiniteGroup, max_order=None) -> dict:
    """Spectrum of a product is the union; class is the maximum."""
    if len(enumerate_group(G1, max_order)) == 1 or len(enumerate_group(G2, max_order)) == 1:
        raise PreconditionFailed("both factors must be nontrivial")
    s1 = spectrum(G1, max_order)
    s2 = spectrum(G2, max_order)
    P = direct_product([G1, G2])
    sp = spectrum(P, max_order)
    want = tuple(sorted(set(s1.spectrum) | set(s2.spectrum)))
    return {
        "passed": sp.spectrum == want and sp.klass == max(s1.klass, s2.klass),
        "left": list(s1.spectrum),
        "right": list(s2.spectrum),
        "product": list(sp.spectrum),
        "class": sp.klass,
    }


def verify_prop_same(G1, G2, z1, z2, max_order=None, sample: int = 2000, seed: int = DEFAULT_SEED) -> dict:
    """Diagonal central quotient preserves class and spectrum.

    Requires z1 * z2 not to be a p-th power in the product; when it is, a
    PreconditionFailed is raised carrying the unguarded quotient's spectrum
    so callers can report how the conclusion fails.  The layer sub-lemma
    (image in Z_n(Q) iff both coordinates lie in Z_n) is checked on all
    elements for |Q| <= 729 and on seeded samples above.
    """
    p = G1.prime
    P = direct_product([G1, G2])
    z = tuple(z1) + tuple(z2)
    g_class = nilpotence_class(P, max_order)
    g_spec = spectrum(P, max_order)
    if is_pth_power(P, z, max_order):
        Q = central_quotient_diagonal(G1, G2, z1, z2, max_order or DEFAULT_MAX_ORDER)
        q_spec = spectrum(Q, max_order)
        raise PreconditionFailed(
            "z1*z2 is a p-th power",
            report={
                "quotient_spectrum": list(q_spec.spectrum),
                "quotient_class": q_spec.klass,
                "product_spectrum": list(g_spec.spectrum),
                "product_class": g_class,
            },
        )
    Q = central_quotient_diagonal(G1, G2, z1, z2, max_order or DEFAULT_MAX_ORDER)
    q_spec = spectrum(Q, max_order)
    chain_q = upper_central_series(Q, max_order)
    chain_1 = upper_central_series(G1, max_order)
    chain_2 = upper_central_series(G2, max_order)
    depth = max(len(chain_q.terms), len(chain_1.terms), len(chain_2.terms))

    def z_term(chain, n):
        return chain.terms[min(n, len(chain.terms) - 1)].as_set

    elems = enumerate_group(P, max_order).elements
    if len(elems) <= 729 * p:
        tested = elems
    else:
        rng = random.Random(seed)
        tested = [elems[rng.randrange(len(elems))] for _ in range(sample)]
    w1 = len(G1.identity)
    sublemma = True
    for g in tested:
        x1, x2 = g[:w1], g[w1:]
        img = Q.project(g)
        for n in range(1, depth):
            both = x1 in z_term(chain_1, n) and x2 in z_term(chain_2, n)
            if (img in z_term(chain_q, n)) != both:
                sublemma = False
                break
        if not sublemma:
            break
    passed = (
        q_spec.klass == g_class
        and q_spec.spectrum == g_spec.spectrum
        and sublemma
    )
    return {
        "passed": passed,
        "class": q_spec.klass,
        "spectrum": list(q_spec.spectrum),
        "product_spectrum": list(g_spec.spectrum),
        "sublemma": sublemma,
        "elements_tested": len(tested),
    }


def verify_lemma_fact(p: int, c: int, max_order=None) -> dict:
    """Every element outside the abelian bottom of Mc has order exactly p."""
    M = make_Mc(p, c, max_order or DEFAULT_MAX_ORDER)
    E = enumerate_group(M, max_order)
    outside = [g for g in E.elements if g[0] != 0]
    bad = [g for g in outside if element_order(M, g) != p]
    return {"passed": not bad, "outside": len(outside), "bad": bad}


def verify_eq_powers(p: int, c: int, max_order=None) -> dict:
    """The (p-1)-fold commutator with the top generator multiplies by p*zeta.

    Checks, for every k with k + p - 1 <= c, that the left-normed
    commutator [s_k, a, ..., a] equals s_(k+p-1) and equals p * zeta * s_k
    in bottom coordinates, exactly.
    """
    if c < p:
        raise PreconditionFailed("need c >= p so that k + p - 1 <= c has solutions")
    M = make_Mc(p, c, max_order or DEFAULT_MAX_ORDER)
    R = M.ring
    inv = M.bottom_invariants
    zeta = eq_powers_witness(R)
    a = M.named_elements["a"]
    checked = []
    ok = True
    for k in range(1, c - p + 2):
        t = M.named_elements[f"s{k}"]
        for _ in range(p - 1):
            t = commutator(M, t, a)
        target = M.named_elements[f"s{k + p - 1}"]
        ring_side = R.scalar(p, R.mul(zeta, R.s_element(k)))
        coords = (0,) + tuple(inv.to_canonical(ring_side.coeffs))
        good = t == target == coords
        checked.append({"k": k, "passed": good})
        ok = ok and good
    return {"passed": ok, "checked": checked}


def _expected_partb_spectrum(p, cs):
    return tuple(sorted(set(range(1, p)) | set(cs)))


def verify_partb_structure(p, cs, c, max_order=None, decompose_bound=None) -> dict:
    """Structural checks for the indecomposable subgroup construction.

    The subgroup has index p^n in the ambient product (one p per
    maximal-class factor), the embedded product of maximal subgroups is
    maximal in it, lower-central terms split factor by factor, the centers
    agree, and a^p is the embedded y^p.  For the degenerate single-factor
    case the group itself is checked for class and spectrum.
    """
    G = make_partb_indecomposable(p, cs, c, max_order or DEFAULT_MAX_ORDER)
    sp = spectrum(G, max_order)
    want_spec = _expected_partb_spectrum(p, cs)
    checks = {
        "class": sp.klass == c,
        "spectrum": sp.spectrum == want_spec,
    }
    report = {
        "spectrum": list(sp.spectrum),
        "expected_spectrum": list(want_spec),
        "class": sp.klass,
        "order": len(enumerate_group(G, max_order)),
    }
    if not hasattr(G, "parent"):
        report["reduced"] = True
        report["checks"] = checks
        report["passed"] = all(checks.values())
        return report

    H = G.parent
    n = len(cs)
    EH = enumerate_group(H, max_order)
    EG = enumerate_group(G, max_order)
    checks["index"] = len(EH) == len(EG) * p**n
    report["index_in_H"] = len(EH) // len(EG)

    u_gens = [g for name, g in G.generators if name != "a"]
    U = subgroup_closure(H, u_gens, max_order)
    checks["maximal_subgroup"] = len(EG) == p * len(U)

    checks["a_pth_power"] = G.power(G.named_elements["a"], p) == G.named_elements["yp"]

    zg = center(G, max_order)
    zh = center(H, max_order)
    checks["same_center"] = zg.as_set == zh.as_set

    lcs_g = lower_central_series(G, max_order)
    factor_lcs = [lower_central_series(f, max_order) for f in H.factors]
    gammas_ok = True
    for k in range(2, c + 1):
        parts = []
        for f, ch in zip(H.factors, factor_lcs):
            desc = tuple(reversed(ch.terms))  # gamma_1, gamma_2, ...
            term = desc[k - 1].as_set if k - 1 < len(desc) else {f.identity}
            parts.append(term)
        want = {tuple(x for piece in combo for x in piece) for combo in iter_product(*parts)}
        desc_g = tuple(reversed(lcs_g.terms))
        have = desc_g[k - 1].as_set if k - 1 < len(desc_g) else {G.identity}
        if want != have:
            gammas_ok = False
            break
    checks["gammas"] = gammas_ok

    report["checks"] = checks
    report["passed"] = all(checks.values())
    return report


# randomized recipes


def _recipe_pool(p):
    if p == 2:
        fams = [
            ({"family": "Mc", "p": 2, "c": c}, 2 ** (c + 1), f"s{c}") for c in (2, 3, 4)
        ] + [
            ({"family": "Dc", "p": 2, "c": c}, 2 ** (2 * c - 1), f"x^{2 ** (c - 1)}")
            for c in (3, 4)
        ] + [
            ({"family": "cyclic", "p": 2, "e": e}, 2**e, f"d^{2 ** (e - 1)}") for e in (1, 2, 3)
        ] + [
            ({"family": "homocyclic", "p": 2, "k": 1, "e": 3, "s": 0}, 32, None)
        ]
    elif p == 3:
        fams = [
            ({"family": "Mc", "p": 3, "c": c}, 3 ** (c + 1), f"s{c}") for c in (2, 3, 4)
        ] + [
            ({"family": "Dc", "p": 3, "c": c}, 3 ** (2 * c), f"x^{3 ** (c - 1)}") for c in (2, 3)
        ] + [
            ({"family": "B2", "p": 3, "k": 2}, 27, None),
            ({"family": "cyclic", "p": 3, "e": 1}, 3, "d"),
            ({"family": "cyclic", "p": 3, "e": 2}, 9, "d^3"),
            ({"family": "homocyclic", "p": 3, "k": 2, "e": 1, "s": 0}, 81, None),
        ]
    else:
        fams = [
            ({"family": "Mc", "p": 5, "c": 2}, 125, "s2"),
            ({"family": "Mc", "p": 5, "c": 3}, 625, "s3"),
            ({"family": "Dc", "p": 5, "c": 2}, 5**4, "x^5"),
            ({"family": "B2", "p": 5, "k": 2}, 125, None),
            ({"family": "B2", "p": 5, "k": 3}, 5**5, None),
            ({"family": "cyclic", "p": 5, "e": 2}, 25, "d^5"),
        ]
    return fams


def random_recipes(seed: int, count: int, order_cap: int = 200_000):
    """Seeded random product/central-quotient descriptions, order <= cap."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = (2, 3, 5)[rng.randrange(3)]
        pool = _recipe_pool(p)
        nf = 2 + rng.randrange(2)
        picks = [pool[rng.randrange(len(pool))] for _ in range(nf)]
        order = 1
        for _, o, _ in picks:
            order *= o
        if order > order_cap:
            continue
        desc = {"op": "product", "factors": [d for d, _, _ in picks]}
        words = [w for _, _, w in picks[:2]]
        if all(words) and rng.randrange(2):
            desc = {
                "op": "central_quotient",
                "group": desc,
                "word": f"f0.{words[0]}*f1.{words[1]}",
            }
        out.append(desc)
    return out


# the suite


@dataclass
class CheckRecord:
    check: str
    params: dict
    passed: bool
    witness: object = None
    details: dict = field(default_factory=dict)
    millis: int = 0
    error: str | None = None

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "check": self.check,
            "params": self.params,
            "pass": self.passed,
            "millis": self.millis if timings else 0,
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.details:
            out["details"] = _jsonable(self.details)
        if self.error is not None:
            out["error"] = self.error
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    return x


@dataclass
class SuiteReport:
    seed: int
    records: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def exit_status(self) -> int:
        if any(r.error == "ResourceLimit" for r in self.records):
            return 3
        return 0 if self.passed else 1

    def counts(self) -> dict:
        return {
            "total": len(self.records),
            "passed": sum(r.passed for r in self.records),
            "failed": sum(not r.passed for r in self.records),
            "errors": sum(r.error is not None for r in self.records),
        }

    def as_dict(self, timings: bool = False) -> dict:
        return {
            "seed": self.seed,
            "counts": self.counts(),
            "pass": self.passed,
            "records": [r.as_dict(timings) for r in self.records],
        }


def _mc_expected_spectrum(p, c):
    return tuple(sorted(set(range(1, min(c - 1, p - 1) + 1)) | {c}))


def _suite_checks(max_order, decompose_bound, seed, random_count):
    """Yield (name, params, thunk) triples; thunks return (passed, witness, details)."""
    checks = []

    def add(name, params, thunk):
        checks.append((name, params, thunk))

    for p, c in [(3, 2), (3, 3), (5, 2), (2, 3), (2, 4)]:
        def t(p=p, c=c):
            sp = spectrum(make_Dc(p, c), max_order)
            return sp.spectrum == (1,), None, {"spectrum": list(sp.spectrum)}

        add("dc_spectrum", {"p": p, "c": c}, t)

    for p, c in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3)]:
        def t(p=p, c=c):
            sp = spectrum(make_Mc(p, c, max_order), max_order)
            want = _mc_expected_spectrum(p, c)
            return sp.spectrum == want, None, {"spectrum": list(sp.spectrum), "expected": list(want)}

        add("mc_spectrum", {"p": p, "c": c}, t)

    family_descs = (
        [{"family": "Dc", "p": p, "c": c} for p, c in [(3, 2), (3, 3), (5, 2), (2, 3), (2, 4)]]
        + [{"family": "Mc", "p": p, "c": c} for p, c in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (5, 2)]]
        + [{"family": "B2", "p": 3, "k": 2}, {"family": "B2", "p": 5, "k": 2}]
        + [{"family": "homocyclic", "p": 3, "k": 2, "e": 1, "s": 0}]
        + [{"family": "second_example", "p": 3, "k": 2, "c": 2}]
    )
    for desc in family_descs:
        def t(desc=desc):
            r = verify_theorem_part1(build_from_description(desc, max_order), max_order)
            return r["passed"], None, r

        add("theorem_part1", desc, t)

    for i, desc in enumerate(random_recipes(seed, random_count)):
        def t(desc=desc):
            r = verify_theorem_part1(build_from_description(desc, max_order), max_order)
            return r["passed"], None, r

        add("theorem_part1_random", {"index": i, "recipe": desc}, t)

    witness_descs = [
        ("Mc", {"family": "Mc", "p": 3, "c": 2}),
        ("Mc", {"family": "Mc", "p": 3, "c": 3}),
        ("B2", {"family": "B2", "p": 3, "k": 2}),
        ("B2", {"family": "B2", "p": 5, "k": 2}),
        ("second_example", {"family": "second_example", "p": 3, "k": 2, "c": 2}),
    ]
    for _, desc in witness_descs:
        def t(desc=desc):
            G = build_from_description(desc, max_order)
            l2 = verify_lemma2(G, max_order)
            w = find_question_witness(G, max_order)
            ok = l2["passed"] and w is not None
            return ok, w, {"lemma2": _jsonable(l2)}

        add("lemma2_question", desc, t)

    for c in (2, 3, 4):
        def t(c=c):
            G = make_Mc(2, c, max_order)
            w = find_question_witness(G, max_order)
            return w is None, w, {}

        add("question_none_dihedral", {"p": 2, "c": c}, t)

    for p in (2, 3, 5, 7):
        def t(p=p):
            R = ring_make(p, max(1, p - 1))
            z = eq_powers_witness(R)
            ok = R.scalar(p, z) == R.power(R.omega_minus_one, p - 1)
            return ok, list(z.coeffs), {}

        add("eq_powers_unit", {"p": p}, t)

    for p, c in [(3, 4), (5, 5), (2, 3)]:
        def t(p=p, c=c):
            r = verify_eq_powers(p, c, max_order)
            return r["passed"], None, r

        add("eq_powers", {"p": p, "c": c}, t)

    for p, c in [(2, 3), (3, 3), (3, 4), (5, 2)]:
        def t(p=p, c=c):
            r = verify_lemma_fact(p, c, max_order)
            return r["passed"], None, {"outside": r["outside"]}

        add("lemma_fact", {"p": p, "c": c}, t)

    pair_rng = random.Random(seed + 1)
    pair_pool = [
        {"family": "Mc", "p": 3, "c": 2},
        {"family": "Mc", "p": 3, "c": 3},
        {"family": "Dc", "p": 3, "c": 2},
        {"family": "B2", "p": 3, "k": 2},
        {"family": "cyclic", "p": 3, "e": 2},
        {"family": "Mc", "p": 2, "c": 2},
        {"family": "Mc", "p": 2, "c": 3},
        {"family": "Dc", "p": 2, "c": 3},
        {"family": "cyclic", "p": 2, "e": 3},
        {"family": "homocyclic", "p": 3, "k": 2, "e": 1, "s": 0},
    ]
    for i in range(20):
        while True:
            d1 = pair_pool[pair_rng.randrange(len(pair_pool))]
            d2 = pair_pool[pair_rng.randrange(len(pair_pool))]
            if d1["p"] == d2["p"]:
                break

        def t(d1=d1, d2=d2):
            r = verify_product_spectrum(
                build_from_description(d1, max_order),
                build_from_description(d2, max_order),
                max_order,
            )
            return r["passed"], None, r

        add("product_spectrum", {"index": i, "left": d1, "right": d2}, t)

    def t_prop():
        G1 = make_Dc(3, 3)
        G2 = make_B2(3, 2)
        z1 = G1.power(G1.named_elements["x"], 9)
        z2 = commutator(G2, G2.named_elements["t"], G2.named_elements["s"])
        r = verify_prop_same(G1, G2, z1, z2, max_order)
        return r["passed"], None, r

    add("prop_same", {"left": "Dc(3,3)", "right": "B2(3,2)"}, t_prop)

    def t_example_k():
        G1 = make_Dc(3, 2)
        G2 = make_cyclic(3, 2)
        z1 = G1.power(G1.named_elements["x"], 3)
        z2 = G2.power(G2.named_elements["d"], 3)
        h_spec = spectrum(direct_product([G1, G2]), max_order)
        try:
            verify_prop_same(G1, G2, z1, z2, max_order)
        except PreconditionFailed as exc:
            k_spec = tuple(exc.report["quotient_spectrum"])
            ok = k_spec == (1, 2) and h_spec.spectrum == (1,)
            return ok, None, {"k_spectrum": list(k_spec), "h_spectrum": list(h_spec.spectrum)}
        return False, None, {"error": "precondition unexpectedly held"}

    add("prop_same_example_k", {"group": "Dc(3,2) x C9 / <x^3*d^3>"}, t_example_k)

    homo_cases = [
        ((3, 2, 1, 0), 2, (1, 2)),
        ((3, 2, 2, 0), 4, (1, 2)),
        ((3, 2, 2, 1), 3, (1, 2)),
        ((5, 3, 1, 0), 3, (1, 2, 3)),
    ]
    for args, want_class, want_spec in homo_cases:
        def t(args=args, want_class=want_class, want_spec=want_spec):
            G = make_homocyclic(*args, max_order)
            sp = spectrum(G, max_order)
            ok = sp.klass == want_class and sp.spectrum == want_spec
            return ok, None, {"class": sp.klass, "spectrum": list(sp.spectrum)}

        p, k, e, s = args
        add("homocyclic", {"p": p, "k": k, "e": e, "s": s}, t)

    def t_second():
        Q = make_second_example(3, 2, 2, max_order)
        sp = spectrum(Q, max_order)
        split = direct_factor_search(Q, decompose_bound, max_order)
        ok = (
            len(enumerate_group(Q, max_order)) == 729
            and sp.klass == 2
            and sp.spectrum == (1, 2)
            and split is None
        )
        return ok, None, {"order": len(enumerate_group(Q, max_order)), "class": sp.klass, "spectrum": list(sp.spectrum), "indecomposable": split is None}

    add("second_example", {"p": 3, "k": 2, "c": 2}, t_second)

    for p, cs, c in [(2, (2,), 3), (2, (2, 3), 4), (3, (3,), 3), (3, (3,), 4)]:
        def t(p=p, cs=cs, c=c):
            r = verify_partb_structure(p, list(cs), c, max_order, decompose_bound)
            return r["passed"], None, r

        add("partb", {"p": p, "cs": list(cs), "c": c}, t)

    def t_partb_decompose():
        H = make_partb_decomposable(2, [2], 3, max_order)
        G = make_partb_indecomposable(2, [2], 3, max_order)
        split_h = direct_factor_search(H, decompose_bound, max_order)
        split_g = direct_factor_search(G, decompose_bound, max_order)
        ok = split_h is not None and split_g is None
        return ok, None, {
            "h_split_orders": None if split_h is None else [len(x) for x in split_h],
            "g_indecomposable": split_g is None,
        }

    add("partb_decompose", {"p": 2, "cs": [2], "c": 3}, t_partb_decompose)

    char_descs = [
        {"family": "Dc", "p": 3, "c": 2},
        {"family": "Mc", "p": 3, "c": 2},
        {"family": "Mc", "p": 3, "c": 3},
        {"family": "Mc", "p": 2, "c": 3},
        {"family": "B2", "p": 3, "k": 2},
        {"family": "homocyclic", "p": 3, "k": 2, "e": 1, "s": 0},
        {"family": "second_example", "p": 3, "k": 2, "c": 2},
    ]
    for desc in char_descs:
        def t(desc=desc):
            G = build_from_description(desc, max_order)
            ucs = upper_central_series(G, max_order)
            rev = lower_central_series(G, max_order)
            ok = satisfies_ucs_characterization(G, ucs, max_order)
            same = ucs == rev
            ok = ok and (satisfies_ucs_characterization(G, rev, max_order) == same)
            return ok, None, {"lcs_equals_ucs": same}

        add("ucs_characterization", desc, t)

    def t_refined():
        G = make_Dc(3, 2)
        E = enumerate_group(G, max_order)
        x3 = subgroup_closure(G, [G.power(G.named_elements["x"], 3)], max_order)
        Z = center(G, max_order)
        chain = CentralSeriesChain(
            G,
            (EnumeratedSubgroup(G, [G.identity]), x3, Z, E),
            "user",
        )
        ok = is_central_series(G, chain, max_order) and not satisfies_ucs_characterization(
            G, chain, max_order
        )
        return ok, None, {}

    add("ucs_characterization_refined", {"group": "Dc(3,2)"}, t_refined)

    def t_dc_lcs_layers():
        G = make_Dc(3, 3)
        rev = lower_central_series(G, max_order)
        desc = tuple(reversed(rev.terms))  # gamma_1 .. gamma_(c+1)
        layers = set()
        for g in _order_p_elements(G, max_order):
            for i, term in enumerate(desc):
                if g not in term.as_set:
                    continue
                if i + 1 >= len(desc) or g not in desc[i + 1].as_set:
                    layers.add(i + 1)
                    break
        ok = layers == {1, len(desc) - 1}
        return ok, None, {"occupied_lcs_layers": sorted(layers)}

    add("dc_lcs_layers", {"p": 3, "c": 3}, t_dc_lcs_layers)

    return checks


def run_paper_suite(
    max_order: int = DEFAULT_MAX_ORDER,
    decompose_bound: int = DEFAULT_DECOMPOSE_BOUND,
    seed: int = DEFAULT_SEED,
    only: list[str] | None = None,
    random_count: int = 50,
) -> SuiteReport:
    """Run the full verification battery and return one record per check.

    Records are ordered by (check, params); per-check errors are captured
    without aborting the rest of the suite.  ``only`` filters by substring
    of the check name.
    """
    checks = _suite_checks(max_order, decompose_bound, seed, random_count)
    if only:
        checks = [c for c in checks if any(f in c[0] for f in only)]
    records = []
    for name, params, thunk in checks:
        t0 = time.perf_counter()
        try:
            passed, witness, details = thunk()
            err = None
        except ResourceLimit as exc:
            passed, witness, details, err = False, None, {"message": str(exc)}, "ResourceLimit"
        except ToolkitError as exc:
            passed, witness, details, err = False, None, {"message": str(exc)}, type(exc).__name__
        millis = int((time.perf_counter() - t0) * 1000)
        records.append(
            CheckRecord(
                check=name,
                params=_jsonable(params),
                passed=passed,
                witness=_jsonable(witness),
                details=_jsonable(details),
                millis=millis,
                error=err,
            )
        )
    records.sort(key=lambda r: (r.check, repr(sorted(r.params.items()))))
    return SuiteReport(seed=seed, records=records)
