"""Generic finite-group engine.

Group elements are flat tuples of small nonnegative integers; each concrete
family fixes per-coordinate moduli, so tuple comparison agrees with the
byte-lexicographic order of the fixed-width encoding produced by
``FiniteGroup.encode``.  All derived groups (products, quotients, enumerated
subgroups) reuse the parent coordinates, which keeps canonical coset
representatives and witness selection deterministic across runs.

Everything here is exhaustive and exact: closures are breadth-first over
generator multiplication, centralizers test against generators only, and
quotients store the byte-lexicographic minimum of each coset.
"""

from __future__ import annotations

from collections import deque

from .errors import (
    BadParameters,
    InternalInconsistency,
    NotNormal,
    ResourceLimit,
)

DEFAULT_MAX_ORDER = 2_000_000
DEFAULT_DECOMPOSE_BOUND = 20_000

# full index-space multiplication tables are built below this order
_TABLE_BOUND = 1500


class FiniteGroup:
    """Base interface every concrete group family implements.

    Subclasses provide ``multiply``/``invert`` on element tuples plus the
    metadata attributes set in ``_init_group``.  Instances are immutable
    after construction; the enumeration cache is write-once.
    """

    def _init_group(self, prime, identity, moduli, generators, named=None, known_order=None, description=""):
        self.prime = prime
        self.identity = tuple(identity)
        self.coordinate_moduli = tuple(moduli)
        self.generators = tuple((name, tuple(g)) for name, g in generators)
        names = {}
        for name, g in self.generators:
            if name in names:
                raise BadParameters(f"duplicate generator name {name!r}")
            names[name] = tuple(g)
        if named:
            for name, g in named.items():
                names.setdefault(name, tuple(g))
        self.named_elements = names
        self.known_order = known_order
        self.description = description
        self._widths = tuple(max(1, ((m - 1).bit_length() + 7) // 8) for m in self.coordinate_moduli)
        self._enumeration = None
        self._center = None

    def multiply(self, a, b):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def power(self, g, n: int):
        if n < 0:
            g = self.invert(g)
            n = -n
        out = self.identity
        base = g
        mult = self.multiply
        while n:
            if n & 1:
                out = mult(out, base)
            base = mult(base, base)
            n >>= 1
        return out

    def conjugate(self, g, h):
        """h^-1 g h."""
        mult = self.multiply
        return mult(mult(self.invert(h), g), h)

    def encode(self, g) -> bytes:
        return b"".join(int(x).to_bytes(w, "big") for x, w in zip(g, self._widths))

    def __repr__(self) -> str:
        return self.description or type(self).__name__


class EnumeratedSubgroup:
    """Explicit carrier of a subgroup, with O(1) membership.

    Iteration is in canonical (tuple-lexicographic) order.
    """

    __slots__ = ("group", "_set", "_sorted")

    def __init__(self, group: FiniteGroup, elements) -> None:
        self.group = group
        self._set = frozenset(elements)
        self._sorted = None

    @property
    def elements(self) -> tuple:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._set))
        return self._sorted

    @property
    def as_set(self) -> frozenset:
        return self._set

    def __contains__(self, g) -> bool:
        return g in self._set

    def __len__(self) -> int:
        return len(self._set)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, EnumeratedSubgroup) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"EnumeratedSubgroup(order={len(self._set)})"


def subgroup_closure(G: FiniteGroup, elements, max_order: int | None = None) -> EnumeratedSubgroup:
    """Smallest subgroup of G containing ``elements``.

    Breadth-first closure under right multiplication by the generating set;
    in a finite group the generated submonoid is the generated subgroup.
    """
    bound = max_order if max_order is not None else DEFAULT_MAX_ORDER
    mult = G.multiply
    identity = G.identity
    gens = []
    seen = {identity}
    for g in elements:
        t = tuple(g)
        if t not in seen:
            seen.add(t)
            gens.append(t)
    visited = set(seen)
    frontier = deque(visited)
    add = visited.add
    append = frontier.append
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = mult(x, g)
            if y not in visited:
                add(y)
                if len(visited) > bound:
                    raise ResourceLimit(f"closure exceeded {bound} elements")
                append(y)
    return EnumeratedSubgroup(G, visited)


def enumerate_group(G: FiniteGroup, max_order: int | None = None) -> EnumeratedSubgroup:
    """Full carrier of G (closure of its generators), cached on the group."""
    if G._enumeration is not None:
        return G._enumeration
    carrier = getattr(G, "_precomputed_carrier", None)
    if carrier is not None:
        E = EnumeratedSubgroup(G, carrier)
    else:
        E = subgroup_closure(G, [g for _, g in G.generators], max_order)
    if G.known_order is not None and len(E) != G.known_order:
        raise InternalInconsistency(
            f"{G!r}: enumerated {len(E)} elements, expected {G.known_order}"
        )
    G._enumeration = E
    return E


def element_order(G: FiniteGroup, g) -> int:
    n = 1
    x = g
    mult = G.multiply
    identity = G.identity
    while x != identity:
        x = mult(x, g)
        n += 1
    return n


def commutator(G: FiniteGroup, x, y):
    """x^-1 y^-1 x y."""
    mult = G.multiply
    return mult(mult(G.invert(x), G.invert(y)), mult(x, y))


def centralizer(G: FiniteGroup, elements, max_order: int | None = None) -> EnumeratedSubgroup:
    """Centralizer of a set, tested against that set only."""
    E = enumerate_group(G, max_order)
    mult = G.multiply
    elems = [tuple(s) for s in elements]
    out = [g for g in E.as_set if all(mult(g, s) == mult(s, g) for s in elems)]
    return EnumeratedSubgroup(G, out)


def center(G: FiniteGroup, max_order: int | None = None) -> EnumeratedSubgroup:
    """Center, as the centralizer of the generators (cached)."""
    if G._center is None:
        G._center = centralizer(G, [g for _, g in G.generators], max_order)
    return G._center


class QuotientGroup(FiniteGroup):
    """G/N with canonical coset representatives.

    Elements are the byte-lexicographic minima of their cosets; the group
    operation is multiply-then-canonicalize through the stored coset map.
    """

    def __init__(self, parent: FiniteGroup, kernel: EnumeratedSubgroup, rep_map, reps, description=""):
        self.parent = parent
        self.kernel = kernel
        self._rep = rep_map
        gens = [(name, rep_map[g]) for name, g in parent.generators]
        named = {name: rep_map[g] for name, g in parent.named_elements.items()}
        self._init_group(
            parent.prime,
            rep_map[parent.identity],
            parent.coordinate_moduli,
            gens,
            named=named,
            known_order=len(rep_map) // len(kernel),
            description=description or f"{parent!r}/N{len(kernel)}",
        )
        self._precomputed_carrier = frozenset(reps)

    def multiply(self, a, b):
        return self._rep[self.parent.multiply(a, b)]

    def invert(self, a):
        return self._rep[self.parent.invert(a)]

    def project(self, g):
        """Canonical representative of the coset of a parent element."""
        return self._rep[g]


def quotient_group(G: FiniteGroup, N: EnumeratedSubgroup, max_order: int | None = None) -> QuotientGroup:
    """Quotient by a normal subgroup (normality is verified)."""
    E = enumerate_group(G, max_order)
    if not N.as_set <= E.as_set:
        raise NotNormal("subgroup is not contained in the group")
    for _, g in G.generators:
        for n in N.as_set:
            if G.conjugate(n, g) not in N:
                raise NotNormal("subgroup is not normal")
    rep_map = {}
    mult = G.multiply
    n_elems = N.elements
    reps = []
    for g in E.elements:  # ascending scan: first untouched element is its coset minimum
        if g in rep_map:
            continue
        reps.append(g)
        for n in n_elems:
            rep_map[mult(g, n)] = g
    if len(rep_map) != len(E):
        raise InternalInconsistency("coset partition does not cover the group")
    return QuotientGroup(G, N, rep_map, reps)


class DirectProductGroup(FiniteGroup):
    """Componentwise product with concatenated coordinates."""

    def __init__(self, factors, description=""):
        factors = list(factors)
        if not factors:
            raise BadParameters("empty product")
        p = factors[0].prime
        if any(f.prime != p for f in factors):
            raise BadParameters("all factors must share the same prime")
        self.factors = tuple(factors)
        parts = []
        off = 0
        for f in factors:
            width = len(f.identity)
            parts.append((off, off + width, f))
            off += width
        self._parts = tuple(parts)
        identity = tuple(x for f in factors for x in f.identity)
        moduli = tuple(m for f in factors for m in f.coordinate_moduli)

        def embed(i, g):
            out = []
            for j, f in enumerate(factors):
                out.extend(g if j == i else f.identity)
            return tuple(out)

        gens = []
        named = {}
        for i, f in enumerate(factors):
            for name, g in f.generators:
                gens.append((f"f{i}.{name}", embed(i, g)))
            for name, g in f.named_elements.items():
                named[f"f{i}.{name}"] = embed(i, g)
        order = 1
        for f in factors:
            if f.known_order is None:
                order = None
                break
            order *= f.known_order
        self._init_group(
            p,
            identity,
            moduli,
            gens,
            named=named,
            known_order=order,
            description=description or " x ".join(repr(f) for f in factors),
        )

    def multiply(self, a, b):
        out = []
        for s, e, f in self._parts:
            out.extend(f.multiply(a[s:e], b[s:e]))
        return tuple(out)

    def invert(self, a):
        out = []
        for s, e, f in self._parts:
            out.extend(f.invert(a[s:e]))
        return tuple(out)

    def embed(self, i: int, g):
        out = []
        for j, (s, e, f) in enumerate(self._parts):
            out.extend(g if j == i else f.identity)
        return tuple(out)

    def project(self, i: int, g):
        s, e, _ = self._parts[i]
        return tuple(g[s:e])


def direct_product(groups, description="") -> DirectProductGroup:
    return DirectProductGroup(groups, description=description)


class SubgroupGroup(FiniteGroup):
    """A subgroup of a parent group promoted to a standalone group."""

    def __init__(self, parent: FiniteGroup, carrier, generators, description=""):
        self.parent = parent
        carrier = frozenset(carrier)
        self._precomputed_carrier = carrier
        self._init_group(
            parent.prime,
            parent.identity,
            parent.coordinate_moduli,
            generators,
            known_order=len(carrier),
            description=description or f"subgroup({len(carrier)}) of {parent!r}",
        )

    def multiply(self, a, b):
        return self.parent.multiply(a, b)

    def invert(self, a):
        return self.parent.invert(a)


def is_pth_power(G: FiniteGroup, z, max_order: int | None = None) -> bool:
    """Exhaustive test for z in {g^p : g in G}."""
    E = enumerate_group(G, max_order)
    p = G.prime
    z = tuple(z)
    return any(G.power(g, p) == z for g in E.elements)


def omega1_subgroup(G: FiniteGroup, max_order: int | None = None) -> EnumeratedSubgroup:
    """Subgroup generated by all elements of order dividing p."""
    E = enumerate_group(G, max_order)
    p = G.prime
    identity = G.identity
    small = [g for g in E.elements if G.power(g, p) == identity]
    if len(small) == len(E):
        return E
    return subgroup_closure(G, small, max_order)


def generated_by_order_p(G: FiniteGroup, max_order: int | None = None) -> bool:
    return len(omega1_subgroup(G, max_order)) == len(enumerate_group(G, max_order))


def normal_closure(G: FiniteGroup, g, max_order: int | None = None) -> EnumeratedSubgroup:
    """Smallest normal subgroup containing g: the closure of its conjugacy class."""
    gens = [(name, h) for name, h in G.generators]
    orbit = {tuple(g)}
    stack = [tuple(g)]
    while stack:
        x = stack.pop()
        for _, h in gens:
            y = G.conjugate(x, h)
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
                if len(orbit) > (max_order or DEFAULT_MAX_ORDER):
                    raise ResourceLimit("conjugacy orbit exceeded the order bound")
    return subgroup_closure(G, sorted(orbit), max_order)


def _conjugacy_classes_idx(n, mul, inv_of, gen_idx):
    assigned = [-1] * n
    classes = []
    for i in range(n):
        if assigned[i] >= 0:
            continue
        orbit = {i}
        stack = [i]
        while stack:
            x = stack.pop()
            for gi in gen_idx:
                y = mul(mul(inv_of[gi], x), gi)
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        cls = sorted(orbit)
        for x in cls:
            assigned[x] = len(classes)
        classes.append(cls)
    return classes


def direct_factor_search(
    G: FiniteGroup,
    decompose_bound: int | None = None,
    max_order: int | None = None,
):
    """Find a nontrivial internal direct decomposition, or None.

    The normal subgroups of G are exactly the joins of normal closures of
    single elements, so the search enumerates that join closure (joining
    with single-element closures only, which suffices by associativity of
    join) and tests complementary pairs as subgroups are discovered.  All
    arithmetic runs in index space over the enumerated carrier; subgroups
    are bitmask integers so intersection tests are single AND operations.
    """
    bound = decompose_bound if decompose_bound is not None else DEFAULT_DECOMPOSE_BOUND
    E = enumerate_group(G, max_order)
    n = len(E)
    if n > bound:
        raise ResourceLimit(f"|G| = {n} exceeds the decomposition bound {bound}")
    if n == 1:
        return None
    elems = E.elements
    idx = {g: i for i, g in enumerate(elems)}
    id_idx = idx[G.identity]
    identity_mask = 1 << id_idx

    if n <= _TABLE_BOUND:
        mult = G.multiply
        table = [[idx[mult(a, b)] for b in elems] for a in elems]

        def mul(i, j):
            return table[i][j]

    else:
        cache: dict[int, int] = {}

        def mul(i, j):
            key = i * n + j
            r = cache.get(key)
            if r is None:
                r = idx[G.multiply(elems[i], elems[j])]
                cache[key] = r
            return r

    inv_of = [idx[G.invert(g)] for g in elems]
    gen_idx = sorted({idx[g] for _, g in G.generators if g != G.identity})

    classes = _conjugacy_classes_idx(n, mul, inv_of, gen_idx)

    def closure_idx(seeds):
        visited = {id_idx}
        visited.update(seeds)
        frontier = deque(visited)
        while frontier:
            x = frontier.popleft()
            for s in seeds:
                y = mul(x, s)
                if y not in visited:
                    visited.add(y)
                    frontier.append(y)
        return visited

    atoms = []
    seen_atoms = set()
    for cls in sorted(classes, key=lambda c: c[0]):
        if cls == [id_idx]:
            continue
        closed = closure_idx(cls)
        key = frozenset(closed)
        if key not in seen_atoms:
            seen_atoms.add(key)
            members = sorted(closed)
            mask = 0
            for i in members:
                mask |= 1 << i
            atoms.append((mask, members))

    def found(mask_a, members_a, mask_b, members_b):
        pair = sorted(
            [(len(members_a), mask_a, members_a), (len(members_b), mask_b, members_b)]
        )
        return tuple(
            EnumeratedSubgroup(G, [elems[i] for i in members]) for _, _, members in pair
        )

    subgroups: dict[int, list] = {}  # mask -> members
    by_order: dict[int, list[int]] = {}

    def register(mask, members):
        """Record a subgroup; return a complement pair if one appears."""
        if mask in subgroups:
            return None
        order = len(members)
        if 1 < order < n and n % order == 0:
            target = n // order
            for other in by_order.get(target, ()):
                if other & mask == identity_mask:
                    return found(mask, members, other, subgroups[other])
        subgroups[mask] = members
        by_order.setdefault(order, []).append(mask)
        return None

    queue = deque()
    for mask, members in atoms:
        hit = register(mask, members)
        if hit:
            return hit
        queue.append(mask)

    while queue:
        smask = queue.popleft()
        smembers = subgroups[smask]
        for amask, amembers in atoms:
            if amask | smask == smask:
                continue
            res_mask = smask
            res = list(smembers)
            for b in amembers:
                if (res_mask >> b) & 1:
                    continue
                for a in smembers:
                    y = mul(a, b)
                    bit = 1 << y
                    if not res_mask & bit:
                        res_mask |= bit
                        res.append(y)
            if res_mask not in subgroups:
                if len(subgroups) >= 4 * bound:
                    raise ResourceLimit("normal subgroup lattice exceeded the search cap")
                hit = register(res_mask, sorted(res))
                if hit:
                    return hit
                queue.append(res_mask)
    return None
