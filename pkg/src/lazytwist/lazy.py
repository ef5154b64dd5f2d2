"""Verdict engine for the group of invariant-twist classes.

bg_enumerate lists the socle-form pairs (abelian normal subgroup with a
conjugation-invariant non-degenerate alternating form on its dual);
h2_compute assembles certified rules into an exact order/structure verdict,
bounds, or an honest "undetermined".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .groups import (
    ORDER_LIMIT_DEFAULT,
    FiniteGroup,
    OrderLimitExceeded,
    Subgroup,
    automorphism_group,
    class_preserving_auts,
    find_isomorphism,
    normal_abelian_subgroups,
)
from .fixtures import symmetric
from .pontryagin import (
    AltForm,
    DualAction,
    alternating_forms,
    cocycle_from_form_odd,
    invariant_cocycle_search,
    invariant_forms,
    is_symmetric_type,
)
from .hopf import GTensor, form_from_r, r_from_form, socle

__all__ = [
    "BGElement",
    "H2Report",
    "bg_enumerate",
    "bg_product",
    "bg_element_order",
    "invariant_orbit_dimension",
    "has_no_multiplicities",
    "lie_complex_check",
    "h2_compute",
]


@dataclass(frozen=True)
class BGElement:
    """A socle-form pair with its bicharacter tensor as equality certificate."""

    subgroup: Subgroup
    form: AltForm
    canonical_r: GTensor

    @staticmethod
    def make(A: Subgroup, b: AltForm) -> "BGElement":
        return BGElement(A, b, r_from_form(A, b))

    @staticmethod
    def trivial(G: FiniteGroup) -> "BGElement":
        A = Subgroup(G, [0])
        return BGElement.make(A, AltForm.trivial(A))

    def key(self):
        return self.canonical_r.key()

    def is_trivial(self) -> bool:
        return self.subgroup.order == 1

    def __eq__(self, other):
        return isinstance(other, BGElement) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def bg_enumerate(G: FiniteGroup, limit: int = ORDER_LIMIT_DEFAULT,
                 nas=None) -> list[BGElement]:
    """All socle-form pairs, deduplicated by bicharacter tensor.

    Only subgroups of symmetric type can carry a non-degenerate alternating
    form, so the rest are pruned before form enumeration.
    """
    if G.order > limit:
        raise OrderLimitExceeded(f"|G| = {G.order} exceeds bound {limit}")
    if nas is None:
        nas = normal_abelian_subgroups(G, limit)
    out = [BGElement.trivial(G)]
    seen = {out[0].key()}
    for A in nas:
        if A.order == 1 or not is_symmetric_type(A):
            continue
        action = DualAction(G, A)
        for b in invariant_forms(A, action, only_nondegenerate=True):
            el = BGElement.make(A, b)
            if el.key() not in seen:
                seen.add(el.key())
                out.append(el)
    out.sort(key=lambda e: (e.subgroup.order, e.subgroup.elements,
                            e.form.matrix))
    return out


def bg_product(x: BGElement, y: BGElement, nas) -> Optional[BGElement]:
    """Partial product: defined when one abelian normal subgroup contains
    both socles; the result is re-minimized through its own socle."""
    need = set(x.subgroup.elements) | set(y.subgroup.elements)
    if not any(need <= set(C.elements) for C in nas):
        return None
    R = x.canonical_r.mul(y.canonical_r)
    D = socle(R)
    b = form_from_r(D, R)
    assert r_from_form(D, b) == R, "product tensor is not the bicharacter of its socle form"
    return BGElement(D, b, R)


def bg_element_order(x: BGElement, nas) -> int:
    acc = x
    k = 1
    while not acc.is_trivial():
        nxt = bg_product(acc, x, nas)
        assert nxt is not None, "powers on a fixed socle are always defined"
        acc = nxt
        k += 1
        assert k <= x.subgroup.order ** 2, "runaway element order"
    return k


# ---------------------------------------------------------------------------
# Multiplicity-freeness via commutativity of the diagonal-conjugation
# invariant subalgebra of k[G] x k[G]; no character table is computed.


def _pair_orbits(G: FiniteGroup):
    n = G.order
    gens = G.generating_set()
    seen = [[False] * n for _ in range(n)]
    orbits = []
    for x in range(n):
        for y in range(n):
            if seen[x][y]:
                continue
            orbit = []
            stack = [(x, y)]
            seen[x][y] = True
            while stack:
                p = stack.pop()
                orbit.append(p)
                for g in gens:
                    q = (G.conjugate(g, p[0]), G.conjugate(g, p[1]))
                    if not seen[q[0]][q[1]]:
                        seen[q[0]][q[1]] = True
                        stack.append(q)
            orbits.append(sorted(orbit))
    return orbits


def invariant_orbit_dimension(G: FiniteGroup,
                              limit: int = ORDER_LIMIT_DEFAULT) -> int:
    """Dimension of the conjugation-invariant subalgebra of k[G] x k[G]."""
    if G.order > limit:
        raise OrderLimitExceeded(f"|G| = {G.order} exceeds bound {limit}")
    return len(_pair_orbits(G))


def has_no_multiplicities(G: FiniteGroup,
                          limit: int = ORDER_LIMIT_DEFAULT) -> bool:
    """True iff all orbit sums of the diagonal conjugation action on
    G x G commute pairwise."""
    if G.order > limit:
        raise OrderLimitExceeded(f"|G| = {G.order} exceeds bound {limit}")
    orbits = _pair_orbits(G)
    table = G.table
    sums = [frozenset(o) for o in orbits]

    def convolve(s1, s2):
        out = {}
        for a in s1:
            for b in s2:
                t = (table[a[0]][b[0]], table[a[1]][b[1]])
                out[t] = out.get(t, 0) + 1
        return out

    for i in range(len(sums)):
        for j in range(i + 1, len(sums)):
            if convolve(sums[i], sums[j]) != convolve(sums[j], sums[i]):
                return False
    return True


# ---------------------------------------------------------------------------
# Exactness of the tangent complex k[G] -> k[G]^2 -> k[G]^3.


def _sparse_rank(columns) -> int:
    """Rank of a set of sparse rational vectors (dict coordinate -> value)."""
    pivots: dict = {}
    rank = 0
    for col in columns:
        vec = {k: Fraction(v) for k, v in col.items() if v}
        while vec:
            lead = min(vec)
            if lead in pivots:
                pv = pivots[lead]
                f = vec[lead] / pv[lead]
                for k, v in pv.items():
                    w = vec.get(k, Fraction(0)) - f * v
                    if w:
                        vec[k] = w
                    else:
                        vec.pop(k, None)
            else:
                pivots[lead] = vec
                rank += 1
                break
    return rank


def lie_complex_check(G: FiniteGroup, limit: int = 24):
    """Injectivity and exactness of the tangent complex, plus the kernel
    dimension of the second map (expected |G|)."""
    if G.order > limit:
        raise OrderLimitExceeded(f"|G| = {G.order} exceeds bound {limit}")
    n = G.order

    def d1_column(g):
        col = {}
        for key, v in (((g, 0), 1), ((0, g), 1), ((g, g), -1)):
            col[key] = col.get(key, 0) + v
        return {k: v for k, v in col.items() if v}

    def d2_column(g, h):
        # (Lie d2R - Lie d2L)(g x h)
        col = {}
        for key, v in (((0, g, h), 1), ((g, h, h), 1),
                       ((g, h, 0), -1), ((g, g, h), -1)):
            col[key] = col.get(key, 0) + v
        return {k: v for k, v in col.items() if v}

    d1_cols = [d1_column(g) for g in range(n)]
    rank1 = _sparse_rank(d1_cols)
    injective = rank1 == n

    # composite must vanish: apply d2 to each d1 column
    composite_zero = True
    for g in range(n):
        acc: dict = {}
        for (a, b), v in d1_cols[g].items():
            for k, w in d2_column(a, b).items():
                acc[k] = acc.get(k, 0) + v * w
        if any(acc.values()):
            composite_zero = False
    rank2 = _sparse_rank(d2_column(g, h) for g in range(n) for h in range(n))
    kernel_dim = n * n - rank2
    exact = injective and composite_zero and kernel_dim == rank1
    return injective, exact, kernel_dim


# ---------------------------------------------------------------------------
# The rule engine.


@dataclass
class H2Report:
    group: str
    int_mod_inn: int
    bg_size: int
    order_lower: int
    order_upper: int
    exact_order: Optional[int]
    structure: Optional[list[int]]
    status: str
    certificates: list[dict] = field(default_factory=list)

    def to_json(self):
        return {
            "group": self.group,
            "int_mod_inn": self.int_mod_inn,
            "bg_size": self.bg_size,
            "order_bounds": [self.order_lower, self.order_upper],
            "exact_order": self.exact_order,
            "structure": self.structure,
            "status": self.status,
            "certificates": self.certificates,
        }


def _form_group_structure(A: Subgroup, forms: list[AltForm]) -> list[int]:
    """Invariant factors of a finite group of alternating forms."""
    from .groups import from_table

    index = {f.matrix: i for i, f in enumerate(forms)}
    table = [[index[f.mul(g).matrix] for g in forms] for f in forms]
    H = from_table(table)
    return [d for _, d in H.whole_subgroup().abelian_structure()]


def _abelian_order_multisets(order: int) -> list[tuple[int, ...]]:
    """Element-order multisets of all abelian groups of the given order."""

    def factor(n):
        out = {}
        d = 2
        while d * d <= n:
            while n % d == 0:
                out[d] = out.get(d, 0) + 1
                n //= d
            d += 1
        if n > 1:
            out[n] = out.get(n, 0) + 1
        return out

    def partitions(k):
        if k == 0:
            yield ()
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or first >= rest[0]:
                    yield (first,) + rest

    primes = factor(order)
    per_prime = []
    for p, k in primes.items():
        choices = []
        for part in partitions(k):
            choices.append(tuple(p ** e for e in part))
        per_prime.append(choices)
    multisets = []
    for combo in itertools.product(*per_prime):
        factors = [d for group in combo for d in group]
        orders = []
        for tup in itertools.product(*(range(d) for d in factors)):
            o = 1
            for e, d in zip(tup, factors):
                oo = d // gcd(e, d) if e else 1
                o = o * oo // gcd(o, oo)
            orders.append(o)
        multisets.append(tuple(sorted(orders)))
    return multisets


def _structure_from_order_and_exponent(order, element_orders):
    """Invariant factors when they are forced by order and element orders."""
    if order == 1:
        return []
    dist = sorted(set(element_orders) - {1})
    if len(dist) != 1:
        return None
    p = dist[0]
    k = 0
    n = order
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        return None
    if order == p:
        return [p]
    if order == p * p:
        return [p, p]
    return None


def h2_compute(G: FiniteGroup, limit: int = ORDER_LIMIT_DEFAULT,
               name: Optional[str] = None) -> H2Report:
    """Apply the certified rules in order and assemble the verdict."""
    if G.order > limit:
        raise OrderLimitExceeded(f"|G| = {G.order} exceeds bound {limit}")
    name = name or G.name or f"order-{G.order}"
    certs: list[dict] = []
    nas = normal_abelian_subgroups(G, limit)
    bg = bg_enumerate(G, limit, nas=nas)
    _, int_mod_inn = class_preserving_auts(G, limit)
    exact: Optional[int] = None
    structure: Optional[list[int]] = None
    excluded_any = False

    def conclude(order, struct, rule, ref):
        nonlocal exact, structure
        certs.append({"rule": rule, "ref": ref})
        if exact is not None:
            assert exact == order, f"rule {rule} disagrees with earlier verdict"
        exact = order
        if struct is not None:
            if structure is not None:
                assert structure == struct
            structure = struct

    # R0: abelian groups are answered by the full group of alternating forms
    if G.is_abelian():
        A = G.whole_subgroup()
        forms = alternating_forms(A)
        struct = _form_group_structure(A, forms)
        conclude(len(forms), struct, "R0",
                 "abelian group: twist classes = alternating bilinear forms "
                 "on the character group")

    # R1: trivial pair set
    if exact is None and len(bg) == 1:
        struct = [] if int_mod_inn == 1 else (
            [int_mod_inn] if _is_prime(int_mod_inn) else None)
        conclude(int_mod_inn, struct, "R1",
                 "trivial socle-form set: twist classes = class-preserving "
                 "outer automorphisms")

    element_orders = None
    if G.order % 2 == 1 and int_mod_inn == 1:
        element_orders = sorted(bg_element_order(x, nas) for x in bg)

    # R2: odd order with trivial class-preserving outer part
    if exact is None and element_orders is not None:
        struct = _structure_from_order_and_exponent(len(bg), element_orders)
        conclude(len(bg), struct, "R2",
                 "odd order and class-preserving outer part trivial: the "
                 "socle-form map is a bijection")

    # R3: unique maximal abelian normal subgroup at odd order
    if G.order % 2 == 1 and int_mod_inn == 1:
        maximal = [A for A in nas
                   if not any(set(A.elements) < set(B.elements) for B in nas)]
        if len(maximal) == 1:
            A = maximal[0]
            forms = invariant_forms(A, DualAction(G, A))
            struct = _form_group_structure(A, forms)
            conclude(len(forms), struct, "R3",
                     "unique maximal abelian normal subgroup at odd order: "
                     "twist classes = invariant alternating forms on its dual")

    # RW: explicit invariant-cocycle witnesses realize socle-form pairs
    witnessed = 0
    witness_keys = set()
    if exact is None:
        for x in bg:
            if x.is_trivial():
                continue
            if x.subgroup.order % 2 == 1:
                cocycle_from_form_odd(x.subgroup, x.form)
                witnessed += 1
                witness_keys.add(x.key())
            else:
                try:
                    result = invariant_cocycle_search(
                        x.subgroup, x.form, DualAction(G, x.subgroup))
                except OrderLimitExceeded:
                    continue
                if result.witness is not None:
                    witnessed += 1
                    witness_keys.add(x.key())
        if witnessed:
            certs.append({
                "rule": "RW",
                "ref": "explicit invariant cocycles on the socle realize "
                       f"{witnessed} non-trivial socle-form pair(s) as twists"})

    # R4: the free coset action brackets the order
    lower = int_mod_inn * (1 + witnessed) if exact is None else exact
    upper = int_mod_inn * len(bg) if exact is None else exact
    if exact is None and lower == upper:
        struct = _structure_from_order_and_exponent(
            lower, [1] + [bg_element_order(x, nas) for x in bg
                          if not x.is_trivial()]) if int_mod_inn == 1 else None
        if lower == 1:
            struct = []
        elif struct is None and _is_prime(lower):
            struct = [lower]
        conclude(lower, struct, "R4",
                 "bounds from the free coset action coincide: every "
                 "socle-form pair is witnessed")
    else:
        certs.append({
            "rule": "R4",
            "ref": "class-preserving outer automorphisms act freely on twist "
                   "classes with orbit set inside the socle-form pairs"})

    # R5: even-order exclusion through multiplicity-freeness
    if exact is None and int_mod_inn == 1 and G.order <= 64 \
            and has_no_multiplicities(G, limit):
        sizes = _candidate_image_sizes(G, bg, nas, witness_keys, limit)
        all_sizes = set(range(1 + witnessed, len(bg) + 1))
        if sizes and len(sizes) == 1:
            size = sizes.pop()
            struct = [] if size == 1 else None
            conclude(size * int_mod_inn, struct, "R5",
                     "multiplicity-free tensor products force an abelian "
                     "class group; the only automorphism-stable candidate "
                     "image has this size")
            excluded_any = True
        elif sizes and sizes != all_sizes:
            lower = max(lower, int_mod_inn * min(sizes))
            upper = min(upper, int_mod_inn * max(sizes))
            excluded_any = True
            certs.append({
                "rule": "R5",
                "ref": "automorphism-stable image candidates narrow the "
                       f"possible sizes to {sorted(sizes)}"})

    # RT: fixed small symmetric groups have trivial twist class group
    if exact is None:
        n_fact = _symmetric_degree(G.order)
        if n_fact is not None and G.order <= 64 and \
                find_isomorphism(G, symmetric(n_fact), limit) is not None:
            assert int_mod_inn == 1, "symmetric groups have no outer " \
                "class-preserving automorphisms"
            conclude(1, [], "RT",
                     f"isomorphic to the symmetric group on {n_fact} letters, "
                     "whose twist class group is trivial")

    if exact is not None:
        lower = upper = exact
        status = "exact"
        if structure is None and _is_prime(exact):
            structure = [exact]
        if exact == 1:
            structure = []
    else:
        status = "bounded" if excluded_any else "undetermined"

    assert lower <= upper and lower % int_mod_inn == 0
    return H2Report(group=name, int_mod_inn=int_mod_inn, bg_size=len(bg),
                    order_lower=lower, order_upper=upper, exact_order=exact,
                    structure=structure, status=status, certificates=certs)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _symmetric_degree(order: int) -> Optional[int]:
    f, n = 1, 1
    while f < order:
        n += 1
        f *= n
    return n if f == order and n >= 2 else None


def _candidate_image_sizes(G, bg, nas, witness_keys, limit):
    """Sizes of subsets of the socle-form pairs that could be the image of
    the socle-form map: automorphism-stable, closed under the partial
    product and inverses, containing the witnessed pairs, with element
    orders realizable by an abelian group."""
    try:
        auts = automorphism_group(G, limit)
    except OrderLimitExceeded:
        return None
    by_key = {x.key(): i for i, x in enumerate(bg)}
    nontrivial = [i for i, x in enumerate(bg) if not x.is_trivial()]

    # orbits of Aut(G) on the non-trivial pairs, via transported tensors
    orbit_of = {}
    orbits = []
    for i in nontrivial:
        if i in orbit_of:
            continue
        orbit = set()
        stack = [i]
        while stack:
            j = stack.pop()
            if j in orbit:
                continue
            orbit.add(j)
            for phi in auts:
                moved = bg[j].canonical_r.apply_map(phi)
                k = by_key.get(moved.key())
                assert k is not None, "automorphism left the pair set"
                if k not in orbit:
                    stack.append(k)
        for j in orbit:
            orbit_of[j] = len(orbits)
        orbits.append(sorted(orbit))

    inverse_of = {}
    order_of = {}
    for i in nontrivial:
        inv_el = BGElement.make(bg[i].subgroup, bg[i].form.inv())
        inverse_of[i] = by_key[inv_el.key()]
        order_of[i] = bg_element_order(bg[i], nas)

    abelian_multisets = {}
    sizes = set()
    for pick in itertools.product((False, True), repeat=len(orbits)):
        chosen = {j for oi, take in enumerate(pick) if take
                  for j in orbits[oi]}
        if not witness_keys <= {bg[j].key() for j in chosen} | {bg[0].key()}:
            continue
        ok = True
        for i in chosen:
            if inverse_of[i] not in chosen:
                ok = False
                break
            for j in chosen:
                p = bg_product(bg[i], bg[j], nas)
                if p is None:
                    continue
                k = by_key.get(p.key())
                assert k is not None
                if k != 0 and k not in chosen:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        size = 1 + len(chosen)
        mset = tuple(sorted([1] + [order_of[i] for i in chosen]))
        if size not in abelian_multisets:
            abelian_multisets[size] = _abelian_order_multisets(size)
        if mset in abelian_multisets[size]:
            sizes.add(size)
    return sizes
