"""Group-algebra tensor calculus: twists, gauge action, R-matrices, socles.

A GTensor is a sparse element of k[G]^(tensor d) for d = 1, 2, 3 with
cyclotomic coefficients on tuples of element indices.  Inversion works
inside the subalgebra spanned by the subgroup generated by the support:
Fourier inversion when that subgroup is abelian, a dense linear solve
otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclo import CycNum, root_of_unity
from .groups import FiniteGroup, OrderLimitExceeded, Subgroup
from .pontryagin import AltForm, Character, DualAction, characters, is_nondegenerate

__all__ = [
    "DegreeMismatch",
    "NotInvertible",
    "NotATwist",
    "NotInvariant",
    "NotACocycle",
    "NotSupported",
    "ThetaContractViolated",
    "GTensor",
    "ThetaValue",
    "tensor_mul",
    "tensor_inv",
    "coproduct",
    "counit",
    "antipode",
    "delta1",
    "delta2_left",
    "delta2_right",
    "is_twist",
    "is_invariant",
    "is_normalized",
    "normalize_twist",
    "gauge",
    "r_matrix",
    "drinfeld_element",
    "socle",
    "theta",
    "idempotent",
    "twist_from_cocycle",
    "cocycle_from_twist",
    "r_from_form",
    "form_from_r",
    "fourier",
]

_DENSE_SOLVE_CAP = 200


class DegreeMismatch(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class NotATwist(ValueError):
    pass


class NotInvariant(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class NotSupported(ValueError):
    pass


class ThetaContractViolated(RuntimeError):
    pass


class GTensor:
    """Sparse element of k[G]^(tensor degree); zero coefficients never stored."""

    __slots__ = ("group", "degree", "terms")

    def __init__(self, group: FiniteGroup, degree: int, terms: dict):
        self.group = group
        self.degree = degree
        clean = {}
        for tup, c in terms.items():
            if not isinstance(c, CycNum):
                c = CycNum.rational(c)
            if not c.is_zero():
                assert len(tup) == degree
                clean[tuple(tup)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def unit(group: FiniteGroup, degree: int) -> "GTensor":
        return GTensor(group, degree, {(0,) * degree: CycNum.one()})

    @staticmethod
    def basis(group: FiniteGroup, tup) -> "GTensor":
        return GTensor(group, len(tup), {tuple(tup): CycNum.one()})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, GTensor) and self.group is other.group
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.degree,
                tuple(sorted((t, c.key()) for t, c in self.terms.items())))

    def __repr__(self):
        items = sorted(self.terms.items())[:6]
        body = " + ".join(f"({c!r})*{t}" for t, c in items)
        more = "" if len(self.terms) <= 6 else f" ... ({len(self.terms)} terms)"
        return f"GTensor[deg {self.degree}]({body}{more})"

    # -- linear operations ---------------------------------------------------

    def add(self, other: "GTensor") -> "GTensor":
        self._check_compatible(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t, CycNum.zero()) + c
            if v.is_zero():
                out.pop(t, None)
            else:
                out[t] = v
        return GTensor(self.group, self.degree, out)

    def scale(self, c) -> "GTensor":
        c = c if isinstance(c, CycNum) else CycNum.rational(c)
        return GTensor(self.group, self.degree,
                       {t: v * c for t, v in self.terms.items()})

    def sub(self, other: "GTensor") -> "GTensor":
        return self.add(other.scale(-1))

    def _check_compatible(self, other: "GTensor"):
        if self.group is not other.group:
            raise DegreeMismatch("tensors over different groups")
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"degree {self.degree} vs {other.degree}")

    # -- multiplicative operations -----------------------------------------

    def mul(self, other: "GTensor") -> "GTensor":
        self._check_compatible(other)
        table = self.group.table
        out: dict = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = tuple(table[a][b] for a, b in zip(t1, t2))
                v = out.get(t, CycNum.zero()) + c1 * c2
                if v.is_zero():
                    out.pop(t, None)
                else:
                    out[t] = v
        return GTensor(self.group, self.degree, out)

    def flip(self) -> "GTensor":
        assert self.degree == 2
        return GTensor(self.group, 2,
                       {(b, a): c for (a, b), c in self.terms.items()})

    def conjugate_diagonal(self, g: int) -> "GTensor":
        """(g x ... x g) T (g^-1 x ... x g^-1)."""
        G = self.group
        return GTensor(G, self.degree,
                       {tuple(G.conjugate(g, a) for a in t): c
                        for t, c in self.terms.items()})

    def apply_map(self, phi) -> "GTensor":
        return GTensor(self.group, self.degree,
                       {tuple(phi(a) for a in t): c
                        for t, c in self.terms.items()})

    def embed(self, slots, degree: int) -> "GTensor":
        """Place legs into the given slots of a degree-d tensor, identity
        elsewhere (e.g. F x 1 or 1 x F)."""
        out = {}
        for t, c in self.terms.items():
            full = [0] * degree
            for s, a in zip(slots, t):
                full[s] = a
            out[tuple(full)] = c
        return GTensor(self.group, degree, out)

    def outer(self, other: "GTensor") -> "GTensor":
        if self.group is not other.group:
            raise DegreeMismatch("tensors over different groups")
        out = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                out[t1 + t2] = c1 * c2
        return GTensor(self.group, self.degree + other.degree, out)

    def support_elements(self) -> set[int]:
        out = set()
        for t in self.terms:
            out.update(t)
        return out

    def supported_in(self, A: Subgroup) -> bool:
        return all(a in A for a in self.support_elements())

    def eval_characters(self, chars) -> CycNum:
        """(chi_1 x ... x chi_d)(T) for characters of subgroups of G."""
        total = CycNum.zero()
        for t, c in self.terms.items():
            v = c
            for chi, a in zip(chars, t):
                v = v * chi.eval(a)
            total = total + v
        return total

    # -- serialization -------------------------------------------------------

    def to_json(self, group_name=None):
        terms = sorted(self.terms.items())
        return {"group": group_name or self.group.name,
                "degree": self.degree,
                "terms": [{"g": list(t), "c": c.to_json()} for t, c in terms]}

    @staticmethod
    def from_json(obj, group: FiniteGroup) -> "GTensor":
        return GTensor(group, int(obj["degree"]),
                       {tuple(int(i) for i in item["g"]):
                        CycNum.from_json(item["c"])
                        for item in obj["terms"]})


def tensor_mul(x: GTensor, y: GTensor) -> GTensor:
    return x.mul(y)


def _tuple_group(G: FiniteGroup, degree: int, tuples,
                 cap: int = _DENSE_SOLVE_CAP):
    """Subgroup of G^degree generated by the given tuples, with its table."""
    ident = (0,) * degree
    elems = {ident} | {tuple(t) for t in tuples}
    changed = True
    while changed:
        changed = False
        current = list(elems)
        for a in current:
            for b in current:
                c = tuple(G.table[x][y] for x, y in zip(a, b))
                if c not in elems:
                    elems.add(c)
                    changed = True
                    if len(elems) > cap:
                        raise OrderLimitExceeded(
                            f"support generates a subgroup beyond {cap} elements")
    order = sorted(elems)
    index = {t: i for i, t in enumerate(order)}
    table = [[index[tuple(G.table[x][y] for x, y in zip(a, b))] for b in order]
             for a in order]
    H = FiniteGroup(table, name=None)
    return H, order, index


def tensor_inv(x: GTensor) -> GTensor:
    """Inverse in k[G]^(tensor d), computed inside the span of the support."""
    if x.is_zero():
        raise NotInvertible("zero tensor")
    G = x.group
    H, order, index = _tuple_group(G, x.degree, x.terms.keys())
    coeffs = [CycNum.zero()] * len(order)
    for t, c in x.terms.items():
        coeffs[index[t]] = c
    if H.is_abelian():
        inv_coeffs = _fourier_invert(H, coeffs)
    else:
        inv_coeffs = _dense_invert(H, coeffs)
    if inv_coeffs is None:
        raise NotInvertible("singular element")
    terms = {order[i]: c for i, c in enumerate(inv_coeffs) if not c.is_zero()}
    return GTensor(G, x.degree, terms)


def _fourier_invert(H: FiniteGroup, coeffs):
    A = H.whole_subgroup()
    chars = characters(A)
    n = H.order
    hat = []
    for chi in chars:
        v = CycNum.zero()
        for a, c in enumerate(coeffs):
            if not c.is_zero():
                v = v + c * chi.eval(a)
        if v.is_zero():
            return None
        hat.append(v.inv())
    scale = CycNum.rational(Fraction(1, n))
    out = []
    for a in range(n):
        v = CycNum.zero()
        ainv = H.inverses[a]
        for chi, hv in zip(chars, hat):
            v = v + hv * chi.eval(ainv)
        out.append(v * scale)
    return out


def _dense_invert(H: FiniteGroup, coeffs):
    # solve (left multiplication by x) y = e_0 in the regular representation
    n = H.order
    rows = [[CycNum.zero()] * (n + 1) for _ in range(n)]
    for a, c in enumerate(coeffs):
        if c.is_zero():
            continue
        for b in range(n):
            rows[H.table[a][b]][b] = rows[H.table[a][b]][b] + c
    rows[0][n] = CycNum.one()
    r = 0
    pivots = []
    for col in range(n):
        pr = next((i for i in range(r, n) if not rows[i][col].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][col].inv()
        rows[r] = [v * pv for v in rows[r]]
        for i in range(n):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if not rows[i][n].is_zero():
            return None
    if r < n:
        return None
    out = [CycNum.zero()] * n
    for i, col in enumerate(pivots):
        out[col] = rows[i][n]
    return out


# -- Hopf structure maps on k[G] --------------------------------------------


def coproduct(x: GTensor) -> GTensor:
    assert x.degree == 1
    return GTensor(x.group, 2, {(t[0], t[0]): c for t, c in x.terms.items()})


def counit(x: GTensor) -> CycNum:
    assert x.degree == 1
    total = CycNum.zero()
    for c in x.terms.values():
        total = total + c
    return total


def antipode(x: GTensor) -> GTensor:
    assert x.degree == 1
    inv = x.group.inverses
    return GTensor(x.group, 1, {(inv[t[0]],): c for t, c in x.terms.items()})


def delta1(a: GTensor) -> GTensor:
    """(a x a) Delta(a^-1)."""
    ainv = tensor_inv(a)
    return a.outer(a).mul(coproduct(ainv))


def _coproduct_leg(F: GTensor, which: int) -> GTensor:
    # (Delta x id)(F) for which=0, (id x Delta)(F) for which=1
    assert F.degree == 2
    if which == 0:
        return GTensor(F.group, 3,
                       {(g, g, h): c for (g, h), c in F.terms.items()})
    return GTensor(F.group, 3,
                   {(g, h, h): c for (g, h), c in F.terms.items()})


def delta2_left(F: GTensor) -> GTensor:
    """(F x 1)(Delta x id)(F)."""
    return F.embed((0, 1), 3).mul(_coproduct_leg(F, 0))


def delta2_right(F: GTensor) -> GTensor:
    """(1 x F)(id x Delta)(F)."""
    return F.embed((1, 2), 3).mul(_coproduct_leg(F, 1))


def is_twist(F: GTensor) -> bool:
    if F.degree != 2:
        return False
    try:
        tensor_inv(F)
    except NotInvertible:
        return False
    return delta2_left(F) == delta2_right(F)


def is_invariant(F: GTensor) -> bool:
    """Commutes with Delta(g) for the group generators (hence for all g)."""
    return all(F.conjugate_diagonal(g) == F
               for g in F.group.generating_set())


def is_normalized(F: GTensor) -> bool:
    total = CycNum.zero()
    for c in F.terms.values():
        total = total + c
    return total == CycNum.one()


def normalize_twist(F: GTensor) -> GTensor:
    total = CycNum.zero()
    for c in F.terms.values():
        total = total + c
    if total.is_zero():
        raise NotATwist("counit-degenerate tensor")
    return F.scale(total.inv())


def gauge(a: GTensor, F: GTensor) -> GTensor:
    """a . F = (a x a) F Delta(a^-1)."""
    ainv = tensor_inv(a)
    return a.outer(a).mul(F).mul(coproduct(ainv))


def r_matrix(F: GTensor) -> GTensor:
    """R_F = F_21 F^-1 for an invariant twist; checks the braiding axioms."""
    if not is_invariant(F):
        raise NotInvariant("twist does not commute with coproducts")
    if not is_twist(F):
        raise NotATwist("not a twist")
    R = F.flip().mul(tensor_inv(F))
    if _coproduct_leg(R, 0) != R.embed((0, 2), 3).mul(R.embed((1, 2), 3)):
        raise ThetaContractViolated("R-matrix axiom (Delta x id) failed")
    if _coproduct_leg(R, 1) != R.embed((0, 2), 3).mul(R.embed((0, 1), 3)):
        raise ThetaContractViolated("R-matrix axiom (id x Delta) failed")
    return R


def drinfeld_element(R: GTensor) -> GTensor:
    """u_R = sum S(t_i) s_i over the terms s_i x t_i of R."""
    assert R.degree == 2
    G = R.group
    out: dict = {}
    for (s, t), c in R.terms.items():
        g = (G.table[G.inverses[t]][s],)
        v = out.get(g, CycNum.zero()) + c
        if v.is_zero():
            out.pop(g, None)
        else:
            out[g] = v
    return GTensor(G, 1, out)


def socle(R: GTensor) -> Subgroup:
    """Subgroup generated by the support of either leg."""
    G = R.group
    return Subgroup(G, G.closure(R.support_elements()))


@dataclass(frozen=True)
class ThetaValue:
    socle: Subgroup
    form: AltForm

    def is_trivial(self) -> bool:
        return self.socle.order == 1


def theta(F: GTensor) -> ThetaValue:
    """Socle and braiding form of an invariant twist, contract-checked."""
    R = r_matrix(F)
    A = socle(R)
    if not A.is_normal():
        raise ThetaContractViolated("socle is not normal")
    if not A.is_abelian():
        raise ThetaContractViolated("socle is not abelian")
    b = form_from_r(A, R)
    if r_from_form(A, b) != R:
        raise ThetaContractViolated("R-matrix is not the bicharacter of a form")
    if not is_nondegenerate(b):
        raise ThetaContractViolated("braiding form degenerate on the socle")
    action = DualAction(A.parent, A)
    if not action.is_invariant_form(b):
        raise ThetaContractViolated("braiding form is not conjugation-invariant")
    return ThetaValue(A, b)


def form_from_r(A: Subgroup, R: GTensor) -> AltForm:
    """Read b(sigma, tau) = (sigma x tau)(R) off the dual generators."""
    basis = A.abelian_structure()
    chars = characters(A)
    by_exp = {chi.exponents: chi for chi in chars}
    r = len(basis)
    upper = {}
    for i in range(r):
        ei = tuple(1 if k == i else 0 for k in range(r))
        for j in range(i + 1, r):
            ej = tuple(1 if k == j else 0 for k in range(r))
            v = R.eval_characters((by_exp[ei], by_exp[ej]))
            m = gcd(basis[i][1], basis[j][1])
            e = next((k for k in range(m) if root_of_unity(m, k) == v), None)
            if e is None:
                raise ThetaContractViolated(
                    "pairing value is not a root of unity of the right order")
            upper[(i, j)] = e
    return AltForm.from_upper(A, upper)


# -- idempotents, cocycle dictionary, Fourier ---------------------------------


def idempotent(A: Subgroup, chi: Character) -> GTensor:
    """e_chi = |A|^-1 sum chi(a^-1) a."""
    G = A.parent
    scale = CycNum.rational(Fraction(1, A.order))
    return GTensor(G, 1, {(a,): chi.eval(G.inverses[a]) * scale
                          for a in A.elements})


def _dual_tables(A: Subgroup):
    basis = A.abelian_structure()
    ds = [d for _, d in basis]
    duals = list(itertools.product(*(range(d) for d in ds)))
    chars = {exps: Character(A, exps) for exps in duals}
    return ds, duals, chars


def twist_from_cocycle(A: Subgroup, c: dict) -> GTensor:
    """F = sum c(rho, sigma) e_rho x e_sigma over the dual of A."""
    from .pontryagin import cocycle_identity_holds

    if not cocycle_identity_holds(A, c):
        raise NotACocycle("table fails normalization or the cocycle identity")
    G = A.parent
    ds, duals, chars = _dual_tables(A)
    inv = G.inverses
    # stage 1: T[g][sigma] = sum_rho c(rho, sigma) rho(g^-1)
    stage = {}
    for g in A.elements:
        row = {}
        for sigma in duals:
            v = CycNum.zero()
            for rho in duals:
                v = v + c[(rho, sigma)] * chars[rho].eval(inv[g])
            row[sigma] = v
        stage[g] = row
    scale = CycNum.rational(Fraction(1, A.order * A.order))
    terms = {}
    for g in A.elements:
        for h in A.elements:
            v = CycNum.zero()
            for sigma in duals:
                v = v + stage[g][sigma] * chars[sigma].eval(inv[h])
            v = v * scale
            if not v.is_zero():
                terms[(g, h)] = v
    return GTensor(G, 2, terms)


def cocycle_from_twist(A: Subgroup, F: GTensor) -> dict:
    """c(rho, sigma) = (rho x sigma)(F) for a twist supported in k[A] x k[A]."""
    if F.degree != 2 or not F.supported_in(A):
        raise NotSupported("tensor not supported in the subgroup square")
    _, duals, chars = _dual_tables(A)
    return {(rho, sigma): F.eval_characters((chars[rho], chars[sigma]))
            for rho in duals for sigma in duals}


def r_from_form(A: Subgroup, b: AltForm) -> GTensor:
    """R(A, b) = sum b(sigma, tau) e_sigma x e_tau.

    Every summand is a root of unity, so the double character sum is
    accumulated as integer exponent counts and materialized once per cell.
    """
    G = A.parent
    ds, duals, _ = _dual_tables(A)
    coords = A.element_coordinates()
    L = 1
    for d in ds:
        L = L * d // gcd(L, d)
    inv = G.inverses
    weights = [L // d for d in ds]

    def chi_exp(sigma, x):
        cx = coords[x]
        return sum(s * c * w for s, c, w in zip(sigma, cx, weights)) % L

    bexp = {}
    for sigma in duals:
        for tau in duals:
            t, LL = b.value_exponent(sigma, tau)
            bexp[(sigma, tau)] = t * (L // LL) % L

    stage = {}
    for g in A.elements:
        ginv = inv[g]
        for tau in duals:
            counts = [0] * L
            for sigma in duals:
                counts[(bexp[(sigma, tau)] + chi_exp(sigma, ginv)) % L] += 1
            stage[(g, tau)] = counts

    scale = Fraction(1, A.order * A.order)
    terms = {}
    for g in A.elements:
        for h in A.elements:
            hinv = inv[h]
            total = [0] * L
            for tau in duals:
                ct = chi_exp(tau, hinv)
                cv = stage[(g, tau)]
                for e in range(L):
                    if cv[e]:
                        total[(e + ct) % L] += cv[e]
            v = CycNum(L, {e: k * scale for e, k in enumerate(total) if k})
            if not v.is_zero():
                terms[(g, h)] = v
    return GTensor(G, 2, terms)


def fourier(A: Subgroup, x: GTensor) -> dict:
    """Fourier table chi -> sum lambda_g chi(g^-1) on the dual of A."""
    if x.degree != 1 or not x.supported_in(A):
        raise NotSupported("tensor not supported in the subgroup")
    G = A.parent
    _, duals, chars = _dual_tables(A)
    out = {}
    for exps in duals:
        chi = chars[exps]
        v = CycNum.zero()
        for (g,), c in x.terms.items():
            v = v + c * chi.eval(G.inverses[g])
        out[exps] = v
    return out
