"""The index-divisibility set S(D), its arrow graph, and cycle machinery.

S(D) is the set of n with n | D_n.  Arrows join n to m when m is a
minimal proper multiple of n inside the set.  Prime-weight arrows come
from p | D_n, additive reduction, or anomalous primes; composite-weight
arrows come from aliquot numbers or satisfy an exact product bound.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .apparition import index_divisible, rank_prime
from .curves import ADDITIVE
from .errors import (
    FactorizationFailure,
    SingularReduction,
    UnclassifiableArrow,
    VerificationError,
)
from .numutil import cmp_sqrt_form, factorize, is_prime, primes_up_to, sqrt_form_pow

ORBIT_CAP = 64

PRIME_DIVIDES = "prime_divides_Dn"
ADDITIVE_PRIME = "additive_reduction_prime"
ALIQUOT = "aliquot_number"
NONSTANDARD = "nonstandard"


@dataclass
class IndexDivisibilitySet:
    bound: int
    elements: list

    def __post_init__(self):
        self._members = set(self.elements)

    def __contains__(self, n):
        return n in self._members

    def contains(self, n):
        return n in self._members


@dataclass
class Arrow:
    source: int
    target: int

    @property
    def weight(self):
        return self.target // self.source


@dataclass
class ArrowClassification:
    kind: str
    t: int = None
    p0: int = None
    lhs: Fraction = None
    bound_ok: bool = None
    bad_primes_in_weight: list = field(default_factory=list)


@dataclass
class AliquotCycle:
    primes: list
    generalized: bool

    @property
    def aliquot_number(self):
        n = 1
        for p in self.primes:
            n *= p
        return n


@dataclass
class GdGraph:
    d: int
    vertices: list
    arrows: list  # (p, q) pairs
    in_deg: dict
    out_deg: dict
    connected: bool
    cofactors: dict  # M_p = r_p / product of arrow targets from p
    eq_identity_ok: bool


@dataclass
class EllipticCycleBoundReport:
    primes: list
    product: Fraction
    product_lt_2: bool
    threshold_ok: bool
    is_elliptic_cycle: bool


def enumerate_set(ctx, bound, method="auto"):
    """All n <= bound with n | D_n."""
    elements = [n for n in range(1, bound + 1) if index_divisible(ctx, n, method)]
    return IndexDivisibilitySet(bound, elements)


def arrows(divset):
    """Minimal-multiple arrows inside the set.

    (n -> m) qualifies when n | m, n != m, and no third element sits
    strictly between them in the divisor order.
    """
    members = set(divset.elements)
    out = []
    for n in divset.elements:
        for m in divset.elements:
            if m <= n or m % n != 0:
                continue
            if any(k != n and k != m and k % n == 0 and m % k == 0
                   for k in members):
                continue
            out.append(Arrow(n, m))
    return out


def is_aliquot_number(ctx, d, generalized=False):
    """Whether d is the product of one aliquot cycle of distinct primes."""
    try:
        factors = factorize(d)
    except FactorizationFailure:
        return False
    if any(e > 1 for _, e in factors):
        return False
    primes = [p for p, _ in factors]
    succ = {}
    for p in primes:
        if not generalized and not ctx.curve.has_good_reduction(p):
            return False
        try:
            succ[p] = rank_prime(ctx, p).rank
        except SingularReduction:
            return False
        if succ[p] not in primes:
            return False
    cur = primes[0]
    for _ in primes:
        cur = succ[cur]
    if cur != primes[0]:
        return False
    seen = set()
    cur = primes[0]
    while cur not in seen:
        seen.add(cur)
        cur = succ[cur]
    return len(seen) == len(primes)


def classify_arrow(ctx, arrow):
    """One of the four arrow kinds, with the exact bound data when nonstandard."""
    n, d = arrow.source, arrow.weight
    if is_prime(d):
        if ctx.term_divisible_by(n, d):
            return ArrowClassification(PRIME_DIVIDES)
        if ctx.curve.reduction_kind(d) == ADDITIVE:
            return ArrowClassification(ADDITIVE_PRIME)
        try:
            if rank_prime(ctx, d).rank == d:
                return ArrowClassification(ALIQUOT)
        except SingularReduction:
            pass
        raise UnclassifiableArrow(f"prime-weight arrow {n}->{arrow.target}")
    if gcd(n, d) == 1 and is_aliquot_number(ctx, d, generalized=True):
        return ArrowClassification(ALIQUOT)
    primes = [p for p, _ in factorize(d)]
    bad = [p for p in primes if not ctx.curve.has_good_reduction(p)]
    t = 0
    lhs = Fraction(1)
    for p in primes:
        try:
            r = rank_prime(ctx, p).rank
        except SingularReduction:
            raise UnclassifiableArrow(
                f"weight prime {p} has singular reduction of the base point"
            ) from None
        if r > 1 and not is_prime(r):
            t += 1
        lhs *= Fraction(ctx.curve.count_points(p), p)
    p0 = min(p for p, _ in factorize(n * d))
    bound_ok = lhs >= p0**t
    if t >= 1 and bound_ok:
        return ArrowClassification(NONSTANDARD, t=t, p0=p0, lhs=lhs,
                                   bound_ok=bound_ok, bad_primes_in_weight=bad)
    raise UnclassifiableArrow(
        f"composite-weight arrow {n}->{arrow.target}: t={t}, lhs={lhs}, p0={p0}"
    )


def _canonical_rotation(primes):
    i = primes.index(min(primes))
    return tuple(primes[i:] + primes[:i])


def aliquot_cycles(ctx, bound, generalized=False):
    """Cycles of distinct primes under p -> r_p, found from primes <= bound."""
    cap = (isqrt(bound) + 1) ** 2  # one Hasse step past the bound
    found = {}
    for p in primes_up_to(bound):
        seen = []
        cur = p
        while len(seen) <= ORBIT_CAP and cur <= cap:
            if cur in seen:
                cycle = seen[seen.index(cur):]
                key = _canonical_rotation(cycle)
                found.setdefault(key, AliquotCycle(list(key), generalized))
                break
            if not generalized and not ctx.curve.has_good_reduction(cur):
                break
            seen.append(cur)
            try:
                r = rank_prime(ctx, cur).rank
            except SingularReduction:
                break
            if r == 1 or not is_prime(r):
                break
            cur = r
    return sorted(found.values(), key=lambda c: c.primes)


def anomalous_primes(curve, bound):
    """Good primes p <= bound with #E(F_p) = p."""
    return [p for p in primes_up_to(bound)
            if curve.has_good_reduction(p) and curve.count_points(p) == p]


def elliptic_aliquot_cycles(curve, bound):
    """Cycles of distinct primes under p -> #E(F_p) over good primes."""
    cap = (isqrt(bound) + 1) ** 2
    found = {}
    for p in primes_up_to(bound):
        seen = []
        cur = p
        while len(seen) <= ORBIT_CAP and cur <= cap:
            if cur in seen:
                cycle = seen[seen.index(cur):]
                key = _canonical_rotation(cycle)
                found.setdefault(key, list(key))
                break
            if not curve.has_good_reduction(cur):
                break
            seen.append(cur)
            count = curve.count_points(cur)
            if not is_prime(count):
                break
            cur = count
    return sorted(found.values())


def gd_graph(ctx, n, d):
    """The prime graph of a composite arrow weight d, with the exact identity.

    Vertices are the primes of d; p -> q when q | r_p.  The identity
    prod r_p/p = (prod q^(indeg-1)) * (prod M_p) is evaluated exactly,
    where M_p is r_p divided by the product of p's arrow targets.
    """
    vertices = sorted(p for p, _ in factorize(d))
    ranks = {p: rank_prime(ctx, p).rank for p in vertices}
    arrow_pairs = [(p, q) for p in vertices for q in vertices if ranks[p] % q == 0]
    in_deg = {p: 0 for p in vertices}
    out_deg = {p: 0 for p in vertices}
    for p, q in arrow_pairs:
        out_deg[p] += 1
        in_deg[q] += 1
    adj = {p: set() for p in vertices}
    for p, q in arrow_pairs:
        adj[p].add(q)
        adj[q].add(p)
    seen = set()
    stack = [vertices[0]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v] - seen)
    connected = len(seen) == len(vertices)
    cofactors = {}
    for p in vertices:
        prod = 1
        for q in vertices:
            if ranks[p] % q == 0:
                prod *= q
        cofactors[p] = Fraction(ranks[p], prod)
    lhs = Fraction(1)
    for p in vertices:
        lhs *= Fraction(ranks[p], p)
    rhs = Fraction(1)
    for q in vertices:
        rhs *= Fraction(q) ** (in_deg[q] - 1)
    for p in vertices:
        rhs *= cofactors[p]
    return GdGraph(d, vertices, arrow_pairs, in_deg, out_deg, connected,
                   cofactors, lhs == rhs)


def check_elliptic_cycle_bound(ctx, cycle):
    """Exact product bound and threshold test for an aliquot cycle.

    Verifies the implication: product of #E(F_p)/p below 2 forces the
    cycle to also be a cycle under p -> #E(F_p).
    """
    primes = list(cycle.primes) if isinstance(cycle, AliquotCycle) else list(cycle)
    ell = len(primes)
    is_aliquot = all(
        rank_prime(ctx, primes[i]).rank == primes[(i + 1) % ell]
        for i in range(ell)
    )
    counts = {p: ctx.curve.count_points(p) for p in primes}
    product = Fraction(1)
    for p in primes:
        product *= Fraction(counts[p], p)
    pmin = min(primes)
    # min p > 1/(2^(1/2l) - 1)^2  iff  (1 + 1/sqrt(pmin))^(2l) < 2
    a, b = sqrt_form_pow(pmin, ell)
    threshold_ok = cmp_sqrt_form(a, b, pmin, 2 * pmin**ell) < 0
    is_elliptic = all(
        counts[primes[i]] == primes[(i + 1) % ell] for i in range(ell)
    )
    lt2 = product < 2
    if is_aliquot and lt2 and not is_elliptic:
        raise VerificationError(
            f"cycle {primes}: product {product} < 2 but point counts do not cycle"
        )
    return EllipticCycleBoundReport(primes, product, lt2, threshold_ok, is_elliptic)


def nonstandard_weight_floor(p_min):
    """(nu, d_floor): minimal prime count and weight of a nonstandard arrow
    whose smallest weight prime is at least p_min.

    nu is the least count with (1 + 1/sqrt(p_min))^nu >= sqrt(2), decided
    exactly; d_floor multiplies the nu smallest primes >= p_min.
    """
    nu = 1
    while True:
        a, b = sqrt_form_pow(p_min, nu)
        if cmp_sqrt_form(a, b, p_min, 2 * p_min**nu) >= 0:
            break
        nu += 1
    d_floor = 1
    count = 0
    q = max(p_min, 2)
    while count < nu:
        if is_prime(q):
            d_floor *= q
            count += 1
        q += 1
    return nu, d_floor


# -- export -----------------------------------------------------------------


def graph_report(ctx, bound, generalized=False, method="auto"):
    """The full JSON-ready report: set, classified arrows, cycles, anomalous."""
    divset = enumerate_set(ctx, bound, method)
    arrow_list = arrows(divset)
    arrow_dicts = []
    for a in arrow_list:
        entry = {"from": a.source, "to": a.target, "weight": a.weight}
        cls = classify_arrow(ctx, a)
        entry["kind"] = cls.kind
        if cls.kind == NONSTANDARD:
            entry["t"] = cls.t
            entry["p0"] = cls.p0
            entry["lhs"] = [cls.lhs.numerator, cls.lhs.denominator]
            entry["bound_ok"] = cls.bound_ok
            if cls.bad_primes_in_weight:
                entry["bad_primes_in_weight"] = cls.bad_primes_in_weight
        arrow_dicts.append(entry)
    cycles = aliquot_cycles(ctx, bound, generalized)
    return {
        "bound": bound,
        "elements": divset.elements,
        "arrows": arrow_dicts,
        "cycles": [c.primes for c in cycles],
        "anomalous": anomalous_primes(ctx.curve, bound)
        if not ctx.curve.is_singular
        else [],
    }


def to_dot(divset, arrow_list):
    """Deterministic DOT digraph: ascending vertices, weight-labeled edges."""
    lines = ["digraph S {"]
    for n in sorted(divset.elements):
        lines.append(f"  {n};")
    for a in sorted(arrow_list, key=lambda a: (a.source, a.target)):
        lines.append(f'  {a.source} -> {a.target} [label="w={a.weight}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
