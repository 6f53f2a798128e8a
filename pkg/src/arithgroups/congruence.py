"""Congruence images of finitely generated matrix groups.

Generators live in GL_n(Q) with denominators supported on a finite prime set
S; reduction mod m (coprime to S) gives finite matrix groups whose exact
orders are computed by breadth-first closure and compared against the full
SL_n(Z/m) order.  Surjectivity is decided only by exact order equality.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from .closure import run_closure
from .errors import NonInvertibleDenominator, NotInvertible, Truncated
from .matrix import Mat
from .primes import factorint, prime_support, primes_upto
from .rings import QQ, IntegersMod

DEFAULT_CAP = 2 * 10 ** 6
ELEMENT_RETENTION_CAP = 10 ** 5


class SIntegerGroup:
    """A finitely generated subgroup of GL_n(Z_S) given by its generators."""

    def __init__(self, gens, label="group"):
        mats = []
        for g in gens:
            mats.append(g if isinstance(g, Mat) else Mat(QQ, g))
        if not mats:
            raise ValueError("need at least one generator")
        n = mats[0].n
        if any(m.n != n for m in mats):
            raise ValueError("generators must share one size")
        support = set()
        for g in mats:
            for row in g.rows:
                for x in row:
                    support |= prime_support(Fraction(x).denominator)
        for g in mats:
            d = Fraction(g.det())
            if d == 0:
                raise NotInvertible(f"generator of {label} is singular")
            if not (prime_support(d.numerator) | prime_support(d.denominator)) <= support:
                raise NotInvertible(
                    f"generator determinant {d} is not a unit in Z_S with S={sorted(support)}"
                )
        self.label = label
        self.n = n
        self.gens = tuple(mats)
        self.S = frozenset(support)

    def __repr__(self):
        return f"SIntegerGroup({self.label}, n={self.n}, S={sorted(self.S)})"


def reduce_generators(G, m):
    """Reduce the generators entrywise mod m, inverting denominators."""
    ring = IntegersMod(m)
    out = []
    for g in G.gens:
        rows = []
        for row in g.rows:
            new = []
            for x in row:
                q = Fraction(x)
                shared = gcd(q.denominator, m)
                if shared != 1:
                    p = min(prime_support(shared))
                    raise NonInvertibleDenominator(p)
                new.append(q.numerator * pow(q.denominator, -1, m) % m)
            rows.append(new)
        out.append(Mat(ring, rows))
    return out


@dataclass(frozen=True)
class FiniteClosure:
    modulus: int
    n: int
    order: int
    truncated: bool
    gen_images: tuple          # flat tuples mod modulus
    elements: tuple = None     # sorted flat tuples, or None in order-only mode

    def element_set(self):
        if self.elements is None:
            raise Truncated("closure kept no element set (order-only mode)")
        return self.elements


def bfs_closure(gens, cap=DEFAULT_CAP, keep_elements=False,
                element_cap=ELEMENT_RETENTION_CAP):
    """Breadth-first closure of matrices over Z/m under right multiplication.

    gens: Mat values over IntegersMod(m), or flat tuples plus a modulus via
    bfs_closure_flat.  Elements are retained sorted (canonical order) when
    requested and the order stays within element_cap.
    """
    if not gens:
        raise ValueError("need at least one generator")
    first = gens[0]
    m = first.ring.m
    n = first.n
    flat = [g.flat() for g in gens]
    return bfs_closure_flat(flat, n, m, cap, keep_elements, element_cap)


def bfs_closure_flat(gens_flat, n, m, cap=DEFAULT_CAP, keep_elements=False,
                     element_cap=ELEMENT_RETENTION_CAP):
    want = keep_elements
    order, truncated, elements = run_closure(list(gens_flat), n, m, cap, want)
    if elements is not None and order > element_cap:
        elements = None
    return FiniteClosure(
        modulus=m,
        n=n,
        order=order,
        truncated=truncated,
        gen_images=tuple(tuple(x % m for x in g) for g in gens_flat),
        elements=tuple(sorted(elements)) if elements is not None else None,
    )


def flat_mul(a, b, n, m):
    out = []
    for i in range(n):
        base = i * n
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += a[base + k] * b[k * n + j]
            out.append(acc % m)
    return tuple(out)


def flat_identity(n, m):
    return tuple(1 % m if i == j else 0 for i in range(n) for j in range(n))


def flat_inverse(a, n, m):
    return Mat(IntegersMod(m), [a[i * n : (i + 1) * n] for i in range(n)]).inverse().flat()


def canonical_bytes(flat, m):
    """Fixed-width big-endian byte encoding of a reduced flat matrix."""
    width = max(1, ((m - 1).bit_length() + 7) // 8)
    return b"".join(int(x).to_bytes(width, "big") for x in flat)


def order_sl(n, m):
    """|SL_n(Z/m)|, multiplicative over the prime powers of m.

    For a prime power p^k the order is p^((k-1)(n^2-1)) * |SL_n(F_p)| with
    |SL_n(F_p)| = p^(n(n-1)/2) * prod_{i=2..n} (p^i - 1).
    """
    if not 2 <= n <= 4:
        raise ValueError("order formula kept to 2 <= n <= 4 at desk scale")
    if not 1 <= m <= 10 ** 6:
        raise ValueError("modulus out of range")
    if m == 1:
        return 1
    total = 1
    for p, k in factorint(m):
        base = p ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            base *= p ** i - 1
        total *= p ** ((k - 1) * (n * n - 1)) * base
    return total


def elementary_generators_sl(n, m):
    """The 2*C(n,2) transvections I + E_ij (i != j) over Z/m."""
    if n < 2:
        raise ValueError("need n >= 2")
    ring = IntegersMod(m)
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            rows = [[ring.one if a == b else ring.zero for b in range(n)] for a in range(n)]
            rows[i][j] = ring.one
            gens.append(Mat(ring, rows))
    return gens


@dataclass(frozen=True)
class ImageRecord:
    m: int
    image_order: object      # int, or None when truncated
    target_order: int
    surjective: object       # bool, or None when truncated
    truncated: bool
    quasisimple: object = None


def is_surjective_image(G, p, k=1, cap=DEFAULT_CAP):
    """Compare the closure order mod p^k with |SL_n(Z/p^k)| exactly."""
    if p in G.S:
        raise ValueError(f"{p} lies in the denominator set S of {G.label}")
    m = p ** k
    closure = bfs_closure(reduce_generators(G, m), cap=cap)
    if closure.truncated:
        raise Truncated(
            f"closure mod {m} exceeded the cap {cap}; raise --cap for an exact answer"
        )
    target = order_sl(G.n, m)
    return ImageRecord(
        m=m,
        image_order=closure.order,
        target_order=target,
        surjective=closure.order == target,
        truncated=False,
    )


@dataclass(frozen=True)
class CongruenceReport:
    group: str
    S: tuple
    records: tuple
    exceptional_primes: tuple
    prime_bound: int
    exponent: int

    @property
    def summary(self):
        done = [r for r in self.records if not r.truncated]
        return {
            "primes_scanned": len(self.records),
            "surjective": sum(1 for r in done if r.surjective),
            "exceptional": len(self.exceptional_primes),
            "truncated": sum(1 for r in self.records if r.truncated),
        }


def strong_approx_scan(G, prime_bound, exponent=1, cap=DEFAULT_CAP):
    """Surjectivity census over all primes p <= bound outside S.

    Per-prime tasks are independent and merged in ascending prime order, so
    the report is deterministic.
    """
    records = []
    exceptional = []
    for p in primes_upto(prime_bound):
        if p in G.S:
            continue
        try:
            rec = is_surjective_image(G, p, exponent, cap=cap)
        except Truncated:
            rec = ImageRecord(
                m=p ** exponent,
                image_order=None,
                target_order=order_sl(G.n, p ** exponent),
                surjective=None,
                truncated=True,
            )
        records.append(rec)
        if rec.surjective is False:
            exceptional.append(p)
    return CongruenceReport(
        group=G.label,
        S=tuple(sorted(G.S)),
        records=tuple(records),
        exceptional_primes=tuple(exceptional),
        prime_bound=prime_bound,
        exponent=exponent,
    )


def principal_congruence_index(n, m):
    """[SL_n(Z) : Gamma(m)]; the reduction map is onto, so this is order_sl."""
    return order_sl(n, m)


@dataclass(frozen=True)
class OneForAllRow:
    label: str
    generating_primes: tuple
    nongenerating_primes: tuple
    generates_outside_bad_set: bool
    witnesses_implication: bool


def one_for_all_scan(n, sample_sets, prime_bound, bad_set=frozenset(), cap=DEFAULT_CAP):
    """For each sample set, the primes p <= bound where its image generates.

    A set witnesses the one-for-all implication when it generates at some
    prime outside the configured bad set and every non-generating prime in
    range lies inside the bad set.
    """
    rows = []
    bad = frozenset(bad_set)
    for label, gens in sample_sets:
        G = gens if isinstance(gens, SIntegerGroup) else SIntegerGroup(gens, label=label)
        generating = []
        failing = []
        for p in primes_upto(prime_bound):
            if p in G.S:
                continue
            rec = is_surjective_image(G, p, 1, cap=cap)
            (generating if rec.surjective else failing).append(p)
        outside = [p for p in generating if p not in bad]
        rows.append(OneForAllRow(
            label=label,
            generating_primes=tuple(generating),
            nongenerating_primes=tuple(failing),
            generates_outside_bad_set=bool(outside),
            witnesses_implication=bool(outside) and all(p in bad for p in failing),
        ))
    return tuple(rows)


@dataclass(frozen=True)
class QuasisimpleReport:
    p: int
    order: int
    perfect: bool
    center_order: int
    simple_quotient_order: int
    quotient_is_simple: bool

    @property
    def quasisimple(self):
        return self.perfect and self.quotient_is_simple


def quasisimple_check(closure, cap=4 * 10 ** 5):
    """Exhaustive quasisimplicity test for a full SL_2(F_p) closure.

    Verifies [G,G] = G by normal closure of generator commutators and
    simplicity of G/Z by generating the normal closure of one representative
    per nontrivial conjugacy class.
    """
    p = closure.modulus
    n = closure.n
    if closure.elements is None:
        raise Truncated("quasisimple check needs the full element set")
    if p * closure.order > cap:
        raise Truncated(f"{p} * {closure.order} exceeds the exhaustive-check cap {cap}")
    elements = closure.elements
    elem_set = set(elements)
    gens = list(closure.gen_images)

    def mul(a, b):
        return flat_mul(a, b, n, p)

    def inv(a):
        return flat_inverse(a, n, p)

    ident = flat_identity(n, p)

    def subgroup(generators):
        generators = [g for g in set(generators) if g != ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    # perfect: [G,G] is the normal closure of the generator commutators
    comms = []
    for a in gens:
        for b in gens:
            comms.append(mul(mul(a, b), mul(inv(a), inv(b))))
    closure_set = set(comms) | {ident}
    changed = True
    while changed:
        changed = False
        for g in gens:
            ginv = inv(g)
            new = {mul(mul(ginv, x), g) for x in closure_set}
            if not new <= closure_set:
                closure_set |= new
                changed = True
    derived = subgroup(closure_set)
    perfect = len(derived) == closure.order

    # centre: elements commuting with every generator
    center = [x for x in elements if all(mul(x, g) == mul(g, x) for g in gens)]
    center_set = set(center)

    # conjugacy classes of G/Z on canonical coset representatives; the
    # element -> representative table makes the quotient BFS loops O(1)
    rep_table = {}
    for x in elements:
        rep_table[x] = min(mul(x, z) for z in center)

    def coset_rep(x):
        return rep_table[x]

    quotient = sorted(set(rep_table.values()))

    gen_invs = [inv(g) for g in gens]
    unassigned = set(quotient)
    unassigned.discard(coset_rep(ident))
    classes = []
    while unassigned:
        seed = min(unassigned)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for x in frontier:
                for g, gi in zip(gens, gen_invs):
                    y = coset_rep(mul(mul(gi, x), g))
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        classes.append(sorted(orbit))
        unassigned -= orbit

    def quotient_subgroup(generators):
        seen = {coset_rep(ident)}
        frontier = list(seen)
        gens_q = [g for g in set(generators) if g not in seen]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens_q:
                    y = coset_rep(mul(x, g))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    simple = True
    for cls in classes:
        normal_closure = quotient_subgroup(cls)
        if len(normal_closure) != len(quotient):
            simple = False
            break

    return QuasisimpleReport(
        p=p,
        order=closure.order,
        perfect=perfect,
        center_order=len(center_set),
        simple_quotient_order=len(quotient),
        quotient_is_simple=simple and len(quotient) > 1,
    )
