"""Monodromy-side invariants of a resolved tuple of plane curves.

Covers the nearby-cycle zeta function computed combinatorially from the dual
graph, the translated-cotorus bound on the support of the local Alexander
modules, stalk combinatorics at a normal-crossings point, and the two
conjecture checkers (pole hyperplanes land in the support; non-holomorphy
forces the twisting character into the support closure).

Everything here is germ-local over a chosen base point and purely
combinatorial in the divisor data (N, nu, dual-graph adjacency).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from .algebra.intmat import invariant_factors, matrix_rank
from .algebra.multipoly import MultiPolynomial, poly_gcd_univariate
from .reduction import ResidualFunction, reduce_mod_p
from .zeta import Hyperplane, actual_polar_hyperplanes, denef_zeta, holomorphy_test

INFINITE = "infinite"


def _vector_gcd(N):
    g = 0
    for n in N:
        g = gcd(g, n)
    return g


def _as_base_point(point):
    return (Fraction(point[0]), Fraction(point[1]))


# ---------------------------------------------------------------------------
# nearby-cycle zeta function


class MonodromyZeta:
    """Formal product prod_i (t^(N_i) - 1)^(e_i) attached to a base point."""

    __slots__ = ("factors", "base_point")

    def __init__(self, factors, base_point):
        merged = {}
        for N, e in factors:
            N = tuple(int(n) for n in N)
            merged[N] = merged.get(N, 0) + int(e)
        self.factors = tuple(
            (N, e) for N, e in sorted(merged.items()) if e != 0
        )
        self.base_point = base_point

    @property
    def r(self):
        return len(self.factors[0][0]) if self.factors else None

    def is_trivial(self):
        return not self.factors

    def net_exponent(self, direction, translate):
        """Net order of the product along the cotorus {phi^direction = e^(2 pi i translate)}.

        A factor (t^N - 1)^e vanishes on that cotorus exactly when N is an
        integer multiple m * direction with m * translate integral.
        """
        direction = tuple(direction)
        total = 0
        for N, e in self.factors:
            g = _vector_gcd(N)
            if tuple(n // g for n in N) != direction:
                continue
            if (g * translate).denominator == 1:
                total += e
        return total

    def component_cotori(self):
        """All cotorus components of the zero loci of the individual factors."""
        out = set()
        for N, _ in self.factors:
            g = _vector_gcd(N)
            direction = tuple(n // g for n in N)
            for k in range(g):
                out.add(TranslatedCotorus(direction, Fraction(k, g)))
        return sorted(out)

    def univariate_num_den(self):
        """(numerator, denominator) as coprime one-variable polynomials.

        Only meaningful for r = 1; cancellation runs over Q and the result is
        renormalized to primitive integer polynomials with positive leading
        denominator coefficient.
        """
        if self.r not in (None, 1):
            raise ValueError("univariate form needs a single curve")
        one = MultiPolynomial.constant(1, Fraction(1))
        num, den = one, one
        for (N,), e in self.factors:
            binom = MultiPolynomial(1, {(N,): Fraction(1), (0,): Fraction(-1)})
            if e > 0:
                num = num * binom**e
            else:
                den = den * binom ** (-e)
        while True:
            g = poly_gcd_univariate(num, den)
            if g.is_zero() or g.total_degree() == 0:
                break
            num = num.exact_div(g)
            den = den.exact_div(g)
        c_num, num = num.content_and_primitive()
        c_den, den = den.content_and_primitive()
        return num * (c_num / c_den), den

    def __repr__(self):
        if not self.factors:
            return "MonodromyZeta(1)"
        names = ["t"] if self.r == 1 else [f"t{j + 1}" for j in range(self.r)]
        parts = []
        for N, e in self.factors:
            body = "*".join(
                f"{name}^{n}" if n > 1 else name for name, n in zip(names, N) if n
            )
            parts.append(f"({body}-1)^{e}" if e != 1 else f"({body}-1)")
        return f"MonodromyZeta({''.join(parts)})"


def sabbah_zeta(graph, x):
    """Nearby-cycle zeta function of the tuple at base point x.

    The exponent of each divisor over x is minus the Euler characteristic of
    the part of its open stratum sitting over x: an exceptional curve is a
    projective line minus its marked points; a strict transform contributes
    through the finitely many points of its fiber over x, each counting 1
    unless another component passes through it.
    """
    x = _as_base_point(x)
    over = graph.divisors_over_point(x)
    blown_up = any(d.kind == "exceptional" and d.base_point == x for d in over)
    factors = []
    for d in over:
        if d.kind == "exceptional":
            e = d.boundary_count() - 2
        else:
            shared = any(
                other.kind == "strict"
                and other.id != d.id
                and other.plane_equation.evaluate(x) == 0
                for other in over
            )
            e = 0 if blown_up or shared else -1
        if e:
            factors.append((tuple(d.N), e))
    return MonodromyZeta(factors, x)


def smooth_germ_zeta(divisor):
    """Zeta function at a generic clean point of a strict transform branch."""
    if divisor.kind != "strict":
        raise ValueError("smooth-germ certificate applies to strict transforms")
    return MonodromyZeta([(tuple(divisor.N), -1)], None)


# ---------------------------------------------------------------------------
# characters and cotori


@dataclass(frozen=True, order=True)
class FiniteOrderCharacter:
    """A character of finite order, stored through its exponent vector in (Q/Z)^r."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", tuple(Fraction(a) % 1 for a in self.exponents)
        )

    @classmethod
    def trivial(cls, r):
        return cls((Fraction(0),) * r)

    @classmethod
    def from_character_tuple(cls, chi):
        return cls(chi.finite_order_exponents())

    @property
    def r(self):
        return len(self.exponents)

    def order(self):
        out = 1
        for a in self.exponents:
            out = out * a.denominator // gcd(out, a.denominator)
        return out

    def is_trivial(self):
        return not any(self.exponents)


@dataclass(frozen=True, order=True)
class TranslatedCotorus:
    """The coset {phi : phi^N = e^(2 pi i tau)} with N a primitive vector."""

    N: tuple
    tau: Fraction

    def __post_init__(self):
        object.__setattr__(self, "N", tuple(int(n) for n in self.N))
        object.__setattr__(self, "tau", Fraction(self.tau) % 1)
        if _vector_gcd(self.N) != 1:
            raise ValueError("cotorus direction must be a primitive vector")

    def contains(self, phi):
        if len(phi.exponents) != len(self.N):
            raise ValueError("character rank mismatch")
        total = sum(n * a for n, a in zip(self.N, phi.exponents))
        return (total - self.tau).denominator == 1

    def translate_order(self):
        return self.tau.denominator

    def __repr__(self):
        return f"TranslatedCotorus(N={self.N}, tau={self.tau})"


def cotorus_closure(cotorus):
    """Closure under the cyclic group generated by the translating character.

    For a translate of finite order n this is the union of the n cotori with
    translates i * tau, i = 1..n; it contains the input and is idempotent.
    """
    n = cotorus.translate_order()
    return sorted(
        TranslatedCotorus(cotorus.N, (i * cotorus.tau) % 1) for i in range(1, n + 1)
    )


@dataclass(frozen=True)
class HyperplaneCotori:
    """Character-space image of a pole hyperplane sum_j N^j s_j + nu = 0.

    Stored as the slope vector N, the gcd g of its entries, and the residue
    rho = -nu mod g.  A finite-order character with exponent vector a lies on
    the image iff N . a is congruent to rho modulo g.
    """

    N: tuple
    g: int
    rho: Fraction

    @classmethod
    def from_hyperplane(cls, H):
        g = _vector_gcd(H.N)
        return cls(tuple(H.N), g, Fraction(-H.nu) % g)

    def contains(self, phi):
        total = sum(n * a for n, a in zip(self.N, phi.exponents))
        return ((total - self.rho) / self.g).denominator == 1

    def components(self):
        """The image is a single translated cotorus in direction N/g."""
        direction = tuple(n // self.g for n in self.N)
        return [TranslatedCotorus(direction, self.rho / self.g)]


def hyperplane_cotori(H):
    return HyperplaneCotori.from_hyperplane(H)


def alexander_support_bound(graph, xi):
    """Finite set of translated cotori containing the Alexander support at xi.

    Every divisor over the point contributes the components of the locus
    {phi^N = 1}: for g = gcd(N) these are the g cotori with direction N/g and
    translates k/g.
    """
    xi = _as_base_point(xi)
    out = set()
    for d in graph.divisors_over_point(xi):
        N = tuple(d.N)
        if not any(N):
            continue
        g = _vector_gcd(N)
        direction = tuple(n // g for n in N)
        for k in range(g):
            out.add(TranslatedCotorus(direction, Fraction(k, g)))
    return sorted(out)


def support_certificate(graph, xi):
    """Cotorus components certified to lie in the Alexander support at xi.

    A component is certified when the nearby-cycle zeta function has nonzero
    net exponent along it; cancellation can hide components, so this list is
    a subset of the truth, never a superset.
    """
    zeta = sabbah_zeta(graph, xi)
    out = []
    for cotorus in zeta.component_cotori():
        net = zeta.net_exponent(cotorus.N, cotorus.tau)
        if net:
            out.append((cotorus, net))
    return out


# ---------------------------------------------------------------------------
# stalk combinatorics at a normal-crossings point


@dataclass(frozen=True)
class StalkData:
    """Nearby-cycle stalk ranks at a point lying on the given divisors."""

    divisors: tuple
    component_count: int | str
    prime_to_p_components: int | str
    lattice_rank: int
    ranks: tuple
    kappa_gcd_product: int

    def alternating_sum(self):
        if self.prime_to_p_components == INFINITE:
            raise ValueError("alternating sum undefined for infinite stalks")
        return sum((-1) ** q * rank for q, rank in enumerate(self.ranks))


def _prime_to_p_part(n, p):
    while n % p == 0:
        n //= p
    return n


def local_stalk_data(I, Nmatrix, p):
    """Stalk invariants at a point on the divisors I with multiplicity matrix Nmatrix.

    Columns of Nmatrix are the multiplicity vectors of the divisors through
    the point; rows are indexed by the r curves.  The relation lattice M is
    the kernel of the column map Z^C -> Z^r, so rk M = C - rank.  The local
    component count of the Milnor fiber is the cokernel order when the map is
    surjective onto a finite-index subgroup (full rank r) and infinite
    otherwise; only its prime-to-p part survives tamely.  The rank in
    cohomological degree q is binom(rk M, q) times the component count.

    kappa_gcd_product records the product over divisors of gcd_j N_i^j, a quantity
    that differs from the cokernel order on multi-divisor points; both are
    exposed so the discrepancy stays visible.
    """
    I = tuple(I)
    rows = len(Nmatrix)
    cols = len(Nmatrix[0]) if rows else 0
    if cols != len(I):
        raise ValueError("one matrix column per divisor expected")
    rank = matrix_rank([list(row) for row in Nmatrix])
    lattice_rank = cols - rank
    kappa = 1
    for i in range(cols):
        kappa *= _vector_gcd([Nmatrix[j][i] for j in range(rows)])
    if rank == rows:
        count = 1
        for d in invariant_factors([list(row) for row in Nmatrix]):
            count *= d
        count = abs(count)
        prime_to_p = _prime_to_p_part(count, p)
        ranks = tuple(comb(lattice_rank, q) * prime_to_p for q in range(lattice_rank + 1))
    else:
        count = INFINITE
        prime_to_p = INFINITE
        ranks = ()
    return StalkData(
        divisors=I,
        component_count=count,
        prime_to_p_components=prime_to_p,
        lattice_rank=lattice_rank,
        ranks=ranks,
        kappa_gcd_product=kappa,
    )


# ---------------------------------------------------------------------------
# conjecture checkers


@dataclass
class HyperplaneVerdict:
    hyperplane: Hyperplane
    verdict: str
    witness_kind: str | None = None
    witness_divisor: int | None = None
    base_point: tuple | None = None
    cotorus: TranslatedCotorus | None = None
    net_exponent: int | None = None
    cluster: tuple | None = None
    component: tuple | None = None
    w: int | None = None
    note: str = ""


@dataclass
class MonodromyReport:
    p: int
    chi: object
    entries: list = field(default_factory=list)

    def verdict(self):
        if any(e.verdict == "failed" for e in self.entries):
            return "failed"
        if any(e.verdict == "inconclusive" for e in self.entries):
            return "inconclusive"
        return "verified"


def _hyperplane_witnesses(graph, H):
    """Divisors that realize the hyperplane and qualify for the unmask filter."""
    out = []
    for d in graph.divisors:
        if not any(d.N):
            continue
        if Hyperplane.normalize(tuple(d.N), d.nu) != H:
            continue
        if d.kind == "strict" or d.boundary_count() >= 3:
            out.append(d)
    return out


def _exceptional_cluster(graph, witness, xi):
    """Exceptional divisors over xi whose N is an integer multiple of N' and
    the connected dual-graph component of the witness inside that set."""
    g = gcd(witness.nu, _vector_gcd(witness.N))
    N_prime = tuple(n // g for n in witness.N)
    cluster = []
    for d in graph.divisors:
        if d.kind != "exceptional" or d.base_point != xi:
            continue
        ratios = set()
        ok = True
        for n, m in zip(d.N, N_prime):
            if m == 0:
                if n != 0:
                    ok = False
                continue
            if n % m:
                ok = False
                break
            ratios.add(n // m)
        if ok and len(ratios) == 1 and next(iter(ratios)) >= 1:
            cluster.append(d.id)
    cluster = sorted(cluster)
    adjacency = {i: set() for i in cluster}
    for ix in graph.intersections:
        a, b = ix.divisors
        if a in adjacency and b in adjacency:
            adjacency[a].add(b)
            adjacency[b].add(a)
    component = set()
    stack = [witness.id]
    while stack:
        i = stack.pop()
        if i in component:
            continue
        component.add(i)
        stack.extend(adjacency[i] - component)
    w = sum(graph.divisor(i).euler_open() for i in component)
    return tuple(cluster), tuple(sorted(component)), w


def check_monodromy_conjecture(graph, Z):
    """Check that every polar hyperplane lands in the Alexander support.

    For each polar hyperplane the character-space image is a single
    translated cotorus.  A strict-transform witness certifies it at one of
    its smooth clean points, where the local zeta function is
    (t^N - 1)^(-1).  An exceptional witness certifies it at its base point
    when the nearby-cycle zeta function has nonzero net exponent along the
    cotorus and the connected cluster of compatible exceptional divisors has
    negative total Euler characteristic.  Cancellation in the zeta function
    can only hide evidence, so a miss is reported as inconclusive, not as a
    counterexample; a polar hyperplane with no qualifying witness at all
    cannot have survived the unmasking filter and is reported as failed.
    """
    report = MonodromyReport(p=Z.p, chi=Z.chi)
    for H in sorted(actual_polar_hyperplanes(Z)):
        cotorus = hyperplane_cotori(H).components()[0]
        witnesses = _hyperplane_witnesses(graph, H)
        if not witnesses:
            report.entries.append(
                HyperplaneVerdict(
                    H, "failed", note="no strict or triple-point divisor realizes it"
                )
            )
            continue
        entry = None
        for d in witnesses:
            if d.kind != "strict":
                continue
            zeta = smooth_germ_zeta(d)
            net = zeta.net_exponent(cotorus.N, cotorus.tau)
            if net:
                entry = HyperplaneVerdict(
                    H,
                    "verified",
                    witness_kind="strict",
                    witness_divisor=d.id,
                    cotorus=cotorus,
                    net_exponent=net,
                )
                break
        if entry is None:
            for d in witnesses:
                if d.kind != "exceptional":
                    continue
                xi = d.base_point
                zeta = sabbah_zeta(graph, xi)
                net = zeta.net_exponent(cotorus.N, cotorus.tau)
                cluster, component, w = _exceptional_cluster(graph, d, xi)
                if net and w < 0:
                    entry = HyperplaneVerdict(
                        H,
                        "verified",
                        witness_kind="exceptional",
                        witness_divisor=d.id,
                        base_point=xi,
                        cotorus=cotorus,
                        net_exponent=net,
                        cluster=cluster,
                        component=component,
                        w=w,
                    )
                    break
        if entry is None:
            entry = HyperplaneVerdict(
                H,
                "inconclusive",
                cotorus=cotorus,
                note="no witness produced a nonzero net exponent with w < 0",
            )
        report.entries.append(entry)
    return report


@dataclass
class CharacterVerdict:
    chi: object
    holomorphic: bool
    verdict: str
    witness_divisor: int | None = None
    base_point: tuple | None = None
    component: TranslatedCotorus | None = None
    note: str = ""


@dataclass
class HolomorphyReport:
    p: int
    entries: list = field(default_factory=list)

    def verdict(self):
        if any(e.verdict == "failed" for e in self.entries):
            return "failed"
        if any(e.verdict == "inconclusive" for e in self.entries):
            return "inconclusive"
        return "verified"


def check_holomorphy_conjecture(graph, chi_list, p):
    """Check that non-holomorphy forces the character into the support closure.

    For each character whose zeta function (unit-ball localization) has at
    least one polar hyperplane, a witness divisor passing the character
    compatibility condition and the unmask filter must exist, and the image
    of the character must lie in the closure of a support component the
    certificate actually sees at the witness's point.  Holomorphic characters
    satisfy the statement vacuously.
    """
    reduced = reduce_mod_p(graph, p)
    phi = ResidualFunction.unit_ball()
    report = HolomorphyReport(p=p)
    for chi in chi_list:
        Z = denef_zeta(reduced, chi, phi)
        if holomorphy_test(Z):
            report.entries.append(
                CharacterVerdict(chi, True, "verified", note="zeta is holomorphic")
            )
            continue
        image = FiniteOrderCharacter.from_character_tuple(chi)
        entry = None
        for d in graph.divisors:
            if not any(d.N) or not chi.gamma(d.N):
                continue
            if not (d.kind == "strict" or d.boundary_count() >= 3):
                continue
            if d.kind == "strict":
                xi = None
                zeta = smooth_germ_zeta(d)
                certified = [
                    (c, net)
                    for c in zeta.component_cotori()
                    if (net := zeta.net_exponent(c.N, c.tau))
                ]
            else:
                xi = d.base_point
                certified = support_certificate(graph, xi)
            for cotorus, _net in certified:
                if any(c.contains(image) for c in cotorus_closure(cotorus)):
                    entry = CharacterVerdict(
                        chi,
                        False,
                        "verified",
                        witness_divisor=d.id,
                        base_point=xi,
                        component=cotorus,
                    )
                    break
            if entry:
                break
        if entry is None:
            entry = CharacterVerdict(
                chi,
                False,
                "inconclusive",
                note="no certified support component closure contains the character",
            )
        report.entries.append(entry)
    return report
