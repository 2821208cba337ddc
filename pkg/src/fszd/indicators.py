"""Higher Frobenius-Schur indicators for doubles of finite groups.

Simple modules are labeled by pairs (conjugacy class of g, irreducible
character eta of the centralizer of g).  The m-th indicator of such a module
is computed entirely on the class level:

  * root-counting class functions on centralizers (w, phi, beta, gamma),
  * reduction of the gamma parameters modulo the centralizer exponent,
  * transport of commuting pairs to master class representatives (mates),
  * the class-collapsed group-algebra elements mu, whose characters divided
    by the centralizer order are the indicators nu.

A Session caches everything per group: centralizer groups, their character
tables, gamma tables keyed by reduced parameters, mates and mu elements.
The FSZ rationality test works from the beta coefficients alone and skips
parameter combinations that are forced rational.
"""
from __future__ import annotations

import csv
import io
import json
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ._nt import divisors
from .chartab import CharacterTable, ClassFunction, character_table, class_mult_coeff
from .cyclotomic import Cyclotomic, ZERO, rationality
from .errors import BadDivisorError, NonCommutingPairError
from .permcore import (
    ConjugacyClassSet,
    Group,
    Permutation,
    centralizer,
    conjugator,
    rational_classes,
)

_SMALL = frozenset({1, 2, 3, 4, 6})  # gcd values forcing rational beta


@dataclass(frozen=True)
class GammaReduction:
    """How gamma_m^z reduces: a Kronecker delta, the zero function, or a
    Galois twist psi^adams_exp of gamma_{m_reduced}^z."""

    kind: str  # "delta" | "zero" | "reduced"
    m_reduced: int | None = None
    adams_exp: int | None = None


@dataclass(frozen=True)
class Mate:
    """Transport data for a commuting pair (z, h).

    h lies in the centralizer of z; t conjugates h onto the master
    representative g of its class in G, carrying z to a conjugate z' that
    commutes with g.  mate_class is the class of z' inside C_G(g)."""

    z_class: int
    h_class_in_cz: int
    g_class: int
    conjugator: Permutation
    mate_class: int


@dataclass(frozen=True)
class MuElement:
    """Class-collapsed formal combination in the group algebra of C_G(g);
    applying an irreducible eta and dividing by |C_G(g)| yields nu_m(g, eta)."""

    g_class: int
    m: int
    coefficients: dict[int, Fraction]


class Session:
    """Per-group cache of everything indicator computations need."""

    def __init__(self, G: Group):
        self.group = G
        self.classes = G.conjugacy_classes()
        self.exponent = self.classes.exponent
        self.divisors = divisors(self.exponent)
        self.order = G.order()
        self._cent_groups: dict[int, Group] = {}
        self._gammas: dict[tuple[int, int, str], tuple[int, ...]] = {}
        self._mates: dict[tuple[int, int], Mate] = {}
        self._mus: dict[tuple[int, int], MuElement] = {}
        self._lock = threading.RLock()

    # -- centralizer provisioning -------------------------------------------

    def centralizer_group(self, z_class: int) -> Group:
        grp = self._cent_groups.get(z_class)
        if grp is None:
            rep = self.classes.classes[z_class].rep
            grp = self.group if rep.is_identity() else centralizer(self.group, rep)
            with self._lock:
                self._cent_groups.setdefault(z_class, grp)
                grp = self._cent_groups[z_class]
        return grp

    def centralizer_classes(self, z_class: int) -> ConjugacyClassSet:
        return self.centralizer_group(z_class).conjugacy_classes()

    def centralizer_table(self, z_class: int) -> CharacterTable:
        return character_table(self.centralizer_group(z_class))

    def centralizer_order(self, z_class: int) -> int:
        return self.order // self.classes.classes[z_class].size

    # -- gamma tables ---------------------------------------------------------

    def gamma_vector(self, z_class: int, m: int, backend: str = "characters") -> tuple[int, ...]:
        """gamma_m^z as an integer vector over the classes of C_G(z)."""
        red = reduce_gamma_params(self, z_class, m)
        ccs = self.centralizer_classes(z_class)
        k = len(ccs)
        if red.kind == "delta":
            return (1,) + (0,) * (k - 1)
        if red.kind == "zero":
            return (0,) * k
        key = (z_class, red.m_reduced, backend)
        base = self._gammas.get(key)
        if base is None:
            base = self._gamma_base(z_class, red.m_reduced, backend)
            with self._lock:
                self._gammas.setdefault(key, base)
                base = self._gammas[key]
        if red.adams_exp == 1:
            return base
        pm = ccs.power_map(red.adams_exp)
        return tuple(base[j] for j in pm)

    def _gamma_base(self, z_class: int, m: int, backend: str) -> tuple[int, ...]:
        z = self.classes.classes[z_class].rep
        ccs = self.centralizer_classes(z_class)
        k = len(ccs)
        roots = [a for a in range(k) if ccs.classes[a].rep ** m == z]
        if backend == "cmc":
            inv = ccs.inverse_map()
            out = []
            for c in range(k):
                out.append(
                    sum(class_mult_coeff(ccs, a, inv[b], c) for a in roots for b in roots)
                )
            return tuple(out)
        if backend != "characters":
            raise ValueError(f"unknown gamma backend {backend!r}")
        table = self.centralizer_table(z_class)
        order = self.centralizer_order(z_class)
        weights = []
        for chi in table.irreducibles:
            ph = ZERO
            for a in roots:
                ph = ph + chi.values[a] * ccs.classes[a].size
            weights.append(ph.abs_squared() / chi.degree().rational_value())
        out = []
        for c in range(k):
            tot = ZERO
            for chi, wt in zip(table.irreducibles, weights):
                if not wt.is_zero():
                    tot = tot + wt * chi.values[c]
            val = (tot / order).rational_value()
            assert val is not None and val.denominator == 1 and val >= 0, "gamma not in N"
            out.append(int(val))
        return tuple(out)

    # -- mates and mu ----------------------------------------------------------

    def mate(self, z_class: int, h_class_in_cz: int) -> Mate:
        key = (z_class, h_class_in_cz)
        mt = self._mates.get(key)
        if mt is None:
            mt = self._compute_mate(z_class, h_class_in_cz)
            with self._lock:
                self._mates.setdefault(key, mt)
                mt = self._mates[key]
        return mt

    def _compute_mate(self, z_class: int, h_class_in_cz: int) -> Mate:
        ccs_z = self.centralizer_classes(z_class)
        h = ccs_z.classes[h_class_in_cz].rep
        g_class = self.classes.position_of(h)
        g = self.classes.classes[g_class].rep
        t = conjugator(self.group, h, g)
        if t is None:
            raise RuntimeError("conjugator search failed for same-class elements")
        z = self.classes.classes[z_class].rep
        z_mate = t.conj(z)
        mate_class = self.centralizer_classes(g_class).position_of(z_mate)
        if __debug__:
            assert t.conj(h) == g
            gi = g.img
            zi = z_mate.img
            assert all(gi[zi[i]] == zi[gi[i]] for i in range(len(gi)))
        return Mate(z_class, h_class_in_cz, g_class, t, mate_class)

    def mu(self, g_class: int, m: int) -> MuElement:
        key = (g_class, m)
        el = self._mus.get(key)
        if el is None:
            self._compute_mus(m)
            el = self._mus[key]
        return el

    def _compute_mus(self, m: int) -> None:
        """One sweep of formula (z, h) -> g builds mu_m(g) for every g."""
        accum: dict[int, dict[int, int]] = {g: {} for g in range(len(self.classes))}
        for z_class in range(len(self.classes)):
            gvec = self.gamma_vector(z_class, m)
            if not any(gvec):
                continue
            ccs_z = self.centralizer_classes(z_class)
            cz_order = self.centralizer_order(z_class)
            for h_class, gval in enumerate(gvec):
                if gval == 0:
                    continue
                mt = self.mate(z_class, h_class)
                cg_order = self.centralizer_order(mt.g_class)
                weight, rem = divmod(cg_order * ccs_z.classes[h_class].size, cz_order)
                assert rem == 0, "orbit size |z^{C_G(h)}| must be integral"
                if __debug__:
                    # |z^{C_G(h)}| equals the size of the mate's class in C_G(g)
                    mate_size = self.centralizer_classes(mt.g_class).classes[mt.mate_class].size
                    assert weight == mate_size, "mate transport size mismatch"
                bucket = accum[mt.g_class]
                bucket[mt.mate_class] = bucket.get(mt.mate_class, 0) + weight * gval
        with self._lock:
            for g_class, bucket in accum.items():
                self._mus.setdefault(
                    (g_class, m),
                    MuElement(
                        g_class, m, {c: Fraction(v) for c, v in sorted(bucket.items())}
                    ),
                )


# ---------------------------------------------------------------------------
# the spec operations, as free functions over a Session


def w_class_function(session: Session, z_class: int, m: int) -> ClassFunction:
    """Indicator class function of m-th roots of z inside C_G(z)."""
    z = session.classes.classes[z_class].rep
    ccs = session.centralizer_classes(z_class)
    return ClassFunction(ccs, [1 if cl.rep**m == z else 0 for cl in ccs.classes])


def phi(session: Session, z_class: int, m: int, chi_index: int) -> Cyclotomic:
    """Character sum over the m-th roots of z in C_G(z)."""
    z = session.classes.classes[z_class].rep
    table = session.centralizer_table(z_class)
    chi = table.irreducibles[chi_index]
    out = ZERO
    for cl, value in zip(table.classes.classes, chi.values):
        if cl.rep**m == z:
            out = out + value * cl.size
    return out


def beta(session: Session, z_class: int, m: int, chi_index: int) -> Cyclotomic:
    """|phi|^2 / (|C_G(z)| * chi(e)): the coefficient of chi in gamma_m^z."""
    table = session.centralizer_table(z_class)
    ph = phi(session, z_class, m, chi_index)
    deg = table.irreducibles[chi_index].degree().rational_value()
    return ph.abs_squared() / (session.centralizer_order(z_class) * deg)


def reduce_gamma_params(session: Session, z_class: int, m: int) -> GammaReduction:
    """Reduce (z, m) per the gamma redundancies.

    Returns DELTA when gcd(m, e(z)) = 1, ZERO when the reduced divisor m'
    cannot admit m'-th roots of z, and otherwise m' = gcd(m, e(z)) together
    with a unit a' modulo e(z) such that gamma_m = psi^{a'} gamma_{m'}.
    """
    ez = session.centralizer_classes(z_class).exponent
    oz = session.classes.classes[z_class].order
    m0 = m % ez
    mp = math.gcd(m0, ez)  # == ez when m0 == 0
    if mp == 1:
        return GammaReduction("delta")
    if ez % (mp * oz) != 0:
        return GammaReduction("zero")
    if m0 == mp:
        return GammaReduction("reduced", mp, 1)
    # find a with a*m0 = mp (mod ez) and gcd(a, ez) = 1, then invert it
    if m0 == 0:
        a = 1
    else:
        _, u, _ = _ext_gcd(m0, ez)
        a = u % ez
        step = ez // mp
        while math.gcd(a, ez) != 1:
            a = (a + step) % ez
    a_inv = pow(a, -1, ez)
    return GammaReduction("reduced", mp, a_inv)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def gamma(
    session: Session,
    z_class: int,
    m: int,
    backend: str = "characters",
    reduce: bool = True,
) -> ClassFunction:
    """The class function g -> |{x : x^m = (gx)^m = z}| on C_G(z)."""
    ccs = session.centralizer_classes(z_class)
    if reduce:
        return ClassFunction(ccs, session.gamma_vector(z_class, m, backend))
    return ClassFunction(ccs, session._gamma_base(z_class, m, backend))


def adams_cf(f: ClassFunction, r: int) -> ClassFunction:
    """Adams operator psi^r on a class function."""
    return f.adams(r)


def mate(session: Session, z_class: int, h_class_in_cz: int) -> Mate:
    return session.mate(z_class, h_class_in_cz)


def mu(session: Session, g_class: int, m: int) -> MuElement:
    if session.exponent % m != 0:
        raise BadDivisorError(f"m={m} does not divide exp(G)={session.exponent}")
    return session.mu(g_class, m)


def nu(session: Session, g_class: int, eta_index: int, m: int) -> Cyclotomic:
    """The m-th Frobenius-Schur indicator of the simple labeled (g, eta)."""
    el = mu(session, g_class, m)
    table = session.centralizer_table(g_class)
    eta = table.irreducibles[eta_index]
    total = ZERO
    for c, coef in el.coefficients.items():
        total = total + eta.values[c] * coef
    return total / session.centralizer_order(g_class)


def double_character(
    session: Session, g_class: int, eta_index: int
) -> Callable[[Permutation, Permutation], Cyclotomic]:
    """Evaluator for the character of the simple (g, eta) on commuting pairs."""
    g = session.classes.classes[g_class].rep
    table = session.centralizer_table(g_class)
    eta = table.irreducibles[eta_index]
    G = session.group

    def evaluate(x: Permutation, y: Permutation) -> Cyclotomic:
        xi, yi = x.img, y.img
        if any(xi[yi[i]] != yi[xi[i]] for i in range(len(xi))):
            raise NonCommutingPairError("double character needs a commuting pair")
        if session.classes.position_of(x) != g_class:
            return ZERO
        t = conjugator(G, x, g)
        return eta.value_at(t.conj(y))

    return evaluate


# ---------------------------------------------------------------------------
# FSZ rationality test


@dataclass(frozen=True)
class FszResult:
    verdict: bool
    witness: tuple[int, int, int] | None  # (z_class, m, chi_index)
    betas_checked: int
    d: int

    def __bool__(self) -> bool:
        return self.verdict


def fsz_test(G: Group | Session, d: int = 1) -> FszResult:
    """Decide whether all indicators of D(G) lie in Q(zeta_d), via beta.

    For d = 1 this is the FSZ property.  Skip rules: a class z and divisor m
    are only examined when gcd(m, o(z)) forces a field larger than Q, which
    per the reduction lemmas requires gcd(m, o(z)) outside {1, 2, 3, 4, 6};
    m runs over the divisors of exp(C_G(z))/o(z).
    """
    session = G if isinstance(G, Session) else Session(G)
    if d < 1:
        raise BadDivisorError("d must be a positive integer")
    checked = 0
    for cell in rational_classes(session.group):
        z_class = cell[0]
        oz = session.classes.classes[z_class].order
        if d == 1 and oz in _SMALL:
            continue
        ez = session.centralizer_classes(z_class).exponent
        ms = list(divisors(ez // oz))
        if d == 1:
            ms = [
                m
                for m in ms
                if m not in _SMALL and math.gcd(m, oz) not in _SMALL
            ]
        if not ms:
            continue
        table = session.centralizer_table(z_class)
        for m in ms:
            for chi_index in range(len(table.irreducibles)):
                value = beta(session, z_class, m, chi_index)
                checked += 1
                if not (value.in_field(d) and value.is_real()):
                    return FszResult(False, (z_class, m, chi_index), checked, d)
    return FszResult(True, None, checked, d)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class IndicatorEntry:
    m: int
    value: Cyclotomic
    rational: bool
    pretty: str
    approx: float | complex


@dataclass(frozen=True)
class SimpleIndicators:
    g_class: int
    eta_index: int
    eta_degree: int
    indicators: tuple[IndicatorEntry, ...]


class IndicatorReport:
    """All indicators of the double, for every simple and requested m."""

    def __init__(self, session: Session, ms: Sequence[int], simples: Sequence[SimpleIndicators]):
        self.group = session.group.name or f"degree-{session.group.degree} group"
        self.order = session.order
        self.exponent = session.exponent
        self.ms = tuple(ms)
        self.classes = tuple(
            {
                "index": i,
                "rep": cl.rep.cycle_string(),
                "size": cl.size,
                "order": cl.order,
            }
            for i, cl in enumerate(session.classes.classes)
        )
        self.simples = tuple(simples)

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "exponent": self.exponent,
            "classes": list(self.classes),
            "simples": [
                {
                    "g_class": s.g_class,
                    "eta_index": s.eta_index,
                    "eta_degree": s.eta_degree,
                    "indicators": [
                        {
                            "m": e.m,
                            "value": e.value.to_json_dict(),
                            "rational": e.rational,
                            "pretty": e.pretty,
                            "approx": e.approx if not isinstance(e.approx, complex) else [e.approx.real, e.approx.imag],
                        }
                        for e in s.indicators
                    ],
                }
                for s in self.simples
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["group", "g_class", "eta_index", "eta_degree", "m", "value", "rational", "pretty", "approx"]
        )
        for s in self.simples:
            for e in s.indicators:
                writer.writerow(
                    [
                        self.group,
                        s.g_class,
                        s.eta_index,
                        s.eta_degree,
                        e.m,
                        json.dumps(e.value.to_json_dict()),
                        e.rational,
                        e.pretty,
                        e.approx,
                    ]
                )
        return buf.getvalue()

    def values_for(self, g_class: int, eta_index: int) -> dict[int, Cyclotomic]:
        for s in self.simples:
            if s.g_class == g_class and s.eta_index == eta_index:
                return {e.m: e.value for e in s.indicators}
        raise KeyError((g_class, eta_index))


def all_indicators(
    session: Session, ms: Iterable[int] | None = None, workers: int = 1
) -> IndicatorReport:
    """Indicators for every simple of D(G) and every requested divisor m."""
    if ms is None:
        m_list = list(session.divisors)
    else:
        m_list = sorted(set(ms))
        for m in m_list:
            if m < 1 or session.exponent % m != 0:
                raise BadDivisorError(f"m={m} does not divide exp(G)={session.exponent}")
    if workers > 1:
        _provision_tables(session, workers)
    simples = []
    for g_class in range(len(session.classes)):
        table = session.centralizer_table(g_class)
        degrees = table.degrees
        for eta_index in range(len(table.irreducibles)):
            entries = []
            for m in m_list:
                value = nu(session, g_class, eta_index, m)
                info = rationality(value)
                entries.append(
                    IndicatorEntry(m, value, info.is_rational, info.pretty, info.approx)
                )
            simples.append(
                SimpleIndicators(g_class, eta_index, degrees[eta_index], tuple(entries))
            )
    return IndicatorReport(session, m_list, simples)


def _provision_tables(session: Session, workers: int) -> None:
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(session.centralizer_table, range(len(session.classes))))
