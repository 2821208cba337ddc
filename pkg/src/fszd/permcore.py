"""Finite permutation group engine.

Groups act on the points {1..n}; internally images are stored 0-based.
Composition is right-to-left: ``(a * b)(i) = a(b(i))``, and conjugation is
``t.conj(x) = t * x * t^-1``.

Order and membership go through a deterministic Schreier-Sims stabilizer
chain, so they never require full enumeration.  Conjugacy classes,
centralizers and the other desk-scale operations enumerate elements up to a
configurable bound (``FSZD_MAX_ORDER`` overrides it).
"""
from __future__ import annotations

import math
import os
import re
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    BadDivisorError,
    DegreeLimitError,
    NotInGroupError,
    ResourceLimitError,
    SpecParseError,
)

DEFAULT_MAX_DEGREE = 64
DEFAULT_ENUM_LIMIT = 10_000_000


def _enum_limit(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("FSZD_MAX_ORDER")
    if env is not None:
        return int(env)
    return DEFAULT_ENUM_LIMIT


class Permutation:
    """An immutable permutation of {1..n}, stored as a 0-based image tuple."""

    __slots__ = ("img",)

    def __init__(self, images: Sequence[int]):
        img = tuple(images)
        n = len(img)
        seen = [False] * n
        for i in img:
            if not isinstance(i, int) or not 0 <= i < n or seen[i]:
                raise ValueError(f"not a bijection of 0..{n - 1}: {img}")
            seen[i] = True
        self.img = img

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> "Permutation":
        # internal fast path: img is trusted to be a valid image tuple
        p = object.__new__(cls)
        p.img = img
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from disjoint cycles given with 1-based points."""
        img = list(range(degree))
        hit = set()
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                if not 1 <= a <= degree:
                    raise ValueError(f"point {a} outside 1..{degree}")
                if a in hit:
                    raise ValueError(f"point {a} repeated in cycle notation")
                hit.add(a)
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.img)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.img))

    def __mul__(self, other: "Permutation") -> "Permutation":
        a = self.img
        if len(a) != len(other.img):
            raise ValueError("degree mismatch in permutation product")
        return Permutation._raw(tuple(a[j] for j in other.img))

    def inverse(self) -> "Permutation":
        img = self.img
        out = [0] * len(img)
        for i, j in enumerate(img):
            out[j] = i
        return Permutation._raw(tuple(out))

    def __pow__(self, k: int) -> "Permutation":
        n = len(self.img)
        out = [0] * n
        for cyc in self._cycles0(fixpoints=True):
            ln = len(cyc)
            s = k % ln
            for i, pt in enumerate(cyc):
                out[pt] = cyc[(i + s) % ln]
        return Permutation._raw(tuple(out))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self._cycles0(fixpoints=True)))

    def conj(self, x: "Permutation") -> "Permutation":
        """Conjugate x by self: returns self * x * self^-1."""
        t, xi = self.img, x.img
        if len(t) != len(xi):
            raise ValueError("degree mismatch in conjugation")
        out = [0] * len(t)
        for i in range(len(t)):
            out[t[i]] = t[xi[i]]
        return Permutation._raw(tuple(out))

    def _cycles0(self, fixpoints: bool = False) -> list[tuple[int, ...]]:
        img = self.img
        seen = [False] * len(img)
        out = []
        for start in range(len(img)):
            if seen[start]:
                continue
            cur, cyc = start, []
            while not seen[cur]:
                seen[cur] = True
                cyc.append(cur)
                cur = img[cur]
            if fixpoints or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles with 1-based points, each starting at its minimum."""
        return [tuple(p + 1 for p in c) for c in self._cycles0()]

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.img == other.img

    def __hash__(self) -> int:
        return hash(self.img)

    def __lt__(self, other: "Permutation") -> bool:
        return (len(self.img), self.img) < (len(other.img), other.img)

    def __repr__(self) -> str:
        return f"Permutation[{self.cycle_string()}]"


def element_power_order(p: Permutation, k: int) -> tuple[Permutation, int]:
    """Return (p**k, order of p); k may be negative or zero."""
    return p**k, p.order()


# ---------------------------------------------------------------------------
# Schreier-Sims stabilizer chain


class _Level:
    __slots__ = ("point", "new_gens", "orbit")

    def __init__(self, point: int):
        self.point = point
        # generators first installed at this level (they fix all earlier base
        # points and move this one); the effective generating set of the level
        # is the union over this and all deeper levels
        self.new_gens: list[Permutation] = []
        self.orbit: dict[int, tuple[Permutation, Permutation]] = {}


class StabilizerChain:
    """Deterministic Schreier-Sims chain (bottom-up verification, no randomness)."""

    def __init__(self, generators: Sequence[Permutation], degree: int):
        self.degree = degree
        self.levels: list[_Level] = []
        gens = [g for g in generators if not g.is_identity()]
        if gens:
            moved = min(p for g in gens for p in range(degree) if g.img[p] != p)
            level = _Level(moved)
            level.new_gens.extend(gens)
            self.levels.append(level)
            self._rebuild_orbit(0)
            self._verify_all()

    def strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        i = start
        for level in self.levels[start:]:
            p = g.img[level.point]
            entry = level.orbit.get(p)
            if entry is None:
                return g, i
            g = entry[1] * g
            i += 1
        return g, i

    def contains(self, g: Permutation) -> bool:
        return self.strip(g)[0].is_identity()

    def order(self) -> int:
        out = 1
        for level in self.levels:
            out *= len(level.orbit)
        return out

    def _gens_at(self, i: int) -> list[Permutation]:
        """All strong generators fixing the first i base points."""
        return [g for level in self.levels[i:] for g in level.new_gens]

    def _rebuild_orbit(self, i: int) -> None:
        level = self.levels[i]
        gens = self._gens_at(i)
        ident = Permutation.identity(self.degree)
        orbit = {level.point: (ident, ident)}
        queue = deque([level.point])
        while queue:
            p = queue.popleft()
            u = orbit[p][0]
            for g in gens:
                q = g.img[p]
                if q not in orbit:
                    t = g * u
                    orbit[q] = (t, t.inverse())
                    queue.append(q)
        level.orbit = orbit

    def _add_at(self, residue: Permutation, j: int) -> None:
        if j == len(self.levels):
            base = min(p for p in range(self.degree) if residue.img[p] != p)
            self.levels.append(_Level(base))
        self.levels[j].new_gens.append(residue)
        # the new generator belongs to every level <= j, so refresh their orbits
        for i in range(j, -1, -1):
            self._rebuild_orbit(i)

    def _verify_level(self, i: int) -> int | None:
        """Check all Schreier generators of level i; on a failure, install the
        stripped residue at the level where sifting stopped and return it."""
        level = self.levels[i]
        gens = self._gens_at(i)
        for p in sorted(level.orbit):
            u = level.orbit[p][0]
            for gen in gens:
                s = level.orbit[gen.img[p]][1] * (gen * u)
                if s.is_identity():
                    continue
                residue, j = self.strip(s, i + 1)
                if residue.is_identity():
                    continue
                self._add_at(residue, j)
                return j
        return None

    def _verify_all(self) -> None:
        # A level is verified only after all deeper levels are; any addition at
        # level j restarts verification there, since transversals changed.
        i = len(self.levels) - 1
        while i >= 0:
            j = self._verify_level(i)
            i = i - 1 if j is None else j


# ---------------------------------------------------------------------------
# Groups


class Group:
    """A finite permutation group given by generators on {1..degree}."""

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation] = (),
        name: str | None = None,
        enum_limit: int | None = None,
    ):
        gens: list[Permutation] = []
        seen: set[Permutation] = set()
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if g.is_identity() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self._enum_limit = enum_limit
        self._chain: StabilizerChain | None = None
        self._elements: tuple[Permutation, ...] | None = None
        self._classes: "ConjugacyClassSet | None" = None
        self._chartab = None  # filled by chartab.character_table

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.generators, self.degree)
        return self._chain

    def order(self) -> int:
        return self.chain().order()

    def __contains__(self, p: Permutation) -> bool:
        if not isinstance(p, Permutation) or p.degree != self.degree:
            return False
        return self.chain().contains(p)

    def elements(self) -> tuple[Permutation, ...]:
        """All elements, sorted by image tuple (desk scale only)."""
        if self._elements is None:
            limit = _enum_limit(self._enum_limit)
            n = self.order()
            if n > limit:
                raise ResourceLimitError(
                    f"group order {n} exceeds enumeration limit {limit}", limit
                )
            seen = {self.identity}
            queue = deque(seen)
            while queue:
                x = queue.popleft()
                for g in self.generators:
                    y = g * x
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            self._elements = tuple(sorted(seen))
        return self._elements

    def conjugacy_classes(self) -> "ConjugacyClassSet":
        if self._classes is None:
            self._classes = _compute_classes(self)
        return self._classes

    def exponent(self) -> int:
        return self.conjugacy_classes().exponent

    def __repr__(self) -> str:
        label = self.name or f"degree-{self.degree} group"
        return f"Group[{label}]"


class ConjugacyClass:
    __slots__ = ("rep", "size", "order", "elements")

    def __init__(self, rep: Permutation, order: int, elements: frozenset):
        self.rep = rep
        self.size = len(elements)
        self.order = order
        self.elements = elements

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConjugacyClass):
            return NotImplemented
        return self.rep == other.rep and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.rep)

    def __repr__(self) -> str:
        return f"Class[{self.rep.cycle_string()} size={self.size} order={self.order}]"


class ConjugacyClassSet:
    """Deterministically ordered conjugacy classes of a group.

    Representatives are the lexicographically smallest element of each class;
    classes are sorted by (element order, class size, representative).
    """

    __slots__ = ("group", "classes", "_index", "_pm_cache", "exponent")

    def __init__(self, group: Group, classes: Sequence[ConjugacyClass]):
        self.group = group
        self.classes = tuple(classes)
        self._index: dict[Permutation, int] = {}
        for i, cl in enumerate(self.classes):
            for x in cl.elements:
                self._index[x] = i
        self.exponent = math.lcm(*(cl.order for cl in self.classes))
        self._pm_cache: dict[int, tuple[int, ...]] = {}

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[ConjugacyClass]:
        return iter(self.classes)

    def position_of(self, x: Permutation) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise NotInGroupError(f"{x!r} is not in the group") from None

    def power_map(self, m: int) -> tuple[int, ...]:
        """Class index of rep**m for each class; depends only on m mod exponent."""
        key = m % self.exponent
        pm = self._pm_cache.get(key)
        if pm is None:
            pm = tuple(self.position_of(cl.rep**key) for cl in self.classes)
            self._pm_cache[key] = pm
        return pm

    def inverse_map(self) -> tuple[int, ...]:
        return self.power_map(-1)


def _compute_classes(G: Group) -> ConjugacyClassSet:
    elems = G.elements()
    seen: set[Permutation] = set()
    raw: list[tuple[Permutation, set[Permutation]]] = []
    for x in elems:  # lex order, so x is the lex-min of its (unseen) class
        if x in seen:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in G.generators:
                z = g.conj(y)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        seen |= orbit
        raw.append((x, orbit))
    raw.sort(key=lambda item: (item[0].order(), len(item[1]), item[0].img))
    classes = [ConjugacyClass(rep, rep.order(), frozenset(orbit)) for rep, orbit in raw]
    return ConjugacyClassSet(G, classes)


def conjugacy_classes(G: Group) -> ConjugacyClassSet:
    return G.conjugacy_classes()


def group_exponent(G: Group) -> int:
    return G.exponent()


def _commutes(a: Permutation, b: Permutation) -> bool:
    ai, bi = a.img, b.img
    return all(ai[bi[i]] == bi[ai[i]] for i in range(len(ai)))


def _reduced_generators(elements: Iterable[Permutation], degree: int) -> list[Permutation]:
    """Greedy small generating set for the subgroup formed by `elements`."""
    gens: list[Permutation] = []
    chain: StabilizerChain | None = None
    for t in elements:
        if t.is_identity():
            continue
        if chain is not None and chain.contains(t):
            continue
        gens.append(t)
        chain = StabilizerChain(gens, degree)
    return gens


def centralizer(G: Group, z: Permutation) -> Group:
    """The subgroup of G commuting with z."""
    if z not in G:
        raise NotInGroupError("centralizer: element is not in the group")
    members = [t for t in G.elements() if _commutes(t, z)]
    gens = _reduced_generators(members, G.degree)
    name = f"C_{G.name or 'G'}({z.cycle_string()})"
    return Group(G.degree, gens, name=name, enum_limit=G._enum_limit)


def conjugator(G: Group, a: Permutation, b: Permutation) -> Optional[Permutation]:
    """Some t in G with t*a*t^-1 == b, or None if a, b are not conjugate."""
    if a not in G or b not in G:
        raise NotInGroupError("conjugator: element is not in the group")
    if a == b:
        return G.identity
    orbit = {a: G.identity}
    queue = deque([a])
    while queue:
        y = queue.popleft()
        ty = orbit[y]
        for g in G.generators:
            z = g.conj(y)
            if z not in orbit:
                t = g * ty
                if z == b:
                    return t
                orbit[z] = t
                queue.append(z)
    return None


def rational_classes(G: Group) -> tuple[tuple[int, ...], ...]:
    """Partition of class indices into rational classes (Galois fusion)."""
    cs = G.conjugacy_classes()
    k = len(cs)
    assigned = [False] * k
    cells = []
    for i in range(k):
        if assigned[i]:
            continue
        cell: set[int] = set()
        stack = [i]
        while stack:
            c = stack.pop()
            if c in cell:
                continue
            cell.add(c)
            o = cs.classes[c].order
            for r in range(1, o + 1):
                if math.gcd(r, o) == 1:
                    j = cs.power_map(r)[c]
                    if j not in cell:
                        stack.append(j)
        for c in cell:
            assigned[c] = True
        cells.append(tuple(sorted(cell)))
    return tuple(cells)


def restricted_normalizer(G: Group, g: Permutation, d: int) -> Group:
    """N_G^d(g): elements t with t*g*t^-1 = g^r, (r, exp(G)) = 1, r = 1 mod d."""
    if g not in G:
        raise NotInGroupError("restricted_normalizer: element is not in the group")
    exp = G.exponent()
    if d < 1 or exp % d != 0:
        raise BadDivisorError(f"d={d} does not divide exp(G)={exp}")
    o = g.order()
    powers = {g**r: r for r in range(o)}
    members = []
    for t in G.elements():
        r = powers.get(t.conj(g))
        if r is None:
            continue
        # lift r modulo o to a unit mod exp(G) that is 1 mod d, if possible
        for k in range(exp // o):
            rp = r + k * o
            if math.gcd(rp, exp) == 1 and rp % d == 1 % d:
                members.append(t)
                break
    gens = _reduced_generators(members, G.degree)
    name = f"N^{d}_{G.name or 'G'}({g.cycle_string()})"
    return Group(G.degree, gens, name=name, enum_limit=G._enum_limit)


# ---------------------------------------------------------------------------
# Group-spec grammar
#
#   S<n> | A<n> | C<n> | D<n> (order 2n) | Q8, products joined with "x",
#   or "perm:" followed by semicolon-separated generators in cycle notation.

_ATOM_RE = re.compile(r"^([SACD])([0-9]+)$")
_Q8_CYCLES = [
    [(1, 3, 2, 4), (5, 7, 6, 8)],  # left multiplication by i on (1,-1,i,-i,j,-j,k,-k)
    [(1, 5, 2, 6), (3, 8, 4, 7)],  # left multiplication by j
]


def _parse_cycle_text(text: str) -> list[tuple[int, ...]]:
    s = text.strip()
    if not s:
        raise SpecParseError("empty generator in perm spec")
    cycles: list[tuple[int, ...]] = []
    i = 0
    while i < len(s):
        if s[i] != "(":
            raise SpecParseError(f"expected '(' at position {i} in {text!r}")
        j = s.find(")", i)
        if j < 0:
            raise SpecParseError(f"unbalanced '(' in {text!r}")
        inner = s[i + 1 : j].strip()
        if inner:
            try:
                pts = tuple(int(tok) for tok in inner.split(","))
            except ValueError:
                raise SpecParseError(f"bad cycle {s[i:j + 1]!r}") from None
            if any(p < 1 for p in pts):
                raise SpecParseError("points must be positive integers")
            if len(set(pts)) != len(pts):
                raise SpecParseError(f"repeated point in cycle {s[i:j + 1]!r}")
            cycles.append(pts)
        i = j + 1
    flat = [p for c in cycles for p in c]
    if len(set(flat)) != len(flat):
        raise SpecParseError(f"cycles are not disjoint in {text!r}")
    return cycles


def _symmetric_gens(n: int) -> list[list[tuple[int, ...]]]:
    if n < 2:
        return []
    if n == 2:
        return [[(1, 2)]]
    return [[(1, 2)], [tuple(range(1, n + 1))]]


def _alternating_gens(n: int) -> list[list[tuple[int, ...]]]:
    if n < 3:
        return []
    if n == 3:
        return [[(1, 2, 3)]]
    if n % 2 == 1:
        return [[(1, 2, 3)], [tuple(range(1, n + 1))]]
    return [[(1, 2, 3)], [tuple(range(2, n + 1))]]


def _dihedral_gens(n: int) -> tuple[int, list[list[tuple[int, ...]]]]:
    if n == 1:
        return 2, [[(1, 2)]]
    if n == 2:
        return 4, [[(1, 2)], [(3, 4)]]
    rot = [tuple(range(1, n + 1))]
    refl = [(i, n + 2 - i) for i in range(2, n // 2 + 2) if i < n + 2 - i]
    return n, [rot, [tuple(c) for c in refl]]


def _atomic_group(token: str, max_degree: int) -> Group:
    if token == "Q8":
        degree, cycle_lists = 8, _Q8_CYCLES
    else:
        m = _ATOM_RE.match(token)
        if not m:
            raise SpecParseError(f"unrecognized group token {token!r}")
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise SpecParseError(f"{token!r}: index must be at least 1")
        if kind == "S":
            degree, cycle_lists = max(n, 1), _symmetric_gens(n)
        elif kind == "A":
            degree, cycle_lists = max(n, 1), _alternating_gens(n)
        elif kind == "C":
            degree, cycle_lists = n, ([] if n == 1 else [[tuple(range(1, n + 1))]])
        else:  # D
            degree, cycle_lists = _dihedral_gens(n)
    if degree > max_degree:
        raise DegreeLimitError(f"{token!r} needs degree {degree} > limit {max_degree}")
    gens = [Permutation.from_cycles(degree, cl) for cl in cycle_lists]
    return Group(degree, gens, name=token)


def _direct_product(a: Group, b: Group) -> Group:
    degree = a.degree + b.degree
    gens = []
    for g in a.generators:
        gens.append(Permutation(g.img + tuple(range(a.degree, degree))))
    for g in b.generators:
        gens.append(Permutation(tuple(range(a.degree)) + tuple(i + a.degree for i in g.img)))
    return Group(degree, gens, name=f"{a.name}x{b.name}")


def construct_group(spec: str, *, max_degree: int | None = None) -> Group:
    """Build a Group from a spec string (see module docstring for the grammar)."""
    limit = DEFAULT_MAX_DEGREE if max_degree is None else max_degree
    s = spec.strip()
    if not s:
        raise SpecParseError("empty group spec")
    if s.startswith("perm:"):
        body = s[len("perm:") :]
        parts = body.split(";")
        cycle_lists = [_parse_cycle_text(part) for part in parts]
        degree = max((p for cl in cycle_lists for c in cl for p in c), default=1)
        if degree > limit:
            raise DegreeLimitError(f"degree {degree} > limit {limit}")
        gens = [Permutation.from_cycles(degree, cl) for cl in cycle_lists]
        return Group(degree, gens, name=s)
    tokens = s.split("x")
    groups = [_atomic_group(tok, limit) for tok in tokens]
    out = groups[0]
    for h in groups[1:]:
        out = _direct_product(out, h)
    if out.degree > limit:
        raise DegreeLimitError(f"degree {out.degree} > limit {limit}")
    out.name = s
    return out
