"""Exact ordinary character tables via the Dixon-Schneider algorithm.

Class multiplication matrices are diagonalized simultaneously over GF(p) for
the smallest prime p = 1 mod exp(G) with p^2 > 4|G|; central characters are
read off the one-dimensional common eigenspaces, degrees recovered through
the orthogonality relation, and values lifted to Q(zeta_exp(G)) by counting
root-of-unity multiplicities through the power maps.  Everything is
deterministic: smallest prime, smallest primitive root, classes and
eigenvalues in ascending order.
"""
from __future__ import annotations

from typing import Sequence

from ._nt import divisors, is_prime, modinv, primitive_root, tonelli_sqrt
from .cyclotomic import Cyclotomic, ZERO, from_root_combination
from .errors import (
    MismatchedTablesError,
    ResourceLimitError,
    TableComputationError,
)
from .permcore import ConjugacyClassSet, Group, Permutation

DEFAULT_TABLE_ORDER_LIMIT = 100_000


class ClassFunction:
    """Exact values indexed by the conjugacy classes of a fixed class set."""

    __slots__ = ("classes", "values")

    def __init__(self, classes: ConjugacyClassSet, values: Sequence):
        vals = tuple(
            v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v) for v in values
        )
        if len(vals) != len(classes):
            raise ValueError("one value per conjugacy class required")
        self.classes = classes
        self.values = vals

    def __getitem__(self, class_index: int) -> Cyclotomic:
        return self.values[class_index]

    def __len__(self) -> int:
        return len(self.values)

    def value_at(self, x: Permutation) -> Cyclotomic:
        return self.values[self.classes.position_of(x)]

    def degree(self) -> Cyclotomic:
        """Value at the identity class (index 0 by the class ordering)."""
        return self.values[0]

    def adams(self, r: int) -> "ClassFunction":
        """psi^r: value at c becomes the value at the class of rep(c)**r."""
        pm = self.classes.power_map(r)
        return ClassFunction(self.classes, [self.values[j] for j in pm])

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.classes, [v.galois(-1) for v in self.values])

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_same(other)
        return ClassFunction(self.classes, [a + b for a, b in zip(self.values, other.values)])

    def __mul__(self, scalar) -> "ClassFunction":
        return ClassFunction(self.classes, [v * scalar for v in self.values])

    __rmul__ = __mul__

    def _check_same(self, other: "ClassFunction") -> None:
        if self.classes is not other.classes and self.classes.classes != other.classes.classes:
            raise MismatchedTablesError("class functions over different class sets")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.classes.classes == other.classes.classes and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self) -> str:
        return f"ClassFunction{list(self.values)!r}"


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum over classes of |class| * f * conj(g), exact."""
    f._check_same(g)
    total = ZERO
    for cl, fv, gv in zip(f.classes.classes, f.values, g.values):
        total = total + fv * gv.galois(-1) * cl.size
    return total / f.classes.group.order()


def class_mult_coeff(classes: ConjugacyClassSet, a: int, b: int, c: int) -> int:
    """Number of pairs (x, y) in class a x class b with x*y = rep(c)."""
    target = classes.classes[c].rep
    b_elems = classes.classes[b].elements
    count = 0
    for x in classes.classes[a].elements:
        if x.inverse() * target in b_elems:
            count += 1
    return count


class CharacterTable:
    """Exact character table of a finite permutation group."""

    __slots__ = ("group", "classes", "irreducibles", "conductor", "_by_values")

    def __init__(self, group: Group, classes: ConjugacyClassSet, irreducibles):
        self.group = group
        self.classes = classes
        self.irreducibles = tuple(irreducibles)
        self.conductor = classes.exponent
        self._by_values = {cf.values: i for i, cf in enumerate(self.irreducibles)}

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(cf.degree().as_integer() for cf in self.irreducibles)

    def index_of(self, cf: ClassFunction) -> int:
        """Index of an irreducible with the same value vector."""
        try:
            return self._by_values[cf.values]
        except KeyError:
            raise ValueError("not an irreducible of this table") from None

    def trivial_index(self) -> int:
        one = tuple(Cyclotomic.rational(1) for _ in range(len(self.classes)))
        return self._by_values[one]

    def to_json_dict(self) -> dict:
        exp = self.classes.exponent
        return {
            "order": self.group.order(),
            "exponent": exp,
            "classes": [
                {"index": i, "rep": cl.rep.cycle_string(), "size": cl.size, "order": cl.order}
                for i, cl in enumerate(self.classes.classes)
            ],
            "power_maps": {str(m): list(self.classes.power_map(m)) for m in divisors(exp)},
            "irreducibles": [
                [v.to_json_dict() for v in cf.values] for cf in self.irreducibles
            ],
        }

    def __repr__(self) -> str:
        return f"CharacterTable[{self.group!r} degrees={self.degrees}]"


def class_position(table: CharacterTable, x: Permutation) -> int:
    return table.classes.position_of(x)


def power_map(table: CharacterTable, m: int) -> tuple[int, ...]:
    return table.classes.power_map(m)


# ---------------------------------------------------------------------------
# GF(p) linear algebra


def _charpoly_mod(a: list[list[int]], p: int) -> list[int]:
    """det(xI - A) mod p by the division-free Berkowitz algorithm.

    Coefficients are returned in descending degree order (monic first).
    """
    n = len(a)
    if n == 0:
        return [1]
    poly = [1, (-a[0][0]) % p]
    for i in range(1, n):
        row = a[i][:i]
        col = [a[r][i] for r in range(i)]
        sub = [r[:i] for r in a[:i]]
        t = [1, (-a[i][i]) % p]
        v = col
        for k in range(2, i + 2):
            if k > 2:
                v = [sum(sub[r][c] * v[c] for c in range(i)) % p for r in range(i)]
            t.append((-sum(row[c] * v[c] for c in range(i))) % p)
        new = []
        for r in range(i + 2):
            s = 0
            for c in range(max(0, r - i - 1), min(r, i) + 1):
                s += t[r - c] * poly[c]
            new.append(s % p)
        poly = new
    return poly


def _eval_poly_mod(poly: list[int], x: int, p: int) -> int:
    acc = 0
    for c in poly:
        acc = (acc * x + c) % p
    return acc


def _rref_mod(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    width = len(mat[0]) if mat else 0
    for col in range(width):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] % p), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = modinv(mat[r][col], p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _nullspace_mod(rows: list[list[int]], p: int, width: int) -> list[list[int]]:
    rref, pivots = _rref_mod(rows, p) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * width
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-rref[r][fc]) % p
        basis.append(vec)
    return basis


class _Subspace:
    __slots__ = ("rows", "pivots")

    def __init__(self, rows: list[list[int]], pivots: list[int]):
        self.rows = rows
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# Dixon-Schneider


def _choose_prime(exponent: int, order: int) -> int:
    p = exponent + 1
    while True:
        if p * p > 4 * order and is_prime(p):
            return p
        p += exponent


def _class_matrix(cs: ConjugacyClassSet, i: int, p: int) -> list[list[int]]:
    """M[j][l] = #{x in class i : x^-1 * rep(l) in class j}, reduced mod p."""
    k = len(cs)
    mat = [[0] * k for _ in range(k)]
    inverses = [x.inverse() for x in sorted(cs.classes[i].elements)]
    reps = [cl.rep for cl in cs.classes]
    pos = cs.position_of
    for l in range(k):
        zl = reps[l]
        col = [0] * k
        for xi in inverses:
            col[pos(xi * zl)] += 1
        for j in range(k):
            mat[j][l] = col[j] % p
    return mat


def _split_eigenspaces(spaces: list[_Subspace], mat: list[list[int]], p: int) -> list[_Subspace]:
    k = len(mat)
    out: list[_Subspace] = []
    for sp in spaces:
        d = sp.dim
        if d == 1:
            out.append(sp)
            continue
        # matrix of the action restricted to the subspace, in RREF coordinates
        images = []
        for s in sp.rows:
            w = [sum(mat[r][c] * s[c] for c in range(k)) % p for r in range(k)]
            images.append(w)
        restricted = [[images[j][sp.pivots[l]] for j in range(d)] for l in range(d)]
        poly = _charpoly_mod(restricted, p)
        roots = [lam for lam in range(p) if _eval_poly_mod(poly, lam, p) == 0]
        covered = 0
        for lam in roots:
            shifted = [
                [(restricted[r][c] - (lam if r == c else 0)) % p for c in range(d)]
                for r in range(d)
            ]
            basis = _nullspace_mod(shifted, p, d)
            if not basis:
                continue
            amb_rows = [
                [sum(vec[j] * sp.rows[j][c] for j in range(d)) % p for c in range(k)]
                for vec in basis
            ]
            rows, pivots = _rref_mod(amb_rows, p)
            out.append(_Subspace(rows, pivots))
            covered += len(rows)
        if covered != d:
            raise TableComputationError("eigenspace splitting failed (non-split matrix)")
    return out


def character_table(G: Group, order_limit: int | None = None) -> CharacterTable:
    """Exact character table of G (cached on the group object)."""
    if G._chartab is not None:
        return G._chartab
    limit = DEFAULT_TABLE_ORDER_LIMIT if order_limit is None else order_limit
    n = G.order()
    if n > limit:
        raise ResourceLimitError(
            f"character table of order-{n} group exceeds limit {limit}", limit
        )
    cs = G.conjugacy_classes()
    k = len(cs)
    e = cs.exponent
    if k == 1:
        table = CharacterTable(G, cs, [ClassFunction(cs, [1])])
        G._chartab = table
        return table

    p = _choose_prime(e, n)
    w = pow(primitive_root(p), (p - 1) // e, p)

    # split GF(p)^k into common eigenspaces of the class matrices
    identity_rows = [[int(i == j) for j in range(k)] for i in range(k)]
    spaces = [_Subspace(identity_rows, list(range(k)))]
    for ci in range(1, k):
        if all(sp.dim == 1 for sp in spaces):
            break
        spaces = _split_eigenspaces(spaces, _class_matrix(cs, ci, p), p)
    if any(sp.dim != 1 for sp in spaces):
        raise TableComputationError("class matrices did not split the group algebra")

    inv_map = cs.inverse_map()
    sizes = [cl.size for cl in cs.classes]
    orders = [cl.order for cl in cs.classes]

    rows = []
    for sp in spaces:
        vec = sp.rows[0]
        if vec[0] == 0:
            raise TableComputationError("degenerate central character")
        norm = modinv(vec[0], p)
        omega = [x * norm % p for x in vec]
        s = sum(omega[j] * omega[inv_map[j]] * modinv(sizes[j], p) for j in range(k)) % p
        d2 = n * modinv(s, p) % p
        root = tonelli_sqrt(d2, p)
        deg = min(root, p - root)
        if deg == 0 or deg * deg > n:
            raise TableComputationError("degree recovery failed")
        chihat = [deg * omega[j] * modinv(sizes[j], p) % p for j in range(k)]
        values = []
        for j in range(k):
            o = orders[j]
            zeta = pow(w, e // o, p)
            inv_o = modinv(o, p)
            mults = {}
            for i in range(o):
                tot = 0
                for t in range(o):
                    tot += chihat[cs.power_map(t)[j]] * pow(zeta, (-i * t) % o, p)
                m_i = tot * inv_o % p
                if m_i:
                    if m_i > deg:
                        raise TableComputationError("multiplicity lift out of range")
                    mults[i] = m_i
            if sum(mults.values()) != deg:
                raise TableComputationError("multiplicity lift inconsistent")
            values.append(from_root_combination(o, mults))
        rows.append(ClassFunction(cs, values))

    rows.sort(key=lambda cf: (cf.degree().as_integer(), [v.sort_key() for v in cf.values]))
    table = CharacterTable(G, cs, rows)
    _quick_check(table)
    G._chartab = table
    return table


def _quick_check(table: CharacterTable) -> None:
    """Fail-fast internal validation: degrees and row orthonormality."""
    n = table.group.order()
    degs = table.degrees
    if sum(d * d for d in degs) != n:
        raise TableComputationError("degree sum check failed")
    irr = table.irreducibles
    for i in range(len(irr)):
        for j in range(i, len(irr)):
            ip = inner_product(irr[i], irr[j])
            if ip != (1 if i == j else 0):
                raise TableComputationError("row orthogonality check failed")


def verify_class_algebra(table: CharacterTable) -> None:
    """Exact oracle check that the table diagonalizes the class algebra.

    Together with orthonormality and positive integral degrees (checked at
    construction time) this pins the character table uniquely, because the
    common eigenspaces of the class multiplication matrices are
    one-dimensional.  Raises TableComputationError on any failure.
    """
    cs = table.classes
    k = len(cs)
    sizes = [cl.size for cl in cs.classes]
    for cf in table.irreducibles:
        d = cf.degree()
        omega = [cf.values[j] * sizes[j] / d.rational_value() for j in range(k)]
        for i in range(1, k):
            mat = _exact_class_matrix(cs, i)
            for j in range(k):
                lhs = ZERO
                for l in range(k):
                    if mat[j][l]:
                        lhs = lhs + omega[l] * mat[j][l]
                if lhs != omega[i] * omega[j]:
                    raise TableComputationError(
                        f"class algebra eigenvector check failed at classes {i},{j}"
                    )


def _exact_class_matrix(cs: ConjugacyClassSet, i: int) -> list[list[int]]:
    k = len(cs)
    mat = [[0] * k for _ in range(k)]
    inverses = [x.inverse() for x in cs.classes[i].elements]
    for l in range(k):
        zl = cs.classes[l].rep
        for xi in inverses:
            mat[cs.position_of(xi * zl)][l] += 1
    return mat


def verify_column_orthogonality(table: CharacterTable) -> None:
    cs = table.classes
    k = len(cs)
    for a in range(k):
        for b in range(k):
            total = ZERO
            for cf in table.irreducibles:
                total = total + cf.values[a] * cf.values[b].galois(-1)
            want = table.group.order() // cs.classes[a].size if a == b else 0
            if total != want:
                raise TableComputationError("column orthogonality check failed")
