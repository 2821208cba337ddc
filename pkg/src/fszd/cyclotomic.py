"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is a residue polynomial in zeta_N modulo the N-th cyclotomic
polynomial, with Fraction coefficients, always reduced to its minimal
conductor (never 2 mod 4).  Equality and hashing are therefore structural,
and a value is rational exactly when its residue is constant.

Galois maps sigma_r act by zeta_N -> zeta_N^r; complex conjugation is
sigma_{-1}.  The printer recognizes rationals and real quadratic
irrationalities (via exact Gauss sums), and falls back to an explicit
zeta-polynomial otherwise.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from ._nt import euler_phi, legendre, prime_factors, squarefree_part
from .errors import NotCoprimeError

Rational = int | Fraction


# ---------------------------------------------------------------------------
# cyclotomic polynomials and power tables


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending degree (monic, integer)."""
    if n == 1:
        return (-1, 1)
    # (x^n - 1) / prod of Phi_d for proper divisors d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + len(den) - 1]
        # den is monic in every use here
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                rem[i + j] -= c * dj
    assert all(r == 0 for r in rem), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j is the residue of x^j mod Phi_n, for j in 0..n-1."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    top = [-c for c in poly[:phi]]  # x^phi = sum(top[i] x^i)
    rows = [(1,) + (0,) * (phi - 1)]
    cur = [1] + [0] * (phi - 1)
    for _ in range(1, n):
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            cur = [c + lead * t for c, t in zip(cur, top)]
        rows.append(tuple(cur))
    return tuple(rows)


# ---------------------------------------------------------------------------
# canonicalization: reduce a residue vector to its minimal conductor


def _galois_vec(n: int, vec: list[Fraction], r: int) -> list[Fraction]:
    table = _power_table(n)
    phi = euler_phi(n)
    out = [Fraction(0)] * phi
    for j, c in enumerate(vec):
        if c:
            row = table[(j * r) % n]
            for i, e in enumerate(row):
                if e:
                    out[i] += c * e
    return out


def _fixed_under_kernel(n: int, d: int, vec: list[Fraction]) -> bool:
    """Is the value fixed by every sigma_r with r = 1 mod d, gcd(r, n) = 1?"""
    for r in range(1 + d, n, d):
        if math.gcd(r, n) != 1:
            continue
        if _galois_vec(n, vec, r) != vec:
            return False
    return True


@lru_cache(maxsize=None)
def _descent_solver(n: int, d: int):
    """Data to rewrite a conductor-n residue known to lie in Q(zeta_d).

    Returns (columns, pivot_rows, inverse) where columns[j] is the image of
    zeta_d^j in the conductor-n basis and inverse is the exact inverse of the
    square submatrix at pivot_rows.
    """
    phi_n, phi_d = euler_phi(n), euler_phi(d)
    table = _power_table(n)
    step = n // d
    cols = [table[(j * step) % n] for j in range(phi_d)]
    mat = [[Fraction(cols[j][i]) for j in range(phi_d)] for i in range(phi_n)]
    # find phi_d rows forming an invertible square submatrix (column by column)
    work = [row[:] for row in mat]
    pivot_rows: list[int] = []
    used: set[int] = set()
    for col in range(phi_d):
        row = next(i for i in range(phi_n) if i not in used and work[i][col] != 0)
        used.add(row)
        pivot_rows.append(row)
        piv = work[row][col]
        work[row] = [x / piv for x in work[row]]
        for r in range(phi_n):
            if r != row and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[row])]
    pivot_rows.sort()
    square = [[mat[i][j] for j in range(phi_d)] for i in pivot_rows]
    inverse = _invert_fraction_matrix(square)
    return cols, tuple(pivot_rows), inverse


def _invert_fraction_matrix(m: list[list[Fraction]]) -> list[list[Fraction]]:
    k = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(m)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _project(n: int, d: int, vec: list[Fraction]) -> list[Fraction]:
    cols, pivot_rows, inverse = _descent_solver(n, d)
    rhs = [vec[i] for i in pivot_rows]
    q = [sum(inverse[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(rhs))]
    if __debug__:
        phi_n = euler_phi(n)
        for i in range(phi_n):
            assert vec[i] == sum(q[j] * cols[j][i] for j in range(len(q))), "bad descent"
    return q


def _canonical(n: int, vec: list[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    if n == 1:
        return 1, (vec[0],)
    if all(c == 0 for c in vec[1:]):
        return 1, (vec[0],)
    descending = True
    while descending and n > 1:
        descending = False
        for p in prime_factors(n):
            d = n // p
            if d == 1:
                continue  # would mean rational; excluded above
            if _fixed_under_kernel(n, d, vec):
                vec = _project(n, d, vec)
                n = d
                if all(c == 0 for c in vec[1:]):
                    return 1, (vec[0],)
                descending = True
                break
    return n, tuple(vec)


# ---------------------------------------------------------------------------
# the value type


class Cyclotomic:
    """An exact element of a cyclotomic field, in canonical form."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        vec = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(vec) != euler_phi(conductor):
            raise ValueError("coefficient vector has wrong length")
        n, tup = _canonical(conductor, vec)
        self.conductor = n
        self.coeffs = tup

    @classmethod
    def _trusted(cls, conductor: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        v = object.__new__(cls)
        v.conductor = conductor
        v.coeffs = coeffs
        return v

    @classmethod
    def rational(cls, q: Rational) -> "Cyclotomic":
        return cls._trusted(1, (Fraction(q),))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 0

    def is_rational(self) -> bool:
        return self.conductor == 1

    def rational_value(self) -> Fraction | None:
        return self.coeffs[0] if self.conductor == 1 else None

    def as_integer(self) -> int:
        q = self.rational_value()
        if q is None or q.denominator != 1:
            raise ValueError(f"{self!r} is not an integer")
        return q.numerator

    def is_real(self) -> bool:
        return self.conductor == 1 or self.galois(-1) == self

    def in_field(self, d: int) -> bool:
        """Membership in Q(zeta_d)."""
        dc = d // 2 if d % 4 == 2 else d
        return dc % self.conductor == 0

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Cyclotomic | None":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        return None

    def _lift(self, L: int) -> list[Fraction]:
        if self.conductor == L:
            return list(self.coeffs)
        table = _power_table(L)
        step = L // self.conductor
        out = [Fraction(0)] * euler_phi(L)
        for j, c in enumerate(self.coeffs):
            if c:
                row = table[(j * step) % L]
                for i, e in enumerate(row):
                    if e:
                        out[i] += c * e
        return out

    def __add__(self, other) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == 1:
            if o.coeffs[0] == 0:
                return self
            vec = list(self.coeffs)
            vec[0] += o.coeffs[0]
            if self.conductor == 1:
                return Cyclotomic._trusted(1, (vec[0],))
            return Cyclotomic._trusted(self.conductor, tuple(vec))
        if self.conductor == 1:
            return o + self
        L = math.lcm(self.conductor, o.conductor)
        va, vb = self._lift(L), o._lift(L)
        n, tup = _canonical(L, [a + b for a, b in zip(va, vb)])
        return Cyclotomic._trusted(n, tup)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._trusted(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == 1:
            q = o.coeffs[0]
            if q == 0:
                return ZERO
            return Cyclotomic._trusted(self.conductor, tuple(c * q for c in self.coeffs))
        if self.conductor == 1:
            return o * self
        L = math.lcm(self.conductor, o.conductor)
        va, vb = self._lift(L), o._lift(L)
        phi = euler_phi(L)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(va):
            if a:
                for j, b in enumerate(vb):
                    if b:
                        conv[i + j] += a * b
        out = conv[:phi]
        table = _power_table(L)
        for j in range(phi, 2 * phi - 1):
            c = conv[j]
            if c:
                row = table[j % L]
                for i, e in enumerate(row):
                    if e:
                        out[i] += c * e
        n, tup = _canonical(L, out)
        return Cyclotomic._trusted(n, tup)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q = o.rational_value()
        if q is None:
            raise TypeError("division is only supported by rational values")
        return self * (Fraction(1) / q)

    def __pow__(self, k: int) -> "Cyclotomic":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- Galois actions ------------------------------------------------------

    def galois(self, r: int) -> "Cyclotomic":
        """Image under sigma_r: zeta_N -> zeta_N^r (requires gcd(r, N) = 1)."""
        n = self.conductor
        if n == 1:
            return self
        r %= n
        if math.gcd(r, n) != 1:
            raise NotCoprimeError(f"sigma_{r} undefined at conductor {n}")
        if r == 1:
            return self
        out = _galois_vec(n, list(self.coeffs), r)
        return Cyclotomic._trusted(n, tuple(out))

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def abs_squared(self) -> "Cyclotomic":
        return self * self.galois(-1)

    # -- output --------------------------------------------------------------

    def approx(self) -> complex:
        n = self.conductor
        if n == 1:
            return complex(self.coeffs[0])
        return sum(
            complex(c) * cmath.exp(2j * cmath.pi * j / n)
            for j, c in enumerate(self.coeffs)
            if c
        )

    def sort_key(self):
        return (self.conductor, self.coeffs)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.conductor == o.conductor and self.coeffs == o.coeffs

    def __hash__(self) -> int:
        if self.conductor == 1:
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def __repr__(self) -> str:
        return f"Cyclotomic[{pretty(self)}]"

    def to_json_dict(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Cyclotomic":
        return cls(int(data["conductor"]), [Fraction(s) for s in data["coeffs"]])


ZERO = Cyclotomic._trusted(1, (Fraction(0),))
ONE = Cyclotomic._trusted(1, (Fraction(1),))


def from_root(k: int, n: int) -> Cyclotomic:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("conductor must be positive")
    row = _power_table(n)[k % n]
    return Cyclotomic(n, row)


def from_root_combination(n: int, coeff_by_exponent: dict[int, Rational]) -> Cyclotomic:
    """sum of c_k * zeta_n^k for the given exponent -> coefficient mapping."""
    table = _power_table(n)
    vec = [Fraction(0)] * euler_phi(n)
    for k, c in coeff_by_exponent.items():
        if c:
            row = table[k % n]
            for i, e in enumerate(row):
                if e:
                    vec[i] += Fraction(c) * e
    return Cyclotomic(n, vec)


def galois(v: Cyclotomic, r: int) -> Cyclotomic:
    return v.galois(r)


def abs_squared(v: Cyclotomic) -> Cyclotomic:
    return v.abs_squared()


# ---------------------------------------------------------------------------
# pretty-printing and rationality reports


@lru_cache(maxsize=None)
def sqrt_cyclotomic(d: int) -> Cyclotomic:
    """The positive square root of a squarefree d >= 1, as an exact value."""
    out = ONE
    for p in prime_factors(d):
        if p == 2:
            g = from_root(1, 8) + from_root(7, 8)
        else:
            g = from_root_combination(p, {a: legendre(a, p) for a in range(1, p)})
            if p % 4 == 3:
                # the Gauss sum equals i*sqrt(p); peel off the i
                g = g * from_root(3, 4)
        out = out * g
    return out


def _format_rational(q: Fraction) -> str:
    return str(q)


def _try_quadratic(v: Cyclotomic):
    """Return (a, b, d) with v = a + b*sqrt(d) (b != 0, d squarefree), or None."""
    n = v.conductor
    if n == 1 or not v.is_real():
        return None
    units = [r for r in range(1, n) if math.gcd(r, n) == 1]
    stab = [r for r in units if v.galois(r) == v]
    if 2 * len(stab) != len(units):
        return None
    # minimal polynomial: v*v = A + B*v with A, B rational
    w = v * v
    phi = euler_phi(n)
    one_vec = [Fraction(1)] + [Fraction(0)] * (phi - 1)
    v_vec = v._lift(n)
    w_vec = w._lift(n)
    # solve [one_vec v_vec] [A B]^T = w_vec via two independent rows
    a = b = None
    for i in range(phi):
        for j in range(phi):
            det = one_vec[i] * v_vec[j] - one_vec[j] * v_vec[i]
            if det:
                A = (w_vec[i] * v_vec[j] - w_vec[j] * v_vec[i]) / det
                B = (one_vec[i] * w_vec[j] - one_vec[j] * w_vec[i]) / det
                a, b = A, B
                break
        if a is not None:
            break
    if a is None:
        return None
    A, B = a, b
    rad = A + B * B / 4  # (v - B/2)^2
    if rad <= 0:
        return None
    m = rad.numerator * rad.denominator
    d = squarefree_part(m)
    s = math.isqrt(m // d)
    if s * s != m // d:
        return None
    babs = Fraction(s, rad.denominator)
    half = B / 2
    root = sqrt_cyclotomic(d)
    if v == Cyclotomic.rational(half) + root * babs:
        return half, babs, d
    if v == Cyclotomic.rational(half) - root * babs:
        return half, -babs, d
    return None


def _format_quadratic(a: Fraction, b: Fraction, d: int) -> str:
    den = math.lcm(a.denominator, b.denominator)
    A, B = a * den, b * den
    parts = ""
    if A:
        parts += str(A.numerator)
    mag = abs(B.numerator)
    term = f"√{d}" if mag == 1 else f"{mag}√{d}"
    if B < 0:
        parts += "-" + term
    else:
        parts += ("+" if parts else "") + term
    return f"({parts})/{den}" if den > 1 else parts


def _format_polynomial(v: Cyclotomic) -> str:
    n = v.conductor
    parts = []
    for j, c in enumerate(v.coeffs):
        if c == 0:
            continue
        if j == 0:
            parts.append(_format_rational(c))
            continue
        sym = f"ζ{n}" if j == 1 else f"ζ{n}^{j}"
        mag = abs(c)
        body = sym if mag == 1 else f"{_format_rational(mag)}{sym}"
        if c < 0:
            parts.append("-" + body)
        else:
            parts.append(("+" if parts else "") + body)
    return "".join(parts) if parts else "0"


def pretty(v: Cyclotomic) -> str:
    q = v.rational_value()
    if q is not None:
        return _format_rational(q)
    quad = _try_quadratic(v)
    if quad is not None:
        return _format_quadratic(*quad)
    return _format_polynomial(v)


def approx_float(v: Cyclotomic):
    """Float approximation: a real number when the value is real."""
    z = v.approx()
    if abs(z.imag) < 1e-9:
        return round(z.real, 12)
    return complex(round(z.real, 12), round(z.imag, 12))


class RationalityInfo(NamedTuple):
    is_rational: bool
    value: Fraction | None
    pretty: str
    approx: float | complex


def rationality(v: Cyclotomic) -> RationalityInfo:
    """Rationality flag, exact rational value when present, pretty string,
    and a floating approximation."""
    return RationalityInfo(v.is_rational(), v.rational_value(), pretty(v), approx_float(v))
