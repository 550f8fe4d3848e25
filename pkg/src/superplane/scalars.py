"""Exact scalar arithmetic: Gaussian rationals and rational functions in p, q.

Every coefficient in this package lives in Q(i)(p, q), the field of rational
functions in two commuting indeterminates over the Gaussian rationals.  All
arithmetic is exact; the only normalization is gcd reduction to a canonical
fraction with a monic denominator.
"""

from __future__ import annotations

from fractions import Fraction


class DivisionByZero(ZeroDivisionError):
    """Division by an exactly zero scalar."""


class PoleAtPoint(ArithmeticError):
    """Evaluation met a vanishing denominator with nonvanishing numerator."""


class IndeterminateAtPoint(ArithmeticError):
    """Evaluation met 0/0.

    Reachable even for fractions in lowest terms: (p - 1)/(q - 1) is already
    reduced yet both parts vanish at p = q = 1.
    """


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class GaussianRational:
    """Element re + im*i of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if not n:
            raise DivisionByZero("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        if self.im == 1:
            tail = "+ i"
        elif self.im == -1:
            tail = "- i"
        elif self.im < 0:
            tail = f"- {-self.im}*i"
        else:
            tail = f"+ {self.im}*i"
        return f"{self.re} {tail}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _as_gauss(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return None


def _grlex_key(m: tuple[int, int]) -> tuple[int, int]:
    # total degree first, then p-degree; the maximum is the leading monomial
    return (m[0] + m[1], m[0])


class Poly:
    """Polynomial in p and q over GaussianRational.

    Stored as a map from exponent pairs (i, j) to coefficients, meaning
    coeff * p^i * q^j.  Immutable by convention; zero coefficients are never
    stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=()):
        clean: dict[tuple[int, int], GaussianRational] = {}
        for mono, v in dict(coeffs).items():
            i, j = mono
            if i < 0 or j < 0:
                raise ValueError("negative exponent in polynomial")
            g = _as_gauss(v)
            if g is None:
                raise TypeError(f"bad coefficient {v!r}")
            if not g.is_zero():
                clean[(i, j)] = g
        self._c = clean
        self._hash = None

    @staticmethod
    def zero() -> "Poly":
        return _POLY_ZERO

    @staticmethod
    def one() -> "Poly":
        return _POLY_ONE

    @staticmethod
    def const(c) -> "Poly":
        return Poly({(0, 0): c})

    def is_zero(self) -> bool:
        return not self._c

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._c.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading(self) -> tuple[tuple[int, int], GaussianRational]:
        if not self._c:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._c, key=_grlex_key)
        return m, self._c[m]

    def leading_coeff(self) -> GaussianRational:
        return self.leading()[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.leading_coeff()
        if lc == _G1:
            return self
        return self.scale(_G1 / lc)

    def scale(self, c) -> "Poly":
        g = _as_gauss(c)
        if g is None:
            raise TypeError(f"bad scale factor {c!r}")
        if g.is_zero():
            return _POLY_ZERO
        return _poly_raw({m: v * g for m, v in self._c.items()})

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        out = dict(self._c)
        for m, v in other._c.items():
            s = out.get(m)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return _poly_raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _poly_raw({m: -v for m, v in self._c.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict[tuple[int, int], GaussianRational] = {}
        for (i1, j1), c1 in self._c.items():
            for (i2, j2), c2 in other._c.items():
                m = (i1 + i2, j1 + j2)
                s = out.get(m)
                t = c1 * c2
                s = t if s is None else s + t
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return _poly_raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = _POLY_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divexact(self, d) -> "Poly":
        """Exact division; raises ValueError when the quotient is not exact."""
        d = _as_poly(d)
        if d is None:
            raise TypeError("bad divisor")
        if d.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = dict(self._c)
        quot: dict[tuple[int, int], GaussianRational] = {}
        dm, dc = d.leading()
        while r:
            m = max(r, key=_grlex_key)
            i, j = m[0] - dm[0], m[1] - dm[1]
            if i < 0 or j < 0:
                raise ValueError("inexact polynomial division")
            c = r[m] / dc
            quot[(i, j)] = c
            for (di, dj), dv in d._c.items():
                mm = (di + i, dj + j)
                s = r.get(mm)
                t = dv * c
                s = -t if s is None else s - t
                if s.is_zero():
                    r.pop(mm, None)
                else:
                    r[mm] = s
        return _poly_raw(quot)

    def eval(self, p0, q0) -> GaussianRational:
        p0 = _as_fraction(p0)
        q0 = _as_fraction(q0)
        tot = GaussianRational(0)
        for (i, j), c in self._c.items():
            tot = tot + c * (p0 ** i * q0 ** j)
        return tot

    def conj(self, swap_pq: bool = False) -> "Poly":
        if swap_pq:
            return _poly_raw({(j, i): v.conj() for (i, j), v in self._c.items()})
        return _poly_raw({m: v.conj() for m, v in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Poly({(0, 0): other})
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __str__(self):
        if not self._c:
            return "0"
        parts = [_term_str(m, c) for m, c in self.items()]
        out = parts[0]
        for t in parts[1:]:
            if t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _poly_raw(c: dict) -> Poly:
    f = object.__new__(Poly)
    f._c = c
    f._hash = None
    return f


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return Poly({(0, 0): x})
    return None


def _mono_str(m: tuple[int, int]) -> str:
    i, j = m
    bits = []
    if i:
        bits.append("p" if i == 1 else f"p^{i}")
    if j:
        bits.append("q" if j == 1 else f"q^{j}")
    return "*".join(bits)


def _coeff_str(c: GaussianRational) -> str:
    s = str(c)
    if c.re and c.im:
        return f"({s})"
    return s


def _term_str(m: tuple[int, int], c: GaussianRational) -> str:
    mono = _mono_str(m)
    if not mono:
        return _coeff_str(c)
    if c == _G1:
        return mono
    if c == _GN1:
        return "-" + mono
    return f"{_coeff_str(c)}*{mono}"


# ------------------------------------------------------------------ gcd
# The gcd runs in the recursive representation (Q(i)[q])[p] with a primitive
# pseudo-remainder sequence.  Inputs in this package are tiny, so coefficient
# growth is a non-issue.  Univariate polynomials are coefficient lists with
# index = exponent and no trailing zeros.


def _u_trim(u: list) -> list:
    while u and u[-1].is_zero():
        u.pop()
    return u


def _u_add(a: list, b: list) -> list:
    out = []
    for k in range(max(len(a), len(b))):
        x = a[k] if k < len(a) else _G0
        y = b[k] if k < len(b) else _G0
        out.append(x + y)
    return _u_trim(out)


def _u_scale(a: list, c: GaussianRational) -> list:
    if c.is_zero():
        return []
    return [x * c for x in a]


def _u_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_G0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _u_trim(out)


def _u_divmod(a: list, b: list) -> tuple[list, list]:
    if not b:
        raise DivisionByZero("univariate division by zero")
    r = _u_trim(list(a))
    q = [_G0] * max(0, len(r) - len(b) + 1)
    inv = _G1 / b[-1]
    while r and len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] * inv
        q[k] = q[k] + c
        for j, y in enumerate(b):
            r[k + j] = r[k + j] - c * y
        _u_trim(r)
    return _u_trim(q), r


def _u_divexact(a: list, b: list) -> list:
    q, r = _u_divmod(a, b)
    if r:
        raise ValueError("inexact univariate division")
    return q


def _u_gcd(a: list, b: list) -> list:
    a = _u_trim(list(a))
    b = _u_trim(list(b))
    # each remainder is made monic; without this the rational coefficients
    # of a Euclidean sequence grow exponentially in digit length
    while b:
        inv = _G1 / b[-1]
        b = [x * inv for x in b]
        _, r = _u_divmod(a, b)
        a, b = b, r
    if a:
        inv = _G1 / a[-1]
        a = [x * inv for x in a]
    return a


def _b_trim(f: list) -> list:
    while f and not f[-1]:
        f.pop()
    return f


def _b_content(f: list) -> list:
    c: list = []
    for u in f:
        c = _u_gcd(c, u)
    return c


def _b_primitive(f: list) -> list:
    f = _b_trim([_u_trim(list(u)) for u in f])
    if not f:
        return []
    c = _b_content(f)
    if c == [_G1]:
        return f
    return [_u_divexact(u, c) for u in f]


def _b_pseudo_rem(f: list, g: list) -> list:
    f = [list(u) for u in f]
    dg = len(g) - 1
    lg = g[-1]
    while f and len(f) - 1 >= dg:
        lf = f[-1]
        shift = len(f) - 1 - dg
        f = [_u_mul(u, lg) for u in f]
        for k, u in enumerate(g):
            f[shift + k] = _u_add(f[shift + k], _u_scale(_u_mul(u, lf), _GN1))
        _b_trim(f)
    return f


def _b_gcd_rec(f: list, g: list) -> list:
    f = _b_trim([_u_trim(list(u)) for u in f])
    g = _b_trim([_u_trim(list(u)) for u in g])
    if not f:
        return g
    if not g:
        return f
    c = _u_gcd(_b_content(f), _b_content(g))
    F = _b_primitive(f)
    G = _b_primitive(g)
    if len(F) < len(G):
        F, G = G, F
    while G:
        R = _b_primitive(_b_pseudo_rem(F, G))
        F, G = G, R
    return [_u_mul(u, c) for u in F]


def _to_rec(f: Poly) -> list:
    by_p: dict[int, dict[int, GaussianRational]] = {}
    top = -1
    for (i, j), c in f._c.items():
        by_p.setdefault(i, {})[j] = c
        top = max(top, i)
    out = []
    for i in range(top + 1):
        row = by_p.get(i)
        if not row:
            out.append([])
            continue
        u = [_G0] * (max(row) + 1)
        for j, c in row.items():
            u[j] = c
        out.append(u)
    return out


def _from_rec(f: list) -> Poly:
    d = {}
    for i, u in enumerate(f):
        for j, c in enumerate(u):
            if not c.is_zero():
                d[(i, j)] = c
    return _poly_raw(d)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd in Q(i)[p, q]."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    return _from_rec(_b_gcd_rec(_to_rec(f), _to_rec(g))).monic()


class Scalar:
    """Canonical fraction num/den over Q(i)[p, q].

    Invariants: den is nonzero and monic under graded-lex order, num and den
    are coprime, and zero is stored as 0/1.  Equality of canonical forms then
    coincides with equality in the fraction field.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        n = _as_poly(num)
        d = _as_poly(den)
        if n is None or d is None:
            raise TypeError("scalar parts must be polynomials or numbers")
        if d.is_zero():
            raise DivisionByZero("zero denominator")
        if n.is_zero():
            n, d = _POLY_ZERO, _POLY_ONE
        else:
            g = poly_gcd(n, d)
            if g != _POLY_ONE:
                n = n.divexact(g)
                d = d.divexact(g)
            lc = d.leading_coeff()
            if lc != _G1:
                inv = _G1 / lc
                n = n.scale(inv)
                d = d.scale(inv)
        self.num = n
        self.den = d
        self._hash = None

    @classmethod
    def make(cls, num, den=1) -> "Scalar":
        return cls(num, den)

    @staticmethod
    def zero() -> "Scalar":
        return _S_ZERO

    @staticmethod
    def one() -> "Scalar":
        return _S_ONE

    @staticmethod
    def i() -> "Scalar":
        return _S_I

    @staticmethod
    def p() -> "Scalar":
        return _S_P

    @staticmethod
    def q() -> "Scalar":
        return _S_Q

    @staticmethod
    def from_fraction(x) -> "Scalar":
        return Scalar(Poly({(0, 0): x}))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == _POLY_ONE and self.den == _POLY_ONE

    def __add__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return Scalar(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)  # negation preserves canonical form
        s.num = -self.num
        s.den = self.den
        s._hash = None
        return s

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return Scalar(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero scalar")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return other / self

    def inv(self) -> "Scalar":
        return _S_ONE / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            if self.is_zero():
                raise DivisionByZero("zero scalar has no inverse")
            return self.inv() ** (-n)
        out = _S_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def conj(self, swap_pq: bool = False) -> "Scalar":
        return Scalar(self.num.conj(swap_pq), self.den.conj(swap_pq))

    def eval(self, p0, q0) -> GaussianRational:
        dv = self.den.eval(p0, q0)
        if dv.is_zero():
            at = f"p = {_as_fraction(p0)}, q = {_as_fraction(q0)}"
            if self.num.eval(p0, q0).is_zero():
                raise IndeterminateAtPoint(f"0/0 at {at}")
            raise PoleAtPoint(f"pole at {at}")
        return self.num.eval(p0, q0) / dv

    def __str__(self):
        if self.den == _POLY_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, GaussianRational, Poly)):
        return Scalar(x)
    return None


_G0 = GaussianRational(0)
_G1 = GaussianRational(1)
_GN1 = GaussianRational(-1)
_POLY_ZERO = Poly({})
_POLY_ONE = Poly({(0, 0): 1})
_S_ZERO = Scalar(0)
_S_ONE = Scalar(1)
_S_I = Scalar(Poly({(0, 0): GaussianRational(0, 1)}))
_S_P = Scalar(Poly({(1, 0): 1}))
_S_Q = Scalar(Poly({(0, 1): 1}))
