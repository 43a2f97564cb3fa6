"""Dense univariate polynomials with exact coefficients.

Coefficients are Fraction for the public contract. The class itself is
coefficient-generic (anything with field arithmetic and == 0 works), which is
how the same code serves number-field and rational-function coefficients in
the geometry layers. Operations that genuinely need the rational field (gcd
via the subresultant remainder sequence, resultants, squarefree splitting,
rational root finding) check for it.

Design notes, kept here because they are easy to get wrong:

* gcd over Q runs on primitive integer polynomials through the subresultant
  PRS, so intermediate coefficients stay polynomial-sized instead of doubling
  in length each division step.
* resultants go through the Sylvester matrix and fraction-free Bareiss
  elimination; no floating point anywhere.
* rational roots avoid factoring huge leading/trailing coefficients: roots of
  the squarefree part are found modulo a 62-bit prime, Hensel-lifted, and
  recovered by rational reconstruction, then every candidate is verified by
  exact evaluation. Degree <= 2 short-circuits to closed forms.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..errors import BothZero, ZeroInput
from .rationals import is_square, rat_sqrt


def _as_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        from .rationals import rat_from_string
        return rat_from_string(c)
    return c


class Poly:
    """Immutable dense polynomial, coefficients in ascending order.

    The zero polynomial is the empty coefficient sequence.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [_as_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # ---- structure ----

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    # ---- ring operations ----

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _as_coeff(other)
            return Poly([a * c for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [None] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                prod = ca * cb
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        if self.is_zero or isinstance(self.lead, Fraction):
            one = Fraction(1)
        else:
            one = self.lead / self.lead
        result = Poly([one])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly([other])
        if other.is_zero:
            raise ZeroInput("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(), self
        rem = list(self.coeffs)
        dlead = other.lead
        dd = other.degree
        q = [None] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                q[k - dd] = c  # a zero of the right type
                continue
            factor = c / dlead
            q[k - dd] = factor
            for i, oc in enumerate(other.coeffs):
                rem[i + k - dd] = rem[i + k - dd] - factor * oc
        return Poly(q), Poly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ZeroInput("division was not exact")
        return q

    # ---- calculus and evaluation ----

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0) if isinstance(x, (int, Fraction)) else x - x
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c])
        return acc

    def shift(self, c) -> "Poly":
        """p(t + c)."""
        return self.compose(Poly([c, 1]))

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        l = self.lead
        return Poly([c / l for c in self.coeffs])

    def root_multiplicity(self, r) -> int:
        """Multiplicity of r as a root (0 when not a root)."""
        p = self
        m = 0
        lin = Poly([-r, 1])
        while not p.is_zero and p(r) == 0:
            p = p.exact_div(lin)
            m += 1
        return m

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self)


def poly(coeffs: Sequence) -> Poly:
    """Convenience constructor accepting ints, strings, and Fractions."""
    return Poly(coeffs)


X = Poly([0, 1])


def format_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if c == 0:
            continue
        if k == 0:
            term = str(c)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            if c == 1:
                term = mon
            elif c == -1:
                term = f"-{mon}"
            else:
                term = f"{c}*{mon}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def _is_rational_poly(p: Poly) -> bool:
    return all(isinstance(c, Fraction) for c in p.coeffs)


# ---------------------------------------------------------------------------
# integer polynomial layer (private): contents, pseudo-remainders, PRS gcd
# ---------------------------------------------------------------------------

def _to_int_primitive(p: Poly) -> tuple[Fraction, list[int]]:
    """Write p = content * primitive with primitive in Z[t], gcd of coeffs 1.

    The sign convention puts a positive leading coefficient on the primitive
    part.
    """
    if p.is_zero:
        return Fraction(0), []
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if ints[-1] < 0:
        g = -g
    ints = [c // g for c in ints]
    return Fraction(g, den_lcm), ints


def _ideg(a: list[int]) -> int:
    return len(a) - 1


def _itrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = math.gcd(g, abs(c))
    if a and a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _int_pseudo_rem(A: list[int], B: list[int]) -> list[int]:
    """prem(A, B) = lc(B)^(deg A - deg B + 1) * A  mod B, all integral."""
    dB = _ideg(B)
    lB = B[-1]
    R = list(A)
    e = _ideg(A) - dB + 1
    while R and _ideg(R) >= dB:
        lead = R[-1]
        dR = _ideg(R)
        R = [lB * c for c in R]
        for i, bc in enumerate(B):
            R[i + dR - dB] -= lead * bc
        _itrim(R)
        e -= 1
    if e > 0:
        q = lB ** e
        R = [q * c for c in R]
    return R


def _int_subresultant_gcd(A: list[int], B: list[int]) -> list[int]:
    """Primitive gcd of primitive integer polynomials via the subresultant PRS."""
    if _ideg(A) < _ideg(B):
        A, B = B, A
    g, h = 1, 1
    while True:
        delta = _ideg(A) - _ideg(B)
        R = _int_pseudo_rem(A, B)
        if not R:
            return _int_primitive(B)
        if _ideg(R) == 0:
            return [1]
        scale = g * h ** delta
        A, B = B, [c // scale for c in R]
        g = A[-1]
        if delta > 0:
            h = g ** delta // h ** (delta - 1)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd. Uses the subresultant PRS over Q, monic Euclid elsewhere."""
    if p.is_zero and q.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    if p.is_zero:
        return q.monic()
    if q.is_zero:
        return p.monic()
    if _is_rational_poly(p) and _is_rational_poly(q):
        _, a = _to_int_primitive(p)
        _, b = _to_int_primitive(q)
        return Poly([Fraction(c) for c in _int_subresultant_gcd(a, b)]).monic()
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


# ---------------------------------------------------------------------------
# determinants, resultants, discriminants
# ---------------------------------------------------------------------------

def _int_det_bareiss(m: list[list[int]]) -> int:
    """Fraction-free determinant; mutates its argument."""
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[-1][-1]


def det_rational(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix (denominators cleared row-wise)."""
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        lcm = 1
        for c in row:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        scale *= lcm
        int_rows.append([int(c * lcm) for c in row])
    return Fraction(_int_det_bareiss(int_rows), 1) / scale


def _sylvester_rows(f: Sequence, g: Sequence, n: int, m: int) -> list[list]:
    """Sylvester matrix rows for deg f = n, deg g = m (structural degrees).

    Row layout: m shifted copies of f's descending coefficients, then n of g's.
    """
    size = n + m
    rows = []
    fdesc = list(reversed(list(f))) + [Fraction(0)] * (size - (n + 1))
    for i in range(m):
        rows.append([Fraction(0)] * i + fdesc[: size - i])
    gdesc = list(reversed(list(g))) + [Fraction(0)] * (size - (m + 1))
    for i in range(n):
        rows.append([Fraction(0)] * i + gdesc[: size - i])
    return rows


def resultant(p: Poly, q: Poly) -> Fraction:
    """res(p, q) over Q."""
    if p.is_zero or q.is_zero:
        raise ZeroInput("resultant needs nonzero polynomials")
    if not (_is_rational_poly(p) and _is_rational_poly(q)):
        raise ZeroInput("resultant is implemented over Q only")
    n, m = p.degree, q.degree
    if n == 0:
        return p.lead ** m
    if m == 0:
        return q.lead ** n
    rows = _sylvester_rows(p.coeffs, q.coeffs, n, m)
    return det_rational(rows)


def discriminant_resultant(p: Poly, q: Poly | None = None) -> Fraction:
    """Resultant of p and q, or the discriminant of p when q is omitted.

    disc(p) = (-1)^(d(d-1)/2) * res(p, p') / lead(p).
    """
    if q is not None:
        return resultant(p, q)
    if p.is_zero or p.degree < 1:
        raise ZeroInput("discriminant needs degree >= 1")
    d = p.degree
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(p, p.derivative()) / p.lead


def resultant_bivariate(f_coeffs: Sequence[Poly], g_coeffs: Sequence[Poly]) -> Poly:
    """Resultant in the main variable of two polynomials whose coefficients
    are themselves rational polynomials in a second variable.

    The structural degree is fixed by the trimmed coefficient lists, the
    Sylvester determinant is evaluated at enough rational sample points, and
    the result is recovered by interpolation. Evaluating the generic matrix
    commutes with specialization even where the leading coefficient vanishes,
    so no degree-drop bookkeeping is needed.
    """
    f = [c if isinstance(c, Poly) else Poly([c]) for c in f_coeffs]
    g = [c if isinstance(c, Poly) else Poly([c]) for c in g_coeffs]
    while f and f[-1].is_zero:
        f.pop()
    while g and g[-1].is_zero:
        g.pop()
    if not f or not g:
        raise ZeroInput("resultant needs nonzero polynomials")
    n, m = len(f) - 1, len(g) - 1
    if n == 0:
        return f[0] ** m
    if m == 0:
        return g[0] ** n
    fmax = max(c.degree for c in f)
    gmax = max(c.degree for c in g)
    bound = m * max(fmax, 0) + n * max(gmax, 0)
    xs = []
    k = 0
    while len(xs) < bound + 1:
        xs.append(Fraction(k))
        if k > 0:
            xs.append(Fraction(-k))
        k += 1
    xs = xs[: bound + 1]
    ys = []
    for x0 in xs:
        rows = _sylvester_rows([c(x0) for c in f], [c(x0) for c in g], n, m)
        ys.append(det_rational(rows))
    return interpolate(xs, ys)


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Newton interpolation through distinct rational nodes."""
    n = len(xs)
    if n == 0:
        return Poly()
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = Poly()
    basis = Poly([Fraction(1)])
    for i in range(n):
        result = result + basis * coef[i]
        basis = basis * Poly([-xs[i], 1])
    return result


# ---------------------------------------------------------------------------
# squarefree decomposition (Yun)
# ---------------------------------------------------------------------------

def squarefree_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lead * prod f_i^(m_i), f_i monic squarefree and
    pairwise coprime, multiplicities ascending in the output.
    """
    if p.is_zero:
        raise ZeroInput("squarefree decomposition of 0")
    if p.degree < 1:
        return []
    f = p.monic()
    df = f.derivative()
    a0 = poly_gcd(f, df)
    out = []
    if a0.degree == 0:
        return [(f, 1)]
    b = f.exact_div(a0)
    c = df.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d) if not d.is_zero else b.monic()
        if a.degree >= 1:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    out.sort(key=lambda fm: fm[1])
    return out


def squarefree_part(p: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero:
        raise ZeroInput("squarefree part of 0")
    if p.degree < 1:
        return Poly([Fraction(1)])
    g = poly_gcd(p, p.derivative())
    return p.monic().exact_div(g)


# ---------------------------------------------------------------------------
# rational roots: closed forms for degree <= 2, modular lifting beyond
# ---------------------------------------------------------------------------

def rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """All rational roots with exact multiplicities, ascending by value."""
    if p.is_zero:
        raise ZeroInput("rational roots of 0")
    if p.degree < 1:
        return []
    coeffs = list(p.coeffs)
    zero_mult = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        zero_mult += 1
    stripped = Poly(coeffs)
    found: list[tuple[Fraction, int]] = []
    if zero_mult:
        found.append((Fraction(0), zero_mult))
    if stripped.degree >= 1:
        for r in _distinct_rational_roots(stripped):
            found.append((r, stripped.root_multiplicity(r)))
    found.sort(key=lambda rm: rm[0])
    return found


def _distinct_rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots of p (nonzero constant term)."""
    if p.degree == 1:
        return [-p.coeffs[0] / p.coeffs[1]]
    if p.degree == 2:
        a2, a1, a0 = p.coeffs[2], p.coeffs[1], p.coeffs[0]
        disc = a1 * a1 - 4 * a2 * a0
        if not is_square(disc):
            return []
        s = rat_sqrt(disc)
        roots = {(-a1 + s) / (2 * a2), (-a1 - s) / (2 * a2)}
        return sorted(roots)
    g = squarefree_part(p)
    _, gi = _to_int_primitive(g)
    return sorted(_modular_rational_roots(gi, p))


def _modular_rational_roots(g: list[int], original: Poly) -> set[Fraction]:
    """Rational roots of a squarefree primitive integer polynomial.

    Roots are located mod a large prime, Hensel-lifted, and recovered by
    rational reconstruction. Every candidate is verified exactly against the
    original polynomial, so spurious reconstructions are harmless.
    """
    lc = abs(g[-1])
    maxabs = max(abs(c) for c in g[:-1]) if len(g) > 1 else 0
    cauchy = 1 + (maxabs + lc - 1) // lc  # integer ceiling of the Cauchy bound
    den_bound = lc
    num_bound = cauchy * den_bound
    target = 2 * num_bound * den_bound + 1
    prime = _suitable_prime(g)
    dg = [i * c for i, c in enumerate(g)][1:]
    roots = set()
    for r in _roots_mod_p(g, prime):
        lifted, modulus = _hensel_lift(g, dg, r, prime, target)
        cand = _rational_reconstruct(lifted, modulus, num_bound, den_bound)
        if cand is not None and original(cand) == 0:
            roots.add(cand)
    return roots


def _is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the 62-bit range used here."""
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _suitable_prime(g: list[int]) -> int:
    """A 62-bit prime keeping g squarefree with unit leading coefficient."""
    p = (1 << 62) + 135
    while True:
        while not _is_probable_prime(p):
            p += 2
        if g[-1] % p != 0:
            gp = [c % p for c in g]
            dgp = [i * c % p for i, c in enumerate(g)][1:]
            if len(_pm_gcd(gp, dgp, p)) == 1:
                return p
        p += 2


# -- arithmetic in F_p[x]; ascending int lists, always trimmed --

def _pm_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pm_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        av = a[i] if i < len(a) else 0
        bv = b[i] if i < len(b) else 0
        out[i] = (av - bv) % p
    return _pm_trim(out)


def _pm_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _pm_trim(out)


def _pm_rem(a: list[int], b: list[int], p: int) -> list[int]:
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    r = list(a)
    while len(r) - 1 >= db:
        factor = r[-1] * inv % p
        shift = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[i + shift] = (r[i + shift] - factor * bc) % p
        _pm_trim(r)
        if not r:
            break
    return r


def _pm_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    _pm_trim(a)
    _pm_trim(b)
    while b:
        a, b = b, _pm_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _pm_pow(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pm_rem(base, mod, p)
    while e:
        if e & 1:
            result = _pm_rem(_pm_mul(result, base, p), mod, p)
        base = _pm_rem(_pm_mul(base, base, p), mod, p)
        e >>= 1
    return result


def _roots_mod_p(g: list[int], p: int) -> list[int]:
    """Distinct roots of g over F_p via the linear stage of Cantor-Zassenhaus."""
    gp = _pm_trim([c % p for c in g])
    inv = pow(gp[-1], -1, p)
    gp = [c * inv % p for c in gp]
    xp = _pm_pow([0, 1], p, gp, p)
    lin = _pm_gcd(_pm_sub(xp, [0, 1], p), gp, p)
    roots: list[int] = []
    _split_linear(lin, p, roots, 1)
    roots.sort()
    return roots


def _split_linear(h: list[int], p: int, roots: list[int], shift: int) -> None:
    deg = len(h) - 1
    if deg <= 0:
        return
    if deg == 1:
        roots.append((-h[0]) % p)
        return
    a = shift
    while True:
        w = _pm_pow([a, 1], (p - 1) // 2, h, p)
        w = _pm_sub(w, [1], p)
        d = _pm_gcd(w, h, p) if w else []
        if d and 0 < len(d) - 1 < deg:
            _split_linear(d, p, roots, a + 1)
            _split_linear(_pm_exact_div(h, d, p), p, roots, a + 1)
            return
        a += 1


def _pm_exact_div(a: list[int], b: list[int], p: int) -> list[int]:
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * (len(a) - db)
    while len(r) - 1 >= db and r:
        factor = r[-1] * inv % p
        shift = len(r) - 1 - db
        q[shift] = factor
        for i, bc in enumerate(b):
            r[i + shift] = (r[i + shift] - factor * bc) % p
        _pm_trim(r)
    return _pm_trim(q)


def _horner_mod(g: list[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(g):
        acc = (acc * x + c) % m
    return acc


def _hensel_lift(g: list[int], dg: list[int], root: int, p: int, target: int) -> tuple[int, int]:
    """Quadratic Newton lifting of a simple root mod p up to modulus >= target."""
    modulus = p
    r = root
    while modulus < target:
        modulus = modulus * modulus
        deriv = _horner_mod(dg, r, modulus)
        r = (r - _horner_mod(g, r, modulus) * pow(deriv, -1, modulus)) % modulus
    return r, modulus


def _rational_reconstruct(r: int, m: int, num_bound: int, den_bound: int) -> Fraction | None:
    """Wang's reconstruction: u/v == r (mod m), |u| <= num_bound, 0 < v <= den_bound."""
    r %= m
    r0, s0 = m, 0
    r1, s1 = r, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0:
        return None
    u, v = (r1, s1) if s1 > 0 else (-r1, -s1)
    if v > den_bound:
        return None
    return Fraction(u, v)
