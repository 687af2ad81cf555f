"""Exact sparse multivariate polynomials over the rationals.

A polynomial in ``nvars`` variables is a finite map from exponent tuples to
nonzero ``fractions.Fraction`` coefficients:

    x0^2*x1 + 3/2  ->  {(2, 1): Fraction(1), (0, 0): Fraction(3, 2)}

Everything is exact: no floating point appears anywhere, identity of
polynomials is literal equality of the term maps, and all normal forms are
deterministic.  The canonical term order is graded lexicographic with
x0 < x1 < ... (compare total degree first, then the exponent vector read
from the last variable down).  Serialisation lists terms in descending
canonical order with numerators and denominators as decimal strings, so
files survive any integer size.
"""

from __future__ import annotations

import math

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import InputError

Exponent = tuple[int, ...]
Scalar = Union[Fraction, int]


def grlex_key(exponents: Exponent) -> tuple[int, Exponent]:
    """Sort key realising the canonical graded-lex order (larger = leading)."""
    return (sum(exponents), tuple(reversed(exponents)))


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        if not isinstance(nvars, int) or nvars < 1:
            raise InputError(f"nvars must be a positive integer, got {nvars!r}")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise InputError(f"bad exponent vector {exp} for nvars={nvars}")
            c = Fraction(coeff)
            if c:
                clean[exp] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise InputError(f"variable index {index} out of range for nvars={nvars}")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exp: Exponent, coeff: Scalar = 1) -> "Polynomial":
        return cls(nvars, {tuple(exp): Fraction(coeff)})

    @classmethod
    def variables(cls, nvars: int) -> list["Polynomial"]:
        """All generators at once: ``x, y, z = Polynomial.variables(3)``."""
        return [cls.variable(nvars, i) for i in range(nvars)]

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending canonical order (leading term first)."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if self.is_zero:
            raise InputError("zero polynomial has no leading term")
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self.is_zero:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        """Whether all terms share one total degree (vacuously true for 0)."""
        degrees = {sum(e) for e in self._terms}
        return len(degrees) <= 1

    def homogeneous_degree(self) -> int:
        if self.is_zero:
            raise InputError("zero polynomial has no homogeneous degree")
        degrees = {sum(e) for e in self._terms}
        if len(degrees) != 1:
            raise InputError("polynomial is not homogeneous")
        return degrees.pop()

    def x_order(self, index: int) -> int:
        """Largest power of the given variable dividing the polynomial."""
        if not 0 <= index < self.nvars:
            raise InputError(f"variable index {index} out of range")
        if self.is_zero:
            raise InputError("zero polynomial has no finite variable order")
        return min(e[index] for e in self._terms)

    # -- equality and hashing ------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            h = hash((self.nvars, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise InputError(
                    f"variable-count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return None

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars, {e: k * c for e, k in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exp = tuple(a + b for a, b in zip(ea, eb))
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Polynomial":
        if not isinstance(power, int) or power < 0:
            raise InputError(f"polynomial power must be a non-negative int, got {power!r}")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    # -- calculus and evaluation ----------------------------------------------

    def partial(self, index: int) -> "Polynomial":
        """Exact partial derivative with respect to the given variable."""
        if not 0 <= index < self.nvars:
            raise InputError(f"variable index {index} out of range for nvars={self.nvars}")
        out: dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            e = exp[index]
            if e == 0:
                continue
            new = list(exp)
            new[index] = e - 1
            out[tuple(new)] = c * e
        return Polynomial(self.nvars, out)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point (one value per variable)."""
        values = [Fraction(v) for v in point]
        if len(values) != self.nvars:
            raise InputError(
                f"point length {len(values)} does not match nvars={self.nvars}"
            )
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for e, v in zip(exp, values):
                if e:
                    term *= v ** e
            total += term
        return total

    def compose(self, substitutions: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute a polynomial for every variable.

        All substituted polynomials must share one variable count, which
        becomes the variable count of the result.
        """
        if len(substitutions) != self.nvars:
            raise InputError(
                f"need {self.nvars} substitutions, got {len(substitutions)}"
            )
        target = substitutions[0].nvars
        if any(s.nvars != target for s in substitutions):
            raise InputError("substituted polynomials disagree on variable count")
        # Cache powers of each substituted polynomial as they are needed.
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(target, 1)} for _ in range(self.nvars)
        ]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * substitutions[i]
            return cache[e]

        result = Polynomial.zero(target)
        for exp, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    # -- division ---------------------------------------------------------------

    def try_divide(self, divisor: "Polynomial") -> Optional["Polynomial"]:
        """Exact quotient self/divisor, or None when division is not exact."""
        divisor = self._coerce(divisor)
        if divisor is None or divisor.is_zero:
            raise InputError("division by zero polynomial")
        if self.is_zero:
            return Polynomial.zero(self.nvars)
        dexp, dcoeff = divisor.leading_term()
        quotient: dict[Exponent, Fraction] = {}
        remainder = self
        while not remainder.is_zero:
            rexp, rcoeff = remainder.leading_term()
            step = tuple(a - b for a, b in zip(rexp, dexp))
            if any(e < 0 for e in step):
                return None
            c = rcoeff / dcoeff
            quotient[step] = c
            remainder = remainder - Polynomial.monomial(self.nvars, step, c) * divisor
        return Polynomial(self.nvars, quotient)

    def shift_down(self, index: int, amount: int) -> "Polynomial":
        """Divide by x_index**amount; the power must divide every term."""
        if amount < 0:
            raise InputError("shift amount must be non-negative")
        if amount == 0 or self.is_zero:
            return self
        if self.x_order(index) < amount:
            raise InputError(f"x_{index}^{amount} does not divide the polynomial")
        out = {}
        for exp, c in self._terms.items():
            new = list(exp)
            new[index] -= amount
            out[tuple(new)] = c
        return Polynomial(self.nvars, out)

    def monic(self) -> "Polynomial":
        """Scale so the leading coefficient in canonical order is 1."""
        if self.is_zero:
            return self
        _, lc = self.leading_term()
        return self * (Fraction(1) / lc)

    # -- serialisation ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exp": list(exp), "num": str(c.numerator), "den": str(c.denominator)}
                for exp, c in self.terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Polynomial":
        try:
            nvars = int(data["nvars"])
            terms = {
                tuple(int(e) for e in t["exp"]): Fraction(int(t["num"]), int(t["den"]))
                for t in data["terms"]
            }
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from exc
        return cls(nvars, terms)

    # -- rendering ------------------------------------------------------------------

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        """Deterministic human-readable form, canonical term order."""
        if names is None:
            names = _default_names(self.nvars)
        if self.is_zero:
            return "0"
        pieces = []
        for i, (exp, c) in enumerate(self.terms()):
            mono = "*".join(
                f"{names[j]}^{e}" if e > 1 else names[j]
                for j, e in enumerate(exp)
                if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.render()!r})"


def _default_names(nvars: int) -> list[str]:
    if nvars <= 4:
        return ["x", "y", "z", "w"][:nvars]
    return [f"x{i}" for i in range(nvars)]


# -- greatest common divisors ----------------------------------------------------
#
# Multivariate GCD over Q by recursion on the number of variables: split off
# the content with respect to the last variable, reduce the primitive parts by
# a primitive pseudo-remainder sequence, and recurse for the contents.  Exact
# and entirely adequate at the scale this package targets (few variables,
# modest degrees).


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """A GCD of p and q, normalised to leading coefficient 1.

    ``poly_gcd(p, 0)`` is the monic normalisation of p; the GCD of two zero
    polynomials is zero.
    """
    if p.nvars != q.nvars:
        raise InputError(f"variable-count mismatch: {p.nvars} vs {q.nvars}")
    if p.is_zero:
        return q.monic()
    if q.is_zero:
        return p.monic()
    return _gcd_nonzero(p, q).monic()


def poly_gcd_many(polys: Iterable[Polynomial]) -> Polynomial:
    """GCD of a family (zero for an empty or all-zero family)."""
    family = list(polys)
    if not family:
        raise InputError("gcd of an empty family")
    nonzero = [p for p in family if not p.is_zero]
    if not nonzero:
        return family[0]
    if len(nonzero) >= 2 and _certified_coprime_homogeneous(nonzero):
        return Polynomial.constant(family[0].nvars, 1)
    nonzero.sort(key=lambda p: (p.degree(), len(p._terms)))
    result = nonzero[0]
    for p in nonzero[1:]:
        result = poly_gcd(result, p)
        if result.degree() == 0:
            return result.monic()
    return result.monic()


# Deterministic direction pairs for the homogeneous coprimality certificate.
_CERT_LINES = (
    ((1, 2, 3, 5, 7, 11, 13, 17), (1, -1, 2, -3, 5, -7, 11, -13)),
    ((2, 3, 5, 7, 11, 13, 17, 19), (3, 1, -2, 5, -1, 2, -5, 7)),
)


def _certified_coprime_homogeneous(polys: list[Polynomial]) -> bool:
    """Sound fast path: certify that a homogeneous family has constant GCD.

    Restrict every polynomial to a fixed projective line x_i = a_i t + b_i u.
    A common homogeneous factor of positive degree restricts to a binary form
    that is either identically zero or of positive degree, never a nonzero
    constant; so if the restricted family has constant GCD and is not
    identically zero, the original GCD is constant.  Inconclusive lines just
    fall through to the full computation.
    """
    n = polys[0].nvars
    if n < 3 or n > 8:
        return False
    if any(not p.is_homogeneous() for p in polys):
        return False
    t, u = Polynomial.variables(2)
    for avals, bvals in _CERT_LINES:
        subs = [Fraction(avals[i]) * t + Fraction(bvals[i]) * u for i in range(n)]
        images = [p.compose(subs) for p in polys]
        images = [img for img in images if not img.is_zero]
        if not images:
            continue
        gcd = images[0]
        for img in images[1:]:
            gcd = poly_gcd(gcd, img)
            if gcd.degree() == 0:
                return True
        if gcd.degree() == 0:
            return True
    return False


def _deg_last(p: Polynomial) -> int:
    if p.is_zero:
        return -1
    return max(e[-1] for e in p._terms)


def _coeffs_by_last(p: Polynomial) -> dict[int, Polynomial]:
    """Recursive view: degree in the last variable -> (nvars-1)-poly."""
    split: dict[int, dict[Exponent, Fraction]] = {}
    for exp, c in p._terms.items():
        split.setdefault(exp[-1], {})[exp[:-1]] = c
    return {d: Polynomial(p.nvars - 1, t) for d, t in split.items()}


def _lift_last(p: Polynomial, last_degree: int = 0) -> Polynomial:
    """Reinterpret an (n-1)-variable polynomial inside n variables."""
    return Polynomial(
        p.nvars + 1, {exp + (last_degree,): c for exp, c in p._terms.items()}
    )


def _lc_last(p: Polynomial) -> Polynomial:
    """Leading coefficient with respect to the last variable, lifted to nvars."""
    d = _deg_last(p)
    out = {
        exp[:-1] + (0,): c for exp, c in p._terms.items() if exp[-1] == d
    }
    return Polynomial(p.nvars, out)


def _content_last(p: Polynomial) -> Polynomial:
    """Content with respect to the last variable, as an (nvars-1)-poly."""
    return poly_gcd_many(_coeffs_by_last(p).values())


def _scalar_normalised(p: Polynomial) -> Polynomial:
    """Scale so coefficients become coprime integers (harmless inside a PRS)."""
    if p.is_zero:
        return p
    num_gcd = 0
    den_lcm = 1
    for c in p._terms.values():
        num_gcd = math.gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    factor = Fraction(den_lcm, num_gcd)
    if factor == 1:
        return p
    return p * factor


def _prem_last(f: Polynomial, g: Polynomial) -> Polynomial:
    """Pseudo-remainder of f by g in the last variable (coefficients stay polynomial)."""
    n = f.nvars
    dg = _deg_last(g)
    lg = _lc_last(g)
    r = _scalar_normalised(f)
    g = _scalar_normalised(g)
    lg = _lc_last(g)
    while not r.is_zero and _deg_last(r) >= dg:
        dr = _deg_last(r)
        lr = _lc_last(r)
        shift = [0] * n
        shift[-1] = dr - dg
        r = _scalar_normalised(lg * r - lr * Polynomial.monomial(n, tuple(shift)) * g)
    return r


def _primitive_last(p: Polynomial) -> Polynomial:
    content = _lift_last(_content_last(p))
    quotient = p.try_divide(content)
    assert quotient is not None, "content must divide its polynomial"
    return quotient


def _gcd_univariate(p: Polynomial, q: Polynomial) -> Polynomial:
    while not q.is_zero:
        dq = q.degree()
        _, lq = q.leading_term()
        r = p
        while not r.is_zero and r.degree() >= dq:
            exp, lr = r.leading_term()
            step = (exp[0] - dq,)
            r = r - Polynomial.monomial(1, step, lr / lq) * q
        p, q = q, r
    return p


def _gcd_nonzero(p: Polynomial, q: Polynomial) -> Polynomial:
    n = p.nvars
    if n == 1:
        return _gcd_univariate(p, q)
    dp, dq = _deg_last(p), _deg_last(q)
    if dp == 0 and dq == 0:
        # Both live in the subring without the last variable.
        sub = poly_gcd(
            Polynomial(n - 1, {e[:-1]: c for e, c in p._terms.items()}),
            Polynomial(n - 1, {e[:-1]: c for e, c in q._terms.items()}),
        )
        return _lift_last(sub)
    content_p = _content_last(p)
    content_q = _content_last(q)
    content_gcd = _lift_last(poly_gcd(content_p, content_q))
    f = _primitive_last(p)
    g = _primitive_last(q)
    if _deg_last(f) < _deg_last(g):
        f, g = g, f
    while True:
        if g.is_zero:
            main = f
            break
        if _deg_last(g) == 0:
            # Primitive in the main variable and constant in it: coprime there.
            main = Polynomial.constant(n, 1)
            break
        r = _prem_last(f, g)
        if r.is_zero:
            main = g
            break
        f, g = g, _primitive_last(r)
    if _deg_last(main) > 0:
        main = _primitive_last(main)
    return content_gcd * main
