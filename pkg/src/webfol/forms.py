"""Twisted k-symmetric 1-forms on projective space, in homogeneous coordinates.

A form is stored by its coefficient family: a map from differential
multi-indices I = (i_0, ..., i_N) with |I| = k to homogeneous polynomial
coefficients in the N+1 homogeneous coordinates,

    omega = sum_I  A_I(x) dx_0^{i_0} ... dx_N^{i_N}.

``SymTensor`` is the raw container (any coefficient family, used for
intermediate results such as Lie derivatives, which may legitimately be zero
or fail the global constraints).  ``SymForm`` is the validated object: all
coefficients are nonzero, homogeneous of one common degree k + d with d >= 0,
the contraction against the radial field sum x_j d/dx_j vanishes (the descent
condition identifying forms on projective space), and the coefficients carry
no common polynomial factor (the zero set has codimension at least two, in
the constant-GCD proxy sense).

The integer d is the degree of the web: the number of tangencies with a
generic line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import (
    InputError,
    NonGenericLineError,
    SingularPointError,
    ValidationError,
)
from .poly import Polynomial, Scalar, poly_gcd_many

MultiIndex = tuple[int, ...]


def multi_indices(nvars: int, k: int) -> list[MultiIndex]:
    """All exponent tuples of length nvars summing to k, descending lex order."""
    if nvars < 1 or k < 0:
        raise InputError("need nvars >= 1 and k >= 0")
    out: list[MultiIndex] = []

    def rec(prefix: tuple[int, ...], remaining: int) -> None:
        if len(prefix) == nvars - 1:
            out.append(prefix + (remaining,))
            return
        for head in range(remaining, -1, -1):
            rec(prefix + (head,), remaining - head)

    rec((), k)
    return out


class SymTensor:
    """Raw symmetric differential tensor: no invariants enforced.

    ``ndiff`` counts the differentials dx_0 ... dx_{ndiff-1}; coefficients may
    live in any consistent polynomial ring (usually the same ndiff variables,
    but the matrix-variable expansions in :mod:`webfol.projective` use a
    different one).  Treat instances as immutable: every operation returns a
    new tensor and nothing here mutates state after construction.
    """

    __slots__ = ("ndiff", "k", "coeffs")

    def __init__(self, ndiff: int, k: int, coeffs: Mapping[MultiIndex, Polynomial]):
        if ndiff < 1 or k < 0:
            raise InputError("need ndiff >= 1 and k >= 0")
        clean: dict[MultiIndex, Polynomial] = {}
        nvars = None
        for dmono, poly in coeffs.items():
            dmono = tuple(int(i) for i in dmono)
            if len(dmono) != ndiff or any(i < 0 for i in dmono) or sum(dmono) != k:
                raise InputError(f"bad differential multi-index {dmono} for k={k}")
            if nvars is None:
                nvars = poly.nvars
            elif poly.nvars != nvars:
                raise InputError("coefficient polynomials disagree on variable count")
            if not poly.is_zero:
                clean[dmono] = poly
        self.ndiff = ndiff
        self.k = k
        self.coeffs = clean

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff_nvars(self) -> int:
        for poly in self.coeffs.values():
            return poly.nvars
        return self.ndiff

    def coefficient(self, dmono: MultiIndex) -> Polynomial:
        return self.coeffs.get(tuple(dmono), Polynomial.zero(self.coeff_nvars()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (
            self.ndiff == other.ndiff
            and self.k == other.k
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ndiff, self.k, frozenset(self.coeffs.items())))

    def __add__(self, other: "SymTensor") -> "SymTensor":
        if self.ndiff != other.ndiff or self.k != other.k:
            raise InputError("tensor shape mismatch in addition")
        out = dict(self.coeffs)
        for dmono, poly in other.coeffs.items():
            out[dmono] = out.get(dmono, Polynomial.zero(poly.nvars)) + poly
        return SymTensor(self.ndiff, self.k, out)

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + other.scale(-1)

    def scale(self, factor: Union[Polynomial, Scalar]) -> "SymTensor":
        return SymTensor(
            self.ndiff, self.k, {d: p * factor for d, p in self.coeffs.items()}
        )

    def sym_mul(self, other: "SymTensor") -> "SymTensor":
        """Symmetric product; multi-indices add, coefficients multiply."""
        if self.ndiff != other.ndiff:
            raise InputError("tensor shape mismatch in symmetric product")
        out: dict[MultiIndex, Polynomial] = {}
        for da, pa in self.coeffs.items():
            for db, pb in other.coeffs.items():
                dmono = tuple(a + b for a, b in zip(da, db))
                prod = pa * pb
                if dmono in out:
                    out[dmono] = out[dmono] + prod
                else:
                    out[dmono] = prod
        return SymTensor(self.ndiff, self.k + other.k, out)

    def euler_contraction(self) -> "SymTensor":
        """Contract against the radial field: dx^I picks up i_j * x_j per slot."""
        if self.k == 0:
            raise InputError("cannot contract a 0-tensor")
        out: dict[MultiIndex, Polynomial] = {}
        for dmono, poly in self.coeffs.items():
            for j, ij in enumerate(dmono):
                if ij == 0:
                    continue
                target = list(dmono)
                target[j] -= 1
                key = tuple(target)
                contribution = poly * Polynomial.variable(poly.nvars, j) * ij
                if key in out:
                    out[key] = out[key] + contribution
                else:
                    out[key] = contribution
        return SymTensor(self.ndiff, self.k - 1, out)

    def render(self) -> str:
        if self.is_zero:
            return "0"
        names = [f"dx{j}" for j in range(self.ndiff)]
        pieces = []
        for dmono in sorted(self.coeffs, reverse=True):
            mono = "*".join(
                f"{names[j]}^{e}" if e > 1 else names[j]
                for j, e in enumerate(dmono)
                if e
            )
            pieces.append(f"({self.coeffs[dmono]}) {mono}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"SymTensor(ndiff={self.ndiff}, k={self.k}, {self.render()})"


class SymForm(SymTensor):
    """Validated twisted k-symmetric 1-form on P^N.

    Raises :class:`ValidationError` with a stable reason code when a
    coefficient family cannot represent a k-web:

    - ``empty_form``: no nonzero coefficient at all;
    - ``coefficient_degree_mismatch``: some coefficient is not homogeneous or
      the coefficients do not share one degree;
    - ``coefficient_degree_below_k``: the common degree is smaller than k
      (the web degree d would be negative);
    - ``euler_contraction_nonzero``: the radial contraction does not vanish;
    - ``common_factor``: the coefficients share a nonconstant factor.
    """

    __slots__ = ()

    def __init__(self, N: int, k: int, coeffs: Mapping[MultiIndex, Polynomial]):
        if N < 1:
            raise ValidationError("bad_dimension", f"need N >= 1, got {N}")
        if k < 1:
            raise ValidationError("bad_multidegree", f"need k >= 1, got {k}")
        super().__init__(N + 1, k, coeffs)
        if self.is_zero:
            raise ValidationError("empty_form", "form has no nonzero coefficient")
        if self.coeff_nvars() != N + 1:
            raise ValidationError(
                "coefficient_variable_mismatch",
                f"coefficients must use {N + 1} variables",
            )
        degrees = set()
        for poly in self.coeffs.values():
            if not poly.is_homogeneous():
                raise ValidationError(
                    "coefficient_degree_mismatch",
                    "coefficients must be homogeneous",
                )
            degrees.add(poly.homogeneous_degree())
        if len(degrees) != 1:
            raise ValidationError(
                "coefficient_degree_mismatch",
                f"coefficients carry distinct degrees {sorted(degrees)}",
            )
        degree = degrees.pop()
        if degree < k:
            raise ValidationError(
                "coefficient_degree_below_k",
                f"coefficient degree {degree} is below the multidegree k={k}",
            )
        if not self.euler_contraction().is_zero:
            raise ValidationError(
                "euler_contraction_nonzero",
                "the radial contraction of the form does not vanish",
            )
        gcd = poly_gcd_many(self.coeffs.values())
        if gcd.degree() > 0:
            raise ValidationError(
                "common_factor",
                f"coefficients share the nonconstant factor {gcd}",
            )

    @property
    def N(self) -> int:
        return self.ndiff - 1

    @property
    def coefficient_degree(self) -> int:
        for poly in self.coeffs.values():
            return poly.homogeneous_degree()
        raise AssertionError("validated form cannot be empty")

    @property
    def degree(self) -> int:
        """Web degree d: tangency count with a generic line."""
        return self.coefficient_degree - self.k

    @classmethod
    def from_tensor(cls, tensor: SymTensor) -> "SymForm":
        return cls(tensor.ndiff - 1, tensor.k, tensor.coeffs)

    # -- serialisation ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "coeffs": [
                {"dmono": list(dmono), "poly": self.coeffs[dmono].to_json_dict()}
                for dmono in sorted(self.coeffs, reverse=True)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SymForm":
        try:
            N = int(data["N"])
            k = int(data["k"])
            coeffs = {
                tuple(int(i) for i in entry["dmono"]): Polynomial.from_json_dict(
                    entry["poly"]
                )
                for entry in data["coeffs"]
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed form JSON: {exc}") from exc
        return cls(N, k, coeffs)


# -- operations on forms ------------------------------------------------------


def web_degree(form: SymForm) -> int:
    """Degree d of the web (coefficient degree minus k)."""
    return form.degree


def kf_degree(form: SymForm) -> Optional[int]:
    """Degree of the canonical bundle, d - 1, for foliations on the plane."""
    if form.k == 1 and form.N == 2:
        return form.degree - 1
    return None


def euler_contraction(tensor: SymTensor) -> SymTensor:
    return tensor.euler_contraction()


def exterior_derivative_coeffs(form: SymTensor) -> dict[tuple[int, int], Polynomial]:
    """For a 1-form sum a_i dx_i: the 2-form coefficients c_{ij} = da_j/dx_i - da_i/dx_j."""
    if form.k != 1:
        raise InputError("exterior derivative implemented for 1-forms only")
    n = form.ndiff
    a = [form.coefficient(_unit(n, i)) for i in range(n)]
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            out[(i, j)] = a[j].partial(i) - a[i].partial(j)
    return out


def _unit(n: int, i: int) -> MultiIndex:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def is_integrable(form: SymForm) -> bool:
    """Whether a 1-form satisfies the integrability identity omega ^ d(omega) = 0."""
    if form.k != 1:
        raise InputError("integrability check applies to k = 1 only")
    n = form.ndiff
    a = [form.coefficient(_unit(n, i)) for i in range(n)]
    c = exterior_derivative_coeffs(form)
    for p in range(n):
        for q in range(p + 1, n):
            for r in range(q + 1, n):
                triple = a[p] * c[(q, r)] - a[q] * c[(p, r)] + a[r] * c[(p, q)]
                if not triple.is_zero:
                    return False
    return True


def _field_degree(field: Sequence[Polynomial]) -> int:
    """Common homogeneous degree of the nonzero components of a vector field."""
    degrees = set()
    for component in field:
        if component.is_zero:
            continue
        if not component.is_homogeneous():
            raise InputError("vector field components must be homogeneous")
        degrees.add(component.homogeneous_degree())
    if not degrees:
        raise InputError("zero vector field")
    if len(degrees) != 1:
        raise InputError(f"vector field components carry distinct degrees {sorted(degrees)}")
    return degrees.pop()


def lie_derivative(field: Sequence[Polynomial], form: SymTensor) -> SymTensor:
    """Lie derivative of the form along a homogeneous polynomial vector field.

    L_v (A_I dx^I) = (v . grad A_I) dx^I
                     + A_I * sum_j i_j dx^{I - e_j} (.) d v_j.
    """
    n = form.ndiff
    if len(field) != n:
        raise InputError(f"vector field needs {n} components, got {len(field)}")
    if any(v.nvars != n for v in field):
        raise InputError("vector field components must use the ambient variables")
    _field_degree(field)
    out: dict[MultiIndex, Polynomial] = {}

    def accumulate(dmono: MultiIndex, poly: Polynomial) -> None:
        if dmono in out:
            out[dmono] = out[dmono] + poly
        else:
            out[dmono] = poly

    for dmono, poly in form.coeffs.items():
        transport = Polynomial.zero(n)
        for j in range(n):
            if not field[j].is_zero:
                transport = transport + field[j] * poly.partial(j)
        accumulate(dmono, transport)
        for j, ij in enumerate(dmono):
            if ij == 0:
                continue
            lowered = list(dmono)
            lowered[j] -= 1
            for m in range(n):
                dv = field[j].partial(m)
                if dv.is_zero:
                    continue
                raised = list(lowered)
                raised[m] += 1
                accumulate(tuple(raised), poly * dv * ij)
    return SymTensor(n, form.k, out)


def proportionality_constant(reference: SymTensor, candidate: SymTensor) -> Optional[Fraction]:
    """The constant c with candidate = c * reference, or None.

    Decided exactly: all two-by-two coefficient minors must vanish as
    polynomials, and one nonzero coefficient must match by a constant.
    """
    if candidate.is_zero:
        return Fraction(0)
    if reference.is_zero:
        return None
    keys = sorted(set(reference.coeffs) | set(candidate.coeffs), reverse=True)
    nv = reference.coeff_nvars()
    zero = Polynomial.zero(nv)
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            lhs = reference.coeffs.get(keys[a], zero) * candidate.coeffs.get(keys[b], zero)
            rhs = reference.coeffs.get(keys[b], zero) * candidate.coeffs.get(keys[a], zero)
            if lhs != rhs:
                return None
    anchor = next(iter(sorted(candidate.coeffs, reverse=True)))
    ref_poly = reference.coeffs.get(anchor)
    if ref_poly is None:
        return None
    cand_poly = candidate.coeffs[anchor]
    exp, ref_lc = ref_poly.leading_term()
    c = cand_poly.coefficient(exp) / ref_lc
    if not c or cand_poly != ref_poly * c:
        return None
    return c


def flow_preserves(field: Sequence[Polynomial], form: SymForm) -> bool:
    """Whether the flow of a linear vector field preserves the web.

    True exactly when the Lie derivative is a constant (possibly zero)
    multiple of the form.  Only degree-1 fields descend to projective space,
    so anything else is refused.
    """
    if _field_degree(field) != 1:
        raise InputError("flow preservation is decided for linear vector fields only")
    derivative = lie_derivative(field, form)
    return proportionality_constant(form, derivative) is not None


# -- restriction to a line ----------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous binary form B(s, t); coefficients[i] multiplies s^(degree-i) t^i."""

    degree: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.degree + 1:
            raise InputError("binary form needs degree + 1 coefficients")

    def evaluate(self, s: Scalar, t: Scalar) -> Fraction:
        s, t = Fraction(s), Fraction(t)
        total = Fraction(0)
        for i, c in enumerate(self.coefficients):
            total += c * s ** (self.degree - i) * t ** i
        return total

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coefficients": [_fraction_str(c) for c in self.coefficients],
        }


def _fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def restrict_to_line(
    form: SymForm, p: Sequence[Scalar], q: Sequence[Scalar]
) -> BinaryForm:
    """Restrict the form to the line spanned by two points.

    Substituting x = s p + t q and dx = p ds + q dt turns the form into
    B(s, t) (s dt - t ds)^k; the binary form B of degree d cuts out the
    tangency divisor.  Lines meeting the form degenerately (identically zero
    pullback) raise :class:`NonGenericLineError`.
    """
    n = form.ndiff
    p = [Fraction(v) for v in p]
    q = [Fraction(v) for v in q]
    if len(p) != n or len(q) != n:
        raise InputError(f"line points need {n} coordinates")
    if _rank2(p, q) < 2:
        raise InputError("the two points do not span a line")
    # Work in Q[s, t, u, v] with u = ds and v = dt.
    s, t, u, v = Polynomial.variables(4)
    coordinate_subs = [p[i] * s + q[i] * t for i in range(n)]
    pulled = Polynomial.zero(4)
    for dmono, poly in form.coeffs.items():
        term = poly.compose(coordinate_subs)
        for j, ij in enumerate(dmono):
            if ij:
                term = term * (p[j] * u + q[j] * v) ** ij
        pulled = pulled + term
    if pulled.is_zero:
        raise NonGenericLineError("the form pulls back to zero on this line")
    divisor = (s * v - t * u) ** form.k
    quotient = pulled.try_divide(divisor)
    if quotient is None:
        raise NonGenericLineError(
            "the pullback is not divisible by the expected tangency factor"
        )
    if any(exp[2] or exp[3] for exp, _ in quotient.terms()):
        raise NonGenericLineError("unexpected differentials survive the restriction")
    d = form.degree
    if quotient.degree() != d or not quotient.is_homogeneous():
        raise NonGenericLineError(
            f"restricted form has degree {quotient.degree()}, expected {d}"
        )
    coefficients = [Fraction(0)] * (d + 1)
    for exp, c in quotient.terms():
        coefficients[exp[1]] = c
    return BinaryForm(d, tuple(coefficients))


def _rank2(p: Sequence[Fraction], q: Sequence[Fraction]) -> int:
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] * q[j] - p[j] * q[i]:
                return 2
    return 1 if any(p) or any(q) else 0


# -- pointwise square-freeness -------------------------------------------------


def specialise_at_point(form: SymTensor, point: Sequence[Scalar]) -> Polynomial:
    """Freeze the coefficients at a point: a degree-k form in the differentials."""
    n = form.ndiff
    values = [Fraction(v) for v in point]
    if len(values) != n:
        raise InputError(f"point needs {n} coordinates")
    out: dict[MultiIndex, Fraction] = {}
    for dmono, poly in form.coeffs.items():
        c = poly.evaluate(values)
        if c:
            out[dmono] = c
    return Polynomial(n, out)


def is_squarefree_at(form: SymTensor, point: Sequence[Scalar]) -> bool:
    """Square-freeness of the frozen degree-k differential form at a point.

    Exact criterion in characteristic zero: the form is square-free iff it
    has no nonconstant common factor with the family of all its partial
    derivatives in the differential variables.
    """
    frozen = specialise_at_point(form, point)
    if frozen.is_zero:
        raise SingularPointError("the point lies in the singular set of the form")
    family = [frozen] + [frozen.partial(i) for i in range(frozen.nvars)]
    return poly_gcd_many(family).degree() == 0


# -- deterministic sample points -----------------------------------------------

_SCHEDULE_TABLE = (1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def sample_schedule(N: int, count: int) -> list[tuple[Fraction, ...]]:
    """Documented deterministic sample points: sliding windows over 1,2,3,5,7,...
    Point i has coordinates (table[i], table[i+1], ..., table[i+N])."""
    if count < 0 or count + N >= len(_SCHEDULE_TABLE):
        raise InputError("sample schedule exhausted; pass explicit points")
    return [
        tuple(Fraction(_SCHEDULE_TABLE[i + j]) for j in range(N + 1))
        for i in range(count)
    ]


def generic_sample_points(form: SymTensor, count: int) -> list[tuple[Fraction, ...]]:
    """First ``count`` schedule points outside the singular set of the form."""
    chosen: list[tuple[Fraction, ...]] = []
    i = 0
    N = form.ndiff - 1
    while len(chosen) < count:
        if i + N >= len(_SCHEDULE_TABLE):
            raise InputError("sample schedule exhausted before finding generic points")
        point = tuple(Fraction(_SCHEDULE_TABLE[i + j]) for j in range(N + 1))
        if not specialise_at_point(form, point).is_zero:
            chosen.append(point)
        i += 1
    return chosen
