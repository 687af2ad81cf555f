"""Shared builders and independent oracles used across the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from webfol.errors import ValidationError
from webfol.forms import SymForm, SymTensor
from webfol.poly import Polynomial
from webfol.projective import ProjMap


def units(n):
    out = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        out.append(tuple(e))
    return out


def pencil_form(F: Polynomial, G: Polynomial) -> SymForm:
    """The 1-form F dG - G dF (valid whenever its invariants hold)."""
    n = F.nvars
    coeffs = {}
    for i, e in enumerate(units(n)):
        coeffs[e] = F * G.partial(i) - G * F.partial(i)
    return SymForm(n - 1, 1, coeffs)


def example_form() -> SymForm:
    """Shipped degree-2 plane foliation (parameters a = b = 1)."""
    x, y, z = Polynomial.variables(3)
    return SymForm(
        2, 1, {(1, 0, 0): -y * z * z, (0, 1, 0): x * z * z + y * y * z, (0, 0, 1): -y ** 3}
    )


def radial_form() -> SymForm:
    x, y, z = Polynomial.variables(3)
    return SymForm(2, 1, {(1, 0, 0): -y, (0, 1, 0): x})


def conic_pencil_form() -> SymForm:
    x, y, z = Polynomial.variables(3)
    return SymForm(2, 1, {(1, 0, 0): y * z, (0, 1, 0): x * z, (0, 0, 1): -2 * x * y})


def symmetric_pencil_form() -> SymForm:
    x, y, z = Polynomial.variables(3)
    return pencil_form(x ** 3 + y ** 3 + z ** 3, x * y * z)


def random_homogeneous(rng: random.Random, nvars: int, degree: int) -> Polynomial:
    from webfol.forms import multi_indices

    terms = {}
    for exp in multi_indices(nvars, degree):
        if rng.random() < 0.6:
            c = rng.randint(-4, 4)
            if c:
                terms[exp] = Fraction(c)
    return Polynomial(nvars, terms)


def build_corpus(seed: int, size: int = 50) -> list[SymForm]:
    """Deterministic corpus of valid forms: pencils and their superpositions."""
    rng = random.Random(seed)
    forms: list[SymForm] = []
    guard = 0
    while len(forms) < size:
        guard += 1
        assert guard < 50 * size, "corpus generation stalled"
        N = rng.choice([2, 2, 2, 3])
        n = N + 1
        r = rng.choice([1, 1, 2])
        F = random_homogeneous(rng, n, r)
        G = random_homogeneous(rng, n, r)
        if F.is_zero or G.is_zero:
            continue
        try:
            one_form = pencil_form(F, G)
        except ValidationError:
            continue
        if N == 2 and rng.random() < 0.3:
            F2 = random_homogeneous(rng, n, 1)
            G2 = random_homogeneous(rng, n, 1)
            if F2.is_zero or G2.is_zero:
                continue
            try:
                other = pencil_form(F2, G2)
                tensor = SymTensor(n, 1, one_form.coeffs).sym_mul(
                    SymTensor(n, 1, other.coeffs)
                )
                forms.append(SymForm.from_tensor(tensor))
                continue
            except ValidationError:
                continue
        forms.append(one_form)
    return forms


def random_projmap(rng: random.Random, n: int) -> ProjMap:
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        try:
            return ProjMap(rows)
        except Exception:
            continue


def normalise_tensor(tensor: SymTensor) -> SymTensor:
    """Scale so the leading coefficient of the leading slot is 1 (for PGL comparisons)."""
    if tensor.is_zero:
        return tensor
    anchor = max(tensor.coeffs)
    _, lc = tensor.coeffs[anchor].leading_term()
    return tensor.scale(Fraction(1) / lc)


def scaled_copy(form: SymTensor, factor) -> SymTensor:
    return SymTensor(form.ndiff, form.k, {d: p * factor for d, p in form.coeffs.items()})


def cartan_lie_1form(field, form) -> SymTensor:
    """Independent Lie-derivative computation for 1-forms via d(i_v w) + i_v(dw)."""
    n = form.ndiff
    e = units(n)
    a = [form.coefficient(e[i]) for i in range(n)]
    zero = Polynomial.zero(n)
    contraction = zero
    for i in range(n):
        contraction = contraction + field[i] * a[i]
    c = {}
    for i in range(n):
        for j in range(i + 1, n):
            c[(i, j)] = a[j].partial(i) - a[i].partial(j)
    coeffs = {}
    for m in range(n):
        value = contraction.partial(m)
        for i in range(m):
            value = value + c[(i, m)] * field[i]
        for j in range(m + 1, n):
            value = value - c[(m, j)] * field[j]
        coeffs[e[m]] = value
    return SymTensor(n, 1, coeffs)


def chart_consistency_holds(result) -> bool:
    """Chart-1 form moved to chart-2 coordinates matches up to a monomial unit.

    Substitutes x = s y, t = 1/s into the saturated chart-1 form, clears
    powers of s, and compares with the saturated chart-2 form.
    """
    s, y = Polynomial.variables(2)
    a1, b1 = result.chart1.a, result.chart1.b
    a2, b2 = result.chart2.a, result.chart2.b

    # chart-1 form a1 dx + b1 dt with x = s y, t = 1/s, so dx = y ds + s dy
    # and dt = -s^{-2} ds:
    #   ds-coefficient: a1*y - b1/s^2,   dy-coefficient: a1*s.
    # Clearing s^(K+2) makes everything polynomial.
    K = max(
        max((e[1] for e, _ in a1.terms()), default=0),
        max((e[1] for e, _ in b1.terms()), default=0),
    )

    def substitute(poly: Polynomial, s_shift: int) -> Polynomial:
        out = Polynomial.zero(2)
        for exp, coeff in poly.terms():
            alpha, beta = exp
            power = alpha + (K - beta) + s_shift
            assert power >= 0
            out = out + Polynomial(2, {(power, alpha): coeff})
        return out

    P = substitute(a1, 2) * y - substitute(b1, 0)
    Q = substitute(a1, 2) * s
    if P.is_zero and Q.is_zero:
        return False
    if P * b2 != Q * a2:
        return False
    reference, image = (a2, P) if not a2.is_zero else (b2, Q)
    unit = image.try_divide(reference)
    return unit is not None and len(unit.terms()) == 1
