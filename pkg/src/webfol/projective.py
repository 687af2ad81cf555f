"""Projective linear maps acting on symmetric forms.

Covers the pullback action of PGL(N+1) on k-symmetric 1-forms, the exact
invariance test (pullback proportional to the original as polynomial
families), generation of the polynomial system in the matrix entries whose
zero locus is the symmetry group, finite-group closure from verified
generators, and the order bound check against (d + 2k)^((N+1)^2 - 1).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    CapExceededError,
    GeneratorError,
    InputError,
    SingularPointError,
    ValidationError,
)
from .forms import SymForm, SymTensor, multi_indices
from .poly import Polynomial, Scalar

DEFAULT_CLOSURE_CAP = 100_000


class ProjMap:
    """An element of PGL: an invertible rational matrix, fixed up to scale.

    The stored representative is normalised so that the first nonzero entry
    in row-major order equals 1; equality and hashing use that normal form.
    """

    __slots__ = ("entries",)

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        n = len(rows)
        if n < 2 or any(len(row) != n for row in rows):
            raise InputError("projective map needs a square matrix of size >= 2")
        matrix = tuple(tuple(Fraction(v) for v in row) for row in rows)
        pivot = next((v for row in matrix for v in row if v), None)
        if pivot is None:
            raise ValidationError("singular_matrix", "zero matrix is not invertible")
        matrix = tuple(tuple(v / pivot for v in row) for row in matrix)
        if _determinant(matrix) == 0:
            raise ValidationError("singular_matrix", "matrix is not invertible")
        object.__setattr__(self, "entries", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("ProjMap is immutable")

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> "ProjMap":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "ProjMap":
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        return cls.permutation(perm)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "ProjMap":
        """Map sending x_i to x_{perm[i]} (row i has a 1 in column perm[i])."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise InputError(f"not a permutation of 0..{n - 1}: {perm}")
        return cls([[1 if j == perm[i] else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> "ProjMap":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "ProjMap") -> "ProjMap":
        if not isinstance(other, ProjMap) or other.size != self.size:
            raise InputError("size mismatch in projective map product")
        n = self.size
        return ProjMap(
            [
                [
                    sum((self.entries[i][m] * other.entries[m][j] for m in range(n)), Fraction(0))
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )

    def inverse(self) -> "ProjMap":
        n = self.size
        aug = [list(self.entries[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if aug[r][col]), None)
            assert pivot_row is not None, "normalised maps are invertible"
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
            pivot = aug[col][col]
            aug[col] = [v / pivot for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
        return ProjMap([row[n:] for row in aug])

    def apply_to_point(self, point: Sequence[Scalar]) -> tuple[Fraction, ...]:
        values = [Fraction(v) for v in point]
        if len(values) != self.size:
            raise InputError("point size mismatch")
        return tuple(
            sum((row[j] * values[j] for j in range(self.size)), Fraction(0))
            for row in self.entries
        )

    def sort_key(self):
        return tuple(v for row in self.entries for v in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjMap):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ProjMap({[[str(v) for v in row] for row in self.entries]})"

    def to_json_list(self) -> list[str]:
        return [_fraction_str(v) for row in self.entries for v in row]

    @classmethod
    def from_json_list(cls, data: Sequence) -> "ProjMap":
        n = _integer_sqrt(len(data))
        if n is None or n < 2:
            raise InputError(f"matrix entry list of length {len(data)} is not square")
        try:
            values = [Fraction(str(v)) for v in data]
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed matrix entry: {exc}") from exc
        return cls([values[i * n : (i + 1) * n] for i in range(n)])


def _fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _integer_sqrt(n: int) -> Optional[int]:
    r = int(n ** 0.5)
    for candidate in (r - 1, r, r + 1):
        if candidate >= 0 and candidate * candidate == n:
            return candidate
    return None


def _determinant(matrix: tuple[tuple[Fraction, ...], ...]) -> Fraction:
    n = len(matrix)
    work = [list(row) for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col]), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        det *= work[col][col]
        inv = Fraction(1) / work[col][col]
        for r in range(col + 1, n):
            if work[r][col]:
                factor = work[r][col] * inv
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return det


# -- pullback ---------------------------------------------------------------------


def _linear_differential(row, nvars: int) -> SymTensor:
    """1-tensor sum_m c_m dx_m; entries may be scalars or polynomials in nvars."""
    n = len(row)
    coeffs = {}
    for m, value in enumerate(row):
        poly = value if isinstance(value, Polynomial) else Polynomial.constant(nvars, value)
        if not poly.is_zero:
            dmono = [0] * n
            dmono[m] = 1
            coeffs[tuple(dmono)] = poly
    return SymTensor(n, 1, coeffs)


def pullback_tensor(transform: ProjMap, form: SymTensor) -> SymTensor:
    """Raw pullback: substitute x -> T x in coefficients and dx -> T dx in slots."""
    n = form.ndiff
    if transform.size != n:
        raise InputError(f"matrix size {transform.size} does not match the form ({n})")
    coordinate_subs = [
        sum(
            (transform.entries[i][j] * Polynomial.variable(n, j) for j in range(n)),
            Polynomial.zero(n),
        )
        for i in range(n)
    ]
    linear = [_linear_differential(transform.entries[i], n) for i in range(n)]
    total: Optional[SymTensor] = None
    for dmono, poly in form.coeffs.items():
        composed = poly.compose(coordinate_subs)
        expansion: Optional[SymTensor] = None
        for j, ij in enumerate(dmono):
            for _ in range(ij):
                expansion = linear[j] if expansion is None else expansion.sym_mul(linear[j])
        assert expansion is not None
        term = expansion.scale(composed)
        total = term if total is None else total + term
    assert total is not None
    return total


def pullback(transform: ProjMap, form: SymForm) -> SymForm:
    """Pullback of a validated form; stays valid for invertible maps."""
    return SymForm.from_tensor(pullback_tensor(transform, form))


def preserves(transform: ProjMap, form: SymForm) -> bool:
    """Whether the pullback defines the same web (all coefficient minors vanish)."""
    pulled = pullback_tensor(transform, form)
    keys = sorted(set(form.coeffs) | set(pulled.coeffs), reverse=True)
    zero = Polynomial.zero(form.coeff_nvars())
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            lhs = form.coeffs.get(keys[a], zero) * pulled.coeffs.get(keys[b], zero)
            rhs = form.coeffs.get(keys[b], zero) * pulled.coeffs.get(keys[a], zero)
            if lhs != rhs:
                return False
    return True


# -- the polynomial system cutting out the symmetry group ---------------------------


@dataclass(frozen=True)
class BezoutSystem:
    """Polynomial equations in the matrix entries whose zeros preserve the web.

    One generator per pair of differential multi-indices per sample point;
    every generator is homogeneous of ``declared_degree`` = d + 2k in the
    matrix variables and vanishes on every preserving matrix.
    """

    n_matrix_vars: int
    var_names: tuple[str, ...]
    generators: tuple[Polynomial, ...]
    sample_points: tuple[tuple[Fraction, ...], ...]
    declared_degree: int
    coefficient_degree: int

    def evaluate_at_matrix(self, transform: ProjMap) -> list[Fraction]:
        flat = [v for row in transform.entries for v in row]
        return [g.evaluate(flat) for g in self.generators]

    def to_json_dict(self) -> dict:
        return {
            "nvars": self.n_matrix_vars,
            "var_names": list(self.var_names),
            "generators": [g.to_json_dict() for g in self.generators],
            "sample_points": [
                [_fraction_str(c) for c in point] for point in self.sample_points
            ],
            "declared_degree": self.declared_degree,
            "coefficient_degree": self.coefficient_degree,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "BezoutSystem":
        try:
            return cls(
                n_matrix_vars=int(data["nvars"]),
                var_names=tuple(str(v) for v in data["var_names"]),
                generators=tuple(
                    Polynomial.from_json_dict(g) for g in data["generators"]
                ),
                sample_points=tuple(
                    tuple(Fraction(str(c)) for c in point)
                    for point in data["sample_points"]
                ),
                declared_degree=int(data["declared_degree"]),
                coefficient_degree=int(data["coefficient_degree"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed system JSON: {exc}") from exc


def matrix_var_names(n: int) -> tuple[str, ...]:
    return tuple(f"a{i}{j}" for i in range(n) for j in range(n))


def invariance_system(
    form: SymForm, sample_points: Sequence[Sequence[Scalar]]
) -> BezoutSystem:
    """Equations in the matrix entries forcing pullback-proportionality at points.

    For each sample point x outside the singular set and each pair I < J of
    differential multi-indices, emits

        A_I(x) * B_J^x(a) - A_J(x) * B_I^x(a)

    where B_I^x collects the dx^I coefficient of the pulled-back form at x,
    as a polynomial in the (N+1)^2 matrix entries a_ij.
    """
    n = form.ndiff
    n_vars = n * n
    indices = multi_indices(n, form.k)
    generators: list[Polynomial] = []
    frozen_points: list[tuple[Fraction, ...]] = []
    linear = [
        _linear_differential(
            tuple(Polynomial.variable(n_vars, i * n + m) for m in range(n)), n_vars
        )
        for i in range(n)
    ]
    for raw_point in sample_points:
        point = tuple(Fraction(v) for v in raw_point)
        if len(point) != n:
            raise InputError(f"sample point needs {n} coordinates")
        values = {I: form.coefficient(I).evaluate(point) for I in indices}
        if not any(values.values()):
            raise SingularPointError(
                f"sample point {tuple(map(str, point))} lies in the singular set"
            )
        frozen_points.append(point)
        coordinate_subs = [
            sum(
                (Polynomial.variable(n_vars, i * n + j) * point[j] for j in range(n)),
                Polynomial.zero(n_vars),
            )
            for i in range(n)
        ]
        pulled: Optional[SymTensor] = None
        for dmono, poly in form.coeffs.items():
            composed = poly.compose(coordinate_subs)
            expansion: Optional[SymTensor] = None
            for j, ij in enumerate(dmono):
                for _ in range(ij):
                    expansion = (
                        linear[j] if expansion is None else expansion.sym_mul(linear[j])
                    )
            assert expansion is not None
            term = expansion.scale(composed)
            pulled = term if pulled is None else pulled + term
        assert pulled is not None
        zero = Polynomial.zero(n_vars)
        for a in range(len(indices)):
            for b in range(a + 1, len(indices)):
                I, J = indices[a], indices[b]
                generators.append(
                    pulled.coeffs.get(J, zero) * values[I]
                    - pulled.coeffs.get(I, zero) * values[J]
                )
    return BezoutSystem(
        n_matrix_vars=n_vars,
        var_names=matrix_var_names(n),
        generators=tuple(generators),
        sample_points=tuple(frozen_points),
        declared_degree=form.degree + 2 * form.k,
        coefficient_degree=form.degree + form.k,
    )


def invariance_system_symbolic(form: SymForm) -> BezoutSystem:
    """Doubly symbolic variant: the point coordinates stay as variables.

    The polynomial ring is Q[x_0..x_N, a_00..a_NN]; generators are the same
    minors with x left free.  Useful for handing the full ideal to an
    external solver.
    """
    n = form.ndiff
    n_vars = n + n * n
    indices = multi_indices(n, form.k)

    def avar(i: int, j: int) -> Polynomial:
        return Polynomial.variable(n_vars, n + i * n + j)

    xvars = [Polynomial.variable(n_vars, j) for j in range(n)]
    coordinate_subs = [
        sum((avar(i, j) * xvars[j] for j in range(n)), Polynomial.zero(n_vars))
        for i in range(n)
    ]
    lift = [Polynomial.variable(n_vars, j) for j in range(n)]
    linear = [
        _linear_differential(tuple(avar(i, m) for m in range(n)), n_vars)
        for i in range(n)
    ]
    original = {
        I: form.coefficient(I).compose(lift) for I in indices
    }
    pulled: Optional[SymTensor] = None
    for dmono, poly in form.coeffs.items():
        composed = poly.compose(coordinate_subs)
        expansion: Optional[SymTensor] = None
        for j, ij in enumerate(dmono):
            for _ in range(ij):
                expansion = linear[j] if expansion is None else expansion.sym_mul(linear[j])
        assert expansion is not None
        term = expansion.scale(composed)
        pulled = term if pulled is None else pulled + term
    assert pulled is not None
    zero = Polynomial.zero(n_vars)
    generators = []
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            I, J = indices[a], indices[b]
            generators.append(
                pulled.coeffs.get(J, zero) * original[I]
                - pulled.coeffs.get(I, zero) * original[J]
            )
    names = tuple(f"x{j}" for j in range(n)) + matrix_var_names(n)
    return BezoutSystem(
        n_matrix_vars=n_vars,
        var_names=names,
        generators=tuple(generators),
        sample_points=(),
        declared_degree=form.degree + 2 * form.k,
        coefficient_degree=form.degree + form.k,
    )


def export_system(system: BezoutSystem, fmt: str = "json") -> str:
    """Deterministic rendering of the system; formats: ``json`` or ``text``."""
    if fmt == "json":
        return json.dumps(system.to_json_dict()) + "\n"
    if fmt == "text":
        lines = [f"ring Q[{','.join(system.var_names)}]"]
        lines.append(f"degree {system.declared_degree}")
        for point in system.sample_points:
            lines.append("point " + " ".join(_fraction_str(c) for c in point))
        for g in system.generators:
            lines.append("gen " + g.render(system.var_names))
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown export format {fmt!r}")


def parse_system(text: str) -> BezoutSystem:
    """Inverse of the JSON export."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return BezoutSystem.from_json_dict(data)


# -- finite closure and the order bound ------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """A finite matrix group listed by canonical representatives."""

    elements: tuple[ProjMap, ...]
    generators: tuple[ProjMap, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, item: ProjMap) -> bool:
        return item in set(self.elements)


def group_closure(
    generators: Iterable[ProjMap],
    form: SymForm,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> FiniteGroup:
    """Close verified generators under products (breadth-first).

    Every generator must preserve the form; the closure therefore consists of
    preserving maps only.  Growth past ``cap`` elements raises
    :class:`CapExceededError`, the expected signal for an infinite group.
    """
    gens = []
    for g in generators:
        if not preserves(g, form):
            raise GeneratorError(f"generator does not preserve the form: {g!r}")
        if g not in gens:
            gens.append(g)
    if cap < 1:
        raise InputError("cap must be positive")
    identity = ProjMap.identity(form.ndiff)
    elements = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for g in gens:
                product = element @ g
                if product not in elements:
                    if len(elements) >= cap:
                        raise CapExceededError(
                            f"closure exceeded the cap of {cap} elements"
                        )
                    elements.add(product)
                    next_frontier.append(product)
        frontier = next_frontier
    ordered = tuple(sorted(elements, key=ProjMap.sort_key))
    return FiniteGroup(elements=ordered, generators=tuple(gens))


def verify_bound(order: int, d: int, k: int, N: int) -> bool:
    """Whether a group order respects (d + 2k)^((N+1)^2 - 1), exactly."""
    from .bounds import web_aut_bound

    if order < 1:
        raise InputError("order must be a positive integer")
    return order <= web_aut_bound(d, k, N)


def signed_permutations(n: int) -> list[ProjMap]:
    """All monomial matrices with entries +-1, as distinct projective maps.

    A convenient finite candidate pool for symmetry searches; projectively
    there are n! * 2^(n-1) of them.
    """
    import itertools

    seen: set[ProjMap] = set()
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            m = ProjMap(
                [
                    [signs[i] if j == perm[i] else 0 for j in range(n)]
                    for i in range(n)
                ]
            )
            seen.add(m)
    return sorted(seen, key=ProjMap.sort_key)


def preserving_candidates(
    form: SymForm, candidates: Optional[Sequence[ProjMap]] = None
) -> list[ProjMap]:
    """Filter a candidate pool down to the maps that preserve the web.

    Defaults to the signed permutation matrices.  The result is a verified
    set of generators for a subgroup of the symmetry group, certifying its
    order from below; the order bound certifies it from above.
    """
    if candidates is None:
        candidates = signed_permutations(form.ndiff)
    return [m for m in candidates if preserves(m, form)]
