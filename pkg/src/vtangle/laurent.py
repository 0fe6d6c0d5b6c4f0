"""Exact Laurent polynomial arithmetic in several variables.

Coefficients are Python integers, exponents may be negative, and storage
is a sparse map from exponent vectors to coefficients.  The module also
provides determinants of polynomial matrices, by two independent methods
so they can cross-check each other, and the unit normalization that makes
polynomials defined "up to a sign and a monomial" comparable.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction


class MultiLaurentPoly:
    """A Laurent polynomial over a fixed ordered tuple of variable names.

    Instances are immutable by convention: every operation returns a new
    polynomial, and no zero coefficient is ever stored.  Two polynomials
    compare equal only if they share the same variable tuple.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise ValueError(
                    f"exponent vector {exps} does not fit variables {self.variables}"
                )
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "MultiLaurentPoly":
        return cls(variables)

    @classmethod
    def constant(cls, c: int, variables) -> "MultiLaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def one(cls, variables) -> "MultiLaurentPoly":
        return cls.constant(1, variables)

    @classmethod
    def monomial(cls, coeff: int, exps, variables) -> "MultiLaurentPoly":
        return cls(variables, {tuple(exps): coeff})

    @classmethod
    def variable(cls, name: str, variables) -> "MultiLaurentPoly":
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1})

    # -- ring structure ------------------------------------------------------

    def _coerce(self, other) -> "MultiLaurentPoly":
        if isinstance(other, MultiLaurentPoly):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, int):
            return MultiLaurentPoly.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, 0) + coeff
        return MultiLaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurentPoly(
            self.variables, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiLaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            # Only units (single terms with coefficient +-1) are invertible.
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            ((exps, coeff),) = self.terms.items()
            if coeff not in (1, -1):
                raise ValueError("negative power of a non-unit coefficient")
            inv = MultiLaurentPoly(
                self.variables, {tuple(-e for e in exps): coeff}
            )
            return inv ** (-k)
        out = MultiLaurentPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiLaurentPoly.constant(other, self.variables)
        if not isinstance(other, MultiLaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries -------------------------------------------------------------

    def coefficient(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def is_constant(self) -> bool:
        zero = (0,) * len(self.variables)
        return all(e == zero for e in self.terms)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        """The lexicographically largest exponent vector and its coefficient."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        exps = max(self.terms)
        return exps, self.terms[exps]

    def evaluate(self, assignment: Mapping[str, object]):
        """Substitute values for some or all variables.

        Values may be integers, fractions, or polynomials (all polynomial
        values must share one variable tuple).  With every variable
        assigned a scalar the result is a scalar; otherwise it is a
        polynomial in the remaining (or the substituted polynomials')
        variables.  Negative exponents of scalar values go through exact
        fractions.
        """
        unknown = set(assignment) - set(self.variables)
        if unknown:
            raise ValueError(f"not variables of this polynomial: {sorted(unknown)}")
        poly_values = [v for v in assignment.values() if isinstance(v, MultiLaurentPoly)]
        remaining = [v for v in self.variables if v not in assignment]
        if poly_values:
            target = poly_values[0].variables
            if any(p.variables != target for p in poly_values):
                raise ValueError("substituted polynomials disagree on variables")
            if remaining:
                raise ValueError("mixing leftover variables with polynomial values")
            out = MultiLaurentPoly.zero(target)
            for exps, coeff in self.terms.items():
                term = MultiLaurentPoly.constant(coeff, target)
                for name, e in zip(self.variables, exps):
                    v = assignment[name]
                    if not isinstance(v, MultiLaurentPoly):
                        v = MultiLaurentPoly.constant(v, target)
                    term = term * v**e
                out = out + term
            return out
        if remaining:
            idx = [i for i, v in enumerate(self.variables) if v in assignment]
            keep = [i for i, v in enumerate(self.variables) if v not in assignment]
            out = {}
            for exps, coeff in self.terms.items():
                factor = Fraction(coeff)
                for i in idx:
                    factor *= Fraction(assignment[self.variables[i]]) ** exps[i]
                if factor.denominator != 1:
                    raise ValueError("partial evaluation left fractional coefficients")
                e = tuple(exps[i] for i in keep)
                out[e] = out.get(e, 0) + int(factor)
            return MultiLaurentPoly([self.variables[i] for i in keep], out)
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = Fraction(coeff)
            for name, e in zip(self.variables, exps):
                term *= Fraction(assignment[name]) ** e
            total += term
        return int(total) if total.denominator == 1 else total

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            coeff = self.terms[exps]
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.variables, exps)
                if e
            ]
            body = "*".join(factors)
            if not body:
                mono = str(abs(coeff))
            elif abs(coeff) == 1:
                mono = body
            else:
                mono = f"{abs(coeff)}*{body}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text

    def __repr__(self):
        return f"MultiLaurentPoly({self.variables!r}, {self.terms!r})"


# Rows of polynomials over one shared variable tuple; determinants expect
# a square one.
PolyMatrix = Sequence[Sequence[MultiLaurentPoly]]


def _matrix_variables(m: PolyMatrix):
    if not m or any(len(row) != len(m) for row in m):
        raise ValueError("determinant needs a square, nonempty matrix")
    variables = m[0][0].variables
    if any(p.variables != variables for row in m for p in row):
        raise ValueError("matrix entries disagree on variables")
    return variables


def det(m: PolyMatrix, method: str = "cofactor") -> MultiLaurentPoly:
    """Exact determinant of a square polynomial matrix.

    ``cofactor`` expands along the first remaining row, memoizing on the
    set of surviving columns, which makes it O(n 2^n) instead of n!.
    ``bareiss`` runs fraction-free elimination whose divisions are exact
    in the polynomial ring.  Both are exact; keeping the two lets tests
    compare completely independent routes.
    """
    variables = _matrix_variables(m)
    if method == "cofactor":
        return _det_cofactor(m, variables)
    if method == "bareiss":
        return _det_bareiss(m, variables)
    raise ValueError(f"unknown determinant method {method!r}")


def _det_cofactor(m, variables):
    n = len(m)
    cache = {}

    def minor(cols: int):
        if cols == 0:
            return MultiLaurentPoly.one(variables)
        got = cache.get(cols)
        if got is not None:
            return got
        row = n - bin(cols).count("1")
        total = MultiLaurentPoly.zero(variables)
        sign = 1
        rest = cols
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            entry = m[row][j]
            if entry:
                sub = minor(cols ^ low)
                total = total + (entry * sub if sign > 0 else -(entry * sub))
            sign = -sign
            rest ^= low
        cache[cols] = total
        return total

    return minor((1 << n) - 1)


def _det_bareiss(m, variables):
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = MultiLaurentPoly.one(variables)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MultiLaurentPoly.zero(variables)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = divexact(num, prev)
            a[i][k] = MultiLaurentPoly.zero(variables)
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


def divexact(a: MultiLaurentPoly, b: MultiLaurentPoly) -> MultiLaurentPoly:
    """Quotient a / b when the division is exact; error otherwise.

    Laurent terms are first shifted to ordinary polynomials, then the
    classic leading-term elimination runs under lexicographic order; over
    the integers the leading coefficients must divide at every step.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return MultiLaurentPoly.zero(a.variables)
    if a.variables != b.variables:
        raise ValueError("variable mismatch in division")
    k = len(a.variables)
    # Shift each side by its own per-variable minimum.  Minima add up under
    # multiplication, so an exact Laurent quotient becomes an ordinary
    # polynomial quotient of ordinary polynomials.
    shift_a = tuple(min(e[i] for e in a.terms) for i in range(k))
    shift_b = tuple(min(e[i] for e in b.terms) for i in range(k))
    num = {tuple(x - s for x, s in zip(e, shift_a)): c for e, c in a.terms.items()}
    den = {tuple(x - s for x, s in zip(e, shift_b)): c for e, c in b.terms.items()}
    lead_b = max(den)
    quot = {}
    while num:
        lead_a = max(num)
        exps = tuple(x - y for x, y in zip(lead_a, lead_b))
        coeff, rem = divmod(num[lead_a], den[lead_b])
        if rem or any(e < 0 for e in exps):
            raise ValueError("polynomial division is not exact")
        quot[exps] = coeff
        for e, c in den.items():
            key = tuple(x + y for x, y in zip(exps, e))
            num[key] = num.get(key, 0) - coeff * c
            if not num[key]:
                del num[key]
    unshift = tuple(x - y for x, y in zip(shift_a, shift_b))
    return MultiLaurentPoly(
        a.variables,
        {tuple(x + s for x, s in zip(e, unshift)): c for e, c in quot.items()},
    )


def normalize_unit(p: MultiLaurentPoly) -> MultiLaurentPoly:
    """Canonical representative under sign and monomial unit factors.

    Exponents are shifted so each variable's minimum is zero, then the
    overall sign is fixed to make the lexicographically leading
    coefficient positive.  Zero maps to zero; the map is idempotent.
    """
    if not p.terms:
        return p
    k = len(p.variables)
    shift = tuple(min(e[i] for e in p.terms) for i in range(k))
    terms = {
        tuple(x - s for x, s in zip(e, shift)): c for e, c in p.terms.items()
    }
    if terms[max(terms)] < 0:
        terms = {e: -c for e, c in terms.items()}
    return MultiLaurentPoly(p.variables, terms)
