"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class Polynomial:
    """Immutable polynomial in ``nvars`` variables, stored as {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent")
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(c)
        self.nvars = nvars
        self.terms = {e: c for e, c in acc.items() if c != 0}

    @classmethod
    def const(cls, c, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Polynomial":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): coeff})

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different numbers of variables")
            return other
        return Polynomial.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.nvars, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.to_string()!r})"

    # -- queries ----------------------------------------------------------
    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, x: Sequence) -> Fraction:
        if len(x) != self.nvars:
            raise ValueError("point has the wrong dimension")
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for xi, e in zip(x, exp):
                if e:
                    v *= xi ** e
            total += v
        return total

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.nvars, t) for d, t in sorted(parts.items())}

    def extend(self, nvars: int) -> "Polynomial":
        """Same polynomial viewed in more variables (appended, unused)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the variable set")
        pad = (0,) * (nvars - self.nvars)
        return Polynomial(nvars, {e + pad: c for e, c in self.terms.items()})

    def substitute_affine(self, M: Sequence[Sequence[int]], shift: Sequence[int]) -> "Polynomial":
        """Polynomial in new variables y given x_i = sum_k M[i][k] y_k + shift[i]."""
        if len(M) != self.nvars or len(shift) != self.nvars:
            raise ValueError("substitution has the wrong number of rows")
        new_n = len(M[0]) if M else 0
        images = []
        for row, s in zip(M, shift):
            p = Polynomial(new_n, [(tuple(int(k == j) for k in range(new_n)), a) for j, a in enumerate(row) if a])
            images.append(p + s)
        result = Polynomial(new_n)
        for exp, c in self.terms.items():
            term = Polynomial.const(c, new_n)
            for img, e in zip(images, exp):
                if e:
                    term = term * img ** e
            result = result + term
        return result

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-v for v in e))):
            c = self.terms[exp]
            mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")


_VAR = re.compile(r"^x(\d+)$")


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse expressions such as ``"x1^2 + 1/2*x1*x2 - 3"`` (variables x1..xn)."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Polynomial.const(node.value, nvars)
        if isinstance(node, ast.Name):
            m = _VAR.match(node.id)
            if not m or not 1 <= int(m.group(1)) <= nvars:
                raise ValueError(f"unknown variable {node.id!r} (expected x1..x{nvars})")
            return Polynomial.var(int(m.group(1)) - 1, nvars)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.degree != 0 or right.is_zero():
                    raise ValueError("division only by nonzero constants")
                return left * Polynomial.const(1 / right.terms[(0,) * nvars], nvars)
            if isinstance(node.op, ast.Pow):
                if right.degree != 0 or not right.terms or right.terms[(0,) * nvars].denominator != 1:
                    raise ValueError("exponents must be nonnegative integer constants")
                return left ** int(right.terms[(0,) * nvars])
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)
