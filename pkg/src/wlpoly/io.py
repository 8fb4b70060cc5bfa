"""Reading and writing polytopes, weights and results.

Two polytope formats are understood:

* LattE H-representation: a header ``m d+1`` followed by m rows
  ``b -a_1 ... -a_d`` (meaning ``b - a.x >= 0``) and an optional line
  ``linearity k i_1 ... i_k`` naming the rows that hold with equality.
* JSON: ``{"A": [[...]], "b": [...]}`` for standard form, or
  ``{"G", "h", "E", "f"}`` for inequality form.

Rationals in JSON are strings ``"p/q"`` (integers may be plain numbers).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .calculus import MaxCertificate
from .ehrhart import FitReport, QuasiPolynomial
from .lifting import (
    BASES,
    CUBE,
    LateDilatedFactor,
    ParametricFamily,
    WeightExpr,
    compile_polynomial,
    family_from_factors,
)
from .polynomial import Polynomial, parse_polynomial
from .polytope import HPolytope, StandardPolytope


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


# -- rationals ----------------------------------------------------------------


def rat_to_json(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def rat_from_json(v) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"expected a rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except ValueError:
            raise ParseError(f"bad rational {v!r}") from None
    raise ParseError(f"expected a rational (int or 'p/q' string), got {v!r}")


def _int(v, what="entry") -> int:
    r = rat_from_json(v)
    if r.denominator != 1:
        raise ParseError(f"{what} must be an integer, got {v!r}")
    return int(r)


def _check_keys(obj: dict, allowed: set, what: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object")
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"unknown field(s) in {what}: {', '.join(sorted(unknown))}")


# -- LattE ----------------------------------------------------------------------


def read_latte(text: str) -> HPolytope:
    lines = [(i + 1, ln.split("#")[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty LattE file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'm d+1'", lineno)
    try:
        m, width = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header must contain two integers", lineno) from None
    if m < 0 or width < 1:
        raise ParseError("header values out of range", lineno)
    rows = []
    body = lines[1:]
    if len(body) < m:
        raise ParseError(f"expected {m} constraint rows, found {len(body)}", body[-1][0] if body else lineno)
    for lineno, ln in body[:m]:
        tokens = ln.split()
        if len(tokens) != width:
            raise ParseError(f"expected {width} numbers, found {len(tokens)}", lineno)
        try:
            rows.append([Fraction(tok) for tok in tokens])
        except ValueError:
            raise ParseError(f"non-numeric entry in {ln!r}", lineno) from None
    equalities: set[int] = set()
    for lineno, ln in body[m:]:
        tokens = ln.split()
        key = tokens[0].lower()
        if key == "linearity":
            try:
                k = int(tokens[1])
                idx = [int(t) for t in tokens[2:]]
            except (IndexError, ValueError):
                raise ParseError("malformed linearity line", lineno) from None
            if len(idx) != k or any(not 1 <= i <= m for i in idx):
                raise ParseError("linearity indices do not match the row count", lineno)
            equalities.update(i - 1 for i in idx)
        else:
            raise ParseError(f"unexpected line {ln!r}", lineno)
    G, h, E, f = [], [], [], []
    for i, r in enumerate(rows):
        b, coeffs = r[0], r[1:]
        # b + coeffs.x >= 0  <=>  (-coeffs).x <= b
        if i in equalities:
            E.append([-c for c in coeffs])
            f.append(b)
        else:
            G.append([-c for c in coeffs])
            h.append(b)
    return HPolytope(G, h, E, f, width - 1)


def write_latte(P: Union[HPolytope, StandardPolytope]) -> str:
    if isinstance(P, StandardPolytope):
        eq_rows = list(zip(P.A, P.b))
        ineq_rows = [([-int(j == i) for j in range(P.n)], 0) for i in range(P.n)]
        n = P.n
    else:
        eq_rows = list(zip(P.E, P.f))
        ineq_rows = list(zip(P.G, P.h))
        n = P.n
    out = [f"{len(ineq_rows) + len(eq_rows)} {n + 1}"]
    for row, b in ineq_rows + eq_rows:
        out.append(" ".join(str(v) for v in [b] + [-a for a in row]))
    if eq_rows:
        first = len(ineq_rows) + 1
        idx = range(first, first + len(eq_rows))
        out.append(f"linearity {len(eq_rows)} " + " ".join(map(str, idx)))
    return "\n".join(out) + "\n"


# -- JSON polytopes ------------------------------------------------------------


def polytope_to_json(P, split=None) -> dict:
    if isinstance(P, StandardPolytope):
        d = {"A": [list(r) for r in P.A], "b": list(P.b), "n": P.n}
        if split is not None:
            d["split"] = list(split)
        return d
    def rows(M):
        return [[rat_to_json(v) for v in r] for r in M]

    return {"G": rows(P.G), "h": [rat_to_json(v) for v in P.h], "E": rows(P.E),
            "f": [rat_to_json(v) for v in P.f], "n": P.n}


def polytope_from_json(obj) -> Union[StandardPolytope, HPolytope]:
    if isinstance(obj, dict) and "A" in obj:
        _check_keys(obj, {"A", "b", "n", "split"}, "polytope")
        A = [[_int(v, "A entry") for v in row] for row in obj["A"]]
        b = [_int(v, "b entry") for v in obj.get("b", [])]
        n = obj.get("n")
        try:
            return StandardPolytope(A, b, n)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    _check_keys(obj, {"G", "h", "E", "f", "n"}, "polytope")
    try:
        return HPolytope(
            [[rat_from_json(v) for v in r] for r in obj.get("G", [])],
            [rat_from_json(v) for v in obj.get("h", [])],
            [[rat_from_json(v) for v in r] for r in obj.get("E", [])],
            [rat_from_json(v) for v in obj.get("f", [])],
            obj.get("n"),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_polytope(text: str, fmt: str = "auto"):
    if fmt == "auto":
        fmt = "json" if text.lstrip().startswith("{") else "latte"
    if fmt == "latte":
        return read_latte(text)
    if fmt == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno) from None
        return polytope_from_json(obj)
    raise ValueError(f"unknown format {fmt!r}")


# -- weights ----------------------------------------------------------------------


def polynomial_to_json(p: Polynomial) -> dict:
    return {
        "kind": "polynomial",
        "nvars": p.nvars,
        "terms": [{"exp": list(e), "coeff": rat_to_json(c)} for e, c in sorted(p.terms.items())],
    }


def family_to_json(F: ParametricFamily) -> dict:
    return {"kind": "family", "C": [list(r) for r in F.C], "D": [list(r) for r in F.D],
            "e": list(F.e), "m": F.m, "n": F.n}


def weight_from_json(obj, nvars: int | None = None, basis: str | None = None) -> WeightExpr:
    """Parse a weight object into a WeightExpr over ``nvars`` variables."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("weight must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "polynomial":
        _check_keys(obj, {"kind", "nvars", "expr", "terms", "basis"}, "polynomial weight")
        n = obj.get("nvars", nvars)
        if n is None:
            raise ParseError("polynomial weight needs 'nvars'")
        if "expr" in obj:
            poly = parse_polynomial(obj["expr"], n)
        else:
            terms = []
            for t in obj.get("terms", []):
                _check_keys(t, {"exp", "coeff"}, "polynomial term")
                terms.append((tuple(_int(v, "exponent") for v in t["exp"]), rat_from_json(t["coeff"])))
            try:
                poly = Polynomial(n, terms)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        b = basis or obj.get("basis", CUBE)
        if b not in BASES:
            raise ParseError(f"unknown basis {b!r}")
        return compile_polynomial(poly, b)
    if kind == "family":
        _check_keys(obj, {"kind", "C", "D", "e", "m", "n"}, "family weight")
        try:
            F = ParametricFamily(obj["C"], obj["D"], obj["e"], m=obj.get("m"), n=obj.get("n", nvars))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad family: {exc}") from None
        return WeightExpr.from_family(F)
    if kind == "factors":
        _check_keys(obj, {"kind", "n", "factors"}, "factors weight")
        n = obj.get("n", nvars)
        factors = []
        for fobj in obj.get("factors", []):
            _check_keys(fobj, {"C", "d", "shift", "arg"}, "factor")
            try:
                factors.append(LateDilatedFactor(fobj["C"], fobj["d"], fobj.get("shift", 0), fobj["arg"]))
            except (KeyError, ValueError) as exc:
                raise ParseError(f"bad factor: {exc}") from None
        try:
            return WeightExpr.from_family(family_from_factors(factors, n))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown weight kind {kind!r}")


def read_weight(text: str, nvars: int | None = None, basis: str | None = None) -> WeightExpr:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    return weight_from_json(obj, nvars, basis)


def polynomial_from_json(obj) -> Polynomial:
    W = weight_from_json(obj)
    return W.polynomial


# -- results ---------------------------------------------------------------------


def qp_to_json(qp: QuasiPolynomial) -> dict:
    return {"degree": qp.degree, "period": qp.period,
            "coeffs": [[rat_to_json(v) for v in row] for row in qp.coeffs]}


def qp_from_json(obj) -> QuasiPolynomial:
    _check_keys(obj, {"degree", "period", "coeffs"}, "quasi-polynomial")
    try:
        return QuasiPolynomial(int(obj["degree"]), int(obj["period"]),
                               tuple(tuple(rat_from_json(v) for v in row) for row in obj["coeffs"]))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad quasi-polynomial: {exc}") from None


def report_to_json(rep: FitReport) -> dict:
    return {
        "samples": [[t, rat_to_json(v)] for t, v in rep.samples],
        "holdout_residuals": [rat_to_json(v) for v in rep.holdout_residuals],
        "detected_period": rep.detected_period,
        "degree": rep.degree,
        "period_used": rep.period_used,
        "period_source": rep.period_source,
        "counting_calls": rep.counting_calls,
    }


def certificate_to_json(cert: MaxCertificate) -> dict:
    return {
        "maximum": cert.maximum,
        "k": cert.k,
        "S": list(cert.S),
        "N": cert.N,
        "bounds": [list(b) for b in cert.bounds],
        "scale": cert.scale,
        "monotone": cert.is_monotone(),
    }
