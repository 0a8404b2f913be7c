"""JSON encodings of scalars, lattices, elements, matrices and Heisenberg elements.

Decoders check the schema and raise :class:`SchemaError` carrying a JSON
pointer to the offending field.  Encoders emit canonical data, so
``dumps(load(x))`` is stable once ``x`` has been canonicalised.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .bruhat import MElement
from .errors import NotSymplectic, RankDeficient, SchemaError
from .heisenberg import HeisElement
from .lattice import QLattice, lattice_from_generators
from .scalars import CycloScalar, NormFactor, Scalar, as_fraction
from .weil import SpMatrix


def dumps(obj: Any, pretty: bool = True) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- encoders ------------------------------------------------------------------------


def rational_to_json(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def cyclo_to_json(c: CycloScalar) -> dict:
    return {"order": c.order, "terms": [[k, rational_to_json(v)] for k, v in c.terms()]}


def norm_to_json(nf: NormFactor) -> dict:
    return {"q": rational_to_json(nf.q), "r": rational_to_json(nf.r)}


def scalar_to_json(s: Scalar) -> dict:
    """``sqrt(r) * value``."""
    return {"root": s.root, "value": cyclo_to_json(s.cyclo), "complex": [s.to_complex().real, s.to_complex().imag]}


def vector_to_json(v) -> list[str]:
    return [rational_to_json(x) for x in v]


def lattice_to_json(L: QLattice) -> dict:
    return {"dim": L.dim, "den": str(L.den), "rows": [list(r) for r in L.rows]}


def melement_to_json(f: MElement) -> dict:
    c = f.canonical()
    return {
        "dim": c.dim,
        "K": lattice_to_json(c.K),
        "prefactor": norm_to_json(c.prefactor),
        "support": [{"rep": vector_to_json(r), "value": cyclo_to_json(v)} for r, v in c.support.items()],
    }


def matrix_to_json(m) -> list[list[str]]:
    rows = m.m if isinstance(m, SpMatrix) else m
    return [[rational_to_json(x) for x in row] for row in rows]


def heis_to_json(h: HeisElement) -> dict:
    return {"vplus": vector_to_json(h.vplus), "vminus": vector_to_json(h.vminus), "alpha": rational_to_json(h.alpha)}


# -- decoders -------------------------------------------------------------------------


def _require(obj, key: str, path: str, kind=None):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}/{key}", "missing field")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"{path}/{key}", f"expected {kind.__name__ if isinstance(kind, type) else 'value'}")
    return val


def parse_rational(x, path: str = "") -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError(path, "rational must be a string 'p/q' or an integer")
    try:
        return as_fraction(x)
    except ZeroDivisionError:
        raise SchemaError(path, f"zero denominator in {x!r}") from None
    except ValueError:
        raise SchemaError(path, f"malformed rational {x!r}") from None


def parse_vector(x, path: str = "", dim: int | None = None) -> tuple[Fraction, ...]:
    if not isinstance(x, list):
        raise SchemaError(path, "expected a list of rationals")
    if dim is not None and len(x) != dim:
        raise SchemaError(path, f"expected {dim} entries, got {len(x)}")
    return tuple(parse_rational(c, f"{path}/{i}") for i, c in enumerate(x))


def parse_cyclo(x, path: str = "") -> CycloScalar:
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return CycloScalar.from_rational(parse_rational(x, path))
    order = _require(x, "order", path, int)
    if order < 1:
        raise SchemaError(f"{path}/order", "order must be positive")
    terms = _require(x, "terms", path, list)
    out = []
    for i, t in enumerate(terms):
        p = f"{path}/terms/{i}"
        if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], int)):
            raise SchemaError(p, "term must be [exponent, rational]")
        out.append((t[0], parse_rational(t[1], f"{p}/1")))
    return CycloScalar.from_exponents(order, out)


def parse_norm(x, path: str = "") -> NormFactor:
    q = parse_rational(_require(x, "q", path), f"{path}/q")
    r = parse_rational(_require(x, "r", path), f"{path}/r")
    if q <= 0 or r <= 0:
        raise SchemaError(path, "norm factor needs q > 0 and r > 0")
    return NormFactor(q, r)


def parse_lattice(x, path: str = "") -> QLattice:
    dim = _require(x, "dim", path, int)
    den = parse_rational(_require(x, "den", path), f"{path}/den")
    if den <= 0:
        raise SchemaError(f"{path}/den", "denominator must be positive")
    rows = _require(x, "rows", path, list)
    vecs = []
    for i, r in enumerate(rows):
        p = f"{path}/rows/{i}"
        if not isinstance(r, list) or len(r) != dim:
            raise SchemaError(p, f"row must have {dim} entries")
        vecs.append([parse_rational(c, f"{p}/{j}") / den for j, c in enumerate(r)])
    try:
        return lattice_from_generators(vecs, dim)
    except RankDeficient as exc:
        raise SchemaError(f"{path}/rows", str(exc)) from None


def parse_melement(x, path: str = "") -> MElement:
    dim = _require(x, "dim", path, int)
    K = parse_lattice(_require(x, "K", path), f"{path}/K")
    if K.dim != dim:
        raise SchemaError(f"{path}/K/dim", "lattice dimension differs from element dimension")
    pre = parse_norm(x["prefactor"], f"{path}/prefactor") if isinstance(x, dict) and "prefactor" in x else None
    supp = _require(x, "support", path, list)
    items = []
    for i, s in enumerate(supp):
        p = f"{path}/support/{i}"
        rep = parse_vector(_require(s, "rep", p), f"{p}/rep", dim)
        items.append((rep, parse_cyclo(_require(s, "value", p), f"{p}/value")))
    return MElement(K, items, pre).canonical()


def parse_matrix(x, path: str = "") -> list[list[Fraction]]:
    if not isinstance(x, list) or not x:
        raise SchemaError(path, "expected a non-empty list of rows")
    n = len(x)
    return [list(parse_vector(r, f"{path}/{i}", n)) for i, r in enumerate(x)]


def parse_spmatrix(x, path: str = "") -> SpMatrix:
    m = parse_matrix(x, path)
    try:
        return SpMatrix(m)
    except NotSymplectic as exc:
        raise SchemaError(path, str(exc)) from None


def parse_heis(x, path: str = "") -> HeisElement:
    if isinstance(x, list):
        if len(x) != 3:
            raise SchemaError(path, "expected [v+, v-, alpha]")
        vp = parse_vector(x[0], f"{path}/0")
        return HeisElement(vp, parse_vector(x[1], f"{path}/1", len(vp)), parse_rational(x[2], f"{path}/2"))
    vp = parse_vector(_require(x, "vplus", path), f"{path}/vplus")
    vm = parse_vector(_require(x, "vminus", path), f"{path}/vminus", len(vp))
    return HeisElement(vp, vm, parse_rational(_require(x, "alpha", path), f"{path}/alpha"))


def detect_kind(x) -> str:
    if isinstance(x, dict):
        if "support" in x:
            return "melem"
        if "rows" in x:
            return "lattice"
        if "vplus" in x:
            return "heis"
    if isinstance(x, list):
        return "matrix"
    raise SchemaError("", "cannot tell which schema this document follows")


def canonicalize(x, kind: str = "auto"):
    """Parse ``x`` as ``kind`` and re-encode it canonically."""
    if kind == "auto":
        kind = detect_kind(x)
    if kind == "melem":
        return melement_to_json(parse_melement(x))
    if kind == "lattice":
        return lattice_to_json(parse_lattice(x))
    if kind == "matrix":
        return matrix_to_json(parse_matrix(x))
    if kind == "heis":
        return heis_to_json(parse_heis(x))
    raise SchemaError("", f"unknown kind {kind!r}")
