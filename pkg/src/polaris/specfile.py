"""Line-oriented space-spec text: parsing, canonical printing, building.

Grammar (blank lines and '#' comments are ignored):

    field p=<prime> k=<int>
    form kind=<alternating|symmetric|hermitian|quadratic> dim=<int>
         [sigma=<int>] [epsilon=<code>]
    row <code> <code> ... <code>     (dim rows of dim codes each)

Codes are the integer element codes of the field module.  For
sesquilinear kinds the rows are the gram matrix; for quadratic they are
the upper-triangular coefficient matrix, and any nonzero entry below
the diagonal is a parse error naming the entry.  The format is plain
text on purpose: golden files diff cleanly and round-trip bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SpecError
from .field import Automorphism, Field, field_make
from .forms import (
    AdmissiblePair,
    quadratic_form,
    sesquilinear_form,
)

FORM_KINDS = ("alternating", "symmetric", "hermitian", "quadratic")


@dataclass(frozen=True)
class SpaceSpec:
    p: int
    k: int
    kind: str
    dim: int
    sigma: int
    epsilon: int
    rows: tuple


def _parse_kv(tokens, allowed, line):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise SpecError(f"expected key=value, got {tok!r}", line)
        key, _, val = tok.partition("=")
        if key not in allowed:
            raise SpecError(f"unknown key {key!r}", line)
        if key == "kind":
            out[key] = val
        else:
            try:
                out[key] = int(val)
            except ValueError:
                raise SpecError(f"{key} must be an integer, got {val!r}", line)
    return out


def _default_pair(F: Field, kind: str, line: int):
    if kind == "alternating":
        return 0, F.minus_one
    if kind == "symmetric" or kind == "quadratic":
        return 0, 1
    if F.k % 2 != 0:
        raise SpecError(f"GF({F.q}) has no hermitian involution", line)
    return F.k // 2, 1


def parse_spec(text: str) -> SpaceSpec:
    field_line = form_line = None
    field_kv = form_kv = None
    rows = []
    row_lines = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        head, rest = tokens[0], tokens[1:]
        if head == "field":
            if field_kv is not None:
                raise SpecError("duplicate field block", ln)
            field_kv = _parse_kv(rest, {"p", "k"}, ln)
            field_line = ln
        elif head == "form":
            if form_kv is not None:
                raise SpecError("duplicate form block", ln)
            form_kv = _parse_kv(rest, {"kind", "dim", "sigma", "epsilon"}, ln)
            form_line = ln
        elif head == "row":
            rows.append(rest)
            row_lines.append(ln)
        else:
            raise SpecError(f"unknown directive {head!r}", ln)

    if field_kv is None:
        raise SpecError("missing field block")
    if "p" not in field_kv or "k" not in field_kv:
        raise SpecError("field block needs both p= and k=", field_line)
    try:
        F = field_make(field_kv["p"], field_kv["k"])
    except Exception as exc:
        raise SpecError(str(exc), field_line)

    if form_kv is None:
        raise SpecError("missing form block")
    kind = form_kv.get("kind")
    if kind not in FORM_KINDS:
        raise SpecError(f"unknown kind {kind!r}; expected one of {FORM_KINDS}", form_line)
    dim = form_kv.get("dim")
    if not isinstance(dim, int) or not 1 <= dim <= 8:
        raise SpecError(f"dim must be in [1, 8], got {dim!r}", form_line)
    ds, de = _default_pair(F, kind, form_line)
    sigma = form_kv.get("sigma", ds)
    epsilon = form_kv.get("epsilon", de)
    if not 0 <= sigma < F.k:
        raise SpecError(f"sigma={sigma} out of range [0, {F.k})", form_line)
    if not 0 <= epsilon < F.q:
        raise SpecError(f"epsilon={epsilon} is not an element code of GF({F.q})", form_line)

    if len(rows) != dim:
        raise SpecError(f"expected {dim} row lines, found {len(rows)}",
                        row_lines[-1] if rows else form_line)
    matrix = []
    for ridx, (toks, ln) in enumerate(zip(rows, row_lines)):
        if len(toks) != dim:
            raise SpecError(f"row {ridx} has {len(toks)} entries, expected {dim}", ln)
        vals = []
        for cidx, tok in enumerate(toks):
            try:
                v = int(tok)
            except ValueError:
                raise SpecError(f"row {ridx} col {cidx}: bad element code {tok!r}", ln)
            if not 0 <= v < F.q:
                raise SpecError(
                    f"row {ridx} col {cidx}: code {v} out of range for GF({F.q})", ln)
            if kind == "quadratic" and cidx < ridx and v != 0:
                raise SpecError(
                    f"row {ridx} col {cidx}: nonzero entry below the diagonal "
                    "of a quadratic coefficient matrix", ln)
            vals.append(v)
        matrix.append(tuple(vals))
    return SpaceSpec(F.p, F.k, kind, dim, sigma, epsilon, tuple(matrix))


def format_spec(spec: SpaceSpec) -> str:
    """Canonical printer; parse(format_spec(s)) == s."""
    F = field_make(spec.p, spec.k)
    ds, de = _default_pair(F, spec.kind, None)
    head = f"form kind={spec.kind} dim={spec.dim}"
    if spec.sigma != ds:
        head += f" sigma={spec.sigma}"
    if spec.epsilon != de:
        head += f" epsilon={spec.epsilon}"
    lines = [f"field p={spec.p} k={spec.k}", head]
    for row in spec.rows:
        lines.append("row " + " ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def build_form(spec: SpaceSpec):
    F = field_make(spec.p, spec.k)
    if spec.kind == "quadratic":
        return quadratic_form(F, spec.rows)
    pair = AdmissiblePair(Automorphism(spec.sigma), spec.epsilon)
    return sesquilinear_form(F, spec.rows, spec.kind, pair=pair)


def build_space_from_spec(spec: SpaceSpec, cap: int | None = None, label: str | None = None):
    from .polar import build_polar_space
    return build_polar_space(build_form(spec), cap=cap, label=label)
