"""Reading and writing model files (JSON).

A model describes a triple either in complex form (complex dimension, sparse
brackets between complex basis vectors, g0 basis as complex coordinate
vectors) or in real form (real dimension, explicit J, real brackets).  See
docs/model-format.md for the full description.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from gmpy2 import mpq

from .crsmodel import CRSTriple, FieldDescriptor, NamedConstant, build_crs
from .errors import AntisymmetryViolation, ParseError, ValidationError
from .liecore import LieAlgebra
from .linalg import Matrix
from .scalar.exact import Exact, format_exact, imag_part, parse_exact, real_part

FORMAT = "crskit-model"
VERSION = 1
ASSERTION_KEYS = {"no_holomorphic_functions": bool, "reduction_base_dim": int}


class _Ctx:
    """Source text, for turning a bad literal into a line/column."""

    def __init__(self, text):
        self.text = text

    def locate(self, literal):
        needle = json.dumps(literal)
        pos = self.text.find(needle)
        if pos < 0:
            return None, None
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def scalar(self, value, where):
        if isinstance(value, bool):
            raise ValidationError(f"expected a scalar literal, got {value!r}", where)
        if isinstance(value, int):
            return mpq(value)
        if not isinstance(value, str):
            raise ValidationError(f"expected a scalar literal string, got {type(value).__name__}", where)
        try:
            return parse_exact(value)
        except ParseError as exc:
            line, col = self.locate(value)
            if col is not None and exc.column is not None:
                col += 1 + exc.column
            raise ParseError(f"{exc.args[0].split(' (at')[0]} in {where}", line, col) from None


def _require(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"missing field {key!r}", where)
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise ValidationError(f"field {key!r} has the wrong type", f"{where}.{key}" if where else key)
    return v


def default_surrogate(re=None, im=None):
    """Rational stand-in near the midpoint of the enclosure, keeping the zero pattern."""

    def mid(b):
        m = (Fraction(b[0]) + Fraction(b[1])) / 2
        q = m.limit_denominator(1000) or m.limit_denominator(10**9) or Fraction(1, 10**9)
        return mpq(q.numerator, q.denominator)

    out = mpq(0)
    if re is not None:
        out = out + mid(re)
    if im is not None:
        out = out + Exact(0, 1) * mid(im)
    return out


def _bounds(v, where):
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, (str, int)) for x in v)):
        raise ValidationError("enclosure must be [lo, hi] decimal strings", where)
    lo, hi = str(v[0]), str(v[1])
    try:
        if Fraction(lo) > Fraction(hi):
            raise ValidationError("empty enclosure (lo > hi)", where)
    except ValueError:
        raise ValidationError(f"bad decimal in enclosure {v!r}", where) from None
    return (lo, hi)


def _parse_constants(raw, ctx):
    out = {}
    if raw is None:
        return out
    if not isinstance(raw, dict):
        raise ValidationError("constants must be an object", "constants")
    for name, spec in raw.items():
        where = f"constants.{name}"
        if not isinstance(spec, dict):
            raise ValidationError("constant must be an object", where)
        real = bool(spec.get("real", False))
        imag = bool(spec.get("declared_imaginary", False))
        enc = _bounds(_require(spec, "enclosure", where), where + ".enclosure")
        im_enc = spec.get("imag_enclosure")
        if imag:
            re_b, im_b = None, enc
            if im_enc is not None:
                raise ValidationError("declared-imaginary constant takes only 'enclosure'", where)
        else:
            re_b = enc
            im_b = _bounds(im_enc, where + ".imag_enclosure") if im_enc is not None else None
            if im_b is None and not real:
                raise ValidationError("complex constant needs 'imag_enclosure' (or mark it real)", where)
        if "surrogate" in spec:
            sur = ctx.scalar(spec["surrogate"], where + ".surrogate")
        else:
            sur = default_surrogate(re_b, im_b)
        try:
            out[name] = NamedConstant(name, re=re_b, im=im_b, real=real, declared_imaginary=imag, surrogate=sur)
        except ValidationError as exc:
            raise ValidationError(exc.args[0].split(" [")[0], where) from None
    return out


def _terms(value, ctx, where, real_form):
    """Coefficient value -> {(const, part) | None: exact}."""
    items = value if isinstance(value, list) else [value]
    acc = {}
    for it in items:
        if isinstance(it, dict):
            name = _require(it, "const", where, str)
            coef = ctx.scalar(it.get("coef", "1"), where)
            if real_form:
                part = it.get("part", "re")
                if part not in ("re", "im"):
                    raise ValidationError("part must be 're' or 'im'", where)
                key = (name, part)
            else:
                key = (name, None)
        else:
            key = None
            coef = ctx.scalar(it, where)
        acc[key] = acc.get(key, mpq(0)) + coef
    return {k: v for k, v in acc.items() if v}


def _parse_brackets(raw, labels, ctx, real_form):
    index = {lab: i for i, lab in enumerate(labels)}
    if not isinstance(raw, dict):
        raise ValidationError("brackets must be an object", "brackets")
    table = {}
    for key, out in raw.items():
        where = f"brackets.{key}"
        parts = key.split(",")
        if len(parts) != 2 or any(p.strip() not in index for p in parts):
            raise ValidationError(f"bracket key must be 'A,B' with known labels, got {key!r}", where)
        i, j = (index[p.strip()] for p in parts)
        if not isinstance(out, dict):
            raise ValidationError("bracket value must map labels to coefficients", where)
        vec = {}
        for lab, val in out.items():
            if lab not in index:
                raise ValidationError(f"unknown label {lab!r}", where)
            t = _terms(val, ctx, f"{where}.{lab}", real_form)
            if t:
                vec[index[lab]] = t
        if i == j:
            if vec:
                raise AntisymmetryViolation((i, i))
            continue
        if (i, j) in table:
            raise ValidationError("bracket listed twice", where)
        table[(i, j)] = vec
    merged = {}
    for (i, j), vec in table.items():
        if i < j:
            merged[(i, j)] = vec
    for (i, j), vec in table.items():
        if i > j:
            neg = {k: {t: -c for t, c in terms.items()} for k, terms in vec.items()}
            if (j, i) in merged:
                if merged[(j, i)] != neg:
                    raise AntisymmetryViolation((j, i))
            else:
                merged[(j, i)] = neg
    return merged


def _complex_coef(terms):
    out = []
    for key, c in terms.items():
        out.append((c, key[0]) if key is not None else c)
    return out[0] if len(out) == 1 else out


def _real_parts(dim, merged, labels, constants):
    tensors = {}

    def T(p):
        if p not in tensors:
            tensors[p] = [[[mpq(0)] * dim for _ in range(dim)] for _ in range(dim)]
        return tensors[p]

    T("")
    for (i, j), vec in merged.items():
        for k, terms in vec.items():
            for key, c in terms.items():
                if key is None:
                    p = ""
                else:
                    name, part = key
                    if name not in constants:
                        raise ValidationError(f"unknown constant {name!r}", f"brackets.{labels[i]},{labels[j]}")
                    p = f"{name}.{part}"
                    if p not in constants[name].params():
                        raise ValidationError(f"constant {name} has no {part} part", f"brackets.{labels[i]},{labels[j]}")
                    if isinstance(real_part(c), Exact) or imag_part(c):
                        raise ValidationError("real-form coefficients must be real", f"brackets.{labels[i]},{labels[j]}")
                t = T(p)
                t[i][j][k] = t[i][j][k] + c
                t[j][i][k] = t[j][i][k] - c
    return {p: LieAlgebra(dim, t, labels) for p, t in tensors.items()}


def _labels(raw, dim):
    if raw is None:
        return [f"e{k}" for k in range(dim)]
    if not (isinstance(raw, list) and len(raw) == dim and all(isinstance(x, str) and x for x in raw)):
        raise ValidationError(f"labels must be {dim} non-empty strings", "labels")
    if len(set(raw)) != dim or any("," in x for x in raw):
        raise ValidationError("labels must be distinct and contain no commas", "labels")
    return raw


def _vectors(raw, dim, ctx, where):
    if not isinstance(raw, list):
        raise ValidationError("expected a list of vectors", where)
    out = []
    for a, v in enumerate(raw):
        if not (isinstance(v, list) and len(v) == dim):
            raise ValidationError(f"vector must have {dim} entries", f"{where}[{a}]")
        out.append([ctx.scalar(x, f"{where}[{a}]") for x in v])
    return out


def _parse_assertions(raw):
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ValidationError("assertions must be an object", "assertions")
    out = {}
    for k, v in raw.items():
        if k not in ASSERTION_KEYS:
            raise ValidationError(f"unknown assertion {k!r}", "assertions")
        if not isinstance(v, ASSERTION_KEYS[k]) or (ASSERTION_KEYS[k] is int and isinstance(v, bool)):
            raise ValidationError(f"assertion {k!r} has the wrong type", f"assertions.{k}")
        out[k] = v
    return out


def model_to_triple(model: dict, text: str = "") -> tuple:
    """Validated (triple, assertions) from a decoded model object."""
    ctx = _Ctx(text)
    if not isinstance(model, dict):
        raise ValidationError("model must be a JSON object")
    if model.get("format", FORMAT) != FORMAT:
        raise ValidationError(f"unknown format {model.get('format')!r}", "format")
    form = model.get("form", "complex")
    if form not in ("complex", "real"):
        raise ValidationError("form must be 'complex' or 'real'", "form")
    dim = _require(model, "dimension", "", int)
    if isinstance(dim, bool) or dim < 1 or (form == "real" and dim % 2):
        raise ValidationError("bad dimension", "dimension")
    fd = model.get("field", {"kind": "gaussian-rational"})
    try:
        field = FieldDescriptor(_require(fd, "kind", "field", str), int(fd.get("sqrt", 0)),
                                int(fd.get("precision", 64)))
    except (TypeError, ValueError) as exc:
        raise ValidationError(str(exc), "field") from None
    labels = _labels(model.get("labels"), dim)
    constants = _parse_constants(model.get("constants"), ctx)
    merged = _parse_brackets(model.get("brackets", {}), labels, ctx, form == "real")
    basis = _vectors(_require(model, "real_basis", ""), dim, ctx, "real_basis")
    lattice = model.get("lattice_generators", [])
    if not isinstance(lattice, list) or not all(isinstance(v, list) for v in lattice):
        raise ValidationError("lattice_generators must be a list of vectors", "lattice_generators")
    lattice = [[str(x) for x in v] for v in lattice]
    name = str(model.get("name", ""))
    if form == "complex":
        brackets = {}
        for key, vec in merged.items():
            brackets[key] = {k: _complex_coef(t) for k, t in vec.items()}
        T = build_crs(dim, brackets, basis, labels=labels, constants=constants, lattice_generators=lattice,
                      field=None, name=name)
    else:
        J = Matrix(_vectors(_require(model, "J", ""), dim, ctx, "J"))
        parts = _real_parts(dim, merged, labels, constants)
        T = build_crs(real_parts=parts, J=J, real_g0_basis=basis, labels=labels, constants=constants,
                      lattice_generators=lattice, name=name)
    _check_field(field, T.field)
    return T, _parse_assertions(model.get("assertions"))


def _check_field(declared: FieldDescriptor, inferred: FieldDescriptor):
    if declared.kind == "complex-interval":
        return
    if inferred.sqrt and inferred.sqrt != declared.sqrt:
        raise ValidationError(f"literals use sqrt({inferred.sqrt}) but the field declares {declared.kind}"
                              + (f" with sqrt({declared.sqrt})" if declared.sqrt else ""), "field")


def loads_model(text: str) -> tuple:
    try:
        model = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return model_to_triple(model, text)


def parse_model(path) -> tuple:
    """(triple, assertions) from a model file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"file is not UTF-8: {exc.reason}") from None
    return loads_model(text)


# -- emission -------------------------------------------------------------------------


def _fmt_coef(value):
    if isinstance(value, list):
        return [_fmt_coef(v) for v in value]
    if isinstance(value, tuple):
        c, name = value
        out = {"const": name}
        if c != 1:
            out["coef"] = format_exact(c)
        return out
    if isinstance(value, dict):
        return value
    return format_exact(value)


def triple_to_model(T: CRSTriple, assertions: dict | None = None) -> dict:
    model = {"format": FORMAT, "version": VERSION, "name": T.name}
    model["field"] = T.field.to_dict()
    if T.source is not None:
        src = T.source
        labels = src["labels"]
        model.update(form="complex", dimension=src["n"], labels=list(labels))
        br = {}
        for (i, j), out in sorted(src["brackets"].items()):
            vec = {labels[k]: _fmt_coef(v) for k, v in sorted(out.items())}
            if vec:
                br[f"{labels[i]},{labels[j]}"] = vec
        model["brackets"] = br
        model["real_basis"] = [[format_exact(x if not isinstance(x, int) else mpq(x)) for x in v]
                               for v in src["g0_basis"]]
    else:
        labels = list(T.labels)
        model.update(form="real", dimension=T.dim, labels=labels)
        model["J"] = [[format_exact(x) for x in r] for r in T.J.entries]
        br = {}
        for i in range(T.dim):
            for j in range(i + 1, T.dim):
                vec = {}
                for k in range(T.dim):
                    terms = []
                    for p, L in sorted(T.parts.items()):
                        c = L.c[i][j][k]
                        if not c:
                            continue
                        if p:
                            name, part = p.rsplit(".", 1)
                            t = {"const": name, "part": part}
                            if c != 1:
                                t["coef"] = format_exact(c)
                            terms.append(t)
                        else:
                            terms.append(format_exact(c))
                    if terms:
                        vec[labels[k]] = terms[0] if len(terms) == 1 else terms
                if vec:
                    br[f"{labels[i]},{labels[j]}"] = vec
        model["brackets"] = br
        model["real_basis"] = [[format_exact(x) for x in v] for v in T.g0.basis]
    if T.constants:
        model["constants"] = {k: _constant_dict(c) for k, c in sorted(T.constants.items())}
    if T.lattice_generators:
        model["lattice_generators"] = [list(v) for v in T.lattice_generators]
    if assertions:
        model["assertions"] = dict(assertions)
    return model


def _constant_dict(c: NamedConstant):
    d = c.to_dict()
    d.pop("name")
    return d


def dumps_model(model: dict) -> str:
    return json.dumps(model, indent=2, ensure_ascii=False) + "\n"


def dump_model(model: dict, path):
    Path(path).write_text(dumps_model(model), encoding="utf-8")




def schema(name: str) -> dict:
    """The shipped JSON schema ``"report"`` or ``"model"``."""
    from importlib.resources import files

    return json.loads(files("crskit").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8"))
