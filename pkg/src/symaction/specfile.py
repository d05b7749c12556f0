"""Line-oriented action-spec files.

A file starts with the header ``action-spec 1`` and then holds ``key: value``
lines; ``#`` starts a comment. Keys:

    name: free text
    builder: hermann | sigma | chain | catalog | custom
    seed: non-negative integer
    tol: rel_eps [abs_eps]

    hermann   tau: <involution>   sigma: <involution>
    sigma     algebra: <classical>   n: <int>   automorphism: id | <involution>
    chain     algebra: <classical>   n: <int>   left: <involution|embedding|none>
              right: <involution|embedding|none>   reduce: none | last | both
    catalog   action: <named action>
    custom    factor: typeI <involution> | typeII <classical|embedding>   (repeatable)
              subalgebra: <f>.<side>, <f>.<side> <- <classical|embedding|fix(<involution>)>
              generator: <f>.<side> = [row-major numbers]; <f>.<side> = [...]

Sides are ``g`` for Type I factors and ``left``/``right`` for Type II ones.
``subalgebra`` places every basis element of the named algebra in all the
listed blocks at once (so two blocks give a diagonal). Matrices are written
row-major with commas or spaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from symaction.actions import (
    ActionModel,
    build_chain_action,
    build_chain_reduced,
    build_hermann,
    build_sigma_action,
)
from symaction.catalog import (
    Automorphism,
    build_classical,
    build_embedding,
    build_involution,
    classical,
)
from symaction.liealg import MatrixLieAlgebra, Tolerance
from symaction.spaces import ProductSpace, TypeI, TypeII

HEADER = "action-spec 1"
BUILDERS = ("hermann", "sigma", "chain", "catalog", "custom")
_SINGLE = {"name", "builder", "seed", "tol", "tau", "sigma", "algebra", "n", "automorphism",
           "left", "right", "reduce", "action"}
_MULTI = {"factor", "subalgebra", "generator"}


class SpecError(ValueError):
    """Malformed or invalid spec; ``line`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class ActionSpec:
    fields: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)  # key -> line number (first occurrence)
    multi: dict = field(default_factory=lambda: {k: [] for k in _MULTI})  # key -> [(line, value)]

    @property
    def builder(self) -> str:
        return self.fields["builder"]

    @property
    def seed(self) -> int | None:
        return self.fields.get("seed")

    @property
    def tol(self) -> Tolerance | None:
        return self.fields.get("tol")


def parse_spec(text: str) -> ActionSpec:
    """Parse spec text; raises :class:`SpecError` with the offending line."""
    spec = ActionSpec()
    raw = text.splitlines()
    body = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(raw)]
    body = [(i, ln) for i, ln in body if ln]
    if not body or body[0][1] != HEADER:
        raise SpecError(f"expected header {HEADER!r}", body[0][0] if body else 1)
    for lineno, ln in body[1:]:
        if ":" not in ln:
            raise SpecError(f"expected 'key: value', got {ln!r}", lineno)
        key, value = (s.strip() for s in ln.split(":", 1))
        if key in _MULTI:
            spec.multi[key].append((lineno, value))
            continue
        if key not in _SINGLE:
            raise SpecError(f"unknown key {key!r}", lineno)
        if key in spec.fields:
            raise SpecError(f"duplicate key {key!r}", lineno)
        spec.fields[key] = _convert(key, value, lineno)
        spec.lines[key] = lineno
    if "builder" not in spec.fields:
        raise SpecError("missing 'builder'")
    return spec


def _convert(key, value, lineno):
    if key in ("seed", "n"):
        try:
            v = int(value)
        except ValueError:
            raise SpecError(f"{key} must be an integer, got {value!r}", lineno) from None
        if v < 0 or (key == "n" and v < 1):
            raise SpecError(f"{key} out of range: {v}", lineno)
        return v
    if key == "tol":
        parts = value.replace(",", " ").split()
        try:
            nums = [float(p) for p in parts]
            if len(nums) == 1:
                return Tolerance(nums[0], min(nums[0], 1e-10))
            if len(nums) == 2:
                return Tolerance(*nums)
        except ValueError as exc:
            raise SpecError(f"bad tolerance {value!r}: {exc}", lineno) from None
        raise SpecError(f"tol takes one or two numbers, got {value!r}", lineno)
    if key == "builder" and value not in BUILDERS:
        raise SpecError(f"unknown builder {value!r}; expected one of {', '.join(BUILDERS)}", lineno)
    if key == "reduce" and value not in ("none", "last", "both"):
        raise SpecError(f"reduce must be none, last or both, got {value!r}", lineno)
    return value


_CLASSICAL = re.compile(r"^(so|su|sp|u)\((\d+)\)$")


def classical_by_name(name: str) -> MatrixLieAlgebra:
    m = _CLASSICAL.match(name)
    if not m:
        raise ValueError(f"not a classical algebra name: {name!r}")
    build_classical(m.group(1), int(m.group(2)))  # validates the size
    return classical(m.group(1), int(m.group(2)))


def _algebra(name: str) -> MatrixLieAlgebra:
    if _CLASSICAL.match(name):
        return classical_by_name(name)
    return build_embedding(name).as_algebra()


def _need(spec, key):
    if key not in spec.fields:
        raise SpecError(f"builder {spec.builder!r} needs {key!r}")
    return spec.fields[key]


def _at(spec, key, fn):
    """Run ``fn`` turning catalog errors into SpecErrors at the key's line."""
    try:
        return fn()
    except SpecError:
        raise
    except (ValueError, KeyError) as exc:
        raise SpecError(str(exc), spec.lines.get(key, 0)) from None


def _end(spec, key):
    value = spec.fields.get(key, "none")
    if value == "none":
        return None
    if re.match(r"^[A-Z]+\(", value):
        return _at(spec, key, lambda: build_involution(value))
    return _at(spec, key, lambda: build_embedding(value).image)


def build_action(spec: ActionSpec) -> ActionModel:
    """Instantiate the action a parsed spec describes."""
    name = spec.fields.get("name")
    b = spec.builder
    if b == "hermann":
        tau = _at(spec, "tau", lambda: build_involution(_need(spec, "tau")))
        sigma = _at(spec, "sigma", lambda: build_involution(_need(spec, "sigma")))
        return _at(spec, "sigma", lambda: build_hermann(tau=tau, sigma=sigma, name=name))
    if b == "sigma":
        L = _at(spec, "algebra", lambda: classical_by_name(_need(spec, "algebra")))
        auto = spec.fields.get("automorphism", "id")
        sigma = None
        if auto != "id":
            inv = _at(spec, "automorphism", lambda: build_involution(auto))
            sigma = Automorphism(inv.algebra, inv.matrix, name=inv.name)
        return _at(spec, "automorphism",
                   lambda: build_sigma_action(L, spec.fields.get("n", 1), sigma, name=name))
    if b == "chain":
        L = _at(spec, "algebra", lambda: classical_by_name(_need(spec, "algebra")))
        n = spec.fields.get("n", 1)
        left, right = _end(spec, "left"), _end(spec, "right")
        reduce = spec.fields.get("reduce", "none")
        if reduce == "none":
            return _at(spec, "right", lambda: build_chain_action(L, n, left, right, name=name))
        return _at(spec, "reduce", lambda: build_chain_reduced(L, n, left, right, reduce, name=name))
    if b == "catalog":
        from symaction.analyze.named import named_action

        key = _need(spec, "action")
        A = _at(spec, "action", lambda: named_action(key))
        return A.renamed(name) if name else A
    return _build_custom(spec, name)


_BLOCK = re.compile(r"^(\d+)\.(g|left|right)$")


def _blocks(text, lineno, space):
    out = []
    for tok in (t.strip() for t in text.split(",")):
        m = _BLOCK.match(tok)
        if not m:
            raise SpecError(f"bad block reference {tok!r} (expected <factor>.<g|left|right>)", lineno)
        key = (int(m.group(1)), m.group(2))
        try:
            space.block(*key)
        except KeyError:
            raise SpecError(f"space has no block {tok!r}", lineno) from None
        out.append(key)
    return out


def _parse_factor(value, lineno):
    parts = value.split()
    if len(parts) != 2 or parts[0] not in ("typeI", "typeII"):
        raise SpecError(f"factor must be 'typeI <involution>' or 'typeII <algebra>', got {value!r}", lineno)
    try:
        if parts[0] == "typeI":
            return TypeI(build_involution(parts[1]))
        return TypeII(_algebra(parts[1]), name=parts[1])
    except ValueError as exc:
        raise SpecError(str(exc), lineno) from None


def _subalgebra_basis(ref, lineno):
    m = re.match(r"^fix\((.+)\)$", ref)
    try:
        if m:
            return build_involution(m.group(1)).fixed().basis
        if _CLASSICAL.match(ref):
            return classical_by_name(ref).basis
        return build_embedding(ref).image.basis
    except ValueError as exc:
        raise SpecError(str(exc), lineno) from None


def _parse_matrix(text, size, lineno):
    inner = text.strip()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise SpecError(f"matrix must be written in brackets, got {text!r}", lineno)
    try:
        vals = [float(v) for v in inner[1:-1].replace(",", " ").split()]
    except ValueError:
        raise SpecError(f"non-numeric matrix entry in {text!r}", lineno) from None
    if len(vals) != size * size:
        raise SpecError(f"expected {size * size} entries for a {size}x{size} block, got {len(vals)}", lineno)
    M = np.array(vals).reshape(size, size)
    if not np.all(np.isfinite(M)):
        raise SpecError("matrix has non-finite entries", lineno)
    return M


def _build_custom(spec, name):
    factors = [_parse_factor(v, ln) for ln, v in spec.multi["factor"]]
    if not factors:
        raise SpecError("custom builder needs at least one 'factor' line")
    space = ProductSpace(factors)
    mats = []
    for lineno, value in spec.multi["subalgebra"]:
        if "<-" not in value:
            raise SpecError("subalgebra lines read '<blocks> <- <algebra>'", lineno)
        lhs, ref = (s.strip() for s in value.split("<-", 1))
        keys = _blocks(lhs, lineno, space)
        basis = _subalgebra_basis(ref, lineno)
        for key in keys:
            if space.block(*key).size != basis.shape[-1]:
                raise SpecError(f"{ref} has size {basis.shape[-1]}, block {key} has size "
                                f"{space.block(*key).size}", lineno)
        mats += [space.embed({key: X for key in keys}) for X in basis]
    for lineno, value in spec.multi["generator"]:
        parts = {}
        for chunk in (c for c in value.split(";") if c.strip()):
            if "=" not in chunk:
                raise SpecError("generator chunks read '<block> = [entries]'", lineno)
            lhs, rhs = chunk.split("=", 1)
            (key,) = _blocks(lhs.strip(), lineno, space)
            parts[key] = _parse_matrix(rhs, space.block(*key).size, lineno)
        mats.append(space.embed(parts))
    if not mats:
        raise SpecError("custom builder needs 'subalgebra' or 'generator' lines")
    try:
        return ActionModel(space, np.array(mats), name=name or "custom")
    except ValueError as exc:
        raise SpecError(f"generators do not define an action: {exc}") from None


def load_action(path) -> tuple[ActionModel, ActionSpec]:
    """Read, parse and build; file errors surface as :class:`SpecError`."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    spec = parse_spec(text)
    return build_action(spec), spec
