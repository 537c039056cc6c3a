"""JSON and DOT formats.

Algebra JSON is either explicit::

    {"size": n, "labels": [...], "join": [[...]], "meet": ..., "mul": ..., "imp": ...,
     "forall": [...], "exists": [...]}

or a shorthand for a standard chain::

    {"ordinal_sum": [3, 2], "fixed": [0, 2]}
    {"mv_chain": 4}
    {"godel_chain": 3, "forall": [...], "exists": [...]}

Quantifier entries may be indices or element labels. Without quantifiers the
result is a plain :class:`FiniteBLAlgebra`.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .algebra import OPS, FiniteBLAlgebra, make_godel_chain, make_mv_chain, ordinal_sum
from .chains import IndexChainSpec, build_chain
from .filters import FilterSet
from .logic.semantics import KripkeModel
from .monadic import MonadicBLAlgebra, QuantifierPair
from .report import InvalidParameter, StructuralError
from .varieties import MMVAlgebra


def algebra_to_dict(A: FiniteBLAlgebra | MonadicBLAlgebra) -> dict:
    base = A.base if isinstance(A, MonadicBLAlgebra) else A
    out: dict = {"size": base.size, "labels": list(base.names)}
    for name in OPS:
        out[name] = [list(row) for row in getattr(base, name)]
    if isinstance(A, MonadicBLAlgebra):
        out["forall"] = list(A.forall)
        out["exists"] = list(A.exists)
    return out


def _element(A: FiniteBLAlgebra, v) -> int:
    if isinstance(v, str):
        return A.element(v)
    if isinstance(v, bool) or not isinstance(v, int):
        raise StructuralError(f"element must be an index or a label, got {v!r}")
    if not 0 <= v < A.size:
        raise StructuralError(f"element {v} out of range 0..{A.size - 1}")
    return v


def algebra_from_dict(d: dict) -> FiniteBLAlgebra | MonadicBLAlgebra:
    if not isinstance(d, dict):
        raise StructuralError("algebra JSON must be an object")
    if "ordinal_sum" in d and "fixed" in d:
        return build_chain(IndexChainSpec(tuple(d["ordinal_sum"]), frozenset(d["fixed"])))
    if "ordinal_sum" in d:
        base = ordinal_sum(list(d["ordinal_sum"]))
    elif "mv_chain" in d:
        base = make_mv_chain(int(d["mv_chain"]))
    elif "godel_chain" in d:
        base = make_godel_chain(int(d["godel_chain"]))
    else:
        missing = [k for k in OPS if k not in d]
        if missing:
            raise StructuralError(f"missing tables: {', '.join(missing)}")
        base = FiniteBLAlgebra(*(d[k] for k in OPS), labels=d.get("labels"))
        if "size" in d and d["size"] != base.size:
            raise StructuralError(f"size {d['size']} does not match {base.size}-row tables")
    if "forall" not in d and "exists" not in d:
        return base
    if "forall" not in d or "exists" not in d:
        raise StructuralError("give both forall and exists, or neither")
    q = QuantifierPair(
        [_element(base, v) for v in d["forall"]], [_element(base, v) for v in d["exists"]]
    )
    return MonadicBLAlgebra(base, q)


def load_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}: invalid JSON ({exc})") from None


def load_algebra(path: str | Path) -> FiniteBLAlgebra | MonadicBLAlgebra:
    return algebra_from_dict(load_json(path))


def dump_json(obj, path: str | Path | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


# ---------------------------------------------------------------------------


def mmv_to_dict(M: MMVAlgebra) -> dict:
    out = {
        "oplus": [list(r) for r in M.oplus],
        "neg": list(M.neg),
        "exists": list(M.exists),
        "zero": M.zero,
    }
    if M.labels:
        out["labels"] = list(M.labels)
    return out


def mmv_from_dict(d: dict) -> MMVAlgebra:
    try:
        return MMVAlgebra(d["oplus"], d["neg"], d["exists"], d.get("zero", 0), d.get("labels"))
    except KeyError as exc:
        raise StructuralError(f"MMV JSON lacks {exc.args[0]!r}") from None


def index_chain_to_dict(spec: IndexChainSpec) -> dict:
    return spec.to_dict()


def index_chain_from_dict(d: dict) -> IndexChainSpec:
    return IndexChainSpec.from_dict(d)


def kripke_to_dict(K: KripkeModel) -> dict:
    return {
        "worlds": K.worlds,
        "chain": algebra_to_dict(K.chain),
        "eval": {p: list(v) for p, v in K.eval.items()},
    }


def kripke_from_dict(d: dict, base_dir: str | Path | None = None) -> KripkeModel:
    chain = d.get("chain")
    if isinstance(chain, str):
        path = Path(chain)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        chain = load_json(path)
    A = algebra_from_dict(chain)
    if isinstance(A, MonadicBLAlgebra):
        A = A.base
    try:
        return KripkeModel(int(d["worlds"]), A, d.get("eval", {}))
    except KeyError:
        raise StructuralError("Kripke JSON lacks 'worlds'") from None


# ---------------------------------------------------------------------------
# DOT


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(A: FiniteBLAlgebra | MonadicBLAlgebra, name: str = "algebra") -> str:
    """Hasse diagram, bottom at the bottom. Quantifier image nodes are boxed."""
    base = A.base if isinstance(A, MonadicBLAlgebra) else A
    image = A.image if isinstance(A, MonadicBLAlgebra) else frozenset()
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for e in range(base.size):
        shape = "box" if e in image else "ellipse"
        lines.append(f"  n{e} [label={_quote(base.label(e))}, shape={shape}];")
    for a, b in base.hasse_covers():
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dot(filters: Iterable[FilterSet], size: int, name: str = "filters") -> str:
    """Filter lattice; nodes are labelled by their bitset written as a binary
    string with element 0 rightmost."""
    fs = sorted(filters, key=FilterSet.key)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for i, F in enumerate(fs):
        lines.append(f"  f{i} [label={_quote(format(F.bits, f'0{size}b'))}];")
    for i, F in enumerate(fs):
        for j, G in enumerate(fs):
            if F.elements < G.elements and not any(
                F.elements < H.elements < G.elements for H in fs
            ):
                lines.append(f"  f{i} -> f{j} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_to_json(obj) -> str:
    if hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    return json.dumps(obj, indent=2)


def parse_int_list(text: str, what: str = "list") -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidParameter(f"{what} must be comma-separated integers, got {text!r}") from None
