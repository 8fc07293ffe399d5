"""JSON instance, packing and selection files.

Instance schema::

    {"dimension": D,
     "items": [{"incarnations": [{"sizes": [...], "weight": w}, ...]}, ...],
     "bin_types": [{"capacities": [...], "weight": w}, ...],
     "metadata": {...}}            # optional

Unknown fields are rejected. Floats are written with ``repr`` precision so
``parse(serialize(inst)) == inst`` exactly.
"""

from __future__ import annotations

import json

from .model import Bin, BinType, Incarnation, Instance, Item, KnapsackSelection, Packing


class FormatError(ValueError):
    pass


def _expect(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    extra = set(obj) - set(allowed)
    if extra:
        raise FormatError(f"{where}: unknown field(s) {sorted(extra)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise FormatError(f"{where}: missing field(s) {missing}")


def _numbers(seq, where):
    if not isinstance(seq, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in seq
    ):
        raise FormatError(f"{where}: expected a list of numbers")
    return tuple(float(v) for v in seq)


def _weight(obj, where):
    w = obj.get("weight", 1.0)
    if not isinstance(w, (int, float)) or isinstance(w, bool):
        raise FormatError(f"{where}: weight must be a number")
    return float(w)


def instance_from_dict(data: dict) -> tuple[Instance, dict]:
    """Return the instance and its (possibly empty) metadata."""
    _expect(data, ("dimension", "items", "bin_types", "metadata"), ("dimension", "items"), "instance")
    D = data["dimension"]
    if not isinstance(D, int) or isinstance(D, bool):
        raise FormatError("instance: dimension must be an integer")
    items = []
    for i, it in enumerate(data["items"]):
        _expect(it, ("incarnations",), ("incarnations",), f"item {i}")
        incs = []
        for j, inc in enumerate(it["incarnations"]):
            where = f"item {i} incarnation {j}"
            _expect(inc, ("sizes", "weight"), ("sizes",), where)
            incs.append(Incarnation(_numbers(inc["sizes"], where), _weight(inc, where)))
        items.append(Item(tuple(incs)))
    bts = []
    for t, bt in enumerate(data.get("bin_types", [])):
        where = f"bin type {t}"
        _expect(bt, ("capacities", "weight"), ("capacities",), where)
        bts.append(BinType(_numbers(bt["capacities"], where), _weight(bt, where)))
    meta = data.get("metadata", {})
    if not isinstance(meta, dict):
        raise FormatError("instance: metadata must be an object")
    return Instance(D, tuple(items), tuple(bts)), meta


def instance_to_dict(inst: Instance, metadata: dict | None = None) -> dict:
    out = {
        "dimension": inst.dimension,
        "items": [
            {"incarnations": [{"sizes": list(inc.sizes), "weight": inc.weight} for inc in it.incarnations]}
            for it in inst.items
        ],
        "bin_types": [{"capacities": list(bt.capacities), "weight": bt.weight} for bt in inst.bin_types],
    }
    if metadata:
        out["metadata"] = metadata
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def read_instance(path) -> tuple[Instance, dict]:
    return instance_from_dict(_load_json(path))


def write_instance(path, inst: Instance, metadata: dict | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(instance_to_dict(inst, metadata)))


def packing_to_dict(p: Packing) -> dict:
    return {"bins": [{"bin_type": b.bin_type, "assignments": [list(a) for a in b.assignments]} for b in p.bins]}


def packing_from_dict(data: dict) -> Packing:
    _expect(data, ("bins",), ("bins",), "packing")
    bins = []
    for k, b in enumerate(data["bins"]):
        _expect(b, ("bin_type", "assignments"), ("bin_type", "assignments"), f"bin {k}")
        pairs = []
        for a in b["assignments"]:
            if not (isinstance(a, list) and len(a) == 2 and all(isinstance(v, int) for v in a)):
                raise FormatError(f"bin {k}: assignments must be [item, incarnation] integer pairs")
            pairs.append(tuple(a))
        if not isinstance(b["bin_type"], int):
            raise FormatError(f"bin {k}: bin_type must be an integer")
        bins.append(Bin(b["bin_type"], tuple(pairs)))
    return Packing(tuple(bins))


def read_packing(path) -> Packing:
    return packing_from_dict(_load_json(path))


def write_packing(path, p: Packing):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(packing_to_dict(p)))


def selection_to_dict(sel: KnapsackSelection) -> dict:
    return {"chosen": [list(c) for c in sel.chosen], "value": sel.value}
