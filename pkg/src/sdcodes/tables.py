"""Named-code registry backed by the versioned data files shipped in
sdcodes/data.

Every published code is reachable by name: block-15 circulant pairs
build the C/G codes directly, neighbor steps and coordinate
subtractions are resolved recursively through their base codes.  Data
files are checksummed; a mismatch is a corrupted installation, not a
recoverable condition.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from .circulant import CirculantPair, build_four_circulant
from .codes import LinearCode, subtract_coordinates
from .errors import DomainError, IntegrityError
from .gf2core import BitVector
from .neighbors import neighbor_from_support
from .wenum import FamilyParams, FamilyTag

__all__ = [
    "DATA_FILES",
    "load_data",
    "named_code",
    "known_code_names",
    "expected_family",
    "expected_min_weight",
    "circulant_table",
    "chain_table",
    "subtraction_table",
    "equivalent_pairs",
    "inequivalent_names",
    "published_enumerator",
]

DATA_VERSION = 1
DATA_FILES = (
    "pairs60_d12.json",
    "pairs60_d10.json",
    "neighbor_chains60.json",
    "subtract58.json",
    "neighbor_chains58.json",
    "equivalences.json",
    "enumerators.json",
)

_DATA_CACHE: Dict[str, dict] = {}
_CHECKSUMS: Dict[str, str] = {}
_CODE_CACHE: Dict[str, LinearCode] = {}
_REGISTRY: Dict[str, tuple] = {}
_NAME_ORDER: List[str] = []


def _data_dir():
    return resources.files(__package__).joinpath("data")


def _checksums() -> Dict[str, str]:
    if not _CHECKSUMS:
        text = _data_dir().joinpath("CHECKSUMS.sha256").read_text(encoding="ascii")
        for line in text.splitlines():
            if line.strip():
                digest, filename = line.split()
                _CHECKSUMS[filename] = digest
    return _CHECKSUMS


def load_data(filename: str) -> dict:
    """Parse a shipped data file after verifying its sha256."""
    cached = _DATA_CACHE.get(filename)
    if cached is not None:
        return cached
    if filename not in DATA_FILES:
        raise DomainError(f"unknown data file {filename!r}")
    raw = _data_dir().joinpath(filename).read_bytes()
    want = _checksums().get(filename)
    if want is None:
        raise IntegrityError(f"no checksum recorded for {filename}")
    got = hashlib.sha256(raw).hexdigest()
    if got != want:
        raise IntegrityError(
            f"{filename} is corrupted: sha256 {got} != recorded {want}"
        )
    body = json.loads(raw)
    if body.get("version") != DATA_VERSION:
        raise IntegrityError(
            f"{filename} has data version {body.get('version')}, expected {DATA_VERSION}"
        )
    _DATA_CACHE[filename] = body
    return body


def _registry() -> Dict[str, tuple]:
    if _REGISTRY:
        return _REGISTRY

    def add(name: str, entry: tuple) -> None:
        if name in _REGISTRY:
            raise IntegrityError(f"duplicate code name {name} in data files")
        _REGISTRY[name] = entry
        _NAME_ORDER.append(name)

    for filename, dmin in (("pairs60_d12.json", 12), ("pairs60_d10.json", 10)):
        body = load_data(filename)
        for row in body["codes"]:
            pair = CirculantPair(
                body["block"],
                BitVector.from01(row["ra"]),
                BitVector.from01(row["rb"]),
            )
            add(row["name"], ("circulant", pair, row.get("beta"), None, dmin))

    body = load_data("neighbor_chains60.json")
    for step in body["steps"]:
        add(
            step["name"],
            ("chain", step["base"], tuple(step["supp"]), step["beta"], None, 12),
        )

    body = load_data("subtract58.json")
    for row in body["codes"]:
        i, j = row["coords"]
        add(
            row["name"],
            ("subtract", body["base"], i, j, body["beta"], body["gamma"], 10),
        )

    body = load_data("neighbor_chains58.json")
    for step in body["steps"]:
        add(
            step["name"],
            ("chain", step["base"], tuple(step["supp"]), step["beta"], step["gamma"], 10),
        )
    return _REGISTRY


def known_code_names() -> List[str]:
    _registry()
    return list(_NAME_ORDER)


def named_code(name: str) -> LinearCode:
    """Resolve a published code name, building through its chain."""
    cached = _CODE_CACHE.get(name)
    if cached is not None:
        return cached
    entry = _registry().get(name)
    if entry is None:
        raise DomainError(f"unknown code name {name!r}")
    kind = entry[0]
    if kind == "circulant":
        out = build_four_circulant(entry[1], name=name)
    elif kind == "chain":
        out = neighbor_from_support(named_code(entry[1]), entry[2], name=name)
    else:
        out = subtract_coordinates(named_code(entry[1]), entry[2], entry[3]).with_name(name)
    _CODE_CACHE[name] = out
    return out


def expected_min_weight(name: str) -> int:
    entry = _registry().get(name)
    if entry is None:
        raise DomainError(f"unknown code name {name!r}")
    return entry[-1]


def expected_family(name: str) -> Optional[FamilyParams]:
    """The published enumerator family, or None where none is claimed."""
    entry = _registry().get(name)
    if entry is None:
        raise DomainError(f"unknown code name {name!r}")
    kind = entry[0]
    if kind == "circulant":
        if entry[2] is None:
            return None
        return FamilyParams(FamilyTag.W60_1, beta=entry[2])
    if kind == "subtract":
        return FamilyParams(FamilyTag.W58_2, beta=entry[4], gamma=entry[5])
    beta, gamma = entry[3], entry[4]
    if gamma is None:
        return FamilyParams(FamilyTag.W60_1, beta=beta)
    return FamilyParams(FamilyTag.W58_2, beta=beta, gamma=gamma)


def circulant_table(dmin: int) -> List[dict]:
    filename = {12: "pairs60_d12.json", 10: "pairs60_d10.json"}.get(dmin)
    if filename is None:
        raise DomainError(f"no circulant table for minimum weight {dmin}")
    body = load_data(filename)
    out = []
    for row in body["codes"]:
        out.append(
            {
                "name": row["name"],
                "pair": CirculantPair(
                    body["block"],
                    BitVector.from01(row["ra"]),
                    BitVector.from01(row["rb"]),
                ),
                "beta": row.get("beta"),
            }
        )
    return out


def chain_table(n: int) -> List[dict]:
    filename = {60: "neighbor_chains60.json", 58: "neighbor_chains58.json"}.get(n)
    if filename is None:
        raise DomainError(f"no neighbor chain table for length {n}")
    return [dict(step) for step in load_data(filename)["steps"]]


def subtraction_table() -> dict:
    body = load_data("subtract58.json")
    return {
        "base": body["base"],
        "beta": body["beta"],
        "gamma": body["gamma"],
        "codes": [dict(row) for row in body["codes"]],
        "classes": [list(cl) for cl in body["classes"]],
    }


def equivalent_pairs() -> List[Tuple[str, str]]:
    return [tuple(p) for p in load_data("equivalences.json")["pairs"]]


def inequivalent_names() -> List[str]:
    return list(load_data("equivalences.json")["inequivalent"])


def published_enumerator(name: str) -> Dict[int, int]:
    """The listed partial weight enumerator (weight -> count)."""
    entries = load_data("enumerators.json")["entries"]
    if name not in entries:
        raise DomainError(f"no published enumerator for {name!r}")
    entry = entries[name]
    return dict(zip(entry["weights"], entry["counts"]))
