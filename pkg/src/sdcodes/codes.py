"""Binary linear codes and their self-duality structure.

A LinearCode stores a canonical reduced-echelon generator matrix, so equal
codes compare equal.  On top of that sit the dual, the parity classes of
self-dual codes, the doubly-even subcode with its shadow cosets, and the
two-coordinate subtraction construction.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import DomainError, IntegrityError, ParseError, ResourceLimitError
from .gf2core import (
    BitMatrix,
    BitVector,
    kernel_raw,
    pivots_of_rref_raw,
    reduce_raw,
    rref_raw,
)

__all__ = [
    "ParityClass",
    "LinearCode",
    "ShadowParts",
    "dual",
    "is_self_dual",
    "parity_class",
    "shadow_parts",
    "subtract_coordinates",
    "permuted_code",
    "load_code",
    "save_code",
]

CODEWORD_ENUM_LIMIT = 26


class ParityClass(enum.Enum):
    ODD_CONTAINING = "odd-containing"
    SINGLY_EVEN = "singly-even"
    DOUBLY_EVEN = "doubly-even"


def _is_rref(rows: Sequence[int]) -> bool:
    prev = -1
    for r in rows:
        if r == 0:
            return False
        p = (r & -r).bit_length() - 1
        if p <= prev:
            return False
        prev = p
    for r in rows:
        p = (r & -r).bit_length() - 1
        if sum((other >> p) & 1 for other in rows) != 1:
            return False
    return True


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] binary code held as a reduced-echelon generator matrix."""

    n: int
    k: int
    gen: BitMatrix
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.gen.ncols != self.n:
            raise DomainError(f"generator has {self.gen.ncols} columns, expected {self.n}")
        if self.gen.nrows != self.k:
            raise DomainError(f"generator has {self.gen.nrows} rows, expected k={self.k}")
        if not _is_rref(self.gen.row_ints()) and self.k > 0:
            raise DomainError("generator rows are not in reduced echelon form")

    @classmethod
    def from_rows(
        cls,
        rows: Union[BitMatrix, Iterable[BitVector]],
        n: Optional[int] = None,
        name: Optional[str] = None,
    ) -> "LinearCode":
        """Canonicalize arbitrary spanning rows; k becomes the rank."""
        if isinstance(rows, BitMatrix):
            ints, n = rows.row_ints(), rows.ncols
        else:
            vecs = list(rows)
            if n is None:
                if not vecs:
                    raise DomainError("need an explicit length for an empty row list")
                n = vecs[0].n
            for v in vecs:
                if v.n != n:
                    raise DomainError(f"row length {v.n} does not match n={n}")
            ints = [v.bits for v in vecs]
        red, rank, _ = rref_raw(ints, n)
        gen = BitMatrix(n, tuple(BitVector(n, r) for r in red[:rank]))
        return cls(n, rank, gen, name)

    @classmethod
    def from_int_rows(cls, ints: Sequence[int], n: int, name: Optional[str] = None) -> "LinearCode":
        red, rank, _ = rref_raw(ints, n)
        gen = BitMatrix(n, tuple(BitVector(n, r) for r in red[:rank]))
        return cls(n, rank, gen, name)

    @classmethod
    def from_strings(cls, rows: Sequence[str], name: Optional[str] = None) -> "LinearCode":
        return cls.from_rows([BitVector.from01(s) for s in rows], name=name)

    def row_ints(self) -> List[int]:
        return self.gen.row_ints()

    def pivot_columns(self) -> Tuple[int, ...]:
        """1-indexed pivot columns of the canonical generator."""
        return tuple(p + 1 for p in pivots_of_rref_raw(self.row_ints()))

    def contains(self, v: BitVector) -> bool:
        if v.n != self.n:
            raise DomainError(f"vector length {v.n} does not match n={self.n}")
        rows = self.row_ints()
        return reduce_raw(v.bits, rows, pivots_of_rref_raw(rows)) == 0

    def codewords(self) -> Iterator[BitVector]:
        """Every codeword; guarded so nobody walks 2^30 words by accident."""
        if self.k > CODEWORD_ENUM_LIMIT:
            raise ResourceLimitError(
                f"codeword enumeration is limited to k <= {CODEWORD_ENUM_LIMIT}, got k={self.k}"
            )
        rows = self.row_ints()
        word = 0
        yield BitVector(self.n, 0)
        for i in range(1, 1 << self.k):
            word ^= rows[(i & -i).bit_length() - 1]
            yield BitVector(self.n, word)

    def with_name(self, name: Optional[str]) -> "LinearCode":
        return LinearCode(self.n, self.k, self.gen, name)

    def label(self) -> str:
        return self.name if self.name is not None else f"[{self.n},{self.k}] code"

    def to_json(self) -> dict:
        return {
            "name": self.name or "",
            "n": self.n,
            "k": self.k,
            "rows": self.gen.to_strings(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LinearCode":
        try:
            n = int(obj["n"])
            rows = list(obj["rows"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"code object needs integer 'n' and list 'rows': {exc}") from None
        vecs = []
        for idx, s in enumerate(rows):
            if not isinstance(s, str):
                raise ParseError(f"row {idx + 1} is not a string")
            v = BitVector.from01(s)
            if v.n != n:
                raise ParseError(f"row {idx + 1} has length {v.n}, expected {n}")
            vecs.append(v)
        name = obj.get("name") or None
        code = cls.from_rows(vecs, n, name)
        if "k" in obj and int(obj["k"]) != code.k:
            raise ParseError(f"declared k={obj['k']} but rows span dimension {code.k}")
        return code


def load_code(path: Union[str, Path]) -> LinearCode:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return LinearCode.from_json(obj)


def save_code(code: LinearCode, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(code.to_json(), indent=2) + "\n")


def dual(c: LinearCode) -> LinearCode:
    """The [n, n-k] dual code under the standard inner product."""
    basis = kernel_raw(c.row_ints(), c.n)
    return LinearCode.from_int_rows(basis, c.n)


def is_self_dual(c: LinearCode) -> bool:
    if 2 * c.k != c.n:
        return False
    rows = c.row_ints()
    for i, a in enumerate(rows):
        for b in rows[i:]:
            if (a & b).bit_count() & 1:
                return False
    return True


def parity_class(c: LinearCode) -> ParityClass:
    """Weight class from the generators plus the mod-4 closure rule."""
    rows = c.row_ints()
    if any(r.bit_count() & 1 for r in rows):
        return ParityClass.ODD_CONTAINING
    doubly = all(r.bit_count() % 4 == 0 for r in rows) and all(
        (a & b).bit_count() % 2 == 0
        for i, a in enumerate(rows)
        for b in rows[i + 1 :]
    )
    return ParityClass.DOUBLY_EVEN if doubly else ParityClass.SINGLY_EVEN


@dataclass(frozen=True)
class ShadowParts:
    """The doubly-even subcode plus the two coset representatives whose
    cosets of it make up the shadow.  The shadow itself is never stored."""

    c0: LinearCode
    coset_reps: Tuple[BitVector, BitVector]


def shadow_parts(c: LinearCode) -> ShadowParts:
    """Split a singly even self-dual code into C_0 and the shadow cosets."""
    if not is_self_dual(c) or parity_class(c) is not ParityClass.SINGLY_EVEN:
        raise DomainError("shadow decomposition needs a singly even self-dual code")
    rows = c.row_ints()
    psi = [(r.bit_count() % 4) // 2 for r in rows]
    t_idx = psi.index(1)
    t = rows[t_idx]
    c0_ints = [r ^ t if psi[i] else r for i, r in enumerate(rows) if i != t_idx]
    c0 = LinearCode.from_int_rows(c0_ints, c.n)

    code_pivots = pivots_of_rref_raw(rows)
    s = 0
    for v in kernel_raw(c0.row_ints(), c.n):
        if reduce_raw(v, rows, code_pivots) != 0:
            s = v
            break
    else:
        raise IntegrityError("no shadow representative found; not a proper C_0")

    c0_rows = c0.row_ints()
    c0_pivots = pivots_of_rref_raw(c0_rows)
    reps = sorted(
        (
            BitVector(c.n, reduce_raw(s, c0_rows, c0_pivots)),
            BitVector(c.n, reduce_raw(s ^ t, c0_rows, c0_pivots)),
        ),
        key=BitVector.to01,
    )
    return ShadowParts(c0, (reps[0], reps[1]))


def subtract_coordinates(c: LinearCode, i: int, j: int) -> LinearCode:
    """Keep codewords agreeing on coordinates i and j, then delete both.

    For a self-dual [n, n/2] input this lands on a self-dual [n-2, n/2-1]
    code; that is re-verified rather than assumed.
    """
    if i == j:
        raise DomainError("the two coordinates must differ")
    for coord in (i, j):
        if not 1 <= coord <= c.n:
            raise DomainError(f"coordinate {coord} out of range 1..{c.n}")
    if not is_self_dual(c):
        raise DomainError("subtraction is defined on self-dual codes")
    if c.n < 4:
        raise DomainError("code too short to subtract two coordinates")
    rows = c.row_ints()
    i0, j0 = i - 1, j - 1
    differs = [((r >> i0) ^ (r >> j0)) & 1 for r in rows]
    if any(differs):
        t_idx = differs.index(1)
        t = rows[t_idx]
        kept = [r ^ t if differs[idx] else r for idx, r in enumerate(rows) if idx != t_idx]
    else:
        kept = list(rows)
    lo, hi = sorted((i0, j0))
    shrunk = []
    for r in kept:
        r = (r & ((1 << hi) - 1)) | ((r >> (hi + 1)) << hi)
        r = (r & ((1 << lo) - 1)) | ((r >> (lo + 1)) << lo)
        shrunk.append(r)
    out = LinearCode.from_int_rows(shrunk, c.n - 2)
    if out.k != (c.n - 2) // 2 or not is_self_dual(out):
        raise IntegrityError(
            f"subtracting ({i},{j}) from {c.label()} did not yield a self-dual code"
        )
    return out


def permuted_code(c: LinearCode, images: Sequence[int], name: Optional[str] = None) -> LinearCode:
    """The equivalent code with coordinate i sent to images[i-1]."""
    return LinearCode.from_rows([r.permuted(images) for r in c.gen.rows], c.n, name)
