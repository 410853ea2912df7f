"""Brute-force reference implementations used only by the test suite.

Everything here trades speed for obviousness: spans are materialized as
sets of ints, membership is tested by exhaustive enumeration, and no code
under test is reused on the oracle side of a comparison.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Sequence, Set, Tuple


def span_set(rows: Sequence[int]) -> Set[int]:
    """All XOR combinations of the given rows, including 0."""
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return out


def weight_histogram_direct(rows: Sequence[int], n: int) -> List[int]:
    """Per-codeword weight histogram by walking the whole span."""
    counts = [0] * (n + 1)
    for v in span_set(rows):
        counts[v.bit_count()] += 1
    return counts


def gray_weight_histogram(rows: Sequence[int], n: int) -> List[int]:
    """Same histogram via single-bit-change traversal of information vectors."""
    counts = [0] * (n + 1)
    word = 0
    counts[0] += 1
    for i in range(1, 1 << len(rows)):
        word ^= rows[(i & -i).bit_length() - 1]
        counts[word.bit_count()] += 1
    return counts


def dual_set(words: Set[int], n: int) -> Set[int]:
    """All vectors orthogonal to every word, by scanning 2^n candidates."""
    out = set()
    for v in range(1 << n):
        if all((v & w).bit_count() % 2 == 0 for w in words):
            out.add(v)
    return out


def shadow_set(code_words: Set[int], n: int) -> Set[int]:
    """C_0-perp minus C, with C_0 the weight 0 mod 4 subcode, by filtering 2^n vectors."""
    c0 = {w for w in code_words if w.bit_count() % 4 == 0}
    return dual_set(c0, n) - code_words


def all_neighbor_codes(code_words: Set[int], n: int) -> Set[Tuple[int, ...]]:
    """Every self-dual code built as <(C meet x-perp), x> over even-weight x outside C.

    Codes are returned as canonical tuples (sorted codeword sets).
    """
    out = set()
    for x in range(1, 1 << n):
        if x.bit_count() % 2 or x in code_words:
            continue
        sub = {w for w in code_words if (w & x).bit_count() % 2 == 0}
        neighbor = sub | {w ^ x for w in sub}
        out.add(tuple(sorted(neighbor)))
    return out


def permute_bits(v: int, n: int, images: Sequence[int]) -> int:
    """Apply a 1-indexed image permutation to an int-packed vector."""
    out = 0
    for i in range(n):
        if (v >> i) & 1:
            out |= 1 << (images[i] - 1)
    return out


def equivalent_by_all_permutations(words_a: Set[int], words_b: Set[int], n: int):
    """Search every coordinate permutation; returns an image tuple or None."""
    if len(words_a) != len(words_b):
        return None
    for images in permutations(range(1, n + 1)):
        if all(permute_bits(w, n, images) in words_b for w in words_a):
            return images
    return None


def random_matrix_rows(rng: random.Random, nrows: int, ncols: int) -> List[int]:
    return [rng.getrandbits(ncols) for _ in range(nrows)]


def standard_self_dual_words(n: int) -> Set[int]:
    """The [n, n/2] code spanned by e1+e2, e3+e4, ..., as a word set."""
    assert n % 2 == 0
    return span_set([0b11 << i for i in range(0, n, 2)])


def random_self_dual_words(rng: random.Random, n: int, steps: int = 6) -> Set[int]:
    """Random self-dual code via set-level neighbor steps from the standard one.

    Each step replaces C by <(C meet x-perp), x> for a random even-weight
    x outside C, which is again self-dual.  Only sane for n <= 20 or so.
    """
    words = standard_self_dual_words(n)
    for _ in range(steps):
        for _attempt in range(200):
            x = rng.getrandbits(n)
            if x.bit_count() % 2 == 0 and x not in words:
                break
        else:
            break
        sub = {w for w in words if (w & x).bit_count() % 2 == 0}
        words = sub | {w ^ x for w in sub}
    return words


def singly_even_self_dual_words(rng: random.Random, n: int, steps: int = 6) -> Set[int]:
    """Like random_self_dual_words but guaranteed to contain a weight 2 mod 4 word."""
    while True:
        words = random_self_dual_words(rng, n, steps)
        if any(w.bit_count() % 4 == 2 for w in words):
            return words
