"""Cyclic-set combinatorics: k-subsets, weak separation, necklaces, Young diagrams.

A k-subset of [n] = {1, ..., n} is represented as a sorted tuple of ints.
Textual form is a digit string like "1457" when n <= 9, otherwise a comma
list like "1,4,10".  The ambient n is always carried alongside, never
inferred from the largest element.
"""

from __future__ import annotations

from itertools import combinations

KSubset = tuple[int, ...]


def check_ksubset(I: KSubset, n: int) -> KSubset:
    I = tuple(I)
    if len(set(I)) != len(I):
        raise ValueError(f"duplicate elements in {I}")
    if tuple(sorted(I)) != I:
        raise ValueError(f"k-subset must be sorted: {I}")
    if I and not (1 <= I[0] and I[-1] <= n):
        raise ValueError(f"elements of {I} out of range 1..{n}")
    return I


def parse_ksubset(text: str, n: int) -> KSubset:
    """Parse "1457" (single digits) or "1,4,5,7" into a k-subset of [n].

    >>> parse_ksubset("25", 5)
    (2, 5)
    >>> parse_ksubset("1,4,10", 12)
    (1, 4, 10)
    """
    text = text.strip()
    if "," in text:
        elems = [int(p) for p in text.split(",") if p.strip()]
    else:
        if not text.isdigit():
            raise ValueError(f"cannot parse k-subset {text!r}")
        # digit strings only make sense for n <= 9; past that a bare number
        # is a single element (matching format_ksubset)
        elems = [int(ch) for ch in text] if n <= 9 else [int(text)]
    I = tuple(sorted(elems))
    if len(set(I)) != len(I):
        raise ValueError(f"duplicate elements in {text!r}")
    return check_ksubset(I, n)


def format_ksubset(I: KSubset, n: int) -> str:
    """Inverse of parse_ksubset; digit string iff n <= 9.

    >>> format_ksubset((2, 5), 5)
    '25'
    """
    if n <= 9:
        return "".join(str(i) for i in I)
    return ",".join(str(i) for i in I)


def ksubsets(n: int, k: int) -> list[KSubset]:
    """All k-subsets of [n] in lexicographic order."""
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return [tuple(c) for c in combinations(range(1, n + 1), k)]


def cyclic_interval(a: int, b: int, n: int) -> list[int]:
    """The closed cyclic interval [a, b] in [n], walking forward from a.

    >>> cyclic_interval(4, 1, 5)
    [4, 5, 1]
    """
    out = [a]
    x = a
    while x != b:
        x = x % n + 1
        out.append(x)
        if len(out) > n:
            raise ValueError(f"bad cyclic interval [{a},{b}] in [{n}]")
    return out


def weakly_separated(I: KSubset, J: KSubset, n: int) -> bool:
    """True iff I \\ J and J \\ I occupy disjoint arcs of the cyclic order.

    Equivalently: no cyclic pattern a < b < c < d with a, c in I \\ J and
    b, d in J \\ I.  Implemented by counting maximal blocks of the cyclic
    membership word: separated iff there are at most two blocks.
    """
    if len(I) != len(J):
        raise ValueError(f"size mismatch: |{I}| != |{J}|")
    S = set(I) - set(J)
    T = set(J) - set(I)
    word = []
    for x in range(1, n + 1):
        if x in S:
            word.append("S")
        elif x in T:
            word.append("T")
    if not word:
        return True
    blocks = 1
    for i in range(1, len(word)):
        if word[i] != word[i - 1]:
            blocks += 1
    if word[0] == word[-1] and blocks > 1:
        blocks -= 1  # first and last block merge cyclically
    return blocks <= 2


def pairwise_weakly_separated(coll, n: int) -> bool:
    coll = list(coll)
    return all(
        weakly_separated(I, J, n) for I, J in combinations(coll, 2)
    )


def shifted_key(I: KSubset, i: int, n: int) -> tuple[int, ...]:
    """Sort key for the <=_i order: lex order of [n] restarted at i."""
    return tuple(sorted((x - i) % n for x in I))


def necklace_check(seq, n: int) -> tuple[bool, str]:
    """Test whether a length-n sequence of k-subsets is a Grassmann necklace.

    Three equivalent criteria are evaluated:
      (1) I_i \\ {i} is contained in I_{i+1} (indices mod n);
      (2) I_i \\ I_j is contained in the cyclic interval [i, j);
      (3) I_i is <=_i-minimal among all terms, and the terms are pairwise
          weakly separated.
    Returns (verdict, diagnostic).  The criteria agreeing with each other is
    an internal invariant; disagreement raises RuntimeError.
    """
    seq = [tuple(I) for I in seq]
    if len(seq) != n:
        raise ValueError(f"need {n} terms, got {len(seq)}")
    k = len(seq[0])
    if any(len(I) != k for I in seq):
        raise ValueError("terms have unequal sizes")

    fail1 = None
    for i in range(1, n + 1):
        Ii, Inext = seq[i - 1], seq[i % n]
        if not (set(Ii) - {i}) <= set(Inext):
            fail1 = f"I_{i} \\ {{{i}}} not in I_{i % n + 1}"
            break

    fail2 = None
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            arc = set(cyclic_interval(i, j, n)) - {j}
            if not (set(seq[i - 1]) - set(seq[j - 1])) <= arc:
                fail2 = f"I_{i} \\ I_{j} leaves [{i},{j})"
                break
        if fail2:
            break

    fail3 = None
    for i in range(1, n + 1):
        ki = shifted_key(seq[i - 1], i, n)
        if any(shifted_key(J, i, n) < ki for J in seq):
            fail3 = f"I_{i} not <=_{i}-minimal"
            break
    if fail3 is None and not pairwise_weakly_separated(set(seq), n):
        fail3 = "terms not pairwise weakly separated"

    verdicts = (fail1 is None, fail2 is None, fail3 is None)
    if len(set(verdicts)) != 1:
        raise RuntimeError(
            f"necklace criteria disagree on {seq}: {fail1=} {fail2=} {fail3=}"
        )
    if verdicts[0]:
        return True, "ok"
    return False, "; ".join(f for f in (fail1, fail2, fail3) if f)


def necklace_of_positroid(P, n: int) -> tuple[KSubset, ...]:
    """The sequence of <=_i-minima of a nonempty collection of k-subsets."""
    P = [tuple(I) for I in P]
    if not P:
        raise ValueError("empty collection has no necklace")
    return tuple(min(P, key=lambda I: shifted_key(I, i, n)) for i in range(1, n + 1))


def young_of(I: KSubset, n: int) -> tuple[int, ...]:
    """Partition lambda with lambda_t = i_{k+1-t} - (k+1-t), inside k x (n-k).

    >>> young_of((1, 4, 5, 7), 9)
    (3, 2, 2, 0)
    >>> young_of((1, 2), 4)
    (0, 0)
    """
    I = check_ksubset(tuple(I), n)
    k = len(I)
    parts = tuple(I[k - t] - (k + 1 - t) for t in range(1, k + 1))
    assert all(0 <= p <= n - k for p in parts), f"profile of {I} escapes box"
    assert all(parts[t] >= parts[t + 1] for t in range(k - 1))
    return parts


def subset_of_young(parts, n: int) -> KSubset:
    """Inverse of young_of (given the box height k = len(parts))."""
    k = len(parts)
    return tuple(sorted(parts[t - 1] + (k + 1 - t) for t in range(1, k + 1)))


def young_cells(parts) -> set[tuple[int, int]]:
    """Cells (row, col), 1-indexed, of a partition."""
    return {(r, c) for r, lam in enumerate(parts, 1) for c in range(1, lam + 1)}


def max_diag(J: KSubset, I: KSubset, n: int) -> int:
    """Maximal number of cells on one diagonal of lambda_J minus lambda_I.

    The difference is taken as a plain cell-set difference; diagonals are
    indexed by col - row.

    >>> max_diag((2, 4), (1, 3), 4)
    1
    >>> max_diag((1, 3), (2, 4), 4)
    0
    """
    if len(J) != len(I):
        raise ValueError(f"size mismatch: |{J}| != |{I}|")
    cells = young_cells(young_of(J, n)) - young_cells(young_of(I, n))
    if not cells:
        return 0
    counts: dict[int, int] = {}
    for r, c in cells:
        counts[c - r] = counts.get(c - r, 0) + 1
    return max(counts.values())


def lex_max(P) -> KSubset:
    """Lexicographic maximum of a collection of sorted tuples."""
    P = [tuple(I) for I in P]
    if not P:
        raise ValueError("empty collection")
    return max(P)


def rectangle_label(k: int, n: int, i: int, j: int) -> KSubset:
    """The k-subset K_{ij} = [1, k-i] u [k-i+j+1, k+j] for a grid position.

    Row i runs 1..k, column j runs 1..n-k; (i, j) = (0, *) or (*, 0) gives
    the base subset [1, k].

    >>> rectangle_label(2, 4, 1, 1)
    (1, 3)
    >>> rectangle_label(3, 7, 2, 3)
    (1, 5, 6)
    """
    if i == 0 or j == 0:
        return tuple(range(1, k + 1))
    if not (1 <= i <= k and 1 <= j <= n - k):
        raise ValueError(f"grid position ({i},{j}) outside {k}x{n - k}")
    head = tuple(range(1, k - i + 1))
    tail = tuple(range(k - i + j + 1, k + j + 1))
    return head + tail
