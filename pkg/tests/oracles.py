"""Independent brute-force oracles used to freeze expected values.

Everything here works on plain tuples of signed integers and deliberately
avoids the library's own algorithms: reduction is by repeated full scans,
lattice indices come from integer row echelon, determinants from Bareiss
elimination, and subgroup membership from Nielsen-reduced enumeration.
"""

from __future__ import annotations

from math import prod


# -- word arithmetic ---------------------------------------------------------


def naive_reduce(seq) -> tuple[int, ...]:
    """Free reduction by repeated full scans (quadratic, obviously correct)."""
    out = list(seq)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i] == -out[i + 1]:
                del out[i : i + 2]
                changed = True
                break
    return tuple(out)


def t_mul(a, b) -> tuple[int, ...]:
    return naive_reduce(tuple(a) + tuple(b))


def t_inv(a) -> tuple[int, ...]:
    return tuple(-x for x in reversed(a))


def t_pow(a, n: int) -> tuple[int, ...]:
    if n < 0:
        return t_inv(t_pow(a, -n))
    out: tuple[int, ...] = ()
    for _ in range(n):
        out = t_mul(out, a)
    return out


# -- Nielsen reduction and subgroup enumeration ------------------------------


def _wkey(u) -> tuple[int, ...]:
    return tuple(2 * abs(s) + (0 if s > 0 else 1) for s in u)


def _canon_state(words) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((w for w in words if w), key=lambda u: (len(u), _wkey(u))))


def _total(state) -> int:
    return sum(len(u) for u in state)


def _neighbors(state):
    """States one elementary Nielsen move away (inversion, one-sided products)."""
    for i, u in enumerate(state):
        rest = state[:i] + state[i + 1 :]
        yield _canon_state(rest + (t_inv(u),))
        for j, v in enumerate(state):
            if j == i:
                continue
            for other in (v, t_inv(v)):
                yield _canon_state(rest + (t_mul(u, other),))
                yield _canon_state(rest + (t_mul(other, u),))


def is_nielsen_reduced(state) -> bool:
    """Check the N0, N1, N2 conditions on the set and its inverses."""
    closed = []
    for u in state:
        closed.extend((u, t_inv(u)))
    if any(not u for u in closed):
        return False
    for u in closed:
        for v in closed:
            uv = t_mul(u, v)
            if uv == ():
                continue
            if len(uv) < max(len(u), len(v)):
                return False
            for w in closed:
                if t_mul(v, w) == ():
                    continue
                if len(t_mul(uv, w)) <= len(u) - len(v) + len(w):
                    return False
    return True


def nielsen_reduce(gens) -> list[tuple[int, ...]]:
    """Carry a generating set to a Nielsen-reduced basis of the same subgroup.

    Strictly length-decreasing elementary moves are applied greedily; when
    none applies and the set is still not Nielsen reduced, the plateau of
    length-preserving moves is searched breadth-first for either a shorter
    state (resuming the descent) or a Nielsen-reduced one.  Raises if the
    search exhausts without success, which the classical theory rules out.
    """
    state = _canon_state([naive_reduce(g) for g in gens])
    while True:
        # greedy strict descent on total length
        improved = True
        while improved:
            improved = False
            total = _total(state)
            for nb in _neighbors(state):
                if _total(nb) < total:
                    state = nb
                    improved = True
                    break
        if is_nielsen_reduced(state):
            return list(state)
        outcome = _plateau_search(state)
        if outcome is None:
            raise AssertionError(f"could not Nielsen-reduce {state!r}")
        kind, state = outcome
        if kind == "reduced":
            return list(state)
        # kind == "shorter": resume the descent loop


def _plateau_search(state):
    from collections import deque

    total = _total(state)
    seen = {state}
    queue = deque([state])
    while queue:
        cur = queue.popleft()
        for nb in _neighbors(cur):
            t = _total(nb)
            if t < total:
                return ("shorter", nb)
            if t > total or nb in seen:
                continue
            if is_nielsen_reduced(nb):
                return ("reduced", nb)
            seen.add(nb)
            queue.append(nb)
    return None


def subgroup_elements_up_to(gens, max_len: int) -> set[tuple[int, ...]]:
    """All subgroup elements of reduced length <= max_len.

    Complete because a reduced product of k syllables over a Nielsen
    reduced basis has length >= k, so products of at most max_len
    syllables already realize every element this short.
    """
    basis = nielsen_reduce(gens)
    if not is_nielsen_reduced(tuple(basis)):  # pragma: no cover - safety net
        raise AssertionError("enumeration requires a Nielsen-reduced basis")
    found = {()}
    if not basis:
        return found

    def extend(word, last, depth):
        if depth == max_len:
            return
        for idx, u in enumerate(basis):
            for sign in (1, -1):
                if last == (idx, -sign):
                    continue
                nxt = t_mul(word, u if sign > 0 else t_inv(u))
                if len(nxt) <= max_len:
                    found.add(nxt)
                extend(nxt, (idx, sign), depth + 1)

    extend((), None, 0)
    return found


# -- exact integer linear algebra --------------------------------------------


def matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik:
                for j in range(cols):
                    out[i][j] += aik * b[k][j]
    return out


def det_int(matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def lattice_index(rows, ambient: int):
    """Index of the row lattice in Z^ambient via integer row echelon.

    Returns None when the lattice has rank below ambient.
    """
    mat = [list(r) for r in rows if any(r)]
    for r in mat:
        if len(r) != ambient:
            raise ValueError("row width mismatch")
    rank = 0
    pivots = []
    for col in range(ambient):
        while True:
            candidates = [i for i in range(rank, len(mat)) if mat[i][col]]
            if not candidates:
                break
            i0 = min(candidates, key=lambda i: abs(mat[i][col]))
            mat[rank], mat[i0] = mat[i0], mat[rank]
            p = mat[rank][col]
            leftover = False
            for i in range(rank + 1, len(mat)):
                q = mat[i][col] // p
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[rank])]
                if mat[i][col]:
                    leftover = True
            if not leftover:
                pivots.append(abs(p))
                rank += 1
                break
    if rank < ambient:
        return None
    return prod(pivots)
