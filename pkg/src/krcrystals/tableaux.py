"""Letters, columns, and semistandard tableaux for types A, B, C, D.

Letters are ints: i unbarred, -i barred, 0 the middle letter of type B.
A column is a tuple of letters from bottom (smallest) to top.  A tableau is a
tuple of columns left to right; bottom-aligned, so row k of a column is index
k-1.  Type B shapes may carry one extra half-width spin column on the left,
stored as a tuple of signs +1/-1 (sign of letter i in the spin column).
"""

from __future__ import annotations

import itertools


def all_letters(ctype: str, n: int) -> tuple[int, ...]:
    if ctype == "A":
        return tuple(range(1, n + 1))
    mid = (0,) if ctype == "B" else ()
    return tuple(range(1, n + 1)) + mid + tuple(range(-n, 0))


def order_key(ctype: str, n: int, x: int) -> int:
    """Position in the letter order; n and -n share a key in type D."""
    if ctype == "B":
        if x == 0:
            return 2 * n + 1
        return 2 * x if x > 0 else 4 * n + 2 + 2 * x
    if ctype == "D":
        return x if x > 0 else 2 * n + x
    return x if x > 0 else 2 * n + 1 + x


def precedes(ctype: str, n: int, x: int, y: int) -> bool:
    """Strict order; false for the incomparable pair {n, -n} in type D."""
    if ctype == "D" and {x, y} == {n, -n}:
        return False
    return order_key(ctype, n, x) < order_key(ctype, n, y)


def preceq(ctype: str, n: int, x: int, y: int) -> bool:
    return x == y or precedes(ctype, n, x, y)


def letter_weight(x: int, n: int) -> tuple[int, ...]:
    w = [0] * n
    if x > 0:
        w[x - 1] = 2
    elif x < 0:
        w[-x - 1] = -2
    return tuple(w)


# -- single-letter crystal operators ----------------------------------------

def letter_f(ctype: str, n: int, i: int, x: int):
    """f_i on the letter crystal; None if undefined."""
    if ctype == "A":
        return x + 1 if x == i else None
    if i < n - 1 or (i < n and ctype != "D"):
        if x == i:
            return i + 1
        if x == -(i + 1):
            return -i
        return None
    if ctype == "B":
        if x == n:
            return 0
        if x == 0:
            return -n
        return None
    if ctype == "C":
        return -n if x == n else None
    if i == n - 1:  # D
        if x == n - 1:
            return n
        if x == -n:
            return -(n - 1)
        return None
    if x == n - 1:  # D, i == n
        return -n
    if x == n:
        return -(n - 1)
    return None


def letter_e(ctype: str, n: int, i: int, x: int):
    for y in all_letters(ctype, n):
        if letter_f(ctype, n, i, y) == x:
            return y
    return None


def letter_phi(ctype: str, n: int, i: int, x: int) -> int:
    k = 0
    while x is not None:
        x = letter_f(ctype, n, i, x)
        k += x is not None
    return k


def letter_eps(ctype: str, n: int, i: int, x: int) -> int:
    k = 0
    while x is not None:
        x = letter_e(ctype, n, i, x)
        k += x is not None
    return k


# -- spin factors (types B and D), stored as sign tuples ---------------------

def spin_elements(ctype: str, n: int, color: int = 1):
    """All spin vectors; in type D color 1 has an even number of -1 signs."""
    for signs in itertools.product((1, -1), repeat=n):
        if ctype == "D" and signs.count(-1) % 2 != (0 if color == 1 else 1):
            continue
        yield signs


def spin_f(ctype: str, n: int, i: int, sv):
    if i < n:
        if sv[i - 1] == 1 and sv[i] == -1:
            return sv[: i - 1] + (-1, 1) + sv[i + 1 :]
        return None
    if ctype == "B":
        if sv[n - 1] == 1:
            return sv[: n - 1] + (-1,)
        return None
    if sv[n - 2] == 1 and sv[n - 1] == 1:
        return sv[: n - 2] + (-1, -1)
    return None


def spin_e(ctype: str, n: int, i: int, sv):
    if i < n:
        if sv[i - 1] == -1 and sv[i] == 1:
            return sv[: i - 1] + (1, -1) + sv[i + 1 :]
        return None
    if ctype == "B":
        if sv[n - 1] == -1:
            return sv[: n - 1] + (1,)
        return None
    if sv[n - 2] == -1 and sv[n - 1] == -1:
        return sv[: n - 2] + (1, 1)
    return None


def spin_phi(ctype: str, n: int, i: int, sv) -> int:
    return 1 if spin_f(ctype, n, i, sv) is not None else 0


def spin_eps(ctype: str, n: int, i: int, sv) -> int:
    return 1 if spin_e(ctype, n, i, sv) is not None else 0


def spin_to_column(sv) -> tuple[int, ...]:
    """Letter column of a spin vector: i if sign +, bar i if sign -."""
    n = len(sv)
    col = [i for i in range(1, n + 1) if sv[i - 1] == 1]
    col += [-i for i in range(n, 0, -1) if sv[i - 1] == -1]
    return tuple(col)


# -- columns ------------------------------------------------------------------

def column_ok(ctype: str, n: int, col: tuple[int, ...]) -> bool:
    """One-column semistandardity, including the (p, bar p) height bound."""
    big_n = len(col)
    for a, b in zip(col, col[1:]):
        if ctype == "D":
            if preceq(ctype, n, b, a):
                return False
        elif ctype == "B" and a == b == 0:
            continue
        elif not precedes(ctype, n, a, b):
            return False
    for p in range(1, n + 1):
        ks = [k + 1 for k, x in enumerate(col) if x == p]
        ls = [l + 1 for l, x in enumerate(col) if x == -p]
        for k in ks:
            for l in ls:
                if k + (big_n - l + 1) > p:
                    return False
    return True


def _ab_config_violation(ctype, n, u, v):
    """True when some configuration bound fails for adjacent columns u, v."""
    big_n = len(v)

    def pos(col, letter):
        return [k + 1 for k, x in enumerate(col) if x == letter]

    # (a,b)-configurations; b = n has special clauses except in type C
    b_top = n + 1 if ctype == "C" else n
    for a in range(1, b_top):
        sa = pos(u, a)
        ta = pos(v, -a)
        if not sa or not ta:
            continue
        p, s = sa[0], ta[0]
        for b in range(a, b_top):
            for qs, rs in ((pos(u, b), pos(u, -b)), ((pos(v, b)), pos(v, -b))):
                for q in qs:
                    for r in rs:
                        if p <= q < r <= s <= big_n:
                            if (q - p) + (s - r) >= b - a:
                                return True
        # (a,n)-configurations: adjacent middle letters in one column (B, D)
        if ctype != "C" and a < n:
            middles = {n, -n, 0} if ctype == "B" else {n, -n}
            for col in (u, v):
                for q in range(1, len(col)):
                    if col[q - 1] in middles and col[q] in middles:
                        r = q + 1
                        if p <= q < r <= s <= big_n:
                            if (q - p) + (s - r) >= n - a:
                                return True
        if ctype == "D":
            # a-odd / a-even configurations (mixed-column middle pairs)
            for q in pos(v, n) + pos(v, -n):
                for r in pos(u, n) + pos(u, -n):
                    if not p <= q < r <= s <= big_n:
                        continue
                    same = (v[q - 1] == u[r - 1])
                    odd = (r - q + 1) % 2 == 1
                    if same != odd and s - p >= n - a:
                        return True
    # (n,n)-configuration: middle letter in u strictly below one in v
    if ctype in ("B", "D"):
        left = {n, 0} if ctype == "B" else {n, -n}
        right = {0, -n} if ctype == "B" else {n, -n}
        for p in range(1, big_n):
            if u[p - 1] in left and any(
                v[q - 1] in right for q in range(p + 1, big_n + 1)
            ):
                return True
    return False


def adjacent_ok(ctype: str, n: int, u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    """Adjacency for columns u (left, taller) and v (right), bottom-aligned."""
    if len(u) < len(v):
        return False
    for k in range(len(v)):
        if not preceq(ctype, n, u[k], v[k]):
            return False
        if ctype == "B" and u[k] == 0 and v[k] == 0:
            return False
    if ctype == "A":
        return True
    return not _ab_config_violation(ctype, n, u, v)


# -- tableaux -----------------------------------------------------------------

def tableau_ok(ctype: str, n: int, cols, spin=None) -> bool:
    for col in cols:
        if not column_ok(ctype, n, col):
            return False
    seq = list(cols)
    if spin is not None:
        seq = [spin_to_column(spin)] + seq
    for u, v in zip(seq, seq[1:]):
        if not adjacent_ok(ctype, n, u, v):
            return False
    return True


def reading_word(cols):
    """Letters rightmost column first, bottom to top inside a column."""
    for col in reversed(cols):
        yield from col


def cell_order(cols):
    """(column, row) addresses in reading order."""
    out = []
    for c in range(len(cols) - 1, -1, -1):
        for r in range(len(cols[c])):
            out.append((c, r))
    return out


def tableau_weight(ctype: str, n: int, cols, spin=None) -> tuple[int, ...]:
    w = [0] * n
    for x in reading_word(cols):
        for k, v in enumerate(letter_weight(x, n)):
            w[k] += v
    if spin is not None:
        w = [a + b for a, b in zip(w, spin)]
    return tuple(w)


def tableau_apply(ctype: str, n: int, elem, i: int, op: str):
    """Apply e_i/f_i ('e'/'f') via the signature rule; None if it vanishes."""
    cols, spin = elem
    word = list(reading_word(cols))
    pairs = [
        (letter_eps(ctype, n, i, x), letter_phi(ctype, n, i, x)) for x in word
    ]
    if spin is not None:
        pairs.append((spin_eps(ctype, n, i, spin), spin_phi(ctype, n, i, spin)))
    j = signature_index(pairs, op)
    if j is None:
        return None
    if spin is not None and j == len(word):
        act = spin_e if op == "e" else spin_f
        return (cols, act(ctype, n, i, spin))
    c, r = cell_order(cols)[j]
    act = letter_e if op == "e" else letter_f
    new_col = cols[c][:r] + (act(ctype, n, i, cols[c][r]),) + cols[c][r + 1 :]
    return (cols[:c] + (new_col,) + cols[c + 1 :], spin)


def tableau_eps_phi(ctype: str, n: int, elem, i: int) -> tuple[int, int]:
    cols, spin = elem
    pairs = [
        (letter_eps(ctype, n, i, x), letter_phi(ctype, n, i, x))
        for x in reading_word(cols)
    ]
    if spin is not None:
        pairs.append((spin_eps(ctype, n, i, spin), spin_phi(ctype, n, i, spin)))
    return reduce_signature(pairs)


# -- the signature rule -------------------------------------------------------

def reduce_signature(pairs) -> tuple[int, int]:
    """(eps, phi) of b_1 x ... x b_m from per-factor (eps, phi)."""
    minus = plus = 0
    for e, p in pairs:
        cancel = min(plus, e)
        plus -= cancel
        e -= cancel
        minus += e
        plus += p
    return minus, plus


def signature_index(pairs, op: str):
    """Factor index acted on by e_i (rightmost -) or f_i (leftmost +)."""
    stack = []  # unmatched (symbol, factor index), '-' only below '+'
    for k, (e, p) in enumerate(pairs):
        for _ in range(e):
            if stack and stack[-1][0] == "+":
                stack.pop()
            else:
                stack.append(("-", k))
        stack.extend(("+", k) for _ in range(p))
    if op == "e":
        for sym, k in reversed(stack):
            if sym == "-":
                return k
        return None
    for sym, k in stack:
        if sym == "+":
            return k
    return None


# -- enumeration (independent oracle for classical crystals) ------------------

def enumerate_columns(ctype: str, n: int, height: int):
    letters = all_letters(ctype, n)
    if ctype == "B":
        # repeated 0s allowed, so build by weakly increasing key chains
        pool = sorted(letters, key=lambda x: order_key(ctype, n, x))
        for col in itertools.combinations_with_replacement(pool, height):
            if column_ok(ctype, n, col):
                yield col
    else:
        for col in itertools.permutations(letters, height):
            if column_ok(ctype, n, col):
                yield col


def enumerate_tableaux(ctype: str, n: int, shape):
    """All valid fillings of a Shape (spin flag = type B spin column)."""
    heights = list(shape.columns())
    if ctype == "D" and shape.color and heights and heights[0] == n:
        raise ValueError(
            "type D full-height columns split by color; model them as "
            "tensors of half-columns instead"
        )
    spins = (
        list(spin_elements(ctype, n, shape.color or 1))
        if shape.spin
        else [None]
    )
    col_pool = {h: list(enumerate_columns(ctype, n, h)) for h in set(heights)}

    def extend(prefix, k):
        if k == len(heights):
            yield tuple(prefix)
            return
        for col in col_pool[heights[k]]:
            if prefix and not adjacent_ok(ctype, n, prefix[-1], col):
                continue
            if not prefix and spin_col is not None:
                if not adjacent_ok(ctype, n, spin_col, col):
                    continue
            prefix.append(col)
            yield from extend(prefix, k + 1)
            prefix.pop()

    for sp in spins:
        spin_col = spin_to_column(sp) if sp is not None else None
        for cols in extend([], 0):
            yield (cols, sp)


# -- parsing / formatting -----------------------------------------------------

def format_element(elem) -> str:
    cols, spin = elem
    parts = []
    if spin is not None:
        parts.append("s:" + "".join("+" if x == 1 else "-" for x in spin))
    parts.extend(",".join(str(x) for x in col) for col in cols)
    return "|".join(parts)


def parse_element(text: str):
    cols = []
    spin = None
    for part in text.split("|"):
        part = part.strip()
        if not part:
            continue
        if part.startswith("s:"):
            spin = tuple(1 if ch == "+" else -1 for ch in part[2:])
        else:
            cols.append(tuple(int(x) for x in part.split(",")))
    return (tuple(cols), spin)


def format_spin_tensor(vecs) -> str:
    return "*".join("".join("+" if x == 1 else "-" for x in sv) for sv in vecs)


def parse_spin_tensor(text: str):
    return tuple(
        tuple(1 if ch == "+" else -1 for ch in part) for part in text.split("*")
    )
