"""Sign diagrams recording how classical crystals branch to corank one.

A diagram decorates the columns of an outer shape with at most one ``+`` and
one ``-`` per column (the ``+`` directly below the ``-`` when both occur);
the undecorated cells form the inner shape.  Diagrams over Lambda index the
components of B(Lambda) restricted to the subalgebra without color 1, and
the maps in this module (the column-state involution, column doubling, the
sign bracketing for e_1 on stacked pairs) are the combinatorial engines
behind the affine crystal constructions in ``kr_builders``.

Column states: ``.`` bare, ``+``, ``-``, ``+-`` (plus below minus), ``0``
(type B, height n only).  A height-n type D column must carry a sign and the
whole diagram is tagged with its column color; spin columns carry a single
sign and are tracked separately from the full columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import tableaux
from .cartan import Shape

STATES = (".", "+", "0", "-", "+-")
_RANK = {s: k for k, s in enumerate(STATES)}


@dataclass(frozen=True, order=True)
class SignTriple:
    """Counts of +, -, and -over-+ full columns; gamma flags a 0 column."""

    l1: int
    l2: int
    l3: int
    gamma: int = 0

    def __post_init__(self):
        if min(self.l1, self.l2, self.l3) < 0 or self.gamma not in (0, 1):
            raise ValueError(f"bad sign triple {self}")

    def total(self) -> int:
        return self.l1 + self.l2 + self.l3 + 2 * self.gamma


@dataclass(frozen=True, order=True)
class PmDiagram:
    """Columns are (outer height, state) pairs in canonical display order."""

    ctype: str
    n: int
    cols: tuple[tuple[int, str], ...]
    spin: str = ""  # "", "+", "-"
    color: int = 0  # 1 or 2 once type D height-n or spin columns occur

    def outer(self) -> Shape:
        heights = tuple(h for h, _ in self.cols)
        rows = _conjugate(heights)
        return Shape(rows=rows, spin=1 if self.spin else 0, color=self.color)

    def inner_heights(self) -> tuple[int, ...]:
        return tuple(_inner_height(self.n, h, st) for h, st in self.cols)

    def inner_shape(self) -> Shape:
        if self.color:
            raise ValueError("colored diagrams have no plain inner shape")
        rows = _conjugate(tuple(h for h in self.inner_heights() if h > 0))
        return Shape(rows=rows, spin=1 if self.spin else 0)

    def middle_shape(self) -> Shape:
        if self.color:
            raise ValueError("colored diagrams have no plain middle shape")
        heights = tuple(
            m for h, st in self.cols if (m := _middle_height(self.n, h, st)) > 0
        )
        return Shape(rows=_conjugate(heights), spin=1 if self.spin else 0)

    def signs(self, sign: str) -> tuple[int, ...]:
        """Column indices carrying the given sign; spin column excluded."""
        return tuple(
            k for k, (_, st) in enumerate(self.cols) if sign in _marks(st)
        )

    def width(self) -> int:
        return len(self.cols)

    def to_text(self) -> str:
        if not self.cols and not self.spin:
            return "(empty)"
        top = max((h for h, _ in self.cols), default=0)
        lines = []
        for level in range(top, 0, -1):
            row = []
            for h, st in self.cols:
                row.append(_cell_char(self.n, h, st, level) if h >= level else " ")
            line = "".join(row).rstrip()
            if line:
                lines.append(line)
        text = "\n".join(lines) if lines else "(flat)"
        if self.spin:
            text += f"\ns:{self.spin}"
        if self.color:
            text += f"\ncolor:{self.color}"
        return text


def _marks(state: str) -> str:
    return {".": "", "+": "+", "-": "-", "0": "0", "+-": "+-"}[state]


def _inner_height(n: int, h: int, state: str) -> int:
    if state == ".":
        return h
    if state in ("+", "-"):
        return h - 1
    if state == "0":
        return n - 1
    return h - 2  # "+-"


def _middle_height(n: int, h: int, state: str) -> int:
    if state in (".", "+"):
        return h
    if state == "0":
        return n - 1
    return h - 1  # "-", "+-"


def _cell_char(n: int, h: int, state: str, level: int) -> str:
    inner = _inner_height(n, h, state)
    if level <= inner:
        return "."
    if state == "0":
        return "0"
    if state == "+-":
        return "+" if level == h - 1 else "-"
    return state


def _conjugate(heights: tuple[int, ...]) -> tuple[int, ...]:
    if not heights:
        return ()
    top = max(heights)
    return tuple(sum(1 for h in heights if h >= i) for i in range(1, top + 1))


def _canonical(cols) -> tuple[tuple[int, str], ...]:
    return tuple(sorted(cols, key=lambda c: (-c[0], _RANK[c[1]])))


def make_pm(ctype, n, cols, spin="", color=0) -> PmDiagram:
    diagram = PmDiagram(ctype, n, _canonical(cols), spin, color)
    problem = _invalid_reason(diagram)
    if problem:
        raise ValueError(problem)
    return diagram


def _invalid_reason(P: PmDiagram):
    if P.ctype not in "BCD" or P.n < 1:
        return f"bad type context {P.ctype}_{P.n}"
    if P.spin and P.ctype == "C":
        return "type C has no spin column"
    if P.spin and P.spin not in "+-":
        return "spin column must carry + or -"
    if P.color and P.ctype != "D":
        return "column colors are a type D feature"
    prev = None
    zeros = 0
    for h, st in P.cols:
        if st not in STATES:
            return f"unknown state {st!r}"
        if not 1 <= h <= P.n:
            return f"column height {h} out of range"
        if _inner_height(P.n, h, st) < 0:
            return f"state {st} too tall for height {h}"
        if st == "0":
            if P.ctype != "B" or h != P.n:
                return "0 cells live at height n in type B only"
            zeros += 1
        if h == P.n:
            if st == ".":
                return "bare full-height columns are not allowed"
            if P.ctype == "D" and not P.color:
                return "type D full-height columns need a color"
        here = (h, _inner_height(P.n, h, st), _middle_height(P.n, h, st))
        if prev is not None and any(a > b for a, b in zip(here, prev)):
            return "column profile is not nested"
        prev = here
    if zeros > 1:
        return "at most one 0 column"
    if zeros and P.spin:
        return "0 column and spin column cannot coexist"
    if P.ctype == "D" and P.color:
        plain = {st for h, st in P.cols if h == P.n} | set(P.spin)
        if "+" in plain and "-" in plain:
            return "colored columns cannot mix bare + and bare - signs"
        if P.color not in (1, 2):
            return "color must be 1 or 2"
    if P.spin and P.ctype == "D" and not P.color:
        return "type D spin columns need a color"
    return None


# -- enumeration ----------------------------------------------------------------

def enumerate_pm(ctype: str, n: int, outer: Shape) -> tuple[PmDiagram, ...]:
    """All diagrams with the given outer shape, in canonical sorted order."""
    heights = outer.columns()
    groups = sorted(set(heights), reverse=True)
    choices = []
    for h in groups:
        count = heights.count(h)
        pool = [st for st in STATES if _state_allowed(ctype, n, h, st, outer)]
        choices.append(
            list(itertools.combinations_with_replacement(pool, count))
        )
    spins = ["+", "-"] if outer.spin else [""]
    out = []
    for combo in itertools.product(*choices):
        cols = [
            (h, st)
            for h, states in zip(groups, combo)
            for st in states
        ]
        for sp in spins:
            diagram = PmDiagram(
                ctype, n, _canonical(cols), sp, outer.color
            )
            if _invalid_reason(diagram) is None:
                out.append(diagram)
    return tuple(sorted(out))


def _state_allowed(ctype, n, h, st, outer) -> bool:
    if _inner_height(n, h, st) < 0:
        return False
    if st == "0":
        return ctype == "B" and h == n and not outer.spin
    if h == n and st == ".":
        return False
    return True


# -- the branching walk ----------------------------------------------------------

def f_string(P: PmDiagram) -> tuple[int, ...]:
    """Color word sent down from the top of B(outer(P)) to reach the image."""
    n = P.n
    word = []
    seq = ([("spin", P.spin)] if P.spin else []) + list(P.cols)
    for h, st in reversed(seq):
        if h == "spin" or "+" in st:
            continue
        if st == "0":
            word.extend(range(1, n + 1))
        elif h == n and P.ctype == "D":
            word.extend(_d_top_string(n, P.color))
        else:
            word.extend(range(1, _inner_height(n, h, st) + 1))
    for h, st in seq:
        if "-" not in st:
            continue
        if h == "spin":
            if P.ctype == "D":
                word.extend(_d_top_string(n, P.color))
            else:
                word.extend(range(1, n + 1))
        elif P.ctype == "C":
            word.extend(range(1, n + 1))
            word.extend(range(n - 1, h - 1, -1))
        elif P.ctype == "B":
            word.extend(range(1, n + 1))
            word.append(n)
            word.extend(range(n - 1, h - 1, -1))
        elif h == n:
            word.extend(_d_top_string(n, P.color))
        elif h == n - 1:
            word.extend(range(1, n + 1))
        else:
            word.extend(range(1, n + 1))
            word.extend(range(n - 2, h - 1, -1))
    return tuple(word)


def _d_top_string(n: int, color: int) -> tuple[int, ...]:
    if color == 1:
        return tuple(range(1, n - 1)) + (n,)
    return tuple(range(1, n))


def highest_element(ctype: str, n: int, shape: Shape):
    cols = tuple(tuple(range(1, h + 1)) for h in shape.columns())
    spin = None
    if shape.spin:
        spin = [1] * n
        if shape.color == 2:
            spin[n - 1] = -1
        spin = tuple(spin)
    return (cols, spin)


def phi(P: PmDiagram):
    """The element of B(outer(P)) reached by walking f_string from the top."""
    if P.color:
        raise ValueError("colored contexts walk their strings in-graph")
    elem = highest_element(P.ctype, P.n, P.outer())
    for a in reversed(f_string(P)):
        elem = tableaux.tableau_apply(P.ctype, P.n, elem, a, "f")
        if elem is None:
            raise ValueError(f"walk died for {P}")
    return elem


def phi_direct(P: PmDiagram):
    """Direct column filling; independent cross-check for phi.

    Covers types C and B, and type D diagrams without full-height columns.
    Each + below full height is queued, then a single left-to-right pass
    over the cells (top to bottom within a column) feeds the queue: a
    queued + of height h is absorbed by the first bare bottom cell (its
    column restarts at 1 and skips h+1), unassigned barred cell (which
    becomes bar(h+1)), or untouched - spin column (which flips slot h+1).
    """
    n = P.n
    if P.color:
        raise ValueError("colored contexts are not supported")
    cols = []
    pending = []  # heights of queued + signs, leftmost first
    full_plus = [k for k, col in enumerate(P.cols) if col == (n, "+")]
    absorbed = full_plus[-1] if full_plus and P.spin == "-" else None
    for k, (h, st) in enumerate(P.cols):
        if h == n and st == "+":
            if k != absorbed:
                cols.append(list(range(1, n + 1)))
                continue
            cols.append(list(range(2, n + 1)) + [0])
            pending.append(n)
            continue
        content = list(range(2, _middle_height(n, h, st) + 2))
        if st in ("-", "+-"):
            content.append(-1)
        elif st == "0":
            content.append(0)
        cols.append(content)
        if st == "+-":
            pending.append(h - 1)
        elif st == "+":
            pending.append(h)
    spin = None
    if P.spin == "+":
        spin = (1,) * n
    elif P.spin == "-":
        spin = (-1,) + (1,) * (n - 1)
    positions = [
        (k, r) for k, col in enumerate(cols) for r in range(len(col) - 1, -1, -1)
    ]
    if P.spin == "-":
        positions.insert(0, (-1, 0))
    cursor = 0
    while pending:
        h = pending.pop(0)
        placed = False
        while cursor < len(positions) and not placed:
            k, r = positions[cursor]
            cursor += 1
            if k < 0:
                spin = tuple(-1 if j == h else 1 for j in range(n))
                placed = True
                continue
            col = cols[k]
            if col[r] == -1:
                col[r] = -(h + 1)
                placed = True
            elif r == 0 and col[0] == 2:
                run = 0
                while run < len(col) and col[run] == run + 2:
                    run += 1
                if run >= h:
                    col[:run] = list(range(1, h + 1)) + list(range(h + 2, run + 2))
                    placed = True
        if not placed:
            raise ValueError(f"unconsumed + signs in {P}")
    return (tuple(tuple(c) for c in cols), spin)


def phi_inverse(ctype: str, n: int, elem, shapes: tuple[Shape, ...]) -> PmDiagram:
    """The unique diagram over one of the shapes whose walk lands on elem."""
    table = _phi_table(ctype, n, tuple(shapes))
    try:
        return table[elem]
    except KeyError:
        raise ValueError(
            "element is not a colors-{2..n} highest vector of the given shapes"
        ) from None


@lru_cache(maxsize=None)
def _phi_table(ctype, n, shapes):
    table = {}
    for shape in shapes:
        for P in enumerate_pm(ctype, n, shape):
            table[phi(P)] = P
    return table


# -- the column-state involution --------------------------------------------------

def involution_S(P: PmDiagram, r: int, s: int) -> PmDiagram:
    """Swap +/- counts at inner heights of sign parity, block/bare otherwise.

    Inner heights i < r with i = r-1 mod 2 hold single signs whose counts are
    exchanged; at i = r mod 2 the +- blocks trade places with bare columns,
    counting s - width phantom columns at height zero.  The inner shape is
    preserved; the outer shape may change.
    """
    if P.spin or P.color:
        raise ValueError("the involution acts on unsigned-column contexts")
    plus = {}
    minus = {}
    block = {}
    bare = {}
    for h, st in P.cols:
        i = _inner_height(P.n, h, st)
        if st == "+":
            plus[i] = plus.get(i, 0) + 1
        elif st == "-":
            minus[i] = minus.get(i, 0) + 1
        elif st == "+-":
            block[i] = block.get(i, 0) + 1
        elif i < r:
            bare[i] = bare.get(i, 0) + 1
    bare[0] = bare.get(0, 0) + s - len(P.cols)
    cols = [(h, st) for h, st in P.cols if _inner_height(P.n, h, st) >= r]
    for i in range(r):
        sign_height = i % 2 == (r - 1) % 2
        if sign_height:
            if block.get(i) or bare.get(i):
                raise ValueError(f"blocks at sign height {i} for r={r}")
            cols.extend([(i + 1, "+")] * minus.get(i, 0))
            cols.extend([(i + 1, "-")] * plus.get(i, 0))
        else:
            if plus.get(i) or minus.get(i):
                raise ValueError(f"single signs at block height {i} for r={r}")
            cols.extend([(i + 2, "+-")] * bare.get(i, 0))
            if i:
                cols.extend([(i, ".")] * block.get(i, 0))
            elif block.get(i, 0) > s:
                raise ValueError("more blocks than slots")
    return make_pm(P.ctype, P.n, cols)


# -- doubling ---------------------------------------------------------------------

def double_pm(P: PmDiagram) -> PmDiagram:
    """Column doubling onto the type C context of the same rank."""
    if P.ctype not in "BC" or P.color:
        raise ValueError("doubling is defined for types B and C")
    cols = []
    for h, st in P.cols:
        if st == "0":
            cols.extend([(h, "+"), (h, "-")])
        else:
            cols.extend([(h, st)] * 2)
    if P.spin:
        cols.append((P.n, P.spin))
    return make_pm("C", P.n, cols)


def is_doubled(P: PmDiagram, target: str = "C") -> bool:
    """Whether P is the double of a diagram from the target type context."""
    if P.ctype != "C" or P.spin or P.color:
        return False
    counts = {}
    for col in P.cols:
        counts[col] = counts.get(col, 0) + 1
    if target == "C":
        return all(v % 2 == 0 for v in counts.values())
    if target != "B":
        raise ValueError(f"unknown target context {target!r}")
    top = {st: counts.pop((P.n, st), 0) for st in ("+", "-", "+-")}
    if any(v % 2 for v in counts.values()) or top["+-"] % 2:
        return False
    return True  # top +/- parities decode to a 0 column or a spin sign


def halve_pm(P: PmDiagram, target: str = "C") -> PmDiagram:
    """Inverse of double_pm; the target picks the home context."""
    if not is_doubled(P, target):
        raise ValueError(f"not a doubled diagram for target {target!r}")
    counts = {}
    for col in P.cols:
        counts[col] = counts.get(col, 0) + 1
    if target == "C":
        cols = [col for col, v in counts.items() for _ in range(v // 2)]
        return make_pm("C", P.n, cols)
    n = P.n
    a = counts.pop((n, "+"), 0)
    b = counts.pop((n, "-"), 0)
    cols = [col for col, v in counts.items() for _ in range(v // 2)]
    spin = ""
    if a % 2 and b % 2:
        a, b = a - 1, b - 1
        cols.append((n, "0"))
    elif a % 2:
        a, spin = a - 1, "+"
    elif b % 2:
        b, spin = b - 1, "-"
    cols.extend([(n, "+")] * (a // 2))
    cols.extend([(n, "-")] * (b // 2))
    return make_pm("B", n, cols, spin=spin)


# -- e_1 on stacked pairs ----------------------------------------------------------

def e1_on_pair(P: PmDiagram, p: PmDiagram):
    """Raise color 1 on the pair (P over p); None when it annihilates.

    Signs are bracketed by column position, both diagrams left-aligned:
    every + of p takes the leftmost free + of P weakly left of it, every -
    of p the rightmost free - of P weakly left of it, and leftover + of p
    pair with leftover - of p.  An unpaired + of p moves up into P; failing
    that the leftmost unpaired - of P moves down into p.
    """
    if P.inner_heights() != tuple(h for h, _ in p.cols) + (0,) * (
        len(P.cols) - len(p.cols)
    ):
        raise ValueError("inner shape of P must be the outer shape of p")
    p_plus = list(p.signs("+"))
    p_minus = list(p.signs("-"))
    big_plus = list(P.signs("+"))
    big_minus = list(P.signs("-"))
    free_big_plus = set(big_plus)
    for x in p_plus[:]:
        for y in big_plus:
            if y in free_big_plus and y <= x:
                free_big_plus.discard(y)
                p_plus.remove(x)
                break
    free_big_minus = set(big_minus)
    for x in p_minus[:]:
        for y in reversed(big_minus):
            if y in free_big_minus and y <= x:
                free_big_minus.discard(y)
                p_minus.remove(x)
                break
    for x in p_plus[:]:
        if p_minus:
            p_minus.pop(0)
            p_plus.remove(x)
    if p_plus:
        return _transfer_plus(P, p, p_plus[-1])
    if free_big_minus:
        return _transfer_minus(P, p, min(free_big_minus))
    return None


def _receive_plus(cols, n, level):
    """Attach a + at the given level to the column that keeps nesting."""
    for want in (".", "-"):
        for k, (h, st) in enumerate(cols):
            if st == want and _inner_height(n, h, st) == level:
                out = list(cols)
                out[k] = (h, "+" if want == "." else "+-")
                return out
    raise ValueError(f"no column accepts a + at level {level}")


def _transfer_plus(P: PmDiagram, p: PmDiagram, j: int):
    h, st = p.cols[j]
    new_p = list(p.cols)
    if st == "+":
        if h == 1:
            del new_p[j]
        else:
            new_p[j] = (h - 1, ".")
    elif st == "+-":
        new_p[j] = (h - 1, "-")
    else:
        raise ValueError("the moving column carries no +")
    return (
        make_pm(P.ctype, P.n, _receive_plus(P.cols, P.n, h), P.spin, P.color),
        make_pm(p.ctype, p.n, new_p, p.spin, p.color),
    )


def _transfer_minus(P: PmDiagram, p: PmDiagram, j: int):
    H, ST = P.cols[j]
    level = _inner_height(P.n, H, ST)
    new_P = list(P.cols)
    new_P[j] = (H, "." if ST == "-" else "+")
    new_p = list(p.cols)
    for want in (".", "+"):
        for k, (h, st) in enumerate(new_p):
            if st == want and h == level:
                new_p[k] = (level + 1, "-" if want == "." else "+-")
                break
        else:
            continue
        break
    else:
        if level != 0:
            raise ValueError(f"no column accepts a - above level {level}")
        new_p.append((1, "-"))
    return (
        make_pm(P.ctype, P.n, new_P, P.spin, P.color),
        make_pm(p.ctype, p.n, new_p, p.spin, p.color),
    )
