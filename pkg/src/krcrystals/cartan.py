"""Root-system data for the nonexceptional affine families.

Weights live in the epsilon basis of the classical subalgebra and are stored
as tuples of *doubled* integers so that spin weights stay exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

FAMILIES = ("A1", "B1", "C1", "D1", "A2even", "A2odd", "D2")

# Classical subalgebra acting through colors 1..n.
CLASSICAL_TYPE = {
    "A1": "A",
    "B1": "B",
    "C1": "C",
    "D1": "D",
    "A2even": "C",
    "A2odd": "C",
    "D2": "B",
}

Weight = tuple[int, ...]


@dataclass(frozen=True)
class AffineSpec:
    """One Kirillov-Reshetikhin crystal instance B^{r,s}."""

    family: str
    n: int
    r: int
    s: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 2:
            raise ValueError("rank n must be at least 2")
        if self.family == "D1" and self.n < 4:
            raise ValueError("the D1 family needs rank at least 4")
        r_max = self.n - 1 if self.family == "A1" else self.n
        if not 1 <= self.r <= r_max:
            raise ValueError(f"r={self.r} out of range 1..{r_max} for {self.family}")
        if self.s < 1:
            raise ValueError("s must be positive")

    @property
    def classical_type(self) -> str:
        return CLASSICAL_TYPE[self.family]

    @property
    def classical_colors(self) -> tuple[int, ...]:
        """Colors of the classical subalgebra (1..n, or 1..n-1 in type A)."""
        top = self.n - 1 if self.family == "A1" else self.n
        return tuple(range(1, top + 1))


@dataclass(frozen=True)
class Shape:
    """Classical highest weight, drawn as a column shape.

    ``rows`` is a partition (row lengths, weakly decreasing).  ``spin=1`` adds
    one half-width column of full height n.  ``color`` distinguishes the two
    full-height column species in type D (1 or 2); it is 0 elsewhere.
    """

    rows: tuple[int, ...] = ()
    spin: int = 0
    color: int = 0

    def __post_init__(self):
        if any(a < b for a, b in zip(self.rows, self.rows[1:])) or any(
            a <= 0 for a in self.rows
        ):
            raise ValueError(f"rows {self.rows} not a partition")
        if self.spin not in (0, 1) or self.color not in (0, 1, 2):
            raise ValueError("bad spin/color flag")

    def columns(self) -> tuple[int, ...]:
        """Column heights, tallest first, spin column excluded."""
        if not self.rows:
            return ()
        return tuple(
            sum(1 for row in self.rows if row > i) for i in range(self.rows[0])
        )

    def size(self) -> int:
        return sum(self.rows)

    def weight(self, ctype: str, n: int) -> Weight:
        """Doubled epsilon-basis weight of the highest vector."""
        w = [2 * row for row in self.rows] + [0] * (n - len(self.rows))
        if self.color == 2:
            w[n - 1] = -w[n - 1]
        if self.spin:
            half = [1] * n
            if self.color == 2:
                half[n - 1] = -1
            w = [a + b for a, b in zip(w, half)]
        return tuple(w)

    def __str__(self):
        body = ",".join(str(row) for row in self.rows)
        tags = ("" if not self.spin else "+s") + ("" if not self.color else f"@{self.color}")
        return f"({body}){tags}"


def simple_root(ctype: str, n: int, i: int) -> Weight:
    """Doubled classical simple root alpha_i, 1 <= i <= rank."""
    w = [0] * n
    if ctype == "A":
        w[i - 1], w[i] = 2, -2
    elif i < n:
        w[i - 1], w[i] = 2, -2
    elif ctype == "B":
        w[n - 1] = 2
    elif ctype == "C":
        w[n - 1] = 4
    else:
        w[n - 2] = w[n - 1] = 2
    return tuple(w)


def pairing(ctype: str, n: int, wt: Weight, i: int) -> int:
    """<wt, alpha_i^vee> for a doubled weight wt."""
    if ctype == "A" or i < n:
        return (wt[i - 1] - wt[i]) // 2
    if ctype == "B":
        return wt[n - 1]
    if ctype == "C":
        return wt[n - 1] // 2
    return (wt[n - 2] + wt[n - 1]) // 2


def zero_root_projection(family: str, n: int) -> Weight:
    """Classical projection of alpha_0: wt(f_0 b) = wt(b) - this, doubled."""
    w = [0] * n
    if family == "A1":
        w[0], w[n - 1] = -2, 2
    elif family in ("B1", "D1", "A2odd"):
        w[0], w[1] = -2, -2
    elif family == "C1":
        w[0] = -4
    else:  # A2even, D2
        w[0] = -2
    return tuple(w)


def weyl_dimension(ctype: str, n: int, wt: Weight) -> int:
    """Dimension of the classical irreducible with doubled highest weight wt."""
    lam = [Fraction(w, 2) for w in wt]
    if ctype == "B":
        rho = [Fraction(2 * (n - i) + 1, 2) for i in range(1, n + 1)]
    elif ctype == "C":
        rho = [Fraction(n - i) for i in range(n)]
    else:  # A uses staircase, D uses n-1..0
        rho = [Fraction(n - 1 - i) for i in range(n)]
    a = [x + y for x, y in zip(lam, rho)]
    num = den = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= a[i] - a[j]
            den *= rho[i] - rho[j]
            if ctype != "A":
                num *= a[i] + a[j]
                den *= rho[i] + rho[j]
        if ctype in ("B", "C"):
            num *= a[i]
            den *= rho[i]
    dim = num / den
    if dim.denominator != 1 or dim <= 0:
        raise ValueError(f"weight {wt} is not dominant for {ctype}_{n}")
    return int(dim)


def shape_dimension(ctype: str, n: int, shape: Shape) -> int:
    return weyl_dimension(ctype, n, shape.weight(ctype, n))


def _conjugate(cols: tuple[int, ...]) -> tuple[int, ...]:
    """Row lengths of the shape with the given column heights."""
    heights = sorted((h for h in cols if h > 0), reverse=True)
    if not heights:
        return ()
    return tuple(sum(1 for h in heights if h > i) for i in range(heights[0]))


def _column_multisets(heights: list[int], budget: int):
    """All ways to pick columns from `heights` with at most `budget` columns."""
    if not heights:
        yield ()
        return
    h = heights[0]
    for count in range(budget + 1):
        for rest in _column_multisets(heights[1:], budget - count):
            yield (h,) * count + rest


def kr_decomposition(spec: AffineSpec) -> tuple[Shape, ...]:
    """Classical decomposition of B^{r,s}, one Shape per irreducible summand."""
    fam, n, r, s = spec.family, spec.n, spec.r, spec.s
    if fam == "A1":
        return (Shape((s,) * r),)

    if fam == "D1" and r >= n - 1:
        k, sp = divmod(s, 2)
        color = 1 if r == n else 2
        return (Shape((k,) * n if k else (), spin=sp, color=color),)

    if fam == "B1" and r == n:
        # weights 2(k_iota + ... + k_{n-2}) + k_n = s; height-0 entries carry
        # the k_0 slack when n is even
        iota = n % 2
        low_heights = list(range(iota, n - 1, 2))
        shapes = []
        for low in _column_multisets(low_heights, s // 2):
            k_n = s - 2 * len(low)
            full, sp = divmod(k_n, 2)
            shapes.append(Shape(_conjugate(low + (n,) * full), spin=sp))
        return tuple(sorted(shapes, key=lambda sh: (sh.size(), sh.rows, sh.spin)))

    if fam == "D2" and r == n:
        k, sp = divmod(s, 2)
        return (Shape((k,) * n if k else (), spin=sp),)

    if fam == "C1" and r == n:
        return (Shape((s,) * n),)

    if fam in ("B1", "D1", "A2odd"):
        # vertical-domino removals: every column keeps height = r mod 2, so
        # columns may vanish only when r is even
        heights = list(range(r, 0, -2))
        shapes = [
            Shape(_conjugate(cols))
            for cols in _column_multisets(heights, s)
            if r % 2 == 0 or len(cols) == s
        ]
        return tuple(sorted(shapes, key=lambda sh: (sh.size(), sh.rows)))

    if fam == "C1":
        # horizontal strips: rows congruent to s mod 2
        row_vals = [v for v in range(s % 2, s + 1, 2)]
        shapes = []
        for rows in itertools.combinations_with_replacement(sorted(row_vals, reverse=True), r):
            trimmed = tuple(v for v in rows if v > 0)
            shapes.append(Shape(trimmed))
        uniq = sorted(set(shapes), key=lambda sh: (sh.size(), sh.rows))
        return tuple(uniq)

    # A2even any r, D2 r < n: every shape inside the r x s box
    shapes = []
    for rows in itertools.product(range(s + 1), repeat=r):
        if all(a >= b for a, b in zip(rows, rows[1:])):
            shapes.append(Shape(tuple(v for v in rows if v > 0)))
    return tuple(sorted(set(shapes), key=lambda sh: (sh.size(), sh.rows)))


def kr_dimension(spec: AffineSpec) -> int:
    """Total vertex count of B^{r,s} from the classical decomposition.

    Weight vectors always have n coordinates; in type A the staircase formula
    over n letters gives the gl_n dimension, which matches the crystal.
    """
    ctype = spec.classical_type
    return sum(shape_dimension(ctype, spec.n, sh) for sh in kr_decomposition(spec))
