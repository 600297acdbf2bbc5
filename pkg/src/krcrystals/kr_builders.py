"""Builders assembling each affine crystal B^{r,s} as an explicit graph.

Classical arrows always come from the signature rule on tableaux (or spin
tensors).  The 0-arrows are produced by a route that depends on the family:
promotion in type A, conjugation by the tail involution sigma for the three
families whose 0-node hangs off node 1, fixed points of that involution for
type C, sign-triple case rules at the exceptional C/D node, and a mirrored
spin pair at the two tail nodes of type D.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from types import SimpleNamespace

from . import pm_diagrams as pm
from . import tableaux
from .cartan import AffineSpec, Shape, kr_decomposition, kr_dimension
from .crystal_core import CrystalGraph, generate_closure
from .pm_diagrams import SignTriple


@dataclass
class AmbientLink:
    """Embedding of a build into a host crystal (one multiplier per color)."""

    build: "KRBuild"
    m: tuple[int, ...]
    vertex_map: dict


@dataclass(eq=False)
class KRBuild:
    """A finished crystal B^{r,s} plus the scaffolding that built it."""

    spec: AffineSpec
    graph: CrystalGraph
    kind: str  # promotion | dba | virtual | stepped | triples | spin
    render: object
    ambient: AmbientLink | None = None
    sigma_table: dict | None = None
    partner: "KRBuild | None" = None
    _model: dict | None = field(default=None, repr=False)


# -- classical layer ----------------------------------------------------------

def classical_crystal(ctype, n, shapes, colors):
    """Disjoint union of the tableau crystals B(shape), closed under colors."""
    seeds = [pm.highest_element(ctype, n, sh) for sh in shapes]

    def apply_fn(elem, i, op):
        return tableaux.tableau_apply(ctype, n, elem, i, op)

    def weight_fn(elem):
        return tableaux.tableau_weight(ctype, n, elem[0], elem[1])

    return generate_closure(seeds, colors, apply_fn, weight_fn)


def _transport(src, dst, anchors, colors):
    """Extend a map defined on component tops along matching arrows."""
    out = dict(anchors)
    stack = list(anchors.items())
    while stack:
        x, y = stack.pop()
        for i in colors:
            a = src.f[i].get(x)
            if a is None or a in out:
                continue
            b = dst.f[i].get(y)
            if b is None:
                raise RuntimeError(f"transport died on an f_{i} arrow")
            out[a] = b
            stack.append((a, b))
    if len(out) != len(src.elements):
        raise RuntimeError("transport did not reach every vertex")
    return out


def classical_model(build):
    """Vertex -> classical tableau through the classical isomorphism."""
    if build._model is not None:
        return build._model
    if build.kind in ("promotion", "dba", "triples"):
        model = dict(enumerate(build.graph.elements))
    elif build.kind == "spin":
        raise ValueError("spin builds have no single-tableau classical model")
    else:
        ctype, n = build.spec.classical_type, build.spec.n
        colors = build.spec.classical_colors
        g = build.graph
        if build.kind == "virtual":
            shapes = _c_virtual_shapes(n, build.spec.r, build.spec.s)
        else:
            shapes = kr_decomposition(build.spec)
        anchors = {}
        for sh in shapes:
            top = pm.highest_element(ctype, n, sh)
            anchors[_locate_top(build, top)] = top
        tab_side = SimpleNamespace(
            f={i: _TableauArrow(ctype, n, i) for i in colors}
        )
        model = _transport(g, tab_side, anchors, colors)
    build._model = model
    return model


class _TableauArrow:
    """Dict-like view of one f_i arrow on the full tableau crystal."""

    def __init__(self, ctype, n, i):
        self.ctype, self.n, self.i = ctype, n, i

    def get(self, elem):
        return tableaux.tableau_apply(self.ctype, self.n, elem, self.i, "f")


def _tableau_raise(ctype, n, elem, colors):
    path = []
    while True:
        for i in colors:
            up = tableaux.tableau_apply(ctype, n, elem, i, "e")
            if up is not None:
                path.append(i)
                elem = up
                break
        else:
            return path, elem


def _locate_top(build, top):
    """Vertex of the build carrying a given classical highest tableau."""
    ctype, n = build.spec.classical_type, build.spec.n
    colors = build.spec.classical_colors
    g = build.graph
    wt = tableaux.tableau_weight(ctype, n, top[0], top[1])
    hits = [v for v in g.highest_vertices(colors) if tuple(g.weights[v]) == wt]
    if len(hits) != 1:
        raise RuntimeError(f"classical top of weight {wt} is not unique")
    return hits[0]


def _classical_vertex(build, elem):
    """Vertex whose classical-model tableau equals elem."""
    g = build.graph
    x = g.index.get(elem)
    if x is not None:
        return x
    ctype, n = build.spec.classical_type, build.spec.n
    colors = build.spec.classical_colors
    path, top = _tableau_raise(ctype, n, elem, colors)
    v = _locate_top(build, top)
    for i in reversed(path):
        v = g.f[i].get(v)
        if v is None:
            raise RuntimeError("classical transport died while descending")
    return v


# -- type A: promotion --------------------------------------------------------

def promotion(cols, n):
    """Schutzenberger promotion on a rectangular tableau over 1..n."""
    rows = len(cols[0])
    if any(len(col) != rows for col in cols):
        raise ValueError("promotion needs a rectangular tableau")
    grid = {}
    holes = []
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            if x == n:
                holes.append((i, j))
            else:
                grid[i, j] = x + 1
    for i, j in holes:
        while True:
            up = grid.get((i - 1, j))
            left = grid.get((i, j - 1))
            if up is None and left is None:
                break
            if left is None or (up is not None and up >= left):
                grid[i, j] = up
                del grid[i - 1, j]
                i -= 1
            else:
                grid[i, j] = left
                del grid[i, j - 1]
                j -= 1
        grid[i, j] = 1
    out = tuple(tuple(grid[i, j] for i in range(rows)) for j in range(len(cols)))
    if not tableaux.tableau_ok("A", n, out):
        raise RuntimeError(f"promotion broke semistandardness on {cols}")
    return out


@lru_cache(maxsize=None)
def _promotion_inverse_table(n, rows, width):
    table = {}
    count = 0
    for cols, _ in tableaux.enumerate_tableaux("A", n, Shape((width,) * rows)):
        table[promotion(cols, n)] = cols
        count += 1
    if len(table) != count:
        raise RuntimeError("promotion is not a bijection on the rectangle")
    return table


def inverse_promotion(cols, n):
    """Inverse of promotion, by inverting its table over the rectangle."""
    return _promotion_inverse_table(n, len(cols[0]), len(cols))[cols]


def affine_typeA(elem, n, direction):
    """The 0-arrow on a rectangular type A tableau: pr^{-1} . x_1 . pr."""
    cols = promotion(elem[0], n)
    moved = tableaux.tableau_apply("A", n, (cols, None), 1, direction)
    if moved is None:
        return None
    return (inverse_promotion(moved[0], n), None)


def _build_promotion(spec):
    n = spec.n
    colors = spec.classical_colors
    cls = classical_crystal("A", n, (Shape((spec.s,) * spec.r),), colors)
    f0 = {}
    for x, elem in enumerate(cls.elements):
        down = affine_typeA(elem, n, "f")
        if down is not None:
            f0[x] = cls.index[down]
    graph = CrystalGraph(cls.elements, (0,) + colors, {0: f0, **cls.f}, cls.weights)
    return KRBuild(spec, graph, "promotion", tableaux.format_element)


# -- families with the 0-node attached at node 1: sigma conjugation -----------

def _sigma_dba_table(graph, ctype, n, r, s, shapes):
    """sigma at every {2..n}-top via the diagram involution, transported."""
    jcolors = tuple(range(2, n + 1))
    anchors = {}
    for top in graph.highest_vertices(jcolors):
        P = pm.phi_inverse(ctype, n, graph.elements[top], shapes)
        anchors[top] = graph.index[pm.phi(pm.involution_S(P, r, s))]
    sigma = _transport(graph, graph, anchors, jcolors)
    bad = [x for x in sigma if sigma[sigma[x]] != x]
    if bad:
        raise RuntimeError(f"sigma is not an involution at vertex {bad[0]}")
    return sigma


def sigma_dba(build, elem):
    """The tail involution on a build that carries one."""
    if build.sigma_table is None or build.partner is not build:
        raise ValueError("sigma_dba needs a self-paired involution build")
    g = build.graph
    return g.elements[build.sigma_table[g.index[elem]]]


def affine_dba(build, elem, direction):
    """0-arrow by conjugating the 1-arrow with the tail involution."""
    g = build.graph
    x = build.sigma_table[g.index[elem]]
    y = g.f[1].get(x) if direction == "f" else g.e[1].get(x)
    if y is None:
        return None
    return g.elements[build.sigma_table[y]]


def _build_dba(spec):
    ctype, n = spec.classical_type, spec.n
    shapes = kr_decomposition(spec)
    cls = classical_crystal(ctype, n, shapes, spec.classical_colors)
    sigma = _sigma_dba_table(cls, ctype, n, spec.r, spec.s, shapes)
    f0 = {}
    for x in range(len(cls.elements)):
        y = cls.f[1].get(sigma[x])
        if y is not None:
            f0[x] = sigma[y]
    graph = CrystalGraph(
        cls.elements, (0,) + spec.classical_colors, {0: f0, **cls.f}, cls.weights
    )
    build = KRBuild(
        spec, graph, "dba", tableaux.format_element, sigma_table=sigma
    )
    build.partner = build
    return build


# -- type C below the top node: fixed points of sigma -------------------------

def _c_virtual_shapes(n, r, s):
    """Horizontal-domino removals from an r x s rectangle, as C_n shapes."""
    row_vals = sorted(range(s % 2, s + 1, 2), reverse=True)
    shapes = {
        Shape(tuple(v for v in rows if v))
        for rows in itertools.combinations_with_replacement(row_vals, r)
    }
    return tuple(sorted(shapes, key=lambda sh: (sh.size(), sh.rows)))


def _build_virtual(n, r, s):
    """Fixed points of the tail involution in the rank-(n+1) host."""
    host = build_kr(AffineSpec("A2odd", n + 1, r, s))
    hg = host.graph
    fixed = [x for x in range(len(hg.elements)) if host.sigma_table[x] == x]

    def chain(x, steps, maps):
        for c in steps:
            x = maps[c].get(x)
            if x is None:
                return None
        return x

    def apply_fn(elem, i, op):
        maps = hg.f if op == "f" else hg.e
        x = hg.index[elem]
        if i == 0:
            y = chain(x, (0, 1), maps)
            if y != chain(x, (1, 0), maps):
                raise RuntimeError("host 0- and 1-operators failed to commute")
        else:
            y = maps[i + 1].get(x)
        if y is None:
            return None
        if host.sigma_table[y] != y:
            raise RuntimeError("virtual operator escaped the fixed locus")
        return hg.elements[y]

    def weight_fn(elem):
        return tuple(hg.weights[hg.index[elem]][1:])

    graph = generate_closure(
        [hg.elements[x] for x in fixed], tuple(range(n + 1)), apply_fn, weight_fn
    )
    if len(graph.elements) != len(fixed):
        raise RuntimeError("virtual closure left the fixed-point set")
    vmap = {k: hg.index[el] for k, el in enumerate(graph.elements)}
    link = AmbientLink(host, (1,) * (n + 1), vmap)
    return KRBuild(
        AffineSpec("C1", n, r, s), graph, "virtual", tableaux.format_element,
        ambient=link,
    )


def build_virtual_C(n, r, s):
    """Fixed-point construction; r = n takes the sign-triple route instead."""
    if not 1 <= r < n:
        raise ValueError("fixed-point route needs 1 <= r < n")
    return build_kr(AffineSpec("C1", n, r, s))


_AUX_VIRTUAL = {}


def _virtual_host_c(n, r, s):
    """The fixed-point crystal used as a host; at r = n it exceeds B^{n,s}."""
    if r < n:
        return build_kr(AffineSpec("C1", n, r, s))
    key = (n, s)
    if key not in _AUX_VIRTUAL:
        _AUX_VIRTUAL[key] = _build_virtual(n, n, s)
    return _AUX_VIRTUAL[key]


# -- doubling embeddings ------------------------------------------------------

def _seed_diagram(ctype, n, sh):
    """One diagram per classical component; all dots when that is valid."""
    spin = "+" if sh.spin else ""
    try:
        cols = tuple((h, ".") for h in sh.columns())
        return pm.make_pm(ctype, n, cols, spin=spin)
    except ValueError:
        return pm.enumerate_pm(ctype, n, sh)[0]


def build_stepped_image(spec, host, seed_vertices, m):
    """Closure of seeds under the m_i-th powers of the host operators."""
    hg = host.graph

    def apply_fn(elem, i, op):
        maps = hg.f if op == "f" else hg.e
        y = hg.index[elem]
        for _ in range(m[i]):
            y = maps[i].get(y)
            if y is None:
                return None
        return hg.elements[y]

    def weight_fn(elem):
        w = hg.weights[hg.index[elem]]
        if any(c % 2 for c in w):
            raise RuntimeError("host weight of an image vertex is not even")
        return tuple(c // 2 for c in w)

    graph = generate_closure(
        [hg.elements[v] for v in seed_vertices],
        tuple(range(spec.n + 1)),
        apply_fn,
        weight_fn,
    )
    vmap = {k: hg.index[el] for k, el in enumerate(graph.elements)}
    return KRBuild(
        spec, graph, "stepped", host.render, ambient=AmbientLink(host, m, vmap)
    )


def _build_stepped(spec):
    fam, n, r, s = spec.family, spec.n, spec.r, spec.s
    if fam == "B1":  # r == n
        host = build_kr(AffineSpec("A2odd", n, n, s))
        m = (2,) * n + (1,)
    else:  # A2even any r, D2 r < n
        host = _virtual_host_c(n, r, 2 * s)
        m = (1,) + (2,) * (n - 1) + ((2,) if fam == "A2even" else (1,))
    ctype = spec.classical_type
    seeds = []
    for sh in kr_decomposition(spec):
        image = pm.phi(pm.double_pm(_seed_diagram(ctype, n, sh)))
        seeds.append(_classical_vertex(host, image))
    build = build_stepped_image(spec, host, seeds, m)
    if len(build.graph.elements) != kr_dimension(spec):
        raise RuntimeError("stepped image closure has the wrong size")
    return build


# -- exceptional node for C and twisted D: sign triples -----------------------

def triple_rules(family, s, t, direction):
    """0-arrow case tables on the sign triples of full-height diagrams."""
    if family == "C1":
        if t.gamma or t.total() != s:
            raise ValueError(f"triple {t} malformed for s={s}")
        l1, l2, l3 = t.l1, t.l2, t.l3
        if direction == "e":
            return SignTriple(l1 - 1, l2 + 1, l3) if l1 else None
        return SignTriple(l1 + 1, l2 - 1, l3) if l2 else None
    if family != "D2":
        raise ValueError(f"no triple rules for family {family!r}")
    if t.total() != s or t.gamma not in (0, 1):
        raise ValueError(f"triple {t} malformed for s={s}")
    l1, l2, l3 = t.l1, t.l2, t.l3
    body = l1 + l2 + l3
    if direction == "e":
        if body < s:
            out = (l1, l2 + 2, l3)
        elif l1 > 1:
            out = (l1 - 2, l2, l3)
        elif l1 == 1:
            out = (0, l2 + 1, l3)
        else:
            return None
    else:
        if body < s:
            out = (l1 + 2, l2, l3)
        elif l2 > 1:
            out = (l1, l2 - 2, l3)
        elif l2 == 1:
            out = (l1 + 1, 0, l3)
        else:
            return None
    l1, l2, l3 = out
    gamma, rem = divmod(s - (l1 + l2 + l3), 2)
    if rem or gamma not in (0, 1):
        raise RuntimeError(f"rule produced an invalid triple {out} for s={s}")
    if gamma and s % 2:
        # a 0-column next to a spin sign rewrites as one full signed column
        l1, l2, gamma = l1 + 1, l2 + 1, 0
    return SignTriple(l1, l2, l3, gamma)


def _triple_of(P):
    counts = {"+": 0, "-": 0, "+-": 0, "0": 0}
    for h, st in P.cols:
        counts[st] += 1
    if P.ctype == "C":
        return SignTriple(counts["+"], counts["-"], counts["+-"])
    return SignTriple(
        2 * counts["+"] + (P.spin == "+"),
        2 * counts["-"] + (P.spin == "-"),
        2 * counts["+-"],
        gamma=counts["0"],
    )


def _triple_diagram(ctype, n, t):
    if ctype == "C":
        cols = [(n, "+")] * t.l1 + [(n, "-")] * t.l2 + [(n, "+-")] * t.l3
        return pm.make_pm("C", n, cols)
    if t.l1 % 2 and t.l2 % 2:
        raise ValueError("two odd sign counts cannot share one spin column")
    spin = "+" if t.l1 % 2 else ("-" if t.l2 % 2 else "")
    cols = (
        [(n, "+")] * (t.l1 // 2)
        + [(n, "-")] * (t.l2 // 2)
        + [(n, "+-")] * (t.l3 // 2)
        + [(n, "0")] * t.gamma
    )
    return pm.make_pm("B", n, cols, spin=spin)


def build_exceptional_CD(family, n, s):
    if family not in ("C1", "D2"):
        raise ValueError(f"no exceptional-node route for family {family!r}")
    spec = AffineSpec(family, n, n, s)
    ctype = spec.classical_type
    shapes = kr_decomposition(spec)
    cls = classical_crystal(ctype, n, shapes, spec.classical_colors)
    jcolors = tuple(range(2, n + 1))
    target = {}

    def top_vertex(t):
        if t not in target:
            target[t] = cls.index[pm.phi(_triple_diagram(ctype, n, t))]
        return target[t]

    arrows = {"e": {}, "f": {}}
    for x in range(len(cls.elements)):
        path, top = cls.raise_path(x, jcolors)
        t = _triple_of(pm.phi_inverse(ctype, n, cls.elements[top], shapes))
        for direction in ("e", "f"):
            out = triple_rules(family, s, t, direction)
            if out is None:
                continue
            y = top_vertex(out)
            for i in reversed(path):
                y = cls.f[i].get(y)
                if y is None:
                    raise RuntimeError("0-arrow transport died while descending")
            arrows[direction][x] = y
    inverse = sorted((b, a) for a, b in arrows["e"].items())
    if sorted(arrows["f"].items()) != inverse:
        raise RuntimeError("triple 0-arrows are not mutually inverse")
    graph = CrystalGraph(
        cls.elements, (0,) + spec.classical_colors, {0: arrows["f"], **cls.f},
        cls.weights,
    )
    return KRBuild(spec, graph, "triples", tableaux.format_element)


# -- type D tail nodes: mirrored spin pair -------------------------------------

def _spin_tensor_apply(n, vecs, i, op):
    pairs = [
        (tableaux.spin_eps("D", n, i, v), tableaux.spin_phi("D", n, i, v))
        for v in vecs
    ]
    k = tableaux.signature_index(pairs, op)
    if k is None:
        return None
    act = tableaux.spin_e if op == "e" else tableaux.spin_f
    return vecs[:k] + (act("D", n, i, vecs[k]),) + vecs[k + 1 :]


def _spin_tensor_weight(vecs):
    return tuple(sum(v[j] for v in vecs) for j in range(len(vecs[0])))


def sigma_spin_D(P):
    """Mirror a full-height type D diagram onto the other tail color."""
    if P.ctype != "D" or P.color not in (1, 2):
        raise ValueError("needs a colored full-height type D diagram")
    flip = {"+": "-", "-": "+", "+-": "+-"}
    cols = tuple((h, flip[st]) for h, st in P.cols)
    spin = {"": "", "+": "-", "-": "+"}[P.spin]
    return pm.make_pm("D", P.n, cols, spin=spin, color=3 - P.color)


def _spin_branching(n, s, color, cls):
    """{2..n}-top vertex -> diagram, for one tensor power of a spin crystal."""
    k = s // 2
    sh = Shape((k,) * n if k else (), spin=s % 2, color=color)
    top = cls.elements[0]
    table = {}
    for P in pm.enumerate_pm("D", n, sh):
        vecs = top
        for a in reversed(pm.f_string(P)):
            vecs = _spin_tensor_apply(n, vecs, a, "f")
            if vecs is None:
                raise RuntimeError(f"branching walk died for {P}")
        table[cls.index[vecs]] = P
    jcolors = tuple(range(2, n + 1))
    tops = set(cls.highest_vertices(jcolors))
    if set(table) != tops or len(table) != len(tops):
        raise RuntimeError("branching table does not match the {2..n}-tops")
    return table


def build_exceptional_D(n, s, r):
    """The two spin-column crystals, tied together by the tail mirror."""
    if r not in (n - 1, n):
        raise ValueError("spin-pair route needs r in {n-1, n}")
    jcolors = tuple(range(2, n + 1))
    colors = tuple(range(1, n + 1))
    cls = {}
    tables = {}
    for color in (1, 2):
        top = (1,) * n if color == 1 else (1,) * (n - 1) + (-1,)
        cls[color] = generate_closure(
            [((top),) * s],
            colors,
            lambda vecs, i, op: _spin_tensor_apply(n, vecs, i, op),
            _spin_tensor_weight,
        )
        tables[color] = _spin_branching(n, s, color, cls[color])
    sigma = {}
    for color in (1, 2):
        lookup = {P: v for v, P in tables[3 - color].items()}
        anchors = {
            top: lookup[sigma_spin_D(P)] for top, P in tables[color].items()
        }
        sigma[color] = _transport(cls[color], cls[3 - color], anchors, jcolors)
    bad = [x for x in sigma[1] if sigma[2][sigma[1][x]] != x]
    if bad or any(sigma[1][sigma[2][y]] != y for y in sigma[2]):
        raise RuntimeError("spin mirrors are not mutually inverse")
    builds = {}
    for color in (1, 2):
        f0 = {}
        for x in range(len(cls[color].elements)):
            y = cls[3 - color].f[1].get(sigma[color][x])
            if y is not None:
                f0[x] = sigma[3 - color][y]
        graph = CrystalGraph(
            cls[color].elements, (0,) + colors, {0: f0, **cls[color].f},
            cls[color].weights,
        )
        spec = AffineSpec("D1", n, n if color == 1 else n - 1, s)
        builds[color] = KRBuild(
            spec, graph, "spin", tableaux.format_spin_tensor,
            sigma_table=sigma[color],
        )
    builds[1].partner = builds[2]
    builds[2].partner = builds[1]
    want = builds[1] if r == n else builds[2]
    return want, want.partner


# -- dispatch ------------------------------------------------------------------

_BUILD_CACHE = {}


def build_kr(spec: AffineSpec) -> KRBuild:
    """Build (and cache) the affine crystal B^{r,s} described by spec."""
    build = _BUILD_CACHE.get(spec)
    if build is None:
        build = _dispatch(spec)
        _BUILD_CACHE[spec] = build
        partner = build.partner
        if partner is not None and partner is not build:
            _BUILD_CACHE[partner.spec] = partner
    return build


def _dispatch(spec):
    fam, n, r, s = spec.family, spec.n, spec.r, spec.s
    if fam == "A1":
        return _build_promotion(spec)
    if fam == "A2odd" or (fam == "B1" and r < n) or (fam == "D1" and r <= n - 2):
        return _build_dba(spec)
    if fam in ("B1", "A2even") or (fam == "D2" and r < n):
        return _build_stepped(spec)
    if fam == "C1" and r < n:
        return _build_virtual(n, r, s)
    if fam in ("C1", "D2"):
        return build_exceptional_CD(fam, n, s)
    return build_exceptional_D(n, s, r)[0]
