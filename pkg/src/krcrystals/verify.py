"""Exhaustive structural checks on built crystals, one report per suite.

Each suite re-derives a property of B^{r,s} from scratch on the finished
graph (string lengths, branching tables, sign diagrams) and compares it
against the closed-form side: root data, dimension counts, diagram rules.
Failures carry a witness; unexpected exceptions become failing reports so
a whole grid can run unattended.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import pm_diagrams as pm
from .cartan import (
    FAMILIES,
    AffineSpec,
    Shape,
    kr_decomposition,
    kr_dimension,
    pairing,
    shape_dimension,
    simple_root,
    zero_root_projection,
)
from .crystal_core import CrystalGraph
from .kr_builders import (
    KRBuild,
    _c_virtual_shapes,
    _triple_of,
    build_kr,
    classical_model,
    promotion,
)

SUITES = ("regularity", "decomp", "sigma", "phi0", "similarity", "jlowest")


@dataclass
class CheckReport:
    suite: str
    spec: AffineSpec
    passed: bool
    detail: str = ""
    witness: dict | None = None
    seconds: float = 0.0  # kept off the serialized forms: reports stay byte-stable

    def line(self) -> str:
        spec = self.spec
        head = f"{self.suite:<10} {spec.family:<6} n={spec.n} r={spec.r} s={spec.s}"
        tail = f"  [{self.detail}]" if self.detail else ""
        return f"{head}  {'PASS' if self.passed else 'FAIL'}{tail}"

    def to_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "family": self.spec.family,
            "n": self.spec.n,
            "r": self.spec.r,
            "s": self.spec.s,
            "passed": self.passed,
            "detail": self.detail,
        }
        if self.witness is not None:
            out["witness"] = {k: self.witness[k] for k in sorted(self.witness)}
        return out


def _report(suite, build, body):
    start = time.perf_counter()
    try:
        passed, detail, witness = body()
    except Exception as exc:  # a broken graph should fail, not crash the run
        passed, detail, witness = False, f"error: {exc}", None
    return CheckReport(
        suite, build.spec, passed, detail, witness, time.perf_counter() - start
    )


def affine_colors(spec: AffineSpec) -> tuple[int, ...]:
    return (0,) + spec.classical_colors


def second_subset(spec: AffineSpec) -> tuple[int, ...]:
    """The color subset complementary to the classical one, node 1 removed."""
    if spec.family in ("C1", "D2", "A2even"):
        return tuple(range(spec.n))
    top = spec.n if spec.family != "A1" else spec.n - 1
    return (0,) + tuple(range(2, top + 1))


def zero_pairing(family: str, n: int, wt) -> int:
    """<wt, alpha_0^vee> on a doubled classical weight."""
    v = zero_root_projection(family, n)
    num = 2 * sum(a * b for a, b in zip(wt, v))
    den = sum(a * a for a in v)
    if num % den:
        raise ValueError(f"weight {wt} pairs fractionally with the zero root")
    return num // den


# -- regularity ----------------------------------------------------------------

def check_regularity(build: KRBuild) -> CheckReport:
    """Arrows are mutually inverse, step by roots, and pair with the strings."""

    def body():
        g = build.graph
        spec = build.spec
        ctype, n = spec.classical_type, spec.n
        steps = {0: zero_root_projection(spec.family, n)}
        for i in spec.classical_colors:
            steps[i] = simple_root(ctype, n, i)
        for x in range(len(g)):
            wt = g.weights[x]
            for i in affine_colors(spec):
                y = g.f[i].get(x)
                if y is not None:
                    if g.e[i].get(y) != x:
                        return False, "arrows not mutually inverse", _w(build, x, i)
                    want = tuple(a - b for a, b in zip(wt, steps[i]))
                    if g.weights[y] != want:
                        return False, "weight step is not the root", _w(build, x, i)
                want = (
                    zero_pairing(spec.family, n, wt)
                    if i == 0
                    else pairing(ctype, n, wt, i)
                )
                if g.phi(i, x) - g.eps(i, x) != want:
                    return False, "phi - eps misses the coroot pairing", _w(build, x, i)
        return True, f"{len(g)} vertices", None

    return _report("regularity", build, body)


def _w(build, x, i, **extra):
    witness = {"element": build.render(build.graph.elements[x]), "color": i}
    witness.update(extra)
    return witness


# -- decompositions --------------------------------------------------------------

def _component_sizes(graph, colors):
    return sorted(len(c) for c in graph.components(colors))


def check_decompositions(build: KRBuild) -> CheckReport:
    """Classical components match the tables; so does the zero-side restriction."""

    def body():
        g = build.graph
        spec = build.spec
        ctype, n = spec.classical_type, spec.n
        shapes = kr_decomposition(spec)
        if len(g) != kr_dimension(spec):
            return False, f"size {len(g)} != {kr_dimension(spec)}", None
        got = g.decomposition(spec.classical_colors)
        want = sorted(sh.weight(ctype, n) for sh in shapes)
        if got != want:
            return False, "classical highest weights off the table", {
                "got": str(got), "want": str(want),
            }
        classical_sizes = sorted(shape_dimension(ctype, n, sh) for sh in shapes)
        subset = second_subset(spec)
        if spec.family == "A1":
            want_sizes = [len(g)]
        elif spec.family == "A2even":
            # the zero side branches over horizontal-domino shapes
            want_sizes = sorted(
                shape_dimension("B", n, sh)
                for sh in _c_virtual_shapes(n, spec.r, spec.s)
            )
        else:
            want_sizes = classical_sizes
        got_sizes = _component_sizes(g, subset)
        if got_sizes != want_sizes:
            return False, f"component sizes under {subset} off the table", {
                "got": str(got_sizes), "want": str(want_sizes),
            }
        return True, f"{len(shapes)} classical components", None

    return _report("decomp", build, body)


# -- automorphisms ----------------------------------------------------------------

def _check_table_sigma(build):
    """sigma is an involution, commutes above color 1, and conjugates 0 to 1."""
    g = build.graph
    partner = build.partner if build.kind == "spin" else build
    sigma, back = build.sigma_table, partner.sigma_table
    pg = partner.graph
    for x in range(len(g)):
        if back[sigma[x]] != x:
            return False, "sigma is not an involution", _w(build, x, 1)
        for i in range(2, build.spec.n + 1):
            y = g.f[i].get(x)
            z = pg.f[i].get(sigma[x])
            if (None if y is None else sigma[y]) != z:
                return False, "sigma fails to commute", _w(build, x, i)
        z = pg.f[1].get(sigma[x])
        if g.f[0].get(x) != (None if z is None else back[z]):
            return False, "f_0 is not sigma f_1 sigma", _w(build, x, 0)
    return True, "involution conjugating f_0 to f_1", None


def _check_promotion_sigma(build):
    """Promotion has order n and rotates every colored arrow by one."""
    g = build.graph
    n = build.spec.n
    pr = {}
    for x, elem in enumerate(g.elements):
        pr[x] = g.index[(promotion(elem[0], n), None)]
    walk = list(range(len(g)))
    for _ in range(n):
        walk = [pr[x] for x in walk]
    if walk != list(range(len(g))):
        return False, f"promotion does not have order {n}", None
    for x in range(len(g)):
        for i in range(n):
            y = g.f[i].get(x)
            z = g.f[(i + 1) % n].get(pr[x])
            if (None if y is None else pr[y]) != z:
                return False, "promotion fails to rotate an arrow", _w(build, x, i)
    return True, f"promotion of order {n} rotates all arrows", None


def _search_involution(graph, color_map, colors):
    for iso in graph.isomorphisms(graph, color_map=color_map, colors=colors):
        if all(iso[iso[x]] == x for x in iso):
            return iso
    return None


def _check_twisted_sigma(build, color_map, label):
    colors = affine_colors(build.spec)
    iso = _search_involution(build.graph, color_map, colors)
    if iso is None:
        return False, f"no involution realizing {label}", None
    return True, f"involution realizing {label}", None


def check_sigma(build: KRBuild) -> CheckReport:
    """The symmetry carrying the affine arrows exists and behaves."""

    def body():
        n = build.spec.n
        if build.kind == "promotion":
            return _check_promotion_sigma(build)
        if build.sigma_table is not None:
            return _check_table_sigma(build)
        if build.spec.family in ("C1", "D2"):
            color_map = {i: n - i for i in affine_colors(build.spec)}
            return _check_twisted_sigma(build, color_map, "i -> n-i")
        if build.spec.family == "B1":  # r = n arrives without a stored table
            color_map = {i: i for i in affine_colors(build.spec)}
            color_map[0], color_map[1] = 1, 0
            return _check_twisted_sigma(build, color_map, "0 <-> 1")
        return True, "no automorphism in scope for this family", None

    return _report("sigma", build, body)


# -- the zero-string rule on sign diagrams -----------------------------------------

def _model_shapes(build):
    if build.kind == "virtual":
        spec = build.spec
        return _c_virtual_shapes(spec.n, spec.r, spec.s)
    return kr_decomposition(build.spec)


def _phi0_rule(P: pm.PmDiagram, r: int, s: int, m0: int):
    """Pair-deletion count for single-sign diagrams; None when inapplicable."""
    seen = set()
    symbols = []
    c_r = 0
    inner = P.inner_heights()
    for j in range(s):
        height = inner[j] if j < len(P.cols) else 0
        state = P.cols[j][1] if j < len(P.cols) else "."
        if state in ("+-", "0"):
            return None
        if height >= r:
            c_r += 1
            continue
        if state == ".":
            symbols.append(".")
        else:
            seen.add(state)
            symbols.append("!")
    if len(seen) > 1:
        return None
    eps = seen.pop() if seen else "+"
    stack = []
    for sym in symbols:
        if sym == "!" and stack and stack[-1] == ".":
            stack.pop()
        else:
            stack.append(sym)
    if eps == "+":
        total = stack.count(".")
    else:
        total = stack.count("!") + (s - c_r)
    if total % m0:
        raise ValueError(f"rule count {total} is not divisible by {m0} on {P}")
    return total // m0


def check_phi0(build: KRBuild) -> CheckReport:
    """Zero-string lengths on branching tops match the sign-diagram rules."""

    def body():
        spec = build.spec
        fam, n, r, s = spec.family, spec.n, spec.r, spec.s
        if fam not in ("C1", "A2even", "D2"):
            return True, "rule not applicable to this construction", None
        g = build.graph
        m0 = 2 if fam == "C1" else 1
        model = classical_model(build)
        shapes = _model_shapes(build)
        ctype = spec.classical_type
        jcolors = tuple(range(2, n + 1))
        checked = 0
        for x in g.highest_vertices(jcolors):
            P = pm.phi_inverse(ctype, n, model[x], shapes)
            if build.kind == "triples":
                t = _triple_of(P)
                if g.eps(0, x) != t.l1 + t.gamma:
                    return False, "eps_0 misses the sign-column count", _w(
                        build, x, 0, expected=str(t.l1 + t.gamma)
                    )
                checked += 1
                if fam == "D2":
                    continue
            want = _phi0_rule(P, r, s, m0)
            if want is not None:
                checked += 1
                if g.phi(0, x) != want:
                    return False, "phi_0 misses the pair-deletion count", _w(
                        build, x, 0, expected=str(want)
                    )
                continue
            # mixed-sign diagrams: a short column with no plus forces motion
            short = [st for h, st in P.cols if h < n - 1]
            if short and not any("+" in pm._marks(st) for st in short):
                checked += 1
                if g.phi(0, x) == 0:
                    return False, "phi_0 vanished without a short plus", _w(build, x, 0)
        return True, f"{checked} diagram checks", None

    return _report("phi0", build, body)


# -- index-scaled embeddings ----------------------------------------------------

_DOUBLING_TARGET = {"B1": "B", "A2even": "C", "D2": "B"}


def _host_diagram(host, v):
    model = classical_model(host)
    spec = host.spec
    return pm.phi_inverse(
        spec.classical_type, spec.n, model[v], _model_shapes(host)
    )


def _check_stepped_similarity(build):
    g = build.graph
    spec = build.spec
    n = spec.n
    amb = build.ambient
    host, m, vmap = amb.build, amb.m, amb.vertex_map
    hg = host.graph
    for x, v in vmap.items():
        for i in range(n + 1):
            he, hp = hg.eps(i, v), hg.phi(i, v)
            if he % m[i] or hp % m[i]:
                return False, "host string not divisible by the multiplier", _w(
                    build, x, i
                )
            if g.eps(i, x) != he // m[i] or g.phi(i, x) != hp // m[i]:
                return False, "image string is not the scaled host string", _w(
                    build, x, i
                )
            w = v
            for _ in range(m[i]):
                w = hg.f[i].get(w)
            y = g.f[i].get(x)
            if (None if y is None else vmap[y]) != w:
                return False, "edge is not the powered host edge", _w(build, x, i)
    image = set(vmap.values())
    target = _DOUBLING_TARGET[spec.family]
    jcolors = tuple(range(2, n + 1))
    doubled = 0
    for v in hg.highest_vertices(jcolors):
        P = _host_diagram(host, v)
        # phantom zero-height columns double too, so their count stays even
        is_double = pm.is_doubled(P, target) and (host.spec.s - P.width()) % 2 == 0
        if (v in image) != is_double:
            return False, "image tops are not the doubled diagrams", {
                "element": host.render(hg.elements[v]),
                "in_image": str(v in image),
            }
        doubled += v in image
    return True, f"{doubled} doubled diagram tops", None


def _check_virtual_similarity(build):
    g = build.graph
    n = build.spec.n
    amb = build.ambient
    host, vmap = amb.build, amb.vertex_map
    hg = host.graph
    fixed = {v for v in range(len(hg)) if host.sigma_table[v] == v}
    if set(vmap.values()) != fixed:
        return False, "image is not the fixed locus of the tail mirror", None
    for x, v in vmap.items():
        if hg.eps(0, v) != hg.eps(1, v) or hg.phi(0, v) != hg.phi(1, v):
            return False, "tail strings disagree on a fixed point", _w(build, x, 0)
        if g.eps(0, x) != hg.eps(0, v) or g.phi(0, x) != hg.phi(0, v):
            return False, "zero string is not the host tail string", _w(build, x, 0)
        y = g.f[0].get(x)
        w = hg.f[0].get(v)
        w = None if w is None else hg.f[1].get(w)
        if (None if y is None else vmap[y]) != w:
            return False, "zero edge is not the host tail pair", _w(build, x, 0)
        for i in range(1, n + 1):
            if g.eps(i, x) != hg.eps(i + 1, v) or g.phi(i, x) != hg.phi(i + 1, v):
                return False, "classical string is not the shifted host string", _w(
                    build, x, i
                )
            y = g.f[i].get(x)
            w = hg.f[i + 1].get(v)
            if (None if y is None else vmap[y]) != w:
                return False, "classical edge is not the shifted host edge", _w(
                    build, x, i
                )
    return True, f"{len(fixed)} fixed points", None


def check_similarity(build: KRBuild) -> CheckReport:
    """The build sits inside its host exactly as the index scaling dictates."""

    def body():
        if build.ambient is None:
            return True, "no ambient crystal for this construction", None
        if build.kind == "stepped":
            return _check_stepped_similarity(build)
        return _check_virtual_similarity(build)

    return _report("similarity", build, body)


# -- lowest elements of the classical layer ----------------------------------------

def _conjugate(heights):
    top = max(heights, default=0)
    return tuple(sum(1 for h in heights if h >= i) for i in range(1, top + 1))


def _jlowest_column_problem(col, n, ctype):
    plain = [c for c in col if c > 0]
    zeros = sum(1 for c in col if c == 0)
    barred = [-c for c in col if c < 0]
    if list(col) != plain + [0] * zeros + [-b for b in barred]:
        return "letters out of band order"
    if zeros and ctype == "C":
        return "zero letters outside type B"
    if plain:
        if plain != list(range(plain[0], n + 1)):
            return "unbarred run does not climb to n"
        if any(b >= plain[0] for b in barred):
            return "barred letter at or above the run start"
    return None


def check_jlowest(build: KRBuild) -> CheckReport:
    """Lowest elements below the top color have the forced column pattern."""

    def body():
        spec = build.spec
        ctype, n = spec.classical_type, spec.n
        if ctype not in "BC" or build.kind == "spin":
            return True, "pattern not applicable to this classical type", None
        g = build.graph
        model = classical_model(build)
        jcolors = tuple(range(1, n))
        jprime = tuple(range(2, n + 1))
        checked = 0
        for x in range(len(g)):
            if any(g.f[i].get(x) is not None for i in jcolors):
                continue
            cols, spin = model[x]
            if spin is not None:
                continue
            checked += 1
            for col in cols:
                problem = _jlowest_column_problem(col, n, ctype)
                if problem:
                    return False, problem, _w(build, x, 1, column=str(col))
            heights = [len(col) - (col[-1] == -1 if col else False) for col in cols]
            if any(h >= n for h in heights):
                continue  # inner shape would leave rank n-1; pattern still holds
            if sorted(heights, reverse=True) != heights:
                return False, "inner heights are not a partition", _w(build, x, 1)
            inner = Shape(_conjugate([h for h in heights if h]))
            _, top = g.raise_path(x, jprime)
            if tuple(g.weights[top][1:]) != inner.weight(ctype, n - 1):
                return False, "branch top misses the inner shape", _w(
                    build, x, 2, inner=str(inner)
                )
        return True, f"{checked} lowest elements", None

    return _report("jlowest", build, body)


# -- grid runner ------------------------------------------------------------------

_CHECKS = {
    "regularity": check_regularity,
    "decomp": check_decompositions,
    "sigma": check_sigma,
    "phi0": check_phi0,
    "similarity": check_similarity,
    "jlowest": check_jlowest,
}


def run_suite(specs, suites=SUITES) -> list[CheckReport]:
    """All requested suites over all specs, in a deterministic order."""
    reports = []
    for spec in specs:
        build = build_kr(spec)
        for name in suites:
            reports.append(_CHECKS[name](build))
    return reports


def default_grid(n_values=(2, 3), s_values=(1, 2)) -> tuple[AffineSpec, ...]:
    """Every family over small ranks; the rank-bound family starts at 4."""
    specs = []
    for family in FAMILIES:
        for n in (4,) if family == "D1" else n_values:
            r_max = n - 1 if family == "A1" else n
            for r in range(1, r_max + 1):
                for s in s_values:
                    specs.append(AffineSpec(family, n, r, s))
    return tuple(specs)


def with_dropped_edge(build: KRBuild, color: int, k: int = 0) -> KRBuild:
    """A copy of the build whose k-th arrow of the given color is deleted."""
    g = build.graph
    f_edges = {i: dict(g.f[i]) for i in g.colors}
    pairs = sorted(f_edges[color].items())
    if not pairs:
        raise ValueError(f"no arrows of color {color} to drop")
    src, _ = pairs[k % len(pairs)]
    del f_edges[color][src]
    mutated = CrystalGraph(g.elements, g.colors, f_edges, g.weights)
    return KRBuild(
        build.spec,
        mutated,
        build.kind,
        build.render,
        ambient=build.ambient,
        sigma_table=build.sigma_table,
        partner=build.partner,
    )
