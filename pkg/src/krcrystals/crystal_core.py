"""Finite crystal graphs: closure generation, strings, components, isomorphism.

A graph holds hashable elements, arrow dictionaries f[i]/e[i] on vertex
indices, and one weight tuple per vertex.  Arrows for each color are partial
injections; that is checked during generation.
"""

from __future__ import annotations

from collections import deque

VERTEX_BOUND = 10**6


class CrystalGraph:
    def __init__(self, elements, colors, f_edges, weights):
        self.elements = list(elements)
        self.colors = tuple(colors)
        self.index = {el: k for k, el in enumerate(self.elements)}
        self.f = {i: dict(f_edges[i]) for i in self.colors}
        self.e = {i: {dst: src for src, dst in self.f[i].items()} for i in self.colors}
        self.weights = list(weights)

    def __len__(self):
        return len(self.elements)

    def f_op(self, i, x):
        return self.f[i].get(x)

    def e_op(self, i, x):
        return self.e[i].get(x)

    def phi(self, i, x) -> int:
        k = 0
        while (x := self.f[i].get(x)) is not None:
            k += 1
        return k

    def eps(self, i, x) -> int:
        k = 0
        while (x := self.e[i].get(x)) is not None:
            k += 1
        return k

    def eps_vector(self, x, colors=None):
        return tuple(self.eps(i, x) for i in (colors or self.colors))

    def phi_vector(self, x, colors=None):
        return tuple(self.phi(i, x) for i in (colors or self.colors))

    def weight(self, x):
        return self.weights[x]

    # -- structure ------------------------------------------------------------

    def component_of(self, x, colors=None):
        colors = colors or self.colors
        seen = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for i in colors:
                for z in (self.f[i].get(y), self.e[i].get(y)):
                    if z is not None and z not in seen:
                        seen.add(z)
                        queue.append(z)
        return seen

    def components(self, colors=None):
        left = set(range(len(self.elements)))
        out = []
        while left:
            comp = self.component_of(min(left), colors)
            out.append(sorted(comp))
            left -= comp
        return out

    def highest_vertices(self, colors=None):
        colors = colors or self.colors
        return [
            x
            for x in range(len(self.elements))
            if all(self.e[i].get(x) is None for i in colors)
        ]

    def raise_path(self, x, colors):
        """Greedy raising to a highest vertex; returns (color path, vertex)."""
        path = []
        while True:
            for i in colors:
                y = self.e[i].get(x)
                if y is not None:
                    path.append(i)
                    x = y
                    break
            else:
                return path, x

    def decomposition(self, colors=None):
        """Sorted weights of the unique highest vertex of each component."""
        out = []
        for comp in self.components(colors):
            tops = [
                x
                for x in comp
                if all(self.e[i].get(x) is None for i in (colors or self.colors))
            ]
            if len(tops) != 1:
                raise ValueError(
                    f"component has {len(tops)} highest vertices, expected 1"
                )
            out.append(self.weights[tops[0]])
        return sorted(out)

    # -- canonical ids and serialization helpers -------------------------------

    def canonical_ids(self, render):
        """Index -> 0-based id, by lexicographic order of rendered elements."""
        order = sorted(range(len(self.elements)), key=lambda x: render(self.elements[x]))
        return {x: k for k, x in enumerate(order)}

    # -- isomorphism search -----------------------------------------------------

    def isomorphism(self, other, color_map=None, colors=None):
        """Color-respecting graph isomorphism self -> other, or None.

        ``color_map`` sends self colors to other colors.  Works on graphs
        connected under ``colors``; the anchor vertex is matched by its
        (eps, phi) vectors, and arrows force the rest of the map.
        """
        return next(self.isomorphisms(other, color_map, colors), None)

    def isomorphisms(self, other, color_map=None, colors=None):
        """Yield every color-respecting isomorphism self -> other.

        Connectivity under ``colors`` makes each anchor image determine at
        most one map, so this yields one mapping per viable anchor image.
        """
        colors = list(colors or self.colors)
        color_map = color_map or {i: i for i in colors}
        if len(self.elements) != len(other.elements):
            return

        def self_key(x):
            return (
                tuple(self.eps(i, x) for i in colors),
                tuple(self.phi(i, x) for i in colors),
            )

        def other_key(x):
            return (
                tuple(other.eps(color_map[i], x) for i in colors),
                tuple(other.phi(color_map[i], x) for i in colors),
            )

        anchor = min(range(len(self.elements)), key=lambda x: (self_key(x), x))
        target_key = self_key(anchor)
        for start in range(len(other.elements)):
            if other_key(start) != target_key:
                continue
            mapping = self._propagate(other, anchor, start, colors, color_map)
            if mapping is not None:
                yield mapping

    def _propagate(self, other, anchor, start, colors, color_map):
        mapping = {anchor: start}
        used = {start}
        queue = deque([anchor])
        while queue:
            x = queue.popleft()
            for i in colors:
                j = color_map[i]
                for mine, theirs in ((self.f[i], other.f[j]), (self.e[i], other.e[j])):
                    y = mine.get(x)
                    z = theirs.get(mapping[x])
                    if (y is None) != (z is None):
                        return None
                    if y is None:
                        continue
                    if y in mapping:
                        if mapping[y] != z:
                            return None
                    elif z in used:
                        return None
                    else:
                        mapping[y] = z
                        used.add(z)
                        queue.append(y)
        if len(mapping) != len(self.elements):
            return None
        return mapping


def generate_closure(seeds, colors, apply_fn, weight_fn, bound=VERTEX_BOUND):
    """Close seed elements under e_i/f_i for all given colors.

    ``apply_fn(elem, i, op)`` returns the neighbor element or None.  Raises
    if the closure exceeds ``bound`` vertices or arrows conflict.
    """
    elements = []
    index = {}
    f_edges = {i: {} for i in colors}
    queue = deque()

    def intern(elem):
        k = index.get(elem)
        if k is None:
            k = len(elements)
            if k >= bound:
                raise RuntimeError(f"crystal closure exceeded {bound} vertices")
            index[elem] = k
            elements.append(elem)
            queue.append(elem)
        return k

    for seed in seeds:
        intern(seed)
    while queue:
        elem = queue.popleft()
        x = index[elem]
        for i in colors:
            down = apply_fn(elem, i, "f")
            if down is not None:
                y = intern(down)
                if f_edges[i].setdefault(x, y) != y:
                    raise RuntimeError(f"conflicting f_{i} arrow at {elem!r}")
            up = apply_fn(elem, i, "e")
            if up is not None:
                y = intern(up)
                if f_edges[i].setdefault(y, x) != x:
                    raise RuntimeError(f"conflicting f_{i} arrow at {up!r}")
    graph = CrystalGraph(elements, colors, f_edges, [weight_fn(el) for el in elements])
    _check_injective(graph)
    return graph


def _check_injective(graph):
    for i in graph.colors:
        targets = list(graph.f[i].values())
        if len(targets) != len(set(targets)):
            raise RuntimeError(f"f_{i} arrows are not injective")
