"""Breadth-first mutation graphs and the Markov-tree comparison.

Each node carries a shear-canonicalized Laurent polynomial.  An edge records
the mutation applied.  When expanding a node we skip a seed exactly when the
node already has an incident edge with the same label -- same weight line and
same translate-canonical factor -- whose other endpoint is shear-equivalent
to the would-be result; this prunes the reverse of the arriving mutation
without hiding genuinely new branches.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import format_polynomial
from .mutation import (MutationBounds, enumerate_mutations, mutate,
                       shear_equivalent)
from .polytopes import NotSimplexError, newton_polytope, simplex_weights


@dataclass(frozen=True)
class GraphNode:
    index: int
    polynomial: object
    depth: int


@dataclass(frozen=True)
class GraphEdge:
    source: int
    target: int
    weight: tuple
    factor: object


@dataclass(frozen=True)
class MutationGraph:
    nodes: tuple
    edges: tuple
    depth: int
    bounds: MutationBounds
    complete: bool

    def nodes_at_depth(self, d):
        return [n for n in self.nodes if n.depth == d]


def _edge_label(weight, factor):
    """Identity of a mutation edge: the weight up to sign, the factor up to
    translation (factors already sit on the wall, where shears act
    trivially)."""
    line = weight if weight > tuple(-x for x in weight) else \
        tuple(-x for x in weight)
    base = min(factor.support())
    canon = factor.shift(tuple(-x for x in base))
    return line, tuple(sorted(canon.terms.items()))


def build_graph(f, depth, bounds=None, extra_factors=()):
    """Breadth-first mutation graph of f out to the given depth."""
    if bounds is None:
        bounds = MutationBounds()
    if depth < 0:
        raise ValueError("depth must be >= 0")
    nodes = [GraphNode(0, f, 0)]
    edges = []
    complete = True
    incident = {0: []}  # node index -> list of (label, neighbour index)
    frontier = [0]
    for level in range(depth):
        next_frontier = []
        for idx in frontier:
            poly = nodes[idx].polynomial
            result = enumerate_mutations(poly, bounds, extra_factors)
            complete = complete and result.complete
            for seed in result.seeds:
                g = mutate(poly, seed)
                label = _edge_label(seed.weight, seed.factor)
                known = False
                for (lab, nbr) in incident[idx]:
                    if lab == label and shear_equivalent(
                            g, nodes[nbr].polynomial, seed.weight):
                        known = True
                        break
                if known:
                    continue
                new = GraphNode(len(nodes), g, level + 1)
                nodes.append(new)
                incident[new.index] = [(label, idx)]
                incident[idx].append((label, new.index))
                edges.append(GraphEdge(idx, new.index, seed.weight,
                                       seed.factor))
                next_frontier.append(new.index)
        frontier = next_frontier
    return MutationGraph(tuple(nodes), tuple(edges), depth, bounds, complete)


def export_dot(graph):
    """Deterministic Graphviz rendering of a mutation graph."""
    lines = ["digraph mutations {"]
    for n in graph.nodes:
        try:
            extra = " | " + str(simplex_weights(newton_polytope(n.polynomial)))
        except (NotSimplexError, ValueError):
            extra = ""
        label = format_polynomial(n.polynomial) + extra
        lines.append(f'  n{n.index} [label="{label}"];')
    for e in graph.edges:
        lines.append(
            f'  n{e.source} -> n{e.target} '
            f'[label="w={list(e.weight)} F={format_polynomial(e.factor)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Markov tree


def markov_tree(depth):
    """Levels of the Markov-triple tree.

    Level 0 is [(1, 1, 1)]; each triple branches by replacing one entry a_i
    with 3 * (product of the others) - a_i, sorting, dropping the move back
    to the parent and duplicate siblings.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    levels = [[((1, 1, 1), None)]]
    for _ in range(depth):
        nxt = []
        for triple, parent in levels[-1]:
            seen = set()
            a, b, c = triple
            for child in (
                    tuple(sorted((3 * b * c - a, b, c))),
                    tuple(sorted((a, 3 * a * c - b, c))),
                    tuple(sorted((a, b, 3 * a * b - c)))):
                if child == parent or child == triple or child in seen:
                    continue
                seen.add(child)
                nxt.append((child, triple))
        levels.append(nxt)
    return [[t for t, _ in level] for level in levels]


@dataclass(frozen=True)
class CorrespondenceReport:
    per_depth: tuple  # of (graph_weight_sets, markov_squared_sets, agree)
    ok: bool
    complete: bool


def p2_correspondence_check(depth, bounds=None):
    """Compare the mutation graph of x + y + 1/(x*y) against the Markov tree.

    At each depth the set of weighted-projective weight triples read off the
    graph nodes must equal the set of componentwise squares of the Markov
    triples first appearing at that depth.
    """
    from .laurent import parse_polynomial
    f = parse_polynomial("x + y + x^-1*y^-1")
    graph = build_graph(f, depth, bounds)
    markov = markov_tree(depth)
    per_depth = []
    ok = True
    for d in range(depth + 1):
        graph_weights = {simplex_weights(newton_polytope(n.polynomial))
                         for n in graph.nodes_at_depth(d)}
        markov_weights = {tuple(x * x for x in t) for t in markov[d]}
        agree = graph_weights == markov_weights
        ok = ok and agree
        per_depth.append((frozenset(graph_weights), frozenset(markov_weights),
                          agree))
    return CorrespondenceReport(tuple(per_depth), ok, graph.complete)
