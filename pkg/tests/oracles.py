"""Brute-force reference implementations used to freeze expected values.

Nothing here touches the library's face tables, component labels or truth
tables: only raw facet sets and vertex colors.
"""

from itertools import combinations

import networkx as nx

from simplicial_epistemic.logic import CD, And, Atom, Bottom, C, D, Implies, K, Not, Or, Top


def colored(c, facet, agent):
    (vid,) = [v for v in facet if c.vertices[v].color == agent]
    return vid


def same_face(c, f1, f2, group):
    return all(colored(c, f1, a) == colored(c, f2, a) for a in group)


def reach(c, start, groups):
    """Fixed point of single steps, checking every facet pair each sweep."""
    seen = {start}
    changed = True
    while changed:
        changed = False
        for f in c.facets:
            if f in seen:
                continue
            if any(same_face(c, f, g, grp) for g in list(seen) for grp in groups):
                seen.add(f)
                changed = True
    return seen


def naive_eval(c, facet, phi, holds):
    """Direct recursive semantics; ``holds(c, index, atom)`` decides atoms."""
    index = {f: i for i, f in enumerate(c.facets)}

    def ev(f, phi):
        if isinstance(phi, Atom):
            return holds(c, index[f], phi)
        if isinstance(phi, Top):
            return True
        if isinstance(phi, Bottom):
            return False
        if isinstance(phi, Not):
            return not ev(f, phi.sub)
        if isinstance(phi, And):
            return all(ev(f, s) for s in phi.subs)
        if isinstance(phi, Or):
            return any(ev(f, s) for s in phi.subs)
        if isinstance(phi, Implies):
            return (not ev(f, phi.left)) or ev(f, phi.right)
        if isinstance(phi, K):
            return all(ev(g, phi.sub) for g in c.facets if same_face(c, f, g, [phi.agent]))
        if isinstance(phi, D):
            return all(ev(g, phi.sub) for g in c.facets if same_face(c, f, g, phi.group))
        if isinstance(phi, C):
            return all(ev(g, phi.sub) for g in reach(c, f, [[a] for a in phi.group]))
        if isinstance(phi, CD):
            return all(ev(g, phi.sub) for g in reach(c, f, phi.family))
        raise TypeError(phi)

    return ev(facet, phi)


def edge_count(c):
    g = nx.Graph()
    for f in c.facets:
        g.add_edges_from(combinations(sorted(f), 2))
    return g.number_of_edges()


def euler_2d(c):
    """V - E + F for a pure 2-dimensional complex."""
    return len(c.vertices) - edge_count(c) + len(c.facets)


def incidence_graph(c):
    g = nx.Graph()
    for vid, v in c.vertices.items():
        g.add_node(("v", vid), label=v.color)
    for i, f in enumerate(c.facets):
        g.add_node(("f", i), label="#facet")
        for vid in f:
            g.add_edge(("f", i), ("v", vid))
    return g


def isomorphic(c1, c2):
    """Color- and incidence-preserving isomorphism of two complexes."""
    return nx.is_isomorphic(
        incidence_graph(c1), incidence_graph(c2), node_match=lambda x, y: x["label"] == y["label"]
    )


def frames_isomorphic(f1, f2):
    def graph(f):
        g = nx.Graph()
        for w in f.worlds:
            g.add_node(("w", w), label="#world")
        for a, classes in f.classes.items():
            for k, cl in enumerate(classes):
                g.add_node(("c", a, k), label=a)
                for w in cl:
                    g.add_edge(("c", a, k), ("w", w))
        return g

    return nx.is_isomorphic(graph(f1), graph(f2), node_match=lambda x, y: x["label"] == y["label"])
