#!/usr/bin/env python3
"""Offline derivation of the frozen catalog fixtures (klein16, moebius12, rp11).

Prints each graph as an edge list over vertices 0..n-1. The C++ catalog embeds
the output and re-validates every property at test time, so this script is a
record of where the fixtures came from rather than a runtime dependency.

    python3 tools/derive_fixtures.py [--seed N]
"""
import argparse
import itertools
import random

import networkx as nx

NEIGHBOUR_OFFSETS = [(1, 0), (0, 1), (-1, 1)]


def union_find(points):
    parent = {p: p for p in points}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    return parent, find


def klein(length=4, k=2):
    """Triangular lattice modulo the glide g(a,b) = (a+b+L, -b) and t = (-k, 2k)."""

    def reduce(p):
        a, b = p
        s = b // (2 * k)
        a, b = a + s * k, b - 2 * s * k
        return (a % (2 * length), b)

    pts = [(a, b) for a in range(2 * length) for b in range(2 * k)]
    parent, find = union_find(pts)
    for p in pts:
        a, b = p
        parent[find(p)] = find(reduce((a + b + length, -b)))
    g = nx.Graph()
    for p in pts:
        g.add_node(find(p))
        for da, db in NEIGHBOUR_OFFSETS:
            q = find(reduce((p[0] + da, p[1] + db)))
            if q != find(p):
                g.add_edge(find(p), q)
    return g


def moebius(h=2, c=3):
    """Strip of rows 0..h, closed by phi(a,b) = (a+b+c mod h+2c, h-b)."""
    per = h + 2 * c
    pts = [(a, b) for a in range(per) for b in range(h + 1)]
    parent, find = union_find(pts)
    for a, b in pts:
        x, y = find((a, b)), find(((a + b + c) % per, h - b))
        if x != y:
            parent[x] = y
    g = nx.Graph()
    g.add_nodes_from({find(p) for p in pts})
    for a, b in pts:
        for da, db in NEIGHBOUR_OFFSETS:
            if 0 <= b + db <= h:
                g.add_edge(find((a, b)), find(((a + da) % per, b + db)))
    return g


RP2_6 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
         (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]


def barycentric(triangles):
    g = nx.Graph()
    for t in triangles:
        face = ("f",) + tuple(sorted(t))
        for v in t:
            g.add_edge(("v", v), face)
        for e in itertools.combinations(sorted(t), 2):
            g.add_edge(("e",) + e, face)
            for v in e:
                g.add_edge(("v", v), ("e",) + e)
    return g


def is_closed_surface(g):
    for v in g:
        rim = g.subgraph(g[v])
        if len(rim) < 4 or not nx.is_connected(rim) or any(d != 2 for _, d in rim.degree()):
            return False
    return True


def euler(g):
    counts = {}
    for q in nx.enumerate_all_cliques(g):
        counts[len(q)] = counts.get(len(q), 0) + 1
    return sum((-1) ** (k + 1) * c for k, c in counts.items())


def projective_plane(target=11, seed=0, tries=2000):
    """Contract edges of the barycentric subdivision of the 6-vertex projective
    plane while every rim stays a cycle of length >= 4."""
    rnd = random.Random(seed)
    start = barycentric(RP2_6)
    for _ in range(tries):
        g = start.copy()
        while len(g) > target:
            edges = list(g.edges())
            rnd.shuffle(edges)
            for u, v in edges:
                if len(set(g[u]) & set(g[v])) != 2:
                    continue
                h = nx.Graph(nx.contracted_nodes(g, u, v, self_loops=False))
                if is_closed_surface(h):
                    g = h
                    break
            else:
                break
        if len(g) == target:
            return g
    raise SystemExit("no projective plane of the requested size found")


def emit(name, g):
    g = nx.convert_node_labels_to_integers(g, ordering="sorted" if name != "rp11" else "default")
    edges = sorted(tuple(sorted(e)) for e in g.edges())
    print(f"{name}: {g.number_of_nodes()} vertices, {len(edges)} edges, euler {euler(g)}")
    print("  " + ", ".join(f"{{{u},{v}}}" for u, v in edges))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    emit("klein16", klein())
    emit("moebius12", moebius())
    emit("rp11", projective_plane(seed=args.seed))


if __name__ == "__main__":
    main()
