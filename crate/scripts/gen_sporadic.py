#!/usr/bin/env python3
"""Generate graph6 files for the Higman-Sims and McLaughlin graphs.

Both graphs are built from the Steiner systems carried by the extended
binary Golay code, then checked for strong regularity before being written.
Usage: gen_sporadic.py <output-dir>
"""
import itertools
import sys
from pathlib import Path


def golay_octads():
    # cyclic [23,12] quadratic-residue code, extended by a parity bit
    g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]  # 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11
    basis = []
    for shift in range(12):
        w = [0] * 23
        for i, c in enumerate(g):
            if c:
                w[(i + shift) % 23] = 1
        w.append(sum(w) % 2)
        basis.append(int("".join(map(str, w)), 2))
    words = {0}
    for b in basis:
        words |= {w ^ b for w in words}
    assert len(words) == 4096
    octads = []
    for w in words:
        if bin(w).count("1") == 8:
            octads.append(frozenset(i for i in range(24) if (w >> (23 - i)) & 1))
    assert len(octads) == 759
    return octads


def srg_params(adj):
    n = len(adj)
    k = len(adj[0])
    if any(len(a) != k for a in adj):
        return None
    lam = mu = None
    for i in range(n):
        for j in range(i + 1, n):
            c = len(adj[i] & adj[j])
            if j in adj[i]:
                if lam is None:
                    lam = c
                elif lam != c:
                    return None
            else:
                if mu is None:
                    mu = c
                elif mu != c:
                    return None
    return (n, k, lam, mu)


def graph6(adj):
    n = len(adj)
    assert n < 258048
    out = bytearray()
    if n <= 62:
        out.append(n + 63)
    else:
        out.append(126)
        out += bytes([((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    bits = [1 if i in adj[j] else 0 for j in range(n) for i in range(j)]
    while len(bits) % 6:
        bits.append(0)
    for i in range(0, len(bits), 6):
        v = 0
        for b in bits[i : i + 6]:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out)


def higman_sims(octads):
    # S(3,6,22): octads through points 22 and 23
    hexads = [o - {22, 23} for o in octads if {22, 23} <= o]
    assert len(hexads) == 77
    verts = [("inf",)] + [("pt", p) for p in range(22)] + [("hx", h) for h in hexads]
    n = len(verts)
    adj = [set() for _ in range(n)]

    def edge(a, b):
        adj[a].add(b)
        adj[b].add(a)

    for a, b in itertools.combinations(range(n), 2):
        va, vb = verts[a], verts[b]
        kinds = (va[0], vb[0])
        if kinds == ("inf", "pt"):
            edge(a, b)
        elif kinds == ("pt", "hx") and va[1] in vb[1]:
            edge(a, b)
        elif kinds == ("hx", "hx") and not (va[1] & vb[1]):
            edge(a, b)
    return adj


def mclaughlin(octads):
    # S(4,7,23): octads through point 23; the point at infinity is 22
    heptads = sorted((o - {23} for o in octads if 23 in o), key=sorted)
    assert len(heptads) == 253
    points = list(range(22))
    n = len(points) + len(heptads)
    for rule in itertools.product([0, 1], repeat=6):
        pp, ph_in, pk_in, hh1, hk1, kk1 = rule
        adj = [set() for _ in range(n)]
        for a, b in itertools.combinations(range(n), 2):
            if b < 22:
                on = pp == 1
            elif a < 22:
                h = heptads[b - 22]
                inside = a in h
                on = inside == (ph_in == 1) if 22 in h else inside == (pk_in == 1)
            else:
                h1, h2 = heptads[a - 22], heptads[b - 22]
                meet1 = len(h1 & h2) == 1
                c1, c2 = 22 in h1, 22 in h2
                if c1 and c2:
                    on = meet1 == (hh1 == 1)
                elif c1 or c2:
                    on = meet1 == (hk1 == 1)
                else:
                    on = meet1 == (kk1 == 1)
            if on:
                adj[a].add(b)
                adj[b].add(a)
        if len(adj[0]) != 112 or any(len(x) != 112 for x in adj):
            continue
        p = srg_params(adj)
        if p == (275, 112, 30, 56):
            return adj
    raise SystemExit("no adjacency rule produced SRG(275,112,30,56)")


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    octads = golay_octads()
    hs = higman_sims(octads)
    assert srg_params(hs) == (100, 22, 0, 6)
    (out / "higman_sims.g6").write_bytes(graph6(hs) + b"\n")
    mcl = mclaughlin(octads)
    (out / "mclaughlin.g6").write_bytes(graph6(mcl) + b"\n")


if __name__ == "__main__":
    main()
