"""Cluster seeds, exchange matrices, mutation, exchange graphs.

A seed is a Z-basis psi of Z^n together with an integer skew form B
(so the form pairs u, v as u^T B v), a count r of unfrozen basis
vectors (always the first r), and positive integer multipliers d.  The
exchange matrix is eps_ij = psi_i^T B psi_j * d_j.

Mutation at an unfrozen index k replaces

    psi'_i = psi_i + [eps_ik]_+ psi_k   (i != k),
    psi'_k = -psi_k,

with [r]_+ = max(0, r), and leaves B, d and the frozen split alone.
Note this basis-level operation is not an involution: mutating twice
at k is the transvection psi''_i = psi_i + eps_ik psi_k.  The exchange
matrix, by contrast, does return to itself, which is the invariant the
tests quantify over.
"""

import json
import os
from dataclasses import dataclass

from .lattice import det, identity, is_unimodular, mat, vec_add, vec_neg, vec_scale


class SeedError(ValueError):
    pass


@dataclass(frozen=True)
class Seed:
    n: int
    r: int
    psi: tuple      # n vectors, each a tuple of n ints (columns of the basis)
    B: tuple        # n x n skew-symmetric integer matrix
    d: tuple        # n positive integers

    def __post_init__(self):
        validate_seed(self)


def validate_seed(s):
    if not (0 <= s.r <= s.n):
        raise SeedError("unfrozen count out of range")
    if len(s.psi) != s.n or any(len(p) != s.n for p in s.psi):
        raise SeedError("psi must be n vectors of length n")
    if len(s.B) != s.n or any(len(row) != s.n for row in s.B):
        raise SeedError("B must be n x n")
    for i in range(s.n):
        for j in range(s.n):
            if s.B[i][j] != -s.B[j][i]:
                raise SeedError("B must be skew-symmetric")
    if len(s.d) != s.n or any(di < 1 for di in s.d):
        raise SeedError("multipliers must be positive")
    basis = tuple(tuple(s.psi[j][i] for j in range(s.n)) for i in range(s.n))
    if not is_unimodular(basis):
        raise SeedError("psi must be a Z-basis (determinant +-1)")


def pairing(s, u, v):
    """u^T B v for the seed's skew form."""
    return sum(u[i] * s.B[i][j] * v[j] for i in range(s.n) for j in range(s.n))


@dataclass(frozen=True)
class ExchangeMatrix:
    eps: tuple

    def __post_init__(self):
        e = self.eps
        n = len(e)
        if any(len(row) != n for row in e):
            raise SeedError("exchange matrix must be square")


def exchange_matrix(s):
    eps = tuple(
        tuple(pairing(s, s.psi[i], s.psi[j]) * s.d[j] for j in range(s.n))
        for i in range(s.n)
    )
    return ExchangeMatrix(eps)


def is_skew_symmetrizable(eps, d):
    n = len(eps.eps)
    return all(
        d[i] * eps.eps[i][j] == -d[j] * eps.eps[j][i]
        for i in range(n) for j in range(n)
    )


def plus(r):
    return r if r > 0 else 0


def mutate(s, k):
    """Mutation at unfrozen index k (0-based)."""
    if not (0 <= k < s.r):
        raise SeedError("mutation only at unfrozen vectors")
    eps = exchange_matrix(s).eps
    new_psi = []
    for i in range(s.n):
        if i == k:
            new_psi.append(vec_neg(s.psi[k]))
        else:
            new_psi.append(vec_add(s.psi[i], vec_scale(plus(eps[i][k]), s.psi[k])))
    return Seed(s.n, s.r, tuple(new_psi), s.B, s.d)


def mutate_sequence(s, ks):
    for k in ks:
        s = mutate(s, k)
    return s


def matrix_mutation_oracle(em, k):
    """Matrix mutation computed directly on eps, independent of bases.

    eps'_ij = -eps_ij if k in {i,j}, else
              eps_ij + [eps_ik]_+ eps_kj + eps_ik [-eps_kj]_+.
    Used to cross-check mutate via exchange_matrix.
    """
    e = em.eps
    n = len(e)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-e[i][j])
            else:
                row.append(e[i][j] + plus(e[i][k]) * e[k][j] + e[i][k] * plus(-e[k][j]))
        out.append(tuple(row))
    return ExchangeMatrix(tuple(out))


def seed_equivalent(s1, s2):
    """Equality up to a permutation of the unfrozen (psi, d) pairs.

    The frozen part must match on the nose; B must be identical.
    """
    if (s1.n, s1.r) != (s2.n, s2.r):
        return False
    if s1.B != s2.B:
        return False
    if s1.psi[s1.r:] != s2.psi[s2.r:] or s1.d[s1.r:] != s2.d[s2.r:]:
        return False
    return sorted(zip(s1.psi[:s1.r], s1.d[:s1.r])) == sorted(zip(s2.psi[:s2.r], s2.d[:s2.r]))


def _canonical_key(s):
    unfrozen = tuple(sorted(zip(s.psi[:s.r], s.d[:s.r])))
    return (s.n, s.r, unfrozen, s.psi[s.r:], s.d[s.r:], s.B)


def serialize_seed(s):
    return {
        "rank": s.n,
        "unfrozen": s.r,
        "psi": [list(p) for p in s.psi],
        "B": [list(row) for row in s.B],
        "d": list(s.d),
    }


def deserialize_seed(doc):
    try:
        return Seed(
            int(doc["rank"]),
            int(doc["unfrozen"]),
            mat(doc["psi"]),
            mat(doc["B"]),
            tuple(int(x) for x in doc["d"]),
        )
    except (KeyError, TypeError) as e:
        raise SeedError("malformed seed document: %s" % e)


DEFAULT_BUDGET = 10000


def node_budget():
    raw = os.environ.get("CLUSTERMIRROR_BUDGET", "")
    try:
        return int(raw) if raw else DEFAULT_BUDGET
    except ValueError:
        raise SeedError("CLUSTERMIRROR_BUDGET must be an integer")


def exchange_graph(s, depth, max_nodes=None):
    """Breadth-first exchange graph out to the given mutation depth.

    Nodes are seeds up to unfrozen permutation; edges are labeled by the
    mutation index.  Output is deterministic: layers are explored in
    order and new nodes within a layer are sorted by their serialized
    form.  If the node budget is exceeded the graph is returned partial
    with truncated=True.
    """
    if max_nodes is None:
        max_nodes = node_budget()
    nodes = []            # seeds in discovery order
    index = {}            # canonical key -> node id
    edges = set()
    truncated = False

    key0 = _canonical_key(s)
    nodes.append(s)
    index[key0] = 0
    frontier = [0]
    for _ in range(depth):
        if truncated or not frontier:
            break
        discovered = []   # (sort key, seed, source id, mutation index)
        for nid in frontier:
            cur = nodes[nid]
            for k in range(cur.r):
                child = mutate(cur, k)
                ckey = _canonical_key(child)
                if ckey in index:
                    edges.add((nid, index[ckey], k))
                else:
                    discovered.append((json.dumps(serialize_seed(child), sort_keys=True),
                                       child, nid, k, ckey))
        discovered.sort(key=lambda item: item[0])
        frontier = []
        for _, child, src, k, ckey in discovered:
            if ckey in index:
                edges.add((src, index[ckey], k))
                continue
            if len(nodes) >= max_nodes:
                truncated = True
                continue
            cid = len(nodes)
            nodes.append(child)
            index[ckey] = cid
            frontier.append(cid)
            edges.add((src, cid, k))
    return {
        "nodes": [serialize_seed(x) for x in nodes],
        "edges": [
            {"source": a, "target": b, "mutation": k}
            for a, b, k in sorted(edges)
        ],
        "truncated": truncated,
    }
