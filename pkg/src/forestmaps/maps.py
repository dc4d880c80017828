"""Brute-force ground truth on small rooted p-valent planar maps.

A rooted combinatorial map is a pair of permutations on darts 0..2E-1: the
vertex rotation sigma (counterclockwise order of darts around each vertex)
and the edge involution alpha, plus a root dart.  Enumeration fixes
alpha(d) = d XOR 1, which halves the search space, and searches over sigma
as a product of p-cycles, filtering by connectivity and genus 0.  Rooted
maps have no nontrivial automorphisms, so relabeling darts in the discovery
order of a deterministic traversal from the root gives a complete canonical
form; equality of canonical (sigma, alpha) arrays is map equality.

Everything here is a correctness instrument, not a production enumerator:
the scales are guarded and exceeding them raises :class:`ScaleGuardError`
with an estimated cost.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .exact import Q
from .upoly import UPoly

MAX_ORACLE_FACES = {3: 4, 4: 4}


class ScaleGuardError(ValueError):
    """Raised when an oracle call would exceed its desk-scale guard."""


@dataclass(frozen=True)
class CombMap:
    n_darts: int
    sigma: Tuple[int, ...]
    alpha: Tuple[int, ...]
    root_dart: int = 0

    def __post_init__(self):
        n = self.n_darts
        if sorted(self.sigma) != list(range(n)) or sorted(self.alpha) != list(range(n)):
            raise ValueError("sigma and alpha must be permutations of 0..n_darts-1")
        for d in range(n):
            if self.alpha[d] == d or self.alpha[self.alpha[d]] != d:
                raise ValueError("alpha must be a fixed-point-free involution")
        if not self._connected():
            raise ValueError("the permutation pair does not act transitively")

    def _connected(self) -> bool:
        seen = [False] * self.n_darts
        stack = [self.root_dart]
        seen[self.root_dart] = True
        count = 1
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if not seen[e]:
                    seen[e] = True
                    count += 1
                    stack.append(e)
        return count == self.n_darts

    # -- structure ---------------------------------------------------------

    def vertices(self) -> List[Tuple[int, ...]]:
        return _cycles(self.sigma)

    def edges(self) -> List[Tuple[int, int]]:
        return [(d, self.alpha[d]) for d in range(self.n_darts) if d < self.alpha[d]]

    def faces(self) -> List[Tuple[int, ...]]:
        comp = tuple(self.sigma[self.alpha[d]] for d in range(self.n_darts))
        return _cycles(comp)

    def genus(self) -> int:
        v = len(self.vertices())
        e = self.n_darts // 2
        f = len(self.faces())
        euler = v - e + f
        if euler % 2 != 0:
            raise ValueError("odd Euler characteristic; corrupt map")
        return (2 - euler) // 2

    def n_faces(self) -> int:
        return len(self.faces())

    def vertex_of(self) -> List[int]:
        """dart -> vertex index (vertices in cycle order of :meth:`vertices`)."""
        out = [0] * self.n_darts
        for i, cyc in enumerate(self.vertices()):
            for d in cyc:
                out[d] = i
        return out

    def root_edge(self) -> int:
        """Index into :meth:`edges` of the edge carrying the root dart."""
        r = self.root_dart
        for i, (a, b) in enumerate(self.edges()):
            if r in (a, b):
                return i
        raise AssertionError("unreachable")

    def canonical(self) -> "CombMap":
        """Relabel darts in BFS discovery order from the root (sigma first,
        then alpha); the result is the canonical representative of the
        rooted isomorphism class."""
        new = {self.root_dart: 0}
        order = [self.root_dart]
        head = 0
        while head < len(order):
            d = order[head]
            head += 1
            for e in (self.sigma[d], self.alpha[d]):
                if e not in new:
                    new[e] = len(order)
                    order.append(e)
        n = self.n_darts
        sigma = [0] * n
        alpha = [0] * n
        for old, lab in new.items():
            sigma[lab] = new[self.sigma[old]]
            alpha[lab] = new[self.alpha[old]]
        return CombMap(n, tuple(sigma), tuple(alpha), 0)

    def to_json(self) -> dict:
        return {
            "n_darts": self.n_darts,
            "sigma": list(self.sigma),
            "alpha": list(self.alpha),
            "root_dart": self.root_dart,
        }

    @staticmethod
    def from_json(obj) -> "CombMap":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return CombMap(
            obj["n_darts"], tuple(obj["sigma"]), tuple(obj["alpha"]), obj["root_dart"]
        )


def _cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _sigma_candidates(n_darts: int, p: int) -> Iterator[Tuple[int, ...]]:
    """All products of p-cycles on 0..n_darts-1, each cycle anchored at its
    smallest member (so each permutation is generated once)."""
    sigma = [-1] * n_darts
    unused = set(range(n_darts))

    def fill():
        if not unused:
            yield tuple(sigma)
            return
        anchor = min(unused)
        unused.discard(anchor)
        rest = sorted(unused)

        def choose(prev: int, depth: int, pool: List[int]):
            if depth == p - 1:
                sigma[prev] = anchor
                yield None
                sigma[prev] = -1
                return
            for x in list(pool):
                sigma[prev] = x
                pool.remove(x)
                unused.discard(x)
                yield from choose(x, depth + 1, pool)
                pool.append(x)
                unused.add(x)
                sigma[prev] = -1

        for _ in choose(anchor, 0, rest):
            yield from fill()
        unused.add(anchor)

    yield from fill()


def _raw_candidate_count(n_darts: int, p: int) -> int:
    v = n_darts // p
    count = factorial(n_darts)
    count //= factorial(p) ** v
    count //= factorial(v)
    return count * factorial(p - 1) ** v


def enumerate_maps(p: int, n_faces: int, guard: bool = True) -> List[CombMap]:
    """One canonical representative per rooted isomorphism class of
    connected planar p-valent maps with the given face count.

    The vertex count is forced by Euler's relation, v = 2(n_faces-2)/(p-2);
    an infeasible count yields the empty list.  Maps are rooted at dart 0.
    """
    if p < 3:
        raise ValueError("need p >= 3")
    if guard and (p not in MAX_ORACLE_FACES or n_faces > MAX_ORACLE_FACES[p]):
        raise ScaleGuardError(
            "oracle enumeration is guarded to p in %s with n_faces <= 4; "
            "p=%d, n_faces=%d would scan ~%s raw rotation systems"
            % (
                sorted(MAX_ORACLE_FACES),
                p,
                n_faces,
                _estimate(p, n_faces),
            )
        )
    num = 2 * (n_faces - 2)
    if n_faces < 2 or num <= 0 or num % (p - 2) != 0:
        return []
    v = num // (p - 2)
    n_darts = p * v
    seen = set()
    out = []
    for sigma in _sigma_candidates(n_darts, p):
        alpha = tuple(d ^ 1 for d in range(n_darts))
        if not _transitive(sigma, alpha, n_darts):
            continue
        comp = tuple(sigma[alpha[d]] for d in range(n_darts))
        f = len(_cycles(comp))
        if v - n_darts // 2 + f != 2:
            continue
        m = CombMap(n_darts, sigma, alpha, 0).canonical()
        key = (m.sigma, m.alpha)
        if key not in seen:
            seen.add(key)
            out.append(m)
    out.sort(key=lambda m: (m.sigma, m.alpha))
    return out


def _estimate(p: int, n_faces: int) -> str:
    num = 2 * (n_faces - 2)
    if num <= 0 or num % (p - 2) != 0:
        return "0"
    return "%.1e" % float(_raw_candidate_count(p * num // (p - 2), p))


def _transitive(sigma, alpha, n) -> bool:
    seen = [False] * n
    seen[0] = True
    stack = [0]
    cnt = 1
    while stack:
        d = stack.pop()
        for e in (sigma[d], alpha[d]):
            if not seen[e]:
                seen[e] = True
                cnt += 1
                stack.append(e)
    return cnt == n


# ---------------------------------------------------------------------------
# forests, Tutte polynomial, activities
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _acyclic(edge_ends: List[Tuple[int, int]], subset: Sequence[int], n_v: int) -> bool:
    uf = _UnionFind(n_v)
    for e in subset:
        a, b = edge_ends[e]
        if not uf.union(a, b):
            return False
    return True


def forest_poly(m: CombMap, exclude_root_edge: bool = False) -> UPoly:
    """Sum over acyclic edge subsets of u^(components - 1).

    A forest on all v vertices with k edges has v - k components.  With
    `exclude_root_edge`, only forests avoiding the root edge count (the
    root-edge-outside series H).
    """
    vert = m.vertex_of()
    edges = m.edges()
    ends = [(vert[a], vert[b]) for a, b in edges]
    n_v = len(m.vertices())
    ne = len(edges)
    banned = m.root_edge() if exclude_root_edge else -1
    counts = [0] * n_v  # counts[k] = number of forests with k edges
    for mask in range(1 << ne):
        if banned >= 0 and (mask >> banned) & 1:
            continue
        subset = [e for e in range(ne) if (mask >> e) & 1]
        if _acyclic(ends, subset, n_v):
            counts[len(subset)] += 1
    # k edges -> u^(v - k - 1)
    coeffs = [0] * n_v
    for k, c in enumerate(counts):
        coeffs[n_v - k - 1] += c
    return UPoly(coeffs)


def tutte_poly(m: CombMap) -> Dict[Tuple[int, int], object]:
    """Exact subset-expansion Tutte polynomial as {(mu_pow, nu_pow): coeff}."""
    vert = m.vertex_of()
    ends = [(vert[a], vert[b]) for a, b in m.edges()]
    n_v = len(m.vertices())
    ne = len(ends)
    out: Dict[Tuple[int, int], object] = {}
    for mask in range(1 << ne):
        uf = _UnionFind(n_v)
        k = 0
        for e in range(ne):
            if (mask >> e) & 1:
                uf.union(*ends[e])
                k += 1
        comps = len({uf.find(x) for x in range(n_v)})
        a = comps - 1  # c(S) - c(G), the map is connected
        b = k + comps - n_v  # cyclomatic number
        # expand (mu-1)^a (nu-1)^b
        for i in range(a + 1):
            ca = _binom(a, i) * (-1) ** (a - i)
            for j in range(b + 1):
                c = ca * _binom(b, j) * (-1) ** (b - j)
                key = (i, j)
                out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c != 0}


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def tutte_at_mu_1(m: CombMap) -> UPoly:
    """T_M(u+1, 1) as a polynomial in u: must equal :func:`forest_poly`."""
    tp = tutte_poly(m)
    coeffs: Dict[int, int] = {}
    # evaluate at nu = 1: collapse the nu exponent
    for (i, _j), c in tp.items():
        coeffs[i] = coeffs.get(i, 0) + c
    # now polynomial in mu; substitute mu = u + 1
    mu_poly = UPoly([coeffs.get(i, 0) for i in range(max(coeffs, default=0) + 1)])
    return mu_poly.from_mu()


def spanning_trees(m: CombMap) -> List[FrozenSet[int]]:
    vert = m.vertex_of()
    ends = [(vert[a], vert[b]) for a, b in m.edges()]
    n_v = len(m.vertices())
    ne = len(ends)
    if n_v == 1:
        return [frozenset()]
    out = []
    for mask in range(1 << ne):
        subset = [e for e in range(ne) if (mask >> e) & 1]
        if len(subset) == n_v - 1 and _acyclic(ends, subset, n_v):
            out.append(frozenset(subset))
    return out


def bernardi_tour_order(m: CombMap, tree: FrozenSet[int]) -> List[int]:
    """Edge order induced by walking around the spanning tree from the root.

    Motion on darts: from dart d, continue to sigma(alpha(d)) when the edge
    of d is in the tree, else to sigma(d).  Edges are ordered by the first
    time one of their darts is traversed.  This fixes one chirality; the
    activity counts it induces satisfy the Tutte identity, which is the
    property the package asserts (the mirror convention would too).
    """
    edge_of = [0] * m.n_darts
    for i, (a, b) in enumerate(m.edges()):
        edge_of[a] = edge_of[b] = i
    order: List[int] = []
    seen_edge = set()
    d = m.root_dart
    for _ in range(m.n_darts):
        e = edge_of[d]
        if e not in seen_edge:
            seen_edge.add(e)
            order.append(e)
        d = m.sigma[m.alpha[d]] if e in tree else m.sigma[d]
    if d != m.root_dart or len(order) != len(m.edges()):
        raise AssertionError("tour did not close after visiting every dart")
    return order


def bernardi_activities(m: CombMap, tree: FrozenSet[int]) -> Tuple[int, int]:
    """(internal, external) activity counts of a spanning tree under the
    tour order.

    A tree edge is internally active when it is tour-minimal in its
    fundamental cocycle; a non-tree edge is externally active when it is
    tour-minimal in its fundamental cycle.
    """
    vert = m.vertex_of()
    edges = m.edges()
    ends = [(vert[a], vert[b]) for a, b in edges]
    n_v = len(m.vertices())
    if not _acyclic(ends, sorted(tree), n_v) or len(tree) != n_v - 1:
        raise ValueError("the given edge set is not a spanning tree")
    order = bernardi_tour_order(m, tree)
    rank = {e: i for i, e in enumerate(order)}
    adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(n_v)}
    for e in tree:
        a, b = ends[e]
        adj[a].append((b, e))
        adj[b].append((a, e))
    internal = 0
    for e in tree:
        # fundamental cocycle: edges crossing the two components of tree - e
        side = _component_after_removal(adj, ends[e], e, n_v)
        cocycle = [
            f
            for f, (a, b) in enumerate(ends)
            if (a in side) != (b in side)
        ]
        if min(cocycle, key=lambda f: rank[f]) == e:
            internal += 1
    external = 0
    for e, (a, b) in enumerate(ends):
        if e in tree:
            continue
        path = _tree_path(adj, a, b, n_v)
        cycle = path + [e]
        if min(cycle, key=lambda f: rank[f]) == e:
            external += 1
    return internal, external


def _component_after_removal(adj, e_ends, e, n_v) -> set:
    start = e_ends[0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, f in adj[x]:
            if f != e and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _tree_path(adj, a, b, n_v) -> List[int]:
    """Edges on the tree path between vertices a and b (BFS)."""
    if a == b:
        return []
    prev = {a: (None, None)}
    queue = [a]
    head = 0
    while head < len(queue) and b not in prev:
        x = queue[head]
        head += 1
        for y, f in adj[x]:
            if y not in prev:
                prev[y] = (x, f)
                queue.append(y)
    path = []
    x = b
    while prev[x][0] is not None:
        path.append(prev[x][1])
        x = prev[x][0]
    return path


def activity_poly(m: CombMap) -> Dict[Tuple[int, int], int]:
    """Sum over spanning trees of mu^internal nu^external; equals the Tutte
    polynomial (the desk-scale instance of Bernardi's theorem)."""
    out: Dict[Tuple[int, int], int] = {}
    for tree in spanning_trees(m):
        i, e = bernardi_activities(m, tree)
        out[(i, e)] = out.get((i, e), 0) + 1
    return out


def oracle_f(p: int, n_faces: int, variant: str = "all_forests") -> UPoly:
    """The z^n_faces coefficient of F (or H), computed combinatorially.

    Variants: 'all_forests' sums u^(components-1) over forested maps,
    'tree_rooted_activity' sums (u+1)^internal over tree-rooted maps (the
    same polynomial by the activity description), 'root_edge_outside'
    restricts to forests avoiding the root edge (the series H).
    """
    maps = enumerate_maps(p, n_faces)
    if variant == "all_forests":
        total = UPoly()
        for m in maps:
            total = total + forest_poly(m)
        return total
    if variant == "root_edge_outside":
        total = UPoly()
        for m in maps:
            total = total + forest_poly(m, exclude_root_edge=True)
        return total
    if variant == "tree_rooted_activity":
        mu_coeffs: Dict[int, int] = {}
        for m in maps:
            for tree in spanning_trees(m):
                i, _ = bernardi_activities(m, tree)
                mu_coeffs[i] = mu_coeffs.get(i, 0) + 1
        mu_poly = UPoly([mu_coeffs.get(i, 0) for i in range(max(mu_coeffs, default=0) + 1)])
        return mu_poly.from_mu()
    raise ValueError("unknown oracle variant %r" % variant)
