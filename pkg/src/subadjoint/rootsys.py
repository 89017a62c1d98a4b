"""Root systems, Chevalley bases, and weight coordinate conversions.

Conventions fixed once for the whole package:

* Cartan matrix entry C[i][j] = 2(a_i, a_j)/(a_i, a_i), so the pairing of a
  vector x (in simple root coordinates) against the i-th simple coroot is
  (C @ x)[i].
* The symmetric form normalizes long roots to squared length 2.
* Positive roots are ordered by height, then lexicographically by
  coordinates; this fixes the total order used for extraspecial pairs and
  makes every table byte-reproducible.
* Structure constants follow the classical extraspecial-pair convention:
  N(xi, eta) = p + 1 > 0 when (xi, eta) is the extraspecial decomposition
  of its sum, all other constants derived through the Jacobi relations
  N(a,b) = -N(b,a), N(-a,-b) = -N(a,b), and the rotation identity for
  triples summing to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .liecore import LieAlgebraTable
from .linalg import mat_inverse, mat_vec

Root = tuple  # integer coordinates in the simple-root basis

_CLASSICAL_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

_RANK_RANGES = {
    "A": (1, 12),
    "B": (2, 12),
    "C": (2, 12),
    "D": (3, 12),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def cartan_matrix(series: str, rank: int) -> list[list[int]]:
    """Cartan matrix in Bourbaki numbering, C[i][j] = 2(a_i,a_j)/(a_i,a_i)."""
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def edge(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if series in ("A", "B", "C"):
        for i in range(rank - 1):
            edge(i, i + 1)
        if series == "B" and rank >= 2:
            # a_rank short: its row carries the -2
            edge(rank - 2, rank - 1, -1, -2)
        if series == "C" and rank >= 2:
            edge(rank - 2, rank - 1, -2, -1)
    elif series == "D":
        for i in range(rank - 2):
            edge(i, i + 1)
        if rank >= 2:
            edge(rank - 3 if rank > 2 else 0, rank - 1)
    elif series == "E":
        # chain a1-a3-a4-a5-a6(-a7-a8), a2 attached to a4
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for x, y in zip(chain, chain[1:]):
            edge(x, y)
        edge(1, 3)
    elif series == "F":
        # a1, a2 long; a3, a4 short; the short root's row carries the -2
        edge(0, 1)
        edge(1, 2, -1, -2)
        edge(2, 3)
    elif series == "G":
        # a1 short, a2 long; the short root's row carries the -3
        edge(0, 1, -3, -1)
    else:
        raise ValueError(f"unknown series {series!r}")
    return C


def _simple_root_half_lengths(C: list[list[int]]) -> list[Fraction]:
    """d_i = (a_i,a_i)/2 normalized so long roots have squared length 2."""
    n = len(C)
    d = [None] * n
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i != j and C[i][j] and d[i] is not None and d[j] is None:
                    # d_i C[i][j] = d_j C[j][i]
                    d[j] = d[i] * Fraction(C[i][j], C[j][i])
                    changed = True
    if any(x is None for x in d):
        raise ValueError("disconnected Cartan matrix in simple type builder")
    top = max(d)
    return [x / top for x in d]


@dataclass(frozen=True)
class RootSystem:
    """Immutable root data for one simple type."""

    series: str
    rank: int
    cartan: tuple
    positive_roots: tuple
    highest_root: Root
    half_lengths: tuple  # d_i = (a_i, a_i)/2, long roots normalized to 1

    @property
    def type_label(self) -> str:
        return f"{self.series}{self.rank}"

    def pairing(self, x, i: int) -> Fraction:
        """<x, a_i^vee> for x in simple-root coordinates."""
        return sum(Fraction(self.cartan[i][j]) * x[j] for j in range(self.rank))

    def form(self, x, y) -> Fraction:
        """(x, y) with long roots of squared length 2."""
        total = Fraction(0)
        for i in range(self.rank):
            if not x[i]:
                continue
            row = self.cartan[i]
            di = self.half_lengths[i]
            for j in range(self.rank):
                if y[j]:
                    total += Fraction(x[i]) * Fraction(y[j]) * di * row[j]
        return total

    def is_root(self, x) -> bool:
        return tuple(x) in self._root_set()

    @lru_cache(maxsize=None)
    def _root_set(self) -> frozenset:
        neg = tuple(tuple(-c for c in r) for r in self.positive_roots)
        return frozenset(self.positive_roots) | frozenset(neg)

    def all_roots(self) -> list[Root]:
        """Positive roots in table order, then their negatives."""
        neg = [tuple(-c for c in r) for r in self.positive_roots]
        return list(self.positive_roots) + neg

    def coroot_coords(self, alpha) -> tuple:
        """alpha^vee = sum_i c_i a_i^vee; returns integer c_i."""
        dalpha = self.form(alpha, alpha) / 2
        out = []
        for i in range(self.rank):
            c = Fraction(alpha[i]) * self.half_lengths[i] / dalpha
            if c.denominator != 1:
                raise ValueError("non-integral coroot coefficient")
            out.append(int(c))
        return tuple(out)


def _parse_label(label: str) -> tuple[str, int]:
    label = label.strip()
    if not label or label[0].upper() not in _RANK_RANGES:
        raise ValueError(f"unknown Dynkin label {label!r}")
    series = label[0].upper()
    try:
        rank = int(label[1:])
    except ValueError:
        raise ValueError(f"unknown Dynkin label {label!r}") from None
    lo, hi = _RANK_RANGES[series]
    if not lo <= rank <= hi:
        raise ValueError(f"rank {rank} out of range for type {series}")
    return series, rank


def root_height(r) -> int:
    return sum(r)


def build_root_system(label: str) -> RootSystem:
    """Construct the positive roots of a simple type by string closure."""
    series, rank = _parse_label(label)
    C = cartan_matrix(series, rank)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    known = set(simple)
    layers = [sorted(simple)]
    while True:
        nxt = set()
        for beta in layers[-1]:
            for i in range(rank):
                # p = how far the a_i-string through beta extends downwards;
                # every candidate has smaller height, hence is already known
                p = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in known:
                        p += 1
                    else:
                        break
                pair = sum(C[i][j] * beta[j] for j in range(rank))
                if p - pair > 0:
                    cand = tuple(b + int(i == j) for j, b in enumerate(beta))
                    nxt.add(cand)
        if not nxt:
            break
        known |= nxt
        layers.append(sorted(nxt))
    positives = tuple(r for layer in layers for r in sorted(layer))
    expected = _CLASSICAL_POSITIVE_COUNTS[series](rank)
    if len(positives) != expected:
        raise AssertionError(
            f"{label}: closure produced {len(positives)} positive roots, "
            f"expected {expected}"
        )
    top_height = max(root_height(r) for r in positives)
    tops = [r for r in positives if root_height(r) == top_height]
    assert len(tops) == 1, "highest root must be unique"
    theta = tops[0]
    assert all(all(theta[i] >= r[i] for i in range(rank)) for r in positives)
    d = _simple_root_half_lengths(C)
    return RootSystem(
        series=series,
        rank=rank,
        cartan=tuple(tuple(row) for row in C),
        positive_roots=positives,
        highest_root=theta,
        half_lengths=tuple(d),
    )


# --------------------------------------------------------------------------
# Weight coordinates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightVector:
    """Weight with an explicit basis tag (fundamental or simple-root)."""

    coords: tuple
    basis: str  # "fundamental" | "simple"

    def __post_init__(self):
        if self.basis not in ("fundamental", "simple"):
            raise ValueError(f"unknown weight basis {self.basis!r}")


def _cartan_inverse(rs: RootSystem):
    return mat_inverse([[Fraction(v) for v in row] for row in rs.cartan])


def to_simple_root_coords(w: WeightVector, rs: RootSystem) -> WeightVector:
    """Fundamental-weight coordinates -> exact simple-root coordinates."""
    if w.basis == "simple":
        return w
    coords = mat_vec(_cartan_inverse(rs), [Fraction(c) for c in w.coords])
    return WeightVector(tuple(coords), "simple")


def to_fundamental_coords(w: WeightVector, rs: RootSystem) -> WeightVector:
    if w.basis == "fundamental":
        return w
    coords = [rs.pairing(w.coords, i) for i in range(rs.rank)]
    return WeightVector(tuple(coords), "fundamental")


# --------------------------------------------------------------------------
# Chevalley structure constants
# --------------------------------------------------------------------------

def _root_order_key(rs: RootSystem, r: Root):
    return (root_height(r), r)


def _string_down(rs: RootSystem, beta: Root, alpha: Root) -> int:
    """Largest p with beta - p*alpha a root."""
    p = 0
    cur = beta
    while True:
        cur = tuple(c - a for c, a in zip(cur, alpha))
        if rs.is_root(cur):
            p += 1
        else:
            return p


class ChevalleyConstants:
    """All N(a, b) for a Chevalley basis, built by the height recursion."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._memo: dict[tuple[Root, Root], Fraction] = {}
        self._extraspecial: dict[Root, tuple[Root, Root]] = {}
        self._build_extraspecial()

    def _build_extraspecial(self):
        rs = self.rs
        order = {r: _root_order_key(rs, r) for r in rs.positive_roots}
        by_sum: dict[Root, list[tuple[Root, Root]]] = {}
        pos = set(rs.positive_roots)
        for a in rs.positive_roots:
            for g in rs.positive_roots:
                b = tuple(x - y for x, y in zip(g, a))
                if b in pos and order[a] <= order[b]:
                    by_sum.setdefault(g, []).append((a, b))
        for g, pairs in by_sum.items():
            self._extraspecial[g] = min(pairs, key=lambda ab: order[ab[0]])

    def n(self, a: Root, b: Root) -> Fraction:
        """Structure constant in [e_a, e_b] = N(a,b) e_{a+b}."""
        rs = self.rs
        s = tuple(x + y for x, y in zip(a, b))
        if not rs.is_root(s):
            return Fraction(0)
        key = (a, b)
        if key in self._memo:
            return self._memo[key]
        val = self._compute(a, b, s)
        self._memo[key] = val
        self._memo[(b, a)] = -val
        return val

    def _compute(self, a: Root, b: Root, s: Root) -> Fraction:
        rs = self.rs
        apos = root_height(a) > 0
        bpos = root_height(b) > 0
        if apos and bpos:
            if _root_order_key(rs, a) > _root_order_key(rs, b):
                return -self.n(b, a)
            xi, eta = self._extraspecial[s]
            if (a, b) == (xi, eta):
                return Fraction(_string_down(rs, b, a) + 1)
            # Jacobi on (e_{-xi}, e_a, e_b); every constant on the right has
            # strictly smaller height data, so the recursion terminates.
            lhs_coef = self.n(s, tuple(-x for x in xi))
            rhs = Fraction(0)
            amx = tuple(x - y for x, y in zip(a, xi))
            if rs.is_root(amx):
                rhs -= self.n(tuple(-x for x in xi), a) * self.n(amx, b)
            bmx = tuple(x - y for x, y in zip(b, xi))
            if rs.is_root(bmx):
                rhs -= self.n(b, tuple(-x for x in xi)) * self.n(bmx, a)
            assert lhs_coef, "extraspecial constant vanished"
            return rhs / lhs_coef
        if not apos and not bpos:
            return -self.n(tuple(-x for x in a), tuple(-x for x in b))
        if not apos:  # make the first argument positive
            return -self.n(b, a)
        # a positive, b negative
        mu = tuple(-x for x in b)
        diff = tuple(x - y for x, y in zip(a, mu))  # = s
        if root_height(diff) > 0:
            # triple (s, mu, -a): N(a,-mu) = N(s,mu) (s,s)/(a,a)
            return self.n(diff, mu) * rs.form(diff, diff) / rs.form(a, a)
        u = tuple(-x for x in diff)
        # triple (a, u, -mu): N(a,-mu) = -N(a,u) (u,u)/(mu,mu)
        return -self.n(a, u) * rs.form(u, u) / rs.form(mu, mu)


def ordered_basis(rs: RootSystem) -> list[tuple]:
    """Basis layout: ('h', i) for the Cartan, then ('e', root)."""
    return [("h", i) for i in range(rs.rank)] + [
        ("e", r) for r in rs.all_roots()
    ]


def chevalley_table(rs: RootSystem) -> LieAlgebraTable:
    """Integer structure-constant table for the simple algebra of rs.

    Basis: h_1..h_rank, then e_alpha over all roots (positives in closure
    order, then negatives).  Deterministic: two calls on equal input give
    identical tables.
    """
    basis = ordered_basis(rs)
    index = {key: i for i, key in enumerate(basis)}
    nconst = ChevalleyConstants(rs)
    dim = len(basis)
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}

    def put(i: int, j: int, vec: dict[int, Fraction]):
        if not vec:
            return
        if i < j:
            brackets[(i, j)] = vec
        else:
            brackets[(j, i)] = {k: -v for k, v in vec.items()}

    roots = rs.all_roots()
    for r in roots:
        er = index[("e", r)]
        for i in range(rs.rank):
            c = rs.pairing(r, i)
            assert c.denominator == 1
            if c:
                put(index[("h", i)], er, {er: Fraction(c)})
    for ia, a in enumerate(roots):
        ea = index[("e", a)]
        for b in roots[ia + 1 :]:
            eb = index[("e", b)]
            s = tuple(x + y for x, y in zip(a, b))
            if not any(s):
                cor = rs.coroot_coords(a)
                put(ea, eb, {index[("h", i)]: Fraction(c)
                             for i, c in enumerate(cor) if c})
            elif rs.is_root(s):
                c = nconst.n(a, b)
                assert c.denominator == 1 and c != 0
                put(ea, eb, {index[("e", s)]: c})
    labels = tuple(
        f"h{i + 1}" if kind == "h" else "e" + "".join(f"{c:+d}" for c in data)
        for kind, data in ((k[0], k[1]) for k in basis)
    )
    return LieAlgebraTable(dim=dim, labels=labels, brackets=brackets)


def structure_constant(rs: RootSystem, a: Root, b: Root) -> Fraction:
    """Public N(a, b) accessor (fresh recursion; intended for tests)."""
    return ChevalleyConstants(rs).n(a, b)


def string_length_down(rs: RootSystem, beta: Root, alpha: Root) -> int:
    return _string_down(rs, beta, alpha)


# --------------------------------------------------------------------------
# Dynkin diagram classification of sub-root-systems
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DynkinComponent:
    """One simple factor of a (possibly reducible) diagram.

    `nodes` lists the member indices of the input Cartan matrix in Bourbaki
    order for the detected type.
    """

    series: str
    rank: int
    nodes: tuple

    @property
    def type_label(self) -> str:
        return f"{self.series}{self.rank}"


def _components(adjacent: list[list[int]]) -> list[list[int]]:
    n = len(adjacent)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adjacent[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def classify_dynkin(cartan: list[list]) -> list[DynkinComponent]:
    """Classify an integer Cartan matrix into simple components.

    Supports the types that arise as degree-zero subdiagrams here: A, B, C,
    D, E, F4, G2.  Single nodes come back as A1 and the B2/C2 coincidence is
    normalized to B2 (first node long).
    """
    n = len(cartan)
    adj = [[j for j in range(n) if j != i and cartan[i][j]] for i in range(n)]
    comps = []
    for nodes in _components(adj):
        comps.append(_classify_component(cartan, nodes, adj))
    return comps


def _classify_component(C, nodes, adj) -> DynkinComponent:
    k = len(nodes)
    if k == 1:
        return DynkinComponent("A", 1, tuple(nodes))
    local_adj = {v: [w for w in adj[v] if w in nodes] for v in nodes}
    mults = {
        (v, w): C[v][w] * C[w][v] for v in nodes for w in local_adj[v]
    }
    maxmult = max(mults.values())
    degrees = {v: len(local_adj[v]) for v in nodes}
    ends = sorted(v for v in nodes if degrees[v] == 1)

    def walk_path(start):
        path = [start]
        prev = None
        cur = start
        while True:
            nxt = [w for w in local_adj[cur] if w != prev]
            if not nxt:
                return path
            assert len(nxt) == 1
            prev, cur = cur, nxt[0]
            path.append(cur)

    if maxmult == 3:
        assert k == 2, "triple edge only in G2"
        # Bourbaki G2: a1 short, a2 long; the short root's row holds the -3
        a, b = nodes
        if C[a][b] == -3:
            return DynkinComponent("G", 2, (a, b))
        return DynkinComponent("G", 2, (b, a))

    if maxmult == 2:
        assert max(degrees.values()) <= 2 and len(ends) == 2, \
            "double edge requires a path"
        path = walk_path(ends[0])
        dbl = [(path[i], path[i + 1]) for i in range(k - 1)
               if mults[(path[i], path[i + 1])] == 2]
        assert len(dbl) == 1
        i = path.index(dbl[0][0])
        if k == 2:
            # B2 = C2: normalize to B2, long root first
            v, w = path
            if C[v][w] == -2:  # v short: flip so the long root leads
                path = [w, v]
            return DynkinComponent("B", 2, tuple(path))
        if i + 1 == k - 1 or i == 0:
            # double edge at an end; orient the path so it sits at the tail
            if i == 0:
                path = path[::-1]
            v, w = path[-2], path[-1]
            # short root's row carries the -2 toward the long neighbor
            if C[w][v] == -2:
                return DynkinComponent("B", k, tuple(path))
            return DynkinComponent("C", k, tuple(path))
        assert k == 4, "interior double edge only in F4"
        v, w = path[1], path[2]
        if C[v][w] == -1:  # long side first (Bourbaki F4: a2 long, a3 short)
            return DynkinComponent("F", 4, tuple(path))
        return DynkinComponent("F", 4, tuple(path[::-1]))

    # simply laced
    branch = [v for v in nodes if degrees[v] == 3]
    if not branch:
        path = walk_path(ends[0])
        alt = walk_path(ends[1])
        return DynkinComponent("A", k, tuple(min(path, alt)))
    assert len(branch) == 1, "only one branch node in A-D-E"
    b = branch[0]
    tails = []
    for w in sorted(local_adj[b]):
        tail = [w]
        prev = b
        cur = w
        while True:
            nxt = [x for x in local_adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            tail.append(cur)
        tails.append(tail)
    tails.sort(key=len)
    l1, l2, l3 = (len(t) for t in tails)
    if l1 == 1 and l2 == 1:
        # D_k: long tail reversed, then branch, then the two short tails
        long = tails[2]
        order = list(reversed(long)) + [b] + [tails[0][0], tails[1][0]]
        return DynkinComponent("D", k, tuple(order))
    assert (l1, l2) == (1, 2) and k in (6, 7, 8), "unrecognized diagram"
    # E_k in Bourbaki order: a1 a3 a4 a5 ... on the long path, a2 the stub
    arm2, arm_long = tails[1], tails[2]
    order = [arm2[1], tails[0][0], arm2[0], b] + arm_long
    return DynkinComponent("E", k, tuple(order))


def node_orbit(series: str, rank: int, idx: int) -> frozenset:
    """Orbit of a node index (0-based, Bourbaki) under diagram automorphisms."""
    if series == "A":
        return frozenset({idx, rank - 1 - idx})
    if series == "D":
        if rank == 4 and idx in (0, 2, 3):
            return frozenset({0, 2, 3})
        if idx in (rank - 2, rank - 1):
            return frozenset({rank - 2, rank - 1})
    if series == "E" and rank == 6:
        flip = {0: 5, 5: 0, 2: 4, 4: 2, 1: 1, 3: 3}
        return frozenset({idx, flip[idx]})
    return frozenset({idx})
