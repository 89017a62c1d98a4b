"""The graded algebra g = (C Id_V + l) |x V with V an abelian ideal.

Basis order: Id_V, then the l basis (coroots of the simple system, then
root vectors), then the V basis (degree-1 root vectors of s in table
order).  Degrees: Id and the l Cartan sit in degree 0, root vectors of l in
their l-degree, V_j in degree j.  Note V_0 lands in degree 0: the grading
is not the osculating level; the osculating level (V_j at level j+1) is
what the operator A = ad(v0) shifts by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cases import SubadjointCase
from .liecore import LieAlgebraTable, Subspace, check_jacobi
from .linalg import (
    SparseRationalMatrix,
    Vec,
    vec_add_scaled,
    vec_scale,
)


@dataclass
class GAlgebra:
    case: SubadjointCase
    table: LieAlgebraTable
    degree: list            # degree per basis index
    osc_level: list         # osculating level per basis index
    id_index: int
    l_offset: int           # first l basis index
    v_offset: int           # first V basis index
    l_basis_keys: tuple     # ("h", root) | ("e", root) per l position
    v0_index: int           # g-basis index of v0

    # index lists per distinguished subspace
    l1_indices: tuple
    lminus1_indices: tuple
    l0_indices: tuple        # includes the Cartan part of l
    V_level_indices: dict    # j -> tuple of g-basis indices

    def components(self) -> dict:
        out: dict[int, list] = {}
        for i, d in enumerate(self.degree):
            out.setdefault(d, []).append(i)
        return {d: tuple(v) for d, v in sorted(out.items())}

    def component_dims(self) -> dict:
        return {d: len(ix) for d, ix in self.components().items()}

    def gplus_indices(self) -> list:
        return [i for i, d in enumerate(self.degree) if d >= 1]

    def subspace(self, indices) -> Subspace:
        return Subspace.from_vectors(
            self.table.dim, [{i: Fraction(1)} for i in indices]
        )

    def ad_matrix(self, x: Vec) -> list:
        """Columns of ad(x) on g."""
        return self.table.ad_columns(x)


def build_g(case: SubadjointCase) -> GAlgebra:
    """Assemble the table of g from the ambient s, abelianizing V."""
    s = case.rs
    st = case.s_table
    l_keys = [("h", b) for b in case.l_simple_roots] + [
        ("e", r) for r in case.l_roots
    ]
    nl = len(l_keys)
    nV = case.dim_V
    dim = 1 + nl + nV
    l_offset, v_offset = 1, 1 + nl
    l_pos = {key: l_offset + i for i, key in enumerate(l_keys)}
    v_pos = {r: v_offset + i for i, r in enumerate(case.V_roots)}

    # l vectors in s coordinates, for bracketing inside s
    def l_vec_in_s(key) -> Vec:
        kind, r = key
        if kind == "h":
            return case.coroot_vec(r)
        return case.e(r)

    s_index_to_v = {case.root_index(r): v_pos[r] for r in case.V_roots}
    cartan_pos = {}  # s Cartan index -> decomposition over l simple coroots
    dvals = [s.form(b, b) / 2 for b in case.l_simple_roots]

    def l_root_coords(r):
        from .cases import _coords_in_simple_system
        return _coords_in_simple_system(s, r, list(case.l_simple_roots))

    def coroot_in_l_basis(r) -> Vec:
        # r^vee = sum k_i d(beta_i)/d(r) beta_i^vee for r = sum k_i beta_i
        ks = l_root_coords(r)
        dr = s.form(r, r) / 2
        out: Vec = {}
        for i, k in enumerate(ks):
            c = k * dvals[i] / dr
            if c:
                assert c.denominator == 1
                out[l_offset + i] = Fraction(c)
        return out

    def s_bracket_to_g(vec: Vec, *, in_l: bool) -> Vec:
        """Translate an s-coordinate bracket value into g coordinates."""
        out: Vec = {}
        if in_l:
            # split into Cartan part and root-vector part
            for k, c in vec.items():
                kind, data = _s_basis_kind(case, k)
                if kind == "e":
                    out[l_pos[("e", data)]] = c
            cart = {k: c for k, c in vec.items()
                    if _s_basis_kind(case, k)[0] == "h"}
            if cart:
                sol = _cartan_to_l(case, cart, l_offset)
                for k, c in sol.items():
                    out[k] = out.get(k, Fraction(0)) + c
        else:
            for k, c in vec.items():
                out[s_index_to_v[k]] = c
        return {k: c for k, c in out.items() if c}

    brackets: dict[tuple[int, int], Vec] = {}

    def put(i, j, vec):
        if not vec:
            return
        if i < j:
            brackets[(i, j)] = vec
        else:
            brackets[(j, i)] = {k: -v for k, v in vec.items()}

    # [Id, v] = v for v in V; [Id, l] = 0
    for r in case.V_roots:
        put(0, v_pos[r], {v_pos[r]: Fraction(1)})
    # [l, l] and [l, V]; [V, V] = 0 by construction of the semidirect product
    l_vecs = [l_vec_in_s(k) for k in l_keys]
    for i in range(nl):
        for j in range(i + 1, nl):
            b = st.bracket(l_vecs[i], l_vecs[j])
            put(l_offset + i, l_offset + j, s_bracket_to_g(b, in_l=True))
        for r in case.V_roots:
            b = st.bracket(l_vecs[i], case.e(r))
            put(l_offset + i, v_pos[r], s_bracket_to_g(b, in_l=False))

    labels = ["Id"] + [
        ("H" if k[0] == "h" else "x") + "".join(f"{c:+d}" for c in k[1])
        for k in l_keys
    ] + ["v" + "".join(f"{c:+d}" for c in r) for r in case.V_roots]
    table = LieAlgebraTable(dim=dim, labels=tuple(labels), brackets=brackets)

    degree = [0] * dim
    osc = [0] * dim
    for i, key in enumerate(l_keys):
        d = 0 if key[0] == "h" else case.l_degree[key[1]]
        degree[l_offset + i] = d
        osc[l_offset + i] = d
    for r in case.V_roots:
        j = case.V_root_level[r]
        degree[v_pos[r]] = j if j else 0
        osc[v_pos[r]] = j + 1

    l1_idx = tuple(l_pos[("e", r)] for r in case.l1_roots())
    lm1_idx = tuple(l_pos[("e", r)] for r in case.lminus1_roots())
    l0_idx = tuple(
        [l_pos[("h", b)] for b in case.l_simple_roots]
        + [l_pos[("e", r)] for r in case.l0_roots()]
    )
    vlev = {}
    for r in case.V_roots:
        vlev.setdefault(case.V_root_level[r], []).append(v_pos[r])
    g = GAlgebra(
        case=case,
        table=table,
        degree=degree,
        osc_level=osc,
        id_index=0,
        l_offset=l_offset,
        v_offset=v_offset,
        l_basis_keys=tuple(l_keys),
        v0_index=v_pos[case.v0_root],
        l1_indices=l1_idx,
        lminus1_indices=lm1_idx,
        l0_indices=l0_idx,
        V_level_indices={j: tuple(v) for j, v in sorted(vlev.items())},
    )
    _validate_g(g)
    return g


def _s_basis_kind(case, k):
    rank = case.rs.rank
    if k < rank:
        return ("h", k)
    return ("e", case.rs.all_roots()[k - rank])


def _cartan_to_l(case, cart: Vec, l_offset: int) -> Vec:
    """Express a Cartan vector of s lying in l over the simple coroots of l."""
    n = len(case.l_simple_roots)
    cols = [case.coroot_vec(b) for b in case.l_simple_roots]
    rows = []
    for k in range(case.rs.rank):
        row = {i: cols[i][k] for i in range(n) if k in cols[i]}
        if k in cart and cart[k]:
            row[n] = -cart[k]
        if row:
            rows.append(row)
    ker = SparseRationalMatrix.from_rows(rows, n + 1).kernel()
    sols = [s_ for s_ in ker if s_.get(n)]
    assert len(sols) == 1, "Cartan vector not in the coroot span of l"
    sol = vec_scale(sols[0], 1 / sols[0][n])
    return {l_offset + i: c for i, c in sol.items() if i < n and c}


def _validate_g(g: GAlgebra) -> None:
    case = g.case
    t = g.table
    dims = g.component_dims()
    d1 = case.dim_l1
    expected = {-1: d1, 0: 2 + (case.dim_l - 2 * d1), 1: 2 * d1, 2: d1, 3: 1}
    assert dims == expected, (dims, expected)

    # V abelian ideal: [V, V] = 0 and [g, V] in V
    vidx = set(range(g.v_offset, t.dim))
    for (i, j), vec in t.brackets.items():
        if i in vidx and j in vidx:
            raise AssertionError("V not abelian in g")
        if i in vidx or j in vidx:
            assert set(vec) <= vidx, "V not an ideal"
    # Id acts as the identity on V and zero on l
    for j in range(t.dim):
        b = t.bracket_basis(0, j)
        if j in vidx:
            assert b == {j: Fraction(1)}
        else:
            assert not b
    # degree additivity on basis brackets
    for (i, j), vec in t.brackets.items():
        dd = g.degree[i] + g.degree[j]
        for k in vec:
            assert g.degree[k] == dd, "grading not additive"


@dataclass
class OperatorA:
    """ad(v0) on g: squares to zero, shifts osculating level by one."""

    g: GAlgebra
    columns: list  # column j = A(e_j) as sparse Vec

    def apply(self, x: Vec) -> Vec:
        out: Vec = {}
        for j, c in x.items():
            vec_add_scaled(out, self.columns[j], c)
        return out

    def squared_is_zero(self) -> bool:
        return all(not self.apply(col) for col in self.columns)

    def level_shift_ok(self) -> bool:
        for j, col in enumerate(self.columns):
            for k in col:
                if self.g.osc_level[k] != self.g.osc_level[j] + 1:
                    return False
        return True


def operator_a(g: GAlgebra) -> OperatorA:
    v0 = {g.v0_index: Fraction(1)}
    return OperatorA(g=g, columns=[g.table.bracket(v0, {j: Fraction(1)})
                                   for j in range(g.table.dim)])


# --------------------------------------------------------------------------
# Structure identity suite
# --------------------------------------------------------------------------

@dataclass
class IdentityCheck:
    check_id: str
    status: str  # "PASS" | "FAIL"
    detail: dict = field(default_factory=dict)


def verify_structure_identities(g: GAlgebra) -> list[IdentityCheck]:
    """The bracket identities used by the vanishing argument, checked exactly.

    (a) [a + t a.v0, b + t b.v0] = 0 coefficientwise in t;
    (b) V_1 = {u in g_1 : [u, V_2] = 0};
    (c) l_1 and V_1 meet only in 0 inside g_1;
    (d) [v0, l_1] = V_1;
    (e) A^2 = 0, so exp(s v0) = Id + s A.
    """
    t = g.table
    out = []
    v0 = {g.v0_index: Fraction(1)}

    # (a): coefficients of t^0, t^1, t^2 vanish for all basis pairs in l_1
    bad = None
    dots = {a: t.bracket({a: Fraction(1)}, v0) for a in g.l1_indices}
    for a in g.l1_indices:
        for b in g.l1_indices:
            av, bv = {a: Fraction(1)}, {b: Fraction(1)}
            c0 = t.bracket(av, bv)
            c1 = t.bracket(av, dots[b])
            vec_add_scaled(c1, t.bracket(dots[a], bv), Fraction(1))
            c2 = t.bracket(dots[a], dots[b])
            if c0 or c1 or c2:
                bad = (a, b)
                break
        if bad:
            break
    out.append(IdentityCheck(
        "eII-coefficients", "FAIL" if bad else "PASS",
        {"witness": bad} if bad else {"pairs": len(g.l1_indices) ** 2},
    ))

    # (b): annihilator of V_2 inside g_1
    g1 = [i for i, d in enumerate(g.degree) if d == 1]
    V2 = list(g.V_level_indices[2])
    rows = []
    images = {u: [t.bracket_basis(u, w) for w in V2] for u in g1}
    coords = set()
    for u in g1:
        for im in images[u]:
            coords |= set(im)
    for w_i in range(len(V2)):
        for m in sorted(coords):
            row = {ui: images[u][w_i].get(m) for ui, u in enumerate(g1)}
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    ker = SparseRationalMatrix.from_rows(rows, len(g1)).kernel()
    ann_vecs = []
    for k in ker:
        ann_vecs.append({g1[i]: c for i, c in k.items()})
    ann = Subspace.from_vectors(t.dim, ann_vecs)
    V1 = g.subspace(g.V_level_indices[1])
    ok = ann == V1
    out.append(IdentityCheck(
        "v1-annihilator-of-v2", "PASS" if ok else "FAIL",
        {"annihilator_dim": ann.dim, "dim_V1": V1.dim},
    ))

    # (c): l_1 and V_1 transverse
    l1 = g.subspace(g.l1_indices)
    inter = l1.intersection(V1)
    out.append(IdentityCheck(
        "l1-V1-intersection", "PASS" if inter.is_zero() else "FAIL",
        {"intersection_dim": inter.dim},
    ))

    # (d): A l_1 = V_1
    A = operator_a(g)
    img = Subspace.from_vectors(
        t.dim, [A.columns[a] for a in g.l1_indices]
    )
    out.append(IdentityCheck(
        "v0-bracket-image", "PASS" if img == V1 else "FAIL",
        {"image_dim": img.dim},
    ))

    # (e): A^2 = 0 and the level shift
    sq = A.squared_is_zero()
    out.append(IdentityCheck("a-squared-zero", "PASS" if sq else "FAIL", {}))
    out.append(IdentityCheck(
        "a-level-shift", "PASS" if A.level_shift_ok() else "FAIL", {}
    ))
    return out


def verify_g_module_structure(g: GAlgebra) -> list[IdentityCheck]:
    """g_0-level checks: faithful action on g_1, quotient action, c functional."""
    t = g.table
    out = []
    g0 = [i for i, d in enumerate(g.degree) if d == 0]
    g1 = [i for i, d in enumerate(g.degree) if d == 1]
    pos_of_g1 = {u: k for k, u in enumerate(g1)}

    # ker(ad: g_0 -> gl(g_1)) = 0; 'grAut(g_+) -> GL(g_1) injective' at the
    # algebra level, using that g_1 generates g_+
    rows = []
    for u in g1:
        bycoord: dict[int, Vec] = {}
        for xi, x in enumerate(g0):
            br = t.bracket_basis(x, u)
            for m, c in br.items():
                bycoord.setdefault(m, {})[xi] = c
        rows.extend(bycoord.values())
    ker = SparseRationalMatrix.from_rows(rows, len(g0)).kernel()
    out.append(IdentityCheck(
        "ad-g0-faithful-on-g1", "PASS" if not ker else "FAIL",
        {"kernel_dim": len(ker)},
    ))

    # [g_0, V_1] stays in V_1 and the induced action on g_1/V_1 kills
    # V_0 + C Id, i.e. factors through l_0
    V1set = set(g.V_level_indices[1])
    ok_pres = True
    for x in g0:
        for u in g.V_level_indices[1]:
            if not set(t.bracket_basis(x, u)) <= V1set:
                ok_pres = False
    ok_factor = True
    killers = [g.id_index] + list(g.V_level_indices[0])
    for x in killers:
        for u in g1:
            br = t.bracket_basis(x, u)
            if any(k not in V1set for k in br):
                ok_factor = False
    out.append(IdentityCheck(
        "g0-preserves-tensor-split",
        "PASS" if (ok_pres and ok_factor) else "FAIL",
        {"V1_stable": ok_pres, "quotient_is_l0_action": ok_factor},
    ))

    # c functional inside g: [b, v0] = c(b) v0 for b in l_0
    ok_c = True
    vals = {}
    for x in g.l0_indices:
        br = t.bracket_basis(x, g.v0_index)
        if set(br) - {g.v0_index}:
            ok_c = False
        vals[t.labels[x]] = br.get(g.v0_index, Fraction(0))
    out.append(IdentityCheck(
        "c-functional", "PASS" if ok_c else "FAIL",
        {"nonzero_values": sum(1 for v in vals.values() if v)},
    ))
    return out


def g_jacobi_violations(g: GAlgebra) -> list:
    return check_jacobi(g.table)
