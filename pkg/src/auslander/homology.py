"""Minimal resolutions, Ext, global and dominant dimension, idempotent ideals."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .algebra import BasedAlgebra, corner, opposite, quotient_algebra, trace_ideal
from .modcat import (Module, ModuleMap, direct_sum, dualize, hom_basis, indecomposable_isomorphism,
                     induced_rank, injective, kernel_of, lift_module, projective, regular, restrict_to_corner,
                     simple, cogenerator)

DEFAULT_CUTOFF = 20


class ResolutionError(RuntimeError):
    pass


@dataclass(frozen=True)
class DimensionResult:
    kind: str          # "exact" or "at-least"
    value: int
    cutoff: Optional[int] = None

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    def at_least(self, n: int) -> bool:
        return self.value >= n

    def __str__(self):
        return f"= {self.value}" if self.exact else f">= {self.value}"


@dataclass
class Resolution:
    """A minimal projective or injective resolution, possibly truncated.

    Projective: ``maps[0]: P_0 -> M`` and ``maps[i]: P_i -> P_{i-1}``.
    Injective: ``maps[0]: M -> I_0`` and ``maps[i]: I_{i-1} -> I_i``.
    ``vertices[i]`` lists the vertex of each indecomposable summand of term i.
    """

    direction: str
    base: Module
    terms: list[Module]
    maps: list[np.ndarray]
    vertices: list[list[int]]
    truncated: bool
    cutoff: int
    minimal: bool = True
    syzygy_dims: list[int] = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        """Index of the last nonzero term (-1 for the zero module)."""
        return len(self.terms) - 1

    def multiplicities(self, i: int) -> list[int]:
        k = self.base.algebra.num_vertices
        out = [0] * k
        for v in self.vertices[i]:
            out[v] += 1
        return out

    def check_exact(self):
        F = self.base.field
        if not self.terms:
            if self.base.dim:
                raise ResolutionError("empty resolution of a nonzero module")
            return
        proj = self.direction == "projective"
        ranks = [F.rank(m) for m in self.maps]
        dims = [t.dim for t in self.terms]
        if ranks[0] != self.base.dim:
            raise ResolutionError("augmentation is not " + ("surjective" if proj else "injective"))
        for i in range(1, len(self.maps)):
            comp = F.mul(self.maps[i - 1], self.maps[i]) if proj else F.mul(self.maps[i], self.maps[i - 1])
            if np.any(comp):
                raise ResolutionError(f"maps at joint {i} do not compose to zero")
        for i in range(len(self.terms)):
            # exactness at term i: rank(out of) + rank(into) = dim
            if proj:
                r_in = ranks[i + 1] if i + 1 < len(ranks) else (dims[i] - ranks[i] if self.truncated and i == len(dims) - 1 else 0)
                r_out = ranks[i]
            else:
                r_in = ranks[i]
                r_out = ranks[i + 1] if i + 1 < len(ranks) else (dims[i] - ranks[i] if self.truncated and i == len(dims) - 1 else 0)
            if r_in + r_out != dims[i]:
                raise ResolutionError(f"resolution not exact at term {i}")


# ---------------------------------------------------------------------------
# covers and envelopes


def top_generators(M: Module) -> list[tuple[int, np.ndarray]]:
    """Lifts of a basis of ``M / rad M``, as (vertex, vector) pairs."""
    A, F = M.algebra, M.field
    out = []
    rad_cols = [M.act(g) for g in A.radical]
    radM = np.hstack(rad_cols) if rad_cols and M.dim else np.zeros((M.dim, 0), dtype=np.int64)
    for v in range(A.num_vertices):
        if M.dims[v] == 0:
            continue
        sub = F.column_space(radM[M.block(v), :]) if radM.shape[1] else np.zeros((M.dims[v], 0), np.int64)
        for c in F.complement_columns(sub, M.dims[v]):
            x = np.zeros(M.dim, dtype=np.int64)
            x[M.offsets[v] + c] = 1
            out.append((v, x))
    return out


def projective_cover(M: Module) -> tuple[ModuleMap, list[int]]:
    """Minimal projective cover ``P -> M`` and the vertex of each summand of ``P``."""
    A, F = M.algebra, M.field
    gens = top_generators(M)
    if not gens:
        from .modcat import zero_module
        Z = zero_module(A)
        return ModuleMap(Z, M, np.zeros((M.dim, 0), dtype=np.int64)), []
    projs = [projective(A, v) for v, _ in gens]
    ds = direct_sum(projs)
    mat = np.zeros((M.dim, ds.module.dim), dtype=np.int64)
    for (v, x), P, pr in zip(gens, projs, ds.projections):
        cols = np.stack([M.act(b) @ x for b in P.basis_indices], axis=1) % F.p
        mat = (mat + cols @ pr) % F.p
    return ModuleMap(ds.module, M, mat), [v for v, _ in gens]


def injective_envelope(M: Module) -> tuple[ModuleMap, list[int]]:
    """Minimal injective envelope ``M -> I``, computed through the dual cover."""
    cover, verts = projective_cover(dualize(M))
    I = dualize(cover.source)
    return ModuleMap(M, I, cover.matrix.T.copy()), verts


# ---------------------------------------------------------------------------
# resolutions


def _projective_resolution(M: Module, cutoff: int) -> Resolution:
    F = M.field
    terms, maps, verts, syz = [], [], [], []
    cur, inc = M, F.eye(M.dim)
    for _ in range(cutoff + 1):
        if cur.dim == 0:
            break
        cover, vs = projective_cover(cur)
        terms.append(cover.source)
        verts.append(vs)
        maps.append(F.mul(inc, cover.matrix))
        cur, inc = kernel_of(cover)
        syz.append(cur.dim)
    res = Resolution("projective", M, terms, maps, verts, truncated=cur.dim > 0, cutoff=cutoff, syzygy_dims=syz)
    res.last_syzygy = cur
    res.check_exact()
    return res


def min_resolution(M: Module, direction: str = "projective", cutoff: int = DEFAULT_CUTOFF) -> Resolution:
    """Minimal projective or injective resolution computed up to term ``cutoff``."""
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    if direction in ("proj", "projective"):
        key = "projres"
        cached = M._cache.get(key)
        if cached is not None and (not cached.truncated or cached.cutoff >= cutoff):
            return _truncate(cached, cutoff)
        res = _projective_resolution(M, cutoff)
        M._cache[key] = res
        return res
    if direction in ("inj", "injective"):
        key = "injres"
        cached = M._cache.get(key)
        if cached is not None and (not cached.truncated or cached.cutoff >= cutoff):
            return _truncate(cached, cutoff)
        dual = min_resolution(dualize(M), "projective", cutoff)
        terms = [dualize(P) for P in dual.terms]
        maps = [m.T.copy() for m in dual.maps]
        res = Resolution("injective", M, terms, maps, dual.vertices, dual.truncated, cutoff,
                         syzygy_dims=dual.syzygy_dims)
        res.check_exact()
        M._cache[key] = res
        return res
    raise ValueError(f"unknown direction {direction!r}")


def _truncate(res: Resolution, cutoff: int) -> Resolution:
    if len(res.terms) <= cutoff + 1:
        if res.cutoff == cutoff or not res.truncated:
            return res
    n = min(len(res.terms), cutoff + 1)
    truncated = res.truncated or len(res.terms) > cutoff + 1
    return Resolution(res.direction, res.base, res.terms[:n], res.maps[:n], res.vertices[:n], truncated, cutoff,
                      syzygy_dims=res.syzygy_dims[:n])


def projective_dimension(M: Module, cutoff: int = DEFAULT_CUTOFF) -> DimensionResult:
    res = min_resolution(M, "projective", cutoff)
    if res.truncated:
        return DimensionResult("at-least", cutoff, cutoff)
    return DimensionResult("exact", max(res.length, 0))


# ---------------------------------------------------------------------------
# Ext


def _cochain_rank(P: Module, d: np.ndarray, N: Module) -> int:
    """Rank of ``Hom(P, N) -> Hom(Q, N)``, ``phi -> phi∘d`` for ``d: Q -> P``."""
    F = N.field
    return induced_rank([F.mul(phi, d) for phi in hom_basis(P, N)], F)


def ext_dim(i: int, M: Module, N: Module, cutoff: Optional[int] = None) -> int:
    """``dim Ext^i(M, N)`` from a minimal projective resolution of ``M``."""
    if i < 0:
        raise ValueError("negative Ext degree")
    if M.algebra is not N.algebra:
        raise ValueError("Ext between modules over different algebras")
    need = i + 1
    cutoff = need if cutoff is None else cutoff
    if cutoff < need:
        raise ResolutionError(f"Ext^{i} needs a resolution up to term {need}; raise the cutoff")
    res = min_resolution(M, "projective", cutoff)
    if i >= len(res.terms):
        return 0
    P = res.terms[i]
    dim_hom = hom_basis(P, N).dim
    r_out = _cochain_rank(P, res.maps[i + 1], N) if i + 1 < len(res.terms) else 0
    r_in = _cochain_rank(res.terms[i - 1], res.maps[i], N) if i >= 1 else 0
    return dim_hom - r_out - r_in


# ---------------------------------------------------------------------------
# global and dominant dimension


def global_dimension(A: BasedAlgebra, cutoff: int = DEFAULT_CUTOFF) -> DimensionResult:
    best = 0
    for v in range(A.num_vertices):
        pd = projective_dimension(simple(A, v), cutoff)
        if not pd.exact:
            return DimensionResult("at-least", cutoff, cutoff)
        best = max(best, pd.value)
    return DimensionResult("exact", best)


def projective_injective_vertices(A: BasedAlgebra) -> dict[int, int]:
    """``{v: w}`` for every indecomposable projective ``P_v`` isomorphic to the injective ``I_w``."""
    if "pi_vertices" not in A._cache:
        out = {}
        injs = [injective(A, w) for w in range(A.num_vertices)]
        for v in range(A.num_vertices):
            P = projective(A, v)
            for w, I in enumerate(injs):
                if indecomposable_isomorphism(P, I) is not None:
                    out[v] = w
                    break
        A._cache["pi_vertices"] = out
    return A._cache["pi_vertices"]


def _initial_segment(vertex_lists: list[list[int]], allowed: set[int], total: int, truncated: bool,
                     cutoff: int) -> DimensionResult:
    for n in range(min(total, cutoff + 1)):
        if not set(vertex_lists[n]) <= allowed:
            return DimensionResult("exact", n)
    return DimensionResult("at-least", cutoff, cutoff)


def dominant_dimension(A: BasedAlgebra, cutoff: int = DEFAULT_CUTOFF, method: str = "projective") -> DimensionResult:
    """Length of the projective-injective initial segment of a minimal resolution.

    ``method="projective"`` resolves ``D(A_A)`` by projectives;
    ``method="injective"`` resolves ``A`` by injectives.  Both agree.
    """
    pi = projective_injective_vertices(A)
    if method == "projective":
        res = min_resolution(dualize(regular(opposite(A))), "projective", cutoff)
        allowed = set(pi)
    elif method == "injective":
        res = min_resolution(regular(A), "injective", cutoff)
        allowed = set(pi.values())
    else:
        raise ValueError(f"unknown method {method!r}")
    return _initial_segment(res.vertices, allowed, len(res.terms), res.truncated, cutoff)


# ---------------------------------------------------------------------------
# idempotent ideals


def pk_membership(A: BasedAlgebra, vertices: Sequence[int], M: Module, k: int,
                  cutoff: Optional[int] = None) -> bool:
    """Whether the first ``k+1`` terms of the minimal projective resolution lie in ``add(Ae)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    cutoff = k if cutoff is None else cutoff
    if cutoff < k:
        raise ResolutionError(f"membership at depth {k} needs cutoff >= {k}")
    res = min_resolution(M, "projective", cutoff)
    e = set(vertices)
    return all(set(vs) <= e for vs in res.vertices[: k + 1])


@dataclass
class AptReport:
    d: int
    vertices: list[int]
    in_pk: bool                 # (i) membership of the first d terms
    ext_simples: bool           # (ii) Ext^i(M, Y) = 0, 0 <= i < d, Y simple over A/AeA
    ext_injectives: bool        # (iii) same for Y injective over A/AeA
    witnesses: list[tuple[int, str, int]]

    @property
    def agree(self) -> bool:
        return self.in_pk == self.ext_simples == self.ext_injectives


def quotient_test_modules(A: BasedAlgebra, vertices: Sequence[int]) -> tuple[list[Module], list[Module]]:
    """Simple and indecomposable injective ``A/AeA``-modules, as ``A``-modules."""
    e = set(vertices)
    if e >= set(range(A.num_vertices)):
        return [], []
    q = quotient_algebra(A, trace_ideal(A, sorted(e)))
    B = q.algebra
    simples = [lift_module(simple(B, w), q, A) for w in range(B.num_vertices)]
    injs = [lift_module(injective(B, w), q, A) for w in range(B.num_vertices)]
    for Y, w in zip(simples, range(B.num_vertices)):
        Y.name = f"S{[v for v, x in q.vertex_map.items() if x == w][0] + 1}"
    for Y, w in zip(injs, range(B.num_vertices)):
        Y.name = f"I'{[v for v, x in q.vertex_map.items() if x == w][0] + 1}"
    return simples, injs


def verify_apt_equivalence(A: BasedAlgebra, vertices: Sequence[int], M: Module, d: int) -> AptReport:
    """Compare membership in the add(Ae)-resolution class with Ext vanishing against A/AeA."""
    if d < 1:
        raise ValueError("d must be at least 1")
    simples, injs = quotient_test_modules(A, vertices)
    witnesses = []

    def vanish(Ys, tag):
        ok = True
        for Y in Ys:
            for i in range(d):
                x = ext_dim(i, M, Y)
                if x:
                    witnesses.append((i, f"{tag}:{Y.name}", x))
                    ok = False
        return ok

    return AptReport(d, sorted(set(vertices)), pk_membership(A, vertices, M, d - 1),
                     vanish(simples, "simple"), vanish(injs, "injective"), witnesses)


@dataclass
class ExtIsoReport:
    d: int
    hypothesis_met: bool
    table: list[tuple[int, int]]   # (dim Ext^i over Gamma, dim Ext^i over the corner), i = 0..d-1

    @property
    def equal(self) -> bool:
        return all(a == b for a, b in self.table)

    @property
    def status(self) -> str:
        if not self.hypothesis_met:
            return "hypothesis not met"
        return "pass" if self.equal else "fail"


def verify_ext_iso(Gamma: BasedAlgebra, vertices: Sequence[int], X: Module, Y: Module, d: int) -> ExtIsoReport:
    """Compare Ext in degrees ``0..d-1`` before and after ``G = Hom(Gamma e, -)``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    hyp = pk_membership(Gamma, vertices, X, d)
    cor = corner(Gamma, vertices)
    GX, GY = restrict_to_corner(X, cor), restrict_to_corner(Y, cor)
    table = [(ext_dim(i, X, Y), ext_dim(i, GX, GY)) for i in range(d)]
    return ExtIsoReport(d, hyp, table)
