"""Approximations, C-resolutions, d-cluster-tilting and d-Auslander checks, the correspondence.

Convention for the backward direction: ``Gamma = End(X)`` multiplies
diagrammatically and its modules are left modules, so ``F(X_i) = Gamma e_i``.
The projective ``F(Lambda)`` is ``Gamma e_W`` where ``W`` is the set of
vertices whose *injective* is projective (the Nakayama partners of the
projective-injective vertices).  ``G = Hom(Gamma e_W, -)`` then satisfies
``G∘F ≅ 1`` on ``add(X)``, and ``e_W Gamma e_W ≅ Lambda``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import permutations
from typing import Optional, Sequence, Union

import numpy as np

from .algebra import BasedAlgebra, Corner, corner
from .functors import EndoAlgebra, apply_F, corner_identification, dual_endo, endo_algebra, pullback
from .homology import (DEFAULT_CUTOFF, DimensionResult, dominant_dimension, ext_dim, global_dimension,
                       projective_injective_vertices, top_generators)
from .modcat import (Module, ModuleError, ModuleMap, cokernel_of, decompose, direct_sum, dualize, hom_basis, hom_dim,
                     indecomposable_isomorphism, induced_rank, injective, is_isomorphic, kernel_of, projective,
                     regular, restrict_to_corner, simple, zero_module)


class CertificateError(RuntimeError):
    """A computed object failed its own verification (an internal bug)."""


class NotClusterTilting(ValueError):
    """An approximation kernel is still outside ``add(X)`` after ``d-1`` steps."""

    def __init__(self, message: str, witness: Optional[Module] = None):
        super().__init__(message)
        self.witness = witness


def _endo(X: Union[Module, EndoAlgebra], seed: int = 0) -> EndoAlgebra:
    return X if isinstance(X, EndoAlgebra) else endo_algebra(X, seed)


def match_summand(M: Module, summands: Sequence[Module]) -> Optional[int]:
    """Index of the summand isomorphic to the indecomposable ``M``."""
    for i, s in enumerate(summands):
        if indecomposable_isomorphism(M, s) is not None:
            return i
    return None


def in_add_of(M: Module, summands: Sequence[Module], seed: int = 0) -> bool:
    if M.dim == 0:
        return True
    return all(match_summand(part, summands) is not None for part, _ in decompose(M, seed).parts)


# ---------------------------------------------------------------------------
# candidates


@dataclass
class CTCandidate:
    algebra: BasedAlgebra
    module: Module
    endo: EndoAlgebra
    contains_regular: bool
    contains_cogenerator: bool
    missing: list[str]
    rigidity_range: tuple[int, int] = (1, 0)  # (1, d-1) once checked

    @property
    def summands(self) -> list[Module]:
        return self.endo.summands


def ct_candidate(X: Union[Module, EndoAlgebra], seed: int = 0) -> CTCandidate:
    endo = _endo(X, seed)
    A = endo.base_algebra
    missing = [f"P{v + 1}" for v in range(A.num_vertices) if match_summand(projective(A, v), endo.summands) is None]
    reg = not missing
    inj = [f"I{v + 1}" for v in range(A.num_vertices) if match_summand(injective(A, v), endo.summands) is None]
    return CTCandidate(A, endo.module, endo, reg, not inj, missing + inj)


# ---------------------------------------------------------------------------
# approximations


@dataclass
class Approximation:
    term: Module
    map: ModuleMap
    indices: list[int]      # summand index of each direct summand of the term, in order


def _require(endo: EndoAlgebra, side: str):
    A = endo.base_algebra
    kind, make = ("projective", projective) if side == "right" else ("injective", injective)
    for v in range(A.num_vertices):
        if match_summand(make(A, v), endo.summands) is None:
            raise ModuleError(f"{side} approximation needs every {kind} in add(X); "
                              f"missing {kind[0].upper()}{v + 1}")


def _right_approx(endo: EndoAlgebra, M: Module) -> Approximation:
    F = M.field
    FM = apply_F(endo, M)
    gens = top_generators(FM)
    if not gens:
        Z = zero_module(M.algebra)
        return Approximation(Z, ModuleMap(Z, M, np.zeros((M.dim, 0), dtype=np.int64)), [])
    verts = [v for v, _ in gens]
    ds = direct_sum([endo.summands[v] for v in verts])
    mat = np.zeros((M.dim, ds.module.dim), dtype=np.int64)
    for k, (v, x) in enumerate(gens):
        phi = FM.hom_bases[v].element(x[FM.block(v)])
        mat = F.add(mat, F.mul(phi, ds.projections[k]))
    return Approximation(ds.module, ModuleMap(ds.module, M, mat), verts)


def right_approximation(X: Union[Module, EndoAlgebra], M: Module, check: bool = True) -> Approximation:
    """Minimal right ``add(X)``-approximation ``C -> M``.

    Transported from the projective cover of ``F(M)`` along
    ``add(X) ≃ proj End(X)``.
    """
    endo = _endo(X)
    _require(endo, "right")
    ap = _right_approx(endo, M)
    if check:
        F = M.field
        if F.rank(ap.map.matrix) != M.dim:
            raise CertificateError("right approximation is not surjective")
        for i, S in enumerate(endo.summands):
            H = hom_basis(S, ap.term)
            if induced_rank([F.mul(ap.map.matrix, h) for h in H], F) != hom_dim(S, M):
                raise CertificateError(f"Hom(X{i + 1}, -) is not surjective on the approximation")
    return ap


def _dual_approx(endo: EndoAlgebra, M: Module) -> Approximation:
    rap = _right_approx(dual_endo(endo), dualize(M))
    C = dualize(rap.term) if rap.term.dim else zero_module(M.algebra)
    return Approximation(C, ModuleMap(M, C, rap.map.matrix.T.copy()), rap.indices)


def left_approximation(X: Union[Module, EndoAlgebra], M: Module, check: bool = True) -> Approximation:
    """Minimal left ``add(X)``-approximation ``M -> C``, dual to the right one."""
    endo = _endo(X)
    _require(endo, "left")
    ap = _dual_approx(endo, M)
    if check:
        F = M.field
        if F.rank(ap.map.matrix) != M.dim:
            raise CertificateError("left approximation is not injective")
        for i, S in enumerate(endo.summands):
            H = hom_basis(ap.term, S)
            if induced_rank([F.mul(h, ap.map.matrix) for h in H], F) != hom_dim(M, S):
                raise CertificateError(f"Hom(-, X{i + 1}) is not surjective on the approximation")
    return ap


# ---------------------------------------------------------------------------
# C-resolutions


def sequence_is_exact(dims: Sequence[int], ranks: Sequence[int]) -> bool:
    """Exactness of ``0 -> V_0 -> ... -> V_m -> 0`` from dimensions and the ranks of the ``m`` maps.

    Only valid when consecutive composites are known to vanish.
    """
    if len(ranks) != len(dims) - 1:
        raise ValueError("need one rank per map")
    r = [0] + list(ranks) + [0]
    return all(r[j] + r[j + 1] == dims[j] for j in range(len(dims)))


@dataclass
class CResolution:
    """``0 -> C_n -> ... -> C_0 -> M -> 0`` (right) or ``0 -> M -> C_0 -> ... -> C_n -> 0`` (left).

    ``maps[0]`` connects ``M`` and ``C_0``; ``maps[j]`` connects ``C_{j-1}`` and ``C_j``.
    """

    base: Module
    direction: str
    d: int
    terms: list[Module]
    maps: list[ModuleMap]
    exact: bool = False
    hom_exact: dict = dc_field(default_factory=dict)
    in_add: list = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return max(len(self.terms) - 1, 0)

    @property
    def certified(self) -> bool:
        return self.exact and all(self.hom_exact.values()) and all(self.in_add) and self.length <= self.d - 1

    def term_dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def _chain(res: CResolution) -> tuple[list[Module], list[np.ndarray]]:
    """Objects and maps in the order ``0 -> V_0 -> V_1 -> ... -> 0``."""
    if res.direction == "right":
        objs = list(reversed(res.terms)) + [res.base]
        maps = [f.matrix for f in reversed(res.maps)]
    else:
        objs = [res.base] + list(res.terms)
        maps = [f.matrix for f in res.maps]
    return objs, maps


def certify(res: CResolution, endo: EndoAlgebra, seed: int = 0) -> CResolution:
    F = res.base.field
    objs, maps = _chain(res)
    composites_vanish = all(not np.any(F.mul(maps[j + 1], maps[j])) for j in range(len(maps) - 1))
    res.exact = composites_vanish and sequence_is_exact([o.dim for o in objs], [F.rank(m) for m in maps])
    for i, S in enumerate(endo.summands):
        if res.direction == "right":
            Hs = [hom_basis(S, o) for o in objs]
            ranks = [induced_rank([F.mul(m, h) for h in Hs[j]], F) for j, m in enumerate(maps)]
        else:
            Hs = [hom_basis(o, S) for o in objs]
            # Hom(-, S) reverses arrows; rank of precomposition with maps[j]
            ranks = [induced_rank([F.mul(h, m) for h in Hs[j + 1]], F) for j, m in enumerate(maps)]
        res.hom_exact[i] = sequence_is_exact([h.dim for h in Hs], ranks)
    res.in_add = [in_add_of(t, endo.summands, seed) for t in res.terms]
    return res


def c_resolution(X: Union[Module, EndoAlgebra], M: Module, d: int, direction: str = "right",
                 seed: int = 0) -> CResolution:
    """Iterated minimal approximations, at most ``d`` terms.

    Raises :class:`NotClusterTilting` when the kernel (cokernel) after
    ``d-1`` steps still lies outside ``add(X)``.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if direction not in ("right", "left"):
        raise ValueError(f"direction must be 'right' or 'left', got {direction!r}")
    endo = _endo(X, seed)
    _require(endo, direction)
    terms, maps = [], []
    if direction == "right":
        cur, inc = M, np.eye(M.dim, dtype=np.int64)
        for step in range(d):
            if cur.dim == 0:
                break
            ap = _right_approx(endo, cur)
            terms.append(ap.term)
            maps.append(ModuleMap(ap.term, M if step == 0 else terms[step - 1], M.field.mul(inc, ap.map.matrix)))
            K, kinc = kernel_of(ap.map)
            if step == d - 1 and K.dim:
                raise NotClusterTilting(f"not {d}-cluster-tilting at {M.name or 'M'}: "
                                        f"kernel after {d - 1} steps is outside add(X)", K)
            cur, inc = K, kinc
    else:
        F = M.field
        cur, proj = M, np.eye(M.dim, dtype=np.int64)
        for step in range(d):
            if cur.dim == 0:
                break
            ap = _dual_approx(endo, cur)
            terms.append(ap.term)
            maps.append(ModuleMap(M if step == 0 else terms[step - 1], ap.term, F.mul(ap.map.matrix, proj)))
            Q, q = cokernel_of(ap.map)
            if step == d - 1 and Q.dim:
                raise NotClusterTilting(f"not {d}-cluster-tilting at {M.name or 'M'}: "
                                        f"cokernel after {d - 1} steps is outside add(X)", Q)
            cur, proj = Q, q
    res = CResolution(M, direction, d, terms, maps)
    return certify(res, endo, seed)


# ---------------------------------------------------------------------------
# d-Auslander and d-cluster-tilting decisions


@dataclass
class AuslanderVerdict:
    gldim: DimensionResult
    domdim: DimensionResult
    d: int
    verdict: Optional[bool]

    def __str__(self):
        v = {True: "true", False: "false", None: "unknown"}[self.verdict]
        return f"{self.d}-Auslander: {v} (gl.dim {self.gldim}, dom.dim {self.domdim})"


def is_d_auslander(Gamma: BasedAlgebra, d: int, cutoff: int = DEFAULT_CUTOFF) -> AuslanderVerdict:
    gl = global_dimension(Gamma, cutoff)
    dom = dominant_dimension(Gamma, cutoff)
    dom_ok = dom.value >= d + 1            # an at-least value is a valid lower bound
    if gl.exact:
        verdict = dom_ok and gl.value <= d + 1
    elif gl.value > d + 1 or (dom.exact and not dom_ok):
        verdict = False                    # gl.dim >= cutoff > d+1 already decides
    else:
        verdict = None
    return AuslanderVerdict(gl, dom, d, verdict)


@dataclass
class CTVerdict:
    verdict: Optional[bool]
    mode: str
    d: int
    checks: dict
    evidence: str = ""

    def __str__(self):
        v = {True: "true", False: "false", None: "unknown"}[self.verdict]
        return f"{self.d}-cluster-tilting ({self.mode}): {v}" + (f"; {self.evidence}" if self.evidence else "")


def _rigidity(summands: Sequence[Module], d: int, cutoff: Optional[int]) -> Optional[str]:
    for i in range(1, d):
        for a, Xa in enumerate(summands):
            for b, Xb in enumerate(summands):
                x = ext_dim(i, Xa, Xb, cutoff)
                if x:
                    return f"Ext^{i}(X{a + 1} {list(Xa.dims)}, X{b + 1} {list(Xb.dims)}) = {x} != 0"
    return None


def is_cluster_tilting(X: Union[Module, EndoAlgebra], d: int, mode: str = "criterion",
                       indecomposables: Optional[Sequence[Module]] = None, cutoff: int = DEFAULT_CUTOFF,
                       seed: int = 0) -> CTVerdict:
    """Decide whether ``X`` is d-cluster-tilting.

    ``criterion`` checks generator-cogenerator, rigidity in degrees ``1..d-1``
    and that ``End(X)`` is d-Auslander.  ``enumerated`` replaces the last
    check by the two maximality conditions over the supplied list of
    indecomposables, which must then contain every indecomposable up to isomorphism.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    cand = ct_candidate(X, seed)
    summands = cand.summands
    checks: dict = {"generator": cand.contains_regular, "cogenerator": cand.contains_cogenerator}
    if not (cand.contains_regular and cand.contains_cogenerator):
        return CTVerdict(False, mode, d, checks, "missing " + ", ".join(cand.missing))
    bad = _rigidity(summands, d, cutoff)
    checks["rigid"] = bad is None
    cand.rigidity_range = (1, d - 1)
    if bad:
        return CTVerdict(False, mode, d, checks, bad)
    if mode == "criterion":
        av = is_d_auslander(cand.endo.algebra, d, cutoff)
        checks["d_auslander"] = av.verdict
        if av.verdict is None:
            return CTVerdict(None, mode, d, checks, f"undecided: {av}")
        return CTVerdict(av.verdict, mode, d, checks, "" if av.verdict else str(av))
    if mode == "enumerated":
        if indecomposables is None:
            raise ValueError("enumerated mode needs a list of indecomposables")
        for Y in indecomposables:
            inside = match_summand(Y, summands) is not None
            left = all(ext_dim(i, S, Y, cutoff) == 0 for i in range(1, d) for S in summands)
            right = all(ext_dim(i, Y, S, cutoff) == 0 for i in range(1, d) for S in summands)
            name = Y.name or f"dims {list(Y.dims)}"
            if left != inside or right != inside:
                checks["maximal"] = False
                side = "Ext(X, Y)" if left != inside else "Ext(Y, X)"
                return CTVerdict(False, mode, d, checks, f"{name} outside add(X) with {side} = 0 in degrees 1..{d - 1}")
        checks["maximal"] = True
        return CTVerdict(True, mode, d, checks)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# backward direction


def recovery_vertices(Gamma: BasedAlgebra) -> list[int]:
    """Vertices ``w`` whose injective is projective: ``Gamma e_W`` is the projective ``F(Lambda)``."""
    return sorted(projective_injective_vertices(Gamma).values())


@dataclass
class RecoveredCT:
    Gamma: BasedAlgebra
    d: int
    corner: Corner
    module: Module
    summands: list[Module]
    certificates: dict

    @property
    def algebra(self) -> BasedAlgebra:
        return self.corner.algebra

    @property
    def passed(self) -> bool:
        return all(v is True for v in self.certificates.values())


def recover_ct(Gamma: BasedAlgebra, d: int, cutoff: int = DEFAULT_CUTOFF, seed: int = 0,
               check: bool = True) -> RecoveredCT:
    """``(Lambda', X')`` with ``Lambda' = e Gamma e`` and ``X' = e Gamma``."""
    verdict = is_d_auslander(Gamma, d, cutoff)
    if verdict.verdict is not True:
        raise ValueError(f"Gamma is not known to be {d}-Auslander: {verdict}")
    W = recovery_vertices(Gamma)
    if not W:
        raise ValueError("no projective-injective module; dominant dimension is 0")
    cor = corner(Gamma, W)
    summands = [restrict_to_corner(projective(Gamma, v), cor) for v in range(Gamma.num_vertices)]
    for v, s in enumerate(summands):
        s.name = f"G(P{v + 1})"
    Xp = restrict_to_corner(regular(Gamma), cor)
    Xp.name = "X'"
    certs: dict = {}
    if check:
        nonzero = [s for s in summands if s.dim]
        certs["rigid"] = _rigidity(nonzero, d, cutoff) is None
        cand = ct_candidate(Xp, seed)
        certs["generator"] = cand.contains_regular
        certs["cogenerator"] = cand.contains_cogenerator
        certs["cluster_tilting"] = is_cluster_tilting(cand.endo, d, "criterion", cutoff=cutoff, seed=seed).verdict
    return RecoveredCT(Gamma, d, cor, Xp, summands, certs)


# ---------------------------------------------------------------------------
# fingerprints and the round trip


@dataclass(frozen=True, order=True)
class Fingerprint:
    vertices: int
    cartan: tuple
    ext1: tuple

    def __str__(self):
        return f"({self.vertices}, cartan {[list(r) for r in self.cartan]}, ext1 {[list(r) for r in self.ext1]})"


def _canonical(C: np.ndarray, E: np.ndarray) -> tuple:
    k = C.shape[0]
    if k <= 7:
        orders = permutations(range(k))
    else:  # deterministic heuristic ordering for large quivers
        key = lambda i: (tuple(sorted(C[i])), tuple(sorted(C[:, i])), tuple(sorted(E[i])), tuple(sorted(E[:, i])))
        orders = [sorted(range(k), key=key)]
    best = None
    for perm in orders:
        p = list(perm)
        cand = (tuple(map(tuple, C[np.ix_(p, p)].tolist())), tuple(map(tuple, E[np.ix_(p, p)].tolist())))
        if best is None or cand < best:
            best = cand
    return best


def fingerprint(A: BasedAlgebra) -> Fingerprint:
    """Vertex count, Cartan matrix ``dim Hom(P_i, P_j)`` and the Ext¹ quiver, canonically ordered."""
    if "fingerprint" not in A._cache:
        k = A.num_vertices
        C = A.block_dims()
        S = [simple(A, v) for v in range(k)]
        E = np.array([[ext_dim(1, S[i], S[j]) for j in range(k)] for i in range(k)], dtype=np.int64)
        C2, E2 = _canonical(np.asarray(C, dtype=np.int64), E)
        A._cache["fingerprint"] = Fingerprint(k, C2, E2)
    return A._cache["fingerprint"]


def hom_table(summands: Sequence[Module]) -> np.ndarray:
    return np.array([[hom_dim(a, b) for b in summands] for a in summands], dtype=np.int64)


@dataclass
class RoundTripReport:
    d: int
    gamma_dim: int
    checks: dict
    notes: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v is True for v in self.checks.values())

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        fp = "fingerprint match" if self.checks.get("fingerprint") else "fingerprint mismatch"
        return f"{status} (Γ dim {self.gamma_dim}, {fp})"


def correspondence_roundtrip(X: Module, d: int, cutoff: int = DEFAULT_CUTOFF, seed: int = 0) -> RoundTripReport:
    """Forward ``X -> End(X)``, backward ``recover_ct``, then compare both sides."""
    checks: dict = {}
    notes: list[str] = []
    ct = is_cluster_tilting(X, d, "criterion", cutoff=cutoff, seed=seed)
    checks["cluster_tilting"] = ct.verdict
    endo = endo_algebra(X, seed)
    Gamma = endo.algebra
    report = RoundTripReport(d, Gamma.n, checks, notes)
    if ct.verdict is not True:
        notes.append(str(ct))
        return report
    try:
        rec = recover_ct(Gamma, d, cutoff, seed)
    except ValueError as exc:
        checks["recover"] = False
        notes.append(str(exc))
        return report
    checks["recover_certificates"] = rec.passed
    parts = [s for s in rec.summands if s.dim]
    checks["summand_count"] = len(parts) == len(endo.summands)
    endo2 = endo_algebra(rec.module, seed)
    checks["summand_count"] = checks["summand_count"] and len(endo2.summands) == len(endo.summands)
    checks["fingerprint"] = fingerprint(endo2.algebra) == fingerprint(Gamma)
    checks["base_fingerprint"] = fingerprint(rec.algebra) == fingerprint(endo.base_algebra)
    # G(Gamma e_i) corresponds to X_i, so the tables agree in the same labelling
    checks["hom_table"] = bool(np.array_equal(hom_table(rec.summands), hom_table(endo.summands)))
    try:
        psi = corner_identification(endo, rec.corner)
        checks["identification"] = True
    except ModuleError as exc:
        checks["identification"] = False
        notes.append(str(exc))
        return report
    Lam = endo.base_algebra
    gf = []
    for A in endo.summands:
        back = pullback(restrict_to_corner(apply_F(endo, A), rec.corner), psi, Lam)
        gf.append(is_isomorphic(back, A, seed) is True)
    checks["G_F_identity"] = all(gf)
    fg = []
    for v in range(Gamma.num_vertices):
        P = projective(Gamma, v)
        back = pullback(restrict_to_corner(P, rec.corner), psi, Lam)
        fg.append(is_isomorphic(apply_F(endo, back), P, seed) is True)
    checks["F_G_identity"] = all(fg)
    return report
