"""Endomorphism algebras and the functors ``F = Hom(X, -)`` and ``G = Hom(Pe, -)``.

``End(X)`` multiplies diagrammatically: for ``g: X_i -> X_j`` and
``h: X_j -> X_k`` the product ``g*h`` is "first g, then h".  With this
product ``Hom(X, M)`` is a left ``End(X)``-module via ``g . phi = phi∘g``,
``F(X)`` is the regular module and ``F(X_i)`` is the projective at vertex i.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import BasedAlgebra, Corner
from .modcat import (Decomposition, HomSpace, Module, ModuleError, ModuleMap, decompose, direct_sum, dualize,
                     graded_from_action, hom_basis, indecomposable_isomorphism, projective, scalar_part)


@dataclass
class EndoAlgebra:
    """``Gamma = End(X)`` for the basic part of ``X``, with the data to apply ``F``."""

    module: Module
    summands: list[Module]
    multiplicities: list[int]
    algebra: BasedAlgebra
    homs: dict            # (i, j) -> list of basis maps X_i -> X_j (function-order matrices)
    offsets: dict         # (i, j) -> index of the first Gamma basis element of that block

    @property
    def base_algebra(self) -> BasedAlgebra:
        return self.module.algebra

    def basis_index(self, i: int, j: int, k: int) -> int:
        return self.offsets[(i, j)] + k

    def hom_space(self, i: int, j: int) -> HomSpace:
        return HomSpace(self.summands[i], self.summands[j], self.homs[(i, j)])


def _local_basis(M: Module) -> list[np.ndarray]:
    """Basis of End(M) for indecomposable M: identity first, then a radical basis."""
    F = M.field
    end = hom_basis(M, M)
    eye = F.eye(M.dim)
    J = [F.sub(h, F.scale(scalar_part(h, F), eye)) for h in end.basis]
    rows = F.row_space(np.stack([j.ravel() for j in J])) if J else np.zeros((0, M.dim ** 2), np.int64)
    if rows.shape[0] != end.dim - 1:
        raise ModuleError("summand does not have a split local endomorphism ring")
    return [eye] + [r.reshape(M.dim, M.dim) for r in rows]


def endo_from_summands(X: Module, summands: Sequence[Module], multiplicities: Optional[Sequence[int]] = None,
                       name: str = "") -> EndoAlgebra:
    """``End`` of the direct sum of pairwise non-isomorphic indecomposables."""
    F = X.field
    m = len(summands)
    homs = {}
    for i in range(m):
        for j in range(m):
            homs[(i, j)] = _local_basis(summands[i]) if i == j else hom_basis(summands[i], summands[j]).basis
    labels, offsets = [], {}
    for i in range(m):
        offsets[(i, i)] = len(labels)
        labels.append(f"e{i + 1}")
        labels.extend(f"r{i + 1}_{k}" for k in range(1, len(homs[(i, i)])))
    for i in range(m):
        for j in range(m):
            if i != j:
                offsets[(i, j)] = len(labels)
                labels.extend(f"h{i + 1}_{j + 1}_{k}" for k in range(1, len(homs[(i, j)]) + 1))
    n = len(labels)
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            for k in range(m):
                target = homs[(i, k)]
                if not homs[(i, j)] or not homs[(j, k)]:
                    continue
                prods = [F.mul(h, g) for g in homs[(i, j)] for h in homs[(j, k)]]  # g then h
                if not target:
                    if any(np.any(p) for p in prods):
                        raise ModuleError("composition left the Hom space")  # pragma: no cover
                    continue
                basis = np.stack([t.ravel() for t in target], axis=1)
                coords = F.solve(basis, np.stack([p.ravel() for p in prods], axis=1))
                if coords is None:
                    raise ModuleError("composition is not in the span of the Hom basis")  # pragma: no cover
                c = 0
                for a in range(len(homs[(i, j)])):
                    for b in range(len(homs[(j, k)])):
                        mult[offsets[(i, j)] + a, offsets[(j, k)] + b,
                             offsets[(i, k)]:offsets[(i, k)] + len(target)] = coords[:, c]
                        c += 1
    idem = [offsets[(i, i)] for i in range(m)]
    Gamma = BasedAlgebra(F, labels, mult, idem, check=True, name=name or f"End({X.name})" if X.name else "End")
    mults = list(multiplicities) if multiplicities is not None else [1] * m
    return EndoAlgebra(X, list(summands), mults, Gamma, homs, offsets)


def endo_algebra(X: Module, seed: int = 0) -> EndoAlgebra:
    """``End(X)`` after splitting ``X`` into its basic indecomposable summands."""
    key = ("endo", seed)
    if key not in X._cache:
        dec: Decomposition = decompose(X, seed)
        X._cache[key] = endo_from_summands(X, dec.basic(), [len(c) for c in dec.classes])
    return X._cache[key]


def dual_endo(endo: EndoAlgebra) -> EndoAlgebra:
    """The endomorphism data of ``D X`` over the opposite algebra (summands ``D X_i``)."""
    key = "dual_endo"
    if key not in endo.module._cache:
        DX = dualize(endo.module)
        endo.module._cache[key] = endo_from_summands(DX, [dualize(s) for s in endo.summands], endo.multiplicities)
    return endo.module._cache[key]


# ---------------------------------------------------------------------------
# F = Hom(X, -)


def apply_F(endo: EndoAlgebra, M: Module) -> Module:
    """``F(M) = Hom(X, M)`` as a left ``End(X)``-module."""
    if M.algebra is not endo.base_algebra:
        raise ModuleError("module is over a different algebra than X")
    F = M.field
    m = len(endo.summands)
    bases = [hom_basis(S, M) for S in endo.summands]
    dims = [b.dim for b in bases]
    offs = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    d = int(offs[-1])
    Gamma = endo.algebra
    action = np.zeros((Gamma.n, d, d), dtype=np.int64)
    for i in range(m):
        if dims[i]:
            action[endo.offsets[(i, i)], offs[i]:offs[i + 1], offs[i]:offs[i + 1]] = np.eye(dims[i], dtype=np.int64)
    for i in range(m):
        for j in range(m):
            for k, g in enumerate(endo.homs[(i, j)]):
                b = endo.offsets[(i, j)] + k
                if b == endo.offsets[(i, i)] and i == j and k == 0:
                    continue
                if not dims[j] or not dims[i]:
                    continue
                # g: X_i -> X_j acts Hom(X_j, M) -> Hom(X_i, M) by phi -> phi∘g
                imgs = np.stack([F.mul(phi, g).ravel() for phi in bases[j].basis], axis=1)
                target = np.stack([t.ravel() for t in bases[i].basis], axis=1)
                coords = F.solve(target, imgs)
                action[b, offs[i]:offs[i + 1], offs[j]:offs[j + 1]] = coords
    out = Module(Gamma, dims, action, check=False, name=f"F({M.name})" if M.name else "")
    out.hom_bases = bases
    return out


def apply_F_map(endo: EndoAlgebra, f: ModuleMap, FM: Optional[Module] = None, FN: Optional[Module] = None) -> ModuleMap:
    """``F(f)``: ``phi -> f∘phi`` blockwise."""
    F = f.source.field
    FM = FM or apply_F(endo, f.source)
    FN = FN or apply_F(endo, f.target)
    mat = np.zeros((FN.dim, FM.dim), dtype=np.int64)
    for i in range(len(endo.summands)):
        src, tgt = FM.hom_bases[i], FN.hom_bases[i]
        if not src.dim or not tgt.dim:
            continue
        imgs = np.stack([F.mul(f.matrix, phi).ravel() for phi in src.basis], axis=1)
        coords = F.solve(np.stack([t.ravel() for t in tgt.basis], axis=1), imgs)
        mat[FN.block(i), FM.block(i)] = coords
    return ModuleMap(FM, FN, mat)


def element_of_maps(endo: EndoAlgebra, i: int, j: int, g: np.ndarray) -> np.ndarray:
    """Gamma-coordinates of a map ``X_i -> X_j``."""
    F = endo.module.field
    vec = np.zeros(endo.algebra.n, dtype=np.int64)
    basis = endo.homs[(i, j)]
    if not basis:
        if np.any(g % F.p):
            raise ModuleError("map is not a homomorphism between the summands")
        return vec
    coords = F.solve(np.stack([b.ravel() for b in basis], axis=1), np.asarray(g).ravel() % F.p)
    if coords is None:
        raise ModuleError("map is not a homomorphism between the summands")
    vec[endo.offsets[(i, j)]:endo.offsets[(i, j)] + len(basis)] = coords
    return vec


# ---------------------------------------------------------------------------
# identifying End_Gamma(Gamma e) with the original algebra


def regular_right_multiplication(A: BasedAlgebra, a: int) -> np.ndarray:
    """Matrix of ``x -> x * b_a`` on the basis of ``regular(A)``."""
    projs = [projective(A, v) for v in range(A.num_vertices)]
    # position in the direct sum -> algebra basis index (direct sums are vertex-major)
    pos_to_idx = []
    for t in range(A.num_vertices):
        for P in projs:
            pos_to_idx.extend(i for i in P.basis_indices if A.blocks[i][0] == t)
    idx = np.array(pos_to_idx)
    return A.mult[:, a][idx][:, idx].T.copy() % A.field.p


def corner_identification(endo: EndoAlgebra, cor: Corner) -> np.ndarray:
    """Algebra isomorphism ``Lambda -> eGamma e`` (matrix: corner coords x Lambda coords).

    The corner vertices must be the summands ``X_i`` isomorphic to the
    indecomposable projectives; ``a`` goes to right multiplication by ``a``
    on ``Lambda``, transported along those isomorphisms.
    """
    Lam = endo.base_algebra
    F = Lam.field
    k = Lam.num_vertices
    projs = [projective(Lam, w) for w in range(k)]
    R = direct_sum(projs)
    theta, vertex_of_w = {}, {}
    for i in cor.vertices:
        for w, P in enumerate(projs):
            iso = indecomposable_isomorphism(P, endo.summands[i])
            if iso is not None:
                if w in vertex_of_w:
                    raise ModuleError("two corner vertices match the same projective")
                theta[w] = iso
                vertex_of_w[w] = i
                break
        else:
            raise ModuleError(f"corner vertex {i + 1} is not a projective summand of X")
    if set(vertex_of_w) != set(range(k)):
        raise ModuleError("corner does not contain every indecomposable projective")
    pos = {g: c for c, g in enumerate(cor.embedding)}
    inv = {w: F.inverse(t) for w, t in theta.items()}
    psi = np.zeros((cor.algebra.n, Lam.n), dtype=np.int64)
    for a in range(Lam.n):
        h = regular_right_multiplication(Lam, a)
        for w in range(k):
            for w2 in range(k):
                block = F.mul(R.projections[w2], h, R.inclusions[w])
                if not np.any(block):
                    continue
                g = F.mul(theta[w2], block, inv[w])
                vec = element_of_maps(endo, vertex_of_w[w], vertex_of_w[w2], g)
                for gi in np.flatnonzero(vec):
                    psi[pos[int(gi)], a] = (psi[pos[int(gi)], a] + vec[gi]) % F.p
    _check_algebra_iso(Lam, cor.algebra, psi)
    return psi


def _check_algebra_iso(A: BasedAlgebra, B: BasedAlgebra, psi: np.ndarray):
    F = A.field
    if psi.shape != (B.n, A.n) or F.rank(psi) != A.n:
        raise ModuleError("identification is not bijective")
    for i in range(A.n):
        for j in range(A.n):
            lhs = psi @ A.mult[i, j] % F.p
            rhs = B.multiply(psi[:, i], psi[:, j])
            if np.any(lhs != rhs):
                raise ModuleError("identification is not multiplicative")


def pullback(N: Module, psi: np.ndarray, A: BasedAlgebra) -> Module:
    """Restriction of scalars along an algebra map ``psi: A -> B``."""
    action = np.tensordot(psi.T % A.field.p, N.action, axes=1) % A.field.p
    M, _ = graded_from_action(A, action, name=N.name)
    return M
