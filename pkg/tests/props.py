"""Module-level invariants shared by the property tests and the acceptance suite.

Each check returns None on success or a short description of the violation.
"""
from __future__ import annotations

import numpy as np

from auslander.homology import dominant_dimension, ext_dim, projective_cover
from auslander.modcat import (decompose, direct_sum, dualize, hom_dim, is_isomorphic, is_local, kernel_of,
                              projective, random_module)

BUNDLED = ["a2.alg", "a3rad2.alg", "a4rad2.alg", "kx2.alg", "semisimple2.alg"]


def seeded_modules(A, count: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    return [random_module(A, rng) for _ in range(count)]


def ext0_is_hom(M, N):
    if ext_dim(0, M, N) != hom_dim(M, N):
        return "Ext^0 != Hom"


def projective_ext_vanishes(M, N):
    A = M.algebra
    for v in range(A.num_vertices):
        for i in (1, 2):
            if ext_dim(i, projective(A, v), N):
                return f"Ext^{i}(P{v + 1}, N) != 0"


def dimension_shift(M, N):
    if M.is_zero():
        return None
    cover, _ = projective_cover(M)
    K, _ = kernel_of(cover)
    if ext_dim(1, M, N) != hom_dim(K, N) - hom_dim(cover.source, N) + hom_dim(M, N):
        return "Ext^1 != coker(Hom(P,N) -> Hom(K,N))"
    for i in (1, 2):
        if ext_dim(i + 1, M, N) != ext_dim(i, K, N):
            return f"Ext^{i + 1}(M,N) != Ext^{i}(K,N)"


def hom_additive(M, N):
    S = direct_sum([M, N]).module
    if hom_dim(S, N) != hom_dim(M, N) + hom_dim(N, N):
        return "Hom(M+N, N) not additive"
    if hom_dim(M, S) != hom_dim(M, M) + hom_dim(M, N):
        return "Hom(M, M+N) not additive"


def decompose_partition(M, N=None):
    dec = decompose(M)
    if sum(X.dim for X in dec.summands) != M.dim:
        return "summand dimensions do not add up"
    if dec.summands and M.field.rank(dec.split_isomorphism) != M.dim:
        return "split map not invertible"
    if not all(is_local(X) for X in dec.summands):
        return "a summand is not local"
    if sorted(i for c in dec.classes for i in c) != list(range(len(dec.summands))):
        return "classes are not a partition of the summands"


def dualize_involution(M, N=None):
    DD = dualize(dualize(M))
    if DD.algebra is not M.algebra or not np.array_equal(DD.action, M.action):
        return "D D M != M"
    if dualize(M).dims != M.dims:
        return "D changes the dimension vector"


PAIR_CHECKS = [ext0_is_hom, projective_ext_vanishes, dimension_shift, hom_additive, decompose_partition,
               dualize_involution]


def run_pair_checks(mods):
    """Apply every check to consecutive pairs; return (check name, index, message) failures."""
    fails = []
    for k, M in enumerate(mods):
        N = mods[(k + 1) % len(mods)]
        for chk in PAIR_CHECKS:
            msg = chk(M, N)
            if msg:
                fails.append((chk.__name__, k, msg))
    return fails


def domdim_methods_agree(A, cutoff: int = 10):
    return dominant_dimension(A, cutoff, "projective") == dominant_dimension(A, cutoff, "injective")
