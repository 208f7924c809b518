"""Brute-force reference computations, independent of the engine.

Only raw data is shared with the engine: structure constants ``mult[i, j, k]``
(``b_i b_j = sum_k mult[i,j,k] b_k``) and full action tables
``act[i]`` (matrix of ``b_i``).  Linear algebra here is a separate, plain
Gaussian elimination over F_p using Python integers.
"""
from __future__ import annotations

import numpy as np


def rank_mod_p(rows, p: int) -> int:
    """Rank of an integer matrix over F_p (row list or 2-d array)."""
    m = [[int(x) % p for x in r] for r in np.asarray(rows, dtype=object).tolist()] if len(rows) else []
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def hom_dim(act_m, act_n, p: int) -> int:
    """dim of {f : f act_m[i] = act_n[i] f for every basis element i}."""
    act_m, act_n = np.asarray(act_m), np.asarray(act_n)
    dm, dn = act_m.shape[1], act_n.shape[1]
    if dm == 0 or dn == 0:
        return 0
    eqs = []
    # unknown f[r, c] at index r*dm + c
    for i in range(act_m.shape[0]):
        for r in range(dn):
            for c in range(dm):
                row = [0] * (dn * dm)
                for k in range(dm):     # (f act_m)[r,c] = sum_k f[r,k] act_m[k,c]
                    if act_m[i, k, c]:
                        row[r * dm + k] += int(act_m[i, k, c])
                for k in range(dn):     # (act_n f)[r,c] = sum_k act_n[r,k] f[k,c]
                    if act_n[i, r, k]:
                        row[k * dm + c] -= int(act_n[i, r, k])
                if any(row):
                    eqs.append(row)
    return dn * dm - rank_mod_p(eqs, p)


def ext1_dim(mult, act_m, act_n, p: int) -> int:
    """dim Ext^1(M, N) = dim Der(A, Hom_K(M, N)) - dim Inn.

    A derivation is a linear map ``delta: A -> Hom_K(M, N)`` with
    ``delta(ab) = a.delta(b) + delta(a).b``, where ``(a.f) = act_n(a) f`` and
    ``(f.b) = f act_m(b)``.  Inner derivations ``a.f - f.a`` form a space of
    dimension ``dm*dn - dim Hom_A(M, N)``.
    """
    mult, act_m, act_n = np.asarray(mult), np.asarray(act_m), np.asarray(act_n)
    n = mult.shape[0]
    dm, dn = act_m.shape[1], act_n.shape[1]
    if dm == 0 or dn == 0:
        return 0
    block = dn * dm

    def var(a, r, c):
        return a * block + r * dm + c

    eqs = []
    for a in range(n):
        for b in range(n):
            for r in range(dn):
                for c in range(dm):
                    row = {}
                    # delta(ab)[r,c] = sum_k mult[a,b,k] delta(b_k)[r,c]
                    for k in np.flatnonzero(mult[a, b]):
                        row[var(k, r, c)] = row.get(var(k, r, c), 0) + int(mult[a, b, k])
                    # - (act_n(a) delta(b))[r,c]
                    for s in np.flatnonzero(act_n[a, r]):
                        row[var(b, s, c)] = row.get(var(b, s, c), 0) - int(act_n[a, r, s])
                    # - (delta(a) act_m(b))[r,c]
                    for s in np.flatnonzero(act_m[b, :, c]):
                        row[var(a, r, s)] = row.get(var(a, r, s), 0) - int(act_m[b, s, c])
                    dense = [0] * (n * block)
                    for k, v in row.items():
                        dense[k] = v % p
                    if any(dense):
                        eqs.append(dense)
    der = n * block - rank_mod_p(eqs, p)
    inner = block - hom_dim(act_m, act_n, p)
    return der - inner


def is_associative(mult, p: int) -> bool:
    mult = np.asarray(mult, dtype=np.int64)
    left = np.einsum("ijk,klm->ijlm", mult, mult) % p    # (b_i b_j) b_l
    right = np.einsum("jlk,ikm->ijlm", mult, mult) % p   # b_i (b_j b_l)
    return bool(np.all(left == right))


# Hand-written structure constants of K A_2 (1 -> 2) in the basis e1, e2, a1,
# with the product in function order: a1 = e2 a1 e1.
KA2_MULT = np.zeros((3, 3, 3), dtype=np.int64)
KA2_MULT[0, 0, 0] = 1
KA2_MULT[1, 1, 1] = 1
KA2_MULT[1, 2, 2] = 1   # e2 * a1 = a1
KA2_MULT[2, 0, 2] = 1   # a1 * e1 = a1


def ka2_representation(v1: int, v2: int, amap) -> np.ndarray:
    """Full action table of a KA_2 representation V1 -> V2 (basis e1, e2, a1)."""
    d = v1 + v2
    act = np.zeros((3, d, d), dtype=np.int64)
    act[0, :v1, :v1] = np.eye(v1, dtype=np.int64)
    act[1, v1:, v1:] = np.eye(v2, dtype=np.int64)
    if v1 and v2:
        act[2, v1:, :v1] = np.asarray(amap, dtype=np.int64).reshape(v2, v1)
    return act
