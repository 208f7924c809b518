"""Left modules over based algebras, Hom spaces, duality and decomposition.

A module stores one action matrix per algebra basis element and its basis is
always *graded*: ordered in blocks, one block per vertex, so that each vertex
idempotent acts as the projection onto its block.  Module maps are matrices
acting on column vectors and compose in the usual function order
(``g @ f`` is "first f, then g").
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np
from sympy import Poly, symbols
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from .algebra import AlgebraError, BasedAlgebra, Corner, Quotient, opposite
from .linalg import PrimeField


class ModuleError(ValueError):
    pass


class DecompositionError(RuntimeError):
    pass


class Module:
    def __init__(self, algebra: BasedAlgebra, dims: Sequence[int], action, check: bool = True, name: str = ""):
        self.algebra = algebra
        self.field: PrimeField = algebra.field
        self.dims = [int(d) for d in dims]
        if len(self.dims) != algebra.num_vertices:
            raise ModuleError(f"expected {algebra.num_vertices} vertex dimensions, got {len(self.dims)}")
        self.dim = sum(self.dims)
        self.offsets = np.concatenate([[0], np.cumsum(self.dims)]).astype(int).tolist()
        act = np.asarray(action, dtype=np.int64)
        if act.size == 0:
            act = np.zeros((algebra.n, self.dim, self.dim), dtype=np.int64)
        self.action = act.reshape(algebra.n, self.dim, self.dim) % self.field.p
        self.name = name
        self._cache: dict = {}
        if check:
            self.check()

    # -- basic access ----------------------------------------------------------

    def block(self, v: int) -> slice:
        return slice(self.offsets[v], self.offsets[v + 1])

    def act(self, i: int) -> np.ndarray:
        return self.action[i]

    def act_element(self, x: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=np.int64) % self.field.p, self.action, axes=1) % self.field.p

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def vertex_of(self) -> list[int]:
        """Vertex of each basis vector."""
        out = []
        for v, d in enumerate(self.dims):
            out.extend([v] * d)
        return out

    def check(self):
        A, F = self.algebra, self.field
        for v, e in enumerate(A.idempotents):
            proj = np.zeros((self.dim, self.dim), dtype=np.int64)
            sl = self.block(v)
            proj[sl, sl] = np.eye(self.dims[v], dtype=np.int64)
            if np.any(self.action[e] != proj):
                raise ModuleError("module basis is not graded by the vertex idempotents")
        if self.dim == 0:
            return
        lhs = np.einsum("iab,jbc->ijac", self.action, self.action) % F.p
        rhs = np.einsum("ijk,kac->ijac", A.mult, self.action) % F.p
        if np.any(lhs != rhs):
            raise ModuleError("action does not respect the structure constants (relations violated)")

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<Module{name} dims={self.dims}>"


@dataclass
class ModuleMap:
    source: Module
    target: Module
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.dim, self.source.dim)

    def is_homomorphism(self) -> bool:
        F = self.source.field
        for i in range(self.source.algebra.n):
            if np.any(F.mul(self.target.act(i), self.matrix) != F.mul(self.matrix, self.source.act(i))):
                return False
        return True

    def rank(self) -> int:
        return self.source.field.rank(self.matrix)


@dataclass
class HomSpace:
    source: Module
    target: Module
    basis: list[np.ndarray] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def element(self, coeffs) -> np.ndarray:
        if not self.basis:
            return np.zeros((self.target.dim, self.source.dim), dtype=np.int64)
        return self.source.field.combine(coeffs, self.basis)

    def coordinates(self, f: np.ndarray) -> Optional[np.ndarray]:
        """Coordinates of ``f`` in this basis (None if not in the span)."""
        F = self.source.field
        if not self.basis:
            return np.zeros(0, dtype=np.int64) if not np.any(f % F.p) else None
        mat = np.stack([b.ravel() for b in self.basis], axis=1)
        return F.solve(mat, np.asarray(f).ravel() % F.p)


# ---------------------------------------------------------------------------
# constructors


def graded_from_action(algebra: BasedAlgebra, action: np.ndarray, name: str = "") -> tuple[Module, np.ndarray]:
    """Regrade an arbitrary module structure; returns the module and the change of basis.

    The returned matrix ``T`` has the new basis as columns in old coordinates.
    """
    F = algebra.field
    action = np.asarray(action, dtype=np.int64) % F.p
    d = action.shape[1]
    cols, dims = [], []
    for e in algebra.idempotents:
        img = F.column_space(action[e])
        cols.append(img)
        dims.append(img.shape[1])
    T = np.hstack(cols) if cols else np.zeros((d, 0), dtype=np.int64)
    if T.shape[1] != d:
        raise ModuleError("idempotents do not decompose the module")
    Tinv = F.inverse(T) if d else T
    new = np.einsum("ab,ibc,cd->iad", Tinv, action, T) % F.p if d else np.zeros((algebra.n, 0, 0), np.int64)
    return Module(algebra, dims, new, name=name), T


def zero_module(A: BasedAlgebra) -> Module:
    return Module(A, [0] * A.num_vertices, np.zeros((A.n, 0, 0), dtype=np.int64), check=False, name="0")


def from_quiver_maps(A: BasedAlgebra, dims: Sequence[int], maps: dict, name: str = "", check: bool = True) -> Module:
    """A representation given by one matrix per arrow (shape dims[target] x dims[source])."""
    qa = getattr(A, "quiver_algebra", None)
    if qa is None:
        raise ModuleError("arrow maps need an algebra presented by a quiver")
    F = A.field
    quiver = qa.quiver
    dims = [int(x) for x in dims]
    offsets = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    d = int(offsets[-1])
    arrow_mats = []
    for i, arrow in enumerate(quiver.arrows):
        shape = (dims[arrow.target], dims[arrow.source])
        m = maps.get(arrow.name)
        m = np.zeros(shape, dtype=np.int64) if m is None else np.asarray(m, dtype=np.int64).reshape(shape) % F.p
        arrow_mats.append(m)
    unknown = set(maps) - {a.name for a in quiver.arrows}
    if unknown:
        raise ModuleError(f"maps given for unknown arrows: {sorted(unknown)}")
    action = np.zeros((A.n, d, d), dtype=np.int64)
    for b, path in enumerate(qa.paths):
        if not path.arrows:
            v = path.source
            action[b, offsets[v]:offsets[v + 1], offsets[v]:offsets[v + 1]] = np.eye(dims[v], dtype=np.int64)
            continue
        m = np.eye(dims[path.source], dtype=np.int64)
        for ai in path.arrows:
            m = F.mul(arrow_mats[ai], m)
        s, t = path.source, path.target
        action[b, offsets[t]:offsets[t + 1], offsets[s]:offsets[s + 1]] = m
    return Module(A, dims, action, check=check, name=name)


def from_blocks(A: BasedAlgebra, dims: Sequence[int], acts: dict, name: str = "", check: bool = True) -> Module:
    """A module over a based algebra from full action matrices of (some) radical basis elements."""
    F = A.field
    dims = [int(x) for x in dims]
    offsets = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    d = int(offsets[-1])
    action = np.zeros((A.n, d, d), dtype=np.int64)
    for v, e in enumerate(A.idempotents):
        action[e, offsets[v]:offsets[v + 1], offsets[v]:offsets[v + 1]] = np.eye(dims[v], dtype=np.int64)
    for key, m in acts.items():
        i = A.labels.index(key) if isinstance(key, str) else int(key)
        m = np.asarray(m, dtype=np.int64).reshape(d, d) % F.p
        if i in A.idempotents:
            if np.any(m != action[i]):
                raise ModuleError(f"action of idempotent {A.labels[i]} disagrees with the dimension vector")
            continue
        action[i] = m
    return Module(A, dims, action, check=check, name=name)


def simple(A: BasedAlgebra, v: int) -> Module:
    if not 0 <= v < A.num_vertices:
        raise ModuleError(f"vertex {v} out of range")
    key = ("simple", v)
    if key not in A._cache:
        dims = [0] * A.num_vertices
        dims[v] = 1
        action = np.zeros((A.n, 1, 1), dtype=np.int64)
        action[A.idempotents[v]] = 1
        A._cache[key] = Module(A, dims, action, check=False, name=f"S{v + 1}")
    return A._cache[key]


def projective(A: BasedAlgebra, v: int) -> Module:
    """``A e_v`` with the left multiplication action."""
    if not 0 <= v < A.num_vertices:
        raise ModuleError(f"vertex {v} out of range")
    key = ("projective", v)
    if key not in A._cache:
        idx = sorted(A.basis_in_block(source=v), key=lambda i: A.blocks[i][0])
        dims = [sum(1 for i in idx if A.blocks[i][0] == t) for t in range(A.num_vertices)]
        action = A.mult[:, idx][:, :, idx].transpose(0, 2, 1)
        M = Module(A, dims, action, check=False, name=f"P{v + 1}")
        M.basis_indices = idx
        M.generator = idx.index(A.idempotents[v])
        A._cache[key] = M
    return A._cache[key]


def injective(A: BasedAlgebra, v: int) -> Module:
    """``D(e_v A)``, the dual of the projective right module at ``v``."""
    key = ("injective", v)
    if key not in A._cache:
        M = dualize(projective(opposite(A), v))
        M.name = f"I{v + 1}"
        A._cache[key] = M
    return A._cache[key]


def regular(A: BasedAlgebra) -> Module:
    if "regular" not in A._cache:
        M = direct_sum([projective(A, v) for v in range(A.num_vertices)]).module
        M.name = "A"
        A._cache["regular"] = M
    return A._cache["regular"]


def cogenerator(A: BasedAlgebra) -> Module:
    if "cogenerator" not in A._cache:
        M = direct_sum([injective(A, v) for v in range(A.num_vertices)]).module
        M.name = "DA"
        A._cache["cogenerator"] = M
    return A._cache["cogenerator"]


def dualize(M: Module) -> Module:
    """``D M = Hom_K(M, K)`` as a module over the opposite algebra."""
    Aop = opposite(M.algebra)
    D = Module(Aop, M.dims, M.action.transpose(0, 2, 1), check=False, name=f"D{M.name}" if M.name else "")
    return D


def dualize_map(f: np.ndarray) -> np.ndarray:
    return np.asarray(f).T.copy()


@dataclass
class DirectSum:
    module: Module
    inclusions: list[np.ndarray]
    projections: list[np.ndarray]


def direct_sum(mods: Sequence[Module], name: str = "") -> DirectSum:
    if not mods:
        raise ModuleError("direct sum of no modules")
    A = mods[0].algebra
    if any(m.algebra is not A for m in mods):
        raise ModuleError("direct sum over different algebras")
    k = A.num_vertices
    dims = [sum(m.dims[v] for m in mods) for v in range(k)]
    d = sum(dims)
    # position of (module j, vertex v) block in the sum
    inclusions = []
    starts = {}
    pos = 0
    for v in range(k):
        for j, m in enumerate(mods):
            starts[(j, v)] = pos
            pos += m.dims[v]
    action = np.zeros((A.n, d, d), dtype=np.int64)
    for j, m in enumerate(mods):
        inc = np.zeros((d, m.dim), dtype=np.int64)
        for v in range(k):
            s = starts[(j, v)]
            inc[s:s + m.dims[v], m.block(v)] = np.eye(m.dims[v], dtype=np.int64)
        inclusions.append(inc)
        action += np.einsum("ab,ibc,dc->iad", inc, m.action, inc)
    projections = [inc.T.copy() for inc in inclusions]
    M = Module(A, dims, action % A.field.p, check=False, name=name or "+".join(m.name for m in mods if m.name))
    return DirectSum(M, inclusions, projections)


def graded_subspace(M: Module, W: np.ndarray) -> list[np.ndarray]:
    """Per-vertex bases of a graded subspace given by spanning columns."""
    F = M.field
    out = []
    for v in range(len(M.dims)):
        sl = M.block(v)
        out.append(F.column_space(W[sl, :]) if W.shape[1] else np.zeros((M.dims[v], 0), np.int64))
    return out


def submodule(M: Module, W: np.ndarray, name: str = "") -> tuple[Module, np.ndarray]:
    """The submodule spanned by the columns of a graded invariant subspace ``W``.

    Returns the submodule and its inclusion matrix.
    """
    F = M.field
    W = np.asarray(W, dtype=np.int64).reshape(M.dim, -1) % F.p
    parts = graded_subspace(M, W)
    dims = [p.shape[1] for p in parts]
    inc = np.zeros((M.dim, sum(dims)), dtype=np.int64)
    c = 0
    for v, part in enumerate(parts):
        inc[M.block(v), c:c + dims[v]] = part
        c += dims[v]
    if F.rank(np.hstack([inc, W])) != inc.shape[1]:
        raise ModuleError("subspace is not graded")
    if inc.shape[1] == 0:
        return zero_module(M.algebra), inc
    L = F.left_inverse(inc)
    image = np.einsum("iab,bc->iac", M.action, inc) % F.p
    action = np.einsum("ab,ibc->iac", L, image) % F.p
    if np.any(np.einsum("ab,ibc->iac", inc, action) % F.p != image):
        raise ModuleError("subspace is not a submodule")
    return Module(M.algebra, dims, action, check=False, name=name), inc


def quotient_module(M: Module, W: np.ndarray, name: str = "") -> tuple[Module, np.ndarray]:
    """``M / W`` for a graded submodule spanned by the columns of ``W``.

    Returns the quotient and the projection matrix ``M -> M/W``.
    """
    F = M.field
    W = np.asarray(W, dtype=np.int64).reshape(M.dim, -1) % F.p
    parts = graded_subspace(M, W)
    dims, comps = [], []
    for v, part in enumerate(parts):
        keep = F.complement_columns(part, M.dims[v])
        dims.append(len(keep))
        comps.append((part, keep))
    d = sum(dims)
    # change of basis [W_v | complement_v] per vertex; quotient coordinates are the complement rows
    proj = np.zeros((d, M.dim), dtype=np.int64)
    c = 0
    for v, (part, keep) in enumerate(comps):
        n_v = M.dims[v]
        basis = np.hstack([part, np.eye(n_v, dtype=np.int64)[:, keep]]) if n_v else np.zeros((0, 0), np.int64)
        if n_v:
            inv = F.inverse(basis)
            proj[c:c + len(keep), M.block(v)] = inv[part.shape[1]:, :]
        c += len(keep)
    if d == 0:
        return zero_module(M.algebra), proj
    sect = np.zeros((M.dim, d), dtype=np.int64)  # section: complement basis vectors
    c = 0
    for v, (part, keep) in enumerate(comps):
        for j, kk in enumerate(keep):
            sect[M.offsets[v] + kk, c + j] = 1
        c += len(keep)
    action = np.einsum("ab,ibc,cd->iad", proj, M.action, sect) % F.p
    Q = Module(M.algebra, dims, action, check=False, name=name)
    # W must be invariant for the quotient action to be well defined
    stray = np.einsum("ab,ibc->iac", proj, np.einsum("ibc,cd->ibd", M.action, W)) % F.p
    if np.any(stray):
        raise ModuleError("subspace is not a submodule")
    return Q, proj


def kernel_of(f: ModuleMap) -> tuple[Module, np.ndarray]:
    F = f.source.field
    cols = []
    M, N = f.source, f.target
    for v in range(len(M.dims)):
        blk = f.matrix[N.block(v), M.block(v)]
        k = F.kernel_basis(blk) if M.dims[v] else np.zeros((0, 0), np.int64)
        full = np.zeros((M.dim, k.shape[0]), dtype=np.int64)
        full[M.block(v), :] = k.T
        cols.append(full)
    W = np.hstack(cols) if cols else np.zeros((M.dim, 0), np.int64)
    return submodule(M, W)


def image_of(f: ModuleMap) -> tuple[Module, np.ndarray]:
    return submodule(f.target, f.matrix)


def cokernel_of(f: ModuleMap) -> tuple[Module, np.ndarray]:
    return quotient_module(f.target, f.matrix)


def lift_module(N: Module, q: Quotient, A: BasedAlgebra) -> Module:
    """Restrict scalars along ``A -> A/I``."""
    dims = [0] * A.num_vertices
    for v, w in q.vertex_map.items():
        dims[v] = N.dims[w]
    action = np.tensordot(q.projection.T, N.action, axes=1) % A.field.p
    # basis order already follows the surviving vertices in order
    return Module(A, dims, action, check=True, name=N.name)


def restrict_to_corner(N: Module, cor: Corner) -> Module:
    """``G(N) = Hom(Ae, N) = eN`` as a module over the corner algebra ``eAe``."""
    idx = np.concatenate([np.arange(N.offsets[v], N.offsets[v + 1]) for v in cor.vertices]).astype(int)
    dims = [N.dims[v] for v in cor.vertices]
    action = N.action[cor.embedding][:, idx][:, :, idx]
    return Module(cor.algebra, dims, action, check=False, name=f"G({N.name})" if N.name else "")


apply_G = restrict_to_corner


# ---------------------------------------------------------------------------
# Hom spaces


def _vec_index(rows: int, cols: int, offset: int) -> np.ndarray:
    return offset + np.arange(rows * cols).reshape(cols, rows).T  # column-major positions


def hom_basis(M: Module, N: Module) -> HomSpace:
    """Basis of ``Hom_A(M, N)`` by solving the intertwining equations blockwise."""
    if M.algebra is not N.algebra:
        raise ModuleError("Hom between modules over different algebras")
    A, F = M.algebra, M.field
    k = A.num_vertices
    sizes = [N.dims[v] * M.dims[v] for v in range(k)]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    nunk = int(offs[-1])
    if nunk == 0:
        return HomSpace(M, N, [])
    rows = []
    for g in A.generators:
        t, s = A.blocks[g]
        if N.dims[t] == 0 or M.dims[s] == 0:
            continue
        Ng = N.act(g)[N.block(t), N.block(s)]
        Mg = M.act(g)[M.block(t), M.block(s)]
        eq = np.zeros((N.dims[t] * M.dims[s], nunk), dtype=np.int64)
        # vec(Ng X_s) - vec(X_t Mg)
        eq[:, offs[s]:offs[s + 1]] += np.kron(np.eye(M.dims[s], dtype=np.int64), Ng)
        eq[:, offs[t]:offs[t + 1]] -= np.kron(Mg.T, np.eye(N.dims[t], dtype=np.int64))
        rows.append(eq % F.p)
    system = np.vstack(rows) if rows else np.zeros((0, nunk), dtype=np.int64)
    sols = F.kernel_basis(system)
    basis = []
    for x in sols:
        f = np.zeros((N.dim, M.dim), dtype=np.int64)
        for v in range(k):
            if sizes[v]:
                f[N.block(v), M.block(v)] = x[offs[v]:offs[v + 1]].reshape(M.dims[v], N.dims[v]).T
        basis.append(f)
    return HomSpace(M, N, basis)


def hom_dim(M: Module, N: Module) -> int:
    return hom_basis(M, N).dim


def induced_rank(maps: Sequence[np.ndarray], field: PrimeField) -> int:
    """Rank of a linear map given by the images of a basis (each image a matrix)."""
    if not maps:
        return 0
    return field.rank(np.stack([np.asarray(m).ravel() for m in maps]))


# ---------------------------------------------------------------------------
# local endomorphism rings, decomposition, isomorphism


def scalar_part(h: np.ndarray, F: PrimeField) -> int:
    """The eigenvalue of an endomorphism of the form ``scalar + nilpotent``."""
    n = h.shape[0]
    if n == 0:
        return 0
    if n % F.p:
        return int(np.trace(h) % F.p) * F.inv(n) % F.p
    eye = F.eye(n)
    for lam in range(F.p):
        if F.rank(F.sub(h, F.scale(lam, eye))) < n:
            return lam
    raise DecompositionError("endomorphism has no eigenvalue in the prime field")


def is_local(M: Module, end: Optional[HomSpace] = None) -> bool:
    """True iff ``End(M) = K*1 + J`` with ``J`` nilpotent (split local ring)."""
    F = M.field
    if M.dim == 0:
        return False
    end = end if end is not None else hom_basis(M, M)
    n = M.dim
    eye = F.eye(n)
    try:
        J = [F.sub(h, F.scale(scalar_part(h, F), eye)) for h in end.basis]
    except DecompositionError:
        return False
    Jrows = F.row_space(np.stack([j.ravel() for j in J]))
    if Jrows.shape[0] != end.dim - 1:
        return False
    if Jrows.shape[0] == 0:
        return True
    gens = [r.reshape(n, n) for r in Jrows]
    power = gens
    for _ in range(n + 1):
        prods = [F.mul(x, y).ravel() for x in power for y in gens]
        rows = F.row_space(np.stack(prods))
        if rows.shape[0] == 0:
            return True
        power = [r.reshape(n, n) for r in rows]
    return False


def _charpoly_factors(h: np.ndarray, F: PrimeField) -> list[tuple[list[int], int]]:
    dom = GF(F.p)
    n = h.shape[0]
    dm = DomainMatrix([[dom(int(x)) for x in row] for row in h.tolist()], (n, n), dom)
    coeffs = [int(c) % F.p for c in dm.charpoly()]
    x = symbols("x")
    poly = Poly(coeffs, x, modulus=F.p)
    _, factors = poly.factor_list()
    return [([int(c) % F.p for c in f.all_coeffs()], mult) for f, mult in factors]


def _poly_eval(coeffs: list[int], h: np.ndarray, F: PrimeField) -> np.ndarray:
    out = F.zeros(*h.shape)
    eye = F.eye(h.shape[0])
    for c in coeffs:
        out = F.add(F.mul(out, h), F.scale(c, eye))
    return out


def fitting_components(M: Module, h: np.ndarray) -> list[np.ndarray]:
    """Generalized eigenspaces of an endomorphism, one per irreducible factor."""
    F = M.field
    comps = []
    for coeffs, mult in _charpoly_factors(h, F):
        fh = F.power(_poly_eval(coeffs, h, F), mult)
        comps.append(kernel_of(ModuleMap(M, M, fh))[1])
    return comps


@dataclass
class Decomposition:
    module: Module
    summands: list[Module]
    inclusions: list[np.ndarray]
    classes: list[list[int]]

    @property
    def parts(self) -> list[tuple[Module, int]]:
        return [(self.summands[c[0]], len(c)) for c in self.classes]

    @property
    def split_isomorphism(self) -> np.ndarray:
        """Columns: the summands' bases in module coordinates (invertible)."""
        if not self.inclusions:
            return np.zeros((self.module.dim, 0), dtype=np.int64)
        return np.hstack(self.inclusions)

    def projections(self) -> list[np.ndarray]:
        F = self.module.field
        inv = F.inverse(self.split_isomorphism)
        out, c = [], 0
        for inc in self.inclusions:
            out.append(inv[c:c + inc.shape[1]])
            c += inc.shape[1]
        return out

    def basic(self) -> list[Module]:
        return [self.summands[c[0]] for c in self.classes]


def _split(M: Module, rng: np.random.Generator, budget: int) -> list[tuple[Module, np.ndarray]]:
    F = M.field
    if M.dim == 0:
        return []
    end = hom_basis(M, M)
    if is_local(M, end):
        return [(M, F.eye(M.dim))]
    for _ in range(budget):
        h = end.element(rng.integers(0, F.p, size=end.dim))
        comps = fitting_components(M, h)
        comps = [c for c in comps if c.shape[1]]
        if len(comps) > 1:
            out = []
            for W in comps:
                sub, inc = submodule(M, W)
                for part, pinc in _split(sub, rng, budget):
                    out.append((part, F.mul(inc, pinc)))
            return out
    raise DecompositionError(
        f"no splitting endomorphism found in {budget} samples and End(M) failed the local test "
        f"(dims={M.dims}, dim End={end.dim})")


def decompose(M: Module, seed: int = 0, budget: int = 32) -> Decomposition:
    """Split ``M`` into indecomposables and group them by isomorphism class."""
    key = ("decompose", seed, budget)
    if key in M._cache:
        return M._cache[key]
    rng = np.random.default_rng(seed)
    pieces = _split(M, rng, budget)
    summands = [p for p, _ in pieces]
    for i, s in enumerate(summands):
        if not s.name:
            s.name = f"{M.name}[{i}]" if M.name else ""
    incs = [inc for _, inc in pieces]
    classes: list[list[int]] = []
    for i, s in enumerate(summands):
        for c in classes:
            if indecomposable_isomorphism(summands[c[0]], s) is not None:
                c.append(i)
                break
        else:
            classes.append([i])
    dec = Decomposition(M, summands, incs, classes)
    M._cache[key] = dec
    return dec


def indecomposable_isomorphism(A: Module, B: Module) -> Optional[np.ndarray]:
    """An isomorphism ``A -> B`` of indecomposables, or None.

    Uses the pairing ``(f, g) -> scalar part of g∘f`` on ``Hom(A,B) x Hom(B,A)``,
    which is nonzero exactly when the (local) modules are isomorphic.
    """
    if A.algebra is not B.algebra:
        raise ModuleError("modules over different algebras")
    if A.dims != B.dims:
        return None
    if A.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    F = A.field
    H, K = hom_basis(A, B), hom_basis(B, A)
    for f in H:
        for g in K:
            if scalar_part(F.mul(g, f), F):
                return f
    return None


def find_isomorphism(M: Module, N: Module, seed: int = 0, budget: int = 32) -> tuple[Optional[bool], Optional[np.ndarray]]:
    """Three-valued isomorphism search; returns (decision, isomorphism or None)."""
    if M.algebra is not N.algebra:
        raise ModuleError("modules over different algebras")
    F = M.field
    if M.dims != N.dims:
        return False, None
    if M.dim == 0:
        return True, np.zeros((0, 0), dtype=np.int64)
    H = hom_basis(M, N)
    if H.dim == 0:
        return False, None
    if len({H.dim, hom_dim(N, M), hom_dim(M, M), hom_dim(N, N)}) != 1:
        return False, None
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        f = H.element(rng.integers(0, F.p, size=H.dim))
        if F.rank(f) == M.dim:
            return True, f
    try:
        dm, dn = decompose(M, seed), decompose(N, seed)
    except DecompositionError:
        return None, None
    if sorted(len(c) for c in dm.classes) != sorted(len(c) for c in dn.classes):
        return False, None
    # match indecomposable summands one by one
    used = [False] * len(dn.summands)
    iso = np.zeros((N.dim, M.dim), dtype=np.int64)
    proj_m = dm.projections()
    for i, s in enumerate(dm.summands):
        for j, t in enumerate(dn.summands):
            if used[j]:
                continue
            g = indecomposable_isomorphism(s, t)
            if g is not None:
                used[j] = True
                iso = F.add(iso, F.mul(dn.inclusions[j], g, proj_m[i]))
                break
        else:
            return False, None
    return True, iso


def is_isomorphic(M: Module, N: Module, seed: int = 0, budget: int = 32) -> Optional[bool]:
    """True / False, or None when the search is inconclusive."""
    return find_isomorphism(M, N, seed, budget)[0]


def in_add(M: Module, summands: Sequence[Module], seed: int = 0) -> bool:
    """Whether every indecomposable summand of ``M`` is isomorphic to one of ``summands``."""
    if M.dim == 0:
        return True
    for part, _ in decompose(M, seed).parts:
        if not any(indecomposable_isomorphism(part, s) is not None for s in summands):
            return False
    return True


def random_module(A: BasedAlgebra, rng: np.random.Generator, max_gens: int = 2, max_rels: int = 2) -> Module:
    """A random finitely presented module ``P / (A * random elements)``."""
    F = A.field
    k = A.num_vertices
    tops = [int(v) for v in rng.integers(0, k, size=int(rng.integers(1, max_gens + 1)))]
    P = direct_sum([projective(A, v) for v in tops]).module
    nrel = int(rng.integers(0, max_rels + 1))
    # relations mostly inside rad P, so the quotient keeps its top
    R = np.hstack([P.act(b) for b in A.radical]) if A.radical else np.zeros((P.dim, 0), dtype=np.int64)
    gens = []
    for _ in range(nrel):
        v = int(rng.integers(0, k))
        x = np.zeros(P.dim, dtype=np.int64)
        if R.shape[1] and rng.random() < 0.8:
            x[P.block(v)] = (R @ rng.integers(0, F.p, size=R.shape[1]))[P.block(v)] % F.p
        else:
            x[P.block(v)] = rng.integers(0, F.p, size=P.dims[v])
        gens.append(x)
    if not gens:
        return P
    W = np.stack([np.tensordot(P.action, g, axes=([2], [0]))[i] for g in gens for i in range(A.n)], axis=1) % F.p
    Q, _ = quotient_module(P, W)
    Q.name = "M"
    return Q
