"""Text formats for algebras, based algebras and modules.

Quiver algebra (``.alg``)::

    field 101
    vertices 3
    arrow a1 1 2
    arrow a2 2 3
    relation 1*a1*a2
    bound 6

Based algebra (``.balg``), written by ``endo`` and read back exactly::

    field 101
    basis e1 e2 x
    idem e1 e2
    mult 1 3 = [0, 0, 1]

``mult i j`` gives the coordinates of ``b_i * b_j`` (1-based indices);
omitted products are zero.

Module (``.mod``)::

    algebra a3rad2.alg
    dims 1 1 0
    map a1 = [[1]]

``map`` matrices are ``dims[target] x dims[source]``; for based algebras
``act <label> = [[...]]`` gives the full action matrix of a basis element
(omitted radical elements act by zero).
Vertices are 1-based in files and ``#`` starts a comment.
"""
from __future__ import annotations

import ast
import re
from importlib import resources
from pathlib import Path as FsPath
from typing import Optional, Union

import numpy as np

from .algebra import AlgebraError, BasedAlgebra, Quiver, Relation, build_quiver_algebra, to_based
from .linalg import DEFAULT_PRIME, PrimeField
from .modcat import Module, ModuleError, from_blocks, from_quiver_maps

PathLike = Union[str, FsPath]


class FormatError(ValueError):
    """Malformed input file."""

    def __init__(self, path, lineno: Optional[int], message: str):
        where = f"{path}:{lineno}" if lineno else f"{path}"
        super().__init__(f"{where}: {message}")


def data_dir() -> FsPath:
    return FsPath(str(resources.files("auslander") / "data"))


def resolve_path(path: PathLike) -> FsPath:
    """The path itself if it exists, otherwise the bundled file of the same name."""
    p = FsPath(path)
    if p.exists():
        return p
    for cand in (data_dir() / p.name, data_dir() / p):
        if cand.exists():
            return cand
    raise FileNotFoundError(f"no such file: {path}")


def _lines(path: FsPath):
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _field(p_file: Optional[int], p_cli: Optional[int], path) -> PrimeField:
    if p_file is not None and p_cli is not None and p_file != p_cli:
        raise FormatError(path, None, f"file declares field {p_file} but --p {p_cli} was given")
    p = p_file if p_file is not None else (p_cli if p_cli is not None else DEFAULT_PRIME)
    try:
        return PrimeField(p)
    except ValueError as exc:
        raise FormatError(path, None, str(exc)) from None


_TERM = re.compile(r"^([+-]?\d*)\s*\*?\s*([A-Za-z_][\w']*(?:\s*\*\s*[A-Za-z_][\w']*)*)$")


def parse_relation(text: str) -> Relation:
    """``2*a*b + -1*c*d`` (a bare path has coefficient 1; ``-`` between terms is accepted)."""
    text = re.sub(r"(?<=[\w'])\s*-\s*", " + -", text.strip())
    terms = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"cannot parse relation term {chunk!r}")
        c = m.group(1)
        coeff = -1 if c == "-" else (1 if c in ("", "+") else int(c))
        names = tuple(n.strip() for n in m.group(2).split("*"))
        terms.append((coeff, names))
    if not terms:
        raise ValueError("empty relation")
    return Relation.of(*terms)


def load_algebra(path: PathLike, p: Optional[int] = None, bound: Optional[int] = None) -> BasedAlgebra:
    """Read a ``.alg`` quiver algebra or a ``.balg`` based algebra (detected by content)."""
    path = resolve_path(path)
    lines = list(_lines(path))
    if any(l.split()[0] in ("basis", "mult", "idem") for _, l in lines):
        return _load_based(path, lines, p)
    p_file, n, arrows, rels, file_bound = None, None, [], [], None
    for lineno, line in lines:
        key, _, rest = line.partition(" ")
        try:
            if key == "field":
                p_file = int(rest)
            elif key == "vertices":
                n = int(rest)
            elif key == "arrow":
                name, s, t = rest.split()
                arrows.append((name, int(s) - 1, int(t) - 1))
            elif key == "relation":
                rels.append(parse_relation(rest))
            elif key == "bound":
                file_bound = int(rest)
            else:
                raise ValueError(f"unknown directive {key!r}")
        except ValueError as exc:
            raise FormatError(path, lineno, str(exc)) from None
    if n is None:
        raise FormatError(path, None, "missing 'vertices' line")
    F = _field(p_file, p, path)
    try:
        q = Quiver.from_edges(n, arrows)
        A = to_based(build_quiver_algebra(q, rels, F, bound if bound is not None else file_bound))
    except AlgebraError as exc:
        raise FormatError(path, None, str(exc)) from None
    A.name = path.stem
    A.source_path = str(path)
    return A


def _vector(text: str):
    try:
        return ast.literal_eval(text.strip())
    except (ValueError, SyntaxError):
        raise ValueError(f"cannot parse {text.strip()!r} as a list") from None


def _load_based(path: FsPath, lines, p: Optional[int]) -> BasedAlgebra:
    p_file, labels, idem, prods = None, None, None, []
    for lineno, line in lines:
        key, _, rest = line.partition(" ")
        try:
            if key == "field":
                p_file = int(rest)
            elif key == "basis":
                labels = rest.split()
            elif key == "idem":
                idem = rest.split()
            elif key == "mult":
                lhs, _, rhs = rest.partition("=")
                i, j = (int(x) - 1 for x in lhs.split())
                prods.append((lineno, i, j, _vector(rhs)))
            else:
                raise ValueError(f"unknown directive {key!r}")
        except ValueError as exc:
            raise FormatError(path, lineno, str(exc)) from None
    if labels is None or idem is None:
        raise FormatError(path, None, "based algebra needs 'basis' and 'idem' lines")
    F = _field(p_file, p, path)
    n = len(labels)
    mult = np.zeros((n, n, n), dtype=np.int64)
    for lineno, i, j, vec in prods:
        if not (0 <= i < n and 0 <= j < n) or len(vec) != n:
            raise FormatError(path, lineno, "mult index or vector length out of range")
        mult[i, j] = np.asarray(vec, dtype=np.int64) % F.p
    try:
        idx = [labels.index(e) for e in idem]
        A = BasedAlgebra(F, labels, mult, idx, check=True, name=path.stem)
    except (ValueError, AlgebraError) as exc:
        raise FormatError(path, None, str(exc)) from None
    A.source_path = str(path)
    return A


def format_based_algebra(A: BasedAlgebra) -> str:
    out = [f"# based algebra {A.name}".rstrip(), f"field {A.field.p}", "basis " + " ".join(A.labels),
           "idem " + " ".join(A.labels[i] for i in A.idempotents)]
    for i in range(A.n):
        for j in range(A.n):
            if np.any(A.mult[i, j]):
                out.append(f"mult {i + 1} {j + 1} = [{', '.join(str(int(x)) for x in A.mult[i, j])}]")
    return "\n".join(out) + "\n"


def save_based_algebra(A: BasedAlgebra, path: PathLike):
    FsPath(path).write_text(format_based_algebra(A))


def load_module(path: PathLike, algebra: Optional[BasedAlgebra] = None, p: Optional[int] = None) -> Module:
    """Read a ``.mod`` file; the ``algebra`` line is used only when no algebra is passed."""
    path = resolve_path(path)
    alg_ref, dims, maps, acts = None, None, {}, {}
    for lineno, line in _lines(path):
        key, _, rest = line.partition(" ")
        try:
            if key == "algebra":
                alg_ref = rest.strip()
            elif key == "dims":
                dims = [int(x) for x in rest.split()]
            elif key in ("map", "act"):
                name, _, rhs = rest.partition("=")
                mat = _vector(rhs)
                (maps if key == "map" else acts)[name.strip()] = mat
            else:
                raise ValueError(f"unknown directive {key!r}")
        except ValueError as exc:
            raise FormatError(path, lineno, str(exc)) from None
    if algebra is None:
        if alg_ref is None:
            raise FormatError(path, None, "no algebra given and no 'algebra' line")
        ref = FsPath(alg_ref)
        algebra = load_algebra(ref if ref.is_absolute() else path.parent / ref, p)
    if dims is None:
        raise FormatError(path, None, "missing 'dims' line")
    if len(dims) != algebra.num_vertices:
        raise FormatError(path, None, f"{len(dims)} dims for an algebra with {algebra.num_vertices} vertices")
    try:
        if acts and maps:
            raise ModuleError("use either 'map' or 'act' lines, not both")
        if acts:
            M = from_blocks(algebra, dims, {k: np.asarray(v, dtype=np.int64) for k, v in acts.items()},
                            name=path.stem)
        else:
            M = from_quiver_maps(algebra, dims, {k: np.asarray(v, dtype=np.int64) for k, v in maps.items()},
                                 name=path.stem)
    except (ModuleError, AlgebraError, ValueError) as exc:
        raise FormatError(path, None, str(exc)) from None
    return M


def format_module(M: Module, algebra_ref: str = "") -> str:
    """Module file: arrow blocks for quiver algebras, full radical actions otherwise."""
    A = M.algebra
    out = []
    if algebra_ref:
        out.append(f"algebra {algebra_ref}")
    out.append("dims " + " ".join(str(d) for d in M.dims))
    qa = getattr(A, "quiver_algebra", None)
    for g in (A.generators if qa is not None else A.radical):
        mat = M.act(g)
        if not np.any(mat):
            continue
        if qa is not None:
            t, s = A.blocks[g]
            blk = mat[M.block(t), M.block(s)]
            out.append(f"map {A.labels[g]} = {blk.tolist()}")
        else:
            out.append(f"act {A.labels[g]} = {mat.tolist()}")
    return "\n".join(out) + "\n"


def load_indecomposables(directory: PathLike, algebra: BasedAlgebra) -> list[Module]:
    d = FsPath(directory)
    if not d.exists():
        d = data_dir() / d.name
    if not d.is_dir():
        raise FileNotFoundError(f"no such directory: {directory}")
    return [load_module(f, algebra) for f in sorted(d.glob("*.mod"))]
