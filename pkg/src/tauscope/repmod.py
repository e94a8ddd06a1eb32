"""Modules over the engine's algebras, and the maps between them.

A representation of a quiver algebra stores one matrix per arrow (slots are
the vertices).  Modules over an abstract structure-constant algebra use a
single slot and one action matrix per basis element; this is how modules
over localised rings are handled uniformly.

Hom spaces are computed as kernels of the intertwining equations, so every
derived object (kernels, traces, extensions, the AR translate) is exact and
deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra import Algebra, QuiverAlgebra, jacobson_radical
from .errors import NonSplitEndomorphism, UnsupportedCharacteristic
from .exactlin import (
    Matrix,
    column_space_basis,
    kernel_basis,
    quotient_map,
    rref,
    section_of_quotient,
    solve_matrix,
)


def _is_quiver(algebra) -> bool:
    return isinstance(algebra, QuiverAlgebra)


def num_slots(algebra) -> int:
    return len(algebra.quiver.vertices) if _is_quiver(algebra) else 1


def generators(algebra):
    """(key, source slot, target slot) for the acting generators."""
    if _is_quiver(algebra):
        qi = algebra.quiver.vertex_index
        return [(a.name, qi[a.source], qi[a.target]) for a in algebra.quiver.arrows]
    return [(i, 0, 0) for i in range(algebra.dim)]


class Representation:
    """Finite-dimensional left module, stored slot-wise."""

    __slots__ = ("algebra", "dims", "mats")

    def __init__(self, algebra, dims, mats, check=True):
        self.algebra = algebra
        self.dims = tuple(dims)
        self.mats = dict(mats)
        if len(self.dims) != num_slots(algebra):
            raise ValueError("dimension vector length mismatch")
        for key, s, t in generators(algebra):
            m = self.mats.get(key)
            if m is None:
                self.mats[key] = Matrix.zeros(algebra.field, self.dims[t], self.dims[s])
            elif m.shape() != (self.dims[t], self.dims[s]):
                raise ValueError(f"matrix for generator {key!r} has wrong shape")
        if check:
            self._check()

    def _check(self):
        A = self.algebra
        if _is_quiver(A):
            for rel in A.presentation.relations:
                src = A.quiver.arrow_by_name[rel[0][1][0]].source
                tgt = A.quiver.arrow_by_name[rel[0][1][-1]].target
                si, ti = A.quiver.vertex_index[src], A.quiver.vertex_index[tgt]
                acc = Matrix.zeros(A.field, self.dims[ti], self.dims[si])
                for coeff, arrows in rel:
                    acc = acc.add(self.path_action(src, arrows).scale(coeff))
                if not acc.is_zero():
                    raise ValueError("relation does not act as zero")
        else:
            n = self.dims[0]
            ident = Matrix.zeros(A.field, n, n)
            for i in A.unit_idxs:
                ident = ident.add(self.mats[i])
            if ident != Matrix.identity(A.field, n):
                raise ValueError("unit does not act as identity")
            for i in range(A.dim):
                for j in range(A.dim):
                    lhs = self.mats[i].mul(self.mats[j])
                    rhs = Matrix.zeros(A.field, n, n)
                    for k, c in A.mult[i][j]:
                        rhs = rhs.add(self.mats[k].scale(c))
                    if lhs != rhs:
                        raise ValueError("action does not respect structure constants")

    # -- basic accessors ----------------------------------------------------

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def slot(self, vertex) -> int:
        return self.algebra.quiver.vertex_index[vertex] if _is_quiver(self.algebra) else 0

    def path_action(self, source_vertex, traversal) -> Matrix:
        """Matrix of a path acting M_source -> M_target (quiver algebras)."""
        A = self.algebra
        s = A.quiver.vertex_index[source_vertex]
        acc = Matrix.identity(A.field, self.dims[s])
        cur = source_vertex
        for name in traversal:
            arrow = A.quiver.arrow_by_name[name]
            if arrow.source != cur:
                raise ValueError("path not composable")
            acc = self.mats[name].mul(acc)
            cur = arrow.target
        return acc

    def path_apply(self, source_vertex, traversal, vec):
        """Apply a path to a single vector at the source slot."""
        A = self.algebra
        cur = source_vertex
        w = tuple(vec)
        for name in traversal:
            arrow = A.quiver.arrow_by_name[name]
            if arrow.source != cur:
                raise ValueError("path not composable")
            w = self.mats[name].apply(w)
            cur = arrow.target
        return w

    def element_block(self, vec, target_vertex, source_vertex) -> Matrix:
        """Action of an element of e_target . A . e_source as a block."""
        A = self.algebra
        si = self.slot(source_vertex)
        ti = self.slot(target_vertex)
        acc = Matrix.zeros(A.field, self.dims[ti], self.dims[si])
        for i, c in enumerate(vec):
            if not c:
                continue
            src, tgt, trav = A.paths[i]
            if src != source_vertex or tgt != target_vertex:
                raise ValueError("element not supported on the requested block")
            acc = acc.add(self.path_action(src, trav).scale(c))
        return acc

    def element_action(self, vec) -> Matrix:
        """Total-space action of an abstract algebra element."""
        n = self.dims[0]
        acc = Matrix.zeros(self.algebra.field, n, n)
        for i, c in enumerate(vec):
            if c:
                acc = acc.add(self.mats[i].scale(c))
        return acc

    def __repr__(self):
        return f"Rep{list(self.dims)}"


class ModuleMap:
    """Morphism of representations; one block per slot."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Representation, target: Representation, blocks, check=True):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        for s, b in enumerate(self.blocks):
            if b.shape() != (target.dims[s], source.dims[s]):
                raise ValueError("block shape mismatch")
        if check and not self.intertwines():
            raise ValueError("blocks do not intertwine the actions")

    def intertwines(self) -> bool:
        for key, s, t in generators(self.source.algebra):
            lhs = self.blocks[t].mul(self.source.mats[key])
            rhs = self.target.mats[key].mul(self.blocks[s])
            if lhs != rhs:
                return False
        return True

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ValueError("composition mismatch")
        return ModuleMap(other.source, self.target,
                         [a.mul(b) for a, b in zip(self.blocks, other.blocks)], check=False)

    def add(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a.add(b) for a, b in zip(self.blocks, other.blocks)], check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [b.scale(c) for b in self.blocks], check=False)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def is_injective(self) -> bool:
        return all(rref(b).rank == b.ncols for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(rref(b).rank == b.nrows for b in self.blocks)

    def is_isomorphism(self) -> bool:
        return (self.source.dims == self.target.dims
                and all(rref(b).rank == b.nrows for b in self.blocks))

    def flatten(self):
        return tuple(x for b in self.blocks for row in b.rows for x in row)

    @staticmethod
    def zero(source, target) -> "ModuleMap":
        f = source.algebra.field
        return ModuleMap(source, target,
                         [Matrix.zeros(f, target.dims[s], source.dims[s])
                          for s in range(len(source.dims))], check=False)

    @staticmethod
    def identity(rep) -> "ModuleMap":
        f = rep.algebra.field
        return ModuleMap(rep, rep, [Matrix.identity(f, d) for d in rep.dims], check=False)

    def __repr__(self):
        return f"Map({self.source!r}->{self.target!r})"


@dataclass
class ShortExactSequence:
    iota: ModuleMap
    pi: ModuleMap

    def validate(self) -> bool:
        if not self.iota.is_injective() or not self.pi.is_surjective():
            return False
        for s in range(len(self.iota.source.dims)):
            comp = self.pi.blocks[s].mul(self.iota.blocks[s])
            if not comp.is_zero():
                return False
            if rref(self.iota.blocks[s]).rank != kernel_basis(self.pi.blocks[s]).ncols:
                return False
        return True


def zero_representation(algebra) -> Representation:
    n = num_slots(algebra)
    return Representation(algebra, (0,) * n, {}, check=False)


# ---------------------------------------------------------------------------
# Hom spaces

def hom_basis(M: Representation, N: Representation) -> list:
    """Basis of Hom(M, N) in a deterministic order."""
    if M.algebra is not N.algebra and M.algebra.labels != N.algebra.labels:
        raise ValueError("modules over different algebras")
    field = M.algebra.field
    nslots = len(M.dims)
    offsets = []
    total = 0
    for s in range(nslots):
        offsets.append(total)
        total += N.dims[s] * M.dims[s]
    if total == 0:
        return []

    rows = []
    for key, s, t in generators(M.algebra):
        Mg, Ng = M.mats[key], N.mats[key]
        for r in range(N.dims[t]):
            for c in range(M.dims[s]):
                row = [field.zero] * total
                # (T_t Mg)[r][c]
                for q in range(M.dims[t]):
                    row[offsets[t] + r * M.dims[t] + q] = row[offsets[t] + r * M.dims[t] + q] + Mg.rows[q][c]
                # -(Ng T_s)[r][c]
                for q in range(N.dims[s]):
                    row[offsets[s] + q * M.dims[s] + c] = row[offsets[s] + q * M.dims[s] + c] - Ng.rows[r][q]
                rows.append(row)
    if rows:
        ker = kernel_basis(Matrix(field, len(rows), total, rows))
    else:
        ker = Matrix.identity(field, total)
    out = []
    for j in range(ker.ncols):
        v = ker.col(j)
        blocks = []
        for s in range(nslots):
            seg = v[offsets[s]: offsets[s] + N.dims[s] * M.dims[s]]
            blocks.append(Matrix(field, N.dims[s], M.dims[s],
                                 [seg[r * M.dims[s]:(r + 1) * M.dims[s]]
                                  for r in range(N.dims[s])]))
        out.append(ModuleMap(M, N, blocks, check=False))
    return out


def hom_dim(M, N) -> int:
    return len(hom_basis(M, N))


# ---------------------------------------------------------------------------
# sub/quotient structure

def sub_representation(N: Representation, subspaces):
    """Submodule spanned slot-wise by the given column bases."""
    A = N.algebra
    field = A.field
    dims = tuple(b.ncols for b in subspaces)
    mats = {}
    for key, s, t in generators(A):
        img = N.mats[key].mul(subspaces[s])
        sol = solve_matrix(subspaces[t], img)
        if sol is None:
            raise ValueError("subspaces are not stable under the action")
        mats[key] = sol
    rep = Representation(A, dims, mats, check=False)
    incl = ModuleMap(rep, N, subspaces, check=False)
    return rep, incl


def quotient_representation(N: Representation, subspaces):
    """Quotient by the submodule spanned slot-wise by the column bases."""
    A = N.algebra
    field = A.field
    qs = [quotient_map(b) for b in subspaces]
    rs = [section_of_quotient(b) for b in subspaces]
    dims = tuple(q.nrows for q in qs)
    mats = {}
    for key, s, t in generators(A):
        mats[key] = qs[t].mul(N.mats[key]).mul(rs[s])
    rep = Representation(A, dims, mats, check=False)
    proj = ModuleMap(N, rep, qs, check=False)
    return rep, proj


def kernel(f: ModuleMap):
    subs = [kernel_basis(b) for b in f.blocks]
    return sub_representation(f.source, subs)


def image(f: ModuleMap):
    subs = [column_space_basis(b) for b in f.blocks]
    return sub_representation(f.target, subs)


def cokernel(f: ModuleMap):
    subs = [column_space_basis(b) for b in f.blocks]
    return quotient_representation(f.target, subs)


def kernel_sequence(f: ModuleMap) -> ShortExactSequence:
    """0 -> ker f -> M -> im f -> 0."""
    _, incl = kernel(f)
    img, img_incl = image(f)
    # corestriction M -> im f
    blocks = []
    for s in range(len(f.blocks)):
        sol = solve_matrix(img_incl.blocks[s], f.blocks[s])
        blocks.append(sol)
    cor = ModuleMap(f.source, img, blocks, check=False)
    return ShortExactSequence(incl, cor)


def direct_sum(reps):
    """(sum, inclusions, projections); an empty list gives the zero module."""
    if not reps:
        raise ValueError("direct_sum needs at least one summand")
    A = reps[0].algebra
    field = A.field
    nslots = len(reps[0].dims)
    dims = tuple(sum(r.dims[s] for r in reps) for s in range(nslots))
    mats = {}
    for key, s, t in generators(A):
        mats[key] = Matrix.block_diag(field, [r.mats[key] for r in reps])
    total = Representation(A, dims, mats, check=False)
    incls, projs = [], []
    for idx, r in enumerate(reps):
        iblocks, pblocks = [], []
        for s in range(nslots):
            before = sum(rr.dims[s] for rr in reps[:idx])
            inc = Matrix.zeros(field, dims[s], r.dims[s])
            rows = [list(row) for row in inc.rows]
            for i in range(r.dims[s]):
                rows[before + i][i] = field.one
            iblocks.append(Matrix(field, dims[s], r.dims[s], rows))
            pr = Matrix.zeros(field, r.dims[s], dims[s])
            prows = [list(row) for row in pr.rows]
            for i in range(r.dims[s]):
                prows[i][before + i] = field.one
            pblocks.append(Matrix(field, r.dims[s], dims[s], prows))
        incls.append(ModuleMap(r, total, iblocks, check=False))
        projs.append(ModuleMap(total, r, pblocks, check=False))
    return total, incls, projs


# ---------------------------------------------------------------------------
# structural submodules for quiver representations

def radical_subspaces(M: Representation):
    A = M.algebra
    field = A.field
    cols = [[] for _ in M.dims]
    for key, s, t in generators(A):
        if _is_quiver(A):
            m = M.mats[key]
            for j in range(m.ncols):
                cols[t].append(m.col(j))
        else:
            raise ValueError("radical subspaces only for quiver algebras")
    out = []
    for s, vs in enumerate(cols):
        if vs:
            stacked = Matrix(field, M.dims[s], len(vs),
                             [[v[r] for v in vs] for r in range(M.dims[s])])
            out.append(column_space_basis(stacked))
        else:
            out.append(Matrix.zeros(field, M.dims[s], 0))
    return out


def top(M: Representation):
    return quotient_representation(M, radical_subspaces(M))


def socle_subspaces(M: Representation):
    A = M.algebra
    field = A.field
    out = []
    for s in range(len(M.dims)):
        outgoing = [M.mats[key] for key, src, _ in generators(A) if src == s]
        if outgoing:
            stacked = outgoing[0]
            for m in outgoing[1:]:
                stacked = stacked.vstack(m)
            out.append(kernel_basis(stacked))
        else:
            out.append(Matrix.identity(field, M.dims[s]))
    return out


def socle(M: Representation):
    return sub_representation(M, socle_subspaces(M))


def simple_representation(algebra: QuiverAlgebra, vertex) -> Representation:
    dims = [0] * num_slots(algebra)
    dims[algebra.quiver.vertex_index[vertex]] = 1
    return Representation(algebra, dims, {}, check=False)


def simple_modules(algebra: QuiverAlgebra):
    return [simple_representation(algebra, v) for v in algebra.quiver.vertices]


# ---------------------------------------------------------------------------
# projectives and sums of projectives

@dataclass
class ProjectiveSum:
    """Direct sum of vertex projectives with the path-basis bookkeeping."""

    algebra: QuiverAlgebra
    vertices: tuple
    rep: Representation
    inclusions: list
    projections: list
    slot_paths: list      # per summand: list per slot of algebra basis indices
    gen_positions: list   # per summand: (slot, offset in the summed rep)

    def generator_vectors(self):
        """Slot-wise coordinate vectors of each summand's idempotent generator."""
        field = self.algebra.field
        out = []
        for k in range(len(self.vertices)):
            s, off = self.gen_positions[k]
            vecs = [tuple(field.zero for _ in range(d)) for d in self.rep.dims]
            v = [field.zero] * self.rep.dims[s]
            v[off] = field.one
            vecs[s] = tuple(v)
            out.append(tuple(vecs))
        return out


def projective_with_basis(algebra: QuiverAlgebra, vertex):
    """P_vertex = A e_vertex with slots spanned by normal-form paths."""
    cache = getattr(algebra, "_proj_cache", None)
    if cache is None:
        cache = {}
        algebra._proj_cache = cache
    if vertex in cache:
        return cache[vertex]
    slots = num_slots(algebra)
    slot_paths = [[] for _ in range(slots)]
    for i, (src, tgt, trav) in enumerate(algebra.paths):
        if src == vertex:
            slot_paths[algebra.quiver.vertex_index[tgt]].append(i)
    dims = tuple(len(p) for p in slot_paths)
    pos = {}
    for s in range(slots):
        for j, idx in enumerate(slot_paths[s]):
            pos[idx] = (s, j)
    mats = {}
    field = algebra.field
    for key, s, t in generators(algebra):
        arrow_idx = algebra.path_index[(key,)]
        cols = []
        for idx in slot_paths[s]:
            prod = algebra.product_vec(arrow_idx, idx)  # arrow . path
            col = [field.zero] * dims[t]
            for k, c in enumerate(prod):
                if c:
                    ps, pj = pos[k]
                    if ps != t:
                        raise AssertionError("path product left its slot")
                    col[pj] = c
            cols.append(col)
        mats[key] = Matrix(field, dims[t], dims[s],
                           [[cols[j][r] for j in range(dims[s])] for r in range(dims[t])])
    rep = Representation(algebra, dims, mats, check=False)
    result = (rep, [tuple(p) for p in slot_paths])
    cache[vertex] = result
    return result


def projective_representation(algebra: QuiverAlgebra, vertex) -> Representation:
    return projective_with_basis(algebra, vertex)[0]


def projective_modules(algebra: QuiverAlgebra):
    return [projective_representation(algebra, v) for v in algebra.quiver.vertices]


def build_projective_sum(algebra: QuiverAlgebra, vertices) -> ProjectiveSum:
    vertices = tuple(vertices)
    if not vertices:
        rep = zero_representation(algebra)
        return ProjectiveSum(algebra, (), rep, [], [], [], [])
    parts = [projective_with_basis(algebra, v) for v in vertices]
    total, incls, projs = direct_sum([p[0] for p in parts])
    slot_paths = [p[1] for p in parts]
    gen_positions = []
    for k, v in enumerate(vertices):
        s = algebra.quiver.vertex_index[v]
        before = sum(parts[i][0].dims[s] for i in range(k))
        inner = slot_paths[k][s].index(algebra.trivial_index[v])
        gen_positions.append((s, before + inner))
    return ProjectiveSum(algebra, vertices, total, incls, projs, slot_paths, gen_positions)


def map_from_element_matrix(src: ProjectiveSum, dst: ProjectiveSum, entries) -> ModuleMap:
    """Realise a matrix over the algebra as a map of projective sums.

    entries[k][l] lies in e_{src_k} . A . e_{dst_l}; the map acts by right
    multiplication, component P(src_k) -> P(dst_l).
    """
    A = src.algebra
    field = A.field
    nslots = num_slots(A)
    blocks = [
        [[field.zero] * src.rep.dims[s] for _ in range(dst.rep.dims[s])]
        for s in range(nslots)
    ]
    for k in range(len(src.vertices)):
        for s in range(nslots):
            base_col = sum(projective_with_basis(A, src.vertices[i])[0].dims[s]
                           for i in range(k))
            for j, pidx in enumerate(src.slot_paths[k][s]):
                pvec = A.basis_vec(pidx)
                for l in range(len(dst.vertices)):
                    prod = A.multiply(pvec, entries[k][l])
                    if not any(prod):
                        continue
                    base_row = sum(projective_with_basis(A, dst.vertices[i])[0].dims[s]
                                   for i in range(l))
                    lookup = {idx: r for r, idx in enumerate(dst.slot_paths[l][s])}
                    for bidx, c in enumerate(prod):
                        if c:
                            blocks[s][base_row + lookup[bidx]][base_col + j] = \
                                blocks[s][base_row + lookup[bidx]][base_col + j] + c
    mats = [Matrix(field, dst.rep.dims[s], src.rep.dims[s], blocks[s])
            for s in range(nslots)]
    return ModuleMap(src.rep, dst.rep, mats, check=False)


def injective_representation(algebra: QuiverAlgebra, vertex) -> Representation:
    cache = getattr(algebra, "_inj_cache", None)
    if cache is None:
        cache = {}
        algebra._inj_cache = cache
    if vertex not in cache:
        opp = algebra.opposite_algebra()
        cache[vertex] = dual(projective_representation(opp, vertex))
    return cache[vertex]


def injective_modules(algebra: QuiverAlgebra):
    return [injective_representation(algebra, v) for v in algebra.quiver.vertices]


def dual(M: Representation) -> Representation:
    """K-dual, a module over the opposite quiver algebra."""
    A = M.algebra
    opp = A.opposite_algebra()
    mats = {}
    for key, s, t in generators(A):
        mats[key] = M.mats[key].transpose()
    return Representation(opp, M.dims, mats, check=False)


def regular_representation(algebra):
    if _is_quiver(algebra):
        return build_projective_sum(algebra, algebra.quiver.vertices).rep
    mats = {i: algebra.left_mult_matrix(i) for i in range(algebra.dim)}
    return Representation(algebra, (algebra.dim,), mats, check=False)


def regular_sum(algebra: QuiverAlgebra) -> ProjectiveSum:
    cache = getattr(algebra, "_regular_sum", None)
    if cache is None:
        cache = build_projective_sum(algebra, algebra.quiver.vertices)
        algebra._regular_sum = cache
    return cache


def right_multiplication_map(algebra, vec) -> ModuleMap:
    """Right multiplication by an element as an endomorphism of the regular module."""
    if not _is_quiver(algebra):
        reg = regular_representation(algebra)
        return ModuleMap(reg, reg, [algebra.right_action_matrix(vec)], check=False)
    ps = regular_sum(algebra)
    field = algebra.field
    nslots = num_slots(algebra)
    # slot j basis = paths with target j, concatenated over summands
    slot_basis = []
    for s in range(nslots):
        idxs = []
        for k in range(len(ps.vertices)):
            idxs.extend(ps.slot_paths[k][s])
        slot_basis.append(idxs)
    blocks = []
    for s in range(nslots):
        idxs = slot_basis[s]
        lookup = {idx: r for r, idx in enumerate(idxs)}
        cols = []
        for idx in idxs:
            prod = algebra.multiply(algebra.basis_vec(idx), vec)
            col = [field.zero] * len(idxs)
            for bidx, c in enumerate(prod):
                if c:
                    col[lookup[bidx]] = c
            cols.append(col)
        blocks.append(Matrix(field, len(idxs), len(idxs),
                             [[cols[j][r] for j in range(len(idxs))] for r in range(len(idxs))]))
    rep = ps.rep
    return ModuleMap(rep, rep, blocks, check=False)


def regular_coordinates(algebra: QuiverAlgebra):
    """Per-slot list of algebra basis indices giving the regular module's basis."""
    ps = regular_sum(algebra)
    out = []
    for s in range(num_slots(algebra)):
        idxs = []
        for k in range(len(ps.vertices)):
            idxs.extend(ps.slot_paths[k][s])
        out.append(tuple(idxs))
    return out


# ---------------------------------------------------------------------------
# traces, isomorphism, decomposition

def trace_submodule(ws, X: Representation):
    """Sum of images of all maps from members of ws into X."""
    field = X.algebra.field
    cols = [[] for _ in X.dims]
    for W in ws:
        for f in hom_basis(W, X):
            for s in range(len(X.dims)):
                b = f.blocks[s]
                for j in range(b.ncols):
                    cols[s].append(b.col(j))
    subs = []
    for s in range(len(X.dims)):
        if cols[s]:
            stacked = Matrix(field, X.dims[s], len(cols[s]),
                             [[v[r] for v in cols[s]] for r in range(X.dims[s])])
            subs.append(column_space_basis(stacked))
        else:
            subs.append(Matrix.zeros(field, X.dims[s], 0))
    return sub_representation(X, subs)


def _iso_invariants(M: Representation):
    """Cheap isomorphism invariants: arrow ranks, radical and socle dims."""
    ranks = tuple(rref(M.mats[key]).rank for key, _, _ in generators(M.algebra))
    if _is_quiver(M.algebra):
        rad = tuple(b.ncols for b in radical_subspaces(M))
        soc = tuple(b.ncols for b in socle_subspaces(M))
    else:
        rad = soc = ()
    return (ranks, rad, soc)


def is_isomorphic(M: Representation, N: Representation) -> bool:
    if M.algebra is not N.algebra and M.algebra.labels != N.algebra.labels:
        raise ValueError("modules over different algebras")
    if M.dims != N.dims:
        return False
    if M.total_dim() == 0:
        return True
    if _iso_invariants(M) != _iso_invariants(N):
        return False
    homs = hom_basis(M, N)
    if not homs:
        return False
    for f in homs:
        if f.is_isomorphism():
            return True
    rng = random.Random(0x1505)
    for _ in range(60):
        coeffs = [rng.randint(-9, 9) for _ in homs]
        g = homs[0].scale(coeffs[0])
        for c, f in zip(coeffs[1:], homs[1:]):
            g = g.add(f.scale(c))
        if g.is_isomorphism():
            return True
    return False


def endomorphism_algebra(M: Representation, idempotent_maps=None):
    """End(M) as an abstract Algebra; product is composition f.g = f o g.

    Returns (Algebra, basis_maps).  If idempotent_maps is given it must be a
    complete orthogonal family of idempotent endomorphisms; the basis is
    adapted so they appear first and become the unit idempotents.
    """
    field = M.algebra.field
    homs = hom_basis(M, M)
    n = len(homs)
    if n == 0:
        return Algebra(field, (), (), (), check=False), []
    if idempotent_maps is None:
        idempotent_maps = [ModuleMap.identity(M)]
    flat = [f.flatten() for f in homs]
    d = len(flat[0])
    coord_mat = Matrix(field, d, n, [[flat[j][i] for j in range(n)] for i in range(d)])

    def coords(f: ModuleMap):
        sol = solve_matrix(coord_mat, Matrix.column(field, f.flatten()))
        if sol is None:
            raise AssertionError("endomorphism outside the computed basis")
        return sol.col(0)

    # adapt basis: idempotents first, completed from the hom basis
    chosen = []
    chosen_vecs = []
    for e in idempotent_maps:
        v = coords(e)
        chosen.append(e)
        chosen_vecs.append(list(v))
    if Matrix(field, len(chosen_vecs), n, chosen_vecs).rank() != len(chosen):
        raise ValueError("idempotent maps are linearly dependent")
    for j, f in enumerate(homs):
        if len(chosen) == n:
            break
        v = coords(f)
        trial = chosen_vecs + [list(v)]
        if Matrix(field, len(trial), n, trial).rank() == len(trial):
            chosen.append(f)
            chosen_vecs.append(list(v))
    basis_maps = chosen
    bflat = [f.flatten() for f in basis_maps]
    bmat = Matrix(field, d, n, [[bflat[j][i] for j in range(n)] for i in range(d)])

    def bcoords(f: ModuleMap):
        sol = solve_matrix(bmat, Matrix.column(field, f.flatten()))
        return sol.col(0)

    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            comp = basis_maps[i].compose(basis_maps[j])
            v = bcoords(comp)
            row.append(tuple((k, c) for k, c in enumerate(v) if c))
        mult.append(tuple(row))
    labels = [f"f{i}" for i in range(n)]
    alg = Algebra(field, labels, mult, tuple(range(len(idempotent_maps))), check=False)
    return alg, basis_maps


def _split_once(M: Representation, homs):
    """Try to split M along one endomorphism; None if nothing split."""
    from .exactlin import coprime_split, poly_eval_matrix

    def try_map(f: ModuleMap):
        # factor the minimal polynomial of the total action
        total = Matrix.block_diag(M.algebra.field, list(f.blocks))
        parts = coprime_split(total)
        if len(parts) < 2:
            return None
        pieces = []
        for poly, _ in parts:
            subs = [kernel_basis(poly_eval_matrix(poly, f.blocks[s]))
                    for s in range(len(M.dims))]
            if sum(b.ncols for b in subs) == 0:
                continue
            pieces.append(sub_representation(M, subs)[0])
        if len(pieces) >= 2:
            return pieces
        return None

    for f in homs:
        got = try_map(f)
        if got:
            return got
    for i in range(len(homs)):
        for j in range(len(homs)):
            got = try_map(homs[i].compose(homs[j]))
            if got:
                return got
    rng = random.Random(0x0707)
    for _ in range(64):
        coeffs = [rng.randint(-5, 5) for _ in homs]
        g = homs[0].scale(coeffs[0])
        for c, f in zip(coeffs[1:], homs[1:]):
            g = g.add(f.scale(c))
        got = try_map(g)
        if got:
            return got
    return None


def _indecomposable_pieces(M: Representation):
    if M.is_zero():
        return []
    homs = hom_basis(M, M)
    if len(homs) == 1:
        return [M]
    pieces = _split_once(M, homs)
    if pieces is None:
        # certify E/rad is one-dimensional, else give up loudly
        if M.algebra.field.characteristic != 0:
            raise UnsupportedCharacteristic(
                "indecomposability certificate needs characteristic zero")
        alg, _ = endomorphism_algebra(M)
        rad = jacobson_radical(alg)
        if alg.dim - len(rad) == 1:
            return [M]
        raise NonSplitEndomorphism(
            f"dim End/rad = {alg.dim - len(rad)} > 1 with no splitting found "
            f"for module {list(M.dims)}", module=M)
    out = []
    for p in pieces:
        out.extend(_indecomposable_pieces(p))
    return out


def decompose_indecomposables(M: Representation):
    """[(indecomposable, multiplicity)] sorted by (dims, discovery)."""
    pieces = _indecomposable_pieces(M)
    groups = []
    for p in pieces:
        for g in groups:
            if p.dims == g[0].dims and is_isomorphic(p, g[0]):
                g[1] += 1
                break
        else:
            groups.append([p, 1])
    groups.sort(key=lambda g: (sum(g[0].dims), g[0].dims))
    return [(g[0], g[1]) for g in groups]


# ---------------------------------------------------------------------------
# projective presentations, tau, Ext^1

@dataclass
class ProjectivePresentation:
    p1: ProjectiveSum
    p0: ProjectiveSum
    sigma: ModuleMap          # P1 -> P0
    cover: ModuleMap          # P0 -> M
    omega: Representation     # ker(cover)
    omega_incl: ModuleMap
    element_matrix: list      # entries[k][l] in e_{p1_k} A e_{p0_l}


def _cover_data(M: Representation):
    """Projective cover P -> M driven by a lift of top(M)."""
    A = M.algebra
    field = A.field
    rad = radical_subspaces(M)
    verts = []
    lift_vectors = []
    for s, v in enumerate(A.quiver.vertices):
        sec = section_of_quotient(rad[s])
        for j in range(sec.ncols):
            verts.append(v)
            lift_vectors.append((s, sec.col(j)))
    ps = build_projective_sum(A, verts)
    nslots = num_slots(A)
    blocks = [[ [field.zero] * ps.rep.dims[s] for _ in range(M.dims[s])]
              for s in range(nslots)]
    for k, v in enumerate(verts):
        s0, vec = lift_vectors[k]
        for s in range(nslots):
            base = sum(projective_with_basis(A, verts[i])[0].dims[s] for i in range(k))
            for j, pidx in enumerate(ps.slot_paths[k][s]):
                src, tgt, trav = A.paths[pidx]
                col = M.path_apply(src, trav, vec)
                for r in range(M.dims[s]):
                    blocks[s][r][base + j] = blocks[s][r][base + j] + col[r]
    cover = ModuleMap(ps.rep, M,
                      [Matrix(field, M.dims[s], ps.rep.dims[s], blocks[s])
                       for s in range(nslots)], check=False)
    if not cover.is_surjective():
        raise AssertionError("projective cover construction failed to surject")
    return ps, cover


def minimal_projective_presentation(M: Representation) -> ProjectivePresentation:
    A = M.algebra
    p0, cover = _cover_data(M)
    omega, omega_incl = kernel(cover)
    p1, cover1 = _cover_data(omega)
    sigma = omega_incl.compose(cover1)
    gens1 = p1.generator_vectors()
    entries = []
    for k in range(len(p1.vertices)):
        vecs = gens1[k]
        img = [sigma.blocks[t].apply(vecs[t]) for t in range(len(M.dims))]
        row = []
        for l in range(len(p0.vertices)):
            elem = [A.field.zero] * A.dim
            for t in range(len(M.dims)):
                base = sum(projective_with_basis(A, p0.vertices[i])[0].dims[t]
                           for i in range(l))
                for j, pidx in enumerate(p0.slot_paths[l][t]):
                    c = img[t][base + j]
                    if c:
                        elem[pidx] = elem[pidx] + c
            row.append(tuple(elem))
        entries.append(row)
    return ProjectivePresentation(p1, p0, sigma, cover, omega, omega_incl, entries)


def transpose_presentation(pres: ProjectivePresentation):
    """The A^op map Hom(sigma, A): projective sum over p0 verts -> p1 verts."""
    A = pres.p0.algebra
    opp = A.opposite_algebra()
    src = build_projective_sum(opp, pres.p0.vertices)
    dst = build_projective_sum(opp, pres.p1.vertices)
    entries = []
    for l in range(len(pres.p0.vertices)):
        row = []
        for k in range(len(pres.p1.vertices)):
            row.append(A.reverse_element(pres.element_matrix[k][l]))
        entries.append(row)
    return map_from_element_matrix(src, dst, entries)


def tau(M: Representation) -> Representation:
    """AR translate D Tr M; zero for projective modules."""
    pres = minimal_projective_presentation(M)
    if not pres.p1.vertices:
        return zero_representation(M.algebra)
    t = transpose_presentation(pres)
    tr, _ = cokernel(t)
    return dual(tr)


def tau_minus(M: Representation) -> Representation:
    """Inverse AR translate Tr D M; zero for injective modules."""
    d = dual(M)
    pres = minimal_projective_presentation(d)
    if not pres.p1.vertices:
        return zero_representation(M.algebra)
    t = transpose_presentation(pres)
    tr, _ = cokernel(t)
    return tr


@dataclass
class Ext1Result:
    dim: int
    cocycles: list            # ModuleMaps omega -> N spanning Ext^1 classes
    pres: ProjectivePresentation
    target: Representation
    basis_omega: list = dc_field(default_factory=list)
    image_coords: list = dc_field(default_factory=list)

    def class_coordinates(self, f: ModuleMap):
        """Coordinates of [f] over the chosen cocycle classes."""
        field = f.source.algebra.field
        hom_flat = [h.flatten() for h in self.basis_omega]
        if not hom_flat:
            return ()
        n = len(hom_flat)
        mat = Matrix(field, len(hom_flat[0]), n,
                     [[hom_flat[j][i] for j in range(n)] for i in range(len(hom_flat[0]))])
        sol = solve_matrix(mat, Matrix.column(field, f.flatten()))
        v = sol.col(0)
        red = self._image_reducer()
        return red.apply(v)

    def _image_reducer(self):
        field = self.target.algebra.field
        n = len(self.basis_omega)
        if self.image_coords:
            sub = Matrix(field, n, len(self.image_coords),
                         [[self.image_coords[c][r] for c in range(len(self.image_coords))]
                          for r in range(n)])
        else:
            sub = Matrix.zeros(field, n, 0)
        return quotient_map(sub)


def ext1(M: Representation, N: Representation) -> Ext1Result:
    """Ext^1(M, N) via Hom(P0, N) -> Hom(Omega, N) from the presentation."""
    pres = minimal_projective_presentation(M)
    field = M.algebra.field
    h_omega = hom_basis(pres.omega, N)
    if not h_omega:
        return Ext1Result(0, [], pres, N)
    h_p0 = hom_basis(pres.p0.rep, N)
    flat = [h.flatten() for h in h_omega]
    n = len(h_omega)
    mat = Matrix(field, len(flat[0]), n,
                 [[flat[j][i] for j in range(n)] for i in range(len(flat[0]))])
    image_coords = []
    for h in h_p0:
        restricted = h.compose(pres.omega_incl)
        sol = solve_matrix(mat, Matrix.column(field, restricted.flatten()))
        image_coords.append(sol.col(0))
    from .exactlin import row_reduce_basis
    image_coords = row_reduce_basis([list(v) for v in image_coords], field, n)
    res = Ext1Result(0, [], pres, N, h_omega, [tuple(v) for v in image_coords])
    red = res._image_reducer()
    res.dim = red.nrows
    sec = section_of_quotient(
        Matrix(field, n, len(image_coords),
               [[image_coords[c][r] for c in range(len(image_coords))] for r in range(n)])
        if image_coords else Matrix.zeros(field, n, 0))
    cocycles = []
    for j in range(sec.ncols):
        v = sec.col(j)
        g = None
        for c, h in zip(v, h_omega):
            term = h.scale(c)
            g = term if g is None else g.add(term)
        cocycles.append(g)
    res.cocycles = cocycles
    return res


def extension_middle_term(ext: Ext1Result, cocycle: ModuleMap) -> ShortExactSequence:
    """Pushout realisation 0 -> N -> E -> M -> 0 of a cocycle class."""
    pres = ext.pres
    N = ext.target
    field = N.algebra.field
    total, incls, projs = direct_sum([N, pres.p0.rep])
    # omega -> N + P0, w |-> (f(w), -i(w))
    blocks = []
    for s in range(len(N.dims)):
        top_b = cocycle.blocks[s]
        bot_b = pres.omega_incl.blocks[s].neg()
        rows = [list(r) for r in top_b.rows] + [list(r) for r in bot_b.rows]
        blocks.append(Matrix(field, N.dims[s] + pres.p0.rep.dims[s],
                             pres.omega.dims[s], rows))
    glue = ModuleMap(pres.omega, total, blocks, check=False)
    E, proj = cokernel(glue)
    iota = proj.compose(incls[0])
    # induced E -> M from (n, p) |-> cover(p)
    h = pres.cover.compose(projs[1])
    pib = []
    for s in range(len(N.dims)):
        sec = section_of_quotient(column_space_basis(glue.blocks[s]))
        pib.append(h.blocks[s].mul(sec))
    M = pres.cover.target
    pi = ModuleMap(E, M, pib, check=False)
    return ShortExactSequence(iota, pi)
