"""Enumerate all indecomposables of a representation-finite algebra.

The worklist closure starts from the indecomposable projectives and knits
with the AR translate in both directions, collecting middle terms of almost
split sequences, radicals of projectives and socle quotients of injectives.
On a representation-finite algebra this closes up; otherwise one of the two
caps is hit and the partial census is handed back inside RepInfiniteAtCap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import QuiverAlgebra, jacobson_radical
from .errors import IsProjective, NotInCensus, RepInfiniteAtCap
from .exactlin import Matrix, kernel_basis, solve_matrix
from . import repmod
from .repmod import (
    ModuleMap,
    Representation,
    ShortExactSequence,
    decompose_indecomposables,
    endomorphism_algebra,
    ext1,
    extension_middle_term,
    hom_basis,
    injective_modules,
    is_isomorphic,
    projective_modules,
    quotient_representation,
    radical_subspaces,
    socle_subspaces,
    sub_representation,
    tau,
    tau_minus,
)

DEFAULT_DIM_CAP = 60
DEFAULT_COUNT_CAP = 512


@dataclass
class CensusItem:
    id: int
    name: str
    rep: Representation
    dims: tuple
    is_projective: bool
    is_injective: bool


@dataclass
class Census:
    algebra: QuiverAlgebra
    items: list
    complete: bool
    dim_cap: int
    count_cap: int

    def __len__(self):
        return len(self.items)

    def rep(self, cid: int) -> Representation:
        return self.items[cid].rep

    def by_name(self, name: str) -> CensusItem:
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)

    def all_ids(self):
        return frozenset(it.id for it in self.items)

    def names(self, ids) -> tuple:
        return tuple(self.items[i].name for i in sorted(ids))


@dataclass
class ARSequence:
    left: Representation       # tau(right)
    middle: Representation
    right: Representation
    sequence: ShortExactSequence
    middle_summands: list      # [(rep, multiplicity)]


def almost_split_sequence(X: Representation) -> ARSequence:
    """0 -> tau X -> E -> X -> 0 from the Ext socle over End(X)."""
    tX = tau(X)
    if tX.is_zero():
        raise IsProjective("almost split sequence needs a non-projective module")
    ext = ext1(X, tX)
    if ext.dim == 0:
        raise AssertionError("Ext^1(X, tau X) vanished for non-projective X")
    field = X.algebra.field
    # right End(X)-action on Ext^1(X, tau X): precompose with a lift
    end_alg, end_maps = endomorphism_algebra(X)
    rad = jacobson_radical(end_alg)
    action_mats = []
    for rvec in rad:
        phi = None
        for c, f in zip(rvec, end_maps):
            term = f.scale(c)
            phi = term if phi is None else phi.add(term)
        action_mats.append(_ext_action_matrix(ext, phi))
    if action_mats:
        stacked = action_mats[0]
        for m in action_mats[1:]:
            stacked = stacked.vstack(m)
        soc = kernel_basis(stacked)
    else:
        soc = Matrix.identity(field, ext.dim)
    if soc.ncols == 0:
        raise AssertionError("Ext socle is zero; AR theory violated")
    coeffs = soc.col(0)
    cocycle = None
    for c, g in zip(coeffs, ext.cocycles):
        term = g.scale(c)
        cocycle = term if cocycle is None else cocycle.add(term)
    ses = extension_middle_term(ext, cocycle)
    middle = ses.iota.target
    summands = decompose_indecomposables(middle)
    return ARSequence(tX, middle, X, ses, summands)


def _ext_action_matrix(ext, phi: ModuleMap) -> Matrix:
    """Matrix of [f] -> [f . lift(phi)|_omega] on Ext coordinates."""
    pres = ext.pres
    field = phi.source.algebra.field
    # lift phi through the cover: cover . phi_hat = phi . cover
    hp = hom_basis(pres.p0.rep, pres.p0.rep)
    flat_target = phi.compose(pres.cover).flatten()
    cols = [pres.cover.compose(h).flatten() for h in hp]
    if not hp:
        return Matrix.zeros(field, ext.dim, ext.dim)
    mat = Matrix(field, len(cols[0]), len(hp),
                 [[cols[j][i] for j in range(len(hp))] for i in range(len(cols[0]))])
    sol = solve_matrix(mat, Matrix.column(field, flat_target))
    if sol is None:
        raise AssertionError("projective lifting failed")
    phi_hat = None
    for c, h in zip(sol.col(0), hp):
        term = h.scale(c)
        phi_hat = term if phi_hat is None else phi_hat.add(term)
    # restrict to omega: omega_incl . omega_phi = phi_hat . omega_incl
    blocks = []
    for s in range(len(pres.omega.dims)):
        rhs = phi_hat.blocks[s].mul(pres.omega_incl.blocks[s])
        sol_b = solve_matrix(pres.omega_incl.blocks[s], rhs)
        if sol_b is None:
            raise AssertionError("lift does not preserve the syzygy")
        blocks.append(sol_b)
    omega_phi = ModuleMap(pres.omega, pres.omega, blocks, check=False)
    rows = []
    for g in ext.cocycles:
        moved = g.compose(omega_phi)
        rows.append(list(ext.class_coordinates(moved)))
    if not rows:
        return Matrix.zeros(field, 0, 0)
    # columns index the source classes, rows the coordinates of their images
    return Matrix(field, ext.dim, ext.dim,
                  [[rows[j][i] for j in range(ext.dim)] for i in range(ext.dim)])


def enumerate_indecomposables(algebra: QuiverAlgebra,
                              dim_cap: int = DEFAULT_DIM_CAP,
                              count_cap: int = DEFAULT_COUNT_CAP) -> Census:
    """Knitting closure; raises RepInfiniteAtCap carrying the partial census.

    Cheap moves (tau in both directions, radicals of projectives, socle
    quotients of injectives) run first, smallest module first, so that a
    representation-infinite input hits a cap before any almost split middle
    term of a large module is attempted.  Middle terms are then filled in
    and the two phases alternate until the census is closed.
    """
    if dim_cap < 1 or count_cap < 1:
        raise ValueError("caps must be >= 1")
    projectives = projective_modules(algebra)
    injectives = injective_modules(algebra)

    found: list = []
    tau_of: dict = {}        # idx -> idx of tau(item), when known
    tau_minus_of: dict = {}

    def register(rep: Representation):
        if rep.is_zero():
            return None, False
        if rep.total_dim() > dim_cap:
            raise RepInfiniteAtCap(
                f"module of total dimension {rep.total_dim()} exceeds dim cap {dim_cap}",
                partial=_finalise(algebra, found, False, dim_cap, count_cap),
                cap="dim")
        for idx, known in enumerate(found):
            if known.dims == rep.dims and is_isomorphic(known, rep):
                return idx, False
        found.append(rep)
        if len(found) > count_cap:
            raise RepInfiniteAtCap(
                f"more than {count_cap} indecomposables found",
                partial=_finalise(algebra, found, False, dim_cap, count_cap),
                cap="count")
        return len(found) - 1, True

    work: list = []

    def push(idx):
        work.append(idx)
        work.sort(key=lambda i: (found[i].total_dim(), i))

    for p in projectives + injectives:
        idx, new = register(p)
        if new:
            push(idx)

    knitted: set = set()     # idx whose cheap moves were processed
    middled: set = set()     # idx whose AR middle terms were processed

    def cheap_phase():
        while work:
            i = work.pop(0)
            if i in knitted:
                continue
            knitted.add(i)
            X = found[i]
            is_proj = any(X.dims == p.dims and is_isomorphic(X, p) for p in projectives)
            is_inj = any(X.dims == q.dims and is_isomorphic(X, q) for q in injectives)
            small: list = []
            if is_proj:
                radX, _ = sub_representation(X, radical_subspaces(X))
                small.extend(s for s, _ in decompose_indecomposables(radX))
            if is_inj:
                quot, _ = quotient_representation(X, socle_subspaces(X))
                small.extend(s for s, _ in decompose_indecomposables(quot))
            for s in small:
                idx, new = register(s)
                if new:
                    push(idx)
            if not is_inj and i not in tau_minus_of:
                Y = tau_minus(X)
                if not Y.is_zero():
                    idx, new = register(Y)
                    tau_minus_of[i] = idx
                    tau_of[idx] = i
                    if new:
                        push(idx)
            if not is_proj and i not in tau_of:
                Y = tau(X)
                if not Y.is_zero():
                    idx, new = register(Y)
                    tau_of[i] = idx
                    tau_minus_of[idx] = i
                    if new:
                        push(idx)

    while True:
        cheap_phase()
        grew = False
        for i in range(len(found)):
            if i in middled:
                continue
            X = found[i]
            if any(X.dims == p.dims and is_isomorphic(X, p) for p in projectives):
                middled.add(i)
                continue
            middled.add(i)
            ar = almost_split_sequence(X)
            for s, _ in ar.middle_summands:
                idx, new = register(s)
                if new:
                    push(idx)
                    grew = True
            idx, new = register(ar.left)
            if new:
                push(idx)
                grew = True
        if not grew and not work:
            break

    return _finalise(algebra, found, True, dim_cap, count_cap)


def _finalise(algebra, reps, complete, dim_cap, count_cap) -> Census:
    projectives = projective_modules(algebra)
    injectives = injective_modules(algebra)
    simples = repmod.simple_modules(algebra)
    order = sorted(range(len(reps)), key=lambda i: (sum(reps[i].dims), reps[i].dims, i))
    items = []
    used_names = set()
    for new_id, old in enumerate(order):
        rep = reps[old]
        is_proj = any(rep.dims == p.dims and is_isomorphic(rep, p) for p in projectives)
        is_inj = any(rep.dims == i.dims and is_isomorphic(rep, i) for i in injectives)
        name = None
        for v, s in zip(algebra.quiver.vertices, simples):
            if rep.dims == s.dims:
                name = f"S{v}"
                break
        if name is None and is_proj:
            for v in algebra.quiver.vertices:
                p = repmod.projective_representation(algebra, v)
                if rep.dims == p.dims and is_isomorphic(rep, p):
                    name = f"P{v}"
                    break
        if name is None and is_inj:
            for v in algebra.quiver.vertices:
                i = repmod.injective_representation(algebra, v)
                if rep.dims == i.dims and is_isomorphic(rep, i):
                    name = f"I{v}"
                    break
        if name is None or name in used_names:
            name = "M[" + ",".join(str(d) for d in rep.dims) + "]"
            k = 0
            base = name
            while name in used_names:
                k += 1
                name = f"{base}#{k}"
        used_names.add(name)
        items.append(CensusItem(new_id, name, rep, rep.dims, is_proj, is_inj))
    return Census(algebra, items, complete, dim_cap, count_cap)


def identify(M: Representation, census: Census) -> int:
    """Census id of the module isomorphic to M; fatal if absent."""
    if M.algebra is not census.algebra and M.algebra.labels != census.algebra.labels:
        raise ValueError("module over a different algebra")
    for it in census.items:
        if it.dims == M.dims and is_isomorphic(it.rep, M):
            return it.id
    raise NotInCensus(f"module with dims {list(M.dims)} not in census")
