"""Finite-dimensional algebras: quiver presentations and structure constants.

Two kinds of algebra live here.  A ``QuiverAlgebra`` is built from a quiver
with relations; its basis is a set of path normal forms (graded by length,
lexicographic within a grade, ties broken by arrow declaration order) and the
reduction happens degree by degree against the span of the relation ideal.
An ``Algebra`` is an abstract structure-constant algebra; localised rings
come back in this shape.

Paths are stored in traversal order: ``(a, b)`` is the path that walks ``a``
first.  The displayed label follows the composition convention, so that path
prints as ``b*a``.  All algebras are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import MalformedRelation, NotFiniteDimensional, UnsupportedCharacteristic
from .exactlin import Matrix, QQ, kernel_basis, rref, solve_matrix

BASIS_GUARD = 10000  # hard stop against runaway path growth


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex identifiers")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} references undeclared vertex")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self.arrow_by_name = {a.name: a for a in self.arrows}

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a.name, a.target, a.source) for a in self.arrows])

    def __repr__(self):
        arr = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}; {arr})"


class AlgebraPresentation:
    """Quiver plus relations; each relation is a list of (coeff, traversal)."""

    def __init__(self, quiver: Quiver, relations=()):
        self.quiver = quiver
        rels = []
        for rel in relations:
            terms = []
            endpoints = None
            for coeff, arrows in rel:
                coeff = Fraction(coeff)
                if not coeff:
                    continue
                arrows = tuple(arrows)
                if len(arrows) < 2:
                    raise MalformedRelation("relation paths must have length >= 2")
                for name in arrows:
                    if name not in quiver.arrow_by_name:
                        raise MalformedRelation(f"relation references unknown arrow {name!r}")
                for x, y in zip(arrows, arrows[1:]):
                    if quiver.arrow_by_name[x].target != quiver.arrow_by_name[y].source:
                        raise MalformedRelation(
                            f"path {'*'.join(reversed(arrows))} is not composable")
                ep = (quiver.arrow_by_name[arrows[0]].source,
                      quiver.arrow_by_name[arrows[-1]].target)
                if endpoints is None:
                    endpoints = ep
                elif endpoints != ep:
                    raise MalformedRelation("relation mixes sources/targets")
                terms.append((coeff, arrows))
            if terms:
                lengths = {len(arrs) for _, arrs in terms}
                if len(lengths) > 1:
                    raise MalformedRelation(
                        "relations mixing path lengths are not supported")
                rels.append(tuple(terms))
        self.relations = tuple(rels)

    def opposite(self) -> "AlgebraPresentation":
        rev = [[(c, tuple(reversed(arrs))) for c, arrs in rel] for rel in self.relations]
        return AlgebraPresentation(self.quiver.opposite(), rev)


def path_label(source: str, arrows: tuple) -> str:
    if not arrows:
        return f"e_{source}"
    return "*".join(reversed(arrows))


class Algebra:
    """Structure-constant algebra over a field.

    ``mult[i][j]`` is the sparse expansion of basis_i * basis_j as a tuple of
    (k, coeff).  ``unit_idxs`` point at a complete set of orthogonal
    idempotents among the basis vectors that sums to the unit.
    """

    origin = "abstract"

    def __init__(self, field, labels, mult, unit_idxs, check=True):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.mult = tuple(tuple(tuple(entry) for entry in row) for row in mult)
        self.unit_idxs = tuple(unit_idxs)
        self._left_mats: dict = {}
        self._right_mats: dict = {}
        if check:
            self._check_structure()

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_dense_constants(field, labels, table, unit_idxs, check=True) -> "Algebra":
        """table[i][j][k] = coefficient of basis_k in basis_i * basis_j."""
        n = len(labels)
        mult = [[tuple((k, field.of(table[i][j][k])) for k in range(n) if field.of(table[i][j][k]))
                 for j in range(n)] for i in range(n)]
        return Algebra(field, labels, mult, unit_idxs, check=check)

    def _check_structure(self):
        z = self.field.zero
        n = self.dim
        if n == 0:
            if self.unit_idxs:
                raise ValueError("zero algebra cannot have idempotents")
            return
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self.multiply(self.product_vec(i, j), self.basis_vec(k))
                    rhs = self.multiply(self.basis_vec(i), self.product_vec(j, k))
                    if lhs != rhs:
                        raise ValueError(
                            f"structure constants not associative at ({i},{j},{k})")
        unit = self.unit_vec()
        for i in self.unit_idxs:
            e = self.basis_vec(i)
            if self.multiply(e, e) != e:
                raise ValueError(f"unit idempotent {i} is not idempotent")
            for j in self.unit_idxs:
                if j != i and any(self.multiply(e, self.basis_vec(j))):
                    raise ValueError("unit idempotents are not orthogonal")
        for i in range(n):
            b = self.basis_vec(i)
            if self.multiply(unit, b) != b or self.multiply(b, unit) != b:
                raise ValueError("idempotents do not sum to a unit")

    # -- element arithmetic --------------------------------------------------

    def zero_vec(self):
        return (self.field.zero,) * self.dim

    def basis_vec(self, i):
        z = self.field.zero
        return tuple(self.field.one if k == i else z for k in range(self.dim))

    def unit_vec(self):
        v = list(self.zero_vec())
        for i in self.unit_idxs:
            v[i] = self.field.one
        return tuple(v)

    def product_vec(self, i, j):
        v = list(self.zero_vec())
        for k, c in self.mult[i][j]:
            v[k] = v[k] + c
        return tuple(v)

    def multiply(self, a, b):
        """Product of two coefficient vectors."""
        out = [self.field.zero] * self.dim
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if not cb:
                    continue
                c = ca * cb
                for k, s in self.mult[i][j]:
                    out[k] = out[k] + c * s
        return tuple(out)

    def left_mult_matrix(self, i) -> Matrix:
        if i not in self._left_mats:
            cols = [self.product_vec(i, j) for j in range(self.dim)]
            self._left_mats[i] = Matrix(self.field, self.dim, self.dim,
                                        [[cols[j][k] for j in range(self.dim)]
                                         for k in range(self.dim)])
        return self._left_mats[i]

    def right_mult_matrix(self, i) -> Matrix:
        if i not in self._right_mats:
            cols = [self.product_vec(j, i) for j in range(self.dim)]
            self._right_mats[i] = Matrix(self.field, self.dim, self.dim,
                                         [[cols[j][k] for j in range(self.dim)]
                                          for k in range(self.dim)])
        return self._right_mats[i]

    def left_action_matrix(self, vec) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in enumerate(vec):
            if c:
                out = out.add(self.left_mult_matrix(i).scale(c))
        return out

    def right_action_matrix(self, vec) -> Matrix:
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in enumerate(vec):
            if c:
                out = out.add(self.right_mult_matrix(i).scale(c))
        return out

    def opposite(self) -> "Algebra":
        mult = [[self.mult[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return Algebra(self.field, self.labels, mult, self.unit_idxs, check=False)

    def format_element(self, vec) -> str:
        terms = [f"{self.field.format(c)}*{self.labels[i]}"
                 for i, c in enumerate(vec) if c]
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Algebra(dim={self.dim})"


class QuiverAlgebra(Algebra):
    """Path algebra of a quiver modulo an admissible homogeneous ideal."""

    origin = "presentation-derived"

    def __init__(self, presentation: AlgebraPresentation, field=QQ, length_cap: int = 64):
        if length_cap < 1:
            raise ValueError("length_cap must be >= 1")
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.length_cap = length_cap
        self._opposite: Optional[QuiverAlgebra] = None

        basis_paths, reduction = _path_normal_forms(presentation, field, length_cap)
        # basis entries: (source, target, traversal); reduction maps a dead
        # candidate path to its expansion over basis paths of the same degree
        self.field = field
        self.paths = tuple(basis_paths)
        self._reduction = reduction
        self.path_index = {p[2]: i for i, p in enumerate(self.paths) if p[2]}
        self.trivial_index = {p[0]: i for i, p in enumerate(self.paths) if not p[2]}
        labels = [path_label(src, trav) for src, tgt, trav in self.paths]
        unit_idxs = [self.trivial_index[v] for v in self.quiver.vertices]

        n = len(labels)
        mult = [[() for _ in range(n)] for _ in range(n)]
        for i, (si, ti, travi) in enumerate(self.paths):
            for j, (sj, tj, travj) in enumerate(self.paths):
                if tj != si:
                    continue
                vec = self._normal_form(sj, travj + travi)
                mult[i][j] = tuple((k, c) for k, c in enumerate(vec) if c)
        super().__init__(field, labels, mult, unit_idxs, check=True)

    # paths -------------------------------------------------------------

    def path_source(self, i):
        return self.paths[i][0]

    def path_target(self, i):
        return self.paths[i][1]

    def _normal_form(self, source, traversal):
        """Coefficient vector of an arbitrary composable path."""
        n = len(self.paths)
        z = self.field.zero
        if not traversal:
            vec = [z] * n
            vec[self.trivial_index[source]] = self.field.one
            return tuple(vec)
        # reduce left factors first, one arrow at a time
        acc = {(): self.field.one}
        for arrow in traversal:
            nxt: dict = {}
            for trav, c in acc.items():
                full = trav + (arrow,)
                if full in self.path_index:
                    nxt[full] = nxt.get(full, z) + c
                elif full in self._reduction:
                    for trav2, c2 in self._reduction[full].items():
                        nxt[trav2] = nxt.get(trav2, z) + c * c2
                else:
                    # path died entirely (degree beyond the surviving range)
                    continue
            acc = {t: c for t, c in nxt.items() if c}
            if not acc:
                break
        out = [z] * n
        for trav, c in acc.items():
            out[self.path_index[trav] if trav else self.trivial_index[source]] = c
        return tuple(out)

    def element_of_path(self, source, traversal):
        """Normal form of a path given by traversal order arrow names."""
        cur = source
        for name in traversal:
            a = self.quiver.arrow_by_name.get(name)
            if a is None or a.source != cur:
                raise ValueError(f"path not composable at {name!r}")
            cur = a.target
        return self._normal_form(source, tuple(traversal))

    def element_of_terms(self, terms):
        """Linear combination of paths: iterable of (coeff, source, traversal)."""
        out = list(self.zero_vec())
        for coeff, source, trav in terms:
            vec = self.element_of_path(source, trav)
            for k, c in enumerate(vec):
                out[k] = out[k] + self.field.of(coeff) * c
        return tuple(out)

    def basis_between(self, target, source):
        """Indices of basis paths in e_target . A . e_source."""
        return [i for i, (s, t, _) in enumerate(self.paths)
                if s == source and t == target]

    def reverse_element(self, vec):
        """Image of an element under the canonical map to the opposite algebra."""
        opp = self.opposite_algebra()
        out = list(opp.zero_vec())
        for i, c in enumerate(vec):
            if not c:
                continue
            src, tgt, trav = self.paths[i]
            rv = opp._normal_form(tgt, tuple(reversed(trav)))
            for k, c2 in enumerate(rv):
                out[k] = out[k] + c * c2
        return tuple(out)

    def opposite_algebra(self) -> "QuiverAlgebra":
        if self._opposite is None:
            opp = QuiverAlgebra(self.presentation.opposite(), self.field, self.length_cap)
            self._opposite = opp
            opp._opposite = self
        return self._opposite


def _path_normal_forms(presentation, field, length_cap):
    """Degree-by-degree construction of the surviving path basis.

    Returns (basis, reduction) where basis lists (source, target, traversal)
    in graded-lex order and reduction maps each non-basis candidate traversal
    to its expansion {basis_traversal: coeff} within the same degree.
    Homogeneous relations only; the presentation already enforced that.
    """
    quiver = presentation.quiver
    arrow_pos = quiver.arrow_index
    z, one = field.zero, field.one

    basis = [(v, v, ()) for v in quiver.vertices]
    by_degree = {0: list(basis)}
    basis_travs: set = set()
    reduction: dict = {}
    memo: dict = {}

    def nf(trav):
        """Normal form of a nonempty path over basis traversals (< current degree)."""
        if trav in basis_travs:
            return {trav: one}
        if trav in reduction:
            return reduction[trav]
        got = memo.get(trav)
        if got is not None:
            return got
        out: dict = {}
        if len(trav) > 1:
            for t, c in nf(trav[:-1]).items():
                full = t + (trav[-1],)
                if full in basis_travs:
                    out[full] = out.get(full, z) + c
                elif full in reduction:
                    for t2, c2 in reduction[full].items():
                        out[t2] = out.get(t2, z) + c * c2
        out = {t: c for t, c in out.items() if c}
        memo[trav] = out
        return out

    rels_by_degree: dict = {}
    for rel in presentation.relations:
        d = len(rel[0][1])
        rels_by_degree.setdefault(d, []).append(rel)

    prev_reducible_rows: list = []
    prev_candidates: list = []

    degree = 1
    while True:
        prev_basis = by_degree.get(degree - 1, [])
        candidates = []
        for src, tgt, trav in prev_basis:
            for a in quiver.arrows:
                if a.source == tgt:
                    candidates.append((src, a.target, trav + (a.name,)))
        if not candidates:
            break
        # graded-lex: compare composition-order arrow indices
        candidates.sort(key=lambda p: tuple(arrow_pos[x] for x in reversed(p[2])))
        cand_pos = {p[2]: i for i, p in enumerate(candidates)}

        def expand(trav):
            """Rewrite a degree-`degree` path over this degree's candidates."""
            out: dict = {}
            head, last = trav[:-1], trav[-1]
            if len(head) == 0:
                return {trav: one} if trav in cand_pos else {}
            for t, c in nf(head).items():
                full = t + (last,)
                out[full] = out.get(full, z) + c
            return out

        rows = []
        for rel in rels_by_degree.get(degree, []):
            row = [z] * len(candidates)
            touched = False
            for coeff, arrows in rel:
                for trav, c in expand(arrows).items():
                    row[cand_pos[trav]] = row[cand_pos[trav]] + field.of(coeff) * c
                    touched = True
            if touched:
                rows.append(row)
        for rrow in prev_reducible_rows:
            for a in quiver.arrows:
                row = [z] * len(candidates)
                touched = False
                for idx, c in enumerate(rrow):
                    if not c:
                        continue
                    src, tgt, trav = prev_candidates[idx]
                    if tgt != a.source:
                        continue
                    for t2, c2 in expand(trav + (a.name,)).items():
                        row[cand_pos[t2]] = row[cand_pos[t2]] + c * c2
                        touched = True
                if touched:
                    rows.append(row)

        pivot_set = set()
        red = None
        if rows:
            red = rref(Matrix(field, len(rows), len(candidates), rows))
            pivot_set = set(red.pivots)
            for r, p in enumerate(red.pivots):
                expansion = {}
                for j in range(len(candidates)):
                    if j not in pivot_set and red.reduced.rows[r][j]:
                        expansion[candidates[j][2]] = -red.reduced.rows[r][j]
                reduction[candidates[p][2]] = expansion

        new_basis = [candidates[j] for j in range(len(candidates)) if j not in pivot_set]
        if new_basis:
            if degree > length_cap:
                raise NotFiniteDimensional(
                    f"paths survive beyond length cap {length_cap}")
            by_degree[degree] = new_basis
            basis.extend(new_basis)
            basis_travs.update(p[2] for p in new_basis)
            if len(basis) > BASIS_GUARD:
                raise NotFiniteDimensional(
                    f"path basis exceeded {BASIS_GUARD} elements")

        prev_candidates = candidates
        prev_reducible_rows = ([list(red.reduced.rows[r]) for r in range(red.rank)]
                               if red is not None else [])
        degree += 1
    return basis, reduction


# ---------------------------------------------------------------------------
# ideals, quotients, radical


def two_sided_ideal_span(algebra: Algebra, gens) -> list:
    """Row vectors spanning the two-sided ideal generated by gens.

    Iterates span growth until stable; for a unital algebra the first pass
    {x*g*y} is already closed and the loop exits immediately.
    """
    field = algebra.field
    n = algebra.dim
    rows = []
    for g in gens:
        for i in range(n):
            left = algebra.multiply(algebra.basis_vec(i), g)
            for j in range(n):
                rows.append(algebra.multiply(left, algebra.basis_vec(j)))
    from .exactlin import row_reduce_basis
    span = row_reduce_basis(rows, field, n)
    while True:
        grown = list(span)
        for v in span:
            for i in range(n):
                grown.append(algebra.multiply(algebra.basis_vec(i), v))
                grown.append(algebra.multiply(v, algebra.basis_vec(i)))
        grown = row_reduce_basis(grown, field, n)
        if len(grown) == len(span):
            return grown
        span = grown


def quotient_by_ideal(algebra: Algebra, gens):
    """Quotient by the two-sided ideal generated by gens.

    Returns (quotient Algebra, projection Matrix).  The quotient basis is
    adapted so the images of the unit idempotents are basis vectors.
    """
    field = algebra.field
    n = algebra.dim
    span = two_sided_ideal_span(algebra, gens)
    k = len(span)
    if k == n:
        proj = Matrix.zeros(field, 0, n)
        return Algebra(field, (), (), (), check=False), proj
    if k == 0:
        sub = Matrix.zeros(field, n, 0)
    else:
        sub = Matrix(field, n, k, [[span[c][r] for c in range(k)] for r in range(n)])
    from .exactlin import quotient_map, section_of_quotient
    q = quotient_map(sub)
    s = section_of_quotient(sub)
    qdim = q.nrows

    images = [q.apply(algebra.basis_vec(i)) for i in algebra.unit_idxs]
    nonzero = [v for v in images if any(v)]
    # adapt the basis so surviving idempotent images are coordinate vectors
    cand_rows = nonzero + [tuple(field.one if i == j else field.zero for j in range(qdim))
                           for i in range(qdim)]
    chosen = []
    chosen_rows = []
    for v in cand_rows:
        trial = chosen_rows + [list(v)]
        if Matrix(field, len(trial), qdim, trial).rank() == len(trial):
            chosen.append(v)
            chosen_rows.append(list(v))
        if len(chosen) == qdim:
            break
    basis_mat = Matrix(field, qdim, qdim, [[chosen[c][r] for c in range(qdim)]
                                           for r in range(qdim)])  # columns = new basis
    inv = solve_matrix(basis_mat, Matrix.identity(field, qdim))
    to_new = inv  # old quotient coords -> new coords
    proj = to_new.mul(q)

    def project(vec):
        return proj.apply(vec)

    lifts = [s.apply(basis_mat.col(j)) for j in range(qdim)]
    mult = []
    for i in range(qdim):
        row = []
        for j in range(qdim):
            prod = project(algebra.multiply(lifts[i], lifts[j]))
            row.append(tuple((kk, c) for kk, c in enumerate(prod) if c))
        mult.append(tuple(row))
    unit_idxs = list(range(len(nonzero)))
    labels = [f"q{i}" for i in range(qdim)]
    quot = Algebra(field, labels, mult, unit_idxs, check=True)
    return quot, proj


def jacobson_radical(algebra: Algebra) -> list:
    """Basis (coefficient vectors) of the radical via the trace form.

    Characteristic zero only: rad = {x : tr(L_x L_y) = 0 for all y}.
    """
    if algebra.field.characteristic != 0:
        raise UnsupportedCharacteristic(
            "trace-form radical requires characteristic zero")
    n = algebra.dim
    if n == 0:
        return []
    gram = []
    for i in range(n):
        li = algebra.left_mult_matrix(i)
        row = []
        for j in range(n):
            lj = algebra.left_mult_matrix(j)
            prod = li.mul(lj)
            row.append(sum((prod.rows[k][k] for k in range(n)), algebra.field.zero))
        gram.append(row)
    ker = kernel_basis(Matrix(algebra.field, n, n, gram))
    return [ker.col(j) for j in range(ker.ncols)]


def count_simple_modules(algebra: Algebra) -> int:
    """Isomorphism classes of indecomposable summands of the regular module."""
    from . import repmod
    reg = repmod.regular_representation(algebra)
    return len(repmod.decompose_indecomposables(reg))


def regular_decomposition_multiplicities(algebra: Algebra) -> tuple:
    """Sorted multiplicities of the regular module's indecomposable summands."""
    from . import repmod
    reg = repmod.regular_representation(algebra)
    parts = repmod.decompose_indecomposables(reg)
    return tuple(sorted(m for _, m in parts))
