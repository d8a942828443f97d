"""Ready-made graded algebras and module builders.

Algebras: cyclic group algebras, truncated polynomial rings, the two
three-term truncations of K<x, y> that witness associativity of killed
products in small degree patterns, path algebras of quivers modulo
homogeneous relations, and the degreewise dual of an n-homogeneous
one-vertex algebra.

Modules: the regular module, finite free modules on shifted generators, and
presentations (free module modulo the submodule generated by relation
vectors).

Path algebra relations are lists of (coefficient, path) terms, a path being a
tuple of arrow indices composing left to right.  Ideals are expanded degree
by degree: I_m = P_1 I_{m-1} + I_{m-1} P_1 + R_m, with every relation first
split into its endpoint blocks so all stored ideal vectors connect a single
source to a single target.
"""

from __future__ import annotations

import itertools
import math

from .errors import PreconditionError
from .exactlin import (LabeledSpace, Matrix, QQ, Subspace, ZERO_SPACE, kernel,
                       matched_pairs)
from .graded_core import GradedAlgebra, GradedModule, closure_under_action, \
    quotient_module
from .subsets import Z, Zn


def _coerce(field, c):
    return field.from_int(c) if isinstance(c, int) else c


# ---------------------------------------------------------------------------
# small algebras


def group_algebra(n, field=QQ) -> GradedAlgebra:
    """K[Z/n] with its tautological cyclic grading; every component is K."""
    if n < 1:
        raise PreconditionError(f"modulus must be >= 1, got {n}")
    one = Matrix.identity(field, 1)
    comps = {d: LabeledSpace.untagged(1) for d in range(n)}
    mult = {(g, h): one for g in range(n) for h in range(n)}
    return GradedAlgebra(Zn(n), (0, n - 1), 1, field, comps, mult, (field.one(),))


def truncated_polynomial(nilpotency, gen_degree=1, window=None,
                         field=QQ) -> GradedAlgebra:
    """K[x]/(x^nilpotency) with deg x = gen_degree.

    The window defaults to the exact support; pass a wider one to embed the
    algebra in a larger degree range (the extra components are zero).
    """
    if nilpotency < 1:
        raise PreconditionError("nilpotency degree must be >= 1")
    g = int(gen_degree)
    if g == 0:
        raise PreconditionError("generator degree must be nonzero")
    degrees = [i * g for i in range(nilpotency)]
    lo, hi = min(degrees), max(degrees)
    if window is None:
        window = (lo, hi)
    elif not (window[0] <= lo and hi <= window[1]):
        raise PreconditionError(
            f"window {window} does not cover the support [{lo}, {hi}]")
    one = Matrix.identity(field, 1)
    comps = {d: LabeledSpace.untagged(1) for d in degrees}
    mult = {(i * g, j * g): one
            for i in range(nilpotency) for j in range(nilpotency)
            if i + j < nilpotency}
    return GradedAlgebra(Z, tuple(window), 1, field, comps, mult,
                         (field.one(),))


def zero_sum_pair_algebra(g, field=QQ) -> GradedAlgebra:
    """K<x, y>/(x^2, y^2, yx) graded with deg x = g, deg y = -g, g != 0.

    The degree-0 part is two dimensional (1 and xy), so this is the k = 1
    shape whose degree-0 component is not split semisimple.
    """
    g = int(g)
    if g == 0:
        raise PreconditionError("the two generator degrees must be nonzero")
    F = field
    o, z = F.one(), F.zero()
    comps = {
        0: LabeledSpace.untagged(2),   # basis (1, xy)
        g: LabeledSpace.untagged(1),   # x
        -g: LabeledSpace.untagged(1),  # y
    }
    mult = {
        (0, 0): Matrix(F, 4, 2, [(o, z), (z, o), (z, o), (z, z)]),
        (0, g): Matrix(F, 2, 1, [(o,), (z,)]),
        (g, 0): Matrix(F, 2, 1, [(o,), (z,)]),
        (0, -g): Matrix(F, 2, 1, [(o,), (z,)]),
        (-g, 0): Matrix(F, 2, 1, [(o,), (z,)]),
        (g, -g): Matrix(F, 1, 2, [(z, o)]),
        # y x = 0 and both squares vanish, so nothing else is stored
    }
    lo, hi = min(0, g, -g), max(0, g, -g)
    return GradedAlgebra(Z, (lo, hi), 1, F, comps, mult, (o, z))


def generic_pair_algebra(g, h, field=QQ) -> GradedAlgebra:
    """K<x, y>/(x^2, y^2, yx) graded with deg x = g, deg y = h.

    Needs g, h nonzero, distinct, with g + h != 0, so the four basis words
    1, x, y, xy sit in four distinct degrees and the degree-0 part is K.
    """
    g, h = int(g), int(h)
    if g == 0 or h == 0 or g == h or g + h == 0:
        raise PreconditionError(
            "degrees must be nonzero, distinct, and not opposite")
    F = field
    one = Matrix.identity(F, 1)
    comps = {d: LabeledSpace.untagged(1) for d in (0, g, h, g + h)}
    mult = {(0, d): one for d in (0, g, h, g + h)}
    mult.update({(d, 0): one for d in (g, h, g + h)})
    mult[(g, h)] = one  # x y = xy; every other nonunit product vanishes
    lo = min(0, g, h, g + h)
    hi = max(0, g, h, g + h)
    return GradedAlgebra(Z, (lo, hi), 1, F, comps, mult, (F.one(),))


# ---------------------------------------------------------------------------
# path algebras with homogeneous relations


def _path_source(arrows, p):
    return arrows[p[0]][0]


def _path_target(arrows, p):
    return arrows[p[-1]][1]


def _split_relation(field, arrows, rel):
    """Split a relation into endpoint-pure (degree, source, target, terms)."""
    if not rel:
        raise PreconditionError("empty relation")
    blocks = {}
    length = None
    for coeff, path in rel:
        path = tuple(int(a) for a in path)
        if len(path) < 2:
            raise PreconditionError("relations must have degree >= 2")
        if length is None:
            length = len(path)
        elif len(path) != length:
            raise PreconditionError("relation terms must share one degree")
        for a, b in zip(path, path[1:]):
            if arrows[a][1] != arrows[b][0]:
                raise PreconditionError(f"path {path} is not composable")
        key = (_path_source(arrows, path), _path_target(arrows, path))
        blocks.setdefault(key, []).append((_coerce(field, coeff), path))
    return [(length, src, tgt, terms) for (src, tgt), terms in blocks.items()]


def quiver_algebra(num_vertices, arrows, relations, top, field=QQ) -> GradedAlgebra:
    """Path algebra of a quiver modulo homogeneous relations, up to degree top.

    arrows is a list of (source, target) vertex pairs; a path (a_1, ..., a_m)
    composes arrow a_1 first.  Degree = path length, left tag = source,
    right tag = target.  Relations (degree >= 2) generate a two-sided ideal
    expanded degreewise, so no term ordering is involved.
    """
    if num_vertices < 1:
        raise PreconditionError("a quiver needs at least one vertex")
    if top < 0:
        raise PreconditionError("top degree must be >= 0")
    arrows = [(int(s), int(t)) for s, t in arrows]
    for s, t in arrows:
        if not (0 <= s < num_vertices and 0 <= t < num_vertices):
            raise PreconditionError(f"arrow endpoint out of range: ({s}, {t})")
    F = field
    z = F.zero()
    rel_by_degree = {}
    for rel in relations:
        for length, _, _, terms in _split_relation(F, arrows, rel):
            rel_by_degree.setdefault(length, []).append(terms)

    paths = {1: [(a,) for a in range(len(arrows))]}
    for m in range(2, top + 1):
        paths[m] = [p + (a,) for p in paths[m - 1]
                    for a in range(len(arrows)) if arrows[a][0] == _path_target(arrows, p)]
    index = {m: {p: i for i, p in enumerate(ps)} for m, ps in paths.items()}

    ideal = {}
    for m in range(2, top + 1):
        if m not in paths or not paths[m]:
            continue
        dim = len(paths[m])
        vecs = []
        prev = ideal.get(m - 1)
        if prev is not None and prev.dim:
            for row in prev.rows:
                for a in range(len(arrows)):
                    left = [z] * dim
                    right = [z] * dim
                    hit_l = hit_r = False
                    for pi, coeff in enumerate(row):
                        if coeff == z:
                            continue
                        p = paths[m - 1][pi]
                        if arrows[a][1] == _path_source(arrows, p):
                            left[index[m][(a,) + p]] = coeff
                            hit_l = True
                        if _path_target(arrows, p) == arrows[a][0]:
                            right[index[m][p + (a,)]] = coeff
                            hit_r = True
                    if hit_l:
                        vecs.append(left)
                    if hit_r:
                        vecs.append(right)
        for terms in rel_by_degree.get(m, []):
            vec = [z] * dim
            for coeff, path in terms:
                if path not in index[m]:
                    raise PreconditionError(f"path {path} does not exist in the quiver")
                vec[index[m][path]] = F.add(vec[index[m][path]], coeff)
            vecs.append(vec)
        ideal[m] = Subspace.from_vectors(F, dim, vecs)
    for m, terms in rel_by_degree.items():
        if m > top:
            continue  # relations above the window change nothing visible
        if m not in ideal:
            raise PreconditionError("relation at a degree with no paths")

    comps = {0: LabeledSpace(num_vertices, tuple(range(num_vertices)),
                             tuple(range(num_vertices)))}
    kept = {0: list(range(num_vertices))}
    basis_paths = {0: list(range(num_vertices))}  # degree 0: vertices
    for m in range(1, top + 1):
        ps = paths.get(m, [])
        if not ps:
            continue
        sp = ideal.get(m)
        pivots = set(sp.pivots) if sp is not None else set()
        keep = [i for i in range(len(ps)) if i not in pivots]
        if not keep:
            continue
        comps[m] = LabeledSpace(
            len(keep),
            tuple(_path_source(arrows, ps[i]) for i in keep),
            tuple(_path_target(arrows, ps[i]) for i in keep))
        kept[m] = keep
        basis_paths[m] = [ps[i] for i in keep]

    def reduce_path(m, p):
        """Class of path p in the kept coordinates of degree m."""
        e = [z] * len(paths[m])
        e[index[m][p]] = F.one()
        sp = ideal.get(m)
        red = sp.reduce(e) if sp is not None else e
        return tuple(red[i] for i in kept[m])

    mult = {}
    degs = sorted(comps)
    for g in degs:
        for h in degs:
            t = g + h
            if t > top or t not in comps:
                continue
            pairs = matched_pairs(comps[g], comps[h])
            if not pairs:
                continue
            rows = []
            for (i, j) in pairs:
                if g == 0:
                    word = basis_paths[h][j] if h else basis_paths[0][j]
                elif h == 0:
                    word = basis_paths[g][i]
                else:
                    word = basis_paths[g][i] + basis_paths[h][j]
                if t == 0:
                    row = tuple(F.one() if v == word else z for v in basis_paths[0])
                else:
                    row = reduce_path(t, word)
                rows.append(row)
            mult[(g, h)] = Matrix(F, len(pairs), comps[t].dim, rows)
    unit = tuple(F.one() for _ in range(num_vertices))
    return GradedAlgebra(Z, (0, top), num_vertices, F, comps, mult, unit)


def n_homogeneous_dual(v_dim, relations, top, field=QQ,
                       degree=None) -> GradedAlgebra:
    """Degreewise dual of the one-vertex algebra T(V)/(R), R in V^{tensor n}.

    relations are either a Subspace of the degree-n tensor component (word
    basis in lexicographic order) or a list in the path-term format over
    v_dim loops, all terms of one common length n >= 2.  With no relations
    the degree cannot be inferred and must be passed explicitly.  The
    result is T(V*)/(R-perp) expanded up to degree top, where R-perp is
    the annihilator of R under the word pairing.
    """
    if v_dim < 1:
        raise PreconditionError("need at least one generator")
    F = field
    n = None if degree is None else int(degree)
    if n is not None and n < 2:
        raise PreconditionError("the relation degree must be at least 2")
    rows = []
    words = None
    word_index = None
    if isinstance(relations, Subspace):
        if relations.field is not F:
            raise PreconditionError("relation subspace is over another field")
        if n is None:
            n = round(math.log(relations.ambient, v_dim)) if v_dim > 1 \
                else None
            if n is None or v_dim ** n != relations.ambient or n < 2:
                raise PreconditionError(
                    "cannot infer the relation degree from a subspace of "
                    f"dimension {relations.ambient}; pass degree=")
        if relations.ambient != v_dim ** n:
            raise PreconditionError(
                f"relation subspace lives in dimension "
                f"{relations.ambient}, expected {v_dim ** n}")
        words = list(itertools.product(range(v_dim), repeat=n))
        rows = [list(row) for row in relations.rows]
    else:
        for rel in relations:
            vec = None
            for coeff, path in rel:
                path = tuple(int(a) for a in path)
                if any(a < 0 or a >= v_dim for a in path):
                    raise PreconditionError(f"letter out of range in {path}")
                if n is None:
                    n = len(path)
                    if n < 2:
                        raise PreconditionError(
                            "relations must have degree >= 2")
                if words is None:
                    words = list(itertools.product(range(v_dim), repeat=n))
                    word_index = {w: i for i, w in enumerate(words)}
                if len(path) != n:
                    raise PreconditionError(
                        "all relations must share one degree")
                if vec is None:
                    vec = [F.zero()] * len(words)
                vec[word_index[path]] = F.add(vec[word_index[path]],
                                              _coerce(F, coeff))
            if vec is not None:
                rows.append(vec)
        if n is None:
            raise PreconditionError("the dual of a free algebra needs its "
                                    "degree; pass degree=")
        if words is None:
            words = list(itertools.product(range(v_dim), repeat=n))
    if top < n:
        raise PreconditionError(
            f"the window top {top} cannot hold the degree-{n} relations")
    perp = kernel(Matrix.from_rows(F, rows, len(words)).transpose())
    dual_rels = []
    for row in perp.rows:
        terms = [(c, words[i]) for i, c in enumerate(row) if c != F.zero()]
        dual_rels.append(terms)
    loops = [(0, 0)] * v_dim
    return quiver_algebra(1, loops, dual_rels, top, field)


# ---------------------------------------------------------------------------
# module builders


def regular_module(a: GradedAlgebra) -> GradedModule:
    """A as a right module over itself; action matrices are the mult maps."""
    comps = {d: LabeledSpace.module_component(c.right_tags)
             for d, c in a.components.items()}
    return GradedModule(a, a.window, comps, dict(a.mult))


def free_module(a: GradedAlgebra, gens, window=None) -> GradedModule:
    """Direct sum of shifted copies of A, one per generator degree.

    Component t is the concatenation of the blocks A_{t - g} over the listed
    generator degrees g, in order.  Over Z the default window is just large
    enough to hold every block.
    """
    gens = [int(g) for g in gens]
    if not gens:
        raise PreconditionError("a free module needs at least one generator")
    F = a.field
    z = F.zero()
    if a.group.kind == "Zn":
        window = a.window
        degrees = list(range(a.group.n))
    else:
        if window is None:
            window = (min(gens) + a.window[0], max(gens) + a.window[1])
        degrees = list(range(window[0], window[1] + 1))
    comps = {}
    layout = {}  # degree -> list of (gen_index, algebra_degree, start, dim)
    for t in degrees:
        tags = []
        blocks = []
        pos = 0
        for i, g in enumerate(gens):
            if a.group.kind == "Zn":
                d = (t - g) % a.group.n
            else:
                d = t - g
            c = a.component(d)
            if c.dim:
                blocks.append((i, d, pos, c.dim))
                tags.extend(c.right_tags)
                pos += c.dim
        if pos:
            comps[t] = LabeledSpace.module_component(tuple(tags))
            layout[t] = blocks
    action = {}
    for t, blocks in layout.items():
        locate = {}
        for (i, d, start, dim) in blocks:
            for q in range(dim):
                locate[start + q] = (i, d, q)
        for u in a.degrees():
            tu = a.group.add(t, u)
            if a.group.kind == "Z" and not window[0] <= tu <= window[1]:
                continue
            tblocks = layout.get(tu)
            if tblocks is None:
                continue
            tstart = {i: start for (i, d, start, dim) in tblocks}
            pairs = matched_pairs(comps[t], a.component(u))
            if not pairs:
                continue
            tdim = comps[tu].dim
            rows = []
            for (p, j) in pairs:
                i, d, q = locate[p]
                row = [z] * tdim
                if i in tstart:
                    r = a.mult_row(d, u, q, j)
                    if r is not None:
                        base = tstart[i]
                        for x, val in enumerate(r):
                            row[base + x] = val
                rows.append(row)
            action[(t, u)] = Matrix(F, len(pairs), tdim, rows)
    return GradedModule(a, window, comps, action)


def projective_layout(a: GradedAlgebra, gens, window=None):
    """Layout of the projective module on tagged generators.

    gens is a list of (degree, tag) pairs; generator (m, c) contributes the
    block e_c A shifted by m, i.e. at degree t the basis vectors of A_{t-m}
    whose left tag is c.  Returns (window, comps, layout) with layout[t] a
    list of (gen_index, algebra_degree, start, positions), positions being
    the A-basis indices the block keeps.
    """
    gens = [(int(m), int(c)) for m, c in gens]
    if not gens:
        raise PreconditionError("need at least one generator")
    for _, c in gens:
        if not 0 <= c < a.k:
            raise PreconditionError(f"generator tag {c} out of range")
    if a.group.kind == "Zn":
        window = a.window
        degrees = list(range(a.group.n))
    else:
        if window is None:
            window = (min(m for m, _ in gens) + a.window[0],
                      max(m for m, _ in gens) + a.window[1])
        degrees = list(range(window[0], window[1] + 1))
    comps = {}
    layout = {}
    for t in degrees:
        tags = []
        blocks = []
        pos = 0
        for b, (m, c) in enumerate(gens):
            if a.group.kind == "Zn":
                d = (t - m) % a.group.n
            else:
                d = t - m
            comp = a.component(d)
            positions = tuple(q for q in range(comp.dim) if comp.left_tags[q] == c)
            if positions:
                blocks.append((b, d, pos, positions))
                tags.extend(comp.right_tags[q] for q in positions)
                pos += len(positions)
        if pos:
            comps[t] = LabeledSpace.module_component(tuple(tags))
            layout[t] = blocks
    return window, comps, layout


def projective_module(a: GradedAlgebra, gens, window=None) -> GradedModule:
    """Direct sum of tag-cut shifted copies of A: one e_c A per (degree, tag).

    These are exactly the projectives with tops concentrated in the listed
    degrees when the degree-0 part is split semisimple.
    """
    window, comps, layout = projective_layout(a, gens, window)
    F = a.field
    z = F.zero()
    action = {}
    for t, blocks in layout.items():
        locate = {}
        for (b, d, start, positions) in blocks:
            for inner, q in enumerate(positions):
                locate[start + inner] = (b, d, q)
        tpos_cache = {}
        for u in a.degrees():
            tu = a.group.add(t, u)
            if a.group.kind == "Z" and not window[0] <= tu <= window[1]:
                continue
            tblocks = layout.get(tu)
            if tblocks is None:
                continue
            if tu not in tpos_cache:
                tpos_cache[tu] = {b: (start, positions)
                                  for (b, d, start, positions) in tblocks}
            tinfo = tpos_cache[tu]
            pairs = matched_pairs(comps[t], a.component(u))
            if not pairs:
                continue
            tdim = comps[tu].dim
            rows = []
            for (p, j) in pairs:
                b, d, q = locate[p]
                row = [z] * tdim
                if b in tinfo:
                    r = a.mult_row(d, u, q, j)
                    if r is not None:
                        start, positions = tinfo[b]
                        for inner, qq in enumerate(positions):
                            row[start + inner] = r[qq]
                rows.append(row)
            action[(t, u)] = Matrix(F, len(pairs), tdim, rows)
    return GradedModule(a, window, comps, action)


def present_module(a: GradedAlgebra, gens, relations, window=None) -> GradedModule:
    """Free module on gens modulo the submodule generated by relations.

    relations is an iterable of (degree, vector) with the vector written in
    the free module's coordinates at that degree.
    """
    free = free_module(a, gens, window)
    seeds = {}
    for degree, vec in relations:
        degree = int(degree)
        if a.group.kind == "Zn":
            degree %= a.group.n
        c = free.component(degree)
        vec = tuple(_coerce(a.field, e) for e in vec)
        if len(vec) != c.dim:
            raise PreconditionError(
                f"relation at degree {degree} has length {len(vec)}, "
                f"component has dimension {c.dim}")
        seeds.setdefault(degree, []).append(vec)
    spaces = closure_under_action(free, seeds)
    return quotient_module(free, spaces)
