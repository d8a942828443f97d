"""Graded algebras and modules with support killing and regrading.

Data model
----------
A GradedAlgebra stores, per degree, a LabeledSpace (basis vectors tagged with
idempotent indices on both sides) and, per degree pair (g, h), the matrix of
the multiplication map on the tag-matched tensor basis of A_g x A_h, rows
indexed by matched pairs in lexicographic order, columns by the basis of
A_{g+h}.  Components absent from the dictionary are zero, and for Z-graded
objects every component outside the window is zero by definition: the object
is genuinely finite dimensional, not a truncated view of an unknown infinite
one.

The degree-0 part carries the unit as an explicit coefficient vector.  With
k >= 2 idempotents the degree-0 part must be exactly the k orthogonal
idempotents (split semisimple); with k = 1 any unital degree-0 algebra is
allowed.

A GradedModule is the right-module mirror: components are labeled spaces
whose right tags carry the degree-0 action, and action matrices live on
matched tensor bases of M_s x A_u.

All arithmetic is exact, over QQ or GF(p).
"""

from __future__ import annotations

from .errors import (GradingViolationError, InternalConsistencyError, LabelError,
                     PreconditionError, ShapeError)
from .exactlin import (LabeledSpace, Matrix, Subspace, ZERO_SPACE, apply_row,
                       kernel, matched_pairs, rref, solve, subspace_intersect,
                       subspace_sum)
from .regrade_maps import WindowedMap, is_pseudomorphism
from .subsets import DegreeSet, Verdict, is_right_modular


def _check_window(group, window):
    lo, hi = int(window[0]), int(window[1])
    if group.kind == "Zn":
        if (lo, hi) != (0, group.n - 1):
            raise PreconditionError(
                f"cyclic gradings carry the full window (0, {group.n - 1})")
    elif lo > hi:
        raise PreconditionError(f"empty window [{lo}, {hi}]")
    return (lo, hi)


def _normalize_components(group, window, k, components):
    lo, hi = window
    comps = {}
    for d, c in components.items():
        d = int(d)
        if group.kind == "Zn":
            d %= group.n
        if c.dim == 0:
            continue
        if not lo <= d <= hi:
            raise PreconditionError(f"component at degree {d} outside window")
        c.check_tags(k)
        comps[d] = c
    return comps


class GradedAlgebra:
    """A finite-dimensional graded algebra over Z or Z/n."""

    def __init__(self, group, window, k, field, components, mult, unit):
        self.group = group
        self.window = _check_window(group, window)
        if k < 1:
            raise PreconditionError("at least one idempotent is required")
        self.k = k
        self.field = field
        self.components = _normalize_components(group, self.window, k, components)
        if 0 not in self.components:
            raise PreconditionError("the degree-0 component must be nonzero")
        a0 = self.components[0]
        if k >= 2:
            if a0.dim != k or a0.left_tags != tuple(range(k)) \
                    or a0.right_tags != tuple(range(k)):
                raise LabelError(
                    "with k >= 2 the degree-0 part must be the k idempotents, "
                    "basis vector i tagged (i, i)")
        unit = tuple(unit)
        if len(unit) != a0.dim:
            raise ShapeError("unit vector length must match the degree-0 dimension")
        self.unit = unit
        self._pair_cache = {}
        stored = {}
        for (g, h), m in mult.items():
            if group.kind == "Zn":
                g, h = g % group.n, h % group.n
            pairs = matched_pairs(self.component(g), self.component(h))
            t = self.component(self.add_deg(g, h))
            if m.rows != len(pairs) or m.cols != t.dim:
                raise ShapeError(
                    f"mult({g},{h}) must be {len(pairs)}x{t.dim}, "
                    f"got {m.rows}x{m.cols}")
            if m.field != field:
                raise ShapeError("mult matrix over the wrong field")
            if m.rows and m.cols:
                stored[(g, h)] = m
        self.mult = stored

    def in_window(self, d):
        lo, hi = self.window
        return lo <= d <= hi

    def add_deg(self, a, b):
        return self.group.add(a, b)

    def component(self, d) -> LabeledSpace:
        if self.group.kind == "Zn":
            d %= self.group.n
        return self.components.get(d, ZERO_SPACE)

    def degrees(self):
        return sorted(self.components)

    def dims(self):
        return {d: c.dim for d, c in sorted(self.components.items())}

    def total_dim(self):
        return sum(c.dim for c in self.components.values())

    def pairs(self, g, h):
        key = (g, h)
        got = self._pair_cache.get(key)
        if got is None:
            got = matched_pairs(self.component(g), self.component(h))
            self._pair_cache[key] = got
        return got

    def mult_matrix(self, g, h):
        """Stored matrix, or None when the map is structurally zero."""
        if self.group.kind == "Zn":
            g, h = g % self.group.n, h % self.group.n
        return self.mult.get((g, h))

    def mult_row(self, g, h, i, j):
        """Image of x_i * y_j as a vector over A_{g+h}; None when zero."""
        m = self.mult_matrix(g, h)
        if m is None:
            return None
        cg, ch = self.component(g), self.component(h)
        if cg.right_tags[i] != ch.left_tags[j]:
            return None
        idx = self.pairs(g, h).index((i, j))
        return m.entries[idx]

    def right_mult_matrix(self, g, h, j):
        """Matrix of A_g -> A_{g+h}, x |-> x * y_j; None when zero."""
        m = self.mult_matrix(g, h)
        tdim = self.component(self.add_deg(g, h)).dim
        if m is None or tdim == 0:
            return None
        return _select_rows(self.field, self.component(g).dim, tdim,
                            self.pairs(g, h), m, j)


def _select_rows(field, src_dim, tgt_dim, pairs, m, j):
    index = {p: r for r, p in enumerate(pairs)}
    zero_row = (field.zero(),) * tgt_dim
    rows = [m.entries[index[(i, j)]] if (i, j) in index else zero_row
            for i in range(src_dim)]
    return Matrix(field, src_dim, tgt_dim, rows)


class KilledAlgebra(GradedAlgebra):
    """A graded algebra obtained by killing all components off a degree set.

    Carries its ancestry: base is the original algebra and support the degree
    set.  Products landing outside the support are structurally zero because
    the target component is gone.
    """

    def __init__(self, base, support, components, mult):
        super().__init__(base.group, base.window, base.k, base.field,
                         components, mult, base.unit)
        self.base = base
        self.support = support


class GradedModule:
    """A right graded module over a GradedAlgebra."""

    def __init__(self, over, window, components, action):
        self.over = over
        self.group = over.group
        self.field = over.field
        self.window = _check_window(self.group, window)
        self.components = _normalize_components(self.group, self.window, over.k,
                                                components)
        self._pair_cache = {}
        stored = {}
        for (s, u), m in action.items():
            if self.group.kind == "Zn":
                s, u = s % self.group.n, u % self.group.n
            pairs = matched_pairs(self.component(s), over.component(u))
            t = self.component(self.add_deg(s, u))
            if m.rows != len(pairs) or m.cols != t.dim:
                raise ShapeError(
                    f"action({s},{u}) must be {len(pairs)}x{t.dim}, "
                    f"got {m.rows}x{m.cols}")
            if m.field != self.field:
                raise ShapeError("action matrix over the wrong field")
            if m.rows and m.cols:
                stored[(s, u)] = m
        self.action = stored

    def in_window(self, d):
        lo, hi = self.window
        return lo <= d <= hi

    def add_deg(self, a, b):
        return self.group.add(a, b)

    def component(self, d) -> LabeledSpace:
        if self.group.kind == "Zn":
            d %= self.group.n
        return self.components.get(d, ZERO_SPACE)

    def degrees(self):
        return sorted(self.components)

    def dims(self):
        return {d: c.dim for d, c in sorted(self.components.items())}

    def total_dim(self):
        return sum(c.dim for c in self.components.values())

    def pairs(self, s, u):
        key = (s, u)
        got = self._pair_cache.get(key)
        if got is None:
            got = matched_pairs(self.component(s), self.over.component(u))
            self._pair_cache[key] = got
        return got

    def action_matrix(self, s, u):
        if self.group.kind == "Zn":
            s, u = s % self.group.n, u % self.group.n
        return self.action.get((s, u))

    def action_row(self, s, u, i, j):
        m = self.action_matrix(s, u)
        if m is None:
            return None
        cs, cu = self.component(s), self.over.component(u)
        if cs.right_tags[i] != cu.left_tags[j]:
            return None
        idx = self.pairs(s, u).index((i, j))
        return m.entries[idx]

    def right_action_matrix(self, s, u, j):
        """Matrix of M_s -> M_{s+u}, x |-> x * a_j; None when zero."""
        m = self.action_matrix(s, u)
        tdim = self.component(self.add_deg(s, u)).dim
        if m is None or tdim == 0:
            return None
        return _select_rows(self.field, self.component(s).dim, tdim,
                            self.pairs(s, u), m, j)


# ---------------------------------------------------------------------------
# structural equality


def _live_maps(table):
    return {key: m for key, m in table.items()
            if m.rows and m.cols and not m.is_zero()}


def algebras_equal(a: GradedAlgebra, b: GradedAlgebra) -> bool:
    return (a.group == b.group and a.window == b.window and a.k == b.k
            and a.field == b.field and a.unit == b.unit
            and a.components == b.components
            and _live_maps(a.mult) == _live_maps(b.mult))


def modules_equal(m: GradedModule, n: GradedModule) -> bool:
    return (algebras_equal(m.over, n.over) and m.window == n.window
            and m.components == n.components
            and _live_maps(m.action) == _live_maps(n.action))


# ---------------------------------------------------------------------------
# validation


def validate_algebra(a: GradedAlgebra) -> Verdict:
    """Tag compatibility, unit laws, and full associativity.

    The scan is exhaustive over stored degrees, hence exact: cyclic gradings
    enumerate all residues and Z-graded objects are zero outside the window
    by definition.  Witness shapes: ("tags", g, h, i, j, q),
    ("unit-left"|"unit-right", g, i), ("assoc", (g, h, l), (i, j, k)).
    """
    F = a.field
    z = F.zero()
    for (g, h), m in a.mult.items():
        cg, ch = a.component(g), a.component(h)
        ct = a.component(a.add_deg(g, h))
        for r, (i, j) in enumerate(a.pairs(g, h)):
            for q in range(ct.dim):
                if m.entries[r][q] != z and (
                        ct.left_tags[q] != cg.left_tags[i]
                        or ct.right_tags[q] != ch.right_tags[j]):
                    return Verdict(False, False, ("tags", g, h, i, j, q),
                                   reason="product escapes its tag block")
    if a.k >= 2:
        if a.mult_matrix(0, 0) != Matrix.identity(F, a.k):
            return Verdict(False, False, ("degree0",),
                           reason="degree-0 product is not the split idempotent product")
        if a.unit != tuple(F.one() for _ in range(a.k)):
            return Verdict(False, False, ("unit",),
                           reason="unit must be the sum of the idempotents")
    for g in a.degrees():
        dim = a.component(g).dim
        for idx in range(dim):
            if not _unit_side(a, g, idx, left=True):
                return Verdict(False, False, ("unit-left", g, idx))
            if not _unit_side(a, g, idx, left=False):
                return Verdict(False, False, ("unit-right", g, idx))
    degs = a.degrees()
    for g in degs:
        cg = a.component(g)
        for h in degs:
            ch = a.component(h)
            gh = a.add_deg(g, h)
            cgh = a.component(gh)
            for l in degs:
                cl = a.component(l)
                hl = a.add_deg(h, l)
                ct = a.component(a.add_deg(gh, l))
                if ct.dim == 0:
                    continue
                chl = a.component(hl)
                for i in range(cg.dim):
                    for j in range(ch.dim):
                        if cg.right_tags[i] != ch.left_tags[j]:
                            continue
                        xy = a.mult_row(g, h, i, j) if cgh.dim else None
                        for kk in range(cl.dim):
                            if ch.right_tags[j] != cl.left_tags[kk]:
                                continue
                            r1 = _accumulate(F, ct.dim, xy,
                                             lambda m: a.mult_row(gh, l, m, kk))
                            yz = a.mult_row(h, l, j, kk) if chl.dim else None
                            r2 = _accumulate(F, ct.dim, yz,
                                             lambda m: a.mult_row(g, hl, i, m))
                            if r1 != r2:
                                return Verdict(False, False,
                                               ("assoc", (g, h, l), (i, j, kk)))
    return Verdict(True, False)


def _accumulate(field, tdim, coeffs, row_of):
    """Sum of coeffs[m] * row_of(m) as a tuple of length tdim."""
    z = field.zero()
    acc = [z] * tdim
    if coeffs is not None:
        for m, c in enumerate(coeffs):
            if c == z:
                continue
            row = row_of(m)
            if row is None:
                continue
            acc = [field.add(x, field.mul(c, y)) for x, y in zip(acc, row)]
    return tuple(acc)


def _unit_side(a, g, idx, left):
    F = a.field
    z = F.zero()
    dim = a.component(g).dim
    acc = [z] * dim
    for pos, c in enumerate(a.unit):
        if c == z:
            continue
        row = a.mult_row(0, g, pos, idx) if left else a.mult_row(g, 0, idx, pos)
        if row is None:
            continue
        acc = [F.add(x, F.mul(c, y)) for x, y in zip(acc, row)]
    want = tuple(F.one() if t == idx else z for t in range(dim))
    return tuple(acc) == want


def is_generated_in_degrees_01(a: GradedAlgebra) -> bool:
    """Whether every component above degree 1 is spanned by degree-1 products.

    Only meaningful for Z-graded algebras whose window starts at 0: checks
    surjectivity of A_1 x A_{i-1} -> A_i for every stored degree i >= 2.
    """
    if a.group.kind != "Z" or a.window[0] != 0:
        return False
    for i in a.degrees():
        if i < 2:
            continue
        m = a.mult_matrix(1, i - 1)
        if m is None:
            return False
        span, _ = rref(a.field, list(m.entries))
        if len(span) < a.component(i).dim:
            return False
    return True


def validate_module(mod: GradedModule) -> Verdict:
    """Tag compatibility, unit action, and action associativity."""
    a = mod.over
    F = mod.field
    z = F.zero()
    for (s, u), m in mod.action.items():
        cu = a.component(u)
        ct = mod.component(mod.add_deg(s, u))
        for r, (i, j) in enumerate(mod.pairs(s, u)):
            for q in range(ct.dim):
                if m.entries[r][q] != z and ct.right_tags[q] != cu.right_tags[j]:
                    return Verdict(False, False, ("tags", s, u, i, j, q),
                                   reason="action escapes its tag block")
    for s in mod.degrees():
        dim = mod.component(s).dim
        for idx in range(dim):
            acc = [z] * dim
            for pos, c in enumerate(a.unit):
                if c == z:
                    continue
                row = mod.action_row(s, 0, idx, pos)
                if row is None:
                    continue
                acc = [F.add(x, F.mul(c, y)) for x, y in zip(acc, row)]
            if tuple(acc) != tuple(F.one() if t == idx else z for t in range(dim)):
                return Verdict(False, False, ("unit", s, idx))
    adegs = a.degrees()
    for s in mod.degrees():
        cs = mod.component(s)
        for u in adegs:
            cu = a.component(u)
            su = mod.add_deg(s, u)
            csu = mod.component(su)
            for v in adegs:
                cv = a.component(v)
                uv = a.add_deg(u, v)
                ct = mod.component(mod.add_deg(su, v))
                if ct.dim == 0:
                    continue
                cuv = a.component(uv)
                for i in range(cs.dim):
                    for j in range(cu.dim):
                        if cs.right_tags[i] != cu.left_tags[j]:
                            continue
                        xa = mod.action_row(s, u, i, j) if csu.dim else None
                        for kk in range(cv.dim):
                            if cu.right_tags[j] != cv.left_tags[kk]:
                                continue
                            r1 = _accumulate(F, ct.dim, xa,
                                             lambda m: mod.action_row(su, v, m, kk))
                            ab = a.mult_row(u, v, j, kk) if cuv.dim else None
                            r2 = _accumulate(F, ct.dim, ab,
                                             lambda m: mod.action_row(s, uv, i, m))
                            if r1 != r2:
                                return Verdict(False, False,
                                               ("assoc", (s, u, v), (i, j, kk)))
    return Verdict(True, False)


# ---------------------------------------------------------------------------
# killing supports


def _check_set_group(obj, s: DegreeSet):
    if s.group != obj.group:
        raise PreconditionError(
            f"degree set over {s.group!r} cannot grade an object over {obj.group!r}")


def kill_support_algebra(a: GradedAlgebra, u: DegreeSet) -> KilledAlgebra:
    """Restrict components to degrees in U and kill products landing outside.

    U is not required to be ring-supporting: running validate_algebra on the
    result decides associativity of the killed product, which is the point of
    the construction.  U must contain 0 (so the unit survives) and must
    answer membership on the whole window.
    """
    _check_set_group(a, u)
    if not u.contains(0):
        raise PreconditionError("killing keeps the unit, so 0 must lie in U")
    comps = {d: c for d, c in a.components.items() if u.contains(d)}
    mult = {}
    for (g, h), m in a.mult.items():
        if g in comps and h in comps and a.add_deg(g, h) in comps:
            mult[(g, h)] = m
    return KilledAlgebra(a, u, comps, mult)


def kill_support_module(m: GradedModule, s: DegreeSet, u: DegreeSet,
                        algebra: KilledAlgebra | None = None) -> GradedModule:
    """M_S over A_U: keep components in S, kill actions landing outside S.

    Requires (S, U) to be a right modular pair, which is exactly the
    condition making the killed action associative for every module.
    """
    _check_set_group(m, s)
    verdict = is_right_modular(s, u)
    if not verdict.holds:
        raise PreconditionError(
            f"(S, U) is not a right modular pair: {verdict.reason} fails, "
            f"witness {verdict.witness}")
    if algebra is None:
        algebra = kill_support_algebra(m.over, u)
    comps = {d: c for d, c in m.components.items() if s.contains(d)}
    action = {}
    for (sd, ud), mat in m.action.items():
        if sd in comps and ud in algebra.components \
                and m.add_deg(sd, ud) in comps:
            action[(sd, ud)] = mat
    return GradedModule(algebra, m.window, comps, action)


def shift_module(m: GradedModule, g: int) -> GradedModule:
    """Degree shift: shift(M, g)_h = M_{h-g}."""
    if m.group.kind == "Zn":
        window = m.window
    else:
        window = (m.window[0] + g, m.window[1] + g)
    comps = {m.add_deg(d, g): c for d, c in m.components.items()}
    action = {(m.add_deg(s, g), u): mat for (s, u), mat in m.action.items()}
    return GradedModule(m.over, window, comps, action)


# ---------------------------------------------------------------------------
# regrading along a windowed pseudomorphism


def _require_pseudo(phi: WindowedMap):
    v = is_pseudomorphism(phi)
    if not v.holds:
        raise PreconditionError(
            f"map is not a pseudomorphism on its window: {v.reason}, "
            f"witness {v.witness}")


def regrade_algebra(b: GradedAlgebra, phi: WindowedMap) -> GradedAlgebra:
    """New grading with component sigma = B_{phi(sigma)}.

    Requires every nonzero component of B to sit inside the window image of
    phi, so the new grading sees all of B.  Products between image degrees
    that land outside the image are necessarily zero under that hypothesis;
    a nonzero one raises a grading violation with witness (sigma, tau).
    """
    if b.group.kind != "Z":
        raise PreconditionError("regrading applies to Z-graded algebras")
    _require_pseudo(phi)
    img = {phi(s): s for s in phi.domain()}
    for d in b.degrees():
        if d not in img:
            raise PreconditionError(
                f"nonzero component at degree {d} lies outside the image of the map")
    # only positions mapping into B's window are certified by B
    lo, hi = _clipped_positions(phi, b.window)
    comps = {}
    for sigma in range(lo, hi + 1):
        c = b.component(phi(sigma))
        if c.dim:
            comps[sigma] = c
    mult = {}
    for sigma in comps:
        for tau in comps:
            mm = b.mult_matrix(phi(sigma), phi(tau))
            if mm is None:
                continue
            st = sigma + tau
            total = phi(sigma) + phi(tau)
            if total not in img:
                if not mm.is_zero():
                    raise GradingViolationError(
                        "product lands outside the image of the regrading map",
                        witness=(sigma, tau))
                continue
            if not lo <= st <= hi:
                # the target exists in B but the new grading has no slot for it
                if not mm.is_zero():
                    raise GradingViolationError(
                        "product leaves the regrading window",
                        witness=(sigma, tau))
                continue
            if phi(st) != total:
                raise InternalConsistencyError(
                    "pseudomorphism certificate violated during regrading")
            mult[(sigma, tau)] = mm
    return GradedAlgebra(b.group, (lo, hi), b.k, b.field, comps, mult, b.unit)


def regrade_module(x: GradedModule, phi: WindowedMap, g: int = 0,
                   algebra: GradedAlgebra | None = None) -> GradedModule:
    """New grading with component sigma = X_{g + phi(sigma)}."""
    if x.group.kind != "Z":
        raise PreconditionError("regrading applies to Z-graded modules")
    _require_pseudo(phi)
    if algebra is None:
        algebra = regrade_algebra(x.over, phi)
    img = {phi(s): s for s in phi.domain()}
    for d in x.degrees():
        if d - g not in img:
            raise PreconditionError(
                f"module support at degree {d} lies outside g + Im(phi)")
    lo, hi = _clipped_positions(phi, x.window, g)
    comps = {}
    for sigma in range(lo, hi + 1):
        c = x.component(g + phi(sigma))
        if c.dim:
            comps[sigma] = c
    action = {}
    for sigma in comps:
        for tau in phi.domain():
            mat = x.action_matrix(g + phi(sigma), phi(tau))
            if mat is None:
                continue
            st = sigma + tau
            total = phi(sigma) + phi(tau)
            if total not in img:
                if not mat.is_zero():
                    raise GradingViolationError(
                        "module action lands outside the image of the regrading map",
                        witness=(sigma, tau))
                continue
            if not lo <= st <= hi:
                if not mat.is_zero():
                    raise GradingViolationError(
                        "module action leaves the regrading window",
                        witness=(sigma, tau))
                continue
            action[(sigma, tau)] = mat
    return GradedModule(algebra, (lo, hi), comps, action)


def _clipped_positions(phi: WindowedMap, window, g: int = 0):
    """Positions whose phi-image falls inside the target window."""
    lo, hi = window
    positions = [s for s in phi.domain() if lo <= g + phi(s) <= hi]
    if not positions:
        raise PreconditionError("the regrading map misses the window")
    return positions[0], positions[-1]


def un_regrade_module(v: GradedModule, phi: WindowedMap, g: int = 0,
                      algebra: GradedAlgebra | None = None) -> GradedModule:
    """Inverse of regrade_module on modules satisfying the vanishing pattern.

    V must kill every action V_sigma x B_tau with phi(sigma) + phi(tau)
    outside the window image of phi; otherwise the result would not be graded
    and a grading violation with witness (sigma, tau) is raised.  When the
    algebra to grade over is not supplied it is rebuilt by pushing V's
    algebra forward along phi.
    """
    if v.group.kind != "Z":
        raise PreconditionError("regrading applies to Z-graded modules")
    _require_pseudo(phi)
    dom = list(phi.domain())
    img = {phi(s): s for s in dom}
    for sigma in v.degrees():
        for tau in dom:
            if phi(sigma) + phi(tau) in img:
                continue
            mat = v.action_matrix(sigma, tau)
            if mat is not None and not mat.is_zero():
                raise GradingViolationError(
                    "action violates the regrading vanishing pattern",
                    witness=(sigma, tau))
    if algebra is None:
        algebra = _push_forward_algebra(v.over, phi)
    lo = max(v.window[0], phi.window[0])
    hi = min(v.window[1], phi.window[1])
    if lo > hi:
        raise PreconditionError("the module window misses the map window")
    window = (g + phi(lo), g + phi(hi))
    comps = {g + phi(sigma): v.component(sigma) for sigma in v.degrees()}
    action = {}
    for (sigma, tau), mat in v.action.items():
        if phi(sigma) + phi(tau) in img:
            action[(g + phi(sigma), phi(tau))] = mat
    return GradedModule(algebra, window, comps, action)


def _push_forward_algebra(bt: GradedAlgebra, phi: WindowedMap) -> GradedAlgebra:
    lo = max(bt.window[0], phi.window[0])
    hi = min(bt.window[1], phi.window[1])
    if lo > hi:
        raise PreconditionError("the algebra window misses the map window")
    window = (phi(lo), phi(hi))
    comps = {}
    for sigma in phi.domain():
        c = bt.component(sigma)
        if c.dim:
            comps[phi(sigma)] = c
    mult = {(phi(s), phi(t)): m for (s, t), m in bt.mult.items()}
    return GradedAlgebra(bt.group, window, bt.k, bt.field, comps, mult, bt.unit)


# ---------------------------------------------------------------------------
# submodules, quotients, torsion


def _tag_blocked_rows(comp: LabeledSpace, space: Subspace, field):
    """Basis of an A_0-stable subspace grouped by right tag.

    Returns (rows, tags) with rows reduced per tag; raises if the subspace is
    not the direct sum of its tag blocks, which cannot happen for
    action-closed subspaces of a valid module.
    """
    if space.dim == 0:
        return (), ()
    z = field.zero()
    rows, tags = [], []
    total = 0
    for c in sorted(set(comp.right_tags)):
        proj = [tuple(e if comp.right_tags[i] == c else z for i, e in enumerate(r))
                for r in space.rows]
        red, _ = rref(field, proj)
        rows.extend(red)
        tags.extend(c for _ in red)
        total += len(red)
    if total != space.dim:
        raise InternalConsistencyError("subspace is not stable under the idempotents")
    return tuple(rows), tuple(tags)


def submodule_from_subspaces(m: GradedModule, spaces: dict) -> GradedModule:
    """The submodule with the given action-closed component subspaces."""
    F = m.field
    bases = {}
    for d, sp in spaces.items():
        if sp.dim == 0:
            continue
        bases[d] = _tag_blocked_rows(m.component(d), sp, F)
    comps = {d: LabeledSpace.module_component(tags)
             for d, (rows, tags) in bases.items()}
    action = {}
    adegs = m.over.degrees()
    for d, (rows, tags) in bases.items():
        for u in adegs:
            t = m.add_deg(d, u)
            if t not in bases:
                # pushes into an unlisted degree must land on zero
                for (i, j) in matched_pairs(comps[d], m.over.component(u)):
                    ra = m.right_action_matrix(d, u, j)
                    if ra is None:
                        continue
                    vec = apply_row(F, rows[i], ra)
                    if any(e != F.zero() for e in vec):
                        raise PreconditionError(
                            f"subspaces are not action-closed: degree {d} "
                            f"pushes into unlisted degree {t}")
                continue
            trows, _ = bases[t]
            pairs = matched_pairs(comps[d], m.over.component(u))
            if not pairs:
                continue
            out = []
            for (i, j) in pairs:
                ra = m.right_action_matrix(d, u, j)
                if ra is None:
                    out.append((F.zero(),) * len(trows))
                    continue
                vec = apply_row(F, rows[i], ra)
                coords = _coords_in_rows(F, trows, vec)
                if coords is None:
                    raise PreconditionError(
                        f"subspaces are not action-closed: degree {d} "
                        f"pushes outside the degree-{t} subspace")
                out.append(tuple(coords))
            action[(d, u)] = Matrix(F, len(pairs), len(trows), out)
    return GradedModule(m.over, m.window, comps, action)


def _coords_in_rows(field, rows, vec):
    """Coordinates of vec in the span of independent rows; None if outside."""
    z = field.zero()
    if not rows:
        return () if all(e == z for e in vec) else None
    return solve(Matrix.from_rows(field, rows, len(vec)), vec)


def quotient_with_maps(m: GradedModule, spaces: dict):
    """M / W together with its coordinate data, for action-closed W.

    Returns (quotient, project, keep) where project(d, vec) rewrites an
    ambient coordinate vector in quotient coordinates and keep[d] lists the
    ambient coordinates whose classes form the quotient basis at degree d.

    The quotient basis at each degree is the set of standard coordinates not
    used as pivots by the tag-blocked basis of W, ordered by tag, so the
    result again has tag-pure basis vectors.
    """
    F = m.field
    z = F.zero()
    reducers = {}
    for d in m.degrees():
        comp = m.component(d)
        sp = spaces.get(d)
        if sp is None or sp.dim == 0:
            rows, pivots = (), ()
        else:
            rows, _ = _tag_blocked_rows(comp, sp, F)
            pivots = tuple(next(i for i, e in enumerate(r) if e != z) for r in rows)
        taken = set(pivots)
        keep = sorted((i for i in range(comp.dim) if i not in taken),
                      key=lambda i: (comp.right_tags[i], i))
        reducers[d] = (rows, pivots, keep)
    comps = {}
    for d, (rows, pivots, keep) in reducers.items():
        if keep:
            comp = m.component(d)
            comps[d] = LabeledSpace.module_component(
                tuple(comp.right_tags[i] for i in keep))

    def project(d, vec):
        rows, pivots, keep = reducers[d]
        v = list(vec)
        for row, p in zip(rows, pivots):
            c = v[p]
            if c != z:
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return tuple(v[i] for i in keep)

    action = {}
    adegs = m.over.degrees()
    for d in comps:
        keep = reducers[d][2]
        for u in adegs:
            t = m.add_deg(d, u)
            if t not in comps:
                continue
            pairs = matched_pairs(comps[d], m.over.component(u))
            if not pairs:
                continue
            tdim = len(reducers[t][2])
            out = []
            for (i, j) in pairs:
                ra = m.right_action_matrix(d, u, j)
                if ra is None:
                    out.append((z,) * tdim)
                    continue
                out.append(project(t, ra.entries[keep[i]]))
            action[(d, u)] = Matrix(F, len(pairs), tdim, out)
    quotient = GradedModule(m.over, m.window, comps, action)
    keep_map = {d: tuple(keep) for d, (_, _, keep) in reducers.items()}
    return quotient, project, keep_map


def quotient_module(m: GradedModule, spaces: dict) -> GradedModule:
    """M / W for an action-closed family of component subspaces W."""
    return quotient_with_maps(m, spaces)[0]


def closure_under_action(m: GradedModule, seeds: dict) -> dict:
    """Smallest action-closed family of component subspaces containing seeds.

    seeds maps degrees to lists of coordinate vectors.  Iterates one-step
    images until dimensions stop growing; terminates because the total
    dimension is bounded.
    """
    F = m.field
    spaces = {d: Subspace.zero(F, m.component(d).dim) for d in m.degrees()}
    for d, vecs in seeds.items():
        if m.component(d).dim == 0 or not vecs:
            continue
        spaces[d] = subspace_sum(
            spaces[d], Subspace.from_vectors(F, m.component(d).dim, vecs))
    adegs = m.over.degrees()
    changed = True
    while changed:
        changed = False
        for d in m.degrees():
            sp = spaces[d]
            if sp.dim == 0:
                continue
            for u in adegs:
                t = m.add_deg(d, u)
                if m.group.kind == "Z" and not m.in_window(t):
                    continue
                tcomp = m.component(t)
                if tcomp.dim == 0 or spaces[t].dim == tcomp.dim:
                    continue
                vecs = []
                for j in range(m.over.component(u).dim):
                    ra = m.right_action_matrix(d, u, j)
                    if ra is None:
                        continue
                    vecs.extend(apply_row(F, r, ra) for r in sp.rows)
                if not vecs:
                    continue
                new = subspace_sum(spaces[t],
                                   Subspace.from_vectors(F, tcomp.dim, vecs))
                if new.dim > spaces[t].dim:
                    spaces[t] = new
                    changed = True
    return spaces


def _full_seeds(m: GradedModule, degrees):
    seeds = {}
    for d in degrees:
        c = m.component(d)
        if c.dim:
            seeds[d] = list(Subspace.full(m.field, c.dim).rows)
    return seeds


def generated_submodule(m: GradedModule, degrees) -> GradedModule:
    """The submodule generated by the full components at the given degrees."""
    return submodule_from_subspaces(
        m, closure_under_action(m, _full_seeds(m, degrees)))


def is_generated_in(m: GradedModule, degrees) -> bool:
    spaces = closure_under_action(m, _full_seeds(m, degrees))
    return all(spaces[d].dim == m.component(d).dim for d in m.degrees())


def _complement_matrix(field, ambient, space: Subspace):
    """Matrix of a projection K^ambient -> K^(ambient - dim) killing space.

    None when the space is everything.
    """
    z = field.zero()
    taken = set(space.pivots)
    keep = [i for i in range(ambient) if i not in taken]
    if not keep:
        return None
    one = field.one()
    rows = []
    for i in range(ambient):
        e = [z] * ambient
        e[i] = one
        red = space.reduce(e)
        rows.append(tuple(red[j] for j in keep))
    return Matrix(field, ambient, len(keep), rows)


def preimage_subspace(f: Matrix, w: Subspace) -> Subspace:
    """{x : x @ f in w}."""
    if f.cols != w.ambient:
        raise ShapeError("preimage target dimension mismatch")
    comp = _complement_matrix(f.field, f.cols, w)
    if comp is None:
        return Subspace.full(f.field, f.rows)
    return kernel(f @ comp)


def torsion_spaces(n: GradedModule, s: DegreeSet) -> dict:
    """Component subspaces of the largest submodule supported outside S.

    Greatest fixed point: start with everything off S and repeatedly discard
    vectors whose action image leaves the current family.  Degrees whose S
    membership cannot be decided (outside a windowed S's window) count as
    inside S, which keeps the result sound if possibly small.
    """
    _check_set_group(n, s)
    F = n.field
    spaces = {}
    for d in n.degrees():
        dim = n.component(d).dim
        off = s.try_contains(d) is False
        spaces[d] = Subspace.full(F, dim) if off else Subspace.zero(F, dim)
    adegs = n.over.degrees()
    changed = True
    while changed:
        changed = False
        for d in n.degrees():
            sp = spaces[d]
            if sp.dim == 0:
                continue
            for u in adegs:
                t = n.add_deg(d, u)
                if n.group.kind == "Z" and not n.in_window(t):
                    continue
                if n.component(t).dim == 0:
                    continue
                for j in range(n.over.component(u).dim):
                    ra = n.right_action_matrix(d, u, j)
                    if ra is None:
                        continue
                    pre = preimage_subspace(ra, spaces[t])
                    inter = subspace_intersect(sp, pre)
                    if inter.dim < sp.dim:
                        sp = inter
                        spaces[d] = sp
                        changed = True
                        if sp.dim == 0:
                            break
                if sp.dim == 0:
                    break
    return spaces


def torsion_submodule(n: GradedModule, s: DegreeSet) -> GradedModule:
    return submodule_from_subspaces(n, torsion_spaces(n, s))


def torsion_quotient(n: GradedModule, s: DegreeSet) -> GradedModule:
    """N divided by its largest submodule supported outside S."""
    return quotient_module(n, torsion_spaces(n, s))


def is_cogenerated_in(n: GradedModule, s: DegreeSet) -> Verdict:
    """True when the only submodule supported outside S is zero."""
    spaces = torsion_spaces(n, s)
    bad = tuple((d, sp.dim) for d, sp in sorted(spaces.items()) if sp.dim)
    if bad:
        return Verdict(False, False, witness=bad)
    return Verdict(True, False)


# ---------------------------------------------------------------------------
# graded hom spaces


def hom_space_basis(m: GradedModule, n: GradedModule) -> list:
    """Basis of the space of degree-0 module maps M -> N.

    Each basis element is a dict degree -> Matrix giving the component of the
    map in the two modules' bases.  Both modules must live over structurally
    equal algebras.  The defining equations f_{s+u}(x a) = f_s(x) a are
    imposed for every module degree, algebra degree, and acting basis vector;
    unknowns exist only at degrees where both components are nonzero, and
    maps out of or into zero components contribute one-sided constraints.
    """
    if not algebras_equal(m.over, n.over):
        raise PreconditionError("hom spaces need modules over the same algebra")
    F = m.field
    z = F.zero()
    offset = {}
    total = 0
    for d in sorted(set(m.degrees()) & set(n.degrees())):
        offset[d] = total
        total += m.component(d).dim * n.component(d).dim
    if total == 0:
        return []
    equations = []
    adegs = m.over.degrees()
    for d in m.degrees():
        md = m.component(d).dim
        nd = n.component(d).dim
        for u in adegs:
            t = m.add_deg(d, u)
            if m.group.kind == "Z" and not m.in_window(t):
                continue
            nt = n.component(t).dim
            if nt == 0:
                continue
            mt = m.component(t).dim
            for j in range(m.over.component(u).dim):
                tm = m.right_action_matrix(d, u, j)
                tn = n.right_action_matrix(d, u, j) if nd else None
                if tm is None and tn is None:
                    continue
                for i in range(md):
                    for c in range(nt):
                        row = [z] * total
                        live = False
                        if tm is not None and t in offset:
                            base = offset[t]
                            for mm in range(mt):
                                coef = tm.entries[i][mm]
                                if coef != z:
                                    row[base + mm * nt + c] = coef
                                    live = True
                        if tn is not None and d in offset:
                            base = offset[d]
                            for q in range(nd):
                                coef = tn.entries[q][c]
                                if coef != z:
                                    pos = base + i * nd + q
                                    row[pos] = F.sub(row[pos], coef)
                                    live = True
                        if live:
                            equations.append(tuple(row))
    if equations:
        sols = kernel(Matrix.from_rows(F, equations, total).transpose())
    else:
        sols = Subspace.full(F, total)
    out = []
    for vec in sols.rows:
        maps = {}
        for d, base in offset.items():
            md, nd = m.component(d).dim, n.component(d).dim
            rows = [tuple(vec[base + i * nd + q] for q in range(nd))
                    for i in range(md)]
            maps[d] = Matrix(F, md, nd, rows)
        out.append(maps)
    return out


def hom_space_dim(m: GradedModule, n: GradedModule) -> int:
    return len(hom_space_basis(m, n))
