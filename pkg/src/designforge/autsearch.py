"""Automorphism groups of incidence structures, plus lift tests deciding
which normalizing maps of the acting group carry over to the design.

The search runs on the colored bipartite incidence graph: alternating
point/block color refinement, individualization backtracking, pruning by
path invariants and by orbits of the automorphisms found so far.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .design import IncidenceStructure, ReducedStructure
from .errors import BudgetExceeded
from .group import PermGroup
from .perm import Permutation


@dataclass
class AutResult:
    """Automorphism group of an incidence structure.

    generators act on points ⊎ distinct blocks (points first, then the
    distinct blocks in their search ordering); point_gens are the
    restrictions to points, which determine the block parts.
    """

    generators: list
    point_gens: list
    order: int
    point_transitive: bool
    block_transitive: bool
    complete: bool
    nodes: int

    @property
    def group(self) -> PermGroup:
        return PermGroup(self.point_gens, self._v) if self.point_gens else PermGroup([], self._v)


class _Budget(Exception):
    pass


class _Search:
    """One backtracking run over individualized point colorings."""

    def __init__(self, D: IncidenceStructure, budget: int):
        self.v = D.v
        self.budget = budget
        self.nodes = 0
        mult = D.block_multiset()
        self.dblocks = sorted(mult)
        self.mult = {blk: mult[blk] for blk in self.dblocks}
        self.nb = len(self.dblocks)
        kmax = max(len(b) for b in self.dblocks)
        # pad ragged blocks with a virtual point of sentinel color
        arr = np.full((self.nb, kmax), self.v, dtype=np.int64)
        for j, blk in enumerate(self.dblocks):
            arr[j, : len(blk)] = blk
        self.blocks_arr = arr
        pt = []
        bk = []
        for j, blk in enumerate(self.dblocks):
            pt.extend(blk)
            bk.extend([j] * len(blk))
        self.pt_idx = np.array(pt, dtype=np.int64)
        self.blk_idx = np.array(bk, dtype=np.int64)
        self.bcolor0 = np.unique(
            np.array([(len(b), self.mult[b]) for b in self.dblocks], dtype=np.int64),
            axis=0,
            return_inverse=True,
        )[1].ravel()
        self.pcolor0 = np.zeros(self.v, dtype=np.int64)
        # search state
        self.first_invs = {}
        self.first_base = []
        self.first_leaf = None
        self.gens = []
        self._group = None
        self._stab_cache = {}

    # -- refinement ---------------------------------------------------------

    def refine(self, pcolor, bcolor):
        """Refine to a stable coloring; returns (pcolor, bcolor, invariant)."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget()
        pcolor = np.unique(pcolor, return_inverse=True)[1].ravel()
        bcolor = np.unique(bcolor, return_inverse=True)[1].ravel()
        ncp, ncb = pcolor.max() + 1, bcolor.max() + 1
        up = ub = None
        while True:
            pc_ext = np.append(pcolor, -1)
            sig = np.column_stack([bcolor, np.sort(pc_ext[self.blocks_arr], axis=1)])
            ub, bcolor = np.unique(sig, axis=0, return_inverse=True)
            bcolor = bcolor.ravel()
            counts = np.zeros((self.v, len(ub)), dtype=np.int64)
            np.add.at(counts, (self.pt_idx, bcolor[self.blk_idx]), 1)
            sig = np.column_stack([pcolor, counts])
            up, pcolor = np.unique(sig, axis=0, return_inverse=True)
            pcolor = pcolor.ravel()
            if len(up) == ncp and len(ub) == ncb:
                break
            ncp, ncb = len(up), len(ub)
        inv = hash((ncp, ncb, up.tobytes(), ub.tobytes()))
        return pcolor, bcolor, inv

    def individualize(self, pcolor, x):
        out = pcolor * 2
        out[x] += 1
        return out

    def target_cell(self, pcolor):
        """Members of the smallest (then least-colored) non-singleton point
        cell, or None when the point coloring is discrete."""
        colors, counts = np.unique(pcolor, return_counts=True)
        mask = counts > 1
        if not mask.any():
            return None
        idx = np.lexsort((colors[mask], counts[mask]))[0]
        c = colors[mask][idx]
        return [int(x) for x in np.flatnonzero(pcolor == c)]

    # -- candidate handling -------------------------------------------------

    def _is_automorphism(self, images) -> bool:
        for blk in self.dblocks:
            img = tuple(sorted(images[p] for p in blk))
            if self.mult.get(img) != self.mult[blk]:
                return False
        return True

    def _leaf(self, pcolor, dev_level):
        if self.first_leaf is None:
            self.first_leaf = np.argsort(pcolor)  # color -> point
            return None
        images = [0] * self.v
        cur = np.argsort(pcolor)
        for c in range(self.v):
            images[int(self.first_leaf[c])] = int(cur[c])
        perm = Permutation(images)
        if not perm.is_identity() and self._is_automorphism(images):
            self.gens.append(perm)
            self._group = None
            self._stab_cache.clear()
            return dev_level
        return None

    def _orbit_reps_filter(self, depth):
        """Orbits of the point set under automorphisms fixing the first
        `depth` base points; used to skip equivalent candidates."""
        key = (depth, len(self.gens))
        cached = self._stab_cache.get(key)
        if cached is not None:
            return cached
        if not self.gens:
            rep = list(range(self.v))
        else:
            K = self._group
            if K is None:
                K = self._group = PermGroup(self.gens, self.v)
            S = K.pointwise_stabilizer(self.first_base[:depth])
            rep = [0] * self.v
            for orb in S.orbits():
                for x in orb:
                    rep[x] = orb[0]
        self._stab_cache[key] = rep
        return rep

    # -- the backtrack tree -------------------------------------------------

    def run(self):
        pcolor, bcolor, inv = self.refine(self.pcolor0, self.bcolor0)
        self._rec(pcolor, bcolor, inv, 0, True, None)

    def _rec(self, pcolor, bcolor, inv, depth, on_first, dev_level):
        if on_first:
            self.first_invs[depth] = inv
        elif inv != self.first_invs.get(depth):
            return None
        cell = self.target_cell(pcolor)
        if cell is None:
            return self._leaf(pcolor, dev_level)
        if on_first:
            x = cell[0]
            self.first_base.append(x)
            pc, bc, iv = self.refine(self.individualize(pcolor, x), bcolor)
            self._rec(pc, bc, iv, depth + 1, True, None)
            tried = [x]
            for y in cell[1:]:
                rep = self._orbit_reps_filter(depth)
                if any(rep[y] == rep[t] for t in tried):
                    continue
                tried.append(y)
                pc, bc, iv = self.refine(self.individualize(pcolor, y), bcolor)
                self._rec(pc, bc, iv, depth + 1, False, depth)
            return None
        for y in cell:
            pc, bc, iv = self.refine(self.individualize(pcolor, y), bcolor)
            r = self._rec(pc, bc, iv, depth + 1, False, dev_level)
            if r is not None:
                return r  # an automorphism was found; abandon this subtree
        return None


def _extend_to_blocks(search: _Search, point_perm: Permutation) -> Permutation:
    block_index = {blk: j for j, blk in enumerate(search.dblocks)}
    images = list(point_perm.images)
    for blk in search.dblocks:
        img = tuple(sorted(point_perm[p] for p in blk))
        images.append(search.v + block_index[img])
    return Permutation(images)


def aut_group(D: IncidenceStructure, budget: int = 10**6) -> AutResult:
    """Full automorphism group of D, or the subgroup found before the node
    budget ran out (flagged incomplete)."""
    search = _Search(D, budget)
    complete = True
    try:
        search.run()
    except _Budget:
        complete = False
    point_gens = search.gens
    K = PermGroup(point_gens, D.v)
    gens = [_extend_to_blocks(search, g) for g in point_gens]
    block_transitive = False
    if point_gens:
        full = PermGroup(gens, D.v + search.nb)
        block_transitive = len(full.orbit(D.v)) == search.nb
    res = AutResult(
        generators=gens,
        point_gens=point_gens,
        order=K.order(),
        point_transitive=K.is_transitive(),
        block_transitive=block_transitive,
        complete=complete,
        nodes=search.nodes,
    )
    res._v = D.v
    return res


def brute_force_aut_order(D: IncidenceStructure) -> int:
    """Count all point permutations preserving the block multiset.

    Exponential; an independent check for small structures.
    """
    from itertools import permutations

    mult = D.block_multiset()
    count = 0
    for images in permutations(range(D.v)):
        ok = True
        for blk, m in mult.items():
            if mult.get(tuple(sorted(images[p] for p in blk))) != m:
                ok = False
                break
        if ok:
            count += 1
    return count


# -- the block-fixing kernel and the quotient identity -----------------------


def reduction_kernel_order(R: ReducedStructure) -> int:
    """Order of the product of the symmetric groups on the point classes:
    the block-fixing kernel inside the automorphism group."""
    return factorial(R.class_size) ** len(R.classes)


def kernel_generators(R: ReducedStructure):
    """Permutations generating the full symmetric group on each point class
    (identity elsewhere)."""
    gens = []
    for cls in R.classes:
        if len(cls) < 2:
            continue
        images = list(range(R.parent.v))
        images[cls[0]], images[cls[1]] = cls[1], cls[0]
        gens.append(Permutation(images))
        if len(cls) > 2:
            images = list(range(R.parent.v))
            for a, b in zip(cls, cls[1:] + cls[:1]):
                images[a] = b
            gens.append(Permutation(images))
    return gens


def expand_class_perm(R: ReducedStructure, sigma: Permutation) -> Permutation:
    """Lift a permutation of the point classes to a point permutation,
    matching classes in sorted order."""
    images = [0] * R.parent.v
    for i, cls in enumerate(R.classes):
        target = R.classes[sigma[i]]
        for a, b in zip(cls, target):
            images[a] = b
    return Permutation(images)


def is_design_automorphism(D: IncidenceStructure, perm: Permutation) -> bool:
    mult = D.block_multiset()
    return all(
        mult.get(tuple(sorted(perm[p] for p in blk))) == m for blk, m in mult.items()
    )


def fixes_every_block(D: IncidenceStructure, perm: Permutation) -> bool:
    return all(tuple(sorted(perm[p] for p in blk)) == blk for blk in set(D.blocks))


@dataclass
class QuotientReport:
    aut_full: AutResult
    aut_quotient: AutResult
    kernel_order: int
    product_ok: bool
    quotient_lifts_ok: bool
    kernel_fixes_blocks: bool
    complete: bool


def verify_kernel_quotient(D: IncidenceStructure, R: ReducedStructure, budget: int = 10**6) -> QuotientReport:
    """Check |Aut(D)| = (∏|class|!) · |Aut(D/I)|, that quotient
    automorphisms lift, and that the class-symmetry kernel consists of
    block-fixing automorphisms."""
    full = aut_group(D, budget)
    quot = aut_group(R.quotient, budget)
    korder = reduction_kernel_order(R)
    complete = full.complete and quot.complete
    product_ok = complete and full.order == korder * quot.order
    lifts_ok = all(
        is_design_automorphism(D, expand_class_perm(R, sigma)) for sigma in quot.point_gens
    )
    kernel_ok = all(
        is_design_automorphism(D, g) and fixes_every_block(D, g)
        for g in kernel_generators(R)
    )
    return QuotientReport(
        aut_full=full,
        aut_quotient=quot,
        kernel_order=korder,
        product_ok=product_ok,
        quotient_lifts_ok=lifts_ok,
        kernel_fixes_blocks=kernel_ok,
        complete=complete,
    )


# -- lifting normalizing maps ------------------------------------------------


def normalizing_map_check(G: PermGroup, phi: Permutation) -> bool:
    """Whether conjugation by phi maps G to itself."""
    if phi.degree != G.degree:
        return False
    phinv = phi.inverse()
    return all(g.conjugate(phi, phinv) in G for g in G.gens)


def lift_test_method1(design, phi: Permutation) -> bool:
    """Whether the point map induced by the normalizing map phi permutes the
    blocks of a stabilizer-orbit design."""
    pi = design.induced_point_perm(phi)
    if pi is None:
        return False
    blocks = set(design.design.blocks)
    return all(tuple(sorted(pi[p] for p in blk)) in blocks for blk in blocks)


def lift_test_method2(design, phi: Permutation) -> bool:
    """Whether phi preserves the point class and carries the base block to a
    block of a conjugacy-class design."""
    pi = design.induced_point_perm(phi)
    if pi is None:
        return False  # the class is not preserved
    img = tuple(sorted(pi[p] for p in design.base_block))
    return img in design.block_transversal


@dataclass
class IntersectionReport:
    lifted: list  # per map: whether it lifted
    moves_block: list  # per lifted nonidentity map: whether some block moves
    ok: bool  # no lifted nonidentity map fixes every block


def verify_kernel_intersection(design, phis) -> IntersectionReport:
    """Check that no nonidentity lifted map lies in the block-fixing kernel:
    each must move at least one block."""
    D = design.design
    lifted = []
    moves = []
    ok = True
    for phi in phis:
        pi = design.induced_point_perm(phi)
        good = pi is not None and lift_test_method2(design, phi)
        lifted.append(good)
        if not good or pi.is_identity():
            moves.append(None)
            continue
        moved = not fixes_every_block(D, pi)
        moves.append(moved)
        if not moved:
            ok = False
    return IntersectionReport(lifted=lifted, moves_block=moves, ok=ok)
