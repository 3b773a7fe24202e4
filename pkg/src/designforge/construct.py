"""The two design constructions: stabilizer-orbit translates (Method 1)
and conjugacy-class blocks cut out by maximal-subgroup conjugates
(Method 2)."""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from .design import DesignParams, IncidenceStructure, validate_1design
from .errors import InternalInconsistency, OrbitOverflow
from .group import (
    DEFAULT_ORBIT_CAP,
    PermGroup,
    orbit_with_transversal,
)
from .perm import Permutation


def stabilizer_orbits(G: PermGroup, alpha: int):
    """All orbits of the point stabilizer G_alpha, sorted by (size, least
    point) for deterministic addressing."""
    stab = G.point_stabilizer(alpha)
    orbits = stab.orbits()
    return sorted(orbits, key=lambda o: (len(o), o[0]))


# -- coset actions ----------------------------------------------------------


@dataclass
class CosetAction:
    """The action of G on the conjugates of a subgroup M's element set.

    Faithfully realizes the coset action of G on G/M whenever G is simple
    and M is proper (kernel = core of M = 1).
    """

    parent: PermGroup
    subgroup: PermGroup
    group: PermGroup  # image of G in Sym(index)
    point_sets: list  # frozensets of permutations; index 0 is M itself
    index_of: dict

    def induced_perm(self, phi: Permutation):
        """Point permutation induced by conjugation by phi, or None when phi
        does not permute the conjugates of M."""
        phinv = phi.inverse()
        imgs = []
        for s in self.point_sets:
            img = frozenset(x.conjugate(phi, phinv) for x in s)
            j = self.index_of.get(img)
            if j is None:
                return None
            imgs.append(j)
        return Permutation(imgs)

    def fixed_point_count(self, g: Permutation) -> int:
        ginv = g.inverse()
        count = 0
        for s in self.point_sets:
            if frozenset(x.conjugate(g, ginv) for x in s) == s:
                count += 1
        return count


def coset_action(G: PermGroup, M: PermGroup, elem_cap: int = 10**4, cap=DEFAULT_ORBIT_CAP) -> CosetAction:
    """Action of G on the cosets of M, via the conjugation orbit of M's
    element set (requires |M| <= elem_cap)."""
    if M.order() > elem_cap:
        raise OrbitOverflow("subgroup of order %d too large to enumerate" % M.order())
    base = frozenset(M.elements())
    orbit, _ = orbit_with_transversal(G, base, "elemset", cap=cap)
    index_of = {s: i for i, s in enumerate(orbit)}
    gens = []
    for g in G.gens:
        ginv = g.inverse()
        imgs = [index_of[frozenset(x.conjugate(g, ginv) for x in s)] for s in orbit]
        gens.append(Permutation(imgs))
    image = PermGroup(gens, len(orbit))
    return CosetAction(parent=G, subgroup=M, group=image, point_sets=orbit, index_of=index_of)


# -- Method 1 ---------------------------------------------------------------


@dataclass
class Method1Design:
    design: IncidenceStructure
    params: DesignParams
    G: PermGroup  # the acting group, in the representation carrying the design
    alpha: int
    delta: tuple
    coset: CosetAction = None  # set when the action was coset-realized

    def induced_point_perm(self, phi: Permutation):
        """Point map induced by a normalizing permutation of the natural
        domain; None if it does not preserve the point set."""
        if self.coset is None:
            return phi
        return self.coset.induced_perm(phi)


def method1_design(
    G: PermGroup,
    alpha: int = 0,
    orbit_size: int = None,
    orbit_index: int = 0,
    coset: CosetAction = None,
) -> Method1Design:
    """Blocks are the G-translates of a chosen nontrivial G_alpha-orbit."""
    if not G.is_transitive():
        raise ValueError("group must be transitive on its domain")
    orbits = [o for o in stabilizer_orbits(G, alpha) if o != [alpha]]
    if orbit_size is not None:
        orbits = [o for o in orbits if len(o) == orbit_size]
    if orbit_index >= len(orbits):
        raise ValueError("no stabilizer orbit with that selector")
    delta = tuple(orbits[orbit_index])
    block_orbit, _ = orbit_with_transversal(G, delta, "set")
    if len(block_orbit) != G.degree:
        raise InternalInconsistency(
            "expected %d distinct blocks, found %d" % (G.degree, len(block_orbit))
        )
    D = IncidenceStructure(G.degree, block_orbit)
    params = validate_1design(D)
    if (params.k, params.lam) != (len(delta), len(delta)):
        raise InternalInconsistency("parameters disagree with the construction")
    return Method1Design(design=D, params=params, G=G, alpha=alpha, delta=delta, coset=coset)


# -- Method 2 ---------------------------------------------------------------


@dataclass
class Method2Design:
    design: IncidenceStructure
    params: DesignParams
    G: PermGroup
    M: PermGroup
    g: Permutation
    class_elems: list
    index_of: dict
    class_transversal: dict  # element -> u with g^u = element
    base_block: tuple
    block_transversal: dict  # block tuple -> conjugator from the base block

    def index_action(self):
        """Action rule on single class indices, for orbit machinery."""
        elems, idx = self.class_elems, self.index_of

        def apply(value, x, xinv):
            return idx[elems[value].conjugate(x, xinv)]

        return apply

    def index_set_action(self):
        """Action rule on sorted tuples of class indices."""
        elems, idx = self.class_elems, self.index_of

        def apply(value, x, xinv):
            return tuple(sorted(idx[elems[i].conjugate(x, xinv)] for i in value))

        return apply

    def induced_point_perm(self, phi: Permutation):
        """Point map induced by conjugation by phi; None if the class is not
        preserved."""
        phinv = phi.inverse()
        imgs = []
        for h in self.class_elems:
            j = self.index_of.get(h.conjugate(phi, phinv))
            if j is None:
                return None
            imgs.append(j)
        return Permutation(imgs)

    def conjugator_to(self, point: int) -> Permutation:
        """u in G with g^u = the class element at the given point index."""
        return self.class_transversal[self.class_elems[point]]


def method2_design(G: PermGroup, M: PermGroup, g: Permutation, cap=DEFAULT_ORBIT_CAP) -> Method2Design:
    """Points are the conjugacy class of g; the base block is its
    intersection with M, and blocks are the G-translates."""
    if g.is_identity():
        raise ValueError("g must be a nonidentity element of M")
    if g not in M:
        raise ValueError("g is not a member of M")
    class_elems, trans = orbit_with_transversal(G, g, "conj", cap=cap)
    index_of = {h: i for i, h in enumerate(class_elems)}
    base_block = tuple(i for i, h in enumerate(class_elems) if h in M)
    if not base_block:
        raise InternalInconsistency("class does not meet M")

    elems = class_elems
    gens = [(x, x.inverse()) for x in G.gens]
    block_trans = {base_block: Permutation.identity(G.degree)}
    queue = [base_block]
    for blk in queue:
        rep = block_trans[blk]
        for x, xinv in gens:
            img = tuple(sorted(index_of[elems[i].conjugate(x, xinv)] for i in blk))
            if img not in block_trans:
                block_trans[img] = rep * x
                queue.append(img)
    expected_b = G.order() // M.order()
    if len(queue) != expected_b:
        raise InternalInconsistency(
            "expected %d blocks (= |G:M|), found %d" % (expected_b, len(queue))
        )
    D = IncidenceStructure(len(class_elems), queue)
    params = validate_1design(D)
    if params.k != len(base_block):
        raise InternalInconsistency("block size changed along the orbit")
    return Method2Design(
        design=D,
        params=params,
        G=G,
        M=M,
        g=g,
        class_elems=class_elems,
        index_of=index_of,
        class_transversal=trans,
        base_block=base_block,
        block_transversal=block_trans,
    )


# -- permutation character ---------------------------------------------------


def perm_char_value(G: PermGroup, M: PermGroup, g: Permutation, coset: CosetAction = None) -> int:
    """1_M^G(g): the number of conjugates of M containing g, counted as
    fixed points of g on the cosets of M."""
    recipe = getattr(M, "recipe", None)
    if coset is None and recipe is not None and recipe.kind == "point-stabilizer":
        # the coset action is the natural action
        if not G.is_transitive():
            raise ValueError("point-stabilizer shortcut needs a transitive G")
        return len(g.fixed_points())
    if coset is None:
        coset = coset_action(G, M)
    return coset.fixed_point_count(g)


def faithfulness_check(G: PermGroup, induce, samples: int = 100, seed: int = 0) -> bool:
    """Whether the action given by `induce` (element -> point permutation)
    is faithful on generators and random nonidentity words."""
    rng = Random(seed)
    tested = list(G.gens)
    for _ in range(samples):
        x = G.random_element(rng)
        if not x.is_identity():
            tested.append(x)
    return all(not induce(x).is_identity() for x in tested)
