"""Permutation groups with a base and strong generating set.

The Schreier-Sims chain is built deterministically: base points are chosen
greedily as the first point moved by each new strong generator, orbits are
expanded breadth-first in insertion order.  Identical generator lists
therefore always produce identical chains.
"""

from __future__ import annotations

import math
from random import Random

from .errors import (
    InvalidGenerators,
    NotASubgroupElement,
    NotFound,
    OrbitOverflow,
)
from .perm import Permutation

DEFAULT_ORBIT_CAP = 1 << 24


class _Chain:
    """Base, per-level strong generators and transversals."""

    def __init__(self, degree, gens, base_hint=()):
        self.degree = degree
        self.base = []
        self.level_gens = []  # level i: generators of the stabilizer of base[:i]
        self.transversals = []  # level i: point -> perm mapping base[i] to point
        self._build([g for g in gens if not g.is_identity()], list(base_hint))

    def _first_moved(self, g):
        for i, j in enumerate(g.images):
            if i != j:
                return i
        raise AssertionError("identity has no moved point")

    def _fixes_prefix(self, g, upto):
        return all(g.images[b] == b for b in self.base[:upto])

    def _orbit(self, level):
        """Recompute the fundamental orbit and transversal of a level."""
        beta = self.base[level]
        trans = {beta: Permutation.identity(self.degree)}
        queue = [beta]
        for pt in queue:
            rep = trans[pt]
            for s in self.level_gens[level]:
                img = s.images[pt]
                if img not in trans:
                    trans[img] = rep * s
                    queue.append(img)
        self.transversals[level] = trans

    def _new_level(self, point):
        self.base.append(point)
        self.level_gens.append([])
        self.transversals.append({})

    def sift(self, g, start=0):
        """Strip g through the chain; return (residue, failure level).

        The residue is the identity and the level is len(base) iff g is a
        member of the group generated below `start`.
        """
        h = g
        for level in range(start, len(self.base)):
            img = h.images[self.base[level]]
            if img == self.base[level]:
                continue
            rep = self.transversals[level].get(img)
            if rep is None:
                return h, level
            h = h * rep.inverse()
        return h, len(self.base)

    def _build(self, gens, base_hint):
        for b in base_hint:
            self._new_level(b)
        for g in gens:
            level = 0
            while level < len(self.base) and g.images[self.base[level]] == self.base[level]:
                level += 1
            if level == len(self.base):
                self._new_level(self._first_moved(g))
            for j in range(level + 1):
                self.level_gens[j].append(g)
        for level in range(len(self.base)):
            self._orbit(level)

        # Schreier-Sims: verify each level bottom-up, adding residues.
        i = len(self.base) - 1
        while i >= 0:
            done = True
            trans = self.transversals[i]
            for pt in list(trans):
                rep = trans[pt]
                for s in self.level_gens[i]:
                    img = s.images[pt]
                    schreier = rep * s * self.transversals[i][img].inverse()
                    if schreier.is_identity():
                        continue
                    residue, level = self.sift(schreier, i + 1)
                    if level == len(self.base) or not residue.is_identity():
                        if level == len(self.base):
                            if residue.is_identity():
                                continue
                            self._new_level(self._first_moved(residue))
                        for j in range(i + 1, level + 1):
                            self.level_gens[j].append(residue)
                            self._orbit(j)
                        i = level
                        done = False
                        break
                if not done:
                    break
            if done:
                i -= 1

    def order(self):
        n = 1
        for trans in self.transversals:
            n *= len(trans)
        return n

    def strong_generators(self):
        seen = []
        for gens in self.level_gens:
            for g in gens:
                if g not in seen:
                    seen.append(g)
        return seen


class PermGroup:
    """A finite permutation group given by generators."""

    def __init__(self, gens, degree=None, base_hint=()):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise InvalidGenerators("need a degree for the trivial group")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise InvalidGenerators(
                    "generator degree %d != group degree %d" % (g.degree, degree)
                )
        self.degree = degree
        self.gens = tuple(g for g in gens if not g.is_identity())
        self._base_hint = tuple(base_hint)
        self._chain = None

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            self._chain = _Chain(self.degree, self.gens, self._base_hint)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, level = self.chain.sift(g)
        return level == len(self.chain.base) and residue.is_identity()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @property
    def base(self):
        return tuple(self.chain.base)

    def orbit(self, point: int):
        orb = {point}
        queue = [point]
        for pt in queue:
            for g in self.gens:
                img = g.images[pt]
                if img not in orb:
                    orb.add(img)
                    queue.append(img)
        return queue

    def orbits(self):
        """All orbits on points, each sorted, ordered by least element."""
        seen = set()
        out = []
        for pt in range(self.degree):
            if pt in seen:
                continue
            orb = self.orbit(pt)
            seen.update(orb)
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def pointwise_stabilizer(self, points) -> "PermGroup":
        """Subgroup fixing every listed point, via a base change."""
        points = list(points)
        if not points:
            return self
        chain = _Chain(self.degree, self.gens, base_hint=points)
        keep = []
        for g in chain.strong_generators():
            if all(g.images[p] == p for p in points):
                keep.append(g)
        return PermGroup(keep, self.degree)

    def point_stabilizer(self, point: int) -> "PermGroup":
        return self.pointwise_stabilizer([point])

    def elements(self, cap=1 << 20):
        """All group elements by transversal products (order must be <= cap)."""
        if self.order() > cap:
            raise OrbitOverflow("group order %d exceeds cap %d" % (self.order(), cap))
        out = [Permutation.identity(self.degree)]
        for trans in self.chain.transversals:
            out = [rep * g for rep in trans.values() for g in out]
        return out

    def random_element(self, rng: Random) -> Permutation:
        """Product-replacement step; deterministic for a seeded Random."""
        if not self.gens:
            return self.identity()
        state = getattr(self, "_pr_state", None)
        if state is None:
            state = list(self.gens) * max(1, (11 // len(self.gens)) + 1)
            for _ in range(50):
                _pr_mix(state, rng)
            self._pr_state = state
        _pr_mix(state, rng)
        return state[rng.randrange(len(state))]

    def conjugate_group(self, x: Permutation) -> "PermGroup":
        xinv = x.inverse()
        return PermGroup([g.conjugate(x, xinv) for g in self.gens], self.degree)

    def __repr__(self):
        return "PermGroup(degree=%d, ngens=%d)" % (self.degree, len(self.gens))


def _pr_mix(state, rng):
    i = rng.randrange(len(state))
    j = rng.randrange(len(state))
    while j == i:
        j = rng.randrange(len(state))
    if rng.random() < 0.5:
        state[i] = state[i] * state[j]
    else:
        state[i] = state[j] * state[i]


# ---------------------------------------------------------------------------
# Group actions


def act(value, kind, g: Permutation, ginv: Permutation = None):
    """Apply g to an action object.

    Kinds: 'point' (natural), 'set' (on sorted point tuples), 'conj'
    (conjugation on permutations), 'elemset' (conjugation on frozensets of
    permutations), or any callable (value, g, ginv) -> value.
    """
    if callable(kind):
        if ginv is None:
            ginv = g.inverse()
        return kind(value, g, ginv)
    if kind == "point":
        return g.images[value]
    if kind == "set":
        return tuple(sorted(g.images[i] for i in value))
    if kind == "conj":
        return value.conjugate(g, ginv)
    if kind == "elemset":
        if ginv is None:
            ginv = g.inverse()
        return frozenset(x.conjugate(g, ginv) for x in value)
    raise ValueError("unknown action kind %r" % kind)


class ActionObject:
    """A hashable value paired with its action rule."""

    __slots__ = ("value", "kind")

    def __init__(self, value, kind):
        if kind == "set":
            value = tuple(sorted(value))
        self.value = value
        self.kind = kind

    def apply(self, g, ginv=None):
        return ActionObject(act(self.value, self.kind, g, ginv), self.kind)

    def __hash__(self):
        return hash((self.kind, self.value))

    def __eq__(self, other):
        return (
            isinstance(other, ActionObject)
            and self.kind == other.kind
            and self.value == other.value
        )


def orbit_with_transversal(G: PermGroup, value, kind, cap=DEFAULT_ORBIT_CAP):
    """Orbit of value under G plus coset representatives.

    Returns (orbit list in discovery order, dict value -> perm u with
    value^u = that orbit element).
    """
    gens = [(g, g.inverse()) for g in G.gens]
    trans = {value: Permutation.identity(G.degree)}
    queue = [value]
    for v in queue:
        rep = trans[v]
        for g, ginv in gens:
            img = act(v, kind, g, ginv)
            if img not in trans:
                if len(trans) >= cap:
                    raise OrbitOverflow("orbit exceeds cap %d" % cap)
                trans[img] = rep * g
                queue.append(img)
    return queue, trans


def orbit_with_stabilizer(G: PermGroup, value, kind, cap=DEFAULT_ORBIT_CAP):
    """Orbit and stabilizer; |orbit| * |stab| = |G| always holds.

    The stabilizer is generated by sifted Schreier generators; generation
    stops as soon as the orbit-stabilizer product identity certifies
    completeness.
    """
    orbit, trans = orbit_with_transversal(G, value, kind, cap=cap)
    target = G.order() // len(orbit)
    if target * len(orbit) != G.order():
        raise AssertionError("orbit size does not divide group order")
    stab_gens = []
    stab = PermGroup([], G.degree)
    if target > 1:
        gens = [(g, g.inverse()) for g in G.gens]
        done = False
        for v in orbit:
            rep = trans[v]
            for g, ginv in gens:
                img = act(v, kind, g, ginv)
                schreier = rep * g * trans[img].inverse()
                if schreier.is_identity() or schreier in stab:
                    continue
                stab_gens.append(schreier)
                stab = PermGroup(stab_gens, G.degree)
                if stab.order() == target:
                    done = True
                    break
            if done:
                break
        if stab.order() != target:
            raise AssertionError("Schreier generation did not reach stabilizer order")
    return orbit, stab


def centralizer(G: PermGroup, g: Permutation, cap=DEFAULT_ORBIT_CAP) -> PermGroup:
    """C_G(g), the stabilizer of g under conjugation."""
    _, stab = orbit_with_stabilizer(G, g, "conj", cap=cap)
    return stab


def conjugacy_class(G: PermGroup, g: Permutation, cap=DEFAULT_ORBIT_CAP):
    orbit, _ = orbit_with_transversal(G, g, "conj", cap=cap)
    return orbit


def element_of_order(G: PermGroup, m: int, class_tag=None, seed=0, budget=4000):
    """A group element of order exactly m, deterministically for a given seed.

    class_tag disambiguates between classes of equal element order:
    {'class_size': n} or {'fixed_points': n}.
    """
    if m == 1:
        return G.identity()
    rng = Random(seed)

    def matches(x):
        if x.order() != m:
            return False
        if class_tag is None:
            return True
        if "fixed_points" in class_tag:
            if len(x.fixed_points()) != class_tag["fixed_points"]:
                return False
        if "class_size" in class_tag:
            size = G.order() // centralizer(G, x).order()
            if size != class_tag["class_size"]:
                return False
        return True

    candidates = list(G.gens)
    for _ in range(budget):
        for x in candidates:
            d = x.order()
            if d % m == 0:
                y = x ** (d // m)
                if matches(y):
                    return y
        candidates = [G.random_element(rng)]
    raise NotFound("no element of order %d found within budget" % m)


def minimal_block_system(gens, alpha: int, delta: int):
    """Finest invariant partition merging alpha and delta, for the group
    generated by gens acting on 0..n-1 (assumed transitive).

    Returns the partition as a list of sorted cells; the partition is
    trivial iff it has a single cell or all cells are singletons.
    """
    n = gens[0].degree
    parent = list(range(n))

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    pairs = [(alpha, delta)]
    parent[find(delta)] = find(alpha)
    while pairs:
        a, b = pairs.pop()
        for g in gens:
            ra, rb = find(g.images[a]), find(g.images[b])
            if ra != rb:
                parent[rb] = ra
                pairs.append((ra, rb))
    cells = {}
    for x in range(n):
        cells.setdefault(find(x), []).append(x)
    return sorted(cells.values())


def find_imprimitivity(gens, alpha: int, candidates):
    """First candidate point whose merge with alpha yields a nontrivial
    invariant partition, with that partition; None if all are trivial."""
    n = gens[0].degree
    for delta in candidates:
        if delta == alpha:
            continue
        cells = minimal_block_system(gens, alpha, delta)
        if 1 < len(cells) < n:
            return delta, cells
    return None


def subgroup_closure(G: PermGroup, elems) -> PermGroup:
    """Smallest subgroup of G containing elems."""
    elems = list(elems)
    for x in elems:
        if x not in G:
            raise NotASubgroupElement("element %s not in group" % x)
    return PermGroup(elems, G.degree)


def naive_closure(gens, degree, cap=100000):
    """Brute-force element enumeration; independent oracle for small groups."""
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = x * g
            if y not in seen:
                if len(seen) >= cap:
                    raise OrbitOverflow("closure exceeds cap")
                seen.add(y)
                queue.append(y)
    return seen
