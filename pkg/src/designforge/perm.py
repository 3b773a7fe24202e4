"""Permutations on 0..n-1 and the generator file format.

A permutation is stored as its image tuple: p maps i to p.images[i].
Products compose left to right, i.e. (p * q)(i) = q(p(i)), so that the
exponent notation i^p = p(i) behaves as usual in permutation group texts.
"""

from __future__ import annotations

import math
import re
from functools import cached_property


class Permutation:
    """An immutable bijection on [0, n)."""

    __slots__ = ("images", "__dict__")

    def __init__(self, images):
        images = tuple(images)
        if set(images) != set(range(len(images))):
            raise ValueError("not a permutation of 0..n-1: %r" % (images,))
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        imgs = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                imgs[a] = b
            if cycle:
                imgs[cycle[-1]] = cycle[0]
        return cls(imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        q = other.images
        return Permutation(q[i] for i in self.images)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        imgs = [0] * len(self.images)
        for i, j in enumerate(self.images):
            imgs[j] = i
        return Permutation(imgs)

    def conjugate(self, x: "Permutation", xinv: "Permutation" = None) -> "Permutation":
        """Return self^x = x^-1 * self * x."""
        if xinv is None:
            xinv = x.inverse()
        xi = xinv.images
        xm = x.images
        s = self.images
        return Permutation(xm[s[xi[i]]] for i in range(len(s)))

    def commutes_with(self, other: "Permutation") -> bool:
        s, o = self.images, other.images
        return all(o[s[i]] == s[o[i]] for i in range(len(s)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    @cached_property
    def _hash(self) -> int:
        return hash(self.images)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def cycles(self, include_fixed: bool = False):
        """Cycle decomposition, each cycle starting at its least point."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cycle = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()), 1)

    def fixed_points(self):
        return [i for i, j in enumerate(self.images) if i == j]

    def cycle_type(self):
        """Sorted tuple of cycle lengths, fixed points included."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def __repr__(self):
        return "Permutation(%r)" % (list(self.images),)

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(%s)" % ",".join(str(p + 1) for p in c) for c in cycles)


_CYCLE_RE = re.compile(r"\(([0-9, ]*)\)")


def parse_cycle_string(s: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation like (1,2,3)(4,5)."""
    stripped = re.sub(r"\s", "", s)
    if not re.fullmatch(r"(\(\d+(,\d+)*\))*|\(\)", stripped):
        raise ValueError("bad cycle notation: %r" % s)
    cycles = []
    for m in _CYCLE_RE.finditer(stripped):
        body = m.group(1)
        if not body:
            continue
        pts = [int(x) - 1 for x in body.split(",")]
        if any(p < 0 or p >= degree for p in pts):
            raise ValueError("point out of range in %r for degree %d" % (s, degree))
        if len(set(pts)) != len(pts):
            raise ValueError("repeated point in cycle %r" % s)
        cycles.append(pts)
    return Permutation.from_cycles(degree, cycles)


def read_generator_file(path) -> tuple[int, list[Permutation]]:
    """Read the generator file format.

    First non-comment line is ``degree n``.  Every following line is one
    permutation, either in 1-based cycle notation or as ``img: i0 i1 ...``
    (0-based image list).  Lines starting with ``#`` are comments.
    """
    degree = None
    gens = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if degree is None:
                m = re.fullmatch(r"degree\s+(\d+)", line)
                if not m:
                    raise ValueError("expected 'degree n' header, got %r" % line)
                degree = int(m.group(1))
                continue
            if line.startswith("img:"):
                imgs = [int(x) for x in line[4:].split()]
                if len(imgs) != degree:
                    raise ValueError("image list length %d != degree %d" % (len(imgs), degree))
                gens.append(Permutation(imgs))
            else:
                gens.append(parse_cycle_string(line, degree))
    if degree is None:
        raise ValueError("empty generator file %s" % path)
    return degree, gens


def write_generator_file(path, degree: int, gens, comments=()) -> None:
    """Write generators in cycle notation; round-trips bit-exactly."""
    with open(path, "w") as fh:
        for c in comments:
            fh.write("# %s\n" % c)
        fh.write("degree %d\n" % degree)
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            fh.write("%s\n" % g)
