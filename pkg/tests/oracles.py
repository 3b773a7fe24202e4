"""Independent test oracles, kept free of the package's search machinery."""

from itertools import combinations


def oracle_aut_order(D):
    """Backtracking point-image assignment, independent of the search code.

    Prunes only on degree sequence and pairwise co-occurrence counts, so it
    shares no machinery with the color-refinement engine under test.
    """
    v = D.v
    pair = [[0] * v for _ in range(v)]
    for blk in D.blocks:
        for a, b in combinations(blk, 2):
            pair[a][b] += 1
            pair[b][a] += 1
    deg = D.point_degrees()
    multiset = D.block_multiset()

    count = 0

    def extend(images, used):
        nonlocal count
        x = len(images)
        if x == v:
            mapped = {}
            for blk in D.blocks:
                key = tuple(sorted(images[p] for p in blk))
                mapped[key] = mapped.get(key, 0) + 1
            if mapped == multiset:
                count += 1
            return
        for y in range(v):
            if y in used or deg[y] != deg[x]:
                continue
            if any(pair[x][z] != pair[y][images[z]] for z in range(x)):
                continue
            images.append(y)
            used.add(y)
            extend(images, used)
            images.pop()
            used.remove(y)

    extend([], set())
    return count
