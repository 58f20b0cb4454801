"""Unstructured brute-force generator of boundary graphs.

Independent oracle for the production enumerator: nested loops over
bottom genus, vertex count, genus compositions, edge-count compositions
and ordered prong compositions, with all constraints restated inline and
isomorphism handled by explicit sorting and set dedup.  Exponentially
wasteful by design; usable up to genus 8.
"""

from __future__ import annotations

from itertools import product


def compositions(total: int, parts: int):
    """Ordered tuples of positive integers with the given sum."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def brute_force_atlas(g: int, dimension_filter: bool = True) -> set:
    """Canonical keys (g_b, sorted top data) of every admissible graph."""
    found = set()
    for g_b in range(g + 1):
        for v in range(1, g + 1):
            for total_genus in range(v, g - g_b + 1):
                e = g - g_b - total_genus + v  # genus balance solved for E
                if e < v:
                    continue
                for genera in compositions(total_genus, v):
                    for degs in compositions(e, v):
                        prong_menus = [
                            list(compositions(2 * h - 2 + d, d))
                            for h, d in zip(genera, degs)
                        ]
                        if any(not menu for menu in prong_menus):
                            continue
                        for prongs in product(*prong_menus):
                            if g_b == 0 and 1 + e < 3:
                                continue  # bottom stability
                            n_bot = 2 * g_b + e - v
                            n_top = sum(2 * h - 1 + d
                                        for h, d in zip(genera, degs))
                            if dimension_filter and (n_bot < 1 or n_top < 1):
                                continue
                            key = (g_b, tuple(sorted(
                                (h, tuple(sorted(pr)))
                                for h, pr in zip(genera, prongs))))
                            found.add(key)
    return found


def brute_key_to_encoding(g: int, key) -> str:
    g_b, tops = key
    body = ",".join(f"({h},[{','.join(map(str, pr))}])" for h, pr in tops)
    return f"g={g};gb={g_b};legs={2 * g - 2};top=[{body}]"
