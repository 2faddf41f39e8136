"""Independent cross-check implementations used only by the tests.

Everything here recomputes package results by a different route: the
reducer is a global fixpoint scanner (the package does one stack pass),
cyclic reduction tries every rotation (the package rotates only at the
seam), primality comes from a sieve (the package trial-divides), and
random inputs are generated here so property tests do not depend on the
package's own enumeration order.
"""

import random

from gbsr.graph import GbsGraph


def merge_powers(letters):
    """Merge adjacent powers of one vertex, drop zero powers."""
    out = []
    for letter in letters:
        if letter[0] == "v" and letter[2] == 0:
            continue
        if out and letter[0] == "v" and out[-1][0] == "v" and out[-1][1] == letter[1]:
            merged = out[-1][2] + letter[2]
            out.pop()
            if merged:
                out.append(("v", letter[1], merged))
        else:
            out.append(letter)
    return out


def _pinch_at(g, w, i):
    """Replacement letters and consumed count for a pinch at w[i], or None."""
    if w[i][0] != "e":
        return None
    opener = w[i]
    if i + 1 < len(w) and w[i + 1][0] == "v":
        mid, close_at = w[i + 1][2], i + 2
    else:
        mid, close_at = 0, i + 1
    if close_at >= len(w):
        return None
    closer = w[close_at]
    if closer[0] != "e" or closer[1] != opener[1] or closer[2] != -opener[2]:
        return None
    e = g.edge(opener[1])
    if opener[2] == 1:
        far, near_v, near_l = e.lb, e.va, e.la
    else:
        far, near_v, near_l = e.la, e.vb, e.lb
    if mid % far:
        return None
    carried = near_l * (mid // far)
    repl = [("v", near_v, carried)] if carried else []
    return repl, close_at + 1 - i


def oracle_reduce(g: GbsGraph, letters):
    """Britton-reduce by scanning for any pinch until none applies."""
    w = list(letters)
    changed = True
    while changed:
        w = merge_powers(w)
        changed = False
        for i in range(len(w)):
            hit = _pinch_at(g, w, i)
            if hit is not None:
                repl, k = hit
                w[i : i + k] = repl
                changed = True
                break
    return tuple(merge_powers(w))


def edge_count(letters):
    return sum(1 for letter in letters if letter[0] == "e")


def oracle_translation_length(g: GbsGraph, letters):
    """Cyclic reduction by trying every rotation; each pinch removes two
    traversals, so any strict improvement is kept and the loop ends."""
    best = list(oracle_reduce(g, letters))
    improved = True
    while improved and best:
        improved = False
        for r in range(len(best)):
            rot = best[r:] + best[:r]
            red = list(oracle_reduce(g, rot))
            if edge_count(red) < edge_count(best):
                best = red
                improved = True
                break
    return edge_count(best)


def oracle_primes(limit):
    """Sieve of Eratosthenes; returns the set of primes <= limit."""
    flags = [True] * (limit + 1)
    flags[0:2] = [False, False]
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = [False] * len(flags[p * p :: p])
    return {n for n in range(limit + 1) if flags[n]}


def oracle_ascending_equivalent(n, d, bound=8):
    """Brute scan of n^i = n^j * d over exact integers."""
    powers = [n**i for i in range(bound + 1)]
    return any(a == b * d for a in powers for b in powers)


# -- random inputs -----------------------------------------------------------

def random_graph(rng: random.Random, max_vertices=3, max_edges=3, max_label=6):
    """A random connected labelled graph: spanning tree plus extras."""
    nv = rng.randint(1, max_vertices)
    vertices = ["v%d" % i for i in range(nv)]
    edges = []

    def lab():
        return rng.randint(1, max_label)

    for i in range(1, nv):
        j = rng.randrange(i)
        edges.append(("e%d" % len(edges), vertices[j], lab(), vertices[i], lab()))
    extra = rng.randint(0, max(0, max_edges - len(edges)))
    for _ in range(extra):
        a, b = rng.choice(vertices), rng.choice(vertices)
        edges.append(("e%d" % len(edges), a, lab(), b, lab()))
    return GbsGraph(vertices, edges)


def random_word(rng: random.Random, symbols, max_syllables=4, max_exp=3):
    word = []
    for _ in range(rng.randint(1, max_syllables)):
        sym = rng.choice(symbols)
        exp = rng.choice([e for e in range(-max_exp, max_exp + 1) if e])
        word.append((sym, exp))
    return tuple(word)
