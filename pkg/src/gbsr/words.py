"""Words in the fundamental group of a GBS graph and their tree geometry.

The fundamental group is presented with one generator x_v per vertex and
one stable letter t_e per edge outside a deterministically chosen
spanning tree.  A tree edge e with side A at (v, p) and side B at (w, q)
contributes the relation x_v^p = x_w^q; a non-tree edge contributes
t_e x_v^p t_e^-1 = x_w^q.

Internally a group element is a based path word: an alternating sequence
of vertex powers and edge traversals tracing a closed path at the base
vertex.  Edge letters are ('e', eid, sign) with sign +1 meaning the
traversal from side A to side B; vertex powers are ('v', vertex, exp).
Reading words left to right as paths, the stable letter t_e is a single
backward traversal (side B to side A): with that convention the subword
t_e x_v^p t_e^-1 crosses to side A, winds p times, crosses back, and the
pinch rule below turns it into x_w^q exactly as the relation demands.

A pinch is a subword (traversal, vertex power, reverse traversal) whose
power is divisible by the edge label at the far end; it is replaced by
the transported power at the near end.  Translation length on the
Bass-Serre tree is the number of edge letters left after pinching and
cyclic reduction; an element is elliptic iff that count is zero.
"""

from fractions import Fraction
import re
from typing import NamedTuple

from .errors import MalformedWordError, UnknownGeneratorError
from .graph import GbsGraph


class PathWord(NamedTuple):
    """A based closed path word.  ``letters`` is a tuple of path letters."""

    base: str
    letters: tuple


class Presentation:
    """Generators, relators and tree paths derived from a graph.

    The spanning tree is grown breadth-first from the least vertex,
    scanning edges in id order, so everything here is deterministic.

    >>> from .graph import GbsGraph
    >>> p = Presentation(GbsGraph(["v"], [("e", "v", 1, "v", 2)]))
    >>> p.generators
    ('t_e', 'x_v')
    """

    __slots__ = ("graph", "base", "tree", "path_to", "generators", "_rel")

    def __init__(self, graph: GbsGraph):
        self.graph = graph
        self.base = graph.vertices[0]
        tree = set()
        path_to = {self.base: ()}
        frontier = [self.base]
        while frontier:
            nxt = []
            for v in frontier:
                for end in graph.ends_at(v):
                    e = graph.edge(end.edge)
                    if e.is_loop:
                        continue
                    # outgoing traversal: from this end's side to the other
                    if end.side == "A":
                        w, sign = e.vb, 1
                    else:
                        w, sign = e.va, -1
                    if w not in path_to:
                        tree.add(e.eid)
                        path_to[w] = path_to[v] + (("e", e.eid, sign),)
                        nxt.append(w)
            frontier = nxt
        self.tree = frozenset(tree)
        self.path_to = path_to
        gens = ["x_%s" % v for v in graph.vertices]
        gens += ["t_%s" % e.eid for e in graph.edges if e.eid not in tree]
        self.generators = tuple(sorted(gens))
        self._rel = None

    def relators(self):
        """One relator word per edge, as generator words freely equal to 1.

        Tree edge: x_v^p x_w^-q.  Non-tree edge: t_e x_v^p t_e^-1 x_w^-q.
        """
        if self._rel is None:
            rel = []
            for e in self.graph.edges:
                xv, xw = "x_" + e.va, "x_" + e.vb
                if e.eid in self.tree:
                    rel.append(((xv, e.la), (xw, -e.lb)))
                else:
                    t = "t_" + e.eid
                    rel.append(((t, 1), (xv, e.la), (t, -1), (xw, -e.lb)))
            self._rel = tuple(rel)
        return self._rel


# -- generator words --------------------------------------------------------

_TOKEN = re.compile(r"^([xt])_([A-Za-z0-9_]+)(?:\^(-?\d+))?$")


def parse_word(text: str):
    """Parse a whitespace-separated generator word.

    Tokens are ``x_<vertex>`` or ``t_<edge>`` with an optional integer
    exponent after ``^``:

    >>> parse_word("t_e x_v^-3")
    (('t_e', 1), ('x_v', -3))
    """
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise MalformedWordError("bad token %r" % tok)
        exp = int(m.group(3)) if m.group(3) is not None else 1
        if exp:
            out.append((m.group(1) + "_" + m.group(2), exp))
    return free_reduce(out)


def format_word(word) -> str:
    if not word:
        return "1"
    parts = []
    for sym, exp in word:
        parts.append(sym if exp == 1 else "%s^%d" % (sym, exp))
    return " ".join(parts)


def free_reduce(word):
    """Merge adjacent powers of one symbol and drop zero exponents."""
    out = []
    for sym, exp in word:
        if not exp:
            continue
        if out and out[-1][0] == sym:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((sym, merged))
        else:
            out.append((sym, exp))
    return tuple(out)


def invert_word(word):
    return tuple((sym, -exp) for sym, exp in reversed(word))


def substitute(word, table):
    """Replace each generator by its image word and freely reduce."""
    out = []
    for sym, exp in word:
        image = table[sym]
        if exp < 0:
            image = invert_word(image)
            exp = -exp
        for _ in range(exp):
            out.extend(image)
    return free_reduce(out)


# -- path words -------------------------------------------------------------

def reverse_path(letters):
    return tuple(("e", eid, -sign) for kind, eid, sign in reversed(letters))


def invert_path_letters(letters):
    """Inverse of a path letter sequence (works for mixed v/e letters)."""
    return tuple((kind, name, -val) for kind, name, val in reversed(letters))


def to_path_word(p: Presentation, word) -> PathWord:
    """Turn a generator word into a based closed path word.

    A vertex generator based elsewhere is conjugated along the tree:
    path to its vertex, the power there, path back.  A stable letter is
    its single traversal closed up the same way.
    """
    g = p.graph
    letters = []
    for sym, exp in word:
        if not exp:
            continue
        kind, _, name = sym.partition("_")
        if kind == "x" and name in p.path_to:
            out = p.path_to[name]
            letters.extend(out)
            letters.append(("v", name, exp))
            letters.extend(reverse_path(out))
        elif kind == "t" and g.has_edge(name) and name not in p.tree:
            e = g.edge(name)
            fwd = p.path_to[e.vb] + (("e", name, -1),) + reverse_path(p.path_to[e.va])
            piece = fwd if exp > 0 else reverse_path(fwd)
            for _ in range(abs(exp)):
                letters.extend(piece)
        else:
            raise UnknownGeneratorError("%r is not a generator here" % sym)
    return PathWord(p.base, reduce_letters(g, tuple(letters)))


def path_to_generators(p: Presentation, pw: PathWord):
    """Project a based path word back to a generator word.

    Tree-edge traversals vanish; a backward traversal of a non-tree edge
    is the stable letter itself.
    """
    out = []
    for letter in pw.letters:
        if letter[0] == "v":
            out.append(("x_" + letter[1], letter[2]))
        elif letter[1] not in p.tree:
            out.append(("t_" + letter[1], -letter[2]))
    return free_reduce(out)


def reduce_letters(g: GbsGraph, letters):
    """Pinch a letter sequence to Britton-reduced form (single stack pass).

    Divisibility by zero powers always holds, so backtracking traversals
    with nothing in between cancel freely as a special case.
    """
    stack = []
    for letter in letters:
        if letter[0] == "v":
            if letter[2] == 0:
                continue
            if stack and stack[-1][0] == "v" and stack[-1][1] == letter[1]:
                merged = stack[-1][2] + letter[2]
                stack.pop()
                if merged:
                    stack.append(("v", letter[1], merged))
            else:
                stack.append(letter)
            continue
        # edge letter: see whether it closes a pinch
        _, eid, sign = letter
        while True:
            power = 0
            depth = 0
            if stack and stack[-1][0] == "v":
                if len(stack) >= 2 and stack[-2][0] == "e":
                    power = stack[-1][2]
                    depth = 2
                else:
                    break
            elif stack and stack[-1][0] == "e":
                depth = 1
            else:
                break
            opener = stack[-depth]
            if opener[1] != eid or opener[2] != -sign:
                break
            e = g.edge(eid)
            if opener[2] == 1:
                far_label, near_v, near_l = e.lb, e.va, e.la
            else:
                far_label, near_v, near_l = e.la, e.vb, e.lb
            if power % far_label:
                break
            del stack[-depth:]
            carried = near_l * (power // far_label)
            if carried:
                if stack and stack[-1][0] == "v" and stack[-1][1] == near_v:
                    merged = stack[-1][2] + carried
                    stack.pop()
                    if merged:
                        stack.append(("v", near_v, merged))
                else:
                    stack.append(("v", near_v, carried))
            letter = None
            break
        if letter is not None:
            stack.append(letter)
    return tuple(stack)


def reduce(p: Presentation, pw: PathWord) -> PathWord:
    """Britton-reduce a based path word.  Idempotent."""
    return PathWord(pw.base, reduce_letters(p.graph, pw.letters))


def is_trivial(p: Presentation, pw: PathWord) -> bool:
    """True iff the based word represents the identity element."""
    return not reduce_letters(p.graph, pw.letters)


def cyclically_reduce_letters(g: GbsGraph, letters):
    """Reduce up to conjugation; the result may be based elsewhere."""
    w = list(reduce_letters(g, letters))
    while True:
        if w and w[0][0] == "v":
            head = w.pop(0)
            if w and w[-1][0] == "v" and w[-1][1] == head[1]:
                merged = w[-1][2] + head[2]
                w.pop()
                if merged:
                    w.append(("v", head[1], merged))
            elif w:
                w.append(head)
            else:
                return (head,) if head[2] else ()
        if not w:
            return ()
        first = w[0]
        opener = w[-1] if w[-1][0] == "e" else (w[-2] if len(w) >= 2 else None)
        power = w[-1][2] if w[-1][0] == "v" else 0
        if (
            opener is None
            or opener[0] != "e"
            or first[0] != "e"
            or opener[1] != first[1]
            or opener[2] != -first[2]
        ):
            return tuple(w)
        e = g.edge(first[1])
        far_label = e.lb if opener[2] == 1 else e.la
        if power % far_label:
            return tuple(w)
        # a seam pinch is available: rotate the first traversal to the end
        w = list(reduce_letters(g, tuple(w[1:]) + (first,)))


def translation_length(p: Presentation, pw: PathWord) -> int:
    """Translation length on the Bass-Serre tree (0 iff elliptic)."""
    cyc = cyclically_reduce_letters(p.graph, pw.letters)
    return sum(1 for letter in cyc if letter[0] == "e")


def is_elliptic(p: Presentation, pw: PathWord) -> bool:
    return translation_length(p, pw) == 0


def word_length(p: Presentation, word) -> int:
    return translation_length(p, to_path_word(p, word))


def normalize_word(p: Presentation, word):
    """Canonical-ish rewrite of a generator word through path reduction."""
    return path_to_generators(p, to_path_word(p, word))


def modulus(p: Presentation, pw: PathWord) -> Fraction:
    """Value of the modular homomorphism on a closed path word.

    Each traversal contributes (label at its source end) over (label at
    its target end); on the stable letter of a (1, n) loop this gives n.
    """
    q = Fraction(1)
    for letter in pw.letters:
        if letter[0] != "e":
            continue
        e = p.graph.edge(letter[1])
        if letter[2] == 1:
            q *= Fraction(e.la, e.lb)
        else:
            q *= Fraction(e.lb, e.la)
    return q


def word_modulus(p: Presentation, word) -> Fraction:
    return modulus(p, to_path_word(p, word))
