"""Deformation moves on marked GBS states.

A marked state is a graph together with a marking: a word in the
current presentation for every generator of the seed presentation, so
that the group never changes while the graph does.  Each move supplies
a substitution expressing the old presentation's generators inside the
new one; the marking is the running composition of those substitutions,
kept short by Britton-reducing every word after each step.

Moves and their exact label arithmetic:

* collapse of a non-loop edge whose far end is labelled 1 merges that
  endpoint into the near vertex; every other label at the merged vertex
  is multiplied by the near label p (the merged generator equals x_v^p);
* expansion is the inverse: a fresh edge v(p)-(1)u is added and chosen
  ends at v whose labels p divides move to u with labels divided by p;
* a slide moves an end of one edge across a coincident end of another
  edge whose label divides it; the moved end reattaches at the far
  endpoint with label (moving/across) times the far label;
* induction rewrites a one-loop (1, n) state through a divisor d of n,
  leaving the graph alone but composing the marking with
  x -> t^-1 x^(n/d) t (the new vertex generator is the old x^d).

The marking's own consistency checks (seed relators die, seed vertex
generators stay elliptic, the modular homomorphism keeps its values on
the seed's cycle basis) are re-run after every verified move, so a
wrong substitution cannot slip through silently.
"""

from dataclasses import dataclass

from .errors import (
    BrokenMarkingError,
    DifferentOriginError,
    NotAscendingError,
    NotCollapsibleError,
    NotDivisibleError,
    NotDivisorError,
    SameEdgeError,
    UnknownVertexError,
    WrongOriginError,
)
from .graph import Edge, EdgeEnd, GbsGraph
from .words import (
    PathWord,
    Presentation,
    cyclically_reduce_letters,
    free_reduce,
    invert_path_letters,
    is_trivial,
    normalize_word,
    path_to_generators,
    reduce_letters,
    reverse_path,
    substitute,
    to_path_word,
    word_length,
    word_modulus,
)


@dataclass(frozen=True)
class Collapse:
    edge: str

    def __str__(self):
        return "collapse %s" % self.edge


@dataclass(frozen=True)
class Expansion:
    vertex: str
    p: int
    moved: tuple  # of EdgeEnd

    def __str__(self):
        return " ".join(["expand", self.vertex, str(self.p)] + [str(e) for e in self.moved])


@dataclass(frozen=True)
class Slide:
    moving: EdgeEnd
    across: EdgeEnd

    def __str__(self):
        return "slide %s across %s" % (self.moving, self.across)


@dataclass(frozen=True)
class Induction:
    d: int

    def __str__(self):
        return "induct %d" % self.d


class MarkedState:
    """A graph plus a marking of the seed group in its fundamental group."""

    __slots__ = (
        "graph",
        "presentation",
        "history",
        "seed",
        "_marking",
        "_parent",
        "_move",
        "_fp",
        "_img",
    )

    def __init__(self, graph, presentation, history, seed, marking=None, parent=None, move=None):
        self.graph = graph
        self.presentation = presentation
        self.history = history
        self.seed = seed
        self._marking = marking
        self._parent = parent
        self._move = move
        self._fp = None
        self._img = None

    @property
    def marking(self):
        """Seed generator -> word in the current presentation (lazy)."""
        if self._marking is None:
            parent = self._parent
            table = _substitution(parent, self._move, self.graph, self.presentation)
            self._marking = {
                sym: normalize_word(self.presentation, substitute(word, table))
                for sym, word in parent.marking.items()
            }
        return self._marking

    @property
    def depth(self):
        return len(self.history)

    def seed_word(self, word):
        """Transport a word over seed generators into the current presentation."""
        return substitute(word, self.marking)

    def _letter_images(self):
        """Path letters of each marked seed generator and its inverse (memoized).

        Cuts the cost of bulk translation-length queries: the marking and
        its tree paths are expanded once, not per query word.
        """
        if self._img is None:
            p = self.presentation
            img = {}
            for sym, word in self.marking.items():
                letters = to_path_word(p, word).letters
                img[(sym, 1)] = letters
                img[(sym, -1)] = invert_path_letters(letters)
            self._img = img
        return self._img

    def seed_length(self, word):
        """Translation length of a seed-generator word in the current tree."""
        img = self._letter_images()
        letters = []
        for sym, exp in word:
            piece = img[(sym, 1 if exp > 0 else -1)]
            for _ in range(abs(exp)):
                letters.extend(piece)
        cyc = cyclically_reduce_letters(self.graph, tuple(letters))
        return sum(1 for letter in cyc if letter[0] == "e")

    def verify(self):
        """Re-check the marking invariants; raises BrokenMarkingError."""
        p = self.presentation
        for rel in self.seed.relators:
            if not is_trivial(p, to_path_word(p, self.seed_word(rel))):
                raise BrokenMarkingError(
                    "seed relator %r no longer dies after %s"
                    % (rel, [str(m) for m in self.history])
                )
        for sym in self.seed.vertex_symbols:
            if word_length(p, self.marking[sym]) != 0:
                raise BrokenMarkingError("seed generator %s became hyperbolic" % sym)
        for sym, value in self.seed.modulus:
            if word_modulus(p, self.marking[sym]) != value:
                raise BrokenMarkingError("modular homomorphism drifted on %s" % sym)
        return self


@dataclass(frozen=True)
class _Seed:
    presentation: Presentation
    relators: tuple
    vertex_symbols: tuple
    modulus: tuple  # ((symbol, Fraction), ...) over the seed's stable letters


def initial_state(graph: GbsGraph) -> MarkedState:
    p = Presentation(graph)
    seed = _Seed(
        presentation=p,
        relators=p.relators(),
        vertex_symbols=tuple(s for s in p.generators if s.startswith("x_")),
        modulus=tuple(
            (s, word_modulus(p, ((s, 1),)))
            for s in p.generators
            if s.startswith("t_")
        ),
    )
    marking = {sym: ((sym, 1),) for sym in p.generators}
    return MarkedState(graph, p, (), seed, marking=marking)


def modulus_fingerprint(state: MarkedState):
    """Sorted modular-homomorphism values over the seed's cycle basis."""
    p = state.presentation
    return tuple(sorted(word_modulus(p, state.marking[sym]) for sym, _ in state.seed.modulus))


# -- graph surgery per move --------------------------------------------------

def _collapse_target(g: GbsGraph, eid: str):
    e = g.edge(eid)
    if e.is_loop:
        raise NotCollapsibleError("cannot collapse the loop %s" % eid)
    if e.lb == 1:
        return e.va, e.vb, e.la
    if e.la == 1:
        return e.vb, e.va, e.lb
    raise NotCollapsibleError("edge %s has no end labelled 1" % eid)


def _collapsed_graph(g: GbsGraph, eid: str):
    keep, drop, p = _collapse_target(g, eid)
    edges = []
    for f in g.edges:
        if f.eid == eid:
            continue
        va, la = (keep, f.la * p) if f.va == drop else (f.va, f.la)
        vb, lb = (keep, f.lb * p) if f.vb == drop else (f.vb, f.lb)
        edges.append(Edge(f.eid, va, la, vb, lb))
    vertices = [v for v in g.vertices if v != drop]
    return GbsGraph(vertices, edges), keep, drop, p


def _fresh(prefix, taken):
    i = 0
    while "%s%d" % (prefix, i) in taken:
        i += 1
    return "%s%d" % (prefix, i)


def _expanded_graph(g: GbsGraph, vertex: str, p: int, moved):
    if vertex not in g.vertices:
        raise UnknownVertexError("no vertex named %r" % vertex)
    if p < 1:
        raise NotDivisibleError("expansion index must be >= 1")
    moved = tuple(sorted(set(moved)))
    for end in moved:
        if g.end_vertex(end) != vertex:
            raise WrongOriginError("end %s is not at %s" % (end, vertex))
        if g.end_label(end) % p:
            raise NotDivisibleError("label %d at %s not divisible by %d" % (g.end_label(end), end, p))
    u = _fresh("u", set(g.vertices))
    d = _fresh("d", {e.eid for e in g.edges})
    moved_set = set(moved)
    edges = []
    for f in g.edges:
        va, la, vb, lb = f.va, f.la, f.vb, f.lb
        if EdgeEnd(f.eid, "A") in moved_set:
            va, la = u, la // p
        if EdgeEnd(f.eid, "B") in moved_set:
            vb, lb = u, lb // p
        edges.append(Edge(f.eid, va, la, vb, lb))
    edges.append(Edge(d, vertex, p, u, 1))
    return GbsGraph(list(g.vertices) + [u], edges), u, d, moved


def _slid_graph(g: GbsGraph, moving: EdgeEnd, across: EdgeEnd):
    if moving.edge == across.edge:
        raise SameEdgeError("cannot slide %s across its own edge" % (moving,))
    v = g.end_vertex(moving)
    if g.end_vertex(across) != v:
        raise DifferentOriginError("%s and %s do not share a vertex" % (moving, across))
    le, lf = g.end_label(moving), g.end_label(across)
    if le % lf:
        raise NotDivisibleError("label %d does not divide %d" % (lf, le))
    far = across.other
    w, lfar = g.end_vertex(far), g.end_label(far)
    new_label = (le // lf) * lfar
    edges = []
    for f in g.edges:
        if f.eid == moving.edge:
            if moving.side == "A":
                f = Edge(f.eid, w, new_label, f.vb, f.lb)
            else:
                f = Edge(f.eid, f.va, f.la, w, new_label)
        edges.append(f)
    return GbsGraph(g.vertices, edges), w


def _ascending_shape(g: GbsGraph):
    """(loop edge, n, unit side) for a one-vertex one-loop (1, n) graph."""
    if len(g.vertices) != 1 or len(g.edges) != 1:
        return None
    e = g.edges[0]
    if not e.is_loop:
        return None
    if e.la == 1:
        return e, e.lb, "A"
    if e.lb == 1:
        return e, e.la, "B"
    return None


# -- substitutions -----------------------------------------------------------

def _transport(old_p, new_p, new_g, letter_map, vmap):
    """Express every old generator as a word in the new presentation.

    Each old generator's defining path is mapped letter by letter into
    the new graph, conjugated to the new base point along the tree, and
    projected back to generators.
    """
    pre = new_p.path_to[vmap.get(old_p.base, old_p.base)]
    post = reverse_path(pre)
    table = {}
    for sym in old_p.generators:
        pw = to_path_word(old_p, ((sym, 1),))
        mapped = []
        for letter in pw.letters:
            mapped.extend(letter_map(letter))
        letters = reduce_letters(new_g, pre + tuple(mapped) + post)
        table[sym] = path_to_generators(new_p, PathWord(new_p.base, letters))
    return table


def _substitution(state, move, new_graph, new_p):
    g = state.graph
    old_p = state.presentation
    if isinstance(move, Collapse):
        keep, drop, p = _collapse_target(g, move.edge)
        eid = move.edge

        def letter_map(letter):
            if letter[0] == "v":
                if letter[1] == drop:
                    return (("v", keep, p * letter[2]),)
                return (letter,)
            if letter[1] == eid:
                return ()
            return (letter,)

        return _transport(old_p, new_p, new_graph, letter_map, {drop: keep})

    if isinstance(move, Expansion):
        _, u, d, moved = _expanded_graph(g, move.vertex, move.p, move.moved)
        moved_set = set(moved)
        into_u = ("e", d, 1)   # v -> u across the new edge
        outof_u = ("e", d, -1)

        def letter_map(letter):
            if letter[0] == "v":
                return (letter,)
            _, eid, sign = letter
            src = EdgeEnd(eid, "A" if sign == 1 else "B")
            tgt = EdgeEnd(eid, "B" if sign == 1 else "A")
            out = []
            if src in moved_set:
                out.append(into_u)
            out.append(letter)
            if tgt in moved_set:
                out.append(outof_u)
            return tuple(out)

        return _transport(old_p, new_p, new_graph, letter_map, {})

    if isinstance(move, Slide):
        moving, across = move.moving, move.across
        f = across.edge
        sign_vw = 1 if across.side == "A" else -1  # f traversed origin -> far
        step_in = ("e", f, sign_vw)
        step_out = ("e", f, -sign_vw)

        def letter_map(letter):
            if letter[0] == "v":
                return (letter,)
            _, eid, sign = letter
            if eid != moving.edge:
                return (letter,)
            src = EdgeEnd(eid, "A" if sign == 1 else "B")
            out = []
            if src == moving:
                out.append(step_in)
            out.append(letter)
            if src != moving:  # then the target end is the moving one
                out.append(step_out)
            return tuple(out)

        return _transport(old_p, new_p, new_graph, letter_map, {})

    if isinstance(move, Induction):
        shape = _ascending_shape(g)
        e, n, unit_side = shape
        t = "t_" + e.eid
        x = "x_" + e.va
        k = n // move.d
        sign = 1 if unit_side == "A" else -1
        table = {sym: ((sym, 1),) for sym in old_p.generators}
        table[x] = free_reduce(((t, -sign), (x, k), (t, sign)))
        return table

    raise TypeError("unknown move %r" % (move,))


def apply_move(state: MarkedState, move, verify: bool = True) -> MarkedState:
    """Apply one deformation move, returning the new marked state."""
    g = state.graph
    if isinstance(move, Collapse):
        new_graph = _collapsed_graph(g, move.edge)[0]
    elif isinstance(move, Expansion):
        new_graph = _expanded_graph(g, move.vertex, move.p, move.moved)[0]
    elif isinstance(move, Slide):
        new_graph = _slid_graph(g, move.moving, move.across)[0]
    elif isinstance(move, Induction):
        if _ascending_shape(g) is None:
            raise NotAscendingError("induction needs a one-vertex (1, n) loop")
        n = _ascending_shape(g)[1]
        if move.d < 1 or n % move.d:
            raise NotDivisorError("%d does not divide %d" % (move.d, n))
        new_graph = g
    else:
        raise TypeError("unknown move %r" % (move,))
    new_p = Presentation(new_graph)
    out = MarkedState(
        new_graph,
        new_p,
        state.history + (move,),
        state.seed,
        parent=state,
        move=move,
    )
    if verify:
        out.verify()
    return out


def collapse(state: MarkedState, edge: str) -> MarkedState:
    return apply_move(state, Collapse(edge))


def expand(state: MarkedState, vertex: str, p: int, moved=()) -> MarkedState:
    return apply_move(state, Expansion(vertex, p, tuple(sorted(set(moved)))))


def slide(state: MarkedState, moving: EdgeEnd, across: EdgeEnd) -> MarkedState:
    return apply_move(state, Slide(moving, across))


def induct(state: MarkedState, d: int) -> MarkedState:
    return apply_move(state, Induction(d))


# -- move enumeration --------------------------------------------------------

@dataclass(frozen=True)
class MoveBounds:
    """Caps for enumerate_moves: edge count, labels, expansion index."""

    max_edges: int | None = None
    max_label: int | None = None
    max_expansion: int | None = None


def _divisors(n: int):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def enumerate_moves(state: MarkedState, bounds: MoveBounds = MoveBounds()):
    """All legal moves within bounds, in a fixed deterministic order:
    collapses, slides, expansions (by vertex, index, moved subset), then
    inductions.  Expansions are only enumerated with index >= 2.
    """
    g = state.graph
    max_label = bounds.max_label
    out = []
    for e in g.edges:
        if e.is_loop or (e.la != 1 and e.lb != 1):
            continue
        keep, drop, p = _collapse_target(g, e.eid)
        if max_label is not None and p > 1:
            worst = max(
                (g.end_label(end) for end in g.ends_at(drop) if end.edge != e.eid),
                default=1,
            )
            if worst * p > max_label:
                continue
        out.append(Collapse(e.eid))
    for v in g.vertices:
        ends = g.ends_at(v)
        for moving in ends:
            le = g.end_label(moving)
            for across in ends:
                if across.edge == moving.edge:
                    continue
                lf = g.end_label(across)
                if le % lf:
                    continue
                new_label = (le // lf) * g.end_label(across.other)
                if max_label is not None and new_label > max_label:
                    continue
                out.append(Slide(moving, across))
    if bounds.max_edges is None or len(g.edges) < bounds.max_edges:
        for v in g.vertices:
            ends = g.ends_at(v)
            ps = set()
            for end in ends:
                for d in _divisors(g.end_label(end)):
                    if d >= 2:
                        ps.add(d)
            for p in sorted(ps):
                if bounds.max_expansion is not None and p > bounds.max_expansion:
                    continue
                divisible = [end for end in ends if g.end_label(end) % p == 0]
                for mask in range(1 << len(divisible)):
                    moved = tuple(divisible[i] for i in range(len(divisible)) if mask >> i & 1)
                    out.append(Expansion(v, p, moved))
    shape = _ascending_shape(g)
    if shape is not None:
        for d in _divisors(shape[1]):
            out.append(Induction(d))
    return out
