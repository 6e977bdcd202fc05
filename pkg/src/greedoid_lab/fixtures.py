"""Line-oriented text formats for greedoids, rank tables, rooted graphs, posets and weights.

Every format allows ``#`` comments and blank lines.  Greedoid::

    alphabet: a,b,c
    feasible: {}
    feasible: {a}
    feasible: {a,b}

Rank table (one line per subset, all ``2^n`` required)::

    alphabet: a,b
    rank: {} = 0
    rank: {a} = 1/2

Rooted graph::

    root: s
    vertices: s,u,v      # optional; endpoints are added automatically
    edge: a = s-u

Poset::

    alphabet: a,b,c
    rel: a < b
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .constructions import Poset, RootedGraph
from .core import Alphabet, Greedoid, SetSystem, subset_key, validate_greedoid
from .polymatroid import SetFunction


class FixtureError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


_SET = re.compile(r"^\{\s*([^{}]*)\s*\}$")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            key, sep, rest = line.partition(":")
            if not sep:
                raise FixtureError(f"expected 'key: value', got {line!r}", no)
            yield no, key.strip(), rest.strip()


def _names(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def parse_set(alphabet: Alphabet, text: str, line=None) -> int:
    m = _SET.match(text.strip())
    if not m:
        raise FixtureError(f"expected a set like {{a,b}}, got {text!r}", line)
    try:
        return alphabet.mask(_names(m.group(1)))
    except KeyError as exc:
        raise FixtureError(str(exc), line) from None


def _alphabet(value, no):
    try:
        return Alphabet(tuple(_names(value)))
    except ValueError as exc:
        raise FixtureError(str(exc), no) from None


def parse_system(text: str) -> SetSystem:
    alphabet = None
    sets = []
    seen = set()
    for no, key, value in _lines(text):
        if key == "alphabet":
            if alphabet is not None:
                raise FixtureError("duplicate alphabet line", no)
            alphabet = _alphabet(value, no)
        elif key == "feasible":
            if alphabet is None:
                raise FixtureError("feasible line before alphabet", no)
            m = parse_set(alphabet, value, no)
            if m in seen:
                raise FixtureError(f"duplicate feasible set {value}", no)
            seen.add(m)
            sets.append(m)
        else:
            raise FixtureError(f"unknown key {key!r}", no)
    if alphabet is None:
        raise FixtureError("missing alphabet line")
    return SetSystem(alphabet, frozenset(sets))


def parse_greedoid(text: str) -> Greedoid:
    """Parse and validate (raises the validation errors of :func:`validate_greedoid`)."""
    return validate_greedoid(parse_system(text))


def load_greedoid(path) -> Greedoid:
    return parse_greedoid(Path(path).read_text())


def format_greedoid(g, comments=()) -> str:
    system = g.system if isinstance(g, Greedoid) else g
    alpha = system.alphabet
    out = [f"# {c}" for c in comments]
    out.append("alphabet: " + ",".join(alpha.letters))
    out += [f"feasible: {alpha.format_set(m)}" for m in system.sorted_sets()]
    return "\n".join(out) + "\n"


def parse_rank(text: str, alphabet: Alphabet = None) -> SetFunction:
    values = {}
    for no, key, value in _lines(text):
        if key == "alphabet":
            if alphabet is not None and values:
                raise FixtureError("alphabet line after rank entries", no)
            new = _alphabet(value, no)
            if alphabet is not None and new != alphabet:
                raise FixtureError("alphabet does not match", no)
            alphabet = new
        elif key == "rank":
            if alphabet is None:
                raise FixtureError("rank line before alphabet", no)
            lhs, sep, rhs = value.partition("=")
            if not sep:
                raise FixtureError("expected '{...} = value'", no)
            m = parse_set(alphabet, lhs, no)
            if m in values:
                raise FixtureError(f"duplicate rank entry for {lhs.strip()}", no)
            try:
                values[m] = Fraction(rhs.strip())
            except (ValueError, ZeroDivisionError):
                raise FixtureError(f"bad rational {rhs.strip()!r}", no) from None
        else:
            raise FixtureError(f"unknown key {key!r}", no)
    if alphabet is None:
        raise FixtureError("missing alphabet line")
    missing = [m for m in range(1 << alphabet.n) if m not in values]
    if missing:
        raise FixtureError(f"missing rank entry for {alphabet.format_set(min(missing, key=subset_key))}")
    return SetFunction(alphabet, tuple(values[m] for m in range(1 << alphabet.n)))


def load_rank(path, alphabet=None) -> SetFunction:
    return parse_rank(Path(path).read_text(), alphabet)


def format_rank(rho: SetFunction, comments=()) -> str:
    alpha = rho.alphabet
    out = [f"# {c}" for c in comments]
    out.append("alphabet: " + ",".join(alpha.letters))
    for m in sorted(range(1 << alpha.n), key=subset_key):
        out.append(f"rank: {alpha.format_set(m)} = {rho(m)}")
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> RootedGraph:
    root = None
    vertices = []
    edges = []
    for no, key, value in _lines(text):
        if key == "root":
            if root is not None:
                raise FixtureError("duplicate root line", no)
            root = value
            if root not in vertices:
                vertices.append(root)
        elif key == "vertices":
            for v in _names(value):
                if v not in vertices:
                    vertices.append(v)
        elif key == "edge":
            name, sep, ends = value.partition("=")
            parts = [p.strip() for p in ends.split("-")]
            if not sep or len(parts) != 2 or not all(parts):
                raise FixtureError("expected 'edge: a = u-v'", no)
            edges.append((name.strip(), parts[0], parts[1]))
            for v in parts:
                if v not in vertices:
                    vertices.append(v)
        else:
            raise FixtureError(f"unknown key {key!r}", no)
    if root is None:
        raise FixtureError("missing root line")
    return RootedGraph(tuple(vertices), tuple(edges), root)


def format_graph(graph: RootedGraph) -> str:
    out = [f"root: {graph.root}", "vertices: " + ",".join(graph.vertices)]
    out += [f"edge: {name} = {u}-{v}" for name, u, v in graph.edges]
    return "\n".join(out) + "\n"


def parse_poset(text: str) -> Poset:
    alphabet = None
    pairs = []
    for no, key, value in _lines(text):
        if key == "alphabet":
            if alphabet is not None:
                raise FixtureError("duplicate alphabet line", no)
            alphabet = _alphabet(value, no)
        elif key == "rel":
            if alphabet is None:
                raise FixtureError("rel line before alphabet", no)
            x, sep, y = value.partition("<")
            if not sep:
                raise FixtureError("expected 'rel: a < b'", no)
            try:
                pairs.append((alphabet.index(x.strip()), alphabet.index(y.strip())))
            except KeyError as exc:
                raise FixtureError(str(exc), no) from None
        else:
            raise FixtureError(f"unknown key {key!r}", no)
    if alphabet is None:
        raise FixtureError("missing alphabet line")
    try:
        return Poset(alphabet, frozenset(pairs))
    except ValueError as exc:
        raise FixtureError(str(exc)) from None


def format_poset(p: Poset) -> str:
    names = p.alphabet.letters
    out = ["alphabet: " + ",".join(names)]
    # only the covering pairs, enough to regenerate the closure
    for x, y in sorted(p.relations):
        if not any((x, z) in p.relations and (z, y) in p.relations for z in range(p.n)):
            out.append(f"rel: {names[x]} < {names[y]}")
    return "\n".join(out) + "\n"


def parse_weights(alphabet: Alphabet, text: str) -> tuple:
    """``"a=3,b=2,c=1/2"`` to a tuple of weights indexed by letter id; must be total."""
    weights = {}
    for part in _names(text):
        name, sep, val = part.partition("=")
        if not sep:
            raise FixtureError(f"expected letter=value, got {part!r}")
        try:
            idx = alphabet.index(name.strip())
            w = Fraction(val.strip())
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise FixtureError(str(exc)) from None
        if idx in weights:
            raise FixtureError(f"duplicate weight for {name.strip()}")
        weights[idx] = w
    missing = [alphabet.letters[i] for i in range(alphabet.n) if i not in weights]
    if missing:
        raise FixtureError(f"no weight for {missing[0]}")
    return tuple(weights[i] for i in range(alphabet.n))
