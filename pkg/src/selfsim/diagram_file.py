"""Line-oriented diagram files.

::

    # comment (whole lines only: '#' is also the tensor)
    object a = (x*(x*x))              typed node
    node p                            untyped node
    atom f : x -> (x*x) noninvertible typed atom (untyped: atom f [noninvertible])
    arrow t : a -> b = tau(x,x,x)     edge; term in the surface syntax
    check t = c;d                     compare two ;-separated edge paths, () is empty
    check all                         compare every pair of parallel simple paths

Objects, nodes and atoms must be declared before use.  An arrow whose term is
a single undeclared identifier declares that atom with the arrow's type.
A file is typed if it declares objects and untyped if it declares nodes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from selfsim.coherence import Diagram, DiagramError, check_path
from selfsim.terms import TermSyntaxError, parse_arrow_term, parse_monoid_term, print_term
from selfsim.trees import TreeSyntaxError, parse_tree

_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_OBJECT = re.compile(rf"^object\s+({_IDENT})\s*=\s*(.+)$")
_NODE = re.compile(rf"^node\s+({_IDENT})$")
_ATOM_TYPED = re.compile(rf"^atom\s+({_IDENT})\s*:\s*(.+?)\s*->\s*(.+?)(\s+noninvertible)?$")
_ATOM_UNTYPED = re.compile(rf"^atom\s+({_IDENT})(\s+noninvertible)?$")
_ARROW = re.compile(rf"^arrow\s+({_IDENT})\s*:\s*({_IDENT})\s*->\s*({_IDENT})\s*=\s*(.+)$")
_CHECK = re.compile(r"^check\s+(.+?)\s*=\s*(.+)$")
_PATH_ITEM = re.compile(rf"^{_IDENT}$")


class DiagramFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class DiagramFile:
    diagram: Diagram
    atoms: dict = field(default_factory=dict)
    # each check is ("all", None, line) or (lhs_path, rhs_path, line)
    checks: list = field(default_factory=list)

    def check_pairs(self):
        for lhs, rhs, _ in self.checks:
            yield (None if lhs == "all" else (lhs, rhs))

    def __eq__(self, other):
        return (
            isinstance(other, DiagramFile)
            and self.diagram == other.diagram
            and self.atoms == other.atoms
            and [c[:2] for c in self.checks] == [c[:2] for c in other.checks]
        )


def _path(text: str, lineno: int) -> tuple:
    text = text.strip()
    if text == "()":
        return ()
    items = tuple(s.strip() for s in text.split(";"))
    for it in items:
        if not _PATH_ITEM.match(it):
            raise DiagramFileError(lineno, f"bad edge id {it!r} in path {text!r}")
    return items


def parse_diagram_file(text: str) -> DiagramFile:
    typed = None
    d = Diagram(typed=True)
    atoms: dict = {}
    checks = []

    def set_mode(mode: bool, lineno: int):
        nonlocal typed
        if typed is None:
            typed = mode
            d.typed = mode
        elif typed != mode:
            raise DiagramFileError(lineno, "cannot mix typed objects and untyped nodes")

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if m := _OBJECT.match(line):
                set_mode(True, lineno)
                d.add_node(m[1], parse_tree(m[2].strip()))
            elif m := _NODE.match(line):
                set_mode(False, lineno)
                d.add_node(m[1])
            elif m := _ATOM_UNTYPED.match(line):
                if typed:
                    raise DiagramFileError(lineno, f"typed atom {m[1]!r} needs a type")
                _declare(atoms, m[1], (not m[2],), lineno)
            elif m := _ATOM_TYPED.match(line):
                if typed is False:
                    raise DiagramFileError(lineno, "untyped atoms take no type")
                _declare(atoms, m[1], (parse_tree(m[2]), parse_tree(m[3]), not m[4]), lineno)
            elif m := _ARROW.match(line):
                if typed is None:
                    raise DiagramFileError(lineno, "arrow before any object or node")
                eid, a, b, term_text = m[1], m[2], m[3], m[4].strip()
                for n in (a, b):
                    if n not in d.nodes:
                        raise DiagramFileError(lineno, f"undeclared node {n!r}")
                if typed:
                    if re.fullmatch(_IDENT, term_text) and term_text not in atoms and term_text not in (
                        "id", "tau", "code", "decode", "inv"
                    ):
                        atoms[term_text] = (d.nodes[a], d.nodes[b], True)
                    term = parse_arrow_term(term_text, atoms)
                else:
                    term = parse_monoid_term(term_text, atoms)
                d.add_edge(eid, a, b, term)
            elif line == "check all":
                checks.append(("all", None, lineno))
            elif m := _CHECK.match(line):
                lhs, rhs = _path(m[1], lineno), _path(m[2], lineno)
                for p in (lhs, rhs):
                    check_path(d, p)
                checks.append((lhs, rhs, lineno))
            else:
                raise DiagramFileError(lineno, f"unrecognised line {line!r}")
        except DiagramFileError:
            raise
        except (TreeSyntaxError, TermSyntaxError, DiagramError) as e:
            raise DiagramFileError(lineno, str(e)) from None
    if typed is None:
        d.typed = True
    return DiagramFile(d, atoms, checks)


def _declare(atoms: dict, name: str, entry: tuple, lineno: int):
    if name in atoms:
        raise DiagramFileError(lineno, f"duplicate atom {name!r}")
    atoms[name] = entry


def print_diagram_file(df: DiagramFile) -> str:
    d = df.diagram
    lines = []
    for n, obj in d.nodes.items():
        lines.append(f"object {n} = {obj}" if d.typed else f"node {n}")
    for name, entry in df.atoms.items():
        flag = "" if entry[-1] else " noninvertible"
        lines.append(f"atom {name} : {entry[0]} -> {entry[1]}{flag}" if d.typed else f"atom {name}{flag}")
    for e in d.edges:
        lines.append(f"arrow {e.id} : {e.src} -> {e.tgt} = {print_term(e.term)}")
    for lhs, rhs, _ in df.checks:
        if lhs == "all":
            lines.append("check all")
        else:
            lines.append(f"check {';'.join(lhs) or '()'} = {';'.join(rhs) or '()'}")
    return "\n".join(lines) + "\n"
