"""Newick reading and canonical writing."""

import logging
import re
from pathlib import Path
from typing import List, Optional, Union

from hyptree.exceptions import ParseError
from hyptree.treekit.tree import Tree

logger = logging.getLogger(__name__)

_UNQUOTED = re.compile(r"[^\s(),:;\[\]']+")
_NUMBER = re.compile(r"[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?")
_NEEDS_QUOTES = re.compile(r"[\s(),:;\[\]']")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Scanner:
    """Character cursor that skips whitespace and bracketed comments."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str, details: Optional[str] = None) -> ParseError:
        return ParseError(message, details, offset=_byte_offset(self.text, self.pos))

    def skip(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "[":
                end = self.text.find("]", self.pos)
                if end < 0:
                    raise self.error("Unterminated comment")
                self.pos = end + 1
            else:
                break

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def label(self) -> Optional[str]:
        if self.peek() == "'":
            out = []
            self.pos += 1
            while True:
                end = self.text.find("'", self.pos)
                if end < 0:
                    raise self.error("Unterminated quoted label")
                out.append(self.text[self.pos : end])
                self.pos = end + 1
                if self.text.startswith("'", self.pos):
                    out.append("'")
                    self.pos += 1
                else:
                    return "".join(out)
        match = _UNQUOTED.match(self.text, self.pos)
        if not match:
            return None
        self.pos = match.end()
        return match.group(0)

    def length(self) -> float:
        self.skip()
        match = _NUMBER.match(self.text, self.pos)
        if not match:
            raise self.error("Expected a branch length")
        self.pos = match.end()
        return float(match.group(0))


def parse_newick(text: str, rooted: Optional[bool] = None) -> Tree:
    """Parse one Newick tree.

    Missing branch lengths default to 0 and internal node labels are dropped.
    Unless ``rooted`` is given, a tree whose outermost node has exactly two
    children is read as rooted.

    Raises:
        ParseError: On malformed input, with the byte offset of the problem
        DataValidationError: On duplicate or missing leaf labels
    """
    scan = _Scanner(text)
    parents: List[int] = []
    lengths: List[float] = []
    names: List[Optional[str]] = []
    open_nodes: List[int] = []

    def new_node(name: Optional[str]) -> int:
        parents.append(open_nodes[-1] if open_nodes else -1)
        lengths.append(0.0)
        names.append(name)
        return len(parents) - 1

    if scan.peek() != "(":
        raise scan.error("Expected '('")

    last: Optional[int] = None
    while True:
        ch = scan.peek()
        if ch == "(":
            if last is not None:
                raise scan.error("Unexpected '('")
            open_nodes.append(new_node(None))
            scan.pos += 1
        elif ch == ",":
            if last is None or not open_nodes:
                raise scan.error("Empty leaf")
            last = None
            scan.pos += 1
        elif ch == ")":
            if last is None or not open_nodes:
                raise scan.error("Empty leaf" if open_nodes else "Unbalanced ')'")
            last = open_nodes.pop()
            scan.pos += 1
            scan.label()
        elif ch == ":":
            if last is None:
                raise scan.error("Branch length without a node")
            scan.pos += 1
            lengths[last] = scan.length()
        elif ch == ";":
            if open_nodes:
                raise scan.error("Unbalanced '('")
            scan.pos += 1
            break
        elif ch == "":
            raise scan.error("Missing ';'")
        else:
            if last is not None:
                raise scan.error("Unexpected label")
            if not open_nodes:
                raise scan.error("Label outside the tree")
            name = scan.label()
            if name is None:
                raise scan.error("Unexpected character", repr(ch))
            last = new_node(name)

    if scan.peek() != "":
        raise scan.error("Trailing text after ';'")

    lengths[0] = 0.0
    root_kids = sum(1 for p in parents if p == 0)
    is_rooted = root_kids == 2 if rooted is None else rooted
    return Tree(tuple(parents), tuple(lengths), tuple(names), is_rooted)


def _quote(label: str) -> str:
    if _NEEDS_QUOTES.search(label):
        return "'" + label.replace("'", "''") + "'"
    return label


def _canonical_anchor(tree: Tree) -> Tree:
    """Re-anchor an unrooted tree at the node next to its smallest leaf."""
    if tree.rooted or tree.n_leaves < 3:
        return tree
    leaf = tree.node_of[tree.leaf_labels[0]]
    anchor = tree.adjacency[leaf][0][0]
    if anchor == 0:
        return tree
    return Tree.from_adjacency(tree.adjacency, anchor, tree.named_nodes, rooted=False)


def write_newick(tree: Tree) -> str:
    """Serialize a tree canonically.

    Children are ordered by their smallest descendant label and lengths are
    written with six decimals. Unrooted trees are anchored next to their
    smallest leaf so that isomorphic trees serialize identically.
    """
    tree = _canonical_anchor(tree)
    parts: List[str] = [""] * tree.n_nodes
    for i in range(tree.n_nodes - 1, -1, -1):
        kids = tree.sorted_children(i)
        if kids:
            parts[i] = "(" + ",".join(parts[c] for c in kids) + ")"
        else:
            parts[i] = _quote(tree.names[i])  # type: ignore[arg-type]
        if i > 0:
            parts[i] += f":{tree.lengths[i]:.6f}"
    return parts[0] + ";"


def read_newick(path: Union[str, Path]) -> List[Tree]:
    """Read every tree of a file holding one Newick tree per line."""
    trees = []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            trees.append(parse_newick(line))
    logger.debug("Read %d trees from %s", len(trees), path)
    return trees


def write_newick_file(trees: List[Tree], path: Union[str, Path]) -> None:
    Path(path).write_text("".join(write_newick(t) + "\n" for t in trees))
