"""Edge-list and assignment file formats.

Graphs: first line "n m", then m lines "u v" with 0-based indices, u < v;
the unit diagonal is implicit.  Assignments: n lines of integer labels,
0 marking outliers.
"""

from __future__ import annotations

import numpy as np

from .graphmodel import Adjacency, ClusterAssignment


class ParseError(ValueError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


def write_graph(a: Adjacency, path) -> None:
    iu, ju = np.nonzero(np.triu(a.matrix, k=1))
    with open(path, "w") as fh:
        fh.write(f"{a.n} {iu.size}\n")
        for u, v in zip(iu, ju):
            fh.write(f"{u} {v}\n")


def read_graph(path) -> Adjacency:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty file; expected 'n m' header")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(path, 1, f"malformed header {lines[0]!r}; expected 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(path, 1, f"non-integer header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise ParseError(path, 1, "n and m must be nonnegative")

    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise ParseError(
            path, len(lines), f"header promises {m} edges but file has {len(body)}"
        )
    matrix = np.zeros((n, n), dtype=np.int8)
    np.fill_diagonal(matrix, 1)
    for lineno, ln in enumerate(body, start=2):
        fields = ln.split()
        if len(fields) != 2:
            raise ParseError(path, lineno, f"malformed edge line {ln!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(path, lineno, f"non-integer endpoints {ln!r}") from None
        if u == v:
            raise ParseError(path, lineno, "self-loop; the diagonal is implicit")
        if not u < v:
            raise ParseError(path, lineno, f"expected u < v, got {u} {v}")
        if u < 0 or v >= n:
            raise ParseError(path, lineno, f"node index {v} out of range for n={n}")
        if matrix[u, v]:
            raise ParseError(path, lineno, f"duplicate edge {u} {v}")
        matrix[u, v] = matrix[v, u] = 1
    return Adjacency(matrix)


def write_assignment(assignment: ClusterAssignment, path) -> None:
    with open(path, "w") as fh:
        for label in assignment.labels:
            fh.write(f"{label}\n")


def read_assignment(path) -> ClusterAssignment:
    labels = []
    with open(path) as fh:
        for lineno, ln in enumerate(fh, start=1):
            if not ln.strip():
                continue
            try:
                labels.append(int(ln))
            except ValueError:
                raise ParseError(path, lineno, f"non-integer label {ln.strip()!r}") from None
    return ClusterAssignment(np.asarray(labels, dtype=np.int64))
