"""Degenerate Lissajous curves and their node sets ``LD_{n,p}``.

The curve ``t -> (cos(n t), cos((n + p) t))`` with ``gcd(n, n + p) = 1`` is
traversed twice over ``[0, 2 pi]``.  Sampling it at ``t_k = pi k / (n (n + p))``,
``k = 0..n(n+p)``, yields ``(n + p + 1)(n + 1) / 2`` distinct points lying on the
tensor grid of Chebyshev-Gauss-Lobatto points ``z^{n+p} x z^n``.  A node is
identified by its integer grid indices ``(grid_i, grid_j)``; floating point
coordinates are derived data.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .chebyshev import cgl_points
from .errors import DomainError, NodeConstructionError, ValidationError


class ParityCase(enum.Enum):
    A = "a"  # n even, p odd
    B = "b"  # n odd, p odd
    C = "c"  # n odd, p even


class NodeClass(enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    INTERIOR = "interior"


class Color(enum.Enum):
    BLUE = "blue"
    WHITE = "white"


class IndexVariant(enum.Enum):
    """Spectral index sets.

    ``GAMMA`` is ``{(i, j) >= 0 : i/(n+p) + j/n < 1}``; ``GAMMA_L`` adds
    ``(0, n)`` and ``GAMMA_L_TILDE`` adds ``(n + p, 0)`` instead.
    """

    GAMMA = "basic"
    GAMMA_L = "l"
    GAMMA_L_TILDE = "ltilde"


@dataclass(frozen=True)
class LissajousParams:
    n: int
    p: int

    def __post_init__(self):
        for name in ("n", "p"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ValidationError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise ValidationError(f"{name} must be a positive integer, got {value}")
        if math.gcd(self.n, self.n + self.p) != 1:
            raise ValidationError(
                f"n and n+p must be relatively prime: gcd({self.n}, {self.n + self.p}) = "
                f"{math.gcd(self.n, self.n + self.p)}"
            )
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", int(self.p))

    @property
    def m(self) -> int:
        """``n + p``, the frequency of the second coordinate."""
        return self.n + self.p

    @property
    def period(self) -> int:
        """``n (n + p)``: number of sampling intervals on ``[0, pi]``."""
        return self.n * (self.n + self.p)

    @property
    def parity_case(self) -> ParityCase:
        if self.n % 2 == 0:
            return ParityCase.A
        return ParityCase.B if self.p % 2 else ParityCase.C

    @property
    def node_count(self) -> int:
        return (self.n + self.p + 1) * (self.n + 1) // 2

    def __str__(self):
        return f"(n={self.n}, p={self.p})"


def validate_params(n, p) -> LissajousParams:
    """Return validated parameters; raises `ValidationError` naming the violated condition."""
    return LissajousParams(n, p)


def fold(k: int, m: int) -> int:
    """Reduce ``k`` to ``0..m`` so that ``cos(k pi / m) == cos(fold(k, m) pi / m)``."""
    r = k % (2 * m)
    return 2 * m - r if r > m else r


def curve_point(params: LissajousParams, t):
    """Point ``(cos(n t), cos((n + p) t))`` on the curve; vectorized over ``t``."""
    t = np.asarray(t, dtype=float)
    x = np.cos(params.n * t)
    y = np.cos(params.m * t)
    if t.ndim == 0:
        return float(x), float(y)
    return x, y


def sample_times(params: LissajousParams) -> np.ndarray:
    """The ``n(n+p) + 1`` equidistant parameters ``t_k = pi k / (n (n + p))``."""
    return np.pi * np.arange(params.period + 1) / params.period


def expected_counts(params: LissajousParams) -> dict:
    """Closed-form cardinalities of the node set and its parts."""
    n, p = params.n, params.p
    case = params.parity_case
    if case is ParityCase.A:
        blue = (n + 2) // 2 * ((n + p + 1) // 2)
        white = n // 2 * ((n + p + 1) // 2)
    elif case is ParityCase.B:
        blue = (n + 1) // 2 * ((n + p + 2) // 2)
        white = (n + 1) // 2 * ((n + p) // 2)
    else:
        blue = white = (n + 1) // 2 * ((n + p + 1) // 2)
    return {
        "total": (n + p + 1) * (n + 1) // 2,
        "interior": (n + p - 1) * (n - 1) // 2,
        "boundary": 2 * n + p,
        "vertex": 2,
        "edge": 2 * n + p - 2,
        "blue": blue,
        "white": white,
    }


class Node(NamedTuple):
    """One node; identified by its grid indices, coordinates are derived."""

    grid_i: int
    grid_j: int
    x: float
    y: float
    node_class: NodeClass
    color: Color
    sample_indices: tuple
    weight: float

    @property
    def key(self) -> tuple:
        return (self.grid_i, self.grid_j)


def _weight(params: LissajousParams, node_class: NodeClass) -> float:
    if node_class is NodeClass.VERTEX:
        return 1.0 / (2 * params.period)
    if node_class is NodeClass.EDGE:
        return 1.0 / params.period
    return 2.0 / params.period


def _readonly(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class NodeSet:
    """Immutable node set, ordered lexicographically by ``(grid_j, grid_i)``."""

    params: LissajousParams
    nodes: tuple = field(repr=False)

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, index):
        return self.nodes[index]

    @cached_property
    def x(self) -> np.ndarray:
        return _readonly([a.x for a in self.nodes])

    @cached_property
    def y(self) -> np.ndarray:
        return _readonly([a.y for a in self.nodes])

    @cached_property
    def weights(self) -> np.ndarray:
        return _readonly([a.weight for a in self.nodes])

    @cached_property
    def grid_i(self) -> np.ndarray:
        return _readonly(np.array([a.grid_i for a in self.nodes], dtype=np.int64))

    @cached_property
    def grid_j(self) -> np.ndarray:
        return _readonly(np.array([a.grid_j for a in self.nodes], dtype=np.int64))

    @cached_property
    def _index(self) -> dict:
        return {a.key: pos for pos, a in enumerate(self.nodes)}

    def index_of(self, node) -> int:
        """Position of ``node`` (a `Node` or ``(grid_i, grid_j)`` pair); `DomainError` if foreign."""
        key = node.key if isinstance(node, Node) else tuple(int(v) for v in node)
        try:
            return self._index[key]
        except KeyError:
            raise DomainError(f"grid point {key} is not a node of LD{self.params}") from None

    def counts(self) -> dict:
        """Observed cardinalities, keyed like `expected_counts`."""
        classes = [a.node_class for a in self.nodes]
        colors = [a.color for a in self.nodes]
        return {
            "total": len(self.nodes),
            "interior": classes.count(NodeClass.INTERIOR),
            "boundary": len(classes) - classes.count(NodeClass.INTERIOR),
            "vertex": classes.count(NodeClass.VERTEX),
            "edge": classes.count(NodeClass.EDGE),
            "blue": colors.count(Color.BLUE),
            "white": colors.count(Color.WHITE),
        }

    def to_records(self) -> list:
        rows = []
        for a in self.nodes:
            ks = list(a.sample_indices)
            rows.append(
                {
                    "n": self.params.n,
                    "p": self.params.p,
                    "grid_i": a.grid_i,
                    "grid_j": a.grid_j,
                    "x": a.x,
                    "y": a.y,
                    "class": a.node_class.value,
                    "color": a.color.value,
                    "weight": a.weight,
                    "k1": ks[0],
                    "k2": ks[1] if len(ks) > 1 else None,
                }
            )
        return rows


NODE_COLUMNS = ("n", "p", "grid_i", "grid_j", "x", "y", "class", "color", "weight", "k1", "k2")


def format_real(value: float) -> str:
    return format(float(value), ".17g")


def nodes_to_csv(nodeset: NodeSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(NODE_COLUMNS)
    for rec in nodeset.to_records():
        row = []
        for col in NODE_COLUMNS:
            value = rec[col]
            if value is None:
                row.append("")
            elif isinstance(value, float):
                row.append(format_real(value))
            else:
                row.append(value)
        writer.writerow(row)
    return buf.getvalue()


def nodes_to_json(nodeset: NodeSet) -> str:
    doc = {
        "n": nodeset.params.n,
        "p": nodeset.params.p,
        "parity_case": nodeset.params.parity_case.value,
        "columns": list(NODE_COLUMNS),
        "nodes": nodeset.to_records(),
    }
    return json.dumps(doc, indent=2) + "\n"


def _build_node(params, gi, gj, ks, x, y, node_class=None):
    n, m = params.n, params.m
    if node_class is None:
        if 0 < gi < m and 0 < gj < n:
            node_class = NodeClass.INTERIOR
        elif (gi in (0, m)) and (gj in (0, n)):
            node_class = NodeClass.VERTEX
        else:
            node_class = NodeClass.EDGE
    return Node(
        grid_i=gi,
        grid_j=gj,
        x=x,
        y=y,
        node_class=node_class,
        color=Color.BLUE if gi % 2 == 0 and gj % 2 == 0 else Color.WHITE,
        sample_indices=tuple(ks),
        weight=_weight(params, node_class),
    )


def generate_nodes(params: LissajousParams) -> NodeSet:
    """Build ``LD_{n,p}`` from the spectral index set ``Gamma^L``.

    Each ``(i, j)`` in ``Gamma^L`` gives the sample index ``k = i n + j (n + p)``
    and the node ``(z^{n+p}_k, z^n_k)``; a second index ``|i n - j (n + p)|``
    reaches the same point when ``i, j > 0``.
    """
    n, m = params.n, params.m
    zx, zy = cgl_points(m).tolist(), cgl_points(n).tolist()
    nodes = []
    for i, j in index_set(params, IndexVariant.GAMMA_L).pairs:
        k = i * n + j * m
        k2 = abs(i * n - j * m)
        gi, gj = fold(k, m), fold(k, n)
        nodes.append(_build_node(params, gi, gj, sorted({k, k2}), zx[gi], zy[gj]))
    nodes.sort(key=lambda a: (a.grid_j, a.grid_i))
    keys = {a.key for a in nodes}
    if len(keys) != len(nodes) or len(nodes) != params.node_count:
        raise NodeConstructionError(f"node construction for LD{params} produced duplicates")
    return NodeSet(params, tuple(nodes))


def generate_nodes_by_sampling(params: LissajousParams, tol: float = 1e-9) -> NodeSet:
    """Build ``LD_{n,p}`` by sampling the curve and merging coincident samples.

    This route uses only floating point geometry and serves as a cross-check
    of `generate_nodes`.  Node coordinates are the sampled curve points; grid
    indices are recovered from them by rounding.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    n, m, period = params.n, params.m, params.period
    spacing = min(1.0 - math.cos(math.pi / m), 1.0 - math.cos(math.pi / n))
    if tol >= spacing / 2:
        raise DomainError(f"tol={tol} is not below half the minimal grid spacing {spacing / 2:.3g}")
    x, y = curve_point(params, sample_times(params))
    pts = np.column_stack([x, y])
    pairs = cKDTree(pts).query_pairs(tol, output_type="ndarray")
    graph = coo_matrix(
        (np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(period + 1, period + 1)
    )
    ncomp, labels = connected_components(graph, directed=False)
    members = [[] for _ in range(ncomp)]
    for k, lab in enumerate(labels):
        members[lab].append(k)
    nodes = []
    for ks in members:
        cluster = pts[ks]
        if len(ks) > 2 or np.ptp(cluster, axis=0).max() > tol:
            raise NodeConstructionError(f"ambiguous merge of samples {ks} within tol={tol}")
        k0 = ks[0]
        gi = int(round(math.acos(min(1.0, max(-1.0, pts[k0, 0]))) * m / math.pi))
        gj = int(round(math.acos(min(1.0, max(-1.0, pts[k0, 1]))) * n / math.pi))
        if len(ks) == 2:
            cls = NodeClass.INTERIOR
        elif k0 in (0, period):
            cls = NodeClass.VERTEX
        else:
            cls = NodeClass.EDGE
        nodes.append(_build_node(params, gi, gj, ks, float(pts[k0, 0]), float(pts[k0, 1]), cls))
    nodes.sort(key=lambda a: (a.grid_j, a.grid_i))
    return NodeSet(params, tuple(nodes))


@dataclass(frozen=True)
class IndexSet:
    variant: IndexVariant
    pairs: tuple

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return tuple(pair) in self._members

    def __iter__(self):
        return iter(self.pairs)

    @cached_property
    def _members(self):
        return frozenset(self.pairs)

    @property
    def shape(self) -> tuple:
        """Smallest ``(rows, cols)`` matrix holding every index pair."""
        return (max(i for i, _ in self.pairs) + 1, max(j for _, j in self.pairs) + 1)


def gamma_pairs(n: int, m: int) -> list:
    """Pairs ``(i, j) >= 0`` with ``i / m + j / n < 1``, sorted."""
    return [(i, j) for i in range(m) for j in range(n) if i * n + j * m < n * m]


def index_set(params: LissajousParams, variant: IndexVariant = IndexVariant.GAMMA_L) -> IndexSet:
    variant = IndexVariant(variant)
    pairs = gamma_pairs(params.n, params.m)
    if variant is IndexVariant.GAMMA_L:
        pairs.append((0, params.n))
    elif variant is IndexVariant.GAMMA_L_TILDE:
        pairs.append((params.m, 0))
    return IndexSet(variant, tuple(sorted(pairs)))


def equivalence_class(params: LissajousParams, node) -> list:
    """All ``k`` in ``0..n(n+p)`` whose sample ``gamma(t_k)`` is ``node``.

    ``node`` is a `Node` or a ``(grid_i, grid_j)`` pair.  Found by exhaustive
    search over ``k``, independent of how the node set was generated.
    """
    gi, gj = node.key if isinstance(node, Node) else (int(node[0]), int(node[1]))
    n, m = params.n, params.m
    ks = [k for k in range(params.period + 1) if fold(k, m) == gi and fold(k, n) == gj]
    if not ks:
        raise DomainError(f"grid point {(gi, gj)} is not a node of LD{params}")
    return ks
