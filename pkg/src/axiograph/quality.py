"""Clustering quality functions behind one evaluation interface.

Every sum-form quality is ``sum_c f(w_c, v_c, n_c)`` where ``w_c`` is the
within weight, ``v_c`` the volume and ``n_c`` the node mass of cluster
``c``; modularity and the Reichardt-Bornholdt form additionally read the
total volume of the graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import InputError, ParseError, UnsupportedError
from .graph import Clustering, Graph, cluster_stats, connected_components

__all__ = [
    "QualitySpec",
    "QualityValue",
    "parse_spec",
    "as_spec",
    "evaluate",
    "evaluate_with_info",
    "cluster_contribution",
    "family_scale_param",
    "fixed_scale_within_derivative",
    "block_stats_batch",
    "batch_quality",
]

KINDS = ("modularity", "fixed", "adaptive", "cpm", "rb", "withinsum", "coco")


def _num(x):
    x = float(x)
    return str(int(x)) if x.is_integer() and abs(x) < 1e16 else repr(x)


@dataclass(frozen=True)
class QualitySpec:
    """Selects one quality function and its parameters.

    ``M`` is the scale of the fixed/adaptive forms (edge-weight units);
    ``gamma`` is the volume coefficient of the adaptive form, the size
    penalty of CPM, or the resolution of the Reichardt-Bornholdt form.
    """

    kind: str
    M: float | None = None
    gamma: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown quality kind {self.kind!r}")
        for name in ("M", "gamma"):
            val = getattr(self, name)
            if val is not None:
                val = float(val)
                if not math.isfinite(val):
                    raise InputError(f"{name} must be finite")
                object.__setattr__(self, name, val)
        need_m = self.kind in ("fixed", "adaptive")
        need_g = self.kind in ("adaptive", "cpm", "rb")
        if need_m != (self.M is not None) or need_g != (self.gamma is not None):
            raise InputError(f"wrong parameters for {self.kind}: M={self.M}, gamma={self.gamma}")
        if self.M is not None and self.M < 0:
            raise InputError("M must be nonnegative")
        if self.gamma is not None and self.gamma < 0:
            raise InputError("gamma must be nonnegative")
        if self.kind == "fixed" and self.M == 0:
            raise InputError("fixed-scale modularity requires M > 0")
        if self.kind == "adaptive" and self.M == 0 and self.gamma == 0:
            raise InputError("adaptive-scale modularity with M = 0 requires gamma > 0")
        if self.kind == "rb" and self.gamma == 0:
            raise InputError("Reichardt-Bornholdt gamma must be positive")

    # constructors -------------------------------------------------------
    @classmethod
    def modularity(cls):
        return cls("modularity")

    @classmethod
    def fixed_scale(cls, M):
        return cls("fixed", M=M)

    @classmethod
    def adaptive_scale(cls, M, gamma):
        return cls("adaptive", M=M, gamma=gamma)

    @classmethod
    def ncut(cls):
        """Normalized-cut style member of the adaptive family, ``M=0, gamma=1``."""
        return cls("adaptive", M=0.0, gamma=1.0)

    @classmethod
    def cpm(cls, gamma):
        return cls("cpm", gamma=gamma)

    @classmethod
    def rb(cls, gamma):
        return cls("rb", gamma=gamma)

    @classmethod
    def within_sum(cls):
        return cls("withinsum")

    @classmethod
    def coco(cls):
        return cls("coco")

    # properties ---------------------------------------------------------
    @property
    def is_sum_form(self):
        return self.kind != "coco"

    @property
    def is_ratio_based(self):
        """Values divide by a volume, so zero-volume clusters are singular."""
        return self.kind in ("modularity", "adaptive", "rb")

    @property
    def uses_total_volume(self):
        return self.kind in ("modularity", "rb")

    @property
    def is_parameter_free(self):
        return self.kind in ("modularity", "withinsum", "coco")

    def __str__(self):
        if self.kind == "fixed":
            return f"fixed:{_num(self.M)}"
        if self.kind == "adaptive":
            return f"adaptive:{_num(self.M)},{_num(self.gamma)}"
        if self.kind in ("cpm", "rb"):
            return f"{self.kind}:{_num(self.gamma)}"
        return self.kind

    def __call__(self, graph, clustering):
        return evaluate(self, graph, clustering)


def parse_spec(text: str) -> QualitySpec:
    """Parse ``modularity | fixed:M | adaptive:M,GAMMA | cpm:GAMMA | rb:GAMMA | ncut
    | withinsum | coco``."""
    s = text.strip().lower()
    name, _, args = s.partition(":")
    try:
        values = [float(a) for a in args.split(",")] if args else []
    except ValueError:
        raise ParseError(f"bad quality parameters in {text!r}") from None
    arity = {"modularity": 0, "ncut": 0, "withinsum": 0, "coco": 0,
             "fixed": 1, "cpm": 1, "rb": 1, "adaptive": 2}
    if name not in arity:
        raise ParseError(f"unknown quality {name!r}")
    if len(values) != arity[name]:
        raise ParseError(f"{name} takes {arity[name]} parameter(s), got {len(values)}")
    try:
        if name == "ncut":
            return QualitySpec.ncut()
        if name == "fixed":
            return QualitySpec.fixed_scale(values[0])
        if name == "adaptive":
            return QualitySpec.adaptive_scale(*values)
        if name in ("cpm", "rb"):
            return QualitySpec(name, gamma=values[0])
        return QualitySpec(name)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def as_spec(spec) -> QualitySpec:
    if isinstance(spec, QualitySpec):
        return spec
    if isinstance(spec, str):
        return parse_spec(spec)
    raise InputError(f"not a quality spec: {spec!r}")


# summands ---------------------------------------------------------------

def _summand(spec: QualitySpec, w, v, n, total):
    """Per-cluster term, scalar version."""
    kind = spec.kind
    if kind == "modularity":
        if total == 0:
            return 0.0
        return w / total - (v / total) ** 2
    if kind == "fixed":
        return w / spec.M - (v / spec.M) ** 2
    if kind == "adaptive":
        den = spec.M + spec.gamma * v
        if den == 0:
            return 0.0
        return w / den - (v / den) ** 2
    if kind == "cpm":
        return w - spec.gamma * n * n
    if kind == "rb":
        if total == 0:
            return 0.0
        return w - spec.gamma * v * v / total
    if kind == "withinsum":
        return w
    raise UnsupportedError(f"{spec} is not a sum over clusters")


def _summand_array(spec: QualitySpec, w, v, n, total):
    """Per-cluster term over arrays; empty (all-zero) clusters give 0."""
    kind = spec.kind
    if kind == "modularity":
        if total == 0:
            return np.zeros_like(w)
        return w / total - (v / total) ** 2
    if kind == "fixed":
        return w / spec.M - (v / spec.M) ** 2
    if kind == "adaptive":
        den = spec.M + spec.gamma * v
        safe = np.where(den > 0, den, 1.0)
        return np.where(den > 0, w / safe - (v / safe) ** 2, 0.0)
    if kind == "cpm":
        return w - spec.gamma * n * n
    if kind == "rb":
        if total == 0:
            return np.zeros_like(w)
        return w - spec.gamma * v * v / total
    if kind == "withinsum":
        return np.array(w, dtype=float, copy=True)
    raise UnsupportedError(f"{spec} is not a sum over clusters")


class QualityValue(NamedTuple):
    value: float
    degenerate: bool


def _check_partition(g: Graph, c: Clustering):
    if not isinstance(c, Clustering):
        raise InputError("expected a Clustering")
    if c.nodes != frozenset(range(g.n_nodes)):
        raise InputError("clustering is not a partition of the graph's nodes")


def evaluate_with_info(spec, g: Graph, c: Clustering) -> QualityValue:
    """Quality of ``c`` on ``g`` plus a flag for zero-total-volume graphs."""
    spec = as_spec(spec)
    _check_partition(g, c)
    if spec.kind == "coco":
        return QualityValue(float(c == connected_components(g)), False)
    total = g.total_volume
    degenerate = spec.uses_total_volume and total == 0
    terms = []
    for block in c.blocks:
        st = cluster_stats(g, block)
        terms.append(_summand(spec, st.within, st.volume, st.mass, total))
    return QualityValue(math.fsum(terms), degenerate)


def evaluate(spec, g: Graph, c: Clustering) -> float:
    return evaluate_with_info(spec, g, c).value


def cluster_contribution(spec, g: Graph, s) -> float:
    """The summand of ``spec`` for the single cluster ``s``."""
    spec = as_spec(spec)
    if not spec.is_sum_form:
        raise UnsupportedError("connected-components quality has no per-cluster terms")
    s = list(s)
    if not s:
        raise InputError("cluster must be nonempty")
    st = cluster_stats(g, s)
    return _summand(spec, st.within, st.volume, st.mass, g.total_volume)


def family_scale_param(spec, alpha: float) -> QualitySpec:
    """Parameters under which ``spec`` ranks ``alpha * G`` as it ranks ``G``."""
    spec = as_spec(spec)
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0:
        raise InputError(f"scale factor must be finite and positive, got {alpha}")
    if spec.kind == "fixed":
        return QualitySpec.fixed_scale(alpha * spec.M)
    if spec.kind == "adaptive":
        return QualitySpec.adaptive_scale(alpha * spec.M, spec.gamma)
    if spec.kind == "cpm":
        return QualitySpec.cpm(alpha * spec.gamma)
    return spec


def fixed_scale_within_derivative(M: float, v_c: float) -> float:
    """d/dw_c of the fixed-scale term: ``1/M - 2 v_c / M**2``."""
    M = float(M)
    if not math.isfinite(M) or M <= 0:
        raise InputError("M must be positive")
    return 1.0 / M - 2.0 * v_c / (M * M)


# batch evaluation over label matrices -------------------------------------

def block_stats_batch(g: Graph, labels: np.ndarray):
    """Within weight, volume and mass per block for many partitions at once.

    ``labels`` has shape ``(P, n)`` with values in ``0..n-1``; the result
    arrays have shape ``(P, n)`` indexed by block label (unused labels are 0).
    """
    labels = np.asarray(labels)
    P, n = labels.shape
    w = np.zeros((P, max(n, 1)))
    v = np.zeros_like(w)
    m = np.zeros_like(w)
    rows = np.arange(P)
    adj = g.adjacency
    deg = g.degrees
    mass = g.node_mass
    for i in range(n):
        li = labels[:, i]
        v[rows, li] += deg[i]
        m[rows, li] += mass[i]
        if adj[i, i]:
            w[rows, li] += adj[i, i]
    ii, jj = np.nonzero(np.triu(adj, k=1))
    for i, j in zip(ii.tolist(), jj.tolist()):
        li = labels[:, i]
        same = li == labels[:, j]
        w[rows, li] += np.where(same, 2.0 * adj[i, j], 0.0)
    return w, v, m


def batch_quality(spec, g: Graph, labels: np.ndarray) -> np.ndarray:
    """Quality of every partition (row of ``labels``) of ``g``."""
    spec = as_spec(spec)
    labels = np.asarray(labels)
    if spec.kind == "coco":
        cc = np.asarray(connected_components(g).to_labels(g.n_nodes), dtype=labels.dtype)
        return _canonical_rows_equal(labels, cc).astype(float)
    w, v, m = block_stats_batch(g, labels)
    return _summand_array(spec, w, v, m, g.total_volume).sum(axis=1)


def _canonical_rows_equal(labels, target):
    """Rows of ``labels`` describing the same partition as ``target``."""
    if labels.shape[1] == 0:
        return np.ones(labels.shape[0], dtype=bool)
    # same partition iff the co-membership matrices match
    want = target[:, None] == target[None, :]
    same = labels[:, :, None] == labels[:, None, :]
    return np.all(same == want[None, :, :], axis=(1, 2))
