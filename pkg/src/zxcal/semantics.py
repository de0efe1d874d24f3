"""Matrix interpretation of diagrams by pairwise tensor contraction.

Matrices are numpy arrays of shape ``(2**m, 2**n)``: rows index outputs,
columns index inputs, and the leftmost boundary slot is the most significant
bit.  The exact backend uses ``dtype=object`` arrays of :class:`ExactScalar`;
the float backend uses ``complex128``.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Optional

import numpy as np

from .diagram import Diagram, Kind, Node
from .errors import (
    CapacityExceeded,
    InexactParameter,
    ShapeMismatch,
    ZeroReference,
)
from .scalars import INV_SQRT2, ExactScalar, scalar_from_json, scalar_to_json

DEFAULT_CAPACITY = {"float": 12, "exact": 8}
HARD_CEILING = 20
# slack allowed for intermediate tensors beyond the boundary capacity
INTERMEDIATE_SLACK = 8


def capacity_for(backend: str, override: Optional[int] = None) -> int:
    if override is None:
        env = os.environ.get("ZXCAL_CAPACITY")
        if env:
            override = int(env)
    cap = DEFAULT_CAPACITY[backend] if override is None else override
    return max(0, min(cap, HARD_CEILING))


def _check_backend(backend: str) -> None:
    if backend not in ("float", "exact"):
        raise ValueError(f"unknown backend {backend!r}")


def _exact_param(x):
    try:
        return ExactScalar.coerce(x)
    except InexactParameter:
        raise InexactParameter(f"parameter {x!r} is not exact") from None


def _inv_sqrt2_power(k: int):
    out = ExactScalar(Fraction(1, 2 ** (k // 2)))
    return out * INV_SQRT2 if k % 2 else out


def node_tensor(nd: Node, backend: str) -> np.ndarray:
    """Tensor with one axis per port, in port order."""
    exact = backend == "exact"
    k = nd.arity
    shape = (2,) * k
    if nd.kind in (Kind.Z, Kind.X, Kind.HBOX):
        a = _exact_param(nd.param) if exact else complex(nd.param)
    if exact:
        one, zero = ExactScalar(1), ExactScalar(0)
        t = np.empty(shape, dtype=object)
    else:
        one, zero = 1.0 + 0j, 0j
        t = np.empty(shape, dtype=complex)

    if nd.kind is Kind.Z:
        t.fill(zero)
        if k == 0:
            t[()] = one + a
        else:
            t[(0,) * k] = one
            t[(1,) * k] = a
    elif nd.kind is Kind.X:
        norm = _inv_sqrt2_power(k) if exact else 2.0 ** (-k / 2)
        even, odd = norm * (one + a), norm * (one - a)
        for idx in np.ndindex(*shape):
            t[idx] = odd if sum(idx) % 2 else even
    elif nd.kind is Kind.HBOX:
        t.fill(one)
        t[(1,) * k] = a
    elif nd.kind is Kind.H:
        h = INV_SQRT2 if exact else 2**-0.5
        t[...] = [[h, h], [h, -h]]
    elif nd.kind is Kind.T:
        # axes are (input, output): t[i][o] = T[o][i]
        t[...] = [[one, zero], [one, one]]
    elif nd.kind is Kind.TINV:
        t[...] = [[one, zero], [-one, one]]
    else:  # pragma: no cover
        raise ValueError(f"unknown kind {nd.kind}")
    return t


class _Tensor:
    __slots__ = ("data", "labels")

    def __init__(self, data: np.ndarray, labels: list[int]) -> None:
        self.data = data
        self.labels = labels


def _trace_repeated(data: np.ndarray, labels: list[int]) -> _Tensor:
    """Sum over labels appearing twice within one tensor (self-loops)."""
    seen: dict[int, int] = {}
    for lab in labels:
        seen[lab] = seen.get(lab, 0) + 1
    if all(c == 1 for c in seen.values()):
        return _Tensor(data, labels)
    keep = [lab for lab in dict.fromkeys(labels) if seen[lab] == 1]
    small = {lab: i for i, lab in enumerate(dict.fromkeys(labels))}
    out = np.einsum(data, [small[x] for x in labels], [small[x] for x in keep])
    return _Tensor(np.asarray(out, dtype=data.dtype), keep)


def _contract(a: _Tensor, b: _Tensor) -> _Tensor:
    shared = set(a.labels) & set(b.labels)
    keep = [x for x in a.labels if x not in shared] + [x for x in b.labels if x not in shared]
    small = {lab: i for i, lab in enumerate(dict.fromkeys(a.labels + b.labels))}
    out = np.einsum(
        a.data,
        [small[x] for x in a.labels],
        b.data,
        [small[x] for x in b.labels],
        [small[x] for x in keep],
    )
    return _Tensor(np.asarray(out, dtype=a.data.dtype), keep)


def interpret(d: Diagram, backend: str = "float", capacity: Optional[int] = None) -> np.ndarray:
    """Evaluate ``d`` to its ``2**n_out x 2**n_in`` matrix."""
    _check_backend(backend)
    cap = capacity_for(backend, capacity)
    if d.n_in + d.n_out > cap:
        raise CapacityExceeded(f"{d.n_in + d.n_out} open wires exceed capacity {cap}")
    exact = backend == "exact"
    dtype = object if exact else complex

    # one label per edge; boundary slots are labelled by their edge too
    label_of: dict = {}
    tensors: list[_Tensor] = []
    for idx, (a, b) in enumerate(d.edges):
        label_of[a] = idx
        label_of[b] = idx
        if a[0] != "n" and b[0] != "n":
            # boundary-to-boundary wire: an explicit identity matrix
            ident = np.empty((2, 2), dtype=dtype)
            one, zero = (ExactScalar(1), ExactScalar(0)) if exact else (1.0, 0.0)
            ident[...] = [[one, zero], [zero, one]]
            tensors.append(_Tensor(ident, [("w", idx, 0), ("w", idx, 1)]))
            label_of[a] = ("w", idx, 0)
            label_of[b] = ("w", idx, 1)
    for nid, nd in d.nodes.items():
        labels = [label_of[("n", nid, p)] for p in range(nd.arity)]
        tensors.append(_trace_repeated(node_tensor(nd, backend), labels))

    limit = cap + INTERMEDIATE_SLACK
    while len(tensors) > 1:
        best = None
        for i in range(len(tensors)):
            li = set(tensors[i].labels)
            for j in range(i + 1, len(tensors)):
                lj = set(tensors[j].labels)
                sh = len(li & lj)
                rank = len(li) + len(lj) - 2 * sh
                key = (sh == 0, rank, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        _, i, j = best
        rank = best[0][1]
        if rank > limit:
            raise CapacityExceeded(f"intermediate tensor of rank {rank} exceeds {limit}")
        merged = _contract(tensors[i], tensors[j])
        tensors = [t for k, t in enumerate(tensors) if k not in (i, j)] + [merged]

    if tensors:
        result = tensors[0]
    else:
        one = ExactScalar(1) if exact else 1.0 + 0j
        result = _Tensor(np.array(one, dtype=dtype), [])

    order = [label_of[("o", k)] for k in range(d.n_out)] + [
        label_of[("i", k)] for k in range(d.n_in)
    ]
    data = result.data
    if order:
        data = np.transpose(data, [result.labels.index(x) for x in order])
    mat = np.asarray(data, dtype=dtype).reshape(2**d.n_out, 2**d.n_in)
    if d.loops:
        mat = mat * (2**d.loops)
    if exact:
        mat = _canon_exact(mat)
    return mat


def _canon_exact(mat: np.ndarray) -> np.ndarray:
    out = np.empty(mat.shape, dtype=object)
    for idx, v in np.ndenumerate(mat):
        out[idx] = ExactScalar.coerce(v)
    return out


def is_exact_matrix(m: np.ndarray) -> bool:
    return m.dtype == object


def to_float_matrix(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        return np.vectorize(complex, otypes=[complex])(m) if m.size else m.astype(complex)
    return m


def matrices_equal(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    if a.shape != b.shape:
        raise ShapeMismatch(f"{a.shape} vs {b.shape}")
    if is_exact_matrix(a) and is_exact_matrix(b):
        return all(x == y for x, y in zip(a.flat, b.flat))
    return max_deviation(a, b) <= tol


def max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    if a.shape != b.shape:
        raise ShapeMismatch(f"{a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(to_float_matrix(a) - to_float_matrix(b))))


def proportional(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> Optional[complex]:
    """Return ``c`` with ``a == c*b`` within ``tol``, or ``None``."""
    if a.shape != b.shape:
        raise ShapeMismatch(f"{a.shape} vs {b.shape}")
    fa, fb = to_float_matrix(a), to_float_matrix(b)
    mags = np.abs(fb)
    if fb.size == 0 or mags.max() <= tol:
        raise ZeroReference("reference matrix is numerically zero")
    idx = np.unravel_index(int(np.argmax(mags)), fb.shape)
    c = complex(fa[idx] / fb[idx])
    if np.max(np.abs(fa - c * fb)) <= tol:
        return c
    return None


def matrix_to_json(m: np.ndarray, precision: Optional[int] = None) -> dict:
    def enc(v):
        out = scalar_to_json(v)
        if precision is not None and "re" in out:
            out = {"re": round(out["re"], precision), "im": round(out["im"], precision)}
        return out

    rows, cols = m.shape
    return {
        "m": rows.bit_length() - 1,
        "n": cols.bit_length() - 1,
        "entries": [[enc(v) for v in row] for row in m],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    vals = [[scalar_from_json(v) for v in row] for row in obj["entries"]]
    exact = all(isinstance(v, ExactScalar) for row in vals for v in row)
    arr = np.empty((2 ** obj["m"], 2 ** obj["n"]), dtype=object if exact else complex)
    for i, row in enumerate(vals):
        for j, v in enumerate(row):
            arr[i, j] = v
    return arr
