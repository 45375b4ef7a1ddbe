"""From-scratch LSTM and GRU forecasting networks.

The fixed six-layer architecture: input window of hourly values ->
recurrent layer (emits the full hidden sequence) -> inverted dropout ->
second recurrent layer (emits its last state) -> dense tanh layer ->
single-output dense tanh layer. Everything runs in double precision with
hand-written forward passes and backpropagation through time; no autograd.

Cell equations. LSTM (gates read the concatenation ``z = [h_prev, x]``):

    i = sigmoid(W_i z + b_i)        f = sigmoid(W_f z + b_f)
    o = sigmoid(W_o z + b_o)        g = tanh(W_c z + b_c)
    c = f * c_prev + i * g          h = o * tanh(c)

GRU (single state ``c``, separate recurrent ``W`` and input ``V`` maps):

    r = sigmoid(W_r c_prev + V_r x + b_r)
    u = sigmoid(W_z c_prev + V_z x + b_z)
    m = tanh(W_m (c_prev * r) + V_m x + b_m)
    c = c_prev * (1 - u) + u * m

All step and network functions accept a single sample (1-D state, 2-D
window) or a batch (2-D state, 3-D windows); batched arithmetic is the
same code path, so both stay in lockstep by construction.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit as _sigmoid

from .preprocess import MinMaxScaler

_KINDS = ("lstm", "gru")
_FORMAT_TAG = "loadcast-model/1"


@dataclass(frozen=True)
class NetworkSpec:
    """Architecture description; defaults are the reference configuration."""

    kind: str
    window: int = 6
    input_size: int = 1
    units: int = 140
    dropout: float = 0.4
    dense_units: int = 32
    output_size: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}; got {self.kind!r}")
        for name in ("window", "input_size", "units", "dense_units", "output_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1; got {getattr(self, name)}")
        if self.output_size != 1:
            raise ValueError("this architecture predicts a single value; output_size must be 1")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError(f"dropout must be in [0, 1); got {self.dropout}")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, payload: dict) -> "NetworkSpec":
        return cls(**payload)


@dataclass
class LstmParams:
    """Gate weights over ``[h_prev, x]`` (shape ``(units, units + input)``) and biases."""

    w_i: np.ndarray
    w_f: np.ndarray
    w_o: np.ndarray
    w_c: np.ndarray
    b_i: np.ndarray
    b_f: np.ndarray
    b_o: np.ndarray
    b_c: np.ndarray


@dataclass
class GruParams:
    """Per-gate recurrent maps ``w_*`` (units, units), input maps ``v_*`` (units, input), biases."""

    w_r: np.ndarray
    v_r: np.ndarray
    b_r: np.ndarray
    w_z: np.ndarray
    v_z: np.ndarray
    b_z: np.ndarray
    w_m: np.ndarray
    v_m: np.ndarray
    b_m: np.ndarray


@dataclass
class DenseParams:
    w: np.ndarray  # (out, in)
    b: np.ndarray  # (out,)


@dataclass
class NetworkParams:
    layer1: LstmParams | GruParams
    layer2: LstmParams | GruParams
    dense1: DenseParams
    dense2: DenseParams


def _glorot(rng: np.random.Generator, out_size: int, in_size: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (in_size + out_size))
    return rng.uniform(-limit, limit, size=(out_size, in_size))


def _init_cell(spec: NetworkSpec, in_size: int, rng: np.random.Generator):
    u = spec.units
    if spec.kind == "lstm":
        weights = [_glorot(rng, u, u + in_size) for _ in range(4)]
        biases = [np.zeros(u) for _ in range(4)]
        return LstmParams(*weights, *biases)
    blocks = []
    for _ in range(3):  # r, z, m in equation order
        blocks.append((_glorot(rng, u, u), _glorot(rng, u, in_size), np.zeros(u)))
    (w_r, v_r, b_r), (w_z, v_z, b_z), (w_m, v_m, b_m) = blocks
    return GruParams(w_r, v_r, b_r, w_z, v_z, b_z, w_m, v_m, b_m)


def init_params(spec: NetworkSpec, rng: np.random.Generator) -> NetworkParams:
    """Glorot-uniform weights (limit sqrt(6/(fan_in+fan_out))), zero biases.

    Draw order is fixed (layer1 gates in equation order, layer2, dense1,
    dense2) so a given generator state always yields the same network.
    """
    layer1 = _init_cell(spec, spec.input_size, rng)
    layer2 = _init_cell(spec, spec.units, rng)
    dense1 = DenseParams(_glorot(rng, spec.dense_units, spec.units), np.zeros(spec.dense_units))
    dense2 = DenseParams(_glorot(rng, spec.output_size, spec.dense_units), np.zeros(spec.output_size))
    return NetworkParams(layer1, layer2, dense1, dense2)


def iter_param_blocks(params) -> list[tuple[str, np.ndarray]]:
    """Flatten a params (or gradients) tree into ``(dotted_name, array)`` pairs."""
    blocks: list[tuple[str, np.ndarray]] = []
    for f in dataclasses.fields(params):
        value = getattr(params, f.name)
        if isinstance(value, np.ndarray):
            blocks.append((f.name, value))
        else:
            blocks.extend(
                (f"{f.name}.{sub}", arr) for sub, arr in iter_param_blocks(value)
            )
    return blocks


def _map_arrays(obj, fn):
    kwargs = {}
    for f in dataclasses.fields(obj):
        value = getattr(obj, f.name)
        kwargs[f.name] = fn(value) if isinstance(value, np.ndarray) else _map_arrays(value, fn)
    return type(obj)(**kwargs)


def copy_params(params: NetworkParams) -> NetworkParams:
    return _map_arrays(params, np.copy)


def zeros_like_params(params: NetworkParams) -> NetworkParams:
    return _map_arrays(params, np.zeros_like)


def num_params(spec: NetworkSpec) -> int:
    """Total trainable scalar count (241425 for the reference LSTM)."""
    u, d = spec.units, spec.dense_units
    if spec.kind == "lstm":
        cell = lambda in_size: 4 * (u * (u + in_size) + u)
    else:
        cell = lambda in_size: 3 * (u * u + u * in_size + u)
    return (
        cell(spec.input_size)
        + cell(u)
        + (d * u + d)
        + (spec.output_size * d + spec.output_size)
    )


# ---------------------------------------------------------------------------
# Cell steps


@dataclass
class LstmStepCache:
    z: np.ndarray        # (B, units + in) gate input [h_prev, x]
    i: np.ndarray
    f: np.ndarray
    o: np.ndarray
    g: np.ndarray
    c_prev: np.ndarray
    c: np.ndarray
    tanh_c: np.ndarray
    single: bool


@dataclass
class GruStepCache:
    x: np.ndarray
    c_prev: np.ndarray
    r: np.ndarray
    z: np.ndarray        # update gate
    m: np.ndarray
    single: bool


def _as_batch(*arrays):
    single = arrays[0].ndim == 1
    if single:
        return True, tuple(np.asarray(a, dtype=np.float64)[np.newaxis] for a in arrays)
    return False, tuple(np.asarray(a, dtype=np.float64) for a in arrays)


def lstm_step(params: LstmParams, x, h_prev, c_prev):
    """One LSTM step; returns ``(h, c, cache)``. Accepts 1-D or batched 2-D inputs."""
    single, (x, h_prev, c_prev) = _as_batch(
        np.asarray(x), np.asarray(h_prev), np.asarray(c_prev)
    )
    z = np.concatenate([h_prev, x], axis=1)
    i = _sigmoid(z @ params.w_i.T + params.b_i)
    f = _sigmoid(z @ params.w_f.T + params.b_f)
    o = _sigmoid(z @ params.w_o.T + params.b_o)
    g = np.tanh(z @ params.w_c.T + params.b_c)
    c = f * c_prev + i * g
    tanh_c = np.tanh(c)
    h = o * tanh_c
    cache = LstmStepCache(z, i, f, o, g, c_prev, c, tanh_c, single)
    if single:
        return h[0], c[0], cache
    return h, c, cache


def lstm_step_backward(params: LstmParams, cache: LstmStepCache, dh, dc):
    """Backprop one LSTM step.

    ``dh``/``dc`` are gradients flowing into this step's outputs; returns
    ``(grads, dx, dh_prev, dc_prev)`` where ``grads`` is an
    :class:`LstmParams` of parameter gradients (summed over the batch).
    """
    _, (dh, dc) = _as_batch(np.asarray(dh), np.asarray(dc))
    units = cache.i.shape[1]
    do = dh * cache.tanh_c
    dc_total = dc + dh * cache.o * (1.0 - cache.tanh_c**2)
    di = dc_total * cache.g
    dg = dc_total * cache.i
    df = dc_total * cache.c_prev
    dc_prev = dc_total * cache.f
    dpre_i = di * cache.i * (1.0 - cache.i)
    dpre_f = df * cache.f * (1.0 - cache.f)
    dpre_o = do * cache.o * (1.0 - cache.o)
    dpre_g = dg * (1.0 - cache.g**2)
    grads = LstmParams(
        w_i=dpre_i.T @ cache.z,
        w_f=dpre_f.T @ cache.z,
        w_o=dpre_o.T @ cache.z,
        w_c=dpre_g.T @ cache.z,
        b_i=dpre_i.sum(axis=0),
        b_f=dpre_f.sum(axis=0),
        b_o=dpre_o.sum(axis=0),
        b_c=dpre_g.sum(axis=0),
    )
    dz = dpre_i @ params.w_i + dpre_f @ params.w_f + dpre_o @ params.w_o + dpre_g @ params.w_c
    dh_prev, dx = dz[:, :units], dz[:, units:]
    if cache.single:
        return grads, dx[0], dh_prev[0], dc_prev[0]
    return grads, dx, dh_prev, dc_prev


def gru_step(params: GruParams, x, c_prev):
    """One GRU step; returns ``(c, cache)``. The state is also the output."""
    single, (x, c_prev) = _as_batch(np.asarray(x), np.asarray(c_prev))
    r = _sigmoid(c_prev @ params.w_r.T + x @ params.v_r.T + params.b_r)
    z = _sigmoid(c_prev @ params.w_z.T + x @ params.v_z.T + params.b_z)
    m = np.tanh((c_prev * r) @ params.w_m.T + x @ params.v_m.T + params.b_m)
    c = c_prev * (1.0 - z) + z * m
    cache = GruStepCache(x, c_prev, r, z, m, single)
    if single:
        return c[0], cache
    return c, cache


def gru_step_backward(params: GruParams, cache: GruStepCache, dc):
    """Backprop one GRU step; returns ``(grads, dx, dc_prev)``."""
    _, (dc,) = _as_batch(np.asarray(dc))
    dm = dc * cache.z
    dz = dc * (cache.m - cache.c_prev)
    dc_prev = dc * (1.0 - cache.z)
    dpre_m = dm * (1.0 - cache.m**2)
    dpre_z = dz * cache.z * (1.0 - cache.z)
    drc = dpre_m @ params.w_m  # gradient w.r.t. (c_prev * r)
    dr = drc * cache.c_prev
    dc_prev = dc_prev + drc * cache.r
    dpre_r = dr * cache.r * (1.0 - cache.r)
    dc_prev = dc_prev + dpre_r @ params.w_r + dpre_z @ params.w_z
    dx = dpre_r @ params.v_r + dpre_z @ params.v_z + dpre_m @ params.v_m
    rc = cache.c_prev * cache.r
    grads = GruParams(
        w_r=dpre_r.T @ cache.c_prev,
        v_r=dpre_r.T @ cache.x,
        b_r=dpre_r.sum(axis=0),
        w_z=dpre_z.T @ cache.c_prev,
        v_z=dpre_z.T @ cache.x,
        b_z=dpre_z.sum(axis=0),
        w_m=dpre_m.T @ rc,
        v_m=dpre_m.T @ cache.x,
        b_m=dpre_m.sum(axis=0),
    )
    if cache.single:
        return grads, dx[0], dc_prev[0]
    return grads, dx, dc_prev


def dropout_mask(shape, rate: float, rng: np.random.Generator) -> np.ndarray:
    """Inverted dropout mask: zeros with probability ``rate``, else ``1/(1-rate)``."""
    if not 0.0 <= rate < 1.0:
        raise ValueError(f"dropout rate must be in [0, 1); got {rate}")
    keep = 1.0 - rate
    return (rng.random(shape) < keep) / keep


# ---------------------------------------------------------------------------
# Full network


@dataclass
class ForwardCaches:
    """Everything :func:`backward` needs from one :func:`forward` call."""

    train: bool
    single: bool
    layer1: list
    layer2: list
    mask: np.ndarray | None
    dense1_in: np.ndarray
    dense1_out: np.ndarray
    dense2_out: np.ndarray
    prediction: np.ndarray


def _run_layer(kind: str, params, x_seq: np.ndarray, units: int):
    """Run a recurrent layer over (B, window, in); returns (outputs (B, window, units), caches)."""
    batch, window = x_seq.shape[0], x_seq.shape[1]
    caches = []
    outputs = np.empty((batch, window, units))
    if kind == "lstm":
        h = np.zeros((batch, units))
        c = np.zeros((batch, units))
        for t in range(window):
            h, c, cache = lstm_step(params, x_seq[:, t], h, c)
            caches.append(cache)
            outputs[:, t] = h
    else:
        c = np.zeros((batch, units))
        for t in range(window):
            c, cache = gru_step(params, x_seq[:, t], c)
            caches.append(cache)
            outputs[:, t] = c
    return outputs, caches


def forward(
    spec: NetworkSpec,
    params: NetworkParams,
    x,
    *,
    train: bool = False,
    dropout_rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, ForwardCaches]:
    """Run the network on one window ``(window, input)`` or a batch ``(B, window, input)``.

    Returns ``(prediction, caches)``: shape ``(1,)`` for a single sample,
    ``(B, 1)`` for a batch. ``train=True`` applies inverted dropout between
    the recurrent layers and requires ``dropout_rng`` when the rate is
    nonzero; inference applies no dropout and needs no randomness.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 2
    if single:
        x = x[np.newaxis]
    if x.ndim != 3 or x.shape[1] != spec.window or x.shape[2] != spec.input_size:
        raise ValueError(
            f"expected windows of shape (batch, {spec.window}, {spec.input_size}); got {x.shape}"
        )
    seq1, caches1 = _run_layer(spec.kind, params.layer1, x, spec.units)
    mask = None
    dropped = seq1
    if train and spec.dropout > 0.0:
        if dropout_rng is None:
            raise ValueError("train-mode forward with dropout needs a dropout_rng")
        mask = dropout_mask(seq1.shape, spec.dropout, dropout_rng)
        dropped = seq1 * mask
    seq2, caches2 = _run_layer(spec.kind, params.layer2, dropped, spec.units)
    last = seq2[:, -1]
    dense1_out = np.tanh(last @ params.dense1.w.T + params.dense1.b)
    prediction = np.tanh(dense1_out @ params.dense2.w.T + params.dense2.b)
    caches = ForwardCaches(
        train=train,
        single=single,
        layer1=caches1,
        layer2=caches2,
        mask=mask,
        dense1_in=last,
        dense1_out=dense1_out,
        dense2_out=prediction,
        prediction=prediction,
    )
    if single:
        return prediction[0], caches
    return prediction, caches


def _backward_layer(kind: str, params, caches: list, dseq: np.ndarray, grads):
    """BPTT over one layer. ``dseq[:, t]`` is the gradient on output t; returns dx sequence."""
    batch, window = dseq.shape[0], dseq.shape[1]
    in_size = caches[0].z.shape[1] - dseq.shape[2] if kind == "lstm" else caches[0].x.shape[1]
    dx_seq = np.empty((batch, window, in_size))
    if kind == "lstm":
        dh_carry = np.zeros_like(dseq[:, 0])
        dc_carry = np.zeros_like(dseq[:, 0])
        for t in range(window - 1, -1, -1):
            step_grads, dx, dh_carry, dc_carry = lstm_step_backward(
                params, caches[t], dseq[:, t] + dh_carry, dc_carry
            )
            dx_seq[:, t] = dx
            _accumulate(grads, step_grads)
    else:
        dc_carry = np.zeros_like(dseq[:, 0])
        for t in range(window - 1, -1, -1):
            step_grads, dx, dc_carry = gru_step_backward(
                params, caches[t], dseq[:, t] + dc_carry
            )
            dx_seq[:, t] = dx
            _accumulate(grads, step_grads)
    return dx_seq


def _accumulate(total, delta):
    for f in dataclasses.fields(total):
        getattr(total, f.name).__iadd__(getattr(delta, f.name))


def backward(
    spec: NetworkSpec,
    params: NetworkParams,
    caches: ForwardCaches,
    d_prediction,
) -> NetworkParams:
    """Backpropagate ``d_prediction`` (dL/dprediction) through the whole network.

    Accepts a scalar (broadcast over the batch) or an array matching the
    prediction's shape; returns parameter gradients summed over the batch
    in a :class:`NetworkParams`-shaped container.
    """
    batch = caches.dense1_in.shape[0]
    d_pred = np.broadcast_to(
        np.asarray(d_prediction, dtype=np.float64), (batch, 1)
    ).reshape(batch, 1)
    grads = NetworkParams(
        layer1=_zero_cell_grads(params.layer1),
        layer2=_zero_cell_grads(params.layer2),
        dense1=DenseParams(np.zeros_like(params.dense1.w), np.zeros_like(params.dense1.b)),
        dense2=DenseParams(np.zeros_like(params.dense2.w), np.zeros_like(params.dense2.b)),
    )
    # dense layers (both tanh)
    dpre2 = d_pred * (1.0 - caches.dense2_out**2)
    grads.dense2.w += dpre2.T @ caches.dense1_out
    grads.dense2.b += dpre2.sum(axis=0)
    d_dense1_out = dpre2 @ params.dense2.w
    dpre1 = d_dense1_out * (1.0 - caches.dense1_out**2)
    grads.dense1.w += dpre1.T @ caches.dense1_in
    grads.dense1.b += dpre1.sum(axis=0)
    d_last = dpre1 @ params.dense1.w
    # second recurrent layer: only its final output feeds the dense head
    window, units = spec.window, spec.units
    dseq2 = np.zeros((batch, window, units))
    dseq2[:, -1] = d_last
    d_dropped = _backward_layer(spec.kind, params.layer2, caches.layer2, dseq2, grads.layer2)
    if caches.mask is not None:
        d_seq1 = d_dropped * caches.mask
    else:
        d_seq1 = d_dropped
    _backward_layer(spec.kind, params.layer1, caches.layer1, d_seq1, grads.layer1)
    return grads


def _zero_cell_grads(cell_params):
    return _map_arrays(cell_params, np.zeros_like)


def gradient_check(
    spec: NetworkSpec, params: NetworkParams, x, *, step: float = 1e-5
) -> float:
    """Compare BPTT gradients to central finite differences on one sample.

    For every parameter the numerical gradient is
    ``(L(theta+step) - L(theta-step)) / (2 step)`` with ``L`` the network
    prediction. Returns the worst relative error, measured per parameter
    block as ``||analytic - numeric|| / max(||analytic||, ||numeric||)``.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("gradient_check runs on a single (window, input) sample")
    _, caches = forward(spec, params, x)
    analytic = backward(spec, params, caches, 1.0)
    worst = 0.0
    for (_, p_arr), (_, a_arr) in zip(iter_param_blocks(params), iter_param_blocks(analytic)):
        numeric = np.zeros_like(p_arr)
        flat_p = p_arr.reshape(-1)
        flat_n = numeric.reshape(-1)
        for k in range(flat_p.size):
            original = flat_p[k]
            flat_p[k] = original + step
            hi, _ = forward(spec, params, x)
            flat_p[k] = original - step
            lo, _ = forward(spec, params, x)
            flat_p[k] = original
            flat_n[k] = (hi[0] - lo[0]) / (2.0 * step)
        scale = max(float(np.linalg.norm(a_arr)), float(np.linalg.norm(numeric)), 1e-12)
        worst = max(worst, float(np.linalg.norm(a_arr - numeric)) / scale)
    return worst


# ---------------------------------------------------------------------------
# Serialization


def save_model(
    path: str,
    spec: NetworkSpec,
    params: NetworkParams,
    scaler: MinMaxScaler | None = None,
    extra: dict | None = None,
) -> None:
    """Write spec + parameters (+ optional scaler and metadata) as JSON.

    Floats serialize via ``repr`` so a load returns bit-identical arrays.
    """
    payload = {
        "format": _FORMAT_TAG,
        "spec": spec.to_dict(),
        "params": {
            name: arr.tolist() for name, arr in iter_param_blocks(params)
        },
        "scaler": scaler.to_dict() if scaler is not None else None,
        "extra": extra or {},
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1)
        handle.write("\n")


def load_model(path: str):
    """Read a model written by :func:`save_model`.

    Returns ``(spec, params, scaler, extra)``; ``scaler`` is ``None`` when
    absent.
    """
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    if payload.get("format") != _FORMAT_TAG:
        raise ValueError(
            f"unsupported model format {payload.get('format')!r}; expected {_FORMAT_TAG!r}"
        )
    spec = NetworkSpec.from_dict(payload["spec"])
    template = init_params(spec, np.random.default_rng(0))
    stored = payload["params"]
    loaded = {}
    for name, arr in iter_param_blocks(template):
        if name not in stored:
            raise ValueError(f"model file is missing parameter block {name!r}")
        candidate = np.asarray(stored[name], dtype=np.float64)
        if candidate.shape != arr.shape:
            raise ValueError(
                f"parameter block {name!r} has shape {candidate.shape}; expected {arr.shape}"
            )
        loaded[name] = candidate

    def rebuild(obj, prefix=""):
        kwargs = {}
        for f in dataclasses.fields(obj):
            value = getattr(obj, f.name)
            key = f"{prefix}{f.name}"
            if isinstance(value, np.ndarray):
                kwargs[f.name] = loaded[key]
            else:
                kwargs[f.name] = rebuild(value, prefix=f"{key}.")
        return type(obj)(**kwargs)

    params = rebuild(template)
    scaler = MinMaxScaler.from_dict(payload["scaler"]) if payload.get("scaler") else None
    return spec, params, scaler, payload.get("extra", {})
